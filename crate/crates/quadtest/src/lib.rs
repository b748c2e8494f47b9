pub fn probe() -> (f64, f64, f64) {
    let a = statrs::function::gamma::gamma_ur(3.5, 2.0);
    let b = statrs::function::gamma::gamma_lr(3.5, 2.0);
    let c = statrs::function::erf::erfc(1.0);
    (a, b, c)
}
