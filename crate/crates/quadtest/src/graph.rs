//! Weighted symmetric graphs: spatial kNN/radius graphs, grid lattices,
//! phylogeny-derived sibling graphs, and degree normalization.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::types::{Boundary, SpatialLocations};

/// Degree-normalization state of a graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalization {
    None,
    RowStochastic,
    Symmetric,
    Double,
}

/// How to combine the two directions of a kNN graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KnnCombine {
    /// Keep edges present in both directions, weight 1.
    Mutual,
    /// w = (a_ij + a_ji) / 2 over the directed 0/1 indicators.
    Average,
}

/// Undirected weighted graph without self-loops. Each edge is stored once
/// with `i < j`, so the implied weight matrix is symmetric by construction.
#[derive(Debug, Clone)]
pub struct Graph<S> {
    n: usize,
    edges: Vec<(usize, usize, S)>,
    normalization: Normalization,
}

impl<S: Scalar> Graph<S> {
    /// Build from an edge list; indices are canonicalized to `i < j` and
    /// parallel edges accumulate their weights.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize, S)>) -> Result<Self> {
        let mut map = std::collections::BTreeMap::new();
        for (a, b, w) in edges {
            if a >= n || b >= n {
                return Err(Error::IndexOutOfRange {
                    index: a.max(b),
                    n_features: n,
                });
            }
            if a == b {
                return Err(Error::InvalidInput(format!("self-loop at node {a}")));
            }
            if w <= S::zero() {
                return Err(Error::InvalidInput(format!(
                    "edge ({a}, {b}) has non-positive weight"
                )));
            }
            let key = (a.min(b), a.max(b));
            *map.entry(key).or_insert(S::zero()) += w;
        }
        Ok(Self {
            n,
            edges: map.into_iter().map(|((i, j), w)| (i, j, w)).collect(),
            normalization: Normalization::None,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Canonical edge list, `i < j`, sorted lexicographically.
    pub fn edges(&self) -> &[(usize, usize, S)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }

    /// Weighted degree of every node.
    pub fn degrees(&self) -> Vec<S> {
        let mut d = vec![S::zero(); self.n];
        for &(i, j, w) in &self.edges {
            d[i] += w;
            d[j] += w;
        }
        d
    }

    /// The adjacency matrix as a sparse symmetric operator (zero diagonal).
    pub fn adjacency(&self) -> SparseSymmetric<S> {
        SparseSymmetric {
            n: self.n,
            diag: vec![S::zero(); self.n],
            off: self.edges.clone(),
        }
    }

    fn with_edges(&self, edges: Vec<(usize, usize, S)>, normalization: Normalization) -> Self {
        Self {
            n: self.n,
            edges,
            normalization,
        }
    }
}

/// k-nearest-neighbor graph by Euclidean distance, then symmetrized.
///
/// Distance ties are broken by the lower index. Coincident points make the
/// neighbor ordering meaningless and are rejected.
pub fn knn_graph<S: Scalar>(
    locs: &SpatialLocations<S>,
    k: usize,
    combine: KnnCombine,
) -> Result<Graph<S>> {
    let n = locs.len();
    if k == 0 {
        return Err(Error::InvalidInput("k must be at least 1".into()));
    }
    if k >= n {
        return Err(Error::KTooLarge { k, n });
    }

    let mut directed = vec![false; n * n];
    for i in 0..n {
        let mut dists: Vec<(S, usize)> = (0..n)
            .filter(|&j| j != i)
            .map(|j| (locs.distance2(i, j), j))
            .collect();
        for &(d, j) in &dists {
            if d == S::zero() {
                return Err(Error::DuplicatePoints(i.min(j), i.max(j)));
            }
        }
        dists.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(a.1.cmp(&b.1)));
        for &(_, j) in dists.iter().take(k) {
            directed[i * n + j] = true;
        }
    }

    let mut edges = Vec::new();
    let half = S::cast(0.5);
    for i in 0..n {
        for j in (i + 1)..n {
            let ij = directed[i * n + j];
            let ji = directed[j * n + i];
            match combine {
                KnnCombine::Mutual => {
                    if ij && ji {
                        edges.push((i, j, S::one()));
                    }
                }
                KnnCombine::Average => {
                    let w = match (ij, ji) {
                        (true, true) => S::one(),
                        (true, false) | (false, true) => half,
                        (false, false) => continue,
                    };
                    edges.push((i, j, w));
                }
            }
        }
    }
    Graph::from_edges(n, edges)
}

/// Unweighted proximity graph: an edge for every pair at strict distance < r.
pub fn radius_graph<S: Scalar>(locs: &SpatialLocations<S>, r: S) -> Result<Graph<S>> {
    if r <= S::zero() {
        return Err(Error::InvalidInput("radius must be positive".into()));
    }
    let n = locs.len();
    let r2 = r * r;
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if locs.distance2(i, j) < r2 {
                edges.push((i, j, S::one()));
            }
        }
    }
    Graph::from_edges(n, edges)
}

/// First-order (4-neighbor) lattice graph, optionally wrapping both axes.
pub fn grid_adjacency<S: Scalar>(rows: usize, cols: usize, boundary: Boundary) -> Graph<S> {
    assert!(rows * cols >= 2, "grid must contain at least 2 cells");
    let idx = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let i = idx(r, c);
            // rightward neighbor
            if c + 1 < cols {
                edges.push((i, idx(r, c + 1), S::one()));
            } else if boundary == Boundary::Torus && cols > 2 {
                edges.push((i, idx(r, 0), S::one()));
            }
            // downward neighbor
            if r + 1 < rows {
                edges.push((i, idx(r + 1, c), S::one()));
            } else if boundary == Boundary::Torus && rows > 2 {
                edges.push((i, idx(0, c), S::one()));
            }
        }
    }
    // wrap edges in a length-2 axis would duplicate the interior edge, and a
    // length-1 axis would self-loop; both are skipped above
    Graph::from_edges(rows * cols, edges).expect("lattice edges are valid")
}

/// Sibling graph over the leaves of a rooted forest, double-normalized to
/// unit weighted degree. See [`tree_sibling_weights`] for the raw weights.
pub fn tree_sibling_graph<S: Scalar>(
    parent: &[Option<usize>],
    leaves: &[usize],
) -> Result<Graph<S>> {
    let g = tree_sibling_weights(parent, leaves)?;
    normalize(&g, Normalization::Double)
}

/// Raw (pre-normalization) sibling weights over the leaves of a rooted forest.
///
/// Leaf pairs are weighted by the larger of their distances to the nearest
/// shared ancestor: 1.0 for siblings, 0.5 for sharing a grandparent, 0.25 for
/// sharing a great-grandparent, and no edge beyond that.
///
/// `parent[v]` is the parent of node `v`, or `None` at a root. `leaves` maps
/// graph node `j` to tree node `leaves[j]`.
pub fn tree_sibling_weights<S: Scalar>(
    parent: &[Option<usize>],
    leaves: &[usize],
) -> Result<Graph<S>> {
    let m = parent.len();
    // verify acyclicity by walking each node to a root with a step budget
    for start in 0..m {
        let mut cur = start;
        let mut steps = 0usize;
        while let Some(p) = parent[cur] {
            if p >= m {
                return Err(Error::IndexOutOfRange {
                    index: p,
                    n_features: m,
                });
            }
            cur = p;
            steps += 1;
            if steps > m {
                return Err(Error::CyclicTree(start));
            }
        }
    }
    for &l in leaves {
        if l >= m {
            return Err(Error::IndexOutOfRange {
                index: l,
                n_features: m,
            });
        }
    }

    // ancestors up to 3 levels for each leaf
    let chain = |v: usize| -> Vec<usize> {
        let mut out = Vec::with_capacity(3);
        let mut cur = v;
        for _ in 0..3 {
            match parent[cur] {
                Some(p) => {
                    out.push(p);
                    cur = p;
                }
                None => break,
            }
        }
        out
    };
    let chains: Vec<Vec<usize>> = leaves.iter().map(|&l| chain(l)).collect();

    let n = leaves.len();
    let mut edges = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            // degree = max distance from either leaf to the nearest shared ancestor
            let mut weight = None;
            'outer: for (da, &anc_a) in chains[a].iter().enumerate() {
                for (db, &anc_b) in chains[b].iter().enumerate() {
                    if anc_a == anc_b {
                        weight = Some(match da.max(db) {
                            0 => S::one(),
                            1 => S::cast(0.5),
                            _ => S::cast(0.25),
                        });
                        break 'outer;
                    }
                }
            }
            if let Some(w) = weight {
                edges.push((a, b, w));
            }
        }
    }
    Graph::from_edges(n, edges)
}

const SINKHORN_TOL: f64 = 1e-8;
const SINKHORN_MAX_SWEEPS: usize = 1000;

/// Rescale edge weights so node degrees follow the requested convention.
///
/// `Symmetric` produces D^{-1/2} W D^{-1/2}; `Double` iterates symmetric
/// rescaling until every weighted degree is 1 within 1e-8 (Sinkhorn);
/// `RowStochastic` divides rows by degree and re-symmetrizes as (A + A^T)/2.
pub fn normalize<S: Scalar>(g: &Graph<S>, mode: Normalization) -> Result<Graph<S>> {
    if mode == Normalization::None {
        return Ok(g.clone());
    }
    let degrees = g.degrees();
    if let Some(i) = degrees.iter().position(|d| *d == S::zero()) {
        return Err(Error::IsolatedNode(i));
    }

    match mode {
        Normalization::Symmetric => {
            let inv_sqrt: Vec<S> = degrees.iter().map(|&d| S::one() / d.sqrt()).collect();
            let edges = g
                .edges
                .iter()
                .map(|&(i, j, w)| (i, j, w * inv_sqrt[i] * inv_sqrt[j]))
                .collect();
            Ok(g.with_edges(edges, Normalization::Symmetric))
        }
        Normalization::RowStochastic => {
            let half = S::cast(0.5);
            let edges = g
                .edges
                .iter()
                .map(|&(i, j, w)| (i, j, half * w * (S::one() / degrees[i] + S::one() / degrees[j])))
                .collect();
            Ok(g.with_edges(edges, Normalization::RowStochastic))
        }
        Normalization::Double => {
            let mut edges = g.edges.clone();
            let tol = S::cast(SINKHORN_TOL);
            for _ in 0..SINKHORN_MAX_SWEEPS {
                let mut deg = vec![S::zero(); g.n];
                for &(i, j, w) in &edges {
                    deg[i] += w;
                    deg[j] += w;
                }
                let worst = deg
                    .iter()
                    .map(|&d| (d - S::one()).abs())
                    .fold(S::zero(), S::max);
                if worst < tol {
                    return Ok(g.with_edges(edges, Normalization::Double));
                }
                if let Some(i) = deg.iter().position(|d| *d == S::zero()) {
                    return Err(Error::IsolatedNode(i));
                }
                let inv_sqrt: Vec<S> = deg.iter().map(|&d| S::one() / d.sqrt()).collect();
                for (i, j, w) in &mut edges {
                    *w = *w * inv_sqrt[*i] * inv_sqrt[*j];
                }
            }
            Err(Error::NoConvergence(SINKHORN_MAX_SWEEPS))
        }
        Normalization::None => unreachable!(),
    }
}

/// Graph Laplacian as a sparse symmetric operator: D - W, or I - W~ with
/// W~ = D^{-1/2} W D^{-1/2} for the normalized variant. Isolated nodes get a
/// zero diagonal in the normalized form.
pub fn laplacian<S: Scalar>(g: &Graph<S>, normalized: bool) -> SparseSymmetric<S> {
    let degrees = g.degrees();
    if normalized {
        let diag: Vec<S> = degrees
            .iter()
            .map(|&d| if d > S::zero() { S::one() } else { S::zero() })
            .collect();
        let off = g
            .edges
            .iter()
            .map(|&(i, j, w)| (i, j, -w / (degrees[i] * degrees[j]).sqrt()))
            .collect();
        SparseSymmetric {
            n: g.n,
            diag,
            off,
        }
    } else {
        SparseSymmetric {
            n: g.n,
            diag: degrees,
            off: g.edges.iter().map(|&(i, j, w)| (i, j, -w)).collect(),
        }
    }
}

/// Sparse symmetric matrix held as a diagonal plus strictly-upper entries.
#[derive(Debug, Clone)]
pub struct SparseSymmetric<S> {
    pub n: usize,
    pub diag: Vec<S>,
    /// Strictly upper-triangular entries, `i < j`.
    pub off: Vec<(usize, usize, S)>,
}

impl<S: Scalar> SparseSymmetric<S> {
    pub fn identity(n: usize) -> Self {
        Self {
            n,
            diag: vec![S::one(); n],
            off: Vec::new(),
        }
    }

    pub fn matvec_into(&self, v: &[S], out: &mut [S]) {
        debug_assert_eq!(v.len(), self.n);
        debug_assert_eq!(out.len(), self.n);
        for (o, (&d, &x)) in out.iter_mut().zip(self.diag.iter().zip(v)) {
            *o = d * x;
        }
        for &(i, j, w) in &self.off {
            out[i] += w * v[j];
            out[j] += w * v[i];
        }
    }

    pub fn matvec(&self, v: &[S]) -> Vec<S> {
        let mut out = vec![S::zero(); self.n];
        self.matvec_into(v, &mut out);
        out
    }

    pub fn trace(&self) -> S {
        self.diag.iter().copied().sum()
    }

    /// Frobenius norm squared, which equals tr(K^2) for symmetric K.
    pub fn frobenius_sq(&self) -> S {
        let d: S = self.diag.iter().map(|&x| x * x).sum();
        let o: S = self.off.iter().map(|&(_, _, w)| w * w).sum();
        d + o + o
    }

    pub fn diag_sq_sum(&self) -> S {
        self.diag.iter().map(|&x| x * x).sum()
    }

    pub fn to_dense(&self) -> crate::dense::DenseMatrix<S> {
        let mut m = crate::dense::DenseMatrix::zeros(self.n, self.n);
        for (i, &d) in self.diag.iter().enumerate() {
            m.set(i, i, d);
        }
        for &(i, j, w) in &self.off {
            m.set(i, j, w);
            m.set(j, i, w);
        }
        m
    }
}
