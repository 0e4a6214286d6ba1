//! Simplicial lattice combinatorics.
//!
//! A lattice point of `T^n_k` is a multi-index `α = (α_0, …, α_n)` with
//! `|α| = k`. Points are ranked by the closed form
//! `R_n(α) = Σ_{i=1..n} C(α_i + … + α_n + n − i, n + 1 − i)`, which ignores
//! `α_0`. Everything here is dimension-generic; the sub-simplex tables used by
//! meshes are only provided for `n ∈ {2, 3}`.

use std::fmt;
use std::ops::Deref;

use smallvec::SmallVec;

use crate::error::{invalid, FemError, Result};

/// Binomial coefficient, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r = 1usize;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

pub fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

/// Multi-index with small inline storage (four entries cover tetrahedra).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct MultiIndex(SmallVec<[usize; 4]>);

impl MultiIndex {
    pub fn new(entries: &[usize]) -> Self {
        MultiIndex(SmallVec::from_slice(entries))
    }

    pub fn zeros(len: usize) -> Self {
        MultiIndex(SmallVec::from_elem(0, len))
    }

    /// `|α|`
    pub fn degree(&self) -> usize {
        self.0.iter().sum()
    }

    /// `α!`
    pub fn factorial(&self) -> f64 {
        self.0.iter().map(|&a| factorial(a)).product()
    }

    /// Indices with a nonzero entry, ascending.
    pub fn support(&self) -> SmallVec<[usize; 4]> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &a)| a > 0)
            .map(|(i, _)| i)
            .collect()
    }

    /// Entries of `α` on the vertex subset `f`.
    pub fn restrict(&self, f: &[usize]) -> MultiIndex {
        MultiIndex(f.iter().map(|&i| self.0[i]).collect())
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }
}

impl Deref for MultiIndex {
    type Target = [usize];
    fn deref(&self) -> &[usize] {
        &self.0
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &self.0[..])
    }
}

impl From<&[usize]> for MultiIndex {
    fn from(s: &[usize]) -> Self {
        MultiIndex::new(s)
    }
}

/// Closed-form rank `R_n(α)` without a degree check.
pub fn rank_of(alpha: &[usize]) -> usize {
    let n = alpha.len().saturating_sub(1);
    let mut tail = 0;
    let mut r = 0;
    // i runs from n down to 1 so that `tail = α_i + … + α_n`.
    for i in (1..=n).rev() {
        tail += alpha[i];
        r += binomial(tail + n - i, n + 1 - i);
    }
    r
}

/// All multi-indices of length `n+1` and degree `k`, ordered by rank.
#[derive(Clone, Debug)]
pub struct SimplicialLattice {
    n: usize,
    k: usize,
    order: Vec<MultiIndex>,
}

impl SimplicialLattice {
    pub fn enumerate(n: usize, k: usize) -> Self {
        let mut order = Vec::with_capacity(binomial(n + k, k));
        let mut cur = vec![0usize; n + 1];
        compositions(&mut cur, 0, k, &mut order);
        order.sort_by_cached_key(|a| rank_of(a));
        SimplicialLattice { n, k, order }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn get(&self, i: usize) -> &MultiIndex {
        &self.order[i]
    }

    pub fn iter(&self) -> std::slice::Iter<'_, MultiIndex> {
        self.order.iter()
    }

    pub fn points(&self) -> &[MultiIndex] {
        &self.order
    }

    pub fn rank(&self, alpha: &[usize]) -> Result<usize> {
        if alpha.len() != self.n + 1 {
            return invalid(format!(
                "multi-index {:?} has length {}, lattice dimension is {}",
                alpha,
                alpha.len(),
                self.n
            ));
        }
        let d: usize = alpha.iter().sum();
        if d != self.k {
            return invalid(format!("multi-index {alpha:?} has degree {d}, expected {}", self.k));
        }
        Ok(rank_of(alpha))
    }

    /// Barycentric coordinates of every point, in rank order.
    pub fn barycentric_points(&self) -> Result<Vec<SmallVec<[f64; 4]>>> {
        self.order.iter().map(|a| barycentric_of(a, self.k)).collect()
    }
}

fn compositions(cur: &mut [usize], pos: usize, rest: usize, out: &mut Vec<MultiIndex>) {
    if pos + 1 == cur.len() {
        cur[pos] = rest;
        out.push(MultiIndex::new(cur));
        return;
    }
    for a in 0..=rest {
        cur[pos] = a;
        compositions(cur, pos + 1, rest - a, out);
    }
}

/// `λ(α) = α / k`.
pub fn barycentric_of(alpha: &[usize], k: usize) -> Result<SmallVec<[f64; 4]>> {
    if k == 0 {
        return invalid("barycentric coordinates need k >= 1");
    }
    if alpha.iter().sum::<usize>() != k {
        return invalid(format!("multi-index {alpha:?} does not have degree {k}"));
    }
    Ok(alpha.iter().map(|&a| a as f64 / k as f64).collect())
}

/// Sub-simplex `f` of the reference `n`-simplex given by sorted local vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LocalSubSimplex {
    vertices: SmallVec<[usize; 4]>,
    complement: SmallVec<[usize; 4]>,
}

impl LocalSubSimplex {
    pub fn new(n: usize, vertices: &[usize]) -> Result<Self> {
        if vertices.is_empty() {
            return invalid("empty sub-simplex");
        }
        if vertices.windows(2).any(|w| w[0] >= w[1]) || *vertices.last().unwrap() > n {
            return invalid(format!("{vertices:?} is not a sorted subset of 0..={n}"));
        }
        let complement = (0..=n).filter(|i| !vertices.contains(i)).collect();
        Ok(LocalSubSimplex { vertices: SmallVec::from_slice(vertices), complement })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// `f*`
    pub fn complement(&self) -> &[usize] {
        &self.complement
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    /// `f + i` for `i ∈ f*`.
    pub fn join(&self, i: usize) -> Result<LocalSubSimplex> {
        if !self.complement.contains(&i) {
            return invalid(format!("{i} is not in the complement of {:?}", self.vertices));
        }
        let mut v = self.vertices.clone();
        v.push(i);
        v.sort_unstable();
        let n = self.vertices.len() + self.complement.len() - 1;
        LocalSubSimplex::new(n, &v)
    }
}

/// `E(α)`: place `α_f` on the vertices of `f`, zeros elsewhere.
pub fn extend(alpha_f: &[usize], f: &LocalSubSimplex, n: usize) -> Result<MultiIndex> {
    if alpha_f.len() != f.vertices.len() {
        return invalid("extension: multi-index length differs from |f|");
    }
    if f.vertices.iter().any(|&v| v > n) {
        return invalid("extension: f is not inside the n-simplex");
    }
    let mut out = MultiIndex::zeros(n + 1);
    for (a, &v) in alpha_f.iter().zip(f.vertices.iter()) {
        out.0[v] = *a;
    }
    Ok(out)
}

/// Lattice points of `T^n_k` lying in the relative interior of `f`, in rank order
/// of the restricted lattice. There are `C(k−1, ℓ)` of them.
pub fn interior_lattice(n: usize, k: usize, f: &LocalSubSimplex) -> Result<Vec<MultiIndex>> {
    let l = f.dim();
    SimplicialLattice::enumerate(l, k)
        .iter()
        .filter(|a| a.iter().all(|&x| x > 0))
        .map(|a| extend(a, f, n))
        .collect()
}

/// All `ℓ`-dimensional sub-simplices of the reference `n`-simplex in
/// lexicographic order.
pub fn local_subsimplices(n: usize, l: usize) -> Vec<LocalSubSimplex> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(l + 1);
    combos(n + 1, l + 1, 0, &mut cur, &mut |c| {
        out.push(LocalSubSimplex::new(n, c).expect("sorted by construction"))
    });
    out
}

fn combos(m: usize, r: usize, start: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if cur.len() == r {
        f(cur);
        return;
    }
    for i in start..m {
        cur.push(i);
        combos(m, r, i + 1, cur, f);
        cur.pop();
    }
}

/// Local edge and face numbering of a reference cell.
#[derive(Clone, Debug)]
pub struct SubSimplexTables {
    pub n: usize,
    /// Local edges, sorted pairs (`SEdge` in 3D).
    pub edges: Vec<[usize; 2]>,
    /// Facet `i` is opposite local vertex `i`, sorted.
    pub facets: Vec<Vec<usize>>,
    /// Facet `i` listed so that the right-hand normal points out of a positively
    /// oriented cell (`OFace` in 3D, counterclockwise edges in 2D).
    pub oriented_facets: Vec<Vec<usize>>,
}

impl SubSimplexTables {
    pub fn new(n: usize) -> Result<Self> {
        match n {
            2 => Ok(SubSimplexTables {
                n,
                edges: vec![[0, 1], [0, 2], [1, 2]],
                facets: vec![vec![1, 2], vec![0, 2], vec![0, 1]],
                oriented_facets: vec![vec![1, 2], vec![2, 0], vec![0, 1]],
            }),
            3 => Ok(SubSimplexTables {
                n,
                edges: vec![[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]],
                facets: vec![vec![1, 2, 3], vec![0, 2, 3], vec![0, 1, 3], vec![0, 1, 2]],
                oriented_facets: vec![vec![1, 2, 3], vec![0, 3, 2], vec![0, 1, 3], vec![0, 2, 1]],
            }),
            _ => Err(FemError::UnsupportedDimension(n)),
        }
    }

    /// Index of the local edge `{a, b}`.
    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        self.edges.iter().position(|e| e[0] == a && e[1] == b)
    }

    /// Faces in 3D are the facets (`SFace`).
    pub fn faces(&self) -> &[Vec<usize>] {
        &self.facets
    }
}
