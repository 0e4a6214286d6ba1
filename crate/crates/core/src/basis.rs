//! Lagrange nodal basis in product form, Bernstein monomials and bubbles.
//!
//! `φ_α(λ) = (1/α!) Π_i Π_{j<α_i} (kλ_i − j)`. All evaluation happens in
//! barycentric coordinates; physical gradients come from contracting
//! `∂φ/∂λ_i` with the cell's `∇λ_i`.

use smallvec::SmallVec;

use crate::lattice::{MultiIndex, SimplicialLattice};
use crate::mesh::Point;

/// `Π_{j<a} (kx − j)` and its derivative in `x`, by a running product rule.
fn factor(a: usize, k: f64, x: f64) -> (f64, f64) {
    let mut p = 1.0;
    let mut dp = 0.0;
    for j in 0..a {
        let t = k * x - j as f64;
        dp = dp * t + p * k;
        p *= t;
    }
    (p, dp)
}

pub fn eval_lagrange(alpha: &[usize], k: usize, lambda: &[f64]) -> f64 {
    let kf = k as f64;
    let mut v = 1.0;
    for (&a, &l) in alpha.iter().zip(lambda) {
        v *= factor(a, kf, l).0;
    }
    v / MultiIndex::new(alpha).factorial()
}

/// `∂φ_α/∂λ_i` for every `i`, treating the `λ_i` as independent.
pub fn lagrange_bary_derivatives(alpha: &[usize], k: usize, lambda: &[f64]) -> SmallVec<[f64; 4]> {
    let kf = k as f64;
    let m = alpha.len();
    let inv = 1.0 / MultiIndex::new(alpha).factorial();
    let f: SmallVec<[(f64, f64); 4]> =
        alpha.iter().zip(lambda).map(|(&a, &l)| factor(a, kf, l)).collect();
    // prefix[i] = Π_{j<i} f_j, suffix product accumulated from the right
    let mut prefix: SmallVec<[f64; 5]> = SmallVec::with_capacity(m + 1);
    prefix.push(1.0);
    for i in 0..m {
        let p = prefix[i] * f[i].0;
        prefix.push(p);
    }
    let mut out: SmallVec<[f64; 4]> = SmallVec::from_elem(0.0, m);
    let mut suffix = 1.0;
    for i in (0..m).rev() {
        out[i] = prefix[i] * f[i].1 * suffix * inv;
        suffix *= f[i].0;
    }
    out
}

pub fn grad_lagrange(alpha: &[usize], k: usize, lambda: &[f64], grad_lambda: &[Point]) -> Point {
    lagrange_bary_derivatives(alpha, k, lambda)
        .iter()
        .zip(grad_lambda)
        .map(|(d, g)| g * *d)
        .sum()
}

/// `λ^α`
pub fn bernstein(alpha: &[usize], lambda: &[f64]) -> f64 {
    alpha.iter().zip(lambda).map(|(&a, &l)| l.powi(a as i32)).product()
}

/// `b_f = Π_{i∈f} λ_i`
pub fn bubble(f: &[usize], lambda: &[f64]) -> f64 {
    f.iter().map(|&i| lambda[i]).product()
}

/// Values and barycentric derivatives of every `φ_α`, `α` in rank order, at a
/// set of evaluation points.
#[derive(Clone, Debug)]
pub struct BasisTabulation {
    degree: usize,
    n: usize,
    nbasis: usize,
    npoints: usize,
    values: Vec<f64>,
    derivs: Vec<f64>,
}

impl BasisTabulation {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn num_basis(&self) -> usize {
        self.nbasis
    }

    pub fn num_points(&self) -> usize {
        self.npoints
    }

    /// `φ_i` at evaluation point `q`.
    pub fn value(&self, i: usize, q: usize) -> f64 {
        self.values[i * self.npoints + q]
    }

    /// `∂φ_i/∂λ` at evaluation point `q`.
    pub fn bary_derivs(&self, i: usize, q: usize) -> &[f64] {
        let m = self.n + 1;
        let s = (i * self.npoints + q) * m;
        &self.derivs[s..s + m]
    }

    /// Physical gradient given the cell's `∇λ`.
    pub fn gradient(&self, i: usize, q: usize, grad_lambda: &[Point]) -> Point {
        self.bary_derivs(i, q).iter().zip(grad_lambda).map(|(d, g)| g * *d).sum()
    }
}

pub fn tabulate<P: AsRef<[f64]>>(k: usize, n: usize, points: &[P]) -> BasisTabulation {
    let lattice = SimplicialLattice::enumerate(n, k);
    let npoints = points.len();
    let nbasis = lattice.len();
    let mut values = Vec::with_capacity(nbasis * npoints);
    let mut derivs = Vec::with_capacity(nbasis * npoints * (n + 1));
    for a in lattice.iter() {
        for p in points {
            let l = p.as_ref();
            values.push(eval_lagrange(a, k, l));
            derivs.extend_from_slice(&lagrange_bary_derivatives(a, k, l));
        }
    }
    BasisTabulation { degree: k, n, nbasis, npoints, values, derivs }
}
