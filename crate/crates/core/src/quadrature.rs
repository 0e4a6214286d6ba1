//! Simplex quadrature in barycentric form, weights normalized to sum to 1.
//!
//! [`simplex_rule`] returns small symmetric rules for degree ≤ 2 and collapsed
//! Gauss–Jacobi (conical product) rules above that; all their weights are
//! positive. [`grundmann_moller`] is available as an alternative family with
//! mixed-sign weights.

use nalgebra::{DMatrix, SymmetricEigen};
use smallvec::SmallVec;

use crate::error::{invalid, Result};
use crate::lattice::{factorial, SimplicialLattice};

pub type BaryPoint = SmallVec<[f64; 4]>;

#[derive(Clone, Debug)]
pub struct QuadratureRule {
    dim: usize,
    degree: usize,
    points: Vec<BaryPoint>,
    weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Polynomial degree integrated exactly.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn points(&self) -> &[BaryPoint] {
        &self.points
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BaryPoint, f64)> {
        self.points.iter().zip(self.weights.iter().copied())
    }

    pub fn abs_weight_sum(&self) -> f64 {
        self.weights.iter().map(|w| w.abs()).sum()
    }

    /// Reference-normalized integral: `Σ w_q f(λ_q)`; multiply by `|T|`.
    pub fn integrate(&self, f: impl Fn(&[f64]) -> f64) -> f64 {
        self.iter().map(|(p, w)| w * f(p)).sum()
    }
}

/// Rule on the `dim`-simplex exact for polynomials of total degree `degree`.
pub fn simplex_rule(dim: usize, degree: usize) -> Result<QuadratureRule> {
    if dim > 3 {
        return invalid(format!("quadrature dimension {dim} not supported"));
    }
    if dim == 0 {
        return Ok(QuadratureRule { dim, degree, points: vec![SmallVec::from_elem(1.0, 1)], weights: vec![1.0] });
    }
    if degree <= 1 {
        let c = 1.0 / (dim + 1) as f64;
        return Ok(QuadratureRule { dim, degree, points: vec![SmallVec::from_elem(c, dim + 1)], weights: vec![1.0] });
    }
    if degree == 2 && dim >= 2 {
        let (a, b) = if dim == 2 {
            (2.0 / 3.0, 1.0 / 6.0)
        } else {
            (0.585_410_196_624_968_5, 0.138_196_601_125_010_5)
        };
        let points = (0..=dim)
            .map(|i| (0..=dim).map(|j| if i == j { a } else { b }).collect())
            .collect();
        let w = 1.0 / (dim + 1) as f64;
        return Ok(QuadratureRule { dim, degree, points, weights: vec![w; dim + 1] });
    }
    Ok(conical_product(dim, degree))
}

/// Rule on a facet of the `dim`-simplex.
pub fn facet_rule(dim: usize, degree: usize) -> Result<QuadratureRule> {
    if dim == 0 {
        return invalid("a 0-simplex has no facets");
    }
    simplex_rule(dim - 1, degree)
}

/// Gauss–Jacobi nodes and weights on `[0,1]` for the weight `(1−u)^a`,
/// by Golub–Welsch. Weights sum to `1/(a+1)`.
pub fn gauss_jacobi(m: usize, a: usize) -> (Vec<f64>, Vec<f64>) {
    let af = a as f64;
    let mut t = DMatrix::<f64>::zeros(m, m);
    for j in 0..m {
        let jf = j as f64;
        t[(j, j)] = if j == 0 {
            -af / (af + 2.0)
        } else {
            -af * af / ((2.0 * jf + af) * (2.0 * jf + af + 2.0))
        };
        if j > 0 {
            let s = 2.0 * jf + af;
            let b = (4.0 * jf * (jf + af) * jf * (jf + af) / (s * s * (s + 1.0) * (s - 1.0))).sqrt();
            t[(j, j - 1)] = b;
            t[(j - 1, j)] = b;
        }
    }
    let eig = SymmetricEigen::new(t);
    let mut pairs: Vec<(f64, f64)> = (0..m)
        .map(|i| {
            let v0 = eig.eigenvectors[(0, i)];
            ((1.0 + eig.eigenvalues[i]) / 2.0, v0 * v0 / (af + 1.0))
        })
        .collect();
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
    pairs.into_iter().unzip()
}

/// Collapsed-coordinate product of Gauss–Jacobi rules.
fn conical_product(dim: usize, degree: usize) -> QuadratureRule {
    let m = degree / 2 + 1;
    let rules: Vec<(Vec<f64>, Vec<f64>)> = (1..=dim).map(|i| gauss_jacobi(m, dim - i)).collect();
    let scale = factorial(dim);
    let mut points = Vec::with_capacity(m.pow(dim as u32));
    let mut weights = Vec::with_capacity(m.pow(dim as u32));
    let mut idx = vec![0usize; dim];
    loop {
        let mut lam: BaryPoint = SmallVec::from_elem(0.0, dim + 1);
        let mut rest = 1.0;
        let mut w = scale;
        for (d, &i) in idx.iter().enumerate() {
            let u = rules[d].0[i];
            lam[d + 1] = rest * u;
            rest *= 1.0 - u;
            w *= rules[d].1[i];
        }
        lam[0] = rest;
        points.push(lam);
        weights.push(w);
        let mut d = dim;
        loop {
            if d == 0 {
                return QuadratureRule { dim, degree, points, weights };
            }
            d -= 1;
            idx[d] += 1;
            if idx[d] < m {
                break;
            }
            idx[d] = 0;
        }
    }
}

/// Grundmann–Möller rule of odd degree `2s+1 ≥ degree`. Weights alternate in
/// sign, so `Σ|w|` grows with the degree.
pub fn grundmann_moller(dim: usize, degree: usize) -> QuadratureRule {
    let s = degree / 2;
    let d = 2 * s + 1;
    let n = dim;
    let mut points = Vec::new();
    let mut weights = Vec::new();
    for i in 0..=s {
        let denom = (d + n - 2 * i) as f64;
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        let w = sign * 2f64.powi(-(2 * s as i32)) * denom.powi(d as i32) * factorial(n)
            / (factorial(i) * factorial(d + n - i));
        for beta in SimplicialLattice::enumerate(n, s - i).iter() {
            points.push(beta.iter().map(|&b| (2 * b + 1) as f64 / denom).collect());
            weights.push(w);
        }
    }
    QuadratureRule { dim, degree: d, points, weights }
}

/// Closed-form normalized moment `∫ λ^α / |T| = α! n! / (|α|+n)!`.
pub fn moment(alpha: &[usize]) -> f64 {
    let n = alpha.len() - 1;
    let deg: usize = alpha.iter().sum();
    alpha.iter().map(|&a| factorial(a)).product::<f64>() * factorial(n) / factorial(deg + n)
}
