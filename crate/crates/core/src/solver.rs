//! Linear solvers for the assembled systems.
//!
//! Dense LU with partial pivoting for small systems, Jacobi-preconditioned CG
//! for SPD systems, and MINRES with a symmetric positive definite diagonal
//! preconditioner for saddle-point and indefinite systems.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::assembly::CsrMatrix;
use crate::error::{invalid, FemError, Result};

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SolveReport {
    pub method: String,
    pub iterations: usize,
    pub relative_residual: f64,
    pub wall_time: Duration,
}

impl fmt::Display for SolveReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} iterations, relative residual {:.3e}, {:.3}s",
            self.method,
            self.iterations,
            self.relative_residual,
            self.wall_time.as_secs_f64()
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolverChoice {
    Auto,
    Lu,
    Minres,
    Cg,
}

impl FromStr for SolverChoice {
    type Err = FemError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(SolverChoice::Auto),
            "lu" => Ok(SolverChoice::Lu),
            "minres" => Ok(SolverChoice::Minres),
            "cg" => Ok(SolverChoice::Cg),
            _ => invalid(format!("unknown solver `{s}`")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SolverOptions {
    pub choice: SolverChoice,
    pub tol: f64,
    pub max_iter: usize,
    /// Largest system handed to dense LU by `Auto`.
    pub dense_limit: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions { choice: SolverChoice::Auto, tol: 1e-10, max_iter: 50_000, dense_limit: 8000 }
    }
}

/// Structure of a system, used to pick a method and a preconditioner.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SystemKind {
    Spd,
    /// `[[M, Bᵀ], [B, 0]]` with `M` of size `primal`.
    SaddlePoint { primal: usize },
    Indefinite,
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn relative_residual(a: &CsrMatrix, x: &[f64], b: &[f64]) -> f64 {
    let ax = a.matvec(x);
    let r: Vec<f64> = b.iter().zip(&ax).map(|(b, a)| b - a).collect();
    let nb = norm(b);
    if nb == 0.0 {
        norm(&r)
    } else {
        norm(&r) / nb
    }
}

/// Solve `Ax = b` according to `opts`.
pub fn solve(a: &CsrMatrix, b: &[f64], kind: SystemKind, opts: &SolverOptions) -> Result<(Vec<f64>, SolveReport)> {
    check_symmetric(a, 1e-12)?;
    let choice = match opts.choice {
        SolverChoice::Auto if a.nrows() <= opts.dense_limit => SolverChoice::Lu,
        SolverChoice::Auto if kind == SystemKind::Spd => SolverChoice::Cg,
        SolverChoice::Auto => SolverChoice::Minres,
        c => c,
    };
    match choice {
        SolverChoice::Lu => {
            let (x, rep) = dense_lu_solve(a, b)?;
            if rep.relative_residual > opts.tol.max(1e-10) {
                return Err(FemError::Solver { msg: "LU residual above tolerance".into(), report: rep });
            }
            Ok((x, rep))
        }
        SolverChoice::Cg => cg(a, b, opts.tol, opts.max_iter, Some(&jacobi(a, false))),
        _ => {
            let p = match kind {
                SystemKind::SaddlePoint { primal } => saddle_preconditioner(a, primal),
                _ => jacobi(a, true),
            };
            minres(a, b, opts.tol, opts.max_iter, &p)
        }
    }
}

/// Inverse of the (absolute) diagonal; zero entries become 1.
pub fn jacobi(a: &CsrMatrix, absolute: bool) -> Vec<f64> {
    a.diagonal()
        .into_iter()
        .map(|d| {
            let d = if absolute { d.abs() } else { d };
            if d == 0.0 {
                1.0
            } else {
                1.0 / d
            }
        })
        .collect()
}

/// `diag(M)⁻¹` on the primal block and the inverse diagonal of
/// `B diag(M)⁻¹ Bᵀ` on the multiplier block.
pub fn saddle_preconditioner(a: &CsrMatrix, primal: usize) -> Vec<f64> {
    let diag = a.diagonal();
    let mut p: Vec<f64> = diag
        .iter()
        .enumerate()
        .map(|(i, &d)| if i < primal && d > 0.0 { 1.0 / d } else { 1.0 })
        .collect();
    for i in primal..a.nrows() {
        let s: f64 = a.row(i).filter(|&(j, _)| j < primal).map(|(j, v)| v * v * p[j]).sum();
        p[i] = if s > 0.0 { 1.0 / s } else { 1.0 };
    }
    p
}

/// Checks `|a_ij − a_ji| ≤ tol · max|a|` on up to 20 000 stored entries.
pub fn check_symmetric(a: &CsrMatrix, tol: f64) -> Result<()> {
    if a.nrows() != a.ncols() {
        return invalid("matrix is not square");
    }
    let nnz = a.nnz();
    let step = (nnz / 20_000).max(1);
    let scale = a.values().iter().fold(0.0f64, |m, v| m.max(v.abs())).max(f64::MIN_POSITIVE);
    let (rp, ci, vals) = (a.row_ptr(), a.col_idx(), a.values());
    let mut row = 0;
    for idx in (0..nnz).step_by(step) {
        while rp[row + 1] <= idx {
            row += 1;
        }
        let col = ci[idx];
        if (vals[idx] - a.get(col, row)).abs() > tol * scale {
            return invalid(format!("matrix is not symmetric at ({row}, {col})"));
        }
    }
    Ok(())
}

/// Dense LU with partial pivoting; one step of iterative refinement.
pub fn dense_lu_solve(a: &CsrMatrix, b: &[f64]) -> Result<(Vec<f64>, SolveReport)> {
    let t0 = Instant::now();
    let n = a.nrows();
    let mut report = SolveReport { method: "lu".into(), ..Default::default() };
    if norm(b) == 0.0 {
        report.wall_time = t0.elapsed();
        return Ok((vec![0.0; n], report));
    }
    let lu = DenseLu::factor(a.to_dense(), n).map_err(|msg| FemError::Solver {
        msg,
        report: SolveReport { wall_time: t0.elapsed(), ..report.clone() },
    })?;
    let mut x = lu.solve(b);
    let ax = a.matvec(&x);
    let r: Vec<f64> = b.iter().zip(&ax).map(|(b, a)| b - a).collect();
    let dx = lu.solve(&r);
    for (x, d) in x.iter_mut().zip(dx) {
        *x += d;
    }
    report.iterations = 1;
    report.relative_residual = relative_residual(a, &x, b);
    report.wall_time = t0.elapsed();
    Ok((x, report))
}

struct DenseLu {
    n: usize,
    lu: Vec<f64>,
    perm: Vec<usize>,
}

impl DenseLu {
    fn factor(mut a: Vec<f64>, n: usize) -> std::result::Result<DenseLu, String> {
        let anorm = a.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let (p, pv) = (k..n)
                .map(|i| (i, a[i * n + k].abs()))
                .fold((k, -1.0), |best, c| if c.1 > best.1 { c } else { best });
            if pv <= 1e-14 * anorm {
                return Err(format!("matrix is singular to working precision at column {k}"));
            }
            if p != k {
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
            }
            let (top, bottom) = a.split_at_mut((k + 1) * n);
            let pivot_row = &top[k * n..];
            let piv = pivot_row[k];
            bottom.par_chunks_mut(n).with_min_len(64).for_each(|row| {
                let l = row[k] / piv;
                if l != 0.0 {
                    row[k] = l;
                    for (x, &y) in row[k + 1..].iter_mut().zip(&pivot_row[k + 1..]) {
                        *x -= l * y;
                    }
                } else {
                    row[k] = 0.0;
                }
            });
        }
        Ok(DenseLu { n, lu: a, perm })
    }

    fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut y: Vec<f64> = self.perm.iter().map(|&i| b[i]).collect();
        for i in 0..n {
            let row = &self.lu[i * n..i * n + i];
            let s: f64 = row.iter().zip(&y[..i]).map(|(a, b)| a * b).sum();
            y[i] -= s;
        }
        for i in (0..n).rev() {
            let row = &self.lu[i * n..(i + 1) * n];
            let s: f64 = row[i + 1..].iter().zip(&y[i + 1..]).map(|(a, b)| a * b).sum();
            y[i] = (y[i] - s) / row[i];
        }
        y
    }
}

/// Preconditioned conjugate gradients; `precond` is an inverse diagonal.
pub fn cg(
    a: &CsrMatrix,
    b: &[f64],
    tol: f64,
    max_iter: usize,
    precond: Option<&[f64]>,
) -> Result<(Vec<f64>, SolveReport)> {
    let t0 = Instant::now();
    let n = b.len();
    let mut x = vec![0.0; n];
    let nb = norm(b);
    let mut report = SolveReport { method: "cg".into(), ..Default::default() };
    if nb == 0.0 {
        return Ok((x, report));
    }
    let apply = |r: &[f64]| -> Vec<f64> {
        match precond {
            Some(p) => r.iter().zip(p).map(|(r, p)| r * p).collect(),
            None => r.to_vec(),
        }
    };
    let mut r = b.to_vec();
    let mut z = apply(&r);
    let mut p = z.clone();
    let mut rz = dot(&r, &z);
    for it in 1..=max_iter {
        let ap = a.matvec(&p);
        let pap = dot(&p, &ap);
        if pap <= 0.0 {
            report.iterations = it;
            report.relative_residual = norm(&r) / nb;
            report.wall_time = t0.elapsed();
            return Err(FemError::Solver { msg: "CG breakdown: matrix is not positive definite".into(), report });
        }
        let alpha = rz / pap;
        for i in 0..n {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        if norm(&r) <= tol * nb {
            let rel = relative_residual(a, &x, b);
            if rel <= tol {
                report.iterations = it;
                report.relative_residual = rel;
                report.wall_time = t0.elapsed();
                return Ok((x, report));
            }
        }
        z = apply(&r);
        let rz_new = dot(&r, &z);
        let beta = rz_new / rz;
        rz = rz_new;
        for i in 0..n {
            p[i] = z[i] + beta * p[i];
        }
    }
    report.iterations = max_iter;
    report.relative_residual = relative_residual(a, &x, b);
    report.wall_time = t0.elapsed();
    Err(FemError::Solver { msg: "CG did not converge".into(), report })
}

/// Preconditioned MINRES. `precond` is the inverse of a positive diagonal.
/// Convergence is declared on the true relative residual `‖b − Ax‖/‖b‖`.
pub fn minres(a: &CsrMatrix, b: &[f64], tol: f64, max_iter: usize, precond: &[f64]) -> Result<(Vec<f64>, SolveReport)> {
    let t0 = Instant::now();
    let n = b.len();
    let mut x = vec![0.0; n];
    let nb = norm(b);
    let mut report = SolveReport { method: "minres".into(), ..Default::default() };
    if nb == 0.0 {
        return Ok((x, report));
    }
    if precond.iter().any(|&p| p.is_nan() || p <= 0.0) {
        return invalid("MINRES preconditioner must be positive definite");
    }
    let fail = |msg: &str, it: usize, x: &[f64]| FemError::Solver {
        msg: msg.into(),
        report: SolveReport {
            method: "minres".into(),
            iterations: it,
            relative_residual: relative_residual(a, x, b),
            wall_time: t0.elapsed(),
        },
    };

    let mut v_prev = vec![0.0; n];
    let mut v = b.to_vec();
    let mut z: Vec<f64> = v.iter().zip(precond).map(|(v, p)| v * p).collect();
    let mut gamma = dot(&z, &v).sqrt();
    let gamma1 = gamma;
    let mut gamma_prev = 1.0;
    let mut eta = gamma;
    let (mut s_prev, mut s) = (0.0, 0.0);
    let (mut c_prev, mut c) = (1.0, 1.0);
    let mut w_prev = vec![0.0; n];
    let mut w = vec![0.0; n];
    let mut last_check = f64::INFINITY;

    for it in 1..=max_iter {
        for zi in z.iter_mut() {
            *zi /= gamma;
        }
        let az = a.matvec(&z);
        let delta = dot(&az, &z);
        let mut v_next: Vec<f64> = (0..n)
            .map(|i| az[i] - (delta / gamma) * v[i] - (gamma / gamma_prev) * v_prev[i])
            .collect();
        let z_next: Vec<f64> = v_next.iter().zip(precond).map(|(v, p)| v * p).collect();
        let g2 = dot(&z_next, &v_next);
        if g2 < 0.0 {
            return Err(fail("MINRES breakdown: preconditioner not positive definite", it, &x));
        }
        let gamma_next = g2.sqrt();
        let a0 = c * delta - c_prev * s * gamma;
        let a1 = (a0 * a0 + gamma_next * gamma_next).sqrt();
        let a2 = s * delta + c_prev * c * gamma;
        let a3 = s_prev * gamma;
        if a1 == 0.0 {
            return Err(fail("MINRES breakdown: singular system", it, &x));
        }
        let c_next = a0 / a1;
        let s_next = gamma_next / a1;
        let w_next: Vec<f64> = (0..n).map(|i| (z[i] - a3 * w_prev[i] - a2 * w[i]) / a1).collect();
        for i in 0..n {
            x[i] += c_next * eta * w_next[i];
        }
        eta *= -s_next;

        let estimate = eta.abs() / gamma1;
        if estimate <= tol || gamma_next == 0.0 {
            // check the true residual, but not at every step once close
            if estimate <= 0.5 * last_check || gamma_next == 0.0 || it % 20 == 0 {
                let rel = relative_residual(a, &x, b);
                last_check = estimate;
                if rel <= tol {
                    report.iterations = it;
                    report.relative_residual = rel;
                    report.wall_time = t0.elapsed();
                    return Ok((x, report));
                }
                if gamma_next == 0.0 || estimate < 1e-17 {
                    return Err(fail("MINRES stagnated above tolerance", it, &x));
                }
            }
        }

        std::mem::swap(&mut v_prev, &mut v);
        std::mem::swap(&mut v, &mut v_next);
        z = z_next;
        gamma_prev = gamma;
        gamma = gamma_next;
        s_prev = s;
        s = s_next;
        c_prev = c;
        c = c_next;
        w_prev = std::mem::replace(&mut w, w_next);
    }
    Err(fail("MINRES did not converge", max_iter, &x))
}
