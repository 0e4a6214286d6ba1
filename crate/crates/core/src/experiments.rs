//! Convergence studies and DoF-count reports behind the `tnfem` binary.

use std::fmt::Write as _;
use std::time::Instant;

use crate::assembly::{
    apply_essential_bc, assemble_boundary_flux, assemble_curlcurl, assemble_div, assemble_load,
    assemble_scalar_load, assemble_vector_mass, curl_error, l2_error, scalar_l2_error, CsrMatrix, DgSpace,
};
use crate::dofs::{build_bdm_dofmap, build_cell2ipoint, build_lagrange_dofmap, build_nedelec_dofmap, DofMap, SpaceKind};
use crate::error::{invalid, Result};
use crate::lattice::binomial;
use crate::mesh::{structured_cube, Mesh, Point, Topology};
use crate::quadrature::{facet_rule, simplex_rule};
use crate::solver::{solve, SolveReport, SolverOptions, SystemKind};

/// Errors per mesh level with observed rates.
#[derive(Clone, Debug, PartialEq)]
pub struct RateTable {
    pub error_names: Vec<String>,
    pub rows: Vec<RateRow>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RateRow {
    pub h: f64,
    pub gdof: usize,
    pub errors: Vec<f64>,
}

impl RateTable {
    pub fn new(names: &[&str]) -> Self {
        RateTable { error_names: names.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, h: f64, gdof: usize, errors: Vec<f64>) {
        self.rows.push(RateRow { h, gdof, errors });
    }

    /// `log(e_{i−1}/e_i) / log(h_{i−1}/h_i)` per error column; `None` on the
    /// first row.
    pub fn rates(&self) -> Vec<Vec<Option<f64>>> {
        self.rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                (0..r.errors.len())
                    .map(|j| {
                        (i > 0).then(|| {
                            let p = &self.rows[i - 1];
                            (p.errors[j] / r.errors[j]).ln() / (p.h / r.h).ln()
                        })
                    })
                    .collect()
            })
            .collect()
    }

    /// Rate of error column `j` over the last refinement.
    pub fn last_rate(&self, j: usize) -> Option<f64> {
        self.rates().last().and_then(|r| r[j])
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("h,gdof");
        for n in &self.error_names {
            let _ = write!(s, ",err_{n}");
        }
        for n in &self.error_names {
            let _ = write!(s, ",rate_{n}");
        }
        s.push('\n');
        for (row, rates) in self.rows.iter().zip(self.rates()) {
            let _ = write!(s, "{:.6e},{}", row.h, row.gdof);
            for e in &row.errors {
                let _ = write!(s, ",{e:.6e}");
            }
            for r in rates {
                match r {
                    Some(r) => {
                        let _ = write!(s, ",{r:.4}");
                    }
                    None => s.push(','),
                }
            }
            s.push('\n');
        }
        s
    }
}

/// Settings shared by the studies.
#[derive(Clone, Debug, Default)]
pub struct StudyOptions {
    pub solver: SolverOptions,
    /// Lower bound for the load and error-norm quadrature degree.
    pub quad_degree: Option<usize>,
}

impl StudyOptions {
    fn load_degree(&self, k: usize) -> usize {
        (2 * k + 2).max(self.quad_degree.unwrap_or(0))
    }

    fn error_degree(&self, k: usize) -> usize {
        (2 * k + 4).max(self.quad_degree.unwrap_or(0))
    }
}

/// Manufactured solutions.
pub mod exact {
    use crate::mesh::Point;
    use std::f64::consts::PI;

    /// `p = cos πx cos πy cos πz`
    pub fn poisson_p(x: &Point) -> f64 {
        (PI * x.x).cos() * (PI * x.y).cos() * (PI * x.z).cos()
    }

    /// `u = −∇p`
    pub fn poisson_u(x: &Point) -> Point {
        let (sx, cx) = (PI * x.x).sin_cos();
        let (sy, cy) = (PI * x.y).sin_cos();
        let (sz, cz) = (PI * x.z).sin_cos();
        Point::new(sx * cy * cz, cx * sy * cz, cx * cy * sz) * PI
    }

    /// `f = div u = 3π² p`
    pub fn poisson_f(x: &Point) -> f64 {
        3.0 * PI * PI * poisson_p(x)
    }

    /// `f = X Y Z` with `X = x² − x` and its partial derivatives up to order two.
    struct Cubic {
        f: f64,
        fx: f64,
        fy: f64,
        fz: f64,
        fxx: f64,
        fyy: f64,
        fzz: f64,
        fxy: f64,
        fxz: f64,
        fyz: f64,
    }

    fn cubic(p: &Point) -> Cubic {
        let q = |t: f64| (t * t - t, 2.0 * t - 1.0);
        let (x, dx) = q(p.x);
        let (y, dy) = q(p.y);
        let (z, dz) = q(p.z);
        Cubic {
            f: x * y * z,
            fx: dx * y * z,
            fy: x * dy * z,
            fz: x * y * dz,
            fxx: 2.0 * y * z,
            fyy: 2.0 * x * z,
            fzz: 2.0 * x * y,
            fxy: dx * dy * z,
            fxz: dx * y * dz,
            fyz: x * dy * dz,
        }
    }

    /// `E = (f, sin x f, sin y f)`
    pub fn maxwell_e(p: &Point) -> Point {
        let f = cubic(p).f;
        Point::new(f, p.x.sin() * f, p.y.sin() * f)
    }

    pub fn maxwell_curl_e(p: &Point) -> Point {
        let c = cubic(p);
        let (sx, cx) = p.x.sin_cos();
        let (sy, cy) = p.y.sin_cos();
        Point::new(cy * c.f + sy * c.fy - sx * c.fz, c.fz - sy * c.fx, cx * c.f + sx * c.fx - c.fy)
    }

    /// `J = curl curl E − E = ∇ div E − ΔE − E`
    pub fn maxwell_j(p: &Point) -> Point {
        let c = cubic(p);
        let (sx, cx) = p.x.sin_cos();
        let (sy, cy) = p.y.sin_cos();
        let lap = c.fxx + c.fyy + c.fzz;
        let grad_div = Point::new(
            c.fxx + cx * c.fy + sx * c.fxy + sy * c.fxz,
            c.fxy + sx * c.fyy + cy * c.fz + sy * c.fyz,
            c.fxz + sx * c.fyz + sy * c.fzz,
        );
        let lap_e = Point::new(lap, -sx * c.f + 2.0 * cx * c.fx + sx * lap, -sy * c.f + 2.0 * cy * c.fy + sy * lap);
        grad_div - lap_e - maxwell_e(p)
    }

    /// Smooth field used by the interpolation study.
    pub fn smooth_field(p: &Point) -> Point {
        Point::new(
            (p.x + 2.0 * p.y + p.z).sin(),
            (3.0 * p.x - p.y + 2.0 * p.z).cos(),
            p.x.exp() * (p.y - p.z).sin(),
        )
    }
}

/// `[coarsest, 2·coarsest, …]`, `levels` entries.
pub fn mesh_sizes(coarsest: usize, levels: usize) -> Vec<usize> {
    (0..levels).map(|i| coarsest << i).collect()
}

pub fn build_space(kind: SpaceKind, mesh: &Mesh, topo: &Topology, k: usize) -> Result<DofMap> {
    match kind {
        SpaceKind::Lagrange => build_lagrange_dofmap(mesh, topo, k),
        SpaceKind::Bdm => build_bdm_dofmap(mesh, topo, k),
        SpaceKind::Nedelec => build_nedelec_dofmap(mesh, topo, k),
    }
}

/// Result of one mixed Poisson solve.
#[derive(Clone, Debug)]
pub struct PoissonLevel {
    pub n: usize,
    pub gdof: usize,
    pub err_u: f64,
    pub err_p: f64,
    pub report: SolveReport,
}

/// Assemble the mixed Poisson saddle-point system on the `N`-cube.
pub fn poisson_mixed_system(k: usize, n: usize, opts: &StudyOptions) -> Result<(Mesh, DofMap, DgSpace, CsrMatrix, Vec<f64>)> {
    if k == 0 {
        return invalid("mixed Poisson needs k >= 1");
    }
    let mesh = structured_cube(n, 3)?;
    let topo = Topology::build(&mesh)?;
    let v = build_bdm_dofmap(&mesh, &topo, k)?;
    let q = DgSpace::new(&mesh, k - 1);
    let qm = simplex_rule(3, 2 * k)?;
    let m = assemble_vector_mass(&mesh, &v, &qm)?;
    let b = assemble_div(&mesh, &v, &q, &qm)?;
    let a = CsrMatrix::saddle_point(&m, &b);
    let ql = opts.load_degree(k);
    let g = assemble_boundary_flux(&mesh, &topo, &v, exact::poisson_p, &facet_rule(3, ql)?)?;
    let f = assemble_scalar_load(&mesh, &q, exact::poisson_f, &simplex_rule(3, ql)?)?;
    let rhs: Vec<f64> = g.iter().chain(f.iter()).map(|x| -x).collect();
    Ok((mesh, v, q, a, rhs))
}

pub fn poisson_mixed_level(k: usize, n: usize, opts: &StudyOptions) -> Result<PoissonLevel> {
    let (mesh, v, q, a, rhs) = poisson_mixed_system(k, n, opts)?;
    let (x, report) = solve(&a, &rhs, SystemKind::SaddlePoint { primal: v.gdof() }, &opts.solver)?;
    let qe = simplex_rule(3, opts.error_degree(k))?;
    let err_u = l2_error(&mesh, &v, &x[..v.gdof()], exact::poisson_u, &qe)?;
    let err_p = scalar_l2_error(&mesh, &q, &x[v.gdof()..], exact::poisson_p, &qe)?;
    Ok(PoissonLevel { n, gdof: a.nrows(), err_u, err_p, report })
}

pub fn cmd_poisson_mixed(k: usize, sizes: &[usize], opts: &StudyOptions) -> Result<RateTable> {
    let mut t = RateTable::new(&["u", "p"]);
    for &n in sizes {
        let l = poisson_mixed_level(k, n, opts)?;
        t.push(1.0 / n as f64, l.gdof, vec![l.err_u, l.err_p]);
    }
    Ok(t)
}

#[derive(Clone, Debug)]
pub struct MaxwellLevel {
    pub n: usize,
    pub gdof: usize,
    pub err_e: f64,
    pub err_curl: f64,
    pub report: SolveReport,
}

/// `(curl E, curl v) − (E, v) = (J, v)` with `n × E = 0`.
pub fn maxwell_system(k: usize, n: usize, opts: &StudyOptions) -> Result<(Mesh, DofMap, CsrMatrix, Vec<f64>)> {
    if k == 0 {
        return invalid("Maxwell needs k >= 1");
    }
    let mesh = structured_cube(n, 3)?;
    let topo = Topology::build(&mesh)?;
    let v = build_nedelec_dofmap(&mesh, &topo, k)?;
    let q = simplex_rule(3, 2 * k)?;
    let c = assemble_curlcurl(&mesh, &v, &q)?;
    let m = assemble_vector_mass(&mesh, &v, &q)?;
    let a = c.add_scaled(-1.0, &m);
    let rhs = assemble_load(&mesh, &v, exact::maxwell_j, &simplex_rule(3, opts.load_degree(k))?)?;
    let zeros = vec![0.0; v.gdof()];
    let (a, rhs) = apply_essential_bc(&a, &rhs, v.boundary_mask(), &zeros);
    Ok((mesh, v, a, rhs))
}

pub fn maxwell_level(k: usize, n: usize, opts: &StudyOptions) -> Result<MaxwellLevel> {
    let (mesh, v, a, rhs) = maxwell_system(k, n, opts)?;
    let (x, report) = solve(&a, &rhs, SystemKind::Indefinite, &opts.solver)?;
    let qe = simplex_rule(3, opts.error_degree(k))?;
    let err_e = l2_error(&mesh, &v, &x, exact::maxwell_e, &qe)?;
    let err_curl = curl_error(&mesh, &v, &x, exact::maxwell_curl_e, &qe)?;
    Ok(MaxwellLevel { n, gdof: v.gdof(), err_e, err_curl, report })
}

pub fn cmd_maxwell(k: usize, sizes: &[usize], opts: &StudyOptions) -> Result<RateTable> {
    let mut t = RateTable::new(&["E", "curlE"]);
    for &n in sizes {
        let l = maxwell_level(k, n, opts)?;
        t.push(1.0 / n as f64, l.gdof, vec![l.err_e, l.err_curl]);
    }
    Ok(t)
}

/// L2 error of the nodal interpolant of [`exact::smooth_field`].
pub fn cmd_interp(kind: SpaceKind, k: usize, dim: usize, sizes: &[usize], opts: &StudyOptions) -> Result<RateTable> {
    let mut t = RateTable::new(&["u"]);
    let field = move |x: &Point| {
        let mut u = exact::smooth_field(x);
        if dim == 2 {
            u.z = 0.0;
        }
        u
    };
    for &n in sizes {
        let mesh = structured_cube(n, dim)?;
        let topo = Topology::build(&mesh)?;
        let v = build_space(kind, &mesh, &topo, k)?;
        let c = v.interpolate(field);
        let e = l2_error(&mesh, &v, &c, field, &simplex_rule(dim, opts.error_degree(k))?)?;
        t.push(1.0 / n as f64, v.gdof(), vec![e]);
    }
    Ok(t)
}

/// Per-block DoF counts with closed-form cross-checks.
#[derive(Clone, Debug)]
pub struct DimsReport {
    pub space: SpaceKind,
    pub degree: usize,
    pub blocks: Vec<(String, usize)>,
    pub gdof: usize,
    pub expected_gdof: usize,
    /// `Σ_cells ldof`
    pub cell_dof_sum: usize,
    /// `Σ_dofs multiplicity`
    pub multiplicity_sum: usize,
}

impl DimsReport {
    pub fn consistent(&self) -> bool {
        self.gdof == self.expected_gdof
            && self.cell_dof_sum == self.multiplicity_sum
            && self.blocks.iter().map(|b| b.1).sum::<usize>() == self.gdof
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("block,count\n");
        for (n, c) in &self.blocks {
            let _ = writeln!(s, "{n},{c}");
        }
        let _ = writeln!(s, "gdof,{}", self.gdof);
        let _ = writeln!(s, "closed_form,{}", self.expected_gdof);
        let _ = writeln!(s, "handshake,{}/{}", self.cell_dof_sum, self.multiplicity_sum);
        s
    }
}

/// Closed-form global dimension from entity counts.
pub fn closed_form_gdof(kind: SpaceKind, k: usize, dim: usize, nn: usize, ne: usize, nf: usize, nc: usize) -> usize {
    let c = |n, r| binomial(n, r);
    match (kind, dim) {
        (SpaceKind::Lagrange, 2) => nn + (k - 1) * ne + c(k - 1, 2) * nc,
        (SpaceKind::Lagrange, _) => nn + (k - 1) * ne + c(k - 1, 2) * nf + c(k - 1, 3) * nc,
        (SpaceKind::Bdm, 2) => (k + 1) * ne + (k * k - 1) * nc,
        (SpaceKind::Bdm, _) => (k + 1) * (k + 2) / 2 * nf + (3 * c(k + 3, 3) - 2 * (k + 1) * (k + 2)) * nc,
        (SpaceKind::Nedelec, 2) => (k + 1) * ne + (k * k - 1) * nc,
        (SpaceKind::Nedelec, _) => {
            (k + 1) * ne + (k * k - 1) * nf + (2 * (k - 1) * (k.saturating_sub(2)) + c(k - 1, 3) * 3) * nc
        }
    }
}

/// DoF blocks of a space; `lagrange` reports scalar interpolation points.
pub fn cmd_dims(kind: SpaceKind, k: usize, mesh: &Mesh) -> Result<DimsReport> {
    let topo = Topology::build(mesh)?;
    let (blocks, gdof, cell2dof, ldof) = if kind == SpaceKind::Lagrange {
        let pm = build_cell2ipoint(mesh, &topo, k)?;
        let b = pm.blocks().iter().map(|b| (b.name.clone(), b.len)).collect();
        (b, pm.gdof(), pm.cell2ipoint().to_vec(), pm.ldof())
    } else {
        let s = build_space(kind, mesh, &topo, k)?;
        let b = s.blocks().iter().map(|b| (b.name.clone(), b.len)).collect();
        (b, s.gdof(), s.cell2dof().to_vec(), s.ldof())
    };
    let mut mult = vec![0usize; gdof];
    for &g in &cell2dof {
        mult[g] += 1;
    }
    Ok(DimsReport {
        space: kind,
        degree: k,
        blocks,
        gdof,
        expected_gdof: closed_form_gdof(
            kind,
            k,
            mesh.dim(),
            mesh.num_nodes(),
            topo.num_edges(),
            topo.num_faces(),
            mesh.num_cells(),
        ),
        cell_dof_sum: ldof * mesh.num_cells(),
        multiplicity_sum: mult.iter().sum(),
    })
}

/// Wall-clock helper for the binary.
pub fn timed<T>(f: impl FnOnce() -> T) -> (T, f64) {
    let t = Instant::now();
    let r = f();
    (r, t.elapsed().as_secs_f64())
}
