//! Element loops for mass, divergence and curl-curl operators, load vectors and
//! error norms.
//!
//! Every basis function is a scalar Lagrange function times a constant dual
//! vector, so `div(φ ê) = ∇φ·ê` and `curl(φ ê) = ∇φ × ê`.
//!
//! Cells are processed in fixed-size chunks in parallel; triplets are
//! concatenated in chunk order before the CSR build, so results do not depend on
//! scheduling.

mod csr;
mod field;

pub use csr::CsrMatrix;
pub use field::{curl_error, div_error, l2_error, scalar_l2_error, DiscreteField};

use rayon::prelude::*;
use smallvec::SmallVec;

use crate::basis::{tabulate, BasisTabulation};
use crate::dofs::DofMap;
use crate::error::{invalid, Result};
use crate::lattice::binomial;
use crate::mesh::{cell_geometry, Mesh, Point, Topology};
use crate::quadrature::QuadratureRule;

const CHUNK: usize = 32;

/// Run `f` on every cell in parallel, concatenating outputs in cell order.
pub(crate) fn par_cells<T: Send>(nc: usize, f: impl Fn(usize, &mut Vec<T>) -> Result<()> + Sync) -> Result<Vec<T>> {
    let parts: Vec<Result<Vec<T>>> = (0..nc.div_ceil(CHUNK))
        .into_par_iter()
        .map(|ch| {
            let mut out = Vec::new();
            for c in ch * CHUNK..((ch + 1) * CHUNK).min(nc) {
                f(c, &mut out)?;
            }
            Ok(out)
        })
        .collect();
    let mut all = Vec::new();
    for p in parts {
        all.extend(p?);
    }
    Ok(all)
}

/// Physical coordinates of a barycentric point of cell `c`.
pub fn map_point(mesh: &Mesh, c: usize, lambda: &[f64]) -> Point {
    mesh.cell(c).iter().zip(lambda).map(|(&v, &l)| mesh.node(v) * l).sum()
}

/// Discontinuous scalar `P_m` on each cell, numbered cell by cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DgSpace {
    pub dim: usize,
    pub degree: usize,
    pub num_cells: usize,
}

impl DgSpace {
    pub fn new(mesh: &Mesh, degree: usize) -> Self {
        DgSpace { dim: mesh.dim(), degree, num_cells: mesh.num_cells() }
    }

    pub fn ldof(&self) -> usize {
        binomial(self.dim + self.degree, self.degree)
    }

    pub fn gdof(&self) -> usize {
        self.ldof() * self.num_cells
    }
}

fn tab_at(space_degree: usize, dim: usize, quad: &QuadratureRule) -> BasisTabulation {
    tabulate(space_degree, dim, quad.points())
}

fn check_quad(mesh: &Mesh, quad: &QuadratureRule) -> Result<()> {
    if quad.dim() != mesh.dim() {
        return invalid(format!("quadrature of dimension {} on a {}D mesh", quad.dim(), mesh.dim()));
    }
    Ok(())
}

/// `M_ab = ∫ φ_a · φ_b`.
pub fn assemble_vector_mass(mesh: &Mesh, space: &DofMap, quad: &QuadratureRule) -> Result<CsrMatrix> {
    check_quad(mesh, quad)?;
    let dim = space.dim();
    let ldof = space.ldof();
    let tab = tab_at(space.degree(), dim, quad);
    let np = tab.num_basis();
    let trip = par_cells(mesh.num_cells(), |c, out| {
        let g = cell_geometry(mesh, c)?;
        // scalar mass S_pr, then M_ab = S_{p(a) p(b)} (ê_a · ê_b)
        let mut s = vec![0.0; np * np];
        for (q, w) in quad.weights().iter().enumerate() {
            let w = w * g.measure;
            for p in 0..np {
                let wp = w * tab.value(p, q);
                for r in 0..np {
                    s[p * np + r] += wp * tab.value(r, q);
                }
            }
        }
        let duals = space.cell_duals(c);
        let dofs = space.cell_dofs(c);
        for a in 0..ldof {
            for b in 0..ldof {
                let v = s[(a / dim) * np + b / dim] * duals[a].dot(&duals[b]);
                out.push((dofs[a], dofs[b], v));
            }
        }
        Ok(())
    })?;
    Ok(CsrMatrix::from_triplets(space.gdof(), space.gdof(), trip))
}

/// `A_ab = ∫ curl φ_a · curl φ_b`; in 2D the scalar rotation.
pub fn assemble_curlcurl(mesh: &Mesh, space: &DofMap, quad: &QuadratureRule) -> Result<CsrMatrix> {
    check_quad(mesh, quad)?;
    let dim = space.dim();
    let ldof = space.ldof();
    let tab = tab_at(space.degree(), dim, quad);
    let trip = par_cells(mesh.num_cells(), |c, out| {
        let g = cell_geometry(mesh, c)?;
        let duals = space.cell_duals(c);
        let dofs = space.cell_dofs(c);
        let mut ke = vec![0.0; ldof * ldof];
        let mut curls = vec![Point::zeros(); ldof];
        for (q, w) in quad.weights().iter().enumerate() {
            let w = w * g.measure;
            for a in 0..ldof {
                curls[a] = tab.gradient(a / dim, q, &g.grad_lambda).cross(&duals[a]);
            }
            for a in 0..ldof {
                let ca = curls[a] * w;
                for b in 0..ldof {
                    ke[a * ldof + b] += ca.dot(&curls[b]);
                }
            }
        }
        for a in 0..ldof {
            for b in 0..ldof {
                out.push((dofs[a], dofs[b], ke[a * ldof + b]));
            }
        }
        Ok(())
    })?;
    Ok(CsrMatrix::from_triplets(space.gdof(), space.gdof(), trip))
}

/// `B[q, v] = −∫ (div φ_v) ψ_q` with `ψ` the discontinuous pressure basis.
pub fn assemble_div(mesh: &Mesh, space: &DofMap, pressure: &DgSpace, quad: &QuadratureRule) -> Result<CsrMatrix> {
    check_quad(mesh, quad)?;
    let dim = space.dim();
    let ldof = space.ldof();
    let pl = pressure.ldof();
    let tab = tab_at(space.degree(), dim, quad);
    let ptab = tab_at(pressure.degree, dim, quad);
    let trip = par_cells(mesh.num_cells(), |c, out| {
        let g = cell_geometry(mesh, c)?;
        let duals = space.cell_duals(c);
        let dofs = space.cell_dofs(c);
        let mut ke = vec![0.0; pl * ldof];
        for (q, w) in quad.weights().iter().enumerate() {
            let w = w * g.measure;
            for a in 0..ldof {
                let div = tab.gradient(a / dim, q, &g.grad_lambda).dot(&duals[a]);
                for r in 0..pl {
                    ke[r * ldof + a] -= w * div * ptab.value(r, q);
                }
            }
        }
        for r in 0..pl {
            for a in 0..ldof {
                out.push((c * pl + r, dofs[a], ke[r * ldof + a]));
            }
        }
        Ok(())
    })?;
    Ok(CsrMatrix::from_triplets(pressure.gdof(), space.gdof(), trip))
}

/// Scatter `(cell, local, value)` contributions into a global vector.
fn scatter(n: usize, parts: Vec<(usize, f64)>) -> Vec<f64> {
    let mut v = vec![0.0; n];
    for (i, x) in parts {
        v[i] += x;
    }
    v
}

/// `F_a = ∫ f · φ_a`.
pub fn assemble_load(
    mesh: &Mesh,
    space: &DofMap,
    f: impl Fn(&Point) -> Point + Sync,
    quad: &QuadratureRule,
) -> Result<Vec<f64>> {
    check_quad(mesh, quad)?;
    let dim = space.dim();
    let tab = tab_at(space.degree(), dim, quad);
    let parts = par_cells(mesh.num_cells(), |c, out| {
        let g = cell_geometry(mesh, c)?;
        let duals = space.cell_duals(c);
        let dofs = space.cell_dofs(c);
        let fq: SmallVec<[Point; 64]> = quad.points().iter().map(|l| f(&map_point(mesh, c, l))).collect();
        for a in 0..space.ldof() {
            let mut s = 0.0;
            for (q, w) in quad.weights().iter().enumerate() {
                s += w * tab.value(a / dim, q) * fq[q].dot(&duals[a]);
            }
            out.push((dofs[a], s * g.measure));
        }
        Ok(())
    })?;
    Ok(scatter(space.gdof(), parts))
}

/// `F_r = ∫ f ψ_r` for a discontinuous scalar space.
pub fn assemble_scalar_load(
    mesh: &Mesh,
    space: &DgSpace,
    f: impl Fn(&Point) -> f64 + Sync,
    quad: &QuadratureRule,
) -> Result<Vec<f64>> {
    check_quad(mesh, quad)?;
    let tab = tab_at(space.degree, space.dim, quad);
    let pl = space.ldof();
    let parts = par_cells(mesh.num_cells(), |c, out| {
        let g = cell_geometry(mesh, c)?;
        for r in 0..pl {
            let mut s = 0.0;
            for (q, (l, w)) in quad.iter().enumerate() {
                s += w * tab.value(r, q) * f(&map_point(mesh, c, l));
            }
            out.push((c * pl + r, s * g.measure));
        }
        Ok(())
    })?;
    Ok(scatter(space.gdof(), parts))
}

fn facet_measure(mesh: &Mesh, verts: &[usize]) -> f64 {
    let x0 = mesh.node(verts[0]);
    if verts.len() == 2 {
        (mesh.node(verts[1]) - x0).norm()
    } else {
        0.5 * (mesh.node(verts[1]) - x0).cross(&(mesh.node(verts[2]) - x0)).norm()
    }
}

/// `∫_{∂Ω} g (φ_a · n)` with `n` the outward unit normal. `facet_quad` lives on
/// the `(GD−1)`-simplex.
pub fn assemble_boundary_flux(
    mesh: &Mesh,
    topo: &Topology,
    space: &DofMap,
    g: impl Fn(&Point) -> f64,
    facet_quad: &QuadratureRule,
) -> Result<Vec<f64>> {
    let dim = space.dim();
    if facet_quad.dim() + 1 != dim {
        return invalid("boundary flux needs a facet quadrature rule");
    }
    let mut out = vec![0.0; space.gdof()];
    let lattice = crate::lattice::SimplicialLattice::enumerate(dim, space.degree());
    for f in 0..topo.num_facets() {
        if !topo.is_boundary_facet(f) {
            continue;
        }
        let (c, i) = topo.facet_cells(f)[0];
        let geom = cell_geometry(mesh, c)?;
        let n = geom.outward_normals[i];
        let area = facet_measure(mesh, &topo.facet_vertices(f));
        let lv: SmallVec<[usize; 3]> = (0..=dim).filter(|&j| j != i).collect();
        let duals = space.cell_duals(c);
        let dofs = space.cell_dofs(c);
        for (mu, w) in facet_quad.iter() {
            let mut lam: SmallVec<[f64; 4]> = SmallVec::from_elem(0.0, dim + 1);
            for (j, &v) in lv.iter().enumerate() {
                lam[v] = mu[j];
            }
            let gx = g(&map_point(mesh, c, &lam)) * w * area;
            for a in 0..space.ldof() {
                let phi = crate::basis::eval_lagrange(lattice.get(a / dim), space.degree(), &lam);
                out[dofs[a]] += gx * phi * duals[a].dot(&n);
            }
        }
    }
    Ok(out)
}

/// Symmetric elimination of the masked DoFs: their rows and columns are
/// cleared, the diagonal set to 1 and the right-hand side to the prescribed
/// value; other rows absorb `−A_ij g_j`.
pub fn apply_essential_bc(a: &CsrMatrix, rhs: &[f64], mask: &[bool], values: &[f64]) -> (CsrMatrix, Vec<f64>) {
    let n = a.nrows();
    let mut b = rhs.to_vec();
    let mut t = Vec::with_capacity(a.nnz());
    for i in 0..n {
        if mask[i] {
            t.push((i, i, 1.0));
            b[i] = values[i];
            continue;
        }
        for (j, v) in a.row(i) {
            if mask[j] {
                b[i] -= v * values[j];
            } else {
                t.push((i, j, v));
            }
        }
    }
    (CsrMatrix::from_triplets(n, a.ncols(), t), b)
}
