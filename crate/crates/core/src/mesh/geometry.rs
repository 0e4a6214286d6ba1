use nalgebra::{Matrix2, Matrix3};
use smallvec::SmallVec;

use super::{Mesh, Point};
use crate::error::{FemError, Result};
use crate::lattice::factorial;

const DEGENERATE_TOL: f64 = 1e-14;

/// Affine data of one cell.
#[derive(Clone, Debug)]
pub struct CellGeometry {
    /// `∇λ_i`, one per local vertex.
    pub grad_lambda: SmallVec<[Point; 4]>,
    /// Area or volume.
    pub measure: f64,
    /// Unit outward normal of the facet opposite local vertex `i`.
    pub outward_normals: SmallVec<[Point; 4]>,
    /// Sign of the Jacobian determinant.
    pub orientation: f64,
}

pub(super) fn diameter(mesh: &Mesh, cell: &[usize]) -> f64 {
    let mut d: f64 = 0.0;
    for i in 0..cell.len() {
        for j in i + 1..cell.len() {
            d = d.max((mesh.node(cell[j]) - mesh.node(cell[i])).norm());
        }
    }
    d
}

fn jacobian_det(mesh: &Mesh, cell: &[usize]) -> f64 {
    let x0 = mesh.node(cell[0]);
    let e: SmallVec<[Point; 3]> = cell[1..].iter().map(|&v| mesh.node(v) - x0).collect();
    if mesh.dim() == 2 {
        e[0].x * e[1].y - e[0].y * e[1].x
    } else {
        e[0].dot(&e[1].cross(&e[2]))
    }
}

pub(super) fn check_nondegenerate(mesh: &Mesh, c: usize) -> Result<()> {
    let cell = mesh.cell(c);
    let vol = jacobian_det(mesh, cell).abs() / factorial(mesh.dim());
    let diam = diameter(mesh, cell);
    if vol.is_nan() || vol < DEGENERATE_TOL * diam.powi(mesh.dim() as i32) || diam == 0.0 {
        return Err(FemError::Geometry(format!("cell {c} has measure {vol:.3e}")));
    }
    Ok(())
}

/// Barycentric gradients, measure and outward facet normals of cell `c`.
pub fn cell_geometry(mesh: &Mesh, c: usize) -> Result<CellGeometry> {
    let cell = mesh.cell(c);
    let dim = mesh.dim();
    let x0 = mesh.node(cell[0]);
    let det = jacobian_det(mesh, cell);
    let measure = det.abs() / factorial(dim);
    let diam = diameter(mesh, cell);
    if measure.is_nan() || measure < DEGENERATE_TOL * diam.powi(dim as i32) {
        return Err(FemError::Geometry(format!("cell {c} has measure {measure:.3e}")));
    }
    let mut grad_lambda: SmallVec<[Point; 4]> = SmallVec::new();
    grad_lambda.push(Point::zeros());
    if dim == 2 {
        let e1 = mesh.node(cell[1]) - x0;
        let e2 = mesh.node(cell[2]) - x0;
        let j = Matrix2::new(e1.x, e2.x, e1.y, e2.y);
        let inv = j
            .try_inverse()
            .ok_or_else(|| FemError::Geometry(format!("cell {c} is singular")))?;
        for r in 0..2 {
            grad_lambda.push(Point::new(inv[(r, 0)], inv[(r, 1)], 0.0));
        }
    } else {
        let e: SmallVec<[Point; 3]> = cell[1..].iter().map(|&v| mesh.node(v) - x0).collect();
        let j = Matrix3::from_columns(&[e[0], e[1], e[2]]);
        let inv = j
            .try_inverse()
            .ok_or_else(|| FemError::Geometry(format!("cell {c} is singular")))?;
        for r in 0..3 {
            grad_lambda.push(inv.row(r).transpose());
        }
    }
    let s: Point = grad_lambda[1..].iter().sum();
    grad_lambda[0] = -s;
    let outward_normals = grad_lambda.iter().map(|g| -g.normalize()).collect();
    Ok(CellGeometry { grad_lambda, measure, outward_normals, orientation: det.signum() })
}

/// Unit tangent of the edge, directed from the smaller to the larger global id.
pub fn edge_tangent(mesh: &Mesh, edge: [usize; 2]) -> Point {
    let (a, b) = if edge[0] < edge[1] { (edge[0], edge[1]) } else { (edge[1], edge[0]) };
    (mesh.node(b) - mesh.node(a)).normalize()
}

/// Global unit normal of a facet (a face in 3D, an edge in 2D).
///
/// The vertices are sorted by global id first, so every cell sharing the facet
/// gets the same vector.
pub fn face_normal(mesh: &Mesh, facet: &[usize]) -> Point {
    let mut v: SmallVec<[usize; 3]> = SmallVec::from_slice(facet);
    v.sort_unstable();
    if v.len() == 2 {
        let t = edge_tangent(mesh, [v[0], v[1]]);
        Point::new(t.y, -t.x, 0.0)
    } else {
        let x0 = mesh.node(v[0]);
        (mesh.node(v[1]) - x0).cross(&(mesh.node(v[2]) - x0)).normalize()
    }
}

/// Orthonormal basis of the tangent space of the simplex with the given
/// vertices, by Gram–Schmidt on `x_{v_j} − x_{v_0}` in the order given.
pub fn tangent_basis(mesh: &Mesh, verts: &[usize]) -> SmallVec<[Point; 3]> {
    let x0 = mesh.node(verts[0]);
    let mut basis: SmallVec<[Point; 3]> = SmallVec::new();
    for &v in &verts[1..] {
        let mut w = mesh.node(v) - x0;
        for b in &basis {
            w -= b * b.dot(&w);
        }
        basis.push(w.normalize());
    }
    basis
}

/// `n_f^e`: unit vector tangent to `f`, normal to `e`, pointing from `e` toward
/// the vertex of `f` not in `e`. Uses global data only.
pub fn normal_in_face(mesh: &Mesh, e: &[usize], f: &[usize]) -> Result<Point> {
    let mut es: SmallVec<[usize; 4]> = SmallVec::from_slice(e);
    es.sort_unstable();
    let opp: SmallVec<[usize; 1]> = f.iter().copied().filter(|v| !es.contains(v)).collect();
    if opp.len() != 1 || f.len() != e.len() + 1 {
        return Err(FemError::Geometry(format!("{e:?} is not a facet of {f:?}")));
    }
    let tangents = tangent_basis(mesh, &es);
    let mut w = mesh.node(opp[0]) - mesh.node(es[0]);
    for t in &tangents {
        w -= t * t.dot(&w);
    }
    let nrm = w.norm();
    if nrm <= 1e-14 * (mesh.node(opp[0]) - mesh.node(es[0])).norm() {
        return Err(FemError::Geometry(format!("{f:?} is degenerate")));
    }
    Ok(w / nrm)
}
