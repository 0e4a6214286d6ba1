//! Direction frames at interpolation points.
//!
//! A vector basis function is `φ_α ê_i`, where `{e_i}` is the frame at the point
//! `x_α` and `{ê_i}` its dual. Each direction carries an owner: a global entity
//! when the DoF is shared between cells, or the cell itself when it is local.
//!
//! The point's position inside the cell is described by its support `f`, the
//! sorted local vertices with nonzero lattice coordinates.

use nalgebra::DMatrix;
use smallvec::SmallVec;

use crate::error::{FemError, Result};
use crate::mesh::{
    edge_tangent, face_normal, normal_in_face, tangent_basis, Entity, EntityKind, Mesh, Point,
    Topology,
};

/// Frames with a 1-norm condition number above this are rejected.
pub const MAX_FRAME_CONDITION: f64 = 1e8;

#[derive(Clone, Debug, PartialEq)]
pub struct Frame {
    pub directions: SmallVec<[Point; 3]>,
    pub duals: SmallVec<[Point; 3]>,
    pub owners: SmallVec<[Entity; 3]>,
}

impl Frame {
    fn from_directions(dim: usize, directions: SmallVec<[Point; 3]>, owners: SmallVec<[Entity; 3]>) -> Result<Frame> {
        let duals = dual_frame(&directions, dim)?;
        Ok(Frame { directions, duals, owners })
    }

    pub fn len(&self) -> usize {
        self.directions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.directions.is_empty()
    }
}

/// Duals by inverse-transpose: `ê_j` is column `j` of `D⁻¹`, where row `i` of
/// `D` is `e_i`. Only the first `dim` components are used.
pub fn dual_frame(directions: &[Point], dim: usize) -> Result<SmallVec<[Point; 3]>> {
    let d = DMatrix::from_fn(dim, dim, |i, j| directions[i][j]);
    let inv = d.clone().try_inverse().ok_or(FemError::Frame { cond: f64::INFINITY })?;
    let norm1 = |m: &DMatrix<f64>| {
        (0..dim).map(|j| m.column(j).iter().map(|x| x.abs()).sum::<f64>()).fold(0.0, f64::max)
    };
    let cond = norm1(&d) * norm1(&inv);
    if cond.is_nan() || cond > MAX_FRAME_CONDITION {
        return Err(FemError::Frame { cond });
    }
    Ok((0..dim)
        .map(|j| {
            let mut p = Point::zeros();
            for i in 0..dim {
                p[i] = inv[(i, j)];
            }
            p
        })
        .collect())
}

fn axes(dim: usize) -> SmallVec<[Point; 3]> {
    (0..dim)
        .map(|i| {
            let mut p = Point::zeros();
            p[i] = 1.0;
            p
        })
        .collect()
}

fn complement(n: usize, f: &[usize]) -> SmallVec<[usize; 4]> {
    (0..=n).filter(|i| !f.contains(i)).collect()
}

fn join(f: &[usize], i: usize) -> SmallVec<[usize; 4]> {
    let mut g: SmallVec<[usize; 4]> = SmallVec::from_slice(f);
    g.push(i);
    g.sort_unstable();
    g
}

/// Cartesian axes owned by the entity containing the point.
pub fn lagrange_vector_frame(topo: &Topology, c: usize, f: &[usize]) -> Frame {
    let dim = topo.dim();
    let owner = topo.local_entity(c, f);
    let dirs = axes(dim);
    Frame { duals: dirs.clone(), owners: SmallVec::from_elem(owner, dim), directions: dirs }
}

/// BDM frame: local tangents of `f`, then the global normals of the facets
/// containing `f`. Normals are owned by their facet, everything else by the cell.
pub fn bdm_frame(mesh: &Mesh, topo: &Topology, c: usize, f: &[usize]) -> Result<Frame> {
    let n = mesh.dim();
    let cell = mesh.cell(c);
    let local = Entity::new(EntityKind::Cell, c);
    if f.len() == n + 1 {
        return Frame::from_directions(n, axes(n), SmallVec::from_elem(local, n));
    }
    let verts: SmallVec<[usize; 4]> = f.iter().map(|&i| cell[i]).collect();
    let mut dirs = tangent_basis(mesh, &verts);
    let mut owners: SmallVec<[Entity; 3]> = SmallVec::from_elem(local, dirs.len());
    let facets = topo.cell_facets(c);
    for i in complement(n, f) {
        let fid = facets[i];
        dirs.push(face_normal(mesh, &topo.facet_vertices(fid)));
        owners.push(Entity::new(topo.facet_kind(), fid));
    }
    Frame::from_directions(n, dirs, owners)
}

/// Second-kind Nédélec frame: global tangents of `f`, then in-entity normals
/// `n^f_{f+i}`.
///
/// At a vertex the directions are the tangents of the adjacent edges, each owned
/// by its edge. At an edge point the in-face normals belong to the face (3D) or
/// the cell (2D). At a 3D face point the two face tangents belong to the face and
/// the normal into the cell is local.
pub fn nedelec_frame(mesh: &Mesh, topo: &Topology, c: usize, f: &[usize]) -> Result<Frame> {
    let n = mesh.dim();
    let cell = mesh.cell(c);
    let local = Entity::new(EntityKind::Cell, c);
    let owner_of = |g: &[usize]| if g.len() == n + 1 { local } else { topo.local_entity(c, g) };
    let mut dirs: SmallVec<[Point; 3]> = SmallVec::new();
    let mut owners: SmallVec<[Entity; 3]> = SmallVec::new();
    match f.len() - 1 {
        l if l == n => {
            return Frame::from_directions(n, axes(n), SmallVec::from_elem(local, n));
        }
        0 => {
            let v = f[0];
            for i in complement(n, f) {
                dirs.push(edge_tangent(mesh, [cell[v], cell[i]]));
                owners.push(topo.local_entity(c, &join(f, i)));
            }
        }
        1 => {
            let e = topo.local_entity(c, f);
            let ev = topo.entity_vertices(e);
            dirs.push(edge_tangent(mesh, [ev[0], ev[1]]));
            owners.push(e);
            for i in complement(n, f) {
                let g = join(f, i);
                let gv: SmallVec<[usize; 4]> = g.iter().map(|&j| cell[j]).collect();
                dirs.push(normal_in_face(mesh, &ev, &gv)?);
                owners.push(owner_of(&g));
            }
        }
        _ => {
            // face point in 3D
            let face = topo.local_entity(c, f);
            let fv = topo.entity_vertices(face);
            let t1 = edge_tangent(mesh, [fv[0], fv[1]]);
            let nf = face_normal(mesh, &fv);
            dirs.push(t1);
            dirs.push(t1.cross(&nf));
            owners.push(face);
            owners.push(face);
            dirs.push(normal_in_face(mesh, &fv, cell)?);
            owners.push(local);
        }
    }
    Frame::from_directions(n, dirs, owners)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orthonormal_is_self_dual() {
        let d = dual_frame(&axes(3), 3).unwrap();
        assert_eq!(&d[..], &axes(3)[..]);
    }

    #[test]
    fn skew_two_d() {
        let s = 0.5f64.sqrt();
        let d = dual_frame(&[Point::new(1., 0., 0.), Point::new(-s, s, 0.)], 2).unwrap();
        assert!((d[0] - Point::new(1., 1., 0.)).norm() < 1e-15);
        assert!((d[1] - Point::new(0., 2f64.sqrt(), 0.)).norm() < 1e-15);
    }

    #[test]
    fn singular_rejected() {
        let r = dual_frame(&[Point::new(1., 0., 0.), Point::new(1., 1e-12, 0.)], 2);
        assert!(matches!(r, Err(FemError::Frame { .. })));
    }
}
