//! Global degree-of-freedom numbering.
//!
//! Local DoF `j` of a cell is the pair (lattice point `p = j / GD`, frame
//! direction `d = j % GD`). Shared DoFs are numbered entity by entity; an
//! entity's points are ranked on its *global* vertex order, so every adjacent
//! cell computes the same index. Cell-local DoFs follow all shared blocks.

mod bdm;
mod lagrange;
mod nedelec;

pub use bdm::build_bdm_dofmap;
pub use lagrange::{build_cell2ipoint, build_lagrange_dofmap, LagrangePointMap};
pub use nedelec::build_nedelec_dofmap;

use std::fmt;
use std::str::FromStr;

use smallvec::SmallVec;

use crate::error::{invalid, FemError, Result};
use crate::frames::Frame;
use crate::lattice::{rank_of, MultiIndex, SimplicialLattice};
use crate::mesh::{Entity, EntityKind, Mesh, Point, Topology};

/// Which vector space a [`DofMap`] discretizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpaceKind {
    Lagrange,
    Bdm,
    Nedelec,
}

impl fmt::Display for SpaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SpaceKind::Lagrange => "lagrange",
            SpaceKind::Bdm => "bdm",
            SpaceKind::Nedelec => "nedelec",
        })
    }
}

impl FromStr for SpaceKind {
    type Err = FemError;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "lagrange" => Ok(SpaceKind::Lagrange),
            "bdm" => Ok(SpaceKind::Bdm),
            "nedelec" => Ok(SpaceKind::Nedelec),
            _ => invalid(format!("unknown space `{s}`")),
        }
    }
}

/// A contiguous range of global DoFs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DofBlock {
    pub name: String,
    pub offset: usize,
    pub len: usize,
}

/// Local-to-global map of a vector space plus per-DoF geometry.
#[derive(Clone, Debug)]
pub struct DofMap {
    kind: SpaceKind,
    dim: usize,
    degree: usize,
    ldof: usize,
    gdof: usize,
    cell2dof: Vec<usize>,
    cell_duals: Vec<Point>,
    dof2vector: Vec<Point>,
    dof2point: Vec<Point>,
    boundary: Vec<bool>,
    blocks: Vec<DofBlock>,
}

impl DofMap {
    pub fn kind(&self) -> SpaceKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// DoFs per cell, `GD · C(GD+k, k)`.
    pub fn ldof(&self) -> usize {
        self.ldof
    }

    pub fn gdof(&self) -> usize {
        self.gdof
    }

    pub fn num_cells(&self) -> usize {
        self.cell2dof.len() / self.ldof
    }

    pub fn cell_dofs(&self, c: usize) -> &[usize] {
        &self.cell2dof[c * self.ldof..(c + 1) * self.ldof]
    }

    pub fn cell2dof(&self) -> &[usize] {
        &self.cell2dof
    }

    /// Dual vectors `ê` multiplying the scalar basis, per local DoF of cell `c`.
    pub fn cell_duals(&self, c: usize) -> &[Point] {
        &self.cell_duals[c * self.ldof..(c + 1) * self.ldof]
    }

    pub fn dof2vector(&self) -> &[Point] {
        &self.dof2vector
    }

    pub fn dof2point(&self) -> &[Point] {
        &self.dof2point
    }

    /// DoFs on the boundary trace (entity-based).
    pub fn boundary_mask(&self) -> &[bool] {
        &self.boundary
    }

    pub fn blocks(&self) -> &[DofBlock] {
        &self.blocks
    }

    /// Lattice point of local DoF `j`.
    pub fn local_point(&self, j: usize) -> usize {
        j / self.dim
    }

    /// Frame direction of local DoF `j`.
    pub fn local_direction(&self, j: usize) -> usize {
        j % self.dim
    }

    /// DoF functionals applied to `u`: `u(x_g) · e_g`.
    pub fn interpolate(&self, u: impl Fn(&Point) -> Point) -> Vec<f64> {
        (0..self.gdof).map(|g| u(&self.dof2point[g]).dot(&self.dof2vector[g])).collect()
    }
}

/// Permute `m` (aligned with `local`) so it aligns with `global`.
///
/// `i0 = argsort(argsort(global))`, `i1 = argsort(local)`, result `m[i1[i0]]`.
pub fn reorder_local_to_global(local: &[usize], global: &[usize], m: &[usize]) -> Result<SmallVec<[usize; 4]>> {
    if local.len() != global.len() || local.len() != m.len() {
        return invalid("reorder: length mismatch");
    }
    let mut a: SmallVec<[usize; 4]> = SmallVec::from_slice(local);
    let mut b: SmallVec<[usize; 4]> = SmallVec::from_slice(global);
    a.sort_unstable();
    b.sort_unstable();
    if a != b || a.windows(2).any(|w| w[0] == w[1]) {
        return Err(FemError::Structure(format!("vertex sets {local:?} and {global:?} differ")));
    }
    let argsort = |v: &[usize]| -> SmallVec<[usize; 4]> {
        let mut idx: SmallVec<[usize; 4]> = (0..v.len()).collect();
        idx.sort_by_key(|&i| v[i]);
        idx
    };
    let i0 = argsort(&argsort(global));
    let i1 = argsort(local);
    Ok(i0.iter().map(|&i| m[i1[i]]).collect())
}

/// Rank of an interior point among the interior points of its entity: the
/// closed-form rank of `m − 1`.
pub fn interior_offset(m: &[usize]) -> Result<usize> {
    if m.contains(&0) {
        return invalid(format!("{m:?} is not an interior point"));
    }
    let shifted: SmallVec<[usize; 4]> = m.iter().map(|&x| x - 1).collect();
    Ok(rank_of(&shifted))
}

/// `ℓ = (m2+m3−2)(m2+m3−1)/2 + m3 − 1` for a face-interior point.
pub fn face_interior_offset(m: &[usize]) -> Result<usize> {
    if m.len() != 3 {
        return invalid("face multi-index must have 3 entries");
    }
    interior_offset(m)
}

/// Global index of a face-interior point: `base + ℓ(reorder(m))`.
pub fn face_point_index(base: usize, local_face: &[usize], global_face: &[usize], m: &[usize]) -> Result<usize> {
    Ok(base + face_interior_offset(&reorder_local_to_global(local_face, global_face, m)?)?)
}

/// One interpolation point of one cell, described in global terms.
#[derive(Clone, Debug)]
pub(crate) struct CellPoint {
    pub alpha: MultiIndex,
    /// Sorted local vertices with `α_i > 0`.
    pub support: SmallVec<[usize; 4]>,
    /// Global entity whose relative interior contains the point.
    pub entity: Entity,
    /// `α` restricted to the support, aligned with `entity` vertex order.
    pub m: SmallVec<[usize; 4]>,
    pub x: Point,
}

pub(crate) fn cell_points(
    mesh: &Mesh,
    topo: &Topology,
    lattice: &SimplicialLattice,
    c: usize,
) -> Result<Vec<CellPoint>> {
    let cell = mesh.cell(c);
    let k = lattice.degree() as f64;
    lattice
        .iter()
        .map(|alpha| {
            let support = alpha.support();
            let entity = topo.local_entity(c, &support);
            let gverts = topo.entity_vertices(entity);
            let lverts: SmallVec<[usize; 4]> = support.iter().map(|&i| cell[i]).collect();
            let ml: SmallVec<[usize; 4]> = support.iter().map(|&i| alpha[i]).collect();
            let m = if entity.kind == EntityKind::Cell {
                ml
            } else {
                reorder_local_to_global(&lverts, &gverts, &ml)?
            };
            let mut x = Point::zeros();
            for (&v, &mi) in gverts.iter().zip(m.iter()) {
                x += mesh.node(v) * (mi as f64 / k);
            }
            Ok(CellPoint { alpha: alpha.clone(), support, entity, m, x })
        })
        .collect()
}

/// Where a (point, direction) pair lands.
pub(crate) enum Slot {
    Global(usize),
    /// Cell-local, ordered within the cell by this key.
    Local([usize; 4]),
}

/// Shared machinery for frame-based spaces: numbers global slots as given,
/// orders local slots by key after `shared`, and fills per-DoF geometry.
#[allow(clippy::too_many_arguments)]
pub(crate) fn build_frame_space(
    kind: SpaceKind,
    mesh: &Mesh,
    topo: &Topology,
    k: usize,
    shared: usize,
    local_per_cell: usize,
    mut blocks: Vec<DofBlock>,
    frame: impl Fn(usize, &[usize]) -> Result<Frame>,
    slot: impl Fn(usize, &CellPoint, usize, &Entity) -> Result<Slot>,
) -> Result<DofMap> {
    let dim = mesh.dim();
    let lattice = SimplicialLattice::enumerate(dim, k);
    let ldof = dim * lattice.len();
    let nc = mesh.num_cells();
    let gdof = shared + nc * local_per_cell;
    blocks.push(DofBlock { name: "cell".into(), offset: shared, len: nc * local_per_cell });

    let mut cell2dof = vec![usize::MAX; nc * ldof];
    let mut cell_duals = vec![Point::zeros(); nc * ldof];
    let mut dof2vector = vec![Point::zeros(); gdof];
    let mut dof2point = vec![Point::zeros(); gdof];
    let mut registered = vec![false; gdof];
    let mut boundary = vec![false; gdof];

    for c in 0..nc {
        let points = cell_points(mesh, topo, &lattice, c)?;
        let mut locals: Vec<([usize; 4], usize)> = Vec::with_capacity(local_per_cell);
        let mut pending: Vec<(usize, Point, Point)> = Vec::with_capacity(local_per_cell);
        for (p, cp) in points.iter().enumerate() {
            let fr = frame(c, &cp.support)?;
            for d in 0..dim {
                let j = p * dim + d;
                cell_duals[c * ldof + j] = fr.duals[d];
                match slot(c, cp, d, &fr.owners[d])? {
                    Slot::Global(g) => {
                        if g >= shared {
                            return Err(FemError::Structure(format!("shared index {g} out of range")));
                        }
                        cell2dof[c * ldof + j] = g;
                        if registered[g] {
                            if dof2vector[g] != fr.directions[d] || dof2point[g] != cp.x {
                                return Err(FemError::Structure(format!(
                                    "cell {c} disagrees with a neighbour on shared DoF {g}"
                                )));
                            }
                        } else {
                            registered[g] = true;
                            dof2vector[g] = fr.directions[d];
                            dof2point[g] = cp.x;
                            boundary[g] = topo.is_boundary(fr.owners[d]);
                        }
                    }
                    Slot::Local(key) => {
                        locals.push((key, j));
                        pending.push((j, fr.directions[d], cp.x));
                    }
                }
            }
        }
        if locals.len() != local_per_cell {
            return Err(FemError::Structure(format!(
                "cell {c} has {} local DoFs, expected {local_per_cell}",
                locals.len()
            )));
        }
        locals.sort_unstable();
        for (pos, (_, j)) in locals.iter().enumerate() {
            let g = shared + c * local_per_cell + pos;
            cell2dof[c * ldof + j] = g;
            let (_, v, x) = pending.iter().find(|t| t.0 == *j).expect("pending local");
            dof2vector[g] = *v;
            dof2point[g] = *x;
            registered[g] = true;
        }
    }
    if let Some(g) = registered.iter().position(|r| !r) {
        return Err(FemError::Structure(format!("global DoF {g} is never referenced")));
    }
    Ok(DofMap {
        kind,
        dim,
        degree: k,
        ldof,
        gdof,
        cell2dof,
        cell_duals,
        dof2vector,
        dof2point,
        boundary,
        blocks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reorder_examples() {
        assert_eq!(&reorder_local_to_global(&[5, 6, 10], &[10, 6, 5], &[1, 2, 3]).unwrap()[..], &[3, 2, 1]);
        assert_eq!(&reorder_local_to_global(&[17, 0, 21], &[0, 17, 21], &[3, 1, 1]).unwrap()[..], &[1, 3, 1]);
        assert_eq!(&reorder_local_to_global(&[4, 9], &[4, 9], &[2, 7]).unwrap()[..], &[2, 7]);
        assert!(reorder_local_to_global(&[1, 2, 3], &[1, 2, 4], &[1, 1, 1]).is_err());
    }

    #[test]
    fn offsets() {
        assert_eq!(face_interior_offset(&[1, 3, 1]).unwrap(), 3);
        assert_eq!(face_interior_offset(&[1, 2, 2]).unwrap(), 4);
        assert_eq!(face_interior_offset(&[1, 1, 1]).unwrap(), 0);
        assert!(face_interior_offset(&[0, 2, 1]).is_err());
        for m in [[1usize, 3, 1], [2, 1, 2], [1, 1, 3]] {
            let (m2, m3) = (m[1], m[2]);
            assert_eq!(face_interior_offset(&m).unwrap(), (m2 + m3 - 2) * (m2 + m3 - 1) / 2 + m3 - 1);
        }
    }
}
