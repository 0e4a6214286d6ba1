use super::{build_frame_space, interior_offset, DofBlock, DofMap, Slot, SpaceKind};
use crate::error::{invalid, FemError, Result};
use crate::frames::nedelec_frame;
use crate::lattice::{binomial, rank_of};
use crate::mesh::{EntityKind, Mesh, Topology};

/// Second-kind Nédélec space.
///
/// Blocks: `k+1` tangential DoFs per edge along the sorted edge; in 3D,
/// `k²−1` per face (in-face normals on the face's edges `{a,b}, {a,c}, {b,c}`,
/// then two tangents per face-interior point); then the cell-local DoFs.
pub fn build_nedelec_dofmap(mesh: &Mesh, topo: &Topology, k: usize) -> Result<DofMap> {
    if k == 0 {
        return invalid("Nedelec needs k >= 1");
    }
    let n = mesh.dim();
    let per_edge = k + 1;
    let per_face = if n == 3 { k * k - 1 } else { 0 };
    let edge_total = topo.num_edges() * per_edge;
    let face_total = if n == 3 { topo.num_faces() * per_face } else { 0 };
    let shared = edge_total + face_total;
    let local = n * binomial(n + k, k)
        - (n + 1) * n / 2 * per_edge
        - if n == 3 { 4 * per_face } else { 0 };
    let mut blocks = vec![DofBlock { name: "edge".into(), offset: 0, len: edge_total }];
    if n == 3 {
        blocks.push(DofBlock { name: "face".into(), offset: edge_total, len: face_total });
    }
    build_frame_space(
        SpaceKind::Nedelec,
        mesh,
        topo,
        k,
        shared,
        local,
        blocks,
        |c, f| nedelec_frame(mesh, topo, c, f),
        |c, cp, d, owner| {
            let cell = mesh.cell(c);
            let local_of = |g: usize| cell.iter().position(|&v| v == g).expect("vertex of cell");
            match owner.kind {
                EntityKind::Edge => {
                    let [_, b] = topo.edge(owner.id);
                    Ok(Slot::Global(owner.id * per_edge + cp.alpha[local_of(b)]))
                }
                EntityKind::Face => {
                    let base = edge_total + owner.id * per_face;
                    let [a, b, c3] = topo.face(owner.id);
                    if cp.support.len() == 2 {
                        let ev = topo.entity_vertices(cp.entity);
                        let pos = match (ev[0], ev[1]) {
                            (p, q) if p == a && q == b => 0,
                            (p, q) if p == a && q == c3 => 1,
                            (p, q) if p == b && q == c3 => 2,
                            _ => return Err(FemError::Structure("edge not on its face".into())),
                        };
                        let m1 = cp.alpha[local_of(ev[1])];
                        Ok(Slot::Global(base + pos * (k - 1) + m1 - 1))
                    } else {
                        Ok(Slot::Global(base + 3 * (k - 1) + 2 * interior_offset(&cp.m)? + d))
                    }
                }
                EntityKind::Cell => {
                    let r = rank_of(&cp.alpha);
                    if cp.support.len() == n {
                        let opp = (0..=n).find(|i| !cp.support.contains(i)).expect("facet point");
                        Ok(Slot::Local([0, opp, r, d]))
                    } else {
                        Ok(Slot::Local([1, r, d, 0]))
                    }
                }
                EntityKind::Vertex => Err(FemError::Structure("vertex-owned Nedelec DoF".into())),
            }
        },
    )
}
