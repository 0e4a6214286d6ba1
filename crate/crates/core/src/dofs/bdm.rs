use smallvec::SmallVec;

use super::{build_frame_space, reorder_local_to_global, DofBlock, DofMap, Slot, SpaceKind};
use crate::error::{invalid, Result};
use crate::frames::bdm_frame;
use crate::lattice::{binomial, rank_of};
use crate::mesh::{EntityKind, Mesh, Topology};

/// BDM space: one normal DoF per point of each closed facet lattice, ranked on
/// the sorted global facet, then the div-bubble DoFs of each cell.
pub fn build_bdm_dofmap(mesh: &Mesh, topo: &Topology, k: usize) -> Result<DofMap> {
    if k == 0 {
        return invalid("BDM needs k >= 1");
    }
    let n = mesh.dim();
    let per_facet = binomial(k + n - 1, n - 1);
    let shared = topo.num_facets() * per_facet;
    let local = n * binomial(n + k, k) - (n + 1) * per_facet;
    let blocks = vec![DofBlock { name: "facet-normal".into(), offset: 0, len: shared }];
    let facet_kind = topo.facet_kind();
    build_frame_space(
        SpaceKind::Bdm,
        mesh,
        topo,
        k,
        shared,
        local,
        blocks,
        |c, f| bdm_frame(mesh, topo, c, f),
        |c, cp, d, owner| {
            if owner.kind == EntityKind::Cell {
                return Ok(Slot::Local([cp_rank(cp), d, 0, 0]));
            }
            debug_assert_eq!(owner.kind, facet_kind);
            let cell = mesh.cell(c);
            // the facet's local vertices are all but the one it is opposite to
            let opp = topo.cell_facets(c).iter().position(|&f| f == owner.id).expect("facet of cell");
            let lv: SmallVec<[usize; 3]> = (0..=n).filter(|&i| i != opp).collect();
            let lg: SmallVec<[usize; 3]> = lv.iter().map(|&i| cell[i]).collect();
            let ml: SmallVec<[usize; 3]> = lv.iter().map(|&i| cp.alpha[i]).collect();
            let m = reorder_local_to_global(&lg, &topo.facet_vertices(owner.id), &ml)?;
            Ok(Slot::Global(owner.id * per_facet + rank_of(&m)))
        },
    )
}

fn cp_rank(cp: &super::CellPoint) -> usize {
    rank_of(&cp.alpha)
}
