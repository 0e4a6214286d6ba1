//! Global numbering of the three spaces on a two-triangle mesh, and the
//! face-interior index of a rotated face.

use tnfem::dofs::{build_bdm_dofmap, build_lagrange_dofmap, build_nedelec_dofmap, face_point_index};
use tnfem::mesh::{parse_mesh, Topology};

fn main() -> tnfem::Result<()> {
    let mesh = parse_mesh("2 4 2\n0 0\n1 0\n1 1\n0 1\n0 1 2\n0 2 3\n")?;
    let topo = Topology::build(&mesh)?;
    let k = 2;
    for s in [build_lagrange_dofmap(&mesh, &topo, k)?, build_bdm_dofmap(&mesh, &topo, k)?, build_nedelec_dofmap(&mesh, &topo, k)?] {
        println!("{} k={k}: gdof {}", s.kind(), s.gdof());
        for b in s.blocks() {
            println!("  {:<14} offset {:>3} len {:>3}", b.name, b.offset, b.len);
        }
        for c in 0..mesh.num_cells() {
            println!("  cell {c}: {:?}", s.cell_dofs(c));
        }
    }
    // face [17, 0, 21] seen from a cell, stored globally as [0, 17, 21]
    let g = face_point_index(1240, &[17, 0, 21], &[0, 17, 21], &[3, 1, 1])?;
    println!("face point m = [3,1,1] -> {g}");
    Ok(())
}
