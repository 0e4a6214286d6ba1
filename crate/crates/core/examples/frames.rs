//! Print the BDM and second-kind Nedelec frames attached to the
//! sub-simplices of one tetrahedron.

use tnfem::frames::{bdm_frame, nedelec_frame};
use tnfem::lattice::local_subsimplices;
use tnfem::mesh::{structured_cube, Topology};

fn show(v: &tnfem::mesh::Point) -> String {
    format!("[{:+.3}, {:+.3}, {:+.3}]", v.x, v.y, v.z)
}

fn main() -> tnfem::Result<()> {
    let mesh = structured_cube(1, 3)?;
    let topo = Topology::build(&mesh)?;
    for l in 0..=3 {
        let f = &local_subsimplices(3, l)[0];
        println!("f = {:?}", f.vertices());
        let b = bdm_frame(&mesh, &topo, 0, f.vertices())?;
        let e = nedelec_frame(&mesh, &topo, 0, f.vertices())?;
        for i in 0..3 {
            println!("  bdm {} dual {}   ned {} dual {}", show(&b.directions[i]), show(&b.duals[i]), show(&e.directions[i]), show(&e.duals[i]));
        }
    }
    Ok(())
}
