//! Build the Kuhn-split unit cube and print its entity counts.

use tnfem::mesh::{cell_geometry, structured_cube, Topology};

fn main() -> tnfem::Result<()> {
    let n = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(2);
    let mesh = structured_cube(n, 3)?;
    let topo = Topology::build(&mesh)?;
    let bfaces = (0..topo.num_faces()).filter(|&f| topo.is_boundary_face(f)).count();
    println!("nodes {} edges {} faces {} cells {}", mesh.num_nodes(), topo.num_edges(), topo.num_faces(), mesh.num_cells());
    println!("boundary faces {bfaces}, h = {:.4}", mesh.max_diameter());
    println!("cell 0 = {:?}, edges {:?}, faces {:?}", mesh.cell(0), topo.cell_edges(0), topo.cell_faces(0));
    let g = cell_geometry(&mesh, 0)?;
    println!("volume {:.6}", g.measure);
    for (i, n) in g.outward_normals.iter().enumerate() {
        println!("  outward normal opposite vertex {i}: [{:.3}, {:.3}, {:.3}]", n.x, n.y, n.z);
    }
    Ok(())
}
