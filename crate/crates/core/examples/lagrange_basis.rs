//! Tabulate the degree-3 Lagrange basis on a triangle at its own lattice.

use tnfem::basis::tabulate;
use tnfem::lattice::SimplicialLattice;

fn main() -> tnfem::Result<()> {
    let k = 3;
    let lat = SimplicialLattice::enumerate(2, k);
    let pts = lat.barycentric_points()?;
    let t = tabulate(k, 2, &pts);
    for i in 0..t.num_basis() {
        let row: Vec<String> = (0..t.num_points()).map(|q| format!("{:>2}", t.value(i, q).round() as i64)).collect();
        println!("{:?} {}", lat.get(i).entries(), row.join(" "));
    }
    let mid = [[1.0 / 3.0; 3]];
    let t = tabulate(k, 2, &mid);
    let s: f64 = (0..t.num_basis()).map(|i| t.value(i, 0)).sum();
    println!("sum at centroid: {s}");
    Ok(())
}
