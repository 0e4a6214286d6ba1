//! Enumerate T^3_2 and check the closed-form rank against the position.

use tnfem::lattice::{rank_of, SimplicialLattice};

fn main() {
    let l = SimplicialLattice::enumerate(3, 2);
    println!("{} points in T^3_2", l.len());
    for (i, a) in l.iter().enumerate() {
        println!("{i:>2}  {:?}  rank {}", a.entries(), rank_of(a));
    }
}
