//! Nodal interpolation errors of a smooth field in all three spaces.

use tnfem::dofs::SpaceKind;
use tnfem::experiments::{cmd_interp, StudyOptions};

fn main() -> tnfem::Result<()> {
    let opts = StudyOptions::default();
    for kind in [SpaceKind::Lagrange, SpaceKind::Bdm, SpaceKind::Nedelec] {
        for k in 1..=3 {
            let t = cmd_interp(kind, k, 2, &[2, 4, 8, 16], &opts)?;
            println!("{kind} k={k}: rate {:.3}", t.last_rate(0).unwrap_or(f64::NAN));
        }
    }
    Ok(())
}
