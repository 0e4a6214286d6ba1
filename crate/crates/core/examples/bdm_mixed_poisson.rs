//! Mixed Poisson with BDM_k x P_{k-1} on refined cubes.
//!
//! cargo run --release --example bdm_mixed_poisson -- 2

use tnfem::experiments::{poisson_mixed_level, StudyOptions};

fn main() -> tnfem::Result<()> {
    let k = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1);
    let opts = StudyOptions::default();
    for n in [1, 2, 4] {
        let l = poisson_mixed_level(k, n, &opts)?;
        println!("N={n} gdof {:>6}  |u-uh| {:.4e}  |p-ph| {:.4e}  [{}]", l.gdof, l.err_u, l.err_p, l.report);
    }
    Ok(())
}
