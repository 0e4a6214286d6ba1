//! curl curl E - E = J with n x E = 0, second-kind Nedelec elements.
//!
//! cargo run --release --example nedelec_maxwell -- 2

use tnfem::experiments::{cmd_maxwell, StudyOptions};

fn main() -> tnfem::Result<()> {
    let k = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1);
    let t = cmd_maxwell(k, &[1, 2, 4], &StudyOptions::default())?;
    print!("{}", t.to_csv());
    Ok(())
}
