//! Compare the production rule with Grundmann-Moller on the tetrahedron.

use tnfem::quadrature::{grundmann_moller, moment, simplex_rule};

fn main() -> tnfem::Result<()> {
    let alpha = [1, 2, 0, 3];
    println!("exact moment of λ^{alpha:?}: {:.15e}", moment(&alpha));
    for d in [2, 4, 6, 8, 10] {
        let p = simplex_rule(3, d)?;
        let g = grundmann_moller(3, d);
        let f = |l: &[f64]| l[0] * l[1] * l[1] * l[3].powi(3);
        println!(
            "degree {d:>2}: product {:>4} pts Σ|w| {:.2} -> {:.3e} | GM {:>4} pts Σ|w| {:>7.2} -> {:.3e}",
            p.len(),
            p.abs_weight_sum(),
            p.integrate(f) - moment(&alpha),
            g.len(),
            g.abs_weight_sum(),
            g.integrate(f) - moment(&alpha),
        );
    }
    Ok(())
}
