use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tnfem::assembly::{
    apply_essential_bc, assemble_boundary_flux, assemble_curlcurl, assemble_div, assemble_load, assemble_vector_mass,
    curl_error, div_error, l2_error, CsrMatrix, DgSpace, DiscreteField,
};
use tnfem::dofs::{build_bdm_dofmap, build_lagrange_dofmap, build_nedelec_dofmap};
use tnfem::mesh::{structured_cube, Point, Topology};
use tnfem::quadrature::{facet_rule, simplex_rule};
use tnfem::solver::check_symmetric;

fn quad_form(a: &CsrMatrix, u: &[f64]) -> f64 {
    a.matvec(u).iter().zip(u).map(|(x, y)| x * y).sum()
}

#[test]
fn mass_of_constant_field_is_volume() {
    for dim in [2, 3] {
        let mesh = structured_cube(2, dim).unwrap();
        let topo = Topology::build(&mesh).unwrap();
        for k in 1..=2 {
            let q = simplex_rule(dim, 2 * k).unwrap();
            let c = Point::new(1.0, -2.0, if dim == 3 { 0.5 } else { 0.0 });
            for s in [
                build_lagrange_dofmap(&mesh, &topo, k).unwrap(),
                build_bdm_dofmap(&mesh, &topo, k).unwrap(),
                build_nedelec_dofmap(&mesh, &topo, k).unwrap(),
            ] {
                let m = assemble_vector_mass(&mesh, &s, &q).unwrap();
                check_symmetric(&m, 1e-12).unwrap();
                let u = s.interpolate(|_| c);
                assert!((quad_form(&m, &u) - c.norm_squared()).abs() < 1e-12, "{} k={k} dim={dim}", s.kind());
            }
        }
    }
}

#[test]
fn mass_is_positive_definite() {
    let mesh = structured_cube(1, 3).unwrap();
    let topo = Topology::build(&mesh).unwrap();
    let s = build_nedelec_dofmap(&mesh, &topo, 2).unwrap();
    let m = assemble_vector_mass(&mesh, &s, &simplex_rule(3, 4).unwrap()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..20 {
        let u: Vec<f64> = (0..s.gdof()).map(|_| rng.gen_range(-1.0..1.0)).collect();
        assert!(quad_form(&m, &u) > 0.0);
    }
    assert!(m.diagonal().iter().all(|&d| d > 0.0));
}

/// `Σ_r B_ra · 1 = −∫ div φ_a = −∫_∂Ω φ_a · n`.
#[test]
fn divergence_theorem_on_rows_of_b() {
    for dim in [2, 3] {
        let mesh = structured_cube(2, dim).unwrap();
        let topo = Topology::build(&mesh).unwrap();
        for k in 1..=3 {
            let v = build_bdm_dofmap(&mesh, &topo, k).unwrap();
            let p = DgSpace::new(&mesh, 0);
            let b = assemble_div(&mesh, &v, &p, &simplex_rule(dim, 2 * k).unwrap()).unwrap();
            let ones = vec![1.0; p.gdof()];
            let bt1 = b.transpose().matvec(&ones);
            let flux = assemble_boundary_flux(&mesh, &topo, &v, |_| 1.0, &facet_rule(dim, k).unwrap()).unwrap();
            for (x, y) in bt1.iter().zip(&flux) {
                assert!((x + y).abs() < 1e-12, "dim {dim} k {k}");
            }
        }
    }
}

#[test]
fn solenoidal_interpolant_is_in_kernel_of_b() {
    let mesh = structured_cube(2, 3).unwrap();
    let topo = Topology::build(&mesh).unwrap();
    for k in 1..=3 {
        let v = build_bdm_dofmap(&mesh, &topo, k).unwrap();
        let p = DgSpace::new(&mesh, k - 1);
        let b = assemble_div(&mesh, &v, &p, &simplex_rule(3, 2 * k).unwrap()).unwrap();
        let u = v.interpolate(|x| Point::new(x.y * x.z, x.z - x.x, x.x * x.y));
        let bu = b.matvec(&u);
        assert!(bu.iter().all(|x| x.abs() < 1e-12), "k={k}");
    }
}

#[test]
fn gradients_are_in_kernel_of_curlcurl() {
    let mesh = structured_cube(2, 3).unwrap();
    let topo = Topology::build(&mesh).unwrap();
    for k in 1..=3 {
        let v = build_nedelec_dofmap(&mesh, &topo, k).unwrap();
        let a = assemble_curlcurl(&mesh, &v, &simplex_rule(3, 2 * k).unwrap()).unwrap();
        check_symmetric(&a, 1e-12).unwrap();
        // ∇(x^k y + z^{k+1}), a degree-k field
        let ki = k as i32;
        let kf = k as f64;
        let u = v.interpolate(|x| Point::new(kf * x.x.powi(ki - 1) * x.y, x.x.powi(ki), (kf + 1.0) * x.z.powi(ki)));
        let au = a.matvec(&u);
        let scale = a.norm_inf() * u.iter().map(|x| x.abs()).fold(0.0, f64::max);
        assert!(au.iter().all(|x| x.abs() < 1e-12 * scale), "k={k}");
    }
}

/// Degree-k fields are reproduced exactly by every space.
#[test]
fn patch_reproduction() {
    let mesh = structured_cube(2, 3).unwrap();
    let topo = Topology::build(&mesh).unwrap();
    for k in 1..=3 {
        let f = move |x: &Point| Point::new(x.x.powi(k as i32) + x.y, x.y * x.z.powi(k as i32 - 1), 2.0 - x.z.powi(k as i32));
        let curl = |x: &Point| {
            let ki = k as i32;
            let kf = k as f64;
            let dfy_dz = if k >= 2 { (kf - 1.0) * x.y * x.z.powi(ki - 2) } else { 0.0 };
            Point::new(-dfy_dz, 0.0, -1.0)
        };
        let div = |x: &Point| {
            let ki = k as i32;
            let kf = k as f64;
            kf * x.x.powi(ki - 1) + x.z.powi(ki - 1) - kf * x.z.powi(ki - 1)
        };
        let q = simplex_rule(3, 2 * k + 2).unwrap();
        for s in [
            build_lagrange_dofmap(&mesh, &topo, k).unwrap(),
            build_bdm_dofmap(&mesh, &topo, k).unwrap(),
            build_nedelec_dofmap(&mesh, &topo, k).unwrap(),
        ] {
            let u = s.interpolate(f);
            assert!(l2_error(&mesh, &s, &u, f, &q).unwrap() < 1e-9, "{} k={k}", s.kind());
            assert!(curl_error(&mesh, &s, &u, curl, &q).unwrap() < 1e-9, "{} k={k}", s.kind());
            assert!(div_error(&mesh, &s, &u, div, &q).unwrap() < 1e-9, "{} k={k}", s.kind());
            let field = DiscreteField::new(&s, &u).unwrap();
            let lam = [0.1, 0.2, 0.3, 0.4];
            let x = tnfem::assembly::map_point(&mesh, 5, &lam);
            assert!((field.value(5, &lam) - f(&x)).norm() < 1e-12);
        }
    }
}

#[test]
fn load_of_constant_matches_mass_times_interpolant() {
    let mesh = structured_cube(2, 2).unwrap();
    let topo = Topology::build(&mesh).unwrap();
    let s = build_bdm_dofmap(&mesh, &topo, 2).unwrap();
    let q = simplex_rule(2, 4).unwrap();
    let c = Point::new(0.3, -1.2, 0.0);
    let f = assemble_load(&mesh, &s, |_| c, &q).unwrap();
    let mu = assemble_vector_mass(&mesh, &s, &q).unwrap().matvec(&s.interpolate(|_| c));
    for (a, b) in f.iter().zip(&mu) {
        assert!((a - b).abs() < 1e-13);
    }
}

#[test]
fn essential_bc_keeps_symmetry() {
    let mesh = structured_cube(2, 3).unwrap();
    let topo = Topology::build(&mesh).unwrap();
    let s = build_nedelec_dofmap(&mesh, &topo, 1).unwrap();
    let a = assemble_curlcurl(&mesh, &s, &simplex_rule(3, 2).unwrap()).unwrap();
    let rhs = vec![1.0; s.gdof()];
    let g: Vec<f64> = (0..s.gdof()).map(|i| i as f64).collect();
    let (a2, r2) = apply_essential_bc(&a, &rhs, s.boundary_mask(), &g);
    check_symmetric(&a2, 1e-14).unwrap();
    for i in 0..s.gdof() {
        if s.boundary_mask()[i] {
            assert_eq!(a2.get(i, i), 1.0);
            assert_eq!(r2[i], g[i]);
            assert_eq!(a2.row(i).count(), 1);
        }
    }
}

#[test]
fn csr_from_triplets_sums_duplicates() {
    let a = CsrMatrix::from_triplets(2, 3, vec![(0, 1, 1.0), (1, 0, 2.0), (0, 1, 0.5), (1, 2, -1.0)]);
    assert_eq!(a.nnz(), 3);
    assert_eq!(a.get(0, 1), 1.5);
    assert_eq!(a.matvec(&[1.0, 1.0, 1.0]), vec![1.5, 1.0]);
    assert_eq!(a.transpose().to_dense(), vec![0.0, 2.0, 1.5, 0.0, 0.0, -1.0]);
}
