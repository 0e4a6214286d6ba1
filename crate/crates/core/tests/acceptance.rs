//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.
//!
//! Every reference value is produced here, independently of the library code
//! under test (brute-force enumeration, closed-form moments, finite
//! differences, hand-rolled geometry).

use std::collections::{HashMap, HashSet};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tnfem::assembly::{assemble_curlcurl, CsrMatrix};
use tnfem::basis::{eval_lagrange, grad_lagrange, tabulate};
use tnfem::dofs::{build_bdm_dofmap, build_cell2ipoint, build_nedelec_dofmap, face_point_index, reorder_local_to_global, DofMap, SpaceKind};
use tnfem::experiments::{cmd_dims, cmd_maxwell, cmd_poisson_mixed, StudyOptions};
use tnfem::frames::{bdm_frame, nedelec_frame, Frame};
use tnfem::lattice::SimplicialLattice;
use tnfem::mesh::{cell_geometry, structured_cube, Mesh, Point, Topology};
use tnfem::quadrature::simplex_rule;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn fact(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

fn choose(n: usize, k: usize) -> usize {
    if k > n {
        0
    } else {
        (fact(n) / (fact(k) * fact(n - k))).round() as usize
    }
}

/// Brute force: all (α_0..α_n) with |α| = k by counting in base k+1.
fn brute_lattice(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let total = (k + 1).pow(n as u32 + 1);
    for code in 0..total {
        let mut c = code;
        let a: Vec<usize> = (0..=n)
            .map(|_| {
                let d = c % (k + 1);
                c /= k + 1;
                d
            })
            .collect();
        if a.iter().sum::<usize>() == k {
            out.push(a);
        }
    }
    out
}

fn reference_cell(dim: usize) -> Mesh {
    let mut nodes = vec![Point::zeros()];
    for i in 0..dim {
        let mut p = Point::zeros();
        p[i] = 1.0;
        nodes.push(p);
    }
    Mesh::new(dim, nodes, (0..=dim).collect()).unwrap()
}

// 1 ───────────────────────────────────────────────────────────────────────────
fn lattice_bijectivity() -> Outcome {
    let mut checked = 0;
    for n in 0..=3 {
        for k in 0..=6 {
            let l = SimplicialLattice::enumerate(n, k);
            let want = choose(n + k, k);
            if l.len() != want {
                return Err(format!("|T^{n}_{k}| = {} != {want}", l.len()));
            }
            for (i, a) in l.iter().enumerate() {
                let r = l.rank(a).map_err(|e| e.to_string())?;
                if r != i {
                    return Err(format!("rank({a:?}) = {r}, position {i}"));
                }
            }
            let brute: HashSet<Vec<usize>> = brute_lattice(n, k).into_iter().collect();
            let got: HashSet<Vec<usize>> = l.iter().map(|a| a.to_vec()).collect();
            if brute != got || brute.len() != want {
                return Err(format!("T^{n}_{k} differs from brute-force enumeration"));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} lattices, rank∘enumerate = id"))
}

// 2 ───────────────────────────────────────────────────────────────────────────
fn random_bary(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let mut l: Vec<f64> = (0..=n).map(|_| -rng.gen::<f64>().max(1e-3).ln()).collect();
    let s: f64 = l.iter().sum();
    l.iter_mut().for_each(|x| *x /= s);
    l
}

fn lagrange_properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let (mut kron, mut pou, mut gsum, mut repro, mut fd) = (0f64, 0f64, 0f64, 0f64, 0f64);
    for n in [2, 3] {
        let mesh = reference_cell(n);
        let gl = cell_geometry(&mesh, 0).unwrap().grad_lambda;
        // reference map: λ_0 = 1 − Σx, λ_i = x_i
        let bary = |x: &[f64]| {
            let mut l = vec![1.0 - x.iter().sum::<f64>()];
            l.extend_from_slice(x);
            l
        };
        for k in 1..=4 {
            let lat = SimplicialLattice::enumerate(n, k);
            let pts: Vec<Vec<f64>> = lat.iter().map(|a| a.iter().map(|&x| x as f64 / k as f64).collect()).collect();
            let tab = tabulate(k, n, &pts);
            for i in 0..lat.len() {
                for q in 0..lat.len() {
                    kron = kron.max((tab.value(i, q) - if i == q { 1.0 } else { 0.0 }).abs());
                }
            }
            // random polynomial of degree ≤ k in physical coordinates
            let monos: Vec<Vec<usize>> = brute_lattice(n, k).into_iter().map(|a| a[1..].to_vec()).collect();
            let mut coef: Vec<f64> = Vec::new();
            let mut all_monos: Vec<Vec<usize>> = Vec::new();
            for d in 0..=k {
                for m in brute_lattice(n, d) {
                    all_monos.push(m[1..].to_vec());
                    coef.push(rng.gen_range(-1.0..1.0));
                }
            }
            let _ = monos;
            let poly = |x: &[f64]| -> f64 {
                all_monos
                    .iter()
                    .zip(&coef)
                    .map(|(m, c)| c * m.iter().zip(x).map(|(&e, &xi)| xi.powi(e as i32)).product::<f64>())
                    .sum()
            };
            for _ in 0..100 {
                let l = random_bary(&mut rng, n);
                let x = &l[1..];
                let mut s = 0.0;
                let mut g = Point::zeros();
                let mut interp = 0.0;
                for (a, p) in lat.iter().zip(&pts) {
                    let phi = eval_lagrange(a, k, &l);
                    s += phi;
                    g += grad_lagrange(a, k, &l, &gl);
                    interp += poly(&p[1..]) * phi;
                    // central differences in physical coordinates
                    let grad = grad_lagrange(a, k, &l, &gl);
                    for d in 0..n {
                        let h = 1e-6;
                        let mut xp = x.to_vec();
                        let mut xm = x.to_vec();
                        xp[d] += h;
                        xm[d] -= h;
                        let num = (eval_lagrange(a, k, &bary(&xp)) - eval_lagrange(a, k, &bary(&xm))) / (2.0 * h);
                        fd = fd.max((num - grad[d]).abs() / grad[d].abs().max(1.0));
                    }
                }
                pou = pou.max((s - 1.0).abs());
                gsum = gsum.max(g.norm());
                let exact = poly(x);
                repro = repro.max((interp - exact).abs() / exact.abs().max(1.0));
            }
        }
    }
    let detail = format!(
        "kronecker {kron:.1e}, pou {pou:.1e}, Σ∇φ {gsum:.1e}, reproduction {repro:.1e}, fd {fd:.1e}"
    );
    if kron <= 1e-12 && pou <= 1e-12 && gsum <= 1e-12 && repro <= 1e-10 && fd <= 1e-6 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

// 3 ───────────────────────────────────────────────────────────────────────────
fn worked_example() -> Outcome {
    let lat = SimplicialLattice::enumerate(3, 5);
    let a39 = lat.get(39).to_vec();
    let a43 = lat.get(43).to_vec();
    if a39 != [0, 3, 1, 1] {
        return Err(format!("local DoF 39 has multi-index {a39:?}"));
    }
    let local_face = [17, 0, 21];
    let global_face = [0, 17, 21];
    let m39 = reorder_local_to_global(&local_face, &global_face, &a39[1..]).map_err(|e| e.to_string())?;
    let m43 = reorder_local_to_global(&local_face, &global_face, &a43[1..]).map_err(|e| e.to_string())?;
    if m39[..] != [1, 3, 1] || m43[..] != [1, 2, 2] {
        return Err(format!("reordered m: {m39:?}, {m43:?}"));
    }
    let g39 = face_point_index(1240, &local_face, &global_face, &a39[1..]).map_err(|e| e.to_string())?;
    let g43 = face_point_index(1240, &local_face, &global_face, &a43[1..]).map_err(|e| e.to_string())?;
    if (g39, g43) != (1243, 1244) {
        return Err(format!("indices {g39}, {g43}"));
    }
    // the same numbers through the full numbering of a mesh with cell [5,17,0,21]
    let mut nodes = vec![Point::new(5.0, 5.0, 5.0); 22];
    nodes[5] = Point::new(0.0, 0.0, 0.0);
    nodes[17] = Point::new(1.0, 0.0, 0.0);
    nodes[0] = Point::new(0.0, 1.0, 0.0);
    nodes[21] = Point::new(0.0, 0.0, 1.0);
    let mesh = Mesh::new(3, nodes, vec![5, 17, 0, 21]).map_err(|e| e.to_string())?;
    let topo = Topology::build(&mesh).map_err(|e| e.to_string())?;
    let pm = build_cell2ipoint(&mesh, &topo, 5).map_err(|e| e.to_string())?;
    let f = topo.cell_faces(0)[0];
    let base = mesh.num_nodes() + 4 * topo.num_edges() + 6 * f;
    let (c39, c43) = (pm.cell_points(0)[39] - base, pm.cell_points(0)[43] - base);
    if (c39, c43) != (3, 4) {
        return Err(format!("mesh numbering gives offsets {c39}, {c43}"));
    }
    Ok(format!("m=[1,3,1] -> 1243, m=[1,2,2] -> 1244; mesh path offsets {c39}, {c43}"))
}

// 4 ───────────────────────────────────────────────────────────────────────────
fn dimension_formulas() -> Outcome {
    let mut cases = 0;
    for dim in [2, 3] {
        let mut meshes = vec![reference_cell(dim)];
        meshes.push(structured_cube(1, dim).unwrap());
        meshes.push(structured_cube(2, dim).unwrap());
        for mesh in &meshes {
            let topo = Topology::build(mesh).unwrap();
            for k in 1..=4 {
                for kind in [SpaceKind::Bdm, SpaceKind::Nedelec] {
                    let rep = cmd_dims(kind, k, mesh).map_err(|e| e.to_string())?;
                    let (ne, nf, nc) = (topo.num_edges(), topo.num_faces(), mesh.num_cells());
                    // independent closed forms
                    let want = match (kind, dim) {
                        (_, 2) => (k + 1) * ne + (k * k - 1) * nc,
                        (SpaceKind::Bdm, _) => (k + 1) * (k + 2) / 2 * nf + (3 * choose(k + 3, 3) - 2 * (k + 1) * (k + 2)) * nc,
                        _ => (k + 1) * ne + (k * k - 1) * nf + (2 * (k - 1) * (k.max(2) - 2) + (k - 1) * (k.max(2) - 2) * (k.max(3) - 3) / 2) * nc,
                    };
                    let ldof = dim * choose(dim + k, k);
                    if rep.gdof != want || rep.cell_dof_sum != rep.multiplicity_sum || rep.cell_dof_sum != ldof * nc {
                        return Err(format!("{kind} k={k} dim={dim}: gdof {} vs {want}, handshake {}/{}", rep.gdof, rep.cell_dof_sum, rep.multiplicity_sum));
                    }
                    if rep.blocks.iter().map(|b| b.1).sum::<usize>() != rep.gdof {
                        return Err(format!("{kind} k={k}: blocks do not add up"));
                    }
                    if nc == 1 && rep.gdof != ldof {
                        return Err(format!("{kind} k={k} single cell: {} != {ldof}", rep.gdof));
                    }
                    cases += 1;
                }
            }
        }
    }
    let tet = reference_cell(3);
    let ned: Vec<usize> = (1..=3).map(|k| cmd_dims(SpaceKind::Nedelec, k, &tet).unwrap().gdof).collect();
    if ned != [12, 30, 60] {
        return Err(format!("Nedelec single tet {ned:?}"));
    }
    Ok(format!("{cases} space/mesh/degree cases; Nedelec tet 12/30/60"))
}

// 5 ───────────────────────────────────────────────────────────────────────────
/// Per global DoF, the vector value of the basis function restricted to cell
/// `c` at barycentric point `lam`.
fn cell_basis_values(space: &DofMap, lat: &SimplicialLattice, c: usize, lam: &[f64]) -> HashMap<usize, Point> {
    let dim = space.dim();
    let mut out: HashMap<usize, Point> = HashMap::new();
    for (j, (&g, e)) in space.cell_dofs(c).iter().zip(space.cell_duals(c)).enumerate() {
        let phi = eval_lagrange(lat.get(j / dim), space.degree(), lam);
        *out.entry(g).or_insert_with(Point::zeros) += e * phi;
    }
    out
}

fn unit_normal(mesh: &Mesh, v: &[usize]) -> Point {
    let a = mesh.node(v[1]) - mesh.node(v[0]);
    let b = mesh.node(v[2]) - mesh.node(v[0]);
    a.cross(&b).normalize()
}

fn conformity() -> Outcome {
    let mesh = structured_cube(2, 3).unwrap();
    let topo = Topology::build(&mesh).unwrap();
    let mut worst = [0f64; 2];
    for k in 1..=3 {
        let quad = simplex_rule(2, 2 * k).unwrap();
        let lat = SimplicialLattice::enumerate(3, k);
        for (s, space) in [build_bdm_dofmap(&mesh, &topo, k), build_nedelec_dofmap(&mesh, &topo, k)].into_iter().enumerate() {
            let space = space.map_err(|e| e.to_string())?;
            for f in 0..topo.num_faces() {
                let cells = topo.facet_cells(f);
                if cells.len() != 2 {
                    continue;
                }
                let fv = topo.face(f);
                let n = unit_normal(&mesh, &fv);
                for mu in quad.points() {
                    let side = |c: usize| {
                        let cell = mesh.cell(c);
                        let mut lam = [0.0; 4];
                        for (j, v) in fv.iter().enumerate() {
                            lam[cell.iter().position(|x| x == v).unwrap()] = mu[j];
                        }
                        cell_basis_values(&space, &lat, c, &lam)
                    };
                    let a = side(cells[0].0);
                    let b = side(cells[1].0);
                    let keys: HashSet<usize> = a.keys().chain(b.keys()).copied().collect();
                    for g in keys {
                        let d = a.get(&g).copied().unwrap_or_else(Point::zeros) - b.get(&g).copied().unwrap_or_else(Point::zeros);
                        let jump = if s == 0 { d.dot(&n).abs() } else { (d - n * d.dot(&n)).norm() };
                        worst[s] = worst[s].max(jump);
                    }
                }
            }
        }
    }
    let detail = format!("max BDM normal jump {:.1e}, max Nedelec tangential jump {:.1e}", worst[0], worst[1]);
    if worst[0] <= 1e-11 && worst[1] <= 1e-11 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

// 6 ───────────────────────────────────────────────────────────────────────────
/// Unit vector in span(f ∪ {opp}) orthogonal to f, toward `opp` (Gram–Schmidt).
fn in_face_normal(mesh: &Mesh, f: &[usize], opp: usize) -> Point {
    let mut fs = f.to_vec();
    fs.sort_unstable();
    let x0 = mesh.node(fs[0]);
    let mut basis: Vec<Point> = Vec::new();
    for &v in &fs[1..] {
        let mut w = mesh.node(v) - x0;
        for b in &basis {
            w -= b * b.dot(&w);
        }
        basis.push(w.normalize());
    }
    let mut w = mesh.node(opp) - x0;
    for b in &basis {
        w -= b * b.dot(&w);
    }
    w.normalize()
}

fn facet_normal(mesh: &Mesh, cell: &[usize], i: usize) -> Point {
    let mut v: Vec<usize> = cell.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, &x)| x).collect();
    v.sort_unstable();
    if v.len() == 2 {
        let t = (mesh.node(v[1]) - mesh.node(v[0])).normalize();
        Point::new(t.y, -t.x, 0.0)
    } else {
        unit_normal(mesh, &v)
    }
}

fn frame_checks(mesh: &Mesh, fr: &Frame, f: &[usize], c: usize, nedelec: bool, gram: &mut f64, closed: &mut f64) {
    let n = mesh.dim();
    let cell = mesh.cell(c);
    for i in 0..n {
        for j in 0..n {
            let want = if i == j { 1.0 } else { 0.0 };
            *gram = gram.max((fr.duals[i].dot(&fr.directions[j]) - want).abs());
        }
    }
    let l = f.len() - 1;
    if l == n {
        return;
    }
    let comp: Vec<usize> = (0..=n).filter(|i| !f.contains(i)).collect();
    let ntan = if nedelec && l == 0 { 0 } else { l };
    // tangential directions are self-dual
    for t in 0..ntan {
        *closed = closed.max((fr.duals[t] - fr.directions[t]).norm());
    }
    let gf: Vec<usize> = f.iter().map(|&i| cell[i]).collect();
    for (m, &i) in comp.iter().enumerate() {
        let d = ntan + m;
        let nf = facet_normal(mesh, cell, i);
        let want = if nedelec {
            // n_{F_i} / (n_{F_i} · e), e the in-entity normal or edge tangent
            nf / nf.dot(&fr.directions[d])
        } else {
            let nn = in_face_normal(mesh, &gf, cell[i]);
            nn / nn.dot(&nf)
        };
        *closed = closed.max((fr.duals[d] - want).norm());
    }
}

fn frame_duality() -> Outcome {
    let mut gram = 0f64;
    let mut closed = 0f64;
    let mut count = 0;
    for dim in [2, 3] {
        let mesh = structured_cube(2, dim).unwrap();
        let topo = Topology::build(&mesh).unwrap();
        for k in 1..=3 {
            let lat = SimplicialLattice::enumerate(dim, k);
            for c in 0..mesh.num_cells() {
                for a in lat.iter() {
                    let f = a.support();
                    let b = bdm_frame(&mesh, &topo, c, &f).map_err(|e| e.to_string())?;
                    frame_checks(&mesh, &b, &f, c, false, &mut gram, &mut closed);
                    let e = nedelec_frame(&mesh, &topo, c, &f).map_err(|e| e.to_string())?;
                    // the in-entity normals must themselves match the oracle
                    if f.len() == 2 {
                        let gf: Vec<usize> = f.iter().map(|&i| mesh.cell(c)[i]).collect();
                        for (m, i) in (0..=dim).filter(|i| !f.contains(i)).enumerate() {
                            let nn = in_face_normal(&mesh, &gf, mesh.cell(c)[i]);
                            closed = closed.max((e.directions[1 + m] - nn).norm());
                        }
                    }
                    frame_checks(&mesh, &e, &f, c, true, &mut gram, &mut closed);
                    count += 2;
                }
            }
        }
    }
    let detail = format!("{count} frames, Gram {gram:.1e}, closed-form duals {closed:.1e}");
    if gram <= 1e-12 && closed <= 1e-12 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

// 7 ───────────────────────────────────────────────────────────────────────────
fn quadrature_moments() -> Outcome {
    let mut worst = 0f64;
    let mut abs_sum = 0f64;
    let mut count = 0;
    for dim in 1..=3 {
        for d in 0..=10 {
            let rule = simplex_rule(dim, d).map_err(|e| e.to_string())?;
            abs_sum = abs_sum.max(rule.abs_weight_sum());
            for deg in 0..=d {
                for a in brute_lattice(dim, deg) {
                    let want = a.iter().map(|&x| fact(x)).product::<f64>() * fact(dim) / fact(deg + dim);
                    let got: f64 = rule
                        .iter()
                        .map(|(l, w)| w * a.iter().zip(l.iter()).map(|(&e, &x)| x.powi(e as i32)).product::<f64>())
                        .sum();
                    worst = worst.max((got - want).abs() / want);
                    count += 1;
                }
            }
        }
    }
    let detail = format!("{count} moments, max rel error {worst:.1e}, max Σ|w| {abs_sum:.2}");
    if worst <= 1e-12 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

// 8 ───────────────────────────────────────────────────────────────────────────
fn poisson_rates() -> Outcome {
    let opts = StudyOptions::default();
    let mut lines = Vec::new();
    let mut ok = true;
    for k in 1..=3usize {
        let sizes: Vec<usize> = if k == 1 { vec![2, 4, 8] } else { vec![1, 2, 4] };
        let t = cmd_poisson_mixed(k, &sizes, &opts).map_err(|e| e.to_string())?;
        let (ru, rp) = (t.last_rate(0).unwrap(), t.last_rate(1).unwrap());
        let kf = k as f64;
        ok &= (kf + 0.7..=kf + 1.3).contains(&ru) && (kf - 0.3..=kf + 0.4).contains(&rp);
        lines.push(format!("k={k}: u {ru:.2}, p {rp:.2}"));
    }
    if ok {
        Ok(lines.join("; "))
    } else {
        Err(lines.join("; "))
    }
}

// 9 ───────────────────────────────────────────────────────────────────────────
fn maxwell_rates() -> Outcome {
    let opts = StudyOptions::default();
    let mut lines = Vec::new();
    let mut ok = true;
    for k in 1..=2usize {
        let t = cmd_maxwell(k, &[1, 2, 4], &opts).map_err(|e| e.to_string())?;
        let (re, rc) = (t.last_rate(0).unwrap(), t.last_rate(1).unwrap());
        let kf = k as f64;
        ok &= (kf + 0.6..=kf + 1.4).contains(&re) && (kf - 0.3..=kf + 0.4).contains(&rc);
        lines.push(format!("k={k}: E {re:.2}, curl {rc:.2}"));
    }
    if ok {
        Ok(lines.join("; "))
    } else {
        Err(lines.join("; "))
    }
}

// 10 ──────────────────────────────────────────────────────────────────────────
fn gradient_kernel() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mesh = structured_cube(1, 3).unwrap();
    let topo = Topology::build(&mesh).unwrap();
    let mut worst = 0f64;
    for k in 1..=2usize {
        let space = build_nedelec_dofmap(&mesh, &topo, k).map_err(|e| e.to_string())?;
        let a: CsrMatrix = assemble_curlcurl(&mesh, &space, &simplex_rule(3, 2 * k).unwrap()).map_err(|e| e.to_string())?;
        let pm = build_cell2ipoint(&mesh, &topo, k + 1).map_err(|e| e.to_string())?;
        let s: Vec<f64> = (0..pm.gdof()).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let lat_s = SimplicialLattice::enumerate(3, k + 1);
        let lat_v = SimplicialLattice::enumerate(3, k);
        let mut coef = vec![0.0; space.gdof()];
        for c in 0..mesh.num_cells() {
            let gl = cell_geometry(&mesh, c).unwrap().grad_lambda;
            for (j, &g) in space.cell_dofs(c).iter().enumerate() {
                let alpha = lat_v.get(j / 3);
                let lam: Vec<f64> = alpha.iter().map(|&x| x as f64 / k as f64).collect();
                let grad: Point = lat_s
                    .iter()
                    .zip(pm.cell_points(c))
                    .map(|(b, &ip)| grad_lagrange(b, k + 1, &lam, &gl) * s[ip])
                    .sum();
                coef[g] = grad.dot(&space.dof2vector()[g]);
            }
        }
        let ac = a.matvec(&coef);
        let norm = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>().sqrt();
        worst = worst.max(norm(&ac) / (a.norm_inf() * norm(&coef)));
    }
    let detail = format!("max ‖Ac‖/(‖A‖∞‖c‖) = {worst:.1e}");
    if worst <= 1e-9 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("lattice bijectivity", lattice_bijectivity),
        ("Lagrange duality and reproduction", lagrange_properties),
        ("face indexing worked example", worked_example),
        ("dimension formulas", dimension_formulas),
        ("conformity", conformity),
        ("frame duality", frame_duality),
        ("quadrature moments", quadrature_moments),
        ("mixed Poisson convergence", poisson_rates),
        ("Maxwell convergence", maxwell_rates),
        ("curl-curl gradient kernel", gradient_kernel),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let r = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match r {
            Ok(d) => println!("PASS {:>2} {name}: {d} ({secs:.2}s)", i + 1),
            Err(d) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {d} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
