//! End-to-end realization tests for the glued pentahedra AA5/AA5m, whose
//! normal and Gram matrices have known closed forms.

use hedra::combinat::templates::build_named;
use hedra::linalg;
use hedra::prec::{Prec, Real};
use hedra::realize::moebius;
use hedra::realize::mutate::{mutate_geometric, mutation_rotation};
use hedra::realize::{archive, mdot, realize};

/// Face order in which the reference matrices are written.
const REF_ORDER: [&str; 5] = ["top_cap", "lat_2", "lat_1", "lat_0", "bot_cap"];

fn sqrt_lin(a: i64, b: i64, p: Prec) -> Real {
    // sqrt(a + b*sqrt(5))
    let s5 = Real::from_i64(5, p).sqrt();
    (&Real::from_i64(a, p) + &(&Real::from_i64(b, p) * &s5)).sqrt()
}

fn frac(n: i64, d: i64, p: Prec) -> Real {
    &Real::from_i64(n, p) / &Real::from_i64(d, p)
}

/// Exact normals of AA5 in REF_ORDER: rows (t, x, y, z).
fn n_aa5(p: Prec) -> Vec<[Real; 4]> {
    let z = || Real::zero(p);
    let s5 = Real::from_i64(5, p).sqrt();
    let quarter = frac(1, 4, p);
    let row2x = (&quarter * &sqrt_lin(10, -2, p)).neg();
    let row23y = &(&Real::one(p) + &s5) / &Real::from_i64(4, p);
    let row3 = [
        (&frac(1, 2, p) * &sqrt_lin(11, 6, p)).neg(),
        &quarter * &sqrt_lin(50, 22, p),
        row23y.clone(),
        frac(-1, 2, p),
    ];
    let row4 = [
        (&frac(1, 20, p) * &sqrt_lin(-130, 90, p)).neg(),
        z(),
        z(),
        &frac(-3, 4, p) - &(&frac(3, 20, p) * &s5),
    ];
    vec![
        [z(), z(), z(), Real::one(p)],
        [z(), z(), Real::one(p).neg(), z()],
        [z(), row2x, row23y, z()],
        row3,
        row4,
    ]
}

/// Exact normals of AA5m in REF_ORDER (only the last row differs).
fn n_aa5m(p: Prec) -> Vec<[Real; 4]> {
    let mut rows = n_aa5(p);
    let s5 = Real::from_i64(5, p).sqrt();
    rows[4] = [
        (&frac(1, 10, p) * &sqrt_lin(55, 30, p)).neg(),
        &frac(1, 10, p) * &sqrt_lin(50, 10, p),
        Real::zero(p),
        &Real::from_i64(-1, p) - &(&frac(1, 10, p) * &s5),
    ];
    rows
}

/// Exact Gram matrices in REF_ORDER. 0 = right angle, -1 = pi/3,
/// -phi = pi/5; alpha and beta are the ultraparallel cap products.
fn g_ref(mutant: bool, p: Prec) -> Vec<Vec<Real>> {
    let s5 = Real::from_i64(5, p).sqrt();
    let phi = &(&Real::one(p) + &s5) / &Real::from_i64(2, p);
    let alpha = &frac(-3, 2, p) - &(&frac(3, 10, p) * &s5);
    let beta = &Real::from_i64(-2, p) - &(&s5 / &Real::from_i64(5, p));
    let z = || Real::zero(p);
    let two = || Real::from_i64(2, p);
    let m1 = || Real::from_i64(-1, p);
    let mphi = || phi.neg();
    if !mutant {
        vec![
            vec![two(), z(), z(), m1(), alpha.clone()],
            vec![z(), two(), mphi(), mphi(), z()],
            vec![z(), mphi(), two(), mphi(), z()],
            vec![m1(), mphi(), mphi(), two(), m1()],
            vec![alpha, z(), z(), m1(), two()],
        ]
    } else {
        vec![
            vec![two(), z(), z(), m1(), beta.clone()],
            vec![z(), two(), mphi(), mphi(), z()],
            vec![z(), mphi(), two(), mphi(), m1()],
            vec![m1(), mphi(), mphi(), two(), z()],
            vec![beta, z(), m1(), z(), two()],
        ]
    }
}

fn build_ref(name: &str) -> hedra::combinat::AngledPolyhedron {
    build_named(name).unwrap().with_face_order(&REF_ORDER).unwrap()
}

fn max_log_diff(a: &[[Real; 4]], b: &[[Real; 4]]) -> f64 {
    let mut worst = f64::NEG_INFINITY;
    for (u, v) in a.iter().zip(b) {
        for k in 0..4 {
            worst = worst.max((&u[k] - &v[k]).log10_abs());
        }
    }
    worst
}

#[test]
fn aa5_normals_match_closed_forms_at_300_digits() {
    let r = realize(&build_ref("AA5"), 300).unwrap();
    let d = max_log_diff(r.normals(), &n_aa5(Prec::digits(315)));
    assert!(d < -290.0, "max normal deviation 10^{d:.1}");
}

#[test]
fn aa5m_normals_match_closed_forms_at_300_digits() {
    let r = realize(&build_ref("AA5m"), 50).unwrap().refine(300).unwrap();
    let d = max_log_diff(r.normals(), &n_aa5m(Prec::digits(315)));
    assert!(d < -290.0, "max normal deviation 10^{d:.1}");
}

#[test]
fn gram_matrices_match_closed_forms() {
    for (name, mutant) in [("AA5", false), ("AA5m", true)] {
        let r = realize(&build_ref(name), 50).unwrap();
        let g = r.gram();
        let gref = g_ref(mutant, Prec::digits(65));
        let mut worst = f64::NEG_INFINITY;
        for (row, rref) in g.iter().zip(&gref) {
            for (a, b) in row.iter().zip(rref) {
                worst = worst.max((a - b).log10_abs());
            }
        }
        assert!(worst < -40.0, "{name}: max Gram deviation 10^{worst:.1}");
    }
}

#[test]
fn gauge_zero_pattern() {
    let r = realize(&build_ref("AA5"), 50).unwrap();
    let n = r.normals();
    // rows 0..2 span t = 0; row 0 = e_z, row 1 has x = 0
    let zero_slots = [
        (0, 0),
        (0, 1),
        (0, 2),
        (1, 0),
        (1, 1),
        (2, 0),
    ];
    for (i, k) in zero_slots {
        assert!(
            n[i][k].log10_abs() < -45.0,
            "slot ({i},{k}) = {}",
            n[i][k].f64()
        );
    }
    assert!((&n[0][3] - &Real::one(Prec::digits(65))).log10_abs() < -45.0);
    assert!(n[1][2].is_negative(), "row1 y sign");
    assert!(n[2][1].is_negative(), "row2 x sign");
}

#[test]
fn geometric_mutation_reproduces_glued_mutant() {
    let aa5 = build_ref("AA5");
    let aa5m = build_ref("AA5m");
    let r = realize(&aa5, 50).unwrap();
    let rm = mutate_geometric(&r, aa5.seam().unwrap(), None).unwrap();
    let direct = realize(&aa5m, 50).unwrap();
    // identical combinatorics, identical canonical normals
    assert_eq!(rm.combinatorics().faces(), direct.combinatorics().faces());
    let ea: std::collections::BTreeSet<_> = rm.combinatorics().edges().collect();
    let eb: std::collections::BTreeSet<_> = direct.combinatorics().edges().collect();
    assert_eq!(ea, eb);
    let d = max_log_diff(rm.normals(), direct.normals());
    assert!(d < -45.0, "mutant normals deviate 10^{d:.1}");
}

#[test]
fn mutation_rotation_is_order_three_lorentz() {
    let aa5 = build_ref("AA5");
    let r = realize(&aa5, 50).unwrap();
    let rot = mutation_rotation(&r, aa5.seam().unwrap()).unwrap();
    let p = Prec::digits(65);
    // Rot^T J Rot = J
    let j = |k: usize| if k == 0 { Real::from_i64(-1, p) } else { Real::one(p) };
    let mut worst = f64::NEG_INFINITY;
    for a in 0..4 {
        for b in 0..4 {
            let mut s = Real::zero(p);
            for k in 0..4 {
                s = &s + &(&(&rot[k][a] * &j(k)) * &rot[k][b]);
            }
            let expect = if a == b { j(a) } else { Real::zero(p) };
            worst = worst.max((&s - &expect).log10_abs());
        }
    }
    assert!(worst < -38.0, "Rot^T J Rot deviates 10^{worst:.1}");
    // Rot^3 = I
    let mul = |x: &[[Real; 4]; 4], y: &[[Real; 4]; 4]| -> [[Real; 4]; 4] {
        std::array::from_fn(|r| {
            std::array::from_fn(|c| {
                let mut s = Real::zero(p);
                for k in 0..4 {
                    s = &s + &(&x[r][k] * &y[k][c]);
                }
                s
            })
        })
    };
    let r3 = mul(&mul(&rot, &rot), &rot);
    let mut worst = f64::NEG_INFINITY;
    for a in 0..4 {
        for b in 0..4 {
            let expect = if a == b { Real::one(p) } else { Real::zero(p) };
            worst = worst.max((&r3[a][b] - &expect).log10_abs());
        }
    }
    assert!(worst < -38.0, "Rot^3 deviates from I by 10^{worst:.1}");
}

#[test]
fn gram_half_blocks_preserved_by_mutation() {
    // the two halves move rigidly: Gram blocks on (circuit ∪ upper) and
    // (circuit ∪ lower) are unchanged entrywise
    let aa5 = build_ref("AA5");
    let r = realize(&aa5, 50).unwrap();
    let seam = aa5.seam().unwrap();
    let rm = mutate_geometric(&r, seam, None).unwrap();
    let lower = aa5.lower_side().unwrap().clone();
    let g0 = r.gram();
    let g1 = rm.gram();
    let f = aa5.face_count();
    let in_circuit = |i: usize| seam.contains(&i);
    let upper_block: Vec<usize> = (0..f)
        .filter(|&i| in_circuit(i) || !lower.contains(&i))
        .collect();
    let lower_block: Vec<usize> = (0..f)
        .filter(|&i| in_circuit(i) || lower.contains(&i))
        .collect();
    let multiset = |g: &Vec<Vec<Real>>, idx: &[usize]| -> Vec<String> {
        let mut v: Vec<String> = idx
            .iter()
            .flat_map(|&i| idx.iter().map(move |&j| (i, j)))
            .map(|(i, j)| {
                if g[i][j].log10_abs() < -40.0 {
                    "0".to_string()
                } else {
                    g[i][j].to_dec_digits(40)
                }
            })
            .collect();
        v.sort();
        v
    };
    for block in [&upper_block, &lower_block] {
        assert_eq!(
            multiset(&g0, block),
            multiset(&g1, block),
            "half-block Gram multiset changed"
        );
    }
}

#[test]
fn newton_converges_quadratically() {
    let r = realize(&build_ref("AA5"), 120).unwrap();
    let h = r.newton_history();
    // once the residual is below 1e-8 and above the target floor, the
    // log-residual must at least shrink by a factor 1.8 per step
    for w in h.windows(2) {
        let (a, b) = (w[0], w[1]);
        if a < -8.0 && b > -120.0 {
            assert!(b <= a * 1.8, "residual went 10^{a:.1} -> 10^{b:.1}");
        }
    }
    assert!(r.residual_log10() < -125.0);
}

#[test]
fn signature_and_vertices() {
    for name in ["AA5", "AA5m"] {
        let r = realize(&build_ref(name), 50).unwrap();
        let g: Vec<Vec<f64>> = r
            .gram()
            .iter()
            .map(|row| row.iter().map(|v| v.f64()).collect())
            .collect();
        let ev = linalg::sym_eigenvalues(&g);
        let negs = ev.iter().filter(|&&v| v < -1e-8).count();
        assert_eq!(negs, 1, "{name}: negative eigenvalue count");
        let verts = r.vertices().unwrap();
        for v in &verts {
            let s = mdot(&v, &v);
            assert!((&s + &Real::one(Prec::digits(65))).log10_abs() < -40.0);
            assert!(v[0].is_positive(), "future-pointing");
        }
        // ultraparallel caps: |G_04| > 2
        let caps = &r.gram()[0][4];
        assert!(caps.f64().abs() > 2.0);
    }
}

#[test]
fn archive_round_trip_and_off() {
    let r = realize(&build_ref("AA5"), 50).unwrap();
    let json1 = archive::save_json(&r).unwrap();
    let json2 = archive::save_json(&r).unwrap();
    assert_eq!(json1, json2, "archive bytes deterministic");
    let back = archive::load_json(&json1).unwrap();
    assert_eq!(back.digits(), 50);
    let d = max_log_diff(back.normals(), r.normals());
    assert!(d < -48.0, "round-trip normals deviate 10^{d:.1}");

    let off = archive::export_off(&r).unwrap();
    let mut lines = off.lines();
    assert_eq!(lines.next(), Some("OFF"));
    assert_eq!(lines.next(), Some("6 5 9"));
    // Klein vertices must be strictly inside the unit ball
    for line in off.lines().skip(2).take(6) {
        let xs: Vec<f64> = line
            .split_whitespace()
            .map(|t| t.parse().unwrap())
            .collect();
        let r2: f64 = xs.iter().map(|v| v * v).sum();
        assert!(r2 < 1.0, "Klein vertex outside ball: {line}");
    }
}

#[test]
fn moebius_generators_are_involutions_with_elliptic_products() {
    let aa5 = build_ref("AA5");
    let r = realize(&aa5, 50).unwrap();
    let gens = moebius::generators(&r).unwrap();
    let p = Prec::digits(65);
    for m in &gens {
        let det = m.det();
        assert!(
            (&det.re - &Real::one(p)).log10_abs() < -40.0 && det.im.log10_abs() < -40.0,
            "det = 1"
        );
        let sq = m.mul(&m.conj());
        let dev = [
            (&sq.a.re - &Real::one(p)).log10_abs(),
            sq.a.im.log10_abs(),
            sq.b.re.log10_abs(),
            sq.b.im.log10_abs(),
            sq.c.re.log10_abs(),
            sq.c.im.log10_abs(),
            (&sq.d.re - &Real::one(p)).log10_abs(),
            sq.d.im.log10_abs(),
        ];
        for d in dev {
            assert!(d < -40.0, "M conj(M) = I, dev 10^{d:.1}");
        }
    }
    // adjacent faces at angle pi/n: tr^2(r_i r_j) = 4 cos^2(pi/n)
    for (i, j, n) in aa5.edges() {
        let w = gens[i].mul(&gens[j].conj());
        let tr = w.trace();
        let c = Real::cos_pi_frac(1, n as i64, p);
        let want = &(&c * &c) * &Real::from_i64(4, p);
        let got = &(&tr.re * &tr.re) - &(&tr.im * &tr.im);
        assert!(
            (&got - &want).log10_abs() < -40.0 && tr.im.log10_abs() < -20.0,
            "tr^2 for angle pi/{n}"
        );
        // tr of the squared rotation: tr(w^2) = tr(w)^2 - 2 = 2 cos(2pi/n)
        let w2 = w.mul(&w);
        let tr2 = w2.trace();
        let want2 = &Real::cos_pi_frac(2, n as i64, p) * &Real::from_i64(2, p);
        assert!((&tr2.re - &want2).log10_abs() < -40.0);
    }
}

#[test]
fn refine_tightens_residual() {
    let r = realize(&build_ref("AA5"), 50).unwrap();
    assert!(r.residual_log10() < -55.0);
    let r2 = r.refine(200).unwrap();
    assert!(r2.residual_log10() < -205.0);
    assert_eq!(r2.digits(), 200);
}
