//! Per-restart diagnostics for a glued candidate that fails to realize:
//! reports, for each seed, whether LM converged and which validity check
//! rejected the root.

use hedra::combinat::templates::{glue, half_from_text, HalfKind};
use hedra::combinat::AngledPolyhedron;
use hedra::linalg;
use hedra::realize::solver::{
    equations, gauge_seed, lm_solve, mdot_f64, seed_for_restart, GaugeMap,
};

fn cross_f64(u: &[f64; 4], v: &[f64; 4], w: &[f64; 4]) -> [f64; 4] {
    let ju = [-u[0], u[1], u[2], u[3]];
    let jv = [-v[0], v[1], v[2], v[3]];
    let jw = [-w[0], w[1], w[2], w[3]];
    let m = [ju, jv, jw];
    let det3 = |c0: usize, c1: usize, c2: usize| -> f64 {
        m[0][c0] * (m[1][c1] * m[2][c2] - m[1][c2] * m[2][c1])
            - m[0][c1] * (m[1][c0] * m[2][c2] - m[1][c2] * m[2][c0])
            + m[0][c2] * (m[1][c0] * m[2][c1] - m[1][c1] * m[2][c0])
    };
    [det3(1, 2, 3), -det3(0, 2, 3), det3(0, 1, 3), -det3(0, 1, 2)]
}

/// Verbose version of the realize-stage candidate checks.
fn why_rejected(p: &AngledPolyhedron, n: &[[f64; 4]]) -> Option<String> {
    let f = p.face_count();
    for i in 0..f {
        for j in i + 1..f {
            if !p.adjacent(i, j) {
                let d = mdot_f64(&n[i], &n[j]);
                if d > -1.0 - 1e-6 {
                    return Some(format!(
                        "non-adjacent pair ({}, {}) has <vi,vj> = {d:.6} (need < -1)",
                        p.faces()[i],
                        p.faces()[j]
                    ));
                }
            }
        }
    }
    let gram: Vec<Vec<f64>> = (0..f)
        .map(|i| (0..f).map(|j| 2.0 * mdot_f64(&n[i], &n[j])).collect())
        .collect();
    let ev = linalg::sym_eigenvalues(&gram);
    let lmax = ev.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let tol = 1e-8 * lmax;
    let negs = ev.iter().filter(|&&v| v < -tol).count();
    let poss = ev.iter().filter(|&&v| v > tol).count();
    if negs != 1 || poss != 3 {
        return Some(format!("signature ({poss}, {negs}), eigenvalues {ev:?}"));
    }
    let mut side = 0.0f64;
    for &[i, j, k] in p.vertices() {
        let pt = cross_f64(&n[i], &n[j], &n[k]);
        let s = mdot_f64(&pt, &pt);
        if s > -1e-9 {
            return Some(format!(
                "vertex ({}, {}, {}) not timelike: <p,p> = {s:.6}",
                p.faces()[i],
                p.faces()[j],
                p.faces()[k]
            ));
        }
        let sgn = if pt[0] > 0.0 { 1.0 } else { -1.0 };
        for other in 0..f {
            if other == i || other == j || other == k {
                continue;
            }
            let d = sgn * mdot_f64(&pt, &n[other]);
            if d.abs() < 1e-9 {
                return Some(format!(
                    "vertex ({}, {}, {}) lies on face {}",
                    p.faces()[i],
                    p.faces()[j],
                    p.faces()[k],
                    p.faces()[other]
                ));
            }
            if side == 0.0 {
                side = d.signum();
            } else if d.signum() != side {
                return Some(format!(
                    "vertex ({}, {}, {}) on wrong side of face {} (d = {d:.6}, side = {side})",
                    p.faces()[i],
                    p.faces()[j],
                    p.faces()[k],
                    p.faces()[other]
                ));
            }
        }
    }
    None
}

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let a: u32 = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(2);
    let b: u32 = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(3);
    let c: u32 = args.get(3).and_then(|s| s.parse().ok()).unwrap_or(2);
    let q: u32 = args.get(4).and_then(|s| s.parse().ok()).unwrap_or(4);
    let text = format!(
        "face iface\nface cap\nface bevel\nface lat_0\nface lat_1\nface lat_2\n\
         edge iface lat_0 2\nedge iface lat_1 2\nedge iface lat_2 2\n\
         edge lat_0 lat_1 q\nedge lat_1 lat_2 q\nedge lat_2 lat_0 q\n\
         edge bevel lat_0 {a}\nedge bevel lat_1 {b}\nedge bevel lat_2 {b}\n\
         edge cap bevel {c}\nedge cap lat_1 2\nedge cap lat_2 2\n"
    );
    let half = half_from_text(HalfKind::B, q, &text).expect("half");
    let glued = glue(&half, &half, 0).expect("glue");
    println!(
        "faces: {:?}",
        glued.faces().iter().map(String::as_str).collect::<Vec<_>>()
    );
    println!("vertices:");
    for &[i, j, k] in glued.vertices() {
        let fi = &glued.faces()[i];
        let fj = &glued.faces()[j];
        let fk = &glued.faces()[k];
        let n1 = glued.edge_angle(i, j).unwrap();
        let n2 = glued.edge_angle(j, k).unwrap();
        let n3 = glued.edge_angle(i, k).unwrap();
        println!("  ({fi}, {fj}, {fk})  angles pi/({n1}, {n2}, {n3})");
    }
    let diag = glued.validate();
    println!("validate ok: {}", diag.ok());
    for d in &diag.diagnostics {
        println!("  diag: {d}");
    }

    let anchors = *glued.vertices().first().expect("vertex");
    let gm = GaugeMap::new(glued.face_count(), anchors);
    let eqs = equations(&glued, anchors[0]);
    let cos_f64 = |n: u32| (std::f64::consts::PI / n as f64).cos();
    let mut converged = 0;
    let mut rejected = 0;
    for restart in 0..64u64 {
        let seed = seed_for_restart(&glued, restart);
        let seed = gauge_seed(&seed, anchors).unwrap_or(seed);
        let x0 = gm.pack_f64(&seed);
        match lm_solve(&eqs, &gm, &cos_f64, x0) {
            Some(x) => {
                converged += 1;
                let n = gm.unpack_f64(&x);
                match why_rejected(&glued, &n) {
                    Some(why) => {
                        rejected += 1;
                        if rejected <= 12 {
                            println!("restart {restart}: converged, rejected: {why}");
                        }
                    }
                    None => {
                        println!("restart {restart}: VALID ROOT");
                        for (name, row) in glued.faces().iter().zip(&n) {
                            println!(
                                "  {name}: [{:+.6}, {:+.6}, {:+.6}, {:+.6}]",
                                row[0], row[1], row[2], row[3]
                            );
                        }
                        return;
                    }
                }
            }
            None => {}
        }
    }
    println!("converged {converged}/64, all rejected ({rejected})");
}
