//! f64 stage of realization: structured seeds + Levenberg–Marquardt.
//!
//! The system is square after gauge fixing: with anchor faces (a, b, c)
//! forming a vertex, v_a = (0,0,0,1) is pinned entirely (its unit equation
//! is satisfied by construction and dropped), v_b keeps (y, z), v_c keeps
//! (x, y, z). Unknowns: 4F - 7. Equations: F - 1 unit norms + E = 3F - 6
//! edge products, also 4F - 7.

use crate::combinat::AngledPolyhedron;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Deterministic base seed for solver restarts.
pub const SOLVER_SEED: u64 = 0xC0CE7E2;

/// Variable slots shared by the f64 and big-float Newton stages.
#[derive(Clone, Debug)]
pub struct GaugeMap {
    pub anchors: [usize; 3],
    /// (face, coordinate) per unknown, coordinate indices t=0,x=1,y=2,z=3.
    pub slots: Vec<(usize, usize)>,
    pub nfaces: usize,
}

impl GaugeMap {
    pub fn new(nfaces: usize, anchors: [usize; 3]) -> Self {
        let [a, b, c] = anchors;
        let mut slots = Vec::with_capacity(4 * nfaces - 7);
        for f in 0..nfaces {
            if f == a {
                continue; // fully pinned
            } else if f == b {
                slots.push((f, 2));
                slots.push((f, 3));
            } else if f == c {
                slots.push((f, 1));
                slots.push((f, 2));
                slots.push((f, 3));
            } else {
                for k in 0..4 {
                    slots.push((f, k));
                }
            }
        }
        GaugeMap {
            anchors,
            slots,
            nfaces,
        }
    }

    /// Expand an unknown vector into full normal rows.
    pub fn unpack_f64(&self, x: &[f64]) -> Vec<[f64; 4]> {
        let mut n = vec![[0.0; 4]; self.nfaces];
        n[self.anchors[0]] = [0.0, 0.0, 0.0, 1.0];
        for (v, &(f, k)) in x.iter().zip(&self.slots) {
            n[f][k] = *v;
        }
        n
    }

    /// Collapse full rows into the unknown vector (drops gauge entries).
    pub fn pack_f64(&self, n: &[[f64; 4]]) -> Vec<f64> {
        self.slots.iter().map(|&(f, k)| n[f][k]).collect()
    }
}

/// Equations, shared by both precision stages.
#[derive(Clone, Copy, Debug)]
pub enum Eq {
    /// <v_i, v_i> = 1
    Unit(usize),
    /// <v_i, v_j> = -cos(pi/n)
    Edge(usize, usize, u32),
}

pub fn equations(p: &AngledPolyhedron, skip_unit: usize) -> Vec<Eq> {
    let mut eqs = Vec::new();
    for i in 0..p.face_count() {
        if i != skip_unit {
            eqs.push(Eq::Unit(i));
        }
    }
    for (i, j, n) in p.edges() {
        eqs.push(Eq::Edge(i, j, n));
    }
    eqs
}

pub fn mdot_f64(u: &[f64; 4], v: &[f64; 4]) -> f64 {
    -u[0] * v[0] + u[1] * v[1] + u[2] * v[2] + u[3] * v[3]
}

fn residual(eqs: &[Eq], n: &[[f64; 4]], cos_t: &dyn Fn(u32) -> f64, out: &mut [f64]) {
    for (r, eq) in out.iter_mut().zip(eqs) {
        *r = match *eq {
            Eq::Unit(i) => mdot_f64(&n[i], &n[i]) - 1.0,
            Eq::Edge(i, j, a) => mdot_f64(&n[i], &n[j]) + cos_t(a),
        };
    }
}

/// d<v_i, v_j>/dv_i = J v_j
fn jrow(v: &[f64; 4]) -> [f64; 4] {
    [-v[0], v[1], v[2], v[3]]
}

fn jacobian(eqs: &[Eq], gm: &GaugeMap, n: &[[f64; 4]], jac: &mut [Vec<f64>]) {
    for (row, eq) in jac.iter_mut().zip(eqs) {
        row.iter_mut().for_each(|v| *v = 0.0);
        match *eq {
            Eq::Unit(i) => {
                let g = jrow(&n[i]);
                for (col, &(f, k)) in gm.slots.iter().enumerate() {
                    if f == i {
                        row[col] = 2.0 * g[k];
                    }
                }
            }
            Eq::Edge(i, j, _) => {
                let gi = jrow(&n[j]); // d/dv_i
                let gj = jrow(&n[i]);
                for (col, &(f, k)) in gm.slots.iter().enumerate() {
                    if f == i {
                        row[col] = gi[k];
                    } else if f == j {
                        row[col] = gj[k];
                    }
                }
            }
        }
    }
}

/// Solve the square SPD-ish system (A + lam*diag(A)) x = b by Gaussian
/// elimination with partial pivoting.
fn solve_damped(a: &[Vec<f64>], b: &[f64], lam: f64) -> Option<Vec<f64>> {
    let n = b.len();
    let mut m: Vec<Vec<f64>> = a.iter().cloned().collect();
    let mut x = b.to_vec();
    for i in 0..n {
        m[i][i] += lam * a[i][i].max(1e-12);
    }
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| m[i][col].abs().partial_cmp(&m[j][col].abs()).unwrap())?;
        if m[piv][col].abs() < 1e-300 {
            return None;
        }
        m.swap(col, piv);
        x.swap(col, piv);
        for row in col + 1..n {
            let f = m[row][col] / m[col][col];
            if f == 0.0 {
                continue;
            }
            for k in col..n {
                m[row][k] -= f * m[col][k];
            }
            x[row] -= f * x[col];
        }
    }
    for col in (0..n).rev() {
        let mut s = x[col];
        for k in col + 1..n {
            s -= m[col][k] * x[k];
        }
        x[col] = s / m[col][col];
    }
    Some(x)
}

/// Levenberg–Marquardt on the gauge-fixed square system. Returns the final
/// unknown vector when the residual drops below 1e-11 (inf norm).
pub fn lm_solve(
    eqs: &[Eq],
    gm: &GaugeMap,
    cos_t: &dyn Fn(u32) -> f64,
    x0: Vec<f64>,
) -> Option<Vec<f64>> {
    let nun = gm.slots.len();
    let neq = eqs.len();
    let mut x = x0;
    let mut r = vec![0.0; neq];
    let mut jac: Vec<Vec<f64>> = vec![vec![0.0; nun]; neq];
    let mut lam = 1e-3;
    let mut n = gm.unpack_f64(&x);
    residual(eqs, &n, cos_t, &mut r);
    let mut fnorm: f64 = r.iter().map(|v| v * v).sum();
    for _it in 0..400 {
        let rinf = r.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if rinf < 1e-11 {
            return Some(x);
        }
        jacobian(eqs, gm, &n, &mut jac);
        // normal equations
        let mut jtj = vec![vec![0.0; nun]; nun];
        let mut jtr = vec![0.0; nun];
        for (row, &rv) in jac.iter().zip(&r) {
            for i in 0..nun {
                if row[i] == 0.0 {
                    continue;
                }
                jtr[i] -= row[i] * rv;
                for j in i..nun {
                    jtj[i][j] += row[i] * row[j];
                }
            }
        }
        for i in 0..nun {
            for j in 0..i {
                jtj[i][j] = jtj[j][i];
            }
        }
        let mut improved = false;
        for _try in 0..40 {
            let Some(dx) = solve_damped(&jtj, &jtr, lam) else {
                lam *= 3.0;
                continue;
            };
            let xt: Vec<f64> = x.iter().zip(&dx).map(|(a, d)| a + d).collect();
            let nt = gm.unpack_f64(&xt);
            let mut rt = vec![0.0; neq];
            residual(eqs, &nt, cos_t, &mut rt);
            let ft: f64 = rt.iter().map(|v| v * v).sum();
            if ft.is_finite() && ft < fnorm {
                x = xt;
                n = nt;
                r = rt;
                fnorm = ft;
                lam = (lam / 3.0).max(1e-14);
                improved = true;
                break;
            }
            lam *= 3.0;
            if lam > 1e12 {
                break;
            }
        }
        if !improved {
            return None;
        }
    }
    None
}

/// Face roles inferred from glue naming, used to build structured seeds.
fn face_role(name: &str) -> Role {
    if let Some(rest) = name.strip_prefix("lat_") {
        if let Ok(k) = rest.parse::<usize>() {
            if k < 3 {
                return Role::Lateral(k);
            }
        }
    }
    if name.starts_with("top_") {
        Role::Upper
    } else if name.starts_with("bot_") {
        Role::Lower
    } else {
        Role::Unknown
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Role {
    Lateral(usize),
    Upper,
    Lower,
    Unknown,
}

/// Seed normals in a natural frame: laterals fan out around the z-axis,
/// upper caps tilt toward +z, lower toward -z. A cap adjacent to a proper
/// subset of the laterals leans toward the mean azimuth of that subset
/// (e.g. a face roofing one lateral edge); a cap over all three laterals is
/// apex-like and stays near the pole. Deterministic given `rng`.
pub fn structured_seed(p: &AngledPolyhedron, rng: &mut ChaCha8Rng, scale: f64) -> Vec<[f64; 4]> {
    let f = p.face_count();
    let roles: Vec<Role> = p.faces().iter().map(|s| face_role(s)).collect();
    let structured = roles.iter().filter(|r| **r != Role::Unknown).count() == f;
    let lat_azimuth = |k: usize| 2.0 * std::f64::consts::PI * (k as f64) / 3.0;
    (0..f)
        .map(|i| {
            let jitter = |rng: &mut ChaCha8Rng| rng.gen_range(-0.08..0.08);
            if !structured {
                // generic: random spacelike direction
                let t: f64 = rng.gen_range(-0.8..0.8) * scale;
                let dir: [f64; 3] = [
                    rng.gen_range(-1.0..1.0),
                    rng.gen_range(-1.0..1.0),
                    rng.gen_range(-1.0..1.0),
                ];
                let norm = (dir[0] * dir[0] + dir[1] * dir[1] + dir[2] * dir[2])
                    .sqrt()
                    .max(1e-3);
                let s = (1.0 + t * t).sqrt() / norm;
                return [t, dir[0] * s, dir[1] * s, dir[2] * s];
            }
            match roles[i] {
                Role::Lateral(k) => {
                    let th = lat_azimuth(k) + jitter(rng);
                    let t = 0.45 * scale + jitter(rng);
                    let s = (1.0 + t * t).sqrt();
                    [t, s * th.cos(), s * th.sin(), jitter(rng)]
                }
                Role::Upper | Role::Lower => {
                    let sgn = if roles[i] == Role::Upper { 1.0 } else { -1.0 };
                    // mean azimuth of the adjacent laterals; near-zero sum
                    // means the cap surrounds the pole (apex-like)
                    let (mut sx, mut sy) = (0.0f64, 0.0f64);
                    for j in 0..f {
                        if let Role::Lateral(k) = roles[j] {
                            if p.adjacent(i, j) {
                                sx += lat_azimuth(k).cos();
                                sy += lat_azimuth(k).sin();
                            }
                        }
                    }
                    let apex = (sx * sx + sy * sy).sqrt() < 0.25;
                    let tilt = if apex { 0.15 } else { 0.55 } + jitter(rng);
                    let psi = if apex { 0.0 } else { sy.atan2(sx) } + jitter(rng);
                    let t = 0.3 * scale + jitter(rng);
                    let s = (1.0 + t * t).sqrt();
                    [
                        t,
                        s * tilt.sin() * psi.cos(),
                        s * tilt.sin() * psi.sin(),
                        sgn * s * tilt.cos(),
                    ]
                }
                Role::Unknown => unreachable!(),
            }
        })
        .collect()
}

/// Restart schedule: deterministic RNG seeded from SOLVER_SEED and the
/// restart index; scale cycles through a small ladder.
pub fn seed_for_restart(p: &AngledPolyhedron, restart: u64) -> Vec<[f64; 4]> {
    let mut rng = ChaCha8Rng::seed_from_u64(SOLVER_SEED ^ (restart.wrapping_mul(0x9E3779B97F4A7C15)));
    let scale = [1.0, 1.6, 0.6, 2.4, 3.5][(restart % 5) as usize];
    structured_seed(p, &mut rng, scale)
}

/// Move seed rows into gauge position by an f64 Lorentz frame change, so the
/// pinned anchor entries are consistent with the rest of the seed. Returns
/// None when the anchor rows are too degenerate to build a frame from.
pub fn gauge_seed(rows: &[[f64; 4]], anchors: [usize; 3]) -> Option<Vec<[f64; 4]>> {
    let [a, b, c] = anchors;
    let md = mdot_f64;
    let norm_sp = |v: &[f64; 4]| -> Option<[f64; 4]> {
        let s = md(v, v);
        if s < 1e-8 {
            return None;
        }
        let inv = 1.0 / s.sqrt();
        Some([v[0] * inv, v[1] * inv, v[2] * inv, v[3] * inv])
    };
    let e3 = norm_sp(&rows[a])?;
    let pb = md(&rows[b], &e3);
    let u = [
        rows[b][0] - pb * e3[0],
        rows[b][1] - pb * e3[1],
        rows[b][2] - pb * e3[2],
        rows[b][3] - pb * e3[3],
    ];
    let mut e2 = norm_sp(&u)?;
    if md(&rows[b], &e2) > 0.0 {
        e2 = [-e2[0], -e2[1], -e2[2], -e2[3]];
    }
    let p3 = md(&rows[c], &e3);
    let p2 = md(&rows[c], &e2);
    let w = [
        rows[c][0] - p3 * e3[0] - p2 * e2[0],
        rows[c][1] - p3 * e3[1] - p2 * e2[1],
        rows[c][2] - p3 * e3[2] - p2 * e2[2],
        rows[c][3] - p3 * e3[3] - p2 * e2[3],
    ];
    let mut e1 = norm_sp(&w)?;
    if md(&rows[c], &e1) > 0.0 {
        e1 = [-e1[0], -e1[1], -e1[2], -e1[3]];
    }
    let q = super::cross_f64(&e1, &e2, &e3);
    let sq = md(&q, &q);
    if sq > -1e-8 {
        return None;
    }
    let inv = 1.0 / (-sq).sqrt();
    let e0 = [q[0] * inv, q[1] * inv, q[2] * inv, q[3] * inv];
    Some(
        rows.iter()
            .map(|v| [-md(v, &e0), md(v, &e1), md(v, &e2), md(v, &e3)])
            .collect(),
    )
}
