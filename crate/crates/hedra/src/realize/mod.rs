//! Realization of an angled polyhedron as unit spacelike normals in
//! E^{3,1}, with the Lorentz product <u,v> = -u_t v_t + u_x v_x + u_y v_y
//! + u_z v_z.
//!
//! Pipeline: structured f64 seeds -> Levenberg–Marquardt -> validity checks
//! (signature, compactness, convexity) -> big-float Newton polish at the
//! requested precision -> gauge canonicalization.
//!
//! Gauge: the three anchor faces (the lexicographically first derived
//! vertex) satisfy v_a = (0,0,0,1), v_b = (0,0,y,z) with y < 0, and v_c has
//! t = 0, x < 0; vertices are future-pointing.

pub mod archive;
pub mod moebius;
pub mod mutate;
pub mod solver;

use crate::combinat::AngledPolyhedron;
use crate::linalg;
use crate::prec::{Prec, Real};
use solver::{equations, Eq, GaugeMap};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RealizeError {
    #[error("polyhedron fails validity diagnostics: {0}")]
    NotRealizable(String),
    #[error("no valid realization found after {0} solver restarts")]
    NoConvergence(usize),
    #[error("realized combinatorics differs from input: {0}")]
    CombinatoricsMismatch(String),
    #[error("polyhedron is not compact: vertex ({0}, {1}, {2}) is not inside H^3")]
    NonCompact(String, String, String),
    #[error("circuit has no spacelike perpendicular plane")]
    NotPerpendicularizable,
    #[error("mutation failed: {0}")]
    Mutation(String),
    #[error("face {0} straddles the cutting plane")]
    StraddlingFace(String),
    #[error("degenerate gauge frame")]
    DegenerateBasis,
    #[error("archive error: {0}")]
    Archive(String),
}

#[derive(Clone, Debug)]
pub struct RealizedPolyhedron {
    combinatorics: AngledPolyhedron,
    normals: Vec<[Real; 4]>,
    digits: usize,
    anchors: [usize; 3],
    /// log10 of the residual inf-norm after the final Newton pass.
    residual_log10: f64,
    /// log10 residual after each Newton iteration of the last polish.
    newton_history: Vec<f64>,
}

pub fn mdot(u: &[Real; 4], v: &[Real; 4]) -> Real {
    let s = &(&(&u[1] * &v[1]) + &(&u[2] * &v[2])) + &(&u[3] * &v[3]);
    &s - &(&u[0] * &v[0])
}

/// Minkowski-orthogonal complement of three independent vectors: p with
/// <p, u> = <p, v> = <p, w> = 0. Since <p, u> is the Euclidean dot of p
/// with Ju, p is the Euclidean 4D cross product of (Ju, Jv, Jw).
pub fn mink_cross(u: &[Real; 4], v: &[Real; 4], w: &[Real; 4]) -> [Real; 4] {
    let ju = [u[0].neg(), u[1].clone(), u[2].clone(), u[3].clone()];
    let jv = [v[0].neg(), v[1].clone(), v[2].clone(), v[3].clone()];
    let jw = [w[0].neg(), w[1].clone(), w[2].clone(), w[3].clone()];
    let det3 = |c0: usize, c1: usize, c2: usize| -> Real {
        let m = [&ju, &jv, &jw];
        let a = |r: usize, c: usize| -> &Real { &m[r][c] };
        let t1 = a(0, c0) * &(&(a(1, c1) * a(2, c2)) - &(a(1, c2) * a(2, c1)));
        let t2 = a(0, c1) * &(&(a(1, c0) * a(2, c2)) - &(a(1, c2) * a(2, c0)));
        let t3 = a(0, c2) * &(&(a(1, c0) * a(2, c1)) - &(a(1, c1) * a(2, c0)));
        &(&t1 - &t2) + &t3
    };
    // q_mu = (-1)^mu det(minor mu)
    let q0 = det3(1, 2, 3);
    let q1 = det3(0, 2, 3).neg();
    let q2 = det3(0, 1, 3);
    let q3 = det3(0, 1, 2).neg();
    [q0, q1, q2, q3]
}

fn unit_eq_skip(anchors: [usize; 3]) -> usize {
    anchors[0]
}

/// Residual vector at big-float precision.
fn residual_big(eqs: &[Eq], n: &[[Real; 4]], cos_t: &dyn Fn(u32) -> Real, p: Prec) -> Vec<Real> {
    let one = Real::one(p);
    eqs.iter()
        .map(|eq| match *eq {
            Eq::Unit(i) => &mdot(&n[i], &n[i]) - &one,
            Eq::Edge(i, j, a) => &mdot(&n[i], &n[j]) + &cos_t(a),
        })
        .collect()
}

fn unpack_big(gm: &GaugeMap, x: &[Real], p: Prec) -> Vec<[Real; 4]> {
    let z = Real::zero(p);
    let mut n = vec![[z.clone(), z.clone(), z.clone(), z.clone()]; gm.nfaces];
    n[gm.anchors[0]][3] = Real::one(p);
    for (v, &(f, k)) in x.iter().zip(&gm.slots) {
        n[f][k] = v.clone();
    }
    n
}

fn jacobian_big(eqs: &[Eq], gm: &GaugeMap, n: &[[Real; 4]], p: Prec) -> Vec<Vec<Real>> {
    let nun = gm.slots.len();
    let zero = Real::zero(p);
    let two = Real::from_i64(2, p);
    let jrow = |v: &[Real; 4]| [v[0].neg(), v[1].clone(), v[2].clone(), v[3].clone()];
    eqs.iter()
        .map(|eq| {
            let mut row = vec![zero.clone(); nun];
            match *eq {
                Eq::Unit(i) => {
                    let g = jrow(&n[i]);
                    for (col, &(f, k)) in gm.slots.iter().enumerate() {
                        if f == i {
                            row[col] = &two * &g[k];
                        }
                    }
                }
                Eq::Edge(i, j, _) => {
                    let gi = jrow(&n[j]);
                    let gj = jrow(&n[i]);
                    for (col, &(f, k)) in gm.slots.iter().enumerate() {
                        if f == i {
                            row[col] = gi[k].clone();
                        } else if f == j {
                            row[col] = gj[k].clone();
                        }
                    }
                }
            }
            row
        })
        .collect()
}

/// Newton iteration at precision `p`, from starting unknowns `x`.
/// Returns (solution, log10-residual history).
fn newton_big(
    eqs: &[Eq],
    gm: &GaugeMap,
    cos_t: &dyn Fn(u32) -> Real,
    mut x: Vec<Real>,
    p: Prec,
    target_log10: f64,
) -> Result<(Vec<Real>, Vec<f64>), RealizeError> {
    let mut history = Vec::new();
    for _ in 0..96 {
        let n = unpack_big(gm, &x, p);
        let r = residual_big(eqs, &n, cos_t, p);
        let rmax = r
            .iter()
            .map(|v| v.log10_abs())
            .fold(f64::NEG_INFINITY, f64::max);
        history.push(rmax);
        if rmax < target_log10 {
            return Ok((x, history));
        }
        // stalled? (no quadratic progress possible below precision floor)
        if history.len() > 3 {
            let k = history.len();
            if history[k - 1] >= history[k - 2] - 0.5 && history[k - 2] >= history[k - 3] - 0.5 {
                return Err(RealizeError::NoConvergence(0));
            }
        }
        let jac = jacobian_big(eqs, gm, &n, p);
        let neg_r: Vec<Real> = r.iter().map(|v| v.neg()).collect();
        let dx = linalg::lu_solve(&jac, &neg_r).ok_or(RealizeError::DegenerateBasis)?;
        for (xi, di) in x.iter_mut().zip(&dx) {
            *xi = &*xi + di;
        }
    }
    Err(RealizeError::NoConvergence(0))
}

/// Validity checks on an f64 candidate root.
fn check_candidate_f64(p: &AngledPolyhedron, n: &[[f64; 4]]) -> bool {
    use solver::mdot_f64;
    let f = p.face_count();
    // non-adjacent faces must be strictly ultraparallel
    for i in 0..f {
        for j in i + 1..f {
            if !p.adjacent(i, j) && mdot_f64(&n[i], &n[j]) > -1.0 - 1e-6 {
                return false;
            }
        }
    }
    // Gram signature (3,1) with rank 4
    let gram: Vec<Vec<f64>> = (0..f)
        .map(|i| (0..f).map(|j| 2.0 * mdot_f64(&n[i], &n[j])).collect())
        .collect();
    let ev = linalg::sym_eigenvalues(&gram);
    let lmax = ev.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let tol = 1e-8 * lmax;
    let negs = ev.iter().filter(|&&v| v < -tol).count();
    let poss = ev.iter().filter(|&&v| v > tol).count();
    if negs != 1 || poss != 3 {
        return false;
    }
    // vertices: timelike, and every future-normalized vertex must sit on a
    // consistent side of every non-incident face (either orientation; the
    // canonicalization fixes which one survives)
    let mut side = 0.0f64;
    for &[i, j, k] in p.vertices() {
        let pt = cross_f64(&n[i], &n[j], &n[k]);
        let s = mdot_f64(&pt, &pt);
        if s > -1e-9 {
            return false;
        }
        let sgn = if pt[0] > 0.0 { 1.0 } else { -1.0 };
        for other in 0..f {
            if other == i || other == j || other == k {
                continue;
            }
            let d = sgn * mdot_f64(&pt, &n[other]);
            if d.abs() < 1e-9 {
                return false;
            }
            if side == 0.0 {
                side = d.signum();
            } else if d.signum() != side {
                return false;
            }
        }
    }
    true
}

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

/// Gauge-canonicalize normals in place (frame rebuilt from the anchors).
fn canonicalize(normals: &mut Vec<[Real; 4]>, anchors: [usize; 3]) -> Result<(), RealizeError> {
    let [a, b, c] = anchors;
    let va = normals[a].clone();
    let vb = normals[b].clone();
    let vc = normals[c].clone();
    // e3 = va (unit spacelike)
    let e3 = normalize_space(&va)?;
    // e2 from vb, sign so <vb, e2> < 0
    let proj3 = mdot(&vb, &e3);
    let u = sub4(&vb, &scale4(&e3, &proj3));
    let mut e2 = normalize_space(&u)?;
    if !mdot(&vb, &e2).is_negative() {
        e2 = neg4(&e2);
    }
    // e1 from vc, sign so <vc, e1> < 0
    let p3 = mdot(&vc, &e3);
    let p2 = mdot(&vc, &e2);
    let w = sub4(&sub4(&vc, &scale4(&e3, &p3)), &scale4(&e2, &p2));
    let mut e1 = normalize_space(&w)?;
    if !mdot(&vc, &e1).is_negative() {
        e1 = neg4(&e1);
    }
    // e0: timelike complement. The t-orientation is fixed geometrically:
    // with P the future representative of the anchor vertex, non-incident
    // normals satisfy <P, v_f> > 0 (the layout the exact N matrices use).
    let q = mink_cross(&e1, &e2, &e3);
    let s = mdot(&q, &q);
    if !s.is_negative() {
        return Err(RealizeError::DegenerateBasis);
    }
    let inv = s.neg().sqrt().recip();
    let mut e0 = scale4(&q, &inv);
    let vert = mink_cross(&va, &vb, &vc);
    let f0 = (0..normals.len())
        .find(|i| !anchors.contains(i))
        .ok_or(RealizeError::DegenerateBasis)?;
    let s_vf = mdot(&vert, &normals[f0]);
    let t_new = mdot(&vert, &e0).neg();
    if t_new.is_zero() || s_vf.is_zero() {
        return Err(RealizeError::DegenerateBasis);
    }
    if t_new.is_negative() != s_vf.is_negative() {
        e0 = neg4(&e0);
    }
    let framed: Vec<[Real; 4]> = normals
        .iter()
        .map(|v| {
            [
                mdot(v, &e0).neg(),
                mdot(v, &e1),
                mdot(v, &e2),
                mdot(v, &e3),
            ]
        })
        .collect();
    *normals = framed;
    Ok(())
}

fn sub4(a: &[Real; 4], b: &[Real; 4]) -> [Real; 4] {
    [&a[0] - &b[0], &a[1] - &b[1], &a[2] - &b[2], &a[3] - &b[3]]
}

fn neg4(a: &[Real; 4]) -> [Real; 4] {
    [a[0].neg(), a[1].neg(), a[2].neg(), a[3].neg()]
}

fn scale4(a: &[Real; 4], s: &Real) -> [Real; 4] {
    [&a[0] * s, &a[1] * s, &a[2] * s, &a[3] * s]
}

fn normalize_space(v: &[Real; 4]) -> Result<[Real; 4], RealizeError> {
    let s = mdot(v, v);
    if !s.is_positive() {
        return Err(RealizeError::DegenerateBasis);
    }
    let inv = s.sqrt().recip();
    Ok(scale4(v, &inv))
}

/// Realize at the given decimal precision.
pub fn realize(poly: &AngledPolyhedron, digits: usize) -> Result<RealizedPolyhedron, RealizeError> {
    let diag = poly.validate();
    if !diag.ok() {
        let msgs: Vec<String> = diag.diagnostics.iter().map(|d| d.to_string()).collect();
        return Err(RealizeError::NotRealizable(msgs.join("; ")));
    }
    let anchors_t = *poly
        .vertices()
        .first()
        .ok_or_else(|| RealizeError::NotRealizable("no vertices".into()))?;
    let gm = GaugeMap::new(poly.face_count(), anchors_t);
    let eqs = equations(poly, unit_eq_skip(anchors_t));
    let cos_f64 = |n: u32| (std::f64::consts::PI / n as f64).cos();

    const MAX_RESTARTS: usize = 64;
    let mut found: Option<Vec<f64>> = None;
    for restart in 0..MAX_RESTARTS {
        let seed = solver::seed_for_restart(poly, restart as u64);
        // rotate the natural-frame seed into gauge position so the pinned
        // anchor entries agree with the free ones
        let seed = solver::gauge_seed(&seed, anchors_t).unwrap_or(seed);
        let x0 = gm.pack_f64(&seed);
        if let Some(x) = solver::lm_solve(&eqs, &gm, &cos_f64, x0) {
            let n = gm.unpack_f64(&x);
            if check_candidate_f64(poly, &n) {
                found = Some(x);
                break;
            }
        }
    }
    let x_f64 = found.ok_or(RealizeError::NoConvergence(MAX_RESTARTS))?;

    polish(poly, gm, eqs, anchors_t, &x_f64, digits)
}

fn polish(
    poly: &AngledPolyhedron,
    gm: GaugeMap,
    eqs: Vec<Eq>,
    anchors: [usize; 3],
    x_f64: &[f64],
    digits: usize,
) -> Result<RealizedPolyhedron, RealizeError> {
    let p = Prec::digits(digits + 15);
    let cos_cache: std::collections::BTreeMap<u32, Real> = poly
        .edges()
        .map(|(_, _, n)| n)
        .collect::<std::collections::BTreeSet<u32>>()
        .into_iter()
        .map(|n| (n, Real::cos_pi_frac(1, n as i64, p)))
        .collect();
    let cos_big = move |n: u32| cos_cache[&n].clone();
    let x0: Vec<Real> = x_f64.iter().map(|&v| Real::from_f64(v, p)).collect();
    let target = -(digits as f64 + 5.0);
    let (x, history) = newton_big(&eqs, &gm, &cos_big, x0, p, target)?;
    let mut normals = unpack_big(&gm, &x, p);
    canonicalize(&mut normals, anchors)?;
    // final residual after canonicalization (an exact isometry up to
    // rounding, so this re-checks the whole pipeline)
    let r = residual_big(&eqs, &normals, &cos_big, p);
    let rmax = r
        .iter()
        .map(|v| v.log10_abs())
        .fold(f64::NEG_INFINITY, f64::max);
    let out = RealizedPolyhedron {
        combinatorics: poly.clone(),
        normals,
        digits,
        anchors,
        residual_log10: rmax,
        newton_history: history,
    };
    out.verify_compact()?;
    Ok(out)
}

impl RealizedPolyhedron {
    pub fn combinatorics(&self) -> &AngledPolyhedron {
        &self.combinatorics
    }

    pub fn normals(&self) -> &[[Real; 4]] {
        &self.normals
    }

    pub fn digits(&self) -> usize {
        self.digits
    }

    pub fn anchors(&self) -> [usize; 3] {
        self.anchors
    }

    pub fn residual_log10(&self) -> f64 {
        self.residual_log10
    }

    pub fn newton_history(&self) -> &[f64] {
        &self.newton_history
    }

    pub(crate) fn prec(&self) -> Prec {
        Prec::digits(self.digits + 15)
    }

    /// Gram matrix G = 2 <v_i, v_j>.
    pub fn gram(&self) -> Vec<Vec<Real>> {
        let two = Real::from_i64(2, self.prec());
        let f = self.normals.len();
        (0..f)
            .map(|i| {
                (0..f)
                    .map(|j| &two * &mdot(&self.normals[i], &self.normals[j]))
                    .collect()
            })
            .collect()
    }

    /// Vertex points on the hyperboloid <p,p> = -1, future-pointing,
    /// in the order of `combinatorics().vertices()`.
    pub fn vertices(&self) -> Result<Vec<[Real; 4]>, RealizeError> {
        self.combinatorics
            .vertices()
            .iter()
            .map(|&[i, j, k]| {
                let q = mink_cross(&self.normals[i], &self.normals[j], &self.normals[k]);
                let s = mdot(&q, &q);
                if !s.is_negative() {
                    return Err(RealizeError::NonCompact(
                        self.combinatorics.faces()[i].clone(),
                        self.combinatorics.faces()[j].clone(),
                        self.combinatorics.faces()[k].clone(),
                    ));
                }
                let inv = s.neg().sqrt().recip();
                let mut pt = scale4(&q, &inv);
                if pt[0].is_negative() {
                    pt = neg4(&pt);
                }
                Ok(pt)
            })
            .collect()
    }

    fn verify_compact(&self) -> Result<(), RealizeError> {
        self.vertices().map(|_| ())
    }

    /// Re-run Newton at a higher precision, reusing the current normals as
    /// the starting point.
    pub fn refine(&self, digits: usize) -> Result<RealizedPolyhedron, RealizeError> {
        if digits <= self.digits {
            return Ok(self.clone());
        }
        let gm = GaugeMap::new(self.combinatorics.face_count(), self.anchors);
        let eqs = equations(&self.combinatorics, unit_eq_skip(self.anchors));
        let p = Prec::digits(digits + 15);
        let x0: Vec<Real> = gm
            .slots
            .iter()
            .map(|&(f, k)| {
                let mut v = self.normals[f][k].clone();
                v = Real::parse_dec(&v.to_dec(), p).unwrap_or(v);
                v
            })
            .collect();
        let cos_cache: std::collections::BTreeMap<u32, Real> = self
            .combinatorics
            .edges()
            .map(|(_, _, n)| n)
            .collect::<std::collections::BTreeSet<u32>>()
            .into_iter()
            .map(|n| (n, Real::cos_pi_frac(1, n as i64, p)))
            .collect();
        let cos_big = move |n: u32| cos_cache[&n].clone();
        let target = -(digits as f64 + 5.0);
        let (x, history) = newton_big(&eqs, &gm, &cos_big, x0, p, target)?;
        let mut normals = unpack_big(&gm, &x, p);
        canonicalize(&mut normals, self.anchors)?;
        let r = residual_big(&eqs, &normals, &cos_big, p);
        let rmax = r
            .iter()
            .map(|v| v.log10_abs())
            .fold(f64::NEG_INFINITY, f64::max);
        let out = RealizedPolyhedron {
            combinatorics: self.combinatorics.clone(),
            normals,
            digits,
            anchors: self.anchors,
            residual_log10: rmax,
            newton_history: history,
        };
        out.verify_compact()?;
        Ok(out)
    }
}
