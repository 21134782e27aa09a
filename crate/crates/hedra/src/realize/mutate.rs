//! Geometric mutation: cut a realized polyhedron along the plane
//! perpendicular to an eligible prismatic 3-circuit, rotate the lower half
//! by 2π/3 about the circuit's common perpendicular, and reglue.
//!
//! The rotation is the Lorentz map sending the circuit plane i to plane
//! i+1 (in the same order the combinatorial mutation uses) while fixing
//! the cutting plane, so the rotated normals satisfy the mutated
//! combinatorics' Gram conditions exactly.

use std::collections::BTreeSet;

use super::solver::{equations, GaugeMap};
use super::{
    canonicalize, check_candidate_f64, mdot, mink_cross, neg4, newton_big, residual_big,
    scale4, unit_eq_skip, unpack_big, RealizeError, RealizedPolyhedron,
};
use crate::prec::Real;

/// Unit spacelike normal of the plane perpendicular to all three circuit
/// planes, oriented so the lower side (the half that mutation rotates) is
/// negative.
pub fn cutting_plane(
    rp: &RealizedPolyhedron,
    circuit: [usize; 3],
) -> Result<[Real; 4], RealizeError> {
    let (sorted, side) = resolve(rp, circuit, None)?;
    let (n, _) = oriented_cut(rp, sorted, &side)?;
    Ok(n)
}

/// The order-3 Lorentz rotation applied to the lower half: maps circuit
/// plane at position i to position i+1 (cyclically) and fixes the cutting
/// plane. Returned as a row-major 4×4 matrix acting on column vectors.
pub fn mutation_rotation(
    rp: &RealizedPolyhedron,
    circuit: [usize; 3],
) -> Result<[[Real; 4]; 4], RealizeError> {
    let (sorted, side) = resolve(rp, circuit, None)?;
    let (n, _) = oriented_cut(rp, sorted, &side)?;
    let order = rp.combinatorics().resolve_circuit_order(sorted);
    rotation_for(rp, order, &n)
}

/// Mutate geometrically. `side` optionally names the face indices of the
/// half to rotate (defaults to the side recorded by gluing, else derived
/// from connectivity, exactly as in the combinatorial mutation).
pub fn mutate_geometric(
    rp: &RealizedPolyhedron,
    circuit: [usize; 3],
    side: Option<&BTreeSet<usize>>,
) -> Result<RealizedPolyhedron, RealizeError> {
    let poly = rp.combinatorics();
    let (sorted, side_set) = resolve(rp, circuit, side)?;

    // combinatorial mutation first (validates eligibility and the side set)
    let mutated = poly
        .mutate(sorted, Some(&side_set))
        .map_err(|e| RealizeError::Mutation(e.to_string()))?;

    // geometric cut, oriented with the lower side negative; also verifies
    // that no face straddles the plane
    let (n, _) = oriented_cut(rp, sorted, &side_set)?;
    let order = poly.resolve_circuit_order(sorted);
    let rot = rotation_for(rp, order, &n)?;

    // rotate the lower-half normals, keep the rest
    let normals: Vec<[Real; 4]> = rp
        .normals()
        .iter()
        .enumerate()
        .map(|(f, v)| {
            if side_set.contains(&f) {
                apply(&rot, v)
            } else {
                v.clone()
            }
        })
        .collect();

    // re-polish in the mutant's own gauge and re-run the validity checks
    let anchors = *mutated
        .vertices()
        .first()
        .ok_or_else(|| RealizeError::CombinatoricsMismatch("mutant has no vertices".into()))?;
    let gm = GaugeMap::new(mutated.face_count(), anchors);
    let eqs = equations(&mutated, unit_eq_skip(anchors));
    let p = rp.prec();
    let digits = rp.digits();

    let mut normals = normals;
    canonicalize(&mut normals, anchors)?;
    let x0: Vec<Real> = gm.slots.iter().map(|&(f, k)| normals[f][k].clone()).collect();
    let cos_cache: std::collections::BTreeMap<u32, Real> = mutated
        .edges()
        .map(|(_, _, m)| m)
        .collect::<BTreeSet<u32>>()
        .into_iter()
        .map(|m| (m, Real::cos_pi_frac(1, m as i64, p)))
        .collect();
    let cos_big = move |m: u32| cos_cache[&m].clone();
    let target = -(digits as f64 + 5.0);
    let (x, history) = newton_big(&eqs, &gm, &cos_big, x0, p, target)?;
    let mut normals = unpack_big(&gm, &x, p);
    canonicalize(&mut normals, anchors)?;

    let nf64: Vec<[f64; 4]> = normals
        .iter()
        .map(|v| [v[0].f64(), v[1].f64(), v[2].f64(), v[3].f64()])
        .collect();
    if !check_candidate_f64(&mutated, &nf64) {
        return Err(RealizeError::CombinatoricsMismatch(
            "rotated normals do not realize the mutated combinatorics".into(),
        ));
    }

    let r = residual_big(&eqs, &normals, &cos_big, p);
    let rmax = r
        .iter()
        .map(|v| v.log10_abs())
        .fold(f64::NEG_INFINITY, f64::max);
    let out = RealizedPolyhedron {
        combinatorics: mutated,
        normals,
        digits,
        anchors,
        residual_log10: rmax,
        newton_history: history,
    };
    out.verify_compact()?;
    Ok(out)
}

fn resolve(
    rp: &RealizedPolyhedron,
    circuit: [usize; 3],
    side: Option<&BTreeSet<usize>>,
) -> Result<([usize; 3], BTreeSet<usize>), RealizeError> {
    let poly = rp.combinatorics();
    let mut sorted = circuit;
    sorted.sort_unstable();
    let c3 = poly
        .prismatic_3_circuits()
        .into_iter()
        .find(|c| c.faces == sorted)
        .ok_or_else(|| RealizeError::Mutation("not a prismatic 3-circuit".into()))?;
    if c3.angle.is_none() {
        return Err(RealizeError::Mutation(
            "circuit angles are not all equal".into(),
        ));
    }
    let side_set = poly
        .resolve_side(sorted, side)
        .map_err(|e| RealizeError::Mutation(e.to_string()))?;
    Ok((sorted, side_set))
}

/// Cutting-plane normal oriented so the lower side is negative, plus the
/// per-vertex signs. Errors if a non-circuit face has vertices on both
/// sides, or the side partition disagrees with the geometry.
fn oriented_cut(
    rp: &RealizedPolyhedron,
    sorted: [usize; 3],
    side_set: &BTreeSet<usize>,
) -> Result<([Real; 4], Vec<f64>), RealizeError> {
    let poly = rp.combinatorics();
    let nv = rp.normals();
    let q = mink_cross(&nv[sorted[0]], &nv[sorted[1]], &nv[sorted[2]]);
    let s = mdot(&q, &q);
    if !s.is_positive() {
        return Err(RealizeError::NotPerpendicularizable);
    }
    let inv = s.sqrt().recip();
    let mut n = scale4(&q, &inv);

    // future representative of every vertex, signed side of the cut
    let verts = rp.vertices()?;
    let signs: Vec<f64> = verts.iter().map(|p| mdot(p, &n).f64()).collect();
    const TOL: f64 = 1e-9;
    // every face not on the circuit must have all its vertices strictly on
    // one side; lower faces on a common side, upper on the other
    let mut lower_sign = 0.0f64;
    let mut upper_sign = 0.0f64;
    for f in 0..poly.face_count() {
        if sorted.contains(&f) {
            continue;
        }
        let mut fsign = 0.0f64;
        for (vi, tri) in poly.vertices().iter().enumerate() {
            if !tri.contains(&f) {
                continue;
            }
            let s = signs[vi];
            if s.abs() < TOL {
                return Err(RealizeError::StraddlingFace(poly.faces()[f].clone()));
            }
            if fsign == 0.0 {
                fsign = s.signum();
            } else if s.signum() != fsign {
                return Err(RealizeError::StraddlingFace(poly.faces()[f].clone()));
            }
        }
        let bucket = if side_set.contains(&f) {
            &mut lower_sign
        } else {
            &mut upper_sign
        };
        if *bucket == 0.0 {
            *bucket = fsign;
        } else if *bucket != fsign {
            return Err(RealizeError::Mutation(format!(
                "face {} is not on its assigned side of the cut",
                poly.faces()[f]
            )));
        }
    }
    if lower_sign == upper_sign {
        return Err(RealizeError::Mutation(
            "side partition does not separate the polyhedron across the cut".into(),
        ));
    }
    if lower_sign > 0.0 {
        n = neg4(&n);
    }
    Ok((n, signs))
}

/// R with R v_{order[i]} = v_{order[i+1]} (cyclic) and R n = n:
/// R = M' · M⁻¹ with column matrices M = [v0 v1 v2 n], M' = [v1 v2 v0 n].
fn rotation_for(
    rp: &RealizedPolyhedron,
    order: [usize; 3],
    n: &[Real; 4],
) -> Result<[[Real; 4]; 4], RealizeError> {
    let nv = rp.normals();
    let cols = [&nv[order[0]], &nv[order[1]], &nv[order[2]], n];
    let m: Vec<Vec<Real>> = (0..4)
        .map(|r| (0..4).map(|c| cols[c][r].clone()).collect())
        .collect();
    let minv = crate::linalg::mat_inv(&m).ok_or(RealizeError::DegenerateBasis)?;
    let cols2 = [&nv[order[1]], &nv[order[2]], &nv[order[0]], n];
    let mp: Vec<Vec<Real>> = (0..4)
        .map(|r| (0..4).map(|c| cols2[c][r].clone()).collect())
        .collect();
    let rot = crate::linalg::mat_mul(&mp, &minv);
    let mut out: [[Real; 4]; 4] = std::array::from_fn(|_| {
        std::array::from_fn(|_| Real::zero(rp.prec()))
    });
    for r in 0..4 {
        for c in 0..4 {
            out[r][c] = rot[r][c].clone();
        }
    }
    Ok(out)
}

fn apply(rot: &[[Real; 4]; 4], v: &[Real; 4]) -> [Real; 4] {
    std::array::from_fn(|r| {
        let s = &(&(&rot[r][0] * &v[0]) + &(&rot[r][1] * &v[1])) + &(&rot[r][2] * &v[2]);
        &s + &(&rot[r][3] * &v[3])
    })
}
