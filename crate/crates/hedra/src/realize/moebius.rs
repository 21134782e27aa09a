//! Boundary action of face reflections in the upper half-space model.
//!
//! The sphere at infinity of the hyperboloid model is {(X,Y,Z) : X²+Y²+Z²=1}
//! (directions of null rays); stereographic projection (X,Y,Z) ↦
//! (X+iY)/(1+Z), sending (0,0,−1) to ∞, identifies it with Ĉ = ∂(upper half
//! space). A face plane with unit spacelike normal v = (t,x,y,z) meets Ĉ in
//! the circle |ζ − z₀| = r with z₀ = (x+iy)/(z+t), r = 1/|z+t|, degenerating
//! to the line Re(w̄ζ) = t, w = x+iy, when z+t = 0. Reflection in the face
//! acts anti-holomorphically, ζ ↦ M·ζ̄ with M ∈ SL(2,ℂ); products of two
//! reflections are the Möbius maps M_i·conj(M_j).

use super::{mdot, RealizeError, RealizedPolyhedron};
use crate::cplx::{Cplx, M2};
use crate::prec::{Prec, Real};

/// Boundary trace of a hyperbolic plane on Ĉ.
pub enum BoundaryCurve {
    Circle { center: Cplx, r: Real },
    Line { w: Cplx, d: Real },
}

/// Relative threshold below which z+t is treated as exactly zero (the
/// plane passes through the projection pole).
const LINE_EPS: f64 = 1e-8;

pub fn boundary_curve(v: &[Real; 4]) -> BoundaryCurve {
    let s = &v[3] + &v[0];
    let scale = 1.0 + v[0].f64().abs();
    if s.f64().abs() < LINE_EPS * scale {
        // |x+iy| = 1 when z+t = 0 exactly; normalize to absorb rounding
        let m = &(&v[1] * &v[1]) + &(&v[2] * &v[2]);
        let inv = m.sqrt().recip();
        BoundaryCurve::Line {
            w: Cplx::new(&v[1] * &inv, &v[2] * &inv),
            d: &v[0] * &inv,
        }
    } else {
        let inv = s.recip();
        BoundaryCurve::Circle {
            center: Cplx::new(&v[1] * &inv, &v[2] * &inv),
            r: inv.abs(),
        }
    }
}

/// SL(2,ℂ) matrix M of the anti-Möbius reflection ζ ↦ M·ζ̄ in the plane
/// with unit spacelike normal v. M·conj(M) = I (an involution), det M = 1.
pub fn reflection_matrix(v: &[Real; 4]) -> M2 {
    match boundary_curve(v) {
        BoundaryCurve::Circle { center: z0, r } => {
            // inversion in |ζ−z₀| = r: ζ ↦ (z₀ζ̄ + r²−|z₀|²)/(ζ̄ − z̄₀),
            // matrix [[z₀, r²−|z₀|²],[1, −z̄₀]] / (ir)
            let r2 = &r * &r;
            let b = &r2 - &z0.norm_sqr();
            let p = r.prec();
            let inv_ir = Cplx::new(Real::zero(p), r.recip().neg()); // 1/(ir) = −i/r
            M2 {
                a: &z0 * &inv_ir,
                b: &Cplx::from_real(b) * &inv_ir,
                c: inv_ir.clone(),
                d: &z0.conj().neg() * &inv_ir,
            }
        }
        BoundaryCurve::Line { w, d } => {
            // reflection across Re(w̄ζ) = d (|w| = 1): ζ ↦ −w²ζ̄ + 2dw,
            // matrix [[iw, −2di],[0, −iw̄]]
            let p = d.prec();
            let two_d = &d + &d;
            M2 {
                a: w.mul_i(),
                b: Cplx::new(Real::zero(p), two_d.neg()),
                c: Cplx::zero(p),
                d: w.conj().mul_i().neg(),
            }
        }
    }
}

/// Reflection matrices for all faces of a realized polyhedron, conjugated
/// (via a global rational rotation of the normals — an isometry, so all
/// word traces are unchanged) so that every face is well clear of the
/// projection pole and the circle formula is well-conditioned.
pub fn generators(rp: &RealizedPolyhedron) -> Result<Vec<M2>, RealizeError> {
    let p = rp.prec();
    let normals = well_conditioned(rp.normals(), p)?;
    Ok(normals.iter().map(reflection_matrix).collect())
}

/// Apply the rational SO(3) rotation (Rx(3/5,4/5))^a · (Ry(5/13,12/13))^b —
/// a Lorentz map fixing t — that maximizes the worst conditioning margin
/// min_i |z_i + t_i| / (1 + |t_i|) over a, b ∈ {0,1,2,3}.
fn well_conditioned(
    normals: &[[Real; 4]],
    p: Prec,
) -> Result<Vec<[Real; 4]>, RealizeError> {
    let score = |rows: &[[f64; 4]]| -> f64 {
        rows.iter()
            .map(|v| (v[3] + v[0]).abs() / (1.0 + v[0].abs()))
            .fold(f64::INFINITY, f64::min)
    };
    let rot_f64 = |rows: &[[f64; 4]], a: usize, b: usize| -> Vec<[f64; 4]> {
        rows.iter()
            .map(|&[t, x, y, z]| {
                let (mut x, mut y, mut z) = (x, y, z);
                for _ in 0..a {
                    let (ny, nz) = (0.6 * y - 0.8 * z, 0.8 * y + 0.6 * z);
                    y = ny;
                    z = nz;
                }
                for _ in 0..b {
                    let (nx, nz) = ((5.0 * x + 12.0 * z) / 13.0, (-12.0 * x + 5.0 * z) / 13.0);
                    x = nx;
                    z = nz;
                }
                [t, x, y, z]
            })
            .collect()
    };
    let rows: Vec<[f64; 4]> = normals
        .iter()
        .map(|v| [v[0].f64(), v[1].f64(), v[2].f64(), v[3].f64()])
        .collect();
    let mut best = (0usize, 0usize);
    let mut best_score = f64::NEG_INFINITY;
    for a in 0..4 {
        for b in 0..4 {
            let s = score(&rot_f64(&rows, a, b));
            if s > best_score + 1e-12 {
                best_score = s;
                best = (a, b);
            }
        }
    }
    if best_score <= LINE_EPS {
        return Err(RealizeError::DegenerateBasis);
    }
    let (a, b) = best;
    let c1 = (Real::from_i64(3, p), Real::from_i64(4, p), Real::from_i64(5, p));
    let c2 = (Real::from_i64(5, p), Real::from_i64(12, p), Real::from_i64(13, p));
    let out = normals
        .iter()
        .map(|v| {
            let mut v = v.clone();
            for _ in 0..a {
                let ny = &(&(&v[2] * &c1.0) - &(&v[3] * &c1.1)) / &c1.2;
                let nz = &(&(&v[2] * &c1.1) + &(&v[3] * &c1.0)) / &c1.2;
                v[2] = ny;
                v[3] = nz;
            }
            for _ in 0..b {
                let nx = &(&(&v[1] * &c2.0) + &(&v[3] * &c2.1)) / &c2.2;
                let nz = &(&(&v[3] * &c2.0) - &(&v[1] * &c2.1)) / &c2.2;
                v[1] = nx;
                v[3] = nz;
            }
            v
        })
        .collect::<Vec<_>>();
    // sanity: the rotation is a Lorentz map, so pairwise products survive
    debug_assert!({
        let d0 = mdot(&normals[0], &normals[normals.len() - 1]).f64();
        let d1 = mdot(&out[0], &out[out.len() - 1]).f64();
        (d0 - d1).abs() < 1e-9 * (1.0 + d0.abs())
    });
    Ok(out)
}
