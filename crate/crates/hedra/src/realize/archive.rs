//! Lossless realization archive (JSON) and OFF mesh export.
//!
//! The archive stores the combinatorics by face name, the normals as
//! decimal strings at full working precision, and enough metadata (gauge
//! tag, solver seed, precision) to reproduce or verify the realization.

use serde::{Deserialize, Serialize};

use super::solver::SOLVER_SEED;
use super::{equations, residual_big, unit_eq_skip, RealizeError, RealizedPolyhedron};
use crate::combinat::AngledPolyhedron;
use crate::prec::{Prec, Real};

/// Identifies the gauge convention the stored normals satisfy.
pub const GAUGE_TAG: &str = "anchor-vertex-zero-pattern-v1";

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Archive {
    pub gauge: String,
    pub solver_seed: String,
    pub digits: usize,
    pub faces: Vec<String>,
    pub edges: Vec<(String, String, u32)>,
    pub anchors: [usize; 3],
    pub normals: Vec<[String; 4]>,
    pub residual_log10: f64,
}

pub fn to_archive(rp: &RealizedPolyhedron) -> Archive {
    let poly = rp.combinatorics();
    let edges = poly
        .edges()
        .map(|(i, j, n)| (poly.faces()[i].clone(), poly.faces()[j].clone(), n))
        .collect();
    Archive {
        gauge: GAUGE_TAG.to_string(),
        solver_seed: format!("{:#x}", SOLVER_SEED),
        digits: rp.digits(),
        faces: poly.faces().to_vec(),
        edges,
        anchors: rp.anchors(),
        normals: rp
            .normals()
            .iter()
            .map(|v| std::array::from_fn(|k| v[k].to_dec()))
            .collect(),
        residual_log10: rp.residual_log10(),
    }
}

pub fn save_json(rp: &RealizedPolyhedron) -> Result<String, RealizeError> {
    serde_json::to_string_pretty(&to_archive(rp)).map_err(|e| RealizeError::Archive(e.to_string()))
}

pub fn load_json(text: &str) -> Result<RealizedPolyhedron, RealizeError> {
    let a: Archive =
        serde_json::from_str(text).map_err(|e| RealizeError::Archive(e.to_string()))?;
    from_archive(&a)
}

pub fn from_archive(a: &Archive) -> Result<RealizedPolyhedron, RealizeError> {
    if a.gauge != GAUGE_TAG {
        return Err(RealizeError::Archive(format!(
            "unsupported gauge tag {:?} (expected {:?})",
            a.gauge, GAUGE_TAG
        )));
    }
    let poly = AngledPolyhedron::from_parts(a.faces.clone(), &a.edges)
        .map_err(|e| RealizeError::Archive(e.to_string()))?;
    if a.normals.len() != poly.face_count() {
        return Err(RealizeError::Archive("normal count != face count".into()));
    }
    let p = Prec::digits(a.digits + 15);
    let normals: Vec<[Real; 4]> = a
        .normals
        .iter()
        .map(|row| {
            let parsed: Option<Vec<Real>> =
                row.iter().map(|s| Real::parse_dec(s, p)).collect();
            parsed
                .map(|v| [v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()])
                .ok_or_else(|| RealizeError::Archive("unparseable normal entry".into()))
        })
        .collect::<Result<_, _>>()?;
    // verify: the stored normals must still solve the stored combinatorics
    let eqs = equations(&poly, unit_eq_skip(a.anchors));
    let cos_cache: std::collections::BTreeMap<u32, Real> = poly
        .edges()
        .map(|(_, _, n)| n)
        .collect::<std::collections::BTreeSet<u32>>()
        .into_iter()
        .map(|n| (n, Real::cos_pi_frac(1, n as i64, p)))
        .collect();
    let cos_big = |n: u32| cos_cache[&n].clone();
    let r = residual_big(&eqs, &normals, &cos_big, p);
    let rmax = r
        .iter()
        .map(|v| v.log10_abs())
        .fold(f64::NEG_INFINITY, f64::max);
    if rmax > -(a.digits as f64) + 10.0 {
        return Err(RealizeError::Archive(format!(
            "stored normals have residual 10^{rmax:.1}, too large for {} digits",
            a.digits
        )));
    }
    let out = RealizedPolyhedron {
        combinatorics: poly,
        normals,
        digits: a.digits,
        anchors: a.anchors,
        residual_log10: rmax,
        newton_history: Vec::new(),
    };
    out.verify_compact()?;
    Ok(out)
}

/// OFF mesh of the polyhedron in the Klein model (p ↦ spatial(p)/p_t),
/// where the convex hyperbolic polyhedron maps to a convex Euclidean one.
pub fn export_off(rp: &RealizedPolyhedron) -> Result<String, RealizeError> {
    let poly = rp.combinatorics();
    let verts = rp.vertices()?;
    let pts: Vec<[f64; 3]> = verts
        .iter()
        .map(|p| {
            let t = p[0].f64();
            [p[1].f64() / t, p[2].f64() / t, p[3].f64() / t]
        })
        .collect();
    let centroid = {
        let mut c = [0.0f64; 3];
        for p in &pts {
            for k in 0..3 {
                c[k] += p[k];
            }
        }
        c.map(|v| v / pts.len() as f64)
    };
    let mut rings = Vec::with_capacity(poly.face_count());
    for f in 0..poly.face_count() {
        let mut ring = face_ring(poly, f)?;
        orient_outward(&mut ring, &pts, &centroid);
        rings.push(ring);
    }
    let nedges = poly.edges().count();
    let mut out = String::new();
    out.push_str("OFF\n");
    out.push_str(&format!("{} {} {}\n", pts.len(), rings.len(), nedges));
    for p in &pts {
        out.push_str(&format!("{:.17} {:.17} {:.17}\n", p[0], p[1], p[2]));
    }
    for ring in &rings {
        out.push_str(&ring.len().to_string());
        for v in ring {
            out.push_str(&format!(" {v}"));
        }
        out.push('\n');
    }
    Ok(out)
}

/// Cyclic vertex order around face `f`: consecutive vertices share a second
/// face (the edge they span lies on `f`).
fn face_ring(poly: &AngledPolyhedron, f: usize) -> Result<Vec<usize>, RealizeError> {
    let tris = poly.vertices();
    let on_face: Vec<usize> = (0..tris.len()).filter(|&v| tris[v].contains(&f)).collect();
    let consecutive = |u: usize, v: usize| -> bool {
        tris[u].iter().filter(|x| tris[v].contains(x)).count() == 2
    };
    let mut ring = vec![on_face[0]];
    while ring.len() < on_face.len() {
        let cur = *ring.last().unwrap();
        let next = on_face
            .iter()
            .copied()
            .find(|&v| !ring.contains(&v) && consecutive(cur, v));
        match next {
            Some(v) => ring.push(v),
            None => {
                return Err(RealizeError::Archive(format!(
                    "face {} vertex ring does not close",
                    poly.faces()[f]
                )))
            }
        }
    }
    if ring.len() < 3 || !consecutive(*ring.last().unwrap(), ring[0]) {
        return Err(RealizeError::Archive(format!(
            "face {} vertex ring does not close",
            poly.faces()[f]
        )));
    }
    Ok(ring)
}

fn orient_outward(ring: &mut Vec<usize>, pts: &[[f64; 3]], centroid: &[f64; 3]) {
    // Newell normal
    let mut n = [0.0f64; 3];
    let mut face_c = [0.0f64; 3];
    for i in 0..ring.len() {
        let p = pts[ring[i]];
        let q = pts[ring[(i + 1) % ring.len()]];
        n[0] += (p[1] - q[1]) * (p[2] + q[2]);
        n[1] += (p[2] - q[2]) * (p[0] + q[0]);
        n[2] += (p[0] - q[0]) * (p[1] + q[1]);
        for k in 0..3 {
            face_c[k] += p[k] / ring.len() as f64;
        }
    }
    let dot: f64 = (0..3).map(|k| n[k] * (face_c[k] - centroid[k])).sum();
    if dot < 0.0 {
        ring.reverse();
    }
}
