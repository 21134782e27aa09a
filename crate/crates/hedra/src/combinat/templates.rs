//! Half-polyhedron templates and gluing.
//!
//! A half is a polyhedron with a distinguished triangular `iface` face; the
//! three faces around it (`lat_0`, `lat_1`, `lat_2`) become the prismatic
//! circuit of the glued polyhedron. Every template is symmetric under a
//! reflection fixing `lat_0` and swapping `lat_1` with `lat_2`.
//!
//! Gluing two halves with rotational `offset` matches `lat_i` of the first
//! half to `lat_{(offset - i) mod 3}` of the second; this orientation-
//! reversing matching makes offset 0 the aligned (unmutated) gluing, and
//! offset 1 the canonical mutant. Offsets are taken mod 3.

use super::iso::find_isomorphism_forced;
use super::{AngledPolyhedron, CombinatError};
use std::collections::BTreeSet;

const TEMPLATE_A: &str = include_str!("../../templates/half_a.poly");
const TEMPLATE_B: &str = include_str!("../../templates/half_b.poly");
const TEMPLATE_C: &str = include_str!("../../templates/half_c.poly");

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum HalfKind {
    A,
    B,
    C,
}

impl HalfKind {
    pub fn letter(self) -> char {
        match self {
            HalfKind::A => 'A',
            HalfKind::B => 'B',
            HalfKind::C => 'C',
        }
    }

    fn template(self) -> &'static str {
        match self {
            HalfKind::A => TEMPLATE_A,
            HalfKind::B => TEMPLATE_B,
            HalfKind::C => TEMPLATE_C,
        }
    }

    /// Admissible circuit angle denominators. A and B close up only over
    /// q in {4, 5}; C accepts any hyperbolic circuit angle.
    pub fn admits_q(self, q: u32) -> bool {
        match self {
            HalfKind::A | HalfKind::B => q == 4 || q == 5,
            HalfKind::C => q >= 4,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Half {
    pub kind: HalfKind,
    pub q: u32,
    pub poly: AngledPolyhedron,
    pub iface: usize,
    pub laterals: [usize; 3],
}

/// Instantiate a half template at circuit angle pi/q.
pub fn build_half(kind: HalfKind, q: u32) -> Result<Half, CombinatError> {
    if !kind.admits_q(q) {
        return Err(CombinatError::MismatchedQ(format!(
            "half {} does not admit q = {}",
            kind.letter(),
            q
        )));
    }
    half_from_text(kind, q, kind.template())
}

/// Parse a template body (with `q` placeholders) into a half.
pub fn half_from_text(kind: HalfKind, q: u32, text: &str) -> Result<Half, CombinatError> {
    let qs = q.to_string();
    let substituted: String = text
        .lines()
        .map(|l| {
            l.split_whitespace()
                .map(|t| if t == "q" { qs.as_str() } else { t })
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect::<Vec<_>>()
        .join("\n");
    let poly = super::format::parse_text(&substituted)?;
    let iface = poly
        .face_index("iface")
        .ok_or_else(|| CombinatError::TemplateInvalid("no `iface` face".into()))?;
    let mut laterals = [0usize; 3];
    for (i, n) in ["lat_0", "lat_1", "lat_2"].iter().enumerate() {
        laterals[i] = poly
            .face_index(n)
            .ok_or_else(|| CombinatError::TemplateInvalid(format!("no `{n}` face")))?;
    }
    // interface must be the triangle over exactly the three laterals
    for &l in &laterals {
        if poly.edge_angle(iface, l) != Some(2) {
            return Err(CombinatError::TemplateInvalid(
                "iface must meet each lateral at a right angle".into(),
            ));
        }
    }
    let iface_deg = (0..poly.face_count()).filter(|&j| poly.adjacent(iface, j)).count();
    if iface_deg != 3 {
        return Err(CombinatError::TemplateInvalid(
            "iface must have exactly three edges".into(),
        ));
    }
    for i in 0..3 {
        let (a, b) = (laterals[i], laterals[(i + 1) % 3]);
        if poly.edge_angle(a, b) != Some(q) {
            return Err(CombinatError::TemplateInvalid(
                "laterals must meet pairwise at angle pi/q".into(),
            ));
        }
    }
    // reflection symmetry: fix iface and lat_0, swap lat_1 <-> lat_2
    let forced = [
        (iface, iface),
        (laterals[0], laterals[0]),
        (laterals[1], laterals[2]),
        (laterals[2], laterals[1]),
    ];
    if find_isomorphism_forced(&poly, &poly, &forced).is_none() {
        return Err(CombinatError::TemplateInvalid(
            "template lacks the lat_1 <-> lat_2 reflection symmetry".into(),
        ));
    }
    Ok(Half {
        kind,
        q,
        poly,
        iface,
        laterals,
    })
}

/// Cap faces (everything except iface and laterals), in template order.
fn caps(h: &Half) -> Vec<usize> {
    (0..h.poly.face_count())
        .filter(|&i| i != h.iface && !h.laterals.contains(&i))
        .collect()
}

/// Glue two halves along their interfaces with rotational offset.
pub fn glue(top: &Half, bottom: &Half, offset: u32) -> Result<AngledPolyhedron, CombinatError> {
    if top.q != bottom.q {
        return Err(CombinatError::MismatchedQ(format!(
            "top has q = {}, bottom has q = {}",
            top.q, bottom.q
        )));
    }
    let off = (offset % 3) as usize;
    let sigma = |i: usize| (off + 3 - i) % 3; // bottom lateral index on merged lat_i

    let top_caps = caps(top);
    let bot_caps = caps(bottom);
    let mut faces: Vec<String> = Vec::new();
    for &c in &top_caps {
        faces.push(format!("top_{}", top.poly.faces()[c]));
    }
    for i in 0..3 {
        faces.push(format!("lat_{i}"));
    }
    for &c in &bot_caps {
        faces.push(format!("bot_{}", bottom.poly.faces()[c]));
    }

    // face-name mapping for each half into the glued polyhedron
    let top_name = |i: usize| -> String {
        if let Some(k) = top.laterals.iter().position(|&l| l == i) {
            format!("lat_{k}")
        } else {
            format!("top_{}", top.poly.faces()[i])
        }
    };
    let bot_name = |i: usize| -> String {
        if let Some(k) = bottom.laterals.iter().position(|&l| l == i) {
            format!("lat_{}", sigma(k))
        } else {
            format!("bot_{}", bottom.poly.faces()[i])
        }
    };

    let mut edges: Vec<(String, String, u32)> = Vec::new();
    for i in 0..3 {
        edges.push((format!("lat_{i}"), format!("lat_{}", (i + 1) % 3), top.q));
    }
    for (i, j, n) in top.poly.edges() {
        if i == top.iface || j == top.iface {
            continue;
        }
        if top.laterals.contains(&i) && top.laterals.contains(&j) {
            continue; // seam edge, already added
        }
        edges.push((top_name(i), top_name(j), n));
    }
    for (i, j, n) in bottom.poly.edges() {
        if i == bottom.iface || j == bottom.iface {
            continue;
        }
        if bottom.laterals.contains(&i) && bottom.laterals.contains(&j) {
            continue;
        }
        edges.push((bot_name(i), bot_name(j), n));
    }

    let mut out = AngledPolyhedron::from_parts(faces, &edges)?;
    let lower: BTreeSet<usize> = bot_caps
        .iter()
        .map(|&c| {
            out.face_index(&format!("bot_{}", bottom.poly.faces()[c]))
                .expect("bottom cap face present")
        })
        .collect();
    let seam = [
        out.face_index("lat_0").unwrap(),
        out.face_index("lat_1").unwrap(),
        out.face_index("lat_2").unwrap(),
    ];
    out.lower_side = Some(lower);
    out.seam = Some(seam);
    Ok(out)
}

/// Parsed polyhedron name: two half kinds, circuit q, mutant flag.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PolyName {
    pub top: HalfKind,
    pub bottom: HalfKind,
    pub q: u32,
    pub mutant: bool,
}

impl PolyName {
    pub fn parse(name: &str) -> Result<Self, CombinatError> {
        let bad = || CombinatError::BadName(name.to_string());
        let bytes = name.as_bytes();
        if bytes.len() < 3 {
            return Err(bad());
        }
        let kind = |b: u8| match b {
            b'A' => Some(HalfKind::A),
            b'B' => Some(HalfKind::B),
            b'C' => Some(HalfKind::C),
            _ => None,
        };
        let top = kind(bytes[0]).ok_or_else(bad)?;
        let bottom = kind(bytes[1]).ok_or_else(bad)?;
        let rest = &name[2..];
        let (digits, mutant) = match rest.strip_suffix('m') {
            Some(d) => (d, true),
            None => (rest, false),
        };
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let q: u32 = digits.parse().map_err(|_| bad())?;
        Ok(PolyName {
            top,
            bottom,
            q,
            mutant,
        })
    }
}

impl std::fmt::Display for PolyName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{}{}{}{}",
            self.top.letter(),
            self.bottom.letter(),
            self.q,
            if self.mutant { "m" } else { "" }
        )
    }
}

/// Build a polyhedron from its name (e.g. "AA5", "BC4m").
pub fn build_named(name: &str) -> Result<AngledPolyhedron, CombinatError> {
    let pn = PolyName::parse(name)?;
    let top = build_half(pn.top, pn.q)?;
    let bottom = build_half(pn.bottom, pn.q)?;
    glue(&top, &bottom, if pn.mutant { 1 } else { 0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::iso;

    #[test]
    fn name_parsing() {
        let n = PolyName::parse("BC12m").unwrap();
        assert_eq!(
            n,
            PolyName {
                top: HalfKind::B,
                bottom: HalfKind::C,
                q: 12,
                mutant: true
            }
        );
        assert!(PolyName::parse("AD5").is_err());
        assert!(PolyName::parse("AA").is_err());
        assert!(PolyName::parse("AA5x").is_err());
        assert_eq!(n.to_string(), "BC12m");
    }

    #[test]
    fn aa5_glue_shape() {
        let p = build_named("AA5").unwrap();
        assert_eq!(p.face_count(), 5); // 5 + 5 - 5
        assert_eq!(p.vertices().len(), 6);
        assert!(p.validate().ok());
        // both pi/3 cap edges land on the same lateral for offset 0
        let top = p.face_index("top_cap").unwrap();
        let bot = p.face_index("bot_cap").unwrap();
        let l0 = p.face_index("lat_0").unwrap();
        assert_eq!(p.edge_angle(top, l0), Some(3));
        assert_eq!(p.edge_angle(bot, l0), Some(3));
    }

    #[test]
    fn aa5m_is_twisted() {
        let p = build_named("AA5m").unwrap();
        let top = p.face_index("top_cap").unwrap();
        let bot = p.face_index("bot_cap").unwrap();
        let l0 = p.face_index("lat_0").unwrap();
        let l1 = p.face_index("lat_1").unwrap();
        assert_eq!(p.edge_angle(top, l0), Some(3));
        assert_eq!(p.edge_angle(bot, l1), Some(3));
        assert!(!iso::isomorphic(&p, &build_named("AA5").unwrap()));
    }

    #[test]
    fn mutation_matches_offset_gluing() {
        let p = build_named("AA5").unwrap();
        let pm = build_named("AA5m").unwrap();
        let seam = p.seam().unwrap();
        let m = p.mutate(seam, None).unwrap();
        assert!(iso::isomorphic(&m, &pm));
        // mutating twice gives offset 2, which is the mirror of offset 1:
        // still isomorphic to the mutant, not to the original
        let m2 = m.mutate(seam, None).unwrap();
        assert!(iso::isomorphic(&m2, &pm));
        assert!(!iso::isomorphic(&m2, &p));
        // three mutations return to the start
        let m3 = m2.mutate(seam, None).unwrap();
        assert!(iso::isomorphic(&m3, &p));
    }

    #[test]
    fn mismatched_q_rejected() {
        let a4 = build_half(HalfKind::A, 4).unwrap();
        let a5 = build_half(HalfKind::A, 5).unwrap();
        assert!(matches!(
            glue(&a4, &a5, 0),
            Err(CombinatError::MismatchedQ(_))
        ));
        assert!(build_half(HalfKind::A, 6).is_err());
        assert!(build_half(HalfKind::A, 3).is_err());
    }
}
