//! Commensurability invariants of the reflection group of a realized
//! polyhedron: invariant trace field, integral-trace flag, the
//! two-large-angles quaternion-algebra shape, arithmeticity, and pairwise
//! verdicts.

pub mod words;

pub use words::TraceSample;

use thiserror::Error;

use crate::algnum::{join_value, recognize_minpoly_real, AlgError, IntPoly, NumberField};
use crate::combinat::AngledPolyhedron;
use crate::cplx::{Cplx, M2};
use crate::prec::Real;
use crate::realize::{moebius, RealizeError, RealizedPolyhedron};
use words::TraceSampler;

/// Traces of w^2 for all cyclically reduced even reflection words w with
/// |w| <= max_len, plus traces of pairwise products u^2 w^2 for words of
/// length <= 4, deduplicated by numeric fingerprint.
pub fn sample_traces(
    r: &RealizedPolyhedron,
    max_len: usize,
) -> Result<Vec<TraceSample>, InvarError> {
    let gens = moebius::generators(r)?;
    Ok(words::sample_traces_from(gens, max_len))
}

#[derive(Debug, Error)]
pub enum InvarError {
    #[error(transparent)]
    Realize(#[from] RealizeError),
    #[error(transparent)]
    Algebra(#[from] AlgError),
    #[error("trace field failed to stabilize by word length {cap}")]
    Unstabilized { cap: usize },
    #[error("indeterminate: {0}")]
    Indeterminate(String),
}

/// Tuning for trace-field computation.
#[derive(Clone, Debug)]
pub struct ItfConfig {
    /// Recognition precision in decimal digits; traces are evaluated at
    /// roughly twice this many digits.
    pub digits: usize,
    /// Degree cap for minimal-polynomial recognition.
    pub dmax: usize,
    /// Budget of membership checks per word-length round (scaled down
    /// internally as the field degree grows, since each check is a lattice
    /// reduction whose cost rises steeply with degree).
    pub budget: usize,
    /// Cap on the word length ladder (4, 6, 8, ... up to this length).
    pub max_len: usize,
}

impl Default for ItfConfig {
    fn default() -> Self {
        ItfConfig {
            digits: 60,
            dmax: 20,
            budget: 1200,
            max_len: 12,
        }
    }
}

/// Rounds with no field change required to declare stabilization.
const STABLE_ROUNDS: usize = 2;

#[derive(Clone, Debug)]
pub struct RoundInfo {
    pub max_len: usize,
    pub new_samples: usize,
    pub checked: usize,
    pub changed: bool,
}

#[derive(Clone, Debug)]
pub struct ItfOutcome {
    pub field: NumberField,
    pub rounds: Vec<RoundInfo>,
    pub sample_count: usize,
    pub max_len: usize,
    /// Enumeration or dedup hit an internal cap; the sample set is partial.
    pub truncated: bool,
}

/// Compute the invariant trace field by sampling traces of squared even
/// words, recognizing them, and joining the fields they generate; the word
/// length grows from 4 in steps of 2 until the field is unchanged for two
/// consecutive rounds (cap 12).
pub fn itf(r: &RealizedPolyhedron, cfg: &ItfConfig) -> Result<ItfOutcome, InvarError> {
    let needed = 2 * cfg.digits + 15;
    let refined;
    let rr = if r.digits() >= needed {
        r
    } else {
        refined = r.refine(needed)?;
        &refined
    };
    let gens = moebius::generators(rr)?;
    itf_from_generators(gens, cfg)
}

pub(crate) fn itf_from_generators(gens: Vec<M2>, cfg: &ItfConfig) -> Result<ItfOutcome, InvarError> {
    let p = gens[0].a.re.prec();
    let mut sampler = TraceSampler::new(gens);
    let mut field = NumberField::rationals(p);
    let mut rounds = Vec::new();
    let mut sample_count = 0usize;
    let mut unchanged = 0usize;
    let ladder: Vec<usize> = (2..).map(|k| 2 * k).take_while(|&l| l <= cfg.max_len.max(4)).collect();
    for (i, &len) in ladder.iter().enumerate() {
        let mut elems = Vec::new();
        if i == 0 {
            elems.extend(sampler.new_squares(2));
            elems.extend(sampler.new_squares(4));
            elems.extend(sampler.new_pairs());
        } else {
            elems.extend(sampler.new_squares(len));
        }
        sample_count += elems.len();
        // cost of one membership check grows ~cubically with degree; shrink
        // the per-round budget accordingly, but keep a useful floor
        let scale = (field.degree() * field.degree() / 16).max(1);
        let budget = (cfg.budget / scale).max(64);
        let mut checked = 0usize;
        let mut changed = false;
        for e in &elems {
            if checked >= budget {
                break;
            }
            checked += 1;
            let s = sampler.sample(e);
            let before = field.degree();
            field = join_value(field, &s.trace, cfg.dmax, cfg.digits)?;
            if field.degree() != before {
                changed = true;
            }
        }
        rounds.push(RoundInfo {
            max_len: len,
            new_samples: elems.len(),
            checked,
            changed,
        });
        if changed {
            unchanged = 0;
        } else {
            unchanged += 1;
        }
        if unchanged >= STABLE_ROUNDS {
            return Ok(ItfOutcome {
                field,
                rounds,
                sample_count,
                max_len: len,
                truncated: sampler.truncated(),
            });
        }
    }
    Err(InvarError::Unstabilized {
        cap: *ladder.last().unwrap(),
    })
}

/// A Gram entry whose recognized minimal polynomial is not monic.
#[derive(Clone, Debug)]
pub struct EntryWitness {
    pub i: usize,
    pub j: usize,
    pub minpoly: IntPoly,
}

#[derive(Clone, Debug)]
pub struct IntegralityReport {
    pub integral: bool,
    pub witnesses: Vec<EntryWitness>,
}

/// Recognize every off-diagonal Gram entry; the traces are integral iff
/// every entry is an algebraic integer (monic minimal polynomial).
/// Entries must carry roughly twice `digits` accurate digits.
pub fn has_integral_traces(
    gram: &[Vec<Real>],
    dmax: usize,
    digits: usize,
) -> Result<IntegralityReport, InvarError> {
    let n = gram.len();
    let mut witnesses = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for i in 0..n {
        for j in i + 1..n {
            let entry = &gram[i][j];
            let key = entry.to_dec_digits(digits.min(40));
            if !seen.insert(key) {
                continue;
            }
            let m = recognize_minpoly_real(entry, dmax, digits).map_err(|e| match e {
                AlgError::NoRelation { .. } => InvarError::Indeterminate(format!(
                    "gram entry ({i}, {j}) not recognized as algebraic"
                )),
                other => InvarError::Algebra(other),
            })?;
            if !m.is_monic() {
                witnesses.push(EntryWitness { i, j, minpoly: m });
            }
        }
    }
    Ok(IntegralityReport {
        integral: witnesses.is_empty(),
        witnesses,
    })
}

/// Hilbert symbol (a, b) over the invariant trace field, with the
/// witnessing vertex and its two large edge labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HilbertSymbol {
    pub a: i64,
    pub b: i64,
    pub vertex: [usize; 3],
    pub labels: [u32; 2],
}

/// The quaternion-algebra shape from the two-large-angles condition: if some
/// vertex has two incident edges with angle denominators n, m >= 3, the
/// algebra is (-1, -1) over the trace field. Otherwise unknown (None).
pub fn iqa_symbol(poly: &AngledPolyhedron) -> Option<HilbertSymbol> {
    for v in poly.vertices() {
        let [i, j, k] = *v;
        let ns = [
            poly.edge_angle(i, j).unwrap_or(2),
            poly.edge_angle(i, k).unwrap_or(2),
            poly.edge_angle(j, k).unwrap_or(2),
        ];
        let big: Vec<u32> = ns.iter().copied().filter(|&n| n >= 3).collect();
        if big.len() >= 2 {
            return Some(HilbertSymbol {
                a: -1,
                b: -1,
                vertex: *v,
                labels: [big[0], big[1]],
            });
        }
    }
    None
}

#[derive(Clone, Debug)]
pub struct Provenance {
    pub digits: usize,
    pub max_len: usize,
    pub sample_count: usize,
    pub rounds: usize,
}

#[derive(Clone, Debug)]
pub struct InvariantReport {
    pub itf: NumberField,
    pub itf_poly: IntPoly,
    pub itf_root: Cplx,
    pub integral_traces: bool,
    pub integral_witnesses: Vec<EntryWitness>,
    pub iqa: Option<HilbertSymbol>,
    /// None when the quaternion-algebra shape is unknown (iqa absent), in
    /// which case the arithmeticity criterion does not apply.
    pub arithmetic: Option<bool>,
    pub provenance: Provenance,
}

/// Arithmeticity decision: requires the (-1, -1) algebra shape; then the
/// group is flagged arithmetic iff traces are integral and the trace field
/// has exactly one complex place.
pub fn is_arithmetic(report: &InvariantReport) -> Result<bool, InvarError> {
    if report.iqa.is_none() {
        return Err(InvarError::Indeterminate(
            "quaternion-algebra shape unknown (no vertex with two angles pi/n, n >= 3)".into(),
        ));
    }
    Ok(report.integral_traces && report.itf_poly.complex_place_count() == 1)
}

/// Full invariant computation for one realized polyhedron.
pub fn analyze(r: &RealizedPolyhedron, cfg: &ItfConfig) -> Result<InvariantReport, InvarError> {
    let needed = 2 * cfg.digits + 15;
    let refined;
    let rr = if r.digits() >= needed {
        r
    } else {
        refined = r.refine(needed)?;
        &refined
    };
    let gens = moebius::generators(rr)?;
    let out = itf_from_generators(gens, cfg)?;
    let integ = has_integral_traces(&rr.gram(), cfg.dmax, cfg.digits)?;
    let iqa = iqa_symbol(rr.combinatorics());
    let mut report = InvariantReport {
        itf_poly: out.field.minpoly().clone(),
        itf_root: out.field.theta().approx().clone(),
        itf: out.field,
        integral_traces: integ.integral,
        integral_witnesses: integ.witnesses,
        iqa,
        arithmetic: None,
        provenance: Provenance {
            digits: cfg.digits,
            max_len: out.max_len,
            sample_count: out.sample_count,
            rounds: out.rounds.len(),
        },
    };
    report.arithmetic = is_arithmetic(&report).ok();
    Ok(report)
}

/// Pairwise commensurability verdict: mismatched invariants distinguish the
/// groups; matching invariants prove nothing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Distinguished(String),
    Unknown,
}

pub fn commensurability_verdict(a: &InvariantReport, b: &InvariantReport) -> Verdict {
    if a.integral_traces != b.integral_traces {
        return Verdict::Distinguished("integral-trace mismatch".into());
    }
    let digits = a.provenance.digits.min(b.provenance.digits);
    if !a.itf.equals(&b.itf, digits) {
        return Verdict::Distinguished("invariant trace field mismatch".into());
    }
    Verdict::Unknown
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::AngledPolyhedron;

    fn cube() -> AngledPolyhedron {
        // all-right-angled combinatorial cube
        let faces = ["f0", "f1", "f2", "f3", "f4", "f5"];
        let mut edges = Vec::new();
        // f0 bottom, f5 top, f1..f4 the sides in a cycle
        for i in 1..=4 {
            edges.push((format!("f{i}"), format!("f{}", i % 4 + 1), 2u32));
            edges.push(("f0".to_string(), format!("f{i}"), 2u32));
            edges.push(("f5".to_string(), format!("f{i}"), 2u32));
        }
        AngledPolyhedron::from_parts(faces.iter().map(|s| s.to_string()).collect(), &edges)
            .unwrap()
    }

    #[test]
    fn all_right_angles_give_no_symbol() {
        assert!(iqa_symbol(&cube()).is_none());
    }

    #[test]
    fn aa5_has_symbol_with_two_large_labels() {
        let p = crate::combinat::templates::build_named("AA5").unwrap();
        let s = iqa_symbol(&p).unwrap();
        assert_eq!((s.a, s.b), (-1, -1));
        assert!(s.labels.iter().all(|&n| n >= 3));
    }
}
