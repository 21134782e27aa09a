//! Invariant-computation tests for the AA family, whose trace fields,
//! integral-trace flags, and arithmeticity are known.

use hedra::algnum::{AlgebraicNumber, IntPoly, NumberField};
use hedra::combinat::templates::build_named;
use hedra::cplx::Cplx;
use hedra::invariants::{
    analyze, commensurability_verdict, sample_traces, InvariantReport, ItfConfig, Verdict,
};
use hedra::prec::{Prec, Real};
use hedra::realize::{realize, RealizedPolyhedron};

fn cfg() -> ItfConfig {
    ItfConfig::default()
}

fn realized(name: &str) -> RealizedPolyhedron {
    realize(&build_named(name).unwrap(), 50).unwrap()
}

/// Refine a printed approximate root on its polynomial at high precision.
fn table_root(poly: &IntPoly, re: &str, im: &str, p: Prec) -> Cplx {
    let x0 = Cplx::new(
        Real::parse_dec(re, p).unwrap(),
        Real::parse_dec(im, p).unwrap(),
    );
    poly.newton_refine(&x0, p, 64)
}

fn assert_field_matches(rep: &InvariantReport, poly_coeffs: &[i64], re: &str, im: &str) {
    let poly = IntPoly::from_i64(poly_coeffs).unwrap();
    assert_eq!(rep.itf_poly.degree(), poly.degree(), "ITF degree mismatch");
    let p = rep.itf_root.re.prec();
    let root = table_root(&poly, re, im, p);
    assert!(
        rep.itf.contains(&root, rep.provenance.digits).is_some(),
        "computed field does not contain the reference root"
    );
    // and the reference field contains our primitive element
    let reference = NumberField::from_primitive(AlgebraicNumber::from_parts(poly, root));
    assert!(
        reference.contains(&rep.itf_root, rep.provenance.digits).is_some(),
        "reference field does not contain the computed generator"
    );
}

#[test]
fn aa5_pair_invariants() {
    let rep = analyze(&realized("AA5"), &cfg()).unwrap();
    let repm = analyze(&realized("AA5m"), &cfg()).unwrap();
    // common degree-4 ITF x^4 - 2x^3 - x^2 + 2x - 19
    let coeffs = [-19, 2, -1, -2, 1];
    let (re, im) = ("0.5", "-1.795030906419045");
    assert_field_matches(&rep, &coeffs, re, im);
    assert_field_matches(&repm, &coeffs, re, im);
    assert!(rep.itf.equals(&repm.itf, 50), "mutant pair ITFs differ");

    // both have non-integral traces, witnessed by the cap-cap Gram entries
    assert!(!rep.integral_traces);
    assert!(!repm.integral_traces);
    let w: Vec<String> = rep.integral_witnesses.iter().map(|w| w.minpoly.to_string()).collect();
    assert!(w.contains(&"5x^2 + 15x + 9".to_string()), "alpha witness missing: {w:?}");
    let wm: Vec<String> = repm.integral_witnesses.iter().map(|w| w.minpoly.to_string()).collect();
    assert!(wm.contains(&"5x^2 + 20x + 19".to_string()), "beta witness missing: {wm:?}");

    // quaternion-algebra shape from a (pi/3, pi/5) vertex; not arithmetic
    for r in [&rep, &repm] {
        let s = r.iqa.expect("AA5 family has two large angles at a vertex");
        assert_eq!((s.a, s.b), (-1, -1));
        assert_eq!(r.arithmetic, Some(false));
    }
    assert_eq!(commensurability_verdict(&rep, &repm), Verdict::Unknown);
}

#[test]
fn aa4_pair_invariants() {
    let rep = analyze(&realized("AA4"), &cfg()).unwrap();
    let repm = analyze(&realized("AA4m"), &cfg()).unwrap();
    let coeffs = [-2, -4, -2, 0, 1];
    let (re, im) = ("-0.7071067811865475", "0.9561451575849219");
    assert_field_matches(&rep, &coeffs, re, im);
    assert_field_matches(&repm, &coeffs, re, im);
    assert!(rep.itf.equals(&repm.itf, 50));

    assert!(rep.integral_traces);
    assert!(!repm.integral_traces);
    assert_eq!(rep.arithmetic, Some(true));
    assert_eq!(repm.arithmetic, Some(false));
    match commensurability_verdict(&rep, &repm) {
        Verdict::Distinguished(reason) => assert!(reason.contains("integral")),
        v => panic!("expected Distinguished, got {v:?}"),
    }
}

#[test]
fn squared_two_letter_words_give_elliptic_traces() {
    let rp = realized("AA5").refine(80).unwrap();
    let poly = rp.combinatorics().clone();
    let samples = sample_traces(&rp, 2).unwrap();
    let p = Prec::digits(80);
    let tol = Real::parse_dec("1e-40", p).unwrap();
    let mut seen_edges = 0;
    for s in &samples {
        if s.word.len() != 4 || s.word[0] != s.word[2] || s.word[1] != s.word[3] {
            continue;
        }
        let (i, j) = (s.word[0], s.word[1]);
        // non-adjacent faces give hyperbolic products; only edges are elliptic
        let Some(n) = poly.edge_angle(i, j) else {
            continue;
        };
        // trace of (r_i r_j)^2 = 2cos(2pi/n)
        let c = Real::cos_pi_frac(2, n as i64, p);
        let expect = &c + &c;
        let diff = (&s.trace.re - &expect).abs();
        assert!(diff.lt(&tol), "edge ({i},{j}) n={n}: trace off by 10^{}", diff.log10_abs());
        assert!(s.trace.im.abs().lt(&tol));
        seen_edges += 1;
    }
    assert!(seen_edges >= 3, "expected several distinct elliptic traces");
}
