//! Scratch probe for invariant computations during development.

use std::time::Instant;

use hedra::combinat::templates::build_named;
use hedra::invariants::{analyze, commensurability_verdict, ItfConfig};
use hedra::realize::realize;

fn main() {
    let cfg = ItfConfig::default();
    let mut reports = Vec::new();
    for name in ["AA5", "AA5m", "AA4", "AA4m"] {
        let t0 = Instant::now();
        let poly = build_named(name).unwrap();
        let rp = realize(&poly, 50).unwrap();
        let t1 = Instant::now();
        let rep = analyze(&rp, &cfg).unwrap();
        let t2 = Instant::now();
        println!(
            "{name}: realize {:?}, analyze {:?}",
            t1.duration_since(t0),
            t2.duration_since(t1)
        );
        println!("  itf degree {} poly {}", rep.itf_poly.degree(), rep.itf_poly);
        println!(
            "  root ~ {} + {}i",
            rep.itf_root.re.to_dec_digits(17),
            rep.itf_root.im.to_dec_digits(17)
        );
        println!(
            "  integral {} witnesses {:?}",
            rep.integral_traces,
            rep.integral_witnesses
                .iter()
                .map(|w| w.minpoly.to_string())
                .collect::<Vec<_>>()
        );
        println!("  iqa {:?} arithmetic {:?}", rep.iqa, rep.arithmetic);
        println!(
            "  provenance: samples {} maxlen {} rounds {}",
            rep.provenance.sample_count, rep.provenance.max_len, rep.provenance.rounds
        );
        reports.push(rep);
    }
    println!(
        "verdict AA5/AA5m: {:?}",
        commensurability_verdict(&reports[0], &reports[1])
    );
    println!(
        "verdict AA4/AA4m: {:?}",
        commensurability_verdict(&reports[2], &reports[3])
    );
}
