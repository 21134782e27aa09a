//! Enumeration of even reflection words and the traces of their Möbius
//! matrices, with a cheap f64 first pass for deduplication and a
//! full-precision second pass for the distinct representatives.

use std::collections::HashSet;

use num_complex::Complex64;

use crate::cplx::{Cplx, M2};
use crate::prec::{Prec, Real};

/// An element of the orientation-preserving subgroup, given by its even
/// reflection word, with the trace of its Möbius matrix.
#[derive(Clone, Debug)]
pub struct TraceSample {
    pub word: Vec<usize>,
    pub trace: Cplx,
}

/// Memory guard: stop recording new fingerprints past this many.
const SEEN_CAP: usize = 400_000;
/// Enumeration guard: stop a round's DFS past this many nodes.
const NODE_CAP: u64 = 400_000_000;

#[derive(Clone, Copy)]
struct M64 {
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
}

impl M64 {
    fn from_full(m: &M2) -> Self {
        let c = |x: &Cplx| Complex64::new(x.re.f64(), x.im.f64());
        M64 {
            a: c(&m.a),
            b: c(&m.b),
            c: c(&m.c),
            d: c(&m.d),
        }
    }

    fn mul(&self, o: &M64) -> M64 {
        M64 {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    fn conj(&self) -> M64 {
        M64 {
            a: self.a.conj(),
            b: self.b.conj(),
            c: self.c.conj(),
            d: self.d.conj(),
        }
    }

    fn trace(&self) -> Complex64 {
        self.a + self.d
    }
}

/// Deterministic fingerprint of a complex value at ~10 significant digits;
/// components below 1e-12 of the overall scale are snapped to zero.
fn fingerprint(z: Complex64) -> String {
    let scale = 1.0 + z.norm();
    let snap = |x: f64| if x.abs() < 1e-12 * scale { 0.0 } else { x };
    format!("{:+.10e} {:+.10e}", snap(z.re), snap(z.im))
}

/// The element a recorded word stands for.
#[derive(Clone, Debug)]
pub(crate) enum Elem {
    /// w^2 for an even word w.
    Square(Vec<usize>),
    /// u^2 w^2 for even words u, w.
    Pair(Vec<usize>, Vec<usize>),
}

impl Elem {
    fn expanded(&self) -> Vec<usize> {
        match self {
            Elem::Square(w) => [w.as_slice(), w.as_slice()].concat(),
            Elem::Pair(u, w) => [u.as_slice(), u.as_slice(), w.as_slice(), w.as_slice()].concat(),
        }
    }
}

/// Incremental sampler over one polyhedron's reflection generators.
pub(crate) struct TraceSampler {
    full: Vec<M2>,
    shadow: Vec<M64>,
    p: Prec,
    seen: HashSet<String>,
    nodes: u64,
    truncated: bool,
}

impl TraceSampler {
    pub fn new(gens: Vec<M2>) -> Self {
        let p = gens[0].a.re.prec();
        let shadow = gens.iter().map(M64::from_full).collect();
        TraceSampler {
            full: gens,
            shadow,
            p,
            seen: HashSet::new(),
            nodes: 0,
            truncated: false,
        }
    }

    pub fn truncated(&self) -> bool {
        self.truncated
    }

    fn record(&mut self, t: Complex64, elem: Elem, out: &mut Vec<Elem>) {
        if self.seen.len() >= SEEN_CAP {
            self.truncated = true;
            return;
        }
        if self.seen.insert(fingerprint(t)) {
            out.push(elem);
        }
    }

    /// All squares w^2 of cyclically reduced even words of exactly `len`
    /// letters that produce a trace not seen before (f64 fingerprint).
    pub fn new_squares(&mut self, len: usize) -> Vec<Elem> {
        debug_assert!(len >= 2 && len % 2 == 0);
        let n = self.full.len();
        let mut out = Vec::new();
        let mut word = Vec::with_capacity(len);
        for first in 0..n {
            word.push(first);
            self.dfs_squares(len, &mut word, self.shadow[first], &mut out);
            word.pop();
        }
        out
    }

    fn dfs_squares(&mut self, len: usize, word: &mut Vec<usize>, prefix: M64, out: &mut Vec<Elem>) {
        self.nodes += 1;
        if self.nodes > NODE_CAP {
            self.truncated = true;
            return;
        }
        if word.len() == len {
            // cyclically reduced: first letter differs from last
            if word[0] != word[len - 1] {
                let t = prefix.trace();
                self.record(t * t - Complex64::new(2.0, 0.0), Elem::Square(word.clone()), out);
            }
            return;
        }
        let depth = word.len(); // next letter goes at index `depth`
        let prev = word[depth - 1];
        for g in 0..self.shadow.len() {
            if g == prev {
                continue;
            }
            // letters at odd positions enter conjugated
            let gm = if depth % 2 == 1 {
                self.shadow[g].conj()
            } else {
                self.shadow[g]
            };
            word.push(g);
            self.dfs_squares(len, word, prefix.mul(&gm), out);
            word.pop();
        }
    }

    /// All products u^2 w^2 over distinct cyclically reduced even words of
    /// length <= 4, deduplicated by fingerprint.
    pub fn new_pairs(&mut self) -> Vec<Elem> {
        let mut words: Vec<Vec<usize>> = Vec::new();
        for len in [2usize, 4] {
            let n = self.full.len();
            let mut word = Vec::with_capacity(len);
            for first in 0..n {
                word.push(first);
                self.collect_words(len, &mut word, &mut words);
                word.pop();
            }
        }
        let squares: Vec<M64> = words
            .iter()
            .map(|w| {
                let m = self.eval_shadow(w);
                m.mul(&m)
            })
            .collect();
        let mut out = Vec::new();
        for i in 0..words.len() {
            for j in i + 1..words.len() {
                let t = squares[i].mul(&squares[j]).trace();
                self.record(t, Elem::Pair(words[i].clone(), words[j].clone()), &mut out);
            }
        }
        out
    }

    fn collect_words(&self, len: usize, word: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if word.len() == len {
            if word[0] != word[len - 1] {
                out.push(word.clone());
            }
            return;
        }
        let prev = word[word.len() - 1];
        for g in 0..self.shadow.len() {
            if g != prev {
                word.push(g);
                self.collect_words(len, word, out);
                word.pop();
            }
        }
    }

    fn eval_shadow(&self, word: &[usize]) -> M64 {
        let mut m = self.shadow[word[0]];
        for (k, &g) in word.iter().enumerate().skip(1) {
            let gm = if k % 2 == 1 {
                self.shadow[g].conj()
            } else {
                self.shadow[g]
            };
            m = m.mul(&gm);
        }
        m
    }

    fn eval_full(&self, word: &[usize]) -> M2 {
        let mut m = self.full[word[0]].clone();
        for (k, &g) in word.iter().enumerate().skip(1) {
            let gm = if k % 2 == 1 {
                self.full[g].conj()
            } else {
                self.full[g].clone()
            };
            m = m.mul(&gm);
        }
        m
    }

    /// Full-precision trace of a recorded element.
    pub fn sample(&self, elem: &Elem) -> TraceSample {
        let two = Cplx::from_real(Real::from_i64(2, self.p));
        let trace = match elem {
            Elem::Square(w) => {
                let t = self.eval_full(w).trace();
                &(&t * &t) - &two
            }
            Elem::Pair(u, w) => {
                let mu = self.eval_full(u);
                let mw = self.eval_full(w);
                let m2 = mu.mul(&mu).mul(&mw).mul(&mw);
                m2.trace()
            }
        };
        TraceSample {
            word: elem.expanded(),
            trace,
        }
    }
}

/// Traces of w^2 for all cyclically reduced even words w with |w| <= max_len,
/// plus traces of pairwise products u^2 w^2 for words of length <= 4,
/// deduplicated by numeric fingerprint. Deterministic order: squares by
/// increasing length (DFS lexicographic within a length), then pairs.
pub(crate) fn sample_traces_from(gens: Vec<M2>, max_len: usize) -> Vec<TraceSample> {
    let mut s = TraceSampler::new(gens);
    let mut elems = Vec::new();
    for len in (2..=max_len).step_by(2) {
        elems.extend(s.new_squares(len));
    }
    elems.extend(s.new_pairs());
    elems.iter().map(|e| s.sample(e)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(x: f64) -> M2 {
        // holomorphic-looking stand-in generators for enumeration tests
        let p = Prec::digits(40);
        let r = |v: f64| Real::from_f64(v, p);
        let z = || Cplx::new(r(0.0), r(0.0));
        M2 {
            a: Cplx::new(r(x), r(0.0)),
            b: z(),
            c: z(),
            d: Cplx::new(r(1.0 / x), r(0.0)),
        }
    }

    #[test]
    fn enumeration_counts_and_dedup() {
        // three commuting diagonal generators: words with the same letter
        // multiset collapse to the same trace
        let gens = vec![diag(2.0), diag(3.0), diag(5.0)];
        let samples = sample_traces_from(gens, 4);
        assert!(!samples.is_empty());
        // every sampled word has even length
        assert!(samples.iter().all(|s| s.word.len() % 2 == 0));
        // dedup leaves pairwise-distinct trace values
        let distinct: HashSet<String> = samples
            .iter()
            .map(|s| fingerprint(Complex64::new(s.trace.re.f64(), s.trace.im.f64())))
            .collect();
        assert_eq!(distinct.len(), samples.len());
    }

    #[test]
    fn cyclic_reduction_filter() {
        let gens = vec![diag(2.0), diag(3.0)];
        // with two generators, length-4 cyclically reduced words are
        // (abab, baba) only; both collapse to one trace fingerprint
        let mut s = TraceSampler::new(gens);
        let len2 = s.new_squares(2);
        assert_eq!(len2.len(), 1); // ab and ba share a trace
        let len4 = s.new_squares(4);
        assert_eq!(len4.len(), 1);
    }
}
