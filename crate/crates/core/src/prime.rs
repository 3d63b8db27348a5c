//! Primeness via classical alternating subcodes.
//!
//! A subcode is a proper cyclic interval of one component that contains
//! both appearances of each of its crossings, possibly together with whole
//! other components. A reduced code with a subcode that is classical,
//! alternating and reduced is composite; an alternating reduced code with
//! none is prime.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::gauss::{GaussCode, Symbol};
use crate::surface;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WitnessFlags {
    pub is_classical: bool,
    pub is_alternating: bool,
    pub is_reduced: bool,
}

impl WitnessFlags {
    pub fn of(code: &GaussCode) -> WitnessFlags {
        WitnessFlags {
            is_classical: surface::split_genus(code) == 0,
            is_alternating: code.is_alternating(),
            is_reduced: code.is_reduced(),
        }
    }

    pub fn all(&self) -> bool {
        self.is_classical && self.is_alternating && self.is_reduced
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubcodeWitness {
    pub host_component: usize,
    /// First symbol of the interval.
    pub start: usize,
    /// Number of symbols, `1..len(host)`.
    pub len: usize,
    /// Whole components included, increasing.
    pub extra_components: Vec<usize>,
    /// The interval closed up as one cyclic word, then the extra components.
    pub witness_code: GaussCode,
    pub flags: WitnessFlags,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "witness", rename_all = "snake_case")]
pub enum Primeness {
    Prime,
    /// The witness indexes into the reduced code.
    Composite(SubcodeWitness),
    NoWitnessInconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PrimeError {
    #[error("code is not reduced; reduce it first")]
    Unreduced,
}

/// All closed, proper, nonempty subcodes, ordered by
/// (host component, start, length, extra-component mask).
pub fn enumerate_subcodes(code: &GaussCode) -> Vec<SubcodeWitness> {
    let comps = code.components();
    let k = comps.len();
    let mut home: HashMap<u32, Vec<usize>> = HashMap::new();
    for (ci, c) in comps.iter().enumerate() {
        for s in c {
            home.entry(s.id).or_default().push(ci);
        }
    }
    assert!(k <= 64, "at most 64 components");
    let mut out = Vec::new();
    for (host, word) in comps.iter().enumerate() {
        let n = word.len();
        let others: Vec<usize> = (0..k).filter(|&c| c != host).collect();
        for start in 0..n {
            let mut count: HashMap<u32, u32> = HashMap::new();
            for len in 1..n {
                let s = word[(start + len - 1) % n];
                *count.entry(s.id).or_default() += 1;
                // Components holding the partners of interval crossings.
                let mut need = 0u64;
                let mut leaks_into_host = false;
                for (&id, &m) in &count {
                    if m == 1 {
                        let h = &home[&id];
                        let partner = if h[0] == host && h[1] == host {
                            None
                        } else if h[0] == host {
                            Some(h[1])
                        } else {
                            Some(h[0])
                        };
                        match partner {
                            None => leaks_into_host = true,
                            Some(c) => need |= 1 << c,
                        }
                    }
                }
                if leaks_into_host {
                    continue;
                }
                for mask in 0..(1u64 << others.len()) {
                    let extras: Vec<usize> = others
                        .iter()
                        .enumerate()
                        .filter(|(b, _)| mask >> b & 1 == 1)
                        .map(|(_, &c)| c)
                        .collect();
                    let chosen = extras.iter().fold(0u64, |m, &c| m | (1 << c));
                    if need & !chosen != 0 {
                        continue;
                    }
                    let closed = extras.iter().all(|&c| {
                        comps[c].iter().all(|s| {
                            let h = &home[&s.id];
                            let partner = if h[0] == c { h[1] } else { h[0] };
                            if partner == c {
                                true
                            } else if partner == host {
                                count.get(&s.id) == Some(&1)
                            } else {
                                chosen >> partner & 1 == 1
                            }
                        })
                    });
                    if !closed {
                        continue;
                    }
                    let mut parts: Vec<Vec<Symbol>> =
                        vec![(0..len).map(|j| word[(start + j) % n]).collect()];
                    parts.extend(extras.iter().map(|&c| comps[c].clone()));
                    let witness_code =
                        GaussCode::from_components(parts).expect("closed subcode is valid");
                    let flags = WitnessFlags::of(&witness_code);
                    out.push(SubcodeWitness {
                        host_component: host,
                        start,
                        len,
                        extra_components: extras,
                        witness_code,
                        flags,
                    });
                }
            }
        }
    }
    out
}

/// First subcode whose reduction is nonempty, classical, alternating and
/// reduced. The returned witness carries the reduced subcode.
pub fn find_composite_witness(code: &GaussCode) -> Result<Option<SubcodeWitness>, PrimeError> {
    if !code.is_reduced() {
        return Err(PrimeError::Unreduced);
    }
    for mut w in enumerate_subcodes(code) {
        let r = w.witness_code.reduce();
        if r.is_empty() {
            continue;
        }
        let flags = WitnessFlags::of(&r);
        if flags.all() {
            w.witness_code = r;
            w.flags = flags;
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Decide primeness of `code` after reduction. The empty code counts as
/// prime: it is vacuously alternating and has no subcodes.
pub fn primeness(code: &GaussCode) -> Primeness {
    let r = code.reduce();
    match find_composite_witness(&r).expect("reduced") {
        Some(w) => Primeness::Composite(w),
        None if r.is_alternating() => Primeness::Prime,
        None => Primeness::NoWitnessInconclusive,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::Gap;

    fn p(s: &str) -> GaussCode {
        s.parse().unwrap()
    }

    #[test]
    fn virtual_trefoil_has_no_subcodes() {
        assert!(enumerate_subcodes(&p("O1+O2+U1+U2+")).is_empty());
        assert_eq!(
            primeness(&p("O1+O2+U1+U2+")),
            Primeness::NoWitnessInconclusive
        );
    }

    #[test]
    fn trefoil_is_prime() {
        let t = p(surface::TREFOIL);
        assert!(enumerate_subcodes(&t).is_empty());
        assert_eq!(primeness(&t), Primeness::Prime);
    }

    #[test]
    fn trefoil_sum_is_composite() {
        let t = p(surface::TREFOIL);
        let tt = t.connected_sum(Gap::new(0, 6), &t, 0).unwrap();
        let subs = enumerate_subcodes(&tt);
        assert!(subs
            .iter()
            .any(|w| w.witness_code.canonical_form() == t.canonical_form()));
        match primeness(&tt) {
            Primeness::Composite(w) => {
                assert_eq!(w.witness_code.crossing_count(), 3);
                assert!(w.flags.all());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn trefoil_plus_virtual_trefoil() {
        let t = p(surface::TREFOIL);
        let v = p("O1-O2-U1-U2-");
        let s = v.connected_sum(Gap::new(0, 0), &t, 0).unwrap();
        let w = find_composite_witness(&s).unwrap().unwrap();
        assert_eq!(w.witness_code.canonical_form(), t.relabel(|i| i + 2).unwrap().canonical_form());
    }

    #[test]
    fn unreduced_input_rejected() {
        assert_eq!(
            find_composite_witness(&p("O1+U1+O2+O3+U2+U3+")),
            Err(PrimeError::Unreduced)
        );
    }

    #[test]
    fn multi_component_subcodes() {
        // A kink-free closed interval plus a whole component linked to it.
        let code = p("O1+U2+O3+U1+O2+U3+O4+U5+|O5+U4+");
        let subs = enumerate_subcodes(&code);
        assert!(subs.iter().any(|w| w.extra_components == vec![1]));
        for w in &subs {
            assert_eq!(w.flags, WitnessFlags::of(&w.witness_code));
            assert!(w.len < code.components()[w.host_component].len());
        }
    }

    #[test]
    fn unknot_counts_as_prime() {
        assert_eq!(primeness(&GaussCode::unknot()), Primeness::Prime);
        assert_eq!(primeness(&p("O1+U1+")), Primeness::Prime);
    }
}
