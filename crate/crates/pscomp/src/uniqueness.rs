//! Decides whether a composition multiset determines its string multiset
//! uniquely up to reversal, by counting maximal discrepancy intervals
//! between rows of any one solution grid: at most two between partner
//! rows and at most one between any other pair, or reconstruction is
//! ambiguous. The verdict does not depend on which solution is inspected.

use crate::compositions::CompositionMultiset;
use crate::cwf::{partner, Cwf, MaximalInterval};
use crate::greedy::{reconstruct_one, GreedyError};
use crate::strings::StringMultiset;

/// Verdict plus, when not unique, the violating row pair and a second
/// multiset with the same compositions obtained by swapping over one of
/// the witness intervals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniquenessReport {
    pub unique: bool,
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub m1: usize,
    pub m2: usize,
    pub intervals: Vec<MaximalInterval>,
    pub counterexample: StringMultiset,
}

/// Checks the interval conditions on a solution grid.
pub fn check_unique_cwf(f: &Cwf) -> UniquenessReport {
    let rows = 2 * f.h();
    for m1 in 1..=rows {
        for m2 in m1 + 1..=rows {
            let intervals = f.maximal_intervals(m1, m2);
            let partners = partner(m1) == m2;
            let limit = if partners { 2 } else { 1 };
            if intervals.len() <= limit {
                continue;
            }
            // Swapping over a suitable interval produces a genuinely
            // different multiset: any interval works for partner rows;
            // otherwise pick one clear of the two middle positions.
            let iv = if partners {
                intervals[0]
            } else {
                let (lo_mid, hi_mid) = (f.n() / 2, f.n().div_ceil(2));
                *intervals
                    .iter()
                    .find(|iv| !(iv.contains(lo_mid) && iv.contains(hi_mid)))
                    .expect("disjoint intervals cannot all span the middle")
            };
            let g = f
                .swap(iv, m1, m2)
                .expect("witness interval is maximal by construction");
            return UniquenessReport {
                unique: false,
                witness: Some(Witness {
                    m1,
                    m2,
                    intervals,
                    counterexample: g.corresponding_multiset(),
                }),
            };
        }
    }
    UniquenessReport {
        unique: true,
        witness: None,
    }
}

/// Builds one solution greedily and checks it.
pub fn check_unique(m: &CompositionMultiset) -> Result<UniquenessReport, GreedyError> {
    let (cwf, _) = reconstruct_one(m)?;
    Ok(check_unique_cwf(&cwf))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{brute_force_unique, Budget};
    use crate::strings::{enumerate_constant_weight, BitString};
    use rand::prelude::*;
    use rand::rngs::StdRng;

    fn ms(strings: &[&str]) -> StringMultiset {
        StringMultiset::new(strings.iter().map(|s| s.parse().unwrap()).collect()).unwrap()
    }

    #[test]
    fn unique_single_string() {
        let report = check_unique_cwf(&Cwf::induce(&ms(&["011101"])));
        assert!(report.unique);
        assert!(report.witness.is_none());
    }

    #[test]
    fn ambiguous_single_string_with_witness() {
        let f = Cwf::induce(&ms(&["010101"]));
        let report = check_unique_cwf(&f);
        assert!(!report.unique);
        let w = report.witness.unwrap();
        assert_eq!((w.m1, w.m2), (1, 2));
        assert_eq!(w.intervals.len(), 3);
        // The counterexample lies in a different reversal class.
        assert_ne!(
            w.counterexample.canonical_class(),
            f.corresponding_multiset().canonical_class()
        );
        assert_eq!(
            CompositionMultiset::compose(&w.counterexample),
            CompositionMultiset::compose(&ms(&["010101"]))
        );
    }

    #[test]
    fn unique_when_rows_coincide() {
        let report = check_unique_cwf(&Cwf::induce(&ms(&["1111"])));
        assert!(report.unique);
    }

    #[test]
    fn check_unique_from_compositions() {
        let m = CompositionMultiset::compose(&ms(&["010101"]));
        assert!(!check_unique(&m).unwrap().unique);

        let m = CompositionMultiset::compose(&ms(&["011101"]));
        assert!(check_unique(&m).unwrap().unique);

        let m = CompositionMultiset::compose(&ms(&["0101", "0101"]));
        let verdict = check_unique(&m).unwrap().unique;
        let oracle = brute_force_unique(&m, &Budget::default()).unwrap();
        assert_eq!(verdict, oracle);
    }

    /// Exhaustive oracle agreement on small instances; the full sweep
    /// lives in the acceptance suite.
    #[test]
    fn oracle_agreement_small() {
        let budget = Budget::default();
        for n in 1..=6usize {
            for w in 0..=n {
                let strings = enumerate_constant_weight(n, w).unwrap();
                for i in 0..strings.len() {
                    for j in i..strings.len() {
                        let u = StringMultiset::new(vec![strings[i].clone(), strings[j].clone()])
                            .unwrap();
                        let m = CompositionMultiset::compose(&u);
                        let (cwf, solution) = crate::greedy::reconstruct_one(&m).unwrap();
                        let report = check_unique_cwf(&cwf);
                        assert_eq!(
                            report.unique,
                            brute_force_unique(&m, &budget).unwrap(),
                            "verdict mismatch for {u}"
                        );
                        if let Some(w) = report.witness {
                            // The counterexample differs from the checked
                            // solution's class (it may coincide with u's).
                            assert_ne!(
                                w.counterexample.canonical_class(),
                                solution.canonical_class(),
                                "witness for {u} is not a counterexample"
                            );
                            assert_eq!(CompositionMultiset::compose(&w.counterexample), m);
                        }
                    }
                }
            }
        }
    }

    /// The verdict from the greedy solution matches the verdict from the
    /// grid induced by the generating multiset.
    #[test]
    fn solution_independence_random() {
        let mut rng = StdRng::seed_from_u64(0x5851f42d4c957f2d);
        for _ in 0..100 {
            let n = rng.random_range(1..=32usize);
            let h = rng.random_range(1..=4usize);
            let w = rng.random_range(0..=n);
            let strings = (0..h)
                .map(|_| {
                    let mut bits = vec![0u8; n];
                    for i in rand::seq::index::sample(&mut rng, n, w) {
                        bits[i] = 1;
                    }
                    BitString::new(bits).unwrap()
                })
                .collect();
            let u = StringMultiset::new(strings).unwrap();
            let m = CompositionMultiset::compose(&u);
            let from_greedy = check_unique(&m).unwrap().unique;
            let from_induced = check_unique_cwf(&Cwf::induce(&u)).unique;
            assert_eq!(from_greedy, from_induced, "disagreement for {u}");
        }
    }
}
