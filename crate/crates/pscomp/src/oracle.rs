//! Brute-force reference implementation: enumerates every size-h multiset
//! of constant-weight strings, keeps those whose compositions match, and
//! returns the distinct reversal classes. Only meant for desk-scale
//! verification of the other modules.

use thiserror::Error;

use crate::compositions::CompositionMultiset;
use crate::strings::{enumerate_constant_weight, BitString, ReversalClass, StringMultiset};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("instance needs {candidates} candidate multisets, over the budget of {budget}")]
    OverBudget { candidates: u128, budget: u128 },
}

/// Cap on the number of candidate multisets the oracle will examine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_candidates: u128,
}

impl Default for Budget {
    fn default() -> Self {
        // Comfortable for n <= 10, h <= 2 and similar desk-scale inputs.
        Budget {
            max_candidates: 1_000_000,
        }
    }
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut out: u128 = 1;
    for i in 0..k {
        out = out.saturating_mul(n - i) / (i + 1);
    }
    out
}

/// Number of size-h multisets over k distinct strings.
fn multiset_count(k: u128, h: u128) -> u128 {
    binomial(k + h - 1, h)
}

/// Per-candidate bookkeeping: the (l, weight) cells its affixes occupy.
struct Candidate {
    string: BitString,
    cells: Vec<(usize, usize)>,
}

/// All reversal classes compatible with `m`, by exhaustive search over
/// combinations with repetition of the weight-matching strings. Partial
/// multisets are pruned as soon as any affix count exceeds its target.
pub fn brute_force_all(
    m: &CompositionMultiset,
    budget: &Budget,
) -> Result<Vec<ReversalClass>, OracleError> {
    let (n, h, wbar) = (m.n(), m.h(), m.weight());
    let strings = enumerate_constant_weight(n, wbar).expect("validated parameters");
    let candidates = multiset_count(strings.len() as u128, h as u128);
    if candidates > budget.max_candidates {
        return Err(OracleError::OverBudget {
            candidates,
            budget: budget.max_candidates,
        });
    }

    let pool: Vec<Candidate> = strings
        .into_iter()
        .map(|string| {
            let weights = string.prefix_weights();
            let mut cells = Vec::with_capacity(2 * n);
            for l in 1..=n {
                cells.push((l, weights[l]));
                cells.push((l, wbar - weights[n - l]));
            }
            Candidate { string, cells }
        })
        .collect();

    let mut counts: Vec<Vec<usize>> = (0..=n).map(|l| vec![0usize; l + 1]).collect();
    let mut chosen: Vec<usize> = Vec::with_capacity(h);
    let mut out: Vec<ReversalClass> = Vec::new();
    search(m, &pool, 0, h, &mut counts, &mut chosen, &mut out);
    out.sort();
    out.dedup();
    Ok(out)
}

fn search(
    m: &CompositionMultiset,
    pool: &[Candidate],
    start: usize,
    remaining: usize,
    counts: &mut [Vec<usize>],
    chosen: &mut Vec<usize>,
    out: &mut Vec<ReversalClass>,
) {
    if remaining == 0 {
        // Counts never exceed the targets and the totals agree, so the
        // multisets are equal.
        let members = chosen.iter().map(|&i| pool[i].string.clone()).collect();
        let multiset = StringMultiset::new(members).expect("pool strings are uniform");
        out.push(multiset.canonical_class());
        return;
    }
    for i in start..pool.len() {
        let mut ok = true;
        let mut added = 0usize;
        for &(l, w) in &pool[i].cells {
            if counts[l][w] + 1 > m.affix_count(l, w) {
                ok = false;
                break;
            }
            counts[l][w] += 1;
            added += 1;
        }
        if ok {
            chosen.push(i);
            search(m, pool, i, remaining - 1, counts, chosen, out);
            chosen.pop();
        }
        for &(l, w) in pool[i].cells.iter().take(added) {
            counts[l][w] -= 1;
        }
    }
}

/// Whether exactly one reversal class is compatible with `m`.
pub fn brute_force_unique(m: &CompositionMultiset, budget: &Budget) -> Result<bool, OracleError> {
    Ok(brute_force_all(m, budget)?.len() == 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ms(strings: &[&str]) -> StringMultiset {
        StringMultiset::new(strings.iter().map(|s| s.parse().unwrap()).collect()).unwrap()
    }

    #[test]
    fn finds_both_classes_of_ambiguous_string() {
        let m = CompositionMultiset::compose(&ms(&["010101"]));
        let classes = brute_force_all(&m, &Budget::default()).unwrap();
        assert_eq!(
            classes,
            vec![
                ms(&["010101"]).canonical_class(),
                ms(&["100110"]).canonical_class()
            ]
        );
        assert!(!brute_force_unique(&m, &Budget::default()).unwrap());
    }

    #[test]
    fn unique_instances() {
        let m = CompositionMultiset::compose(&ms(&["011101"]));
        let classes = brute_force_all(&m, &Budget::default()).unwrap();
        assert_eq!(classes, vec![ms(&["011101"]).canonical_class()]);
        assert!(brute_force_unique(&m, &Budget::default()).unwrap());

        let m = CompositionMultiset::compose(&ms(&["0"]));
        assert_eq!(
            brute_force_all(&m, &Budget::default()).unwrap(),
            vec![ms(&["0"]).canonical_class()]
        );

        let m = CompositionMultiset::compose(&ms(&["1"]));
        assert!(brute_force_unique(&m, &Budget::default()).unwrap());
    }

    #[test]
    fn over_budget_is_refused() {
        let budget = Budget { max_candidates: 10 };
        let m = CompositionMultiset::compose(&ms(&["01010101"]));
        assert!(matches!(
            brute_force_all(&m, &budget),
            Err(OracleError::OverBudget { .. })
        ));
    }

    #[test]
    fn class_set_contains_generator() {
        for u in [
            ms(&["0110", "1001"]),
            ms(&["10101", "10101"]),
            ms(&["110100"]),
        ] {
            let m = CompositionMultiset::compose(&u);
            let classes = brute_force_all(&m, &Budget::default()).unwrap();
            assert!(classes.contains(&u.canonical_class()));
        }
    }
}
