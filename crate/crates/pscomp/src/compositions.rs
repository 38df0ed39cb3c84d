//! Prefix-suffix composition multisets and the affix count tables derived
//! from them.
//!
//! A composition records (zeros, ones) of one affix. The multiset of all
//! 2nh affix compositions of a string multiset is stored here as the count
//! table `affix_count(l, w)` = number of length-`l` affixes of weight `w`,
//! together with the inferred parameters (n, h, common weight).

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::strings::{BitString, StringMultiset};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CompositionError {
    #[error("composition multiset is empty")]
    Empty,
    #[error("composition pair has zero total length")]
    EmptyPair,
    #[error("size mismatch at length {l}: found {found} pairs, expected {expected}")]
    SizeMismatch { l: usize, found: usize, expected: usize },
    #[error("full-length pairs do not share one weight: found ({z1},{o1}) and ({z2},{o2})")]
    NonConstantWeight { z1: usize, o1: usize, z2: usize, o2: usize },
    #[error("count symmetry violated at (l={l}, w={w}): {count} != {mirror} at mirror cell")]
    SymmetryViolation { l: usize, w: usize, count: usize, mirror: usize },
    #[error("negative derived {table}-count at (l={l}, w={w})")]
    NegativeBc { table: char, l: usize, w: usize },
    #[error("{field} assertion failed: file says {expected}, data gives {found}")]
    AssertionMismatch { field: &'static str, expected: usize, found: usize },
}

/// The composition of one affix: its number of zeros and number of ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CompositionPair {
    pub zeros: usize,
    pub ones: usize,
}

impl CompositionPair {
    pub fn new(zeros: usize, ones: usize) -> Self {
        CompositionPair { zeros, ones }
    }

    /// Affix length.
    pub fn len(&self) -> usize {
        self.zeros + self.ones
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl Ord for CompositionPair {
    fn cmp(&self, other: &Self) -> Ordering {
        // Canonical file order: by affix length, then by weight.
        (self.len(), self.ones).cmp(&(other.len(), other.ones))
    }
}

impl PartialOrd for CompositionPair {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for CompositionPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.zeros, self.ones)
    }
}

/// Compositions of all prefixes and all suffixes of `t` (2n pairs).
pub fn compose_string(t: &BitString) -> Vec<CompositionPair> {
    let n = t.len();
    let weights = t.prefix_weights();
    let w = weights[n];
    let mut out = Vec::with_capacity(2 * n);
    for l in 1..=n {
        out.push(CompositionPair::new(l - weights[l], weights[l]));
        // Suffix of length l has weight w - weight(prefix of length n - l).
        let ws = w - weights[n - l];
        out.push(CompositionPair::new(l - ws, ws));
    }
    out
}

/// The validated multiset of prefix-suffix compositions of some `h`
/// length-`n` weight-`wbar` string multiset, stored as count tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositionMultiset {
    n: usize,
    h: usize,
    wbar: usize,
    /// counts[l][w] = number of length-l affixes of weight w, for w <= l.
    /// counts[0][0] = 2h by convention.
    counts: Vec<Vec<usize>>,
    /// Per length, the weights with nonzero count in descending order.
    /// Kept so the grid algorithms run in O(nh) instead of O(n * wbar).
    support: Vec<Vec<(usize, usize)>>,
}

impl CompositionMultiset {
    /// Composes a string multiset. Always valid by construction.
    pub fn compose(u: &StringMultiset) -> Self {
        let (n, h, wbar) = (u.n(), u.h(), u.weight());
        let mut counts: Vec<Vec<usize>> = (0..=n).map(|l| vec![0; l + 1]).collect();
        counts[0][0] = 2 * h;
        for t in u.iter() {
            let weights = t.prefix_weights();
            for l in 1..=n {
                counts[l][weights[l]] += 1;
                counts[l][wbar - weights[n - l]] += 1;
            }
        }
        let support = build_support(&counts);
        CompositionMultiset { n, h, wbar, counts, support }
    }

    /// Parses a raw pair multiset, inferring (n, h, wbar) and checking the
    /// consistency identities every composition multiset must satisfy:
    /// 2h pairs per length, one weight at full length, mirror symmetry
    /// of counts, and nonnegativity of the derived keep/drop counts.
    pub fn from_pairs(pairs: &[CompositionPair]) -> Result<Self, CompositionError> {
        if pairs.is_empty() {
            return Err(CompositionError::Empty);
        }
        if pairs.iter().any(|p| p.len() == 0) {
            return Err(CompositionError::EmptyPair);
        }
        let n = pairs.iter().map(|p| p.len()).max().unwrap();

        let mut counts: Vec<Vec<usize>> = (0..=n).map(|l| vec![0; l + 1]).collect();
        let mut per_len = vec![0usize; n + 1];
        for p in pairs {
            counts[p.len()][p.ones] += 1;
            per_len[p.len()] += 1;
        }
        if per_len[n] % 2 != 0 {
            return Err(CompositionError::SizeMismatch {
                l: n,
                found: per_len[n],
                expected: per_len[n] + 1,
            });
        }
        let h = per_len[n] / 2;
        for l in 1..=n {
            if per_len[l] != 2 * h {
                return Err(CompositionError::SizeMismatch { l, found: per_len[l], expected: 2 * h });
            }
        }

        // All 2h full-length pairs must agree on the weight.
        let full: Vec<usize> = (0..=n).filter(|&w| counts[n][w] > 0).collect();
        debug_assert!(!full.is_empty());
        if full.len() > 1 {
            return Err(CompositionError::NonConstantWeight {
                z1: n - full[0],
                o1: full[0],
                z2: n - full[1],
                o2: full[1],
            });
        }
        let wbar = full[0];
        counts[0][0] = 2 * h;

        let m = CompositionMultiset {
            n,
            h,
            wbar,
            support: build_support(&counts),
            counts,
        };
        m.check_symmetry()?;
        m.check_keep_drop_nonnegative()?;
        Ok(m)
    }

    /// affix_count(l, w) = a count of length-l weight-w affixes; the (0, 0)
    /// cell is 2h by convention. Out-of-range cells read as 0.
    pub fn affix_count(&self, l: usize, w: usize) -> usize {
        self.counts
            .get(l)
            .and_then(|row| row.get(w))
            .copied()
            .unwrap_or(0)
    }

    /// Nonzero (weight, count) entries at length `l`, weight descending.
    pub fn support(&self, l: usize) -> &[(usize, usize)] {
        &self.support[l]
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn h(&self) -> usize {
        self.h
    }

    pub fn weight(&self) -> usize {
        self.wbar
    }

    /// The raw pair view, in canonical (length, weight) order.
    pub fn pairs(&self) -> Vec<CompositionPair> {
        let mut out = Vec::with_capacity(2 * self.n * self.h);
        for l in 1..=self.n {
            for w in 0..=l {
                for _ in 0..self.counts[l][w] {
                    out.push(CompositionPair::new(l - w, w));
                }
            }
        }
        out
    }

    pub fn count_tables(&self) -> CountTables {
        CountTables::new(self)
    }

    /// Asserts externally supplied parameters against the inferred ones.
    pub fn check_assertions(
        &self,
        n: Option<usize>,
        h: Option<usize>,
        wbar: Option<usize>,
    ) -> Result<(), CompositionError> {
        let fields = [("n", n, self.n), ("h", h, self.h), ("wbar", wbar, self.wbar)];
        for (field, expected, found) in fields {
            if let Some(expected) = expected {
                if expected != found {
                    return Err(CompositionError::AssertionMismatch { field, expected, found });
                }
            }
        }
        Ok(())
    }

    fn check_symmetry(&self) -> Result<(), CompositionError> {
        for l in 0..=self.n {
            for w in 0..=l {
                let count = self.counts[l][w];
                let mirror = match self.wbar.checked_sub(w) {
                    Some(mw) => self.affix_count(self.n - l, mw),
                    None => 0,
                };
                if count != mirror {
                    return Err(CompositionError::SymmetryViolation { l, w, count, mirror });
                }
            }
        }
        Ok(())
    }

    fn check_keep_drop_nonnegative(&self) -> Result<(), CompositionError> {
        let tails = tail_sums(&self.counts);
        for l in 1..=self.n {
            for w in 0..=l {
                // keep_count = tail(l-1, w) - tail(l, w+1)
                if tails[l - 1][w] < tails[l][w + 1] {
                    return Err(CompositionError::NegativeBc { table: 'b', l, w });
                }
                // drop_count = tail(l, w) - tail(l-1, w)
                if tails[l][w] < tails[l - 1][w] {
                    return Err(CompositionError::NegativeBc { table: 'c', l, w });
                }
            }
        }
        Ok(())
    }
}

fn build_support(counts: &[Vec<usize>]) -> Vec<Vec<(usize, usize)>> {
    counts
        .iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .rev()
                .filter(|(_, &c)| c > 0)
                .map(|(w, &c)| (w, c))
                .collect()
        })
        .collect()
}

/// tails[l][w] = sum of counts[l][v] for v >= w; row length l + 2.
fn tail_sums(counts: &[Vec<usize>]) -> Vec<Vec<usize>> {
    counts
        .iter()
        .map(|row| {
            let mut tail = vec![0usize; row.len() + 1];
            for w in (0..row.len()).rev() {
                tail[w] = tail[w + 1] + row[w];
            }
            tail
        })
        .collect()
}

/// Affix counts together with the derived keep/drop tables.
///
/// `keep_count(l, w)` is the number of length-l weight-w affixes whose
/// weight stays `w` when shortened to length l-1; `drop_count(l, w)` the
/// number whose weight drops to w-1. They satisfy
/// `affix_count(l, w) = keep_count(l, w) + drop_count(l, w)` and
/// `affix_count(l, w) = keep_count(l+1, w) + drop_count(l+1, w+1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTables {
    n: usize,
    h: usize,
    wbar: usize,
    counts: Vec<Vec<usize>>,
    keep: Vec<Vec<usize>>,
    drop: Vec<Vec<usize>>,
}

impl CountTables {
    pub fn new(m: &CompositionMultiset) -> Self {
        let n = m.n;
        let tails = tail_sums(&m.counts);
        let mut keep: Vec<Vec<usize>> = Vec::with_capacity(n + 1);
        let mut drop: Vec<Vec<usize>> = Vec::with_capacity(n + 1);
        keep.push(Vec::new()); // l = 0 is undefined
        drop.push(Vec::new());
        for l in 1..=n {
            let mut keep_row = vec![0; l + 1];
            let mut drop_row = vec![0; l + 1];
            for w in 0..=l {
                keep_row[w] = tails[l - 1][w] - tails[l][w + 1];
                drop_row[w] = tails[l][w] - tails[l - 1][w];
            }
            keep.push(keep_row);
            drop.push(drop_row);
        }
        CountTables {
            n,
            h: m.h,
            wbar: m.wbar,
            counts: m.counts.clone(),
            keep,
            drop,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn h(&self) -> usize {
        self.h
    }

    pub fn weight(&self) -> usize {
        self.wbar
    }

    pub fn affix_count(&self, l: usize, w: usize) -> usize {
        self.counts
            .get(l)
            .and_then(|row| row.get(w))
            .copied()
            .unwrap_or(0)
    }

    /// Number of length-l weight-w affixes keeping weight w at length l-1.
    /// Defined for l in 1..=n; out-of-range cells read as 0.
    pub fn keep_count(&self, l: usize, w: usize) -> usize {
        if l == 0 {
            return 0;
        }
        self.keep
            .get(l)
            .and_then(|row| row.get(w))
            .copied()
            .unwrap_or(0)
    }

    /// Number of length-l weight-w affixes dropping to weight w-1 at
    /// length l-1. Defined for l in 1..=n; out-of-range cells read as 0.
    pub fn drop_count(&self, l: usize, w: usize) -> usize {
        if l == 0 {
            return 0;
        }
        self.drop
            .get(l)
            .and_then(|row| row.get(w))
            .copied()
            .unwrap_or(0)
    }
}
