//! The cumulative weight grid: 2h rows of running affix weights, two rows
//! per string (one from each end). Construction from strings, decoding back
//! to strings, discrepancy intervals between rows, the interval swap, and
//! the solution check against a composition multiset.

use std::fmt;

use thiserror::Error;

use crate::compositions::{CompositionMultiset, CountTables};
use crate::strings::{BitString, StringMultiset};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CwfViolation {
    #[error("grid must have an even, positive number of rows of equal length >= 2")]
    Shape,
    #[error("row {m} does not start at 0")]
    ZeroStart { m: usize },
    #[error("row {m} steps outside {{0,1}} at column {l}")]
    StepRange { l: usize, m: usize },
    #[error("rows {m1} and {m2} do not keep a constant weight sum at column {l}")]
    PairSum { m1: usize, m2: usize, l: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SwapError {
    #[error("[{lo},{hi}] is not a maximal interval between rows {m1} and {m2}")]
    NotAMaximalInterval { lo: usize, hi: usize, m1: usize, m2: usize },
    #[error("rows {m1} and {m2} describe strings of different weights ({w1} vs {w2})")]
    WeightMismatch { m1: usize, m2: usize, w1: usize, w2: usize },
}

/// The partner row describing the same string from the other end:
/// odd rows pair with the next row, even rows with the previous one.
/// Rows are 1-based.
pub fn partner(m: usize) -> usize {
    if m % 2 == 1 {
        m + 1
    } else {
        m - 1
    }
}

/// A maximal run `[lo, hi]` (1-based, inclusive) of positions where two
/// rows of a grid disagree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MaximalInterval {
    pub lo: usize,
    pub hi: usize,
}

impl MaximalInterval {
    pub fn new(lo: usize, hi: usize) -> Self {
        assert!(lo >= 1 && lo <= hi);
        MaximalInterval { lo, hi }
    }

    pub fn contains(&self, l: usize) -> bool {
        self.lo <= l && l <= self.hi
    }

    /// The interval reflected about n/2.
    pub fn mirror(&self, n: usize) -> MaximalInterval {
        MaximalInterval::new(n - self.hi, n - self.lo)
    }
}

impl fmt::Display for MaximalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}

/// Checks the three grid conditions: every row starts at 0, rows step by
/// 0 or 1, and each row pair (2j-1, 2j) keeps `f(l,2j-1) + f(n-l,2j)`
/// constant. Reports the first violation.
pub fn validate_grid(rows: &[Vec<usize>]) -> Result<(), CwfViolation> {
    if rows.is_empty() || rows.len() % 2 != 0 {
        return Err(CwfViolation::Shape);
    }
    let width = rows[0].len();
    if width < 2 || rows.iter().any(|r| r.len() != width) {
        return Err(CwfViolation::Shape);
    }
    let n = width - 1;
    for (i, row) in rows.iter().enumerate() {
        if row[0] != 0 {
            return Err(CwfViolation::ZeroStart { m: i + 1 });
        }
        for l in 1..=n {
            if row[l] < row[l - 1] || row[l] - row[l - 1] > 1 {
                return Err(CwfViolation::StepRange { l, m: i + 1 });
            }
        }
    }
    for j in 0..rows.len() / 2 {
        let (odd, even) = (&rows[2 * j], &rows[2 * j + 1]);
        let sum = odd[n]; // l = n gives f(n,2j-1) + f(0,2j)
        for l in 0..=n {
            if odd[l] + even[n - l] != sum {
                return Err(CwfViolation::PairSum {
                    m1: 2 * j + 1,
                    m2: 2 * j + 2,
                    l,
                });
            }
        }
    }
    Ok(())
}

/// A validated cumulative weight grid over columns `0..=n` and 1-based
/// rows `1..=2h`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cwf {
    n: usize,
    h: usize,
    rows: Vec<Vec<usize>>,
}

impl Cwf {
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self, CwfViolation> {
        validate_grid(&rows)?;
        let n = rows[0].len() - 1;
        let h = rows.len() / 2;
        Ok(Cwf { n, h, rows })
    }

    /// The grid induced by a string multiset: row 2j-1 holds the prefix
    /// weights of string j, row 2j the prefix weights of its reversal.
    pub fn induce(u: &StringMultiset) -> Cwf {
        let rows = u
            .iter()
            .flat_map(|t| [t.prefix_weights(), t.reverse().prefix_weights()])
            .collect();
        Cwf {
            n: u.n(),
            h: u.h(),
            rows,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn h(&self) -> usize {
        self.h
    }

    /// Value at column `l`, 1-based row `m`.
    pub fn value(&self, l: usize, m: usize) -> usize {
        self.rows[m - 1][l]
    }

    pub fn row(&self, m: usize) -> &[usize] {
        &self.rows[m - 1]
    }

    /// Weight of the string described by row pair `j` (1-based).
    pub fn pair_weight(&self, j: usize) -> usize {
        self.rows[2 * j - 2][self.n]
    }

    /// The string multiset read off the odd rows.
    pub fn corresponding_multiset(&self) -> StringMultiset {
        let strings: Vec<BitString> = (0..self.h)
            .map(|j| {
                let row = &self.rows[2 * j];
                let bits = (1..=self.n).map(|l| (row[l] - row[l - 1]) as u8).collect();
                BitString::new(bits).expect("grid rows decode to valid bit strings")
            })
            .collect();
        StringMultiset::new(strings).expect("grid rows decode to a uniform multiset")
    }

    /// Twice the median weight of row `m`, kept doubled so it stays exact.
    pub fn doubled_median(&self, m: usize) -> usize {
        let row = &self.rows[m - 1];
        row[self.n / 2] + row[self.n.div_ceil(2)]
    }

    /// Rows whose doubled median weight equals `dm`.
    pub fn rows_with_doubled_median(&self, dm: usize) -> Vec<usize> {
        (1..=2 * self.h)
            .filter(|&m| self.doubled_median(m) == dm)
            .collect()
    }

    /// Rows passing through the grid point (l, w).
    pub fn level_set(&self, l: usize, w: usize) -> Vec<usize> {
        (1..=2 * self.h)
            .filter(|&m| self.rows[m - 1][l] == w)
            .collect()
    }

    /// Maximal intervals of the discrepancy between rows `m1` and `m2`,
    /// in increasing order.
    pub fn maximal_intervals(&self, m1: usize, m2: usize) -> Vec<MaximalInterval> {
        let (r1, r2) = (&self.rows[m1 - 1], &self.rows[m2 - 1]);
        let mut out = Vec::new();
        let mut start = None;
        for l in 1..=self.n {
            if r1[l] != r2[l] {
                start.get_or_insert(l);
            } else if let Some(lo) = start.take() {
                out.push(MaximalInterval::new(lo, l - 1));
            }
        }
        if let Some(lo) = start {
            out.push(MaximalInterval::new(lo, self.n));
        }
        out
    }

    /// Exchanges rows `m1` and `m2` over a maximal interval `iv`, together
    /// with the mirrored exchange of their partner rows, producing another
    /// valid grid. When `m2` is `m1`'s partner the exchange covers the
    /// interval and its mirror on the same two rows.
    pub fn swap(
        &self,
        iv: MaximalInterval,
        m1: usize,
        m2: usize,
    ) -> Result<Cwf, SwapError> {
        let bad = || SwapError::NotAMaximalInterval {
            lo: iv.lo,
            hi: iv.hi,
            m1,
            m2,
        };
        if m1 == m2 || m1 > 2 * self.h || m2 > 2 * self.h || iv.hi > self.n {
            return Err(bad());
        }
        let (w1, w2) = (self.pair_weight(m1.div_ceil(2)), self.pair_weight(m2.div_ceil(2)));
        if w1 != w2 {
            return Err(SwapError::WeightMismatch { m1, m2, w1, w2 });
        }
        let (r1, r2) = (&self.rows[m1 - 1], &self.rows[m2 - 1]);
        let maximal = (iv.lo..=iv.hi).all(|l| r1[l] != r2[l])
            && (iv.lo == 1 || r1[iv.lo - 1] == r2[iv.lo - 1])
            && (iv.hi == self.n || r1[iv.hi + 1] == r2[iv.hi + 1]);
        if !maximal {
            return Err(bad());
        }

        let mut rows = self.rows.clone();
        let mut exchange = |l: usize, a: usize, b: usize| {
            let tmp = rows[a - 1][l];
            rows[a - 1][l] = rows[b - 1][l];
            rows[b - 1][l] = tmp;
        };
        if partner(m1) == m2 {
            let mirror = iv.mirror(self.n);
            for l in 1..=self.n {
                if iv.contains(l) || mirror.contains(l) {
                    exchange(l, m1, m2);
                }
            }
        } else {
            for l in iv.lo..=iv.hi {
                exchange(l, m1, m2);
                exchange(self.n - l, partner(m1), partner(m2));
            }
        }
        Ok(Cwf::new(rows).expect("swapping over a maximal interval preserves grid validity"))
    }

    /// Whether this grid reproduces the composition multiset exactly:
    /// at every length, the multiset of row values matches the counts.
    pub fn is_solution(&self, m: &CompositionMultiset) -> bool {
        if self.n != m.n() || self.h != m.h() {
            return false;
        }
        let mut values = vec![0usize; 2 * self.h];
        for l in 1..=self.n {
            for (i, row) in self.rows.iter().enumerate() {
                values[i] = row[l];
            }
            values.sort_unstable();
            // Compare the sorted values against the (descending) support.
            let mut rest = &values[..];
            for &(w, count) in m.support(l).iter().rev() {
                if rest.len() < count || rest[..count].iter().any(|&v| v != w) {
                    return false;
                }
                rest = &rest[count..];
            }
            if !rest.is_empty() {
                return false;
            }
        }
        true
    }
}

impl fmt::Display for Cwf {
    /// Text grid: one row per line, columns 0..=n space-separated.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            for (l, v) in row.iter().enumerate() {
                if l > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", v)?;
            }
        }
        Ok(())
    }
}

/// A grid point where rows can split while scanning toward length 0:
/// some affixes keep the weight and some drop it.
pub fn is_branching(tables: &CountTables, l: usize, w: usize) -> bool {
    tables.keep_count(l, w) > 0 && tables.drop_count(l, w) > 0
}

/// A grid point where rows join while scanning toward length 0: reached
/// both by keeping weight from (l+1, w) and by dropping from (l+1, w+1).
pub fn is_merging(tables: &CountTables, l: usize, w: usize) -> bool {
    tables.keep_count(l + 1, w) > 0 && tables.drop_count(l + 1, w + 1) > 0
}
