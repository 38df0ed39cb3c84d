//! Greedy single-multiset reconstruction: builds one grid compatible with
//! a composition multiset in O(nh) cell writes by handing the largest
//! weights at each length to the lowest-numbered string pairs.

use thiserror::Error;

use crate::compositions::CompositionMultiset;
use crate::cwf::Cwf;
use crate::strings::StringMultiset;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GreedyError {
    #[error("composition multiset admits no solution: {reason}")]
    Infeasible { reason: String },
}

/// Builds one multiset of strings whose prefix-suffix compositions equal
/// `m`, together with the grid realizing it.
///
/// Walking lengths from n-1 down to 1 and weights from high to low, the
/// rows at each length take the available weights in order: string pair k
/// gets weight w on its forward row at length l exactly when k falls in
/// the k-interval of w. The sweep must include w = 0: the forward cell is
/// a no-op there, but the mirrored cell on the partner row takes the full
/// weight. The built grid is checked before decoding; a failure means the
/// input passed the static identities but admits no solution.
pub fn reconstruct_one(m: &CompositionMultiset) -> Result<(Cwf, StringMultiset), GreedyError> {
    let (grid, _) = build_grid(m);
    let cwf = Cwf::new(grid).map_err(|violation| GreedyError::Infeasible {
        reason: violation.to_string(),
    })?;
    if !cwf.is_solution(m) {
        return Err(GreedyError::Infeasible {
            reason: "constructed grid does not reproduce the composition counts".into(),
        });
    }
    let strings = cwf.corresponding_multiset();
    Ok((cwf, strings))
}

/// Grid construction only; returns the number of cell writes performed
/// (excluding the zero initialization), which is at most 2h(n+1).
pub(crate) fn build_grid(m: &CompositionMultiset) -> (Vec<Vec<usize>>, usize) {
    let (n, h, wbar) = (m.n(), m.h(), m.weight());
    let mut rows = vec![vec![0usize; n + 1]; 2 * h];
    let mut writes = 0usize;
    for row in rows.iter_mut() {
        row[n] = wbar;
        writes += 1;
    }
    for l in (1..n).rev() {
        // heavier = number of length-l affixes with weight > w; iterating
        // the nonzero counts keeps the sweep proportional to h, not wbar.
        let mut heavier = 0usize;
        for &(w, count) in m.support(l) {
            let last = (count + heavier).min(h);
            for k in (1 + heavier)..=last {
                rows[2 * k - 2][l] = w;
                rows[2 * k - 1][n - l] = wbar - w;
                writes += 2;
            }
            heavier += count;
        }
    }
    (rows, writes)
}
