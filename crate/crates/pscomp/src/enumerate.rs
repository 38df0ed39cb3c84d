//! Full enumeration of every string multiset compatible with a composition
//! multiset, up to reversal.
//!
//! Works in two stages. The scan stage walks lengths from the middle of
//! the strings down to 0, splitting row classes according to the keep/drop
//! counts; each reachable split is a profile of "half strings" with their
//! doubled median weights. The assembly stage pairs half strings whose
//! median weights sum to the common weight (a small transportation problem
//! per median pair) and extends every pair to a full grid by rotational
//! symmetry.
//!
//! Row labels are never materialized: only class sizes matter, so classes
//! carry multiplicities instead.

use std::collections::BTreeSet;

use rayon::prelude::*;
use thiserror::Error;

use crate::compositions::{CompositionMultiset, CountTables};
use crate::cwf::Cwf;
use crate::strings::{ReversalClass, StringMultiset};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumerateError {
    #[error("profile admits no pairing of half strings into whole strings")]
    UnpairableProfile,
}

/// A class of identical half graphs: the running weights over columns
/// `0..=floor(n/2)` plus the doubled median weight, which for odd n also
/// encodes the value one column past the middle.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfClass {
    pub graph: Vec<usize>,
    pub doubled_median: usize,
}

/// One admissible multiset of half strings: distinct classes with counts
/// summing to 2h.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfProfile {
    pub n: usize,
    pub h: usize,
    pub wbar: usize,
    pub classes: Vec<(HalfClass, usize)>,
}

/// One transportation matrix pairing the classes of doubled median `t`
/// (rows) with the classes of doubled median `2*wbar - t` (columns).
/// For `t == wbar` the matrix is symmetric with an even diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairingMatrix {
    pub doubled_median: usize,
    pub cells: Vec<Vec<usize>>,
}

pub type PairingBundle = Vec<PairingMatrix>;

/// Sizes of the initial median groups: how many rows take each doubled
/// median weight. For even n these are the counts at the middle length;
/// for odd n the keep/drop counts one past the middle split the rows into
/// integer and half-integer medians.
pub fn initial_partition(tables: &CountTables) -> Vec<(usize, usize)> {
    let n = tables.n();
    let mut out = Vec::new();
    if n % 2 == 0 {
        for w in 0..=tables.weight() {
            let count = tables.affix_count(n / 2, w);
            if count > 0 {
                out.push((2 * w, count));
            }
        }
    } else {
        let ceil = n / 2 + 1;
        for w in 0..=tables.weight() {
            let keep = tables.keep_count(ceil, w);
            if keep > 0 {
                out.push((2 * w, keep));
            }
            let drop = tables.drop_count(ceil, w);
            if drop > 0 {
                out.push((2 * w - 1, drop));
            }
        }
        out.sort();
    }
    out
}

/// All vectors of the given length-of-`caps` with entries `0..=caps[i]`
/// summing to `total`, in ascending lexicographic order.
pub fn compositions_with_caps(total: usize, caps: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(caps.len());
    let tail: Vec<usize> = {
        // tail[i] = caps[i..].sum(), for pruning.
        let mut t = vec![0; caps.len() + 1];
        for i in (0..caps.len()).rev() {
            t[i] = t[i + 1] + caps[i];
        }
        t
    };
    fn go(
        i: usize,
        remaining: usize,
        caps: &[usize],
        tail: &[usize],
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if i == caps.len() {
            if remaining == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let lo = remaining.saturating_sub(tail[i + 1]);
        let hi = caps[i].min(remaining);
        for x in lo..=hi {
            cur.push(x);
            go(i + 1, remaining - x, caps, tail, cur, out);
            cur.pop();
        }
    }
    if total <= tail[0] {
        go(0, total, caps, &tail, &mut cur, &mut out);
    }
    out
}

/// A class during the scan: its graph from the middle column down to the
/// current one, stored middle-first so extension is a push.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct PartialClass {
    rev_graph: Vec<usize>,
    doubled_median: usize,
    count: usize,
}

type State = Vec<PartialClass>;

/// Scan stage: breadth-first refinement from the middle column down to 0.
/// Every profile returned is a multiset of half graphs whose per-column
/// value counts reproduce the affix counts.
pub fn scan(tables: &CountTables) -> Vec<HalfProfile> {
    let (n, h, wbar) = (tables.n(), tables.h(), tables.weight());
    let half = n / 2;

    // The value at the middle column is dm/2 rounded down: integer medians
    // sit on the row value, half-integer medians (odd n only) sit half a
    // step above it.
    let initial: State = initial_partition(tables)
        .into_iter()
        .map(|(dm, count)| PartialClass {
            rev_graph: vec![dm / 2],
            doubled_median: dm,
            count,
        })
        .collect();

    let mut frontier: BTreeSet<State> = BTreeSet::new();
    frontier.insert({
        let mut s = initial;
        s.sort();
        s
    });

    for l in (1..=half).rev() {
        let mut next = BTreeSet::new();
        for state in &frontier {
            for child in advance_level(state, tables, l) {
                next.insert(child);
            }
        }
        frontier = next;
    }

    frontier
        .into_iter()
        .map(|state| {
            let mut classes: Vec<(HalfClass, usize)> = state
                .into_iter()
                .map(|pc| {
                    let mut graph = pc.rev_graph;
                    graph.reverse();
                    (
                        HalfClass {
                            graph,
                            doubled_median: pc.doubled_median,
                        },
                        pc.count,
                    )
                })
                .collect();
            classes.sort();
            HalfProfile { n, h, wbar, classes }
        })
        .collect()
}

/// Extends every class of `state` from column `l` to column `l-1`: at each
/// weight, `drop_count(l, w)` rows step down, split among the classes
/// sitting at w in every admissible way.
fn advance_level(state: &State, tables: &CountTables, l: usize) -> Vec<State> {
    let wbar = tables.weight();

    // Classes grouped by their value at column l, highest weight first.
    let mut by_value: Vec<(usize, Vec<usize>)> = Vec::new();
    for w in (0..=wbar).rev() {
        let idxs: Vec<usize> = (0..state.len())
            .filter(|&i| *state[i].rev_graph.last().unwrap() == w)
            .collect();
        if !idxs.is_empty() || tables.drop_count(l, w) > 0 {
            by_value.push((w, idxs));
        }
    }

    // Per-weight split choices are independent; accumulate their product.
    let mut order: Vec<usize> = Vec::new();
    let mut assignments: Vec<Vec<usize>> = vec![Vec::new()];
    for (w, idxs) in &by_value {
        let caps: Vec<usize> = idxs.iter().map(|&i| state[i].count).collect();
        let options = compositions_with_caps(tables.drop_count(l, *w), &caps);
        if options.is_empty() {
            return Vec::new();
        }
        order.extend_from_slice(idxs);
        assignments = assignments
            .into_iter()
            .flat_map(|prefix| {
                options.iter().map(move |opt| {
                    let mut v = prefix.clone();
                    v.extend_from_slice(opt);
                    v
                })
            })
            .collect();
    }

    assignments
        .into_iter()
        .map(|assignment| {
            let mut down_of = vec![0usize; state.len()];
            for (pos, &i) in order.iter().enumerate() {
                down_of[i] = assignment[pos];
            }
            let mut child: State = Vec::with_capacity(state.len() + 4);
            for (i, pc) in state.iter().enumerate() {
                let v = *pc.rev_graph.last().unwrap();
                let down = down_of[i];
                if down < pc.count {
                    let mut stay = pc.clone();
                    stay.rev_graph.push(v);
                    stay.count = pc.count - down;
                    child.push(stay);
                }
                if down > 0 {
                    let mut fall = pc.clone();
                    fall.rev_graph.push(v - 1);
                    fall.count = down;
                    child.push(fall);
                }
            }
            child.sort();
            child
        })
        .collect()
}

/// Class indices grouped by doubled median, in profile order.
fn median_groups(profile: &HalfProfile) -> Vec<(usize, Vec<usize>)> {
    let mut groups: Vec<(usize, Vec<usize>)> = Vec::new();
    for (i, (class, _)) in profile.classes.iter().enumerate() {
        match groups.iter_mut().find(|(dm, _)| *dm == class.doubled_median) {
            Some((_, idxs)) => idxs.push(i),
            None => groups.push((class.doubled_median, vec![i])),
        }
    }
    groups.sort();
    groups
}

fn group_sizes(profile: &HalfProfile, idxs: &[usize]) -> Vec<usize> {
    idxs.iter().map(|&i| profile.classes[i].1).collect()
}

fn find_group<'a>(groups: &'a [(usize, Vec<usize>)], dm: usize) -> &'a [usize] {
    groups
        .iter()
        .find(|(d, _)| *d == dm)
        .map(|(_, idxs)| idxs.as_slice())
        .unwrap_or(&[])
}

/// All matrices with the given row and column sums.
fn transportation_matrices(row_sums: &[usize], col_sums: &[usize]) -> Vec<Vec<Vec<usize>>> {
    if row_sums.iter().sum::<usize>() != col_sums.iter().sum::<usize>() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut rows: Vec<Vec<usize>> = Vec::with_capacity(row_sums.len());
    fn go(
        i: usize,
        row_sums: &[usize],
        remaining: &mut Vec<usize>,
        rows: &mut Vec<Vec<usize>>,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        if i == row_sums.len() {
            out.push(rows.clone());
            return;
        }
        for row in compositions_with_caps(row_sums[i], remaining) {
            for (j, x) in row.iter().enumerate() {
                remaining[j] -= x;
            }
            rows.push(row.clone());
            go(i + 1, row_sums, remaining, rows, out);
            rows.pop();
            for (j, x) in row.iter().enumerate() {
                remaining[j] += x;
            }
        }
    }
    go(0, row_sums, &mut col_sums.to_vec(), &mut rows, &mut out);
    out
}

/// All symmetric matrices with even diagonal and the given row sums.
fn symmetric_pairing_matrices(sums: &[usize]) -> Vec<Vec<Vec<usize>>> {
    let r = sums.len();
    let mut out = Vec::new();
    let mut matrix = vec![vec![0usize; r]; r];
    let mut remaining = sums.to_vec();
    fn go(
        i: usize,
        r: usize,
        matrix: &mut Vec<Vec<usize>>,
        remaining: &mut Vec<usize>,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        if i == r {
            out.push(matrix.clone());
            return;
        }
        let rem_i = remaining[i];
        for diag in (0..=rem_i).step_by(2) {
            let caps: Vec<usize> = remaining[i + 1..].to_vec();
            for upper in compositions_with_caps(rem_i - diag, &caps) {
                matrix[i][i] = diag;
                for (off, &x) in upper.iter().enumerate() {
                    let j = i + 1 + off;
                    matrix[i][j] = x;
                    matrix[j][i] = x;
                    remaining[j] -= x;
                }
                remaining[i] = 0;
                go(i + 1, r, matrix, remaining, out);
                remaining[i] = rem_i;
                for (off, &x) in upper.iter().enumerate() {
                    let j = i + 1 + off;
                    matrix[i][j] = 0;
                    matrix[j][i] = 0;
                    remaining[j] += x;
                }
                matrix[i][i] = 0;
            }
        }
    }
    go(0, r, &mut matrix, &mut remaining, &mut out);
    out
}

/// All ways of pairing the profile's half strings so that the two median
/// weights in every pair sum to the common weight: the Cartesian product
/// of the per-median transportation solutions.
pub fn pairings(profile: &HalfProfile) -> Result<Vec<PairingBundle>, EnumerateError> {
    let wbar = profile.wbar;
    let groups = median_groups(profile);

    // Medians above twice the weight can never pair.
    if groups.iter().any(|(dm, _)| *dm > 2 * wbar) {
        return Err(EnumerateError::UnpairableProfile);
    }

    let mut per_median: Vec<Vec<PairingMatrix>> = Vec::new();
    for t in 0..=wbar {
        let lows = find_group(&groups, t);
        if t == wbar {
            if lows.is_empty() {
                continue;
            }
            let matrices = symmetric_pairing_matrices(&group_sizes(profile, lows));
            if matrices.is_empty() {
                return Err(EnumerateError::UnpairableProfile);
            }
            per_median.push(
                matrices
                    .into_iter()
                    .map(|cells| PairingMatrix { doubled_median: t, cells })
                    .collect(),
            );
        } else {
            let ups = find_group(&groups, 2 * wbar - t);
            if lows.is_empty() && ups.is_empty() {
                continue;
            }
            let matrices = transportation_matrices(
                &group_sizes(profile, lows),
                &group_sizes(profile, ups),
            );
            if matrices.is_empty() {
                return Err(EnumerateError::UnpairableProfile);
            }
            per_median.push(
                matrices
                    .into_iter()
                    .map(|cells| PairingMatrix { doubled_median: t, cells })
                    .collect(),
            );
        }
    }

    // Cartesian product across medians.
    let mut bundles: Vec<PairingBundle> = vec![Vec::new()];
    for options in per_median {
        bundles = bundles
            .into_iter()
            .flat_map(|prefix| {
                options.iter().map(move |m| {
                    let mut b = prefix.clone();
                    b.push(m.clone());
                    b
                })
            })
            .collect();
    }
    Ok(bundles)
}

fn extend_row(own: &[usize], other: &[usize], n: usize, wbar: usize) -> Vec<usize> {
    let half = n / 2;
    let mut row = Vec::with_capacity(n + 1);
    row.extend_from_slice(own);
    for l in half + 1..=n {
        row.push(wbar - other[n - l]);
    }
    row
}

/// Builds the full grid and string multiset for one pairing of a profile:
/// each paired pair of half graphs becomes one string, the upper half of
/// each row being the 180-degree rotation of its partner's half graph.
pub fn assemble(profile: &HalfProfile, bundle: &PairingBundle) -> (Cwf, StringMultiset) {
    let (n, wbar) = (profile.n, profile.wbar);
    let groups = median_groups(profile);

    let mut rows: Vec<Vec<usize>> = Vec::with_capacity(2 * profile.h);
    for matrix in bundle {
        let t = matrix.doubled_median;
        let lows = find_group(&groups, t);
        let mut push_pairs = |a: usize, b: usize, copies: usize| {
            let ga = &profile.classes[a].0.graph;
            let gb = &profile.classes[b].0.graph;
            for _ in 0..copies {
                rows.push(extend_row(ga, gb, n, wbar));
                rows.push(extend_row(gb, ga, n, wbar));
            }
        };
        if t == wbar {
            for (i, &a) in lows.iter().enumerate() {
                for (j, &b) in lows.iter().enumerate().skip(i) {
                    let copies = if i == j {
                        matrix.cells[i][i] / 2
                    } else {
                        matrix.cells[i][j]
                    };
                    push_pairs(a, b, copies);
                }
            }
        } else {
            let ups = find_group(&groups, 2 * wbar - t);
            for (i, &a) in lows.iter().enumerate() {
                for (j, &b) in ups.iter().enumerate() {
                    push_pairs(a, b, matrix.cells[i][j]);
                }
            }
        }
    }
    debug_assert_eq!(rows.len(), 2 * profile.h);
    let cwf = Cwf::new(rows).expect("assembled grid satisfies the grid conditions");
    let strings = cwf.corresponding_multiset();
    (cwf, strings)
}

/// Enumeration result: the distinct reversal classes and how many
/// multisets the stages emitted before deduplication (the two agree;
/// the count is kept as a checkable statistic).
#[derive(Debug, Clone)]
pub struct Enumeration {
    pub classes: Vec<ReversalClass>,
    pub emitted: usize,
}

/// All multisets compatible with `m`, up to reversal, sorted by canonical
/// form.
pub fn reconstruct_all(m: &CompositionMultiset) -> Vec<ReversalClass> {
    reconstruct_all_detailed(m).classes
}

pub fn reconstruct_all_detailed(m: &CompositionMultiset) -> Enumeration {
    let tables = m.count_tables();
    let mut classes = BTreeSet::new();
    let mut emitted = 0usize;
    for profile in scan(&tables) {
        let bundles = match pairings(&profile) {
            Ok(bundles) => bundles,
            // Half strings that extend to no whole string contribute nothing.
            Err(EnumerateError::UnpairableProfile) => continue,
        };
        for bundle in bundles {
            let (cwf, strings) = assemble(&profile, &bundle);
            debug_assert!(cwf.is_solution(m));
            emitted += 1;
            classes.insert(strings.canonical_class());
        }
    }
    Enumeration {
        classes: classes.into_iter().collect(),
        emitted,
    }
}

/// Parallel variant: profiles are expanded independently on the current
/// rayon pool and the per-profile class sets merged. Output order matches
/// the serial variant.
pub fn reconstruct_all_parallel(m: &CompositionMultiset) -> Vec<ReversalClass> {
    let tables = m.count_tables();
    let profiles = scan(&tables);
    profiles
        .par_iter()
        .map(|profile| {
            let mut classes = BTreeSet::new();
            if let Ok(bundles) = pairings(profile) {
                for bundle in bundles {
                    let (_, strings) = assemble(profile, &bundle);
                    classes.insert(strings.canonical_class());
                }
            }
            classes
        })
        .reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        })
        .into_iter()
        .collect()
}
