//! Avoider classes `S_n(Π)`, their quasisymmetric generating functions, and
//! Knuth-class structure of permutation sets.
//!
//! Enumeration is prefix backtracking: a prefix that already contains a
//! pattern is never extended, and each extension only looks for occurrences
//! ending at the new entry. Work is split across threads by the first entry.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::perm::{
    full_mask, CompiledPattern, DescentSet, PatternSet, Permutation, MAX_DESCENT_GRADE,
};
use crate::qsym::QSymElement;
use crate::tableau::{f_lambda, p_tableau, StandardTableau};

/// Default bound on materialized class size.
pub const DEFAULT_CAP: usize = 10_000_000;

/// `S_n(Π)` with its members in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AvoiderClass {
    pub n: usize,
    pub patterns: PatternSet,
    pub members: Vec<Permutation>,
}

impl AvoiderClass {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn q(&self) -> Result<QSymElement> {
        if self.members.is_empty() {
            return Ok(QSymElement::zero(self.n));
        }
        crate::qsym::f_of_permutation_set(&self.members)
    }

    pub fn is_union_of_knuth_classes(&self) -> bool {
        union_check(&self.members)
    }
}

struct Search {
    n: usize,
    patterns: Vec<CompiledPattern>,
    hopeless: bool,
}

impl Search {
    fn new(n: usize, patterns: &PatternSet) -> Search {
        let basis = patterns.minimal_basis();
        let mut compiled: Vec<CompiledPattern> = basis
            .iter()
            .filter(|p| p.len() <= n)
            .map(CompiledPattern::new)
            .collect();
        compiled.sort_by_key(CompiledPattern::len);
        Search {
            n,
            hopeless: compiled.first().is_some_and(|p| p.len() == 0),
            patterns: compiled,
        }
    }

    fn fresh_occurrence(&self, prefix: &[u8]) -> bool {
        let len = prefix.len();
        self.patterns
            .iter()
            .take_while(|p| p.len() <= len)
            .any(|p| p.occurs_ending_at_last(prefix))
    }

    fn first_values(&self) -> Vec<u8> {
        if self.hopeless {
            Vec::new()
        } else {
            (1..=self.n as u8).collect()
        }
    }

    /// Runs the search below the one-entry prefix `[first]`, or the empty
    /// permutation when `n = 0`. The visitor returns `false` to stop.
    fn run_from<F>(&self, first: Option<u8>, visit: &mut F) -> bool
    where
        F: FnMut(&[u8], u64) -> bool,
    {
        let mut prefix = Vec::with_capacity(self.n);
        let mut used = vec![false; self.n + 1];
        match first {
            None => {
                if self.hopeless {
                    return true;
                }
                self.extend(&mut prefix, &mut used, 0, visit)
            }
            Some(v) => {
                prefix.push(v);
                if self.fresh_occurrence(&prefix) {
                    return true;
                }
                used[v as usize] = true;
                self.extend(&mut prefix, &mut used, 0, visit)
            }
        }
    }

    fn extend<F>(&self, prefix: &mut Vec<u8>, used: &mut [bool], mask: u64, visit: &mut F) -> bool
    where
        F: FnMut(&[u8], u64) -> bool,
    {
        let len = prefix.len();
        if len == self.n {
            return visit(prefix, mask);
        }
        for v in 1..=self.n as u8 {
            if used[v as usize] {
                continue;
            }
            prefix.push(v);
            if !self.fresh_occurrence(prefix) {
                let mask = if len > 0 && prefix[len - 1] > v {
                    mask | 1u64.checked_shl(len as u32 - 1).unwrap_or(0)
                } else {
                    mask
                };
                used[v as usize] = true;
                let go = self.extend(prefix, used, mask, visit);
                used[v as usize] = false;
                if !go {
                    prefix.pop();
                    return false;
                }
            }
            prefix.pop();
        }
        true
    }

    fn starts(&self) -> Vec<Option<u8>> {
        if self.n == 0 {
            vec![None]
        } else {
            self.first_values().into_iter().map(Some).collect()
        }
    }
}

/// `S_n(Π)`, failing with [`Error::CapExceeded`] beyond [`DEFAULT_CAP`] members.
pub fn enumerate_avoiders(n: usize, patterns: &PatternSet) -> Result<AvoiderClass> {
    enumerate_avoiders_capped(n, patterns, DEFAULT_CAP)
}

pub fn enumerate_avoiders_capped(
    n: usize,
    patterns: &PatternSet,
    cap: usize,
) -> Result<AvoiderClass> {
    let search = Search::new(n, patterns);
    let total = AtomicUsize::new(0);
    let overflow = AtomicBool::new(false);
    let chunks: Vec<Vec<Permutation>> = search
        .starts()
        .into_par_iter()
        .map(|first| {
            let mut out = Vec::new();
            search.run_from(first, &mut |w, _| {
                if overflow.load(Ordering::Relaxed) {
                    return false;
                }
                if total.fetch_add(1, Ordering::Relaxed) >= cap {
                    overflow.store(true, Ordering::Relaxed);
                    return false;
                }
                out.push(Permutation::from_slice_unchecked(w));
                true
            });
            out
        })
        .collect();
    if overflow.load(Ordering::Relaxed) {
        return Err(Error::CapExceeded { n, cap });
    }
    Ok(AvoiderClass {
        n,
        patterns: patterns.clone(),
        members: chunks.into_iter().flatten().collect(),
    })
}

/// Calls `visit` once per avoider, in lexicographic order, on its one-line
/// notation.
pub fn for_each_avoider<F>(n: usize, patterns: &PatternSet, mut visit: F)
where
    F: FnMut(&[u8]),
{
    let search = Search::new(n, patterns);
    for first in search.starts() {
        search.run_from(first, &mut |w, _| {
            visit(w);
            true
        });
    }
}

/// Parallel fold over the avoiders. Each worker folds into its own
/// accumulator and the results are combined with `reduce`, so visiting order
/// is unspecified.
pub fn fold_avoiders<T, I, F, R>(n: usize, patterns: &PatternSet, init: I, fold: F, reduce: R) -> T
where
    T: Send,
    I: Fn() -> T + Sync + Send,
    F: Fn(&mut T, &[u8]) + Sync + Send,
    R: Fn(T, T) -> T + Sync + Send,
{
    let search = Search::new(n, patterns);
    search
        .starts()
        .into_par_iter()
        .map(|first| {
            let mut acc = init();
            search.run_from(first, &mut |w, _| {
                fold(&mut acc, w);
                true
            });
            acc
        })
        .reduce(&init, &reduce)
}

pub fn count_avoiders(n: usize, patterns: &PatternSet) -> u64 {
    fold_avoiders(n, patterns, || 0u64, |c, _| *c += 1, |a, b| a + b)
}

const DENSE_GRADE: usize = 22;

/// `Q_n(Π) = Σ_{σ ∈ S_n(Π)} F_{Des σ}`, computed without storing the class.
pub fn q_n(patterns: &PatternSet, n: usize) -> Result<QSymElement> {
    if n > MAX_DESCENT_GRADE {
        return invalid(format!(
            "Q_n needs descent sets of grade at most {MAX_DESCENT_GRADE}, got {n}"
        ));
    }
    let search = Search::new(n, patterns);
    let starts = search.starts();
    if n <= DENSE_GRADE {
        let size = full_mask(n) as usize + 1;
        let dense = starts
            .into_par_iter()
            .map(|first| {
                let mut acc = vec![0i64; size];
                search.run_from(first, &mut |_, m| {
                    acc[m as usize] += 1;
                    true
                });
                acc
            })
            .reduce(
                || vec![0i64; size],
                |mut a, b| {
                    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                    a
                },
            );
        return Ok(QSymElement::from_dense(n, &dense));
    }
    let sparse = starts
        .into_par_iter()
        .map(|first| {
            let mut acc: HashMap<u64, i64> = HashMap::new();
            search.run_from(first, &mut |_, m| {
                *acc.entry(m).or_default() += 1;
                true
            });
            acc
        })
        .reduce(HashMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_default() += v;
            }
            a
        });
    let mut q = QSymElement::zero(n);
    for (m, c) in sparse {
        q.add_term(DescentSet::from_mask_unchecked(n, m as u32), c);
    }
    Ok(q)
}

/// `D_J = {π ∈ S_n | Des π = J}`, or `D_J^{-1}` when `inverted`. Sorted.
pub fn d_class(n: usize, set: &DescentSet, inverted: bool) -> Result<Vec<Permutation>> {
    if set.grade() != n {
        return invalid(format!(
            "descent set {set} is not a subset of [{}]",
            n.max(1) - 1
        ));
    }
    let mut out = Vec::new();
    let mut prefix: Vec<u8> = Vec::with_capacity(n);
    let mut used = vec![false; n + 1];
    descent_dfs(n, set, &mut prefix, &mut used, &mut out);
    if inverted {
        out = out.iter().map(Permutation::inverse).collect();
        out.sort();
    }
    Ok(out)
}

fn descent_dfs(
    n: usize,
    set: &DescentSet,
    prefix: &mut Vec<u8>,
    used: &mut [bool],
    out: &mut Vec<Permutation>,
) {
    let len = prefix.len();
    if len == n {
        out.push(Permutation::from_slice_unchecked(prefix));
        return;
    }
    for v in 1..=n as u8 {
        if used[v as usize] {
            continue;
        }
        if len > 0 && (prefix[len - 1] > v) != set.contains(len) {
            continue;
        }
        prefix.push(v);
        used[v as usize] = true;
        descent_dfs(n, set, prefix, used, out);
        used[v as usize] = false;
        prefix.pop();
    }
}

fn common_size(set: &[Permutation]) -> Result<()> {
    if let Some(first) = set.first() {
        if let Some(bad) = set.iter().find(|p| p.len() != first.len()) {
            return invalid(format!(
                "permutations of different sizes: {first} and {bad}"
            ));
        }
    }
    Ok(())
}

/// Groups `set` by insertion tableau. Duplicates are dropped and each group
/// is sorted.
pub fn partition_into_knuth_classes(
    set: &[Permutation],
) -> Result<BTreeMap<StandardTableau, Vec<Permutation>>> {
    common_size(set)?;
    Ok(group(set))
}

fn group(set: &[Permutation]) -> BTreeMap<StandardTableau, Vec<Permutation>> {
    let distinct: BTreeSet<&Permutation> = set.iter().collect();
    let mut out: BTreeMap<StandardTableau, Vec<Permutation>> = BTreeMap::new();
    for p in distinct {
        out.entry(p_tableau(p)).or_default().push(p.clone());
    }
    out
}

fn union_check(set: &[Permutation]) -> bool {
    group(set)
        .iter()
        .all(|(p, members)| members.len() as u64 == f_lambda(&p.shape()))
}

/// Whether `set` is a union of full Knuth classes.
pub fn is_union_of_knuth_classes(set: &[Permutation]) -> Result<bool> {
    common_size(set)?;
    Ok(union_check(set))
}

/// A Knuth class that `S_n(Π)` only partly contains.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnuthBreak {
    pub n: usize,
    pub tableau: StandardTableau,
    pub inside: Permutation,
    pub outside: Permutation,
}

/// First `n ≤ M + 1` at which `S_n(Π)` is not a union of Knuth classes,
/// where `M` is the longest pattern. `None` means `Π` is pattern-Knuth
/// closed; checking past `M + 1` is unnecessary.
pub fn knuth_closure_break(patterns: &PatternSet) -> Result<Option<KnuthBreak>> {
    let Some(m) = patterns.max_len() else {
        return Ok(None);
    };
    for n in 0..=m + 1 {
        let class = enumerate_avoiders(n, patterns)?;
        for (p, members) in group(&class.members) {
            if members.len() as u64 == f_lambda(&p.shape()) {
                continue;
            }
            let outside = crate::tableau::knuth_class(&p)
                .into_iter()
                .find(|q| members.binary_search(q).is_err())
                .expect("a short group misses some class member");
            return Ok(Some(KnuthBreak {
                n,
                tableau: p,
                inside: members[0].clone(),
                outside,
            }));
        }
    }
    Ok(None)
}

/// Whether `S_n(Π)` is a union of Knuth classes for every `n`. The empty set
/// is closed.
pub fn is_pattern_knuth_closed(patterns: &PatternSet) -> Result<bool> {
    Ok(knuth_closure_break(patterns)?.is_none())
}
