//! Permutations in one-line notation and the combinatorics built directly on
//! them: standardization, pattern containment, descents, the dihedral
//! symmetries, shuffles, increasing runs and contraction/expansion.
//!
//! Entries are stored 1-based (`1..=n`) in a `u8`, so sizes are capped at 255.
//! Descent sets are bitmasks and are capped at grade 32.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::SmallVec;

use crate::error::{invalid, Error, Result};

pub(crate) type Entries = SmallVec<[u8; 16]>;

/// Largest grade a [`DescentSet`] can carry.
pub const MAX_DESCENT_GRADE: usize = 32;

/// A permutation of `1..=n` written as the sequence `π_1 … π_n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Permutation {
    entries: Entries,
}

impl Permutation {
    /// Builds a permutation from its one-line entries, which must be exactly
    /// `1..=n` in some order.
    pub fn new<I>(entries: I) -> Result<Self>
    where
        I: IntoIterator,
        I::Item: TryInto<u8>,
    {
        let mut out = Entries::new();
        for e in entries {
            match e.try_into() {
                Ok(v) => out.push(v),
                Err(_) => return invalid("permutation entry out of range (max 255)"),
            }
        }
        let n = out.len();
        let mut seen = vec![false; n + 1];
        for &v in &out {
            let v = v as usize;
            if v == 0 || v > n || seen[v] {
                return invalid(format!(
                    "{:?} is not a permutation of 1..{}",
                    out.as_slice(),
                    n
                ));
            }
            seen[v] = true;
        }
        Ok(Permutation { entries: out })
    }

    pub(crate) fn from_entries_unchecked(entries: Entries) -> Self {
        debug_assert!(Permutation::new(entries.iter().copied()).is_ok());
        Permutation { entries }
    }

    pub(crate) fn from_slice_unchecked(entries: &[u8]) -> Self {
        Self::from_entries_unchecked(Entries::from_slice(entries))
    }

    /// The empty permutation, the unique element of `S_0`.
    pub fn empty() -> Self {
        Permutation::default()
    }

    /// `ι_n = 12…n`.
    pub fn identity(n: usize) -> Self {
        Permutation::from_entries_unchecked((1..=n as u8).collect())
    }

    /// `δ_n = n…21`.
    pub fn decreasing(n: usize) -> Self {
        Permutation::from_entries_unchecked((1..=n as u8).rev().collect())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    /// 1-based access, `σ_i`.
    pub fn at(&self, i: usize) -> usize {
        self.entries[i - 1] as usize
    }

    pub fn descent_set(&self) -> DescentSet {
        DescentSet::from_mask_unchecked(self.len(), descent_mask(&self.entries))
    }

    pub fn complement(&self) -> Self {
        let top = self.len() as u8 + 1;
        Permutation::from_entries_unchecked(self.entries.iter().map(|&v| top - v).collect())
    }

    pub fn reverse(&self) -> Self {
        Permutation::from_entries_unchecked(self.entries.iter().rev().copied().collect())
    }

    pub fn inverse(&self) -> Self {
        let mut inv = Entries::from_elem(0, self.len());
        for (i, &v) in self.entries.iter().enumerate() {
            inv[v as usize - 1] = i as u8 + 1;
        }
        Permutation::from_entries_unchecked(inv)
    }

    /// Rotation of the permutation matrix by 180 degrees, `π^{rc}`.
    pub fn rot180(&self) -> Self {
        self.reverse().complement()
    }

    /// True iff some subsequence of `self` standardizes to `pattern`.
    pub fn contains(&self, pattern: &Permutation) -> bool {
        CompiledPattern::new(pattern).occurs_in(&self.entries)
    }

    pub fn avoids_all(&self, patterns: &PatternSet) -> bool {
        patterns.iter().all(|p| !self.contains(p))
    }

    /// Maximal increasing factors, left to right.
    pub fn increasing_runs(&self) -> Vec<&[u8]> {
        let e = &self.entries[..];
        let mut runs = Vec::new();
        let mut start = 0;
        for i in 1..=e.len() {
            if i == e.len() || e[i - 1] > e[i] {
                if i > start {
                    runs.push(&e[start..i]);
                }
                start = i;
            }
        }
        runs
    }

    /// The composition `α(σ)` of run lengths.
    pub fn descent_composition(&self) -> Composition {
        Composition {
            parts: self.increasing_runs().iter().map(|r| r.len()).collect(),
        }
    }

    /// `c_j`: delete `σ_j` and standardize.
    pub fn contract(&self, j: usize) -> Result<Self> {
        if j == 0 || j > self.len() {
            return invalid(format!("contraction index {j} outside 1..={}", self.len()));
        }
        let removed = self.entries[j - 1];
        Ok(Permutation::from_entries_unchecked(
            self.entries
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != j - 1)
                .map(|(_, &v)| if v > removed { v - 1 } else { v })
                .collect(),
        ))
    }

    /// `e_j`: raise every entry above `σ_j` by one and insert `σ_j + 1`
    /// directly after position `j`.
    pub fn expand(&self, j: usize) -> Result<Self> {
        if j == 0 || j > self.len() {
            return invalid(format!("expansion index {j} outside 1..={}", self.len()));
        }
        if self.len() >= u8::MAX as usize {
            return invalid("expansion would exceed the maximum permutation size");
        }
        let pivot = self.entries[j - 1];
        let mut out: Entries = self
            .entries
            .iter()
            .map(|&v| if v > pivot { v + 1 } else { v })
            .collect();
        out.insert(j, pivot + 1);
        Ok(Permutation::from_entries_unchecked(out))
    }

    /// `des_α σ`: the number of descents of `σ` that fall strictly inside a
    /// block of the `α`-decomposition. Positions are global; a descent at a
    /// block boundary is not counted.
    pub fn alpha_descent_number(&self, alpha: &Composition) -> Result<usize> {
        let blocks = self.alpha_blocks(alpha)?;
        Ok(blocks
            .iter()
            .map(|b| b.windows(2).filter(|w| w[0] > w[1]).count())
            .sum())
    }

    /// Every block of the `α`-decomposition is comodal.
    pub fn is_alpha_comodal(&self, alpha: &Composition) -> Result<bool> {
        Ok(self.alpha_blocks(alpha)?.iter().all(|b| comodal(b)))
    }

    fn alpha_blocks(&self, alpha: &Composition) -> Result<Vec<&[u8]>> {
        if alpha.grade() != self.len() {
            return invalid(format!(
                "composition {alpha} has size {} but the permutation has size {}",
                alpha.grade(),
                self.len()
            ));
        }
        let mut blocks = Vec::with_capacity(alpha.len());
        let mut start = 0;
        for &p in alpha.parts() {
            blocks.push(&self.entries[start..start + p]);
            start += p;
        }
        Ok(blocks)
    }

    /// All of `S_n` in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = Permutation> {
        let mut next = Some(Permutation::identity(n));
        std::iter::from_fn(move || {
            let cur = next.take()?;
            let mut e = cur.entries.clone();
            if next_permutation(&mut e) {
                next = Some(Permutation::from_entries_unchecked(e));
            }
            Some(cur)
        })
    }
}

fn next_permutation(e: &mut [u8]) -> bool {
    if e.len() < 2 {
        return false;
    }
    let mut i = e.len() - 1;
    while i > 0 && e[i - 1] >= e[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = e.len() - 1;
    while e[j] <= e[i - 1] {
        j -= 1;
    }
    e.swap(i - 1, j);
    e[i..].reverse();
    true
}

pub(crate) fn descent_mask(e: &[u8]) -> u32 {
    let mut mask = 0u32;
    for i in 1..e.len() {
        if e[i - 1] > e[i] {
            mask |= 1 << (i - 1);
        }
    }
    mask
}

/// Order-isomorphic relabeling of distinct integers onto `1..=k`.
pub fn standardize<T: Ord + Copy>(seq: &[T]) -> Result<Permutation> {
    if seq.len() > u8::MAX as usize {
        return invalid("sequence too long to standardize");
    }
    let mut order: Vec<usize> = (0..seq.len()).collect();
    order.sort_by_key(|&i| seq[i]);
    if order.windows(2).any(|w| seq[w[0]] == seq[w[1]]) {
        return invalid("standardize requires distinct entries");
    }
    let mut out = Entries::from_elem(0, seq.len());
    for (rank, &i) in order.iter().enumerate() {
        out[i] = rank as u8 + 1;
    }
    Ok(Permutation::from_entries_unchecked(out))
}

/// Strictly decreasing then strictly increasing; either side may be empty.
pub fn comodal<T: Ord>(seq: &[T]) -> bool {
    let mut i = 0;
    while i + 1 < seq.len() && seq[i] > seq[i + 1] {
        i += 1;
    }
    while i + 1 < seq.len() && seq[i] < seq[i + 1] {
        i += 1;
    }
    i + 1 >= seq.len()
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len() <= 9 {
            for &v in &self.entries {
                write!(f, "{v}")?;
            }
        } else {
            let parts: Vec<String> = self.entries.iter().map(|v| v.to_string()).collect();
            f.write_str(&parts.join(","))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Digit form (`"35716824"`) or comma-separated form (`"10,2,1,…"`).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let values: Vec<u32> = if s.contains(',') {
            s.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad permutation entry `{t}` in `{s}`")))
                })
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10).ok_or_else(|| {
                        Error::Parse(format!("bad permutation digit `{c}` in `{s}`"))
                    })
                })
                .collect::<Result<_>>()?
        };
        Permutation::new(values).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Text(String),
            Entries(Vec<u32>),
        }
        match Repr::deserialize(deserializer)? {
            Repr::Text(s) => s.parse().map_err(serde::de::Error::custom),
            Repr::Entries(v) => Permutation::new(v).map_err(serde::de::Error::custom),
        }
    }
}

/// A pattern preprocessed for embedding search.
///
/// For each pattern index `i`, `left_lo[i]`/`left_hi[i]` name the earlier index
/// whose value is the nearest below/above `pattern[i]`; `right_lo`/`right_hi`
/// do the same among later indices. A candidate text value only has to be
/// compared against those two neighbours to stay order-isomorphic.
#[derive(Clone, Debug)]
pub(crate) struct CompiledPattern {
    values: Entries,
    left_lo: Vec<Option<usize>>,
    left_hi: Vec<Option<usize>>,
    right_lo: Vec<Option<usize>>,
    right_hi: Vec<Option<usize>>,
}

impl CompiledPattern {
    pub(crate) fn new(p: &Permutation) -> Self {
        let v = p.entries.clone();
        let k = v.len();
        let nearest = |i: usize, range: std::ops::Range<usize>| {
            let mut lo: Option<usize> = None;
            let mut hi: Option<usize> = None;
            for j in range {
                if v[j] < v[i] && lo.is_none_or(|l| v[l] < v[j]) {
                    lo = Some(j);
                }
                if v[j] > v[i] && hi.is_none_or(|h| v[h] > v[j]) {
                    hi = Some(j);
                }
            }
            (lo, hi)
        };
        let (left_lo, left_hi) = (0..k).map(|i| nearest(i, 0..i)).unzip();
        let (right_lo, right_hi) = (0..k).map(|i| nearest(i, i + 1..k)).unzip();
        CompiledPattern {
            values: v,
            left_lo,
            left_hi,
            right_lo,
            right_hi,
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.values.len()
    }

    /// Any occurrence anywhere in `text`.
    pub(crate) fn occurs_in(&self, text: &[u8]) -> bool {
        let k = self.len();
        if k > text.len() {
            return false;
        }
        let mut assigned = [0u8; 256];
        self.embed_left(text, 0, 0, &mut assigned)
    }

    fn embed_left(&self, text: &[u8], i: usize, start: usize, assigned: &mut [u8; 256]) -> bool {
        let k = self.len();
        if i == k {
            return true;
        }
        for p in start..=text.len() - (k - i) {
            let t = text[p];
            if self.left_lo[i].is_some_and(|j| assigned[j] >= t) {
                continue;
            }
            if self.left_hi[i].is_some_and(|j| assigned[j] <= t) {
                continue;
            }
            assigned[i] = t;
            if self.embed_left(text, i + 1, p + 1, assigned) {
                return true;
            }
        }
        false
    }

    /// An occurrence whose final letter is the final entry of `text`. Used
    /// for incremental checks when a prefix grows by one entry.
    pub(crate) fn occurs_ending_at_last(&self, text: &[u8]) -> bool {
        let k = self.len();
        if k == 0 {
            return true;
        }
        if k > text.len() {
            return false;
        }
        let mut assigned = [0u8; 256];
        assigned[k - 1] = text[text.len() - 1];
        self.embed_right(text, k - 1, text.len() - 1, &mut assigned)
    }

    fn embed_right(&self, text: &[u8], i: usize, end: usize, assigned: &mut [u8; 256]) -> bool {
        if i == 0 {
            return true;
        }
        let i = i - 1;
        // positions i..end remain for pattern letters 0..=i
        for p in (i..end).rev() {
            let t = text[p];
            if self.right_lo[i].is_some_and(|j| assigned[j] >= t) {
                continue;
            }
            if self.right_hi[i].is_some_and(|j| assigned[j] <= t) {
                continue;
            }
            assigned[i] = t;
            if self.embed_right(text, i, p, assigned) {
                return true;
            }
        }
        false
    }
}

/// A subset of `[n-1]`, stored as a bitmask with bit `i-1` for position `i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DescentSet {
    grade: u8,
    mask: u32,
}

impl DescentSet {
    pub fn new(grade: usize, positions: impl IntoIterator<Item = usize>) -> Result<Self> {
        if grade > MAX_DESCENT_GRADE {
            return invalid(format!(
                "descent sets are limited to grade {MAX_DESCENT_GRADE}"
            ));
        }
        let mut mask = 0u32;
        for p in positions {
            if p == 0 || p >= grade {
                return invalid(format!(
                    "descent position {p} outside 1..={}",
                    grade as isize - 1
                ));
            }
            mask |= 1 << (p - 1);
        }
        Ok(DescentSet {
            grade: grade as u8,
            mask,
        })
    }

    pub fn empty(grade: usize) -> Self {
        Self::from_mask_unchecked(grade, 0)
    }

    /// `[n-1]`.
    pub fn full(grade: usize) -> Self {
        Self::from_mask_unchecked(grade, full_mask(grade))
    }

    pub fn from_mask(grade: usize, mask: u32) -> Result<Self> {
        if grade > MAX_DESCENT_GRADE || mask & !full_mask(grade) != 0 {
            return invalid(format!(
                "mask {mask:#b} is not a subset of [{}]",
                grade as isize - 1
            ));
        }
        Ok(Self::from_mask_unchecked(grade, mask))
    }

    pub(crate) fn from_mask_unchecked(grade: usize, mask: u32) -> Self {
        debug_assert!(mask & !full_mask(grade) == 0);
        DescentSet {
            grade: grade as u8,
            mask,
        }
    }

    pub fn grade(&self) -> usize {
        self.grade as usize
    }

    pub fn mask(&self) -> u32 {
        self.mask
    }

    pub fn positions(&self) -> Vec<usize> {
        (1..self.grade()).filter(|&p| self.contains(p)).collect()
    }

    pub fn contains(&self, p: usize) -> bool {
        p >= 1 && p < self.grade() && self.mask & (1 << (p - 1)) != 0
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    /// `[n-1] - S`.
    pub fn complement(&self) -> Self {
        Self::from_mask_unchecked(self.grade(), full_mask(self.grade()) & !self.mask)
    }

    pub fn to_composition(&self) -> Composition {
        let n = self.grade();
        let mut parts = Vec::new();
        let mut last = 0;
        for p in self.positions() {
            parts.push(p - last);
            last = p;
        }
        if n > 0 {
            parts.push(n - last);
        }
        Composition { parts }
    }
}

pub(crate) fn full_mask(grade: usize) -> u32 {
    if grade <= 1 {
        0
    } else {
        (((1u64) << (grade - 1)) - 1) as u32
    }
}

impl fmt::Display for DescentSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ps: Vec<String> = self.positions().iter().map(|p| p.to_string()).collect();
        write!(f, "{{{}}}", ps.join(","))
    }
}

impl fmt::Debug for DescentSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self, self.grade)
    }
}

impl Serialize for DescentSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.positions().serialize(serializer)
    }
}

/// A sequence of positive integers; `grade` is its sum.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return invalid(format!("composition parts must be positive: {parts:?}"));
        }
        Ok(Composition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn grade(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Partial sums, last one dropped.
    pub fn to_descent_set(&self) -> DescentSet {
        let n = self.grade();
        let mut mask = 0u32;
        let mut acc = 0;
        for &p in &self.parts[..self.parts.len().saturating_sub(1)] {
            acc += p;
            mask |= 1 << (acc - 1);
        }
        DescentSet::from_mask_unchecked(n, mask)
    }

    /// All compositions of `n`, in the order of their descent-set masks.
    pub fn all(n: usize) -> Vec<Composition> {
        (0..=full_mask(n))
            .map(|m| DescentSet::from_mask_unchecked(n, m).to_composition())
            .collect()
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ps: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", ps.join(","))
    }
}

impl fmt::Debug for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Composition{self}")
    }
}

impl<'de> Deserialize<'de> for Composition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<usize>::deserialize(deserializer)?;
        Composition::new(parts).map_err(serde::de::Error::custom)
    }
}

/// A finite set of patterns, possibly of mixed lengths.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PatternSet {
    patterns: BTreeSet<Permutation>,
}

impl PatternSet {
    pub fn new() -> Self {
        PatternSet::default()
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    pub fn insert(&mut self, p: Permutation) -> bool {
        self.patterns.insert(p)
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.patterns.contains(p)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Permutation> + '_ {
        self.patterns.iter()
    }

    pub fn is_subset(&self, other: &PatternSet) -> bool {
        self.patterns.is_subset(&other.patterns)
    }

    /// Length of the longest pattern, `M`.
    pub fn max_len(&self) -> Option<usize> {
        self.patterns.iter().map(Permutation::len).max()
    }

    pub fn union(&self, other: &PatternSet) -> PatternSet {
        self.patterns.union(&other.patterns).cloned().collect()
    }

    pub fn difference(&self, other: &PatternSet) -> PatternSet {
        self.patterns.difference(&other.patterns).cloned().collect()
    }

    pub fn map(&self, f: impl Fn(&Permutation) -> Permutation) -> PatternSet {
        self.patterns.iter().map(f).collect()
    }

    pub fn complement(&self) -> PatternSet {
        self.map(Permutation::complement)
    }

    pub fn reverse(&self) -> PatternSet {
        self.map(Permutation::reverse)
    }

    pub fn inverse(&self) -> PatternSet {
        self.map(Permutation::inverse)
    }

    pub fn rot180(&self) -> PatternSet {
        self.map(Permutation::rot180)
    }

    /// All of `S_k` as a pattern set.
    pub fn symmetric_group(k: usize) -> PatternSet {
        Permutation::all(k).collect()
    }

    /// Drops every pattern that contains another member; the avoider class is
    /// unchanged.
    pub fn minimal_basis(&self) -> PatternSet {
        let all: Vec<&Permutation> = self.patterns.iter().collect();
        all.iter()
            .filter(|p| !all.iter().any(|q| q.len() < p.len() && p.contains(q)))
            .map(|p| (*p).clone())
            .collect()
    }
}

impl FromIterator<Permutation> for PatternSet {
    fn from_iter<I: IntoIterator<Item = Permutation>>(iter: I) -> Self {
        PatternSet {
            patterns: iter.into_iter().collect(),
        }
    }
}

impl<'a> IntoIterator for &'a PatternSet {
    type Item = &'a Permutation;
    type IntoIter = std::collections::btree_set::Iter<'a, Permutation>;

    fn into_iter(self) -> Self::IntoIter {
        self.patterns.iter()
    }
}

impl fmt::Display for PatternSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ps: Vec<String> = self.patterns.iter().map(|p| p.to_string()).collect();
        write!(f, "{{{}}}", ps.join(","))
    }
}

impl fmt::Debug for PatternSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PatternSet{self}")
    }
}

impl FromStr for PatternSet {
    type Err = Error;

    /// Comma- or semicolon-separated digit-form permutations, with optional
    /// surrounding braces. The empty string is the empty set.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('{').trim_end_matches('}');
        s.split([',', ';'])
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(str::parse)
            .collect()
    }
}

/// All interleavings of two words on disjoint alphabets, sorted.
pub fn shuffle_words<T: Copy + Ord>(a: &[T], b: &[T]) -> Vec<Vec<T>> {
    fn rec<T: Copy>(a: &[T], b: &[T], cur: &mut Vec<T>, out: &mut Vec<Vec<T>>) {
        if a.is_empty() && b.is_empty() {
            out.push(cur.clone());
            return;
        }
        if let Some((&x, rest)) = a.split_first() {
            cur.push(x);
            rec(rest, b, cur, out);
            cur.pop();
        }
        if let Some((&y, rest)) = b.split_first() {
            cur.push(y);
            rec(a, rest, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(a, b, &mut Vec::with_capacity(a.len() + b.len()), &mut out);
    out.sort();
    out.dedup();
    out
}

/// `π ⧢ σ = π ⧢ (σ + m)` for `π ∈ S_m`, sorted lexicographically.
pub fn shuffle(pi: &Permutation, sigma: &Permutation) -> Vec<Permutation> {
    let m = pi.len() as u8;
    let shifted: Vec<u8> = sigma.entries.iter().map(|&v| v + m).collect();
    shuffle_words(&pi.entries, &shifted)
        .into_iter()
        .map(|w| Permutation::from_entries_unchecked(Entries::from_vec(w)))
        .collect()
}

/// `Π ⧢ Π′`, the union of all pairwise shuffles.
pub fn shuffle_sets(left: &PatternSet, right: &PatternSet) -> PatternSet {
    let mut out = PatternSet::new();
    for p in left {
        for q in right {
            for w in shuffle(p, q) {
                out.insert(w);
            }
        }
    }
    out
}

/// `(12…(j-2) j) ⧢ (j-1)` with `ι_j` removed.
pub fn partial_shuffle(j: usize) -> Result<PatternSet> {
    if j < 3 {
        return invalid(format!("partial shuffle needs j >= 3, got {j}"));
    }
    if j > u8::MAX as usize {
        return invalid("partial shuffle size too large");
    }
    let word: Vec<u8> = (1..=j as u8).filter(|&v| v != j as u8 - 1).collect();
    let identity = Permutation::identity(j);
    Ok(shuffle_words(&word, &[j as u8 - 1])
        .into_iter()
        .map(|w| Permutation::from_entries_unchecked(Entries::from_vec(w)))
        .filter(|p| *p != identity)
        .collect())
}
