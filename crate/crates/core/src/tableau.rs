//! Partitions, standard Young tableaux, Robinson–Schensted insertion and
//! Knuth equivalence.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{invalid, Error, Result};
use crate::perm::{DescentSet, Entries, Permutation};

/// A weakly decreasing sequence of positive integers.
///
/// Ordered reverse-lexicographically, so `(4) < (3,1) < (2,2) < …` in every
/// sorted collection.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(transparent)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        other.parts.cmp(&self.parts)
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return invalid(format!("{parts:?} is not a partition"));
        }
        Ok(Partition { parts })
    }

    pub(crate) fn from_parts_unchecked(parts: Vec<usize>) -> Self {
        debug_assert!(Partition::new(parts.clone()).is_ok());
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    /// The one-row shape `(n)`.
    pub fn row(n: usize) -> Self {
        Partition::from_parts_unchecked(if n == 0 { vec![] } else { vec![n] })
    }

    /// The one-column shape `(1^n)`.
    pub fn column(n: usize) -> Self {
        Partition::from_parts_unchecked(vec![1; n])
    }

    /// The hook `(a, 1^b)`.
    pub fn hook(arm: usize, leg: usize) -> Result<Self> {
        if arm == 0 && leg > 0 {
            return invalid("a hook with a leg needs a first row");
        }
        let mut parts = if arm == 0 { vec![] } else { vec![arm] };
        parts.extend(std::iter::repeat_n(1, leg));
        Partition::new(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of rows, `ℓ(λ)`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `λ_i`, 1-based; zero past the last row.
    pub fn part(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    /// Whether box `(row, col)` (1-based) lies in the diagram.
    pub fn has_box(&self, row: usize, col: usize) -> bool {
        row >= 1 && col >= 1 && self.part(row) >= col
    }

    pub fn transpose(&self) -> Partition {
        let first = self.part(1);
        let parts = (1..=first)
            .map(|c| self.parts.iter().filter(|&&p| p >= c).count())
            .collect();
        Partition::from_parts_unchecked(parts)
    }

    /// `(a, 1^b)`; the empty partition counts.
    pub fn is_hook(&self) -> bool {
        self.part(2) <= 1
    }

    /// Shapes obtained by removing one corner box.
    pub fn remove_box_all(&self) -> Vec<Partition> {
        (0..self.parts.len())
            .filter(|&i| i + 1 == self.parts.len() || self.parts[i] > self.parts[i + 1])
            .map(|i| {
                let mut parts = self.parts.clone();
                parts[i] -= 1;
                if parts[i] == 0 {
                    parts.pop();
                }
                Partition::from_parts_unchecked(parts)
            })
            .collect()
    }

    /// Shapes obtained by adding one box.
    pub fn add_box_all(&self) -> Vec<Partition> {
        let mut out = Vec::new();
        for i in 0..=self.parts.len() {
            if i == 0 || self.parts[i - 1] > self.part(i + 1) {
                let mut parts = self.parts.clone();
                if i == parts.len() {
                    parts.push(1);
                } else {
                    parts[i] += 1;
                }
                out.push(Partition::from_parts_unchecked(parts));
            }
        }
        out
    }

    /// Every partition of `n`, reverse-lexicographic.
    pub fn all(n: usize) -> Vec<Partition> {
        fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition::from_parts_unchecked(cur.clone()));
                return;
            }
            for p in (1..=rem.min(max)).rev() {
                cur.push(p);
                rec(rem - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }
}

/// `enumerate_partitions(n)`.
pub fn partitions(n: usize) -> Vec<Partition> {
    Partition::all(n)
}

/// `H_n`, the hooks of size `n`.
pub fn hooks(n: usize) -> Vec<Partition> {
    Partition::all(n)
        .into_iter()
        .filter(Partition::is_hook)
        .collect()
}

/// `H_{n,j}`: partitions of `n` whose diagram omits box `(2, j)`.
pub fn fattened_hooks(n: usize, j: usize) -> Vec<Partition> {
    Partition::all(n)
        .into_iter()
        .filter(|l| !l.has_box(2, j))
        .collect()
}

/// `H̄_n`: hooks other than `(n)` and `(1^n)`.
pub fn nontrivial_hooks(n: usize) -> Vec<Partition> {
    hooks(n)
        .into_iter()
        .filter(|l| *l != Partition::row(n) && *l != Partition::column(n))
        .collect()
}

/// `T_n`: each shape of `H̄_{n-1}` with the box `(2,2)` added.
pub fn t_shapes(n: usize) -> Vec<Partition> {
    if n == 0 {
        return Vec::new();
    }
    let mut out: Vec<Partition> = nontrivial_hooks(n - 1)
        .into_iter()
        .map(|l| {
            let mut parts = l.parts;
            parts[1] += 1;
            if parts.last() == Some(&0) {
                parts.pop();
            }
            Partition::from_parts_unchecked(parts)
        })
        .collect();
    out.sort();
    out
}

/// Number of standard tableaux of shape `λ`, by the hook-length formula.
pub fn f_lambda(shape: &Partition) -> u64 {
    let total: u128 = (1..=shape.size() as u128).product();
    (total / hook_product(shape)) as u64
}

fn hook_product(shape: &Partition) -> u128 {
    let conj = shape.transpose();
    let mut prod: u128 = 1;
    for (r, &row) in shape.parts().iter().enumerate() {
        for c in 0..row {
            prod *= ((row - c - 1) + (conj.parts()[c] - r - 1) + 1) as u128;
        }
    }
    prod
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ps: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", ps.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition{self}")
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts = s
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad partition part `{t}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        Partition::new(Vec::deserialize(deserializer)?).map_err(serde::de::Error::custom)
    }
}

/// A standard Young tableau in English notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
#[serde(transparent)]
pub struct StandardTableau {
    rows: Vec<Vec<u8>>,
}

impl StandardTableau {
    pub fn new(rows: Vec<Vec<u8>>) -> Result<Self> {
        let shape: Vec<usize> = rows.iter().map(Vec::len).collect();
        Partition::new(shape)
            .map_err(|_| Error::InvalidInput("rows do not form a partition shape".into()))?;
        let n: usize = rows.iter().map(Vec::len).sum();
        let mut seen = vec![false; n + 1];
        for row in &rows {
            for &v in row {
                let v = v as usize;
                if v == 0 || v > n || seen[v] {
                    return invalid(format!("tableau entries must be exactly 1..={n}"));
                }
                seen[v] = true;
            }
            if row.windows(2).any(|w| w[0] >= w[1]) {
                return invalid("tableau rows must increase");
            }
        }
        for pair in rows.windows(2) {
            if pair[1]
                .iter()
                .zip(&pair[0])
                .any(|(below, above)| above >= below)
            {
                return invalid("tableau columns must increase");
            }
        }
        Ok(StandardTableau { rows })
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    pub fn shape(&self) -> Partition {
        Partition::from_parts_unchecked(self.rows.iter().map(Vec::len).collect())
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// `P_{i,j}`, 1-based.
    pub fn entry(&self, row: usize, col: usize) -> Option<u8> {
        self.rows
            .get(row.checked_sub(1)?)?
            .get(col.checked_sub(1)?)
            .copied()
    }

    fn row_of(&self) -> Vec<usize> {
        let mut row_of = vec![0; self.size() + 1];
        for (r, row) in self.rows.iter().enumerate() {
            for &v in row {
                row_of[v as usize] = r;
            }
        }
        row_of
    }

    /// `i` such that `i+1` sits in a strictly lower row than `i`.
    pub fn descent_set(&self) -> DescentSet {
        let n = self.size();
        let row_of = self.row_of();
        let mut mask = 0u32;
        for i in 1..n {
            if row_of[i + 1] > row_of[i] {
                mask |= 1 << (i - 1);
            }
        }
        DescentSet::from_mask_unchecked(n, mask)
    }

    pub fn transpose(&self) -> StandardTableau {
        let width = self.rows.first().map_or(0, Vec::len);
        let rows = (0..width)
            .map(|c| {
                self.rows
                    .iter()
                    .take_while(|r| r.len() > c)
                    .map(|r| r[c])
                    .collect()
            })
            .collect();
        StandardTableau { rows }
    }

    /// Rows filled in order: `1..λ_1`, then `λ_1+1..`, and so on.
    pub fn row_superstandard(shape: &Partition) -> StandardTableau {
        let mut next = 1u8;
        let rows = shape
            .parts()
            .iter()
            .map(|&len| {
                let row: Vec<u8> = (next..next + len as u8).collect();
                next += len as u8;
                row
            })
            .collect();
        StandardTableau { rows }
    }

    /// Columns filled left to right.
    pub fn column_superstandard(shape: &Partition) -> StandardTableau {
        StandardTableau::row_superstandard(&shape.transpose()).transpose()
    }

    pub fn superstandard(shape: &Partition, orientation: Orientation) -> StandardTableau {
        match orientation {
            Orientation::Row => StandardTableau::row_superstandard(shape),
            Orientation::Column => StandardTableau::column_superstandard(shape),
        }
    }

    pub fn is_superstandard_hook(&self) -> bool {
        let shape = self.shape();
        shape.is_hook()
            && (*self == StandardTableau::row_superstandard(&shape)
                || *self == StandardTableau::column_superstandard(&shape))
    }

    /// `ρ(P)`: each column read bottom to top, columns left to right.
    pub fn column_reading_word(&self) -> Permutation {
        let t = self.transpose();
        let entries: Entries = t
            .rows
            .iter()
            .flat_map(|col| col.iter().rev().copied())
            .collect();
        Permutation::from_entries_unchecked(entries)
    }

    /// Rows concatenated top to bottom; the key for enumeration order.
    pub fn row_word(&self) -> Vec<u8> {
        self.rows.iter().flatten().copied().collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    Row,
    Column,
}

impl fmt::Display for StandardTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wide = self.size() > 9;
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| {
                let cells: Vec<String> = r.iter().map(|v| v.to_string()).collect();
                cells.join(if wide { "," } else { "" })
            })
            .collect();
        f.write_str(&rows.join("/"))
    }
}

impl fmt::Debug for StandardTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tableau({self})")
    }
}

impl FromStr for StandardTableau {
    type Err = Error;

    /// `"12/3"`, or with commas inside rows when entries exceed 9.
    /// Rows separated by `/`. Entries are single digits, or comma-separated
    /// when any comma is present; `1/2/…/10` reads as a single column.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(StandardTableau::default());
        }
        let integers = |row: &str| -> Result<Vec<u8>> {
            row.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<u8>()
                        .map_err(|_| Error::Parse(format!("bad tableau entry `{t}`")))
                })
                .collect()
        };
        let digits = |row: &str| -> Result<Vec<u8>> {
            row.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as u8)
                        .ok_or_else(|| Error::Parse(format!("bad tableau digit `{c}`")))
                })
                .collect()
        };
        let read = |cell: &dyn Fn(&str) -> Result<Vec<u8>>| -> Result<StandardTableau> {
            let rows = s
                .split('/')
                .map(|row| cell(row.trim()))
                .collect::<Result<Vec<_>>>()?;
            StandardTableau::new(rows).map_err(|e| Error::Parse(e.to_string()))
        };
        if s.contains(',') {
            return read(&integers);
        }
        read(&digits).or_else(|e| read(&integers).map_err(|_| e))
    }
}

impl<'de> Deserialize<'de> for StandardTableau {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        StandardTableau::new(Vec::deserialize(deserializer)?).map_err(serde::de::Error::custom)
    }
}

/// All standard tableaux of shape `λ`, ordered by row word.
pub fn enumerate_syt(shape: &Partition) -> Vec<StandardTableau> {
    fn rec(
        shape: &[usize],
        rows: &mut Vec<Vec<u8>>,
        next: u8,
        n: u8,
        out: &mut Vec<StandardTableau>,
    ) {
        if next > n {
            out.push(StandardTableau { rows: rows.clone() });
            return;
        }
        for r in 0..shape.len() {
            let len = rows[r].len();
            if len < shape[r] && (r == 0 || rows[r - 1].len() > len) {
                rows[r].push(next);
                rec(shape, rows, next + 1, n, out);
                rows[r].pop();
            }
        }
    }
    let n = shape.size() as u8;
    let mut rows = vec![Vec::new(); shape.len()];
    let mut out = Vec::new();
    rec(shape.parts(), &mut rows, 1, n, &mut out);
    out.sort_by_cached_key(StandardTableau::row_word);
    out
}

/// Robinson–Schensted: the insertion tableau `P` and recording tableau `Q`.
pub fn rsk(sigma: &Permutation) -> (StandardTableau, StandardTableau) {
    let mut p: Vec<Vec<u8>> = Vec::new();
    let mut q: Vec<Vec<u8>> = Vec::new();
    for (k, &x) in sigma.entries().iter().enumerate() {
        let mut x = x;
        let mut r = 0;
        loop {
            if r == p.len() {
                p.push(vec![x]);
                q.push(vec![k as u8 + 1]);
                break;
            }
            // bump the smallest entry strictly greater than x
            match p[r].iter().position(|&y| y > x) {
                Some(c) => {
                    std::mem::swap(&mut p[r][c], &mut x);
                    r += 1;
                }
                None => {
                    p[r].push(x);
                    q[r].push(k as u8 + 1);
                    break;
                }
            }
        }
    }
    (StandardTableau { rows: p }, StandardTableau { rows: q })
}

/// Insertion tableau only.
pub fn p_tableau(sigma: &Permutation) -> StandardTableau {
    rsk(sigma).0
}

/// Inverse of [`rsk`]: reverse-bumps the entries of `P` in the order the
/// recording tableau `Q` dictates.
pub fn rsk_inverse(p: &StandardTableau, q: &StandardTableau) -> Result<Permutation> {
    if p.shape() != q.shape() {
        return invalid(format!(
            "insertion tableau {p} and recording tableau {q} have different shapes"
        ));
    }
    let n = p.size();
    let mut rows = p.rows.clone();
    let q_row = q.row_of();
    let mut out = Entries::from_elem(0, n);
    for k in (1..=n).rev() {
        let mut r = q_row[k];
        let mut x = rows[r]
            .pop()
            .expect("recording tableau corner lies in its row");
        if rows[r].is_empty() {
            rows.pop();
        }
        while r > 0 {
            r -= 1;
            // largest entry strictly smaller than x
            let c = rows[r]
                .iter()
                .rposition(|&y| y < x)
                .expect("column strictness guarantees a smaller entry above");
            std::mem::swap(&mut rows[r][c], &mut x);
        }
        out[k - 1] = x;
    }
    Ok(Permutation::from_entries_unchecked(out))
}

/// `K(P)`: every permutation with insertion tableau `P`, sorted.
pub fn knuth_class(p: &StandardTableau) -> Vec<Permutation> {
    let mut out: Vec<Permutation> = enumerate_syt(&p.shape())
        .iter()
        .map(|q| rsk_inverse(p, q).expect("same shape"))
        .collect();
    out.sort();
    out
}

/// `K(λ)`: every permutation whose insertion tableau has shape `λ`, sorted.
pub fn knuth_aggregate(shape: &Partition) -> Vec<Permutation> {
    let tableaux = enumerate_syt(shape);
    let mut out: Vec<Permutation> = tableaux
        .iter()
        .flat_map(|p| {
            tableaux
                .iter()
                .map(move |q| rsk_inverse(p, q).expect("same shape"))
        })
        .collect();
    out.sort();
    out
}

/// Permutations one Knuth move away: `acb ↔ cab` and `bac ↔ bca` on
/// adjacent factors, `a < b < c`.
pub fn knuth_neighbors(sigma: &Permutation) -> BTreeSet<Permutation> {
    let e = sigma.entries();
    let mut out = BTreeSet::new();
    for i in 0..e.len().saturating_sub(2) {
        let (x, y, z) = (e[i], e[i + 1], e[i + 2]);
        if (x < z && z < y) || (y < z && z < x) {
            let mut w = Entries::from_slice(e);
            w.swap(i, i + 1);
            out.insert(Permutation::from_entries_unchecked(w));
        }
        if (y < x && x < z) || (z < x && x < y) {
            let mut w = Entries::from_slice(e);
            w.swap(i + 1, i + 2);
            out.insert(Permutation::from_entries_unchecked(w));
        }
    }
    out
}
