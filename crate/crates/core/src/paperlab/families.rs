//! Named pattern sets and the Schur expansions predicted for them.

use crate::perm::{partial_shuffle, shuffle_sets, PatternSet, Permutation};
use crate::qsym::SymElement;
use crate::tableau::{
    f_lambda, hooks, knuth_aggregate, knuth_class, nontrivial_hooks, t_shapes, Partition,
    StandardTableau,
};

fn set(s: &str) -> PatternSet {
    s.parse().expect("built-in pattern set")
}

fn shape(parts: &[usize]) -> Partition {
    Partition::new(parts.iter().copied().filter(|&p| p > 0).collect()).expect("valid shape")
}

/// The closed forms that occur for pattern sets inside `S_3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableExpansion {
    /// `Σ_λ f^λ s_λ`
    Everything,
    /// `Σ_{λ_1 < 3} f^λ s_λ`
    ShortRows,
    /// `Σ_{ℓ(λ) < 3} f^λ s_λ`
    ShortColumns,
    /// `Σ_{hooks} s_λ`
    Hooks,
    /// `s_{1^n} + s_{2,1^{n-2}}`
    ColumnAndNext,
    /// `s_n + s_{n-1,1}`
    RowAndNext,
    /// `s_n + s_{1^n}`
    RowAndColumn,
    /// `s_{1^n}`
    Column,
    /// `s_n`
    Row,
}

impl TableExpansion {
    pub fn label(self) -> &'static str {
        match self {
            TableExpansion::Everything => "sum f^λ s_λ",
            TableExpansion::ShortRows => "sum_{λ1<3} f^λ s_λ",
            TableExpansion::ShortColumns => "sum_{ℓ(λ)<3} f^λ s_λ",
            TableExpansion::Hooks => "sum_{hooks} s_λ",
            TableExpansion::ColumnAndNext => "s_{1^n} + s_{2,1^{n-2}}",
            TableExpansion::RowAndNext => "s_n + s_{n-1,1}",
            TableExpansion::RowAndColumn => "s_n + s_{1^n}",
            TableExpansion::Column => "s_{1^n}",
            TableExpansion::Row => "s_n",
        }
    }

    /// The expansion at grade `n ≥ 3`.
    pub fn at(self, n: usize) -> SymElement {
        let all = Partition::all(n);
        match self {
            TableExpansion::Everything => SymElement::from_weights(n, &all, |l| f_lambda(l) as i64),
            TableExpansion::ShortRows => {
                SymElement::from_weights(n, all.iter().filter(|l| l.part(1) < 3), |l| {
                    f_lambda(l) as i64
                })
            }
            TableExpansion::ShortColumns => {
                SymElement::from_weights(n, all.iter().filter(|l| l.len() < 3), |l| {
                    f_lambda(l) as i64
                })
            }
            TableExpansion::Hooks => SymElement::from_weights(n, &hooks(n), |_| 1),
            TableExpansion::ColumnAndNext => {
                let mut next = vec![2];
                next.resize(n - 1, 1);
                sum_of(n, [Partition::column(n), shape(&next)])
            }
            TableExpansion::RowAndNext => sum_of(n, [Partition::row(n), shape(&[n - 1, 1])]),
            TableExpansion::RowAndColumn => sum_of(n, [Partition::row(n), Partition::column(n)]),
            TableExpansion::Column => SymElement::schur(Partition::column(n)),
            TableExpansion::Row => SymElement::schur(Partition::row(n)),
        }
    }
}

fn sum_of(n: usize, shapes: impl IntoIterator<Item = Partition>) -> SymElement {
    let mut s = SymElement::zero(n);
    for l in shapes {
        s.add_term(l, 1);
    }
    s
}

#[derive(Clone, Debug)]
pub struct TableRow {
    pub patterns: PatternSet,
    pub expansion: TableExpansion,
}

/// The sixteen `Π ⊆ S_3` (none containing both 123 and 321) whose `Q_n(Π)`
/// is symmetric for every `n`, with their expansions for `n ≥ 3`.
pub fn s3_table() -> Vec<TableRow> {
    use TableExpansion::*;
    let rows: [(&str, TableExpansion); 16] = [
        ("", Everything),
        ("123", ShortRows),
        ("321", ShortColumns),
        ("132,213", Hooks),
        ("132,312", Hooks),
        ("213,231", Hooks),
        ("231,312", Hooks),
        ("123,132,312", ColumnAndNext),
        ("123,213,231", ColumnAndNext),
        ("123,231,312", ColumnAndNext),
        ("132,213,321", RowAndNext),
        ("132,312,321", RowAndNext),
        ("213,231,321", RowAndNext),
        ("132,213,231,312", RowAndColumn),
        ("123,132,213,231,312", Column),
        ("132,213,231,312,321", Row),
    ];
    rows.into_iter()
        .map(|(p, e)| TableRow {
            patterns: set(p),
            expansion: e,
        })
        .collect()
}

/// Every `Π ⊆ S_3` in increasing order of its bitmask over `S_3` in lex order.
pub fn subsets_of_s3() -> Vec<PatternSet> {
    let s3: Vec<Permutation> = Permutation::all(3).collect();
    (0u32..1 << s3.len())
        .map(|mask| {
            s3.iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, p)| p.clone())
                .collect()
        })
        .collect()
}

/// Partial shuffle of size `j`, optionally with `δ_m` added.
pub fn partial_shuffle_family(j: usize, m: Option<usize>) -> crate::Result<PatternSet> {
    let mut pats = partial_shuffle(j)?;
    if let Some(m) = m {
        pats.insert(Permutation::decreasing(m));
    }
    Ok(pats)
}

/// `Σ f^{λ̄} s_λ` over `λ ⊢ n` with `λ_2 ≤ j − 2` and `ℓ(λ) < m`, where `λ̄`
/// caps the first part at `j − 2`.
pub fn fattened_prediction(n: usize, j: usize, m: Option<usize>) -> SymElement {
    let cap = j - 2;
    let shapes: Vec<Partition> = Partition::all(n)
        .into_iter()
        .filter(|l| l.part(2) <= cap && m.is_none_or(|m| l.len() < m))
        .collect();
    SymElement::from_weights(n, &shapes, |l| {
        let mut bar = l.parts().to_vec();
        if let Some(first) = bar.first_mut() {
            *first = (*first).min(cap);
        }
        f_lambda(&shape(&bar)) as i64
    })
}

pub fn four_pattern_set() -> PatternSet {
    set("1243,1324,3124,4321")
}

/// `s_n + 2s_{n-1,1} + 2s_{n-2,2} + 3s_{n-2,1,1} + 5s_{n-3,2,1} + 5s_{n-4,2,2}`
/// for `n ≥ 6`.
pub fn six_term(n: usize) -> SymElement {
    let mut s = SymElement::zero(n);
    s.add_term(shape(&[n]), 1);
    s.add_term(shape(&[n - 1, 1]), 2);
    s.add_term(shape(&[n - 2, 2]), 2);
    s.add_term(shape(&[n - 2, 1, 1]), 3);
    s.add_term(shape(&[n - 3, 2, 1]), 5);
    s.add_term(shape(&[n - 4, 2, 2]), 5);
    s
}

pub fn arc_patterns() -> PatternSet {
    set("1324,1342,2413,2431,3124,3142,4213,4231")
}

/// `{1} ⧢ {132,312}`.
pub fn shuffle_arc_patterns() -> PatternSet {
    shuffle_sets(&set("1"), &set("132,312"))
}

/// `{1} ⧢ Π` and `Π ⧢ {1}` for the four two-element hook rows of the table.
pub fn arc_variants() -> Vec<PatternSet> {
    let one = set("1");
    let mut out = Vec::new();
    for p in ["132,312", "132,213", "213,231", "231,312"] {
        out.push(shuffle_sets(&one, &set(p)));
        out.push(shuffle_sets(&set(p), &one));
    }
    out
}

/// `T_n + 2H̄_n + s_n + s_{1^n}`, for `n ≥ 2`.
pub fn arc_prediction(n: usize) -> SymElement {
    let mut s = SymElement::from_weights(n, &t_shapes(n), |_| 1);
    for l in nontrivial_hooks(n) {
        s.add_term(l, 2);
    }
    s.add_term(Partition::row(n), 1);
    s.add_term(Partition::column(n), 1);
    s
}

/// Whether each prefix of `sigma` is a cyclic interval of `Z_n`.
pub fn is_arc_permutation(sigma: &Permutation) -> bool {
    let n = sigma.len();
    let mut seen = vec![false; n];
    for (k, &v) in sigma.entries().iter().enumerate() {
        seen[v as usize - 1] = true;
        let size = k + 1;
        if size == n {
            break;
        }
        // a proper cyclic interval has exactly one gap start
        let starts = (0..n)
            .filter(|&i| seen[i] && !seen[(i + n - 1) % n])
            .count();
        if starts != 1 {
            return false;
        }
    }
    true
}

/// `X_n` for `n ≥ 4`: the identity, `3124…n`, `12…(n−3)(n−1)n(n−2)`, the
/// adjacent transpositions of the identity and the reversals of three
/// consecutive entries.
pub fn x_set(n: usize) -> Vec<Permutation> {
    let id: Vec<u8> = (1..=n as u8).collect();
    let mut out = vec![id.clone()];
    let mut a = id.clone();
    a[..3].copy_from_slice(&[3, 1, 2]);
    out.push(a);
    let mut b = id.clone();
    b[n - 3..].copy_from_slice(&[n as u8 - 1, n as u8, n as u8 - 2]);
    out.push(b);
    for i in 0..n - 1 {
        let mut t = id.clone();
        t.swap(i, i + 1);
        out.push(t);
    }
    for i in 0..n - 2 {
        let mut t = id.clone();
        t[i..i + 3].reverse();
        out.push(t);
    }
    let mut perms: Vec<Permutation> = out
        .into_iter()
        .map(|w| Permutation::new(w).expect("a permutation"))
        .collect();
    perms.sort();
    perms.dedup();
    perms
}

/// `S_4 − X_4`.
pub fn x_patterns() -> PatternSet {
    let x: PatternSet = x_set(4).into_iter().collect();
    PatternSet::symmetric_group(4).difference(&x)
}

/// `s_n + 2s_{n-1,1} + s_{n-2,1,1} − s_{n-2,2}` for `n ≥ 4`.
pub fn signed_prediction(n: usize) -> SymElement {
    let mut s = SymElement::zero(n);
    s.add_term(shape(&[n]), 1);
    s.add_term(shape(&[n - 1, 1]), 2);
    s.add_term(shape(&[n - 2, 1, 1]), 1);
    s.add_term(shape(&[n - 2, 2]), -1);
    s
}

/// The tableau 124/3/5.
pub fn stability_tableau() -> StandardTableau {
    "124/3/5".parse().expect("valid tableau")
}

/// `K((3,1,1)) − K(124/3/5)`: 30 patterns.
pub fn stability_patterns() -> PatternSet {
    let agg: PatternSet = knuth_aggregate(&shape(&[3, 1, 1])).into_iter().collect();
    let class: PatternSet = knuth_class(&stability_tableau()).into_iter().collect();
    agg.difference(&class)
}

/// Pattern sets with `Q_n` Schur nonnegative for every `n`.
pub fn nonnegative_family() -> Vec<PatternSet> {
    let mut out: Vec<PatternSet> = s3_table().into_iter().map(|r| r.patterns).collect();
    for p in [
        "1",
        "12",
        "21",
        "1234",
        "4321",
        "1243,1423,4123",
        "2134,2314,2341",
    ] {
        out.push(set(p));
    }
    out
}

/// Deterministic sample of pairs from [`nonnegative_family`].
pub fn positivity_pairs() -> Vec<(PatternSet, PatternSet)> {
    let pairs: [(&str, &str); 24] = [
        ("12", "21"),
        ("132,213", "132,213"),
        ("132,213", "231,312"),
        ("231,312", "132,213"),
        ("132,213", "123"),
        ("321", "132,213"),
        ("132,213,321", "231,312"),
        ("123,231,312", "132,213"),
        ("132,213,231,312", "231,312"),
        ("132,213", "132,213,231,312"),
        ("132,312,321", "132,213,321"),
        ("123,132,312", "213,231,321"),
        ("123,213,231", "123,231,312"),
        ("132,213,231,312,321", "132,213"),
        ("123,132,213,231,312", "231,312"),
        ("1243,1423,4123", "132,213"),
        ("231,312", "2134,2314,2341"),
        ("1", "132,213,321"),
        ("123,231,312", "1"),
        ("12", "132,213"),
        ("231,312", "21"),
        ("123", "321"),
        ("132,312", "213,231"),
        ("1234", "132,213,321"),
    ];
    pairs.into_iter().map(|(a, b)| (set(a), set(b))).collect()
}

/// Pairs for the shuffle-recursion identity.
pub fn recursion_pairs() -> Vec<(PatternSet, PatternSet)> {
    let pairs: [(&str, &str); 10] = [
        ("12", "12"),
        ("1", "132,312"),
        ("12", "21"),
        ("132,213", "123"),
        ("21", "132"),
        ("123", "1"),
        ("231", "12"),
        ("1", ""),
        ("132", "2413"),
        ("12,21", "1"),
    ];
    pairs.into_iter().map(|(a, b)| (set(a), set(b))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_sizes() {
        assert_eq!(s3_table().len(), 16);
        assert_eq!(subsets_of_s3().len(), 64);
        assert_eq!(x_set(4).len(), 8);
        assert_eq!(x_set(7).len(), 14);
        assert_eq!(x_patterns().len(), 16);
        assert_eq!(stability_patterns().len(), 30);
        assert_eq!(
            shuffle_arc_patterns(),
            set("1243,1423,2143,4123,2413,4213,2431,4231")
        );
        assert_eq!(arc_variants().len(), 8);
        assert!(positivity_pairs().len() >= 20);
    }

    #[test]
    fn predictions() {
        assert_eq!(
            arc_prediction(5).to_string(),
            "s_5 + 2s_{41} + s_{32} + 2s_{311} + s_{221} + 2s_{2111} + s_{11111}"
        );
        assert_eq!(fattened_prediction(4, 3, None), TableExpansion::Hooks.at(4));
        for n in 6..11 {
            assert_eq!(fattened_prediction(n, 4, Some(4)), six_term(n));
        }
        assert_eq!(
            fattened_prediction(5, 3, Some(3)),
            TableExpansion::RowAndNext.at(5)
        );
    }

    #[test]
    fn arc_membership() {
        assert!(is_arc_permutation(&"2134".parse().unwrap()));
        assert!(is_arc_permutation(&"4123".parse().unwrap()));
        assert!(!is_arc_permutation(&"1324".parse().unwrap()));
        let count = Permutation::all(5).filter(is_arc_permutation).count();
        assert_eq!(count, 40);
    }
}
