use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use super::families::{self, TableRow};
use super::{timed, CheckResult, Verdict};
use crate::avoid::{count_avoiders, enumerate_avoiders, fold_avoiders, knuth_closure_break, q_n};
use crate::error::{invalid, Result};
use crate::perm::{shuffle_sets, Composition, DescentSet, PatternSet, Permutation};
use crate::qsym::{
    f_of_permutation_set, fine_character, mn_character, schur_to_fundamental, to_schur,
    QSymElement, SchurExpansion, SymElement,
};
use crate::tableau::{
    enumerate_syt, f_lambda, knuth_class, knuth_neighbors, rsk, rsk_inverse, Partition,
    StandardTableau,
};

fn expand(patterns: &PatternSet, n: usize) -> Result<(QSymElement, SchurExpansion)> {
    let q = q_n(patterns, n)?;
    let s = to_schur(&q)?;
    Ok((q, s))
}

/// `None` when `got` is exactly `expected`, otherwise a description of the
/// first disagreement.
fn mismatch(expected: &SymElement, got: &SchurExpansion) -> Option<Value> {
    let actual = match got {
        SchurExpansion::NotInSpan { .. } => {
            return Some(json!({
                "kind": "not-symmetric",
                "expected": expected.to_string(),
                "expansion": got,
            }))
        }
        SchurExpansion::InSpan(s) => s,
    };
    if actual == expected {
        return None;
    }
    let shapes: std::collections::BTreeSet<&Partition> = expected
        .terms()
        .chain(actual.terms())
        .map(|(l, _)| l)
        .collect();
    let first = shapes
        .into_iter()
        .find(|l| expected.coeff(l) != actual.coeff(l))
        .expect("unequal elements differ somewhere");
    Some(json!({
        "kind": "coefficient",
        "partition": first,
        "expected": expected.coeff(first),
        "actual": actual.coeff(first),
        "expected_expansion": expected.to_string(),
        "actual_expansion": actual.to_string(),
    }))
}

fn with_context(mut w: Value, n: usize, patterns: &PatternSet) -> Value {
    if let Value::Object(m) = &mut w {
        m.insert("n".into(), json!(n));
        m.insert("patterns".into(), json!(patterns));
    }
    w
}

/// The first `Some` produced by `f` over `items`, evaluated in parallel.
fn first_some<T, F>(items: &[T], f: F) -> Result<Option<Value>>
where
    T: Sync,
    F: Fn(&T) -> Result<Option<Value>> + Sync + Send,
{
    let found: Vec<Option<Value>> = items.par_iter().map(f).collect::<Result<_>>()?;
    Ok(found.into_iter().flatten().next())
}

fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        invalid(msg())
    }
}

pub fn check_table_s3(n_max: usize) -> Result<CheckResult> {
    require(n_max >= 3, || {
        format!("table check needs n_max >= 3, got {n_max}")
    })?;
    timed("table-s3", json!({ "n_max": n_max }), || {
        let rows = families::s3_table();
        let mut v = Verdict::theorem();
        for n in 3..=n_max {
            let bad = first_some(&rows, |row: &TableRow| {
                let (_, s) = expand(&row.patterns, n)?;
                Ok(mismatch(&row.expansion.at(n), &s).map(|w| {
                    let mut w = with_context(w, n, &row.patterns);
                    w["row"] = json!(row.expansion.label());
                    w
                }))
            })?;
            if bad.is_some() {
                v.witness = bad;
                return Ok(v);
            }
        }
        v.note(format!("{} pattern sets, 3 <= n <= {n_max}", rows.len()));
        Ok(v)
    })
}

pub fn check_non_table_asymmetry(n_max: usize) -> Result<CheckResult> {
    require(n_max >= 3, || {
        format!("asymmetry check needs n_max >= 3, got {n_max}")
    })?;
    timed("non-table-asymmetry", json!({ "n_max": n_max }), || {
        let table: Vec<PatternSet> = families::s3_table()
            .into_iter()
            .map(|r| r.patterns)
            .collect();
        let both: PatternSet = "123,321".parse()?;
        let mut candidates: Vec<PatternSet> = families::subsets_of_s3()
            .into_iter()
            .filter(|p| !both.is_subset(p) && !table.contains(p))
            .collect();
        candidates.sort();
        let first_asym: Vec<Option<usize>> = candidates
            .par_iter()
            .map(|p| -> Result<Option<usize>> {
                for n in 3..=n_max {
                    if !q_n(p, n)?.is_symmetric() {
                        return Ok(Some(n));
                    }
                }
                Ok(None)
            })
            .collect::<Result<_>>()?;
        let mut v = Verdict::theorem();
        if let Some(i) = first_asym.iter().position(Option::is_none) {
            v.witness = Some(json!({ "patterns": candidates[i], "symmetric_through": n_max }));
            return Ok(v);
        }
        let mut by_grade: BTreeMap<usize, usize> = BTreeMap::new();
        for n in first_asym.into_iter().flatten() {
            *by_grade.entry(n).or_default() += 1;
        }
        let hist: Vec<String> = by_grade
            .iter()
            .map(|(n, c)| format!("n={n}: {c}"))
            .collect();
        v.note(format!(
            "{} sets; first non-symmetric grade {}",
            candidates.len(),
            hist.join(", ")
        ));
        Ok(v)
    })
}

/// `Q_n(Π′) + Σ_{k<n} Q_k(Π)(s_1 Q_{n−k−1}(Π′) − Q_{n−k}(Π′))` for every
/// `n ≤ n_max`.
pub fn shuffle_recursion_rhs(
    left: &PatternSet,
    right: &PatternSet,
    n_max: usize,
) -> Result<Vec<QSymElement>> {
    let ql: Vec<QSymElement> = (0..=n_max).map(|k| q_n(left, k)).collect::<Result<_>>()?;
    let qr: Vec<QSymElement> = (0..=n_max).map(|k| q_n(right, k)).collect::<Result<_>>()?;
    let s1 = QSymElement::s1();
    Ok((0..=n_max)
        .map(|n| {
            let mut rhs = qr[n].clone();
            for k in 0..n {
                let diff = &(&s1 * &qr[n - k - 1]) - &qr[n - k];
                rhs = &rhs + &(&ql[k] * &diff);
            }
            rhs
        })
        .collect())
}

fn recursion_failure(
    left: &PatternSet,
    right: &PatternSet,
    n_max: usize,
) -> Result<Option<(usize, Value)>> {
    let shuffled = shuffle_sets(left, right);
    let rhs = shuffle_recursion_rhs(left, right, n_max)?;
    for (n, r) in rhs.iter().enumerate() {
        let lhs = q_n(&shuffled, n)?;
        if &lhs != r {
            return Ok(Some((
                n,
                json!({
                    "n": n,
                    "left": left,
                    "right": right,
                    "enumerated": lhs,
                    "recursion": r,
                }),
            )));
        }
    }
    Ok(None)
}

pub fn check_shuffle_recursion(
    left: &PatternSet,
    right: &PatternSet,
    n_max: usize,
) -> Result<CheckResult> {
    timed(
        "shuffle-recursion",
        json!({ "left": left, "right": right, "n_max": n_max }),
        || {
            let mut v = Verdict::theorem();
            v.witness = recursion_failure(left, right, n_max)?.map(|(_, w)| w);
            Ok(v)
        },
    )
}

pub fn check_shuffle_recursion_sample(
    pairs: &[(PatternSet, PatternSet)],
    n_max: usize,
) -> Result<CheckResult> {
    timed(
        "shuffle-recursion",
        json!({ "n_max": n_max, "pairs": pairs }),
        || {
            let fails: Vec<Option<(usize, Value)>> = pairs
                .par_iter()
                .map(|(l, r)| recursion_failure(l, r, n_max))
                .collect::<Result<_>>()?;
            let mut v = Verdict::theorem();
            v.witness = fails
                .into_iter()
                .zip(pairs)
                .filter_map(|(f, p)| f.map(|(n, w)| (n, p, w)))
                .min_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)))
                .map(|(_, _, w)| w);
            v.note(format!("{} pairs, 0 <= n <= {n_max}", pairs.len()));
            Ok(v)
        },
    )
}

fn nonnegative_through(patterns: &PatternSet, n_max: usize) -> Result<bool> {
    for n in 0..=n_max {
        let (_, s) = expand(patterns, n)?;
        if !s.as_sym().is_some_and(SymElement::is_schur_nonnegative) {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn check_conjecture_shuffle_nonneg(
    pairs: &[(PatternSet, PatternSet)],
    n_max: usize,
) -> Result<CheckResult> {
    timed(
        "shuffle-positivity",
        json!({ "n_max": n_max, "pairs": pairs }),
        || {
            let mut factors: Vec<PatternSet> = pairs
                .iter()
                .flat_map(|(a, b)| [a.clone(), b.clone()])
                .collect();
            factors.sort();
            factors.dedup();
            let info: BTreeMap<PatternSet, (bool, bool)> = factors
                .par_iter()
                .map(|p| -> Result<(PatternSet, (bool, bool))> {
                    let closed = knuth_closure_break(p)?.is_none();
                    Ok((p.clone(), (nonnegative_through(p, n_max)?, closed)))
                })
                .collect::<Result<_>>()?;
            let tested: Vec<&(PatternSet, PatternSet)> = pairs
                .iter()
                .filter(|(a, b)| info[a].0 && info[b].0)
                .collect();
            let outcomes: Vec<Option<(usize, Value)>> = tested
                .par_iter()
                .map(|(a, b)| -> Result<Option<(usize, Value)>> {
                    let shuffled = shuffle_sets(a, b);
                    for n in 0..=n_max {
                        let (_, s) = expand(&shuffled, n)?;
                        if !s.as_sym().is_some_and(SymElement::is_schur_nonnegative) {
                            return Ok(Some((
                                n,
                                json!({ "n": n, "left": a, "right": b, "expansion": s }),
                            )));
                        }
                    }
                    Ok(None)
                })
                .collect::<Result<_>>()?;
            let proved = |a: &PatternSet, b: &PatternSet| info[a].1 || info[b].1;
            let mut v = Verdict::conjecture();
            let violations: Vec<(usize, &(PatternSet, PatternSet), Value, bool)> = outcomes
                .into_iter()
                .zip(&tested)
                .filter_map(|(o, p)| o.map(|(n, w)| (n, *p, w, proved(&p.0, &p.1))))
                .collect();
            let pick = |only_proved: bool| {
                violations
                    .iter()
                    .filter(|x| !only_proved || x.3)
                    .min_by(|x, y| (x.0, x.1).cmp(&(y.0, y.1)))
                    .map(|x| x.2.clone())
            };
            if let Some(w) = pick(true) {
                v.proved_violation = true;
                v.witness = Some(w);
            } else {
                v.witness = pick(false);
            }
            let n_proved = tested.iter().filter(|(a, b)| proved(a, b)).count();
            v.note(format!(
                "{} pairs tested ({} covered by Knuth closure, {} open), {} skipped with a factor not nonnegative through n = {n_max}",
                tested.len(),
                n_proved,
                tested.len() - n_proved,
                pairs.len() - tested.len()
            ));
            Ok(v)
        },
    )
}

pub fn check_partial_shuffle(j: usize, m: Option<usize>, n_max: usize) -> Result<CheckResult> {
    require(j >= 3, || format!("partial shuffle needs j >= 3, got {j}"))?;
    require(m.is_none_or(|m| m >= 2), || "δ_m needs m >= 2".to_string())?;
    let patterns = families::partial_shuffle_family(j, m)?;
    timed(
        "partial-shuffle",
        json!({ "j": j, "m": m, "n_max": n_max }),
        || {
            let proved = j == 3 || (j == 4 && m == Some(4));
            let mut v = if proved {
                Verdict::theorem()
            } else {
                Verdict::conjecture()
            };
            let grades: Vec<usize> = (1..=n_max).collect();
            v.witness = first_some(&grades, |&n| {
                let (_, s) = expand(&patterns, n)?;
                if let Some(w) = mismatch(&families::fattened_prediction(n, j, m), &s) {
                    return Ok(Some(with_context(w, n, &patterns)));
                }
                if j == 4 && m == Some(4) && n >= 6 {
                    if let Some(w) = mismatch(&families::six_term(n), &s) {
                        return Ok(Some(with_context(w, n, &patterns)));
                    }
                }
                Ok(None)
            })?;
            v.note(format!("patterns {patterns}"));
            Ok(v)
        },
    )
}

fn run_lengths(w: &[u8]) -> Vec<usize> {
    let mut out = Vec::new();
    let mut len = 0;
    for (i, &x) in w.iter().enumerate() {
        if i > 0 && w[i - 1] > x {
            out.push(len);
            len = 0;
        }
        len += 1;
    }
    if len > 0 {
        out.push(len);
    }
    out
}

fn least_avoider(
    n: usize,
    patterns: &PatternSet,
    pred: impl Fn(&[u8]) -> bool + Sync + Send,
) -> Option<Vec<u8>> {
    fold_avoiders(
        n,
        patterns,
        || None::<Vec<u8>>,
        |best, w| {
            if pred(w) && best.as_deref().is_none_or(|b| w < b) {
                *best = Some(w.to_vec());
            }
        },
        |a, b| match (a, b) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        },
    )
}

pub fn check_runlength_support(m_max: usize, n_max: usize) -> Result<CheckResult> {
    timed(
        "run-lengths",
        json!({ "m_max": m_max, "n_max": n_max }),
        || {
            let pats = families::four_pattern_set();
            let mut v = Verdict::theorem();
            let mut counts = Vec::new();
            for m in 1..=m_max {
                let short = |w: &[u8]| {
                    let r = run_lengths(w);
                    r.len() == 6 && r.iter().all(|&l| l <= 2)
                };
                if let Some(w) = least_avoider(m, &pats, short) {
                    v.witness = Some(json!({
                        "kind": "six-short-runs",
                        "m": m,
                        "permutation": Permutation::new(w)?,
                    }));
                    return Ok(v);
                }
                counts.push(format!("{m}:{}", count_avoiders(m, &pats)));
            }
            for n in 1..=n_max {
                if let Some(w) = least_avoider(n, &pats, |w| run_lengths(w).len() > 5) {
                    v.witness = Some(json!({
                        "kind": "more-than-five-runs",
                        "n": n,
                        "permutation": Permutation::new(w)?,
                    }));
                    return Ok(v);
                }
            }
            v.note(format!("avoider counts {}", counts.join(" ")));
            Ok(v)
        },
    )
}

/// Every standard tableau with `1..=size_max` boxes, by size, then shape,
/// then tableau order.
pub fn all_tableaux(size_max: usize) -> Vec<StandardTableau> {
    (1..=size_max)
        .flat_map(|n| {
            Partition::all(n)
                .into_iter()
                .flat_map(|l| enumerate_syt(&l))
        })
        .collect()
}

pub fn check_knuth_classification(size_max: usize) -> Result<CheckResult> {
    timed(
        "knuth-classification",
        json!({ "size_max": size_max }),
        || {
            let tableaux = all_tableaux(size_max);
            let verdicts: Vec<(bool, Option<crate::avoid::KnuthBreak>)> = tableaux
                .par_iter()
                .map(|p| -> Result<_> {
                    let class: PatternSet = knuth_class(p).into_iter().collect();
                    Ok((p.is_superstandard_hook(), knuth_closure_break(&class)?))
                })
                .collect::<Result<_>>()?;
            let mut v = Verdict::theorem();
            if let Some((p, (hook, br))) = tableaux
                .iter()
                .zip(&verdicts)
                .find(|(_, (hook, br))| *hook != br.is_none())
            {
                v.witness = Some(json!({
                    "tableau": p,
                    "superstandard_hook": hook,
                    "closed": br.is_none(),
                    "break": br,
                }));
                return Ok(v);
            }
            let closed: Vec<String> = tableaux
                .iter()
                .zip(&verdicts)
                .filter(|(_, (_, br))| br.is_none())
                .map(|(p, _)| p.to_string())
                .collect();
            v.note(format!(
                "{} tableaux with 1..={size_max} boxes; closed: {}",
                tableaux.len(),
                closed.join(" ")
            ));
            Ok(v)
        },
    )
}

pub fn check_arc(n_max: usize) -> Result<CheckResult> {
    require(n_max >= 4, || {
        format!("arc check needs n_max >= 4, got {n_max}")
    })?;
    timed("arc", json!({ "n_max": n_max }), || {
        let pa = families::arc_patterns();
        let ps = families::shuffle_arc_patterns();
        let variants = families::arc_variants();
        let mut v = Verdict::theorem();
        for n in 4..=n_max {
            let predicted = families::arc_prediction(n);
            let (qa, sa) = expand(&pa, n)?;
            if let Some(w) = mismatch(&predicted, &sa) {
                v.witness = Some(with_context(w, n, &pa));
                return Ok(v);
            }
            let (_, ss) = expand(&ps, n)?;
            if let Some(w) = mismatch(&predicted, &ss) {
                v.witness = Some(with_context(w, n, &ps));
                return Ok(v);
            }
            let (ca, cs) = (count_avoiders(n, &pa), count_avoiders(n, &ps));
            if ca != cs {
                v.witness = Some(json!({ "kind": "count", "n": n, "arc": ca, "shuffle": cs }));
                return Ok(v);
            }
            let members = enumerate_avoiders(n, &pa)?.members;
            let by_definition: Vec<Permutation> = Permutation::all(n)
                .filter(families::is_arc_permutation)
                .collect();
            if members != by_definition {
                let odd = members
                    .iter()
                    .chain(&by_definition)
                    .filter(|p| {
                        members.binary_search(p).is_ok() != by_definition.binary_search(p).is_ok()
                    })
                    .min()
                    .cloned();
                v.witness = Some(json!({ "kind": "arc-membership", "n": n, "permutation": odd }));
                return Ok(v);
            }
            for var in &variants {
                let q = q_n(var, n)?;
                if q != qa {
                    v.witness = Some(json!({
                        "kind": "variant",
                        "n": n,
                        "patterns": var,
                        "variant": q,
                        "arc": qa,
                    }));
                    return Ok(v);
                }
            }
        }
        v.note(format!(
            "4 <= n <= {n_max}; {} shuffle variants",
            variants.len()
        ));
        Ok(v)
    })
}

fn fine_mismatch(p: &StandardTableau) -> Result<Option<Value>> {
    let class = knuth_class(p);
    let shape = p.shape();
    for alpha in Composition::all(p.size()) {
        let fine = fine_character(&class, &alpha)?;
        let chi = mn_character(&shape, &alpha)?;
        if fine != chi {
            return Ok(Some(json!({
                "tableau": p,
                "alpha": alpha,
                "fine": fine,
                "character": chi,
            })));
        }
    }
    Ok(None)
}

pub fn check_exceptional_examples(n_max: usize) -> Result<CheckResult> {
    require(n_max >= 8, || format!("needs n_max >= 8, got {n_max}"))?;
    timed("exceptional-examples", json!({ "n_max": n_max }), || {
        let mut v = Verdict::theorem();
        let xp = families::x_patterns();
        for n in 4..=n_max {
            let class = enumerate_avoiders(n, &xp)?;
            let expected = families::x_set(n);
            if class.members != expected {
                v.witness = Some(json!({
                    "kind": "avoider-set",
                    "n": n,
                    "avoiders": class.members,
                    "expected": expected,
                }));
                return Ok(v);
            }
            let s = to_schur(&class.q()?)?;
            if let Some(w) = mismatch(&families::signed_prediction(n), &s) {
                v.witness = Some(with_context(w, n, &xp));
                return Ok(v);
            }
        }
        let bp = families::stability_patterns();
        let (_, s6) = expand(&bp, 6)?;
        if s6.as_sym().is_some() {
            v.witness = Some(json!({ "kind": "unexpectedly-symmetric", "n": 6, "expansion": s6 }));
            return Ok(v);
        }
        for n in 7..=n_max {
            let (_, s) = expand(&bp, n)?;
            match s.as_sym() {
                Some(e) if e.is_schur_nonnegative() => {
                    v.note(format!("late-symmetry example Q_{n} = {e}"))
                }
                _ => {
                    v.witness = Some(json!({ "kind": "not-nonnegative", "n": n, "expansion": s }));
                    return Ok(v);
                }
            }
        }
        for p in Partition::all(4).iter().flat_map(enumerate_syt) {
            if let Some(w) = fine_mismatch(&p)? {
                v.witness = Some(w);
                return Ok(v);
            }
        }
        Ok(v)
    })
}

pub fn check_fine_characters(size_max: usize) -> Result<CheckResult> {
    timed("fine-characters", json!({ "size_max": size_max }), || {
        let tableaux = all_tableaux(size_max);
        let mut v = Verdict::theorem();
        v.witness = first_some(&tableaux, fine_mismatch)?;
        v.note(format!("{} tableaux", tableaux.len()));
        Ok(v)
    })
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

fn rsk_failure(n_max: usize, laws_n: usize) -> Result<Option<Value>> {
    for n in 0..=n_max {
        let square_sum: u64 = Partition::all(n).iter().map(|l| f_lambda(l).pow(2)).sum();
        if square_sum != factorial(n) {
            return Ok(Some(
                json!({ "kind": "square-sum", "n": n, "sum": square_sum }),
            ));
        }
        let mut seen = HashSet::new();
        for sigma in Permutation::all(n) {
            let (p, q) = rsk(&sigma);
            if p.shape() != q.shape() || rsk_inverse(&p, &q)? != sigma || !seen.insert((p, q)) {
                return Ok(Some(json!({ "kind": "bijection", "permutation": sigma })));
            }
        }
    }
    for n in 0..=laws_n {
        for sigma in Permutation::all(n) {
            let (p, q) = rsk(&sigma);
            let bad = if sigma.descent_set() != q.descent_set() {
                Some("descents")
            } else if rsk(&sigma.reverse()).0 != p.transpose() {
                Some("reverse-transposes")
            } else if rsk(&sigma.inverse()) != (q.clone(), p.clone()) {
                Some("inverse-swaps")
            } else {
                None
            };
            if let Some(kind) = bad {
                return Ok(Some(json!({ "kind": kind, "permutation": sigma })));
            }
        }
    }
    for p in all_tableaux(laws_n) {
        let class = knuth_class(&p);
        if f_of_permutation_set(&class)? != schur_to_fundamental(&p.shape()) {
            return Ok(Some(json!({ "kind": "class-is-schur", "tableau": p })));
        }
        let mut reached = std::collections::BTreeSet::from([p.column_reading_word()]);
        let mut frontier = vec![p.column_reading_word()];
        while let Some(s) = frontier.pop() {
            for t in knuth_neighbors(&s) {
                if reached.insert(t.clone()) {
                    frontier.push(t);
                }
            }
        }
        if !reached.iter().eq(class.iter()) {
            return Ok(Some(json!({ "kind": "knuth-moves", "tableau": p })));
        }
    }
    Ok(None)
}

pub fn check_rsk_laws(n_max: usize, laws_n: usize) -> Result<CheckResult> {
    timed(
        "rsk-laws",
        json!({ "n_max": n_max, "laws_n": laws_n }),
        || {
            let mut v = Verdict::theorem();
            v.witness = rsk_failure(n_max, laws_n)?;
            Ok(v)
        },
    )
}

pub fn check_dihedral_laws(n_max: usize) -> Result<CheckResult> {
    timed("dihedral-laws", json!({ "n_max": n_max }), || {
        let rows = families::s3_table();
        let mut v = Verdict::theorem();
        for n in 1..=n_max {
            v.witness = first_some(&rows, |row: &TableRow| {
                let p = &row.patterns;
                let (q, s) = expand(p, n)?;
                let (qc, sc) = expand(&p.complement(), n)?;
                let flipped = QSymElement::from_dense(n, &{
                    let mut d = vec![0; q.to_dense().len()];
                    for (set, c) in q.terms() {
                        d[set.complement().mask() as usize] = c;
                    }
                    d
                });
                if qc != flipped {
                    return Ok(Some(
                        json!({ "kind": "complement-flips-descents", "n": n, "patterns": p }),
                    ));
                }
                let Some(e) = s.as_sym() else {
                    return Ok(Some(
                        json!({ "kind": "not-symmetric", "n": n, "patterns": p }),
                    ));
                };
                let t = e.transpose_shapes();
                let (_, sr) = expand(&p.reverse(), n)?;
                let (qrc, _) = expand(&p.rot180(), n)?;
                for (kind, got) in [("complement", &sc), ("reverse", &sr)] {
                    if let Some(mut w) = mismatch(&t, got) {
                        w["law"] = json!(kind);
                        return Ok(Some(with_context(w, n, p)));
                    }
                }
                if qrc != q {
                    return Ok(Some(json!({ "kind": "rotation", "n": n, "patterns": p })));
                }
                Ok(None)
            })?;
            if v.witness.is_some() {
                return Ok(v);
            }
        }
        Ok(v)
    })
}

/// One grade of a [`stability_probe`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProbeRow {
    pub n: usize,
    pub count: i64,
    pub symmetric: bool,
    pub schur_nonnegative: bool,
    pub expansion: Option<SymElement>,
    pub asymmetry: Option<(DescentSet, DescentSet)>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StabilityReport {
    pub patterns: PatternSet,
    pub rows: Vec<ProbeRow>,
}

/// Symmetry and Schur positivity of `Q_n(Π)` over a range of grades. Reports
/// only; makes no claim.
pub fn stability_probe(
    patterns: &PatternSet,
    n_min: usize,
    n_max: usize,
) -> Result<StabilityReport> {
    let rows = (n_min..=n_max)
        .map(|n| -> Result<ProbeRow> {
            let (q, s) = expand(patterns, n)?;
            let expansion = s.into_sym();
            Ok(ProbeRow {
                n,
                count: q.mass(),
                symmetric: expansion.is_some(),
                schur_nonnegative: expansion
                    .as_ref()
                    .is_some_and(SymElement::is_schur_nonnegative),
                asymmetry: q.asymmetry_witness(),
                expansion,
            })
        })
        .collect::<Result<_>>()?;
    Ok(StabilityReport {
        patterns: patterns.clone(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn run_length_helper() {
        assert_eq!(run_lengths(&[5, 6, 1, 3, 4, 2]), vec![2, 3, 1]);
        assert_eq!(run_lengths(&[]), Vec::<usize>::new());
    }

    #[test]
    fn small_checks_pass() {
        assert_eq!(
            check_table_s3(5).unwrap().status,
            super::super::Status::Pass
        );
        assert_eq!(
            check_fine_characters(4).unwrap().status,
            super::super::Status::Pass
        );
        assert_eq!(
            check_rsk_laws(5, 4).unwrap().status,
            super::super::Status::Pass
        );
    }

    #[test]
    fn mismatch_reports_first_coefficient() {
        let expected = families::six_term(6);
        let mut other = expected.clone();
        other.add_term(Partition::new(vec![3, 3]).unwrap(), 1);
        let w = mismatch(&expected, &SchurExpansion::InSpan(other)).unwrap();
        assert_eq!(w["partition"], json!([3, 3]));
        assert_eq!(w["actual"], json!(1));
        assert!(mismatch(&expected, &SchurExpansion::InSpan(expected.clone())).is_none());
    }
}
