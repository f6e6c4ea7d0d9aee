use std::collections::BTreeSet;

use proptest::prelude::*;

use qsympat::avoid::{enumerate_avoiders, is_pattern_knuth_closed, q_n};
use qsympat::paperlab::{run_check, CheckSpec};
use qsympat::perm::{shuffle, shuffle_sets};
use qsympat::qsym::{
    f_of_permutation_set, fine_character, mn_character, schur_to_fundamental, to_schur,
};
use qsympat::tableau::{
    enumerate_syt, f_lambda, knuth_class, knuth_neighbors, p_tableau, rsk, rsk_inverse,
};
use qsympat::{
    Composition, DescentSet, Partition, PatternSet, Permutation, QSymElement, SchurExpansion,
    StandardTableau, SymElement,
};

fn perm(max: usize) -> impl Strategy<Value = Permutation> {
    (0..=max).prop_flat_map(|n| {
        Just((1..=n).collect::<Vec<usize>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::new(v).unwrap())
    })
}

/// Up to `k` patterns drawn from `S_1 ∪ … ∪ S_max`.
fn pattern_set(max: usize, k: usize) -> impl Strategy<Value = PatternSet> {
    let pool: Vec<Permutation> = (1..=max).flat_map(Permutation::all).collect();
    proptest::sample::subsequence(pool, 0..=k).prop_map(|v| v.into_iter().collect())
}

fn pattern_set_in(size: usize, k: usize) -> impl Strategy<Value = PatternSet> {
    let pool: Vec<Permutation> = Permutation::all(size).collect();
    proptest::sample::subsequence(pool, 1..=k).prop_map(|v| v.into_iter().collect())
}

fn brute_avoiders(n: usize, pats: &PatternSet) -> Vec<Permutation> {
    Permutation::all(n).filter(|s| s.avoids_all(pats)).collect()
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn subsets_of_s3() -> Vec<PatternSet> {
    let s3: Vec<Permutation> = Permutation::all(3).collect();
    (0u32..64)
        .map(|m| {
            s3.iter()
                .enumerate()
                .filter(|(i, _)| m >> i & 1 == 1)
                .map(|(_, p)| p.clone())
                .collect()
        })
        .collect()
}

// ---- permutations ----

proptest! {
    #[test]
    fn symmetries_are_involutions(s in perm(10)) {
        prop_assert_eq!(s.complement().complement(), s.clone());
        prop_assert_eq!(s.reverse().reverse(), s.clone());
        prop_assert_eq!(s.inverse().inverse(), s.clone());
        prop_assert_eq!(s.rot180(), s.complement().reverse());
        prop_assert_eq!(s.rot180(), s.reverse().complement());
    }

    #[test]
    fn complement_complements_descents(s in perm(12)) {
        prop_assert_eq!(s.complement().descent_set(), s.descent_set().complement());
    }

    #[test]
    fn containment_is_reflexive_and_transitive(a in perm(7), b in perm(5), c in perm(3)) {
        prop_assert!(a.contains(&a));
        if a.contains(&b) && b.contains(&c) {
            prop_assert!(a.contains(&c));
        }
    }

    #[test]
    fn shuffle_size_is_binomial(a in perm(5), b in perm(5)) {
        let w = shuffle(&a, &b);
        prop_assert_eq!(w.len(), binomial(a.len() + b.len(), a.len()));
        prop_assert_eq!(w.iter().collect::<BTreeSet<_>>().len(), w.len());
    }

    #[test]
    fn composition_descent_set_round_trip(n in 1usize..=20, mask in any::<u32>()) {
        let d = DescentSet::from_mask(n, mask & ((1u32 << (n - 1)) - 1)).unwrap();
        prop_assert_eq!(d.to_composition().to_descent_set(), d);
        let c = d.to_composition();
        prop_assert_eq!(c.grade(), n);
        prop_assert_eq!(c.to_descent_set().to_composition(), c);
    }

    #[test]
    fn permutation_text_and_json_round_trip(s in perm(14)) {
        prop_assert_eq!(s.to_string().parse::<Permutation>().unwrap(), s.clone());
        let j = serde_json::to_string(&s).unwrap();
        let back: Permutation = serde_json::from_str(&j).unwrap();
        prop_assert_eq!(serde_json::to_string(&back).unwrap(), j);
    }

    #[test]
    fn pattern_set_text_and_json_round_trip(p in pattern_set(5, 6)) {
        prop_assert_eq!(p.to_string().parse::<PatternSet>().unwrap(), p.clone());
        let j = serde_json::to_string(&p).unwrap();
        let back: PatternSet = serde_json::from_str(&j).unwrap();
        prop_assert_eq!(back, p);
    }
}

#[test]
fn runs_of_1243_3124_avoiders_are_shifted_blocks() {
    let pats: PatternSet = "1243,3124".parse().unwrap();
    for n in 0..=8 {
        for s in enumerate_avoiders(n, &pats).unwrap().members {
            for run in s.increasing_runs().into_iter().filter(|r| r.len() >= 2) {
                let b = run[1];
                for (i, &v) in run[1..].iter().enumerate() {
                    assert_eq!(v, b + i as u8, "{s}");
                }
            }
        }
    }
}

// ---- tableaux ----

#[test]
fn squares_of_f_lambda_sum_to_factorial() {
    let mut fact = 1u64;
    for n in 1..=8 {
        fact *= n as u64;
        let sum: u64 = Partition::all(n).iter().map(|l| f_lambda(l).pow(2)).sum();
        assert_eq!(sum, fact);
    }
}

#[test]
fn f_lambda_counts_enumerated_tableaux() {
    for n in 0..=10 {
        for l in Partition::all(n) {
            assert_eq!(enumerate_syt(&l).len() as u64, f_lambda(&l), "{l}");
        }
    }
}

#[test]
fn rsk_laws_exhaustive() {
    for n in 0..=7 {
        let mut seen = BTreeSet::new();
        for s in Permutation::all(n) {
            let (p, q) = rsk(&s);
            assert_eq!(s.descent_set(), q.descent_set(), "{s}");
            assert_eq!(p_tableau(&s.reverse()), p.transpose(), "{s}");
            assert_eq!(rsk(&s.inverse()), (q.clone(), p.clone()), "{s}");
            assert!(seen.insert((p, q)));
        }
    }
}

#[test]
fn knuth_classes_are_connected_components() {
    for n in 1..=6 {
        for l in Partition::all(n) {
            for p in enumerate_syt(&l) {
                let class: BTreeSet<Permutation> = knuth_class(&p).into_iter().collect();
                let start = class.iter().next().unwrap().clone();
                let mut reached = BTreeSet::from([start.clone()]);
                let mut stack = vec![start];
                while let Some(s) = stack.pop() {
                    for t in knuth_neighbors(&s) {
                        assert_eq!(p_tableau(&t), p);
                        if reached.insert(t.clone()) {
                            stack.push(t);
                        }
                    }
                }
                assert_eq!(reached, class, "{p}");
            }
        }
    }
}

proptest! {
    #[test]
    fn rsk_round_trip(s in perm(12)) {
        let (p, q) = rsk(&s);
        prop_assert_eq!(rsk_inverse(&p, &q).unwrap(), s.clone());
        prop_assert_eq!(p.shape(), q.shape());
        for t in knuth_neighbors(&s) {
            prop_assert_eq!(p_tableau(&t), p.clone());
        }
    }

    #[test]
    fn tableau_text_and_json_round_trip(s in perm(13)) {
        let (p, _) = rsk(&s);
        prop_assert_eq!(p.to_string().parse::<StandardTableau>().unwrap(), p.clone());
        let j = serde_json::to_string(&p).unwrap();
        let back: StandardTableau = serde_json::from_str(&j).unwrap();
        prop_assert_eq!(back, p.clone());
        let l = p.shape();
        prop_assert_eq!(l.to_string().parse::<Partition>().unwrap(), l.clone());
        let back: Partition = serde_json::from_str(&serde_json::to_string(&l).unwrap()).unwrap();
        prop_assert_eq!(back, l);
    }
}

#[test]
fn wide_shapes_round_trip_as_text() {
    for l in [
        Partition::row(12),
        Partition::column(12),
        Partition::new(vec![11, 1]).unwrap(),
    ] {
        assert_eq!(l.to_string().parse::<Partition>().unwrap(), l);
        for t in [
            StandardTableau::row_superstandard(&l),
            StandardTableau::column_superstandard(&l),
        ] {
            assert_eq!(t.to_string().parse::<StandardTableau>().unwrap(), t);
        }
    }
}

// ---- quasisymmetric functions ----

#[test]
fn schur_functions_round_trip_through_to_schur() {
    for n in 1..=8 {
        for l in Partition::all(n) {
            let s = to_schur(&schur_to_fundamental(&l))
                .unwrap()
                .into_sym()
                .unwrap();
            assert_eq!(s, SymElement::schur(l.clone()), "{l}");
        }
    }
}

#[test]
fn knuth_classes_give_schur_functions() {
    for n in 1..=6 {
        for l in Partition::all(n) {
            let mut aggregate = QSymElement::zero(n);
            for p in enumerate_syt(&l) {
                let f = f_of_permutation_set(&knuth_class(&p)).unwrap();
                assert_eq!(f, schur_to_fundamental(&l), "{p}");
                aggregate = &aggregate + &f;
            }
            assert_eq!(
                aggregate,
                schur_to_fundamental(&l).scale(f_lambda(&l) as i64)
            );
        }
    }
}

#[test]
fn fine_characters_of_knuth_classes() {
    for n in 1..=5 {
        for l in Partition::all(n) {
            for p in enumerate_syt(&l) {
                let class = knuth_class(&p);
                for a in Composition::all(n) {
                    assert_eq!(
                        fine_character(&class, &a).unwrap(),
                        mn_character(&l, &a).unwrap(),
                        "{p} at {a}"
                    );
                }
            }
        }
    }
}

#[test]
fn symmetric_iff_schur_expansion_exists_on_s3_subsets() {
    for pats in subsets_of_s3() {
        for n in 1..=7 {
            let q = q_n(&pats, n).unwrap();
            let in_span = matches!(to_schur(&q).unwrap(), SchurExpansion::InSpan(_));
            assert_eq!(q.is_symmetric(), in_span, "{pats} at n = {n}");
        }
    }
}

proptest! {
    #[test]
    fn rotation_reverses_descent_sets(s in perm(12)) {
        let n = s.len();
        let expected: Vec<usize> = s.descent_set().positions().iter().rev().map(|&i| n - i).collect();
        prop_assert_eq!(s.rot180().descent_set().positions(), expected);
    }
}

#[test]
fn complement_and_reverse_transpose_the_expansion() {
    for pats in subsets_of_s3() {
        for n in 1..=6 {
            let q = q_n(&pats, n).unwrap();
            let Some(s) = to_schur(&q).unwrap().into_sym() else {
                continue;
            };
            // the rotation fixes Q_n only when it is symmetric
            assert_eq!(q_n(&pats.rot180(), n).unwrap(), q, "{pats}");
            for image in [pats.complement(), pats.reverse()] {
                let t = to_schur(&q_n(&image, n).unwrap())
                    .unwrap()
                    .into_sym()
                    .unwrap();
                assert_eq!(t, s.transpose_shapes(), "{pats} at n = {n}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn qsym_json_round_trip(pats in pattern_set(4, 4), n in 0usize..=7) {
        let q = q_n(&pats, n).unwrap();
        let j = serde_json::to_string(&q).unwrap();
        let back: QSymElement = serde_json::from_str(&j).unwrap();
        prop_assert_eq!(serde_json::to_string(&back).unwrap(), j);
        prop_assert_eq!(back, q.clone());
        if let Some(s) = to_schur(&q).unwrap().into_sym() {
            let j = serde_json::to_string(&s).unwrap();
            let back: SymElement = serde_json::from_str(&j).unwrap();
            prop_assert_eq!(serde_json::to_string(&back).unwrap(), j);
            prop_assert_eq!(back.to_fundamental(), q);
        }
    }

    #[test]
    fn product_counts_shuffles(a in perm(4), b in perm(4)) {
        let fa = QSymElement::fundamental(a.descent_set());
        let fb = QSymElement::fundamental(b.descent_set());
        let expected = f_of_permutation_set(&shuffle(&a, &b)).unwrap();
        let got = fa.product(&fb);
        if a.is_empty() && b.is_empty() {
            prop_assert_eq!(got.mass(), 1);
        } else {
            prop_assert_eq!(got, expected);
        }
    }
}

// ---- avoidance ----

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn pruned_enumeration_matches_brute_force(pats in pattern_set(4, 5), n in 0usize..=7) {
        prop_assert_eq!(enumerate_avoiders(n, &pats).unwrap().members, brute_avoiders(n, &pats));
    }

    #[test]
    fn containers_of_a_shuffle_set_split(left in pattern_set_in(2, 2), right in pattern_set(3, 2), n in 0usize..=6) {
        let joint = shuffle_sets(&left, &right);
        let lhs: BTreeSet<Permutation> = Permutation::all(n).filter(|s| !s.avoids_all(&joint)).collect();
        let mut rhs = BTreeSet::new();
        for k in 0..=n {
            let lo: Vec<Permutation> = Permutation::all(k).filter(|s| !s.avoids_all(&left)).collect();
            let hi: Vec<Permutation> = Permutation::all(n - k).filter(|s| !s.avoids_all(&right)).collect();
            for a in &lo {
                for b in &hi {
                    rhs.extend(shuffle(a, b));
                }
            }
        }
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn knuth_closure_survives_symmetries(pats in pattern_set_in(4, 3)) {
        let closed = is_pattern_knuth_closed(&pats).unwrap();
        if closed {
            prop_assert!(is_pattern_knuth_closed(&pats.complement()).unwrap());
            prop_assert!(is_pattern_knuth_closed(&pats.reverse()).unwrap());
            prop_assert!(is_pattern_knuth_closed(&pats.rot180()).unwrap());
        }
    }
}

#[test]
fn knuth_closure_survives_symmetries_on_s3_subsets() {
    for pats in subsets_of_s3() {
        if is_pattern_knuth_closed(&pats).unwrap() {
            for image in [pats.complement(), pats.reverse(), pats.rot180()] {
                assert!(is_pattern_knuth_closed(&image).unwrap(), "{pats}");
            }
        }
    }
}

#[test]
fn no_long_permutation_avoids_123_and_321() {
    let pats: PatternSet = "123,321".parse().unwrap();
    for n in 5..=11 {
        assert!(enumerate_avoiders(n, &pats).unwrap().is_empty());
    }
    assert_eq!(enumerate_avoiders(4, &pats).unwrap().len(), 4);
}

#[test]
fn four_pattern_avoiders_have_at_most_five_runs() {
    let pats: PatternSet = "1243,1324,3124,4321".parse().unwrap();
    for n in 0..=12 {
        for s in enumerate_avoiders(n, &pats).unwrap().members {
            assert!(s.increasing_runs().len() <= 5, "{s}");
        }
    }
}

// ---- checks ----

#[test]
fn checks_are_deterministic() {
    let specs = [
        CheckSpec::new("table-s3", serde_json::json!({"n_max": 6})),
        CheckSpec::new("partial-shuffle", serde_json::json!({"j": 5, "n_max": 6})),
        CheckSpec::new("knuth-classification", serde_json::json!({"size_max": 4})),
        CheckSpec::new(
            "shuffle-recursion",
            serde_json::json!({"left": "132", "right": "12", "n_max": 6}),
        ),
    ];
    for spec in &specs {
        let mut a = run_check(spec).unwrap();
        let mut b = run_check(spec).unwrap();
        a.elapsed_ms = 0;
        b.elapsed_ms = 0;
        assert_eq!(a, b, "{}", spec.check_id);
    }
}
