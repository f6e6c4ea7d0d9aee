//! Irreducible characters of the symmetric group and the signed comodal
//! statistic of a permutation set.

use crate::error::{invalid, Result};
use crate::perm::{Composition, Permutation};
use crate::tableau::Partition;

/// `χ^λ(α)` by the Murnaghan–Nakayama rule. Border strips are removed on the
/// beta-set of `λ`: a strip of length `r` moves a bead from `b` to `b - r`, with
/// sign `(-1)^{#beads strictly between}`.
pub fn mn_character(shape: &Partition, alpha: &Composition) -> Result<i64> {
    if shape.size() != alpha.grade() {
        return invalid(format!(
            "character χ^{shape} evaluated at {alpha} of a different size"
        ));
    }
    let len = shape.len();
    let beta: Vec<usize> = shape
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &p)| p + len - 1 - i)
        .collect();
    Ok(strip(&beta, alpha.parts()))
}

fn strip(beta: &[usize], rest: &[usize]) -> i64 {
    let Some((&r, rest)) = rest.split_first() else {
        return 1;
    };
    let mut total = 0;
    for (i, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let target = b - r;
        let between = beta.iter().filter(|&&x| x > target && x < b).count();
        let mut next = beta.to_vec();
        next[i] = target;
        let sign = if between % 2 == 0 { 1 } else { -1 };
        total += sign * strip(&next, rest);
    }
    total
}

/// `Σ_{π ∈ Π_α} (-1)^{des_α π}` over the `α`-comodal members of `set`.
pub fn fine_character<'a, I>(set: I, alpha: &Composition) -> Result<i64>
where
    I: IntoIterator<Item = &'a Permutation>,
{
    let mut total = 0;
    for p in set {
        if p.len() != alpha.grade() {
            return invalid(format!(
                "permutation {p} has size {} but α = {alpha} has size {}",
                p.len(),
                alpha.grade()
            ));
        }
        if p.is_alpha_comodal(alpha)? {
            total += if p.alpha_descent_number(alpha)? % 2 == 0 {
                1
            } else {
                -1
            };
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tableau::{f_lambda, knuth_class};

    fn comp(v: &[usize]) -> Composition {
        Composition::new(v.to_vec()).unwrap()
    }

    fn part(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn trivial_and_sign() {
        for n in 1..7 {
            for a in Composition::all(n) {
                assert_eq!(mn_character(&Partition::row(n), &a).unwrap(), 1);
                let sign = if (n - a.len()) % 2 == 0 { 1 } else { -1 };
                assert_eq!(mn_character(&Partition::column(n), &a).unwrap(), sign);
            }
        }
    }

    #[test]
    fn small_values() {
        assert_eq!(mn_character(&part(&[2, 1]), &comp(&[3])).unwrap(), -1);
        assert_eq!(mn_character(&part(&[2, 1]), &comp(&[1, 1, 1])).unwrap(), 2);
        assert_eq!(mn_character(&part(&[2, 1]), &comp(&[2, 1])).unwrap(), 0);
        assert_eq!(mn_character(&part(&[2, 2]), &comp(&[2, 2])).unwrap(), 2);
        assert!(mn_character(&part(&[2, 1]), &comp(&[2])).is_err());
    }

    #[test]
    fn identity_class_gives_dimension() {
        for n in 1..8 {
            for l in Partition::all(n) {
                let ones = comp(&vec![1; n]);
                assert_eq!(mn_character(&l, &ones).unwrap() as u64, f_lambda(&l));
            }
        }
    }

    #[test]
    fn column_orthogonality_at_identity() {
        // Σ_λ χ^λ(1^n) χ^λ(α) = 0 for α ≠ 1^n
        for n in 2..7 {
            for a in Composition::all(n).into_iter().filter(|a| a.len() < n) {
                let sum: i64 = Partition::all(n)
                    .iter()
                    .map(|l| f_lambda(l) as i64 * mn_character(l, &a).unwrap())
                    .sum();
                assert_eq!(sum, 0, "α = {a}");
            }
        }
    }

    #[test]
    fn fine_character_examples() {
        let class = knuth_class(&"12/3".parse().unwrap());
        assert_eq!(fine_character(&class, &comp(&[3])).unwrap(), -1);
        assert_eq!(fine_character(&class, &comp(&[1, 1, 1])).unwrap(), 2);
        for n in 1..6 {
            for a in Composition::all(n) {
                assert_eq!(fine_character(&[Permutation::identity(n)], &a).unwrap(), 1);
            }
        }
        assert!(fine_character(&class, &comp(&[2, 2])).is_err());
    }
}
