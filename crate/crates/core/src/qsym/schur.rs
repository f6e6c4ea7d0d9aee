//! Schur expansion of fundamental-basis elements.
//!
//! For each grade `n` the table `K(λ, S) = #{P ∈ SYT(λ) : Des P = S}` is
//! computed once. A set of `p(n)` independent descent-set equations is chosen
//! by exact Gaussian elimination and the corresponding square block inverted
//! over the rationals; solving is then a matrix-vector product followed by a
//! residual check against every equation.

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{QSymElement, SymElement};
use crate::error::{invalid, Result};
use crate::perm::{full_mask, DescentSet};
use crate::tableau::{enumerate_syt, Partition};

const CACHE_FORMAT: &str = "qsympat-syt-descent-stats";
const CACHE_VERSION: u32 = 1;

/// Result of inverting the fundamental expansion of Schur functions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SchurExpansion {
    InSpan(SymElement),
    /// The system has no solution. `witness` is the smallest descent set at
    /// which `residual = q − Σ round(c_λ) s_λ` is nonzero.
    NotInSpan {
        witness: DescentSet,
        residual: QSymElement,
    },
}

impl SchurExpansion {
    pub fn as_sym(&self) -> Option<&SymElement> {
        match self {
            SchurExpansion::InSpan(s) => Some(s),
            SchurExpansion::NotInSpan { .. } => None,
        }
    }

    pub fn into_sym(self) -> Option<SymElement> {
        match self {
            SchurExpansion::InSpan(s) => Some(s),
            SchurExpansion::NotInSpan { .. } => None,
        }
    }
}

/// Per-grade descent statistics of standard tableaux plus the solver state.
#[derive(Debug)]
pub struct SchurTable {
    grade: usize,
    shapes: Vec<Partition>,
    /// For each shape, `(mask, K(λ, S))` for every `S` with a nonzero count.
    stats: Vec<Vec<(u32, u32)>>,
    pivots: Vec<u32>,
    inverse: Vec<Vec<BigRational>>,
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    format: String,
    version: u32,
    grade: usize,
    shapes: Vec<Partition>,
    stats: Vec<Vec<(u32, u32)>>,
}

impl SchurTable {
    pub fn compute(grade: usize) -> Result<Self> {
        if grade > crate::perm::MAX_DESCENT_GRADE {
            return invalid(format!("Schur table grade {grade} too large"));
        }
        let shapes = Partition::all(grade);
        let stats = shapes
            .iter()
            .map(|l| {
                let mut counts: HashMap<u32, u32> = HashMap::new();
                for p in enumerate_syt(l) {
                    *counts.entry(p.descent_set().mask()).or_default() += 1;
                }
                let mut v: Vec<(u32, u32)> = counts.into_iter().collect();
                v.sort_unstable();
                v
            })
            .collect();
        Self::from_stats(grade, shapes, stats)
    }

    fn from_stats(
        grade: usize,
        shapes: Vec<Partition>,
        stats: Vec<Vec<(u32, u32)>>,
    ) -> Result<Self> {
        let p = shapes.len();
        let row = |mask: u32| -> Vec<BigRational> {
            stats
                .iter()
                .map(|st| {
                    let k = st
                        .binary_search_by_key(&mask, |&(m, _)| m)
                        .map(|i| st[i].1)
                        .unwrap_or(0);
                    BigRational::from_integer(BigInt::from(k))
                })
                .collect()
        };

        // Candidate equations: the descent set of each shape's row
        // superstandard tableau first (these are already independent), then
        // every remaining mask.
        let mut candidates: Vec<u32> = shapes
            .iter()
            .map(|l| {
                crate::tableau::StandardTableau::row_superstandard(l)
                    .descent_set()
                    .mask()
            })
            .collect();
        let mut seen: std::collections::HashSet<u32> = candidates.iter().copied().collect();
        candidates.extend((0..=full_mask(grade)).filter(|m| seen.insert(*m)));

        // Incremental row echelon form.
        let mut basis: Vec<(usize, Vec<BigRational>)> = Vec::new();
        let mut pivots = Vec::new();
        for mask in candidates {
            if pivots.len() == p {
                break;
            }
            let mut v = row(mask);
            for (col, b) in &basis {
                if !v[*col].is_zero() {
                    let f = v[*col].clone() / b[*col].clone();
                    for (x, y) in v.iter_mut().zip(b) {
                        *x -= &f * y;
                    }
                }
            }
            if let Some(col) = v.iter().position(|x| !x.is_zero()) {
                basis.push((col, v));
                pivots.push(mask);
            }
        }
        if pivots.len() != p {
            return invalid(format!(
                "descent statistics at grade {grade} have rank {} < {p}",
                pivots.len()
            ));
        }

        let square: Vec<Vec<BigRational>> = pivots.iter().map(|&m| row(m)).collect();
        let inverse = invert(square).ok_or_else(|| {
            crate::Error::InvalidInput(format!("singular pivot block at grade {grade}"))
        })?;
        Ok(SchurTable {
            grade,
            shapes,
            stats,
            pivots,
            inverse,
        })
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn shapes(&self) -> &[Partition] {
        &self.shapes
    }

    /// `K(λ, S)`.
    pub fn count(&self, shape: &Partition, set: &DescentSet) -> u32 {
        let Some(i) = self.shapes.iter().position(|l| l == shape) else {
            return 0;
        };
        let st = &self.stats[i];
        st.binary_search_by_key(&set.mask(), |&(m, _)| m)
            .map(|j| st[j].1)
            .unwrap_or(0)
    }

    pub fn solve(&self, q: &QSymElement) -> Result<SchurExpansion> {
        if q.grade() != self.grade {
            return invalid(format!(
                "element of grade {} given to the grade-{} table",
                q.grade(),
                self.grade
            ));
        }
        let rhs: Vec<BigRational> = self
            .pivots
            .iter()
            .map(|&m| {
                let set = DescentSet::from_mask_unchecked(self.grade, m);
                BigRational::from_integer(BigInt::from(q.coeff(&set)))
            })
            .collect();
        let coeffs: Vec<BigRational> = self
            .inverse
            .iter()
            .map(|r| r.iter().zip(&rhs).map(|(a, b)| a * b).sum())
            .collect();
        let integral = coeffs.iter().all(|c| c.is_integer());
        let rounded: Vec<i64> = coeffs
            .iter()
            .map(|c| c.round().to_integer().to_i64().unwrap_or(i64::MAX))
            .collect();

        let mut predicted = vec![0i64; full_mask(self.grade) as usize + 1];
        for (c, st) in rounded.iter().zip(&self.stats) {
            for &(m, k) in st {
                predicted[m as usize] += c * k as i64;
            }
        }
        let actual = q.to_dense();
        let residual: Vec<i64> = actual.iter().zip(&predicted).map(|(a, p)| a - p).collect();
        let witness = residual.iter().position(|&r| r != 0);
        match (integral, witness) {
            (true, None) => {
                let mut s = SymElement::zero(self.grade);
                for (l, c) in self.shapes.iter().zip(rounded) {
                    s.add_term(l.clone(), c);
                }
                Ok(SchurExpansion::InSpan(s))
            }
            (_, Some(w)) => Ok(SchurExpansion::NotInSpan {
                witness: DescentSet::from_mask_unchecked(self.grade, w as u32),
                residual: QSymElement::from_dense(self.grade, &residual),
            }),
            (false, None) => unreachable!("integer residual vanished for a non-integral solution"),
        }
    }

    fn save(&self, path: &Path) -> Result<()> {
        let file = CacheFile {
            format: CACHE_FORMAT.into(),
            version: CACHE_VERSION,
            grade: self.grade,
            shapes: self.shapes.clone(),
            stats: self.stats.clone(),
        };
        if let Some(dir) = path.parent() {
            std::fs::create_dir_all(dir)?;
        }
        let tmp = path.with_extension("json.tmp");
        std::fs::write(&tmp, serde_json::to_vec(&file)?)?;
        std::fs::rename(tmp, path)?;
        Ok(())
    }

    fn load(path: &Path, grade: usize) -> Option<Self> {
        let bytes = std::fs::read(path).ok()?;
        let file: CacheFile = serde_json::from_slice(&bytes).ok()?;
        if file.format != CACHE_FORMAT
            || file.version != CACHE_VERSION
            || file.grade != grade
            || file.shapes != Partition::all(grade)
            || file.stats.len() != file.shapes.len()
        {
            return None;
        }
        Self::from_stats(grade, file.shapes, file.stats).ok()
    }
}

fn invert(mut a: Vec<Vec<BigRational>>) -> Option<Vec<Vec<BigRational>>> {
    let n = a.len();
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        inv.swap(col, piv);
        let d = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x /= &d;
        }
        for x in inv[col].iter_mut() {
            *x /= &d;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let (pivot_a, pivot_inv) = (a[col].clone(), inv[col].clone());
                for (x, y) in a[r].iter_mut().zip(&pivot_a) {
                    *x -= &f * y;
                }
                for (x, y) in inv[r].iter_mut().zip(&pivot_inv) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(inv)
}

fn cache() -> &'static RwLock<HashMap<usize, Arc<SchurTable>>> {
    static CACHE: OnceLock<RwLock<HashMap<usize, Arc<SchurTable>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn cache_dir_slot() -> &'static RwLock<Option<PathBuf>> {
    static DIR: OnceLock<RwLock<Option<PathBuf>>> = OnceLock::new();
    DIR.get_or_init(Default::default)
}

/// Directory for on-disk descent-statistic tables. `None` disables the disk
/// cache; the in-process memo is always on.
pub fn set_cache_dir(dir: Option<PathBuf>) {
    *cache_dir_slot().write().expect("cache dir lock") = dir;
}

fn cache_path(dir: &Path, grade: usize) -> PathBuf {
    dir.join(format!("syt-descents-n{grade}.json"))
}

/// The table for `grade`, memoized in process and optionally on disk. A
/// missing or unreadable disk entry is recomputed silently.
pub fn schur_table(grade: usize) -> Result<Arc<SchurTable>> {
    if let Some(t) = cache().read().expect("schur cache lock").get(&grade) {
        return Ok(Arc::clone(t));
    }
    let dir = cache_dir_slot().read().expect("cache dir lock").clone();
    let table = match dir
        .as_deref()
        .and_then(|d| SchurTable::load(&cache_path(d, grade), grade))
    {
        Some(t) => t,
        None => {
            let t = SchurTable::compute(grade)?;
            if let Some(d) = dir.as_deref() {
                // a failed write only costs a recomputation next time
                let _ = t.save(&cache_path(d, grade));
            }
            t
        }
    };
    let mut guard = cache().write().expect("schur cache lock");
    Ok(Arc::clone(
        guard.entry(grade).or_insert_with(|| Arc::new(table)),
    ))
}

/// Expand `q` in the Schur basis, or report that it is not symmetric.
pub fn to_schur(q: &QSymElement) -> Result<SchurExpansion> {
    schur_table(q.grade())?.solve(q)
}
