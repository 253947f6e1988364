//! The dimension bound `M(l, n)`: the maximum of `(n^2 - |k|^2)/2 + 1` over
//! compositions `k` of `n` into `l` nonnegative parts.

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest number of compositions [`m_bruteforce`] will enumerate.
pub const COMPOSITION_LIMIT: u128 = 5_000_000;

/// An ordered tuple of nonnegative integers. `n`, `|k|^2` and the support are
/// always recomputed from the parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Composition {
    parts: Vec<u64>,
}

impl Composition {
    pub fn new(parts: Vec<u64>) -> Self {
        Composition { parts }
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    /// Number of parts, `l`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn n(&self) -> u64 {
        self.parts.iter().sum()
    }

    pub fn norm_sq(&self) -> u128 {
        self.parts.iter().map(|&k| k as u128 * k as u128).sum()
    }

    /// 0-based indices of the nonzero parts.
    pub fn support(&self) -> Vec<usize> {
        (0..self.parts.len()).filter(|&i| self.parts[i] > 0).collect()
    }

    /// `(n^2 - |k|^2)/2 + 1`; `n^2` and `|k|^2` always have equal parity.
    pub fn objective(&self) -> u128 {
        let n = self.n() as u128;
        (n * n - self.norm_sq()) / 2 + 1
    }

    /// Whether every two parts differ by at most 1.
    pub fn is_balanced(&self) -> bool {
        match (self.parts.iter().min(), self.parts.iter().max()) {
            (Some(lo), Some(hi)) => hi - lo <= 1,
            _ => true,
        }
    }

    pub fn all_positive(&self) -> bool {
        self.parts.iter().all(|&k| k > 0)
    }
}

impl std::fmt::Display for Composition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl std::str::FromStr for Composition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::InvalidComposition(format!("`{}` is not a nonnegative integer", t.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Composition::new(parts))
    }
}

/// `C(n + l - 1, l - 1)`, saturating.
pub fn composition_count(l: u64, n: u64) -> u128 {
    if l == 0 {
        return u128::from(n == 0);
    }
    let k = (l - 1) as u128;
    let top = n as u128 + k;
    let mut c: u128 = 1;
    for i in 0..k {
        c = match c.checked_mul(top - i) {
            Some(v) => v / (i + 1),
            None => return u128::MAX,
        };
    }
    c
}

fn check_args(l: u64, n: u64) -> Result<()> {
    if l == 0 || n == 0 {
        return Err(Error::OutOfRange(format!("M({l},{n}) needs l >= 1 and n >= 1")));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BruteForce {
    pub value: u128,
    /// Every maximizing composition, in lexicographic order.
    pub maximizers: Vec<Composition>,
}

fn for_each_composition(prefix: &mut Vec<u64>, slots: u64, remaining: u64, visit: &mut impl FnMut(&[u64])) {
    if slots == 1 {
        prefix.push(remaining);
        visit(prefix);
        prefix.pop();
        return;
    }
    for k in 0..=remaining {
        prefix.push(k);
        for_each_composition(prefix, slots - 1, remaining - k, visit);
        prefix.pop();
    }
}

/// `M(l, n)` by enumerating every composition, with all maximizers.
pub fn m_bruteforce(l: u64, n: u64) -> Result<BruteForce> {
    check_args(l, n)?;
    let count = composition_count(l, n);
    if count > COMPOSITION_LIMIT {
        return Err(Error::TooLarge {
            size: count,
            limit: COMPOSITION_LIMIT,
        });
    }
    // Split on the first part; each branch keeps its own best set, then the
    // branches merge in order.
    let branches: Vec<BruteForce> = (0..=n)
        .into_par_iter()
        .map(|first| {
            let mut best = BruteForce {
                value: 0,
                maximizers: Vec::new(),
            };
            let mut prefix = vec![first];
            let mut visit = |parts: &[u64]| {
                let c = Composition::new(parts.to_vec());
                let v = c.objective();
                if v > best.value {
                    best.value = v;
                    best.maximizers.clear();
                }
                if v == best.value {
                    best.maximizers.push(c);
                }
            };
            if l == 1 {
                if first == n {
                    visit(&prefix);
                }
            } else {
                for_each_composition(&mut prefix, l - 1, n - first, &mut visit);
            }
            best
        })
        .collect();
    let value = branches.iter().map(|b| b.value).max().unwrap_or(0);
    let maximizers = branches
        .into_iter()
        .filter(|b| b.value == value)
        .flat_map(|b| b.maximizers)
        .collect();
    Ok(BruteForce { value, maximizers })
}

/// `l - r` parts equal to `n / l` followed by `r` parts equal to `n / l + 1`,
/// where `r = n mod l`.
pub fn balanced_composition(l: u64, n: u64) -> Result<Composition> {
    if l == 0 || l > n {
        return Err(Error::OutOfRange(format!(
            "balanced composition needs 1 <= l <= n, got l = {l}, n = {n}"
        )));
    }
    let (q, r) = (n / l, n % l);
    let parts = (0..l).map(|i| if i < l - r { q } else { q + 1 }).collect();
    Ok(Composition::new(parts))
}

/// `M(l, n)` in closed form: the objective at the balanced composition, or
/// `M(n, n)` when `l > n`.
pub fn m_closed_form(l: u64, n: u64) -> Result<u128> {
    check_args(l, n)?;
    let l = l.min(n);
    Ok(balanced_composition(l, n)?.objective())
}

/// `floor(n^2 (l - 1) / (2 l)) + 1`.
pub fn floor_bound(l: u64, n: u64) -> Result<u128> {
    check_args(l, n)?;
    let (l, n) = (l as u128, n as u128);
    Ok(n * n * (l - 1) / (2 * l) + 1)
}

/// `D(r, l) = (r - r^2 / l) / 2` as an exact rational, for `0 <= r < l`.
pub fn deficiency(r: u64, l: u64) -> Result<BigRational> {
    if r >= l {
        return Err(Error::OutOfRange(format!(
            "deficiency needs 0 <= r < l, got r = {r}, l = {l}"
        )));
    }
    let (r, l) = (BigInt::from(r), BigInt::from(l));
    Ok(BigRational::new(&r * (&l - &r), BigInt::from(2) * l))
}

/// Whether `(n mod l, l)` lies in the region where `M(l, n)` equals the floor
/// bound.
pub fn equality_region(l: u64, n: u64) -> Result<bool> {
    if l == 0 || l > n {
        return Err(Error::OutOfRange(format!(
            "equality region needs 1 <= l <= n, got l = {l}, n = {n}"
        )));
    }
    let r = n % l;
    let small_l = l <= 7;
    let small_r = r <= 2 && l >= 8;
    let near_diagonal = r >= 7 && (l == r + 1 || l == r + 2);
    // (6, 8) also has D < 1 (D = 3/4): M(8, 14) = 86 = floor bound.
    let sporadic = matches!((r, l), (3, 8) | (5, 8) | (6, 8));
    Ok(small_l || small_r || near_diagonal || sporadic)
}
