//! Counting standard fillings: hook lengths, the Aitken determinant and a
//! brute-force oracle, plus the boundary counts `f^{σ^i}` and `f^{ⁱσ}`.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{BnError, Result};
use crate::shapes::{augment_left, augment_right, Partition, SkewShape};

/// `f^σ` together with the counts of every one-box extension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountVector {
    #[serde(serialize_with = "crate::serde_util::bigint")]
    pub f_sigma: BigInt,
    /// `f^{σ^i}` for rows i = 1..k, zero where the extension does not exist.
    #[serde(serialize_with = "crate::serde_util::bigints")]
    pub f_right: Vec<BigInt>,
    /// `f^{ⁱσ}` for rows i = 1..k, zero where the extension does not exist.
    #[serde(serialize_with = "crate::serde_util::bigints")]
    pub f_left: Vec<BigInt>,
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Hook-length formula `n! / Π h`.
pub fn count_syt_hook(lambda: &Partition) -> BigInt {
    let prod = lambda
        .hook_lengths()
        .values()
        .fold(BigInt::one(), |acc, &h| acc * BigInt::from(h));
    factorial(lambda.size()) / prod
}

fn inv_factorial(m: i64) -> BigRational {
    if m < 0 {
        BigRational::zero()
    } else {
        BigRational::new(BigInt::one(), factorial(m as usize))
    }
}

/// Determinant by Gaussian elimination over the rationals.
pub fn determinant(mut a: Vec<Vec<BigRational>>) -> BigRational {
    let n = a.len();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] / &p;
            for c in col..n {
                let sub = &factor * &a[col][c];
                a[r][c] -= sub;
            }
        }
    }
    det
}

/// `det(1/(λ_i − i − μ_j + j)!)` for the shape.
pub fn aitken_determinant(sigma: &SkewShape) -> BigRational {
    let (lambda, mu) = sigma.lambda_mu();
    let k = sigma.k();
    let m: Vec<Vec<BigRational>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| inv_factorial(lambda[i] as i64 - i as i64 - mu[j] as i64 + j as i64))
                .collect()
        })
        .collect();
    determinant(m)
}

type Memo = RwLock<HashMap<Vec<(i64, i64)>, BigInt>>;

fn memo() -> &'static Memo {
    static MEMO: OnceLock<Memo> = OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Aitken's formula, reporting a non-integral result as an error.
pub fn try_count_skew_aitken(sigma: &SkewShape) -> Result<BigInt> {
    let key = sigma.normalized_rows();
    if let Some(v) = memo().read().expect("count memo poisoned").get(&key) {
        return Ok(v.clone());
    }
    let value = aitken_determinant(sigma) * BigRational::from_integer(factorial(sigma.n()));
    if !value.is_integer() || value.is_negative() {
        return Err(BnError::InternalNonIntegral(format!(
            "Aitken determinant gave {value} for {:?}",
            sigma.rows()
        )));
    }
    let v = value.to_integer();
    memo()
        .write()
        .expect("count memo poisoned")
        .insert(key, v.clone());
    Ok(v)
}

/// Number of standard fillings by Aitken's determinant. Memoized per translation class.
///
/// Panics if the determinant is not integral, which would be an arithmetic bug.
pub fn count_skew_aitken(sigma: &SkewShape) -> BigInt {
    try_count_skew_aitken(sigma).unwrap_or_else(|e| panic!("{e}"))
}

/// Number of linear extensions of the box poset, by memoized backtracking.
pub fn count_brute(sigma: &SkewShape) -> Result<BigInt> {
    let n = sigma.n();
    crate::check_cap(n)?;
    if n > 64 {
        return Err(BnError::TooLarge { size: n, cap: 64 });
    }
    let preds: Vec<u64> = sigma
        .predecessors()
        .iter()
        .map(|p| p.iter().fold(0u64, |m, &i| m | (1 << i)))
        .collect();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut seen: HashMap<u64, BigInt> = HashMap::new();
    fn go(mask: u64, full: u64, preds: &[u64], seen: &mut HashMap<u64, BigInt>) -> BigInt {
        if mask == full {
            return BigInt::one();
        }
        if let Some(v) = seen.get(&mask) {
            return v.clone();
        }
        let mut total = BigInt::zero();
        for (b, &p) in preds.iter().enumerate() {
            let bit = 1u64 << b;
            if mask & bit == 0 && p & mask == p {
                total += go(mask | bit, full, preds, seen);
            }
        }
        seen.insert(mask, total.clone());
        total
    }
    Ok(go(0, full, &preds, &mut seen))
}

/// `f^σ` and all of `f^{σ^i}`, `f^{ⁱσ}`.
pub fn boundary_counts(sigma: &SkewShape) -> CountVector {
    let k = sigma.k();
    let count = |s: Option<SkewShape>| s.map(|s| count_skew_aitken(&s)).unwrap_or_default();
    let f_right = (1..=k)
        .map(|i| count(augment_right(sigma, i).expect("row in range")))
        .collect();
    let f_left = (1..=k)
        .map(|i| count(augment_left(sigma, i).expect("row in range")))
        .collect();
    CountVector {
        f_sigma: count_skew_aitken(sigma),
        f_right,
        f_left,
    }
}

/// Whether the left and right one-box extensions have equally many fillings in total.
pub fn check_strange_identity(sigma: &SkewShape) -> bool {
    let c = boundary_counts(sigma);
    c.f_left.iter().sum::<BigInt>() == c.f_right.iter().sum::<BigInt>()
}
