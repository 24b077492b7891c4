//! The Brill-Noether graph of a skew shape and the expected number of turns
//! of a random staircase path.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub use crate::graph::{LabeledGraph, Vertex};

use crate::counting::{boundary_counts, count_skew_aitken, factorial};
use crate::error::{BnError, Result};
use crate::shapes::{is_connected, SkewShape};
use crate::tableaux_paths::{compress, cuts, enumerate_almost_standard, fillings, trace, Tableau, TurnDirection};

/// Identifier of the generator used by [`sample_turns_mc`].
pub const MC_RNG: &str = "rand_chacha::ChaCha8Rng/seed_from_u64";

/// Payload of a vertex of `BN(σ)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BnVertex {
    pub tableau: Tableau,
    pub compressed: Tableau,
    pub missing: u32,
}

/// Vertices are all almost-standard fillings; edges join fillings differing in one box.
pub fn build_bn_graph(sigma: &SkewShape) -> Result<LabeledGraph<BnVertex>> {
    let all = enumerate_almost_standard(sigma)?;
    let mut buckets: HashMap<(usize, Vec<u32>), Vec<usize>> = HashMap::new();
    for (id, t) in all.iter().enumerate() {
        for b in 0..sigma.n() {
            let mut masked = t.entries().to_vec();
            masked[b] = 0;
            buckets.entry((b, masked)).or_default().push(id);
        }
    }
    let mut edges = Vec::new();
    for ids in buckets.values() {
        for (x, &a) in ids.iter().enumerate() {
            for &b in &ids[x + 1..] {
                let diff = all[a]
                    .entries()
                    .iter()
                    .zip(all[b].entries())
                    .filter(|(p, q)| p != q)
                    .count();
                if diff == 1 {
                    edges.push((a, b));
                }
            }
        }
    }
    let vertices = all
        .into_iter()
        .map(|t| {
            let (compressed, missing) = compress(&t).expect("enumerated fillings are almost-standard");
            (t.to_string(), None, BnVertex { tableau: t, compressed, missing })
        })
        .collect();
    Ok(LabeledGraph::new("bn", vertices, edges))
}

/// Exact turn statistics, optionally with a Monte Carlo summary.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TurnStatistics {
    #[serde(serialize_with = "crate::serde_util::rational")]
    pub expectation: BigRational,
    /// Probability of a right turn in row i (0-based index).
    #[serde(serialize_with = "crate::serde_util::rationals")]
    pub per_row_right: Vec<BigRational>,
    #[serde(serialize_with = "crate::serde_util::rationals")]
    pub per_row_left: Vec<BigRational>,
    pub sample_mean: Option<f64>,
    pub sample_std_error: Option<f64>,
    pub sample_count: Option<u64>,
    pub seed: Option<u64>,
    pub rng: Option<&'static str>,
}

fn ratio(a: impl Into<BigInt>, b: impl Into<BigInt>) -> BigRational {
    BigRational::new(a.into(), b.into())
}

/// Closed form for the expected number of turns.
pub fn expected_turns_formula(sigma: &SkewShape) -> Result<BigRational> {
    if !is_connected(sigma) {
        return Err(BnError::DisconnectedShape);
    }
    let k = sigma.k();
    let c = boundary_counts(sigma);
    let denom = BigInt::from(sigma.n() + 1) * &c.f_sigma;
    let mut acc = BigRational::from_integer(BigInt::from(k));
    for i in 1..=k {
        acc += ratio(BigInt::from(k - i) * &c.f_left[i - 1], denom.clone());
        acc -= ratio(BigInt::from(k + 1 - i) * &c.f_right[i - 1], denom.clone());
    }
    Ok(acc * BigRational::from_integer(BigInt::from(2)))
}

/// Exact statistics by running over every standard filling and every `m`.
pub fn expected_turns_exact(sigma: &SkewShape) -> Result<TurnStatistics> {
    if !is_connected(sigma) {
        return Err(BnError::DisconnectedShape);
    }
    crate::check_cap(sigma.n())?;
    let k = sigma.k();
    let n = sigma.n();
    let tableaux = fillings(sigma, false);
    let mut right = vec![0u64; k];
    let mut left = vec![0u64; k];
    for t in &tableaux {
        for m in 1..=n as u32 + 1 {
            for turn in trace(sigma, &cuts(sigma, t, m)).turns {
                match turn.direction {
                    TurnDirection::RightTurn => right[turn.row] += 1,
                    TurnDirection::LeftTurn => left[turn.row] += 1,
                }
            }
        }
    }
    let total = (tableaux.len() * (n + 1)) as u64;
    let per_row_right: Vec<BigRational> = right.iter().map(|&x| ratio(x, total)).collect();
    let per_row_left: Vec<BigRational> = left.iter().map(|&x| ratio(x, total)).collect();
    let all: u64 = right.iter().chain(&left).sum();
    Ok(TurnStatistics {
        expectation: ratio(all, total),
        per_row_right,
        per_row_left,
        sample_mean: None,
        sample_std_error: None,
        sample_count: None,
        seed: None,
        rng: None,
    })
}

/// Harmonic-mean law for rectangles and the two-block law; `None` elsewhere.
pub fn expected_turns_special(sigma: &SkewShape) -> Option<BigRational> {
    if let Some((a, b)) = sigma.as_rectangle() {
        return Some(ratio(2 * a * b, a + b));
    }
    let rows = sigma.rows();
    let k1 = rows.iter().take_while(|&&r| r == rows[0]).count();
    let k2 = rows.len() - k1;
    if k2 == 0 || rows[k1..].iter().any(|&r| r != rows[k1]) || !is_connected(sigma) {
        return None;
    }
    let k = sigma.k();
    let c = boundary_counts(sigma);
    let denom = BigInt::from(sigma.n() + 1) * &c.f_sigma;
    let one = BigRational::from_integer(1.into());
    let top = one.clone() - ratio(c.f_right[0].clone(), denom.clone());
    let bottom = one - ratio(c.f_left[k - 1].clone(), denom);
    Some(
        BigRational::from_integer(BigInt::from(2 * k1)) * top
            + BigRational::from_integer(BigInt::from(2 * k2)) * bottom,
    )
}

/// Monte Carlo estimate: `T` uniform from the standard fillings, `m` uniform in `1..=n+1`.
///
/// `expectation` and the per-row values are the empirical frequencies of this sample.
pub fn sample_turns_mc(sigma: &SkewShape, samples: u64, seed: u64) -> Result<TurnStatistics> {
    if samples == 0 {
        return Err(BnError::InvalidData("samples must be at least 1".into()));
    }
    if !is_connected(sigma) {
        return Err(BnError::DisconnectedShape);
    }
    crate::check_cap(sigma.n())?;
    let k = sigma.k();
    let n = sigma.n() as u32;
    let tableaux = fillings(sigma, false);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut right = vec![0u64; k];
    let mut left = vec![0u64; k];
    let (mut sum, mut sum_sq) = (0u64, 0u64);
    for _ in 0..samples {
        let t = &tableaux[rng.gen_range(0..tableaux.len())];
        let m = rng.gen_range(1..=n + 1);
        let turns = trace(sigma, &cuts(sigma, t, m)).turns;
        for turn in &turns {
            match turn.direction {
                TurnDirection::RightTurn => right[turn.row] += 1,
                TurnDirection::LeftTurn => left[turn.row] += 1,
            }
        }
        let x = turns.len() as u64;
        sum += x;
        sum_sq += x * x;
    }
    let nf = samples as f64;
    let mean = sum as f64 / nf;
    let std_error = if samples > 1 {
        let var = (sum_sq as f64 - nf * mean * mean) / (nf - 1.0);
        (var.max(0.0) / nf).sqrt()
    } else {
        0.0
    };
    Ok(TurnStatistics {
        expectation: ratio(sum, samples),
        per_row_right: right.iter().map(|&x| ratio(x, samples)).collect(),
        per_row_left: left.iter().map(|&x| ratio(x, samples)).collect(),
        sample_mean: Some(mean),
        sample_std_error: Some(std_error),
        sample_count: Some(samples),
        seed: Some(seed),
        rng: Some(MC_RNG),
    })
}

/// Number of edges of `BN(σ)` from the boundary counts.
pub fn edge_count_formula(sigma: &SkewShape) -> Result<BigInt> {
    if !is_connected(sigma) {
        return Err(BnError::DisconnectedShape);
    }
    let k = sigma.k();
    let c = boundary_counts(sigma);
    let mut acc = BigInt::from(k * (sigma.n() + 1)) * &c.f_sigma;
    for i in 1..=k {
        acc += BigInt::from(k - i) * &c.f_left[i - 1];
        acc -= BigInt::from(k + 1 - i) * &c.f_right[i - 1];
    }
    Ok(acc)
}

/// Edge count of `BN` of an a by b rectangle: `(ab/(a+b)) (ab+1)! Π_{j<b} j!/(a+j)!`.
pub fn edge_count_rectangle(a: usize, b: usize) -> Result<BigInt> {
    let mut x = ratio(a * b, a + b) * BigRational::from_integer(factorial(a * b + 1));
    for j in 0..b {
        x *= BigRational::new(factorial(j), factorial(a + j));
    }
    if !x.is_integer() {
        return Err(BnError::NonIntegral(format!("rectangle edge count {x}")));
    }
    Ok(x.to_integer())
}

/// `½ (n+1) f^σ E_σ`, the edge count implied by an expectation.
pub fn edges_from_expectation(sigma: &SkewShape, e: &BigRational) -> BigRational {
    let vertices = BigInt::from(sigma.n() + 1) * count_skew_aitken(sigma);
    BigRational::from_integer(vertices) * e / BigRational::from_integer(2.into())
}

/// Mean as a float, for printing.
pub fn to_f64(x: &BigRational) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    x.numer().to_f64().unwrap_or(f64::NAN) / x.denom().to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shapes::{skew_shape, Partition};

    fn q(a: i64, b: i64) -> BigRational {
        ratio(a, b)
    }

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn bn_of_square() {
        let g = build_bn_graph(&SkewShape::rectangle(2, 2).unwrap()).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (10, 10));
        let mut deg = g.degrees();
        deg.sort_unstable();
        assert_eq!(deg, vec![1, 1, 1, 1, 2, 2, 3, 3, 3, 3]);
        // two paths of five joined by two rungs
        let edges = [
            ("2,3/4,5", "1,3/4,5"), ("1,3/4,5", "1,2/4,5"), ("1,2/4,5", "1,2/3,5"), ("1,2/3,5", "1,2/3,4"),
            ("1,3/2,4", "1,3/2,5"), ("1,3/2,5", "1,4/2,5"), ("1,4/2,5", "1,4/3,5"), ("1,4/3,5", "2,4/3,5"),
            ("1,3/4,5", "1,3/2,5"), ("1,4/3,5", "1,2/3,5"),
        ];
        let (_, got) = g.labeled_structure();
        let want: std::collections::BTreeSet<(String, String)> = edges
            .iter()
            .map(|&(a, b)| if a <= b { (a.into(), b.into()) } else { (b.into(), a.into()) })
            .collect();
        assert_eq!(got, want);
    }

    #[test]
    fn bn_small_examples() {
        let g = build_bn_graph(&SkewShape::rectangle(1, 1).unwrap()).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (2, 1));
        let s = SkewShape::from_rows(vec![(0, 0), (-1, 0)]).unwrap();
        let g = build_bn_graph(&s).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (8, 8));
    }

    #[test]
    fn formula_examples() {
        assert_eq!(expected_turns_formula(&SkewShape::rectangle(2, 2).unwrap()).unwrap(), q(2, 1));
        let s32 = SkewShape::straight(&p(&[3, 2])).unwrap();
        assert_eq!(expected_turns_formula(&s32).unwrap(), q(37, 15));
        assert_eq!(expected_turns_formula(&SkewShape::rectangle(3, 1).unwrap()).unwrap(), q(3, 2));
        let gap = SkewShape::from_rows(vec![(2, 2), (0, 0)]).unwrap();
        assert_eq!(expected_turns_formula(&gap), Err(BnError::DisconnectedShape));
    }

    #[test]
    fn exact_examples() {
        let st = expected_turns_exact(&SkewShape::rectangle(2, 2).unwrap()).unwrap();
        assert_eq!(st.expectation, q(2, 1));
        assert_eq!(st.per_row_right, st.per_row_left);
        assert_eq!(expected_turns_exact(&SkewShape::rectangle(1, 1).unwrap()).unwrap().expectation, q(1, 1));
        let s32 = SkewShape::straight(&p(&[3, 2])).unwrap();
        assert_eq!(expected_turns_exact(&s32).unwrap().expectation, q(37, 15));
    }

    #[test]
    fn special_examples() {
        assert_eq!(expected_turns_special(&SkewShape::rectangle(2, 3).unwrap()), Some(q(12, 5)));
        let s32 = SkewShape::straight(&p(&[3, 2])).unwrap();
        assert_eq!(expected_turns_special(&s32), Some(q(37, 15)));
        let three = SkewShape::straight(&p(&[3, 2, 1])).unwrap();
        assert_eq!(expected_turns_special(&three), None);
    }

    #[test]
    fn two_block_law_matches_master_formula() {
        for (lam, mu) in [(vec![3, 3, 1], vec![]), (vec![4, 2, 2], vec![1]), (vec![3, 3, 2, 2], vec![1, 1])] {
            let s = skew_shape(&p(&lam), &p(&mu)).unwrap();
            assert_eq!(expected_turns_special(&s).unwrap(), expected_turns_formula(&s).unwrap());
        }
    }

    #[test]
    fn edge_count_examples() {
        assert_eq!(edge_count_formula(&SkewShape::rectangle(2, 2).unwrap()).unwrap(), BigInt::from(10));
        let s32 = SkewShape::straight(&p(&[3, 2])).unwrap();
        assert_eq!(edge_count_formula(&s32).unwrap(), BigInt::from(37));
        assert_eq!(edge_count_formula(&SkewShape::rectangle(3, 1).unwrap()).unwrap(), BigInt::from(3));
        assert_eq!(edge_count_rectangle(2, 2).unwrap(), BigInt::from(10));
        assert_eq!(edge_count_rectangle(3, 1).unwrap(), BigInt::from(3));
        assert_eq!(edges_from_expectation(&s32, &q(37, 15)), q(37, 1));
    }

    #[test]
    fn monte_carlo_single_box_is_exact() {
        let st = sample_turns_mc(&SkewShape::rectangle(1, 1).unwrap(), 500, 9).unwrap();
        assert_eq!(st.sample_mean, Some(1.0));
        assert_eq!(st.rng, Some(MC_RNG));
    }

    #[test]
    fn monte_carlo_square_within_three_standard_errors() {
        let st = sample_turns_mc(&SkewShape::rectangle(2, 2).unwrap(), 100_000, 2024).unwrap();
        let (mean, se) = (st.sample_mean.unwrap(), st.sample_std_error.unwrap());
        assert!((mean - 2.0).abs() <= 3.0 * se, "mean {mean} se {se}");
        let again = sample_turns_mc(&SkewShape::rectangle(2, 2).unwrap(), 100_000, 2024).unwrap();
        assert_eq!(again, st);
    }

    #[test]
    fn zero_samples_rejected() {
        assert!(sample_turns_mc(&SkewShape::rectangle(1, 1).unwrap(), 0, 1).is_err());
    }
}
