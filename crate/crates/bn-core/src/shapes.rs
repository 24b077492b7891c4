//! Partitions, skew shapes and the shape attached to Brill-Noether data.
//!
//! Rows are indexed from 0 at the top. Columns are plain integers and may be
//! negative: a shape built from Brill-Noether data keeps the convention that
//! the upper-left box of the central rectangle sits in column 0.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{BnError, Result};

/// A partition, stored as its nonincreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Trailing zero parts are dropped; any other zero or an increase is rejected.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.contains(&0) {
            return Err(BnError::InvalidData("partition has an interior zero part".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(BnError::InvalidData(format!("parts {parts:?} are not nonincreasing")));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
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

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.part(0);
        let parts = (0..width)
            .map(|j| self.parts.iter().filter(|&&p| p > j).count())
            .collect();
        Partition { parts }
    }

    /// Hook lengths keyed by 1-based (row, column).
    pub fn hook_lengths(&self) -> BTreeMap<(usize, usize), usize> {
        let conj = self.conjugate();
        let mut hooks = BTreeMap::new();
        for (i0, &len) in self.parts.iter().enumerate() {
            for j0 in 0..len {
                let (i, j) = (i0 + 1, j0 + 1);
                hooks.insert((i, j), len + conj.part(j0) + 1 - i - j);
            }
        }
        hooks
    }

    /// Every partition of `n`, parts in decreasing lexicographic order.
    pub fn all_of_size(n: usize) -> Vec<Partition> {
        fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                cur.push(p);
                rec(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }
}

/// A skew Young diagram given by one closed column interval per row.
///
/// Invariants: every row is nonempty, and both the starts and the ends are
/// nonincreasing from top to bottom.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SkewShape {
    rows: Vec<(i64, i64)>,
}

impl SkewShape {
    /// Build from explicit `(start, end)` column intervals.
    pub fn from_rows(rows: Vec<(i64, i64)>) -> Result<Self> {
        if rows.is_empty() {
            return Err(BnError::DegenerateShape("a shape needs at least one row".into()));
        }
        for (i, &(s, e)) in rows.iter().enumerate() {
            if s > e {
                return Err(BnError::EmptyRow(i));
            }
        }
        for (i, w) in rows.windows(2).enumerate() {
            if w[1].0 > w[0].0 || w[1].1 > w[0].1 {
                return Err(BnError::DegenerateShape(format!(
                    "rows {} and {} violate the skew shape ordering",
                    i,
                    i + 1
                )));
            }
        }
        Ok(SkewShape { rows })
    }

    /// A straight shape.
    pub fn straight(lambda: &Partition) -> Result<Self> {
        skew_shape(lambda, &Partition::empty())
    }

    /// An `a` by `b` rectangle (a rows, b columns).
    pub fn rectangle(a: usize, b: usize) -> Result<Self> {
        Self::straight(&Partition::new(vec![b; a])?)
    }

    pub fn rows(&self) -> &[(i64, i64)] {
        &self.rows
    }

    /// Number of rows.
    pub fn k(&self) -> usize {
        self.rows.len()
    }

    /// Number of boxes.
    pub fn n(&self) -> usize {
        self.rows.iter().map(|&(s, e)| (e - s + 1) as usize).sum()
    }

    pub fn start(&self, row: usize) -> i64 {
        self.rows[row].0
    }

    pub fn end(&self, row: usize) -> i64 {
        self.rows[row].1
    }

    /// Normalized column of the column labelled 0, i.e. the stored offset.
    pub fn origin(&self) -> i64 {
        -self.min_start()
    }

    fn min_start(&self) -> i64 {
        self.rows.last().map(|r| r.0).unwrap_or(0)
    }

    /// Rows translated so the leftmost box is in column 0. Used as a cache key.
    pub fn normalized_rows(&self) -> Vec<(i64, i64)> {
        let m = self.min_start();
        self.rows.iter().map(|&(s, e)| (s - m, e - m)).collect()
    }

    pub fn contains(&self, row: usize, col: i64) -> bool {
        self.rows
            .get(row)
            .is_some_and(|&(s, e)| s <= col && col <= e)
    }

    /// All boxes in reading order (rows top to bottom, left to right).
    pub fn boxes(&self) -> Vec<(usize, i64)> {
        let mut out = Vec::with_capacity(self.n());
        for (i, &(s, e)) in self.rows.iter().enumerate() {
            for c in s..=e {
                out.push((i, c));
            }
        }
        out
    }

    /// Index of the first box of each row in reading order.
    pub fn row_offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.rows
            .iter()
            .map(|&(s, e)| {
                let here = acc;
                acc += (e - s + 1) as usize;
                here
            })
            .collect()
    }

    /// Position of a box in reading order.
    pub fn box_index(&self, row: usize, col: i64) -> Option<usize> {
        if !self.contains(row, col) {
            return None;
        }
        let before: usize = self.rows[..row]
            .iter()
            .map(|&(s, e)| (e - s + 1) as usize)
            .sum();
        Some(before + (col - self.rows[row].0) as usize)
    }

    /// For each box, the reading-order indices of its left and upper neighbours.
    pub fn predecessors(&self) -> Vec<Vec<usize>> {
        self.boxes()
            .iter()
            .map(|&(r, c)| {
                let mut p = Vec::with_capacity(2);
                if let Some(i) = self.box_index(r, c - 1) {
                    p.push(i);
                }
                if r > 0 {
                    if let Some(i) = self.box_index(r - 1, c) {
                        p.push(i);
                    }
                }
                p
            })
            .collect()
    }

    /// `lambda` and `mu` after translating the leftmost box to column 0.
    pub fn lambda_mu(&self) -> (Vec<usize>, Vec<usize>) {
        let m = self.min_start();
        let lambda = self.rows.iter().map(|&(_, e)| (e - m + 1) as usize).collect();
        let mu = self.rows.iter().map(|&(s, _)| (s - m) as usize).collect();
        (lambda, mu)
    }

    /// True when no box is removed from the partition, i.e. all rows start together.
    pub fn is_straight(&self) -> bool {
        self.rows.iter().all(|r| r.0 == self.rows[0].0)
    }

    /// `Some((a, b))` when the shape is an a by b rectangle.
    pub fn as_rectangle(&self) -> Option<(usize, usize)> {
        let first = self.rows[0];
        if self.rows.iter().all(|&r| r == first) {
            Some((self.k(), (first.1 - first.0 + 1) as usize))
        } else {
            None
        }
    }

    fn check_row(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.k() {
            Err(BnError::RowOutOfRange { row: i, k: self.k() })
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for SkewShape {
    /// ASCII picture, one line per row, `#` for a box.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.min_start();
        for (i, &(s, e)) in self.rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let pad = " ".repeat((s - m) as usize);
            let boxes = "#".repeat((e - s + 1) as usize);
            write!(f, "{pad}{boxes}")?;
        }
        Ok(())
    }
}

/// The skew shape `lambda / mu` with row i occupying columns `mu_i..lambda_i - 1`.
pub fn skew_shape(lambda: &Partition, mu: &Partition) -> Result<SkewShape> {
    if mu.len() > lambda.len() || (0..mu.len()).any(|i| mu.part(i) > lambda.part(i)) {
        return Err(BnError::ContainmentViolation);
    }
    if lambda.is_empty() {
        return Err(BnError::DegenerateShape("the empty shape has no rows".into()));
    }
    let mut rows = Vec::with_capacity(lambda.len());
    for i in 0..lambda.len() {
        if mu.part(i) == lambda.part(i) {
            return Err(BnError::EmptyRow(i));
        }
        rows.push((mu.part(i) as i64, lambda.part(i) as i64 - 1));
    }
    SkewShape::from_rows(rows)
}

/// Genus, rank, degree and imposed ramification at the two marked points.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BrillNoetherData {
    pub g: usize,
    pub r: usize,
    pub d: usize,
    pub alpha: Vec<usize>,
    pub beta: Vec<usize>,
}

impl BrillNoetherData {
    pub fn new(g: usize, r: usize, d: usize, alpha: Vec<usize>, beta: Vec<usize>) -> Result<Self> {
        if alpha.len() != r + 1 || beta.len() != r + 1 {
            return Err(BnError::InvalidData(format!(
                "alpha and beta must have length r+1 = {}",
                r + 1
            )));
        }
        if g + r < d {
            return Err(BnError::InvalidData("g - d + r must be nonnegative".into()));
        }
        if alpha.windows(2).any(|w| w[0] > w[1]) {
            return Err(BnError::InvalidData("alpha must be nondecreasing".into()));
        }
        if beta.windows(2).any(|w| w[0] < w[1]) {
            return Err(BnError::InvalidData("beta must be nonincreasing".into()));
        }
        Ok(BrillNoetherData { g, r, d, alpha, beta })
    }

    /// Data with no imposed ramification.
    pub fn unramified(g: usize, r: usize, d: usize) -> Result<Self> {
        Self::new(g, r, d, vec![0; r + 1], vec![0; r + 1])
    }

    /// Width `g - d + r` of the central rectangle.
    pub fn width(&self) -> usize {
        self.g + self.r - self.d
    }

    /// The adjusted Brill-Noether number.
    pub fn rho(&self) -> i64 {
        let a: usize = self.alpha.iter().sum();
        let b: usize = self.beta.iter().sum();
        self.g as i64 - ((self.r + 1) * self.width()) as i64 - a as i64 - b as i64
    }

    /// `d - r` as a signed integer.
    pub fn d_minus_r(&self) -> i64 {
        self.d as i64 - self.r as i64
    }

    /// The final tuple `(d - r) - beta` of every valid sequence.
    pub fn target(&self) -> Vec<i64> {
        self.beta.iter().map(|&b| self.d_minus_r() - b as i64).collect()
    }
}

impl fmt::Display for BrillNoetherData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(g={}, r={}, d={}, alpha={:?}, beta={:?})", self.g, self.r, self.d, self.alpha, self.beta)
    }
}

/// The shape whose row i spans columns `-alpha_i ..= (g-d+r-1) + beta_i`.
pub fn shape_from_bn_data(data: &BrillNoetherData) -> Result<SkewShape> {
    let w = data.width() as i64;
    let mut rows = Vec::with_capacity(data.r + 1);
    for i in 0..=data.r {
        let s = -(data.alpha[i] as i64);
        let e = w - 1 + data.beta[i] as i64;
        if s > e {
            return Err(BnError::EmptyRow(i));
        }
        rows.push((s, e));
    }
    SkewShape::from_rows(rows)
}

/// Add a box at the right end of row `i` (1-based). `None` when the result is not a skew shape.
pub fn augment_right(sigma: &SkewShape, i: usize) -> Result<Option<SkewShape>> {
    sigma.check_row(i)?;
    let row = i - 1;
    if row > 0 && sigma.end(row) >= sigma.end(row - 1) {
        return Ok(None);
    }
    let mut rows = sigma.rows.clone();
    rows[row].1 += 1;
    Ok(Some(SkewShape { rows }))
}

/// Add a box at the left end of row `i` (1-based). `None` when the result is not a skew shape.
pub fn augment_left(sigma: &SkewShape, i: usize) -> Result<Option<SkewShape>> {
    sigma.check_row(i)?;
    let row = i - 1;
    if row + 1 < sigma.k() && sigma.start(row) <= sigma.start(row + 1) {
        return Ok(None);
    }
    let mut rows = sigma.rows.clone();
    rows[row].0 -= 1;
    Ok(Some(SkewShape { rows }))
}

/// Connected when consecutive rows overlap or touch at a corner.
pub fn is_connected(sigma: &SkewShape) -> bool {
    sigma.rows.windows(2).all(|w| w[0].0 <= w[1].1 + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn hooks_of_two_by_two() {
        let h = p(&[2, 2]).hook_lengths();
        let expect: BTreeMap<_, _> = [((1, 1), 3), ((1, 2), 2), ((2, 1), 2), ((2, 2), 1)].into();
        assert_eq!(h, expect);
        assert_eq!(p(&[1]).hook_lengths(), [((1, 1), 1)].into());
    }

    #[test]
    fn hooks_of_three_two() {
        let h: Vec<usize> = p(&[3, 2]).hook_lengths().into_values().collect();
        assert_eq!(h, vec![4, 3, 1, 2, 1]);
    }

    #[test]
    fn skew_shape_examples() {
        let sq = skew_shape(&p(&[2, 2]), &Partition::empty()).unwrap();
        assert_eq!(sq.n(), 4);
        let s = skew_shape(&p(&[3, 2]), &p(&[1])).unwrap();
        assert_eq!(s.rows(), &[(1, 2), (0, 1)]);
        assert_eq!(s.n(), 4);
        assert_eq!(skew_shape(&p(&[2, 2]), &p(&[2])), Err(BnError::EmptyRow(0)));
        assert_eq!(skew_shape(&p(&[2]), &p(&[3])), Err(BnError::ContainmentViolation));
        assert_eq!(skew_shape(&p(&[2]), &p(&[1, 1])), Err(BnError::ContainmentViolation));
    }

    #[test]
    fn bn_data_shapes() {
        let fig1 = BrillNoetherData::new(6, 3, 4, vec![0, 0, 2, 3], vec![2, 1, 0, 0]).unwrap();
        let s = shape_from_bn_data(&fig1).unwrap();
        assert_eq!(s.k(), 4);
        assert_eq!(s.n(), 28);
        assert_eq!(s.rows()[0], (0, 6));
        assert_eq!(s.rows()[3], (-3, 4));
        assert_eq!(s.n() as i64, fig1.g as i64 - fig1.rho());

        let sq = shape_from_bn_data(&BrillNoetherData::unramified(5, 1, 4).unwrap()).unwrap();
        assert_eq!(sq, SkewShape::rectangle(2, 2).unwrap());

        let ex = BrillNoetherData::new(5, 1, 5, vec![0, 1], vec![1, 0]).unwrap();
        let s = shape_from_bn_data(&ex).unwrap();
        assert_eq!(s.rows(), &[(0, 1), (-1, 0)]);
        assert_eq!(s.n(), 4);
        assert_eq!(ex.rho(), 1);
        assert_eq!(s.normalized_rows(), skew_shape(&p(&[3, 2]), &p(&[1])).unwrap().rows());
    }

    #[test]
    fn empty_rows_are_rejected() {
        let d = BrillNoetherData::new(2, 1, 3, vec![0, 1], vec![0, 0]).unwrap();
        assert_eq!(d.width(), 0);
        assert_eq!(shape_from_bn_data(&d), Err(BnError::EmptyRow(0)));
    }

    #[test]
    fn invalid_data() {
        assert!(BrillNoetherData::new(1, 0, 3, vec![0], vec![0]).is_err());
        assert!(BrillNoetherData::new(5, 1, 4, vec![1, 0], vec![0, 0]).is_err());
        assert!(BrillNoetherData::new(5, 1, 4, vec![0, 0], vec![0, 1]).is_err());
        assert!(BrillNoetherData::new(5, 1, 4, vec![0], vec![0, 0]).is_err());
    }

    #[test]
    fn augment_examples() {
        let sq = SkewShape::rectangle(2, 2).unwrap();
        assert_eq!(
            augment_right(&sq, 1).unwrap(),
            Some(SkewShape::straight(&p(&[3, 2])).unwrap())
        );
        assert_eq!(augment_right(&sq, 2).unwrap(), None);
        assert_eq!(augment_left(&sq, 1).unwrap(), None);
        let left = augment_left(&sq, 2).unwrap().unwrap();
        assert_eq!(left.rows(), &[(0, 1), (-1, 1)]);
        assert_eq!(left.n(), 5);

        let s = skew_shape(&p(&[3, 2]), &p(&[1])).unwrap();
        let r2 = augment_right(&s, 2).unwrap().unwrap();
        assert_eq!(r2.rows(), &[(1, 2), (0, 2)]);
        // adding on the left of the top row fills the removed box
        let l1 = augment_left(&s, 1).unwrap().unwrap();
        assert_eq!(l1, SkewShape::straight(&p(&[3, 2])).unwrap());

        assert!(matches!(augment_right(&sq, 0), Err(BnError::RowOutOfRange { .. })));
        assert!(matches!(augment_left(&sq, 3), Err(BnError::RowOutOfRange { .. })));
    }

    #[test]
    fn connectivity() {
        assert!(is_connected(&SkewShape::rectangle(2, 2).unwrap()));
        assert!(is_connected(&skew_shape(&p(&[3, 2]), &p(&[1])).unwrap()));
        assert!(!is_connected(&SkewShape::from_rows(vec![(2, 2), (0, 0)]).unwrap()));
        // touching at a corner still counts
        assert!(is_connected(&SkewShape::from_rows(vec![(1, 1), (0, 0)]).unwrap()));
    }

    #[test]
    fn display_draws_rows() {
        let s = skew_shape(&p(&[3, 2]), &p(&[1])).unwrap();
        assert_eq!(s.to_string(), " ##\n##");
    }

    #[test]
    fn partitions_of_small_sizes() {
        let counts: Vec<usize> = (0..=8).map(|n| Partition::all_of_size(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22]);
    }

    #[test]
    fn reading_order_indices() {
        let s = skew_shape(&p(&[3, 2]), &p(&[1])).unwrap();
        assert_eq!(s.boxes(), vec![(0, 1), (0, 2), (1, 0), (1, 1)]);
        assert_eq!(s.box_index(1, 1), Some(3));
        assert_eq!(s.box_index(0, 0), None);
        assert_eq!(s.predecessors(), vec![vec![], vec![0], vec![], vec![2, 0]]);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn partition() -> impl Strategy<Value = Partition> {
            proptest::collection::vec(1usize..7, 0..7).prop_map(|mut v| {
                v.sort_unstable_by(|a, b| b.cmp(a));
                Partition::new(v).unwrap()
            })
        }

        proptest! {
            #[test]
            fn conjugation_is_an_involution(l in partition()) {
                prop_assert_eq!(l.conjugate().conjugate(), l.clone());
                prop_assert_eq!(l.conjugate().size(), l.size());
            }

            #[test]
            fn hook_multiset_is_transpose_invariant(l in partition()) {
                let mut a: Vec<usize> = l.hook_lengths().into_values().collect();
                let mut b: Vec<usize> = l.conjugate().hook_lengths().into_values().collect();
                a.sort_unstable();
                b.sort_unstable();
                prop_assert_eq!(a, b);
            }
        }
    }
}
