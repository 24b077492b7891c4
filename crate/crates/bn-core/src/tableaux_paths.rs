//! Standard and almost-standard fillings, compression, and staircase paths.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::counting::count_skew_aitken;
use crate::error::{BnError, Result};
use crate::shapes::{augment_right, is_connected, Partition, SkewShape};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum TableauKind {
    Standard,
    AlmostStandard,
}

/// A filling of a skew shape; `entries` follow the shape's reading order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Tableau {
    shape: SkewShape,
    entries: Vec<u32>,
    kind: TableauKind,
}

impl Tableau {
    /// Validates the filling and decides whether it is standard or almost-standard.
    pub fn new(shape: SkewShape, entries: Vec<u32>) -> Result<Self> {
        let n = shape.n();
        if entries.len() != n {
            return Err(BnError::InvalidTableau(format!("expected {n} entries, got {}", entries.len())));
        }
        let mut seen = vec![false; n + 2];
        for &e in &entries {
            if e == 0 || e as usize > n + 1 || seen[e as usize] {
                return Err(BnError::InvalidTableau(format!("label {e} is out of range or repeated")));
            }
            seen[e as usize] = true;
        }
        for (b, preds) in shape.predecessors().iter().enumerate() {
            if preds.iter().any(|&p| entries[p] >= entries[b]) {
                return Err(BnError::InvalidTableau("rows and columns must increase".into()));
            }
        }
        let kind = if seen[n + 1] {
            TableauKind::AlmostStandard
        } else {
            TableauKind::Standard
        };
        Ok(Tableau { shape, entries, kind })
    }

    /// Validates a filling by distinct labels of `1..=n+1` and tags it almost-standard,
    /// also when the free label is `n+1`.
    pub fn almost_standard(shape: SkewShape, entries: Vec<u32>) -> Result<Self> {
        let t = Self::new(shape, entries)?;
        Ok(Tableau { kind: TableauKind::AlmostStandard, ..t })
    }

    /// Build from explicit rows of labels.
    pub fn from_rows(shape: SkewShape, rows: &[Vec<u32>]) -> Result<Self> {
        Self::new(shape, rows.concat())
    }

    pub fn shape(&self) -> &SkewShape {
        &self.shape
    }

    /// Labels in reading order.
    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn kind(&self) -> TableauKind {
        self.kind
    }

    pub fn entry(&self, row: usize, col: i64) -> Option<u32> {
        self.shape.box_index(row, col).map(|i| self.entries[i])
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        let offs = self.shape.row_offsets();
        (0..self.shape.k())
            .map(|i| {
                let len = (self.shape.end(i) - self.shape.start(i) + 1) as usize;
                self.entries[offs[i]..offs[i] + len].to_vec()
            })
            .collect()
    }

    /// The label of `1..=n+1` that does not occur. For a standard tableau this is `n+1`.
    pub fn missing_label(&self) -> u32 {
        let n = self.entries.len() as u32;
        let mut seen = vec![false; n as usize + 2];
        for &e in &self.entries {
            seen[e as usize] = true;
        }
        (1..=n + 1).find(|&l| !seen[l as usize]).expect("one label is always free")
    }
}

impl fmt::Display for Tableau {
    /// Rows separated by `/`, entries by `,`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "{}", rows.join("/"))
    }
}

/// Raw fillings in reading order. With `almost`, labels come from `1..=n+1` with one skipped.
pub(crate) fn fillings(shape: &SkewShape, almost: bool) -> Vec<Vec<u32>> {
    let n = shape.n();
    let preds = shape.predecessors();
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fn go(
        placed: usize,
        label: u32,
        skipped: bool,
        almost: bool,
        preds: &[Vec<usize>],
        cur: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        let n = cur.len();
        if placed == n {
            out.push(cur.clone());
            return;
        }
        for b in 0..n {
            if cur[b] == 0 && preds[b].iter().all(|&p| cur[p] != 0) {
                cur[b] = label;
                go(placed + 1, label + 1, skipped, almost, preds, cur, out);
                cur[b] = 0;
            }
        }
        if almost && !skipped {
            go(placed, label + 1, true, almost, preds, cur, out);
        }
    }
    go(0, 1, false, almost, &preds, &mut cur, &mut out);
    out.sort();
    out
}

/// All standard fillings, sorted by reading word.
pub fn enumerate_standard(sigma: &SkewShape) -> Result<Vec<Tableau>> {
    crate::check_cap(sigma.n())?;
    Ok(fillings(sigma, false)
        .into_iter()
        .map(|entries| Tableau {
            shape: sigma.clone(),
            entries,
            kind: TableauKind::Standard,
        })
        .collect())
}

/// All almost-standard fillings, sorted by reading word.
pub fn enumerate_almost_standard(sigma: &SkewShape) -> Result<Vec<Tableau>> {
    crate::check_cap(sigma.n())?;
    Ok(fillings(sigma, true)
        .into_iter()
        .map(|entries| Tableau {
            shape: sigma.clone(),
            entries,
            kind: TableauKind::AlmostStandard,
        })
        .collect())
}

/// Decrement every entry above the missing label.
pub fn compress(t: &Tableau) -> Result<(Tableau, u32)> {
    if t.kind != TableauKind::AlmostStandard {
        return Err(BnError::InvalidTableau("compress expects an almost-standard tableau".into()));
    }
    let m = t.missing_label();
    let entries = t.entries.iter().map(|&e| if e > m { e - 1 } else { e }).collect();
    Ok((
        Tableau {
            shape: t.shape.clone(),
            entries,
            kind: TableauKind::Standard,
        },
        m,
    ))
}

/// Increment every entry `>= m`, freeing label `m`.
pub fn decompress(t: &Tableau, m: u32) -> Result<Tableau> {
    let n = t.entries.len() as u32;
    if t.kind != TableauKind::Standard || m == 0 || m > n + 1 {
        return Err(BnError::InvalidTableau(format!("decompress needs a standard tableau and 1 <= m <= {}", n + 1)));
    }
    let entries = t.entries.iter().map(|&e| if e >= m { e + 1 } else { e }).collect();
    Ok(Tableau {
        shape: t.shape.clone(),
        entries,
        kind: TableauKind::AlmostStandard,
    })
}

/// Box indices of an almost-standard tableau whose entry may be replaced by the missing label.
pub fn legal_replacements(t: &Tableau) -> Vec<usize> {
    let m = t.missing_label();
    let shape = &t.shape;
    let boxes = shape.boxes();
    (0..boxes.len())
        .filter(|&b| {
            let (r, c) = boxes[b];
            let ok_before = [shape.box_index(r, c - 1), r.checked_sub(1).and_then(|u| shape.box_index(u, c))]
                .into_iter()
                .flatten()
                .all(|p| t.entries[p] < m);
            let ok_after = [shape.box_index(r, c + 1), shape.box_index(r + 1, c)]
                .into_iter()
                .flatten()
                .all(|q| t.entries[q] > m);
            ok_before && ok_after
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Step {
    Right,
    Up,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum TurnDirection {
    /// A right step followed by an up step.
    LeftTurn,
    /// An up step followed by a right step.
    RightTurn,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TurnRecord {
    /// Row (0-based) and column of the box both steps border.
    pub row: usize,
    pub col: i64,
    pub direction: TurnDirection,
}

/// A right/up lattice path from the lower-left to the upper-right corner.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StaircasePath {
    /// Lattice point the path starts from: (column, row boundary), row boundary k at the bottom.
    pub start: (i64, usize),
    pub steps: Vec<Step>,
    pub turns: Vec<TurnRecord>,
}

impl StaircasePath {
    pub fn count(&self, dir: TurnDirection) -> usize {
        self.turns.iter().filter(|t| t.direction == dir).count()
    }
}

/// Column at which the path crosses each row: entries `< m` lie to its left.
pub(crate) fn cuts(shape: &SkewShape, entries: &[u32], m: u32) -> Vec<i64> {
    let offs = shape.row_offsets();
    (0..shape.k())
        .map(|i| {
            let (s, e) = shape.rows()[i];
            let len = (e - s + 1) as usize;
            let below = entries[offs[i]..offs[i] + len].iter().filter(|&&x| x < m).count();
            s + below as i64
        })
        .collect()
}

/// Walk the path and record the direction changes whose two steps border a common box.
pub(crate) fn trace(shape: &SkewShape, cuts: &[i64]) -> StaircasePath {
    let k = shape.k();
    let start = (shape.start(k - 1), k);
    let mut steps = Vec::new();
    for _ in start.0..cuts[k - 1] {
        steps.push(Step::Right);
    }
    for i in (0..k).rev() {
        steps.push(Step::Up);
        let next = if i == 0 { shape.end(0) + 1 } else { cuts[i - 1] };
        for _ in cuts[i]..next {
            steps.push(Step::Right);
        }
    }
    let mut turns = Vec::new();
    let (mut x, mut y) = (start.0, start.1 as i64);
    let mut prev: Option<Step> = None;
    for &step in &steps {
        match (prev, step) {
            // pivot (x, y): the box up and to the left
            (Some(Step::Right), Step::Up) => {
                let row = y - 1;
                if row >= 0 && shape.contains(row as usize, x - 1) {
                    turns.push(TurnRecord { row: row as usize, col: x - 1, direction: TurnDirection::LeftTurn });
                }
            }
            // pivot (x, y): the box down and to the right
            (Some(Step::Up), Step::Right) => {
                if y >= 0 && shape.contains(y as usize, x) {
                    turns.push(TurnRecord { row: y as usize, col: x, direction: TurnDirection::RightTurn });
                }
            }
            _ => {}
        }
        match step {
            Step::Right => x += 1,
            Step::Up => y -= 1,
        }
        prev = Some(step);
    }
    StaircasePath { start, steps, turns }
}

/// The path separating the entries `< m` of a standard tableau from those `>= m`.
pub fn staircase_path(t: &Tableau, m: u32) -> Result<StaircasePath> {
    let n = t.entries.len() as u32;
    if t.kind != TableauKind::Standard || m == 0 || m > n + 1 {
        return Err(BnError::InvalidTableau(format!("need a standard tableau and 1 <= m <= {}", n + 1)));
    }
    if !is_connected(&t.shape) {
        return Err(BnError::DisconnectedShape);
    }
    Ok(trace(&t.shape, &cuts(&t.shape, &t.entries, m)))
}

/// Exact mean over standard T of `max(T(b), T(c))`, where b ends row `i` (1-based)
/// and c sits just above and right of b when that box is in the shape.
/// `None` when `σ^i` does not exist.
pub fn corner_mean_exact(sigma: &SkewShape, i: usize) -> Result<Option<BigRational>> {
    if augment_right(sigma, i)?.is_none() {
        return Ok(None);
    }
    let row = i - 1;
    let bcol = sigma.end(row);
    let b = sigma.box_index(row, bcol).expect("row end is a box");
    let c = row.checked_sub(1).and_then(|u| sigma.box_index(u, bcol + 1));
    let all = enumerate_standard(sigma)?;
    let total: u64 = all
        .iter()
        .map(|t| {
            let v = t.entries[b];
            c.map_or(v, |c| v.max(t.entries[c])) as u64
        })
        .sum();
    Ok(Some(BigRational::new(BigInt::from(total), BigInt::from(all.len()))))
}

/// `n + 1 - f^{σ^i} / f^σ`, or `None` when `σ^i` does not exist.
pub fn corner_mean_formula(sigma: &SkewShape, i: usize) -> Result<Option<BigRational>> {
    let Some(ext) = augment_right(sigma, i)? else {
        return Ok(None);
    };
    let n1 = BigRational::from_integer(BigInt::from(sigma.n() + 1));
    Ok(Some(
        n1 - BigRational::new(count_skew_aitken(&ext), count_skew_aitken(sigma)),
    ))
}

/// Mean entry of the upper-right corner of a straight shape, as a product over the first row.
pub fn upper_right_corner_product(lambda: &Partition) -> BigRational {
    let conj = lambda.conjugate();
    let l1 = lambda.part(0);
    let mut prod = BigRational::one();
    for j in 1..=l1 {
        let h = (l1 + conj.part(j - 1) - j) as i64;
        prod *= BigRational::new(BigInt::from(h), BigInt::from(h + 1));
    }
    BigRational::from_integer(BigInt::from(lambda.size() + 1)) * (BigRational::one() - prod)
}

/// Total left and right turns at each box over all `(T, m)`, in reading order.
pub fn turn_tallies(sigma: &SkewShape) -> Result<(Vec<u64>, Vec<u64>)> {
    if !is_connected(sigma) {
        return Err(BnError::DisconnectedShape);
    }
    crate::check_cap(sigma.n())?;
    let n = sigma.n();
    let mut left = vec![0u64; n];
    let mut right = vec![0u64; n];
    for t in fillings(sigma, false) {
        for m in 1..=n as u32 + 1 {
            for turn in trace(sigma, &cuts(sigma, &t, m)).turns {
                let b = sigma.box_index(turn.row, turn.col).expect("turn box in shape");
                match turn.direction {
                    TurnDirection::LeftTurn => left[b] += 1,
                    TurnDirection::RightTurn => right[b] += 1,
                }
            }
        }
    }
    Ok((left, right))
}
