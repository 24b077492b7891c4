//! Valid sequences, pretableaux and pontableaux, the maps between them, and
//! two independent constructions of the augmented graph `BN'(σ)`.
//!
//! Step `i` of a valid sequence (from `α^i` to `α^{i+1}`, 1-based) corresponds
//! to label `i` of a pretableau.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;

use crate::bn_graph::build_bn_graph;
use crate::error::{BnError, Result};
use crate::graph::LabeledGraph;
use crate::shapes::{augment_left, augment_right, shape_from_bn_data, BrillNoetherData, SkewShape};
use crate::tableaux_paths::{fillings, Tableau};

/// Size limit of the direct pretableau enumerator.
pub const DIRECT_ENUM_CAP: usize = 8;

/// `(0,1)(0,2)...`
pub fn format_tuples(tuples: &[Vec<i64>]) -> String {
    tuples
        .iter()
        .map(|t| {
            let inner: Vec<String> = t.iter().map(|x| x.to_string()).collect();
            format!("({})", inner.join(","))
        })
        .collect()
}

/// A lattice walk `α^1, ..., α^{g+1}` satisfying the valid-sequence conditions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ValidSequence {
    tuples: Vec<Vec<i64>>,
    data: BrillNoetherData,
}

fn step_is_admissible(diff: &[i64]) -> bool {
    diff.iter().all(|&x| x >= 0) && diff.iter().filter(|&&x| x == 0).count() <= 1
}

impl ValidSequence {
    pub fn new(data: &BrillNoetherData, tuples: Vec<Vec<i64>>) -> Result<Self> {
        let bad = |m: &str| Err(BnError::InvalidSequence(m.to_string()));
        if tuples.len() != data.g + 1 {
            return bad("wrong number of tuples");
        }
        for t in &tuples {
            if t.len() != data.r + 1 {
                return bad("tuple of the wrong length");
            }
            if t.iter().any(|&x| x < 0) || t.windows(2).any(|w| w[0] > w[1]) {
                return bad("tuples must be nondecreasing and nonnegative");
            }
        }
        let alpha: Vec<i64> = data.alpha.iter().map(|&a| a as i64).collect();
        if tuples[0] != alpha {
            return bad("first tuple must be alpha");
        }
        if tuples[data.g] != data.target() {
            return bad("last tuple must be (d-r) - beta");
        }
        for w in tuples.windows(2) {
            let diff: Vec<i64> = w[1].iter().zip(&w[0]).map(|(a, b)| a - b).collect();
            if !step_is_admissible(&diff) {
                return bad("a step is not >= 1 - e_a for any a");
            }
        }
        Ok(ValidSequence { tuples, data: data.clone() })
    }

    pub fn tuples(&self) -> &[Vec<i64>] {
        &self.tuples
    }

    pub fn data(&self) -> &BrillNoetherData {
        &self.data
    }

    /// `α^{i+1} - α^i` for i = 1..g.
    pub fn diffs(&self) -> Vec<Vec<i64>> {
        self.tuples
            .windows(2)
            .map(|w| w[1].iter().zip(&w[0]).map(|(a, b)| a - b).collect())
            .collect()
    }

    /// Sum over steps of `|diff| - r`.
    pub fn total_progress(&self) -> i64 {
        let r = self.data.r as i64;
        self.diffs().iter().map(|d| d.iter().sum::<i64>() - r).sum()
    }

    pub fn key(&self) -> String {
        format_tuples(&self.tuples)
    }
}

impl fmt::Display for ValidSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum StepKind {
    /// diff = 1 - e_b
    Plod(usize),
    /// diff = 1
    Stall,
    /// diff = 1 + e_a - e_b
    Swap { a: usize, b: usize },
    /// Any other admissible diff; only possible when rho >= 2.
    Other { diff: Vec<i64>, progress: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Step {
    /// 1-based step index.
    pub position: usize,
    pub kind: StepKind,
}

pub fn classify_steps(vs: &ValidSequence) -> Vec<Step> {
    let r = vs.data.r as i64;
    vs.diffs()
        .into_iter()
        .enumerate()
        .map(|(i, d)| {
            let zeros: Vec<usize> = (0..d.len()).filter(|&c| d[c] == 0).collect();
            let twos: Vec<usize> = (0..d.len()).filter(|&c| d[c] == 2).collect();
            let ones = d.iter().filter(|&&x| x == 1).count();
            let kind = if ones == d.len() {
                StepKind::Stall
            } else if zeros.len() == 1 && ones == d.len() - 1 {
                StepKind::Plod(zeros[0])
            } else if zeros.len() == 1 && twos.len() == 1 && ones + 2 == d.len() {
                StepKind::Swap { a: twos[0], b: zeros[0] }
            } else {
                let progress = d.iter().sum::<i64>() - r;
                StepKind::Other { diff: d, progress }
            };
            Step { position: i + 1, kind }
        })
        .collect()
}

/// The unique non-plod step of a rho = 1 sequence.
pub fn distinguished_step(vs: &ValidSequence) -> Option<Step> {
    classify_steps(vs)
        .into_iter()
        .find(|s| !matches!(s.kind, StepKind::Plod(_)))
}

/// Depth-first enumeration; the output is sorted lexicographically.
pub fn enumerate_valid_sequences(data: &BrillNoetherData) -> Result<Vec<ValidSequence>> {
    crate::check_cap(data.g)?;
    if data.rho() < 0 {
        return Ok(Vec::new());
    }
    let target = data.target();
    if target.iter().any(|&x| x < 0) {
        return Ok(Vec::new());
    }
    let r = data.r as i64;
    let g = data.g;
    let alpha: Vec<i64> = data.alpha.iter().map(|&a| a as i64).collect();
    let mut out = Vec::new();
    let mut walk = vec![alpha];

    fn next_tuples(prev: &[i64], target: &[i64], min_left: i64) -> Vec<Vec<i64>> {
        let mut res = Vec::new();
        fn rec(
            c: usize,
            prev: &[i64],
            target: &[i64],
            zero_used: bool,
            cur: &mut Vec<i64>,
            left: i64,
            min_left: i64,
            res: &mut Vec<Vec<i64>>,
        ) {
            if c == prev.len() {
                if left >= min_left {
                    res.push(cur.clone());
                }
                return;
            }
            let floor = cur.last().copied().unwrap_or(0).max(prev[c]);
            for v in floor..=target[c] {
                let zero = v == prev[c];
                if zero && zero_used {
                    continue;
                }
                cur.push(v);
                rec(c + 1, prev, target, zero_used || zero, cur, left - (v - prev[c]), min_left, res);
                cur.pop();
            }
        }
        let left: i64 = target.iter().zip(prev).map(|(t, p)| t - p).sum();
        rec(0, prev, target, false, &mut Vec::new(), left, min_left, &mut res);
        res
    }

    fn go(
        walk: &mut Vec<Vec<i64>>,
        g: usize,
        r: i64,
        target: &[i64],
        data: &BrillNoetherData,
        out: &mut Vec<ValidSequence>,
    ) {
        if walk.len() == g + 1 {
            if walk[g] == target {
                out.push(ValidSequence { tuples: walk.clone(), data: data.clone() });
            }
            return;
        }
        let steps_after = (g + 1 - walk.len() - 1) as i64;
        let prev = walk.last().expect("nonempty walk").clone();
        for t in next_tuples(&prev, target, steps_after * r) {
            walk.push(t);
            go(walk, g, r, target, data, out);
            walk.pop();
        }
    }

    if g == 0 {
        if walk[0] == target {
            out.push(ValidSequence { tuples: walk, data: data.clone() });
        }
        return Ok(out);
    }
    go(&mut walk, g, r, &target, data, &mut out);
    out.sort_by(|a, b| a.tuples.cmp(&b.tuples));
    Ok(out)
}

/// Exactly one position differs, and by a single unit vector.
pub fn off_by_one(a: &ValidSequence, b: &ValidSequence) -> Result<bool> {
    if a.data != b.data {
        return Err(BnError::DataMismatch);
    }
    let differing: Vec<usize> = (0..a.tuples.len()).filter(|&i| a.tuples[i] != b.tuples[i]).collect();
    if differing.len() != 1 {
        return Ok(false);
    }
    let i = differing[0];
    Ok(unit_difference(&a.tuples[i], &b.tuples[i]))
}

fn unit_difference(x: &[i64], y: &[i64]) -> bool {
    let d: Vec<i64> = x.iter().zip(y).map(|(p, q)| p - q).collect();
    d.iter().filter(|&&v| v != 0).count() == 1 && d.iter().all(|&v| v.abs() <= 1)
}

/// Where the extra box of a pretableau sits, if there is one (0-based row).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Extension {
    Right(usize),
    Left(usize),
}

/// Boxes with their labels; negative labels are stored negated.
type Cells = BTreeMap<(usize, i64), Vec<i64>>;

/// A filling of σ, σ^a or ᵃσ by `1..=n+1` and one negative label.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Pretableau {
    sigma: SkewShape,
    extension: Option<Extension>,
    /// Positive labels per box, sorted.
    positive: BTreeMap<(usize, i64), Vec<u32>>,
    /// Box holding `-j`, and `j`.
    negative: ((usize, i64), u32),
}

impl Pretableau {
    /// Checks the weight rule, the universal increasing rule and the side condition.
    pub fn new(
        sigma: SkewShape,
        positive: BTreeMap<(usize, i64), Vec<u32>>,
        negative: ((usize, i64), u32),
    ) -> Result<Self> {
        let bad = |m: String| Err(BnError::InvalidPretableau(m));
        let total = sigma.n() as u32 + 1;
        let mut positive = positive;
        positive.retain(|_, v| !v.is_empty());
        for v in positive.values_mut() {
            v.sort_unstable();
        }
        let mut seen: Vec<u32> = positive.values().flatten().copied().collect();
        seen.sort_unstable();
        if seen != (1..=total).collect::<Vec<_>>() {
            return bad(format!("positive labels must be 1..={total} once each"));
        }
        let (nbox, j) = negative;
        if j == 0 || j > total {
            return bad(format!("negative label -{j} out of range"));
        }
        let mut outside: BTreeSet<(usize, i64)> = positive
            .keys()
            .filter(|&&(r, c)| !sigma.contains(r, c))
            .copied()
            .collect();
        if !sigma.contains(nbox.0, nbox.1) {
            outside.insert(nbox);
        }
        if outside.len() > 1 {
            return bad("more than one box outside the shape".into());
        }
        let extension = match outside.iter().next() {
            None => None,
            Some(&(r, c)) => {
                if r >= sigma.k() {
                    return bad("box below the shape".into());
                }
                if c == sigma.end(r) + 1 && augment_right(&sigma, r + 1)?.is_some() {
                    Some(Extension::Right(r))
                } else if c == sigma.start(r) - 1 && augment_left(&sigma, r + 1)?.is_some() {
                    Some(Extension::Left(r))
                } else {
                    return bad(format!("box ({r},{c}) does not extend the shape"));
                }
            }
        };
        let ext_shape = match extension {
            None => sigma.clone(),
            Some(Extension::Right(r)) => augment_right(&sigma, r + 1)?.expect("checked"),
            Some(Extension::Left(r)) => augment_left(&sigma, r + 1)?.expect("checked"),
        };
        for (r, c) in ext_shape.boxes() {
            let pos = positive.get(&(r, c)).map_or(0, |v| v.len()) as i64;
            let weight = pos - i64::from((r, c) == nbox);
            let want = i64::from(sigma.contains(r, c));
            if weight != want {
                return bad(format!("box ({r},{c}) has weight {weight}, expected {want}"));
            }
        }
        for (r, c) in ext_shape.boxes() {
            let here = &positive[&(r, c)];
            let max = *here.last().expect("nonempty");
            for next in [(r, c + 1), (r + 1, c)] {
                if let Some(v) = positive.get(&next) {
                    if ext_shape.contains(next.0, next.1) && v[0] <= max {
                        return bad(format!("labels do not increase from ({r},{c}) to {next:?}"));
                    }
                }
            }
        }
        let here = &positive[&nbox];
        let in_sigma = sigma.contains(nbox.0, nbox.1);
        let needs_le = in_sigma || matches!(extension, Some(Extension::Right(_)));
        let needs_ge = in_sigma || matches!(extension, Some(Extension::Left(_)));
        if needs_le && !here.iter().any(|&i| i <= j) {
            return bad(format!("no label <= {j} next to -{j}"));
        }
        if needs_ge && !here.iter().any(|&i| i >= j) {
            return bad(format!("no label >= {j} next to -{j}"));
        }
        Ok(Pretableau { sigma, extension, positive, negative })
    }

    pub fn sigma(&self) -> &SkewShape {
        &self.sigma
    }

    pub fn extension(&self) -> Option<Extension> {
        self.extension
    }

    pub fn positive(&self) -> &BTreeMap<(usize, i64), Vec<u32>> {
        &self.positive
    }

    pub fn negative(&self) -> ((usize, i64), u32) {
        self.negative
    }

    /// All labels, with the negative one negated.
    fn cells(&self) -> Cells {
        let mut cells: Cells = self
            .positive
            .iter()
            .map(|(&b, v)| (b, v.iter().map(|&x| x as i64).collect()))
            .collect();
        cells.entry(self.negative.0).or_default().push(-(self.negative.1 as i64));
        for v in cells.values_mut() {
            v.sort_by_key(|x| (x.abs(), *x));
        }
        cells
    }

    /// The same filling with `-j` replaced by `-j'`, if that is again a pretableau.
    pub fn with_negative(&self, j: u32) -> Option<Pretableau> {
        Pretableau::new(self.sigma.clone(), self.positive.clone(), (self.negative.0, j)).ok()
    }

    /// Whether `j` and `-j` share a box.
    pub fn is_colocated(&self) -> bool {
        let ((r, c), j) = self.negative;
        self.positive.get(&(r, c)).is_some_and(|v| v.contains(&j))
    }
}

impl fmt::Display for Pretableau {
    /// Rows joined by `/`; each box as `col:labels`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells = self.cells();
        let rows: Vec<String> = (0..self.sigma.k())
            .map(|r| {
                cells
                    .range((r, i64::MIN)..=(r, i64::MAX))
                    .map(|(&(_, c), v)| {
                        let labels: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                        format!("{c}:{}", labels.join(","))
                    })
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        f.write_str(&rows.join("/"))
    }
}

/// An equivalence class of pretableaux under moving a co-boxed pair `j, -j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Pontableau {
    AlmostStandard(Tableau),
    Rigid(Pretableau),
}

impl Pontableau {
    pub fn from_pretableau(p: &Pretableau) -> Pontableau {
        if !p.is_colocated() {
            return Pontableau::Rigid(p.clone());
        }
        let ((r, c), j) = p.negative;
        let sigma = &p.sigma;
        let entries = sigma
            .boxes()
            .iter()
            .map(|b| {
                let v = &p.positive[b];
                if *b == (r, c) {
                    *v.iter().find(|&&x| x != j).expect("box of sigma keeps one label")
                } else {
                    v[0]
                }
            })
            .collect();
        let t = Tableau::almost_standard(sigma.clone(), entries).expect("removing the pair leaves an aSYT");
        Pontableau::AlmostStandard(t)
    }

    pub fn key(&self) -> String {
        match self {
            Pontableau::AlmostStandard(t) => format!("aSYT[{t}]"),
            Pontableau::Rigid(p) => format!("rigid[{p}]"),
        }
    }

    pub fn is_almost_standard(&self) -> bool {
        matches!(self, Pontableau::AlmostStandard(_))
    }

    fn cells(&self) -> (SkewShape, Cells) {
        match self {
            Pontableau::Rigid(p) => (p.sigma.clone(), p.cells()),
            Pontableau::AlmostStandard(t) => {
                let cells = t
                    .shape()
                    .boxes()
                    .into_iter()
                    .zip(t.entries())
                    .map(|(b, &e)| (b, vec![e as i64]))
                    .collect();
                (t.shape().clone(), cells)
            }
        }
    }

    /// Tuples read off the filling, using the shape's own column 0 and `g = n + 1`.
    pub fn tuples(&self) -> Vec<Vec<i64>> {
        let (sigma, cells) = self.cells();
        tuples_from_cells(&sigma, &cells, sigma.n() + 1)
    }

    /// Every pretableau in the class.
    pub fn representatives(&self) -> Vec<Pretableau> {
        match self {
            Pontableau::Rigid(p) => vec![p.clone()],
            Pontableau::AlmostStandard(t) => {
                let sigma = t.shape().clone();
                let m = t.missing_label();
                let base: BTreeMap<(usize, i64), Vec<u32>> = sigma
                    .boxes()
                    .into_iter()
                    .zip(t.entries())
                    .map(|(b, &e)| (b, vec![e]))
                    .collect();
                let mut spots: Vec<(usize, i64)> = sigma.boxes();
                for r in 0..sigma.k() {
                    spots.push((r, sigma.end(r) + 1));
                    spots.push((r, sigma.start(r) - 1));
                }
                spots
                    .into_iter()
                    .filter_map(|b| {
                        let mut pos = base.clone();
                        pos.entry(b).or_default().push(m);
                        Pretableau::new(sigma.clone(), pos, (b, m)).ok()
                    })
                    .collect()
            }
        }
    }
}

/// `α^i_j = (i-1) - min{x : box (j, x) not contained after i-1 steps}`.
fn tuples_from_cells(sigma: &SkewShape, cells: &Cells, g: usize) -> Vec<Vec<i64>> {
    let contained = |r: usize, x: i64, t: i64| -> bool {
        let w: i64 = cells
            .get(&(r, x))
            .map_or(0, |v| v.iter().filter(|l| l.abs() <= t).map(|l| l.signum()).sum());
        if x < sigma.start(r) {
            w == 0
        } else {
            w == 1
        }
    };
    (0..=g as i64)
        .map(|t| {
            (0..sigma.k())
                .map(|r| {
                    let mut x = sigma.start(r) - 1;
                    while contained(r, x, t) {
                        x += 1;
                    }
                    t - x
                })
                .collect()
        })
        .collect()
}

/// The valid sequence attached to a pretableau on `σ(data)`.
pub fn sequence_from_pretableau(t: &Pretableau, data: &BrillNoetherData) -> Result<ValidSequence> {
    let sigma = shape_from_bn_data(data)?;
    if t.sigma != sigma {
        return Err(BnError::InvalidPretableau("pretableau is not on the shape of the data".into()));
    }
    ValidSequence::new(data, tuples_from_cells(&sigma, &t.cells(), data.g))
}

/// The valid sequence of a pontableau on `σ(data)`.
pub fn sequence_from_pontableau(p: &Pontableau, data: &BrillNoetherData) -> Result<ValidSequence> {
    let sigma = shape_from_bn_data(data)?;
    let (shape, cells) = p.cells();
    if shape != sigma {
        return Err(BnError::InvalidPretableau("pontableau is not on the shape of the data".into()));
    }
    ValidSequence::new(data, tuples_from_cells(&sigma, &cells, data.g))
}

fn require_rho_one(data: &BrillNoetherData) -> Result<()> {
    if data.rho() != 1 {
        return Err(BnError::WrongRho { expected: "1".into(), actual: data.rho() });
    }
    Ok(())
}

/// Rebuild the pontableau of a rho = 1 valid sequence by replaying its steps.
pub fn pretableaux_from_sequence(vs: &ValidSequence) -> Result<Pontableau> {
    let data = &vs.data;
    require_rho_one(data)?;
    let sigma = shape_from_bn_data(data)?;
    let bad = |m: String| BnError::InvalidSequence(m);
    let mut frontier: Vec<i64> = (0..sigma.k()).map(|r| sigma.start(r)).collect();
    let mut positive: BTreeMap<(usize, i64), Vec<u32>> = BTreeMap::new();
    let mut negative = None;
    for step in classify_steps(vs) {
        let label = step.position as u32;
        match step.kind {
            StepKind::Plod(b) => {
                positive.entry((b, frontier[b])).or_default().push(label);
                frontier[b] += 1;
            }
            StepKind::Stall => {}
            StepKind::Swap { a, b } => {
                positive.entry((b, frontier[b])).or_default().push(label);
                frontier[b] += 1;
                frontier[a] -= 1;
                negative = Some(((a, frontier[a]), label));
            }
            StepKind::Other { .. } => return Err(bad("step with progress above 1".into())),
        }
    }
    let pont = match negative {
        Some(neg) => Pontableau::Rigid(Pretableau::new(sigma.clone(), positive, neg).map_err(|e| bad(e.to_string()))?),
        None => {
            let entries = sigma
                .boxes()
                .iter()
                .map(|b| match positive.get(b).map(|v| v.as_slice()) {
                    Some([x]) => Ok(*x),
                    _ => Err(bad(format!("box {b:?} is not filled exactly once"))),
                })
                .collect::<Result<Vec<u32>>>()?;
            if positive.len() != sigma.n() {
                return Err(bad("labels outside the shape".into()));
            }
            let t = Tableau::almost_standard(sigma, entries).map_err(|e| bad(e.to_string()))?;
            Pontableau::AlmostStandard(t)
        }
    };
    if pont.tuples() != vs.tuples {
        return Err(bad("replayed filling does not reproduce the sequence".into()));
    }
    Ok(pont)
}

/// Payload of a vertex of `BN'` built from sequences.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SequenceVertex {
    pub sequence: Vec<Vec<i64>>,
    pub steps: Vec<Step>,
    pub pontableau: String,
}

/// `BN'` with valid sequences as vertices and off-by-1 pairs as edges.
pub fn build_augmented_graph_sequences(data: &BrillNoetherData) -> Result<LabeledGraph<SequenceVertex>> {
    require_rho_one(data)?;
    let seqs = enumerate_valid_sequences(data)?;
    let edges = off_by_one_pairs(&seqs);
    let vertices = seqs
        .iter()
        .map(|s| {
            let steps = classify_steps(s);
            let elliptic = steps.iter().any(|st| st.kind == StepKind::Stall);
            let pont = pretableaux_from_sequence(s)?;
            Ok((
                s.key(),
                Some(u8::from(elliptic)),
                SequenceVertex { sequence: s.tuples.clone(), steps, pontableau: pont.key() },
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LabeledGraph::new("bn_augmented", vertices, edges))
}

/// All off-by-1 pairs, found by bucketing on the sequence with one position masked.
pub fn off_by_one_pairs(seqs: &[ValidSequence]) -> Vec<(usize, usize)> {
    let mut buckets: HashMap<(usize, Vec<&Vec<i64>>), Vec<usize>> = HashMap::new();
    for (id, s) in seqs.iter().enumerate() {
        for i in 0..s.tuples.len() {
            let masked: Vec<&Vec<i64>> = s
                .tuples
                .iter()
                .enumerate()
                .filter(|&(p, _)| p != i)
                .map(|(_, t)| t)
                .collect();
            buckets.entry((i, masked)).or_default().push(id);
        }
    }
    let mut edges = Vec::new();
    for ((i, _), ids) in buckets {
        for (x, &a) in ids.iter().enumerate() {
            for &b in &ids[x + 1..] {
                if unit_difference(&seqs[a].tuples[i], &seqs[b].tuples[i]) {
                    edges.push((a.min(b), a.max(b)));
                }
            }
        }
    }
    edges.sort_unstable();
    edges
}

/// Payload of a vertex of `BN'` built from `BN(σ)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PontableauVertex {
    pub pontableau: String,
    pub sequence: Vec<Vec<i64>>,
}

/// `BN'` from `BN(σ)`: subdivide edges and attach pendant paths.
pub fn build_augmented_graph_structure(sigma: &SkewShape) -> Result<LabeledGraph<PontableauVertex>> {
    let bn = build_bn_graph(sigma)?;
    let total = sigma.n() as u32 + 1;
    let mut nodes: Vec<Pontableau> = bn
        .vertices()
        .iter()
        .map(|v| Pontableau::AlmostStandard(v.payload.tableau.clone()))
        .collect();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let boxes = sigma.boxes();

    let as_map = |t: &Tableau| -> BTreeMap<(usize, i64), Vec<u32>> {
        boxes.iter().copied().zip(t.entries().iter().map(|&e| vec![e])).collect()
    };
    // lays out a chain of rigid vertices between two existing ids
    let mut chain = |nodes: &mut Vec<Pontableau>, from: usize, inner: Vec<Pretableau>, to: Option<usize>| {
        let mut prev = from;
        for p in inner {
            nodes.push(Pontableau::Rigid(p));
            let id = nodes.len() - 1;
            edges.push((prev, id));
            prev = id;
        }
        if let Some(to) = to {
            edges.push((prev, to));
        }
    };

    for &(a, b) in bn.edges() {
        let ta = &bn.vertices()[a].payload.tableau;
        let tb = &bn.vertices()[b].payload.tableau;
        let bx = (0..boxes.len())
            .find(|&i| ta.entries()[i] != tb.entries()[i])
            .expect("adjacent fillings differ");
        let (x, y) = (ta.entries()[bx], tb.entries()[bx]);
        let mut pos = as_map(ta);
        pos.get_mut(&boxes[bx]).expect("box").push(y);
        // j = x is the class of tb, j = y the class of ta
        let js: Vec<u32> = if x < y { (x + 1..y).collect() } else { (y + 1..x).rev().collect() };
        let inner = js
            .into_iter()
            .map(|j| Pretableau::new(sigma.clone(), pos.clone(), (boxes[bx], j)))
            .collect::<Result<Vec<_>>>()?;
        chain(&mut nodes, b, inner, Some(a));
    }

    for (id, v) in bn.vertices().iter().enumerate() {
        let t = &v.payload.tableau;
        let i = v.payload.missing;
        for r in 0..sigma.k() {
            if augment_right(sigma, r + 1)?.is_some() {
                let c = sigma.end(r) + 1;
                let left_ok = t.entry(r, c - 1).is_none_or(|e| e < i);
                let up_ok = r == 0 || t.entry(r - 1, c).is_none_or(|e| e < i);
                if left_ok && up_ok {
                    let mut pos = as_map(t);
                    pos.insert((r, c), vec![i]);
                    let inner = (i + 1..=total)
                        .map(|j| Pretableau::new(sigma.clone(), pos.clone(), ((r, c), j)))
                        .collect::<Result<Vec<_>>>()?;
                    chain(&mut nodes, id, inner, None);
                }
            }
            if augment_left(sigma, r + 1)?.is_some() {
                let c = sigma.start(r) - 1;
                let right_ok = t.entry(r, c + 1).is_none_or(|e| e > i);
                let down_ok = t.entry(r + 1, c).is_none_or(|e| e > i);
                if right_ok && down_ok {
                    let mut pos = as_map(t);
                    pos.insert((r, c), vec![i]);
                    let inner = (1..i)
                        .rev()
                        .map(|j| Pretableau::new(sigma.clone(), pos.clone(), ((r, c), j)))
                        .collect::<Result<Vec<_>>>()?;
                    chain(&mut nodes, id, inner, None);
                }
            }
        }
    }

    let tuples: Vec<Vec<Vec<i64>>> = nodes.iter().map(|p| p.tuples()).collect();
    let mut order: Vec<usize> = (0..nodes.len()).collect();
    order.sort_by(|&x, &y| tuples[x].cmp(&tuples[y]));
    let mut rank = vec![0; nodes.len()];
    for (new, &old) in order.iter().enumerate() {
        rank[old] = new;
    }
    let vertices = order
        .iter()
        .map(|&old| {
            let p = &nodes[old];
            (
                format_tuples(&tuples[old]),
                Some(u8::from(p.is_almost_standard())),
                PontableauVertex { pontableau: p.key(), sequence: tuples[old].clone() },
            )
        })
        .collect();
    let edges = edges.into_iter().map(|(a, b)| (rank[a], rank[b])).collect();
    Ok(LabeledGraph::new("bn_augmented", vertices, edges))
}

/// Every pretableau on σ, straight from the definition. Limited to small shapes.
pub fn enumerate_pretableaux_direct(sigma: &SkewShape) -> Result<Vec<Pretableau>> {
    let n = sigma.n();
    if n > DIRECT_ENUM_CAP {
        return Err(BnError::TooLarge { size: n, cap: DIRECT_ENUM_CAP });
    }
    let total = n as u32 + 1;
    let boxes = sigma.boxes();
    let preds = sigma.predecessors();
    let mut out = Vec::new();

    // negative label inside σ: that box holds two positive labels
    for nb in 0..n {
        let mut cap = vec![1usize; n];
        cap[nb] = 2;
        let mut fill: Vec<Vec<u32>> = vec![Vec::new(); n];
        fn go(
            label: u32,
            total: u32,
            cap: &[usize],
            preds: &[Vec<usize>],
            fill: &mut Vec<Vec<u32>>,
            found: &mut Vec<Vec<Vec<u32>>>,
        ) {
            if label > total {
                found.push(fill.clone());
                return;
            }
            for b in 0..fill.len() {
                if fill[b].len() < cap[b] && preds[b].iter().all(|&p| fill[p].len() == cap[p]) {
                    fill[b].push(label);
                    go(label + 1, total, cap, preds, fill, found);
                    fill[b].pop();
                }
            }
        }
        let mut found = Vec::new();
        go(1, total, &cap, &preds, &mut fill, &mut found);
        for f in found {
            let (lo, hi) = (f[nb][0], f[nb][1]);
            let pos: BTreeMap<(usize, i64), Vec<u32>> = boxes.iter().copied().zip(f).collect();
            for j in lo..=hi {
                out.push(Pretableau::new(sigma.clone(), pos.clone(), (boxes[nb], j))?);
            }
        }
    }

    // negative label in an added box: a standard filling of the bigger shape
    for r in 0..sigma.k() {
        let exts = [
            (augment_right(sigma, r + 1)?, sigma.end(r) + 1, true),
            (augment_left(sigma, r + 1)?, sigma.start(r) - 1, false),
        ];
        for (ext, col, right) in exts {
            let Some(ext) = ext else { continue };
            let ext_boxes = ext.boxes();
            for f in fillings(&ext, false) {
                let pos: BTreeMap<(usize, i64), Vec<u32>> =
                    ext_boxes.iter().copied().zip(f.iter().map(|&e| vec![e])).collect();
                let i = pos[&(r, col)][0];
                let js: Vec<u32> = if right { (i..=total).collect() } else { (1..=i).collect() };
                for j in js {
                    out.push(Pretableau::new(sigma.clone(), pos.clone(), ((r, col), j))?);
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn data(g: usize, r: usize, d: usize, a: &[usize], b: &[usize]) -> BrillNoetherData {
        BrillNoetherData::new(g, r, d, a.to_vec(), b.to_vec()).unwrap()
    }

    fn worked() -> BrillNoetherData {
        data(5, 1, 5, &[0, 1], &[1, 0])
    }

    fn worked_tuples() -> Vec<Vec<i64>> {
        vec![vec![0, 1], vec![0, 2], vec![1, 2], vec![1, 4], vec![2, 4], vec![3, 4]]
    }

    fn worked_pretableau() -> Pretableau {
        let sigma = shape_from_bn_data(&worked()).unwrap();
        let pos: BTreeMap<(usize, i64), Vec<u32>> = [
            ((0, 0), vec![1]),
            ((0, 1), vec![3]),
            ((1, -1), vec![2, 4]),
            ((1, 0), vec![5]),
        ]
        .into();
        Pretableau::new(sigma, pos, ((1, -1), 3)).unwrap()
    }

    #[test]
    fn sequences_for_a_single_box() {
        let d = data(2, 0, 1, &[0], &[0]);
        let seqs: Vec<String> = enumerate_valid_sequences(&d).unwrap().iter().map(|s| s.key()).collect();
        assert_eq!(seqs, vec!["(0)(0)(1)", "(0)(1)(1)"]);
    }

    #[test]
    fn worked_example_sequence_is_enumerated() {
        let seqs = enumerate_valid_sequences(&worked()).unwrap();
        assert!(seqs.iter().any(|s| s.tuples() == worked_tuples().as_slice()));
        assert!(seqs.iter().all(|s| s.total_progress() == 1));
    }

    #[test]
    fn rho_zero_square_has_two_sequences() {
        let seqs = enumerate_valid_sequences(&BrillNoetherData::unramified(4, 1, 3).unwrap()).unwrap();
        assert_eq!(seqs.len(), 2);
        for s in &seqs {
            assert!(classify_steps(s).iter().all(|st| matches!(st.kind, StepKind::Plod(_))));
        }
    }

    #[test]
    fn step_classification() {
        let d = data(2, 0, 1, &[0], &[0]);
        let s = ValidSequence::new(&d, vec![vec![0], vec![0], vec![1]]).unwrap();
        assert_eq!(
            classify_steps(&s),
            vec![
                Step { position: 1, kind: StepKind::Plod(0) },
                Step { position: 2, kind: StepKind::Stall }
            ]
        );
        let s = ValidSequence::new(&worked(), worked_tuples()).unwrap();
        let steps = classify_steps(&s);
        assert_eq!(steps[2].kind, StepKind::Swap { a: 1, b: 0 });
        assert_eq!(steps.iter().filter(|st| matches!(st.kind, StepKind::Plod(_))).count(), 4);
    }

    #[test]
    fn invalid_sequences_are_rejected() {
        let d = data(2, 0, 1, &[0], &[0]);
        assert!(ValidSequence::new(&d, vec![vec![0], vec![1]]).is_err());
        assert!(ValidSequence::new(&d, vec![vec![0], vec![0], vec![0]]).is_err());
        assert!(ValidSequence::new(&d, vec![vec![1], vec![1], vec![1]]).is_err());
        let w = worked();
        let mut t = worked_tuples();
        t[1] = vec![0, 1];
        assert!(ValidSequence::new(&w, t).is_err());
    }

    #[test]
    fn off_by_one_examples() {
        let d = data(2, 0, 1, &[0], &[0]);
        let a = ValidSequence::new(&d, vec![vec![0], vec![0], vec![1]]).unwrap();
        let b = ValidSequence::new(&d, vec![vec![0], vec![1], vec![1]]).unwrap();
        assert!(off_by_one(&a, &b).unwrap());
        assert!(!off_by_one(&a, &a).unwrap());
        let other = ValidSequence::new(&worked(), worked_tuples()).unwrap();
        assert_eq!(off_by_one(&a, &other), Err(BnError::DataMismatch));
    }

    #[test]
    fn off_by_one_needs_a_single_position() {
        let d = data(3, 0, 1, &[0], &[0]);
        // rho = 2 here, so several two-position differences exist
        let seqs = enumerate_valid_sequences(&d).unwrap();
        let a = seqs.iter().find(|s| s.tuples() == [vec![0], vec![0], vec![0], vec![1]]).unwrap();
        let b = seqs.iter().find(|s| s.tuples() == [vec![0], vec![1], vec![1], vec![1]]).unwrap();
        assert!(!off_by_one(a, b).unwrap());
    }

    #[test]
    fn worked_example_round_trip() {
        let p = worked_pretableau();
        let s = sequence_from_pretableau(&p, &worked()).unwrap();
        assert_eq!(s.tuples(), worked_tuples().as_slice());
        let back = pretableaux_from_sequence(&s).unwrap();
        assert_eq!(back, Pontableau::Rigid(p));
        assert_eq!(back.key(), "rigid[0:1 1:3/-1:2,-3,4 0:5]");
    }

    #[test]
    fn stall_gives_an_almost_standard_key() {
        let d = data(2, 0, 1, &[0], &[0]);
        let s = ValidSequence::new(&d, vec![vec![0], vec![1], vec![1]]).unwrap();
        let p = pretableaux_from_sequence(&s).unwrap();
        match &p {
            Pontableau::AlmostStandard(t) => {
                assert_eq!(t.entries(), &[2]);
                assert_eq!(t.missing_label(), 1);
            }
            other => panic!("expected an almost-standard class, got {other:?}"),
        }
        for rep in p.representatives() {
            assert_eq!(sequence_from_pretableau(&rep, &d).unwrap(), s);
        }
    }

    #[test]
    fn colocated_pair_moves_freely() {
        let sq = SkewShape::rectangle(2, 2).unwrap();
        let t = Tableau::from_rows(sq, &[vec![1, 2], vec![4, 5]]).unwrap();
        let class = Pontableau::AlmostStandard(t);
        let reps = class.representatives();
        assert!(reps.len() >= 2);
        let d = BrillNoetherData::unramified(5, 1, 4).unwrap();
        let seqs: BTreeSet<_> = reps.iter().map(|p| sequence_from_pretableau(p, &d).unwrap()).collect();
        assert_eq!(seqs.len(), 1);
        let s = seqs.into_iter().next().unwrap();
        assert_eq!(distinguished_step(&s).unwrap(), Step { position: 3, kind: StepKind::Stall });
        for rep in &reps {
            assert_eq!(Pontableau::from_pretableau(rep), class);
        }
    }

    #[test]
    fn pretableau_rules() {
        let sigma = shape_from_bn_data(&worked()).unwrap();
        let base: BTreeMap<(usize, i64), Vec<u32>> = [
            ((0, 0), vec![1]),
            ((0, 1), vec![3]),
            ((1, -1), vec![2, 4]),
            ((1, 0), vec![5]),
        ]
        .into();
        // side condition: -j must sit between the two labels of its box
        assert!(Pretableau::new(sigma.clone(), base.clone(), ((1, -1), 5)).is_err());
        assert!(Pretableau::new(sigma.clone(), base.clone(), ((1, -1), 1)).is_err());
        // weight rule: a plain box of σ cannot take the negative label
        assert!(Pretableau::new(sigma.clone(), base.clone(), ((0, 0), 1)).is_err());
        // increasing rule applies to every choice: 4 above... 2,4 left of 5 is fine, 4 > 3? no column relation
        let mut bad = base.clone();
        bad.insert((1, -1), vec![2, 5]);
        bad.insert((1, 0), vec![4]);
        assert!(Pretableau::new(sigma, bad, ((1, -1), 3)).is_err());
    }

    #[test]
    fn augmented_graph_of_square_both_ways() {
        let a = build_augmented_graph_sequences(&BrillNoetherData::unramified(5, 1, 4).unwrap()).unwrap();
        let b = build_augmented_graph_structure(&SkewShape::rectangle(2, 2).unwrap()).unwrap();
        assert_eq!((a.vertex_count(), a.edge_count()), (20, 20));
        assert_eq!((b.vertex_count(), b.edge_count()), (20, 20));
        assert!(a.same_labeled_graph(&b));
        let elliptic = b.vertices().iter().filter(|v| v.genus == Some(1)).count();
        assert_eq!(elliptic, 10);
    }

    #[test]
    fn augmented_graph_of_single_box() {
        let a = build_augmented_graph_sequences(&data(2, 0, 1, &[0], &[0])).unwrap();
        assert_eq!((a.vertex_count(), a.edge_count()), (2, 1));
        // both pendant paths have length zero here: n + 1 - i = 0 and i - 1 = 0
        let b = build_augmented_graph_structure(&SkewShape::rectangle(1, 1).unwrap()).unwrap();
        assert_eq!((b.vertex_count(), b.edge_count()), (2, 1));
        assert!(a.same_labeled_graph(&b));
    }

    #[test]
    fn augmented_graph_of_worked_shape() {
        let d = worked();
        let a = build_augmented_graph_sequences(&d).unwrap();
        let b = build_augmented_graph_structure(&shape_from_bn_data(&d).unwrap()).unwrap();
        assert!(a.same_labeled_graph(&b));
        let d = data(4, 1, 4, &[0, 1], &[0, 0]);
        let a = build_augmented_graph_sequences(&d).unwrap();
        let b = build_augmented_graph_structure(&shape_from_bn_data(&d).unwrap()).unwrap();
        assert!(a.same_labeled_graph(&b));
    }

    #[test]
    fn wrong_rho_is_refused() {
        let d = BrillNoetherData::unramified(4, 1, 3).unwrap();
        assert!(matches!(build_augmented_graph_sequences(&d), Err(BnError::WrongRho { .. })));
        let s = enumerate_valid_sequences(&d).unwrap().remove(0);
        assert!(matches!(pretableaux_from_sequence(&s), Err(BnError::WrongRho { .. })));
    }

    #[test]
    fn direct_enumeration_on_square() {
        let sq = SkewShape::rectangle(2, 2).unwrap();
        let all = enumerate_pretableaux_direct(&sq).unwrap();
        let classes: BTreeSet<String> = all.iter().map(|p| Pontableau::from_pretableau(p).key()).collect();
        assert_eq!(classes.len(), 20);
        let d = BrillNoetherData::unramified(5, 1, 4).unwrap();
        for p in &all {
            let s = sequence_from_pretableau(p, &d).unwrap();
            assert_eq!(s.tuples(), Pontableau::from_pretableau(p).tuples().as_slice());
        }
    }
}
