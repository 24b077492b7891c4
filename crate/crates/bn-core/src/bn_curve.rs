//! The Brill-Noether curve of a generic elliptic chain with two marked points.
//!
//! Geometry is never represented with coordinates. A component is named by its
//! valid sequence, and each elliptic aspect carries only its combinatorial
//! classification. The chain is assumed generic (`p_i - q_i` non-torsion); no
//! check is made since there is no curve arithmetic here.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::counting::{boundary_counts, count_skew_aitken, factorial};
use crate::error::{BnError, Result};
use crate::graph::LabeledGraph;
use crate::pontableaux::{classify_steps, enumerate_valid_sequences, off_by_one_pairs, Step, StepKind, ValidSequence};
use crate::shapes::{is_connected, shape_from_bn_data, BrillNoetherData};

/// Ramification at `p` and `q` of a rank-r series on a single elliptic curve.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RamificationProfile {
    pub r: usize,
    pub alpha: Vec<i64>,
    pub beta: Vec<i64>,
}

impl RamificationProfile {
    pub fn new(alpha: Vec<i64>, beta: Vec<i64>) -> Result<Self> {
        if alpha.is_empty() || alpha.len() != beta.len() {
            return Err(BnError::InvalidData("alpha and beta must have the same positive length".into()));
        }
        if alpha.iter().chain(&beta).any(|&x| x < 0) {
            return Err(BnError::InvalidData("ramification must be nonnegative".into()));
        }
        if alpha.windows(2).any(|w| w[0] > w[1]) || beta.windows(2).any(|w| w[0] < w[1]) {
            return Err(BnError::InvalidData("alpha must be nondecreasing and beta nonincreasing".into()));
        }
        Ok(RamificationProfile { r: alpha.len() - 1, alpha, beta })
    }

    /// Vanishing orders at `p`: `a_i = α_i + i`.
    pub fn vanishing_p(&self) -> Vec<i64> {
        self.alpha.iter().enumerate().map(|(i, a)| a + i as i64).collect()
    }

    /// Vanishing orders at `q`: `b_i = β_i + r - i`.
    pub fn vanishing_q(&self) -> Vec<i64> {
        let r = self.r as i64;
        self.beta.iter().enumerate().map(|(i, b)| b + r - i as i64).collect()
    }

    /// `1 - (r+1)(1-d+r) - |α| - |β|`.
    pub fn rho_one(&self, d: usize) -> i64 {
        let r = self.r as i64;
        let s: i64 = self.alpha.iter().sum::<i64>() + self.beta.iter().sum::<i64>();
        1 - (r + 1) * (1 - d as i64 + r) - s
    }

    fn sums(&self) -> Vec<i64> {
        self.alpha.iter().zip(&self.beta).map(|(a, b)| a + b).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum AspectClass {
    Empty,
    /// The forced bundle `O(a p + b q)`, from index `k`.
    Point { k: usize, a: i64, b: i64 },
    ProjectiveLine,
    EllipticPencil,
}

/// Some `t` with `α + β <= (d-r-1) + e_t` in every coordinate.
pub fn is_nonempty_elliptic(profile: &RamificationProfile, d: usize) -> bool {
    let bound = d as i64 - profile.r as i64 - 1;
    let sums = profile.sums();
    (0..=profile.r).any(|t| sums.iter().enumerate().all(|(j, &s)| s <= bound + i64::from(j == t)))
}

pub fn classify_aspect(profile: &RamificationProfile, d: usize) -> Result<AspectClass> {
    let rho = profile.rho_one(d);
    if rho != 0 && rho != 1 {
        return Err(BnError::WrongRho { expected: "0 or 1".into(), actual: rho });
    }
    if !is_nonempty_elliptic(profile, d) {
        return Err(BnError::EmptyAspect);
    }
    let top = d as i64 - profile.r as i64;
    let sums = profile.sums();
    let full = sums.iter().position(|&s| s == top);
    Ok(match (rho, full) {
        (0, Some(k)) => AspectClass::Point { k, a: profile.vanishing_p()[k], b: profile.vanishing_q()[k] },
        (0, None) => return Err(BnError::EmptyAspect),
        (_, Some(_)) => AspectClass::ProjectiveLine,
        (_, None) => AspectClass::EllipticPencil,
    })
}

/// `β^i = (d-r) - α^{i+1}` for i = 1..g.
pub fn complementary_sequence(vs: &ValidSequence) -> Vec<Vec<i64>> {
    let top = vs.data().d_minus_r();
    vs.tuples()[1..].iter().map(|t| t.iter().map(|x| top - x).collect()).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ComponentKind {
    /// Isomorphic to `E_i`.
    Elliptic { curve: usize },
    /// A `P^1` lying over `E_i`.
    Rational { over: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Component {
    pub sequence: ValidSequence,
    pub kind: ComponentKind,
    pub step: Step,
    /// Classification of the aspect `(α^i, β^i)` on `E_i`, i = 1..g.
    pub aspects: Vec<AspectClass>,
}

/// Payload of a dual-graph vertex.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComponentVertex {
    pub component: usize,
    pub kind: ComponentKind,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChainModel {
    pub data: BrillNoetherData,
    pub components: Vec<Component>,
    /// Edges are the coarse limit series where two components meet.
    pub dual_graph: LabeledGraph<ComponentVertex>,
}

impl ChainModel {
    /// Number of other components meeting component `i`.
    pub fn gluings(&self, i: usize) -> usize {
        self.dual_graph.degrees()[i]
    }
}

fn aspect_matches(kind: &StepKind, aspect: &AspectClass) -> bool {
    match (kind, aspect) {
        (StepKind::Plod(b), AspectClass::Point { k, .. }) => b == k,
        (StepKind::Stall, AspectClass::EllipticPencil) => true,
        (StepKind::Swap { .. }, AspectClass::ProjectiveLine) => true,
        _ => false,
    }
}

/// One component per valid sequence, glued along off-by-1 pairs.
///
/// Panics if some aspect's classification disagrees with its step, which
/// would be an internal inconsistency.
pub fn chain_model(data: &BrillNoetherData) -> Result<ChainModel> {
    if data.rho() != 1 {
        return Err(BnError::WrongRho { expected: "1".into(), actual: data.rho() });
    }
    let sigma = shape_from_bn_data(data).map_err(|e| BnError::DegenerateShape(e.to_string()))?;
    if !is_connected(&sigma) {
        return Err(BnError::DegenerateShape("shape is disconnected".into()));
    }
    let seqs = enumerate_valid_sequences(data)?;
    let mut components = Vec::with_capacity(seqs.len());
    for vs in &seqs {
        let steps = classify_steps(vs);
        let betas = complementary_sequence(vs);
        let aspects = (0..data.g)
            .map(|i| {
                let profile = RamificationProfile::new(vs.tuples()[i].clone(), betas[i].clone())?;
                classify_aspect(&profile, data.d)
            })
            .collect::<Result<Vec<_>>>()?;
        for (st, asp) in steps.iter().zip(&aspects) {
            assert!(aspect_matches(&st.kind, asp), "aspect {asp:?} does not match step {st:?} of {vs}");
        }
        let step = steps
            .into_iter()
            .find(|s| !matches!(s.kind, StepKind::Plod(_)))
            .expect("rho = 1 sequences have one non-plod step");
        let kind = match step.kind {
            StepKind::Stall => ComponentKind::Elliptic { curve: step.position },
            _ => ComponentKind::Rational { over: step.position },
        };
        components.push(Component { sequence: vs.clone(), kind, step, aspects });
    }
    let vertices = components
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let genus = u8::from(matches!(c.kind, ComponentKind::Elliptic { .. }));
            (c.sequence.key(), Some(genus), ComponentVertex { component: i, kind: c.kind })
        })
        .collect();
    let dual_graph = LabeledGraph::new("chain_dual", vertices, off_by_one_pairs(&seqs));
    Ok(ChainModel { data: data.clone(), components, dual_graph })
}

/// Sum of component genera plus the first Betti number of the dual graph.
pub fn genus_from_graph(model: &ChainModel) -> Result<BigInt> {
    let g = &model.dual_graph;
    if !g.is_connected() {
        return Err(BnError::DisconnectedGraph);
    }
    let genera: usize = g.vertices().iter().map(|v| v.genus.unwrap_or(0) as usize).sum();
    Ok(BigInt::from(genera + g.edge_count()) - BigInt::from(g.vertex_count()) + 1)
}

/// Contract rational chains: drop rational leaves and smooth rational
/// vertices of degree 2, repeatedly. Returns the surviving vertex ids and the
/// edge multiset between them.
pub fn contract_rational_chains<P>(graph: &LabeledGraph<P>) -> (Vec<usize>, Vec<(usize, usize)>) {
    let n = graph.vertex_count();
    let mut alive = vec![true; n];
    let mut edges: Vec<Option<(usize, usize)>> = graph.edges().iter().map(|&e| Some(e)).collect();
    let rational = |v: usize| graph.vertices()[v].genus == Some(0);
    loop {
        let mut changed = false;
        for v in 0..n {
            if !alive[v] || !rational(v) {
                continue;
            }
            let inc: Vec<usize> = (0..edges.len())
                .filter(|&e| edges[e].is_some_and(|(a, b)| a == v || b == v))
                .collect();
            let other = |e: usize| {
                let (a, b) = edges[e].expect("live edge");
                if a == v { b } else { a }
            };
            match inc.len() {
                0 | 1 => {
                    for &e in &inc {
                        edges[e] = None;
                    }
                }
                2 if other(inc[0]) != other(inc[1]) => {
                    let (x, y) = (other(inc[0]), other(inc[1]));
                    edges[inc[0]] = Some((x.min(y), x.max(y)));
                    edges[inc[1]] = None;
                }
                _ => continue,
            }
            alive[v] = false;
            changed = true;
        }
        if !changed {
            break;
        }
    }
    let mut live: Vec<(usize, usize)> = edges.into_iter().flatten().collect();
    live.sort_unstable();
    ((0..n).filter(|&v| alive[v]).collect(), live)
}

/// Genus from the boundary counts of `σ(data)`.
pub fn genus_closed_form(data: &BrillNoetherData) -> Result<BigInt> {
    if data.rho() != 1 {
        return Err(BnError::WrongRho { expected: "1".into(), actual: data.rho() });
    }
    let sigma = shape_from_bn_data(data).map_err(|e| BnError::DegenerateShape(e.to_string()))?;
    if !is_connected(&sigma) {
        return Err(BnError::DegenerateShape("shape is disconnected".into()));
    }
    let k = data.r + 1;
    let c = boundary_counts(&sigma);
    let mut acc = BigInt::one() + BigInt::from(k * (sigma.n() + 1)) * &c.f_sigma;
    for i in 1..=k {
        acc += BigInt::from(k - i) * &c.f_left[i - 1];
        acc -= BigInt::from(k + 1 - i) * &c.f_right[i - 1];
    }
    Ok(acc)
}

/// The classical genus of `G^r_d` of a general curve when ρ = 1.
pub fn genus_classical(g: usize, r: usize, d: usize) -> Result<BigInt> {
    let data = BrillNoetherData::unramified(g, r, d)?;
    if data.rho() != 1 {
        return Err(BnError::WrongRho { expected: "1".into(), actual: data.rho() });
    }
    let w = data.width();
    let mut x = BigRational::new(BigInt::from((r + 1) * w), BigInt::from(w + r + 1));
    x *= BigRational::from_integer(factorial(g));
    for i in 0..=r {
        x *= BigRational::new(factorial(i), factorial(w + i));
    }
    x += BigRational::one();
    if !x.is_integer() {
        return Err(BnError::NonIntegral(format!("classical genus {x}")));
    }
    Ok(x.to_integer())
}

/// Number of points when ρ = 0, namely `f^σ`.
///
/// Under the enumeration cap this is also checked against the number of valid
/// sequences; a mismatch panics.
pub fn count_rho0(data: &BrillNoetherData) -> Result<BigInt> {
    if data.rho() != 0 {
        return Err(BnError::WrongRho { expected: "0".into(), actual: data.rho() });
    }
    let sigma = shape_from_bn_data(data)?;
    let f = count_skew_aitken(&sigma);
    if data.g <= crate::enum_cap() {
        let seqs = enumerate_valid_sequences(data)?;
        assert_eq!(BigInt::from(seqs.len()), f, "valid sequences and standard fillings disagree for {data}");
    }
    debug_assert!(!f.is_zero());
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bn_graph::{build_bn_graph, edge_count_formula};
    use crate::pontableaux::build_augmented_graph_sequences;

    fn prof(a: &[i64], b: &[i64]) -> RamificationProfile {
        RamificationProfile::new(a.to_vec(), b.to_vec()).unwrap()
    }

    fn data(g: usize, r: usize, d: usize, a: &[usize], b: &[usize]) -> BrillNoetherData {
        BrillNoetherData::new(g, r, d, a.to_vec(), b.to_vec()).unwrap()
    }

    #[test]
    fn vanishing_orders() {
        let p = prof(&[0, 1], &[2, 0]);
        assert_eq!(p.vanishing_p(), vec![0, 2]);
        assert_eq!(p.vanishing_q(), vec![3, 0]);
        assert!(RamificationProfile::new(vec![1, 0], vec![0, 0]).is_err());
    }

    #[test]
    fn nonempty_examples() {
        assert!(is_nonempty_elliptic(&prof(&[0], &[0]), 0));
        assert!(!is_nonempty_elliptic(&prof(&[1], &[0]), 0));
        assert!(!is_nonempty_elliptic(&prof(&[0, 1], &[1, 0]), 2));
    }

    #[test]
    fn classification_examples() {
        assert_eq!(classify_aspect(&prof(&[0], &[0]), 1).unwrap(), AspectClass::EllipticPencil);
        assert_eq!(classify_aspect(&prof(&[0], &[1]), 1).unwrap(), AspectClass::Point { k: 0, a: 0, b: 1 });
        assert_eq!(classify_aspect(&prof(&[0, 0], &[2, 0]), 3).unwrap(), AspectClass::ProjectiveLine);
        assert!(matches!(classify_aspect(&prof(&[0], &[0]), 2), Err(BnError::WrongRho { .. })));
        assert_eq!(classify_aspect(&prof(&[0, 0], &[3, 0]), 3), Err(BnError::EmptyAspect));
    }

    #[test]
    fn complementary_examples() {
        let d = data(2, 0, 1, &[0], &[0]);
        let vs = ValidSequence::new(&d, vec![vec![0], vec![0], vec![1]]).unwrap();
        assert_eq!(complementary_sequence(&vs), vec![vec![1], vec![0]]);
        let w = data(5, 1, 5, &[0, 1], &[1, 0]);
        for vs in enumerate_valid_sequences(&w).unwrap() {
            let b = complementary_sequence(&vs);
            assert_eq!(b.last().unwrap(), &vec![1, 0]);
        }
    }

    #[test]
    fn chain_of_genus_two() {
        let m = chain_model(&data(2, 0, 1, &[0], &[0])).unwrap();
        let kinds: Vec<ComponentKind> = m.components.iter().map(|c| c.kind).collect();
        assert_eq!(kinds, vec![ComponentKind::Elliptic { curve: 2 }, ComponentKind::Elliptic { curve: 1 }]);
        assert_eq!(m.dual_graph.edge_count(), 1);
        assert_eq!(genus_from_graph(&m).unwrap(), BigInt::from(2));
    }

    #[test]
    fn chain_of_square() {
        let d = BrillNoetherData::unramified(5, 1, 4).unwrap();
        let m = chain_model(&d).unwrap();
        assert_eq!(m.components.len(), 20);
        let elliptic = m.components.iter().filter(|c| matches!(c.kind, ComponentKind::Elliptic { .. })).count();
        assert_eq!(elliptic, 10);
        assert_eq!(m.dual_graph.edge_count(), 20);
        assert_eq!(genus_from_graph(&m).unwrap(), BigInt::from(11));
        assert!(m.dual_graph.same_labeled_graph(&build_augmented_graph_sequences(&d).unwrap()));
        for (i, c) in m.components.iter().enumerate() {
            if let ComponentKind::Rational { over } = c.kind {
                let expect = if over == 1 || over == d.g { 1 } else { 2 };
                assert_eq!(m.gluings(i), expect, "component {}", c.sequence);
            }
        }
        let (alive, edges) = contract_rational_chains(&m.dual_graph);
        assert_eq!(alive.len(), 10);
        let sigma = shape_from_bn_data(&d).unwrap();
        assert_eq!(edges.len(), build_bn_graph(&sigma).unwrap().edge_count());
    }

    #[test]
    fn genus_spot_values() {
        let cases = [
            (data(5, 1, 4, &[0, 0], &[0, 0]), 11),
            (data(2, 0, 1, &[0], &[0]), 2),
            (data(4, 2, 5, &[0, 0, 0], &[0, 0, 0]), 4),
            (data(4, 1, 4, &[0, 1], &[0, 0]), 9),
        ];
        for (d, want) in cases {
            let want = BigInt::from(want);
            assert_eq!(genus_closed_form(&d).unwrap(), want, "{d}");
            assert_eq!(genus_from_graph(&chain_model(&d).unwrap()).unwrap(), want, "{d}");
            let sigma = shape_from_bn_data(&d).unwrap();
            assert_eq!(edge_count_formula(&sigma).unwrap() + 1, want, "{d}");
        }
    }

    #[test]
    fn classical_values() {
        assert_eq!(genus_classical(5, 1, 4).unwrap(), BigInt::from(11));
        assert_eq!(genus_classical(2, 0, 1).unwrap(), BigInt::from(2));
        assert_eq!(genus_classical(4, 2, 5).unwrap(), BigInt::from(4));
        assert!(matches!(genus_classical(4, 1, 3), Err(BnError::WrongRho { .. })));
    }

    #[test]
    fn rho_zero_counts() {
        assert_eq!(count_rho0(&BrillNoetherData::unramified(4, 1, 3).unwrap()).unwrap(), BigInt::from(2));
        assert_eq!(count_rho0(&BrillNoetherData::unramified(2, 1, 2).unwrap()).unwrap(), BigInt::from(1));
        assert_eq!(count_rho0(&data(1, 0, 1, &[0], &[1])).unwrap(), BigInt::from(1));
        assert!(matches!(count_rho0(&BrillNoetherData::unramified(5, 1, 4).unwrap()), Err(BnError::WrongRho { .. })));
    }

    #[test]
    fn chain_model_refuses_other_rho() {
        assert!(matches!(chain_model(&BrillNoetherData::unramified(4, 1, 3).unwrap()), Err(BnError::WrongRho { .. })));
    }
}
