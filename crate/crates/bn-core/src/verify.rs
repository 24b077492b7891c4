//! Cross-checks between independent implementations. Each check compares two
//! or more computations of the same quantity and reports pass, fail or skip.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use serde::Serialize;

use crate::bn_curve::{
    chain_model, contract_rational_chains, count_rho0, genus_classical, genus_closed_form, genus_from_graph,
    is_nonempty_elliptic, ComponentKind, RamificationProfile,
};
use crate::bn_graph::{build_bn_graph, edge_count_formula, expected_turns_exact, expected_turns_formula, expected_turns_special};
use crate::counting::{check_strange_identity, count_brute, count_skew_aitken, count_syt_hook};
use crate::error::Result;
use crate::pontableaux::{
    build_augmented_graph_sequences, build_augmented_graph_structure, enumerate_pretableaux_direct,
    enumerate_valid_sequences, off_by_one_pairs, pretableaux_from_sequence, sequence_from_pretableau, Pontableau,
    ValidSequence, DIRECT_ENUM_CAP,
};
use crate::shapes::{augment_right, is_connected, shape_from_bn_data, BrillNoetherData, Partition, SkewShape};
use crate::tableaux_paths::{corner_mean_exact, corner_mean_formula, turn_tallies};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
}

impl CheckResult {
    fn from(name: &'static str, r: Result<bool>) -> Self {
        match r {
            Ok(true) => CheckResult { name, status: Status::Pass, detail: String::new() },
            Ok(false) => CheckResult { name, status: Status::Fail, detail: "values disagree".into() },
            Err(e) => CheckResult { name, status: Status::Fail, detail: e.to_string() },
        }
    }

    fn skip(name: &'static str, why: &str) -> Self {
        CheckResult { name, status: Status::Skip, detail: why.to_string() }
    }
}

/// Aitken against brute force, and the hook formula on straight shapes.
pub fn counting_oracle(sigma: &SkewShape) -> Result<bool> {
    let a = count_skew_aitken(sigma);
    if a != count_brute(sigma)? {
        return Ok(false);
    }
    if sigma.is_straight() {
        let lambda = Partition::new(sigma.lambda_mu().0)?;
        return Ok(count_syt_hook(&lambda) == a);
    }
    Ok(true)
}

/// Closed form against enumeration, and the special laws where they apply.
pub fn master_formula(sigma: &SkewShape) -> Result<bool> {
    let f = expected_turns_formula(sigma)?;
    let e = expected_turns_exact(sigma)?.expectation;
    Ok(f == e && expected_turns_special(sigma).is_none_or(|s| s == f))
}

/// Left and right turns agree box by box.
pub fn turn_balance(sigma: &SkewShape) -> Result<bool> {
    let (l, r) = turn_tallies(sigma)?;
    Ok(l == r)
}

/// The corner mean by enumeration against `n + 1 - f^{σ^i}/f^σ`, for every row with `σ^i`.
pub fn corner_expectation(sigma: &SkewShape) -> Result<bool> {
    for i in 1..=sigma.k() {
        if corner_mean_exact(sigma, i)? != corner_mean_formula(sigma, i)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Built `BN(σ)` against the edge formula and the vertex count `(n+1) f^σ`.
pub fn bn_edge_count(sigma: &SkewShape) -> Result<bool> {
    let g = build_bn_graph(sigma)?;
    let vertices = BigInt::from(sigma.n() + 1) * count_skew_aitken(sigma);
    Ok(BigInt::from(g.vertex_count()) == vertices && BigInt::from(g.edge_count()) == edge_count_formula(sigma)?)
}

/// `BN'(σ)` from `BN(σ)` against the classes and adjacency of all pretableaux.
pub fn augmented_structure_vs_direct(sigma: &SkewShape) -> Result<bool> {
    let built = build_augmented_graph_structure(sigma)?;
    let built_keys: BTreeSet<String> = built.vertices().iter().map(|v| v.payload.pontableau.clone()).collect();
    let by_id: Vec<&str> = built.vertices().iter().map(|v| v.payload.pontableau.as_str()).collect();
    let built_edges: BTreeSet<(String, String)> = built
        .edges()
        .iter()
        .map(|&(a, b)| ordered(by_id[a].to_string(), by_id[b].to_string()))
        .collect();
    let all = enumerate_pretableaux_direct(sigma)?;
    let keys: BTreeSet<String> = all.iter().map(|p| Pontableau::from_pretableau(p).key()).collect();
    let mut edges = BTreeSet::new();
    for p in &all {
        if let Some(q) = p.with_negative(p.negative().1 + 1) {
            let (x, y) = (Pontableau::from_pretableau(p).key(), Pontableau::from_pretableau(&q).key());
            if x != y {
                edges.insert(ordered(x, y));
            }
        }
    }
    Ok(keys == built_keys && edges == built_edges)
}

fn ordered(a: String, b: String) -> (String, String) {
    if a <= b { (a, b) } else { (b, a) }
}

/// Both constructions of `BN'` give the same labeled graph.
pub fn augmented_routes_agree(data: &BrillNoetherData) -> Result<bool> {
    let a = build_augmented_graph_sequences(data)?;
    let b = build_augmented_graph_structure(&shape_from_bn_data(data)?)?;
    Ok(a.same_labeled_graph(&b))
}

/// Sequence and pontableau maps are mutually inverse; with a small shape, the
/// classes of all pretableaux match the sequences one to one.
pub fn sequence_bijection(data: &BrillNoetherData) -> Result<bool> {
    let seqs = enumerate_valid_sequences(data)?;
    let mut class_of: BTreeMap<&ValidSequence, String> = BTreeMap::new();
    for s in &seqs {
        let p = pretableaux_from_sequence(s)?;
        let reps = p.representatives();
        if reps.is_empty() {
            return Ok(false);
        }
        for rep in &reps {
            if &sequence_from_pretableau(rep, data)? != s || Pontableau::from_pretableau(rep) != p {
                return Ok(false);
            }
        }
        class_of.insert(s, p.key());
    }
    let sigma = shape_from_bn_data(data)?;
    if sigma.n() > DIRECT_ENUM_CAP {
        return Ok(true);
    }
    let mut seen: BTreeMap<ValidSequence, BTreeSet<String>> = BTreeMap::new();
    for p in enumerate_pretableaux_direct(&sigma)? {
        let s = sequence_from_pretableau(&p, data)?;
        seen.entry(s).or_default().insert(Pontableau::from_pretableau(&p).key());
    }
    if seen.len() != seqs.len() {
        return Ok(false);
    }
    Ok(seen.iter().all(|(s, keys)| {
        keys.len() == 1 && class_of.get(s).is_some_and(|k| keys.contains(k))
    }))
}

/// Adjacent pretableaux have off-by-1 sequences, and every off-by-1 pair arises.
pub fn adjacency_is_off_by_one(data: &BrillNoetherData) -> Result<bool> {
    let sigma = shape_from_bn_data(data)?;
    let seqs = enumerate_valid_sequences(data)?;
    let want: BTreeSet<(usize, usize)> = off_by_one_pairs(&seqs).into_iter().collect();
    let index: BTreeMap<&ValidSequence, usize> = seqs.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut got = BTreeSet::new();
    for p in enumerate_pretableaux_direct(&sigma)? {
        let Some(q) = p.with_negative(p.negative().1 + 1) else { continue };
        let (a, b) = (sequence_from_pretableau(&p, data)?, sequence_from_pretableau(&q, data)?);
        if a != b {
            let (x, y) = (index[&a], index[&b]);
            got.insert((x.min(y), x.max(y)));
        }
    }
    Ok(got == want)
}

/// Every valid sequence has total progress ρ.
pub fn total_progress(data: &BrillNoetherData) -> Result<bool> {
    Ok(enumerate_valid_sequences(data)?.iter().all(|s| s.total_progress() == data.rho()))
}

/// Closed form, dual graph and `1 + |E(BN)|`; contracting rational chains keeps the count.
pub fn genus_triple(data: &BrillNoetherData) -> Result<bool> {
    let closed = genus_closed_form(data)?;
    let model = chain_model(data)?;
    let from_graph = genus_from_graph(&model)?;
    let sigma = shape_from_bn_data(data)?;
    let formula = edge_count_formula(&sigma)? + 1;
    let (_, contracted) = contract_rational_chains(&model.dual_graph);
    Ok(closed == from_graph && from_graph == formula && BigInt::from(contracted.len() + 1) == formula)
}

/// `genus_classical` against the closed form, for unramified data.
pub fn classical_agrees(data: &BrillNoetherData) -> Result<bool> {
    Ok(genus_classical(data.g, data.r, data.d)? == genus_closed_form(data)?)
}

/// `count_rho0`, the number of valid sequences, and brute-force fillings.
pub fn rho0_law(data: &BrillNoetherData) -> Result<bool> {
    let c = count_rho0(data)?;
    let seqs = BigInt::from(enumerate_valid_sequences(data)?.len());
    let brute = count_brute(&shape_from_bn_data(data)?)?;
    Ok(c == seqs && seqs == brute)
}

/// Monotone walks with every elliptic aspect nonempty are exactly the valid sequences.
pub fn nonemptiness_coherence(data: &BrillNoetherData) -> Result<bool> {
    let top = data.d_minus_r();
    let target = data.target();
    let start: Vec<i64> = data.alpha.iter().map(|&a| a as i64).collect();
    if target.iter().any(|&t| t < 0) || start.iter().zip(&target).any(|(a, t)| a > t) {
        return Ok(enumerate_valid_sequences(data)?.is_empty());
    }
    let mut represented = BTreeSet::new();
    let mut walk = vec![start];
    walks(&mut walk, data.g, &target, &mut |w: &[Vec<i64>]| {
        let nonempty = w.windows(2).all(|p| {
            let beta: Vec<i64> = p[1].iter().map(|x| top - x).collect();
            RamificationProfile::new(p[0].clone(), beta).is_ok_and(|prof| is_nonempty_elliptic(&prof, data.d))
        });
        if nonempty {
            represented.insert(w.to_vec());
        }
    });
    let valid: BTreeSet<Vec<Vec<i64>>> =
        enumerate_valid_sequences(data)?.into_iter().map(|s| s.tuples().to_vec()).collect();
    Ok(represented == valid)
}

/// All walks of nondecreasing tuples, coordinatewise monotone, from the start to `target`.
fn walks(walk: &mut Vec<Vec<i64>>, g: usize, target: &[i64], visit: &mut dyn FnMut(&[Vec<i64>])) {
    if walk.len() == g {
        walk.push(target.to_vec());
        if walk[g - 1].iter().zip(target).all(|(a, t)| a <= t) {
            visit(walk);
        }
        walk.pop();
        return;
    }
    if g == 0 {
        if walk[0] == target {
            visit(walk);
        }
        return;
    }
    let prev = walk.last().expect("nonempty").clone();
    let mut cur = Vec::new();
    fn tuples(c: usize, prev: &[i64], target: &[i64], cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if c == prev.len() {
            out.push(cur.clone());
            return;
        }
        let lo = prev[c].max(cur.last().copied().unwrap_or(0));
        for v in lo..=target[c] {
            cur.push(v);
            tuples(c + 1, prev, target, cur, out);
            cur.pop();
        }
    }
    let mut next = Vec::new();
    tuples(0, &prev, target, &mut cur, &mut next);
    for t in next {
        walk.push(t);
        walks(walk, g, target, visit);
        walk.pop();
    }
}

/// One component per sequence, stalls elliptic, swaps rational, and the gluing
/// counts of rational components: 1 over `E_1` or `E_g`, 2 otherwise.
pub fn chain_classification(data: &BrillNoetherData) -> Result<bool> {
    let model = chain_model(data)?;
    let seqs = enumerate_valid_sequences(data)?;
    if model.components.len() != seqs.len() {
        return Ok(false);
    }
    if !model.dual_graph.same_labeled_graph(&build_augmented_graph_sequences(data)?) {
        return Ok(false);
    }
    for (i, c) in model.components.iter().enumerate() {
        if c.sequence != seqs[i] {
            return Ok(false);
        }
        let ok = match (&c.step.kind, c.kind) {
            (crate::pontableaux::StepKind::Stall, ComponentKind::Elliptic { curve }) => curve == c.step.position,
            (crate::pontableaux::StepKind::Swap { .. }, ComponentKind::Rational { over }) => {
                let want = if over == 1 || over == data.g { 1 } else { 2 };
                over == c.step.position && model.gluings(i) == want
            }
            _ => false,
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks that only need a shape.
pub fn shape_suite(sigma: &SkewShape) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let small = sigma.n() <= crate::enum_cap();
    let connected = is_connected(sigma);
    if small {
        out.push(CheckResult::from("counting_oracle", counting_oracle(sigma)));
    } else {
        out.push(CheckResult::skip("counting_oracle", "above the enumeration cap"));
    }
    out.push(CheckResult::from("strange_identity", Ok(check_strange_identity(sigma))));
    let per_connected: [(&'static str, fn(&SkewShape) -> Result<bool>); 4] = [
        ("master_formula", master_formula),
        ("turn_balance", turn_balance),
        ("corner_expectation", corner_expectation),
        ("bn_edge_count", bn_edge_count),
    ];
    for (name, f) in per_connected {
        if !connected {
            out.push(CheckResult::skip(name, "shape is disconnected"));
        } else if !small {
            out.push(CheckResult::skip(name, "above the enumeration cap"));
        } else if name == "corner_expectation" && (1..=sigma.k()).all(|i| matches!(augment_right(sigma, i), Ok(None))) {
            out.push(CheckResult::skip(name, "no row admits a box on the right"));
        } else {
            out.push(CheckResult::from(name, f(sigma)));
        }
    }
    if sigma.n() <= DIRECT_ENUM_CAP {
        out.push(CheckResult::from("augmented_structure_vs_direct", augmented_structure_vs_direct(sigma)));
    } else {
        out.push(CheckResult::skip("augmented_structure_vs_direct", "shape too large for direct enumeration"));
    }
    out
}

/// Shape checks on `σ(data)` followed by the checks that need the data.
pub fn data_suite(data: &BrillNoetherData) -> Result<Vec<CheckResult>> {
    let sigma = shape_from_bn_data(data)?;
    let mut out = shape_suite(&sigma);
    if data.g > crate::enum_cap() {
        out.push(CheckResult::skip("sequence_checks", "genus above the enumeration cap"));
        return Ok(out);
    }
    out.push(CheckResult::from("total_progress", total_progress(data)));
    if data.g <= 8 {
        out.push(CheckResult::from("nonemptiness_coherence", nonemptiness_coherence(data)));
    } else {
        out.push(CheckResult::skip("nonemptiness_coherence", "genus above 8"));
    }
    match data.rho() {
        0 => out.push(CheckResult::from("rho0_law", rho0_law(data))),
        1 => {
            out.push(CheckResult::from("augmented_routes_agree", augmented_routes_agree(data)));
            out.push(CheckResult::from("sequence_bijection", sequence_bijection(data)));
            if sigma.n() <= DIRECT_ENUM_CAP {
                out.push(CheckResult::from("adjacency_is_off_by_one", adjacency_is_off_by_one(data)));
            } else {
                out.push(CheckResult::skip("adjacency_is_off_by_one", "shape too large for direct enumeration"));
            }
            out.push(CheckResult::from("genus_triple", genus_triple(data)));
            out.push(CheckResult::from("chain_classification", chain_classification(data)));
            if data.alpha.iter().chain(&data.beta).all(|&x| x == 0) {
                out.push(CheckResult::from("classical_agrees", classical_agrees(data)));
            }
        }
        rho => out.push(CheckResult::skip("rho_specific", &format!("no checks for rho = {rho}"))),
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass_on_square_data() {
        let d = BrillNoetherData::unramified(5, 1, 4).unwrap();
        let res = data_suite(&d).unwrap();
        for c in &res {
            assert_ne!(c.status, Status::Fail, "{c:?}");
        }
        assert!(res.iter().any(|c| c.name == "classical_agrees" && c.status == Status::Pass));
    }

    #[test]
    fn disconnected_shape_skips() {
        let s = SkewShape::from_rows(vec![(3, 3), (0, 0)]).unwrap();
        let res = shape_suite(&s);
        assert!(res.iter().any(|c| c.name == "master_formula" && c.status == Status::Skip));
        assert!(res.iter().all(|c| c.status != Status::Fail), "{res:?}");
    }

    #[test]
    fn coherence_on_small_data() {
        for d in [
            BrillNoetherData::unramified(4, 1, 3).unwrap(),
            BrillNoetherData::new(5, 1, 5, vec![0, 1], vec![1, 0]).unwrap(),
            BrillNoetherData::new(3, 0, 1, vec![0], vec![0]).unwrap(),
        ] {
            assert!(nonemptiness_coherence(&d).unwrap(), "{d}");
        }
    }
}
