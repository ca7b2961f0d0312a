//! Formula versions of the native predicates, and conformance checks that
//! compare the two on random environments.
//!
//! Matrix entries are 1-based inside formulas. Graph vertices, poset
//! elements and set labels are numbered from 1 in the environment.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::ast::{Expr, Sort};
use super::env::{Environment, IntMatrix};
use super::eval::Evaluator;
use super::parse;
use crate::gen::{random_matrix, random_poset, random_rect_matrix, random_terminal_graph};
use crate::matrix::{is_cover, is_selection, BoolMatrix, Cover, Selection};
use crate::menger::{decode_path_matrix, encode_path_matrix, internally_disjoint, TerminalGraph};
use crate::oracle::{enumerate_paths, oracle_hall, OracleBudget};
use crate::order::{union_property, Poset, SetSystem};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CatalogEntry {
    pub name: &'static str,
    /// Free variables with their sorts.
    pub params: Vec<(&'static str, Sort)>,
    pub source: String,
    #[serde(skip)]
    pub formula: Expr,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Disagreement {
    pub trial: usize,
    pub env: Environment,
    pub native: bool,
    /// `None` when evaluation failed.
    pub formula: Option<bool>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConformanceOutcome {
    pub name: String,
    pub trials: usize,
    pub agreements: usize,
    /// Trials on which the native predicate held.
    pub native_true: usize,
    pub first_disagreement: Option<Disagreement>,
}

impl ConformanceOutcome {
    pub fn passed(&self) -> bool {
        self.agreements == self.trials
    }
}

/// Every predicate has at most this many vertices, elements or lines when
/// its formula quantifies over matrices.
pub const MATRIX_QUANTIFIER_MAX_N: usize = 3;

/// Position of the `q`-th non-terminal vertex, skipping `x` and `y`.
fn vertex(q: &str) -> String {
    let lo = "cond(x <= y, x, y)";
    let hi = "cond(x <= y, y, x)";
    format!("cond({q} + 1 <= {lo}, {q}, cond({q} + 2 <= {hi}, {q} + 1, {q} + 2))")
}

fn path_text(al: &str) -> String {
    let m = "r(A) - 2";
    let (vp, vq, vi) = (vertex("p"), vertex("q"), vertex("i"));
    [
        format!("forall l <= {m}. (1 <= l -> Sigma(lambda i j <1, {m}, e({al}, l, j)>) = 1)"),
        format!(
            "forall l <= {m}. forall l' <= {m}. forall p <= {m}. \
             ((1 <= l & l < l' & e({al}, l, p) = 1 & e({al}, l', p) = 1) -> e({al}, l + 1, p) = 1)"
        ),
        format!(
            "forall l <= {m}. forall p <= {m}. \
             ((1 <= l & l + 2 <= {m} & e({al}, l, p) = 1 & e({al}, l + 1, p) = 1) -> e({al}, l + 2, p) = 1)"
        ),
        format!(
            "forall l <= {m}. forall p <= {m}. forall q <= {m}. \
             ((1 <= l & l + 1 <= {m} & p != q & e({al}, l, p) = 1 & e({al}, l + 1, q) = 1) -> e(A, {vp}, {vq}) = 1)"
        ),
        format!(
            "forall i <= {m}. ((e({al}, 1, i) = 1 -> e(A, x, {vi}) = 1) & (e({al}, {m}, i) = 1 -> e(A, {vi}, y) = 1))"
        ),
        "e(A, x, y) = 0".to_string(),
    ]
    .map(|s| format!("({s})"))
    .join(" & ")
}

/// `P` is a permutation matrix of the given side.
fn perm_text(p: &str, n: &str) -> String {
    format!(
        "r({p}) = {n} & c({p}) = {n} & forall s <= {n}. (1 <= s -> \
         (Sigma(lambda u v <1, {n}, e({p}, s, v)>) = 1 & Sigma(lambda u v <{n}, 1, e({p}, u, s)>) = 1))"
    )
}

fn order_text(al: &str, related: &str) -> String {
    format!(
        "forall i <= r(A). forall j <= r(A). \
         ((1 <= i & 1 <= j & i != j & e({al}, 1, i) = 1 & e({al}, 1, j) = 1) -> {related})"
    )
}

fn sources() -> Vec<(&'static str, Vec<(&'static str, Sort)>, String)> {
    use Sort::{Index, Matrix};
    vec![
        (
            "Cover",
            vec![("A", Matrix), ("Alpha", Matrix)],
            "forall i <= r(A). forall j <= r(A). (e(A, i, j) = 1 -> e(Alpha, 1, i) = 1 | e(Alpha, 2, j) = 1)".into(),
        ),
        (
            "Select",
            vec![("A", Matrix), ("Beta", Matrix)],
            "forall i <= r(A). forall j <= r(A). ((e(Beta, i, j) = 1 -> e(A, i, j) = 1) & \
             forall k <= r(A). (e(Beta, i, j) = 1 -> ((k != j -> e(Beta, i, k) = 0) & (k != i -> e(Beta, k, j) = 0))))"
                .into(),
        ),
        ("Path", vec![("A", Matrix), ("x", Index), ("y", Index), ("Alpha", Matrix)], path_text("Alpha")),
        (
            "Disjoint",
            vec![("A", Matrix), ("x", Index), ("y", Index), ("Alpha", Matrix), ("Alpha'", Matrix)],
            format!(
                "({}) & ({}) & forall i <= r(A) - 2. forall j <= r(A) - 2. forall k <= r(A) - 2. \
                 e(Alpha, i, k) * e(Alpha', j, k) = 0",
                path_text("Alpha"),
                path_text("Alpha'")
            ),
        ),
        ("Perm", vec![("P", Matrix)], perm_text("P", "r(P)")),
        (
            "SDR",
            vec![("A", Matrix)],
            format!(
                "exists P <= r(A). ({} & forall i <= r(A). (1 <= i -> \
                 Sigma(lambda u v <1, r(A), e(A, i, v) * e(P, v, i)>) = 1))",
                perm_text("P", "r(A)")
            ),
        ),
        (
            "UnionProp",
            vec![("A", Matrix)],
            format!(
                "forall P <= r(A). forall k <= r(A). (({}) -> exists Q <= r(A). ({} & \
                 forall i <= k. (1 <= i -> !(lambda p q <k, 1, \
                 Sigma(lambda s t <r(A), r(A), e(P, p, s) * e(A, s, t) * e(Q, t, i)>)> \
                 = lambda p q <k, 1, 0_ring>))))",
                perm_text("P", "r(A)"),
                perm_text("Q", "r(A)")
            ),
        ),
        ("Chain", vec![("A", Matrix), ("Alpha", Matrix)], order_text("Alpha", "(e(A, i, j) = 1 | e(A, j, i) = 1)")),
        (
            "AntiChain",
            vec![("A", Matrix), ("Gamma", Matrix)],
            order_text("Gamma", "(e(A, i, j) = 0 & e(A, j, i) = 0)"),
        ),
    ]
}

pub fn predicate_catalog() -> Vec<CatalogEntry> {
    sources()
        .into_iter()
        .map(|(name, params, source)| {
            let formula = parse(&source).unwrap_or_else(|e| panic!("catalog entry {name} does not parse: {e}"));
            CatalogEntry { name, params, source, formula }
        })
        .collect()
}

pub fn catalog_entry(name: &str) -> Option<CatalogEntry> {
    predicate_catalog().into_iter().find(|e| e.name == name)
}

/// A random environment and the native predicate's verdict on it.
type Sampler = fn(&mut ChaCha8Rng) -> Result<(Environment, bool)>;

fn ints(m: &BoolMatrix) -> IntMatrix {
    IntMatrix::from(m)
}

fn random_permutation(rng: &mut ChaCha8Rng, n: usize) -> BoolMatrix {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    BoolMatrix::from_fn(n, n, |i, j| perm[i] == j)
}

/// A matrix with one 1 per row, or with one entry of `base` flipped.
fn perturbed(rng: &mut ChaCha8Rng, base: &BoolMatrix) -> BoolMatrix {
    let mut m = base.clone();
    if m.rows() > 0 && m.cols() > 0 {
        let (i, j) = (rng.gen_range(0..m.rows()), rng.gen_range(0..m.cols()));
        m.set(i, j, !m.get(i, j));
    }
    m
}

fn graph_env(g: &TerminalGraph) -> Environment {
    Environment::new()
        .with_bool_matrix("A", g.adjacency())
        .with_index("x", g.x() as u64 + 1)
        .with_index("y", g.y() as u64 + 1)
}

/// A path matrix candidate: the encoding of a real path, a perturbed
/// encoding, or a random one-per-row matrix.
fn path_candidate(rng: &mut ChaCha8Rng, g: &TerminalGraph, paths: &[Vec<usize>]) -> Result<BoolMatrix> {
    let k = g.n() - 2;
    let real: Vec<&Vec<usize>> = paths.iter().filter(|p| p.len() > 2).collect();
    let roll = rng.gen_range(0..4);
    if roll < 2 && !real.is_empty() {
        let m = encode_path_matrix(g, real.choose(rng).expect("nonempty"))?;
        return Ok(if roll == 0 { m } else { perturbed(rng, &m) });
    }
    let picks: Vec<usize> = (0..k).map(|_| rng.gen_range(0..k)).collect();
    Ok(BoolMatrix::from_fn(k, k, |l, c| picks[l] == c))
}

/// Adds the edge `xy`, which no path predicate accepts.
fn join_terminals(env: &mut Environment, g: &TerminalGraph) {
    let mut a = ints(g.adjacency()).to_rows();
    a[g.x()][g.y()] = 1;
    a[g.y()][g.x()] = 1;
    env.matrix.insert("A".into(), IntMatrix::from_rows(&a).expect("rectangular"));
}

/// Terminal graphs never join `x` and `y`, so decoding is the whole check.
fn native_path(g: &TerminalGraph, m: &BoolMatrix) -> Option<Vec<usize>> {
    decode_path_matrix(g, m).ok()
}

fn sampler(name: &str) -> Option<Sampler> {
    let s: Sampler = match name {
        "Cover" => |rng| {
            let n = rng.gen_range(0..=3);
            let a = random_matrix(rng, n, 0.5)?;
            let alpha = random_rect_matrix(rng, 2, n, 0.5)?;
            let native = is_cover(&a, &Cover::from_alpha(&alpha)?)?;
            Ok((Environment::new().with_bool_matrix("A", &a).with_matrix("Alpha", ints(&alpha)), native))
        },
        "Select" => |rng| {
            let n = rng.gen_range(0..=3);
            let a = random_matrix(rng, n, 0.6)?;
            let beta = if rng.gen_bool(0.5) {
                let p = random_permutation(rng, n);
                BoolMatrix::from_fn(n, n, |i, j| p.get(i, j) && rng.gen_bool(0.7))
            } else {
                random_matrix(rng, n, 0.3)?
            };
            let native = match Selection::from_matrix(&beta) {
                Ok(sel) => is_selection(&a, &sel)?,
                Err(_) => false,
            };
            Ok((Environment::new().with_bool_matrix("A", &a).with_matrix("Beta", ints(&beta)), native))
        },
        "Path" => |rng| {
            let n = rng.gen_range(3..=5);
            let g = random_terminal_graph(rng, n, 0.5)?;
            let paths = enumerate_paths(&g, &OracleBudget::default())?;
            let alpha = path_candidate(rng, &g, &paths)?;
            let native = native_path(&g, &alpha).is_some();
            let mut env = graph_env(&g).with_matrix("Alpha", ints(&alpha));
            if rng.gen_bool(0.15) {
                join_terminals(&mut env, &g);
                return Ok((env, false));
            }
            Ok((env, native))
        },
        "Disjoint" => |rng| {
            let n = rng.gen_range(4..=6);
            let g = random_terminal_graph(rng, n, 0.6)?;
            let paths = enumerate_paths(&g, &OracleBudget::default())?;
            let mut pairs: Vec<(&Vec<usize>, &Vec<usize>)> = paths
                .iter()
                .flat_map(|p| paths.iter().map(move |q| (p, q)))
                .filter(|(p, q)| p.len() > 2 && q.len() > 2 && internally_disjoint(p, q))
                .collect();
            pairs.shuffle(rng);
            let (a1, a2) = match pairs.first() {
                Some((p, q)) if rng.gen_bool(0.5) => (encode_path_matrix(&g, p)?, encode_path_matrix(&g, q)?),
                _ => (path_candidate(rng, &g, &paths)?, path_candidate(rng, &g, &paths)?),
            };
            let native = match (native_path(&g, &a1), native_path(&g, &a2)) {
                (Some(p), Some(q)) => internally_disjoint(&p, &q),
                _ => false,
            };
            Ok((graph_env(&g).with_matrix("Alpha", ints(&a1)).with_matrix("Alpha'", ints(&a2)), native))
        },
        "Perm" => |rng| {
            let n = rng.gen_range(0..=3);
            let p = if rng.gen_bool(0.5) {
                let p = random_permutation(rng, n);
                if rng.gen_bool(0.3) { perturbed(rng, &p) } else { p }
            } else {
                let cols = rng.gen_range(0..=3);
                random_rect_matrix(rng, n, cols, 0.4)?
            };
            let native = p.is_square() && (0..p.rows()).all(|i| p.row(i).iter().filter(|&&b| b).count() == 1)
                && (0..p.cols()).all(|j| (0..p.rows()).filter(|&i| p.get(i, j)).count() == 1);
            Ok((Environment::new().with_matrix("P", ints(&p)), native))
        },
        "SDR" => |rng| {
            let n = rng.gen_range(0..=MATRIX_QUANTIFIER_MAX_N);
            let a = random_matrix(rng, n, 0.45)?;
            let native = oracle_hall(&SetSystem::new(a.clone())?, &OracleBudget::default())?.sdr.is_some();
            Ok((Environment::new().with_bool_matrix("A", &a), native))
        },
        "UnionProp" => |rng| {
            let n = rng.gen_range(0..=2);
            let a = random_matrix(rng, n, 0.5)?;
            let native = union_property(&SetSystem::new(a.clone())?, &OracleBudget::default())?;
            Ok((Environment::new().with_bool_matrix("A", &a), native))
        },
        "Chain" | "AntiChain" => return Some(if name == "Chain" { chain_sample::<true> } else { chain_sample::<false> }),
        _ => return None,
    };
    Some(s)
}

fn chain_sample<const CHAIN: bool>(rng: &mut ChaCha8Rng) -> Result<(Environment, bool)> {
    let n = rng.gen_range(0..=5);
    let p: Poset = random_poset(rng, n, 0.4)?;
    let alpha = random_rect_matrix(rng, 1, n, 0.5)?;
    let elements: Vec<usize> = (0..n).filter(|&j| alpha.get(0, j)).collect();
    let (var, native) = if CHAIN {
        ("Alpha", p.is_chain(&elements))
    } else {
        ("Gamma", p.is_antichain(&elements))
    };
    Ok((Environment::new().with_bool_matrix("A", p.lt()).with_matrix(var, ints(&alpha)), native))
}

/// Evaluates the named catalog formula and its native predicate on
/// `trials` sampled environments.
pub fn check_conformance(name: &str, trials: usize, seed: u64) -> Result<ConformanceOutcome> {
    let entry = catalog_entry(name).ok_or_else(|| Error::Precondition(format!("no catalog entry named {name}")))?;
    let sample = sampler(name).expect("every catalog entry has a sampler");
    let results: Vec<(bool, Option<Disagreement>)> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(t as u64);
            let (env, native) = sample(&mut rng)?;
            let verdict = Evaluator::default().eval_formula(&entry.formula, &env);
            let disagreement = match verdict {
                Ok(v) if v == native => None,
                Ok(v) => Some(Disagreement { trial: t, env, native, formula: Some(v), error: None }),
                Err(e) => Some(Disagreement { trial: t, env, native, formula: None, error: Some(e.to_string()) }),
            };
            Ok((native, disagreement))
        })
        .collect::<Result<_>>()?;
    Ok(ConformanceOutcome {
        name: name.to_string(),
        trials,
        agreements: results.iter().filter(|(_, d)| d.is_none()).count(),
        native_true: results.iter().filter(|(n, _)| *n).count(),
        first_disagreement: results.into_iter().find_map(|(_, d)| d),
    })
}
