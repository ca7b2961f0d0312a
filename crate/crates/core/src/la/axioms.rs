//! Randomised validity checks for the axioms A1-A33 and the two rules.
//!
//! Each instance substitutes random well-sorted terms for the schema's free
//! variables and is evaluated in a random environment. A false instance is
//! an evaluator bug. Trial `t` of axiom number `k` draws from a ChaCha
//! stream fixed by `(seed, k, t)`, so reports do not depend on scheduling.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::env::{Environment, IntMatrix};
use super::eval::{sigma_by_axioms, sigma_direct, Evaluator};
use super::parse;

const INDEX_POOL: [&str; 3] = ["i1", "i2", "i3"];
const RING_POOL: [&str; 3] = ["a1", "a2", "a3"];
const MATRIX_POOL: [&str; 2] = ["A1", "A2"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub trial: usize,
    pub formula: String,
    pub env: Environment,
    /// Set when evaluation failed instead of returning false.
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomOutcome {
    pub name: String,
    pub instances: usize,
    pub violations: usize,
    /// For the rules: how many instances had every premise true.
    pub premises_held: Option<usize>,
    /// The violated instance with the smallest trial number.
    pub counterexample: Option<Counterexample>,
}

impl AxiomOutcome {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub seed: u64,
    pub trials: usize,
    pub outcomes: Vec<AxiomOutcome>,
}

impl AxiomReport {
    pub fn all_valid(&self) -> bool {
        self.outcomes.iter().all(AxiomOutcome::passed)
    }

    pub fn violations(&self) -> usize {
        self.outcomes.iter().map(|o| o.violations).sum()
    }
}

/// Random term text over the variable pools.
struct Gen<'r> {
    rng: &'r mut ChaCha8Rng,
    /// Extra index names usable as leaves, such as lambda binders in scope.
    extra: Vec<&'static str>,
}

fn paren(s: String) -> String {
    format!("({s})")
}

impl Gen<'_> {
    fn leaf_index(&mut self) -> String {
        let names: Vec<&str> = INDEX_POOL.iter().chain(self.extra.iter()).copied().collect();
        if self.rng.gen_bool(0.7) {
            names.choose(self.rng).expect("pool is nonempty").to_string()
        } else {
            self.rng.gen_range(0..=3u32).to_string()
        }
    }

    fn index(&mut self, depth: u32) -> String {
        if depth == 0 || self.rng.gen_bool(0.35) {
            return self.leaf_index();
        }
        let d = depth - 1;
        match self.rng.gen_range(0..8) {
            0 => format!("{} + {}", paren(self.index(d)), paren(self.index(d))),
            1 => format!("{} * {}", paren(self.leaf_index()), paren(self.index(d))),
            2 => format!("{} - {}", paren(self.index(d)), paren(self.index(d))),
            3 => format!("div({}, {})", self.index(d), self.index(d)),
            4 => format!("rem({}, {})", self.index(d), self.index(d)),
            5 => format!("r({})", self.matrix(d)),
            6 => format!("c({})", self.matrix(d)),
            _ => format!("cond({}, {}, {})", self.guard(d), self.index(d), self.index(d)),
        }
    }

    fn leaf_ring(&mut self) -> String {
        match self.rng.gen_range(0..6) {
            0 => "0_ring".into(),
            1 => "1_ring".into(),
            2 => "-1_ring".into(),
            _ => RING_POOL.choose(self.rng).expect("pool is nonempty").to_string(),
        }
    }

    fn ring(&mut self, depth: u32) -> String {
        if depth == 0 || self.rng.gen_bool(0.35) {
            return self.leaf_ring();
        }
        let d = depth - 1;
        match self.rng.gen_range(0..9) {
            0 => format!("{} +_ring {}", paren(self.ring(d)), paren(self.ring(d))),
            1 => format!("{} *_ring {}", paren(self.ring(d)), paren(self.ring(d))),
            2 => format!("{} -_ring {}", paren(self.ring(d)), paren(self.ring(d))),
            3 => format!("-{}", paren(self.ring(d))),
            4 => format!("inv({})", self.ring(d)),
            5 => format!("e({}, {}, {})", self.matrix(d), self.index(d), self.index(d)),
            6 => format!("Sigma({})", self.matrix(d)),
            7 => format!("cond_ring({}, {}, {})", self.guard(d), self.ring(d), self.ring(d)),
            _ => self.leaf_ring(),
        }
    }

    /// Lambda bounds never mention names in `extra`, so that they stay
    /// legal under an enclosing lambda.
    fn dim(&mut self, depth: u32) -> String {
        let saved = std::mem::take(&mut self.extra);
        let d = format!("rem({}, 4)", self.index(depth));
        self.extra = saved;
        d
    }

    fn lambda(&mut self, rows: String, cols: String, depth: u32) -> String {
        let saved = std::mem::replace(&mut self.extra, vec!["i", "j"]);
        let body = self.ring(depth);
        self.extra = saved;
        format!("lambda i j <{rows}, {cols}, {body}>")
    }

    fn matrix(&mut self, depth: u32) -> String {
        if depth == 0 || self.rng.gen_bool(0.5) {
            return MATRIX_POOL.choose(self.rng).expect("pool is nonempty").to_string();
        }
        let (rows, cols) = (self.dim(depth - 1), self.dim(depth - 1));
        self.lambda(rows, cols, depth - 1)
    }

    /// A quantifier-free formula whose atoms compare indices.
    fn guard(&mut self, depth: u32) -> String {
        if depth == 0 || self.rng.gen_bool(0.5) {
            let (a, b) = (paren(self.index(depth.min(1))), paren(self.index(depth.min(1))));
            return if self.rng.gen_bool(0.5) { format!("{a} <= {b}") } else { format!("{a} = {b}") };
        }
        let d = depth - 1;
        match self.rng.gen_range(0..3) {
            0 => format!("!{}", paren(self.guard(d))),
            1 => format!("{} & {}", paren(self.guard(d)), paren(self.guard(d))),
            _ => format!("{} | {}", paren(self.guard(d)), paren(self.guard(d))),
        }
    }

    fn term(&mut self, sort: TermSort, depth: u32) -> String {
        match sort {
            TermSort::Index => self.index(depth),
            TermSort::Ring => self.ring(depth),
            TermSort::Matrix => self.matrix(depth),
        }
    }

    /// Two terms that are equal in value two times out of three.
    fn pair(&mut self, sort: TermSort, depth: u32) -> (String, String) {
        let x = self.term(sort, depth);
        let y = match self.rng.gen_range(0..3) {
            0 => x.clone(),
            1 => match sort {
                TermSort::Index => format!("{} + 0", paren(x.clone())),
                TermSort::Ring => format!("1_ring * {}", paren(x.clone())),
                TermSort::Matrix => format!("lambda i j <r({x}), c({x}), e({x}, i, j)>"),
            },
            _ => self.term(sort, depth),
        };
        (x, y)
    }

    fn sort(&mut self) -> TermSort {
        *[TermSort::Index, TermSort::Ring, TermSort::Matrix].choose(self.rng).expect("nonempty")
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum TermSort {
    Index,
    Ring,
    Matrix,
}

fn random_env(rng: &mut ChaCha8Rng) -> Environment {
    let mut env = Environment::new();
    for name in INDEX_POOL {
        env.index.insert(name.into(), rng.gen_range(0..=6));
    }
    // Free in A28 instances.
    for name in ["i", "j"] {
        env.index.insert(name.into(), rng.gen_range(0..=4));
    }
    for name in RING_POOL {
        env.ring.insert(name.into(), rng.gen_range(-4..=4));
    }
    for name in MATRIX_POOL {
        let (r, c) = (rng.gen_range(0..=3), rng.gen_range(0..=3));
        env.matrix.insert(name.into(), IntMatrix::from_fn(r, c, |_, _| rng.gen_range(-3..=3)));
    }
    env
}

/// One instance: the formula to check, or a rule given as premise and
/// conclusion.
enum Instance {
    Axiom(String),
    Rule { premise: String, conclusion: String },
}

type Builder = fn(&mut Gen) -> Instance;

const DEPTH: u32 = 2;

fn ax(s: String) -> Instance {
    Instance::Axiom(s)
}

fn schemas() -> Vec<(&'static str, Builder)> {
    vec![
        ("A1", |g| {
            let s = g.sort();
            let x = paren(g.term(s, DEPTH));
            ax(format!("{x} = {x}"))
        }),
        ("A2", |g| {
            let s = g.sort();
            let (x, y) = g.pair(s, DEPTH);
            let (x, y) = (paren(x), paren(y));
            ax(format!("{x} = {y} -> {y} = {x}"))
        }),
        ("A3", |g| {
            let s = g.sort();
            let (x, y) = g.pair(s, DEPTH);
            let z = if g.rng.gen_bool(0.5) { y.clone() } else { g.term(s, DEPTH) };
            let (x, y, z) = (paren(x), paren(y), paren(z));
            ax(format!("({x} = {y} & {y} = {z}) -> {x} = {z}"))
        }),
        ("A4", |g| {
            use TermSort::*;
            let shapes: [(&str, &[TermSort]); 14] = [
                ("{0} +_index {1}", &[Index, Index]),
                ("{0} *_index {1}", &[Index, Index]),
                ("{0} -_index {1}", &[Index, Index]),
                ("div({0}, {1})", &[Index, Index]),
                ("rem({0}, {1})", &[Index, Index]),
                ("{0} +_ring {1}", &[Ring, Ring]),
                ("{0} *_ring {1}", &[Ring, Ring]),
                ("{0} -_ring {1}", &[Ring, Ring]),
                ("-{0}", &[Ring]),
                ("inv({0})", &[Ring]),
                ("r({0})", &[Matrix]),
                ("c({0})", &[Matrix]),
                ("e({0}, {1}, {2})", &[Matrix, Index, Index]),
                ("Sigma({0})", &[Matrix]),
            ];
            let guard = g.guard(1);
            let (template, sorts) = if g.rng.gen_bool(0.1) {
                let s: &[TermSort] = if g.rng.gen_bool(0.5) { &[Index, Index] } else { &[Ring, Ring] };
                ("cond(GUARD, {0}, {1})", s)
            } else {
                *shapes.choose(g.rng).expect("nonempty")
            };
            let pairs: Vec<(String, String)> = sorts.iter().map(|&s| g.pair(s, 1)).collect();
            let apply = |pick: fn(&(String, String)) -> &String| {
                let mut out = template.replace("GUARD", &guard);
                for (k, p) in pairs.iter().enumerate() {
                    out = out.replace(&format!("{{{k}}}"), &paren(pick(p).clone()));
                }
                out
            };
            let premises: Vec<String> =
                pairs.iter().map(|(x, y)| format!("{} = {}", paren(x.clone()), paren(y.clone()))).collect();
            ax(format!(
                "({}) -> ({}) = ({})",
                premises.join(" & "),
                apply(|p| &p.0),
                apply(|p| &p.1)
            ))
        }),
        ("A5", |g| {
            let (i1, j1) = g.pair(TermSort::Index, DEPTH);
            let (i2, j2) = g.pair(TermSort::Index, DEPTH);
            let [i1, j1, i2, j2] = [i1, j1, i2, j2].map(paren);
            ax(format!("({i1} = {j1} & {i2} = {j2} & {i1} <= {i2}) -> {j1} <= {j2}"))
        }),
        ("A6", |g| ax(format!("!({} + 1 = 0)", paren(g.index(DEPTH))))),
        ("A7", |g| {
            let (i, j) = (paren(g.index(DEPTH)), paren(g.index(DEPTH)));
            ax(format!("{i} * ({j} + 1) = ({i} * {j}) + {i}"))
        }),
        ("A8", |g| {
            let (i, j) = g.pair(TermSort::Index, DEPTH);
            let (i, j) = (paren(i), paren(j));
            ax(format!("{i} + 1 = {j} + 1 -> {i} = {j}"))
        }),
        ("A9", |g| {
            let (i, j) = (paren(g.index(DEPTH)), paren(g.index(DEPTH)));
            ax(format!("{i} <= {i} + {j}"))
        }),
        ("A10", |g| {
            let i = paren(g.index(DEPTH));
            ax(format!("{i} + 0 = {i}"))
        }),
        ("A11", |g| {
            let (i, j) = (paren(g.index(DEPTH)), paren(g.index(DEPTH)));
            ax(format!("{i} <= {j} | {j} <= {i}"))
        }),
        ("A12", |g| {
            let (i, j) = (paren(g.index(DEPTH)), paren(g.index(DEPTH)));
            ax(format!("{i} + ({j} + 1) = ({i} + {j}) + 1"))
        }),
        ("A13", |g| {
            let (i, j) = g.pair(TermSort::Index, DEPTH);
            let (i, j) = (paren(i), paren(j));
            ax(format!("({i} <= {j} & {j} <= {i}) -> {i} = {j}"))
        }),
        ("A14", |g| ax(format!("{} * 0 = 0", paren(g.index(DEPTH))))),
        ("A15", |g| {
            let (i, k) = (paren(g.index(DEPTH)), paren(g.index(DEPTH)));
            let j = if g.rng.gen_bool(0.5) { format!("({i} + {k})") } else { paren(g.index(DEPTH)) };
            ax(format!("({i} <= {j} & {i} + {k} = {j}) -> {j} - {i} = {k}"))
        }),
        ("A16", |g| {
            let (i, j) = (paren(g.index(DEPTH)), paren(g.index(DEPTH)));
            ax(format!("!({i} <= {j}) -> {j} - {i} = 0"))
        }),
        ("A17", |g| {
            let a = g.guard(DEPTH);
            let (i, j) = (paren(g.index(DEPTH)), paren(g.index(DEPTH)));
            ax(format!(
                "(({a}) -> cond_index({a}, {i}, {j}) = {i}) & (!({a}) -> cond_index({a}, {i}, {j}) = {j})"
            ))
        }),
        ("A18", |g| {
            let a = paren(g.ring(DEPTH));
            ax(format!("!(0_ring = 1_ring) & {a} + 0_ring = {a}"))
        }),
        ("A19", |g| {
            let a = paren(g.ring(DEPTH));
            ax(format!("{a} + (-{a}) = 0_ring"))
        }),
        ("A20", |g| {
            let a = paren(g.ring(DEPTH));
            ax(format!("1_ring * {a} = {a}"))
        }),
        ("A21", |g| {
            let (a, b) = (paren(g.ring(DEPTH)), paren(g.ring(DEPTH)));
            ax(format!("{a} +_ring {b} = {b} +_ring {a}"))
        }),
        ("A22", |g| {
            let (a, b) = (paren(g.ring(DEPTH)), paren(g.ring(DEPTH)));
            ax(format!("{a} *_ring {b} = {b} *_ring {a}"))
        }),
        ("A23", |g| {
            let (a, b, c) = (paren(g.ring(DEPTH)), paren(g.ring(DEPTH)), paren(g.ring(DEPTH)));
            ax(format!("{a} +_ring ({b} +_ring {c}) = ({a} +_ring {b}) +_ring {c}"))
        }),
        ("A24", |g| {
            let (a, b, c) = (paren(g.ring(1)), paren(g.ring(1)), paren(g.ring(1)));
            ax(format!("{a} *_ring ({b} *_ring {c}) = ({a} *_ring {b}) *_ring {c}"))
        }),
        ("A25", |g| {
            let (a, b, c) = (paren(g.ring(DEPTH)), paren(g.ring(DEPTH)), paren(g.ring(DEPTH)));
            ax(format!("{a} *_ring ({b} +_ring {c}) = ({a} *_ring {b}) +_ring ({a} *_ring {c})"))
        }),
        ("A26", |g| {
            let al = g.guard(DEPTH);
            let (a, b) = (paren(g.ring(DEPTH)), paren(g.ring(DEPTH)));
            ax(format!(
                "(({al}) -> cond_ring({al}, {a}, {b}) = {a}) & (!({al}) -> cond_ring({al}, {a}, {b}) = {b})"
            ))
        }),
        ("A27", |g| {
            let m = g.matrix(DEPTH);
            let near = |g: &mut Gen, size: &str| match g.rng.gen_range(0..6) {
                0 => "0".to_string(),
                1 => format!("{size}({m})"),
                2 => format!("{size}({m}) + 1"),
                3 => format!("{size}({m}) - 1"),
                4 => format!("{size}({m}) + {}", paren(g.index(1))),
                _ => g.index(DEPTH),
            };
            let (i, j) = (paren(near(g, "r")), paren(near(g, "c")));
            ax(format!(
                "({i} = 0 | r({m}) < {i} | {j} = 0 | c({m}) < {j}) -> e({m}, {i}, {j}) = 0_ring"
            ))
        }),
        ("A28", |g| {
            let (m, n) = (g.dim(DEPTH), g.dim(DEPTH));
            let saved = std::mem::replace(&mut g.extra, vec!["i", "j"]);
            let t = g.ring(DEPTH);
            g.extra = saved;
            let l = format!("lambda i j <{m}, {n}, {t}>");
            ax(format!(
                "r({l}) = {m} & c({l}) = {n} & ((1 <= i & i <= {m} & 1 <= j & j <= {n}) -> e({l}, i, j) = ({t}))"
            ))
        }),
        ("A29", |g| {
            let a = shaped(g, "1", "1");
            ax(format!("(r({a}) = 1 & c({a}) = 1) -> Sigma({a}) = e({a}, 1, 1)"))
        }),
        ("A30", |g| {
            let n = format!("{} + 2", paren(g.dim(1)));
            let a = shaped(g, "1", &n);
            ax(format!(
                "(r({a}) = 1 & 1 < c({a})) -> Sigma({a}) = Sigma(lambda i j <1, c({a}) - 1, e({a}, i, j)>) + e({a}, 1, c({a}))"
            ))
        }),
        ("A31", |g| {
            let m = g.dim(DEPTH);
            let a = shaped(g, &m, "1");
            ax(format!("c({a}) = 1 -> Sigma({a}) = Sigma(lambda i j <c({a}), r({a}), e({a}, j, i)>)"))
        }),
        ("A32", |g| {
            let (m, n) = (format!("{} + 2", paren(g.dim(1))), format!("{} + 2", paren(g.dim(1))));
            let a = shaped(g, &m, &n);
            ax(format!(
                "(1 < r({a}) & 1 < c({a})) -> Sigma({a}) = e({a}, 1, 1) \
                 + Sigma(lambda i j <1, c({a}) - 1, e({a}, 1, j + 1)>) \
                 + Sigma(lambda i j <r({a}) - 1, 1, e({a}, i + 1, 1)>) \
                 + Sigma(lambda i j <r({a}) - 1, c({a}) - 1, e({a}, i + 1, j + 1)>)"
            ))
        }),
        ("A33", |g| {
            let n = g.dim(1);
            let a = if g.rng.gen_bool(0.5) { shaped(g, "0", &n) } else { shaped(g, &n, "0") };
            ax(format!("(r({a}) = 0 | c({a}) = 0) -> Sigma({a}) = 0_ring"))
        }),
        ("matrix equality rule", |g| {
            let (t, u) = g.pair(TermSort::Matrix, DEPTH);
            Instance::Rule {
                premise: format!(
                    "(forall i <= r({t}) + c({t}). forall j <= r({t}) + c({t}). e({t}, i, j) = e({u}, i, j)) \
                     & r({t}) = r({u}) & c({t}) = c({u})"
                ),
                conclusion: format!("{t} = {u}"),
            }
        }),
        ("induction rule", |g| {
            let alpha = induction_formula(g);
            let at = |v: &str| alpha.replace('@', &paren(v.to_string()));
            let n = g.index(1);
            Instance::Rule {
                premise: format!("forall i <= {n}. (i + 1 <= {n} -> (({}) -> ({})))", at("i"), at("i + 1")),
                conclusion: format!("({}) -> ({})", at("0"), at(&n)),
            }
        }),
    ]
}

/// Half of the time a lambda term of the given shape, otherwise any matrix
/// term, so that both sides of each implication get exercised.
fn shaped(g: &mut Gen, rows: &str, cols: &str) -> String {
    if g.rng.gen_bool(0.5) {
        g.lambda(rows.to_string(), cols.to_string(), 1)
    } else {
        g.matrix(DEPTH)
    }
}

/// A matrix-quantifier-free formula with `@` marking the induction variable.
fn induction_formula(g: &mut Gen) -> String {
    let saved = std::mem::replace(&mut g.extra, vec!["@"]);
    let atom = |g: &mut Gen| match g.rng.gen_range(0..4) {
        0 => format!("{} <= {}", paren(g.index(1)), paren(g.index(1))),
        1 => format!("{} = {}", paren(g.index(1)), paren(g.index(1))),
        2 => format!("e({}, {}, {}) = {}", g.matrix(0), g.index(1), g.index(1), paren(g.ring(1))),
        _ => {
            let bound = g.index(1);
            g.extra.push("k");
            let body = format!("{} <= k", paren(g.index(1)));
            g.extra.pop();
            format!("exists k <= {bound}. {body}")
        }
    };
    let a = atom(g);
    let out = match g.rng.gen_range(0..3) {
        0 => a,
        1 => format!("({a}) & ({})", atom(g)),
        _ => format!("!({a}) | ({})", atom(g)),
    };
    g.extra = saved;
    out
}

fn stream_rng(seed: u64, schema: usize, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((schema as u64) << 32) | trial as u64);
    rng
}

enum Verdict {
    Holds { premise_held: bool },
    Violated(Counterexample),
}

fn run_trial(build: Builder, seed: u64, schema: usize, trial: usize) -> Verdict {
    let mut rng = stream_rng(seed, schema, trial);
    let env = random_env(&mut rng);
    let instance = build(&mut Gen { rng: &mut rng, extra: Vec::new() });
    let evaluator = Evaluator::default();
    let check = |text: &str| parse(text).and_then(|e| evaluator.eval_formula(&e, &env));
    let fail = |formula: String, error: Option<String>| {
        Verdict::Violated(Counterexample { trial, formula, env: env.clone(), error })
    };
    match instance {
        Instance::Axiom(text) => match check(&text) {
            Ok(true) => Verdict::Holds { premise_held: true },
            Ok(false) => fail(text, None),
            Err(e) => fail(text, Some(e.to_string())),
        },
        Instance::Rule { premise, conclusion } => {
            let whole = format!("({premise}) -> ({conclusion})");
            match check(&premise) {
                Ok(false) => Verdict::Holds { premise_held: false },
                Ok(true) => match check(&conclusion) {
                    Ok(true) => Verdict::Holds { premise_held: true },
                    Ok(false) => fail(whole, None),
                    Err(e) => fail(whole, Some(e.to_string())),
                },
                Err(e) => fail(whole, Some(e.to_string())),
            }
        }
    }
}

/// Checks `trials` random instances of every axiom and rule.
pub fn check_axioms(trials: usize, seed: u64) -> AxiomReport {
    let outcomes = schemas()
        .into_iter()
        .enumerate()
        .map(|(k, (name, build))| {
            let verdicts: Vec<Verdict> =
                (0..trials).into_par_iter().map(|t| run_trial(build, seed, k, t)).collect();
            let is_rule = name.ends_with("rule");
            let mut outcome = AxiomOutcome {
                name: name.to_string(),
                instances: trials,
                violations: 0,
                premises_held: is_rule.then_some(0),
                counterexample: None,
            };
            for v in verdicts {
                match v {
                    Verdict::Holds { premise_held } => {
                        if let (Some(n), true) = (outcome.premises_held.as_mut(), premise_held) {
                            *n += 1;
                        }
                    }
                    Verdict::Violated(c) => {
                        outcome.violations += 1;
                        outcome.counterexample.get_or_insert(c);
                    }
                }
            }
            outcome
        })
        .collect();
    AxiomReport { seed, trials, outcomes }
}

/// Compares `Sigma` computed through the recursive decomposition with a
/// plain entry sum, on random integer matrices with both sides up to
/// `max_dim`. Also evaluates `Sigma(A)` through the language.
pub fn check_sigma_decomposition(trials: usize, seed: u64, max_dim: usize) -> AxiomOutcome {
    let verdicts: Vec<Option<Counterexample>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = stream_rng(seed, usize::MAX >> 32, t);
            let (r, c) = (rng.gen_range(0..=max_dim), rng.gen_range(0..=max_dim));
            let m = IntMatrix::from_fn(r, c, |_, _| rng.gen_range(-9..=9));
            let env = Environment::new().with_matrix("A", m.clone());
            let direct = sigma_direct(&m);
            let recursive = sigma_by_axioms(&m);
            let in_language = parse("Sigma(A)").and_then(|e| Evaluator::default().eval_term(&e, &env));
            let agree = match (&direct, &recursive, &in_language) {
                (Ok(d), Ok(s), Ok(super::Value::Ring(l))) => d == s && s == l,
                _ => false,
            };
            (!agree).then(|| Counterexample {
                trial: t,
                formula: format!("Sigma(A) = {direct:?}"),
                env,
                error: recursive.err().map(|e| e.to_string()),
            })
        })
        .collect();
    let violations = verdicts.iter().flatten().count();
    AxiomOutcome {
        name: "Sigma decomposition".into(),
        instances: trials,
        violations,
        premises_held: None,
        counterexample: verdicts.into_iter().flatten().next(),
    }
}
