use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::ast::{self, BinOp, Expr, ExprKind, NumSort, Quantifier, Sort};
use super::env::{Environment, IntMatrix, Value};
use super::typecheck::typecheck;
use super::LaError;

/// Values quantified matrices range over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EntryDomain {
    ZeroOne,
    /// Every integer in `lo..=hi`. Experimental.
    IntRange { lo: i64, hi: i64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvalConfig {
    /// Largest bound `n` accepted in `exists A <= n`.
    pub max_matrix_dim: u64,
    /// Largest number of candidate matrices one matrix quantifier may visit.
    pub max_matrix_candidates: u64,
    /// Largest bound `n` accepted in `forall i <= n`.
    pub max_index_bound: u64,
    /// Largest `m * n` a lambda term may materialise.
    pub max_cells: u64,
    pub entry_domain: EntryDomain,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            max_matrix_dim: 3,
            max_matrix_candidates: 1 << 16,
            max_index_bound: 1 << 20,
            max_cells: 1 << 20,
            entry_domain: EntryDomain::ZeroOne,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Evaluator {
    config: EvalConfig,
}

impl Evaluator {
    pub fn new(config: EvalConfig) -> Self {
        Evaluator { config }
    }

    pub fn config(&self) -> &EvalConfig {
        &self.config
    }

    /// Typechecks `expr` against the sorts declared in `env`, then evaluates
    /// it. Every free variable must be bound in `env`.
    pub fn eval(&self, expr: &Expr, env: &Environment) -> Result<Value, LaError> {
        env.validate()?;
        let checked = typecheck(expr, &env.sorts())?;
        if let Some(name) = checked.expr.free_vars().into_iter().find(|v| env.sort_of(v).is_none()) {
            return Err(LaError::Unbound(name));
        }
        let mut run = Run { config: &self.config, globals: env.values(), locals: Vec::new() };
        run.eval(&checked.expr)
    }

    pub fn eval_term(&self, expr: &Expr, env: &Environment) -> Result<Value, LaError> {
        match self.eval(expr, env)? {
            Value::Bool(_) => Err(LaError::Sort { span: expr.span, message: "expected a term, found a formula".into() }),
            v => Ok(v),
        }
    }

    pub fn eval_formula(&self, expr: &Expr, env: &Environment) -> Result<bool, LaError> {
        match self.eval(expr, env)? {
            Value::Bool(b) => Ok(b),
            v => Err(LaError::Sort {
                span: expr.span,
                message: format!("expected a formula, found a {} term", v.sort().name()),
            }),
        }
    }
}

pub fn eval_term(expr: &Expr, env: &Environment) -> Result<Value, LaError> {
    Evaluator::default().eval_term(expr, env)
}

pub fn eval_formula(expr: &Expr, env: &Environment) -> Result<bool, LaError> {
    Evaluator::default().eval_formula(expr, env)
}

fn overflow(what: &'static str) -> LaError {
    LaError::Overflow(what)
}

/// Sum of a row segment by peeling off the last entry, down to a single
/// entry or an empty segment.
fn row_sum(m: &IntMatrix, row: usize, col0: usize, len: usize) -> Result<i64, LaError> {
    (col0..col0 + len).rev().try_fold(0i64, |acc, j| acc.checked_add(m.get(row, j)).ok_or(overflow("Sigma")))
}

/// A column is summed as the row it becomes under transposition.
fn col_sum(m: &IntMatrix, row0: usize, col: usize, len: usize) -> Result<i64, LaError> {
    (row0..row0 + len).rev().try_fold(0i64, |acc, i| acc.checked_add(m.get(i, col)).ok_or(overflow("Sigma")))
}

/// `Sigma` computed by the recursive definition: empty matrices sum to 0,
/// rows by peeling the last entry, columns by transposing, and larger
/// matrices as corner + rest of first row + rest of first column + the
/// minor, which is then decomposed the same way.
pub fn sigma_by_axioms(m: &IntMatrix) -> Result<i64, LaError> {
    let (r, c) = (m.rows(), m.cols());
    let mut total = 0i64;
    let mut k = 0;
    let add = |a: i64, b: i64| a.checked_add(b).ok_or(overflow("Sigma"));
    loop {
        let (rr, cc) = (r.saturating_sub(k), c.saturating_sub(k));
        if rr == 0 || cc == 0 {
            return Ok(total);
        }
        if rr == 1 {
            return add(total, row_sum(m, k, k, cc)?);
        }
        if cc == 1 {
            return add(total, col_sum(m, k, k, rr)?);
        }
        total = add(total, m.get(k, k))?;
        total = add(total, row_sum(m, k, k + 1, cc - 1)?)?;
        total = add(total, col_sum(m, k + 1, k, rr - 1)?)?;
        k += 1;
    }
}

/// `Sigma` as a plain row-major sum.
pub fn sigma_direct(m: &IntMatrix) -> Result<i64, LaError> {
    m.entries().iter().try_fold(0i64, |acc, &v| acc.checked_add(v).ok_or(overflow("Sigma")))
}

struct Run<'a> {
    config: &'a EvalConfig,
    globals: HashMap<String, Value>,
    locals: Vec<(String, Value)>,
}

fn unannotated(e: &Expr) -> LaError {
    LaError::Sort { span: e.span, message: "expression was not typechecked".into() }
}

impl Run<'_> {
    fn lookup(&self, name: &str) -> Result<Value, LaError> {
        if let Some((_, v)) = self.locals.iter().rev().find(|(n, _)| n == name) {
            return Ok(v.clone());
        }
        self.globals.get(name).cloned().ok_or_else(|| LaError::Unbound(name.to_string()))
    }

    fn index(&mut self, e: &Expr) -> Result<u64, LaError> {
        match self.eval(e)? {
            Value::Index(v) => Ok(v),
            v => Err(LaError::Sort { span: e.span, message: format!("expected index, found {}", v.sort().name()) }),
        }
    }

    fn ring(&mut self, e: &Expr) -> Result<i64, LaError> {
        match self.eval(e)? {
            Value::Ring(v) => Ok(v),
            v => Err(LaError::Sort { span: e.span, message: format!("expected ring, found {}", v.sort().name()) }),
        }
    }

    fn matrix(&mut self, e: &Expr) -> Result<Arc<IntMatrix>, LaError> {
        match self.eval(e)? {
            Value::Matrix(m) => Ok(m),
            v => Err(LaError::Sort { span: e.span, message: format!("expected matrix, found {}", v.sort().name()) }),
        }
    }

    fn truth(&mut self, e: &Expr) -> Result<bool, LaError> {
        match self.eval(e)? {
            Value::Bool(b) => Ok(b),
            v => Err(LaError::Sort { span: e.span, message: format!("expected formula, found {}", v.sort().name()) }),
        }
    }

    fn with_local<T>(&mut self, name: &str, v: Value, f: impl FnOnce(&mut Self) -> T) -> T {
        self.locals.push((name.to_string(), v));
        let out = f(self);
        self.locals.pop();
        out
    }

    fn eval(&mut self, e: &Expr) -> Result<Value, LaError> {
        use ExprKind::*;
        Ok(match &e.kind {
            Var(v) => self.lookup(v)?,
            Num { value, sort } => match sort.ok_or_else(|| unannotated(e))? {
                NumSort::Index => Value::Index(*value),
                NumSort::Ring => Value::Ring(i64::try_from(*value).map_err(|_| overflow("ring numeral"))?),
            },
            Binary { op, sort, lhs, rhs } => match sort.ok_or_else(|| unannotated(e))? {
                NumSort::Index => {
                    let (a, b) = (self.index(lhs)?, self.index(rhs)?);
                    Value::Index(match op {
                        BinOp::Add => a.checked_add(b).ok_or(overflow("index +"))?,
                        BinOp::Mul => a.checked_mul(b).ok_or(overflow("index *"))?,
                        BinOp::Sub => a.saturating_sub(b),
                    })
                }
                NumSort::Ring => {
                    let (a, b) = (self.ring(lhs)?, self.ring(rhs)?);
                    Value::Ring(match op {
                        BinOp::Add => a.checked_add(b).ok_or(overflow("ring +"))?,
                        BinOp::Mul => a.checked_mul(b).ok_or(overflow("ring *"))?,
                        BinOp::Sub => a.checked_sub(b).ok_or(overflow("ring -"))?,
                    })
                }
            },
            Neg(x) => Value::Ring(self.ring(x)?.checked_neg().ok_or(overflow("ring negation"))?),
            Inv(x) => Value::Ring(match self.ring(x)? {
                v @ (1 | -1) => v,
                _ => 0,
            }),
            Div(a, b) => {
                let (a, b) = (self.index(a)?, self.index(b)?);
                Value::Index(a.checked_div(b).unwrap_or(0))
            }
            Rem(a, b) => {
                let (a, b) = (self.index(a)?, self.index(b)?);
                Value::Index(a.checked_rem(b).unwrap_or(a))
            }
            Rows(m) => Value::Index(self.matrix(m)?.rows() as u64),
            Cols(m) => Value::Index(self.matrix(m)?.cols() as u64),
            Entry { matrix, row, col } => {
                let m = self.matrix(matrix)?;
                let (i, j) = (self.index(row)?, self.index(col)?);
                let inside = (1..=m.rows() as u64).contains(&i) && (1..=m.cols() as u64).contains(&j);
                Value::Ring(if inside { m.get(i as usize - 1, j as usize - 1) } else { 0 })
            }
            Sigma(m) => Value::Ring(sigma_by_axioms(self.matrix(m)?.as_ref())?),
            Cond { guard, then, otherwise, .. } => {
                if self.truth(guard)? {
                    self.eval(then)?
                } else {
                    self.eval(otherwise)?
                }
            }
            Lambda { row_var, col_var, rows, cols, body } => {
                let (m, n) = (self.index(rows)?, self.index(cols)?);
                let cells = m.checked_mul(n).unwrap_or(u64::MAX);
                if cells > self.config.max_cells {
                    return Err(LaError::Budget { what: "lambda term cells", got: cells, limit: self.config.max_cells });
                }
                let mut data = Vec::with_capacity(cells as usize);
                self.locals.push((row_var.clone(), Value::Index(0)));
                self.locals.push((col_var.clone(), Value::Index(0)));
                let base = self.locals.len();
                let filled = (|| {
                    for i in 1..=m {
                        for j in 1..=n {
                            self.locals[base - 2].1 = Value::Index(i);
                            self.locals[base - 1].1 = Value::Index(j);
                            data.push(self.ring(body)?);
                        }
                    }
                    Ok(())
                })();
                self.locals.truncate(base - 2);
                filled?;
                Value::Matrix(Arc::new(IntMatrix::new(m as usize, n as usize, data)?))
            }
            Le(a, b) => Value::Bool(self.index(a)? <= self.index(b)?),
            Eq { sort, lhs, rhs } => {
                if sort.is_none() {
                    return Err(unannotated(e));
                }
                Value::Bool(self.eval(lhs)? == self.eval(rhs)?)
            }
            Not(x) => Value::Bool(!self.truth(x)?),
            Connective { op, lhs, rhs } => {
                let a = self.truth(lhs)?;
                Value::Bool(match op {
                    ast::Connective::And => a && self.truth(rhs)?,
                    ast::Connective::Or => a || self.truth(rhs)?,
                    ast::Connective::Implies => !a || self.truth(rhs)?,
                })
            }
            Quant { quantifier, var, bound, body } => {
                let Some(bound) = bound else {
                    return Err(LaError::UnboundedQuantifier(var.clone()));
                };
                let n = self.index(bound)?;
                let want = *quantifier == Quantifier::Exists;
                let found = if Sort::of_bound(var) == Sort::Matrix {
                    self.matrix_quantifier(var, n, want, body)?
                } else {
                    if n > self.config.max_index_bound {
                        return Err(LaError::Budget {
                            what: "index quantifier bound",
                            got: n,
                            limit: self.config.max_index_bound,
                        });
                    }
                    let mut found = false;
                    for i in 0..=n {
                        if self.with_local(var, Value::Index(i), |r| r.truth(body))? == want {
                            found = true;
                            break;
                        }
                    }
                    found
                };
                Value::Bool(found == want)
            }
        })
    }

    /// Visits shapes `r x c` with `r, c <= n` in row-major shape order, and
    /// within a shape every entry assignment in odometer order with the last
    /// entry varying fastest. Returns whether some candidate gave `want`.
    fn matrix_quantifier(&mut self, var: &str, n: u64, want: bool, body: &Expr) -> Result<bool, LaError> {
        let cfg = *self.config;
        if n > cfg.max_matrix_dim {
            return Err(LaError::Budget { what: "matrix quantifier bound", got: n, limit: cfg.max_matrix_dim });
        }
        let values: Vec<i64> = match cfg.entry_domain {
            EntryDomain::ZeroOne => vec![0, 1],
            EntryDomain::IntRange { lo, hi } => (lo..=hi).collect(),
        };
        let base = values.len() as u64;
        let dims = 0..=n as usize;
        let mut total = 0u64;
        for r in dims.clone() {
            for c in dims.clone() {
                total = total.saturating_add(base.saturating_pow((r * c) as u32));
            }
        }
        if total > cfg.max_matrix_candidates {
            return Err(LaError::Budget { what: "matrix quantifier candidates", got: total, limit: cfg.max_matrix_candidates });
        }
        if values.is_empty() {
            return Ok(false);
        }
        for r in dims.clone() {
            for c in dims.clone() {
                let mut digits = vec![0usize; r * c];
                loop {
                    let m = IntMatrix::new(r, c, digits.iter().map(|&d| values[d]).collect())?;
                    if self.with_local(var, Value::Matrix(Arc::new(m)), |run| run.truth(body))? == want {
                        return Ok(true);
                    }
                    let Some(pos) = digits.iter().rposition(|&d| d + 1 < values.len()) else {
                        break;
                    };
                    digits[pos] += 1;
                    digits[pos + 1..].iter_mut().for_each(|d| *d = 0);
                }
            }
        }
        Ok(false)
    }
}
