use std::collections::BTreeMap;

use super::ast::{Expr, ExprKind, NumSort, Sort};
use super::LaError;

/// A sort-annotated expression. Every overloaded symbol and numeral in
/// `expr` carries an explicit sort.
#[derive(Clone, Debug, PartialEq)]
pub struct Checked {
    pub expr: Expr,
    pub sort: Sort,
}

/// Assigns sorts bottom-up. Free variables take their sort from `ctx`, or
/// from [`Sort::by_convention`] when absent. Overloaded symbols take the
/// sort of their first operand whose sort is fixed, and default to index.
pub fn typecheck(expr: &Expr, ctx: &BTreeMap<String, Sort>) -> Result<Checked, LaError> {
    let mut checker = Checker { ctx, scope: Vec::new() };
    let (expr, sort) = checker.check(expr, None)?;
    Ok(Checked { expr, sort })
}

struct Checker<'a> {
    ctx: &'a BTreeMap<String, Sort>,
    scope: Vec<(String, Sort)>,
}

fn sort_error<T>(e: &Expr, message: String) -> Result<T, LaError> {
    Err(LaError::Sort { span: e.span, message })
}

fn index_atomic(e: &Expr) -> bool {
    match &e.kind {
        ExprKind::Le(..) | ExprKind::Eq { sort: Some(Sort::Index), .. } => true,
        ExprKind::Not(x) => index_atomic(x),
        ExprKind::Connective { lhs, rhs, .. } => index_atomic(lhs) && index_atomic(rhs),
        _ => false,
    }
}

fn numeric(s: Option<Sort>) -> Option<NumSort> {
    s.and_then(NumSort::from_sort)
}

impl Checker<'_> {
    fn var_sort(&self, name: &str) -> Sort {
        self.scope
            .iter()
            .rev()
            .find(|(n, _)| n == name)
            .map(|&(_, s)| s)
            .or_else(|| self.ctx.get(name).copied())
            .unwrap_or_else(|| Sort::by_convention(name))
    }

    /// The sort of `e` when it does not depend on the context of use.
    fn probe(&self, e: &Expr) -> Option<Sort> {
        use ExprKind::*;
        match &e.kind {
            Var(v) => Some(self.var_sort(v)),
            Num { sort, .. } => sort.map(NumSort::sort),
            Binary { sort, lhs, rhs, .. } => {
                sort.map(NumSort::sort).or_else(|| self.probe(lhs)).or_else(|| self.probe(rhs))
            }
            Cond { sort, then, otherwise, .. } => {
                sort.map(NumSort::sort).or_else(|| self.probe(then)).or_else(|| self.probe(otherwise))
            }
            Neg(_) | Inv(_) | Entry { .. } | Sigma(_) => Some(Sort::Ring),
            Div(..) | Rem(..) | Rows(_) | Cols(_) => Some(Sort::Index),
            Lambda { .. } => Some(Sort::Matrix),
            Le(..) | Eq { .. } | Not(_) | Connective { .. } | Quant { .. } => Some(Sort::Formula),
        }
    }

    fn expect(&mut self, e: &Expr, want: Sort) -> Result<Expr, LaError> {
        let (out, got) = self.check(e, Some(want))?;
        if got != want {
            return sort_error(e, format!("expected {}, found {}", want.name(), got.name()));
        }
        Ok(out)
    }

    fn numeric_sort(&self, e: &Expr, what: &str, explicit: Option<NumSort>, want: Option<Sort>, operands: &[&Expr]) -> Result<NumSort, LaError> {
        let guess = explicit
            .map(NumSort::sort)
            .or(numeric(want).map(NumSort::sort))
            .or_else(|| operands.iter().find_map(|o| self.probe(o)))
            .unwrap_or(Sort::Index);
        NumSort::from_sort(guess).ok_or_else(|| LaError::Sort {
            span: e.span,
            message: format!("{what} needs index or ring operands, found {}", guess.name()),
        })
    }

    fn check(&mut self, e: &Expr, want: Option<Sort>) -> Result<(Expr, Sort), LaError> {
        use ExprKind::*;
        let span = e.span;
        let boxed = Box::new;
        let (kind, sort) = match &e.kind {
            Var(v) => (Var(v.clone()), self.var_sort(v)),
            Num { value, sort } => {
                let s = sort.or(numeric(want)).unwrap_or(NumSort::Index);
                (Num { value: *value, sort: Some(s) }, s.sort())
            }
            Binary { op, sort, lhs, rhs } => {
                let s = self.numeric_sort(e, &format!("`{}`", op.symbol()), *sort, want, &[lhs, rhs])?;
                let l = self.expect(lhs, s.sort())?;
                let r = self.expect(rhs, s.sort())?;
                (Binary { op: *op, sort: Some(s), lhs: boxed(l), rhs: boxed(r) }, s.sort())
            }
            Neg(x) => (Neg(boxed(self.expect(x, Sort::Ring)?)), Sort::Ring),
            Inv(x) => (Inv(boxed(self.expect(x, Sort::Ring)?)), Sort::Ring),
            Div(a, b) => (Div(boxed(self.expect(a, Sort::Index)?), boxed(self.expect(b, Sort::Index)?)), Sort::Index),
            Rem(a, b) => (Rem(boxed(self.expect(a, Sort::Index)?), boxed(self.expect(b, Sort::Index)?)), Sort::Index),
            Rows(m) => (Rows(boxed(self.expect(m, Sort::Matrix)?)), Sort::Index),
            Cols(m) => (Cols(boxed(self.expect(m, Sort::Matrix)?)), Sort::Index),
            Entry { matrix, row, col } => (
                Entry {
                    matrix: boxed(self.expect(matrix, Sort::Matrix)?),
                    row: boxed(self.expect(row, Sort::Index)?),
                    col: boxed(self.expect(col, Sort::Index)?),
                },
                Sort::Ring,
            ),
            Sigma(m) => (Sigma(boxed(self.expect(m, Sort::Matrix)?)), Sort::Ring),
            Cond { sort, guard, then, otherwise } => {
                let g = self.expect(guard, Sort::Formula)?;
                if !index_atomic(&g) {
                    return sort_error(guard, "cond guards may only combine index comparisons".into());
                }
                let s = self.numeric_sort(e, "`cond`", *sort, want, &[then, otherwise])?;
                let t = self.expect(then, s.sort())?;
                let o = self.expect(otherwise, s.sort())?;
                (Cond { sort: Some(s), guard: boxed(g), then: boxed(t), otherwise: boxed(o) }, s.sort())
            }
            Lambda { row_var, col_var, rows, cols, body } => {
                if row_var == col_var {
                    return sort_error(e, format!("lambda binds `{row_var}` twice"));
                }
                for bound in [rows, cols] {
                    if bound.mentions(row_var) || bound.mentions(col_var) {
                        return sort_error(
                            bound,
                            format!("lambda bounds may not mention the bound variables `{row_var}`, `{col_var}`"),
                        );
                    }
                }
                let m = self.expect(rows, Sort::Index)?;
                let n = self.expect(cols, Sort::Index)?;
                self.scope.push((row_var.clone(), Sort::Index));
                self.scope.push((col_var.clone(), Sort::Index));
                let t = self.expect(body, Sort::Ring);
                self.scope.truncate(self.scope.len() - 2);
                (
                    Lambda {
                        row_var: row_var.clone(),
                        col_var: col_var.clone(),
                        rows: boxed(m),
                        cols: boxed(n),
                        body: boxed(t?),
                    },
                    Sort::Matrix,
                )
            }
            Le(a, b) => (Le(boxed(self.expect(a, Sort::Index)?), boxed(self.expect(b, Sort::Index)?)), Sort::Formula),
            Eq { sort, lhs, rhs } => {
                let s = sort
                    .or_else(|| self.probe(lhs))
                    .or_else(|| self.probe(rhs))
                    .unwrap_or(Sort::Index);
                if s == Sort::Formula {
                    return sort_error(e, "`=` compares terms, not formulas".into());
                }
                let l = self.expect(lhs, s)?;
                let r = self.expect(rhs, s)?;
                (Eq { sort: Some(s), lhs: boxed(l), rhs: boxed(r) }, Sort::Formula)
            }
            Not(x) => (Not(boxed(self.expect(x, Sort::Formula)?)), Sort::Formula),
            Connective { op, lhs, rhs } => (
                Connective {
                    op: *op,
                    lhs: boxed(self.expect(lhs, Sort::Formula)?),
                    rhs: boxed(self.expect(rhs, Sort::Formula)?),
                },
                Sort::Formula,
            ),
            Quant { quantifier, var, bound, body } => {
                let b = bound.as_ref().map(|b| self.expect(b, Sort::Index)).transpose()?;
                self.scope.push((var.clone(), Sort::of_bound(var)));
                let body = self.expect(body, Sort::Formula);
                self.scope.pop();
                (
                    Quant { quantifier: *quantifier, var: var.clone(), bound: b.map(boxed), body: boxed(body?) },
                    Sort::Formula,
                )
            }
        };
        Ok((Expr::new(kind, span), sort))
    }
}
