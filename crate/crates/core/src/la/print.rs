//! Concrete syntax for [`Expr`]. Compound operands are always parenthesised,
//! and sort annotations are printed as suffixes, so the output parses back
//! to the same tree.

use std::fmt::{self, Display, Formatter};

use super::ast::{Expr, ExprKind, NumSort, Quantifier, Sort};

fn suffix(sort: Option<Sort>) -> String {
    sort.map(|s| format!("_{}", s.name())).unwrap_or_default()
}

fn num_suffix(sort: Option<NumSort>) -> String {
    suffix(sort.map(NumSort::sort))
}

/// Operand position: parenthesise anything that is not a leaf or a call.
struct Operand<'a>(&'a Expr);

impl Display for Operand<'_> {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        use ExprKind::*;
        match self.0.kind {
            Var(_) | Num { .. } | Div(..) | Rem(..) | Inv(_) | Rows(_) | Cols(_) | Entry { .. }
            | Sigma(_) | Cond { .. } | Lambda { .. } => write!(f, "{}", self.0),
            _ => write!(f, "({})", self.0),
        }
    }
}

/// A slot parsed at the level of sums: lambda bounds and quantifier bounds.
struct SumSlot<'a>(&'a Expr);

impl Display for SumSlot<'_> {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        use ExprKind::*;
        match self.0.kind {
            Le(..) | Eq { .. } | Not(_) | Connective { .. } | Quant { .. } => write!(f, "({})", self.0),
            _ => write!(f, "{}", self.0),
        }
    }
}

impl Display for Expr {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        use ExprKind::*;
        match &self.kind {
            Var(v) => write!(f, "{v}"),
            Num { value, sort } => write!(f, "{value}{}", num_suffix(*sort)),
            Binary { op, sort, lhs, rhs } => {
                write!(f, "{} {}{} {}", Operand(lhs), op.symbol(), num_suffix(*sort), Operand(rhs))
            }
            Neg(x) => write!(f, "-{}", Operand(x)),
            Inv(x) => write!(f, "inv({x})"),
            Div(a, b) => write!(f, "div({a}, {b})"),
            Rem(a, b) => write!(f, "rem({a}, {b})"),
            Rows(m) => write!(f, "r({m})"),
            Cols(m) => write!(f, "c({m})"),
            Entry { matrix, row, col } => write!(f, "e({matrix}, {row}, {col})"),
            Sigma(m) => write!(f, "Sigma({m})"),
            Cond { sort, guard, then, otherwise } => {
                write!(f, "cond{}({guard}, {then}, {otherwise})", num_suffix(*sort))
            }
            Lambda { row_var, col_var, rows, cols, body } => write!(
                f,
                "lambda {row_var} {col_var} <{}, {}, {}>",
                SumSlot(rows),
                SumSlot(cols),
                SumSlot(body)
            ),
            Le(a, b) => write!(f, "{} <= {}", Operand(a), Operand(b)),
            Eq { sort, lhs, rhs } => write!(f, "{} ={} {}", Operand(lhs), suffix(*sort), Operand(rhs)),
            Not(x) => write!(f, "!{}", Operand(x)),
            Connective { op, lhs, rhs } => write!(f, "{} {} {}", Operand(lhs), op.symbol(), Operand(rhs)),
            Quant { quantifier, var, bound, body } => {
                let q = match quantifier {
                    Quantifier::Forall => "forall",
                    Quantifier::Exists => "exists",
                };
                match bound {
                    Some(b) => write!(f, "{q} {var} <= {}. {body}", SumSlot(b)),
                    None => write!(f, "{q} {var}. {body}"),
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use crate::la::parse;

    #[test]
    fn round_trips() {
        for src in [
            "Sigma(lambda i j <2, 2, 1>)",
            "e(A, i + 1, j) +_ring 1_ring",
            "forall i <= r(A). exists B <= 2. (i <= 3 -> !(Sigma(B) = 1) | c(B) = i)",
            "cond_ring(i <= j & !(i = 0), a * -b, inv(a - b))",
            "lambda p q <r(A) - 1, div(c(A), 2), e(A, p, q) * e(A, q, p)>",
            "A =_matrix lambda i j <r(A), c(A), e(A, i, j)>",
            "forall i. i = i",
            "rem(3 - 5, 0) = 3",
            "-(-a) = a",
        ] {
            let e = crate::la::parse(src).unwrap();
            let printed = e.to_string();
            assert_eq!(parse(&printed).unwrap(), e, "{src} printed as {printed}");
        }
    }
}
