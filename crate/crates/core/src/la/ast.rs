use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

/// Byte range in the source text. Spans never affect equality, so a printed
/// and re-parsed expression compares equal to the original.
#[derive(Clone, Copy, Debug, Default, Eq, Serialize, Deserialize)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Self {
        Span { start, end }
    }

    pub fn to(self, other: Span) -> Span {
        Span::new(self.start.min(other.start), self.end.max(other.end))
    }
}

impl PartialEq for Span {
    fn eq(&self, _: &Span) -> bool {
        true
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sort {
    Index,
    Ring,
    Matrix,
    Formula,
}

impl Sort {
    pub fn name(self) -> &'static str {
        match self {
            Sort::Index => "index",
            Sort::Ring => "ring",
            Sort::Matrix => "matrix",
            Sort::Formula => "formula",
        }
    }

    /// Sort of a free variable nobody declared: capitalised names are
    /// matrices, names starting with `a` to `h` are ring elements, and the
    /// rest are indices.
    pub fn by_convention(name: &str) -> Sort {
        match name.chars().next() {
            Some(ch) if ch.is_ascii_uppercase() => Sort::Matrix,
            Some('a'..='h') => Sort::Ring,
            _ => Sort::Index,
        }
    }

    /// Sort of a quantified variable: capitalised names range over matrices,
    /// everything else over indices.
    pub fn of_bound(name: &str) -> Sort {
        if name.starts_with(|ch: char| ch.is_ascii_uppercase()) {
            Sort::Matrix
        } else {
            Sort::Index
        }
    }
}

/// Sort of an overloaded arithmetic symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NumSort {
    Index,
    Ring,
}

impl NumSort {
    pub fn sort(self) -> Sort {
        match self {
            NumSort::Index => Sort::Index,
            NumSort::Ring => Sort::Ring,
        }
    }

    pub fn from_sort(s: Sort) -> Option<NumSort> {
        match s {
            Sort::Index => Some(NumSort::Index),
            Sort::Ring => Some(NumSort::Ring),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BinOp {
    Add,
    Mul,
    /// Cut-off subtraction on indices, ordinary subtraction on ring elements.
    Sub,
}

impl BinOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Mul => "*",
            BinOp::Sub => "-",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Connective {
    And,
    Or,
    Implies,
}

impl Connective {
    pub fn symbol(self) -> &'static str {
        match self {
            Connective::And => "&",
            Connective::Or => "|",
            Connective::Implies => "->",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Quantifier {
    Forall,
    Exists,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

/// Terms and formulas share one tree; [`crate::la::typecheck`] assigns each
/// node a [`Sort`]. `None` sort annotations are resolved by inference.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum ExprKind {
    Var(String),
    /// `0` and `1` are the constants of the language; larger numerals
    /// abbreviate sums of `1`.
    Num {
        value: u64,
        sort: Option<NumSort>,
    },
    Binary {
        op: BinOp,
        sort: Option<NumSort>,
        lhs: Box<Expr>,
        rhs: Box<Expr>,
    },
    /// Ring negation.
    Neg(Box<Expr>),
    /// Ring inverse.
    Inv(Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Rem(Box<Expr>, Box<Expr>),
    Rows(Box<Expr>),
    Cols(Box<Expr>),
    Entry {
        matrix: Box<Expr>,
        row: Box<Expr>,
        col: Box<Expr>,
    },
    Sigma(Box<Expr>),
    Cond {
        sort: Option<NumSort>,
        guard: Box<Expr>,
        then: Box<Expr>,
        otherwise: Box<Expr>,
    },
    Lambda {
        row_var: String,
        col_var: String,
        rows: Box<Expr>,
        cols: Box<Expr>,
        body: Box<Expr>,
    },
    Le(Box<Expr>, Box<Expr>),
    Eq {
        sort: Option<Sort>,
        lhs: Box<Expr>,
        rhs: Box<Expr>,
    },
    Not(Box<Expr>),
    Connective {
        op: Connective,
        lhs: Box<Expr>,
        rhs: Box<Expr>,
    },
    Quant {
        quantifier: Quantifier,
        var: String,
        bound: Option<Box<Expr>>,
        body: Box<Expr>,
    },
}

impl Expr {
    pub fn new(kind: ExprKind, span: Span) -> Self {
        Expr { kind, span }
    }

    /// Variables occurring free, in name order.
    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free<'a>(&'a self, bound: &mut Vec<&'a str>, out: &mut BTreeSet<String>) {
        use ExprKind::*;
        match &self.kind {
            Var(v) => {
                if !bound.contains(&v.as_str()) {
                    out.insert(v.clone());
                }
            }
            Num { .. } => {}
            Binary { lhs, rhs, .. }
            | Div(lhs, rhs)
            | Rem(lhs, rhs)
            | Le(lhs, rhs)
            | Eq { lhs, rhs, .. }
            | Connective { lhs, rhs, .. } => {
                lhs.collect_free(bound, out);
                rhs.collect_free(bound, out);
            }
            Neg(x) | Inv(x) | Rows(x) | Cols(x) | Sigma(x) | Not(x) => x.collect_free(bound, out),
            Entry { matrix, row, col } => {
                matrix.collect_free(bound, out);
                row.collect_free(bound, out);
                col.collect_free(bound, out);
            }
            Cond { guard, then, otherwise, .. } => {
                guard.collect_free(bound, out);
                then.collect_free(bound, out);
                otherwise.collect_free(bound, out);
            }
            Lambda { row_var, col_var, rows, cols, body } => {
                rows.collect_free(bound, out);
                cols.collect_free(bound, out);
                bound.push(row_var);
                bound.push(col_var);
                body.collect_free(bound, out);
                bound.truncate(bound.len() - 2);
            }
            Quant { var, bound: limit, body, .. } => {
                if let Some(limit) = limit {
                    limit.collect_free(bound, out);
                }
                bound.push(var);
                body.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    /// True iff `name` occurs free.
    pub fn mentions(&self, name: &str) -> bool {
        self.free_vars().contains(name)
    }

    /// Does the subtree contain a matrix quantifier?
    pub fn has_matrix_quantifier(&self) -> bool {
        let mut found = false;
        self.visit(&mut |e| {
            if let ExprKind::Quant { var, .. } = &e.kind {
                found |= Sort::of_bound(var) == Sort::Matrix;
            }
        });
        found
    }

    /// Pre-order traversal.
    pub fn visit(&self, f: &mut impl FnMut(&Expr)) {
        use ExprKind::*;
        f(self);
        match &self.kind {
            Var(_) | Num { .. } => {}
            Binary { lhs, rhs, .. }
            | Div(lhs, rhs)
            | Rem(lhs, rhs)
            | Le(lhs, rhs)
            | Eq { lhs, rhs, .. }
            | Connective { lhs, rhs, .. } => {
                lhs.visit(f);
                rhs.visit(f);
            }
            Neg(x) | Inv(x) | Rows(x) | Cols(x) | Sigma(x) | Not(x) => x.visit(f),
            Entry { matrix, row, col } => {
                matrix.visit(f);
                row.visit(f);
                col.visit(f);
            }
            Cond { guard, then, otherwise, .. } => {
                guard.visit(f);
                then.visit(f);
                otherwise.visit(f);
            }
            Lambda { rows, cols, body, .. } => {
                rows.visit(f);
                cols.visit(f);
                body.visit(f);
            }
            Quant { bound, body, .. } => {
                if let Some(b) = bound {
                    b.visit(f);
                }
                body.visit(f);
            }
        }
    }
}
