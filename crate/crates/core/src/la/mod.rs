//! The three-sorted language L_LA: indices (naturals), ring elements
//! (integers) and integer matrices.
//!
//! Concrete syntax, by example:
//!
//! ```text
//! Sigma(lambda i j <2, 2, 1>)          sum of a constructed 2x2 matrix
//! e(A, i, j)   r(A)   c(A)             entry (1-based, 0 outside), rows, cols
//! cond(i <= j, a, b)                   guard built from index comparisons
//! div(i, j)   rem(i, j)   inv(a)       with div(i, 0) = 0, rem(i, 0) = i
//! forall i <= n. exists A <= 2. phi    quantifiers must carry a bound
//! i +_ring 1_ring                      optional sort suffixes on + * - = and numerals
//! ```
//!
//! Index subtraction is cut off at 0. `<`, `>`, `>=` and `!=` abbreviate
//! formulas over `<=`, `=` and `!`. Undeclared free variables get their
//! sort from their name: capitalised names are matrices, names starting
//! with `a` to `h` are ring elements, all others are indices. Quantified
//! variables are matrices when capitalised and indices otherwise; matrix
//! quantifiers range over 0-1 matrices of every shape up to the bound.

mod ast;
pub mod axioms;
pub mod catalog;
mod env;
mod eval;
mod lexer;
mod parser;
mod print;
mod typecheck;

pub use ast::{BinOp, Connective, Expr, ExprKind, NumSort, Quantifier, Sort, Span};
pub use axioms::{check_axioms, check_sigma_decomposition, AxiomOutcome, AxiomReport};
pub use catalog::{catalog_entry, check_conformance, predicate_catalog, CatalogEntry, ConformanceOutcome};
pub use env::{Environment, IntMatrix, Value};
pub use eval::{eval_formula, eval_term, sigma_by_axioms, sigma_direct, EntryDomain, EvalConfig, Evaluator};
pub use parser::parse;
pub use typecheck::{typecheck, Checked};

use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum LaError {
    #[error("syntax error at byte {pos}: {message}")]
    Syntax { pos: usize, message: String },

    #[error("sort error at bytes {}..{}: {message}", span.start, span.end)]
    Sort { span: Span, message: String },

    #[error("unbound variable `{0}`")]
    Unbound(String),

    #[error("quantifier over `{0}` has no bound")]
    UnboundedQuantifier(String),

    #[error("budget exceeded: {what} is {got}, limit is {limit}")]
    Budget { what: &'static str, got: u64, limit: u64 },

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("invalid environment: {0}")]
    Environment(String),
}

impl LaError {
    pub fn is_resource(&self) -> bool {
        matches!(self, LaError::Budget { .. } | LaError::Overflow(_))
    }
}
