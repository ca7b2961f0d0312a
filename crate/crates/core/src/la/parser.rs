//! Recursive descent over the token stream.
//!
//! ```text
//! expr     := quant | implies
//! quant    := ("forall" | "exists") ident ("," ident)* ("<=" sum)? "." expr
//! implies  := or ("->" expr)?
//! or       := and ("|" and)*
//! and      := not ("&" not)*
//! not      := "!" not | quant | compare
//! compare  := sum (("<=" | "<" | ">=" | ">" | "=" | "!=") suffix? sum)?
//! sum      := product (("+" | "-") suffix? product)*
//! product  := unary ("*" suffix? unary)*
//! unary    := "-" unary | primary
//! primary  := num suffix? | ident | call | lambda | "(" expr ")"
//! call     := ("r" | "c" | "e" | "Sigma" | "cond" | "cond_index" | "cond_ring"
//!              | "div" | "rem" | "inv") "(" expr ("," expr)* ")"
//! lambda   := "lambda" ident ident "<" sum "," sum "," sum ">"
//! ```
//!
//! `<`, `>=`, `>` and `!=` are abbreviations for formulas built from `<=`,
//! `=` and `!`.

use super::ast::{BinOp, Connective, Expr, ExprKind, NumSort, Quantifier, Sort, Span};
use super::lexer::{lex, Tok, Token};
use super::LaError;

const KEYWORDS: [&str; 3] = ["lambda", "forall", "exists"];

pub fn parse(src: &str) -> Result<Expr, LaError> {
    let mut p = Parser { toks: lex(src)?, at: 0 };
    let e = p.expr()?;
    p.expect(Tok::Eof)?;
    Ok(e)
}

struct Parser {
    toks: Vec<Token>,
    at: usize,
}

fn boxed(e: Expr) -> Box<Expr> {
    Box::new(e)
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].tok
    }

    fn span(&self) -> Span {
        self.toks[self.at].span
    }

    fn prev_span(&self) -> Span {
        self.toks[self.at.saturating_sub(1)].span
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.at].clone();
        if t.tok != Tok::Eof {
            self.at += 1;
        }
        t
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    fn error<T>(&self, message: String) -> Result<T, LaError> {
        Err(LaError::Syntax { pos: self.span().start, message })
    }

    fn expect(&mut self, tok: Tok) -> Result<Span, LaError> {
        if self.peek() == &tok {
            Ok(self.bump().span)
        } else {
            self.error(format!("expected {}, found {}", tok.describe(), self.peek().describe()))
        }
    }

    fn ident(&mut self) -> Result<(String, Span), LaError> {
        match self.peek().clone() {
            Tok::Ident(name) if !KEYWORDS.contains(&name.as_str()) => {
                let span = self.bump().span;
                Ok((name, span))
            }
            other => self.error(format!("expected a variable, found {}", other.describe())),
        }
    }

    fn suffix(&mut self) -> Option<Sort> {
        match *self.peek() {
            Tok::Suffix(s) => {
                self.bump();
                Some(s)
            }
            _ => None,
        }
    }

    fn num_suffix(&mut self) -> Result<Option<NumSort>, LaError> {
        let at = self.span().start;
        match self.suffix() {
            None => Ok(None),
            Some(s) => NumSort::from_sort(s).map(Some).ok_or(LaError::Syntax {
                pos: at,
                message: format!("suffix `_{}` is not allowed here", s.name()),
            }),
        }
    }

    fn is_keyword(&self, word: &str) -> bool {
        matches!(self.peek(), Tok::Ident(w) if w == word)
    }

    fn expr(&mut self) -> Result<Expr, LaError> {
        if self.is_keyword("forall") || self.is_keyword("exists") {
            return self.quant();
        }
        self.implies()
    }

    fn quant(&mut self) -> Result<Expr, LaError> {
        let head = self.bump();
        let quantifier = match head.tok {
            Tok::Ident(ref w) if w == "forall" => Quantifier::Forall,
            _ => Quantifier::Exists,
        };
        let mut vars = vec![self.ident()?.0];
        while self.eat(&Tok::Comma) {
            vars.push(self.ident()?.0);
        }
        let bound = if self.eat(&Tok::Le) { Some(self.sum()?) } else { None };
        self.expect(Tok::Dot)?;
        let mut body = self.expr()?;
        let span = head.span.to(body.span);
        for var in vars.into_iter().rev() {
            body = Expr::new(
                ExprKind::Quant { quantifier, var, bound: bound.clone().map(boxed), body: boxed(body) },
                span,
            );
        }
        Ok(body)
    }

    fn implies(&mut self) -> Result<Expr, LaError> {
        let lhs = self.or()?;
        if self.eat(&Tok::Arrow) {
            let rhs = self.expr()?;
            let span = lhs.span.to(rhs.span);
            return Ok(Expr::new(
                ExprKind::Connective { op: Connective::Implies, lhs: boxed(lhs), rhs: boxed(rhs) },
                span,
            ));
        }
        Ok(lhs)
    }

    fn chain(
        &mut self,
        tok: Tok,
        op: Connective,
        next: fn(&mut Self) -> Result<Expr, LaError>,
    ) -> Result<Expr, LaError> {
        let mut lhs = next(self)?;
        while self.eat(&tok) {
            let rhs = next(self)?;
            let span = lhs.span.to(rhs.span);
            lhs = Expr::new(ExprKind::Connective { op, lhs: boxed(lhs), rhs: boxed(rhs) }, span);
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Expr, LaError> {
        self.chain(Tok::Pipe, Connective::Or, Self::and)
    }

    fn and(&mut self) -> Result<Expr, LaError> {
        self.chain(Tok::Amp, Connective::And, Self::not)
    }

    fn not(&mut self) -> Result<Expr, LaError> {
        if self.peek() == &Tok::Bang {
            let start = self.bump().span;
            let inner = self.not()?;
            let span = start.to(inner.span);
            return Ok(Expr::new(ExprKind::Not(boxed(inner)), span));
        }
        if self.is_keyword("forall") || self.is_keyword("exists") {
            return self.quant();
        }
        self.compare()
    }

    fn compare(&mut self) -> Result<Expr, LaError> {
        let lhs = self.sum()?;
        let op = self.peek().clone();
        if !matches!(op, Tok::Le | Tok::Lt | Tok::Ge | Tok::Gt | Tok::Eq | Tok::Ne) {
            return Ok(lhs);
        }
        self.bump();
        let sort = self.suffix();
        if sort.is_some() && !matches!(op, Tok::Eq | Tok::Ne) {
            return Err(LaError::Syntax {
                pos: self.prev_span().start,
                message: "only `=` and `!=` take a sort suffix".into(),
            });
        }
        let rhs = self.sum()?;
        let span = lhs.span.to(rhs.span);
        let le = |a: Expr, b: Expr| Expr::new(ExprKind::Le(boxed(a), boxed(b)), span);
        let not = |e: Expr| Expr::new(ExprKind::Not(boxed(e)), span);
        Ok(match op {
            Tok::Le => le(lhs, rhs),
            Tok::Lt => not(le(rhs, lhs)),
            Tok::Ge => le(rhs, lhs),
            Tok::Gt => not(le(lhs, rhs)),
            Tok::Eq => Expr::new(ExprKind::Eq { sort, lhs: boxed(lhs), rhs: boxed(rhs) }, span),
            _ => not(Expr::new(ExprKind::Eq { sort, lhs: boxed(lhs), rhs: boxed(rhs) }, span)),
        })
    }

    fn sum(&mut self) -> Result<Expr, LaError> {
        let mut lhs = self.product()?;
        loop {
            let op = match self.peek() {
                Tok::Plus => BinOp::Add,
                Tok::Minus => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let sort = self.num_suffix()?;
            let rhs = self.product()?;
            let span = lhs.span.to(rhs.span);
            lhs = Expr::new(ExprKind::Binary { op, sort, lhs: boxed(lhs), rhs: boxed(rhs) }, span);
        }
    }

    fn product(&mut self) -> Result<Expr, LaError> {
        let mut lhs = self.unary()?;
        while self.eat(&Tok::Star) {
            let sort = self.num_suffix()?;
            let rhs = self.unary()?;
            let span = lhs.span.to(rhs.span);
            lhs = Expr::new(
                ExprKind::Binary { op: BinOp::Mul, sort, lhs: boxed(lhs), rhs: boxed(rhs) },
                span,
            );
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, LaError> {
        if self.peek() == &Tok::Minus {
            let start = self.bump().span;
            if let Tok::Suffix(_) = self.peek() {
                return self.error("unary minus is ring-only and takes no suffix".into());
            }
            let inner = self.unary()?;
            let span = start.to(inner.span);
            return Ok(Expr::new(ExprKind::Neg(boxed(inner)), span));
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Expr, LaError> {
        let start = self.span();
        match self.peek().clone() {
            Tok::Num(value) => {
                self.bump();
                let sort = self.num_suffix()?;
                Ok(Expr::new(ExprKind::Num { value, sort }, start.to(self.prev_span())))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            Tok::Ident(ref w) if w == "lambda" => self.lambda(),
            Tok::Ident(name) if !KEYWORDS.contains(&name.as_str()) => {
                self.bump();
                if self.peek() == &Tok::LParen {
                    return self.call(&name, start);
                }
                Ok(Expr::new(ExprKind::Var(name), start))
            }
            other => self.error(format!("expected a term, found {}", other.describe())),
        }
    }

    fn call(&mut self, name: &str, start: Span) -> Result<Expr, LaError> {
        let arity = match name {
            "r" | "c" | "Sigma" | "inv" => 1,
            "div" | "rem" => 2,
            "e" | "cond" | "cond_index" | "cond_ring" => 3,
            _ => return Err(LaError::Syntax { pos: start.start, message: format!("unknown function `{name}`") }),
        };
        self.expect(Tok::LParen)?;
        let mut args = vec![self.expr()?];
        while self.eat(&Tok::Comma) {
            args.push(self.expr()?);
        }
        if args.len() != arity {
            return Err(LaError::Syntax {
                pos: self.span().start,
                message: format!("`{name}` takes {arity} argument(s), got {}", args.len()),
            });
        }
        let end = self.expect(Tok::RParen)?;
        let span = start.to(end);
        let mut it = args.into_iter().map(boxed);
        let mut next = || it.next().expect("arity checked");
        let kind = match name {
            "r" => ExprKind::Rows(next()),
            "c" => ExprKind::Cols(next()),
            "Sigma" => ExprKind::Sigma(next()),
            "inv" => ExprKind::Inv(next()),
            "div" => ExprKind::Div(next(), next()),
            "rem" => ExprKind::Rem(next(), next()),
            "e" => ExprKind::Entry { matrix: next(), row: next(), col: next() },
            _ => ExprKind::Cond {
                sort: match name {
                    "cond_index" => Some(NumSort::Index),
                    "cond_ring" => Some(NumSort::Ring),
                    _ => None,
                },
                guard: next(),
                then: next(),
                otherwise: next(),
            },
        };
        Ok(Expr::new(kind, span))
    }

    fn lambda(&mut self) -> Result<Expr, LaError> {
        let start = self.bump().span;
        let (row_var, _) = self.ident()?;
        let (col_var, _) = self.ident()?;
        self.expect(Tok::Lt)?;
        let rows = self.sum()?;
        self.expect(Tok::Comma)?;
        let cols = self.sum()?;
        self.expect(Tok::Comma)?;
        let body = self.sum()?;
        let end = self.expect(Tok::Gt)?;
        Ok(Expr::new(
            ExprKind::Lambda { row_var, col_var, rows: boxed(rows), cols: boxed(cols), body: boxed(body) },
            start.to(end),
        ))
    }
}
