use super::ast::{Sort, Span};
use super::LaError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Num(u64),
    /// `_index`, `_ring` or `_matrix` glued to the preceding token.
    Suffix(Sort),
    LParen,
    RParen,
    Comma,
    Dot,
    Lt,
    Gt,
    Le,
    Ge,
    Eq,
    Ne,
    Bang,
    Amp,
    Pipe,
    Arrow,
    Plus,
    Minus,
    Star,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Num(n) => format!("`{n}`"),
            Tok::Suffix(s) => format!("`_{}`", s.name()),
            Tok::Eof => "end of input".into(),
            other => format!("`{}`", other.text()),
        }
    }

    fn text(&self) -> &'static str {
        match self {
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::Comma => ",",
            Tok::Dot => ".",
            Tok::Lt => "<",
            Tok::Gt => ">",
            Tok::Le => "<=",
            Tok::Ge => ">=",
            Tok::Eq => "=",
            Tok::Ne => "!=",
            Tok::Bang => "!",
            Tok::Amp => "&",
            Tok::Pipe => "|",
            Tok::Arrow => "->",
            Tok::Plus => "+",
            Tok::Minus => "-",
            Tok::Star => "*",
            _ => "",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
}

fn is_ident_char(ch: u8) -> bool {
    ch.is_ascii_alphanumeric() || ch == b'_' || ch == b'\''
}

pub fn lex(src: &str) -> Result<Vec<Token>, LaError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let ch = bytes[pos];
        if ch.is_ascii_whitespace() {
            pos += 1;
            continue;
        }
        let start = pos;
        let two = bytes.get(pos..pos + 2);
        let (tok, len) = match (ch, two) {
            (_, Some(b"<=")) => (Tok::Le, 2),
            (_, Some(b">=")) => (Tok::Ge, 2),
            (_, Some(b"!=")) => (Tok::Ne, 2),
            (_, Some(b"->")) => (Tok::Arrow, 2),
            (b'(', _) => (Tok::LParen, 1),
            (b')', _) => (Tok::RParen, 1),
            (b',', _) => (Tok::Comma, 1),
            (b'.', _) => (Tok::Dot, 1),
            (b'<', _) => (Tok::Lt, 1),
            (b'>', _) => (Tok::Gt, 1),
            (b'=', _) => (Tok::Eq, 1),
            (b'!', _) => (Tok::Bang, 1),
            (b'&', _) => (Tok::Amp, 1),
            (b'|', _) => (Tok::Pipe, 1),
            (b'+', _) => (Tok::Plus, 1),
            (b'-', _) => (Tok::Minus, 1),
            (b'*', _) => (Tok::Star, 1),
            (b'0'..=b'9', _) => {
                let end = pos + bytes[pos..].iter().take_while(|b| b.is_ascii_digit()).count();
                let value = src[pos..end].parse::<u64>().map_err(|_| LaError::Syntax {
                    pos,
                    message: "numeral does not fit in 64 bits".into(),
                })?;
                (Tok::Num(value), end - pos)
            }
            (b'a'..=b'z' | b'A'..=b'Z', _) => {
                let end = pos + bytes[pos..].iter().take_while(|&&b| is_ident_char(b)).count();
                (Tok::Ident(src[pos..end].to_string()), end - pos)
            }
            _ => {
                let shown = src[pos..].chars().next().unwrap_or('?');
                return Err(LaError::Syntax {
                    pos,
                    message: format!("unexpected character `{shown}`"),
                });
            }
        };
        pos += len;
        out.push(Token { tok: tok.clone(), span: Span::new(start, pos) });
        let takes_suffix = matches!(
            tok,
            Tok::Num(_) | Tok::Plus | Tok::Minus | Tok::Star | Tok::Eq | Tok::Ne
        );
        if takes_suffix && bytes.get(pos) == Some(&b'_') {
            let end = pos + bytes[pos..].iter().take_while(|&&b| is_ident_char(b)).count();
            let sort = match &src[pos + 1..end] {
                "index" => Sort::Index,
                "ring" => Sort::Ring,
                "matrix" => Sort::Matrix,
                other => {
                    return Err(LaError::Syntax {
                        pos,
                        message: format!("unknown sort suffix `_{other}`"),
                    })
                }
            };
            out.push(Token { tok: Tok::Suffix(sort), span: Span::new(pos, end) });
            pos = end;
        }
    }
    out.push(Token { tok: Tok::Eof, span: Span::new(src.len(), src.len()) });
    Ok(out)
}
