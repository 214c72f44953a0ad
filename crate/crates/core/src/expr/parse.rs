//! Recursive-descent parser for the expression grammar:
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := base ('^' integer)?
//! base   := number | ident | '(' expr ')' | func '(' expr ')'
//! func   := sin | cos | exp | log | sqrt | neg
//! ```
//!
//! Identifiers must be declared coordinates. Exponents are integers and may carry
//! a leading minus sign.

use super::Expr;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown identifier `{name}` at offset {offset}")]
    UnknownIdentifier { name: String, offset: usize },
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Sym(char),
    End,
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn tokens(src: &'a str) -> Result<Vec<(Tok, usize)>, ParseError> {
        let mut lx = Lexer { src, pos: 0 };
        let mut out = Vec::new();
        loop {
            let (tok, at) = lx.next_token()?;
            let end = tok == Tok::End;
            out.push((tok, at));
            if end {
                return Ok(out);
            }
        }
    }

    fn peek_byte(&self) -> Option<u8> {
        self.src.as_bytes().get(self.pos).copied()
    }

    fn next_token(&mut self) -> Result<(Tok, usize), ParseError> {
        while matches!(self.peek_byte(), Some(b) if b.is_ascii_whitespace()) {
            self.pos += 1;
        }
        let start = self.pos;
        let Some(b) = self.peek_byte() else {
            return Ok((Tok::End, start));
        };
        if b.is_ascii_digit() || b == b'.' {
            return self.number(start);
        }
        if b.is_ascii_alphabetic() || b == b'_' {
            while matches!(self.peek_byte(), Some(c) if c.is_ascii_alphanumeric() || c == b'_') {
                self.pos += 1;
            }
            return Ok((Tok::Ident(self.src[start..self.pos].to_string()), start));
        }
        if b"+-*/^()".contains(&b) {
            self.pos += 1;
            return Ok((Tok::Sym(b as char), start));
        }
        let ch = self.src[start..].chars().next().unwrap_or('?');
        Err(ParseError::Syntax {
            offset: start,
            message: format!("unexpected character `{ch}`"),
        })
    }

    fn number(&mut self, start: usize) -> Result<(Tok, usize), ParseError> {
        let digits = |lx: &mut Self| {
            let s = lx.pos;
            while matches!(lx.peek_byte(), Some(c) if c.is_ascii_digit()) {
                lx.pos += 1;
            }
            lx.pos > s
        };
        let mut any = digits(self);
        if self.peek_byte() == Some(b'.') {
            self.pos += 1;
            any |= digits(self);
        }
        if any && matches!(self.peek_byte(), Some(b'e' | b'E')) {
            let save = self.pos;
            self.pos += 1;
            if matches!(self.peek_byte(), Some(b'+' | b'-')) {
                self.pos += 1;
            }
            if !digits(self) {
                self.pos = save;
            }
        }
        let text = &self.src[start..self.pos];
        match text.parse::<f64>() {
            Ok(v) if any => Ok((Tok::Num(v), start)),
            _ => Err(ParseError::Syntax {
                offset: start,
                message: format!("malformed number `{text}`"),
            }),
        }
    }
}

struct Parser<'c> {
    toks: Vec<(Tok, usize)>,
    at: usize,
    coords: &'c [&'c str],
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn offset(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.at].clone();
        if t.0 != Tok::End {
            self.at += 1;
        }
        t
    }

    fn syntax<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            offset: self.offset(),
            message: message.into(),
        })
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            Ok(())
        } else {
            self.syntax(format!("expected `{c}`"))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Sym('+') => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Tok::Sym('-') => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Tok::Sym('*') => {
                    self.bump();
                    acc = acc.mul(&self.factor()?);
                }
                Tok::Sym('/') => {
                    self.bump();
                    acc = acc.div(&self.factor()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.base()?;
        if *self.peek() != Tok::Sym('^') {
            return Ok(base);
        }
        self.bump();
        let negative = if *self.peek() == Tok::Sym('-') {
            self.bump();
            true
        } else {
            false
        };
        let at = self.offset();
        match self.bump().0 {
            Tok::Num(v) if v.fract() == 0.0 && v <= i32::MAX as f64 => {
                let k = v as i32;
                Ok(base.powi(if negative { -k } else { k }))
            }
            _ => Err(ParseError::Syntax {
                offset: at,
                message: "exponent must be an integer".into(),
            }),
        }
    }

    fn base(&mut self) -> Result<Expr, ParseError> {
        let (tok, at) = self.bump();
        match tok {
            Tok::Num(v) => Ok(Expr::constant(v)),
            Tok::Sym('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Ident(name) => {
                if let Some(i) = self.coords.iter().position(|c| *c == name) {
                    if *self.peek() != Tok::Sym('(') {
                        return Ok(Expr::var(i));
                    }
                }
                let func: Option<fn(&Expr) -> Expr> = match name.as_str() {
                    "sin" => Some(Expr::sin),
                    "cos" => Some(Expr::cos),
                    "exp" => Some(Expr::exp),
                    "log" => Some(Expr::ln),
                    "sqrt" => Some(Expr::sqrt),
                    "neg" => Some(Expr::neg),
                    _ => None,
                };
                match func {
                    Some(f) => {
                        self.expect('(')?;
                        let arg = self.expr()?;
                        self.expect(')')?;
                        Ok(f(&arg))
                    }
                    None => Err(ParseError::UnknownIdentifier { name, offset: at }),
                }
            }
            Tok::End => Err(ParseError::Syntax {
                offset: at,
                message: "unexpected end of input".into(),
            }),
            Tok::Sym(c) => Err(ParseError::Syntax {
                offset: at,
                message: format!("unexpected `{c}`"),
            }),
        }
    }
}

/// Parses `text` against the declared coordinate names; `Var(i)` refers to `coords[i]`.
pub fn parse(text: &str, coords: &[impl AsRef<str>]) -> Result<Expr, ParseError> {
    let names: Vec<&str> = coords.iter().map(AsRef::as_ref).collect();
    let mut p = Parser {
        toks: Lexer::tokens(text)?,
        at: 0,
        coords: &names,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.syntax("trailing input");
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar_base_case() {
        let e = parse("x1 + 2*x2", &["x1", "x2"]).unwrap();
        let want = Expr::var(0).add(&Expr::constant(2.0).mul(&Expr::var(1)));
        assert_eq!(e, want);
    }

    #[test]
    fn truncated_input_reports_offset() {
        let err = parse("x1 +", &["x1"]).unwrap_err();
        assert!(
            matches!(err, ParseError::Syntax { offset: 4, .. }),
            "{err:?}"
        );
    }

    #[test]
    fn undeclared_symbol() {
        let err = parse("sin(q)*p", &["x1"]).unwrap_err();
        assert_eq!(
            err,
            ParseError::UnknownIdentifier {
                name: "q".into(),
                offset: 4
            }
        );
    }

    #[test]
    fn other_syntax_errors() {
        assert!(matches!(
            parse("x^1.5", &["x"]),
            Err(ParseError::Syntax { offset: 2, .. })
        ));
        assert!(matches!(
            parse("(x", &["x"]),
            Err(ParseError::Syntax { offset: 2, .. })
        ));
        assert!(matches!(
            parse("x $", &["x"]),
            Err(ParseError::Syntax { offset: 2, .. })
        ));
        assert!(matches!(
            parse("x y", &["x", "y"]),
            Err(ParseError::Syntax { offset: 2, .. })
        ));
        assert!(matches!(
            parse("sin x", &["x"]),
            Err(ParseError::Syntax { offset: 4, .. })
        ));
    }

    #[test]
    fn numbers_and_exponents() {
        let e = parse("1.5e-3 * x^-2 + .25", &["x"]).unwrap();
        let v = e.eval(&[2.0]).unwrap();
        assert!((v - (1.5e-3 / 4.0 + 0.25)).abs() < 1e-15);
    }

    #[test]
    fn subtraction_is_left_associative() {
        let e = parse("x - y - z", &["x", "y", "z"]).unwrap();
        assert_eq!(e.eval(&[1.0, 2.0, 3.0]).unwrap(), -4.0);
        let e = parse("x / y / z", &["x", "y", "z"]).unwrap();
        assert_eq!(e.eval(&[12.0, 2.0, 3.0]).unwrap(), 2.0);
    }

    #[test]
    fn print_round_trip_corpus() {
        let coords = ["x", "y", "z"];
        let corpus = [
            "x + 2*y",
            "x - (y - z)",
            "x/(y*z)",
            "(x+y)^3",
            "neg(x)^2",
            "neg(3)*x",
            "x^-2 - y^2",
            "sin(x)*cos(y)/exp(z)",
            "log(1+x^2) - sqrt(y*y + 1)",
            "0.1*x + 1e-7*y",
            "x - neg(y)",
            "((x))",
            "x*(y/z)",
            "(x/y)*z",
        ];
        for s in corpus {
            let e = parse(s, &coords).unwrap();
            let printed = e.to_string_with(&coords);
            let again = parse(&printed, &coords).unwrap();
            assert_eq!(e, again, "{s} -> {printed}");
        }
    }
}
