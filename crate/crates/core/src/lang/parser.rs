use super::ast::{Equation, Expr};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    /// Unsigned numeric literal with its source text.
    Num(f64, String),
    Ident(String),
    LParen,
    RParen,
    Comma,
    Plus,
    Minus,
    Star,
    Caret,
    Eq,
    End,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Num(_, s) => format!("number {s}"),
        Tok::Ident(s) => format!("'{s}'"),
        Tok::LParen => "'('".into(),
        Tok::RParen => "')'".into(),
        Tok::Comma => "','".into(),
        Tok::Plus => "'+'".into(),
        Tok::Minus => "'-'".into(),
        Tok::Star => "'*'".into(),
        Tok::Caret => "'^'".into(),
        Tok::Eq => "'='".into(),
        Tok::End => "end of input".into(),
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let simple = match c {
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            b',' => Some(Tok::Comma),
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'^' => Some(Tok::Caret),
            b'=' => Some(Tok::Eq),
            _ => None,
        };
        if let Some(t) = simple {
            out.push((start, t));
            i += 1;
        } else if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == b'.' {
            while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                i += 1;
            }
            if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                let mut j = i + 1;
                if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                    j += 1;
                }
                if j < bytes.len() && bytes[j].is_ascii_digit() {
                    while j < bytes.len() && bytes[j].is_ascii_digit() {
                        j += 1;
                    }
                    i = j;
                }
            }
            let s = &text[start..i];
            let v: f64 = s.parse().map_err(|_| Error::Syntax {
                pos: start,
                msg: format!("malformed number '{s}'"),
            })?;
            out.push((start, Tok::Num(v, s.to_string())));
        } else if c.is_ascii_alphabetic() || c == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(text[start..i].to_string())));
        } else {
            let ch = text[start..].chars().next().unwrap_or('?');
            return Err(Error::Unsupported {
                pos: start,
                found: format!("'{ch}'"),
            });
        }
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    lhs_order: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> (usize, Tok) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<()> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(Error::Syntax {
                pos: self.pos(),
                msg: format!(
                    "expected {}, found {}",
                    describe(&want),
                    describe(self.peek())
                ),
            })
        }
    }

    fn expect_ident(&mut self, name: &str) -> Result<()> {
        match self.peek() {
            Tok::Ident(s) if s == name => {
                self.bump();
                Ok(())
            }
            other => Err(Error::Syntax {
                pos: self.pos(),
                msg: format!("expected '{name}', found {}", describe(other)),
            }),
        }
    }

    fn integer(&mut self) -> Result<(usize, u64)> {
        let (pos, t) = self.bump();
        match t {
            Tok::Num(_, s) if s.bytes().all(|b| b.is_ascii_digit()) => {
                s.parse().map(|v| (pos, v)).map_err(|_| Error::Syntax {
                    pos,
                    msg: format!("integer '{s}' out of range"),
                })
            }
            other => Err(Error::Syntax {
                pos,
                msg: format!("expected integer, found {}", describe(&other)),
            }),
        }
    }

    /// Parses `(u, INT)` after a `D`.
    fn derivative_order(&mut self) -> Result<(usize, usize)> {
        self.expect(Tok::LParen)?;
        self.expect_ident("u")?;
        self.expect(Tok::Comma)?;
        let (pos, j) = self.integer()?;
        self.expect(Tok::RParen)?;
        if j == 0 {
            return Err(Error::Syntax {
                pos,
                msg: "derivative order must be at least 1".into(),
            });
        }
        let j = usize::try_from(j).map_err(|_| Error::Syntax {
            pos,
            msg: "derivative order too large".into(),
        })?;
        Ok((pos, j))
    }

    fn equation(&mut self) -> Result<Equation> {
        self.expect_ident("D")?;
        let (_, m) = self.derivative_order()?;
        self.lhs_order = m;
        self.expect(Tok::Eq)?;
        let rhs = self.expr()?;
        if *self.peek() != Tok::End {
            return Err(self.unexpected());
        }
        Ok(Equation { lhs_order: m, rhs })
    }

    fn unexpected(&self) -> Error {
        match self.peek() {
            Tok::Caret => Error::Unsupported {
                pos: self.pos(),
                found: "'^' (only x^INT is supported; use pow)".into(),
            },
            Tok::Eq => Error::Unsupported {
                pos: self.pos(),
                found: "'='".into(),
            },
            other => Error::Syntax {
                pos: self.pos(),
                msg: format!("unexpected {}", describe(other)),
            },
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            let rhs = self.factor()?;
            acc = fold_product(acc, rhs);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Expr> {
        let (pos, tok) = self.bump();
        match tok {
            Tok::Num(v, _) => Ok(Expr::Const(v)),
            Tok::Plus | Tok::Minus => match self.peek().clone() {
                Tok::Num(v, _) => {
                    self.bump();
                    Ok(Expr::Const(if tok == Tok::Minus { -v } else { v }))
                }
                _ => Err(Error::Unsupported {
                    pos,
                    found: format!("unary {} (write -1 * ...)", describe(&tok)),
                }),
            },
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Tok::Ident(name) => self.named(pos, &name),
            other => Err(Error::Syntax {
                pos,
                msg: format!("expected a factor, found {}", describe(&other)),
            }),
        }
    }

    fn named(&mut self, pos: usize, name: &str) -> Result<Expr> {
        match name {
            "x" => {
                if *self.peek() == Tok::Caret {
                    self.bump();
                    let (ipos, m) = self.integer()?;
                    let m = u32::try_from(m).map_err(|_| Error::Syntax {
                        pos: ipos,
                        msg: "exponent too large".into(),
                    })?;
                    Ok(Expr::XPow(m))
                } else {
                    Ok(Expr::Var)
                }
            }
            "u" => Ok(Expr::U),
            "D" => {
                let (_, j) = self.derivative_order()?;
                if j >= self.lhs_order {
                    return Err(Error::ImplicitForm {
                        pos,
                        found: j,
                        lhs: self.lhs_order,
                    });
                }
                Ok(Expr::Deriv(j))
            }
            "pow" => {
                self.expect(Tok::LParen)?;
                let base = self.expr()?;
                self.expect(Tok::Comma)?;
                let (ipos, m) = self.integer()?;
                self.expect(Tok::RParen)?;
                if m == 0 {
                    return Err(Error::Syntax {
                        pos: ipos,
                        msg: "pow exponent must be a positive integer".into(),
                    });
                }
                let m = u32::try_from(m).map_err(|_| Error::Syntax {
                    pos: ipos,
                    msg: "exponent too large".into(),
                })?;
                Ok(Expr::Pow(Box::new(base), m))
            }
            "exp" => {
                self.expect(Tok::LParen)?;
                let arg = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(Expr::Exp(Box::new(arg)))
            }
            other => Err(Error::Unsupported {
                pos,
                found: format!("'{other}'"),
            }),
        }
    }
}

/// Folds numeric literals of a product into `Const` / `Scale`.
fn fold_product(acc: Expr, rhs: Expr) -> Expr {
    match (acc, rhs) {
        (Expr::Const(a), Expr::Const(b)) => Expr::Const(a * b),
        (Expr::Const(c), e) => Expr::Scale(c, Box::new(e)),
        (Expr::Scale(c, e), Expr::Const(d)) => Expr::Scale(c * d, e),
        (e, Expr::Const(c)) => Expr::Scale(c, Box::new(e)),
        (a, b) => Expr::Mul(Box::new(a), Box::new(b)),
    }
}

/// Parses `D(u,m) = expr`. Errors carry the byte offset of the offending token.
pub fn parse(text: &str) -> Result<Equation> {
    let toks = lex(text)?;
    Parser {
        toks,
        at: 0,
        lhs_order: 0,
    }
    .equation()
}
