//! Recursive-descent parser for eta-quotient expressions.
//!
//! ```text
//! expr   := term (("+"|"-") term)* ;
//! term   := unary (("*"|"/") unary)* ;
//! unary  := "-" unary | factor ;
//! factor := base ("^" sint)? ;
//! base   := "f" uint | "P(" uint "," uint ")" | "R" | "q" | uint
//!         | "(" expr ")" | "sub(" expr "," uint ")" ;
//! sint   := "-"? uint ;
//! ```
//!
//! `^` binds tighter than unary minus and is non-associative.

use thiserror::Error;

use super::EtaExpr;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("integer literal at {pos} does not fit in 64 bits")]
    Overflow { pos: usize },
    #[error("invalid atom at {pos}: {msg}")]
    InvalidAtom { pos: usize, msg: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Num(u64),
    Ident(String),
    Sym(char),
    End,
}

struct Lexer;

impl Lexer {
    fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
        let bytes = src.as_bytes();
        let mut out = Vec::new();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i] as char;
            if c.is_ascii_whitespace() {
                i += 1;
            } else if c.is_ascii_digit() {
                let start = i;
                let mut v: u64 = 0;
                let mut overflow = false;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    let d = (bytes[i] - b'0') as u64;
                    match v.checked_mul(10).and_then(|x| x.checked_add(d)) {
                        Some(x) => v = x,
                        None => overflow = true,
                    }
                    i += 1;
                }
                if overflow || v > i64::MAX as u64 {
                    return Err(ParseError::Overflow { pos: start });
                }
                out.push((start, Tok::Num(v)));
            } else if c.is_ascii_alphabetic() {
                let start = i;
                while i < bytes.len() && (bytes[i] as char).is_ascii_alphabetic() {
                    i += 1;
                }
                out.push((start, Tok::Ident(src[start..i].to_string())));
            } else if "+-*/^(),".contains(c) {
                out.push((i, Tok::Sym(c)));
                i += 1;
            } else {
                let ch = src[i..].chars().next().unwrap_or('?');
                return Err(ParseError::Syntax {
                    pos: i,
                    msg: format!("unexpected character '{ch}'"),
                });
            }
        }
        out.push((src.len(), Tok::End));
        Ok(out)
    }
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn syntax<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn describe(t: &Tok) -> String {
        match t {
            Tok::Num(v) => format!("number {v}"),
            Tok::Ident(s) => format!("'{s}'"),
            Tok::Sym(c) => format!("'{c}'"),
            Tok::End => "end of input".to_string(),
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            Ok(())
        } else {
            self.syntax(format!("expected '{c}', found {}", Self::describe(self.peek())))
        }
    }

    fn uint(&mut self) -> Result<u64, ParseError> {
        match self.peek().clone() {
            Tok::Num(v) => {
                self.bump();
                Ok(v)
            }
            t => self.syntax(format!("expected an integer, found {}", Self::describe(&t))),
        }
    }

    fn expr(&mut self) -> Result<EtaExpr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Sym('+') => {
                    self.bump();
                    lhs = EtaExpr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Sym('-') => {
                    self.bump();
                    lhs = EtaExpr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<EtaExpr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Tok::Sym('*') => {
                    self.bump();
                    lhs = EtaExpr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Tok::Sym('/') => {
                    self.bump();
                    lhs = EtaExpr::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<EtaExpr, ParseError> {
        if *self.peek() == Tok::Sym('-') {
            self.bump();
            return Ok(EtaExpr::Neg(Box::new(self.unary()?)));
        }
        self.factor()
    }

    fn factor(&mut self) -> Result<EtaExpr, ParseError> {
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
        let e = self.uint()? as i64;
        if *self.peek() == Tok::Sym('^') {
            return self.syntax("'^' is non-associative; use parentheses for towers");
        }
        Ok(EtaExpr::Pow(Box::new(base), if negative { -e } else { e }))
    }

    fn base(&mut self) -> Result<EtaExpr, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Tok::Num(v) => Ok(EtaExpr::Int(v as i64)),
            Tok::Sym('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Ident(name) => match name.as_str() {
                "f" => {
                    let k = self.uint()?;
                    if k == 0 {
                        return Err(ParseError::InvalidAtom {
                            pos,
                            msg: "f_k needs k >= 1".into(),
                        });
                    }
                    Ok(EtaExpr::Fk(k))
                }
                "P" => {
                    self.expect('(')?;
                    let a = self.uint()?;
                    self.expect(',')?;
                    let b = self.uint()?;
                    self.expect(')')?;
                    if a == 0 || a > b {
                        return Err(ParseError::InvalidAtom {
                            pos,
                            msg: format!("P({a},{b}) needs 1 <= a <= b"),
                        });
                    }
                    Ok(EtaExpr::Pochhammer { a, b })
                }
                "R" => Ok(EtaExpr::Rogers),
                "q" => Ok(EtaExpr::Q),
                "sub" => {
                    self.expect('(')?;
                    let inner = self.expr()?;
                    self.expect(',')?;
                    let k = self.uint()?;
                    self.expect(')')?;
                    if k == 0 {
                        return Err(ParseError::InvalidAtom {
                            pos,
                            msg: "sub(e, k) needs k >= 1".into(),
                        });
                    }
                    Ok(EtaExpr::Subst(Box::new(inner), k))
                }
                other => Err(ParseError::Syntax {
                    pos,
                    msg: format!("unknown name '{other}'"),
                }),
            },
            t => Err(ParseError::Syntax {
                pos,
                msg: format!("unexpected {}", Self::describe(&t)),
            }),
        }
    }
}

/// Parses an expression such as `"f5^20/f1^4"` or `"sub(R,5)^-4"`.
pub fn parse_expr(text: &str) -> Result<EtaExpr, ParseError> {
    let toks = Lexer::tokenize(text)?;
    let mut p = Parser { toks, at: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.syntax(format!("unexpected {}", Parser::describe(p.peek())));
    }
    Ok(e)
}
