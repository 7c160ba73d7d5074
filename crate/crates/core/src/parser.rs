//! Text DSL for abstract Hamiltonians.
//!
//! ```text
//! expr      := term (('+'|'-') term)*
//! term      := factor (('*' | 'ox' | '⊗') factor)*
//! factor    := ['-'] (scalar | generator | bracket | 'adj' '(' expr ')' | '(' expr ')')
//! bracket   := '[' expr ',' expr ']'
//! generator := 'E' '(' int ',' int ')' | 'H' '(' int ')'
//! scalar    := decimal literal with optional trailing 'i'
//! ```
//!
//! `*` multiplies by a scalar and needs a degree-0 operand on one side; `ox`
//! is the tensor product. Brackets evaluate to the Lie bracket and accept only
//! elements of the Lie algebra. `#` starts a comment running to end of line.

use crate::error::{Error, Result};
use crate::lie::{commutator, AlgebraSpec, Generator};
use crate::operator::AbstractOperator;
use crate::C64;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(f64, bool),
    Ident(String),
    Int(usize),
    Plus,
    Minus,
    Star,
    Tensor,
    LParen,
    RParen,
    LBrack,
    RBrack,
    Comma,
    End,
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn err(&self, pos: usize, msg: impl Into<String>) -> Error {
        Error::Parse { pos, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        let bytes = self.src.as_bytes();
        while self.pos < bytes.len() {
            match bytes[self.pos] {
                b' ' | b'\t' | b'\n' | b'\r' => self.pos += 1,
                b'#' => {
                    while self.pos < bytes.len() && bytes[self.pos] != b'\n' {
                        self.pos += 1;
                    }
                }
                _ => break,
            }
        }
    }

    fn next(&mut self) -> Result<(usize, Tok)> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[self.pos..];
        let Some(ch) = rest.chars().next() else {
            return Ok((start, Tok::End));
        };
        let simple = match ch {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '⊗' => Some(Tok::Tensor),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '[' => Some(Tok::LBrack),
            ']' => Some(Tok::RBrack),
            ',' => Some(Tok::Comma),
            _ => None,
        };
        if let Some(t) = simple {
            self.pos += ch.len_utf8();
            return Ok((start, t));
        }
        if ch.is_ascii_digit() || ch == '.' {
            return self.number(start);
        }
        if ch.is_ascii_alphabetic() {
            let len = rest.find(|c: char| !c.is_ascii_alphanumeric() && c != '_').unwrap_or(rest.len());
            self.pos += len;
            let word = &rest[..len];
            if word == "ox" {
                return Ok((start, Tok::Tensor));
            }
            return Ok((start, Tok::Ident(word.to_string())));
        }
        Err(self.err(start, format!("unexpected character {ch:?}")))
    }

    fn number(&mut self, start: usize) -> Result<(usize, Tok)> {
        let bytes = self.src.as_bytes();
        let mut end = self.pos;
        let digits = |end: &mut usize| {
            let s = *end;
            while *end < bytes.len() && bytes[*end].is_ascii_digit() {
                *end += 1;
            }
            *end > s
        };
        let int_part = digits(&mut end);
        let mut is_int = true;
        if end < bytes.len() && bytes[end] == b'.' {
            end += 1;
            is_int = false;
            let frac = digits(&mut end);
            if !int_part && !frac {
                return Err(self.err(start, "malformed number"));
            }
        }
        if end < bytes.len() && (bytes[end] == b'e' || bytes[end] == b'E') {
            let mut look = end + 1;
            if look < bytes.len() && (bytes[look] == b'+' || bytes[look] == b'-') {
                look += 1;
            }
            if look < bytes.len() && bytes[look].is_ascii_digit() {
                end = look;
                digits(&mut end);
                is_int = false;
            }
        }
        let text = &self.src[start..end];
        let imaginary = end < bytes.len() && bytes[end] == b'i' && {
            let after = end + 1;
            after >= bytes.len() || !(bytes[after].is_ascii_alphanumeric() || bytes[after] == b'_')
        };
        if imaginary {
            end += 1;
        }
        self.pos = end;
        if is_int && !imaginary {
            if let Ok(n) = text.parse::<usize>() {
                return Ok((start, Tok::Int(n)));
            }
        }
        let v: f64 = text.parse().map_err(|_| self.err(start, format!("malformed number {text:?}")))?;
        Ok((start, Tok::Num(v, imaginary)))
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    tok: Tok,
    tok_pos: usize,
    spec: AlgebraSpec,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, spec: AlgebraSpec) -> Result<Self> {
        let mut lexer = Lexer { src, pos: 0 };
        let (tok_pos, tok) = lexer.next()?;
        Ok(Self { lexer, tok, tok_pos, spec })
    }

    fn bump(&mut self) -> Result<()> {
        let (p, t) = self.lexer.next()?;
        self.tok = t;
        self.tok_pos = p;
        Ok(())
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse { pos: self.tok_pos, msg: msg.into() }
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        if self.tok == t {
            self.bump()
        } else {
            Err(self.err(format!("expected {what}, found {:?}", self.tok)))
        }
    }

    fn expr(&mut self) -> Result<AbstractOperator> {
        let mut acc = self.term()?;
        loop {
            match self.tok {
                Tok::Plus => {
                    self.bump()?;
                    acc = acc.add(&self.term()?)?;
                }
                Tok::Minus => {
                    self.bump()?;
                    acc = acc.sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<AbstractOperator> {
        let mut acc = self.factor()?;
        loop {
            match self.tok {
                Tok::Star => {
                    let pos = self.tok_pos;
                    self.bump()?;
                    let rhs = self.factor()?;
                    acc = if acc.degree() == 0 {
                        rhs.scale(acc.scalar())
                    } else if rhs.degree() == 0 {
                        acc.scale(rhs.scalar())
                    } else {
                        return Err(Error::Parse {
                            pos,
                            msg: "'*' needs a scalar operand; use 'ox' for tensor products".into(),
                        });
                    };
                }
                Tok::Tensor => {
                    self.bump()?;
                    acc = acc.tensor(&self.factor()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn index(&mut self) -> Result<usize> {
        match self.tok {
            Tok::Int(n) => {
                self.bump()?;
                Ok(n)
            }
            _ => Err(self.err(format!("expected an integer index, found {:?}", self.tok))),
        }
    }

    fn factor(&mut self) -> Result<AbstractOperator> {
        let spec = self.spec;
        match self.tok.clone() {
            Tok::Minus => {
                self.bump()?;
                Ok(self.factor()?.scale(C64::new(-1.0, 0.0)))
            }
            Tok::Num(v, imag) => {
                self.bump()?;
                let c = if imag { C64::new(0.0, v) } else { C64::new(v, 0.0) };
                Ok(AbstractOperator::scalar_op(spec, c))
            }
            Tok::Int(n) => {
                self.bump()?;
                Ok(AbstractOperator::scalar_op(spec, C64::new(n as f64, 0.0)))
            }
            Tok::LParen => {
                self.bump()?;
                let e = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Tok::LBrack => {
                let pos = self.tok_pos;
                self.bump()?;
                let a = self.expr()?;
                self.expect(Tok::Comma, "','")?;
                let b = self.expr()?;
                self.expect(Tok::RBrack, "']'")?;
                if !a.is_lie_element() || !b.is_lie_element() {
                    return Err(Error::Parse {
                        pos,
                        msg: "bracket arguments must be nonzero degree-1 elements of the Lie algebra".into(),
                    });
                }
                let m = commutator(&a.lie_matrix()?, &b.lie_matrix()?)?;
                AbstractOperator::from_matrix(spec, &m)
            }
            Tok::Ident(word) => {
                let pos = self.tok_pos;
                self.bump()?;
                let generator = match word.as_str() {
                    "adj" => {
                        self.expect(Tok::LParen, "'(' after adj")?;
                        let e = self.expr()?;
                        self.expect(Tok::RParen, "')'")?;
                        return Ok(e.formal_adjoint());
                    }
                    "E" => {
                        self.expect(Tok::LParen, "'('")?;
                        let k = self.index()?;
                        self.expect(Tok::Comma, "','")?;
                        let l = self.index()?;
                        self.expect(Tok::RParen, "')'")?;
                        Generator::E(k, l)
                    }
                    "H" => {
                        self.expect(Tok::LParen, "'('")?;
                        let k = self.index()?;
                        self.expect(Tok::RParen, "')'")?;
                        Generator::H(k)
                    }
                    other => return Err(Error::Parse { pos, msg: format!("unknown generator {other:?}") }),
                };
                if let Err(e) = spec.validate(generator) {
                    return Err(Error::Parse { pos, msg: e.to_string() });
                }
                AbstractOperator::generator(spec, generator)
            }
            other => Err(self.err(format!("unexpected token {other:?}"))),
        }
    }
}

/// Parse DSL text into an abstract operator over `spec`.
pub fn parse_hamiltonian(text: &str, spec: &AlgebraSpec) -> Result<AbstractOperator> {
    let mut p = Parser::new(text, *spec)?;
    if p.tok == Tok::End {
        return Err(p.err("empty expression"));
    }
    let op = p.expr()?;
    if p.tok != Tok::End {
        return Err(p.err(format!("trailing input starting with {:?}", p.tok)));
    }
    Ok(op)
}
