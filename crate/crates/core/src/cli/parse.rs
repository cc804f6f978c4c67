use num_bigint::BigInt;
use num_traits::Zero;

use super::ParseError;
use crate::algebra::{CPolynomial, Coefficient, NMonomial, Polynomial, XTerm, YMonomial};
use crate::embed::Presentation;
use crate::order::{Alphabet, OrderContext};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Slash,
    Caret,
    Open,
    Close,
    Plus,
    Minus,
    End,
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
}

impl Lexer {
    fn new(text: &str, line: usize, col0: usize) -> Result<Self, ParseError> {
        let chars: Vec<char> = text.chars().collect();
        let mut toks = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let col = col0 + i;
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            let single = match c {
                '/' => Some(Tok::Slash),
                '^' => Some(Tok::Caret),
                '(' => Some(Tok::Open),
                ')' => Some(Tok::Close),
                '+' => Some(Tok::Plus),
                '-' | '\u{2212}' => Some(Tok::Minus),
                _ => None,
            };
            if let Some(t) = single {
                toks.push((t, col));
                i += 1;
            } else if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                toks.push((Tok::Int(s.parse().unwrap()), col));
            } else if c.is_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                toks.push((Tok::Ident(chars[start..i].iter().collect()), col));
            } else {
                return Err(ParseError {
                    line,
                    column: col,
                    message: format!("unexpected character `{c}`"),
                });
            }
        }
        toks.push((Tok::End, col0 + chars.len()));
        Ok(Lexer { toks, pos: 0, line })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn col(&self) -> usize {
        self.toks[self.pos].1
    }

    fn next(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            column: self.col(),
            message: message.into(),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Mixed,
    Commutative,
}

struct Terms<'a> {
    lex: Lexer,
    ctx: &'a OrderContext,
}

impl Terms<'_> {
    fn coefficient(&mut self) -> Result<Option<Coefficient>, ParseError> {
        let Tok::Int(num) = self.lex.peek().clone() else {
            return Ok(None);
        };
        self.lex.next();
        if *self.lex.peek() != Tok::Slash {
            return Ok(Some(Coefficient::from_integer(num)));
        }
        self.lex.next();
        match self.lex.next() {
            Tok::Int(den) if !den.is_zero() => Ok(Some(Coefficient::new(num, den))),
            Tok::Int(_) => {
                self.lex.pos -= 1;
                Err(self.lex.error("zero denominator"))
            }
            _ => {
                self.lex.pos -= 1;
                Err(self.lex.error("expected a denominator"))
            }
        }
    }

    fn ymonomial(&mut self) -> Result<YMonomial, ParseError> {
        let mut y = YMonomial::one();
        while let Tok::Ident(name) = self.lex.peek().clone() {
            let Some(g) = self.ctx.y.rank(&name) else { break };
            self.lex.next();
            let mut e = 1u32;
            if *self.lex.peek() == Tok::Caret {
                self.lex.next();
                match self.lex.peek().clone() {
                    Tok::Int(n) => match u32::try_from(n) {
                        Ok(n) if n > 0 => {
                            e = n;
                            self.lex.next();
                        }
                        _ => return Err(self.lex.error("exponent must be a positive integer")),
                    },
                    _ => return Err(self.lex.error("expected an exponent")),
                }
            }
            y = y.mul(&YMonomial::power(g, e));
        }
        Ok(y)
    }

    fn xword(&mut self) -> Result<XTerm, ParseError> {
        match self.lex.peek().clone() {
            Tok::Ident(name) => match self.ctx.x.rank(&name) {
                Some(g) => {
                    self.lex.next();
                    Ok(XTerm::leaf(g))
                }
                None if self.ctx.y.contains(&name) => {
                    Err(self.lex.error(format!("coefficient variable `{name}` inside an X-word")))
                }
                None => Err(self.lex.error(format!("unknown generator `{name}`"))),
            },
            Tok::Open => {
                self.lex.next();
                let l = self.xword()?;
                let r = self.xword()?;
                match self.lex.peek() {
                    Tok::Close => {
                        self.lex.next();
                        Ok(XTerm::node(l, r))
                    }
                    Tok::Ident(_) | Tok::Open => Err(self.lex.error("product must be parenthesized")),
                    _ => Err(self.lex.error("expected `)`")),
                }
            }
            Tok::Close => Err(self.lex.error("unbalanced `)`")),
            Tok::End => Err(self.lex.error("expected an X-word")),
            _ => Err(self.lex.error("expected an X-word")),
        }
    }

    /// One signed-sum of terms up to the end of input.
    fn sum(&mut self, mode: Mode) -> Result<Vec<(YMonomial, Option<XTerm>, Coefficient)>, ParseError> {
        let mut out = Vec::new();
        let mut first = true;
        loop {
            let mut negative = false;
            match self.lex.peek() {
                Tok::Plus => {
                    self.lex.next();
                }
                Tok::Minus => {
                    self.lex.next();
                    negative = true;
                }
                Tok::End if first => return Err(self.lex.error("expected a term")),
                _ if first => {}
                Tok::Ident(_) | Tok::Open if mode == Mode::Mixed => {
                    return Err(self.lex.error("product must be parenthesized"))
                }
                Tok::Ident(name) => {
                    let name = name.clone();
                    return Err(self.lex.error(format!("unknown generator `{name}`")));
                }
                _ => return Err(self.lex.error("expected `+` or `-`")),
            }
            first = false;
            let start = self.lex.col();
            let c = self.coefficient()?;
            let y = self.ymonomial()?;
            let x = match mode {
                Mode::Mixed => Some(self.xword()?),
                Mode::Commutative => {
                    if c.is_none() && y.is_one() {
                        return Err(match self.lex.peek() {
                            Tok::Ident(name) => {
                                let name = name.clone();
                                self.lex.error(format!("unknown generator `{name}`"))
                            }
                            _ => ParseError {
                                line: self.lex.line,
                                column: start,
                                message: "expected a term".into(),
                            },
                        });
                    }
                    None
                }
            };
            let mut c = c.unwrap_or_else(|| Coefficient::from_integer(1.into()));
            if negative {
                c = -c;
            }
            out.push((y, x, c));
            if *self.lex.peek() == Tok::End {
                return Ok(out);
            }
        }
    }
}

fn mixed(ctx: &OrderContext, text: &str, line: usize, col0: usize) -> Result<Polynomial, ParseError> {
    let mut t = Terms {
        lex: Lexer::new(text, line, col0)?,
        ctx,
    };
    Ok(t.sum(Mode::Mixed)?
        .into_iter()
        .map(|(y, x, c)| (NMonomial::new(y, x.unwrap()), c))
        .collect())
}

fn commutative(ctx: &OrderContext, text: &str, line: usize, col0: usize) -> Result<CPolynomial, ParseError> {
    let mut t = Terms {
        lex: Lexer::new(text, line, col0)?,
        ctx,
    };
    Ok(t.sum(Mode::Commutative)?.into_iter().map(|(y, _, c)| (y, c)).collect())
}

/// An element of `k[Y](X)` over the given alphabets; zero is allowed.
pub fn parse_polynomial(ctx: &OrderContext, text: &str) -> Result<Polynomial, ParseError> {
    mixed(ctx, text, 1, 1)
}

pub fn parse_presentation(text: &str) -> Result<Presentation, ParseError> {
    let mut x: Option<Alphabet> = None;
    let mut y: Option<Alphabet> = None;
    let mut field_seen = false;
    let mut ctx: Option<OrderContext> = None;
    let mut pres: Option<Presentation> = None;

    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        };
        if content.trim().is_empty() {
            continue;
        }
        let lead = content.chars().take_while(|c| c.is_whitespace()).count() + 1;
        let Some(colon) = content.find(':') else {
            return Err(ParseError {
                line,
                column: lead,
                message: "expected `key: value`".into(),
            });
        };
        let key = content[..colon].trim();
        let rest = &content[colon + 1..];
        let col0 = content[..colon + 1].chars().count() + 1;
        let err = |column: usize, message: String| ParseError { line, column, message };
        match key {
            "field" => {
                if field_seen {
                    return Err(err(lead, "duplicate `field` line".into()));
                }
                field_seen = true;
                if rest.trim() != "Q" {
                    return Err(err(col0, format!("unsupported field `{}`; only Q", rest.trim())));
                }
            }
            "xvars" | "yvars" => {
                if pres.is_some() {
                    return Err(err(lead, format!("`{key}` must precede all relations")));
                }
                let slot = if key == "xvars" { &mut x } else { &mut y };
                if slot.is_some() {
                    return Err(err(lead, format!("duplicate `{key}` line")));
                }
                let mut alpha = Alphabet::default();
                if !rest.trim().is_empty() {
                    let mut col = col0;
                    for part in rest.split('>') {
                        let name = part.trim();
                        let at = col + part.chars().take_while(|c| c.is_whitespace()).count();
                        let valid = name.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_')
                            && name.chars().all(|c| c.is_alphanumeric() || c == '_');
                        if !valid {
                            return Err(err(at, format!("invalid generator name `{name}`")));
                        }
                        if alpha.push(name.to_string()).is_err() {
                            return Err(err(at, format!("duplicate generator `{name}`")));
                        }
                        col += part.chars().count() + 1;
                    }
                }
                *slot = Some(alpha);
            }
            "rel" | "crel" => {
                if ctx.is_none() {
                    let xa = x.clone().unwrap_or_default();
                    let ya = y.clone().unwrap_or_default();
                    if let Some(clash) = xa.names().iter().find(|n| ya.contains(n)) {
                        return Err(err(lead, format!("duplicate generator `{clash}`")));
                    }
                    let c = OrderContext::new(xa, ya).expect("clash checked");
                    pres = Some(Presentation::new(c.clone()));
                    ctx = Some(c);
                }
                let c = ctx.as_ref().unwrap();
                let p = pres.as_mut().unwrap();
                if key == "rel" {
                    let f = mixed(c, rest, line, col0)?;
                    if f.is_zero() {
                        return Err(err(col0, "zero relation".into()));
                    }
                    p.rels.push(f);
                } else {
                    let g = commutative(c, rest, line, col0)?;
                    if g.is_zero() {
                        return Err(err(col0, "zero relation".into()));
                    }
                    p.crels.push(g);
                }
            }
            _ => return Err(err(lead, format!("unknown directive `{key}`"))),
        }
    }
    match pres {
        Some(p) => Ok(p),
        None => {
            let xa = x.unwrap_or_default();
            let ya = y.unwrap_or_default();
            if let Some(clash) = xa.names().iter().find(|n| ya.contains(n)) {
                return Err(ParseError {
                    line: 1,
                    column: 1,
                    message: format!("duplicate generator `{clash}`"),
                });
            }
            Ok(Presentation::new(OrderContext::new(xa, ya).expect("clash checked")))
        }
    }
}
