use crate::error::ParseError;

use super::{invert_word, Letter, Presentation};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Num(i64),
    Colon,
    Semi,
    Comma,
    Star,
    Caret,
    Eq,
    LBracket,
    RBracket,
    LParen,
    RParen,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (tl, tc) = (line, col);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        };
        match c {
            '#' => {
                while let Some(&c) = chars.peek() {
                    bump(&mut chars);
                    if c == '\n' {
                        break;
                    }
                }
            }
            c if c.is_whitespace() => {
                bump(&mut chars);
            }
            ':' | ';' | ',' | '*' | '^' | '=' | '[' | ']' | '(' | ')' => {
                bump(&mut chars);
                let tok = match c {
                    ':' => Tok::Colon,
                    ';' => Tok::Semi,
                    ',' => Tok::Comma,
                    '*' => Tok::Star,
                    '^' => Tok::Caret,
                    '=' => Tok::Eq,
                    '[' => Tok::LBracket,
                    ']' => Tok::RBracket,
                    '(' => Tok::LParen,
                    _ => Tok::RParen,
                };
                out.push(Spanned { tok, line: tl, col: tc });
            }
            c if c.is_ascii_digit() || c == '-' => {
                let mut s = String::new();
                s.push(bump(&mut chars));
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        s.push(bump(&mut chars));
                    } else {
                        break;
                    }
                }
                let n: i64 = s
                    .parse()
                    .map_err(|_| ParseError::new(tl, tc, format!("bad integer `{s}`")))?;
                out.push(Spanned { tok: Tok::Num(n), line: tl, col: tc });
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        s.push(bump(&mut chars));
                    } else {
                        break;
                    }
                }
                out.push(Spanned { tok: Tok::Ident(s), line: tl, col: tc });
            }
            other => {
                return Err(ParseError::new(tl, tc, format!("unexpected character `{other}`")));
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [Spanned],
    pos: usize,
    gens: Vec<String>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .or_else(|| self.toks.last())
            .map(|s| (s.line, s.col))
            .unwrap_or((1, 1))
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        let (l, c) = self.here();
        ParseError::new(l, c, msg)
    }

    fn next(&mut self) -> Option<&Tok> {
        let t = self.toks.get(self.pos).map(|s| &s.tok);
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), ParseError> {
        match self.peek() {
            Some(t) if *t == want => {
                self.pos += 1;
                Ok(())
            }
            Some(t) => Err(self.err(format!("expected {what}, found {t:?}"))),
            None => Err(self.err(format!("expected {what}, found end of input"))),
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) if s == kw => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.err(format!("expected `{kw}`"))),
        }
    }

    fn gen_index(&self, name: &str) -> Result<u16, ParseError> {
        self.gens
            .iter()
            .position(|g| g == name)
            .map(|i| i as u16)
            .ok_or_else(|| self.err(format!("unknown generator name `{name}`")))
    }

    /// word := factor (`*` factor)*
    fn word(&mut self) -> Result<Vec<Letter>, ParseError> {
        let mut letters = self.factor()?;
        while matches!(self.peek(), Some(Tok::Star)) {
            self.pos += 1;
            letters.extend(self.factor()?);
        }
        Ok(letters)
    }

    /// factor := atom (`^` int)?
    fn factor(&mut self) -> Result<Vec<Letter>, ParseError> {
        let base = self.atom()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.pos += 1;
            let exp = match self.next() {
                Some(&Tok::Num(n)) => n,
                _ => {
                    self.pos -= 1;
                    return Err(self.err("expected integer exponent after `^`"));
                }
            };
            let core = if exp < 0 { invert_word(&base) } else { base };
            let mut out = Vec::with_capacity(core.len() * exp.unsigned_abs() as usize);
            for _ in 0..exp.unsigned_abs() {
                out.extend_from_slice(&core);
            }
            Ok(out)
        } else {
            Ok(base)
        }
    }

    /// atom := `1` | name | `[` word `,` word `]` | `(` word `)`
    fn atom(&mut self) -> Result<Vec<Letter>, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Num(1)) => {
                self.pos += 1;
                Ok(Vec::new())
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let gen = self.gen_index(&name)?;
                Ok(vec![Letter { gen, inv: false }])
            }
            Some(Tok::LBracket) => {
                self.pos += 1;
                let u = self.word()?;
                self.expect(Tok::Comma, "`,` in commutator")?;
                let v = self.word()?;
                self.expect(Tok::RBracket, "closing `]`")?;
                let mut out = u.clone();
                out.extend_from_slice(&v);
                out.extend(invert_word(&u));
                out.extend(invert_word(&v));
                Ok(out)
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let w = self.word()?;
                self.expect(Tok::RParen, "closing `)`")?;
                Ok(w)
            }
            _ => Err(self.err("expected a generator, `1`, `[`, or `(`")),
        }
    }
}

/// Parses the presentation grammar described in the module docs.
pub fn parse_presentation(text: &str) -> Result<Presentation, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks: &toks, pos: 0, gens: Vec::new() };

    p.expect_keyword("gens")?;
    p.expect(Tok::Colon, "`:`")?;
    loop {
        match p.next().cloned() {
            Some(Tok::Ident(name)) => {
                if name == "gens" || name == "rel" {
                    p.pos -= 1;
                    return Err(p.err(format!("`{name}` is reserved")));
                }
                if p.gens.contains(&name) {
                    p.pos -= 1;
                    return Err(p.err(format!("duplicate generator `{name}`")));
                }
                p.gens.push(name);
            }
            _ => {
                p.pos -= 1;
                return Err(p.err("expected generator name"));
            }
        }
        match p.peek() {
            Some(Tok::Comma) => {
                p.pos += 1;
            }
            Some(Tok::Semi) => {
                p.pos += 1;
                break;
            }
            _ => return Err(p.err("expected `,` or `;` in generator list")),
        }
    }
    if p.gens.is_empty() {
        return Err(p.err("empty generator list"));
    }

    let mut relators = Vec::new();
    while p.peek().is_some() {
        p.expect_keyword("rel")?;
        p.expect(Tok::Colon, "`:`")?;
        let lhs = p.word()?;
        p.expect(Tok::Eq, "`=`")?;
        let rhs = p.word()?;
        p.expect(Tok::Semi, "`;`")?;
        let mut rel = lhs;
        rel.extend(invert_word(&rhs));
        relators.push(rel);
    }

    Ok(Presentation { generators: p.gens, relators })
}
