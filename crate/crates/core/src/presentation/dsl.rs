//! Text format for presentations.
//!
//! ```text
//! # comment
//! p=5 n=1 s=1
//! [y,x^2,y] = 0
//! [v(6),y,x] - [v(6),x,x] = 0
//! 2*[y,x,y,x] + [x,y^3] = [y,x^3,y]
//! ```
//!
//! The header carries `p` (required) and optionally `n`, `s`, `a`, `lambda`.
//! Each other non-blank line is one relator: signed, optionally scaled
//! left-normed words `[a1, a2, ...]` whose atoms are `x`, `y`, `x^k`, `y^k`
//! or `v(k)`. Atoms may be separated by commas or whitespace. An optional
//! right-hand side is moved to the left. `v(k)` expands with `q = p^n`.

use std::fmt;

use thiserror::Error;

use super::{v_word, Letter, Params, Presentation, PresentationError, Provenance, Relator, Word};
use crate::fp::PrimeField;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, Copy)]
enum Atom {
    Letter(Letter, usize),
    V(usize),
}

#[derive(Debug)]
struct Term {
    coeff: i64,
    atoms: Vec<Atom>,
    column: usize,
}

struct Cursor {
    chars: Vec<char>,
    pos: usize,
    line: usize,
}

impl Cursor {
    fn new(src: &str, line: usize) -> Self {
        Cursor {
            chars: src.chars().collect(),
            pos: 0,
            line,
        }
    }

    fn column(&self) -> usize {
        self.pos + 1
    }

    fn err(&self, message: impl Into<String>) -> ParseError {
        ParseError::new(self.line, self.column(), message)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }


    fn expect(&mut self, want: char) -> Result<(), ParseError> {
        match self.peek() {
            Some(c) if c == want => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => Err(self.err(format!("expected '{want}', found '{c}'"))),
            None => Err(self.err(format!("expected '{want}', found end of line"))),
        }
    }

    fn integer(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse()
            .map_err(|_| ParseError::new(self.line, start + 1, "integer out of range"))
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }
}

fn parse_bracket(cur: &mut Cursor) -> Result<Vec<Atom>, ParseError> {
    cur.expect('[')?;
    let mut atoms = Vec::new();
    loop {
        match cur.peek() {
            Some(']') => {
                cur.pos += 1;
                return Ok(atoms);
            }
            Some(',') if !atoms.is_empty() => {
                cur.pos += 1;
            }
            Some(c @ ('x' | 'y')) => {
                cur.pos += 1;
                let letter = if c == 'x' { Letter::X } else { Letter::Y };
                let count = if cur.peek() == Some('^') {
                    cur.pos += 1;
                    cur.integer()? as usize
                } else {
                    1
                };
                atoms.push(Atom::Letter(letter, count));
            }
            Some('v') => {
                cur.pos += 1;
                cur.expect('(')?;
                let k = cur.integer()? as usize;
                if k == 0 {
                    return Err(cur.err("v(k) needs k >= 1"));
                }
                cur.expect(')')?;
                atoms.push(Atom::V(k));
            }
            Some('[') => return Err(cur.err("nested brackets are not supported; use left-normed words")),
            Some(c) => return Err(cur.err(format!("unexpected character '{c}' in bracket"))),
            None => return Err(cur.err("unterminated bracket")),
        }
    }
}

/// Parses `[+-] term ([+-] term)*` up to '=' or end of line.
fn parse_side(cur: &mut Cursor, sign: i64, out: &mut Vec<Term>) -> Result<(), ParseError> {
    let mut first = true;
    loop {
        let mut s = sign;
        match cur.peek() {
            Some('+') => {
                cur.pos += 1;
            }
            Some('-') => {
                cur.pos += 1;
                s = -s;
            }
            _ if !first => return Err(cur.err("expected '+' or '-' between terms")),
            _ => {}
        }
        first = false;
        let column = {
            cur.skip_ws();
            cur.column()
        };
        match cur.peek() {
            Some('[') => {
                let atoms = parse_bracket(cur)?;
                out.push(Term {
                    coeff: s,
                    atoms,
                    column,
                });
            }
            Some(c) if c.is_ascii_digit() => {
                let c = cur.integer()? as i64;
                if cur.peek() == Some('*') {
                    cur.pos += 1;
                }
                if cur.peek() == Some('[') {
                    let atoms = parse_bracket(cur)?;
                    out.push(Term {
                        coeff: s * c,
                        atoms,
                        column,
                    });
                } else if c != 0 {
                    return Err(ParseError::new(cur.line, column, "constant terms must be 0"));
                }
            }
            Some(c) => return Err(cur.err(format!("unexpected character '{c}'"))),
            None => return Err(cur.err("expected a term")),
        }
        match cur.peek() {
            None | Some('=') => return Ok(()),
            _ => {}
        }
    }
}

struct RelatorLine {
    line: usize,
    terms: Vec<Term>,
}

fn parse_relator_line(src: &str, line: usize) -> Result<RelatorLine, ParseError> {
    let mut cur = Cursor::new(src, line);
    let mut terms = Vec::new();
    parse_side(&mut cur, 1, &mut terms)?;
    if cur.peek() == Some('=') {
        cur.pos += 1;
        parse_side(&mut cur, -1, &mut terms)?;
    }
    if !cur.at_end() {
        return Err(cur.err("trailing input"));
    }
    for t in &terms {
        let len: usize = t
            .atoms
            .iter()
            .map(|a| match a {
                Atom::Letter(_, c) => *c,
                Atom::V(_) => 1,
            })
            .sum();
        if len == 0 {
            return Err(ParseError::new(line, t.column, "empty word"));
        }
    }
    if terms.is_empty() {
        return Err(ParseError::new(line, 1, "relator has no terms"));
    }
    Ok(RelatorLine { line, terms })
}

#[derive(Default)]
struct Header {
    p: Option<u32>,
    params: Params,
}

fn parse_header(src: &str, line: usize) -> Result<Header, ParseError> {
    let mut header = Header::default();
    let mut column = 1;
    for token in src.split_whitespace() {
        let col = src[column - 1..].find(token).map_or(column, |o| column + o);
        column = col + token.len();
        let (key, value) = token
            .split_once('=')
            .ok_or_else(|| ParseError::new(line, col, format!("expected key=value, found '{token}'")))?;
        let value: u32 = value
            .parse()
            .map_err(|_| ParseError::new(line, col, format!("invalid value for '{key}'")))?;
        let slot = match key {
            "p" => &mut header.p,
            "n" => &mut header.params.n,
            "s" => &mut header.params.s,
            "a" => &mut header.params.a,
            "lambda" => &mut header.params.lambda,
            _ => return Err(ParseError::new(line, col, format!("unknown header key '{key}'"))),
        };
        if slot.replace(value).is_some() {
            return Err(ParseError::new(line, col, format!("duplicate header key '{key}'")));
        }
    }
    Ok(header)
}

fn is_header(line: &str) -> bool {
    let t = line.trim_start();
    let key: String = t.chars().take_while(|c| c.is_ascii_alphabetic()).collect();
    !key.is_empty() && t[key.len()..].trim_start().starts_with('=')
}

/// Parses a presentation in the relator DSL.
pub fn parse_relators(text: &str) -> Result<Presentation, ParseError> {
    let mut header: Option<(usize, Header)> = None;
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        if is_header(content) {
            if header.is_some() {
                return Err(ParseError::new(line_no, 1, "duplicate header line"));
            }
            header = Some((line_no, parse_header(content, line_no)?));
        } else {
            lines.push(parse_relator_line(content, line_no)?);
        }
    }
    let (header_line, header) =
        header.ok_or_else(|| ParseError::new(1, 1, "missing header line 'p=<prime>'"))?;
    let p = header
        .p
        .ok_or_else(|| ParseError::new(header_line, 1, "header must set p"))?;
    let field = PrimeField::new(p).map_err(|e| ParseError::new(header_line, 1, e.to_string()))?;
    let q = match header.params.n {
        Some(0) => return Err(ParseError::new(header_line, 1, "n must be at least 1")),
        Some(n) => (p as usize).checked_pow(n).filter(|&q| q <= 1 << 12),
        None => None,
    };

    let mut relators = Vec::new();
    for rl in lines {
        let mut terms = Vec::new();
        for t in &rl.terms {
            let mut letters = Vec::new();
            for atom in &t.atoms {
                match *atom {
                    Atom::Letter(l, c) => letters.extend(std::iter::repeat_n(l, c)),
                    Atom::V(k) => {
                        let q = q.ok_or_else(|| {
                            ParseError::new(rl.line, t.column, "v(k) requires n in the header")
                        })?;
                        letters.extend_from_slice(v_word(k, q).letters());
                    }
                }
            }
            let word = Word::new(letters).map_err(|e| ParseError::new(rl.line, t.column, e.to_string()))?;
            terms.push((t.coeff, word));
        }
        let relator = Relator::new(field, terms).map_err(|e| {
            let msg = match e {
                PresentationError::ZeroRelator => "relator is identically zero".to_string(),
                other => other.to_string(),
            };
            ParseError::new(rl.line, 1, msg)
        })?;
        if relator.degree() < 2 {
            return Err(ParseError::new(rl.line, 1, "relators must have degree at least 2"));
        }
        relators.push(relator);
    }
    Ok(Presentation {
        field,
        params: header.params,
        relators,
        provenance: Provenance::Custom,
    })
}

struct HeaderDisplay<'a>(&'a Presentation);

impl fmt::Display for HeaderDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pres = self.0;
        write!(f, "p={}", pres.field.p())?;
        let Params { n, s, a, lambda } = pres.params;
        for (key, value) in [("n", n), ("s", s), ("a", a), ("lambda", lambda)] {
            if let Some(v) = value {
                write!(f, " {key}={v}")?;
            }
        }
        Ok(())
    }
}

pub(super) fn print(pres: &Presentation) -> String {
    let mut out = format!("{}\n", HeaderDisplay(pres));
    for r in &pres.relators {
        out.push_str(&r.to_dsl(pres.field));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_word() {
        let pres = parse_relators("p=3 n=1\n[y,x^2,y] = 0").unwrap();
        assert_eq!(pres.relators.len(), 1);
        assert_eq!(pres.relators[0].degree(), 4);
        assert_eq!(pres.relators[0].terms()[0].1, "yxxy".parse().unwrap());
        assert_eq!(pres.provenance, Provenance::Custom);
    }

    #[test]
    fn v_macro_type_relator() {
        let pres = parse_relators("p=5 n=1\n[v(4),y,x] - [v(4),x,x] = 0").unwrap();
        let r = &pres.relators[0];
        assert_eq!(r.degree(), 18);
        assert_eq!(r.terms().len(), 2);
        assert_eq!(r.terms()[1].0, 4);
    }

    #[test]
    fn empty_word_is_a_syntax_error() {
        let err = parse_relators("[x^0]").unwrap_err();
        assert_eq!(err.message, "empty word");
        assert_eq!((err.line, err.column), (1, 1));
    }

    #[test]
    fn v_without_q() {
        let err = parse_relators("p=5\n[v(2),x] = 0").unwrap_err();
        assert!(err.message.contains("v(k)"), "{err}");
        assert_eq!(err.line, 2);
    }

    #[test]
    fn inhomogeneous() {
        let err = parse_relators("p=3\n[x,y] + [x,y,y]").unwrap_err();
        assert!(err.message.contains("not homogeneous"), "{err}");
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = parse_relators("p=3\n[x,y] + [x,z]").unwrap_err();
        assert_eq!((err.line, err.column), (2, 12));
        let err = parse_relators("p=3\n[x,y").unwrap_err();
        assert_eq!(err.line, 2);
        assert!(err.message.contains("unterminated"));
        let err = parse_relators("p=3 q=9\n[x,y]").unwrap_err();
        assert!(err.message.contains("unknown header key 'q'"));
        assert_eq!(err.column, 5);
        assert!(parse_relators("[x,y]").unwrap_err().message.contains("missing header"));
        assert!(parse_relators("p=4\n[x,y]").is_err());
        assert!(parse_relators("p=3\n[x, y] [y, x]").is_err());
    }

    #[test]
    fn rhs_and_coefficients() {
        let pres = parse_relators("# demo\np=7\n3*[x,y,y] + 2 [y,x,x] = [x,y,y] # trailing").unwrap();
        let r = &pres.relators[0];
        assert_eq!(r.terms(), &[(2, "xyy".parse().unwrap()), (2, "yxx".parse().unwrap())]);
        let whitespace = parse_relators("p=7\n[y x^2 y]").unwrap();
        assert_eq!(whitespace.relators[0].terms()[0].1, "yxxy".parse().unwrap());
    }

    #[test]
    fn print_parse_round_trip() {
        let text = "p=5 n=1 a=4 lambda=2\n[y,x,y] = 0\n[v(4),y,x] - 2[v(4),x,x] = 0\n3*[x,y] = 0\n";
        let pres = parse_relators(text).unwrap();
        let again = parse_relators(&pres.to_dsl()).unwrap();
        assert_eq!(pres, again);
    }
}
