use std::str::FromStr;

use super::Permutation;
use crate::error::PermError;

/// Textual notations for permutations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Notation {
    /// `(1 3 2)(4 5)`, optionally prefixed by `m=<int>` to declare trailing fixed points.
    Cycles,
    /// `3,1,2`.
    OneLine,
}

impl FromStr for Notation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "cycles" | "cycle" => Ok(Notation::Cycles),
            "one-line" | "oneline" => Ok(Notation::OneLine),
            _ => Err(format!("unknown notation `{s}`")),
        }
    }
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer { src: text.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn err(&self, msg: impl Into<String>) -> PermError {
        PermError::Syntax { pos: self.pos, msg: msg.into() }
    }

    fn eat(&mut self, c: u8) -> Result<(), PermError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected `{}`", c as char)))
        }
    }

    fn int(&mut self) -> Result<usize, PermError> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        digits.parse().map_err(|_| PermError::Syntax { pos: start, msg: "integer too large".into() })
    }
}

/// Parses a permutation in the given notation.
pub fn parse_perm(text: &str, notation: Notation) -> Result<Permutation, PermError> {
    match notation {
        Notation::Cycles => parse_cycles(text),
        Notation::OneLine => parse_one_line(text),
    }
}

fn parse_cycles(text: &str) -> Result<Permutation, PermError> {
    let mut lx = Lexer::new(text);
    lx.skip_ws();
    let mut declared_m = None;
    if lx.peek() == Some(b'm') {
        lx.pos += 1;
        lx.skip_ws();
        lx.eat(b'=')?;
        lx.skip_ws();
        declared_m = Some(lx.int()?);
        lx.skip_ws();
    }

    let mut cycles: Vec<Vec<usize>> = Vec::new();
    while lx.peek().is_some() {
        lx.eat(b'(')?;
        lx.skip_ws();
        let mut cycle = Vec::new();
        if lx.peek() == Some(b')') {
            // `()` is the empty permutation; only allowed on its own.
            lx.pos += 1;
            lx.skip_ws();
            if !cycles.is_empty() || lx.peek().is_some() {
                return Err(lx.err("empty cycle"));
            }
            break;
        }
        loop {
            let start = lx.pos;
            let x = lx.int()?;
            if x == 0 {
                return Err(PermError::Syntax { pos: start, msg: "elements are numbered from 1".into() });
            }
            cycle.push(x);
            let before = lx.pos;
            lx.skip_ws();
            let mut had_sep = lx.pos > before;
            if lx.peek() == Some(b',') {
                lx.pos += 1;
                lx.skip_ws();
                had_sep = true;
            }
            match lx.peek() {
                Some(b')') => {
                    lx.pos += 1;
                    break;
                }
                Some(b'0'..=b'9') if had_sep => continue,
                _ => return Err(lx.err("expected a separator, an integer or `)`")),
            }
        }
        cycles.push(cycle);
        lx.skip_ws();
    }

    let max = cycles.iter().flatten().copied().max().unwrap_or(0);
    let m = match declared_m {
        Some(m) if max > m => return Err(PermError::OutOfRange { element: max, m }),
        Some(m) => m,
        None => max,
    };
    Permutation::from_cycles(m, &cycles)
}

fn parse_one_line(text: &str) -> Result<Permutation, PermError> {
    let mut lx = Lexer::new(text);
    lx.skip_ws();
    let mut images = Vec::new();
    if lx.peek().is_none() {
        return Ok(Permutation::empty());
    }
    loop {
        images.push(lx.int()?);
        lx.skip_ws();
        match lx.peek() {
            None => break,
            Some(b',') => {
                lx.pos += 1;
                lx.skip_ws();
            }
            Some(_) => return Err(lx.err("expected `,`")),
        }
    }
    Permutation::new(images)
}

/// Formats a permutation; output round-trips through [`parse_perm`].
pub fn format_perm(p: &Permutation, notation: Notation) -> String {
    match notation {
        Notation::Cycles => p.cycles().to_string(),
        Notation::OneLine => p.images().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","),
    }
}

impl FromStr for Permutation {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, PermError> {
        parse_perm(s, Notation::Cycles)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_notation() {
        assert_eq!(parse_perm("(1 3 2)", Notation::Cycles).unwrap().images(), &[3, 1, 2]);
        assert_eq!(parse_perm("(1 3)(2 4)", Notation::Cycles).unwrap().images(), &[3, 4, 1, 2]);
        assert_eq!(parse_perm("(1,3,5,2,4)", Notation::Cycles).unwrap().images(), &[3, 4, 5, 1, 2]);
        assert_eq!(parse_perm(" (1, 2) (3) ", Notation::Cycles).unwrap().images(), &[2, 1, 3]);
    }

    #[test]
    fn declared_size() {
        let p = parse_perm("m=5 (1 2)", Notation::Cycles).unwrap();
        assert_eq!(p.images(), &[2, 1, 3, 4, 5]);
        assert!(parse_perm("m=2 (1 3)", Notation::Cycles).is_err());
    }

    #[test]
    fn one_line() {
        assert_eq!(parse_perm("3,1,2", Notation::OneLine).unwrap().images(), &[3, 1, 2]);
        assert!(parse_perm("", Notation::OneLine).unwrap().is_empty());
        assert!(matches!(parse_perm("1,1", Notation::OneLine), Err(PermError::Duplicate(1))));
    }

    #[test]
    fn empty_forms() {
        assert!(parse_perm("", Notation::Cycles).unwrap().is_empty());
        assert!(parse_perm("()", Notation::Cycles).unwrap().is_empty());
        assert_eq!(format_perm(&Permutation::empty(), Notation::Cycles), "()");
    }

    #[test]
    fn errors_carry_positions() {
        match parse_perm("(1 2", Notation::Cycles) {
            Err(PermError::Syntax { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_perm("(1 2)(2 3)", Notation::Cycles), Err(PermError::Duplicate(2))));
        assert!(matches!(parse_perm("(0 1)", Notation::Cycles), Err(PermError::Syntax { pos: 1, .. })));
        assert!(parse_perm("(12)", Notation::Cycles).is_ok()); // a single element 12
        assert!(parse_perm("(1 x)", Notation::Cycles).is_err());
        assert!(parse_perm("(1)()", Notation::Cycles).is_err());
    }

    #[test]
    fn format_round_trip() {
        for s in ["(1 3 2)", "(1 3)(2 4)", "(1)(2 5)(3)(4)", "(1 10 4)(2 11)(3)(5 6 7 8 9)"] {
            let p = parse_perm(s, Notation::Cycles).unwrap();
            assert_eq!(format_perm(&p, Notation::Cycles), s);
            let q = parse_perm(&format_perm(&p, Notation::OneLine), Notation::OneLine).unwrap();
            assert_eq!(p, q);
        }
    }
}
