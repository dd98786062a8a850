use std::collections::BTreeMap;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{MPoly, Monomial, Var};
use crate::error::PolyError;
use crate::ring::Coeff;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyFormat {
    /// Human-readable, e.g. `C3 + C1^2 - N*C2`.
    Text,
    /// `{"terms":[{"coeff":"-1","mono":{"N":1,"C2":1}}, ...]}`.
    Json,
}

pub fn format_poly<R: Coeff>(p: &MPoly<R>, format: PolyFormat) -> String {
    match format {
        PolyFormat::Text => format_text(p),
        PolyFormat::Json => serde_json::to_string(&to_json(p)).expect("polynomial JSON"),
    }
}

/// Parses either output format; JSON is recognised by a leading `{`.
pub fn parse_poly<R: Coeff>(s: &str) -> Result<MPoly<R>, PolyError> {
    if s.trim_start().starts_with('{') {
        from_json(s)
    } else {
        Parser { src: s, pos: 0 }.poly()
    }
}

fn format_mono(m: &Monomial) -> String {
    let (neg_n, rest): (Vec<_>, Vec<_>) = m.pairs().iter().partition(|&&(v, e)| v == Var::N && e < 0);
    rest.iter()
        .chain(neg_n.iter())
        .map(|&&(v, e)| if e == 1 { v.to_string() } else { format!("{v}^{e}") })
        .collect::<Vec<_>>()
        .join("*")
}

fn format_text<R: Coeff>(p: &MPoly<R>) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().enumerate() {
        let c = c.to_string();
        let (negative, mag) = match c.strip_prefix('-') {
            Some(mag) => (true, mag),
            None => (false, c.as_str()),
        };
        match (i == 0, negative) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        if m.is_one() {
            out.push_str(mag);
        } else {
            if mag != "1" {
                out.push_str(mag);
                out.push('*');
            }
            out.push_str(&format_mono(m));
        }
    }
    out
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    coeff: String,
    mono: MonoJson,
}

/// Monomial as a JSON object keyed by variable name, written in variable order.
struct MonoJson(Vec<(String, i32)>);

impl Serialize for MonoJson {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for MonoJson {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let map = BTreeMap::<String, i32>::deserialize(d)?;
        Ok(MonoJson(map.into_iter().collect()))
    }
}

fn to_json<R: Coeff>(p: &MPoly<R>) -> PolyJson {
    PolyJson {
        terms: p
            .terms()
            .map(|(m, c)| TermJson {
                coeff: c.to_string(),
                mono: MonoJson(m.pairs().iter().map(|&(v, e)| (v.to_string(), e)).collect()),
            })
            .collect(),
    }
}

fn from_json<R: Coeff>(s: &str) -> Result<MPoly<R>, PolyError> {
    let parsed: PolyJson = serde_json::from_str(s).map_err(|e| PolyError::Json(e.to_string()))?;
    from_poly_json(parsed)
}

fn from_poly_json<R: Coeff>(parsed: PolyJson) -> Result<MPoly<R>, PolyError> {
    let mut terms = Vec::with_capacity(parsed.terms.len());
    for t in parsed.terms {
        let c = R::from_str(&t.coeff).map_err(|_| PolyError::Json(format!("bad coefficient `{}`", t.coeff)))?;
        let mut pairs = Vec::with_capacity(t.mono.0.len());
        for (name, e) in t.mono.0 {
            let v = Var::from_str(&name)?;
            if e < 0 && v != Var::N {
                return Err(PolyError::NegativeExponent(name));
            }
            pairs.push((v, e));
        }
        terms.push((c, Monomial::from_pairs(pairs)));
    }
    Ok(MPoly::from_terms(terms))
}

impl<R: Coeff> Serialize for MPoly<R> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        to_json(self).serialize(s)
    }
}

impl<'de, R: Coeff> Deserialize<'de> for MPoly<R> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        from_poly_json(PolyJson::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, PolyError> {
        Err(PolyError::Syntax { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.as_bytes().get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn take_while(&mut self, f: impl Fn(u8) -> bool) -> &str {
        let start = self.pos;
        while self.peek().is_some_and(&f) {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn poly<R: Coeff>(&mut self) -> Result<MPoly<R>, PolyError> {
        let mut terms = Vec::new();
        let mut negative = self.eat(b'-');
        loop {
            let (c, m) = self.term::<R>()?;
            terms.push((if negative { -c } else { c }, m));
            self.skip_ws();
            match self.peek() {
                None => break,
                Some(b'+') => negative = false,
                Some(b'-') => negative = true,
                Some(_) => return self.err("expected `+`, `-` or end of input"),
            }
            self.pos += 1;
        }
        Ok(MPoly::from_terms(terms))
    }

    fn term<R: Coeff>(&mut self) -> Result<(R, Monomial), PolyError> {
        let mut c = R::one();
        let mut pairs = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b) if b.is_ascii_digit() => {
                    let start = self.pos;
                    let digits = self.take_while(|b| b.is_ascii_digit()).to_string();
                    match R::from_str(&digits) {
                        Ok(v) => c = c * v,
                        Err(_) => {
                            self.pos = start;
                            return self.err("bad coefficient");
                        }
                    }
                }
                Some(b) if b.is_ascii_alphabetic() => {
                    let start = self.pos;
                    let name = self.take_while(|b| b.is_ascii_alphanumeric()).to_string();
                    let v = match Var::from_str(&name) {
                        Ok(v) => v,
                        Err(e) => {
                            self.pos = start;
                            return Err(match e {
                                PolyError::UnknownVariable(_) => {
                                    PolyError::Syntax { pos: start, msg: format!("unknown variable `{name}`") }
                                }
                                e => e,
                            });
                        }
                    };
                    let e = if self.eat(b'^') { self.exponent()? } else { 1 };
                    if e < 0 && v != Var::N {
                        self.pos = start;
                        return self.err(format!("negative exponent on {name}"));
                    }
                    pairs.push((v, e));
                }
                _ => return self.err("expected a coefficient or variable"),
            }
            if !self.eat(b'*') {
                return Ok((c, Monomial::from_pairs(pairs)));
            }
        }
    }

    fn exponent(&mut self) -> Result<i32, PolyError> {
        self.skip_ws();
        let negative = self.eat(b'-');
        self.skip_ws();
        let digits = self.take_while(|b| b.is_ascii_digit());
        if digits.is_empty() {
            return self.err("expected an exponent");
        }
        let e: i32 = match digits.parse() {
            Ok(e) => e,
            Err(_) => return self.err("exponent out of range"),
        };
        Ok(if negative { -e } else { e })
    }
}

#[cfg(test)]
mod tests {
    use num_bigint::BigInt;
    use proptest::prelude::*;

    use super::*;

    type P = MPoly<BigInt>;

    #[test]
    fn text_layout() {
        let p: P = parse_poly("x^2*N^-2 - 3*x + 2 - N^2*C1").unwrap();
        assert_eq!(format_poly(&p, PolyFormat::Text), "x^2*N^-2 + 2 - 3*x - N^2*C1");
        assert_eq!(format_poly(&P::zero(), PolyFormat::Text), "0");
        assert_eq!(format_poly(&P::int(-5), PolyFormat::Text), "-5");
    }

    #[test]
    fn json_layout() {
        let p: P = parse_poly("-N*C2 + p2*N^-2").unwrap();
        let json = format_poly(&p, PolyFormat::Json);
        assert_eq!(json, r#"{"terms":[{"coeff":"1","mono":{"N":-2,"p2":1}},{"coeff":"-1","mono":{"N":1,"C2":1}}]}"#);
        assert_eq!(parse_poly::<BigInt>(&json).unwrap(), p);
    }

    #[test]
    fn syntax_errors_report_positions() {
        assert_eq!(
            parse_poly::<BigInt>("x + y"),
            Err(PolyError::Syntax { pos: 4, msg: "unknown variable `y`".into() })
        );
        assert!(matches!(parse_poly::<BigInt>("x +"), Err(PolyError::Syntax { pos: 3, .. })));
        assert!(matches!(parse_poly::<BigInt>("x^-1"), Err(PolyError::Syntax { pos: 0, .. })));
        assert!(matches!(parse_poly::<BigInt>("2 x"), Err(PolyError::Syntax { pos: 2, .. })));
        assert!(matches!(
            parse_poly::<BigInt>(r#"{"terms":[{"coeff":"1","mono":{"p1":-1}}]}"#),
            Err(PolyError::NegativeExponent(_))
        ));
    }

    fn arb_var() -> impl Strategy<Value = Var> {
        prop_oneof![
            Just(Var::N),
            (1u32..5).prop_map(Var::C),
            (1u32..5).prop_map(Var::P),
            Just(Var::X),
            (1u32..4).prop_map(Var::PL),
            (1u32..4).prop_map(Var::PR),
        ]
    }

    fn arb_poly() -> impl Strategy<Value = P> {
        let term = (-20i64..20, prop::collection::vec((arb_var(), -3i32..4), 0..4)).prop_map(|(c, vs)| {
            let pairs = vs.into_iter().map(|(v, e)| (v, if v == Var::N { e } else { e.abs() }));
            (BigInt::from(c), Monomial::from_pairs(pairs))
        });
        prop::collection::vec(term, 0..6).prop_map(MPoly::from_terms)
    }

    proptest! {
        #[test]
        fn text_round_trip(p in arb_poly()) {
            let back: P = parse_poly(&format_poly(&p, PolyFormat::Text)).unwrap();
            prop_assert_eq!(back, p);
        }

        #[test]
        fn json_round_trip(p in arb_poly()) {
            let back: P = parse_poly(&format_poly(&p, PolyFormat::Json)).unwrap();
            prop_assert_eq!(back, p);
        }

        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn substitution_is_a_homomorphism(a in arb_poly(), b in arb_poly()) {
            let rule = |v: Var| match v {
                Var::C(k) => Some(&P::var(Var::P(k)) * &P::n_pow(k as i32 - 1)),
                Var::N => Some(P::n_pow(2)),
                Var::X => Some(&P::var(Var::PL(1)) + &P::int(1)),
                _ => None,
            };
            let lhs = (&a * &b).substitute_with(rule).unwrap();
            let rhs = &a.substitute_with(rule).unwrap() * &b.substitute_with(rule).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
