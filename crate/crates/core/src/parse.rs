//! Polynomial text such as `x^3+y^3+z^5+x*w^5+t*y^2*z*w+w^8`.
//!
//! Terms are separated by `+` or `-`; factors by `*` or plain juxtaposition
//! with whitespace. A factor is a number (`3`, `2/5`), a variable with an
//! optional exponent (`w^8`), or any other identifier, which is read as a
//! symbolic nonzero coefficient (`t`, `γ`). The variables are `x, y, z, w`
//! unless some `z1, z2, ...` appears, in which case they are `z1..zk`.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::oracles::Polynomial;
use crate::rational::Rational;
use crate::support::SupportSet;

const DEFAULT_ALPHABET: [&str; 4] = ["x", "y", "z", "w"];

/// A parsed polynomial: its support, and its coefficients when every
/// coefficient was numeric.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedPolynomial {
    pub support: SupportSet,
    pub coefficients: Option<BTreeMap<Vec<u32>, Rational>>,
}

impl ParsedPolynomial {
    pub fn polynomial(&self) -> Result<Polynomial> {
        let coefficients = self.coefficients.as_ref().ok_or(Error::SymbolicCoefficients)?;
        Polynomial::new(
            self.support.variables().to_vec(),
            coefficients.iter().map(|(e, c)| (e.clone(), c.clone())),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    Number(String),
    Ident(String),
}

fn parse_error(position: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        position,
        message: message.into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>> {
    let mut tokens = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        let single = match c {
            '+' => Some(Token::Plus),
            '-' => Some(Token::Minus),
            '*' => Some(Token::Star),
            '^' => Some(Token::Caret),
            '/' => Some(Token::Slash),
            _ => None,
        };
        if let Some(token) = single {
            chars.next();
            tokens.push((pos, token));
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&(_, d)) = chars.peek().filter(|(_, d)| d.is_ascii_digit()) {
                s.push(d);
                chars.next();
            }
            tokens.push((pos, Token::Number(s)));
        } else if c.is_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&(_, d)) = chars.peek().filter(|(_, d)| d.is_alphanumeric() || *d == '_') {
                s.push(d);
                chars.next();
            }
            tokens.push((pos, Token::Ident(s)));
        } else {
            return Err(parse_error(pos, format!("unexpected character {c:?}")));
        }
    }
    Ok(tokens)
}

fn indexed_variable(name: &str) -> Option<usize> {
    let digits = name.strip_prefix('z')?;
    if digits.is_empty() || digits.starts_with('0') || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok()
}

/// The alphabet implied by the identifiers used in `text`.
fn infer_alphabet(tokens: &[(usize, Token)]) -> Vec<String> {
    let idents: Vec<&str> = tokens
        .iter()
        .filter_map(|(_, t)| match t {
            Token::Ident(s) => Some(s.as_str()),
            _ => None,
        })
        .collect();
    if let Some(k) = idents.iter().filter_map(|s| indexed_variable(s)).max() {
        return (1..=k).map(|i| format!("z{i}")).collect();
    }
    let used = idents
        .iter()
        .filter_map(|s| DEFAULT_ALPHABET.iter().position(|v| v == s))
        .max()
        .map_or(0, |i| i + 1);
    DEFAULT_ALPHABET[..used].iter().map(|s| s.to_string()).collect()
}

/// Whether `name` is a run of at least two variable names written together,
/// counting `x, y, z, w` as variable names even when unused.
fn is_concatenation(name: &str, alphabet: &[String]) -> bool {
    fn split(rest: &str, names: &[&str], parts: usize) -> bool {
        if rest.is_empty() {
            return parts >= 2;
        }
        names
            .iter()
            .any(|v| rest.strip_prefix(v).is_some_and(|tail| split(tail, names, parts + 1)))
    }
    let names: Vec<&str> = alphabet.iter().map(String::as_str).chain(DEFAULT_ALPHABET).collect();
    split(name, &names, 0)
}

/// Parses with the alphabet inferred from the text.
pub fn parse_polynomial(text: &str) -> Result<ParsedPolynomial> {
    let tokens = tokenize(text)?;
    let alphabet = infer_alphabet(&tokens);
    parse_tokens(text, &tokens, alphabet)
}

/// Parses with an explicit list of variable names.
pub fn parse_polynomial_with(text: &str, variables: &[String]) -> Result<ParsedPolynomial> {
    let tokens = tokenize(text)?;
    parse_tokens(text, &tokens, variables.to_vec())
}

struct Term {
    exponent: Vec<u32>,
    coefficient: Rational,
    symbolic: bool,
}

fn parse_tokens(text: &str, tokens: &[(usize, Token)], alphabet: Vec<String>) -> Result<ParsedPolynomial> {
    if tokens.is_empty() {
        return Err(parse_error(0, "empty input"));
    }
    if alphabet.is_empty() {
        return Err(parse_error(0, "no variables"));
    }
    let n = alphabet.len();
    let mut terms = Vec::new();
    let mut i = 0;
    loop {
        let mut negative = false;
        while let Some((_, t @ (Token::Plus | Token::Minus))) = tokens.get(i) {
            negative ^= *t == Token::Minus;
            i += 1;
        }
        let mut term = Term {
            exponent: vec![0; n],
            coefficient: Rational::one(),
            symbolic: false,
        };
        if negative {
            term.coefficient = -term.coefficient;
        }
        let mut factors = 0;
        loop {
            if factors > 0 {
                match tokens.get(i) {
                    Some((_, Token::Star)) => i += 1,
                    Some((_, Token::Number(_) | Token::Ident(_))) => {}
                    _ => break,
                }
            }
            i = parse_factor(text, tokens, i, &alphabet, &mut term)?;
            factors += 1;
        }
        terms.push(term);
        match tokens.get(i) {
            None => break,
            Some((_, Token::Plus | Token::Minus)) => {}
            Some((pos, _)) => return Err(parse_error(*pos, "expected '+', '-' or '*'")),
        }
    }
    let symbolic = terms.iter().any(|t| t.symbolic);
    let mut coefficients: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
    for t in terms {
        *coefficients.entry(t.exponent).or_insert_with(Rational::zero) += t.coefficient;
    }
    if !symbolic {
        coefficients.retain(|_, c| !c.is_zero());
    }
    let support = SupportSet::new(alphabet, coefficients.keys().cloned().collect())?;
    Ok(ParsedPolynomial {
        support,
        coefficients: (!symbolic).then_some(coefficients),
    })
}

fn parse_factor(text: &str, tokens: &[(usize, Token)], mut i: usize, alphabet: &[String], term: &mut Term) -> Result<usize> {
    let Some((pos, token)) = tokens.get(i) else {
        return Err(parse_error(text.len(), "expected a factor"));
    };
    i += 1;
    match token {
        Token::Number(numer) => {
            let mut value = Rational::from_integer(BigInt::from_str(numer).expect("digits"));
            if let Some((_, Token::Slash)) = tokens.get(i) {
                match tokens.get(i + 1) {
                    Some((dpos, Token::Number(denom))) => {
                        let denom = BigInt::from_str(denom).expect("digits");
                        if denom.is_zero() {
                            return Err(parse_error(*dpos, "zero denominator"));
                        }
                        value /= Rational::from_integer(denom);
                        i += 2;
                    }
                    other => return Err(parse_error(other.map_or(text.len(), |(p, _)| *p), "expected a denominator")),
                }
            }
            if let Some((cpos, Token::Caret)) = tokens.get(i) {
                return Err(parse_error(*cpos, "exponents apply to variables only"));
            }
            term.coefficient *= value;
        }
        Token::Ident(name) => {
            let exponent = match tokens.get(i) {
                Some((cpos, Token::Caret)) => match tokens.get(i + 1) {
                    Some((_, Token::Number(e))) => {
                        i += 2;
                        Some(e.parse::<u32>().map_err(|_| parse_error(*cpos, "exponent out of range"))?)
                    }
                    _ => return Err(parse_error(*cpos, "malformed exponent")),
                },
                _ => None,
            };
            match alphabet.iter().position(|v| v == name) {
                Some(k) => {
                    term.exponent[k] = term.exponent[k]
                        .checked_add(exponent.unwrap_or(1))
                        .ok_or_else(|| parse_error(*pos, "exponent out of range"))?;
                }
                None if is_concatenation(name, alphabet) => {
                    return Err(parse_error(*pos, format!("unknown variable {name:?}; write products with '*'")));
                }
                None if exponent.is_some() => {
                    return Err(parse_error(*pos, format!("unknown variable {name:?}")));
                }
                None => term.symbolic = true,
            }
        }
        _ => return Err(parse_error(*pos, "expected a number or a variable")),
    }
    Ok(i)
}

/// Writes a support back as text, one unit-coefficient monomial per point.
pub fn format_support(support: &SupportSet) -> String {
    support
        .exponents()
        .iter()
        .map(|e| {
            let factors: Vec<String> = e
                .iter()
                .zip(support.variables())
                .filter(|(k, _)| **k > 0)
                .map(|(k, v)| if *k == 1 { v.clone() } else { format!("{v}^{k}") })
                .collect();
            if factors.is_empty() {
                "1".to_string()
            } else {
                factors.join("*")
            }
        })
        .collect::<Vec<_>>()
        .join("+")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    #[test]
    fn example_42_text() {
        let p = parse_polynomial("x^3+y^3+z^5+x*w^5+y^2*z*w+w^8").unwrap();
        let expected = SupportSet::from_points(
            4,
            vec![
                vec![3, 0, 0, 0],
                vec![0, 3, 0, 0],
                vec![0, 0, 5, 0],
                vec![1, 0, 0, 5],
                vec![0, 2, 1, 1],
                vec![0, 0, 0, 8],
            ],
        )
        .unwrap();
        assert_eq!(p.support, expected);
        assert!(p.coefficients.is_some());
    }

    #[test]
    fn symbolic_coefficients() {
        let p = parse_polynomial("x^3+y^3+z^5+x*w^5+t*y^2*z*w+γ w^9").unwrap();
        assert_eq!(p.support.n(), 4);
        assert_eq!(p.support.len(), 6);
        assert_eq!(p.coefficients, None);
        assert_eq!(p.polynomial(), Err(Error::SymbolicCoefficients));
    }

    #[test]
    fn small_cases() {
        let p = parse_polynomial("x^3 + y^2").unwrap();
        assert_eq!(p.support.exponents(), &[vec![0, 2], vec![3, 0]]);
        let origin = parse_polynomial("x^0").unwrap();
        assert_eq!(origin.support.exponents(), &[vec![0]]);
        let q = parse_polynomial("2/3 x^2 - 5*y + x^2").unwrap();
        let c = q.coefficients.unwrap();
        assert_eq!(c[&vec![2, 0]], frac(5, 3));
        assert_eq!(c[&vec![0, 1]], int(-5));
    }

    #[test]
    fn indexed_alphabet() {
        let p = parse_polynomial("z1^2+z3^4").unwrap();
        assert_eq!(p.support.variables(), &["z1", "z2", "z3"]);
        assert_eq!(p.support.exponents(), &[vec![0, 0, 4], vec![2, 0, 0]]);
    }

    #[test]
    fn cancellation_drops_terms() {
        let p = parse_polynomial("x^2 + y^3 - x^2 + x*y^2").unwrap();
        assert_eq!(p.support.len(), 2);
    }

    #[test]
    fn errors_have_positions() {
        assert!(matches!(parse_polynomial(""), Err(Error::Parse { position: 0, .. })));
        assert!(matches!(parse_polynomial("x^"), Err(Error::Parse { position: 1, .. })));
        assert!(matches!(parse_polynomial("x^3+xy"), Err(Error::Parse { position: 4, .. })));
        assert!(matches!(parse_polynomial("x+q^2"), Err(Error::Parse { position: 2, .. })));
        assert!(matches!(parse_polynomial("x+$"), Err(Error::Parse { position: 2, .. })));
        assert!(matches!(parse_polynomial("x++"), Err(Error::Parse { .. })));
        assert!(matches!(parse_polynomial("3^2+x"), Err(Error::Parse { position: 1, .. })));
    }

    #[test]
    fn round_trip() {
        let p = parse_polynomial("x^3+y^3+z^5+x*w^5+y^2*z*w+w^8").unwrap();
        let text = format_support(&p.support);
        let q = parse_polynomial_with(&text, p.support.variables()).unwrap();
        assert_eq!(p.support, q.support);
    }
}
