//! Exact scalars.
//!
//! Every structure constant lives in [`Scalar`], a sparse multivariate
//! polynomial with rational coefficients over named parameters. A scalar
//! without parameters is just a rational number. Identity checks reduce to
//! [`Scalar::is_zero`], which holds iff the polynomial vanishes identically.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary precision rational, always kept in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// Builds `num / den`. Panics if `den == 0`.
pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `p` or `p/q` (optionally signed) into a rational.
pub fn parse_rational(text: &str) -> Result<Rational, ParseScalarError> {
    let scalar: Scalar = text.parse()?;
    scalar.to_rational().ok_or_else(|| ParseScalarError {
        position: 0,
        message: format!("expected a rational number, found `{text}`"),
    })
}

/// Power product of named parameters, e.g. `a^2*b`.
///
/// Stored as `(name, exponent)` pairs sorted by name with every exponent
/// positive; the empty product is the constant monomial.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<(String, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Self(Vec::new())
    }

    pub fn var(name: &str) -> Self {
        Self(vec![(name.to_string(), 1)])
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, name: &str) -> u32 {
        self.0.iter().find(|(n, _)| n == name).map_or(0, |(_, e)| *e)
    }

    pub fn factors(&self) -> impl Iterator<Item = (&str, u32)> {
        self.0.iter().map(|(n, e)| (n.as_str(), *e))
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            let (a, b) = (&self.0[i], &other.0[j]);
            match a.0.cmp(&b.0) {
                Ordering::Less => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b.clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a.0.clone(), a.1 + b.1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }
}

// Graded lexicographic: total degree first, then the exponent of the
// alphabetically first parameter where the two differ.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let by_degree = self.degree().cmp(&other.degree());
        if by_degree != Ordering::Equal {
            return by_degree;
        }
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.0.get(i), other.0.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(a), Some(b)) => match a.0.cmp(&b.0) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => {
                        let c = a.1.cmp(&b.1);
                        if c != Ordering::Equal {
                            return c;
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        for (idx, (name, exp)) in self.0.iter().enumerate() {
            if idx > 0 {
                f.write_str("*")?;
            }
            if *exp == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{exp}")?;
            }
        }
        Ok(())
    }
}

/// Polynomial in named parameters with rational coefficients.
///
/// Zero coefficients are never stored, so structural equality is
/// polynomial equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Scalar {
    terms: BTreeMap<Monomial, Rational>,
}

impl Scalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_int(value: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(value)))
    }

    pub fn from_rational(value: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !value.is_zero() {
            terms.insert(Monomial::one(), value);
        }
        Self { terms }
    }

    /// The polynomial consisting of the single parameter `name`.
    pub fn param(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(name), Rational::one());
        Self { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut out = Self::zero();
        for (mono, coeff) in terms {
            out.add_term(mono, coeff);
        }
        out
    }

    /// True iff this is the zero polynomial, i.e. zero for every
    /// assignment of its parameters.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The value of a parameter-free scalar.
    pub fn to_rational(&self) -> Option<Rational> {
        if !self.is_constant() {
            return None;
        }
        Some(self.terms.get(&Monomial::one()).cloned().unwrap_or_else(Rational::zero))
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn params(&self) -> BTreeSet<String> {
        self.terms
            .keys()
            .flat_map(|m| m.factors().map(|(n, _)| n.to_string()))
            .collect()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Highest term in graded lexicographic order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    fn add_term(&mut self, mono: Monomial, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, factor: &Rational) -> Scalar {
        if factor.is_zero() {
            return Scalar::zero();
        }
        Scalar {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * factor)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Scalar {
        let mut out = Scalar::one();
        for _ in 0..exp {
            out = &out * self;
        }
        out
    }

    /// Rescales so the leading coefficient is 1. Two polynomials that
    /// differ by a nonzero rational factor normalize to the same value.
    pub fn monic(&self) -> Scalar {
        match self.leading_term() {
            None => Scalar::zero(),
            Some((_, lead)) => self.scale(&lead.recip()),
        }
    }

    /// Substitutes rational values for the assigned parameters; others
    /// stay symbolic.
    pub fn eval(&self, assignment: &BTreeMap<String, Rational>) -> Scalar {
        let mut out = Scalar::zero();
        for (mono, coeff) in &self.terms {
            let mut c = coeff.clone();
            let mut rest = Vec::new();
            for (name, exp) in mono.factors() {
                match assignment.get(name) {
                    Some(v) => c *= num_traits::pow(v.clone(), exp as usize),
                    None => rest.push((name.to_string(), exp)),
                }
            }
            out.add_term(Monomial(rest), c);
        }
        out
    }

    /// Simultaneous substitution of polynomials for parameters.
    pub fn substitute(&self, assignment: &BTreeMap<String, Scalar>) -> Scalar {
        let mut out = Scalar::zero();
        for (mono, coeff) in &self.terms {
            let mut term = Scalar::from_rational(coeff.clone());
            for (name, exp) in mono.factors() {
                let factor = match assignment.get(name) {
                    Some(v) => v.pow(exp),
                    None => Scalar {
                        terms: BTreeMap::from([(Monomial(vec![(name.to_string(), exp)]), Rational::one())]),
                    },
                };
                term = &term * &factor;
            }
            out += &term;
        }
        out
    }
}

impl From<i64> for Scalar {
    fn from(value: i64) -> Self {
        Scalar::from_int(value)
    }
}

impl From<Rational> for Scalar {
    fn from(value: Rational) -> Self {
        Scalar::from_rational(value)
    }
}

impl<'a> Add<&'a Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a> AddAssign<&'a Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &'a Scalar) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl<'a> SubAssign<&'a Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &'a Scalar) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl<'a> Sub<&'a Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<'a> Mul<&'a Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        let mut out = Scalar::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $f:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $f(self, rhs: Scalar) -> Scalar { (&self).$f(&rhs) }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $f(self, rhs: &'a Scalar) -> Scalar { (&self).$f(rhs) }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (mono, coeff)) in self.terms.iter().rev().enumerate() {
            let negative = coeff.is_negative();
            match (idx, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = coeff.abs();
            if mono.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid scalar at offset {position}: {message}")]
pub struct ParseScalarError {
    pub position: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Int(BigInt),
    Name(String),
    Sym(char),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, ParseScalarError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let value = text[start..i].parse::<BigInt>().expect("digits");
            out.push((start, Token::Int(value)));
        } else if c.is_ascii_lowercase() {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_lowercase() || bytes[i].is_ascii_digit() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Token::Name(text[start..i].to_string())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Token::Sym(c)));
            i += 1;
        } else {
            return Err(ParseScalarError {
                position: i,
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseScalarError> {
        Err(ParseScalarError {
            position: self.offset(),
            message: message.into(),
        })
    }

    fn eat(&mut self, sym: char) -> bool {
        if self.peek() == Some(&Token::Sym(sym)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Scalar, ParseScalarError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc += &self.term()?;
            } else if self.eat('-') {
                acc -= &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Scalar, ParseScalarError> {
        let mut acc = self.unary()?;
        while self.eat('*') {
            acc = &acc * &self.unary()?;
        }
        if self.peek() == Some(&Token::Sym('/')) {
            return self.error("division is only allowed inside a numeric literal `p/q`");
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Scalar, ParseScalarError> {
        if self.eat('-') {
            return Ok(-self.unary()?);
        }
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Token::Int(e)) => {
                    self.pos += 1;
                    let exp: u32 = match e.try_into() {
                        Ok(v) => v,
                        Err(_) => return self.error("exponent too large"),
                    };
                    return Ok(base.pow(exp));
                }
                _ => return self.error("expected a non-negative integer exponent"),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Scalar, ParseScalarError> {
        match self.peek().cloned() {
            Some(Token::Int(n)) => {
                self.pos += 1;
                if self.eat('/') {
                    match self.peek().cloned() {
                        Some(Token::Int(d)) => {
                            self.pos += 1;
                            if d.is_zero() {
                                return self.error("zero denominator");
                            }
                            Ok(Scalar::from_rational(Rational::new(n, d)))
                        }
                        _ => self.error("expected an integer denominator"),
                    }
                } else {
                    Ok(Scalar::from_rational(Rational::from_integer(n)))
                }
            }
            Some(Token::Name(name)) => {
                self.pos += 1;
                Ok(Scalar::param(&name))
            }
            Some(Token::Sym('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return self.error("expected `)`");
                }
                Ok(inner)
            }
            Some(t) => self.error(format!("unexpected token {t:?}")),
            None => self.error("unexpected end of input"),
        }
    }
}

impl FromStr for Scalar {
    type Err = ParseScalarError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let tokens = tokenize(text)?;
        let mut parser = Parser {
            tokens,
            pos: 0,
            end: text.len(),
        };
        let value = parser.expr()?;
        if parser.pos != parser.tokens.len() {
            return parser.error("trailing input");
        }
        Ok(value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> Scalar {
        text.parse().unwrap()
    }

    #[test]
    fn rational_sum() {
        assert_eq!(&s("1/2") + &s("1/3"), s("5/6"));
        assert_eq!(s("5/6").to_rational(), Some(rational(5, 6)));
    }

    #[test]
    fn additive_inverse_and_cancellation() {
        assert!((&s("a*b") + &s("-a*b")).is_zero());
        assert_eq!(&s("a + 1") + &s("b - 1"), s("a + b"));
    }

    #[test]
    fn products() {
        assert_eq!(&s("1/2") * &s("2/3"), s("1/3"));
        assert!((&s("a*b") - &s("b*a")).is_zero());
        assert_eq!(&s("a + b") * &s("a - b"), s("a^2 - b^2"));
    }

    #[test]
    fn evaluation() {
        let v = BTreeMap::from([("a".to_string(), rational(1, 1)), ("b".to_string(), rational(3, 1))]);
        assert_eq!(s("2*a*b").eval(&v), Scalar::from_int(6));
        let only_a = BTreeMap::from([("a".to_string(), Rational::zero())]);
        assert_eq!(s("a + b").eval(&only_a), s("b"));
        assert_eq!(s("5/7").eval(&BTreeMap::new()), s("5/7"));
    }

    #[test]
    fn zero_tests() {
        assert!(s("a*b - b*a").is_zero());
        assert!(!s("a - 1").is_zero());
        assert!(s("0/1").is_zero());
    }

    #[test]
    fn rendering_is_graded_lex() {
        assert_eq!(s("1 + b + a + a^2 - 2*a*b").to_string(), "a^2 - 2*a*b + a + b + 1");
        assert_eq!(s("-3/4*t1*t2").to_string(), "-3/4*t1*t2");
        assert_eq!(Scalar::zero().to_string(), "0");
    }

    #[test]
    fn substitution_composes() {
        let x = s("a^2 + b");
        let map = BTreeMap::from([("a".to_string(), s("b + 1"))]);
        assert_eq!(x.substitute(&map), s("b^2 + 3*b + 1"));
    }

    #[test]
    fn monic_normalizes_scaling() {
        assert_eq!(s("2*a*b - 4*c").monic(), s("a*b - 2*c"));
        assert_eq!(s("-3*t1*t2").monic(), s("-1/2*t1*t2").monic());
    }

    #[test]
    fn parse_errors() {
        assert!("a/2".parse::<Scalar>().is_err());
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("(a + 1".parse::<Scalar>().is_err());
        assert!("A".parse::<Scalar>().is_err());
        assert!("a b".parse::<Scalar>().is_err());
    }
}
