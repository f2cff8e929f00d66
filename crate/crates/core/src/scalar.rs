//! The coefficient algebra: sparse multivariate polynomials over the
//! rationals. A rational number is a constant polynomial.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::Argument(format!("bad rational literal `{text}`")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::Argument(format!("bad rational literal `{text}`")))?;
    if den.is_zero() {
        return Err(Error::Argument(format!("zero denominator in `{text}`")));
    }
    Ok(Rational::new(num, den))
}

/// Exponent vector with trailing zeros trimmed, ordered graded
/// lexicographically (total degree first, then lexicographic).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Exponents(Vec<u32>);

impl Exponents {
    pub fn new(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Exponents(exps)
    }

    pub fn var(index: usize) -> Self {
        let mut exps = vec![0; index + 1];
        exps[index] = 1;
        Exponents(exps)
    }

    pub fn get(&self, index: usize) -> u32 {
        self.0.get(index).copied().unwrap_or(0)
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_constant(&self) -> bool {
        self.0.is_empty()
    }

    fn mul(&self, other: &Exponents) -> Exponents {
        let len = self.0.len().max(other.0.len());
        Exponents((0..len).map(|i| self.get(i) + other.get(i)).collect())
    }
}

impl Ord for Exponents {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Exponents {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// An element of the coefficient algebra `A`.
///
/// Invariant: no stored coefficient is zero; zero is the empty map.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    terms: BTreeMap<Exponents, Rational>,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Scalar::term(Exponents::default(), c)
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::constant(int(n))
    }

    /// The coordinate function `x_{index+1}`.
    pub fn var(index: usize) -> Self {
        Scalar::term(Exponents::var(index), Rational::one())
    }

    pub fn term(exps: Exponents, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Scalar { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Exponents, Rational)>) -> Self {
        let mut out = Scalar::zero();
        for (e, c) in terms {
            out.add_term(e, c);
        }
        out
    }

    fn add_term(&mut self, exps: Exponents, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&exps);
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// `Some(c)` if this is a constant polynomial (including zero).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self
                .terms
                .iter()
                .next()
                .filter(|(e, _)| e.is_constant())
                .map(|(_, c)| c.clone()),
            _ => None,
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of variables actually referenced (highest index + 1).
    pub fn variable_span(&self) -> usize {
        self.terms.keys().map(|e| e.as_slice().len()).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Exponents::total_degree).max()
    }

    pub fn scale(&self, c: &Rational) -> Scalar {
        if c.is_zero() {
            return Scalar::zero();
        }
        Scalar {
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// `∂/∂x_{index+1}`.
    pub fn derivative(&self, index: usize) -> Scalar {
        let mut out = Scalar::zero();
        for (e, c) in &self.terms {
            let k = e.get(index);
            if k == 0 {
                continue;
            }
            let mut exps = e.as_slice().to_vec();
            exps[index] -= 1;
            out.add_term(Exponents::new(exps), c * int(k as i64));
        }
        out
    }

    pub fn pow(&self, k: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes `images[i]` for `x_{i+1}`.
    pub fn substitute(&self, images: &[Scalar]) -> Result<Scalar> {
        if self.variable_span() > images.len() {
            return Err(Error::Dimension(format!(
                "substitution defines {} variables but the polynomial uses {}",
                images.len(),
                self.variable_span()
            )));
        }
        let mut out = Scalar::zero();
        for (e, c) in &self.terms {
            let mut monomial = Scalar::constant(c.clone());
            for (i, &k) in e.as_slice().iter().enumerate() {
                if k > 0 {
                    monomial = &monomial * &images[i].pow(k);
                }
            }
            out = &out + &monomial;
        }
        Ok(out)
    }

    pub(crate) fn fmt_with_sign(&self, f: &mut fmt::Formatter<'_>, leading: bool) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (i == 0 && leading, negative) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            write_monomial(f, e, &c.abs())?;
        }
        Ok(())
    }
}

/// Writes `|c| * x1^a * x2^b` with unit coefficients elided.
pub(crate) fn write_monomial(f: &mut fmt::Formatter<'_>, e: &Exponents, abs: &Rational) -> fmt::Result {
    if e.is_constant() {
        return write!(f, "{abs}");
    }
    let mut first = true;
    if !abs.is_one() {
        write!(f, "{abs}")?;
        first = false;
    }
    for (i, &k) in e.as_slice().iter().enumerate() {
        if k == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        write!(f, "x{}", i + 1)?;
        if k > 1 {
            write!(f, "^{k}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with_sign(f, true)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

impl From<Rational> for Scalar {
    fn from(c: Rational) -> Self {
        Scalar::constant(c)
    }
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;

    fn add(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;

    fn sub(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;

    fn mul(self, rhs: &Scalar) -> Scalar {
        let mut out = Scalar::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea.mul(eb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        Scalar {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;

    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;

    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;

    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Neg for Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> Scalar {
        Scalar::var(i)
    }

    #[test]
    fn rationals_are_normalized() {
        let r = parse_rational("6/-4").unwrap();
        assert_eq!(r, rat(-3, 2));
        assert_eq!(r.to_string(), "-3/2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("a/2").is_err());
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let p = &x(0) - &x(0);
        assert!(p.is_zero());
        assert_eq!(p, Scalar::zero());
        assert!(Scalar::constant(int(0)).is_zero());
    }

    #[test]
    fn derivative_of_square() {
        let sq = &x(0) * &x(0);
        assert_eq!(sq.derivative(0), Scalar::from_int(2) * x(0));
        assert!(sq.derivative(1).is_zero());
    }

    #[test]
    fn derivative_is_a_derivation() {
        let a = &(&x(0) * &x(1)) + &Scalar::constant(rat(1, 3));
        let b = &(&x(1) * &x(1)) - &x(0);
        for i in 0..2 {
            let lhs = (&a * &b).derivative(i);
            let rhs = &(&a.derivative(i) * &b) + &(&a * &b.derivative(i));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn graded_lex_rendering() {
        let p = Scalar::from_terms([
            (Exponents::default(), int(1)),
            (Exponents::new(vec![1]), int(-1)),
            (Exponents::new(vec![0, 2]), rat(3, 2)),
            (Exponents::new(vec![1, 1]), int(1)),
        ]);
        assert_eq!(p.to_string(), "x1*x2 + 3/2*x2^2 - x1 + 1");
        assert_eq!((-&x(2)).to_string(), "-x3");
        assert_eq!(Scalar::zero().to_string(), "0");
    }

    #[test]
    fn substitution() {
        let p = &(&x(0) * &x(0)) + &x(1);
        let images = [&x(1) + &Scalar::one(), Scalar::from_int(3)];
        let expected = &(&(&x(1) * &x(1)) + &(&Scalar::from_int(2) * &x(1))) + &Scalar::from_int(4);
        assert_eq!(p.substitute(&images).unwrap(), expected);
        assert!(p.substitute(&images[..1]).is_err());
    }

    #[test]
    fn trailing_zero_exponents_are_trimmed() {
        assert_eq!(Exponents::new(vec![1, 0, 0]), Exponents::new(vec![1]));
        assert_eq!(x(0).variable_span(), 1);
        assert_eq!(Scalar::one().variable_span(), 0);
    }
}
