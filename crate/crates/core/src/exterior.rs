//! The exterior algebra `⋀𝔤_A` of a pair whose Lie partner is a free
//! `A`-module on finitely many generators.
//!
//! A [`Multivector`] is kept in normal form: a map from strictly increasing
//! generator tuples to nonzero coefficients in `A`. Coefficients are absorbed
//! into `A`, so relations like `(a·x₁)∧x₂ = x₁∧(a·x₂)` hold by representation
//! and equality is map equality.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graded::Sign;
use crate::pair::{GradedPairElement, Vector};
use crate::scalar::{write_monomial, Rational, Scalar};

/// A strictly increasing tuple of 0-based generator indices. The empty tuple
/// is the `⋀⁰ ≅ A` slot.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<usize>);

impl Monomial {
    pub fn unit() -> Self {
        Monomial(Vec::new())
    }

    pub fn generator(index: usize) -> Self {
        Monomial(vec![index])
    }

    /// Normalizes an arbitrary index word: `None` on a repeated index,
    /// otherwise the sorted monomial and the sign of the sorting permutation.
    pub fn normalize(word: &[usize]) -> Option<(Monomial, Sign)> {
        let mut sorted = word.to_vec();
        let mut sign = Sign::Plus;
        // Insertion sort, counting transpositions.
        for i in 1..sorted.len() {
            let mut j = i;
            while j > 0 && sorted[j - 1] > sorted[j] {
                sorted.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some((Monomial(sorted), sign))
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `self ∧ other` as a signed monomial, `None` if the index sets meet.
    pub fn wedge(&self, other: &Monomial) -> Option<(Monomial, Sign)> {
        let mut merged = Vec::with_capacity(self.len() + other.len());
        let mut inversions = 0i64;
        let (mut i, mut j) = (0, 0);
        while i < self.len() && j < other.len() {
            match self.0[i].cmp(&other.0[j]) {
                Ordering::Equal => return None,
                Ordering::Less => {
                    merged.push(self.0[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    // other[j] jumps over the remaining self entries.
                    inversions += (self.len() - i) as i64;
                    merged.push(other.0[j]);
                    j += 1;
                }
            }
        }
        merged.extend_from_slice(&self.0[i..]);
        merged.extend_from_slice(&other.0[j..]);
        Some((Monomial(merged), Sign::from_parity(inversions)))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Tensor or antisymmetric degree of a nonzero multivector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Degree {
    Of(i64),
    Inhomogeneous,
}

impl Degree {
    pub fn value(self) -> Option<i64> {
        match self {
            Degree::Of(d) => Some(d),
            Degree::Inhomogeneous => None,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::Of(d) => write!(f, "{d}"),
            Degree::Inhomogeneous => write!(f, "inhomogeneous"),
        }
    }
}

/// An element of `⋀𝔤_A`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Multivector {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Multivector {
    pub fn zero() -> Self {
        Multivector::default()
    }

    pub fn one() -> Self {
        Multivector::from_scalar(Scalar::one())
    }

    pub fn from_scalar(a: Scalar) -> Self {
        Multivector::term(Monomial::unit(), a)
    }

    pub fn generator(index: usize) -> Self {
        Multivector::term(Monomial::generator(index), Scalar::one())
    }

    pub fn term(m: Monomial, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Multivector { terms }
    }

    /// `c · g_{w_1} ∧ … ∧ g_{w_k}` for an arbitrary index word.
    pub fn wedge_word(word: &[usize], c: Scalar) -> Self {
        match Monomial::normalize(word) {
            None => Multivector::zero(),
            Some((m, sign)) => Multivector::term(m, signed(c, sign)),
        }
    }

    pub fn from_vector(v: &Vector) -> Self {
        let mut out = Multivector::zero();
        for (&i, c) in v.coefficients() {
            out.add_term(Monomial::generator(i), c.clone());
        }
        out
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing = &*existing + &c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// The `⋀⁰` component.
    pub fn scalar_part(&self) -> Scalar {
        self.coefficient(&Monomial::unit())
    }

    /// The `⋀¹` component as a vector.
    pub fn vector_part(&self) -> Vector {
        Vector::from_pairs(
            self.terms
                .iter()
                .filter(|(m, _)| m.len() == 1)
                .map(|(m, c)| (m.indices()[0], c.clone())),
        )
    }

    /// A-scalar multiplication `a · x`.
    pub fn scale(&self, a: &Scalar) -> Multivector {
        let mut out = Multivector::zero();
        if a.is_zero() {
            return out;
        }
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * a);
        }
        out
    }

    pub fn scale_rational(&self, r: &Rational) -> Multivector {
        if r.is_zero() {
            return Multivector::zero();
        }
        Multivector {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.scale(r))).collect(),
        }
    }

    pub fn signed(&self, sign: Sign) -> Multivector {
        match sign {
            Sign::Plus => self.clone(),
            Sign::Minus => -self,
        }
    }

    /// The exterior product, A-bilinear.
    pub fn wedge(&self, other: &Multivector) -> Multivector {
        let mut out = Multivector::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((m, sign)) = ma.wedge(mb) {
                    out.add_term(m, signed(ca * cb, sign));
                }
            }
        }
        out
    }

    /// Homogeneous components keyed by tensor degree.
    pub fn components(&self) -> BTreeMap<usize, Multivector> {
        let mut out: BTreeMap<usize, Multivector> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.len()).or_default().terms.insert(m.clone(), c.clone());
        }
        out
    }

    pub fn component(&self, degree: usize) -> Multivector {
        Multivector {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.len() == degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// `|x|`: the common monomial length.
    pub fn tensor_degree(&self) -> Result<Degree> {
        let mut lengths = self.terms.keys().map(Monomial::len);
        let first = lengths.next().ok_or(Error::ZeroDegree)?;
        if lengths.all(|l| l == first) {
            Ok(Degree::Of(first as i64))
        } else {
            Ok(Degree::Inhomogeneous)
        }
    }

    /// `deg(x) = |x| - 1`.
    pub fn antisym_degree(&self) -> Result<Degree> {
        Ok(match self.tensor_degree()? {
            Degree::Of(d) => Degree::Of(d - 1),
            Degree::Inhomogeneous => Degree::Inhomogeneous,
        })
    }

    /// Largest generator index used, plus one.
    pub fn generator_span(&self) -> usize {
        self.terms
            .keys()
            .filter_map(|m| m.indices().last())
            .map(|&i| i + 1)
            .max()
            .unwrap_or(0)
    }

    pub fn variable_span(&self) -> usize {
        self.terms.values().map(Scalar::variable_span).max().unwrap_or(0)
    }

    /// Canonical text with generators named `{prefix}1`, `{prefix}2`, ….
    pub fn display(&self, prefix: char) -> Rendered<'_> {
        Rendered { mv: self, prefix }
    }
}

pub(crate) fn signed(c: Scalar, sign: Sign) -> Scalar {
    match sign {
        Sign::Plus => c,
        Sign::Minus => -c,
    }
}

/// `A ⊕ 𝔤 ↪ ⋀𝔤_A`: scalar part to `⋀⁰`, vector part to `⋀¹`.
pub fn embed(u: &GradedPairElement) -> Multivector {
    let mut out = Multivector::from_vector(&u.vector);
    out.add_term(Monomial::unit(), u.scalar.clone());
    out
}

/// Inverse of [`embed`] on multivectors of tensor degree at most one.
pub fn project(x: &Multivector) -> Result<GradedPairElement> {
    if let Some((m, _)) = x.terms().find(|(m, _)| m.len() > 1) {
        return Err(Error::Argument(format!(
            "multivector has a component of tensor degree {} outside A ⊕ 𝔤",
            m.len()
        )));
    }
    Ok(GradedPairElement {
        scalar: x.scalar_part(),
        vector: x.vector_part(),
    })
}

pub struct Rendered<'a> {
    mv: &'a Multivector,
    prefix: char,
}

impl fmt::Display for Rendered<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mv.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.mv.terms.iter().enumerate() {
            let first = i == 0;
            if m.is_empty() {
                // The scalar slot sorts first.
                c.fmt_with_sign(f, first)?;
                continue;
            }
            if c.len() == 1 {
                let (e, r) = c.terms().next().expect("nonempty");
                match (first, r.is_negative()) {
                    (true, true) => write!(f, "-")?,
                    (true, false) => {}
                    (false, true) => write!(f, " - ")?,
                    (false, false) => write!(f, " + ")?,
                }
                let abs = r.abs();
                if !(e.is_constant() && abs.is_one()) {
                    write_monomial(f, e, &abs)?;
                    write!(f, "*")?;
                }
            } else {
                if !first {
                    write!(f, " + ")?;
                }
                write!(f, "({c})*")?;
            }
            for (k, g) in m.indices().iter().enumerate() {
                if k > 0 {
                    write!(f, "^")?;
                }
                write!(f, "{}{}", self.prefix, g + 1)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Multivector({})", self.display('g'))
    }
}

impl From<Scalar> for Multivector {
    fn from(a: Scalar) -> Self {
        Multivector::from_scalar(a)
    }
}

impl Add<&Multivector> for &Multivector {
    type Output = Multivector;

    fn add(self, rhs: &Multivector) -> Multivector {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub<&Multivector> for &Multivector {
    type Output = Multivector;

    fn sub(self, rhs: &Multivector) -> Multivector {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Neg for &Multivector {
    type Output = Multivector;

    fn neg(self) -> Multivector {
        Multivector {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Add for Multivector {
    type Output = Multivector;

    fn add(self, rhs: Multivector) -> Multivector {
        &self + &rhs
    }
}

impl Sub for Multivector {
    type Output = Multivector;

    fn sub(self, rhs: Multivector) -> Multivector {
        &self - &rhs
    }
}

impl Neg for Multivector {
    type Output = Multivector;

    fn neg(self) -> Multivector {
        -&self
    }
}

impl std::iter::Sum for Multivector {
    fn sum<I: Iterator<Item = Multivector>>(iter: I) -> Multivector {
        let mut acc = Multivector::zero();
        for x in iter {
            for (m, c) in x.terms {
                acc.add_term(m, c);
            }
        }
        acc
    }
}
