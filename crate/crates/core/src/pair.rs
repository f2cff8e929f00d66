//! Lie–Rinehart pairs `(A, 𝔤)` presented as a free `A`-module on finitely
//! many generators, plus the associated graded Lie algebra `A ⊕ 𝔤` and pair
//! morphisms.
//!
//! Two families are supported. A Lie algebra pair has `A = ℚ` acting
//! trivially. A Cartan pair has `A = ℚ[x₁, …, x_m]` and generator `i` is the
//! coordinate derivation `∂_i`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exterior::Multivector;
use crate::report::{run_trials, BracketReport};
use crate::sample::Sampler;
use crate::scalar::{parse_rational, Exponents, Scalar};

/// An element of `𝔤`: generator index (0-based) to nonzero coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Vector {
    coeffs: BTreeMap<usize, Scalar>,
}

impl Vector {
    pub fn zero() -> Self {
        Vector::default()
    }

    pub fn generator(index: usize) -> Self {
        Vector::from_pairs([(index, Scalar::one())])
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, Scalar)>) -> Self {
        let mut v = Vector::zero();
        for (i, c) in pairs {
            v.add_term(i, c);
        }
        v
    }

    fn add_term(&mut self, i: usize, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(i).or_default();
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.coeffs.remove(&i);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficients(&self) -> &BTreeMap<usize, Scalar> {
        &self.coeffs
    }

    pub fn coefficient(&self, i: usize) -> Scalar {
        self.coeffs.get(&i).cloned().unwrap_or_default()
    }

    pub fn scale(&self, a: &Scalar) -> Vector {
        Vector::from_pairs(self.coeffs.iter().map(|(&i, c)| (i, c * a)))
    }

    pub fn generator_span(&self) -> usize {
        self.coeffs.keys().last().map_or(0, |i| i + 1)
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Vector({})", Multivector::from_vector(self).display('g'))
    }
}

impl Add<&Vector> for &Vector {
    type Output = Vector;

    fn add(self, rhs: &Vector) -> Vector {
        let mut out = self.clone();
        for (&i, c) in &rhs.coeffs {
            out.add_term(i, c.clone());
        }
        out
    }
}

impl Sub<&Vector> for &Vector {
    type Output = Vector;

    fn sub(self, rhs: &Vector) -> Vector {
        let mut out = self.clone();
        for (&i, c) in &rhs.coeffs {
            out.add_term(i, -c);
        }
        out
    }
}

impl Neg for &Vector {
    type Output = Vector;

    fn neg(self) -> Vector {
        Vector::from_pairs(self.coeffs.iter().map(|(&i, c)| (i, -c)))
    }
}

/// An element `(a, x)` of `A ⊕ 𝔤`; `a` sits in degree 0 and `x` in degree 1.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GradedPairElement {
    pub scalar: Scalar,
    pub vector: Vector,
}

impl GradedPairElement {
    pub fn new(scalar: Scalar, vector: Vector) -> Self {
        GradedPairElement { scalar, vector }
    }

    pub fn scalar(a: Scalar) -> Self {
        GradedPairElement::new(a, Vector::zero())
    }

    pub fn vector(x: Vector) -> Self {
        GradedPairElement::new(Scalar::zero(), x)
    }

    pub fn is_zero(&self) -> bool {
        self.scalar.is_zero() && self.vector.is_zero()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairKind {
    /// `(ℚ, 𝔤)` with the trivial anchor.
    LieAlgebra,
    /// `(ℚ[x₁..x_m], Der)` on the coordinate derivations.
    Cartan,
}

impl fmt::Display for PairKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PairKind::LieAlgebra => write!(f, "lie_algebra"),
            PairKind::Cartan => write!(f, "cartan"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieRinehartPair {
    kind: PairKind,
    dimension: usize,
    /// Full antisymmetric table, `table[i][j] = [g_i, g_j]`.
    table: Vec<Vec<Vector>>,
}

impl LieRinehartPair {
    /// Builds a pair from the brackets `[g_i, g_j]` for `i < j` (0-based) and
    /// validates it.
    pub fn new(
        kind: PairKind,
        dimension: usize,
        brackets: impl IntoIterator<Item = (usize, usize, Vector)>,
    ) -> Result<Self> {
        let pair = Self::new_unchecked(kind, dimension, brackets)?;
        pair.validate()?;
        Ok(pair)
    }

    /// Builds the table without the antisymmetry-of-input, Jacobi and anchor
    /// checks. Used to load deliberately broken fixtures.
    pub fn new_unchecked(
        kind: PairKind,
        dimension: usize,
        brackets: impl IntoIterator<Item = (usize, usize, Vector)>,
    ) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::InvalidPair("dimension must be positive".into()));
        }
        let mut table = vec![vec![Vector::zero(); dimension]; dimension];
        let mut seen = vec![vec![false; dimension]; dimension];
        let mut pair = LieRinehartPair {
            kind,
            dimension,
            table: Vec::new(),
        };
        for (i, j, value) in brackets {
            if i >= dimension || j >= dimension {
                return Err(Error::InvalidPair(format!(
                    "bracket [{}, {}] names a generator outside 1..{dimension}",
                    i + 1,
                    j + 1
                )));
            }
            if i == j {
                if !value.is_zero() {
                    return Err(Error::InvalidPair(format!("bracket [{0}, {0}] must vanish", i + 1)));
                }
                continue;
            }
            pair.check_vector(&value)
                .map_err(|e| Error::InvalidPair(format!("bracket [{}, {}]: {e}", i + 1, j + 1)))?;
            if seen[i][j] {
                return Err(Error::InvalidPair(format!(
                    "bracket [{}, {}] given twice",
                    i.min(j) + 1,
                    i.max(j) + 1
                )));
            }
            seen[i][j] = true;
            seen[j][i] = true;
            table[j][i] = -&value;
            table[i][j] = value;
        }
        pair.table = table;
        Ok(pair)
    }

    /// `sl₂` with `e1 = e`, `e2 = f`, `e3 = h`:
    /// `[e,f] = h`, `[h,e] = 2e`, `[h,f] = -2f`.
    pub fn sl2() -> Self {
        let v = |i, c| Vector::from_pairs([(i, Scalar::from_int(c))]);
        Self::new(
            PairKind::LieAlgebra,
            3,
            [(0, 1, v(2, 1)), (0, 2, v(0, -2)), (1, 2, v(1, 2))],
        )
        .expect("sl2 table is valid")
    }

    /// `gl₂` on the matrix units `e1 = E11, e2 = E12, e3 = E21, e4 = E22`.
    pub fn gl2() -> Self {
        let unit = |i: usize, j: usize| 2 * i + j;
        let mut brackets = Vec::new();
        let units = [(0, 0), (0, 1), (1, 0), (1, 1)];
        for (a, &(i, j)) in units.iter().enumerate() {
            for (b, &(k, l)) in units.iter().enumerate().skip(a + 1) {
                // [E_ij, E_kl] = δ_jk E_il - δ_li E_kj
                let mut value = Vector::zero();
                if j == k {
                    value = &value + &Vector::generator(unit(i, l));
                }
                if l == i {
                    value = &value - &Vector::generator(unit(k, j));
                }
                brackets.push((a, b, value));
            }
        }
        Self::new(PairKind::LieAlgebra, 4, brackets).expect("gl2 table is valid")
    }

    /// A 4-dimensional solvable algebra: `[e1,e2] = e3` and `e4` acting
    /// diagonally with weights `1, 1, 2`.
    pub fn solvable4() -> Self {
        let v = |i, c| Vector::from_pairs([(i, Scalar::from_int(c))]);
        Self::new(
            PairKind::LieAlgebra,
            4,
            [(0, 1, v(2, 1)), (0, 3, v(0, -1)), (1, 3, v(1, -1)), (2, 3, v(2, -2))],
        )
        .expect("solvable table is valid")
    }

    pub fn abelian(dimension: usize) -> Result<Self> {
        Self::new(PairKind::LieAlgebra, dimension, [])
    }

    /// Polynomial vector fields on `ℚ^m`.
    pub fn cartan(m: usize) -> Result<Self> {
        Self::new(PairKind::Cartan, m, [])
    }

    pub fn kind(&self) -> PairKind {
        self.kind
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Number of polynomial variables of `A`.
    pub fn variable_count(&self) -> usize {
        match self.kind {
            PairKind::LieAlgebra => 0,
            PairKind::Cartan => self.dimension,
        }
    }

    pub fn generator_prefix(&self) -> char {
        match self.kind {
            PairKind::LieAlgebra => 'e',
            PairKind::Cartan => 'd',
        }
    }

    pub fn structure_constant(&self, i: usize, j: usize) -> &Vector {
        &self.table[i][j]
    }

    /// Nonzero brackets `[g_i, g_j]`, `i < j`.
    pub fn brackets(&self) -> impl Iterator<Item = (usize, usize, &Vector)> {
        (0..self.dimension).flat_map(move |i| {
            ((i + 1)..self.dimension)
                .filter(move |&j| !self.table[i][j].is_zero())
                .map(move |j| (i, j, &self.table[i][j]))
        })
    }

    pub fn check_scalar(&self, a: &Scalar) -> Result<()> {
        let span = a.variable_span();
        if span > self.variable_count() {
            return Err(Error::Dimension(format!(
                "coefficient `{a}` uses x{span} but the {} pair has {} variables",
                self.kind,
                self.variable_count()
            )));
        }
        Ok(())
    }

    pub fn check_vector(&self, x: &Vector) -> Result<()> {
        if x.generator_span() > self.dimension {
            return Err(Error::Dimension(format!(
                "generator {}{} outside a pair of dimension {}",
                self.generator_prefix(),
                x.generator_span(),
                self.dimension
            )));
        }
        x.coefficients().values().try_for_each(|c| self.check_scalar(c))
    }

    pub fn check_multivector(&self, x: &Multivector) -> Result<()> {
        if x.generator_span() > self.dimension {
            return Err(Error::Dimension(format!(
                "generator {}{} outside a pair of dimension {}",
                self.generator_prefix(),
                x.generator_span(),
                self.dimension
            )));
        }
        x.terms().try_for_each(|(_, c)| self.check_scalar(c))
    }

    pub fn check_element(&self, u: &GradedPairElement) -> Result<()> {
        self.check_scalar(&u.scalar)?;
        self.check_vector(&u.vector)
    }

    /// `D_x(a)`.
    pub fn anchor(&self, x: &Vector, a: &Scalar) -> Result<Scalar> {
        self.check_vector(x)?;
        self.check_scalar(a)?;
        Ok(self.anchor_raw(x, a))
    }

    pub(crate) fn anchor_raw(&self, x: &Vector, a: &Scalar) -> Scalar {
        match self.kind {
            PairKind::LieAlgebra => Scalar::zero(),
            PairKind::Cartan => {
                let mut out = Scalar::zero();
                for (&i, c) in x.coefficients() {
                    let da = a.derivative(i);
                    if !da.is_zero() {
                        out = &out + &(c * &da);
                    }
                }
                out
            }
        }
    }

    /// The Lie bracket of `𝔤`.
    pub fn bracket_vectors(&self, x: &Vector, y: &Vector) -> Result<Vector> {
        self.check_vector(x)?;
        self.check_vector(y)?;
        Ok(self.bracket_raw(x, y))
    }

    /// `[a g_i, b g_j] = ab [g_i, g_j] + a D_i(b) g_j - b D_j(a) g_i`.
    pub(crate) fn bracket_raw(&self, x: &Vector, y: &Vector) -> Vector {
        let mut out = Vector::zero();
        for (&i, a) in x.coefficients() {
            for (&j, b) in y.coefficients() {
                let t = &self.table[i][j];
                if !t.is_zero() {
                    out = &out + &t.scale(&(a * b));
                }
                if self.kind == PairKind::Cartan {
                    let db = b.derivative(i);
                    out.add_term(j, a * &db);
                    let da = a.derivative(j);
                    out.add_term(i, -(b * &da));
                }
            }
        }
        out
    }

    /// The bracket of `A ⊕ 𝔤`: `[(a,x), (b,y)] = (D_x(b) + D_y(a), [x,y])`.
    pub fn associated_bracket(&self, u: &GradedPairElement, v: &GradedPairElement) -> Result<GradedPairElement> {
        self.check_element(u)?;
        self.check_element(v)?;
        Ok(self.associated_raw(u, v))
    }

    pub(crate) fn associated_raw(&self, u: &GradedPairElement, v: &GradedPairElement) -> GradedPairElement {
        GradedPairElement {
            scalar: &self.anchor_raw(&u.vector, &v.scalar) + &self.anchor_raw(&v.vector, &u.scalar),
            vector: self.bracket_raw(&u.vector, &v.vector),
        }
    }

    /// Jacobi on generators, and for Cartan pairs the vanishing of the table
    /// forced by `D_{[∂_i, ∂_j]} = [∂_i, ∂_j] = 0`.
    pub fn validate(&self) -> Result<()> {
        let d = self.dimension;
        if self.kind == PairKind::Cartan {
            if let Some((i, j, _)) = self.brackets().next() {
                return Err(Error::InvalidPair(format!(
                    "Cartan pair has nonzero bracket [d{}, d{}]; coordinate derivations commute",
                    i + 1,
                    j + 1
                )));
            }
            return Ok(());
        }
        for (i, j, value) in self.brackets() {
            if let Some(c) = value.coefficients().values().find(|c| c.as_constant().is_none()) {
                return Err(Error::InvalidPair(format!(
                    "bracket [e{}, e{}] has non-constant coefficient `{c}`",
                    i + 1,
                    j + 1
                )));
            }
        }
        for i in 0..d {
            for j in (i + 1)..d {
                for k in (j + 1)..d {
                    let (gi, gj, gk) = (Vector::generator(i), Vector::generator(j), Vector::generator(k));
                    let jac = &(&self.bracket_raw(&gi, &self.bracket_raw(&gj, &gk))
                        + &self.bracket_raw(&gj, &self.bracket_raw(&gk, &gi)))
                        + &self.bracket_raw(&gk, &self.bracket_raw(&gi, &gj));
                    if !jac.is_zero() {
                        return Err(Error::InvalidPair(format!(
                            "Jacobi identity fails on (e{}, e{}, e{}): {}",
                            i + 1,
                            j + 1,
                            k + 1,
                            Multivector::from_vector(&jac).display('e')
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn from_document(doc: &PairDocument) -> Result<Self> {
        Self::new(doc.kind, doc.dimension, doc.bracket_entries()?)
    }

    pub fn from_document_unchecked(doc: &PairDocument) -> Result<Self> {
        Self::new_unchecked(doc.kind, doc.dimension, doc.bracket_entries()?)
    }

    /// Parses and validates a JSON pair document.
    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_document(&PairDocument::from_json(text)?)
    }

    pub fn to_document(&self) -> PairDocument {
        PairDocument {
            kind: self.kind,
            dimension: self.dimension,
            brackets: self
                .brackets()
                .map(|(i, j, v)| BracketEntry {
                    i: i + 1,
                    j: j + 1,
                    value: v
                        .coefficients()
                        .iter()
                        .map(|(&g, c)| VectorTerm {
                            gen: g + 1,
                            coeff: CoeffLiteral::from_scalar(c),
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}

/// The JSON form of a pair. Generator indices are 1-based.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairDocument {
    pub kind: PairKind,
    pub dimension: usize,
    #[serde(default)]
    pub brackets: Vec<BracketEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub value: Vec<VectorTerm>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VectorTerm {
    pub gen: usize,
    pub coeff: CoeffLiteral,
}

/// `"p/q"`, or a list of polynomial terms.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoeffLiteral {
    Rational(String),
    Polynomial(Vec<PolynomialTerm>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolynomialTerm {
    pub exponents: Vec<u32>,
    pub coeff: String,
}

impl CoeffLiteral {
    pub fn to_scalar(&self) -> Result<Scalar> {
        let wrap = |e: Error| Error::Document(e.to_string());
        match self {
            CoeffLiteral::Rational(s) => Ok(Scalar::constant(parse_rational(s).map_err(wrap)?)),
            CoeffLiteral::Polynomial(terms) => {
                let mut parsed = Vec::with_capacity(terms.len());
                for t in terms {
                    parsed.push((
                        Exponents::new(t.exponents.clone()),
                        parse_rational(&t.coeff).map_err(wrap)?,
                    ));
                }
                Ok(Scalar::from_terms(parsed))
            }
        }
    }

    pub fn from_scalar(a: &Scalar) -> Self {
        match a.as_constant() {
            Some(c) => CoeffLiteral::Rational(c.to_string()),
            None => CoeffLiteral::Polynomial(
                a.terms()
                    .map(|(e, c)| PolynomialTerm {
                        exponents: e.as_slice().to_vec(),
                        coeff: c.to_string(),
                    })
                    .collect(),
            ),
        }
    }
}

impl PairDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("pair documents serialize")
    }

    /// Brackets as 0-based `(i, j, value)` triples.
    pub fn bracket_entries(&self) -> Result<Vec<(usize, usize, Vector)>> {
        let mut out = Vec::with_capacity(self.brackets.len());
        for entry in &self.brackets {
            if entry.i == 0 || entry.j == 0 {
                return Err(Error::Document("generator indices are 1-based".into()));
            }
            let mut value = Vector::zero();
            for term in &entry.value {
                if term.gen == 0 {
                    return Err(Error::Document("generator indices are 1-based".into()));
                }
                value = &value + &Vector::from_pairs([(term.gen - 1, term.coeff.to_scalar()?)]);
            }
            out.push((entry.i - 1, entry.j - 1, value));
        }
        Ok(out)
    }
}

/// A morphism of pairs `(f, g): (A, 𝔤) → (B, 𝔥)`. `f` is the substitution
/// `x_k ↦ scalar_map[k]`; `g` is the `A`-semilinear extension of
/// `g_i ↦ vector_map[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairMorphism {
    source: LieRinehartPair,
    target: LieRinehartPair,
    scalar_map: Vec<Scalar>,
    vector_map: Vec<Vector>,
    validated: bool,
}

impl PairMorphism {
    pub fn new(
        source: LieRinehartPair,
        target: LieRinehartPair,
        scalar_map: Vec<Scalar>,
        vector_map: Vec<Vector>,
    ) -> Result<Self> {
        if scalar_map.len() != source.variable_count() {
            return Err(Error::Argument(format!(
                "scalar map has {} images for {} source variables",
                scalar_map.len(),
                source.variable_count()
            )));
        }
        if vector_map.len() != source.dimension() {
            return Err(Error::Argument(format!(
                "vector map has {} images for {} source generators",
                vector_map.len(),
                source.dimension()
            )));
        }
        scalar_map.iter().try_for_each(|a| target.check_scalar(a))?;
        vector_map.iter().try_for_each(|x| target.check_vector(x))?;
        Ok(PairMorphism {
            source,
            target,
            scalar_map,
            vector_map,
            validated: false,
        })
    }

    pub fn identity(pair: &LieRinehartPair) -> Self {
        let scalars = (0..pair.variable_count()).map(Scalar::var).collect();
        let vectors = (0..pair.dimension()).map(Vector::generator).collect();
        let mut m =
            PairMorphism::new(pair.clone(), pair.clone(), scalars, vectors).expect("identity maps are well formed");
        m.validated = true;
        m
    }

    /// `sl₂ → gl₂`: `e ↦ E12`, `f ↦ E21`, `h ↦ E11 - E22`.
    pub fn sl2_into_gl2() -> Self {
        let h = &Vector::generator(0) - &Vector::generator(3);
        let mut m = PairMorphism::new(
            LieRinehartPair::sl2(),
            LieRinehartPair::gl2(),
            Vec::new(),
            vec![Vector::generator(1), Vector::generator(2), h],
        )
        .expect("inclusion maps are well formed");
        m.validate().expect("sl2 -> gl2 is a morphism");
        m
    }

    pub fn source(&self) -> &LieRinehartPair {
        &self.source
    }

    pub fn target(&self) -> &LieRinehartPair {
        &self.target
    }

    pub fn scalar_images(&self) -> &[Scalar] {
        &self.scalar_map
    }

    pub fn vector_images(&self) -> &[Vector] {
        &self.vector_map
    }

    pub fn is_validated(&self) -> bool {
        self.validated
    }

    /// Checks the morphism conditions exhaustively on generators:
    /// `f(D_{g_i}(x_k)) = D_{g(g_i)}(f(x_k))` and `g([g_i, g_j]) = [g(g_i), g(g_j)]`.
    /// Together with `f` being a substitution and `g` being `f`-semilinear
    /// this implies the conditions on all elements.
    pub fn validate(&mut self) -> Result<()> {
        let (s, t) = (&self.source, &self.target);
        for i in 0..s.dimension() {
            let gi = Vector::generator(i);
            for k in 0..s.variable_count() {
                let lhs = self.map_scalar_raw(&s.anchor_raw(&gi, &Scalar::var(k)));
                let rhs = t.anchor_raw(&self.vector_map[i], &self.scalar_map[k]);
                if lhs != rhs {
                    return Err(Error::InvalidPair(format!(
                        "anchor not preserved on ({}{}, x{}): {lhs} vs {rhs}",
                        s.generator_prefix(),
                        i + 1,
                        k + 1
                    )));
                }
            }
            for j in (i + 1)..s.dimension() {
                let lhs = self.map_vector_raw(s.structure_constant(i, j));
                let rhs = t.bracket_raw(&self.vector_map[i], &self.vector_map[j]);
                if lhs != rhs {
                    return Err(Error::InvalidPair(format!(
                        "bracket not preserved on ({0}{1}, {0}{2})",
                        s.generator_prefix(),
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        self.validated = true;
        Ok(())
    }

    /// `f(a)`.
    pub fn map_scalar(&self, a: &Scalar) -> Result<Scalar> {
        self.source.check_scalar(a)?;
        Ok(self.map_scalar_raw(a))
    }

    pub(crate) fn map_scalar_raw(&self, a: &Scalar) -> Scalar {
        if self.scalar_map.is_empty() {
            return a.clone();
        }
        a.substitute(&self.scalar_map).expect("checked against the source")
    }

    /// `g(x)`.
    pub fn map_vector(&self, x: &Vector) -> Result<Vector> {
        self.source.check_vector(x)?;
        Ok(self.map_vector_raw(x))
    }

    pub(crate) fn map_vector_raw(&self, x: &Vector) -> Vector {
        let mut out = Vector::zero();
        for (&i, c) in x.coefficients() {
            out = &out + &self.vector_map[i].scale(&self.map_scalar_raw(c));
        }
        out
    }

    /// The associated morphism `⋀g_f` of exterior algebras: `f` on `⋀⁰` and
    /// `g` factor-wise on wedge monomials.
    pub fn exterior_image(&self, x: &Multivector) -> Result<Multivector> {
        if !self.validated {
            return Err(Error::Precondition(
                "exterior image needs a validated pair morphism".into(),
            ));
        }
        self.source.check_multivector(x)?;
        Ok(self.exterior_image_raw(x))
    }

    pub(crate) fn exterior_image_raw(&self, x: &Multivector) -> Multivector {
        let mut out = Multivector::zero();
        for (m, c) in x.terms() {
            let mut acc = Multivector::from_scalar(self.map_scalar_raw(c));
            for &g in m.indices() {
                acc = acc.wedge(&Multivector::from_vector(&self.vector_map[g]));
            }
            out = &out + &acc;
        }
        out
    }

    /// `f ∘ other` when `other: P → source` and `self: source → Q`.
    pub fn compose(&self, other: &PairMorphism) -> Result<PairMorphism> {
        if other.target != self.source {
            return Err(Error::Argument("morphisms do not compose".into()));
        }
        let scalars = other.scalar_map.iter().map(|a| self.map_scalar_raw(a)).collect();
        let vectors = other.vector_map.iter().map(|x| self.map_vector_raw(x)).collect();
        let mut m = PairMorphism::new(other.source.clone(), self.target.clone(), scalars, vectors)?;
        m.validated = self.validated && other.validated;
        Ok(m)
    }

    /// Parses a morphism document
    /// `{"source": pair, "target": pair, "scalar_map": [...], "vector_map": [...]}`.
    pub fn from_json(text: &str, validate_pairs: bool) -> Result<Self> {
        let doc: MorphismDocument = serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))?;
        let load = |d: &PairDocument| {
            if validate_pairs {
                LieRinehartPair::from_document(d)
            } else {
                LieRinehartPair::from_document_unchecked(d)
            }
        };
        let source = load(&doc.source)?;
        let target = load(&doc.target)?;
        let scalars = doc
            .scalar_map
            .iter()
            .map(CoeffLiteral::to_scalar)
            .collect::<Result<Vec<_>>>()?;
        let mut vectors = Vec::with_capacity(doc.vector_map.len());
        for terms in &doc.vector_map {
            let mut v = Vector::zero();
            for t in terms {
                if t.gen == 0 {
                    return Err(Error::Document("generator indices are 1-based".into()));
                }
                v = &v + &Vector::from_pairs([(t.gen - 1, t.coeff.to_scalar()?)]);
            }
            vectors.push(v);
        }
        PairMorphism::new(source, target, scalars, vectors).map_err(|e| Error::Document(e.to_string()))
    }
}

fn first_nonzero(residuals: impl IntoIterator<Item = Multivector>) -> Multivector {
    residuals.into_iter().find(|r| !r.is_zero()).unwrap_or_default()
}

/// Samples `a, x, y` and checks the Leibniz rule
/// `[x, a·y] = D_x(a)·y + a·[x, y]` together with the anchor being a Lie
/// morphism, `D_{[x,y]}(a) = D_x(D_y(a)) - D_y(D_x(a))`.
pub fn check_leibniz(pair: &LieRinehartPair, trials: usize, seed: u64) -> Result<BracketReport> {
    let outcome = run_trials(
        trials,
        seed,
        |rng| {
            let s = Sampler::new(pair);
            vec![
                Multivector::from_scalar(s.scalar(rng)),
                Multivector::from_vector(&s.vector(rng)),
                Multivector::from_vector(&s.vector(rng)),
            ]
        },
        |w| {
            let a = w[0].scalar_part();
            let (x, y) = (w[1].vector_part(), w[2].vector_part());
            let leibniz = &(&pair.bracket_raw(&x, &y.scale(&a)) - &y.scale(&pair.anchor_raw(&x, &a)))
                - &pair.bracket_raw(&x, &y).scale(&a);
            let anchor = &(&pair.anchor_raw(&pair.bracket_raw(&x, &y), &a)
                - &pair.anchor_raw(&x, &pair.anchor_raw(&y, &a)))
                + &pair.anchor_raw(&y, &pair.anchor_raw(&x, &a));
            Ok(first_nonzero([
                Multivector::from_vector(&leibniz),
                Multivector::from_scalar(anchor),
            ]))
        },
    )?;
    Ok(BracketReport::new("leibniz", pair.generator_prefix()).with_outcome(outcome))
}

/// Samples source elements and checks `g(a·x) = f(a)·g(x)`,
/// `f(D_x(a)) = D_{g(x)}(f(a))`, `g([x,y]) = [g(x), g(y)]`,
/// `f(ab) = f(a)f(b)` and `f(1) = 1`.
pub fn check_pair_morphism(m: &PairMorphism, trials: usize, seed: u64) -> Result<BracketReport> {
    let (s, t) = (m.source(), m.target());
    let outcome = run_trials(
        trials,
        seed,
        |rng| {
            let sm = Sampler::new(s);
            vec![
                Multivector::from_scalar(sm.scalar(rng)),
                Multivector::from_scalar(sm.scalar(rng)),
                Multivector::from_vector(&sm.vector(rng)),
                Multivector::from_vector(&sm.vector(rng)),
            ]
        },
        |w| {
            let (a, b) = (w[0].scalar_part(), w[1].scalar_part());
            let (x, y) = (w[2].vector_part(), w[3].vector_part());
            let (f, g) = (|c: &Scalar| m.map_scalar_raw(c), |v: &Vector| m.map_vector_raw(v));
            Ok(first_nonzero([
                Multivector::from_vector(&(&g(&x.scale(&a)) - &g(&x).scale(&f(&a)))),
                Multivector::from_scalar(&f(&s.anchor_raw(&x, &a)) - &t.anchor_raw(&g(&x), &f(&a))),
                Multivector::from_vector(&(&g(&s.bracket_raw(&x, &y)) - &t.bracket_raw(&g(&x), &g(&y)))),
                Multivector::from_scalar(&f(&(&a * &b)) - &(&f(&a) * &f(&b))),
                Multivector::from_scalar(&f(&Scalar::one()) - &Scalar::one()),
            ]))
        },
    )?;
    Ok(BracketReport::new("pair-morphism", s.generator_prefix()).with_outcome(outcome))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct MorphismDocument {
    source: PairDocument,
    target: PairDocument,
    #[serde(default)]
    scalar_map: Vec<CoeffLiteral>,
    vector_map: Vec<Vec<VectorTerm>>,
}
