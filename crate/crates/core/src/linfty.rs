//! The Lie n-brackets on `⋀𝔤_A`, the weak Jacobi equations they satisfy, the
//! Chevalley–Eilenberg differential of a Lie algebra, and the structure
//! equation of L∞-morphisms applied to the natural injection
//! `A ⊕ 𝔤 → ⋀𝔤_A` and to strict morphisms.
//!
//! All gradings here are tensor degrees and all signs are Koszul signs in
//! that grading.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exterior::{embed, Degree, Multivector};
use crate::graded::{koszul_sign, parity_sign, shuffles, shuffles_allow_empty, Permutation};
use crate::pair::{GradedPairElement, LieRinehartPair, PairKind, PairMorphism};
use crate::report::{run_trials, BracketReport};
use crate::sample::Sampler;
use crate::scalar::{rat, Rational, Scalar};
use crate::schouten::sn_raw;

/// Default largest arity for structure-equation checks.
pub const DEFAULT_ARITY_CAP: usize = 5;

/// Largest tensor degree drawn for n-bracket arguments.
pub const SAMPLE_MAX_DEGREE: usize = 2;

/// A family of graded symmetric brackets `l_1, l_2, …` of degree `-1`.
pub trait BracketFamily: Sync {
    fn bracket(&self, args: &[Multivector]) -> Result<Multivector>;

    /// True when `l_n` is known to vanish identically, so sums can skip it.
    fn vanishes(&self, n: usize) -> bool {
        n == 1
    }
}

/// A family of graded symmetric multilinear maps `f_1, f_2, …` of degree 0.
pub trait MorphismFamily: Sync {
    fn component(&self, args: &[Multivector]) -> Result<Multivector>;

    fn vanishes(&self, _k: usize) -> bool {
        false
    }
}

/// The Lie n-brackets of a pair.
#[derive(Clone, Copy, Debug)]
pub struct ExteriorBrackets<'a> {
    pub pair: &'a LieRinehartPair,
}

impl BracketFamily for ExteriorBrackets<'_> {
    fn bracket(&self, args: &[Multivector]) -> Result<Multivector> {
        if args.is_empty() {
            return Err(Error::Argument("n-bracket needs at least one argument".into()));
        }
        Ok(n_bracket_raw(self.pair, args))
    }
}

/// `A ⊕ 𝔤` as an L∞-algebra inside `⋀^{≤1}𝔤_A`: only the binary bracket,
/// the associated bracket, is nonzero.
#[derive(Clone, Copy, Debug)]
pub struct AssociatedBrackets<'a> {
    pub pair: &'a LieRinehartPair,
}

impl BracketFamily for AssociatedBrackets<'_> {
    fn bracket(&self, args: &[Multivector]) -> Result<Multivector> {
        if args.len() != 2 {
            return Ok(Multivector::zero());
        }
        let u = crate::exterior::project(&args[0])?;
        let v = crate::exterior::project(&args[1])?;
        Ok(embed(&self.pair.associated_raw(&u, &v)))
    }

    fn vanishes(&self, n: usize) -> bool {
        n != 2
    }
}

/// `i_n(x_1, …, x_n) = (-1)^{n-1} (n-1)! x_n ∧ … ∧ x_1`.
#[derive(Clone, Copy, Debug, Default)]
pub struct NaturalInjection;

impl MorphismFamily for NaturalInjection {
    fn component(&self, args: &[Multivector]) -> Result<Multivector> {
        if args.is_empty() {
            return Err(Error::Argument("injection needs at least one argument".into()));
        }
        Ok(injection_raw(args))
    }
}

/// `f_1 = ⋀g_f` and `f_k = 0` for `k ≥ 2`.
#[derive(Clone, Copy, Debug)]
pub struct StrictMorphism<'a> {
    pub morphism: &'a PairMorphism,
}

impl MorphismFamily for StrictMorphism<'_> {
    fn component(&self, args: &[Multivector]) -> Result<Multivector> {
        match args {
            [x] => Ok(self.morphism.exterior_image_raw(x)),
            [] => Err(Error::Argument("morphism component needs an argument".into())),
            _ => Ok(Multivector::zero()),
        }
    }

    fn vanishes(&self, k: usize) -> bool {
        k != 1
    }
}

fn degrees(xs: &[Multivector]) -> Vec<i64> {
    xs.iter()
        .map(|x| x.tensor_degree().ok().and_then(Degree::value).unwrap_or(0))
        .collect()
}

/// All ways of picking one homogeneous component per argument. A zero
/// argument yields no tuples.
pub(crate) fn homogeneous_tuples(args: &[Multivector]) -> Vec<Vec<Multivector>> {
    let mut out: Vec<Vec<Multivector>> = vec![Vec::new()];
    for a in args {
        let parts: Vec<Multivector> = a.components().into_values().collect();
        let mut next = Vec::with_capacity(out.len() * parts.len());
        for prefix in &out {
            for p in &parts {
                let mut t = prefix.clone();
                t.push(p.clone());
                next.push(t);
            }
        }
        out = next;
    }
    out
}

/// The Lie n-bracket
/// `Σ_{s ∈ Sh(2,n-2)} e(s; x) e(x_{s(1)}) x_{s(n)} ∧ … ∧ x_{s(3)} ∧ [x_{s(2)}, x_{s(1)}]`,
/// extended multilinearly; `n = 1` gives zero.
pub fn n_bracket(pair: &LieRinehartPair, args: &[Multivector]) -> Result<Multivector> {
    if args.is_empty() {
        return Err(Error::Argument("n-bracket needs at least one argument".into()));
    }
    args.iter().try_for_each(|x| pair.check_multivector(x))?;
    Ok(n_bracket_raw(pair, args))
}

pub(crate) fn n_bracket_raw(pair: &LieRinehartPair, args: &[Multivector]) -> Multivector {
    let n = args.len();
    if n < 2 {
        return Multivector::zero();
    }
    let shuffles = shuffles_allow_empty(&[2, n - 2]);
    let mut out = Multivector::zero();
    for xs in homogeneous_tuples(args) {
        let degs = degrees(&xs);
        for s in &shuffles {
            let p = s.permute(&xs);
            let inner = sn_raw(pair, &p[1], &p[0]);
            if inner.is_zero() {
                continue;
            }
            let mut term = Multivector::one();
            for x in p[2..].iter().rev() {
                term = term.wedge(x);
            }
            let term = term.wedge(&inner);
            let sign = koszul_sign(s, &degs).expect("lengths agree") * parity_sign(degs[s.apply(1) - 1]);
            out = &out + &term.signed(sign);
        }
    }
    out
}

fn check_split(n: usize, p: usize, q: usize) -> Result<()> {
    if p + q != n + 1 || p < 2 || q < 2 {
        return Err(Error::Argument(format!(
            "(p, q) = ({p}, {q}) is not an admissible split of n = {n}: need p + q = n + 1, p, q >= 2"
        )));
    }
    Ok(())
}

/// `Σ_{s ∈ Sh(q,p-1)} e(s) l_p(l_q(x_{s(1)}, …, x_{s(q)}), x_{s(q+1)}, …, x_{s(n)})`
/// on homogeneous arguments. Arities `p` or `q` equal to 1 give zero.
pub fn weak_jacobi_term(family: &dyn BracketFamily, p: usize, q: usize, xs: &[Multivector]) -> Result<Multivector> {
    let n = xs.len();
    if p + q != n + 1 || p == 0 || q == 0 {
        return Err(Error::Argument(format!("(p, q) = ({p}, {q}) does not split n = {n}")));
    }
    if family.vanishes(p) || family.vanishes(q) {
        return Ok(Multivector::zero());
    }
    let degs = degrees(xs);
    let mut out = Multivector::zero();
    for s in shuffles_allow_empty(&[q, p - 1]) {
        let perm = s.permute(xs);
        let inner = family.bracket(&perm[..q])?;
        if inner.is_zero() {
            continue;
        }
        let mut outer_args = Vec::with_capacity(p);
        outer_args.push(inner);
        outer_args.extend_from_slice(&perm[q..]);
        let term = family.bracket(&outer_args)?;
        out = &out + &term.signed(koszul_sign(&s, &degs)?);
    }
    Ok(out)
}

/// The per-`(p, q)` weak Jacobi shuffle sum on the given arguments, extended
/// multilinearly; reports the first nonzero residual of a homogeneous tuple.
pub fn check_weak_jacobi(
    pair: &LieRinehartPair,
    n: usize,
    p: usize,
    q: usize,
    args: &[Multivector],
) -> Result<BracketReport> {
    check_split(n, p, q)?;
    if args.len() != n {
        return Err(Error::Argument(format!("expected {n} arguments, got {}", args.len())));
    }
    args.iter().try_for_each(|x| pair.check_multivector(x))?;
    let residual = weak_jacobi_residual(pair, p, q, args)?;
    Ok(
        BracketReport::single("weak-jacobi", pair.generator_prefix(), residual, args.to_vec()).with_arity(
            n,
            Some(p),
            Some(q),
        ),
    )
}

fn weak_jacobi_residual(pair: &LieRinehartPair, p: usize, q: usize, args: &[Multivector]) -> Result<Multivector> {
    let family = ExteriorBrackets { pair };
    for xs in homogeneous_tuples(args) {
        let r = weak_jacobi_term(&family, p, q, &xs)?;
        if !r.is_zero() {
            return Ok(r);
        }
    }
    Ok(Multivector::zero())
}

/// Admissible `(p, q)` splits of `n`: `p + q = n + 1`, `p, q ≥ 2`.
pub fn admissible_splits(n: usize) -> Vec<(usize, usize)> {
    (2..n).map(|p| (p, n + 1 - p)).filter(|&(_, q)| q >= 2).collect()
}

fn draw_multivectors(pair: &LieRinehartPair, n: usize) -> impl FnMut(&mut ChaCha8Rng) -> Vec<Multivector> + '_ {
    move |rng| {
        let s = Sampler::new(pair);
        (0..n).map(|_| s.homogeneous_up_to(rng, SAMPLE_MAX_DEGREE)).collect()
    }
}

fn draw_pair_elements(pair: &LieRinehartPair, n: usize) -> impl FnMut(&mut ChaCha8Rng) -> Vec<Multivector> + '_ {
    move |rng| {
        let s = Sampler::new(pair);
        (0..n).map(|_| embed(&s.pair_element(rng))).collect()
    }
}

/// [`check_weak_jacobi`] over `trials` seeded random homogeneous tuples.
pub fn check_weak_jacobi_random(
    pair: &LieRinehartPair,
    n: usize,
    p: usize,
    q: usize,
    trials: usize,
    seed: u64,
) -> Result<BracketReport> {
    check_split(n, p, q)?;
    let outcome = run_trials(trials, seed, draw_multivectors(pair, n), |w| {
        weak_jacobi_residual(pair, p, q, w)
    })?;
    Ok(BracketReport::new("weak-jacobi", pair.generator_prefix())
        .with_arity(n, Some(p), Some(q))
        .with_outcome(outcome))
}

/// The aggregated weak Jacobi sum over every `i + j = n + 1` (including the
/// vanishing `l_1` terms) on homogeneous arguments.
pub fn aggregated_weak_jacobi(pair: &LieRinehartPair, xs: &[Multivector]) -> Result<Multivector> {
    let n = xs.len();
    if n == 0 {
        return Err(Error::Argument("weak Jacobi needs at least one argument".into()));
    }
    let family = ExteriorBrackets { pair };
    let mut out = Multivector::zero();
    for tuple in homogeneous_tuples(xs) {
        for i in 1..=n {
            out = &out + &weak_jacobi_term(&family, n + 1 - i, i, &tuple)?;
        }
    }
    Ok(out)
}

pub fn check_aggregated_weak_jacobi_random(
    pair: &LieRinehartPair,
    n: usize,
    trials: usize,
    seed: u64,
) -> Result<BracketReport> {
    if n == 0 {
        return Err(Error::Argument("weak Jacobi needs at least one argument".into()));
    }
    let outcome = run_trials(trials, seed, draw_multivectors(pair, n), |w| {
        aggregated_weak_jacobi(pair, w)
    })?;
    Ok(BracketReport::new("weak-jacobi-aggregated", pair.generator_prefix())
        .with_arity(n, None, None)
        .with_outcome(outcome))
}

/// The Chevalley–Eilenberg differential
/// `d(x_1 ∧ … ∧ x_n) = Σ_{s ∈ Sh(2,n-2)} e(s) [x_{s(1)}, x_{s(2)}] ∧ x_{s(3)} ∧ … ∧ x_{s(n)}`
/// of a Lie algebra pair.
pub fn ce_differential(pair: &LieRinehartPair, x: &Multivector) -> Result<Multivector> {
    if pair.kind() != PairKind::LieAlgebra {
        return Err(Error::UnsupportedPair(
            "the differential is only defined for Lie algebra pairs with trivial scalars".into(),
        ));
    }
    pair.check_multivector(x)?;
    let mut out = Multivector::zero();
    for (m, c) in x.terms() {
        let n = m.len();
        if n < 2 {
            continue;
        }
        let ones = vec![1i64; n];
        for s in shuffles_allow_empty(&[2, n - 2]) {
            let g = s.permute(m.indices());
            let b = Multivector::from_vector(pair.structure_constant(g[0], g[1]));
            if b.is_zero() {
                continue;
            }
            let rest = Multivector::wedge_word(&g[2..], c.clone());
            out = &out + &b.wedge(&rest).signed(koszul_sign(&s, &ones)?);
        }
    }
    Ok(out)
}

/// Every wedge monomial of the pair, each with coefficient one.
pub fn all_monomials(pair: &LieRinehartPair) -> Vec<Multivector> {
    let d = pair.dimension();
    (0u64..(1u64 << d))
        .map(|mask| {
            let word: Vec<usize> = (0..d).filter(|i| mask & (1 << i) != 0).collect();
            Multivector::wedge_word(&word, Scalar::one())
        })
        .collect()
}

/// `d ∘ d = 0` on every wedge monomial.
pub fn check_ce_square_zero(pair: &LieRinehartPair) -> Result<BracketReport> {
    let monomials = all_monomials(pair);
    let count = monomials.len();
    for m in monomials {
        let dd = ce_differential(pair, &ce_differential(pair, &m)?)?;
        if !dd.is_zero() {
            let mut r = BracketReport::single("ce-square-zero", pair.generator_prefix(), dd, vec![m]);
            r.trials = count;
            return Ok(r);
        }
    }
    let mut r = BracketReport::new("ce-square-zero", pair.generator_prefix());
    r.trials = count;
    Ok(r)
}

/// `i_n` on elements of `A ⊕ 𝔤`.
pub fn natural_injection(pair: &LieRinehartPair, args: &[GradedPairElement]) -> Result<Multivector> {
    if args.is_empty() {
        return Err(Error::Argument("injection needs at least one argument".into()));
    }
    args.iter().try_for_each(|u| pair.check_element(u))?;
    let embedded: Vec<Multivector> = args.iter().map(embed).collect();
    Ok(injection_raw(&embedded))
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

fn injection_raw(args: &[Multivector]) -> Multivector {
    let n = args.len();
    let mut acc = Multivector::one();
    for x in args.iter().rev() {
        acc = acc.wedge(x);
    }
    acc.scale_rational(&Rational::from_integer(factorial(n - 1)))
        .signed(parity_sign(n as i64 - 1))
}

/// Ordered compositions of `n` into `parts` positive integers, in
/// lexicographic order.
pub fn compositions(n: usize, parts: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, parts: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 0 {
            if n == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        for first in 1..=n.saturating_sub(parts - 1) {
            prefix.push(first);
            go(n - first, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if parts > 0 && parts <= n {
        go(n, parts, &mut Vec::new(), &mut out);
    }
    out
}

/// Both sides of the L∞-morphism structure equation on homogeneous
/// arguments:
///
/// `Σ_{p+q=n+1} Σ_{Sh(q,p-1)} e(s) f_p(l_q(x_{s(1..q)}), x_{s(q+1)}, …)`
/// against
/// `Σ_p 1/p! Σ_{k_1+…+k_p=n} Σ_{Sh(k_1,…,k_p)} e(s) l'_p(f_{k_1}(…), …, f_{k_p}(…))`.
pub fn structure_equation_sides(
    source: &dyn BracketFamily,
    f: &dyn MorphismFamily,
    target: &dyn BracketFamily,
    xs: &[Multivector],
) -> Result<(Multivector, Multivector)> {
    let n = xs.len();
    let degs = degrees(xs);
    let mut lhs = Multivector::zero();
    for q in 1..=n {
        let p = n + 1 - q;
        if source.vanishes(q) || f.vanishes(p) {
            continue;
        }
        for s in shuffles_allow_empty(&[q, p - 1]) {
            let perm = s.permute(xs);
            let inner = source.bracket(&perm[..q])?;
            if inner.is_zero() {
                continue;
            }
            let mut args = Vec::with_capacity(p);
            args.push(inner);
            args.extend_from_slice(&perm[q..]);
            lhs = &lhs + &f.component(&args)?.signed(koszul_sign(&s, &degs)?);
        }
    }
    let mut rhs = Multivector::zero();
    for p in 1..=n {
        if target.vanishes(p) {
            continue;
        }
        let mut sum_p = Multivector::zero();
        for ks in compositions(n, p) {
            if ks.iter().any(|&k| f.vanishes(k)) {
                continue;
            }
            for s in shuffles(&ks)? {
                let perm = s.permute(xs);
                let mut images = Vec::with_capacity(p);
                let mut start = 0;
                for &k in &ks {
                    images.push(f.component(&perm[start..start + k])?);
                    start += k;
                }
                if images.iter().any(Multivector::is_zero) {
                    continue;
                }
                sum_p = &sum_p + &target.bracket(&images)?.signed(koszul_sign(&s, &degs)?);
            }
        }
        let inv = Rational::new(BigInt::one(), factorial(p));
        rhs = &rhs + &sum_p.scale_rational(&inv);
    }
    Ok((lhs, rhs))
}

fn morphism_residual(
    source: &dyn BracketFamily,
    f: &dyn MorphismFamily,
    target: &dyn BracketFamily,
    args: &[Multivector],
) -> Result<Multivector> {
    for xs in homogeneous_tuples(args) {
        let (lhs, rhs) = structure_equation_sides(source, f, target, &xs)?;
        let r = &lhs - &rhs;
        if !r.is_zero() {
            return Ok(r);
        }
    }
    Ok(Multivector::zero())
}

fn check_arity(n: usize, cap: usize) -> Result<()> {
    if n < 2 || n > cap {
        return Err(Error::Argument(format!("arity {n} outside 2..={cap}")));
    }
    Ok(())
}

/// The structure equation on the given arguments, split into homogeneous
/// tuples; the first nonzero difference is the residual.
pub fn check_linfty_morphism(
    source: &dyn BracketFamily,
    f: &dyn MorphismFamily,
    target: &dyn BracketFamily,
    args: &[Multivector],
    arity_cap: usize,
    prefix: char,
) -> Result<BracketReport> {
    let n = args.len();
    check_arity(n, arity_cap)?;
    let residual = morphism_residual(source, f, target, args)?;
    Ok(BracketReport::single("linfty-morphism", prefix, residual, args.to_vec()).with_arity(n, None, None))
}

/// The natural injection against the structure equation on `trials` seeded
/// tuples of `A ⊕ 𝔤` elements, scalar parts included.
pub fn check_injection_random(
    pair: &LieRinehartPair,
    n: usize,
    trials: usize,
    seed: u64,
    arity_cap: usize,
) -> Result<BracketReport> {
    check_arity(n, arity_cap)?;
    let source = AssociatedBrackets { pair };
    let target = ExteriorBrackets { pair };
    let outcome = run_trials(trials, seed, draw_pair_elements(pair, n), |w| {
        morphism_residual(&source, &NaturalInjection, &target, w)
    })?;
    Ok(BracketReport::new("morphism-injection", pair.generator_prefix())
        .with_arity(n, None, None)
        .with_outcome(outcome))
}

/// `⋀g_f(l_n(x_1, …, x_n)) - l_n(⋀g_f(x_1), …, ⋀g_f(x_n))`.
pub fn strict_naturality_residual(m: &PairMorphism, args: &[Multivector]) -> Result<Multivector> {
    if args.is_empty() {
        return Err(Error::Argument("n-bracket needs at least one argument".into()));
    }
    let lhs = m.exterior_image_raw(&n_bracket_raw(m.source(), args));
    let images: Vec<Multivector> = args.iter().map(|x| m.exterior_image_raw(x)).collect();
    Ok(&lhs - &n_bracket_raw(m.target(), &images))
}

/// Strict-morphism check on `trials` seeded tuples: direct naturality of
/// `⋀g_f` against the n-bracket, then the full structure equation with
/// `f_1 = ⋀g_f`, `f_k = 0`.
pub fn check_strict_morphism_random(
    m: &PairMorphism,
    n: usize,
    trials: usize,
    seed: u64,
    arity_cap: usize,
) -> Result<BracketReport> {
    check_arity(n, arity_cap)?;
    if !m.is_validated() {
        return Err(Error::Precondition(
            "strict morphism check needs a validated pair morphism".into(),
        ));
    }
    let source = ExteriorBrackets { pair: m.source() };
    let target = ExteriorBrackets { pair: m.target() };
    let f = StrictMorphism { morphism: m };
    let outcome = run_trials(trials, seed, draw_multivectors(m.source(), n), |w| {
        let direct = strict_naturality_residual(m, w)?;
        if !direct.is_zero() {
            return Ok(direct);
        }
        morphism_residual(&source, &f, &target, w)
    })?;
    Ok(BracketReport::new("morphism-strict", m.source().generator_prefix())
        .with_arity(n, None, None)
        .with_outcome(outcome))
}

/// The `p`-th partial sum
/// `((-1)^p / p!) Σ_{j_1+…+j_p=n} (1/(j_1⋯j_p)) Σ_{l<m} j_l j_m`.
pub fn composition_identity_partial(n: usize, p: usize) -> Rational {
    let mut sum = Rational::zero();
    for js in compositions(n, p) {
        let prod: BigInt = js.iter().map(|&j| BigInt::from(j)).product();
        let mut pairs = BigInt::zero();
        for l in 0..js.len() {
            for m in (l + 1)..js.len() {
                pairs += BigInt::from(js[l] * js[m]);
            }
        }
        sum += Rational::new(pairs, prod);
    }
    let sign = if p.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    };
    sum * Rational::new(sign, factorial(p))
}

/// `Σ_{p=2}^{n}` of [`composition_identity_partial`]; equals `1/2` for
/// every `n ≥ 2`.
pub fn composition_identity_lhs(n: usize) -> Result<Rational> {
    if n < 2 {
        return Err(Error::Argument(format!("composition identity needs n >= 2, got {n}")));
    }
    Ok((2..=n).map(|p| composition_identity_partial(n, p)).sum())
}

/// One report per `n` in `2..=max_n`, each comparing the sum with `1/2`.
pub fn check_combinatorial(max_n: usize) -> Result<Vec<BracketReport>> {
    if max_n < 2 {
        return Err(Error::Argument(format!("--max-n must be at least 2, got {max_n}")));
    }
    let half = rat(1, 2);
    (2..=max_n)
        .map(|n| {
            let value = composition_identity_lhs(n)?;
            let diff = Multivector::from_scalar(Scalar::constant(&value - &half));
            let mut r = BracketReport::single("combinatorial", 'e', diff, Vec::new()).with_arity(n, None, None);
            r.value = Some(value);
            Ok(r)
        })
        .collect()
}

/// Applies `s` to the arguments and returns the Koszul sign of the move.
pub fn permuted_with_sign(s: &Permutation, xs: &[Multivector]) -> Result<(Vec<Multivector>, crate::graded::Sign)> {
    Ok((s.permute(xs), koszul_sign(s, &degrees(xs))?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pair::Vector;

    fn g(i: usize) -> Multivector {
        Multivector::generator(i)
    }

    fn x(i: usize) -> Scalar {
        Scalar::var(i)
    }

    #[test]
    fn low_arity_brackets() {
        let sl2 = LieRinehartPair::sl2();
        assert!(n_bracket(&sl2, &[g(0)]).unwrap().is_zero());
        assert_eq!(n_bracket(&sl2, &[g(0), g(1)]).unwrap(), g(2));
        assert!(n_bracket(&sl2, &[]).is_err());
        let ab = LieRinehartPair::abelian(3).unwrap();
        assert!(n_bracket(&ab, &[g(0), g(1), g(2)]).unwrap().is_zero());
    }

    #[test]
    fn ternary_bracket_in_cartan() {
        let c3 = LieRinehartPair::cartan(3).unwrap();
        let z = g(2).scale(&(&x(0) * &x(1)));
        let got = n_bracket(&c3, &[g(0), g(1), z.clone()]).unwrap();
        let expected = &g(0).wedge(&g(2)).scale(&x(0)) - &g(1).wedge(&g(2)).scale(&x(1));
        assert_eq!(got, expected);
        // z∧[x,y] - y∧[x,z] + x∧[y,z]
        let b = |a: &Multivector, c: &Multivector| sn_raw(&c3, a, c);
        let alt = &(&z.wedge(&b(&g(0), &g(1))) - &g(1).wedge(&b(&g(0), &z))) + &g(0).wedge(&b(&g(1), &z));
        assert_eq!(got, alt);
    }

    #[test]
    fn ce_examples() {
        let sl2 = LieRinehartPair::sl2();
        assert_eq!(ce_differential(&sl2, &g(0).wedge(&g(1))).unwrap(), g(2));
        assert!(ce_differential(&sl2, &g(0).wedge(&g(1)).wedge(&g(2)))
            .unwrap()
            .is_zero());
        assert!(ce_differential(&sl2, &g(0)).unwrap().is_zero());
        assert!(check_ce_square_zero(&sl2).unwrap().pass);
        assert!(check_ce_square_zero(&LieRinehartPair::solvable4()).unwrap().pass);
        let c2 = LieRinehartPair::cartan(2).unwrap();
        assert!(matches!(ce_differential(&c2, &g(0)), Err(Error::UnsupportedPair(_))));
    }

    #[test]
    fn injection_examples() {
        let c2 = LieRinehartPair::cartan(2).unwrap();
        let u = |i| GradedPairElement::vector(Vector::generator(i));
        assert_eq!(natural_injection(&c2, &[u(0)]).unwrap(), g(0));
        assert_eq!(natural_injection(&c2, &[u(0), u(1)]).unwrap(), g(0).wedge(&g(1)));
        let c3 = LieRinehartPair::cartan(3).unwrap();
        let expected = g(2).wedge(&g(1)).wedge(&g(0)).scale_rational(&rat(2, 1));
        assert_eq!(natural_injection(&c3, &[u(0), u(1), u(2)]).unwrap(), expected);
        assert!(natural_injection(&c2, &[]).is_err());
    }

    #[test]
    fn compositions_enumerate() {
        assert_eq!(compositions(3, 2), vec![vec![1, 2], vec![2, 1]]);
        assert_eq!(compositions(3, 3), vec![vec![1, 1, 1]]);
        assert!(compositions(2, 3).is_empty());
        for n in 1..8 {
            let total: usize = (1..=n).map(|p| compositions(n, p).len()).sum();
            assert_eq!(total, 1 << (n - 1));
        }
    }

    #[test]
    fn combinatorial_identity() {
        assert_eq!(composition_identity_partial(3, 2), rat(1, 1));
        assert_eq!(composition_identity_partial(3, 3), rat(-1, 2));
        for n in 2..=10 {
            assert_eq!(composition_identity_lhs(n).unwrap(), rat(1, 2));
        }
        assert!(composition_identity_lhs(1).is_err());
    }

    #[test]
    fn weak_jacobi_small() {
        let sl2 = LieRinehartPair::sl2();
        let r = check_weak_jacobi(&sl2, 3, 2, 2, &[g(0), g(1), g(2)]).unwrap();
        assert!(r.pass);
        assert!(check_weak_jacobi(&sl2, 3, 3, 1, &[g(0), g(1), g(2)]).is_err());
        let c2 = LieRinehartPair::cartan(2).unwrap();
        for (p, q) in admissible_splits(4) {
            assert!(check_weak_jacobi_random(&c2, 4, p, q, 5, 9).unwrap().pass);
        }
        assert_eq!(admissible_splits(5), vec![(2, 4), (3, 3), (4, 2)]);
    }

    #[test]
    fn morphism_equation_small() {
        let sl2 = LieRinehartPair::sl2();
        let r = check_linfty_morphism(
            &AssociatedBrackets { pair: &sl2 },
            &NaturalInjection,
            &ExteriorBrackets { pair: &sl2 },
            &[g(0), g(1)],
            DEFAULT_ARITY_CAP,
            'e',
        )
        .unwrap();
        assert!(r.pass);
        let c2 = LieRinehartPair::cartan(2).unwrap();
        for n in 2..=3 {
            assert!(check_injection_random(&c2, n, 5, 1, DEFAULT_ARITY_CAP).unwrap().pass);
        }
        let m = PairMorphism::sl2_into_gl2();
        assert!(
            check_strict_morphism_random(&m, 3, 5, 2, DEFAULT_ARITY_CAP)
                .unwrap()
                .pass
        );
        assert!(check_injection_random(&c2, 6, 1, 1, DEFAULT_ARITY_CAP).is_err());
    }
}
