//! The Schouten–Nijenhuis bracket on `⋀𝔤_A` in its antisymmetric and
//! symmetric forms, and randomized checks of its identities.
//!
//! Conventions: `[x, a] = D_x(a)` for a vector `x` and scalar `a`, and the
//! bracket is graded antisymmetric in the antisymmetric degree
//! `deg = |·| - 1`, which forces `[a, x] = -D_x(a)`. The symmetric bracket
//! `{x, y} = e(x)[y, x]` then has `{a, x} = {x, a} = D_x(a)`.

use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exterior::{Degree, Monomial, Multivector};
use crate::graded::{koszul_sign, parity_sign, shuffles};
use crate::pair::{LieRinehartPair, PairMorphism, Vector};
use crate::report::{run_trials, BracketReport};
use crate::sample::Sampler;
use crate::scalar::Scalar;

/// The antisymmetric Schouten–Nijenhuis bracket `[x, y]`.
pub fn sn_antisym(pair: &LieRinehartPair, x: &Multivector, y: &Multivector) -> Result<Multivector> {
    pair.check_multivector(x)?;
    pair.check_multivector(y)?;
    Ok(sn_raw(pair, x, y))
}

pub(crate) fn sn_raw(pair: &LieRinehartPair, x: &Multivector, y: &Multivector) -> Multivector {
    let mut out = Multivector::zero();
    for (mx, cx) in x.terms() {
        for (my, cy) in y.terms() {
            out = &out + &term_bracket(pair, mx, cx, my, cy, Form::DoubleSum);
        }
    }
    out
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Form {
    DoubleSum,
    Shuffle,
}

fn term_bracket(
    pair: &LieRinehartPair,
    mx: &Monomial,
    cx: &Scalar,
    my: &Monomial,
    cy: &Scalar,
    form: Form,
) -> Multivector {
    match (mx.is_empty(), my.is_empty()) {
        (true, true) => Multivector::zero(),
        (true, false) => scalar_left(pair, cx, my).scale(cy),
        (false, true) => {
            // [X, b] = (-1)^{|X|} [b, X]
            scalar_left(pair, cy, mx).scale(cx).signed(parity_sign(mx.len() as i64))
        }
        (false, false) => {
            let xs = absorbed(mx, cx);
            let ys = absorbed(my, cy);
            match form {
                Form::DoubleSum => double_sum(pair, &xs, &ys),
                Form::Shuffle => shuffle_sum(pair, &xs, &ys),
            }
        }
    }
}

/// `[a, y_1 ∧ … ∧ y_m] = Σ_i (-1)^i D_{y_i}(a) y_1 ∧ … ŷ_i … ∧ y_m`.
fn scalar_left(pair: &LieRinehartPair, a: &Scalar, m: &Monomial) -> Multivector {
    let mut out = Multivector::zero();
    let idx = m.indices();
    for (pos, &g) in idx.iter().enumerate() {
        let d = pair.anchor_raw(&Vector::generator(g), a);
        if d.is_zero() {
            continue;
        }
        let rest: Vec<usize> = idx
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != pos)
            .map(|(_, &v)| v)
            .collect();
        // 1-based position is pos + 1
        let sign = parity_sign(pos as i64 + 1);
        out = &out + &Multivector::wedge_word(&rest, d).signed(sign);
    }
    out
}

/// Writes `c · g_{i_1} ∧ … ∧ g_{i_n}` as `(c g_{i_1}) ∧ g_{i_2} ∧ … ∧ g_{i_n}`.
fn absorbed(m: &Monomial, c: &Scalar) -> Vec<Vector> {
    m.indices()
        .iter()
        .enumerate()
        .map(|(k, &g)| {
            if k == 0 {
                Vector::generator(g).scale(c)
            } else {
                Vector::generator(g)
            }
        })
        .collect()
}

fn wedge_all<'v>(vs: impl IntoIterator<Item = &'v Vector>) -> Multivector {
    vs.into_iter()
        .fold(Multivector::one(), |acc, v| acc.wedge(&Multivector::from_vector(v)))
}

/// `Σ_{i,j} (-1)^{i+j} [x_i, y_j] ∧ x_1 … x̂_i … x_n ∧ y_1 … ŷ_j … y_m`.
fn double_sum(pair: &LieRinehartPair, xs: &[Vector], ys: &[Vector]) -> Multivector {
    let mut out = Multivector::zero();
    for (i, xi) in xs.iter().enumerate() {
        let x_rest = wedge_all(xs.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, v)| v));
        for (j, yj) in ys.iter().enumerate() {
            let b = pair.bracket_raw(xi, yj);
            if b.is_zero() {
                continue;
            }
            let y_rest = wedge_all(ys.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, v)| v));
            let term = Multivector::from_vector(&b).wedge(&x_rest).wedge(&y_rest);
            out = &out + &term.signed(parity_sign((i + j) as i64));
        }
    }
    out
}

/// The same sum written over `Sh(1, n-1) × Sh(1, m-1)` with Koszul signs.
fn shuffle_sum(pair: &LieRinehartPair, xs: &[Vector], ys: &[Vector]) -> Multivector {
    let (n, m) = (xs.len(), ys.len());
    let ones = |k| vec![1i64; k];
    let mut out = Multivector::zero();
    for s in blocks(n) {
        let es = koszul_sign(&s, &ones(n)).expect("lengths agree");
        let xp = s.permute(xs);
        for t in blocks(m) {
            let et = koszul_sign(&t, &ones(m)).expect("lengths agree");
            let yp = t.permute(ys);
            let b = Multivector::from_vector(&pair.bracket_raw(&xp[0], &yp[0]));
            let term = b.wedge(&wedge_all(&xp[1..])).wedge(&wedge_all(&yp[1..]));
            out = &out + &term.signed(es * et);
        }
    }
    out
}

fn blocks(k: usize) -> Vec<crate::graded::Permutation> {
    if k == 1 {
        shuffles(&[1]).expect("nonempty").collect()
    } else {
        shuffles(&[1, k - 1]).expect("nonempty").collect()
    }
}

/// `[x, y]` evaluated through the shuffle form of the double sum.
pub fn sn_shuffle_form(pair: &LieRinehartPair, x: &Multivector, y: &Multivector) -> Result<Multivector> {
    pair.check_multivector(x)?;
    pair.check_multivector(y)?;
    let mut out = Multivector::zero();
    for (mx, cx) in x.terms() {
        for (my, cy) in y.terms() {
            out = &out + &term_bracket(pair, mx, cx, my, cy, Form::Shuffle);
        }
    }
    Ok(out)
}

/// `[x, y]` evaluated by peeling one factor at a time off `y` with the
/// right Poisson rule, using only the anchor and the structure table on
/// bare generators. Independent of the coefficient-absorption path.
pub fn sn_antisym_poisson(pair: &LieRinehartPair, x: &Multivector, y: &Multivector) -> Result<Multivector> {
    pair.check_multivector(x)?;
    pair.check_multivector(y)?;
    let mut out = Multivector::zero();
    for (mx, cx) in x.terms() {
        for (my, cy) in y.terms() {
            // [X, d ∧ W] = [X, d] ∧ W + d [X, W]
            let w = Multivector::term(my.clone(), Scalar::one());
            let first = poisson_x_scalar(pair, mx, cx, cy).wedge(&w);
            let second = poisson_x_word(pair, mx, cx, my.indices()).scale(cy);
            out = &out + &(&first + &second);
        }
    }
    Ok(out)
}

/// `[c X, d]` with `X` a bare monomial: `(-1)^{|X|} [d, c ∧ X]`.
fn poisson_x_scalar(pair: &LieRinehartPair, mx: &Monomial, c: &Scalar, d: &Scalar) -> Multivector {
    if mx.is_empty() {
        return Multivector::zero();
    }
    // [d, c ∧ M] = c [d, M]
    poisson_scalar_word(pair, d, mx.indices())
        .scale(c)
        .signed(parity_sign(mx.len() as i64))
}

/// `[d, m_1 ∧ M'] = -D_{m_1}(d) M' - m_1 ∧ [d, M']`, `[d, 1] = 0`.
fn poisson_scalar_word(pair: &LieRinehartPair, d: &Scalar, word: &[usize]) -> Multivector {
    let Some((&m1, rest)) = word.split_first() else {
        return Multivector::zero();
    };
    let da = pair.anchor_raw(&Vector::generator(m1), d);
    let head = -Multivector::wedge_word(rest, da);
    let tail = Multivector::generator(m1).wedge(&poisson_scalar_word(pair, d, rest));
    &head - &tail
}

/// `[c X, n ∧ W'] = [c X, n] ∧ W' + (-1)^{deg X} n ∧ [c X, W']`, `[c X, 1] = 0`.
fn poisson_x_word(pair: &LieRinehartPair, mx: &Monomial, c: &Scalar, word: &[usize]) -> Multivector {
    let Some((&n, rest)) = word.split_first() else {
        return Multivector::zero();
    };
    // [X, n] = -[n, X]
    let xn = -poisson_gen_left(pair, n, c, mx.indices());
    let head = xn.wedge(&Multivector::wedge_word(rest, Scalar::one()));
    let deg_x = mx.len() as i64 - 1;
    let tail = Multivector::generator(n)
        .wedge(&poisson_x_word(pair, mx, c, rest))
        .signed(parity_sign(deg_x));
    &head + &tail
}

/// `[n, c ∧ M] = D_n(c) M + c [n, M]`.
fn poisson_gen_left(pair: &LieRinehartPair, n: usize, c: &Scalar, word: &[usize]) -> Multivector {
    let dc = pair.anchor_raw(&Vector::generator(n), c);
    let head = Multivector::wedge_word(word, dc);
    &head + &poisson_gen_word(pair, n, word).scale(c)
}

/// `[n, m_1 ∧ M'] = [n, m_1] ∧ M' + m_1 ∧ [n, M']`, `[n, 1] = 0`.
fn poisson_gen_word(pair: &LieRinehartPair, n: usize, word: &[usize]) -> Multivector {
    let Some((&m1, rest)) = word.split_first() else {
        return Multivector::zero();
    };
    let t = Multivector::from_vector(pair.structure_constant(n, m1));
    let head = t.wedge(&Multivector::wedge_word(rest, Scalar::one()));
    let tail = Multivector::generator(m1).wedge(&poisson_gen_word(pair, n, rest));
    &head + &tail
}

/// The symmetric bracket `{x, y} = e(x)[y, x]`, extended bilinearly over the
/// homogeneous components of `x`.
pub fn sn_sym(pair: &LieRinehartPair, x: &Multivector, y: &Multivector) -> Result<Multivector> {
    pair.check_multivector(x)?;
    pair.check_multivector(y)?;
    Ok(sym_raw(pair, x, y))
}

pub(crate) fn sym_raw(pair: &LieRinehartPair, x: &Multivector, y: &Multivector) -> Multivector {
    let mut out = Multivector::zero();
    for (k, xk) in x.components() {
        out = &out + &sn_raw(pair, y, &xk).signed(parity_sign(k as i64));
    }
    out
}

fn tdeg(x: &Multivector) -> i64 {
    x.tensor_degree()
        .ok()
        .and_then(Degree::value)
        .expect("samples are homogeneous and nonzero")
}

fn first_nonzero(residuals: impl IntoIterator<Item = Multivector>) -> Multivector {
    residuals.into_iter().find(|r| !r.is_zero()).unwrap_or_default()
}

fn draw_homogeneous(
    pair: &LieRinehartPair,
    count: usize,
    max_degree: usize,
) -> impl FnMut(&mut ChaCha8Rng) -> Vec<Multivector> + '_ {
    move |rng| {
        let s = Sampler::new(pair);
        (0..count).map(|_| s.homogeneous_up_to(rng, max_degree)).collect()
    }
}

/// Tensor degrees sampled by the randomized Schouten checks.
pub const SAMPLE_MAX_DEGREE: usize = 3;

/// `(-1)^{deg x deg z}[x,[y,z]] + (-1)^{deg y deg x}[y,[z,x]] + (-1)^{deg z deg y}[z,[x,y]]`.
pub fn antisym_jacobi_residual(
    pair: &LieRinehartPair,
    x: &Multivector,
    y: &Multivector,
    z: &Multivector,
) -> Multivector {
    let (dx, dy, dz) = (tdeg(x) - 1, tdeg(y) - 1, tdeg(z) - 1);
    let a = sn_raw(pair, x, &sn_raw(pair, y, z)).signed(parity_sign(dx * dz));
    let b = sn_raw(pair, y, &sn_raw(pair, z, x)).signed(parity_sign(dy * dx));
    let c = sn_raw(pair, z, &sn_raw(pair, x, y)).signed(parity_sign(dz * dy));
    &(&a + &b) + &c
}

pub fn check_antisym_jacobi(pair: &LieRinehartPair, trials: usize, seed: u64) -> Result<BracketReport> {
    let outcome = run_trials(trials, seed, draw_homogeneous(pair, 3, SAMPLE_MAX_DEGREE), |w| {
        Ok(antisym_jacobi_residual(pair, &w[0], &w[1], &w[2]))
    })?;
    Ok(BracketReport::new("jacobi-antisym", pair.generator_prefix()).with_outcome(outcome))
}

/// `[x, y∧z] - [x,y]∧z - (-1)^{deg x (deg y - 1)} y∧[x,z]`.
pub fn poisson_residual(pair: &LieRinehartPair, x: &Multivector, y: &Multivector, z: &Multivector) -> Multivector {
    let (dx, dy) = (tdeg(x) - 1, tdeg(y) - 1);
    let lhs = sn_raw(pair, x, &y.wedge(z));
    let first = sn_raw(pair, x, y).wedge(z);
    let second = y.wedge(&sn_raw(pair, x, z)).signed(parity_sign(dx * (dy - 1)));
    &(&lhs - &first) - &second
}

pub fn check_poisson(pair: &LieRinehartPair, trials: usize, seed: u64) -> Result<BracketReport> {
    let outcome = run_trials(trials, seed, draw_homogeneous(pair, 3, SAMPLE_MAX_DEGREE), |w| {
        Ok(poisson_residual(pair, &w[0], &w[1], &w[2]))
    })?;
    Ok(BracketReport::new("poisson", pair.generator_prefix()).with_outcome(outcome))
}

/// `Σ_{s ∈ Sh(2,1)} e(s; x) {{x_{s(1)}, x_{s(2)}}, x_{s(3)}}`.
pub fn sym_jacobi_residual(pair: &LieRinehartPair, xs: &[Multivector]) -> Result<Multivector> {
    if xs.len() != 3 {
        return Err(Error::Argument(format!(
            "symmetric Jacobi takes 3 arguments, got {}",
            xs.len()
        )));
    }
    let degrees: Vec<i64> = xs.iter().map(tdeg).collect();
    let mut out = Multivector::zero();
    for s in shuffles(&[2, 1])? {
        let p = s.permute(xs);
        let inner = sym_raw(pair, &p[0], &p[1]);
        let term = sym_raw(pair, &inner, &p[2]).signed(koszul_sign(&s, &degrees)?);
        out = &out + &term;
    }
    Ok(out)
}

pub fn check_sym_jacobi(pair: &LieRinehartPair, trials: usize, seed: u64) -> Result<BracketReport> {
    let outcome = run_trials(trials, seed, draw_homogeneous(pair, 3, SAMPLE_MAX_DEGREE), |w| {
        sym_jacobi_residual(pair, w)
    })?;
    Ok(BracketReport::new("jacobi-sym", pair.generator_prefix()).with_outcome(outcome))
}

/// First nonzero residual among `{x,y} - e(x)[y,x]`,
/// `[x,y] + (-1)^{deg x deg y}[y,x]` and `{x,y} - (-1)^{|x||y|}{y,x}`.
fn decalage_residual(pair: &LieRinehartPair, x: &Multivector, y: &Multivector) -> Multivector {
    let (tx, ty) = (tdeg(x), tdeg(y));
    let xy = sn_raw(pair, x, y);
    let yx = sn_raw(pair, y, x);
    let sxy = sym_raw(pair, x, y);
    let syx = sym_raw(pair, y, x);
    first_nonzero([
        &sxy - &yx.signed(parity_sign(tx)),
        &xy + &yx.signed(parity_sign((tx - 1) * (ty - 1))),
        &sxy - &syx.signed(parity_sign(tx * ty)),
    ])
}

/// The décalage relation between the two brackets on one homogeneous pair.
pub fn decalage_relation(pair: &LieRinehartPair, x: &Multivector, y: &Multivector) -> Result<BracketReport> {
    pair.check_multivector(x)?;
    pair.check_multivector(y)?;
    for v in [x, y] {
        if v.tensor_degree()? == Degree::Inhomogeneous {
            return Err(Error::Argument("décalage relation needs homogeneous inputs".into()));
        }
    }
    Ok(BracketReport::single(
        "decalage",
        pair.generator_prefix(),
        decalage_residual(pair, x, y),
        vec![x.clone(), y.clone()],
    ))
}

pub fn check_decalage(pair: &LieRinehartPair, trials: usize, seed: u64) -> Result<BracketReport> {
    let outcome = run_trials(trials, seed, draw_homogeneous(pair, 2, SAMPLE_MAX_DEGREE), |w| {
        Ok(decalage_residual(pair, &w[0], &w[1]))
    })?;
    Ok(BracketReport::new("decalage", pair.generator_prefix()).with_outcome(outcome))
}

/// Absorption path against the Poisson-recursion oracle.
pub fn check_oracle_agreement(pair: &LieRinehartPair, trials: usize, seed: u64) -> Result<BracketReport> {
    let outcome = run_trials(trials, seed, draw_homogeneous(pair, 2, SAMPLE_MAX_DEGREE), |w| {
        Ok(&sn_raw(pair, &w[0], &w[1]) - &sn_antisym_poisson(pair, &w[0], &w[1])?)
    })?;
    Ok(BracketReport::new("sn-oracle-agreement", pair.generator_prefix()).with_outcome(outcome))
}

/// `⋀g_f([x, y]) = [⋀g_f(x), ⋀g_f(y)]` on random homogeneous pairs. Runs on
/// unvalidated morphisms too, so it can expose a broken one.
pub fn check_morphism_respects_sn(m: &PairMorphism, trials: usize, seed: u64) -> Result<BracketReport> {
    let (s, t) = (m.source(), m.target());
    let outcome = run_trials(trials, seed, draw_homogeneous(s, 2, SAMPLE_MAX_DEGREE), |w| {
        let lhs = m.exterior_image_raw(&sn_raw(s, &w[0], &w[1]));
        let rhs = sn_raw(t, &m.exterior_image_raw(&w[0]), &m.exterior_image_raw(&w[1]));
        Ok(&lhs - &rhs)
    })?;
    Ok(BracketReport::new("morphism-respects-sn", s.generator_prefix()).with_outcome(outcome))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn g(i: usize) -> Multivector {
        Multivector::generator(i)
    }

    fn xs(i: usize) -> Scalar {
        Scalar::var(i)
    }

    fn sc(a: Scalar) -> Multivector {
        Multivector::from_scalar(a)
    }

    #[test]
    fn scalar_examples() {
        let c1 = LieRinehartPair::cartan(1).unwrap();
        let a = sc(xs(0));
        let b = sc(xs(0).pow(2));
        assert!(sn_antisym(&c1, &a, &b).unwrap().is_zero());
        assert_eq!(sn_antisym(&c1, &g(0), &b).unwrap(), sc(xs(0).scale(&int(2))));
        assert_eq!(sn_antisym(&c1, &b, &g(0)).unwrap(), sc(xs(0).scale(&int(-2))));
        let c2 = LieRinehartPair::cartan(2).unwrap();
        // [d1^d2, x1] = [x1, d1^d2] = -D_{d1}(x1) d2 + D_{d2}(x1) d1
        let bivector = g(0).wedge(&g(1));
        assert_eq!(sn_antisym(&c2, &bivector, &sc(xs(0))).unwrap(), -g(1));
        assert_eq!(sn_antisym_poisson(&c2, &bivector, &sc(xs(0))).unwrap(), -g(1));
        // the value is pinned by the Poisson rule on [d1^d2, x1 d1] = d1^d2
        let lhs = sn_antisym(&c2, &bivector, &g(0).scale(&xs(0))).unwrap();
        assert_eq!(lhs, bivector);
        assert_eq!(lhs, sn_antisym(&c2, &bivector, &sc(xs(0))).unwrap().wedge(&g(0)));
        // absorbing x1 into a vector slot: [d1, x1 d2] = d2
        assert_eq!(sn_antisym(&c2, &g(0), &g(1).scale(&xs(0))).unwrap(), g(1));
    }

    #[test]
    fn vectors_reduce_to_lie_bracket() {
        let sl2 = LieRinehartPair::sl2();
        assert_eq!(sn_antisym(&sl2, &g(0), &g(1)).unwrap(), g(2));
        assert_eq!(sn_sym(&sl2, &g(0), &g(1)).unwrap(), g(2));
        assert!(sn_sym(&sl2, &g(0), &g(0)).unwrap().is_zero());
        let c2 = LieRinehartPair::cartan(2).unwrap();
        let d = g(0);
        let a = sc(&xs(0) * &xs(1));
        assert_eq!(sn_sym(&c2, &a, &d).unwrap(), sc(xs(1)));
        assert_eq!(sn_sym(&c2, &d, &a).unwrap(), sc(xs(1)));
    }

    #[test]
    fn bivector_bracket_by_hand() {
        // [d1^d2, x1 d1^d3] in Cartan m=3: only D_{d1}(x1) = 1 contributes.
        let c3 = LieRinehartPair::cartan(3).unwrap();
        let x = g(0).wedge(&g(1));
        let y = g(0).wedge(&g(2)).scale(&xs(0));
        // [d1, x1 d1] = d1 with sign (-1)^{1+1}, remaining d2 ∧ d3
        let expected = g(0).wedge(&g(1)).wedge(&g(2));
        assert_eq!(sn_antisym(&c3, &x, &y).unwrap(), expected);
        assert_eq!(sn_antisym_poisson(&c3, &x, &y).unwrap(), expected);
        assert_eq!(sn_shuffle_form(&c3, &x, &y).unwrap(), expected);
    }

    #[test]
    fn randomized_checks_pass() {
        for pair in [LieRinehartPair::sl2(), LieRinehartPair::cartan(2).unwrap()] {
            assert!(check_antisym_jacobi(&pair, 20, 1).unwrap().pass);
            assert!(check_poisson(&pair, 20, 2).unwrap().pass);
            assert!(check_sym_jacobi(&pair, 20, 3).unwrap().pass);
            assert!(check_decalage(&pair, 20, 4).unwrap().pass);
            assert!(check_oracle_agreement(&pair, 20, 5).unwrap().pass);
        }
        assert!(
            check_morphism_respects_sn(&PairMorphism::sl2_into_gl2(), 20, 6)
                .unwrap()
                .pass
        );
    }

    #[test]
    fn membership_is_checked() {
        let c2 = LieRinehartPair::cartan(2).unwrap();
        assert!(matches!(sn_antisym(&c2, &g(2), &g(0)), Err(Error::Dimension(_))));
        let sl2 = LieRinehartPair::sl2();
        assert!(sn_antisym(&sl2, &sc(xs(0)), &g(0)).is_err());
    }
}
