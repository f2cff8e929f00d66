//! Seeded random elements for the identity checks.

use rand::seq::index::sample;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::exterior::{Monomial, Multivector};
use crate::pair::{GradedPairElement, LieRinehartPair, PairKind, Vector};
use crate::scalar::{rat, Exponents, Rational, Scalar};

/// Draws nonzero elements living over one pair. Rational coefficients have
/// numerators in `-3..=3` and denominators in `1..=3`; Cartan coefficients
/// are polynomials of total degree at most `max_poly_degree`.
#[derive(Clone, Copy, Debug)]
pub struct Sampler<'a> {
    pair: &'a LieRinehartPair,
    pub max_poly_degree: u32,
    pub max_terms: usize,
}

impl<'a> Sampler<'a> {
    pub fn new(pair: &'a LieRinehartPair) -> Self {
        Sampler {
            pair,
            max_poly_degree: 2,
            max_terms: 2,
        }
    }

    pub fn pair(&self) -> &LieRinehartPair {
        self.pair
    }

    pub fn rational(&self, rng: &mut ChaCha8Rng) -> Rational {
        loop {
            let n = rng.gen_range(-3i64..=3);
            if n != 0 {
                return rat(n, rng.gen_range(1i64..=3));
            }
        }
    }

    pub fn scalar(&self, rng: &mut ChaCha8Rng) -> Scalar {
        if self.pair.kind() == PairKind::LieAlgebra {
            return Scalar::constant(self.rational(rng));
        }
        let m = self.pair.variable_count();
        loop {
            let terms = rng.gen_range(1..=3);
            let mut out = Scalar::zero();
            for _ in 0..terms {
                let total = rng.gen_range(0..=self.max_poly_degree);
                let mut exps = vec![0u32; m];
                for _ in 0..total {
                    exps[rng.gen_range(0..m)] += 1;
                }
                out = &out + &Scalar::term(Exponents::new(exps), self.rational(rng));
            }
            if !out.is_zero() {
                return out;
            }
        }
    }

    pub fn vector(&self, rng: &mut ChaCha8Rng) -> Vector {
        loop {
            let d = self.pair.dimension();
            let count = rng.gen_range(1..=d.min(3));
            let v = Vector::from_pairs(
                sample(rng, d, count)
                    .into_vec()
                    .into_iter()
                    .map(|i| (i, self.scalar(rng)))
                    .collect::<Vec<_>>(),
            );
            if !v.is_zero() {
                return v;
            }
        }
    }

    /// A nonzero multivector of tensor degree `k`, clamped to the dimension.
    pub fn homogeneous(&self, rng: &mut ChaCha8Rng, k: usize) -> Multivector {
        let k = k.min(self.pair.dimension());
        if k == 0 {
            return Multivector::from_scalar(self.scalar(rng));
        }
        loop {
            let mut out = Multivector::zero();
            for _ in 0..rng.gen_range(1..=self.max_terms) {
                let mut idx = sample(rng, self.pair.dimension(), k).into_vec();
                idx.sort_unstable();
                let (m, _) = Monomial::normalize(&idx).expect("distinct indices");
                out = &out + &Multivector::term(m, self.scalar(rng));
            }
            if !out.is_zero() {
                return out;
            }
        }
    }

    /// A nonzero homogeneous multivector with tensor degree drawn from `0..=max_degree`.
    pub fn homogeneous_up_to(&self, rng: &mut ChaCha8Rng, max_degree: usize) -> Multivector {
        let k = rng.gen_range(0..=max_degree.min(self.pair.dimension()));
        self.homogeneous(rng, k)
    }

    /// A nonzero element of `A ⊕ 𝔤`: scalar only, vector only, or both.
    pub fn pair_element(&self, rng: &mut ChaCha8Rng) -> GradedPairElement {
        match rng.gen_range(0..3) {
            0 => GradedPairElement::scalar(self.scalar(rng)),
            1 => GradedPairElement::vector(self.vector(rng)),
            _ => GradedPairElement::new(self.scalar(rng), self.vector(rng)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn samples_live_over_the_pair() {
        let pairs = [LieRinehartPair::sl2(), LieRinehartPair::cartan(2).unwrap()];
        for pair in &pairs {
            let s = Sampler::new(pair);
            let mut rng = ChaCha8Rng::seed_from_u64(3);
            for k in 0..4 {
                let x = s.homogeneous(&mut rng, k);
                assert!(!x.is_zero());
                pair.check_multivector(&x).unwrap();
                assert!(x.tensor_degree().unwrap().value().unwrap() <= pair.dimension() as i64);
                let u = s.pair_element(&mut rng);
                assert!(!u.is_zero());
                pair.check_element(&u).unwrap();
                let a = s.scalar(&mut rng);
                assert!(a.total_degree().unwrap() <= 2);
            }
        }
    }

    #[test]
    fn sampling_is_reproducible() {
        let pair = LieRinehartPair::cartan(3).unwrap();
        let s = Sampler::new(&pair);
        let draw = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..5).map(|_| s.homogeneous_up_to(&mut rng, 3)).collect::<Vec<_>>()
        };
        assert_eq!(draw(11), draw(11));
        assert_ne!(draw(11), draw(12));
    }
}
