use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rinehart::exterior::embed;
use rinehart::graded::parity_sign;
use rinehart::scalar::rat;
use rinehart::{GradedPairElement, LieRinehartPair, Multivector, PairMorphism, Sampler, Scalar, Vector};

fn pairs() -> Vec<LieRinehartPair> {
    vec![
        LieRinehartPair::sl2(),
        LieRinehartPair::cartan(2).unwrap(),
        LieRinehartPair::cartan(3).unwrap(),
    ]
}

fn degree(x: &Multivector) -> i64 {
    x.tensor_degree().unwrap().value().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn wedge_is_graded_symmetric(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for pair in pairs() {
            let s = Sampler::new(&pair);
            let x = s.homogeneous_up_to(&mut rng, 3);
            let y = s.homogeneous_up_to(&mut rng, 3);
            let sign = parity_sign(degree(&x) * degree(&y));
            prop_assert_eq!(x.wedge(&y), y.wedge(&x).signed(sign));
        }
    }

    #[test]
    fn wedge_is_associative_and_unital(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for pair in pairs() {
            let s = Sampler::new(&pair);
            let x = s.homogeneous_up_to(&mut rng, 2);
            let y = s.homogeneous_up_to(&mut rng, 2);
            let z = s.homogeneous_up_to(&mut rng, 2);
            prop_assert_eq!(x.wedge(&y).wedge(&z), x.wedge(&y.wedge(&z)));
            prop_assert_eq!(Multivector::one().wedge(&x), x.clone());
            prop_assert_eq!(x.wedge(&Multivector::one()), x);
        }
    }

    #[test]
    fn wedge_is_a_bilinear(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for pair in pairs() {
            let s = Sampler::new(&pair);
            let a = s.scalar(&mut rng);
            let x = s.homogeneous_up_to(&mut rng, 2);
            let y = s.homogeneous_up_to(&mut rng, 2);
            let expected = x.wedge(&y).scale(&a);
            prop_assert_eq!(x.scale(&a).wedge(&y), expected.clone());
            prop_assert_eq!(x.wedge(&y.scale(&a)), expected);
        }
    }

    #[test]
    fn construction_order_does_not_matter(seed in any::<u64>()) {
        // Wedge the same factors in a shuffled order and undo the sign.
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pair = LieRinehartPair::cartan(3).unwrap();
        let s = Sampler::new(&pair);
        let factors: Vec<Vector> = (0..3).map(|_| s.vector(&mut rng)).collect();
        let in_order = factors
            .iter()
            .fold(Multivector::one(), |acc, v| acc.wedge(&Multivector::from_vector(v)));
        let mut order: Vec<usize> = (0..3).collect();
        order.shuffle(&mut rng);
        let inversions = (0..3)
            .flat_map(|i| ((i + 1)..3).map(move |j| (i, j)))
            .filter(|&(i, j)| order[i] > order[j])
            .count() as i64;
        let shuffled = order
            .iter()
            .fold(Multivector::one(), |acc, &i| acc.wedge(&Multivector::from_vector(&factors[i])));
        prop_assert_eq!(shuffled.signed(parity_sign(inversions)), in_order);
    }

    #[test]
    fn coefficient_placement_is_irrelevant(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pair = LieRinehartPair::cartan(2).unwrap();
        let s = Sampler::new(&pair);
        let a = s.scalar(&mut rng);
        let (i, j) = if rng.gen_bool(0.5) { (0, 1) } else { (1, 0) };
        let gi = Multivector::generator(i);
        let gj = Multivector::generator(j);
        prop_assert_eq!(gi.scale(&a).wedge(&gj), gi.wedge(&gj.scale(&a)));
    }
}

#[test]
fn wedge_examples() {
    let d1 = Multivector::generator(0);
    let d2 = Multivector::generator(1);
    assert!(d1.wedge(&d1).is_zero());
    assert_eq!(d2.wedge(&d1), -d1.wedge(&d2));
    let x1 = Scalar::var(0);
    let x2 = Scalar::var(1);
    assert_eq!(d1.scale(&x1).wedge(&d2.scale(&x2)), d1.wedge(&d2).scale(&(&x1 * &x2)));
}

#[test]
fn embed_examples() {
    assert_eq!(embed(&GradedPairElement::scalar(Scalar::one())), Multivector::one());
    assert_eq!(
        embed(&GradedPairElement::vector(Vector::generator(0))),
        Multivector::generator(0)
    );
    let u = GradedPairElement::new(Scalar::from_int(3), Vector::generator(1).scale(&Scalar::from_int(2)));
    assert_eq!(embed(&u).display('d').to_string(), "3 + 2*d2");
}

#[test]
fn associated_exterior_morphism() {
    let pair = LieRinehartPair::sl2();
    let id = PairMorphism::identity(&pair);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let s = Sampler::new(&pair);
    for _ in 0..20 {
        let x = s.homogeneous_up_to(&mut rng, 3);
        assert_eq!(id.exterior_image(&x).unwrap(), x);
    }

    // Doubling every generator multiplies a length-n monomial by 2^n.
    let two = Scalar::from_int(2);
    let mut double = PairMorphism::new(
        pair.clone(),
        pair.clone(),
        Vec::new(),
        (0..3).map(|i| Vector::generator(i).scale(&two)).collect(),
    )
    .unwrap();
    // Not a Lie morphism, so the image is only defined through the raw map.
    assert!(double.validate().is_err());
    let abelian = LieRinehartPair::abelian(3).unwrap();
    let mut double = PairMorphism::new(
        abelian.clone(),
        abelian,
        Vec::new(),
        (0..3).map(|i| Vector::generator(i).scale(&two)).collect(),
    )
    .unwrap();
    double.validate().unwrap();
    for n in 0..=3usize {
        let word: Vec<usize> = (0..n).collect();
        let m = Multivector::wedge_word(&word, Scalar::one());
        let expected = m.scale_rational(&rat(1 << n, 1));
        assert_eq!(double.exterior_image(&m).unwrap(), expected);
    }

    // sl2 -> gl2: g(e) ∧ g(f) = E12 ∧ E21.
    let inc = PairMorphism::sl2_into_gl2();
    let ef = Multivector::generator(0).wedge(&Multivector::generator(1));
    assert_eq!(
        inc.exterior_image(&ef).unwrap(),
        Multivector::generator(1).wedge(&Multivector::generator(2))
    );
    // g(e) ∧ g(h) = E12 ∧ (E11 - E22) = -E11∧E12 - E12∧E22
    let eh = Multivector::generator(0).wedge(&Multivector::generator(2));
    let e11 = Multivector::generator(0);
    let e12 = Multivector::generator(1);
    let e22 = Multivector::generator(3);
    assert_eq!(inc.exterior_image(&eh).unwrap(), -e11.wedge(&e12) - e12.wedge(&e22));
}

#[test]
fn associated_morphism_is_multiplicative_and_functorial() {
    let inc = PairMorphism::sl2_into_gl2();
    let id_src = PairMorphism::identity(inc.source());
    let composed = inc.compose(&id_src).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let s = Sampler::new(inc.source());
    for _ in 0..30 {
        let x = s.homogeneous_up_to(&mut rng, 2);
        let y = s.homogeneous_up_to(&mut rng, 2);
        let fx = inc.exterior_image(&x).unwrap();
        let fy = inc.exterior_image(&y).unwrap();
        assert_eq!(inc.exterior_image(&x.wedge(&y)).unwrap(), fx.wedge(&fy));
        assert_eq!(composed.exterior_image(&x).unwrap(), fx);
    }
}
