//! End-to-end acceptance run: one PASS/FAIL line per criterion. All
//! comparisons are exact.

use std::path::PathBuf;
use std::process::Command;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rinehart::exterior::embed;
use rinehart::linfty::{
    admissible_splits, ce_differential, check_ce_square_zero, check_injection_random, check_linfty_morphism,
    check_strict_morphism_random, check_weak_jacobi_random, composition_identity_lhs, n_bracket, AssociatedBrackets,
    ExteriorBrackets, NaturalInjection, DEFAULT_ARITY_CAP,
};
use rinehart::scalar::{rat, Exponents};
use rinehart::schouten::{
    check_antisym_jacobi, check_decalage, check_oracle_agreement, check_poisson, check_sym_jacobi,
};
use rinehart::{
    BracketReport, GradedPairElement, LieRinehartPair, Multivector, PairMorphism, Rational, Sampler, Scalar, Vector,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn families() -> Vec<(&'static str, LieRinehartPair)> {
    vec![
        ("sl2", LieRinehartPair::sl2()),
        ("cartan2", LieRinehartPair::cartan(2).unwrap()),
    ]
}

fn require(label: &str, r: rinehart::Result<BracketReport>) -> Result<(), String> {
    match r {
        Ok(r) if r.pass => Ok(()),
        Ok(r) => Err(format!("{label}: {}", r.summary())),
        Err(e) => Err(format!("{label}: {e}")),
    }
}

// Truncated power series with rational coefficients.
fn series_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![rat(0, 1); a.len()];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate().take(a.len() - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// The sum over compositions collapses by symmetry to
/// `[x^n] Σ_p ((-1)^p/p!) C(p,2) G(x)² L(x)^(p-2)` with `G = x/(1-x)` and
/// `L = -log(1-x)`.
fn combinatorial_oracle(n: usize) -> Rational {
    let len = n + 1;
    let g: Vec<Rational> = (0..len).map(|k| if k == 0 { rat(0, 1) } else { rat(1, 1) }).collect();
    let l: Vec<Rational> = (0..len)
        .map(|k| if k == 0 { rat(0, 1) } else { rat(1, k as i64) })
        .collect();
    let g2 = series_mul(&g, &g);
    let mut lpow = {
        let mut one = vec![rat(0, 1); len];
        one[0] = rat(1, 1);
        one
    };
    let mut total = rat(0, 1);
    let mut factorial = rat(2, 1);
    for p in 2..=n {
        if p > 2 {
            lpow = series_mul(&lpow, &l);
            factorial *= rat(p as i64, 1);
        }
        let term = series_mul(&g2, &lpow)[n].clone();
        let sign = if p % 2 == 0 { 1 } else { -1 };
        total += term * rat(sign * (p * (p - 1) / 2) as i64, 1) / factorial.clone();
    }
    total
}

fn criterion_1() -> Outcome {
    for n in 2..=10 {
        let lhs = composition_identity_lhs(n).map_err(|e| e.to_string())?;
        let oracle = combinatorial_oracle(n);
        if lhs != rat(1, 2) || oracle != lhs {
            return Err(format!("n={n}: lhs {lhs}, series oracle {oracle}"));
        }
    }
    Ok("n = 2..10 all equal 1/2, matching the series oracle".into())
}

fn criterion_2() -> Outcome {
    let mut cases = 0;
    for (name, pair) in families() {
        for n in 3..=5 {
            for (p, q) in admissible_splits(n) {
                require(name, check_weak_jacobi_random(&pair, n, p, q, 50, 100 + n as u64))?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} (family, n, p, q) cases x 50 tuples, all residuals 0"))
}

fn criterion_3() -> Outcome {
    for (name, pair) in families() {
        for n in 2..=4 {
            require(
                name,
                check_injection_random(&pair, n, 25, 200 + n as u64, DEFAULT_ARITY_CAP),
            )?;
        }
        // Every argument with a nonzero scalar part.
        let s = Sampler::new(&pair);
        let mut rng = ChaCha8Rng::seed_from_u64(300);
        for n in 2..=4 {
            for _ in 0..25 {
                let args: Vec<Multivector> = (0..n)
                    .map(|_| embed(&GradedPairElement::new(s.scalar(&mut rng), s.vector(&mut rng))))
                    .collect();
                let r = check_linfty_morphism(
                    &AssociatedBrackets { pair: &pair },
                    &NaturalInjection,
                    &ExteriorBrackets { pair: &pair },
                    &args,
                    DEFAULT_ARITY_CAP,
                    pair.generator_prefix(),
                );
                require(name, r)?;
            }
        }
    }
    Ok("n = 2, 3, 4 on both families: 25 mixed tuples plus 25 all-scalar-part tuples each".into())
}

fn criterion_4() -> Outcome {
    type Check = fn(&LieRinehartPair, usize, u64) -> rinehart::Result<BracketReport>;
    let checks: [(&str, Check); 4] = [
        ("jacobi-antisym", check_antisym_jacobi),
        ("poisson", check_poisson),
        ("jacobi-sym", check_sym_jacobi),
        ("decalage", check_decalage),
    ];
    for (name, pair) in families() {
        for (label, check) in checks {
            require(&format!("{name} {label}"), check(&pair, 200, 400))?;
        }
    }
    Ok("four identities x two families x 200 samples".into())
}

type Matrix = [[Rational; 2]; 2];

fn matrix(entries: [[i64; 2]; 2]) -> Matrix {
    entries.map(|row| row.map(|v| rat(v, 1)))
}

fn commutator(a: &Matrix, b: &Matrix) -> Matrix {
    let mul = |x: &Matrix, y: &Matrix| -> Matrix {
        std::array::from_fn(|i| std::array::from_fn(|j| &x[i][0] * &y[0][j] + &x[i][1] * &y[1][j]))
    };
    let (ab, ba) = (mul(a, b), mul(b, a));
    std::array::from_fn(|i| std::array::from_fn(|j| &ab[i][j] - &ba[i][j]))
}

fn vector_of(x: &Multivector) -> Result<Vector, String> {
    if x.terms().any(|(m, _)| m.len() != 1) {
        return Err(format!("not a vector: {}", x.display('e')));
    }
    Ok(x.vector_part())
}

fn agree_matrix(
    pair: &LieRinehartPair,
    basis: &[Matrix],
    decompose: impl Fn(&Matrix) -> Option<Vec<Rational>>,
) -> Result<usize, String> {
    let mut count = 0;
    for i in 0..basis.len() {
        for j in 0..basis.len() {
            let got = vector_of(
                &n_bracket(pair, &[Multivector::generator(i), Multivector::generator(j)]).map_err(|e| e.to_string())?,
            )?;
            let c = commutator(&basis[i], &basis[j]);
            let want = decompose(&c).ok_or_else(|| format!("commutator {c:?} leaves the algebra"))?;
            for (k, c) in want.iter().enumerate() {
                if got.coefficient(k) != Scalar::constant(c.clone()) {
                    return Err(format!("{{e{}, e{}}}: got {:?}", i + 1, j + 1, got));
                }
            }
            count += 1;
        }
    }
    Ok(count)
}

fn derivative(a: &Scalar, i: usize) -> Scalar {
    Scalar::from_terms(a.terms().filter(|(e, _)| e.get(i) > 0).map(|(e, c)| {
        let mut exps = e.as_slice().to_vec();
        let k = exps[i];
        exps[i] -= 1;
        (Exponents::new(exps), c * rat(k as i64, 1))
    }))
}

/// `[X, Y]_k = X(Y_k) - Y(X_k)` for vector fields on `m` coordinates.
fn vector_field_bracket(m: usize, x: &Vector, y: &Vector) -> Vector {
    let apply =
        |v: &Vector, a: &Scalar| (0..m).fold(Scalar::zero(), |acc, i| &acc + &(&v.coefficient(i) * &derivative(a, i)));
    Vector::from_pairs((0..m).map(|k| (k, &apply(x, &y.coefficient(k)) - &apply(y, &x.coefficient(k)))))
}

fn monomials_up_to_two(m: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::one()];
    for i in 0..m {
        out.push(Scalar::var(i));
        for j in i..m {
            out.push(&Scalar::var(i) * &Scalar::var(j));
        }
    }
    out
}

fn criterion_5() -> Outcome {
    let sl2 = [
        matrix([[0, 1], [0, 0]]),
        matrix([[0, 0], [1, 0]]),
        matrix([[1, 0], [0, -1]]),
    ];
    let sl2_pairs = agree_matrix(&LieRinehartPair::sl2(), &sl2, |m| {
        (m[1][1] == -m[0][0].clone()).then(|| vec![m[0][1].clone(), m[1][0].clone(), m[0][0].clone()])
    })?;
    let gl2 = [
        matrix([[1, 0], [0, 0]]),
        matrix([[0, 1], [0, 0]]),
        matrix([[0, 0], [1, 0]]),
        matrix([[0, 0], [0, 1]]),
    ];
    let gl2_pairs = agree_matrix(&LieRinehartPair::gl2(), &gl2, |m| {
        Some(vec![m[0][0].clone(), m[0][1].clone(), m[1][0].clone(), m[1][1].clone()])
    })?;
    let mut cartan_pairs = 0;
    for m in 1..=3 {
        let pair = LieRinehartPair::cartan(m).unwrap();
        let fields: Vec<Vector> = (0..m)
            .flat_map(|i| {
                monomials_up_to_two(m)
                    .into_iter()
                    .map(move |c| Vector::from_pairs([(i, c)]))
            })
            .collect();
        for x in &fields {
            for y in &fields {
                let got = n_bracket(&pair, &[Multivector::from_vector(x), Multivector::from_vector(y)])
                    .map_err(|e| e.to_string())?;
                let want = Multivector::from_vector(&vector_field_bracket(m, x, y));
                if got != want {
                    return Err(format!(
                        "cartan{m}: {{{}, {}}} = {}, expected {}",
                        Multivector::from_vector(x).display('d'),
                        Multivector::from_vector(y).display('d'),
                        got.display('d'),
                        want.display('d')
                    ));
                }
                cartan_pairs += 1;
            }
        }
    }
    Ok(format!(
        "{sl2_pairs} sl2 and {gl2_pairs} gl2 generator pairs against matrix commutators; \
         {cartan_pairs} Cartan m <= 3 pairs of monomial fields (degree <= 2) against the differential-operator bracket"
    ))
}

fn criterion_6() -> Outcome {
    for (name, pair) in [
        ("sl2", LieRinehartPair::sl2()),
        ("solvable4", LieRinehartPair::solvable4()),
    ] {
        require(name, check_ce_square_zero(&pair))?;
    }
    let sl2 = LieRinehartPair::sl2();
    let g = Multivector::generator;
    let ef = ce_differential(&sl2, &g(0).wedge(&g(1))).map_err(|e| e.to_string())?;
    let efh = ce_differential(&sl2, &g(0).wedge(&g(1)).wedge(&g(2))).map_err(|e| e.to_string())?;
    if ef != g(2) || !efh.is_zero() {
        return Err(format!("d(e^f) = {}, d(e^f^h) = {}", ef.display('e'), efh.display('e')));
    }
    Ok("d∘d = 0 on all 8 + 16 monomials; d(e^f) = h, d(e^f^h) = 0".into())
}

fn criterion_7() -> Outcome {
    let inc = PairMorphism::sl2_into_gl2();
    for n in 2..=4 {
        require(
            "sl2->gl2",
            check_strict_morphism_random(&inc, n, 50, 700 + n as u64, DEFAULT_ARITY_CAP),
        )?;
    }
    Ok("n = 2, 3, 4 with 50 samples each".into())
}

fn criterion_8() -> Outcome {
    for (name, pair) in families() {
        require(name, check_oracle_agreement(&pair, 200, 800))?;
    }
    Ok("200 pairs per family".into())
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .display()
        .to_string()
}

fn exit_code(args: &[&str]) -> Result<i32, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_rinehart"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    out.status.code().ok_or_else(|| "terminated by a signal".into())
}

fn criterion_9() -> Outcome {
    let sl2_bad = fixture("sl2_corrupted.json");
    let cartan_bad = fixture("cartan2_corrupted.json");
    let zero_map = fixture("cartan2_zero_vector_map.json");
    let sl2_good = fixture("sl2.json");
    let cartan_good = fixture("cartan2.json");
    let inclusion = fixture("sl2_into_gl2.json");
    let cases: [(Vec<&str>, i32); 7] = [
        (
            vec![
                "--pair",
                &sl2_bad,
                "--skip-validation",
                "check",
                "weak-jacobi",
                "--trials",
                "10",
            ],
            1,
        ),
        (
            vec![
                "--pair",
                &sl2_bad,
                "--skip-validation",
                "check",
                "jacobi-antisym",
                "--trials",
                "10",
            ],
            1,
        ),
        (
            vec![
                "--pair",
                &cartan_bad,
                "--skip-validation",
                "check",
                "leibniz",
                "--trials",
                "10",
            ],
            1,
        ),
        (
            vec!["--morphism", &zero_map, "check", "morphism-strict", "--trials", "10"],
            1,
        ),
        (vec!["--pair", &sl2_good, "check", "weak-jacobi", "--trials", "10"], 0),
        (vec!["--pair", &cartan_good, "check", "leibniz", "--trials", "10"], 0),
        (
            vec!["--morphism", &inclusion, "check", "morphism-strict", "--trials", "10"],
            0,
        ),
    ];
    for (args, want) in &cases {
        let got = exit_code(args)?;
        if got != *want {
            return Err(format!("`rinehart {}` exited {got}, expected {want}", args.join(" ")));
        }
    }
    Ok("corrupted sl2 and Cartan fixtures and the zero vector_map exit 1; clean controls exit 0".into())
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("combinatorial identity", criterion_1),
        ("weak Jacobi per (p, q)", criterion_2),
        ("injection morphism equation", criterion_3),
        ("Schouten layer identities", criterion_4),
        ("bracket agreement on vectors", criterion_5),
        ("CE differential", criterion_6),
        ("strict morphism naturality", criterion_7),
        ("oracle equivalence", criterion_8),
        ("negative controls", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
