use rinehart::exterior::project;
use rinehart::linfty::{ce_differential, n_bracket, natural_injection};
use rinehart::schouten::{sn_antisym, sn_sym};
use rinehart::{LieRinehartPair, Multivector, Scalar};

use crate::error::CliError;
use crate::parse::{parse, Expr, ExprKind};

fn is_scalar(x: &Multivector) -> bool {
    x.terms().all(|(m, _)| m.is_empty())
}

/// Evaluates a parsed expression bottom-up.
pub fn eval(e: &Expr, pair: &LieRinehartPair) -> Result<Multivector, CliError> {
    let at = |source: rinehart::Error| CliError::Eval { pos: e.pos, source };
    let arg = |x: &Expr| eval(x, pair);
    Ok(match &e.kind {
        ExprKind::Number(c) => Multivector::from_scalar(Scalar::constant(c.clone())),
        ExprKind::Variable(k) => Multivector::from_scalar(Scalar::var(k - 1)),
        ExprKind::Generator(_, k) => Multivector::generator(k - 1),
        ExprKind::Neg(a) => -arg(a)?,
        ExprKind::Add(a, b) => arg(a)? + arg(b)?,
        ExprKind::Sub(a, b) => arg(a)? - arg(b)?,
        ExprKind::Mul(a, b) => {
            let (x, y) = (arg(a)?, arg(b)?);
            if is_scalar(&x) {
                y.scale(&x.scalar_part())
            } else if is_scalar(&y) {
                x.scale(&y.scalar_part())
            } else {
                return Err(at(rinehart::Error::Argument(
                    "`*` needs a scalar factor; use `^` for the wedge product".into(),
                )));
            }
        }
        ExprKind::Wedge(a, b) => arg(a)?.wedge(&arg(b)?),
        ExprKind::Pow(a, k) => {
            let x = arg(a)?;
            if !is_scalar(&x) {
                return Err(at(rinehart::Error::Argument(
                    "only scalars can be raised to a power".into(),
                )));
            }
            Multivector::from_scalar(x.scalar_part().pow(*k))
        }
        ExprKind::Antisym(a, b) => sn_antisym(pair, &arg(a)?, &arg(b)?).map_err(at)?,
        ExprKind::Sym(a, b) => sn_sym(pair, &arg(a)?, &arg(b)?).map_err(at)?,
        ExprKind::NBracket(xs) => {
            let args = xs.iter().map(arg).collect::<Result<Vec<_>, _>>()?;
            n_bracket(pair, &args).map_err(at)?
        }
        ExprKind::Differential(a) => ce_differential(pair, &arg(a)?).map_err(at)?,
        ExprKind::Injection(xs) => {
            let mut args = Vec::with_capacity(xs.len());
            for x in xs {
                let v = arg(x)?;
                args.push(project(&v).map_err(|source| CliError::Eval { pos: x.pos, source })?);
            }
            natural_injection(pair, &args).map_err(at)?
        }
    })
}

/// Parses, evaluates and renders in one step.
pub fn eval_str(input: &str, pair: &LieRinehartPair) -> Result<String, CliError> {
    let e = parse(input, pair)?;
    Ok(eval(&e, pair)?.display(pair.generator_prefix()).to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn goldens() {
        let c1 = LieRinehartPair::cartan(1).unwrap();
        assert_eq!(eval_str("[d1, x1^2]", &c1).unwrap(), "2*x1");
        let c3 = LieRinehartPair::cartan(3).unwrap();
        assert_eq!(eval_str("{d1, d2, x1*x2*d3}_3", &c3).unwrap(), "x1*d1^d3 - x2*d2^d3");
        let c2 = LieRinehartPair::cartan(2).unwrap();
        assert_eq!(eval_str("i_2(d1, d2)", &c2).unwrap(), "d1^d2");
        assert_eq!(eval_str("[d1^d2, x1]", &c2).unwrap(), "-d2");
        let sl2 = LieRinehartPair::sl2();
        assert_eq!(eval_str("d(e1^e2)", &sl2).unwrap(), "e3");
        assert_eq!(eval_str("d(e1^e2^e3)", &sl2).unwrap(), "0");
    }

    #[test]
    fn evaluation_errors() {
        let c2 = LieRinehartPair::cartan(2).unwrap();
        assert!(matches!(eval_str("d(d1^d2)", &c2), Err(CliError::Eval { pos: 1, .. })));
        assert!(matches!(eval_str("d1*d2", &c2), Err(CliError::Eval { pos: 1, .. })));
        assert!(matches!(
            eval_str("i_2(d1, d1^d2)", &c2),
            Err(CliError::Eval { pos: 9, .. })
        ));
        assert!(matches!(eval_str("(d1)^2", &c2), Err(CliError::Eval { pos: 1, .. })));
    }
}
