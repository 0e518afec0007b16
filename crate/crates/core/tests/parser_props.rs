use std::collections::BTreeMap;

use lambdaforge::expr::{evaluate, parse, Expr, Value};
use lambdaforge::poly::CoefRing;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

const IDENTS: [&str; 6] = ["x", "y", "z", "t", "u1", "a_b"];

fn ident() -> impl Strategy<Value = String> {
    prop::sample::select(IDENTS.to_vec()).prop_map(String::from)
}

fn any_expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (0i64..1000).prop_map(Expr::int),
        (0i64..50, 1i64..20).prop_map(|(a, b)| Expr::Rational(BigRational::new(a.into(), b.into()))),
        (prop::collection::vec((-9i64..10).prop_map(BigInt::from), 1..4), prop::sample::select(vec![2u64, 3, 5]))
            .prop_map(|(c, p)| Expr::Witt(c, p)),
        ident().prop_map(Expr::Var),
        (0u32..4, prop::collection::vec(ident(), 1..4)).prop_map(|(k, vs)| Expr::Esym(k, vs)),
    ];
    leaf.prop_recursive(5, 48, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|a| Expr::Neg(Box::new(a))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
            (inner.clone(), 0u32..6).prop_map(|(a, n)| Expr::Pow(Box::new(a), n)),
            (0u32..5, inner.clone()).prop_map(|(n, a)| Expr::Lambda(n, Box::new(a))),
            (0u32..5, inner.clone()).prop_map(|(n, a)| Expr::Psi(n, Box::new(a))),
            (inner.clone(), 0u32..5).prop_map(|(a, n)| Expr::Binom(Box::new(a), n)),
            (prop::sample::select(vec![2u64, 3, 5, 7]), inner).prop_map(|(p, a)| Expr::Delta(p, Box::new(a))),
        ]
    })
}

/// Integer polynomial expressions in `x, y, z` with their value at a point.
fn arith_expr() -> impl Strategy<Value = Expr> {
    let leaf =
        prop_oneof![(-20i64..20).prop_map(Expr::int), prop::sample::select(vec!["x", "y", "z"]).prop_map(Expr::var),];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|a| Expr::Neg(Box::new(a))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
            (inner, 0u32..4).prop_map(|(a, n)| Expr::Pow(Box::new(a), n)),
        ]
    })
}

fn value_at(e: &Expr, point: &BTreeMap<&str, BigInt>) -> BigInt {
    match e {
        Expr::Int(n) => n.clone(),
        Expr::Var(v) => point[v.as_str()].clone(),
        Expr::Neg(a) => -value_at(a, point),
        Expr::Add(a, b) => value_at(a, point) + value_at(b, point),
        Expr::Sub(a, b) => value_at(a, point) - value_at(b, point),
        Expr::Mul(a, b) => value_at(a, point) * value_at(b, point),
        Expr::Pow(a, n) => value_at(a, point).pow(*n),
        _ => unreachable!("not generated"),
    }
}

fn run(args: &[&str]) -> lambdaforge::cli::Outcome {
    lambdaforge::cli::run(std::iter::once("lambdaforge").chain(args.iter().copied()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn printing_then_parsing_is_identity(e in any_expr()) {
        let printed = e.to_string();
        let back = parse(&printed).unwrap();
        prop_assert_eq!(&back, &e);
        prop_assert_eq!(back.to_string(), printed);
    }

    #[test]
    fn evaluation_is_deterministic(e in any_expr()) {
        let a = evaluate(&e).map(|v| format!("{:?}", v.value)).map_err(|err| err.to_string());
        let b = evaluate(&parse(&e.to_string()).unwrap()).map(|v| format!("{:?}", v.value)).map_err(|err| err.to_string());
        prop_assert_eq!(a, b);
    }

    #[test]
    fn polynomial_evaluation_matches_pointwise_arithmetic(e in arith_expr(), pt in prop::collection::vec(-5i64..6, 3)) {
        let point: BTreeMap<&str, BigInt> = ["x", "y", "z"].into_iter().zip(pt.iter().map(|&v| BigInt::from(v))).collect();
        let f = match evaluate(&e).unwrap().value {
            Value::Poly(f) => f,
            v => return Err(TestCaseError::fail(format!("not a polynomial: {v:?}"))),
        };
        let args: Vec<BigRational> = f.vars().iter().map(|v| BigRational::from_integer(point[v.as_str()].clone())).collect();
        let got = f.eval_in(&CoefRing::Rationals, &args).unwrap();
        prop_assert_eq!(got, BigRational::from_integer(value_at(&e, &point)));
    }

    #[test]
    fn arbitrary_input_gets_a_contract_exit_code(s in "[ -~]{0,24}") {
        let out = run(&["eval", &s]);
        prop_assert!([0, 1, 2, 3].contains(&out.code), "code {} for {:?}", out.code, s);
        prop_assert_eq!(out.code == 0, out.stderr.is_empty());
        prop_assert_eq!(out.code == 0, !out.stdout.is_empty());
        if parse(&s).is_err() {
            prop_assert_eq!(out.code, 2);
        }
    }
}

#[test]
fn json_and_text_agree_on_eval() {
    for e in ["lambda(2, x + y)", "psi(3, x) - binom(x, 2)", "[1,1]@2 * [0,1]@2", "delta(3, x*y)"] {
        let text = run(&["eval", e]);
        let json = run(&["--format", "json", "eval", e]);
        assert_eq!((text.code, json.code), (0, 0), "{e}");
        let v: serde_json::Value = serde_json::from_str(&json.stdout).unwrap();
        assert_eq!(v["value"].as_str().unwrap(), text.stdout.trim_end(), "{e}");
        assert_eq!(v["expr"].as_str().unwrap(), parse(e).unwrap().to_string());
    }
}
