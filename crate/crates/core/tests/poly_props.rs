mod common;

use std::collections::BTreeMap;

use common::strategies::{coef_ring, poly, XYZ};
use lambdaforge::poly::{linear_product_coefficient, series_product_coefficient, CoefRing, MultiPoly, SeriesTrunc};
use proptest::prelude::*;

fn ring_and_three() -> impl Strategy<Value = (MultiPoly, MultiPoly, MultiPoly)> {
    coef_ring().prop_flat_map(|r| (poly(r.clone()), poly(r.clone()), poly(r)))
}

proptest! {
    #[test]
    fn ring_axioms((f, g, h) in ring_and_three()) {
        prop_assert_eq!(f.add(&g).unwrap().add(&h).unwrap(), f.add(&g.add(&h).unwrap()).unwrap());
        prop_assert_eq!(f.mul(&g).unwrap(), g.mul(&f).unwrap());
        prop_assert_eq!(f.mul(&g.add(&h).unwrap()).unwrap(), f.mul(&g).unwrap().add(&f.mul(&h).unwrap()).unwrap());
        prop_assert_eq!(f.mul(&g).unwrap().mul(&h).unwrap(), f.mul(&g.mul(&h).unwrap()).unwrap());
        prop_assert!(f.sub(&f).unwrap().is_zero());
        prop_assert_eq!(f.mul(&f.one_like()).unwrap(), f.clone());
    }

    #[test]
    fn json_round_trip_is_identity(f in coef_ring().prop_flat_map(poly)) {
        let text = f.to_json();
        let back = MultiPoly::from_json(&text).unwrap();
        prop_assert_eq!(&back, &f);
        prop_assert_eq!(back.to_json(), text);
    }

    #[test]
    fn text_round_trip_over_integers(f in poly(CoefRing::Integers)) {
        let back = lambdaforge::expr::parse_poly(&f.to_string(), &XYZ).unwrap();
        prop_assert_eq!(back.change_ring(CoefRing::Integers).unwrap(), f);
    }

    #[test]
    fn substitution_is_multiplicative(
        f in poly(CoefRing::Integers),
        g in poly(CoefRing::Integers),
        a in poly(CoefRing::Integers),
        b in poly(CoefRing::Integers),
    ) {
        let assignment: BTreeMap<String, MultiPoly> =
            [("x".to_string(), a), ("y".to_string(), b), ("z".to_string(), f.clone())].into_iter().collect();
        let lhs = f.mul(&g).unwrap().substitute(&assignment).unwrap();
        let rhs = f.substitute(&assignment).unwrap().mul(&g.substitute(&assignment).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn truncated_series_matches_full_expansion(
        monos in prop::collection::vec((prop::collection::vec(0u32..3, 3), -3i64..4), 1..=6),
        j in 0usize..7,
    ) {
        let ms: Vec<MultiPoly> = monos
            .iter()
            .map(|(e, c)| common::zpoly(&XYZ.map(String::from), &[(e.clone(), *c)]))
            .collect();
        // full product of (1 + m t) as a polynomial in t over Z[x,y,z]
        let vars: Vec<String> = XYZ.iter().map(|s| s.to_string()).chain(["t".to_string()]).collect();
        let t = common::var(&vars, "t");
        let mut full = t.one_like();
        for m in &ms {
            full = full.mul(&m.with_vars(&vars).unwrap().mul(&t).unwrap().add(&t.one_like()).unwrap()).unwrap();
        }
        let mut want = MultiPoly::zero(CoefRing::Integers, &vars).unwrap();
        let ti = full.var_index("t").unwrap();
        for (m, c) in full.terms() {
            if m.exps()[ti] as usize == j {
                let mut e = m.exps().to_vec();
                e[ti] = 0;
                want = want.add(&MultiPoly::from_terms(CoefRing::Integers, full.vars(), [(e, c.clone())]).unwrap()).unwrap();
            }
        }
        let factors: Vec<SeriesTrunc> = ms.iter().map(|m| SeriesTrunc::linear_factor(m, 6)).collect();
        let got = series_product_coefficient(&factors, j).unwrap();
        prop_assert_eq!(got.with_vars(&vars).unwrap(), want.clone());
        prop_assert_eq!(linear_product_coefficient(&ms, j).unwrap().with_vars(&vars).unwrap(), want);
    }
}
