mod common;

use std::collections::BTreeMap;

use lambdaforge::poly::{CoefRing, MultiPoly};
use lambdaforge::symfunc::{is_symmetric, newton_power_sum, power_sum, to_elementary, to_elementary_traced, SymLimits};
use proptest::prelude::*;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..n {
            let mut q = p.clone();
            q.insert(k, n - 1);
            out.push(q);
        }
    }
    out
}

/// Sum of `f` over all permutations of each block.
fn symmetrize(f: &MultiPoly, blocks: &[Vec<String>]) -> MultiPoly {
    let mut acc = f.clone();
    for block in blocks {
        let mut next = acc.zero_like();
        for perm in permutations(block.len()) {
            let map: BTreeMap<String, String> =
                block.iter().enumerate().map(|(i, v)| (v.clone(), block[perm[i]].clone())).collect();
            next = next.add(&acc.rename(&map).unwrap()).unwrap();
        }
        acc = next;
    }
    acc
}

fn grlex_gt(a: &[u32], b: &[u32]) -> bool {
    let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
    da > db || (da == db && a > b)
}

fn block_poly() -> impl Strategy<Value = MultiPoly> {
    let vars: Vec<String> = ["x1", "x2", "x3", "y1", "y2"].map(String::from).to_vec();
    prop::collection::vec((prop::collection::vec(0u32..3, 5), -5i64..6), 1..4)
        .prop_map(move |terms| common::zpoly(&vars, &terms.into_iter().collect::<Vec<_>>()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn elementary_form_substitutes_back(f in block_poly()) {
        let blocks = vec![common::names("x", 3), common::names("y", 2)];
        let s = symmetrize(&f, &blocks);
        prop_assert!(is_symmetric(&s, &blocks).unwrap());
        let (e, trace) = to_elementary_traced(&s, &blocks, SymLimits::default()).unwrap();
        prop_assert_eq!(e.expand(&blocks).unwrap().with_vars(s.vars()).unwrap(), s.clone());
        for steps in &trace {
            for w in steps.windows(2) {
                prop_assert!(grlex_gt(&w[0], &w[1]), "leading monomials {:?} then {:?}", w[0], w[1]);
            }
        }
    }
}

#[test]
fn newton_matches_reduction_of_power_sums() {
    for n in 1..=6u32 {
        for m in n as usize..=6 {
            let xs = common::names("x", m);
            let p = power_sum(n, &xs).unwrap();
            let e = to_elementary(&p, std::slice::from_ref(&xs)).unwrap();
            let newton = newton_power_sum(n as usize, m).unwrap();
            let (a, b) = MultiPoly::align(&e.poly.change_ring(CoefRing::Integers).unwrap(), &newton).unwrap();
            assert_eq!(a, b, "p_{n} in {m} variables");
        }
    }
}

#[test]
fn asymmetric_input_names_a_transposition() {
    let xs = common::names("x", 2);
    let f = common::zpoly(&xs, &[(vec![2, 0], 1)]);
    assert!(to_elementary(&f, &[xs]).is_err());
}
