use std::collections::HashMap;
use std::sync::Arc;

use heronion::{MultiPoly, VarTable};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn table() -> Arc<VarTable> {
    VarTable::new(&[("x", 1), ("y", 2), ("z", 3)]).unwrap()
}

/// `y^2 -> x^4 - z x` keeps weights homogeneous (weight 4).
fn ruled_table() -> Arc<VarTable> {
    let t = table();
    let repl = MultiPoly::parse_in(&t, "1 x^4 ; -1 x z").unwrap();
    t.with_square_rule("y", &repl).unwrap()
}

fn poly_in(t: Arc<VarTable>) -> impl Strategy<Value = MultiPoly> {
    (prop::collection::vec((prop::collection::vec(0u32..4, 3), -50i64..50), 0..6), 0u32..3).prop_map(
        move |(terms, den)| {
            let terms = terms.into_iter().map(|(e, c)| (e, BigInt::from(c))).collect();
            MultiPoly::from_terms(&t, terms, den).unwrap()
        },
    )
}

fn poly() -> impl Strategy<Value = MultiPoly> {
    poly_in(table())
}

fn point() -> impl Strategy<Value = HashMap<String, BigRational>> {
    prop::collection::vec((-9i64..10, 1i64..5), 3).prop_map(|v| {
        ["x", "y", "z"]
            .iter()
            .zip(v)
            .map(|(n, (a, b))| (n.to_string(), BigRational::new(a.into(), b.into())))
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn addition_is_a_group(p in poly(), q in poly(), r in poly()) {
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&p + &MultiPoly::zero(&table()), p.clone());
        prop_assert!((&p - &p).is_zero());
        prop_assert_eq!(&p + &(-&p), MultiPoly::zero(&table()));
    }

    #[test]
    fn multiplication_is_a_commutative_monoid(p in poly(), q in poly(), r in poly()) {
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &MultiPoly::one(&table()), p.clone());
        prop_assert!((&p * &MultiPoly::zero(&table())).is_zero());
    }

    #[test]
    fn distributive(p in poly(), q in poly(), r in poly()) {
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
    }

    #[test]
    fn laws_hold_with_a_square_rule(
        p in poly_in(ruled_table()),
        q in poly_in(ruled_table()),
        r in poly_in(ruled_table()),
    ) {
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        let y = p.table().index("y").unwrap();
        prop_assert!((&p * &q).degree_in(y).unwrap_or(0) <= 1);
    }

    #[test]
    fn evaluation_is_a_ring_map(p in poly(), q in poly(), pt in point()) {
        let ev = |f: &MultiPoly| f.eval_rational(&pt).unwrap();
        prop_assert_eq!(ev(&(&p * &q)), ev(&p) * ev(&q));
        prop_assert_eq!(ev(&(&p - &q)), ev(&p) - ev(&q));
    }

    #[test]
    fn exact_division_inverts_multiplication(p in poly(), q in poly()) {
        prop_assume!(!q.is_zero());
        prop_assert_eq!((&p * &q).exact_divide(&q).unwrap(), p);
    }

    #[test]
    fn serialization_round_trips(p in poly(), r in poly_in(ruled_table())) {
        prop_assert_eq!(MultiPoly::from_text(&p.to_text()).unwrap(), p.clone());
        prop_assert_eq!(MultiPoly::from_json(&p.to_json()).unwrap(), p);
        prop_assert_eq!(MultiPoly::from_text(&r.to_text()).unwrap(), r.clone());
        prop_assert_eq!(MultiPoly::from_json(&r.to_json()).unwrap(), r);
    }

    #[test]
    fn squares_have_square_roots(p in poly()) {
        let sq = p.pow(2);
        let root = sq.sqrt().expect("a square");
        prop_assert!(root == p || root == -&p);
    }
}
