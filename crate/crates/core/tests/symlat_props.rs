use leibniz_core::lattice::{Elem, FiniteLattice};
use leibniz_core::symlat::{
    decide_equal, parse_term, Bound, Constraint, LatticeTerm, OrderContext, TwoElement,
};
use proptest::prelude::*;

const VARS: [&str; 3] = ["x", "y", "z"];

fn term() -> impl Strategy<Value = LatticeTerm> {
    let leaf = prop_oneof![
        Just(LatticeTerm::Top),
        Just(LatticeTerm::Bot),
        (0..3usize).prop_map(|i| LatticeTerm::var(VARS[i])),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.meet(b)),
            (inner.clone(), inner).prop_map(|(a, b)| a.join(b)),
        ]
    })
}

fn bound() -> impl Strategy<Value = Bound> {
    prop_oneof![
        1 => Just(Bound::Top),
        1 => Just(Bound::Bot),
        4 => (0..3usize).prop_map(|i| Bound::var(VARS[i])),
    ]
}

fn context() -> impl Strategy<Value = OrderContext> {
    proptest::collection::vec((bound(), bound()), 0..3).prop_map(|cs| {
        OrderContext::new(VARS).with_constraints(cs.into_iter().map(|(g, l)| Constraint::new(g, l)).collect())
    })
}

fn lattices() -> Vec<FiniteLattice> {
    vec![
        FiniteLattice::chain(2).unwrap(),
        FiniteLattice::chain(3).unwrap(),
        FiniteLattice::boolean(2).unwrap(),
        FiniteLattice::product(&FiniteLattice::chain(2).unwrap(), &FiniteLattice::chain(3).unwrap()).unwrap(),
    ]
}

fn bound_value(l: &FiniteLattice, b: &Bound, env: &[Elem; 3]) -> Elem {
    match b {
        Bound::Top => l.top(),
        Bound::Bot => l.bottom(),
        Bound::Var(v) => env[VARS.iter().position(|w| w == v).unwrap()],
    }
}

/// Brute force: does `lhs = rhs` hold at every admissible assignment in `l`?
fn holds_in(l: &FiniteLattice, lhs: &LatticeTerm, rhs: &LatticeTerm, ctx: &OrderContext) -> bool {
    let n = l.size();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let env = [a, b, c];
                let admissible = ctx
                    .constraints
                    .iter()
                    .all(|k| l.le(bound_value(l, &k.lesser, &env), bound_value(l, &k.greater, &env)));
                if !admissible {
                    continue;
                }
                let lookup = |v: &str| VARS.iter().position(|w| *w == v).map(|i| env[i]);
                if lhs.eval(l, &lookup).unwrap() != rhs.eval(l, &lookup).unwrap() {
                    return false;
                }
            }
        }
    }
    true
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 400, rng_algorithm: proptest::test_runner::RngAlgorithm::ChaCha, ..ProptestConfig::default() })]

    #[test]
    fn decisions_match_concrete_distributive_lattices(lhs in term(), rhs in term(), ctx in context()) {
        let d = decide_equal(&lhs, &rhs, &ctx).unwrap();
        for l in lattices() {
            prop_assert_eq!(holds_in(&l, &lhs, &rhs, &ctx), d.holds, "{} = {} in a lattice of size {}", lhs, rhs, l.size());
        }
        if let Some(cex) = d.counterexample {
            let lookup = |v: &str| cex.valuation.get(v);
            prop_assert_ne!(lhs.eval(&TwoElement, &lookup).unwrap(), rhs.eval(&TwoElement, &lookup).unwrap());
        }
    }

    #[test]
    fn printing_round_trips(t in term()) {
        let printed = t.to_string();
        prop_assert_eq!(parse_term(&printed).unwrap(), t.clone());
        prop_assert_eq!(parse_term(&printed).unwrap().to_string(), printed);
    }
}

#[test]
fn non_distributive_lattice_separates_distributivity() {
    // M3: 0 < a, b, c < 1, pairwise meets 0 and joins 1
    let op = |meet: bool| -> Vec<Vec<Elem>> {
        (0..5)
            .map(|x| {
                (0..5)
                    .map(|y| match (x, y) {
                        _ if x == y => x,
                        (0, _) | (_, 0) => if meet { 0 } else { x.max(y) },
                        (4, _) | (_, 4) => if meet { x.min(y) } else { 4 },
                        _ => if meet { 0 } else { 4 },
                    })
                    .collect()
            })
            .collect()
    };
    let m3 = FiniteLattice::from_rows(&op(true), &op(false), 0, 4).unwrap();
    assert!(m3.validate().iter().any(|v| v.axiom == leibniz_core::lattice::Axiom::Distributive));
    let lhs = parse_term("x /\\ (y \\/ z)").unwrap();
    let rhs = parse_term("x /\\ y \\/ x /\\ z").unwrap();
    let ctx = OrderContext::new(VARS);
    assert!(decide_equal(&lhs, &rhs, &ctx).unwrap().holds);
    assert!(!holds_in(&m3, &lhs, &rhs, &ctx));
}
