use std::sync::Arc;

use proptest::prelude::*;
use symherm::{binomial, ratio, render, Polynomial, Scalar, VariableSet};

fn vars() -> Arc<VariableSet> {
    VariableSet::standard(2, &["a"]).unwrap()
}

fn poly_strategy(max_exp: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0..=max_exp, 3), -9i64..=9, 1i64..=4), 0..=max_terms).prop_map(
        |terms| {
            let v = vars();
            Polynomial::from_terms(&v, terms.into_iter().map(|(e, n, d)| (e, ratio(n, d))))
        },
    )
}

fn small() -> impl Strategy<Value = Polynomial> {
    poly_strategy(3, 6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(p in small(), q in small(), r in small()) {
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert!((&p - &p).is_zero());
        prop_assert_eq!(&p * &Polynomial::one(&vars()), p.clone());
    }

    #[test]
    fn scaled_partials_compose(p in poly_strategy(7, 8), var in 0usize..3, i in 0u32..=5, j in 0u32..=5) {
        let lhs = p.scaled_partial(var, j).scaled_partial(var, i);
        let c = Scalar::from_integer(binomial(i + j, i));
        prop_assert_eq!(lhs, p.scaled_partial(var, i + j).scale(&c));
    }

    #[test]
    fn substitution_is_a_ring_map(p in small(), q in small(), s in small(), t in small()) {
        let b = [(0usize, s), (2usize, t)];
        let lhs = (&p * &q).substitute_indices(&b).unwrap();
        let rhs = p.substitute_indices(&b).unwrap() * q.substitute_indices(&b).unwrap();
        prop_assert_eq!(lhs, rhs);
        let lhs = (&p + &q).substitute_indices(&b).unwrap();
        let rhs = p.substitute_indices(&b).unwrap() + q.substitute_indices(&b).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn render_round_trips(p in poly_strategy(6, 10)) {
        let text = render(&p);
        prop_assert_eq!(Polynomial::parse(&text, &vars()).unwrap(), p);
    }

    #[test]
    fn exact_division_recovers_factor(p in small(), q in small()) {
        prop_assume!(!q.is_zero());
        prop_assert_eq!((&p * &q).exact_div(&q).unwrap(), p);
    }
}

#[test]
fn fixture_corpus_round_trips() {
    let v = VariableSet::standard(3, &["a", "b", "c"]).unwrap();
    let fixtures = [
        "(x-b)^2*(y-b)^2",
        "(b-a)*(2*(x^2+x*y+y^2) - 3*(a+b)*(x+y) + 6*a*b)",
        "-(x-b)*(y-b)*(x*y+(-2*a+b)*(x+y)+3*a^2-2*a*b)",
        "(x-a)*(y-a)*(x*y+(a-2*b)*(x+y)+3*b^2-2*a*b)",
        "(b-a)*(x-a)*(x-b)*(y-a)*(y-b)",
        "(b-a)^6",
        "x1^2+x2^2",
        "-2 + 3*x1 + 3*x2 - x1*x2",
        "x^2*y+x*y^2 + 1/2*z^3 - 7/3",
        "(x1+x2+x3)^4 - c*x1*x2*x3",
    ];
    for s in fixtures {
        let p = Polynomial::parse(s, &v).unwrap();
        let back = Polynomial::parse(&render(&p), &v).unwrap();
        assert_eq!(back, p, "{s}");
        assert_eq!(render(&back), render(&p));
    }
}
