use proptest::prelude::*;
use rand::Rng;

use sepmodels::dsl::{parse_prob_prop, parse_store_prop, print_prop};
use sepmodels::gen::{self, Gen};
use sepmodels::prob::Pmf;
use sepmodels::prop::Prop;

fn names() -> Vec<String> {
    ["x", "y", "long_name2"].iter().map(|s| s.to_string()).collect()
}

fn pmfs(g: &mut Gen) -> Vec<Pmf> {
    (0..3)
        .map(|_| {
            let k = g.random_range(1..4);
            let masses = gen::masses(g, k, true);
            Pmf::new(masses.into_iter().enumerate().map(|(i, m)| (i as i64 * 3 - 2, m))).unwrap()
        })
        .collect()
}

/// Extra whitespace and newlines around every token.
fn spaced(s: &str) -> String {
    s.replace(' ', " \n\t ").replace('(', "( ").replace(')', " )")
}

proptest! {
    #[test]
    fn store_props_round_trip(seed in any::<u64>()) {
        let mut g = gen::rng(seed);
        let p = gen::store_prop(&mut g, &names(), 5, 5);
        let text = print_prop(&p);
        prop_assert_eq!(parse_store_prop(&text).unwrap(), p.clone());
        prop_assert_eq!(parse_store_prop(&spaced(&text)).unwrap(), p);
    }

    #[test]
    fn prob_props_round_trip(seed in any::<u64>()) {
        let mut g = gen::rng(seed);
        let pool = pmfs(&mut g);
        let p = gen::prob_prop(&mut g, &names(), &pool, 5);
        let text = print_prop(&p);
        prop_assert_eq!(parse_prob_prop(&text).unwrap(), p.clone());
        prop_assert_eq!(parse_prob_prop(&spaced(&text)).unwrap(), p);
    }

    /// Fully parenthesised input parses to the same tree as the minimal form.
    #[test]
    fn redundant_parens_are_harmless(seed in any::<u64>()) {
        fn full(p: &Prop<sepmodels::prop::PointsTo>) -> String {
            match p {
                Prop::Top => "(true)".into(),
                Prop::Atom(a) => format!("({} |-> {})", a.var, a.value),
                Prop::Star(l, r) => format!("({} * {})", full(l), full(r)),
                Prop::And(l, r) => format!("({} /\\ {})", full(l), full(r)),
                Prop::Or(l, r) => format!("({} \\/ {})", full(l), full(r)),
            }
        }
        let p = gen::store_prop(&mut gen::rng(seed), &names(), 5, 5);
        prop_assert_eq!(parse_store_prop(&full(&p)).unwrap(), p);
    }
}

#[test]
fn operators_associate_left() {
    let p = parse_store_prop("x |-> 1 /\\ y |-> 2 /\\ z |-> 3").unwrap();
    let pt = |v: &str, k| parse_store_prop(&format!("{v} |-> {k}")).unwrap();
    assert_eq!(p, Prop::and(Prop::and(pt("x", 1), pt("y", 2)), pt("z", 3)));
    assert_eq!(print_prop(&p), "x |-> 1 /\\ y |-> 2 /\\ z |-> 3");
    let q = Prop::or(pt("x", 1), Prop::or(pt("y", 2), pt("z", 3)));
    assert_eq!(print_prop(&q), "x |-> 1 \\/ (y |-> 2 \\/ z |-> 3)");
}

#[test]
fn malformed_input_is_rejected() {
    for bad in ["", "x |->", "x |-> 1 *", "(x |-> 1", "x |-> 1)", "x ~ ber(1/2)", "true true", "x |-> 1/2"] {
        assert!(parse_store_prop(bad).is_err(), "{bad}");
    }
    for bad in ["X ~ ber(3/2)", "X ~ {0: 1/2}", "X ~ {0: 1/2, 0: 1/2}", "X |-> 1", "X ~ ber(1/0)"] {
        assert!(parse_prob_prop(bad).is_err(), "{bad}");
    }
}
