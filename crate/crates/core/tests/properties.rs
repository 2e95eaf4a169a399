use std::cmp::Ordering;

use num_traits::{One, Zero};
use proptest::prelude::*;

use sturmlex::lexmap::F;
use sturmlex::oracle::{all_words, enumerate_central, enumerate_sequences, naive_balance, sandwich_census_among};
use sturmlex::seq::{rat, seq};
use sturmlex::word::w;
use sturmlex::{
    central_from_slope, cf_of_rational, directive_from_cf, expansion, is_balanced, is_central, lex_compare,
    mech_periodic, pal, phi, phi_prefix, phi_zero_u, verify_phi, BinaryWord, DyadicMode, EventuallyPeriodicSeq,
    PalBuilder, PrefixDecision, Rational,
};

fn word_strategy(max_len: usize) -> impl Strategy<Value = BinaryWord> {
    prop::collection::vec(0u8..2, 0..=max_len).prop_map(|bits| BinaryWord::from_bits(bits).unwrap())
}

fn seq_strategy() -> impl Strategy<Value = EventuallyPeriodicSeq> {
    (word_strategy(6), prop::collection::vec(0u8..2, 1..=8))
        .prop_map(|(pre, per)| EventuallyPeriodicSeq::new(pre, BinaryWord::from_bits(per).unwrap()).unwrap())
}

fn rational_strategy(max_den: i64) -> impl Strategy<Value = Rational> {
    (1..=max_den)
        .prop_flat_map(|b| (0..=b, Just(b)))
        .prop_map(|(a, b)| Rational::new(a.into(), b.into()))
}

proptest! {
    #[test]
    fn expansion_round_trips(x in rational_strategy(10_000)) {
        for mode in [DyadicMode::Lesser, DyadicMode::Greater] {
            prop_assert_eq!(expansion(&x, mode).unwrap().value(), x.clone());
        }
    }

    #[test]
    fn shifts_compose(s in seq_strategy(), j in 0usize..=50, k in 0usize..=50) {
        prop_assert_eq!(s.shift(j + k), s.shift(j).shift(k));
    }

    #[test]
    fn order_is_monotone_in_value(s in seq_strategy(), t in seq_strategy()) {
        let ord = lex_compare(&s, &t);
        prop_assert_eq!(ord == Ordering::Equal, s == t);
        if ord != Ordering::Greater {
            prop_assert!(s.value() <= t.value());
        }
        if let Some(i) = (0..s.comparison_horizon(&t)).find(|&i| s.digit(i) != t.digit(i)) {
            prop_assert_eq!(ord, s.digit(i).cmp(&t.digit(i)));
        }
    }

    #[test]
    fn shift_doubles_value(x in rational_strategy(500)) {
        prop_assume!(!x.is_one());
        let s = expansion(&x, DyadicMode::Lesser).unwrap();
        let doubled = &x * Rational::from_integer(2.into());
        let frac = &doubled - doubled.floor();
        // The lesser form of a dyadic x ≤ 1/2 shifts onto 1^∞, i.e. onto 2x itself.
        let expected = if frac.is_zero() && !x.is_zero() { Rational::one() } else { frac };
        prop_assert_eq!(s.shift(1).value(), expected);
    }

    #[test]
    fn text_round_trip(s in seq_strategy()) {
        let back: EventuallyPeriodicSeq = s.to_string().parse().unwrap();
        prop_assert_eq!(back, s);
    }

    #[test]
    fn balance_matches_literal_definition(v in word_strategy(200)) {
        prop_assert_eq!(is_balanced(&v), naive_balance(&v));
    }

    #[test]
    fn balanced_words_from_mechanical_periods(q in 2u64..=200, p_seed in 1u64..200) {
        let p = 1 + p_seed % (q - 1);
        prop_assume!(num_integer::gcd(p, q) == 1);
        let s = mech_periodic(p, q, &Rational::zero(), false).unwrap();
        prop_assert!(is_balanced(&s.prefix(q as usize)));
    }

    #[test]
    fn phi_of_one_u_is_all_ones(u in seq_strategy()) {
        let a = u.prepend(&w("1"));
        prop_assert_eq!(phi(&a).unwrap().phi, EventuallyPeriodicSeq::ones());
    }

    #[test]
    fn phi_is_verified_and_shift_maximal(u in seq_strategy()) {
        let b = phi_zero_u(&u).unwrap().phi;
        prop_assert!(verify_phi(&u, &b).passed);
        prop_assert!(sturmlex::distinct_shifts(&b).iter().all(|t| *t <= b));
    }

    #[test]
    fn incremental_builder_matches_naive_pal(v in word_strategy(14)) {
        let mut builder = PalBuilder::new();
        for &x in v.bits() {
            builder.push(x);
        }
        prop_assert_eq!(builder.word(), pal(&v));
    }
}

#[test]
fn pal_is_prefix_monotone() {
    for n in 0..=12 {
        for v in all_words(n) {
            let full = pal(&v);
            for k in 0..n {
                assert!(
                    pal(&v.prefix(k)).is_prefix_of(&full),
                    "Pal({}) vs Pal({v})",
                    v.prefix(k)
                );
            }
        }
    }
}

#[test]
fn pal_is_injective() {
    let mut images = std::collections::HashMap::new();
    for n in 0..=10 {
        for v in all_words(n) {
            if let Some(prev) = images.insert(pal(&v), v.clone()) {
                panic!("Pal({prev}) = Pal({v})");
            }
        }
    }
}

#[test]
fn central_rotations_are_extremal() {
    for c in enumerate_central(12).unwrap() {
        let zw1 = BinaryWord::concat_all([&w("0"), &c, &w("1")]);
        let onew0 = BinaryWord::concat_all([&w("1"), &c, &w("0")]);
        let rotations = zw1.rotations();
        assert_eq!(rotations.iter().min(), Some(&zw1), "{c}");
        assert_eq!(rotations.iter().max(), Some(&onew0), "{c}");
        if c.has_both_letters() {
            assert!(c.concat(&w("10")).rotations().contains(&c.concat(&w("01"))));
        }
    }
}

#[test]
fn pal_of_continued_fraction_directive_is_central_word() {
    for q in 2..=30u64 {
        for p in (1..q).filter(|&p| num_integer::gcd(p, q) == 1) {
            let cf = cf_of_rational(p, q).unwrap();
            assert_eq!(
                &pal(&directive_from_cf(&cf)),
                central_from_slope(p, q).unwrap().word(),
                "{p}/{q}"
            );
            assert_eq!(cf.to_rational(), Rational::new(p.into(), q.into()));
            assert_eq!(cf.alternate().to_rational(), cf.to_rational());
        }
    }
}

#[test]
fn certificates_are_coherent() {
    for c in enumerate_central(14).unwrap() {
        let cert = is_central(&c).expect("central");
        let (l, m) = cert.periods();
        assert!(c.has_period(l) && c.has_period(m));
        assert_eq!(l + m, c.len() + 2);
        assert_eq!(num_integer::gcd(l, m), 1);
        assert_eq!(pal(cert.directive()), c);
        if let Some((w1, w2)) = cert.factorization() {
            assert_eq!(BinaryWord::concat_all([w1, &w("01"), w2]), c);
            assert_eq!(BinaryWord::concat_all([w2, &w("10"), w1]), c);
        }
    }
}

#[test]
fn phi_census_is_unique_on_wider_sweep() {
    let central = enumerate_central(12).unwrap();
    for u in enumerate_sequences(3, 8) {
        let r = phi_zero_u(&u).unwrap();
        assert!(verify_phi(&u, &r.phi).passed, "{u}");
        if u.constant_letter().is_some() {
            continue;
        }
        let census = sandwich_census_among(&u, &central).unwrap();
        let fast = r.central.expect("non-constant u has a central word");
        if fast.word().len() <= 12 {
            assert_eq!(census, vec![fast.word().clone()], "{u}");
        } else {
            assert!(census.is_empty(), "{u}");
        }
    }
}

#[test]
fn prefix_decisions_survive_extension() {
    let suffixes = ["000000000000", "111111111111", "010101010101", "110100110010"];
    let mut decided = 0;
    for n in 1..=10 {
        for p in all_words(n) {
            let PrefixDecision::Decided(r) = phi_prefix(&p).unwrap() else {
                continue;
            };
            decided += 1;
            for suffix in suffixes {
                // Periodic tails of each pattern keep the extension eventually periodic.
                let u = EventuallyPeriodicSeq::new(p.clone(), w(suffix)).unwrap();
                assert_eq!(phi_zero_u(&u).unwrap().phi, r.phi, "P = {p}, suffix {suffix}");
            }
        }
    }
    assert!(decided > 100, "only {decided} decided prefixes");
}

#[test]
fn f_is_monotone_on_grid() {
    let mut grid: Vec<Rational> = (1..=64i64)
        .flat_map(|b| (0..=b).map(move |a| Rational::new(a.into(), b.into())))
        .collect();
    grid.sort();
    grid.dedup();
    let step = grid.len() / 200;
    let sample: Vec<_> = grid.iter().step_by(step.max(1)).collect();
    assert!(sample.len() >= 200);
    let values: Vec<Rational> = sample.iter().map(|x| F(x).unwrap().f).collect();
    for (i, pair) in values.windows(2).enumerate() {
        assert!(pair[0] <= pair[1], "F({}) > F({})", sample[i], sample[i + 1]);
    }
}

#[test]
fn f_stays_within_half_step() {
    for x in ["1/3", "1/4", "2/5", "1/5", "3/7", "5/16"] {
        let r = F(&rat(x)).unwrap();
        assert!(r.f <= rat(x) + rat("1/2"), "F({x}) = {}", r.f);
    }
    assert_eq!(F(&rat("1/2")).unwrap().f, rat("1"));
    assert!(F(&rat("3/2")).is_err());
}

#[test]
fn constant_inputs_map_to_themselves() {
    assert_eq!(phi_zero_u(&seq("(0)")).unwrap().phi, seq("(0)"));
    assert_eq!(phi_zero_u(&seq("(1)")).unwrap().phi, seq("(1)"));
}
