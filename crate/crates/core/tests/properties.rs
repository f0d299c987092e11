use std::cmp::Ordering;

use proptest::prelude::*;
use quiddity::maps::alternate_signs;
use quiddity::quiddity::product_matrix;
use quiddity::{
    canonical_form, continuant, continuant_euler, dihedral_orbit, enumerate_quiddities,
    find_decomposition, is_evenly_reducible, is_irreducible, is_quiddity, phi, phi_inverse,
    quiddity_sign, rescale_even, sum_oplus, DecompositionQuery, EnumSpec, EvenMode, Generator,
    Quiddity, RingElem, WorkLimit,
};

fn generators() -> impl Strategy<Value = Generator> {
    prop_oneof![
        Just(Generator::integers()),
        Just(Generator::int(3)),
        Just(Generator::sqrt(2)),
        Just(Generator::sqrt(3)),
        Just(Generator::sqrt(5)),
        Just(Generator::isqrt(1)),
        Just(Generator::isqrt(2)),
        Just(Generator::isqrt(4)),
        Just(Generator::alpha()),
    ]
}

fn same_ring_triple() -> impl Strategy<Value = (RingElem, RingElem, RingElem)> {
    let quad = (
        prop_oneof![Just(2i64), Just(3), Just(-1), Just(-5)],
        -50i64..50,
        -50i64..50,
        -50i64..50,
        -50i64..50,
        -50i64..50,
        -50i64..50,
    )
        .prop_map(|(d, a1, b1, a2, b2, a3, b3)| {
            (
                RingElem::quad(a1, b1, d),
                RingElem::quad(a2, b2, d),
                RingElem::quad(a3, b3, d),
            )
        });
    let poly = (
        prop::collection::vec(-20i64..20, 0..4),
        prop::collection::vec(-20i64..20, 0..4),
        prop::collection::vec(-20i64..20, 0..4),
    )
        .prop_map(|(a, b, c)| {
            let p = |v: Vec<i64>| RingElem::poly(v.into_iter().map(Into::into).collect());
            (p(a), p(b), p(c))
        });
    let int = (any::<i64>(), any::<i64>(), any::<i64>())
        .prop_map(|(a, b, c)| (RingElem::int(a), RingElem::int(b), RingElem::int(c)));
    prop_oneof![quad, poly, int]
}

fn approx(x: &RingElem) -> Option<(f64, f64)> {
    match x {
        RingElem::Int(v) => Some((v.to_i64()? as f64, 0.0)),
        RingElem::Quad(q) => {
            let (a, b, d) = (
                q.rational().to_i64()? as f64,
                q.irrational().to_i64()? as f64,
                q.d() as f64,
            );
            Some(if d > 0.0 {
                (a + b * d.sqrt(), 0.0)
            } else {
                (a, b * (-d).sqrt())
            })
        }
        RingElem::Poly(_) => None,
    }
}

proptest! {
    #[test]
    fn ring_axioms((a, b, c) in same_ring_triple()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &RingElem::one(), a.clone());
    }

    #[test]
    fn order_is_total_and_additive((a, b, c) in same_ring_triple()) {
        let ab = a.cmp(&b);
        prop_assert_eq!(ab, b.cmp(&a).reverse());
        prop_assert_eq!((&a + &c).cmp(&(&b + &c)), ab);
        prop_assert_eq!(ab == Ordering::Equal, a == b);
    }

    #[test]
    fn modulus_comparison_agrees_with_floats(a in -40i64..40, b in -40i64..40, d in prop_oneof![Just(2i64), Just(3), Just(7), Just(-1), Just(-2), Just(-3)]) {
        let x = RingElem::quad(a, b, d);
        let (re, im) = approx(&x).unwrap();
        let m2 = re * re + im * im;
        if (m2 - 4.0).abs() > 1e-6 {
            let expected = if m2 < 4.0 { Ordering::Less } else { Ordering::Greater };
            prop_assert_eq!(x.cmp_abs2_with4().unwrap(), expected);
        }
    }

    #[test]
    fn display_parse_round_trip((a, b, c) in same_ring_triple()) {
        for x in [a, b, c] {
            let back: RingElem = x.to_string().parse().unwrap();
            prop_assert_eq!(back, x);
        }
    }

    #[test]
    fn extract_inverts_embed(gen in generators(), m in -1000i64..1000) {
        prop_assert_eq!(gen.extract(&gen.element(m)), Some(m));
        prop_assert_eq!(gen.nonneg().extract(&gen.element(m)), (m >= 0).then_some(m));
    }

    #[test]
    fn products_are_unimodular(gen in generators(), coeffs in prop::collection::vec(-4i64..=4, 1..10)) {
        let p = product_matrix(&gen.elements(&coeffs)).unwrap();
        prop_assert!(p.det().is_one());
    }

    #[test]
    fn euler_equals_recurrence(gen in generators(), coeffs in prop::collection::vec(-4i64..=4, 0..12)) {
        let e = gen.elements(&coeffs);
        prop_assert_eq!(continuant(&e).unwrap(), continuant_euler(&e).unwrap());
    }

    #[test]
    fn splice_with_quiddity_preserves_status(
        a in prop::collection::vec(-3i64..=3, 2..6),
        b_index in 0usize..1000,
    ) {
        let bs = enumerate_quiddities(&EnumSpec::new(Generator::integers(), 4, 2), WorkLimit::default()).unwrap();
        let b = &bs[b_index % bs.len()];
        let sum = sum_oplus(&a, b.coeffs()).unwrap();
        let z = Generator::integers();
        prop_assert_eq!(quiddity_sign(&z, &sum).is_some(), quiddity_sign(&z, &a).is_some());
    }

    #[test]
    fn quiddity_status_is_dihedral(gen in generators(), coeffs in prop::collection::vec(-2i64..=2, 1..7)) {
        let status = quiddity_sign(&gen, &coeffs).is_some();
        for (_, _, image) in dihedral_orbit(&coeffs) {
            prop_assert_eq!(quiddity_sign(&gen, &image).is_some(), status);
        }
        let canon = canonical_form(&coeffs);
        for (_, _, image) in dihedral_orbit(&coeffs) {
            prop_assert_eq!(canonical_form(&image), canon.clone());
        }
    }

    #[test]
    fn negation_preserves_quiddities(gen in generators(), coeffs in prop::collection::vec(-2i64..=2, 1..7)) {
        let neg: Vec<i64> = coeffs.iter().map(|c| -c).collect();
        prop_assert_eq!(quiddity_sign(&gen, &coeffs).is_some(), quiddity_sign(&gen, &neg).is_some());
    }

    #[test]
    fn rescaling_transfers_both_ways(k in prop_oneof![Just(2u64), Just(3), Just(5)], half in 1usize..=5, seed in prop::collection::vec(-3i64..=3, 10)) {
        let coeffs = &seed[..2 * half];
        let over_sqrt = quiddity_sign(&Generator::sqrt(k), coeffs).is_some();
        let over_z = quiddity_sign(&Generator::integers(), &rescale_even(coeffs, k).unwrap()).is_some();
        prop_assert_eq!(over_sqrt, over_z);
    }

    #[test]
    fn alternating_signs_is_an_involution(coeffs in prop::collection::vec(-9i64..=9, 0..10)) {
        prop_assert_eq!(alternate_signs(&alternate_signs(&coeffs)), coeffs);
    }

    #[test]
    fn is_quiddity_matches_coefficient_check(gen in generators(), coeffs in prop::collection::vec(-2i64..=2, 1..7)) {
        prop_assert_eq!(is_quiddity(&gen.elements(&coeffs)).unwrap(), quiddity_sign(&gen, &coeffs));
    }
}

fn enumerated(gen: Generator, sizes: std::ops::RangeInclusive<usize>, bound: u32) -> Vec<Quiddity> {
    sizes
        .flat_map(|n| {
            enumerate_quiddities(&EnumSpec::new(gen, n, bound), WorkLimit::default()).unwrap()
        })
        .collect()
}

#[test]
fn decompositions_are_sound() {
    for gen in [
        Generator::integers(),
        Generator::sqrt(2),
        Generator::isqrt(1),
        Generator::integers().nonneg(),
    ] {
        for q in enumerated(gen, 4..=7, 2) {
            let query = DecompositionQuery::default();
            if let Some(d) = find_decomposition(&q, &query).unwrap() {
                assert!(d.verify(&q, &query), "{gen} {:?}: {d:?}", q.coeffs());
            }
            let even = DecompositionQuery::even();
            if let Some(d) = find_decomposition(&q, &even).unwrap() {
                assert!(d.verify(&q, &even));
                assert!(d.a.len() % 2 == 0 && d.b.len() % 2 == 0);
            }
        }
    }
}

#[test]
fn irreducibility_is_a_class_property() {
    for gen in [
        Generator::integers(),
        Generator::sqrt(3),
        Generator::isqrt(2),
    ] {
        for q in enumerated(gen, 3..=6, 2) {
            let irr = is_irreducible(&q).unwrap();
            for (_, _, image) in dihedral_orbit(q.coeffs()) {
                let other = Quiddity::new(gen, image).unwrap();
                assert_eq!(
                    is_irreducible(&other).unwrap(),
                    irr,
                    "{gen} {:?}",
                    q.coeffs()
                );
            }
            assert_eq!(is_irreducible(&q.negate().unwrap()).unwrap(), irr);
        }
    }
}

#[test]
fn zero_entry_means_reducible_from_size_five() {
    for q in enumerated(Generator::integers(), 5..=7, 2) {
        if q.coeffs().contains(&0) {
            let d = find_decomposition(&q, &DecompositionQuery::default()).unwrap();
            assert!(d.is_some(), "{:?}", q.coeffs());
        }
    }
}

#[test]
fn phi_round_trips() {
    for k in [1u64, 2, 3, 5] {
        for n in (2..=6).step_by(2) {
            for q in enumerate_quiddities(
                &EnumSpec::new(Generator::isqrt(k), n, 2),
                WorkLimit::default(),
            )
            .unwrap()
            {
                let image = phi(&q).unwrap().target;
                assert_eq!(phi_inverse(&image).unwrap().target, q);
            }
        }
    }
}

#[test]
fn strict_even_reducibility_implies_equivalence_mode() {
    for n in [4usize, 6, 8] {
        for q in enumerate_quiddities(
            &EnumSpec::new(Generator::integers(), n, 2),
            WorkLimit::default(),
        )
        .unwrap()
        {
            let strict = is_evenly_reducible(&q, EvenMode::Strict).unwrap();
            let equiv = is_evenly_reducible(&q, EvenMode::UpToEquivalence).unwrap();
            assert!(!strict || equiv, "{:?}", q.coeffs());
        }
    }
}

#[test]
fn equivalence_mode_is_dihedral_invariant() {
    for q in enumerate_quiddities(
        &EnumSpec::new(Generator::integers(), 6, 2),
        WorkLimit::default(),
    )
    .unwrap()
    {
        let r = is_evenly_reducible(&q, EvenMode::UpToEquivalence).unwrap();
        for (_, _, image) in dihedral_orbit(q.coeffs()) {
            let other = Quiddity::new(Generator::integers(), image).unwrap();
            assert_eq!(
                is_evenly_reducible(&other, EvenMode::UpToEquivalence).unwrap(),
                r
            );
        }
    }
}

#[test]
fn records_round_trip_through_json_and_csv() {
    use quiddity::QuiddityRecord;
    for gen in [
        Generator::integers(),
        Generator::sqrt(2),
        Generator::isqrt(3),
        Generator::alpha(),
    ] {
        for q in enumerated(gen, 2..=5, 2) {
            let rec = QuiddityRecord::new(&q, Some(is_irreducible(&q).unwrap()));
            let json = serde_json::to_string(&rec).unwrap();
            let back: QuiddityRecord = serde_json::from_str(&json).unwrap();
            assert_eq!(back.to_quiddity().unwrap(), q);
            let row = rec.to_csv_row();
            assert_eq!(QuiddityRecord::from_csv_row(&row, gen).unwrap(), rec);
        }
    }
}
