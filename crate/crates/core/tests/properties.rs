use std::cmp::Ordering;
use std::sync::OnceLock;

use cassels::arith::gcd;
use cassels::cp::{cp_value, cp_witness, half_order, normalize_coeffs, variance_height};
use cassels::height::{height, mean_trace};
use cassels::props::{coprime_multiplicativity, doubled_odd_multiplicativity, trace_additivity};
use cassels::quadforms::{
    a3a1_form, a4_form, poly1_value, poly2_value, universal_poly1, universal_poly2,
};
use cassels::thue::{compare_labels, label, synthetic_thue, SyntheticThue, ThueLabel};
use cassels::{CycInt, Rat};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn cycint_with(n: u64) -> impl Strategy<Value = CycInt> {
    prop::collection::vec((0..n as i64, -4i64..=4), 0..6).prop_map(move |terms| {
        CycInt::from_terms(n, terms.into_iter().map(|(k, c)| (k, c.into()))).unwrap()
    })
}

fn cycint() -> impl Strategy<Value = CycInt> {
    (1u64..=36).prop_flat_map(cycint_with)
}

fn same_conductor_pair() -> impl Strategy<Value = (CycInt, CycInt)> {
    (1u64..=36).prop_flat_map(|n| (cycint_with(n), cycint_with(n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_axioms(x in cycint(), y in cycint(), z in cycint()) {
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x + &CycInt::zero(), x.clone());
        prop_assert_eq!(&x * &CycInt::one(), x.clone());
        prop_assert!((&x - &x).is_zero());
    }

    #[test]
    fn conjugation_and_galois_are_homomorphisms((x, y) in same_conductor_pair(), j in 1i64..200) {
        prop_assert_eq!((&x * &y).conjugate(), &x.conjugate() * &y.conjugate());
        prop_assert_eq!((&x + &y).conjugate(), &x.conjugate() + &y.conjugate());
        let n = x.conductor();
        if gcd(j as u64, n) == 1 {
            prop_assert_eq!((&x * &y).galois(j).unwrap(), &x.galois(j).unwrap() * &y.galois(j).unwrap());
            prop_assert_eq!((&x + &y).galois(j).unwrap(), &x.galois(j).unwrap() + &y.galois(j).unwrap());
        }
    }

    #[test]
    fn zero_iff_height_zero(x in cycint()) {
        let h = height(&x);
        prop_assert_eq!(x.is_zero(), h.is_zero());
        if !x.is_zero() {
            prop_assert!(h >= Rat::one());
        }
    }

    #[test]
    fn trace_identities(x in cycint(), y in cycint(), m in 1u64..60) {
        prop_assert!(trace_additivity(&x, &y));
        if gcd(m, x.conductor()) == 1 {
            prop_assert!(coprime_multiplicativity(&x, m).unwrap());
            if m % 2 == 1 {
                prop_assert!(doubled_odd_multiplicativity(&x, m).unwrap());
            }
        }
    }

    #[test]
    fn equivalence_preserves_height(x in cycint(), j in 1i64..100, k in -50i64..50) {
        let n = x.conductor();
        if gcd(j.unsigned_abs(), n) == 1 {
            let y = &CycInt::root(n, k).unwrap() * &x.galois(j).unwrap();
            prop_assert_eq!(height(&y), height(&x));
        }
        prop_assert_eq!(height(&x.conjugate()), height(&x));
        prop_assert_eq!(height(&-&x), height(&x));
    }

    #[test]
    fn canonical_form_is_idempotent_and_trace_preserving(x in cycint()) {
        let c = x.canonical_form();
        let twice = c.canonical_form();
        prop_assert_eq!(twice.terms().collect::<Vec<_>>(), c.terms().collect::<Vec<_>>());
        prop_assert_eq!(mean_trace(&c), mean_trace(&x));
        prop_assert_eq!(&c, &x);
    }

    #[test]
    fn embedding_is_a_ring_map((x, y) in same_conductor_pair(), f in 1u64..6) {
        let m = x.conductor() * f;
        let (ex, ey) = (x.embed(m).unwrap(), y.embed(m).unwrap());
        prop_assert_eq!(&ex, &x);
        prop_assert_eq!(&ex + &ey, (&x + &y).embed(m).unwrap());
        prop_assert_eq!(&ex * &ey, (&x * &y).embed(m).unwrap());
        prop_assert_eq!(height(&ex), height(&x));
    }

    #[test]
    fn prime_conductor_height_forms_agree(
        (p, a) in prop::sample::select(vec![3u64, 5, 7, 11, 13])
            .prop_flat_map(|p| (Just(p), prop::collection::vec(-6i64..=6, p as usize)))
    ) {
        let general = height(&CycInt::from_coeffs(p, &a).unwrap());
        prop_assert_eq!(variance_height(&a, p).unwrap(), general.clone());
        let (w, _, _) = normalize_coeffs(&a, p).unwrap();
        prop_assert!((0..=half_order(p) as i64).contains(&w.coeff_sum()));
        prop_assert_eq!(w.height().unwrap(), general);
    }

    #[test]
    fn witnesses_verify(
        (p, s) in prop::sample::select(vec![5u64, 7, 11, 13, 17, 19])
            .prop_flat_map(|p| (Just(p), 0..=half_order(p))),
        r in 0u64..400
    ) {
        let w = cp_witness(p, s, r).unwrap();
        prop_assert_eq!(height(&w.to_cycint()), cp_value(p, s, r).unwrap());
    }

    #[test]
    fn quadratic_solvers_verify(m in 0u64..200_000) {
        let s = universal_poly1(m).unwrap().variables;
        prop_assert_eq!(poly1_value(s[0], s[1], s[2]), m as i64);
        let s = universal_poly2(m).unwrap().variables;
        prop_assert_eq!(poly2_value(s[0], s[1], s[2]), m as i64);
    }

    #[test]
    fn lattice_solvers_verify(t in (0u64..20_000).prop_map(|t| 2 * t)) {
        prop_assert!(a4_form(t).unwrap().verify());
        prop_assert!(a3a1_form(t).unwrap().verify());
    }
}

fn shared_set() -> &'static SyntheticThue {
    static SET: OnceLock<SyntheticThue> = OnceLock::new();
    SET.get_or_init(|| synthetic_thue(3, 3, 4))
}

fn grammar_label() -> impl Strategy<Value = ThueLabel> {
    (0i64..=3, 0i64..=4)
        .prop_flat_map(|(k, r)| {
            let depth = k.min(3) as usize;
            (
                Just(k),
                Just(r),
                prop::collection::vec(-4i64..=4, 0..=depth),
            )
        })
        .prop_map(|(k, r, rest)| {
            let mut terms = vec![k, r];
            terms.extend(rest);
            ThueLabel::new(terms).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn synthetic_labels_round_trip(l1 in grammar_label(), l2 in grammar_label()) {
        let set = shared_set();
        let (v1, v2) = (set.decode(&l1).unwrap(), set.decode(&l2).unwrap());
        prop_assert_eq!(label(&v1, set.oracle()).unwrap(), l1.clone());
        prop_assert_eq!(label(&v2, set.oracle()).unwrap(), l2.clone());
        prop_assert_eq!(compare_labels(&l1, &l2).unwrap(), v1.cmp(&v2));
    }

    #[test]
    fn invalid_labels_are_rejected(terms in prop::collection::vec(-3i64..=3, 0..7)) {
        let valid = terms.len() >= 2
            && terms[0] >= 0
            && (terms[0] > 0 || terms[1] >= 0)
            && terms.len() as i64 <= terms[0] + 2;
        prop_assert_eq!(ThueLabel::new(terms.clone()).is_ok(), valid);
        if let Ok(l) = ThueLabel::new(terms) {
            prop_assert_eq!(compare_labels(&l, &l).unwrap(), Ordering::Equal);
            prop_assert_eq!(l.to_string().parse::<ThueLabel>().unwrap(), l);
        }
    }
}
