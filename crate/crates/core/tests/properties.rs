use proptest::prelude::*;

use pingpong_core::arith::{GaussianRational, Interval, Poly, Rational};
use pingpong_core::moebius::predicates::{closed_intersection_point, closed_subset_closed, closed_subset_open};
use pingpong_core::moebius::{
    apply_word, make_generators, mobius_disk, mobius_point, ExtPoint, GenDisk, Matrix2, Openness, SignPolicy,
};
use pingpong_core::pingpong::b2_power_disk;
use pingpong_core::word::{Letter, Word};

fn rational() -> impl Strategy<Value = Rational> {
    (-60i64..=60, 1i64..=12).prop_map(|(n, d)| Rational::new(n, d).unwrap())
}

fn gaussian() -> impl Strategy<Value = GaussianRational> {
    (rational(), rational()).prop_map(|(re, im)| GaussianRational::new(re, im))
}

fn nonzero_gaussian() -> impl Strategy<Value = GaussianRational> {
    gaussian().prop_filter("nonzero", |z| !z.is_zero())
}

fn openness() -> impl Strategy<Value = Openness> {
    prop_oneof![Just(Openness::Open), Just(Openness::Closed)]
}

fn disk() -> impl Strategy<Value = GenDisk> {
    prop_oneof![
        (gaussian(), 1i64..=8, 1i64..=4, openness())
            .prop_map(|(c, n, d, o)| GenDisk::disk(&c, &Rational::new(n, d).unwrap(), o).unwrap()),
        (gaussian(), 1i64..=8, 1i64..=4, openness())
            .prop_map(|(c, n, d, o)| GenDisk::exterior(&c, &Rational::new(n, d).unwrap(), o).unwrap()),
        (rational(), openness()).prop_map(|(t, o)| GenDisk::re_greater(&t, o)),
        (rational(), openness()).prop_map(|(t, o)| GenDisk::im_less(&t, o)),
    ]
}

fn word() -> impl Strategy<Value = Word> {
    (any::<bool>(), prop::collection::vec((1i64..=3, any::<bool>()), 0..6)).prop_map(|(start_a, exps)| {
        let first = if start_a { Letter::A } else { Letter::B };
        Word::from_blocks(exps.into_iter().enumerate().map(|(i, (e, neg))| {
            let l = if i % 2 == 0 { first } else { first.other() };
            (l, if neg { -e } else { e })
        }))
    })
}

fn matrix() -> impl Strategy<Value = Matrix2> {
    (nonzero_gaussian(), nonzero_gaussian(), word()).prop_map(|(l, m, w)| {
        let g = make_generators(&l, &m).unwrap();
        apply_word(&w, &g.a, &g.b)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rational_field_axioms(x in rational(), y in rational(), z in rational()) {
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        if !x.is_zero() {
            prop_assert_eq!(&x * &x.recip().unwrap(), Rational::one());
        }
    }

    #[test]
    fn gaussian_field_axioms(x in gaussian(), y in gaussian()) {
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!((&x * &y).norm_sqr(), &x.norm_sqr() * &y.norm_sqr());
        if !y.is_zero() {
            prop_assert_eq!(&x.checked_div(&y).unwrap() * &y, x);
        }
    }

    #[test]
    fn interval_products_enclose(a in rational(), b in rational(), c in rational(), d in rational(), s in 0u32..=8) {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        let (c, d) = if c <= d { (c, d) } else { (d, c) };
        let x = Interval::new(a.clone(), b.clone()).unwrap();
        let y = Interval::new(c.clone(), d.clone()).unwrap();
        let prod = x.mul(&y).round(8 + s);
        for p in [&a, &b] {
            for q in [&c, &d] {
                prop_assert!(prod.contains(&(p * q)));
            }
        }
    }

    #[test]
    fn poly_degree_adds(p in prop::collection::vec(gaussian(), 1..5), q in prop::collection::vec(gaussian(), 1..5)) {
        let p = Poly::new(p);
        let q = Poly::new(q);
        if let (Some(dp), Some(dq)) = (p.degree(), q.degree()) {
            prop_assert_eq!((&p * &q).degree(), Some(dp + dq));
        }
    }

    #[test]
    fn disk_round_trip(d in disk(), m in matrix()) {
        let back = mobius_disk(&m.inverse(), &mobius_disk(&m, &d));
        prop_assert!(back.same_set(&d));
    }

    #[test]
    fn exponent_inversion_symmetry(l in nonzero_gaussian(), mu in nonzero_gaussian(), w in word(), z in gaussian()) {
        let g = make_generators(&l, &mu).unwrap();
        let p = ExtPoint::finite(z);
        let lhs = mobius_point(&apply_word(&w.invert_exponents(), &g.a, &g.b), &p);
        let rhs = mobius_point(&apply_word(&w, &g.a, &g.b), &p.negate()).negate();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn trace_of_a_b_inverse(l in nonzero_gaussian(), mu in nonzero_gaussian()) {
        let g = make_generators(&l, &mu).unwrap();
        let c = &g.a * &g.b.inverse();
        prop_assert_eq!(c.trace(), &GaussianRational::from_int(2) - &(&l * &mu));
    }

    #[test]
    fn strict_s_lemma_matches_candidates(p in disk(), q in disk()) {
        let p = p.closure();
        let q = q.interior();
        // p ⊆ q  iff  p ∩ complement(q) = ∅, and the complement of an open disk is closed.
        let witness = closed_intersection_point(&[p.clone(), q.complement()], SignPolicy::ExactOnly);
        prop_assert_eq!(closed_subset_open(&p, &q), witness.is_none());
    }

    #[test]
    fn strict_containment_implies_closed_containment(p in disk(), q in disk()) {
        let (p, q) = (p.closure(), q.closure());
        if closed_subset_open(&p, &q.interior()) {
            prop_assert!(closed_subset_closed(&p, &q));
        }
    }

    #[test]
    fn re_shift_identity(t in rational(), s in rational(), o in openness()) {
        let shifted = mobius_disk(&Matrix2::translation(GaussianRational::real(s.clone())), &GenDisk::re_greater(&t, o));
        prop_assert!(shifted.same_set(&GenDisk::re_greater(&(&t + &s), o)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn points_and_disks_move_together(d in disk(), m in matrix(), z in gaussian()) {
        let p = ExtPoint::finite(z);
        prop_assert_eq!(d.contains(&p), mobius_disk(&m, &d).contains(&mobius_point(&m, &p)));
    }
}

proptest! {
    #[test]
    fn ball_formula(n in 1i64..=100) {
        let x2 = GenDisk::exterior(&GaussianRational::zero(), &Rational::one(), Openness::Open).unwrap();
        let b = make_generators(&GaussianRational::from_int(2), &GaussianRational::from_int(2)).unwrap().b;
        let image = mobius_disk(&b.pow(n), &x2);
        prop_assert!(image.same_set(&b2_power_disk(n)));
        let inside = ExtPoint::finite(GaussianRational::real(Rational::new(1, 2 * n).unwrap()));
        prop_assert!(image.contains(&inside));
        prop_assert!(!image.contains(&ExtPoint::finite(GaussianRational::real(Rational::new(1, 2 * n - 1).unwrap()))));
    }
}
