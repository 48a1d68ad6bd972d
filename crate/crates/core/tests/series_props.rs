mod common;

use biriordan::{parse, Error, Field, Fp, LaurentSeries, Rational, Side};
use common::*;
use num_traits::{One, Zero};
use proptest::prelude::*;

type F101 = Fp<101>;

fn fp() -> impl Strategy<Value = F101> {
    (0i64..101).prop_map(F101::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn rational_field_axioms(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
        prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        prop_assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
        match a.try_recip() {
            Ok(r) => prop_assert!((a * r).is_one()),
            Err(e) => {
                prop_assert!(a.is_zero());
                prop_assert_eq!(e, Error::DivisionByZero);
            }
        }
    }

    #[test]
    fn prime_field_axioms(a in fp(), b in fp(), c in fp()) {
        prop_assert_eq!(a + b, b + a);
        prop_assert_eq!((a * b) * c, a * (b * c));
        prop_assert_eq!(a * (b + c), a * b + a * c);
        prop_assert_eq!(a - a, F101::zero());
        if let Ok(r) = a.try_recip() {
            prop_assert_eq!(a * r, F101::one());
        } else {
            prop_assert!(a.is_zero());
        }
    }

    #[test]
    fn text_round_trip(a in rational()) {
        prop_assert_eq!(Rational::parse_text(&a.to_text()).unwrap(), a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_laws_exact(a in polynomial(-3..=3), b in polynomial(-2..=4), c in polynomial(0..=2)) {
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(
            a.mul(&b.add(&c).unwrap()).unwrap(),
            a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
        );
        prop_assert!(a.sub(&a).unwrap().is_zero());
    }

    #[test]
    fn ring_laws_truncated(
        s in side(),
        seeds in (series_on(Side::Below, -4..=4, 10), series_on(Side::Below, -4..=4, 10), series_on(Side::Below, -4..=4, 10)),
    ) {
        let flip = |x: S| if s == Side::Below { x } else { x.substitute_reciprocal() };
        let (a, b, c) = (flip(seeds.0), flip(seeds.1), flip(seeds.2));
        let ab_c = a.mul(&b).unwrap().mul(&c).unwrap();
        let a_bc = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert!(ab_c.eq_to_precision(&a_bc));
        prop_assert_eq!(ab_c.bound(), a_bc.bound());
        prop_assert!(a.mul(&b).unwrap().eq_to_precision(&b.mul(&a).unwrap()));
        let lhs = a.mul(&b.add(&c).unwrap()).unwrap();
        let rhs = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        prop_assert!(lhs.eq_to_precision(&rhs));
    }

    #[test]
    fn reciprocal_round_trip(s in side(), v in -6i64..=6, raw in series_on(Side::Below, 0..=0, 12)) {
        let a = raw.shift(v);
        let a = if s == Side::Below { a } else { a.substitute_reciprocal() };
        let r = a.recip(s, 12).unwrap();
        prop_assert_eq!(r.known_count(), Some(12));
        let p = a.mul(&r).unwrap();
        prop_assert!(p.eq_to_precision(&S::one()));
        prop_assert_eq!(p.known_count(), Some(12));
        prop_assert!(r.recip(s, 12).unwrap().eq_to_precision(&a));
    }

    #[test]
    fn reciprocal_of_polynomial_on_both_sides(p in polynomial(-2..=2)) {
        for s in [Side::Below, Side::Above] {
            let r = p.recip(s, 10).unwrap();
            prop_assert_eq!(r.side(), s);
            prop_assert!(p.mul(&r).unwrap().eq_to_precision(&S::one()));
        }
    }

    #[test]
    fn substitution_is_a_ring_map(a in series_on(Side::Below, -3..=3, 8), b in series_on(Side::Below, -3..=3, 8)) {
        let sub = |x: &S| x.substitute_reciprocal();
        prop_assert_eq!(sub(&a.mul(&b).unwrap()), sub(&a).mul(&sub(&b)).unwrap());
        prop_assert_eq!(sub(&a.add(&b).unwrap()), sub(&a).add(&sub(&b)).unwrap());
        prop_assert_eq!(sub(&sub(&a)), a.clone());
        prop_assert_eq!(sub(&a).side(), Side::Above);
    }

    #[test]
    fn precision_is_sound(p in polynomial(0..=3), d in polynomial(0..=2), w in polynomial(1..=3)) {
        prop_assume!(!d.coeff(0).unwrap().is_zero());
        prop_assume!(!w.coeff(1).unwrap().is_zero());
        // Coarse and fine expansions of the same exact inputs.
        let short = |x: &S, n: i64| x.with_precision(n);
        let f = p.mul(&d.recip(Side::Below, 30).unwrap()).unwrap();
        let g = short(&p, 6).mul(&short(&d, 6).recip(Side::Below, 6).unwrap()).unwrap();
        prop_assert!(refines(&g, &f, -5, 40));
        let h = f.compose(&w, 30).unwrap();
        let hs = g.compose(&short(&w, 7), 6).unwrap();
        prop_assert!(refines(&hs, &h, -5, 40));
        let k = f.pow(-3, Side::Below, 30).unwrap();
        let ks = g.pow(-3, Side::Below, 6).unwrap();
        prop_assert!(refines(&ks, &k, -20, 40));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn composition_is_associative(
        chi in series_on(Side::Below, -2..=2, 10),
        w in series_on(Side::Below, 1..=1, 10),
        e in series_on(Side::Below, 1..=2, 10),
    ) {
        let lhs = chi.compose(&w, 10).unwrap().compose(&e, 10).unwrap();
        let rhs = chi.compose(&w.compose(&e, 10).unwrap(), 10).unwrap();
        prop_assert!(lhs.eq_to_precision(&rhs));
        let v = lhs.order().unwrap().finite().unwrap();
        prop_assert!(lhs.is_known(v + 5) && rhs.is_known(v + 5));
    }

    #[test]
    fn inverse_round_trips_order_one(s in side(), raw in series_on(Side::Below, 1..=1, 30)) {
        let w = if s == Side::Below { raw } else { raw.substitute_reciprocal().recip(Side::Above, 30).unwrap() };
        prop_assert_eq!(w.order().unwrap().finite(), Some(1));
        let inv = w.compositional_inverse(30).unwrap();
        prop_assert_eq!(inv.known_count(), Some(30));
        let x = S::x();
        let a = w.compose(&inv, 30).unwrap();
        let b = inv.compose(&w, 30).unwrap();
        prop_assert!(a.eq_to_precision(&x) && a.known_count() >= Some(30));
        prop_assert!(b.eq_to_precision(&x) && b.known_count() >= Some(30));
    }

    #[test]
    fn inverse_round_trips_order_minus_one(s in side(), raw in series_on(Side::Below, -1..=-1, 30)) {
        let w = if s == Side::Below { raw } else { raw.substitute_reciprocal().recip(Side::Above, 30).unwrap() };
        prop_assert_eq!(w.order().unwrap().finite(), Some(-1));
        let inv = w.compositional_inverse(30).unwrap();
        // The inverse of an order -1 series lives on the opposite side.
        prop_assert_eq!(inv.side(), s.flip());
        let a = w.compose(&inv, 30).unwrap();
        let b = inv.compose(&w, 30).unwrap();
        prop_assert!(a.eq_to_precision(&S::x()) && a.known_count() >= Some(30));
        prop_assert!(b.eq_to_precision(&S::x()) && b.known_count() >= Some(30));
    }

    #[test]
    fn non_unit_orders_have_no_inverse(v in prop_oneof![Just(0i64), Just(2), Just(-2), Just(3)], raw in series_on(Side::Below, 0..=0, 8)) {
        let w = raw.shift(v);
        prop_assert!(w.compositional_inverse(8).is_err());
    }
}

#[test]
fn parse_agrees_with_arithmetic() {
    let p = |s: &str| parse::<Rational>(s, Side::Below, 12).unwrap();
    assert!(p("1/(1-x)^2").eq_to_precision(&p("1/(1-x)").mul(&p("1/(1-x)")).unwrap()));
    assert_eq!(
        p("(1+x)^3"),
        LaurentSeries::from_coefficients(&[q(1), q(3), q(3), q(1)])
    );
    assert_eq!(p("x^-2*x^2"), S::one());
    assert_eq!(p("3/6"), S::constant(q(1) / q(2)));
}
