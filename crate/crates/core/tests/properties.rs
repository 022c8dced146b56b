use proptest::prelude::*;

use reesalg::coeff::{lambda, LambdaValue};
use reesalg::grobner::{buchberger, MonomialOrder};
use reesalg::probe::{curve_pullback, halfspace_check, MonomialCurve};
use reesalg::{parse_poly, saturate_weights, ExpVector, Field, Poly, PolyRing, ReesAlgebra, Ring, Scalar};

fn ring(char: u64) -> Ring {
    PolyRing::new(Field::with_characteristic(char).unwrap(), &["x", "y"]).unwrap()
}

prop_compose! {
    fn terms()(ts in prop::collection::vec(((0u32..4, 0u32..4), -6i64..=6), 0..5)) -> Vec<((u32, u32), i64)> {
        ts
    }
}

fn build(r: &Ring, ts: &[((u32, u32), i64)]) -> Poly {
    Poly::from_terms(
        r,
        ts.iter()
            .map(|((a, b), c)| (ExpVector(vec![*a, *b]), r.field().from_i64(*c))),
    )
}

fn chars() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![0u64, 2, 3, 5, 101])
}

proptest! {
    #[test]
    fn rendering_reparses(char in chars(), ts in terms()) {
        let r = ring(char);
        let f = build(&r, &ts);
        prop_assert_eq!(parse_poly(&f.to_string(), &r).unwrap(), f);
    }

    #[test]
    fn ring_laws(char in chars(), a in terms(), b in terms(), c in terms()) {
        let r = ring(char);
        let (f, g, h) = (build(&r, &a), build(&r, &b), build(&r, &c));
        prop_assert_eq!(f.mul(&g), g.mul(&f));
        prop_assert_eq!(f.add(&g).mul(&h), f.mul(&h).add(&g.mul(&h)));
        prop_assert_eq!(f.mul(&g).mul(&h), f.mul(&g.mul(&h)));
        prop_assert!(f.sub(&f).is_zero());
    }

    #[test]
    fn evaluation_is_a_homomorphism(char in chars(), a in terms(), b in terms(), px in -4i64..4, py in -4i64..4) {
        let r = ring(char);
        let (f, g) = (build(&r, &a), build(&r, &b));
        let p: Vec<Scalar> = vec![r.field().from_i64(px), r.field().from_i64(py)];
        prop_assert_eq!(f.mul(&g).eval(&p).unwrap(), &f.eval(&p).unwrap() * &g.eval(&p).unwrap());
        prop_assert_eq!(f.order_at(&p).unwrap(), f.shift(&p).unwrap().order());
    }

    #[test]
    fn multiples_reduce_to_zero(char in chars(), a in terms(), b in terms(), c in terms()) {
        let r = ring(char);
        let (f, g, h) = (build(&r, &a), build(&r, &b), build(&r, &c));
        prop_assume!(!f.is_zero() || !g.is_zero());
        let gb = buchberger(&[f.clone(), g.clone()], MonomialOrder::Grevlex);
        prop_assert!(gb.contains(&f.mul(&h).add(&g)).unwrap());
        let nf = gb.normal_form(&h).unwrap();
        prop_assert!(gb.contains(&h.sub(&nf)).unwrap());
    }

    #[test]
    fn saturation_keeps_lambda(gens in prop::collection::vec((1u32..5, 0u32..4, 1u32..5), 1..4)) {
        let t = PolyRing::new(Field::Rational, &["t"]).unwrap();
        let g = ReesAlgebra::from_pairs(
            &t,
            gens.iter().map(|(w, extra, k)| (parse_poly(&format!("{k}*t^{}", w + extra), &t).unwrap(), *w)),
        )
        .unwrap();
        prop_assert_eq!(lambda(&g).unwrap(), lambda(&saturate_weights(&g)).unwrap());
    }

    #[test]
    fn newton_bound_is_attained_generically(a in 1u32..5, b in 1u32..5, ts in terms(), w in 1u32..3) {
        let r = ring(101);
        let f = build(&r, &ts);
        prop_assume!(!f.is_zero());
        let g = ReesAlgebra::from_pairs(&r, [(f, w)]).unwrap();
        let rep = &halfspace_check(&g, a, b).unwrap()[0];
        // some draw among a handful avoids the cancellation locus
        let hit = (1..=8).any(|c| {
            let curve = MonomialCurve::new(a, b, vec![r.field().from_i64(c * 7 + 3)]).unwrap();
            lambda(&curve_pullback(&g, &curve).unwrap()).unwrap() == LambdaValue::ratio(rep.min_l, w)
        });
        prop_assert!(hit);
    }
}
