use linkinv::algebra::poly::Roster;
use linkinv::algebra::rat::{int, rat};
use linkinv::algebra::{DenPowerFrac, HSeries};
use linkinv::burau::alexander_conway;
use linkinv::verify::fox::symmetrize;
use linkinv::verify::fox_alexander;
use linkinv::{BraidWord, Poly, RatSeries};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn poly2() -> impl Strategy<Value = Poly> {
    prop::collection::vec(((-4i32..=4, -4i32..=4), -5i64..=5, 1i64..=4), 0..6).prop_map(|terms| {
        let r = Roster::t(2);
        terms.into_iter().fold(Poly::zero_in(&r), |a, ((x, y), n, d)| &a + &Poly::monomial(&r, &[x, y], rat(n, d)))
    })
}

fn series() -> impl Strategy<Value = RatSeries> {
    (prop::collection::vec(-6i64..=6, 1..6), 1i64..=6)
        .prop_map(|(v, lead)| HSeries::new(0, std::iter::once(int(lead)).chain(v.into_iter().map(int)).collect()))
}

fn braid(max_strands: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
    (2..=max_strands).prop_flat_map(move |n| {
        prop::collection::vec((1..n as i32, any::<bool>()), 0..=max_len).prop_map(move |w| {
            BraidWord::new(n, w.into_iter().map(|(p, s)| if s { p } else { -p }).collect()).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly2(), b in poly2(), c in poly2()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Poly::one(), a.clone());
    }

    #[test]
    fn exact_division_undoes_product(a in poly2(), b in poly2()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).div_exact(&b), Some(a));
    }

    #[test]
    fn series_inverse(s in series()) {
        let inv = s.inverse().unwrap();
        let one = &s * &inv;
        prop_assert_eq!(one.get(0), Some(int(1)));
        for k in 1..=one.trunc() {
            prop_assert_eq!(one.get(k), Some(int(0)));
        }
    }

    #[test]
    fn color_substitution_is_multiplicative(a in poly2(), b in poly2(), x in -3i64..=3, y in -3i64..=3) {
        let al = [x, y];
        prop_assert_eq!((&a * &b).subst_t_to_qpow(&al), &a.subst_t_to_qpow(&al) * &b.subst_t_to_qpow(&al));
    }

    #[test]
    fn frac_normalization(a in poly2(), k in 0u32..3, p in 0u32..3) {
        prop_assume!(!a.is_zero());
        let r = Roster::t(2);
        let d = &Poly::var(&r, 0) - &Poly::constant(&r, int(1));
        let f = DenPowerFrac::new(d.clone(), &a * &d.pow(k), k + p);
        let n = f.normalize();
        prop_assert!(n.same_value(&f));
        prop_assert_eq!(n.normalize(), n.clone());
        prop_assert!(n.pow <= p || n.num.div_exact(&d).is_none());
    }

    #[test]
    fn json_roundtrip(a in poly2()) {
        prop_assert_eq!(Poly::from_json(&a.to_json()).unwrap(), a);
    }

    #[test]
    fn braid_text_roundtrip(b in braid(4, 8)) {
        prop_assert_eq!(BraidWord::parse(&b.to_string()).unwrap(), b);
    }

    #[test]
    fn alexander_is_markov_invariant(b in braid(3, 6)) {
        let a = alexander_conway(&b).unwrap();
        for m in b.markov_moves() {
            let x = alexander_conway(&m).unwrap();
            prop_assert_eq!(x.components, a.components);
            if a.components == 1 {
                prop_assert_eq!(x.delta.clone(), a.delta.clone(), "{} -> {}", b, m);
            }
        }
    }

    #[test]
    fn burau_matches_fox_up_to_eight_crossings(b in braid(3, 8)) {
        prop_assume!(b.close().components == 1);
        let d = alexander_conway(&b).unwrap().delta.unwrap();
        prop_assert_eq!(symmetrize(&d).unwrap(), fox_alexander(&b).unwrap());
    }
}
