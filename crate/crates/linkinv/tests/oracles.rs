use linkinv::algebra::interp::plain_roster;
use linkinv::algebra::poly::Roster;
use linkinv::algebra::rat::{binom, int, rat};
use linkinv::algebra::DenPowerFrac;
use linkinv::burau::{alexander_conway, t_half_diff};
use linkinv::rmatrix::{colored_jones, qint};
use linkinv::u1rc::{gen_t_polys, substitute_colors, u1rc_series, u1rc_series_jet};
use linkinv::verify::kauffman::{bracket, CONVENTION};
use linkinv::verify::{fox_alexander, resummation_check};
use linkinv::{BraidWord, Error, Poly};

fn br(s: &str) -> BraidWord {
    BraidWord::parse(s).unwrap()
}

fn mpoly(terms: &[([i32; 3], i64)], d: i64) -> Poly {
    let r = plain_roster(&["m1", "m2", "n"]);
    terms.iter().fold(Poly::zero_in(&r), |a, (e, c)| &a + &Poly::monomial(&r, e, rat(*c, d)))
}

// The two order-2 polynomials listed after T_{0,2} in the reference table are T_{1,1} and
// T_{2,0}; the printed labels T_{1,2} and T_{2,2} do not match them.
#[test]
fn reference_table_order_two_labels() {
    let t = gen_t_polys(3).unwrap();
    let a26 = mpoly(
        &[
            ([1, 0, 2], 3),
            ([0, 0, 2], 1),
            ([1, 1, 1], 12),
            ([1, 0, 1], 3),
            ([0, 1, 1], 6),
            ([0, 0, 1], -3),
            ([1, 2, 0], 12),
            ([1, 1, 0], 6),
            ([0, 2, 0], 6),
            ([0, 1, 0], -6),
            ([0, 0, 0], -4),
        ],
        -12,
    );
    let a27 = mpoly(&[([0, 0, 2], 3), ([0, 1, 1], 12), ([0, 0, 1], 5), ([0, 2, 0], 12), ([0, 1, 0], 12), ([0, 0, 0], 2)], 24);
    assert_eq!(t.plus[&(1, 1)], a26);
    assert_eq!(t.plus[&(2, 0)], a27);
}

#[test]
fn unknot_series_closed_form() {
    let s = u1rc_series(&br("1:"), 4).unwrap();
    let r = Roster::t(1);
    let diff = t_half_diff(&r, 0);
    for (n, f) in s.orders.iter().enumerate() {
        let want = DenPowerFrac::new(Poly::constant(&r, int(1)), diff.scale_by(&binom(&rat(1, 2), n)), 0);
        assert!(f.same_value(&want), "order {n}");
    }
}

#[test]
fn jet_route_agrees_with_state_sum() {
    for (s, perm) in [("2: 1 1 1", vec![0]), ("2: 1 1", vec![0, 1]), ("2: -1 -1 -1", vec![0])] {
        let a = u1rc_series(&br(s), 2).unwrap();
        let b = u1rc_series_jet(&br(s), 2).unwrap();
        assert!(a.same_as(&b, &perm), "{s}");
    }
}

#[test]
fn vanishing_alexander_is_an_error() {
    assert!(matches!(u1rc_series(&br("2:"), 1), Err(Error::VanishingAlexander)));
}

#[test]
fn color_one_is_trivial() {
    for (s, l) in [("2: 1 1 1", 1), ("3: 1 -2 1 -2", 1), ("2: 1 1", 2), ("2: 1 1 1 1", 2)] {
        let colors = vec![1; l];
        let r = resummation_check(&br(s), &colors, 3).unwrap();
        assert!(r.pass, "{s}");
        assert_eq!(colored_jones(&br(s), &colors).unwrap(), Poly::constant(&Roster::q(), int(1)));
    }
}

#[test]
fn figure_eight() {
    let b = br("3: 1 -2 1 -2");
    let fox = fox_alexander(&b).unwrap();
    assert_eq!(alexander_conway(&b).unwrap().delta.unwrap(), fox);
    let r = Roster::t(1);
    let want = &(&Poly::constant(&r, int(3)) - &Poly::var(&r, 0)) - &Poly::var_pow(&r, 0, -1, 1);
    assert_eq!(fox, want);
    assert!(resummation_check(&b, &[2], 3).unwrap().pass);
}

#[test]
fn split_unknots_bracket() {
    let d = bracket(&br("2:"), CONVENTION).unwrap();
    let a = d.roster().clone();
    let loop_value = -(&Poly::monomial(&a, &[2], int(1)) + &Poly::monomial(&a, &[-2], int(1)));
    assert_eq!(d, loop_value);
}

#[test]
fn negative_colors_reach_the_mirror_terms() {
    // q^{lk} Jhr at (2, -3) differs from (2, 3), and only their difference resums
    let s = u1rc_series(&br("2: 1 1"), 4).unwrap();
    let plus = substitute_colors(&s, &[2, 3], 3).unwrap();
    let minus = substitute_colors(&s, &[2, -3], 3).unwrap();
    assert_ne!(plus, minus);
    let j = linkinv::algebra::HSeries::from_q_poly(&qint(6), 3);
    assert_eq!((&plus - &minus).trim(), j.trim());
}
