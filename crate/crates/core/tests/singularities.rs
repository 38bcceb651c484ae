mod common;

use num_integer::Integer;
use proptest::prelude::*;

use divclass::linalg::Rational;
use divclass::poly::Poly2;
use divclass::singularities::{
    analyze, binomial, cart_group, invariants_by_blowup, newton_invariants_oracle, LocalPlaneCurve, SingularityError,
};

use common::GERM_SUITE;

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn germ(p: Poly2) -> LocalPlaneCurve {
    LocalPlaneCurve::new(p).expect("valid germ")
}

#[test]
fn a_n_series() {
    for n in 1..=12u64 {
        let f = germ(binomial(2, q(1), (n + 1) as u32).linear_substitution([[q(0), q(1)], [q(1), q(0)]]));
        let inv = invariants_by_blowup(&f).unwrap();
        assert_eq!(inv.rho, if n % 2 == 1 { 2 } else { 1 }, "A{n}");
        assert_eq!(inv.delta, n.div_ceil(2), "A{n}");
    }
}

#[test]
fn suite_agrees_with_newton_oracle() {
    for (name, poly, rho, delta) in GERM_SUITE {
        let f = LocalPlaneCurve::parse(poly).unwrap();
        let report = analyze(&f).unwrap();
        assert_eq!((report.rho, report.delta), (*rho, *delta), "{name}");
        let newton = report.newton.expect("convenient germ");
        assert_eq!(newton.mu + report.rho, 2 * report.delta + 1, "{name}");
        let cart = cart_group(&invariants_by_blowup(&f).unwrap()).unwrap();
        assert_eq!(cart.free_rank as u64, *rho);
        assert_eq!((cart.unit_rank + cart.additive_rank) as u64, *delta, "{name}");
    }
}

#[test]
fn rejected_germs() {
    let err = |s: &str| invariants_by_blowup(&LocalPlaneCurve::parse(s).unwrap()).unwrap_err();
    assert!(matches!(
        err("(y^2 - 2*x^2)^2 + x^5"),
        SingularityError::IrrationalInfinitelyNearPoint { .. }
    ));
    assert!(matches!(
        LocalPlaneCurve::parse("y^2*x"),
        Err(SingularityError::NotReduced)
    ));
    assert!(matches!(
        LocalPlaneCurve::parse("x + 1"),
        Err(SingularityError::NotAtOrigin)
    ));
    assert!(matches!(
        LocalPlaneCurve::parse("0"),
        Err(SingularityError::ZeroPolynomial)
    ));
    assert!(matches!(
        newton_invariants_oracle(&LocalPlaneCurve::parse("(y - x)^2 - x^3").unwrap()),
        Err(SingularityError::DegenerateNewtonBoundary { .. })
    ));
}

#[test]
fn smooth_germ_has_trivial_invariants() {
    let inv = invariants_by_blowup(&LocalPlaneCurve::parse("y - x^2").unwrap()).unwrap();
    assert_eq!((inv.rho, inv.delta), (1, 0));
}

fn invertible() -> impl Strategy<Value = [[i64; 2]; 2]> {
    prop::array::uniform4(-2i64..=2)
        .prop_filter("invertible", |m| m[0] * m[3] - m[1] * m[2] != 0)
        .prop_map(|m| [[m[0], m[1]], [m[2], m[3]]])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn invariants_survive_linear_changes(idx in 0..GERM_SUITE.len(), m in invertible()) {
        let (name, poly, rho, delta) = GERM_SUITE[idx];
        let f = LocalPlaneCurve::parse(poly).unwrap();
        // Dense images of the high-degree germs only slow the search down.
        prop_assume!(f.poly().total_degree() <= Some(6));
        let g = f.poly().linear_substitution([[q(m[0][0]), q(m[0][1])], [q(m[1][0]), q(m[1][1])]]);
        let inv = invariants_by_blowup(&germ(g)).unwrap();
        prop_assert_eq!((inv.rho, inv.delta), (rho, delta), "{} under {:?}", name, m);
    }

    #[test]
    fn binomials_match_closed_form(a in 2u32..9, b in 2u32..9) {
        let f = germ(binomial(a, q(1), b));
        let inv = invariants_by_blowup(&f).unwrap();
        let g = a.gcd(&b) as u64;
        let mu = ((a - 1) * (b - 1)) as u64;
        prop_assert_eq!(inv.rho, g);
        prop_assert_eq!(inv.delta, (mu + g - 1) / 2);
        let newton = newton_invariants_oracle(&f).unwrap();
        prop_assert_eq!(newton.mu, mu);
    }

    #[test]
    fn distinct_lines_give_ordinary_points(slopes in prop::collection::btree_set(-6i64..=6, 1..6), with_axis in any::<bool>()) {
        let mut p = Poly2::constant(q(1));
        for s in &slopes {
            p = p.mul(&Poly2::y().sub(&Poly2::x().scale(&q(*s))));
        }
        if with_axis {
            p = p.mul(&Poly2::x());
        }
        let m = (slopes.len() + usize::from(with_axis)) as u64;
        let inv = invariants_by_blowup(&germ(p)).unwrap();
        prop_assert_eq!(inv.rho, m);
        prop_assert_eq!(inv.delta, m * (m - 1) / 2);
    }
}
