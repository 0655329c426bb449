use super::*;
use crate::heun::HeunParams;
use crate::recurrence::{characteristic_roots, detect_truncation, forward_solve};
use crate::specfun::gamma;

fn sample_params() -> Vec<HeunParams> {
    vec![
        HeunParams::new(2.5, 0.37, 0.6, 1.4, 0.8, 1.2).unwrap(),
        HeunParams::new(-1.7, -0.21, 1.3, 0.4, 1.6, 0.7).unwrap(),
        HeunParams::new(4.0, 1.11, -0.8, 2.2, 0.55, 0.95).unwrap(),
        HeunParams::new(0.45, 0.06, 0.9, 0.35, 1.15, 1.45).unwrap(),
    ]
}

fn close(x: f64, y: f64, tol: f64) -> bool {
    (x - y).abs() <= tol * x.abs().max(y.abs()).max(1.0)
}

/// Row values of an expansion's recurrence at its own accessory parameter.
fn rows(e: &SeriesExpansion, n: usize) -> (f64, f64, f64) {
    (e.coeffs.alpha(n), e.coeffs.beta(n, e.params.q), e.coeffs.gamma_eff(n))
}

/// Independently written-out first-group tables (series around x = 0),
/// i = 1..8, kept verbatim as a cross-check on the generation route.
fn power_origin_table(p: &HeunParams, i: usize, n: f64) -> (f64, f64, f64) {
    let (a, q, al, be, ga, de) = (p.a, p.q, p.alpha, p.beta, p.gamma, p.delta);
    let ep = p.epsilon();
    match i {
        1 => (
            a * (n + ga) * (n + 1.0),
            -(a + 1.0) * n * n - (a * (ga + de - 1.0) + al + be - de) * n - q,
            (n + al - 1.0) * (n + be - 1.0),
        ),
        2 => (
            a * (n + 2.0 - ga) * (n + 1.0),
            -(a + 1.0) * n * n - (a * (1.0 - ga + de) + 1.0 + ep - ga) * n
                - q
                - (de * a + ep) * (1.0 - ga),
            (n + al - ga) * (n + be - ga),
        ),
        3 => (
            a * (n + ga) * (n + 1.0),
            -(a + 1.0) * n * n - (a * (1.0 + ga - de) + al + be - de) * n - q - a * ga * (1.0 - de),
            (n + al - de) * (n + be - de),
        ),
        4 => (
            a * (n + 2.0 - ga) * (n + 1.0),
            -(a + 1.0) * n * n - (a * (3.0 - ga - de) + 1.0 + ep - ga) * n
                - q
                - a * (2.0 - ga - de)
                - ep * (1.0 - ga),
            (n + 1.0 + al - ga - de) * (n + 1.0 + be - ga - de),
        ),
        5 => (
            a * (n + ga) * (n + 1.0),
            -(a + 1.0) * n * n - (a * (ga + de - 1.0) + 2.0 * ga + de - al - be) * n
                - q
                - ga * (1.0 - ep),
            (n + ga + de - al - 1.0) * (n + ga + de - be - 1.0),
        ),
        6 => (
            a * (n + 2.0 - ga) * (n + 1.0),
            -(a + 1.0) * n * n - (a * (1.0 - ga + de) - al - be + de + 2.0) * n - q
                - de * a * (1.0 - ga)
                + al
                + be
                - de
                - 1.0,
            (n - al + de) * (n - be + de),
        ),
        7 => (
            a * (n + ga) * (n + 1.0),
            -(a + 1.0) * n * n - (a * (1.0 + ga - de) - al - be + 2.0 * ga + de) * n
                - q
                - ga * a * (1.0 - de)
                - ga * (1.0 - ep),
            (n - al + ga) * (n - be + ga),
        ),
        8 => (
            a * (n + 2.0 - ga) * (n + 1.0),
            -(a + 1.0) * n * n - (a * (3.0 - ga - de) + 2.0 - al - be + de) * n - q
                - a * (2.0 - ga - de)
                + al
                + be
                - de
                - 1.0,
            (n + 1.0 - al) * (n + 1.0 - be),
        ),
        _ => unreachable!(),
    }
}

/// Independently written-out second-group tables (series around x = 1),
/// i = 1..8. The alpha entry of i = 6 follows the transformation route,
/// which yields (n + delta); a (n + gamma) variant circulates but is
/// inconsistent with the route that generates the family (companion test).
fn power_one_table(p: &HeunParams, i: usize, n: f64) -> (f64, f64, f64) {
    let (a, q, al, be, ga, de) = (p.a, p.q, p.alpha, p.beta, p.gamma, p.delta);
    let ep = p.epsilon();
    let g = power_origin_table(p, i, n).2;
    match i {
        1 => (
            (1.0 - a) * (n + de) * (n + 1.0),
            (a - 2.0) * n * n + ((a - 1.0) * (ga + de - 1.0) - al - be + ga) * n + q - al * be,
            g,
        ),
        2 => (
            (1.0 - a) * (n + de) * (n + 1.0),
            (a - 2.0) * n * n + ((a - 1.0) * (1.0 - ga + de) - al - be + ga) * n + q
                - a * (ga - 1.0) * de
                + (ga - 1.0) * de
                - al * be,
            g,
        ),
        3 => (
            (1.0 - a) * (n + 2.0 - de) * (n + 1.0),
            (a - 2.0) * n * n
                + ((a - 1.0) * (1.0 + ga - de) - al - be + ga + 2.0 * de - 2.0) * n
                + q
                - a * ga * (de - 1.0)
                - al * be
                + (de - 1.0) * (al + be - de + 1.0),
            g,
        ),
        4 => (
            (1.0 - a) * (n + 2.0 - de) * (n + 1.0),
            (a - 2.0) * n * n
                + ((a - 1.0) * (3.0 - ga - de) - al - be + ga + 2.0 * de - 2.0) * n
                + q
                - a * (ga + de - 2.0)
                - al * be
                + ga
                + de
                - 2.0
                + (de - 1.0) * ep,
            g,
        ),
        5 => (
            (1.0 - a) * (n + de) * (n + 1.0),
            (a - 2.0) * n * n + ((a - 1.0) * (ga + de - 1.0) + al + be - ga - 2.0 * de) * n + q
                - al * be
                + (al + be - ga - de) * de,
            g,
        ),
        6 => (
            (1.0 - a) * (n + de) * (n + 1.0),
            (a - 2.0) * n * n + ((a - 1.0) * (1.0 - ga + de) + al + be - ga - 2.0 * de) * n + q
                - a * (ga - 1.0) * de
                - al * be
                + (al + be - de - 1.0) * de,
            g,
        ),
        7 => (
            (1.0 - a) * (n + 2.0 - de) * (n + 1.0),
            (a - 2.0) * n * n + ((a - 1.0) * (1.0 + ga - de) + al + be - ga - 2.0) * n + q
                - a * ga * (de - 1.0)
                - al * be
                + ga * (de - 1.0)
                + al
                + be
                - ga
                - 1.0,
            g,
        ),
        8 => (
            (1.0 - a) * (n + 2.0 - de) * (n + 1.0),
            (a - 2.0) * n * n + ((a - 1.0) * (3.0 - ga - de) + al + be - ga - 2.0) * n
                + q
                + a * (2.0 - ga - de)
                - al * be
                + al
                + be
                + de
                - 3.0,
            g,
        ),
        _ => unreachable!(),
    }
}

/// Independently written-out third-group tables, i in {1, 2, 5, 6}; the remaining
/// members are the alpha-beta interchanges of these.
fn hyp_m17_table(p: &HeunParams, i: usize, n: f64) -> (f64, f64, f64) {
    let (a, q, al, be, ga, de) = (p.a, p.q, p.alpha, p.beta, p.gamma, p.delta);
    match i {
        1 => (
            (1.0 - a) * (n + 1.0),
            (a - 2.0) * n * n + ((a - 1.0) * (2.0 * al + 1.0 - ga - de) - al + be - ga) * n
                + q
                + (a - 1.0) * al * (al + 1.0 - ga - de)
                - al * ga,
            (n + al - 1.0) * (n + al - de) * (n + al - be),
        ),
        2 => (
            (1.0 - a) * (n + 1.0),
            (a - 2.0) * n * n
                + ((a - 1.0) * (2.0 * be + 1.0 - ga - de) - 2.0 + al - be + ga) * n
                + q
                + a * be * (be + 1.0 - ga - de)
                - be * (be - de + 1.0)
                + (ga - 1.0) * (1.0 - al + be),
            (n + be - ga) * (n + be + 1.0 - ga - de) * (n - al + be),
        ),
        5 => (
            (1.0 - a) * (n + 1.0),
            (a - 2.0) * n * n + ((a - 1.0) * (1.0 - 2.0 * al + ga + de) + al - be - ga) * n
                + q
                + (a - 1.0) * (al - 1.0) * (al - ga - de)
                - be * ga,
            (n - al + ga + de - 1.0) * (n - al + ga) * (n - al + be),
        ),
        6 => (
            (1.0 - a) * (n + 1.0),
            (a - 2.0) * n * n
                + ((a - 1.0) * (1.0 - 2.0 * be + ga + de) - al + be + ga - 2.0) * n
                + q
                - al
                + a * (be - 1.0) * (be - ga - de)
                - (be - 1.0) * (be - de - 1.0),
            (n - be + de) * (n - be + 1.0) * (n + al - be),
        ),
        3 => hyp_m17_table(&p.swap_ab(), 1, n),
        4 => hyp_m17_table(&p.swap_ab(), 2, n),
        7 => hyp_m17_table(&p.swap_ab(), 5, n),
        8 => hyp_m17_table(&p.swap_ab(), 6, n),
        _ => unreachable!(),
    }
}

/// Independently written-out fourth-group tables, i in {1, 3, 5, 7}; even members
/// are the alpha-beta interchanges.
fn hyp_one_table(p: &HeunParams, i: usize, n: f64) -> (f64, f64, f64) {
    let (a, q, al, be, ga, de) = (p.a, p.q, p.alpha, p.beta, p.gamma, p.delta);
    let ep = p.epsilon();
    match i {
        1 => (
            (1.0 - a) * (n + 1.0),
            (a - 2.0) * n * n + ((a - 1.0) * (2.0 * al + 1.0 - ga - de) - al - be + ga) * n
                + q
                + a * al * (al + 1.0 - ga - de)
                - al * ep,
            (n + al - 1.0) * (n + al - ga) * (n + al + be - ga - de),
        ),
        3 => (
            (1.0 - a) * (n + 1.0),
            (a - 2.0) * n * n
                + ((a - 1.0) * (1.0 + 2.0 * be - ga - de) - al - be + ga + 2.0 * de - 2.0) * n
                + q
                + a * be * (be - ga - de + 1.0)
                - (be - de + 1.0) * (al + be + 1.0 - ga - de),
            (n + be - de) * (n + 1.0 + be - ga - de) * (n + al + be - ga - de),
        ),
        5 => (
            (1.0 - a) * (n + 1.0),
            (a - 2.0) * n * n
                + ((a - 1.0) * (1.0 - 2.0 * al + ga + de) + al + be - ga - 2.0 * de) * n
                + q
                + a * (al - ga - de) * (al - 1.0)
                - (al - de) * (al + be - ga - de - 1.0)
                - ga,
            (n - 1.0 - al + ga + de) * (n - al + de) * (n - al - be + ga + de),
        ),
        7 => (
            (1.0 - a) * (n + 1.0),
            (a - 2.0) * n * n
                + ((a - 1.0) * (1.0 - 2.0 * be + ga + de) + al + be - ga - 2.0) * n
                + q
                + a * (be - ga - de) * (be - 1.0)
                - (be - 1.0) * (al + be - ga - de - 1.0)
                - ga,
            (n - be + ga) * (n + 1.0 - be) * (n - al - be + ga + de),
        ),
        2 => hyp_one_table(&p.swap_ab(), 1, n),
        4 => hyp_one_table(&p.swap_ab(), 3, n),
        6 => hyp_one_table(&p.swap_ab(), 5, n),
        8 => hyp_one_table(&p.swap_ab(), 7, n),
        _ => unreachable!(),
    }
}

#[test]
fn power_origin_matches_tables() {
    for p in sample_params() {
        for i in 1..=8 {
            let e = power_series_origin(&p, i).unwrap();
            for n in 0..=6 {
                let (ta, tb, tg) = power_origin_table(&p, i, n as f64);
                let (ga_, gb, gg) = rows(&e, n);
                assert!(close(ga_, ta, 1e-12), "alpha i={i} n={n}");
                assert!(close(gb, tb, 1e-12), "beta i={i} n={n}: {gb} vs {tb}");
                assert!(close(gg, tg, 1e-12), "gamma i={i} n={n}");
            }
        }
    }
}

#[test]
fn power_one_matches_tables() {
    for p in sample_params() {
        for i in 1..=8 {
            let e = power_series_one(&p, i).unwrap();
            for n in 0..=6 {
                let (ta, tb, tg) = power_one_table(&p, i, n as f64);
                let (ga_, gb, gg) = rows(&e, n);
                assert!(close(ga_, ta, 1e-12), "alpha i={i} n={n}: {ga_} vs {ta}");
                assert!(close(gb, tb, 1e-12), "beta i={i} n={n}: {gb} vs {tb}");
                assert!(close(gg, tg, 1e-12), "gamma i={i} n={n}");
            }
        }
    }
}

#[test]
fn power_one_sixth_alpha_variant_is_rejected() {
    // With gamma = delta the two variants coincide; otherwise only the
    // transformation-route value survives the generation-consistency gate.
    let p = HeunParams::new(2.5, 0.37, 0.6, 1.4, 0.8, 1.2).unwrap();
    let e = power_series_one(&p, 6).unwrap();
    let rejected = |n: f64| (1.0 - p.a) * (n + p.gamma) * (n + 1.0);
    let route = |n: f64| (1.0 - p.a) * (n + p.delta) * (n + 1.0);
    for n in 0..4 {
        let nf = n as f64;
        assert!(close(e.coeffs.alpha(n), route(nf), 1e-12));
        assert!(!close(e.coeffs.alpha(n), rejected(nf), 1e-12));
    }
}

#[test]
fn hyp_m17_matches_tables() {
    for p in sample_params() {
        for i in 1..=8 {
            let e = hyp_series_m17(&p, i).unwrap();
            for n in 0..=6 {
                let (ta, tb, tg) = hyp_m17_table(&p, i, n as f64);
                let (ga_, gb, gg) = rows(&e, n);
                assert!(close(ga_, ta, 1e-12), "alpha i={i} n={n}");
                assert!(close(gb, tb, 1e-12), "beta i={i} n={n}: {gb} vs {tb}");
                assert!(close(gg, tg, 1e-12), "gamma i={i} n={n}: {gg} vs {tg}");
            }
        }
    }
}

#[test]
fn hyp_one_matches_tables() {
    for p in sample_params() {
        for i in 1..=8 {
            let e = hyp_series_one(&p, i).unwrap();
            for n in 0..=6 {
                let (ta, tb, tg) = hyp_one_table(&p, i, n as f64);
                let (ga_, gb, gg) = rows(&e, n);
                assert!(close(ga_, ta, 1e-12), "alpha i={i} n={n}");
                assert!(close(gb, tb, 1e-12), "beta i={i} n={n}: {gb} vs {tb}");
                assert!(close(gg, tg, 1e-12), "gamma i={i} n={n}: {gg} vs {tg}");
            }
        }
    }
}

#[test]
fn hyp_m17_prefactors_and_bases() {
    let p = sample_params()[0];
    let e1 = hyp_series_m17(&p, 1).unwrap();
    assert!(close(e1.prefactor.one_minus_x_over_a, -p.alpha, 1e-14));
    assert_eq!(e1.prefactor.x, 0.0);
    if let TermBasis::HypShifted { a0, b, c0 } = e1.basis {
        assert!(close(a0, p.alpha, 1e-14));
        assert!(close(b, p.gamma + p.delta - p.alpha - 1.0, 1e-14));
        assert!(close(c0, p.gamma, 1e-14));
    } else {
        panic!("wrong basis");
    }
    let e2 = hyp_series_m17(&p, 2).unwrap();
    assert!(close(e2.prefactor.x, 1.0 - p.gamma, 1e-14));
    assert!(close(e2.prefactor.one_minus_x_over_a, p.gamma - p.beta - 1.0, 1e-14));
    if let TermBasis::HypShifted { a0, b, c0 } = e2.basis {
        assert!(close(a0, p.beta + 1.0 - p.gamma, 1e-14));
        assert!(close(b, p.delta - p.beta, 1e-14));
        assert!(close(c0, 2.0 - p.gamma, 1e-14));
    } else {
        panic!("wrong basis");
    }
    // Fourth member: x^(1-ga) (1-x)^(1-de) (1-x/a)^(ga+de-al-2).
    let e4 = hyp_series_m17(&p, 4).unwrap();
    assert!(close(e4.prefactor.x, 1.0 - p.gamma, 1e-14));
    assert!(close(e4.prefactor.one_minus_x, 1.0 - p.delta, 1e-14));
    assert!(close(e4.prefactor.one_minus_x_over_a, p.gamma + p.delta - p.alpha - 2.0, 1e-14));
    if let TermBasis::HypShifted { a0, b, c0 } = e4.basis {
        assert!(close(a0, 2.0 + p.alpha - p.gamma - p.delta, 1e-14));
        assert!(close(b, 1.0 - p.alpha, 1e-14));
        assert!(close(c0, 2.0 - p.gamma, 1e-14));
    } else {
        panic!("wrong basis");
    }
    // Fourth-group leader keeps the 1-x argument and c0 = delta.
    let b1 = hyp_series_one(&p, 1).unwrap();
    assert_eq!(b1.arg, crate::heun::ArgMap::OneMinusX);
    if let TermBasis::HypShifted { a0, b, c0 } = b1.basis {
        assert!(close(a0, p.alpha, 1e-14));
        assert!(close(b, p.gamma + p.delta - p.alpha - 1.0, 1e-14));
        assert!(close(c0, p.delta, 1e-14));
    } else {
        panic!("wrong basis");
    }
}

#[test]
fn two_term_degenerations() {
    // a = -1, eps = de, q = 0 annihilates beta for i in {1, 2, 7, 8}.
    let (al, be, ga) = (0.6, 1.1, 0.9);
    let de = (al + be + 1.0 - ga) / 2.0;
    let p = HeunParams::new(-1.0, 0.0, al, be, ga, de).unwrap();
    for i in [1usize, 2, 7, 8] {
        let e = power_series_origin(&p, i).unwrap();
        for n in 0..6 {
            assert!(e.coeffs.beta(n, p.q).abs() < 1e-12, "i={i} n={n}");
        }
    }
    // a = 1 annihilates every second-group and third-group alpha.
    let p = HeunParams::new_unchecked(1.0, 0.3, al, be, ga, 1.2);
    for i in 1..=8 {
        let e = power_series_one(&p, i).unwrap();
        for n in 0..6 {
            assert!(e.coeffs.alpha(n).abs() < 1e-12, "one i={i} n={n}");
        }
        let e = hyp_series_m17(&p, i).unwrap();
        for n in 0..6 {
            assert!(e.coeffs.alpha(n).abs() < 1e-12, "m17 i={i} n={n}");
        }
    }
    // a = 2, be = al + 1 - de, q = al ga annihilates fourth-group beta for
    // i in {1, 3, 6, 8}.
    let (al, ga, de) = (0.6, 0.9, 1.2);
    let be = al + 1.0 - de;
    let p = HeunParams::new(2.0, al * ga, al, be, ga, de).unwrap();
    for i in [1usize, 3, 6, 8] {
        let e = hyp_series_one(&p, i).unwrap();
        for n in 0..6 {
            assert!(e.coeffs.beta(n, p.q).abs() < 1e-12, "bold i={i} n={n}");
        }
    }
}

#[test]
fn trivial_truncated_evaluation() {
    let p = sample_params()[0];
    let e = power_series_origin(&p, 1).unwrap();
    // One-term vector with unit prefactor sums to b0 everywhere.
    let v = evaluate_with_coeffs(&e, &[1.0], 0.63).unwrap();
    assert_eq!(v, 1.0);
}

#[test]
fn initial_hyp_series_reduces_to_power_series() {
    // gamma + delta = alpha + 1 collapses the basis to constants.
    let (a, q, al, ga) = (3.0, 0.4, 1.1, 0.8);
    let de = al + 1.0 - ga;
    let p = HeunParams::new(a, q, al, 1.7, ga, de).unwrap();
    let seed = hyp_series_initial(&p).unwrap();
    let power = power_series_origin(&p, 1).unwrap();
    let bs = forward_solve(&seed.coeffs, 40, p.q).unwrap();
    let bp = forward_solve(&power.coeffs, 40, p.q).unwrap();
    let g = gamma(p.gamma).unwrap();
    for &x in &[0.12, 0.2, 0.31] {
        let vs = evaluate_with_coeffs(&seed, &bs.b, x).unwrap() * g;
        let vp = evaluate_with_coeffs(&power, &bp.b, x).unwrap();
        assert!(close(vs, vp, 1e-9), "x = {x}: {vs} vs {vp}");
    }
}

#[test]
fn convergence_region_examples() {
    let p = HeunParams::new(4.0, 0.1, -0.8, 2.2, 0.55, 0.95).unwrap();
    let e = power_series_origin(&p, 1).unwrap();
    let r = convergence_region(&e).unwrap();
    assert_eq!(r.radius, 4.0);
    assert_eq!(r.boundary_condition, "Re epsilon < 1");
    let p = HeunParams::new(0.5, 0.1, 0.3, 0.4, 0.8, 1.3).unwrap();
    let e = power_series_origin(&p, 3).unwrap();
    let r = convergence_region(&e).unwrap();
    assert_eq!(r.radius, 1.0);
    assert_eq!(r.boundary_condition, "Re delta > 1");
    let e = hyp_series_one(&p, 4).unwrap();
    let r = convergence_region(&e).unwrap();
    assert_eq!(r.boundary_condition, "Re gamma < 1");
}

#[test]
fn che_expansions() {
    use crate::heun::{che_residual, CheParams};
    let p = CheParams { gamma: 0.7, delta: 1.2, alpha: -2.0, rho: 1.3, sigma: 0.0 };
    // Leading row of the power kind: gamma b1 = -sigma b0 pattern.
    let power = che_expansion(&p, CheKind::Power).unwrap();
    assert!(close(power.coeffs.alpha(0), p.gamma, 1e-14));
    assert!(close(power.coeffs.beta(0, 0.9), 0.9, 1e-14));
    // The hyp kind's gamma is rho times a quadratic in n.
    let hyp = che_expansion(&p, CheKind::Hyp).unwrap();
    for n in 1..5 {
        let nf = n as f64;
        let expect = -p.rho * (nf + p.alpha - 1.0) * (nf + p.alpha - p.delta);
        assert!(close(hyp.coeffs.gamma_eff(n), expect, 1e-13));
    }
    // alpha = -2 truncates both kinds at N = 2; solve the power kind and
    // compare the two expansions pointwise after normalization.
    assert_eq!(detect_truncation(&power.coeffs, 10), Some(2));
    assert_eq!(detect_truncation(&hyp.coeffs, 10), Some(2));
    let roots = characteristic_roots(&power.coeffs, 2).unwrap();
    let sigma = roots.eigenvalues[1];
    let bp = forward_solve(&power.coeffs, 2, sigma).unwrap();
    let bh = forward_solve(&hyp.coeffs, 40, sigma).unwrap();
    let x0 = 0.3;
    let vp0 = power.evaluate_jet(&bp.b, x0).unwrap().v;
    let vh0 = hyp.evaluate_jet(&bh.b, x0).unwrap().v;
    let scale = vp0 / vh0;
    for &x in &[0.22, 0.3, 0.41] {
        let vp = power.evaluate_jet(&bp.b, x).unwrap().v;
        let vh = hyp.evaluate_jet(&bh.b, x).unwrap().v * scale;
        assert!(close(vp, vh, 1e-9), "x = {x}: {vp} vs {vh}");
    }
    // Residual oracle for the hyp kind at the same characteristic value.
    let pc = CheParams { sigma, ..p };
    for &x in &[0.2, 0.4, 0.6] {
        let jet = hyp.evaluate_jet(&bh.b, x).unwrap();
        let r = che_residual(|_| (jet.v, jet.d1, jet.d2), &pc, x).unwrap();
        assert!(r < 1e-8, "x = {x}: residual {r}");
    }
}

#[test]
fn baber_limit_of_the_power_family() {
    // Scaled rows of the first-group series approach the confluent rows.
    let (ga, de, al, rho, sigma) = (0.7, 1.2, 0.9, 1.3, 0.45);
    let big = 1e9;
    let p = HeunParams::new(big, -sigma * big, al, -rho * big, ga, de).unwrap();
    let e = power_series_origin(&p, 1).unwrap();
    let che = che_expansion(
        &crate::heun::CheParams { gamma: ga, delta: de, alpha: al, rho, sigma },
        CheKind::Power,
    )
    .unwrap();
    for n in 0..=20 {
        let scaled_alpha = e.coeffs.alpha(n) / big;
        let scaled_beta = e.coeffs.beta(n, p.q) / big;
        let scaled_gamma = e.coeffs.gamma_eff(n) / big;
        assert!(close(scaled_alpha, che.coeffs.alpha(n), 1e-6), "alpha n={n}");
        assert!(close(scaled_beta, che.coeffs.beta(n, sigma), 1e-6), "beta n={n}");
        assert!(close(scaled_gamma, che.coeffs.gamma_eff(n), 1e-6), "gamma n={n}");
    }
}

#[test]
fn erdelyi_form_selection() {
    // 2 alpha - gamma - delta = 0 selects the folded-beta form.
    let (ga, de) = (0.8, 1.0);
    let al = (ga + de) / 2.0;
    let p = HeunParams::new(3.0, 0.2, al, 1.3, ga, de).unwrap();
    let e = erdelyi_expansion(&p, ErdelyiBranch::LambdaAlpha).unwrap();
    assert!(matches!(
        e.coeffs.alpha_minus1,
        Some((_, crate::recurrence::PerturbedForm::R3))
    ));
    // 2 alpha - gamma - delta = -1 perturbs the n = 1 row instead.
    let al = (ga + de - 1.0) / 2.0;
    let p = HeunParams::new(3.0, 0.2, al, 1.3, ga, de).unwrap();
    let e = erdelyi_expansion(&p, ErdelyiBranch::LambdaAlpha).unwrap();
    assert!(matches!(
        e.coeffs.alpha_minus1,
        Some((_, crate::recurrence::PerturbedForm::R2))
    ));
    // Svartholm with gamma + delta = 1.
    let p = HeunParams::new(3.0, 0.2, 0.7, 1.3, 0.45, 0.55).unwrap();
    let e = erdelyi_expansion(&p, ErdelyiBranch::Svartholm).unwrap();
    assert!(matches!(
        e.coeffs.alpha_minus1,
        Some((_, crate::recurrence::PerturbedForm::R2))
    ));
}

#[test]
fn svartholm_trigonometric_specialization() {
    // gamma = delta = 1/2 gives quarter products of the shifted factors.
    let (al, be) = (0.35, 0.9);
    let a = 2.0;
    let p = HeunParams::new(a, 0.11, al, be, 0.5, 0.5).unwrap();
    let e = erdelyi_expansion(&p, ErdelyiBranch::Svartholm).unwrap();
    for n in 0..6 {
        let nf = n as f64;
        let ta = -0.25 * (nf + 1.0 - al) * (nf + 1.0 - be);
        assert!(close(e.coeffs.alpha(n), ta, 1e-12), "alpha n={n}");
        let tb = (0.5 - a) * nf * nf + 0.5 * al * be - p.q;
        assert!(close(e.coeffs.beta(n, p.q), tb, 1e-12), "beta n={n}");
        if n >= 1 {
            let tg = -0.25 * (nf + al - 1.0) * (nf + be - 1.0);
            assert!(close(e.coeffs.gamma(n), tg, 1e-12), "gamma n={n}");
        }
    }
    let (am1, form) = e.coeffs.alpha_minus1.unwrap();
    assert!(matches!(form, crate::recurrence::PerturbedForm::R2));
    assert!(close(am1, -al * be / 4.0, 1e-13));
    // The n = 1 row of the perturbed form folds alpha_{-1} into gamma_1.
    assert!(close(e.coeffs.gamma_eff(1), e.coeffs.gamma(1) + am1, 1e-13));
    // mu - lambda = 1 - gamma - delta = 0 is allowed; positive integers are not.
    if let TermBasis::HypFixedC { lambda, mu, c } = e.basis {
        assert!(close(lambda, 0.0, 1e-14));
        assert_eq!(mu, 0.0);
        assert!(close(c, 0.5, 1e-14));
    } else {
        panic!("wrong basis");
    }
}

#[test]
fn adaptive_evaluation_rejects_points_outside_the_region() {
    use crate::expansions::{evaluate, EvalMode};
    let p = HeunParams::new(0.45, 0.06, 0.9, 0.35, 1.15, 1.45).unwrap();
    let e = power_series_origin(&p, 1).unwrap();
    // radius 1 for |a| < 1; within the region the adaptive sum works.
    assert!(evaluate(&e, 0.3, EvalMode::Adaptive { tol: 1e-14 }).is_ok());
    assert!(matches!(
        evaluate(&e, 1.2, EvalMode::Adaptive { tol: 1e-14 }),
        Err(ExpansionError::OutOfRegion { .. })
    ));
}
