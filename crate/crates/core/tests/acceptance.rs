//! Acceptance suite: one test per criterion, each printing a pass line with
//! its runtime (visible with `--nocapture`). Criteria 1 through 9 are exact
//! computations over the rationals; criterion 10 (byte determinism of the
//! command line reports) lives in the cli crate's acceptance suite.

use std::time::Instant;

use num::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use polarmap_core::curves::{flexes, hessian_det};
use polarmap_core::geometry::{
    image_degree_formula, is_cone, linear_change, polar_image_dimension, polar_linear_matrix,
    polar_regularity, random_unimodular, regularity_profile, top_polar_raw, verify_image_degree,
};
use polarmap_core::grobner::{eliminate, GrobnerConfig, IdealBasis};
use polarmap_core::linalg;
use polarmap_core::multi_index::{multi_indices_of_degree, MultiIndex};
use polarmap_core::order::MonomialOrder;
use polarmap_core::parse::parse_poly;
use polarmap_core::point::ProjPoint;
use polarmap_core::polar::{euler_identity_check, polar_cycle, reciprocity_check};
use polarmap_core::poly::Poly;
use polarmap_core::rat::{factorial, Int, Rat};

const NODAL_CUBIC: &str = "x2*x1^2 - x0^3 - x0^2*x2";
const DISCRIMINANT_QUARTIC: &str =
    "x1^2*x2^2 - 4*x0*x2^3 - 4*x1^3*x3 - 27*x0^2*x3^2 + 18*x0*x1*x2*x3";

fn cfg() -> GrobnerConfig {
    GrobnerConfig::default()
}

fn pass(criterion: u32, name: &str, start: Instant) {
    println!(
        "ACCEPTANCE {:>2} {:<34} PASS ({:.2?})",
        criterion,
        name,
        start.elapsed()
    );
}

/// Dense random homogeneous form of degree `d` in `nvars` variables with
/// small integer coefficients, never zero.
fn random_dense_form(nvars: usize, d: u32, rng: &mut ChaCha8Rng) -> Poly {
    loop {
        let terms: Vec<(MultiIndex, Rat)> = multi_indices_of_degree(nvars, d)
            .into_iter()
            .map(|m| (m, Rat::from_integer(Int::from(rng.random_range(-9i64..=9)))))
            .collect();
        let f = Poly::from_terms(nvars, terms);
        if !f.is_zero() {
            return f;
        }
    }
}

/// The seeded 200-form corpus: n cycles through 1..=4 and d through 1..=6.
fn euler_corpus() -> Vec<Poly> {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut corpus = Vec::with_capacity(200);
    let mut n = 1usize;
    let mut d = 1u32;
    while corpus.len() < 200 {
        corpus.push(random_dense_form(n + 1, d, &mut rng));
        n = n % 4 + 1;
        if n == 1 {
            d = d % 6 + 1;
        }
    }
    corpus
}

#[test]
fn criterion_01_generalized_euler_suite() {
    let start = Instant::now();
    for f in euler_corpus() {
        let d = f.homogeneous_degree().unwrap();
        for s in 1..=d {
            let check = euler_identity_check(&f, s).unwrap();
            assert!(check.holds, "Euler identity failed: F = {}, s = {}", f, s);
        }
    }
    pass(1, "generalized Euler suite", start);
}

#[test]
fn criterion_02_reciprocity_suite() {
    let start = Instant::now();
    // the factorial normalization is first cross-checked against a
    // Taylor-expansion oracle for every corpus member of degree <= 4:
    // s! [t^s] F(x + t xi) must equal the s-fold polar of F at xi
    let corpus = euler_corpus();
    for f in corpus.iter().filter(|f| f.degree().unwrap() <= 4) {
        taylor_oracle_check(f);
    }
    for f in &corpus {
        let d = f.homogeneous_degree().unwrap();
        for s in 1..d {
            assert!(
                reciprocity_check(f, s).unwrap(),
                "reciprocity failed: F = {}, s = {}",
                f,
                s
            );
        }
    }
    pass(2, "reciprocity suite", start);
}

/// Expands `F(x + t xi)` by substitution (a code path independent of the
/// derivative tables) and compares Taylor coefficients with the directional
/// derivative powers.
fn taylor_oracle_check(f: &Poly) {
    let n1 = f.nvars();
    let d = f.homogeneous_degree().unwrap();
    // ring layout: xi block, x block, then t
    let total = 2 * n1 + 1;
    let images: Vec<Poly> = (0..n1)
        .map(|i| {
            let x = Poly::variable(total, n1 + i);
            let t_xi = &Poly::variable(total, total - 1) * &Poly::variable(total, i);
            &x + &t_xi
        })
        .collect();
    let expanded = f.substitute(&images).unwrap();
    for s in 1..=d {
        let coeff = expanded.coefficient_of_var_power(total - 1, s);
        let oracle = coeff.scalar_mul(&Rat::from_integer(factorial(s)));
        // the s-fold directional derivative, assembled in the doubled ring
        let mut direct = f.embed(total, n1);
        for _ in 0..s {
            let mut next = Poly::zero(total);
            for i in 0..n1 {
                let term = &Poly::variable(total, i) * &direct.partial_var(n1 + i);
                next = &next + &term;
            }
            direct = next;
        }
        assert_eq!(direct, oracle, "Taylor oracle failed: F = {}, s = {}", f, s);
    }
}

#[test]
fn criterion_03_nodal_cubic_example() {
    let start = Instant::now();
    let f = parse_poly(NODAL_CUBIC, Some(3)).unwrap();

    // 20 random points against the printed conic, up to scalar
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut checked = 0;
    while checked < 20 {
        let coords: Vec<i64> = (0..3).map(|_| rng.random_range(-9i64..=9)).collect();
        if coords.iter().all(|&c| c == 0) {
            continue;
        }
        let (a, b, c) = (coords[0], coords[1], coords[2]);
        let xi = ProjPoint::from_ints(&coords).unwrap();
        let printed = parse_poly(
            &format!(
                "-({})*x0^2 - ({})*x0*x2 + ({})*x1^2 + ({})*x1*x2",
                3 * a + c,
                2 * a,
                c,
                2 * b
            ),
            Some(3),
        )
        .unwrap();
        if printed.is_zero() {
            continue;
        }
        let cycle = polar_cycle(&f, 2, &xi).unwrap();
        assert!(
            proportional(&cycle.form, &printed),
            "printed conic mismatch at xi = {:?}",
            coords
        );
        checked += 1;
    }

    // the node sees the union of the two tangents
    let node = ProjPoint::from_ints(&[0, 0, 1]).unwrap();
    let at_node = polar_cycle(&f, 2, &node).unwrap();
    let tangent_pair = parse_poly("(x1 - x0)*(x1 + x0)", Some(3)).unwrap();
    assert!(proportional(&at_node.form, &tangent_pair));

    // profile: irregular at 1, regular at 2
    let profile = regularity_profile(&f, &cfg()).unwrap();
    let flags: Vec<bool> = profile.iter().map(|r| r.regular).collect();
    assert_eq!(flags, [false, true]);
    pass(3, "nodal cubic example", start);
}

fn proportional(a: &Poly, b: &Poly) -> bool {
    match (a.leading_term(), b.leading_term()) {
        (Some((ma, ca)), Some((mb, cb))) => ma == mb && a.scalar_mul(cb) == b.scalar_mul(ca),
        _ => false,
    }
}

/// Thirty hypersurfaces: smooth, nodal, cuspidal, and cones, in P^2 and
/// P^3, degrees 2 through 5.
fn cascade_corpus() -> Vec<Poly> {
    let plane = [
        "x0^2 + x1^2 + x2^2",
        "x0*x1 - x2^2",
        "x0^2 + x1^2",
        "x0^2",
        "x0^3 + x1^3 + x2^3",
        NODAL_CUBIC,
        "x1^2*x2 - x0^3",
        "x0^3 + x1^3",
        "x0^3",
        "x0*x1*x2",
        "x0^4 + x1^4 + x2^4",
        "x0^3*x1 + x1^3*x2 + x2^3*x0",
        "x0^4 + x1^4 - x1^2*x2^2",
        "x0^4 + x1^4",
        "x0^2*x1^2 - x2^4",
        "x0^5 + x1^5 + x2^5",
        "x1^2*x2^3 - x0^5",
        "x0^5 + x1^5",
        "x0^2*x2 + x1^2*x2",
        "x0^4*x1 - x2^5",
    ];
    let space = [
        "x0^2 + x1^2 + x2^2 + x3^2",
        "x0*x1 - x2*x3",
        "x0^2 + x1^2 + x2^2",
        "x0^3 + x1^3 + x2^3 + x3^3",
        "x0^3 + x1^3 + x2^3",
        "x0^2*x3 - x1^2*x2",
        DISCRIMINANT_QUARTIC,
        "x0^4 + x1^4 + x2^4 + x3^4",
        "x0^4 + x1^4 + x2^4",
        "x0^2*x1^2 - x2^2*x3^2",
    ];
    let mut out: Vec<Poly> = plane
        .iter()
        .map(|t| parse_poly(t, Some(3)).unwrap())
        .collect();
    out.extend(space.iter().map(|t| parse_poly(t, Some(4)).unwrap()));
    out
}

#[test]
fn criterion_04_regularity_cascade() {
    let start = Instant::now();
    let corpus = cascade_corpus();
    assert_eq!(corpus.len(), 30);
    for f in &corpus {
        let profile = regularity_profile(f, &cfg()).unwrap();
        let flags: Vec<bool> = profile.iter().map(|r| r.regular).collect();
        for w in flags.windows(2) {
            assert!(
                !w[0] || w[1],
                "cascade violated for F = {}: profile {:?}",
                f,
                flags
            );
        }
    }
    pass(4, "regularity cascade (30 hypersurfaces)", start);
}

#[test]
fn criterion_05_cone_detection_and_linearity() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(17);

    // constructed cones: forms omitting trailing variables, then disguised
    // by unimodular changes; expected vertex dimension is the number of
    // omitted variables
    let constructions: Vec<(Poly, usize)> = vec![
        (parse_poly("x0^2 + x1^2", Some(3)).unwrap(), 1),
        (parse_poly("x0^3 + x1^3", Some(3)).unwrap(), 1),
        (parse_poly("x0^2 + x1^2", Some(4)).unwrap(), 2),
        (parse_poly("x0^3 + x1^3 + x2^3", Some(4)).unwrap(), 1),
        (parse_poly("x0^2 - x1*x2", Some(4)).unwrap(), 1),
        (parse_poly("x0^4 + x0^2*x1^2 + x1^4", Some(4)).unwrap(), 2),
    ];
    for (f, expected_vertex_dim) in &constructions {
        let report = is_cone(f).unwrap();
        assert!(report.is_cone, "undetected cone {}", f);
        assert_eq!(report.vertex_space.len(), *expected_vertex_dim, "F = {}", f);
        // disguise by a unimodular change; the vertex dimension is
        // invariant
        let a = random_unimodular(f.nvars(), &mut rng, 5);
        let g = linear_change(f, &a).unwrap();
        let disguised = is_cone(&g).unwrap();
        assert!(disguised.is_cone, "disguised cone missed: {}", g);
        assert_eq!(disguised.vertex_space.len(), *expected_vertex_dim);
        for v in &disguised.vertex_space {
            assert!(g.evaluate(v.coords()).unwrap().is_zero());
        }
    }

    // smooth members are rejected
    for text in [
        "x0^2 + x1^2 + x2^2",
        "x0^3 + x1^3 + x2^3",
        "x0^2 + x1^2 + x2^2 + x3^2",
        "x0^4 + x1^4 + x2^4",
    ] {
        let f = parse_poly(text, None).unwrap();
        assert!(!is_cone(&f).unwrap().is_cone, "false cone {}", text);
    }

    // linearity: M xi equals the unnormalized Chow vector, 50 points each
    for text in [
        "x0^2 + x1^2",
        "x0^3 + x1^3 + x2^3",
        NODAL_CUBIC,
        "x0^4 + x1^4 + x2^4",
        "x0^2 + x1^2 + x2^2 + x3^2",
    ] {
        let f = parse_poly(text, None).unwrap();
        let m = polar_linear_matrix(&f).unwrap();
        let mut checked = 0;
        while checked < 50 {
            let coords: Vec<i64> = (0..f.nvars()).map(|_| rng.random_range(-9i64..=9)).collect();
            if coords.iter().all(|&c| c == 0) {
                continue;
            }
            let xi = ProjPoint::from_ints(&coords).unwrap();
            let raw = top_polar_raw(&f, &xi).unwrap();
            assert_eq!(raw, linalg::mat_vec(&m, xi.coords()), "F = {}", text);
            checked += 1;
        }
    }
    pass(5, "cone detection and linearity", start);
}

#[test]
fn criterion_06_image_degrees() {
    let start = Instant::now();
    let cases: Vec<(&str, usize, u32, u64)> = vec![
        ("x0*x1 - x2^2", 3, 1, 2),
        ("x0^3 + x1^3 + x2^3", 3, 1, 6),
        ("x0^3 + x1^3 + x2^3", 3, 2, 3),
        (DISCRIMINANT_QUARTIC, 4, 2, 16),
    ];
    for (text, nvars, p, expected) in cases {
        let f = parse_poly(text, Some(nvars)).unwrap();
        let d = f.homogeneous_degree().unwrap();
        let n = (nvars - 1) as u32;
        let check = verify_image_degree(&f, p, 17, &cfg()).unwrap();
        assert_eq!(check.formula, image_degree_formula(d, p, n).unwrap());
        assert_eq!(check.formula, expected, "formula mismatch for {}", text);
        assert_eq!(check.bezout_count, expected, "count mismatch for {}", text);
        assert!(check.agree);
    }
    pass(6, "image degrees (incl. quartic, 16)", start);
}

#[test]
fn criterion_07_dual_conic_implicitization() {
    let start = Instant::now();
    // graph ideal of the Gauss map of x0 x1 - x2^2 in (xi | y) coordinates
    let f = parse_poly("x0*x1 - x2^2", Some(3)).unwrap();
    let mut gens: Vec<Poly> = Vec::new();
    // y_i - dF/dx_i(xi), with xi the leading block and y the trailing one
    for (i, alpha) in multi_indices_of_degree(3, 1).into_iter().enumerate() {
        let partial = f.partial(&alpha).unwrap().embed(6, 0);
        let y = Poly::variable(6, 3 + i);
        gens.push(&y - &partial);
    }
    gens.push(f.embed(6, 0));
    let ideal = IdealBasis::new(gens, MonomialOrder::Block { elim: 3 }).unwrap();
    let out = eliminate(&ideal, 3, &cfg()).unwrap();
    assert_eq!(out.generators().len(), 1);
    let conic = out.generators()[0].restrict_to_trailing(3).unwrap();
    let expected = parse_poly("4*x0*x1 - x2^2", Some(3)).unwrap();
    assert_eq!(conic, expected);
    assert_eq!(
        conic.homogeneous_degree().unwrap() as u64,
        image_degree_formula(2, 1, 2).unwrap()
    );
    pass(7, "dual conic implicitization", start);
}

#[test]
fn criterion_08_flex_counts() {
    let start = Instant::now();
    let cubic = parse_poly("x0^3 + x1^3 + x2^3", Some(3)).unwrap();
    let report = flexes(&cubic, 17, &cfg()).unwrap();
    assert_eq!(report.count_with_multiplicity, 9);
    assert_eq!(report.count_with_multiplicity as u64, 3 * 3 * (3 - 2));
    // rational flexes all lie on the coordinate triangle
    assert!(!report.rational_flexes.is_empty());
    for pt in &report.rational_flexes {
        let product = pt
            .coords()
            .iter()
            .fold(Rat::one(), |acc, c| acc * c);
        assert!(product.is_zero(), "flex {} off x0 x1 x2 = 0", pt);
        assert!(cubic.evaluate(pt.coords()).unwrap().is_zero());
        assert!(hessian_det(&cubic)
            .unwrap()
            .evaluate(pt.coords())
            .unwrap()
            .is_zero());
    }

    let quartic = parse_poly("x0^4 + x1^4 + x2^4", Some(3)).unwrap();
    let report = flexes(&quartic, 17, &cfg()).unwrap();
    assert_eq!(report.count_with_multiplicity, 24);
    assert_eq!(report.count_with_multiplicity as u64, 3 * 4 * (4 - 2));
    pass(8, "flex counts 3d(d-2)", start);
}

#[test]
fn criterion_09_discriminant_surface_dimension() {
    let start = Instant::now();
    let f = parse_poly(DISCRIMINANT_QUARTIC, Some(4)).unwrap();
    // its singularities have order 1, so the second polar map is regular
    assert!(polar_regularity(&f, 2, &cfg()).unwrap().regular);
    let dim = polar_image_dimension(&f, 2, &cfg()).unwrap();
    assert_eq!(dim, 2);
    pass(9, "discriminant image is a surface", start);
}
