//! Hypersurface-level analyses: polar-map regularity and the cascade, cone
//! detection through linearity of the top polar map, image degree and
//! dimension, and the polar class integers.


use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::grobner::{
    is_projectively_empty, zero_dim_degree, EmptinessCheck, GrobnerConfig, IdealBasis,
};
use crate::linalg;
use crate::multi_index::{multi_indices_of_degree, MultiIndex};
use crate::order::MonomialOrder;
use crate::point::ProjPoint;
use crate::polar::polar_cycle_raw;
use crate::poly::Poly;
use crate::rat::{Int, Rat};

/// Whether the degree-`p` polar map is defined at every point, i.e. the
/// order-`p` partials have no common projective zero. Any common zero lies
/// on the hypersurface automatically, so regularity on the hypersurface and
/// regularity everywhere coincide.
#[derive(Clone, Debug)]
pub struct RegularityReport {
    pub p: u32,
    pub regular: bool,
    pub base_locus_ideal: IdealBasis,
    pub certificate: EmptinessCheck,
}

/// Cone detection via the kernel of the linear top polar map.
#[derive(Clone, Debug)]
pub struct ConeReport {
    pub is_cone: bool,
    /// Basis of the vertex space; every vertex is a point of multiplicity
    /// `d` on the hypersurface.
    pub vertex_space: Vec<ProjPoint>,
}

/// The degree-`p` polar class expressed against the hyperplane class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolarClassReport {
    pub p: u32,
    /// Coefficient of the hyperplane class: `d - p`.
    pub class_coeff: u32,
    /// `(d - p) / (d - 1)`, the ratio against the classical Gauss map.
    pub ratio_to_gauss: Rat,
}

/// Exact intersection count against the closed formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImageDegreeCheck {
    /// Pushforward degree: the length of a generic linear slice, counted
    /// with multiplicity. Not divided by the degree of the map onto its
    /// image.
    pub bezout_count: u64,
    pub formula: u64,
    pub agree: bool,
    /// Slice re-draws consumed before a zero-dimensional slice appeared.
    pub trials: u32,
}

/// The scaled order-`p` partials `(p!/a!) d^a F`, in the fixed descending
/// monomial order: the coordinate functions of the lifted polar map.
pub fn lifted_map_components(f: &Poly, p: u32) -> Result<Vec<Poly>> {
    let d = f.homogeneous_degree()?;
    if p < 1 || p >= d {
        return Err(Error::OutOfRange {
            what: "polar order p",
            value: p as i64,
            min: 1,
            max: d as i64 - 1,
        });
    }
    multi_indices_of_degree(f.nvars(), p)
        .into_iter()
        .map(|alpha| {
            let scale = Rat::from_integer(alpha.multinomial());
            Ok(f.partial(&alpha)?.scalar_mul(&scale))
        })
        .collect()
}

pub fn polar_regularity(f: &Poly, p: u32, config: &GrobnerConfig) -> Result<RegularityReport> {
    let d = f.homogeneous_degree()?;
    if p < 1 || p >= d {
        return Err(Error::OutOfRange {
            what: "polar order p",
            value: p as i64,
            min: 1,
            max: d as i64 - 1,
        });
    }
    let partials: Vec<Poly> = multi_indices_of_degree(f.nvars(), p)
        .into_iter()
        .map(|alpha| f.partial(&alpha))
        .collect::<Result<_>>()?;
    let base_locus_ideal = IdealBasis::new(partials, MonomialOrder::Grevlex)?;
    let certificate = is_projectively_empty(&base_locus_ideal, config)?;
    Ok(RegularityReport {
        p,
        regular: certificate.empty,
        base_locus_ideal,
        certificate,
    })
}

/// Regularity for every `p` from 1 to `d - 1`. Once regular, the map stays
/// regular for all larger `p`; the cascade is asserted by the test suite.
pub fn regularity_profile(f: &Poly, config: &GrobnerConfig) -> Result<Vec<RegularityReport>> {
    let d = f.homogeneous_degree()?;
    if d < 2 {
        return Err(Error::OutOfRange {
            what: "degree d",
            value: d as i64,
            min: 2,
            max: i64::MAX,
        });
    }
    (1..d).map(|p| polar_regularity(f, p, config)).collect()
}

/// Matrix of the top polar map in Chow coordinates: row `a` (over the
/// degree-`(d-1)` multi-indices, descending) holds the coefficient vector of
/// the linear form `((d-1)!/a!) d^a F`, so the unnormalized Chow vector of
/// the degree-`(d-1)` polar cycle at `xi` is exactly `M xi`.
pub fn polar_linear_matrix(f: &Poly) -> Result<Vec<Vec<Rat>>> {
    let d = f.homogeneous_degree()?;
    if d < 2 {
        return Err(Error::OutOfRange {
            what: "degree d",
            value: d as i64,
            min: 2,
            max: i64::MAX,
        });
    }
    let nvars = f.nvars();
    let rows = lifted_map_components(f, d - 1)?;
    Ok(rows
        .into_iter()
        .map(|linear| {
            (0..nvars)
                .map(|var| linear.coefficient(&MultiIndex::unit(nvars, var)))
                .collect()
        })
        .collect())
}

/// A hypersurface is a cone exactly when the top polar map fails injectivity
/// at the linear level, i.e. the matrix of `g^(d-1)` has a kernel; kernel
/// vectors are vertices, points of multiplicity `d`.
pub fn is_cone(f: &Poly) -> Result<ConeReport> {
    let matrix = polar_linear_matrix(f)?;
    let kernel = linalg::kernel_basis(&matrix);
    let vertex_space: Vec<ProjPoint> = kernel
        .into_iter()
        .map(|v| ProjPoint::new(v).map(|p| p.canonical()))
        .collect::<Result<_>>()?;
    Ok(ConeReport {
        is_cone: !vertex_space.is_empty(),
        vertex_space,
    })
}

/// `d (d-p)^(n-1)`, the degree of the image of the degree-`p` polar map of
/// a degree-`d` hypersurface in `P^n` with regular `g^p`.
pub fn image_degree_formula(d: u32, p: u32, n: u32) -> Result<u64> {
    if d < 1 || p < 1 || p >= d {
        return Err(Error::OutOfRange {
            what: "polar order p",
            value: p as i64,
            min: 1,
            max: d as i64 - 1,
        });
    }
    if n < 2 {
        return Err(Error::OutOfRange {
            what: "ambient dimension n",
            value: n as i64,
            min: 2,
            max: i64::MAX,
        });
    }
    (d as u64)
        .checked_mul(((d - p) as u64).pow(n - 1))
        .ok_or(Error::OutOfRange {
            what: "image degree",
            value: i64::MAX,
            min: 0,
            max: i64::MAX,
        })
}

const SLICE_RETRIES: u32 = 5;

/// Verifies the image-degree formula by exact intersection: pulls `n - 1`
/// random hyperplanes of the Chow space back to degree-`(d-p)` forms (random
/// integer combinations of the scaled partials, coefficients in [-10, 10]),
/// intersects with the hypersurface, and counts with multiplicity.
pub fn verify_image_degree(
    f: &Poly,
    p: u32,
    seed: u64,
    config: &GrobnerConfig,
) -> Result<ImageDegreeCheck> {
    let d = f.homogeneous_degree()?;
    let n = f.nvars() - 1;
    let regularity = polar_regularity(f, p, config)?;
    if !regularity.regular {
        return Err(Error::Precondition(format!(
            "the degree-{} polar map is not regular; its base locus is nonempty",
            p
        )));
    }
    let components = lifted_map_components(f, p)?;
    let formula = image_degree_formula(d, p, n as u32)?;
    for trial in 0..SLICE_RETRIES {
        let sub_seed = seed ^ (trial as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
        let mut rng = ChaCha8Rng::seed_from_u64(sub_seed);
        let mut gens: Vec<Poly> = vec![f.clone()];
        let mut degenerate = false;
        for _ in 0..n - 1 {
            let mut form = Poly::zero(f.nvars());
            for component in &components {
                let c: i64 = rng.random_range(-10..=10);
                if c != 0 {
                    form = &form + &component.scalar_mul(&Rat::from_integer(Int::from(c)));
                }
            }
            if form.is_zero() {
                degenerate = true;
                break;
            }
            gens.push(form);
        }
        if degenerate {
            continue;
        }
        let ideal = IdealBasis::new(gens, MonomialOrder::Grevlex)?;
        match zero_dim_degree(&ideal, config) {
            Ok(count) => {
                return Ok(ImageDegreeCheck {
                    bezout_count: count,
                    formula,
                    agree: count == formula,
                    trials: trial,
                });
            }
            Err(Error::Precondition(_)) => continue,
            Err(other) => return Err(other),
        }
    }
    Err(Error::Degenerate(format!(
        "no zero-dimensional slice found in {} seeded draws",
        SLICE_RETRIES
    )))
}

/// Dimension of the closure of the image of the degree-`p` polar map.
///
/// Computed as the generic rank on the hypersurface of the differential of
/// the lifted map restricted to the tangent spaces of the affine cone, minus
/// one. Stacking the gradient of `F` under the Jacobian of the lifted map
/// turns that restricted rank into an ordinary matrix rank: for the stacked
/// matrix `S`, `rank(dPhi|_T) = rank(S) - 1`, so the image dimension is
/// `rank(S) - 2`. "Generic rank on the hypersurface" is the largest `r` with
/// an `r x r` minor not divisible by `F`, which is exact when `F` is
/// square-free; square-freeness is asserted by the caller, not checked.
///
/// The rational map only needs a nonempty domain, so no regularity
/// precondition is imposed; irregular maps are legitimate inputs (their
/// image dimension is read off the closure of the image of the open part).
pub fn polar_image_dimension(f: &Poly, p: u32, _config: &GrobnerConfig) -> Result<i64> {
    let components = lifted_map_components(f, p)?;
    let nvars = f.nvars();
    let mut stacked: Vec<Vec<Poly>> = components
        .iter()
        .map(|phi| (0..nvars).map(|v| phi.partial_var(v)).collect())
        .collect();
    stacked.push((0..nvars).map(|v| f.partial_var(v)).collect());
    let rank = generic_rank_mod(&stacked, f)?;
    Ok(rank as i64 - 2)
}

/// Largest `r` such that some `r x r` minor of `mat` is not divisible by
/// `f`; the rank of the matrix over the function field of `V(f)` when `f`
/// is square-free.
fn generic_rank_mod(mat: &[Vec<Poly>], f: &Poly) -> Result<usize> {
    let rows = mat.len();
    let cols = mat.first().map(|r| r.len()).unwrap_or(0);
    let max_r = rows.min(cols);
    for r in (1..=max_r).rev() {
        let mut row_choice: Vec<usize> = (0..r).collect();
        loop {
            let mut col_choice: Vec<usize> = (0..r).collect();
            loop {
                let minor: Vec<Vec<Poly>> = row_choice
                    .iter()
                    .map(|&i| col_choice.iter().map(|&j| mat[i][j].clone()).collect())
                    .collect();
                let det = linalg::det_poly(&minor)?;
                if !det.is_zero() && !det.is_divisible_by(f) {
                    return Ok(r);
                }
                if !next_combination(&mut col_choice, cols) {
                    break;
                }
            }
            if !next_combination(&mut row_choice, rows) {
                break;
            }
        }
    }
    Ok(0)
}

fn next_combination(choice: &mut [usize], n: usize) -> bool {
    let r = choice.len();
    let mut i = r;
    while i > 0 {
        i -= 1;
        if choice[i] < n - (r - i) {
            choice[i] += 1;
            for j in i + 1..r {
                choice[j] = choice[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// The polar class integers: `[g^p] = (d - p) H` against the hyperplane
/// class, and the ratio `(d - p)/(d - 1)` to the Gauss class. Pure
/// arithmetic from the degree; no cohomology is computed.
pub fn polar_class(f: &Poly, p: u32) -> Result<PolarClassReport> {
    let d = f.homogeneous_degree()?;
    if p < 1 || p >= d {
        return Err(Error::OutOfRange {
            what: "polar order p",
            value: p as i64,
            min: 1,
            max: d as i64 - 1,
        });
    }
    Ok(PolarClassReport {
        p,
        class_coeff: d - p,
        ratio_to_gauss: Rat::new(Int::from(d - p), Int::from(d - 1)),
    })
}

/// Unnormalized Chow vector of the degree-`(d-1)` polar cycle at `xi`; the
/// linearity identity states this equals `polar_linear_matrix(F) * xi`.
pub fn top_polar_raw(f: &Poly, xi: &ProjPoint) -> Result<Vec<Rat>> {
    let d = f.homogeneous_degree()?;
    polar_cycle_raw(f, d - 1, xi)
}

/// Seeded random unimodular integer matrix built from elementary shears;
/// used for disguising cones in tests and for generic coordinate changes.
pub fn random_unimodular(nvars: usize, rng: &mut ChaCha8Rng, bound: i64) -> Vec<Vec<i64>> {
    loop {
        let mut m: Vec<Vec<i64>> = (0..nvars)
            .map(|i| (0..nvars).map(|j| i64::from(i == j)).collect())
            .collect();
        for _ in 0..2 * nvars {
            let i = rng.random_range(0..nvars);
            let j = rng.random_range(0..nvars);
            if i == j {
                continue;
            }
            let c: i64 = rng.random_range(-2..=2);
            for k in 0..nvars {
                m[i][k] += c * m[j][k];
            }
        }
        let within = m.iter().flatten().all(|&v| v.abs() <= bound);
        let nontrivial = m
            .iter()
            .enumerate()
            .any(|(i, row)| row.iter().enumerate().any(|(j, &v)| v != i64::from(i == j)));
        if within && nontrivial {
            return m;
        }
    }
}

/// Applies an integer coordinate change: returns `F(A x)`.
pub fn linear_change(f: &Poly, matrix: &[Vec<i64>]) -> Result<Poly> {
    let nvars = f.nvars();
    let images: Vec<Poly> = matrix
        .iter()
        .map(|row| {
            let mut p = Poly::zero(nvars);
            for (j, &c) in row.iter().enumerate() {
                if c != 0 {
                    p.add_term(MultiIndex::unit(nvars, j), Rat::from_integer(Int::from(c)));
                }
            }
            p
        })
        .collect();
    f.substitute(&images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::rat::rat_int;
    use num::{One, Zero};

    fn p(text: &str, nvars: usize) -> Poly {
        parse_poly(text, Some(nvars)).unwrap()
    }

    fn cfg() -> GrobnerConfig {
        GrobnerConfig::default()
    }

    #[test]
    fn nodal_cubic_regularity() {
        let f = p("x2*x1^2 - x0^3 - x0^2*x2", 3);
        let r1 = polar_regularity(&f, 1, &cfg()).unwrap();
        assert!(!r1.regular);
        // the node [0:0:1] sits in the base locus: x2 has no pure power
        assert!(r1.certificate.missing_vars.contains(&2));
        let r2 = polar_regularity(&f, 2, &cfg()).unwrap();
        assert!(r2.regular);
        let profile = regularity_profile(&f, &cfg()).unwrap();
        let flags: Vec<bool> = profile.iter().map(|r| r.regular).collect();
        assert_eq!(flags, [false, true]);
    }

    #[test]
    fn fermat_cubic_is_regular_from_the_start() {
        let f = p("x0^3 + x1^3 + x2^3", 3);
        let r = polar_regularity(&f, 1, &cfg()).unwrap();
        assert!(r.regular);
    }

    #[test]
    fn triple_line_profile_all_irregular() {
        // x0^3 in P^2 is a cone; the order-2 partials are {6 x0}, whose
        // base locus is the line x0 = 0
        let f = p("x0^3", 3);
        let profile = regularity_profile(&f, &cfg()).unwrap();
        let flags: Vec<bool> = profile.iter().map(|r| r.regular).collect();
        assert_eq!(flags, [false, false]);
        // direct-evaluation oracle: every order-2 partial vanishes at [0:1:0]
        let point = ProjPoint::from_ints(&[0, 1, 0]).unwrap();
        for alpha in multi_indices_of_degree(3, 2) {
            let v = f.partial(&alpha).unwrap().evaluate(point.coords()).unwrap();
            assert!(v.is_zero());
        }
    }

    #[test]
    fn smooth_quadric_profile() {
        let f = p("x0^2 + x1^2 + x2^2 + x3^2", 4);
        let profile = regularity_profile(&f, &cfg()).unwrap();
        assert_eq!(profile.len(), 1);
        assert!(profile[0].regular);
    }

    #[test]
    fn polar_linear_matrix_of_a_rank_two_conic() {
        let f = p("x0^2 + x1^2", 3);
        let m = polar_linear_matrix(&f).unwrap();
        let want: Vec<Vec<Rat>> = vec![
            vec![rat_int(2), rat_int(0), rat_int(0)],
            vec![rat_int(0), rat_int(2), rat_int(0)],
            vec![rat_int(0), rat_int(0), rat_int(0)],
        ];
        assert_eq!(m, want);
    }

    #[test]
    fn linearity_identity_on_random_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for text in [
            "x0^2 + x1^2",
            "x0^3 + x1^3 + x2^3",
            "x2*x1^2 - x0^3 - x0^2*x2",
        ] {
            let f = p(text, 3);
            let m = polar_linear_matrix(&f).unwrap();
            for _ in 0..10 {
                let coords: Vec<i64> = (0..3).map(|_| rng.random_range(-9i64..=9)).collect();
                if coords.iter().all(|&c| c == 0) {
                    continue;
                }
                let xi = ProjPoint::new(
                    coords.iter().map(|&c| Rat::from_integer(Int::from(c))).collect(),
                )
                .unwrap();
                let raw = top_polar_raw(&f, &xi).unwrap();
                let mx = linalg::mat_vec(&m, xi.coords());
                assert_eq!(raw, mx, "F = {}, xi = {}", text, xi);
            }
        }
    }

    #[test]
    fn cone_detection() {
        // missing variable: vertex at [0:0:1]
        let f = p("x0^2 + x1^2", 3);
        let report = is_cone(&f).unwrap();
        assert!(report.is_cone);
        assert_eq!(report.vertex_space.len(), 1);
        assert!(report.vertex_space[0]
            .projectively_eq(&ProjPoint::from_ints(&[0, 0, 1]).unwrap()));

        // two missing variables in P^3
        let f = p("x0^3 + x1^3", 4);
        let report = is_cone(&f).unwrap();
        assert!(report.is_cone);
        assert_eq!(report.vertex_space.len(), 2);
        for v in &report.vertex_space {
            // every vertex annihilates all top partials, hence lies on V(F)
            assert!(f.evaluate(v.coords()).unwrap().is_zero());
            for alpha in multi_indices_of_degree(4, 2) {
                assert!(f
                    .partial(&alpha)
                    .unwrap()
                    .evaluate(v.coords())
                    .unwrap()
                    .is_zero());
            }
        }

        // a smooth plane cubic is not a cone
        let f = p("x0^3 + x1^3 + x2^3", 3);
        assert!(!is_cone(&f).unwrap().is_cone);
    }

    #[test]
    fn disguised_cone_is_still_detected() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let a = random_unimodular(3, &mut rng, 5);
        let f = linear_change(&p("x0^2 + x1^2", 3), &a).unwrap();
        let report = is_cone(&f).unwrap();
        assert!(report.is_cone);
        assert_eq!(report.vertex_space.len(), 1);
        let v = &report.vertex_space[0];
        assert!(f.evaluate(v.coords()).unwrap().is_zero());
    }

    #[test]
    fn image_degree_formula_examples() {
        assert_eq!(image_degree_formula(2, 1, 2).unwrap(), 2);
        assert_eq!(image_degree_formula(4, 2, 3).unwrap(), 16);
        assert_eq!(image_degree_formula(3, 2, 2).unwrap(), 3);
        assert!(image_degree_formula(3, 3, 2).is_err());
        assert!(image_degree_formula(3, 1, 1).is_err());
    }

    #[test]
    fn verify_image_degree_dual_conic() {
        let f = p("x0*x1 - x2^2", 3);
        let check = verify_image_degree(&f, 1, 17, &cfg()).unwrap();
        assert_eq!(check.bezout_count, 2);
        assert_eq!(check.formula, 2);
        assert!(check.agree);
    }

    #[test]
    fn verify_image_degree_fermat_cubic() {
        let f = p("x0^3 + x1^3 + x2^3", 3);
        let check = verify_image_degree(&f, 1, 17, &cfg()).unwrap();
        assert_eq!(check.bezout_count, 6);
        assert!(check.agree);
        let check = verify_image_degree(&f, 2, 17, &cfg()).unwrap();
        assert_eq!(check.bezout_count, 3);
        assert!(check.agree);
    }

    #[test]
    fn verify_image_degree_needs_regularity() {
        let f = p("x2*x1^2 - x0^3 - x0^2*x2", 3);
        assert!(matches!(
            verify_image_degree(&f, 1, 17, &cfg()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn image_dimension_smooth_conic() {
        let f = p("x0*x1 - x2^2", 3);
        assert_eq!(polar_image_dimension(&f, 1, &cfg()).unwrap(), 1);
    }

    #[test]
    fn image_dimension_of_a_cone_is_defective() {
        let f = p("x0^2 + x1^2", 3);
        assert_eq!(polar_image_dimension(&f, 1, &cfg()).unwrap(), 0);
    }

    #[test]
    fn polar_class_arithmetic() {
        let f = p("x0^4 + x1^4 + x2^4", 3);
        let report = polar_class(&f, 2).unwrap();
        assert_eq!(report.class_coeff, 2);
        assert_eq!(report.ratio_to_gauss, Rat::new(Int::from(2), Int::from(3)));
        let report = polar_class(&f, 1).unwrap();
        assert_eq!(report.class_coeff, 3);
        assert_eq!(report.ratio_to_gauss, Rat::one());
        let conic = p("x0*x1 - x2^2", 3);
        assert_eq!(polar_class(&conic, 1).unwrap().class_coeff, 1);
    }
}
