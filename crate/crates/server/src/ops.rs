//! Synchronous dispatch from a [`JobSpec`] to a typed result payload.
//! Handlers run this on the blocking pool; the functions here are pure.

use polarmap_api as api;
use polarmap_core::curves;
use polarmap_core::error::{Error, Result};
use polarmap_core::geometry;
use polarmap_core::grobner::{self, GrobnerConfig, IdealBasis};
use polarmap_core::multi_index::multi_indices_of_degree;
use polarmap_core::order::MonomialOrder;
use polarmap_core::parse::parse_poly;
use polarmap_core::plot;
use polarmap_core::point::ProjPoint;
use polarmap_core::polar;
use polarmap_core::poly::Poly;
use polarmap_core::rat::format_rat;
use serde_json::Value;

/// Server-wide limit defaults, overridable per request.
#[derive(Clone, Copy, Debug)]
pub struct BaseLimits {
    pub config: GrobnerConfig,
}

impl BaseLimits {
    /// Reads `POLARMAP_MAX_STEPS` and `POLARMAP_MAX_BASIS` on top of the
    /// built-in defaults.
    pub fn from_env() -> Self {
        let mut config = GrobnerConfig::default();
        if let Some(v) = env_usize("POLARMAP_MAX_STEPS") {
            config.max_steps = v;
        }
        if let Some(v) = env_usize("POLARMAP_MAX_BASIS") {
            config.max_basis = v;
        }
        BaseLimits { config }
    }

    fn merge(&self, limits: &Option<api::Limits>) -> GrobnerConfig {
        let mut config = self.config;
        if let Some(l) = limits {
            if let Some(v) = l.max_steps {
                config.max_steps = v;
            }
            if let Some(v) = l.max_basis {
                config.max_basis = v;
            }
        }
        config
    }
}

fn env_usize(name: &str) -> Option<usize> {
    std::env::var(name).ok()?.parse().ok()
}

pub struct Outcome {
    pub result: Value,
    pub warnings: Vec<String>,
}

fn ok(result: impl serde::Serialize) -> Result<Outcome> {
    Ok(Outcome {
        result: serde_json::to_value(result).expect("serializable payload"),
        warnings: Vec::new(),
    })
}

fn poly_strings(points: &[ProjPoint]) -> Vec<Vec<String>> {
    points
        .iter()
        .map(|p| p.coords().iter().map(format_rat).collect())
        .collect()
}

/// Runs one job to completion.
pub fn execute(job: &api::JobSpec, base: &BaseLimits) -> Result<Outcome> {
    match job {
        api::JobSpec::Polar {
            poly,
            vars,
            k,
            point,
        } => {
            let f = parse_poly(poly, *vars)?;
            let xi = ProjPoint::parse(point)?;
            let cycle = polar::polar_cycle(&f, *k, &xi)?;
            let basis: Vec<String> = multi_indices_of_degree(f.nvars(), *k)
                .iter()
                .map(|m| m.to_string())
                .collect();
            ok(api::PolarResult {
                k: *k,
                point: xi
                    .canonical()
                    .coords()
                    .iter()
                    .map(format_rat)
                    .collect(),
                form: cycle.form.to_string(),
                chow: cycle.chow.coords.iter().map(|v| v.to_string()).collect(),
                chow_basis: basis,
            })
        }
        api::JobSpec::Euler { poly, vars, s } => {
            let f = parse_poly(poly, *vars)?;
            let check = polar::euler_identity_check(&f, *s)?;
            ok(api::EulerResult {
                s: *s,
                holds: check.holds,
                lhs: check.lhs.to_string(),
                rhs: check.rhs.to_string(),
            })
        }
        api::JobSpec::Reciprocity { poly, vars, s } => {
            let f = parse_poly(poly, *vars)?;
            let holds = polar::reciprocity_check(&f, *s)?;
            ok(api::ReciprocityResult { s: *s, holds })
        }
        api::JobSpec::Regularity {
            poly,
            vars,
            p,
            limits,
        } => {
            let f = parse_poly(poly, *vars)?;
            let config = base.merge(limits);
            let d = f.homogeneous_degree()?;
            let reports = match p {
                Some(p) => vec![geometry::polar_regularity(&f, *p, &config)?],
                None => geometry::regularity_profile(&f, &config)?,
            };
            let profile = reports
                .into_iter()
                .map(|r| api::RegularityEntry {
                    p: r.p,
                    regular: r.regular,
                    pure_power_leads: r
                        .certificate
                        .pure_powers
                        .iter()
                        .map(|m| m.to_string())
                        .collect(),
                    missing_vars: r.certificate.missing_vars.clone(),
                })
                .collect();
            ok(api::RegularityResult { degree: d, profile })
        }
        api::JobSpec::Cone { poly, vars } => {
            let f = parse_poly(poly, *vars)?;
            let report = geometry::is_cone(&f)?;
            ok(api::ConeResult {
                is_cone: report.is_cone,
                vertex_space: poly_strings(&report.vertex_space),
            })
        }
        api::JobSpec::ImageDegree {
            d,
            p,
            n,
            poly,
            vars,
            seed,
            limits,
        } => match poly {
            Some(poly) => {
                let f = parse_poly(poly, *vars)?;
                let degree = f.homogeneous_degree()?;
                let ambient = (f.nvars() - 1) as u32;
                let seed = seed.unwrap_or(api::DEFAULT_SEED);
                let config = base.merge(limits);
                let check = geometry::verify_image_degree(&f, *p, seed, &config)?;
                ok(api::ImageDegreeResult {
                    d: degree,
                    p: *p,
                    n: ambient,
                    formula: check.formula,
                    bezout_count: Some(check.bezout_count),
                    agree: Some(check.agree),
                    seed: Some(seed),
                })
            }
            None => {
                let (d, n) = match (d, n) {
                    (Some(d), Some(n)) => (*d, *n),
                    _ => {
                        return Err(Error::Precondition(
                            "image-degree needs either a polynomial or both d and n".into(),
                        ))
                    }
                };
                let formula = geometry::image_degree_formula(d, *p, n)?;
                ok(api::ImageDegreeResult {
                    d,
                    p: *p,
                    n,
                    formula,
                    bezout_count: None,
                    agree: None,
                    seed: None,
                })
            }
        },
        api::JobSpec::ImageDim {
            poly,
            vars,
            p,
            limits,
        } => {
            let f = parse_poly(poly, *vars)?;
            let config = base.merge(limits);
            let regular = geometry::polar_regularity(&f, *p, &config)?.regular;
            let dimension = geometry::polar_image_dimension(&f, *p, &config)?;
            let mut outcome = ok(api::ImageDimResult {
                p: *p,
                dimension,
                regular,
            })?;
            if !regular {
                outcome.warnings.push(format!(
                    "the degree-{} polar map is not regular; the dimension refers to the closure of the rational map's image",
                    p
                ));
            }
            outcome
                .warnings
                .push("square-freeness of the input is assumed, not checked".into());
            Ok(outcome)
        }
        api::JobSpec::Class { poly, vars, p } => {
            let f = parse_poly(poly, *vars)?;
            let d = f.homogeneous_degree()?;
            let report = geometry::polar_class(&f, *p)?;
            ok(api::ClassResult {
                d,
                p: *p,
                class_coeff: report.class_coeff,
                ratio_to_gauss: format_rat(&report.ratio_to_gauss),
            })
        }
        api::JobSpec::Flexes {
            poly,
            vars,
            seed,
            limits,
        } => {
            let f = parse_poly(poly, *vars)?;
            let seed = seed.unwrap_or(api::DEFAULT_SEED);
            let config = base.merge(limits);
            let report = curves::flexes(&f, seed, &config)?;
            ok(api::FlexesResult {
                d: report.d,
                resultant_degree: report.resultant_degree,
                count_with_multiplicity: report.count_with_multiplicity,
                squarefree_degree: report.squarefree_degree,
                formula: 3 * report.d * (report.d - 2),
                rational_flexes: poly_strings(&report.rational_flexes),
                coordinate_change: report.coordinate_change.clone(),
                seed,
            })
        }
        api::JobSpec::Implicitize {
            poly,
            vars,
            p,
            limits,
        } => {
            let f = parse_poly(poly, *vars)?;
            let p = p.unwrap_or(1);
            let config = base.merge(limits);
            implicitize(&f, p, &config)
        }
        api::JobSpec::Plot {
            poly,
            vars,
            points,
            resolution,
            chart,
        } => {
            let f = parse_poly(poly, *vars)?;
            let parsed: Vec<ProjPoint> = points
                .iter()
                .map(|t| ProjPoint::parse(t))
                .collect::<Result<_>>()?;
            let config = plot::PlotConfig {
                resolution: resolution.unwrap_or(plot::PlotConfig::default().resolution),
                chart: chart.unwrap_or(plot::PlotConfig::default().chart),
            };
            let data = plot::plot_data(&f, &parsed, &config)?;
            ok(api::PlotResult {
                objects: data.objects.iter().map(|o| o.id.clone()).collect(),
                segments: data.objects.iter().map(|o| o.segments.len()).sum(),
                resolution: config.resolution,
                chart: config.chart,
                csv: plot::to_csv(&data),
                svg: plot::to_svg(&data),
            })
        }
    }
}

/// Image of the degree-`p` polar map by elimination: the graph ideal
/// `{y_a - (p!/a!) d^a F(xi)} + (F(xi))` in a block order with the source
/// variables leading, intersected with the Chow-coordinate subring.
fn implicitize(f: &Poly, p: u32, config: &GrobnerConfig) -> Result<Outcome> {
    let n1 = f.nvars();
    let components = geometry::lifted_map_components(f, p)?;
    let chow_dim = components.len();
    let total = n1 + chow_dim;
    let mut gens: Vec<Poly> = Vec::with_capacity(chow_dim + 1);
    for (i, phi) in components.iter().enumerate() {
        let y = Poly::variable(total, n1 + i);
        gens.push(&y - &phi.embed(total, 0));
    }
    gens.push(f.embed(total, 0));
    let ideal = IdealBasis::new(gens, MonomialOrder::Block { elim: n1 })?;
    let out = grobner::eliminate(&ideal, chow_dim, config)?;
    let mut generators = Vec::new();
    let mut degrees = Vec::new();
    for g in out.generators() {
        let restricted = g.restrict_to_trailing(chow_dim)?;
        degrees.push(restricted.degree().unwrap_or(0));
        generators.push(restricted.to_string());
    }
    ok(api::ImplicitizeResult {
        p,
        generators,
        degrees,
        chow_dim,
    })
}
