//! Exact ideal computations: Buchberger's algorithm with the Gebauer-Moeller
//! pair criteria, normal forms, projective emptiness, degrees of
//! zero-dimensional ideals, and elimination.

use std::cmp::Ordering;

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg;
use crate::multi_index::{multi_indices_of_degree, MultiIndex};
use crate::order::MonomialOrder;
use crate::poly::Poly;
use crate::rat::{Int, Rat};

/// Generator list with a monomial order. Generators are nonzero and in
/// primitive normal form; zero polynomials passed to the constructor are
/// dropped.
#[derive(Clone, Debug)]
pub struct IdealBasis {
    generators: Vec<Poly>,
    order: MonomialOrder,
    nvars: usize,
}

impl IdealBasis {
    pub fn new(generators: Vec<Poly>, order: MonomialOrder) -> Result<Self> {
        let mut cleaned = Vec::new();
        let mut nvars = None;
        for g in generators {
            if g.is_zero() {
                continue;
            }
            match nvars {
                None => nvars = Some(g.nvars()),
                Some(n) if n != g.nvars() => {
                    return Err(Error::DimensionMismatch {
                        expected: n,
                        found: g.nvars(),
                    })
                }
                _ => {}
            }
            cleaned.push(g.normalize_primitive()?);
        }
        let nvars = nvars.ok_or(Error::ZeroPolynomial("ideal basis"))?;
        Ok(IdealBasis {
            generators: cleaned,
            order,
            nvars,
        })
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn all_homogeneous(&self) -> bool {
        self.generators.iter().all(|g| g.is_homogeneous())
    }
}

/// A Gröbner basis; when `reduced`, elements are monic, no term of any
/// element is divisible by the leading term of another, and the basis is
/// sorted by ascending leading term.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    pub basis: Vec<Poly>,
    pub order: MonomialOrder,
    pub reduced: bool,
}

/// Explicit resource limits; defaults leave generous headroom over every
/// computation in the test corpus.
#[derive(Clone, Copy, Debug)]
pub struct GrobnerConfig {
    /// Maximum number of S-polynomial reductions in one run.
    pub max_steps: usize,
    /// Maximum basis size during the run.
    pub max_basis: usize,
}

impl Default for GrobnerConfig {
    fn default() -> Self {
        GrobnerConfig {
            max_steps: 100_000,
            max_basis: 4_096,
        }
    }
}

fn leading_term_under(p: &Poly, order: MonomialOrder) -> (&MultiIndex, &Rat) {
    p.terms()
        .reduce(|best, cand| {
            if order.cmp(cand.0, best.0) == Ordering::Greater {
                cand
            } else {
                best
            }
        })
        .expect("nonzero polynomial")
}

/// Remainder of `f` on division by `divisors` under `order`; fully reduced,
/// so no remainder term is divisible by any divisor's leading term.
fn divide(f: &Poly, divisors: &[Poly], order: MonomialOrder) -> Poly {
    let nvars = f.nvars();
    let lts: Vec<(MultiIndex, Rat)> = divisors
        .iter()
        .map(|g| {
            let (m, c) = leading_term_under(g, order);
            (m.clone(), c.clone())
        })
        .collect();
    let mut work = f.clone();
    let mut remainder = Poly::zero(nvars);
    while !work.is_zero() {
        let (m, c) = {
            let (m, c) = leading_term_under(&work, order);
            (m.clone(), c.clone())
        };
        let mut reduced = false;
        for (g, (lt_m, lt_c)) in divisors.iter().zip(&lts) {
            if let Some(q) = m.checked_div(lt_m) {
                let factor = &c / lt_c;
                work = &work - &g.mul_term(&q, &factor);
                reduced = true;
                break;
            }
        }
        if !reduced {
            remainder.add_term(m.clone(), c.clone());
            work.add_term(m, -c);
        }
    }
    remainder
}

/// Normal form of `f` modulo a Gröbner basis: the unique fully reduced
/// remainder. `f - normal_form(f)` lies in the ideal.
pub fn normal_form(f: &Poly, gb: &GroebnerBasis) -> Poly {
    divide(f, &gb.basis, gb.order)
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: MultiIndex,
}

/// Buchberger's algorithm with the Gebauer-Moeller pair-elimination
/// criteria and degree-first pair selection; output is the reduced Gröbner
/// basis, deterministic for fixed input.
pub fn buchberger(ideal: &IdealBasis, config: &GrobnerConfig) -> Result<GroebnerBasis> {
    if ideal.generators.is_empty() {
        return Err(Error::Precondition("empty generator list".into()));
    }
    let order = ideal.order;
    let mut basis: Vec<Poly> = Vec::new();
    let mut lts: Vec<MultiIndex> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut steps = 0usize;

    let add_element = |p: Poly,
                           basis: &mut Vec<Poly>,
                           lts: &mut Vec<MultiIndex>,
                           pairs: &mut Vec<Pair>|
     -> Result<()> {
        let monic = {
            let (_, c) = leading_term_under(&p, order);
            let inv = Rat::one() / c.clone();
            p.scalar_mul(&inv)
        };
        let t = basis.len();
        let lt_t = leading_term_under(&monic, order).0.clone();

        // drop old pairs strictly superseded by the new element
        pairs.retain(|pr| {
            let lcm_ij = &pr.lcm;
            !(lt_t.divides(lcm_ij)
                && lts[pr.i].lcm(&lt_t) != *lcm_ij
                && lts[pr.j].lcm(&lt_t) != *lcm_ij)
        });

        // candidate pairs with the new element
        let mut cands: Vec<Pair> = (0..t)
            .map(|i| Pair {
                i,
                j: t,
                lcm: lts[i].lcm(&lt_t),
            })
            .collect();
        // keep only minimal lcms among the candidates
        let mut keep = vec![true; cands.len()];
        for a in 0..cands.len() {
            if !keep[a] {
                continue;
            }
            for b in 0..cands.len() {
                if a == b || !keep[b] {
                    continue;
                }
                if cands[b].lcm.divides(&cands[a].lcm) && cands[b].lcm != cands[a].lcm {
                    keep[a] = false;
                    break;
                }
            }
        }
        // among equal lcms keep the first; then drop coprime pairs
        let mut seen: Vec<MultiIndex> = Vec::new();
        for (idx, cand) in cands.iter().enumerate() {
            if !keep[idx] {
                continue;
            }
            if seen.contains(&cand.lcm) {
                keep[idx] = false;
            } else {
                seen.push(cand.lcm.clone());
            }
        }
        for (idx, cand) in cands.iter().enumerate() {
            if keep[idx] && lts[cand.i].is_coprime_to(&lt_t) {
                keep[idx] = false;
            }
        }
        let mut idx = 0;
        cands.retain(|_| {
            let k = keep[idx];
            idx += 1;
            k
        });
        pairs.append(&mut cands);

        basis.push(monic);
        lts.push(lt_t);
        if basis.len() > config.max_basis {
            return Err(Error::Resource(format!(
                "basis grew past {} elements",
                config.max_basis
            )));
        }
        Ok(())
    };

    for g in &ideal.generators {
        add_element(g.clone(), &mut basis, &mut lts, &mut pairs)?;
    }

    while !pairs.is_empty() {
        // normal selection: smallest lcm degree, then the monomial order,
        // then input indices
        let best = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                a.lcm
                    .total_degree()
                    .cmp(&b.lcm.total_degree())
                    .then_with(|| order.cmp(&a.lcm, &b.lcm))
                    .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)))
            })
            .map(|(idx, _)| idx)
            .expect("nonempty");
        let pair = pairs.swap_remove(best);

        steps += 1;
        if steps > config.max_steps {
            return Err(Error::Resource(format!(
                "S-polynomial step limit {} exceeded (basis size {}, {} pairs pending)",
                config.max_steps,
                basis.len(),
                pairs.len()
            )));
        }

        let (fi, fj) = (&basis[pair.i], &basis[pair.j]);
        let qi = pair.lcm.checked_div(&lts[pair.i]).expect("lcm");
        let qj = pair.lcm.checked_div(&lts[pair.j]).expect("lcm");
        // both monic, so the S-polynomial is a plain difference of shifts
        let s_poly = &fi.mul_term(&qi, &Rat::one()) - &fj.mul_term(&qj, &Rat::one());
        let reduced = divide(&s_poly, &basis, order);
        if !reduced.is_zero() {
            add_element(reduced, &mut basis, &mut lts, &mut pairs)?;
        }
    }

    Ok(reduce_basis(basis, order))
}

/// Inter-reduction: minimal basis, tails reduced, monic, sorted by leading
/// term. The reduced Gröbner basis of an ideal is unique for a fixed order.
fn reduce_basis(mut basis: Vec<Poly>, order: MonomialOrder) -> GroebnerBasis {
    // minimality: drop any element whose leading term another divides
    let lts: Vec<MultiIndex> = basis
        .iter()
        .map(|p| leading_term_under(p, order).0.clone())
        .collect();
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        for j in 0..basis.len() {
            if i == j || !keep[j] {
                continue;
            }
            if lts[j].divides(&lts[i]) && (lts[j] != lts[i] || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    let mut minimal: Vec<Poly> = basis
        .drain(..)
        .zip(keep)
        .filter_map(|(p, k)| k.then_some(p))
        .collect();
    // tail reduction against the others until stable
    loop {
        let mut changed = false;
        for i in 0..minimal.len() {
            let others: Vec<Poly> = minimal
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, p)| p.clone())
                .collect();
            let r = divide(&minimal[i], &others, order);
            if r != minimal[i] {
                minimal[i] = r;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    minimal.sort_by(|a, b| {
        order.cmp(
            leading_term_under(a, order).0,
            leading_term_under(b, order).0,
        )
    });
    GroebnerBasis {
        basis: minimal,
        order,
        reduced: true,
    }
}

/// Certificate returned by [`is_projectively_empty`].
#[derive(Clone, Debug)]
pub struct EmptinessCheck {
    pub empty: bool,
    /// For each variable with a pure-power leading term, that term.
    pub pure_powers: Vec<MultiIndex>,
    /// Variables with no pure power among the leading terms; nonempty iff
    /// the variety is nonempty.
    pub missing_vars: Vec<usize>,
}

/// Decides whether `V(I)` is empty in projective space: after a Gröbner
/// basis computation, the variety is empty iff the leading-term ideal
/// contains a pure power of every variable (the affine cone is `{0}`).
pub fn is_projectively_empty(ideal: &IdealBasis, config: &GrobnerConfig) -> Result<EmptinessCheck> {
    if !ideal.all_homogeneous() {
        return Err(Error::NotHomogeneous(
            "projective emptiness needs homogeneous generators".into(),
        ));
    }
    let gb = buchberger(ideal, config)?;
    emptiness_from_basis(&gb, ideal.nvars)
}

fn emptiness_from_basis(gb: &GroebnerBasis, nvars: usize) -> Result<EmptinessCheck> {
    // a unit in the basis is the whole ring
    if gb
        .basis
        .iter()
        .any(|p| p.degree() == Some(0))
    {
        return Ok(EmptinessCheck {
            empty: true,
            pure_powers: vec![MultiIndex::zero(nvars)],
            missing_vars: Vec::new(),
        });
    }
    let lts: Vec<MultiIndex> = gb
        .basis
        .iter()
        .map(|p| leading_term_under(p, gb.order).0.clone())
        .collect();
    let mut pure_powers = Vec::new();
    let mut missing = Vec::new();
    for var in 0..nvars {
        let found = lts.iter().find(|m| {
            m.exponent(var) > 0 && m.total_degree() == m.exponent(var)
        });
        match found {
            Some(m) => pure_powers.push(m.clone()),
            None => missing.push(var),
        }
    }
    Ok(EmptinessCheck {
        empty: missing.is_empty(),
        pure_powers,
        missing_vars: missing,
    })
}

/// Degree (length) of a zero-dimensional projective scheme: the stabilized
/// value of the Hilbert function of the quotient, computed degree by degree
/// as `dim R_t - rank{monomial multiples of the generators in degree t}`.
///
/// When the quotient is Artinian (the projective scheme is empty and the
/// cone is supported at the origin), the returned degree is the total
/// vector-space dimension of the quotient, the multiplicity of the origin.
pub fn zero_dim_degree(ideal: &IdealBasis, config: &GrobnerConfig) -> Result<u64> {
    if !ideal.all_homogeneous() {
        return Err(Error::NotHomogeneous(
            "zero-dimensional degree needs homogeneous generators".into(),
        ));
    }
    // dimension precondition: leading terms must contain pure powers of all
    // variables but at most one, directly or after one generic change
    if !dim_at_most_zero_precheck(ideal, config)? {
        return Err(Error::Precondition(
            "ideal is not zero-dimensional (pure-power leading terms missing for two or more variables, before and after a generic linear change)"
                .into(),
        ));
    }

    let degrees: Vec<u32> = ideal
        .generators
        .iter()
        .map(|g| g.degree().expect("nonzero"))
        .collect();
    let heuristic_bound: u32 = degrees.iter().map(|&d| d.saturating_sub(1)).sum::<u32>() + 1;
    let window_cap = heuristic_bound + 8;

    let mut values: Vec<u64> = Vec::new();
    let mut total: u64 = 0;
    let mut t = 0u32;
    loop {
        let hf = hilbert_value(ideal, t)?;
        values.push(hf);
        total += hf;
        if t >= heuristic_bound && values.len() >= 2 {
            let prev = values[values.len() - 2];
            if prev == hf {
                if hf > 0 {
                    return Ok(hf);
                }
                // Artinian quotient: all mass sits at the cone point
                return Ok(total);
            }
        }
        if t > window_cap {
            return Err(Error::Resource(format!(
                "Hilbert function failed to stabilize by degree {}",
                window_cap
            )));
        }
        t += 1;
    }
}

/// `dim (R/I)_t` by exact linear algebra on monomial bases.
fn hilbert_value(ideal: &IdealBasis, t: u32) -> Result<u64> {
    let nvars = ideal.nvars;
    let basis_t = multi_indices_of_degree(nvars, t);
    let col_of: std::collections::BTreeMap<&MultiIndex, usize> = basis_t
        .iter()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect();
    let mut rows: Vec<Vec<Int>> = Vec::new();
    for g in &ideal.generators {
        let dg = g.degree().expect("nonzero");
        if dg > t {
            continue;
        }
        for m in multi_indices_of_degree(nvars, t - dg) {
            let mut row = vec![Int::zero(); basis_t.len()];
            for (gm, gc) in g.terms() {
                // generators are primitive, so coefficients are integers
                row[col_of[&gm.mul(&m)]] = gc.numer().clone();
            }
            rows.push(row);
        }
    }
    let rank = linalg::rank_int(rows);
    Ok((basis_t.len() - rank) as u64)
}

fn dim_at_most_zero_precheck(ideal: &IdealBasis, config: &GrobnerConfig) -> Result<bool> {
    let check = |i: &IdealBasis| -> Result<bool> {
        let gb = buchberger(i, config)?;
        let e = emptiness_from_basis(&gb, i.nvars)?;
        Ok(e.missing_vars.len() <= 1)
    };
    if check(ideal)? {
        return Ok(true);
    }
    // one generic linear change; a fixed seed keeps the operation
    // deterministic
    let changed = apply_generic_change(ideal, 0xC0FFEE)?;
    check(&changed)
}

fn apply_generic_change(ideal: &IdealBasis, seed: u64) -> Result<IdealBasis> {
    use rand::Rng;
    use rand::SeedableRng;
    let nvars = ideal.nvars;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mat: Vec<Vec<Rat>> = (0..nvars)
            .map(|_| {
                (0..nvars)
                    .map(|_| Rat::from_integer(Int::from(rng.random_range(-5i64..=5))))
                    .collect()
            })
            .collect();
        if linalg::det_rat(&mat).is_zero() {
            continue;
        }
        let images: Vec<Poly> = mat
            .iter()
            .map(|row| {
                let mut p = Poly::zero(nvars);
                for (j, c) in row.iter().enumerate() {
                    p.add_term(MultiIndex::unit(nvars, j), c.clone());
                }
                p
            })
            .collect();
        let gens: Vec<Poly> = ideal
            .generators
            .iter()
            .map(|g| g.substitute(&images))
            .collect::<Result<_>>()?;
        return IdealBasis::new(gens, ideal.order);
    }
}

/// Generators of `I` intersected with the subring in the trailing
/// `keep_last` variables. The ideal must carry a block order whose leading
/// block is exactly the discarded variables.
pub fn eliminate(ideal: &IdealBasis, keep_last: usize, config: &GrobnerConfig) -> Result<IdealBasis> {
    let nvars = ideal.nvars;
    if keep_last > nvars {
        return Err(Error::OutOfRange {
            what: "keep_last",
            value: keep_last as i64,
            min: 0,
            max: nvars as i64,
        });
    }
    let elim = nvars - keep_last;
    match ideal.order {
        MonomialOrder::Block { elim: e } if e == elim => {}
        MonomialOrder::Grevlex if elim == 0 => {}
        _ => {
            return Err(Error::Precondition(format!(
                "elimination of {} leading variables needs the block order with elim = {}",
                elim, elim
            )));
        }
    }
    let gb = buchberger(ideal, config)?;
    let kept: Vec<Poly> = gb
        .basis
        .iter()
        .filter(|p| {
            p.terms()
                .all(|(m, _)| m.exponents()[..elim].iter().all(|&e| e == 0))
        })
        .cloned()
        .collect();
    if kept.is_empty() {
        // the elimination ideal is zero; keep the ring data, empty list
        return Ok(IdealBasis {
            generators: Vec::new(),
            order: MonomialOrder::Grevlex,
            nvars,
        });
    }
    IdealBasis::new(kept, MonomialOrder::Grevlex)
}
