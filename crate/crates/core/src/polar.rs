//! Polar polynomials, degree-`k` polar cycles, Chow coordinates, and the
//! Euler and reciprocity identity checks.
//!
//! For a form `F` of degree `d` and a point `p`, the `s`-th polar polynomial
//! is the `s`-fold directional derivative `(p_0 d/dx_0 + ... + p_n d/dx_n)^s F`,
//! which expands to `sum_{|a|=s} (s!/a!) p^a d^a F(x)`. The degree-`k` polar
//! cycle at a base point is the degree-`k` hypersurface cut by
//! `sum_{|a|=k} (k!/a!) d^a F(xi) x^a`; its coefficient vector in the fixed
//! monomial order is the (unnormalized) Chow vector. Sums over multi-indices
//! carry the multinomial factor `k!/a!`, i.e. they run over ordered
//! derivative tuples; this is the convention under which the generalized
//! Euler identity `d(d-1)...(d-s+1) F = sum_{|a|=s} (s!/a!) d^a F x^a`
//! holds on the nose.

use std::collections::BTreeMap;

use num::Zero;

use crate::error::{Error, Result};
use crate::multi_index::{multi_indices_of_degree, MultiIndex};
use crate::point::ProjPoint;
use crate::poly::Poly;
use crate::rat::{factorial, falling_factorial, Int, Rat};

/// Primitive integer coordinate vector of a degree-`k` form in the fixed
/// monomial order: a point of the Chow space of degree-`k`, codimension-1
/// cycles, a projective space of dimension `C(n+k, k) - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChowVector {
    /// Ambient projective dimension `n`.
    pub ambient_dim: usize,
    /// Degree `k` of the form.
    pub degree: u32,
    /// Coefficients in descending grevlex order; coprime integers with the
    /// first nonzero entry positive.
    pub coords: Vec<Int>,
}

impl ChowVector {
    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }
}

/// Value of the degree-`k` polar map at a base point.
#[derive(Clone, Debug)]
pub struct PolarCycle {
    pub base_point: ProjPoint,
    pub degree: u32,
    /// The degree-`k` form cutting the cycle, in primitive normal form.
    pub form: Poly,
    pub chow: ChowVector,
}

/// Outcome of the generalized Euler identity check.
#[derive(Clone, Debug)]
pub struct EulerCheck {
    pub holds: bool,
    pub lhs: Poly,
    pub rhs: Poly,
}

/// Outcome of [`vanishing_cascade`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CascadeCheck {
    /// Every order-`s` partial vanishes at the point.
    pub all_s_vanish: bool,
    /// Whenever `all_s_vanish`, did `F` itself and every lower-order partial
    /// vanish too? Vacuously true otherwise.
    pub implied: bool,
}

/// Table of iterated partials, built level by level so each derivative is
/// computed once from its predecessor.
struct DerivativeTable {
    levels: Vec<BTreeMap<MultiIndex, Poly>>,
}

impl DerivativeTable {
    fn build(f: &Poly, max_order: u32) -> Self {
        let nvars = f.nvars();
        let mut levels: Vec<BTreeMap<MultiIndex, Poly>> = Vec::new();
        let mut base = BTreeMap::new();
        base.insert(MultiIndex::zero(nvars), f.clone());
        levels.push(base);
        for k in 0..max_order {
            let mut next: BTreeMap<MultiIndex, Poly> = BTreeMap::new();
            for alpha in multi_indices_of_degree(nvars, k + 1) {
                let var = alpha.first_support().expect("positive degree");
                let parent = alpha.checked_decrement(var).expect("support");
                let dp = levels[k as usize][&parent].partial_var(var);
                next.insert(alpha, dp);
            }
            levels.push(next);
        }
        DerivativeTable { levels }
    }

    fn get(&self, alpha: &MultiIndex) -> &Poly {
        &self.levels[alpha.total_degree() as usize][alpha]
    }
}

fn check_point_dims(f: &Poly, p: &ProjPoint) -> Result<()> {
    if p.len() != f.nvars() {
        return Err(Error::DimensionMismatch {
            expected: f.nvars(),
            found: p.len(),
        });
    }
    Ok(())
}

/// The `s`-th polar polynomial of `F` with pole `p`: the `s`-fold
/// directional derivative along `p`, homogeneous of degree `d - s` in `x`.
pub fn polar_polynomial(f: &Poly, p: &ProjPoint, s: u32) -> Result<Poly> {
    check_point_dims(f, p)?;
    let d = f.degree().ok_or(Error::ZeroPolynomial("polar polynomial"))?;
    if s < 1 || s > d {
        return Err(Error::OutOfRange {
            what: "polar order s",
            value: s as i64,
            min: 1,
            max: d as i64,
        });
    }
    let mut g = f.clone();
    for _ in 0..s {
        let mut next = Poly::zero(f.nvars());
        for (var, c) in p.coords().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            next = &next + &g.partial_var(var).scalar_mul(c);
        }
        g = next;
    }
    Ok(g)
}

/// Coefficient vector of the degree-`k` polar form at `xi`, unnormalized,
/// indexed by the degree-`k` monomials in descending grevlex order. Entry
/// `a` is `(k!/a!) d^a F(xi)`.
pub fn polar_cycle_raw(f: &Poly, k: u32, xi: &ProjPoint) -> Result<Vec<Rat>> {
    check_point_dims(f, xi)?;
    let d = f.degree().ok_or(Error::ZeroPolynomial("polar cycle"))?;
    // k = d would cut a degree-0 "cycle", which is not a divisor; callers
    // wanting the constant use polar_polynomial with s = d.
    if k < 1 || k + 1 > d {
        return Err(Error::OutOfRange {
            what: "polar degree k",
            value: k as i64,
            min: 1,
            max: d as i64 - 1,
        });
    }
    let table = DerivativeTable::build(f, k);
    let mut out = Vec::new();
    for alpha in multi_indices_of_degree(f.nvars(), k) {
        let v = table.get(&alpha).evaluate(xi.coords())?;
        out.push(v * Rat::from_integer(alpha.multinomial()));
    }
    Ok(out)
}

/// The degree-`k` polar cycle of `F` at `xi`: the degree-`k` hypersurface
/// cut by the order-`k` Taylor data of `F` at `xi`. Errors with
/// [`Error::PolarMapUndefined`] when every order-`k` partial vanishes at
/// `xi` (which forces `xi` onto `V(F)` with multiplicity above `k`).
pub fn polar_cycle(f: &Poly, k: u32, xi: &ProjPoint) -> Result<PolarCycle> {
    let coeffs = polar_cycle_raw(f, k, xi)?;
    if coeffs.iter().all(|c| c.is_zero()) {
        return Err(Error::PolarMapUndefined {
            degree: k,
            point: xi.to_string(),
        });
    }
    let monomials = multi_indices_of_degree(f.nvars(), k);
    let raw_form = Poly::from_terms(f.nvars(), monomials.into_iter().zip(coeffs));
    let form = raw_form.normalize_primitive()?;
    let chow = chow_coordinates(&form)?;
    Ok(PolarCycle {
        base_point: xi.clone(),
        degree: k,
        form,
        chow,
    })
}

/// Chow coordinates of a nonzero homogeneous form: its primitive integer
/// coefficient vector in the fixed monomial order.
pub fn chow_coordinates(g: &Poly) -> Result<ChowVector> {
    let k = g.homogeneous_degree()?;
    let normalized = g.normalize_primitive()?;
    let coords: Vec<Int> = multi_indices_of_degree(g.nvars(), k)
        .into_iter()
        .map(|m| normalized.coefficient(&m).numer().clone())
        .collect();
    Ok(ChowVector {
        ambient_dim: g.nvars() - 1,
        degree: k,
        coords,
    })
}

/// Checks the generalized Euler identity
/// `d(d-1)...(d-s+1) F = sum_{|a|=s} (s!/a!) d^a F x^a` exactly.
pub fn euler_identity_check(f: &Poly, s: u32) -> Result<EulerCheck> {
    let d = f.homogeneous_degree()?;
    if s < 1 || s > d {
        return Err(Error::OutOfRange {
            what: "euler order s",
            value: s as i64,
            min: 1,
            max: d as i64,
        });
    }
    let lhs = f.scalar_mul(&Rat::from_integer(falling_factorial(d, s)));
    let table = DerivativeTable::build(f, s);
    let mut rhs = Poly::zero(f.nvars());
    for alpha in multi_indices_of_degree(f.nvars(), s) {
        let d_alpha = table.get(&alpha);
        if d_alpha.is_zero() {
            continue;
        }
        let scaled = d_alpha.mul_term(&alpha, &Rat::from_integer(alpha.multinomial()));
        rhs = &rhs + &scaled;
    }
    let holds = lhs == rhs;
    Ok(EulerCheck { holds, lhs, rhs })
}

/// Expands the `s`-fold polar of `F` symbolically in a doubled ring: pole
/// variables occupy the first block, point variables the second.
/// Returns `Delta_pole^s F(point)` with `pole = x_0..x_n`,
/// `point = x_{n+1}..x_{2n+1}` when `pole_first`, and the blocks swapped
/// otherwise.
fn symbolic_polar(f: &Poly, s: u32, pole_first: bool) -> Poly {
    let n1 = f.nvars();
    let doubled = 2 * n1;
    let (pole_base, point_base) = if pole_first { (0, n1) } else { (n1, 0) };
    let embedded = f.embed(doubled, point_base);
    let table = DerivativeTable::build(&embedded, s);
    let mut out = Poly::zero(doubled);
    for alpha_small in multi_indices_of_degree(n1, s) {
        let alpha = alpha_small.embed(doubled, point_base);
        let d_alpha = table.get(&alpha);
        if d_alpha.is_zero() {
            continue;
        }
        let pole_monomial = alpha_small.embed(doubled, pole_base);
        let scaled = d_alpha.mul_term(
            &pole_monomial,
            &Rat::from_integer(alpha_small.multinomial()),
        );
        out = &out + &scaled;
    }
    out
}

/// Verifies the reciprocity identity
/// `(d-s)! Delta_xi^s F(x) = s! Delta_x^{d-s} F(xi)` as a polynomial
/// identity in the doubled ring of `2(n+1)` variables.
pub fn reciprocity_check(f: &Poly, s: u32) -> Result<bool> {
    let d = f.homogeneous_degree()?;
    if s < 1 || s + 1 > d {
        return Err(Error::OutOfRange {
            what: "reciprocity order s",
            value: s as i64,
            min: 1,
            max: d as i64 - 1,
        });
    }
    // xi in the leading block both times, so the two sides share a ring
    let lhs = symbolic_polar(f, s, true);
    let rhs = symbolic_polar(f, d - s, false);
    let lhs = lhs.scalar_mul(&Rat::from_integer(factorial(d - s)));
    let rhs = rhs.scalar_mul(&Rat::from_integer(factorial(s)));
    Ok(lhs == rhs)
}

/// If every order-`s` partial of `F` vanishes at `xi`, confirms that `F`
/// itself and every partial of order below `s` vanish there too.
pub fn vanishing_cascade(f: &Poly, xi: &ProjPoint, s: u32) -> Result<CascadeCheck> {
    check_point_dims(f, xi)?;
    let d = f.degree().ok_or(Error::ZeroPolynomial("cascade"))?;
    if s < 1 || s > d {
        return Err(Error::OutOfRange {
            what: "cascade order s",
            value: s as i64,
            min: 1,
            max: d as i64,
        });
    }
    let table = DerivativeTable::build(f, s);
    let all_s_vanish = multi_indices_of_degree(f.nvars(), s)
        .iter()
        .all(|a| table.get(a).evaluate(xi.coords()).unwrap().is_zero());
    let implied = if all_s_vanish {
        (0..s).all(|k| {
            multi_indices_of_degree(f.nvars(), k)
                .iter()
                .all(|a| table.get(a).evaluate(xi.coords()).unwrap().is_zero())
        })
    } else {
        true
    };
    Ok(CascadeCheck {
        all_s_vanish,
        implied,
    })
}
