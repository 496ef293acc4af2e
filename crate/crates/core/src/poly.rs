//! Sparse multivariate polynomials over exact rationals.
//!
//! Terms are keyed by [`MultiIndex`] in a `BTreeMap`, so canonical (grevlex)
//! iteration is free and no zero coefficient is ever stored. All operations
//! are exact; there is no floating point anywhere in this module.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::multi_index::MultiIndex;
use crate::rat::{format_rat, int_lcm_all, rat_pow, Int, Rat};

#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<MultiIndex, Rat>,
}

/// Result of [`Poly::degree_check`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreeInfo {
    pub degree: u32,
    pub homogeneous: bool,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(MultiIndex::zero(nvars), c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, Rat::one())
    }

    /// The variable `x_var`.
    pub fn variable(nvars: usize, var: usize) -> Self {
        assert!(var < nvars, "variable index out of range");
        let mut p = Poly::zero(nvars);
        p.terms.insert(MultiIndex::unit(nvars, var), Rat::one());
        p
    }

    pub fn monomial(nvars: usize, index: MultiIndex, coeff: Rat) -> Self {
        assert_eq!(index.nvars(), nvars, "multi-index length mismatch");
        let mut p = Poly::zero(nvars);
        if !coeff.is_zero() {
            p.terms.insert(index, coeff);
        }
        p
    }

    /// Builds from arbitrary terms, summing duplicates and dropping zeros.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (MultiIndex, Rat)>) -> Self {
        let mut p = Poly::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "multi-index length mismatch");
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending grevlex order.
    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Rat)> {
        self.terms.iter()
    }

    /// Terms in descending grevlex order (leading term first).
    pub fn terms_desc(&self) -> impl Iterator<Item = (&MultiIndex, &Rat)> {
        self.terms.iter().rev()
    }

    /// Leading term under the fixed grevlex order.
    pub fn leading_term(&self) -> Option<(&MultiIndex, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn coefficient(&self, m: &MultiIndex) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    /// Adds one term in place, removing the entry if it cancels.
    pub fn add_term(&mut self, m: MultiIndex, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_dims(&self, other: &Poly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        self.check_dims(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly> {
        self.check_dims(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_dims(other)?;
        let mut out = Poly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scalar_mul(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v *= c;
        }
        out
    }

    /// Multiplies by a single term `c * x^m`.
    pub fn mul_term(&self, m: &MultiIndex, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        let mut out = Poly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            out.terms.insert(ma.mul(m), ca * c);
        }
        out
    }

    /// Non-negative power by repeated squaring.
    pub fn pow(&self, exp: u32) -> Poly {
        let mut acc = Poly::one(self.nvars);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// First partial derivative with respect to `x_var`.
    pub fn partial_var(&self, var: usize) -> Poly {
        assert!(var < self.nvars, "variable index out of range");
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            if e > 0 {
                let dm = m.checked_decrement(var).expect("positive exponent");
                out.add_term(dm, c * Rat::from_integer(Int::from(e)));
            }
        }
        out
    }

    /// Iterated partial derivative `d^|a| / dx^a`.
    pub fn partial(&self, alpha: &MultiIndex) -> Result<Poly> {
        if alpha.nvars() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: alpha.nvars(),
            });
        }
        let mut out = self.clone();
        for var in 0..alpha.nvars() {
            for _ in 0..alpha.exponent(var) {
                out = out.partial_var(var);
                if out.is_zero() {
                    return Ok(out);
                }
            }
        }
        Ok(out)
    }

    /// Exact evaluation at affine coordinates. The caller owns scaling
    /// semantics: for homogeneous `F` of degree `d`, `F(t p) = t^d F(p)`.
    pub fn evaluate(&self, coords: &[Rat]) -> Result<Rat> {
        if coords.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: coords.len(),
            });
        }
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (var, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    v *= rat_pow(&coords[var], e);
                }
            }
            acc += v;
        }
        Ok(acc)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.total_degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.total_degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Degree and homogeneity in one report; rejects the zero polynomial.
    pub fn degree_check(&self) -> Result<DegreeInfo> {
        let degree = self.degree().ok_or(Error::ZeroPolynomial("degree"))?;
        Ok(DegreeInfo {
            degree,
            homogeneous: self.is_homogeneous(),
        })
    }

    /// Requires a nonzero homogeneous polynomial and returns its degree.
    pub fn homogeneous_degree(&self) -> Result<u32> {
        let info = self.degree_check()?;
        if !info.homogeneous {
            return Err(Error::NotHomogeneous(self.to_string()));
        }
        Ok(info.degree)
    }

    /// Highest exponent of a single variable.
    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms
            .keys()
            .map(|m| m.exponent(var))
            .max()
            .unwrap_or(0)
    }

    /// Coefficient of `x_var^j` as a polynomial in the remaining variables
    /// (same ring, with `x_var` zeroed out of every term).
    pub fn coefficient_of_var_power(&self, var: usize, j: u32) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            if m.exponent(var) == j {
                let mut e = m.exponents().to_vec();
                e[var] = 0;
                out.add_term(MultiIndex::new(e), c.clone());
            }
        }
        out
    }

    /// Canonical representative of the projective class of a form:
    /// coprime integer coefficients, leading (grevlex-greatest) coefficient
    /// positive. Idempotent; rejects the zero polynomial.
    pub fn normalize_primitive(&self) -> Result<Poly> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial("primitive normalization"));
        }
        let denom_lcm = int_lcm_all(self.terms.values().map(|c| c.denom()));
        let scaled: Vec<(MultiIndex, Int)> = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c.numer() * (&denom_lcm / c.denom())))
            .collect();
        let content = crate::rat::int_gcd_all(scaled.iter().map(|(_, v)| v));
        let leading_negative = scaled
            .last()
            .map(|(_, v)| v.is_negative())
            .expect("nonzero");
        let sign = if leading_negative {
            -Int::one()
        } else {
            Int::one()
        };
        let divisor = &content * &sign;
        let mut out = Poly::zero(self.nvars);
        for (m, v) in scaled {
            out.terms.insert(m, Rat::from_integer(v / &divisor));
        }
        Ok(out)
    }

    /// Substitutes `images[i]` for `x_i`. All images must live in the same
    /// ring, which becomes the ring of the result.
    pub fn substitute(&self, images: &[Poly]) -> Result<Poly> {
        if images.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: images.len(),
            });
        }
        let target_nvars = images.first().map(|p| p.nvars).unwrap_or(0);
        for img in images {
            if img.nvars != target_nvars {
                return Err(Error::DimensionMismatch {
                    expected: target_nvars,
                    found: img.nvars,
                });
            }
        }
        // Per-variable power cache; exponents repeat heavily across terms.
        let mut powers: Vec<Vec<Poly>> = images
            .iter()
            .map(|img| vec![Poly::one(target_nvars), img.clone()])
            .collect();
        let mut out = Poly::zero(target_nvars);
        for (m, c) in &self.terms {
            let mut acc = Poly::constant(target_nvars, c.clone());
            for (var, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut powers[var];
                while cache.len() <= e as usize {
                    let next = &cache[cache.len() - 1] * &images[var];
                    cache.push(next);
                }
                acc = &acc * &cache[e as usize];
            }
            out = &out + &acc;
        }
        Ok(out)
    }

    /// Re-embeds into a ring with `new_nvars` variables, mapping `x_i` to
    /// `x_{offset+i}`.
    pub fn embed(&self, new_nvars: usize, offset: usize) -> Poly {
        assert!(offset + self.nvars <= new_nvars);
        let mut out = Poly::zero(new_nvars);
        for (m, c) in &self.terms {
            out.terms.insert(m.embed(new_nvars, offset), c.clone());
        }
        out
    }

    /// Restricts to the trailing `keep` variables, re-indexed from zero.
    /// Errors if any leading variable actually occurs.
    pub fn restrict_to_trailing(&self, keep: usize) -> Result<Poly> {
        let drop = self.nvars - keep;
        let mut out = Poly::zero(keep);
        for (m, c) in &self.terms {
            if m.exponents()[..drop].iter().any(|&e| e > 0) {
                return Err(Error::Precondition(format!(
                    "term {} involves a discarded variable",
                    m
                )));
            }
            out.terms
                .insert(MultiIndex::new(m.exponents()[drop..].to_vec()), c.clone());
        }
        Ok(out)
    }

    /// Exact division; errors if `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &Poly) -> Result<Poly> {
        self.check_dims(divisor)?;
        let (dm, dc) = divisor
            .leading_term()
            .ok_or(Error::ZeroPolynomial("divisor"))?;
        let (dm, dc) = (dm.clone(), dc.clone());
        let mut rem = self.clone();
        let mut quot = Poly::zero(self.nvars);
        while let Some((m, c)) = rem.leading_term() {
            let q = m.checked_div(&dm).ok_or_else(|| {
                Error::Precondition(format!("{} does not divide {}", divisor, self))
            })?;
            let qc = c / &dc;
            quot.add_term(q.clone(), qc.clone());
            rem = &rem - &divisor.mul_term(&q, &qc);
        }
        Ok(quot)
    }

    /// Whether `divisor` divides `self` exactly (division by the single
    /// polynomial under grevlex; remainder-free iff divisible).
    pub fn is_divisible_by(&self, divisor: &Poly) -> bool {
        if self.is_zero() {
            return true;
        }
        let (dm, dc) = match divisor.leading_term() {
            Some(t) => (t.0.clone(), t.1.clone()),
            None => return false,
        };
        let mut rem = self.clone();
        while let Some((m, c)) = rem.leading_term() {
            match m.checked_div(&dm) {
                Some(q) => {
                    let qc = c / &dc;
                    rem = &rem - &divisor.mul_term(&q, &qc);
                }
                None => return false,
            }
        }
        true
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.try_add(rhs).expect("mismatched rings")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.try_sub(rhs).expect("mismatched rings")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.try_mul(rhs).expect("mismatched rings")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = -v.clone();
        }
        out
    }
}

impl fmt::Display for Poly {
    /// Canonical text form, parseable by the polynomial grammar: terms in
    /// descending grevlex order, explicit `*`, `^` for powers.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms_desc().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_constant() {
                write!(f, "{}", format_rat(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", m)?;
            } else {
                write!(f, "{}*{}", format_rat(&abs), m)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    fn x(nvars: usize, i: usize) -> Poly {
        Poly::variable(nvars, i)
    }

    #[test]
    fn difference_of_squares() {
        let a = &x(2, 0) + &x(2, 1);
        let b = &x(2, 0) - &x(2, 1);
        let prod = &a * &b;
        let expected = &x(2, 0).pow(2) - &x(2, 1).pow(2);
        assert_eq!(prod, expected);
    }

    #[test]
    fn additive_identity() {
        let f = &(&x(3, 0) * &x(3, 1)) + &Poly::constant(3, rat(1, 2));
        assert_eq!(f.try_add(&Poly::zero(3)).unwrap(), f);
    }

    #[test]
    fn cube_of_binomial_against_frozen_expansion() {
        let f = (&x(2, 0) + &x(2, 1)).pow(3);
        // x0^3 + 3 x0^2 x1 + 3 x0 x1^2 + x1^3, frozen by hand
        let mut expected = Poly::zero(2);
        expected.add_term(MultiIndex::new(vec![3, 0]), rat_int(1));
        expected.add_term(MultiIndex::new(vec![2, 1]), rat_int(3));
        expected.add_term(MultiIndex::new(vec![1, 2]), rat_int(3));
        expected.add_term(MultiIndex::new(vec![0, 3]), rat_int(1));
        assert_eq!(f, expected);
        // repeated-multiplication oracle
        let g = &(&(&x(2, 0) + &x(2, 1)) * &(&x(2, 0) + &x(2, 1))) * &(&x(2, 0) + &x(2, 1));
        assert_eq!(f, g);
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let err = x(2, 0).try_add(&x(3, 0)).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { .. }));
    }

    #[test]
    fn power_rule() {
        // F = x0^3 x1, d^2/dx0^2 = 6 x0 x1
        let f = &x(2, 0).pow(3) * &x(2, 1);
        let d = f.partial(&MultiIndex::new(vec![2, 0])).unwrap();
        let expected = (&x(2, 0) * &x(2, 1)).scalar_mul(&rat_int(6));
        assert_eq!(d, expected);
        // derivative past the degree vanishes
        let z = f.partial(&MultiIndex::new(vec![0, 2])).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn mixed_partials_commute() {
        let f = &x(2, 0).pow(2) * &x(2, 1).pow(2);
        let d01 = f.partial_var(0).partial_var(1);
        let d10 = f.partial_var(1).partial_var(0);
        let expected = (&x(2, 0) * &x(2, 1)).scalar_mul(&rat_int(4));
        assert_eq!(d01, d10);
        assert_eq!(d01, expected);
    }

    #[test]
    fn evaluate_circle() {
        let f = &x(2, 0).pow(2) + &x(2, 1).pow(2);
        let v = f.evaluate(&[rat_int(3), rat_int(4)]).unwrap();
        assert_eq!(v, rat_int(25));
    }

    #[test]
    fn nodal_cubic_point_from_parametrization() {
        // F = x2 x1^2 - x0^3 - x0^2 x2 vanishes on (t^2-1, t(t^2-1), 1)
        let f = nodal_cubic();
        for t_num in [-3i64, -1, 0, 2, 5] {
            let t = rat_int(t_num);
            let p = [
                &(&t * &t) - &rat_int(1),
                &t * &(&(&t * &t) - &rat_int(1)),
                rat_int(1),
            ];
            assert_eq!(f.evaluate(&p).unwrap(), rat_int(0), "t = {}", t_num);
        }
        // the example point: t = 2 gives (3, 6, 1)
        assert_eq!(
            f.evaluate(&[rat_int(3), rat_int(6), rat_int(1)]).unwrap(),
            rat_int(0)
        );
    }

    pub(crate) fn nodal_cubic() -> Poly {
        let x0 = x(3, 0);
        let x1 = x(3, 1);
        let x2 = x(3, 2);
        &(&x2 * &x1.pow(2)) - &(&x0.pow(3) + &(&x0.pow(2) * &x2))
    }

    #[test]
    fn degree_checks() {
        assert_eq!(
            nodal_cubic().degree_check().unwrap(),
            DegreeInfo {
                degree: 3,
                homogeneous: true
            }
        );
        let inhom = &x(2, 0).pow(2) + &x(2, 1);
        assert_eq!(
            inhom.degree_check().unwrap(),
            DegreeInfo {
                degree: 2,
                homogeneous: false
            }
        );
        assert_eq!(
            x(2, 0).degree_check().unwrap(),
            DegreeInfo {
                degree: 1,
                homogeneous: true
            }
        );
        assert!(matches!(
            Poly::zero(2).degree_check(),
            Err(Error::ZeroPolynomial(_))
        ));
    }

    #[test]
    fn normalize_primitive_examples() {
        // (2/3) x0^2 - (4/3) x1^2  ->  x0^2 - 2 x1^2
        let f = &x(2, 0).pow(2).scalar_mul(&rat(2, 3)) - &x(2, 1).pow(2).scalar_mul(&rat(4, 3));
        let n = f.normalize_primitive().unwrap();
        let expected = &x(2, 0).pow(2) - &x(2, 1).pow(2).scalar_mul(&rat_int(2));
        assert_eq!(n, expected);
        // sign rule: leading coefficient positive
        let g = &x(2, 1) - &x(2, 0);
        let n = g.normalize_primitive().unwrap();
        assert_eq!(n, &x(2, 0) - &x(2, 1));
        // idempotent
        assert_eq!(n.normalize_primitive().unwrap(), n);
    }

    #[test]
    fn exact_division() {
        let f = &x(2, 0).pow(2) - &x(2, 1).pow(2);
        let d = &x(2, 0) - &x(2, 1);
        let q = f.exact_div(&d).unwrap();
        assert_eq!(q, &x(2, 0) + &x(2, 1));
        assert!(f.is_divisible_by(&d));
        assert!(!f.is_divisible_by(&(&x(2, 0) + &Poly::one(2))));
        let not_div = (&x(2, 0) + &Poly::one(2)).exact_div(&x(2, 1));
        assert!(not_div.is_err());
    }

    #[test]
    fn substitution_composes() {
        // F(x0, x1) = x0^2 + x1 under x0 -> x1, x1 -> x0 + 1
        let f = &x(2, 0).pow(2) + &x(2, 1);
        let g = f
            .substitute(&[x(2, 1), &x(2, 0) + &Poly::one(2)])
            .unwrap();
        let expected = &(&x(2, 1).pow(2) + &x(2, 0)) + &Poly::one(2);
        assert_eq!(g, expected);
    }

    #[test]
    fn display_round_shape() {
        assert_eq!(nodal_cubic().to_string(), "-x0^3 - x0^2*x2 + x1^2*x2");
        assert_eq!(Poly::zero(2).to_string(), "0");
        let f = &x(2, 0).scalar_mul(&rat(1, 2)) - &Poly::constant(2, rat_int(3));
        assert_eq!(f.to_string(), "1/2*x0 - 3");
    }
}
