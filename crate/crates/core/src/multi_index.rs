//! Exponent vectors over `n+1` variables.
//!
//! A [`MultiIndex`] indexes both monomials `x^a = x0^{a_0} ... xn^{a_n}` and
//! iterated partial derivatives. The derived `Ord` is graded reverse
//! lexicographic with `x0 > x1 > ... > xn`, the fixed order used everywhere
//! for canonical term iteration.

use std::cmp::Ordering;
use std::fmt;

use crate::rat::{factorial, Int};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        MultiIndex(exponents)
    }

    /// The constant monomial over `nvars` variables.
    pub fn zero(nvars: usize) -> Self {
        MultiIndex(vec![0; nvars])
    }

    /// `x_var` as a multi-index.
    pub fn unit(nvars: usize, var: usize) -> Self {
        let mut e = vec![0; nvars];
        e[var] = 1;
        MultiIndex(e)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.0[var]
    }

    /// `|a| = sum of exponents`.
    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Product of monomials: componentwise sum.
    pub fn mul(&self, other: &Self) -> Self {
        MultiIndex(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// `self / other` when `other` divides `self`.
    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            if a < b {
                return None;
            }
            out.push(a - b);
        }
        Some(MultiIndex(out))
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Self) -> Self {
        MultiIndex(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    /// True when the supports are disjoint, i.e. `lcm = product`.
    pub fn is_coprime_to(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Increment one exponent.
    pub fn bump(&self, var: usize) -> Self {
        let mut e = self.0.clone();
        e[var] += 1;
        MultiIndex(e)
    }

    /// Decrement one exponent; `None` if it is already zero.
    pub fn checked_decrement(&self, var: usize) -> Option<Self> {
        if self.0[var] == 0 {
            return None;
        }
        let mut e = self.0.clone();
        e[var] -= 1;
        Some(MultiIndex(e))
    }

    /// Smallest variable index with a positive exponent.
    pub fn first_support(&self) -> Option<usize> {
        self.0.iter().position(|&e| e > 0)
    }

    /// The multinomial coefficient `|a|! / a!`, the number of ordered
    /// derivative tuples collapsing to this multi-index.
    pub fn multinomial(&self) -> Int {
        let mut num = factorial(self.total_degree());
        for &e in &self.0 {
            num /= factorial(e);
        }
        num
    }

    /// Re-embeds into a ring with `new_nvars` variables, shifting every
    /// variable index up by `offset`.
    pub fn embed(&self, new_nvars: usize, offset: usize) -> Self {
        let mut e = vec![0; new_nvars];
        for (i, &x) in self.0.iter().enumerate() {
            e[offset + i] = x;
        }
        MultiIndex(e)
    }
}

/// All multi-indices of total degree `k` over `nvars` variables, listed in
/// descending grevlex order (greatest monomial first). This is the index
/// order of Chow vectors and polar matrices.
pub fn multi_indices_of_degree(nvars: usize, k: u32) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    let mut current = vec![0u32; nvars];
    gen_rec(&mut out, &mut current, 0, k);
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

fn gen_rec(out: &mut Vec<MultiIndex>, current: &mut Vec<u32>, var: usize, remaining: u32) {
    if var + 1 == current.len() {
        current[var] = remaining;
        out.push(MultiIndex(current.clone()));
        current[var] = 0;
        return;
    }
    for e in 0..=remaining {
        current[var] = e;
        gen_rec(out, current, var + 1, remaining - e);
    }
    current[var] = 0;
}

impl Ord for MultiIndex {
    /// Graded reverse lexicographic: higher total degree is greater; on a
    /// tie, the monomial with the smaller exponent in the last differing
    /// variable is greater.
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.0.len(), other.0.len());
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => {
                for i in (0..self.0.len()).rev() {
                    match self.0[i].cmp(&other.0[i]) {
                        Ordering::Equal => continue,
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                    }
                }
                Ordering::Equal
            }
            ord => ord,
        }
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x^{:?}", self.0)
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_constant() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i)?;
            } else {
                write!(f, "x{}^{}", i, e)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mi(e: &[u32]) -> MultiIndex {
        MultiIndex::new(e.to_vec())
    }

    #[test]
    fn grevlex_on_quadrics_in_three_vars() {
        // x0^2 > x0x1 > x1^2 > x0x2 > x1x2 > x2^2
        let expected = [
            mi(&[2, 0, 0]),
            mi(&[1, 1, 0]),
            mi(&[0, 2, 0]),
            mi(&[1, 0, 1]),
            mi(&[0, 1, 1]),
            mi(&[0, 0, 2]),
        ];
        for w in expected.windows(2) {
            assert!(w[0] > w[1], "{} should beat {}", w[0], w[1]);
        }
        assert_eq!(multi_indices_of_degree(3, 2), expected.to_vec());
    }

    #[test]
    fn degree_dominates() {
        assert!(mi(&[0, 0, 3]) > mi(&[1, 1, 0]));
        assert!(mi(&[1, 0]) > mi(&[0, 0]));
    }

    #[test]
    fn division_and_lcm() {
        let a = mi(&[2, 1, 0]);
        let b = mi(&[1, 0, 1]);
        assert!(!b.divides(&a));
        assert_eq!(a.lcm(&b), mi(&[2, 1, 1]));
        assert_eq!(a.checked_div(&mi(&[1, 1, 0])), Some(mi(&[1, 0, 0])));
        assert_eq!(a.checked_div(&b), None);
        assert!(mi(&[2, 0, 0]).is_coprime_to(&mi(&[0, 1, 1])));
        assert!(!mi(&[2, 1, 0]).is_coprime_to(&mi(&[0, 1, 1])));
    }

    #[test]
    fn multinomials() {
        assert_eq!(mi(&[1, 1, 0]).multinomial(), Int::from(2));
        assert_eq!(mi(&[2, 0, 0]).multinomial(), Int::from(1));
        assert_eq!(mi(&[1, 1, 1]).multinomial(), Int::from(6));
        assert_eq!(mi(&[2, 1, 0]).multinomial(), Int::from(3));
    }

    #[test]
    fn enumeration_counts() {
        // C(n+k, k) monomials of degree k in n+1 variables
        assert_eq!(multi_indices_of_degree(3, 2).len(), 6);
        assert_eq!(multi_indices_of_degree(4, 3).len(), 20);
        assert_eq!(multi_indices_of_degree(2, 5).len(), 6);
    }
}
