//! Points of projective space with exact rational coordinates.

use std::fmt;

use num::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rat::{format_rat, int_gcd_all, int_lcm_all, Int, Rat};

/// A point `[c_0 : ... : c_n]`; equality of points is equality up to a
/// global nonzero scalar, exposed via [`ProjPoint::projectively_eq`].
#[derive(Clone, PartialEq, Eq)]
pub struct ProjPoint {
    coords: Vec<Rat>,
}

impl ProjPoint {
    pub fn new(coords: Vec<Rat>) -> Result<Self> {
        if coords.iter().all(|c| c.is_zero()) {
            return Err(Error::Precondition(
                "projective point needs a nonzero coordinate".into(),
            ));
        }
        Ok(ProjPoint { coords })
    }

    pub fn from_ints(coords: &[i64]) -> Result<Self> {
        Self::new(coords.iter().map(|&c| crate::rat::rat_int(c)).collect())
    }

    /// Parses a comma-separated coordinate list, e.g. `0,0,1` or `1/2,3,-1`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut coords = Vec::new();
        for (i, piece) in text.split(',').enumerate() {
            let piece = piece.trim();
            let value = parse_rat(piece).ok_or_else(|| Error::Parse {
                position: i,
                message: format!("bad coordinate {:?}", piece),
            })?;
            coords.push(value);
        }
        Self::new(coords)
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    /// Same point of projective space, regardless of representatives.
    pub fn projectively_eq(&self, other: &ProjPoint) -> bool {
        self.len() == other.len() && self.canonical().coords == other.canonical().coords
    }

    /// Canonical representative: coprime integer coordinates, first nonzero
    /// coordinate positive.
    pub fn canonical(&self) -> ProjPoint {
        let denom_lcm = int_lcm_all(self.coords.iter().map(|c| c.denom()));
        let ints: Vec<Int> = self
            .coords
            .iter()
            .map(|c| c.numer() * (&denom_lcm / c.denom()))
            .collect();
        let content = int_gcd_all(ints.iter());
        let first_nonzero_neg = ints
            .iter()
            .find(|v| !v.is_zero())
            .map(|v| v.is_negative())
            .unwrap_or(false);
        let divisor = if first_nonzero_neg {
            -content
        } else {
            content
        };
        ProjPoint {
            coords: ints
                .into_iter()
                .map(|v| Rat::from_integer(v / &divisor))
                .collect(),
        }
    }
}

fn parse_rat(text: &str) -> Option<Rat> {
    match text.split_once('/') {
        Some((n, d)) => {
            let n: Int = n.trim().parse().ok()?;
            let d: Int = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rat::new(n, d))
        }
        None => {
            let n: Int = text.parse().ok()?;
            Some(Rat::from_integer(n))
        }
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ":")?;
            }
            write!(f, "{}", format_rat(c))?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    #[test]
    fn rejects_origin() {
        assert!(ProjPoint::new(vec![rat_int(0), rat_int(0)]).is_err());
    }

    #[test]
    fn projective_equality() {
        let a = ProjPoint::from_ints(&[2, -4, 6]).unwrap();
        let b = ProjPoint::new(vec![rat(1, 3), rat(-2, 3), rat_int(1)]).unwrap();
        assert!(a.projectively_eq(&b));
        let c = ProjPoint::from_ints(&[1, 2, 3]).unwrap();
        assert!(!a.projectively_eq(&c));
    }

    #[test]
    fn canonical_representative() {
        let p = ProjPoint::new(vec![rat(-1, 2), rat_int(1), rat_int(0)]).unwrap();
        let c = p.canonical();
        assert_eq!(c.coords(), &[rat_int(1), rat_int(-2), rat_int(0)]);
        assert_eq!(c.to_string(), "[1:-2:0]");
    }

    #[test]
    fn parsing() {
        let p = ProjPoint::parse("0, 0, 1").unwrap();
        assert_eq!(p.coords(), &[rat_int(0), rat_int(0), rat_int(1)]);
        let q = ProjPoint::parse("1/2,3,-1").unwrap();
        assert_eq!(q.coords(), &[rat(1, 2), rat_int(3), rat_int(-1)]);
        assert!(ProjPoint::parse("1,a").is_err());
        assert!(ProjPoint::parse("0,0").is_err());
    }
}
