//! Exact linear algebra helpers: rational RREF and kernels, fraction-free
//! integer rank, and determinants of matrices with polynomial entries.

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rat::{Int, Rat};

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(mat: &mut [Vec<Rat>]) -> Vec<usize> {
    let rows = mat.len();
    let cols = mat.first().map(|r| r.len()).unwrap_or(0);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !mat[i][c].is_zero()) else {
            continue;
        };
        mat.swap(r, p);
        let inv = mat[r][c].clone();
        for v in mat[r].iter_mut() {
            *v /= &inv;
        }
        for i in 0..rows {
            if i != r && !mat[i][c].is_zero() {
                let f = mat[i][c].clone();
                for j in 0..cols {
                    let sub = &f * &mat[r][j];
                    mat[i][j] -= sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

/// Basis of the right kernel over the rationals, one vector per free
/// column, in ascending free-column order.
pub fn kernel_basis(mat: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let cols = mat.first().map(|r| r.len()).unwrap_or(0);
    let mut work: Vec<Vec<Rat>> = mat.to_vec();
    let pivots = rref(&mut work);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::new();
    for &fc in &free {
        let mut v = vec![Rat::zero(); cols];
        v[fc] = Rat::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -work[row][fc].clone();
        }
        basis.push(v);
    }
    basis
}

pub fn rank_rat(mat: &[Vec<Rat>]) -> usize {
    let mut work: Vec<Vec<Rat>> = mat.to_vec();
    rref(&mut work).len()
}

/// Rank of an integer matrix by fraction-free (Bareiss) elimination.
pub fn rank_int(mut mat: Vec<Vec<Int>>) -> usize {
    let rows = mat.len();
    let cols = mat.first().map(|r| r.len()).unwrap_or(0);
    let mut rank = 0;
    let mut prev = Int::one();
    let mut c = 0;
    while rank < rows && c < cols {
        let Some(p) = (rank..rows).find(|&i| !mat[i][c].is_zero()) else {
            c += 1;
            continue;
        };
        mat.swap(rank, p);
        for i in rank + 1..rows {
            for j in c + 1..cols {
                let t = &mat[i][j] * &mat[rank][c] - &mat[i][c] * &mat[rank][j];
                mat[i][j] = t / &prev;
            }
            mat[i][c] = Int::zero();
        }
        prev = mat[rank][c].clone();
        rank += 1;
        c += 1;
    }
    rank
}

/// Determinant of a square rational matrix.
pub fn det_rat(mat: &[Vec<Rat>]) -> Rat {
    let n = mat.len();
    let mut work: Vec<Vec<Rat>> = mat.to_vec();
    let mut det = Rat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !work[i][c].is_zero()) else {
            return Rat::zero();
        };
        if p != c {
            work.swap(c, p);
            det = -det;
        }
        det *= &work[c][c];
        let inv = work[c][c].clone();
        for i in c + 1..n {
            if work[i][c].is_zero() {
                continue;
            }
            let f = &work[i][c] / &inv;
            for j in c..n {
                let sub = &f * &work[c][j];
                work[i][j] -= sub;
            }
        }
    }
    det
}

/// Determinant of a square matrix of polynomials by fraction-free Bareiss
/// elimination; every division is exact in the polynomial ring.
pub fn det_poly(mat: &[Vec<Poly>]) -> Result<Poly> {
    let n = mat.len();
    if n == 0 {
        return Err(Error::Precondition("empty matrix".into()));
    }
    let nvars = mat[0][0].nvars();
    if n == 1 {
        return Ok(mat[0][0].clone());
    }
    let mut work: Vec<Vec<Poly>> = mat.to_vec();
    let mut sign = 1i32;
    let mut prev = Poly::one(nvars);
    for k in 0..n - 1 {
        let Some(p) = (k..n).find(|&i| !work[i][k].is_zero()) else {
            return Ok(Poly::zero(nvars));
        };
        if p != k {
            work.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&work[i][j] * &work[k][k]) - &(&work[i][k] * &work[k][j]);
                work[i][j] = t.exact_div(&prev)?;
            }
            work[i][k] = Poly::zero(nvars);
        }
        prev = work[k][k].clone();
    }
    let mut det = work[n - 1][n - 1].clone();
    if sign < 0 {
        det = -&det;
    }
    Ok(det)
}

/// `M v` for a rational matrix and vector.
pub fn mat_vec(mat: &[Vec<Rat>], v: &[Rat]) -> Vec<Rat> {
    mat.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(Rat::zero(), |acc, (a, b)| acc + a * b)
        })
        .collect()
}

/// Content-normalized sign pattern helper for determinant tests.
pub fn is_zero_vec(v: &[Rat]) -> bool {
    v.iter().all(|x| x.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_int;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rat>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| rat_int(v)).collect())
            .collect()
    }

    #[test]
    fn rank_and_kernel() {
        let mat = m(&[&[2, 0, 0], &[0, 2, 0], &[0, 0, 0]]);
        assert_eq!(rank_rat(&mat), 2);
        let k = kernel_basis(&mat);
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], vec![rat_int(0), rat_int(0), rat_int(1)]);
    }

    #[test]
    fn integer_rank_matches_rational_rank() {
        let imat: Vec<Vec<Int>> = vec![
            vec![Int::from(1), Int::from(2), Int::from(3)],
            vec![Int::from(2), Int::from(4), Int::from(6)],
            vec![Int::from(0), Int::from(1), Int::from(1)],
        ];
        let rmat = m(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(rank_int(imat), rank_rat(&rmat));
    }

    #[test]
    fn determinants() {
        assert_eq!(det_rat(&m(&[&[1, 2], &[3, 4]])), rat_int(-2));
        assert_eq!(det_rat(&m(&[&[1, 2], &[2, 4]])), rat_int(0));
    }

    #[test]
    fn polynomial_determinant_on_vandermonde() {
        // det [[1, x0], [1, x1]] = x1 - x0
        let one = Poly::one(2);
        let x0 = Poly::variable(2, 0);
        let x1 = Poly::variable(2, 1);
        let det = det_poly(&[vec![one.clone(), x0.clone()], vec![one, x1.clone()]]).unwrap();
        assert_eq!(det, &x1 - &x0);
    }

    #[test]
    fn polynomial_determinant_bareiss_division_is_exact() {
        // 3x3 with polynomial entries, checked against cofactor expansion
        let v = |i| Poly::variable(3, i);
        let rows = vec![
            vec![v(0), v(1), v(2)],
            vec![v(1), v(2), v(0)],
            vec![v(2), v(0), v(1)],
        ];
        let det = det_poly(&rows).unwrap();
        let cofactor = {
            let a = &rows[0];
            let minor = |r1: &Poly, r2: &Poly, s1: &Poly, s2: &Poly| &(r1 * s2) - &(r2 * s1);
            let m0 = minor(&rows[1][1], &rows[1][2], &rows[2][1], &rows[2][2]);
            let m1 = minor(&rows[1][0], &rows[1][2], &rows[2][0], &rows[2][2]);
            let m2 = minor(&rows[1][0], &rows[1][1], &rows[2][0], &rows[2][1]);
            &(&(&a[0] * &m0) - &(&a[1] * &m1)) + &(&a[2] * &m2)
        };
        assert_eq!(det, cofactor);
    }
}
