//! Plane-curve specializations: Hessians, quadric discriminants, Sylvester
//! resultants, and flex enumeration.

use num::{Integer, One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{linear_change, polar_regularity, random_unimodular};
use crate::grobner::GrobnerConfig;
use crate::linalg;
use crate::multi_index::MultiIndex;
use crate::point::ProjPoint;
use crate::poly::Poly;
use crate::rat::{int_gcd_all, int_lcm_all, Int, Rat};

/// Everything the flex computation reports.
#[derive(Clone, Debug)]
pub struct FlexReport {
    pub d: u32,
    /// Degree of the curve-Hessian resultant after generic coordinates.
    pub resultant_degree: u32,
    /// Flexes counted with multiplicity: equals the resultant degree.
    pub count_with_multiplicity: u32,
    /// Distinct flexes over the algebraic closure, via the squarefree part.
    pub squarefree_degree: u32,
    /// The flexes with rational coordinates, lifted back through the
    /// coordinate change, canonical representatives, sorted.
    pub rational_flexes: Vec<ProjPoint>,
    /// The unimodular change of coordinates that was applied.
    pub coordinate_change: Vec<Vec<i64>>,
}

fn require_plane(f: &Poly) -> Result<()> {
    if f.nvars() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            found: f.nvars(),
        });
    }
    Ok(())
}

/// The symmetric 3x3 matrix of second partials of a plane form.
pub fn hessian_matrix(f: &Poly) -> Result<[[Poly; 3]; 3]> {
    require_plane(f)?;
    let entry = |i: usize, j: usize| f.partial_var(i).partial_var(j);
    Ok([
        [entry(0, 0), entry(0, 1), entry(0, 2)],
        [entry(1, 0), entry(1, 1), entry(1, 2)],
        [entry(2, 0), entry(2, 1), entry(2, 2)],
    ])
}

/// Determinant of the Hessian matrix: homogeneous of degree `3(d-2)` for a
/// plane curve of degree `d >= 3`, a nonzero constant for a smooth conic,
/// and zero for degenerate forms.
pub fn hessian_det(f: &Poly) -> Result<Poly> {
    require_plane(f)?;
    let d = f.degree().ok_or(Error::ZeroPolynomial("hessian"))?;
    if d < 2 {
        return Err(Error::OutOfRange {
            what: "degree d",
            value: d as i64,
            min: 2,
            max: i64::MAX,
        });
    }
    let h = hessian_matrix(f)?;
    let rows: Vec<Vec<Poly>> = h.iter().map(|r| r.to_vec()).collect();
    linalg::det_poly(&rows)
}

/// Discriminant of a concrete plane quadric: the determinant of its
/// symmetric coefficient matrix (off-diagonal entries halved). Zero exactly
/// when the quadric is singular; the overall constant is a convention.
pub fn quadric_discriminant(q: &Poly) -> Result<Rat> {
    require_plane(q)?;
    match q.degree_check()? {
        info if info.degree == 2 && info.homogeneous => {}
        _ => {
            return Err(Error::Precondition(
                "quadric discriminant needs a homogeneous quadratic in 3 variables".into(),
            ))
        }
    }
    let m = symmetric_matrix_of_quadric(q);
    Ok(linalg::det_rat(&m))
}

fn symmetric_matrix_of_quadric(q: &Poly) -> Vec<Vec<Rat>> {
    let half = Rat::new(Int::one(), Int::from(2));
    let coeff = |e: [u32; 3]| q.coefficient(&MultiIndex::new(e.to_vec()));
    let mut m = vec![vec![Rat::zero(); 3]; 3];
    m[0][0] = coeff([2, 0, 0]);
    m[1][1] = coeff([0, 2, 0]);
    m[2][2] = coeff([0, 0, 2]);
    m[0][1] = coeff([1, 1, 0]) * &half;
    m[0][2] = coeff([1, 0, 1]) * &half;
    m[1][2] = coeff([0, 1, 1]) * &half;
    m[1][0] = m[0][1].clone();
    m[2][0] = m[0][2].clone();
    m[2][1] = m[1][2].clone();
    m
}

/// The discriminant of the generic plane quadric, symbolically: a cubic in
/// the six Chow coordinates (ordered like the degree-2 monomials), cutting
/// the hypersurface of singular quadrics in the Chow space.
pub fn generic_quadric_discriminant() -> Poly {
    // coordinates a0..a5 against (x0^2, x0x1, x1^2, x0x2, x1x2, x2^2)
    let a = |i: usize| Poly::variable(6, i);
    let half = Rat::new(Int::one(), Int::from(2));
    let m = vec![
        vec![a(0), a(1).scalar_mul(&half), a(3).scalar_mul(&half)],
        vec![a(1).scalar_mul(&half), a(2), a(4).scalar_mul(&half)],
        vec![a(3).scalar_mul(&half), a(4).scalar_mul(&half), a(5)],
    ];
    linalg::det_poly(&m).expect("3x3 symbolic determinant")
}

/// Resultant of `f` and `g` with respect to `x_var`: the determinant of the
/// Sylvester matrix over the ring in the remaining variables. Vanishes at a
/// point of the remaining variables iff the specializations share a root in
/// the eliminated variable (or both leading coefficients vanish there). For
/// homogeneous plane inputs of total degrees `a, b` with full `x_var`
/// degrees, the result is a binary form of degree `a b`.
pub fn sylvester_resultant(f: &Poly, g: &Poly, var: usize) -> Result<Poly> {
    let nvars = f.nvars();
    if g.nvars() != nvars {
        return Err(Error::DimensionMismatch {
            expected: nvars,
            found: g.nvars(),
        });
    }
    if var >= nvars {
        return Err(Error::OutOfRange {
            what: "variable index",
            value: var as i64,
            min: 0,
            max: nvars as i64 - 1,
        });
    }
    let a = f.degree_in(var);
    let b = g.degree_in(var);
    if a == 0 || b == 0 {
        return Err(Error::Degenerate(format!(
            "resultant needs positive degree in x{}; apply a coordinate change",
            var
        )));
    }
    let fc: Vec<Poly> = (0..=a).map(|j| f.coefficient_of_var_power(var, j)).collect();
    let gc: Vec<Poly> = (0..=b).map(|j| g.coefficient_of_var_power(var, j)).collect();
    let size = (a + b) as usize;
    let mut m = vec![vec![Poly::zero(nvars); size]; size];
    for r in 0..b as usize {
        for k in 0..=a as usize {
            m[r][r + k] = fc[a as usize - k].clone();
        }
    }
    for r in 0..a as usize {
        for k in 0..=b as usize {
            m[b as usize + r][r + k] = gc[b as usize - k].clone();
        }
    }
    linalg::det_poly(&m)
}

const COORDINATE_RETRIES: u32 = 5;

/// Counts the flexes of a smooth plane curve of degree `d >= 3`.
///
/// After a seeded random unimodular change of coordinates that makes both
/// the curve and its Hessian have full degree in `x2`, the resultant of the
/// two is a binary form whose degree counts flexes with multiplicity. The
/// squarefree degree counts distinct flexes over the algebraic closure, and
/// rational roots are lifted back to rational flex points on the original
/// curve.
pub fn flexes(f: &Poly, seed: u64, config: &GrobnerConfig) -> Result<FlexReport> {
    require_plane(f)?;
    let d = f.homogeneous_degree()?;
    if d < 3 {
        // the d = 2 count is vacuously zero: the Hessian is a nonzero
        // constant and meets the conic nowhere
        return Err(Error::OutOfRange {
            what: "degree d",
            value: d as i64,
            min: 3,
            max: i64::MAX,
        });
    }
    let smooth = polar_regularity(f, 1, config)?;
    if !smooth.regular {
        return Err(Error::Precondition(
            "flex count needs a smooth curve; the first polar map has base points".into(),
        ));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let identity: Vec<Vec<i64>> = (0..3)
        .map(|i| (0..3).map(|j| i64::from(i == j)).collect())
        .collect();
    let expected_h_degree = 3 * (d - 2);
    let mut chosen: Option<(Vec<Vec<i64>>, Poly, Poly)> = None;
    for attempt in 0..=COORDINATE_RETRIES {
        let matrix = if attempt == 0 {
            identity.clone()
        } else {
            random_unimodular(3, &mut rng, 5)
        };
        let g = linear_change(f, &matrix)?;
        let h = hessian_det(&g)?;
        if h.is_zero() {
            return Err(Error::Degenerate(
                "the Hessian determinant vanishes identically".into(),
            ));
        }
        if g.degree_in(2) == d && h.degree_in(2) == expected_h_degree {
            chosen = Some((matrix, g, h));
            break;
        }
    }
    let (matrix, g, h) = chosen.ok_or_else(|| {
        Error::Degenerate(format!(
            "no coordinate change out of {} made the leading coefficients generic",
            COORDINATE_RETRIES
        ))
    })?;

    let resultant = sylvester_resultant(&g, &h, 2)?;
    if resultant.is_zero() {
        return Err(Error::Degenerate(
            "curve and Hessian share a component".into(),
        ));
    }
    let resultant_degree = resultant.degree().expect("nonzero");

    // strip monomial content x0^e0 x1^e1; those exponents are root
    // multiplicities of the directions [0:1] and [1:0]
    let e0 = resultant
        .terms()
        .map(|(m, _)| m.exponent(0))
        .min()
        .unwrap_or(0);
    let e1 = resultant
        .terms()
        .map(|(m, _)| m.exponent(1))
        .min()
        .unwrap_or(0);
    let stripped = strip_monomial(&resultant, e0, e1);
    let u = binary_form_chart(&stripped);
    let u_sqfree_deg = distinct_root_count(&u);
    let squarefree_degree = u_sqfree_deg + u32::from(e0 > 0) + u32::from(e1 > 0);

    // rational flex directions, then lift each through the shared x2 roots
    let mut directions: Vec<(Rat, Rat)> = rational_roots(&u)
        .into_iter()
        .map(|t| (Rat::one(), t))
        .collect();
    if e0 > 0 {
        directions.push((Rat::zero(), Rat::one()));
    }
    if e1 > 0 {
        directions.push((Rat::one(), Rat::zero()));
    }
    let mut points: Vec<ProjPoint> = Vec::new();
    for (x0v, x1v) in directions {
        let gz = specialize_to_var(&g, &x0v, &x1v, 2)?;
        let hz = specialize_to_var(&h, &x0v, &x1v, 2)?;
        let shared = unipoly_gcd(&gz, &hz);
        for z in rational_roots(&shared) {
            let y = [x0v.clone(), x1v.clone(), z];
            // x = A y maps the transformed point back to the original curve
            let x: Vec<Rat> = (0..3)
                .map(|i| {
                    (0..3).fold(Rat::zero(), |acc, j| {
                        acc + Rat::from_integer(Int::from(matrix[i][j])) * &y[j]
                    })
                })
                .collect();
            let point = ProjPoint::new(x)?.canonical();
            if !points.iter().any(|q| q.projectively_eq(&point)) {
                points.push(point);
            }
        }
    }
    points.sort_by(|a, b| a.coords().cmp(b.coords()));

    // every reported flex lies on the curve and on its Hessian
    let h_orig = hessian_det(f)?;
    for pt in &points {
        debug_assert!(f.evaluate(pt.coords())?.is_zero());
        debug_assert!(h_orig.evaluate(pt.coords())?.is_zero());
    }

    Ok(FlexReport {
        d,
        resultant_degree,
        count_with_multiplicity: resultant_degree,
        squarefree_degree,
        rational_flexes: points,
        coordinate_change: matrix,
    })
}

fn strip_monomial(p: &Poly, e0: u32, e1: u32) -> Poly {
    let mut out = Poly::zero(p.nvars());
    for (m, c) in p.terms() {
        let mut e = m.exponents().to_vec();
        e[0] -= e0;
        e[1] -= e1;
        out.add_term(MultiIndex::new(e), c.clone());
    }
    out
}

/// A binary form in `x0, x1` on the chart `x0 = 1`: ascending coefficients
/// in `t = x1`.
fn binary_form_chart(p: &Poly) -> Vec<Rat> {
    let deg = p.degree().unwrap_or(0) as usize;
    let mut coeffs = vec![Rat::zero(); deg + 1];
    for (m, c) in p.terms() {
        coeffs[m.exponent(1) as usize] = c.clone();
    }
    trim(coeffs)
}

/// `p(a, b, x_var)` as a univariate in `x_var`, ascending coefficients.
fn specialize_to_var(p: &Poly, a: &Rat, b: &Rat, var: usize) -> Result<Vec<Rat>> {
    let deg = p.degree_in(var) as usize;
    let mut coeffs = vec![Rat::zero(); deg + 1];
    for (j, slot) in coeffs.iter_mut().enumerate() {
        let slice = p.coefficient_of_var_power(var, j as u32);
        *slot = slice.evaluate(&[a.clone(), b.clone(), Rat::zero()])?;
    }
    Ok(trim(coeffs))
}

// ---- univariate helpers (ascending coefficient vectors) ----

fn trim(mut v: Vec<Rat>) -> Vec<Rat> {
    while v.len() > 1 && v.last().map(|c| c.is_zero()).unwrap_or(false) {
        v.pop();
    }
    v
}

fn uni_degree(v: &[Rat]) -> usize {
    v.len().saturating_sub(1)
}

fn uni_is_zero(v: &[Rat]) -> bool {
    v.iter().all(|c| c.is_zero())
}

fn uni_derivative(v: &[Rat]) -> Vec<Rat> {
    if v.len() <= 1 {
        return vec![Rat::zero()];
    }
    trim(
        v.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rat::from_integer(Int::from(i as u64)))
            .collect(),
    )
}

fn uni_rem(num: &[Rat], den: &[Rat]) -> Vec<Rat> {
    let dd = uni_degree(den);
    let lead = den[dd].clone();
    let mut r = trim(num.to_vec());
    while !uni_is_zero(&r) && uni_degree(&r) >= dd {
        let rd = uni_degree(&r);
        let factor = &r[rd] / &lead;
        for k in 0..=dd {
            let sub = &factor * &den[k];
            r[rd - dd + k] -= sub;
        }
        r = trim(r);
        if rd == 0 {
            break;
        }
    }
    r
}

/// Monic gcd by the Euclidean algorithm over the rationals.
fn unipoly_gcd(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !uni_is_zero(&y) {
        let r = uni_rem(&x, &y);
        x = y;
        y = trim(r);
    }
    if uni_is_zero(&x) {
        return x;
    }
    let lead = x[uni_degree(&x)].clone();
    trim(x.into_iter().map(|c| c / &lead).collect())
}

/// Number of distinct roots over the algebraic closure: degree minus the
/// degree of gcd with the derivative.
fn distinct_root_count(u: &[Rat]) -> u32 {
    if uni_is_zero(u) || uni_degree(u) == 0 {
        return 0;
    }
    let g = unipoly_gcd(u, &uni_derivative(u));
    (uni_degree(u) - uni_degree(&g)) as u32
}

fn uni_eval(u: &[Rat], t: &Rat) -> Rat {
    let mut acc = Rat::zero();
    for c in u.iter().rev() {
        acc = acc * t + c;
    }
    acc
}

/// All rational roots, exactly, by the rational root theorem on the
/// primitive integer model; deterministic.
fn rational_roots(u: &[Rat]) -> Vec<Rat> {
    let u = trim(u.to_vec());
    if uni_is_zero(&u) || uni_degree(&u) == 0 {
        return Vec::new();
    }
    // integer model
    let denom_lcm = int_lcm_all(u.iter().map(|c| c.denom()));
    let ints: Vec<Int> = u
        .iter()
        .map(|c| c.numer() * (&denom_lcm / c.denom()))
        .collect();
    let content = int_gcd_all(ints.iter());
    let ints: Vec<Int> = ints.into_iter().map(|v| v / &content).collect();

    let mut roots: Vec<Rat> = Vec::new();
    // factor out t^k
    let low = ints.iter().position(|c| !c.is_zero()).unwrap_or(0);
    if low > 0 {
        roots.push(Rat::zero());
    }
    let ints = &ints[low..];
    if ints.len() <= 1 {
        roots.sort();
        return roots;
    }
    let a0 = ints[0].abs();
    let an = ints[ints.len() - 1].abs();
    let rat_u: Vec<Rat> = ints.iter().map(|c| Rat::from_integer(c.clone())).collect();
    for p in divisors(&a0) {
        for q in divisors(&an) {
            if p.gcd(&q) != Int::one() {
                continue;
            }
            for sign in [1i32, -1] {
                let candidate = Rat::new(
                    if sign > 0 { p.clone() } else { -p.clone() },
                    q.clone(),
                );
                if uni_eval(&rat_u, &candidate).is_zero() && !roots.contains(&candidate) {
                    roots.push(candidate);
                }
            }
        }
    }
    roots.sort();
    roots
}

/// Positive divisors of a positive integer via full factorization.
fn divisors(n: &Int) -> Vec<Int> {
    let factors = factorize(n.clone());
    let mut out = vec![Int::one()];
    for (p, e) in factors {
        let mut next = Vec::new();
        for d in &out {
            let mut pk = Int::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        out = next;
    }
    out.sort();
    out.dedup();
    out
}

/// Deterministic integer factorization: trial division, then Miller-Rabin
/// with Brent's rho for the survivors.
fn factorize(mut n: Int) -> Vec<(Int, u32)> {
    let mut out: Vec<(Int, u32)> = Vec::new();
    if n <= Int::one() {
        return out;
    }
    let mut raw: Vec<Int> = Vec::new();
    for small in [2u64, 3, 5] {
        let s = Int::from(small);
        while (&n % &s).is_zero() {
            n /= &s;
            raw.push(s.clone());
        }
    }
    let mut trial = Int::from(7u64);
    let limit = Int::from(100_000u64);
    while trial <= limit && (&trial * &trial) <= n {
        while (&n % &trial).is_zero() {
            n /= &trial;
            raw.push(trial.clone());
        }
        trial += 2;
    }
    if n > Int::one() {
        let mut stack = vec![n];
        while let Some(m) = stack.pop() {
            if m == Int::one() {
                continue;
            }
            if is_probable_prime(&m) {
                raw.push(m);
                continue;
            }
            let d = brent_rho(&m);
            stack.push(&m / &d);
            stack.push(d);
        }
    }
    raw.sort();
    for p in raw {
        if let Some(last) = out.last_mut() {
            if last.0 == p {
                last.1 += 1;
                continue;
            }
        }
        out.push((p, 1));
    }
    out
}

fn is_probable_prime(n: &Int) -> bool {
    if n < &Int::from(2u64) {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let p = Int::from(p);
        if n == &p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let one = Int::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let a = Int::from(a);
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&Int::from(2u64), n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Brent-style rho with fixed, deterministic parameters; `n` must be odd,
/// composite, and free of the trial-division primes.
fn brent_rho(n: &Int) -> Int {
    let one = Int::one();
    let two = Int::from(2u64);
    let mut c = Int::one();
    loop {
        let mut x = Int::from(2u64);
        let mut y = Int::from(2u64);
        let mut d = Int::one();
        let f = |v: &Int| (v * v + &c) % n;
        while d == one {
            x = f(&x);
            y = f(&f(&y));
            let diff = if x > y { &x - &y } else { &y - &x };
            if diff.is_zero() {
                break;
            }
            d = diff.gcd(n);
        }
        if d != one && &d != n {
            return d;
        }
        c += &two;
    }
}
