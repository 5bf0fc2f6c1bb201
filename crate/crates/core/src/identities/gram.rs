//! The bordered Gram matrix of the Askey-Wilson moment functional, its
//! reduction to the B-matrix, the little q-Jacobi Hankel determinants and
//! the contiguous relation for `r phi s`.

use crate::askey_wilson::{aw_poly, AWParams, XPoint};
use crate::error::{Error, Result};
use crate::identities::determinants::build_b_matrix;
use crate::linalg::{det_fraction_free, Matrix};
use crate::scalar::{one_minus, pole_div, qpoch, qpoch_multi, qpow, ParamPoint, Scalar};
use crate::series::{phi_series, series_linear_combine, HypergeometricSpec, TruncatedSeries};

/// `(ac, ad; q)_i (bc, bd; q)_j (ab; q)_{i+j} / (abcd; q)_{i+j}`.
pub fn gram_entry(i: usize, j: usize, p: &AWParams) -> Result<Scalar> {
    let (a, b, c, d, q) = (&p.a, &p.b, &p.c, &p.d, &p.q);
    let (i, j) = (i as i64, j as i64);
    let num = qpoch_multi(&[a * c, a * d], q, i)?
        * qpoch_multi(&[b * c, b * d], q, j)?
        * qpoch(&(a * b), q, i + j)?;
    pole_div(&num, &qpoch(&p.abcd(), q, i + j)?, "(abcd;q)_{i+j}")
}

/// The `(n+1) x (n+1)` Gram matrix bordered by the row `(bz, b/z; q)_j`.
pub fn build_gram_matrix(n: usize, p: &AWParams, pt: &XPoint) -> Result<Matrix> {
    Matrix::try_from_fn(n + 1, n + 1, |i, j| {
        if i == n {
            pt.basis_value(&p.b, &p.q, j as i64)
        } else {
            gram_entry(i, j, p)
        }
    })
}

/// The normalization `C` of the Gram determinant.
pub fn gram_constant(n: usize, p: &AWParams) -> Result<Scalar> {
    let (a, b, c, d, q) = (&p.a, &p.b, &p.c, &p.d, &p.q);
    let ni = n as i64;
    let mut out = a.powi(ni * (ni - 1) / 2)?
        * b.powi(ni * (ni + 1) / 2)?
        * qpow(q, ni * (ni - 1) * (2 * ni - 1) / 6)?;
    if n % 2 == 1 {
        out = -out;
    }
    let pairs = [a * b, a * c, a * d, b * c, b * d, c * d, q.clone()];
    let abcd = p.abcd();
    for i in 0..ni {
        out *= pole_div(
            &qpoch_multi(&pairs, q, i)?,
            &qpoch(&abcd, q, ni + i)?,
            "(abcd;q)_{n+i}",
        )?;
    }
    Ok(out)
}

/// `C p_n(x; a, b, c, d; q)`.
pub fn rhs_gram_formula(n: usize, p: &AWParams, pt: &XPoint) -> Result<Scalar> {
    Ok(gram_constant(n, p)? * aw_poly(n, p, pt)?)
}

/// The Gram matrix after subtracting `(1 - 2bxq^{j-1} + b^2 q^{2j-2})` times
/// column `j - 1` from column `j`, for `j = n, ..., 1`.
pub fn column_elimination(n: usize, p: &AWParams, pt: &XPoint) -> Result<Matrix> {
    let g = build_gram_matrix(n, p, pt)?;
    let (b, q) = (&p.b, &p.q);
    let two_x = Scalar::from_int(2) * pt.x();
    Matrix::try_from_fn(n + 1, n + 1, |i, j| {
        if j == 0 {
            return Ok(g.get(i, 0).clone());
        }
        let qj = qpow(q, j as i64 - 1)?;
        let factor = Scalar::one() - b * &two_x * &qj + b * b * &qj * &qj;
        Ok(g.get(i, j) - factor * g.get(i, j - 1))
    })
}

/// Entrywise residuals of the column elimination against the scaled
/// B-matrix, followed by the residual of the resulting determinant relation.
pub fn column_elimination_residuals(n: usize, p: &AWParams, pt: &XPoint) -> Result<Vec<Scalar>> {
    let (a, b, c, d, q) = (&p.a, &p.b, &p.c, &p.d, &p.q);
    let reduced = column_elimination(n, p, pt)?;
    let bm = build_b_matrix(n, p, pt)?;
    let row_scale = |i: usize| qpoch_multi(&[a * c, a * d], q, i as i64);
    let col_scale = |j: usize| qpoch_multi(&[b * c, b * d], q, j as i64 - 1);
    let mut out = Vec::with_capacity((n + 1) * (n + 1) + 1);
    for i in 0..n {
        for j in 1..=n {
            out.push(reduced.get(i, j) - row_scale(i)? * col_scale(j)? * bm.get(i, j - 1));
        }
    }
    out.push(reduced.get(n, 0) - Scalar::one());
    for j in 1..=n {
        out.push(reduced.get(n, j).clone());
    }
    let mut scale = if n % 2 == 1 {
        -Scalar::one()
    } else {
        Scalar::one()
    };
    for i in 0..n {
        scale *= row_scale(i)? * col_scale(i + 1)?;
    }
    out.push(det_fraction_free(&build_gram_matrix(n, p, pt)?)? - scale * det_fraction_free(&bm)?);
    Ok(out)
}

/// `C - (-1)^n b^n q^{n(n-1)/2} det(A_{i,j})_{i,j<n} / (abcd q^{n-1}; q)_n`.
pub fn check_gram_leading(n: usize, p: &AWParams) -> Result<Scalar> {
    let (b, q) = (&p.b, &p.q);
    let ni = n as i64;
    let top = Matrix::try_from_fn(n, n, |i, j| gram_entry(i, j, p))?;
    let mut num = b.powu(n as u64) * qpow(q, ni * (ni - 1) / 2)? * det_fraction_free(&top)?;
    if n % 2 == 1 {
        num = -num;
    }
    let den = qpoch(&(p.abcd() * qpow(q, ni - 1)?), q, ni)?;
    Ok(gram_constant(n, p)? - pole_div(&num, &den, "(abcd q^{n-1};q)_n")?)
}

/// `((ab; q)_{i+j} / (abcd; q)_{i+j})`, `0 <= i, j <= n - 1`.
pub fn build_hankel_little_qjacobi(n: usize, p: &AWParams) -> Result<Matrix> {
    let ab = &p.a * &p.b;
    let abcd = p.abcd();
    Matrix::try_from_fn(n, n, |i, j| {
        let k = (i + j) as i64;
        pole_div(
            &qpoch(&ab, &p.q, k)?,
            &qpoch(&abcd, &p.q, k)?,
            "(abcd;q)_{i+j}",
        )
    })
}

/// Closed form of the little q-Jacobi Hankel determinant.
pub fn rhs_hankel(n: usize, p: &AWParams) -> Result<Scalar> {
    hankel_closed_form(n, p, 0)
}

/// The closed form with the `q` exponent shifted by `drift`; `drift = 0`
/// is the true evaluation.
pub(crate) fn hankel_closed_form(n: usize, p: &AWParams, drift: i64) -> Result<Scalar> {
    let q = &p.q;
    let ni = n as i64;
    let ab = &p.a * &p.b;
    let abcd = p.abcd();
    let mut out = ab.powi(ni * (ni - 1) / 2)? * qpow(q, ni * (ni - 1) * (ni - 2) / 3 + drift)?;
    for k in 0..ni {
        let num = qpoch_multi(&[q.clone(), ab.clone(), &p.c * &p.d], q, k)?;
        out *= pole_div(&num, &qpoch(&abcd, q, k + ni - 1)?, "(abcd;q)_{k+n-1}")?;
    }
    Ok(out)
}

/// The Hankel matrix with rows scaled by `(ac, ad; q)_i` and columns by
/// `(bc, bd; q)_j`.
pub fn build_hankel_decorated(n: usize, p: &AWParams) -> Result<Matrix> {
    Matrix::try_from_fn(n, n, |i, j| gram_entry(i, j, p))
}

/// Closed form of the decorated Hankel determinant.
pub fn rhs_hankel_decorated(n: usize, p: &AWParams) -> Result<Scalar> {
    let (a, b, c, d, q) = (&p.a, &p.b, &p.c, &p.d, &p.q);
    let mut out = rhs_hankel(n, p)?;
    for j in 1..n as i64 {
        out *= qpoch_multi(&[a * c, a * d, b * c, b * d], q, j)?;
    }
    Ok(out)
}

/// Parameters of the contiguous relation: `a, b, A_1..A_{r-1}, B_1..B_{s-1}`.
#[derive(Clone, Debug)]
pub struct ContiguousParams {
    pub a: Scalar,
    pub b: Scalar,
    pub upper: Vec<Scalar>,
    pub lower: Vec<Scalar>,
    pub q: Scalar,
}

impl ContiguousParams {
    /// Reads `a, b, q, A1.., B1..`.
    pub fn from_point(pt: &ParamPoint, r: usize, s: usize) -> Result<Self> {
        if r == 0 || s == 0 {
            return Err(Error::Domain(format!(
                "contiguous relation needs r, s >= 1, got ({r}, {s})"
            )));
        }
        Ok(ContiguousParams {
            a: pt.get("a")?,
            b: pt.get("b")?,
            upper: pt.vector("A", r - 1)?,
            lower: pt.vector("B", s - 1)?,
            q: pt.get("q")?,
        })
    }
}

/// Residual series of the contiguous relation.
pub fn contiguous_residual(p: &ContiguousParams, order: usize) -> Result<TruncatedSeries> {
    let (a, b, q) = (&p.a, &p.b, &p.q);
    let one = Scalar::one();
    let make = |head_n: Scalar, tail_n: Vec<Scalar>, head_d: Scalar, tail_d: Vec<Scalar>| {
        let mut nums = vec![head_n];
        nums.extend(tail_n);
        let mut dens = vec![head_d];
        dens.extend(tail_d);
        HypergeometricSpec::new(nums, dens, q.clone())
    };
    let shifted = make(a * q, p.upper.clone(), b * q, p.lower.clone());
    let plain = make(a.clone(), p.upper.clone(), b.clone(), p.lower.clone());
    let upper_q: Vec<Scalar> = p.upper.iter().map(|x| x * q).collect();
    let lower_q: Vec<Scalar> = p.lower.iter().map(|x| x * q).collect();
    let target = make(a * q, upper_q, b * q * q, lower_q);
    let e = target.sign_power_exponent();

    let mut pref = pole_div(
        &(a - b),
        &(one_minus(b) * one_minus(&(b * q))),
        "(1-b)(1-bq)",
    )?;
    pref *= pole_div(
        &p.upper.iter().map(one_minus).product::<Scalar>(),
        &p.lower.iter().map(one_minus).product::<Scalar>(),
        "prod (1 - B_i)",
    )?;
    if e % 2 != 0 {
        pref = -pref;
    }
    let lhs_a = phi_series(&shifted, &one, order)?;
    let lhs_b = phi_series(&plain, &one, order)?;
    let rhs = phi_series(&target, &qpow(q, e)?, order)?
        .shift()
        .scale(&pref);
    series_linear_combine(&[(one.clone(), &lhs_a), (-one.clone(), &lhs_b), (-one, &rhs)])
}
