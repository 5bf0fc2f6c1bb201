//! Structured determinants and Pfaffians built from q-shifted factorials,
//! with their closed-form evaluations.

use crate::askey_wilson::{aw_poly, AWParams, XPoint};
use crate::error::{Error, Result};
use crate::linalg::{pfaffian_matchings, Matrix, SkewMatrix};
use crate::scalar::{gamma_int, one_minus, pole_div, qpoch, qpoch_multi, qpow, Scalar};
use crate::series::{phi_terminating, HypergeometricSpec};

/// The matrix `B_{i,j}`, rows `i = 0..n-1`, columns `j = 1..n`.
pub fn build_b_matrix(n: usize, p: &AWParams, pt: &XPoint) -> Result<Matrix> {
    let (a, b, c, d, q) = (&p.a, &p.b, &p.c, &p.d, &p.q);
    let x = pt.x();
    let ab = a * b;
    let cd = c * d;
    let abcd = p.abcd();
    let two = Scalar::from_int(2);
    Matrix::try_from_fn(n, n, |i, col| {
        let (i, j) = (i as i64, col as i64 + 1);
        let num = qpoch(&ab, q, i + j - 1)? * -(b * qpow(q, j - 1)?);
        let pref = pole_div(&num, &qpoch(&abcd, q, i + j)?, "(abcd;q)_{i+j}")?;
        let bracket = c + d - &two * &x + one_minus(&cd) * (a * qpow(q, i)? + b * qpow(q, j - 1)?)
            - &ab * (c + d - &two * &cd * &x) * qpow(q, i + j - 1)?;
        Ok(pref * bracket)
    })
}

/// `D_n(a, b)`.
pub fn d_factor(n: usize, p: &AWParams) -> Result<Scalar> {
    let (a, b, q) = (&p.a, &p.b, &p.q);
    let ni = n as i64;
    let mut out = a.powi(ni * (ni - 1) / 2)?
        * b.powi(ni * (ni + 1) / 2)?
        * qpow(q, ni * (ni - 1) * (2 * ni - 1) / 6)?;
    let abcd = p.abcd();
    for i in 0..ni {
        let num = qpoch_multi(&[a * b, &p.c * &p.d, q.clone()], q, i)?;
        out *= pole_div(&num, &qpoch(&abcd, q, ni + i)?, "(abcd;q)_{n+i}")?;
    }
    Ok(out)
}

/// `D_n(a, b) p_n(x; a, b, c, d; q)`.
pub fn rhs_det_formula(n: usize, p: &AWParams, pt: &XPoint) -> Result<Scalar> {
    Ok(d_factor(n, p)? * aw_poly(n, p, pt)?)
}

/// Residuals of the two ratio identities satisfied by `D_n`, for `n >= 2`.
pub fn d_ratio_residuals(n: usize, p: &AWParams) -> Result<[Scalar; 2]> {
    let (a, b, q) = (&p.a, &p.b, &p.q);
    let ni = n as i64;
    let ab = a * b;
    let abcd = p.abcd();
    let cd = &p.c * &p.d;
    let aq = a * q;
    let bq = b * q;
    let both = p.with_ab(aq.clone(), bq.clone());
    let a_only = p.with_ab(aq, b.clone());
    let b_only = p.with_ab(a.clone(), bq);

    let quot = |num: Scalar, den: Scalar| num.try_div(&den);
    let lhs1 = quot(d_factor(n, p)?, d_factor(n - 1, p)?)?
        .try_div(&quot(d_factor(n - 1, &both)?, d_factor(n - 2, &both)?)?)?;
    let rhs1 = pole_div(
        &(&ab
            * qpoch(&ab, q, 2)?
            * one_minus(&(&cd * qpow(q, ni - 2)?))
            * one_minus(&qpow(q, ni - 1)?)),
        &(one_minus(&(&ab * qpow(q, ni - 1)?))
            * one_minus(&(&abcd * qpow(q, ni - 1)?))
            * qpoch(&abcd, q, 2)?),
        "D ratio",
    )?;

    let m = n - 1;
    let lhs2 = quot(d_factor(m, &a_only)?, d_factor(m, p)?)?
        .try_div(&quot(d_factor(m, &both)?, d_factor(m, &b_only)?)?)?;
    let abq = &ab * q;
    let rhs2 = pole_div(
        &(one_minus(&abq) * one_minus(&(&abcd * qpow(q, 2 * ni - 2)?))),
        &(one_minus(&(&ab * qpow(q, ni - 1)?)) * one_minus(&(&abcd * qpow(q, ni - 1)?))),
        "D ratio",
    )? * pole_div(&one_minus(&abq), &one_minus(&ab), "D ratio")?.powi(ni - 2)?
        * pole_div(&one_minus(&abcd), &one_minus(&(&abcd * q)), "D ratio")?.powi(ni - 1)?;
    Ok([lhs1 - rhs1, lhs2 - rhs2])
}

/// `((q^{i-1} - c q^{j-1}) (aq;q)_{i+j-2} / (abq^2;q)_{i+j-2})`, `1 <= i, j <= n`.
pub fn build_mehta_wang_matrix(
    n: usize,
    a: &Scalar,
    b: &Scalar,
    c: &Scalar,
    q: &Scalar,
) -> Result<Matrix> {
    let aq = a * q;
    let abq2 = a * b * q * q;
    Matrix::try_from_fn(n, n, |i, j| {
        let (i, j) = (i as i64, j as i64);
        let lead = qpow(q, i)? - c * qpow(q, j)?;
        Ok(lead
            * pole_div(
                &qpoch(&aq, q, i + j)?,
                &qpoch(&abq2, q, i + j)?,
                "(abq^2;q)_{i+j-2}",
            )?)
    })
}

/// Closed form of the Mehta-Wang type determinant with `b = v^2` and
/// `c = u^2 / (aq)`.
pub fn rhs_mehta_wang(n: usize, a: &Scalar, u: &Scalar, v: &Scalar, q: &Scalar) -> Result<Scalar> {
    let ni = n as i64;
    let b = v * v;
    let aq = a * q;
    let abq2 = a * &b * q * q;
    let u2v2 = u * u * v * v;
    let mut pref = a.powi(ni * (ni - 3) / 2)?
        * qpow(q, ni * (ni + 1) * (2 * ni - 5) / 6)?
        * qpoch(&u2v2, &(q * q), ni)?;
    if n % 2 == 1 {
        pref = -pref;
    }
    let bq = &b * q;
    for k in 1..=ni {
        let num = qpoch(q, q, k - 1)? * qpoch(&aq, q, k)? * qpoch(&bq, q, k - 2)?;
        pref *= pole_div(&num, &qpoch(&abq2, q, k + ni - 2)?, "(abq^2;q)_{k+n-2}")?;
    }
    let uv = u * v;
    let spec = HypergeometricSpec::new(
        vec![qpow(q, -ni)?, a * &b * qpow(q, ni)?, u.clone(), -u],
        vec![aq, uv.clone(), -uv],
        q.clone(),
    );
    Ok(pref * phi_terminating(&spec, q, n)?)
}

/// Residual of the terminating q-Watson summation.
pub fn check_andrews_watson(n: usize, a: &Scalar, b: &Scalar, q: &Scalar) -> Result<Scalar> {
    let ni = n as i64;
    let a2 = a * a;
    let spec = HypergeometricSpec::new(
        vec![qpow(q, -ni)?, &a2 * qpow(q, ni + 1)?, b.clone(), -b],
        vec![a * q, -(a * q), b * b],
        q.clone(),
    );
    let lhs = phi_terminating(&spec, q, n)?;
    let rhs = if n % 2 == 1 {
        Scalar::zero()
    } else {
        let h = ni / 2;
        let q2 = q * q;
        let a2q2 = &a2 * &q2;
        let num = b.powu(n as u64) * qpoch_multi(&[q.clone(), a2q2.try_div(&(b * b))?], &q2, h)?;
        let den = qpoch_multi(&[a2q2, b * b * q], &q2, h)?;
        pole_div(&num, &den, "q-Watson denominator")?
    };
    Ok(lhs - rhs)
}

/// The `2m x 2m` skew-symmetric matrix of the even-order corollary.
pub fn build_even_det(m: usize, a: &Scalar, b: &Scalar, q: &Scalar) -> Result<Matrix> {
    build_mehta_wang_matrix(2 * m, a, b, &Scalar::one(), q)
}

/// `prod_{k=1}^m (q, aq; q)_{2k-1} (bq; q)_{2k-2} / (abq^2; q)_{2(k+m)-3}`.
fn pfaffian_product(m: usize, a: &Scalar, b: &Scalar, q: &Scalar) -> Result<Scalar> {
    let mi = m as i64;
    let aq = a * q;
    let bq = b * q;
    let abq2 = a * b * q * q;
    let mut out = Scalar::one();
    for k in 1..=mi {
        let num = qpoch_multi(&[q.clone(), aq.clone()], q, 2 * k - 1)? * qpoch(&bq, q, 2 * k - 2)?;
        out *= pole_div(
            &num,
            &qpoch(&abq2, q, 2 * (k + mi) - 3)?,
            "(abq^2;q)_{2(k+m)-3}",
        )?;
    }
    Ok(out)
}

/// Closed form of the even-order determinant.
pub fn rhs_even_det(m: usize, a: &Scalar, b: &Scalar, q: &Scalar) -> Result<Scalar> {
    let mi = m as i64;
    let pref = a.powi(2 * mi * (mi - 1))? * qpow(q, 2 * mi * (mi - 1) * (4 * mi + 1) / 3)?;
    Ok(pref * pfaffian_product(m, a, b, q)?.powu(2))
}

/// Closed form of the Pfaffian, with sign `+1`.
pub fn rhs_pfaffian(m: usize, a: &Scalar, b: &Scalar, q: &Scalar) -> Result<Scalar> {
    let mi = m as i64;
    let pref = a.powi(mi * (mi - 1))? * qpow(q, mi * (mi - 1) * (4 * mi + 1) / 3)?;
    Ok(pref * pfaffian_product(m, a, b, q)?)
}

/// `pf - rhs` for the even-order matrix.
pub fn check_pfaffian_product(m: usize, a: &Scalar, b: &Scalar, q: &Scalar) -> Result<Scalar> {
    let skew = SkewMatrix::new(build_even_det(m, a, b, q)?)?;
    Ok(pfaffian_matchings(&skew)? - rhs_pfaffian(m, a, b, q)?)
}

/// `((q^i - q^j) (q^alpha; q)_{i+j})`, `0 <= i, j <= 2m - 1`.
pub fn build_integer_exponent_matrix(m: usize, alpha: i64, q: &Scalar) -> Result<SkewMatrix> {
    let qa = qpow(q, alpha)?;
    SkewMatrix::from_upper(2 * m, |i, j| {
        let (i, j) = (i as i64, j as i64);
        Ok((qpow(q, i)? - qpow(q, j)?) * qpoch(&qa, q, i + j)?)
    })
}

/// Closed form of the integer-exponent Pfaffian.
pub fn rhs_integer_exponent(m: usize, alpha: i64, q: &Scalar) -> Result<Scalar> {
    let mi = m as i64;
    let qa = qpow(q, alpha)?;
    let mut out = qpow(
        q,
        mi * (mi - 1) * (alpha - 1) + mi * (mi - 1) * (4 * mi + 1) / 3,
    )?;
    for k in 1..=mi {
        out *= qpoch_multi(&[q.clone(), qa.clone()], q, 2 * k - 1)?;
    }
    Ok(out)
}

/// `((j - i) Gamma(alpha + i + j))`, `0 <= i, j <= 2m - 1`.
pub fn build_gamma_matrix(m: usize, alpha: i64) -> Result<SkewMatrix> {
    SkewMatrix::from_upper(2 * m, |i, j| {
        Ok(Scalar::from_int(j as i64 - i as i64) * gamma_int(alpha + (i + j) as i64)?)
    })
}

/// Residual of the Gamma-function Pfaffian at a positive integer `alpha`.
pub fn check_gamma_pfaffian(m: usize, alpha: i64) -> Result<Scalar> {
    if alpha < 1 {
        return Err(Error::Domain(format!(
            "alpha = {alpha} must be a positive integer"
        )));
    }
    let mut rhs = Scalar::one();
    for k in 1..=m as i64 {
        rhs *= gamma_int(2 * k)? * gamma_int(alpha + 2 * k - 1)?;
    }
    Ok(pfaffian_matchings(&build_gamma_matrix(m, alpha)?)? - rhs)
}
