//! Askey-Wilson polynomials, their moment functional and Newton
//! interpolation on the q-quadratic lattice.
//!
//! The angle variable never appears: a point is given by a nonzero
//! rational `z` with `x = (z + 1/z) / 2`, so that `a e^{i theta}` becomes
//! `a z` and `a e^{-i theta}` becomes `a / z`.

use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};
use crate::scalar::{one_minus, pole_div, qpoch, qpoch_multi, qpow, ParamPoint, Scalar};
use crate::series::{phi_terminating, HypergeometricSpec};

/// The four parameters and the base of the family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AWParams {
    pub a: Scalar,
    pub b: Scalar,
    pub c: Scalar,
    pub d: Scalar,
    pub q: Scalar,
}

impl AWParams {
    pub fn new(a: Scalar, b: Scalar, c: Scalar, d: Scalar, q: Scalar) -> Result<Self> {
        if q.is_zero() || q.abs().is_one() {
            return Err(Error::Domain(format!("base q = {q} must avoid 0, 1, -1")));
        }
        Ok(AWParams { a, b, c, d, q })
    }

    /// Reads `a, b, c, d, q` from a parameter point.
    pub fn from_point(pt: &ParamPoint) -> Result<Self> {
        AWParams::new(
            pt.get("a")?,
            pt.get("b")?,
            pt.get("c")?,
            pt.get("d")?,
            pt.get("q")?,
        )
    }

    /// Parameters reordered so that the new `a..d` are `old[perm[0]]..old[perm[3]]`.
    pub fn permuted(&self, perm: [usize; 4]) -> Self {
        let old = [&self.a, &self.b, &self.c, &self.d];
        AWParams {
            a: old[perm[0]].clone(),
            b: old[perm[1]].clone(),
            c: old[perm[2]].clone(),
            d: old[perm[3]].clone(),
            q: self.q.clone(),
        }
    }

    pub fn with_ab(&self, a: Scalar, b: Scalar) -> Self {
        AWParams {
            a,
            b,
            ..self.clone()
        }
    }

    pub fn abcd(&self) -> Scalar {
        &self.a * &self.b * &self.c * &self.d
    }
}

/// A point `x = (z + 1/z)/2` given through its nonzero `z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XPoint {
    z: Scalar,
}

impl XPoint {
    pub fn new(z: Scalar) -> Result<Self> {
        if z.is_zero() {
            return Err(Error::Domain("z must be nonzero".into()));
        }
        Ok(XPoint { z })
    }

    pub fn z(&self) -> &Scalar {
        &self.z
    }

    pub fn x(&self) -> Scalar {
        let zinv = self.z.recip().expect("z is nonzero");
        (&self.z + zinv) * Scalar::ratio(1, 2).expect("nonzero")
    }

    /// The point with `z` replaced by `1/z`; same `x`.
    pub fn inverted(&self) -> Self {
        XPoint {
            z: self.z.recip().expect("z is nonzero"),
        }
    }

    /// `(a z, a/z; q)_k`.
    pub fn basis_value(&self, a: &Scalar, q: &Scalar, k: i64) -> Result<Scalar> {
        let zinv = self.z.recip()?;
        Ok(qpoch(&(a * &self.z), q, k)? * qpoch(&(a * zinv), q, k)?)
    }
}

/// Polynomial in `x` stored by monomial coefficients, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PolynomialInX {
    coeffs: Vec<Scalar>,
}

impl PolynomialInX {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        PolynomialInX { coeffs }
    }

    pub fn zero() -> Self {
        PolynomialInX { coeffs: Vec::new() }
    }

    pub fn constant(c: Scalar) -> Self {
        Self::new(vec![c])
    }

    /// `c0 + c1 x`.
    pub fn linear(c0: Scalar, c1: Scalar) -> Self {
        Self::new(vec![c0, c1])
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Scalar {
        self.coeffs.last().cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.coeffs
            .iter()
            .rev()
            .fold(Scalar::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::constant(Scalar::one()), |acc, _| &acc * self)
    }

    /// Polynomial from Newton coefficients `c_k` over nodes `b_0, b_1, ...`:
    /// `sum_k c_k (x - b_0)...(x - b_{k-1})`.
    pub fn from_newton(coeffs: &[Scalar], nodes: &[Scalar]) -> Self {
        let mut acc = PolynomialInX::zero();
        for k in (0..coeffs.len()).rev() {
            if k < coeffs.len() - 1 {
                acc = &acc * &PolynomialInX::linear(-&nodes[k], Scalar::one());
            }
            acc = &acc + &PolynomialInX::constant(coeffs[k].clone());
        }
        acc
    }

    /// `(a z, a/z; q)_k = prod_{i<k} (1 - 2 a q^i x + a^2 q^{2i})` as a polynomial in `x`.
    pub fn lattice_basis(a: &Scalar, q: &Scalar, k: usize) -> Self {
        let mut acc = PolynomialInX::constant(Scalar::one());
        let mut aqi = a.clone();
        for _ in 0..k {
            let factor =
                PolynomialInX::linear(Scalar::one() + &aqi * &aqi, -(Scalar::from_int(2) * &aqi));
            acc = &acc * &factor;
            aqi *= q;
        }
        acc
    }
}

impl<'a> Add<&'a PolynomialInX> for &'a PolynomialInX {
    type Output = PolynomialInX;
    fn add(self, rhs: &PolynomialInX) -> PolynomialInX {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PolynomialInX::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<'a> Sub<&'a PolynomialInX> for &'a PolynomialInX {
    type Output = PolynomialInX;
    fn sub(self, rhs: &PolynomialInX) -> PolynomialInX {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PolynomialInX::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<'a> Mul<&'a PolynomialInX> for &'a PolynomialInX {
    type Output = PolynomialInX;
    fn mul(self, rhs: &PolynomialInX) -> PolynomialInX {
        if self.is_zero() || rhs.is_zero() {
            return PolynomialInX::zero();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            for (j, y) in rhs.coeffs.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        PolynomialInX::new(out)
    }
}

/// `p_n(x; a, b, c, d; q)` at the point `x = (z + 1/z)/2`.
pub fn aw_poly(n: usize, p: &AWParams, pt: &XPoint) -> Result<Scalar> {
    let q = &p.q;
    let ni = n as i64;
    let ab = &p.a * &p.b;
    let ac = &p.a * &p.c;
    let ad = &p.a * &p.d;
    let spec = HypergeometricSpec::new(
        vec![
            qpow(q, -ni)?,
            p.abcd() * qpow(q, ni - 1)?,
            &p.a * pt.z(),
            p.a.try_div(pt.z())?,
        ],
        vec![ab.clone(), ac.clone(), ad.clone()],
        q.clone(),
    );
    let sum = phi_terminating(&spec, q, n)?;
    let pref = qpoch_multi(&[ab, ac, ad], q, ni)?;
    pole_div(&(pref * sum), &p.a.powu(n as u64), "a^n")
}

/// `2^n (abcd q^{n-1}; q)_n`, the coefficient of `x^n` in `p_n`.
pub fn aw_leading_coeff(n: usize, p: &AWParams) -> Result<Scalar> {
    let ni = n as i64;
    let top = p.abcd() * qpow(&p.q, ni - 1)?;
    Ok(Scalar::from_int(2).powu(n as u64) * qpoch(&top, &p.q, ni)?)
}

/// `p_n` expanded in powers of `x`, interpolated at `z = 2, 3, ..., n + 2`.
pub fn aw_poly_as_polynomial(n: usize, p: &AWParams) -> Result<PolynomialInX> {
    let mut nodes = Vec::with_capacity(n + 1);
    let mut values = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let pt = XPoint::new(Scalar::from_int(k as i64 + 2))?;
        nodes.push(pt.x());
        values.push(aw_poly(n, p, &pt)?);
    }
    let c = newton_coeffs(&nodes, &values).map_err(|e| match e {
        Error::DuplicateNodes => Error::InterpolationDegenerate,
        other => other,
    })?;
    Ok(PolynomialInX::from_newton(&c, &nodes))
}

/// Norm ratio `h_n / h_0`.
pub fn aw_norm_ratio(n: usize, p: &AWParams) -> Result<Scalar> {
    if n == 0 {
        return Ok(Scalar::one());
    }
    let q = &p.q;
    let ni = n as i64;
    let abcd = p.abcd();
    let pairs = [
        q.clone(),
        &p.a * &p.b,
        &p.a * &p.c,
        &p.a * &p.d,
        &p.b * &p.c,
        &p.b * &p.d,
        &p.c * &p.d,
    ];
    let num = one_minus(&(&abcd * qpow(q, ni - 1)?)) * qpoch_multi(&pairs, q, ni)?;
    let den = one_minus(&(&abcd * qpow(q, 2 * ni - 1)?)) * qpoch(&abcd, q, ni)?;
    pole_div(&num, &den, "h_n/h_0 denominator")
}

/// Moment of the lattice basis: `L((a z, a/z; q)_n) = (ab, ac, ad; q)_n / (abcd; q)_n`.
pub fn basis_moment(n: usize, p: &AWParams) -> Result<Scalar> {
    let q = &p.q;
    let ni = n as i64;
    let num = qpoch_multi(&[&p.a * &p.b, &p.a * &p.c, &p.a * &p.d], q, ni)?;
    let den = qpoch(&p.abcd(), q, ni)?;
    pole_div(&num, &den, "(abcd;q)_n")
}

/// Lattice node `(q^j a + q^{-j}/a) / 2`.
pub fn lattice_node(a: &Scalar, q: &Scalar, j: i64) -> Result<Scalar> {
    let qj = qpow(q, j)?;
    let qja = &qj * a;
    let v = qja.recip()? + &qja;
    Ok(v * Scalar::ratio(1, 2)?)
}

/// Weight `q^{k-j^2} a^{-2j} / ((q, q^{1-2j}/a^2; q)_j (q, q^{2j+1} a^2; q)_{k-j})`
/// multiplying `f(b_j)` in the lattice Newton formula.
fn lattice_weight(a: &Scalar, q: &Scalar, k: i64, j: i64) -> Result<Scalar> {
    let a2 = a * a;
    let num = qpow(q, k - j * j)? * a2.powi(-j)?;
    let den = qpoch(q, q, j)?
        * qpoch(&qpow(q, 1 - 2 * j)?.try_div(&a2)?, q, j)?
        * qpoch(q, q, k - j)?
        * qpoch(&(qpow(q, 2 * j + 1)? * &a2), q, k - j)?;
    if den.is_zero() {
        return Err(Error::DegenerateLattice);
    }
    num.try_div(&den)
}

/// Moments `L((t + x)^n)` from the explicit double sum over the lattice.
pub fn aw_moment(n: usize, t: &Scalar, p: &AWParams) -> Result<Scalar> {
    let (a, q) = (&p.a, &p.q);
    let ni = n as i64;
    let nodes: Vec<Scalar> = (0..=ni)
        .map(|j| lattice_node(a, q, j))
        .collect::<Result<_>>()?;
    let powers: Vec<Scalar> = nodes.iter().map(|b| (t + b).powu(n as u64)).collect();
    let mut total = Scalar::zero();
    for k in 0..=ni {
        let mut inner = Scalar::zero();
        for j in 0..=k {
            inner += lattice_weight(a, q, k, j)? * &powers[j as usize];
        }
        total += basis_moment(k as usize, p)? * inner;
    }
    Ok(total)
}

/// Newton divided-difference coefficients
/// `c_k = sum_{j<=k} f(b_j) / prod_{r<=k, r!=j} (b_j - b_r)`.
pub fn newton_coeffs(nodes: &[Scalar], values: &[Scalar]) -> Result<Vec<Scalar>> {
    if nodes.len() != values.len() {
        return Err(Error::Index(format!(
            "{} nodes but {} values",
            nodes.len(),
            values.len()
        )));
    }
    for (i, x) in nodes.iter().enumerate() {
        if nodes[..i].contains(x) {
            return Err(Error::DuplicateNodes);
        }
    }
    let n = nodes.len();
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let mut ck = Scalar::zero();
        for j in 0..=k {
            let den: Scalar = (0..=k)
                .filter(|&r| r != j)
                .map(|r| &nodes[j] - &nodes[r])
                .product();
            ck += values[j].try_div(&den)?;
        }
        out.push(ck);
    }
    Ok(out)
}

/// Coefficients `u_k` with `f(x) = sum_k u_k (a z, a/z; q)_k`, `k = 0..=n`.
pub fn newton_lattice_coeffs(
    f: &PolynomialInX,
    a: &Scalar,
    q: &Scalar,
    n: usize,
) -> Result<Vec<Scalar>> {
    if f.degree().unwrap_or(0) > n {
        return Err(Error::Domain(format!(
            "degree {} exceeds expansion order {n}",
            f.degree().unwrap_or(0)
        )));
    }
    let ni = n as i64;
    let nodes: Vec<Scalar> = (0..=ni)
        .map(|j| lattice_node(a, q, j))
        .collect::<Result<_>>()?;
    for (i, x) in nodes.iter().enumerate() {
        if nodes[..i].contains(x) {
            return Err(Error::DegenerateLattice);
        }
    }
    let values: Vec<Scalar> = nodes.iter().map(|b| f.eval(b)).collect();
    (0..=ni)
        .map(|k| {
            (0..=k).try_fold(Scalar::zero(), |acc, j| {
                Ok(acc + lattice_weight(a, q, k, j)? * &values[j as usize])
            })
        })
        .collect()
}

/// The moment functional applied to `f` through its lattice Newton expansion.
pub fn moment_functional(f: &PolynomialInX, p: &AWParams) -> Result<Scalar> {
    let Some(deg) = f.degree() else {
        return Ok(Scalar::zero());
    };
    let u = newton_lattice_coeffs(f, &p.a, &p.q, deg)?;
    u.iter()
        .enumerate()
        .try_fold(Scalar::zero(), |acc, (k, uk)| {
            Ok(acc + uk * basis_moment(k, p)?)
        })
}

/// Connection coefficient `u(n, k)` in
/// `(x + a_0)...(x + a_{n-1}) = sum_k u(n, k) (x - b_0)...(x - b_{k-1})`.
///
/// The sum is a divided difference, so `k > n` gives zero.
pub fn connection_u(n: usize, k: usize, a_list: &[Scalar], b_list: &[Scalar]) -> Result<Scalar> {
    if a_list.len() < n || b_list.len() <= k {
        return Err(Error::Index(format!(
            "u({n},{k}) needs {n} shifts and {} nodes",
            k + 1
        )));
    }
    let bs = &b_list[..=k];
    for (i, x) in bs.iter().enumerate() {
        if bs[..i].contains(x) {
            return Err(Error::DuplicateNodes);
        }
    }
    let mut total = Scalar::zero();
    for (r, br) in bs.iter().enumerate() {
        let num: Scalar = a_list[..n].iter().map(|aj| br + aj).product();
        let den: Scalar = bs
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != r)
            .map(|(_, bj)| br - bj)
            .product();
        total += num.try_div(&den)?;
    }
    Ok(total)
}
