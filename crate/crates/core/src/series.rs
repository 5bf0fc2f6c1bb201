//! Truncated power series in `z` and basic hypergeometric series.

use crate::error::{Error, Result};
use crate::scalar::{one_minus, pole_div, qpoch, qpoch_multi, qpow, Scalar};

/// Default truncation order of series checks.
pub const DEFAULT_ORDER: usize = 12;

/// Parameters of an `r phi s` series: numerators, denominators and base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypergeometricSpec {
    pub numerators: Vec<Scalar>,
    pub denominators: Vec<Scalar>,
    pub base: Scalar,
}

impl HypergeometricSpec {
    pub fn new(numerators: Vec<Scalar>, denominators: Vec<Scalar>, base: Scalar) -> Self {
        HypergeometricSpec {
            numerators,
            denominators,
            base,
        }
    }

    pub fn r(&self) -> usize {
        self.numerators.len()
    }

    pub fn s(&self) -> usize {
        self.denominators.len()
    }

    /// Exponent `1 + s - r` of the sign power `(-1)^n q^{n(n-1)/2}`.
    pub fn sign_power_exponent(&self) -> i64 {
        1 + self.s() as i64 - self.r() as i64
    }

    /// `Some(m)` if a numerator equals `q^{-m}` for `m <= max`.
    pub fn termination_order(&self, max: usize) -> Option<usize> {
        let mut qm = Scalar::one();
        let qinv = self.base.recip().ok()?;
        for m in 0..=max {
            if self.numerators.contains(&qm) {
                return Some(m);
            }
            qm *= &qinv;
        }
        None
    }

    /// Ratio `t_{n+1} / t_n` of consecutive coefficients.
    fn term_ratio(&self, n: usize) -> Result<Scalar> {
        let q = &self.base;
        let qn = q.powu(n as u64);
        let num: Scalar = self
            .numerators
            .iter()
            .map(|a| one_minus(&(a * &qn)))
            .product();
        let den: Scalar = self
            .denominators
            .iter()
            .map(|b| one_minus(&(b * &qn)))
            .product::<Scalar>()
            * one_minus(&(&qn * q));
        let mut ratio = pole_div(&num, &den, "hypergeometric term denominator")?;
        let e = self.sign_power_exponent();
        if e != 0 {
            ratio *= (-qn).powi(e)?;
        }
        Ok(ratio)
    }

    /// Coefficients `t_0..=t_count-1`, built incrementally.
    pub fn terms(&self, count: usize) -> Result<Vec<Scalar>> {
        let mut out = Vec::with_capacity(count);
        let mut t = Scalar::one();
        for n in 0..count {
            if n > 0 {
                t *= self.term_ratio(n - 1)?;
            }
            out.push(t.clone());
        }
        Ok(out)
    }
}

/// Coefficient of `z^n` in the series, computed from its closed form.
pub fn phi_term(spec: &HypergeometricSpec, n: usize) -> Result<Scalar> {
    let q = &spec.base;
    let n = n as i64;
    let num = qpoch_multi(&spec.numerators, q, n)?;
    let den = qpoch_multi(&spec.denominators, q, n)? * qpoch(q, q, n)?;
    let t = pole_div(&num, &den, "hypergeometric term denominator")?;
    let sign = if n % 2 == 0 {
        Scalar::one()
    } else {
        -Scalar::one()
    };
    let power = (sign * qpow(q, n * (n - 1) / 2)?).powi(spec.sign_power_exponent())?;
    Ok(t * power)
}

/// Series `sum_n t_n (scale z)^n` truncated at `order`.
pub fn phi_series(
    spec: &HypergeometricSpec,
    argument_scale: &Scalar,
    order: usize,
) -> Result<TruncatedSeries> {
    let mut coeffs = spec.terms(order + 1)?;
    let mut power = Scalar::one();
    for c in coeffs.iter_mut().skip(1) {
        power *= argument_scale;
        *c *= &power;
    }
    Ok(TruncatedSeries { coeffs })
}

/// Exact value of a series terminating at order `m`, at `z = z_value`.
pub fn phi_terminating(spec: &HypergeometricSpec, z_value: &Scalar, m: usize) -> Result<Scalar> {
    let qm = spec.base.powi(-(m as i64))?;
    if !spec.numerators.contains(&qm) {
        return Err(Error::NotTerminating(m));
    }
    let terms = spec.terms(m + 1)?;
    let mut zp = Scalar::one();
    let mut acc = Scalar::zero();
    for t in terms {
        acc += t * &zp;
        zp *= z_value;
    }
    Ok(acc)
}

/// Dense coefficients `c_0..=c_N` of a power series modulo `z^{N+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Scalar>,
}

impl TruncatedSeries {
    /// Series from coefficients `c_0..=c_N`; an empty vector is order 0 zero.
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(Scalar::zero());
        }
        TruncatedSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![Scalar::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = Scalar::one();
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, index: usize) -> Result<&Scalar> {
        self.coeffs.get(index).ok_or(Error::BeyondOrder {
            index,
            order: self.order(),
        })
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Scalar> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Multiply by `z`, dropping the coefficient pushed past the order.
    pub fn shift(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        coeffs.push(Scalar::zero());
        coeffs.extend(self.coeffs[..self.order()].iter().cloned());
        TruncatedSeries { coeffs }
    }

    /// Value of the truncated polynomial at `z`.
    pub fn eval(&self, z: &Scalar) -> Scalar {
        self.coeffs
            .iter()
            .rev()
            .fold(Scalar::zero(), |acc, c| acc * z + c)
    }
}

/// Cauchy product truncated at the common order.
pub fn series_mul(u: &TruncatedSeries, v: &TruncatedSeries) -> Result<TruncatedSeries> {
    if u.order() != v.order() {
        return Err(Error::OrderMismatch(u.order(), v.order()));
    }
    let n = u.order();
    let mut coeffs = vec![Scalar::zero(); n + 1];
    for (i, ui) in u.coeffs.iter().enumerate() {
        if ui.is_zero() {
            continue;
        }
        for (j, vj) in v.coeffs[..=n - i].iter().enumerate() {
            coeffs[i + j] += ui * vj;
        }
    }
    Ok(TruncatedSeries { coeffs })
}

/// Coefficientwise `sum c_i u_i`.
pub fn series_linear_combine(terms: &[(Scalar, &TruncatedSeries)]) -> Result<TruncatedSeries> {
    let Some((_, first)) = terms.first() else {
        return Err(Error::Config("empty linear combination".into()));
    };
    let n = first.order();
    let mut acc = TruncatedSeries::zero(n);
    for (c, u) in terms {
        if u.order() != n {
            return Err(Error::OrderMismatch(n, u.order()));
        }
        for (a, x) in acc.coeffs.iter_mut().zip(&u.coeffs) {
            *a += c * x;
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(n: i64, d: i64) -> Scalar {
        Scalar::ratio(n, d).unwrap()
    }

    fn ser(v: &[i64]) -> TruncatedSeries {
        TruncatedSeries::new(v.iter().map(|&x| Scalar::from_int(x)).collect())
    }

    #[test]
    fn phi_term_basics() {
        let q = s(2, 7);
        let spec = HypergeometricSpec::new(vec![s(3, 5), s(-1, 4)], vec![s(5, 9)], q.clone());
        assert_eq!(phi_term(&spec, 0).unwrap(), Scalar::one());

        // terminating numerator q^{-2}
        let qm2 = q.powi(-2).unwrap();
        let spec = HypergeometricSpec::new(vec![qm2, s(3, 5)], vec![s(5, 9)], q.clone());
        for n in 3..7 {
            assert!(phi_term(&spec, n).unwrap().is_zero());
        }

        // q-binomial term
        let a = s(3, 11);
        let spec = HypergeometricSpec::new(vec![a.clone()], vec![], q.clone());
        for n in 0..5 {
            let expect = qpoch(&a, &q, n)
                .unwrap()
                .try_div(&qpoch(&q, &q, n).unwrap())
                .unwrap();
            assert_eq!(phi_term(&spec, n as usize).unwrap(), expect);
        }
    }

    #[test]
    fn incremental_terms_match_closed_form() {
        let q = s(-3, 7);
        // r > s + 1 gives a negative sign-power exponent
        for (r, sd) in [(0, 0), (1, 0), (0, 2), (3, 1), (4, 1), (2, 2)] {
            let nums = (0..r).map(|i| s(2 * i as i64 + 1, 9)).collect();
            let dens = (0..sd).map(|i| s(-5, 3 + i as i64)).collect();
            let spec = HypergeometricSpec::new(nums, dens, q.clone());
            let terms = spec.terms(7).unwrap();
            for (n, t) in terms.iter().enumerate() {
                assert_eq!(*t, phi_term(&spec, n).unwrap(), "r={r} s={sd} n={n}");
            }
        }
    }

    #[test]
    fn phi_series_examples() {
        let q = s(1, 3);
        let spec = HypergeometricSpec::new(vec![s(1, 2)], vec![s(1, 5)], q.clone());
        assert_eq!(phi_series(&spec, &Scalar::one(), 0).unwrap(), ser(&[1]));
        assert_eq!(
            phi_series(&spec, &Scalar::zero(), 4).unwrap(),
            ser(&[1, 0, 0, 0, 0])
        );

        let spec = HypergeometricSpec::new(vec![q.powi(-2).unwrap()], vec![], q.clone());
        let f = phi_series(&spec, &Scalar::one(), 5).unwrap();
        assert!(!f.coeff(2).unwrap().is_zero());
        for n in 3..=5 {
            assert!(f.coeff(n).unwrap().is_zero());
        }
        assert!(matches!(f.coeff(6), Err(Error::BeyondOrder { .. })));
    }

    #[test]
    fn phi_series_pole() {
        let q = s(1, 3);
        // denominator q^{-1} zeroes (q^{-1};q)_2
        let spec = HypergeometricSpec::new(vec![s(1, 2)], vec![q.recip().unwrap()], q);
        assert!(matches!(
            phi_series(&spec, &Scalar::one(), 4),
            Err(Error::Pole(_))
        ));
    }

    #[test]
    fn phi_terminating_examples() {
        let q = s(2, 5);
        let b = s(3, 7);
        let c = s(-4, 9);
        let z = s(5, 6);
        let spec0 =
            HypergeometricSpec::new(vec![Scalar::one(), b.clone()], vec![c.clone()], q.clone());
        assert_eq!(phi_terminating(&spec0, &z, 0).unwrap(), Scalar::one());

        let qm1 = q.recip().unwrap();
        let spec =
            HypergeometricSpec::new(vec![qm1.clone(), b.clone()], vec![c.clone()], q.clone());
        assert_eq!(
            phi_terminating(&spec, &Scalar::zero(), 1).unwrap(),
            Scalar::one()
        );
        let expect = Scalar::one()
            + (one_minus(&qm1) * one_minus(&b))
                .try_div(&(one_minus(&q) * one_minus(&c)))
                .unwrap()
                * &z;
        assert_eq!(phi_terminating(&spec, &z, 1).unwrap(), expect);
        assert_eq!(phi_terminating(&spec, &z, 2), Err(Error::NotTerminating(2)));
    }

    #[test]
    fn terminating_agrees_with_series() {
        let q = s(3, 4);
        let spec = HypergeometricSpec::new(
            vec![q.powi(-3).unwrap(), s(2, 9), s(-7, 3)],
            vec![s(1, 6), s(5, 2)],
            q.clone(),
        );
        let z = s(-2, 7);
        let series = phi_series(&spec, &Scalar::one(), 6).unwrap();
        assert_eq!(series.eval(&z), phi_terminating(&spec, &z, 3).unwrap());
    }

    #[test]
    fn q_binomial_recurrence() {
        // (1 - z) F(a; z) = (1 - a z) F(a; q z)
        let q = s(-2, 9);
        let a = s(7, 4);
        let scale = s(3, 5);
        let n = 10;
        let spec = HypergeometricSpec::new(vec![a.clone()], vec![], q.clone());
        let f = phi_series(&spec, &scale, n).unwrap();
        let fq = phi_series(&spec, &(&scale * &q), n).unwrap();
        let lhs =
            series_linear_combine(&[(Scalar::one(), &f), (-scale.clone(), &f.shift())]).unwrap();
        let rhs =
            series_linear_combine(&[(Scalar::one(), &fq), (-(&a * &scale), &fq.shift())]).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn mul_examples() {
        let u = ser(&[3, -1, 4, 1]);
        assert_eq!(series_mul(&u, &ser(&[1, 0, 0, 0])).unwrap(), u);
        assert_eq!(
            series_mul(&ser(&[0, 1, 0, 0]), &ser(&[0, 1, 0, 0])).unwrap(),
            ser(&[0, 0, 1, 0])
        );
        assert_eq!(
            series_mul(&ser(&[1, 1]), &ser(&[1, -1])).unwrap(),
            ser(&[1, 0])
        );
        assert_eq!(
            series_mul(&ser(&[1, 1]), &ser(&[1])),
            Err(Error::OrderMismatch(1, 0))
        );
    }

    #[test]
    fn combine_examples() {
        let u = ser(&[5, -2, 3]);
        assert_eq!(series_linear_combine(&[(Scalar::one(), &u)]).unwrap(), u);
        assert!(
            series_linear_combine(&[(Scalar::one(), &u), (-Scalar::one(), &u)])
                .unwrap()
                .is_zero()
        );
        let a = ser(&[1, 2]);
        let b = ser(&[0, 1]);
        assert_eq!(
            series_linear_combine(&[(Scalar::from_int(2), &a), (Scalar::from_int(3), &b)]).unwrap(),
            ser(&[2, 7])
        );
        assert!(series_linear_combine(&[(Scalar::one(), &a), (Scalar::one(), &u)]).is_err());
    }

    fn series_strategy(order: usize) -> impl Strategy<Value = TruncatedSeries> {
        proptest::collection::vec(-20i64..20, order + 1).prop_map(|v| ser(&v))
    }

    proptest! {
        #[test]
        fn mul_commutes_and_associates(
            u in series_strategy(6),
            v in series_strategy(6),
            w in series_strategy(6),
        ) {
            prop_assert_eq!(series_mul(&u, &v).unwrap(), series_mul(&v, &u).unwrap());
            let left = series_mul(&series_mul(&u, &v).unwrap(), &w).unwrap();
            let right = series_mul(&u, &series_mul(&v, &w).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }
    }
}
