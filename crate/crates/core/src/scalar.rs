//! Exact rationals, q-shifted factorials and random parameter points.
//!
//! Every quantity in the crate is a [`Scalar`]: an arbitrary precision
//! rational kept in lowest terms. Division is always checked, so a zero
//! denominator surfaces as an [`Error`] instead of a panic.

use std::collections::BTreeMap;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Exact rational number in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Scalar(BigRational);

impl Scalar {
    pub fn zero() -> Self {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar(BigRational::from_integer(BigInt::from(n)))
    }

    /// `numer / denom`, failing on a zero denominator.
    pub fn ratio(numer: i64, denom: i64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar(BigRational::new(
            BigInt::from(numer),
            BigInt::from(denom),
        )))
    }

    pub fn from_bigints(numer: BigInt, denom: BigInt) -> Result<Self> {
        if denom.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar(BigRational::new(numer, denom)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Scalar(self.0.abs())
    }

    pub fn try_div(&self, rhs: &Scalar) -> Result<Scalar> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar(&self.0 / &rhs.0))
    }

    pub fn recip(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar(self.0.recip()))
    }

    /// Nonnegative integer power; `0^0 = 1`.
    pub fn powu(&self, e: u64) -> Scalar {
        let mut base = self.clone();
        let mut e = e;
        let mut acc = Scalar::one();
        while e > 0 {
            if e & 1 == 1 {
                acc *= &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Signed integer power; a negative power of zero is an error.
    pub fn powi(&self, e: i64) -> Result<Scalar> {
        if e >= 0 {
            Ok(self.powu(e as u64))
        } else {
            self.recip().map(|r| r.powu(e.unsigned_abs()))
        }
    }

    /// Nearest `f64`, for display and plotting only.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Bit length of numerator plus denominator, a rough size measure.
    pub fn height_bits(&self) -> u64 {
        self.0.numer().bits() + self.0.denom().bits()
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Scalar {
    type Err = Error;

    /// Accepts `p`, `-p` or `p/r` with integer `p`, `r`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parse = |t: &str| {
            BigInt::from_str(t.trim()).map_err(|_| Error::Parse(format!("not a rational: `{s}`")))
        };
        match s.split_once('/') {
            Some((n, d)) => Scalar::from_bigints(parse(n)?, parse(d)?),
            None => Ok(Scalar(BigRational::from_integer(parse(s)?))),
        }
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<i32> for Scalar {
    fn from(n: i32) -> Self {
        Scalar::from_int(n as i64)
    }
}

impl From<BigInt> for Scalar {
    fn from(n: BigInt) -> Self {
        Scalar(BigRational::from_integer(n))
    }
}

macro_rules! forward_binop {
    ($Trait:ident, $method:ident, $AssignTrait:ident, $assign:ident) => {
        impl $Trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar(self.0.$method(rhs.0))
            }
        }
        impl<'a> $Trait<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                Scalar(self.0.$method(&rhs.0))
            }
        }
        impl<'a> $Trait<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar((&self.0).$method(rhs.0))
            }
        }
        impl<'a, 'b> $Trait<&'b Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'b Scalar) -> Scalar {
                Scalar((&self.0).$method(&rhs.0))
            }
        }
        impl $AssignTrait<Scalar> for Scalar {
            fn $assign(&mut self, rhs: Scalar) {
                self.0.$assign(rhs.0);
            }
        }
        impl<'a> $AssignTrait<&'a Scalar> for Scalar {
            fn $assign(&mut self, rhs: &'a Scalar) {
                self.0.$assign(&rhs.0);
            }
        }
    };
}

forward_binop!(Add, add, AddAssign, add_assign);
forward_binop!(Sub, sub, SubAssign, sub_assign);
forward_binop!(Mul, mul, MulAssign, mul_assign);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-&self.0)
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Scalar> for Scalar {
    fn sum<I: Iterator<Item = &'a Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

impl Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::one(), |acc, x| acc * x)
    }
}

impl<'a> Product<&'a Scalar> for Scalar {
    fn product<I: Iterator<Item = &'a Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::one(), |acc, x| acc * x)
    }
}

/// `1 - x`, the factor every q-product is built from.
pub fn one_minus(x: &Scalar) -> Scalar {
    Scalar::one() - x
}

/// Quotient that reports a zero denominator as a pole of `what`.
pub fn pole_div(num: &Scalar, den: &Scalar, what: &str) -> Result<Scalar> {
    if den.is_zero() {
        return Err(Error::Pole(what.to_string()));
    }
    num.try_div(den)
}

/// q-shifted factorial `(a;q)_n` for any integer `n`.
///
/// Negative orders use `(a;q)_{-m} = 1 / prod_{k=1}^{m} (1 - a q^{-k})`.
pub fn qpoch(a: &Scalar, q: &Scalar, n: i64) -> Result<Scalar> {
    if n >= 0 {
        let mut acc = Scalar::one();
        let mut aq = a.clone();
        for _ in 0..n {
            acc *= one_minus(&aq);
            aq *= q;
        }
        Ok(acc)
    } else {
        let qinv = q.recip()?;
        let mut den = Scalar::one();
        let mut aq = a * &qinv;
        for _ in 0..n.unsigned_abs() {
            den *= one_minus(&aq);
            aq *= &qinv;
        }
        pole_div(&Scalar::one(), &den, &format!("({a};{q})_{n}"))
    }
}

/// `(a_1, ..., a_r; q)_n`, the product of the individual factorials.
pub fn qpoch_multi(params: &[Scalar], q: &Scalar, n: i64) -> Result<Scalar> {
    params
        .iter()
        .map(|a| qpoch(a, q, n))
        .try_fold(Scalar::one(), |acc, x| Ok(acc * x?))
}

/// q-factorial `[n]_q! = prod_{k=1}^n (1 - q^k) / (1 - q)`.
pub fn qfactorial(n: u32, q: &Scalar) -> Result<Scalar> {
    let den = one_minus(q);
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let num = qpoch(q, q, n as i64)?;
    num.try_div(&den.powu(n as u64))
}

/// `Gamma(n) = (n-1)!` at a positive integer.
pub fn gamma_int(n: i64) -> Result<Scalar> {
    if n <= 0 {
        return Err(Error::Domain(format!("Gamma at nonpositive integer {n}")));
    }
    let mut acc = BigInt::one();
    for k in 2..n {
        acc *= k;
    }
    Ok(Scalar::from(acc))
}

/// Integer power of `q` with a possibly negative exponent.
pub fn qpow(q: &Scalar, e: i64) -> Result<Scalar> {
    q.powi(e)
}

/// Named parameter assignment drawn for one trial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamPoint {
    values: BTreeMap<String, Scalar>,
    seed: u64,
}

impl ParamPoint {
    pub fn new(seed: u64) -> Self {
        ParamPoint {
            values: BTreeMap::new(),
            seed,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn with(mut self, name: &str, value: Scalar) -> Self {
        self.values.insert(name.to_string(), value);
        self
    }

    pub fn set(&mut self, name: &str, value: Scalar) {
        self.values.insert(name.to_string(), value);
    }

    pub fn get(&self, name: &str) -> Result<Scalar> {
        self.values
            .get(name)
            .cloned()
            .ok_or_else(|| Error::MissingParameter(name.to_string()))
    }

    /// `prefix1, ..., prefix{len}` as a vector.
    pub fn vector(&self, prefix: &str, len: usize) -> Result<Vec<Scalar>> {
        self.indexed(prefix, 1..len + 1)
    }

    /// `prefix{i}` for each `i` in `indices`.
    pub fn indexed(&self, prefix: &str, indices: std::ops::Range<usize>) -> Result<Vec<Scalar>> {
        indices.map(|i| self.get(&format!("{prefix}{i}"))).collect()
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.values.keys().map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Scalar)> {
        self.values.iter().map(|(k, v)| (k.as_str(), v))
    }
}

impl fmt::Display for ParamPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (k, v)) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{k}={v}")?;
        }
        write!(f, "}} (seed {})", self.seed)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SamplerConfig {
    /// Bound on `|p|` and `r` for sampled rationals `p/r`.
    pub height: u32,
    pub retry_cap: usize,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig {
            height: 40,
            retry_cap: 1000,
        }
    }
}

/// Deterministic stream of candidate parameter points.
pub struct Sampler {
    rng: ChaCha8Rng,
    seed: u64,
    config: SamplerConfig,
}

impl Sampler {
    pub fn new(seed: u64, config: SamplerConfig) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            seed,
            config,
        }
    }

    /// Uniform `p/r` with `1 <= |p|, r <= height`.
    pub fn rational(&mut self) -> Scalar {
        let h = self.config.height.max(1) as i64;
        let mut p = self.rng.gen_range(1..=h);
        if self.rng.gen_bool(0.5) {
            p = -p;
        }
        let r = self.rng.gen_range(1..=h);
        Scalar(BigRational::new(BigInt::from(p), BigInt::from(r)))
    }

    pub fn candidate(&mut self, names: &[String]) -> ParamPoint {
        let mut pt = ParamPoint::new(self.seed);
        for name in names {
            let v = loop {
                let v = self.rational();
                if name != "q" || !v.abs().is_one() {
                    break v;
                }
            };
            pt.values.insert(name.clone(), v);
        }
        pt
    }

    /// Next candidate satisfying `constraint`, up to the retry cap.
    pub fn next_point(
        &mut self,
        names: &[String],
        constraint: impl Fn(&ParamPoint) -> bool,
    ) -> Result<ParamPoint> {
        for _ in 0..self.config.retry_cap {
            let pt = self.candidate(names);
            if constraint(&pt) {
                return Ok(pt);
            }
        }
        Err(Error::SamplingExhausted(self.config.retry_cap))
    }
}

/// Draw a parameter point deterministically from `seed`.
///
/// Values are nonzero small-height rationals; `q` additionally avoids
/// `{0, 1, -1}`. Candidates failing `constraint` are redrawn.
pub fn sample_point(
    names: &[String],
    constraint: impl Fn(&ParamPoint) -> bool,
    seed: u64,
    config: SamplerConfig,
) -> Result<ParamPoint> {
    Sampler::new(seed, config).next_point(names, constraint)
}

/// Convenience for building name lists.
pub fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(n: i64, d: i64) -> Scalar {
        Scalar::ratio(n, d).unwrap()
    }

    #[test]
    fn lowest_terms() {
        let x = s(6, -4);
        assert_eq!(x.numer(), &BigInt::from(-3));
        assert_eq!(x.denom(), &BigInt::from(2));
        assert_eq!("-3/2".parse::<Scalar>().unwrap(), x);
        assert_eq!(x.to_string(), "-3/2");
    }

    #[test]
    fn division_by_zero_is_error() {
        assert_eq!(
            Scalar::one().try_div(&Scalar::zero()),
            Err(Error::DivisionByZero)
        );
        assert_eq!(Scalar::zero().powi(-1), Err(Error::DivisionByZero));
        assert!(Scalar::ratio(1, 0).is_err());
        assert!("1/0".parse::<Scalar>().is_err());
    }

    #[test]
    fn qpoch_examples() {
        let q = s(1, 3);
        let a = s(2, 7);
        assert_eq!(qpoch(&a, &q, 0).unwrap(), Scalar::one());
        assert_eq!(qpoch(&s(1, 2), &s(1, 3), 2).unwrap(), s(5, 12));
        let b = s(5, 11);
        assert_eq!(
            qpoch(&(&b * &q), &q, -1).unwrap(),
            one_minus(&b).recip().unwrap()
        );
    }

    #[test]
    fn qpoch_negative_pole() {
        // (q;q)_{-1} = 1/(1 - 1)
        let q = s(1, 3);
        assert!(matches!(qpoch(&q, &q, -1), Err(Error::Pole(_))));
    }

    #[test]
    fn qpoch_multi_examples() {
        let q = s(1, 5);
        assert_eq!(qpoch_multi(&[], &q, 5).unwrap(), Scalar::one());
        let a = s(3, 4);
        assert_eq!(
            qpoch_multi(std::slice::from_ref(&a), &q, 3).unwrap(),
            qpoch(&a, &q, 3).unwrap()
        );
        assert_eq!(qpoch_multi(&[s(1, 2), s(1, 3)], &q, 1).unwrap(), s(1, 3));
    }

    #[test]
    fn qfactorial_examples() {
        let q = s(2, 5);
        assert_eq!(qfactorial(0, &q).unwrap(), Scalar::one());
        assert_eq!(qfactorial(2, &s(1, 2)).unwrap(), s(3, 2));
        let lhs = qfactorial(3, &q).unwrap() * one_minus(&q).powu(3);
        let rhs = one_minus(&q) * one_minus(&q.powu(2)) * one_minus(&q.powu(3));
        assert_eq!(lhs, rhs);
        assert_eq!(qfactorial(3, &Scalar::one()), Err(Error::DivisionByZero));
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(gamma_int(1).unwrap(), Scalar::one());
        assert_eq!(gamma_int(2).unwrap(), Scalar::one());
        assert_eq!(gamma_int(5).unwrap(), Scalar::from_int(24));
        assert!(matches!(gamma_int(0), Err(Error::Domain(_))));
    }

    #[test]
    fn sampling_is_deterministic() {
        let n = names(&["a", "b", "q"]);
        let p1 = sample_point(&n, |_| true, 17, SamplerConfig::default()).unwrap();
        let p2 = sample_point(&n, |_| true, 17, SamplerConfig::default()).unwrap();
        assert_eq!(p1, p2);
        let p3 = sample_point(&n, |_| true, 18, SamplerConfig::default()).unwrap();
        assert_ne!(p1, p3);
    }

    #[test]
    fn sampling_respects_constraints() {
        let n = names(&["a", "b", "c", "d", "q"]);
        let cfg = SamplerConfig {
            height: 3,
            retry_cap: 1000,
        };
        for seed in 0..50 {
            let pt = sample_point(
                &n,
                |pt| {
                    let abcd = pt.get("a").unwrap()
                        * pt.get("b").unwrap()
                        * pt.get("c").unwrap()
                        * pt.get("d").unwrap();
                    !qpoch(&abcd, &pt.get("q").unwrap(), 8).unwrap().is_zero()
                },
                seed,
                cfg,
            )
            .unwrap();
            let q = pt.get("q").unwrap();
            assert!(!q.is_zero() && !q.abs().is_one());
            for name in ["a", "b", "c", "d"] {
                assert!(!pt.get(name).unwrap().is_zero());
            }
            let abcd = pt.get("a").unwrap()
                * pt.get("b").unwrap()
                * pt.get("c").unwrap()
                * pt.get("d").unwrap();
            assert!(!qpoch(&abcd, &q, 8).unwrap().is_zero());
        }
    }

    #[test]
    fn sampling_exhausts() {
        let n = names(&["a"]);
        let cfg = SamplerConfig {
            height: 5,
            retry_cap: 10,
        };
        assert_eq!(
            sample_point(&n, |_| false, 0, cfg),
            Err(Error::SamplingExhausted(10))
        );
    }

    fn small_rational() -> impl Strategy<Value = Scalar> {
        (-30i64..=30, 1i64..=30).prop_map(|(p, r)| Scalar::ratio(p, r).unwrap())
    }

    fn base() -> impl Strategy<Value = Scalar> {
        small_rational().prop_filter("q not in {0, 1, -1}", |q| !q.is_zero() && !q.abs().is_one())
    }

    proptest! {
        #[test]
        fn qpoch_splits(a in small_rational(), q in base(), m in -4i64..=4, n in -4i64..=4) {
            let whole = qpoch(&a, &q, m + n);
            let left = qpoch(&a, &q, m);
            let right = qpow(&q, m).and_then(|qm| qpoch(&(&a * &qm), &q, n));
            if let (Ok(w), Ok(l), Ok(r)) = (whole, left, right) {
                prop_assert_eq!(w, l * r);
            }
        }

        #[test]
        fn qpoch_reflects(a in small_rational(), q in base(), n in -4i64..=4) {
            let fwd = qpoch(&a, &q, n);
            let back = qpow(&q, n).and_then(|qn| qpoch(&(&a * &qn), &q, -n));
            if let (Ok(f), Ok(b)) = (fwd, back) {
                prop_assert_eq!(f * b, Scalar::one());
            }
        }

        #[test]
        fn mul_div_round_trip(x in small_rational(), y in small_rational()) {
            prop_assume!(!y.is_zero());
            prop_assert_eq!((&x * &y).try_div(&y).unwrap(), x);
        }
    }
}
