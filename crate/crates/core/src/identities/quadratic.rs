//! The quadratic formula for products of `r+4 phi s+3` series, the term
//! level machinery behind it, and its two corollaries.

use crate::askey_wilson::{aw_poly, AWParams, XPoint};
use crate::error::Result;
use crate::scalar::{one_minus, pole_div, qpoch, qpoch_multi, qpow, ParamPoint, Scalar};
use crate::series::{
    phi_series, series_linear_combine, series_mul, HypergeometricSpec, TruncatedSeries,
};

/// The three weighted products of a quadratic relation
/// `lhs = first - second`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticTerms {
    pub lhs: TruncatedSeries,
    pub first: TruncatedSeries,
    pub second: TruncatedSeries,
}

impl QuadraticTerms {
    pub fn residual(&self) -> Result<TruncatedSeries> {
        let one = Scalar::one();
        series_linear_combine(&[
            (one.clone(), &self.lhs),
            (-one.clone(), &self.first),
            (one, &self.second),
        ])
    }
}

fn phi(
    nums: Vec<Scalar>,
    dens: Vec<Scalar>,
    q: &Scalar,
    scale: &Scalar,
    order: usize,
) -> Result<TruncatedSeries> {
    phi_series(
        &HypergeometricSpec::new(nums, dens, q.clone()),
        scale,
        order,
    )
}

fn cat(head: Vec<Scalar>, tail: &[Scalar]) -> Vec<Scalar> {
    let mut v = head;
    v.extend_from_slice(tail);
    v
}

fn scaled(v: &[Scalar], q: &Scalar) -> Vec<Scalar> {
    v.iter().map(|x| x * q).collect()
}

/// Parameters of the quadratic formula: `a, b, c, d, q` and the extra
/// numerator/denominator vectors `e`, `f`.
#[derive(Clone, Debug)]
pub struct QuadraticParams {
    pub a: Scalar,
    pub b: Scalar,
    pub c: Scalar,
    pub d: Scalar,
    pub q: Scalar,
    pub e: Vec<Scalar>,
    pub f: Vec<Scalar>,
}

impl QuadraticParams {
    /// Reads `a..d, q, e1..er, f1..fs`.
    pub fn from_point(pt: &ParamPoint, r: usize, s: usize) -> Result<Self> {
        Ok(QuadraticParams {
            a: pt.get("a")?,
            b: pt.get("b")?,
            c: pt.get("c")?,
            d: pt.get("d")?,
            q: pt.get("q")?,
            e: pt.vector("e", r)?,
            f: pt.vector("f", s)?,
        })
    }

    fn sr(&self) -> i64 {
        self.f.len() as i64 - self.e.len() as i64
    }
}

/// Parameter lists `(nums1, dens1, nums2, dens2)` of the two series in
/// each product: index 0 is the left side, 1 and 2 the right-side products.
fn quadratic_lists(p: &QuadraticParams) -> Result<[[Vec<Scalar>; 4]; 3]> {
    let (a, b, c, d, q) = (&p.a, &p.b, &p.c, &p.d, &p.q);
    let qi = q.recip()?;
    let bc = b * c;
    let bc_a = bc.try_div(a)?;
    let bcq2 = &bc * &qi * &qi;
    let bc_d = bc.try_div(d)?;
    let eq = scaled(&p.e, q);
    let fq = scaled(&p.f, q);
    let e = &p.e;
    let f = &p.f;
    Ok([
        [
            cat(vec![bc_a.clone(), bcq2.clone(), c.clone(), d * &qi], e),
            cat(vec![a * &qi, b * &qi, bc_d.clone()], f),
            cat(vec![bc_a.clone(), bc.clone(), c.clone(), d * q], &eq),
            cat(vec![a * q, b * q, bc_d.clone()], &fq),
        ],
        [
            cat(vec![bc_a.clone(), bcq2.clone(), c * &qi, d.clone()], e),
            cat(vec![a * &qi, b.clone(), &bc_d * &qi], f),
            cat(vec![bc_a.clone(), bc.clone(), c * q, d.clone()], &eq),
            cat(vec![a * q, b.clone(), &bc_d * q], &fq),
        ],
        [
            cat(vec![&bc_a * &qi, bcq2, c.clone(), d.clone()], e),
            cat(vec![a.clone(), b * &qi, &bc_d * &qi], f),
            cat(vec![&bc_a * q, bc, c.clone(), d.clone()], &eq),
            cat(vec![a.clone(), b * q, &bc_d * q], &fq),
        ],
    ])
}

fn quadratic_prefactors(p: &QuadraticParams) -> [Scalar; 3] {
    let (a, b, c, d) = (&p.a, &p.b, &p.c, &p.d);
    let bc = b * c;
    [
        (a - b) * (a - c) * (&bc - d) * one_minus(d),
        (a - d) * one_minus(b) * one_minus(c) * (&bc - a * d),
        one_minus(a) * (b - d) * (c - d) * (a - &bc),
    ]
}

/// Weighted products of the quadratic formula, truncated at `order`.
pub fn main_quadratic_terms(p: &QuadraticParams, order: usize) -> Result<QuadraticTerms> {
    let lists = quadratic_lists(p)?;
    let pref = quadratic_prefactors(p);
    let one = Scalar::one();
    let scale2 = qpow(&p.q, p.sr())?;
    let mut out = Vec::with_capacity(3);
    for ([n1, d1, n2, d2], w) in lists.into_iter().zip(pref) {
        let u = phi(n1, d1, &p.q, &one, order)?;
        let v = phi(n2, d2, &p.q, &scale2, order)?;
        out.push(series_mul(&u, &v)?.scale(&w));
    }
    let second = out.pop().expect("three products");
    let first = out.pop().expect("three products");
    let lhs = out.pop().expect("three products");
    Ok(QuadraticTerms { lhs, first, second })
}

/// Residual series of the quadratic formula for `r` extra numerators and
/// `s` extra denominators; identically zero to `order`.
pub fn check_main_quadratic(
    r: usize,
    s: usize,
    pt: &ParamPoint,
    order: usize,
) -> Result<TruncatedSeries> {
    main_quadratic_terms(&QuadraticParams::from_point(pt, r, s)?, order)?.residual()
}

/// `{(-1)^k q^{k(k-1)/2}}^{s-r}`.
fn alpha(k: i64, q: &Scalar, sr: i64) -> Result<Scalar> {
    let sign = if k % 2 == 0 {
        Scalar::one()
    } else {
        -Scalar::one()
    };
    (sign * qpow(q, k * (k - 1) / 2)?).powi(sr)
}

/// The summands `(A_k, B_k, C_k)` whose alternating sum over `k` is the
/// coefficient of `z^n` in the quadratic formula (up to the sign `(-1)^{s-r}`).
pub fn six_term_parts(k: usize, n: usize, p: &QuadraticParams) -> Result<(Scalar, Scalar, Scalar)> {
    if k == n + 1 {
        return Ok((Scalar::zero(), Scalar::zero(), Scalar::zero()));
    }
    let q = &p.q;
    let (ki, ni) = (k as i64, n as i64);
    let weight = alpha(ki, q, p.sr())? * alpha(ni - ki + 1, q, p.sr())?;
    let lists = quadratic_lists(p)?;
    let pref = quadratic_prefactors(p);
    let mut vals = Vec::with_capacity(3);
    for ([n1, d1, n2, d2], w) in lists.into_iter().zip(pref) {
        let num = qpoch_multi(&n1, q, ki)? * qpoch_multi(&n2, q, ni - ki)?;
        let den = qpoch_multi(&d1, q, ki)?
            * qpoch(q, q, ki)?
            * qpoch_multi(&d2, q, ni - ki)?
            * qpoch(q, q, ni - ki)?;
        vals.push(pole_div(&num, &den, "six-term summand")? * w * &weight);
    }
    Ok((vals[0].clone(), vals[1].clone(), vals[2].clone()))
}

/// `A_k - B_k + C_k`.
pub fn six_term_value(k: usize, n: usize, p: &QuadraticParams) -> Result<Scalar> {
    let (a, b, c) = six_term_parts(k, n, p)?;
    Ok(a - b + c)
}

/// The factor `G_k` of the six-term factorization.
pub fn six_term_g(k: usize, p: &QuadraticParams) -> Result<Scalar> {
    let (a, b, c, d, q) = (&p.a, &p.b, &p.c, &p.d, &p.q);
    let ki = k as i64;
    let bc = b * c;
    let num = one_minus(&qpow(q, ki)?)
        * one_minus(&(&bc * qpow(q, ki - 2)?))
        * qpoch_multi(&[bc.try_div(a)?, c.clone(), d.clone()], q, ki - 1)?
        * qpoch(&bc, q, ki - 2)?
        * qpoch_multi(&p.e, q, ki)?
        * alpha(ki, q, p.sr())?;
    let den = qpoch_multi(&[a.clone(), b.clone(), bc.try_div(d)?, q.clone()], q, ki)?
        * qpoch_multi(&p.f, q, ki)?;
    pole_div(&num, &den, "G_k denominator")
}

/// The `k`-independent factor of the six-term factorization.
pub fn six_term_xi(n: usize, p: &QuadraticParams) -> Result<Scalar> {
    let (a, b, c, d, q) = (&p.a, &p.b, &p.c, &p.d, &p.q);
    let qi = q.recip()?;
    let bc = b * c;
    let bc_d = bc.try_div(d)?;
    let num = (a - b)
        * (a - c)
        * (a - d)
        * (b - d)
        * (c - d)
        * (a * d - &bc)
        * one_minus(&(&bc * qpow(q, n as i64 - 1)?))
        * one_minus(a)
        * one_minus(b)
        * one_minus(&bc_d)
        * one_minus(&(&bc * &qi * &qi))
        * one_minus(&(&bc * &qi))
        * qpoch_multi(&p.f, q, 1)?;
    let den = a
        * d
        * q
        * q
        * one_minus(&(a * &qi))
        * one_minus(&(b * &qi))
        * one_minus(&(&bc_d * &qi))
        * qpoch_multi(&p.e, q, 1)?;
    pole_div(&num, &den, "Xi denominator")
}

/// `A_k - B_k + C_k - (q^{n-k+1} - q^k) G_k G_{n-k+1} Xi`.
pub fn six_term_certificate(k: usize, n: usize, p: &QuadraticParams) -> Result<Scalar> {
    let q = &p.q;
    let lhs = six_term_value(k, n, p)?;
    let pre = qpow(q, (n + 1 - k) as i64)? - qpow(q, k as i64)?;
    let rhs = pre * six_term_g(k, p)? * six_term_g(n + 1 - k, p)? * six_term_xi(n, p)?;
    Ok(lhs - rhs)
}

/// `Xi` solved from the factorization at slot `k`; needs `2k != n + 1`.
pub fn six_term_xi_from(k: usize, n: usize, p: &QuadraticParams) -> Result<Scalar> {
    let q = &p.q;
    let pre = qpow(q, (n + 1 - k) as i64)? - qpow(q, k as i64)?;
    let den = pre * six_term_g(k, p)? * six_term_g(n + 1 - k, p)?;
    pole_div(&six_term_value(k, n, p)?, &den, "Xi extraction")
}

/// Residual of the ten-factor three-term polynomial identity in
/// `a, b, c, d, x, y, z`.
pub fn check_ten_factor(pt: &ParamPoint) -> Result<Scalar> {
    let [a, b, c, d, x, y, z] = ["a", "b", "c", "d", "x", "y", "z"].map(|n| pt.get(n));
    ten_factor_residual(&a?, &b?, &c?, &d?, &x?, &y?, &z?)
}

pub fn ten_factor_residual(
    a: &Scalar,
    b: &Scalar,
    c: &Scalar,
    d: &Scalar,
    x: &Scalar,
    y: &Scalar,
    z: &Scalar,
) -> Result<Scalar> {
    let bc = b * c;
    let t1 = (a - b)
        * (a - c)
        * (d - x)
        * (&bc - d * x)
        * (x - a * y)
        * (x - b * y)
        * (x - c * y)
        * (y - d * z)
        * (a * x - &bc * y)
        * (d * y - &bc * z);
    let t2 = (a - d)
        * (b - x)
        * (c - x)
        * (a * d - &bc)
        * (x - a * y)
        * (y - b * z)
        * (y - c * z)
        * (x - d * y)
        * (a * x - &bc * y)
        * (d * x - &bc * y);
    let t3 = (b - d)
        * (c - d)
        * (a - x)
        * (a * x - &bc)
        * (y - a * z)
        * (x - b * y)
        * (x - c * y)
        * (x - d * y)
        * (a * y - &bc * z)
        * (d * x - &bc * y);
    let rhs = x
        * y
        * (a - b)
        * (a - c)
        * (a - d)
        * (b - d)
        * (c - d)
        * one_minus(y)
        * (a * d - &bc)
        * (x - &bc * z)
        * (x * x - &bc * y)
        * (y * y - x * z);
    Ok(t1 - t2 + t3 - rhs)
}

/// Parameters `a_0..a_r`, `b_1..b_r` of the `r+1 phi r` corollary.
#[derive(Clone, Debug)]
pub struct PhiRParams {
    pub top: Vec<Scalar>,
    pub bottom: Vec<Scalar>,
    pub q: Scalar,
}

impl PhiRParams {
    /// Reads `a0..a{r}`, `b1..b{r}` and `q`.
    pub fn from_point(pt: &ParamPoint, r: usize) -> Result<Self> {
        Ok(PhiRParams {
            top: (0..=r)
                .map(|i| pt.get(&format!("a{i}")))
                .collect::<Result<_>>()?,
            bottom: pt.vector("b", r)?,
            q: pt.get("q")?,
        })
    }
}

/// Weighted products of the `r+1 phi r` quadratic relation.
pub fn phi_r_terms(p: &PhiRParams, order: usize) -> Result<QuadraticTerms> {
    let q = &p.q;
    let qi = q.recip()?;
    let one = Scalar::one();
    let (a0, a1, b1) = (&p.top[0], &p.top[1], &p.bottom[0]);
    let rest_a = &p.top[2..];
    let rest_b = &p.bottom[1..];
    let rest_aq = scaled(rest_a, q);
    let rest_bq = scaled(rest_b, q);
    let product =
        |n1: Vec<Scalar>, d1: Vec<Scalar>, n2: Vec<Scalar>, d2: Vec<Scalar>, w: Scalar| {
            let u = phi(n1, d1, q, &one, order)?;
            let v = phi(n2, d2, q, &one, order)?;
            Ok::<_, crate::error::Error>(series_mul(&u, &v)?.scale(&w))
        };
    let lhs = product(
        cat(vec![a0 * &qi, a1.clone()], rest_a),
        cat(vec![b1 * &qi], rest_b),
        cat(vec![a0 * q, a1.clone()], &rest_aq),
        cat(vec![b1 * q], &rest_bq),
        (a0 - &one) * (a1 - b1),
    )?;
    let first = product(
        cat(vec![a0.clone(), a1.clone()], rest_a),
        cat(vec![b1.clone()], rest_b),
        cat(vec![a0.clone(), a1.clone()], &rest_aq),
        cat(vec![b1.clone()], &rest_bq),
        (a0 - a1) * one_minus(b1),
    )?;
    let second = product(
        cat(vec![a0.clone(), a1 * &qi], rest_a),
        cat(vec![b1 * &qi], rest_b),
        cat(vec![a0.clone(), a1 * q], &rest_aq),
        cat(vec![b1 * q], &rest_bq),
        one_minus(a1) * (a0 - b1),
    )?;
    Ok(QuadraticTerms { lhs, first, second })
}

/// Residual series of the `r+1 phi r` corollary.
pub fn check_phi_r_quadratic(r: usize, pt: &ParamPoint, order: usize) -> Result<TruncatedSeries> {
    phi_r_terms(&PhiRParams::from_point(pt, r)?, order)?.residual()
}

/// Residual of the quadratic relation between Askey-Wilson polynomials
/// of degrees `n`, `n - 1`, `n - 2` with shifted `a`, `b`; needs `n >= 2`.
pub fn check_aw_quadratic(n: usize, p: &AWParams, pt: &XPoint) -> Result<Scalar> {
    let (a, b, c, d, q) = (&p.a, &p.b, &p.c, &p.d, &p.q);
    let ni = n as i64;
    let ab = a * b;
    let abcd = p.abcd();
    let aq = a * q;
    let bq = b * q;
    let shifted_both = p.with_ab(aq.clone(), bq.clone());
    let lhs = &ab
        * one_minus(&qpow(q, ni - 1)?)
        * one_minus(&(c * d * qpow(q, ni - 2)?))
        * aw_poly(n, p, pt)?
        * aw_poly(n - 2, &shifted_both, pt)?;
    let first = one_minus(&(&ab * qpow(q, ni - 1)?))
        * one_minus(&(&abcd * qpow(q, ni - 1)?))
        * aw_poly(n - 1, p, pt)?
        * aw_poly(n - 1, &shifted_both, pt)?;
    let second = one_minus(&ab)
        * one_minus(&(&abcd * qpow(q, 2 * ni - 2)?))
        * aw_poly(n - 1, &p.with_ab(aq, b.clone()), pt)?
        * aw_poly(n - 1, &p.with_ab(a.clone(), bq), pt)?;
    Ok(lhs - first + second)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{names, sample_point, SamplerConfig};

    fn point(seed: u64, r: usize, s: usize) -> ParamPoint {
        let mut n = names(&["a", "b", "c", "d", "q"]);
        n.extend((1..=r).map(|i| format!("e{i}")));
        n.extend((1..=s).map(|i| format!("f{i}")));
        sample_point(&n, |_| true, seed, SamplerConfig::default()).unwrap()
    }

    #[test]
    fn constant_coefficient_balances() {
        let pt = point(3, 0, 0);
        let p = QuadraticParams::from_point(&pt, 0, 0).unwrap();
        let [w0, w1, w2] = quadratic_prefactors(&p);
        assert!((w0 - w1 + w2).is_zero());
    }

    #[test]
    fn quadratic_residual_vanishes() {
        for (seed, (r, s)) in [(0, 0), (1, 0), (0, 1), (1, 1), (2, 1), (2, 2)]
            .into_iter()
            .enumerate()
        {
            let pt = point(seed as u64 + 10, r, s);
            let res = check_main_quadratic(r, s, &pt, 8).unwrap();
            assert!(res.is_zero(), "r={r} s={s} at {pt}");
        }
    }

    #[test]
    fn coefficients_match_six_term_sums() {
        // z^n coefficient of each product is (-1)^{s-r} times the sum of its summands
        for (seed, (r, s)) in [(0, 0), (1, 0), (2, 1), (1, 2)].into_iter().enumerate() {
            let pt = point(seed as u64 + 40, r, s);
            let p = QuadraticParams::from_point(&pt, r, s).unwrap();
            let terms = main_quadratic_terms(&p, 6).unwrap();
            let sign = if (s + r) % 2 == 0 {
                Scalar::one()
            } else {
                -Scalar::one()
            };
            for n in 0..=6 {
                let mut sums = [Scalar::zero(), Scalar::zero(), Scalar::zero()];
                for k in 0..=n {
                    let (a, b, c) = six_term_parts(k, n, &p).unwrap();
                    sums[0] += a;
                    sums[1] += b;
                    sums[2] += c;
                }
                assert_eq!(terms.lhs.coeff(n).unwrap(), &(&sign * &sums[0]), "n={n}");
                assert_eq!(terms.first.coeff(n).unwrap(), &(&sign * &sums[1]), "n={n}");
                assert_eq!(terms.second.coeff(n).unwrap(), &(&sign * &sums[2]), "n={n}");
                let res = terms.residual().unwrap();
                assert_eq!(
                    res.coeff(n).unwrap(),
                    &(&sign * (&sums[0] - &sums[1] + &sums[2]))
                );
            }
        }
    }

    #[test]
    fn six_term_structure() {
        let pt = point(77, 1, 1);
        let p = QuadraticParams::from_point(&pt, 1, 1).unwrap();
        for n in 0..=5 {
            assert_eq!(
                six_term_parts(n + 1, n, &p).unwrap(),
                (Scalar::zero(), Scalar::zero(), Scalar::zero())
            );
            let total: Scalar = (0..=n).map(|k| six_term_value(k, n, &p).unwrap()).sum();
            assert!(total.is_zero());
            for k in 0..=n + 1 {
                let pair =
                    six_term_value(k, n, &p).unwrap() + six_term_value(n + 1 - k, n, &p).unwrap();
                assert!(pair.is_zero(), "n={n} k={k}");
                assert!(
                    six_term_certificate(k, n, &p).unwrap().is_zero(),
                    "n={n} k={k}"
                );
            }
        }
        for n in [2, 4, 5] {
            assert_eq!(
                six_term_xi_from(1, n, &p).unwrap(),
                six_term_xi_from(2, n, &p).unwrap()
            );
            assert_eq!(
                six_term_xi_from(1, n, &p).unwrap(),
                six_term_xi(n, &p).unwrap()
            );
        }
    }

    #[test]
    fn prefactor_antisymmetry() {
        // (q^{n-k+1} - q^k) flips sign under k -> n - k + 1
        let q = Scalar::ratio(3, 7).unwrap();
        let n = 5i64;
        for k in 0..=n + 1 {
            let f = |k: i64| qpow(&q, n - k + 1).unwrap() - qpow(&q, k).unwrap();
            assert_eq!(f(k), -f(n - k + 1));
        }
    }

    #[test]
    fn ten_factor_identity() {
        let n = names(&["a", "b", "c", "d", "x", "y", "z"]);
        for seed in 0..50 {
            let pt = sample_point(&n, |_| true, seed, SamplerConfig::default()).unwrap();
            assert!(check_ten_factor(&pt).unwrap().is_zero());
            let x = pt.get("x").unwrap();
            let a = pt.get("a").unwrap();
            assert!(check_ten_factor(&pt.clone().with("y", x))
                .unwrap()
                .is_zero());
            assert!(check_ten_factor(&pt.clone().with("b", a))
                .unwrap()
                .is_zero());
        }
    }

    fn phi_r_point(seed: u64) -> ParamPoint {
        let n = names(&["a0", "a1", "a2", "a3", "b1", "b2", "b3", "q"]);
        sample_point(&n, |_| true, seed, SamplerConfig::default()).unwrap()
    }

    #[test]
    fn phi_r_vanishes() {
        for r in 1..=3 {
            let pt = phi_r_point(r as u64);
            assert!(check_phi_r_quadratic(r, &pt, 8).unwrap().is_zero(), "r={r}");
        }
    }

    #[test]
    fn phi_r_degenerate_prefactor() {
        // a0 = a1 kills the first product's weight; b1 = 1 would be a pole of its series
        let pt = phi_r_point(9);
        let a0 = pt.get("a0").unwrap();
        let pt = pt.with("a1", a0);
        let p = PhiRParams::from_point(&pt, 2).unwrap();
        let t = phi_r_terms(&p, 6).unwrap();
        assert!(t.first.is_zero());
        assert!(t.residual().unwrap().is_zero());
    }

    #[test]
    fn phi_r_is_a_specialization_of_the_quadratic_formula() {
        // s = r, d = a0, c = a1, b = 0, a = b1, e1 = f1 = 0: every product of the
        // quadratic formula equals -a0 b1 times the matching corollary product.
        for r in 1..=3 {
            let pt = phi_r_point(20 + r as u64);
            let g = PhiRParams::from_point(&pt, r).unwrap();
            let mut e = vec![Scalar::zero()];
            e.extend_from_slice(&g.top[2..]);
            let mut f = vec![Scalar::zero()];
            f.extend_from_slice(&g.bottom[1..]);
            let main = QuadraticParams {
                a: g.bottom[0].clone(),
                b: Scalar::zero(),
                c: g.top[1].clone(),
                d: g.top[0].clone(),
                q: g.q.clone(),
                e,
                f,
            };
            let m = main_quadratic_terms(&main, 8).unwrap();
            let z = phi_r_terms(&g, 8).unwrap();
            let w = -(&g.top[0] * &g.bottom[0]);
            assert_eq!(m.lhs, z.lhs.scale(&w));
            assert_eq!(m.first, z.second.scale(&-&w));
            assert_eq!(m.second, z.first.scale(&-&w));
        }
    }

    #[test]
    fn aw_quadratic_vanishes() {
        let n = names(&["a", "b", "c", "d", "q", "z"]);
        let pt = sample_point(&n, |_| true, 5, SamplerConfig::default()).unwrap();
        let p = AWParams::from_point(&pt).unwrap();
        let x = XPoint::new(pt.get("z").unwrap()).unwrap();
        for deg in 2..=6 {
            assert!(
                check_aw_quadratic(deg, &p, &x).unwrap().is_zero(),
                "n={deg}"
            );
        }
    }
}
