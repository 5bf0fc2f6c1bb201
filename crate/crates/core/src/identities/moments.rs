//! Residuals for the moment functional, orthogonality, Newton
//! interpolation and the connection coefficients.

use crate::askey_wilson::{
    aw_moment, aw_norm_ratio, aw_poly, aw_poly_as_polynomial, connection_u, moment_functional,
    newton_coeffs, newton_lattice_coeffs, AWParams, PolynomialInX, XPoint,
};
use crate::error::Result;
use crate::identities::gram::gram_entry;
use crate::scalar::{pole_div, qpoch, qpoch_multi, qpow, Scalar};

/// `L(p_m p_n) - delta_{mn} h_n / h_0`.
pub fn check_orthogonality(m: usize, n: usize, p: &AWParams) -> Result<Scalar> {
    let pm = aw_poly_as_polynomial(m, p)?;
    let pn = aw_poly_as_polynomial(n, p)?;
    let value = moment_functional(&(&pm * &pn), p)?;
    if m == n {
        Ok(value - aw_norm_ratio(n, p)?)
    } else {
        Ok(value)
    }
}

/// `(b z, b/z; q)_k` as a polynomial in `x`.
fn b_basis(p: &AWParams, k: usize) -> PolynomialInX {
    PolynomialInX::lattice_basis(&p.b, &p.q, k)
}

/// Residuals of the basis moments: `L((az, a/z; q)_k)`, `L((bz, b/z; q)_k)` and
/// the mixed products `L((az, a/z; q)_i (bz, b/z; q)_j)` against the Gram entries.
pub fn basis_moment_residuals(n_max: usize, p: &AWParams) -> Result<Vec<Scalar>> {
    let (a, b, c, d, q) = (&p.a, &p.b, &p.c, &p.d, &p.q);
    let abcd = p.abcd();
    let mut out = Vec::new();
    for k in 0..=n_max {
        let ki = k as i64;
        let a_side = PolynomialInX::lattice_basis(a, q, k);
        let expected = pole_div(
            &qpoch_multi(&[a * b, a * c, a * d], q, ki)?,
            &qpoch(&abcd, q, ki)?,
            "(abcd;q)_k",
        )?;
        out.push(moment_functional(&a_side, p)? - expected);
        let expected = pole_div(
            &qpoch_multi(&[a * b, b * c, b * d], q, ki)?,
            &qpoch(&abcd, q, ki)?,
            "(abcd;q)_k",
        )?;
        out.push(moment_functional(&b_basis(p, k), p)? - expected);
    }
    let half = n_max / 2;
    for i in 0..=half {
        for j in 0..=half {
            let mixed = &PolynomialInX::lattice_basis(a, q, i) * &b_basis(p, j);
            out.push(moment_functional(&mixed, p)? - gram_entry(i, j, p)?);
        }
    }
    Ok(out)
}

/// `(t + x)^n` as a polynomial.
pub fn shifted_power(t: &Scalar, n: usize) -> PolynomialInX {
    PolynomialInX::linear(t.clone(), Scalar::one()).pow(n as u32)
}

/// Double-sum moment against the Newton-route functional.
pub fn check_moment_double_sum(n: usize, t: &Scalar, p: &AWParams) -> Result<Scalar> {
    Ok(aw_moment(n, t, p)? - moment_functional(&shifted_power(t, n), p)?)
}

/// All 24 orderings of four indices.
pub fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let perm = [a, b, c, d];
                    if (0..4).all(|v| perm.contains(&v)) {
                        out.push(perm);
                    }
                }
            }
        }
    }
    out
}

/// Residuals `aw_moment(perm) - aw_moment(id)` over all 24 permutations.
pub fn moment_symmetry_residuals(n: usize, t: &Scalar, p: &AWParams) -> Result<Vec<Scalar>> {
    let base = aw_moment(n, t, p)?;
    permutations4()
        .into_iter()
        .map(|perm| Ok(aw_moment(n, t, &p.permuted(perm))? - &base))
        .collect()
}

/// Residuals of `p_n` under parameter permutations: the `a <-> b` swap and,
/// when `full` is set, all of `S_4`.
pub fn aw_symmetry_residuals(
    n: usize,
    p: &AWParams,
    pt: &XPoint,
    full: bool,
) -> Result<Vec<Scalar>> {
    let base = aw_poly(n, p, pt)?;
    let perms = if full {
        permutations4()
    } else {
        vec![[1, 0, 2, 3]]
    };
    perms
        .into_iter()
        .map(|perm| Ok(aw_poly(n, &p.permuted(perm), pt)? - &base))
        .collect()
}

/// Leading coefficient of the interpolated `p_n` against `2^n (abcd q^{n-1}; q)_n`.
pub fn check_aw_leading_coeff(n: usize, p: &AWParams) -> Result<Scalar> {
    let poly = aw_poly_as_polynomial(n, p)?;
    Ok(poly.coeff(n) - crate::askey_wilson::aw_leading_coeff(n, p)?)
}

/// Residuals of Newton interpolation: the interpolant of `f` at `nodes`
/// minus `f`, coefficientwise.
pub fn newton_reconstruction_residuals(f: &PolynomialInX, nodes: &[Scalar]) -> Result<Vec<Scalar>> {
    let values: Vec<Scalar> = nodes.iter().map(|x| f.eval(x)).collect();
    let c = newton_coeffs(nodes, &values)?;
    let back = PolynomialInX::from_newton(&c, nodes);
    let diff = &back - f;
    Ok(diff.coeffs().to_vec())
}

/// Residuals of the lattice Newton expansion: the lattice weights against the
/// general divided differences rescaled by `(-1)^k 2^{-k} a^{-k} q^{-C(k,2)}`,
/// and the expansion evaluated at `z` against `f(x)`.
pub fn newton_lattice_residuals(
    f: &PolynomialInX,
    a: &Scalar,
    q: &Scalar,
    pt: &XPoint,
) -> Result<Vec<Scalar>> {
    let n = f.degree().unwrap_or(0);
    let u = newton_lattice_coeffs(f, a, q, n)?;
    let nodes: Vec<Scalar> = (0..=n as i64)
        .map(|j| crate::askey_wilson::lattice_node(a, q, j))
        .collect::<Result<_>>()?;
    let values: Vec<Scalar> = nodes.iter().map(|x| f.eval(x)).collect();
    let c = newton_coeffs(&nodes, &values)?;
    let half = Scalar::ratio(1, 2)?;
    let mut out = Vec::with_capacity(n + 2);
    for (k, (uk, ck)) in u.iter().zip(&c).enumerate() {
        let ki = k as i64;
        let mut scale = half.powu(k as u64) * a.powi(-ki)? * qpow(q, -(ki * (ki - 1) / 2))?;
        if k % 2 == 1 {
            scale = -scale;
        }
        out.push(uk - scale * ck);
    }
    let mut total = Scalar::zero();
    for (k, uk) in u.iter().enumerate() {
        total += uk * pt.basis_value(a, q, k as i64)?;
    }
    out.push(total - f.eval(&pt.x()));
    Ok(out)
}

/// Residuals of the connection coefficients `u(n, k)`: the recurrence for
/// `1 <= k <= n`, both boundary conditions, and the expansion at `x`.
pub fn connection_residuals(
    n: usize,
    shifts: &[Scalar],
    nodes: &[Scalar],
    x: &Scalar,
) -> Result<Vec<Scalar>> {
    let mut out = Vec::new();
    let u = |m: usize, k: usize| connection_u(m, k, shifts, nodes);
    for k in 0..=n {
        let delta = if k == 0 {
            Scalar::one()
        } else {
            Scalar::zero()
        };
        out.push(u(0, k)? - delta);
    }
    let boundary: Scalar = shifts[..n].iter().map(|s| s + &nodes[0]).product();
    out.push(u(n, 0)? - boundary);
    for m in 1..=n {
        #[allow(clippy::needless_range_loop)]
        for k in 1..=m {
            out.push(u(m, k)? - u(m - 1, k - 1)? - (&shifts[m - 1] + &nodes[k]) * u(m - 1, k)?);
        }
    }
    let lhs: Scalar = shifts[..n].iter().map(|s| x + s).product();
    let mut rhs = Scalar::zero();
    let mut basis = Scalar::one();
    for (k, node) in nodes[..=n].iter().enumerate() {
        rhs += u(n, k)? * &basis;
        basis *= x - node;
    }
    out.push(lhs - rhs);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{names, one_minus, sample_point, ParamPoint, SamplerConfig};

    fn point(seed: u64) -> ParamPoint {
        let n = names(&["a", "b", "c", "d", "q", "t", "z"]);
        sample_point(&n, |_| true, seed, SamplerConfig::default()).unwrap()
    }

    #[test]
    fn orthogonality() {
        let pt = point(1);
        let p = AWParams::from_point(&pt).unwrap();
        assert!(check_orthogonality(0, 0, &p).unwrap().is_zero());
        for m in 0..=3 {
            for n in 0..=3 {
                assert!(
                    check_orthogonality(m, n, &p).unwrap().is_zero(),
                    "m={m} n={n}"
                );
            }
        }
    }

    #[test]
    fn first_polynomial_has_zero_moment() {
        // L(p_1) = u_0 + u_1 L((az, a/z; q)_1)
        let p = AWParams::from_point(&point(2)).unwrap();
        let p1 = aw_poly_as_polynomial(1, &p).unwrap();
        let u = newton_lattice_coeffs(&p1, &p.a, &p.q, 1).unwrap();
        let (a, b, c, d) = (&p.a, &p.b, &p.c, &p.d);
        let l1 = (one_minus(&(a * b)) * one_minus(&(a * c)) * one_minus(&(a * d)))
            .try_div(&one_minus(&p.abcd()))
            .unwrap();
        assert!((&u[0] + &u[1] * l1).is_zero());
    }

    #[test]
    fn basis_moments() {
        let p = AWParams::from_point(&point(3)).unwrap();
        for r in basis_moment_residuals(4, &p).unwrap() {
            assert!(r.is_zero());
        }
    }

    #[test]
    fn double_sum_and_symmetry() {
        let pt = point(4);
        let p = AWParams::from_point(&pt).unwrap();
        let t = pt.get("t").unwrap();
        for n in 0..=5 {
            assert!(
                check_moment_double_sum(n, &t, &p).unwrap().is_zero(),
                "n={n}"
            );
        }
        for n in 0..=3 {
            for r in moment_symmetry_residuals(n, &t, &p).unwrap() {
                assert!(r.is_zero(), "n={n}");
            }
        }
        assert_eq!(permutations4().len(), 24);
    }

    #[test]
    fn polynomial_symmetry_and_leading_coefficient() {
        let pt = point(5);
        let p = AWParams::from_point(&pt).unwrap();
        let x = XPoint::new(pt.get("z").unwrap()).unwrap();
        for n in 0..=4 {
            for r in aw_symmetry_residuals(n, &p, &x, n <= 3).unwrap() {
                assert!(r.is_zero(), "n={n}");
            }
            assert!(check_aw_leading_coeff(n, &p).unwrap().is_zero());
        }
    }

    #[test]
    fn newton_reconstructs() {
        let f = PolynomialInX::new(
            (0..9)
                .map(|k| Scalar::ratio(k * k - 3, k + 2).unwrap())
                .collect(),
        );
        let nodes: Vec<Scalar> = (0..9)
            .map(|k| Scalar::ratio(2 * k + 1, 3 + k).unwrap())
            .collect();
        for r in newton_reconstruction_residuals(&f, &nodes).unwrap() {
            assert!(r.is_zero());
        }
        let x = XPoint::new(Scalar::ratio(5, 3).unwrap()).unwrap();
        let (a, q) = (Scalar::ratio(2, 7).unwrap(), Scalar::ratio(-3, 5).unwrap());
        for r in newton_lattice_residuals(&f, &a, &q, &x).unwrap() {
            assert!(r.is_zero());
        }
    }

    #[test]
    fn connection() {
        let shifts: Vec<Scalar> = (0..8).map(|k| Scalar::ratio(k - 3, 2).unwrap()).collect();
        let nodes: Vec<Scalar> = (0..9)
            .map(|k| Scalar::ratio(k * k + 1, 5).unwrap())
            .collect();
        let x = Scalar::ratio(7, 4).unwrap();
        for n in 0..=8 {
            for r in connection_residuals(n, &shifts, &nodes, &x).unwrap() {
                assert!(r.is_zero(), "n={n}");
            }
        }
    }
}
