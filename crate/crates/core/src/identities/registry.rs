use crate::askey_wilson::{
    aw_norm_ratio, aw_poly_as_polynomial, moment_functional, AWParams, PolynomialInX, XPoint,
};
use crate::error::{Error, Result};
use crate::linalg::{
    desnanot_jacobi_residual, det_cofactor, det_condensation, det_fraction_free,
    pfaffian_expansion, pfaffian_matchings, Matrix, SkewMatrix,
};
use crate::scalar::{names, qpow, ParamPoint, Scalar};
use crate::series::DEFAULT_ORDER;

use super::determinants::*;
use super::gram::*;
use super::moments::*;
use super::quadratic::*;
use super::{IdentityCheck, Procedure, Sizes};

const AW: &[&str] = &["a", "b", "c", "d", "q"];
const AWZ: &[&str] = &["a", "b", "c", "d", "q", "z"];
const QUADRATIC: &[&str] = &["a", "b", "c", "d", "q", "e1", "e2", "f1", "f2"];

/// `(r, s)` shapes exercised for the quadratic formula and its summands.
pub const QUADRATIC_SHAPES: [(usize, usize); 6] = [(0, 0), (1, 0), (0, 1), (1, 1), (2, 1), (2, 2)];

/// `(r, s)` shapes exercised for the contiguous relation.
pub const CONTIGUOUS_SHAPES: [(usize, usize); 4] = [(1, 1), (2, 1), (2, 2), (3, 2)];

/// Largest matrix order drawn for the Desnanot-Jacobi check.
const DJ_MAX: usize = 8;

/// Largest polynomial degree drawn for the interpolation checks.
const POLY_MAX: usize = 8;

fn check(
    id: &'static str,
    anchor: &'static str,
    params: Vec<String>,
    defaults: Sizes,
    procedure: Procedure,
) -> IdentityCheck {
    IdentityCheck {
        id,
        anchor,
        params,
        defaults,
        procedure,
    }
}

fn with_indexed(base: &[&str], groups: &[(&str, std::ops::Range<usize>)]) -> Vec<String> {
    let mut v = names(base);
    for (prefix, range) in groups {
        v.extend(range.clone().map(|i| format!("{prefix}{i}")));
    }
    v
}

fn aw_and_x(pt: &ParamPoint) -> Result<(AWParams, XPoint)> {
    Ok((AWParams::from_point(pt)?, XPoint::new(pt.get("z")?)?))
}

fn abq(pt: &ParamPoint) -> Result<(Scalar, Scalar, Scalar)> {
    Ok((pt.get("a")?, pt.get("b")?, pt.get("q")?))
}

fn main_quadratic(pt: &ParamPoint, s: &Sizes) -> Result<Vec<Scalar>> {
    let mut out = Vec::new();
    for (r, sd) in QUADRATIC_SHAPES {
        out.extend(check_main_quadratic(r, sd, pt, s.series_order())?.into_coeffs());
    }
    Ok(out)
}

fn six_term_sums(pt: &ParamPoint, s: &Sizes) -> Result<Vec<Scalar>> {
    let mut out = Vec::new();
    for (r, sd) in QUADRATIC_SHAPES {
        let p = QuadraticParams::from_point(pt, r, sd)?;
        for n in 0..=s.n_max() {
            let mut total = Scalar::zero();
            for k in 0..=n {
                total += six_term_value(k, n, &p)?;
            }
            out.push(total);
        }
    }
    Ok(out)
}

fn six_term_pairs(pt: &ParamPoint, s: &Sizes) -> Result<Vec<Scalar>> {
    let mut out = Vec::new();
    for (r, sd) in QUADRATIC_SHAPES {
        let p = QuadraticParams::from_point(pt, r, sd)?;
        for n in 0..=s.n_max() {
            let values: Vec<Scalar> = (0..=n + 1)
                .map(|k| six_term_value(k, n, &p))
                .collect::<Result<_>>()?;
            out.extend((0..=n + 1).map(|k| &values[k] + &values[n + 1 - k]));
        }
    }
    Ok(out)
}

fn six_term_factorization(pt: &ParamPoint, s: &Sizes) -> Result<Vec<Scalar>> {
    let mut out = Vec::new();
    for (r, sd) in QUADRATIC_SHAPES {
        let p = QuadraticParams::from_point(pt, r, sd)?;
        for n in 0..=s.n_max() {
            for k in 0..=n + 1 {
                out.push(six_term_certificate(k, n, &p)?);
            }
            let xi = six_term_xi(n, &p)?;
            for k in (1..=n).filter(|k| 2 * k != n + 1) {
                out.push(six_term_xi_from(k, n, &p)? - &xi);
            }
        }
    }
    Ok(out)
}

fn ten_factor_polynomial(pt: &ParamPoint, _: &Sizes) -> Result<Vec<Scalar>> {
    Ok(vec![check_ten_factor(pt)?])
}

fn phi_r_quadratic(pt: &ParamPoint, s: &Sizes) -> Result<Vec<Scalar>> {
    let mut out = Vec::new();
    for r in 1..=3 {
        out.extend(check_phi_r_quadratic(r, pt, s.series_order())?.into_coeffs());
    }
    Ok(out)
}

fn aw_quadratic(pt: &ParamPoint, s: &Sizes) -> Result<Vec<Scalar>> {
    let (p, x) = aw_and_x(pt)?;
    (2..=s.n_max())
        .map(|n| check_aw_quadratic(n, &p, &x))
        .collect()
}

fn desnanot_jacobi(pt: &ParamPoint, s: &Sizes) -> Result<Vec<Scalar>> {
    let n = s.n_max().min(DJ_MAX);
    let full = Matrix::try_from_fn(DJ_MAX, DJ_MAX, |i, j| {
        pt.get(&format!("m{}", i * DJ_MAX + j))
    })?;
    (2..=n)
        .map(|k| {
            let sub = Matrix::try_from_fn(k, k, |i, j| Ok(full.get(i, j).clone()))?;
            desnanot_jacobi_residual(&sub)
        })
        .collect()
}

fn b_matrix_det(pt: &ParamPoint, s: &Sizes) -> Result<Vec<Scalar>> {
    let (p, x) = aw_and_x(pt)?;
    let mut out = Vec::new();
    for n in 1..=s.n_max() {
        let m = build_b_matrix(n, &p, &x)?;
        let det = det_fraction_free(&m)?;
        out.push(&det - rhs_det_formula(n, &p, &x)?);
        out.push(det_condensation(&m)? - &det);
        if n <= 6 {
            out.push(det_cofactor(&m)? - &det);
        }
        if n >= 2 {
            out.extend(d_ratio_residuals(n, &p)?);
        }
    }
    Ok(out)
}

fn mehta_wang(pt: &ParamPoint, s: &Sizes) -> Result<Vec<Scalar>> {
    let (a, u, v, q) = (pt.get("a")?, pt.get("u")?, pt.get("v")?, pt.get("q")?);
    let b = &v * &v;
    let c = (&u * &u).try_div(&(&a * &q))?;
    (1..=s.n_max())
        .map(|n| {
            Ok(
                det_fraction_free(&build_mehta_wang_matrix(n, &a, &b, &c, &q)?)?
                    - rhs_mehta_wang(n, &a, &u, &v, &q)?,
            )
        })
        .collect()
}

fn andrews_watson(pt: &ParamPoint, s: &Sizes) -> Result<Vec<Scalar>> {
    let (a, b, q) = abq(pt)?;
    (0..=s.n_max())
        .map(|n| check_andrews_watson(n, &a, &b, &q))
        .collect()
}

fn even_det(pt: &ParamPoint, s: &Sizes) -> Result<Vec<Scalar>> {
    let (a, b, q) = abq(pt)?;
    (1..=s.m_max())
        .map(|m| {
            Ok(det_fraction_free(&build_even_det(m, &a, &b, &q)?)? - rhs_even_det(m, &a, &b, &q)?)
        })
        .collect()
}

fn pfaffian_product(pt: &ParamPoint, s: &Sizes) -> Result<Vec<Scalar>> {
    let (a, b, q) = abq(pt)?;
    let mut out = Vec::new();
    for m in 1..=s.m_max() {
        let mat = build_even_det(m, &a, &b, &q)?;
        let det = det_fraction_free(&mat)?;
        let skew = SkewMatrix::new(mat)?;
        let rhs = rhs_pfaffian(m, &a, &b, &q)?;
        out.push(pfaffian_matchings(&skew)? - &rhs);
        out.push(pfaffian_expansion(&skew)? - &rhs);
        out.push(&rhs * &rhs - det);
    }
    Ok(out)
}

fn pfaffian_integer_exponent(pt: &ParamPoint, s: &Sizes) -> Result<Vec<Scalar>> {
    let q = pt.get("q")?;
    let mut out = Vec::new();
    for alpha in 1..=4 {
        for m in 1..=s.m_max() {
            let rhs = rhs_integer_exponent(m, alpha, &q)?;
            out.push(pfaffian_matchings(&build_integer_exponent_matrix(m, alpha, &q)?)? - &rhs);
            out.push(rhs_pfaffian(m, &qpow(&q, alpha - 1)?, &Scalar::zero(), &q)? - rhs);
        }
    }
    Ok(out)
}

fn gamma_pfaffian(_: &ParamPoint, s: &Sizes) -> Result<Vec<Scalar>> {
    let mut out = Vec::new();
    for alpha in 1..=4 {
        for m in 1..=s.m_max() {
            out.push(check_gamma_pfaffian(m, alpha)?);
        }
    }
    Ok(out)
}

fn gram_det(pt: &ParamPoint, s: &Sizes) -> Result<Vec<Scalar>> {
    let (p, x) = aw_and_x(pt)?;
    (1..=s.n_max())
        .map(|n| {
            Ok(det_fraction_free(&build_gram_matrix(n, &p, &x)?)? - rhs_gram_formula(n, &p, &x)?)
        })
        .collect()
}

fn gram_column_elimination(pt: &ParamPoint, s: &Sizes) -> Result<Vec<Scalar>> {
    let (p, x) = aw_and_x(pt)?;
    let mut out = Vec::new();
    for n in 1..=s.n_max() {
        out.extend(column_elimination_residuals(n, &p, &x)?);
    }
    Ok(out)
}

fn gram_leading_coeff(pt: &ParamPoint, s: &Sizes) -> Result<Vec<Scalar>> {
    let p = AWParams::from_point(pt)?;
    (1..=s.n_max()).map(|n| check_gram_leading(n, &p)).collect()
}

fn little_qjacobi_hankel(pt: &ParamPoint, s: &Sizes) -> Result<Vec<Scalar>> {
    hankel_with_drift(pt, s, 0)
}

fn hankel_with_drift(pt: &ParamPoint, s: &Sizes, drift: i64) -> Result<Vec<Scalar>> {
    let p = AWParams::from_point(pt)?;
    (1..=s.n_max())
        .map(|n| {
            Ok(det_fraction_free(&build_hankel_little_qjacobi(n, &p)?)?
                - hankel_closed_form(n, &p, drift)?)
        })
        .collect()
}

fn mutant_hankel(pt: &ParamPoint, s: &Sizes) -> Result<Vec<Scalar>> {
    hankel_with_drift(pt, s, 1)
}

fn little_qjacobi_decorated(pt: &ParamPoint, s: &Sizes) -> Result<Vec<Scalar>> {
    let p = AWParams::from_point(pt)?;
    (1..=s.n_max())
        .map(|n| {
            Ok(det_fraction_free(&build_hankel_decorated(n, &p)?)? - rhs_hankel_decorated(n, &p)?)
        })
        .collect()
}

fn contiguous(pt: &ParamPoint, s: &Sizes) -> Result<Vec<Scalar>> {
    let mut out = Vec::new();
    for (r, sd) in CONTIGUOUS_SHAPES {
        let cp = ContiguousParams::from_point(pt, r, sd)?;
        out.extend(contiguous_residual(&cp, s.series_order())?.into_coeffs());
    }
    Ok(out)
}

fn basis_moments(pt: &ParamPoint, s: &Sizes) -> Result<Vec<Scalar>> {
    basis_moment_residuals(s.n_max(), &AWParams::from_point(pt)?)
}

fn moment_double_sum(pt: &ParamPoint, s: &Sizes) -> Result<Vec<Scalar>> {
    let p = AWParams::from_point(pt)?;
    let t = pt.get("t")?;
    (0..=s.n_max())
        .map(|n| check_moment_double_sum(n, &t, &p))
        .collect()
}

fn moment_symmetry(pt: &ParamPoint, s: &Sizes) -> Result<Vec<Scalar>> {
    let p = AWParams::from_point(pt)?;
    let t = pt.get("t")?;
    let mut out = Vec::new();
    for n in 0..=s.n_max() {
        out.extend(moment_symmetry_residuals(n, &t, &p)?);
    }
    Ok(out)
}

fn orthogonality(pt: &ParamPoint, s: &Sizes) -> Result<Vec<Scalar>> {
    let p = AWParams::from_point(pt)?;
    let polys: Vec<PolynomialInX> = (0..=s.n_max())
        .map(|n| aw_poly_as_polynomial(n, &p))
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    for (m, pm) in polys.iter().enumerate() {
        for (n, pn) in polys.iter().enumerate().skip(m) {
            let value = moment_functional(&(pm * pn), &p)?;
            out.push(if m == n {
                value - aw_norm_ratio(n, &p)?
            } else {
                value
            });
        }
    }
    Ok(out)
}

fn aw_symmetry(pt: &ParamPoint, s: &Sizes) -> Result<Vec<Scalar>> {
    let (p, x) = aw_and_x(pt)?;
    let mut out = Vec::new();
    for n in 0..=s.n_max() {
        out.extend(aw_symmetry_residuals(n, &p, &x, n <= 4)?);
    }
    Ok(out)
}

fn aw_leading(pt: &ParamPoint, s: &Sizes) -> Result<Vec<Scalar>> {
    let p = AWParams::from_point(pt)?;
    (0..=s.n_max())
        .map(|n| check_aw_leading_coeff(n, &p))
        .collect()
}

fn random_poly(pt: &ParamPoint, degree: usize) -> Result<PolynomialInX> {
    Ok(PolynomialInX::new(pt.indexed("c", 0..degree + 1)?))
}

fn newton_interpolation(pt: &ParamPoint, s: &Sizes) -> Result<Vec<Scalar>> {
    let deg = s.n_max().min(POLY_MAX);
    let f = random_poly(pt, deg)?;
    let nodes = pt.indexed("x", 0..deg + 1)?;
    for (i, x) in nodes.iter().enumerate() {
        if nodes[..i].contains(x) {
            return Err(Error::DuplicateNodes);
        }
    }
    newton_reconstruction_residuals(&f, &nodes)
}

fn newton_lattice(pt: &ParamPoint, s: &Sizes) -> Result<Vec<Scalar>> {
    let deg = s.n_max().min(POLY_MAX);
    let f = random_poly(pt, deg)?;
    let x = XPoint::new(pt.get("z")?)?;
    newton_lattice_residuals(&f, &pt.get("a")?, &pt.get("q")?, &x)
}

fn connection_coeffs(pt: &ParamPoint, s: &Sizes) -> Result<Vec<Scalar>> {
    let n = s.n_max().min(POLY_MAX);
    let shifts = pt.indexed("s", 0..POLY_MAX)?;
    let nodes = pt.indexed("t", 0..POLY_MAX + 1)?;
    connection_residuals(n, &shifts, &nodes, &pt.get("x")?)
}

/// Every registered identity, in report order.
pub fn registry() -> Vec<IdentityCheck> {
    let aw = || names(AW);
    let awz = || names(AWZ);
    let abq = || names(&["a", "b", "q"]);
    vec![
        check(
            "main_quadratic",
            "quadratic formula for products of r+4 phi s+3",
            names(QUADRATIC),
            Sizes::order(DEFAULT_ORDER),
            main_quadratic,
        ),
        check(
            "six_term_sums",
            "coefficientwise sum of the six-term summands",
            names(QUADRATIC),
            Sizes::n(5),
            six_term_sums,
        ),
        check(
            "six_term_pairs",
            "pairing k <-> n-k+1 of the six-term summands",
            names(QUADRATIC),
            Sizes::n(5),
            six_term_pairs,
        ),
        check(
            "ten_factor_polynomial",
            "ten-factor polynomial identity in a, b, c, d, x, y, z",
            names(&["a", "b", "c", "d", "x", "y", "z"]),
            Sizes::none(),
            ten_factor_polynomial,
        ),
        check(
            "six_term_factorization",
            "factorization of the six-term summands through G_k and Xi",
            names(QUADRATIC),
            Sizes::n(5),
            six_term_factorization,
        ),
        check(
            "phi_r_quadratic",
            "quadratic relation for products of r+1 phi r",
            with_indexed(&["q"], &[("a", 0..4), ("b", 1..4)]),
            Sizes::order(DEFAULT_ORDER),
            phi_r_quadratic,
        ),
        check(
            "aw_quadratic",
            "quadratic relation for Askey-Wilson polynomials",
            awz(),
            Sizes::n(6),
            aw_quadratic,
        ),
        check(
            "desnanot_jacobi",
            "Desnanot-Jacobi adjoint matrix theorem",
            with_indexed(&[], &[("m", 0..DJ_MAX * DJ_MAX)]),
            Sizes::n(6),
            desnanot_jacobi,
        ),
        check(
            "b_matrix_det",
            "determinant of the B-matrix equals D_n p_n",
            awz(),
            Sizes::n(5),
            b_matrix_det,
        ),
        check(
            "mehta_wang",
            "Mehta-Wang type q-determinant with a terminating 4 phi 3",
            names(&["a", "u", "v", "q"]),
            Sizes::n(5),
            mehta_wang,
        ),
        check(
            "andrews_watson",
            "terminating q-analogue of Watson's sum",
            abq(),
            Sizes::n(8),
            andrews_watson,
        ),
        check(
            "even_det",
            "even-order skew determinant, product form",
            abq(),
            Sizes::m(3),
            even_det,
        ),
        check(
            "pfaffian_product",
            "Pfaffian of the even-order matrix, positive sign",
            abq(),
            Sizes::m(3),
            pfaffian_product,
        ),
        check(
            "pfaffian_integer_exponent",
            "Pfaffian with (q^alpha; q)_{i+j} at integer alpha",
            names(&["q"]),
            Sizes::m(3),
            pfaffian_integer_exponent,
        ),
        check(
            "gamma_pfaffian",
            "Gamma-function Pfaffian at integer alpha",
            Vec::new(),
            Sizes::m(3),
            gamma_pfaffian,
        ),
        check(
            "gram_det",
            "bordered Gram determinant equals C p_n",
            awz(),
            Sizes::n(4),
            gram_det,
        ),
        check(
            "gram_column_elimination",
            "column elimination from the Gram matrix to the B-matrix",
            awz(),
            Sizes::n(4),
            gram_column_elimination,
        ),
        check(
            "gram_leading_coeff",
            "normalization C from the leading coefficient",
            aw(),
            Sizes::n(4),
            gram_leading_coeff,
        ),
        check(
            "little_qjacobi_hankel",
            "little q-Jacobi moment Hankel determinant",
            aw(),
            Sizes::n(5),
            little_qjacobi_hankel,
        ),
        check(
            "little_qjacobi_decorated",
            "row and column scaled little q-Jacobi Hankel determinant",
            aw(),
            Sizes::n(5),
            little_qjacobi_decorated,
        ),
        check(
            "contiguous",
            "contiguous relation for r phi s",
            names(&["a", "b", "q", "A1", "A2", "B1"]),
            Sizes::order(DEFAULT_ORDER),
            contiguous,
        ),
        check(
            "basis_moments",
            "moments of the (az, a/z; q)_k and (bz, b/z; q)_k bases",
            aw(),
            Sizes::n(6),
            basis_moments,
        ),
        check(
            "moment_double_sum",
            "double-sum formula for the moments L((t + x)^n)",
            names(&["a", "b", "c", "d", "q", "t"]),
            Sizes::n(6),
            moment_double_sum,
        ),
        check(
            "moment_symmetry",
            "moments invariant under permutations of a, b, c, d",
            names(&["a", "b", "c", "d", "q", "t"]),
            Sizes::n(6),
            moment_symmetry,
        ),
        check(
            "orthogonality",
            "orthogonality L(p_m p_n) = delta_mn h_n/h_0",
            aw(),
            Sizes::n(4),
            orthogonality,
        ),
        check(
            "aw_symmetry",
            "Askey-Wilson polynomials symmetric in a, b, c, d",
            awz(),
            Sizes::n(6),
            aw_symmetry,
        ),
        check(
            "aw_leading_coeff",
            "leading coefficient 2^n (abcd q^{n-1}; q)_n",
            aw(),
            Sizes::n(6),
            aw_leading,
        ),
        check(
            "newton_interpolation",
            "Newton divided-difference interpolation",
            with_indexed(&[], &[("c", 0..POLY_MAX + 1), ("x", 0..POLY_MAX + 1)]),
            Sizes::n(8),
            newton_interpolation,
        ),
        check(
            "newton_lattice",
            "Newton interpolation on the q-quadratic lattice",
            with_indexed(&["a", "q", "z"], &[("c", 0..POLY_MAX + 1)]),
            Sizes::n(6),
            newton_lattice,
        ),
        check(
            "connection_coeffs",
            "connection coefficients u(n, k) and their recurrence",
            with_indexed(&["x"], &[("s", 0..POLY_MAX), ("t", 0..POLY_MAX + 1)]),
            Sizes::n(8),
            connection_coeffs,
        ),
    ]
}

/// Checks with a deliberately perturbed closed form; every trial must fail.
pub fn mutants() -> Vec<IdentityCheck> {
    vec![check(
        "mutant_little_qjacobi_hankel",
        "little q-Jacobi Hankel determinant, q exponent off by one",
        names(AW),
        Sizes::n(5),
        mutant_hankel,
    )]
}

/// Looks up a registered identity or mutant by id.
pub fn find(id: &str) -> Result<IdentityCheck> {
    registry()
        .into_iter()
        .chain(mutants())
        .find(|c| c.id == id)
        .ok_or_else(|| Error::UnknownIdentity(id.to_string()))
}
