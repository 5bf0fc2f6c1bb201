//! Exact dense matrices, determinants and Pfaffians.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Largest order accepted by the factorial-cost reference engines.
pub const COFACTOR_MAX_ORDER: usize = 8;
pub const MATCHING_MAX_ORDER: usize = 8;

/// Row-major rectangular matrix over [`Scalar`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Index(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Matrix {
            rows,
            cols,
            entries,
        })
    }

    /// Builds a matrix from a fallible entry function `f(i, j)`.
    pub fn try_from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Result<Scalar>,
    ) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j)?);
            }
        }
        Ok(Matrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Index("ragged rows".into()));
        }
        Matrix::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect())
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix {
            rows: n,
            cols: n,
            entries: vec![Scalar::zero(); n * n],
        };
        for i in 0..n {
            m.entries[i * n + i] = Scalar::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn with_rows_swapped(&self, a: usize, b: usize) -> Self {
        let mut m = self.clone();
        for j in 0..self.cols {
            m.entries.swap(a * self.cols + j, b * self.cols + j);
        }
        m
    }

    pub fn is_skew(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..=i).all(|j| *self.get(i, j) == -self.get(j, i)))
    }

    fn require_square(&self) -> Result<usize> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(self.rows)
    }
}

fn check_indices(set: &[usize], bound: usize, what: &str) -> Result<()> {
    for (k, &i) in set.iter().enumerate() {
        if i >= bound {
            return Err(Error::Index(format!(
                "{what} index {i} out of range {bound}"
            )));
        }
        if set[..k].contains(&i) {
            return Err(Error::Index(format!("duplicate {what} index {i}")));
        }
    }
    Ok(())
}

/// Submatrix left after deleting the given rows and columns.
pub fn minor(m: &Matrix, drop_rows: &[usize], drop_cols: &[usize]) -> Result<Matrix> {
    check_indices(drop_rows, m.rows, "row")?;
    check_indices(drop_cols, m.cols, "column")?;
    let keep_r: Vec<usize> = (0..m.rows).filter(|i| !drop_rows.contains(i)).collect();
    let keep_c: Vec<usize> = (0..m.cols).filter(|j| !drop_cols.contains(j)).collect();
    let entries = keep_r
        .iter()
        .flat_map(|&i| keep_c.iter().map(move |&j| m.get(i, j).clone()))
        .collect();
    Ok(Matrix {
        rows: keep_r.len(),
        cols: keep_c.len(),
        entries,
    })
}

/// Laplace expansion along the first row. Reference engine, order <= 8.
pub fn det_cofactor(m: &Matrix) -> Result<Scalar> {
    let n = m.require_square()?;
    if n > COFACTOR_MAX_ORDER {
        return Err(Error::OrderTooLarge {
            order: n,
            max: COFACTOR_MAX_ORDER,
        });
    }
    let cols: Vec<usize> = (0..n).collect();
    Ok(laplace(m, 0, &cols))
}

fn laplace(m: &Matrix, row: usize, cols: &[usize]) -> Scalar {
    if cols.is_empty() {
        return Scalar::one();
    }
    let mut acc = Scalar::zero();
    for (k, &c) in cols.iter().enumerate() {
        let e = m.get(row, c);
        if e.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = e * laplace(m, row + 1, &rest);
        if k % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Fraction-free (Bareiss) elimination.
///
/// Each row is first scaled to integers by the lcm of its denominators, so
/// the elimination itself runs over `BigInt` with exact divisions.
pub fn det_fraction_free(m: &Matrix) -> Result<Scalar> {
    let n = m.require_square()?;
    if n == 0 {
        return Ok(Scalar::one());
    }
    let mut scale = BigInt::one();
    let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for i in 0..n {
        let lcm = m.row(i).iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
        a.push(
            m.row(i)
                .iter()
                .map(|x| x.numer() * (&lcm / x.denom()))
                .collect(),
        );
        scale *= lcm;
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return Ok(Scalar::zero());
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let mut det = a[n - 1][n - 1].clone();
    if negate {
        det = -det;
    }
    Scalar::from_bigints(det, scale)
}

/// Dodgson condensation.
///
/// Repeatedly replaces each connected 2x2 block by its determinant divided
/// by the central entry of the layer two steps back. A zero divisor sends
/// the whole computation to [`det_fraction_free`].
pub fn det_condensation(m: &Matrix) -> Result<Scalar> {
    let n = m.require_square()?;
    if n == 0 {
        return Ok(Scalar::one());
    }
    let mut prev: Vec<Vec<Scalar>> = vec![vec![Scalar::one(); n + 1]; n + 1];
    let mut cur: Vec<Vec<Scalar>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    while cur.len() > 1 {
        let k = cur.len();
        let mut next = Vec::with_capacity(k - 1);
        for i in 0..k - 1 {
            let mut row = Vec::with_capacity(k - 1);
            for j in 0..k - 1 {
                let div = &prev[i + 1][j + 1];
                if div.is_zero() {
                    return det_fraction_free(m);
                }
                let v = &cur[i][j] * &cur[i + 1][j + 1] - &cur[i][j + 1] * &cur[i + 1][j];
                row.push(v.try_div(div)?);
            }
            next.push(row);
        }
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(cur[0][0].clone())
}

/// `det M det M_{1n}^{1n} - (det M_1^1 det M_n^n - det M_n^1 det M_1^n)`,
/// identically zero for every square matrix of order at least 2.
pub fn desnanot_jacobi_residual(m: &Matrix) -> Result<Scalar> {
    let n = m.require_square()?;
    if n < 2 {
        return Err(Error::Domain(format!("order {n} below 2")));
    }
    let last = n - 1;
    let det = det_fraction_free;
    let lhs = det(m)? * det(&minor(m, &[0, last], &[0, last])?)?;
    let rhs = det(&minor(m, &[0], &[0])?)? * det(&minor(m, &[last], &[last])?)?
        - det(&minor(m, &[last], &[0])?)? * det(&minor(m, &[0], &[last])?)?;
    Ok(lhs - rhs)
}

/// Skew-symmetric square matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewMatrix(Matrix);

impl SkewMatrix {
    pub fn new(m: Matrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NonSquare {
                rows: m.rows,
                cols: m.cols,
            });
        }
        if !m.is_skew() {
            return Err(Error::NotSkew);
        }
        Ok(SkewMatrix(m))
    }

    /// Skew matrix from its strict upper triangle `f(i, j)`, `i < j`.
    pub fn from_upper(n: usize, mut f: impl FnMut(usize, usize) -> Result<Scalar>) -> Result<Self> {
        let mut entries = vec![Scalar::zero(); n * n];
        for i in 0..n {
            for j in i + 1..n {
                let v = f(i, j)?;
                entries[j * n + i] = -&v;
                entries[i * n + j] = v;
            }
        }
        Ok(SkewMatrix(Matrix {
            rows: n,
            cols: n,
            entries,
        }))
    }

    pub fn order(&self) -> usize {
        self.0.rows
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    fn require_even(&self) -> Result<usize> {
        let n = self.order();
        if n % 2 == 1 {
            return Err(Error::OddOrder(n));
        }
        Ok(n)
    }
}

/// Pfaffian as the signed sum over perfect matchings, the sign being
/// `(-1)^(number of crossing pairs)`. Reference engine, order <= 8.
pub fn pfaffian_matchings(m: &SkewMatrix) -> Result<Scalar> {
    let n = m.require_even()?;
    if n > MATCHING_MAX_ORDER {
        return Err(Error::OrderTooLarge {
            order: n,
            max: MATCHING_MAX_ORDER,
        });
    }
    let mut total = Scalar::zero();
    let mut pairs = Vec::with_capacity(n / 2);
    let mut used = vec![false; n];
    enumerate_matchings(&mut used, &mut pairs, &mut |pairs| {
        let crossings = pairs
            .iter()
            .flat_map(|&(i, j)| pairs.iter().map(move |&(k, l)| (i, j, k, l)))
            .filter(|&(i, j, k, l)| i < k && k < j && j < l)
            .count();
        let prod: Scalar = pairs.iter().map(|&(i, j)| m.0.get(i, j)).product();
        if crossings % 2 == 0 {
            total += prod;
        } else {
            total -= prod;
        }
    });
    Ok(total)
}

fn enumerate_matchings(
    used: &mut [bool],
    pairs: &mut Vec<(usize, usize)>,
    visit: &mut impl FnMut(&[(usize, usize)]),
) {
    let Some(i) = used.iter().position(|u| !u) else {
        visit(pairs);
        return;
    };
    used[i] = true;
    for j in i + 1..used.len() {
        if used[j] {
            continue;
        }
        used[j] = true;
        pairs.push((i, j));
        enumerate_matchings(used, pairs, visit);
        pairs.pop();
        used[j] = false;
    }
    used[i] = false;
}

/// Pfaffian by expansion along the first row:
/// `pf A = sum_{j>0} (-1)^{j+1} A_{0j} pf A_{\hat 0 \hat j}`.
pub fn pfaffian_expansion(m: &SkewMatrix) -> Result<Scalar> {
    m.require_even()?;
    let idx: Vec<usize> = (0..m.order()).collect();
    Ok(expand(&m.0, &idx))
}

fn expand(m: &Matrix, idx: &[usize]) -> Scalar {
    if idx.is_empty() {
        return Scalar::one();
    }
    let first = idx[0];
    let mut acc = Scalar::zero();
    for t in 1..idx.len() {
        let e = m.get(first, idx[t]);
        if e.is_zero() {
            continue;
        }
        let rest: Vec<usize> = idx[1..].iter().copied().filter(|&k| k != idx[t]).collect();
        let term = e * expand(m, &rest);
        if t % 2 == 1 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}
