//! Exact lower-triangular matrices of order `m` (that is, `(m+1) x (m+1)`).
//!
//! Houses the creation matrix `H`, the derivation matrices for the vector
//! variable, Pascal matrices as nilpotent exponentials, forward-substitution
//! inversion, and the transfer matrices of the classical Appell families.

use std::fmt;

use crate::clifford::Multivector;
use crate::error::{Error, Result};
use crate::num::{binomial, factorial, ratio, Rational};

/// Anything a rational matrix can act on: a vector space over the rationals.
pub trait ModuleElement: Clone {
    /// The zero element of the same shape (dimension, etc.) as `self`.
    fn zero_like(&self) -> Self;

    /// `self += c * other`
    fn add_scaled(&mut self, c: &Rational, other: &Self);
}

impl ModuleElement for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }

    fn add_scaled(&mut self, c: &Rational, other: &Self) {
        *self += c * other;
    }
}

impl ModuleElement for Multivector {
    fn zero_like(&self) -> Self {
        Multivector::zero(self.dim())
    }

    fn add_scaled(&mut self, c: &Rational, other: &Self) {
        Multivector::add_scaled(self, c, other);
    }
}

/// Lower-triangular `(m+1) x (m+1)` rational matrix, packed row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TriMatrix {
    m: usize,
    entries: Vec<Rational>,
}

#[inline]
fn idx(i: usize, j: usize) -> usize {
    i * (i + 1) / 2 + j
}

impl TriMatrix {
    pub fn zeros(m: usize) -> Self {
        TriMatrix { m, entries: vec![Rational::zero(); idx(m + 1, 0)] }
    }

    pub fn identity(m: usize) -> Self {
        let mut t = TriMatrix::zeros(m);
        for i in 0..=m {
            t.entries[idx(i, i)] = Rational::one();
        }
        t
    }

    /// Diagonal matrix; its order is `diag.len() - 1`.
    pub fn diagonal(diag: &[Rational]) -> Result<Self> {
        if diag.is_empty() {
            return Err(Error::Domain("diagonal needs at least one entry".into()));
        }
        let mut t = TriMatrix::zeros(diag.len() - 1);
        for (i, d) in diag.iter().enumerate() {
            t.entries[idx(i, i)] = d.clone();
        }
        Ok(t)
    }

    /// From lower-triangular rows; row `i` must hold exactly `i + 1` entries.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::Domain("matrix needs at least one row".into()));
        }
        let m = rows.len() - 1;
        let mut entries = Vec::with_capacity(idx(m + 1, 0));
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != i + 1 {
                return Err(Error::Domain(format!(
                    "row {i} has {} entries, expected {}",
                    row.len(),
                    i + 1
                )));
            }
            entries.extend(row);
        }
        Ok(TriMatrix { m, entries })
    }

    /// Builds a strictly lower matrix from its subdiagonal `(1,0), (2,1), ..`.
    pub fn from_subdiagonal(sub: Vec<Rational>) -> Self {
        let m = sub.len();
        let mut t = TriMatrix::zeros(m);
        for (j, v) in sub.into_iter().enumerate() {
            t.entries[idx(j + 1, j)] = v;
        }
        t
    }

    /// The order `m`; the matrix is `(m+1) x (m+1)`.
    pub fn order(&self) -> usize {
        self.m
    }

    pub fn size(&self) -> usize {
        self.m + 1
    }

    /// Entry `(i, j)`; zero above the diagonal.
    pub fn get(&self, i: usize, j: usize) -> Rational {
        assert!(i <= self.m && j <= self.m, "index ({i}, {j}) out of range");
        if j > i {
            Rational::zero()
        } else {
            self.entries[idx(i, j)].clone()
        }
    }

    pub(crate) fn at(&self, i: usize, j: usize) -> &Rational {
        &self.entries[idx(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) -> Result<()> {
        if i > self.m || j > i {
            return Err(Error::Domain(format!(
                "({i}, {j}) is not a lower-triangular position of order {}",
                self.m
            )));
        }
        self.entries[idx(i, j)] = value;
        Ok(())
    }

    /// Row `i`, entries `0..=i`.
    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[idx(i, 0)..=idx(i, i)]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Rational]> {
        (0..=self.m).map(move |i| self.row(i))
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (j..=self.m).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn diag(&self) -> Vec<Rational> {
        (0..=self.m).map(|i| self.at(i, i).clone()).collect()
    }

    pub fn subdiagonal(&self) -> Vec<Rational> {
        (1..=self.m).map(|i| self.at(i, i - 1).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Rational::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        *self == TriMatrix::identity(self.m)
    }

    pub fn is_strictly_lower(&self) -> bool {
        (0..=self.m).all(|i| self.at(i, i).is_zero())
    }

    fn check_order(&self, other: &TriMatrix) -> Result<()> {
        if self.m != other.m {
            return Err(Error::OrderMismatch { left: self.m, right: other.m });
        }
        Ok(())
    }

    pub fn add(&self, other: &TriMatrix) -> Result<TriMatrix> {
        self.check_order(other)?;
        Ok(TriMatrix {
            m: self.m,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &TriMatrix) -> Result<TriMatrix> {
        self.check_order(other)?;
        Ok(TriMatrix {
            m: self.m,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn scale(&self, c: &Rational) -> TriMatrix {
        TriMatrix { m: self.m, entries: self.entries.iter().map(|a| a * c).collect() }
    }

    /// Matrix product; lower-triangular matrices are closed under it.
    pub fn mul(&self, other: &TriMatrix) -> Result<TriMatrix> {
        self.check_order(other)?;
        let mut out = TriMatrix::zeros(self.m);
        for i in 0..=self.m {
            for j in 0..=i {
                let mut acc = Rational::zero();
                for k in j..=i {
                    let (a, b) = (self.at(i, k), other.at(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                out.entries[idx(i, j)] = acc;
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> TriMatrix {
        let mut acc = TriMatrix::identity(self.m);
        for _ in 0..k {
            acc = acc.mul(self).expect("same order");
        }
        acc
    }

    /// Matrix-vector action on any rational vector space.
    pub fn apply<R: ModuleElement>(&self, v: &[R]) -> Result<Vec<R>> {
        if v.len() != self.size() {
            return Err(Error::OrderMismatch { left: self.m, right: v.len().wrapping_sub(1) });
        }
        Ok((0..=self.m)
            .map(|i| {
                let mut acc = v[i].zero_like();
                for (a, x) in self.row(i).iter().zip(v) {
                    if !a.is_zero() {
                        acc.add_scaled(a, x);
                    }
                }
                acc
            })
            .collect())
    }

    /// Exact inverse by forward substitution, column by column.
    pub fn inverse(&self) -> Result<TriMatrix> {
        let inv_diag = (0..=self.m)
            .map(|i| {
                self.at(i, i)
                    .recip()
                    .map_err(|_| Error::Singular(format!("zero diagonal entry at ({i}, {i})")))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut out = TriMatrix::zeros(self.m);
        for (j, d) in inv_diag.iter().enumerate() {
            out.entries[idx(j, j)] = d.clone();
            for (i, d_i) in inv_diag.iter().enumerate().skip(j + 1) {
                let mut acc = Rational::zero();
                for k in j..i {
                    let a = self.at(i, k);
                    if !a.is_zero() {
                        acc += a * out.at(k, j);
                    }
                }
                out.entries[idx(i, j)] = -(acc * d_i);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for TriMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = (0..=self.m)
            .map(|i| (0..=self.m).map(|j| self.get(i, j).to_string()).collect())
            .collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for row in cells {
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            writeln!(f, "[ {} ]", line.join("  "))?;
        }
        Ok(())
    }
}

/// Creation matrix `H`: `(H)_{i,i-1} = i`, zero elsewhere.
pub fn creation_matrix(m: usize) -> TriMatrix {
    TriMatrix::from_subdiagonal((1..=m).map(|i| Rational::from(i as i64)).collect())
}

/// Derivation matrix for the Dirac operator acting on `(1, x̲, x̲^2, ..)`:
/// `(i, i-1)` entry is `-(n + i - 1)` when `i - 1` is even and `-i` when odd.
pub fn derivation_matrix_tilde(n: usize, m: usize) -> Result<TriMatrix> {
    derivation_matrix_shifted(n, 0, m)
}

/// Derivation matrix for `x̲^j Q_s(x̲)` with `Q_s` a monogenic factor of degree `s`:
/// `(i, i-1)` entry is `-(n + i + 2s - 1)` when `i - 1` is even and `-i` when odd.
pub fn derivation_matrix_shifted(n: usize, s: usize, m: usize) -> Result<TriMatrix> {
    if n == 0 {
        return Err(Error::Domain("dimension n must be at least 1".into()));
    }
    let sub = (1..=m)
        .map(|i| {
            let j = i - 1;
            let v = if j % 2 == 0 { n + i + 2 * s - 1 } else { i };
            -Rational::from(v as i64)
        })
        .collect();
    Ok(TriMatrix::from_subdiagonal(sub))
}

/// `exp(t M) = Σ_{k=0}^{m} (t M)^k / k!` for strictly lower-triangular `M`.
pub fn nilpotent_exp(mat: &TriMatrix, t: &Rational) -> Result<TriMatrix> {
    if !mat.is_strictly_lower() {
        return Err(Error::Domain(
            "exponential series only terminates for a strictly lower-triangular matrix".into(),
        ));
    }
    let step = mat.scale(t);
    let mut term = TriMatrix::identity(mat.order());
    let mut acc = term.clone();
    for k in 1..=mat.order() {
        term = term.mul(&step)?.scale(&ratio(1, k as i64));
        if term.is_zero() {
            break;
        }
        acc = acc.add(&term)?;
    }
    Ok(acc)
}

/// Generalized Pascal matrix `P(x0)`: entries `C(i,j) x0^{i-j}` for `i >= j`.
pub fn pascal_matrix(x0: &Rational, m: usize) -> TriMatrix {
    let mut t = TriMatrix::zeros(m);
    let powers: Vec<Rational> = (0..=m as u32).map(|k| x0.pow(k)).collect();
    for i in 0..=m {
        for j in 0..=i {
            t.entries[idx(i, j)] =
                Rational::from(binomial(i as u32, j as u32)) * &powers[i - j];
        }
    }
    t
}

pub fn tri_inverse(mat: &TriMatrix) -> Result<TriMatrix> {
    mat.inverse()
}

/// Bernoulli transfer matrix `(Σ_{k=0}^{m} H^k / (k+1)!)^{-1}`.
pub fn transfer_bernoulli(m: usize) -> TriMatrix {
    bernoulli_generator(m).inverse().expect("unit diagonal")
}

/// `Σ_{k=0}^{m} H^k / (k+1)!`, the matrix inverted by [`transfer_bernoulli`].
pub fn bernoulli_generator(m: usize) -> TriMatrix {
    let h = creation_matrix(m);
    let mut power = TriMatrix::identity(m);
    let mut acc = TriMatrix::zeros(m);
    for k in 0..=m as u32 {
        let w = Rational::from(factorial(k + 1)).recip().expect("nonzero");
        acc = acc.add(&power.scale(&w)).expect("same order");
        power = power.mul(&h).expect("same order");
    }
    acc
}

/// Frobenius–Euler transfer matrix `(1 - λ)(P - λI)^{-1}` with `P = P(1)`.
pub fn transfer_frobenius_euler(lambda: &Rational, m: usize) -> Result<TriMatrix> {
    if lambda.is_one() {
        return Err(Error::Singular("Frobenius-Euler parameter must differ from 1".into()));
    }
    let shifted = pascal_matrix(&Rational::one(), m).sub(&TriMatrix::identity(m).scale(lambda))?;
    Ok(shifted.inverse()?.scale(&(Rational::one() - lambda)))
}

/// Euler transfer matrix: Frobenius–Euler at `λ = -1`.
pub fn transfer_euler(m: usize) -> TriMatrix {
    transfer_frobenius_euler(&Rational::from(-1), m).expect("λ = -1 is admissible")
}

/// Monic Hermite transfer matrix `exp(-H^2/4) = Σ_k (-H^2)^k / (4^k k!)`.
pub fn transfer_hermite(m: usize) -> TriMatrix {
    let h2 = creation_matrix(m).pow(2);
    let step = h2.scale(&ratio(-1, 4));
    let mut term = TriMatrix::identity(m);
    let mut acc = term.clone();
    for k in 1..=m {
        term = term.mul(&step).expect("same order").scale(&ratio(1, k as i64));
        if term.is_zero() {
            break;
        }
        acc = acc.add(&term).expect("same order");
    }
    acc
}
