//! Multivariate polynomials in `x_0, x_1, .., x_n` with Cl(0,n) coefficients,
//! and the first-order differential operators of hypercomplex function theory.
//!
//! The variables are real and commute with everything; only coefficients are
//! multiplied in the Clifford algebra. All operators act from the left.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use crate::clifford::{Multivector, Paravector};
use crate::error::{Error, Result};
use crate::matrix::ModuleElement;
use crate::num::{ratio, Rational};

/// Exponent vector `(α_0, α_1, .., α_n)` of the monomial `x_0^α_0 ... x_n^α_n`.
///
/// Ordered by total degree first; within a degree, larger powers of earlier
/// variables come first (so `x_0^2 < x_0 x_1 < x_1^2`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n + 1])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn times(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, &e) in self.0.iter().enumerate() {
            match e {
                0 => continue,
                1 => write!(f, "x{i}")?,
                _ => write!(f, "x{i}^{e}")?,
            }
            wrote = true;
        }
        if !wrote {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// Polynomial `Σ_α c_α x^α` with nonzero multivector coefficients `c_α ∈ Cl(0,n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliffordPoly {
    n: usize,
    terms: BTreeMap<Monomial, Multivector>,
}

impl CliffordPoly {
    pub fn zero(n: usize) -> Self {
        CliffordPoly { n, terms: BTreeMap::new() }
    }

    pub fn constant(c: Multivector) -> Self {
        let n = c.dim();
        let mut p = CliffordPoly::zero(n);
        p.add_term(Monomial::one(n), c);
        p
    }

    /// The real variable `x_i`, `0 <= i <= n`.
    pub fn variable(n: usize, i: usize) -> Result<Self> {
        if i > n {
            return Err(Error::Domain(format!("x{i} is not a variable in dimension {n}")));
        }
        let mut exps = vec![0; n + 1];
        exps[i] = 1;
        let mut p = CliffordPoly::zero(n);
        p.add_term(Monomial(exps), Multivector::one(n));
        Ok(p)
    }

    /// `x̲ = Σ_k e_k x_k`.
    pub fn vector_variable(n: usize) -> Self {
        let mut p = CliffordPoly::zero(n);
        for k in 1..=n {
            let mut exps = vec![0; n + 1];
            exps[k] = 1;
            p.add_term(Monomial(exps), Multivector::basis(n, k).expect("k in 1..=n"));
        }
        p
    }

    /// `x = x_0 + x̲`.
    pub fn paravector_variable(n: usize) -> Self {
        CliffordPoly::variable(n, 0).expect("x0 exists").add(&CliffordPoly::vector_variable(n))
    }

    pub fn from_terms(
        n: usize,
        terms: impl IntoIterator<Item = (Monomial, Multivector)>,
    ) -> Result<Self> {
        let mut p = CliffordPoly::zero(n);
        for (mono, c) in terms {
            if mono.0.len() != n + 1 {
                return Err(Error::DimensionMismatch { expected: n + 1, found: mono.0.len() });
            }
            if c.dim() != n {
                return Err(Error::DimensionMismatch { expected: n, found: c.dim() });
            }
            p.add_term(mono, c);
        }
        Ok(p)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Multivector)> {
        self.terms.iter()
    }

    /// Lowest term in the graded order; the reported witness for a nonzero result.
    pub fn first_term(&self) -> Option<(&Monomial, &Multivector)> {
        self.terms.iter().next()
    }

    pub fn coefficient(&self, mono: &Monomial) -> Multivector {
        self.terms.get(mono).cloned().unwrap_or_else(|| Multivector::zero(self.n))
    }

    /// Whether every term has total degree `d`.
    pub fn is_homogeneous(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    fn add_term(&mut self, mono: Monomial, c: Multivector) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                e.get_mut().add_scaled(&Rational::one(), &c);
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_dim(&self, other: &CliffordPoly) {
        assert_eq!(self.n, other.n, "polynomial dimension mismatch");
    }

    pub fn add(&self, other: &CliffordPoly) -> CliffordPoly {
        let mut out = self.clone();
        ModuleElement::add_scaled(&mut out, &Rational::one(), other);
        out
    }

    pub fn sub(&self, other: &CliffordPoly) -> CliffordPoly {
        let mut out = self.clone();
        ModuleElement::add_scaled(&mut out, &-Rational::one(), other);
        out
    }

    pub fn scale(&self, c: &Rational) -> CliffordPoly {
        let mut out = CliffordPoly::zero(self.n);
        ModuleElement::add_scaled(&mut out, c, self);
        out
    }

    /// Product with Clifford multiplication of coefficients, `self` on the left.
    pub fn mul(&self, other: &CliffordPoly) -> CliffordPoly {
        self.check_dim(other);
        let mut out = CliffordPoly::zero(self.n);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.times(mb), ca * cb);
            }
        }
        out
    }

    /// `c · self` with `c` multiplying every coefficient from the left.
    pub fn left_mul(&self, c: &Multivector) -> CliffordPoly {
        let mut out = CliffordPoly::zero(self.n);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), c * v);
        }
        out
    }

    pub fn pow(&self, k: u32) -> CliffordPoly {
        let mut acc = CliffordPoly::constant(Multivector::one(self.n));
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// `∂/∂x_i`
    pub fn partial(&self, i: usize) -> CliffordPoly {
        assert!(i <= self.n, "variable x{i} out of range");
        let mut out = CliffordPoly::zero(self.n);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[i] -= 1;
            out.add_term(Monomial(exps), c.scale(&Rational::from(e as i64)));
        }
        out
    }

    /// `∂_0 = ∂/∂x_0`
    pub fn partial_x0(&self) -> CliffordPoly {
        self.partial(0)
    }

    /// Dirac operator `∂_x̲ = Σ_k e_k ∂/∂x_k`, acting from the left.
    pub fn dirac(&self) -> CliffordPoly {
        let mut out = CliffordPoly::zero(self.n);
        for k in 1..=self.n {
            let ek = Multivector::basis(self.n, k).expect("k in 1..=n");
            for (m, c) in &self.terms {
                let e = m.0[k];
                if e == 0 {
                    continue;
                }
                let mut exps = m.0.clone();
                exps[k] -= 1;
                out.add_term(Monomial(exps), (&ek * c).scale(&Rational::from(e as i64)));
            }
        }
        out
    }

    /// Generalized Cauchy–Riemann operator `∂̄ = ½(∂_0 + ∂_x̲)`.
    pub fn cr_bar(&self) -> CliffordPoly {
        self.partial_x0().add(&self.dirac()).scale(&ratio(1, 2))
    }

    /// Hypercomplex derivative `∂ = ½(∂_0 - ∂_x̲)`.
    pub fn cr(&self) -> CliffordPoly {
        self.partial_x0().sub(&self.dirac()).scale(&ratio(1, 2))
    }

    /// Value at a paravector point.
    pub fn eval(&self, x: &Paravector) -> Result<Multivector> {
        if x.dim() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: x.dim() });
        }
        let coords: Vec<&Rational> = std::iter::once(&x.x0).chain(&x.vec).collect();
        let mut out = Multivector::zero(self.n);
        for (m, c) in &self.terms {
            let w: Rational = m.0.iter().zip(&coords).map(|(&e, v)| v.pow(e)).product();
            out.add_scaled(&w, c);
        }
        Ok(out)
    }
}

impl ModuleElement for CliffordPoly {
    fn zero_like(&self) -> Self {
        CliffordPoly::zero(self.n)
    }

    fn add_scaled(&mut self, c: &Rational, other: &Self) {
        self.check_dim(other);
        if c.is_zero() {
            return;
        }
        for (m, v) in &other.terms {
            self.add_term(m.clone(), v.scale(c));
        }
    }
}

impl fmt::Display for CliffordPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let is_one = m.degree() == 0;
            match (c.len(), is_one) {
                (_, true) => write!(f, "({c})")?,
                (1, false) if c.scalar_part().is_one() => write!(f, "{m}")?,
                _ => write!(f, "({c}){m}")?,
            }
        }
        Ok(())
    }
}
