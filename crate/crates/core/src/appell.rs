//! Construction of hypercomplex Appell sequences
//! `φ(x) = exp(H x_0) D_c ξ(x̲)` with `ξ(x̲) = (1, x̲, x̲^2, .., x̲^m)`.
//!
//! Polynomials are kept in *binary form*: rational combinations of the
//! commuting monomials `x_0^i x̲^j`. The multivariate expansion in
//! `x_0, x_1, .., x_n` is produced on demand for symbolic verification.

use std::collections::BTreeMap;
use std::fmt;

use crate::clifford::{vector_power, Multivector, Paravector};
use crate::error::{Error, Result};
use crate::matrix::{
    creation_matrix, transfer_bernoulli, transfer_euler, transfer_frobenius_euler,
    transfer_hermite, ModuleElement, TriMatrix,
};
use crate::num::{binomial, double_factorial, factorial, ratio, Rational};
use crate::poly::CliffordPoly;

/// Which Appell family a sequence represents, i.e. which transfer matrix `f(H)`
/// is applied to the canonical sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Canonical,
    Bernoulli,
    Euler,
    FrobeniusEuler(Rational),
    Hermite,
}

impl Family {
    pub const NAMES: [&'static str; 5] =
        ["canonical", "bernoulli", "euler", "frobenius-euler", "hermite"];

    /// Parses a family name; `frobenius-euler` needs `lambda`, the others reject it.
    pub fn parse(name: &str, lambda: Option<Rational>) -> Result<Self> {
        let family = match (name, lambda) {
            ("frobenius-euler", Some(l)) => {
                if l.is_one() {
                    return Err(Error::Domain("lambda must differ from 1".into()));
                }
                Family::FrobeniusEuler(l)
            }
            ("frobenius-euler", None) => {
                return Err(Error::Domain("family frobenius-euler requires lambda".into()))
            }
            (_, Some(_)) => {
                return Err(Error::Domain(format!("lambda only applies to frobenius-euler, not {name}")))
            }
            ("canonical", None) => Family::Canonical,
            ("bernoulli", None) => Family::Bernoulli,
            ("euler", None) => Family::Euler,
            ("hermite", None) => Family::Hermite,
            _ => return Err(Error::Domain(format!("unknown family {name:?}"))),
        };
        Ok(family)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::Canonical => "canonical",
            Family::Bernoulli => "bernoulli",
            Family::Euler => "euler",
            Family::FrobeniusEuler(_) => "frobenius-euler",
            Family::Hermite => "hermite",
        }
    }

    pub fn lambda(&self) -> Option<&Rational> {
        match self {
            Family::FrobeniusEuler(l) => Some(l),
            _ => None,
        }
    }

    /// Transfer matrix `f(H)` of order `m`; the identity for the canonical family.
    pub fn transfer(&self, m: usize) -> Result<TriMatrix> {
        Ok(match self {
            Family::Canonical => TriMatrix::identity(m),
            Family::Bernoulli => transfer_bernoulli(m),
            Family::Euler => transfer_euler(m),
            Family::FrobeniusEuler(l) => transfer_frobenius_euler(l, m)?,
            Family::Hermite => transfer_hermite(m),
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::FrobeniusEuler(l) => write!(f, "frobenius-euler({l})"),
            other => f.write_str(other.name()),
        }
    }
}

/// Diagonal coefficients `c_0, .., c_m` of `D_c` for dimension `n` and shift `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffSequence {
    n: usize,
    s: usize,
    c: Vec<Rational>,
}

impl CoeffSequence {
    /// Wraps arbitrary coefficients. Only nonvanishing is enforced, so this
    /// also represents sequences that violate the monogenicity constraint.
    pub fn from_raw(n: usize, s: usize, c: Vec<Rational>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("dimension n must be at least 1".into()));
        }
        if c.is_empty() {
            return Err(Error::Domain("coefficient sequence is empty".into()));
        }
        if let Some(k) = c.iter().position(Rational::is_zero) {
            return Err(Error::Domain(format!("coefficient c_{k} vanishes; D_c must be non-singular")));
        }
        Ok(CoeffSequence { n, s, c })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn shift(&self) -> usize {
        self.s
    }

    pub fn order(&self) -> usize {
        self.c.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.c
    }

    pub fn get(&self, k: usize) -> &Rational {
        &self.c[k]
    }

    /// Copy with `c_k` replaced.
    pub fn with_coefficient(&self, k: usize, value: Rational) -> Result<Self> {
        if k > self.order() {
            return Err(Error::Domain(format!("no coefficient c_{k} in a sequence of order {}", self.order())));
        }
        let mut c = self.c.clone();
        c[k] = value;
        CoeffSequence::from_raw(self.n, self.s, c)
    }

    /// Truncation to degrees `0..=m`.
    pub fn truncate(&self, m: usize) -> Result<Self> {
        if m > self.order() {
            return Err(Error::Domain(format!("coefficients only cover degrees up to {}", self.order())));
        }
        Ok(CoeffSequence { n: self.n, s: self.s, c: self.c[..=m].to_vec() })
    }

    /// Whether consecutive coefficients obey `(n + j + 2s) c_{j+1} = (j+1) c_j`
    /// for even `j` and `c_{j+1} = c_j` for odd `j`.
    pub fn satisfies_constraints(&self) -> bool {
        self.c.windows(2).enumerate().all(|(j, w)| w[1] == step(self.n, self.s, j) * &w[0])
    }

    /// `D_c = diag(c_0, .., c_m)`.
    pub fn diagonal_matrix(&self) -> TriMatrix {
        TriMatrix::diagonal(&self.c).expect("nonempty")
    }
}

/// Ratio `c_{j+1} / c_j` forced by the monogenicity constraint.
fn step(n: usize, s: usize, j: usize) -> Rational {
    if j.is_multiple_of(2) {
        ratio((j + 1) as i64, (n + j + 2 * s) as i64)
    } else {
        Rational::one()
    }
}

/// Coefficients making `exp(H x_0) D_c ξ(x̲)` monogenic, built by the recurrence
/// `c_{2k-1} = (2k-1)/(n+2k-2) c_{2k-2}`, `c_{2k} = c_{2k-1}`.
pub fn canonical_coeffs(n: usize, m: usize, c0: Rational) -> Result<CoeffSequence> {
    shifted_coeffs(n, 0, m, c0)
}

/// As [`canonical_coeffs`] for sequences carrying a monogenic factor `Q_s` of degree `s`:
/// `c_{2k-1} = (2k-1)/(n+2k+2s-2) c_{2k-2}`, `c_{2k} = c_{2k-1}`.
pub fn shifted_coeffs(n: usize, s: usize, m: usize, c0: Rational) -> Result<CoeffSequence> {
    if n == 0 {
        return Err(Error::Domain("dimension n must be at least 1".into()));
    }
    if c0.is_zero() {
        return Err(Error::Domain("c0 must be nonzero".into()));
    }
    let mut c = Vec::with_capacity(m + 1);
    c.push(c0);
    for j in 0..m {
        let next = step(n, s, j) * &c[j];
        c.push(next);
    }
    CoeffSequence::from_raw(n, s, c)
}

/// Closed form `c_{2k} = c_{2k-1} = (2k-1)!! (n+2s-2)!! / (n+2k+2s-2)!! · c_0`.
pub fn closed_form_coeff(n: usize, s: usize, j: usize, c0: &Rational) -> Result<Rational> {
    if n == 0 {
        return Err(Error::Domain("dimension n must be at least 1".into()));
    }
    if j == 0 {
        return Ok(c0.clone());
    }
    let k = (j as i64 + 1) / 2;
    let (n, s) = (n as i64, s as i64);
    let num = double_factorial(2 * k - 1)? * double_factorial(n + 2 * s - 2)?;
    let den = double_factorial(n + 2 * k + 2 * s - 2)?;
    Ok(Rational::new(num, den)? * c0)
}

/// A polynomial in binary form: `Σ a_{i,j} x_0^i x̲^j`, tagged with its degree `k`.
///
/// Terms are keyed `(j, i)` so iteration runs over powers of `x̲` first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AppellPoly {
    k: usize,
    terms: BTreeMap<(u32, u32), Rational>,
}

impl AppellPoly {
    pub fn zero(k: usize) -> Self {
        AppellPoly { k, terms: BTreeMap::new() }
    }

    /// Homogeneous polynomial `Σ_j a_j x_0^{k-j} x̲^j` with `a.len() == k + 1`.
    pub fn homogeneous(a: Vec<Rational>) -> Result<Self> {
        let k = a.len().checked_sub(1).ok_or_else(|| Error::Domain("no coefficients".into()))?;
        AppellPoly::from_terms(
            k,
            a.into_iter().enumerate().map(|(j, a)| ((k - j) as u32, j as u32, a)),
        )
    }

    /// From `(i, j, a)` triples meaning `a x_0^i x̲^j`; requires `i + j <= k`.
    pub fn from_terms(k: usize, terms: impl IntoIterator<Item = (u32, u32, Rational)>) -> Result<Self> {
        let mut p = AppellPoly::zero(k);
        for (i, j, a) in terms {
            if (i + j) as usize > k {
                return Err(Error::Domain(format!(
                    "term x0^{i} x^{j} exceeds degree {k}"
                )));
            }
            p.add_term(i, j, a);
        }
        Ok(p)
    }

    fn add_term(&mut self, i: u32, j: u32, a: Rational) {
        if a.is_zero() {
            return;
        }
        let slot = self.terms.entry((j, i)).or_insert_with(Rational::zero);
        *slot += a;
        if slot.is_zero() {
            self.terms.remove(&(j, i));
        }
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    /// Terms as `(i, j, a)`: coefficient `a` of `x_0^i x̲^j`.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &Rational)> {
        self.terms.iter().map(|(&(j, i), a)| (i, j, a))
    }

    pub fn coefficient(&self, i: u32, j: u32) -> Rational {
        self.terms.get(&(j, i)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms.keys().all(|&(j, i)| (i + j) as usize == self.k)
    }

    fn with_degree(mut self, k: usize) -> Self {
        self.k = k;
        self
    }

    /// Restriction to `x̲ = 0`, a polynomial in `x_0`.
    pub fn restrict_real(&self) -> UniPoly {
        let mut c = vec![Rational::zero(); self.k + 1];
        for (i, j, a) in self.terms() {
            if j == 0 {
                c[i as usize] += a;
            }
        }
        UniPoly::new(c)
    }
}

impl ModuleElement for AppellPoly {
    fn zero_like(&self) -> Self {
        AppellPoly::zero(self.k)
    }

    fn add_scaled(&mut self, c: &Rational, other: &Self) {
        self.k = self.k.max(other.k);
        for (i, j, a) in other.terms() {
            self.add_term(i, j, c * a);
        }
    }
}

impl fmt::Display for AppellPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (i, j, a)) in self.terms().enumerate() {
            let (neg, mag) = (a.is_negative(), a.abs());
            match (idx, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mut factors = Vec::new();
            match i {
                0 => {}
                1 => factors.push("x0".to_string()),
                _ => factors.push(format!("x0^{i}")),
            }
            match j {
                0 => {}
                1 => factors.push("x".to_string()),
                _ => factors.push(format!("x^{j}")),
            }
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", factors.join(" "))?;
            } else {
                write!(f, "{mag} {}", factors.join(" "))?;
            }
        }
        Ok(())
    }
}

/// Real polynomial in `x_0`, coefficients by ascending power, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UniPoly(Vec<Rational>);

impl UniPoly {
    pub fn new(mut c: Vec<Rational>) -> Self {
        while c.last().is_some_and(Rational::is_zero) {
            c.pop();
        }
        UniPoly(c)
    }

    /// `x^k`
    pub fn monomial(k: usize) -> Self {
        let mut c = vec![Rational::zero(); k + 1];
        c[k] = Rational::one();
        UniPoly(c)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn coefficient(&self, k: usize) -> Rational {
        self.0.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from(k as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.0.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, c: &Rational) -> UniPoly {
        UniPoly::new(self.0.iter().map(|a| a * c).collect())
    }
}

impl ModuleElement for UniPoly {
    fn zero_like(&self) -> Self {
        UniPoly::default()
    }

    fn add_scaled(&mut self, c: &Rational, other: &Self) {
        if self.0.len() < other.0.len() {
            self.0.resize(other.0.len(), Rational::zero());
        }
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a += c * b;
        }
        let trimmed = std::mem::take(&mut self.0);
        *self = UniPoly::new(trimmed);
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(usize, &Rational)> =
            self.0.iter().enumerate().filter(|(_, c)| !c.is_zero()).rev().collect();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (k, c)) in terms.into_iter().enumerate() {
            let (neg, mag) = (c.is_negative(), c.abs());
            match (idx, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let var = match k {
                0 => String::new(),
                1 => "x0".into(),
                _ => format!("x0^{k}"),
            };
            match (var.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => f.write_str(&var)?,
                (false, false) => write!(f, "{mag} {var}")?,
            }
        }
        Ok(())
    }
}

/// A hypercomplex Appell sequence `φ_0, .., φ_m` in binary form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AppellSequence {
    n: usize,
    family: Family,
    coeffs: CoeffSequence,
    polys: Vec<AppellPoly>,
}

impl AppellSequence {
    /// Assembles a sequence; `polys[k]` must have degree `k`.
    pub fn from_parts(family: Family, coeffs: CoeffSequence, polys: Vec<AppellPoly>) -> Result<Self> {
        if polys.is_empty() {
            return Err(Error::Domain("a sequence needs at least phi_0".into()));
        }
        if let Some(k) = polys.iter().enumerate().position(|(k, p)| p.degree() != k) {
            return Err(Error::Domain(format!(
                "polynomial at position {k} has degree {}",
                polys[k].degree()
            )));
        }
        Ok(AppellSequence { n: coeffs.dim(), family, coeffs, polys })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn coeffs(&self) -> &CoeffSequence {
        &self.coeffs
    }

    pub fn shift(&self) -> usize {
        self.coeffs.shift()
    }

    /// Highest degree `m`.
    pub fn order(&self) -> usize {
        self.polys.len() - 1
    }

    pub fn polys(&self) -> &[AppellPoly] {
        &self.polys
    }

    pub fn poly(&self, k: usize) -> &AppellPoly {
        &self.polys[k]
    }

    /// Each `φ_k` expanded in `x_0, x_1, .., x_n`.
    pub fn expand(&self) -> Vec<CliffordPoly> {
        let powers = VectorPowers::new(self.n, self.max_vector_power());
        self.polys.iter().map(|p| powers.expand(p)).collect()
    }

    fn max_vector_power(&self) -> usize {
        self.polys.iter().flat_map(|p| p.terms().map(|(_, j, _)| j as usize)).max().unwrap_or(0)
    }

    /// Values `φ_0(x), .., φ_m(x)`.
    pub fn eval(&self, x: &Paravector) -> Result<Vec<Multivector>> {
        self.polys.iter().map(|p| eval_poly(p, self.n, x)).collect()
    }
}

/// `φ_k = Σ_j C(k, j) c_j x_0^{k-j} x̲^j` for `k = 0..=m`.
pub fn build_phi(coeffs: &CoeffSequence, m: usize) -> Result<AppellSequence> {
    let coeffs = coeffs.truncate(m)?;
    let polys = (0..=m)
        .map(|k| {
            AppellPoly::homogeneous(
                (0..=k)
                    .map(|j| Rational::from(binomial(k as u32, j as u32)) * coeffs.get(j))
                    .collect(),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    AppellSequence::from_parts(Family::Canonical, coeffs, polys)
}

/// The same polynomials as [`build_phi`], computed as the matrix product
/// `exp(H x_0) D_c ξ(x̲) = Σ_r x_0^r (H^r / r!) D_c ξ(x̲)` with symbolic `x_0`.
pub fn phi_by_exponential(coeffs: &CoeffSequence, m: usize) -> Result<Vec<AppellPoly>> {
    let coeffs = coeffs.truncate(m)?;
    let d_xi: Vec<AppellPoly> = (0..=m)
        .map(|j| AppellPoly::from_terms(j, [(0, j as u32, coeffs.get(j).clone())]))
        .collect::<Result<_>>()?;
    let h = creation_matrix(m);
    let mut out: Vec<AppellPoly> = (0..=m).map(AppellPoly::zero).collect();
    let mut power = TriMatrix::identity(m);
    for r in 0..=m as u32 {
        let term = power.scale(&Rational::from(factorial(r)).recip()?).apply(&d_xi)?;
        for (acc, t) in out.iter_mut().zip(term) {
            for (i, j, a) in t.terms() {
                acc.add_term(i + r, j, a.clone());
            }
        }
        power = power.mul(&h)?;
    }
    Ok(out.into_iter().enumerate().map(|(k, p)| p.with_degree(k)).collect())
}

/// `φ_k ↦ Σ_j T_{k,j} φ_j`; the family tag of `base` is kept.
pub fn apply_transfer(t: &TriMatrix, base: &AppellSequence) -> Result<AppellSequence> {
    let polys = t.apply(&base.polys)?;
    let polys = polys.into_iter().enumerate().map(|(k, p)| p.with_degree(k)).collect();
    AppellSequence::from_parts(base.family.clone(), base.coeffs.clone(), polys)
}

/// Builds the degree `0..=m` sequence of a family from coefficients for dimension `n` and shift `s`.
pub fn build_family(n: usize, m: usize, family: &Family, c0: Rational, s: usize) -> Result<AppellSequence> {
    let coeffs = shifted_coeffs(n, s, m, c0)?;
    let base = build_phi(&coeffs, m)?;
    let seq = apply_transfer(&family.transfer(m)?, &base)?;
    Ok(AppellSequence { family: family.clone(), ..seq })
}

/// Cached multivariate expansions of `x̲^j`:
/// `(-|x̲|^2)^{j/2}` for even `j`, and that power of `-|x̲|^2` times `x̲` for odd `j`.
pub struct VectorPowers {
    n: usize,
    powers: Vec<CliffordPoly>,
}

impl VectorPowers {
    pub fn new(n: usize, max_j: usize) -> Self {
        let vector = CliffordPoly::vector_variable(n);
        let mut neg_sq = CliffordPoly::zero(n);
        for k in 1..=n {
            let xk = CliffordPoly::variable(n, k).expect("k <= n");
            neg_sq = neg_sq.sub(&xk.mul(&xk));
        }
        let mut even = CliffordPoly::constant(Multivector::one(n));
        let mut powers = Vec::with_capacity(max_j + 1);
        for j in 0..=max_j {
            if j % 2 == 0 {
                if j > 0 {
                    even = even.mul(&neg_sq);
                }
                powers.push(even.clone());
            } else {
                powers.push(even.mul(&vector));
            }
        }
        VectorPowers { n, powers }
    }

    /// Expansion of `x̲^j`.
    pub fn get(&self, j: usize) -> &CliffordPoly {
        &self.powers[j]
    }

    pub fn expand(&self, p: &AppellPoly) -> CliffordPoly {
        let mut out = CliffordPoly::zero(self.n);
        let x0 = CliffordPoly::variable(self.n, 0).expect("x0 exists");
        for (i, j, a) in p.terms() {
            let term = x0.pow(i).mul(&self.powers[j as usize]);
            ModuleElement::add_scaled(&mut out, a, &term);
        }
        out
    }
}

/// Expands a binary-form polynomial into `x_0, x_1, .., x_n`.
pub fn expand_multivariate(p: &AppellPoly, n: usize) -> CliffordPoly {
    let max_j = p.terms().map(|(_, j, _)| j as usize).max().unwrap_or(0);
    VectorPowers::new(n, max_j).expand(p)
}

/// `Σ a_{i,j} x_0^i x̲^j` at a paravector point.
pub fn eval_poly(p: &AppellPoly, n: usize, x: &Paravector) -> Result<Multivector> {
    if x.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: x.dim() });
    }
    let mut out = Multivector::zero(n);
    for (i, j, a) in p.terms() {
        let w = a * x.x0.pow(i);
        out.add_scaled(&w, &vector_power(&x.vec, j));
    }
    Ok(out)
}

/// Restriction of every `φ_k` to the real line `x̲ = 0`.
pub fn restrict_real(seq: &AppellSequence) -> Vec<UniPoly> {
    seq.polys.iter().map(AppellPoly::restrict_real).collect()
}

/// Truncated generalized exponential `Σ_{k=0}^{T} P_k(x) / k!` with `c_0 = 1`.
pub fn exp_n_truncated(x: &Paravector, order: usize) -> Result<Multivector> {
    let n = x.dim();
    if n == 0 {
        return Err(Error::Domain("dimension n must be at least 1".into()));
    }
    let seq = build_phi(&canonical_coeffs(n, order, Rational::one())?, order)?;
    let mut out = Multivector::zero(n);
    for (k, value) in seq.eval(x)?.iter().enumerate() {
        out.add_scaled(&Rational::from(factorial(k as u32)).recip()?, value);
    }
    Ok(out)
}

/// Coefficients of `t^k`, `k = 0..=order`, in `exp(t x_0) F(t x̲)` with
/// `F(y) = Σ_s c_s y^s / s!`, as a Cauchy product of the two series.
pub fn exp_n_series(n: usize, order: usize) -> Result<Vec<AppellPoly>> {
    let c = canonical_coeffs(n, order, Rational::one())?;
    (0..=order)
        .map(|k| {
            let terms = (0..=k).map(|s| {
                let w = Rational::new(1, factorial((k - s) as u32) * factorial(s as u32))
                    .expect("nonzero")
                    * c.get(s);
                ((k - s) as u32, s as u32, w)
            });
            AppellPoly::from_terms(k, terms)
        })
        .collect()
}
