//! Arithmetic in the Clifford algebra Cl(0,n).
//!
//! Generators `e_1..e_n` anticommute and square to `-1`. A basis blade
//! `e_A = e_{h_1} ... e_{h_r}` (with `h_1 < ... < h_r`) is stored as a bitmask
//! where bit `k - 1` stands for `e_k`. Multivectors are sparse maps from blades
//! to nonzero rational coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::num::Rational;

/// Largest supported number of generators.
pub const MAX_DIM: usize = 31;

/// A basis blade `e_A`, `A ⊆ {1..n}`. The empty set is the scalar unit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Blade(u32);

impl Blade {
    pub const SCALAR: Blade = Blade(0);

    pub fn from_mask(mask: u32) -> Self {
        Blade(mask)
    }

    /// Blade `e_k` for a single generator, `k >= 1`.
    pub fn generator(k: usize) -> Result<Self> {
        if k == 0 || k > MAX_DIM {
            return Err(Error::Domain(format!("generator index {k} out of range")));
        }
        Ok(Blade(1 << (k - 1)))
    }

    /// Builds a blade from generator indices in any order; repeated indices are rejected.
    pub fn from_indices(indices: &[usize]) -> Result<Self> {
        let mut mask = 0u32;
        for &k in indices {
            let bit = Blade::generator(k)?.0;
            if mask & bit != 0 {
                return Err(Error::Domain(format!("repeated generator e{k} in blade")));
            }
            mask |= bit;
        }
        Ok(Blade(mask))
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn grade(self) -> u32 {
        self.0.count_ones()
    }

    /// Generator indices in ascending order.
    pub fn indices(self) -> Vec<usize> {
        (0..32).filter(|b| self.0 & (1 << b) != 0).map(|b| b + 1).collect()
    }

    /// Whether every generator of this blade lies in `1..=n`.
    pub fn fits(self, n: usize) -> bool {
        n >= 32 || self.0 >> n == 0
    }
}

impl Ord for Blade {
    /// Grade first, then lexicographic on ascending indices.
    fn cmp(&self, other: &Self) -> Ordering {
        self.grade()
            .cmp(&other.grade())
            .then_with(|| self.0.reverse_bits().cmp(&other.0.reverse_bits()).reverse())
    }
}

impl PartialOrd for Blade {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return f.write_str("1");
        }
        f.write_str("e")?;
        let idx = self.indices();
        let sep = if idx.iter().any(|&k| k > 9) { "_" } else { "" };
        let parts: Vec<String> = idx.iter().map(|k| k.to_string()).collect();
        f.write_str(&parts.join(sep))
    }
}

/// Sign of `e_A e_B` without range checks.
fn product_sign(a: u32, b: u32) -> bool {
    // Moving each generator of `b` left past the larger generators of `a`,
    // then one `-1` per generator the two blades share.
    let mut swaps = (a & b).count_ones();
    let mut rest = b;
    while rest != 0 {
        let i = rest.trailing_zeros();
        rest &= rest - 1;
        let above = if i >= 31 { 0 } else { a >> (i + 1) };
        swaps += above.count_ones();
    }
    swaps % 2 == 1
}

/// Product of two basis blades in Cl(0,n): returns `(sign, blade)` with `sign = ±1`.
pub fn blade_product(a: Blade, b: Blade, n: usize) -> Result<(i8, Blade)> {
    for blade in [a, b] {
        if !blade.fits(n) {
            return Err(Error::Domain(format!("blade {blade} has a generator outside 1..{n}")));
        }
    }
    let negative = product_sign(a.0, b.0);
    Ok((if negative { -1 } else { 1 }, Blade(a.0 ^ b.0)))
}

/// An element of Cl(0,n) in sparse canonical form (no zero coefficients stored).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Multivector {
    n: usize,
    terms: BTreeMap<Blade, Rational>,
}

impl Multivector {
    pub fn zero(n: usize) -> Self {
        assert!(n <= MAX_DIM, "dimension {n} exceeds {MAX_DIM}");
        Multivector { n, terms: BTreeMap::new() }
    }

    pub fn scalar(n: usize, value: Rational) -> Self {
        let mut mv = Multivector::zero(n);
        mv.add_term(Blade::SCALAR, value);
        mv
    }

    pub fn one(n: usize) -> Self {
        Multivector::scalar(n, Rational::one())
    }

    /// The generator `e_k`.
    pub fn basis(n: usize, k: usize) -> Result<Self> {
        if k == 0 || k > n {
            return Err(Error::Domain(format!("e{k} is not a generator of Cl(0,{n})")));
        }
        Multivector::from_terms(n, [(Blade::generator(k)?, Rational::one())])
    }

    /// Sums the given terms; blades outside `1..=n` are rejected.
    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Blade, Rational)>) -> Result<Self> {
        if n > MAX_DIM {
            return Err(Error::Domain(format!("dimension {n} exceeds {MAX_DIM}")));
        }
        let mut mv = Multivector::zero(n);
        for (blade, c) in terms {
            if !blade.fits(n) {
                return Err(Error::Domain(format!("blade {blade} outside Cl(0,{n})")));
            }
            mv.add_term(blade, c);
        }
        Ok(mv)
    }

    /// Grade-one element `Σ v_k e_k`.
    pub fn vector(vec: &[Rational]) -> Self {
        let mut mv = Multivector::zero(vec.len());
        for (k, c) in vec.iter().enumerate() {
            mv.add_term(Blade(1 << k), c.clone());
        }
        mv
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_scalar(&self) -> bool {
        self.terms.keys().all(|b| *b == Blade::SCALAR)
    }

    pub fn scalar_part(&self) -> Rational {
        self.get(Blade::SCALAR)
    }

    pub fn get(&self, blade: Blade) -> Rational {
        self.terms.get(&blade).cloned().unwrap_or_else(Rational::zero)
    }

    /// Nonzero terms in blade order (grade, then lexicographic).
    pub fn terms(&self) -> impl Iterator<Item = (Blade, &Rational)> {
        self.terms.iter().map(|(b, c)| (*b, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn add_term(&mut self, blade: Blade, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(blade) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, c: &Rational, other: &Multivector) {
        assert_eq!(self.n, other.n, "multivector dimension mismatch");
        if c.is_zero() {
            return;
        }
        for (b, v) in &other.terms {
            self.add_term(*b, c * v);
        }
    }

    pub fn scale(&self, c: &Rational) -> Multivector {
        if c.is_zero() {
            return Multivector::zero(self.n);
        }
        Multivector {
            n: self.n,
            terms: self.terms.iter().map(|(b, v)| (*b, v * c)).collect(),
        }
    }

    /// Geometric product; fails when the dimensions differ.
    pub fn checked_mul(&self, other: &Multivector) -> Result<Multivector> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: other.n });
        }
        let mut out = Multivector::zero(self.n);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let c = x * y;
                if product_sign(a.0, b.0) {
                    out.add_term(Blade(a.0 ^ b.0), -c);
                } else {
                    out.add_term(Blade(a.0 ^ b.0), c);
                }
            }
        }
        Ok(out)
    }

    pub fn checked_add(&self, other: &Multivector) -> Result<Multivector> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: other.n });
        }
        let mut out = self.clone();
        out.add_scaled(&Rational::one(), other);
        Ok(out)
    }

    /// Clifford conjugation: `ē_A = ē_{h_r} ... ē_{h_1}` with `ē_k = -e_k`.
    /// A grade-`r` blade picks up the sign `(-1)^{r(r+1)/2}`.
    pub fn conjugate(&self) -> Multivector {
        Multivector {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(b, c)| {
                    let r = b.grade();
                    if (r * (r + 1) / 2) % 2 == 1 {
                        (*b, -c)
                    } else {
                        (*b, c.clone())
                    }
                })
                .collect(),
        }
    }

    /// Components as `f64`, for display only.
    pub fn to_f64_terms(&self) -> Vec<(Blade, f64)> {
        self.terms.iter().map(|(b, c)| (*b, c.to_f64())).collect()
    }
}

impl Add<&Multivector> for &Multivector {
    type Output = Multivector;
    /// Panics on a dimension mismatch; see [`Multivector::checked_add`].
    fn add(self, rhs: &Multivector) -> Multivector {
        self.checked_add(rhs).expect("multivector dimension mismatch")
    }
}

impl Sub<&Multivector> for &Multivector {
    type Output = Multivector;
    fn sub(self, rhs: &Multivector) -> Multivector {
        let mut out = self.clone();
        out.add_scaled(&-Rational::one(), rhs);
        out
    }
}

impl Mul<&Multivector> for &Multivector {
    type Output = Multivector;
    /// Panics on a dimension mismatch; see [`Multivector::checked_mul`].
    fn mul(self, rhs: &Multivector) -> Multivector {
        self.checked_mul(rhs).expect("multivector dimension mismatch")
    }
}

impl Neg for &Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        self.scale(&-Rational::one())
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (b, c)) in self.terms.iter().enumerate() {
            let (neg, mag) = (c.is_negative(), c.abs());
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if *b == Blade::SCALAR {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{b}")?;
            } else {
                write!(f, "{mag}{b}")?;
            }
        }
        Ok(())
    }
}

/// A paravector `x = x_0 + Σ e_k x_k`, identified with a point of R^{n+1}.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Paravector {
    pub x0: Rational,
    pub vec: Vec<Rational>,
}

impl Paravector {
    pub fn new(x0: Rational, vec: Vec<Rational>) -> Self {
        Paravector { x0, vec }
    }

    /// Parses the components `x_0, x_1, .., x_n` of a point.
    pub fn from_components(components: &[Rational]) -> Result<Self> {
        match components.split_first() {
            Some((x0, vec)) => Ok(Paravector::new(x0.clone(), vec.to_vec())),
            None => Err(Error::Domain("a paravector needs at least the scalar part".into())),
        }
    }

    pub fn dim(&self) -> usize {
        self.vec.len()
    }

    pub fn to_multivector(&self) -> Multivector {
        let mut mv = Multivector::vector(&self.vec);
        mv.add_term(Blade::SCALAR, self.x0.clone());
        mv
    }

    /// `x̄ = x_0 - x̲`
    pub fn conjugate(&self) -> Paravector {
        Paravector::new(self.x0.clone(), self.vec.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, t: &Rational) -> Paravector {
        Paravector::new(&self.x0 * t, self.vec.iter().map(|c| c * t).collect())
    }

    /// `|x|^2 = x_0^2 + x_1^2 + ... + x_n^2`.
    pub fn norm_sq(&self) -> Rational {
        std::iter::once(&self.x0).chain(&self.vec).map(|c| c * c).sum()
    }
}

/// `x̲^j` for the vector part `x̲ = Σ e_k x_k`, by the closed form
/// `x̲^2 = -|x̲|^2`: even powers are scalar, odd powers are multiples of `x̲`.
pub fn vector_power(vec: &[Rational], j: u32) -> Multivector {
    let n = vec.len();
    let neg_sq: Rational = -vec.iter().map(|c| c * c).sum::<Rational>();
    let factor = neg_sq.pow(j / 2);
    if j.is_multiple_of(2) {
        Multivector::scalar(n, factor)
    } else {
        Multivector::vector(vec).scale(&factor)
    }
}
