//! Exact certification of the Appell-sequence properties.
//!
//! Every check expands polynomials symbolically and tests for the zero
//! polynomial by emptiness of its canonical term map; there is no tolerance.

use rayon::prelude::*;
use serde::Serialize;

use crate::appell::{AppellSequence, CoeffSequence, UniPoly, VectorPowers};
use crate::clifford::Multivector;
use crate::error::Result;
use crate::matrix::{creation_matrix, derivation_matrix_shifted, TriMatrix};
use crate::num::Rational;
use crate::poly::{CliffordPoly, Monomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    /// `∂̄ φ_k = 0`
    Monogenic,
    /// `∂ φ_k = k φ_{k-1}`
    Ladder,
}

/// First nonzero term of a residual that should have vanished.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub check: Check,
    pub monomial: Monomial,
    pub coeff: Multivector,
}

impl Witness {
    fn from_residual(check: Check, residual: &CliffordPoly) -> Option<Self> {
        residual.first_term().map(|(m, c)| Witness { check, monomial: m.clone(), coeff: c.clone() })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub k: usize,
    pub passed: bool,
    pub witness: Option<Witness>,
}

impl CheckResult {
    fn from_residual(k: usize, check: Check, residual: &CliffordPoly) -> Self {
        let witness = Witness::from_residual(check, residual);
        CheckResult { k, passed: witness.is_none(), witness }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeResult {
    pub k: usize,
    pub monogenic: bool,
    pub ladder: bool,
    /// Monogenicity witness if that check failed, else the ladder witness.
    pub witness: Option<Witness>,
}

/// Per-degree outcome of the monogenicity and ladder checks for one sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub n: usize,
    pub family: String,
    /// Outcome of the `H D + D H̃ = O` identity when the coefficients were checked.
    pub intertwining: Option<bool>,
    pub results: Vec<DegreeResult>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.intertwining != Some(false) && self.results.iter().all(|r| r.monogenic && r.ladder)
    }

    pub fn first_failure(&self) -> Option<&DegreeResult> {
        self.results.iter().find(|r| !(r.monogenic && r.ladder))
    }
}

fn monogenic_residual(expanded: &CliffordPoly) -> CliffordPoly {
    expanded.cr_bar()
}

fn ladder_residual(k: usize, expanded: &[CliffordPoly]) -> CliffordPoly {
    let derivative = expanded[k].cr();
    if k == 0 {
        derivative
    } else {
        derivative.sub(&expanded[k - 1].scale(&Rational::from(k as i64)))
    }
}

fn expand_all(seq: &AppellSequence) -> Vec<CliffordPoly> {
    let max_j = seq
        .polys()
        .iter()
        .flat_map(|p| p.terms().map(|(_, j, _)| j as usize))
        .max()
        .unwrap_or(0);
    let powers = VectorPowers::new(seq.dim(), max_j);
    seq.polys().par_iter().map(|p| powers.expand(p)).collect()
}

/// `∂̄ φ_k = 0` for every degree.
pub fn check_monogenic(seq: &AppellSequence) -> Vec<CheckResult> {
    expand_all(seq)
        .par_iter()
        .enumerate()
        .map(|(k, p)| CheckResult::from_residual(k, Check::Monogenic, &monogenic_residual(p)))
        .collect()
}

/// `∂ φ_k = k φ_{k-1}` for every degree (with `∂ φ_0 = 0`), i.e. `∂φ = Hφ`.
pub fn check_appell(seq: &AppellSequence) -> Vec<CheckResult> {
    let expanded = expand_all(seq);
    (0..expanded.len())
        .into_par_iter()
        .map(|k| CheckResult::from_residual(k, Check::Ladder, &ladder_residual(k, &expanded)))
        .collect()
}

/// Both checks on every degree, plus the intertwining identity on the
/// sequence's coefficients. Results are ordered by degree regardless of
/// how the work was scheduled.
pub fn verify_sequence(seq: &AppellSequence) -> VerifyReport {
    let expanded = expand_all(seq);
    let results = (0..expanded.len())
        .into_par_iter()
        .map(|k| {
            let mono = CheckResult::from_residual(k, Check::Monogenic, &monogenic_residual(&expanded[k]));
            let ladder = CheckResult::from_residual(k, Check::Ladder, &ladder_residual(k, &expanded));
            DegreeResult {
                k,
                monogenic: mono.passed,
                ladder: ladder.passed,
                witness: mono.witness.or(ladder.witness),
            }
        })
        .collect();
    VerifyReport {
        n: seq.dim(),
        family: seq.family().to_string(),
        intertwining: Some(check_intertwining(seq.coeffs())),
        results,
    }
}

/// Symbolically checks `∂_x̲ ξ(x̲) = H̃ ξ(x̲)` component by component.
pub fn check_xi_derivation(n: usize, m: usize) -> Result<bool> {
    let h_tilde = derivation_matrix_shifted(n, 0, m)?;
    let powers = VectorPowers::new(n, m);
    let xi: Vec<CliffordPoly> = (0..=m).map(|j| powers.get(j).clone()).collect();
    let rhs = h_tilde.apply(&xi)?;
    Ok(xi.iter().zip(&rhs).all(|(p, q)| p.dirac() == *q))
}

/// `H D_c + D_c H̃^{(s)} = O` for the sequence's own `n` and `s`.
///
/// The products are formed as matrices and, independently, from the known
/// subdiagonal patterns `(H D)_{j+1,j} = (j+1) c_j` and
/// `(D H̃)_{j+1,j} = -(n+j+2s) c_{j+1}` (even `j`) or `-(j+1) c_{j+1}` (odd `j`);
/// both routes must agree and the sum must vanish.
pub fn check_intertwining(coeffs: &CoeffSequence) -> bool {
    let (n, s, m) = (coeffs.dim(), coeffs.shift(), coeffs.order());
    let h = creation_matrix(m);
    let h_tilde = derivation_matrix_shifted(n, s, m).expect("n >= 1");
    let d = coeffs.diagonal_matrix();
    let hd = h.mul(&d).expect("same order");
    let dh = d.mul(&h_tilde).expect("same order");

    let c = coeffs.coeffs();
    let hd_pattern = TriMatrix::from_subdiagonal(
        (0..m).map(|j| Rational::from((j + 1) as i64) * &c[j]).collect(),
    );
    let dh_pattern = TriMatrix::from_subdiagonal(
        (0..m)
            .map(|j| {
                let w = if j % 2 == 0 { n + j + 2 * s } else { j + 1 };
                -(Rational::from(w as i64) * &c[j + 1])
            })
            .collect(),
    );
    hd == hd_pattern && dh == dh_pattern && hd.add(&dh).expect("same order").is_zero()
}

/// On the real line, `d/dx_0 p(x_0) = H p(x_0)` for the restricted sequence.
pub fn check_real_ladder(restricted: &[UniPoly]) -> bool {
    if restricted.is_empty() {
        return true;
    }
    let h = creation_matrix(restricted.len() - 1);
    let lhs: Vec<UniPoly> = restricted.iter().map(UniPoly::derivative).collect();
    h.apply(restricted).map(|rhs| rhs == lhs).unwrap_or(false)
}
