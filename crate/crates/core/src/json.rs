//! Serializable forms of the library types.
//!
//! Field declaration order is alphabetical, so serialized keys come out sorted.

use serde::{Deserialize, Serialize};

use crate::appell::{AppellPoly, AppellSequence, CoeffSequence, Family};
use crate::clifford::{Blade, Multivector};
use crate::error::{Error, Result};
use crate::matrix::TriMatrix;
use crate::num::Rational;
use crate::verify::{Check, DegreeResult, VerifyReport, Witness};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultivectorTerm {
    pub blade: Vec<usize>,
    pub coeff: Rational,
}

/// `{"n": int, "terms": [{"blade": [ints ascending], "coeff": "p/q"}]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultivectorJson {
    pub n: usize,
    pub terms: Vec<MultivectorTerm>,
}

impl From<&Multivector> for MultivectorJson {
    fn from(mv: &Multivector) -> Self {
        MultivectorJson {
            n: mv.dim(),
            terms: mv
                .terms()
                .map(|(b, c)| MultivectorTerm { blade: b.indices(), coeff: c.clone() })
                .collect(),
        }
    }
}

impl TryFrom<&MultivectorJson> for Multivector {
    type Error = Error;

    fn try_from(j: &MultivectorJson) -> Result<Self> {
        let terms = j
            .terms
            .iter()
            .map(|t| Ok((Blade::from_indices(&t.blade)?, t.coeff.clone())))
            .collect::<Result<Vec<_>>>()?;
        Multivector::from_terms(j.n, terms)
    }
}

/// `{"m": int, "rows": [["p/q", ..], ..]}`, lower-triangular rows only.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriMatrixJson {
    pub m: usize,
    pub rows: Vec<Vec<Rational>>,
}

impl From<&TriMatrix> for TriMatrixJson {
    fn from(t: &TriMatrix) -> Self {
        TriMatrixJson { m: t.order(), rows: t.rows().map(<[Rational]>::to_vec).collect() }
    }
}

impl TryFrom<&TriMatrixJson> for TriMatrix {
    type Error = Error;

    fn try_from(j: &TriMatrixJson) -> Result<Self> {
        if j.rows.len() != j.m + 1 {
            return Err(Error::Parse(format!("order {} but {} rows", j.m, j.rows.len())));
        }
        TriMatrix::from_rows(j.rows.clone())
    }
}

/// Term `a · x_0^i · x̲^j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyTerm {
    pub a: Rational,
    pub i: u32,
    pub j: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub k: usize,
    pub terms: Vec<PolyTerm>,
}

/// `{"coeffs", "family", "lambda"?, "m", "n", "polys", "s"}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceJson {
    pub coeffs: Vec<Rational>,
    pub family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Rational>,
    pub m: usize,
    pub n: usize,
    pub polys: Vec<PolyJson>,
    pub s: usize,
}

impl From<&AppellSequence> for SequenceJson {
    fn from(seq: &AppellSequence) -> Self {
        SequenceJson {
            coeffs: seq.coeffs().coeffs().to_vec(),
            family: seq.family().name().to_string(),
            lambda: seq.family().lambda().cloned(),
            m: seq.order(),
            n: seq.dim(),
            polys: seq
                .polys()
                .iter()
                .map(|p| PolyJson {
                    k: p.degree(),
                    terms: p.terms().map(|(i, j, a)| PolyTerm { a: a.clone(), i, j }).collect(),
                })
                .collect(),
            s: seq.shift(),
        }
    }
}

impl TryFrom<&SequenceJson> for AppellSequence {
    type Error = Error;

    fn try_from(j: &SequenceJson) -> Result<Self> {
        if j.polys.len() != j.m + 1 {
            return Err(Error::Parse(format!("m = {} but {} polynomials", j.m, j.polys.len())));
        }
        let family = Family::parse(&j.family, j.lambda.clone())?;
        let coeffs = CoeffSequence::from_raw(j.n, j.s, j.coeffs.clone())?;
        let polys = j
            .polys
            .iter()
            .map(|p| AppellPoly::from_terms(p.k, p.terms.iter().map(|t| (t.i, t.j, t.a.clone()))))
            .collect::<Result<Vec<_>>>()?;
        AppellSequence::from_parts(family, coeffs, polys)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessJson {
    pub check: Check,
    pub coeff: MultivectorJson,
    /// Exponents `(α_0, α_1, .., α_n)` of the offending monomial.
    pub monomial: Vec<u32>,
}

impl From<&Witness> for WitnessJson {
    fn from(w: &Witness) -> Self {
        WitnessJson {
            check: w.check,
            coeff: (&w.coeff).into(),
            monomial: w.monomial.exponents().to_vec(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeResultJson {
    pub k: usize,
    pub ladder: bool,
    pub monogenic: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessJson>,
}

/// `{"family", "intertwining"?, "n", "results": [{"k", "ladder", "monogenic", "witness"?}]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportJson {
    pub family: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub intertwining: Option<bool>,
    pub n: usize,
    pub results: Vec<DegreeResultJson>,
}

impl From<&DegreeResult> for DegreeResultJson {
    fn from(r: &DegreeResult) -> Self {
        DegreeResultJson {
            k: r.k,
            ladder: r.ladder,
            monogenic: r.monogenic,
            witness: r.witness.as_ref().map(WitnessJson::from),
        }
    }
}

impl From<&VerifyReport> for ReportJson {
    fn from(r: &VerifyReport) -> Self {
        ReportJson {
            family: r.family.clone(),
            intertwining: r.intertwining,
            n: r.n,
            results: r.results.iter().map(DegreeResultJson::from).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::appell::build_family;
    use proptest::prelude::*;

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p, q).unwrap()
    }

    #[test]
    fn multivector_schema() {
        let mv = Multivector::from_terms(
            3,
            [(Blade::from_indices(&[1, 3]).unwrap(), r(-1, 2)), (Blade::SCALAR, r(2, 1))],
        )
        .unwrap();
        let text = serde_json::to_string(&MultivectorJson::from(&mv)).unwrap();
        assert_eq!(
            text,
            r#"{"n":3,"terms":[{"blade":[],"coeff":"2"},{"blade":[1,3],"coeff":"-1/2"}]}"#
        );
        let back: MultivectorJson = serde_json::from_str(&text).unwrap();
        assert_eq!(Multivector::try_from(&back).unwrap(), mv);
    }

    #[test]
    fn matrix_schema() {
        let t = crate::matrix::transfer_bernoulli(2);
        let text = serde_json::to_string(&TriMatrixJson::from(&t)).unwrap();
        assert_eq!(text, r#"{"m":2,"rows":[["1"],["-1/2","1"],["1/6","-1","1"]]}"#);
        let bad: TriMatrixJson = serde_json::from_str(r#"{"m":1,"rows":[["1"],["1"],["2"]]}"#).unwrap();
        assert!(TriMatrix::try_from(&bad).is_err());
    }

    #[test]
    fn sequence_schema() {
        let seq = build_family(2, 1, &Family::FrobeniusEuler(r(3, 1)), Rational::one(), 0).unwrap();
        let text = serde_json::to_string(&SequenceJson::from(&seq)).unwrap();
        assert_eq!(
            text,
            concat!(
                r#"{"coeffs":["1","1/2"],"family":"frobenius-euler","lambda":"3","m":1,"n":2,"#,
                r#""polys":[{"k":0,"terms":[{"a":"1","i":0,"j":0}]},"#,
                r#"{"k":1,"terms":[{"a":"1/2","i":0,"j":0},{"a":"1","i":1,"j":0},{"a":"1/2","i":0,"j":1}]}],"s":0}"#
            )
        );
    }

    #[test]
    fn malformed_sequences_rejected() {
        let seq = build_family(2, 2, &Family::Canonical, Rational::one(), 0).unwrap();
        let mut j = SequenceJson::from(&seq);
        j.m = 3;
        assert!(AppellSequence::try_from(&j).is_err());
        let mut j = SequenceJson::from(&seq);
        j.polys[1].terms[0].i = 4;
        assert!(AppellSequence::try_from(&j).is_err());
        let mut j = SequenceJson::from(&seq);
        j.family = "frobenius-euler".into();
        assert!(AppellSequence::try_from(&j).is_err());
    }

    proptest! {
        #[test]
        fn sequence_round_trip(
            n in 1usize..=4, m in 0usize..=6, s in 0usize..=2,
            fam in prop_oneof![Just("canonical"), Just("bernoulli"), Just("euler"), Just("hermite")]
        ) {
            let seq = build_family(n, m, &Family::parse(fam, None).unwrap(), r(2, 3), s).unwrap();
            let text = serde_json::to_string(&SequenceJson::from(&seq)).unwrap();
            let back: SequenceJson = serde_json::from_str(&text).unwrap();
            prop_assert_eq!(AppellSequence::try_from(&back).unwrap(), seq);
        }
    }
}
