//! Deciding whether `M_n(R)` is nil-clean, and the property suites that
//! tie the decision procedure to the exhaustive oracle.
//!
//! For abelian `R` the matrix ring is nil-clean exactly when `R/J(R)` is
//! Boolean and `M_n(J(R))` is nil. The backward direction needs no
//! hypothesis on `R`; the forward one fails for `M_2(GF(2))`, which is
//! nil-clean with a non-Boolean semisimple quotient.

mod corpus;
mod suites;
mod survey;

use serde::Serialize;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::nilclean::ring_is_nil_clean;
use crate::predicates::{ring_is_abelian, ring_is_boolean};
use crate::radical::{ideal_nil_index, jacobson_radical, matrix_ideal_is_nil, quotient_ring};
use crate::ring::{saturating_pow, Matrix, Ring};

pub use corpus::{default_corpus, parse_corpus, CorpusEntry, RingFlags, DEFAULT_CORPUS};
pub use suites::{
    check_commutative_equivalence, check_connected_criterion, check_finite_fields, check_full_ideal_units,
    check_jstar_equals_radical, check_nil_ideal_lifting, check_non_abelian_counterexample,
    check_ring_matrix_transfer, cross_validate, run_all_suites, CommutativeEquivalence, ConnectedCriterion,
    CrossRow, CrossStatus, CrossValidation, FiniteFieldCheck, FullIdealUnits, JStarRadical, LiftSamples,
    NilIdealLifting, NonAbelianProfile, RingMatrixTransfer, SuiteOutcome, SuiteReport, VerifyReport,
    FINITE_FIELD_CASES, LIFT_SAMPLES, STRUCTURED_SAMPLES,
};
pub use survey::{survey_zm, Survey, SurveyRow};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DecisionMethod {
    Theorem,
    Bruteforce,
    Both,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// The oracle decomposed every element.
    AllDecomposed { count: u64, idempotents: usize },
    /// The smallest element with no factorization, as index and matrix.
    NonDecomposable {
        element: u64,
        matrix: Vec<Vec<u64>>,
        idempotents_scanned: usize,
    },
    /// `R/J` Boolean and every matrix over `J` vanishes at this power.
    TheoremConditions { exponent_bound: u64 },
    /// A non-idempotent coset of `R/J` and its smallest representative.
    NonBooleanQuotient { witness: u64, representative: u64 },
}

#[derive(Debug, Clone, Serialize)]
pub struct DecisionReport {
    pub ring: String,
    pub order: u64,
    pub n: usize,
    pub method: DecisionMethod,
    pub abelian: bool,
    pub radical_size: usize,
    pub nil_index: Option<u32>,
    pub rj_boolean: bool,
    pub mn_radical_nil: bool,
    pub exponent_bound: Option<u64>,
    pub theorem_verdict: Option<bool>,
    pub oracle_verdict: Option<bool>,
    pub nil_clean: bool,
    pub certificate: Certificate,
}

/// The matrix ring's order, refused before construction when it exceeds
/// the oracle budget.
pub fn matrix_ring_within_budget(ring: &Ring, n: usize, cfg: &Config) -> Result<Ring> {
    let needed = saturating_pow(ring.order(), (n * n) as u64);
    if needed > cfg.oracle_budget as u128 {
        return Err(Error::budget(
            format!("exhaustive scan of M{n}({})", ring.name()),
            needed,
            cfg.oracle_budget,
        ));
    }
    Ring::matrix_ring(ring.clone(), n)
}

struct OracleOutcome {
    nil_clean: bool,
    certificate: Certificate,
}

fn run_oracle(ring: &Ring, n: usize, cfg: &Config) -> Result<OracleOutcome> {
    let m = matrix_ring_within_budget(ring, n, cfg)?;
    let verdict = ring_is_nil_clean(&m, cfg)?;
    let certificate = match verdict.certificate {
        Some(c) => Certificate::NonDecomposable {
            element: c.target,
            matrix: Matrix::from_index(&m, c.target)?.rows(),
            idempotents_scanned: c.idempotents_scanned,
        },
        None => Certificate::AllDecomposed {
            count: verdict.decomposed,
            idempotents: verdict.idempotents,
        },
    };
    Ok(OracleOutcome {
        nil_clean: verdict.nil_clean,
        certificate,
    })
}

/// Is `M_n(R)` nil-clean?
///
/// The theorem path refuses non-abelian rings unless both conditions hold,
/// since only that direction survives without the hypothesis. With
/// [`DecisionMethod::Both`] a disagreement is an error, never a warning.
pub fn decide_matrix_nil_clean(ring: &Ring, n: usize, method: DecisionMethod, cfg: &Config) -> Result<DecisionReport> {
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    let abelian = ring_is_abelian(ring, cfg)?.holds;
    let radical = jacobson_radical(ring, cfg)?;
    let nil_index = ideal_nil_index(&radical);
    let quotient = quotient_ring(ring, &radical)?;
    let boolean = ring_is_boolean(quotient.ring(), cfg)?;
    let matrix_nil = matrix_ideal_is_nil(ring, &radical, n, cfg)?;
    let conditions = boolean.holds && matrix_nil.nil;

    let theorem_certificate = if let Some(w) = boolean.witness {
        Certificate::NonBooleanQuotient {
            witness: w,
            representative: quotient.representative(w),
        }
    } else {
        match matrix_nil.exponent_bound {
            Some(bound) => Certificate::TheoremConditions { exponent_bound: bound },
            None => return Err(Error::Precondition(format!("J({}) is not nil", ring.name()))),
        }
    };
    let theorem_verdict = (abelian || conditions).then_some(conditions);

    let oracle = match method {
        DecisionMethod::Theorem => {
            if theorem_verdict.is_none() {
                return Err(Error::Refused(format!(
                    "{} is not abelian and its quotient by J is not Boolean; use the brute-force method",
                    ring.name()
                )));
            }
            None
        }
        DecisionMethod::Bruteforce | DecisionMethod::Both => Some(run_oracle(ring, n, cfg)?),
    };

    if let (Some(t), Some(o)) = (theorem_verdict, oracle.as_ref()) {
        if t != o.nil_clean {
            return Err(Error::Discrepancy(format!(
                "M{n}({}): structural criterion says {t}, oracle says {}",
                ring.name(),
                o.nil_clean
            )));
        }
    }

    let oracle_verdict = oracle.as_ref().map(|o| o.nil_clean);
    let (nil_clean, certificate) = match oracle {
        Some(o) => (o.nil_clean, o.certificate),
        None => (conditions, theorem_certificate),
    };
    Ok(DecisionReport {
        ring: ring.name().to_string(),
        order: ring.order(),
        n,
        method,
        abelian,
        radical_size: radical.len(),
        nil_index,
        rj_boolean: boolean.holds,
        mn_radical_nil: matrix_nil.nil,
        exponent_bound: matrix_nil.exponent_bound,
        theorem_verdict: if method == DecisionMethod::Bruteforce {
            None
        } else {
            theorem_verdict
        },
        oracle_verdict,
        nil_clean,
        certificate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(spec: &str) -> Ring {
        spec.parse().unwrap()
    }

    fn decide(spec: &str, n: usize, method: DecisionMethod) -> Result<DecisionReport> {
        decide_matrix_nil_clean(&ring(spec), n, method, &Config::default())
    }

    #[test]
    fn two_power_modulus_agrees() {
        let r = decide("Z/4", 2, DecisionMethod::Both).unwrap();
        assert!(r.nil_clean);
        assert_eq!((r.theorem_verdict, r.oracle_verdict), (Some(true), Some(true)));
        assert!(matches!(r.certificate, Certificate::AllDecomposed { count: 256, .. }));
    }

    #[test]
    fn z6_fails_both_ways() {
        let r = decide("Z/6", 2, DecisionMethod::Both).unwrap();
        assert!(!r.nil_clean && !r.rj_boolean);
        let Certificate::NonDecomposable { element, matrix, .. } = r.certificate else {
            panic!("oracle certificate expected");
        };
        let m2 = Ring::matrix_ring(ring("Z/6"), 2).unwrap();
        assert_eq!(Matrix::from_index(&m2, element).unwrap().rows(), matrix);
        let t = decide("Z/6", 2, DecisionMethod::Theorem).unwrap();
        assert_eq!(t.certificate, Certificate::NonBooleanQuotient { witness: 2, representative: 2 });
    }

    #[test]
    fn z2_at_n1() {
        let r = decide("Z/2", 1, DecisionMethod::Theorem).unwrap();
        assert!(r.nil_clean && r.rj_boolean && r.radical_size == 1);
        assert_eq!(r.oracle_verdict, None);
    }

    #[test]
    fn non_abelian_base_is_refused_on_the_fast_path() {
        let err = decide("M2(GF(2))", 1, DecisionMethod::Theorem).unwrap_err();
        assert!(matches!(err, Error::Refused(_)));
        let r = decide("M2(GF(2))", 1, DecisionMethod::Both).unwrap();
        assert!(r.nil_clean && !r.abelian && !r.rj_boolean);
        assert_eq!(r.theorem_verdict, None);
    }

    #[test]
    fn budget_blocks_oracle() {
        let err = decide_matrix_nil_clean(&ring("Z/8"), 2, DecisionMethod::Bruteforce, &Config::default().with_budget(100));
        assert!(matches!(err, Err(Error::BudgetExceeded { .. })));
    }
}
