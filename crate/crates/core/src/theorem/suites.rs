//! Property suites: each check evaluates both sides of an equivalence on a
//! concrete ring and reports whether they agree.

use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::corpus::CorpusEntry;
use super::{decide_matrix_nil_clean, matrix_ring_within_budget, Certificate, DecisionMethod};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::nilclean::{
    decompose_bruteforce, enumerate_idempotents, lift_idempotent, lift_iteration_bound, ring_is_nil_clean,
    Decomposition, NonNilCleanCertificate, StructuredDecomposer,
};
use crate::predicates::{
    ideal_generated_by, is_full_ideal, is_nilpotent, ring_is_abelian, ring_is_boolean, ring_is_connected,
    ring_is_exchange, unit_inverse,
};
use crate::radical::{ideal_nil_index, j_star, jacobson_radical, matrix_ideal_is_nil, quotient_ring, Ideal};
use crate::ring::{Matrix, Ring};
use crate::scan;

/// Random liftable inputs per (ring, nil ideal) pair.
pub const LIFT_SAMPLES: usize = 1000;
/// Random structured decompositions per positive connected-ring check.
pub const STRUCTURED_SAMPLES: usize = 1000;
/// `(q, n)` pairs for the finite-field suite.
pub const FINITE_FIELD_CASES: &[(u64, usize)] = &[(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (4, 1), (4, 2)];

fn seeded(cfg: &Config, ring: &Ring, salt: u64) -> ChaCha8Rng {
    let name_hash = ring.name().bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0100_0000_01b3)
    });
    ChaCha8Rng::seed_from_u64(cfg.seed ^ name_hash ^ salt)
}

fn require_commutative(ring: &Ring) -> Result<()> {
    if ring.is_commutative() {
        Ok(())
    } else {
        Err(Error::Precondition(format!("{} is not commutative", ring.name())))
    }
}

fn require_abelian(ring: &Ring, cfg: &Config) -> Result<()> {
    if ring_is_abelian(ring, cfg)?.holds {
        Ok(())
    } else {
        Err(Error::Precondition(format!("{} is not abelian", ring.name())))
    }
}

/// For commutative `R`: `M_n(R)` nil-clean, `R/J` Boolean with `J` nil, and
/// `a − a²` nilpotent for every `a`.
#[derive(Debug, Clone, Serialize)]
pub struct CommutativeEquivalence {
    pub ring: String,
    pub n: usize,
    pub matrix_nil_clean: bool,
    pub radical_condition: bool,
    pub elementwise: bool,
    pub elementwise_witness: Option<u64>,
    pub agree: bool,
}

pub fn check_commutative_equivalence(ring: &Ring, n: usize, cfg: &Config) -> Result<CommutativeEquivalence> {
    require_commutative(ring)?;
    let matrix_nil_clean = decide_matrix_nil_clean(ring, n, DecisionMethod::Bruteforce, cfg)?.nil_clean;
    let j = jacobson_radical(ring, cfg)?;
    let quotient = quotient_ring(ring, &j)?;
    let radical_condition = ring_is_boolean(quotient.ring(), cfg)?.holds && ideal_nil_index(&j).is_some();
    let witness = scan::find_first(cfg, ring.elements(), |a| {
        !is_nilpotent(ring, ring.sub(a, ring.mul(a, a))).is_nilpotent()
    });
    let elementwise = witness.is_none();
    Ok(CommutativeEquivalence {
        ring: ring.name().to_string(),
        n,
        matrix_nil_clean,
        radical_condition,
        elementwise,
        elementwise_witness: witness,
        agree: matrix_nil_clean == radical_condition && radical_condition == elementwise,
    })
}

/// For commutative `R`: `R` is nil-clean iff `M_1(R)` and `M_2(R)` are.
#[derive(Debug, Clone, Serialize)]
pub struct RingMatrixTransfer {
    pub ring: String,
    pub ring_nil_clean: bool,
    pub m1_nil_clean: bool,
    pub m2_nil_clean: bool,
    pub agree: bool,
}

pub fn check_ring_matrix_transfer(ring: &Ring, cfg: &Config) -> Result<RingMatrixTransfer> {
    require_commutative(ring)?;
    matrix_ring_within_budget(ring, 2, cfg)?;
    let ring_nil_clean = ring_is_nil_clean(ring, cfg)?.nil_clean;
    let m1 = decide_matrix_nil_clean(ring, 1, DecisionMethod::Both, cfg)?.nil_clean;
    let m2 = decide_matrix_nil_clean(ring, 2, DecisionMethod::Both, cfg)?.nil_clean;
    Ok(RingMatrixTransfer {
        ring: ring.name().to_string(),
        ring_nil_clean,
        m1_nil_clean: m1,
        m2_nil_clean: m2,
        agree: ring_nil_clean == m1 && m1 == m2,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct LiftSamples {
    pub samples: usize,
    pub failures: usize,
    pub max_iterations: u32,
    pub bound: u32,
}

/// `R` is nil-clean iff `R/I` is, for a nil ideal `I`. Quotient witnesses
/// are lifted to ring witnesses, and random liftable inputs `ē + i` test
/// the iteration bound.
#[derive(Debug, Clone, Serialize)]
pub struct NilIdealLifting {
    pub ring: String,
    pub ideal: Vec<u64>,
    pub nil_index: u32,
    pub ring_nil_clean: bool,
    pub quotient_nil_clean: bool,
    pub agree: bool,
    /// Ring elements given a witness by lifting a quotient witness.
    pub lifted_witnesses: u64,
    pub lifting: LiftSamples,
    pub passed: bool,
}

pub fn check_nil_ideal_lifting(ring: &Ring, ideal: &Ideal, samples: usize, cfg: &Config) -> Result<NilIdealLifting> {
    let s = ideal_nil_index(ideal).ok_or_else(|| Error::Precondition("ideal is not nil".into()))?;
    let quotient = quotient_ring(ring, ideal)?;
    let q = quotient.ring();
    let ring_nil_clean = ring_is_nil_clean(ring, cfg)?.nil_clean;
    let quotient_nil_clean = ring_is_nil_clean(q, cfg)?.nil_clean;

    let mut lifted = 0u64;
    let mut failures = 0usize;
    for x in ring.elements() {
        if let Decomposition::Witness(w) = decompose_bruteforce(q, quotient.project(x), cfg)? {
            let e = lift_idempotent(ring, quotient.representative(w.e), ideal)?.idempotent;
            if is_nilpotent(ring, ring.sub(x, e)).is_nilpotent() && ring.mul(e, e) == e {
                lifted += 1;
            } else {
                failures += 1;
            }
        }
    }

    let bound = lift_iteration_bound(s);
    let idempotents = enumerate_idempotents(q, cfg)?;
    let mut rng = seeded(cfg, ring, ideal.len() as u64);
    let mut max_iterations = 0;
    for _ in 0..samples {
        let e_bar = idempotents[rng.gen_range(0..idempotents.len())];
        let i = ideal.elements()[rng.gen_range(0..ideal.len())];
        let b = ring.add(quotient.representative(e_bar), i);
        match lift_idempotent(ring, b, ideal) {
            Ok(lift)
                if lift.iterations <= bound
                    && ring.mul(lift.idempotent, lift.idempotent) == lift.idempotent
                    && ideal.contains(ring.sub(lift.idempotent, b)) =>
            {
                max_iterations = max_iterations.max(lift.iterations);
            }
            _ => failures += 1,
        }
    }

    let agree = ring_nil_clean == quotient_nil_clean;
    let complete = !quotient_nil_clean || lifted == ring.order();
    Ok(NilIdealLifting {
        ring: ring.name().to_string(),
        ideal: ideal.elements().to_vec(),
        nil_index: s,
        ring_nil_clean,
        quotient_nil_clean,
        agree,
        lifted_witnesses: lifted,
        lifting: LiftSamples {
            samples,
            failures,
            max_iterations,
            bound,
        },
        passed: agree && complete && failures == 0,
    })
}

/// `M_n(GF(q))` at finite scale: nil-clean exactly when `q = 2`.
#[derive(Debug, Clone, Serialize)]
pub struct FiniteFieldCheck {
    pub q: u64,
    pub n: usize,
    pub nil_clean: bool,
    pub expected: bool,
    pub certificate: Option<NonNilCleanCertificate>,
    pub certificate_verified: Option<bool>,
    pub passed: bool,
}

pub fn check_finite_fields(q: u64, n: usize, cfg: &Config) -> Result<FiniteFieldCheck> {
    let field = Ring::galois_field(q)?;
    let m = matrix_ring_within_budget(&field, n, cfg)?;
    let verdict = ring_is_nil_clean(&m, cfg)?;
    let certificate_verified = verdict.certificate.as_ref().map(|c| c.verify(&m));
    let expected = q == 2;
    Ok(FiniteFieldCheck {
        q,
        n,
        nil_clean: verdict.nil_clean,
        expected,
        passed: verdict.nil_clean == expected && certificate_verified != Some(false),
        certificate: verdict.certificate,
        certificate_verified,
    })
}

/// For abelian `R`: `RxR = R` iff `x` is a unit.
#[derive(Debug, Clone, Serialize)]
pub struct FullIdealUnits {
    pub ring: String,
    pub elements: u64,
    pub units: u64,
    pub mismatches: u64,
    pub first_mismatch: Option<u64>,
    pub exchange: bool,
    pub passed: bool,
}

pub fn check_full_ideal_units(ring: &Ring, cfg: &Config) -> Result<FullIdealUnits> {
    require_abelian(ring, cfg)?;
    let exchange = ring_is_exchange(ring, cfg)?.holds;
    let mut units = 0;
    let mut mismatches = Vec::new();
    for x in ring.elements() {
        let unit = unit_inverse(ring, x).is_some();
        units += unit as u64;
        if is_full_ideal(&ideal_generated_by(ring, &[x], cfg)?) != unit {
            mismatches.push(x);
        }
    }
    Ok(FullIdealUnits {
        ring: ring.name().to_string(),
        elements: ring.order(),
        units,
        mismatches: mismatches.len() as u64,
        first_mismatch: mismatches.first().copied(),
        exchange,
        passed: mismatches.is_empty() && exchange,
    })
}

/// For abelian `R`: the intersection of maximal ideals equals `J(R)`.
#[derive(Debug, Clone, Serialize)]
pub struct JStarRadical {
    pub ring: String,
    pub radical: Vec<u64>,
    pub j_star: Vec<u64>,
    pub contained: bool,
    pub equal: bool,
}

pub fn check_jstar_equals_radical(ring: &Ring, cfg: &Config) -> Result<JStarRadical> {
    require_abelian(ring, cfg)?;
    let j = jacobson_radical(ring, cfg)?;
    let js = j_star(ring, cfg)?;
    Ok(JStarRadical {
        ring: ring.name().to_string(),
        contained: j.is_subset(&js),
        equal: j == js,
        radical: j.elements().to_vec(),
        j_star: js.elements().to_vec(),
    })
}

/// For connected `R`: `M_n(R)` nil-clean iff `|R/J| = 2` and `M_n(J)` is
/// nil. Positive cases also run random structured decompositions.
#[derive(Debug, Clone, Serialize)]
pub struct ConnectedCriterion {
    pub ring: String,
    pub n: usize,
    pub oracle_nil_clean: bool,
    pub quotient_order: u64,
    pub matrix_radical_nil: bool,
    pub criterion: bool,
    pub agree: bool,
    pub certificate: Certificate,
    pub structured_samples: usize,
    pub structured_verified: usize,
    pub exponent_bound: Option<u64>,
    pub passed: bool,
}

pub fn check_connected_criterion(ring: &Ring, n: usize, samples: usize, cfg: &Config) -> Result<ConnectedCriterion> {
    if !ring_is_connected(ring, cfg)?.holds {
        return Err(Error::Precondition(format!("{} has a non-trivial idempotent", ring.name())));
    }
    let oracle = decide_matrix_nil_clean(ring, n, DecisionMethod::Bruteforce, cfg)?;
    let j = jacobson_radical(ring, cfg)?;
    let quotient_order = ring.order() / j.len() as u64;
    let nil = matrix_ideal_is_nil(ring, &j, n, cfg)?;
    let criterion = quotient_order == 2 && nil.nil;

    let mut verified = 0;
    let mut attempted = 0;
    if criterion {
        let dec = StructuredDecomposer::new(ring, n, cfg)?;
        let bound = nil.exponent_bound.unwrap_or(0);
        let mut rng = seeded(cfg, ring, n as u64);
        for _ in 0..samples {
            attempted += 1;
            let entries = (0..n * n).map(|_| rng.gen_range(0..ring.order())).collect();
            let a = Matrix::new(ring, n, entries)?;
            if let Ok(w) = dec.decompose(&a) {
                if w.verify() && w.e.is_idempotent() && w.e.add(&w.w) == a && w.w.pow(bound).is_zero() {
                    verified += 1;
                }
            }
        }
    }
    let agree = oracle.nil_clean == criterion;
    Ok(ConnectedCriterion {
        ring: ring.name().to_string(),
        n,
        oracle_nil_clean: oracle.nil_clean,
        quotient_order,
        matrix_radical_nil: nil.nil,
        criterion,
        agree,
        certificate: oracle.certificate,
        structured_samples: attempted,
        structured_verified: verified,
        exponent_bound: nil.exponent_bound,
        passed: agree && verified == attempted,
    })
}

/// The profile showing the abelian hypothesis cannot be dropped:
/// nil-clean, semiprimitive, not Boolean, not abelian.
#[derive(Debug, Clone, Serialize)]
pub struct NonAbelianProfile {
    pub ring: String,
    pub nil_clean: bool,
    pub radical_zero: bool,
    pub boolean: bool,
    pub abelian: bool,
    pub abelian_witness: Option<(u64, u64)>,
    pub counterexample: bool,
}

pub fn check_non_abelian_counterexample(ring: &Ring, cfg: &Config) -> Result<NonAbelianProfile> {
    let nil_clean = ring_is_nil_clean(ring, cfg)?.nil_clean;
    let radical_zero = jacobson_radical(ring, cfg)?.is_zero();
    let boolean = ring_is_boolean(ring, cfg)?.holds;
    let abelian = ring_is_abelian(ring, cfg)?;
    Ok(NonAbelianProfile {
        ring: ring.name().to_string(),
        nil_clean,
        radical_zero,
        boolean,
        abelian: abelian.holds,
        abelian_witness: abelian.witness,
        counterexample: nil_clean && radical_zero && !boolean && !abelian.holds,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CrossStatus {
    Agreed { nil_clean: bool, theorem_applicable: bool },
    Skipped { reason: String },
    Discrepancy { detail: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossRow {
    pub ring: String,
    pub n: usize,
    #[serde(flatten)]
    pub status: CrossStatus,
}

#[derive(Debug, Clone, Serialize)]
pub struct CrossValidation {
    pub rows: Vec<CrossRow>,
    pub compared: usize,
    pub skipped: usize,
    pub discrepancies: usize,
}

/// `decide` with both methods on every entry for `1 ≤ n ≤ n_max`, where
/// `n = 3` and beyond is only attempted over rings of order 2. Rows follow
/// corpus order.
pub fn cross_validate(corpus: &[CorpusEntry], n_max: usize, cfg: &Config) -> Result<CrossValidation> {
    let jobs: Vec<(&CorpusEntry, usize)> = corpus
        .iter()
        .flat_map(|e| {
            let top = if e.ring.order() == 2 { n_max.max(3) } else { n_max.min(2) };
            (1..=top).map(move |n| (e, n))
        })
        .collect();
    let rows = scan::map(cfg, &jobs, |&(entry, n)| -> Result<CrossRow> {
        let status = match decide_matrix_nil_clean(&entry.ring, n, DecisionMethod::Both, cfg) {
            Ok(r) => CrossStatus::Agreed {
                nil_clean: r.nil_clean,
                theorem_applicable: r.theorem_verdict.is_some(),
            },
            Err(Error::BudgetExceeded { what, needed, budget }) => CrossStatus::Skipped {
                reason: format!("{what} needs {needed} elements, budget {budget}"),
            },
            Err(Error::Discrepancy(detail)) => CrossStatus::Discrepancy { detail },
            Err(e) => return Err(e),
        };
        Ok(CrossRow {
            ring: entry.spec.clone(),
            n,
            status,
        })
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let count = |f: fn(&CrossStatus) -> bool| rows.iter().filter(|r| f(&r.status)).count();
    Ok(CrossValidation {
        compared: count(|s| matches!(s, CrossStatus::Agreed { .. })),
        skipped: count(|s| matches!(s, CrossStatus::Skipped { .. })),
        discrepancies: count(|s| matches!(s, CrossStatus::Discrepancy { .. })),
        rows,
    })
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "suite", content = "report", rename_all = "snake_case")]
pub enum SuiteReport {
    CommutativeEquivalence(CommutativeEquivalence),
    RingMatrixTransfer(RingMatrixTransfer),
    NilIdealLifting(NilIdealLifting),
    FiniteFields(FiniteFieldCheck),
    FullIdealUnits(FullIdealUnits),
    JStarEqualsRadical(JStarRadical),
    ConnectedCriterion(ConnectedCriterion),
    NonAbelianCounterexample(NonAbelianProfile),
}

impl SuiteReport {
    pub fn name(&self) -> &'static str {
        match self {
            SuiteReport::CommutativeEquivalence(_) => "commutative_equivalence",
            SuiteReport::RingMatrixTransfer(_) => "ring_matrix_transfer",
            SuiteReport::NilIdealLifting(_) => "nil_ideal_lifting",
            SuiteReport::FiniteFields(_) => "finite_fields",
            SuiteReport::FullIdealUnits(_) => "full_ideal_units",
            SuiteReport::JStarEqualsRadical(_) => "j_star_equals_radical",
            SuiteReport::ConnectedCriterion(_) => "connected_criterion",
            SuiteReport::NonAbelianCounterexample(_) => "non_abelian_counterexample",
        }
    }

    pub fn passed(&self) -> bool {
        match self {
            SuiteReport::CommutativeEquivalence(r) => r.agree,
            SuiteReport::RingMatrixTransfer(r) => r.agree,
            SuiteReport::NilIdealLifting(r) => r.passed,
            SuiteReport::FiniteFields(r) => r.passed,
            SuiteReport::FullIdealUnits(r) => r.passed,
            SuiteReport::JStarEqualsRadical(r) => r.equal,
            SuiteReport::ConnectedCriterion(r) => r.passed,
            SuiteReport::NonAbelianCounterexample(r) => r.counterexample,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteOutcome {
    pub suite: &'static str,
    pub subject: String,
    pub passed: bool,
    pub skipped: Option<String>,
    pub report: Option<SuiteReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub n: usize,
    pub corpus_size: usize,
    pub cross_validation: CrossValidation,
    pub suites: Vec<SuiteOutcome>,
    pub failures: usize,
    pub passed: bool,
}

type Job<'a> = (&'static str, String, Box<dyn Fn() -> Result<SuiteReport> + Send + Sync + 'a>);

fn outcome(suite: &'static str, subject: String, result: Result<SuiteReport>) -> Result<SuiteOutcome> {
    match result {
        Ok(report) => Ok(SuiteOutcome {
            suite,
            subject,
            passed: report.passed(),
            skipped: None,
            report: Some(report),
        }),
        Err(Error::BudgetExceeded { what, needed, budget }) => Ok(SuiteOutcome {
            suite,
            subject,
            passed: true,
            skipped: Some(format!("{what} needs {needed} elements, budget {budget}")),
            report: None,
        }),
        Err(e) => Err(e),
    }
}

/// Every suite over the corpus, plus the fixed finite-field cases.
pub fn run_all_suites(corpus: &[CorpusEntry], n: usize, cfg: &Config) -> Result<VerifyReport> {
    let cross_validation = cross_validate(corpus, n, cfg)?;
    let mut jobs: Vec<Job> = Vec::new();
    for entry in corpus {
        let r = &entry.ring;
        let f = entry.flags;
        let subject = entry.spec.clone();
        if f.commutative && f.order <= 16 {
            jobs.push(("commutative_equivalence", subject.clone(), Box::new(move || {
                check_commutative_equivalence(r, n, cfg).map(SuiteReport::CommutativeEquivalence)
            })));
        }
        if f.commutative {
            jobs.push(("ring_matrix_transfer", subject.clone(), Box::new(move || {
                check_ring_matrix_transfer(r, cfg).map(SuiteReport::RingMatrixTransfer)
            })));
        }
        for (label, ideal) in [("J", entry.radical.clone()), ("0", Ideal::zero(r))] {
            jobs.push(("nil_ideal_lifting", format!("{subject} / {label}"), Box::new(move || {
                check_nil_ideal_lifting(r, &ideal, LIFT_SAMPLES, cfg).map(SuiteReport::NilIdealLifting)
            })));
        }
        if f.abelian {
            jobs.push(("full_ideal_units", subject.clone(), Box::new(move || {
                check_full_ideal_units(r, cfg).map(SuiteReport::FullIdealUnits)
            })));
            if f.order <= 64.min(cfg.ideal_cap) {
                jobs.push(("j_star_equals_radical", subject.clone(), Box::new(move || {
                    check_jstar_equals_radical(r, cfg).map(SuiteReport::JStarEqualsRadical)
                })));
            }
        }
        if f.connected {
            jobs.push(("connected_criterion", subject.clone(), Box::new(move || {
                check_connected_criterion(r, n, STRUCTURED_SAMPLES, cfg).map(SuiteReport::ConnectedCriterion)
            })));
        }
        if !f.abelian {
            jobs.push(("non_abelian_counterexample", subject.clone(), Box::new(move || {
                check_non_abelian_counterexample(r, cfg).map(SuiteReport::NonAbelianCounterexample)
            })));
        }
    }
    for &(q, k) in FINITE_FIELD_CASES {
        jobs.push(("finite_fields", format!("M{k}(GF({q}))"), Box::new(move || {
            check_finite_fields(q, k, cfg).map(SuiteReport::FiniteFields)
        })));
    }

    let suites = scan::map(cfg, &jobs, |(suite, subject, run)| outcome(suite, subject.clone(), run()))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let failures = suites.iter().filter(|s| !s.passed).count() + cross_validation.discrepancies;
    Ok(VerifyReport {
        n,
        corpus_size: corpus.len(),
        cross_validation,
        suites,
        failures,
        passed: failures == 0,
    })
}
