//! `M_n(Z/m)` for every `m` up to a bound, decided three ways.

use serde::Serialize;

use super::{decide_matrix_nil_clean, DecisionMethod};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::ring::{crt_split_zm, saturating_pow, Ring};
use crate::scan;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurveyRow {
    pub m: u64,
    pub power_of_two: bool,
    /// `(p, r)` with `Z/m ≅ ∏ Z/p^r`.
    pub factors: Vec<(u64, u32)>,
    /// Every CRT factor decided nil-clean on its own.
    pub crt_decision: bool,
    /// The structural criterion applied to `Z/m` directly.
    pub theorem_decision: bool,
    pub oracle_decision: Option<bool>,
    pub cross_checked: bool,
    pub agree: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Survey {
    pub m_max: u64,
    pub n: usize,
    pub rows: Vec<SurveyRow>,
    pub nil_clean: Vec<u64>,
    pub discrepancies: usize,
}

fn survey_row(m: u64, n: usize, cfg: &Config) -> Result<SurveyRow> {
    let split = crt_split_zm(m)?;
    let mut crt_decision = true;
    for f in &split.factors {
        crt_decision &= decide_matrix_nil_clean(&f.ring, n, DecisionMethod::Theorem, cfg)?.nil_clean;
    }
    let zm = Ring::integers_mod(m)?;
    let theorem_decision = decide_matrix_nil_clean(&zm, n, DecisionMethod::Theorem, cfg)?.nil_clean;
    let oracle_decision = if saturating_pow(m, (n * n) as u64) <= cfg.oracle_budget as u128 {
        Some(decide_matrix_nil_clean(&zm, n, DecisionMethod::Bruteforce, cfg)?.nil_clean)
    } else {
        None
    };
    let power_of_two = m.is_power_of_two();
    let single_two = split.factors.len() == 1 && split.factors[0].prime == 2;
    let agree = crt_decision == power_of_two
        && theorem_decision == power_of_two
        && single_two == power_of_two
        && oracle_decision.is_none_or(|o| o == power_of_two);
    Ok(SurveyRow {
        m,
        power_of_two,
        factors: split.factors.iter().map(|f| (f.prime, f.exponent)).collect(),
        crt_decision,
        theorem_decision,
        oracle_decision,
        cross_checked: oracle_decision.is_some(),
        agree,
    })
}

/// Rows for `2 ≤ m ≤ m_max`, with the oracle wherever `m^(n²)` fits the
/// budget. A row disagrees if any route departs from "m is a power of 2".
pub fn survey_zm(m_max: u64, n: usize, cfg: &Config) -> Result<Survey> {
    if m_max < 2 {
        return Err(Error::Precondition(format!("survey needs m_max ≥ 2, got {m_max}")));
    }
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    let ms: Vec<u64> = (2..=m_max).collect();
    let rows = scan::map(cfg, &ms, |&m| survey_row(m, n, cfg))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    Ok(Survey {
        m_max,
        n,
        nil_clean: rows.iter().filter(|r| r.theorem_decision).map(|r| r.m).collect(),
        discrepancies: rows.iter().filter(|r| !r.agree).count(),
        rows,
    })
}
