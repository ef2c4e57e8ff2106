use serde::Serialize;

use super::Ring;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomViolation {
    pub axiom: &'static str,
    pub indices: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub ring: String,
    pub order: u64,
    pub passed: bool,
    pub first_violation: Option<AxiomViolation>,
}

/// Exhaustive check of the ring axioms. Cubic in the order, so refused above
/// `cap`.
pub fn ring_axioms_check(ring: &Ring, cap: u64) -> Result<AxiomReport> {
    let n = ring.order();
    if n > cap {
        return Err(Error::budget(format!("axiom check of {}", ring.name()), n as u128, cap));
    }
    let violation = first_violation(ring);
    Ok(AxiomReport {
        ring: ring.name().to_string(),
        order: n,
        passed: violation.is_none(),
        first_violation: violation,
    })
}

fn first_violation(r: &Ring) -> Option<AxiomViolation> {
    let n = r.order();
    let (zero, one) = (r.zero(), r.one());
    let v = |axiom, indices: &[u64]| {
        Some(AxiomViolation {
            axiom,
            indices: indices.to_vec(),
        })
    };
    if n > 1 && zero == one {
        return v("zero differs from one", &[zero]);
    }
    for a in 0..n {
        if r.add(a, zero) != a || r.add(zero, a) != a {
            return v("additive identity", &[a]);
        }
        if r.add(a, r.neg(a)) != zero {
            return v("additive inverse", &[a]);
        }
        if r.mul(a, one) != a || r.mul(one, a) != a {
            return v("multiplicative identity", &[a]);
        }
        for b in 0..n {
            if r.add(a, b) != r.add(b, a) {
                return v("additive commutativity", &[a, b]);
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            let ab = r.mul(a, b);
            let a_plus_b = r.add(a, b);
            for c in 0..n {
                if r.add(a_plus_b, c) != r.add(a, r.add(b, c)) {
                    return v("additive associativity", &[a, b, c]);
                }
                if r.mul(ab, c) != r.mul(a, r.mul(b, c)) {
                    return v("multiplicative associativity", &[a, b, c]);
                }
                if r.mul(a, r.add(b, c)) != r.add(ab, r.mul(a, c)) {
                    return v("left distributivity", &[a, b, c]);
                }
                if r.mul(a_plus_b, c) != r.add(r.mul(a, c), r.mul(b, c)) {
                    return v("right distributivity", &[a, b, c]);
                }
            }
        }
    }
    None
}
