//! Idempotent lifting modulo a nil ideal.
//!
//! The map `e ↦ 3e² − 2e³` fixes idempotents and squares the defect:
//! `f(e)² − f(e) = (e² − e)² (4e² − 4e − 3)`. Starting from `b` with
//! `b² − b ∈ I` and `I^s = 0`, the defect vanishes after `⌈log₂ s⌉` steps.
//! Every iterate is a polynomial in `b`, so the argument needs no
//! commutativity.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::radical::{ideal_nil_index, Ideal};
use crate::ring::{Matrix, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lift<T> {
    pub idempotent: T,
    pub iterations: u32,
    /// `⌈log₂ s⌉ + 1` for the ideal's nil index `s`.
    pub bound: u32,
}

pub fn lift_iteration_bound(nil_index: u32) -> u32 {
    let s = nil_index.max(1);
    (32 - (s - 1).leading_zeros()) + 1
}

trait Arith {
    type Elem: Clone + PartialEq;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
}

impl Arith for Ring {
    type Elem = u64;
    fn add(&self, a: &u64, b: &u64) -> u64 {
        Ring::add(self, *a, *b)
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        Ring::sub(self, *a, *b)
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        Ring::mul(self, *a, *b)
    }
}

struct MatrixAlgebra;

impl Arith for MatrixAlgebra {
    type Elem = Matrix;
    fn add(&self, a: &Matrix, b: &Matrix) -> Matrix {
        a.add(b)
    }
    fn sub(&self, a: &Matrix, b: &Matrix) -> Matrix {
        a.sub(b)
    }
    fn mul(&self, a: &Matrix, b: &Matrix) -> Matrix {
        a.mul(b)
    }
}

fn iterate<A: Arith>(alg: &A, b: &A::Elem, bound: u32) -> Option<(A::Elem, u32)> {
    let mut e = b.clone();
    let mut iterations = 0;
    loop {
        let square = alg.mul(&e, &e);
        if square == e {
            return Some((e, iterations));
        }
        if iterations >= bound {
            return None;
        }
        let cube = alg.mul(&square, &e);
        let three_sq = alg.add(&alg.add(&square, &square), &square);
        e = alg.sub(&alg.sub(&three_sq, &cube), &cube);
        iterations += 1;
    }
}

fn nil_index_of(ideal: &Ideal) -> Result<u32> {
    ideal_nil_index(ideal).ok_or_else(|| Error::Precondition("ideal is not nil".into()))
}

/// Idempotent `e` with `e − b ∈ I`, for `b² − b ∈ I`.
pub fn lift_idempotent(ring: &Ring, b: u64, ideal: &Ideal) -> Result<Lift<u64>> {
    let s = nil_index_of(ideal)?;
    let defect = ring.sub(ring.mul(b, b), b);
    if !ideal.contains(defect) {
        return Err(Error::Precondition(format!("b² − b = {defect} is not in the ideal")));
    }
    let bound = lift_iteration_bound(s);
    let (e, iterations) = iterate(ring, &b, bound)
        .ok_or_else(|| Error::Precondition("lifting did not converge".into()))?;
    debug_assert!(ideal.contains(ring.sub(e, b)));
    Ok(Lift {
        idempotent: e,
        iterations,
        bound,
    })
}

/// Lift through `M_n(I)`: the entries of `b² − b` must lie in `I`.
/// Since `M_n(I)^k ⊆ M_n(I^k)`, the same iteration bound applies.
pub fn lift_idempotent_matrix(b: &Matrix, ideal: &Ideal) -> Result<Lift<Matrix>> {
    if !ideal.ring().same(b.base()) {
        return Err(Error::RingMismatch {
            left: b.base().name().to_string(),
            right: ideal.ring().name().to_string(),
        });
    }
    let s = nil_index_of(ideal)?;
    let defect = b.mul(b).sub(b);
    if !defect.entries().iter().all(|&x| ideal.contains(x)) {
        return Err(Error::Precondition("b² − b has entries outside the ideal".into()));
    }
    let bound = lift_iteration_bound(s);
    let (e, iterations) = iterate(&MatrixAlgebra, b, bound)
        .ok_or_else(|| Error::Precondition("lifting did not converge".into()))?;
    debug_assert!(e.sub(b).entries().iter().all(|&x| ideal.contains(x)));
    Ok(Lift {
        idempotent: e,
        iterations,
        bound,
    })
}
