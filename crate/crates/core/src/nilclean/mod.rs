//! Nil-clean factorizations `a = e + w`, `e` idempotent and `w` nilpotent.
//!
//! Two engines live here: the exhaustive oracle over an enumerated ring,
//! and the structured pipeline for matrices that splits the Boolean
//! quotient `R/J(R)` into atoms, decomposes each `M_n(Z/2)` component and
//! lifts the result back through the nil radical.

mod atoms;
mod lift;
mod oracle;
mod structured;
mod z2;

use serde::Serialize;

use crate::predicates::{is_idempotent, is_nilpotent, matrix_nilpotency};
use crate::ring::{Matrix, Ring};

pub use atoms::boolean_atoms;
pub use lift::{lift_idempotent, lift_idempotent_matrix, lift_iteration_bound, Lift};
pub use oracle::{decompose_bruteforce, enumerate_idempotents, ring_is_nil_clean, NilCleanVerdict};
pub use structured::{decompose_matrix_structured, StructuredDecomposer};
pub use z2::decompose_matrix_z2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Oracle,
    Structured,
}

/// A verified factorization of a ring element.
#[derive(Debug, Clone, Serialize)]
pub struct NilCleanWitness {
    #[serde(skip)]
    ring: Ring,
    pub target: u64,
    pub e: u64,
    pub w: u64,
    pub nil_index: u32,
    pub method: Method,
}

impl NilCleanWitness {
    /// Build and check `target = e + (target − e)`. Returns `None` unless `e`
    /// is idempotent and the difference is nilpotent.
    pub fn new(ring: &Ring, target: u64, e: u64, method: Method) -> Option<NilCleanWitness> {
        if !is_idempotent(ring, e) {
            return None;
        }
        let w = ring.sub(target, e);
        let nil_index = is_nilpotent(ring, w).index?;
        Some(NilCleanWitness {
            ring: ring.clone(),
            target,
            e,
            w,
            nil_index,
            method,
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Re-derive every claim from raw arithmetic.
    pub fn verify(&self) -> bool {
        let r = &self.ring;
        let k = self.nil_index as u64;
        r.mul(self.e, self.e) == self.e
            && r.add(self.e, self.w) == self.target
            && k >= 1
            && r.pow(self.w, k) == r.zero()
            && (r.order() == 1 || r.pow(self.w, k - 1) != r.zero())
    }
}

/// Every idempotent `e` of the ring leaves `target − e` non-nilpotent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NonNilCleanCertificate {
    pub target: u64,
    pub idempotents_scanned: usize,
}

impl NonNilCleanCertificate {
    /// Re-check against a fresh idempotent scan and the power-walk
    /// nilpotency test.
    pub fn verify(&self, ring: &Ring) -> bool {
        let idempotents: Vec<u64> = ring.elements().filter(|&e| is_idempotent(ring, e)).collect();
        idempotents.len() == self.idempotents_scanned
            && idempotents
                .iter()
                .all(|&e| !is_nilpotent(ring, ring.sub(self.target, e)).is_nilpotent())
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Decomposition {
    Witness(NilCleanWitness),
    NotNilClean(NonNilCleanCertificate),
}

/// A verified factorization of a matrix, possibly too large to index.
#[derive(Debug, Clone, Serialize)]
pub struct MatrixWitness {
    pub target: Matrix,
    pub e: Matrix,
    pub w: Matrix,
    pub nil_index: u32,
    pub method: Method,
    pub lift_iterations: u32,
}

impl MatrixWitness {
    pub fn verify(&self) -> bool {
        let k = self.nil_index as u64;
        self.e.is_idempotent()
            && self.e.add(&self.w) == self.target
            && k >= 1
            && self.w.pow(k).is_zero()
            && !self.w.pow(k - 1).is_zero()
            && matrix_nilpotency(&self.w).index == Some(self.nil_index)
    }

    /// The same witness as ring elements of `M_n(R)`, when indexable.
    pub fn to_indexed(&self, matrix_ring: &Ring) -> Option<NilCleanWitness> {
        NilCleanWitness::new(matrix_ring, self.target.index()?, self.e.index()?, self.method)
    }
}
