//! Element- and ring-level predicates: idempotent, nilpotent, unit, central,
//! Boolean, abelian, exchange, connected, local, and two-sided ideal
//! generation.

use std::collections::HashSet;
use std::hash::Hash;

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::radical::Ideal;
use crate::ring::{Element, Matrix, Ring, RingKind};
use crate::scan;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NilpotencyResult {
    /// Smallest `k ≥ 1` with `a^k = 0`, when one exists.
    pub index: Option<u32>,
}

impl NilpotencyResult {
    pub fn is_nilpotent(&self) -> bool {
        self.index.is_some()
    }
}

pub fn is_idempotent(ring: &Ring, a: u64) -> bool {
    ring.mul(a, a) == a
}

/// Upper bound on the nilpotency index in a ring of the given order.
///
/// While `a^k ≠ 0` the right ideals `a^k R` strictly decrease, each at
/// least halving, so a nilpotent element has index at most `⌊log₂ |R|⌋`.
pub fn nilpotency_bound(order: u64) -> u32 {
    (63 - order.max(2).leading_zeros()).max(1)
}

/// Same bound for `M_n` over a ring of order `base_order`, possibly too
/// large to index.
pub fn matrix_nilpotency_bound(base_order: u64, n: usize) -> u32 {
    let bits = 64 - (base_order.max(2) - 1).leading_zeros();
    (bits * (n * n) as u32).max(1)
}

/// Power iteration with repeat detection: the power sequence of an element
/// of a finite ring is eventually periodic, and the element is nilpotent
/// iff zero shows up before the first repeated power. `bound` cuts the walk
/// short once no nilpotency index is possible any more.
fn power_walk<T, M, Z>(a: &T, mul: M, is_zero: Z, bound: u32) -> Option<u32>
where
    T: Clone + Eq + Hash,
    M: Fn(&T, &T) -> T,
    Z: Fn(&T) -> bool,
{
    let mut seen = HashSet::new();
    let mut power = a.clone();
    let mut k = 1u32;
    loop {
        if is_zero(&power) {
            return Some(k);
        }
        if k >= bound || !seen.insert(power.clone()) {
            return None;
        }
        power = mul(&power, a);
        k += 1;
    }
}

pub fn is_nilpotent(ring: &Ring, a: u64) -> NilpotencyResult {
    let zero = ring.zero();
    NilpotencyResult {
        index: power_walk(&a, |x, y| ring.mul(*x, *y), |x| *x == zero, nilpotency_bound(ring.order())),
    }
}

pub fn element_nilpotency(a: &Element) -> NilpotencyResult {
    is_nilpotent(a.ring(), a.index())
}

pub fn matrix_nilpotency(m: &Matrix) -> NilpotencyResult {
    let bound = matrix_nilpotency_bound(m.base().order(), m.dim());
    NilpotencyResult {
        index: power_walk(m, Matrix::mul, Matrix::is_zero, bound),
    }
}

/// Fast path over a commutative base: `A` is nilpotent iff `A^(n·s) = 0`,
/// where `s` is the nil index of the base ring's nilradical.
pub fn matrix_is_nilpotent_fast(m: &Matrix, nilradical_index: u32) -> Result<bool> {
    if !m.base().is_commutative() {
        return Err(Error::Precondition("fast nilpotency test needs a commutative base".into()));
    }
    Ok(m.pow(m.dim() as u64 * nilradical_index as u64).is_zero())
}

/// Nilpotency without the index, by repeated squaring up to the bound.
pub(crate) fn is_nil_by_squaring(ring: &Ring, a: u64) -> bool {
    let bound = nilpotency_bound(ring.order());
    let mut x = a;
    let mut reach = 1u32;
    while reach < bound {
        x = ring.mul(x, x);
        reach *= 2;
    }
    x == ring.zero()
}

fn verify_inverse(ring: &Ring, a: u64, b: u64) -> Option<u64> {
    (ring.mul(a, b) == ring.one() && ring.mul(b, a) == ring.one()).then_some(b)
}

/// Walk the powers of `a` looking for 1; `a^k = 1` makes `a^(k-1)` the
/// inverse.
fn inverse_by_powers<T, M>(a: &T, one: &T, mul: M) -> Option<T>
where
    T: Clone + Eq + Hash,
    M: Fn(&T, &T) -> T,
{
    let mut seen = HashSet::new();
    let mut prev = one.clone();
    let mut power = a.clone();
    loop {
        if power == *one {
            return Some(prev);
        }
        if !seen.insert(power.clone()) {
            return None;
        }
        prev = power.clone();
        power = mul(&power, a);
    }
}

/// Two-sided inverse of `a`, when it exists.
pub fn unit_inverse(ring: &Ring, a: u64) -> Option<u64> {
    if ring.order() == 1 {
        return Some(a);
    }
    let candidate = match ring.kind() {
        RingKind::IntegersMod { modulus } => {
            let g = (a as i128).extended_gcd(&(*modulus as i128));
            if g.gcd != 1 {
                return None;
            }
            Some(g.x.mod_floor(&(*modulus as i128)) as u64)
        }
        RingKind::GaloisField(f) => {
            if a == 0 {
                return None;
            }
            Some(ring.pow(a, f.order() - 2))
        }
        RingKind::Product(factors) => {
            let parts = ring.components(a);
            let inv: Option<Vec<u64>> = factors.iter().zip(&parts).map(|(f, &x)| unit_inverse(f, x)).collect();
            Some(ring.from_components(&inv?))
        }
        RingKind::TrivialExtension { base, .. } => {
            let parts = ring.components(a);
            let u = unit_inverse(base, parts[0])?;
            let mut inv = vec![u];
            inv.extend(parts[1..].iter().map(|&v| base.neg(base.mul(base.mul(u, v), u))));
            Some(ring.from_components(&inv))
        }
        RingKind::MatrixRing { base, .. } if base.is_commutative() => {
            let m = Matrix::from_index(ring, a).ok()?;
            matrix_inverse(&m)?.index()
        }
        _ if ring.has_tables() => ring.elements().find(|&b| verify_inverse(ring, a, b).is_some()),
        _ => inverse_by_powers(&a, &ring.one(), |x, y| ring.mul(*x, *y)),
    };
    verify_inverse(ring, a, candidate?)
}

pub fn is_unit(a: &Element) -> Option<Element> {
    unit_inverse(a.ring(), a.index()).map(|b| a.ring().element(b).expect("inverse is in range"))
}

/// Inverse of a square matrix: adjugate over a commutative base, power walk
/// otherwise. Both products are verified.
pub fn matrix_inverse(m: &Matrix) -> Option<Matrix> {
    let base = m.base();
    let candidate = if base.is_commutative() {
        let det = m.determinant().ok()?;
        let u = unit_inverse(base, det)?;
        m.adjugate().ok()?.scale(u)
    } else {
        inverse_by_powers(m, &Matrix::identity(base, m.dim()), Matrix::mul)?
    };
    (m.mul(&candidate).is_identity() && candidate.mul(m).is_identity()).then_some(candidate)
}

/// Unit lookup table, `table[a]` = inverse of `a`.
pub fn unit_table(ring: &Ring, cfg: &Config) -> Result<Vec<Option<u64>>> {
    require_scan(ring, cfg, "unit table")?;
    let n = ring.order();
    Ok(if cfg.parallel() {
        (0..n).into_par_iter().map(|a| unit_inverse(ring, a)).collect()
    } else {
        (0..n).map(|a| unit_inverse(ring, a)).collect()
    })
}

pub(crate) fn require_scan(ring: &Ring, cfg: &Config, what: &str) -> Result<()> {
    if ring.order() > cfg.scan_cap {
        Err(Error::budget(format!("{what} of {}", ring.name()), ring.order() as u128, cfg.scan_cap))
    } else {
        Ok(())
    }
}

pub fn is_central(ring: &Ring, a: u64) -> bool {
    ring.elements().all(|r| ring.mul(a, r) == ring.mul(r, a))
}

/// Outcome of a ring-level predicate with the smallest counterexample.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PredicateCheck<W> {
    pub holds: bool,
    pub witness: Option<W>,
}

impl<W> PredicateCheck<W> {
    fn from_witness(witness: Option<W>) -> Self {
        PredicateCheck {
            holds: witness.is_none(),
            witness,
        }
    }
}

/// All idempotents of a ring within the scan cap, ascending.
pub fn idempotents(ring: &Ring, cfg: &Config) -> Result<Vec<u64>> {
    require_scan(ring, cfg, "idempotent scan")?;
    Ok(scan::filter(cfg, ring.elements(), |a| is_idempotent(ring, a)))
}

/// Abelian: every idempotent is central. The witness is the smallest
/// non-central idempotent together with the smallest element it fails to
/// commute with.
pub fn ring_is_abelian(ring: &Ring, cfg: &Config) -> Result<PredicateCheck<(u64, u64)>> {
    let idem = idempotents(ring, cfg)?;
    let witness = idem.iter().find_map(|&e| {
        ring.elements()
            .find(|&r| ring.mul(e, r) != ring.mul(r, e))
            .map(|r| (e, r))
    });
    Ok(PredicateCheck::from_witness(witness))
}

/// Boolean: every element is idempotent. Witness: smallest non-idempotent.
pub fn ring_is_boolean(ring: &Ring, cfg: &Config) -> Result<PredicateCheck<u64>> {
    require_scan(ring, cfg, "Boolean scan")?;
    let witness = scan::find_first(cfg, ring.elements(), |a| !is_idempotent(ring, a));
    Ok(PredicateCheck::from_witness(witness))
}

/// Connected: the only idempotents are 0 and 1. Witness: smallest
/// non-trivial idempotent.
pub fn ring_is_connected(ring: &Ring, cfg: &Config) -> Result<PredicateCheck<u64>> {
    let idem = idempotents(ring, cfg)?;
    let witness = idem.into_iter().find(|&e| e != ring.zero() && e != ring.one());
    Ok(PredicateCheck::from_witness(witness))
}

fn right_multiples(ring: &Ring, a: u64) -> Vec<bool> {
    let mut set = vec![false; ring.order() as usize];
    for r in ring.elements() {
        set[ring.mul(a, r) as usize] = true;
    }
    set
}

/// Exchange: for every `a` some idempotent `e ∈ aR` has `1 − e ∈ (1 − a)R`.
/// Witness: smallest `a` without such an idempotent.
pub fn ring_is_exchange(ring: &Ring, cfg: &Config) -> Result<PredicateCheck<u64>> {
    let idem = idempotents(ring, cfg)?;
    let one = ring.one();
    let witness = scan::find_first(cfg, ring.elements(), |a| {
        let a_r = right_multiples(ring, a);
        let co_r = right_multiples(ring, ring.sub(one, a));
        !idem
            .iter()
            .any(|&e| a_r[e as usize] && co_r[ring.sub(one, e) as usize])
    });
    Ok(PredicateCheck::from_witness(witness))
}

/// Local: for every `a`, `a` or `1 − a` is a unit. Witness: smallest `a`
/// with neither invertible.
pub fn is_local_ring(ring: &Ring, cfg: &Config) -> Result<PredicateCheck<u64>> {
    let units = unit_table(ring, cfg)?;
    let one = ring.one();
    let witness = ring
        .elements()
        .find(|&a| units[a as usize].is_none() && units[ring.sub(one, a) as usize].is_none());
    Ok(PredicateCheck::from_witness(witness))
}

/// Smallest two-sided ideal containing `xs`.
pub fn ideal_generated_by(ring: &Ring, xs: &[u64], cfg: &Config) -> Result<Ideal> {
    Ideal::generated_by(ring, xs, cfg)
}

pub fn is_full_ideal(ideal: &Ideal) -> bool {
    ideal.is_full()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(spec: &str) -> Ring {
        spec.parse().unwrap()
    }

    fn cfg() -> Config {
        Config::default()
    }

    #[test]
    fn idempotent_scans() {
        assert_eq!(idempotents(&ring("Z/6"), &cfg()).unwrap(), vec![0, 1, 3, 4]);
        assert_eq!(idempotents(&ring("M2(Z/2)"), &cfg()).unwrap().len(), 8);
        let gf4 = ring("GF(4)");
        assert!(is_idempotent(&gf4, 0) && is_idempotent(&gf4, 1));
    }

    #[test]
    fn nilpotency_examples() {
        assert_eq!(is_nilpotent(&ring("Z/8"), 2).index, Some(3));
        assert_eq!(is_nilpotent(&ring("Z/6"), 2).index, None);
        assert_eq!(is_nilpotent(&ring("Z/6"), 0).index, Some(1));
        let m = Matrix::from_rows(&ring("Z/2"), &[vec![1, 1], vec![1, 1]]).unwrap();
        assert_eq!(matrix_nilpotency(&m).index, Some(2));
        assert!(matrix_is_nilpotent_fast(&m, 1).unwrap());
    }

    #[test]
    fn bound_is_tight_for_cyclic_two_groups() {
        // 2 in Z/2^k has index k = log2 of the order
        for k in 1..=12u32 {
            let r = Ring::integers_mod(1 << k).unwrap();
            assert_eq!(is_nilpotent(&r, 2 % (1 << k)).index, (k > 0).then_some(k));
            assert_eq!(nilpotency_bound(r.order()), k);
        }
    }

    #[test]
    fn unit_examples() {
        let z12 = ring("Z/12");
        assert_eq!(unit_inverse(&z12, 1), Some(1));
        assert_eq!(unit_inverse(&z12, 5), Some(5));
        assert_eq!(unit_inverse(&z12, 4), None);
        let z4 = ring("Z/4");
        let m = Matrix::from_rows(&z4, &[vec![1, 1], vec![0, 1]]).unwrap();
        assert_eq!(matrix_inverse(&m).unwrap().rows(), vec![vec![1, 3], vec![0, 1]]);
        let t = ring("triv(GF(3),2)");
        let a = t.from_components(&[2, 1, 2]);
        let inv = unit_inverse(&t, a).unwrap();
        assert_eq!(t.mul(a, inv), t.one());
    }

    #[test]
    fn structural_and_scanned_inverses_agree() {
        for spec in ["Z/12", "GF(9)", "Z/4 x Z/6", "triv(Z/4,1)", "M2(Z/2)", "M2(Z/3)"] {
            let r = ring(spec);
            for a in r.elements() {
                let scanned = r.elements().find(|&b| r.mul(a, b) == r.one() && r.mul(b, a) == r.one());
                assert_eq!(unit_inverse(&r, a), scanned, "{spec} element {a}");
                let walked = inverse_by_powers(&a, &r.one(), |x, y| r.mul(*x, *y));
                assert_eq!(walked, scanned, "{spec} element {a}");
            }
        }
    }

    #[test]
    fn abelian_checks() {
        assert!(ring_is_abelian(&ring("Z/12"), &cfg()).unwrap().holds);
        assert!(ring_is_abelian(&ring("triv(GF(2),2)"), &cfg()).unwrap().holds);
        let m2 = ring("M2(Z/2)");
        let check = ring_is_abelian(&m2, &cfg()).unwrap();
        assert!(!check.holds);
        // smallest non-central idempotent is [[0,0],[0,1]], failing against [[0,0],[1,0]]
        assert_eq!(check.witness, Some((1, 2)));
        // [[1,0],[0,0]] fails to commute with [[0,1],[0,0]]
        let e = 0b1000;
        let r = 0b0100;
        assert_ne!(m2.mul(e, r), m2.mul(r, e));
        assert!(!is_central(&m2, e));
    }

    #[test]
    fn boolean_checks() {
        assert!(ring_is_boolean(&ring("Z/2"), &cfg()).unwrap().holds);
        assert!(ring_is_boolean(&ring("Z/2 x Z/2"), &cfg()).unwrap().holds);
        let gf4 = ring_is_boolean(&ring("GF(4)"), &cfg()).unwrap();
        assert_eq!(gf4.witness, Some(2));
    }

    #[test]
    fn connectedness() {
        assert!(ring_is_connected(&ring("Z/4"), &cfg()).unwrap().holds);
        assert_eq!(ring_is_connected(&ring("Z/6"), &cfg()).unwrap().witness, Some(3));
        for q in ["GF(2)", "GF(3)", "GF(4)", "GF(8)", "GF(9)", "GF(16)"] {
            assert!(ring_is_connected(&ring(q), &cfg()).unwrap().holds);
        }
    }

    #[test]
    fn exchange_and_local() {
        assert!(ring_is_exchange(&ring("Z/8"), &cfg()).unwrap().holds);
        assert!(ring_is_exchange(&ring("Z/6"), &cfg()).unwrap().holds);
        assert!(is_local_ring(&ring("Z/4"), &cfg()).unwrap().holds);
        assert_eq!(is_local_ring(&ring("Z/6"), &cfg()).unwrap().witness, Some(3));
        assert!(is_local_ring(&ring("triv(GF(2),2)"), &cfg()).unwrap().holds);
    }

    #[test]
    fn generated_ideals() {
        let z6 = ring("Z/6");
        assert_eq!(ideal_generated_by(&z6, &[0], &cfg()).unwrap().elements(), &[0]);
        let two = ideal_generated_by(&z6, &[2], &cfg()).unwrap();
        assert_eq!(two.elements(), &[0, 2, 4]);
        assert!(!is_full_ideal(&two));
        assert!(is_full_ideal(&ideal_generated_by(&z6, &[5], &cfg()).unwrap()));
    }

    #[test]
    fn scan_cap_is_reported() {
        let big = ring("Z/100000");
        assert!(matches!(ring_is_boolean(&big, &cfg()), Err(Error::BudgetExceeded { .. })));
    }
}
