//! Finite rings given by an enumeration of their elements.
//!
//! Every element of a [`Ring`] is a canonical index in `0..order`. The
//! enumeration is fixed per constructor:
//!
//! * `Z/m`: the residue itself.
//! * `GF(q)`: base-`p` coefficient digits, constant term least significant.
//! * products: mixed radix, leftmost factor most significant.
//! * `triv(K, g)`: tuples `(a, v_1, .., v_g)` in radix `|K|`, `a` most significant.
//! * `M_n(R)`: row-major entries in radix `|R|`, first entry most significant.
//! * quotients: cosets ordered by their smallest representative.
//!
//! Arithmetic is computed from these rules on demand. Rings of order at
//! most [`TABLE_LIMIT`] also carry full operation tables.

mod axioms;
mod crt;
mod element;
mod galois;
mod matrix;
mod spec;

use std::fmt;
use std::sync::atomic::{AtomicU8, Ordering};
use std::sync::{Arc, OnceLock};

use smallvec::SmallVec;

use crate::error::{Error, Result};

pub use axioms::{ring_axioms_check, AxiomReport, AxiomViolation};
pub use crt::{crt_split_zm, CrtFactor, CrtSplit};
pub use element::Element;
pub use galois::GaloisField;
pub use matrix::{parse_matrix_literal, Matrix};
pub use spec::{parse_ring_spec, parse_ring_spec_with_cap};

/// Rings up to this order cache their addition and multiplication tables.
pub const TABLE_LIMIT: u64 = 256;

pub(crate) type Digits = SmallVec<[u64; 16]>;

#[derive(Clone)]
pub struct Ring(Arc<RingInner>);

struct RingInner {
    kind: RingKind,
    order: u64,
    name: String,
    zero: u64,
    one: u64,
    commutative: bool,
    tables: Option<Tables>,
    idempotents: OnceLock<Arc<Vec<u64>>>,
    nil_memo: OnceLock<Vec<AtomicU8>>,
}

struct Tables {
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
}

/// The construction a ring descriptor came from.
#[derive(Debug)]
pub enum RingKind {
    IntegersMod { modulus: u64 },
    GaloisField(GaloisField),
    Product(Vec<Ring>),
    TrivialExtension { base: Ring, generators: usize },
    MatrixRing { base: Ring, n: usize },
    Quotient(QuotientData),
    Table { label: String },
}

#[derive(Debug)]
pub struct QuotientData {
    pub base: Ring,
    /// Smallest base index of each coset, ascending.
    pub reps: Vec<u64>,
    /// Base index to coset index.
    pub projection: Vec<u32>,
}

fn overflow(order: u128) -> Error {
    Error::OrderOverflow {
        order,
        cap: u64::MAX,
    }
}

fn checked_order(order: u128) -> Result<u64> {
    u64::try_from(order).map_err(|_| overflow(order))
}

pub(crate) fn saturating_pow(base: u64, exp: u64) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
    }
    acc
}

#[inline]
fn decode_uniform(mut index: u64, radix: u64, len: usize) -> Digits {
    let mut out: Digits = SmallVec::from_elem(0, len);
    for slot in out.iter_mut().rev() {
        *slot = index % radix;
        index /= radix;
    }
    out
}

#[inline]
fn encode_uniform(digits: &[u64], radix: u64) -> u64 {
    digits.iter().fold(0, |acc, &d| acc * radix + d)
}

impl Ring {
    fn build(kind: RingKind, order: u64, name: String, zero: u64, one: u64, commutative: bool) -> Ring {
        let mut inner = RingInner {
            kind,
            order,
            name,
            zero,
            one,
            commutative,
            tables: None,
            idempotents: OnceLock::new(),
            nil_memo: OnceLock::new(),
        };
        if order <= TABLE_LIMIT {
            let n = order as usize;
            let mut add = vec![0u16; n * n];
            let mut mul = vec![0u16; n * n];
            let mut neg = vec![0u16; n];
            for a in 0..order {
                neg[a as usize] = inner.raw_neg(a) as u16;
                for b in 0..order {
                    let cell = a as usize * n + b as usize;
                    add[cell] = inner.raw_add(a, b) as u16;
                    mul[cell] = inner.raw_mul(a, b) as u16;
                }
            }
            inner.tables = Some(Tables { add, mul, neg });
        }
        Ring(Arc::new(inner))
    }

    /// `Z/m`, m ≥ 1.
    pub fn integers_mod(modulus: u64) -> Result<Ring> {
        if modulus == 0 {
            return Err(Error::Precondition("Z/m needs m >= 1".into()));
        }
        let one = 1 % modulus;
        Ok(Ring::build(
            RingKind::IntegersMod { modulus },
            modulus,
            format!("Z/{modulus}"),
            0,
            one,
            true,
        ))
    }

    pub fn galois_field(q: u64) -> Result<Ring> {
        let field = GaloisField::new(q)?;
        Ok(Ring::build(
            RingKind::GaloisField(field),
            q,
            format!("GF({q})"),
            0,
            1,
            true,
        ))
    }

    /// Direct product; the leftmost factor is the most significant digit.
    pub fn product(factors: Vec<Ring>) -> Result<Ring> {
        if factors.is_empty() {
            return Err(Error::Precondition("product of no rings".into()));
        }
        let order = factors
            .iter()
            .fold(1u128, |acc, f| acc.saturating_mul(f.order() as u128));
        let order = checked_order(order)?;
        let name = factors
            .iter()
            .map(|f| match f.kind() {
                RingKind::Product(_) => format!("({})", f.name()),
                _ => f.name().to_string(),
            })
            .collect::<Vec<_>>()
            .join(" x ");
        let zero = factors.iter().fold(0, |acc, f| acc * f.order() + f.zero());
        let one = factors.iter().fold(0, |acc, f| acc * f.order() + f.one());
        let commutative = factors.iter().all(Ring::is_commutative);
        Ok(Ring::build(
            RingKind::Product(factors),
            order,
            name,
            zero,
            one,
            commutative,
        ))
    }

    /// `K ⊕ K^g` with `(a, v)(b, w) = (ab, aw + vb)`: the ring
    /// `K[x_1..x_g]/(x_i x_j)`.
    pub fn trivial_extension(base: Ring, generators: usize) -> Result<Ring> {
        let order = checked_order(saturating_pow(base.order(), generators as u64 + 1))?;
        let q = base.order();
        let pad = q.pow(generators as u32);
        let zero = base.zero() * pad + encode_uniform(&vec![base.zero(); generators], q);
        let one = base.one() * pad + encode_uniform(&vec![base.zero(); generators], q);
        let name = format!("triv({},{})", base.name(), generators);
        let commutative = base.is_commutative();
        Ok(Ring::build(
            RingKind::TrivialExtension { base, generators },
            order,
            name,
            zero,
            one,
            commutative,
        ))
    }

    /// `M_n(R)`. The descriptor needs `|R|^(n^2)` to fit in a `u64`; use
    /// [`Matrix`] directly for larger matrix algebras.
    pub fn matrix_ring(base: Ring, n: usize) -> Result<Ring> {
        if n == 0 {
            return Err(Error::Precondition("matrix dimension must be >= 1".into()));
        }
        let order = checked_order(saturating_pow(base.order(), (n * n) as u64))?;
        let q = base.order();
        let mut zero = vec![base.zero(); n * n];
        let zero_index = encode_uniform(&zero, q);
        for i in 0..n {
            zero[i * n + i] = base.one();
        }
        let one_index = encode_uniform(&zero, q);
        let name = format!("M{}({})", n, base.name());
        let commutative = n == 1 && base.is_commutative() || base.order() == 1;
        Ok(Ring::build(
            RingKind::MatrixRing { base, n },
            order,
            name,
            zero_index,
            one_index,
            commutative,
        ))
    }

    /// Quotient by a two-sided ideal given as its sorted element set.
    /// The caller guarantees the set is an ideal.
    pub(crate) fn quotient_by(base: &Ring, ideal: &[u64], label: &str) -> Result<Ring> {
        let order = base.order();
        let mut projection = vec![u32::MAX; order as usize];
        let mut reps = Vec::new();
        for x in 0..order {
            if projection[x as usize] != u32::MAX {
                continue;
            }
            let coset = reps.len() as u32;
            reps.push(x);
            for &i in ideal {
                projection[base.add(x, i) as usize] = coset;
            }
        }
        let zero = projection[base.zero() as usize] as u64;
        let one = projection[base.one() as usize] as u64;
        let q_order = reps.len() as u64;
        let name = format!("{}/{}", base.bracketed_name(), label);
        let data = QuotientData {
            base: base.clone(),
            reps,
            projection,
        };
        let mut ring = Ring::build(RingKind::Quotient(data), q_order, name, zero, one, false);
        let commutative = base.is_commutative()
            || (q_order <= TABLE_LIMIT
                && (0..q_order).all(|a| (0..q_order).all(|b| ring.mul(a, b) == ring.mul(b, a))));
        Arc::get_mut(&mut ring.0).expect("fresh ring").commutative = commutative;
        Ok(ring)
    }

    /// A ring given by explicit operation tables over `0..order`. No axiom is
    /// checked here; see [`ring_axioms_check`].
    pub fn from_tables(
        label: &str,
        add: Vec<Vec<u64>>,
        mul: Vec<Vec<u64>>,
        zero: u64,
        one: u64,
    ) -> Result<Ring> {
        let order = add.len() as u64;
        if order == 0 || order > TABLE_LIMIT {
            return Err(Error::Precondition(format!(
                "table rings need 1..={TABLE_LIMIT} elements"
            )));
        }
        let square = |t: &Vec<Vec<u64>>| {
            t.len() as u64 == order && t.iter().all(|row| row.len() as u64 == order && row.iter().all(|&x| x < order))
        };
        if !square(&add) || !square(&mul) || zero >= order || one >= order {
            return Err(Error::Precondition("malformed operation table".into()));
        }
        let n = order as usize;
        let flat = |t: &Vec<Vec<u64>>| t.iter().flatten().map(|&x| x as u16).collect::<Vec<_>>();
        let neg = (0..n)
            .map(|a| (0..n).find(|&b| add[a][b] == zero).unwrap_or(zero as usize) as u16)
            .collect();
        let commutative = (0..n).all(|a| (0..n).all(|b| mul[a][b] == mul[b][a]));
        let tables = Tables {
            add: flat(&add),
            mul: flat(&mul),
            neg,
        };
        Ok(Ring(Arc::new(RingInner {
            kind: RingKind::Table {
                label: label.to_string(),
            },
            order,
            name: label.to_string(),
            zero,
            one,
            commutative,
            tables: Some(tables),
            idempotents: OnceLock::new(),
            nil_memo: OnceLock::new(),
        })))
    }

    pub fn kind(&self) -> &RingKind {
        &self.0.kind
    }

    pub fn order(&self) -> u64 {
        self.0.order
    }

    /// Canonical spec-like name, e.g. `M2(Z/2) x Z/3`.
    pub fn name(&self) -> &str {
        &self.0.name
    }

    fn bracketed_name(&self) -> String {
        match self.kind() {
            RingKind::Product(_) | RingKind::Quotient(_) => format!("({})", self.name()),
            _ => self.name().to_string(),
        }
    }

    pub fn zero(&self) -> u64 {
        self.0.zero
    }

    pub fn one(&self) -> u64 {
        self.0.one
    }

    /// Structurally known to be commutative. Exact for every built-in
    /// constructor and for table rings and small quotients.
    pub fn is_commutative(&self) -> bool {
        self.0.commutative
    }

    pub fn has_tables(&self) -> bool {
        self.0.tables.is_some()
    }

    /// Two descriptors denote the same ring.
    pub fn same(&self, other: &Ring) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.order() == other.order() && self.name() == other.name())
    }

    pub fn elements(&self) -> std::ops::Range<u64> {
        0..self.order()
    }

    pub fn element(&self, index: u64) -> Result<Element> {
        Element::new(self, index)
    }

    /// Base ring of a matrix-ring descriptor.
    pub fn matrix_base(&self) -> Option<(&Ring, usize)> {
        match self.kind() {
            RingKind::MatrixRing { base, n } => Some((base, *n)),
            _ => None,
        }
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        match &self.0.tables {
            Some(t) => t.add[(a * self.0.order + b) as usize] as u64,
            None => self.0.raw_add(a, b),
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        match &self.0.tables {
            Some(t) => t.mul[(a * self.0.order + b) as usize] as u64,
            None => self.0.raw_mul(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        match &self.0.tables {
            Some(t) => t.neg[a as usize] as u64,
            None => self.0.raw_neg(a),
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    pub fn pow(&self, a: u64, mut exp: u64) -> u64 {
        let mut acc = self.one();
        let mut base = a;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// `k · 1`.
    pub fn from_int(&self, k: u64) -> u64 {
        let mut acc = self.zero();
        for _ in 0..k {
            acc = self.add(acc, self.one());
        }
        acc
    }

    /// Index of the scalar matrix `r · I_n` in a matrix-ring descriptor.
    pub fn scalar_matrix(&self, r: u64) -> Option<u64> {
        let (base, n) = self.matrix_base()?;
        let mut entries = vec![base.zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = r;
        }
        Some(encode_uniform(&entries, base.order()))
    }

    /// Component digits of an element of a product, trivial extension or
    /// matrix ring.
    pub fn components(&self, index: u64) -> Vec<u64> {
        self.0.components(index).to_vec()
    }

    pub fn from_components(&self, digits: &[u64]) -> u64 {
        match self.kind() {
            RingKind::Product(factors) => factors
                .iter()
                .zip(digits)
                .fold(0, |acc, (f, &d)| acc * f.order() + d),
            RingKind::TrivialExtension { base, .. } | RingKind::MatrixRing { base, .. } => {
                encode_uniform(digits, base.order())
            }
            _ => digits[0],
        }
    }

    pub(crate) fn idempotent_cache(&self) -> &OnceLock<Arc<Vec<u64>>> {
        &self.0.idempotents
    }

    /// Lazily allocated per-element nilpotency memo: 0 unknown, 1 nil, 2 not.
    pub(crate) fn nil_memo(&self) -> &[AtomicU8] {
        self.0
            .nil_memo
            .get_or_init(|| (0..self.order()).map(|_| AtomicU8::new(0)).collect())
    }

    pub(crate) fn memo_get(memo: &[AtomicU8], index: u64) -> u8 {
        memo[index as usize].load(Ordering::Relaxed)
    }

    pub(crate) fn memo_set(memo: &[AtomicU8], index: u64, value: u8) {
        memo[index as usize].store(value, Ordering::Relaxed)
    }
}

impl RingInner {
    fn components(&self, index: u64) -> Digits {
        match &self.kind {
            RingKind::Product(factors) => {
                let mut out: Digits = SmallVec::from_elem(0, factors.len());
                let mut rest = index;
                for (slot, f) in out.iter_mut().zip(factors).rev() {
                    *slot = rest % f.order();
                    rest /= f.order();
                }
                out
            }
            RingKind::TrivialExtension { base, generators } => {
                decode_uniform(index, base.order(), generators + 1)
            }
            RingKind::MatrixRing { base, n } => decode_uniform(index, base.order(), n * n),
            _ => SmallVec::from_elem(index, 1),
        }
    }

    fn raw_add(&self, a: u64, b: u64) -> u64 {
        match &self.kind {
            RingKind::IntegersMod { modulus } => ((a as u128 + b as u128) % *modulus as u128) as u64,
            RingKind::GaloisField(f) => f.add(a, b),
            RingKind::Product(factors) => {
                let (x, y) = (self.components(a), self.components(b));
                factors
                    .iter()
                    .zip(x.iter().zip(&y))
                    .fold(0, |acc, (f, (&u, &v))| acc * f.order() + f.add(u, v))
            }
            RingKind::TrivialExtension { base, .. } | RingKind::MatrixRing { base, .. } => {
                let (x, y) = (self.components(a), self.components(b));
                x.iter()
                    .zip(&y)
                    .fold(0, |acc, (&u, &v)| acc * base.order() + base.add(u, v))
            }
            RingKind::Quotient(q) => {
                q.projection[q.base.add(q.reps[a as usize], q.reps[b as usize]) as usize] as u64
            }
            RingKind::Table { .. } => unreachable!("table rings always carry tables"),
        }
    }

    fn raw_neg(&self, a: u64) -> u64 {
        match &self.kind {
            RingKind::IntegersMod { modulus } => (modulus - a % modulus) % modulus,
            RingKind::GaloisField(f) => f.neg(a),
            RingKind::Product(factors) => {
                let x = self.components(a);
                factors
                    .iter()
                    .zip(&x)
                    .fold(0, |acc, (f, &u)| acc * f.order() + f.neg(u))
            }
            RingKind::TrivialExtension { base, .. } | RingKind::MatrixRing { base, .. } => {
                let x = self.components(a);
                x.iter().fold(0, |acc, &u| acc * base.order() + base.neg(u))
            }
            RingKind::Quotient(q) => {
                q.projection[q.base.neg(q.reps[a as usize]) as usize] as u64
            }
            RingKind::Table { .. } => unreachable!("table rings always carry tables"),
        }
    }

    fn raw_mul(&self, a: u64, b: u64) -> u64 {
        match &self.kind {
            RingKind::IntegersMod { modulus } => ((a as u128 * b as u128) % *modulus as u128) as u64,
            RingKind::GaloisField(f) => f.mul(a, b),
            RingKind::Product(factors) => {
                let (x, y) = (self.components(a), self.components(b));
                factors
                    .iter()
                    .zip(x.iter().zip(&y))
                    .fold(0, |acc, (f, (&u, &v))| acc * f.order() + f.mul(u, v))
            }
            RingKind::TrivialExtension { base, .. } => {
                let (x, y) = (self.components(a), self.components(b));
                let (a0, b0) = (x[0], y[0]);
                let mut out: Digits = SmallVec::with_capacity(x.len());
                out.push(base.mul(a0, b0));
                for (&v, &w) in x[1..].iter().zip(&y[1..]) {
                    out.push(base.add(base.mul(a0, w), base.mul(v, b0)));
                }
                encode_uniform(&out, base.order())
            }
            RingKind::MatrixRing { base, n } => {
                let (x, y) = (self.components(a), self.components(b));
                let mut out: Digits = SmallVec::from_elem(base.zero(), n * n);
                matrix::mul_entries(base, *n, &x, &y, &mut out);
                encode_uniform(&out, base.order())
            }
            RingKind::Quotient(q) => {
                q.projection[q.base.mul(q.reps[a as usize], q.reps[b as usize]) as usize] as u64
            }
            RingKind::Table { .. } => unreachable!("table rings always carry tables"),
        }
    }
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring({}, order {})", self.name(), self.order())
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl Eq for Ring {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identities_of_composite_rings() {
        let z6 = Ring::integers_mod(6).unwrap();
        let m2 = Ring::matrix_ring(z6.clone(), 2).unwrap();
        assert_eq!(m2.order(), 1296);
        assert_eq!(m2.components(m2.one()), vec![1, 0, 0, 1]);
        let p = Ring::product(vec![Ring::integers_mod(2).unwrap(), Ring::integers_mod(3).unwrap()]).unwrap();
        assert_eq!(p.components(p.one()), vec![1, 1]);
        assert_eq!(p.one(), 4);
        let t = Ring::trivial_extension(Ring::galois_field(2).unwrap(), 2).unwrap();
        assert_eq!(t.order(), 8);
        assert_eq!(t.one(), 4);
    }

    #[test]
    fn square_zero_generators_in_trivial_extension() {
        let t = Ring::trivial_extension(Ring::galois_field(3).unwrap(), 2).unwrap();
        let x = t.from_components(&[0, 1, 0]);
        let y = t.from_components(&[0, 0, 1]);
        assert_eq!(t.mul(x, x), t.zero());
        assert_eq!(t.mul(x, y), t.zero());
        let a = t.from_components(&[2, 1, 2]);
        let b = t.from_components(&[2, 0, 1]);
        // (2 + x + 2y)(2 + y) = 4 + 2x + (2 + 4) y = 1 + 2x + 0y
        assert_eq!(t.components(t.mul(a, b)), vec![1, 2, 0]);
    }

    #[test]
    fn table_and_rule_arithmetic_agree() {
        // M2(Z/3) has 81 elements: tables are built; recompute by rule.
        let m = Ring::matrix_ring(Ring::integers_mod(3).unwrap(), 2).unwrap();
        assert!(m.has_tables());
        for a in (0..81).step_by(7) {
            for b in (0..81).step_by(5) {
                assert_eq!(m.mul(a, b), m.0.raw_mul(a, b));
                assert_eq!(m.add(a, b), m.0.raw_add(a, b));
            }
        }
    }

    #[test]
    fn huge_matrix_descriptors_overflow() {
        let base = Ring::integers_mod(1000).unwrap();
        assert!(matches!(Ring::matrix_ring(base, 3), Err(Error::OrderOverflow { .. })));
    }
}
