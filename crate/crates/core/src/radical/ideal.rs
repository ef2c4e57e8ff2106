use std::fmt;

use serde::Serialize;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::predicates::require_scan;
use crate::ring::Ring;

/// Additive subgroup grown one generator at a time.
#[derive(Clone)]
pub(crate) struct AdditiveSpan {
    members: Vec<bool>,
    elements: Vec<u64>,
    generators: Vec<u64>,
}

impl AdditiveSpan {
    pub(crate) fn new(ring: &Ring) -> Self {
        let mut members = vec![false; ring.order() as usize];
        members[ring.zero() as usize] = true;
        AdditiveSpan {
            members,
            elements: vec![ring.zero()],
            generators: Vec::new(),
        }
    }

    pub(crate) fn contains(&self, x: u64) -> bool {
        self.members[x as usize]
    }

    pub(crate) fn len(&self) -> usize {
        self.elements.len()
    }

    /// Join `g` to the span: `H + <g>` is the union of the cosets `H + kg`.
    pub(crate) fn insert(&mut self, ring: &Ring, g: u64) -> bool {
        if self.contains(g) {
            return false;
        }
        let old = self.elements.clone();
        let mut step = g;
        while !self.contains(step) {
            for &h in &old {
                let y = ring.add(h, step);
                self.members[y as usize] = true;
                self.elements.push(y);
            }
            step = ring.add(step, g);
        }
        self.generators.push(g);
        true
    }

    fn into_ideal(mut self, ring: &Ring) -> Ideal {
        self.elements.sort_unstable();
        Ideal {
            ring: ring.clone(),
            elements: self.elements,
            members: self.members,
            generators: self.generators,
        }
    }
}

/// Additive generators of the whole ring, greedily from index 0 upwards.
pub(crate) fn additive_generators(ring: &Ring) -> Vec<u64> {
    let mut span = AdditiveSpan::new(ring);
    for x in ring.elements() {
        span.insert(ring, x);
    }
    span.generators
}

/// A two-sided ideal as an explicit, sorted element set.
#[derive(Clone)]
pub struct Ideal {
    ring: Ring,
    elements: Vec<u64>,
    members: Vec<bool>,
    /// Additive generators.
    generators: Vec<u64>,
}

impl Ideal {
    pub fn zero(ring: &Ring) -> Ideal {
        AdditiveSpan::new(ring).into_ideal(ring)
    }

    pub fn whole(ring: &Ring) -> Ideal {
        let mut span = AdditiveSpan::new(ring);
        span.insert(ring, ring.one());
        for x in ring.elements() {
            span.insert(ring, x);
        }
        span.into_ideal(ring)
    }

    /// Smallest two-sided ideal containing `xs`.
    pub fn generated_by(ring: &Ring, xs: &[u64], cfg: &Config) -> Result<Ideal> {
        require_scan(ring, cfg, "ideal closure")?;
        if let Some(&bad) = xs.iter().find(|&&x| x >= ring.order()) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                order: ring.order(),
            });
        }
        Ok(Ideal::close(ring, AdditiveSpan::new(ring), xs, &additive_generators(ring)))
    }

    /// The ideal generated by `self` and `x`.
    pub(crate) fn extended(&self, x: u64, ring_gens: &[u64]) -> Ideal {
        let span = AdditiveSpan {
            members: self.members.clone(),
            elements: self.elements.clone(),
            generators: self.generators.clone(),
        };
        Ideal::close(&self.ring, span, &[x], ring_gens)
    }

    /// Fixed point: the span is an ideal once `t·g` and `g·t` lie in it for
    /// every additive generator `g` of the span and `t` of the ring.
    fn close(ring: &Ring, mut span: AdditiveSpan, seeds: &[u64], ring_gens: &[u64]) -> Ideal {
        for &x in seeds {
            span.insert(ring, x);
        }
        let mut i = 0;
        while i < span.generators.len() {
            let g = span.generators[i];
            for &t in ring_gens {
                span.insert(ring, ring.mul(t, g));
                span.insert(ring, ring.mul(g, t));
            }
            i += 1;
        }
        span.into_ideal(ring)
    }

    /// Wrap an element set, checking every ideal invariant exhaustively.
    pub fn from_elements(ring: &Ring, elements: &[u64]) -> Result<Ideal> {
        let mut span = AdditiveSpan::new(ring);
        for &x in elements {
            if x >= ring.order() {
                return Err(Error::IndexOutOfRange {
                    index: x,
                    order: ring.order(),
                });
            }
            span.insert(ring, x);
        }
        if span.len() != elements.iter().collect::<std::collections::BTreeSet<_>>().len() {
            return Err(Error::Precondition("element set is not an additive subgroup".into()));
        }
        let ideal = span.into_ideal(ring);
        if !ideal.is_absorbing() {
            return Err(Error::Precondition("element set is not closed under multiplication by the ring".into()));
        }
        Ok(ideal)
    }

    fn is_absorbing(&self) -> bool {
        self.elements.iter().all(|&x| {
            self.ring
                .elements()
                .all(|r| self.contains(self.ring.mul(r, x)) && self.contains(self.ring.mul(x, r)))
        })
    }

    /// Exhaustive re-check of the ideal invariants.
    pub fn verify(&self) -> bool {
        let r = &self.ring;
        self.contains(r.zero())
            && self
                .elements
                .iter()
                .all(|&x| self.contains(r.neg(x)) && self.elements.iter().all(|&y| self.contains(r.add(x, y))))
            && self.is_absorbing()
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, x: u64) -> bool {
        self.members.get(x as usize).copied().unwrap_or(false)
    }

    pub fn is_zero(&self) -> bool {
        self.elements.len() == 1
    }

    /// `I = R`.
    pub fn is_full(&self) -> bool {
        self.elements.len() as u64 == self.ring.order()
    }

    pub fn is_subset(&self, other: &Ideal) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    pub fn intersection(&self, other: &Ideal) -> Ideal {
        let common: Vec<u64> = self.elements.iter().copied().filter(|&x| other.contains(x)).collect();
        let mut span = AdditiveSpan::new(&self.ring);
        for x in common {
            span.insert(&self.ring, x);
        }
        span.into_ideal(&self.ring)
    }

    /// `I·K`: additive span of all products, an ideal again.
    pub fn product(&self, other: &Ideal) -> Ideal {
        let mut span = AdditiveSpan::new(&self.ring);
        for &a in &self.generators {
            for &b in &other.generators {
                span.insert(&self.ring, self.ring.mul(a, b));
            }
        }
        span.into_ideal(&self.ring)
    }
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same(&other.ring) && self.elements == other.elements
    }
}

impl Eq for Ideal {}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal({}: {:?})", self.ring.name(), self.elements)
    }
}

impl Serialize for Ideal {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.elements.serialize(serializer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn span_growth() {
        let z12 = Ring::integers_mod(12).unwrap();
        let mut span = AdditiveSpan::new(&z12);
        assert!(span.insert(&z12, 8));
        assert_eq!(span.len(), 3);
        assert!(span.insert(&z12, 6));
        assert_eq!(span.len(), 6);
        assert!(!span.insert(&z12, 10));
        assert_eq!(additive_generators(&z12), vec![1]);
    }

    #[test]
    fn noncommutative_closure_is_two_sided() {
        let m2 = "M2(Z/2)".parse::<Ring>().unwrap();
        let e11 = 0b1000;
        let ideal = Ideal::generated_by(&m2, &[e11], &Config::default()).unwrap();
        // M2 of a field is simple
        assert!(ideal.is_full());
        assert!(ideal.verify());
    }

    #[test]
    fn element_sets_are_validated() {
        let z6 = Ring::integers_mod(6).unwrap();
        assert!(Ideal::from_elements(&z6, &[0, 3]).is_ok());
        assert!(Ideal::from_elements(&z6, &[0, 2]).is_err());
        let m2 = "M2(Z/2)".parse::<Ring>().unwrap();
        // first-row matrices form a right ideal only
        assert!(Ideal::from_elements(&m2, &[0, 4, 8, 12]).is_err());
    }
}
