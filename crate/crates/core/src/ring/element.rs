use std::fmt;

use super::Ring;
use crate::error::{Error, Result};

/// A member of a specific ring, held by canonical index.
#[derive(Clone, PartialEq, Eq)]
pub struct Element {
    ring: Ring,
    index: u64,
}

impl Element {
    pub fn new(ring: &Ring, index: u64) -> Result<Element> {
        if index >= ring.order() {
            return Err(Error::IndexOutOfRange {
                index,
                order: ring.order(),
            });
        }
        Ok(Element {
            ring: ring.clone(),
            index,
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    fn check(&self, other: &Element) -> Result<()> {
        if self.ring.same(&other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch {
                left: self.ring.name().to_string(),
                right: other.ring.name().to_string(),
            })
        }
    }

    fn with(&self, index: u64) -> Element {
        Element {
            ring: self.ring.clone(),
            index,
        }
    }

    pub fn try_add(&self, other: &Element) -> Result<Element> {
        self.check(other)?;
        Ok(self.with(self.ring.add(self.index, other.index)))
    }

    pub fn try_sub(&self, other: &Element) -> Result<Element> {
        self.check(other)?;
        Ok(self.with(self.ring.sub(self.index, other.index)))
    }

    pub fn try_mul(&self, other: &Element) -> Result<Element> {
        self.check(other)?;
        Ok(self.with(self.ring.mul(self.index, other.index)))
    }

    pub fn neg(&self) -> Element {
        self.with(self.ring.neg(self.index))
    }

    pub fn pow(&self, exp: u64) -> Element {
        self.with(self.ring.pow(self.index, exp))
    }

    pub fn is_zero(&self) -> bool {
        self.index == self.ring.zero()
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.ring.name(), self.index)
    }
}
