//! Arithmetic in the lamplighter group `Z wr Z`.
//!
//! An element is a pair `(f, a)`: a finitely supported lamp configuration
//! `f: Z -> Z` and a cursor shift `a`. The product is
//! `(f, a)(g, b) = (f + g(. - a), a + b)`. The lamp generator is `s = (delta_0, 0)`
//! and the shift generator is `t = (0, 1)`.

use alloc::collections::BTreeMap;

#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LampElem {
    pub shift: i64,
    /// Nonzero lamp values only.
    pub support: BTreeMap<i64, i64>,
}

impl LampElem {
    pub fn identity() -> Self {
        LampElem::default()
    }

    pub fn lamp() -> Self {
        LampElem { shift: 0, support: BTreeMap::from([(0, 1)]) }
    }

    pub fn cursor() -> Self {
        LampElem { shift: 1, support: BTreeMap::new() }
    }

    pub fn is_identity(&self) -> bool {
        self.shift == 0 && self.support.is_empty()
    }

    pub fn mul(&self, other: &LampElem) -> LampElem {
        let mut support = self.support.clone();
        for (&x, &v) in &other.support {
            let slot = support.entry(x + self.shift).or_insert(0);
            *slot += v;
            if *slot == 0 {
                support.remove(&(x + self.shift));
            }
        }
        LampElem { shift: self.shift + other.shift, support }
    }

    pub fn inverse(&self) -> LampElem {
        let support = self.support.iter().map(|(&x, &v)| (x - self.shift, -v)).collect();
        LampElem { shift: -self.shift, support }
    }

    /// Image of a word over `s = x1`, `t = x2` (letters given as `(gen, inverse)`).
    pub fn eval_letters<I: IntoIterator<Item = (u32, bool)>>(letters: I) -> LampElem {
        letters.into_iter().fold(LampElem::identity(), |acc, (g, inv)| {
            let base = if g == 1 { LampElem::lamp() } else { LampElem::cursor() };
            acc.mul(&if inv { base.inverse() } else { base })
        })
    }
}
