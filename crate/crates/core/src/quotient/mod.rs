//! Relator sets and marked quotients of free groups with a decidable word problem.
//!
//! A [`MarkedQuotient`] pairs a relator set over `F_n` with an explicit model
//! of the quotient group: a free product of infinite cyclic groups, free
//! groups and copies of the lamplighter group `Z wr Z`, plus the image of
//! each ambient generator. Words are evaluated into free-product normal form,
//! so equality of images is structural equality of [`NormalForm`] values.

mod lamplighter;
mod snf;

use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

pub use lamplighter::LampElem;
pub use snf::{abelianization, smith_normal_form, AbelianInvariants, IntMatrix, Smith};

use crate::word::{Letter, Word, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuotientError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("relator must be nontrivial")]
    TrivialRelator,
    #[error("scheme words must be nontrivial")]
    TrivialScheme,
    #[error("scheme index must be at least 1, got {0}")]
    SchemeIndex(i64),
    #[error("marking covers {got} generators, ambient rank is {rank}")]
    MarkingLength { got: usize, rank: u32 },
    #[error("marking of x{gen} does not fit leaf {leaf}")]
    MarkingLeaf { gen: u32, leaf: usize },
}

/// The family `[a, t^-i a t^i]`, `i >= 1`. With `a = s`, `t = t` this is the
/// standard relator family of `Z wr Z` on its two generators.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CommutatorScheme {
    a: Word,
    t: Word,
}

impl CommutatorScheme {
    pub fn new(a: Word, t: Word) -> Result<Self, QuotientError> {
        if a.rank() != t.rank() {
            return Err(WordError::RankMismatch { left: a.rank(), right: t.rank() }.into());
        }
        if a.is_identity() || t.is_identity() {
            return Err(QuotientError::TrivialScheme);
        }
        Ok(CommutatorScheme { a, t })
    }

    pub fn a(&self) -> &Word {
        &self.a
    }

    pub fn t(&self) -> &Word {
        &self.t
    }

    pub fn rank(&self) -> u32 {
        self.a.rank()
    }

    /// `[a, t^-i a t^i] = a^-1 (t^-i a^-1 t^i) a (t^-i a t^i)`.
    pub fn member(&self, i: i64) -> Result<Word, QuotientError> {
        if i < 1 {
            return Err(QuotientError::SchemeIndex(i));
        }
        let conj = self.a.conjugate(&self.t.pow(i))?;
        Ok(self.a.commutator(&conj)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelatorSet {
    rank: u32,
    finite: Vec<Word>,
    schemes: Vec<CommutatorScheme>,
}

impl RelatorSet {
    pub fn empty(rank: u32) -> Self {
        RelatorSet { rank, finite: Vec::new(), schemes: Vec::new() }
    }

    pub fn new(rank: u32, finite: Vec<Word>, schemes: Vec<CommutatorScheme>) -> Result<Self, QuotientError> {
        for w in &finite {
            if w.rank() != rank {
                return Err(WordError::RankMismatch { left: w.rank(), right: rank }.into());
            }
            if w.is_identity() {
                return Err(QuotientError::TrivialRelator);
            }
        }
        for s in &schemes {
            if s.rank() != rank {
                return Err(WordError::RankMismatch { left: s.rank(), right: rank }.into());
            }
        }
        Ok(RelatorSet { rank, finite, schemes })
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn finite(&self) -> &[Word] {
        &self.finite
    }

    pub fn schemes(&self) -> &[CommutatorScheme] {
        &self.schemes
    }

    pub fn is_scheme_free(&self) -> bool {
        self.schemes.is_empty()
    }

    /// Same letters read in `F_rank` for a larger rank.
    pub fn promote(&self, rank: u32) -> Result<RelatorSet, QuotientError> {
        let finite = self.finite.iter().map(|w| w.promote(rank)).collect::<Result<_, _>>()?;
        let schemes = self
            .schemes
            .iter()
            .map(|s| Ok(CommutatorScheme { a: s.a.promote(rank)?, t: s.t.promote(rank)? }))
            .collect::<Result<_, WordError>>()?;
        Ok(RelatorSet { rank, finite, schemes })
    }

    pub fn push_finite(&mut self, w: Word) -> Result<(), QuotientError> {
        if w.rank() != self.rank {
            return Err(WordError::RankMismatch { left: w.rank(), right: self.rank }.into());
        }
        if w.is_identity() {
            return Err(QuotientError::TrivialRelator);
        }
        self.finite.push(w);
        Ok(())
    }

    pub fn push_scheme(&mut self, s: CommutatorScheme) -> Result<(), QuotientError> {
        if s.rank() != self.rank {
            return Err(WordError::RankMismatch { left: s.rank(), right: self.rank }.into());
        }
        self.schemes.push(s);
        Ok(())
    }

    pub fn remove_finite(&mut self, i: usize) -> Word {
        self.finite.remove(i)
    }
}

/// Structural description of a quotient as a free product of leaves.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GroupExpr {
    Trivial,
    InfiniteCyclic,
    FreeOfRank(u32),
    Lamplighter,
    FreeProduct(Vec<GroupExpr>),
}

/// A leaf of a [`GroupExpr`], the factors of the free product.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LeafKind {
    InfiniteCyclic,
    FreeOfRank(u32),
    Lamplighter,
}

impl GroupExpr {
    /// Flattened free product with trivial factors dropped.
    pub fn free_product(parts: Vec<GroupExpr>) -> GroupExpr {
        let mut flat = Vec::new();
        for p in parts {
            match p {
                GroupExpr::Trivial => {}
                GroupExpr::FreeProduct(children) => match GroupExpr::free_product(children) {
                    GroupExpr::FreeProduct(inner) => flat.extend(inner),
                    GroupExpr::Trivial => {}
                    other => flat.push(other),
                },
                other => flat.push(other),
            }
        }
        match flat.len() {
            0 => GroupExpr::Trivial,
            1 => flat.pop().unwrap(),
            _ => GroupExpr::FreeProduct(flat),
        }
    }

    /// Leaves in left-to-right order; a leaf's position is its id in markings and normal forms.
    pub fn leaves(&self) -> Vec<LeafKind> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<LeafKind>) {
        match self {
            GroupExpr::Trivial => {}
            GroupExpr::InfiniteCyclic => out.push(LeafKind::InfiniteCyclic),
            GroupExpr::FreeOfRank(r) => out.push(LeafKind::FreeOfRank(*r)),
            GroupExpr::Lamplighter => out.push(LeafKind::Lamplighter),
            GroupExpr::FreeProduct(children) => children.iter().for_each(|c| c.collect_leaves(out)),
        }
    }

    pub fn has_lamplighter(&self) -> bool {
        self.leaves().contains(&LeafKind::Lamplighter)
    }

    /// Abelianization read off the structure: each leaf's abelianization, summed.
    pub fn predicted_abelianization(&self) -> AbelianInvariants {
        let free_rank = self
            .leaves()
            .iter()
            .map(|l| match l {
                LeafKind::InfiniteCyclic => 1,
                LeafKind::FreeOfRank(r) => *r,
                LeafKind::Lamplighter => 2,
            })
            .sum();
        AbelianInvariants::free(free_rank)
    }
}

impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupExpr::Trivial => f.write_str("1"),
            GroupExpr::InfiniteCyclic => f.write_str("Z"),
            GroupExpr::FreeOfRank(r) => write!(f, "F{r}"),
            GroupExpr::Lamplighter => f.write_str("Z wr Z"),
            GroupExpr::FreeProduct(children) => {
                for (i, c) in children.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" * ")?;
                    }
                    match c {
                        GroupExpr::Lamplighter => f.write_str("(Z wr Z)")?,
                        other => write!(f, "{other}")?,
                    }
                }
                Ok(())
            }
        }
    }
}

/// Image of an ambient generator inside one leaf.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LeafGen {
    Cyclic(i64),
    Lamp,
    Shift,
    Free(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Image {
    Identity,
    Leaf { leaf: usize, gen: LeafGen },
}

/// Leaf-local normal form of a nontrivial element.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LeafValue {
    Int(i64),
    Lamp(LampElem),
    Free(Word),
}

impl LeafValue {
    fn is_identity(&self) -> bool {
        match self {
            LeafValue::Int(k) => *k == 0,
            LeafValue::Lamp(e) => e.is_identity(),
            LeafValue::Free(w) => w.is_identity(),
        }
    }

    fn mul(&self, other: &LeafValue) -> LeafValue {
        match (self, other) {
            (LeafValue::Int(a), LeafValue::Int(b)) => LeafValue::Int(a + b),
            (LeafValue::Lamp(a), LeafValue::Lamp(b)) => LeafValue::Lamp(a.mul(b)),
            (LeafValue::Free(a), LeafValue::Free(b)) => LeafValue::Free(a.multiply(b).expect("same leaf, same rank")),
            _ => unreachable!("syllables of one leaf share a kind"),
        }
    }

    fn inverse(&self) -> LeafValue {
        match self {
            LeafValue::Int(a) => LeafValue::Int(-a),
            LeafValue::Lamp(a) => LeafValue::Lamp(a.inverse()),
            LeafValue::Free(a) => LeafValue::Free(a.invert()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Syllable {
    pub leaf: usize,
    pub value: LeafValue,
}

/// Free-product normal form: no identity syllables, adjacent syllables from distinct leaves.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NormalForm {
    syllables: Vec<Syllable>,
}

impl NormalForm {
    pub fn identity() -> Self {
        NormalForm::default()
    }

    /// Checks the normal-form invariants.
    pub fn from_syllables(syllables: Vec<Syllable>) -> Option<Self> {
        let ok = syllables.iter().all(|s| !s.value.is_identity()) && syllables.windows(2).all(|p| p[0].leaf != p[1].leaf);
        ok.then_some(NormalForm { syllables })
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    fn push(&mut self, s: Syllable) {
        if let Some(last) = self.syllables.last_mut() {
            if last.leaf == s.leaf {
                let merged = last.value.mul(&s.value);
                if merged.is_identity() {
                    self.syllables.pop();
                } else {
                    last.value = merged;
                }
                return;
            }
        }
        if !s.value.is_identity() {
            self.syllables.push(s);
        }
    }

    pub fn mul(&self, other: &NormalForm) -> NormalForm {
        let mut out = self.clone();
        for s in &other.syllables {
            out.push(s.clone());
        }
        out
    }

    pub fn inverse(&self) -> NormalForm {
        let syllables = self.syllables.iter().rev().map(|s| Syllable { leaf: s.leaf, value: s.value.inverse() }).collect();
        NormalForm { syllables }
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return f.write_str("1");
        }
        for (i, s) in self.syllables.iter().enumerate() {
            if i > 0 {
                f.write_str(" . ")?;
            }
            match &s.value {
                LeafValue::Int(k) => write!(f, "[{}] z^{k}", s.leaf)?,
                LeafValue::Lamp(e) => {
                    write!(f, "[{}] (shift {}, lamps {{", s.leaf, e.shift)?;
                    for (j, (x, v)) in e.support.iter().enumerate() {
                        if j > 0 {
                            f.write_str(", ")?;
                        }
                        write!(f, "{x}: {v}")?;
                    }
                    f.write_str("})")?;
                }
                LeafValue::Free(w) => write!(f, "[{}] {w}", s.leaf)?,
            }
        }
        Ok(())
    }
}

/// A quotient `F_n / <<R>>` together with a model of it whose word problem is decidable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedQuotient {
    relators: RelatorSet,
    expr: GroupExpr,
    marking: Vec<Image>,
    leaves: Vec<LeafKind>,
}

impl MarkedQuotient {
    /// Checks that the marking covers every generator and fits the leaves.
    /// Relator soundness is a separate check: [`MarkedQuotient::unsound_relators`].
    pub fn new(relators: RelatorSet, expr: GroupExpr, marking: Vec<Image>) -> Result<Self, QuotientError> {
        let rank = relators.rank();
        if marking.len() != rank as usize {
            return Err(QuotientError::MarkingLength { got: marking.len(), rank });
        }
        let leaves = expr.leaves();
        for (i, m) in marking.iter().enumerate() {
            if let Image::Leaf { leaf, gen } = *m {
                let fits = match (leaves.get(leaf), gen) {
                    (Some(LeafKind::InfiniteCyclic), LeafGen::Cyclic(_)) => true,
                    (Some(LeafKind::Lamplighter), LeafGen::Lamp | LeafGen::Shift) => true,
                    (Some(LeafKind::FreeOfRank(r)), LeafGen::Free(g)) => g >= 1 && g <= *r,
                    _ => false,
                };
                if !fits {
                    return Err(QuotientError::MarkingLeaf { gen: i as u32 + 1, leaf });
                }
            }
        }
        Ok(MarkedQuotient { relators, expr, marking, leaves })
    }

    pub fn rank(&self) -> u32 {
        self.relators.rank()
    }

    pub fn relators(&self) -> &RelatorSet {
        &self.relators
    }

    pub fn relators_mut(&mut self) -> &mut RelatorSet {
        &mut self.relators
    }

    pub fn expr(&self) -> &GroupExpr {
        &self.expr
    }

    pub fn marking(&self) -> &[Image] {
        &self.marking
    }

    fn letter_syllable(&self, l: Letter) -> Option<Syllable> {
        let Image::Leaf { leaf, gen } = self.marking[l.gen as usize - 1] else {
            return None;
        };
        let value = match gen {
            LeafGen::Cyclic(k) => LeafValue::Int(k),
            LeafGen::Lamp => LeafValue::Lamp(LampElem::lamp()),
            LeafGen::Shift => LeafValue::Lamp(LampElem::cursor()),
            LeafGen::Free(g) => {
                let LeafKind::FreeOfRank(r) = self.leaves[leaf] else { unreachable!() };
                LeafValue::Free(Word::generator(r, g).expect("checked in new"))
            }
        };
        let value = if l.inverse { value.inverse() } else { value };
        Some(Syllable { leaf, value })
    }

    /// Normal form of the image of `w`.
    pub fn eval(&self, w: &Word) -> Result<NormalForm, QuotientError> {
        if w.rank() != self.rank() {
            return Err(WordError::RankMismatch { left: w.rank(), right: self.rank() }.into());
        }
        let mut nf = NormalForm::identity();
        for &l in w.letters() {
            if let Some(s) = self.letter_syllable(l) {
                nf.push(s);
            }
        }
        Ok(nf)
    }

    pub fn is_trivial(&self, w: &Word) -> Result<bool, QuotientError> {
        Ok(self.eval(w)?.is_identity())
    }

    /// Relators whose image is not the identity: finite ones, then scheme members `i <= bound`.
    pub fn unsound_relators(&self, bound: i64) -> Vec<Word> {
        let mut bad = Vec::new();
        for w in self.relators.finite() {
            if !self.is_trivial(w).unwrap_or(false) {
                bad.push(w.clone());
            }
        }
        for s in self.relators.schemes() {
            for i in 1..=bound {
                let m = s.member(i).expect("i >= 1");
                if !self.is_trivial(&m).unwrap_or(false) {
                    bad.push(m);
                }
            }
        }
        bad
    }
}
