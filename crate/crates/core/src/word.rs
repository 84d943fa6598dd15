//! Reduced words in a free group of known rank, and substitution homomorphisms.
//!
//! Generators are 1-indexed: `x1, ..., xn`. The textual form of a word is a
//! whitespace-separated list of atoms `x3` or `x3^-1`; the empty string is the
//! identity.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("generator x{index} out of range for rank {rank}")]
    IndexOutOfRange { index: u32, rank: u32 },
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: u32, right: u32 },
    #[error("cannot parse word atom `{0}`")]
    BadAtom(String),
    #[error("homomorphism needs {expected} images, got {got}")]
    ImageCount { expected: usize, got: usize },
}

/// A generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub gen: u32,
    pub inverse: bool,
}

impl Letter {
    pub const fn new(gen: u32, inverse: bool) -> Self {
        Letter { gen, inverse }
    }

    pub const fn pos(gen: u32) -> Self {
        Letter { gen, inverse: false }
    }

    pub const fn neg(gen: u32) -> Self {
        Letter { gen, inverse: true }
    }

    pub const fn inv(self) -> Self {
        Letter { gen: self.gen, inverse: !self.inverse }
    }

    pub fn cancels(self, other: Letter) -> bool {
        self.gen == other.gen && self.inverse != other.inverse
    }

    /// Signed exponent, `+1` or `-1`.
    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "x{}^-1", self.gen)
        } else {
            write!(f, "x{}", self.gen)
        }
    }
}

/// A freely reduced word in `F_rank`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    rank: u32,
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity(rank: u32) -> Self {
        Word { rank, letters: Vec::new() }
    }

    /// The generator `x_gen` as a one-letter word.
    pub fn generator(rank: u32, gen: u32) -> Result<Self, WordError> {
        Self::reduce([Letter::pos(gen)], rank)
    }

    /// Freely reduces a letter sequence.
    pub fn reduce<I>(raw: I, rank: u32) -> Result<Self, WordError>
    where
        I: IntoIterator<Item = Letter>,
    {
        let mut letters: Vec<Letter> = Vec::new();
        for l in raw {
            if l.gen == 0 || l.gen > rank {
                return Err(WordError::IndexOutOfRange { index: l.gen, rank });
            }
            push_reduced(&mut letters, l);
        }
        Ok(Word { rank, letters })
    }

    /// Builds from `(index, sign)` pairs where sign is `+1` or `-1`.
    pub fn from_signed(raw: &[(u32, i8)], rank: u32) -> Result<Self, WordError> {
        Self::reduce(raw.iter().map(|&(g, s)| Letter::new(g, s < 0)), rank)
    }

    pub fn parse(text: &str, rank: u32) -> Result<Self, WordError> {
        let mut raw = Vec::new();
        for atom in text.split_whitespace() {
            raw.push(parse_atom(atom)?);
        }
        Self::reduce(raw, rank)
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    fn check_rank(&self, other: &Word) -> Result<(), WordError> {
        if self.rank != other.rank {
            return Err(WordError::RankMismatch { left: self.rank, right: other.rank });
        }
        Ok(())
    }

    pub fn multiply(&self, other: &Word) -> Result<Word, WordError> {
        self.check_rank(other)?;
        let mut letters = self.letters.clone();
        for &l in &other.letters {
            push_reduced(&mut letters, l);
        }
        Ok(Word { rank: self.rank, letters })
    }

    pub fn invert(&self) -> Word {
        Word { rank: self.rank, letters: self.letters.iter().rev().map(|l| l.inv()).collect() }
    }

    /// `g^h = h^-1 g h`.
    pub fn conjugate(&self, by: &Word) -> Result<Word, WordError> {
        by.invert().multiply(self)?.multiply(by)
    }

    /// Commutator `[a, b] = a^-1 b^-1 a b`.
    pub fn commutator(&self, other: &Word) -> Result<Word, WordError> {
        self.invert().multiply(&other.invert())?.multiply(self)?.multiply(other)
    }

    /// `self^k` for any integer `k`.
    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.invert() } else { self.clone() };
        let mut out = Word::identity(self.rank);
        for _ in 0..k.unsigned_abs() {
            for &l in &base.letters {
                push_reduced(&mut out.letters, l);
            }
        }
        out
    }

    /// Splits `self = conjugator^-1 core conjugator` with `core` cyclically reduced.
    pub fn cyclically_reduce(&self) -> (Word, Word) {
        let n = self.letters.len();
        let mut k = 0;
        while 2 * k + 1 < n && self.letters[k].cancels(self.letters[n - 1 - k]) {
            k += 1;
        }
        let core = Word { rank: self.rank, letters: self.letters[k..n - k].to_vec() };
        let conjugator = Word { rank: self.rank, letters: self.letters[n - k..].to_vec() };
        (core, conjugator)
    }

    /// Re-reads the same letters in a free group of larger (or equal) rank.
    pub fn promote(&self, rank: u32) -> Result<Word, WordError> {
        if let Some(l) = self.letters.iter().find(|l| l.gen > rank) {
            return Err(WordError::IndexOutOfRange { index: l.gen, rank });
        }
        Ok(Word { rank, letters: self.letters.clone() })
    }

    /// Exponent sum of every generator.
    pub fn exponent_vector(&self) -> Vec<i64> {
        let mut v = alloc::vec![0i64; self.rank as usize];
        for l in &self.letters {
            v[l.gen as usize - 1] += l.sign();
        }
        v
    }
}

fn push_reduced(letters: &mut Vec<Letter>, l: Letter) {
    match letters.last() {
        Some(&last) if last.cancels(l) => {
            letters.pop();
        }
        _ => letters.push(l),
    }
}

fn parse_atom(atom: &str) -> Result<Letter, WordError> {
    let bad = || WordError::BadAtom(atom.into());
    let body = atom.strip_prefix('x').ok_or_else(bad)?;
    let (digits, inverse) = match body.strip_suffix("^-1") {
        Some(d) => (d, true),
        None => (body, false),
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let gen: u32 = digits.parse().map_err(|_| bad())?;
    Ok(Letter::new(gen, inverse))
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// A homomorphism `F_domain -> F_codomain` given by generator images.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hom {
    domain_rank: u32,
    codomain_rank: u32,
    images: Vec<Word>,
}

impl Hom {
    pub fn new(domain_rank: u32, codomain_rank: u32, images: Vec<Word>) -> Result<Self, WordError> {
        if images.len() != domain_rank as usize {
            return Err(WordError::ImageCount { expected: domain_rank as usize, got: images.len() });
        }
        if let Some(w) = images.iter().find(|w| w.rank != codomain_rank) {
            return Err(WordError::RankMismatch { left: w.rank, right: codomain_rank });
        }
        Ok(Hom { domain_rank, codomain_rank, images })
    }

    pub fn identity(rank: u32) -> Self {
        let images = (1..=rank).map(|g| Word { rank, letters: alloc::vec![Letter::pos(g)] }).collect();
        Hom { domain_rank: rank, codomain_rank: rank, images }
    }

    pub fn domain_rank(&self) -> u32 {
        self.domain_rank
    }

    pub fn codomain_rank(&self) -> u32 {
        self.codomain_rank
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn apply(&self, w: &Word) -> Result<Word, WordError> {
        if w.rank != self.domain_rank {
            return Err(WordError::RankMismatch { left: w.rank, right: self.domain_rank });
        }
        let mut out = Word::identity(self.codomain_rank);
        for l in &w.letters {
            let img = &self.images[l.gen as usize - 1];
            if l.inverse {
                for &m in img.letters.iter().rev() {
                    push_reduced(&mut out.letters, m.inv());
                }
            } else {
                for &m in &img.letters {
                    push_reduced(&mut out.letters, m);
                }
            }
        }
        Ok(out)
    }
}
