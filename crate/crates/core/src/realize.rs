//! Realizing a colored DAG by normal subgroups of a free group, and moving a
//! realization into a finitely presented group along a free subgroup.
//!
//! The construction is inductive. Peel off a maximal vertex `w`, realize the
//! rest in `F_{2n-2}`, then adjoin two fresh generators `y = x_{2n-1}`,
//! `z = x_{2n}`:
//!
//! * a vertex `u` not below `w` also kills `y` and `z`, so its quotient is unchanged;
//! * a vertex `u < w` keeps its relators, so its quotient gains a free factor `<y, z>`;
//! * `w` kills every old generator, plus `y` (quotient `Z`) when `c(w) = 0`, or the
//!   lamplighter relators `[y, z^-i y z^i]` (quotient `Z wr Z`) when `c(w) = 1`.
//!
//! Unrolled, vertex number `k` in build order owns the generator pair
//! `x_{2k-1}, x_{2k}`, and the ambient rank is always `2|V|`.

use alloc::string::String;
use alloc::vec::Vec;
use alloc::{format, vec};
use core::fmt;

use thiserror::Error;

use crate::dag::{Color, ColoredDag, DagError};
use crate::quotient::{CommutatorScheme, GroupExpr, Image, LeafGen, MarkedQuotient, QuotientError, RelatorSet};
use crate::word::{Hom, Word, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RealizeError {
    #[error("invalid dag: {0}")]
    Dag(#[from] DagError),
    #[error(transparent)]
    Quotient(#[from] QuotientError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("relator set carries a scheme; no finite core within this construction")]
    SchemePresent,
    #[error("embedding supplies {got} basis words, realization needs {needed}")]
    NotEnoughBasisWords { got: usize, needed: usize },
    #[error("embedding has no basis words")]
    EmptyBasis,
    #[error("realization has {quotients} quotients for {vertices} vertices")]
    AssignmentSize { quotients: usize, vertices: usize },
    #[error("quotient of `{vertex}` has rank {rank}, ambient rank is {ambient}")]
    QuotientRank { vertex: String, rank: u32, ambient: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Realization {
    dag: ColoredDag,
    ambient_rank: u32,
    quotients: Vec<MarkedQuotient>,
}

impl Realization {
    /// Reassembles a realization, e.g. one loaded from disk. The DAG is
    /// validated and replaced by its transitive closure.
    pub fn from_parts(dag: ColoredDag, ambient_rank: u32, quotients: Vec<MarkedQuotient>) -> Result<Self, RealizeError> {
        dag.validate()?;
        if quotients.len() != dag.len() {
            return Err(RealizeError::AssignmentSize { quotients: quotients.len(), vertices: dag.len() });
        }
        for (v, q) in quotients.iter().enumerate() {
            if q.rank() != ambient_rank {
                return Err(RealizeError::QuotientRank { vertex: dag.id(v).into(), rank: q.rank(), ambient: ambient_rank });
            }
        }
        Ok(Realization { dag: dag.transitive_closure(), ambient_rank, quotients })
    }

    pub fn dag(&self) -> &ColoredDag {
        &self.dag
    }

    pub fn ambient_rank(&self) -> u32 {
        self.ambient_rank
    }

    pub fn quotient(&self, v: usize) -> &MarkedQuotient {
        &self.quotients[v]
    }

    pub fn quotients(&self) -> &[MarkedQuotient] {
        &self.quotients
    }

    /// Direct access for building deliberately broken realizations in tests and demos.
    pub fn quotient_mut(&mut self, v: usize) -> &mut MarkedQuotient {
        &mut self.quotients[v]
    }

    /// Swaps in another DAG on the same vertices (no re-validation of the assignment).
    pub fn with_dag(&self, dag: ColoredDag) -> Realization {
        assert_eq!(dag.len(), self.dag.len());
        Realization { dag, ambient_rank: self.ambient_rank, quotients: self.quotients.clone() }
    }
}

/// Order in which vertices are added: the reverse of repeatedly removing the
/// maximal vertex with the largest index.
pub fn build_order(dag: &ColoredDag) -> Result<Vec<usize>, DagError> {
    dag.validate()?;
    let mut remaining: Vec<usize> = (0..dag.len()).collect();
    let mut current = dag.clone();
    let mut removed = Vec::with_capacity(dag.len());
    while !current.is_empty() {
        let maximal = current.maximal_vertices()?;
        let pick = *maximal.last().expect("acyclic and nonempty");
        removed.push(remaining.remove(pick));
        current = current.remove_vertex(pick);
    }
    removed.reverse();
    Ok(removed)
}

pub fn realize(dag: &ColoredDag) -> Result<Realization, RealizeError> {
    let order = build_order(dag)?;
    let reach = dag.reachability();
    let ambient = 2 * dag.len() as u32;

    struct Partial {
        relators: RelatorSet,
        parts: Vec<GroupExpr>,
        marking: Vec<Image>,
    }
    let mut built: Vec<Option<Partial>> = (0..dag.len()).map(|_| None).collect();

    for (step, &w) in order.iter().enumerate() {
        let rank = 2 * (step as u32 + 1);
        let (y, z) = (rank - 1, rank);
        let gen = |g| Word::generator(rank, g).expect("in range");

        for (u, slot) in built.iter_mut().enumerate() {
            let Some(p) = slot.as_mut() else { continue };
            p.relators = p.relators.promote(rank)?;
            if reach[u][w] {
                let leaf = p.parts.len();
                p.parts.push(GroupExpr::FreeOfRank(2));
                p.marking.push(Image::Leaf { leaf, gen: LeafGen::Free(1) });
                p.marking.push(Image::Leaf { leaf, gen: LeafGen::Free(2) });
            } else {
                p.relators.push_finite(gen(y))?;
                p.relators.push_finite(gen(z))?;
                p.marking.extend([Image::Identity, Image::Identity]);
            }
        }

        let mut relators = RelatorSet::empty(rank);
        for g in 1..y {
            relators.push_finite(gen(g))?;
        }
        let mut marking = vec![Image::Identity; (rank - 2) as usize];
        let leaf = match dag.color(w) {
            Color::Zero => {
                relators.push_finite(gen(y))?;
                marking.push(Image::Identity);
                marking.push(Image::Leaf { leaf: 0, gen: LeafGen::Cyclic(1) });
                GroupExpr::InfiniteCyclic
            }
            Color::One => {
                relators.push_scheme(CommutatorScheme::new(gen(y), gen(z))?)?;
                marking.push(Image::Leaf { leaf: 0, gen: LeafGen::Lamp });
                marking.push(Image::Leaf { leaf: 0, gen: LeafGen::Shift });
                GroupExpr::Lamplighter
            }
        };
        built[w] = Some(Partial { relators, parts: vec![leaf], marking });
    }

    let quotients = built
        .into_iter()
        .map(|p| {
            let p = p.expect("every vertex is built");
            debug_assert_eq!(p.relators.rank(), ambient);
            Ok(MarkedQuotient::new(p.relators, GroupExpr::free_product(p.parts), p.marking)?)
        })
        .collect::<Result<Vec<_>, RealizeError>>()?;
    Ok(Realization { dag: dag.transitive_closure(), ambient_rank: ambient, quotients })
}

/// Finite relators generating the same normal subgroup. In this construction
/// a scheme-free relator set is already finite, and a scheme marks the
/// vertices whose quotient is not finitely presented.
pub fn finite_core(r: &RelatorSet) -> Result<Vec<Word>, RealizeError> {
    if !r.is_scheme_free() {
        return Err(RealizeError::SchemePresent);
    }
    Ok(r.finite().to_vec())
}

/// A finite presentation `<X | S>` of a group `G` together with words over
/// `X` whose images are assumed to freely generate a CEP subgroup of `G`.
/// The CEP assumption is recorded, not checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CepEmbedding {
    pub alphabet_rank: u32,
    pub relators: Vec<Word>,
    pub basis_words: Vec<Word>,
    pub provenance: String,
}

impl CepEmbedding {
    /// `X` equal to the ambient generators, `S` empty.
    pub fn identity(rank: u32) -> Self {
        CepEmbedding {
            alphabet_rank: rank,
            relators: Vec::new(),
            basis_words: (1..=rank).map(|g| Word::generator(rank, g).unwrap()).collect(),
            provenance: "identity embedding".into(),
        }
    }
}

pub const CONDITIONAL_ON_CEP: &str = "valid conditional on the supplied basis words freely generating a CEP subgroup of the ambient group";

/// `<X | S, R_v>` for one vertex after transfer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub vertex: String,
    pub alphabet_rank: u32,
    pub relators: Vec<Word>,
    pub schemes: Vec<CommutatorScheme>,
    /// `c(v) = 0`; agrees with `schemes.is_empty()`.
    pub finitely_presented: bool,
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens = match self.alphabet_rank {
            0 => String::new(),
            1 => String::from("x1"),
            k => format!("x1..x{k}"),
        };
        let mut parts: Vec<String> = self.relators.iter().map(|w| format!("{w}")).collect();
        parts.extend(self.schemes.iter().map(|s| format!("scheme({}, {})", s.a(), s.t())));
        write!(f, "⟨ {gens} | {} ⟩", parts.join(", "))
    }
}

/// Rewrites every vertex's relators through `x_i -> basis_words[i]` and adds `S`.
pub fn cep_transfer(r: &Realization, e: &CepEmbedding) -> Result<Vec<Presentation>, RealizeError> {
    if e.basis_words.is_empty() {
        return Err(RealizeError::EmptyBasis);
    }
    let needed = r.ambient_rank as usize;
    if e.basis_words.len() < needed {
        return Err(RealizeError::NotEnoughBasisWords { got: e.basis_words.len(), needed });
    }
    for w in e.relators.iter().chain(&e.basis_words) {
        if w.rank() != e.alphabet_rank {
            return Err(WordError::RankMismatch { left: w.rank(), right: e.alphabet_rank }.into());
        }
    }
    let hom = Hom::new(r.ambient_rank, e.alphabet_rank, e.basis_words[..needed].to_vec())?;

    let mut out = Vec::with_capacity(r.dag.len());
    for (v, q) in r.quotients.iter().enumerate() {
        let mut relators: Vec<Word> = e.relators.iter().filter(|w| !w.is_identity()).cloned().collect();
        for w in q.relators().finite() {
            let img = hom.apply(w)?;
            if !img.is_identity() {
                relators.push(img);
            }
        }
        let schemes = q
            .relators()
            .schemes()
            .iter()
            .map(|s| Ok(CommutatorScheme::new(hom.apply(s.a())?, hom.apply(s.t())?)?))
            .collect::<Result<Vec<_>, RealizeError>>()?;
        out.push(Presentation {
            vertex: r.dag.id(v).into(),
            alphabet_rank: e.alphabet_rank,
            finitely_presented: schemes.is_empty(),
            relators,
            schemes,
        });
    }
    Ok(out)
}
