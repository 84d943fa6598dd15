//! A free group is not CEP in itself along every free subgroup: in `F(a, b)`
//! take `H = <a, b^-1 a b>` and `R = {b^-1 a b}`. Then `<<R>>_H` is a proper
//! subgroup of `H` (it misses `a`), while `H ∩ <<R>>_G = H ∩ <<a>>_G = H`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::quotient::{GroupExpr, Image, LeafGen, MarkedQuotient, RelatorSet};
use crate::stallings::SubgroupGraph;
use crate::word::Word;

/// Every claimed value is recomputed by [`CounterexampleCertificate::check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CounterexampleCertificate {
    /// `a = x1`, `b = x2`.
    pub rank: u32,
    pub h_generators: Vec<Word>,
    pub relator: Word,
    /// `relator = conjugator^-1 · a · conjugator`, so `<<R>>_G = <<a>>_G`.
    pub conjugator: Word,
    /// Stallings membership of each generator of `H`.
    pub membership: Vec<bool>,
    /// Free basis of `H` and the values of `phi: H -> Z` on it.
    pub basis: Vec<Word>,
    pub phi_on_basis: Vec<i64>,
    /// `phi(relator) = 0` kills `<<R>>_H`; `phi(a) = 1` keeps `a` outside it.
    pub phi_of_relator: i64,
    pub phi_of_a: i64,
    /// Normal forms of the generators of `H` in `G / <<a>>_G ≅ Z`.
    pub killed_images: Vec<String>,
}

fn killing_quotient(rank: u32) -> MarkedQuotient {
    let a = Word::generator(rank, 1).expect("rank 2");
    let relators = RelatorSet::new(rank, vec![a], vec![]).expect("nontrivial");
    MarkedQuotient::new(relators, GroupExpr::InfiniteCyclic, vec![Image::Identity, Image::Leaf { leaf: 0, gen: LeafGen::Cyclic(1) }])
        .expect("fits")
}

fn phi(graph: &SubgroupGraph, values: &[i64], w: &Word) -> Option<i64> {
    let coords = graph.coordinates(w)?;
    Some(coords.iter().map(|&(i, inv)| if inv { -values[i] } else { values[i] }).sum())
}

pub fn free_counterexample_demo() -> CounterexampleCertificate {
    let rank = 2;
    let a = Word::generator(rank, 1).expect("rank 2");
    let b = Word::generator(rank, 2).expect("rank 2");
    let relator = a.conjugate(&b).expect("same rank");
    let h_generators = vec![a.clone(), relator.clone()];
    let graph = SubgroupGraph::build(rank, &h_generators).expect("same rank");
    let membership = h_generators.iter().map(|g| graph.contains(g).expect("same rank")).collect();
    let basis = graph.basis();
    let phi_on_basis: Vec<i64> = basis.iter().map(|w| i64::from(*w == a)).collect();
    let quotient = killing_quotient(rank);
    CounterexampleCertificate {
        rank,
        phi_of_relator: phi(&graph, &phi_on_basis, &relator).expect("member"),
        phi_of_a: phi(&graph, &phi_on_basis, &a).expect("member"),
        killed_images: h_generators.iter().map(|g| quotient.eval(g).expect("same rank").to_string()).collect(),
        h_generators,
        relator,
        conjugator: b,
        membership,
        basis,
        phi_on_basis,
    }
}

impl CounterexampleCertificate {
    /// Re-derives every fact; returns the list of disagreements (empty on success).
    pub fn check(&self) -> Vec<String> {
        let mut bad = Vec::new();
        if self.rank != 2 || self.h_generators.iter().chain([&self.relator, &self.conjugator]).any(|w| w.rank() != 2) {
            bad.push("words must live in F(a, b)".to_string());
            return bad;
        }
        let a = Word::generator(2, 1).unwrap();
        if self.h_generators.first() != Some(&a) {
            bad.push("first generator of H must be a".into());
        }
        if !self.h_generators.contains(&self.relator) {
            bad.push("relator must be a generator of H".into());
        }
        if a.conjugate(&self.conjugator).as_ref() != Ok(&self.relator) {
            bad.push(format!("relator {} is not {}^-1 a {}", self.relator, self.conjugator, self.conjugator));
        }

        let graph = SubgroupGraph::build(2, &self.h_generators).unwrap();
        let membership: Vec<bool> = self.h_generators.iter().map(|g| graph.contains(g).unwrap()).collect();
        if membership != self.membership || membership.iter().any(|m| !m) {
            bad.push(format!("membership recomputes to {membership:?}"));
        }
        // the claimed basis must freely generate the same subgroup
        if self.basis.len() != self.phi_on_basis.len() {
            bad.push("one phi value per basis word".into());
            return bad;
        }
        let regenerated = SubgroupGraph::build(2, &self.basis).ok();
        if regenerated.as_ref() != Some(&graph) || self.basis != graph.basis() {
            bad.push("basis does not match the Stallings basis of H".into());
            return bad;
        }
        match (phi(&graph, &self.phi_on_basis, &self.relator), phi(&graph, &self.phi_on_basis, &a)) {
            (Some(r), Some(x)) => {
                if r != self.phi_of_relator || r != 0 {
                    bad.push(format!("phi(relator) recomputes to {r}, must be 0"));
                }
                if x != self.phi_of_a || x == 0 {
                    bad.push(format!("phi(a) recomputes to {x}, must be nonzero"));
                }
            }
            _ => bad.push("relator or a not expressible in the basis".into()),
        }

        let quotient = killing_quotient(2);
        if !quotient.unsound_relators(0).is_empty() {
            bad.push("killing quotient does not kill a".into());
        }
        let images: Vec<String> = self.h_generators.iter().map(|g| quotient.eval(g).unwrap().to_string()).collect();
        if images != self.killed_images || self.h_generators.iter().any(|g| !quotient.is_trivial(g).unwrap()) {
            bad.push(format!("images in G/<<a>> recompute to {images:?}"));
        }
        bad
    }
}

impl fmt::Display for CounterexampleCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |ws: &[Word]| ws.iter().map(|w| format!("{w}")).collect::<Vec<_>>().join(", ");
        writeln!(f, "G = F(a, b) with a = x1, b = x2")?;
        writeln!(f, "H = <{}>, R = {{{}}}", list(&self.h_generators), self.relator)?;
        writeln!(f, "(1) generators of H in H (Stallings): {:?}", self.membership)?;
        writeln!(f, "(2) basis of H: {}; phi on basis: {:?}", list(&self.basis), self.phi_on_basis)?;
        writeln!(f, "    phi(R) = {}, so phi kills <<R>>_H; phi(a) = {}, so a is not in <<R>>_H", self.phi_of_relator, self.phi_of_a)?;
        writeln!(f, "(3) R = {}^-1 a {}, so <<R>>_G = <<a>>_G", self.conjugator, self.conjugator)?;
        writeln!(f, "    generators of H in G/<<a>>_G = Z: {}", self.killed_images.join(", "))?;
        write!(f, "hence <<R>>_H < H = H ∩ <<R>>_G")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn certificate_checks() {
        let c = free_counterexample_demo();
        assert_eq!(c.check(), Vec::<String>::new());
        assert_eq!(c.phi_of_a, 1);
        assert_eq!(c.phi_of_relator, 0);
        assert_eq!(c.killed_images, ["1", "1"]);
        assert_eq!(c.relator.to_string(), "x2^-1 x1 x2");
    }

    #[test]
    fn tampering_is_caught() {
        let c = free_counterexample_demo();
        let mut t = c.clone();
        t.phi_on_basis = vec![1; t.basis.len()];
        assert!(!t.check().is_empty());
        let mut t = c.clone();
        t.phi_of_a = 0;
        assert!(!t.check().is_empty());
        let mut t = c.clone();
        t.conjugator = Word::parse("x1", 2).unwrap();
        assert!(!t.check().is_empty());
        let mut t = c.clone();
        t.membership[1] = false;
        assert!(!t.check().is_empty());
        let mut t = c;
        t.killed_images[0] = "[0] z^1".into();
        assert!(!t.check().is_empty());
    }
}
