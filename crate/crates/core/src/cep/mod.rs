//! The congruence extension property on finite groups.
//!
//! `H <= K` is CEP when `<<R>>_H = H ∩ <<R>>_K` for every `R ⊆ H`. Since
//! `<<R>>_H` runs over exactly the normal subgroups of `H` as `R` varies (take
//! `R = N` for a given `N ⊴ H`), and `<<R>>_K = <<<<R>>_H>>_K`, the condition
//! is equivalent to `H ∩ <<N>>_K = N` for every `N ⊴ H`. The checkers below
//! quantify over that finite lattice. The same reduction turns "every `R` with
//! `S ∩ <<R>>_H = ∅`" in the almost-CEP condition into "every `N ⊴ H` with
//! `S ∩ N = ∅`".
//!
//! Groups are multiplication tables with element 0 the identity.

mod bundled;
mod counterexample;
mod perm;

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

pub use bundled::{bundled, BUNDLED};
pub use counterexample::{free_counterexample_demo, CounterexampleCertificate};
pub use perm::{from_permutations, Perm, ORDER_CAP};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("table is not square or has entries out of range")]
    Shape,
    #[error("element 0 is not a two-sided identity")]
    Identity,
    #[error("element {0} has no inverse")]
    Inverse(u32),
    #[error("not associative at ({0}, {1}, {2})")]
    Associativity(u32, u32, u32),
    #[error("{names} names for {order} elements")]
    Names { names: usize, order: usize },
    #[error("cannot parse permutation `{0}`")]
    BadCycle(String),
    #[error("group order exceeds the cap of {0}")]
    TooLarge(usize),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("not a subgroup of the ambient group")]
    NotSubgroup,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    inverses: Vec<u32>,
    names: Option<Vec<String>>,
}

impl FiniteGroup {
    /// Validates the table: closure, identity 0, inverses, associativity.
    pub fn from_table(table: Vec<Vec<u32>>, names: Option<Vec<String>>) -> Result<Self, GroupError> {
        let n = table.len();
        if n == 0 || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x as usize >= n)) {
            return Err(GroupError::Shape);
        }
        if let Some(names) = &names {
            if names.len() != n {
                return Err(GroupError::Names { names: names.len(), order: n });
            }
        }
        let flat: Vec<u32> = table.concat();
        let at = |a: usize, b: usize| flat[a * n + b];
        for a in 0..n {
            if at(0, a) as usize != a || at(a, 0) as usize != a {
                return Err(GroupError::Identity);
            }
        }
        let mut inverses = vec![0u32; n];
        for (a, inv) in inverses.iter_mut().enumerate() {
            let b = (0..n).find(|&b| at(a, b) == 0 && at(b, a) == 0).ok_or(GroupError::Inverse(a as u32))?;
            *inv = b as u32;
        }
        for a in 0..n {
            for b in 0..n {
                let ab = at(a, b) as usize;
                for c in 0..n {
                    if at(ab, c) != at(a, at(b, c) as usize) {
                        return Err(GroupError::Associativity(a as u32, b as u32, c as u32));
                    }
                }
            }
        }
        Ok(FiniteGroup { order: n, table: flat, inverses, names })
    }

    // Tables that are group laws by construction (permutation closures).
    pub(crate) fn from_trusted_table(order: usize, table: Vec<u32>, names: Option<Vec<String>>) -> Self {
        let inverses = (0..order).map(|a| (0..order).find(|&b| table[a * order + b] == 0).expect("group law") as u32).collect();
        FiniteGroup { order, table, inverses, names }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize * self.order + b as usize]
    }

    pub fn inv(&self, a: u32) -> u32 {
        self.inverses[a as usize]
    }

    /// `h^-1 g h`.
    pub fn conj(&self, g: u32, h: u32) -> u32 {
        self.mul(self.mul(self.inv(h), g), h)
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn name(&self, a: u32) -> String {
        match &self.names {
            Some(n) => n[a as usize].clone(),
            None => alloc::format!("{a}"),
        }
    }

    pub fn table_rows(&self) -> Vec<Vec<u32>> {
        self.table.chunks(self.order).map(<[u32]>::to_vec).collect()
    }

    /// Looks an element up by name, by number, or (for permutation groups) by
    /// any cycle notation of it.
    pub fn element(&self, name: &str) -> Result<u32, GroupError> {
        let unknown = || GroupError::UnknownElement(name.into());
        if let Some(names) = &self.names {
            if let Some(i) = names.iter().position(|n| n == name.trim()) {
                return Ok(i as u32);
            }
            let degree = names.iter().filter_map(|n| max_point(n)).max();
            if let Some(p) = degree.and_then(|d| Perm::parse(name, d).ok()) {
                let canon = p.cycle_string();
                if let Some(i) = names.iter().position(|n| *n == canon) {
                    return Ok(i as u32);
                }
            }
        }
        match name.trim().parse::<u32>() {
            Ok(i) if (i as usize) < self.order => Ok(i),
            _ => Err(unknown()),
        }
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup { members: vec![true; self.order] }
    }

    pub fn trivial(&self) -> Subgroup {
        let mut members = vec![false; self.order];
        members[0] = true;
        Subgroup { members }
    }

    /// Subgroup generated by `gens`.
    pub fn generate(&self, gens: &[u32]) -> Subgroup {
        let mut members = vec![false; self.order];
        members[0] = true;
        let mut list = vec![0u32];
        let mut i = 0;
        // in a finite group, closing under right multiplication by generators suffices
        while i < list.len() {
            let x = list[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !members[y as usize] {
                    members[y as usize] = true;
                    list.push(y);
                }
            }
            i += 1;
        }
        Subgroup { members }
    }

    pub fn subgroup_by_names(&self, names: &[&str]) -> Result<Subgroup, GroupError> {
        let gens = names.iter().map(|n| self.element(n)).collect::<Result<Vec<_>, _>>()?;
        Ok(self.generate(&gens))
    }

    /// Checks that `elements` form a subgroup.
    pub fn subgroup_from_elements(&self, elements: &[u32]) -> Result<Subgroup, GroupError> {
        if elements.iter().any(|&e| e as usize >= self.order) {
            return Err(GroupError::NotSubgroup);
        }
        let s = self.generate(elements);
        if s.len() != elements.iter().collect::<BTreeSet<_>>().len() + usize::from(!elements.contains(&0)) {
            return Err(GroupError::NotSubgroup);
        }
        Ok(s)
    }

    /// Smallest subgroup of `ambient` containing `seed` and normalized by `ambient`.
    pub fn normal_closure_in(&self, ambient: &Subgroup, seed: &[u32]) -> Subgroup {
        let mut conjugates = BTreeSet::new();
        for &s in seed {
            for k in ambient.elements() {
                conjugates.insert(self.conj(s, k));
            }
        }
        let gens: Vec<u32> = conjugates.into_iter().collect();
        self.generate(&gens)
    }

    pub fn normal_closure(&self, seed: &[u32]) -> Subgroup {
        self.normal_closure_in(&self.whole(), seed)
    }

    pub fn is_normal_in(&self, n: &Subgroup, k: &Subgroup) -> bool {
        k.elements().all(|x| n.elements().all(|s| n.contains(self.conj(s, x))))
    }

    /// Every subgroup of `h`, ordered by size and then by membership pattern.
    pub fn subgroups_within(&self, h: &Subgroup) -> Vec<Subgroup> {
        let elems: Vec<u32> = h.elements().collect();
        let mut found: BTreeSet<Subgroup> = elems.iter().map(|&x| self.generate(&[x])).collect();
        let mut frontier: Vec<Subgroup> = found.iter().cloned().collect();
        while let Some(a) = frontier.pop() {
            for &x in &elems {
                if a.contains(x) {
                    continue;
                }
                let mut gens: Vec<u32> = a.elements().collect();
                gens.push(x);
                let b = self.generate(&gens);
                if found.insert(b.clone()) {
                    frontier.push(b);
                }
            }
        }
        let mut out: Vec<Subgroup> = found.into_iter().collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| b.cmp(a)));
        out
    }

    pub fn normal_subgroups_of(&self, h: &Subgroup) -> Vec<Subgroup> {
        self.subgroups_within(h).into_iter().filter(|n| self.is_normal_in(n, h)).collect()
    }

    /// Normal subgroups `N ⊴ H` with `H ∩ <<N>>_K != N`.
    pub fn cep_violations(&self, k: &Subgroup, h: &Subgroup) -> Vec<CepViolation> {
        self.normal_subgroups_of(h)
            .into_iter()
            .filter_map(|n| {
                let seed: Vec<u32> = n.elements().collect();
                let closure = self.normal_closure_in(k, &seed);
                let intersection = h.intersect(&closure);
                (intersection != n).then_some(CepViolation { n, closure, intersection })
            })
            .collect()
    }

    /// CEP of `H <= K`; on failure, the first violating `N` in lattice order.
    pub fn is_cep_in(&self, k: &Subgroup, h: &Subgroup) -> Result<CepVerdict, GroupError> {
        if !h.is_subset(k) {
            return Err(GroupError::NotSubgroup);
        }
        let counterexample = self.cep_violations(k, h).into_iter().next();
        Ok(CepVerdict { holds: counterexample.is_none(), counterexample })
    }

    /// CEP of `H` in the whole group.
    pub fn is_cep(&self, h: &Subgroup) -> Result<CepVerdict, GroupError> {
        self.is_cep_in(&self.whole(), h)
    }

    /// Smallest `S ⊆ H \ {1}` with `|S| <= max_s` meeting every CEP-violating
    /// normal subgroup of `H`; sets of equal size are tried in lexicographic order.
    pub fn is_almost_cep(&self, h: &Subgroup, max_s: usize) -> Result<Option<Vec<u32>>, GroupError> {
        if h.len() != h.members.iter().filter(|&&m| m).count() || h.members.len() != self.order {
            return Err(GroupError::NotSubgroup);
        }
        let violators = self.cep_violations(&self.whole(), h);
        let pool: Vec<u32> = h.elements().filter(|&x| x != 0).collect();
        for size in 0..=max_s.min(pool.len()) {
            let mut idx: Vec<usize> = (0..size).collect();
            loop {
                let s: Vec<u32> = idx.iter().map(|&i| pool[i]).collect();
                if violators.iter().all(|v| s.iter().any(|&x| v.n.contains(x))) {
                    return Ok(Some(s));
                }
                if !next_combination(&mut idx, pool.len()) {
                    break;
                }
            }
        }
        Ok(None)
    }

    /// Checks both transitivity facts over every chain `H <= K <= G` of subgroups:
    /// CEP(H, K) and CEP(K, G) give CEP(H, G), and CEP(H, G) gives CEP(H, K).
    pub fn cep_transitivity_scan(&self) -> TransitivityReport {
        let whole = self.whole();
        let subs = self.subgroups_within(&whole);
        let in_g: Vec<bool> = subs.iter().map(|h| self.cep_violations(&whole, h).is_empty()).collect();
        let mut chains = 0;
        let mut violations = Vec::new();
        for (i, h) in subs.iter().enumerate() {
            for (j, k) in subs.iter().enumerate() {
                if !h.is_subset(k) {
                    continue;
                }
                chains += 1;
                let hk = self.cep_violations(k, h).is_empty();
                if hk && in_g[j] && !in_g[i] {
                    violations.push(TransitivityViolation { h: h.clone(), k: k.clone(), rule: TransitivityRule::Compose });
                }
                if in_g[i] && !hk {
                    violations.push(TransitivityViolation { h: h.clone(), k: k.clone(), rule: TransitivityRule::Restrict });
                }
            }
        }
        TransitivityReport { subgroups: subs.len(), chains, cep_in_whole: in_g.iter().filter(|&&x| x).count(), violations }
    }
}

fn max_point(name: &str) -> Option<usize> {
    name.split(|c: char| !c.is_ascii_digit()).filter_map(|s| s.parse().ok()).max()
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// A subgroup as a membership mask over the parent group's elements.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subgroup {
    members: Vec<bool>,
}

impl Subgroup {
    pub fn contains(&self, x: u32) -> bool {
        self.members.get(x as usize).copied().unwrap_or(false)
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> + '_ {
        self.members.iter().enumerate().filter(|(_, &m)| m).map(|(i, _)| i as u32)
    }

    pub fn len(&self) -> usize {
        self.members.iter().filter(|&&m| m).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_subset(&self, other: &Subgroup) -> bool {
        self.members.len() == other.members.len() && self.members.iter().zip(&other.members).all(|(&a, &b)| !a || b)
    }

    pub fn intersect(&self, other: &Subgroup) -> Subgroup {
        Subgroup { members: self.members.iter().zip(&other.members).map(|(&a, &b)| a && b).collect() }
    }
}

/// `H ∩ <<N>>_K = intersection != N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CepViolation {
    pub n: Subgroup,
    pub closure: Subgroup,
    pub intersection: Subgroup,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CepVerdict {
    pub holds: bool,
    pub counterexample: Option<CepViolation>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransitivityRule {
    /// CEP(H, K) and CEP(K, G) but not CEP(H, G).
    Compose,
    /// CEP(H, G) but not CEP(H, K).
    Restrict,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitivityViolation {
    pub h: Subgroup,
    pub k: Subgroup,
    pub rule: TransitivityRule,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitivityReport {
    pub subgroups: usize,
    pub chains: usize,
    pub cep_in_whole: usize,
    pub violations: Vec<TransitivityViolation>,
}
