//! Permutations in cycle notation and permutation groups as multiplication tables.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use alloc::{format, vec};

use super::{FiniteGroup, GroupError};

pub const ORDER_CAP: usize = 10080;

/// Images of `0..degree`; products apply the left factor first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm(pub Vec<u32>);

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm((0..degree as u32).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// `self` then `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&x| other.0[x as usize]).collect())
    }

    /// Parses one or more cycles on points `1..=degree`, e.g. `(1 2 3)(4 5)` or `(1,2,3)`.
    /// The empty string and `()` are the identity.
    pub fn parse(text: &str, degree: usize) -> Result<Perm, GroupError> {
        let bad = || GroupError::BadCycle(text.into());
        let mut p = Perm::identity(degree);
        let mut rest = text.trim();
        while !rest.is_empty() {
            let body_start = rest.strip_prefix('(').ok_or_else(bad)?;
            let end = body_start.find(')').ok_or_else(bad)?;
            let body = &body_start[..end];
            rest = body_start[end + 1..].trim_start();
            let points = body
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>().map_err(|_| bad()))
                .collect::<Result<Vec<_>, _>>()?;
            if points.iter().any(|&x| x == 0 || x > degree) {
                return Err(bad());
            }
            let mut seen = points.clone();
            seen.sort_unstable();
            seen.dedup();
            if seen.len() != points.len() {
                return Err(bad());
            }
            // compose the cycle onto what we have so far
            let mut cycle = Perm::identity(degree);
            for (i, &x) in points.iter().enumerate() {
                cycle.0[x - 1] = (points[(i + 1) % points.len()] - 1) as u32;
            }
            p = p.then(&cycle);
        }
        Ok(p)
    }

    /// Canonical cycle notation: 1-based, each cycle starts at its least point,
    /// cycles ordered by that point, fixed points omitted; `()` for the identity.
    pub fn cycle_string(&self) -> String {
        let mut seen = vec![false; self.degree()];
        let mut out = String::new();
        for start in 0..self.degree() {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push((x + 1).to_string());
                x = self.0[x] as usize;
            }
            out.push_str(&format!("({})", cycle.join(" ")));
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

/// Closes the generators under multiplication; element 0 is the identity and
/// elements are numbered in breadth-first discovery order.
pub fn from_permutations(degree: usize, generators: &[Perm]) -> Result<FiniteGroup, GroupError> {
    if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
        return Err(GroupError::BadCycle(g.cycle_string()));
    }
    let mut elements = vec![Perm::identity(degree)];
    let mut index: BTreeMap<Perm, u32> = BTreeMap::from([(Perm::identity(degree), 0)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for g in generators {
            let p = elements[i].then(g);
            if !index.contains_key(&p) {
                if elements.len() == ORDER_CAP {
                    return Err(GroupError::TooLarge(ORDER_CAP));
                }
                index.insert(p.clone(), elements.len() as u32);
                queue.push_back(elements.len());
                elements.push(p);
            }
        }
    }
    let n = elements.len();
    let mut table = vec![0u32; n * n];
    for a in 0..n {
        for b in 0..n {
            table[a * n + b] = index[&elements[a].then(&elements[b])];
        }
    }
    let names = elements.iter().map(Perm::cycle_string).collect();
    Ok(FiniteGroup::from_trusted_table(n, table, Some(names)))
}
