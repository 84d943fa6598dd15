//! Stallings subgroup graphs.
//!
//! A finitely generated subgroup `H <= F_n` is represented by its folded core
//! graph: a connected labelled graph with a base vertex in which every vertex
//! has at most one outgoing edge per signed label, and every non-base vertex
//! has degree at least two. Reduced words in `H` are exactly the labels of
//! reduced closed paths at the base.
//!
//! Vertices are renumbered by a breadth-first walk from the base that visits
//! labels in the order `x1, x1^-1, x2, x2^-1, ...`. Since the folded core graph
//! of a subgroup is unique up to base-preserving isomorphism, the numbered
//! graph is a canonical object: two generating sets give structurally equal
//! graphs iff they generate the same subgroup.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec::Vec;

use crate::word::{Letter, Word, WordError};

/// Index of a subgroup in its ambient free group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Index {
    Finite(usize),
    Infinite,
}

/// A positive edge `source --x_label--> target`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Edge {
    pub source: usize,
    pub label: u32,
    pub target: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupGraph {
    rank: u32,
    // vertex 0 is the base
    out: Vec<BTreeMap<Letter, usize>>,
}

impl SubgroupGraph {
    /// Folded core graph of the subgroup generated by `generators`.
    pub fn build(rank: u32, generators: &[Word]) -> Result<Self, WordError> {
        let order: Vec<usize> = (0..edge_count(generators)).collect();
        Self::build_with_edge_order(rank, generators, &order)
    }

    /// Same as [`SubgroupGraph::build`], but inserts the edges of the
    /// unfolded bouquet in the given order, which changes the order in
    /// which folds happen. `order` must be a permutation of
    /// `0..(total letters of all generators)`.
    pub fn build_with_edge_order(rank: u32, generators: &[Word], order: &[usize]) -> Result<Self, WordError> {
        for g in generators {
            if g.rank() != rank {
                return Err(WordError::RankMismatch { left: g.rank(), right: rank });
            }
        }
        // Lay out each generator as a closed path of fresh vertices at the base.
        let mut raw_edges: Vec<(usize, Letter, usize)> = Vec::new();
        let mut vertex_count = 1;
        for g in generators {
            let n = g.len();
            let mut prev = 0;
            for (i, &l) in g.letters().iter().enumerate() {
                let next = if i + 1 == n {
                    0
                } else {
                    vertex_count += 1;
                    vertex_count - 1
                };
                raw_edges.push((prev, l, next));
                prev = next;
            }
        }
        assert_eq!(order.len(), raw_edges.len(), "edge order must cover every edge");

        let mut folder = Folder::new(vertex_count);
        for &i in order {
            let (s, l, t) = raw_edges[i];
            folder.add_edge(s, l, t);
        }
        Ok(folder.finish(rank))
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn vertex_count(&self) -> usize {
        self.out.len()
    }

    pub fn base(&self) -> usize {
        0
    }

    /// Positive edges, sorted.
    pub fn edges(&self) -> Vec<Edge> {
        let mut edges = Vec::new();
        for (s, adj) in self.out.iter().enumerate() {
            for (l, &t) in adj {
                if !l.inverse {
                    edges.push(Edge { source: s, label: l.gen, target: t });
                }
            }
        }
        edges
    }

    pub fn follow(&self, from: usize, l: Letter) -> Option<usize> {
        self.out[from].get(&l).copied()
    }

    fn trace(&self, w: &Word) -> Option<usize> {
        let mut v = 0;
        for &l in w.letters() {
            v = self.follow(v, l)?;
        }
        Some(v)
    }

    pub fn contains(&self, w: &Word) -> Result<bool, WordError> {
        if w.rank() != self.rank {
            return Err(WordError::RankMismatch { left: w.rank(), right: self.rank });
        }
        Ok(self.trace(w) == Some(0))
    }

    // BFS spanning tree: path label from the base to each vertex, plus the set
    // of tree edges (by positive orientation).
    fn spanning_tree(&self) -> (Vec<Word>, Vec<Edge>) {
        let mut paths: Vec<Option<Word>> = alloc::vec![None; self.out.len()];
        let mut tree = Vec::new();
        paths[0] = Some(Word::identity(self.rank));
        let mut queue = VecDeque::from([0usize]);
        while let Some(v) = queue.pop_front() {
            for (&l, &t) in &self.out[v] {
                if paths[t].is_none() {
                    let p = paths[v].as_ref().unwrap().multiply(&Word::reduce([l], self.rank).unwrap()).unwrap();
                    paths[t] = Some(p);
                    tree.push(if l.inverse {
                        Edge { source: t, label: l.gen, target: v }
                    } else {
                        Edge { source: v, label: l.gen, target: t }
                    });
                    queue.push_back(t);
                }
            }
        }
        (paths.into_iter().map(Option::unwrap).collect(), tree)
    }

    /// Free basis read off a BFS spanning tree: one element per non-tree edge.
    pub fn basis(&self) -> Vec<Word> {
        self.basis_edges().into_iter().map(|(_, w)| w).collect()
    }

    fn basis_edges(&self) -> Vec<(Edge, Word)> {
        let (paths, tree) = self.spanning_tree();
        self.edges()
            .into_iter()
            .filter(|e| !tree.contains(e))
            .map(|e| {
                let x = Word::generator(self.rank, e.label).unwrap();
                let w = paths[e.source].multiply(&x).unwrap().multiply(&paths[e.target].invert()).unwrap();
                (e, w)
            })
            .collect()
    }

    /// Writes a member of the subgroup as a word in [`SubgroupGraph::basis`]:
    /// a list of `(basis index, inverse)` pairs. Returns `None` for non-members.
    pub fn coordinates(&self, w: &Word) -> Option<Vec<(usize, bool)>> {
        if w.rank() != self.rank {
            return None;
        }
        let basis_edges: Vec<Edge> = self.basis_edges().into_iter().map(|(e, _)| e).collect();
        let mut out: Vec<(usize, bool)> = Vec::new();
        let mut v = 0;
        for &l in w.letters() {
            let t = self.follow(v, l)?;
            let e = if l.inverse { Edge { source: t, label: l.gen, target: v } } else { Edge { source: v, label: l.gen, target: t } };
            if let Some(i) = basis_edges.iter().position(|b| *b == e) {
                match out.last() {
                    Some(&(j, inv)) if j == i && inv != l.inverse => {
                        out.pop();
                    }
                    _ => out.push((i, l.inverse)),
                }
            }
            v = t;
        }
        (v == 0).then_some(out)
    }

    pub fn index_in_ambient(&self) -> Index {
        let full = 2 * self.rank as usize;
        if self.out.iter().all(|adj| adj.len() == full) {
            Index::Finite(self.out.len())
        } else {
            Index::Infinite
        }
    }
}

fn edge_count(generators: &[Word]) -> usize {
    generators.iter().map(Word::len).sum()
}

struct Folder {
    parent: Vec<usize>,
    out: Vec<BTreeMap<Letter, usize>>,
    pending: Vec<(usize, usize)>,
}

impl Folder {
    fn new(n: usize) -> Self {
        Folder { parent: (0..n).collect(), out: alloc::vec![BTreeMap::new(); n], pending: Vec::new() }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    fn add_edge(&mut self, s: usize, l: Letter, t: usize) {
        self.attach(s, l, t);
        self.attach(t, l.inv(), s);
        self.drain();
    }

    // Records one half-edge; a clash with an existing half-edge is a fold.
    fn attach(&mut self, s: usize, l: Letter, t: usize) {
        let s = self.find(s);
        let t = self.find(t);
        match self.out[s].get(&l).copied() {
            Some(old) => {
                let old = self.find(old);
                if old != t {
                    self.pending.push((old, t));
                }
            }
            None => {
                self.out[s].insert(l, t);
            }
        }
    }

    fn drain(&mut self) {
        while let Some((a, b)) = self.pending.pop() {
            let a = self.find(a);
            let b = self.find(b);
            if a == b {
                continue;
            }
            // the base must stay a root
            let (keep, gone) = if b == 0 || (a != 0 && b < a) { (b, a) } else { (a, b) };
            self.parent[gone] = keep;
            let moved = core::mem::take(&mut self.out[gone]);
            for (l, t) in moved {
                self.attach(keep, l, t);
            }
        }
    }

    fn finish(mut self, rank: u32) -> SubgroupGraph {
        let n = self.parent.len();
        // Resolve targets and collect live vertices.
        let mut adj: BTreeMap<usize, BTreeMap<Letter, usize>> = BTreeMap::new();
        for v in 0..n {
            if self.find(v) != v {
                continue;
            }
            let entries: Vec<(Letter, usize)> = self.out[v].iter().map(|(&l, &t)| (l, t)).collect();
            let resolved = entries.into_iter().map(|(l, t)| (l, self.find(t))).collect();
            adj.insert(v, resolved);
        }
        // Trim hanging trees: non-base vertices of degree one.
        loop {
            let leaf = adj.iter().find(|(&v, m)| v != 0 && m.len() == 1).map(|(&v, _)| v);
            let Some(v) = leaf else { break };
            let (l, t) = adj.remove(&v).unwrap().into_iter().next().unwrap();
            adj.get_mut(&t).unwrap().remove(&l.inv());
        }
        // Canonical numbering.
        let mut number: BTreeMap<usize, usize> = BTreeMap::new();
        let mut order = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        number.insert(0, 0);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &t in adj[&v].values() {
                if !number.contains_key(&t) {
                    number.insert(t, number.len());
                    queue.push_back(t);
                }
            }
        }
        let out = order.iter().map(|v| adj[v].iter().map(|(&l, t)| (l, number[t])).collect()).collect();
        SubgroupGraph { rank, out }
    }
}
