//! Finite colored DAGs.
//!
//! Vertex ids are opaque strings; internally a vertex is its position in the
//! vertex list, and "smaller id" always means "earlier in the list".

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use alloc::{format, vec};

use thiserror::Error;

/// Color 0 asks for a finitely presented quotient, color 1 for one that is not.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Color {
    Zero,
    One,
}

impl Color {
    pub fn from_u8(c: u8) -> Option<Color> {
        match c {
            0 => Some(Color::Zero),
            1 => Some(Color::One),
            _ => None,
        }
    }

    pub fn as_u8(self) -> u8 {
        match self {
            Color::Zero => 0,
            Color::One => 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DagError {
    #[error("cycle found: {}", .0.join(" -> "))]
    CycleFound(Vec<String>),
    #[error("loop edge at `{0}`")]
    LoopEdge(String),
    #[error("duplicate edge `{0}` -> `{1}`")]
    DuplicateEdge(String, String),
    #[error("vertex `{0}` has no color")]
    MissingColor(String),
    #[error("vertex `{0}` has color {1}, expected 0 or 1")]
    InvalidColor(String, u8),
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("empty dag")]
    Empty,
    #[error("enumeration order {order} exceeds cap {cap}")]
    CapExceeded { order: usize, cap: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredDag {
    ids: Vec<String>,
    colors: Vec<Color>,
    edges: Vec<(usize, usize)>,
}

impl ColoredDag {
    /// Builds from dense vertex indices. Does not validate.
    pub fn new(ids: Vec<String>, colors: Vec<Color>, edges: Vec<(usize, usize)>) -> Self {
        assert_eq!(ids.len(), colors.len());
        ColoredDag { ids, colors, edges }
    }

    /// Builds from labelled data as it appears in input files, then validates.
    pub fn from_labeled(vertices: &[(&str, Option<u8>)], edges: &[(&str, &str)]) -> Result<Self, DagError> {
        let mut ids: Vec<String> = Vec::with_capacity(vertices.len());
        let mut colors = Vec::with_capacity(vertices.len());
        for &(id, c) in vertices {
            if ids.iter().any(|x| x == id) {
                return Err(DagError::DuplicateVertex(id.into()));
            }
            let c = c.ok_or_else(|| DagError::MissingColor(id.into()))?;
            colors.push(Color::from_u8(c).ok_or_else(|| DagError::InvalidColor(id.into(), c))?);
            ids.push(id.into());
        }
        let lookup = |id: &str| ids.iter().position(|x| x == id).ok_or_else(|| DagError::UnknownVertex(id.into()));
        let edges = edges.iter().map(|&(a, b)| Ok((lookup(a)?, lookup(b)?))).collect::<Result<Vec<_>, DagError>>()?;
        let dag = ColoredDag { ids, colors, edges };
        dag.validate()?;
        Ok(dag)
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, v: usize) -> &str {
        &self.ids[v]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.ids.iter().position(|x| x == id)
    }

    pub fn color(&self, v: usize) -> Color {
        self.colors[v]
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Simple and acyclic.
    pub fn validate(&self) -> Result<(), DagError> {
        let n = self.len();
        let mut seen = vec![false; n * n];
        for &(a, b) in &self.edges {
            if a == b {
                return Err(DagError::LoopEdge(self.ids[a].clone()));
            }
            if core::mem::replace(&mut seen[a * n + b], true) {
                return Err(DagError::DuplicateEdge(self.ids[a].clone(), self.ids[b].clone()));
            }
        }
        if let Some(cycle) = self.find_cycle() {
            return Err(DagError::CycleFound(cycle.into_iter().map(|v| self.ids[v].clone()).collect()));
        }
        Ok(())
    }

    fn successors(&self) -> Vec<Vec<usize>> {
        let mut succ = vec![Vec::new(); self.len()];
        for &(a, b) in &self.edges {
            succ[a].push(b);
        }
        for s in &mut succ {
            s.sort_unstable();
            s.dedup();
        }
        succ
    }

    // Iterative DFS with colors; on a back edge returns the closed path.
    fn find_cycle(&self) -> Option<Vec<usize>> {
        let succ = self.successors();
        let n = self.len();
        // 0 = unvisited, 1 = on stack, 2 = done
        let mut state = vec![0u8; n];
        for root in 0..n {
            if state[root] != 0 {
                continue;
            }
            let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
            state[root] = 1;
            while let Some(&mut (v, ref mut next)) = stack.last_mut() {
                if *next < succ[v].len() {
                    let t = succ[v][*next];
                    *next += 1;
                    match state[t] {
                        0 => {
                            state[t] = 1;
                            stack.push((t, 0));
                        }
                        1 => {
                            let start = stack.iter().position(|&(u, _)| u == t).unwrap();
                            let mut path: Vec<usize> = stack[start..].iter().map(|&(u, _)| u).collect();
                            path.push(t);
                            return Some(path);
                        }
                        _ => {}
                    }
                } else {
                    state[v] = 2;
                    stack.pop();
                }
            }
        }
        None
    }

    /// Reachability matrix, reflexive: `reach[u][v]` iff a directed path `u -> ... -> v` exists.
    pub fn reachability(&self) -> Vec<Vec<bool>> {
        let n = self.len();
        let succ = self.successors();
        let mut reach = vec![vec![false; n]; n];
        for (u, row) in reach.iter_mut().enumerate() {
            let mut stack = vec![u];
            row[u] = true;
            while let Some(v) = stack.pop() {
                for &t in &succ[v] {
                    if !row[t] {
                        row[t] = true;
                        stack.push(t);
                    }
                }
            }
        }
        reach
    }

    /// The partial order: `u <= v` iff there is a directed path from `u` to `v`.
    pub fn leq(&self, u: &str, v: &str) -> Result<bool, DagError> {
        let u = self.index_of(u).ok_or_else(|| DagError::UnknownVertex(u.into()))?;
        let v = self.index_of(v).ok_or_else(|| DagError::UnknownVertex(v.into()))?;
        Ok(self.leq_index(u, v))
    }

    pub fn leq_index(&self, u: usize, v: usize) -> bool {
        if u == v {
            return true;
        }
        let succ = self.successors();
        let mut seen = vec![false; self.len()];
        let mut stack = vec![u];
        while let Some(x) = stack.pop() {
            for &t in &succ[x] {
                if t == v {
                    return true;
                }
                if !core::mem::replace(&mut seen[t], true) {
                    stack.push(t);
                }
            }
        }
        false
    }

    /// Edge set `{(u, v) : u < v}`, sorted.
    pub fn transitive_closure(&self) -> ColoredDag {
        let reach = self.reachability();
        let mut edges = Vec::new();
        for (u, row) in reach.iter().enumerate() {
            for (v, &r) in row.iter().enumerate() {
                if r && u != v {
                    edges.push((u, v));
                }
            }
        }
        ColoredDag { ids: self.ids.clone(), colors: self.colors.clone(), edges }
    }

    /// Vertices with out-degree zero, in id order.
    pub fn maximal_vertices(&self) -> Result<Vec<usize>, DagError> {
        if self.is_empty() {
            return Err(DagError::Empty);
        }
        let mut has_out = vec![false; self.len()];
        for &(a, _) in &self.edges {
            has_out[a] = true;
        }
        Ok((0..self.len()).filter(|&v| !has_out[v]).collect())
    }

    /// The induced sub-DAG without vertex `v`.
    pub fn remove_vertex(&self, v: usize) -> ColoredDag {
        let keep = |u: usize| if u > v { u - 1 } else { u };
        let mut ids = self.ids.clone();
        ids.remove(v);
        let mut colors = self.colors.clone();
        colors.remove(v);
        let edges = self.edges.iter().filter(|&&(a, b)| a != v && b != v).map(|&(a, b)| (keep(a), keep(b))).collect();
        ColoredDag { ids, colors, edges }
    }
}

pub const DEFAULT_ENUMERATION_CAP: usize = 3;

/// Every labelled simple DAG on vertices `"1".."order"` with every coloring,
/// each exactly once.
pub fn enumerate_colored_dags(order: usize) -> Result<impl Iterator<Item = ColoredDag>, DagError> {
    enumerate_colored_dags_capped(order, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_colored_dags_capped(order: usize, cap: usize) -> Result<impl Iterator<Item = ColoredDag>, DagError> {
    if order > cap {
        return Err(DagError::CapExceeded { order, cap });
    }
    let ids: Vec<String> = (1..=order).map(|i| i.to_string()).collect();
    let pairs: Vec<(usize, usize)> = (0..order).flat_map(|a| (0..order).filter(move |&b| b != a).map(move |b| (a, b))).collect();
    let mut shapes: Vec<Vec<(usize, usize)>> = Vec::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        let edges: Vec<(usize, usize)> = pairs.iter().enumerate().filter(|&(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
        let probe = ColoredDag { ids: ids.clone(), colors: vec![Color::Zero; order], edges };
        if probe.find_cycle().is_none() {
            shapes.push(probe.edges);
        }
    }
    let colorings = 1usize << order;
    Ok(shapes.into_iter().flat_map(move |edges| {
        let ids = ids.clone();
        (0..colorings).map(move |mask| {
            let colors = (0..order).map(|i| if mask >> i & 1 == 1 { Color::One } else { Color::Zero }).collect();
            ColoredDag { ids: ids.clone(), colors, edges: edges.clone() }
        })
    }))
}

impl core::fmt::Display for ColoredDag {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let vs: Vec<String> = (0..self.len()).map(|v| format!("{}:{}", self.ids[v], self.colors[v].as_u8())).collect();
        let es: Vec<String> = self.edges.iter().map(|&(a, b)| format!("{}->{}", self.ids[a], self.ids[b])).collect();
        write!(f, "[{}] {{{}}}", vs.join(" "), es.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dag(vs: &[(&str, u8)], es: &[(&str, &str)]) -> Result<ColoredDag, DagError> {
        let vs: Vec<(&str, Option<u8>)> = vs.iter().map(|&(v, c)| (v, Some(c))).collect();
        ColoredDag::from_labeled(&vs, es)
    }

    fn chain3() -> ColoredDag {
        dag(&[("1", 0), ("2", 0), ("3", 0)], &[("1", "2"), ("2", "3")]).unwrap()
    }

    #[test]
    fn validation() {
        assert!(dag(&[("1", 0), ("2", 0)], &[("1", "2")]).is_ok());
        assert_eq!(
            dag(&[("1", 0), ("2", 0)], &[("1", "2"), ("2", "1")]),
            Err(DagError::CycleFound(vec!["1".into(), "2".into(), "1".into()]))
        );
        assert_eq!(dag(&[("1", 0)], &[("1", "1")]), Err(DagError::LoopEdge("1".into())));
        assert_eq!(dag(&[("1", 0), ("2", 1)], &[("1", "2"), ("1", "2")]), Err(DagError::DuplicateEdge("1".into(), "2".into())));
        assert_eq!(ColoredDag::from_labeled(&[("a", None)], &[]), Err(DagError::MissingColor("a".into())));
        assert_eq!(dag(&[("a", 2)], &[]), Err(DagError::InvalidColor("a".into(), 2)));
        assert_eq!(dag(&[("a", 0)], &[("a", "b")]), Err(DagError::UnknownVertex("b".into())));
        assert_eq!(dag(&[("a", 0), ("a", 1)], &[]), Err(DagError::DuplicateVertex("a".into())));
    }

    #[test]
    fn longer_cycle_witness() {
        let err = dag(&[("a", 0), ("b", 0), ("c", 0)], &[("a", "b"), ("b", "c"), ("c", "a")]).unwrap_err();
        match err {
            DagError::CycleFound(p) => {
                assert_eq!(p.len(), 4);
                assert_eq!(p.first(), p.last());
            }
            e => panic!("{e}"),
        }
    }

    #[test]
    fn order_relation() {
        let c = chain3();
        assert!(c.leq("1", "3").unwrap());
        assert!(c.leq("2", "2").unwrap());
        assert!(!c.leq("3", "1").unwrap());
        let anti = dag(&[("1", 0), ("2", 0)], &[]).unwrap();
        assert!(!anti.leq("1", "2").unwrap());
        assert!(c.leq("1", "9").is_err());
    }

    #[test]
    fn closure() {
        let c = chain3().transitive_closure();
        assert_eq!(c.edges(), &[(0, 1), (0, 2), (1, 2)]);
        assert_eq!(c.transitive_closure(), c);
        let anti = dag(&[("1", 0), ("2", 1)], &[]).unwrap();
        assert_eq!(anti.transitive_closure(), anti);
    }

    #[test]
    fn maximal() {
        assert_eq!(chain3().maximal_vertices().unwrap(), vec![2]);
        let anti = dag(&[("1", 0), ("2", 0)], &[]).unwrap();
        assert_eq!(anti.maximal_vertices().unwrap(), vec![0, 1]);
        let diamond = dag(&[("1", 0), ("2", 0), ("3", 0), ("4", 0)], &[("1", "2"), ("1", "3"), ("2", "4"), ("3", "4")]).unwrap();
        assert_eq!(diamond.maximal_vertices().unwrap(), vec![3]);
        let empty = ColoredDag::new(vec![], vec![], vec![]);
        assert_eq!(empty.maximal_vertices(), Err(DagError::Empty));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_colored_dags(1).unwrap().count(), 2);
        assert_eq!(enumerate_colored_dags(2).unwrap().count(), 12);
        assert_eq!(enumerate_colored_dags(3).unwrap().count(), 200);
        assert!(enumerate_colored_dags(4).is_err());
        assert_eq!(enumerate_colored_dags_capped(0, 3).unwrap().count(), 1);
    }

    #[test]
    fn remove_vertex_reindexes() {
        let c = chain3();
        let r = c.remove_vertex(1);
        assert_eq!(r.ids(), &["1".to_string(), "3".to_string()]);
        assert!(r.edges().is_empty());
    }
}
