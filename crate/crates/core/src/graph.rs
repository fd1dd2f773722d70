//! Directed graphs whose vertices are the symbols of a vertex shift.
//!
//! A point of the shift is a bi-infinite walk, so symbols with no incoming or
//! no outgoing edge never appear in a point and are stripped by
//! [`SymbolGraph::essentialize`]. All other modules assume essential graphs.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::bits::BitMatrix;
use crate::error::Error;
use crate::Result;

/// Index of a symbol (vertex) in its graph.
pub type XSym = usize;

#[derive(Clone, PartialEq, Eq)]
pub struct SymbolGraph {
    names: Vec<String>,
    index: BTreeMap<String, XSym>,
    /// Out-neighbors per vertex, strictly ascending.
    succ: Vec<Vec<XSym>>,
    /// In-neighbors per vertex, strictly ascending.
    pred: Vec<Vec<XSym>>,
}

impl SymbolGraph {
    /// Builds a graph from symbol names and named edges. Symbol order is
    /// preserved and defines the indices used everywhere else.
    pub fn new<S: AsRef<str>>(symbols: &[S], edges: &[(S, S)]) -> Result<Self> {
        let names: Vec<String> = symbols.iter().map(|s| s.as_ref().to_string()).collect();
        let mut index = BTreeMap::new();
        for (i, n) in names.iter().enumerate() {
            if index.insert(n.clone(), i).is_some() {
                return Err(Error::DuplicateSymbol(n.clone()));
            }
        }
        let mut g = SymbolGraph {
            names,
            index,
            succ: vec![Vec::new(); symbols.len()],
            pred: vec![Vec::new(); symbols.len()],
        };
        for (u, v) in edges {
            let u = g.index_of(u.as_ref())?;
            let v = g.index_of(v.as_ref())?;
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Same graph, edges given as index pairs.
    pub fn from_indices(names: Vec<String>, edges: &[(XSym, XSym)]) -> Result<Self> {
        let mut index = BTreeMap::new();
        for (i, n) in names.iter().enumerate() {
            if index.insert(n.clone(), i).is_some() {
                return Err(Error::DuplicateSymbol(n.clone()));
            }
        }
        let n = names.len();
        let mut g = SymbolGraph {
            names,
            index,
            succ: vec![Vec::new(); n],
            pred: vec![Vec::new(); n],
        };
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        Ok(g)
    }

    fn add_edge(&mut self, u: XSym, v: XSym) {
        if let Err(pos) = self.succ[u].binary_search(&v) {
            self.succ[u].insert(pos, v);
        }
        if let Err(pos) = self.pred[v].binary_search(&u) {
            self.pred[v].insert(pos, u);
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, s: XSym) -> &str {
        &self.names[s]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Result<XSym> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownSymbol(name.to_string()))
    }

    pub fn successors(&self, s: XSym) -> &[XSym] {
        &self.succ[s]
    }

    pub fn predecessors(&self, s: XSym) -> &[XSym] {
        &self.pred[s]
    }

    pub fn has_edge(&self, u: XSym, v: XSym) -> bool {
        self.succ[u].binary_search(&v).is_ok()
    }

    /// All edges, lexicographic by `(source, target)`.
    pub fn edges(&self) -> impl Iterator<Item = (XSym, XSym)> + '_ {
        self.succ
            .iter()
            .enumerate()
            .flat_map(|(u, vs)| vs.iter().map(move |&v| (u, v)))
    }

    pub fn edge_count(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    pub fn adjacency(&self) -> BitMatrix {
        let mut m = BitMatrix::zero(self.len());
        for (u, v) in self.edges() {
            m.set(u, v);
        }
        m
    }

    /// Graph with every edge reversed; symbols and indices unchanged.
    pub fn transpose(&self) -> SymbolGraph {
        SymbolGraph {
            names: self.names.clone(),
            index: self.index.clone(),
            succ: self.pred.clone(),
            pred: self.succ.clone(),
        }
    }

    /// True if every symbol has an outgoing and an incoming edge.
    pub fn is_essential(&self) -> bool {
        (0..self.len()).all(|s| !self.succ[s].is_empty() && !self.pred[s].is_empty())
    }

    /// Removes symbols that cannot occur in a bi-infinite walk, repeating
    /// until the graph is essential. Returns the new graph together with the
    /// surviving symbols' old indices (position = new index).
    pub fn essentialize(&self) -> Result<(SymbolGraph, Vec<XSym>)> {
        let mut alive = vec![true; self.len()];
        loop {
            let mut changed = false;
            for s in 0..self.len() {
                if !alive[s] {
                    continue;
                }
                let has_out = self.succ[s].iter().any(|&v| alive[v]);
                let has_in = self.pred[s].iter().any(|&u| alive[u]);
                if !has_out || !has_in {
                    alive[s] = false;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let keep: Vec<XSym> = (0..self.len()).filter(|&s| alive[s]).collect();
        if keep.is_empty() {
            return Err(Error::EmptyAfterEssentialization);
        }
        Ok((self.restrict(&keep), keep))
    }

    /// Subgraph induced by `keep` (ascending old indices), renumbered by
    /// position.
    pub fn restrict(&self, keep: &[XSym]) -> SymbolGraph {
        let mut old_to_new = vec![usize::MAX; self.len()];
        for (new, &old) in keep.iter().enumerate() {
            old_to_new[old] = new;
        }
        let names: Vec<String> = keep.iter().map(|&s| self.names[s].clone()).collect();
        let edges: Vec<(XSym, XSym)> = self
            .edges()
            .filter(|&(u, v)| old_to_new[u] != usize::MAX && old_to_new[v] != usize::MAX)
            .map(|(u, v)| (old_to_new[u], old_to_new[v]))
            .collect();
        SymbolGraph::from_indices(names, &edges).expect("restriction keeps names distinct")
    }

    fn reachable(&self, start: XSym, backwards: bool) -> Vec<bool> {
        let mut seen = vec![false; self.len()];
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            let next = if backwards { &self.pred[u] } else { &self.succ[u] };
            for &v in next {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen
    }

    /// Strong connectivity with at least one edge.
    pub fn is_irreducible(&self) -> bool {
        if self.is_empty() || self.edge_count() == 0 {
            return false;
        }
        let fwd = self.reachable(0, false);
        let bwd = self.reachable(0, true);
        fwd.iter().all(|&b| b) && bwd.iter().all(|&b| b)
    }

    /// Length of the shortest walk from `u` to `v` using at least one edge.
    pub fn distance(&self, u: XSym, v: XSym) -> Option<usize> {
        let mut dist = vec![usize::MAX; self.len()];
        let mut queue = alloc::collections::VecDeque::new();
        for &w in &self.succ[u] {
            if dist[w] == usize::MAX {
                dist[w] = 1;
                queue.push_back(w);
            }
        }
        if dist[v] != usize::MAX {
            return Some(dist[v]);
        }
        while let Some(w) = queue.pop_front() {
            for &x in &self.succ[w] {
                if dist[x] == usize::MAX {
                    dist[x] = dist[w] + 1;
                    if x == v {
                        return Some(dist[x]);
                    }
                    queue.push_back(x);
                }
            }
        }
        None
    }

    /// Smallest `k` such that any ordered pair of symbols is joined by a walk
    /// of at most `k + 1` edges. Requires irreducibility.
    pub fn connecting_gap(&self) -> Result<usize> {
        if !self.is_irreducible() {
            return Err(Error::NotIrreducible);
        }
        let mut max = 0;
        for u in 0..self.len() {
            for v in 0..self.len() {
                let d = self.distance(u, v).ok_or(Error::NotIrreducible)?;
                max = max.max(d);
            }
        }
        Ok(max - 1)
    }

    /// Checks that consecutive symbols of `word` are joined by edges.
    pub fn is_walk(&self, word: &[XSym]) -> bool {
        !word.is_empty() && word.windows(2).all(|p| self.has_edge(p[0], p[1]))
    }

    /// All walks on `len` symbols, lexicographic by symbol index.
    pub fn walks(&self, len: usize) -> Vec<Vec<XSym>> {
        if len == 0 {
            return vec![Vec::new()];
        }
        let mut out: Vec<Vec<XSym>> = (0..self.len()).map(|s| vec![s]).collect();
        for _ in 1..len {
            let mut next = Vec::new();
            for w in &out {
                for &v in &self.succ[*w.last().expect("nonempty")] {
                    let mut w2 = w.clone();
                    w2.push(v);
                    next.push(w2);
                }
            }
            out = next;
        }
        out
    }

    /// The presentation whose symbols are the walks on `n` symbols of this
    /// graph, with an edge whenever two walks overlap in all but one place.
    pub fn higher_block(&self, n: usize) -> Result<HigherBlock> {
        assert!(n >= 1, "block length must be positive");
        let blocks = self.walks(n);
        if blocks.is_empty() {
            return Err(Error::EmptyAfterEssentialization);
        }
        let names: Vec<String> = blocks
            .iter()
            .map(|b| b.iter().map(|&s| self.name(s)).collect::<String>())
            .collect();
        let mut edges = Vec::new();
        for (i, b) in blocks.iter().enumerate() {
            for (j, c) in blocks.iter().enumerate() {
                if b[1..] == c[..n - 1] && self.has_edge(b[n - 1], c[n - 1]) {
                    edges.push((i, j));
                }
            }
        }
        let graph = SymbolGraph::from_indices(names, &edges)?;
        Ok(HigherBlock {
            graph,
            base: self.clone(),
            blocks,
        })
    }
}

impl core::fmt::Debug for SymbolGraph {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "SymbolGraph({} symbols:", self.len())?;
        for (u, v) in self.edges() {
            write!(f, " {}>{}", self.name(u), self.name(v))?;
        }
        write!(f, ")")
    }
}

/// An `n`-block presentation together with the recoding maps in both
/// directions.
pub struct HigherBlock {
    pub graph: SymbolGraph,
    base: SymbolGraph,
    /// `blocks[s]` is the walk of base symbols that symbol `s` stands for.
    pub blocks: Vec<Vec<XSym>>,
}

impl HigherBlock {
    pub fn block_len(&self) -> usize {
        self.blocks[0].len()
    }

    /// Image of a base word of length at least `n` under the recoding:
    /// coordinate `i` becomes the block starting at `i`.
    pub fn encode(&self, word: &[XSym]) -> Result<Vec<XSym>> {
        let n = self.block_len();
        if word.len() < n || !self.base.is_walk(word) {
            return Err(Error::WordNotInImage);
        }
        word.windows(n)
            .map(|w| {
                self.blocks
                    .iter()
                    .position(|b| b == w)
                    .ok_or(Error::WordNotInImage)
            })
            .collect()
    }

    /// Base word spelled by a walk of block symbols.
    pub fn decode(&self, word: &[XSym]) -> Vec<XSym> {
        let mut out = Vec::new();
        for (i, &s) in word.iter().enumerate() {
            if i == 0 {
                out.extend_from_slice(&self.blocks[s]);
            } else {
                out.push(*self.blocks[s].last().expect("blocks are nonempty"));
            }
        }
        out
    }
}
