//! A one-block factor code: a symbol graph together with a label per symbol.
//!
//! The labeling sends each bi-infinite walk to its label sequence; the set of
//! all such sequences is the image shift. Everything downstream is driven by
//! word matrices: `matrix_of(w)[i][j]` says whether some walk from `i` to `j`
//! reads the label word `w`, so `w` is an image word iff its matrix is
//! nonzero. When the last letter under one matrix equals the first letter
//! under another, the boolean product is the matrix of the overlapped
//! concatenation.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::bits::{BitMatrix, BitSet};
use crate::error::Error;
use crate::graph::{SymbolGraph, XSym};
use crate::Result;

/// Index of a letter in the image alphabet.
pub type YSym = usize;

#[derive(Clone)]
pub struct FactorTriple {
    name: String,
    graph: SymbolGraph,
    labels: Vec<YSym>,
    alphabet: Vec<String>,
    /// Symbols carrying each letter.
    label_sets: Vec<BitSet>,
    adj: BitMatrix,
    adj_t: BitMatrix,
}

impl FactorTriple {
    /// Builds the code, dropping symbols that cannot occur in a bi-infinite
    /// walk. Every declared symbol must have a label; the image alphabet is
    /// the set of labels of surviving symbols, sorted.
    pub fn new<S: AsRef<str>>(
        name: &str,
        symbols: &[S],
        edges: &[(S, S)],
        labels: &[(S, S)],
    ) -> Result<FactorTriple> {
        let raw = SymbolGraph::new(symbols, edges)?;
        let mut by_symbol: BTreeMap<&str, &str> = BTreeMap::new();
        for (s, l) in labels {
            raw.index_of(s.as_ref())?;
            by_symbol.insert(s.as_ref(), l.as_ref());
        }
        for s in symbols {
            if !by_symbol.contains_key(s.as_ref()) {
                return Err(Error::BlockMapIncomplete(s.as_ref().to_string()));
            }
        }
        let (graph, _) = raw.essentialize()?;
        let mut alphabet: Vec<String> = graph
            .names()
            .iter()
            .map(|s| by_symbol[s.as_str()].to_string())
            .collect();
        alphabet.sort();
        alphabet.dedup();
        let labels: Vec<YSym> = graph
            .names()
            .iter()
            .map(|s| {
                alphabet
                    .binary_search_by(|l| l.as_str().cmp(by_symbol[s.as_str()]))
                    .expect("alphabet was built from these labels")
            })
            .collect();
        Ok(FactorTriple::assemble(name.to_string(), graph, labels, alphabet))
    }

    /// Builds from an already essential graph and per-symbol letter indices
    /// into `alphabet`.
    pub fn from_parts(
        name: String,
        graph: SymbolGraph,
        labels: Vec<YSym>,
        alphabet: Vec<String>,
    ) -> Result<FactorTriple> {
        if !graph.is_essential() {
            let (graph, keep) = graph.essentialize()?;
            let labels = keep.iter().map(|&s| labels[s]).collect();
            return Ok(FactorTriple::assemble(name, graph, labels, alphabet));
        }
        Ok(FactorTriple::assemble(name, graph, labels, alphabet))
    }

    fn assemble(
        name: String,
        graph: SymbolGraph,
        labels: Vec<YSym>,
        alphabet: Vec<String>,
    ) -> FactorTriple {
        debug_assert_eq!(labels.len(), graph.len());
        let label_sets: Vec<BitSet> = (0..alphabet.len())
            .map(|y| {
                BitSet::from_indices(graph.len(), (0..graph.len()).filter(|&x| labels[x] == y))
            })
            .collect();
        let adj = graph.adjacency();
        let adj_t = adj.transpose();
        FactorTriple {
            name,
            graph,
            labels,
            alphabet,
            label_sets,
            adj,
            adj_t,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn graph(&self) -> &SymbolGraph {
        &self.graph
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn label(&self, x: XSym) -> YSym {
        self.labels[x]
    }

    pub fn label_name(&self, x: XSym) -> &str {
        &self.alphabet[self.labels[x]]
    }

    pub fn label_index(&self, letter: &str) -> Result<YSym> {
        self.alphabet
            .binary_search_by(|l| l.as_str().cmp(letter))
            .map_err(|_| Error::UnknownLabel(letter.to_string()))
    }

    pub fn label_set(&self, y: YSym) -> &BitSet {
        &self.label_sets[y]
    }

    /// Label word of a symbol word.
    pub fn image_of(&self, xs: &[XSym]) -> Vec<YSym> {
        xs.iter().map(|&x| self.labels[x]).collect()
    }

    pub fn word_from_names<S: AsRef<str>>(&self, parts: &[S]) -> Result<Vec<YSym>> {
        parts.iter().map(|p| self.label_index(p.as_ref())).collect()
    }

    /// Splits a plain string into letters, always taking the longest letter
    /// that matches next. Unambiguous for every alphabet in which no letter
    /// extends another inside a longer word's parse; words that defeat the
    /// greedy rule can be given letter by letter instead.
    pub fn parse_word(&self, s: &str) -> Result<Vec<YSym>> {
        let mut out = Vec::new();
        let mut rest = s;
        while !rest.is_empty() {
            let mut best: Option<YSym> = None;
            let mut best_len = 0;
            for (y, l) in self.alphabet.iter().enumerate() {
                if l.len() > best_len && rest.starts_with(l.as_str()) {
                    best = Some(y);
                    best_len = l.len();
                }
            }
            match best {
                Some(y) => {
                    out.push(y);
                    rest = &rest[best_len..];
                }
                None => return Err(Error::UnknownLabel(rest.to_string())),
            }
        }
        Ok(out)
    }

    pub fn format_word(&self, w: &[YSym]) -> String {
        w.iter().map(|&y| self.alphabet[y].as_str()).collect()
    }

    /// Walk relation of a label word: `(i, j)` is set iff some walk from `i`
    /// to `j` reads `w`. Zero exactly when `w` is not an image word.
    pub fn matrix_of(&self, w: &[YSym]) -> BitMatrix {
        assert!(!w.is_empty(), "word matrices are for nonempty words");
        let mut m = BitMatrix::diagonal(&self.label_sets[w[0]]);
        for &y in &w[1..] {
            m = self.extend_matrix(&m, y);
        }
        m
    }

    /// Matrix of `w` extended by one letter on the right.
    pub fn extend_matrix(&self, m: &BitMatrix, y: YSym) -> BitMatrix {
        let mut out = m.mul(&self.adj);
        out.mask_cols(&self.label_sets[y]);
        out
    }

    /// Matrix of `w` extended by one letter on the left.
    pub fn extend_matrix_left(&self, y: YSym, m: &BitMatrix) -> BitMatrix {
        let mut out = self.adj.mul(m);
        out.mask_rows(&self.label_sets[y]);
        out
    }

    /// Every image word of length 1 to `max_len`, in length-then-lex order.
    pub fn image_words_up_to(&self, max_len: usize) -> Vec<Vec<YSym>> {
        let mut out = Vec::new();
        if max_len == 0 {
            return out;
        }
        let mut frontier: Vec<(Vec<YSym>, BitMatrix)> = Vec::new();
        for y in 0..self.alphabet.len() {
            if !self.label_sets[y].is_empty() {
                frontier.push((vec![y], BitMatrix::diagonal(&self.label_sets[y])));
            }
        }
        for _ in 1..max_len {
            let mut next = Vec::new();
            for (w, m) in frontier {
                for y in 0..self.alphabet.len() {
                    let ext = self.extend_matrix(&m, y);
                    if !ext.is_zero() {
                        let mut word = w.clone();
                        word.push(y);
                        next.push((word, ext));
                    }
                }
                out.push(w);
            }
            frontier = next;
        }
        out.extend(frontier.into_iter().map(|(w, _)| w));
        out
    }

    pub fn word_matrix(&self, w: &[YSym]) -> WordMatrix {
        WordMatrix {
            word: w.to_vec(),
            matrix: self.matrix_of(w),
        }
    }

    pub fn contains_word(&self, w: &[YSym]) -> bool {
        !self.matrix_of(w).is_zero()
    }

    /// Successors of `from` that carry the letter `y`.
    pub fn step_forward(&self, from: &BitSet, y: YSym) -> BitSet {
        let mut out = BitSet::new(self.graph.len());
        for x in from.iter() {
            out.union_with(&self.adj.row(x));
        }
        out.intersect_with(&self.label_sets[y]);
        out
    }

    /// Predecessors of `to` that carry the letter `y`.
    pub fn step_backward(&self, to: &BitSet, y: YSym) -> BitSet {
        let mut out = BitSet::new(self.graph.len());
        for x in to.iter() {
            out.union_with(&self.adj_t.row(x));
        }
        out.intersect_with(&self.label_sets[y]);
        out
    }

    /// `forward_sets(w)[k]`: symbols reachable at position `k` along
    /// preimages of the prefix `w[..=k]`.
    pub fn forward_sets(&self, w: &[YSym]) -> Vec<BitSet> {
        let mut out = Vec::with_capacity(w.len());
        for &y in w {
            let next = match out.last() {
                None => self.label_sets[y].clone(),
                Some(prev) => self.step_forward(prev, y),
            };
            out.push(next);
        }
        out
    }

    /// `backward_sets(w)[k]`: symbols at position `k` from which the suffix
    /// `w[k..]` can be read.
    pub fn backward_sets(&self, w: &[YSym]) -> Vec<BitSet> {
        let mut out = Vec::with_capacity(w.len());
        for &y in w.iter().rev() {
            let next = match out.last() {
                None => self.label_sets[y].clone(),
                Some(prev) => self.step_backward(prev, y),
            };
            out.push(next);
        }
        out.reverse();
        out
    }

    /// Every walk labeled `w`, in lexicographic order on symbol sequences.
    /// Exponential in the worst case; intended for short words.
    pub fn preimage_walks(&self, w: &[YSym]) -> Vec<Vec<XSym>> {
        let mut walks: Vec<Vec<XSym>> = Vec::new();
        if w.is_empty() {
            return walks;
        }
        for x in self.label_sets[w[0]].iter() {
            walks.push(vec![x]);
        }
        for &y in &w[1..] {
            let mut next = Vec::new();
            for walk in walks {
                let last = *walk.last().unwrap();
                for &x in self.graph.successors(last) {
                    if self.labels[x] == y {
                        let mut ext = walk.clone();
                        ext.push(x);
                        next.push(ext);
                    }
                }
            }
            walks = next;
        }
        walks
    }

    /// The code with every edge reversed. Reading a word here is reading its
    /// reversal in the original, so the matrix of `w` is the transpose of the
    /// original matrix of `w` reversed.
    pub fn transpose(&self) -> FactorTriple {
        FactorTriple::assemble(
            self.name.clone(),
            self.graph.transpose(),
            self.labels.clone(),
            self.alphabet.clone(),
        )
    }
}

impl core::fmt::Debug for FactorTriple {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(
            f,
            "FactorTriple({:?}, {} symbols over {:?})",
            self.name,
            self.graph.len(),
            self.alphabet
        )
    }
}

/// A label word together with its walk relation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WordMatrix {
    pub word: Vec<YSym>,
    pub matrix: BitMatrix,
}

impl WordMatrix {
    pub fn first(&self) -> YSym {
        self.word[0]
    }

    pub fn last(&self) -> YSym {
        *self.word.last().expect("word matrices are nonempty")
    }
}
