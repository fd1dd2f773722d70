//! Recoding block maps to one-block form, presenting the image shift, and
//! composing codes.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::bits::BitSet;
use crate::graph::{SymbolGraph, XSym};
use crate::triple::FactorTriple;
use crate::{Error, Result};

/// A block map with memory and anticipation, total on every walk of length
/// memory + anticipation + 1.
#[derive(Clone, Debug)]
pub struct SlidingBlockCode {
    pub memory: usize,
    pub anticipation: usize,
    map: BTreeMap<Vec<XSym>, String>,
}

impl SlidingBlockCode {
    pub fn new<S: AsRef<str>>(
        g: &SymbolGraph,
        memory: usize,
        anticipation: usize,
        rules: &[(&[S], S)],
    ) -> Result<SlidingBlockCode> {
        let width = memory + anticipation + 1;
        let mut map = BTreeMap::new();
        for (window, label) in rules {
            assert_eq!(window.len(), width, "rule width is memory+anticipation+1");
            let mut idx = Vec::with_capacity(width);
            for s in window.iter() {
                idx.push(g.index_of(s.as_ref())?);
            }
            map.insert(idx, label.as_ref().to_string());
        }
        for w in g.walks(width) {
            if !map.contains_key(&w) {
                let name: String = w.iter().map(|&s| g.name(s)).collect();
                return Err(Error::BlockMapIncomplete(name));
            }
        }
        Ok(SlidingBlockCode {
            memory,
            anticipation,
            map,
        })
    }

    pub fn width(&self) -> usize {
        self.memory + self.anticipation + 1
    }

    pub fn label_of(&self, window: &[XSym]) -> Option<&str> {
        self.map.get(window).map(String::as_str)
    }
}

/// One-block presentation of a sliding block code: symbols are the walks of
/// the map's width, each labeled by its own image. The result is conjugate
/// to the original code up to a power of the shift, which degree and class
/// degree do not see.
pub fn recode_one_block(
    g: &SymbolGraph,
    code: &SlidingBlockCode,
    name: &str,
) -> Result<FactorTriple> {
    let hb = g.higher_block(code.width())?;
    let symbols = hb.graph.names().to_vec();
    let edges: Vec<(String, String)> = hb
        .graph
        .edges()
        .map(|(u, v)| (symbols[u].clone(), symbols[v].clone()))
        .collect();
    let labels: Vec<(String, String)> = hb
        .blocks
        .iter()
        .enumerate()
        .map(|(i, block)| {
            let l = code.label_of(block).expect("map is total on walks");
            (symbols[i].clone(), l.to_string())
        })
        .collect();
    let edges: Vec<(&str, &str)> = edges.iter().map(|(u, v)| (u.as_str(), v.as_str())).collect();
    let labels: Vec<(&str, &str)> = labels.iter().map(|(s, l)| (s.as_str(), l.as_str())).collect();
    let names: Vec<&str> = symbols.iter().map(String::as_str).collect();
    FactorTriple::new(name, &names, &edges, &labels)
}

/// The same code presented on the `n`-block shift: block symbols inherit the
/// label of their first base symbol. Degree-like quantities are invariant
/// under this recoding.
pub fn higher_block_triple(t: &FactorTriple, n: usize) -> Result<FactorTriple> {
    let hb = t.graph().higher_block(n)?;
    let symbols = hb.graph.names().to_vec();
    let edges: Vec<(String, String)> = hb
        .graph
        .edges()
        .map(|(u, v)| (symbols[u].clone(), symbols[v].clone()))
        .collect();
    let labels: Vec<(String, String)> = hb
        .blocks
        .iter()
        .enumerate()
        .map(|(i, block)| (symbols[i].clone(), t.label_name(block[0]).to_string()))
        .collect();
    let edges: Vec<(&str, &str)> = edges.iter().map(|(u, v)| (u.as_str(), v.as_str())).collect();
    let labels: Vec<(&str, &str)> = labels.iter().map(|(s, l)| (s.as_str(), l.as_str())).collect();
    let names: Vec<&str> = symbols.iter().map(String::as_str).collect();
    FactorTriple::new(&format!("{}[{}]", t.name(), n), &names, &edges, &labels)
}

/// Deterministic presentation of a label language by follower subsets: a
/// word is in the language iff reading it from the seed never empties the
/// subset. State 0 is the seed (all symbols); empty subsets are not stored.
#[derive(Clone, Debug)]
pub struct SoficPresentation {
    pub alphabet: Vec<String>,
    pub states: Vec<BitSet>,
    /// `trans[state][letter]`, `None` where the subset empties.
    pub trans: Vec<Vec<Option<usize>>>,
}

impl SoficPresentation {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    /// Letters are indices into this presentation's own alphabet.
    pub fn accepts(&self, word: &[usize]) -> bool {
        let mut state = 0;
        for &y in word {
            match self.trans[state][y] {
                Some(next) => state = next,
                None => return false,
            }
        }
        true
    }

    fn letter(&self, name: &str) -> Option<usize> {
        self.alphabet.iter().position(|l| l == name)
    }
}

fn determinize(
    n: usize,
    alphabet: Vec<String>,
    step: impl Fn(&BitSet, usize) -> BitSet,
) -> SoficPresentation {
    let seed = BitSet::from_indices(n, 0..n);
    let mut states = vec![seed.clone()];
    let mut index = BTreeMap::from([(seed, 0usize)]);
    let mut trans: Vec<Vec<Option<usize>>> = Vec::new();
    let mut head = 0;
    while head < states.len() {
        let mut row = Vec::with_capacity(alphabet.len());
        for y in 0..alphabet.len() {
            let next = step(&states[head], y);
            if next.is_empty() {
                row.push(None);
                continue;
            }
            let id = *index.entry(next.clone()).or_insert_with(|| {
                states.push(next);
                states.len() - 1
            });
            row.push(Some(id));
        }
        trans.push(row);
        head += 1;
    }
    SoficPresentation {
        alphabet,
        states,
        trans,
    }
}

/// Presentation of B(Y): follower subsets of domain symbols under labeled
/// steps. Agrees with word matrices: accepted iff the matrix is nonzero.
pub fn image_presentation(t: &FactorTriple) -> SoficPresentation {
    let n = t.graph().len();
    determinize(n, t.alphabet().to_vec(), |set, y| {
        let mut next = BitSet::new(n);
        for s in set.iter() {
            for &s2 in t.graph().successors(s) {
                if t.label(s2) == y {
                    next.insert(s2);
                }
            }
        }
        next
    })
}

/// Presentation of the walk language of a graph, each symbol its own letter.
pub fn domain_presentation(g: &SymbolGraph) -> SoficPresentation {
    let n = g.len();
    determinize(n, g.names().to_vec(), |set, s| {
        let mut next = BitSet::new(n);
        if g.predecessors(s).iter().any(|&u| set.contains(u)) {
            next.insert(s);
        }
        next
    })
}

/// Whether every word of `a`'s language is in `b`'s, matching letters by
/// name. Product walk over reachable state pairs.
pub fn language_contained(a: &SoficPresentation, b: &SoficPresentation) -> bool {
    let to_b: Vec<Option<usize>> = a.alphabet.iter().map(|l| b.letter(l)).collect();
    let mut seen = BTreeMap::from([((0usize, 0usize), ())]);
    let mut queue = vec![(0usize, 0usize)];
    while let Some((sa, sb)) = queue.pop() {
        for y in 0..a.alphabet.len() {
            let Some(na) = a.trans[sa][y] else { continue };
            let nb = to_b[y].and_then(|l| b.trans[sb][l]);
            let Some(nb) = nb else { return false };
            if seen.insert((na, nb), ()).is_none() {
                queue.push((na, nb));
            }
        }
    }
    true
}

pub fn same_language(a: &SoficPresentation, b: &SoficPresentation) -> bool {
    language_contained(a, b) && language_contained(b, a)
}

/// Result of composing two codes, applying `first` then `second`.
#[derive(Debug)]
pub struct Composition {
    pub triple: FactorTriple,
    /// The second domain is strictly larger than the first image. Allowed
    /// by default since the composite is still well defined; `strict`
    /// upgrades it to an error.
    pub image_proper: bool,
}

pub fn compose(
    first: &FactorTriple,
    second: &FactorTriple,
    strict: bool,
) -> Result<Composition> {
    for l in first.alphabet() {
        if second.graph().index_of(l).is_err() {
            return Err(Error::CodomainMismatch(l.clone()));
        }
    }
    let img = image_presentation(first);
    let dom = domain_presentation(second.graph());
    if !language_contained(&img, &dom) {
        return Err(Error::LanguageNotContained);
    }
    let image_proper = !language_contained(&dom, &img);
    if strict && image_proper {
        return Err(Error::ImageStrictlySmaller);
    }
    let g = first.graph();
    let names: Vec<&str> = g.names().iter().map(String::as_str).collect();
    let edges: Vec<(&str, &str)> = g
        .edges()
        .map(|(u, v)| (g.name(u), g.name(v)))
        .collect();
    let labels: Vec<(&str, String)> = (0..g.len())
        .map(|x| {
            let mid = second.graph().index_of(first.label_name(x)).expect("checked");
            (g.name(x), second.label_name(mid).to_string())
        })
        .collect();
    let labels: Vec<(&str, &str)> = labels.iter().map(|(s, l)| (*s, l.as_str())).collect();
    let triple = FactorTriple::new(
        &format!("{}.{}", second.name(), first.name()),
        &names,
        &edges,
        &labels,
    )?;
    Ok(Composition {
        triple,
        image_proper,
    })
}
