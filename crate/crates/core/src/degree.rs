//! Fiber widths, magic blocks, diamonds and the degree.
//!
//! The width of an image word `w` at coordinate `k` is the number of symbols
//! that preimage walks of `w` can carry at position `k`. Minimizing over all
//! words and coordinates gives `d_min`; a word attaining it is a magic block.
//! For a finite-to-one code on an irreducible domain the degree equals
//! `d_min`, and finiteness itself is equivalent to the absence of a diamond:
//! two distinct equally labeled walks sharing both endpoints.

use alloc::vec;
use alloc::vec::Vec;

use crate::bits::BitSet;
use crate::graph::XSym;
use crate::monoid::{matrix_monoid, Exactness, MatrixMonoid};
use crate::triple::{FactorTriple, YSym};
use crate::{Error, Result};

/// Symbols preimage walks of `w` can carry at position `k`.
///
/// Computed as the meet of forward propagation along `w[..=k]` and backward
/// propagation along `w[k..]`; empty never escapes because `w` outside the
/// image is rejected first.
pub fn symbol_set_at(t: &FactorTriple, w: &[YSym], k: usize) -> Result<BitSet> {
    assert!(k < w.len(), "coordinate {k} outside word of length {}", w.len());
    if !t.contains_word(w) {
        return Err(Error::WordNotInImage);
    }
    let mut set = t.forward_sets(w).swap_remove(k);
    set.intersect_with(&t.backward_sets(w)[k]);
    Ok(set)
}

/// Minimal width of `w` over all coordinates, with the lowest attaining one.
pub fn d_of_word(t: &FactorTriple, w: &[YSym]) -> Result<(usize, usize)> {
    if !t.contains_word(w) {
        return Err(Error::WordNotInImage);
    }
    let forward = t.forward_sets(w);
    let backward = t.backward_sets(w);
    let mut best = (usize::MAX, 0);
    for k in 0..w.len() {
        let width = forward[k].intersection(&backward[k]).count();
        if width < best.0 {
            best = (width, k);
        }
    }
    Ok(best)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MagicReport {
    pub d_min: usize,
    pub witness_word: Vec<YSym>,
    pub witness_coordinate: usize,
    /// Exact when the matrix closure completed; otherwise the minimum is
    /// exhaustive only over words the capped closure still covers.
    pub status: Exactness,
}

/// Minimal fiber width over every image word.
///
/// Any cut of a word at coordinate `k` splits its matrix into a prefix and a
/// suffix element sharing the junction letter, and the width at `k` is
/// |column support of the prefix ∩ row support of the suffix|. Conversely
/// any two elements with matching junction letters concatenate (dropping the
/// shared letter once) to a word realizing exactly that intersection, so the
/// minimum over composable element pairs is the minimum over all (w, k).
pub fn magic_search(t: &FactorTriple, cap: usize) -> Result<MagicReport> {
    if !t.graph().is_irreducible() {
        return Err(Error::NotIrreducible);
    }
    let monoid = matrix_monoid(t, cap);
    let report = scan_pairs(t, &monoid, |prefix_cols, suffix_rows| {
        let width = prefix_cols.intersection(suffix_rows).count();
        if width == 0 {
            None
        } else {
            Some(width)
        }
    });
    let (d_min, witness_word, witness_coordinate) =
        report.expect("a single letter always has nonzero width");
    Ok(MagicReport {
        d_min,
        witness_word,
        witness_coordinate,
        status: monoid.exactness(),
    })
}

/// Runs `score` over every composable element pair and keeps the minimum,
/// tie-broken by shortest combined witness, then lexicographic word, then
/// lowest cut coordinate. Returns (score, word, cut).
pub(crate) fn scan_pairs(
    t: &FactorTriple,
    monoid: &MatrixMonoid,
    mut score: impl FnMut(&BitSet, &BitSet) -> Option<usize>,
) -> Option<(usize, Vec<YSym>, usize)> {
    let letters = t.alphabet().len();
    let mut by_first = vec![Vec::new(); letters];
    for (i, e) in monoid.elements.iter().enumerate() {
        by_first[e.first()].push(i);
    }
    let col_supports: Vec<BitSet> = monoid
        .elements
        .iter()
        .map(|e| e.matrix.col_support())
        .collect();
    let row_supports: Vec<BitSet> = monoid
        .elements
        .iter()
        .map(|e| e.matrix.row_support())
        .collect();

    let mut best: Option<(usize, Vec<YSym>, usize)> = None;
    for (i, e) in monoid.elements.iter().enumerate() {
        for &j in &by_first[e.last()] {
            let Some(value) = score(&col_supports[i], &row_supports[j]) else {
                continue;
            };
            let f = &monoid.elements[j];
            let better = match &best {
                None => true,
                Some((v, w, k)) => {
                    let len = e.witness.len() + f.witness.len() - 1;
                    (value, len) < (*v, w.len())
                        || ((value, len) == (*v, w.len()) && {
                            let mut cand = e.witness.clone();
                            cand.extend_from_slice(&f.witness[1..]);
                            (&cand, e.witness.len() - 1) < (w, *k)
                        })
                }
            };
            if better {
                let mut word = e.witness.clone();
                word.extend_from_slice(&f.witness[1..]);
                best = Some((value, word, e.witness.len() - 1));
            }
        }
    }
    best
}

/// Two distinct equally labeled walks sharing both endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diamond {
    pub upper: Vec<XSym>,
    pub lower: Vec<XSym>,
}

impl Diamond {
    pub fn labels(&self, t: &FactorTriple) -> Vec<YSym> {
        t.image_of(&self.upper)
    }
}

/// Checks every structural requirement of a claimed diamond.
pub fn verify_diamond(t: &FactorTriple, d: &Diamond) -> bool {
    d.upper.len() == d.lower.len()
        && d.upper.len() >= 2
        && d.upper != d.lower
        && d.upper.first() == d.lower.first()
        && d.upper.last() == d.lower.last()
        && t.graph().is_walk(&d.upper)
        && t.graph().is_walk(&d.lower)
        && t.image_of(&d.upper) == t.image_of(&d.lower)
}

/// Shortest diamond, or None exactly when the code is finite-to-one.
///
/// Searches the synchronized pair graph on equally labeled symbol pairs for
/// a walk from the diagonal back to the diagonal that leaves it in between.
/// First-discovery parents make the result the lexicographically least
/// shortest witness, comparing the two walks position by position.
pub fn find_diamond(t: &FactorTriple) -> Option<Diamond> {
    let n = t.graph().len();
    let id = |u: XSym, v: XSym, split: bool| (u * n + v) * 2 + split as usize;
    let mut parent: Vec<Option<usize>> = vec![None; 2 * n * n];
    let mut seen = vec![false; 2 * n * n];
    let mut queue = Vec::new();
    for s in 0..n {
        seen[id(s, s, false)] = true;
        queue.push(id(s, s, false));
    }
    let mut head = 0;
    while head < queue.len() {
        let state = queue[head];
        head += 1;
        let split = state % 2 == 1;
        let u = state / 2 / n;
        let v = state / 2 % n;
        for &nu in t.graph().successors(u) {
            for &nv in t.graph().successors(v) {
                if t.label(nu) != t.label(nv) {
                    continue;
                }
                let next = id(nu, nv, split || nu != nv);
                if seen[next] {
                    continue;
                }
                seen[next] = true;
                parent[next] = Some(state);
                if nu == nv && (split || nu != nv) {
                    return Some(rebuild(n, &parent, next));
                }
                queue.push(next);
            }
        }
    }
    None
}

fn rebuild(n: usize, parent: &[Option<usize>], accept: usize) -> Diamond {
    let mut upper = Vec::new();
    let mut lower = Vec::new();
    let mut state = Some(accept);
    while let Some(s) = state {
        upper.push(s / 2 / n);
        lower.push(s / 2 % n);
        state = parent[s];
    }
    upper.reverse();
    lower.reverse();
    Diamond { upper, lower }
}

/// Number of preimages of any doubly transitive image point.
///
/// Defined for finite-to-one codes on irreducible domains, where it equals
/// the minimal fiber width.
pub fn degree(t: &FactorTriple, cap: usize) -> Result<usize> {
    if !t.graph().is_irreducible() {
        return Err(Error::NotIrreducible);
    }
    if find_diamond(t).is_some() {
        return Err(Error::InfiniteToOne);
    }
    Ok(magic_search(t, cap)?.d_min)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::DEFAULT_CAP;

    fn parity() -> FactorTriple {
        FactorTriple::new(
            "parity",
            &["00", "01", "10", "11"],
            &[
                ("00", "00"),
                ("00", "01"),
                ("01", "10"),
                ("01", "11"),
                ("10", "00"),
                ("10", "01"),
                ("11", "10"),
                ("11", "11"),
            ],
            &[("00", "0"), ("01", "1"), ("10", "1"), ("11", "0")],
        )
        .unwrap()
    }

    fn identity() -> FactorTriple {
        FactorTriple::new(
            "golden",
            &["a", "b"],
            &[("a", "a"), ("a", "b"), ("b", "a")],
            &[("a", "a"), ("b", "b")],
        )
        .unwrap()
    }

    fn funnel() -> FactorTriple {
        FactorTriple::new(
            "funnel",
            &["a", "b"],
            &[("a", "a"), ("a", "b"), ("b", "b")],
            &[("a", "0"), ("b", "0")],
        )
        .unwrap()
    }

    #[test]
    fn widths_on_identity() {
        let t = identity();
        let w = t.parse_word("aba").unwrap();
        for k in 0..3 {
            assert_eq!(symbol_set_at(&t, &w, k).unwrap().count(), 1);
        }
        assert_eq!(d_of_word(&t, &w).unwrap(), (1, 0));
        let report = magic_search(&t, DEFAULT_CAP).unwrap();
        assert_eq!(report.d_min, 1);
        assert_eq!(report.witness_word.len(), 1);
        assert_eq!(report.status, Exactness::Exact);
        assert_eq!(degree(&t, DEFAULT_CAP).unwrap(), 1);
    }

    #[test]
    fn parity_is_two_to_one() {
        let t = parity();
        let w = t.parse_word("101").unwrap();
        for k in 0..3 {
            assert_eq!(symbol_set_at(&t, &w, k).unwrap().count(), 2);
        }
        assert!(find_diamond(&t).is_none());
        assert_eq!(degree(&t, DEFAULT_CAP).unwrap(), 2);
    }

    #[test]
    fn word_outside_image_is_rejected() {
        let t = identity();
        let w = t.parse_word("bb").unwrap();
        assert_eq!(symbol_set_at(&t, &w, 0), Err(Error::WordNotInImage));
        assert_eq!(d_of_word(&t, &w), Err(Error::WordNotInImage));
    }

    #[test]
    fn funnel_has_shortest_diamond() {
        let t = funnel();
        let d = find_diamond(&t).unwrap();
        assert!(verify_diamond(&t, &d));
        // a→a→b and a→b→b disagree strictly inside.
        assert_eq!(d.upper, vec![0, 0, 1]);
        assert_eq!(d.lower, vec![0, 1, 1]);
        assert_eq!(degree(&t, DEFAULT_CAP), Err(Error::NotIrreducible));
    }

    #[test]
    fn diamond_gate_precedes_width() {
        // Irreducible with a diamond: two parallel cycles through a shared
        // vertex, labels collapsed.
        let t = FactorTriple::new(
            "twin",
            &["s", "p", "q"],
            &[("s", "p"), ("s", "q"), ("p", "s"), ("q", "s")],
            &[("s", "0"), ("p", "1"), ("q", "1")],
        )
        .unwrap();
        let d = find_diamond(&t).unwrap();
        assert!(verify_diamond(&t, &d));
        assert_eq!(degree(&t, DEFAULT_CAP), Err(Error::InfiniteToOne));
        // Width is still well defined and 1 at the shared vertex.
        assert_eq!(magic_search(&t, DEFAULT_CAP).unwrap().d_min, 1);
    }

    #[test]
    fn tie_break_prefers_short_then_lex() {
        let t = parity();
        let report = magic_search(&t, DEFAULT_CAP).unwrap();
        assert_eq!(report.d_min, 2);
        // Every width is 2, so the witness must be the least single letter.
        assert_eq!(report.witness_word, t.parse_word("0").unwrap());
        assert_eq!(report.witness_coordinate, 0);
    }
}
