//! The finite collection of all word matrices of a code.
//!
//! Words are explored breadth-first in (length, lexicographic) order and
//! deduplicated by `(matrix, first letter, last letter)`: extending two words
//! with equal key by the same letter gives equal keys again, so the first
//! witness found for a key is its shortest lexicographically least word, and
//! expanding only stored witnesses still reaches every key.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::bits::BitMatrix;
use crate::triple::{FactorTriple, YSym};

/// Fallback bound on stored elements when the caller gives none.
pub const DEFAULT_CAP: usize = 1_000_000;

#[derive(Clone, Debug)]
pub struct MonoidElement {
    pub matrix: BitMatrix,
    /// Shortest, then lexicographically least, word with this matrix and
    /// these end letters.
    pub witness: Vec<YSym>,
}

impl MonoidElement {
    pub fn first(&self) -> YSym {
        self.witness[0]
    }

    pub fn last(&self) -> YSym {
        *self.witness.last().expect("witnesses are nonempty")
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ClosureStatus {
    /// The closure is complete: every image word's matrix is represented.
    Exact,
    /// The element cap stopped the search. Every image word of at most
    /// `covered_len` letters still has its key represented, so scans over the
    /// collection are exhaustive up to that length.
    Capped { covered_len: usize },
}

pub struct MatrixMonoid {
    /// In first-discovery order: nondecreasing witness length, lexicographic
    /// within a length.
    pub elements: Vec<MonoidElement>,
    pub status: ClosureStatus,
}

impl MatrixMonoid {
    pub fn is_exact(&self) -> bool {
        self.status == ClosureStatus::Exact
    }

    /// How far a minimum taken over all element pairs can be trusted.
    pub fn exactness(&self) -> Exactness {
        match self.status {
            ClosureStatus::Exact => Exactness::Exact,
            ClosureStatus::Capped { covered_len } => Exactness::UpToLength(covered_len),
        }
    }
}

/// Whether a reported optimum ranges over all image words or only over words
/// up to a length the capped closure still covers completely.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exactness {
    Exact,
    UpToLength(usize),
}

/// Closes the set of word matrices under extension by one letter, starting
/// from the single-letter words, keeping at most `cap` elements.
pub fn matrix_monoid(t: &FactorTriple, cap: usize) -> MatrixMonoid {
    let letters = t.alphabet().len();
    let mut seen: BTreeMap<(BitMatrix, YSym, YSym), ()> = BTreeMap::new();
    let mut elements: Vec<MonoidElement> = Vec::new();
    for y in 0..letters {
        let m = BitMatrix::diagonal(t.label_set(y));
        if m.is_zero() {
            continue;
        }
        seen.insert((m.clone(), y, y), ());
        elements.push(MonoidElement {
            matrix: m,
            witness: vec![y],
        });
    }
    let mut status = ClosureStatus::Exact;
    let mut next = 0;
    while next < elements.len() {
        if elements.len() >= cap {
            // Everything shorter than the first unexpanded witness has been
            // expanded, so words one letter longer than that are all keyed.
            status = ClosureStatus::Capped {
                covered_len: elements[next].witness.len(),
            };
            break;
        }
        for y in 0..letters {
            let m = t.extend_matrix(&elements[next].matrix, y);
            if m.is_zero() {
                continue;
            }
            let key = (m, elements[next].witness[0], y);
            if seen.contains_key(&key) {
                continue;
            }
            let mut w = elements[next].witness.clone();
            w.push(y);
            elements.push(MonoidElement {
                matrix: key.0.clone(),
                witness: w,
            });
            seen.insert(key, ());
        }
        next += 1;
    }
    MatrixMonoid { elements, status }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triple::FactorTriple;

    fn golden_identity() -> FactorTriple {
        FactorTriple::new(
            "gm",
            &["a", "b"],
            &[("a", "a"), ("a", "b"), ("b", "a")],
            &[("a", "a"), ("b", "b")],
        )
        .unwrap()
    }

    #[test]
    fn identity_code_monoid_is_the_walk_relation() {
        let t = golden_identity();
        let mon = matrix_monoid(&t, DEFAULT_CAP);
        assert!(mon.is_exact());
        // One element per ordered symbol pair joined by a walk; "aa" and
        // "bab" collapse onto "a" and "b".
        assert_eq!(mon.elements.len(), 4);
        let words: Vec<_> = mon
            .elements
            .iter()
            .map(|e| t.format_word(&e.witness))
            .collect();
        assert_eq!(words, vec!["a", "b", "ab", "ba"]);
        for e in &mon.elements {
            assert_eq!(e.matrix, t.matrix_of(&e.witness));
            assert_eq!(e.matrix.pairs().count(), 1);
        }
    }

    #[test]
    fn witnesses_are_shortest_then_lex() {
        let t = golden_identity();
        let mon = matrix_monoid(&t, DEFAULT_CAP);
        for (i, e) in mon.elements.iter().enumerate() {
            for f in &mon.elements[i + 1..] {
                let shorter = e.witness.len() < f.witness.len();
                let lex = e.witness.len() == f.witness.len() && e.witness < f.witness;
                assert!(shorter || lex);
            }
        }
    }

    #[test]
    fn cap_reports_covered_length() {
        let t = golden_identity();
        // Cap 3 stops before "b" is expanded, so only length 1 is covered;
        // cap 4 expands both letters and covers length 2.
        let mon = matrix_monoid(&t, 3);
        assert_eq!(mon.status, ClosureStatus::Capped { covered_len: 1 });
        assert!(mon.elements.len() >= 3);
        let mon = matrix_monoid(&t, 4);
        assert_eq!(mon.status, ClosureStatus::Capped { covered_len: 2 });
    }

    #[test]
    fn parity_monoid_closes() {
        let t = FactorTriple::new(
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
        .unwrap();
        let mon = matrix_monoid(&t, DEFAULT_CAP);
        assert!(mon.is_exact());
        for e in &mon.elements {
            assert_eq!(e.matrix, t.matrix_of(&e.witness));
            // Each start symbol reads a word along exactly one walk.
            assert_eq!(e.matrix.pairs().count(), 2);
        }
    }
}
