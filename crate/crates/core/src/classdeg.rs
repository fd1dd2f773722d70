//! Routing families, transition blocks and the class degree.
//!
//! Cutting an image word `w` at an interior coordinate `n` sorts its
//! preimage walks by endpoint pair; the routing set of a pair collects the
//! symbols those walks can carry at position `n`. A set `M` of symbols such
//! that every routing set meets `M` is a transition block, and the class
//! degree is the smallest depth |M| over all words and cuts.
//!
//! The search never touches words directly: a cut corresponds to a
//! composable pair of word matrices, the routing family depends only on the
//! two matrices, and prepending or appending a letter turns routing sets
//! into unions of old ones, so hitting sets survive and the minimum over all
//! composable element pairs equals the minimum over interior cuts.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::bits::{BitMatrix, BitSet};
use crate::graph::XSym;
use crate::monoid::{matrix_monoid, Exactness};
use crate::triple::{FactorTriple, YSym};
use crate::{Error, Result};

/// Routing sets of one word cut: for every realizable endpoint pair, the
/// symbols preimage walks can carry at the cut.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoutingProfile {
    pub word: Vec<YSym>,
    pub coordinate: usize,
    pub pairs: Vec<(XSym, XSym, BitSet)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionBlockCert {
    pub word: Vec<YSym>,
    pub coordinate: usize,
    pub symbols: BitSet,
}

impl TransitionBlockCert {
    pub fn depth(&self) -> usize {
        self.symbols.count()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassDegreeReport {
    pub value: usize,
    /// Exact when the matrix closure completed; otherwise the minimum over
    /// words the capped closure still covers.
    pub status: Exactness,
    pub certificate: TransitionBlockCert,
}

fn check_cut(w: &[YSym], n: usize) -> Result<()> {
    if w.len() < 3 || n == 0 || n >= w.len() - 1 {
        return Err(Error::CoordinateNotInterior);
    }
    Ok(())
}

/// Routing sets of every realizable pair from the matrices of `w[..=n]` and
/// `w[n..]`.
fn profile_from(t: &FactorTriple, prefix: &BitMatrix, suffix: &BitMatrix) -> Vec<(XSym, XSym, BitSet)> {
    let n = t.graph().len();
    let mut out = Vec::new();
    for i in 0..n {
        if prefix.row_is_zero(i) {
            continue;
        }
        let reach = prefix.row(i);
        for tgt in 0..n {
            let mut set = BitSet::new(n);
            for a in reach.iter() {
                if suffix.get(a, tgt) {
                    set.insert(a);
                }
            }
            if !set.is_empty() {
                out.push((i, tgt, set));
            }
        }
    }
    out
}

pub fn routing_profile(t: &FactorTriple, w: &[YSym], n: usize) -> Result<RoutingProfile> {
    check_cut(w, n)?;
    if !t.contains_word(w) {
        return Err(Error::WordNotInImage);
    }
    let prefix = t.matrix_of(&w[..=n]);
    let suffix = t.matrix_of(&w[n..]);
    Ok(RoutingProfile {
        word: w.to_vec(),
        coordinate: n,
        pairs: profile_from(t, &prefix, &suffix),
    })
}

/// True iff every preimage walk of `w` can be rerouted through some symbol
/// of `m` at position `n` without moving its endpoints.
pub fn is_transition_block(t: &FactorTriple, w: &[YSym], n: usize, m: &BitSet) -> Result<bool> {
    let profile = routing_profile(t, w, n)?;
    if !m.is_subset_of(&t.label_set(w[n])) {
        return Ok(false);
    }
    Ok(profile.pairs.iter().all(|(_, _, set)| set.intersects(m)))
}

/// Like [`is_transition_block`], but a boundary coordinate is accepted when
/// every one-letter extension keeping the word in the image admits the same
/// `m` at the transported, now interior, cut.
pub fn verify_transition_block(t: &FactorTriple, w: &[YSym], n: usize, m: &BitSet) -> Result<bool> {
    assert!(n < w.len());
    if w.len() >= 3 && n >= 1 && n <= w.len() - 2 {
        return is_transition_block(t, w, n, m);
    }
    if !t.contains_word(w) {
        return Err(Error::WordNotInImage);
    }
    let letters = t.alphabet().len();
    let mut embeddings = vec![(w.to_vec(), n)];
    if n == 0 {
        let mut next = Vec::new();
        for (word, k) in embeddings {
            for y in 0..letters {
                let mut ext = vec![y];
                ext.extend_from_slice(&word);
                if t.contains_word(&ext) {
                    next.push((ext, k + 1));
                }
            }
        }
        embeddings = next;
    }
    for (word, k) in &embeddings {
        if *k == word.len() - 1 {
            let mut any = false;
            for y in 0..letters {
                let mut ext = word.clone();
                ext.push(y);
                if t.contains_word(&ext) {
                    any = true;
                    if !is_transition_block(t, &ext, *k, m)? {
                        return Ok(false);
                    }
                }
            }
            assert!(any, "image words always extend");
        } else if !is_transition_block(t, word, *k, m)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Lexicographically least minimum hitting set of `sets` (all nonempty).
fn min_hitting_set(universe: usize, sets: &[BitSet]) -> BitSet {
    let mut candidates = BitSet::new(universe);
    for s in sets {
        candidates.union_with(s);
    }
    let order: Vec<usize> = candidates.iter().collect();
    let mut chosen = Vec::new();
    for size in 1..=order.len() {
        if pick(&order, sets, universe, size, 0, &mut chosen) {
            return BitSet::from_indices(universe, chosen.iter().copied());
        }
        debug_assert!(chosen.is_empty());
    }
    unreachable!("the union of the sets is always a hitting set");
}

fn pick(
    order: &[usize],
    sets: &[BitSet],
    universe: usize,
    size: usize,
    from: usize,
    chosen: &mut Vec<usize>,
) -> bool {
    if chosen.len() == size {
        let m = BitSet::from_indices(universe, chosen.iter().copied());
        return sets.iter().all(|s| s.intersects(&m));
    }
    for idx in from..order.len() {
        if order.len() - idx < size - chosen.len() {
            break;
        }
        chosen.push(order[idx]);
        if pick(order, sets, universe, size, idx + 1, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Minimal transition block of one word: over interior cuts, the exact
/// minimum hitting set of the routing family; lowest cut, then
/// lexicographically least set, on ties.
pub fn min_depth_at(t: &FactorTriple, w: &[YSym]) -> Result<TransitionBlockCert> {
    check_cut(w, 1)?;
    if !t.contains_word(w) {
        return Err(Error::WordNotInImage);
    }
    let mut best: Option<TransitionBlockCert> = None;
    for n in 1..w.len() - 1 {
        let profile = routing_profile(t, w, n)?;
        let sets: Vec<BitSet> = profile.pairs.into_iter().map(|(_, _, s)| s).collect();
        let m = min_hitting_set(t.graph().len(), &sets);
        let better = match &best {
            None => true,
            Some(b) => m.count() < b.depth(),
        };
        if better {
            best = Some(TransitionBlockCert {
                word: w.to_vec(),
                coordinate: n,
                symbols: m,
            });
        }
    }
    Ok(best.expect("interior coordinates were checked"))
}

/// Class degree: minimal depth of a transition block, over all words.
///
/// Scans composable monoid element pairs; the routing family of a pair
/// depends only on the distinct nonzero rows of the prefix and columns of
/// the suffix, which keys a memo across pairs. The certificate is rebuilt
/// from the pair witnesses, embedded one letter outward when a witness is a
/// single letter so the cut lands interior.
pub fn class_degree(t: &FactorTriple, cap: usize) -> Result<ClassDegreeReport> {
    if !t.graph().is_irreducible() {
        return Err(Error::NotIrreducible);
    }
    let monoid = matrix_monoid(t, cap);
    let n = t.graph().len();
    let rows: Vec<Vec<BitSet>> = monoid
        .elements
        .iter()
        .map(|e| distinct_rows(&e.matrix))
        .collect();
    let cols: Vec<Vec<BitSet>> = monoid
        .elements
        .iter()
        .map(|e| distinct_rows(&e.matrix.transpose()))
        .collect();
    let mut by_first = vec![Vec::new(); t.alphabet().len()];
    for (i, e) in monoid.elements.iter().enumerate() {
        by_first[e.first()].push(i);
    }

    let mut memo: BTreeMap<(&[BitSet], &[BitSet]), Option<BitSet>> = BTreeMap::new();
    let mut best: Option<(BitSet, Vec<YSym>, usize)> = None;
    for (i, e) in monoid.elements.iter().enumerate() {
        for &j in &by_first[e.last()] {
            let f = &monoid.elements[j];
            let m = memo
                .entry((rows[i].as_slice(), cols[j].as_slice()))
                .or_insert_with(|| family_hitting_set(n, &rows[i], &cols[j]))
                .clone();
            let Some(m) = m else { continue };
            let better = match &best {
                None => true,
                Some((bm, bw, bk)) => {
                    let len = e.witness.len() + f.witness.len() - 1;
                    (m.count(), len) < (bm.count(), bw.len()) || {
                        (m.count(), len) == (bm.count(), bw.len()) && {
                            let mut cand = e.witness.clone();
                            cand.extend_from_slice(&f.witness[1..]);
                            (&cand, e.witness.len() - 1, &m) < (bw, *bk, bm)
                        }
                    }
                }
            };
            if better {
                let mut word = e.witness.clone();
                word.extend_from_slice(&f.witness[1..]);
                best = Some((m, word, e.witness.len() - 1));
            }
        }
    }
    let (m, word, k) = best.expect("an irreducible domain has composable pairs");
    let (word, k) = embed_interior(t, word, k);
    let certificate = TransitionBlockCert {
        word,
        coordinate: k,
        symbols: m,
    };
    assert!(
        is_transition_block(t, &certificate.word, certificate.coordinate, &certificate.symbols)?,
        "search produced a non-verifying certificate"
    );
    Ok(ClassDegreeReport {
        value: certificate.depth(),
        status: monoid.exactness(),
        certificate,
    })
}

/// Same minimum restricted to words of at most `max_len` letters, by direct
/// enumeration. An upper bound for the exact value, nonincreasing in
/// `max_len`.
pub fn class_degree_bounded(t: &FactorTriple, max_len: usize) -> Result<ClassDegreeReport> {
    if !t.graph().is_irreducible() {
        return Err(Error::NotIrreducible);
    }
    let mut best: Option<TransitionBlockCert> = None;
    for w in t.image_words_up_to(max_len) {
        if w.len() < 3 {
            continue;
        }
        let cert = min_depth_at(t, &w)?;
        let better = match &best {
            None => true,
            Some(b) => {
                (cert.depth(), cert.word.len()) < (b.depth(), b.word.len())
                    || ((cert.depth(), cert.word.len()) == (b.depth(), b.word.len())
                        && (&cert.word, cert.coordinate, &cert.symbols)
                            < (&b.word, b.coordinate, &b.symbols))
            }
        };
        if better {
            best = Some(cert);
        }
    }
    let certificate = best.ok_or(Error::CoordinateNotInterior)?;
    Ok(ClassDegreeReport {
        value: certificate.depth(),
        status: Exactness::UpToLength(max_len),
        certificate,
    })
}

fn distinct_rows(m: &BitMatrix) -> Vec<BitSet> {
    let mut rows: Vec<BitSet> = (0..m.size())
        .filter(|&i| !m.row_is_zero(i))
        .map(|i| m.row(i))
        .collect();
    rows.sort();
    rows.dedup();
    rows
}

/// Minimum hitting set of the family {row ∩ col ≠ ∅}, or None when the two
/// matrices do not compose to a nonzero product.
fn family_hitting_set(universe: usize, rows: &[BitSet], cols: &[BitSet]) -> Option<BitSet> {
    let mut sets = Vec::new();
    for r in rows {
        for c in cols {
            let s = r.intersection(c);
            if !s.is_empty() {
                sets.push(s);
            }
        }
    }
    if sets.is_empty() {
        return None;
    }
    sets.sort();
    sets.dedup();
    Some(min_hitting_set(universe, &sets))
}

/// Pushes a cut to an interior coordinate by prepending or appending the
/// least letters that keep the word in the image.
fn embed_interior(t: &FactorTriple, mut word: Vec<YSym>, mut k: usize) -> (Vec<YSym>, usize) {
    let letters = t.alphabet().len();
    while k == 0 {
        let y = (0..letters)
            .find(|&y| {
                let mut ext = vec![y];
                ext.extend_from_slice(&word);
                t.contains_word(&ext)
            })
            .expect("image words always extend");
        word.insert(0, y);
        k += 1;
    }
    while k + 2 > word.len() {
        let y = (0..letters)
            .find(|&y| {
                let mut ext = word.clone();
                ext.push(y);
                t.contains_word(&ext)
            })
            .expect("image words always extend");
        word.push(y);
    }
    (word, k)
}

/// One extension pair of a certificate that is not routed through exactly
/// one certificate symbol.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoutingViolation {
    pub word: Vec<YSym>,
    pub coordinate: usize,
    pub start: XSym,
    pub end: XSym,
    pub routed: BitSet,
}

/// Checks that within every extension of the certificate word (total length
/// at most `max_len`), every realizable pair routes through exactly one
/// certificate symbol. Violations witness either a broken certificate or a
/// reducible domain.
pub fn check_unique_routability(
    t: &FactorTriple,
    cert: &TransitionBlockCert,
    max_len: usize,
) -> Result<Vec<RoutingViolation>> {
    check_cut(&cert.word, cert.coordinate)?;
    if !t.contains_word(&cert.word) {
        return Err(Error::WordNotInImage);
    }
    let mut violations = Vec::new();
    let budget = max_len.saturating_sub(cert.word.len());
    for left in extensions(t, &cert.word, budget, true) {
        let mut w = left.clone();
        w.extend_from_slice(&cert.word);
        let inner_budget = budget - left.len();
        for right in extensions(t, &w, inner_budget, false) {
            let mut word = w.clone();
            word.extend_from_slice(&right);
            let profile = routing_profile(t, &word, cert.coordinate + left.len())?;
            for (start, end, set) in profile.pairs {
                let routed = set.intersection(&cert.symbols);
                if routed.count() != 1 {
                    violations.push(RoutingViolation {
                        word: word.clone(),
                        coordinate: cert.coordinate + left.len(),
                        start,
                        end,
                        routed,
                    });
                }
            }
        }
    }
    Ok(violations)
}

/// All words (including the empty one) extending `w` on one side within the
/// image, up to `budget` letters, shortest first.
fn extensions(t: &FactorTriple, w: &[YSym], budget: usize, left: bool) -> Vec<Vec<YSym>> {
    let letters = t.alphabet().len();
    let mut out = vec![Vec::new()];
    let mut frontier: Vec<(Vec<YSym>, BitMatrix)> = vec![(Vec::new(), t.matrix_of(w))];
    for _ in 0..budget {
        let mut next = Vec::new();
        for (ext, m) in frontier {
            for y in 0..letters {
                let grown = if left {
                    t.extend_matrix_left(y, &m)
                } else {
                    t.extend_matrix(&m, y)
                };
                if grown.is_zero() {
                    continue;
                }
                let mut e = ext.clone();
                if left {
                    e.insert(0, y);
                } else {
                    e.push(y);
                }
                out.push(e.clone());
                next.push((e, grown));
            }
        }
        frontier = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::DEFAULT_CAP;

    fn identity() -> FactorTriple {
        FactorTriple::new(
            "golden",
            &["a", "b"],
            &[("a", "a"), ("a", "b"), ("b", "a")],
            &[("a", "a"), ("b", "b")],
        )
        .unwrap()
    }

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

    fn two_loops() -> FactorTriple {
        FactorTriple::new(
            "loops",
            &["a", "b"],
            &[("a", "a"), ("a", "b"), ("b", "b")],
            &[("a", "0"), ("b", "0")],
        )
        .unwrap()
    }

    #[test]
    fn hitting_set_is_lex_least_minimum() {
        let sets = [
            BitSet::from_indices(5, [0, 3]),
            BitSet::from_indices(5, [1, 3]),
            BitSet::from_indices(5, [2, 4]),
        ];
        let m = min_hitting_set(5, &sets);
        assert_eq!(m, BitSet::from_indices(5, [2, 3]));
    }

    #[test]
    fn identity_certificate() {
        let t = identity();
        let report = class_degree(&t, DEFAULT_CAP).unwrap();
        assert_eq!(report.value, 1);
        assert_eq!(report.status, Exactness::Exact);
        let c = &report.certificate;
        assert!(is_transition_block(&t, &c.word, c.coordinate, &c.symbols).unwrap());
    }

    #[test]
    fn parity_needs_both_symbols() {
        let t = parity();
        let report = class_degree(&t, DEFAULT_CAP).unwrap();
        assert_eq!(report.value, 2);
        let w = t.parse_word("101").unwrap();
        let cert = min_depth_at(&t, &w).unwrap();
        assert_eq!(cert.depth(), 2);
        assert!(check_unique_routability(&t, &cert, 6).unwrap().is_empty());
    }

    #[test]
    fn two_loops_violate_unique_routing() {
        let t = two_loops();
        let w = t.parse_word("000").unwrap();
        let cert = min_depth_at(&t, &w).unwrap();
        assert_eq!(cert.depth(), 2);
        assert_eq!(cert.symbols, BitSet::from_indices(2, [0, 1]));
        let violations = check_unique_routability(&t, &cert, 3).unwrap();
        // The walk from the a-loop to the b-loop may switch at either time.
        assert!(!violations.is_empty());
        assert!(violations.iter().any(|v| v.routed.count() == 2));
    }

    #[test]
    fn profiles_reject_bad_cuts() {
        let t = identity();
        let w = t.parse_word("aba").unwrap();
        assert_eq!(
            routing_profile(&t, &w, 0).unwrap_err(),
            Error::CoordinateNotInterior
        );
        assert_eq!(
            routing_profile(&t, &w, 2).unwrap_err(),
            Error::CoordinateNotInterior
        );
        let bad = t.parse_word("bba").unwrap();
        assert_eq!(
            min_depth_at(&t, &bad).unwrap_err(),
            Error::WordNotInImage
        );
    }

    #[test]
    fn boundary_blocks_verify_by_embedding() {
        let t = parity();
        // A single letter has no interior cut; embedding accepts the full
        // fiber.
        let w = t.parse_word("0").unwrap();
        let m = t.label_set(w[0]).clone();
        assert!(verify_transition_block(&t, &w, 0, &m).unwrap());
        // A proper subset cannot route everything.
        let half = BitSet::from_indices(4, t.label_set(w[0]).iter().take(1));
        assert!(!verify_transition_block(&t, &w, 0, &half).unwrap());
    }

    #[test]
    fn bounded_mode_matches_exact_on_small_lengths() {
        let t = parity();
        let exact = class_degree(&t, DEFAULT_CAP).unwrap();
        let bounded = class_degree_bounded(&t, 5).unwrap();
        assert_eq!(bounded.value, exact.value);
        assert_eq!(bounded.status, Exactness::UpToLength(5));
    }
}
