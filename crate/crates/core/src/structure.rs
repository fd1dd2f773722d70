//! Structure carried by minimal transition blocks: the permutation a block
//! induces between two crossings of the same word, partitions of magic-block
//! preimages by class evidence from periodic contexts, per-letter tables with
//! a partition-existence verdict, the class degree bound under composition,
//! and diamonds relative to a proper subshift of the domain.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::bits::BitSet;
use crate::classdeg::{class_degree, verify_transition_block, TransitionBlockCert};
use crate::codes::{compose, image_presentation, same_language};
use crate::degree::{d_of_word, magic_search, symbol_set_at};
use crate::error::Error;
use crate::Result;
use crate::fibers::{class_restriction, periodic_classes, periodic_words};
use crate::graph::XSym;
use crate::triple::{FactorTriple, YSym};

/// Pairing of block symbols forced by reading `w v w`: every preimage
/// entering through `a ∈ M` at the first crossing of `w` leaves through
/// `τ(a) ∈ M` at the second.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauPermutation {
    pub word: Vec<YSym>,
    pub coordinate: usize,
    pub symbols: BitSet,
    pub bridge: Vec<YSym>,
    /// Pairs (a, τ(a)), ascending in a.
    pub map: Vec<(XSym, XSym)>,
}

impl TauPermutation {
    pub fn image_of(&self, a: XSym) -> Option<XSym> {
        self.map.iter().find(|&&(s, _)| s == a).map(|&(_, b)| b)
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().all(|&(a, b)| a == b)
    }
}

/// The permutation of `cert.symbols` induced by the bridge `v`.
///
/// A walk from the first cut to the second reads `w[n..] v w[..=n]`, and
/// gluing an incoming `w[..=n]` walk and an outgoing `w[n..]` walk onto its
/// ends recovers a full preimage of `w v w`. The pairing is read off the
/// word matrices; depth minimality makes it single-valued, which is
/// asserted rather than trusted.
pub fn tau_permutation(
    t: &FactorTriple,
    cert: &TransitionBlockCert,
    bridge: &[YSym],
    cap: usize,
) -> Result<TauPermutation> {
    let w = &cert.word;
    let n = cert.coordinate;
    let m = &cert.symbols;
    if !verify_transition_block(t, w, n, m)? {
        return Err(Error::NotTransitionBlock);
    }
    if cert.depth() != class_degree(t, cap)?.value {
        return Err(Error::NotMinimal);
    }
    let mut u = w.clone();
    u.extend_from_slice(bridge);
    u.extend_from_slice(w);
    if !t.contains_word(&u) {
        return Err(Error::BridgeNotInImage);
    }
    let mut mid = w[n..].to_vec();
    mid.extend_from_slice(bridge);
    mid.extend_from_slice(&w[..=n]);
    let between = t.matrix_of(&mid);
    let has_in = t.matrix_of(&w[..=n]).col_support();
    let has_out = t.matrix_of(&w[n..]).row_support();
    let mut map = Vec::new();
    let mut hit = BitSet::new(t.graph().len());
    for a in m.iter() {
        let mut target = None;
        if has_in.contains(a) {
            for b in m.iter() {
                if between.get(a, b) && has_out.contains(b) {
                    if target.is_some() {
                        return Err(Error::NonPermutation);
                    }
                    target = Some(b);
                }
            }
        }
        let b = target.ok_or(Error::NonPermutation)?;
        if hit.contains(b) {
            return Err(Error::NonPermutation);
        }
        hit.insert(b);
        map.push((a, b));
    }
    Ok(TauPermutation {
        word: w.clone(),
        coordinate: n,
        symbols: m.clone(),
        bridge: bridge.to_vec(),
        map,
    })
}

/// Partition of the preimage walks of a magic word by the class of their
/// symbol at the magic coordinate, accumulated over periodic contexts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockPartition {
    pub word: Vec<YSym>,
    /// Coordinate attaining the minimal fiber width.
    pub coordinate: usize,
    /// Partition of the fiber at `coordinate`, sorted by least symbol.
    pub symbol_parts: Vec<BitSet>,
    /// Preimage walks grouped to match `symbol_parts`.
    pub parts: Vec<Vec<Vec<XSym>>>,
    /// Contexts that supplied evidence: a periodic word with as many
    /// classes as the class degree, and an offset where `word` occurs.
    pub contexts: Vec<(Vec<YSym>, usize)>,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Merges within sets and checks splits across sets, one context at a time.
/// Two fiber symbols land in one part iff some chain of contexts puts them
/// in a common class; the expected part count is the class degree.
pub fn magic_partition(
    t: &FactorTriple,
    word: &[YSym],
    p_max: usize,
    cap: usize,
) -> Result<BlockPartition> {
    let c = class_degree(t, cap)?.value;
    let magic = magic_search(t, cap)?;
    let (width, k) = d_of_word(t, word)?;
    if width != magic.d_min {
        return Err(Error::NotMagic);
    }
    let fiber = symbol_set_at(t, word, k)?;
    let n = t.graph().len();
    let mut parent: Vec<usize> = (0..n).collect();
    let mut contexts = Vec::new();
    let mut evidence: Vec<Vec<BitSet>> = Vec::new();
    for q in periodic_words(t, p_max) {
        let cs = periodic_classes(t, &q.letters)?;
        if cs.classes.len() != c {
            continue;
        }
        let p = q.letters.len();
        for offset in 0..p {
            if !(0..word.len()).all(|j| q.letters[(offset + j) % p] == word[j]) {
                continue;
            }
            let tables = class_restriction(t, &cs, offset + k);
            for set in &tables {
                // any symbol a class realizes here sits on a preimage of
                // `word`, hence inside the fiber
                debug_assert!(set.is_subset_of(&fiber));
                let mut members = set.iter();
                if let Some(first) = members.next() {
                    for s in members {
                        let (a, b) = (find(&mut parent, first), find(&mut parent, s));
                        parent[a] = b;
                    }
                }
            }
            contexts.push((q.letters.clone(), offset));
            evidence.push(tables);
        }
    }
    // a part straddling one context's class split means the merge evidence
    // contradicts the separation evidence
    for tables in &evidence {
        for i in 0..tables.len() {
            for j in i + 1..tables.len() {
                for a in tables[i].iter() {
                    for b in tables[j].iter() {
                        if find(&mut parent, a) == find(&mut parent, b) {
                            return Err(Error::InconsistentContexts);
                        }
                    }
                }
            }
        }
    }
    let mut slot = vec![usize::MAX; n];
    let mut symbol_parts: Vec<BitSet> = Vec::new();
    for s in fiber.iter() {
        let r = find(&mut parent, s);
        if slot[r] == usize::MAX {
            slot[r] = symbol_parts.len();
            symbol_parts.push(BitSet::new(n));
        }
        symbol_parts[slot[r]].insert(s);
    }
    if symbol_parts.len() != c {
        return Err(Error::InconsistentContexts);
    }
    let mut parts: Vec<Vec<Vec<XSym>>> = vec![Vec::new(); symbol_parts.len()];
    for walk in t.preimage_walks(word) {
        let r = find(&mut parent, walk[k]);
        parts[slot[r]].push(walk);
    }
    Ok(BlockPartition {
        word: word.to_vec(),
        coordinate: k,
        symbol_parts,
        parts,
        contexts,
    })
}

/// One occurrence of a letter in a periodic context: the class restriction
/// sets at that coordinate. Rows with `class_count` equal to the class
/// degree are the usable evidence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub context: Vec<YSym>,
    pub offset: usize,
    pub class_count: usize,
    pub sets: Vec<BitSet>,
}

/// Two symbols connected by merges yet split by one row: the letter fiber
/// admits no partition compatible with every context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitConflict {
    pub first: XSym,
    pub second: XSym,
    /// Rows whose merges chain the two symbols together.
    pub merged_in: Vec<usize>,
    /// Row whose class split separates them.
    pub separated_in: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PartitionVerdict {
    /// The co-occurrence components refine every context split and there
    /// are exactly as many as the class degree.
    PartitionExists(Vec<BitSet>),
    NoPartition { conflict: Option<SplitConflict> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolClassTable {
    pub letter: YSym,
    pub class_degree: usize,
    /// One row per occurrence of the letter in a periodic context.
    pub rows: Vec<TableRow>,
    /// Co-occurrence components over symbols seen in usable rows.
    pub components: Vec<BitSet>,
    /// Symbols of the letter never realized in a usable row.
    pub unrealized: BitSet,
    /// First usable row whose sets jointly cover the whole letter fiber.
    /// Absence means no tested context realizes every preimage symbol, so
    /// the full-fiber hypothesis stays unverified.
    pub full_fiber_row: Option<usize>,
    pub verdict: PartitionVerdict,
}

/// Class restriction sets at every occurrence of `letter` in every periodic
/// word of period at most `p_max`, and whether their merges assemble into a
/// partition of the letter's preimage symbols.
pub fn symbol_class_table(
    t: &FactorTriple,
    letter: YSym,
    p_max: usize,
    cap: usize,
) -> Result<SymbolClassTable> {
    let c = class_degree(t, cap)?.value;
    let fiber = t.label_set(letter).clone();
    let n = t.graph().len();
    let mut rows = Vec::new();
    for q in periodic_words(t, p_max) {
        let cs = periodic_classes(t, &q.letters)?;
        for offset in 0..q.letters.len() {
            if q.letters[offset] != letter {
                continue;
            }
            rows.push(TableRow {
                context: q.letters.clone(),
                offset,
                class_count: cs.classes.len(),
                sets: class_restriction(t, &cs, offset),
            });
        }
    }
    let mut parent: Vec<usize> = (0..n).collect();
    // spanning forest of performed merges, labeled by the row responsible
    let mut forest: Vec<Vec<(XSym, usize)>> = vec![Vec::new(); n];
    let mut realized = BitSet::new(n);
    let mut full_fiber_row = None;
    for (idx, row) in rows.iter().enumerate() {
        if row.class_count != c {
            continue;
        }
        let mut union = BitSet::new(n);
        for set in &row.sets {
            union.union_with(set);
            let mut members = set.iter();
            if let Some(first) = members.next() {
                for s in members {
                    let (a, b) = (find(&mut parent, first), find(&mut parent, s));
                    if a != b {
                        parent[a] = b;
                        forest[first].push((s, idx));
                        forest[s].push((first, idx));
                    }
                }
            }
        }
        realized.union_with(&union);
        if full_fiber_row.is_none() && union == fiber {
            full_fiber_row = Some(idx);
        }
    }
    let mut slot = vec![usize::MAX; n];
    let mut components: Vec<BitSet> = Vec::new();
    for s in realized.iter() {
        let r = find(&mut parent, s);
        if slot[r] == usize::MAX {
            slot[r] = components.len();
            components.push(BitSet::new(n));
        }
        components[slot[r]].insert(s);
    }
    let mut conflict = None;
    'rows: for (idx, row) in rows.iter().enumerate() {
        if row.class_count != c {
            continue;
        }
        for i in 0..row.sets.len() {
            for j in i + 1..row.sets.len() {
                for a in row.sets[i].iter() {
                    for b in row.sets[j].iter() {
                        if find(&mut parent, a) == find(&mut parent, b) {
                            conflict = Some(SplitConflict {
                                first: a.min(b),
                                second: a.max(b),
                                merged_in: forest_path(&forest, a.min(b), a.max(b)),
                                separated_in: idx,
                            });
                            break 'rows;
                        }
                    }
                }
            }
        }
    }
    let mut unrealized = fiber.clone();
    for s in realized.iter() {
        unrealized.remove(s);
    }
    let verdict = if conflict.is_none() && unrealized.is_empty() && components.len() == c {
        PartitionVerdict::PartitionExists(components.clone())
    } else {
        PartitionVerdict::NoPartition { conflict }
    };
    Ok(SymbolClassTable {
        letter,
        class_degree: c,
        rows,
        components,
        unrealized,
        full_fiber_row,
        verdict,
    })
}

/// Deduplicated rows along the forest path between two merged symbols.
fn forest_path(forest: &[Vec<(XSym, usize)>], from: XSym, to: XSym) -> Vec<usize> {
    let mut prev: Vec<Option<(XSym, usize)>> = vec![None; forest.len()];
    let mut queue = VecDeque::new();
    prev[from] = Some((from, usize::MAX));
    queue.push_back(from);
    while let Some(v) = queue.pop_front() {
        if v == to {
            break;
        }
        for &(u, row) in &forest[v] {
            if prev[u].is_none() {
                prev[u] = Some((v, row));
                queue.push_back(u);
            }
        }
    }
    let mut out = Vec::new();
    let mut v = to;
    while let Some((p, row)) = prev[v] {
        if p == v {
            break;
        }
        out.push(row);
        v = p;
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Class degrees of two codes and of their composition, against the
/// product bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositionCheck {
    pub first: usize,
    pub second: usize,
    pub composed: usize,
    /// composed ≤ first · second.
    pub inequality_holds: bool,
    /// The first image sits strictly inside the second domain, so the
    /// composed value lives on a smaller shift than `second` was measured
    /// on.
    pub image_proper: bool,
}

pub fn composition_check(
    first: &FactorTriple,
    second: &FactorTriple,
    cap: usize,
) -> Result<CompositionCheck> {
    let composition = compose(first, second, false)?;
    let c1 = class_degree(first, cap)?.value;
    let c2 = class_degree(second, cap)?.value;
    let c = class_degree(&composition.triple, cap)?.value;
    Ok(CompositionCheck {
        first: c1,
        second: c2,
        composed: c,
        inequality_holds: c <= c1 * c2,
        image_proper: composition.image_proper,
    })
}

/// A pair of equally labeled walks with equal endpoints, one confined to
/// the restricted symbol set, the other containing the avoided word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubshiftDiamond {
    pub inside: Vec<XSym>,
    pub outside: Vec<XSym>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubshiftDiamondReport {
    /// Walks strictly shorter than this were searched.
    pub bound: usize,
    pub pair: Option<SubshiftDiamond>,
}

/// Searches for a diamond across the boundary of the subshift on `keep`.
///
/// The restriction must be a proper nonempty essential subgraph with the
/// same image, and `avoided` must be a domain walk leaving it. States are
/// (inside endpoint, outside endpoint, match progress on `avoided`);
/// breadth-first with ascending successors and first parent kept, so a
/// found pair is the shortest and lexicographically least. The default
/// length bound adds twice the class degree certificate length plus twice
/// the connecting gap to the avoided length; an exhausted bound is
/// reported, not an error.
pub fn subshift_diamond(
    t: &FactorTriple,
    keep: &[XSym],
    avoided: &[XSym],
    bound_override: Option<usize>,
    cap: usize,
) -> Result<SubshiftDiamondReport> {
    let g = t.graph();
    let n = g.len();
    if !g.is_irreducible() {
        return Err(Error::NotIrreducible);
    }
    if avoided.is_empty() || !g.is_walk(avoided) {
        return Err(Error::WordNotInDomain);
    }
    let mut alive = vec![false; n];
    for &s in keep {
        if s >= n {
            return Err(Error::WordNotInDomain);
        }
        alive[s] = true;
    }
    loop {
        let mut changed = false;
        for v in 0..n {
            if alive[v]
                && (!g.successors(v).iter().any(|&u| alive[u])
                    || !g.predecessors(v).iter().any(|&u| alive[u]))
            {
                alive[v] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let kept: Vec<XSym> = (0..n).filter(|&v| alive[v]).collect();
    if kept.is_empty() || kept.len() == n {
        return Err(Error::NotProperSubshift);
    }
    // a domain walk survives restriction iff all its symbols do
    if avoided.iter().all(|&s| alive[s]) {
        return Err(Error::WordInSubshift);
    }
    let labels: Vec<YSym> = kept.iter().map(|&s| t.label(s)).collect();
    let sub = FactorTriple::from_parts(
        format!("{}|sub", t.name()),
        g.restrict(&kept),
        labels,
        t.alphabet().to_vec(),
    )?;
    if !same_language(&image_presentation(&sub), &image_presentation(t)) {
        return Err(Error::ImageNotEqual);
    }
    let l = class_degree(t, cap)?.certificate.word.len();
    let gap = g.connecting_gap()?;
    let bound = bound_override.unwrap_or(avoided.len() + 2 * l + 2 * gap);

    let plen = avoided.len();
    let pi = prefix_function(avoided);
    let step = |state: usize, sym: XSym| -> usize {
        if state == plen {
            return state;
        }
        let mut s = state;
        loop {
            if avoided[s] == sym {
                return s + 1;
            }
            if s == 0 {
                return 0;
            }
            s = pi[s - 1];
        }
    };
    let encode = |a: usize, b: usize, m: usize| (a * n + b) * (plen + 1) + m;
    let states = n * n * (plen + 1);
    let mut prev = vec![usize::MAX; states];
    let mut seen = vec![false; states];
    let mut queue = VecDeque::new();
    for &s in &kept {
        let id = encode(s, s, step(0, s));
        if !seen[id] {
            seen[id] = true;
            queue.push_back((id, 1usize));
        }
    }
    while let Some((id, len)) = queue.pop_front() {
        let m = id % (plen + 1);
        let b = (id / (plen + 1)) % n;
        let a = id / ((plen + 1) * n);
        if a == b && m == plen {
            let mut inside = Vec::new();
            let mut outside = Vec::new();
            let mut cur = id;
            loop {
                inside.push(cur / ((plen + 1) * n));
                outside.push((cur / (plen + 1)) % n);
                if prev[cur] == usize::MAX {
                    break;
                }
                cur = prev[cur];
            }
            inside.reverse();
            outside.reverse();
            return Ok(SubshiftDiamondReport {
                bound,
                pair: Some(SubshiftDiamond { inside, outside }),
            });
        }
        if len + 1 >= bound {
            continue;
        }
        for &a2 in g.successors(a) {
            if !alive[a2] {
                continue;
            }
            for &b2 in g.successors(b) {
                if t.label(a2) != t.label(b2) {
                    continue;
                }
                let next = encode(a2, b2, step(m, b2));
                if !seen[next] {
                    seen[next] = true;
                    prev[next] = id;
                    queue.push_back((next, len + 1));
                }
            }
        }
    }
    Ok(SubshiftDiamondReport { bound, pair: None })
}

fn prefix_function(pat: &[XSym]) -> Vec<usize> {
    let mut pi = vec![0usize; pat.len()];
    for i in 1..pat.len() {
        let mut k = pi[i - 1];
        while k > 0 && pat[i] != pat[k] {
            k = pi[k - 1];
        }
        if pat[i] == pat[k] {
            k += 1;
        }
        pi[i] = k;
    }
    pi
}
