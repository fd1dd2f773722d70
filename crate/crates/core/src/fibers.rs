//! Preimages of periodic image points and their transition classes.
//!
//! Over y = q^∞ with primitive period p, the preimage set is the set of
//! bi-infinite walks through a layered graph: layer i holds the symbols
//! labeled q_i, edges advance the layer by one mod p. Every cycle length is
//! a multiple of p, so the period π of a strongly connected component is
//! too, and each vertex carries a phase that every internal edge advances by
//! one mod π.
//!
//! A transition from x to x̄ means: arbitrarily late, some preimage follows
//! x's past and x̄'s future. The forward tail of any preimage settles into
//! one cyclic component H with an eventually constant offset γ = φ(x_n) − n
//! (mod π_H), and x ⤳ x̄ turns out to depend only on these tail data, so the
//! classes over q^∞ are the pairs (H, γ). Since φ − layer is constant mod p
//! on H, exactly π_H/p offsets occur per component. A connecting walk u → v
//! of length ℓ witnesses (H, γ) ⤳ (H', γ') iff its defect
//! ℓ − (φ'(v) − φ(u)) is ≡ γ − γ' mod gcd(π_H, π_H'): inside one component
//! defects vanish, which is why equal offsets are forced there, and padding
//! on either side shifts a defect by full periods only, which makes the
//! reachable defect residues finite data computable by one layered search.

use alloc::vec;
use alloc::vec::Vec;

use crate::bits::BitSet;
use crate::graph::XSym;
use crate::scc;
use crate::triple::{FactorTriple, YSym};
use crate::{Error, Result};

/// A primitive image word in its lexicographically least rotation, whose
/// infinite repetition is an image point.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct PeriodicWord {
    pub letters: Vec<YSym>,
}

impl PeriodicWord {
    /// Canonicalizes any repetition of any rotation of a valid word.
    pub fn canonical(t: &FactorTriple, word: &[YSym]) -> Result<PeriodicWord> {
        let root = primitive_root(word);
        let mut best = root.to_vec();
        for r in 1..root.len() {
            let mut rot = root[r..].to_vec();
            rot.extend_from_slice(&root[..r]);
            if rot < best {
                best = rot;
            }
        }
        fiber_graph(t, &best)?;
        Ok(PeriodicWord { letters: best })
    }
}

fn primitive_root(word: &[YSym]) -> &[YSym] {
    assert!(!word.is_empty(), "periodic words are nonempty");
    'next: for d in 1..word.len() {
        if word.len() % d != 0 {
            continue;
        }
        for (i, &y) in word.iter().enumerate() {
            if y != word[i % d] {
                continue 'next;
            }
        }
        return &word[..d];
    }
    word
}

/// All canonical periodic words of period at most `p_max`, shortest first.
pub fn periodic_words(t: &FactorTriple, p_max: usize) -> Vec<PeriodicWord> {
    let mut out = Vec::new();
    for word in t.image_words_up_to(p_max) {
        if primitive_root(&word).len() != word.len() {
            continue;
        }
        let is_canonical = (1..word.len()).all(|r| {
            let rot: Vec<YSym> = word[r..].iter().chain(&word[..r]).copied().collect();
            rot >= word
        });
        if is_canonical && fiber_graph(t, &word).is_ok() {
            out.push(PeriodicWord { letters: word });
        }
    }
    out
}

/// The layered walk graph of the preimages of q^∞, essentialized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberGraph {
    /// Primitive root actually used; the input is reduced, never rotated.
    pub word: Vec<YSym>,
    pub verts: Vec<(usize, XSym)>,
    pub succ: Vec<Vec<usize>>,
}

impl FiberGraph {
    pub fn period(&self) -> usize {
        self.word.len()
    }

    pub fn len(&self) -> usize {
        self.verts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.verts.is_empty()
    }

    pub fn layer(&self, v: usize) -> usize {
        self.verts[v].0
    }

    pub fn symbol(&self, v: usize) -> XSym {
        self.verts[v].1
    }
}

/// Builds the layered graph over the primitive root of `q` and trims
/// vertices off every bi-infinite walk. Empty means q^∞ is not an image
/// point.
pub fn fiber_graph(t: &FactorTriple, q: &[YSym]) -> Result<FiberGraph> {
    let root = primitive_root(q);
    let p = root.len();
    let mut verts: Vec<(usize, XSym)> = Vec::new();
    for (i, &y) in root.iter().enumerate() {
        for s in t.label_set(y).iter() {
            verts.push((i, s));
        }
    }
    let index = |layer: usize, s: XSym, verts: &[(usize, XSym)]| -> Option<usize> {
        verts.binary_search(&(layer, s)).ok()
    };
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); verts.len()];
    for (v, &(i, s)) in verts.iter().enumerate() {
        let next_layer = (i + 1) % p;
        for &s2 in t.graph().successors(s) {
            if let Some(w) = index(next_layer, s2, &verts) {
                succ[v].push(w);
            }
        }
    }
    // Essentialize: a vertex survives iff it has both an incoming and an
    // outgoing edge among survivors.
    let mut alive = vec![true; verts.len()];
    loop {
        let mut indeg = vec![0usize; verts.len()];
        let mut outdeg = vec![0usize; verts.len()];
        for v in 0..verts.len() {
            if !alive[v] {
                continue;
            }
            for &w in &succ[v] {
                if alive[w] {
                    outdeg[v] += 1;
                    indeg[w] += 1;
                }
            }
        }
        let mut changed = false;
        for v in 0..verts.len() {
            if alive[v] && (indeg[v] == 0 || outdeg[v] == 0) {
                alive[v] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let keep: Vec<usize> = (0..verts.len()).filter(|&v| alive[v]).collect();
    if keep.is_empty() {
        return Err(Error::WordNotInImage);
    }
    let mut renum = vec![usize::MAX; verts.len()];
    for (new, &old) in keep.iter().enumerate() {
        renum[old] = new;
    }
    let new_verts: Vec<(usize, XSym)> = keep.iter().map(|&v| verts[v]).collect();
    let new_succ: Vec<Vec<usize>> = keep
        .iter()
        .map(|&v| {
            succ[v]
                .iter()
                .filter(|&&w| alive[w])
                .map(|&w| renum[w])
                .collect()
        })
        .collect();
    Ok(FiberGraph {
        word: root.to_vec(),
        verts: new_verts,
        succ: new_succ,
    })
}

/// One transition class over q^∞: a cyclic component of the fiber graph
/// together with a tail offset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberClass {
    /// (fiber vertex, phase) for every member vertex of the component.
    pub members: Vec<(usize, usize)>,
    /// Component period π, a multiple of the word period.
    pub period: usize,
    /// Tail offset γ ∈ [0, π), congruent to phase − layer mod word period.
    pub grade: usize,
    /// Symbols of an anchored periodic preimage in this class, starting at
    /// coordinate 0.
    pub representative: Vec<XSym>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassStructure {
    pub fiber: FiberGraph,
    pub classes: Vec<FiberClass>,
    /// One-way transitions between distinct classes, as index pairs.
    pub arrows: Vec<(usize, usize)>,
}

impl ClassStructure {
    pub fn period(&self) -> usize {
        self.fiber.period()
    }
}

/// Transition classes and one-way transitions over q^∞.
pub fn periodic_classes(t: &FactorTriple, q: &[YSym]) -> Result<ClassStructure> {
    let fiber = fiber_graph(t, q)?;
    let p = fiber.period();
    let scc = scc::decompose(&fiber.succ);

    let mut classes = Vec::new();
    let mut class_of = Vec::new();
    for c in 0..scc.members.len() {
        if !scc.cyclic[c] {
            continue;
        }
        let pi = scc.period[c];
        debug_assert_eq!(pi % p, 0, "cycle lengths are multiples of the period");
        let members: Vec<(usize, usize)> = scc.members[c]
            .iter()
            .map(|&v| (v, scc.phase[v]))
            .collect();
        let anchor = members[0];
        let c_h = (scc.phase[anchor.0] + pi - fiber.layer(anchor.0) % pi) % pi % p;
        for k in 0..pi / p {
            let grade = (c_h + k * p) % pi;
            let representative = representative(&fiber, &scc, c, grade);
            classes.push(FiberClass {
                members: members.clone(),
                period: pi,
                grade,
                representative,
            });
            class_of.push((c, grade));
        }
    }
    // Defect residues reachable from each cyclic component, by a search over
    // (vertex, offset mod lcm of all periods).
    let mut lambda = 1;
    for c in 0..scc.members.len() {
        if scc.cyclic[c] {
            lambda = lcm(lambda, scc.period[c]);
        }
    }
    let mut arrows = Vec::new();
    for (a, &(ca, grade_a)) in class_of.iter().enumerate() {
        let reached = defect_search(&fiber, &scc, ca, lambda);
        for (b, &(cb, grade_b)) in class_of.iter().enumerate() {
            if a == b {
                continue;
            }
            let g = gcd(scc.period[ca], scc.period[cb]);
            let want = (grade_a + lambda - grade_b % lambda) % g;
            let hit = scc.members[cb].iter().any(|&v| {
                (0..lambda).any(|rho| {
                    reached[v * lambda + rho] && (rho + lambda - scc.phase[v] % lambda) % g == want
                })
            });
            if hit {
                arrows.push((a, b));
            }
        }
    }
    Ok(ClassStructure {
        fiber,
        classes,
        arrows,
    })
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Marks (vertex, (source phase + walk length) mod lambda) pairs reachable
/// by walks leaving component `c`.
fn defect_search(fiber: &FiberGraph, scc: &scc::Scc, c: usize, lambda: usize) -> Vec<bool> {
    let mut reached = vec![false; fiber.len() * lambda];
    let mut queue = Vec::new();
    for &u in &scc.members[c] {
        let state = u * lambda + scc.phase[u] % lambda;
        if !reached[state] {
            reached[state] = true;
            queue.push((u, scc.phase[u] % lambda));
        }
    }
    let mut head = 0;
    while head < queue.len() {
        let (v, rho) = queue[head];
        head += 1;
        for &w in &fiber.succ[v] {
            let nr = (rho + 1) % lambda;
            if !reached[w * lambda + nr] {
                reached[w * lambda + nr] = true;
                queue.push((w, nr));
            }
        }
    }
    reached
}

/// Lexicographically least shortest closed walk anchored at the least
/// layer-0 vertex of grade `grade` in component `c`.
fn representative(fiber: &FiberGraph, scc: &scc::Scc, c: usize, grade: usize) -> Vec<XSym> {
    let anchor = *scc.members[c]
        .iter()
        .find(|&&v| scc.phase[v] == grade)
        .expect("every phase class of a cyclic component is nonempty");
    debug_assert_eq!(fiber.layer(anchor), 0);
    // Parent-first search; successors ascend, so the first return is the
    // lexicographically least among shortest.
    let mut parent: Vec<Option<usize>> = vec![None; fiber.len()];
    let mut queue = vec![anchor];
    let mut head = 0;
    while head < queue.len() {
        let v = queue[head];
        head += 1;
        for &w in &fiber.succ[v] {
            if w == anchor {
                let mut walk = vec![fiber.symbol(anchor)];
                let mut back = v;
                let mut tail = Vec::new();
                while back != anchor {
                    tail.push(fiber.symbol(back));
                    back = parent[back].expect("walk leads back to the anchor");
                }
                tail.reverse();
                walk.extend(tail);
                return walk;
            }
            if parent[w].is_none() && w != anchor {
                parent[w] = Some(v);
                queue.push(w);
            }
        }
    }
    unreachable!("cyclic components close a walk through every vertex")
}

/// Symbols each class can carry at absolute coordinate `i`. Tables repeat
/// with the class period.
pub fn class_restriction(t: &FactorTriple, cs: &ClassStructure, i: usize) -> Vec<BitSet> {
    let p = cs.period();
    cs.classes
        .iter()
        .map(|class| {
            let mut set = BitSet::new(t.graph().len());
            for &(v, phase) in &class.members {
                if cs.fiber.layer(v) == i % p && phase == (class.grade + i) % class.period {
                    set.insert(cs.fiber.symbol(v));
                }
            }
            set
        })
        .collect()
}

/// Class structure of the reversed point in the edge-reversed code. The
/// reversal fixes coordinate 0, so applying it twice restores the original
/// structure exactly.
pub fn reversed_classes(t: &FactorTriple, q: &[YSym]) -> Result<ClassStructure> {
    let root = primitive_root(q);
    let p = root.len();
    let reversed: Vec<YSym> = (0..p).map(|i| root[(p - i) % p]).collect();
    periodic_classes(&t.transpose(), &reversed)
}

/// Distinct classes sharing a symbol at some coordinate. Over periodic
/// points overlaps are legitimate observations, not failures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparationReport {
    /// (class, class, coordinate, shared symbols); coordinates range over
    /// one full common period of the tables.
    pub overlaps: Vec<(usize, usize, usize, BitSet)>,
    pub coordinates_checked: usize,
}

pub fn separation_diagnostic(t: &FactorTriple, cs: &ClassStructure) -> SeparationReport {
    let mut lambda = cs.period();
    for class in &cs.classes {
        lambda = lcm(lambda, class.period);
    }
    let mut overlaps = Vec::new();
    for i in 0..lambda {
        let tables = class_restriction(t, cs, i);
        for a in 0..tables.len() {
            for b in a + 1..tables.len() {
                let shared = tables[a].intersection(&tables[b]);
                if !shared.is_empty() {
                    overlaps.push((a, b, i, shared));
                }
            }
        }
    }
    SeparationReport {
        overlaps,
        coordinates_checked: lambda,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointCount {
    Finite(usize),
    Infinite,
}

/// Number of preimage points of q^∞. Finite exactly when the essential
/// fiber graph is a disjoint union of cycles; each cycle of length ℓ then
/// carries ℓ / p points, one per layer-0 visit.
pub fn fiber_point_count(t: &FactorTriple, q: &[YSym]) -> Result<PointCount> {
    let fiber = fiber_graph(t, q)?;
    let mut indeg = vec![0usize; fiber.len()];
    for v in 0..fiber.len() {
        if fiber.succ[v].len() != 1 {
            return Ok(PointCount::Infinite);
        }
        indeg[fiber.succ[v][0]] += 1;
    }
    if indeg.iter().any(|&d| d != 1) {
        return Ok(PointCount::Infinite);
    }
    Ok(PointCount::Finite(
        (0..fiber.len()).filter(|&v| fiber.layer(v) == 0).count(),
    ))
}
