#![allow(dead_code)]
//! Shared fixtures and a brute-force oracle.
//!
//! The oracle works by explicit walk enumeration and set arithmetic on plain
//! `BTreeSet`s. It shares no algorithmic machinery with the library (no bit
//! matrices, no monoid, no component analysis), so agreement between the two
//! is meaningful evidence. Everything here is exponential and meant for the
//! small fixture codes only.

use shiftlab_core::FactorTriple;

/// All symbols "0": reducible, every long word routes ambiguously.
pub fn t1() -> FactorTriple {
    FactorTriple::new(
        "t1",
        &["a", "b"],
        &[("a", "a"), ("a", "b"), ("b", "b")],
        &[("a", "0"), ("b", "0")],
    )
    .unwrap()
}

/// Five symbols over {0, 1}; irreducible, class degree 1, smallest fiber 2.
pub fn t2() -> FactorTriple {
    FactorTriple::new(
        "t2",
        &["a", "b", "c", "d", "e"],
        &[
            ("a", "a"),
            ("a", "b"),
            ("a", "c"),
            ("b", "d"),
            ("b", "e"),
            ("c", "d"),
            ("c", "e"),
            ("d", "d"),
            ("d", "e"),
            ("e", "a"),
            ("e", "b"),
            ("e", "c"),
        ],
        &[("a", "0"), ("b", "0"), ("c", "1"), ("d", "0"), ("e", "1")],
    )
    .unwrap()
}

/// Two marker blocks joined by primed return symbols; class degree 2 and the
/// marker letter m is the smallest fiber.
pub fn t3() -> FactorTriple {
    let symbols = [
        "m1", "m2", "α0", "α1", "β1", "β2", "γ2", "γ3", "α3", "α4", "β5", "γ6", "γ7", "0", "1",
        "2", "3", "4", "5", "6", "7", "γ0'", "α1'", "β1'", "β2'", "γ2'", "γ3'", "α3'", "β4'",
        "α5'", "β5'", "γ5'", "β6'", "γ6'", "α7'",
    ];
    let edges = [
        ("m1", "α0"),
        ("m1", "α1"),
        ("m1", "β1"),
        ("m1", "β2"),
        ("m1", "γ2"),
        ("m1", "γ3"),
        ("α0", "0"),
        ("α1", "1"),
        ("β1", "1"),
        ("β2", "2"),
        ("γ2", "2"),
        ("γ3", "3"),
        ("0", "γ0'"),
        ("1", "α1'"),
        ("1", "β1'"),
        ("2", "β2'"),
        ("2", "γ2'"),
        ("3", "γ3'"),
        ("3", "α3'"),
        ("γ0'", "m2"),
        ("α1'", "m1"),
        ("β1'", "m1"),
        ("β2'", "m1"),
        ("γ2'", "m1"),
        ("γ3'", "m1"),
        ("m2", "α3"),
        ("m2", "α4"),
        ("m2", "β5"),
        ("m2", "γ6"),
        ("m2", "γ7"),
        ("α3", "3"),
        ("α4", "4"),
        ("β5", "5"),
        ("γ6", "6"),
        ("γ7", "7"),
        ("4", "β4'"),
        ("5", "α5'"),
        ("5", "β5'"),
        ("5", "γ5'"),
        ("6", "β6'"),
        ("6", "γ6'"),
        ("7", "α7'"),
        ("α3'", "m2"),
        ("β4'", "m2"),
        ("α5'", "m2"),
        ("β5'", "m2"),
        ("γ5'", "m2"),
        ("β6'", "m2"),
        ("γ6'", "m2"),
        ("α7'", "m1"),
    ];
    let labels = [
        ("m1", "m"),
        ("m2", "m"),
        ("α0", "α"),
        ("α1", "α"),
        ("α3", "α"),
        ("α4", "α"),
        ("β1", "β"),
        ("β2", "β"),
        ("β5", "β"),
        ("γ2", "γ"),
        ("γ3", "γ"),
        ("γ6", "γ"),
        ("γ7", "γ"),
        ("0", "a"),
        ("1", "a"),
        ("2", "a"),
        ("3", "a"),
        ("4", "a"),
        ("5", "a"),
        ("6", "a"),
        ("7", "a"),
        ("α1'", "α'"),
        ("α3'", "α'"),
        ("α5'", "α'"),
        ("α7'", "α'"),
        ("β1'", "β'"),
        ("β2'", "β'"),
        ("β4'", "β'"),
        ("β5'", "β'"),
        ("β6'", "β'"),
        ("γ0'", "γ'"),
        ("γ2'", "γ'"),
        ("γ3'", "γ'"),
        ("γ5'", "γ'"),
        ("γ6'", "γ'"),
    ];
    FactorTriple::new("t3", &symbols, &edges, &labels).unwrap()
}

/// Digit sum mod 2 on the 2-blocks of the full 2-shift; constant-to-one.
pub fn t4() -> FactorTriple {
    FactorTriple::new(
        "t4",
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

/// Identity labeling of the golden mean shift.
pub fn t5() -> FactorTriple {
    FactorTriple::new(
        "t5",
        &["a", "b"],
        &[("a", "a"), ("a", "b"), ("b", "a")],
        &[("a", "a"), ("b", "b")],
    )
    .unwrap()
}

pub fn all_fixtures() -> Vec<FactorTriple> {
    vec![t1(), t2(), t3(), t4(), t5()]
}

/// Letter word from a plain string, panicking on junk (test convenience).
pub fn yw(t: &FactorTriple, s: &str) -> Vec<usize> {
    t.parse_word(s).unwrap()
}

pub mod oracle {
    use shiftlab_core::{FactorTriple, XSym, YSym};
    use std::collections::{BTreeMap, BTreeSet, VecDeque};

    pub fn gcd(a: usize, b: usize) -> usize {
        if b == 0 { a } else { gcd(b, a % b) }
    }

    pub fn lcm(a: usize, b: usize) -> usize {
        a / gcd(a, b) * b
    }

    /// Every symbol walk carrying the label word `w`.
    pub fn preimage_walks(t: &FactorTriple, w: &[YSym]) -> Vec<Vec<XSym>> {
        let g = t.graph();
        let mut walks: Vec<Vec<XSym>> = (0..g.len())
            .filter(|&x| t.label(x) == w[0])
            .map(|x| vec![x])
            .collect();
        for &y in &w[1..] {
            let mut next = Vec::new();
            for walk in &walks {
                for &v in g.successors(*walk.last().unwrap()) {
                    if t.label(v) == y {
                        let mut w2 = walk.clone();
                        w2.push(v);
                        next.push(w2);
                    }
                }
            }
            walks = next;
        }
        walks
    }

    /// Membership by plain set stepping (handles long words).
    pub fn member(t: &FactorTriple, w: &[YSym]) -> bool {
        let g = t.graph();
        let mut cur: BTreeSet<XSym> = (0..g.len()).filter(|&x| t.label(x) == w[0]).collect();
        for &y in &w[1..] {
            cur = cur
                .iter()
                .flat_map(|&x| g.successors(x).iter().copied())
                .filter(|&v| t.label(v) == y)
                .collect();
            if cur.is_empty() {
                return false;
            }
        }
        !cur.is_empty()
    }

    /// Start/end pairs of preimage walks (the walk relation of `w`).
    pub fn matrix_pairs(t: &FactorTriple, w: &[YSym]) -> BTreeSet<(XSym, XSym)> {
        preimage_walks(t, w)
            .iter()
            .map(|x| (x[0], *x.last().unwrap()))
            .collect()
    }

    /// Symbols preimage walks pass through at position `k`.
    pub fn symbol_set_at(t: &FactorTriple, w: &[YSym], k: usize) -> BTreeSet<XSym> {
        preimage_walks(t, w).iter().map(|x| x[k]).collect()
    }

    /// Smallest symbol set over the positions of `w`; `None` outside the
    /// image language.
    pub fn fiber_width(t: &FactorTriple, w: &[YSym]) -> Option<usize> {
        if !member(t, w) {
            return None;
        }
        (0..w.len())
            .map(|k| symbol_set_at(t, w, k).len())
            .min()
    }

    /// All image words of exactly `len` letters.
    pub fn y_words(t: &FactorTriple, len: usize) -> Vec<Vec<YSym>> {
        let set: BTreeSet<Vec<YSym>> = t
            .graph()
            .walks(len)
            .into_iter()
            .map(|xs| t.image_of(&xs))
            .collect();
        set.into_iter().collect()
    }

    /// For each start/end pair of preimage walks of `w`, the set of symbols
    /// those walks use at position `n`.
    pub fn routing_sets(
        t: &FactorTriple,
        w: &[YSym],
        n: usize,
    ) -> BTreeMap<(XSym, XSym), BTreeSet<XSym>> {
        let mut map: BTreeMap<(XSym, XSym), BTreeSet<XSym>> = BTreeMap::new();
        for x in preimage_walks(t, w) {
            map.entry((x[0], *x.last().unwrap()))
                .or_default()
                .insert(x[n]);
        }
        map
    }

    fn combinations(universe: &[XSym], k: usize) -> Vec<Vec<XSym>> {
        if k == 0 {
            return vec![Vec::new()];
        }
        if universe.len() < k {
            return Vec::new();
        }
        let mut out = Vec::new();
        for (i, &first) in universe.iter().enumerate() {
            for mut rest in combinations(&universe[i + 1..], k - 1) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }

    /// All minimum-size sets hitting every routing set of `(w, n)`, with the
    /// minimum size. `None` when there is nothing to hit.
    pub fn min_hitting_sets(
        sets: &BTreeMap<(XSym, XSym), BTreeSet<XSym>>,
    ) -> Option<(usize, Vec<Vec<XSym>>)> {
        if sets.is_empty() {
            return None;
        }
        let universe: Vec<XSym> = sets
            .values()
            .flat_map(|s| s.iter().copied())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        for k in 1..=universe.len() {
            let hits: Vec<Vec<XSym>> = combinations(&universe, k)
                .into_iter()
                .filter(|cand| {
                    sets.values()
                        .all(|s| cand.iter().any(|m| s.contains(m)))
                })
                .collect();
            if !hits.is_empty() {
                return Some((k, hits));
            }
        }
        unreachable!("the whole universe hits every nonempty set");
    }

    /// Minimum routing depth of `w` at interior position `n`.
    pub fn min_depth(t: &FactorTriple, w: &[YSym], n: usize) -> Option<usize> {
        assert!(n >= 1 && n + 2 <= w.len(), "position must be interior");
        min_hitting_sets(&routing_sets(t, w, n)).map(|(k, _)| k)
    }

    /// Least routing depth over every image word of at most `max_len` letters
    /// and every interior position.
    pub fn depth_upper_bound(t: &FactorTriple, max_len: usize) -> Option<usize> {
        let mut best: Option<usize> = None;
        for len in 3..=max_len {
            for w in y_words(t, len) {
                for n in 1..=len - 2 {
                    if let Some(d) = min_depth(t, &w, n) {
                        best = Some(best.map_or(d, |b| b.min(d)));
                    }
                }
            }
        }
        best
    }

    /// Least fiber width over every image word of at most `max_len` letters.
    pub fn width_upper_bound(t: &FactorTriple, max_len: usize) -> Option<usize> {
        let mut best: Option<usize> = None;
        for len in 1..=max_len {
            for w in y_words(t, len) {
                if let Some(d) = fiber_width(t, &w) {
                    best = Some(best.map_or(d, |b| b.min(d)));
                }
            }
        }
        best
    }

    /// Two distinct walks with equal start, end and label word, if any exist
    /// with at most `max_len` symbols.
    pub fn bounded_diamond(
        t: &FactorTriple,
        max_len: usize,
    ) -> Option<(Vec<XSym>, Vec<XSym>)> {
        for len in 2..=max_len {
            let mut by_key: BTreeMap<(Vec<YSym>, XSym, XSym), Vec<Vec<XSym>>> = BTreeMap::new();
            for xs in t.graph().walks(len) {
                let key = (t.image_of(&xs), xs[0], *xs.last().unwrap());
                by_key.entry(key).or_default().push(xs);
            }
            for (_, group) in by_key {
                if group.len() >= 2 {
                    return Some((group[0].clone(), group[1].clone()));
                }
            }
        }
        None
    }

    /// Layered preimage graph of the periodic word `q`: vertices are
    /// (position mod period, symbol) pairs, edges step one position.
    pub struct FiberOracle {
        pub p: usize,
        pub verts: Vec<(usize, XSym)>,
        pub succ: Vec<Vec<usize>>,
    }

    pub fn fiber_oracle(t: &FactorTriple, q: &[YSym]) -> FiberOracle {
        let p = q.len();
        let g = t.graph();
        let mut verts = Vec::new();
        for layer in 0..p {
            for x in 0..g.len() {
                if t.label(x) == q[layer] {
                    verts.push((layer, x));
                }
            }
        }
        let mut succ = vec![Vec::new(); verts.len()];
        for (i, &(layer, x)) in verts.iter().enumerate() {
            let nl = (layer + 1) % p;
            for &v in g.successors(x) {
                if let Ok(j) = verts.binary_search(&(nl, v)) {
                    succ[i].push(j);
                }
            }
        }
        FiberOracle { p, verts, succ }
    }

    fn cycle_dfs(
        succ: &[Vec<usize>],
        start: usize,
        path: &mut Vec<usize>,
        on_path: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let v = *path.last().unwrap();
        for &w in &succ[v] {
            if w == start {
                out.push(path.clone());
            } else if w > start && !on_path[w] {
                path.push(w);
                on_path[w] = true;
                cycle_dfs(succ, start, path, on_path, out);
                on_path[w] = false;
                path.pop();
            }
        }
    }

    /// Every simple cycle, as a vertex sequence starting at its smallest
    /// vertex.
    pub fn simple_cycles(succ: &[Vec<usize>]) -> Vec<Vec<usize>> {
        let n = succ.len();
        let mut out = Vec::new();
        for s in 0..n {
            let mut path = vec![s];
            let mut on_path = vec![false; n];
            on_path[s] = true;
            cycle_dfs(succ, s, &mut path, &mut on_path, &mut out);
        }
        out
    }

    /// Periodic preimages of `q` as anchored vertex sequences: entry `i` is
    /// the fiber vertex the point uses at position `i`, so entry `i` always
    /// lies on layer `i` mod `p`. One sequence per rotation of each simple
    /// cycle that starts on layer 0.
    pub fn periodic_points(f: &FiberOracle) -> Vec<Vec<usize>> {
        let mut out: BTreeSet<Vec<usize>> = BTreeSet::new();
        for cycle in simple_cycles(&f.succ) {
            let len = cycle.len();
            assert_eq!(len % f.p, 0, "cycles in a layered graph close layers");
            for j in 0..len {
                if f.verts[cycle[j]].0 == 0 {
                    out.insert((0..len).map(|i| cycle[(j + i) % len]).collect());
                }
            }
        }
        out.into_iter().collect()
    }

    /// Whether the point `a` can be abandoned for the point `b` at
    /// arbitrarily late positions: for every anchor `n` some preimage agrees
    /// with `a` up to `n` and with `b` from some later position on.
    pub fn routable(f: &FiberOracle, a: &[usize], b: &[usize]) -> bool {
        let (pa, pb) = (a.len(), b.len());
        for n in 0..lcm(pa, pb) {
            let start = (a[n % pa], n % pb);
            let mut seen = BTreeSet::from([start]);
            let mut queue = VecDeque::from([start]);
            let mut ok = false;
            'bfs: while let Some((v, r)) = queue.pop_front() {
                for &w in &f.succ[v] {
                    let nr = (r + 1) % pb;
                    if w == b[nr] {
                        ok = true;
                        break 'bfs;
                    }
                    if seen.insert((w, nr)) {
                        queue.push_back((w, nr));
                    }
                }
            }
            if !ok {
                return false;
            }
        }
        true
    }

    /// Partition of `periodic_points(f)` under mutual routability, each part
    /// sorted, parts sorted by first member.
    pub fn classes(f: &FiberOracle) -> (Vec<Vec<usize>>, Vec<Vec<Vec<usize>>>) {
        let points = periodic_points(f);
        let n = points.len();
        let mut part_of: Vec<Option<usize>> = vec![None; n];
        let mut parts: Vec<Vec<usize>> = Vec::new();
        for i in 0..n {
            if part_of[i].is_some() {
                continue;
            }
            let id = parts.len();
            part_of[i] = Some(id);
            let mut members = vec![i];
            for j in i + 1..n {
                if part_of[j].is_none()
                    && routable(f, &points[i], &points[j])
                    && routable(f, &points[j], &points[i])
                {
                    part_of[j] = Some(id);
                    members.push(j);
                }
            }
            parts.push(members);
        }
        let grouped = parts
            .iter()
            .map(|ms| ms.iter().map(|&i| points[i].clone()).collect())
            .collect();
        (points, grouped)
    }

    /// Arrows of the routability order between the parts returned by
    /// `classes`, excluding loops. Panics if members of a part disagree,
    /// which would refute transitivity.
    pub fn class_arrows(f: &FiberOracle, parts: &[Vec<Vec<usize>>]) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, from) in parts.iter().enumerate() {
            for (j, to) in parts.iter().enumerate() {
                if i == j {
                    continue;
                }
                let votes: BTreeSet<bool> = from
                    .iter()
                    .flat_map(|a| to.iter().map(move |b| routable(f, a, b)))
                    .collect();
                assert_eq!(votes.len(), 1, "routability must not depend on the member");
                if votes.contains(&true) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Symbols the members of one part use at position `i`.
    pub fn restriction(f: &FiberOracle, part: &[Vec<usize>], i: usize) -> BTreeSet<XSym> {
        part.iter()
            .map(|point| f.verts[point[i % point.len()]].1)
            .collect()
    }

    /// Number of distinct `len`-step anchored walk segments that extend `len`
    /// steps both ways, stopping at `cap`. In a fiber whose points form
    /// finitely many cycles this equals the number of points.
    pub fn middle_segment_count(f: &FiberOracle, len: usize, cap: usize) -> usize {
        let n = f.verts.len();
        let pred: Vec<Vec<usize>> = {
            let mut p = vec![Vec::new(); n];
            for (u, vs) in f.succ.iter().enumerate() {
                for &v in vs {
                    p[v].push(u);
                }
            }
            p
        };
        let reach = |adj: &[Vec<usize>]| -> Vec<bool> {
            let mut cur: BTreeSet<usize> = (0..n).collect();
            for _ in 0..len {
                cur = cur
                    .iter()
                    .flat_map(|&v| adj[v].iter().copied())
                    .collect();
            }
            let mut ok = vec![false; n];
            for v in cur {
                ok[v] = true;
            }
            ok
        };
        let can_enter = reach(&f.succ);
        let can_leave = reach(&pred);
        let mut segments: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut stack: Vec<Vec<usize>> = (0..n)
            .filter(|&v| f.verts[v].0 == 0 && can_enter[v])
            .map(|v| vec![v])
            .collect();
        while let Some(seg) = stack.pop() {
            if seg.len() == len {
                if can_leave[*seg.last().unwrap()] {
                    segments.insert(seg);
                    if segments.len() >= cap {
                        return cap;
                    }
                }
                continue;
            }
            for &w in &f.succ[*seg.last().unwrap()] {
                let mut s2 = seg.clone();
                s2.push(w);
                stack.push(s2);
            }
        }
        segments.len()
    }

    /// Whether the periodic repetition of `q` lies in the image shift:
    /// enough powers of `q` pump a loop.
    pub fn periodic_member(t: &FactorTriple, q: &[YSym]) -> bool {
        let reps = t.graph().len() + 1;
        let word: Vec<YSym> = q.iter().copied().cycle().take(q.len() * reps).collect();
        member(t, &word)
    }
}
