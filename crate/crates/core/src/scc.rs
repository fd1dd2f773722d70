//! Strongly connected components with cycle structure.
//!
//! Besides the partition itself, each component that contains a cycle gets
//! its period (gcd of its cycle lengths) and every vertex a phase mod that
//! period, so that each internal edge advances the phase by exactly one.

use alloc::vec;
use alloc::vec::Vec;

pub(crate) struct Scc {
    /// Component id to ascending member list. Components are numbered by
    /// their smallest vertex, ascending, so the numbering is independent of
    /// traversal order.
    pub members: Vec<Vec<usize>>,
    /// Whether the component contains at least one edge, hence a cycle.
    pub cyclic: Vec<bool>,
    /// Gcd of the cycle lengths, 0 for acyclic components.
    pub period: Vec<usize>,
    /// Phase of each vertex within its component: along any internal edge
    /// `u -> v` we have `phase[v] = phase[u] + 1 (mod period)`. Zero in
    /// acyclic components.
    pub phase: Vec<usize>,
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 { a } else { gcd(b, a % b) }
}

pub(crate) fn decompose(succ: &[Vec<usize>]) -> Scc {
    let n = succ.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut comps: Vec<Vec<usize>> = Vec::new();
    let mut counter = 0usize;

    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        while let Some(&(v, i)) = call.last() {
            if i < succ[v].len() {
                call.last_mut().expect("nonempty").1 += 1;
                let w = succ[v][i];
                if index[w] == usize::MAX {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(p, _)) = call.last() {
                    low[p] = low[p].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut members = Vec::new();
                    loop {
                        let w = stack.pop().expect("component members are on the stack");
                        on_stack[w] = false;
                        members.push(w);
                        if w == v {
                            break;
                        }
                    }
                    members.sort_unstable();
                    comps.push(members);
                }
            }
        }
    }

    comps.sort_by_key(|m| m[0]);
    let mut comp_of = vec![usize::MAX; n];
    for (c, members) in comps.iter().enumerate() {
        for &v in members {
            comp_of[v] = c;
        }
    }

    let mut cyclic = vec![false; comps.len()];
    for (u, vs) in succ.iter().enumerate() {
        for &v in vs {
            if comp_of[u] == comp_of[v] {
                cyclic[comp_of[u]] = true;
            }
        }
    }

    let mut period = vec![0usize; comps.len()];
    let mut phase = vec![0usize; n];
    let mut level = vec![0i64; n];
    for (c, members) in comps.iter().enumerate() {
        if !cyclic[c] {
            continue;
        }
        // BFS over internal edges; any discrepancy between tree levels along
        // an internal edge is a multiple of the period, and their gcd attains
        // it because level sums telescope around cycles.
        let mut seen = vec![false; members.len()];
        let pos = |v: usize| members.binary_search(&v).expect("member of this component");
        seen[0] = true;
        level[members[0]] = 0;
        let mut queue = alloc::collections::VecDeque::from([members[0]]);
        let mut g: usize = 0;
        while let Some(u) = queue.pop_front() {
            for &v in &succ[u] {
                if comp_of[v] != c {
                    continue;
                }
                if !seen[pos(v)] {
                    seen[pos(v)] = true;
                    level[v] = level[u] + 1;
                    queue.push_back(v);
                } else {
                    g = gcd(g, (level[u] + 1 - level[v]).unsigned_abs() as usize);
                }
            }
        }
        debug_assert!(g > 0, "a cyclic component has a nonzero discrepancy");
        period[c] = g;
        for &v in members {
            phase[v] = level[v].rem_euclid(g as i64) as usize;
        }
    }

    Scc {
        members: comps,
        cyclic,
        period,
        phase,
    }
}
