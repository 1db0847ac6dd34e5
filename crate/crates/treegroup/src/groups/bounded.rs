//! Activity growth of finite-state automorphisms.

use num_bigint::BigUint;
use num_traits::Zero;

use crate::tree_core::Automorphism;

/// μ_0..μ_n: the number of vertices on each level with a nontrivial section,
/// by counting paths in the canonical machine.
pub fn activity_sequence(g: &Automorphism, n: usize) -> Vec<BigUint> {
    let states = g.states();
    let id = g.identity_state();
    let mut count = vec![BigUint::zero(); states.len()];
    count[0] = BigUint::from(1u32);
    let mut out = Vec::with_capacity(n + 1);
    for level in 0..=n {
        let mu: BigUint = count.iter().enumerate().filter(|&(q, _)| q != id).map(|(_, c)| c).sum();
        out.push(mu);
        if level == n {
            break;
        }
        let mut next = vec![BigUint::zero(); states.len()];
        for (q, c) in count.iter().enumerate() {
            if q == id || c.is_zero() {
                continue;
            }
            for &r in &states[q].next {
                next[r] += c;
            }
        }
        count = next;
    }
    out
}

/// Strongly connected components of the non-identity part (Tarjan).
pub(super) fn components(g: &Automorphism) -> Vec<usize> {
    let states = g.states();
    let id = g.identity_state();
    let n = states.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comp = vec![usize::MAX; n];
    let mut counter = 0;
    let mut ncomp = 0;
    for root in 0..n {
        if root == id || index[root] != usize::MAX {
            continue;
        }
        // iterative DFS: (state, next edge position)
        let mut call = vec![(root, 0usize)];
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&(q, e)) = call.last() {
            if e < states[q].next.len() {
                let r = states[q].next[e];
                call.last_mut().unwrap().1 += 1;
                if r == id {
                    continue;
                }
                if index[r] == usize::MAX {
                    index[r] = counter;
                    low[r] = counter;
                    counter += 1;
                    stack.push(r);
                    on_stack[r] = true;
                    call.push((r, 0));
                } else if on_stack[r] {
                    low[q] = low[q].min(index[r]);
                }
            } else {
                call.pop();
                if let Some(&(p, _)) = call.last() {
                    low[p] = low[p].min(low[q]);
                }
                if low[q] == index[q] {
                    while let Some(r) = stack.pop() {
                        on_stack[r] = false;
                        comp[r] = ncomp;
                        if r == q {
                            break;
                        }
                    }
                    ncomp += 1;
                }
            }
        }
    }
    comp
}

/// Bounded iff, among non-identity states reachable from the initial state,
/// every cycle is a simple cycle and no path joins two distinct cycles.
pub fn is_bounded(g: &Automorphism) -> bool {
    let states = g.states();
    let id = g.identity_state();
    if id == 0 {
        return true;
    }
    let comp = components(g);
    let ncomp = comp.iter().filter(|&&c| c != usize::MAX).max().map_or(0, |&c| c + 1);
    // internal out-degree (with multiplicity) of each state
    let mut cyclic = vec![false; ncomp];
    for (q, st) in states.iter().enumerate() {
        if q == id {
            continue;
        }
        let internal = st.next.iter().filter(|&&r| r != id && comp[r] == comp[q]).count();
        if internal > 1 {
            return false;
        }
        if internal == 1 {
            cyclic[comp[q]] = true;
        }
    }
    // cycles reachable from each cyclic component, other than itself
    for start in 0..states.len() {
        if start == id || !cyclic[comp[start]] {
            continue;
        }
        let c0 = comp[start];
        let mut seen = vec![false; states.len()];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(q) = stack.pop() {
            for &r in &states[q].next {
                if r == id || seen[r] {
                    continue;
                }
                if comp[r] != c0 && cyclic[comp[r]] {
                    return false;
                }
                seen[r] = true;
                stack.push(r);
            }
        }
    }
    true
}
