//! Self-similar closure of a generating set.

use std::collections::{BTreeSet, VecDeque};

use super::spec::GroupSpec;
use crate::error::{Error, Result};
use crate::tree_core::{Automorphism, Vertex};

/// Adjoin every section of every generator. A section is skipped when it,
/// or its inverse, is already present. New generators are named
/// `{generator}|{vertex}` after the first vertex (in breadth-first order)
/// where they occur.
pub fn self_similar_closure(g: &GroupSpec, cap: usize) -> Result<GroupSpec> {
    let m = g.m();
    let mut present: BTreeSet<Automorphism> = BTreeSet::new();
    present.insert(Automorphism::identity(m));
    for h in g.generators() {
        present.insert(h.clone());
        present.insert(h.inverse());
    }
    let mut gens: Vec<(String, Automorphism)> = g.named().to_vec();
    for (name, h) in g.named() {
        // breadth-first over the states of h, remembering one vertex each
        let states = h.states();
        let mut seen = vec![false; states.len()];
        seen[0] = true;
        let mut queue = VecDeque::from([(0usize, Vec::<usize>::new())]);
        while let Some((q, path)) = queue.pop_front() {
            let sec = h.at_state(q);
            if !present.contains(&sec) {
                if gens.len() >= cap {
                    return Err(Error::Resource(format!("self-similar closure passed {cap} generators")));
                }
                present.insert(sec.inverse());
                present.insert(sec.clone());
                gens.push((format!("{name}|{}", Vertex(path.clone())), sec));
            }
            for (x, &r) in states[q].next.iter().enumerate() {
                if !seen[r] {
                    seen[r] = true;
                    let mut p = path.clone();
                    p.push(x);
                    queue.push_back((r, p));
                }
            }
        }
    }
    GroupSpec::new(m, gens)
}

/// Every section of every generator is trivial, a generator, or the inverse
/// of one.
pub fn is_self_similar_closed(g: &GroupSpec) -> bool {
    let mut allowed: BTreeSet<Automorphism> = BTreeSet::new();
    allowed.insert(Automorphism::identity(g.m()));
    for h in g.generators() {
        allowed.insert(h.clone());
        allowed.insert(h.inverse());
    }
    g.generators().all(|h| (0..h.num_states()).all(|q| allowed.contains(&h.at_state(q))))
}
