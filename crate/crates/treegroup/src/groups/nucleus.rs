//! Contraction nuclei by fixed-point search, and the candidate nucleus of a
//! Basilica group built from syllables.

use std::collections::BTreeSet;

use super::spec::GroupSpec;
use crate::basilica::beta;
use crate::error::{input, Error, Result};
use crate::exec::Execution;
use crate::tree_core::Automorphism;

/// Result of a nucleus search.
///
/// `core` is the nucleus proper: the states lying on cycles of the section
/// graph, together with their sections. `elements` adds the identity, the
/// generators, their inverses and all their sections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nucleus {
    m: usize,
    core: BTreeSet<Automorphism>,
    elements: BTreeSet<Automorphism>,
}

fn states_of(g: &Automorphism) -> impl Iterator<Item = Automorphism> + '_ {
    (0..g.num_states()).map(move |q| g.at_state(q))
}

/// Marks the states of g that lie on a cycle, and everything below them.
fn cycle_mask(g: &Automorphism) -> Vec<bool> {
    let states = g.states();
    let n = states.len();
    let comp = super::bounded::components(g);
    let mut size = vec![0usize; n];
    for &c in &comp {
        if c != usize::MAX {
            size[c] += 1;
        }
    }
    let mut keep = vec![false; n];
    keep[g.identity_state()] = true;
    let mut stack = Vec::new();
    for q in 0..n {
        let c = comp[q];
        if c != usize::MAX && (size[c] > 1 || states[q].next.contains(&q)) {
            keep[q] = true;
            stack.push(q);
        }
    }
    while let Some(q) = stack.pop() {
        for &r in &states[q].next {
            if !keep[r] {
                keep[r] = true;
                stack.push(r);
            }
        }
    }
    keep
}

/// States of g that lie on a cycle, and everything reachable from them.
fn cycle_part(g: &Automorphism) -> Vec<Automorphism> {
    let keep = cycle_mask(g);
    (0..keep.len()).filter(|&q| keep[q]).map(|q| g.at_state(q)).collect()
}

fn cycle_part_capped(g: &Automorphism, cap: usize) -> Result<Vec<Automorphism>> {
    if g.num_states() > cap.saturating_add(1) && cycle_part_len(g) > cap {
        return Err(Error::Inconclusive(format!("a product has more than {cap} states on cycles")));
    }
    Ok(cycle_part(g))
}

fn cycle_part_len(g: &Automorphism) -> usize {
    cycle_mask(g).iter().filter(|&&k| k).count()
}

impl Nucleus {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, g: &Automorphism) -> bool {
        self.elements.contains(g)
    }

    pub fn elements(&self) -> impl Iterator<Item = &Automorphism> {
        self.elements.iter()
    }

    pub fn core(&self) -> impl Iterator<Item = &Automorphism> {
        self.core.iter()
    }

    pub fn core_len(&self) -> usize {
        self.core.len()
    }

    /// Both sets are closed under sections.
    pub fn is_section_closed(&self) -> bool {
        [&self.core, &self.elements].iter().all(|set| set.iter().all(|g| states_of(g).all(|h| set.contains(&h))))
    }

    /// For x, y in the core, every section of xy deep enough to lie on or
    /// below a cycle of its machine is in the core.
    pub fn is_product_closed(&self, exec: Execution) -> Result<bool> {
        let all: Vec<&Automorphism> = self.core.iter().collect();
        let pairs: Vec<(usize, usize)> = (0..all.len()).flat_map(|i| (0..all.len()).map(move |j| (i, j))).collect();
        let ok = exec.map(&pairs, |&(i, j)| -> Result<bool> {
            let p = all[i].compose(all[j])?;
            Ok(cycle_part(&p).iter().all(|h| self.core.contains(h)))
        });
        for r in ok {
            if !r? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Default caps for [`nucleus`].
pub const DEFAULT_NUCLEUS_ROUNDS: usize = 64;
pub const DEFAULT_NUCLEUS_SIZE: usize = 5_000;

const PAIR_CHUNK: usize = 256;

/// Nucleus search: start from the cycle parts of the generators and their
/// inverses, then repeatedly adjoin the cycle parts of all pairwise products
/// until nothing new appears. Every element found lies in the nucleus of a
/// contracting group, and at the fixed point deep sections of all products
/// stay inside, so the result is the nucleus. Hitting a cap means
/// contraction was neither shown nor refuted.
pub fn nucleus(g: &GroupSpec, rounds_cap: usize, size_cap: usize, exec: Execution) -> Result<Nucleus> {
    let m = g.m();
    let mut core: BTreeSet<Automorphism> = BTreeSet::new();
    core.insert(Automorphism::identity(m));
    let mut elements = core.clone();
    for h in g.generators() {
        for k in [h.clone(), h.inverse()] {
            core.extend(cycle_part(&k));
            elements.extend(states_of(&k));
        }
    }
    let mut fresh: Vec<Automorphism> = core.iter().cloned().collect();
    for _ in 0..rounds_cap {
        if fresh.is_empty() {
            elements.extend(core.iter().cloned());
            return Ok(Nucleus { m, core, elements });
        }
        let all: Vec<Automorphism> = core.iter().cloned().collect();
        if fresh.len().saturating_mul(all.len()) > size_cap.saturating_mul(size_cap) {
            return Err(Error::Inconclusive(format!("nucleus search passed {size_cap} elements")));
        }
        // products with at least one factor new in the last round
        let mut pairs = Vec::with_capacity(2 * fresh.len() * all.len());
        for x in 0..fresh.len() {
            for y in 0..all.len() {
                pairs.push((true, x, y));
                pairs.push((false, x, y));
            }
        }
        // work in chunks so that an exploding search stops early
        let product_cap = size_cap.saturating_mul(4).saturating_add(16);
        let mut next = Vec::new();
        for chunk in pairs.chunks(PAIR_CHUNK) {
            let found = exec.map(chunk, |&(left, x, y)| {
                let p = if left { fresh[x].compose_capped(&all[y], product_cap) } else { all[y].compose_capped(&fresh[x], product_cap) };
                match p {
                    Ok(p) => cycle_part_capped(&p, size_cap),
                    Err(Error::Resource(msg)) => Err(Error::Inconclusive(msg)),
                    Err(e) => Err(e),
                }
            });
            for r in found {
                for h in r? {
                    if core.insert(h.clone()) {
                        next.push(h);
                        if core.len() > size_cap {
                            return Err(Error::Inconclusive(format!("nucleus search passed {size_cap} elements")));
                        }
                    }
                }
            }
        }
        fresh = next;
    }
    Err(Error::Inconclusive(format!("nucleus search did not stabilise in {rounds_cap} rounds")))
}

/// Products of at most s+1 syllables β^s_j(h), h in the nucleus (core) of G.
pub fn nucleus_bp_candidate(n: &Nucleus, s: usize, size_cap: usize) -> Result<BTreeSet<Automorphism>> {
    if s == 0 {
        return input("s must be at least 1");
    }
    if s == 1 {
        return Ok(n.core.clone());
    }
    let mut syllables = BTreeSet::new();
    for h in n.core() {
        for j in 0..s {
            syllables.insert(beta(h, s, j)?);
        }
    }
    let syllables: Vec<Automorphism> = syllables.into_iter().collect();
    let mut out: BTreeSet<Automorphism> = BTreeSet::new();
    out.insert(Automorphism::identity(n.m));
    let mut frontier = vec![Automorphism::identity(n.m)];
    for _ in 0..=s {
        let mut next = Vec::new();
        for w in &frontier {
            for y in &syllables {
                let p = w.compose(y)?;
                if out.insert(p.clone()) {
                    if out.len() > size_cap {
                        return Err(Error::Resource(format!("candidate set passed {size_cap} elements")));
                    }
                    next.push(p);
                }
            }
        }
        frontier = next;
    }
    Ok(out)
}
