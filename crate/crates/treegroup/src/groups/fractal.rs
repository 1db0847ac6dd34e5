//! Truncated fractality checks. Every check compares finite quotients; none
//! of them claims the infinite-depth property.

use std::collections::HashMap;

use super::quotient::{leaf_permutation, LevelQuotient, QuotientOptions};
use super::spec::GroupSpec;
use crate::error::{input, Error, Result};
use crate::tree_core::{Automorphism, Perm};

/// Default bound on the size of an enumerated level quotient.
pub const DEFAULT_TRANSVERSAL_CAP: usize = 20_000;

/// Right transversal of St_G(k) in G: one representative per element of
/// G/St(k), found breadth-first from the identity. Representatives are keyed
/// by their leaf permutation on X^k.
pub fn level_transversal(g: &GroupSpec, k: usize, cap: usize) -> Result<Vec<Automorphism>> {
    let gens: Vec<Automorphism> = g.generators().cloned().collect();
    let images: Vec<Vec<u32>> = gens.iter().map(|h| leaf_permutation(h, k)).collect();
    let id = Automorphism::identity(g.m());
    let mut keys: HashMap<Vec<u32>, usize> = HashMap::new();
    let mut reps = vec![id.clone()];
    let mut perms = vec![leaf_permutation(&id, k)];
    keys.insert(perms[0].clone(), 0);
    let mut i = 0;
    while i < reps.len() {
        for (s, img) in gens.iter().zip(&images) {
            let p: Vec<u32> = perms[i].iter().map(|&x| img[x as usize]).collect();
            if !keys.contains_key(&p) {
                if reps.len() >= cap {
                    return Err(Error::Resource(format!("G/St({k}) has more than {cap} elements")));
                }
                keys.insert(p.clone(), reps.len());
                reps.push(s.compose(&reps[i])?);
                perms.push(p);
            }
        }
        i += 1;
    }
    Ok(reps)
}

/// Schreier generators of St_G(k): rep(s·t)⁻¹ · s · t over the transversal.
pub fn level_stabilizer_generators(g: &GroupSpec, k: usize, cap: usize) -> Result<Vec<Automorphism>> {
    let reps = level_transversal(g, k, cap)?;
    let key = |h: &Automorphism| leaf_permutation(h, k);
    let index: HashMap<Vec<u32>, usize> = reps.iter().enumerate().map(|(i, r)| (key(r), i)).collect();
    let mut out = Vec::new();
    for t in &reps {
        for s in g.generators() {
            let st = s.compose(t)?;
            let r = &reps[index[&key(&st)]];
            let h = r.inverse().compose(&st)?;
            if !h.is_identity() && !out.contains(&h) {
                out.push(h);
            }
        }
    }
    Ok(out)
}

/// Schreier generators of the vertex stabiliser st_G(x) for a first-level
/// vertex x.
pub fn vertex_stabilizer_generators(g: &GroupSpec, x: usize) -> Result<Vec<Automorphism>> {
    if x >= g.m() {
        return input(format!("letter {x} out of range"));
    }
    let m = g.m();
    let mut reps: Vec<Option<Automorphism>> = vec![None; m];
    reps[x] = Some(Automorphism::identity(m));
    let mut queue = vec![x];
    let mut i = 0;
    while i < queue.len() {
        let y = queue[i];
        for s in g.generators() {
            let z = s.root_perm().apply(y);
            if reps[z].is_none() {
                reps[z] = Some(s.compose(reps[y].as_ref().unwrap())?);
                queue.push(z);
            }
        }
        i += 1;
    }
    let mut out = Vec::new();
    for &y in &queue {
        let u = reps[y].as_ref().unwrap();
        for s in g.generators() {
            let su = s.compose(u)?;
            let z = s.root_perm().apply(y);
            let h = reps[z].as_ref().unwrap().inverse().compose(&su)?;
            if !h.is_identity() && !out.contains(&h) {
                out.push(h);
            }
        }
    }
    Ok(out)
}

fn sections_at(elems: &[Automorphism], x: usize) -> Result<Vec<Automorphism>> {
    elems.iter().map(|h| h.section(&[x])).collect()
}

/// Same image in Aut(T)/St(level)? Equal orders plus membership both ways.
fn same_image(m: usize, level: usize, a: &[Automorphism], b: &[Automorphism], opts: QuotientOptions) -> Result<bool> {
    let qa = LevelQuotient::generated(m, level, a, opts)?;
    let qb = LevelQuotient::generated(m, level, b, opts)?;
    if qa.order() != qb.order() {
        return Ok(false);
    }
    for h in a {
        if !qb.contains(h)? {
            return Ok(false);
        }
    }
    for h in b {
        if !qa.contains(h)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn check_depth(n: usize) -> Result<()> {
    if n < 2 {
        return input("fractality checks need depth at least 2");
    }
    Ok(())
}

/// st_G(x)|_x = G for every first-level x, compared at level n−1.
pub fn is_fractal_at(g: &GroupSpec, n: usize, opts: QuotientOptions) -> Result<bool> {
    check_depth(n)?;
    let gens: Vec<Automorphism> = g.generators().cloned().collect();
    for x in 0..g.m() {
        let secs = sections_at(&vertex_stabilizer_generators(g, x)?, x)?;
        if !same_image(g.m(), n - 1, &secs, &gens, opts)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// St_G(1)|_x = G for every first-level x, compared at level n−1.
pub fn is_strongly_fractal_at(g: &GroupSpec, n: usize, opts: QuotientOptions) -> Result<bool> {
    check_depth(n)?;
    let gens: Vec<Automorphism> = g.generators().cloned().collect();
    let st1 = level_stabilizer_generators(g, 1, DEFAULT_TRANSVERSAL_CAP)?;
    for x in 0..g.m() {
        let secs = sections_at(&st1, x)?;
        if !same_image(g.m(), n - 1, &secs, &gens, opts)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// St_G(k+1)|_x = St_G(k) for all k < n−1 and every first-level x, with both
/// sides compared in Aut(T)/St(n−1).
pub fn is_very_strongly_fractal_at(g: &GroupSpec, n: usize, opts: QuotientOptions) -> Result<bool> {
    check_depth(n)?;
    let m = g.m();
    let top = n - 1;
    let gens: Vec<Automorphism> = g.generators().cloned().collect();
    let whole = LevelQuotient::generated(m, top, &gens, opts)?;
    let orders = whole.orders_by_level(&gens, opts)?;
    for k in 0..top {
        let stk1 = level_stabilizer_generators(g, k + 1, DEFAULT_TRANSVERSAL_CAP)?;
        // |St_G(k)/St_G(n−1)|
        let expected = &orders[top] / &orders[k];
        for x in 0..m {
            let secs = sections_at(&stk1, x)?;
            let q = LevelQuotient::generated(m, top, &secs, opts)?;
            if q.order() != expected {
                return Ok(false);
            }
            for h in &secs {
                if !whole.contains(h)? || !fixes_level(h, k) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

fn fixes_level(h: &Automorphism, k: usize) -> bool {
    h.portrait(k).labels().iter().all(Perm::is_identity)
}

/// The level-k image acts transitively for every k ≤ n.
pub fn is_spherically_transitive(g: &GroupSpec, n: usize) -> Result<bool> {
    let m = g.m();
    let points = match m.checked_pow(n as u32) {
        Some(p) if p <= 1 << 24 => p,
        _ => return Err(Error::Resource(format!("{m}^{n} points are too many"))),
    };
    // transitivity on X^n implies it on every shorter level
    let perms: Vec<Vec<u32>> = g.generators().map(|h| leaf_permutation(h, n)).collect();
    let mut seen = vec![false; points];
    seen[0] = true;
    let mut stack = vec![0u32];
    let mut count = 1;
    while let Some(x) = stack.pop() {
        for p in &perms {
            let y = p[x as usize];
            if !seen[y as usize] {
                seen[y as usize] = true;
                count += 1;
                stack.push(y);
            }
        }
    }
    Ok(count == points)
}
