//! Deterministic Schreier–Sims for permutation groups on a few thousand
//! points. Used for quotients whose labels are not all powers of σ.

use num_bigint::BigUint;

pub(crate) type PermVec = Vec<u32>;

fn compose(g: &[u32], h: &[u32]) -> PermVec {
    h.iter().map(|&x| g[x as usize]).collect()
}

fn invert(g: &[u32]) -> PermVec {
    let mut out = vec![0; g.len()];
    for (i, &x) in g.iter().enumerate() {
        out[x as usize] = i as u32;
    }
    out
}

fn is_identity(g: &[u32]) -> bool {
    g.iter().enumerate().all(|(i, &x)| i as u32 == x)
}

#[derive(Clone, Debug)]
struct Level {
    base: u32,
    gens: Vec<PermVec>,
    gens_inv: Vec<PermVec>,
    orbit: Vec<u32>,
    /// For each point of the orbit, the generator that first reached it
    /// (`usize::MAX` for the base point and for points outside the orbit).
    via: Vec<usize>,
}

impl Level {
    fn new(degree: usize, base: u32) -> Level {
        let mut l = Level { base, gens: Vec::new(), gens_inv: Vec::new(), orbit: vec![base], via: vec![usize::MAX; degree] };
        l.recompute();
        l
    }

    fn recompute(&mut self) {
        self.via.iter_mut().for_each(|v| *v = usize::MAX);
        self.orbit = vec![self.base];
        let mut seen = vec![false; self.via.len()];
        seen[self.base as usize] = true;
        let mut i = 0;
        while i < self.orbit.len() {
            let x = self.orbit[i];
            for (k, g) in self.gens.iter().enumerate() {
                let y = g[x as usize];
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    self.via[y as usize] = k;
                    self.orbit.push(y);
                }
            }
            i += 1;
        }
    }

    fn in_orbit(&self, x: u32) -> bool {
        x == self.base || self.via[x as usize] != usize::MAX
    }

    /// u⁻¹·h where u is the transversal element with u(base) = beta.
    fn strip(&self, mut h: PermVec, mut beta: u32) -> PermVec {
        while beta != self.base {
            let k = self.via[beta as usize];
            h = compose(&self.gens_inv[k], &h);
            beta = self.gens_inv[k][beta as usize];
        }
        h
    }

    /// Transversal element u with u(base) = beta.
    fn transversal(&self, beta: u32) -> PermVec {
        let degree = self.via.len();
        let mut u: PermVec = (0..degree as u32).collect();
        let mut b = beta;
        while b != self.base {
            let k = self.via[b as usize];
            u = compose(&u, &self.gens[k]);
            b = self.gens_inv[k][b as usize];
        }
        u
    }

    fn add_gen(&mut self, g: PermVec) {
        self.gens_inv.push(invert(&g));
        self.gens.push(g);
        self.recompute();
    }
}

/// A base and strong generating set.
#[derive(Clone, Debug)]
pub(crate) struct PermChain {
    degree: usize,
    levels: Vec<Level>,
}

impl PermChain {
    pub fn new(degree: usize, gens: &[PermVec]) -> PermChain {
        let mut chain = PermChain { degree, levels: Vec::new() };
        for g in gens {
            chain.extend(g.clone());
        }
        chain
    }

    /// Sift from level `from`; returns the residue and the level where it stopped.
    fn sift(&self, mut h: PermVec, from: usize) -> (PermVec, usize) {
        for (i, level) in self.levels.iter().enumerate().skip(from) {
            let beta = h[level.base as usize];
            if !level.in_orbit(beta) {
                return (h, i);
            }
            h = level.strip(h, beta);
        }
        (h, self.levels.len())
    }

    pub fn contains(&self, g: &[u32]) -> bool {
        let (h, j) = self.sift(g.to_vec(), 0);
        j == self.levels.len() && is_identity(&h)
    }

    /// Add a generator and restore the strong generating property.
    pub fn extend(&mut self, g: PermVec) {
        if self.contains(&g) {
            return;
        }
        let (h, j) = self.sift(g, 0);
        self.add_residue(h, 0, j);
        let mut i = self.levels.len();
        while i > 0 {
            let level = i - 1;
            match self.find_schreier_failure(level) {
                Some((h, j)) => {
                    self.add_residue(h, level + 1, j);
                    i = self.levels.len().min(j + 1);
                }
                None => i -= 1,
            }
        }
    }

    fn add_residue(&mut self, h: PermVec, from: usize, to: usize) {
        let to = if to == self.levels.len() {
            let moved = h.iter().enumerate().position(|(i, &x)| i as u32 != x).expect("nontrivial residue");
            self.levels.push(Level::new(self.degree, moved as u32));
            self.levels.len() - 1
        } else {
            to
        };
        for l in from..=to {
            self.levels[l].add_gen(h.clone());
        }
    }

    fn find_schreier_failure(&self, i: usize) -> Option<(PermVec, usize)> {
        let level = &self.levels[i];
        for &beta in &level.orbit {
            let u = level.transversal(beta);
            for s in &level.gens {
                let su = compose(s, &u);
                let gamma = su[level.base as usize];
                let h = level.strip(su, gamma);
                let (res, j) = self.sift(h, i + 1);
                if !is_identity(&res) {
                    return Some((res, j));
                }
            }
        }
        None
    }

    pub fn order(&self) -> BigUint {
        self.levels.iter().fold(BigUint::from(1u32), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn strong_generators(&self) -> Vec<PermVec> {
        self.levels.first().map(|l| l.gens.clone()).unwrap_or_default()
    }
}
