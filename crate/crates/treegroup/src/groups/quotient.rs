use num_bigint::BigUint;
use num_traits::One;

use super::layered::{Elem, LayeredChain, Shape};
use super::schreier_sims::{PermChain, PermVec};
use super::spec::GroupSpec;
use crate::error::{input, Error, Result};
use crate::exec::Execution;
use crate::tree_core::Automorphism;

/// Default bound on m^n for the generic permutation engine.
pub const DEFAULT_POINT_CAP: usize = 30_000;

/// Knobs for quotient computations.
#[derive(Clone, Copy, Debug)]
pub struct QuotientOptions {
    /// Bound on m^n for the generic engine. The layered engine is bounded by
    /// `layered_vertex_cap` instead, since it never builds permutations.
    pub point_cap: usize,
    pub layered_vertex_cap: usize,
    pub exec: Execution,
    /// Skip the layered engine even when it applies.
    pub force_generic: bool,
}

impl Default for QuotientOptions {
    fn default() -> Self {
        QuotientOptions { point_cap: DEFAULT_POINT_CAP, layered_vertex_cap: 1 << 22, exec: Execution::Parallel, force_generic: false }
    }
}

fn is_prime(m: usize) -> bool {
    m >= 2 && (2..m).take_while(|d| d * d <= m).all(|d| !m.is_multiple_of(d))
}

/// Permutation of X^n (lexicographic leaf indices) induced by g.
pub fn leaf_permutation(g: &Automorphism, n: usize) -> Vec<u32> {
    let m = g.m() as u32;
    let states = g.states();
    let mut img = vec![0u32];
    let mut at = vec![0usize];
    for _ in 0..n {
        let mut next_img = Vec::with_capacity(img.len() * m as usize);
        let mut next_at = Vec::with_capacity(img.len() * m as usize);
        for (&im, &q) in img.iter().zip(&at) {
            let st = &states[q];
            for x in 0..m as usize {
                next_img.push(im * m + st.perm.apply(x) as u32);
                next_at.push(st.next[x]);
            }
        }
        img = next_img;
        at = next_at;
    }
    img
}

#[derive(Clone, Debug)]
enum Engine {
    Layered(LayeredChain),
    Perm(PermChain),
}

/// The image of a group (or subgroup) acting on the words of length n.
#[derive(Clone, Debug)]
pub struct LevelQuotient {
    m: usize,
    level: usize,
    engine: Engine,
}

fn layered_elems(shape: &Shape, gens: &[Automorphism]) -> Option<Vec<Elem>> {
    gens.iter().map(|g| shape.from_automorphism(g)).collect()
}

impl LevelQuotient {
    /// G/St_G(n).
    pub fn new(g: &GroupSpec, n: usize) -> Result<LevelQuotient> {
        Self::with_options(g, n, QuotientOptions::default())
    }

    pub fn with_options(g: &GroupSpec, n: usize, opts: QuotientOptions) -> Result<LevelQuotient> {
        let gens: Vec<Automorphism> = g.generators().cloned().collect();
        Self::generated(g.m(), n, &gens, opts)
    }

    fn check_alphabet(m: usize, gens: &[Automorphism]) -> Result<()> {
        if let Some(g) = gens.iter().find(|g| g.m() != m) {
            return input(format!("generator on alphabet {} in a group on alphabet {m}", g.m()));
        }
        Ok(())
    }

    fn layered_shape(m: usize, n: usize, opts: &QuotientOptions) -> Result<Option<Shape>> {
        if opts.force_generic || !is_prime(m) || m > 127 {
            return Ok(None);
        }
        let vertices = (0..n).try_fold(0usize, |acc, k| m.checked_pow(k as u32).and_then(|w| acc.checked_add(w)));
        match vertices {
            Some(v) if v <= opts.layered_vertex_cap => Ok(Some(Shape::new(m, n))),
            _ => Err(Error::Resource(format!("level {n} portraits exceed {} vertices", opts.layered_vertex_cap))),
        }
    }

    fn perm_degree(m: usize, n: usize, opts: &QuotientOptions) -> Result<usize> {
        match m.checked_pow(n as u32) {
            Some(d) if d <= opts.point_cap => Ok(d),
            _ => Err(Error::Resource(format!("{m}^{n} points exceed the point cap {}", opts.point_cap))),
        }
    }

    /// The image of ⟨gens⟩ in Aut(T)/St(n).
    pub fn generated(m: usize, n: usize, gens: &[Automorphism], opts: QuotientOptions) -> Result<LevelQuotient> {
        Self::check_alphabet(m, gens)?;
        if let Some(shape) = Self::layered_shape(m, n, &opts)? {
            if let Some(elems) = layered_elems(&shape, gens) {
                let chain = LayeredChain::build(shape, elems.clone(), &elems, opts.exec);
                return Ok(LevelQuotient { m, level: n, engine: Engine::Layered(chain) });
            }
        }
        let degree = Self::perm_degree(m, n, &opts)?;
        let perms: Vec<PermVec> = gens.iter().map(|g| leaf_permutation(g, n)).collect();
        Ok(LevelQuotient { m, level: n, engine: Engine::Perm(PermChain::new(degree, &perms)) })
    }

    /// The image of the normal closure of `seeds` in ⟨ambient⟩.
    pub fn normal_closure(
        m: usize,
        n: usize,
        seeds: &[Automorphism],
        ambient: &[Automorphism],
        opts: QuotientOptions,
    ) -> Result<LevelQuotient> {
        Self::check_alphabet(m, seeds)?;
        Self::check_alphabet(m, ambient)?;
        if let Some(shape) = Self::layered_shape(m, n, &opts)? {
            if let (Some(s), Some(a)) = (layered_elems(&shape, seeds), layered_elems(&shape, ambient)) {
                let chain = LayeredChain::build(shape, s, &a, opts.exec);
                return Ok(LevelQuotient { m, level: n, engine: Engine::Layered(chain) });
            }
        }
        let degree = Self::perm_degree(m, n, &opts)?;
        let amb: Vec<PermVec> = ambient.iter().map(|g| leaf_permutation(g, n)).collect();
        let amb_inv: Vec<PermVec> = amb
            .iter()
            .map(|g| {
                let mut out = vec![0; g.len()];
                for (i, &x) in g.iter().enumerate() {
                    out[x as usize] = i as u32;
                }
                out
            })
            .collect();
        let mut gens: Vec<PermVec> = seeds.iter().map(|g| leaf_permutation(g, n)).collect();
        let mut chain = PermChain::new(degree, &gens);
        let mut i = 0;
        while i < gens.len() {
            for (a, a_inv) in amb.iter().zip(&amb_inv) {
                // a⁻¹ g a
                let c: PermVec = a.iter().map(|&x| a_inv[gens[i][x as usize] as usize]).collect();
                if !chain.contains(&c) {
                    chain.extend(c.clone());
                    gens.push(c);
                }
            }
            i += 1;
        }
        Ok(LevelQuotient { m, level: n, engine: Engine::Perm(chain) })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn is_layered(&self) -> bool {
        matches!(self.engine, Engine::Layered(_))
    }

    pub fn order(&self) -> BigUint {
        match &self.engine {
            Engine::Layered(c) => BigUint::from(self.m).pow(c.log_order() as u32),
            Engine::Perm(c) => c.order(),
        }
    }

    /// log_m of the order when it is an exact power of m.
    pub fn log_order(&self) -> Option<u64> {
        match &self.engine {
            Engine::Layered(c) => Some(c.log_order() as u64),
            Engine::Perm(c) => exact_log(&c.order(), self.m),
        }
    }

    /// Ranks of St(k)/St(k+1) for k < n (layered engine only).
    pub fn layer_ranks(&self) -> Option<Vec<usize>> {
        match &self.engine {
            Engine::Layered(c) => Some(c.ranks()),
            Engine::Perm(_) => None,
        }
    }

    /// Orbit lengths along the stabiliser chain; their product is the order.
    /// For the layered engine every layer contributes `rank` orbits of length m.
    pub fn orbit_lengths(&self) -> Vec<usize> {
        match &self.engine {
            Engine::Layered(c) => vec![self.m; c.log_order()],
            Engine::Perm(c) => c.orbit_lengths(),
        }
    }

    /// Base points as leaf indices (generic engine only).
    pub fn base(&self) -> Option<Vec<u32>> {
        match &self.engine {
            Engine::Layered(_) => None,
            Engine::Perm(c) => Some(c.base()),
        }
    }

    pub fn strong_generator_count(&self) -> usize {
        match &self.engine {
            Engine::Layered(c) => c.log_order(),
            Engine::Perm(c) => c.strong_generators().len(),
        }
    }

    /// Is the level-n image of g in this group?
    pub fn contains(&self, g: &Automorphism) -> Result<bool> {
        if g.m() != self.m {
            return input("alphabet mismatch");
        }
        match &self.engine {
            Engine::Layered(c) => match c.shape.from_automorphism(g) {
                Some(e) => Ok(c.contains(&e)),
                None => Ok(false),
            },
            Engine::Perm(c) => Ok(c.contains(&leaf_permutation(g, self.level))),
        }
    }

    /// Is St_self(k) (the part of this group fixing level k) contained in
    /// `other`? Both must come from the layered engine at the same level.
    pub fn stabilizer_part_within(&self, k: usize, other: &LevelQuotient) -> Option<bool> {
        match (&self.engine, &other.engine) {
            (Engine::Layered(a), Engine::Layered(b)) if self.level == other.level => Some(a.stabilizer_part_within(k, b)),
            _ => None,
        }
    }

    /// |G/St(k)| for k = 0..=n, read off the layers (layered engine), or
    /// recomputed level by level.
    pub fn orders_by_level(&self, g: &[Automorphism], opts: QuotientOptions) -> Result<Vec<BigUint>> {
        match &self.engine {
            Engine::Layered(c) => {
                let mut acc = 0u32;
                let mut out = vec![BigUint::one()];
                for r in c.ranks() {
                    acc += r as u32;
                    out.push(BigUint::from(self.m).pow(acc));
                }
                Ok(out)
            }
            Engine::Perm(_) => {
                let mut out = Vec::with_capacity(self.level + 1);
                for k in 0..self.level {
                    out.push(LevelQuotient::generated(self.m, k, g, opts)?.order());
                }
                out.push(self.order());
                Ok(out)
            }
        }
    }
}

/// log_m(x) if x is an exact power of m.
pub fn exact_log(x: &BigUint, m: usize) -> Option<u64> {
    let m = BigUint::from(m);
    let mut k = 0;
    let mut acc = BigUint::one();
    while &acc < x {
        acc *= &m;
        k += 1;
    }
    (&acc == x).then_some(k)
}
