//! The L-presentation ⟨Y | Q | Φ | R⟩ of bp_s(O_m^d).

use std::collections::HashSet;

use serde::Serialize;

use super::class2::{collect, pair_count, AbelianInvariants, Lattice};
use super::word::FreeWord;
use crate::error::{input, Error, Result};
use crate::exec::Execution;
use crate::groups::GroupSpec;

/// Parameters (d, m, s); the letter a_{i,j} has index j·d + i, which is also
/// its position in `zoo::generalised_basilica(d, m, s)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LPresentation {
    pub d: usize,
    pub m: usize,
    pub s: usize,
}

/// Result of evaluating relators in the automaton group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelatorCheck {
    pub checked: usize,
    /// Positions of relators that are not the identity.
    pub failures: Vec<usize>,
}

impl RelatorCheck {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

fn box_vectors(d: usize, r: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..d {
        out = out.into_iter().flat_map(|v| (-r..=r).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    out
}

impl LPresentation {
    pub fn new(d: usize, m: usize, s: usize) -> Result<LPresentation> {
        if d == 0 || s == 0 || m < 2 {
            return input(format!("invalid parameters d = {d}, m = {m}, s = {s}"));
        }
        Ok(LPresentation { d, m, s })
    }

    /// |Y| = ds.
    pub fn n(&self) -> usize {
        self.d * self.s
    }

    pub fn y(&self, i: usize, j: usize) -> usize {
        j * self.d + i
    }

    fn letter(&self, i: usize, j: usize) -> FreeWord {
        FreeWord::power_of(self.y(i, j), 1)
    }

    /// Q = {[a_{i,j}, a_{i',j}] : i ≠ i'}.
    pub fn q_relators(&self) -> Vec<FreeWord> {
        let mut out = Vec::new();
        for j in 0..self.s {
            for i in 0..self.d {
                for i2 in 0..self.d {
                    if i != i2 {
                        out.push(self.letter(i, j).comm(&self.letter(i2, j)));
                    }
                }
            }
        }
        out
    }

    /// α(v, k) = a_{0,0}^{m v_0 + k} a_{1,0}^{v_1} ⋯ a_{d−1,0}^{v_{d−1}}.
    pub fn alpha(&self, v: &[i64], k: usize) -> Result<FreeWord> {
        if v.len() != self.d || k >= self.m {
            return input("α needs v of length d and k < m");
        }
        let mut w = FreeWord::power_of(self.y(0, 0), self.m as i64 * v[0] + k as i64);
        for (i, &vi) in v.iter().enumerate().skip(1) {
            w = w.mul(&FreeWord::power_of(self.y(i, 0), vi));
        }
        Ok(w)
    }

    /// R instances [a_{i,j}, a_{i',j'}^{α(v,k)}] with j, j' ≥ 1, k ≥ 1 and
    /// v in the box [−v_box, v_box]^d.
    pub fn r_relators(&self, v_box: usize) -> Vec<FreeWord> {
        self.r_relators_over(&box_vectors(self.d, v_box as i64))
    }

    fn r_relators_over(&self, vs: &[Vec<i64>]) -> Vec<FreeWord> {
        let mut out = Vec::new();
        for v in vs {
            for k in 1..self.m {
                let a = self.alpha(v, k).expect("valid v and k");
                for j in 1..self.s {
                    for j2 in 1..self.s {
                        for i in 0..self.d {
                            for i2 in 0..self.d {
                                out.push(self.letter(i, j).comm(&self.letter(i2, j2).conj(&a)));
                            }
                        }
                    }
                }
            }
        }
        out
    }

    fn phi_letter(&self, y: usize) -> FreeWord {
        let (i, j) = (y % self.d, y / self.d);
        if j + 1 < self.s {
            self.letter(i, j + 1)
        } else if i + 1 < self.d {
            self.letter(i + 1, 0)
        } else {
            FreeWord::power_of(self.y(0, 0), self.m as i64)
        }
    }

    /// Φ: a_{i,j} ↦ a_{i,j+1} (j ≠ s−1), a_{i,s−1} ↦ a_{i+1,0} (i ≠ d−1),
    /// a_{d−1,s−1} ↦ a_{0,0}^m.
    pub fn apply_phi(&self, w: &FreeWord) -> FreeWord {
        w.substitute(|y| self.phi_letter(y))
    }

    pub fn apply_phi_pow(&self, w: &FreeWord, r: usize) -> FreeWord {
        (0..r).fold(w.clone(), |acc, _| self.apply_phi(&acc))
    }

    /// Θ_{i'}: a_{i,j} ↦ a_{i,j} a_{i,j}^{c} for j ≠ 0 with c = a_{i',0}
    /// (i' ≠ 0) or c = a_{0,0}^m (i' = 0); a_{i,0} ↦ a_{i,0}.
    pub fn apply_theta(&self, i2: usize, w: &FreeWord) -> Result<FreeWord> {
        if i2 >= self.d {
            return input(format!("Θ index {i2} out of range"));
        }
        let c = if i2 == 0 { FreeWord::power_of(self.y(0, 0), self.m as i64) } else { self.letter(i2, 0) };
        Ok(w.substitute(|y| {
            let x = FreeWord::power_of(y, 1);
            if y < self.d {
                x
            } else {
                x.mul(&x.conj(&c))
            }
        }))
    }

    /// The R instances of the finite presentation: v ∈ {0} × {0,1}^{d−1}.
    pub fn finite_r_relators(&self) -> Vec<FreeWord> {
        let vs: Vec<Vec<i64>> = box_vectors(self.d - 1, 1)
            .into_iter()
            .filter(|v| v.iter().all(|&x| x >= 0))
            .map(|v| [vec![0], v].concat())
            .collect();
        self.r_relators_over(&vs)
    }

    /// Q ∪ {Φ^r(ρ) : ρ ∈ R(v_box), r ≤ r_max}, reduced, without the empty
    /// word and duplicates, in generation order.
    pub fn relators(&self, r_max: usize, v_box: usize) -> Vec<FreeWord> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        let mut add = |w: FreeWord| {
            if !w.is_empty() && seen.insert(w.clone()) {
                out.push(w);
            }
        };
        self.q_relators().into_iter().for_each(&mut add);
        let mut layer = self.r_relators(v_box);
        for r in 0..=r_max {
            if r > 0 {
                layer = layer.iter().map(|w| self.apply_phi(w)).collect();
            }
            layer.iter().cloned().for_each(&mut add);
        }
        out
    }

    /// Every relator has exponent sum zero in every generator.
    pub fn abelianization_check(&self, r_max: usize, v_box: usize) -> bool {
        zero_exponent_sums(&self.relators(r_max, v_box), self.n())
    }

    /// Class-2 images of the relators Φ^r(R) for r in `rs` (v in {−1,0,1}^d).
    fn class2_rows(&self, words: &[FreeWord]) -> Result<Vec<Vec<i64>>> {
        words
            .iter()
            .map(|w| {
                let c = collect(w, self.n());
                if c.is_central() {
                    Ok(c.comms)
                } else {
                    input(format!("relator {} is not in the commutator subgroup", w.display(self.d)))
                }
            })
            .collect()
    }

    fn phi_layers(&self, r_max: usize) -> Vec<Vec<FreeWord>> {
        let mut layers = vec![self.r_relators(1)];
        for _ in 0..r_max {
            let next = layers.last().unwrap().iter().map(|w| self.apply_phi(w)).collect();
            layers.push(next);
        }
        layers
    }

    /// The class-2 images of Φ^r(R) for r ∈ {r_max−1, r_max} lie in the
    /// lattice spanned by Q and the images for r ≤ r_max−2.
    pub fn phi_stabilization(&self, r_max: usize) -> Result<bool> {
        let layers = self.phi_layers(r_max);
        let mut lattice = Lattice::new(pair_count(self.n()));
        for row in self.class2_rows(&self.q_relators())? {
            lattice.insert(&row)?;
        }
        for layer in layers.iter().take((r_max + 1).saturating_sub(2)) {
            for row in self.class2_rows(layer)? {
                lattice.insert(&row)?;
            }
        }
        for layer in layers.iter().skip(r_max.saturating_sub(1)) {
            for row in self.class2_rows(layer)? {
                if !lattice.contains(&row) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Invariants of γ₂/γ₃ of the presented group, from the relators up to
    /// Φ^{r_max}. Requires Φ-stabilisation at r_max.
    pub fn class2_quotient(&self, r_max: usize, v_box: usize) -> Result<AbelianInvariants> {
        if !self.phi_stabilization(r_max)? {
            return Err(Error::Inconclusive(format!("class-2 images of Φ^r(R) have not stabilised by r = {r_max}")));
        }
        let mut lattice = Lattice::new(pair_count(self.n()));
        for row in self.class2_rows(&self.relators(r_max, v_box))? {
            lattice.insert(&row)?;
        }
        lattice.quotient()
    }
}

pub fn zero_exponent_sums(words: &[FreeWord], n: usize) -> bool {
    words.iter().all(|w| w.exponent_sums(n).iter().all(|&e| e == 0))
}

/// Evaluate each relator in the automaton group.
pub fn verify_relators(b: &GroupSpec, rels: &[FreeWord], exec: Execution) -> Result<RelatorCheck> {
    if let Some(w) = rels.iter().find(|w| w.letters().iter().any(|&(y, _)| y >= b.len())) {
        return input(format!("relator {w} uses a letter outside the generating set"));
    }
    let results = exec.map(rels, |w| b.word_is_identity(&w.to_word()));
    let mut failures = Vec::new();
    for (k, r) in results.into_iter().enumerate() {
        if !r? {
            failures.push(k);
        }
    }
    Ok(RelatorCheck { checked: rels.len(), failures })
}
