//! Congruence quotients of groups whose labels are all powers of
//! σ: x ↦ x+1, for prime m.
//!
//! An element of G/St(n) is stored as its portrait of exponents (one byte per
//! vertex of length < n, level by level, lexicographic). The layer
//! St(k)/St(k+1) embeds in F_m^{m^k} through the level-k labels, and the chain
//! keeps one echelon table per layer. A layer is closed under conjugation by
//! the conjugating set; relations that are not visible at layer k (powers,
//! commutators with the seeds of the layer, reduced conjugates and dependent
//! seeds) are pushed down as seeds of deeper layers.

use std::collections::{HashSet, VecDeque};

use crate::exec::Execution;
use crate::tree_core::Automorphism;

pub(crate) type Elem = Vec<u8>;

#[derive(Clone, Debug)]
pub(crate) struct Shape {
    pub m: usize,
    pub n: usize,
    offs: Vec<usize>,
    inv: Vec<u8>,
}

#[inline]
fn add_mod(a: u8, b: u8, p: u8) -> u8 {
    let s = a + b;
    s.min(s.wrapping_sub(p))
}

impl Shape {
    pub fn new(m: usize, n: usize) -> Shape {
        assert!((2..=127).contains(&m));
        let mut offs = vec![0];
        let mut width = 1;
        for _ in 0..n {
            offs.push(offs.last().unwrap() + width);
            width *= m;
        }
        let inv = (0..m).map(|a| (1..m).find(|&b| a * b % m == 1).unwrap_or(0) as u8).collect();
        Shape { m, n, offs, inv }
    }

    pub fn total(&self) -> usize {
        self.offs[self.n]
    }

    pub fn level<'a>(&self, g: &'a [u8], k: usize) -> &'a [u8] {
        &g[self.offs[k]..self.offs[k + 1]]
    }

    pub fn identity(&self) -> Elem {
        vec![0; self.total()]
    }

    /// Exponent portrait of g, or None if some label is not a power of σ.
    pub fn from_automorphism(&self, g: &Automorphism) -> Option<Elem> {
        let states = g.states();
        let exps: Vec<Option<u8>> = states.iter().map(|st| st.perm.shift_exponent().map(|e| e as u8)).collect();
        let mut out = Vec::with_capacity(self.total());
        let mut layer = vec![0usize];
        for l in 0..self.n {
            let mut next = Vec::with_capacity(layer.len() * self.m);
            for &q in &layer {
                out.push(exps[q]?);
                if l + 1 < self.n {
                    next.extend_from_slice(&states[q].next);
                }
            }
            layer = next;
        }
        Some(out)
    }

    /// Images of the level-(l+1) vertices, given those of level l.
    #[inline]
    fn descend(&self, g: &[u8], l: usize, img: &[u32], out: &mut Vec<u32>) {
        let m = self.m as u32;
        let o = self.offs[l];
        out.clear();
        for (j, &im) in img.iter().enumerate() {
            let sh = g[o + j] as u32;
            for x in 0..m {
                let y = x + sh;
                out.push(im * m + if y >= m { y - m } else { y });
            }
        }
    }

    /// Action of g on the vertices of level k (as lexicographic indices).
    pub fn level_action(&self, g: &[u8], k: usize) -> Vec<u32> {
        let mut img = vec![0u32];
        let mut tmp = Vec::new();
        for l in 0..k {
            self.descend(g, l, &img, &mut tmp);
            std::mem::swap(&mut img, &mut tmp);
        }
        img
    }

    /// g·h, with h acting first: (gh)|^v = g|^{h(v)} + h|^v.
    pub fn mul(&self, g: &[u8], h: &[u8]) -> Elem {
        let p = self.m as u8;
        let mut out = vec![0u8; self.total()];
        let mut img = vec![0u32];
        let mut tmp = Vec::new();
        for l in 0..self.n {
            let o = self.offs[l];
            for (j, &im) in img.iter().enumerate() {
                out[o + j] = add_mod(g[o + im as usize], h[o + j], p);
            }
            if l + 1 < self.n {
                self.descend(h, l, &img, &mut tmp);
                std::mem::swap(&mut img, &mut tmp);
            }
        }
        out
    }

    /// g⁻¹|^v = −g|^{g⁻¹(v)}.
    pub fn inv(&self, g: &[u8]) -> Elem {
        let p = self.m as u8;
        let mut out = vec![0u8; self.total()];
        let mut img = vec![0u32];
        let mut tmp = Vec::new();
        let mut back = Vec::new();
        for l in 0..self.n {
            let o = self.offs[l];
            back.resize(img.len(), 0u32);
            for (v, &im) in img.iter().enumerate() {
                back[im as usize] = v as u32;
            }
            for (v, &b) in back.iter().enumerate() {
                let e = g[o + b as usize];
                out[o + v] = if e == 0 { 0 } else { p - e };
            }
            if l + 1 < self.n {
                self.descend(g, l, &img, &mut tmp);
                std::mem::swap(&mut img, &mut tmp);
            }
        }
        out
    }

    pub fn pow(&self, g: &[u8], e: usize) -> Elem {
        let mut acc = self.identity();
        for _ in 0..e {
            acc = self.mul(&acc, g);
        }
        acc
    }

    pub fn is_identity(g: &[u8]) -> bool {
        g.iter().all(|&x| x == 0)
    }

    /// v ← v + c·row over F_m.
    fn axpy(&self, v: &mut [u8], c: u8, row: &[u8]) {
        let p = self.m as u8;
        if p == 2 {
            for (a, &b) in v.iter_mut().zip(row) {
                *a ^= b;
            }
            return;
        }
        if p <= 7 {
            for _ in 0..c {
                for (a, &b) in v.iter_mut().zip(row) {
                    *a = add_mod(*a, b, p);
                }
            }
            return;
        }
        for (a, &b) in v.iter_mut().zip(row) {
            *a = ((*a as u32 + c as u32 * b as u32) % p as u32) as u8;
        }
    }

    fn neg(&self, c: u8) -> u8 {
        if c == 0 {
            0
        } else {
            self.m as u8 - c
        }
    }
}

/// One layer St(k)/St(k+1): rows in insertion order, each with its pivot
/// column normalised to 1.
#[derive(Clone, Debug, Default)]
pub(crate) struct Layer {
    pub rows: Vec<Vec<u8>>,
    pub pivots: Vec<usize>,
    /// `neg_pows[i][c-1]` is t_i^{-c}; empty on the deepest layer.
    neg_pows: Vec<Vec<Elem>>,
}

impl Layer {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce v in place; returns the coefficient of each row.
    fn reduce(&self, shape: &Shape, v: &mut [u8]) -> Vec<u8> {
        let mut coeffs = vec![0u8; self.rows.len()];
        for (i, row) in self.rows.iter().enumerate() {
            let c = v[self.pivots[i]];
            if c != 0 {
                coeffs[i] = c;
                shape.axpy(v, shape.neg(c), row);
            }
        }
        coeffs
    }

    fn is_reducible(&self, shape: &Shape, v: &[u8]) -> bool {
        let mut w = v.to_vec();
        self.reduce(shape, &mut w);
        Shape::is_identity(&w)
    }

    /// y · Π t_i^{-c_i}, which lies in St(k+1) when v reduced to zero.
    fn apply(&self, shape: &Shape, y: &[u8], coeffs: &[u8]) -> Elem {
        let mut cur = y.to_vec();
        for (i, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                cur = shape.mul(&cur, &self.neg_pows[i][c as usize - 1]);
            }
        }
        cur
    }

    /// Append a reduced nonzero vector; returns the normalised element.
    fn insert(&mut self, shape: &Shape, mut v: Vec<u8>, elem: Option<Elem>) -> Option<Elem> {
        let piv = v.iter().position(|&x| x != 0).expect("nonzero row");
        let scale = shape.inv[v[piv] as usize];
        if scale != 1 {
            for x in v.iter_mut() {
                *x = ((*x as usize * scale as usize) % shape.m) as u8;
            }
        }
        self.rows.push(v);
        self.pivots.push(piv);
        elem.map(|e| {
            let t = shape.pow(&e, scale as usize);
            let t_inv = shape.inv(&t);
            let mut pows = vec![t_inv.clone()];
            for _ in 2..shape.m {
                let last = pows.last().unwrap();
                pows.push(shape.mul(last, &t_inv));
            }
            self.neg_pows.push(pows);
            t
        })
    }
}

/// A layered chain for G/St(n), or for a subgroup of it.
#[derive(Clone, Debug)]
pub(crate) struct LayeredChain {
    pub shape: Shape,
    pub layers: Vec<Layer>,
    /// Stored elements t_i (not inverses), kept for the layers above the last.
    elems: Vec<Vec<Elem>>,
}

enum Deferred {
    Seed(usize),
    Conj(usize, usize),
}

impl LayeredChain {
    /// Smallest subgroup containing `seeds` and normalised by `conj`.
    /// Every element of `seeds` must lie in ⟨conj⟩ (or `conj` must be the
    /// seeds themselves) for the result to be exact.
    pub fn build(shape: Shape, seeds: Vec<Elem>, conj: &[Elem], exec: Execution) -> LayeredChain {
        let n = shape.n;
        let conj_inv: Vec<Elem> = conj.iter().map(|a| shape.inv(a)).collect();
        let mut layers = Vec::with_capacity(n);
        let mut elems = Vec::with_capacity(n);
        let mut pending: Vec<Elem> = dedup(seeds.into_iter().filter(|g| !Shape::is_identity(g)).collect());
        for k in 0..n {
            let last = k + 1 == n;
            let actions: Vec<Vec<u32>> = conj.iter().map(|a| shape.level_action(a, k)).collect();
            let mut layer = Layer::default();
            let mut layer_elems: Vec<Elem> = Vec::new();
            let mut deferred = Vec::new();
            let mut seeds_in_layer = Vec::new();
            let mut queue: VecDeque<usize> = VecDeque::new();
            for (pi, p) in pending.iter().enumerate() {
                let mut v = shape.level(p, k).to_vec();
                let coeffs = layer.reduce(&shape, &mut v);
                if Shape::is_identity(&v) {
                    deferred.push(Deferred::Seed(pi));
                    continue;
                }
                let elem = (!last).then(|| layer.apply(&shape, p, &coeffs));
                let row = layer.rank();
                if let Some(t) = layer.insert(&shape, v, elem) {
                    layer_elems.push(t);
                }
                seeds_in_layer.push(row);
                queue.push_back(row);
                // close under conjugation
                while let Some(t) = queue.pop_front() {
                    for (ai, act) in actions.iter().enumerate() {
                        let row_t = &layer.rows[t];
                        let mut w: Vec<u8> = act.iter().map(|&x| row_t[x as usize]).collect();
                        let coeffs = layer.reduce(&shape, &mut w);
                        if Shape::is_identity(&w) {
                            deferred.push(Deferred::Conj(t, ai));
                            continue;
                        }
                        let elem = (!last).then(|| {
                            let c = shape.mul(&shape.mul(&conj_inv[ai], &layer_elems[t]), &conj[ai]);
                            layer.apply(&shape, &c, &coeffs)
                        });
                        let r = layer.rank();
                        if let Some(t) = layer.insert(&shape, w, elem) {
                            layer_elems.push(t);
                        }
                        queue.push_back(r);
                    }
                }
            }
            if last {
                layers.push(layer);
                elems.push(layer_elems);
                break;
            }
            // residues for the deeper layers
            let sh = &shape;
            let lay = &layer;
            let te = &layer_elems;
            let pend = &pending;
            let mut residues: Vec<Elem> = exec.map(&deferred, |d| match *d {
                Deferred::Seed(pi) => {
                    let mut v = sh.level(&pend[pi], k).to_vec();
                    let coeffs = lay.reduce(sh, &mut v);
                    lay.apply(sh, &pend[pi], &coeffs)
                }
                Deferred::Conj(t, ai) => {
                    let c = sh.mul(&sh.mul(&conj_inv[ai], &te[t]), &conj[ai]);
                    let mut v = sh.level(&c, k).to_vec();
                    let coeffs = lay.reduce(sh, &mut v);
                    lay.apply(sh, &c, &coeffs)
                }
            });
            let rows: Vec<usize> = (0..layer.rank()).collect();
            residues.extend(exec.map(&rows, |&t| sh.pow(&te[t], sh.m)));
            let pairs: Vec<(usize, usize)> =
                seeds_in_layer.iter().flat_map(|&u| rows.iter().filter(move |&&t| t != u).map(move |&t| (u, t))).collect();
            residues.extend(exec.map(&pairs, |&(u, t)| {
                let (a, b) = (&te[u], &te[t]);
                // [u, t] = u⁻¹ t⁻¹ u t
                let ut = sh.mul(a, b);
                let tu = sh.mul(b, a);
                sh.mul(&sh.inv(&tu), &ut)
            }));
            pending = dedup(residues.into_iter().filter(|g| !Shape::is_identity(g)).collect());
            layers.push(layer);
            elems.push(layer_elems);
        }
        LayeredChain { shape, layers, elems }
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.layers.iter().map(|l| l.rank()).collect()
    }

    /// Total rank, i.e. log_m of the order.
    pub fn log_order(&self) -> usize {
        self.layers.iter().map(|l| l.rank()).sum()
    }

    pub fn contains(&self, g: &[u8]) -> bool {
        let shape = &self.shape;
        let mut cur = g.to_vec();
        for (k, layer) in self.layers.iter().enumerate() {
            let mut v = shape.level(&cur, k).to_vec();
            let coeffs = layer.reduce(shape, &mut v);
            if !Shape::is_identity(&v) {
                return false;
            }
            if k + 1 < shape.n {
                cur = layer.apply(shape, &cur, &coeffs);
            }
        }
        true
    }

    /// Is the level-k vector of an element of St(k) in the span of layer k?
    pub fn layer_contains(&self, k: usize, v: &[u8]) -> bool {
        self.layers[k].is_reducible(&self.shape, v)
    }

    /// Is every element of this chain lying in St(k) also in `other`?
    pub fn stabilizer_part_within(&self, k: usize, other: &LayeredChain) -> bool {
        let n = self.shape.n;
        for j in k..n {
            if j + 1 == n {
                return self.layers[j].rows.iter().all(|r| other.layer_contains(j, r));
            }
            if !self.elems[j].iter().all(|t| other.contains(t)) {
                return false;
            }
        }
        true
    }
}

fn dedup(items: Vec<Elem>) -> Vec<Elem> {
    let mut seen = HashSet::with_capacity(items.len());
    items.into_iter().filter(|g| seen.insert(g.clone())).collect()
}
