//! The free nilpotent group of class 2, integer lattices and Smith normal
//! form.

use serde::Serialize;

use super::word::FreeWord;
use crate::error::{Error, Result};

/// Index of the basic commutator [y_a, y_b], a < b, among all such pairs.
pub fn pair_index(n: usize, a: usize, b: usize) -> usize {
    debug_assert!(a < b && b < n);
    a * (2 * n - a - 1) / 2 + (b - a - 1)
}

pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// y_1^{e_1} ⋯ y_n^{e_n} · Π_{a<b} [y_a, y_b]^{f_ab}.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Class2Element {
    pub exps: Vec<i64>,
    pub comms: Vec<i64>,
}

impl Class2Element {
    pub fn identity(n: usize) -> Class2Element {
        Class2Element { exps: vec![0; n], comms: vec![0; pair_count(n)] }
    }

    pub fn generator(n: usize, y: usize, e: i64) -> Class2Element {
        let mut g = Class2Element::identity(n);
        g.exps[y] = e;
        g
    }

    pub fn n(&self) -> usize {
        self.exps.len()
    }

    /// Class-2 collection: moving y_j^{e'_j} left past y_i^{e_i} for i > j
    /// costs [y_i, y_j]^{e_i e'_j} = [y_j, y_i]^{−e_i e'_j}.
    pub fn mul(&self, other: &Class2Element) -> Class2Element {
        let n = self.n();
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect();
        let mut comms: Vec<i64> = self.comms.iter().zip(&other.comms).map(|(a, b)| a + b).collect();
        for j in 0..n {
            if other.exps[j] == 0 {
                continue;
            }
            for i in j + 1..n {
                comms[pair_index(n, j, i)] -= self.exps[i] * other.exps[j];
            }
        }
        Class2Element { exps, comms }
    }

    pub fn is_central(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }
}

/// The image of a free word in the free class-2 group on n generators.
pub fn collect(w: &FreeWord, n: usize) -> Class2Element {
    w.letters().iter().fold(Class2Element::identity(n), |acc, &(y, e)| acc.mul(&Class2Element::generator(n, y, e as i64)))
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

fn overflow() -> Error {
    Error::Resource("integer overflow in lattice arithmetic".into())
}

fn combine(x: i128, u: &[i128], y: i128, v: &[i128]) -> Result<Vec<i128>> {
    u.iter()
        .zip(v)
        .map(|(&a, &b)| {
            x.checked_mul(a).zip(y.checked_mul(b)).and_then(|(p, q)| p.checked_add(q)).ok_or_else(overflow)
        })
        .collect()
}

/// A sublattice of Z^k kept in echelon form with positive pivots.
#[derive(Clone, Debug, Default)]
pub struct Lattice {
    dim: usize,
    /// (pivot column, row), sorted by pivot column.
    rows: Vec<(usize, Vec<i128>)>,
}

impl Lattice {
    pub fn new(dim: usize) -> Lattice {
        Lattice { dim, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> impl Iterator<Item = &[i128]> {
        self.rows.iter().map(|(_, r)| r.as_slice())
    }

    pub fn insert(&mut self, v: &[i64]) -> Result<()> {
        let mut v: Vec<i128> = v.iter().map(|&x| x as i128).collect();
        debug_assert_eq!(v.len(), self.dim);
        loop {
            let Some(c) = v.iter().position(|&x| x != 0) else { return Ok(()) };
            match self.rows.binary_search_by_key(&c, |(p, _)| *p) {
                Err(pos) => {
                    if v[c] < 0 {
                        v.iter_mut().for_each(|x| *x = -*x);
                    }
                    self.rows.insert(pos, (c, v));
                    return Ok(());
                }
                Ok(pos) => {
                    let r = &self.rows[pos].1;
                    let (g, a, b) = ext_gcd(r[c], v[c]);
                    let new_r = combine(a, r, b, &v)?;
                    let rest = combine(v[c] / g, r, -(r[c] / g), &v)?;
                    self.rows[pos].1 = new_r;
                    v = rest;
                }
            }
        }
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        let mut v: Vec<i128> = v.iter().map(|&x| x as i128).collect();
        while let Some(c) = v.iter().position(|&x| x != 0) {
            let Ok(pos) = self.rows.binary_search_by_key(&c, |(p, _)| *p) else { return false };
            let r = &self.rows[pos].1;
            if v[c] % r[c] != 0 {
                return false;
            }
            let q = v[c] / r[c];
            for (x, y) in v.iter_mut().zip(r) {
                *x -= q * y;
            }
        }
        true
    }

    /// Invariants of Z^dim / self.
    pub fn quotient(&self) -> Result<AbelianInvariants> {
        let mut mat: Vec<Vec<i128>> = self.rows.iter().map(|(_, r)| r.clone()).collect();
        let diag = smith_diagonal(&mut mat)?;
        let mut torsion: Vec<u128> = diag.iter().map(|x| x.unsigned_abs()).filter(|&x| x > 1).collect();
        torsion.sort_unstable();
        Ok(AbelianInvariants { free_rank: self.dim - diag.len(), torsion: torsion.iter().map(|x| x.to_string()).collect() })
    }
}

/// Free rank and elementary divisors (each dividing the next).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub torsion: Vec<String>,
}

impl AbelianInvariants {
    pub fn torsion_order(&self) -> num_bigint::BigUint {
        self.torsion.iter().map(|t| t.parse::<num_bigint::BigUint>().expect("decimal")).product()
    }
}

/// Nonzero diagonal entries of the Smith normal form of a full-row-rank
/// matrix (rows are independent).
fn smith_diagonal(mat: &mut [Vec<i128>]) -> Result<Vec<i128>> {
    let rows = mat.len();
    let cols = mat.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        // pick the smallest nonzero entry in the remaining block as pivot
        loop {
            let mut best: Option<(usize, usize)> = None;
            for (i, row) in mat.iter().enumerate().skip(t) {
                for (j, &x) in row.iter().enumerate().skip(t) {
                    if x != 0 && best.is_none_or(|(bi, bj)| x.abs() < mat[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { return Ok(diag) };
            mat.swap(t, pi);
            for row in mat.iter_mut() {
                row.swap(t, pj);
            }
            let p = mat[t][t];
            let mut clean = true;
            for i in t + 1..rows {
                let q = mat[i][t] / p;
                if q != 0 {
                    let pivot = mat[t].clone();
                    for (x, y) in mat[i].iter_mut().zip(&pivot) {
                        *x = x.checked_sub(q.checked_mul(*y).ok_or_else(overflow)?).ok_or_else(overflow)?;
                    }
                }
                clean &= mat[i][t] == 0;
            }
            for j in t + 1..cols {
                let q = mat[t][j] / p;
                if q != 0 {
                    for row in mat.iter_mut() {
                        let y = row[t];
                        row[j] = row[j].checked_sub(q.checked_mul(y).ok_or_else(overflow)?).ok_or_else(overflow)?;
                    }
                }
                clean &= mat[t][j] == 0;
            }
            if !clean {
                continue;
            }
            // divisibility: fold any entry not divisible by p into row t
            let bad = (t + 1..rows).find(|&i| mat[i][t + 1..].iter().any(|x| x % p != 0));
            match bad {
                Some(i) => {
                    let row = mat[i].clone();
                    for (x, y) in mat[t].iter_mut().zip(&row) {
                        *x = x.checked_add(*y).ok_or_else(overflow)?;
                    }
                }
                None => {
                    diag.push(p.abs());
                    break;
                }
            }
        }
    }
    Ok(diag)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn commutator_is_unit() {
        let n = 4;
        for a in 0..n {
            for b in a + 1..n {
                let w = FreeWord::power_of(a, 1).comm(&FreeWord::power_of(b, 1));
                let c = collect(&w, n);
                assert!(c.is_central());
                let mut unit = vec![0; pair_count(n)];
                unit[pair_index(n, a, b)] = 1;
                assert_eq!(c.comms, unit);
            }
        }
    }

    #[test]
    fn smith_examples() {
        let mut l = Lattice::new(3);
        l.insert(&[2, 0, 0]).unwrap();
        l.insert(&[0, 4, 0]).unwrap();
        l.insert(&[0, 6, 0]).unwrap();
        let inv = l.quotient().unwrap();
        assert_eq!(inv.free_rank, 1);
        assert_eq!(inv.torsion, vec!["2", "2"]);
        assert!(l.contains(&[2, 2, 0]));
        assert!(!l.contains(&[1, 0, 0]));
        assert!(!l.contains(&[0, 0, 1]));

        let mut l = Lattice::new(2);
        l.insert(&[2, 1]).unwrap();
        l.insert(&[0, 2]).unwrap();
        assert_eq!(l.quotient().unwrap().torsion, vec!["4"]);
        let mut l = Lattice::new(2);
        l.insert(&[6, 0]).unwrap();
        l.insert(&[0, 4]).unwrap();
        assert_eq!(l.quotient().unwrap().torsion, vec!["2", "12"]);
    }
}
