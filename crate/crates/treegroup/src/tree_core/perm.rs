use std::fmt;

use crate::error::{input, Result};

/// A permutation of `0..m`, stored as its image array.
///
/// Composition follows the action convention of the whole crate: in
/// `p.compose(&q)` the permutation `q` is applied first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(m: usize) -> Perm {
        Perm { images: (0..m).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Perm> {
        let m = images.len();
        let mut seen = vec![false; m];
        for &x in &images {
            if x >= m || seen[x] {
                return input(format!("{images:?} is not a permutation of 0..{m}"));
            }
            seen[x] = true;
        }
        Ok(Perm { images })
    }

    /// The m-cycle x ↦ x+k (mod m).
    pub fn shift(m: usize, k: i64) -> Perm {
        let k = k.rem_euclid(m as i64) as usize;
        Perm { images: (0..m).map(|x| (x + k) % m).collect() }
    }

    /// Build from disjoint cycles, e.g. `&[&[0, 1, 2]]`.
    pub fn from_cycles(m: usize, cycles: &[Vec<usize>]) -> Result<Perm> {
        let mut images: Vec<usize> = (0..m).collect();
        let mut used = vec![false; m];
        for cyc in cycles {
            for (k, &x) in cyc.iter().enumerate() {
                if x >= m {
                    return input(format!("letter {x} out of range for alphabet of size {m}"));
                }
                if used[x] {
                    return input(format!("letter {x} repeated in cycle notation"));
                }
                used[x] = true;
                images[x] = cyc[(k + 1) % cyc.len()];
            }
        }
        Ok(Perm { images })
    }

    /// Parse cycle notation such as `(0 1 2)(3 4)`; `()` is the identity.
    pub fn parse_cycles(m: usize, text: &str) -> Result<Perm> {
        let mut cycles = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            if !rest.starts_with('(') {
                return input(format!("malformed cycle notation `{text}`"));
            }
            let close = match rest.find(')') {
                Some(c) => c,
                None => return input(format!("unclosed cycle in `{text}`")),
            };
            let body = &rest[1..close];
            let mut cyc = Vec::new();
            for tok in body.split_whitespace() {
                match tok.parse::<usize>() {
                    Ok(x) => cyc.push(x),
                    Err(_) => return input(format!("bad letter `{tok}` in cycle notation")),
                }
            }
            if !cyc.is_empty() {
                cycles.push(cyc);
            }
            rest = rest[close + 1..].trim_start();
        }
        Perm::from_cycles(m, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self ∘ other`: apply `other`, then `self`.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm { images: other.images.iter().map(|&x| self.images[x]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Perm { images: inv }
    }

    pub fn pow(&self, k: i64) -> Perm {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Perm::identity(self.degree());
        for _ in 0..k.unsigned_abs() {
            out = out.compose(&base);
        }
        out
    }

    /// If this is a power of x ↦ x+1, the exponent in `0..m`.
    pub fn shift_exponent(&self) -> Option<usize> {
        let m = self.degree();
        let k = self.images[0];
        (0..m).all(|x| self.images[x] == (x + k) % m).then_some(k)
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let m = self.degree();
        let mut seen = vec![false; m];
        let mut out = Vec::new();
        for start in 0..m {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cyc.push(x);
                x = self.images[x];
            }
            out.push(cyc);
        }
        out
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cyc in cycles {
            let body: Vec<String> = cyc.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", body.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
