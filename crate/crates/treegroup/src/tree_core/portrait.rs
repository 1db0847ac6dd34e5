use std::fmt;

use super::machine::Vertex;
use super::perm::Perm;

/// Labels of an automorphism on every vertex of length below `depth`,
/// stored level by level with vertices in lexicographic order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Portrait {
    m: usize,
    depth: usize,
    labels: Vec<Perm>,
}

impl Portrait {
    pub(crate) fn new(m: usize, depth: usize, labels: Vec<Perm>) -> Portrait {
        Portrait { m, depth, labels }
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn labels(&self) -> &[Perm] {
        &self.labels
    }

    fn index(&self, u: &[usize]) -> Option<usize> {
        if u.len() >= self.depth || u.iter().any(|&x| x >= self.m) {
            return None;
        }
        // (m^k - 1)/(m - 1) vertices precede level k
        let offset = (self.m.pow(u.len() as u32) - 1) / (self.m - 1);
        Some(offset + u.iter().fold(0, |acc, &x| acc * self.m + x))
    }

    pub fn label(&self, u: &[usize]) -> Option<&Perm> {
        self.index(u).map(|i| &self.labels[i])
    }

    /// Every vertex paired with its label, in storage order.
    pub fn entries(&self) -> Vec<(Vertex, Perm)> {
        let mut out = Vec::with_capacity(self.labels.len());
        let mut layer = vec![Vec::new()];
        let mut i = 0;
        for _ in 0..self.depth {
            let mut next = Vec::new();
            for v in layer {
                out.push((Vertex(v.clone()), self.labels[i].clone()));
                i += 1;
                for x in 0..self.m {
                    let mut w = v.clone();
                    w.push(x);
                    next.push(w);
                }
            }
            layer = next;
        }
        out
    }
}

impl fmt::Display for Portrait {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (v, p) in self.entries() {
            writeln!(f, "{v}: {p}")?;
        }
        Ok(())
    }
}
