//! Truncated rigid-stabiliser membership.

use super::quotient::leaf_permutation;
use crate::error::{input, Error, Result};
use crate::tree_core::{Automorphism, Vertex};

/// Does g fix every vertex of length ≤ depth outside the subtree at v?
pub fn support_witness(g: &Automorphism, v: &Vertex, depth: usize) -> Result<bool> {
    let m = g.m();
    if v.0.iter().any(|&x| x >= m) {
        return input(format!("vertex {v} is not over the alphabet of size {m}"));
    }
    if m.checked_pow(depth as u32).is_none_or(|p| p > 1 << 24) {
        return Err(Error::Resource(format!("{m}^{depth} vertices are too many")));
    }
    // fixing every leaf outside v's subtree fixes their prefixes too; v's
    // own prefixes are prefixes of such leaves unless the subtree is the
    // whole level, in which case there is nothing to check
    let perm = leaf_permutation(g, depth);
    let k = v.len().min(depth);
    let block = m.pow((depth - k) as u32);
    let prefix = v.0[..k].iter().fold(0usize, |acc, &x| acc * m + x);
    let inside = |leaf: usize| v.len() <= depth && leaf / block == prefix;
    Ok(perm.iter().enumerate().all(|(leaf, &img)| inside(leaf) || img as usize == leaf))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basilica::beta;
    use crate::zoo;

    #[test]
    fn delayed_copies_live_under_zero() {
        let a = zoo::odometer(2).generator(0).clone();
        let b1 = beta(&a, 2, 1).unwrap();
        assert!(support_witness(&b1, &Vertex(vec![0]), 6).unwrap());
        assert!(!support_witness(&b1, &Vertex(vec![1]), 6).unwrap());
        let id = Automorphism::identity(3);
        assert!(support_witness(&id, &Vertex(vec![2, 1]), 4).unwrap());
        assert!(!support_witness(&a, &Vertex(vec![0]), 3).unwrap());
    }
}
