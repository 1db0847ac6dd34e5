//! Layer stabilisers of Basilica groups, checked in finite quotients.

use num_bigint::BigUint;
use serde::Serialize;

use super::quotient::{LevelQuotient, QuotientOptions};
use super::spec::{GroupSpec, Word};
use crate::error::{input, Result};
use crate::tree_core::{Automorphism, Perm};

/// Outcome of a stabiliser check at one level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabReport {
    pub n: usize,
    pub depth: usize,
    /// Every claimed generator fixes level n.
    pub claimed_in_stabilizer: bool,
    /// |normal closure of the claimed generators| in G/St(depth).
    #[serde(serialize_with = "as_string")]
    pub closure_order: BigUint,
    /// |St_G(n)/St_G(depth)| = |G/St(depth)| / |G/St(n)|.
    #[serde(serialize_with = "as_string")]
    pub stabilizer_order: BigUint,
}

fn as_string<S: serde::Serializer>(x: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

impl StabReport {
    pub fn holds(&self) -> bool {
        self.claimed_in_stabilizer && self.closure_order == self.stabilizer_order
    }
}

pub(crate) fn fixes_level(h: &Automorphism, n: usize) -> bool {
    h.portrait(n).labels().iter().all(Perm::is_identity)
}

/// Compare the normal closure of `claimed` with St_G(n), both taken modulo
/// St(depth). The closure lies in St_G(n) once each claimed element does, so
/// equal orders give equality.
pub fn verify_stabilizer_generators(
    g: &GroupSpec,
    claimed: &[Word],
    n: usize,
    depth: usize,
    opts: QuotientOptions,
) -> Result<StabReport> {
    if depth <= n {
        return input(format!("depth {depth} must exceed n = {n}"));
    }
    let elems: Vec<Automorphism> = claimed.iter().map(|w| g.evaluate(w)).collect::<Result<_>>()?;
    let claimed_in_stabilizer = elems.iter().all(|h| fixes_level(h, n));
    let ambient: Vec<Automorphism> = g.generators().cloned().collect();
    let whole = LevelQuotient::generated(g.m(), depth, &ambient, opts)?;
    let orders = whole.orders_by_level(&ambient, opts)?;
    let stabilizer_order = &orders[depth] / &orders[n];
    let closure = LevelQuotient::normal_closure(g.m(), depth, &elems, &ambient, opts)?;
    Ok(StabReport { n, depth, claimed_in_stabilizer, closure_order: closure.order(), stabilizer_order })
}

/// The normal generators of St_B(n) for B = bp_s(O_m^d): with n = sq + r and
/// q = dk + l, the generator a_{i,j} is raised to m^{k+1} when
/// is + j ≤ ls + r − 1 and to m^k otherwise. `b` must use the `a_i_j` names.
pub fn generalised_basilica_stabilizer(b: &GroupSpec, d: usize, s: usize, n: usize) -> Result<Vec<Word>> {
    if d == 0 || s == 0 {
        return input("d and s must be positive");
    }
    let m = b.m() as i64;
    let (q, r) = (n / s, n % s);
    let (k, l) = (q / d, q % d);
    let mut out = Vec::with_capacity(d * s);
    for j in 0..s {
        for i in 0..d {
            let name = format!("a_{i}_{j}");
            let Some(idx) = b.index_of(&name) else {
                return input(format!("no generator named {name}"));
            };
            let e = if ((i * s + j) as i64) < (l * s + r) as i64 { k + 1 } else { k };
            let exp = m.checked_pow(e as u32).ok_or_else(|| crate::Error::Resource(format!("{m}^{e} overflows")))?;
            out.push(vec![(idx, exp)]);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    #[test]
    fn original_basilica_small_levels() {
        let b = zoo::generalised_basilica(1, 2, 2).unwrap();
        for n in 0..4 {
            let claimed = generalised_basilica_stabilizer(&b, 1, 2, n).unwrap();
            let rep = verify_stabilizer_generators(&b, &claimed, n, n + 2, QuotientOptions::default()).unwrap();
            assert!(rep.holds(), "n = {n}: {rep:?}");
        }
        let a00 = b.index_of("a_0_0").unwrap();
        let a01 = b.index_of("a_0_1").unwrap();
        assert_eq!(generalised_basilica_stabilizer(&b, 1, 2, 1).unwrap(), vec![vec![(a00, 2)], vec![(a01, 1)]]);
        assert_eq!(generalised_basilica_stabilizer(&b, 1, 2, 3).unwrap(), vec![vec![(a00, 4)], vec![(a01, 2)]]);
    }

    #[test]
    fn wrong_claim_is_rejected() {
        let b = zoo::generalised_basilica(1, 2, 2).unwrap();
        let a00 = b.index_of("a_0_0").unwrap();
        let a01 = b.index_of("a_0_1").unwrap();
        // too small: a_{0,0}^4 misses a_{0,0}^2
        let rep = verify_stabilizer_generators(&b, &[vec![(a00, 4)], vec![(a01, 1)]], 1, 4, QuotientOptions::default()).unwrap();
        assert!(!rep.holds());
        // not in the stabiliser
        let rep = verify_stabilizer_generators(&b, &[vec![(a00, 1)]], 1, 3, QuotientOptions::default()).unwrap();
        assert!(!rep.claimed_in_stabilizer);
    }
}
