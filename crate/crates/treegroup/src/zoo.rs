//! Concrete groups: odometers and their products, generalised Basilica
//! groups, GGS and spinal groups, Grigorchuk, Gupta–Sidki,
//! Fabrykowski–Gupta and finitary elements.
//!
//! σ is x ↦ x+1 (mod m) throughout, and the odometer carries at letter 0:
//! a = σ(a, id, …, id).

use crate::basilica::{beta, FiniteGroup, SpinalTriple};
use crate::error::{input, Result};
use crate::groups::GroupSpec;
use crate::tree_core::{Automorphism, Machine, Perm};

fn check_m(m: usize) -> Result<()> {
    if m < 2 {
        return input(format!("alphabet size {m} is below 2"));
    }
    Ok(())
}

/// π_i(a) for i = 0..d−1: π_0(a) = σ(π_{d−1}(a), id, …, id) and
/// π_i(a) = (π_{i−1}(a), …, π_{i−1}(a)).
fn odometer_coordinates(m: usize, d: usize) -> Result<Vec<Automorphism>> {
    check_m(m)?;
    if d == 0 {
        return input("d must be at least 1");
    }
    let mut mach = Machine::new(m);
    let id = mach.identity_state();
    let p: Vec<usize> = (0..d).map(|_| mach.add_placeholder()).collect();
    let mut next = vec![id; m];
    next[0] = p[d - 1];
    mach.set(p[0], Perm::shift(m, 1), next);
    for i in 1..d {
        mach.set(p[i], Perm::identity(m), vec![p[i - 1]; m]);
    }
    p.iter().map(|&q| mach.automorphism(q)).collect()
}

/// The m-adic odometer, generator `a`.
pub fn odometer(m: usize) -> GroupSpec {
    odometer_product(m, 1).expect("odometer for m ≥ 2")
}

/// The d-fold product O_m^d with generators π_i(a), named `a` for d = 1 and
/// `a_0`, …, `a_{d−1}` otherwise.
pub fn odometer_product(m: usize, d: usize) -> Result<GroupSpec> {
    let gens = odometer_coordinates(m, d)?;
    let named = gens
        .into_iter()
        .enumerate()
        .map(|(i, g)| (if d == 1 { "a".to_string() } else { format!("a_{i}") }, g))
        .collect();
    GroupSpec::new(m, named)
}

/// bp_s(O_m^d) with generators a_{i,j} = β^s_j(π_i(a)), named `a_i_j`,
/// listed with j outer and i inner.
pub fn generalised_basilica(d: usize, m: usize, s: usize) -> Result<GroupSpec> {
    if s == 0 {
        return input("s must be at least 1");
    }
    let pis = odometer_coordinates(m, d)?;
    let mut gens = Vec::with_capacity(d * s);
    for j in 0..s {
        for (i, p) in pis.iter().enumerate() {
            gens.push((format!("a_{i}_{j}"), beta(p, s, j)?));
        }
    }
    GroupSpec::new(m, gens)
}

/// A GGS defining vector: b = (b, a^{e_1}, …, a^{e_{p−1}}).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GGSSpec {
    pub p: usize,
    pub e: Vec<usize>,
}

impl GGSSpec {
    pub fn new(p: usize, e: Vec<i64>) -> Result<GGSSpec> {
        check_m(p)?;
        if e.len() != p - 1 {
            return input(format!("a GGS vector for p = {p} has {} entries", p - 1));
        }
        let e = e.iter().map(|&x| x.rem_euclid(p as i64) as usize).collect();
        Ok(GGSSpec { p, e })
    }

    /// e_1 + … + e_{p−1} ≡ 0 (mod p).
    pub fn sum_condition(&self) -> bool {
        self.e.iter().sum::<usize>() % self.p == 0
    }

    /// e_i ≠ e_{p−i} for some i.
    pub fn asymmetry_condition(&self) -> bool {
        (0..self.p - 1).any(|k| self.e[k] != self.e[self.p - 2 - k])
    }

    /// The defining triple (C_p, C_p, ω) with period 1.
    pub fn triple(&self) -> SpinalTriple {
        let p = self.p;
        let row = self.e.iter().map(|&ej| (0..p).map(|d| Perm::shift(p, (ej * d) as i64)).collect()).collect();
        SpinalTriple { m: p, rooted: vec![Perm::shift(p, 1)], d: FiniteGroup::cyclic(p, "b"), omega: vec![row] }
    }
}

/// The GGS group ⟨a, b⟩ with a = σ and b = (b, a^{e_1}, …, a^{e_{p−1}}).
pub fn ggs(spec: &GGSSpec) -> Result<GroupSpec> {
    let t = spec.triple();
    GroupSpec::new(spec.p, vec![("a".into(), t.rooted_automorphism(0)), ("b".into(), t.directed_automorphism(1)?)])
}

/// Gupta–Sidki p-group: ggs(p, (1, p−1, 0, …, 0)) for an odd prime p.
pub fn gupta_sidki(p: usize) -> Result<GroupSpec> {
    ggs(&gupta_sidki_spec(p)?)
}

pub fn gupta_sidki_spec(p: usize) -> Result<GGSSpec> {
    if p < 3 {
        return input("Gupta–Sidki groups need p ≥ 3");
    }
    let mut e = vec![0; p - 1];
    e[0] = 1;
    e[1] = p as i64 - 1;
    GGSSpec::new(p, e)
}

/// The infinite dihedral group ⟨σ, b = (b, σ)⟩ on the binary tree.
pub fn infinite_dihedral() -> GroupSpec {
    ggs(&GGSSpec { p: 2, e: vec![1] }).expect("dihedral GGS data is valid")
}

/// Grigorchuk's triple: R = ⟨σ⟩, D = {1, b, c, d} ≅ C_2², ω of period 3.
pub fn grigorchuk_triple() -> SpinalTriple {
    let s = Perm::shift(2, 1);
    let e = Perm::identity(2);
    let names = ["1", "b", "c", "d"].iter().map(|x| x.to_string()).collect();
    let table = (0..4).map(|x| (0..4).map(|y| x ^ y).collect()).collect();
    let d = FiniteGroup::new(names, table).expect("Klein four-group");
    // ω(1), ω(b), ω(c), ω(d) at phases 1, 2, 0 (mod 3)
    let omega = vec![
        vec![vec![e.clone(), s.clone(), s.clone(), e.clone()]],
        vec![vec![e.clone(), s.clone(), e.clone(), s.clone()]],
        vec![vec![e.clone(), e.clone(), s.clone(), s.clone()]],
    ];
    SpinalTriple { m: 2, rooted: vec![s], d, omega }
}

/// Grigorchuk's group: a = σ, b = (c, a), c = (d, a), d = (b, id).
pub fn grigorchuk() -> GroupSpec {
    let t = grigorchuk_triple();
    let mut gens = vec![("a".to_string(), t.rooted_automorphism(0))];
    for (k, name) in ["b", "c", "d"].iter().enumerate() {
        gens.push((name.to_string(), t.directed_automorphism(k + 1).expect("valid triple")));
    }
    GroupSpec::new(2, gens).expect("distinct names")
}

/// The spinal group of a triple: rooted generators `r0`, `r1`, … and one
/// directed generator per non-identity element of D, named as in D.
pub fn spinal(t: &SpinalTriple) -> Result<GroupSpec> {
    t.validate()?;
    let mut gens: Vec<(String, Automorphism)> =
        (0..t.rooted.len()).map(|k| (format!("r{k}"), t.rooted_automorphism(k))).collect();
    for k in 1..t.d.order() {
        gens.push((t.d.names[k].clone(), t.directed_automorphism(k)?));
    }
    GroupSpec::new(t.m, gens)
}

/// Fabrykowski–Gupta group: a = σ, b = (a, id, b) on the ternary tree.
pub fn fabrykowski_gupta() -> GroupSpec {
    let mut mach = Machine::new(3);
    let id = mach.identity_state();
    let a = mach.add(Perm::shift(3, 1), vec![id; 3]);
    let b = mach.add_placeholder();
    mach.set(b, Perm::identity(3), vec![a, id, b]);
    let gens = vec![("a".to_string(), mach.automorphism(a).unwrap()), ("b".to_string(), mach.automorphism(b).unwrap())];
    GroupSpec::new(3, gens).expect("distinct names")
}

/// g_{τ,v}: label τ at v and trivial labels elsewhere.
pub fn finitary(tau: &Perm, v: &[usize], m: usize) -> Result<Automorphism> {
    check_m(m)?;
    if tau.degree() != m {
        return input("label on the wrong alphabet");
    }
    if let Some(&x) = v.iter().find(|&&x| x >= m) {
        return input(format!("letter {x} out of range"));
    }
    let mut mach = Machine::new(m);
    let id = mach.identity_state();
    let mut q = mach.add(tau.clone(), vec![id; m]);
    for &x in v.iter().rev() {
        let mut next = vec![id; m];
        next[x] = q;
        q = mach.add(Perm::identity(m), next);
    }
    mach.automorphism(q)
}
