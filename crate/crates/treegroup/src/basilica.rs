//! The Basilica operation: the delayed copies β^s_i, the vertex embedding
//! ω_i, re-rooting onto the alphabet X^s, and transport of spinal triples.

use crate::error::{input, Result};
use crate::groups::GroupSpec;
use crate::tree_core::{Automorphism, Machine, Perm};

fn check_phase(s: usize, i: usize) -> Result<()> {
    if s == 0 {
        return input("delay s must be at least 1");
    }
    if i >= s {
        return input(format!("phase {i} out of range for s = {s}"));
    }
    Ok(())
}

/// β^s_i(g).
///
/// State (q, 0) copies q's label and moves to (q·x, s−1) on every letter;
/// state (q, j) for j ≥ 1 is trivial at the root, moves to (q, j−1) on 0 and
/// to the identity on every other letter.
pub fn beta(g: &Automorphism, s: usize, i: usize) -> Result<Automorphism> {
    check_phase(s, i)?;
    if s == 1 || g.is_identity() {
        return Ok(g.clone());
    }
    let m = g.m();
    let gid = g.identity_state();
    let mut mach = Machine::new(m);
    let id = mach.identity_state();
    let idx: Vec<Vec<usize>> = (0..g.num_states())
        .map(|q| if q == gid { vec![id; s] } else { (0..s).map(|_| mach.add_placeholder()).collect() })
        .collect();
    for (q, st) in g.states().iter().enumerate() {
        if q == gid {
            continue;
        }
        let next = st.next.iter().map(|&r| idx[r][s - 1]).collect();
        mach.set(idx[q][0], st.perm.clone(), next);
        for j in 1..s {
            let mut next = vec![id; m];
            next[0] = idx[q][j - 1];
            mach.set(idx[q][j], Perm::identity(m), next);
        }
    }
    mach.automorphism(idx[0][i])
}

/// ω_i(x₀…x_{k−1}) = 0^i x₀ 0^{s−1} x₁ 0^{s−1} ⋯ x_{k−1} 0^{s−1}, the vertex
/// where β^s_i(g) carries the label of g at x₀…x_{k−1}.
pub fn omega_embed(i: usize, s: usize, v: &[usize]) -> Result<Vec<usize>> {
    check_phase(s, i)?;
    let mut out = vec![0; i];
    for &x in v {
        out.push(x);
        out.extend(std::iter::repeat_n(0, s - 1));
    }
    Ok(out)
}

/// The generators β^s_i(g), named `{g}_{i}`. For s = 1 the input is returned.
pub fn bp_generators(g: &GroupSpec, s: usize) -> Result<GroupSpec> {
    if s == 0 {
        return input("delay s must be at least 1");
    }
    if s == 1 {
        return Ok(g.clone());
    }
    let mut gens = Vec::with_capacity(g.len() * s);
    for (name, h) in g.named() {
        for i in 0..s {
            gens.push((format!("{name}_{i}"), beta(h, s, i)?));
        }
    }
    GroupSpec::new(g.m(), gens)
}

/// How words of length s are numbered as letters of the alphabet X^s.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum LetterOrder {
    /// x₀…x_{s−1} ↦ Σ x_t m^{s−1−t}
    #[default]
    Lex,
    /// x₀…x_{s−1} ↦ Σ x_t m^t
    ReverseLex,
}

impl LetterOrder {
    pub fn encode(self, m: usize, w: &[usize]) -> usize {
        match self {
            LetterOrder::Lex => w.iter().fold(0, |acc, &x| acc * m + x),
            LetterOrder::ReverseLex => w.iter().rev().fold(0, |acc, &x| acc * m + x),
        }
    }

    pub fn decode(self, m: usize, s: usize, mut c: usize) -> Vec<usize> {
        let mut w = vec![0; s];
        for t in 0..s {
            let pos = match self {
                LetterOrder::Lex => s - 1 - t,
                LetterOrder::ReverseLex => t,
            };
            w[pos] = c % m;
            c /= m;
        }
        w
    }
}

/// The automorphism of the m^s-regular tree obtained by reading g's action
/// on blocks of s letters.
pub fn on_power_alphabet(g: &Automorphism, s: usize, order: LetterOrder) -> Result<Automorphism> {
    if s == 0 {
        return input("block length s must be at least 1");
    }
    let m = g.m();
    let big = m.checked_pow(s as u32).filter(|&b| b <= 1 << 16);
    let big = match big {
        Some(b) => b,
        None => return input(format!("alphabet {m}^{s} too large")),
    };
    let words: Vec<Vec<usize>> = (0..big).map(|c| order.decode(m, s, c)).collect();
    let gid = g.identity_state();
    let mut mach = Machine::new(big);
    let id = mach.identity_state();
    let idx: Vec<usize> =
        (0..g.num_states()).map(|q| if q == gid { id } else { mach.add_placeholder() }).collect();
    for q in 0..g.num_states() {
        if q == gid {
            continue;
        }
        let mut images = Vec::with_capacity(big);
        let mut next = Vec::with_capacity(big);
        for w in &words {
            let (img, r) = act_from(g, q, w);
            images.push(order.encode(m, &img));
            next.push(idx[r]);
        }
        mach.set(idx[q], Perm::from_images(images)?, next);
    }
    mach.automorphism(idx[0])
}

fn act_from(g: &Automorphism, mut q: usize, w: &[usize]) -> (Vec<usize>, usize) {
    let img = w
        .iter()
        .map(|&x| {
            let st = &g.states()[q];
            q = st.next[x];
            st.perm.apply(x)
        })
        .collect();
    (img, q)
}

/// A finite group given by its multiplication table; element 0 is the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    pub names: Vec<String>,
    /// `table[x][y]` is the product xy.
    pub table: Vec<Vec<usize>>,
}

impl FiniteGroup {
    pub fn new(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<FiniteGroup> {
        let n = names.len();
        if n == 0 || table.len() != n || table.iter().any(|row| row.len() != n || row.iter().any(|&z| z >= n)) {
            return input("malformed multiplication table");
        }
        for x in 0..n {
            if table[0][x] != x || table[x][0] != x {
                return input("element 0 must be the identity");
            }
            if !(0..n).any(|y| table[x][y] == 0) {
                return input(format!("element {} has no inverse", names[x]));
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if table[table[x][y]][z] != table[x][table[y][z]] {
                        return input("multiplication is not associative");
                    }
                }
            }
        }
        Ok(FiniteGroup { names, table })
    }

    pub fn cyclic(n: usize, name: &str) -> FiniteGroup {
        let names = (0..n)
            .map(|k| match k {
                0 => "1".to_string(),
                1 => name.to_string(),
                _ => format!("{name}^{k}"),
            })
            .collect();
        let table = (0..n).map(|x| (0..n).map(|y| (x + y) % n).collect()).collect();
        FiniteGroup { names, table }
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x][y]
    }

    /// Direct power D^s; a tuple (d₀, …, d_{s−1}) has index Σ d_k |D|^k.
    pub fn power(&self, s: usize) -> FiniteGroup {
        let n = self.order();
        let total = n.pow(s as u32);
        let split = |mut c: usize| {
            (0..s)
                .map(|_| {
                    let d = c % n;
                    c /= n;
                    d
                })
                .collect::<Vec<_>>()
        };
        let names = (0..total)
            .map(|c| {
                let parts: Vec<&str> = split(c).iter().map(|&d| self.names[d].as_str()).collect();
                format!("({})", parts.join(","))
            })
            .collect();
        let table = (0..total)
            .map(|x| {
                let xs = split(x);
                (0..total)
                    .map(|y| {
                        let ys = split(y);
                        (0..s).rev().fold(0, |acc, k| acc * n + self.mul(xs[k], ys[k]))
                    })
                    .collect()
            })
            .collect();
        FiniteGroup { names, table }
    }
}

/// Defining data of a spinal group acting on the m-regular tree.
///
/// `omega[p][j-1][d]` is ω_{i,j}(d) for every i with (i − 1) mod period = p;
/// so the directed element d has label ω_{i,j}(d) at the vertex 0^{i−1}j.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpinalTriple {
    pub m: usize,
    pub rooted: Vec<Perm>,
    pub d: FiniteGroup,
    pub omega: Vec<Vec<Vec<Perm>>>,
}

fn orbit_of_zero(m: usize, perms: &[&Perm]) -> usize {
    let mut seen = vec![false; m];
    seen[0] = true;
    let mut stack = vec![0];
    let mut count = 1;
    while let Some(x) = stack.pop() {
        for p in perms {
            let y = p.apply(x);
            if !seen[y] {
                seen[y] = true;
                count += 1;
                stack.push(y);
            }
        }
    }
    count
}

impl SpinalTriple {
    pub fn period(&self) -> usize {
        self.omega.len()
    }

    pub fn omega_at(&self, i: usize, j: usize, d: usize) -> &Perm {
        &self.omega[(i - 1) % self.period()][j - 1][d]
    }

    /// Check transitivity of R and of every ⟨ω_{n,j}(D)⟩, that each ω_{n,j}
    /// is a homomorphism, and that the kernels intersect trivially.
    pub fn validate(&self) -> Result<()> {
        let m = self.m;
        if self.omega.is_empty() {
            return input("ω needs at least one period entry");
        }
        if self.rooted.iter().any(|p| p.degree() != m) {
            return input("rooted permutation on the wrong alphabet");
        }
        if orbit_of_zero(m, &self.rooted.iter().collect::<Vec<_>>()) != m {
            return input("rooted group R is not transitive");
        }
        let n = self.d.order();
        let mut kernel: Vec<bool> = vec![true; n];
        for (p, row) in self.omega.iter().enumerate() {
            if row.len() != m - 1 || row.iter().any(|maps| maps.len() != n || maps.iter().any(|q| q.degree() != m)) {
                return input(format!("ω at period position {p} has the wrong shape"));
            }
            let all: Vec<&Perm> = row.iter().flatten().collect();
            if orbit_of_zero(m, &all) != m {
                return input(format!("⟨ω_(n,j)(D)⟩ is not transitive at period position {p}"));
            }
            for maps in row {
                for x in 0..n {
                    if !maps[x].is_identity() {
                        kernel[x] = false;
                    }
                    for y in 0..n {
                        if maps[self.d.mul(x, y)] != maps[x].compose(&maps[y]) {
                            return input("some ω_(n,j) is not a homomorphism");
                        }
                    }
                }
            }
        }
        if kernel.iter().skip(1).any(|&k| k) {
            return input("kernels of ω do not intersect trivially");
        }
        Ok(())
    }

    /// The rooted generator for `r` and the directed generator for the
    /// D-element `d`.
    pub fn rooted_automorphism(&self, r: usize) -> Automorphism {
        Automorphism::rooted(self.rooted[r].clone())
    }

    pub fn directed_automorphism(&self, d: usize) -> Result<Automorphism> {
        let m = self.m;
        let period = self.period();
        let mut mach = Machine::new(m);
        let id = mach.identity_state();
        let spine: Vec<usize> = (0..period).map(|_| mach.add_placeholder()).collect();
        for p in 0..period {
            let mut next = vec![spine[(p + 1) % period]];
            for j in 1..m {
                let lab = &self.omega[p][j - 1][d];
                next.push(if lab.is_identity() { id } else { mach.add(lab.clone(), vec![id; m]) });
            }
            mach.set(spine[p], Perm::identity(m), next);
        }
        mach.automorphism(spine[0])
    }
}

/// The finitary-at-0^i image τ_i(ρ) of a rooted permutation on X^s.
fn tau(rho: &Perm, m: usize, s: usize, i: usize, order: LetterOrder) -> Perm {
    let big = m.pow(s as u32);
    let images = (0..big)
        .map(|c| {
            let mut w = order.decode(m, s, c);
            if w[..i].iter().all(|&x| x == 0) {
                w[i] = rho.apply(w[i]);
            }
            order.encode(m, &w)
        })
        .collect();
    Perm::from_images(images).expect("τ_i(ρ) is a permutation")
}

/// The triple of bp_s(G) on the alphabet X^s: rooted part generated by the
/// τ_i(R), directed part D^s, and ω̃_{n,j} = τ_i ∘ ω_{n,x} ∘ π_i when
/// j = 0^i x 0^{s−i−1} (x ≠ 0), trivial otherwise.
pub fn spinal_bp_triple(t: &SpinalTriple, s: usize, order: LetterOrder) -> Result<SpinalTriple> {
    if s == 0 {
        return input("delay s must be at least 1");
    }
    if s == 1 {
        return Ok(t.clone());
    }
    let m = t.m;
    let big = m.pow(s as u32);
    let n = t.d.order();
    let ds = t.d.power(s);
    let rooted = (0..s).flat_map(|i| t.rooted.iter().map(move |r| tau(r, m, s, i, order))).collect();
    let mut omega = Vec::with_capacity(t.period());
    for p in 0..t.period() {
        let mut row = Vec::with_capacity(big - 1);
        for j in 1..big {
            let w = order.decode(m, s, j);
            let nonzero: Vec<usize> = (0..s).filter(|&k| w[k] != 0).collect();
            let maps = (0..ds.order())
                .map(|delta| {
                    if nonzero.len() != 1 {
                        return Perm::identity(big);
                    }
                    let i = nonzero[0];
                    let d_i = (delta / n.pow(i as u32)) % n;
                    tau(&t.omega[p][w[i] - 1][d_i], m, s, i, order)
                })
                .collect();
            row.push(maps);
        }
        omega.push(row);
    }
    Ok(SpinalTriple { m: big, rooted, d: ds, omega })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn odometer() -> Automorphism {
        let mut mach = Machine::new(2);
        let a = mach.add_placeholder();
        mach.set(a, Perm::shift(2, 1), vec![a, 0]);
        mach.automorphism(a).unwrap()
    }

    #[test]
    fn basilica_pair() {
        let a = odometer();
        let b0 = beta(&a, 2, 0).unwrap();
        let b1 = beta(&a, 2, 1).unwrap();
        let id = Automorphism::identity(2);
        // b = σ(a, id), a = (b, id)
        assert_eq!(b0.decompose(), (Perm::shift(2, 1), vec![b1.clone(), id.clone()]));
        assert_eq!(b1.decompose(), (Perm::identity(2), vec![b0.clone(), id]));
        assert_eq!(b0.num_states(), 3);
        assert_ne!(b0.compose(&b1).unwrap(), b1.compose(&b0).unwrap());
        assert_eq!(beta(&a, 1, 0).unwrap(), a);
        assert!(beta(&a, 2, 2).is_err());
    }

    #[test]
    fn omega_formula() {
        assert_eq!(omega_embed(0, 3, &[]).unwrap(), Vec::<usize>::new());
        assert_eq!(omega_embed(3, 8, &[]).unwrap(), vec![0, 0, 0]);
        assert_eq!(omega_embed(3, 8, &[1]).unwrap(), vec![0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0]);
        assert_eq!(omega_embed(1, 3, &[1, 1, 0]).unwrap(), vec![0, 1, 0, 0, 1, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn portrait_lives_on_omega_image() {
        let c = odometer();
        let g = beta(&c, 8, 3).unwrap();
        assert_eq!(g.label(&[0, 0, 0]).unwrap(), Perm::shift(2, 1));
        // every vertex down to depth 12, compared against the embedding
        let gc = c.compose(&beta(&c, 2, 1).unwrap()).unwrap();
        for (h, s, i) in [(&c, 3usize, 1usize), (&gc, 2, 0), (&gc, 3, 2)] {
            let b = beta(h, s, i).unwrap();
            let mut image = std::collections::HashMap::new();
            for k in 0..=(12 - i) / s {
                for n in 0..1usize << k {
                    let v: Vec<usize> = (0..k).map(|t| (n >> t) & 1).collect();
                    image.insert(omega_embed(i, s, &v).unwrap(), h.label(&v).unwrap());
                }
            }
            for depth in 0..=12 {
                for n in 0..1usize << depth {
                    let u: Vec<usize> = (0..depth).map(|t| (n >> t) & 1).collect();
                    let want = image.get(&u).cloned().unwrap_or_else(|| Perm::identity(2));
                    assert_eq!(b.label(&u).unwrap(), want, "vertex {u:?}");
                }
            }
        }
    }

    #[test]
    fn letter_orders() {
        assert_eq!(LetterOrder::Lex.encode(3, &[1, 2]), 5);
        assert_eq!(LetterOrder::ReverseLex.encode(3, &[1, 2]), 7);
        for c in 0..27 {
            for o in [LetterOrder::Lex, LetterOrder::ReverseLex] {
                assert_eq!(o.encode(3, &o.decode(3, 3, c)), c);
            }
        }
    }

    #[test]
    fn power_alphabet_blocks() {
        let a = odometer();
        let a2 = on_power_alphabet(&a, 2, LetterOrder::Lex).unwrap();
        assert_eq!(a2.m(), 4);
        // 01 → 10 and the carry dies at the second letter
        assert_eq!(a2.act(&[1, 1]).unwrap(), vec![2, 1]);
        for w in [[0usize, 0, 1, 1], [1, 1, 0, 1], [0, 0, 0, 0]] {
            let img = a.act(&w).unwrap();
            let blocks = a2.act(&[w[0] * 2 + w[1], w[2] * 2 + w[3]]).unwrap();
            assert_eq!(blocks, vec![img[0] * 2 + img[1], img[2] * 2 + img[3]]);
        }
    }

    #[test]
    fn d_power_table() {
        let c2 = FiniteGroup::cyclic(2, "b");
        let v4 = c2.power(2);
        assert_eq!(v4.order(), 4);
        assert_eq!(v4.names[1], "(b,1)");
        assert_eq!(v4.mul(1, 2), 3);
        assert_eq!(v4.mul(3, 3), 0);
        assert!(FiniteGroup::new(v4.names.clone(), v4.table.clone()).is_ok());
    }
}
