use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use super::perm::Perm;
use super::portrait::Portrait;
use crate::error::{input, Error, Result};

/// Default bound on the number of states of any intermediate product machine.
pub const DEFAULT_STATE_CAP: usize = 1_000_000;

/// A vertex of the tree, i.e. a word over `0..m`. The empty word is the root.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Vertex(pub Vec<usize>);

impl Vertex {
    pub fn root() -> Vertex {
        Vertex(Vec::new())
    }

    /// Digits without separators when every letter is below 10, otherwise
    /// dot-separated letters. `ε` and the empty string are the root.
    pub fn parse(m: usize, text: &str) -> Result<Vertex> {
        let t = text.trim();
        if t.is_empty() || t == "ε" || t == "e" {
            return Ok(Vertex::root());
        }
        let letters: Vec<usize> = if t.contains('.') {
            t.split('.')
                .map(|tok| tok.parse::<usize>().map_err(|_| Error::Input(format!("bad letter `{tok}`"))))
                .collect::<Result<_>>()?
        } else {
            t.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| Error::Input(format!("bad letter `{c}`"))))
                .collect::<Result<_>>()?
        };
        if let Some(&x) = letters.iter().find(|&&x| x >= m) {
            return input(format!("letter {x} out of range for alphabet of size {m}"));
        }
        Ok(Vertex(letters))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "ε");
        }
        if self.0.iter().all(|&x| x < 10) {
            for x in &self.0 {
                write!(f, "{x}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
            write!(f, "{}", parts.join("."))
        }
    }
}

impl fmt::Debug for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct State {
    pub perm: Perm,
    pub next: Vec<usize>,
}

/// A Mealy machine under construction. Not canonical; turn it into an
/// [`Automorphism`] with [`Machine::automorphism`].
#[derive(Clone, Debug)]
pub struct Machine {
    m: usize,
    states: Vec<State>,
    identity: usize,
}

impl Machine {
    /// A machine holding only the identity state, at index 0.
    pub fn new(m: usize) -> Machine {
        assert!(m >= 2, "alphabet size must be at least 2");
        Machine { m, states: vec![State { perm: Perm::identity(m), next: vec![0; m] }], identity: 0 }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn identity_state(&self) -> usize {
        self.identity
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Reserve a state to be filled in later with [`Machine::set`].
    pub fn add_placeholder(&mut self) -> usize {
        let m = self.m;
        self.states.push(State { perm: Perm::identity(m), next: vec![self.identity; m] });
        self.states.len() - 1
    }

    pub fn add(&mut self, perm: Perm, next: Vec<usize>) -> usize {
        let q = self.add_placeholder();
        self.set(q, perm, next);
        q
    }

    pub fn set(&mut self, q: usize, perm: Perm, next: Vec<usize>) {
        assert_eq!(perm.degree(), self.m);
        assert_eq!(next.len(), self.m);
        assert_ne!(q, self.identity, "the identity state is fixed");
        self.states[q] = State { perm, next };
    }

    /// Copy all states of `g` into this machine; returns the index of `g`'s
    /// initial state. The identity state of `g` is mapped onto ours.
    pub fn absorb(&mut self, g: &Automorphism) -> usize {
        assert_eq!(g.m(), self.m);
        let offset = self.states.len();
        let map = |q: usize, this: &Machine| if q == g.identity { this.identity } else { q + offset };
        let mut new_states = Vec::with_capacity(g.states.len());
        for st in g.states.iter() {
            new_states.push(State { perm: st.perm.clone(), next: st.next.iter().map(|&q| map(q, self)).collect() });
        }
        self.states.extend(new_states);
        map(0, self)
    }

    fn validate(&self) -> Result<()> {
        let n = self.states.len();
        for st in &self.states {
            if st.perm.degree() != self.m || st.next.len() != self.m || st.next.iter().any(|&q| q >= n) {
                return input("malformed machine state");
            }
        }
        let id = &self.states[self.identity];
        if !id.perm.is_identity() || id.next.iter().any(|&q| q != self.identity) {
            return input("identity state is not the identity");
        }
        Ok(())
    }

    /// Minimise, renumber breadth-first from `initial` and wrap.
    pub fn automorphism(&self, initial: usize) -> Result<Automorphism> {
        self.validate()?;
        if initial >= self.states.len() {
            return input(format!("initial state {initial} out of range"));
        }
        Ok(canonical(self.m, &self.states, self.identity, initial))
    }
}

/// A tree automorphism given by a canonical (minimal, BFS-numbered) Mealy
/// machine whose initial state is state 0.
///
/// Elements act on the left: in `g.compose(&h)` the factor `h` acts first, so
/// `(gh)|_u = g|_{h(u)} h|_u`. Wreath tuples are indexed by the input letter:
/// `g(xw) = g|^ε(x) g|_x(w)`.
///
/// Because every value is canonical, `==` is equality of tree maps.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Automorphism {
    m: usize,
    states: Arc<Vec<State>>,
    identity: usize,
}

/// Partition refinement followed by BFS renumbering.
fn canonical(m: usize, states: &[State], identity: usize, initial: usize) -> Automorphism {
    // restrict to states reachable from the initial state, plus the identity
    let n = states.len();
    let mut seen = vec![false; n];
    let mut order = Vec::new();
    let mut queue = VecDeque::from([initial]);
    seen[initial] = true;
    while let Some(q) = queue.pop_front() {
        order.push(q);
        for &r in &states[q].next {
            if !seen[r] {
                seen[r] = true;
                queue.push_back(r);
            }
        }
    }
    if !seen[identity] {
        order.push(identity);
    }

    let mut class = vec![usize::MAX; n];
    let mut count;
    {
        let mut by_perm: HashMap<&Perm, usize> = HashMap::new();
        for &q in &order {
            let k = by_perm.len();
            class[q] = *by_perm.entry(&states[q].perm).or_insert(k);
        }
        count = by_perm.len();
    }
    loop {
        let mut by_sig: HashMap<(usize, Vec<usize>), usize> = HashMap::with_capacity(order.len());
        let mut next_class = vec![usize::MAX; n];
        for &q in &order {
            let sig = (class[q], states[q].next.iter().map(|&r| class[r]).collect::<Vec<_>>());
            let k = by_sig.len();
            next_class[q] = *by_sig.entry(sig).or_insert(k);
        }
        let new_count = by_sig.len();
        class = next_class;
        if new_count == count {
            break;
        }
        count = new_count;
    }

    // BFS numbering of classes from the initial state
    let mut number = vec![usize::MAX; count];
    let mut rep = Vec::with_capacity(count);
    let mut queue = VecDeque::from([initial]);
    number[class[initial]] = 0;
    rep.push(initial);
    while let Some(q) = queue.pop_front() {
        for &r in &states[q].next {
            if number[class[r]] == usize::MAX {
                number[class[r]] = rep.len();
                rep.push(r);
                queue.push_back(r);
            }
        }
    }
    if number[class[identity]] == usize::MAX {
        number[class[identity]] = rep.len();
        rep.push(identity);
    }
    let out: Vec<State> = rep
        .iter()
        .map(|&q| State { perm: states[q].perm.clone(), next: states[q].next.iter().map(|&r| number[class[r]]).collect() })
        .collect();
    Automorphism { m, states: Arc::new(out), identity: number[class[identity]] }
}

impl Automorphism {
    pub fn identity(m: usize) -> Automorphism {
        Machine::new(m).automorphism(0).expect("identity machine is valid")
    }

    /// The rooted automorphism with label `p` at the root and trivial sections.
    pub fn rooted(p: Perm) -> Automorphism {
        let mut mach = Machine::new(p.degree());
        let id = mach.identity_state();
        let q = mach.add(p, vec![id; mach.m()]);
        mach.automorphism(q).expect("rooted machine is valid")
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[State] {
        &self.states
    }

    pub fn identity_state(&self) -> usize {
        self.identity
    }

    /// Copy of the underlying machine, with the identity state kept.
    pub fn to_machine(&self) -> (Machine, usize) {
        (Machine { m: self.m, states: self.states.as_ref().clone(), identity: self.identity }, 0)
    }

    pub fn is_identity(&self) -> bool {
        self.identity == 0
    }

    pub fn root_perm(&self) -> &Perm {
        &self.states[0].perm
    }

    fn check_word(&self, u: &[usize]) -> Result<()> {
        match u.iter().find(|&&x| x >= self.m) {
            Some(x) => input(format!("letter {x} out of range for alphabet of size {}", self.m)),
            None => Ok(()),
        }
    }

    /// State reached after reading `u` (letters assumed in range).
    pub(crate) fn state_after(&self, mut q: usize, u: &[usize]) -> usize {
        for &x in u {
            q = self.states[q].next[x];
        }
        q
    }

    /// g(v).
    pub fn act(&self, v: &[usize]) -> Result<Vec<usize>> {
        self.check_word(v)?;
        Ok(self.act_unchecked(v))
    }

    pub(crate) fn act_unchecked(&self, v: &[usize]) -> Vec<usize> {
        let mut q = 0;
        v.iter()
            .map(|&x| {
                let st = &self.states[q];
                q = st.next[x];
                st.perm.apply(x)
            })
            .collect()
    }

    /// The automorphism represented by another state of this machine.
    pub fn at_state(&self, q: usize) -> Automorphism {
        if q == 0 {
            return self.clone();
        }
        canonical(self.m, &self.states, self.identity, q)
    }

    /// g|_u.
    pub fn section(&self, u: &[usize]) -> Result<Automorphism> {
        self.check_word(u)?;
        Ok(self.at_state(self.state_after(0, u)))
    }

    /// g|^u, the root permutation of the section at u.
    pub fn label(&self, u: &[usize]) -> Result<Perm> {
        self.check_word(u)?;
        Ok(self.states[self.state_after(0, u)].perm.clone())
    }

    fn same_alphabet(&self, h: &Automorphism) -> Result<()> {
        if self.m != h.m {
            return input(format!("alphabet mismatch: {} vs {}", self.m, h.m));
        }
        Ok(())
    }

    /// g·h (h acts first).
    pub fn compose(&self, h: &Automorphism) -> Result<Automorphism> {
        self.compose_capped(h, DEFAULT_STATE_CAP)
    }

    pub fn compose_capped(&self, h: &Automorphism, cap: usize) -> Result<Automorphism> {
        self.same_alphabet(h)?;
        if h.is_identity() {
            return Ok(self.clone());
        }
        if self.is_identity() {
            return Ok(h.clone());
        }
        let m = self.m;
        let mut index: HashMap<(usize, usize), usize> = HashMap::new();
        let mut mach = Machine::new(m);
        let id_pair = (self.identity, h.identity);
        index.insert(id_pair, mach.identity_state());
        let start = mach.add_placeholder();
        index.insert((0, 0), start);
        let mut queue = VecDeque::from([(0usize, 0usize)]);
        while let Some((p, q)) = queue.pop_front() {
            let gs = &self.states[p];
            let hs = &h.states[q];
            let perm = gs.perm.compose(&hs.perm);
            let mut next = Vec::with_capacity(m);
            for x in 0..m {
                let pair = (gs.next[hs.perm.apply(x)], hs.next[x]);
                let r = match index.get(&pair) {
                    Some(&r) => r,
                    None => {
                        if mach.len() >= cap {
                            return Err(Error::Resource(format!("product machine exceeds {cap} states")));
                        }
                        let r = mach.add_placeholder();
                        index.insert(pair, r);
                        queue.push_back(pair);
                        r
                    }
                };
                next.push(r);
            }
            mach.set(index[&(p, q)], perm, next);
        }
        Ok(canonical(m, &mach.states, mach.identity, start))
    }

    /// Product of a sequence, applied right to left.
    pub fn product<'a, I>(m: usize, factors: I) -> Result<Automorphism>
    where
        I: IntoIterator<Item = &'a Automorphism>,
    {
        let mut acc = Automorphism::identity(m);
        for f in factors {
            acc = acc.compose(f)?;
        }
        Ok(acc)
    }

    pub fn inverse(&self) -> Automorphism {
        // (g^{-1})|_y = (g|_{g^{-1}(y)})^{-1}
        let states: Vec<State> = self
            .states
            .iter()
            .map(|st| {
                let inv = st.perm.inverse();
                let next = (0..self.m).map(|y| st.next[inv.apply(y)]).collect();
                State { perm: inv, next }
            })
            .collect();
        canonical(self.m, &states, self.identity, 0)
    }

    pub fn pow(&self, k: i64) -> Result<Automorphism> {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Automorphism::identity(self.m);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&sq)?;
            }
            e >>= 1;
            if e > 0 {
                sq = sq.compose(&sq)?;
            }
        }
        Ok(acc)
    }

    /// x^y = y⁻¹ x y.
    pub fn conjugate(&self, y: &Automorphism) -> Result<Automorphism> {
        y.inverse().compose(self)?.compose(y)
    }

    /// [x, y] = x⁻¹ y⁻¹ x y.
    pub fn commutator(&self, y: &Automorphism) -> Result<Automorphism> {
        self.inverse().compose(&y.inverse())?.compose(self)?.compose(y)
    }

    /// The element with root label `p` and first-level sections `sections`
    /// (indexed by input letter).
    pub fn from_wreath(p: &Perm, sections: &[Automorphism]) -> Result<Automorphism> {
        let m = p.degree();
        if sections.len() != m {
            return input(format!("expected {m} sections, got {}", sections.len()));
        }
        if let Some(s) = sections.iter().find(|s| s.m != m) {
            return input(format!("alphabet mismatch: {} vs {m}", s.m));
        }
        let mut mach = Machine::new(m);
        let root = mach.add_placeholder();
        let next: Vec<usize> = sections.iter().map(|s| mach.absorb(s)).collect();
        mach.set(root, p.clone(), next);
        mach.automorphism(root)
    }

    /// Root label and first-level sections.
    pub fn decompose(&self) -> (Perm, Vec<Automorphism>) {
        let st = &self.states[0];
        (st.perm.clone(), st.next.iter().map(|&q| self.at_state(q)).collect())
    }

    pub fn portrait(&self, depth: usize) -> Portrait {
        let mut labels = Vec::new();
        let mut layer = vec![0usize];
        for _ in 0..depth {
            let mut next_layer = Vec::with_capacity(layer.len() * self.m);
            for &q in &layer {
                labels.push(self.states[q].perm.clone());
                next_layer.extend_from_slice(&self.states[q].next);
            }
            layer = next_layer;
        }
        Portrait::new(self.m, depth, labels)
    }

    /// Moore-diagram DOT output; edges are labelled `x:y`.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("digraph \"{name}\" {{\n  rankdir=LR;\n  node [shape=circle];\n");
        for (q, st) in self.states.iter().enumerate() {
            let tag = if q == self.identity { "id".to_string() } else { format!("q{q}") };
            let shape = if q == 0 { ", shape=doublecircle" } else { "" };
            out.push_str(&format!("  q{q} [label=\"{tag}\\n{}\"{shape}];\n", st.perm));
        }
        for (q, st) in self.states.iter().enumerate() {
            for x in 0..self.m {
                out.push_str(&format!("  q{q} -> q{} [label=\"{x}:{}\"];\n", st.next[x], st.perm.apply(x)));
            }
        }
        out.push_str("}\n");
        out
    }
}

impl fmt::Debug for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Automorphism(m={}", self.m)?;
        for (q, st) in self.states.iter().enumerate() {
            let mark = if q == self.identity { "*" } else { "" };
            write!(f, "; {q}{mark}: {} {:?}", st.perm, st.next)?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sigma() -> Perm {
        Perm::shift(2, 1)
    }

    /// a = σ(a, id), built by hand
    fn odometer() -> Automorphism {
        let mut mach = Machine::new(2);
        let a = mach.add_placeholder();
        mach.set(a, sigma(), vec![a, 0]);
        mach.automorphism(a).unwrap()
    }

    /// a as a function on words, written out directly
    fn odometer_oracle(v: &[usize]) -> Vec<usize> {
        let mut out = v.to_vec();
        for x in out.iter_mut() {
            let carry = *x == 0;
            *x = 1 - *x;
            if !carry {
                break;
            }
        }
        out
    }

    fn all_words(m: usize, n: usize) -> Vec<Vec<usize>> {
        let mut words = vec![vec![]];
        for _ in 0..n {
            words = words.into_iter().flat_map(|w| (0..m).map(move |x| [w.clone(), vec![x]].concat())).collect();
        }
        words
    }

    #[test]
    fn odometer_action_and_sections() {
        let a = odometer();
        assert_eq!(a.num_states(), 2);
        for n in 0..=6 {
            for w in all_words(2, n) {
                assert_eq!(a.act(&w).unwrap(), odometer_oracle(&w));
            }
        }
        assert_eq!(a.act(&[1]).unwrap(), vec![0]);
        assert_eq!(a.act(&[1, 1]).unwrap(), vec![0, 1]);
        assert_eq!(a.act(&[0, 0]).unwrap(), vec![1, 1]);
        assert_eq!(a.section(&[0]).unwrap(), a);
        assert!(a.section(&[1]).unwrap().is_identity());
        assert_eq!(a.label(&[]).unwrap(), sigma());
        assert!(a.act(&[2]).is_err());
    }

    #[test]
    fn odometer_square_and_inverse() {
        let a = odometer();
        let a2 = a.compose(&a).unwrap();
        let (p, secs) = a2.decompose();
        assert!(p.is_identity());
        assert_eq!(secs, vec![a.clone(), a.clone()]);
        assert!(a.compose(&a.inverse()).unwrap().is_identity());
        assert_eq!(a.inverse().act(&[0]).unwrap(), vec![1]);
        assert_eq!(a.pow(-3).unwrap(), a.inverse().pow(3).unwrap());
        assert_eq!(a.pow(4).unwrap().act(&[0, 0, 1]).unwrap(), vec![0, 0, 0]);
    }

    #[test]
    fn canonicalize_merges_redundant_states() {
        let mut mach = Machine::new(2);
        let id = mach.identity_state();
        // two copies of the identity and two copies of the odometer
        let i2 = mach.add(Perm::identity(2), vec![id, id]);
        let a1 = mach.add_placeholder();
        let a2 = mach.add_placeholder();
        mach.set(a1, sigma(), vec![a2, i2]);
        mach.set(a2, sigma(), vec![a1, id]);
        let g = mach.automorphism(a1).unwrap();
        assert_eq!(g, odometer());
        let ident = mach.automorphism(i2).unwrap();
        assert!(ident.is_identity());
        assert_eq!(ident.num_states(), 1);
    }

    #[test]
    fn compose_matches_pointwise() {
        let a = odometer();
        let b = Automorphism::from_wreath(&sigma(), &[a.clone(), Automorphism::identity(2)]).unwrap();
        assert_eq!(b, a);
        let c = Automorphism::from_wreath(&Perm::identity(2), &[a.clone(), b.inverse()]).unwrap();
        let gc = c.compose(&a).unwrap();
        for w in all_words(2, 5) {
            assert_eq!(gc.act(&w).unwrap(), c.act(&a.act(&w).unwrap()).unwrap());
        }
    }

    #[test]
    fn from_wreath_round_trip() {
        let a = odometer();
        let id = Automorphism::identity(2);
        assert!(Automorphism::from_wreath(&Perm::identity(2), &[id.clone(), id.clone()]).unwrap().is_identity());
        let g = Automorphism::from_wreath(&Perm::identity(2), &[a.clone(), a.inverse()]).unwrap();
        let (p, secs) = g.decompose();
        assert!(p.is_identity());
        assert_eq!(secs, vec![a.clone(), a.inverse()]);
        assert!(Automorphism::from_wreath(&sigma(), std::slice::from_ref(&a)).is_err());
    }

    #[test]
    fn portrait_and_dot() {
        let a = odometer();
        let p = a.portrait(2);
        assert_eq!(p.label(&[]), Some(&sigma()));
        assert_eq!(p.label(&[0]), Some(&sigma()));
        assert!(p.label(&[1]).unwrap().is_identity());
        assert!(Automorphism::identity(2).portrait(3).labels().iter().all(|l| l.is_identity()));
        let dot = a.to_dot("a");
        assert!(dot.contains("q0 -> q0 [label=\"0:1\"]"));
        assert!(dot.contains("q0 -> q1 [label=\"1:0\"]"));
    }

    #[test]
    fn vertex_parse() {
        assert_eq!(Vertex::parse(2, "0110").unwrap().0, vec![0, 1, 1, 0]);
        assert_eq!(Vertex::parse(12, "3.11").unwrap().0, vec![3, 11]);
        assert!(Vertex::parse(2, "012").is_err());
        assert!(Vertex::parse(2, "ε").unwrap().is_empty());
        assert_eq!(Vertex(vec![3, 11]).to_string(), "3.11");
    }
}
