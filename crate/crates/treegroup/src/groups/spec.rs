use crate::error::{input, Result};
use crate::tree_core::Automorphism;

/// A word in the generators of a [`GroupSpec`]: (generator index, exponent).
/// Products are read left to right, with the rightmost letter acting first.
pub type Word = Vec<(usize, i64)>;

/// An alphabet size and a named list of generating automorphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    m: usize,
    gens: Vec<(String, Automorphism)>,
}

impl GroupSpec {
    pub fn new(m: usize, gens: Vec<(String, Automorphism)>) -> Result<GroupSpec> {
        if m < 2 {
            return input("alphabet size must be at least 2");
        }
        for (k, (name, g)) in gens.iter().enumerate() {
            if g.m() != m {
                return input(format!("generator {name} lives on alphabet {} not {m}", g.m()));
            }
            if gens[..k].iter().any(|(n, _)| n == name) {
                return input(format!("duplicate generator name {name}"));
            }
        }
        Ok(GroupSpec { m, gens })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.gens.iter().map(|(n, _)| n.as_str())
    }

    pub fn generators(&self) -> impl Iterator<Item = &Automorphism> {
        self.gens.iter().map(|(_, g)| g)
    }

    pub fn named(&self) -> &[(String, Automorphism)] {
        &self.gens
    }

    pub fn generator(&self, k: usize) -> &Automorphism {
        &self.gens[k].1
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|(n, _)| n == name)
    }

    pub fn get(&self, name: &str) -> Option<&Automorphism> {
        self.index_of(name).map(|k| &self.gens[k].1)
    }

    pub fn evaluate(&self, word: &[(usize, i64)]) -> Result<Automorphism> {
        let mut acc = Automorphism::identity(self.m);
        for &(k, e) in word {
            if k >= self.gens.len() {
                return input(format!("generator index {k} out of range"));
            }
            acc = acc.compose(&self.gens[k].1.pow(e)?)?;
        }
        Ok(acc)
    }

    /// Decide whether a word is trivial by multiplying machines.
    pub fn word_is_identity(&self, word: &[(usize, i64)]) -> Result<bool> {
        Ok(self.evaluate(word)?.is_identity())
    }

    /// Generators followed by their inverses.
    pub fn symmetric_generators(&self) -> Vec<Automorphism> {
        let mut out: Vec<Automorphism> = self.generators().cloned().collect();
        out.extend(self.generators().map(|g| g.inverse()));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree_core::Perm;

    #[test]
    fn names_must_be_unique() {
        let a = Automorphism::rooted(Perm::shift(2, 1));
        assert!(GroupSpec::new(2, vec![("a".into(), a.clone()), ("a".into(), a.clone())]).is_err());
        assert!(GroupSpec::new(3, vec![("a".into(), a.clone())]).is_err());
        let g = GroupSpec::new(2, vec![("a".into(), a)]).unwrap();
        assert!(g.word_is_identity(&[]).unwrap());
        assert!(g.word_is_identity(&[(0, 2)]).unwrap());
        assert!(!g.word_is_identity(&[(0, 1)]).unwrap());
    }
}
