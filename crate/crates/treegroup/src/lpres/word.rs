//! Words in the free group on Y = {a_{i,j}}.

use std::fmt;

use crate::error::{input, Error, Result};
use crate::groups::Word;

/// A freely reduced word; each letter is (generator index, ±1).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeWord {
    letters: Vec<(usize, i8)>,
}

impl FreeWord {
    pub fn empty() -> FreeWord {
        FreeWord::default()
    }

    /// y^k as a word.
    pub fn power_of(y: usize, k: i64) -> FreeWord {
        let e = if k < 0 { -1 } else { 1 };
        FreeWord { letters: vec![(y, e); k.unsigned_abs() as usize] }
    }

    /// Builds from arbitrary letters and reduces.
    pub fn from_letters<I: IntoIterator<Item = (usize, i8)>>(letters: I) -> FreeWord {
        let mut w = FreeWord::empty();
        for (y, e) in letters {
            w.push(y, e);
        }
        w
    }

    fn push(&mut self, y: usize, e: i8) {
        debug_assert!(e == 1 || e == -1);
        match self.letters.last() {
            Some(&(z, f)) if z == y && f == -e => {
                self.letters.pop();
            }
            _ => self.letters.push((y, e)),
        }
    }

    pub fn letters(&self) -> &[(usize, i8)] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn mul(&self, other: &FreeWord) -> FreeWord {
        let mut w = self.clone();
        for &(y, e) in &other.letters {
            w.push(y, e);
        }
        w
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord { letters: self.letters.iter().rev().map(|&(y, e)| (y, -e)).collect() }
    }

    pub fn pow(&self, k: i64) -> FreeWord {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        (0..k.unsigned_abs()).fold(FreeWord::empty(), |acc, _| acc.mul(&base))
    }

    /// x^y = y⁻¹xy.
    pub fn conj(&self, y: &FreeWord) -> FreeWord {
        y.inverse().mul(self).mul(y)
    }

    /// [x, y] = x⁻¹y⁻¹xy.
    pub fn comm(&self, y: &FreeWord) -> FreeWord {
        self.inverse().mul(&y.inverse()).mul(self).mul(y)
    }

    /// Letterwise substitution.
    pub fn substitute(&self, image: impl Fn(usize) -> FreeWord) -> FreeWord {
        let mut w = FreeWord::empty();
        for &(y, e) in &self.letters {
            let img = image(y);
            let img = if e < 0 { img.inverse() } else { img };
            for &(z, f) in &img.letters {
                w.push(z, f);
            }
        }
        w
    }

    pub fn exponent_sums(&self, n: usize) -> Vec<i64> {
        let mut out = vec![0; n];
        for &(y, e) in &self.letters {
            out[y] += e as i64;
        }
        out
    }

    /// Syllables (y, k) for group evaluation.
    pub fn to_word(&self) -> Word {
        let mut out: Word = Vec::new();
        for &(y, e) in &self.letters {
            match out.last_mut() {
                Some((z, k)) if *z == y => *k += e as i64,
                _ => out.push((y, e as i64)),
            }
        }
        out
    }

    /// Text form with letters `a[i,j]^±1` separated by spaces, where
    /// y = j·d + i; the empty word is `e`.
    pub fn display(&self, d: usize) -> String {
        if self.letters.is_empty() {
            return "e".into();
        }
        let parts: Vec<String> = self.letters.iter().map(|&(y, e)| format!("a[{},{}]^{}", y % d, y / d, e)).collect();
        parts.join(" ")
    }

    pub fn parse(text: &str, d: usize, s: usize) -> Result<FreeWord> {
        let text = text.trim();
        if text == "e" {
            return Ok(FreeWord::empty());
        }
        let mut w = FreeWord::empty();
        for tok in text.split_whitespace() {
            let bad = || Error::Input(format!("malformed letter `{tok}`"));
            let rest = tok.strip_prefix("a[").ok_or_else(bad)?;
            let (idx, exp) = rest.split_once("]^").ok_or_else(bad)?;
            let (i, j) = idx.split_once(',').ok_or_else(bad)?;
            let i: usize = i.trim().parse().map_err(|_| bad())?;
            let j: usize = j.trim().parse().map_err(|_| bad())?;
            let e: i8 = match exp {
                "1" | "+1" => 1,
                "-1" => -1,
                _ => return Err(bad()),
            };
            if i >= d || j >= s {
                return input(format!("letter a[{i},{j}] outside d = {d}, s = {s}"));
            }
            w.push(j * d + i, e);
        }
        Ok(w)
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        let parts: Vec<String> = self.letters.iter().map(|&(y, e)| format!("y{y}^{e}")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_and_text() {
        let x = FreeWord::power_of(0, 1);
        let y = FreeWord::power_of(3, 1);
        assert!(x.mul(&x.inverse()).is_empty());
        let c = x.comm(&y);
        assert_eq!(c.len(), 4);
        assert_eq!(c.exponent_sums(4), vec![0; 4]);
        let text = c.display(2);
        assert_eq!(text, "a[0,0]^-1 a[1,1]^-1 a[0,0]^1 a[1,1]^1");
        assert_eq!(FreeWord::parse(&text, 2, 2).unwrap(), c);
        assert_eq!(FreeWord::parse("e", 2, 2).unwrap(), FreeWord::empty());
        assert!(FreeWord::parse("a[2,0]^1", 2, 2).is_err());
        assert_eq!(x.pow(3).to_word(), vec![(0, 3)]);
        assert!(x.comm(&x).is_empty());
    }
}
