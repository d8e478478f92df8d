use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::symbol::Symbol;

/// An eventually periodic word over `{0, 1, *}`, kept in canonical form:
/// the repeating block is primitive and the preperiodic part is as short as
/// possible. Two itineraries are equal exactly when they spell the same
/// infinite word.
///
/// Positions are 1-indexed, matching the usual `ν = ν₁ν₂ν₃…` notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Itinerary {
    prefix: Vec<Symbol>,
    cycle: Vec<Symbol>,
}

fn primitive_root(word: &[Symbol]) -> &[Symbol] {
    let n = word.len();
    for d in 1..n {
        if n.is_multiple_of(d) && (d..n).all(|i| word[i] == word[i - d]) {
            return &word[..d];
        }
    }
    word
}

impl Itinerary {
    /// Builds the word `prefix · cycle cycle cycle …`.
    ///
    /// Panics if `cycle` is empty.
    pub fn new(prefix: Vec<Symbol>, cycle: Vec<Symbol>) -> Itinerary {
        assert!(!cycle.is_empty(), "repeating block must be nonempty");
        let mut prefix = prefix;
        let mut cycle = primitive_root(&cycle).to_vec();
        while let (Some(&p), Some(&c)) = (prefix.last(), cycle.last()) {
            if p != c {
                break;
            }
            prefix.pop();
            cycle.rotate_right(1);
        }
        Itinerary { prefix, cycle }
    }

    pub fn periodic(cycle: Vec<Symbol>) -> Itinerary {
        Itinerary::new(Vec::new(), cycle)
    }

    /// The constant word `s s s …`.
    pub fn constant(s: Symbol) -> Itinerary {
        Itinerary::periodic(vec![s])
    }

    pub fn prefix(&self) -> &[Symbol] {
        &self.prefix
    }

    pub fn cycle(&self) -> &[Symbol] {
        &self.cycle
    }

    pub fn preperiod(&self) -> usize {
        self.prefix.len()
    }

    pub fn period(&self) -> usize {
        self.cycle.len()
    }

    pub fn is_periodic(&self) -> bool {
        self.prefix.is_empty()
    }

    pub fn has_star(&self) -> bool {
        self.prefix.contains(&Symbol::Star) || self.cycle.contains(&Symbol::Star)
    }

    /// Symbol at 1-indexed position `i`.
    pub fn at(&self, i: usize) -> Symbol {
        assert!(i >= 1, "positions are 1-indexed");
        let i = i - 1;
        if i < self.prefix.len() {
            self.prefix[i]
        } else {
            self.cycle[(i - self.prefix.len()) % self.cycle.len()]
        }
    }

    pub fn first(&self) -> Symbol {
        self.at(1)
    }

    /// The first `len` symbols.
    pub fn word(&self, len: usize) -> Vec<Symbol> {
        (1..=len).map(|i| self.at(i)).collect()
    }

    /// The shift `σ`, dropping the first symbol.
    pub fn shift(&self) -> Itinerary {
        if self.prefix.is_empty() {
            let mut cycle = self.cycle.clone();
            cycle.rotate_left(1);
            Itinerary { prefix: Vec::new(), cycle }
        } else {
            Itinerary { prefix: self.prefix[1..].to_vec(), cycle: self.cycle.clone() }
        }
    }

    pub fn shift_by(&self, k: usize) -> Itinerary {
        if k < self.prefix.len() {
            return Itinerary { prefix: self.prefix[k..].to_vec(), cycle: self.cycle.clone() };
        }
        let r = (k - self.prefix.len()) % self.cycle.len();
        let mut cycle = self.cycle.clone();
        cycle.rotate_left(r);
        Itinerary { prefix: Vec::new(), cycle }
    }

    /// `s` followed by this word.
    pub fn prepend(&self, s: Symbol) -> Itinerary {
        let mut prefix = Vec::with_capacity(self.prefix.len() + 1);
        prefix.push(s);
        prefix.extend_from_slice(&self.prefix);
        Itinerary::new(prefix, self.cycle.clone())
    }

    /// `word` followed by this word.
    pub fn prepend_word(&self, word: &[Symbol]) -> Itinerary {
        let mut prefix = word.to_vec();
        prefix.extend_from_slice(&self.prefix);
        Itinerary::new(prefix, self.cycle.clone())
    }

    /// Replaces every star by `s`.
    pub fn replace_star(&self, s: Symbol) -> Itinerary {
        let sub = |w: &[Symbol]| w.iter().map(|&x| if x == Symbol::Star { s } else { x }).collect::<Vec<_>>();
        Itinerary::new(sub(&self.prefix), sub(&self.cycle))
    }

    /// Number of distinct shifts `σ^k(self)`, `k ≥ 0`.
    pub fn orbit_len(&self) -> usize {
        self.prefix.len() + self.cycle.len()
    }

    /// 1-indexed position of the first disagreement with `other`, or `None`
    /// if the two words are equal.
    pub fn first_difference(&self, other: &Itinerary) -> Option<usize> {
        if self == other {
            return None;
        }
        // Both words are periodic from max(preperiod) on with period dividing
        // the lcm, so a difference shows up within that many symbols.
        let horizon = self.preperiod().max(other.preperiod()) + lcm(self.period(), other.period());
        (1..=horizon).find(|&i| self.at(i) != other.at(i))
    }

    /// Parses `word`, `word|word` (preperiod | period), over `{0,1,*}`.
    pub fn parse(text: &str) -> Result<Itinerary> {
        let text = text.trim();
        let symbols = |w: &str| -> Result<Vec<Symbol>> {
            w.chars()
                .map(|c| {
                    Symbol::from_char(c).ok_or_else(|| Error::Syntax(format!("unexpected character {c:?} in {text:?}")))
                })
                .collect()
        };
        let (pre, per) = match text.split_once('|') {
            Some((pre, per)) => (symbols(pre)?, symbols(per)?),
            None => (Vec::new(), symbols(text)?),
        };
        if per.is_empty() {
            return Err(Error::Syntax(format!("empty repeating block in {text:?}")));
        }
        Ok(Itinerary::new(pre, per))
    }
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

pub(crate) fn write_word(f: &mut fmt::Formatter<'_>, w: &[Symbol]) -> fmt::Result {
    for s in w {
        write!(f, "{s}")?;
    }
    Ok(())
}

impl fmt::Display for Itinerary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.prefix.is_empty() {
            write_word(f, &self.prefix)?;
            write!(f, "|")?;
        }
        write_word(f, &self.cycle)
    }
}

impl FromStr for Itinerary {
    type Err = Error;

    fn from_str(s: &str) -> Result<Itinerary> {
        Itinerary::parse(s)
    }
}

impl Serialize for Itinerary {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn it(s: &str) -> Itinerary {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_form_reduces_cycle_and_prefix() {
        assert_eq!(it("1010").to_string(), "10");
        assert_eq!(it("0|10").to_string(), "01");
        assert_eq!(it("110|10").to_string(), "1|10");
        assert_eq!(it("1|1"), it("1"));
    }

    #[test]
    fn shift_and_at_agree() {
        let x = it("*1|10");
        assert_eq!(x.at(1), Symbol::Star);
        assert_eq!(x.shift().to_string(), "1|10");
        assert_eq!(x.shift_by(2).to_string(), "10");
        assert_eq!(x.shift_by(3).to_string(), "01");
        for k in 0..6 {
            for i in 1..8 {
                assert_eq!(x.shift_by(k).at(i), x.at(i + k));
            }
        }
    }

    #[test]
    fn first_difference_finds_disagreement() {
        assert_eq!(it("110").first_difference(&it("1")), Some(3));
        assert_eq!(it("10").first_difference(&it("1010")), None);
        assert_eq!(it("1|0").first_difference(&it("10")), Some(3));
    }
}
