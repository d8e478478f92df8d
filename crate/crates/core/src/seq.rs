use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::itinerary::Itinerary;
use crate::symbol::Symbol;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SeqKind {
    StarPeriodic,
    Periodic,
    Preperiodic,
}

/// A kneading sequence: `*`-periodic, periodic or preperiodic, starting
/// with `1` (except for `*̄` itself).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Seq(Itinerary);

impl Seq {
    /// The constant sequence `***…`.
    pub fn star_bar() -> Seq {
        Seq(Itinerary::constant(Symbol::Star))
    }

    /// Validates an arbitrary word as a kneading sequence.
    pub fn from_itinerary(it: Itinerary) -> Result<Seq> {
        if it.has_star() {
            let cycle = it.cycle();
            let stars = cycle.iter().filter(|&&s| s == Symbol::Star).count();
            if !it.is_periodic() || stars != 1 || cycle.last() != Some(&Symbol::Star) {
                return Err(Error::MultipleStars(it.to_string()));
            }
            if cycle.len() > 1 && cycle[0] != Symbol::One {
                return Err(Error::LeadingZero(it.to_string()));
            }
        } else if it.first() != Symbol::One {
            return Err(Error::LeadingZero(it.to_string()));
        }
        Ok(Seq(it))
    }

    /// Parses `[01]+` (periodic), `[01]+*` (`*`-periodic), `*`, or
    /// `[01]*|[01]+` (preperiod | period).
    pub fn parse(text: &str) -> Result<Seq> {
        let t = text.trim();
        let bad = |msg: &str| Error::Syntax(format!("{msg}: {t:?}"));
        let binary = |w: &str| -> Result<Vec<Symbol>> {
            w.chars()
                .map(|c| match c {
                    '0' => Ok(Symbol::Zero),
                    '1' => Ok(Symbol::One),
                    '*' => Err(Error::MultipleStars(t.to_string())),
                    _ => Err(bad("expected 0 or 1")),
                })
                .collect()
        };
        let it = if let Some((pre, per)) = t.split_once('|') {
            if per.contains('*') || pre.contains('*') {
                return Err(bad("stars are not allowed in a preperiodic sequence"));
            }
            let per = binary(per)?;
            if per.is_empty() {
                return Err(bad("empty period"));
            }
            Itinerary::new(binary(pre)?, per)
        } else if t == "*" {
            Itinerary::constant(Symbol::Star)
        } else {
            let (body, star) = match t.strip_suffix('*') {
                Some(body) => (body, true),
                None => (t, false),
            };
            if body.is_empty() {
                return Err(bad("empty sequence"));
            }
            if body.contains('*') {
                return Err(Error::MultipleStars(t.to_string()));
            }
            let mut word = binary(body)?;
            if star {
                word.push(Symbol::Star);
            }
            Itinerary::periodic(word)
        };
        Seq::from_itinerary(it)
    }

    pub fn kind(&self) -> SeqKind {
        if self.0.has_star() {
            SeqKind::StarPeriodic
        } else if self.0.is_periodic() {
            SeqKind::Periodic
        } else {
            SeqKind::Preperiodic
        }
    }

    pub fn is_star_periodic(&self) -> bool {
        self.kind() == SeqKind::StarPeriodic
    }

    pub fn is_star_bar(&self) -> bool {
        self.0.cycle() == [Symbol::Star]
    }

    pub fn is_periodic_binary(&self) -> bool {
        self.kind() == SeqKind::Periodic
    }

    pub fn is_preperiodic(&self) -> bool {
        self.kind() == SeqKind::Preperiodic
    }

    /// Membership in the parameter tree: `*`-periodic or non-periodic.
    pub fn in_parameter_tree(&self) -> bool {
        self.kind() != SeqKind::Periodic
    }

    pub fn period(&self) -> usize {
        self.0.period()
    }

    pub fn preperiod(&self) -> usize {
        self.0.preperiod()
    }

    pub fn at(&self, i: usize) -> Symbol {
        self.0.at(i)
    }

    pub fn itinerary(&self) -> &Itinerary {
        &self.0
    }

    pub fn into_itinerary(self) -> Itinerary {
        self.0
    }

    pub(crate) fn require_star_periodic(&self) -> Result<()> {
        if self.is_star_periodic() {
            Ok(())
        } else {
            Err(Error::NotStarPeriodic(self.to_string()))
        }
    }

    pub(crate) fn require_parameter_tree(&self) -> Result<()> {
        if self.in_parameter_tree() {
            Ok(())
        } else {
            Err(Error::NotInParameterTree(self.to_string()))
        }
    }
}

impl fmt::Display for Seq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for Seq {
    type Err = Error;

    fn from_str(s: &str) -> Result<Seq> {
        Seq::parse(s)
    }
}

impl Serialize for Seq {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl AsRef<Itinerary> for Seq {
    fn as_ref(&self) -> &Itinerary {
        &self.0
    }
}
