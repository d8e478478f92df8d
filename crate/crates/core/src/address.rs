//! The ρ-map, internal addresses, upper/lower completions and truncations.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::itinerary::Itinerary;
use crate::seq::Seq;
use crate::symbol::Symbol;

/// `1 → S₁ → S₂ → …`, possibly cut off at a bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InternalAddress {
    pub entries: Vec<usize>,
    /// Set when the orbit of 1 was still going when it passed the bound.
    pub truncated: bool,
}

impl InternalAddress {
    pub fn contains(&self, n: usize) -> bool {
        self.entries.binary_search(&n).is_ok()
    }

    pub fn last(&self) -> usize {
        *self.entries.last().expect("addresses start with 1")
    }
}

impl fmt::Display for InternalAddress {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        write!(f, "{}", parts.join("->"))?;
        if self.truncated {
            write!(f, "->...")?;
        }
        Ok(())
    }
}

/// `inf{k > n : w_k ≠ w_{k-n}}` on an arbitrary word; a star only matches a
/// star. `None` stands for infinity.
pub(crate) fn rho_word(w: &Itinerary, n: usize) -> Option<usize> {
    w.shift_by(n).first_difference(w).map(|j| j + n)
}

/// The ρ-map of a star-free kneading sequence.
pub fn rho(nu: &Seq, n: usize) -> Result<Option<usize>> {
    if nu.is_star_periodic() {
        return Err(Error::HasStar(nu.to_string()));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("rho is defined for n >= 1".into()));
    }
    Ok(rho_word(nu.itinerary(), n))
}

/// Entries of the orbit of 1 under ρ, at most up to `bound`. For a
/// `*`-periodic sequence of period n the star guarantees ρ(k) ≤ n for k < n,
/// so the address always ends with n.
pub fn internal_address(nu: &Seq, bound: usize) -> InternalAddress {
    address_of_word(nu.itinerary(), bound)
}

pub(crate) fn address_of_word(w: &Itinerary, bound: usize) -> InternalAddress {
    let mut entries = Vec::new();
    let mut s = 1;
    loop {
        if s > bound {
            return InternalAddress { entries, truncated: true };
        }
        entries.push(s);
        match rho_word(w, s) {
            Some(next) => s = next,
            None => return InternalAddress { entries, truncated: false },
        }
    }
}

/// True iff `n` is an entry of the internal address of the star-free word `w`.
pub(crate) fn address_contains(w: &Itinerary, n: usize) -> bool {
    address_of_word(w, n).contains(n)
}

fn completions(nu: &Seq) -> (Seq, Seq) {
    let zero = Seq::from_itinerary(nu.itinerary().replace_star(Symbol::Zero))
        .expect("completion of a *-periodic sequence starts with 1");
    let one = Seq::from_itinerary(nu.itinerary().replace_star(Symbol::One))
        .expect("completion of a *-periodic sequence starts with 1");
    (zero, one)
}

/// Both completions `(A(ν), Ā(ν))` of a `*`-periodic ν of period > 1.
pub fn upper_lower(nu: &Seq) -> Result<(Seq, Seq)> {
    nu.require_star_periodic()?;
    if nu.is_star_bar() {
        return Err(Error::InvalidArgument("*̄ has no lower sequence".into()));
    }
    let n = nu.period();
    let (zero, one) = completions(nu);
    let z = address_contains(zero.itinerary(), n);
    let o = address_contains(one.itinerary(), n);
    match (z, o) {
        (true, false) => Ok((zero, one)),
        (false, true) => Ok((one, zero)),
        _ => Err(Error::Invariant(format!("exactly one completion of {nu} should contain {n} in its address"))),
    }
}

/// The upper sequence `A(ν)`; `A(*̄) = 1̄`.
pub fn upper(nu: &Seq) -> Result<Seq> {
    nu.require_star_periodic()?;
    if nu.is_star_bar() {
        return Ok(Seq::from_itinerary(Itinerary::constant(Symbol::One)).unwrap());
    }
    Ok(upper_lower(nu)?.0)
}

/// The lower sequence `Ā(ν)`; undefined for `*̄`.
pub fn lower(nu: &Seq) -> Result<Seq> {
    Ok(upper_lower(nu)?.1)
}

/// The `*`-periodic sequence of period `s` agreeing with `nu` on its first
/// `s - 1` symbols.
pub(crate) fn star_cut(nu: &Itinerary, s: usize) -> Seq {
    let mut word = nu.word(s - 1);
    word.push(Symbol::Star);
    Seq::from_itinerary(Itinerary::periodic(word)).expect("cut of a kneading sequence")
}

/// The truncated sequence `ν^k` for the 1-indexed address entry `k`.
pub fn truncation(nu: &Seq, k: usize) -> Result<Seq> {
    if k == 0 {
        return Err(Error::OutOfRange { index: 0, len: 0 });
    }
    let entries = address_entries(nu.itinerary(), k);
    if k > entries.len() {
        return Err(Error::OutOfRange { index: k, len: entries.len() });
    }
    Ok(star_cut(nu.itinerary(), entries[k - 1]))
}

/// The first `count` entries of the address (fewer if it is finite).
pub(crate) fn address_entries(w: &Itinerary, count: usize) -> Vec<usize> {
    let mut entries = Vec::new();
    let mut s = 1;
    while entries.len() < count {
        entries.push(s);
        match rho_word(w, s) {
            Some(next) => s = next,
            None => break,
        }
    }
    entries
}

/// Truncations `ν^k` for every address entry `S_k ≤ bound`.
pub fn truncations(nu: &Seq, bound: usize) -> Vec<Seq> {
    internal_address(nu, bound).entries.iter().map(|&s| star_cut(nu.itinerary(), s)).collect()
}

/// Rebuilds the `*`-periodic sequence with the given finite internal
/// address: each step keeps the upper completion of the previous level up
/// to the next entry. Fails when no sequence has exactly this address.
pub fn from_internal_address(entries: &[usize]) -> Result<Seq> {
    if entries.first() != Some(&1) || entries.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument(format!(
            "an internal address starts with 1 and strictly increases: {entries:?}"
        )));
    }
    let mut nu = Seq::star_bar();
    for &s in &entries[1..] {
        let a = upper(&nu)?;
        nu = star_cut(a.itinerary(), s);
    }
    let check = internal_address(&nu, *entries.last().unwrap());
    if check.entries != entries {
        return Err(Error::InvalidArgument(format!("no kneading sequence has internal address {entries:?}")));
    }
    Ok(nu)
}
