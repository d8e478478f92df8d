//! Sequence constructions: `A⁻¹`, forward and backward bifurcation,
//! primitivity and enumeration of `*`-periodic sequences.

use crate::address::{lower, upper, upper_lower};
use crate::error::{Error, Result};
use crate::itinerary::Itinerary;
use crate::seq::Seq;
use crate::symbol::Symbol;

fn require_periodic_binary(tau: &Itinerary) -> Result<()> {
    if tau.has_star() || !tau.is_periodic() {
        return Err(Error::NotPeriodic(tau.to_string()));
    }
    Ok(())
}

/// `A⁻¹_{ln}(τ)` without the "must start with 1" check: `1̄` with `l = 1`
/// gives `*̄`.
pub(crate) fn a_inverse(tau: &Itinerary, l: usize) -> Result<Seq> {
    require_periodic_binary(tau)?;
    if l == 0 {
        return Err(Error::InvalidArgument("multiplier must be positive".into()));
    }
    let n = tau.period();
    let mut word = tau.word(l * n);
    *word.last_mut().unwrap() = Symbol::Star;
    Seq::from_itinerary(Itinerary::periodic(word))
}

/// `A⁻¹_{ln}(τ)`: every `ln`-th entry of the periodic τ becomes a star.
pub fn star_periodize(tau: &Seq, l: usize) -> Result<Seq> {
    let it = tau.itinerary();
    require_periodic_binary(it)?;
    if l * it.period() == 1 {
        return Err(Error::InvalidArgument(format!(
            "star_periodize({tau}, {l}) would give *̄, which does not start with 1"
        )));
    }
    a_inverse(it, l)
}

/// `B_q(τ)` for a star-free periodic word: `(τ₁…τₙ)^{q-1} τ₁…τₙ₋₁ τ'ₙ`
/// repeated, with the last symbol flipped.
pub(crate) fn bifurcate_word(tau: &Itinerary, q: usize) -> Result<Itinerary> {
    require_periodic_binary(tau)?;
    if q == 0 {
        return Err(Error::InvalidArgument("q must be positive".into()));
    }
    let mut word = tau.word(q * tau.period());
    let last = word.last_mut().unwrap();
    *last = last.flip();
    Ok(Itinerary::periodic(word))
}

/// The q-th bifurcation sequence `B_q(μ)` of a periodic or `*`-periodic μ.
pub fn bifurcate(mu: &Seq, q: usize) -> Result<Seq> {
    if q == 0 {
        return Err(Error::InvalidArgument("q must be positive".into()));
    }
    if mu.is_star_periodic() {
        let a = upper(mu)?;
        Ok(repeat_then_star(a.itinerary(), mu, q))
    } else if mu.is_periodic_binary() {
        Seq::from_itinerary(bifurcate_word(mu.itinerary(), q)?)
    } else {
        Err(Error::NotPeriodic(mu.to_string()))
    }
}

/// `(c₁…cₙ)^{q-1} μ₁…μₙ₋₁ *` repeated, `n` the period of μ.
fn repeat_then_star(completion: &Itinerary, mu: &Seq, q: usize) -> Seq {
    let n = mu.period();
    let mut word = Vec::with_capacity(q * n);
    for _ in 1..q {
        word.extend(completion.word(n));
    }
    word.extend(mu.itinerary().word(n - 1));
    word.push(Symbol::Star);
    Seq::from_itinerary(Itinerary::periodic(word)).expect("bifurcation of a kneading sequence")
}

/// The q-th backward bifurcation sequence `B̄_q(μ)` of a primitive μ.
pub fn backward_bifurcate(mu: &Seq, q: usize) -> Result<Seq> {
    if q < 2 {
        return Err(Error::InvalidArgument("backward bifurcation needs q >= 2".into()));
    }
    if !is_primitive(mu)? {
        return Err(Error::NotPrimitive(mu.to_string()));
    }
    let a_bar = lower(mu)?;
    Ok(repeat_then_star(a_bar.itinerary(), mu, q))
}

/// μ is primitive when `Ā(μ)` has the same period as μ. `*̄` has no lower
/// sequence and is reported as not primitive.
pub fn is_primitive(mu: &Seq) -> Result<bool> {
    mu.require_star_periodic()?;
    if mu.is_star_bar() {
        return Ok(false);
    }
    let (_, a_bar) = upper_lower(mu)?;
    Ok(a_bar.period() == mu.period())
}

/// All `*`-periodic sequences of exact period `n`, sorted by their period word.
pub fn enumerate_star_periodic(n: usize) -> Vec<Seq> {
    match n {
        0 => Vec::new(),
        1 => vec![Seq::star_bar()],
        _ => {
            let free = n - 2;
            (0..1u64 << free)
                .map(|bits| {
                    let mut word = vec![Symbol::One];
                    for i in (0..free).rev() {
                        word.push(if bits >> i & 1 == 1 { Symbol::One } else { Symbol::Zero });
                    }
                    word.push(Symbol::Star);
                    Seq::from_itinerary(Itinerary::periodic(word)).unwrap()
                })
                .filter(|s| s.period() == n)
                .collect()
        }
    }
}

/// All `*`-periodic sequences with period `1..=max_period`, by period.
pub fn star_periodic_up_to(max_period: usize) -> Vec<Seq> {
    (1..=max_period).flat_map(enumerate_star_periodic).collect()
}
