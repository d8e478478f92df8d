//! Kneading sequences of external angles under angle doubling.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::itinerary::{gcd, Itinerary};
use crate::seq::Seq;
use crate::symbol::Symbol;

/// The kneading sequence generated by `θ = numerator / denominator`.
///
/// The circle is cut at `θ/2` and `(θ+1)/2`; the orbit `2^k θ` reads `1` on
/// the open arc containing θ, `0` on the other one, and `*` on the cut
/// points. `θ = 0` gives `*̄`.
pub fn angle_to_kneading(numerator: u64, denominator: u64) -> Result<Seq> {
    if denominator == 0 || numerator >= denominator {
        return Err(Error::InvalidArgument(format!("angle {numerator}/{denominator} is not in [0,1)")));
    }
    if numerator == 0 {
        return Ok(Seq::star_bar());
    }
    let g = gcd(numerator as usize, denominator as usize) as u64;
    let (p, q) = (numerator / g, denominator / g);
    // Work on the scale 2q: the orbit point x/q sits at 2x, the cuts at p and p+q.
    let symbol = |x: u64| {
        let v = 2 * x;
        if v == p || v == p + q {
            Symbol::Star
        } else if p < v && v < p + q {
            Symbol::One
        } else {
            Symbol::Zero
        }
    };
    let mut seen: HashMap<u64, usize> = HashMap::new();
    let mut word = Vec::new();
    let mut x = p;
    while !seen.contains_key(&x) {
        seen.insert(x, word.len());
        word.push(symbol(x));
        x = 2 * x % q;
    }
    let start = seen[&x];
    let cycle = word.split_off(start);
    Seq::from_itinerary(Itinerary::new(word, cycle))
}

/// Exact period of `p / (2^n - 1)` under doubling (a divisor of n).
pub fn doubling_period(p: u64, n: u32) -> u32 {
    let q = (1u64 << n) - 1;
    let mut x = p % q;
    for k in 1..=n {
        x = 2 * x % q;
        if x == p % q {
            return k;
        }
    }
    n
}
