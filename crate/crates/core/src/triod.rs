//! Betweenness and branch points of points given by their itineraries.
//!
//! Three points of a Hubbard tree span a triod. Iterating the triod forward,
//! a generating point that lands on the other side of `c₀` from the other two
//! is replaced by `c₀` (the triod is "chopped"); this keeps the branch point
//! and lets the whole triod be mapped homeomorphically. The branch point's
//! itinerary is the sequence of sides taken by the majority, which settles
//! either into a cycle or into the stop case where `c₀` is the middle point.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::itinerary::Itinerary;
use crate::seq::Seq;
use crate::symbol::Symbol;

/// `τ(c₀) = *ν`.
pub fn critical_itinerary(nu: &Seq) -> Itinerary {
    nu.itinerary().prepend(Symbol::Star)
}

/// Slots are numbered 0, 1, 2 in argument order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum TriodOutcome {
    /// One generating point lies between the other two.
    Degenerate { middle: usize },
    /// The three points span a genuine triod around this branch point.
    Branch { itinerary: Itinerary },
    /// Some generating points are the same point.
    Coincident { slots: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TriodResult {
    pub outcome: TriodOutcome,
    pub steps_run: usize,
    /// `(step, slot)` for every chop.
    pub chop_log: Vec<(usize, usize)>,
}

/// Checks that every star in `x` is followed by the kneading sequence.
pub fn is_consistent(x: &Itinerary, nu: &Seq) -> bool {
    (1..=x.orbit_len()).filter(|&i| x.at(i) == Symbol::Star).all(|i| x.shift_by(i) == *nu.itinerary())
}

/// Interned shifts of the words taking part in one triod.
struct States {
    words: Vec<Itinerary>,
    ids: HashMap<Itinerary, u32>,
    next: Vec<Option<u32>>,
}

impl States {
    fn new() -> States {
        States { words: Vec::new(), ids: HashMap::new(), next: Vec::new() }
    }

    fn intern(&mut self, w: Itinerary) -> u32 {
        if let Some(&id) = self.ids.get(&w) {
            return id;
        }
        let id = self.words.len() as u32;
        self.ids.insert(w.clone(), id);
        self.words.push(w);
        self.next.push(None);
        id
    }

    fn symbol(&self, id: u32) -> Symbol {
        self.words[id as usize].first()
    }

    fn shift(&mut self, id: u32) -> u32 {
        if let Some(n) = self.next[id as usize] {
            return n;
        }
        let w = self.words[id as usize].shift();
        let n = self.intern(w);
        self.next[id as usize] = Some(n);
        n
    }
}

/// A step budget that is always enough for consistent inputs: the state
/// space is the product of the three slots' reachable shifts.
pub fn default_step_budget(inputs: &[&Itinerary], nu: &Seq) -> usize {
    let per_slot: usize = inputs.iter().map(|x| x.orbit_len()).max().unwrap_or(1) + nu.itinerary().orbit_len() + 1;
    per_slot.pow(3) + 1
}

/// Runs the triod algorithm on `[s, t, u]` in the tree of `nu`.
pub fn triod(s: &Itinerary, t: &Itinerary, u: &Itinerary, nu: &Seq, max_steps: usize) -> Result<TriodResult> {
    let inputs = [s, t, u];
    for x in inputs {
        if !is_consistent(x, nu) {
            return Err(Error::Inconsistent(x.to_string()));
        }
    }
    let mut same = Vec::new();
    for i in 0..3 {
        for j in i + 1..3 {
            if inputs[i] == inputs[j] {
                same.push(i);
                same.push(j);
            }
        }
    }
    if !same.is_empty() {
        same.sort_unstable();
        same.dedup();
        return Ok(TriodResult {
            outcome: TriodOutcome::Coincident { slots: same },
            steps_run: 0,
            chop_log: Vec::new(),
        });
    }

    let mut st = States::new();
    let c1 = st.intern(nu.itinerary().clone());
    let mut cur = [st.intern(s.clone()), st.intern(t.clone()), st.intern(u.clone())];
    let mut majority: Vec<Symbol> = Vec::new();
    let mut seen: HashMap<[u32; 3], usize> = HashMap::new();
    let mut chop_log = Vec::new();
    let mut steps = 0;

    let median = loop {
        if let Some(&start) = seen.get(&cur) {
            let cycle = majority.split_off(start);
            break Itinerary::new(majority, cycle);
        }
        seen.insert(cur, majority.len());
        if steps >= max_steps {
            return Err(Error::StepLimit(max_steps));
        }
        if let Some(i) = (0..3).find(|&i| cur[i] == cur[(i + 1) % 3]) {
            // Two slots have reached the same point, which is then the middle.
            break st.words[cur[i] as usize].prepend_word(&majority);
        }
        let sym = [st.symbol(cur[0]), st.symbol(cur[1]), st.symbol(cur[2])];
        let stars: Vec<usize> = (0..3).filter(|&i| sym[i] == Symbol::Star).collect();
        match stars.len() {
            0 => {
                let maj = if sym[0] == sym[1] || sym[0] == sym[2] { sym[0] } else { sym[1] };
                majority.push(maj);
                for i in 0..3 {
                    if sym[i] == maj {
                        cur[i] = st.shift(cur[i]);
                    } else {
                        cur[i] = c1;
                        chop_log.push((steps, i));
                    }
                }
            }
            1 => {
                let k = stars[0];
                let (a, b) = ((k + 1) % 3, (k + 2) % 3);
                if sym[a] != sym[b] {
                    // Stop case: c₀ separates the other two points.
                    break st.words[cur[k] as usize].prepend_word(&majority);
                }
                majority.push(sym[a]);
                for c in cur.iter_mut() {
                    *c = st.shift(*c);
                }
            }
            // Two slots at c₀ would be equal states, caught above.
            _ => unreachable!("distinct states cannot both be c0"),
        }
        steps += 1;
    };

    let outcome = match inputs.iter().position(|x| **x == median) {
        Some(k) => TriodOutcome::Degenerate { middle: k },
        None => TriodOutcome::Branch { itinerary: median },
    };
    Ok(TriodResult { outcome, steps_run: steps, chop_log })
}

/// [`triod`] with a budget that always suffices for consistent inputs.
pub fn triod_auto(s: &Itinerary, t: &Itinerary, u: &Itinerary, nu: &Seq) -> Result<TriodResult> {
    let budget = default_step_budget(&[s, t, u], nu);
    triod(s, t, u, nu, budget)
}

/// The slot of the point lying between the other two, or `None` when the
/// three points span a genuine triod.
pub fn middle(x: &Itinerary, y: &Itinerary, z: &Itinerary, nu: &Seq) -> Result<Option<usize>> {
    match triod_auto(x, y, z, nu)?.outcome {
        TriodOutcome::Degenerate { middle } => Ok(Some(middle)),
        TriodOutcome::Branch { .. } => Ok(None),
        TriodOutcome::Coincident { slots } => {
            Err(Error::InvalidArgument(format!("coincident triod points in slots {slots:?}")))
        }
    }
}

/// The median of three points: one of them, or their branch point.
pub fn median(x: &Itinerary, y: &Itinerary, z: &Itinerary, nu: &Seq) -> Result<Itinerary> {
    Ok(match triod_auto(x, y, z, nu)?.outcome {
        TriodOutcome::Degenerate { middle } => [x, y, z][middle].clone(),
        TriodOutcome::Branch { itinerary } => itinerary,
        TriodOutcome::Coincident { slots } => [x, y, z][slots[0]].clone(),
    })
}

/// True iff `y` lies strictly between `x` and `z`.
pub fn between(x: &Itinerary, y: &Itinerary, z: &Itinerary, nu: &Seq) -> Result<bool> {
    Ok(matches!(triod_auto(x, y, z, nu)?.outcome, TriodOutcome::Degenerate { middle: 1 }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(t: &str) -> Seq {
        Seq::parse(t).unwrap()
    }

    fn it(t: &str) -> Itinerary {
        Itinerary::parse(t).unwrap()
    }

    #[test]
    fn critical_itinerary_examples() {
        assert_eq!(critical_itinerary(&s("11*")), it("*11"));
        assert_eq!(critical_itinerary(&s("*")), it("*"));
        assert_eq!(critical_itinerary(&s("1|10")), it("*1|10"));
    }

    #[test]
    fn rabbit_orbit_spans_a_triod_at_alpha() {
        let nu = s("11*");
        let c1 = nu.itinerary().clone();
        let r = triod_auto(&c1, &c1.shift(), &c1.shift_by(2), &nu).unwrap();
        assert_eq!(r.outcome, TriodOutcome::Branch { itinerary: it("1") });
    }

    #[test]
    fn airplane_orbit_is_an_arc_with_c0_in_the_middle() {
        let nu = s("10*");
        let c1 = nu.itinerary().clone();
        let r = triod_auto(&c1, &c1.shift(), &c1.shift_by(2), &nu).unwrap();
        assert_eq!(r.outcome, TriodOutcome::Degenerate { middle: 2 });
    }

    #[test]
    fn duplicate_inputs_are_coincident() {
        let nu = s("11*");
        let x = it("110");
        let r = triod_auto(&x, &x, &it("1"), &nu).unwrap();
        assert_eq!(r.outcome, TriodOutcome::Coincident { slots: vec![0, 1] });
        assert!(middle(&x, &x, &it("1"), &nu).is_err());
    }

    #[test]
    fn inconsistent_star_is_rejected() {
        let nu = s("11*");
        let bad = it("*0");
        assert!(matches!(triod_auto(&bad, &it("1"), &it("110"), &nu), Err(Error::Inconsistent(_))));
    }
}
