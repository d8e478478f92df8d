//! The partial order on kneading sequences, combinatorial arcs and wakes.
//!
//! For `*`-periodic ν, ν̃ the order is exact: `ν < ν̃` iff the tree of ν̃ has a
//! characteristic point with itinerary `A(ν)`. A preperiodic sequence is
//! compared through its truncations `μ^k`, which only settles some questions
//! within a finite bound.

use serde::Serialize;

use crate::address::{truncations, upper};
use crate::bifurcation::{a_inverse, backward_bifurcate, bifurcate, is_primitive};
use crate::charpoint::{char_point_in, evil_points, CharPoint};
use crate::error::{Error, Result};
use crate::seq::Seq;
use crate::tree::{build_tree, MarkedTree};

/// Bound used by the wake predicates, which have no bound argument.
pub const DEFAULT_BOUND: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    True,
    False,
    Undetermined,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Verdict {
        if b {
            Verdict::True
        } else {
            Verdict::False
        }
    }

    pub fn is_true(self) -> bool {
        self == Verdict::True
    }

    /// `Err(Undetermined)` for an undecided verdict.
    pub fn decided(self, bound: usize) -> Result<bool> {
        match self {
            Verdict::True => Ok(true),
            Verdict::False => Ok(false),
            Verdict::Undetermined => Err(Error::Undetermined(bound)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "relation", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum OrderRelation {
    Less,
    Equal,
    Greater,
    Incomparable,
    Undetermined { bound: usize },
}

impl OrderRelation {
    pub fn as_str(self) -> &'static str {
        match self {
            OrderRelation::Less => "LESS",
            OrderRelation::Equal => "EQUAL",
            OrderRelation::Greater => "GREATER",
            OrderRelation::Incomparable => "INCOMPARABLE",
            OrderRelation::Undetermined { .. } => "UNDETERMINED",
        }
    }
}

/// `ν < ν̃` for `*`-periodic ν, given the tree of ν̃.
pub fn star_less_in(nu: &Seq, tree: &MarkedTree) -> Result<bool> {
    nu.require_star_periodic()?;
    if nu == tree.nu() {
        return Ok(false);
    }
    if nu.is_star_bar() {
        return Ok(true);
    }
    if tree.nu().is_star_bar() {
        return Ok(false);
    }
    Ok(char_point_in(tree, upper(nu)?.itinerary())?.is_some())
}

fn star_less(nu: &Seq, nu_t: &Seq) -> Result<bool> {
    if nu == nu_t || nu.is_star_bar() || nu_t.is_star_bar() {
        return Ok(nu != nu_t && nu.is_star_bar());
    }
    star_less_in(nu, &build_tree(nu_t)?)
}

/// `ν < ν̃`. Exact for `*`-periodic arguments; preperiodic arguments are
/// compared through their truncations with address entries up to `bound`.
pub fn less_than(nu: &Seq, nu_t: &Seq, bound: usize) -> Result<Verdict> {
    nu.require_parameter_tree()?;
    nu_t.require_parameter_tree()?;
    if nu == nu_t {
        return Ok(Verdict::False);
    }
    if nu.is_star_bar() {
        return Ok(Verdict::True);
    }
    if nu_t.is_star_bar() {
        return Ok(Verdict::False);
    }
    match (nu.is_star_periodic(), nu_t.is_star_periodic()) {
        (true, true) => Ok(Verdict::from_bool(star_less(nu, nu_t)?)),
        // ν < μ iff ν ≤ μ^k for some k.
        (true, false) => {
            for mk in truncations(nu_t, bound) {
                if mk == *nu || star_less(nu, &mk)? {
                    return Ok(Verdict::True);
                }
            }
            Ok(Verdict::Undetermined)
        }
        // μ < ν̃ iff μ^k < ν̃ for all k.
        (false, true) => {
            for mk in truncations(nu, bound) {
                if !star_less(&mk, nu_t)? {
                    return Ok(Verdict::False);
                }
            }
            Ok(Verdict::Undetermined)
        }
        // μ < μ̃ would need μ^k < x for all k and some *-periodic x < μ̃,
        // which truncations cannot certify.
        (false, false) => Ok(Verdict::Undetermined),
    }
}

pub fn leq(nu: &Seq, nu_t: &Seq, bound: usize) -> Result<Verdict> {
    if nu == nu_t {
        return Ok(Verdict::True);
    }
    less_than(nu, nu_t, bound)
}

pub fn compare(nu: &Seq, nu_t: &Seq, bound: usize) -> Result<OrderRelation> {
    if nu == nu_t {
        return Ok(OrderRelation::Equal);
    }
    let lt = less_than(nu, nu_t, bound)?;
    let gt = less_than(nu_t, nu, bound)?;
    Ok(match (lt, gt) {
        (Verdict::True, Verdict::True) => {
            return Err(Error::Invariant(format!("{nu} < {nu_t} and {nu_t} < {nu}")));
        }
        (Verdict::True, _) => OrderRelation::Less,
        (_, Verdict::True) => OrderRelation::Greater,
        (Verdict::False, Verdict::False) => OrderRelation::Incomparable,
        _ => OrderRelation::Undetermined { bound },
    })
}

/// `ν ≤ μ ≤ ν′`; requires `ν ≤ ν′`.
pub fn in_arc(mu: &Seq, nu: &Seq, nu_p: &Seq, bound: usize) -> Result<bool> {
    if !leq(nu, nu_p, bound)?.decided(bound)? {
        return Err(Error::Precondition(format!("{nu} is not below {nu_p}")));
    }
    Ok(leq(nu, mu, bound)?.decided(bound)? && leq(mu, nu_p, bound)?.decided(bound)?)
}

/// ν lies in the wake of μ: `μ ≤ ν`.
pub fn wake_contains(mu: &Seq, nu: &Seq) -> Result<bool> {
    mu.require_star_periodic()?;
    leq(mu, nu, DEFAULT_BOUND)?.decided(DEFAULT_BOUND)
}

/// `B_q(μ) ≤ ν`.
pub fn subwake_contains(mu: &Seq, q: usize, nu: &Seq) -> Result<bool> {
    mu.require_star_periodic()?;
    leq(&bifurcate(mu, q)?, nu, DEFAULT_BOUND)?.decided(DEFAULT_BOUND)
}

/// `B̄_q(μ) ≤ ν`; μ must be primitive.
pub fn nonadmissible_subwake_contains(mu: &Seq, q: usize, nu: &Seq) -> Result<bool> {
    leq(&backward_bifurcate(mu, q)?, nu, DEFAULT_BOUND)?.decided(DEFAULT_BOUND)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Direction {
    Forward,
    Backward,
}

/// The subwake of ν containing ν′: `B_q(ν) ≤ ν′` (forward) or, when ν′ is
/// not above ν, `B̄_q(ν) ≤ ν′` (backward).
pub fn find_subwake(nu: &Seq, nu_p: &Seq, bound: usize) -> Result<(Direction, usize)> {
    nu.require_star_periodic()?;
    if nu == nu_p {
        return Err(Error::Precondition("the two sequences are equal".into()));
    }
    let tree = build_tree(nu_p)?;
    let a = upper(nu)?;
    if let Some(cp) = char_point_in(&tree, a.itinerary())? {
        let q = cp.arm_period;
        if !leq(&bifurcate(nu, q)?, nu_p, bound)?.is_true() {
            return Err(Error::Invariant(format!("B_{q}({nu}) is not below {nu_p}")));
        }
        return Ok((Direction::Forward, q));
    }
    if !is_primitive(nu)? {
        return Err(Error::Precondition(format!("{nu_p} is not above {nu} and {nu} is not primitive")));
    }
    let a_bar = crate::address::lower(nu)?;
    let cp = char_point_in(&tree, a_bar.itinerary())?
        .ok_or_else(|| Error::Precondition(format!("{nu_p} lies in no forward or backward subwake of {nu}")))?;
    let q = cp.arm_period;
    if q < 2 {
        return Err(Error::Precondition(format!("{nu_p} lies in no backward subwake of {nu}")));
    }
    if !leq(&backward_bifurcate(nu, q)?, nu_p, bound)?.is_true() {
        return Err(Error::Invariant(format!("backward B_{q}({nu}) is not below {nu_p}")));
    }
    Ok((Direction::Backward, q))
}

/// The primitive admissible μ and `q` with `B̄_q(μ) ≤ ν`, read off the evil
/// characteristic point closest to `c₀`.
pub fn nonadmissible_root(nu: &Seq) -> Result<(Seq, usize, CharPoint)> {
    let tree = build_tree(nu)?;
    let evil = evil_points(&tree)?;
    let Some(point) = evil.into_iter().next() else {
        return Err(Error::Admissible(nu.to_string()));
    };
    let mu = a_inverse(point.itinerary.itinerary(), 1)?;
    Ok((mu, point.arm_period, point))
}
