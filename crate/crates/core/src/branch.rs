//! Where the arcs `[*̄, ν]` and `[*̄, ν̃]` of two kneading sequences part.
//!
//! For incomparable `*`-periodic ν, ν̃ the computation follows the tree of one
//! of them, say T. A point `p` with itinerary `A(ν̃)` is placed in (an
//! extension of) T so that `c₁ ∉ [c₀, p]`; the arcs `[c₀, c₁]` and `[c₀, p]`
//! share `[c₀, b]`. The answer is read off the characteristic point `a`
//! closest to `b` on `[c₀, b[`, or off `b` itself when characteristic points
//! accumulate there.

use serde::Serialize;

use crate::address::{truncations, upper};
use crate::bifurcation::{a_inverse, is_primitive};
use crate::charpoint::{char_point_in, is_characteristic_in, successor_in, CharPoint, PointType, Successor};
use crate::error::{Error, Result};
use crate::itinerary::Itinerary;
use crate::order::{compare, OrderRelation};
use crate::seq::Seq;
use crate::symbol::Symbol;
use crate::tree::{build_tree, MarkedTree};
use crate::triod::{between, median};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum BranchCase {
    /// The arcs meet in `[*̄, μ]`, μ `*`-periodic.
    #[serde(rename = "I_STAR")]
    IStar,
    /// The arcs meet in `[*̄, μ]`, μ preperiodic.
    #[serde(rename = "I_PREPERIODIC")]
    IPreperiodic,
    /// The arcs meet in `[*̄, μ] \ {μ}`, μ primitive.
    #[serde(rename = "II_PRIMITIVE")]
    IiPrimitive,
}

impl BranchCase {
    pub fn as_str(self) -> &'static str {
        match self {
            BranchCase::IStar => "I_STAR",
            BranchCase::IPreperiodic => "I_PREPERIODIC",
            BranchCase::IiPrimitive => "II_PRIMITIVE",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum BranchKind {
    Comparable,
    BranchAt,
    Undetermined,
}

/// Arm data of the point at which the answer was read, in one tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SideData {
    pub q: usize,
    #[serde(rename = "Q")]
    pub arm_period: usize,
    #[serde(rename = "type")]
    pub point_type: PointType,
}

impl From<&CharPoint> for SideData {
    fn from(p: &CharPoint) -> SideData {
        SideData { q: p.q, arm_period: p.arm_period, point_type: p.point_type }
    }
}

/// `left` belongs to the first argument, `right` to the second.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub left: Option<SideData>,
    pub right: Option<SideData>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BranchResult {
    pub kind: BranchKind,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "ser_relation")]
    pub relation: Option<OrderRelation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<Seq>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub case: Option<BranchCase>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub bound: usize,
}

fn ser_relation<S: serde::Serializer>(r: &Option<OrderRelation>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(r.as_str()),
        None => s.serialize_none(),
    }
}

impl BranchResult {
    fn comparable(relation: OrderRelation, bound: usize) -> BranchResult {
        BranchResult {
            kind: BranchKind::Comparable,
            relation: Some(relation),
            mu: None,
            case: None,
            witness: None,
            bound,
        }
    }

    fn at(mu: Seq, case: BranchCase, witness: Witness, bound: usize) -> BranchResult {
        BranchResult {
            kind: BranchKind::BranchAt,
            relation: None,
            mu: Some(mu),
            case: Some(case),
            witness: Some(witness),
            bound,
        }
    }

    fn undetermined(bound: usize) -> BranchResult {
        BranchResult { kind: BranchKind::Undetermined, relation: None, mu: None, case: None, witness: None, bound }
    }

    /// Same outcome, ignoring witness and bound.
    fn same_outcome(&self, other: &BranchResult) -> bool {
        self.kind == other.kind && self.relation == other.relation && self.mu == other.mu && self.case == other.case
    }
}

/// Periodic words of exact period `m` starting with 1.
fn periodic_words(m: usize) -> impl Iterator<Item = Itinerary> {
    (0..1u64 << (m - 1)).filter_map(move |bits| {
        let mut word = vec![Symbol::One];
        for i in (0..m - 1).rev() {
            word.push(if bits >> i & 1 == 1 { Symbol::One } else { Symbol::Zero });
        }
        let it = Itinerary::periodic(word);
        (it.period() == m).then_some(it)
    })
}

/// Largest period of the words scanned when looking for the characteristic
/// point closest to `b`; the successor walk covers higher periods.
const SCAN_CAP: usize = 14;

/// Where the arcs of ν and ν̃ part. Preperiodic inputs are replaced by their
/// truncations with address entries up to `bound`; the answer is reported
/// once it is the same for the last three truncation levels.
pub fn branch(nu: &Seq, nu_t: &Seq, bound: usize) -> Result<BranchResult> {
    nu.require_parameter_tree()?;
    nu_t.require_parameter_tree()?;
    if nu.is_star_periodic() && nu_t.is_star_periodic() {
        return branch_star(nu, nu_t, bound);
    }
    if nu == nu_t {
        return Ok(BranchResult::comparable(OrderRelation::Equal, bound));
    }
    let levels = |x: &Seq| if x.is_star_periodic() { vec![x.clone()] } else { truncations(x, bound) };
    let (ls, lt) = (levels(nu), levels(nu_t));
    let depth = ls.len().max(lt.len());
    let mut results: Vec<BranchResult> = Vec::new();
    for k in 0..depth {
        let a = &ls[k.min(ls.len() - 1)];
        let b = &lt[k.min(lt.len() - 1)];
        results.push(branch_star(a, b, bound)?);
    }
    let tail = &results[results.len().saturating_sub(3)..];
    if tail.len() == 3 && tail[0].kind == BranchKind::BranchAt && tail.iter().all(|r| r.same_outcome(&tail[0])) {
        let mut r = tail[2].clone();
        r.bound = bound;
        return Ok(r);
    }
    Ok(BranchResult::undetermined(bound))
}

fn branch_star(nu: &Seq, nu_t: &Seq, bound: usize) -> Result<BranchResult> {
    let rel = compare(nu, nu_t, bound)?;
    if rel != OrderRelation::Incomparable {
        return Ok(BranchResult::comparable(rel, bound));
    }
    let t1 = build_tree(nu)?;
    let t2 = build_tree(nu_t)?;
    let p1 = upper(nu_t)?.into_itinerary();
    // At most one of the two trees has c₁ between c₀ and the other's upper point.
    let swapped = between(t1.itinerary(t1.c0()), t1.itinerary(t1.c1()), &p1, nu)?;
    let (t, tt, p) = if swapped { (&t2, &t1, upper(nu)?.into_itinerary()) } else { (&t1, &t2, p1) };
    let c0 = t.itinerary(t.c0()).clone();
    let c1 = t.itinerary(t.c1()).clone();
    if swapped && between(&c0, &c1, &p, t.nu())? {
        return Err(Error::Invariant(format!("c1 lies before the upper point in both trees of {nu}, {nu_t}")));
    }
    let b = median(&c0, &c1, &p, t.nu())?;
    let orient = |mine: Option<SideData>, theirs: Option<SideData>| {
        if swapped {
            Witness { left: theirs, right: mine }
        } else {
            Witness { left: mine, right: theirs }
        }
    };

    // Successors are closest points, so walking from any start below b visits
    // every later characteristic point. A short scan only loses when a cascade
    // accumulates before b; that comes back undetermined and is rescanned.
    let short = bound.min(SCAN_CAP).min(nu.period().max(nu_t.period()));
    let full = bound.min(SCAN_CAP);
    let r = read_branch(t, tt, &c0, &b, short, bound, &orient)?;
    if r.kind == BranchKind::Undetermined && short < full {
        return read_branch(t, tt, &c0, &b, full, bound, &orient);
    }
    Ok(r)
}

/// Reads the answer off the last characteristic point of `t` before `b`.
fn read_branch(
    t: &MarkedTree,
    tt: &MarkedTree,
    c0: &Itinerary,
    b: &Itinerary,
    cap: usize,
    bound: usize,
    orient: &dyn Fn(Option<SideData>, Option<SideData>) -> Witness,
) -> Result<BranchResult> {
    let Some(mut a) = closest_below(t, c0, b, cap)? else {
        let alpha = Itinerary::constant(Symbol::One);
        let w = orient(
            char_point_in(t, &alpha)?.as_ref().map(SideData::from),
            char_point_in(tt, &alpha)?.as_ref().map(SideData::from),
        );
        return Ok(BranchResult::at(Seq::star_bar(), BranchCase::IStar, w, bound));
    };

    // Walk towards b; `a` is the last characteristic point before b once its
    // successor is not strictly between a and b.
    let walk_limit = 4 * bound.max(1);
    loop {
        match successor_in(t, &a)? {
            Successor::Char { point } if between(&a, point.itinerary.itinerary(), b, t.nu())? => {
                if point.period > walk_limit {
                    return limit_case(t, tt, b, point.itinerary.itinerary(), bound, orient);
                }
                a = point.itinerary.into_itinerary();
            }
            _ => break,
        }
    }

    let cp = char_point_in(t, &a)?.ok_or_else(|| Error::Invariant(format!("{a} lost its characteristic point")))?;
    let cpt = char_point_in(tt, &a)?
        .ok_or_else(|| Error::Invariant(format!("characteristic point {a} is not forced into the other tree")))?;
    if cp.point_type.is_tame() != cpt.point_type.is_tame() {
        return Err(Error::Invariant(format!("{a} has different types in the two trees")));
    }
    let w = orient(Some(SideData::from(&cp)), Some(SideData::from(&cpt)));
    if cp.q != cpt.q {
        let mu = a_inverse(&a, 1)?;
        let case = if cp.point_type.is_tame() { BranchCase::IStar } else { BranchCase::IiPrimitive };
        return Ok(BranchResult::at(mu, case, w, bound));
    }
    if cp.arm_period != cpt.arm_period {
        return Err(Error::Invariant(format!("{a} has equal arm counts but different arm periods")));
    }
    Ok(BranchResult::at(a_inverse(&a, cp.arm_period)?, BranchCase::IStar, w, bound))
}

/// The characteristic point of period at most `max_period` on `]c₀, b[`
/// closest to `b`.
fn closest_below(t: &MarkedTree, c0: &Itinerary, b: &Itinerary, max_period: usize) -> Result<Option<Itinerary>> {
    let nu = t.nu();
    let mut best: Option<Itinerary> = None;
    for m in 1..=max_period {
        for w in periodic_words(m) {
            if w == *b || !between(c0, &w, b, nu)? || !is_characteristic_in(t, &w)? {
                continue;
            }
            if best.as_ref().map_or(Ok(true), |x| between(c0, x, &w, nu))? {
                best = Some(w);
            }
        }
    }
    Ok(best)
}

/// Characteristic points accumulate on b. Only trusted when the last point
/// found agrees with `τ(b)` well beyond b's own preperiod and period.
fn limit_case(
    t: &MarkedTree,
    tt: &MarkedTree,
    b: &Itinerary,
    last: &Itinerary,
    bound: usize,
    orient: &dyn Fn(Option<SideData>, Option<SideData>) -> Witness,
) -> Result<BranchResult> {
    let agree = last.first_difference(b).map_or(usize::MAX, |d| d - 1);
    if b.has_star() || agree < 2 * b.orbit_len() {
        return Ok(BranchResult::undetermined(bound));
    }
    if b.is_periodic() {
        let Some(cp) = char_point_in(t, b)? else {
            return Ok(BranchResult::undetermined(bound));
        };
        if cp.point_type != PointType::EvilBranch {
            return Ok(BranchResult::undetermined(bound));
        }
        let mu = a_inverse(b, 1)?;
        if !is_primitive(&mu)? {
            return Err(Error::Invariant(format!("{mu} from an evil branch point is not primitive")));
        }
        let other = char_point_in(tt, b)?;
        let w = orient(Some(SideData::from(&cp)), other.as_ref().map(SideData::from));
        return Ok(BranchResult::at(mu, BranchCase::IiPrimitive, w, bound));
    }
    let mu = Seq::from_itinerary(b.clone())?;
    Ok(BranchResult::at(mu, BranchCase::IPreperiodic, orient(None, None), bound))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bifurcation::bifurcate;

    fn s(t: &str) -> Seq {
        Seq::parse(t).unwrap()
    }

    #[test]
    fn basilica_and_rabbit_part_at_star_bar() {
        let r = branch(&s("1*"), &s("11*"), 12).unwrap();
        assert_eq!(r.kind, BranchKind::BranchAt);
        assert_eq!(r.mu, Some(Seq::star_bar()));
        assert_eq!(r.case, Some(BranchCase::IStar));
    }

    #[test]
    fn penrose_and_airplane_doubling_part_at_the_airplane() {
        let other = bifurcate(&s("10*"), 2).unwrap();
        let r = branch(&s("10110*"), &other, 12).unwrap();
        assert_eq!(r.mu, Some(s("10*")));
        assert_eq!(r.case, Some(BranchCase::IiPrimitive));
    }

    #[test]
    fn equal_inputs_are_comparable() {
        let r = branch(&s("10*"), &s("10*"), 12).unwrap();
        assert_eq!(r.kind, BranchKind::Comparable);
        assert_eq!(r.relation, Some(OrderRelation::Equal));
    }

    #[test]
    fn periodic_words_have_exact_period() {
        assert_eq!(periodic_words(1).count(), 1);
        assert_eq!(periodic_words(2).count(), 1);
        assert_eq!(periodic_words(4).count(), 6);
    }
}
