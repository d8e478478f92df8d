//! Characteristic periodic points, their arm counts, and the chain of
//! characteristic points from the α fixed point towards `c₁`.

use serde::Serialize;

use crate::address::{address_contains, lower};
use crate::bifurcation::{a_inverse, bifurcate_word};
use crate::error::{Error, Result};
use crate::itinerary::Itinerary;
use crate::seq::Seq;
use crate::symbol::Symbol;
use crate::tree::{build_tree, germ_image, with_points, MarkedTree};
use crate::triod::between;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum PointType {
    TameInner,
    NontameInner,
    TameBranch,
    EvilBranch,
}

impl PointType {
    pub fn is_tame(self) -> bool {
        matches!(self, PointType::TameInner | PointType::TameBranch)
    }

    pub fn is_branch(self) -> bool {
        matches!(self, PointType::TameBranch | PointType::EvilBranch)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            PointType::TameInner => "TAME_INNER",
            PointType::NontameInner => "NONTAME_INNER",
            PointType::TameBranch => "TAME_BRANCH",
            PointType::EvilBranch => "EVIL_BRANCH",
        }
    }
}

/// A characteristic point `z₁` of a periodic orbit in a Hubbard tree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharPoint {
    pub itinerary: Seq,
    pub period: usize,
    /// Number of global arms at the point.
    pub q: usize,
    /// Period of the arm pointing to `c₁`: `q` when tame, `q - 1` otherwise.
    #[serde(rename = "Q")]
    pub arm_period: usize,
    pub point_type: PointType,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CharLookup {
    Found {
        point: CharPoint,
    },
    NotFound,
    /// Preperiodic ν whose endpoints share itineraries with the orbit; the
    /// characteristic point is not defined there.
    Undefined,
}

impl CharLookup {
    pub fn found(self) -> Option<CharPoint> {
        match self {
            CharLookup::Found { point } => Some(point),
            _ => None,
        }
    }
}

fn require_periodic_binary(tau: &Itinerary) -> Result<()> {
    if tau.has_star() || !tau.is_periodic() {
        return Err(Error::NotPeriodic(tau.to_string()));
    }
    Ok(())
}

/// True iff the periodic star-free word has its period in its internal address.
pub fn is_tame_itinerary(tau: &Seq) -> Result<bool> {
    require_periodic_binary(tau.itinerary())?;
    Ok(address_contains(tau.itinerary(), tau.period()))
}

/// The point `τ` separates `c₀` from `c₁`, and every other point of its
/// orbit lies on the `c₀` side.
pub(crate) fn is_characteristic_in(t: &MarkedTree, tau: &Itinerary) -> Result<bool> {
    if t.len() == 1 || tau.first() != Symbol::One {
        return Ok(false);
    }
    let nu = t.nu();
    let c0 = t.itinerary(t.c0());
    let c1 = t.itinerary(t.c1());
    if !between(c0, tau, c1, nu)? {
        return Ok(false);
    }
    for i in 1..tau.period() {
        if between(c0, tau, &tau.shift_by(i), nu)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The record for `τ` if the point with exactly this itinerary is
/// characteristic in `t`.
pub fn char_point_in(t: &MarkedTree, tau: &Itinerary) -> Result<Option<CharPoint>> {
    require_periodic_binary(tau)?;
    if !is_characteristic_in(t, tau)? {
        return Ok(None);
    }
    let q = t.index_of(tau).map_or(2, |v| t.vertices()[v].degree);
    let n = tau.period();
    let tame = address_contains(tau, n);
    let point_type = match (tame, q >= 3) {
        (true, false) => PointType::TameInner,
        (false, false) => PointType::NontameInner,
        (true, true) => PointType::TameBranch,
        (false, true) => PointType::EvilBranch,
    };
    Ok(Some(CharPoint {
        itinerary: Seq::from_itinerary(tau.clone())?,
        period: n,
        q,
        arm_period: if tame { q } else { q - 1 },
        point_type,
    }))
}

/// True when the orbit of `τ` runs into an endpoint itinerary of a
/// preperiodic tree.
fn hits_endpoint(t: &MarkedTree, tau: &Itinerary) -> bool {
    t.nu().is_preperiodic()
        && (0..tau.period()).any(|j| t.index_of(&tau.shift_by(j)).is_some_and(|v| t.vertices()[v].is_endpoint))
}

/// Finds the characteristic point of the orbit of `τ` in `t`, trying every
/// shift of `τ`.
pub fn locate_in(t: &MarkedTree, tau: &Itinerary) -> Result<CharLookup> {
    require_periodic_binary(tau)?;
    if hits_endpoint(t, tau) {
        return Ok(CharLookup::Undefined);
    }
    for j in 0..tau.period() {
        if let Some(point) = char_point_in(t, &tau.shift_by(j))? {
            return Ok(CharLookup::Found { point });
        }
    }
    Ok(CharLookup::NotFound)
}

pub fn locate_characteristic(nu: &Seq, tau: &Itinerary) -> Result<CharLookup> {
    locate_in(&build_tree(nu)?, tau)
}

/// The characteristic point with itinerary `Ā(ν)`.
pub fn find_dynamical_parent(nu: &Seq) -> Result<CharPoint> {
    let t = build_tree(nu)?;
    dynamical_parent_in(&t)
}

pub(crate) fn dynamical_parent_in(t: &MarkedTree) -> Result<CharPoint> {
    let a_bar = lower(t.nu())?;
    char_point_in(t, a_bar.itinerary())?.ok_or_else(|| {
        Error::Invariant(format!("no characteristic point with itinerary {a_bar} in the tree of {}", t.nu()))
    })
}

/// Characteristic points of the periodic orbits of branch vertices.
pub fn branch_char_points(t: &MarkedTree) -> Result<Vec<CharPoint>> {
    let mut out: Vec<CharPoint> = Vec::new();
    for v in t.vertices() {
        let x = &v.itinerary;
        if !v.is_branch || x.has_star() || !x.is_periodic() {
            continue;
        }
        if out.iter().any(|p| (0..x.period()).any(|j| x.shift_by(j) == *p.itinerary.itinerary())) {
            continue;
        }
        match locate_in(t, x)? {
            CharLookup::Found { point } => out.push(point),
            other => {
                return Err(Error::Invariant(format!(
                    "periodic branch orbit of {x} has no characteristic point: {other:?}"
                )))
            }
        }
    }
    Ok(out)
}

/// Evil characteristic points, ordered from `c₀` towards `c₁`.
pub fn evil_points(t: &MarkedTree) -> Result<Vec<CharPoint>> {
    let mut evil: Vec<CharPoint> =
        branch_char_points(t)?.into_iter().filter(|p| p.point_type == PointType::EvilBranch).collect();
    let c0 = t.itinerary(t.c0()).clone();
    let nu = t.nu().clone();
    // All characteristic points lie on [c₀, c₁], so betweenness is a total order.
    let mut err = None;
    evil.sort_by(|a, b| {
        if a == b {
            return std::cmp::Ordering::Equal;
        }
        match between(&c0, a.itinerary.itinerary(), b.itinerary.itinerary(), &nu) {
            Ok(true) => std::cmp::Ordering::Less,
            Ok(false) => std::cmp::Ordering::Greater,
            Err(e) => {
                err = Some(e);
                std::cmp::Ordering::Equal
            }
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(evil),
    }
}

/// A kneading sequence is admissible when its tree has no evil branch point.
pub fn is_admissible(nu: &Seq) -> Result<bool> {
    is_admissible_tree(&build_tree(nu)?)
}

pub fn is_admissible_tree(t: &MarkedTree) -> Result<bool> {
    Ok(evil_points(t)?.is_empty())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Successor {
    Char { point: CharPoint },
    CriticalValue,
}

/// The characteristic point closest to `τ` on `]τ, c₁]`.
pub fn successor(nu: &Seq, tau: &Seq) -> Result<Successor> {
    successor_in(&build_tree(nu)?, tau.itinerary())
}

pub fn successor_in(t: &MarkedTree, tau: &Itinerary) -> Result<Successor> {
    let cp = char_point_in(t, tau)?.ok_or_else(|| Error::NotCharacteristic(tau.to_string()))?;
    let nu = t.nu();
    let big_q = cp.arm_period;
    if nu.is_star_periodic() && a_inverse(tau, big_q)? == *nu {
        return Ok(Successor::CriticalValue);
    }
    let next = bifurcate_word(tau, big_q)?;
    let point = char_point_in(t, &next)?.ok_or_else(|| {
        Error::Invariant(format!("B_{big_q}({tau}) = {next} is not characteristic in the tree of {nu}"))
    })?;
    if !between(tau, &next, t.itinerary(t.c1()), nu)? {
        return Err(Error::Invariant(format!("{next} does not lie between {tau} and c1 in the tree of {nu}")));
    }
    Ok(Successor::Char { point })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Chain {
    pub points: Vec<CharPoint>,
    /// The last point's successor is the critical value itself.
    pub reaches_critical_value: bool,
}

/// Characteristic points from α towards `c₁`, each the successor of the
/// previous one, as long as their periods stay within `period_bound`.
pub fn characteristic_chain(nu: &Seq, period_bound: usize) -> Result<Chain> {
    chain_in(&build_tree(nu)?, period_bound)
}

pub fn chain_in(t: &MarkedTree, period_bound: usize) -> Result<Chain> {
    if t.nu().is_star_bar() {
        return Err(Error::InvalidArgument("the tree of *̄ has no characteristic points".into()));
    }
    let mut points = Vec::new();
    let mut cur = Itinerary::constant(Symbol::One);
    loop {
        if cur.period() > period_bound {
            return Ok(Chain { points, reaches_critical_value: false });
        }
        let cp = char_point_in(t, &cur)?
            .ok_or_else(|| Error::Invariant(format!("{cur} is not characteristic in the tree of {}", t.nu())))?;
        points.push(cp);
        match successor_in(t, &cur)? {
            Successor::CriticalValue => return Ok(Chain { points, reaches_critical_value: true }),
            Successor::Char { point } => cur = point.itinerary.into_itinerary(),
        }
    }
}

/// How the first return map permutes the arms at a characteristic point,
/// computed from the tree dynamics rather than from the internal address.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArmDynamics {
    pub arms: usize,
    /// Length of the cycle containing the arm towards `c₁`.
    pub c1_arm_period: usize,
    pub c0_arm_fixed: bool,
}

pub fn arm_dynamics(t: &MarkedTree, tau: &Itinerary) -> Result<ArmDynamics> {
    require_periodic_binary(tau)?;
    let n = tau.period();
    let orbit: Vec<Itinerary> = (0..n).map(|j| tau.shift_by(j)).collect();
    let big = with_points(t, &orbit)?;
    let z = big.index_of(tau).expect("added point");
    let arms: Vec<usize> = big.neighbors(z).to_vec();
    let first_step = |target: usize| big.path(z, target).map(|p| p[1]);
    let c0_arm = first_step(big.c0()).ok_or_else(|| Error::Invariant("tree is disconnected".into()))?;
    let c1_arm = first_step(big.c1()).ok_or_else(|| Error::Invariant("tree is disconnected".into()))?;
    let ret = |w: usize| -> Result<usize> {
        let (mut x, mut y) = (z, w);
        for _ in 0..n {
            (x, y) = germ_image(&big, x, y)
                .ok_or_else(|| Error::Invariant(format!("germ map undefined at {}", big.itinerary(x))))?;
        }
        if x != z {
            return Err(Error::Invariant(format!("{tau} does not return after {n} steps")));
        }
        Ok(y)
    };
    let mut c1_arm_period = 1;
    let mut w = ret(c1_arm)?;
    while w != c1_arm {
        w = ret(w)?;
        c1_arm_period += 1;
        if c1_arm_period > arms.len() {
            return Err(Error::Invariant("first return map does not permute the arms".into()));
        }
    }
    Ok(ArmDynamics { arms: arms.len(), c1_arm_period, c0_arm_fixed: ret(c0_arm)? == c0_arm })
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
    fn penrose_has_an_evil_branch_point() {
        let p = locate_characteristic(&s("10110*"), &it("101")).unwrap().found().unwrap();
        assert_eq!(p.point_type, PointType::EvilBranch);
        assert_eq!((p.period, p.q, p.arm_period), (3, 3, 2));
        assert!(!is_admissible(&s("10110*")).unwrap());
    }

    #[test]
    fn tameness_examples() {
        assert!(is_tame_itinerary(&s("1")).unwrap());
        assert!(!is_tame_itinerary(&s("101")).unwrap());
        assert!(is_tame_itinerary(&s("110")).unwrap());
        assert!(is_tame_itinerary(&s("10*")).is_err());
    }

    #[test]
    fn rabbit_has_no_characteristic_period_two_point() {
        assert_eq!(locate_characteristic(&s("11*"), &it("10")).unwrap(), CharLookup::NotFound);
    }

    #[test]
    fn dynamical_parents() {
        assert_eq!(find_dynamical_parent(&s("11*")).unwrap().itinerary, s("1"));
        assert_eq!(find_dynamical_parent(&s("1*")).unwrap().itinerary, s("1"));
        let p = find_dynamical_parent(&s("10110*")).unwrap();
        assert_eq!(p.itinerary, s("101"));
        assert_eq!(p.point_type, PointType::EvilBranch);
    }

    #[test]
    fn admissibility_examples() {
        assert!(is_admissible(&s("11*")).unwrap());
        assert!(is_admissible(&Seq::star_bar()).unwrap());
        assert!(is_admissible(&s("10*")).unwrap());
    }

    #[test]
    fn successor_examples() {
        assert_eq!(successor(&s("11*"), &s("1")).unwrap(), Successor::CriticalValue);
        assert_eq!(successor(&s("10110*"), &s("101")).unwrap(), Successor::CriticalValue);
        match successor(&s("11011*"), &s("1")).unwrap() {
            Successor::Char { point } => assert_eq!(point.itinerary, s("110")),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(successor(&s("11*"), &s("10")), Err(Error::NotCharacteristic(_))));
    }

    #[test]
    fn chain_examples() {
        let c = characteristic_chain(&s("11*"), 20).unwrap();
        assert_eq!(c.points.len(), 1);
        assert!(c.reaches_critical_value);
        let c = characteristic_chain(&s("11011*"), 20).unwrap();
        let its: Vec<String> = c.points.iter().map(|p| p.itinerary.to_string()).collect();
        assert_eq!(its, ["1", "110"]);
        assert!(c.reaches_critical_value);
    }

    #[test]
    fn arm_dynamics_matches_type_at_penrose_point() {
        let t = build_tree(&s("10110*")).unwrap();
        let d = arm_dynamics(&t, &it("101")).unwrap();
        assert_eq!(d, ArmDynamics { arms: 3, c1_arm_period: 2, c0_arm_fixed: true });
        let t = build_tree(&s("11*")).unwrap();
        let d = arm_dynamics(&t, &it("1")).unwrap();
        assert_eq!(d, ArmDynamics { arms: 3, c1_arm_period: 3, c0_arm_fixed: false });
    }
}
