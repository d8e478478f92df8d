//! Oracles that do not go through the library's own algorithms.
#![allow(dead_code)]

use std::cmp::Ordering;

use kneadlab_core::order::{leq, DEFAULT_BOUND};
use kneadlab_core::triod::median;
use kneadlab_core::{Itinerary, MarkedTree, Seq, Symbol};

pub fn seq(text: &str) -> Seq {
    Seq::parse(text).unwrap_or_else(|e| panic!("{text}: {e}"))
}

pub fn census(max_period: usize) -> Vec<Seq> {
    kneadlab_core::star_periodic_up_to(max_period)
}

fn star_word(word: Vec<Symbol>) -> Seq {
    Seq::from_itinerary(Itinerary::periodic(word)).unwrap()
}

// ---------------------------------------------------------------------------
// Real quadratic family.

fn critical_orbit_value(c: f64, n: usize) -> f64 {
    let mut x = 0.0;
    for _ in 0..n {
        x = x * x + c;
    }
    x
}

/// Real superattracting parameters of exact period `n ≥ 2`, with the
/// kneading sequence read off the signs of the orbit of `c`. Sorted by
/// decreasing `c`, so the sequences come out in increasing parameter order.
pub fn real_centers(n: usize) -> Vec<(f64, Seq)> {
    assert!(n >= 2);
    const GRID: usize = 1 << 20;
    let (lo, hi) = (-2.0f64, -0.75f64);
    let at = |i: usize| lo + (hi - lo) * i as f64 / GRID as f64;
    let mut out = Vec::new();
    let mut prev = critical_orbit_value(at(0), n);
    for i in 1..=GRID {
        let cur = critical_orbit_value(at(i), n);
        if prev.signum() != cur.signum() {
            let (mut a, mut b) = (at(i - 1), at(i));
            let fa = prev;
            for _ in 0..80 {
                let m = 0.5 * (a + b);
                if critical_orbit_value(m, n).signum() == fa.signum() {
                    a = m;
                } else {
                    b = m;
                }
            }
            let c = 0.5 * (a + b);
            if let Some(s) = real_kneading(c, n) {
                out.push((c, s));
            }
        }
        prev = cur;
    }
    out.sort_by(|x, y| y.0.partial_cmp(&x.0).unwrap());
    out
}

/// `None` if the orbit hits 0 before step `n` (a center of lower period).
fn real_kneading(c: f64, n: usize) -> Option<Seq> {
    let mut word = Vec::with_capacity(n);
    let mut x = c;
    for _ in 1..n {
        if x.abs() < 1e-9 {
            return None;
        }
        // c < 0, so the side of the critical value is the negative one.
        word.push(if x < 0.0 { Symbol::One } else { Symbol::Zero });
        x = x * x + c;
    }
    word.push(Symbol::Star);
    Some(star_word(word))
}

// ---------------------------------------------------------------------------
// Lavaurs' lamination of periodic angles.

/// `num / (2^period - 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Angle {
    pub num: u64,
    pub period: u32,
}

impl Angle {
    fn den(self) -> u64 {
        (1u64 << self.period) - 1
    }
}

impl Ord for Angle {
    fn cmp(&self, other: &Angle) -> Ordering {
        (self.num as u128 * other.den() as u128).cmp(&(other.num as u128 * self.den() as u128))
    }
}

impl PartialOrd for Angle {
    fn partial_cmp(&self, other: &Angle) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn exact_period(num: u64, n: u32) -> bool {
    let den = (1u64 << n) - 1;
    (1..n).all(|k| !n.is_multiple_of(k) || (num << k) % den != num)
}

/// A parameter leaf `(lo, hi)` with `lo < hi`, both of the given period.
#[derive(Clone, Copy, Debug)]
pub struct Leaf {
    pub lo: Angle,
    pub hi: Angle,
}

impl Leaf {
    pub fn period(&self) -> u32 {
        self.lo.period
    }

    fn separates(&self, x: Angle) -> bool {
        self.lo < x && x < self.hi
    }

    fn crosses(&self, other: &Leaf) -> bool {
        self.separates(other.lo) != self.separates(other.hi)
    }
}

/// Lavaurs' algorithm: periods in increasing order, and within a period the
/// smallest free angle is joined to the next free angle whose leaf crosses
/// nothing drawn so far.
pub fn lavaurs(max_period: u32) -> Vec<Leaf> {
    let mut leaves: Vec<Leaf> = Vec::new();
    for n in 2..=max_period {
        let den = (1u64 << n) - 1;
        let mut free: Vec<Angle> =
            (1..den).filter(|&p| exact_period(p, n)).map(|num| Angle { num, period: n }).collect();
        free.sort();
        while let Some(&lo) = free.first() {
            let j = (1..free.len())
                .find(|&j| {
                    let leaf = Leaf { lo, hi: free[j] };
                    leaves.iter().all(|l| !leaf.crosses(l))
                })
                .expect("every periodic angle gets a partner");
            let hi = free.remove(j);
            free.remove(0);
            leaves.push(Leaf { lo, hi });
        }
    }
    leaves
}

/// Kneading sequence of a periodic angle, by comparing the doubling orbit
/// with the two preimages of the angle on the scale `2(2^n - 1)`.
pub fn angle_kneading(a: Angle) -> Seq {
    let den = a.den();
    let (cut_lo, cut_hi) = (a.num, a.num + den);
    let mut word = Vec::new();
    let mut x = a.num;
    for _ in 0..a.period {
        let v = 2 * x;
        word.push(if v == cut_lo || v == cut_hi {
            Symbol::Star
        } else if cut_lo < v && v < cut_hi {
            Symbol::One
        } else {
            Symbol::Zero
        });
        x = (2 * x) % den;
    }
    star_word(word)
}

/// Every admissible `*`-periodic sequence of period `2..=max_period` with
/// the leaves of its roots. Several components (conjugates, and satellites
/// with different rotation numbers) can share a kneading sequence.
pub fn lavaurs_wakes(max_period: u32) -> Vec<(Seq, Vec<Leaf>)> {
    let mut out: Vec<(Seq, Vec<Leaf>)> = Vec::new();
    for leaf in lavaurs(max_period) {
        let s = angle_kneading(leaf.lo);
        assert_eq!(s, angle_kneading(leaf.hi), "both ends of a leaf share the kneading sequence");
        match out.iter_mut().find(|(t, _)| *t == s) {
            Some((_, leaves)) => leaves.push(leaf),
            None => out.push((s, vec![leaf])),
        }
    }
    out
}

/// `ν < ν′` read off the lamination: a leaf of ν′ sits under a leaf of ν.
pub fn lamination_less(a: &[Leaf], b: &[Leaf]) -> bool {
    a.iter().any(|x| b.iter().any(|y| x.separates(y.lo) && x.separates(y.hi)))
}

// ---------------------------------------------------------------------------
// Trees.

/// Four-point condition on the medians reported by the triod engine: the
/// four triples either share one median, or split as `ab | cd` with
/// `m(abc) = m(abd) = x`, `m(acd) = m(bcd) = y`, and `x` between `a`, `b`, `y`.
pub fn quartet_consistent(pts: [&Itinerary; 4], nu: &Seq) -> Result<(), String> {
    let [a, b, c, d] = pts;
    let m = |x: &Itinerary, y: &Itinerary, z: &Itinerary| median(x, y, z, nu).map_err(|e| e.to_string());
    let triples = [[a, b, c], [a, b, d], [a, c, d], [b, c, d]];
    let meds: Vec<Itinerary> = triples.iter().map(|t| m(t[0], t[1], t[2])).collect::<Result<_, _>>()?;
    let mut distinct = meds.clone();
    distinct.sort();
    distinct.dedup();
    match distinct.len() {
        1 => Ok(()),
        2 => {
            // Indices of the triples with the first median value.
            let first: Vec<usize> = (0..4).filter(|&i| meds[i] == distinct[0]).collect();
            if first.len() != 2 {
                return Err(format!("medians split 1:3: {meds:?}"));
            }
            let rest: Vec<usize> = (0..4).filter(|&i| meds[i] != distinct[0]).collect();
            // The pair on the side of a median is the pair shared by its two triples.
            let shared = |i: usize, j: usize| -> Vec<&Itinerary> {
                triples[i].iter().copied().filter(|p| triples[j].contains(p)).collect()
            };
            let (p, q) = (shared(first[0], first[1]), shared(rest[0], rest[1]));
            let (x, y) = (&distinct[0], &distinct[1]);
            if &m(p[0], p[1], y)? != x {
                return Err(format!("median({}, {}, {y}) is not {x}", p[0], p[1]));
            }
            if &m(q[0], q[1], x)? != y {
                return Err(format!("median({}, {}, {x}) is not {y}", q[0], q[1]));
            }
            Ok(())
        }
        _ => Err(format!("more than two distinct medians: {meds:?}")),
    }
}

pub fn quartets_consistent(t: &MarkedTree) -> Result<usize, String> {
    let pts: Vec<&Itinerary> = (0..t.len()).map(|v| t.itinerary(v)).collect();
    let n = pts.len();
    let mut count = 0;
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                for l in k + 1..n {
                    quartet_consistent([pts[i], pts[j], pts[k], pts[l]], t.nu())
                        .map_err(|e| format!("{}: {e}", t.nu()))?;
                    count += 1;
                }
            }
        }
    }
    Ok(count)
}

// ---------------------------------------------------------------------------
// Brute-force order facts.

pub fn le(a: &Seq, b: &Seq) -> bool {
    leq(a, b, DEFAULT_BOUND).unwrap().is_true()
}

/// Pairwise `≤` on a pool, computed once.
pub struct OrderTable {
    pub pool: Vec<Seq>,
    index: std::collections::HashMap<Seq, usize>,
    le: Vec<Vec<bool>>,
}

impl OrderTable {
    pub fn new(pool: Vec<Seq>) -> OrderTable {
        let le = pool.iter().map(|a| pool.iter().map(|b| le(a, b)).collect()).collect();
        let index = pool.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        OrderTable { pool, index, le }
    }

    pub fn le(&self, a: &Seq, b: &Seq) -> bool {
        match (self.index.get(a), self.index.get(b)) {
            (Some(&i), Some(&j)) => self.le[i][j],
            _ => le(a, b),
        }
    }

    /// `{μ ∈ pool : μ ≤ ν₁ and μ ≤ ν₂}`.
    pub fn common_lower_set(&self, a: &Seq, b: &Seq) -> Vec<&Seq> {
        self.pool.iter().filter(|m| self.le(m, a) && self.le(m, b)).collect()
    }

    /// The element above all others, if there is one.
    pub fn maximum<'a>(&self, set: &[&'a Seq]) -> Option<&'a Seq> {
        set.iter().copied().find(|m| set.iter().all(|x| self.le(x, m)))
    }
}

/// Checks one `branch` answer against the common lower set of the pair in
/// the pool. Returns the case name.
///
/// * comparable: the smaller input is the maximum of the common lower set;
/// * `I_STAR`: μ is that maximum;
/// * `II_PRIMITIVE`: μ is primitive, not in the set, and the set is `{μ′ < μ}`;
/// * `I_PREPERIODIC`: the set is the pool elements certified below μ.
pub fn check_branch(a: &Seq, b: &Seq, table: &OrderTable, bound: usize) -> Result<&'static str, String> {
    use kneadlab_core::{branch, is_primitive, BranchCase, BranchKind, OrderRelation};
    let r = branch(a, b, bound).map_err(|e| e.to_string())?;
    let common = table.common_lower_set(a, b);
    let ctx = |msg: String| format!("branch({a}, {b}) = {r:?}: {msg}");
    match r.kind {
        BranchKind::Undetermined => Err(ctx("undetermined".into())),
        BranchKind::Comparable => {
            let low = match r.relation.unwrap() {
                OrderRelation::Less | OrderRelation::Equal => a,
                OrderRelation::Greater => b,
                other => return Err(ctx(format!("relation {other:?}"))),
            };
            if table.maximum(&common) != Some(low) {
                return Err(ctx(format!("brute maximum is {:?}", table.maximum(&common))));
            }
            Ok("COMPARABLE")
        }
        BranchKind::BranchAt => {
            let mu = r.mu.clone().unwrap();
            let case = r.case.unwrap();
            match case {
                BranchCase::IStar => {
                    if table.maximum(&common) != Some(&mu) {
                        return Err(ctx(format!("brute maximum is {:?}", table.maximum(&common))));
                    }
                }
                BranchCase::IiPrimitive => {
                    if !is_primitive(&mu).unwrap() {
                        return Err(ctx("not primitive".into()));
                    }
                    let below: Vec<&Seq> = table.pool.iter().filter(|m| **m != mu && table.le(m, &mu)).collect();
                    if common.contains(&&mu) || below != common {
                        return Err(ctx(format!("common lower set {common:?}")));
                    }
                }
                BranchCase::IPreperiodic => {
                    if mu.is_star_periodic() {
                        return Err(ctx("expected a preperiodic point".into()));
                    }
                    let below: Vec<&Seq> =
                        table.pool.iter().filter(|m| leq(m, &mu, bound).unwrap().is_true()).collect();
                    if below != common {
                        return Err(ctx(format!("common lower set {common:?}, certified below {below:?}")));
                    }
                }
            }
            Ok(case.as_str())
        }
    }
}

// ---------------------------------------------------------------------------
// Characteristic points by exhaustive search.

/// Periodic words of exact period `m` starting with 1 (the side of `c₁`).
pub fn periodic_words(m: usize) -> Vec<Itinerary> {
    (0..1u64 << (m - 1))
        .filter_map(|bits| {
            let mut w = vec![Symbol::One];
            w.extend((0..m - 1).rev().map(|i| if bits >> i & 1 == 1 { Symbol::One } else { Symbol::Zero }));
            let it = Itinerary::periodic(w);
            (it.period() == m).then_some(it)
        })
        .collect()
}

/// `w` lies on `]c₀, c₁[` and no other point of its orbit is cut off from
/// `c₀` by it.
pub fn characteristic_by_definition(t: &MarkedTree, w: &Itinerary) -> bool {
    use kneadlab_core::triod::between;
    let nu = t.nu();
    let (c0, c1) = (t.itinerary(t.c0()), t.itinerary(t.c1()));
    between(c0, w, c1, nu).unwrap() && (1..w.period()).all(|i| !between(c0, w, &w.shift_by(i), nu).unwrap())
}

/// Characteristic points of period at most `max_period` strictly between
/// `x` and `y`.
pub fn characteristic_between(t: &MarkedTree, x: &Itinerary, y: &Itinerary, max_period: usize) -> Vec<Itinerary> {
    use kneadlab_core::triod::between;
    let mut found = Vec::new();
    for m in 1..=max_period {
        for w in periodic_words(m) {
            if &w != x && &w != y && between(x, &w, y, t.nu()).unwrap() && characteristic_by_definition(t, &w) {
                found.push(w);
            }
        }
    }
    found
}

/// `B_Q(τ)`: Q copies of the period of τ with the very last symbol flipped.
pub fn bifurcation_word(tau: &Itinerary, big_q: usize) -> Itinerary {
    let mut w = tau.word(big_q * tau.period());
    let last = w.last_mut().unwrap();
    *last = if *last == Symbol::One { Symbol::Zero } else { Symbol::One };
    Itinerary::periodic(w)
}
