//! Abstract Hubbard trees built from itineraries.
//!
//! Vertices are the points of the critical orbit plus all branch points of
//! their hull; points are identified with their itineraries, so the tree is
//! automatically the minimal representative. Two vertices are joined by an
//! edge when no third vertex lies between them.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::itinerary::Itinerary;
use crate::seq::Seq;
use crate::triod::{between, critical_itinerary, triod_auto, TriodOutcome};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TreeVertex {
    pub itinerary: Itinerary,
    pub on_critical_orbit: bool,
    pub is_branch: bool,
    pub is_endpoint: bool,
    pub degree: usize,
}

#[derive(Clone, Debug)]
pub struct MarkedTree {
    nu: Seq,
    vertices: Vec<TreeVertex>,
    adjacency: Vec<Vec<usize>>,
    index: HashMap<Itinerary, usize>,
    /// `c₀, c₁, c₂, …` as vertex indices, each point once.
    orbit: Vec<usize>,
}

/// The critical orbit `c₀ = *ν, c₁ = ν, c₂ = σν, …` without repetitions.
pub fn critical_orbit(nu: &Seq) -> Vec<Itinerary> {
    let c0 = critical_itinerary(nu);
    let mut out = vec![c0.clone()];
    let mut x = nu.itinerary().clone();
    while !out.contains(&x) {
        out.push(x.clone());
        x = x.shift();
    }
    out
}

/// Vertices and adjacency of the hull of `points` in the tree of `nu`: the
/// points themselves plus the medians of all their triples.
pub(crate) fn hull(points: &[Itinerary], nu: &Seq) -> Result<(Vec<Itinerary>, Vec<Vec<usize>>)> {
    let mut verts: Vec<Itinerary> = Vec::new();
    let mut seen = HashSet::new();
    for p in points {
        if seen.insert(p.clone()) {
            verts.push(p.clone());
        }
    }
    let marked = verts.len();
    for i in 0..marked {
        for j in i + 1..marked {
            for k in j + 1..marked {
                if let TriodOutcome::Branch { itinerary } = triod_auto(&verts[i], &verts[j], &verts[k], nu)?.outcome {
                    if seen.insert(itinerary.clone()) {
                        verts.push(itinerary);
                    }
                }
            }
        }
    }
    let adjacency = connect(&verts, nu)?;
    Ok((verts, adjacency))
}

/// Edges of the tree spanned by `verts`, which must be closed under medians.
/// Each vertex is attached to the vertex closest to it on its path to the
/// first vertex.
fn connect(verts: &[Itinerary], nu: &Seq) -> Result<Vec<Vec<usize>>> {
    let n = verts.len();
    let mut adjacency = vec![Vec::new(); n];
    let root = 0;
    for v in 1..n {
        let mut on_path = vec![root];
        for u in 1..n {
            if u != v && between(&verts[root], &verts[u], &verts[v], nu)? {
                on_path.push(u);
            }
        }
        // The parent is the path vertex with the most path vertices before it.
        let mut parent = root;
        let mut best = 0;
        for &u in &on_path[1..] {
            let mut before = 1;
            for &w in &on_path[1..] {
                if w != u && between(&verts[root], &verts[w], &verts[u], nu)? {
                    before += 1;
                }
            }
            if before > best {
                best = before;
                parent = u;
            }
        }
        adjacency[v].push(parent);
        adjacency[parent].push(v);
    }
    for a in adjacency.iter_mut() {
        a.sort_unstable();
    }
    Ok(adjacency)
}

/// The Hubbard tree of a `*`-periodic or preperiodic kneading sequence.
pub fn build_tree(nu: &Seq) -> Result<MarkedTree> {
    if nu.is_periodic_binary() {
        return Err(Error::NotInParameterTree(nu.to_string()));
    }
    let orbit = critical_orbit(nu);
    let (verts, adjacency) = hull(&orbit, nu)?;
    let edges: Vec<(usize, usize)> = adjacency
        .iter()
        .enumerate()
        .flat_map(|(i, a)| a.iter().filter(move |&&j| i < j).map(move |&j| (i, j)))
        .collect();
    Ok(MarkedTree::from_parts(nu.clone(), verts, &edges, orbit.len()))
}

/// `t` with the points `extra`, which must lie in `t`, inserted as vertices.
pub(crate) fn with_points(t: &MarkedTree, extra: &[Itinerary]) -> Result<MarkedTree> {
    let mut verts: Vec<Itinerary> = t.vertices().iter().map(|v| v.itinerary.clone()).collect();
    for x in extra {
        if t.index_of(x).is_none() && !verts.contains(x) {
            verts.push(x.clone());
        }
    }
    let adjacency = connect(&verts, t.nu())?;
    let edges: Vec<(usize, usize)> = adjacency
        .iter()
        .enumerate()
        .flat_map(|(i, a)| a.iter().filter(move |&&j| i < j).map(move |&j| (i, j)))
        .collect();
    Ok(MarkedTree::from_parts(t.nu().clone(), verts, &edges, t.critical_orbit().len()))
}

impl MarkedTree {
    /// Assembles a tree from explicit parts; the first `orbit_len` vertices
    /// must be the critical orbit in order. No validation is done here, see
    /// [`verify_axioms`].
    pub fn from_parts(nu: Seq, itineraries: Vec<Itinerary>, edges: &[(usize, usize)], orbit_len: usize) -> MarkedTree {
        let n = itineraries.len();
        let mut adjacency = vec![Vec::new(); n];
        for &(a, b) in edges {
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        for a in adjacency.iter_mut() {
            a.sort_unstable();
        }
        let index = itineraries.iter().enumerate().map(|(i, x)| (x.clone(), i)).collect();
        let vertices = itineraries
            .into_iter()
            .enumerate()
            .map(|(i, itinerary)| {
                let degree = adjacency[i].len();
                TreeVertex {
                    itinerary,
                    on_critical_orbit: i < orbit_len,
                    is_branch: degree >= 3,
                    is_endpoint: degree <= 1,
                    degree,
                }
            })
            .collect();
        MarkedTree { nu, vertices, adjacency, index, orbit: (0..orbit_len).collect() }
    }

    pub fn nu(&self) -> &Seq {
        &self.nu
    }

    pub fn vertices(&self) -> &[TreeVertex] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, a) in self.adjacency.iter().enumerate() {
            out.extend(a.iter().filter(|&&j| i < j).map(|&j| (i, j)));
        }
        out
    }

    pub fn index_of(&self, x: &Itinerary) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn c0(&self) -> usize {
        self.orbit[0]
    }

    /// `c₁`; equal to `c₀` in the one-point tree of `*̄`.
    pub fn c1(&self) -> usize {
        *self.orbit.get(1).unwrap_or(&self.orbit[0])
    }

    pub fn critical_orbit(&self) -> &[usize] {
        &self.orbit
    }

    pub fn itinerary(&self, v: usize) -> &Itinerary {
        &self.vertices[v].itinerary
    }

    /// Index of `f(v)`, if it is a vertex.
    pub fn image(&self, v: usize) -> Option<usize> {
        self.index_of(&self.vertices[v].itinerary.shift())
    }

    /// Vertices on the path from `a` to `b`, both included.
    pub fn path(&self, a: usize, b: usize) -> Option<Vec<usize>> {
        let mut prev = vec![usize::MAX; self.len()];
        prev[a] = a;
        let mut queue = VecDeque::from([a]);
        while let Some(x) = queue.pop_front() {
            if x == b {
                break;
            }
            for &y in &self.adjacency[x] {
                if prev[y] == usize::MAX {
                    prev[y] = x;
                    queue.push_back(y);
                }
            }
        }
        if prev[b] == usize::MAX {
            return None;
        }
        let mut path = vec![b];
        let mut x = b;
        while x != a {
            x = prev[x];
            path.push(x);
        }
        path.reverse();
        Some(path)
    }

    /// True iff the point with itinerary `x` lies in the tree.
    pub fn contains(&self, x: &Itinerary) -> Result<bool> {
        if x.has_star() {
            return Err(Error::HasStar(x.to_string()));
        }
        if self.index.contains_key(x) {
            return Ok(true);
        }
        let ends: Vec<usize> = (0..self.len()).filter(|&v| self.vertices[v].is_endpoint).collect();
        for (i, &a) in ends.iter().enumerate() {
            for &b in &ends[i + 1..] {
                if between(self.itinerary(a), x, self.itinerary(b), &self.nu)? {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }
}

/// True iff the point with star-free itinerary `x` lies in the tree of `nu`.
pub fn contains_point(nu: &Seq, x: &Itinerary) -> Result<bool> {
    build_tree(nu)?.contains(x)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub name: &'static str,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&AxiomCheck> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    fn push(&mut self, name: &'static str, failure: Option<String>) {
        self.checks.push(AxiomCheck { name, passed: failure.is_none(), detail: failure });
    }
}

/// All-pairs distances; `usize::MAX` for disconnected pairs.
fn distances(t: &MarkedTree) -> Vec<Vec<usize>> {
    let n = t.len();
    let mut d = vec![vec![usize::MAX; n]; n];
    for (s, row) in d.iter_mut().enumerate() {
        row[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &y in t.neighbors(x) {
                if row[y] == usize::MAX {
                    row[y] = row[x] + 1;
                    queue.push_back(y);
                }
            }
        }
    }
    d
}

/// Germ `(x, w)`, `w` a neighbour of `x`, goes to `(f(x), first step from
/// f(x) towards f(w))`. Edges never contain `c₀` in their interior, so f is
/// injective on them.
pub(crate) fn germ_image(t: &MarkedTree, x: usize, w: usize) -> Option<(usize, usize)> {
    let fx = t.image(x)?;
    let fw = t.image(w)?;
    if fx == fw {
        return None;
    }
    let path = t.path(fx, fw)?;
    Some((fx, path[1]))
}

/// Checks the Hubbard tree axioms plus the structural facts the rest of the
/// library relies on. Never fails; problems are reported per check.
pub fn verify_axioms(t: &MarkedTree) -> AxiomReport {
    let mut report = AxiomReport { checks: Vec::new() };
    let n = t.len();
    let nu = t.nu();
    let dist = distances(t);

    let edge_count = t.edges().len();
    let connected = dist[0].iter().all(|&d| d != usize::MAX);
    report.push(
        "tree",
        (!connected || edge_count + 1 != n)
            .then(|| format!("{n} vertices, {edge_count} edges, connected: {connected}")),
    );

    // Every triod must agree with the graph: its median is the vertex lying
    // on all three paths.
    let mut edge_failure = None;
    if connected {
        'outer: for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    let on_all = (0..n).find(|&m| {
                        dist[a][m] + dist[m][b] == dist[a][b]
                            && dist[a][m] + dist[m][c] == dist[a][c]
                            && dist[b][m] + dist[m][c] == dist[b][c]
                    });
                    let Some(m) = on_all else {
                        edge_failure = Some("graph is not a tree".to_string());
                        break 'outer;
                    };
                    let triod = triod_auto(t.itinerary(a), t.itinerary(b), t.itinerary(c), nu);
                    let ok = match triod.map(|r| r.outcome) {
                        Ok(TriodOutcome::Degenerate { middle }) => [a, b, c][middle] == m,
                        Ok(TriodOutcome::Branch { itinerary }) => *t.itinerary(m) == itinerary,
                        _ => false,
                    };
                    if !ok {
                        edge_failure = Some(format!(
                            "median of {}, {}, {} disagrees with the graph",
                            t.itinerary(a),
                            t.itinerary(b),
                            t.itinerary(c)
                        ));
                        break 'outer;
                    }
                }
            }
        }
    } else {
        edge_failure = Some("not connected".to_string());
    }
    report.push("edges", edge_failure);

    let not_closed: Vec<String> =
        (0..n).filter(|&v| t.image(v).is_none()).map(|v| t.itinerary(v).to_string()).collect();
    report.push(
        "image_closed",
        (!not_closed.is_empty()).then(|| format!("images missing for {}", not_closed.join(", "))),
    );

    // (a)
    let mut preimages = vec![0usize; n];
    for v in 0..n {
        if let Some(w) = t.image(v) {
            preimages[w] += 1;
        }
    }
    let over = (0..n).find(|&w| preimages[w] > 2);
    report.push("at_most_two_to_one", over.map(|w| format!("{} has {} preimages", t.itinerary(w), preimages[w])));

    // (b)
    let mut germ_failure = None;
    for x in (0..n).filter(|&x| x != t.c0()) {
        let mut images = HashSet::new();
        for &w in t.neighbors(x) {
            match germ_image(t, x, w) {
                Some(g) if images.insert(g) => {}
                _ => {
                    germ_failure = Some(format!("f is not injective near {}", t.itinerary(x)));
                    break;
                }
            }
        }
        if germ_failure.is_some() {
            break;
        }
    }
    report.push("locally_injective", germ_failure);

    // (c)
    let stray: Vec<String> = (0..n)
        .filter(|&v| t.vertices()[v].is_endpoint && !t.vertices()[v].on_critical_orbit)
        .map(|v| t.itinerary(v).to_string())
        .collect();
    report.push(
        "endpoints_on_orbit",
        (!stray.is_empty()).then(|| format!("endpoints off the orbit: {}", stray.join(", "))),
    );
    let c1 = t.c1();
    report.push(
        "c1_endpoint",
        (!t.vertices()[c1].is_endpoint).then(|| format!("c1 has degree {}", t.vertices()[c1].degree)),
    );

    // (d)
    let mut x = t.c0();
    let mut visited = HashSet::new();
    let mut c0_failure = None;
    while visited.insert(x) {
        match t.image(x) {
            Some(y) => x = y,
            None => {
                c0_failure = Some("orbit of c0 leaves the vertex set".to_string());
                break;
            }
        }
    }
    report.push("c0_preperiodic", c0_failure);

    // (e) A pair of marked points must eventually have c₀ on the arc between
    // them. Pair states are finite, so a repeated state means never.
    let mut expansive_failure = None;
    if connected {
        let c0 = t.c0();
        'pairs: for a in 0..n {
            for b in a + 1..n {
                let mut state = (a, b);
                let mut seen = HashSet::new();
                loop {
                    let (x, y) = state;
                    if x == y {
                        expansive_failure = Some(format!("{} and {} are identified", t.itinerary(a), t.itinerary(b)));
                        break 'pairs;
                    }
                    if dist[x][c0] + dist[c0][y] == dist[x][y] {
                        break;
                    }
                    if !seen.insert(state) {
                        expansive_failure =
                            Some(format!("{} and {} are never separated by c0", t.itinerary(a), t.itinerary(b)));
                        break 'pairs;
                    }
                    match (t.image(x), t.image(y)) {
                        (Some(fx), Some(fy)) => state = (fx, fy),
                        _ => {
                            expansive_failure = Some("orbit leaves the vertex set".to_string());
                            break 'pairs;
                        }
                    }
                }
            }
        }
    } else {
        expansive_failure = Some("not connected".to_string());
    }
    report.push("expansive", expansive_failure);

    report
}
