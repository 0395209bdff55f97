//! Slow reference checks, written independently of the solver and the
//! dynamic forest so that cross-checking them means something.

use crate::error::{Error, Result};
use crate::matcher::Matching;
use crate::multigraph::{CubicMultigraph, EdgeId, VertexId};
use crate::reducer::SolverState;

/// Edge list over a vertex mask. Loops and removed edges are allowed; edge
/// indices stay stable under removal so ids can be carried across reductions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LooseGraph {
    pub alive: Vec<bool>,
    pub edges: Vec<Option<(u32, u32)>>,
}

impl LooseGraph {
    pub fn new(n: usize, edges: &[(u32, u32)]) -> Self {
        LooseGraph { alive: vec![true; n], edges: edges.iter().copied().map(Some).collect() }
    }

    pub fn vertex_count(&self) -> usize {
        self.alive.iter().filter(|&&a| a).count()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.iter().flatten().count()
    }

    fn live_edges(&self) -> impl Iterator<Item = (usize, u32, u32)> + '_ {
        self.edges.iter().enumerate().filter_map(|(i, e)| e.map(|(u, v)| (i, u, v)))
    }

    fn adjacency(&self) -> Vec<Vec<(usize, u32)>> {
        let mut adj = vec![Vec::new(); self.alive.len()];
        for (i, u, v) in self.live_edges() {
            adj[u as usize].push((i, v));
            if u != v {
                adj[v as usize].push((i, u));
            }
        }
        adj
    }

    /// Degree with loops counted twice.
    pub fn degree(&self, v: u32) -> usize {
        self.live_edges().map(|(_, x, y)| (x == v) as usize + (y == v) as usize).sum()
    }

    pub fn has_loop(&self) -> bool {
        self.live_edges().any(|(_, u, v)| u == v)
    }

    pub fn is_cubic(&self) -> bool {
        let mut deg = vec![0usize; self.alive.len()];
        for (_, u, v) in self.live_edges() {
            if !self.alive[u as usize] || !self.alive[v as usize] {
                return false;
            }
            deg[u as usize] += 1;
            deg[v as usize] += 1;
        }
        deg.iter().zip(&self.alive).all(|(&d, &a)| !a || d == 3)
    }

    pub fn is_connected(&self) -> bool {
        let adj = self.adjacency();
        let Some(root) = self.alive.iter().position(|&a| a) else {
            return true;
        };
        let mut seen = vec![false; self.alive.len()];
        seen[root] = true;
        let mut stack = vec![root];
        while let Some(x) = stack.pop() {
            for &(_, y) in &adj[x] {
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    stack.push(y as usize);
                }
            }
        }
        seen.iter().zip(&self.alive).all(|(&s, &a)| s || !a)
    }

    /// Indices of bridge edges, ascending. The DFS skips the edge it arrived
    /// by (not the parent vertex), so a parallel copy is a back edge.
    pub fn bridges(&self) -> Vec<usize> {
        let adj = self.adjacency();
        let n = self.alive.len();
        let mut order = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut bridges = Vec::new();
        let mut clock = 0;
        for root in 0..n {
            if !self.alive[root] || order[root] != usize::MAX {
                continue;
            }
            order[root] = clock;
            low[root] = clock;
            clock += 1;
            // (vertex, edge used to enter it, next adjacency position)
            let mut stack = vec![(root, usize::MAX, 0usize)];
            while let Some(&mut (x, via, ref mut pos)) = stack.last_mut() {
                if let Some(&(e, y)) = adj[x].get(*pos) {
                    *pos += 1;
                    if e == via {
                        continue;
                    }
                    let y = y as usize;
                    if order[y] == usize::MAX {
                        order[y] = clock;
                        low[y] = clock;
                        clock += 1;
                        stack.push((y, e, 0));
                    } else {
                        low[x] = low[x].min(order[y]);
                    }
                } else {
                    stack.pop();
                    if let Some(&(p, _, _)) = stack.last() {
                        low[p] = low[p].min(low[x]);
                        if low[x] > order[p] {
                            bridges.push(via);
                        }
                    }
                }
            }
        }
        bridges.sort_unstable();
        bridges
    }

    pub fn is_bridgeless(&self) -> bool {
        self.is_connected() && self.bridges().is_empty()
    }

    /// Whether edge `e` is alive, not a loop, and has no parallel copy.
    pub fn is_single(&self, e: usize) -> bool {
        let Some((u, v)) = self.edges.get(e).copied().flatten() else {
            return false;
        };
        u != v && !self.live_edges().any(|(i, x, y)| i != e && ((x, y) == (u, v) || (x, y) == (v, u)))
    }

    /// Edges at `v` other than `skip`, ascending by index.
    fn others_at(&self, v: u32, skip: usize) -> Vec<usize> {
        self.live_edges().filter(|&(i, x, y)| i != skip && (x == v || y == v)).map(|(i, _, _)| i).collect()
    }
}

impl From<&CubicMultigraph> for LooseGraph {
    fn from(g: &CubicMultigraph) -> Self {
        let alive = (0..g.vertex_count()).map(|v| g.is_alive(VertexId(v as u32))).collect();
        let edges = (0..g.edge_count())
            .map(|e| {
                let rec = g.edge(EdgeId(e as u32));
                rec.alive().then(|| {
                    let (u, v) = rec.endpoints();
                    (u.0, v.0)
                })
            })
            .collect();
        LooseGraph { alive, edges }
    }
}

pub fn is_cubic(g: &CubicMultigraph) -> bool {
    let h = LooseGraph::from(g);
    !h.has_loop() && h.is_cubic()
}

pub fn is_bridgeless(g: &CubicMultigraph) -> bool {
    LooseGraph::from(g).is_bridgeless()
}

pub fn bridges(g: &CubicMultigraph) -> Vec<EdgeId> {
    LooseGraph::from(g).bridges().into_iter().map(|e| EdgeId(e as u32)).collect()
}

/// Every alive vertex is covered by exactly one listed edge, and every listed
/// edge is alive and listed once.
pub fn is_perfect_matching(g: &CubicMultigraph, m: &[EdgeId]) -> bool {
    loose_is_perfect(&LooseGraph::from(g), &m.iter().map(|e| e.index()).collect::<Vec<_>>())
}

fn loose_is_perfect(g: &LooseGraph, m: &[usize]) -> bool {
    let mut covered = vec![false; g.alive.len()];
    let mut used = vec![false; g.edges.len()];
    for &e in m {
        let Some((u, v)) = g.edges.get(e).copied().flatten() else {
            return false;
        };
        if used[e] || u == v || covered[u as usize] || covered[v as usize] {
            return false;
        }
        used[e] = true;
        covered[u as usize] = true;
        covered[v as usize] = true;
    }
    covered.iter().zip(&g.alive).all(|(&c, &a)| c == a)
}

pub const ENUMERATION_LIMIT: usize = 16;

/// All perfect matchings, each sorted, in lexicographic order of edge ids.
pub fn enumerate_perfect_matchings(g: &CubicMultigraph) -> Result<Vec<Matching>> {
    let h = LooseGraph::from(g);
    let n = h.vertex_count();
    if n > ENUMERATION_LIMIT {
        return Err(Error::Size { n, limit: ENUMERATION_LIMIT });
    }
    let adj = h.adjacency();
    let mut matched: Vec<bool> = h.alive.iter().map(|&a| !a).collect();
    let mut current = Vec::new();
    let mut out = Vec::new();
    enumerate_rec(&adj, &mut matched, &mut current, &mut out);
    let mut out: Vec<Matching> =
        out.into_iter().map(|m: Vec<usize>| Matching::new(m.into_iter().map(|e| EdgeId(e as u32)).collect())).collect();
    out.sort_by(|a, b| a.edges().cmp(b.edges()));
    Ok(out)
}

fn enumerate_rec(adj: &[Vec<(usize, u32)>], matched: &mut [bool], current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    let Some(x) = matched.iter().position(|&m| !m) else {
        out.push(current.clone());
        return;
    };
    matched[x] = true;
    for &(e, y) in &adj[x] {
        let y = y as usize;
        if y == x || matched[y] {
            continue;
        }
        matched[y] = true;
        current.push(e);
        enumerate_rec(adj, matched, current, out);
        current.pop();
        matched[y] = false;
    }
    matched[x] = false;
}

/// The two graphs obtained by deleting the ends of a single edge and
/// reconnecting their four stubs.
#[derive(Clone, Debug)]
pub struct FrinkPair {
    /// Straight: `{a, c}` and `{b, d}`.
    pub h1: LooseGraph,
    /// Crossing: `{a, d}` and `{b, c}`.
    pub h2: LooseGraph,
    pub h1_cubic: bool,
    pub h2_cubic: bool,
    pub h1_bridgeless: bool,
    pub h2_bridgeless: bool,
}

/// Stub edges around a single edge `{v, w}`: two at `v`, two at `w`, with `v`
/// the first stored endpoint and stubs in index order.
struct Stubs {
    v: u32,
    w: u32,
    at_v: [(usize, u32); 2],
    at_w: [(usize, u32); 2],
}

fn stubs(g: &LooseGraph, e: usize) -> Result<Stubs> {
    if !g.is_single(e) {
        return Err(Error::Arg(format!("edge {e} is not a single edge")));
    }
    let (v, w) = g.edges[e].expect("single edges are alive");
    let side = |x: u32| -> Result<[(usize, u32); 2]> {
        let es = g.others_at(x, e);
        if es.len() != 2 {
            return Err(Error::Arg(format!("vertex {x} does not have degree 3")));
        }
        let far = |i: usize| {
            let (p, q) = g.edges[i].expect("listed edges are alive");
            if p == x {
                q
            } else {
                p
            }
        };
        if es.iter().any(|&i| far(i) == x) {
            return Err(Error::Arg(format!("vertex {x} carries a loop")));
        }
        Ok([(es[0], far(es[0])), (es[1], far(es[1]))])
    };
    Ok(Stubs { v, w, at_v: side(v)?, at_w: side(w)? })
}

fn reduce_loose(g: &LooseGraph, s: &Stubs, e: usize, crossing: bool) -> LooseGraph {
    let mut h = g.clone();
    for i in [e, s.at_v[0].0, s.at_v[1].0, s.at_w[0].0, s.at_w[1].0] {
        h.edges[i] = None;
    }
    h.alive[s.v as usize] = false;
    h.alive[s.w as usize] = false;
    let (c, d) = if crossing { (s.at_w[1].1, s.at_w[0].1) } else { (s.at_w[0].1, s.at_w[1].1) };
    h.edges.push(Some((s.at_v[0].1, c)));
    h.edges.push(Some((s.at_v[1].1, d)));
    h
}

pub fn frink_pair(g: &CubicMultigraph, e: EdgeId) -> Result<FrinkPair> {
    loose_frink_pair(&LooseGraph::from(g), e.index())
}

pub fn loose_frink_pair(g: &LooseGraph, e: usize) -> Result<FrinkPair> {
    let s = stubs(g, e)?;
    let h1 = reduce_loose(g, &s, e, false);
    let h2 = reduce_loose(g, &s, e, true);
    Ok(FrinkPair {
        h1_cubic: h1.is_cubic(),
        h2_cubic: h2.is_cubic(),
        h1_bridgeless: h1.is_bridgeless(),
        h2_bridgeless: h2.is_bridgeless(),
        h1,
        h2,
    })
}

pub const SEARCH_LIMIT: usize = 64;

/// A cycle through `e` whose edges alternate between `m` and the rest,
/// starting with `e`. Exhaustive backtracking over simple paths.
pub fn find_alternating_cycle(g: &CubicMultigraph, m: &[EdgeId], e: EdgeId) -> Result<Vec<EdgeId>> {
    let h = LooseGraph::from(g);
    let n = h.vertex_count();
    if n > SEARCH_LIMIT {
        return Err(Error::Size { n, limit: SEARCH_LIMIT });
    }
    let ids: Vec<usize> = m.iter().map(|f| f.index()).collect();
    if !loose_is_perfect(&h, &ids) {
        return Err(Error::Arg("matching is not perfect".into()));
    }
    loose_alternating_cycle(&h, &ids, e.index())
        .map(|c| c.into_iter().map(|f| EdgeId(f as u32)).collect())
        .ok_or(Error::NotFound(e))
}

fn loose_alternating_cycle(g: &LooseGraph, m: &[usize], e: usize) -> Option<Vec<usize>> {
    let (x, y) = g.edges.get(e).copied().flatten()?;
    if x == y {
        return None;
    }
    let mut in_m = vec![false; g.edges.len()];
    for &f in m {
        in_m[f] = true;
    }
    let adj = g.adjacency();
    let mut visited = vec![false; g.alive.len()];
    visited[y as usize] = true;
    let mut path = vec![e];
    // walk from y back to x; the edge after e must have the other type
    if alt_rec(&adj, &in_m, &mut visited, &mut path, y, x, !in_m[e]) {
        Some(path)
    } else {
        None
    }
}

fn alt_rec(
    adj: &[Vec<(usize, u32)>],
    in_m: &[bool],
    visited: &mut [bool],
    path: &mut Vec<usize>,
    at: u32,
    target: u32,
    want_matched: bool,
) -> bool {
    for &(f, z) in &adj[at as usize] {
        if in_m[f] != want_matched || path.contains(&f) {
            continue;
        }
        if z == target {
            // closing edge must differ from `e`, which has type !initial
            if in_m[f] != in_m[path[0]] {
                path.push(f);
                return true;
            }
            continue;
        }
        if visited[z as usize] {
            continue;
        }
        visited[z as usize] = true;
        path.push(f);
        if alt_rec(adj, in_m, visited, path, z, target, !want_matched) {
            return true;
        }
        path.pop();
        visited[z as usize] = false;
    }
    false
}

/// Quadratic baseline: at every step try both reductions of the lowest single
/// edge and keep a bridgeless one; on the way back handle all three matching
/// cases, including flipping an alternating cycle when both added edges are
/// matched.
pub fn naive_frink_solve(g: &CubicMultigraph) -> Result<Matching> {
    let mut h = LooseGraph::from(g);
    let n = h.vertex_count();
    if n > SEARCH_LIMIT {
        return Err(Error::Size { n, limit: SEARCH_LIMIT });
    }
    if !h.is_cubic() || h.has_loop() {
        return Err(Error::Arg("input is not a loopless cubic graph".into()));
    }
    struct Step {
        vw: usize,
        stubs: Stubs,
        crossing: bool,
        added: [usize; 2],
        before: LooseGraph,
    }
    let mut steps = Vec::new();
    while h.vertex_count() > 2 {
        let e = (0..h.edges.len())
            .find(|&e| h.is_single(e))
            .ok_or_else(|| Error::structure("no single edge in a graph with more than two vertices"))?;
        let pair = loose_frink_pair(&h, e)?;
        let s = stubs(&h, e)?;
        let (crossing, next) = if pair.h1_bridgeless {
            (false, pair.h1)
        } else if pair.h2_bridgeless {
            (true, pair.h2)
        } else {
            return Err(Error::structure(format!("neither reduction of edge {e} is bridgeless")));
        };
        let k = next.edges.len();
        steps.push(Step { vw: e, stubs: s, crossing, added: [k - 2, k - 1], before: h });
        h = next;
    }
    let mut m: Vec<usize> = vec![h.live_edges().next().ok_or_else(|| Error::state("empty base graph"))?.0];
    while let Some(step) = steps.pop() {
        let mut matched = step.added.map(|f| m.contains(&f));
        if matched[0] && matched[1] {
            let cycle = loose_alternating_cycle(&h, &m, step.added[0])
                .ok_or(Error::NotFound(EdgeId(step.added[0] as u32)))?;
            for f in cycle {
                match m.iter().position(|&x| x == f) {
                    Some(i) => {
                        m.swap_remove(i);
                    }
                    None => m.push(f),
                }
            }
            matched = step.added.map(|f| m.contains(&f));
        }
        let s = &step.stubs;
        let (c, d) = if step.crossing { (s.at_w[1].0, s.at_w[0].0) } else { (s.at_w[0].0, s.at_w[1].0) };
        let pairs = [(s.at_v[0].0, c), (s.at_v[1].0, d)];
        m.retain(|f| !step.added.contains(f));
        match matched {
            [false, false] => m.push(step.vw),
            [true, false] => m.extend([pairs[0].0, pairs[0].1]),
            [false, true] => m.extend([pairs[1].0, pairs[1].1]),
            [true, true] => return Err(Error::state("alternating cycle left both added edges matched")),
        }
        h = step.before;
    }
    if !loose_is_perfect(&h, &m) {
        return Err(Error::state("baseline produced an imperfect matching"));
    }
    Ok(Matching::new(m.into_iter().map(|e| EdgeId(e as u32)).collect()))
}

/// First violation of the cover invariant, or `None`. Checks that the tree
/// bits form a spanning tree, that the forest holds exactly those edges, and
/// that each tree edge's label is an alive non-tree edge whose tree path,
/// recomputed by walking parent pointers, passes through it.
pub fn cover_violation(s: &mut SolverState) -> Option<String> {
    let g = s.graph().clone();
    let n = g.vertex_count();
    let tree: Vec<EdgeId> = g.edge_ids().filter(|&e| g.edge(e).in_tree()).collect();
    let stale: Vec<usize> = (0..g.edge_count())
        .filter(|&e| {
            let r = g.edge(EdgeId(e as u32));
            !r.alive() && r.in_tree()
        })
        .collect();
    if let Some(e) = stale.first() {
        return Some(format!("dead edge {e} still marked as tree edge"));
    }
    if tree.len() + 1 != g.alive_vertex_count() {
        return Some(format!("{} tree edges for {} vertices", tree.len(), g.alive_vertex_count()));
    }
    if s.forest().edge_count() != tree.len() {
        return Some(format!("forest has {} edges, tree bits mark {}", s.forest().edge_count(), tree.len()));
    }

    // parent pointers by BFS over tree-marked edges
    let mut adj = vec![Vec::new(); n];
    for &e in &tree {
        let (u, v) = g.endpoints(e);
        adj[u.index()].push((e, v.index()));
        adj[v.index()].push((e, u.index()));
    }
    let root = g.vertices().next()?.index();
    let mut parent: Vec<Option<(EdgeId, usize)>> = vec![None; n];
    let mut depth = vec![usize::MAX; n];
    depth[root] = 0;
    let mut queue = std::collections::VecDeque::from([root]);
    while let Some(x) = queue.pop_front() {
        for &(e, y) in &adj[x] {
            if depth[y] == usize::MAX {
                depth[y] = depth[x] + 1;
                parent[y] = Some((e, x));
                queue.push_back(y);
            }
        }
    }
    if let Some(v) = g.vertices().find(|v| depth[v.index()] == usize::MAX) {
        return Some(format!("tree bits do not reach vertex {v}"));
    }
    let path = |mut x: usize, mut y: usize| {
        let mut out = Vec::new();
        while x != y {
            let (a, b) = if depth[x] >= depth[y] { (&mut x, y) } else { (&mut y, x) };
            let _ = b;
            let (e, p) = parent[*a].expect("non-root vertices have parents");
            out.push(e);
            *a = p;
        }
        out
    };

    for &f in &tree {
        let (u, v) = g.endpoints(f);
        let label = match s.forest_mut().peek_label(u, v) {
            Ok(Some(l)) => l,
            Ok(None) | Err(_) => return Some(format!("tree edge {f} is missing from the forest")),
        };
        if label.index() >= g.edge_count() {
            return Some(format!("tree edge {f} has out-of-range label {label}"));
        }
        let rec = g.edge(label);
        if !rec.alive() {
            return Some(format!("tree edge {f} is labelled by dead edge {label}"));
        }
        if rec.in_tree() {
            return Some(format!("tree edge {f} is labelled by tree edge {label}"));
        }
        let (p, q) = rec.endpoints();
        if !path(p.index(), q.index()).contains(&f) {
            return Some(format!("tree edge {f} is not on the tree path of its label {label}"));
        }
    }
    None
}

pub fn check_cover(s: &mut SolverState) -> bool {
    cover_violation(s).is_none()
}
