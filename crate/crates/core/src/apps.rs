//! Uses of a perfect matching: the complementary 2-factor, a short closed
//! walk through all vertices, and a decomposition into three-edge paths.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::multigraph::{CubicMultigraph, EdgeId, VertexId};
use crate::oracle;

/// A cycle given by its vertices in walking order; `edges[i]` joins
/// `vertices[i]` to `vertices[(i + 1) % len]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cycle {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

impl Cycle {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoFactor {
    /// Ordered by lowest vertex.
    pub cycles: Vec<Cycle>,
}

impl TwoFactor {
    /// One cycle per line as space-separated edge ids.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.cycles {
            out.push_str(&join(&c.edges));
            out.push('\n');
        }
        out
    }
}

/// A closed walk; `vertices` starts and ends at the same vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tour {
    pub vertices: Vec<VertexId>,
}

impl Tour {
    /// Number of edges traversed.
    pub fn len(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn to_text(&self) -> String {
        format!("{}\n", join(&self.vertices))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct P4Path {
    pub vertices: [VertexId; 4],
    pub edges: [EdgeId; 3],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct P4Decomposition {
    /// One path per matched edge, ordered by the matched edge's id.
    pub paths: Vec<P4Path>,
}

impl P4Decomposition {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for p in &self.paths {
            let _ = writeln!(out, "{}", join(&p.edges));
        }
        out
    }
}

fn join<T: std::fmt::Display>(xs: &[T]) -> String {
    let mut s = String::new();
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            s.push(' ');
        }
        let _ = write!(s, "{x}");
    }
    s
}

/// The cycles formed by the unmatched edges. Each cycle starts at its lowest
/// vertex and leaves it toward the lower-id neighbour (lower edge id on ties).
pub fn two_factor(g: &CubicMultigraph, m: &[EdgeId]) -> Result<TwoFactor> {
    if !oracle::is_perfect_matching(g, m) {
        return Err(Error::Arg("matching is not perfect".into()));
    }
    let mut matched = vec![false; g.edge_count()];
    for e in m {
        matched[e.index()] = true;
    }
    let rest = |x: VertexId| -> [EdgeId; 2] {
        let mut it = g.incident(x).filter(|e| !matched[e.index()]);
        let (p, q) = (it.next().expect("degree 3"), it.next().expect("degree 3"));
        if p < q {
            [p, q]
        } else {
            [q, p]
        }
    };
    let mut seen = vec![false; g.vertex_count()];
    let mut cycles = Vec::new();
    for s in g.vertices() {
        if seen[s.index()] {
            continue;
        }
        let [p, q] = rest(s);
        let first = if g.other_end(q, s) < g.other_end(p, s) { q } else { p };
        let mut c = Cycle { vertices: vec![s], edges: vec![first] };
        seen[s.index()] = true;
        let (mut at, mut via) = (g.other_end(first, s), first);
        while at != s {
            seen[at.index()] = true;
            c.vertices.push(at);
            let [p, q] = rest(at);
            via = if p == via { q } else { p };
            c.edges.push(via);
            at = g.other_end(via, at);
        }
        cycles.push(c);
    }
    Ok(TwoFactor { cycles })
}

fn require_simple(g: &CubicMultigraph) -> Result<()> {
    if g.edge_ids().any(|e| g.twin(e).is_some()) {
        Err(Error::Multigraph)
    } else {
        Ok(())
    }
}

/// Joins the cycles of `tf` into one closed walk by entering each further
/// cycle through a matched edge and coming back over the same edge. The walk
/// has `n + 2 (cycles - 1)` edges.
pub fn patch_tour(g: &CubicMultigraph, tf: &TwoFactor) -> Result<Tour> {
    require_simple(g)?;
    let n = g.vertex_count();
    let mut cycle_of = vec![usize::MAX; n];
    let mut pos = vec![0usize; n];
    let mut in_cycles = vec![false; g.edge_count()];
    for (ci, c) in tf.cycles.iter().enumerate() {
        for (i, v) in c.vertices.iter().enumerate() {
            cycle_of[v.index()] = ci;
            pos[v.index()] = i;
        }
        for e in &c.edges {
            in_cycles[e.index()] = true;
        }
    }
    if g.vertices().any(|v| cycle_of[v.index()] == usize::MAX) {
        return Err(Error::Arg("2-factor does not cover every vertex".into()));
    }
    let Some(first) = tf.cycles.first() else {
        return Ok(Tour { vertices: Vec::new() });
    };
    let link = |x: VertexId| g.incident(x).find(|e| !in_cycles[e.index()]).map(|e| g.other_end(e, x));

    let mut visited = vec![false; tf.cycles.len()];
    visited[0] = true;
    let mut walk = vec![first.vertices[0]];
    // (cycle, entry offset, steps taken, link at current vertex already tried)
    let mut stack = vec![(0usize, 0usize, 0usize, false)];
    while let Some(top) = stack.last_mut() {
        let (ci, offset, step, tried) = *top;
        let c = &tf.cycles[ci];
        let x = c.vertices[(offset + step) % c.len()];
        if !tried {
            top.3 = true;
            if let Some(y) = link(x) {
                let d = cycle_of[y.index()];
                if !visited[d] {
                    visited[d] = true;
                    walk.push(y);
                    stack.push((d, pos[y.index()], 0, false));
                }
            }
            continue;
        }
        let step = step + 1;
        walk.push(c.vertices[(offset + step) % c.len()]);
        if step == c.len() {
            stack.pop();
            if let Some(&(pc, poff, pstep, _)) = stack.last() {
                let p = &tf.cycles[pc];
                walk.push(p.vertices[(poff + pstep) % p.len()]);
            }
        } else {
            *top = (ci, offset, step, false);
        }
    }
    if visited.iter().any(|&v| !v) {
        return Err(Error::structure("cycles of the 2-factor are not connected by matched edges"));
    }
    Ok(Tour { vertices: walk })
}

/// Orients every cycle of the complement of `m` and turns each matched edge
/// `{u, v}` into the path `succ(u), u, v, succ(v)`.
pub fn p4_decompose(g: &CubicMultigraph, m: &[EdgeId]) -> Result<P4Decomposition> {
    require_simple(g)?;
    let tf = two_factor(g, m)?;
    let n = g.vertex_count();
    let mut out_edge = vec![EdgeId(u32::MAX); n];
    let mut succ = vec![VertexId(u32::MAX); n];
    for c in &tf.cycles {
        for i in 0..c.len() {
            let v = c.vertices[i];
            out_edge[v.index()] = c.edges[i];
            succ[v.index()] = c.vertices[(i + 1) % c.len()];
        }
    }
    let mut sorted = m.to_vec();
    sorted.sort_unstable();
    let paths = sorted
        .into_iter()
        .map(|e| {
            let (u, v) = g.endpoints(e);
            P4Path {
                vertices: [succ[u.index()], u, v, succ[v.index()]],
                edges: [out_edge[u.index()], e, out_edge[v.index()]],
            }
        })
        .collect();
    Ok(P4Decomposition { paths })
}
