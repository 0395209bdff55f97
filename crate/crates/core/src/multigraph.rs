//! Cubic multigraphs with stable edge identity.
//!
//! Every edge is a record in an arena and keeps its id for the whole run, even
//! when its endpoints are rewritten. Each vertex owns an intrusive
//! doubly-linked list of half-edges, so removing or relinking an edge is
//! `O(1)`. Dead vertices keep their ids; nothing is ever compacted.

use std::fmt;

use crate::error::{Error, Result};

const NIL: u32 = u32::MAX;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub u32);

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeId(pub u32);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl EdgeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeRecord {
    ends: [VertexId; 2],
    alive: bool,
    in_tree: bool,
    in_matching: bool,
}

impl EdgeRecord {
    pub fn endpoints(&self) -> (VertexId, VertexId) {
        (self.ends[0], self.ends[1])
    }

    pub fn alive(&self) -> bool {
        self.alive
    }

    pub fn in_tree(&self) -> bool {
        self.in_tree
    }

    pub fn in_matching(&self) -> bool {
        self.in_matching
    }

    fn joins(&self, x: VertexId, y: VertexId) -> bool {
        (self.ends[0] == x && self.ends[1] == y) || (self.ends[0] == y && self.ends[1] == x)
    }
}

#[derive(Clone, Debug)]
pub struct CubicMultigraph {
    edges: Vec<EdgeRecord>,
    // Half-edge `2 * e + s` is the incidence of edge `e` at `ends[s]`.
    next: Vec<u32>,
    prev: Vec<u32>,
    head: Vec<u32>,
    degree: Vec<u8>,
    vertex_alive: Vec<bool>,
    n_alive: usize,
}

impl CubicMultigraph {
    /// Builds a cubic multigraph on `n` vertices. Edge ids follow list order.
    pub fn build(n: usize, edge_list: &[(u32, u32)]) -> Result<Self> {
        if n < 2 || n % 2 != 0 {
            return Err(Error::Parity(n));
        }
        if n > (NIL / 2) as usize {
            return Err(Error::Size { n, limit: (NIL / 2) as usize });
        }
        let mut degree = vec![0usize; n];
        for (i, &(u, v)) in edge_list.iter().enumerate() {
            if u as usize >= n || v as usize >= n {
                return Err(Error::Arg(format!("edge {i} = ({u}, {v}) has an endpoint outside 0..{n}")));
            }
            if u == v {
                return Err(Error::Loop { edge: i, vertex: VertexId(u) });
            }
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        if let Some((v, &d)) = degree.iter().enumerate().find(|(_, &d)| d != 3) {
            return Err(Error::Degree { vertex: VertexId(v as u32), degree: d });
        }

        let mut g = CubicMultigraph {
            edges: Vec::with_capacity(edge_list.len()),
            next: Vec::with_capacity(2 * edge_list.len()),
            prev: Vec::with_capacity(2 * edge_list.len()),
            head: vec![NIL; n],
            degree: vec![0; n],
            vertex_alive: vec![true; n],
            n_alive: n,
        };
        for &(u, v) in edge_list {
            g.push_record(VertexId(u), VertexId(v));
        }
        Ok(g)
    }

    fn push_record(&mut self, u: VertexId, v: VertexId) -> EdgeId {
        let id = EdgeId(self.edges.len() as u32);
        self.edges.push(EdgeRecord {
            ends: [u, v],
            alive: false,
            in_tree: false,
            in_matching: false,
        });
        self.next.extend([NIL, NIL]);
        self.prev.extend([NIL, NIL]);
        self.link(id);
        id
    }

    /// Total number of vertex slots, alive or not.
    pub fn vertex_count(&self) -> usize {
        self.head.len()
    }

    pub fn alive_vertex_count(&self) -> usize {
        self.n_alive
    }

    /// Size of the edge arena, including detached records.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn alive_edge_count(&self) -> usize {
        self.edges.iter().filter(|e| e.alive).count()
    }

    pub fn edge(&self, e: EdgeId) -> &EdgeRecord {
        &self.edges[e.index()]
    }

    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e.index()].endpoints()
    }

    /// The endpoint of `e` that is not `v`.
    pub fn other_end(&self, e: EdgeId, v: VertexId) -> VertexId {
        let [x, y] = self.edges[e.index()].ends;
        if x == v {
            y
        } else {
            debug_assert_eq!(y, v);
            x
        }
    }

    pub fn is_alive(&self, v: VertexId) -> bool {
        self.vertex_alive[v.index()]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.degree[v.index()] as usize
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.head.len() as u32).map(VertexId).filter(|&v| self.is_alive(v))
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len() as u32).map(EdgeId).filter(|&e| self.edges[e.index()].alive)
    }

    /// Alive edges at `v`, in incidence-list order.
    pub fn incident(&self, v: VertexId) -> Incident<'_> {
        Incident { g: self, half: self.head[v.index()] }
    }

    /// The two alive edges at a degree-3 vertex `v` other than `e`.
    pub fn others_at(&self, v: VertexId, e: EdgeId) -> [EdgeId; 2] {
        let mut out = [e; 2];
        let mut k = 0;
        let mut skipped = false;
        for f in self.incident(v) {
            if f == e && !skipped {
                skipped = true;
            } else if k < 2 {
                out[k] = f;
                k += 1;
            }
        }
        debug_assert!(skipped && k == 2, "others_at on vertex {v} of degree {}", self.degree(v));
        out
    }

    /// An alive edge parallel to `e`, if any.
    pub fn twin(&self, e: EdgeId) -> Option<EdgeId> {
        let [x, y] = self.edges[e.index()].ends;
        self.incident(x).find(|&f| f != e && self.other_end(f, x) == y)
    }

    pub fn set_in_tree(&mut self, e: EdgeId, bit: bool) {
        self.edges[e.index()].in_tree = bit;
    }

    pub fn set_in_matching(&mut self, e: EdgeId, bit: bool) {
        self.edges[e.index()].in_matching = bit;
    }

    pub fn clear_matching(&mut self) {
        for r in &mut self.edges {
            r.in_matching = false;
        }
    }

    fn link(&mut self, e: EdgeId) {
        for s in 0..2 {
            let h = 2 * e.0 + s;
            let v = self.edges[e.index()].ends[s as usize].index();
            let old = self.head[v];
            self.prev[h as usize] = NIL;
            self.next[h as usize] = old;
            if old != NIL {
                self.prev[old as usize] = h;
            }
            self.head[v] = h;
            self.degree[v] += 1;
        }
        self.edges[e.index()].alive = true;
    }

    fn unlink(&mut self, e: EdgeId) {
        for s in 0..2 {
            let h = (2 * e.0 + s) as usize;
            let v = self.edges[e.index()].ends[s as usize].index();
            let (p, n) = (self.prev[h], self.next[h]);
            if p == NIL {
                self.head[v] = n;
            } else {
                self.next[p as usize] = n;
            }
            if n != NIL {
                self.prev[n as usize] = p;
            }
            self.degree[v] -= 1;
        }
        self.edges[e.index()].alive = false;
    }

    fn check_restorable(&self, e: EdgeId) -> Result<()> {
        let r = &self.edges[e.index()];
        for &v in &r.ends {
            if !self.is_alive(v) {
                return Err(Error::state(format!("edge {e} ends at dead vertex {v}")));
            }
            if self.degree(v) >= 3 {
                return Err(Error::state(format!("vertex {v} already has degree 3")));
            }
        }
        if r.ends[0] == r.ends[1] && self.degree(r.ends[0]) >= 2 {
            return Err(Error::state(format!("vertex {} already has degree 3", r.ends[0])));
        }
        Ok(())
    }

    /// Unlinks `e` from both incidence lists, keeping the record and its flags.
    pub fn detach(&mut self, e: EdgeId) -> Result<()> {
        if !self.edges[e.index()].alive {
            return Err(Error::state(format!("detaching dead edge {e}")));
        }
        self.unlink(e);
        Ok(())
    }

    /// Relinks a detached `e` at its stored endpoints.
    pub fn restore(&mut self, e: EdgeId) -> Result<()> {
        if self.edges[e.index()].alive {
            return Err(Error::state(format!("restoring alive edge {e}")));
        }
        self.check_restorable(e)?;
        self.link(e);
        Ok(())
    }

    /// Rewrites the endpoints of a detached `e` to `{u, v}` and relinks it.
    pub fn reattach(&mut self, e: EdgeId, u: VertexId, v: VertexId) -> Result<()> {
        if self.edges[e.index()].alive {
            return Err(Error::state(format!("reattaching alive edge {e}")));
        }
        if u == v {
            return Err(Error::Loop { edge: e.index(), vertex: u });
        }
        let old = self.edges[e.index()].ends;
        self.edges[e.index()].ends = [u, v];
        if let Err(err) = self.check_restorable(e) {
            self.edges[e.index()].ends = old;
            return Err(err);
        }
        self.link(e);
        Ok(())
    }

    /// Creates a fresh edge record `{u, v}`.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<EdgeId> {
        if u == v {
            return Err(Error::Loop { edge: self.edges.len(), vertex: u });
        }
        for w in [u, v] {
            if !self.is_alive(w) || self.degree(w) >= 3 {
                return Err(Error::state(format!("cannot attach a new edge to vertex {w}")));
            }
        }
        Ok(self.push_record(u, v))
    }

    pub fn kill_vertex(&mut self, v: VertexId) -> Result<()> {
        if !self.is_alive(v) || self.degree(v) != 0 {
            return Err(Error::state(format!("vertex {v} is dead or still has edges")));
        }
        self.vertex_alive[v.index()] = false;
        self.n_alive -= 1;
        Ok(())
    }

    pub fn revive_vertex(&mut self, v: VertexId) -> Result<()> {
        if self.is_alive(v) {
            return Err(Error::state(format!("vertex {v} is already alive")));
        }
        self.vertex_alive[v.index()] = true;
        self.n_alive += 1;
        Ok(())
    }

    /// An alive single edge sharing an endpoint with `e`, if any.
    pub fn single_edge_incident(&self, e: EdgeId) -> Option<EdgeId> {
        let [x, y] = self.edges[e.index()].ends;
        [x, y]
            .into_iter()
            .flat_map(|v| self.incident(v))
            .find(|&f| f != e && self.twin(f).is_none())
    }

    /// A double edge `(f1, f2)` at an endpoint of `e` with `f1` in the tree and
    /// `f2` not. Only meaningful when every edge next to `e` has a twin.
    pub fn tree_double_incident(&self, e: EdgeId) -> Result<(EdgeId, EdgeId)> {
        let [x, y] = self.edges[e.index()].ends;
        for v in [x, y] {
            if self.degree(v) != 3 {
                continue;
            }
            let [f, g] = self.others_at(v, e);
            let (fe, ge) = (&self.edges[f.index()], &self.edges[g.index()]);
            if !fe.joins(ge.ends[0], ge.ends[1]) {
                continue;
            }
            match (fe.in_tree, ge.in_tree) {
                (true, false) => return Ok((f, g)),
                (false, true) => return Ok((g, f)),
                _ => {}
            }
        }
        Err(Error::structure(format!("no double edge next to edge {e} meets the spanning tree")))
    }

    /// Alive vertices renumbered densely in id order, with alive edges in id order.
    pub fn alive_edge_list(&self) -> (usize, Vec<(u32, u32)>) {
        let mut rank = vec![NIL; self.head.len()];
        let mut n = 0u32;
        for v in self.vertices() {
            rank[v.index()] = n;
            n += 1;
        }
        let edges = self
            .edge_ids()
            .map(|e| {
                let (u, v) = self.endpoints(e);
                (rank[u.index()], rank[v.index()])
            })
            .collect();
        (n as usize, edges)
    }

    /// Edge-list text: `"n m"` then one `"u v"` line per edge.
    pub fn serialize(&self) -> String {
        use std::fmt::Write;
        let (n, edges) = self.alive_edge_list();
        let mut out = String::with_capacity(12 * (edges.len() + 1));
        let _ = writeln!(out, "{} {}", n, edges.len());
        for (u, v) in edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
        let fmt_err = |line: usize, message: String| Error::Format { line, message };

        let (_, header) = lines.next().ok_or_else(|| fmt_err(1, "empty input".into()))?;
        let (n, m) = parse_pair(header).ok_or_else(|| fmt_err(1, format!("expected \"n m\", got {header:?}")))?;
        let n = n as usize;
        let m = m as usize;
        if n % 2 != 0 || n < 2 {
            return Err(Error::Parity(n));
        }
        if m != 3 * n / 2 {
            return Err(fmt_err(1, format!("a cubic graph on {n} vertices has {} edges, header says {m}", 3 * n / 2)));
        }

        let mut edges = Vec::with_capacity(m);
        for (ln, line) in lines.by_ref() {
            if edges.len() == m {
                if line.is_empty() {
                    continue;
                }
                return Err(fmt_err(ln, "more edge lines than the header announced".into()));
            }
            let (u, v) = parse_pair(line).ok_or_else(|| fmt_err(ln, format!("expected \"u v\", got {line:?}")))?;
            if u as usize >= n || v as usize >= n {
                return Err(fmt_err(ln, format!("vertex out of range 0..{n}")));
            }
            if u == v {
                return Err(fmt_err(ln, format!("loop at vertex {u}")));
            }
            edges.push((u, v));
        }
        if edges.len() < m {
            return Err(fmt_err(edges.len() + 2, format!("expected {m} edge lines, found {}", edges.len())));
        }
        Self::build(n, &edges)
    }
}

fn parse_pair(line: &str) -> Option<(u32, u32)> {
    let mut it = line.split_ascii_whitespace();
    let a = it.next()?.parse().ok()?;
    let b = it.next()?.parse().ok()?;
    it.next().is_none().then_some((a, b))
}

pub struct Incident<'a> {
    g: &'a CubicMultigraph,
    half: u32,
}

impl Iterator for Incident<'_> {
    type Item = EdgeId;

    fn next(&mut self) -> Option<EdgeId> {
        if self.half == NIL {
            return None;
        }
        let h = self.half;
        self.half = self.g.next[h as usize];
        Some(EdgeId(h >> 1))
    }
}
