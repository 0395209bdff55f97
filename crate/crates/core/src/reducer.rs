//! Forward pass: shrink the graph two vertices at a time.
//!
//! The state carries the current graph, a spanning tree with cover labels in
//! a [`DynForest`], and the tracked edge `e_cur` that the final matching of
//! the current graph must avoid. Each step either performs a type I (straight
//! or crossing) reduction on a single edge next to `e_cur`, or, when every
//! edge next to `e_cur` has a parallel twin, collapses a double-edge gadget
//! with a type II reduction. Every step is logged so the matcher can undo it.
//!
//! Roles follow one convention throughout: `v` is the endpoint of the reduced
//! edge shared with `e_cur`, and the first stub at `v` is `e_cur` itself.

use crate::dynforest::DynForest;
use crate::error::{Error, Result};
use crate::multigraph::{CubicMultigraph, EdgeId, VertexId};

/// An edge incident to a reduced vertex, seen from that vertex.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Stub {
    pub edge: EdgeId,
    pub far: VertexId,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ReductionKind {
    /// Adds `{a, c}` and `{b, d}`.
    Straight,
    /// Adds `{a, d}` and `{b, c}`.
    Crossing,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum TypeIISubcase {
    /// Both `{a, v}` and `{b, w}` were tree edges; a fresh `{a, b}` joined the tree.
    BothTree,
    /// The non-tree one of `{a, v}` / `{b, w}` was rewritten into `{a, b}`.
    Reuse,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeIContext {
    pub v: VertexId,
    pub w: VertexId,
    pub vw: EdgeId,
    /// Stubs `a` and `b` at `v`; `a` is the previous tracked edge.
    pub at_v: [Stub; 2],
    /// Stubs `c` and `d` at `w`.
    pub at_w: [Stub; 2],
    pub kind: ReductionKind,
    pub tree_count: u8,
    /// `added[0]` contains stub `a` and becomes the next tracked edge.
    pub added: [EdgeId; 2],
    /// For each added edge, the stubs it replaced (one at `v`, one at `w`).
    pub replaced: [(Stub, Stub); 2],
    pub tree_added: Option<EdgeId>,
    pub e_prev: EdgeId,
    pub e_next: EdgeId,
    pub swaps: u32,
    /// `in_tree` of `vw, a, b, c, d` just before the reduction.
    pub tree_bits: [bool; 5],
}

impl TypeIContext {
    pub fn removed(&self) -> [EdgeId; 5] {
        [self.vw, self.at_v[0].edge, self.at_v[1].edge, self.at_w[0].edge, self.at_w[1].edge]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeIIContext {
    pub v: VertexId,
    pub w: VertexId,
    pub a: VertexId,
    pub b: VertexId,
    /// Tree copy of the double edge.
    pub f1: EdgeId,
    pub f2: EdgeId,
    /// The previous tracked edge `{a, v}`.
    pub e_old: EdgeId,
    pub bw: EdgeId,
    pub subcase: TypeIISubcase,
    /// The `{a, b}` edge; under `Reuse` this is `e_old` or `bw` with rewritten endpoints.
    pub e_next: EdgeId,
    /// Endpoints of `e_next` before it was rewritten (only under `Reuse`).
    pub reused_ends: Option<(VertexId, VertexId)>,
    /// `in_tree` of `e_old, f1, f2, bw` just before the reduction.
    pub tree_bits: [bool; 4],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReductionRecord {
    TypeI(TypeIContext),
    TypeII(TypeIIContext),
}

impl ReductionRecord {
    pub fn e_next(&self) -> EdgeId {
        match self {
            ReductionRecord::TypeI(c) => c.e_next,
            ReductionRecord::TypeII(c) => c.e_next,
        }
    }

    pub fn e_prev(&self) -> EdgeId {
        match self {
            ReductionRecord::TypeI(c) => c.e_prev,
            ReductionRecord::TypeII(c) => c.e_old,
        }
    }

    /// One trace line: type, `v`, `w`, kind, swap count.
    pub fn trace_line(&self) -> String {
        match self {
            ReductionRecord::TypeI(c) => {
                let kind = match c.kind {
                    ReductionKind::Straight => "straight",
                    ReductionKind::Crossing => "crossing",
                };
                format!("I\t{}\t{}\t{}\t{}", c.v, c.w, kind, c.swaps)
            }
            ReductionRecord::TypeII(c) => {
                let kind = match c.subcase {
                    TypeIISubcase::BothTree => "both_tree",
                    TypeIISubcase::Reuse => "reuse",
                };
                format!("II\t{}\t{}\t{}\t0", c.v, c.w, kind)
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    pub swaps: u64,
    pub max_swaps_per_reduction: u32,
    pub type_i: u64,
    pub type_ii: u64,
    pub straight: u64,
    pub crossing: u64,
    pub tree3: u64,
    pub tree2: u64,
    pub both_tree: u64,
    pub reuse: u64,
    pub case_a: u64,
    pub case_b: u64,
    /// Reverts that found both added edges matched. Must stay zero.
    pub case_c: u64,
}

/// Hooks for checking the state between steps. All methods default to no-ops.
pub trait Observer {
    fn after_init(&mut self, _s: &mut SolverState) {}
    fn after_swap(&mut self, _s: &mut SolverState, _e: EdgeId) {}
    fn after_reduction(&mut self, _s: &mut SolverState) {}
    fn after_revert(&mut self, _s: &mut SolverState) {}
}

impl Observer for () {}

#[derive(Debug, Clone)]
pub struct SolverState {
    pub(crate) g: CubicMultigraph,
    pub(crate) forest: DynForest,
    pub(crate) e_cur: EdgeId,
    pub(crate) log: Vec<ReductionRecord>,
    pub(crate) stats: Stats,
}

impl SolverState {
    pub fn init(g: CubicMultigraph) -> Result<Self> {
        Self::init_with(g, &mut ())
    }

    /// Tracks the lowest alive edge, grows a DFS tree from the lowest alive
    /// vertex and labels every tree edge with a covering non-tree edge.
    pub fn init_with(mut g: CubicMultigraph, obs: &mut dyn Observer) -> Result<Self> {
        if let Some(v) = g.vertices().find(|&v| g.degree(v) != 3) {
            return Err(Error::Degree { vertex: v, degree: g.degree(v) });
        }
        let root = g.vertices().next().ok_or_else(|| Error::state("graph has no vertices"))?;
        let e_cur = g.edge_ids().next().ok_or_else(|| Error::state("graph has no edges"))?;

        let tree = dfs_tree(&g, root);
        if tree.len() + 1 != g.alive_vertex_count() {
            return Err(Error::structure("graph is disconnected"));
        }
        let mut forest = DynForest::new(g.vertex_count());
        for &f in &tree {
            let (x, y) = g.endpoints(f);
            forest.add(x, y, f)?;
            g.set_in_tree(f, true);
        }
        let non_tree: Vec<EdgeId> = g.edge_ids().filter(|&e| !g.edge(e).in_tree()).collect();
        for e in non_tree {
            let (x, y) = g.endpoints(e);
            forest.set_path_labels(x, y, e)?;
        }

        let mut s = SolverState { g, forest, e_cur, log: Vec::new(), stats: Stats::default() };
        obs.after_init(&mut s);
        Ok(s)
    }

    pub fn graph(&self) -> &CubicMultigraph {
        &self.g
    }

    /// Direct access for fault injection and hand-built matchings; nothing
    /// re-validates the state afterwards.
    pub fn graph_mut(&mut self) -> &mut CubicMultigraph {
        &mut self.g
    }

    pub fn forest(&self) -> &DynForest {
        &self.forest
    }

    pub fn forest_mut(&mut self) -> &mut DynForest {
        &mut self.forest
    }

    pub fn e_cur(&self) -> EdgeId {
        self.e_cur
    }

    pub fn log(&self) -> &[ReductionRecord] {
        &self.log
    }

    pub fn stats(&self) -> &Stats {
        &self.stats
    }

    /// Number of reductions performed and not yet reverted.
    pub fn iteration(&self) -> usize {
        self.log.len()
    }

    /// Current cover label of tree edge `e` (counted as primitives).
    pub fn cover(&mut self, e: EdgeId) -> Result<EdgeId> {
        let (x, y) = self.g.endpoints(e);
        self.forest.cover_label(x, y)
    }

    /// Exchanges tree edge `e` with its cover and relabels the path `e` now covers.
    pub fn swap(&mut self, e: EdgeId) -> Result<()> {
        self.swap_with(e, &mut ())
    }

    pub fn swap_with(&mut self, e: EdgeId, obs: &mut dyn Observer) -> Result<()> {
        let rec = self.g.edge(e);
        if !rec.alive() || !rec.in_tree() {
            return Err(Error::state(format!("swap on non-tree edge {e}")));
        }
        let (x, y) = rec.endpoints();
        let c = self.forest.cover_label(x, y)?;
        let crec = self.g.edge(c);
        if !crec.alive() || crec.in_tree() {
            return Err(Error::structure(format!("cover {c} of tree edge {e} is not an alive non-tree edge")));
        }
        let (p, q) = crec.endpoints();
        self.forest.remove(x, y)?;
        self.g.set_in_tree(e, false);
        self.forest
            .add(p, q, e)
            .map_err(|_| Error::structure(format!("edge {c} does not cover tree edge {e}")))?;
        self.g.set_in_tree(c, true);
        self.forest.set_path_labels(x, y, e)?;
        self.stats.swaps += 1;
        obs.after_swap(self, e);
        Ok(())
    }

    pub fn reduce_type_i(&mut self, e: EdgeId) -> Result<()> {
        self.reduce_type_i_with(e, &mut ())
    }

    /// Removes the endpoints of the single edge `e` (which must share a vertex
    /// with `e_cur`) and reconnects their four stubs so that the tree and its
    /// labels stay valid.
    pub fn reduce_type_i_with(&mut self, e: EdgeId, obs: &mut dyn Observer) -> Result<()> {
        let e_prev = self.e_cur;
        if e == e_prev || !self.g.edge(e).alive() {
            return Err(Error::state(format!("type I reduction on edge {e} next to tracked edge {e_prev}")));
        }
        if self.g.twin(e).is_some() {
            return Err(Error::state(format!("edge {e} is not single")));
        }
        let (p, q) = self.g.endpoints(e);
        let (ex, ey) = self.g.endpoints(e_prev);
        let v = if p == ex || p == ey {
            p
        } else if q == ex || q == ey {
            q
        } else {
            return Err(Error::state(format!("edge {e} does not touch tracked edge {e_prev}")));
        };
        let w = self.g.other_end(e, v);
        let b_edge = {
            let [f, g] = self.g.others_at(v, e);
            if f == e_prev {
                g
            } else {
                f
            }
        };
        let stub = |g: &CubicMultigraph, edge: EdgeId, at: VertexId| Stub { edge, far: g.other_end(edge, at) };
        let at_v = [stub(&self.g, e_prev, v), stub(&self.g, b_edge, v)];
        let [c_edge, d_edge] = self.g.others_at(w, e);
        let at_w = [stub(&self.g, c_edge, w), stub(&self.g, d_edge, w)];
        let stubs = [at_v[0], at_v[1], at_w[0], at_w[1]];

        let swaps_before = self.stats.swaps;
        self.normalize(e, &stubs, obs)?;
        let swaps = (self.stats.swaps - swaps_before) as u32;

        let removed = [e, stubs[0].edge, stubs[1].edge, stubs[2].edge, stubs[3].edge];
        let tree_bits = removed.map(|f| self.g.edge(f).in_tree());
        debug_assert!(!tree_bits[0]);
        let tree_count = tree_bits[1..].iter().filter(|&&b| b).count() as u8;

        for (i, &f) in removed.iter().enumerate() {
            if tree_bits[i] {
                let (x, y) = self.g.endpoints(f);
                self.forest.remove(x, y)?;
                self.g.set_in_tree(f, false);
            }
        }
        for &f in &removed {
            self.g.detach(f)?;
        }
        self.g.kill_vertex(v)?;
        self.g.kill_vertex(w)?;

        let kind = match tree_count {
            3 => self.choose_three_tree(&at_v, &at_w, &tree_bits)?,
            2 => self.choose_two_tree(&at_v, &at_w)?,
            k => return Err(Error::structure(format!("{k} stubs of edge {e} in the tree after normalization"))),
        };
        let (pa, pb) = match kind {
            ReductionKind::Straight => (at_w[0], at_w[1]),
            ReductionKind::Crossing => (at_w[1], at_w[0]),
        };
        let replaced = [(at_v[0], pa), (at_v[1], pb)];
        for (sv, sw) in replaced {
            if sv.far == sw.far {
                return Err(Error::Loop { edge: sv.edge.index(), vertex: sv.far });
            }
        }
        let added = [
            self.g.add_edge(at_v[0].far, pa.far)?,
            self.g.add_edge(at_v[1].far, pb.far)?,
        ];

        let tree_added = if tree_count == 3 {
            let (x, y) = self.g.endpoints(added[0]);
            self.forest.add(x, y, added[1]).map_err(|_| {
                Error::structure(format!("new tree edge {} would close a cycle", added[0]))
            })?;
            self.g.set_in_tree(added[0], true);
            let (x, y) = self.g.endpoints(added[1]);
            self.forest.set_path_labels(x, y, added[1])?;
            Some(added[0])
        } else {
            for &f in &added {
                let (x, y) = self.g.endpoints(f);
                self.forest.set_path_labels(x, y, f)?;
            }
            None
        };

        self.stats.type_i += 1;
        self.stats.max_swaps_per_reduction = self.stats.max_swaps_per_reduction.max(swaps);
        match kind {
            ReductionKind::Straight => self.stats.straight += 1,
            ReductionKind::Crossing => self.stats.crossing += 1,
        }
        if tree_count == 3 {
            self.stats.tree3 += 1;
        } else {
            self.stats.tree2 += 1;
        }
        self.e_cur = added[0];
        self.log.push(ReductionRecord::TypeI(TypeIContext {
            v,
            w,
            vw: e,
            at_v,
            at_w,
            kind,
            tree_count,
            added,
            replaced,
            tree_added,
            e_prev,
            e_next: added[0],
            swaps,
            tree_bits,
        }));
        Ok(())
    }

    /// Swaps until `vw` is off the tree, two or three stubs are on it, and every
    /// tree stub is covered by `vw` or by another stub.
    fn normalize(&mut self, vw: EdgeId, stubs: &[Stub; 4], obs: &mut dyn Observer) -> Result<()> {
        if self.g.edge(vw).in_tree() {
            self.swap_with(vw, obs)?;
        }
        let local = |f: EdgeId| f == vw || stubs.iter().any(|s| s.edge == f);
        if stubs.iter().all(|s| self.g.edge(s.edge).in_tree()) {
            let mut by_id: Vec<EdgeId> = stubs.iter().map(|s| s.edge).collect();
            by_id.sort();
            let mut target = None;
            for f in by_id {
                if self.cover(f)? != vw {
                    target = Some(f);
                    break;
                }
            }
            let f = target.ok_or_else(|| Error::structure("every stub is covered by the reduced edge"))?;
            self.swap_with(f, obs)?;
        }
        loop {
            let mut target = None;
            for s in stubs {
                if self.g.edge(s.edge).in_tree() && !local(self.cover(s.edge)?) {
                    target = Some(s.edge);
                    break;
                }
            }
            match target {
                Some(f) => self.swap_with(f, obs)?,
                None => return Ok(()),
            }
        }
    }

    /// Three stubs in the tree: removing `v` and `w` splits it in two, and the
    /// added edges must both join the halves.
    fn choose_three_tree(&mut self, at_v: &[Stub; 2], at_w: &[Stub; 2], bits: &[bool; 5]) -> Result<ReductionKind> {
        // Side with both stubs in the tree, and the tree / non-tree stub on the other side.
        let v_full = bits[1] && bits[2];
        let (full, other, other_bits) = if v_full {
            (at_v, at_w, [bits[3], bits[4]])
        } else {
            (at_w, at_v, [bits[1], bits[2]])
        };
        let (t, n) = if other_bits[0] { (other[0], other[1]) } else { (other[1], other[0]) };
        let t_with_0 = self.forest.connected(t.far, full[0].far)?;
        let t_with_1 = self.forest.connected(t.far, full[1].far)?;
        let (x, y) = match (t_with_0, t_with_1) {
            (true, false) => (full[0], full[1]),
            (false, true) => (full[1], full[0]),
            _ => return Err(Error::structure("tree stubs do not split into two components")),
        };
        if !self.forest.connected(n.far, y.far)? {
            return Err(Error::structure("both far ends on one side hang off the same component"));
        }
        // pairs are (t, y) and (n, x); express them in a/b/c/d terms
        let a = at_v[0].edge;
        let a_partner = if v_full {
            if x.edge == a {
                n
            } else {
                t
            }
        } else if t.edge == a {
            y
        } else {
            x
        };
        Ok(if a_partner.edge == at_w[0].edge { ReductionKind::Straight } else { ReductionKind::Crossing })
    }

    /// Two stubs in the tree: `v` and `w` are leaves, so the rest of the tree
    /// is intact. Find a pairing of the far ends with edge-disjoint tree paths
    /// and add the edges of a different pairing.
    fn choose_two_tree(&mut self, at_v: &[Stub; 2], at_w: &[Stub; 2]) -> Result<ReductionKind> {
        let [a, b, c, d] = [at_v[0].far, at_v[1].far, at_w[0].far, at_w[1].far];
        let pairings = [((a, b), (c, d)), ((a, c), (b, d)), ((a, d), (b, c))];
        let degenerate = |((x, y), (z, t)): ((VertexId, VertexId), (VertexId, VertexId))| x == y || z == t;
        let mut found = pairings.iter().position(|&p| degenerate(p));
        if found.is_none() {
            for (i, &((x, y), (z, t))) in pairings.iter().enumerate() {
                if !self.forest.paths_share_edge(x, y, z, t)? {
                    found = Some(i);
                    break;
                }
            }
        }
        match found {
            Some(0) => Ok(if a == c || b == d { ReductionKind::Crossing } else { ReductionKind::Straight }),
            Some(1) => Ok(ReductionKind::Crossing),
            Some(2) => Ok(ReductionKind::Straight),
            _ => Err(Error::structure("no pairing of the far ends has edge-disjoint tree paths")),
        }
    }

    pub fn reduce_type_ii(&mut self) -> Result<()> {
        self.reduce_type_ii_with(&mut ())
    }

    /// Collapses the double edge next to `e_cur` that meets the tree, together
    /// with `e_cur` and the single edge on its far side, into one edge `{a, b}`.
    pub fn reduce_type_ii_with(&mut self, _obs: &mut dyn Observer) -> Result<()> {
        let e_old = self.e_cur;
        let (f1, f2) = self.g.tree_double_incident(e_old)?;
        let (p, q) = self.g.endpoints(f1);
        let (ex, ey) = self.g.endpoints(e_old);
        let touches = |x: VertexId| x == ex || x == ey;
        let v = match (touches(p), touches(q)) {
            (true, false) => p,
            (false, true) => q,
            _ => return Err(Error::structure(format!("tracked edge {e_old} is parallel to double edge {f1}"))),
        };
        let w = self.g.other_end(f1, v);
        let a = self.g.other_end(e_old, v);
        let bw = {
            let [x, y] = self.g.others_at(w, f1);
            if x == f2 {
                y
            } else {
                x
            }
        };
        let b = self.g.other_end(bw, w);
        if a == b {
            return Err(Error::structure(format!("type II gadget at {v}, {w} closes on a single vertex {a}")));
        }

        let removed = [e_old, f1, f2, bw];
        let tree_bits = removed.map(|f| self.g.edge(f).in_tree());
        let (av_tree, bw_tree) = (tree_bits[0], tree_bits[3]);
        let inherited = if av_tree && bw_tree { Some(self.cover(e_old)?) } else { None };

        for (i, &f) in removed.iter().enumerate() {
            if tree_bits[i] {
                let (x, y) = self.g.endpoints(f);
                self.forest.remove(x, y)?;
                self.g.set_in_tree(f, false);
            }
        }
        for &f in &removed {
            self.g.detach(f)?;
        }
        self.g.kill_vertex(v)?;
        self.g.kill_vertex(w)?;

        let (subcase, e_next, reused_ends) = match (av_tree, bw_tree, inherited) {
            (true, true, Some(label)) => {
                let ab = self.g.add_edge(a, b)?;
                self.forest.add(a, b, label)?;
                self.g.set_in_tree(ab, true);
                self.stats.both_tree += 1;
                (TypeIISubcase::BothTree, ab, None)
            }
            (true, false, _) | (false, true, _) => {
                let reuse = if av_tree { bw } else { e_old };
                let ends = self.g.endpoints(reuse);
                self.g.reattach(reuse, a, b)?;
                self.stats.reuse += 1;
                (TypeIISubcase::Reuse, reuse, Some(ends))
            }
            _ => return Err(Error::structure(format!("type II gadget at {v}, {w} is not attached to the tree"))),
        };

        self.stats.type_ii += 1;
        self.e_cur = e_next;
        self.log.push(ReductionRecord::TypeII(TypeIIContext {
            v,
            w,
            a,
            b,
            f1,
            f2,
            e_old,
            bw,
            subcase,
            e_next,
            reused_ends,
            tree_bits,
        }));
        Ok(())
    }

    /// Performs one reduction of whichever type applies to `e_cur`.
    pub fn step_with(&mut self, obs: &mut dyn Observer) -> Result<()> {
        if self.g.alive_vertex_count() <= 2 {
            return Err(Error::state("graph is already fully reduced"));
        }
        match self.g.single_edge_incident(self.e_cur) {
            Some(e) => self.reduce_type_i_with(e, obs)?,
            None => self.reduce_type_ii_with(obs)?,
        }
        obs.after_reduction(self);
        Ok(())
    }

    pub fn forward_pass(&mut self) -> Result<()> {
        self.forward_pass_with(&mut ())
    }

    /// Reduces until two vertices joined by a triple edge remain.
    pub fn forward_pass_with(&mut self, obs: &mut dyn Observer) -> Result<()> {
        while self.g.alive_vertex_count() > 2 {
            self.step_with(obs)?;
        }
        Ok(())
    }
}

/// Tree edges of an iterative DFS from `root`, in discovery order.
fn dfs_tree(g: &CubicMultigraph, root: VertexId) -> Vec<EdgeId> {
    let mut seen = vec![false; g.vertex_count()];
    let mut tree = Vec::with_capacity(g.alive_vertex_count().saturating_sub(1));
    let mut stack = vec![(root, g.incident(root))];
    seen[root.index()] = true;
    while let Some((x, it)) = stack.last_mut() {
        let x = *x;
        match it.next() {
            Some(f) => {
                let y = g.other_end(f, x);
                if !seen[y.index()] {
                    seen[y.index()] = true;
                    tree.push(f);
                    stack.push((y, g.incident(y)));
                }
            }
            None => {
                stack.pop();
            }
        }
    }
    tree
}
