//! Backward pass: lift a matching of the base graph through every logged
//! reduction, newest first.
//!
//! Because the tracked edge of each step is the added edge next to the old
//! tracked edge, at most one added edge of a type I step can be matched, so
//! every revert is a constant amount of bit flipping and never needs an
//! alternating-cycle repair.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::multigraph::{CubicMultigraph, EdgeId};
use crate::reducer::{Observer, ReductionRecord, SolverState, Stats, TypeIContext, TypeIIContext, TypeIISubcase};

/// A set of edge ids, kept sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Matching {
    edges: Vec<EdgeId>,
}

impl Matching {
    pub fn new(mut edges: Vec<EdgeId>) -> Self {
        edges.sort_unstable();
        edges.dedup();
        Matching { edges }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    /// `"k"` then one edge id per line, ascending.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(8 * (self.edges.len() + 1));
        let _ = writeln!(out, "{}", self.edges.len());
        for e in &self.edges {
            let _ = writeln!(out, "{e}");
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let fmt_err = |line: usize, message: String| Error::Format { line, message };
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
        let (_, header) = lines.next().ok_or_else(|| fmt_err(1, "empty matching file".into()))?;
        let k: usize = header.parse().map_err(|_| fmt_err(1, format!("expected edge count, got {header:?}")))?;
        let mut edges = Vec::with_capacity(k);
        let mut last = 1;
        for (line, text) in lines.by_ref() {
            last = line;
            if edges.len() == k {
                if text.is_empty() {
                    continue;
                }
                return Err(fmt_err(line, "more edge ids than declared".into()));
            }
            let id: u32 = text.parse().map_err(|_| fmt_err(line, format!("expected edge id, got {text:?}")))?;
            edges.push(EdgeId(id));
        }
        if edges.len() < k {
            return Err(fmt_err(last + 1, format!("expected {k} edge ids, found {}", edges.len())));
        }
        Ok(Matching::new(edges))
    }
}

/// Result of a full run, with counters for benchmarking.
#[derive(Clone, Debug)]
pub struct Report {
    pub matching: Matching,
    pub stats: Stats,
    pub reductions: usize,
    /// Dynamic-forest primitives issued over the whole run.
    pub ops: u64,
}

impl SolverState {
    /// Matches one copy of the final triple edge other than the tracked edge.
    pub fn base_matching(&mut self) -> Result<()> {
        if self.g.alive_vertex_count() != 2 {
            return Err(Error::state(format!(
                "base matching needs 2 alive vertices, found {}",
                self.g.alive_vertex_count()
            )));
        }
        let pick = self
            .g
            .edge_ids()
            .find(|&e| e != self.e_cur)
            .ok_or_else(|| Error::state("base graph has no edge besides the tracked one"))?;
        self.g.clear_matching();
        self.g.set_in_matching(pick, true);
        Ok(())
    }

    pub fn revert_type_i(&mut self, rec: &TypeIContext) -> Result<()> {
        if self.g.edge(rec.e_next).in_matching() {
            self.stats.case_c += 1;
            return Err(Error::state(format!("tracked edge {} is matched", rec.e_next)));
        }
        let other = rec.added[1];
        let other_matched = self.g.edge(other).in_matching();
        for &f in &rec.added {
            self.g.set_in_matching(f, false);
            self.g.detach(f)?;
        }
        self.g.revive_vertex(rec.v)?;
        self.g.revive_vertex(rec.w)?;
        for (f, bit) in rec.removed().into_iter().zip(rec.tree_bits) {
            self.g.restore(f)?;
            self.g.set_in_tree(f, bit);
        }
        if other_matched {
            let (sv, sw) = rec.replaced[1];
            self.g.set_in_matching(sv.edge, true);
            self.g.set_in_matching(sw.edge, true);
            self.stats.case_b += 1;
        } else {
            self.g.set_in_matching(rec.vw, true);
            self.stats.case_a += 1;
        }
        self.e_cur = rec.e_prev;
        Ok(())
    }

    pub fn revert_type_ii(&mut self, rec: &TypeIIContext) -> Result<()> {
        if self.g.edge(rec.e_next).in_matching() {
            self.stats.case_c += 1;
            return Err(Error::state(format!("tracked edge {} is matched", rec.e_next)));
        }
        self.g.detach(rec.e_next)?;
        self.g.revive_vertex(rec.v)?;
        self.g.revive_vertex(rec.w)?;
        let removed = [rec.e_old, rec.f1, rec.f2, rec.bw];
        for (f, bit) in removed.into_iter().zip(rec.tree_bits) {
            match (rec.subcase, rec.reused_ends) {
                (TypeIISubcase::Reuse, Some((x, y))) if f == rec.e_next => self.g.reattach(f, x, y)?,
                _ => self.g.restore(f)?,
            }
            self.g.set_in_tree(f, bit);
        }
        self.g.set_in_matching(rec.f1, true);
        self.e_cur = rec.e_old;
        Ok(())
    }

    /// Undoes the newest logged reduction, carrying the matching along.
    pub fn revert_last(&mut self) -> Result<()> {
        let rec = self.log.pop().ok_or_else(|| Error::state("nothing left to revert"))?;
        match &rec {
            ReductionRecord::TypeI(c) => self.revert_type_i(c),
            ReductionRecord::TypeII(c) => self.revert_type_ii(c),
        }
    }

    pub fn backward_pass(&mut self) -> Result<()> {
        self.backward_pass_with(&mut ())
    }

    /// Runs after [`SolverState::forward_pass`]. The forest is left as it was
    /// at the end of the forward pass; only the graph is rolled back.
    pub fn backward_pass_with(&mut self, obs: &mut dyn Observer) -> Result<()> {
        self.base_matching()?;
        obs.after_revert(self);
        while !self.log.is_empty() {
            self.revert_last()?;
            obs.after_revert(self);
        }
        Ok(())
    }

    /// Alive edges whose matching bit is set.
    pub fn current_matching(&self) -> Matching {
        Matching::new(self.g.edge_ids().filter(|&e| self.g.edge(e).in_matching()).collect())
    }
}

/// A perfect matching of a bridgeless cubic multigraph that avoids edge 0.
pub fn solve(g: &CubicMultigraph) -> Result<Matching> {
    Ok(solve_with(g, &mut ())?.matching)
}

pub fn solve_with(g: &CubicMultigraph, obs: &mut dyn Observer) -> Result<Report> {
    let mut s = SolverState::init_with(g.clone(), obs)?;
    s.forward_pass_with(obs)?;
    let reductions = s.log.len();
    let ops = s.forest.ops();
    s.backward_pass_with(obs)?;
    Ok(Report { matching: s.current_matching(), stats: s.stats.clone(), reductions, ops })
}
