//! The spanning tree of the current graph and its cover labels.
//!
//! One link-cut forest holds the tree. Each edge carries a label, a handle to
//! a non-tree edge covering it, and an integer cost that stays at zero except
//! while [`DynForest::paths_share_edge`] runs. Label writes and cost shifts
//! commute, so a single lazy tag carries both.
//!
//! The facade works on unrooted trees and is built from the rooted
//! primitives exactly: `remove` is `evert(v); cut(u)`, `add` is
//! `evert(u); link(u, v, x)`, `cover_label` is `evert(v); cost(u)` and
//! `set_path_labels` is `evert(v); update(u, x)`.

mod linkcut;

pub use linkcut::{Costs, Labels, LinkCutTree, MinPath, PathAlgebra};

use crate::error::{Error, Result};
use crate::multigraph::{EdgeId, VertexId};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TreeEdgeValue {
    pub label: EdgeId,
    pub cost: i32,
}

#[derive(Debug, Clone, Copy)]
pub struct PathAction {
    label: Option<EdgeId>,
    shift: i32,
}

/// Cover labels with overwrite plus costs with path addition and minimum.
#[derive(Debug, Clone, Copy)]
pub enum CoverAlgebra {}

impl PathAlgebra for CoverAlgebra {
    type Value = TreeEdgeValue;
    type Agg = i32;
    type Tag = PathAction;

    fn empty() -> i32 {
        Costs::empty()
    }
    fn single(v: TreeEdgeValue) -> i32 {
        v.cost
    }
    fn merge(a: i32, b: i32) -> i32 {
        Costs::merge(a, b)
    }
    fn apply(t: PathAction, v: TreeEdgeValue) -> TreeEdgeValue {
        TreeEdgeValue { label: t.label.unwrap_or(v.label), cost: v.cost + t.shift }
    }
    fn apply_agg(t: PathAction, a: i32) -> i32 {
        Costs::apply_agg(t.shift, a)
    }
    fn compose(outer: PathAction, inner: PathAction) -> PathAction {
        PathAction { label: outer.label.or(inner.label), shift: outer.shift + inner.shift }
    }
}

impl MinPath for CoverAlgebra {
    type Key = i32;

    fn key(v: TreeEdgeValue) -> i32 {
        v.cost
    }
}

#[derive(Debug, Clone)]
pub struct DynForest {
    tree: LinkCutTree<CoverAlgebra>,
}

impl DynForest {
    pub fn new(n: usize) -> Self {
        DynForest { tree: LinkCutTree::new(n) }
    }

    /// Primitive operations issued so far.
    pub fn ops(&self) -> u64 {
        self.tree.ops()
    }

    pub fn edge_count(&self) -> usize {
        self.tree.edge_count()
    }

    pub fn connected(&mut self, u: VertexId, v: VertexId) -> Result<bool> {
        Ok(self.tree.root(u.index())? == self.tree.root(v.index())?)
    }

    pub fn add(&mut self, u: VertexId, v: VertexId, label: EdgeId) -> Result<()> {
        let (u, v) = (u.index(), v.index());
        self.tree.evert(u)?;
        self.tree.link(u, v, TreeEdgeValue { label, cost: 0 })
    }

    pub fn remove(&mut self, u: VertexId, v: VertexId) -> Result<()> {
        self.tree.evert(v.index())?;
        if self.tree.parent(u.index())? != Some(v.index()) {
            return Err(not_an_edge(u, v));
        }
        self.tree.cut(u.index())
    }

    pub fn cover_label(&mut self, u: VertexId, v: VertexId) -> Result<EdgeId> {
        self.tree.evert(v.index())?;
        if self.tree.parent(u.index())? != Some(v.index()) {
            return Err(not_an_edge(u, v));
        }
        Ok(self.tree.cost(u.index())?.label)
    }

    /// Overwrites the label of every edge on the tree path from `u` to `v`.
    pub fn set_path_labels(&mut self, u: VertexId, v: VertexId, label: EdgeId) -> Result<()> {
        self.tree.evert(v.index())?;
        if !self.tree.same_tree(u.index(), v.index())? {
            return Err(Error::state(format!("set_path_labels: {u} and {v} are in different trees")));
        }
        self.tree.update(u.index(), PathAction { label: Some(label), shift: 0 })
    }

    /// Whether the tree paths `u..v` and `u2..v2` have an edge in common.
    pub fn paths_share_edge(&mut self, u: VertexId, v: VertexId, u2: VertexId, v2: VertexId) -> Result<bool> {
        let (u, v, u2, v2) = (u.index(), v.index(), u2.index(), v2.index());
        if u2 == v2 {
            return Ok(false);
        }
        self.tree.evert(u)?;
        for x in [v, u2, v2] {
            if !self.tree.same_tree(u, x)? {
                return Err(Error::state(format!("paths_share_edge: {u} and {x} are in different trees")));
            }
        }
        let shift = |by| PathAction { label: None, shift: by };
        self.tree.update(v, shift(-1))?;
        self.tree.evert(u2)?;
        let w = self.tree.mincost(v2)?;
        let shared = self.tree.cost(w)?.cost == -1;
        self.tree.evert(u)?;
        self.tree.update(v, shift(1))?;
        Ok(shared)
    }

    /// Whether `{u, v}` is a tree edge. Not counted as a primitive.
    pub fn has_edge(&mut self, u: VertexId, v: VertexId) -> Result<bool> {
        self.tree.has_edge(u.index(), v.index())
    }

    /// Cost currently stored on tree edge `{u, v}`. Not counted as a primitive.
    pub fn edge_cost(&mut self, u: VertexId, v: VertexId) -> Result<i32> {
        let value = self.tree.edge_value(u.index(), v.index())?;
        value.map(|x| x.cost).ok_or_else(|| not_an_edge(u, v))
    }

    /// Label of tree edge `{u, v}`, or `None` if it is not a tree edge. Not
    /// counted as a primitive.
    pub fn peek_label(&mut self, u: VertexId, v: VertexId) -> Result<Option<EdgeId>> {
        Ok(self.tree.edge_value(u.index(), v.index())?.map(|x| x.label))
    }
}

fn not_an_edge(u: VertexId, v: VertexId) -> Error {
    Error::state(format!("{{{u}, {v}}} is not a tree edge"))
}
