//! Sleator–Tarjan link-cut trees over splay trees.
//!
//! Tree edges are materialised as their own nodes sitting between the two
//! vertex nodes they join, so an edge keeps its value when `evert` flips the
//! orientation of a path. Vertex nodes carry no value.
//!
//! Inside a splay tree the left subtree is shallower (closer to the root of
//! the represented tree) and the right subtree is deeper.

use std::fmt;

use crate::error::{Error, Result};

const NIL: u32 = u32::MAX;

/// Values, path aggregates and lazy path actions carried by a forest.
///
/// `merge` must be commutative because `evert` reverses paths without
/// recomputing aggregates.
pub trait PathAlgebra {
    type Value: Copy + fmt::Debug + PartialEq;
    type Agg: Copy + fmt::Debug;
    type Tag: Copy + fmt::Debug;

    fn empty() -> Self::Agg;
    fn single(v: Self::Value) -> Self::Agg;
    fn merge(a: Self::Agg, b: Self::Agg) -> Self::Agg;
    fn apply(tag: Self::Tag, v: Self::Value) -> Self::Value;
    fn apply_agg(tag: Self::Tag, a: Self::Agg) -> Self::Agg;
    /// The action of applying `inner` first, then `outer`.
    fn compose(outer: Self::Tag, inner: Self::Tag) -> Self::Tag;
}

/// Integer costs with path addition and path minimum.
#[derive(Debug, Clone, Copy)]
pub enum Costs {}

impl PathAlgebra for Costs {
    type Value = i32;
    type Agg = i32;
    type Tag = i32;

    fn empty() -> i32 {
        i32::MAX
    }
    fn single(v: i32) -> i32 {
        v
    }
    fn merge(a: i32, b: i32) -> i32 {
        a.min(b)
    }
    fn apply(tag: i32, v: i32) -> i32 {
        v + tag
    }
    fn apply_agg(tag: i32, a: i32) -> i32 {
        if a == i32::MAX {
            a
        } else {
            a + tag
        }
    }
    fn compose(outer: i32, inner: i32) -> i32 {
        outer + inner
    }
}

/// Algebras whose aggregate is the minimum of a per-value key, which lets
/// [`LinkCutTree::mincost`] locate the minimising edge.
pub trait MinPath: PathAlgebra<Agg = <Self as MinPath>::Key> {
    type Key: Copy + fmt::Debug + PartialEq;

    fn key(v: Self::Value) -> Self::Key;
}

impl MinPath for Costs {
    type Key = i32;

    fn key(v: i32) -> i32 {
        v
    }
}

/// Arbitrary labels under the left-zero semigroup `x ⊕ y = x`: a path action
/// simply overwrites every label on the path.
#[derive(Debug, Clone, Copy)]
pub struct Labels<T>(std::marker::PhantomData<T>);

impl<T: Copy + fmt::Debug + PartialEq> PathAlgebra for Labels<T> {
    type Value = T;
    type Agg = ();
    type Tag = T;

    fn empty() {}
    fn single(_: T) {}
    fn merge(_: (), _: ()) {}
    fn apply(tag: T, _: T) -> T {
        tag
    }
    fn apply_agg(_: T, _: ()) {}
    fn compose(outer: T, _: T) -> T {
        outer
    }
}

#[derive(Clone)]
struct Node<A: PathAlgebra> {
    ch: [u32; 2],
    parent: u32,
    rev: bool,
    value: Option<A::Value>,
    agg: A::Agg,
    tag: Option<A::Tag>,
}

impl<A: PathAlgebra> Node<A> {
    fn vertex() -> Self {
        Node { ch: [NIL; 2], parent: NIL, rev: false, value: None, agg: A::empty(), tag: None }
    }
}

/// A forest of rooted trees over vertices `0..n`, each edge carrying an
/// `A::Value`. Every public primitive bumps [`LinkCutTree::ops`] by one.
#[derive(Clone)]
pub struct LinkCutTree<A: PathAlgebra> {
    nodes: Vec<Node<A>>,
    n_vertices: usize,
    free: Vec<u32>,
    edges: usize,
    ops: u64,
    scratch: Vec<u32>,
}

impl<A: PathAlgebra> fmt::Debug for LinkCutTree<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LinkCutTree")
            .field("vertices", &self.n_vertices)
            .field("edges", &self.edges)
            .field("ops", &self.ops)
            .finish()
    }
}

impl<A: PathAlgebra> LinkCutTree<A> {
    pub fn new(n: usize) -> Self {
        let mut nodes = Vec::with_capacity(2 * n);
        nodes.resize_with(n, Node::vertex);
        LinkCutTree { nodes, n_vertices: n, free: Vec::new(), edges: 0, ops: 0, scratch: Vec::new() }
    }

    pub fn vertex_count(&self) -> usize {
        self.n_vertices
    }

    /// Number of edges currently in the forest.
    pub fn edge_count(&self) -> usize {
        self.edges
    }

    /// Primitive operations performed so far.
    pub fn ops(&self) -> u64 {
        self.ops
    }

    fn check_vertex(&self, v: usize) -> Result<u32> {
        if v < self.n_vertices {
            Ok(v as u32)
        } else {
            Err(Error::state(format!("vertex {v} is not in the forest")))
        }
    }

    // ---- splay machinery -------------------------------------------------

    #[inline]
    fn is_splay_root(&self, x: u32) -> bool {
        let p = self.nodes[x as usize].parent;
        p == NIL || {
            let ch = self.nodes[p as usize].ch;
            ch[0] != x && ch[1] != x
        }
    }

    #[inline]
    fn agg(&self, x: u32) -> A::Agg {
        if x == NIL {
            A::empty()
        } else {
            self.nodes[x as usize].agg
        }
    }

    #[inline]
    fn pull(&mut self, x: u32) {
        let [l, r] = self.nodes[x as usize].ch;
        let own = self.nodes[x as usize].value.map(A::single).unwrap_or_else(A::empty);
        self.nodes[x as usize].agg = A::merge(A::merge(self.agg(l), own), self.agg(r));
    }

    #[inline]
    fn apply_tag(&mut self, x: u32, t: A::Tag) {
        if x == NIL {
            return;
        }
        let node = &mut self.nodes[x as usize];
        node.value = node.value.map(|v| A::apply(t, v));
        node.agg = A::apply_agg(t, node.agg);
        node.tag = Some(match node.tag {
            Some(old) => A::compose(t, old),
            None => t,
        });
    }

    #[inline]
    fn toggle(&mut self, x: u32) {
        if x != NIL {
            self.nodes[x as usize].rev ^= true;
        }
    }

    #[inline]
    fn push(&mut self, x: u32) {
        let node = &mut self.nodes[x as usize];
        if node.rev {
            node.rev = false;
            node.ch.swap(0, 1);
            let [l, r] = node.ch;
            self.toggle(l);
            self.toggle(r);
        }
        if let Some(t) = self.nodes[x as usize].tag.take() {
            let [l, r] = self.nodes[x as usize].ch;
            self.apply_tag(l, t);
            self.apply_tag(r, t);
        }
    }

    fn rotate(&mut self, x: u32) {
        let p = self.nodes[x as usize].parent;
        let g = self.nodes[p as usize].parent;
        let d = (self.nodes[p as usize].ch[1] == x) as usize;
        if !self.is_splay_root(p) {
            let gd = (self.nodes[g as usize].ch[1] == p) as usize;
            self.nodes[g as usize].ch[gd] = x;
        }
        self.nodes[x as usize].parent = g;
        let b = self.nodes[x as usize].ch[d ^ 1];
        self.nodes[p as usize].ch[d] = b;
        if b != NIL {
            self.nodes[b as usize].parent = p;
        }
        self.nodes[x as usize].ch[d ^ 1] = p;
        self.nodes[p as usize].parent = x;
        self.pull(p);
        self.pull(x);
    }

    fn splay(&mut self, x: u32) {
        let mut stack = std::mem::take(&mut self.scratch);
        stack.push(x);
        let mut y = x;
        while !self.is_splay_root(y) {
            y = self.nodes[y as usize].parent;
            stack.push(y);
        }
        while let Some(z) = stack.pop() {
            self.push(z);
        }
        self.scratch = stack;
        while !self.is_splay_root(x) {
            let p = self.nodes[x as usize].parent;
            if !self.is_splay_root(p) {
                let g = self.nodes[p as usize].parent;
                let zigzig = (self.nodes[g as usize].ch[0] == p) == (self.nodes[p as usize].ch[0] == x);
                self.rotate(if zigzig { p } else { x });
            }
            self.rotate(x);
        }
    }

    /// Makes the root-to-`x` path preferred; afterwards `x` is the root of
    /// its splay tree and has no deeper nodes in it.
    fn access(&mut self, x: u32) {
        let mut last = NIL;
        let mut y = x;
        while y != NIL {
            self.splay(y);
            self.nodes[y as usize].ch[1] = last;
            self.pull(y);
            last = y;
            y = self.nodes[y as usize].parent;
        }
        self.splay(x);
    }

    fn extreme(&mut self, mut x: u32, dir: usize) -> u32 {
        loop {
            self.push(x);
            let c = self.nodes[x as usize].ch[dir];
            if c == NIL {
                return x;
            }
            x = c;
        }
    }

    fn find_root(&mut self, x: u32) -> u32 {
        self.access(x);
        let r = self.extreme(x, 0);
        self.splay(r);
        r
    }

    /// Edge node above `x`, splayed to the top of its splay tree.
    fn parent_edge(&mut self, x: u32) -> Option<u32> {
        self.access(x);
        self.push(x);
        let l = self.nodes[x as usize].ch[0];
        if l == NIL {
            return None;
        }
        let z = self.extreme(l, 1);
        self.splay(z);
        Some(z)
    }

    fn parent_vertex(&mut self, x: u32) -> Option<u32> {
        let z = self.parent_edge(x)?;
        self.push(z);
        let l = self.nodes[z as usize].ch[0];
        let p = self.extreme(l, 1);
        self.splay(p);
        Some(p)
    }

    fn evert_raw(&mut self, x: u32) {
        self.access(x);
        self.toggle(x);
        self.push(x);
    }

    fn alloc_edge(&mut self, value: A::Value) -> u32 {
        let node = Node { value: Some(value), agg: A::single(value), ..Node::vertex() };
        self.edges += 1;
        match self.free.pop() {
            Some(z) => {
                self.nodes[z as usize] = node;
                z
            }
            None => {
                self.nodes.push(node);
                (self.nodes.len() - 1) as u32
            }
        }
    }

    // ---- rooted primitives -----------------------------------------------

    /// Root of the tree containing `v`.
    pub fn root(&mut self, v: usize) -> Result<usize> {
        let x = self.check_vertex(v)?;
        self.ops += 1;
        Ok(self.find_root(x) as usize)
    }

    /// Value on the edge from `v` to its parent.
    pub fn cost(&mut self, v: usize) -> Result<A::Value> {
        let x = self.check_vertex(v)?;
        self.ops += 1;
        let z = self.parent_edge(x).ok_or_else(|| Error::state(format!("cost of root {v}")))?;
        Ok(self.nodes[z as usize].value.expect("edge node carries a value"))
    }

    /// Applies `tag` to every edge on the path from `v` to its root.
    pub fn update(&mut self, v: usize, tag: A::Tag) -> Result<()> {
        let x = self.check_vertex(v)?;
        self.ops += 1;
        self.access(x);
        self.apply_tag(x, tag);
        Ok(())
    }

    /// Adds an edge making `v` the parent of the root `u`.
    pub fn link(&mut self, u: usize, v: usize, value: A::Value) -> Result<()> {
        let (x, y) = (self.check_vertex(u)?, self.check_vertex(v)?);
        self.ops += 1;
        self.access(x);
        self.push(x);
        if self.nodes[x as usize].ch[0] != NIL {
            return Err(Error::state(format!("link: {u} is not a root")));
        }
        if self.find_root(y) == x {
            return Err(Error::state(format!("link: {u} and {v} are already in one tree")));
        }
        self.access(x);
        let z = self.alloc_edge(value);
        self.nodes[x as usize].parent = z;
        self.nodes[z as usize].parent = y;
        Ok(())
    }

    /// Deletes the edge from `v` to its parent.
    pub fn cut(&mut self, v: usize) -> Result<()> {
        let x = self.check_vertex(v)?;
        self.ops += 1;
        self.access(x);
        self.push(x);
        let l = self.nodes[x as usize].ch[0];
        if l == NIL {
            return Err(Error::state(format!("cut of root {v}")));
        }
        self.nodes[x as usize].ch[0] = NIL;
        self.nodes[l as usize].parent = NIL;
        self.pull(x);

        let z = self.extreme(l, 1);
        self.splay(z);
        self.push(z);
        let above = self.nodes[z as usize].ch[0];
        debug_assert!(above != NIL && self.nodes[z as usize].ch[1] == NIL);
        self.nodes[above as usize].parent = NIL;
        self.nodes[z as usize] = Node::vertex();
        self.free.push(z);
        self.edges -= 1;
        Ok(())
    }

    /// Re-roots the tree containing `v` at `v`.
    pub fn evert(&mut self, v: usize) -> Result<()> {
        let x = self.check_vertex(v)?;
        self.ops += 1;
        self.evert_raw(x);
        Ok(())
    }

    // ---- uncounted inspection ----------------------------------------------

    /// Whether `u` and `v` lie in one tree. Not counted as a primitive.
    pub fn same_tree(&mut self, u: usize, v: usize) -> Result<bool> {
        let (x, y) = (self.check_vertex(u)?, self.check_vertex(v)?);
        if x == y {
            return Ok(true);
        }
        Ok(self.find_root(x) == self.find_root(y))
    }

    /// Parent of `v` in the current rooting. Not counted as a primitive.
    pub fn parent(&mut self, v: usize) -> Result<Option<usize>> {
        let x = self.check_vertex(v)?;
        Ok(self.parent_vertex(x).map(|p| p as usize))
    }

    /// Whether `{u, v}` is an edge of the forest. Re-roots at `v`; not counted.
    pub fn has_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        let (x, y) = (self.check_vertex(u)?, self.check_vertex(v)?);
        if x == y {
            return Ok(false);
        }
        self.evert_raw(y);
        Ok(self.parent_vertex(x) == Some(y))
    }

    /// Value on edge `{u, v}` if it is in the forest. Re-roots at `v`; not counted.
    pub fn edge_value(&mut self, u: usize, v: usize) -> Result<Option<A::Value>> {
        if !self.has_edge(u, v)? {
            return Ok(None);
        }
        let z = self.parent_edge(u as u32).expect("u has a parent after has_edge");
        Ok(self.nodes[z as usize].value)
    }
}

impl<A: MinPath> LinkCutTree<A> {
    /// The vertex `w` closest to the root whose parent edge has minimum cost
    /// on the path from `v` to the root.
    pub fn mincost(&mut self, v: usize) -> Result<usize> {
        let x = self.check_vertex(v)?;
        self.ops += 1;
        self.access(x);
        self.push(x);
        if self.nodes[x as usize].ch[0] == NIL {
            return Err(Error::state(format!("mincost of root {v}")));
        }
        let target = self.nodes[x as usize].agg;
        let mut y = x;
        let z = loop {
            self.push(y);
            let l = self.nodes[y as usize].ch[0];
            if l != NIL && self.nodes[l as usize].agg == target {
                y = l;
            } else if self.nodes[y as usize].value.map(A::key) == Some(target) {
                break y;
            } else {
                y = self.nodes[y as usize].ch[1];
                debug_assert!(y != NIL);
            }
        };
        self.splay(z);
        self.push(z);
        let below = self.nodes[z as usize].ch[1];
        let w = self.extreme(below, 0);
        self.splay(w);
        Ok(w as usize)
    }
}
