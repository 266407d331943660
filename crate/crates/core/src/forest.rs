//! Leaf-labeled phylogenetic trees and forests, their ordering disciplines,
//! parity, goodness, and weighted sums.
//!
//! A phylogenetic tree is rooted, has no vertex with exactly one child, and
//! carries an injective labeling of its leaves (an isolated root is a leaf).
//! Forests are unordered collections of such trees whose labels partition
//! `[n]`; we store components sorted by the `ℓ_max` label of their roots.
//!
//! The canonical (unordered-children) form keeps each sibling list sorted
//! ascending by `ℓ_max`, which is exactly the increasing decoration — so the
//! increasingly ordered class enumerates one-to-one with canonical forms,
//! while min-first and linear decorations fan out from them.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::json;

use crate::error::{Error, Result};
use crate::partitions::{for_each_partition_bounded, for_each_partition_into};
use crate::restriction::{RestrictionSet, Stretched};

/// Ordering discipline for sibling lists.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderingKind {
    /// Each sibling list ascends in `ℓ_max`; exactly one decoration per tree.
    Increasing,
    /// The left-most sibling carries the least `ℓ_min`; `Π (d(v)−1)!`
    /// decorations per tree.
    MinFirst,
    /// Unconstrained; `Π d(v)!` decorations per tree.
    Linear,
}

impl OrderingKind {
    pub fn name(&self) -> &'static str {
        match self {
            OrderingKind::Increasing => "increasing",
            OrderingKind::MinFirst => "minfirst",
            OrderingKind::Linear => "linear",
        }
    }
}

/// Parity of the internal sequence `(n_i)` with `d(v_i) = s_d(n_i)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn flipped(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    pub fn of_sum(total: u64) -> Parity {
        if total % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// A rooted leaf-labeled tree with an ordered child list per vertex.
///
/// `lmax`/`lmin`/`leaves` are caches maintained by the constructors; they
/// always equal recomputation because nodes are immutable once built.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tree {
    label: Option<u32>,
    children: Vec<Tree>,
    lmax: u32,
    lmin: u32,
    leaves: u32,
}

impl Tree {
    pub fn leaf(label: u32) -> Tree {
        Tree {
            label: Some(label),
            children: Vec::new(),
            lmax: label,
            lmin: label,
            leaves: 1,
        }
    }

    /// An internal vertex with the given ordered children.
    pub fn internal(children: Vec<Tree>) -> Tree {
        assert!(
            children.len() >= 2,
            "phylogenetic trees have no vertex with exactly one child"
        );
        let lmax = children.iter().map(|c| c.lmax).max().unwrap();
        let lmin = children.iter().map(|c| c.lmin).min().unwrap();
        let leaves = children.iter().map(|c| c.leaves).sum();
        Tree {
            label: None,
            children,
            lmax,
            lmin,
            leaves,
        }
    }

    /// An internal vertex with children sorted ascending by `ℓ_max`
    /// (the canonical, increasingly ordered form).
    pub fn internal_canonical(mut children: Vec<Tree>) -> Tree {
        children.sort_by_key(|c| c.lmax);
        Tree::internal(children)
    }

    pub fn is_leaf(&self) -> bool {
        self.label.is_some()
    }

    pub fn leaf_label(&self) -> Option<u32> {
        self.label
    }

    pub fn degree(&self) -> usize {
        self.children.len()
    }

    pub fn children(&self) -> &[Tree] {
        &self.children
    }

    pub fn lmax(&self) -> u32 {
        self.lmax
    }

    pub fn lmin(&self) -> u32 {
        self.lmin
    }

    pub fn leaf_count(&self) -> u32 {
        self.leaves
    }

    pub fn vertex_count(&self) -> usize {
        1 + self.children.iter().map(Tree::vertex_count).sum::<usize>()
    }

    pub fn internal_count(&self) -> usize {
        if self.is_leaf() {
            0
        } else {
            1 + self.children.iter().map(Tree::internal_count).sum::<usize>()
        }
    }

    /// Leaf labels in left-to-right order.
    pub fn leaf_labels(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.leaves as usize);
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<u32>) {
        match self.label {
            Some(l) => out.push(l),
            None => self.children.iter().for_each(|c| c.collect_leaves(out)),
        }
    }

    /// Re-sorts every sibling list ascending by `ℓ_max`.
    pub fn canonicalized(&self) -> Tree {
        if self.is_leaf() {
            return self.clone();
        }
        Tree::internal_canonical(self.children.iter().map(Tree::canonicalized).collect())
    }

    /// Does this tree satisfy the given ordering discipline?
    pub fn satisfies_ordering(&self, kind: OrderingKind) -> bool {
        if self.is_leaf() {
            return true;
        }
        let ok = match kind {
            OrderingKind::Increasing => self.children.windows(2).all(|w| w[0].lmax < w[1].lmax),
            OrderingKind::MinFirst => {
                let least = self.children.iter().map(|c| c.lmin).min().unwrap();
                self.children[0].lmin == least
            }
            OrderingKind::Linear => true,
        };
        ok && self.children.iter().all(|c| c.satisfies_ordering(kind))
    }

    /// Are all nonzero down-degrees in the stretched set?
    pub fn degrees_in(&self, rd: &Stretched<'_>) -> bool {
        if self.is_leaf() {
            return true;
        }
        rd.contains(self.degree() as u64) && self.children.iter().all(|c| c.degrees_in(rd))
    }

    /// The internal-sequence sum `Σ n_i` where `d(v_i) = s_d(n_i)`.
    /// For `d = 1` and a single tree this is the number of edges.
    pub fn internal_sum(&self, d: u64) -> u64 {
        if self.is_leaf() {
            return 0;
        }
        let deg = self.degree() as u64;
        assert!(
            (deg - 1) % d == 0,
            "degree {deg} is not on the progression of s_{d}"
        );
        let n_i = (deg - 1) / d + 1;
        n_i + self.children.iter().map(|c| c.internal_sum(d)).sum::<u64>()
    }

    pub fn parity(&self, d: u64) -> Parity {
        Parity::of_sum(self.internal_sum(d))
    }

    /// Preorder walk carrying the left-odd-ancestry chain state: calls
    /// `f(vertex, preorder_index, chain_len)` where `chain_len` is the length
    /// of the maximal chain of "left-most child of an `s_d(2)`-degree parent"
    /// links directly above the vertex.
    fn walk_with_chain(&self, d: u64, f: &mut dyn FnMut(&Tree, usize, u32)) {
        fn go(
            v: &Tree,
            chain: u32,
            idx: &mut usize,
            sd2: usize,
            f: &mut dyn FnMut(&Tree, usize, u32),
        ) {
            f(v, *idx, chain);
            *idx += 1;
            let extend = v.degree() == sd2;
            for (i, c) in v.children.iter().enumerate() {
                let child_chain = if extend && i == 0 { chain + 1 } else { 0 };
                go(c, child_chain, idx, sd2, f);
            }
        }
        let sd2 = (d + 1) as usize;
        let mut idx = 0;
        go(self, 0, &mut idx, sd2, f);
    }

    /// `s_d(2)`-left-odd ancestry per vertex, indexed by preorder position.
    /// A vertex has it exactly when its maximal left-most-child chain through
    /// `s_d(2)`-degree parents has odd length.
    pub fn left_odd_ancestry_flags(&self, d: u64) -> Vec<bool> {
        let mut flags = Vec::with_capacity(self.vertex_count());
        self.walk_with_chain(d, &mut |_, _, chain| flags.push(chain % 2 == 1));
        flags
    }

    /// Degrees per vertex in preorder (0 for leaves).
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.vertex_count());
        fn go(v: &Tree, out: &mut Vec<usize>) {
            out.push(v.degree());
            v.children.iter().for_each(|c| go(c, out));
        }
        go(self, &mut out);
        out
    }
}

/// Context for goodness checks: the stretched degree sets derived from `R`.
struct GoodnessContext {
    sd2: usize,
    a_degrees: Vec<usize>,
    b_degrees: Vec<usize>,
}

impl GoodnessContext {
    fn new(set: &RestrictionSet, d: u64) -> Result<Self> {
        if !set.contains(1) {
            return Err(Error::Domain("goodness requires 1 ∈ R".into()));
        }
        if !set.has_no_exposed_odds() {
            return Err(Error::Domain("goodness requires R with no exposed odds".into()));
        }
        let e = set.endpoints();
        let stretch = |m: u64| (d * (m - 1) + 1) as usize;
        Ok(GoodnessContext {
            sd2: stretch(2),
            a_degrees: e.a_set.iter().map(|&m| stretch(m)).collect(),
            b_degrees: e.b_set.iter().map(|&m| stretch(m)).collect(),
        })
    }

    /// The per-vertex goodness condition given the ancestry flag.
    fn vertex_ok(&self, degree: usize, ancestry: bool) -> bool {
        if degree == 0 {
            return true;
        }
        if ancestry {
            self.b_degrees.contains(&degree)
        } else {
            degree == self.sd2 || self.a_degrees.contains(&degree)
        }
    }
}

fn tree_is_good(tree: &Tree, ctx: &GoodnessContext, d: u64) -> bool {
    let mut good = true;
    tree.walk_with_chain(d, &mut |v, _, chain| {
        if good && !ctx.vertex_ok(v.degree(), chain % 2 == 1) {
            good = false;
        }
    });
    good
}

/// An unordered collection of trees whose leaf labels are injective across
/// components; stored sorted by the root `ℓ_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Forest {
    trees: Vec<Tree>,
}

impl Forest {
    pub fn new(mut trees: Vec<Tree>) -> Forest {
        trees.sort_by_key(|t| t.lmax());
        Forest { trees }
    }

    pub fn trees(&self) -> &[Tree] {
        &self.trees
    }

    pub fn component_count(&self) -> usize {
        self.trees.len()
    }

    pub fn leaf_count(&self) -> u32 {
        self.trees.iter().map(Tree::leaf_count).sum()
    }

    pub fn parity(&self, d: u64) -> Parity {
        Parity::of_sum(self.trees.iter().map(|t| t.internal_sum(d)).sum())
    }

    /// `s_d(2)`-left-odd ancestry of the vertex at `preorder` within the
    /// component at `tree_index`.
    pub fn has_left_odd_ancestry(&self, tree_index: usize, preorder: usize, d: u64) -> bool {
        self.trees[tree_index].left_odd_ancestry_flags(d)[preorder]
    }

    /// Emits the round-trip JSON form: one vertex record per node with
    /// preorder id, parent id, rank among its siblings, and the leaf label.
    pub fn to_json(&self) -> serde_json::Value {
        let trees: Vec<serde_json::Value> = self
            .trees
            .iter()
            .map(|t| {
                let mut vertices = Vec::new();
                fn go(
                    v: &Tree,
                    parent: Option<usize>,
                    rank: usize,
                    vertices: &mut Vec<serde_json::Value>,
                ) {
                    let id = vertices.len();
                    vertices.push(json!({
                        "id": id,
                        "parent": parent,
                        "rank": rank,
                        "label": v.leaf_label(),
                    }));
                    for (i, c) in v.children().iter().enumerate() {
                        go(c, Some(id), i, vertices);
                    }
                }
                go(t, None, 0, &mut vertices);
                json!({ "vertices": vertices })
            })
            .collect();
        json!({
            "n": self.leaf_count(),
            "k": self.component_count(),
            "trees": trees,
        })
    }

    /// Parses the JSON form emitted by [`Forest::to_json`]; inverse to it on
    /// canonical storage order.
    pub fn from_json(value: &serde_json::Value) -> Result<Forest> {
        let trees_json = value["trees"]
            .as_array()
            .ok_or_else(|| Error::Parse("forest JSON needs a \"trees\" array".into()))?;
        let mut trees = Vec::new();
        for t in trees_json {
            trees.push(tree_from_json(t)?);
        }
        let forest = Forest { trees };
        let mut labels: Vec<u32> = forest.trees.iter().flat_map(|t| t.leaf_labels()).collect();
        labels.sort_unstable();
        if labels.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Parse("leaf labels must be injective".into()));
        }
        Ok(forest)
    }

    /// GraphViz DOT form; `ordering=out` preserves sibling order.
    pub fn to_dot(&self, graph_name: &str) -> String {
        let mut out = format!("digraph {graph_name} {{\n  ordering=out;\n  node [shape=circle];\n");
        for (ti, tree) in self.trees.iter().enumerate() {
            fn go(v: &Tree, ti: usize, next: &mut usize, out: &mut String) -> usize {
                let id = *next;
                *next += 1;
                match v.leaf_label() {
                    Some(l) => {
                        let _ = writeln!(out, "  t{ti}_v{id} [label=\"{l}\"];");
                    }
                    None => {
                        let _ = writeln!(out, "  t{ti}_v{id} [label=\"\"];");
                    }
                }
                for c in v.children() {
                    let cid = go(c, ti, next, out);
                    let _ = writeln!(out, "  t{ti}_v{id} -> t{ti}_v{cid};");
                }
                id
            }
            let mut next = 0;
            go(tree, ti, &mut next, &mut out);
        }
        out.push_str("}\n");
        out
    }
}

fn tree_from_json(value: &serde_json::Value) -> Result<Tree> {
    #[derive(Clone)]
    struct Rec {
        parent: Option<usize>,
        rank: usize,
        label: Option<u32>,
        children: Vec<(usize, usize)>, // (rank, id)
    }
    let vertices = value["vertices"]
        .as_array()
        .ok_or_else(|| Error::Parse("tree JSON needs a \"vertices\" array".into()))?;
    let mut recs: Vec<Rec> = Vec::with_capacity(vertices.len());
    for v in vertices {
        recs.push(Rec {
            parent: v["parent"].as_u64().map(|p| p as usize),
            rank: v["rank"].as_u64().unwrap_or(0) as usize,
            label: v["label"].as_u64().map(|l| l as u32),
            children: Vec::new(),
        });
    }
    if recs.is_empty() {
        return Err(Error::Parse("a tree needs at least one vertex".into()));
    }
    let mut root = None;
    for id in 0..recs.len() {
        match recs[id].parent {
            None => {
                if root.replace(id).is_some() {
                    return Err(Error::Parse("a tree must have exactly one root".into()));
                }
            }
            Some(p) => {
                if p >= recs.len() {
                    return Err(Error::Parse(format!("parent {p} out of range")));
                }
                let rank = recs[id].rank;
                recs[p].children.push((rank, id));
            }
        }
    }
    let root = root.ok_or_else(|| Error::Parse("a tree must have a root".into()))?;
    fn build(id: usize, recs: &[Rec], depth: usize) -> Result<Tree> {
        if depth > recs.len() {
            return Err(Error::Parse("cycle in tree JSON".into()));
        }
        let rec = &recs[id];
        if rec.children.is_empty() {
            let label = rec
                .label
                .ok_or_else(|| Error::Parse(format!("leaf {id} has no label")))?;
            return Ok(Tree::leaf(label));
        }
        if rec.children.len() == 1 {
            return Err(Error::Parse(format!(
                "vertex {id} has exactly one child; phylogenetic trees forbid this"
            )));
        }
        let mut ordered = rec.children.clone();
        ordered.sort_by_key(|&(rank, _)| rank);
        let children = ordered
            .into_iter()
            .map(|(_, cid)| build(cid, recs, depth + 1))
            .collect::<Result<Vec<Tree>>>()?;
        Ok(Tree::internal(children))
    }
    build(root, &recs, 0)
}

/// True iff every vertex of the forest satisfies the goodness discipline:
/// away from `s_d(2)`-left-odd ancestry a non-leaf needs degree `s_d(2)` or
/// `s_d(a)` for `a ∈ a(R)`; with ancestry it must be a leaf or have degree
/// `s_d(b)` for `b ∈ b(R)`.
pub fn is_good(forest: &Forest, set: &RestrictionSet, d: u64) -> Result<bool> {
    let ctx = GoodnessContext::new(set, d)?;
    Ok(forest.trees.iter().all(|t| tree_is_good(t, &ctx, d)))
}

/// The simplified goodness criterion available when `3 ∈ R`: the ancestry
/// clause degenerates to "is the left-most child of an `s_d(2)`-degree
/// vertex". Must agree with [`is_good`] whenever `3 ∈ R`.
pub fn is_good_via_claim3(forest: &Forest, set: &RestrictionSet, d: u64) -> Result<bool> {
    if !set.contains(3) {
        return Err(Error::Domain("the claim-3 criterion requires 3 ∈ R".into()));
    }
    let ctx = GoodnessContext::new(set, d)?;
    fn check(v: &Tree, left_of_sd2: bool, ctx: &GoodnessContext) -> bool {
        if !ctx.vertex_ok(v.degree(), left_of_sd2) {
            return false;
        }
        let extend = v.degree() == ctx.sd2;
        v.children()
            .iter()
            .enumerate()
            .all(|(i, c)| check(c, extend && i == 0, ctx))
    }
    Ok(forest.trees.iter().all(|t| check(t, false, &ctx)))
}

/// Enumeration caps; override through the CLI's `--cap` or explicitly here.
#[derive(Clone, Copy, Debug)]
pub struct EnumCaps {
    /// Leaf cap for single-tree enumeration.
    pub trees: u64,
    /// Leaf cap for increasing / min-first forest classes.
    pub forests: u64,
    /// Leaf cap for linear forest classes (these grow by `Π d(v)!`).
    pub forests_linear: u64,
}

impl Default for EnumCaps {
    fn default() -> Self {
        EnumCaps {
            trees: 9,
            forests: 9,
            forests_linear: 8,
        }
    }
}

impl EnumCaps {
    /// A uniform override of every cap.
    pub fn uniform(cap: u64) -> Self {
        EnumCaps {
            trees: cap,
            forests: cap,
            forests_linear: cap,
        }
    }

    fn forest_cap(&self, kind: OrderingKind) -> u64 {
        match kind {
            OrderingKind::Linear => self.forests_linear,
            _ => self.forests,
        }
    }
}

/// Streams every phylogenetic tree on the given leaf labels whose internal
/// degrees satisfy `deg_ok`, in canonical form, each exactly once. Recursion:
/// partition the label set at the root, then a tree per block.
fn for_each_tree_on(labels: &[u32], deg_ok: &dyn Fn(usize) -> bool, f: &mut dyn FnMut(Tree)) {
    if labels.len() == 1 {
        f(Tree::leaf(labels[0]));
        return;
    }
    for_each_partition_bounded(labels.len(), 2, labels.len(), &|b| deg_ok(b), &mut |blocks| {
        let label_blocks: Vec<Vec<u32>> = blocks
            .iter()
            .map(|b| b.iter().map(|&i| labels[i]).collect())
            .collect();
        let mut acc: Vec<Tree> = Vec::with_capacity(label_blocks.len());
        product_of_trees(&label_blocks, deg_ok, &mut acc, f);
    });
}

fn product_of_trees(
    blocks: &[Vec<u32>],
    deg_ok: &dyn Fn(usize) -> bool,
    acc: &mut Vec<Tree>,
    f: &mut dyn FnMut(Tree),
) {
    match blocks.split_first() {
        None => f(Tree::internal_canonical(acc.clone())),
        Some((first, rest)) => {
            for_each_tree_on(first, deg_ok, &mut |t| {
                acc.push(t);
                product_of_trees(rest, deg_ok, acc, f);
                acc.pop();
            });
        }
    }
}

/// All phylogenetic trees on leaves `1..=n` in canonical form.
pub fn enumerate_trees(n: u64) -> Result<Vec<Tree>> {
    enumerate_trees_capped(n, EnumCaps::default())
}

pub fn enumerate_trees_capped(n: u64, caps: EnumCaps) -> Result<Vec<Tree>> {
    if n > caps.trees {
        return Err(Error::CapExceeded {
            what: "tree leaves",
            requested: n,
            cap: caps.trees,
        });
    }
    if n == 0 {
        return Err(Error::Domain("trees need at least one leaf".into()));
    }
    let labels: Vec<u32> = (1..=n as u32).collect();
    let mut out = Vec::new();
    for_each_tree_on(&labels, &|_| true, &mut |t| out.push(t));
    Ok(out)
}

/// Streams every canonical forest shape on leaves `1..=n` with `k` components
/// and internal degrees satisfying `deg_ok`. The slice holds the components.
fn for_each_forest_shape(
    n: u64,
    k: u64,
    deg_ok: &dyn Fn(usize) -> bool,
    f: &mut dyn FnMut(&[Tree]),
) {
    if k < 1 || k > n {
        return;
    }
    for_each_partition_into(n as usize, k as usize, &mut |blocks| {
        let label_blocks: Vec<Vec<u32>> = blocks
            .iter()
            .map(|b| b.iter().map(|&i| (i + 1) as u32).collect())
            .collect();
        let mut acc: Vec<Tree> = Vec::with_capacity(label_blocks.len());
        forest_product(&label_blocks, deg_ok, &mut acc, f);
    });
}

fn forest_product(
    blocks: &[Vec<u32>],
    deg_ok: &dyn Fn(usize) -> bool,
    acc: &mut Vec<Tree>,
    f: &mut dyn FnMut(&[Tree]),
) {
    match blocks.split_first() {
        None => f(acc),
        Some((first, rest)) => {
            for_each_tree_on(first, deg_ok, &mut |t| {
                acc.push(t);
                forest_product(rest, deg_ok, acc, f);
                acc.pop();
            });
        }
    }
}

/// Streams every `kind`-ordered decoration of a canonical tree.
pub fn for_each_decoration(tree: &Tree, kind: OrderingKind, f: &mut dyn FnMut(Tree)) {
    if let OrderingKind::Increasing = kind {
        // The canonical form is the unique increasing decoration.
        f(tree.clone());
        return;
    }
    if tree.is_leaf() {
        f(tree.clone());
        return;
    }
    let mut acc: Vec<Tree> = Vec::with_capacity(tree.degree());
    decorate_children(tree, 0, kind, &mut acc, f);
}

fn decorate_children(
    tree: &Tree,
    i: usize,
    kind: OrderingKind,
    acc: &mut Vec<Tree>,
    f: &mut dyn FnMut(Tree),
) {
    if i == tree.degree() {
        emit_orderings(acc, kind, f);
        return;
    }
    for_each_decoration(&tree.children()[i], kind, &mut |c| {
        acc.push(c);
        decorate_children(tree, i + 1, kind, acc, f);
        acc.pop();
    });
}

fn emit_orderings(children: &[Tree], kind: OrderingKind, f: &mut dyn FnMut(Tree)) {
    let deg = children.len();
    match kind {
        OrderingKind::Increasing => {
            let mut sorted = children.to_vec();
            sorted.sort_by_key(|c| c.lmax());
            f(Tree::internal(sorted));
        }
        OrderingKind::MinFirst => {
            let first = (0..deg)
                .min_by_key(|&i| children[i].lmin())
                .expect("non-empty sibling list");
            let rest: Vec<usize> = (0..deg).filter(|&i| i != first).collect();
            permute(&rest, &mut Vec::new(), &mut |perm| {
                let mut ordered = Vec::with_capacity(deg);
                ordered.push(children[first].clone());
                ordered.extend(perm.iter().map(|&i| children[i].clone()));
                f(Tree::internal(ordered));
            });
        }
        OrderingKind::Linear => {
            let all: Vec<usize> = (0..deg).collect();
            permute(&all, &mut Vec::new(), &mut |perm| {
                f(Tree::internal(perm.iter().map(|&i| children[i].clone()).collect()));
            });
        }
    }
}

fn permute(pool: &[usize], chosen: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if chosen.len() == pool.len() {
        f(chosen);
        return;
    }
    for &candidate in pool {
        if !chosen.contains(&candidate) {
            chosen.push(candidate);
            permute(pool, chosen, f);
            chosen.pop();
        }
    }
}

/// Streams every decorated forest of the class
/// `F^{kind}_{R(d)}(n, k)` together with its parity, each exactly once.
pub fn enumerate_decorated_forests(
    n: u64,
    k: u64,
    kind: OrderingKind,
    set: &RestrictionSet,
    d: u64,
    caps: EnumCaps,
    f: &mut dyn FnMut(Forest, Parity),
) -> Result<()> {
    let cap = caps.forest_cap(kind);
    if n > cap {
        return Err(Error::CapExceeded {
            what: "forest leaves",
            requested: n,
            cap,
        });
    }
    let rd = set.stretch(d);
    let deg_ok = |b: usize| rd.contains(b as u64);
    for_each_forest_shape(n, k, &deg_ok, &mut |shape| {
        let parity = Parity::of_sum(shape.iter().map(|t| t.internal_sum(d)).sum());
        let mut acc: Vec<Tree> = Vec::with_capacity(shape.len());
        decorate_forest(shape, 0, kind, &mut acc, &mut |trees| {
            f(Forest::new(trees.to_vec()), parity)
        });
    });
    Ok(())
}

fn decorate_forest(
    shape: &[Tree],
    i: usize,
    kind: OrderingKind,
    acc: &mut Vec<Tree>,
    f: &mut dyn FnMut(&[Tree]),
) {
    if i == shape.len() {
        f(acc);
        return;
    }
    for_each_decoration(&shape[i], kind, &mut |t| {
        acc.push(t);
        decorate_forest(shape, i + 1, kind, acc, f);
        acc.pop();
    });
}

/// Convenience wrapper collecting the decorated stream.
pub fn enumerate_decorated_forests_vec(
    n: u64,
    k: u64,
    kind: OrderingKind,
    set: &RestrictionSet,
    d: u64,
    caps: EnumCaps,
) -> Result<Vec<(Forest, Parity)>> {
    let mut out = Vec::new();
    enumerate_decorated_forests(n, k, kind, set, d, caps, &mut |forest, parity| {
        out.push((forest, parity));
    })?;
    Ok(out)
}

/// Number of `kind` decorations of one canonical tree:
/// 1, `Π (d(v)−1)!`, or `Π d(v)!`.
pub fn decoration_count(tree: &Tree, kind: OrderingKind) -> BigInt {
    match kind {
        OrderingKind::Increasing => BigInt::one(),
        OrderingKind::MinFirst => degree_factorial_product(tree, 1),
        OrderingKind::Linear => degree_factorial_product(tree, 0),
    }
}

fn degree_factorial_product(tree: &Tree, drop: usize) -> BigInt {
    let mut out = BigInt::one();
    fn go(v: &Tree, drop: usize, out: &mut BigInt) {
        if !v.is_leaf() {
            for m in 2..=(v.degree() - drop) {
                *out *= m;
            }
            v.children().iter().for_each(|c| go(c, drop, out));
        }
    }
    go(tree, drop, &mut out);
    out
}

/// Selects the subclass counted by [`count_class`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassFilter {
    Even,
    Odd,
    Good,
    All,
}

impl ClassFilter {
    pub fn name(&self) -> &'static str {
        match self {
            ClassFilter::Even => "even",
            ClassFilter::Odd => "odd",
            ClassFilter::Good => "good",
            ClassFilter::All => "all",
        }
    }
}

/// Cardinality of the filtered decorated-forest class.
///
/// Parity filters enumerate every canonical shape and weight it by the
/// decoration count of the ordering kind (parity is decoration-independent).
/// The goodness filter walks decorations vertex by vertex, abandoning a
/// partial decoration as soon as a vertex violates the degree discipline —
/// the surviving leaves of that walk are exactly the good decorated forests.
pub fn count_class(
    n: u64,
    k: u64,
    kind: OrderingKind,
    set: &RestrictionSet,
    d: u64,
    filter: ClassFilter,
    caps: EnumCaps,
) -> Result<BigInt> {
    let cap = caps.forest_cap(kind);
    if n > cap {
        return Err(Error::CapExceeded {
            what: "forest leaves",
            requested: n,
            cap,
        });
    }
    let rd = set.stretch(d);
    let deg_ok = |b: usize| rd.contains(b as u64);
    let mut total = BigInt::zero();
    match filter {
        ClassFilter::Even | ClassFilter::Odd | ClassFilter::All => {
            let want = match filter {
                ClassFilter::Even => Some(Parity::Even),
                ClassFilter::Odd => Some(Parity::Odd),
                _ => None,
            };
            for_each_forest_shape(n, k, &deg_ok, &mut |shape| {
                if let Some(want) = want {
                    let parity = Parity::of_sum(shape.iter().map(|t| t.internal_sum(d)).sum());
                    if parity != want {
                        return;
                    }
                }
                let mut weight = BigInt::one();
                for tree in shape {
                    weight *= decoration_count(tree, kind);
                }
                total += weight;
            });
        }
        ClassFilter::Good => {
            let ctx = GoodnessContext::new(set, d)?;
            for_each_forest_shape(n, k, &deg_ok, &mut |shape| {
                let mut weight = BigInt::one();
                for tree in shape {
                    let c = count_good_decorations(tree, kind, &ctx);
                    if c == 0 {
                        return;
                    }
                    weight *= c;
                }
                total += weight;
            });
        }
    }
    Ok(total)
}

/// Walks the decoration choices of one tree top-down, counting the complete
/// decorations in which every vertex satisfies the goodness discipline.
/// `chain_odd` tracks the parity of the left-most-child chain above the
/// current vertex, which is all the ancestry flag depends on.
fn count_good_decorations(tree: &Tree, kind: OrderingKind, ctx: &GoodnessContext) -> u128 {
    fn go(v: &Tree, chain_odd: bool, kind: OrderingKind, ctx: &GoodnessContext) -> u128 {
        if !ctx.vertex_ok(v.degree(), chain_odd) {
            return 0;
        }
        if v.is_leaf() {
            return 1;
        }
        let deg = v.degree();
        let extend = deg == ctx.sd2;
        let positions: Vec<usize> = (0..deg).collect();
        // The admissible front choices per kind; the rest of each ordering is
        // walked explicitly so that every decoration is visited.
        let fronts: Vec<usize> = match kind {
            OrderingKind::Increasing => {
                vec![positions
                    .iter()
                    .copied()
                    .min_by_key(|&i| v.children()[i].lmax())
                    .unwrap()]
            }
            OrderingKind::MinFirst => {
                vec![positions
                    .iter()
                    .copied()
                    .min_by_key(|&i| v.children()[i].lmin())
                    .unwrap()]
            }
            OrderingKind::Linear => positions.clone(),
        };
        let mut total = 0u128;
        for &front in &fronts {
            let front_count = go(
                &v.children()[front],
                if extend { !chain_odd } else { false },
                kind,
                ctx,
            );
            if front_count == 0 {
                continue;
            }
            // Every arrangement of the remaining siblings (increasing: the
            // single sorted one) with chain state reset below them.
            let rest: Vec<usize> = positions.iter().copied().filter(|&i| i != front).collect();
            let mut rest_total = 0u128;
            match kind {
                OrderingKind::Increasing => {
                    let mut product = 1u128;
                    for &i in &rest {
                        let c = go(&v.children()[i], false, kind, ctx);
                        if c == 0 {
                            product = 0;
                            break;
                        }
                        product *= c;
                    }
                    rest_total = product;
                }
                _ => {
                    permute(&rest, &mut Vec::new(), &mut |perm| {
                        let mut product = 1u128;
                        for &i in perm {
                            let c = go(&v.children()[i], false, kind, ctx);
                            if c == 0 {
                                product = 0;
                                break;
                            }
                            product *= c;
                        }
                        rest_total += product;
                    });
                }
            }
            total += front_count * rest_total;
        }
        total
    }
    go(tree, false, kind, ctx)
}

/// The `a`-weight of a tree: `(−1)^m a_1^{−(m+n)} Π {a_{d(v)} : d(v) ≠ 0}`
/// where `m` counts internal vertices and `n` leaves. An isolated root
/// weighs `1/a_1`.
pub fn tree_weight(tree: &Tree, a: &[BigRational]) -> Result<BigRational> {
    if a.len() < 2 || a[1].is_zero() {
        return Err(Error::Domain("tree weights need a_1 ≠ 0".into()));
    }
    let m = tree.internal_count() as u64;
    let n = tree.leaf_count() as u64;
    let mut product = BigRational::one();
    let mut ok = true;
    fn collect(v: &Tree, a: &[BigRational], product: &mut BigRational, ok: &mut bool) {
        if !*ok {
            return;
        }
        if !v.is_leaf() {
            match a.get(v.degree()) {
                Some(value) => *product *= value,
                None => {
                    *ok = false;
                    return;
                }
            }
            v.children().iter().for_each(|c| collect(c, a, product, ok));
        }
    }
    collect(tree, a, &mut product, &mut ok);
    if !ok {
        return Err(Error::Domain(
            "the weight sequence is shorter than the maximum degree".into(),
        ));
    }
    let sign = if m % 2 == 0 {
        BigRational::one()
    } else {
        -BigRational::one()
    };
    let a1_pow = a[1].pow((m + n) as i32);
    Ok(sign * product / a1_pow)
}

/// Trees with up to this many leaves are summed by [`lagrange_tree_sum`].
pub const LAGRANGE_CAP: u64 = 8;

/// `Σ_{T ∈ T(n)} w_a(T)`; equal to the EGF coefficient `b_n = n!·[x^n] a⁻¹`
/// of the compositional inverse of the sequence's EGF.
pub fn lagrange_tree_sum(n: u64, a: &[BigRational]) -> Result<BigRational> {
    if n > LAGRANGE_CAP {
        return Err(Error::CapExceeded {
            what: "lagrange tree sum n",
            requested: n,
            cap: LAGRANGE_CAP,
        });
    }
    if a.len() < 2 || a[1].is_zero() {
        return Err(Error::Domain("tree weights need a_1 ≠ 0".into()));
    }
    let labels: Vec<u32> = (1..=n as u32).collect();
    let mut total = BigRational::zero();
    let mut err = None;
    for_each_tree_on(&labels, &|_| true, &mut |t| {
        if err.is_some() {
            return;
        }
        match tree_weight(&t, a) {
            Ok(w) => total += w,
            Err(e) => err = Some(e),
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(total),
    }
}

/// Relabels leaves through the given map, rebuilding caches.
pub(crate) fn relabel(tree: &Tree, map: &BTreeMap<u32, u32>) -> Tree {
    match tree.leaf_label() {
        Some(l) => Tree::leaf(map[&l]),
        None => Tree::internal(tree.children().iter().map(|c| relabel(c, map)).collect()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::restriction::parse_restriction;
    use num_rational::BigRational;
    use num_traits::ToPrimitive;

    fn rational(p: i64, q: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    fn leaf(l: u32) -> Tree {
        Tree::leaf(l)
    }

    fn node(children: Vec<Tree>) -> Tree {
        Tree::internal(children)
    }

    /// Figure-style tree (a): w1(w2(w3(6,5,4,3), 2), 1) with left-to-right
    /// child order as drawn.
    fn figure_tree_a() -> Tree {
        let w3 = node(vec![leaf(6), leaf(5), leaf(4), leaf(3)]);
        let w2 = node(vec![w3, leaf(2)]);
        node(vec![w2, leaf(1)])
    }

    /// Figure-style tree (b): a chain of three degree-2 vertices ending in a
    /// degree-4 vertex.
    fn figure_tree_b() -> Tree {
        let w4 = node(vec![leaf(7), leaf(6), leaf(5), leaf(4)]);
        let w3 = node(vec![w4, leaf(3)]);
        let w2 = node(vec![w3, leaf(2)]);
        node(vec![w2, leaf(1)])
    }

    /// Figure-style tree (c): a chain of four degree-2 vertices ending in a
    /// degree-4 vertex.
    fn figure_tree_c() -> Tree {
        let w5 = node(vec![leaf(8), leaf(7), leaf(6), leaf(5)]);
        let w4 = node(vec![w5, leaf(4)]);
        let w3 = node(vec![w4, leaf(3)]);
        let w2 = node(vec![w3, leaf(2)]);
        node(vec![w2, leaf(1)])
    }

    #[test]
    fn caches_match_recomputation() {
        let t = figure_tree_c();
        fn verify(v: &Tree) {
            let labels = v.leaf_labels();
            assert_eq!(v.lmax(), *labels.iter().max().unwrap());
            assert_eq!(v.lmin(), *labels.iter().min().unwrap());
            assert_eq!(v.leaf_count() as usize, labels.len());
            v.children().iter().for_each(verify);
        }
        verify(&t);
    }

    #[test]
    fn left_odd_ancestry_on_figure_trees() {
        // Preorder: 0 = w1, 1 = w2, 2 = w3 in tree (a); deeper chains in (b)/(c).
        let flags = figure_tree_a().left_odd_ancestry_flags(1);
        let expected_true: Vec<usize> = vec![1]; // only w2
        for (i, &flag) in flags.iter().enumerate() {
            assert_eq!(flag, expected_true.contains(&i), "tree (a) vertex {i}");
        }

        let flags = figure_tree_b().left_odd_ancestry_flags(1);
        // w2 at preorder 1, w4 at preorder 3.
        for (i, &flag) in flags.iter().enumerate() {
            assert_eq!(flag, i == 1 || i == 3, "tree (b) vertex {i}");
        }

        let flags = figure_tree_c().left_odd_ancestry_flags(1);
        for (i, &flag) in flags.iter().enumerate() {
            assert_eq!(flag, i == 1 || i == 3, "tree (c) vertex {i}");
        }

        // Roots never have ancestry.
        assert!(!figure_tree_a().left_odd_ancestry_flags(1)[0]);
    }

    #[test]
    fn goodness_on_figure_trees() {
        let set = parse_restriction("1,2,4-6").unwrap();
        let f = |t: Tree| Forest::new(vec![t]);
        assert!(is_good(&f(figure_tree_a()), &set, 1).unwrap());
        assert!(!is_good(&f(figure_tree_b()), &set, 1).unwrap());
        assert!(is_good(&f(figure_tree_c()), &set, 1).unwrap());

        // With R = [4] none of the figure trees are good.
        let r4 = parse_restriction("1-4").unwrap();
        assert!(!is_good(&f(figure_tree_a()), &r4, 1).unwrap());
        assert!(!is_good(&f(figure_tree_b()), &r4, 1).unwrap());
        assert!(!is_good(&f(figure_tree_c()), &r4, 1).unwrap());
    }

    #[test]
    fn binary_trees_are_good_for_r12() {
        let set = parse_restriction("1,2").unwrap();
        for tree in enumerate_trees(5).unwrap() {
            if !tree.degrees_in(&set.stretch(1)) {
                continue;
            }
            // Any decoration of a binary tree is good.
            for_each_decoration(&tree, OrderingKind::Linear, &mut |t| {
                assert!(is_good(&Forest::new(vec![t]), &set, 1).unwrap());
            });
        }
    }

    #[test]
    fn tree_counts_match_the_total_partition_recurrence() {
        // Independent oracle: the EGF T(x) of phylogenetic trees satisfies
        // 2T = x + e^T − 1, giving τ_n = δ_{n,1} + Σ_{k ≥ 2} [x^n] T^k / k!.
        use crate::series::PowerSeries;
        let order = 7usize;
        let mut t = PowerSeries::zero(order);
        for n in 1..=order {
            let mut coeff = if n == 1 { rational(1, 1) } else { rational(0, 1) };
            let mut power = t.multiply(&t).unwrap();
            let mut k_fact = BigInt::from(2);
            let mut k = 2u64;
            loop {
                coeff += power.coeff(n) / BigRational::from_integer(k_fact.clone());
                k += 1;
                if k as usize > n {
                    break;
                }
                power = power.multiply(&t).unwrap();
                k_fact *= k;
            }
            t = PowerSeries::from_coeffs(
                (0..=order)
                    .map(|i| if i == n { coeff.clone() } else { t.coeff(i) })
                    .collect(),
            )
            .unwrap();
        }
        let expected: Vec<u64> = (1..=order)
            .map(|n| {
                (t.coeff(n) * BigRational::from_integer(crate::series::factorial(n as u64)))
                    .to_integer()
                    .to_u64()
                    .unwrap()
            })
            .collect();
        assert_eq!(expected[..4], [1, 1, 4, 26], "oracle sanity");
        for n in 1..=7u64 {
            let trees = enumerate_trees(n).unwrap();
            assert_eq!(trees.len() as u64, expected[(n - 1) as usize], "n = {n}");
            // No duplicates in canonical form.
            let mut seen = std::collections::HashSet::new();
            for t in &trees {
                assert!(seen.insert(format!("{t:?}")));
                assert!(t.satisfies_ordering(OrderingKind::Increasing));
            }
        }
        assert_eq!(enumerate_trees(1).unwrap().len(), 1);
        assert!(enumerate_trees(10).is_err());
    }

    #[test]
    fn decorated_enumeration_examples() {
        // A single leaf: exactly one forest, for any kind.
        for kind in [OrderingKind::Increasing, OrderingKind::MinFirst, OrderingKind::Linear] {
            let all = enumerate_decorated_forests_vec(
                1,
                1,
                kind,
                &RestrictionSet::all(),
                1,
                EnumCaps::default(),
            )
            .unwrap();
            assert_eq!(all.len(), 1);
            assert_eq!(all[0].1, Parity::Even);
        }

        // Binary increasing trees on 3 leaves: 3 forests, all even.
        let set = parse_restriction("1,2").unwrap();
        let all = enumerate_decorated_forests_vec(
            3,
            1,
            OrderingKind::Increasing,
            &set,
            1,
            EnumCaps::default(),
        )
        .unwrap();
        assert_eq!(all.len(), 3);
        assert!(all.iter().all(|(_, p)| *p == Parity::Even));
    }

    #[test]
    fn ordering_counts_match_stream_lengths() {
        // Π-of-factorials decoration counts versus the materializing stream.
        let set = RestrictionSet::all();
        for n in 1..=6u64 {
            for tree in enumerate_trees(n).unwrap() {
                for kind in [OrderingKind::Increasing, OrderingKind::MinFirst, OrderingKind::Linear] {
                    let mut streamed = 0u64;
                    let mut seen = std::collections::HashSet::new();
                    for_each_decoration(&tree, kind, &mut |t| {
                        streamed += 1;
                        assert!(t.satisfies_ordering(kind));
                        assert!(seen.insert(format!("{t:?}")), "duplicate decoration");
                    });
                    assert_eq!(
                        BigInt::from(streamed),
                        decoration_count(&tree, kind),
                        "n={n} kind={kind:?}"
                    );
                }
            }
        }
        let _ = set;
    }

    #[test]
    fn good_counts_for_unrestricted_trees() {
        // |T^{i.o., good}_ℕ(n)| = (n−1)!, |T^{m.o., good}_ℕ(n)| = 1,
        // |T^{l.o., good}_ℕ(n)| = n!.
        let set = RestrictionSet::all();
        let caps = EnumCaps::default();
        for n in 1..=6u64 {
            let inc = count_class(n, 1, OrderingKind::Increasing, &set, 1, ClassFilter::Good, caps)
                .unwrap();
            let min = count_class(n, 1, OrderingKind::MinFirst, &set, 1, ClassFilter::Good, caps)
                .unwrap();
            let lin = count_class(n, 1, OrderingKind::Linear, &set, 1, ClassFilter::Good, caps)
                .unwrap();
            assert_eq!(inc, crate::series::factorial(n - 1));
            assert_eq!(min, BigInt::one());
            assert_eq!(lin, crate::series::factorial(n));
        }
    }

    #[test]
    fn good_count_agrees_with_filtered_stream() {
        // The pruned goodness walk must count exactly the good members of the
        // full decorated stream.
        let caps = EnumCaps::default();
        for text in ["1,2", "1-4", "1,2,4-6", "1-"] {
            let set = parse_restriction(text).unwrap();
            for kind in [OrderingKind::Increasing, OrderingKind::MinFirst, OrderingKind::Linear] {
                for n in 1..=5u64 {
                    for k in 1..=n {
                        let mut by_stream = 0u64;
                        enumerate_decorated_forests(n, k, kind, &set, 1, caps, &mut |forest, _| {
                            if is_good(&forest, &set, 1).unwrap() {
                                by_stream += 1;
                            }
                        })
                        .unwrap();
                        let counted =
                            count_class(n, k, kind, &set, 1, ClassFilter::Good, caps).unwrap();
                        assert_eq!(
                            counted,
                            BigInt::from(by_stream),
                            "R={text} kind={kind:?} n={n} k={k}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn claim3_agrees_with_goodness() {
        let caps = EnumCaps::default();
        // 3 ∈ R cases: agreement on every decorated tree.
        for (text, d) in [("1-4", 1u64), ("1-", 2), ("1-", 1)] {
            let set = parse_restriction(text).unwrap();
            if !set.contains(3) {
                continue;
            }
            for n in 1..=6u64 {
                enumerate_decorated_forests(n, 1, OrderingKind::Linear, &set, d, caps, &mut |forest, _| {
                    assert_eq!(
                        is_good(&forest, &set, d).unwrap(),
                        is_good_via_claim3(&forest, &set, d).unwrap(),
                        "R={text} d={d} n={n}"
                    );
                })
                .unwrap();
            }
        }
        // Single leaf is good under the claim-3 criterion.
        let set = parse_restriction("1-4").unwrap();
        let single = Forest::new(vec![leaf(1)]);
        assert!(is_good_via_claim3(&single, &set, 1).unwrap());
        // 3 ∉ R is rejected.
        let set = parse_restriction("1,2").unwrap();
        assert!(is_good_via_claim3(&single, &set, 1).is_err());
    }

    #[test]
    fn empty_classes_when_d_does_not_divide() {
        let set = RestrictionSet::all();
        let caps = EnumCaps::default();
        for d in 2..=3u64 {
            for n in 1..=7u64 {
                for k in 1..=n {
                    if (n - k) % d != 0 {
                        let mut count = 0u64;
                        enumerate_decorated_forests(
                            n,
                            k,
                            OrderingKind::Increasing,
                            &set,
                            d,
                            caps,
                            &mut |_, _| count += 1,
                        )
                        .unwrap();
                        assert_eq!(count, 0, "d={d} n={n} k={k}");
                    }
                }
            }
        }
    }

    #[test]
    fn weight_examples() {
        let ones: Vec<BigRational> = (0..8).map(|_| rational(1, 1)).collect();
        assert_eq!(tree_weight(&leaf(1), &ones).unwrap(), rational(1, 1));

        let cherry = node(vec![leaf(1), leaf(2)]);
        assert_eq!(tree_weight(&cherry, &ones).unwrap(), rational(-1, 1));

        // 3-star with a = (1, 0, 5): weight (−1)·a_3 = −5.
        let mut a = vec![rational(0, 1), rational(1, 1), rational(0, 1), rational(5, 1)];
        let star = node(vec![leaf(1), leaf(2), leaf(3)]);
        assert_eq!(tree_weight(&star, &a).unwrap(), rational(-5, 1));
        a[1] = rational(0, 1);
        assert!(tree_weight(&star, &a).is_err());
    }

    #[test]
    fn lagrange_tree_sums_match_reversion() {
        use crate::series::PowerSeries;
        // n = 1: 1/a_1; n = 2 with a = (1,1,0,…): the single cherry gives −1.
        let a: Vec<BigRational> = vec![
            rational(0, 1),
            rational(1, 1),
            rational(1, 1),
            rational(0, 1),
            rational(0, 1),
            rational(0, 1),
        ];
        assert_eq!(lagrange_tree_sum(1, &a).unwrap(), rational(1, 1));
        assert_eq!(lagrange_tree_sum(2, &a).unwrap(), rational(-1, 1));

        // Arbitrary rational sequence at n = 4 versus the reversion route.
        let a: Vec<BigRational> = vec![
            rational(0, 1),
            rational(1, 1),
            rational(-1, 2),
            rational(3, 1),
            rational(2, 5),
        ];
        let order = 5usize;
        let f = PowerSeries::from_coeffs(
            (0..=order)
                .map(|m| {
                    if m == 0 || m > 4 {
                        rational(0, 1)
                    } else {
                        a[m].clone()
                            / BigRational::from_integer(crate::series::factorial(m as u64))
                    }
                })
                .collect(),
        )
        .unwrap();
        let g = f.revert().unwrap();
        for n in 1..=4u64 {
            assert_eq!(lagrange_tree_sum(n, &a).unwrap(), g.egf_coeff(n as usize), "n={n}");
        }
        assert!(lagrange_tree_sum(9, &a).is_err());
    }

    #[test]
    fn json_round_trip_and_dot() {
        let forest = Forest::new(vec![figure_tree_a(), leaf(7)]);
        let v = forest.to_json();
        let back = Forest::from_json(&v).unwrap();
        assert_eq!(back, forest);

        let dot = forest.to_dot("f");
        assert!(dot.contains("ordering=out"));
        assert!(dot.contains("->"));

        // A unary vertex is rejected on parse.
        let bad = json!({ "trees": [ { "vertices": [
            { "id": 0, "parent": null, "rank": 0, "label": null },
            { "id": 1, "parent": 0, "rank": 0, "label": 1 },
        ]}]});
        assert!(Forest::from_json(&bad).is_err());
    }

    #[test]
    fn good_forests_are_even() {
        let caps = EnumCaps::default();
        for text in ["1,2", "1-4", "1,2,4-6", "1-"] {
            let set = parse_restriction(text).unwrap();
            for n in 1..=6u64 {
                for k in 1..=n {
                    enumerate_decorated_forests(n, k, OrderingKind::Linear, &set, 1, caps, &mut |forest, parity| {
                        if is_good(&forest, &set, 1).unwrap() {
                            assert_eq!(parity, Parity::Even, "R={text} n={n} k={k}");
                        }
                    })
                    .unwrap();
                }
            }
        }
    }
}
