//! The parity-toggling involution `A` on decorated phylogenetic trees.
//!
//! The map scans the right-most path of the input top-down. The first vertex
//! that admits a contraction (degree `s_d(2)`, non-leaf left-most child of
//! degree `s_d(n)` with `n ∉ b(R)`) or an uncontraction (degree `s_d(n)`,
//! `n > 2`, `n ∉ a(R)`) is rewritten and the rest of the tree is untouched.
//! If no such vertex exists, the right-most path — together with the
//! left-most children of its `s_d(2)`-degree vertices — is deleted and the
//! map recurses into the remaining components in ascending root-label order,
//! replacing the first component it does not fix.
//!
//! Fixed points are exactly the `R(d)`-good trees; off the fixed points the
//! map toggles parity and is an involution.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::forest::{is_good, relabel, OrderingKind, Tree};
use crate::restriction::RestrictionSet;

/// One step of an involution trace: zero or more `Recurse` steps followed by
/// exactly one `Contract`, `Uncontract`, or `Fix`.
///
/// `site` is the preorder index (root = 0) of the rewritten vertex within
/// the component the step ran on; rank-compression preserves preorder
/// indices, so a contraction in `T` pairs with an uncontraction at the same
/// site in `A(T)`. `child_index` is the position of the recursed component
/// in the recursive phase's ascending ordering.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "step", rename_all = "lowercase")]
pub enum InvolutionStep {
    Contract { site: usize },
    Uncontract { site: usize },
    Recurse { child_index: usize },
    Fix,
}

struct Context {
    d: u64,
    sd2: usize,
    a_set: Vec<u64>,
    b_set: Vec<u64>,
    kind: OrderingKind,
}

impl Context {
    fn new(set: &RestrictionSet, d: u64, kind: OrderingKind) -> Result<Context> {
        if !set.contains(1) {
            return Err(Error::Domain("the involution requires 1 ∈ R".into()));
        }
        if !set.has_no_exposed_odds() {
            return Err(Error::Domain(
                "the involution requires R with no exposed odds".into(),
            ));
        }
        let e = set.endpoints();
        Ok(Context {
            d,
            sd2: (d + 1) as usize,
            a_set: e.a_set.into_iter().collect(),
            b_set: e.b_set.into_iter().collect(),
            kind,
        })
    }

    /// `n` with `s_d(n) = degree`; defined because all degrees lie in `R(d)`.
    fn unstretch(&self, degree: usize) -> u64 {
        debug_assert!((degree as u64 - 1) % self.d == 0);
        (degree as u64 - 1) / self.d + 1
    }
}

/// Applies Algorithm `A` to a decorated tree, returning the image and the
/// trace of steps taken. The input must have all nonzero degrees in `R(d)`
/// and satisfy the ordering discipline.
pub fn apply_involution(
    tree: &Tree,
    set: &RestrictionSet,
    d: u64,
    kind: OrderingKind,
) -> Result<(Tree, Vec<InvolutionStep>)> {
    let ctx = Context::new(set, d, kind)?;
    if !tree.degrees_in(&set.stretch(d)) {
        return Err(Error::Domain(
            "the input tree has a nonzero degree outside R(d)".into(),
        ));
    }
    if !tree.satisfies_ordering(kind) {
        return Err(Error::Domain(format!(
            "the input tree is not {} ordered",
            kind.name()
        )));
    }
    Ok(apply(tree, &ctx))
}

/// The right-most path from the root to a leaf, with the preorder index of
/// each path vertex (the subtree of the last child occupies the final block
/// of the preorder, so the index accumulates the earlier siblings' sizes).
fn rightmost_path(tree: &Tree) -> (Vec<&Tree>, Vec<usize>) {
    let mut path: Vec<&Tree> = vec![tree];
    let mut sites: Vec<usize> = vec![0];
    while let Some(last) = path.last().unwrap().children().last() {
        let v = path.last().unwrap();
        let site = sites.last().unwrap() + (v.vertex_count() - last.vertex_count());
        path.push(last);
        sites.push(site);
    }
    (path, sites)
}

enum InitialOp {
    ContractAt(usize),
    UncontractAt(usize),
}

/// The first vertex of the right-most path admitting an initial-phase
/// operation, scanning top-down with contraction tested first.
fn initial_phase_op(path: &[&Tree], ctx: &Context) -> Option<InitialOp> {
    for (j, v) in path.iter().enumerate().take(path.len() - 1) {
        let deg = v.degree();
        if deg == ctx.sd2 {
            let left = &v.children()[0];
            if !left.is_leaf() {
                let n = ctx.unstretch(left.degree());
                if !ctx.b_set.contains(&n) {
                    return Some(InitialOp::ContractAt(j));
                }
            }
        } else {
            let n = ctx.unstretch(deg);
            if !ctx.a_set.contains(&n) {
                return Some(InitialOp::UncontractAt(j));
            }
        }
    }
    None
}

/// The components left after the recursive phase deletes the right-most path
/// and the left-most children of its `s_d(2)`-degree vertices, paired with
/// their child-index addresses, in tree order.
fn collect_components<'a>(path: &[&'a Tree], ctx: &Context) -> Vec<(Vec<usize>, &'a Tree)> {
    let mut components: Vec<(Vec<usize>, &Tree)> = Vec::new();
    let mut prefix: Vec<usize> = Vec::new();
    for v in path.iter().take(path.len() - 1) {
        let deg = v.degree();
        let skip_left = deg == ctx.sd2;
        if skip_left {
            let left = &v.children()[0];
            for (i, c) in left.children().iter().enumerate() {
                let mut addr = prefix.clone();
                addr.extend([0, i]);
                components.push((addr, c));
            }
        }
        let first_kept = if skip_left { 1 } else { 0 };
        for i in first_kept..deg - 1 {
            let mut addr = prefix.clone();
            addr.push(i);
            components.push((addr, &v.children()[i]));
        }
        prefix.push(deg - 1);
    }
    components
}

/// The decomposition the recursive phase would act on: `None` when an
/// initial-phase operation applies (so the phase never runs), otherwise the
/// post-deletion components with their child-index addresses.
pub fn recursive_phase_components(
    tree: &Tree,
    set: &RestrictionSet,
    d: u64,
) -> Result<Option<Vec<(Vec<usize>, Tree)>>> {
    let ctx = Context::new(set, d, OrderingKind::Linear)?;
    if tree.is_leaf() {
        return Ok(Some(Vec::new()));
    }
    let (path, _) = rightmost_path(tree);
    if initial_phase_op(&path, &ctx).is_some() {
        return Ok(None);
    }
    Ok(Some(
        collect_components(&path, &ctx)
            .into_iter()
            .map(|(addr, t)| (addr, t.clone()))
            .collect(),
    ))
}

fn apply(tree: &Tree, ctx: &Context) -> (Tree, Vec<InvolutionStep>) {
    if tree.is_leaf() {
        return (tree.clone(), vec![InvolutionStep::Fix]);
    }

    let (path, sites) = rightmost_path(tree);

    match initial_phase_op(&path, ctx) {
        Some(InitialOp::ContractAt(j)) => {
            let rebuilt = rebuild_spine(tree, j, &|v| contract(v));
            return (rebuilt, vec![InvolutionStep::Contract { site: sites[j] }]);
        }
        Some(InitialOp::UncontractAt(j)) => {
            let keep = ctx.sd2 - 1; // d right-most children stay with v_j
            let rebuilt = rebuild_spine(tree, j, &|v| uncontract(v, keep));
            return (
                rebuilt,
                vec![InvolutionStep::Uncontract { site: sites[j] }],
            );
        }
        None => {}
    }

    let mut components = collect_components(&path, ctx);

    if components.is_empty() {
        return (tree.clone(), vec![InvolutionStep::Fix]);
    }

    components.sort_by_key(|(_, t)| match ctx.kind {
        OrderingKind::MinFirst => t.lmin(),
        _ => t.lmax(),
    });

    for (index, (addr, component)) in components.iter().enumerate() {
        // Rank-compress the labels to 1..m, recurse, then restore.
        let mut labels = component.leaf_labels();
        labels.sort_unstable();
        let down: BTreeMap<u32, u32> = labels
            .iter()
            .enumerate()
            .map(|(i, &l)| (l, (i + 1) as u32))
            .collect();
        let compressed = relabel(component, &down);
        let (image, mut inner) = apply(&compressed, ctx);
        if image != compressed {
            let up: BTreeMap<u32, u32> = labels
                .iter()
                .enumerate()
                .map(|(i, &l)| ((i + 1) as u32, l))
                .collect();
            let restored = relabel(&image, &up);
            let rebuilt = replace_at(tree, addr, restored);
            let mut trace = vec![InvolutionStep::Recurse { child_index: index }];
            trace.append(&mut inner);
            return (rebuilt, trace);
        }
    }

    (tree.clone(), vec![InvolutionStep::Fix])
}

/// Rebuilds the tree with `op` applied to the vertex `depth` steps down the
/// right-most path.
fn rebuild_spine(tree: &Tree, depth: usize, op: &dyn Fn(&Tree) -> Tree) -> Tree {
    if depth == 0 {
        return op(tree);
    }
    let mut children = tree.children().to_vec();
    let last = children.len() - 1;
    children[last] = rebuild_spine(&children[last], depth - 1, op);
    Tree::internal(children)
}

/// Contraction at `v` towards its left-most child: the child is removed and
/// its children take its place, ahead of the remaining `d` right-most
/// children of `v`.
fn contract(v: &Tree) -> Tree {
    let mut children = v.children().to_vec();
    let left = children.remove(0);
    let mut merged = left.children().to_vec();
    merged.append(&mut children);
    Tree::internal(merged)
}

/// Uncontraction at `v` away from its right-most child: all but the `keep`
/// right-most children move under a new left-most child of `v`.
fn uncontract(v: &Tree, keep: usize) -> Tree {
    let children = v.children().to_vec();
    let cut = children.len() - keep;
    let grouped = Tree::internal(children[..cut].to_vec());
    let mut rebuilt = Vec::with_capacity(keep + 1);
    rebuilt.push(grouped);
    rebuilt.extend_from_slice(&children[cut..]);
    Tree::internal(rebuilt)
}

fn replace_at(tree: &Tree, addr: &[usize], replacement: Tree) -> Tree {
    match addr.split_first() {
        None => replacement,
        Some((&i, rest)) => {
            let mut children = tree.children().to_vec();
            children[i] = replace_at(&children[i], rest, replacement);
            Tree::internal(children)
        }
    }
}

/// Exhaustive verification of the involution's contract over one decorated
/// class: every tree with at most `max_leaves` leaves is checked for the
/// five properties below plus the pairing of traces.
#[derive(Clone, Debug, Serialize)]
pub struct Lemma4Report {
    pub restriction: String,
    pub d: u64,
    pub kind: &'static str,
    pub max_leaves: u64,
    pub trees_checked: u64,
    pub fixed_points: u64,
    /// Violation counts for, in order: fixed-iff-good, degree closure,
    /// ordering preservation, involution (A∘A = id), parity toggle.
    pub violations: [u64; 5],
    pub trace_pairing_violations: u64,
    pub first_counterexample: Option<String>,
}

impl Lemma4Report {
    pub fn all_hold(&self) -> bool {
        self.violations.iter().all(|&v| v == 0) && self.trace_pairing_violations == 0
    }
}

/// Runs the checks over every decorated tree of the class with `1..=n`
/// leaves: (1) `A(T) = T` iff `T` is good, (2) all degrees of `A(T)` stay in
/// `R(d)`, (3) `A(T)` keeps the ordering discipline, (4) `A(A(T)) = T`,
/// (5) `A(T) ≠ T` implies the parity flips. Traces of paired applications
/// must agree up to swapping the final contract/uncontract at the same site.
pub fn verify_lemma4(
    n: u64,
    set: &RestrictionSet,
    d: u64,
    kind: OrderingKind,
    caps: crate::forest::EnumCaps,
) -> Result<Lemma4Report> {
    let rd = set.stretch(d);
    let mut report = Lemma4Report {
        restriction: set.to_string(),
        d,
        kind: kind.name(),
        max_leaves: n,
        trees_checked: 0,
        fixed_points: 0,
        violations: [0; 5],
        trace_pairing_violations: 0,
        first_counterexample: None,
    };
    let mut failure: Option<Error> = None;
    for leaves in 1..=n {
        crate::forest::enumerate_decorated_forests(
            leaves,
            1,
            kind,
            set,
            d,
            caps,
            &mut |forest, parity| {
                if failure.is_some() {
                    return;
                }
                let tree = &forest.trees()[0];
                let (image, trace) = match apply_involution(tree, set, d, kind) {
                    Ok(v) => v,
                    Err(e) => {
                        failure = Some(e);
                        return;
                    }
                };
                report.trees_checked += 1;
                let fixed = image == *tree;
                if fixed {
                    report.fixed_points += 1;
                }
                let note = |report: &mut Lemma4Report, idx: usize, what: &str| {
                    report.violations[idx] += 1;
                    if report.first_counterexample.is_none() {
                        report.first_counterexample =
                            Some(format!("{what}: {}", forest.to_json()));
                    }
                };
                let good = match is_good(&forest, set, d) {
                    Ok(g) => g,
                    Err(e) => {
                        failure = Some(e);
                        return;
                    }
                };
                if fixed != good {
                    note(&mut report, 0, "fixed point does not match goodness");
                }
                if !image.degrees_in(&rd) {
                    note(&mut report, 1, "image has a degree outside R(d)");
                }
                if !image.satisfies_ordering(kind) {
                    note(&mut report, 2, "image violates the ordering discipline");
                }
                let (back, back_trace) = match apply_involution(&image, set, d, kind) {
                    Ok(v) => v,
                    Err(e) => {
                        failure = Some(e);
                        return;
                    }
                };
                if back != *tree {
                    note(&mut report, 3, "A(A(T)) differs from T");
                }
                if !fixed {
                    if image.parity(d) == parity {
                        note(&mut report, 4, "parity did not toggle");
                    }
                    if !traces_pair(&trace, &back_trace) {
                        report.trace_pairing_violations += 1;
                        if report.first_counterexample.is_none() {
                            report.first_counterexample = Some(format!(
                                "traces do not pair: {trace:?} vs {back_trace:?}"
                            ));
                        }
                    }
                }
            },
        )?;
    }
    match failure {
        Some(e) => Err(e),
        None => Ok(report),
    }
}

/// A contraction pairs with an uncontraction at the same site (and vice
/// versa) after an identical recursion prefix.
fn traces_pair(forward: &[InvolutionStep], backward: &[InvolutionStep]) -> bool {
    if forward.len() != backward.len() {
        return false;
    }
    let (f_last, f_prefix) = forward.split_last().unwrap();
    let (b_last, b_prefix) = backward.split_last().unwrap();
    if f_prefix != b_prefix {
        return false;
    }
    matches!(
        (f_last, b_last),
        (
            InvolutionStep::Contract { site: a },
            InvolutionStep::Uncontract { site: b }
        ) | (
            InvolutionStep::Uncontract { site: a },
            InvolutionStep::Contract { site: b }
        ) if a == b
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forest::{EnumCaps, Forest};
    use crate::restriction::parse_restriction;

    fn leaf(l: u32) -> Tree {
        Tree::leaf(l)
    }

    fn node(children: Vec<Tree>) -> Tree {
        Tree::internal(children)
    }

    /// The linearly ordered tree that contracts the edge below its
    /// degree-2 chain: w1(w2(w3(w4(4,5,6,7 reversed), 3), 2), 1) drawn
    /// left-to-right as [w4, 3], [w3, 2], [w2, 1] and w4 = [7,6,5,4].
    fn contracting_example() -> Tree {
        let w4 = node(vec![leaf(7), leaf(6), leaf(5), leaf(4)]);
        let w3 = node(vec![w4, leaf(3)]);
        let w2 = node(vec![w3, leaf(2)]);
        node(vec![w2, leaf(1)])
    }

    #[test]
    fn contracts_at_the_right_site() {
        // R = {1,2} ∪ {4,5,6}: the top two degree-2 vertices have left
        // children of degree 2 ∈ b(R) and stay; the recursion reaches the
        // component rooted two levels down, whose root contracts towards its
        // degree-4 left child (4 ∉ b(R)).
        let set = parse_restriction("1,2,4-6").unwrap();
        let t = contracting_example();
        let (image, trace) = apply_involution(&t, &set, 1, OrderingKind::Linear).unwrap();

        // Expected image: w3 absorbs w4, gaining children [7,6,5,4,3].
        let expected = {
            let w3 = node(vec![leaf(7), leaf(6), leaf(5), leaf(4), leaf(3)]);
            let w2 = node(vec![w3, leaf(2)]);
            node(vec![w2, leaf(1)])
        };
        assert_eq!(image, expected);
        // Components after deleting the right-most path (w1, leaf 1) and
        // w1's left-most child (w2): leaf 2 (fixed) then the w3 subtree.
        assert_eq!(
            trace,
            vec![
                InvolutionStep::Recurse { child_index: 1 },
                InvolutionStep::Contract { site: 0 },
            ]
        );

        // Applying A again restores the input via an uncontraction at the
        // same site.
        let (back, back_trace) = apply_involution(&image, &set, 1, OrderingKind::Linear).unwrap();
        assert_eq!(back, t);
        assert_eq!(
            back_trace,
            vec![
                InvolutionStep::Recurse { child_index: 1 },
                InvolutionStep::Uncontract { site: 0 },
            ]
        );
        assert_ne!(t.parity(1), image.parity(1));
    }

    #[test]
    fn fixes_good_trees_without_an_initial_operation() {
        // A tree whose right-most path admits no operation and whose
        // remaining components are single leaves: A fixes it.
        // Root [x, v2] with x = [a, b] (degree 2, left child of root, will be
        // deleted), v2 = [y, v3] with y a leaf, v3 of degree 4 ∈ a(R).
        let set = parse_restriction("1,2,4-6").unwrap();
        let x = node(vec![leaf(1), leaf(2)]);
        let v3 = node(vec![leaf(4), leaf(5), leaf(6), leaf(7)]);
        let v2 = node(vec![leaf(3), v3]);
        let t = node(vec![x, v2]);
        let (image, trace) = apply_involution(&t, &set, 1, OrderingKind::Linear).unwrap();
        assert_eq!(image, t);
        assert_eq!(trace, vec![InvolutionStep::Fix]);
        assert!(is_good(&Forest::new(vec![t]), &set, 1).unwrap());
    }

    #[test]
    fn fixes_the_isolated_root() {
        let set = parse_restriction("1,2").unwrap();
        for kind in [
            OrderingKind::Increasing,
            OrderingKind::MinFirst,
            OrderingKind::Linear,
        ] {
            let (image, trace) = apply_involution(&leaf(1), &set, 1, kind).unwrap();
            assert_eq!(image, leaf(1));
            assert_eq!(trace, vec![InvolutionStep::Fix]);
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let set = parse_restriction("1,3").unwrap();
        assert!(apply_involution(&leaf(1), &set, 1, OrderingKind::Linear).is_err());

        let set = parse_restriction("1,2").unwrap();
        let star = node(vec![leaf(1), leaf(2), leaf(3)]);
        assert!(apply_involution(&star, &set, 1, OrderingKind::Linear).is_err());

        // Not increasingly ordered.
        let t = node(vec![leaf(2), leaf(1)]);
        assert!(apply_involution(&t, &set, 1, OrderingKind::Increasing).is_err());
    }

    #[test]
    fn exhaustive_small_classes() {
        let caps = EnumCaps::default();
        let configs: [(&str, u64, OrderingKind); 3] = [
            ("1,2", 1, OrderingKind::Increasing),
            ("1-", 2, OrderingKind::MinFirst),
            ("1,2,4-6", 1, OrderingKind::Linear),
        ];
        for (text, d, kind) in configs {
            let set = parse_restriction(text).unwrap();
            let report = verify_lemma4(5, &set, d, kind, caps).unwrap();
            assert!(report.all_hold(), "R={text} d={d} {kind:?}: {report:?}");
            assert!(report.trees_checked > 0);
        }
    }
}
