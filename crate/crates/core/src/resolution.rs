//! Resolution schemes: unrooted full binary trees at a point whose edges
//! carry lines through that point, their force-loads and H→Φ surgeries.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::numeric::{solve_linear, Matrix};
use crate::projective::{star_is_non_parallelizable, Force, ProjLine, ProjPoint};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Node {
    Leaf(usize),
    Inner,
}

/// An unrooted tree whose vertices have degree 1 (labelled leaves) or 3.
/// Edges are stored as `(a, b)` with `a < b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryTree {
    nodes: Vec<Node>,
    edges: Vec<(usize, usize)>,
    incident: Vec<Vec<usize>>,
}

/// Leaf-label splits induced by the interior edges; equal for trees with the
/// same topology. Each split lists the side without the smallest label.
pub type Topology = BTreeSet<Vec<usize>>;

impl BinaryTree {
    pub fn new(nodes: Vec<Node>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let n = nodes.len();
        let bad = |m: &str| Err(Error::Precondition(format!("not a full binary tree: {m}")));
        if n < 4 || edges.len() + 1 != n {
            return bad("wrong number of edges");
        }
        let mut incident = vec![Vec::new(); n];
        let mut norm = Vec::with_capacity(edges.len());
        for (k, &(a, b)) in edges.iter().enumerate() {
            if a >= n || b >= n || a == b {
                return bad("edge endpoint out of range");
            }
            incident[a].push(k);
            incident[b].push(k);
            norm.push((a.min(b), a.max(b)));
        }
        let mut labels = BTreeSet::new();
        for (v, node) in nodes.iter().enumerate() {
            let want = match node {
                Node::Leaf(l) => {
                    if !labels.insert(*l) {
                        return bad("repeated leaf label");
                    }
                    1
                }
                Node::Inner => 3,
            };
            if incident[v].len() != want {
                return bad("vertex degree is neither 1 nor 3");
            }
        }
        let t = BinaryTree { nodes, edges: norm, incident };
        if t.reachable(0, usize::MAX).len() != n {
            return bad("disconnected");
        }
        Ok(t)
    }

    /// Left-comb caterpillar over `labels` in the given order. Leaves come
    /// first in the node list, then the spine; leaf edges precede spine edges.
    pub fn caterpillar(labels: &[usize]) -> Result<Self> {
        let s = labels.len();
        if s < 3 {
            return Err(Error::Precondition(format!("a resolution tree needs at least 3 leaves, got {s}")));
        }
        let mut nodes: Vec<Node> = labels.iter().map(|&l| Node::Leaf(l)).collect();
        nodes.extend(core::iter::repeat_n(Node::Inner, s - 2));
        let spine = |j: usize| s + j;
        let mut edges = vec![(0, spine(0)), (1, spine(0))];
        for leaf in 2..s - 1 {
            edges.push((leaf, spine(leaf - 1)));
        }
        edges.push((s - 1, spine(s - 3)));
        for j in 0..s - 3 {
            edges.push((spine(j), spine(j + 1)));
        }
        BinaryTree::new(nodes, edges)
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        matches!(self.nodes[v], Node::Leaf(_))
    }

    pub fn leaf_label(&self, v: usize) -> Option<usize> {
        match self.nodes[v] {
            Node::Leaf(l) => Some(l),
            Node::Inner => None,
        }
    }

    pub fn leaf_node(&self, label: usize) -> Option<usize> {
        self.nodes.iter().position(|n| *n == Node::Leaf(label))
    }

    /// Leaf labels in node order.
    pub fn leaf_labels(&self) -> Vec<usize> {
        self.nodes.iter().filter_map(|n| if let Node::Leaf(l) = n { Some(*l) } else { None }).collect()
    }

    pub fn leaf_count(&self) -> usize {
        self.leaf_labels().len()
    }

    /// Incident edges of `v` in increasing edge order.
    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incident[v]
    }

    pub fn other(&self, e: usize, v: usize) -> usize {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            debug_assert_eq!(b, v);
            a
        }
    }

    pub fn edge_between(&self, a: usize, b: usize) -> Option<usize> {
        self.incident[a].iter().copied().find(|&e| self.other(e, a) == b)
    }

    pub fn is_interior(&self, e: usize) -> bool {
        let (a, b) = self.edges[e];
        !self.is_leaf(a) && !self.is_leaf(b)
    }

    /// Interior edges in increasing edge order.
    pub fn interior_edges(&self) -> Vec<usize> {
        (0..self.edges.len()).filter(|&e| self.is_interior(e)).collect()
    }

    /// The inner node next to a leaf.
    pub fn leaf_parent(&self, leaf: usize) -> usize {
        self.other(self.incident[leaf][0], leaf)
    }

    fn reachable(&self, from: usize, blocked_edge: usize) -> Vec<usize> {
        let mut seen = vec![false; self.nodes.len()];
        let mut out = vec![from];
        seen[from] = true;
        let mut k = 0;
        while k < out.len() {
            let v = out[k];
            k += 1;
            for &e in &self.incident[v] {
                if e == blocked_edge {
                    continue;
                }
                let w = self.other(e, v);
                if !seen[w] {
                    seen[w] = true;
                    out.push(w);
                }
            }
        }
        out
    }

    /// Leaf labels on the side of `e` containing `toward`, sorted.
    pub fn side_labels(&self, e: usize, toward: usize) -> Vec<usize> {
        let mut l: Vec<usize> = self.reachable(toward, e).into_iter().filter_map(|v| self.leaf_label(v)).collect();
        l.sort_unstable();
        l
    }

    /// Node sequence of the path from `a` to `b`.
    pub fn path(&self, a: usize, b: usize) -> Vec<usize> {
        let mut prev = vec![usize::MAX; self.nodes.len()];
        let mut queue = VecDeque::from([a]);
        prev[a] = a;
        while let Some(v) = queue.pop_front() {
            if v == b {
                break;
            }
            for &e in &self.incident[v] {
                let w = self.other(e, v);
                if prev[w] == usize::MAX {
                    prev[w] = v;
                    queue.push_back(w);
                }
            }
        }
        let mut path = vec![b];
        let mut v = b;
        while v != a {
            v = prev[v];
            path.push(v);
        }
        path.reverse();
        path
    }

    /// Rewires the H around interior edge `e` into a Φ: `keep` stays at `x`,
    /// `moved` goes from `y` to `x`, and the third edge at `x` goes to `y`.
    /// Returns the new tree and the roles `(keep, swapped, moved, other)`
    /// as edge indices, where `swapped` is the edge that went to `y` and
    /// `other` the edge that stayed at `y`.
    pub fn rewire(&self, e: usize, x: usize, keep: usize, moved: usize) -> Result<(BinaryTree, SurgeryRoles)> {
        if !self.is_interior(e) {
            return Err(Error::Precondition("surgery needs an interior edge".into()));
        }
        let (a, b) = self.edges[e];
        if x != a && x != b {
            return Err(Error::Precondition("x must be an endpoint of the surgery edge".into()));
        }
        let y = self.other(e, x);
        let at = |v: usize, f: usize| f != e && self.incident[v].contains(&f);
        if !at(x, keep) || !at(y, moved) {
            return Err(Error::Precondition("surgery roles do not match the tree".into()));
        }
        let swapped = self.incident[x].iter().copied().find(|&f| f != e && f != keep).expect("degree 3");
        let other = self.incident[y].iter().copied().find(|&f| f != e && f != moved).expect("degree 3");
        let mut edges = self.edges.clone();
        edges[moved] = (x, self.other(moved, y));
        edges[swapped] = (y, self.other(swapped, x));
        let tree = BinaryTree::new(self.nodes.clone(), edges)?;
        Ok((tree, SurgeryRoles { edge: e, x, y, keep, swapped, moved, other }))
    }

    /// Next move toward the associated framing of leaves `a` and `b`: either
    /// they already share a vertex (the third edge there is returned), or the
    /// surgery that moves `a` one step along the path.
    pub fn framing_step(&self, a: usize, b: usize) -> Result<FramingStep> {
        let missing = || Error::Precondition(format!("leaf label {a} or {b} not in the tree"));
        let la = self.leaf_node(a).ok_or_else(missing)?;
        let lb = self.leaf_node(b).ok_or_else(missing)?;
        if la == lb {
            return Err(Error::Precondition("associated framing needs two distinct leaves".into()));
        }
        let path = self.path(la, lb);
        if path.len() == 3 {
            let v = path[1];
            let e = self.incident[v]
                .iter()
                .copied()
                .find(|&f| self.other(f, v) != la && self.other(f, v) != lb)
                .expect("degree 3");
            return Ok(FramingStep::Shared(e));
        }
        let (x, y) = (path[1], path[2]);
        Ok(FramingStep::Surgery {
            edge: self.edge_between(x, y).expect("path edge"),
            x,
            keep: self.edge_between(la, x).expect("path edge"),
            moved: self.edge_between(y, path[3]).expect("path edge"),
        })
    }

    pub fn topology(&self) -> Topology {
        let min = *self.leaf_labels().iter().min().expect("leaves exist");
        self.interior_edges()
            .into_iter()
            .map(|e| {
                let side = self.side_labels(e, self.edges[e].0);
                if side.contains(&min) {
                    self.side_labels(e, self.edges[e].1)
                } else {
                    side
                }
            })
            .collect()
    }
}

/// Edge roles of a performed surgery at `edge = xy`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SurgeryRoles {
    pub edge: usize,
    pub x: usize,
    pub y: usize,
    pub keep: usize,
    pub swapped: usize,
    pub moved: usize,
    pub other: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FramingStep {
    /// The two leaves hang off one vertex; the payload is the third edge there.
    Shared(usize),
    Surgery { edge: usize, x: usize, keep: usize, moved: usize },
}

/// The canonical caterpillar tree over the given labels.
pub fn default_tree(labels: &[usize]) -> Result<BinaryTree> {
    BinaryTree::caterpillar(labels)
}

/// A tree at `base` with a line through `base` on every edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionScheme {
    tree: BinaryTree,
    base: ProjPoint,
    labels: Vec<ProjLine>,
}

/// Forces on tree edges: `forces[e] = F_{a,b}` for `edges()[e] = (a, b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemeLoad {
    pub forces: Vec<Force>,
}

impl SchemeLoad {
    /// `F_{v,w}` across edge `e` from its endpoint `v`.
    pub fn force_from(&self, t: &BinaryTree, v: usize, e: usize) -> Force {
        if t.edges()[e].0 == v {
            self.forces[e].clone()
        } else {
            -&self.forces[e]
        }
    }

    /// `(label, F_{parent,leaf})` sorted by label.
    pub fn leaf_forces(&self, t: &BinaryTree) -> Vec<(usize, Force)> {
        let mut out: Vec<(usize, Force)> = (0..t.node_count())
            .filter_map(|v| {
                let l = t.leaf_label(v)?;
                let e = t.incident(v)[0];
                Some((l, self.force_from(t, t.other(e, v), e)))
            })
            .collect();
        out.sort_by_key(|(l, _)| *l);
        out
    }

    pub fn is_equilibrium(&self, t: &BinaryTree) -> bool {
        (0..t.node_count()).filter(|&v| !t.is_leaf(v)).all(|v| {
            t.incident(v)
                .iter()
                .fold(Force::zero(), |acc, &e| &acc + &self.force_from(t, v, e))
                .is_zero()
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Traversal {
    BreadthFirst,
    DepthFirst,
}

/// Which end of the leaf pair the surgeries start from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    FromFirst,
    FromSecond,
}

impl ResolutionScheme {
    pub fn new(tree: BinaryTree, base: ProjPoint, labels: Vec<ProjLine>) -> Result<Self> {
        if labels.len() != tree.edges().len() {
            return Err(Error::Precondition(format!(
                "{} labels for {} tree edges",
                labels.len(),
                tree.edges().len()
            )));
        }
        if let Some(l) = labels.iter().find(|l| !base.on(l)) {
            return Err(Error::Precondition(format!("label {l} does not pass through {base}")));
        }
        Ok(ResolutionScheme { tree, base, labels })
    }

    pub fn tree(&self) -> &BinaryTree {
        &self.tree
    }

    pub fn base(&self) -> &ProjPoint {
        &self.base
    }

    pub fn labels(&self) -> &[ProjLine] {
        &self.labels
    }

    pub fn label(&self, e: usize) -> &ProjLine {
        &self.labels[e]
    }

    /// Label of the edge at the leaf with the given label.
    pub fn leaf_line(&self, label: usize) -> Option<&ProjLine> {
        let v = self.tree.leaf_node(label)?;
        Some(&self.labels[self.tree.incident(v)[0]])
    }

    /// Adjacent edges never share a line.
    pub fn is_weakly_generic(&self) -> bool {
        (0..self.tree.node_count()).filter(|&v| !self.tree.is_leaf(v)).all(|v| {
            let inc = self.tree.incident(v);
            let l = |k: usize| &self.labels[inc[k]];
            l(0) != l(1) && l(0) != l(2) && l(1) != l(2)
        })
    }

    /// The equilibrium load extending `seed_force` on `seed_edge`
    /// (oriented as `F_{a,b}` for the stored edge `(a, b)`).
    pub fn forceload(&self, seed_edge: usize, seed_force: &Force, order: Traversal) -> Result<SchemeLoad> {
        if !self.is_weakly_generic() {
            return Err(Error::WeakGenericity);
        }
        if seed_force.line().ok().as_ref() != Some(&self.labels[seed_edge]) {
            return Err(Error::Precondition("seed force must be nonzero along its edge label".into()));
        }
        let t = &self.tree;
        let mut known: Vec<Option<Force>> = vec![None; t.edges().len()];
        known[seed_edge] = Some(seed_force.clone());
        let mut done = vec![false; t.node_count()];
        let (a, b) = t.edges()[seed_edge];
        let mut work: VecDeque<usize> = [a, b].into_iter().filter(|&v| !t.is_leaf(v)).collect();
        while let Some(v) = match order {
            Traversal::BreadthFirst => work.pop_front(),
            Traversal::DepthFirst => work.pop_back(),
        } {
            if done[v] {
                continue;
            }
            done[v] = true;
            let inc = t.incident(v);
            let k0 = inc.iter().position(|&e| known[e].is_some()).expect("reached through a known edge");
            let e0 = inc[k0];
            let f0 = {
                let f = known[e0].clone().expect("known");
                if t.edges()[e0].0 == v { f } else { -f }
            };
            let rest: Vec<usize> = inc.iter().copied().filter(|&e| e != e0).collect();
            let [f1, f2] = decompose(&f0, &self.labels[rest[0]], &self.labels[rest[1]])?;
            for (e, f) in [(rest[0], f1), (rest[1], f2)] {
                let stored = if t.edges()[e].0 == v { f } else { -f };
                known[e] = Some(stored);
                let w = t.other(e, v);
                if !t.is_leaf(w) && !done[w] {
                    work.push_back(w);
                }
            }
        }
        let forces: Vec<Force> = known.into_iter().map(|f| f.expect("tree is connected")).collect();
        Ok(SchemeLoad { forces })
    }

    /// The load seeded with the unit force along the label of edge 0.
    pub fn default_forceload(&self) -> Result<SchemeLoad> {
        self.forceload(0, &Force::along(&self.labels[0]), Traversal::BreadthFirst)
    }

    /// Leaf forces satisfy the two non-parallelizability conditions.
    pub fn is_strongly_generic(&self) -> Result<bool> {
        let load = self.default_forceload()?;
        let leaves: Vec<Force> = load.leaf_forces(&self.tree).into_iter().map(|(_, f)| f).collect();
        Ok(star_is_non_parallelizable(&leaves))
    }

    /// Surgery at interior edge `e` with `x` its smaller endpoint, keeping the
    /// lower-numbered other edge at `x` and moving the lower-numbered other
    /// edge at `y`.
    pub fn hf_surgery(&self, e: usize) -> Result<ResolutionScheme> {
        let t = &self.tree;
        if !t.is_interior(e) {
            return Err(Error::Precondition("surgery needs an interior edge".into()));
        }
        let (x, y) = t.edges()[e];
        let keep = t.incident(x).iter().copied().find(|&f| f != e).expect("degree 3");
        let moved = t.incident(y).iter().copied().find(|&f| f != e).expect("degree 3");
        self.hf_surgery_with(e, x, keep, moved)
    }

    /// Surgery at interior edge `e` between `x` and `y`. The edge `keep` stays
    /// at `x`, `moved` goes from `y` to `x`, and the remaining edge at `x`
    /// goes to `y`. The new label of `e` is the line of `F_{x,·}` on `keep`
    /// plus `F_{y,·}` on `moved`.
    pub fn hf_surgery_with(&self, e: usize, x: usize, keep: usize, moved: usize) -> Result<ResolutionScheme> {
        let (tree, r) = self.tree.rewire(e, x, keep, moved)?;
        let load = self.default_forceload()?;
        let sum = &load.force_from(&self.tree, r.x, keep) + &load.force_from(&self.tree, r.y, moved);
        if sum.is_zero() {
            return Err(Error::SurgeryUndefined);
        }
        let mut labels = self.labels.clone();
        labels[e] = sum.line()?;
        ResolutionScheme::new(tree, self.base.clone(), labels)
    }

    /// The associated framing of the leaf pair: surgeries along the tree path
    /// bring the two leaves onto a common vertex, whose third edge label is
    /// returned.
    pub fn associated_framing(&self, a: usize, b: usize) -> Result<ProjLine> {
        self.associated_framing_route(a, b, Route::FromFirst)
    }

    pub fn associated_framing_route(&self, a: usize, b: usize, route: Route) -> Result<ProjLine> {
        let (a, b) = match route {
            Route::FromFirst => (a, b),
            Route::FromSecond => (b, a),
        };
        let mut s = self.clone();
        loop {
            match s.tree.framing_step(a, b)? {
                FramingStep::Shared(e) => return Ok(s.labels[e].clone()),
                FramingStep::Surgery { edge, x, keep, moved } => s = s.hf_surgery_with(edge, x, keep, moved)?,
            }
        }
    }

    /// One scheme per tree topology over the same leaves, each reached from
    /// `self` by surgeries; breadth-first discovery order.
    pub fn enumerate_equivalent(&self) -> Result<Vec<ResolutionScheme>> {
        let mut seen = BTreeSet::from([self.tree.topology()]);
        let mut out = vec![self.clone()];
        let mut k = 0;
        while k < out.len() {
            let s = out[k].clone();
            k += 1;
            for e in s.tree.interior_edges() {
                let (x, y) = s.tree.edges()[e];
                let keep = s.tree.incident(x).iter().copied().find(|&f| f != e).expect("degree 3");
                for &moved in s.tree.incident(y).iter().filter(|&&f| f != e) {
                    let n = s.hf_surgery_with(e, x, keep, moved)?;
                    if seen.insert(n.tree.topology()) {
                        out.push(n);
                    }
                }
            }
        }
        Ok(out)
    }

    /// For every interior edge, the leaf forces on one side sum to a force
    /// along that edge's label.
    pub fn force_structure_holds(&self, load: &SchemeLoad) -> bool {
        let leaf: Vec<(usize, Force)> = load.leaf_forces(&self.tree);
        self.tree.interior_edges().into_iter().all(|e| {
            let side = self.tree.side_labels(e, self.tree.edges()[e].1);
            let sum = leaf
                .iter()
                .filter(|(l, _)| side.contains(l))
                .fold(Force::zero(), |acc, (_, f)| &acc + f);
            sum.line().ok().as_ref() == Some(&self.labels[e])
        })
    }
}

/// Splits `f` as `a + b` with `a` along `l1` and `b` along `l2`.
pub(crate) fn decompose(f: &Force, l1: &ProjLine, l2: &ProjLine) -> Result<[Force; 2]> {
    let d1 = l1.coords();
    let d2 = l2.coords();
    let m = Matrix::from_rows(2, (0..3).map(|r| vec![d1[r].clone(), d2[r].clone()]).collect())?;
    let rhs: Vec<_> = f.dual.iter().map(|x| -x.clone()).collect();
    let x = solve_linear(&m, &rhs)
        .ok_or_else(|| Error::InvariantViolation("force does not lie in the pencil of its vertex".into()))?;
    Ok([Force::along(l1).scaled(&x[0]), Force::along(l2).scaled(&x[1])])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::int;

    fn origin() -> ProjPoint {
        ProjPoint::from_i64([0, 0, 1]).unwrap()
    }

    fn through_origin(a: i64, b: i64) -> ProjLine {
        ProjLine::from_i64([a, b, 0]).unwrap()
    }

    fn scheme(leaves: &[(i64, i64)], interior: &[(i64, i64)]) -> ResolutionScheme {
        let labels: Vec<usize> = (0..leaves.len()).collect();
        let t = BinaryTree::caterpillar(&labels).unwrap();
        let mut lines: Vec<ProjLine> = leaves.iter().map(|&(a, b)| through_origin(a, b)).collect();
        lines.extend(interior.iter().map(|&(a, b)| through_origin(a, b)));
        ResolutionScheme::new(t, origin(), lines).unwrap()
    }

    #[test]
    fn caterpillar_shapes() {
        for s in 3..7 {
            let t = BinaryTree::caterpillar(&(10..10 + s).collect::<Vec<_>>()).unwrap();
            assert_eq!(t.leaf_labels(), (10..10 + s).collect::<Vec<_>>());
            assert_eq!(t.interior_edges().len(), s - 3);
        }
        assert!(BinaryTree::caterpillar(&[1, 2]).is_err());
    }

    #[test]
    fn three_leaf_decomposition() {
        let s = scheme(&[(1, 0), (0, 1), (1, 1)], &[]);
        let load = s.default_forceload().unwrap();
        assert!(load.is_equilibrium(s.tree()));
        assert!(load.forces.iter().all(|f| !f.is_zero()));
        assert!(s.is_strongly_generic().unwrap());
        let tripled = s.forceload(0, &Force::along(s.label(0)).scaled(&int(3)), Traversal::DepthFirst).unwrap();
        assert_eq!(tripled, SchemeLoad { forces: load.forces.iter().map(|f| f.scaled(&int(3))).collect() });
    }

    #[test]
    fn weak_genericity_is_local() {
        let s = scheme(&[(1, 0), (0, 1), (1, 1), (1, 2)], &[(1, 3)]);
        assert!(s.is_weakly_generic());
        let adjacent = scheme(&[(1, 0), (1, 0), (1, 1), (1, 2)], &[(1, 3)]);
        assert!(!adjacent.is_weakly_generic());
        assert_eq!(adjacent.default_forceload(), Err(Error::WeakGenericity));
        // leaves 0 and 2 sit at different spine vertices
        let apart = scheme(&[(1, 0), (0, 1), (1, 0), (1, 2)], &[(1, 3)]);
        assert!(apart.is_weakly_generic());
        assert!(!apart.is_strongly_generic().unwrap());
    }

    #[test]
    fn four_leaf_surgeries_cycle_topologies() {
        let s = scheme(&[(1, 0), (0, 1), (1, 1), (1, 2)], &[(1, 3)]);
        let all = s.enumerate_equivalent().unwrap();
        assert_eq!(all.len(), 3);
        let before = s.default_forceload().unwrap().leaf_forces(s.tree());
        for t in &all {
            assert!(t.is_strongly_generic().unwrap());
            // Edge 0 joins leaf 0 to its parent in every scheme, stored leaf-first.
            let load = t.forceload(0, &-&before[0].1, Traversal::BreadthFirst).unwrap();
            assert_eq!(load.leaf_forces(t.tree()), before);
            assert!(t.force_structure_holds(&load));
        }
    }

    #[test]
    fn framing_routes_agree() {
        let s = scheme(&[(1, 0), (0, 1), (1, 1), (1, 2), (2, -1)], &[(1, 3), (3, -2)]);
        assert!(s.is_strongly_generic().unwrap());
        for a in 0..5 {
            for b in 0..5 {
                if a == b {
                    continue;
                }
                let x = s.associated_framing_route(a, b, Route::FromFirst).unwrap();
                let y = s.associated_framing_route(a, b, Route::FromSecond).unwrap();
                assert_eq!(x, y);
            }
        }
    }
}
