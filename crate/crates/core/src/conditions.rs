//! The configuration space of free lines, the symbolic condition language
//! over meet, join and generic choices, the compiler from a graph with
//! resolution trees to a system of conditions, and its evaluation.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::cycles::FramedCycle;
use crate::framework::{general_position_violation, Framework};
use crate::graph::Graph;
use crate::projective::{
    join, meet, pick_generic_line_through, pick_generic_point_on, rel_collinear, rel_concurrent, rel_incident,
    GeomValue, ProjLine, ProjPoint,
};
use crate::quantization::{consistency_cycles, CycleMode, Quantization};
use crate::resolution::{BinaryTree, FramingStep};
use crate::rng::derive;
use crate::{Error, Result};

pub type NodeId = usize;

/// One AST node. Children are ids into the owning [`Arena`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Expr {
    Point(usize),
    /// The free line `slot` (1-based) through the point of `vertex`.
    LineVar { vertex: usize, slot: usize },
    Join(NodeId, NodeId),
    Meet(NodeId, NodeId),
    PointOn { line: NodeId, avoid: Vec<NodeId> },
    LineThrough { point: NodeId, avoid: Vec<NodeId> },
    Concurrent(NodeId, NodeId, NodeId),
    Collinear(NodeId, NodeId, NodeId),
    Incident(NodeId, NodeId),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sort {
    Point,
    Line,
    Relation,
}

impl Expr {
    pub fn children(&self) -> Vec<NodeId> {
        match self {
            Expr::Point(_) | Expr::LineVar { .. } => Vec::new(),
            Expr::Join(a, b) | Expr::Meet(a, b) | Expr::Incident(a, b) => vec![*a, *b],
            Expr::PointOn { line: x, avoid } | Expr::LineThrough { point: x, avoid } => {
                let mut v = vec![*x];
                v.extend(avoid.iter().copied());
                v
            }
            Expr::Concurrent(a, b, c) | Expr::Collinear(a, b, c) => vec![*a, *b, *c],
        }
    }

    pub fn is_generic(&self) -> bool {
        matches!(self, Expr::PointOn { .. } | Expr::LineThrough { .. })
    }
}

/// Hash-consed expression store: structurally equal nodes share one id.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Arena {
    nodes: Vec<Expr>,
    sorts: Vec<Sort>,
    index: BTreeMap<Expr, NodeId>,
}

impl Arena {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn get(&self, id: NodeId) -> &Expr {
        &self.nodes[id]
    }

    pub fn sort(&self, id: NodeId) -> Sort {
        self.sorts[id]
    }

    /// Adds `e` after checking child sorts; relations may not be children.
    pub fn add(&mut self, e: Expr) -> Result<NodeId> {
        let want = |s: &Self, id: NodeId, sort: Sort| -> Result<()> {
            match s.sorts.get(id) {
                Some(&got) if got == sort => Ok(()),
                Some(got) => Err(Error::Precondition(format!("expected a {sort:?} child, got {got:?}"))),
                None => Err(Error::Precondition(format!("unknown node {id}"))),
            }
        };
        let sort = match &e {
            Expr::Point(_) => Sort::Point,
            Expr::LineVar { slot, .. } => {
                if *slot == 0 {
                    return Err(Error::Precondition("slots are numbered from 1".into()));
                }
                Sort::Line
            }
            Expr::Join(a, b) => {
                want(self, *a, Sort::Point)?;
                want(self, *b, Sort::Point)?;
                Sort::Line
            }
            Expr::Meet(a, b) => {
                want(self, *a, Sort::Line)?;
                want(self, *b, Sort::Line)?;
                Sort::Point
            }
            Expr::PointOn { line, avoid } => {
                want(self, *line, Sort::Line)?;
                for &a in avoid {
                    want(self, a, Sort::Point)?;
                }
                Sort::Point
            }
            Expr::LineThrough { point, avoid } => {
                want(self, *point, Sort::Point)?;
                for &a in avoid {
                    want(self, a, Sort::Line)?;
                }
                Sort::Line
            }
            Expr::Concurrent(a, b, c) => {
                for x in [a, b, c] {
                    want(self, *x, Sort::Line)?;
                }
                Sort::Relation
            }
            Expr::Collinear(a, b, c) => {
                for x in [a, b, c] {
                    want(self, *x, Sort::Point)?;
                }
                Sort::Relation
            }
            Expr::Incident(p, l) => {
                want(self, *p, Sort::Point)?;
                want(self, *l, Sort::Line)?;
                Sort::Relation
            }
        };
        if let Some(&id) = self.index.get(&e) {
            return Ok(id);
        }
        let id = self.nodes.len();
        self.nodes.push(e.clone());
        self.sorts.push(sort);
        self.index.insert(e, id);
        Ok(id)
    }

    fn node(&mut self, e: Expr) -> NodeId {
        self.add(e).expect("compiler builds well-sorted nodes")
    }

    pub fn point(&mut self, v: usize) -> NodeId {
        self.node(Expr::Point(v))
    }

    pub fn var(&mut self, vertex: usize, slot: usize) -> NodeId {
        self.node(Expr::LineVar { vertex, slot })
    }

    pub fn join(&mut self, a: NodeId, b: NodeId) -> NodeId {
        self.node(Expr::Join(a, b))
    }

    pub fn meet(&mut self, a: NodeId, b: NodeId) -> NodeId {
        self.node(Expr::Meet(a, b))
    }

    /// The join of two vertices, listed in increasing vertex order.
    pub fn edge(&mut self, a: usize, b: usize) -> NodeId {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        let (pa, pb) = (self.point(a), self.point(b));
        self.join(pa, pb)
    }

    /// Nodes reachable from `root`, in increasing id order.
    pub fn reachable(&self, root: NodeId) -> Vec<NodeId> {
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![root];
        while let Some(id) = stack.pop() {
            if !seen[id] {
                seen[id] = true;
                stack.extend(self.nodes[id].children());
            }
        }
        (0..self.nodes.len()).filter(|&i| seen[i]).collect()
    }
}

/// One free line through a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Slot {
    pub vertex: usize,
    pub slot: usize,
}

/// The free-line slots: `deg − 3` lines through every vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XiSpace {
    pub slots: Vec<Slot>,
}

impl XiSpace {
    pub fn dimension(&self) -> usize {
        self.slots.len()
    }
}

pub fn xi_space(g: &Graph) -> Result<XiSpace> {
    g.check_condition_ready()?;
    let slots = (0..g.vertex_count())
        .flat_map(|v| (1..=g.degree(v) - 3).map(move |slot| Slot { vertex: v, slot }))
        .collect();
    Ok(XiSpace { slots })
}

/// Assignment of lines to slots.
pub type Witness = BTreeMap<Slot, ProjLine>;

/// Interior labels of a quantization as slot values; slot `j` of a vertex is
/// its `j`-th interior tree edge.
pub fn witness_from_quantization(q: &Quantization) -> Witness {
    let mut w = Witness::new();
    for v in 0..q.framework().graph().vertex_count() {
        for (j, l) in q.interior_labels(v).into_iter().enumerate() {
            w.insert(Slot { vertex: v, slot: j + 1 }, l);
        }
    }
    w
}

/// Symbolic H→Φ surgery on the edge `xy` of a scheme at `p`: the new label
/// of the middle edge, drawn by the parallelogram construction in a generic
/// chart. `l12` is the middle edge, `l13, l14` sit at `x` with `l13` kept,
/// and `l25, l26` sit at `y` with `l25` moved.
pub fn surgery_expression(ar: &mut Arena, p: NodeId, l12: NodeId, l13: NodeId, l14: NodeId, l25: NodeId, l26: NodeId) -> NodeId {
    let p_inf = ar.node(Expr::PointOn { line: l12, avoid: vec![p] });
    let l_inf = ar.node(Expr::LineThrough { point: p_inf, avoid: vec![l12] });
    let far13 = ar.meet(l13, l_inf);
    let p1 = ar.node(Expr::PointOn { line: l13, avoid: vec![p, p_inf, far13] });
    let far12 = ar.meet(l12, l_inf);
    let hat = ar.join(p1, far12);
    let p2 = ar.meet(hat, l25);
    let far14 = ar.meet(l14, l_inf);
    let far26 = ar.meet(l26, l_inf);
    let a = ar.join(p1, far14);
    let b = ar.join(p2, far26);
    let p3 = ar.meet(a, b);
    ar.join(p, p3)
}

/// The symbolic associated framing at `v` for neighbours `a` and `b`, over
/// the tree `t` at `v`. Leaf edges carry the edge joins, interior edges the
/// free lines in interior-edge order.
pub fn framing_expression(ar: &mut Arena, t: &BinaryTree, v: usize, a: usize, b: usize) -> Result<NodeId> {
    let leaves = t.leaf_labels();
    let (a, b) = if leaves.len() == 4 {
        // Complementary pairs share their framing; use the pair with the least label.
        let least = *leaves.iter().min().expect("nonempty");
        if a == least || b == least {
            (a, b)
        } else {
            let rest: Vec<usize> = leaves.iter().copied().filter(|&x| x != a && x != b).collect();
            (rest[0], rest[1])
        }
    } else {
        (a, b)
    };
    let p = ar.point(v);
    let mut slot = 0;
    let mut labels = Vec::with_capacity(t.edges().len());
    for e in 0..t.edges().len() {
        if t.is_interior(e) {
            slot += 1;
            labels.push(ar.var(v, slot));
        } else {
            let (x, y) = t.edges()[e];
            let leaf = if t.is_leaf(x) { x } else { y };
            labels.push(ar.edge(v, t.leaf_label(leaf).expect("leaf")));
        }
    }
    let mut t = t.clone();
    loop {
        match t.framing_step(a, b)? {
            FramingStep::Shared(e) => return Ok(labels[e]),
            FramingStep::Surgery { edge, x, keep, moved } => {
                let (next, r) = t.rewire(edge, x, keep, moved)?;
                labels[edge] = surgery_expression(
                    ar,
                    p,
                    labels[r.edge],
                    labels[r.keep],
                    labels[r.swapped],
                    labels[r.moved],
                    labels[r.other],
                );
                t = next;
            }
        }
    }
}

/// Order in which the projections shorten a cycle to a triangle.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ProjectionOrder {
    /// Always merge the first two points.
    #[default]
    Leading,
    /// Merge neighbouring pairs from the second point on, round after round;
    /// reproduces the printed small-cycle forms.
    Paired,
}

/// The cycle condition of a framed cycle given symbolically: `points[i]`
/// carries `framings[i]`, and `edges[i]` joins `points[i]` and `points[i+1]`.
pub fn cycle_condition(
    ar: &mut Arena,
    points: &[NodeId],
    edges: &[NodeId],
    framings: &[NodeId],
    order: ProjectionOrder,
) -> Result<NodeId> {
    let k = points.len();
    if k < 3 || edges.len() != k || framings.len() != k {
        return Err(Error::Precondition(format!("a cycle condition needs k ≥ 3 matching lists, got {k}")));
    }
    let mut pts = points.to_vec();
    let mut es = edges.to_vec();
    let mut frs = framings.to_vec();
    // For merged positions: the two framings and the new point.
    let mut merged: Vec<Option<(NodeId, NodeId, NodeId)>> = vec![None; k];
    let mut merge = |ar: &mut Arena, i: usize, pts: &mut Vec<NodeId>, es: &mut Vec<NodeId>, frs: &mut Vec<NodeId>| {
        let n = pts.len();
        let (prev, next) = (es[(i + n - 1) % n], es[(i + 1) % n]);
        let (la, lb) = (frs[i], frs[(i + 1) % n]);
        let corner = ar.meet(la, lb);
        let (p, l) = match order {
            ProjectionOrder::Leading => {
                let p = ar.meet(prev, next);
                (p, ar.join(p, corner))
            }
            ProjectionOrder::Paired => {
                let (x, y) = if ar.get(prev) <= ar.get(next) { (prev, next) } else { (next, prev) };
                let p = ar.meet(x, y);
                (p, ar.join(corner, p))
            }
        };
        let j = (i + 1) % n;
        pts[i] = p;
        frs[i] = l;
        merged[i] = Some((la, lb, p));
        pts.remove(j);
        frs.remove(j);
        merged.remove(j);
        es.remove(i);
    };
    match order {
        ProjectionOrder::Leading => {
            while pts.len() > 3 {
                merge(ar, 0, &mut pts, &mut es, &mut frs);
            }
            Ok(ar.node(Expr::Concurrent(frs[0], frs[1], frs[2])))
        }
        ProjectionOrder::Paired => {
            while pts.len() > 3 {
                let mut i = 1;
                while i + 1 < pts.len() && pts.len() > 3 {
                    merge(ar, i, &mut pts, &mut es, &mut frs);
                    i += 1;
                }
            }
            let _ = pts;
            match (merged[0], merged[1], merged[2]) {
                (None, Some((la, lb, p)), None) => {
                    let a = ar.meet(frs[0], frs[2]);
                    let b = ar.meet(la, lb);
                    Ok(ar.node(Expr::Collinear(a, b, p)))
                }
                _ => Ok(ar.node(Expr::Concurrent(frs[1], frs[0], frs[2]))),
            }
        }
    }
}

/// The cycle condition of a concrete framed cycle: points are positions
/// `0..k` and framing `i` is slot 1 of position `i`.
pub fn framed_cycle_condition(k: usize, order: ProjectionOrder) -> Result<(Arena, NodeId)> {
    let mut ar = Arena::new();
    let points: Vec<NodeId> = (0..k).map(|i| ar.point(i)).collect();
    let edges: Vec<NodeId> = (0..k).map(|i| ar.edge(i, (i + 1) % k)).collect();
    let framings: Vec<NodeId> = (0..k).map(|i| ar.var(i, 1)).collect();
    let root = cycle_condition(&mut ar, &points, &edges, &framings, order)?;
    Ok((ar, root))
}

/// Evaluates the cycle condition on a concrete framed cycle.
pub fn framed_cycle_condition_holds(c: &FramedCycle, order: ProjectionOrder, seed: u64) -> Result<bool> {
    let (ar, root) = framed_cycle_condition(c.len(), order)?;
    let witness: Witness = (0..c.len()).map(|i| (Slot { vertex: i, slot: 1 }, c.framing(i).clone())).collect();
    Evaluator::new(&ar, c.points(), &witness, seed).holds(root)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condition {
    pub cycle: Vec<usize>,
    pub root: NodeId,
}

/// One condition per configured cycle, over a shared arena.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionSystem {
    pub arena: Arena,
    pub xi: XiSpace,
    pub conditions: Vec<Condition>,
}

/// Compiles the graph with one tree per vertex into its condition system.
pub fn generate_system(g: &Graph, trees: &[BinaryTree], mode: CycleMode, order: ProjectionOrder) -> Result<ConditionSystem> {
    let xi = xi_space(g)?;
    if trees.len() != g.vertex_count() {
        return Err(Error::Precondition("one tree per vertex is required".into()));
    }
    for (v, t) in trees.iter().enumerate() {
        let mut leaves = t.leaf_labels();
        leaves.sort_unstable();
        if leaves != g.neighbors(v) {
            return Err(Error::Precondition(format!("leaves of the tree at {} must be its neighbours", g.id(v))));
        }
    }
    let mut ar = Arena::new();
    let mut conditions = Vec::new();
    for cycle in consistency_cycles(g, mode) {
        let k = cycle.len();
        let points: Vec<NodeId> = cycle.iter().map(|&v| ar.point(v)).collect();
        let edges: Vec<NodeId> = (0..k).map(|i| ar.edge(cycle[i], cycle[(i + 1) % k])).collect();
        let mut framings = Vec::with_capacity(k);
        for i in 0..k {
            let (prev, v, next) = (cycle[(i + k - 1) % k], cycle[i], cycle[(i + 1) % k]);
            framings.push(framing_expression(&mut ar, &trees[v], v, prev, next)?);
        }
        let root = cycle_condition(&mut ar, &points, &edges, &framings, order)?;
        conditions.push(Condition { cycle, root });
    }
    Ok(ConditionSystem { arena: ar, xi, conditions })
}

/// [`generate_system`] for a placed framework, which must be in general position.
pub fn generate_system_for(fw: &Framework, trees: &[BinaryTree], mode: CycleMode, order: ProjectionOrder) -> Result<ConditionSystem> {
    if let Some(c) = general_position_violation(fw) {
        return Err(Error::GeneralPosition { cycle: fw.graph().cycle_ids(&c) });
    }
    generate_system(fw.graph(), trees, mode, order)
}

/// Result of evaluating one node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Bool(bool),
    Geom(GeomValue),
}

/// Memoizing bottom-up evaluator. Generic choices at node `id` use the
/// sub-seed `derive(seed, id)`, so shared nodes are drawn once.
pub struct Evaluator<'a> {
    arena: &'a Arena,
    points: &'a [ProjPoint],
    witness: &'a Witness,
    seed: u64,
    memo: BTreeMap<NodeId, GeomValue>,
    visited: usize,
}

impl<'a> Evaluator<'a> {
    pub fn new(arena: &'a Arena, points: &'a [ProjPoint], witness: &'a Witness, seed: u64) -> Self {
        Evaluator { arena, points, witness, seed, memo: BTreeMap::new(), visited: 0 }
    }

    /// Number of nodes evaluated so far (memo hits excluded).
    pub fn visited(&self) -> usize {
        self.visited
    }

    pub fn geom(&mut self, id: NodeId) -> Result<GeomValue> {
        if let Some(v) = self.memo.get(&id) {
            return Ok(v.clone());
        }
        self.visited += 1;
        let v = match self.arena.get(id).clone() {
            Expr::Point(v) => GeomValue::Point(
                self.points
                    .get(v)
                    .cloned()
                    .ok_or_else(|| Error::Precondition(format!("no point for vertex index {v}")))?,
            ),
            Expr::LineVar { vertex, slot } => {
                let l = self.witness.get(&Slot { vertex, slot }).ok_or_else(|| Error::MissingSlot {
                    vertex: format!("#{vertex}"),
                    slot,
                })?;
                if let Some(p) = self.points.get(vertex) {
                    if !p.on(l) {
                        return Err(Error::Precondition(format!("line {l} of slot {slot} misses its point {p}")));
                    }
                }
                GeomValue::Line(l.clone())
            }
            Expr::Join(a, b) => match self.geom(a)? {
                GeomValue::True => GeomValue::True,
                va => join(&va, &self.geom(b)?)?,
            },
            Expr::Meet(a, b) => match self.geom(a)? {
                GeomValue::True => GeomValue::True,
                va => meet(&va, &self.geom(b)?)?,
            },
            Expr::PointOn { line, avoid } => match self.geom(line)? {
                GeomValue::Line(l) => {
                    let mut av = Vec::new();
                    for a in avoid {
                        if let GeomValue::Point(p) = self.geom(a)? {
                            av.push(p);
                        }
                    }
                    GeomValue::Point(pick_generic_point_on(&l, &av, derive(self.seed, id as u64)))
                }
                _ => GeomValue::True,
            },
            Expr::LineThrough { point, avoid } => match self.geom(point)? {
                GeomValue::Point(p) => {
                    let mut av = Vec::new();
                    for a in avoid {
                        if let GeomValue::Line(l) = self.geom(a)? {
                            av.push(l);
                        }
                    }
                    GeomValue::Line(pick_generic_line_through(&p, &av, derive(self.seed, id as u64)))
                }
                _ => GeomValue::True,
            },
            Expr::Concurrent(..) | Expr::Collinear(..) | Expr::Incident(..) => {
                return Err(Error::Precondition("a relation has no geometric value".into()))
            }
        };
        self.memo.insert(id, v.clone());
        Ok(v)
    }

    /// Evaluates a relation root. A `true` token among the arguments makes
    /// the relation hold without evaluating the remaining ones.
    pub fn holds(&mut self, id: NodeId) -> Result<bool> {
        let args = match self.arena.get(id) {
            Expr::Concurrent(a, b, c) | Expr::Collinear(a, b, c) => vec![*a, *b, *c],
            Expr::Incident(a, b) => vec![*a, *b],
            _ => return Err(Error::Precondition("not a relation".into())),
        };
        let mut vals = Vec::with_capacity(args.len());
        for a in args {
            let v = self.geom(a)?;
            if v == GeomValue::True {
                return Ok(true);
            }
            vals.push(v);
        }
        match self.arena.get(id) {
            Expr::Concurrent(..) => rel_concurrent(&vals[0], &vals[1], &vals[2]),
            Expr::Collinear(..) => rel_collinear(&vals[0], &vals[1], &vals[2]),
            _ => rel_incident(&vals[0], &vals[1]),
        }
    }

    pub fn evaluate(&mut self, id: NodeId) -> Result<Value> {
        match self.arena.sort(id) {
            Sort::Relation => self.holds(id).map(Value::Bool),
            _ => self.geom(id).map(Value::Geom),
        }
    }
}

/// Evaluates one node of `ar` on a placement with the given free lines.
pub fn evaluate(ar: &Arena, id: NodeId, fw: &Framework, witness: &Witness, seed: u64) -> Result<Value> {
    Evaluator::new(ar, fw.points(), witness, seed).evaluate(id)
}

fn check_witness(sys: &ConditionSystem, fw: &Framework, witness: &Witness) -> Result<()> {
    let g = fw.graph();
    for s in &sys.xi.slots {
        let l = witness
            .get(s)
            .ok_or_else(|| Error::MissingSlot { vertex: g.id(s.vertex).into(), slot: s.slot })?;
        if !fw.point(s.vertex).on(l) {
            return Err(Error::Precondition(format!(
                "line {l} for slot {} at {} misses the point",
                s.slot,
                g.id(s.vertex)
            )));
        }
    }
    Ok(())
}

/// All conditions hold on `fw` with the free lines set to `witness`.
pub fn fulfilled_with_witness(sys: &ConditionSystem, fw: &Framework, witness: &Witness, seed: u64) -> Result<bool> {
    Ok(failed_conditions(sys, fw, witness, seed)?.is_empty())
}

/// Indices of the conditions that fail.
pub fn failed_conditions(sys: &ConditionSystem, fw: &Framework, witness: &Witness, seed: u64) -> Result<Vec<usize>> {
    check_witness(sys, fw, witness)?;
    let mut ev = Evaluator::new(&sys.arena, fw.points(), witness, seed);
    let mut failed = Vec::new();
    for (i, c) in sys.conditions.iter().enumerate() {
        if !ev.holds(c.root)? {
            failed.push(i);
        }
    }
    Ok(failed)
}

/// Atom names for printing.
pub struct Names<'a> {
    pub point: &'a dyn Fn(usize) -> String,
    /// `None` prints free lines as `(var POINT SLOT)`.
    pub var: Option<&'a dyn Fn(usize, usize) -> String>,
}

/// S-expression of `root`. Generic choices are bound once in a leading `let`
/// as `g1, g2, ...` in id order.
pub fn sexpr(ar: &Arena, root: NodeId, names: &Names) -> String {
    let generic: Vec<NodeId> = ar.reachable(root).into_iter().filter(|&i| ar.get(i).is_generic()).collect();
    let bound: BTreeMap<NodeId, String> = generic.iter().enumerate().map(|(k, &i)| (i, format!("g{}", k + 1))).collect();
    let body = render(ar, root, names, &bound, true);
    if generic.is_empty() {
        return body;
    }
    let binds: Vec<String> = generic
        .iter()
        .map(|i| format!("({} {})", bound[i], render(ar, *i, names, &bound, false)))
        .collect();
    format!("(let ({}) {})", binds.join(" "), body)
}

fn render(ar: &Arena, id: NodeId, names: &Names, bound: &BTreeMap<NodeId, String>, use_binding: bool) -> String {
    if use_binding {
        if let Some(n) = bound.get(&id) {
            return n.clone();
        }
    }
    let r = |c: NodeId| render(ar, c, names, bound, true);
    let list = |xs: &[NodeId]| xs.iter().map(|&c| r(c)).collect::<Vec<_>>().join(" ");
    match ar.get(id) {
        Expr::Point(v) => (names.point)(*v),
        Expr::LineVar { vertex, slot } => match names.var {
            Some(f) => f(*vertex, *slot),
            None => format!("(var {} {slot})", (names.point)(*vertex)),
        },
        Expr::Join(a, b) => format!("(join {} {})", r(*a), r(*b)),
        Expr::Meet(a, b) => format!("(meet {} {})", r(*a), r(*b)),
        Expr::PointOn { line, avoid } => format!("(point-on {} (avoid {}))", r(*line), list(avoid)),
        Expr::LineThrough { point, avoid } => format!("(line-through {} (avoid {}))", r(*point), list(avoid)),
        Expr::Concurrent(a, b, c) => format!("(concurrent {})", list(&[*a, *b, *c])),
        Expr::Collinear(a, b, c) => format!("(collinear {})", list(&[*a, *b, *c])),
        Expr::Incident(a, b) => format!("(incident {})", list(&[*a, *b])),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::framework::{equilibrium_forceload_basis, find_non_parallelizable};
    use crate::quantization::{default_trees, framed_cycle_of, quantization_from_stress};
    use crate::resolution::ResolutionScheme;
    use alloc::string::ToString;

    fn display(k: usize, order: ProjectionOrder) -> String {
        let (ar, root) = framed_cycle_condition(k, order).unwrap();
        let point = |i: usize| format!("p{}", i + 1);
        let var = |i: usize, _: usize| format!("l{}", i + 1);
        sexpr(&ar, root, &Names { point: &point, var: Some(&var) })
    }

    #[test]
    fn small_cycle_forms() {
        assert_eq!(display(3, ProjectionOrder::Paired), "(concurrent l2 l1 l3)");
        assert_eq!(display(3, ProjectionOrder::Leading), "(concurrent l1 l2 l3)");
        assert_eq!(
            display(4, ProjectionOrder::Paired),
            "(collinear (meet l1 l4) (meet l2 l3) (meet (join p1 p2) (join p3 p4)))"
        );
        assert_eq!(
            display(5, ProjectionOrder::Paired),
            "(concurrent (join (meet l2 l3) (meet (join p1 p2) (join p3 p4))) l1 \
             (join (meet l4 l5) (meet (join p1 p5) (join p3 p4))))"
        );
    }

    #[test]
    fn sort_check_rejects_ill_typed() {
        let mut ar = Arena::new();
        let p = ar.point(0);
        assert!(ar.add(Expr::Meet(p, p)).is_err());
        let l = ar.join(p, p);
        let rel = ar.add(Expr::Incident(p, l)).unwrap();
        assert!(ar.add(Expr::Join(rel, p)).is_err());
        assert_eq!(ar.join(p, p), l);
    }

    #[test]
    fn degree_three_and_four_shortcuts() {
        let mut ar = Arena::new();
        let t = BinaryTree::caterpillar(&[1, 3, 5]).unwrap();
        let e = framing_expression(&mut ar, &t, 0, 1, 5).unwrap();
        let want = Expr::Join(ar.point(0), ar.point(3));
        assert_eq!(ar.get(e), &want);
        let t = BinaryTree::caterpillar(&[1, 2, 3, 4]).unwrap();
        let a = framing_expression(&mut ar, &t, 0, 1, 2).unwrap();
        let b = framing_expression(&mut ar, &t, 0, 3, 4).unwrap();
        assert_eq!(a, b);
        assert_eq!(ar.get(a), &Expr::LineVar { vertex: 0, slot: 1 });
        let c = framing_expression(&mut ar, &t, 0, 1, 3).unwrap();
        let d = framing_expression(&mut ar, &t, 0, 2, 4).unwrap();
        assert_eq!(c, d);
        assert!(ar.reachable(c).iter().any(|&i| ar.get(i).is_generic()));
    }

    #[test]
    fn desargues_contains_the_triple() {
        let g = fixtures::desargues_graph();
        let trees = default_trees(&g).unwrap();
        let sys = generate_system(&g, &trees, CycleMode::All, ProjectionOrder::Leading).unwrap();
        assert_eq!(sys.xi.dimension(), 0);
        let point = |v: usize| g.id(v).to_string();
        let names = Names { point: &point, var: None };
        let all: Vec<String> = sys.conditions.iter().map(|c| sexpr(&sys.arena, c.root, &names)).collect();
        assert!(all.iter().any(|s| s == "(concurrent (join p1 p2) (join p3 p4) (join p5 p6))"), "{all:?}");
        let empty = Witness::new();
        assert!(fulfilled_with_witness(&sys, &fixtures::desargues_pos(), &empty, 1).unwrap());
        assert!(!fulfilled_with_witness(&sys, &fixtures::desargues_neg(), &empty, 1).unwrap());
    }

    #[test]
    fn pascal_verdicts() {
        let g = fixtures::pascal_graph();
        let trees = default_trees(&g).unwrap();
        for order in [ProjectionOrder::Leading, ProjectionOrder::Paired] {
            let sys = generate_system(&g, &trees, CycleMode::All, order).unwrap();
            assert_eq!(sys.conditions.len(), 9);
            let empty = Witness::new();
            assert!(fulfilled_with_witness(&sys, &fixtures::pascal_pos(), &empty, 4).unwrap());
            assert!(!fulfilled_with_witness(&sys, &fixtures::pascal_neg(), &empty, 4).unwrap());
        }
    }

    #[test]
    fn xi_dimensions() {
        assert_eq!(xi_space(&fixtures::wheel5_graph()).unwrap().slots, vec![Slot { vertex: 4, slot: 1 }]);
        assert_eq!(xi_space(&fixtures::complete_graph(5)).unwrap().dimension(), 5);
        let square = Graph::numbered(4, &[(1, 2), (2, 3), (3, 4), (1, 4)]).unwrap();
        assert!(matches!(xi_space(&square), Err(Error::InvalidGraph(_))));
    }

    fn stressed_scheme(seed: u64) -> (Framework, Quantization) {
        let fw = fixtures::place(
            fixtures::complete_graph(6),
            &[[0, 0, 1], [7, 1, 1], [9, 6, 1], [4, 11, 1], [-3, 7, 1], [3, 4, 1]],
        );
        let basis = equilibrium_forceload_basis(&fw);
        let fl = find_non_parallelizable(&fw, &basis, seed).unwrap();
        let q = quantization_from_stress(&fw, &fl, default_trees(fw.graph()).unwrap()).unwrap();
        (fw, q)
    }

    #[test]
    fn symbolic_framings_match_numeric() {
        let (fw, q) = stressed_scheme(2);
        let w = witness_from_quantization(&q);
        let g = fw.graph();
        let mut ar = Arena::new();
        for v in 0..g.vertex_count() {
            let s: &ResolutionScheme = q.scheme(v);
            let nb = g.neighbors(v);
            for (i, &a) in nb.iter().enumerate() {
                for &b in &nb[i + 1..] {
                    let e = framing_expression(&mut ar, s.tree(), v, a, b).unwrap();
                    let want = s.associated_framing(a, b).unwrap();
                    for seed in [3, 11] {
                        let got = Evaluator::new(&ar, fw.points(), &w, seed).geom(e).unwrap();
                        assert_eq!(got, GeomValue::Line(want.clone()), "vertex {v} pair {a} {b}");
                    }
                }
            }
        }
    }

    #[test]
    fn stressed_k6_witness_fulfills() {
        let (fw, q) = stressed_scheme(5);
        let w = witness_from_quantization(&q);
        let sys = generate_system(fw.graph(), &default_trees(fw.graph()).unwrap(), CycleMode::Generators, ProjectionOrder::Leading)
            .unwrap();
        assert!(fulfilled_with_witness(&sys, &fw, &w, 8).unwrap());
        let c = &sys.conditions[0].cycle;
        assert!(crate::cycles::monodromy_is_trivial(&framed_cycle_of(&q, c).unwrap(), 1).unwrap());
    }

    #[test]
    fn true_token_short_circuits() {
        let mut ar = Arena::new();
        let (p0, p1, p2) = (ar.point(0), ar.point(1), ar.point(2));
        let same = ar.join(p0, p0);
        let l1 = ar.join(p1, p2);
        let l2 = ar.var(7, 1);
        let root = ar.add(Expr::Concurrent(same, l1, l2)).unwrap();
        let pts = [ProjPoint::from_i64([0, 0, 1]).unwrap(), ProjPoint::from_i64([1, 0, 1]).unwrap(), ProjPoint::from_i64([0, 1, 1]).unwrap()];
        let empty = Witness::new();
        let mut ev = Evaluator::new(&ar, &pts, &empty, 0);
        assert!(ev.holds(root).unwrap());
        assert_eq!(ev.visited(), 2);
    }

    #[test]
    fn missing_slot_is_reported() {
        let fw = fixtures::wheel5();
        let g = fw.graph();
        let sys = generate_system(g, &default_trees(g).unwrap(), CycleMode::All, ProjectionOrder::Leading).unwrap();
        let err = fulfilled_with_witness(&sys, &fw, &Witness::new(), 0).unwrap_err();
        assert_eq!(err, Error::MissingSlot { vertex: "p5".into(), slot: 1 });
    }
}
