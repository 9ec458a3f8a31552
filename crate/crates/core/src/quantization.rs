//! Quantizations: a resolution tree at every vertex of a framework with
//! lines on all tree edges, their consistency along cycles, and the
//! inductive construction of equilibrium force-loads on the glued trees.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::cycles::{monodromy_is_trivial, FramedCycle};
use crate::framework::{first_parallelizable_vertex, ForceLoad, Framework};
use crate::graph::{split_by_smallest_chord, Graph};
use crate::projective::{Force, ProjLine};
use crate::resolution::{decompose, BinaryTree, ResolutionScheme};
use crate::{Error, Result};

/// Caterpillar trees over each vertex's neighbours in increasing order.
pub fn default_trees(g: &Graph) -> Result<Vec<BinaryTree>> {
    (0..g.vertex_count()).map(|v| BinaryTree::caterpillar(g.neighbors(v))).collect()
}

/// A framework with a resolution scheme at every vertex. Leaves of the tree
/// at `p_i` are labelled by neighbour indices `j` and carry the line `p_i p_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quantization {
    fw: Framework,
    schemes: Vec<ResolutionScheme>,
}

impl Quantization {
    /// `interior[v]` lists the labels of the interior edges of `trees[v]` in
    /// increasing edge order.
    pub fn new(fw: Framework, trees: Vec<BinaryTree>, interior: Vec<Vec<ProjLine>>) -> Result<Self> {
        let g = fw.graph();
        if trees.len() != g.vertex_count() || interior.len() != g.vertex_count() {
            return Err(Error::Precondition("one tree and one label list per vertex are required".into()));
        }
        let mut schemes = Vec::with_capacity(trees.len());
        for (v, (t, inner)) in trees.into_iter().zip(interior).enumerate() {
            let mut leaves = t.leaf_labels();
            leaves.sort_unstable();
            if leaves != g.neighbors(v) {
                return Err(Error::Precondition(format!(
                    "leaves of the tree at {} must be its neighbours",
                    g.id(v)
                )));
            }
            let slots = t.interior_edges();
            if slots.len() != inner.len() {
                return Err(Error::Precondition(format!(
                    "tree at {} has {} interior edges but {} labels were given",
                    g.id(v),
                    slots.len(),
                    inner.len()
                )));
            }
            let mut labels = Vec::with_capacity(t.edges().len());
            let mut it = inner.into_iter();
            for e in 0..t.edges().len() {
                if t.is_interior(e) {
                    labels.push(it.next().expect("counted"));
                } else {
                    let (a, b) = t.edges()[e];
                    let leaf = if t.is_leaf(a) { a } else { b };
                    let j = t.leaf_label(leaf).expect("leaf");
                    labels.push(fw.edge_line(v, j));
                }
            }
            schemes.push(ResolutionScheme::new(t, fw.point(v).clone(), labels).map_err(|e| match e {
                Error::Precondition(m) => Error::Precondition(format!("at {}: {m}", g.id(v))),
                other => other,
            })?);
        }
        Ok(Quantization { fw, schemes })
    }

    pub fn framework(&self) -> &Framework {
        &self.fw
    }

    pub fn scheme(&self, v: usize) -> &ResolutionScheme {
        &self.schemes[v]
    }

    pub fn schemes(&self) -> &[ResolutionScheme] {
        &self.schemes
    }

    pub fn interior_labels(&self, v: usize) -> Vec<ProjLine> {
        let s = &self.schemes[v];
        s.tree().interior_edges().into_iter().map(|e| s.label(e).clone()).collect()
    }

    /// Every scheme is strongly generic.
    pub fn is_generic(&self) -> bool {
        self.schemes.iter().all(|s| s.is_strongly_generic().unwrap_or(false))
    }
}

/// The quantization whose interior labels are the lines of the summed
/// incident forces on one side of each interior edge.
pub fn quantization_from_stress(fw: &Framework, fl: &ForceLoad, trees: Vec<BinaryTree>) -> Result<Quantization> {
    let g = fw.graph();
    if let Some(v) = first_parallelizable_vertex(fw, fl) {
        return Err(Error::Parallelizable { vertex: g.id(v).into() });
    }
    let mut interior = Vec::with_capacity(trees.len());
    for (v, t) in trees.iter().enumerate() {
        let mut labels = Vec::new();
        for e in t.interior_edges() {
            let side = t.side_labels(e, t.edges()[e].1);
            let sum = side.iter().fold(Force::zero(), |acc, &j| &acc + &fl.force(g, v, j));
            labels.push(sum.line()?);
        }
        interior.push(labels);
    }
    Quantization::new(fw.clone(), trees, interior)
}

fn check_cycle(g: &Graph, cycle: &[usize]) -> Result<()> {
    if !g.is_simple_cycle(cycle) {
        return Err(Error::Precondition("not a simple cycle of the graph".into()));
    }
    if cycle.len() == g.vertex_count() {
        return Err(Error::Precondition("the cycle passes through every vertex".into()));
    }
    Ok(())
}

/// The cycle's points framed by the associated framings `ℓ_{i-1,i,i+1}`.
pub fn framed_cycle_of(q: &Quantization, cycle: &[usize]) -> Result<FramedCycle> {
    let g = q.fw.graph();
    check_cycle(g, cycle)?;
    let k = cycle.len();
    let mut framings = Vec::with_capacity(k);
    for i in 0..k {
        let (prev, v, next) = (cycle[(i + k - 1) % k], cycle[i], cycle[(i + 1) % k]);
        framings.push(q.schemes[v].associated_framing(prev, next)?);
    }
    let points = cycle.iter().map(|&v| q.fw.point(v).clone()).collect();
    FramedCycle::new(points, framings)
}

/// Monodromy of the associated framed cycle is trivial.
pub fn is_consistent_at(q: &Quantization, cycle: &[usize], seed: u64) -> Result<bool> {
    let fc = framed_cycle_of(q, cycle)?;
    if !fc.is_in_general_position() {
        return Err(Error::GeneralPosition { cycle: q.fw.graph().cycle_ids(cycle) });
    }
    monodromy_is_trivial(&fc, seed)
}

/// Which cycles the consistency check and condition generation use.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CycleMode {
    /// Every simple cycle omitting at least one vertex.
    #[default]
    All,
    /// A fundamental cycle basis; a basis cycle through every vertex is
    /// replaced by the two halves cut off by its smallest chord.
    Generators,
}

pub fn consistency_cycles(g: &Graph, mode: CycleMode) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    match mode {
        CycleMode::All => g.simple_cycles(n.saturating_sub(1)),
        CycleMode::Generators => {
            let mut out: Vec<Vec<usize>> = Vec::new();
            let push = |c: Vec<usize>, out: &mut Vec<Vec<usize>>| {
                if !out.contains(&c) {
                    out.push(c);
                }
            };
            for c in g.fundamental_cycles() {
                if c.len() < n {
                    push(c, &mut out);
                } else if let Some((a, b, _)) = split_by_smallest_chord(g, &c) {
                    push(a, &mut out);
                    push(b, &mut out);
                }
            }
            out
        }
    }
}

/// Consistency at every configured cycle; the first failing cycle stops the check.
pub fn is_consistent(q: &Quantization, mode: CycleMode, seed: u64) -> Result<bool> {
    for (k, c) in consistency_cycles(q.fw.graph(), mode).iter().enumerate() {
        if !is_consistent_at(q, c, crate::rng::derive(seed, k as u64))? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RgEdgeKind {
    /// Two glued leaves, standing for graph edge `edge`.
    Glued { edge: usize },
    /// Interior edge `tree_edge` of the tree at `vertex`.
    Interior { vertex: usize, tree_edge: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RgEdge {
    pub a: usize,
    pub b: usize,
    pub label: ProjLine,
    pub kind: RgEdgeKind,
}

/// The trees glued along their leaves. Nodes are the inner tree nodes;
/// glued edges come first, in graph edge order, oriented from the smaller
/// graph vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionGraph {
    /// `(graph vertex, tree node)` for each node.
    pub nodes: Vec<(usize, usize)>,
    pub edges: Vec<RgEdge>,
    incident: Vec<Vec<usize>>,
}

impl ResolutionGraph {
    pub fn of(q: &Quantization) -> Self {
        let g = q.fw.graph();
        let mut nodes = Vec::new();
        let mut index: Vec<Vec<usize>> = Vec::new();
        for (v, s) in q.schemes.iter().enumerate() {
            let t = s.tree();
            let mut row = vec![usize::MAX; t.node_count()];
            for (u, slot) in row.iter_mut().enumerate() {
                if !t.is_leaf(u) {
                    *slot = nodes.len();
                    nodes.push((v, u));
                }
            }
            index.push(row);
        }
        let mut edges = Vec::new();
        for (k, &(i, j)) in g.edges().iter().enumerate() {
            let ti = q.schemes[i].tree();
            let tj = q.schemes[j].tree();
            let a = index[i][ti.leaf_parent(ti.leaf_node(j).expect("leaf for neighbour"))];
            let b = index[j][tj.leaf_parent(tj.leaf_node(i).expect("leaf for neighbour"))];
            edges.push(RgEdge { a, b, label: q.fw.edge_line(i, j), kind: RgEdgeKind::Glued { edge: k } });
        }
        for (v, s) in q.schemes.iter().enumerate() {
            let t = s.tree();
            for e in t.interior_edges() {
                let (x, y) = t.edges()[e];
                edges.push(RgEdge {
                    a: index[v][x],
                    b: index[v][y],
                    label: s.label(e).clone(),
                    kind: RgEdgeKind::Interior { vertex: v, tree_edge: e },
                });
            }
        }
        let mut incident = vec![Vec::new(); nodes.len()];
        for (k, e) in edges.iter().enumerate() {
            incident[e.a].push(k);
            incident[e.b].push(k);
        }
        ResolutionGraph { nodes, edges, incident }
    }

    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incident[v]
    }

    pub fn other(&self, e: usize, v: usize) -> usize {
        let x = &self.edges[e];
        if x.a == v {
            x.b
        } else {
            x.a
        }
    }
}

/// Forces on the resolution graph: `forces[e] = F_{a,b}` for edge `(a, b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionLoad {
    pub forces: Vec<Force>,
}

impl ResolutionLoad {
    pub fn force_from(&self, rg: &ResolutionGraph, v: usize, e: usize) -> Force {
        if rg.edges[e].a == v {
            self.forces[e].clone()
        } else {
            -&self.forces[e]
        }
    }

    pub fn is_equilibrium(&self, rg: &ResolutionGraph) -> bool {
        (0..rg.nodes.len()).all(|v| {
            rg.incident(v)
                .iter()
                .fold(Force::zero(), |acc, &e| &acc + &self.force_from(rg, v, e))
                .is_zero()
        })
    }
}

/// Builds an equilibrium load on the resolution graph one node at a time,
/// starting from edge `seed mod |E|`. Nodes outside the trees' interior
/// edges at the last vertex are added first, then by vertex and node order.
/// A node whose computed force disagrees with one already assigned closes a
/// cycle with non-trivial monodromy, reported as an inconsistency.
pub fn construct_forceload(q: &Quantization, seed: u64) -> Result<(ResolutionGraph, ResolutionLoad)> {
    let g = q.fw.graph();
    let rg = ResolutionGraph::of(q);
    let m = rg.edges.len();
    if m == 0 {
        return Err(Error::Precondition("empty resolution graph".into()));
    }
    let last = g.vertex_count() - 1;
    let late: BTreeSet<usize> = rg
        .edges
        .iter()
        .filter(|e| matches!(e.kind, RgEdgeKind::Interior { vertex, .. } if vertex == last))
        .flat_map(|e| [e.a, e.b])
        .collect();
    let seed_edge = (seed % m as u64) as usize;
    let mut known: Vec<Option<Force>> = vec![None; m];
    known[seed_edge] = Some(Force::along(&rg.edges[seed_edge].label));
    let mut added = vec![false; rg.nodes.len()];
    loop {
        let next = (0..rg.nodes.len())
            .filter(|&v| !added[v] && rg.incident(v).iter().any(|&e| known[e].is_some()))
            .min_by_key(|&v| (late.contains(&v), rg.nodes[v]));
        let Some(v) = next else { break };
        added[v] = true;
        let inc = rg.incident(v);
        let e0 = *inc.iter().find(|&&e| known[e].is_some()).expect("candidate has a known edge");
        let f0 = {
            let f = known[e0].clone().expect("known");
            if rg.edges[e0].a == v { f } else { -f }
        };
        let rest: Vec<usize> = inc.iter().copied().filter(|&e| e != e0).collect();
        let parts = decompose(&f0, &rg.edges[rest[0]].label, &rg.edges[rest[1]].label)?;
        for (e, f) in rest.into_iter().zip(parts) {
            let stored = if rg.edges[e].a == v { f } else { -f };
            match &known[e] {
                None => known[e] = Some(stored),
                Some(old) if *old == stored => {}
                Some(_) => {
                    return Err(Error::Inconsistent { cycle: closing_cycle(q, &rg, &known, &added, v, e0, e) });
                }
            }
        }
    }
    let forces: Vec<Force> = known
        .into_iter()
        .map(|f| f.ok_or_else(|| Error::Precondition("resolution graph is not connected".into())))
        .collect::<Result<_>>()?;
    let load = ResolutionLoad { forces };
    if load.forces.iter().any(Force::is_zero) || !load.is_equilibrium(&rg) {
        return Err(Error::InvariantViolation("constructed load is not a nonzero equilibrium".into()));
    }
    Ok((rg, load))
}

/// Graph vertices along the cycle of the resolution graph closed at `v`:
/// from `v` through `e_in`, along known edges among added nodes, and back
/// through `e_out`.
fn closing_cycle(
    q: &Quantization,
    rg: &ResolutionGraph,
    known: &[Option<Force>],
    added: &[bool],
    v: usize,
    e_in: usize,
    e_out: usize,
) -> Vec<alloc::string::String> {
    let start = rg.other(e_in, v);
    let goal = rg.other(e_out, v);
    let mut prev = vec![usize::MAX; rg.nodes.len()];
    prev[start] = start;
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        if u == goal {
            break;
        }
        for &e in rg.incident(u) {
            let w = rg.other(e, u);
            if e == e_in || e == e_out || known[e].is_none() || w == v || !added[w] || prev[w] != usize::MAX {
                continue;
            }
            prev[w] = u;
            queue.push_back(w);
        }
    }
    let mut nodes = vec![v];
    if prev[goal] != usize::MAX {
        let mut path = vec![goal];
        let mut u = goal;
        while u != start {
            u = prev[u];
            path.push(u);
        }
        path.reverse();
        nodes.extend(path);
    }
    let mut verts: Vec<usize> = Vec::new();
    for n in nodes {
        let gv = rg.nodes[n].0;
        if verts.last() != Some(&gv) {
            verts.push(gv);
        }
    }
    while verts.len() > 1 && verts.first() == verts.last() {
        verts.pop();
    }
    q.fw.graph().cycle_ids(&verts)
}

/// The framework force-load read off the glued edges.
pub fn induced_stress(q: &Quantization, rg: &ResolutionGraph, load: &ResolutionLoad) -> ForceLoad {
    let g = q.fw.graph();
    let mut forces = vec![Force::zero(); g.edge_count()];
    for (k, e) in rg.edges.iter().enumerate() {
        if let RgEdgeKind::Glued { edge } = e.kind {
            forces[edge] = load.forces[k].clone();
        }
    }
    ForceLoad { forces }
}
