//! JSON file formats: frameworks and graphs, quantizations, framed cycles
//! and condition systems.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use tensec_core::conditions::{sexpr, ConditionSystem, Expr, Names, NodeId, Slot, Witness};
use tensec_core::cycles::FramedCycle;
use tensec_core::framework::Framework;
use tensec_core::graph::Graph;
use tensec_core::numeric::{format_scalar, parse_scalar, Scalar};
use tensec_core::projective::{ProjLine, ProjPoint};
use tensec_core::resolution::BinaryTree;
use tensec_core::{Error, Result};

/// A coordinate given either as a JSON integer or as a `"p"` / `"p/q"` string.
#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(untagged)]
pub enum Literal {
    Int(i64),
    Text(String),
}

impl Literal {
    fn value(&self) -> Result<Scalar> {
        match self {
            Literal::Int(i) => Ok(tensec_core::numeric::int(*i)),
            Literal::Text(t) => parse_scalar(t),
        }
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct VertexEntry {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coords: Option<[Literal; 3]>,
}

/// Framework JSON; a graph file is the same without coordinates. The
/// quantization fields are optional.
#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct FrameworkFile {
    pub vertices: Vec<VertexEntry>,
    pub edges: Vec<[String; 2]>,
    /// Leaf order of the caterpillar tree at each vertex.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trees: Option<BTreeMap<String, Vec<String>>>,
    /// Free lines keyed `"<vertex>:<slot>"`, as line coefficients.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interior_labels: Option<BTreeMap<String, [Literal; 3]>>,
}

fn triple(c: &[Literal; 3]) -> Result<[Scalar; 3]> {
    Ok([c[0].value()?, c[1].value()?, c[2].value()?])
}

pub fn point_from(c: &[Literal; 3]) -> Result<ProjPoint> {
    ProjPoint::new(&triple(c)?)
}

pub fn line_from(c: &[Literal; 3]) -> Result<ProjLine> {
    ProjLine::new(&triple(c)?)
}

fn literals(ints: &[tensec_core::numeric::BigInt; 3]) -> [Literal; 3] {
    ints.clone().map(|i| Literal::Text(i.to_string()))
}

pub fn parse_file(text: &str) -> Result<FrameworkFile> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))
}

impl FrameworkFile {
    pub fn graph(&self) -> Result<Graph> {
        let ids: Vec<String> = self.vertices.iter().map(|v| v.id.clone()).collect();
        let index = |id: &str| {
            ids.iter()
                .position(|x| x == id)
                .ok_or_else(|| Error::Parse(format!("edge mentions unknown vertex {id:?}")))
        };
        let edges = self
            .edges
            .iter()
            .map(|[a, b]| Ok((index(a)?, index(b)?)))
            .collect::<Result<Vec<_>>>()?;
        Graph::new(ids, &edges)
    }

    pub fn framework(&self) -> Result<Framework> {
        let g = self.graph()?;
        let pts = self
            .vertices
            .iter()
            .map(|v| {
                v.coords
                    .as_ref()
                    .ok_or_else(|| Error::Parse(format!("vertex {} has no coordinates", v.id)))
                    .and_then(point_from)
            })
            .collect::<Result<Vec<_>>>()?;
        Framework::new(g, pts)
    }

    /// The trees at every vertex, if given; missing vertices use the default.
    pub fn trees(&self, g: &Graph) -> Result<Option<Vec<BinaryTree>>> {
        let Some(map) = &self.trees else { return Ok(None) };
        for id in map.keys() {
            if g.vertex(id).is_none() {
                return Err(Error::Parse(format!("tree given for unknown vertex {id:?}")));
            }
        }
        let mut out = Vec::with_capacity(g.vertex_count());
        for v in 0..g.vertex_count() {
            let order = match map.get(g.id(v)) {
                Some(ids) => ids
                    .iter()
                    .map(|id| g.vertex(id).ok_or_else(|| Error::Parse(format!("unknown leaf {id:?}"))))
                    .collect::<Result<Vec<_>>>()?,
                None => g.neighbors(v).to_vec(),
            };
            out.push(BinaryTree::caterpillar(&order)?);
        }
        Ok(Some(out))
    }

    pub fn witness(&self, g: &Graph) -> Result<Option<Witness>> {
        let Some(map) = &self.interior_labels else { return Ok(None) };
        let mut w = Witness::new();
        for (key, coeffs) in map {
            let (id, slot) = key
                .rsplit_once(':')
                .ok_or_else(|| Error::Parse(format!("slot key {key:?} is not <vertex>:<slot>")))?;
            let vertex = g.vertex(id).ok_or_else(|| Error::Parse(format!("unknown vertex {id:?}")))?;
            let slot: usize = slot.parse().map_err(|_| Error::Parse(format!("bad slot number in {key:?}")))?;
            w.insert(Slot { vertex, slot }, line_from(coeffs)?);
        }
        Ok(Some(w))
    }
}

pub fn framework_file(fw: &Framework) -> FrameworkFile {
    let g = fw.graph();
    FrameworkFile {
        vertices: (0..g.vertex_count())
            .map(|v| VertexEntry { id: g.id(v).into(), coords: Some(literals(fw.point(v).ints())) })
            .collect(),
        edges: g.edges().iter().map(|&(a, b)| [g.id(a).into(), g.id(b).into()]).collect(),
        trees: None,
        interior_labels: None,
    }
}

pub fn graph_file(g: &Graph) -> FrameworkFile {
    FrameworkFile {
        vertices: (0..g.vertex_count()).map(|v| VertexEntry { id: g.id(v).into(), coords: None }).collect(),
        edges: g.edges().iter().map(|&(a, b)| [g.id(a).into(), g.id(b).into()]).collect(),
        trees: None,
        interior_labels: None,
    }
}

/// Framed cycle JSON: points and framing lines as coefficient triples.
#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct FramedCycleFile {
    pub points: Vec<[Literal; 3]>,
    pub framings: Vec<[Literal; 3]>,
}

impl FramedCycleFile {
    pub fn cycle(&self) -> Result<FramedCycle> {
        let pts = self.points.iter().map(point_from).collect::<Result<Vec<_>>>()?;
        let frs = self.framings.iter().map(line_from).collect::<Result<Vec<_>>>()?;
        FramedCycle::new(pts, frs)
    }
}

pub fn parse_framed_cycle(text: &str) -> Result<FramedCycle> {
    let f: FramedCycleFile = serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
    f.cycle()
}

pub fn framed_cycle_file(c: &FramedCycle) -> FramedCycleFile {
    FramedCycleFile {
        points: c.points().iter().map(|p| literals(p.ints())).collect(),
        framings: c.framings().iter().map(|l| literals(l.ints())).collect(),
    }
}

pub fn coords_json(ints: &[tensec_core::numeric::BigInt; 3]) -> Value {
    Value::Array(ints.iter().map(|i| Value::String(i.to_string())).collect())
}

pub fn scalar_json(x: &Scalar) -> Value {
    Value::String(format_scalar(x))
}

/// S-expression of a condition with vertex ids as atoms.
pub fn condition_sexpr(sys: &ConditionSystem, g: &Graph, root: NodeId) -> String {
    let point = |v: usize| g.id(v).to_string();
    sexpr(&sys.arena, root, &Names { point: &point, var: None })
}

/// The nodes reachable from `root` with their ids.
pub fn ast_json(sys: &ConditionSystem, g: &Graph, root: NodeId) -> Value {
    let ar = &sys.arena;
    let nodes: Vec<Value> = ar
        .reachable(root)
        .into_iter()
        .map(|id| match ar.get(id) {
            Expr::Point(v) => json!({"id": id, "op": "point", "vertex": g.id(*v)}),
            Expr::LineVar { vertex, slot } => json!({"id": id, "op": "var", "vertex": g.id(*vertex), "slot": slot}),
            Expr::Join(a, b) => json!({"id": id, "op": "join", "args": [a, b]}),
            Expr::Meet(a, b) => json!({"id": id, "op": "meet", "args": [a, b]}),
            Expr::PointOn { line, avoid } => json!({"id": id, "op": "point-on", "args": [line], "avoid": avoid}),
            Expr::LineThrough { point, avoid } => {
                json!({"id": id, "op": "line-through", "args": [point], "avoid": avoid})
            }
            Expr::Concurrent(a, b, c) => json!({"id": id, "op": "concurrent", "args": [a, b, c]}),
            Expr::Collinear(a, b, c) => json!({"id": id, "op": "collinear", "args": [a, b, c]}),
            Expr::Incident(a, b) => json!({"id": id, "op": "incident", "args": [a, b]}),
        })
        .collect();
    json!({"root": root, "nodes": nodes})
}

pub fn system_json(sys: &ConditionSystem, g: &Graph) -> Value {
    let slots: Vec<Value> = sys.xi.slots.iter().map(|s| json!([g.id(s.vertex), s.slot])).collect();
    let conditions: Vec<Value> = sys
        .conditions
        .iter()
        .map(|c| {
            json!({
                "cycle": g.cycle_ids(&c.cycle),
                "ast": ast_json(sys, g, c.root),
                "sexpr": condition_sexpr(sys, g, c.root),
            })
        })
        .collect();
    json!({"xi": {"slots": slots}, "conditions": conditions})
}
