//! JSON dimer files.

use std::collections::BTreeMap;

use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::dimer::{Color, DimerModel, Edge, Vertex};
use crate::error::{Error, Result};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawVertex {
    id: String,
    color: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEdge {
    id: String,
    white: String,
    black: String,
    dx: i64,
    dy: i64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDimer {
    #[serde(default)]
    comment: Option<String>,
    vertices: Vec<RawVertex>,
    edges: Vec<RawEdge>,
    rotations: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    faces: BTreeMap<String, Vec<String>>,
}

pub fn parse_dimer(text: &str) -> Result<DimerModel> {
    let raw: RawDimer = serde_json::from_str(text)?;
    let mut vertices = Vec::new();
    let mut vindex = BTreeMap::new();
    for v in raw.vertices {
        let color = match v.color.as_str() {
            "black" => Color::Black,
            "white" => Color::White,
            other => return Err(Error::Parse(format!("vertices[{}].color: `{other}`", vertices.len()))),
        };
        if vindex.insert(v.id.clone(), vertices.len()).is_some() {
            return Err(Error::Parse(format!("vertices: duplicate id `{}`", v.id)));
        }
        vertices.push(Vertex { id: v.id, color });
    }
    let lookup = |field: &str, id: &str| -> Result<usize> {
        vindex.get(id).copied().ok_or_else(|| Error::Parse(format!("{field}: unknown vertex `{id}`")))
    };
    let mut edges = Vec::new();
    let mut eindex = BTreeMap::new();
    for (i, e) in raw.edges.into_iter().enumerate() {
        let white = lookup(&format!("edges[{i}].white"), &e.white)?;
        let black = lookup(&format!("edges[{i}].black"), &e.black)?;
        if eindex.insert(e.id.clone(), i).is_some() {
            return Err(Error::Parse(format!("edges: duplicate id `{}`", e.id)));
        }
        edges.push(Edge { id: e.id, white, black, d: [e.dx, e.dy] });
    }
    let elookup = |field: &str, id: &str| -> Result<usize> {
        eindex.get(id).copied().ok_or_else(|| Error::Parse(format!("{field}: unknown edge `{id}`")))
    };
    let mut rotations = vec![Vec::new(); vertices.len()];
    let mut given = vec![false; vertices.len()];
    for (v, rot) in &raw.rotations {
        let vi = lookup("rotations", v)?;
        given[vi] = true;
        rotations[vi] = rot.iter().map(|e| elookup(&format!("rotations.{v}"), e)).collect::<Result<_>>()?;
    }
    if let Some(i) = given.iter().position(|g| !g) {
        return Err(Error::Parse(format!("rotations: missing vertex `{}`", vertices[i].id)));
    }
    let mut face_names = Vec::new();
    for (name, cycle) in &raw.faces {
        let cycle = cycle.iter().map(|e| elookup(&format!("faces.{name}"), e)).collect::<Result<_>>()?;
        face_names.push((name.clone(), cycle));
    }
    Ok(DimerModel { comment: raw.comment, vertices, edges, rotations, face_names })
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn serialize_dimer(d: &DimerModel) -> String {
    let mut root = Map::new();
    if let Some(c) = &d.comment {
        root.insert("comment".into(), json!(c));
    }
    let edges: Vec<Value> = d
        .edges
        .iter()
        .map(|e| {
            json!({
                "id": e.id,
                "white": d.vertices[e.white].id,
                "black": d.vertices[e.black].id,
                "dx": e.d[0],
                "dy": e.d[1],
            })
        })
        .collect();
    root.insert("edges".into(), Value::Array(edges));
    if !d.face_names.is_empty() {
        let faces: Map<String, Value> = d.face_names.iter().map(|(n, c)| (n.clone(), json!(d.edge_ids(c)))).collect();
        root.insert("faces".into(), Value::Object(faces));
    }
    let rotations: Map<String, Value> =
        d.rotations.iter().enumerate().map(|(v, r)| (d.vertices[v].id.clone(), json!(d.edge_ids(r)))).collect();
    root.insert("rotations".into(), Value::Object(rotations));
    let vertices: Vec<Value> = d.vertices.iter().map(|v| json!({"id": v.id, "color": v.color.name()})).collect();
    root.insert("vertices".into(), Value::Array(vertices));
    let mut s = serde_json::to_string_pretty(&Value::Object(root)).expect("json values always serialize");
    s.push('\n');
    s
}
