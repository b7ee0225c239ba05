//! Dimer models on the torus as rotation systems with integer edge displacements.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::quiver::{Arrow, Qp};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Color {
    Black,
    White,
}

impl Color {
    pub fn name(self) -> &'static str {
        match self {
            Color::Black => "black",
            Color::White => "white",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub id: String,
    pub color: Color,
}

/// Edge oriented white to black; `d` counts crossings with the two cuts of the torus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub white: usize,
    pub black: usize,
    pub d: [i64; 2],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimerModel {
    pub comment: Option<String>,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    /// Counterclockwise edge indices around each vertex.
    pub rotations: Vec<Vec<usize>>,
    /// Named faces: label and the edge sequence of its dart cycle, starting with a
    /// dart that leaves a white vertex. Empty means faces are numbered in trace order.
    pub face_names: Vec<(String, Vec<usize>)>,
}

/// A dart is an edge traversed away from one endpoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dart {
    pub edge: usize,
    pub from_white: bool,
}

impl Dart {
    fn index(self) -> usize {
        2 * self.edge + (!self.from_white) as usize
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub id: String,
    /// Boundary darts in order; the face lies to the right of the walk.
    pub darts: Vec<Dart>,
}

impl Face {
    /// (edge, +1 when traversed white to black, -1 otherwise).
    pub fn boundary(&self) -> Vec<(usize, i8)> {
        self.darts.iter().map(|d| (d.edge, if d.from_white { 1 } else { -1 })).collect()
    }
}

#[derive(Clone, Debug)]
pub struct FaceTrace {
    pub faces: Vec<Face>,
    dart_face: Vec<usize>,
}

impl FaceTrace {
    pub fn face_of(&self, d: Dart) -> usize {
        self.dart_face[d.index()]
    }

    /// Face into which the arrow dual to `edge` points.
    pub fn head(&self, edge: usize) -> usize {
        self.face_of(Dart { edge, from_white: true })
    }

    pub fn tail(&self, edge: usize) -> usize {
        self.face_of(Dart { edge, from_white: false })
    }
}

impl DimerModel {
    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.id == id)
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.id == id)
    }

    pub fn edge_ids(&self, edges: &[usize]) -> Vec<String> {
        edges.iter().map(|&e| self.edges[e].id.clone()).collect()
    }

    fn other_end(&self, d: Dart) -> usize {
        let e = &self.edges[d.edge];
        if d.from_white {
            e.black
        } else {
            e.white
        }
    }

    /// Checks that each rotation lists exactly the incident edges, each once.
    fn check_rotations(&self) -> Result<()> {
        if self.rotations.len() != self.vertices.len() {
            return Err(Error::Malformed("rotation count differs from vertex count".into()));
        }
        let mut seen = vec![[0usize; 2]; self.edges.len()];
        for (v, rot) in self.rotations.iter().enumerate() {
            for &e in rot {
                let edge = self.edges.get(e).ok_or_else(|| Error::Malformed(format!("edge index {e}")))?;
                if edge.white == v {
                    seen[e][0] += 1;
                } else if edge.black == v {
                    seen[e][1] += 1;
                } else {
                    return Err(Error::Malformed(format!(
                        "edge {} in rotation of non-endpoint {}",
                        edge.id, self.vertices[v].id
                    )));
                }
            }
        }
        for (e, s) in seen.iter().enumerate() {
            if *s != [1, 1] {
                return Err(Error::Malformed(format!(
                    "edge {} must appear once in each endpoint rotation",
                    self.edges[e].id
                )));
            }
        }
        Ok(())
    }

    fn next_dart(&self, d: Dart, pos: &[[usize; 2]]) -> Dart {
        let u = self.other_end(d);
        let side = d.from_white as usize; // position in the far end's rotation
        let rot = &self.rotations[u];
        let i = pos[d.edge][side];
        Dart { edge: rot[(i + 1) % rot.len()], from_white: !d.from_white }
    }

    /// Traces face orbits of the combinatorial map.
    pub fn trace_faces(&self) -> Result<FaceTrace> {
        self.check_rotations()?;
        let mut pos = vec![[0usize; 2]; self.edges.len()];
        for (v, rot) in self.rotations.iter().enumerate() {
            for (i, &e) in rot.iter().enumerate() {
                let side = if self.edges[e].white == v { 0 } else { 1 };
                pos[e][side] = i;
            }
        }
        let n = 2 * self.edges.len();
        let mut dart_face = vec![usize::MAX; n];
        let mut orbits: Vec<Vec<Dart>> = Vec::new();
        for e in 0..self.edges.len() {
            for from_white in [true, false] {
                let start = Dart { edge: e, from_white };
                if dart_face[start.index()] != usize::MAX {
                    continue;
                }
                let f = orbits.len();
                let mut orbit = Vec::new();
                let mut d = start;
                loop {
                    dart_face[d.index()] = f;
                    orbit.push(d);
                    d = self.next_dart(d, &pos);
                    if d == start {
                        break;
                    }
                }
                orbits.push(orbit);
            }
        }
        if self.face_names.is_empty() {
            let faces = orbits.into_iter().enumerate().map(|(i, darts)| Face { id: i.to_string(), darts }).collect();
            return Ok(FaceTrace { faces, dart_face });
        }
        if self.face_names.len() != orbits.len() {
            return Err(Error::Malformed(format!(
                "{} named faces but {} traced faces",
                self.face_names.len(),
                orbits.len()
            )));
        }
        let mut order = vec![usize::MAX; orbits.len()];
        let mut faces = Vec::new();
        for (k, (name, cycle)) in self.face_names.iter().enumerate() {
            let first = *cycle.first().ok_or_else(|| Error::Malformed(format!("face {name} is empty")))?;
            let f = dart_face[Dart { edge: first, from_white: true }.index()];
            let orbit = &orbits[f];
            let pos0 = orbit.iter().position(|d| d.edge == first && d.from_white).unwrap();
            let darts: Vec<Dart> = orbit[pos0..].iter().chain(&orbit[..pos0]).copied().collect();
            let edges: Vec<usize> = darts.iter().map(|d| d.edge).collect();
            if &edges != cycle || order[f] != usize::MAX {
                return Err(Error::Malformed(format!("face {name} does not match the traced faces")));
            }
            order[f] = k;
            faces.push(Face { id: name.clone(), darts });
        }
        for df in dart_face.iter_mut() {
            *df = order[*df];
        }
        Ok(FaceTrace { faces, dart_face })
    }

    /// Lists every violated invariant; empty iff the dimer is valid.
    pub fn validate(&self) -> Vec<String> {
        let mut report = Vec::new();
        for e in &self.edges {
            if self.vertices[e.white].color != Color::White || self.vertices[e.black].color != Color::Black {
                report.push(format!("edge {} does not join a white vertex to a black vertex", e.id));
            }
        }
        if let Err(err) = self.check_rotations() {
            report.push(format!("rotation system: {err}"));
            return report;
        }
        for (v, rot) in self.rotations.iter().enumerate() {
            if rot.len() < 3 {
                report.push(format!("vertex {} has degree {}", self.vertices[v].id, rot.len()));
            }
        }
        if !self.is_connected() {
            report.push("graph is not connected".into());
        }
        let trace = match self.trace_faces() {
            Ok(t) => t,
            Err(err) => {
                report.push(format!("faces: {err}"));
                return report;
            }
        };
        let (v, e, f) = (self.vertices.len() as i64, self.edges.len() as i64, trace.faces.len() as i64);
        if v - e + f != 0 {
            report.push(format!("Euler characteristic V-E+F = {}-{}+{} = {} (expected 0)", v, e, f, v - e + f));
        }
        for face in &trace.faces {
            let mut s = [0i64; 2];
            for (edge, sign) in face.boundary() {
                s[0] += sign as i64 * self.edges[edge].d[0];
                s[1] += sign as i64 * self.edges[edge].d[1];
            }
            if s != [0, 0] {
                report.push(format!("face {} has boundary displacement ({}, {})", face.id, s[0], s[1]));
            }
        }
        report
    }

    pub fn is_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return true;
        }
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for e in &self.edges {
            adj[e.white].push(e.black);
            adj[e.black].push(e.white);
        }
        let mut seen = vec![false; self.vertices.len()];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for &u in &adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    fn require_valid(&self) -> Result<FaceTrace> {
        let report = self.validate();
        if !report.is_empty() {
            return Err(Error::Invalid(report));
        }
        self.trace_faces()
    }

    /// Dual quiver with potential: one vertex per face, one arrow per edge.
    pub fn dual_qp(&self) -> Result<Qp> {
        let trace = self.require_valid()?;
        let mut q = Qp::new(trace.faces.iter().map(|f| f.id.clone()).collect());

        // Offset of the start vertex of each dart, measured in its face's frame.
        let mut start_offset = vec![[0i64; 2]; 2 * self.edges.len()];
        for face in &trace.faces {
            let mut p = [0i64; 2];
            for d in &face.darts {
                start_offset[d.index()] = p;
                let s = if d.from_white { 1 } else { -1 };
                let de = self.edges[d.edge].d;
                p = [p[0] + s * de[0], p[1] + s * de[1]];
            }
        }
        for (i, e) in self.edges.iter().enumerate() {
            let head = trace.head(i);
            let tail = trace.tail(i);
            let o_head = start_offset[Dart { edge: i, from_white: true }.index()];
            let ob = start_offset[Dart { edge: i, from_white: false }.index()];
            let o_tail = [ob[0] - e.d[0], ob[1] - e.d[1]];
            let d = [o_tail[0] - o_head[0], o_tail[1] - o_head[1]];
            q.arrows.insert(
                e.id.clone(),
                Arrow { tail: trace.faces[tail].id.clone(), head: trace.faces[head].id.clone(), d },
            );
        }
        for (v, rot) in self.rotations.iter().enumerate() {
            let mut cycle: Vec<String> = rot.iter().map(|&e| self.edges[e].id.clone()).collect();
            let coef = match self.vertices[v].color {
                Color::White => {
                    cycle.reverse();
                    1
                }
                Color::Black => -1,
            };
            q.potential.add_term(&cycle, coef);
        }
        Ok(q)
    }

    /// Replaces every displacement by `g` applied to it.
    pub fn apply_basis_change(&self, g: [[i64; 2]; 2]) -> Result<DimerModel> {
        let det = g[0][0] * g[1][1] - g[0][1] * g[1][0];
        if det.abs() != 1 {
            return Err(Error::Lattice(format!("basis change has determinant {det}")));
        }
        let mut out = self.clone();
        for e in &mut out.edges {
            e.d = apply(g, e.d);
        }
        Ok(out)
    }

    /// Swaps the colours; displacements change sign since edges reverse.
    pub fn opposite(&self) -> DimerModel {
        let mut out = self.clone();
        for v in &mut out.vertices {
            v.color = match v.color {
                Color::White => Color::Black,
                Color::Black => Color::White,
            };
        }
        for e in &mut out.edges {
            std::mem::swap(&mut e.white, &mut e.black);
            e.d = [-e.d[0], -e.d[1]];
        }
        for (_, cycle) in &mut out.face_names {
            cycle.rotate_left(1);
        }
        out
    }
}

pub fn apply(g: [[i64; 2]; 2], v: [i64; 2]) -> [i64; 2] {
    [g[0][0] * v[0] + g[0][1] * v[1], g[1][0] * v[0] + g[1][1] * v[1]]
}

/// Rebuilds the dimer whose dual is `q`: +1 cycles become white vertices,
/// -1 cycles black ones.
pub fn dimer_from_qp(q: &Qp) -> Result<DimerModel> {
    let mut plus: BTreeMap<&String, usize> = BTreeMap::new();
    let mut minus: BTreeMap<&String, usize> = BTreeMap::new();
    let mut whites = Vec::new();
    let mut blacks = Vec::new();
    for (cycle, c) in q.potential.terms() {
        let (list, map) = match c {
            1 => (&mut whites, &mut plus),
            -1 => (&mut blacks, &mut minus),
            _ => return Err(Error::NotDimerDual(format!("coefficient {c} on {}", cycle.join(" ")))),
        };
        let mut seen = BTreeSet::new();
        for a in cycle {
            q.arrow(a)?;
            if !seen.insert(a) {
                return Err(Error::NotDimerDual(format!("arrow {a} repeats in a cycle")));
            }
            if map.insert(a, list.len()).is_some() {
                return Err(Error::NotDimerDual(format!("arrow {a} lies in two cycles of the same sign")));
            }
        }
        list.push(cycle.clone());
    }
    let mut vertices = Vec::new();
    for i in 0..whites.len() {
        vertices.push(Vertex { id: format!("w{}", i + 1), color: Color::White });
    }
    for i in 0..blacks.len() {
        vertices.push(Vertex { id: format!("b{}", i + 1), color: Color::Black });
    }
    let nw = whites.len();

    // Tail position of each arrow in the local frame of each cycle.
    let frame = |cycle: &Vec<String>| -> Result<BTreeMap<String, [i64; 2]>> {
        let mut p = [0i64; 2];
        let mut out = BTreeMap::new();
        for a in cycle {
            out.insert(a.clone(), p);
            let d = q.arrows[a].d;
            p = [p[0] + d[0], p[1] + d[1]];
        }
        if p != [0, 0] {
            return Err(Error::NotDimerDual(format!("cycle {} is not contractible", cycle.join(" "))));
        }
        Ok(out)
    };
    let wf: Vec<_> = whites.iter().map(frame).collect::<Result<_>>()?;
    let bf: Vec<_> = blacks.iter().map(frame).collect::<Result<_>>()?;

    let mut edges = Vec::new();
    let mut index = BTreeMap::new();
    for id in q.arrows.keys() {
        let (Some(&w), Some(&b)) = (plus.get(id), minus.get(id)) else {
            return Err(Error::NotDimerDual(format!("arrow {id} is not in one +1 and one -1 cycle")));
        };
        let (pw, pb) = (wf[w][id], bf[b][id]);
        index.insert(id.clone(), edges.len());
        edges.push(Edge { id: id.clone(), white: w, black: nw + b, d: [pw[0] - pb[0], pw[1] - pb[1]] });
    }
    let mut rotations = Vec::new();
    for cycle in &whites {
        rotations.push(cycle.iter().rev().map(|a| index[a]).collect());
    }
    for cycle in &blacks {
        rotations.push(cycle.iter().map(|a| index[a]).collect());
    }
    let mut d = DimerModel { comment: None, vertices, edges, rotations, face_names: Vec::new() };

    let trace = d.trace_faces()?;
    if trace.faces.len() != q.vertices.len() {
        return Err(Error::NotDimerDual(format!(
            "{} faces for {} quiver vertices",
            trace.faces.len(),
            q.vertices.len()
        )));
    }
    let mut names = Vec::new();
    for face in &trace.faces {
        let mut label: Option<&String> = None;
        for dart in &face.darts {
            let a = &q.arrows[&d.edges[dart.edge].id];
            let v = if dart.from_white { &a.head } else { &a.tail };
            if label.is_some_and(|l| l != v) {
                return Err(Error::NotDimerDual("face boundary meets two quiver vertices".into()));
            }
            label = Some(v);
        }
        let start = face
            .darts
            .iter()
            .enumerate()
            .filter(|(_, x)| x.from_white)
            .min_by(|a, b| d.edges[a.1.edge].id.cmp(&d.edges[b.1.edge].id))
            .map(|(i, _)| i)
            .unwrap_or(0);
        let mut cycle: Vec<usize> = face.darts.iter().map(|x| x.edge).collect();
        cycle.rotate_left(start);
        names.push((label.cloned().unwrap_or_default(), cycle));
    }
    names.sort();
    if names.windows(2).any(|w| w[0].0 == w[1].0) {
        return Err(Error::NotDimerDual("two faces dual to the same quiver vertex".into()));
    }
    d.face_names = names;
    let report = d.validate();
    if !report.is_empty() {
        return Err(Error::NotDimerDual(report.join("; ")));
    }
    Ok(d)
}
