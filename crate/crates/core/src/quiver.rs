//! Quivers with potential. Potentials are finite signed sums of cycles keyed by
//! their lexicographically minimal rotation.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub tail: String,
    pub head: String,
    /// Lattice translation from the tail lift to the head lift.
    pub d: [i64; 2],
}

/// Lexicographically minimal rotation of a cyclic word.
pub fn canonical_rotation(cycle: &[String]) -> Vec<String> {
    let n = cycle.len();
    let mut best: Option<Vec<String>> = None;
    for r in 0..n {
        let rot: Vec<String> = cycle[r..].iter().chain(&cycle[..r]).cloned().collect();
        if best.as_ref().is_none_or(|b| rot < *b) {
            best = Some(rot);
        }
    }
    best.unwrap_or_default()
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Potential {
    terms: BTreeMap<Vec<String>, i64>,
}

impl Potential {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, cycle: &[String], coef: i64) {
        if coef == 0 || cycle.is_empty() {
            return;
        }
        let key = canonical_rotation(cycle);
        let c = self.terms.entry(key.clone()).or_insert(0);
        *c += coef;
        if *c == 0 {
            self.terms.remove(&key);
        }
    }

    pub fn coefficient(&self, cycle: &[String]) -> i64 {
        self.terms.get(&canonical_rotation(cycle)).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<String>, i64)> {
        self.terms.iter().map(|(k, c)| (k, *c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for Potential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (cycle, c) in self.terms() {
            writeln!(f, "{:+}\t{}", c, cycle.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Qp {
    pub vertices: Vec<String>,
    pub arrows: BTreeMap<String, Arrow>,
    pub potential: Potential,
}

impl Qp {
    pub fn new(vertices: Vec<String>) -> Self {
        Qp { vertices, arrows: BTreeMap::new(), potential: Potential::new() }
    }

    pub fn add_arrow(&mut self, id: &str, tail: &str, head: &str, d: [i64; 2]) -> Result<()> {
        for v in [tail, head] {
            if !self.has_vertex(v) {
                return Err(Error::UnknownVertex(v.to_string()));
            }
        }
        if self.arrows.contains_key(id) {
            return Err(Error::Parse(format!("duplicate arrow `{id}`")));
        }
        self.arrows.insert(id.to_string(), Arrow { tail: tail.into(), head: head.into(), d });
        Ok(())
    }

    /// Adds `coef` times a cycle, checking that consecutive arrows compose.
    pub fn add_term(&mut self, coef: i64, cycle: &[&str]) -> Result<()> {
        let cycle: Vec<String> = cycle.iter().map(|s| s.to_string()).collect();
        self.check_cycle(&cycle)?;
        self.potential.add_term(&cycle, coef);
        Ok(())
    }

    pub fn check_cycle(&self, cycle: &[String]) -> Result<()> {
        if cycle.is_empty() {
            return Err(Error::Parse("empty cycle".into()));
        }
        for (i, a) in cycle.iter().enumerate() {
            let b = &cycle[(i + 1) % cycle.len()];
            let (x, y) = (self.arrow(a)?, self.arrow(b)?);
            if x.head != y.tail {
                return Err(Error::Parse(format!("arrows `{a}` and `{b}` do not compose")));
            }
        }
        Ok(())
    }

    pub fn has_vertex(&self, v: &str) -> bool {
        self.vertices.iter().any(|x| x == v)
    }

    pub fn arrow(&self, id: &str) -> Result<&Arrow> {
        self.arrows.get(id).ok_or_else(|| Error::Parse(format!("unknown arrow `{id}`")))
    }

    pub fn incoming(&self, v: &str) -> Vec<&String> {
        self.arrows.iter().filter(|(_, a)| a.head == v).map(|(k, _)| k).collect()
    }

    pub fn outgoing(&self, v: &str) -> Vec<&String> {
        self.arrows.iter().filter(|(_, a)| a.tail == v).map(|(k, _)| k).collect()
    }

    pub fn has_loop(&self, v: &str) -> bool {
        self.arrows.values().any(|a| a.head == v && a.tail == v)
    }

    /// True if some 2-cycle of the quiver passes through `v`.
    pub fn on_two_cycle(&self, v: &str) -> bool {
        let outs: BTreeSet<&str> =
            self.arrows.values().filter(|a| a.tail == v && a.head != v).map(|a| a.head.as_str()).collect();
        self.arrows.values().any(|a| a.head == v && outs.contains(a.tail.as_str()))
    }

    /// Reverses every arrow and every cycle.
    pub fn opposite(&self) -> Qp {
        let mut q = Qp::new(self.vertices.clone());
        for (id, a) in &self.arrows {
            q.arrows.insert(id.clone(), Arrow { tail: a.head.clone(), head: a.tail.clone(), d: [-a.d[0], -a.d[1]] });
        }
        for (cycle, c) in self.potential.terms() {
            let rev: Vec<String> = cycle.iter().rev().cloned().collect();
            q.potential.add_term(&rev, c);
        }
        q
    }

    /// Arrows of a term in path order, together with the vertex each one leaves.
    pub fn term_vertices(&self, cycle: &[String]) -> Vec<String> {
        cycle.iter().map(|a| self.arrows[a].tail.clone()).collect()
    }

    pub fn degree(&self, v: &str) -> usize {
        self.arrows.values().map(|a| (a.head == v) as usize + (a.tail == v) as usize).sum()
    }
}

impl fmt::Display for Qp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vertices\t{}", self.vertices.join(" "))?;
        for (id, a) in &self.arrows {
            writeln!(f, "arrow\t{id}\t{}\t{}", a.tail, a.head)?;
        }
        write!(f, "{}", self.potential)
    }
}
