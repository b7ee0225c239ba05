//! Divisorial ideal tables T_ij and splitting generators as multisets of classes.

use std::collections::{BTreeMap, VecDeque};

use crate::classgroup::{ClassGroup, DivisorClass};
use crate::dimer::DimerModel;
use crate::error::{Error, Result};
use crate::matching::PerfectMatching;
use crate::mutation::mutable_vertices;
use crate::quiver::Qp;

/// Sorted classes of a module's summands.
pub type Multiset = Vec<DivisorClass>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableEntry {
    pub vertex: String,
    /// Extremal matching values summed along a path from the base vertex.
    pub raw: Vec<i64>,
    pub class: DivisorClass,
}

fn arrow_values(d: &DimerModel, extremals: &[PerfectMatching]) -> BTreeMap<String, Vec<i64>> {
    d.edges
        .iter()
        .enumerate()
        .map(|(i, e)| (e.id.clone(), extremals.iter().map(|p| p.contains(i) as i64).collect()))
        .collect()
}

/// T_ij for every j, read along breadth-first paths and checked on every arrow.
pub fn vertex_ideal_table(
    d: &DimerModel,
    qp: &Qp,
    base: &str,
    extremals: &[PerfectMatching],
    cl: &ClassGroup,
) -> Result<Vec<TableEntry>> {
    if !qp.has_vertex(base) {
        return Err(Error::UnknownVertex(base.to_string()));
    }
    let values = arrow_values(d, extremals);
    let mut raw: BTreeMap<&String, Vec<i64>> = BTreeMap::new();
    let start = qp.vertices.iter().find(|v| *v == base).unwrap();
    raw.insert(start, vec![0; extremals.len()]);
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for (id, a) in &qp.arrows {
            if a.tail == *v && !raw.contains_key(&a.head) {
                let next: Vec<i64> = raw[v].iter().zip(&values[id]).map(|(x, y)| x + y).collect();
                raw.insert(&a.head, next);
                queue.push_back(&a.head);
            }
        }
    }
    if raw.len() != qp.vertices.len() {
        return Err(Error::Generator("quiver is not strongly connected".into()));
    }
    let mut classes = BTreeMap::new();
    for (v, r) in &raw {
        classes.insert(*v, cl.classify(r)?);
    }
    for (id, a) in &qp.arrows {
        let via: Vec<i64> = raw[&a.tail].iter().zip(&values[id]).map(|(x, y)| x + y).collect();
        if cl.classify(&via)? != classes[&a.head] {
            return Err(Error::Generator(format!("class along arrow {id} depends on the path")));
        }
    }
    Ok(qp
        .vertices
        .iter()
        .map(|v| TableEntry { vertex: v.clone(), raw: raw[v].clone(), class: classes[v].clone() })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplittingGenerator {
    pub base: String,
    pub classes: BTreeMap<String, DivisorClass>,
}

impl SplittingGenerator {
    pub fn multiset(&self) -> Multiset {
        let mut m: Multiset = self.classes.values().cloned().collect();
        m.sort();
        m
    }

    fn checked(self, cl: &ClassGroup) -> Result<Self> {
        let m = self.multiset();
        let zero = cl.zero();
        if m.iter().filter(|c| **c == zero).count() != 1 {
            return Err(Error::Generator("zero class must occur exactly once".into()));
        }
        if m.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Generator("repeated class".into()));
        }
        Ok(self)
    }
}

pub fn generator(
    d: &DimerModel,
    qp: &Qp,
    base: &str,
    extremals: &[PerfectMatching],
    cl: &ClassGroup,
) -> Result<SplittingGenerator> {
    let table = vertex_ideal_table(d, qp, base, extremals, cl)?;
    SplittingGenerator { base: base.to_string(), classes: table.into_iter().map(|e| (e.vertex, e.class)).collect() }
        .checked(cl)
}

pub fn dual_generator(cl: &ClassGroup, g: &SplittingGenerator) -> Result<SplittingGenerator> {
    let classes = g.classes.iter().map(|(v, c)| Ok((v.clone(), cl.neg(c)?))).collect::<Result<_>>()?;
    Ok(SplittingGenerator { base: g.base.clone(), classes })
}

pub fn twist(cl: &ClassGroup, m: &[DivisorClass], c: &DivisorClass) -> Result<Multiset> {
    let mut out: Multiset = m.iter().map(|x| cl.add(x, c)).collect::<Result<_>>()?;
    out.sort();
    Ok(out)
}

/// Every (index into `known`, c) with `m = twist(known[index], c)`.
pub fn generator_forms(cl: &ClassGroup, m: &[DivisorClass], known: &[Multiset]) -> Result<Vec<(usize, DivisorClass)>> {
    let mut out = Vec::new();
    for c in m {
        let shifted = twist(cl, m, &cl.neg(c)?)?;
        if let Some(i) = known.iter().position(|k| *k == shifted) {
            out.push((i, c.clone()));
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Replaces the summand at `k` by [M_t(a1)] + [M_t(a2)] - [M_k], a1, a2 the arrows into `k`.
pub fn mutate_generator(cl: &ClassGroup, g: &SplittingGenerator, qp: &Qp, k: &str) -> Result<SplittingGenerator> {
    if k == g.base {
        return Err(Error::Generator(format!("cannot mutate at the base vertex {k}")));
    }
    if !mutable_vertices(qp).iter().any(|v| v == k) {
        return Err(Error::Mutation { vertex: k.to_string(), reason: "vertex is not mutable".into() });
    }
    let ins = qp.incoming(k);
    let (c1, c2) = (&g.classes[&qp.arrows[ins[0]].tail], &g.classes[&qp.arrows[ins[1]].tail]);
    let new = cl.sub(&cl.add(c1, c2)?, &g.classes[k])?;
    let mut out = g.clone();
    out.classes.insert(k.to_string(), new);
    out.checked(cl)
}
