//! Isomorphism of quivers with potential by backtracking over term images.

use std::collections::BTreeMap;

use crate::dimer::DimerModel;
use crate::error::Result;
use crate::quiver::Qp;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct IsoOptions {
    /// Allow rescaling arrows by -1.
    pub arrow_signs: bool,
    /// Require each vertex to map to the vertex of the same name.
    pub fix_vertex_labels: bool,
}

/// Arrow and vertex correspondence realizing an isomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QpIsomorphism {
    pub vertices: BTreeMap<String, String>,
    pub arrows: BTreeMap<String, String>,
}

struct Side {
    ends: Vec<(usize, usize)>,
    terms: Vec<(Vec<usize>, i64)>,
}

fn index(q: &Qp) -> (Side, Vec<String>, Vec<String>) {
    let verts = q.vertices.clone();
    let vi: BTreeMap<&String, usize> = verts.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let names: Vec<String> = q.arrows.keys().cloned().collect();
    let ai: BTreeMap<&String, usize> = names.iter().enumerate().map(|(i, a)| (a, i)).collect();
    let ends = q.arrows.values().map(|a| (vi[&a.tail], vi[&a.head])).collect();
    let terms = q.potential.terms().map(|(c, k)| (c.iter().map(|a| ai[a]).collect(), k)).collect();
    (Side { ends, terms }, verts, names)
}

struct Search<'a> {
    s1: &'a Side,
    s2: &'a Side,
    v1: &'a [String],
    v2: &'a [String],
    opts: IsoOptions,
    amap: Vec<Option<usize>>,
    arev: Vec<Option<usize>>,
    vmap: Vec<Option<usize>>,
    vrev: Vec<Option<usize>>,
    tmap: Vec<Option<usize>>,
    tused: Vec<bool>,
}

impl Search<'_> {
    fn assign_vertex(&mut self, x: usize, y: usize, log: &mut Vec<(bool, usize)>) -> bool {
        match (self.vmap[x], self.vrev[y]) {
            (Some(z), _) => z == y,
            (None, Some(_)) => false,
            (None, None) => {
                if self.opts.fix_vertex_labels && self.v1[x] != self.v2[y] {
                    return false;
                }
                self.vmap[x] = Some(y);
                self.vrev[y] = Some(x);
                log.push((false, x));
                true
            }
        }
    }

    fn assign_arrow(&mut self, x: usize, y: usize, log: &mut Vec<(bool, usize)>) -> bool {
        match (self.amap[x], self.arev[y]) {
            (Some(z), _) => return z == y,
            (None, Some(_)) => return false,
            _ => {}
        }
        let (t1, h1) = self.s1.ends[x];
        let (t2, h2) = self.s2.ends[y];
        if !self.assign_vertex(t1, t2, log) || !self.assign_vertex(h1, h2, log) {
            return false;
        }
        self.amap[x] = Some(y);
        self.arev[y] = Some(x);
        log.push((true, x));
        true
    }

    fn undo(&mut self, log: Vec<(bool, usize)>) {
        for (is_arrow, x) in log.into_iter().rev() {
            if is_arrow {
                let y = self.amap[x].take().unwrap();
                self.arev[y] = None;
            } else {
                let y = self.vmap[x].take().unwrap();
                self.vrev[y] = None;
            }
        }
    }

    fn solve(&mut self) -> bool {
        let next = (0..self.s1.terms.len()).filter(|&t| self.tmap[t].is_none()).max_by_key(|&t| {
            let mapped = self.s1.terms[t].0.iter().filter(|&&a| self.amap[a].is_some()).count();
            (mapped, std::cmp::Reverse(t))
        });
        let Some(t1) = next else {
            return self.finish_arrows();
        };
        let (w1, c1) = &self.s1.terms[t1];
        for t2 in 0..self.s2.terms.len() {
            let (w2, c2) = &self.s2.terms[t2];
            if self.tused[t2] || w1.len() != w2.len() {
                continue;
            }
            if if self.opts.arrow_signs { c1.abs() != c2.abs() } else { c1 != c2 } {
                continue;
            }
            let n = w1.len();
            for r in 0..n {
                let mut log = Vec::new();
                let ok = (0..n).all(|i| self.assign_arrow(w1[i], w2[(i + r) % n], &mut log));
                if ok {
                    self.tmap[t1] = Some(t2);
                    self.tused[t2] = true;
                    if self.solve() {
                        return true;
                    }
                    self.tmap[t1] = None;
                    self.tused[t2] = false;
                }
                self.undo(log);
            }
        }
        false
    }

    fn finish_arrows(&mut self) -> bool {
        let Some(x) = (0..self.amap.len()).find(|&a| self.amap[a].is_none()) else {
            return self.signs_ok() && self.finish_vertices();
        };
        for y in 0..self.arev.len() {
            let mut log = Vec::new();
            if self.assign_arrow(x, y, &mut log) && self.finish_arrows() {
                return true;
            }
            self.undo(log);
        }
        false
    }

    fn finish_vertices(&mut self) -> bool {
        let Some(x) = (0..self.vmap.len()).find(|&v| self.vmap[v].is_none()) else {
            return true;
        };
        for y in 0..self.vrev.len() {
            let mut log = Vec::new();
            if self.assign_vertex(x, y, &mut log) && self.finish_vertices() {
                return true;
            }
            self.undo(log);
        }
        false
    }

    /// With sign freedom, solve prod of arrow signs over each term = c2/c1 over GF(2).
    fn signs_ok(&self) -> bool {
        if !self.opts.arrow_signs {
            return true;
        }
        let n = self.amap.len();
        let mut rows: Vec<(Vec<bool>, bool)> = Vec::new();
        for (t1, (w1, c1)) in self.s1.terms.iter().enumerate() {
            let c2 = self.s2.terms[self.tmap[t1].unwrap()].1;
            let mut row = vec![false; n];
            for &a in w1 {
                row[a] ^= true;
            }
            rows.push((row, c1 != &c2));
        }
        let mut rank = 0;
        for col in 0..n {
            let Some(p) = (rank..rows.len()).find(|&i| rows[i].0[col]) else { continue };
            rows.swap(rank, p);
            let pivot = rows[rank].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != rank && row.0[col] {
                    for (a, b) in row.0.iter_mut().zip(&pivot.0) {
                        *a ^= *b;
                    }
                    row.1 ^= pivot.1;
                }
            }
            rank += 1;
        }
        rows[rank..].iter().all(|(_, rhs)| !rhs)
    }
}

pub fn find_isomorphism(q1: &Qp, q2: &Qp, opts: IsoOptions) -> Option<QpIsomorphism> {
    if q1.vertices.len() != q2.vertices.len()
        || q1.arrows.len() != q2.arrows.len()
        || q1.potential.len() != q2.potential.len()
    {
        return None;
    }
    let profile = |q: &Qp| {
        let mut p: Vec<(usize, usize)> =
            q.vertices.iter().map(|v| (q.incoming(v).len(), q.outgoing(v).len())).collect();
        p.sort();
        let mut t: Vec<(usize, i64)> =
            q.potential.terms().map(|(c, k)| (c.len(), if opts.arrow_signs { k.abs() } else { k })).collect();
        t.sort();
        (p, t)
    };
    if profile(q1) != profile(q2) {
        return None;
    }
    let (s1, v1, n1) = index(q1);
    let (s2, v2, n2) = index(q2);
    let mut s = Search {
        s1: &s1,
        s2: &s2,
        v1: &v1,
        v2: &v2,
        opts,
        amap: vec![None; n1.len()],
        arev: vec![None; n2.len()],
        vmap: vec![None; v1.len()],
        vrev: vec![None; v2.len()],
        tmap: vec![None; s1.terms.len()],
        tused: vec![false; s2.terms.len()],
    };
    if !s.solve() {
        return None;
    }
    Some(QpIsomorphism {
        vertices: (0..v1.len()).map(|i| (v1[i].clone(), v2[s.vmap[i].unwrap()].clone())).collect(),
        arrows: (0..n1.len()).map(|i| (n1[i].clone(), n2[s.amap[i].unwrap()].clone())).collect(),
    })
}

pub fn qp_isomorphic(q1: &Qp, q2: &Qp, opts: IsoOptions) -> bool {
    find_isomorphism(q1, q2, opts).is_some()
}

/// Dimer isomorphism as colour-preserving isomorphism of the dual QPs.
pub fn dimer_isomorphic(d1: &DimerModel, d2: &DimerModel) -> Result<bool> {
    Ok(qp_isomorphic(&d1.dual_qp()?, &d2.dual_qp()?, IsoOptions::default()))
}
