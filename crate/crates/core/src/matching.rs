//! Perfect matchings, their homology classes and the perfect matching polygon.

use std::collections::BTreeMap;

use crate::dimer::DimerModel;
use crate::error::{Error, Result};
use crate::quiver::Qp;

/// Sorted edge indices covering every vertex exactly once.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PerfectMatching(pub Vec<usize>);

impl PerfectMatching {
    pub fn contains(&self, e: usize) -> bool {
        self.0.binary_search(&e).is_ok()
    }
}

/// All perfect matchings, sorted lexicographically by edge ids.
pub fn enumerate_matchings(d: &DimerModel) -> Vec<PerfectMatching> {
    let n = d.vertices.len();
    let mut incident = vec![Vec::new(); n];
    for (i, e) in d.edges.iter().enumerate() {
        incident[e.white].push(i);
        incident[e.black].push(i);
    }
    let mut covered = vec![false; n];
    let mut chosen = Vec::new();
    let mut out = Vec::new();
    search(d, &incident, &mut covered, &mut chosen, &mut out);
    let mut keyed: Vec<(Vec<&str>, PerfectMatching)> = out
        .into_iter()
        .map(|mut m| {
            m.sort_by(|a, b| d.edges[*a].id.cmp(&d.edges[*b].id));
            let key = m.iter().map(|&e| d.edges[e].id.as_str()).collect();
            m.sort_unstable();
            (key, PerfectMatching(m))
        })
        .collect();
    keyed.sort();
    keyed.into_iter().map(|(_, m)| m).collect()
}

fn search(
    d: &DimerModel,
    incident: &[Vec<usize>],
    covered: &mut Vec<bool>,
    chosen: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    let mut best: Option<(usize, Vec<usize>)> = None;
    for v in 0..covered.len() {
        if covered[v] {
            continue;
        }
        let options: Vec<usize> = incident[v]
            .iter()
            .copied()
            .filter(|&e| {
                let (w, b) = (d.edges[e].white, d.edges[e].black);
                !covered[w] && !covered[b]
            })
            .collect();
        if best.as_ref().is_none_or(|(_, o)| options.len() < o.len()) {
            best = Some((v, options));
        }
    }
    let Some((_, options)) = best else {
        out.push(chosen.clone());
        return;
    };
    for e in options {
        let (w, b) = (d.edges[e].white, d.edges[e].black);
        covered[w] = true;
        covered[b] = true;
        chosen.push(e);
        search(d, incident, covered, chosen, out);
        chosen.pop();
        covered[w] = false;
        covered[b] = false;
    }
}

/// True iff every edge lies in some perfect matching.
pub fn is_nondegenerate(d: &DimerModel) -> bool {
    let mut used = vec![false; d.edges.len()];
    for m in enumerate_matchings(d) {
        for e in m.0 {
            used[e] = true;
        }
    }
    used.into_iter().all(|u| u)
}

pub fn is_perfect_matching(d: &DimerModel, p: &PerfectMatching) -> bool {
    let mut count = vec![0usize; d.vertices.len()];
    for &e in &p.0 {
        match d.edges.get(e) {
            Some(edge) => {
                count[edge.white] += 1;
                count[edge.black] += 1;
            }
            None => return false,
        }
    }
    count.into_iter().all(|c| c == 1)
}

fn displacement(d: &DimerModel, p: &PerfectMatching) -> [i64; 2] {
    p.0.iter().fold([0, 0], |s, &e| [s[0] + d.edges[e].d[0], s[1] + d.edges[e].d[1]])
}

/// Homology class of the 1-cycle P - P0.
pub fn homology_class(d: &DimerModel, p: &PerfectMatching, p0: &PerfectMatching) -> Result<[i64; 2]> {
    if !is_perfect_matching(d, p) || !is_perfect_matching(d, p0) {
        return Err(Error::Polygon("argument is not a perfect matching of this dimer".into()));
    }
    let (a, b) = (displacement(d, p), displacement(d, p0));
    Ok([a[0] - b[0], a[1] - b[1]])
}

fn cross(o: [i64; 2], a: [i64; 2], b: [i64; 2]) -> i64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Strict convex hull vertices, counterclockwise from the lexicographically smallest point.
pub fn convex_hull(points: &[[i64; 2]]) -> Vec<[i64; 2]> {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<[i64; 2]> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<[i64; 2]> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PmPolygon {
    pub base: PerfectMatching,
    pub multiplicity: BTreeMap<[i64; 2], usize>,
    pub hull: Vec<[i64; 2]>,
}

impl PmPolygon {
    pub fn is_hull_vertex(&self, p: [i64; 2]) -> bool {
        self.hull.contains(&p)
    }
}

pub fn pm_polygon(d: &DimerModel, p0: &PerfectMatching) -> Result<PmPolygon> {
    let pms = enumerate_matchings(d);
    let mut multiplicity = BTreeMap::new();
    for p in &pms {
        *multiplicity.entry(homology_class(d, p, p0)?).or_insert(0) += 1;
    }
    let pts: Vec<[i64; 2]> = multiplicity.keys().copied().collect();
    Ok(PmPolygon { base: p0.clone(), multiplicity, hull: convex_hull(&pts) })
}

/// Extremal matchings at the requested hull vertices, in the order given.
pub fn extremal_matchings(
    d: &DimerModel,
    p0: &PerfectMatching,
    vertex_order: &[[i64; 2]],
) -> Result<Vec<PerfectMatching>> {
    let pms = enumerate_matchings(d);
    let h: Vec<[i64; 2]> = pms.iter().map(|p| homology_class(d, p, p0)).collect::<Result<_>>()?;
    let hull = convex_hull(&h);
    vertex_order
        .iter()
        .map(|&v| {
            if !hull.contains(&v) {
                return Err(Error::Polygon(format!("({}, {}) is not a hull vertex", v[0], v[1])));
            }
            let at: Vec<usize> = (0..pms.len()).filter(|&i| h[i] == v).collect();
            if at.len() != 1 {
                return Err(Error::Polygon(format!("hull vertex ({}, {}) has multiplicity {}", v[0], v[1], at.len())));
            }
            Ok(pms[at[0]].clone())
        })
        .collect()
}

/// The vector t with `hull + t` equal to the hull of `target`, if any.
pub fn translation_onto(hull: &[[i64; 2]], target: &[[i64; 2]]) -> Option<[i64; 2]> {
    let hull = convex_hull(hull);
    let want = convex_hull(target);
    if hull.len() != want.len() || want.is_empty() {
        return None;
    }
    // both hulls start at the lexicographically smallest vertex
    let t = [want[0][0] - hull[0][0], want[0][1] - hull[0][1]];
    hull.iter().zip(&want).all(|(a, b)| [a[0] + t[0], a[1] + t[1]] == *b).then_some(t)
}

/// Given homology vectors of all matchings, finds the translation carrying their hull
/// onto the vertex set `target` and returns, for each target vertex, the index of the
/// unique matching sitting there.
pub fn aligned_indices(h: &[[i64; 2]], target: &[[i64; 2]]) -> Result<Vec<usize>> {
    let hull = convex_hull(h);
    if convex_hull(target).len() != target.len() {
        return Err(Error::Polygon("target is not a list of strict hull vertices".into()));
    }
    let t = translation_onto(&hull, target)
        .ok_or_else(|| Error::Polygon("polygon is not a translate of the target".into()))?;
    target
        .iter()
        .map(|&v| {
            let src = [v[0] - t[0], v[1] - t[1]];
            let at: Vec<usize> = (0..h.len()).filter(|&i| h[i] == src).collect();
            if at.len() != 1 {
                return Err(Error::Polygon(format!("hull vertex ({}, {}) has multiplicity {}", v[0], v[1], at.len())));
            }
            Ok(at[0])
        })
        .collect()
}

/// Extremal matchings in the order of `target`, after translating the polygon onto it.
pub fn aligned_extremals(d: &DimerModel, target: &[[i64; 2]]) -> Result<Vec<PerfectMatching>> {
    let pms = enumerate_matchings(d);
    let p0 = pms.first().ok_or_else(|| Error::Polygon("no perfect matchings".into()))?;
    let h: Vec<[i64; 2]> = pms.iter().map(|p| homology_class(d, p, p0)).collect::<Result<_>>()?;
    Ok(aligned_indices(&h, target)?.into_iter().map(|i| pms[i].clone()).collect())
}

/// One step of a path in the doubled quiver: an arrow id, possibly reversed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub arrow: String,
    pub reversed: bool,
}

/// Sum of the matching indicator along a path; reversed arrows count negatively.
pub fn path_value(d: &DimerModel, q: &Qp, p: &PerfectMatching, path: &[Step]) -> Result<i64> {
    let mut total = 0;
    let mut at: Option<&String> = None;
    for s in path {
        let a = q.arrow(&s.arrow)?;
        let (from, to) = if s.reversed { (&a.head, &a.tail) } else { (&a.tail, &a.head) };
        if at.is_some_and(|v| v != from) {
            return Err(Error::Polygon(format!("path is not composable at `{}`", s.arrow)));
        }
        at = Some(to);
        let e = d.edge_index(&s.arrow).ok_or_else(|| Error::Polygon(format!("no edge `{}`", s.arrow)))?;
        let v = p.contains(e) as i64;
        total += if s.reversed { -v } else { v };
    }
    Ok(total)
}
