//! Exchange graphs of splitting generators for a polygon type.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::classgroup::{ClassGroup, ToricCone};
use crate::dimer::{apply, DimerModel};
use crate::error::{Error, Result};
use crate::generators::{dual_generator, generator, mutate_generator, twist, Multiset, SplittingGenerator};
use crate::matching::{aligned_indices, convex_hull, enumerate_matchings, homology_class, PerfectMatching};
use crate::mutation::{mutable_vertices, mutate_dimer};
use crate::quiver::Qp;

pub type Linear = [[i64; 2]; 2];

pub const IDENTITY: Linear = [[1, 0], [0, 1]];

/// Linear parts of the unimodular affine maps carrying polygon `src` onto `dst`.
pub fn polygon_maps(src: &[[i64; 2]], dst: &[[i64; 2]]) -> Vec<Linear> {
    let s = convex_hull(src);
    let t = convex_hull(dst);
    let n = s.len();
    if n != t.len() || n < 3 {
        return Vec::new();
    }
    let sub = |a: [i64; 2], b: [i64; 2]| [a[0] - b[0], a[1] - b[1]];
    let (s1, s2) = (sub(s[1], s[0]), sub(s[2], s[0]));
    let det = s1[0] * s2[1] - s1[1] * s2[0];
    let mut out = BTreeSet::new();
    for r in 0..n {
        for dir in [1i64, -1] {
            let at = |k: usize| t[((r as i64 + dir * k as i64).rem_euclid(n as i64)) as usize];
            let (t1, t2) = (sub(at(1), at(0)), sub(at(2), at(0)));
            // g = [t1 t2] * adj([s1 s2]) / det
            let num = [
                [t1[0] * s2[1] - t2[0] * s1[1], -t1[0] * s2[0] + t2[0] * s1[0]],
                [t1[1] * s2[1] - t2[1] * s1[1], -t1[1] * s2[0] + t2[1] * s1[0]],
            ];
            if num.iter().flatten().any(|x| x % det != 0) {
                continue;
            }
            let g = [[num[0][0] / det, num[0][1] / det], [num[1][0] / det, num[1][1] / det]];
            if (g[0][0] * g[1][1] - g[0][1] * g[1][0]).abs() != 1 {
                continue;
            }
            if (0..n).all(|k| apply(g, sub(s[k], s[0])) == sub(at(k), at(0))) {
                out.insert(g);
            }
        }
    }
    let mut v: Vec<Linear> = out.into_iter().collect();
    v.sort_by_key(|g| *g != IDENTITY);
    v
}

#[derive(Clone, Debug)]
pub struct PreparedDimer {
    pub name: String,
    /// Letter with primes, e.g. `B'`.
    pub tag: String,
    pub dimer: DimerModel,
    pub qp: Qp,
    pub matchings: Vec<PerfectMatching>,
    pub homology: Vec<[i64; 2]>,
}

impl PreparedDimer {
    pub fn new(name: &str, tag: &str, dimer: DimerModel) -> Result<PreparedDimer> {
        let qp = dimer.dual_qp()?;
        let matchings = enumerate_matchings(&dimer);
        let p0 = matchings.first().ok_or_else(|| Error::Polygon(format!("{name} has no perfect matching")))?;
        let homology = matchings.iter().map(|p| homology_class(&dimer, p, p0)).collect::<Result<_>>()?;
        Ok(PreparedDimer { name: name.into(), tag: tag.into(), dimer, qp, matchings, homology })
    }

    /// Extremal matchings after the basis change `g`, in the order of `target`.
    pub fn extremals(&self, g: Linear, target: &[[i64; 2]]) -> Result<Vec<PerfectMatching>> {
        let h: Vec<[i64; 2]> = self.homology.iter().map(|&v| apply(g, v)).collect();
        Ok(aligned_indices(&h, target)?.into_iter().map(|i| self.matchings[i].clone()).collect())
    }
}

#[derive(Clone, Debug)]
pub struct Presentation {
    pub dimer: usize,
    pub g: Linear,
    pub dual: bool,
    pub generator: SplittingGenerator,
}

#[derive(Clone, Debug)]
pub struct Node {
    pub multiset: Multiset,
    pub label: String,
    pub presentations: Vec<usize>,
}

#[derive(Clone, Debug, Default)]
pub struct ExchangeGraph {
    pub nodes: Vec<Node>,
    pub edges: Vec<(usize, usize)>,
}

/// Edges between multisets sharing all but one class.
pub fn build_exchange_graph(gens: &[Multiset]) -> Result<Vec<(usize, usize)>> {
    if let Some(first) = gens.first() {
        if gens.iter().any(|g| g.len() != first.len()) {
            return Err(Error::Exchange("generators of different sizes".into()));
        }
    }
    let mut edges = Vec::new();
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            let a: BTreeSet<_> = gens[i].iter().collect();
            let common = gens[j].iter().filter(|c| a.contains(c)).count();
            if common + 1 == gens[i].len() {
                edges.push((i, j));
            }
        }
    }
    Ok(edges)
}

pub fn is_connected(n: usize, edges: &[(usize, usize)]) -> bool {
    if n == 0 {
        return true;
    }
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut queue = VecDeque::from([0]);
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

impl ExchangeGraph {
    pub fn is_connected(&self) -> bool {
        is_connected(self.nodes.len(), &self.edges)
    }

    pub fn node_of(&self, m: &Multiset) -> Option<usize> {
        self.nodes.iter().position(|n| n.multiset == *m)
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut s = format!("graph \"{name}\" {{\n");
        for (i, n) in self.nodes.iter().enumerate() {
            s.push_str(&format!("  n{i} [label=\"{}\"];\n", n.label));
        }
        for (a, b) in &self.edges {
            s.push_str(&format!("  n{a} -- n{b};\n"));
        }
        s.push_str("}\n");
        s
    }
}

/// Everything computed for one polygon type.
#[derive(Clone, Debug)]
pub struct TypeStudy {
    pub kind: String,
    pub cone: Vec<[i64; 2]>,
    pub cl: ClassGroup,
    pub dimers: Vec<PreparedDimer>,
    pub presentations: Vec<Presentation>,
    pub graph: ExchangeGraph,
}

impl TypeStudy {
    /// `dimers` holds (name, tag, model); `cone` is the target polygon in its pinned order.
    pub fn new(kind: &str, cone: &[[i64; 2]], dimers: Vec<(String, String, DimerModel)>) -> Result<TypeStudy> {
        let cl = ClassGroup::new(&ToricCone::from_polygon(cone)?)?;
        let dimers: Vec<PreparedDimer> =
            dimers.into_iter().map(|(n, t, d)| PreparedDimer::new(&n, &t, d)).collect::<Result<_>>()?;
        let mut presentations = Vec::new();
        for (k, pd) in dimers.iter().enumerate() {
            let maps = polygon_maps(&pd.homology, cone);
            if maps.is_empty() {
                return Err(Error::Exchange(format!("{} does not have polygon {kind}", pd.name)));
            }
            for g in maps {
                let ext = pd.extremals(g, cone)?;
                for v in &pd.qp.vertices {
                    let gen = generator(&pd.dimer, &pd.qp, v, &ext, &cl)?;
                    let dual = dual_generator(&cl, &gen)?;
                    presentations.push(Presentation { dimer: k, g, dual: false, generator: gen });
                    presentations.push(Presentation { dimer: k, g, dual: true, generator: dual });
                }
            }
        }
        // identity presentations name nodes first, undualized before dualized
        presentations.sort_by_key(|p| (p.g != IDENTITY, p.dual && p.g == IDENTITY));
        let mut study = TypeStudy {
            kind: kind.into(),
            cone: cone.to_vec(),
            cl,
            dimers,
            presentations,
            graph: ExchangeGraph::default(),
        };
        let mut nodes: Vec<Node> = Vec::new();
        let mut index: BTreeMap<Multiset, usize> = BTreeMap::new();
        for (i, p) in study.presentations.iter().enumerate() {
            let m = p.generator.multiset();
            match index.get(&m) {
                Some(&n) => nodes[n].presentations.push(i),
                None => {
                    index.insert(m.clone(), nodes.len());
                    nodes.push(Node { multiset: m, label: study.label(i), presentations: vec![i] });
                }
            }
        }
        let multisets: Vec<Multiset> = nodes.iter().map(|n| n.multiset.clone()).collect();
        study.graph = ExchangeGraph { edges: build_exchange_graph(&multisets)?, nodes };
        Ok(study)
    }

    /// `e0A`, `(e2B')*`, or with a basis change prefix for non-identity maps.
    pub fn label(&self, p: usize) -> String {
        let pr = &self.presentations[p];
        let mut s = format!("e{}{}", pr.generator.base, self.dimers[pr.dimer].tag);
        if pr.dual {
            s = format!("({s})*");
        }
        if pr.g != IDENTITY {
            let g = pr.g;
            s = format!("[{},{};{},{}]{s}", g[0][0], g[0][1], g[1][0], g[1][1]);
        }
        s
    }

    /// Multiset named by each identity label.
    pub fn labels(&self) -> BTreeMap<String, Multiset> {
        (0..self.presentations.len())
            .filter(|&p| self.presentations[p].g == IDENTITY)
            .map(|p| (self.label(p), self.presentations[p].generator.multiset()))
            .collect()
    }

    pub fn multisets(&self) -> Vec<Multiset> {
        self.graph.nodes.iter().map(|n| n.multiset.clone()).collect()
    }

    /// Quiver in which a presentation's summands live (reversed for duals).
    pub fn quiver(&self, p: usize) -> Qp {
        let pr = &self.presentations[p];
        let q = &self.dimers[pr.dimer].qp;
        if pr.dual {
            q.opposite()
        } else {
            q.clone()
        }
    }

    /// Nodes reachable from presentation `p` by one `mutate_generator` step.
    pub fn mutation_targets(&self, p: usize) -> Result<Vec<(String, usize)>> {
        let q = self.quiver(p);
        let g = &self.presentations[p].generator;
        let mut out = Vec::new();
        for k in mutable_vertices(&q) {
            if k == g.base {
                continue;
            }
            if let Ok(m) = mutate_generator(&self.cl, g, &q, &k) {
                if let Some(n) = self.graph.node_of(&m.multiset()) {
                    out.push((k, n));
                }
            }
        }
        Ok(out)
    }

    /// For each edge, whether some presentation of an endpoint mutates onto the other.
    pub fn edge_realizations(&self) -> Result<Vec<bool>> {
        let mut reach: BTreeSet<(usize, usize)> = BTreeSet::new();
        for (n, node) in self.graph.nodes.iter().enumerate() {
            for &p in &node.presentations {
                for (_, m) in self.mutation_targets(p)? {
                    reach.insert((n, m));
                }
            }
        }
        Ok(self.graph.edges.iter().map(|&(a, b)| reach.contains(&(a, b)) || reach.contains(&(b, a))).collect())
    }

    /// Compares `mutate_generator` at `k` with the generator read from the mutated dimer.
    pub fn coherent_at(&self, p: usize, k: &str) -> Result<bool> {
        self.coherent_cached(p, k, &mut BTreeMap::new())
    }

    fn coherent_cached(&self, p: usize, k: &str, cache: &mut BTreeMap<(usize, String), PreparedDimer>) -> Result<bool> {
        let pr = &self.presentations[p];
        let predicted = mutate_generator(&self.cl, &pr.generator, &self.quiver(p), k)?;
        let key = (pr.dimer, k.to_string());
        if !cache.contains_key(&key) {
            let pd = &self.dimers[pr.dimer];
            cache.insert(key.clone(), PreparedDimer::new(&pd.name, &pd.tag, mutate_dimer(&pd.dimer, k)?)?);
        }
        let mutated = &cache[&key];
        let ext = mutated.extremals(pr.g, &self.cone)?;
        let mut actual = generator(&mutated.dimer, &mutated.qp, &pr.generator.base, &ext, &self.cl)?;
        if pr.dual {
            actual = dual_generator(&self.cl, &actual)?;
        }
        Ok(predicted.multiset() == actual.multiset())
    }

    /// Every (presentation, mutable non-base vertex) pair where `coherent_at` fails.
    pub fn incoherent(&self) -> Result<(usize, Vec<(usize, String)>)> {
        let mut cache = BTreeMap::new();
        let mut checked = 0;
        let mut bad = Vec::new();
        for p in 0..self.presentations.len() {
            for k in mutable_vertices(&self.quiver(p)) {
                if k == self.presentations[p].generator.base {
                    continue;
                }
                checked += 1;
                if !self.coherent_cached(p, &k, &mut cache)? {
                    bad.push((p, k));
                }
            }
        }
        Ok((checked, bad))
    }

    /// For each basis class [I_j], the pairs (N, M) of nodes with twist(N, [I_j]) = M.
    pub fn mm1_witnesses(&self) -> Result<Vec<Vec<(usize, usize)>>> {
        if !self.graph.is_connected() {
            return Err(Error::Exchange("exchange graph is disconnected".into()));
        }
        let mut out = Vec::new();
        for j in 0..self.cl.n {
            let c = self.cl.basis_class(j);
            let mut w = Vec::new();
            for (n, node) in self.graph.nodes.iter().enumerate() {
                if let Some(m) = self.graph.node_of(&twist(&self.cl, &node.multiset, &c)?) {
                    w.push((n, m));
                }
            }
            out.push(w);
        }
        Ok(out)
    }

    pub fn check_mm1_connected(&self) -> Result<bool> {
        Ok(self.mm1_witnesses()?.iter().all(|w| !w.is_empty()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphComparison {
    pub unknown_labels: Vec<String>,
    pub expected_nodes: usize,
    pub computed_nodes: usize,
    pub nodes_match: bool,
    pub missing_edges: Vec<(String, String)>,
    pub extra_edges: Vec<(String, String)>,
}

impl GraphComparison {
    pub fn matches(&self) -> bool {
        self.unknown_labels.is_empty()
            && self.nodes_match
            && self.missing_edges.is_empty()
            && self.extra_edges.is_empty()
    }
}

/// Compares a graph given by labels and labelled edges with the computed one.
pub fn compare_graph(study: &TypeStudy, nodes: &[String], edges: &[[String; 2]]) -> GraphComparison {
    let labels = study.labels();
    let mut unknown = Vec::new();
    let mut expected: BTreeSet<usize> = BTreeSet::new();
    let mut lookup = BTreeMap::new();
    for l in nodes {
        match labels.get(l).and_then(|m| study.graph.node_of(m)) {
            Some(n) => {
                expected.insert(n);
                lookup.insert(l.clone(), n);
            }
            None => unknown.push(l.clone()),
        }
    }
    let name = |n: usize| study.graph.nodes[n].label.clone();
    let mut want: BTreeSet<(usize, usize)> = BTreeSet::new();
    for [a, b] in edges {
        if let (Some(&x), Some(&y)) = (lookup.get(a), lookup.get(b)) {
            want.insert((x.min(y), x.max(y)));
        }
    }
    let have: BTreeSet<(usize, usize)> = study.graph.edges.iter().copied().collect();
    GraphComparison {
        expected_nodes: expected.len(),
        computed_nodes: study.graph.nodes.len(),
        nodes_match: unknown.is_empty() && expected.len() == study.graph.nodes.len(),
        missing_edges: want.difference(&have).map(|&(a, b)| (name(a), name(b))).collect(),
        extra_edges: have.difference(&want).map(|&(a, b)| (name(a), name(b))).collect(),
        unknown_labels: unknown,
    }
}
