#![allow(dead_code)]

use dimer_mm::corpus::Corpus;
use dimer_mm::dimer::DimerModel;
use dimer_mm::matching::PerfectMatching;
use dimer_mm::quiver::{Potential, Qp};
use num_integer::Integer;

/// Builds a QP from (id, tail, head) arrows and signed cycles.
pub fn build_qp(n: usize, arrows: &[(&str, &str, &str)], terms: &[(i64, &[&str])]) -> Qp {
    let mut q = Qp::new((0..n).map(|i| i.to_string()).collect());
    for (a, t, h) in arrows {
        q.add_arrow(a, t, h, [0, 0]).unwrap();
    }
    for (c, w) in terms {
        q.add_term(*c, w).unwrap();
    }
    q
}

/// Reference 4a quiver with potential.
pub fn qp_4a() -> Qp {
    build_qp(
        4,
        &[
            ("b1", "0", "1"),
            ("b2", "0", "1"),
            ("d1", "1", "2"),
            ("d2", "1", "2"),
            ("c1", "2", "3"),
            ("c2", "2", "3"),
            ("a1", "3", "0"),
            ("a2", "3", "0"),
        ],
        &[
            (1, &["d2", "c1", "a2", "b1"]),
            (-1, &["d1", "c1", "a1", "b1"]),
            (1, &["d1", "c2", "a1", "b2"]),
            (-1, &["d2", "c2", "a2", "b2"]),
        ],
    )
}

/// The 6b quiver with potential of the second mutation example.
pub fn qp_6b() -> Qp {
    build_qp(
        6,
        &[
            ("a1", "0", "1"),
            ("a3", "0", "5"),
            ("e1", "0", "4"),
            ("b2", "1", "5"),
            ("b1", "1", "2"),
            ("c2", "2", "3"),
            ("c1", "2", "0"),
            ("d1", "3", "0"),
            ("d2", "3", "4"),
            ("a2", "4", "1"),
            ("e2", "4", "5"),
            ("f1", "5", "0"),
            ("f2", "5", "2"),
            ("f3", "5", "3"),
        ],
        &[
            (1, &["a1", "b1", "c1"]),
            (-1, &["a1", "b2", "f1"]),
            (1, &["a3", "f3", "d1"]),
            (-1, &["a3", "f2", "c1"]),
            (1, &["e1", "e2", "f1"]),
            (-1, &["e1", "a2", "b1", "c2", "d1"]),
            (1, &["d2", "a2", "b2", "f2", "c2"]),
            (-1, &["d2", "e2", "f3"]),
        ],
    )
}

pub fn corpus() -> Corpus {
    Corpus::embedded()
}

/// Corpus dimer names in file order.
pub fn corpus_names(c: &Corpus) -> Vec<String> {
    c.types.values().flat_map(|t| t.dimers.iter().map(|d| d.name.clone())).collect()
}

pub fn det(m: &[Vec<i64>]) -> i64 {
    match m.len() {
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| *x).collect())
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    (k - 1..n)
        .flat_map(|last| {
            subsets(last, k - 1).into_iter().map(move |mut s| {
                s.push(last);
                s
            })
        })
        .collect()
}

/// Invariant factors from gcds of k x k minors.
pub fn determinantal_invariants(a: &[Vec<i64>]) -> Vec<i64> {
    let (m, n) = (a.len(), a[0].len());
    let mut divisors = vec![1i64];
    for k in 1..=m.min(n) {
        let mut g = 0i64;
        for rows in subsets(m, k) {
            for cols in subsets(n, k) {
                let minor: Vec<Vec<i64>> = rows.iter().map(|&r| cols.iter().map(|&c| a[r][c]).collect()).collect();
                g = g.gcd(&det(&minor));
            }
        }
        if g == 0 {
            break;
        }
        divisors.push(g);
    }
    divisors.windows(2).map(|w| w[1] / w[0]).collect()
}

/// A walk in the doubled quiver from `start` steered by `choices`; returns the end and
/// the signed sum of extremal values.
pub fn walk(
    dimer: &DimerModel,
    qp: &Qp,
    ext: &[PerfectMatching],
    start: &str,
    choices: &[usize],
) -> (String, Vec<i64>) {
    let mut at = start.to_string();
    let mut raw = vec![0i64; ext.len()];
    for &c in choices {
        let mut steps: Vec<(&String, &str, i64)> = Vec::new();
        for (id, a) in &qp.arrows {
            if a.tail == at {
                steps.push((id, &a.head, 1));
            }
            if a.head == at {
                steps.push((id, &a.tail, -1));
            }
        }
        let (id, next, sign) = steps[c % steps.len()];
        let e = dimer.edge_index(id).unwrap();
        for (r, p) in raw.iter_mut().zip(ext) {
            *r += sign * p.contains(e) as i64;
        }
        at = next.to_string();
    }
    (at, raw)
}

pub fn potential(terms: &[(i64, &[&str])]) -> Potential {
    let mut p = Potential::new();
    for (c, w) in terms {
        let w: Vec<String> = w.iter().map(|s| s.to_string()).collect();
        p.add_term(&w, *c);
    }
    p
}

/// Reference potential of the 4a QP premutated at vertex 0.
pub fn premutated_4a() -> Potential {
    let (e, f, g, h) = ("[a1.b1]", "[a2.b1]", "[a1.b2]", "[a2.b2]");
    potential(&[
        (1, &["d2", "c1", f]),
        (-1, &["d1", "c1", e]),
        (1, &["d1", "c2", g]),
        (-1, &["d2", "c2", h]),
        (1, &["a1*", e, "b1*"]),
        (-1, &["a2*", f, "b1*"]),
        (1, &["a2*", h, "b2*"]),
        (-1, &["a1*", g, "b2*"]),
    ])
}

/// Reference premutation of the 6b QP at vertex 1.
pub fn premutated_6b() -> Potential {
    let (g, h, i, j) = ("[a1.b1]", "[a1.b2]", "[a2.b1]", "[a2.b2]");
    potential(&[
        (1, &[g, "c1"]),
        (-1, &[h, "f1"]),
        (1, &["a3", "f3", "d1"]),
        (-1, &["a3", "f2", "c1"]),
        (1, &["e1", "e2", "f1"]),
        (-1, &["e1", i, "c2", "d1"]),
        (1, &["d2", j, "f2", "c2"]),
        (-1, &["d2", "e2", "f3"]),
        (1, &["a1*", h, "b2*"]),
        (-1, &["a1*", g, "b1*"]),
        (1, &["a2*", i, "b1*"]),
        (-1, &["a2*", j, "b2*"]),
    ])
}

/// Reference reduction of the 6b premutation.
pub fn reduced_6b() -> Potential {
    let (i, j) = ("[a2.b1]", "[a2.b2]");
    potential(&[
        (1, &["a3", "f3", "d1"]),
        (-1, &["a3", "f2", "b1*", "a1*"]),
        (1, &["e1", "e2", "b2*", "a1*"]),
        (-1, &["e1", i, "c2", "d1"]),
        (1, &["d2", j, "f2", "c2"]),
        (-1, &["d2", "e2", "f3"]),
        (1, &["a2*", i, "b1*"]),
        (-1, &["a2*", j, "b2*"]),
    ])
}
