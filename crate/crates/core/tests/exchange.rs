mod common;

use std::collections::BTreeSet;

use common::corpus;
use dimer_mm::classgroup::{ClassGroup, ToricCone};
use dimer_mm::exchange::{build_exchange_graph, is_connected, polygon_maps, TypeStudy, IDENTITY};
use dimer_mm::verify::type_study;
use dimer_mm::Error;

fn study(kind: &str) -> TypeStudy {
    type_study(&corpus(), kind).unwrap()
}

fn label_edges(s: &TypeStudy) -> BTreeSet<(String, String)> {
    let labels = s.labels();
    let name = |n: usize| {
        let mut names: Vec<&String> =
            labels.iter().filter(|(_, m)| s.graph.node_of(m) == Some(n)).map(|(l, _)| l).collect();
        names.sort_by_key(|l| l.starts_with('('));
        names[0].clone()
    };
    s.graph
        .edges
        .iter()
        .map(|&(a, b)| {
            let (x, y) = (name(a), name(b));
            if x < y {
                (x, y)
            } else {
                (y, x)
            }
        })
        .collect()
}

fn pairs(v: &[(&str, &str)]) -> BTreeSet<(String, String)> {
    v.iter().map(|(a, b)| if a < b { (a.to_string(), b.to_string()) } else { (b.to_string(), a.to_string()) }).collect()
}

#[test]
fn node_counts() {
    for (kind, n) in [("4a", 6), ("4b", 4), ("5b", 5), ("7b", 7), ("6c", 9)] {
        assert_eq!(study(kind).graph.nodes.len(), n, "{kind}");
    }
}

#[test]
fn edges_of_4a() {
    let s = study("4a");
    let want = pairs(&[("e2B", "e0A"), ("e0A", "e1B"), ("e0A", "e3B"), ("e1B", "e1A"), ("e3B", "e1A"), ("e1A", "e0B")]);
    assert_eq!(label_edges(&s), want);
}

#[test]
fn graph_of_5b_is_a_path() {
    let s = study("5b");
    let want = pairs(&[("e1A", "e4A"), ("e4A", "e2A"), ("e2A", "e3A"), ("e3A", "e0A")]);
    assert_eq!(label_edges(&s), want);
}

#[test]
fn every_type_is_connected_and_closed_under_duals() {
    let c = corpus();
    for (kind, te) in &c.types {
        if te.dimers.is_empty() {
            continue;
        }
        let s = study(kind);
        assert!(s.graph.is_connected(), "{kind}");
        let all: BTreeSet<_> = s.multisets().into_iter().collect();
        for m in &all {
            let mut d: Vec<_> = m.iter().map(|x| s.cl.neg(x).unwrap()).collect();
            d.sort();
            assert!(all.contains(&d), "{kind}");
        }
    }
}

#[test]
fn edge_builder_small_cases() {
    assert!(build_exchange_graph(&[]).unwrap().is_empty());
    let cl = ClassGroup::new(&ToricCone::from_polygon(&[[1, 0], [0, 1], [-1, 0], [0, -1]]).unwrap()).unwrap();
    let (z, a, b) = (cl.zero(), cl.basis_class(0), cl.basis_class(1));
    let single = vec![vec![z.clone(), a.clone()]];
    assert!(build_exchange_graph(&single).unwrap().is_empty());
    assert!(is_connected(1, &[]));
    let ab = cl.add(&a, &b).unwrap();
    let disjoint = vec![vec![z.clone(), a.clone()], vec![b.clone(), ab.clone()]];
    let e = build_exchange_graph(&disjoint).unwrap();
    assert!(e.is_empty());
    assert!(!is_connected(2, &e));
    let adjacent = vec![vec![z.clone(), a.clone()], vec![z.clone(), b.clone()]];
    assert_eq!(build_exchange_graph(&adjacent).unwrap(), vec![(0, 1)]);
    let mismatch = vec![vec![z.clone(), a.clone()], vec![z, a, b]];
    assert!(matches!(build_exchange_graph(&mismatch), Err(Error::Exchange(_))));
}

#[test]
fn mm1_witnesses_of_4a() {
    let s = study("4a");
    let labels = s.labels();
    let node = |l: &str| s.graph.node_of(&labels[l]).unwrap();
    let w = s.mm1_witnesses().unwrap();
    assert!(w[0].contains(&(node("e0A"), node("e1A"))));
    assert!(w[1].contains(&(node("e0B"), node("e1B"))));
    assert!(s.check_mm1_connected().unwrap());
}

#[test]
fn mutation_is_coherent_for_small_types() {
    for kind in ["4a", "4b", "5b"] {
        let s = study(kind);
        let (checked, bad) = s.incoherent().unwrap();
        assert!(checked > 0, "{kind}");
        assert!(bad.is_empty(), "{kind}: {bad:?}");
        assert!(s.edge_realizations().unwrap().into_iter().all(|r| r), "{kind}");
    }
}

#[test]
fn polygon_maps_of_the_square() {
    let sq = [[1, 0], [0, 1], [-1, 0], [0, -1]];
    let maps = polygon_maps(&sq, &sq);
    // symmetry group of the square
    assert_eq!(maps.len(), 8);
    assert_eq!(maps[0], IDENTITY);
    let shifted: Vec<[i64; 2]> = sq.iter().map(|p| [p[0] + 3, p[1] - 2]).collect();
    assert_eq!(polygon_maps(&sq, &shifted).len(), 8);
    assert!(polygon_maps(&sq, &[[0, 0], [2, 0], [0, 2]]).is_empty());
    assert!(polygon_maps(&sq, &[[0, 0], [2, 0], [2, 1], [0, 1]]).is_empty());
}
