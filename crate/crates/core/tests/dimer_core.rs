mod common;

use std::collections::BTreeMap;

use common::{corpus, corpus_names, qp_4a, qp_6b};
use dimer_mm::dimer::{Color, DimerModel};
use dimer_mm::io::{parse_dimer, serialize_dimer};
use dimer_mm::iso::{qp_isomorphic, IsoOptions};
use dimer_mm::quiver::canonical_rotation;
use dimer_mm::{dimer_from_qp, Error};

/// Face walks by hand: leave along a dart, turn to the next edge counterclockwise at
/// the far vertex. Returns each face as a canonical cycle of signed edge ids.
fn naive_faces(d: &DimerModel) -> Vec<Vec<String>> {
    let mut seen = BTreeMap::new();
    let mut faces = Vec::new();
    for e in 0..d.edges.len() {
        for from_white in [true, false] {
            if seen.contains_key(&(e, from_white)) {
                continue;
            }
            let mut walk = Vec::new();
            let (mut edge, mut fw) = (e, from_white);
            while seen.insert((edge, fw), faces.len()).is_none() {
                let sign = if fw { "+" } else { "-" };
                walk.push(format!("{sign}{}", d.edges[edge].id));
                let far = if fw { d.edges[edge].black } else { d.edges[edge].white };
                let rot = &d.rotations[far];
                let at = rot.iter().position(|&x| x == edge).unwrap();
                edge = rot[(at + 1) % rot.len()];
                fw = d.vertices[far].color == Color::White;
            }
            faces.push(canonical_rotation(&walk));
        }
    }
    faces.sort();
    faces
}

#[test]
fn face_tracing_agrees_with_naive_walk() {
    let c = corpus();
    for name in corpus_names(&c).into_iter().chain(["conifold".to_string()]) {
        let d = c.dimer(&name).unwrap();
        let trace = d.trace_faces().unwrap();
        let mut got: Vec<Vec<String>> = trace
            .faces
            .iter()
            .map(|f| {
                let w: Vec<String> = f
                    .boundary()
                    .iter()
                    .map(|&(e, s)| format!("{}{}", if s > 0 { "+" } else { "-" }, d.edges[e].id))
                    .collect();
                canonical_rotation(&w)
            })
            .collect();
        got.sort();
        assert_eq!(got, naive_faces(&d), "{name}");
    }
}

#[test]
fn corpus_files_roundtrip_byte_for_byte() {
    let c = corpus();
    for file in c.file_names() {
        let text = c.raw_file(file).unwrap();
        let d = parse_dimer(text).unwrap();
        assert_eq!(serialize_dimer(&d), text, "{file}");
    }
}

#[test]
fn corpus_dimers_are_valid_with_euler_zero() {
    let c = corpus();
    for name in corpus_names(&c).into_iter().chain(["conifold".to_string()]) {
        let d = c.dimer(&name).unwrap();
        assert!(d.validate().is_empty(), "{name}: {:?}", d.validate());
        let f = d.trace_faces().unwrap().faces.len();
        assert_eq!(d.vertices.len() + f, d.edges.len(), "{name}");
    }
}

#[test]
fn dimer_4a_1_shape() {
    let d = corpus().dimer("4a-1").unwrap();
    assert_eq!(d.vertices.len(), 4);
    assert_eq!(d.edges.len(), 8);
    assert_eq!(d.trace_faces().unwrap().faces.len(), 4);
    let q = d.dual_qp().unwrap();
    assert_eq!(q.potential.len(), 4);
    assert!(qp_isomorphic(&q, &qp_4a(), IsoOptions { arrow_signs: false, fix_vertex_labels: true }));
}

#[test]
fn dual_of_6b_1_is_the_reference_qp() {
    let q = corpus().dimer("6b-1").unwrap().dual_qp().unwrap();
    assert!(qp_isomorphic(&q, &qp_6b(), IsoOptions { arrow_signs: false, fix_vertex_labels: true }));
}

#[test]
fn every_arrow_lies_on_one_positive_and_one_negative_cycle() {
    let c = corpus();
    for name in corpus_names(&c) {
        let q = c.dimer(&name).unwrap().dual_qp().unwrap();
        let mut count: BTreeMap<&String, (usize, usize)> = BTreeMap::new();
        for (cycle, k) in q.potential.terms() {
            for a in cycle {
                let e = count.entry(a).or_default();
                if k > 0 {
                    e.0 += 1
                } else {
                    e.1 += 1
                }
            }
        }
        assert_eq!(count.len(), q.arrows.len(), "{name}");
        assert!(count.values().all(|&c| c == (1, 1)), "{name}");
    }
}

#[test]
fn dimer_from_dual_qp_recovers_the_quiver() {
    let c = corpus();
    for name in corpus_names(&c) {
        let q = c.dimer(&name).unwrap().dual_qp().unwrap();
        let back = dimer_from_qp(&q).unwrap();
        assert!(back.validate().is_empty(), "{name}");
        let q2 = back.dual_qp().unwrap();
        assert!(qp_isomorphic(&q, &q2, IsoOptions { arrow_signs: false, fix_vertex_labels: true }), "{name}");
    }
}

#[test]
fn opposite_dimer_has_opposite_quiver() {
    let c = corpus();
    for name in ["4a-2", "6b-1", "7a-2"] {
        let d = c.dimer(name).unwrap();
        let q = d.dual_qp().unwrap().opposite();
        let qo = d.opposite().dual_qp().unwrap();
        assert!(qp_isomorphic(&q, &qo, IsoOptions { arrow_signs: true, fix_vertex_labels: true }), "{name}");
    }
}

#[test]
fn basis_change_needs_a_unimodular_matrix() {
    let d = corpus().dimer("4a-1").unwrap();
    assert!(matches!(d.apply_basis_change([[2, 0], [0, 1]]), Err(Error::Lattice(_))));
    let g = d.apply_basis_change([[0, -1], [1, 0]]).unwrap();
    assert!(g.validate().is_empty());
}

#[test]
fn parser_rejects_bad_input() {
    let text = corpus().raw_file("4a-1.json").unwrap().to_string();
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v.as_object_mut().unwrap().remove("rotations");
    let err = parse_dimer(&v.to_string()).unwrap_err();
    assert!(err.to_string().contains("rotations"), "{err}");

    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v.as_object_mut().unwrap().insert("colour".into(), serde_json::json!(1));
    assert!(parse_dimer(&v.to_string()).unwrap_err().to_string().contains("colour"));

    let broken = text.replacen("\"white\"", "\"purple\"", 1);
    assert!(parse_dimer(&broken).is_err());
    assert!(matches!(parse_dimer("{"), Err(Error::Json(_))));
}

#[test]
fn invalid_rotation_systems_are_reported() {
    let text = corpus().raw_file("conifold.json").unwrap().to_string();
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    // drop an edge from one rotation
    let rot = v["rotations"]["b1"].as_array_mut().unwrap();
    rot.pop();
    match parse_dimer(&v.to_string()) {
        Err(_) => {}
        Ok(d) => assert!(!d.validate().is_empty()),
    }
    // wrong displacement breaks face closure
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v["edges"][0]["dx"] = serde_json::json!(5);
    let d = parse_dimer(&v.to_string()).unwrap();
    assert!(!d.validate().is_empty());
    assert!(matches!(d.dual_qp(), Err(Error::Invalid(_))));
}
