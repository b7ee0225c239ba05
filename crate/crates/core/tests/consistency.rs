mod common;

use common::{corpus, corpus_names};
use dimer_mm::consistency::{check_consistency, rcharge_feasible, verify_rcharge};
use dimer_mm::dimer::DimerModel;
use dimer_mm::io::parse_dimer;
use dimer_mm::lp::{maximize, q, LpOutcome};
use dimer_mm::matching::is_nondegenerate;
use serde_json::{json, Value};

fn base_4a() -> Value {
    let mut v: Value = serde_json::from_str(corpus().raw_file("4a-1.json").unwrap()).unwrap();
    v.as_object_mut().unwrap().remove("faces");
    v
}

fn edge(id: &str, w: &str, b: &str) -> Value {
    json!({"id": id, "white": w, "black": b, "dx": 0, "dy": 0})
}

/// 4a-1 with an edge doubled, which bounds a 2-gon face.
fn doubled_edge() -> DimerModel {
    let mut v = base_4a();
    v["edges"].as_array_mut().unwrap().push(edge("e9", "w1", "b1"));
    let insert = |v: &mut Value, vertex: &str, after: &str, new: &str| {
        let rot = v["rotations"][vertex].as_array_mut().unwrap();
        let at = rot.iter().position(|x| x == after).unwrap();
        rot.insert(at + 1, json!(new));
    };
    insert(&mut v, "b1", "e1", "e9");
    let rot = v["rotations"]["w1"].as_array_mut().unwrap();
    let at = rot.iter().position(|x| x == "e1").unwrap();
    rot.insert(at, json!("e9"));
    parse_dimer(&v.to_string()).unwrap()
}

/// 4a-1 with a pendant pair joined by three parallel edges, hung off b1.
fn pendant() -> DimerModel {
    let mut v = base_4a();
    let vs = v["vertices"].as_array_mut().unwrap();
    vs.push(json!({"id": "w3", "color": "white"}));
    vs.push(json!({"id": "b3", "color": "black"}));
    let es = v["edges"].as_array_mut().unwrap();
    for e in [edge("x1", "w3", "b3"), edge("x2", "w3", "b3"), edge("x3", "w3", "b3"), edge("y", "w3", "b1")] {
        es.push(e);
    }
    v["rotations"]["w3"] = json!(["y", "x1", "x2", "x3"]);
    v["rotations"]["b3"] = json!(["x3", "x2", "x1"]);
    let rot = v["rotations"]["b1"].as_array_mut().unwrap();
    rot.insert(1, json!("y"));
    parse_dimer(&v.to_string()).unwrap()
}

#[test]
fn corpus_is_consistent_with_checked_witness() {
    let c = corpus();
    for name in corpus_names(&c) {
        let d = c.dimer(&name).unwrap();
        let r = check_consistency(&d).unwrap();
        assert!(r.nondegenerate && r.hull_multiplicities_one, "{name}");
        let w = r.rcharge.expect("feasible");
        assert!(verify_rcharge(&d.dual_qp().unwrap(), &w), "{name}");
    }
}

#[test]
fn doubled_edge_is_nondegenerate_but_infeasible() {
    let d = doubled_edge();
    assert!(d.validate().is_empty(), "{:?}", d.validate());
    let faces = d.trace_faces().unwrap().faces;
    assert_eq!(faces.len(), 5);
    assert!(faces.iter().any(|f| f.darts.len() == 2));
    assert!(is_nondegenerate(&d));
    assert_eq!(rcharge_feasible(&d.dual_qp().unwrap()).unwrap(), None);
    assert!(!check_consistency(&d).unwrap().consistent());
}

#[test]
fn pendant_pair_is_degenerate() {
    let d = pendant();
    assert!(d.validate().is_empty(), "{:?}", d.validate());
    assert!(!is_nondegenerate(&d));
    let r = check_consistency(&d).unwrap();
    assert!(!r.nondegenerate && !r.consistent());
}

#[test]
fn witness_check_catches_tampering() {
    let d = corpus().dimer("6b-1").unwrap();
    let qp = d.dual_qp().unwrap();
    let mut w = rcharge_feasible(&qp).unwrap().unwrap();
    let first = w.keys().next().unwrap().clone();
    *w.get_mut(&first).unwrap() += q(1);
    assert!(!verify_rcharge(&qp, &w));
}

#[test]
fn simplex_small_cases() {
    // max x + y with x + y + s = 1
    let c = [q(1), q(1), q(0)];
    let a = vec![vec![q(1), q(1), q(1)]];
    match maximize(&c, &a, &[q(1)]) {
        LpOutcome::Optimal { value, .. } => assert_eq!(value, q(1)),
        other => panic!("{other:?}"),
    }
    // x - y = 1 has no bound on x
    assert_eq!(maximize(&[q(1), q(0)], &[vec![q(1), q(-1)]], &[q(1)]), LpOutcome::Unbounded);
    // x + y = -1 with x, y >= 0
    assert_eq!(maximize(&[q(0), q(0)], &[vec![q(1), q(1)]], &[q(-1)]), LpOutcome::Infeasible);
    // redundant equality rows
    let a = vec![vec![q(1), q(1)], vec![q(2), q(2)]];
    match maximize(&[q(1), q(0)], &a, &[q(3), q(6)]) {
        LpOutcome::Optimal { x, value } => {
            assert_eq!(value, q(3));
            assert_eq!(x, vec![q(3), q(0)]);
        }
        other => panic!("{other:?}"),
    }
}
