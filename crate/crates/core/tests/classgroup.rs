mod common;

use common::{corpus, det, determinantal_invariants};
use dimer_mm::classgroup::{is_gorenstein, to_i64, ClassGroup, ToricCone};
use dimer_mm::snf::{identity, mat_mul, smith, solve_integer, to_big, Mat};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn cl(poly: &[[i64; 2]]) -> ClassGroup {
    ClassGroup::new(&ToricCone::from_polygon(poly).unwrap()).unwrap()
}

#[test]
fn class_groups_of_all_types() {
    let c = corpus();
    let stated = [
        ("3a", "Z/3"),
        ("4a", "Z x Z/2"),
        ("4b", "Z"),
        ("5a", "Z^2"),
        ("5b", "Z"),
        ("6a", "Z^3"),
        ("6b", "Z^2"),
        ("6c", "Z x Z/2"),
        ("7a", "Z^2"),
        ("7b", "Z"),
        ("8a", "Z x Z/2 x Z/2"),
        ("8b", "Z x Z/2"),
    ];
    for (kind, want) in stated {
        assert_eq!(cl(&c.types[kind].cone).describe(), want, "{kind}");
    }
    for (kind, te) in &c.types {
        let g = cl(&te.cone);
        assert_eq!(g.rank(), te.cone.len() - 3, "{kind}");
    }
}

#[test]
fn triangles_have_order_det() {
    let c = corpus();
    for kind in ["3a", "4c", "6d", "8c", "9a"] {
        let cone = &c.types[kind].cone;
        let m: Vec<Vec<i64>> = cone.iter().map(|p| vec![p[0], p[1], 1]).collect();
        let order: BigInt = cl(cone).invariants().iter().product();
        assert_eq!(order, BigInt::from(det(&m).abs()), "{kind}");
    }
}

#[test]
fn non_minimal_generators_are_rejected() {
    assert!(ToricCone::from_polygon(&[[0, 0], [1, 0], [2, 0], [0, 1]]).is_err());
    assert!(ToricCone::from_polygon(&[[0, 0], [1, 0]]).is_err());
}

#[test]
fn gorenstein_test() {
    assert!(is_gorenstein(&[[1, 0, 1], [0, 1, 1], [-1, -1, 1]]).unwrap());
    assert!(!is_gorenstein(&[[1, 0, 0], [0, 1, 0], [1, 1, 2]]).unwrap());
    assert!(is_gorenstein(&[[1, 0, 0], [0, 1, 0], [0, 0, 1]]).unwrap());
    assert!(is_gorenstein(&[[1, 0, 0], [0, 1, 0], [1, 1, 0]]).is_err());
}

#[test]
fn representatives_of_4a_classes() {
    let c = corpus();
    let te = &c.types["4a"];
    let g = cl(&te.cone);
    // relations I1 = I3, I2 = I4 and I1 + I2 + I3 + I4 = 0
    let a = g.classify(&[0, 1, 0, 0]).unwrap();
    let b = g.classify(&[1, 1, 0, 0]).unwrap();
    assert_ne!(a, b);
    assert_ne!(b, g.zero());
    assert_eq!(g.add(&b, &b).unwrap(), g.zero());
    assert_eq!(g.classify(&[1, 0, -1, 0]).unwrap(), g.zero());
    assert_eq!(g.classify(&[0, 2, 0, 0]).unwrap(), g.classify(&[0, 1, 0, 1]).unwrap());
    let u = g.representative(&b, &te.support).unwrap().unwrap();
    assert_eq!(to_i64(&u).unwrap(), vec![1, 1, 0, 0]);
}

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-5i64..=5, 3), 4)
}

fn polygon_type() -> impl Strategy<Value = String> {
    let kinds: Vec<String> = corpus().types.keys().cloned().collect();
    prop::sample::select(kinds)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn smith_matches_determinantal_divisors(a in matrix()) {
        let s = smith(&to_big(&a));
        let diag: Vec<i64> = s.diag.iter().map(|x| i64::try_from(x).unwrap()).collect();
        prop_assert_eq!(diag.clone(), determinantal_invariants(&a));
        prop_assert!(diag.windows(2).all(|w| w[1] % w[0] == 0));
        prop_assert!(diag.iter().all(|&x| x > 0));
        // u a v = d and u u_inv = 1
        let uav = mat_mul(&mat_mul(&s.u, &to_big(&a)), &s.v);
        prop_assert_eq!(&uav, &s.d);
        prop_assert_eq!(mat_mul(&s.u, &s.u_inv), identity(4));
        for (i, row) in s.d.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                prop_assert!(i == j || x.is_zero());
            }
        }
    }

    #[test]
    fn integer_solutions_solve(a in matrix(), x in prop::collection::vec(-4i64..=4, 3)) {
        let m: Mat = to_big(&a);
        let xb: Vec<BigInt> = x.iter().map(|&v| BigInt::from(v)).collect();
        let b: Vec<BigInt> = m.iter().map(|r| r.iter().zip(&xb).map(|(p, q)| p * q).sum()).collect();
        let sol = solve_integer(&m, &b).expect("b is in the image");
        let back: Vec<BigInt> = m.iter().map(|r| r.iter().zip(&sol).map(|(p, q)| p * q).sum()).collect();
        prop_assert_eq!(back, b);
    }

    #[test]
    fn classify_is_a_homomorphism(kind in polygon_type(), u in prop::collection::vec(-6i64..=6, 6), v in prop::collection::vec(-6i64..=6, 6)) {
        let g = cl(&corpus().types[&kind].cone);
        let (u, v) = (&u[..g.n], &v[..g.n]);
        let sum: Vec<i64> = u.iter().zip(v).map(|(a, b)| a + b).collect();
        let (cu, cv) = (g.classify(u).unwrap(), g.classify(v).unwrap());
        prop_assert_eq!(g.classify(&sum).unwrap(), g.add(&cu, &cv).unwrap());
        let neg: Vec<i64> = u.iter().map(|a| -a).collect();
        prop_assert_eq!(g.classify(&neg).unwrap(), g.neg(&cu).unwrap());
        prop_assert_eq!(g.sub(&cu, &cu).unwrap(), g.zero());
        // lift is a section of classify
        let lifted = to_i64(&g.lift(&cu).unwrap()).unwrap();
        prop_assert_eq!(g.classify(&lifted).unwrap(), cu.clone());
        // torsion coordinates are reduced
        for (t, d) in cu.torsion.iter().zip(g.invariants()) {
            prop_assert!(!t.is_negative() && *t < d);
        }
    }

    #[test]
    fn principal_divisors_are_trivial(kind in polygon_type(), m in prop::collection::vec(-5i64..=5, 3)) {
        let cone = &corpus().types[&kind].cone;
        let g = cl(cone);
        let u: Vec<i64> = cone.iter().map(|p| p[0] * m[0] + p[1] * m[1] + m[2]).collect();
        prop_assert_eq!(g.classify(&u).unwrap(), g.zero());
    }

    #[test]
    fn representatives_reach_their_class(kind in polygon_type(), u in prop::collection::vec(-4i64..=4, 6)) {
        let te = &corpus().types[&kind];
        let g = cl(&te.cone);
        let c = g.classify(&u[..g.n]).unwrap();
        // the full support always works
        let all: Vec<usize> = (0..g.n).collect();
        let r = g.representative(&c, &all).unwrap().unwrap();
        prop_assert_eq!(g.classify(&to_i64(&r).unwrap()).unwrap(), c.clone());
        if let Some(r) = g.representative(&c, &te.support).unwrap() {
            let r = to_i64(&r).unwrap();
            prop_assert_eq!(g.classify(&r).unwrap(), c);
            for (j, x) in r.iter().enumerate() {
                prop_assert!(te.support.contains(&j) || *x == 0);
            }
        }
    }
}
