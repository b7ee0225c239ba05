//! Consistency via exact R-charges.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::dimer::{dimer_from_qp, DimerModel};
use crate::error::{Error, Result};
use crate::lp::{maximize, q, LpOutcome, Q};
use crate::matching::{enumerate_matchings, is_nondegenerate};
use crate::quiver::Qp;

pub type RCharge = BTreeMap<String, Q>;

/// Maximizes the minimum charge; returns a witness iff that minimum can be positive.
pub fn rcharge_feasible(qp: &Qp) -> Result<Option<RCharge>> {
    dimer_from_qp(qp)?;
    let arrows: Vec<&String> = qp.arrows.keys().collect();
    let col: BTreeMap<&String, usize> = arrows.iter().enumerate().map(|(i, a)| (*a, i)).collect();
    let ne = arrows.len();
    // variables: R (ne), eps (1), slack s (ne)
    let nv = 2 * ne + 1;
    let mut a = Vec::new();
    let mut b = Vec::new();
    for (cycle, _) in qp.potential.terms() {
        let mut row = vec![Q::zero(); nv];
        for x in cycle {
            row[col[x]] += q(1);
        }
        a.push(row);
        b.push(q(2));
    }
    for v in &qp.vertices {
        let mut row = vec![Q::zero(); nv];
        for (id, arrow) in &qp.arrows {
            let k = (arrow.head == *v) as i64 + (arrow.tail == *v) as i64;
            row[col[id]] += q(k);
        }
        a.push(row);
        b.push(q(qp.degree(v) as i64 - 2));
    }
    for i in 0..ne {
        let mut row = vec![Q::zero(); nv];
        row[i] = q(1);
        row[ne] = q(-1);
        row[ne + 1 + i] = q(-1);
        a.push(row);
        b.push(Q::zero());
    }
    let mut c = vec![Q::zero(); nv];
    c[ne] = Q::one();
    match maximize(&c, &a, &b) {
        LpOutcome::Optimal { x, value } if value.is_positive() => {
            Ok(Some(arrows.iter().enumerate().map(|(i, id)| ((*id).clone(), x[i].clone())).collect()))
        }
        LpOutcome::Unbounded => Err(Error::Contract("R-charge program is unbounded".into())),
        _ => Ok(None),
    }
}

/// Exact substitution check of both equation families and positivity.
pub fn verify_rcharge(qp: &Qp, r: &RCharge) -> bool {
    if qp.arrows.keys().any(|a| r.get(a).is_none_or(|x| !x.is_positive())) {
        return false;
    }
    let cycles_ok = qp.potential.terms().all(|(cycle, _)| cycle.iter().fold(Q::zero(), |s, a| s + &r[a]) == q(2));
    let vertices_ok = qp.vertices.iter().all(|v| {
        let mut s = Q::zero();
        for (id, arrow) in &qp.arrows {
            let k = (arrow.head == *v) as i64 + (arrow.tail == *v) as i64;
            s += q(k) * (q(1) - &r[id]);
        }
        s == q(2)
    });
    cycles_ok && vertices_ok
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsistencyReport {
    pub nondegenerate: bool,
    pub rcharge: Option<RCharge>,
    pub hull_multiplicities_one: bool,
}

impl ConsistencyReport {
    pub fn consistent(&self) -> bool {
        self.nondegenerate && self.rcharge.is_some()
    }
}

pub fn check_consistency(d: &DimerModel) -> Result<ConsistencyReport> {
    let qp = d.dual_qp()?;
    let nondegenerate = is_nondegenerate(d);
    let rcharge = rcharge_feasible(&qp)?;
    let hull_multiplicities_one = match enumerate_matchings(d).first() {
        Some(p0) => {
            let poly = crate::matching::pm_polygon(d, p0)?;
            poly.hull.iter().all(|v| poly.multiplicity[v] == 1)
        }
        None => false,
    };
    let report = ConsistencyReport { nondegenerate, rcharge, hull_multiplicities_one };
    if report.consistent() && !report.hull_multiplicities_one {
        return Err(Error::Contract("consistent dimer with a multiple hull vertex".into()));
    }
    Ok(report)
}
