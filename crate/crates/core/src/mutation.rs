//! Mutation of quivers with potential and of dimer models.

use std::collections::BTreeSet;

use crate::consistency::check_consistency;
use crate::dimer::{dimer_from_qp, DimerModel};
use crate::error::{Error, Result};
use crate::quiver::{Arrow, Potential, Qp};

pub fn composite_name(a: &str, b: &str) -> String {
    format!("[{a}.{b}]")
}

pub fn star(a: &str) -> String {
    match a.strip_suffix('*') {
        Some(s) => s.to_string(),
        None => format!("{a}*"),
    }
}

fn mutation_error(k: &str, reason: &str) -> Error {
    Error::Mutation { vertex: k.to_string(), reason: reason.to_string() }
}

/// Vertices without loops, off every 2-cycle, with two incoming and two outgoing arrows.
pub fn mutable_vertices(q: &Qp) -> Vec<String> {
    q.vertices
        .iter()
        .filter(|v| !q.has_loop(v) && !q.on_two_cycle(v) && q.incoming(v).len() == 2 && q.outgoing(v).len() == 2)
        .cloned()
        .collect()
}

/// Premutation at `k`. When the two -1 cycles through `k` pair up its arrows, the
/// added cycles get the dimer signs; otherwise every added cycle has coefficient +1.
pub fn premutate(q: &Qp, k: &str) -> Result<Qp> {
    if !q.has_vertex(k) {
        return Err(Error::UnknownVertex(k.to_string()));
    }
    if q.has_loop(k) {
        return Err(mutation_error(k, "vertex has a loop"));
    }
    if q.on_two_cycle(k) {
        return Err(mutation_error(k, "vertex lies on a 2-cycle"));
    }
    let ins: Vec<String> = q.incoming(k).into_iter().cloned().collect();
    let outs: Vec<String> = q.outgoing(k).into_iter().cloned().collect();

    let mut potential = Potential::new();
    let mut minus_pairs = BTreeSet::new();
    for (cycle, c) in q.potential.terms() {
        let Some(r) = cycle.iter().position(|a| q.arrows[a].tail != k) else {
            return Err(mutation_error(k, "cycle made of loops"));
        };
        let rotated: Vec<&String> = cycle[r..].iter().chain(&cycle[..r]).collect();
        let mut out = Vec::new();
        let mut i = 0;
        while i < rotated.len() {
            let x = rotated[i];
            if q.arrows[x].head == k {
                let y = rotated[i + 1];
                if c == -1 {
                    minus_pairs.insert((x.clone(), y.clone()));
                }
                out.push(composite_name(x, y));
                i += 2;
            } else {
                out.push(x.clone());
                i += 1;
            }
        }
        potential.add_term(&out, c);
    }

    let mut result = Qp::new(q.vertices.clone());
    for (id, a) in &q.arrows {
        if a.head != k && a.tail != k {
            result.arrows.insert(id.clone(), a.clone());
        }
    }
    for a in &ins {
        let x = &q.arrows[a];
        result.arrows.insert(star(a), Arrow { tail: k.into(), head: x.tail.clone(), d: [-x.d[0], -x.d[1]] });
    }
    for b in &outs {
        let y = &q.arrows[b];
        result.arrows.insert(star(b), Arrow { tail: y.head.clone(), head: k.into(), d: [-y.d[0], -y.d[1]] });
    }
    let paired = ins.len() == 2 && outs.len() == 2 && minus_pairs.len() == 2 && {
        let firsts: BTreeSet<&String> = minus_pairs.iter().map(|p| &p.0).collect();
        let seconds: BTreeSet<&String> = minus_pairs.iter().map(|p| &p.1).collect();
        firsts.len() == 2 && seconds.len() == 2
    };
    for a in &ins {
        for b in &outs {
            let (x, y) = (&q.arrows[a], &q.arrows[b]);
            let name = composite_name(a, b);
            if result.arrows.contains_key(&name) {
                return Err(mutation_error(k, &format!("arrow name {name} already in use")));
            }
            result.arrows.insert(
                name.clone(),
                Arrow { tail: x.tail.clone(), head: y.head.clone(), d: [x.d[0] + y.d[0], x.d[1] + y.d[1]] },
            );
            let sign = if !paired || minus_pairs.contains(&(a.clone(), b.clone())) { 1 } else { -1 };
            potential.add_term(&[star(a), name, star(b)], sign);
        }
    }
    result.potential = potential;
    Ok(result)
}

/// Removes 2-cycle terms: `e*x*y + x*A + y*B + C` becomes `C - e*B*A`.
pub fn reduce(q: &Qp) -> Result<Qp> {
    let mut q = q.clone();
    let bound = q.potential.terms().filter(|(c, _)| c.len() == 2).count() + q.arrows.len();
    for _ in 0..=bound {
        let Some((key, eps)) = q.potential.terms().find(|(c, _)| c.len() == 2).map(|(c, e)| (c.clone(), e)) else {
            return Ok(q);
        };
        if eps.abs() != 1 {
            return Err(Error::Reduction(format!("2-cycle {} has coefficient {eps}", key.join(" "))));
        }
        let (x, y) = (&key[0], &key[1]);
        if x == y {
            return Err(Error::Reduction(format!("2-cycle {x} {x}")));
        }
        let mut a_part: Vec<(Vec<String>, i64)> = Vec::new();
        let mut b_part: Vec<(Vec<String>, i64)> = Vec::new();
        let mut rest = Potential::new();
        for (cycle, c) in q.potential.terms() {
            if *cycle == key {
                continue;
            }
            let cx = cycle.iter().filter(|a| *a == x).count();
            let cy = cycle.iter().filter(|a| *a == y).count();
            match (cx, cy) {
                (0, 0) => rest.add_term(cycle, c),
                (1, 0) | (0, 1) => {
                    let pivot = if cx == 1 { x } else { y };
                    let p = cycle.iter().position(|a| a == pivot).unwrap();
                    let tail: Vec<String> = cycle[p + 1..].iter().chain(&cycle[..p]).cloned().collect();
                    if cx == 1 {
                        a_part.push((tail, c))
                    } else {
                        b_part.push((tail, c))
                    }
                }
                _ => {
                    return Err(Error::Reduction(format!(
                        "term {} meets the 2-cycle {x} {y} more than once",
                        cycle.join(" ")
                    )))
                }
            }
        }
        for (bw, bc) in &b_part {
            for (aw, ac) in &a_part {
                let word: Vec<String> = bw.iter().chain(aw).cloned().collect();
                rest.add_term(&word, -eps * bc * ac);
            }
        }
        q.arrows.remove(x);
        q.arrows.remove(y);
        q.potential = rest;
    }
    Err(Error::Reduction("iteration bound exceeded".into()))
}

pub fn mutate_qp(q: &Qp, k: &str) -> Result<Qp> {
    reduce(&premutate(q, k)?)
}

/// Mutation of a dimer at a face in the mutable set of its dual.
pub fn mutate_dimer(d: &DimerModel, k: &str) -> Result<DimerModel> {
    let q = d.dual_qp()?;
    if !q.has_vertex(k) {
        return Err(Error::UnknownVertex(k.to_string()));
    }
    if !mutable_vertices(&q).iter().any(|v| v == k) {
        return Err(mutation_error(k, "vertex is not mutable"));
    }
    let out = dimer_from_qp(&mutate_qp(&q, k)?)?;
    if !check_consistency(&out)?.consistent() {
        return Err(Error::Contract(format!("mutation at {k} gave an inconsistent dimer")));
    }
    Ok(out)
}
