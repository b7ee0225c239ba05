//! Exact two-phase simplex over the rationals with Bland's rule.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    BigRational::from_integer(BigInt::from(n))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { x: Vec<Q>, value: Q },
}

struct Tableau {
    rows: Vec<Vec<Q>>,
    basis: Vec<usize>,
    obj: Vec<Q>,
    cols: usize,
}

impl Tableau {
    fn width(&self) -> usize {
        self.cols
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for v in self.rows[r].iter_mut() {
            *v /= &p;
        }
        let prow = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&prow) {
                    *x -= &f * y;
                }
            }
        }
        if !self.obj[c].is_zero() {
            let f = self.obj[c].clone();
            for (x, y) in self.obj.iter_mut().zip(&prow) {
                *x -= &f * y;
            }
        }
        self.basis[r] = c;
    }

    fn set_objective(&mut self, cost: &[Q]) {
        let w = self.width();
        let mut obj: Vec<Q> = (0..=w).map(|j| if j < w { -cost[j].clone() } else { Q::zero() }).collect();
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            if !cost[b].is_zero() {
                for (o, v) in obj.iter_mut().zip(row) {
                    *o += &cost[b] * v;
                }
            }
        }
        self.obj = obj;
    }

    /// Maximizes the current objective; false if unbounded.
    fn run(&mut self, allowed: usize) -> bool {
        let rhs = self.width();
        loop {
            let Some(c) = (0..allowed).find(|&j| self.obj[j].is_negative()) else {
                return true;
            };
            let mut best: Option<(Q, usize, usize)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if row[c].is_positive() {
                    let ratio = &row[rhs] / &row[c];
                    let better = match &best {
                        None => true,
                        Some((r, _, b)) => ratio < *r || (ratio == *r && self.basis[i] < *b),
                    };
                    if better {
                        best = Some((ratio, i, self.basis[i]));
                    }
                }
            }
            match best {
                Some((_, r, _)) => self.pivot(r, c),
                None => return false,
            }
        }
    }
}

/// Maximize `c·x` subject to `A x = b`, `x >= 0`.
pub fn maximize(c: &[Q], a: &[Vec<Q>], b: &[Q]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    let mut rows = Vec::with_capacity(m);
    for i in 0..m {
        let neg = b[i].is_negative();
        let mut row: Vec<Q> = a[i].iter().map(|v| if neg { -v.clone() } else { v.clone() }).collect();
        row.extend((0..m).map(|k| if k == i { Q::one() } else { Q::zero() }));
        row.push(if neg { -b[i].clone() } else { b[i].clone() });
        rows.push(row);
    }
    let mut t = Tableau { rows, basis: (n..n + m).collect(), obj: Vec::new(), cols: n + m };
    let mut cost1 = vec![Q::zero(); n + m];
    for v in cost1.iter_mut().skip(n) {
        *v = -Q::one();
    }
    t.set_objective(&cost1);
    t.run(n + m);
    if t.obj[n + m].is_negative() {
        return LpOutcome::Infeasible;
    }
    // drive artificial variables out of the basis, dropping redundant rows
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n {
            match (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => t.pivot(i, j),
                None => {
                    t.rows.remove(i);
                    t.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }
    let mut cost2 = c.to_vec();
    cost2.extend((0..m).map(|_| Q::zero()));
    t.set_objective(&cost2);
    if !t.run(n) {
        return LpOutcome::Unbounded;
    }
    let rhs = t.width();
    let mut x = vec![Q::zero(); n];
    for (row, &bv) in t.rows.iter().zip(&t.basis) {
        if bv < n {
            x[bv] = row[rhs].clone();
        }
    }
    let value = c.iter().zip(&x).fold(Q::zero(), |s, (ci, xi)| s + ci * xi);
    LpOutcome::Optimal { x, value }
}
