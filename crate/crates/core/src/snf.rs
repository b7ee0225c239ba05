//! Smith and Hermite normal forms over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Mat = Vec<Vec<BigInt>>;

pub fn to_big(m: &[Vec<i64>]) -> Mat {
    m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

pub fn identity(n: usize) -> Mat {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

pub fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let cols = b.first().map_or(0, |r| r.len());
    a.iter().map(|row| (0..cols).map(|j| row.iter().zip(b).map(|(x, r)| x * &r[j]).sum()).collect()).collect()
}

pub fn mat_vec(a: &Mat, v: &[BigInt]) -> Vec<BigInt> {
    a.iter().map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}

/// `u * a * v = d` with `u`, `v` unimodular and `d` diagonal, `d[i] | d[i+1]`.
#[derive(Clone, Debug)]
pub struct Snf {
    pub u: Mat,
    pub u_inv: Mat,
    pub v: Mat,
    pub d: Mat,
    /// Nonzero diagonal entries, all positive.
    pub diag: Vec<BigInt>,
}

impl Snf {
    pub fn rank(&self) -> usize {
        self.diag.len()
    }
}

fn sub_row(m: &mut Mat, i: usize, t: usize, q: &BigInt) {
    let src = m[t].clone();
    for (x, y) in m[i].iter_mut().zip(&src) {
        *x -= q * y;
    }
}

fn sub_col(m: &mut Mat, j: usize, t: usize, q: &BigInt) {
    for row in m.iter_mut() {
        let y = row[t].clone();
        row[j] -= q * y;
    }
}

fn swap_cols(m: &mut Mat, i: usize, j: usize) {
    for row in m.iter_mut() {
        row.swap(i, j);
    }
}

/// Pivot: smallest nonzero magnitude, ties broken by row-major position.
pub fn smith(a: &Mat) -> Snf {
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    let mut d = a.clone();
    let mut u = identity(m);
    let mut u_inv = identity(m);
    let mut v = identity(n);
    let mut diag = Vec::new();
    for t in 0..m.min(n) {
        loop {
            let mut best: Option<(BigInt, usize, usize)> = None;
            for (i, row) in d.iter().enumerate().skip(t) {
                for (j, x) in row.iter().enumerate().skip(t) {
                    if !x.is_zero() && best.as_ref().is_none_or(|b| x.abs() < b.0) {
                        best = Some((x.abs(), i, j));
                    }
                }
            }
            let Some((_, pi, pj)) = best else {
                return Snf { u, u_inv, v, d, diag };
            };
            d.swap(t, pi);
            u.swap(t, pi);
            swap_cols(&mut u_inv, t, pi);
            swap_cols(&mut d, t, pj);
            swap_cols(&mut v, t, pj);
            let mut clean = true;
            for i in t + 1..m {
                let q = d[i][t].div_floor(&d[t][t]);
                if !q.is_zero() {
                    sub_row(&mut d, i, t, &q);
                    sub_row(&mut u, i, t, &q);
                    // inverse: column t += q * column i
                    let neg = -q.clone();
                    sub_col(&mut u_inv, t, i, &neg);
                }
                clean &= d[i][t].is_zero();
            }
            for j in t + 1..n {
                let q = d[t][j].div_floor(&d[t][t]);
                if !q.is_zero() {
                    sub_col(&mut d, j, t, &q);
                    sub_col(&mut v, j, t, &q);
                }
                clean &= d[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !d[i][j].is_multiple_of(&d[t][t])));
            if let Some(i) = bad {
                // row t += row i; inverse: column i -= column t
                let one = -BigInt::one();
                sub_row(&mut d, t, i, &one);
                sub_row(&mut u, t, i, &one);
                sub_col(&mut u_inv, i, t, &BigInt::one());
                continue;
            }
            break;
        }
        if d[t][t].is_negative() {
            for x in d[t].iter_mut() {
                *x = -x.clone();
            }
            for x in u[t].iter_mut() {
                *x = -x.clone();
            }
            for row in u_inv.iter_mut() {
                row[t] = -row[t].clone();
            }
        }
        diag.push(d[t][t].clone());
    }
    Snf { u, u_inv, v, d, diag }
}

/// An integer solution of `a x = b`, if any.
pub fn solve_integer(a: &Mat, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let s = smith(a);
    let n = a.first().map_or(0, |r| r.len());
    let c = mat_vec(&s.u, b);
    let mut y = vec![BigInt::zero(); n];
    for (i, ci) in c.iter().enumerate() {
        if i < s.rank() {
            if !ci.is_multiple_of(&s.diag[i]) {
                return None;
            }
            y[i] = ci / &s.diag[i];
        } else if !ci.is_zero() {
            return None;
        }
    }
    Some(mat_vec(&s.v, &y))
}

/// Basis of the integer kernel of `a`, as vectors.
pub fn integer_kernel(a: &Mat) -> Vec<Vec<BigInt>> {
    let s = smith(a);
    let n = a.first().map_or(0, |r| r.len());
    (s.rank()..n).map(|j| s.v.iter().map(|row| row[j].clone()).collect()).collect()
}

/// Row Hermite normal form: echelon rows with positive pivots and reduced entries above them.
pub fn hermite_rows(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut h: Mat = rows.to_vec();
    let cols = h.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        loop {
            let best = (r..h.len()).filter(|&i| !h[i][c].is_zero()).min_by_key(|&i| h[i][c].abs());
            let Some(p) = best else { break };
            h.swap(r, p);
            let mut done = true;
            for i in r + 1..h.len() {
                let q = h[i][c].div_floor(&h[r][c]);
                sub_row(&mut h, i, r, &q);
                done &= h[i][c].is_zero();
            }
            if done {
                break;
            }
        }
        if r < h.len() && !h[r][c].is_zero() {
            if h[r][c].is_negative() {
                for x in h[r].iter_mut() {
                    *x = -x.clone();
                }
            }
            for i in 0..r {
                let q = h[i][c].div_floor(&h[r][c]);
                sub_row(&mut h, i, r, &q);
            }
            r += 1;
        }
    }
    h.truncate(r);
    h
}

/// Reduces `v` modulo the row lattice of a Hermite form.
pub fn reduce_mod_hermite(v: &mut [BigInt], h: &[Vec<BigInt>]) {
    for row in h {
        let Some(p) = row.iter().position(|x| !x.is_zero()) else { continue };
        let q = v[p].div_floor(&row[p]);
        for (x, y) in v.iter_mut().zip(row) {
            *x -= &q * y;
        }
    }
}
