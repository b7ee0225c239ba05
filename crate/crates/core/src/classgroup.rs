//! Divisor class groups Cl(R) = Z^n / lambda(Z^3) of Gorenstein toric cones.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matching::convex_hull;
use crate::snf::{hermite_rows, integer_kernel, mat_vec, reduce_mod_hermite, smith, solve_integer, Mat, Snf};

/// Cone over a lattice polygon at height one; generators in the given cyclic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricCone {
    pub generators: Vec<[i64; 3]>,
}

impl ToricCone {
    /// Cone over polygon vertices; every point must be a strict hull vertex.
    pub fn from_polygon(vertices: &[[i64; 2]]) -> Result<ToricCone> {
        let hull = convex_hull(vertices);
        if vertices.len() < 3 || hull.len() != vertices.len() {
            return Err(Error::Lattice("cone generators are not minimal".into()));
        }
        Ok(ToricCone { generators: vertices.iter().map(|v| [v[0], v[1], 1]).collect() })
    }

    /// Rows lambda_i(e_j) = <e_j, v_i>.
    pub fn lambda(&self) -> Mat {
        self.generators.iter().map(|g| g.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }
}

/// Element of Cl(R): free coordinates, then torsion coordinates reduced mod the invariants.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DivisorClass {
    pub free: Vec<BigInt>,
    pub torsion: Vec<BigInt>,
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let part = |v: &[BigInt]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "({};{})", part(&self.free), part(&self.torsion))
    }
}

#[derive(Clone, Debug)]
pub struct ClassGroup {
    pub n: usize,
    snf: Snf,
    /// Row indices of `u` carrying torsion, with their moduli.
    torsion_rows: Vec<(usize, BigInt)>,
    lambda: Mat,
}

impl ClassGroup {
    pub fn new(cone: &ToricCone) -> Result<ClassGroup> {
        let lambda = cone.lambda();
        let snf = smith(&lambda);
        if snf.rank() < 3 {
            return Err(Error::Lattice(format!("lambda has rank {} < 3", snf.rank())));
        }
        let torsion_rows =
            snf.diag.iter().enumerate().filter(|(_, d)| !d.is_one()).map(|(i, d)| (i, d.clone())).collect();
        Ok(ClassGroup { n: cone.len(), snf, torsion_rows, lambda })
    }

    pub fn rank(&self) -> usize {
        self.n - self.snf.rank()
    }

    pub fn invariants(&self) -> Vec<BigInt> {
        self.torsion_rows.iter().map(|(_, d)| d.clone()).collect()
    }

    /// Human readable group, e.g. `Z x Z/2`.
    pub fn describe(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        match self.rank() {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.invariants().iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" x ")
        }
    }

    pub fn zero(&self) -> DivisorClass {
        DivisorClass { free: vec![BigInt::zero(); self.rank()], torsion: vec![BigInt::zero(); self.torsion_rows.len()] }
    }

    pub fn classify_big(&self, u: &[BigInt]) -> Result<DivisorClass> {
        if u.len() != self.n {
            return Err(Error::Lattice(format!("vector of length {} for {} generators", u.len(), self.n)));
        }
        let y = mat_vec(&self.snf.u, u);
        let free = y[self.snf.rank()..].to_vec();
        let torsion = self.torsion_rows.iter().map(|(i, d)| y[*i].mod_floor(d)).collect();
        Ok(DivisorClass { free, torsion })
    }

    pub fn classify(&self, u: &[i64]) -> Result<DivisorClass> {
        self.classify_big(&u.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>())
    }

    /// Class of the basis divisor I_j (0-based).
    pub fn basis_class(&self, j: usize) -> DivisorClass {
        let mut u = vec![0; self.n];
        u[j] = 1;
        self.classify(&u).expect("basis vector has the right length")
    }

    fn check(&self, a: &DivisorClass) -> Result<()> {
        if a.free.len() != self.rank() || a.torsion.len() != self.torsion_rows.len() {
            return Err(Error::Lattice("class from a different presentation".into()));
        }
        Ok(())
    }

    pub fn add(&self, a: &DivisorClass, b: &DivisorClass) -> Result<DivisorClass> {
        self.check(a)?;
        self.check(b)?;
        Ok(DivisorClass {
            free: a.free.iter().zip(&b.free).map(|(x, y)| x + y).collect(),
            torsion: a
                .torsion
                .iter()
                .zip(&b.torsion)
                .zip(&self.torsion_rows)
                .map(|((x, y), (_, d))| (x + y).mod_floor(d))
                .collect(),
        })
    }

    pub fn neg(&self, a: &DivisorClass) -> Result<DivisorClass> {
        self.check(a)?;
        Ok(DivisorClass {
            free: a.free.iter().map(|x| -x).collect(),
            torsion: a.torsion.iter().zip(&self.torsion_rows).map(|(x, (_, d))| (-x).mod_floor(d)).collect(),
        })
    }

    pub fn sub(&self, a: &DivisorClass, b: &DivisorClass) -> Result<DivisorClass> {
        self.add(a, &self.neg(b)?)
    }

    /// Some u in Z^n projecting to the class.
    pub fn lift(&self, a: &DivisorClass) -> Result<Vec<BigInt>> {
        self.check(a)?;
        let mut y = vec![BigInt::zero(); self.n];
        for ((i, _), t) in self.torsion_rows.iter().zip(&a.torsion) {
            y[*i] = t.clone();
        }
        for (k, f) in a.free.iter().enumerate() {
            y[self.snf.rank() + k] = f.clone();
        }
        Ok(mat_vec(&self.snf.u_inv, &y))
    }

    /// Representative supported on `support`, reduced so that later coordinates are
    /// as small as possible; `None` when those coordinates do not reach the class.
    pub fn representative(&self, a: &DivisorClass, support: &[usize]) -> Result<Option<Vec<BigInt>>> {
        let target = self.lift(a)?;
        let s = support.len();
        if support.iter().any(|&j| j >= self.n) {
            return Err(Error::Lattice("support index out of range".into()));
        }
        // [E_S | -lambda] z = target
        let m: Mat = (0..self.n)
            .map(|i| {
                let mut row: Vec<BigInt> =
                    support.iter().map(|&j| if i == j { BigInt::one() } else { BigInt::zero() }).collect();
                row.extend(self.lambda[i].iter().map(|x| -x));
                row
            })
            .collect();
        let Some(z) = solve_integer(&m, &target) else {
            return Ok(None);
        };
        let mut us: Vec<BigInt> = z[..s].iter().rev().cloned().collect();
        let kernel: Vec<Vec<BigInt>> =
            integer_kernel(&m).into_iter().map(|k| k[..s].iter().rev().cloned().collect()).collect();
        reduce_mod_hermite(&mut us, &hermite_rows(&kernel));
        us.reverse();
        let mut u = vec![BigInt::zero(); self.n];
        for (&j, x) in support.iter().zip(us) {
            u[j] = x;
        }
        Ok(Some(u))
    }

    /// Image of each basis vector e_j as class coordinates.
    pub fn projection(&self) -> Vec<DivisorClass> {
        (0..self.n).map(|j| self.basis_class(j)).collect()
    }
}

/// True iff some x in Z^3 has lambda_i(x) = 1 for every generator.
pub fn is_gorenstein(generators: &[[i64; 3]]) -> Result<bool> {
    let lambda: Mat = generators.iter().map(|g| g.iter().map(|&x| BigInt::from(x)).collect()).collect();
    if smith(&lambda).rank() < 3 {
        return Err(Error::Lattice("generators do not span a full-rank cone".into()));
    }
    Ok(solve_integer(&lambda, &vec![BigInt::one(); generators.len()]).is_some())
}

pub fn to_i64(v: &[BigInt]) -> Option<Vec<i64>> {
    v.iter().map(|x| i64::try_from(x).ok()).collect()
}
