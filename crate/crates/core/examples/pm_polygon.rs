use dimer_mm::corpus::Corpus;
use dimer_mm::matching::{enumerate_matchings, pm_polygon};

fn main() -> Result<(), dimer_mm::Error> {
    let c = Corpus::embedded();
    let d = c.dimer("4a-1")?;
    let pms = enumerate_matchings(&d);
    println!("{} perfect matchings", pms.len());
    let poly = pm_polygon(&d, &pms[0])?;
    for (p, m) in &poly.multiplicity {
        println!("{:>3} {:>3}  x{m}{}", p[0], p[1], if poly.is_hull_vertex(*p) { "  corner" } else { "" });
    }
    Ok(())
}
