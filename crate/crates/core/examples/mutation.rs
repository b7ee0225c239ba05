use dimer_mm::corpus::Corpus;
use dimer_mm::iso::dimer_isomorphic;
use dimer_mm::mutation::{mutable_vertices, mutate_dimer, premutate, reduce};

fn main() -> Result<(), dimer_mm::Error> {
    let c = Corpus::embedded();
    let d = c.dimer("6b-1")?;
    let q = d.dual_qp()?;
    println!("mutable vertices: {:?}", mutable_vertices(&q));
    let pre = premutate(&q, "1")?;
    println!("premutated at 1: {} arrows", pre.arrows.len());
    let red = reduce(&pre)?;
    println!("reduced: {} arrows\n{}", red.arrows.len(), red.potential);
    let m = mutate_dimer(&c.dimer("4a-1")?, "0")?;
    println!("mu_0(4a-1) ~ 4a-2: {}", dimer_isomorphic(&m, &c.dimer("4a-2")?)?);
    Ok(())
}
