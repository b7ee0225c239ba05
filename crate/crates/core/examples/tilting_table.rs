use dimer_mm::classgroup::{ClassGroup, ToricCone};
use dimer_mm::corpus::Corpus;
use dimer_mm::generators::vertex_ideal_table;
use dimer_mm::matching::aligned_extremals;

fn main() -> Result<(), dimer_mm::Error> {
    let c = Corpus::embedded();
    let te = c.polygon("5b")?;
    let d = c.dimer("5b-1")?;
    let q = d.dual_qp()?;
    let cl = ClassGroup::new(&ToricCone::from_polygon(&te.cone)?)?;
    let ext = aligned_extremals(&d, &te.cone)?;
    for i in &q.vertices {
        let row = vertex_ideal_table(&d, &q, i, &ext, &cl)?;
        let cells: Vec<String> = row.iter().map(|e| format!("{:?}", e.raw)).collect();
        println!("{i}: {}", cells.join(" "));
    }
    Ok(())
}
