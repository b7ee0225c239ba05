use dimer_mm::classgroup::{ClassGroup, ToricCone};
use dimer_mm::corpus::Corpus;

fn main() -> Result<(), dimer_mm::Error> {
    let c = Corpus::embedded();
    for (kind, te) in &c.types {
        let cl = ClassGroup::new(&ToricCone::from_polygon(&te.cone)?)?;
        println!("{kind}\t{}", cl.describe());
    }
    // relations between the rank-one ideals of 4a
    let cl = ClassGroup::new(&ToricCone::from_polygon(&c.polygon("4a")?.cone)?)?;
    for u in [[1, 0, -1, 0], [1, 1, 0, 0], [0, 2, 0, 0]] {
        println!("{u:?} -> {}", cl.classify(&u)?);
    }
    Ok(())
}
