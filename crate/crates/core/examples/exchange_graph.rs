use dimer_mm::corpus::Corpus;
use dimer_mm::verify::type_study;

fn main() -> Result<(), dimer_mm::Error> {
    let c = Corpus::embedded();
    let s = type_study(&c, "4a")?;
    print!("{}", s.graph.to_dot("4a"));
    println!("// connected: {}", s.graph.is_connected());
    println!("// MM1 connected: {}", s.check_mm1_connected()?);
    Ok(())
}
