use dimer_mm::corpus::Corpus;
use dimer_mm::verify::{all_passed, verify_type};

fn main() -> Result<(), dimer_mm::Error> {
    let c = Corpus::embedded();
    let checks = verify_type(&c, "6c")?;
    for ch in &checks {
        println!("{ch}");
    }
    println!("passed: {}", all_passed(&checks));
    Ok(())
}
