use dimer_mm::consistency::check_consistency;
use dimer_mm::corpus::Corpus;

fn main() -> Result<(), dimer_mm::Error> {
    let c = Corpus::embedded();
    for name in ["4a-1", "6b-1", "conifold"] {
        let r = check_consistency(&c.dimer(name)?)?;
        println!("{name}: nondegenerate={} rcharge={}", r.nondegenerate, r.rcharge.is_some());
        if let Some(rc) = &r.rcharge {
            for (arrow, v) in rc.iter().take(4) {
                println!("  R({arrow}) = {v}");
            }
        }
    }
    Ok(())
}
