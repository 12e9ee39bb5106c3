//! Shifting a class until it is downward closed, with the per-step trace.

use mclab::catalog;
use mclab::dims::dimension_report;
use mclab::shift::{is_downward_closed, shift_once, shift_to_fixed_point};
use mclab::Budget;

fn main() -> mclab::Result<()> {
    let budget = Budget::default();
    let class = catalog::dimension_jump();
    let once = shift_once(&class, 0)?;
    println!("shifted along 0: {:?}", once.words());
    for (name, c) in [("before", &class), ("after", &once)] {
        let r = dimension_report(c, &budget)?;
        println!("  {name}: natarajan {}, ds {}", r.natarajan, r.ds);
    }
    let trace = shift_to_fixed_point(&class, &budget)?;
    trace.check_invariants()?;
    for s in &trace.steps {
        println!(
            "  dir {} changed {}: avd' {} -> {}, d_E {} -> {}",
            s.direction,
            s.changed,
            s.avd_prime_before.to_rational(),
            s.avd_prime_after.to_rational(),
            s.exp_dim_before,
            s.exp_dim_after
        );
    }
    println!("fixed point {:?}, downward closed {}", trace.final_class.words(), is_downward_closed(&trace.final_class));
    Ok(())
}
