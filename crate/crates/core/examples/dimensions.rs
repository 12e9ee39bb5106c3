//! Shattering dimensions of the hexagon and the Boolean cube.

use mclab::catalog;
use mclab::dims::{dimension_report, is_pseudo_cube};
use mclab::Budget;

fn main() -> mclab::Result<()> {
    let budget = Budget::default();
    for (name, class) in [("hexagon", catalog::hexagon()), ("cube(3)", catalog::boolean_cube(3))] {
        let r = dimension_report(&class, &budget)?;
        println!(
            "{name}: pseudo-cube {}, vc {:?}, natarajan {}, ds {}, exponential {}",
            is_pseudo_cube(&class),
            r.vc,
            r.natarajan,
            r.ds,
            r.exponential
        );
        println!("  ds witness {:?}, natarajan witness {:?}", r.witnesses.ds, r.witnesses.natarajan.points);
    }
    Ok(())
}
