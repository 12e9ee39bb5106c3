//! Coset complexes of S3 and the Klein group.

use mclab::complex::count_empty_squares;
use mclab::group::{check_polish_conditions, coset_complex, klein_instance, s3_instance};
use mclab::Budget;

fn main() -> mclab::Result<()> {
    let budget = Budget::default();
    for (name, (g, subs)) in [("S3", s3_instance(&budget)?), ("Z2 x Z2", klein_instance(&budget)?)] {
        let cc = coset_complex(&g, &subs, &budget)?;
        let r = check_polish_conditions(&g, &subs, &budget)?;
        println!(
            "{name}: order {}, {} cosets, {} maximal faces, empty squares {}",
            g.order(),
            cc.complex.vertex_count(),
            cc.complex.maximal_faces().len(),
            count_empty_squares(&cc.complex)
        );
        println!("  good {}, conditions hold {}, natarajan {:?}", r.good, r.conditions_hold(), r.natarajan);
        if let Some(class) = &r.class {
            println!("  class {:?}", class.words());
        }
    }
    Ok(())
}
