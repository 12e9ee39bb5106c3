//! The 27-vertex triangulated torus and its pseudo-cube.

use mclab::complex::{count_alternating_squares, is_good};
use mclab::dims::dimension_report;
use mclab::gen::gen_torus;
use mclab::Budget;

fn main() -> mclab::Result<()> {
    let budget = Budget::default();
    let t = gen_torus(&budget)?;
    let coloring = t.complex.coloring().expect("colored by construction");
    println!("periods {:?}", t.periods);
    println!(
        "{} vertices, {} triangles, good {}, alternating squares {}",
        t.complex.vertex_count(),
        t.complex.maximal_faces().len(),
        is_good(&t.complex).good,
        count_alternating_squares(&t.complex, coloring)
    );
    let r = dimension_report(&t.class, &budget)?;
    println!("class: {} words over {} labels, ds {}, natarajan {}", t.class.len(), t.class.labels().len(), r.ds, r.natarajan);
    Ok(())
}
