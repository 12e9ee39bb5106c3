//! Pseudo-cubes and good complexes, back and forth.

use mclab::catalog;
use mclab::complex::{are_isomorphic, complex_to_pseudocube, cycle_complex, is_good, pseudocube_to_complex};

fn main() -> mclab::Result<()> {
    let hex = catalog::hexagon();
    let (c, pairs) = pseudocube_to_complex(&hex)?;
    println!("hexagon complex: {} vertices (point, label) = {pairs:?}", c.vertex_count());
    println!("  faces {:?}, good {}", c.maximal_faces(), is_good(&c).good);
    let cycle = cycle_complex(6).with_coloring((0..6).map(|v| v % 2).collect())?;
    println!("  isomorphic to the 2-colored 6-cycle: {}", are_isomorphic(&c, &cycle));
    let back = complex_to_pseudocube(&c)?;
    println!("  back to a class of {} words: {:?}", back.len(), back.words());
    Ok(())
}
