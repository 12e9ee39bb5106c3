//! Optimal and greedy orientations of one-inclusion graphs.

use mclab::catalog;
use mclab::oig::{avg_degree, greedy_orientation, max_out_degree, optimal_orientation, OneInclusionGraph};

fn main() -> mclab::Result<()> {
    for (name, class) in [("hexagon", catalog::hexagon()), ("cube(4)", catalog::boolean_cube(4))] {
        let g = OneInclusionGraph::build(&class)?;
        let (sigma, k) = optimal_orientation(&g);
        println!("{name}: {} vertices, avd {}, optimal max out-degree {k}", g.vertex_count(), avg_degree(&g));
        println!("  check: {}", max_out_degree(&g, &sigma)?);
        for bound in 0..=g.dimension() {
            if let Some(s) = greedy_orientation(&g, bound) {
                println!("  greedy peeling succeeds from bound {bound} with out-degree {}", max_out_degree(&g, &s)?);
                break;
            }
        }
    }
    Ok(())
}
