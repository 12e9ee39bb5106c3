//! Star unions and tree classes: large DS dimension against small Natarajan dimension.

use mclab::catalog;
use mclab::dims::dimension_report;
use mclab::gen::{gen_tree_class, star_union};
use mclab::Budget;

fn main() -> mclab::Result<()> {
    let budget = Budget::default();
    let u = star_union(&[catalog::hexagon(), catalog::hexagon()])?;
    let r = dimension_report(&u, &budget)?;
    println!("hexagon * hexagon: {} words on {} points, natarajan {}, ds {}", u.len(), u.domain_size(), r.natarajan, r.ds);
    for (k, m) in [(2, 2), (3, 2), (2, 4)] {
        let tree = gen_tree_class(k, m, &budget)?;
        let r = dimension_report(&tree, &budget)?;
        println!("tree k={k} m={m}: {} words, natarajan {}, ds {}", tree.len(), r.natarajan, r.ds);
    }
    Ok(())
}
