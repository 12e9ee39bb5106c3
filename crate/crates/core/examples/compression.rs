//! Two-stage sample compression and reconstruction.

use mclab::catalog;
use mclab::compress::{CompressOptions, Scheme};
use mclab::{Budget, LabeledExample, Sample};

fn main() -> mclab::Result<()> {
    let budget = Budget::default();
    let scheme = Scheme::new(catalog::hexagon(), &budget)?;
    let sample: Sample = (0..50).map(|i| LabeledExample::new(i % 2, [3, 4][i % 2])).collect();
    for t in [1, 2] {
        let out = scheme.compress(&sample, t, &CompressOptions::with_seed(11))?;
        let h = scheme.reconstruct(&out.kept, &out.header)?;
        println!(
            "t = {t}: kept sequence of length {} for {} examples (bound {}), stage {:?}, game value {:.3}, reconstruction correct {}",
            out.r_achieved,
            sample.len(),
            out.r_bound,
            out.stage,
            out.game_value,
            h.is_correct_on(&sample)
        );
        println!("  hypothesis {:?}", h.labels);
    }
    Ok(())
}
