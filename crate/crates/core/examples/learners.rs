//! The one-inclusion, list and menu learners on the hexagon.

use mclab::catalog;
use mclab::learn::{exact_expected_error, list_learn, loo_bad_count, mc_error, Predictor};
use mclab::{Budget, FiniteDistribution, LabeledExample, Sample};

fn main() -> mclab::Result<()> {
    let budget = Budget::default();
    let hex = catalog::hexagon();
    let sample = Sample::from_pairs(&[(0, 1), (1, 2)]);

    let point = Predictor::one_inclusion(hex.clone());
    println!("one-inclusion prediction at 1 after (0,1): {}", point.predict(&sample.select(&[0]), 1)?);
    println!("leave-one-out mistakes on {:?}: {}", sample.0, loo_bad_count(&point, &sample)?);

    let menu = list_learn(&hex, 1, &Sample::from_pairs(&[(0, 1), (1, 2), (0, 1)]), 2)?;
    println!("list learner menu: {:?}", menu.entries());

    let menu_learner = Predictor::with_menu(hex.clone(), menu);
    println!("menu learner prediction at 1: {}", menu_learner.predict(&sample.select(&[0]), 1)?);

    let dist = FiniteDistribution::uniform(&[LabeledExample::new(0, 1), LabeledExample::new(1, 2)])?;
    for n in 1..=4 {
        let exact = exact_expected_error(&point, &dist, n, &budget)?;
        let mc = mc_error(&point, &dist, n, 4000, 7)?;
        println!("n = {n}: exact {exact:.4}, monte carlo {:.4} +- {:.4}", mc.mean, mc.std_err);
    }
    Ok(())
}
