//! The bundled claim suite behind `mclab selftest`: every exact statement
//! about the named constructions, recomputed from scratch.

use itertools::Itertools;
use serde::Serialize;

use crate::budget::Budget;
use crate::catalog;
use crate::class::{ConceptClass, LabeledExample, Sample};
use crate::complex::{count_alternating_squares, count_empty_squares, is_good};
use crate::compress::{CompressOptions, Scheme};
use crate::dims::{dimension_report, is_pseudo_cube};
use crate::error::Result;
use crate::gen::{gen_torus, gen_tree_class};
use crate::group::{check_polish_conditions, klein_instance, s3_instance};
use crate::learn::{exact_expected_error, loo_bad_count, Predictor};
use crate::oig::{optimal_orientation, shifting_avg_degree, OneInclusionGraph};
use crate::shift::{shift_once, shift_to_fixed_point};

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub claim: String,
    pub passed: bool,
    pub detail: String,
}

struct Suite {
    verdicts: Vec<Verdict>,
}

impl Suite {
    fn check(&mut self, claim: &str, passed: bool, detail: impl Into<String>) {
        self.verdicts.push(Verdict { claim: claim.into(), passed, detail: detail.into() });
    }

    /// Records a failed claim when a computation errors out instead of aborting the suite.
    fn run(&mut self, claim: &str, f: impl FnOnce(&mut Suite) -> Result<()>) {
        if let Err(e) = f(self) {
            self.check(claim, false, e.to_string());
        }
    }
}

fn realizable_samples(class: &ConceptClass, len: usize) -> Vec<Sample> {
    let mut out: Vec<Sample> = (0..len)
        .map(|_| 0..class.domain_size())
        .multi_cartesian_product()
        .flat_map(|xs| {
            class
                .words()
                .iter()
                .map(|w| xs.iter().map(|&x| LabeledExample::new(x, w[x])).collect::<Sample>())
                .collect::<Vec<_>>()
        })
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out.dedup();
    out
}

pub fn run(budget: &Budget) -> Vec<Verdict> {
    let mut s = Suite { verdicts: Vec::new() };

    s.run("hexagon", |s| {
        let hex = catalog::hexagon();
        let r = dimension_report(&hex, budget)?;
        s.check("hexagon.pseudo_cube", is_pseudo_cube(&hex), "");
        s.check("hexagon.ds=2", r.ds == 2, format!("ds = {}", r.ds));
        s.check("hexagon.natarajan=1", r.natarajan == 1, format!("natarajan = {}", r.natarajan));
        s.check("hexagon.exponential=2", r.exponential == 2, format!("exponential = {}", r.exponential));
        let (_, k) = optimal_orientation(&OneInclusionGraph::build(&hex)?);
        s.check("hexagon.max_outdeg=1", k == 1, format!("optimal max out-degree = {k}"));
        Ok(())
    });

    s.run("shift", |s| {
        let jump = catalog::dimension_jump();
        let out = shift_once(&jump, 0)?;
        let expected = ConceptClass::new(2, vec![vec![1, 1], vec![0, 0], vec![0, 1], vec![1, 0], vec![0, 2]])?;
        s.check("shift.dimension_jump.output", out == expected, format!("{:?}", out.words()));
        let (before, after) = (dimension_report(&jump, budget)?, dimension_report(&out, budget)?);
        s.check(
            "shift.dimension_jump.natarajan_1_to_2",
            before.natarajan == 1 && after.natarajan == 2,
            format!("{} -> {}", before.natarajan, after.natarajan),
        );
        s.check("shift.dimension_jump.ds_1_to_2", before.ds == 1 && after.ds == 2, format!("{} -> {}", before.ds, after.ds));
        let drop = catalog::edge_drop();
        let (g0, g1) = (OneInclusionGraph::build(&drop)?, OneInclusionGraph::build(&shift_once(&drop, 0)?)?);
        let (e0, e1) = (g0.non_singleton_size_sum(), g1.non_singleton_size_sum());
        s.check("shift.edge_drop.sizes_6_to_5", e0 == 6 && e1 == 5, format!("{e0} -> {e1}"));
        s.check("shift.edge_drop.avd_prime_monotone", shifting_avg_degree(&g1) >= shifting_avg_degree(&g0), "");
        let trace = shift_to_fixed_point(&jump, budget)?;
        s.check("shift.fixed_point.invariants", trace.check_invariants().is_ok(), format!("{} steps", trace.steps.len()));
        Ok(())
    });

    s.run("torus", |s| {
        let t = gen_torus(budget)?;
        let r = dimension_report(&t.class, budget)?;
        s.check("torus.words=54", t.class.len() == 54, format!("{}", t.class.len()));
        s.check("torus.labels=27", t.class.labels().len() == 27, format!("{}", t.class.labels().len()));
        s.check("torus.good", is_good(&t.complex).good, format!("periods {:?}", t.periods));
        let alt = count_alternating_squares(&t.complex, t.complex.coloring().unwrap());
        s.check("torus.no_alternating_square", alt == 0, format!("{alt} alternating squares"));
        s.check("torus.ds=3", r.ds == 3, format!("ds = {}", r.ds));
        s.check("torus.natarajan=1", r.natarajan == 1, format!("natarajan = {}", r.natarajan));
        Ok(())
    });

    s.run("tree", |s| {
        let tree = gen_tree_class(3, 2, budget)?;
        let r = dimension_report(&tree, budget)?;
        s.check("tree.k3_m2.words=13", tree.len() == 13, format!("{}", tree.len()));
        s.check("tree.k3_m2.ds=1", r.ds == 1, format!("ds = {}", r.ds));
        Ok(())
    });

    s.run("learn", |s| {
        let hex = catalog::hexagon();
        let point = Predictor::one_inclusion(hex.clone());
        let worst = realizable_samples(&hex, 3).iter().map(|t| loo_bad_count(&point, t)).collect::<Result<Vec<_>>>()?;
        let max = worst.iter().copied().max().unwrap_or(0);
        s.check("learn.hexagon.good_point", max <= 2, format!("max bad count over triples = {max}"));
        let list = Predictor::list(hex.clone(), 1, 2);
        let counts = realizable_samples(&hex, 4).iter().map(|t| loo_bad_count(&list, t)).collect::<Result<Vec<_>>>()?;
        let min_good = counts.iter().map(|&b| 4 - b).min().unwrap_or(0);
        s.check("learn.hexagon.list_good_indices>=2", min_good >= 2, format!("min good = {min_good}"));
        let d = crate::class::FiniteDistribution::uniform(&[LabeledExample::new(0, 1), LabeledExample::new(1, 2)])?;
        let err = exact_expected_error(&point, &d, 2, budget)?;
        s.check("learn.hexagon.expected_error<=2/3", err <= 2.0 / 3.0 + 1e-12, format!("{err:.6}"));
        Ok(())
    });

    s.run("coset", |s| {
        let (g, subs) = s3_instance(budget)?;
        let r = check_polish_conditions(&g, &subs, budget)?;
        let cc = crate::group::coset_complex(&g, &subs, budget)?;
        let hex_like = r.class.as_ref().is_some_and(|c| c.len() == 6 && is_pseudo_cube(c));
        s.check("coset.s3.hexagon", hex_like && r.vertices == 6, format!("{} vertices", r.vertices));
        s.check("coset.s3.no_empty_square", count_empty_squares(&cc.complex) == 0, "");
        s.check("coset.s3.natarajan=1", r.natarajan == Some(1), format!("natarajan = {}", r.natarajan.map_or("n/a".into(), |d| d.to_string())));
        s.check("coset.s3.conditions", r.conditions_hold() && r.good && r.pure, "");
        let (g, subs) = klein_instance(budget)?;
        let r = check_polish_conditions(&g, &subs, budget)?;
        s.check("coset.klein.empty_square", r.empty_square.is_some(), r.empty_square.map_or("none".into(), |q| format!("square {q:?}")));
        s.check("coset.klein.square_class", r.class.as_ref().is_some_and(|c| c.len() == 4), "");
        Ok(())
    });

    s.run("compress", |s| {
        let hex = catalog::hexagon();
        let scheme = Scheme::new(hex.clone(), budget)?;
        let sample: Sample = (0..20).map(|i| LabeledExample::new(i % 2, if i % 2 == 0 { 3 } else { 4 })).collect();
        let out = scheme.compress(&sample, 1, &CompressOptions::with_seed(0))?;
        let h = scheme.reconstruct(&out.kept, &out.header)?;
        s.check("compress.hexagon.sound", h.is_correct_on(&sample), "");
        s.check(
            "compress.hexagon.size",
            out.r_achieved <= out.r_bound,
            format!("r = {} <= {}", out.r_achieved, out.r_bound),
        );
        Ok(())
    });

    s.verdicts
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_claims_pass() {
        let verdicts = run(&Budget::default());
        assert!(verdicts.len() > 20);
        for v in &verdicts {
            assert!(v.passed, "{} failed: {}", v.claim, v.detail);
        }
    }
}
