//! The one-inclusion learner, its menu-restricted variant, the list learner,
//! and leave-one-out / expected-error evaluation.
//!
//! Predictions orient the one-inclusion graph of the projection onto the
//! *sorted distinct* points of `(x_1, ..., x_n, x)`. A repeated point only
//! adds coordinates on which every word agrees, whose edges are singletons,
//! so this graph has the same optimal orientations as the one over the full
//! sequence. Because the orientation depends only on the multiset of points,
//! all `n + 1` leave-one-out predictions of a sample share one orientation,
//! which is what makes the leave-one-out counts equal out-degrees.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

use itertools::Itertools;
use rand::distributions::{Distribution, WeightedIndex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::budget::Budget;
use crate::class::{ConceptClass, FiniteDistribution, Label, LabeledExample, Menu, Sample};
use crate::error::{Error, Result};
use crate::oig::{optimal_orientation, OneInclusionGraph, Orientation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PredictorKind {
    /// The plain one-inclusion algorithm.
    OneInclusion,
    /// One-inclusion restricted to patterns allowed by a menu.
    MenuOneInclusion(Menu),
    /// List learner: union of one-inclusion predictions over all size-`d`
    /// subsamples of a sample of size `d + t`.
    List { t: usize, d: usize },
}

/// The oriented projection for one set of points.
#[derive(Debug)]
struct Oriented {
    points: Vec<usize>,
    graph: OneInclusionGraph,
    sigma: Orientation,
}

#[derive(Debug)]
pub struct Predictor {
    class: ConceptClass,
    kind: PredictorKind,
    cache: Mutex<HashMap<Vec<usize>, Arc<Oriented>>>,
}

impl Clone for Predictor {
    fn clone(&self) -> Self {
        Predictor::new(self.class.clone(), self.kind.clone())
    }
}

impl Predictor {
    pub fn new(class: ConceptClass, kind: PredictorKind) -> Self {
        Predictor { class, kind, cache: Mutex::new(HashMap::new()) }
    }

    pub fn one_inclusion(class: ConceptClass) -> Self {
        Predictor::new(class, PredictorKind::OneInclusion)
    }

    pub fn with_menu(class: ConceptClass, menu: Menu) -> Self {
        Predictor::new(class, PredictorKind::MenuOneInclusion(menu))
    }

    pub fn list(class: ConceptClass, t: usize, d: usize) -> Self {
        Predictor::new(class, PredictorKind::List { t, d })
    }

    pub fn class(&self) -> &ConceptClass {
        &self.class
    }

    pub fn kind(&self) -> &PredictorKind {
        &self.kind
    }

    fn menu(&self) -> Option<&Menu> {
        match &self.kind {
            PredictorKind::MenuOneInclusion(m) => Some(m),
            _ => None,
        }
    }

    fn oriented(&self, points: Vec<usize>) -> Result<Arc<Oriented>> {
        if let Some(o) = self.cache.lock().unwrap().get(&points) {
            return Ok(Arc::clone(o));
        }
        let mut proj = self.class.project(&points)?;
        if let Some(menu) = self.menu() {
            proj = proj.filter(|w| w.iter().zip(&points).all(|(&y, &x)| menu.allows(x, y)));
            if proj.is_empty() {
                return Err(Error::Precondition(
                    "no pattern on the sample points is allowed by both the class and the menu".into(),
                ));
            }
        }
        let graph = OneInclusionGraph::build(&proj)?;
        let (sigma, _) = optimal_orientation(&graph);
        let o = Arc::new(Oriented { points: points.clone(), graph, sigma });
        self.cache.lock().unwrap().insert(points, Arc::clone(&o));
        Ok(o)
    }

    /// Point prediction of the (menu-restricted) one-inclusion algorithm.
    fn point(&self, sample: &Sample, x: usize) -> Result<Label> {
        self.class.check_index(x)?;
        sample.check_indices(self.class.domain_size())?;
        let mut known: BTreeMap<usize, Label> = BTreeMap::new();
        for e in sample.iter() {
            if let Some(&y) = known.get(&e.x) {
                if y != e.y {
                    return Err(Error::NotRealizable(format!("point {} carries labels {y} and {}", e.x, e.y)));
                }
            }
            known.insert(e.x, e.y);
        }
        if let Some(menu) = self.menu() {
            if !menu.realizes(sample) {
                return Err(Error::Precondition("sample is not realizable by the menu".into()));
            }
        }
        let mut points: BTreeSet<usize> = known.keys().copied().collect();
        points.insert(x);
        let o = self.oriented(points.into_iter().collect())?;
        let pos = o.points.binary_search(&x).unwrap();
        let matches = |w: &[Label]| o.points.iter().zip(w).all(|(p, &y)| known.get(p).is_none_or(|&k| k == y));
        let v = (0..o.graph.vertex_count())
            .find(|&v| matches(o.graph.class().word(v)))
            .ok_or_else(|| Error::NotRealizable("no hypothesis is consistent with the sample".into()))?;
        if let Some(&y) = known.get(&x) {
            // the test point repeats a training point: the edge is a singleton
            return Ok(y);
        }
        let edge = o.graph.edge_containing(v, pos);
        Ok(o.graph.class().word(o.sigma.chosen(edge))[pos])
    }

    /// The label set predicted at `x`: a singleton for point predictors, the
    /// menu entry for the list learner.
    pub fn predict_set(&self, sample: &Sample, x: usize) -> Result<BTreeSet<Label>> {
        match self.kind {
            PredictorKind::List { t, d } => {
                if sample.len() != d + t {
                    return Err(Error::Precondition(format!(
                        "list learner needs a sample of size d + t = {}, got {}",
                        d + t,
                        sample.len()
                    )));
                }
                let mut out = BTreeSet::new();
                for positions in (0..sample.len()).combinations(d) {
                    out.insert(self.point(&sample.select(&positions), x)?);
                }
                Ok(out)
            }
            _ => Ok(BTreeSet::from([self.point(sample, x)?])),
        }
    }

    pub fn predict(&self, sample: &Sample, x: usize) -> Result<Label> {
        match self.kind {
            PredictorKind::List { .. } => {
                Err(Error::Precondition("the list learner outputs menus, not labels".into()))
            }
            _ => self.point(sample, x),
        }
    }

    fn check_realizable(&self, sample: &Sample) -> Result<()> {
        if !self.class.is_realizable(sample)? {
            return Err(Error::NotRealizable("sample is not realizable by the class".into()));
        }
        if let Some(menu) = self.menu() {
            if !menu.realizes(sample) {
                return Err(Error::NotRealizable("sample is not realizable by the menu".into()));
            }
        }
        Ok(())
    }

    fn check_distribution(&self, dist: &FiniteDistribution) -> Result<()> {
        if !self.class.distribution_is_realizable(dist) {
            return Err(Error::NotRealizable("distribution is not realizable by the class".into()));
        }
        if let Some(menu) = self.menu() {
            if !dist.support().all(|e| menu.allows(e.x, e.y)) {
                return Err(Error::NotRealizable("distribution is not realizable by the menu".into()));
            }
        }
        Ok(())
    }
}

/// Algorithm output `h_S(x)` of the one-inclusion learner.
pub fn oig_predict(class: &ConceptClass, sample: &Sample, x: usize) -> Result<Label> {
    Predictor::one_inclusion(class.clone()).predict(sample, x)
}

/// One-inclusion prediction restricted to patterns realizable by `menu`.
pub fn menu_oig_predict(class: &ConceptClass, menu: &Menu, sample: &Sample, x: usize) -> Result<Label> {
    Predictor::with_menu(class.clone(), menu.clone()).predict(sample, x)
}

/// Menu output by the list learner on a sample of size exactly `d + t`,
/// evaluated on every domain point. The menu size is `C(d + t, t)`.
pub fn list_learn(class: &ConceptClass, t: usize, sample: &Sample, d: usize) -> Result<Menu> {
    let learner = Predictor::list(class.clone(), t, d);
    if !class.is_realizable(sample)? {
        return Err(Error::NotRealizable("sample is not realizable by the class".into()));
    }
    let mut menu = Menu::new(binomial(d + t, t) as usize);
    for x in 0..class.domain_size() {
        menu.set(x, learner.predict_set(sample, x)?)?;
    }
    Ok(menu)
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Number of positions `i` with `y'_i` not predicted from `S'` minus position `i`.
pub fn loo_bad_count(predictor: &Predictor, s_prime: &Sample) -> Result<usize> {
    predictor.check_realizable(s_prime)?;
    let mut bad = 0;
    for i in 0..s_prime.len() {
        let e = s_prime.get(i);
        if !predictor.predict_set(&s_prime.without(i), e.x)?.contains(&e.y) {
            bad += 1;
        }
    }
    Ok(bad)
}

/// `Pr[y not predicted]` for `S ~ D^n` and an independent test example,
/// by enumerating all `|support|^(n+1)` outcomes.
pub fn exact_expected_error(
    predictor: &Predictor,
    dist: &FiniteDistribution,
    n: usize,
    budget: &Budget,
) -> Result<f64> {
    predictor.check_distribution(dist)?;
    let atoms: Vec<(LabeledExample, f64)> = dist.positive_atoms().collect();
    let outcomes = (atoms.len() as u64)
        .checked_pow(n as u32 + 1)
        .ok_or(Error::BudgetExceeded { limit: budget.limit() })?;
    budget.charge(outcomes)?;
    let mut error = 0.0;
    for tuple in (0..=n).map(|_| 0..atoms.len()).multi_cartesian_product() {
        let prob: f64 = tuple.iter().map(|&a| atoms[a].1).product();
        let sample: Sample = tuple[..n].iter().map(|&a| atoms[a].0).collect();
        let test = atoms[tuple[n]].0;
        if !predictor.predict_set(&sample, test.x)?.contains(&test.y) {
            error += prob;
        }
    }
    if n == 0 {
        // multi_cartesian_product yields nothing for zero factors; n + 1 >= 1 here
        debug_assert!(outcomes > 0);
    }
    Ok(error)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct McEstimate {
    pub mean: f64,
    pub std_err: f64,
    pub trials: usize,
}

/// Seeded Monte-Carlo estimate of the expected error. Trial `k` draws from
/// ChaCha stream `k`, so the result does not depend on the thread count.
pub fn mc_error(
    predictor: &Predictor,
    dist: &FiniteDistribution,
    n: usize,
    trials: usize,
    seed: u64,
) -> Result<McEstimate> {
    predictor.check_distribution(dist)?;
    if trials == 0 {
        return Err(Error::Precondition("at least one trial is needed".into()));
    }
    let atoms: Vec<(LabeledExample, f64)> = dist.positive_atoms().collect();
    let sampler = WeightedIndex::new(atoms.iter().map(|a| a.1))
        .map_err(|e| Error::Precondition(format!("bad distribution: {e}")))?;
    let errors: Vec<bool> = (0..trials)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k as u64);
            let sample: Sample = (0..n).map(|_| atoms[sampler.sample(&mut rng)].0).collect();
            let test = atoms[sampler.sample(&mut rng)].0;
            Ok(!predictor.predict_set(&sample, test.x)?.contains(&test.y))
        })
        .collect::<Result<_>>()?;
    let hits = errors.iter().filter(|&&e| e).count() as f64;
    let t = trials as f64;
    let mean = hits / t;
    let std_err = (mean * (1.0 - mean) / t).sqrt();
    Ok(McEstimate { mean, std_err, trials })
}
