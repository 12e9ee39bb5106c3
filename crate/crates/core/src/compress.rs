//! Two-stage sample compression: a list stage that keeps blocks whose list
//! predictions cover the sample, then a menu stage that keeps blocks whose
//! menu-restricted one-inclusion hypotheses vote correctly on every example.
//!
//! The kept sequence plus a [`Header`] determines the reconstructed hypothesis;
//! [`Scheme::reconstruct`] never looks at the original sample.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use rand::distributions::{Distribution, WeightedIndex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::budget::Budget;
use crate::class::{ConceptClass, Label, LabeledExample, Menu, Sample};
use crate::dims::{ds_dimension, natarajan_dimension};
use crate::error::{Error, Result};
use crate::game::{max_row_loss, solve_lp, Mwu};
use crate::learn::{binomial, Predictor};

/// Number of list-stage blocks, `floor((d + t + 1) / (t + 1) * log2(2n))`.
pub fn list_rounds(n: usize, d: usize, t: usize) -> usize {
    ((d + t + 1) as f64 / (t + 1) as f64 * log2n(n)).floor() as usize
}

/// Number of menu-stage blocks, `floor(8 log2(2n))`.
pub fn menu_rounds(n: usize) -> usize {
    (8.0 * log2n(n)).floor() as usize
}

/// Menu-stage block length, `ceil(100 d_N log2 p)`.
pub fn menu_block_size(natarajan: usize, p: usize) -> usize {
    (100.0 * natarajan as f64 * (p.max(1) as f64).log2()).ceil() as usize
}

fn log2n(n: usize) -> f64 {
    (2.0 * n as f64).log2()
}

/// `(d + t + 1) / (t + 1) * (d + t) * log2(2n)`.
pub fn r1_bound(n: usize, d: usize, t: usize) -> f64 {
    (d + t + 1) as f64 / (t + 1) as f64 * (d + t) as f64 * log2n(n)
}

/// Menu size guaranteed by the list stage, `C(d + t + 1, t + 1) * log2(2n)`.
pub fn p_bound(n: usize, d: usize, t: usize) -> f64 {
    binomial(d + t + 1, t + 1) as f64 * log2n(n)
}

/// `1000 d_N log2(p) log2(2n)`.
pub fn r2_bound(n: usize, natarajan: usize, p: f64) -> f64 {
    1000.0 * natarajan as f64 * p.log2() * log2n(n)
}

/// Total size bound of the composed scheme, rounded down.
pub fn r_bound(n: usize, d: usize, natarajan: usize, t: usize) -> usize {
    let inner = (d + t + 1) as f64 / (t + 1) as f64 * (d + t) as f64
        + 1000.0 * natarajan as f64 * p_bound(n, d, t).log2();
    (inner * log2n(n)).floor() as usize
}

#[derive(Clone, Debug)]
pub struct CompressOptions {
    pub seed: u64,
    /// Enumerate candidate blocks when there are at most this many.
    pub exhaustive_limit: u64,
    /// Sampled candidates per round otherwise.
    pub pool_size: usize,
    pub mwu_rounds: usize,
    /// Slack allowed above 1/4 when certifying the game value.
    pub tolerance: f64,
    pub max_retries: usize,
}

impl Default for CompressOptions {
    fn default() -> Self {
        CompressOptions {
            seed: 0,
            exhaustive_limit: 100_000,
            pool_size: 256,
            mwu_rounds: 2000,
            tolerance: 0.01,
            max_retries: 100,
        }
    }
}

impl CompressOptions {
    pub fn with_seed(seed: u64) -> Self {
        CompressOptions { seed, ..Self::default() }
    }

    fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }
}

/// Parameters that travel with a kept sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Header {
    pub n: usize,
    pub t: usize,
    pub ds: usize,
    pub natarajan: usize,
    pub list_rounds: usize,
    pub list_block: usize,
    pub menu_rounds: usize,
    pub menu_block: usize,
}

impl Header {
    pub fn r1(&self) -> usize {
        self.list_rounds * self.list_block
    }

    pub fn r2(&self) -> usize {
        self.menu_rounds * self.menu_block
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Stage {
    List,
    Menu,
    Combined,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ListCompression {
    pub kept: Vec<LabeledExample>,
    pub kept_indices: Vec<usize>,
    pub rounds: usize,
    pub block: usize,
    /// Uncovered examples of the sample after each round.
    pub uncovered: Vec<usize>,
    #[serde(skip)]
    pub menu: Menu,
    pub max_list_size: usize,
    pub r1: usize,
    pub r1_bound: f64,
    pub p_bound: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SolverMethod {
    Mwu,
    Lp,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MixtureComponent {
    /// Distinct examples of the block.
    pub examples: Vec<LabeledExample>,
    pub weight: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GameSolution {
    pub block_size: usize,
    pub mixture: Vec<MixtureComponent>,
    /// Exact worst-example error of the mixture.
    pub value_bound: f64,
    pub method: SolverMethod,
    /// Exact game value, when the game is small enough to solve by LP.
    pub lp_value: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MenuCompression {
    pub kept: Vec<LabeledExample>,
    pub kept_indices: Vec<usize>,
    pub rounds: usize,
    pub block: usize,
    pub attempts: usize,
    pub game: GameSolution,
    pub r2: usize,
    pub r2_bound: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CompressionResult {
    pub kept: Vec<LabeledExample>,
    pub kept_indices: Vec<usize>,
    pub stage: Stage,
    pub header: Header,
    pub max_list_size: usize,
    pub attempts: usize,
    pub game_value: f64,
    pub r_achieved: usize,
    pub r_bound: usize,
    pub verified: bool,
}

/// A reconstructed hypothesis, tabulated on the whole domain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hypothesis {
    pub labels: Vec<Label>,
}

impl Hypothesis {
    pub fn predict(&self, x: usize) -> Label {
        self.labels[x]
    }

    pub fn is_correct_on(&self, sample: &Sample) -> bool {
        sample.iter().all(|e| self.labels.get(e.x) == Some(&e.y))
    }
}

/// Distinct examples of a sample with multiplicities and first positions.
struct Distinct {
    examples: Vec<LabeledExample>,
    count: Vec<usize>,
    first: Vec<usize>,
}

impl Distinct {
    fn of(sample: &Sample) -> Self {
        let mut map: BTreeMap<LabeledExample, (usize, usize)> = BTreeMap::new();
        for (i, e) in sample.iter().enumerate() {
            map.entry(*e).or_insert((0, i)).0 += 1;
        }
        let mut d = Distinct { examples: Vec::new(), count: Vec::new(), first: Vec::new() };
        for (e, (c, f)) in map {
            d.examples.push(e);
            d.count.push(c);
            d.first.push(f);
        }
        d
    }

    fn len(&self) -> usize {
        self.examples.len()
    }
}

/// A compression scheme for one class; the dimensions are computed once.
#[derive(Debug)]
pub struct Scheme {
    class: ConceptClass,
    ds: usize,
    natarajan: usize,
}

impl Scheme {
    pub fn new(class: ConceptClass, budget: &Budget) -> Result<Self> {
        let ds = ds_dimension(&class, budget)?.value;
        let natarajan = natarajan_dimension(&class, budget)?.points.len();
        Ok(Scheme { class, ds, natarajan })
    }

    pub fn class(&self) -> &ConceptClass {
        &self.class
    }

    pub fn ds(&self) -> usize {
        self.ds
    }

    pub fn natarajan(&self) -> usize {
        self.natarajan
    }

    fn check_sample(&self, sample: &Sample, t: usize) -> Result<()> {
        if sample.is_empty() {
            return Err(Error::Precondition("cannot compress an empty sample".into()));
        }
        if t == 0 {
            return Err(Error::Precondition("t must be positive".into()));
        }
        if !self.class.is_realizable(sample)? {
            return Err(Error::NotRealizable("sample is not realizable by the class".into()));
        }
        Ok(())
    }

    pub fn list_compress(&self, sample: &Sample, t: usize, opts: &CompressOptions) -> Result<ListCompression> {
        self.check_sample(sample, t)?;
        let n = sample.len();
        let d = self.ds;
        let block = d + t;
        let rounds = list_rounds(n, d, t);
        let learner = Predictor::list(self.class.clone(), t, d);
        let distinct = Distinct::of(sample);
        let mut uncovered: BTreeSet<usize> = (0..distinct.len()).collect();
        let mut rng = opts.rng(1);
        let mut chosen: Vec<Vec<usize>> = Vec::new();
        let mut history = Vec::new();

        for round in 0..rounds {
            if uncovered.is_empty() {
                chosen.push(chosen[0].clone());
                history.push(0);
                continue;
            }
            let pool: Vec<usize> = uncovered.iter().copied().collect();
            let remaining: usize = pool.iter().map(|&i| distinct.count[i]).sum();
            let total = binomial(pool.len() + block - 1, block);
            let exhaustive = total <= opts.exhaustive_limit as u128;
            let candidates: Vec<Vec<usize>> = if exhaustive {
                pool.iter().copied().combinations_with_replacement(block).collect()
            } else {
                let weights = WeightedIndex::new(pool.iter().map(|&i| distinct.count[i])).unwrap();
                (0..opts.pool_size)
                    .map(|_| (0..block).map(|_| pool[weights.sample(&mut rng)]).sorted().collect())
                    .collect()
            };
            let coverage = |cand: &Vec<usize>| -> Result<Vec<usize>> {
                let s: Sample = cand.iter().map(|&i| distinct.examples[i]).collect();
                let mut covered = Vec::new();
                for &r in &pool {
                    let e = distinct.examples[r];
                    if learner.predict_set(&s, e.x)?.contains(&e.y) {
                        covered.push(r);
                    }
                }
                Ok(covered)
            };
            let scored: Vec<(usize, Vec<usize>)> = candidates
                .par_iter()
                .map(|c| {
                    let cov = coverage(c)?;
                    Ok((cov.iter().map(|&r| distinct.count[r]).sum(), cov))
                })
                .collect::<Result<_>>()?;
            let (best, (mass, covered)) = scored
                .into_iter()
                .enumerate()
                .max_by(|(i, a), (j, b)| a.0.cmp(&b.0).then(j.cmp(i)))
                .unwrap();
            // alpha = (t + 1) / (d + t + 1) of the remaining examples must be covered
            if mass * (d + t + 1) < remaining * (t + 1) {
                return Err(Error::Verification(format!(
                    "list round {round}: best of {} {} candidates covers {mass} of {remaining} examples",
                    candidates.len(),
                    if exhaustive { "enumerated" } else { "sampled" },
                )));
            }
            for r in covered {
                uncovered.remove(&r);
            }
            chosen.push(candidates[best].clone());
            history.push(uncovered.iter().map(|&i| distinct.count[i]).sum());
        }
        if !uncovered.is_empty() {
            return Err(Error::Verification(format!(
                "{} distinct examples uncovered after {rounds} list rounds",
                uncovered.len()
            )));
        }
        let kept_indices: Vec<usize> = chosen.iter().flatten().map(|&i| distinct.first[i]).collect();
        let kept: Vec<LabeledExample> = kept_indices.iter().map(|&i| sample.get(i)).collect();
        let menu = self.list_reconstruct(&kept, t, rounds)?;
        if !menu.realizes(sample) {
            return Err(Error::Verification("list menu does not cover the sample".into()));
        }
        Ok(ListCompression {
            r1: kept.len(),
            max_list_size: menu.max_list_size(),
            kept,
            kept_indices,
            rounds,
            block,
            uncovered: history,
            menu,
            r1_bound: r1_bound(n, d, t),
            p_bound: p_bound(n, d, t),
        })
    }

    /// Union of the list-learner menus of the consecutive blocks of `kept`.
    pub fn list_reconstruct(&self, kept: &[LabeledExample], t: usize, rounds: usize) -> Result<Menu> {
        let block = self.ds + t;
        if kept.len() != block * rounds {
            return Err(Error::Verification(format!(
                "list part has {} examples, expected {rounds} blocks of {block}",
                kept.len()
            )));
        }
        let learner = Predictor::list(self.class.clone(), t, self.ds);
        let mut union: BTreeMap<usize, BTreeSet<Label>> = BTreeMap::new();
        for chunk in kept.chunks(block.max(1)).take(rounds) {
            let s = Sample::new(chunk.to_vec());
            for x in 0..self.class.domain_size() {
                union.entry(x).or_default().extend(learner.predict_set(&s, x)?);
            }
        }
        let p = union.values().map(BTreeSet::len).max().unwrap_or(0).max(1);
        let mut menu = Menu::new(p);
        for (x, labels) in union {
            menu.set(x, labels)?;
        }
        Ok(menu)
    }

    /// Loss matrix of the menu game over explicit columns.
    fn loss_rows(
        &self,
        learner: &Predictor,
        distinct: &Distinct,
        columns: &[Vec<usize>],
    ) -> Result<Vec<Vec<f64>>> {
        let per_column: Vec<Vec<f64>> = columns
            .par_iter()
            .map(|c| self.column_losses(learner, distinct, c))
            .collect::<Result<_>>()?;
        Ok((0..distinct.len()).map(|r| per_column.iter().map(|c| c[r]).collect()).collect())
    }

    fn column_losses(&self, learner: &Predictor, distinct: &Distinct, column: &[usize]) -> Result<Vec<f64>> {
        let s: Sample = column.iter().map(|&i| distinct.examples[i]).collect();
        distinct
            .examples
            .iter()
            .map(|e| Ok(if learner.predict(&s, e.x)? == e.y { 0.0 } else { 1.0 }))
            .collect()
    }

    /// Finds a mixture over blocks of size `m` whose error on every example
    /// of the sample is at most `1/4 + tolerance`.
    pub fn solve_menu_game(
        &self,
        menu: &Menu,
        sample: &Sample,
        m: usize,
        opts: &CompressOptions,
    ) -> Result<GameSolution> {
        let learner = Predictor::with_menu(self.class.clone(), menu.clone());
        let distinct = Distinct::of(sample);
        let u = distinct.len();
        if u == 0 {
            return Err(Error::Precondition("the game needs a non-empty sample".into()));
        }
        let target = 0.25 + opts.tolerance;
        let max_size = m.min(u);
        let column_count: u128 = if m == 0 { 1 } else { (1..=max_size).map(|k| binomial(u, k)).sum() };
        let enumerable = column_count <= opts.exhaustive_limit as u128;
        let all_columns: Vec<Vec<usize>> = if !enumerable {
            Vec::new()
        } else if m == 0 {
            vec![Vec::new()]
        } else {
            (1..=max_size).flat_map(|k| (0..u).combinations(k)).collect()
        };
        let full_matrix = if enumerable { Some(self.loss_rows(&learner, &distinct, &all_columns)?) } else { None };

        let mut mwu = Mwu::tuned(u, opts.mwu_rounds);
        let mut rng = opts.rng(2);
        let mut picks: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        let mut cumulative = vec![0.0; u];
        let mut rounds_done = 0;
        for _ in 0..opts.mwu_rounds.max(1) {
            let q = mwu.distribution();
            let weighted = |losses: &[f64]| losses.iter().zip(&q).map(|(l, w)| l * w).sum::<f64>();
            let (column, losses) = match &full_matrix {
                Some(matrix) => {
                    let column_loss = |j: usize| matrix.iter().zip(&q).map(|(r, w)| r[j] * w).sum::<f64>();
                    let best = (0..all_columns.len())
                        .min_by(|&a, &b| column_loss(a).total_cmp(&column_loss(b)))
                        .unwrap();
                    (all_columns[best].clone(), matrix.iter().map(|r| r[best]).collect::<Vec<_>>())
                }
                None => {
                    let sampler = WeightedIndex::new(&q).unwrap();
                    let pool: Vec<Vec<usize>> = (0..opts.pool_size)
                        .map(|_| (0..m).map(|_| sampler.sample(&mut rng)).sorted().dedup().collect())
                        .collect();
                    let scored: Vec<(Vec<f64>, f64)> = pool
                        .par_iter()
                        .map(|c| {
                            let l = self.column_losses(&learner, &distinct, c)?;
                            let w = weighted(&l);
                            Ok((l, w))
                        })
                        .collect::<Result<_>>()?;
                    let best = (0..pool.len()).min_by(|&a, &b| scored[a].1.total_cmp(&scored[b].1)).unwrap();
                    (pool[best].clone(), scored[best].0.clone())
                }
            };
            *picks.entry(column).or_default() += 1;
            cumulative.iter_mut().zip(&losses).for_each(|(c, l)| *c += l);
            rounds_done += 1;
            let worst = cumulative.iter().cloned().fold(0.0, f64::max) / rounds_done as f64;
            if worst <= target {
                break;
            }
            mwu.update(&losses);
        }

        let lp = match &full_matrix {
            Some(matrix) if u <= 12 => Some(solve_lp(matrix)?),
            _ => None,
        };
        let total = rounds_done as f64;
        let mut columns: Vec<Vec<usize>> = picks.keys().cloned().collect();
        let mut weights: Vec<f64> = picks.values().map(|&c| c as f64 / total).collect();
        let mut value = cumulative.iter().cloned().fold(0.0, f64::max) / total;
        let mut method = SolverMethod::Mwu;
        if value > target {
            if let Some(lp) = &lp {
                columns.clear();
                weights.clear();
                for (c, &w) in all_columns.iter().zip(&lp.mixture) {
                    if w > 1e-12 {
                        columns.push(c.clone());
                        weights.push(w);
                    }
                }
                let s: f64 = weights.iter().sum();
                weights.iter_mut().for_each(|w| *w /= s);
                method = SolverMethod::Lp;
            }
            // certify from scratch whatever mixture we ended with
            let matrix = self.loss_rows(&learner, &distinct, &columns)?;
            value = max_row_loss(&matrix, &weights);
        }
        if value > target {
            return Err(Error::Verification(format!(
                "menu game value {value:.4} exceeds 1/4 + {} with blocks of size {m}",
                opts.tolerance
            )));
        }
        Ok(GameSolution {
            block_size: m,
            mixture: columns
                .into_iter()
                .zip(weights)
                .map(|(c, weight)| MixtureComponent {
                    examples: c.iter().map(|&i| distinct.examples[i]).collect(),
                    weight,
                })
                .collect(),
            value_bound: value,
            method,
            lp_value: lp.map(|s| s.value),
        })
    }

    pub fn menu_compress(&self, menu: &Menu, sample: &Sample, opts: &CompressOptions) -> Result<MenuCompression> {
        if sample.is_empty() {
            return Err(Error::Precondition("cannot compress an empty sample".into()));
        }
        if !self.class.is_realizable(sample)? || !menu.realizes(sample) {
            return Err(Error::NotRealizable("sample must be realizable by the class and the menu".into()));
        }
        let n = sample.len();
        let p = menu.max_list_size().max(1);
        let m = menu_block_size(self.natarajan, p);
        let rounds = menu_rounds(n);
        let game = self.solve_menu_game(menu, sample, m, opts)?;
        let position: BTreeMap<LabeledExample, usize> =
            sample.iter().enumerate().rev().map(|(i, e)| (*e, i)).collect();
        let sampler = WeightedIndex::new(game.mixture.iter().map(|c| c.weight))
            .map_err(|e| Error::Verification(format!("bad game mixture: {e}")))?;
        for attempt in 0..opts.max_retries.max(1) {
            let mut rng = opts.rng(3 + attempt as u64);
            let mut kept_indices = Vec::with_capacity(m * rounds);
            for _ in 0..rounds {
                let members = &game.mixture[sampler.sample(&mut rng)].examples;
                kept_indices.extend((0..m).map(|k| position[&members[k % members.len()]]));
            }
            let kept: Vec<LabeledExample> = kept_indices.iter().map(|&i| sample.get(i)).collect();
            let h = self.menu_reconstruct(menu, &kept, rounds, m)?;
            if h.is_correct_on(sample) {
                return Ok(MenuCompression {
                    r2: kept.len(),
                    kept,
                    kept_indices,
                    rounds,
                    block: m,
                    attempts: attempt + 1,
                    game,
                    r2_bound: r2_bound(n, self.natarajan, p as f64),
                });
            }
        }
        Err(Error::BudgetExceeded { limit: opts.max_retries as u64 })
    }

    /// Plurality vote of the menu-restricted one-inclusion hypotheses of the
    /// consecutive blocks of `kept`. A block abstains at points where no
    /// pattern allowed by the menu extends it; ties and all-abstain points
    /// go to the smallest candidate label.
    pub fn menu_reconstruct(&self, menu: &Menu, kept: &[LabeledExample], rounds: usize, m: usize) -> Result<Hypothesis> {
        if kept.len() != rounds * m {
            return Err(Error::Verification(format!(
                "menu part has {} examples, expected {rounds} blocks of {m}",
                kept.len()
            )));
        }
        let learner = Predictor::with_menu(self.class.clone(), menu.clone());
        let blocks: Vec<Sample> = if m == 0 {
            vec![Sample::default(); rounds]
        } else {
            kept.chunks(m).map(|c| Sample::new(c.to_vec())).collect()
        };
        for b in &blocks {
            if !self.class.is_realizable(b)? || !menu.realizes(b) {
                return Err(Error::NotRealizable("a kept block is not realizable by the class and menu".into()));
            }
        }
        let labels = (0..self.class.domain_size())
            .into_par_iter()
            .map(|x| {
                let mut votes: BTreeMap<Label, usize> = BTreeMap::new();
                for b in &blocks {
                    match learner.predict(b, x) {
                        Ok(y) => *votes.entry(y).or_default() += 1,
                        Err(Error::NotRealizable(_) | Error::Precondition(_)) => {}
                        Err(e) => return Err(e),
                    }
                }
                let fallback = || menu.get(x).and_then(|s| s.first().copied()).unwrap_or(0);
                Ok(votes
                    .iter()
                    .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0)))
                    .map_or_else(fallback, |(&y, _)| y))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Hypothesis { labels })
    }

    pub fn header(&self, n: usize, t: usize, p: usize) -> Header {
        Header {
            n,
            t,
            ds: self.ds,
            natarajan: self.natarajan,
            list_rounds: list_rounds(n, self.ds, t),
            list_block: self.ds + t,
            menu_rounds: menu_rounds(n),
            menu_block: menu_block_size(self.natarajan, p),
        }
    }

    /// Runs both stages and verifies the reconstruction on the whole sample.
    pub fn compress(&self, sample: &Sample, t: usize, opts: &CompressOptions) -> Result<CompressionResult> {
        let list = self.list_compress(sample, t, opts)?;
        let menu = self.menu_compress(&list.menu, sample, opts)?;
        let header = self.header(sample.len(), t, list.max_list_size);
        let mut kept = list.kept;
        kept.extend(&menu.kept);
        let mut kept_indices = list.kept_indices;
        kept_indices.extend(&menu.kept_indices);
        let h = self.reconstruct(&kept, &header)?;
        let verified = h.is_correct_on(sample);
        let bound = r_bound(sample.len(), self.ds, self.natarajan, t);
        if !verified {
            return Err(Error::Verification("reconstruction is wrong on the sample".into()));
        }
        if kept.len() > bound {
            return Err(Error::Verification(format!("kept {} examples, bound is {bound}", kept.len())));
        }
        Ok(CompressionResult {
            r_achieved: kept.len(),
            kept,
            kept_indices,
            stage: Stage::Combined,
            header,
            max_list_size: list.max_list_size,
            attempts: menu.attempts,
            game_value: menu.game.value_bound,
            r_bound: bound,
            verified,
        })
    }

    /// Rebuilds the hypothesis from a kept sequence and its header alone.
    pub fn reconstruct(&self, kept: &[LabeledExample], header: &Header) -> Result<Hypothesis> {
        let n = header.n;
        if header.ds != self.ds || header.natarajan != self.natarajan {
            return Err(Error::Verification("header dimensions do not match the class".into()));
        }
        if n == 0
            || header.t == 0
            || header.list_block != self.ds + header.t
            || header.list_rounds != list_rounds(n, self.ds, header.t)
            || header.menu_rounds != menu_rounds(n)
        {
            return Err(Error::Verification("header is inconsistent with n and t".into()));
        }
        if kept.len() != header.r1() + header.r2() {
            return Err(Error::Verification(format!(
                "kept has {} examples, header expects {}",
                kept.len(),
                header.r1() + header.r2()
            )));
        }
        for e in kept {
            self.class.check_index(e.x)?;
        }
        let (first, second) = kept.split_at(header.r1());
        let menu = self.list_reconstruct(first, header.t, header.list_rounds)?;
        if header.menu_block != menu_block_size(self.natarajan, menu.max_list_size()) {
            return Err(Error::Verification("menu block size does not match the reconstructed menu".into()));
        }
        self.menu_reconstruct(&menu, second, header.menu_rounds, header.menu_block)
    }
}

/// One-shot compression; builds a [`Scheme`] for `class`.
pub fn compress_end_to_end(
    class: &ConceptClass,
    sample: &Sample,
    t: usize,
    opts: &CompressOptions,
    budget: &Budget,
) -> Result<CompressionResult> {
    Scheme::new(class.clone(), budget)?.compress(sample, t, opts)
}

pub fn reconstruct(class: &ConceptClass, kept: &[LabeledExample], header: &Header, budget: &Budget) -> Result<Hypothesis> {
    Scheme::new(class.clone(), budget)?.reconstruct(kept, header)
}
