//! Acceptance criteria 1 to 11, one verdict line each. Runs without the
//! libtest harness so the verdicts always reach the output.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use mclab::catalog;
use mclab::complex::{
    are_isomorphic, count_alternating_squares, count_empty_squares, complex_to_pseudocube, is_good,
    pseudocube_to_complex,
};
use mclab::compress::{CompressOptions, Scheme};
use mclab::dims::{dimension_report, ds_dimension, exponential_dimension, is_pseudo_cube, natarajan_dimension};
use mclab::gen::{gen_torus, random_class, random_pseudo_cube};
use mclab::group::{check_polish_conditions, coset_complex, klein_instance, s3_instance};
use mclab::learn::{loo_bad_count, Predictor};
use mclab::oig::{avg_degree, optimal_orientation, shifting_avg_degree, OneInclusionGraph};
use mclab::shift::{is_downward_closed, shift_once, shift_to_fixed_point};
use mclab::{Budget, ConceptClass, LabeledExample, Menu, Sample};

type Outcome = Result<String, String>;
type Criterion = (&'static str, u64, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ok<T>(r: mclab::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

/// Minimum over every orientation of the maximum out-degree, by branch and bound.
fn brute_force_outdeg(g: &OneInclusionGraph) -> usize {
    let edges: Vec<&[usize]> =
        g.edges().iter().filter(|e| !e.is_singleton()).map(|e| e.members.as_slice()).collect();
    fn go(edges: &[&[usize]], k: usize, out: &mut [usize], best: &mut usize) {
        let current = out.iter().copied().max().unwrap_or(0);
        if current >= *best {
            return;
        }
        let Some(e) = edges.get(k) else {
            *best = current;
            return;
        };
        for &head in e.iter() {
            for &v in e.iter().filter(|&&v| v != head) {
                out[v] += 1;
            }
            go(edges, k + 1, out, best);
            for &v in e.iter().filter(|&&v| v != head) {
                out[v] -= 1;
            }
        }
    }
    let mut best = usize::MAX;
    go(&edges, 0, &mut vec![0; g.vertex_count()], &mut best);
    best
}

fn realizable_samples(class: &ConceptClass, len: usize) -> Vec<Sample> {
    let mut out: Vec<Sample> = (0..len)
        .map(|_| 0..class.domain_size())
        .multi_cartesian_product()
        .flat_map(|xs| {
            class.words().iter().map(move |w| xs.iter().map(|&x| LabeledExample::new(x, w[x])).collect::<Sample>())
        })
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out.dedup();
    out
}

fn random_sample(rng: &mut ChaCha8Rng, class: &ConceptClass, len: usize) -> Sample {
    let w = class.words().choose(rng).expect("non-empty class");
    (0..len)
        .map(|_| {
            let x = rng.gen_range(0..class.domain_size());
            LabeledExample::new(x, w[x])
        })
        .collect()
}

fn shifting_corpus() -> Vec<ConceptClass> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    (0..500)
        .map(|_| {
            let n = rng.gen_range(1..=4);
            let p = rng.gen_range(1..=5);
            random_class(&mut rng, n, p, 40)
        })
        .collect()
}

fn hexagon_dimensions() -> Outcome {
    let b = Budget::default();
    let hex = catalog::hexagon();
    let r = ok(dimension_report(&hex, &b))?;
    ensure(is_pseudo_cube(&hex), || "hexagon is not a pseudo-cube".into())?;
    ensure((r.ds, r.natarajan, r.exponential) == (2, 1, 2), || format!("{r:?}"))?;
    Ok(format!("ds {} natarajan {} exponential {}", r.ds, r.natarajan, r.exponential))
}

fn torus() -> Outcome {
    let b = Budget::default();
    let t = ok(gen_torus(&b))?;
    let good = is_good(&t.complex);
    let coloring = t.complex.coloring().ok_or("torus is uncolored")?;
    let alternating = count_alternating_squares(&t.complex, coloring);
    let ds = ok(ds_dimension(&t.class, &b))?.value;
    let nat = ok(natarajan_dimension(&t.class, &b))?.points.len();
    let labels = t.class.labels().len();
    let summary = format!(
        "{labels} labels, {} words, good {}, {alternating} alternating squares, ds {ds}, natarajan {nat}",
        t.class.len(),
        good.good
    );
    ensure(labels == 27 && t.class.len() == 54 && good.good && alternating == 0 && ds == 3 && nat == 1, || {
        summary.clone()
    })?;
    Ok(summary)
}

fn shifting_examples() -> Outcome {
    let b = Budget::default();
    let jump = catalog::dimension_jump();
    let out = ok(shift_once(&jump, 0))?;
    let expected = ok(ConceptClass::new(2, vec![vec![1, 1], vec![0, 0], vec![0, 1], vec![1, 0], vec![0, 2]]))?;
    ensure(out == expected, || format!("shift output {:?}", out.words()))?;
    let (before, after) = (ok(dimension_report(&jump, &b))?, ok(dimension_report(&out, &b))?);
    ensure((before.natarajan, before.ds, after.natarajan, after.ds) == (1, 1, 2, 2), || {
        format!("natarajan {} -> {}, ds {} -> {}", before.natarajan, after.natarajan, before.ds, after.ds)
    })?;
    let drop = catalog::edge_drop();
    let g0 = ok(OneInclusionGraph::build(&drop))?;
    let g1 = ok(OneInclusionGraph::build(&ok(shift_once(&drop, 0))?))?;
    let (e0, e1) = (g0.non_singleton_size_sum(), g1.non_singleton_size_sum());
    ensure(e0 == 6 && e1 == 5, || format!("edge sizes {e0} -> {e1}"))?;
    ensure(shifting_avg_degree(&g1) >= shifting_avg_degree(&g0), || "avd' decreased".into())?;
    Ok(format!("natarajan/ds 1 -> 2, edge sizes {e0} -> {e1}"))
}

fn orientation_duality() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut oracle_checked = 0;
    for i in 0..200 {
        let d = rng.gen_range(1..=4);
        let class = random_pseudo_cube(&mut rng, d, 60);
        let g = ok(OneInclusionGraph::build(&class))?;
        let (_, k) = optimal_orientation(&g);
        ensure(d.div_ceil(2) <= k && k <= d, || format!("instance {i}: d {d}, value {k}"))?;
        if g.edges().iter().filter(|e| !e.is_singleton()).count() <= 12 {
            let brute = brute_force_outdeg(&g);
            ensure(brute == k, || format!("instance {i}: flow {k}, brute force {brute}"))?;
            oracle_checked += 1;
        }
    }
    Ok(format!("200 pseudo-cubes in [ceil(d/2), d], {oracle_checked} matched the brute-force oracle"))
}

fn shifting_invariants() -> Outcome {
    let b = Budget::default();
    let mut steps = 0;
    for (i, class) in shifting_corpus().iter().enumerate() {
        let trace = ok(shift_to_fixed_point(class, &b))?;
        ok(trace.check_invariants()).map_err(|e| format!("class {i}: {e}"))?;
        let subsets: Vec<Vec<usize>> =
            (1..=class.domain_size()).flat_map(|k| (0..class.domain_size()).combinations(k)).collect();
        let mut current = trace.initial.clone();
        for s in &trace.steps {
            let next = ok(shift_once(&current, s.direction))?;
            ensure(next.len() == current.len(), || format!("class {i}: size changed"))?;
            for sub in &subsets {
                ensure(next.projection_size(sub) <= current.projection_size(sub), || {
                    format!("class {i}: projection onto {sub:?} grew")
                })?;
            }
            current = next;
            steps += 1;
        }
        ensure(current == trace.final_class, || format!("class {i}: replay differs from trace"))?;
        ensure(is_downward_closed(&current), || format!("class {i}: fixed point not downward closed"))?;
    }
    Ok(format!("500 classes, {steps} steps, zero violations"))
}

fn hexagon_counting() -> Outcome {
    let hex = catalog::hexagon();
    let list = Predictor::list(hex.clone(), 1, 2);
    let fours = realizable_samples(&hex, 4);
    for s in &fours {
        let good = 4 - ok(loo_bad_count(&list, s))?;
        ensure(good >= 2, || format!("{:?}: {good} list-covered indices", s.0))?;
    }
    let point = Predictor::one_inclusion(hex.clone());
    let threes = realizable_samples(&hex, 3);
    for s in &threes {
        let good = 3 - ok(loo_bad_count(&point, s))?;
        ensure(good >= 1, || format!("{:?}: no point-correct index", s.0))?;
    }
    Ok(format!("{} samples of size 4 and {} of size 3, zero exceptions", fours.len(), threes.len()))
}

fn menu_learner_bound() -> Outcome {
    let b = Budget::default();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst: f64 = 0.0;
    for i in 0..200 {
        let n = rng.gen_range(1..=4);
        let labels = rng.gen_range(2..=5);
        let class = random_class(&mut rng, n, labels, 20);
        let target = class.words().choose(&mut rng).expect("non-empty").clone();
        let p = rng.gen_range(1..=3);
        let mut menu = Menu::new(p);
        for x in 0..n {
            let mut others: Vec<_> = class.column(x).into_iter().filter(|&y| y != target[x]).collect();
            others.shuffle(&mut rng);
            let set = std::iter::once(target[x]).chain(others.into_iter().take(p - 1)).collect();
            ok(menu.set(x, set))?;
        }
        let len = rng.gen_range(2..=7);
        let sample: Sample = (0..len)
            .map(|_| {
                let x = rng.gen_range(0..n);
                LabeledExample::new(x, target[x])
            })
            .collect();
        let dn = ok(natarajan_dimension(&class, &b))?.points.len();
        let bad = ok(loo_bad_count(&Predictor::with_menu(class, menu), &sample))?;
        let fraction = bad as f64 / len as f64;
        let bound = 20.0 * dn as f64 * (p as f64).log2() / len as f64;
        ensure(fraction <= bound + 1e-12, || format!("triple {i}: fraction {fraction} > bound {bound}"))?;
        if bound > 0.0 {
            worst = worst.max(fraction / bound);
        }
    }
    Ok(format!("200 triples, zero violations, largest fraction/bound ratio {worst:.3}"))
}

fn compression() -> Outcome {
    let b = Budget::default();
    let torus = ok(gen_torus(&b))?.class;
    let schemes = [("hexagon", ok(Scheme::new(catalog::hexagon(), &b))?), ("torus", ok(Scheme::new(torus, &b))?)];
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let configs: Vec<(usize, usize, usize)> =
        (0..2).cartesian_product([20, 50]).cartesian_product([1, 2]).map(|((c, n), t)| (c, n, t)).collect();
    let mut worst = 0.0f64;
    for run in 0..50 {
        let (c, n, t) = configs[run % configs.len()];
        let (name, scheme) = &schemes[c];
        let sample = random_sample(&mut rng, scheme.class(), n);
        let out = ok(scheme.compress(&sample, t, &CompressOptions::with_seed(run as u64)))?;
        let h = ok(scheme.reconstruct(&out.kept, &out.header))?;
        ensure(out.verified && h.is_correct_on(&sample), || format!("run {run} ({name}, n {n}, t {t}): unsound"))?;
        ensure(out.r_achieved <= out.r_bound, || {
            format!("run {run} ({name}, n {n}, t {t}): r {} > bound {}", out.r_achieved, out.r_bound)
        })?;
        worst = worst.max(out.r_achieved as f64 / out.r_bound as f64);
    }
    Ok(format!("50 runs sound, largest r/bound {worst:.3}"))
}

fn coset_pipeline() -> Outcome {
    let b = Budget::default();
    let (g, subs) = ok(s3_instance(&b))?;
    let r = ok(check_polish_conditions(&g, &subs, &b))?;
    let cc = ok(coset_complex(&g, &subs, &b))?;
    let class = r.class.clone().ok_or("S3 complex has no class")?;
    let (hex_complex, _) = ok(pseudocube_to_complex(&catalog::hexagon()))?;
    ensure(are_isomorphic(&cc.complex, &hex_complex), || "S3 complex is not the hexagon complex".into())?;
    ensure(is_pseudo_cube(&class) && class.len() == 6, || "S3 class is not the hexagon".into())?;
    ensure(count_empty_squares(&cc.complex) == 0 && r.natarajan == Some(1), || format!("{r:?}"))?;
    ensure(r.pure && r.coloring_proper && r.replacement && r.dimension + 1 == subs.len(), || format!("{r:?}"))?;
    let (g, subs) = ok(klein_instance(&b))?;
    let r = ok(check_polish_conditions(&g, &subs, &b))?;
    let cc = ok(coset_complex(&g, &subs, &b))?;
    let square = ok(complex_to_pseudocube(&cc.complex))?;
    ensure(square.len() == 4 && is_pseudo_cube(&square) && square.domain_size() == 2, || "Klein class is not the square".into())?;
    ensure(r.empty_square.is_some(), || "no empty square detected".into())?;
    ensure(r.pure && r.coloring_proper && r.dimension + 1 == subs.len(), || format!("{r:?}"))?;
    ensure(!r.intersection_condition.iter().all(|&c| c) || r.replacement, || "replacement fails".into())?;
    Ok("S3 gives the hexagon, Z2 x Z2 gives the square with an empty square".into())
}

fn round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for i in 0..100 {
        let d = rng.gen_range(1..=4);
        let cube = random_pseudo_cube(&mut rng, d, 40);
        let (c, _) = ok(pseudocube_to_complex(&cube))?;
        ensure(is_good(&c).good, || format!("complex {i} is not good"))?;
        let mut perm: Vec<usize> = (0..c.vertex_count()).collect();
        perm.shuffle(&mut rng);
        let shuffled = ok(c.relabel(&perm))?;
        let class = ok(complex_to_pseudocube(&shuffled))?;
        let (back, _) = ok(pseudocube_to_complex(&class))?;
        ensure(are_isomorphic(&back, &shuffled), || format!("complex {i}: round trip is not isomorphic"))?;
        ensure(class.len() == cube.len(), || format!("complex {i}: {} words, expected {}", class.len(), cube.len()))?;
    }
    Ok("100 good complexes round-trip up to relabeling".into())
}

fn dimension_inequalities() -> Outcome {
    let b = Budget::default();
    let mut checked = 0;
    for (i, class) in shifting_corpus().iter().enumerate() {
        let de = ok(exponential_dimension(class, &b))?.value;
        let dn = ok(natarajan_dimension(class, &b))?.points.len();
        let p = class.alphabet_size();
        ensure(de as f64 <= 5.0 * dn as f64 * (p as f64).log2() + 1e-12, || {
            format!("class {i}: d_E {de} > 5 d_N log2 p with d_N {dn}, p {p}")
        })?;
        let avd = avg_degree(&ok(OneInclusionGraph::build(class))?);
        ensure(avd <= mclab::oig::Rational::from_integer(4 * de as u64), || format!("class {i}: avd {avd} > 4 d_E {de}"))?;
        checked += 1;
    }
    Ok(format!("{checked} classes, zero violations"))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("hexagon dimensions", 1, hexagon_dimensions),
        ("torus generator", 30, torus),
        ("shifting examples", 1, shifting_examples),
        ("orientation duality", 300, orientation_duality),
        ("shifting invariants", 120, shifting_invariants),
        ("hexagon leave-one-out counting", 60, hexagon_counting),
        ("menu learner per-sample bound", 300, menu_learner_bound),
        ("compression soundness and size", 600, compression),
        ("coset pipeline", 1, coset_pipeline),
        ("complex round trip", 120, round_trip),
        ("dimension inequalities", 120, dimension_inequalities),
    ];
    let mut failures = 0;
    for (k, (name, limit, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|detail| {
            if elapsed <= Duration::from_secs(*limit) {
                Ok(detail)
            } else {
                Err(format!("{detail}; took longer than {limit} s"))
            }
        });
        let (verdict, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failures += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {:>2} {verdict} {name} ({:.2} s): {detail}", k + 1, elapsed.as_secs_f64());
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
