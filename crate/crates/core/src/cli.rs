//! The `mclab` command line: file-driven wrappers around every module.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use itertools::Itertools;
use serde_json::{json, Value};

use crate::budget::Budget;
use crate::catalog;
use crate::class::{ConceptClass, Sample};
use crate::complex::{
    complex_to_pseudocube, count_alternating_squares, count_empty_squares, find_alternating_square, find_coloring,
    find_empty_square, is_good, pseudocube_to_complex, SimplicialComplex,
};
use crate::compress::{CompressOptions, Scheme};
use crate::dims::{dimension_report, ds_dimension, natarajan_dimension};
use crate::error::{Error, Result};
use crate::gen::{gen_torus, gen_tree_class};
use crate::group::{check_polish_conditions, coset_complex};
use crate::io;
use crate::learn::{exact_expected_error, list_learn, loo_bad_count, mc_error, Predictor};
use crate::oig::{
    avg_degree, export, greedy_orientation, max_out_degree, optimal_orientation, shifting_avg_degree,
    OneInclusionGraph, Rational,
};
use crate::selftest;
use crate::shift::{is_downward_closed, shift_once, shift_to_fixed_point};

#[derive(Parser, Debug)]
#[command(name = "mclab", version, about = "Exact multiclass learning combinatorics at desk scale")]
pub struct Cli {
    /// Worker threads for parallel searches.
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
    /// Output format; defaults to csv for learning curves and json elsewhere.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exact,
    Mc,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// VC, Natarajan, DS and exponential dimensions with witnesses.
    Dims { class: PathBuf },
    /// Optimal orientation of the one-inclusion graph and its degree statistics.
    Orient {
        class: PathBuf,
        /// Also run the greedy peeling construction with this out-degree bound.
        #[arg(long)]
        greedy: Option<usize>,
        /// Include the full oriented graph.
        #[arg(long)]
        export: bool,
    },
    /// Shift to a fixed point, or a single step with --direction.
    Shift {
        class: PathBuf,
        #[arg(long)]
        direction: Option<usize>,
    },
    /// One-inclusion and menu learners: prediction, leave-one-out counts and error curves.
    Learn {
        class: PathBuf,
        /// Restrict predictions to a menu file.
        #[arg(long)]
        menu: Option<PathBuf>,
        #[arg(long)]
        sample: Option<PathBuf>,
        /// Predict at this point instead of counting leave-one-out mistakes.
        #[arg(long)]
        x: Option<usize>,
        /// Compute the expected error over this distribution.
        #[arg(long, conflicts_with = "sample")]
        distribution: Option<PathBuf>,
        /// Sample sizes for the error curve.
        #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
        n: Vec<usize>,
        #[arg(long, value_enum, default_value = "exact")]
        mode: Mode,
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        /// Required with --mode mc.
        #[arg(long, required_if_eq("mode", "mc"))]
        seed: Option<u64>,
    },
    /// The list learner's menu on a sample of size d + t.
    ListLearn {
        class: PathBuf,
        #[arg(long)]
        sample: PathBuf,
        #[arg(long)]
        t: usize,
        /// Upper bound on the DS dimension; computed when omitted.
        #[arg(long)]
        d: Option<usize>,
        /// Keep only the first d + t examples of a longer sample.
        #[arg(long)]
        truncate: bool,
    },
    /// Two-stage sample compression with reconstruction check.
    Compress {
        class: PathBuf,
        #[arg(long)]
        sample: PathBuf,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        seed: u64,
        /// Sampled candidate blocks per round when enumeration is too large.
        #[arg(long, default_value_t = 256)]
        pool_size: usize,
    },
    /// Colorful simplicial complexes.
    #[command(subcommand)]
    Complex(ComplexCommand),
    /// Coset complex of a permutation group with the polish conditions checked.
    Coset { group: PathBuf },
    /// Built-in classes.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Recompute every bundled claim and print a verdict table.
    Selftest,
}

#[derive(Subcommand, Debug)]
pub enum ComplexCommand {
    /// Purity, proper coloring and replacement.
    Check { complex: PathBuf },
    /// Pseudo-cube of a good complex.
    ToCube { complex: PathBuf },
    /// Good complex of a pseudo-cube.
    ToComplex { class: PathBuf },
    /// Alternating and empty square counts with a witness of each.
    Squares { complex: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum GenCommand {
    Hexagon,
    Torus {
        /// Emit the triangulation instead of the class.
        #[arg(long)]
        complex: bool,
    },
    Tree {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
    },
    Cube {
        #[arg(long)]
        d: usize,
    },
}

/// A rendered report; csv is available only where a table makes sense.
pub struct Report {
    json: Value,
    csv: Option<String>,
    default: Format,
}

impl Report {
    fn json(json: Value) -> Self {
        Report { json, csv: None, default: Format::Json }
    }

    fn render(self, format: Option<Format>, command: &str) -> Result<String> {
        match format.unwrap_or(self.default) {
            Format::Json => Ok(serde_json::to_string_pretty(&self.json).expect("serializable") + "\n"),
            Format::Csv => self.csv.ok_or_else(|| Error::Precondition(format!("`{command}` has no csv output"))),
        }
    }
}

fn class_arg(path: &Path) -> Result<ConceptClass> {
    io::parse_class(&io::read(path)?)
}

fn complex_arg(path: &Path) -> Result<SimplicialComplex> {
    io::parse_complex(&io::read(path)?)
}

fn ratio(r: Rational) -> Value {
    json!({"fraction": r.to_string(), "value": *r.numer() as f64 / *r.denom() as f64})
}

/// Worst optimal orientation value over projections onto at most `len` points.
fn worst_projection_outdeg(class: &ConceptClass, len: usize, budget: &Budget) -> Result<usize> {
    let mut worst = 0;
    for size in 1..=len.min(class.domain_size()) {
        for pts in (0..class.domain_size()).combinations(size) {
            budget.charge((class.len() * size) as u64)?;
            let g = OneInclusionGraph::build(&class.project(&pts)?)?;
            worst = worst.max(optimal_orientation(&g).1);
        }
    }
    Ok(worst)
}

fn cmd_dims(class: &ConceptClass, budget: &Budget) -> Result<Report> {
    let r = dimension_report(class, budget)?;
    Ok(Report::json(serde_json::to_value(r).expect("serializable")))
}

fn cmd_orient(class: &ConceptClass, greedy: Option<usize>, full: bool) -> Result<Report> {
    let g = OneInclusionGraph::build(class)?;
    let (sigma, k) = optimal_orientation(&g);
    let mut out = json!({
        "vertices": g.vertex_count(),
        "edges": g.edges().iter().filter(|e| !e.is_singleton()).count(),
        "optimal_max_outdeg": k,
        "lower_bound_half_dimension": g.dimension().div_ceil(2),
        "avd": ratio(avg_degree(&g)),
        "avd_prime": ratio(shifting_avg_degree(&g)),
    });
    if let Some(bound) = greedy {
        out["greedy"] = match greedy_orientation(&g, bound) {
            Some(s) => json!({"bound": bound, "found": true, "max_outdeg": max_out_degree(&g, &s)?}),
            None => json!({"bound": bound, "found": false}),
        };
    }
    if full {
        out["orientation"] = serde_json::to_value(export(&g, &sigma)?).expect("serializable");
    }
    Ok(Report::json(out))
}

fn cmd_shift(class: &ConceptClass, direction: Option<usize>, budget: &Budget) -> Result<Report> {
    if let Some(i) = direction {
        let out = shift_once(class, i)?;
        return Ok(Report::json(json!({
            "direction": i,
            "class": io::class_json(&out),
            "downward_closed": is_downward_closed(&out),
        })));
    }
    let trace = shift_to_fixed_point(class, budget)?;
    trace.check_invariants()?;
    let mut csv = String::from("step,direction,changed,size,avd_prime_before,avd_prime_after,exp_dim_before,exp_dim_after,label_sum_before,label_sum_after\n");
    for (k, s) in trace.steps.iter().enumerate() {
        writeln!(
            csv,
            "{k},{},{},{},{},{},{},{},{},{}",
            s.direction,
            s.changed,
            s.size,
            s.avd_prime_before.to_rational(),
            s.avd_prime_after.to_rational(),
            s.exp_dim_before,
            s.exp_dim_after,
            s.label_sum_before,
            s.label_sum_after
        )
        .expect("string write");
    }
    let json = json!({
        "initial": io::class_json(&trace.initial),
        "steps": trace.steps,
        "final": io::class_json(&trace.final_class),
        "final_size": trace.final_class.len(),
        "downward_closed": is_downward_closed(&trace.final_class),
    });
    Ok(Report { json, csv: Some(csv), default: Format::Json })
}

struct LearnArgs<'a> {
    menu: Option<&'a PathBuf>,
    sample: Option<&'a PathBuf>,
    x: Option<usize>,
    distribution: Option<&'a PathBuf>,
    n: &'a [usize],
    mode: Mode,
    trials: usize,
    seed: Option<u64>,
}

fn cmd_learn(class: ConceptClass, a: LearnArgs, budget: &Budget) -> Result<Report> {
    let domain = class.domain_size();
    let menu = a.menu.map(|p| io::parse_menu(&io::read(p)?, domain)).transpose()?;
    // The bound on the leave-one-out fraction over n + 1 examples, with its name.
    let bound: Box<dyn Fn(usize) -> Result<(f64, &'static str)>> = match &menu {
        Some(m) => {
            let dn = natarajan_dimension(&class, budget)?.points.len() as f64;
            let lp = (m.size_bound().max(1) as f64).log2();
            Box::new(move |n1| Ok((20.0 * dn * lp / n1 as f64, "menu_learner_20_dN_log2p_over_n_plus_1")))
        }
        None => {
            let class = class.clone();
            Box::new(move |n1| {
                Ok((worst_projection_outdeg(&class, n1, budget)? as f64 / n1 as f64, "max_outdeg_over_n_plus_1"))
            })
        }
    };
    let predictor = match menu.clone() {
        Some(m) => Predictor::with_menu(class, m),
        None => Predictor::one_inclusion(class),
    };
    if let Some(path) = a.sample {
        let sample = io::parse_sample(&io::read(path)?, domain)?;
        if let Some(x) = a.x {
            let set = predictor.predict_set(&sample, x)?;
            return Ok(Report::json(json!({"x": x, "prediction": predictor.predict(&sample, x)?, "labels": set})));
        }
        if sample.is_empty() {
            return Err(Error::Precondition("leave-one-out needs a non-empty sample".into()));
        }
        let bad = loo_bad_count(&predictor, &sample)?;
        let (b, name) = bound(sample.len())?;
        return Ok(Report::json(json!({
            "size": sample.len(),
            "loo_bad_count": bad,
            "loo_bad_fraction": bad as f64 / sample.len() as f64,
            "bound": b,
            "bound_name": name,
        })));
    }
    let Some(path) = a.distribution else {
        return Err(Error::Precondition("learn needs --sample or --distribution".into()));
    };
    let dist = io::parse_distribution(&io::read(path)?, domain)?;
    let mut rows = Vec::new();
    for &n in a.n {
        let (error, std_err) = match a.mode {
            Mode::Exact => (exact_expected_error(&predictor, &dist, n, budget)?, 0.0),
            Mode::Mc => {
                let seed = a.seed.ok_or_else(|| Error::Precondition("--mode mc needs --seed".into()))?;
                let e = mc_error(&predictor, &dist, n, a.trials, seed)?;
                (e.mean, e.std_err)
            }
        };
        let (b, name) = bound(n + 1)?;
        rows.push(json!({"n": n, "error": error, "std_err": std_err, "bound": b, "bound_name": name}));
    }
    let mut csv = String::from("n,error,std_err,bound\n");
    for r in &rows {
        writeln!(csv, "{},{},{},{}", r["n"], r["error"], r["std_err"], r["bound"]).expect("string write");
    }
    Ok(Report { json: Value::Array(rows), csv: Some(csv), default: Format::Csv })
}

fn cmd_list_learn(class: &ConceptClass, mut sample: Sample, t: usize, d: Option<usize>, truncate: bool, budget: &Budget) -> Result<Report> {
    let d = match d {
        Some(d) => d,
        None => ds_dimension(class, budget)?.value,
    };
    if truncate && sample.len() > d + t {
        sample = Sample::new(sample.0[..d + t].to_vec());
    }
    let menu = list_learn(class, t, &sample, d)?;
    Ok(Report::json(json!({"d": d, "t": t, "menu": io::menu_json(&menu), "max_list_size": menu.max_list_size()})))
}

fn cmd_compress(class: ConceptClass, sample: &Sample, t: usize, opts: &CompressOptions, budget: &Budget) -> Result<Report> {
    let scheme = Scheme::new(class, budget)?;
    let out = scheme.compress(sample, t, opts)?;
    let h = scheme.reconstruct(&out.kept, &out.header)?;
    if !h.is_correct_on(sample) {
        return Err(Error::Verification("reconstruction disagrees with the sample".into()));
    }
    let mut v = serde_json::to_value(&out).expect("serializable");
    v["hypothesis"] = json!(h.labels);
    Ok(Report::json(v))
}

fn cmd_complex(cmd: &ComplexCommand) -> Result<Report> {
    match cmd {
        ComplexCommand::Check { complex } => {
            let c = complex_arg(complex)?;
            let report = is_good(&c);
            let mut v = serde_json::to_value(&report).expect("serializable");
            v["empty_squares"] = json!(count_empty_squares(&c));
            if let Some(col) = report.coloring.as_deref() {
                v["alternating_squares"] = json!(count_alternating_squares(&c, col));
            }
            Ok(Report::json(v))
        }
        ComplexCommand::ToCube { complex } => Ok(Report::json(io::class_json(&complex_to_pseudocube(&complex_arg(complex)?)?))),
        ComplexCommand::ToComplex { class } => {
            let (c, pairs) = pseudocube_to_complex(&class_arg(class)?)?;
            let mut v = io::complex_json(&c);
            v["vertex_pairs"] = json!(pairs);
            Ok(Report::json(v))
        }
        ComplexCommand::Squares { complex } => {
            let c = complex_arg(complex)?;
            let coloring = c.coloring().map(<[usize]>::to_vec).or_else(|| find_coloring(&c));
            let mut v = json!({
                "empty": count_empty_squares(&c),
                "first_empty": find_empty_square(&c),
            });
            if let Some(col) = coloring {
                v["alternating"] = json!(count_alternating_squares(&c, &col));
                v["first_alternating"] = json!(find_alternating_square(&c, &col));
            }
            Ok(Report::json(v))
        }
    }
}

fn cmd_coset(path: &Path, budget: &Budget) -> Result<Report> {
    let (g, subs) = io::parse_group(&io::read(path)?, budget)?;
    let report = check_polish_conditions(&g, &subs, budget)?;
    let cc = coset_complex(&g, &subs, budget)?;
    let mut v = serde_json::to_value(&report).expect("serializable");
    v["empty_squares"] = json!(count_empty_squares(&cc.complex));
    v["complex"] = io::complex_json(&cc.complex);
    if let Some(class) = &report.class {
        v["class"] = io::class_json(class);
    }
    Ok(Report::json(v))
}

fn cmd_gen(cmd: &GenCommand, budget: &Budget) -> Result<Report> {
    let class = match cmd {
        GenCommand::Hexagon => catalog::hexagon(),
        GenCommand::Torus { complex } => {
            let t = gen_torus(budget)?;
            if *complex {
                return Ok(Report::json(io::complex_json(&t.complex)));
            }
            t.class
        }
        GenCommand::Tree { k, m } => gen_tree_class(*k, *m, budget)?,
        GenCommand::Cube { d } => catalog::boolean_cube(*d),
    };
    Ok(Report::json(io::class_json(&class)))
}

fn cmd_selftest(budget: &Budget) -> (Report, bool) {
    let verdicts = selftest::run(budget);
    let ok = verdicts.iter().all(|v| v.passed);
    let mut csv = String::from("claim,verdict,detail\n");
    for v in &verdicts {
        writeln!(csv, "{},{},\"{}\"", v.claim, if v.passed { "PASS" } else { "FAIL" }, v.detail.replace('"', "'"))
            .expect("string write");
    }
    let json = json!({"passed": ok, "claims": verdicts});
    (Report { json, csv: Some(csv), default: Format::Csv }, ok)
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Dims { .. } => "dims",
        Command::Orient { .. } => "orient",
        Command::Shift { .. } => "shift",
        Command::Learn { .. } => "learn",
        Command::ListLearn { .. } => "list-learn",
        Command::Compress { .. } => "compress",
        Command::Complex(_) => "complex",
        Command::Coset { .. } => "coset",
        Command::Gen(_) => "gen",
        Command::Selftest => "selftest",
    }
}

/// Runs a parsed command and returns the rendered report and whether every
/// check held (only `selftest` can report `false`).
pub fn execute(cli: &Cli, budget: &Budget) -> Result<(String, bool)> {
    let mut ok = true;
    let report = match &cli.command {
        Command::Dims { class } => cmd_dims(&class_arg(class)?, budget)?,
        Command::Orient { class, greedy, export } => cmd_orient(&class_arg(class)?, *greedy, *export)?,
        Command::Shift { class, direction } => cmd_shift(&class_arg(class)?, *direction, budget)?,
        Command::Learn { class, menu, sample, x, distribution, n, mode, trials, seed } => {
            let args = LearnArgs {
                menu: menu.as_ref(),
                sample: sample.as_ref(),
                x: *x,
                distribution: distribution.as_ref(),
                n,
                mode: *mode,
                trials: *trials,
                seed: *seed,
            };
            cmd_learn(class_arg(class)?, args, budget)?
        }
        Command::ListLearn { class, sample, t, d, truncate } => {
            let class = class_arg(class)?;
            let sample = io::parse_sample(&io::read(sample)?, class.domain_size())?;
            cmd_list_learn(&class, sample, *t, *d, *truncate, budget)?
        }
        Command::Compress { class, sample, t, seed, pool_size } => {
            let class = class_arg(class)?;
            let sample = io::parse_sample(&io::read(sample)?, class.domain_size())?;
            let opts = CompressOptions { pool_size: *pool_size, ..CompressOptions::with_seed(*seed) };
            cmd_compress(class, &sample, *t, &opts, budget)?
        }
        Command::Complex(c) => cmd_complex(c)?,
        Command::Coset { group } => cmd_coset(group, budget)?,
        Command::Gen(g) => cmd_gen(g, budget)?,
        Command::Selftest => {
            let (r, passed) = cmd_selftest(budget);
            ok = passed;
            r
        }
    };
    Ok((report.render(cli.format, command_name(&cli.command))?, ok))
}

/// Parses `args`, runs the command on a pool of `--threads` workers and
/// writes the report. Returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let budget = Budget::from_env();
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.threads.max(1)).build() {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: cannot start {} threads: {e}", cli.threads);
            return 1;
        }
    };
    let result = pool.install(|| execute(&cli, &budget)).and_then(|(text, ok)| {
        match &cli.output {
            Some(path) => std::fs::write(path, &text)
                .map_err(|e| Error::Precondition(format!("cannot write {}: {e}", path.display())))?,
            None => print!("{text}"),
        }
        Ok(ok)
    });
    match result {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
