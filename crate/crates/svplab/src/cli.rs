//! Command-line front end: batch operations over instance and basis files.
//!
//! Exact-rational flags such as `--eps` only accept fraction syntax
//! (`num/den` or a plain integer); floating-point input is rejected because
//! every downstream comparison is exact. All subcommands are deterministic
//! given their flags and seed.

use crate::baseline;
use crate::basisfile;
use crate::cjloss;
use crate::dependency::{self, DependencyOutcome, DependencyQuery};
use crate::exactmath::NormIndex;
use crate::instances::{
    parse_instance, serialize_cardinality, serialize_plain, Assignment, PaddingVariant,
    ParsedInstance, SubsetSumInstance,
};
use crate::pipeline;
use crate::reduce::{self, plan_parameters};
use crate::svp::{self, GapVerdict, SvpQuery, DEFAULT_DIMENSION_CAP};
use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

#[derive(Parser)]
#[command(
    name = "svplab",
    about = "Exact subset-sum to shortest-vector reductions with verification oracles"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate instance files (uniform, geometric, or density-targeted).
    Gen(GenArgs),
    /// Print the planner parameters for a gap ε and instance size.
    Plan(PlanArgs),
    /// Run the reduction chain on an instance file and write a basis file.
    Reduce(ReduceArgs),
    /// Search for a dependency certificate over an instance's weights.
    Depcheck(DepcheckArgs),
    /// Solve or decide a basis file with the exact solver.
    Solve(SolveArgs),
    /// Compare pipeline verdicts against the exhaustive oracle.
    Verify(VerifyArgs),
    /// Run the low-density embed-and-recover experiment.
    Cjloss(CjlossArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GenMode {
    Uniform,
    Geometric,
    Density,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum, default_value = "uniform")]
    mode: GenMode,
    /// Number of weights.
    #[arg(long)]
    n: usize,
    /// Upper bound for uniform weights.
    #[arg(long, default_value = "40")]
    max_weight: u64,
    /// Target density for density mode, as a fraction.
    #[arg(long, value_parser = parse_rational_flag)]
    density: Option<BigRational>,
    /// Norm index for geometric mode.
    #[arg(long, default_value = "2")]
    p: u32,
    /// Scale for geometric mode, as a fraction.
    #[arg(long, value_parser = parse_rational_flag, default_value = "1/2")]
    alpha: BigRational,
    #[arg(long, default_value = "1")]
    seed: u64,
    /// Plant a solution (target is a random subset sum).
    #[arg(long)]
    solvable: bool,
    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PlanArgs {
    /// Gap parameter ε in (0, 1], as a fraction.
    #[arg(long, value_parser = parse_rational_flag)]
    eps: BigRational,
    /// Original instance size (decimal, any length).
    #[arg(long)]
    n: String,
}

#[derive(Args)]
struct ReduceArgs {
    /// Instance file to reduce.
    input: PathBuf,
    #[arg(long, value_parser = parse_rational_flag, default_value = "1/1")]
    eps: BigRational,
    /// Padding multiplier override; the planner's choice when omitted.
    #[arg(long)]
    m: Option<u32>,
    /// Norm index override; the planner's choice when omitted.
    #[arg(long)]
    p: Option<u32>,
    #[arg(long, value_enum, default_value = "dense")]
    variant: VariantFlag,
    /// Basis file output path.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the intermediate half-full and c-full instance files.
    #[arg(long)]
    emit_intermediate: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VariantFlag {
    Dense,
    Sparse,
}

impl From<VariantFlag> for PaddingVariant {
    fn from(flag: VariantFlag) -> Self {
        match flag {
            VariantFlag::Dense => PaddingVariant::Dense,
            VariantFlag::Sparse => PaddingVariant::Sparse,
        }
    }
}

#[derive(Args)]
struct DepcheckArgs {
    /// Instance file whose weights are examined.
    input: PathBuf,
    #[arg(long)]
    p: u32,
    #[arg(long, value_parser = parse_rational_flag, default_value = "1/2")]
    alpha: BigRational,
    /// Node budget for the exhaustive search.
    #[arg(long, default_value_t = dependency::DEFAULT_NODE_BUDGET)]
    cap: u64,
}

#[derive(Args)]
struct SolveArgs {
    /// Basis file (bracketed matrix with optional headers).
    input: PathBuf,
    /// Norm index when the file carries no `# p` header.
    #[arg(long)]
    p: Option<u32>,
    /// Enumeration cap on the number of basis rows.
    #[arg(long, default_value_t = DEFAULT_DIMENSION_CAP)]
    cap: usize,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value = "100")]
    count: usize,
    #[arg(long, default_value = "1")]
    seed: u64,
    #[arg(long, default_value = "8")]
    max_n: usize,
    #[arg(long, default_value = "40")]
    max_weight: u64,
    #[arg(long, value_parser = parse_rational_flag, default_value = "1/1")]
    eps: BigRational,
    /// Print one line per instance instead of just the summary.
    #[arg(long)]
    per_instance: bool,
}

#[derive(Args)]
struct CjlossArgs {
    /// Instance file; random instances are generated when omitted.
    input: Option<PathBuf>,
    #[arg(long, default_value = "20")]
    count: usize,
    #[arg(long, default_value = "1")]
    seed: u64,
    #[arg(long, default_value = "8")]
    n: usize,
    /// Bit length of the random weights (controls the density).
    #[arg(long, default_value = "10")]
    bits: u32,
    /// Enumeration cap on the number of basis rows.
    #[arg(long, default_value_t = DEFAULT_DIMENSION_CAP)]
    cap: usize,
    /// CSV output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Parses a rational flag, rejecting floating-point syntax.
fn parse_rational_flag(token: &str) -> Result<BigRational, String> {
    if token.contains('.') {
        return Err(format!(
            "`{token}` looks like a float; exact fractions only (e.g. 1/2)"
        ));
    }
    let (num, den) = match token.split_once('/') {
        Some((num, den)) => (num, den),
        None => (token, "1"),
    };
    let num = BigInt::from_str(num).map_err(|e| e.to_string())?;
    let den = BigInt::from_str(den).map_err(|e| e.to_string())?;
    if den.is_zero() {
        return Err("denominator is zero".into());
    }
    Ok(BigRational::new(num, den))
}

/// Runs the CLI; the returned code is the process exit status
/// (0 = verdict obtained, 1 = error, 2 = inconclusive).
pub fn run() -> Result<i32> {
    let cli = Cli::parse();
    dispatch(cli)
}

fn dispatch(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Gen(args) => gen(args),
        Command::Plan(args) => plan(args),
        Command::Reduce(args) => reduce_cmd(args),
        Command::Depcheck(args) => depcheck(args),
        Command::Solve(args) => solve(args),
        Command::Verify(args) => verify(args),
        Command::Cjloss(args) => cjloss_cmd(args),
    }
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, content)
            .with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn random_bigint_below(rng: &mut ChaCha8Rng, bound: u64) -> BigInt {
    BigInt::from(rng.gen_range(0..=bound))
}

fn random_target(rng: &mut ChaCha8Rng, weights: &[BigInt], solvable: bool) -> BigInt {
    if solvable {
        let mut sum = BigInt::zero();
        for w in weights {
            if rng.gen_bool(0.5) {
                sum += w;
            }
        }
        sum
    } else {
        // Uniform over [0, Σ a_i]; desk-scale sums fit u64.
        let total: BigInt = weights.iter().sum();
        let total_u64 = u64::try_from(&total).unwrap_or(u64::MAX);
        random_bigint_below(rng, total_u64)
    }
}

fn gen(args: GenArgs) -> Result<i32> {
    if args.n == 0 {
        bail!("--n must be at least 1");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let weights: Vec<BigInt> = match args.mode {
        GenMode::Uniform => (0..args.n)
            .map(|_| random_bigint_below(&mut rng, args.max_weight))
            .collect(),
        GenMode::Geometric => {
            let p = NormIndex::new(args.p).map_err(|e| anyhow!(e))?;
            dependency::geometric_family(args.n, p, &args.alpha).map_err(|e| anyhow!(e))?
        }
        GenMode::Density => {
            let d = args
                .density
                .clone()
                .ok_or_else(|| anyhow!("--density is required in density mode"))?;
            // Bit length L ≈ n/d so that n / log2(max weight) ≈ d.
            let l = (BigRational::from_integer(BigInt::from(args.n)) / d).round();
            let l = u32::try_from(l.to_integer()).context("density too small for this n")?;
            if !(2..=60).contains(&l) {
                bail!("weight bit length {l} out of the supported range 2..=60");
            }
            let low = 1u64 << (l - 1);
            (0..args.n)
                .map(|_| BigInt::from(low + rng.gen_range(0..low)))
                .collect()
        }
    };
    let target = random_target(&mut rng, &weights, args.solvable || args.mode == GenMode::Geometric);
    let inst = SubsetSumInstance::new(weights, target).map_err(|e| anyhow!(e))?;
    let mode = match args.mode {
        GenMode::Uniform => "uniform",
        GenMode::Geometric => "geometric",
        GenMode::Density => "density",
    };
    let mut content = format!(
        "# svplab gen --mode {mode} --n {} --max-weight {} --seed {} solvable={}\n",
        args.n, args.max_weight, args.seed, args.solvable
    );
    content.push_str(&serialize_plain(&inst));
    emit(&args.out, &content)?;
    Ok(0)
}

fn plan(args: PlanArgs) -> Result<i32> {
    let n = BigInt::from_str(&args.n).context("--n must be a decimal integer")?;
    let params = plan_parameters(&args.eps, &n).map_err(|e| anyhow!(e))?;
    println!("epsilon {}", params.epsilon);
    println!("alpha {}", params.alpha);
    println!("m {}", params.m);
    println!("c {}", params.cardinality_ratio);
    println!("n_total {}", params.n_total);
    println!("p_hat {}", params.p_hat);
    println!("p_hat_coarse {}", params.p_hat_coarse);
    println!("scaling_factor {}", params.scaling_factor);
    println!(
        "side_conditions ratio={} dimension={} independence={}",
        params.side_conditions.ratio_above_bound,
        params.side_conditions.dimension_bound,
        params.side_conditions.independence_threshold
    );
    Ok(0)
}

fn reduce_cmd(args: ReduceArgs) -> Result<i32> {
    let text = read_file(&args.input)?;
    let inst = match parse_instance(&text).map_err(|e| anyhow!(e))? {
        ParsedInstance::Plain(p) => p,
        ParsedInstance::Cardinality(_) => {
            bail!("reduce expects a plain instance file (no cardinality line)")
        }
    };
    let params = plan_parameters(&args.eps, &BigInt::from(inst.len())).map_err(|e| anyhow!(e))?;
    let m = args.m.unwrap_or(params.m);
    let p = match args.p {
        Some(p) => NormIndex::new(p).map_err(|e| anyhow!(e))?,
        None => params.p_hat,
    };
    let (half, _t1) = reduce::to_half_full(&inst);
    let (cfull, t2) = reduce::to_c_full(&half, m, args.variant.into()).map_err(|e| anyhow!(e))?;

    if args.emit_intermediate {
        if let Some(out) = &args.out {
            let half_path = out.with_extension("half.ssi");
            let cfull_path = out.with_extension("cfull.ssi");
            std::fs::write(&half_path, serialize_cardinality(&half))?;
            std::fs::write(&cfull_path, serialize_cardinality(&cfull))?;
            eprintln!(
                "intermediate instances: {} {}",
                half_path.display(),
                cfull_path.display()
            );
        }
    }

    println!("n_original {}", inst.len());
    println!("n_total {}", cfull.len());
    println!("m {m}");
    println!("p {p}");
    println!("c {}", cfull.ratio());
    if let crate::instances::ReductionTrace::CFull {
        padding_value,
        target_shift,
        ..
    } = &t2
    {
        println!("padding_value {padding_value}");
        println!("target_shift {target_shift}");
    }

    let built = reduce::build_lattice(&cfull, p, &args.eps, dependency::DEFAULT_NODE_BUDGET)
        .map_err(|e| anyhow!(e))?;
    println!("scaling_factor {}", built.scaling_factor);
    let provenance = vec![format!(
        "svplab reduce --eps {} --variant {} input={} m={m} p={p}",
        args.eps,
        match args.variant {
            VariantFlag::Dense => "dense",
            VariantFlag::Sparse => "sparse",
        },
        args.input.display()
    )];
    let content = basisfile::write_gap_instance(&built.gap, &provenance);
    emit(&args.out, &content)?;
    Ok(0)
}

fn depcheck(args: DepcheckArgs) -> Result<i32> {
    let text = read_file(&args.input)?;
    let inst = parse_instance(&text).map_err(|e| anyhow!(e))?;
    let p = NormIndex::new(args.p).map_err(|e| anyhow!(e))?;
    let query = DependencyQuery::new(inst.weights().to_vec(), p, args.alpha.clone())
        .map_err(|e| anyhow!(e))?;
    match dependency::find_dependency(&query, args.cap) {
        DependencyOutcome::Dependent(cert) => {
            let rendered: Vec<String> =
                cert.coefficients.iter().map(|v| v.to_string()).collect();
            println!("DEPENDENT {}", rendered.join(" "));
            Ok(0)
        }
        DependencyOutcome::Independent(report) => {
            println!(
                "INDEPENDENT nodes={} coordinate_bound={} max_support={}",
                report.nodes_visited, report.coordinate_bound, report.max_support
            );
            Ok(0)
        }
        DependencyOutcome::Inconclusive(report) => {
            println!("INCONCLUSIVE nodes={}", report.nodes_visited);
            Ok(2)
        }
    }
}

fn solve(args: SolveArgs) -> Result<i32> {
    let text = read_file(&args.input)?;
    let file = basisfile::parse(&text).map_err(|e| anyhow!(e))?;
    if file.p.is_some() && file.delta_pow.is_some() && file.gamma.is_some() {
        let gap = file.to_gap_instance().map_err(|e| anyhow!(e))?;
        let verdict = svp::decide_gapsvp(&gap, args.cap).map_err(|e| anyhow!(e))?;
        println!("verdict {verdict}");
        let query = SvpQuery {
            basis: gap.basis.scaled_rows().to_vec(),
            p: gap.p,
            radius_pow: Some(gap.scaled_gap_radius_pow()),
            dimension_cap: args.cap,
        };
        if let Some(sv) = svp::shortest_vector(&query).map_err(|e| anyhow!(e))?.vector {
            let rendered: Vec<String> = sv.vector.iter().map(|v| v.to_string()).collect();
            println!("norm_pow {}", sv.norm_pow);
            println!("vector {}", rendered.join(" "));
        }
        return Ok(0);
    }
    let p = match (args.p, file.p) {
        (Some(flag), _) => NormIndex::new(flag).map_err(|e| anyhow!(e))?,
        (None, Some(from_file)) => from_file,
        (None, None) => NormIndex::new(2).expect("2 >= 1"),
    };
    let query = SvpQuery {
        basis: file.rows.clone(),
        p,
        radius_pow: None,
        dimension_cap: args.cap,
    };
    let result = svp::shortest_vector(&query).map_err(|e| anyhow!(e))?;
    match result.vector {
        Some(sv) => {
            let rendered: Vec<String> = sv.vector.iter().map(|v| v.to_string()).collect();
            println!("norm_pow {}", sv.norm_pow);
            println!("vector {}", rendered.join(" "));
            Ok(0)
        }
        None => {
            println!("norm_pow none");
            Ok(2)
        }
    }
}

/// Seeded random plain instance: n in 1..=max_n, weights in 0..=max_weight,
/// target at most the weight sum (half planted, half uniform).
pub fn random_instance(rng: &mut ChaCha8Rng, max_n: usize, max_weight: u64) -> SubsetSumInstance {
    let n = rng.gen_range(1..=max_n);
    let weights: Vec<BigInt> = (0..n)
        .map(|_| random_bigint_below(rng, max_weight))
        .collect();
    let solvable = rng.gen_bool(0.5);
    let target = random_target(rng, &weights, solvable);
    SubsetSumInstance::new(weights, target).expect("generated weights are valid")
}

fn verify(args: VerifyArgs) -> Result<i32> {
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut agreed = 0usize;
    let mut yes_count = 0usize;
    for index in 0..args.count {
        let inst = random_instance(&mut rng, args.max_n, args.max_weight);
        let outcome = pipeline::run(&inst, &args.eps).map_err(|e| anyhow!(e))?;
        let oracle = baseline::exhaustive_subset_sum(&inst).map_err(|e| anyhow!(e))?;
        let pipeline_yes = outcome.verdict == GapVerdict::Yes;
        let ok = pipeline_yes == oracle.is_some()
            && outcome
                .witness
                .as_ref()
                .map(|w| inst.check_assignment(w).unwrap_or(false))
                .unwrap_or(!pipeline_yes);
        if ok {
            agreed += 1;
        }
        if pipeline_yes {
            yes_count += 1;
        }
        if args.per_instance || !ok {
            println!(
                "instance {index} n={} verdict={} oracle={} {}",
                inst.len(),
                outcome.verdict,
                if oracle.is_some() { "YES" } else { "NO" },
                if ok { "ok" } else { "MISMATCH" }
            );
        }
    }
    let all_ok = agreed == args.count;
    println!(
        "{} {agreed}/{} yes={yes_count}",
        if all_ok { "PASS" } else { "FAIL" },
        args.count
    );
    Ok(if all_ok { 0 } else { 1 })
}

fn cjloss_cmd(args: CjlossArgs) -> Result<i32> {
    let mut instances = Vec::new();
    match &args.input {
        Some(path) => {
            let text = read_file(path)?;
            match parse_instance(&text).map_err(|e| anyhow!(e))? {
                ParsedInstance::Plain(p) => instances.push(p),
                ParsedInstance::Cardinality(_) => {
                    bail!("the low-density experiment expects plain instances")
                }
            }
        }
        None => {
            if !(2..=60).contains(&args.bits) {
                bail!("--bits out of the supported range 2..=60");
            }
            let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
            let low = 1u64 << (args.bits - 1);
            for _ in 0..args.count {
                let weights: Vec<BigInt> = (0..args.n)
                    .map(|_| BigInt::from(low + rng.gen_range(0..low)))
                    .collect();
                let target = random_target(&mut rng, &weights, true);
                instances.push(
                    SubsetSumInstance::new(weights, target).expect("generated weights are valid"),
                );
            }
        }
    }
    let mut csv = String::from(
        "density,below_threshold,solvable,embedded_norm_pow,embedded_in_lattice,recovered,degenerate\n",
    );
    for inst in &instances {
        let report = cjloss::cjloss_experiment(inst, args.cap).map_err(|e| anyhow!(e))?;
        let (density, below) = report
            .density
            .as_ref()
            .map(|d| (format!("{:.4}", d.approx), d.below_attack_threshold.to_string()))
            .unwrap_or_else(|| ("".into(), "".into()));
        writeln!(
            csv,
            "{density},{below},{},{},{},{},{}",
            report.solvable,
            report
                .embedded_norm_pow
                .map(|v| v.to_string())
                .unwrap_or_default(),
            report.embedded_in_lattice,
            report.recovered,
            report.degenerate
        )
        .expect("writing to a string cannot fail");
    }
    emit(&args.out, &csv)?;
    Ok(0)
}

/// Renders an assignment as the CLI prints it.
pub fn render_assignment(a: &Assignment) -> String {
    a.to_string()
}
