//! Command-line front end. [`run`] does all the work and returns a
//! [`CommandResult`]; the binary only prints it and exits.
//!
//! Exit codes: 0 success, 1 refutation or counterexample found, 2 usage
//! error, 3 resource bound exceeded.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::arith::{self, parse_int};
use crate::convergence::{
    self, check_continuity_products, converges_to, limit_profile, series_partial_sums, ContinuityCase, IntegerSequence,
    ProfileOutcome, Verdict,
};
use crate::error::Error;
use crate::norms::{self, norm, NormValue};
use crate::progression::{
    self, complement_class, euclid_witness, intersect_classes, open_ball, separate_points, ResidueClass,
};
use crate::separation::{self, CertificateVerdict, SeparateOptions, SeparationCertificate};

pub const EXIT_OK: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BOUND: i32 = 3;

#[derive(Debug, Clone, PartialEq)]
pub struct CommandResult {
    pub command: String,
    pub payload: Value,
    /// Human-readable rendering of the payload.
    pub text: String,
    pub exit_code: i32,
}

impl CommandResult {
    fn ok(command: &str, payload: Value, text: String) -> Self {
        CommandResult {
            command: command.into(),
            payload,
            text,
            exit_code: EXIT_OK,
        }
    }

    fn with_code(mut self, code: i32) -> Self {
        self.exit_code = code;
        self
    }

    fn error(command: &str, err: &Error) -> Self {
        let code = if err.is_resource_bound() {
            EXIT_BOUND
        } else {
            EXIT_USAGE
        };
        CommandResult {
            command: command.into(),
            payload: json!({ "error": err.to_string() }),
            text: format!("error: {err}"),
            exit_code: code,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "furstenberg",
    version,
    about = "Exact computations in Fürstenberg's topology on the integers"
)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Half-width W of [-W, W] window scans.
    #[arg(long, global = true, env = progression::WINDOW_ENV, default_value_t = progression::DEFAULT_WINDOW)]
    window: u64,

    /// Seed for randomized checks; printed when chosen automatically.
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Probe {
    /// Largest modulus k checked.
    #[arg(long, default_value_t = convergence::DEFAULT_DEPTH)]
    depth: u64,
    /// Largest index n probed.
    #[arg(long, default_value_t = convergence::DEFAULT_BUDGET)]
    budget: u64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// ‖N‖.
    #[command(allow_negative_numbers = true)]
    Norm { n: String },
    /// d(M, N) = ‖M − N‖.
    #[command(allow_negative_numbers = true)]
    Dist { m: String, n: String },
    /// Exact ‖N‖₁ = Σ_{k∤N} 2^-k.
    #[command(allow_negative_numbers = true)]
    Ferry {
        n: String,
        #[arg(long, default_value_t = norms::FERRY_DEFAULT_CAP)]
        cap: u64,
    },
    /// Open ball of radius R (a positive rational such as 1/3) around C.
    #[command(allow_negative_numbers = true)]
    Ball { center: String, radius: String },
    /// Intersection of two classes given as "a mod b".
    Intersect { x: String, y: String },
    /// The other residue classes with the same modulus.
    Complement { class: String },
    /// ∏p + 1 for comma-separated primes.
    Euclid { primes: String },
    /// Disjoint clopen parts containing A and B respectively.
    #[command(allow_negative_numbers = true)]
    SeparatePoints { a: String, b: String },
    /// Check SEQ → LIMIT.
    #[command(allow_negative_numbers = true)]
    Converge {
        seq: String,
        limit: String,
        #[command(flatten)]
        probe: Probe,
    },
    /// Eventual residues of SEQ modulo 1..depth.
    Profile {
        seq: String,
        #[command(flatten)]
        probe: Probe,
    },
    /// Partial sums of the series with terms SEQ, and their limit profile.
    SeriesSum {
        seq: String,
        /// Number of partial sums printed.
        #[arg(long, default_value_t = 12)]
        count: u64,
        #[command(flatten)]
        probe: Probe,
    },
    /// Separate two disjoint prime sets by progressions.
    Separate(SeparateArgs),
    /// Check a certificate file written by `separate --json`.
    VerifyCert { file: PathBuf },
    /// Run every construction on randomized inputs.
    Demo,
}

#[derive(Debug, Args)]
struct SeparateArgs {
    /// Comma-separated primes of the first set.
    #[arg(long = "a", required_unless_present = "a_file")]
    a: Option<String>,
    /// File with the first set, one integer per line.
    #[arg(long, conflicts_with = "a")]
    a_file: Option<PathBuf>,
    /// Comma-separated primes of the second set.
    #[arg(long = "b", required_unless_present = "b_file")]
    b: Option<String>,
    /// File with the second set.
    #[arg(long, conflicts_with = "b")]
    b_file: Option<PathBuf>,
    /// Search for moduli up to BOUND instead of the lcm tower.
    #[arg(long, value_name = "BOUND")]
    compact: Option<u64>,
    /// Window for the self-check (defaults to --window).
    #[arg(long, value_name = "W")]
    verify_window: Option<u64>,
    /// Accept arbitrary disjoint integer sets, not only primes.
    #[arg(long)]
    any_integers: bool,
}

/// Parses and executes one command line (`argv[0]` is the program name).
pub fn run<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let text = e.render().to_string();
            return CommandResult {
                command: String::new(),
                payload: json!({ "error": text.trim() }),
                text,
                exit_code: code,
            };
        }
    };
    let name = command_name(&cli.command);
    match dispatch(&cli) {
        Ok(result) => result,
        Err(err) => CommandResult::error(name, &err),
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Norm { .. } => "norm",
        Command::Dist { .. } => "dist",
        Command::Ferry { .. } => "ferry",
        Command::Ball { .. } => "ball",
        Command::Intersect { .. } => "intersect",
        Command::Complement { .. } => "complement",
        Command::Euclid { .. } => "euclid",
        Command::SeparatePoints { .. } => "separate-points",
        Command::Converge { .. } => "converge",
        Command::Profile { .. } => "profile",
        Command::SeriesSum { .. } => "series-sum",
        Command::Separate(_) => "separate",
        Command::VerifyCert { .. } => "verify-cert",
        Command::Demo => "demo",
    }
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("library types serialize")
}

fn dispatch(cli: &Cli) -> crate::Result<CommandResult> {
    let name = command_name(&cli.command);
    let out = match &cli.command {
        Command::Norm { n } => {
            let v = norm(&parse_int(n)?);
            CommandResult::ok(name, to_json(&v), v.to_string())
        }
        Command::Dist { m, n } => {
            let v = norms::dist(&parse_int(m)?, &parse_int(n)?);
            CommandResult::ok(name, to_json(&v), v.to_string())
        }
        Command::Ferry { n, cap } => {
            let v = norms::ferry_norm_capped(&parse_int(n)?, *cap)?;
            CommandResult::ok(name, to_json(&v), v.to_string())
        }
        Command::Ball { center, radius } => {
            let r: BigRational = radius
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("radius must be a rational like 1/3, got {radius:?}")))?;
            let c = open_ball(&parse_int(center)?, &r)?;
            CommandResult::ok(name, to_json(&c), c.to_string())
        }
        Command::Intersect { x, y } => {
            let (x, y): (ResidueClass, ResidueClass) = (x.parse()?, y.parse()?);
            match intersect_classes(&x, &y) {
                Some(c) => CommandResult::ok(name, to_json(&c), c.to_string()),
                None => CommandResult::ok(name, json!({ "empty": true }), "empty".into()),
            }
        }
        Command::Complement { class } => {
            let u = complement_class(&class.parse()?)?;
            CommandResult::ok(name, to_json(&u), u.to_string())
        }
        Command::Euclid { primes } => {
            let primes = arith::parse_int_list(primes)?;
            let w = euclid_witness(&primes)?;
            let text = format!("{w} (not divisible by any of {})", join(&primes));
            CommandResult::ok(name, json!({ "witness": w.to_string() }), text)
        }
        Command::SeparatePoints { a, b } => {
            let (first, rest) = separate_points(&parse_int(a)?, &parse_int(b)?)?;
            let text = format!("{first} | {rest}");
            CommandResult::ok(
                name,
                json!({ "first": to_json(&first), "second": to_json(&rest) }),
                text,
            )
        }
        Command::Converge { seq, limit, probe } => {
            let seq = IntegerSequence::parse(seq)?;
            let v = converges_to(&seq, &parse_int(limit)?, probe.depth, probe.budget)?;
            let code = if v.is_refuted() { EXIT_REFUTED } else { EXIT_OK };
            CommandResult::ok(name, to_json(&v), v.to_string()).with_code(code)
        }
        Command::Profile { seq, probe } => {
            let seq = IntegerSequence::parse(seq)?;
            profile_result(name, limit_profile(&seq, probe.depth, probe.budget)?)
        }
        Command::SeriesSum { seq, count, probe } => {
            let sums = series_partial_sums(&IntegerSequence::parse(seq)?);
            let shown: Vec<String> = sums.prefix(*count).iter().map(ToString::to_string).collect();
            let profile = limit_profile(&sums, probe.depth, probe.budget)?;
            let mut result = profile_result(name, profile);
            result.text = format!("partial sums: {}\n{}", shown.join(", "), result.text);
            result.payload = json!({ "partial_sums": shown, "limit": result.payload });
            result
        }
        Command::Separate(args) => run_separate(name, args, cli.window)?,
        Command::VerifyCert { file } => {
            let text = std::fs::read_to_string(file)
                .map_err(|e| Error::Parse(format!("cannot read {}: {e}", file.display())))?;
            let cert: SeparationCertificate =
                serde_json::from_str(&text).map_err(|e| Error::Parse(format!("bad certificate: {e}")))?;
            let verdict = separation::verify(&cert, cli.window);
            let code = if verdict.is_valid() { EXIT_OK } else { EXIT_REFUTED };
            CommandResult::ok(name, to_json(&verdict), verdict.to_string()).with_code(code)
        }
        Command::Demo => run_demo(name, cli.seed),
    };
    Ok(out)
}

fn join(values: &[BigInt]) -> String {
    values.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn profile_result(name: &str, outcome: ProfileOutcome) -> CommandResult {
    match &outcome {
        ProfileOutcome::Profile(p) => {
            let text = format!(
                "limit ≡ {} (residues mod 1..{}: {:?})",
                p.limit_class(),
                p.depth,
                p.residues
            );
            CommandResult::ok(name, to_json(&outcome), text)
        }
        ProfileOutcome::Divergent { k } => CommandResult::ok(
            name,
            to_json(&outcome),
            format!("diverges: residues mod {k} do not settle"),
        )
        .with_code(EXIT_REFUTED),
    }
}

fn read_set(list: &Option<String>, file: &Option<PathBuf>) -> crate::Result<Vec<BigInt>> {
    match (list, file) {
        (Some(list), _) => arith::parse_int_list(list),
        (None, Some(path)) => read_int_file(path),
        (None, None) => Err(Error::Parse("missing set".into())),
    }
}

/// One decimal integer per line; blank lines and `#` comments are skipped.
pub fn read_int_file(path: &Path) -> crate::Result<Vec<BigInt>> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(parse_int)
        .collect()
}

fn run_separate(name: &str, args: &SeparateArgs, window: u64) -> crate::Result<CommandResult> {
    let a = read_set(&args.a, &args.a_file)?;
    let b = read_set(&args.b, &args.b_file)?;
    let opts = SeparateOptions {
        require_primes: !args.any_integers,
    };
    let cert = match args.compact {
        Some(bound) => separation::compact_separate_with(&a, &b, bound, &opts)?,
        None => separation::separate_with(&a, &b, &opts)?,
    };
    let verdict = separation::verify(&cert, args.verify_window.unwrap_or(window));
    let text = format!(
        "U = ⋃ {}\nV = ⋃ {}\nself-check: {verdict}",
        describe(&cert.primes_a, &cert.moduli_a),
        describe(&cert.primes_b, &cert.moduli_b),
    );
    let code = if verdict.is_valid() { EXIT_OK } else { EXIT_REFUTED };
    Ok(CommandResult::ok(name, to_json(&cert), text).with_code(code))
}

fn describe(points: &[BigInt], moduli: &[BigInt]) -> String {
    let parts: Vec<String> = points
        .iter()
        .zip(moduli)
        .map(|(p, m)| format!("({p} mod {m})"))
        .collect();
    parts.join(" ∪ ")
}

#[derive(Serialize)]
struct DemoStep {
    step: &'static str,
    ok: bool,
    detail: String,
}

/// Exercises every construction on seeded random input.
fn run_demo(name: &str, seed: Option<u64>) -> CommandResult {
    let seed = seed.unwrap_or_else(|| rand::thread_rng().gen());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let big = BigInt::from;
    let mut steps = Vec::new();

    let table: Vec<NormValue> = (1..=6).map(|n| norm(&big(n))).collect();
    let expected = [1u64, 2, 1, 2, 1, 3].map(NormValue::reciprocal);
    steps.push(DemoStep {
        step: "norm table",
        ok: table == expected,
        detail: table.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "),
    });

    let mut ultra = true;
    for _ in 0..200 {
        let (m, n) = (
            big(rng.gen_range(-10_000..=10_000)),
            big(rng.gen_range(-10_000..=10_000)),
        );
        ultra &= norm(&(&m + &n)) <= norm(&m).max(norm(&n));
    }
    steps.push(DemoStep {
        step: "ultrametric inequality",
        ok: ultra,
        detail: "200 random pairs".into(),
    });

    let center = big(rng.gen_range(-1000..=1000));
    let radius = BigRational::new(big(1), big(rng.gen_range(1..=6)));
    let ball = open_ball(&center, &radius).expect("small radius");
    let ok = (-5000..=5000).all(|n| ball.contains(&big(n)) == (norms::dist(&center, &big(n)).to_ratio() < radius));
    steps.push(DemoStep {
        step: "metric balls are progressions",
        ok,
        detail: format!("B({center}, {radius}) = {ball}"),
    });

    let (a, b) = (
        big(rng.gen_range(-1_000_000..=1_000_000)),
        big(rng.gen_range(-1_000_000..=1_000_000)),
    );
    let ok = match separate_points(&a, &b) {
        Ok((first, rest)) => first.contains(&a) && rest.contains(&b) && !rest.contains(&a),
        Err(_) => a == b,
    };
    steps.push(DemoStep {
        step: "total disconnectedness",
        ok,
        detail: format!("split {a} from {b}"),
    });

    let primes: Vec<BigInt> = arith::first_primes(rng.gen_range(1..=8))
        .into_iter()
        .map(BigInt::from)
        .collect();
    let w = euclid_witness(&primes).expect("primes");
    let ok = primes.iter().all(|p| !num_integer::Integer::is_multiple_of(&w, p));
    steps.push(DemoStep {
        step: "Euclid witness",
        ok,
        detail: format!("{w}"),
    });

    let sums = series_partial_sums(&IntegerSequence::telescoping());
    let v = converges_to(&sums, &big(0), 50, 100).unwrap_or(Verdict::Inconclusive { k: 0 });
    steps.push(DemoStep {
        step: "1 + Σ n·n! = 0",
        ok: v.is_verified(),
        detail: v.to_string(),
    });

    let f = IntegerSequence::factorial();
    let (x, y) = (big(rng.gen_range(-50..=50)), big(rng.gen_range(-50..=50)));
    let case = ContinuityCase {
        a: f.offset(x.clone()),
        limit_a: x,
        b: f.offset(y.clone()),
        limit_b: y,
    };
    let ok = check_continuity_products(&[case], 30, 100)
        .map(|v| v[0].all_verified())
        .unwrap_or(false);
    steps.push(DemoStep {
        step: "ring operations are continuous",
        ok,
        detail: "factorial perturbations".into(),
    });

    let ps = arith::first_primes(12);
    let (pa, pb): (Vec<BigInt>, Vec<BigInt>) = {
        let (mut pa, mut pb) = (Vec::new(), Vec::new());
        for p in ps {
            if rng.gen_bool(0.5) {
                pa.push(big(p as i64))
            } else {
                pb.push(big(p as i64))
            }
        }
        if pa.is_empty() {
            pa.push(pb.pop().unwrap())
        }
        if pb.is_empty() {
            pb.push(pa.pop().unwrap())
        }
        (pa, pb)
    };
    let verdict = separation::separate(&pa, &pb)
        .map(|c| separation::verify(&c, 10_000))
        .unwrap_or(CertificateVerdict::Malformed {
            reason: "construction failed".into(),
        });
    steps.push(DemoStep {
        step: "prime sets separated",
        ok: verdict.is_valid(),
        detail: format!("A = {{{}}}, B = {{{}}}", join(&pa), join(&pb)),
    });

    let all_ok = steps.iter().all(|s| s.ok);
    let mut text = format!("seed: {seed}\n");
    for s in &steps {
        text.push_str(&format!(
            "[{}] {}: {}\n",
            if s.ok { "ok" } else { "FAIL" },
            s.step,
            s.detail
        ));
    }
    let payload = json!({ "seed": seed, "steps": to_json(&steps), "ok": all_ok });
    CommandResult::ok(name, payload, text.trim_end().to_string()).with_code(if all_ok { EXIT_OK } else { EXIT_REFUTED })
}
