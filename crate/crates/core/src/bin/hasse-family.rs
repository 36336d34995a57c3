use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use hasse_family::cubicgeom::real_solvability;
use hasse_family::exactnum::{parse_rational, rat_to_string, BigRational};
use hasse_family::family::{
    build_fiber, fiber_at_infinity, fiber_local_solvability, u_of_t, verify_all, ClaimId, FamilyConfig, ProjValue,
    Verdict, Verifier, FamilyConstants,
};
use hasse_family::jacinv::{jacobian_weierstrass, j_invariant, weierstrass_discriminant};
use hasse_family::polyring::RationalField;

/// Verify the arithmetic of a genus-one family violating the Hasse principle.
#[derive(Parser)]
#[command(name = "hasse-family", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run claim verifications.
    Verify {
        #[command(subcommand)]
        target: Target,
    },
    /// Local solvability certificate for W_u at p.
    Solvable {
        #[arg(long, allow_hyphen_values = true)]
        u: String,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 8)]
        precision: u32,
    },
    /// Weierstrass model of the Jacobian of X_t.
    Jacobian {
        #[arg(long, allow_hyphen_values = true)]
        t: String,
    },
    /// Print the cubic W_u (u may be `inf`).
    Fiber {
        #[arg(long, allow_hyphen_values = true)]
        u: String,
    },
}

#[derive(Subcommand)]
enum Target {
    All(RunArgs),
    Claim {
        /// Claim id, C1 to C14.
        id: String,
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Args)]
struct RunArgs {
    /// Inclusive prime range for sweeps.
    #[arg(long, num_args = 2, value_names = ["P_MIN", "P_MAX"])]
    sweep: Option<Vec<u64>>,
    /// Comma-separated rational t values.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    t_samples: Option<Vec<String>>,
    #[arg(long)]
    precision: Option<u32>,
    #[arg(long)]
    seed: Option<u64>,
    /// Write the JSON certificate here.
    #[arg(long)]
    json: Option<PathBuf>,
    #[arg(long)]
    jobs: Option<usize>,
}

impl RunArgs {
    fn config(&self) -> Result<FamilyConfig, String> {
        let mut c = FamilyConfig::default();
        if let Some(s) = &self.sweep {
            c.p_min = s[0];
            c.p_max = s[1];
        }
        if let Some(ts) = &self.t_samples {
            c.t_samples = ts.iter().map(|t| parse_rational(t)).collect::<Result<_, _>>()?;
        }
        if let Some(n) = self.precision {
            c.precision = n;
        }
        if let Some(s) = self.seed {
            c.seed = s;
        }
        c.jobs = self.jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
        Ok(c)
    }
}

fn write_json(path: &Option<PathBuf>, body: &str) -> Result<(), String> {
    if let Some(p) = path {
        std::fs::write(p, body).map_err(|e| format!("{}: {e}", p.display()))?;
    }
    Ok(())
}

fn code(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Verify { target: Target::All(args) } => {
            let report = verify_all(&args.config()?);
            for c in &report.claims {
                println!("{:<4} {:<16} {} ms", c.id.to_string(), format!("{:?}", c.verdict), c.millis);
            }
            println!("digest {}", report.digest);
            write_json(&args.json, &report.to_json())?;
            Ok(code(report.all_passed()))
        }
        Command::Verify { target: Target::Claim { id, run } } => {
            let id: ClaimId = id.parse()?;
            let mut v = Verifier::new(run.config()?, FamilyConstants::default());
            let r = v.run(id).clone();
            let report = v.report();
            println!("{}", serde_json::to_string_pretty(&r).map_err(|e| e.to_string())?);
            write_json(&run.json, &report.to_json())?;
            Ok(code(matches!(r.verdict, Verdict::Verified | Verdict::AssumedExternal)))
        }
        Command::Solvable { u, p, precision } => {
            let u = parse_rational(&u)?;
            let s = fiber_local_solvability(&u, p, precision).map_err(|e| e.to_string())?;
            let replayed = s.replay();
            let mut v = serde_json::to_value(&s).map_err(|e| e.to_string())?;
            v["replayed"] = json!(replayed);
            println!("{}", serde_json::to_string_pretty(&v).map_err(|e| e.to_string())?);
            Ok(code(s.certificate.is_solvable() && replayed))
        }
        Command::Jacobian { t } => {
            let t: ProjValue = t.parse()?;
            let u = match u_of_t(&t) {
                ProjValue::Finite(u) => u,
                ProjValue::Infinity => return Err(format!("u(t) has a pole at t = {t}")),
            };
            let e = jacobian_weierstrass(&RationalField, &build_fiber(&u)).map_err(|e| e.to_string())?;
            let j = j_invariant(&RationalField, &e).map_err(|e| e.to_string())?;
            let out = json!({
                "t": t.to_string(),
                "u": rat_to_string(&u),
                "a": rat_to_string(&e.a),
                "b": rat_to_string(&e.b),
                "discriminant": rat_to_string(&weierstrass_discriminant(&RationalField, &e)),
                "j": rat_to_string(&j),
            });
            println!("{}", serde_json::to_string_pretty(&out).map_err(|e| e.to_string())?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Fiber { u } => {
            let u: ProjValue = u.parse()?;
            let (cubic, chart) = match &u {
                ProjValue::Finite(q) => (build_fiber(q), "x, y, z"),
                ProjValue::Infinity => (fiber_at_infinity(&RationalField), "x, y, w"),
            };
            let show = |q: &BigRational| rat_to_string(q);
            let out = json!({
                "u": u.to_string(),
                "variables": chart,
                "cubic": cubic.display_with(show, |q| q == &BigRational::default()),
                "coefficients": cubic.coeffs().iter().map(show).collect::<Vec<_>>(),
                "real": real_solvability(&cubic.primitive_integral()),
            });
            println!("{}", serde_json::to_string_pretty(&out).map_err(|e| e.to_string())?);
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
