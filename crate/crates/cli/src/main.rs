use std::collections::{BTreeSet, HashMap};
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use whittaker_core::repdata::{
    compute_piu, derivative_subquotients, parse_character_value, parse_rep, ResidueCardinality,
    UnramifiedLanglandsRep,
};
use whittaker_core::ringcore::{euler_expand, rational_from_i64, Rational, Scalar};
use whittaker_core::rseng::{
    cauchy_check, l_factor, verify_essential_with, EngineOptions, VerificationReport, DEFAULT_DEGREE,
};
use whittaker_core::symfunc::{schur_with, Partition, SchurAlgorithm};
use whittaker_core::whitfun::{essential_value, spherical_value, Integrality, TorusWeight};
use whittaker_core::{Error, Result};

#[derive(Parser, Debug)]
#[command(name = "whittaker", version, about = "Exact Whittaker function and Rankin-Selberg computations")]
struct Cli {
    /// Seed for the random substitution check run after `verify` and `cauchy`.
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct DegreeArg {
    /// Truncation order D of the t-expansion.
    #[arg(long, env = "WHITTAKER_DEGREE")]
    degree: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Schur polynomial in the variables x1, ..., xN.
    Schur {
        #[arg(long)]
        partition: String,
        #[arg(long)]
        vars: usize,
        #[arg(long, value_enum, default_value = "jacobi-trudi")]
        algorithm: AlgorithmArg,
    },
    /// Spherical Whittaker function on a torus element.
    Spherical {
        #[arg(long)]
        satake: String,
        #[arg(long)]
        weight: String,
    },
    /// Essential Whittaker function on diag(a, 1).
    Essential {
        #[arg(long)]
        rep: PathBuf,
        #[arg(long)]
        weight: String,
    },
    /// Euler roots and expansion of L(pi, pi', s).
    Lfactor {
        #[arg(long)]
        rep: PathBuf,
        #[arg(long)]
        satake_prime: Option<String>,
        #[command(flatten)]
        degree: DegreeArg,
    },
    /// Compares the Rankin-Selberg expansion with L(pi, pi', s).
    Verify {
        #[arg(long)]
        rep: PathBuf,
        #[arg(long)]
        satake_prime: Option<String>,
        #[command(flatten)]
        degree: DegreeArg,
        #[arg(long, hide = true)]
        drop_integrality_indicator: bool,
    },
    /// Unramified identity with symbolic z1..zN and w1..wM.
    Cauchy {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        degree: DegreeArg,
    },
    /// Subquotients of a Bernstein-Zelevinsky derivative.
    Derivatives {
        #[arg(long)]
        rep: PathBuf,
        #[arg(long)]
        order: usize,
    },
}

#[derive(clap::ValueEnum, Clone, Copy, Debug)]
enum AlgorithmArg {
    JacobiTrudi,
    Bialternant,
}

enum Outcome {
    Done,
    Mismatch,
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::InvariantViolation(_) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::Mismatch) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}

fn read_config(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
}

fn parse_partition(text: &str) -> Result<Partition> {
    let parts = text
        .split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            p.trim()
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("`{p}` is not a part size")))
        })
        .collect::<Result<Vec<_>>>()?;
    Partition::new(parts)
}

fn parse_values(text: &str, q: &ResidueCardinality) -> Result<Vec<Scalar>> {
    text.split(',').map(|p| parse_character_value(p, q)).collect()
}

/// `--satake-prime` wins over the config's `pi_prime` field.
fn satake_prime(flag: Option<&str>, config: &Value, q: &ResidueCardinality) -> Result<UnramifiedLanglandsRep> {
    let values = match (flag, config.get("pi_prime")) {
        (Some(text), _) => parse_values(text, q)?,
        (None, Some(Value::Array(items))) => items
            .iter()
            .map(|v| match v {
                Value::String(s) => parse_character_value(s, q),
                Value::Number(n) => parse_character_value(&n.to_string(), q),
                _ => Err(Error::Config("`pi_prime` entries must be strings".into())),
            })
            .collect::<Result<Vec<_>>>()?,
        (None, Some(_)) => return Err(Error::Config("`pi_prime` must be a list".into())),
        (None, None) => return Err(Error::Config("no --satake-prime and no `pi_prime` in config".into())),
    };
    UnramifiedLanglandsRep::new(values)
}

/// Flag or environment first, then the config's `degree`, then the default.
fn degree(arg: &DegreeArg, config: Option<&Value>) -> Result<usize> {
    if let Some(d) = arg.degree {
        return Ok(d);
    }
    match config.and_then(|c| c.get("degree")) {
        None => Ok(DEFAULT_DEGREE),
        Some(v) => v
            .as_u64()
            .map(|d| d as usize)
            .ok_or_else(|| Error::Config("`degree` must be a nonnegative integer".into())),
    }
}

fn symbols(prefix: &str, count: usize) -> Vec<Scalar> {
    (1..=count).map(|i| Scalar::var(&format!("{prefix}{i}"))).collect()
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Schur {
            partition,
            vars,
            algorithm,
        } => {
            let lambda = parse_partition(partition)?;
            let alg = match algorithm {
                AlgorithmArg::JacobiTrudi => SchurAlgorithm::JacobiTrudi,
                AlgorithmArg::Bialternant => SchurAlgorithm::Bialternant,
            };
            println!("{}", schur_with(&lambda, &symbols("x", *vars), alg)?.value);
        }
        Command::Spherical { satake, weight } => {
            let satake = parse_values(satake, &ResidueCardinality::Symbolic)?;
            println!("{}", spherical_value(&satake, &TorusWeight::parse(weight)?)?);
        }
        Command::Essential { rep, weight } => {
            let rep = parse_rep(&read_config(rep)?)?;
            println!("{}", essential_value(&rep, &TorusWeight::parse(weight)?)?);
        }
        Command::Lfactor {
            rep,
            satake_prime: flag,
            degree: d,
        } => {
            let config = read_config(rep)?;
            let rep = parse_rep(&config)?;
            let pi_prime = satake_prime(flag.as_deref(), &config, rep.q())?;
            let order = degree(d, Some(&config))?;
            let factor = l_factor(&rep, &pi_prime);
            let roots: Vec<String> = factor.roots().iter().map(Scalar::to_string).collect();
            println!("roots: [{}]", roots.join(", "));
            println!("L = {factor}");
            println!("  = {}", euler_expand(&factor, order));
        }
        Command::Verify {
            rep,
            satake_prime: flag,
            degree: d,
            drop_integrality_indicator,
        } => {
            let config = read_config(rep)?;
            let rep = parse_rep(&config)?;
            let pi_prime = satake_prime(flag.as_deref(), &config, rep.q())?;
            let order = degree(d, Some(&config))?;
            let options = EngineOptions {
                integrality: if *drop_integrality_indicator {
                    Integrality::Dropped
                } else {
                    Integrality::Enforced
                },
                ..EngineOptions::default()
            };
            let report = verify_essential_with(&rep, &pi_prime, order, &options)?;
            print!("{report}");
            if !report.pass {
                return Ok(Outcome::Mismatch);
            }
            if let Some(seed) = cli.seed {
                let recompute = |values: &HashMap<String, Rational>| {
                    let bound_rep = rep.bind(values)?;
                    let bound_prime = bind_list(pi_prime.satake(), values)?;
                    verify_essential_with(&bound_rep, &bound_prime, order, &options)
                };
                substitution_check(seed, &report, recompute)?;
            }
        }
        Command::Cauchy { n, m, degree: d } => {
            let order = degree(d, None)?;
            let pi = UnramifiedLanglandsRep::new(symbols("z", *n))?;
            let pi_prime = UnramifiedLanglandsRep::new(symbols("w", *m))?;
            let report = cauchy_check(&pi, &pi_prime, order)?;
            print!("{report}");
            if !report.pass {
                return Ok(Outcome::Mismatch);
            }
            if let Some(seed) = cli.seed {
                let recompute = |values: &HashMap<String, Rational>| {
                    cauchy_check(&bind_list(pi.satake(), values)?, &bind_list(pi_prime.satake(), values)?, order)
                };
                substitution_check(seed, &report, recompute)?;
            }
        }
        Command::Derivatives { rep, order } => {
            let rep = parse_rep(&read_config(rep)?)?;
            let terms = derivative_subquotients(&rep, *order)?;
            let piu = compute_piu(&rep);
            println!("pi = {rep}");
            println!("n = {}, r = {}, order = {}", rep.n(), piu.r, order);
            for term in &terms {
                println!("{term}");
            }
            if *order == rep.n() - piu.r {
                let params: Vec<String> = piu.params.iter().map(Scalar::to_string).collect();
                println!("unramified part: ({})", params.join(", "));
            }
        }
    }
    Ok(Outcome::Done)
}

fn bind_list(values: &[Scalar], bindings: &HashMap<String, Rational>) -> Result<UnramifiedLanglandsRep> {
    let bound = values
        .iter()
        .map(|v| match v.as_single_var().and_then(|x| bindings.get(&*x.name())) {
            Some(r) => Scalar::from_rational(r.clone()),
            None => v.clone(),
        })
        .collect();
    UnramifiedLanglandsRep::new(bound)
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    let mut num = rng.gen_range(1..=9);
    if rng.gen_bool(0.5) {
        num = -num;
    }
    rational_from_i64(num) / rational_from_i64(rng.gen_range(1..=7))
}

/// Binds every parameter to a random rational, recomputes with the numeric
/// values, and checks that evaluating the symbolic series agrees with
/// evaluating the numeric one.
fn substitution_check<F>(seed: u64, report: &VerificationReport, recompute: F) -> Result<()>
where
    F: Fn(&HashMap<String, Rational>) -> Result<VerificationReport>,
{
    let names: BTreeSet<String> = report
        .lhs_series
        .coeffs()
        .iter()
        .chain(report.rhs_series.coeffs())
        .flat_map(Scalar::vars)
        .filter(|v| !v.is_u())
        .map(|v| v.name().to_string())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut values: HashMap<String, Rational> =
        names.iter().map(|n| (n.clone(), random_rational(&mut rng))).collect();
    let u_value = random_rational(&mut rng);
    let numeric = recompute(&values)?;
    values.insert("u".into(), u_value);
    let pairs = [
        (&report.lhs_series, &numeric.lhs_series),
        (&report.rhs_series, &numeric.rhs_series),
    ];
    for (symbolic, bound) in pairs {
        for (k, (a, b)) in symbolic.coeffs().iter().zip(bound.coeffs()).enumerate() {
            if a.substitute(&values)? != b.substitute(&values)? {
                return Err(Error::InvariantViolation(format!(
                    "symbolic and numeric evaluation disagree at t^{k} (seed {seed})"
                )));
            }
        }
    }
    let mut shown: Vec<String> = names.iter().map(|n| format!("{n} = {}", values[n])).collect();
    shown.push(format!("u = {}", values["u"]));
    println!("substitution check (seed {seed}): PASS [{}]", shown.join(", "));
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_parsing() {
        assert_eq!(parse_partition("2,1").unwrap().parts(), &[2, 1]);
        assert_eq!(parse_partition("").unwrap(), Partition::empty());
        assert!(parse_partition("1,2").is_err());
        assert!(parse_partition("a").is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::InvariantViolation("x".into())), 3);
        assert_eq!(exit_code(&Error::NotGeneric(0, 1)), 2);
        assert_eq!(exit_code(&Error::Config("x".into())), 2);
    }

    #[test]
    fn generator_is_reproducible() {
        let draw = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..5).map(|_| random_rational(&mut rng)).collect::<Vec<_>>()
        };
        assert_eq!(draw(11), draw(11));
        assert!(draw(11).iter().all(|r| *r != rational_from_i64(0)));
    }
}
