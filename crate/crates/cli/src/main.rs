use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ess_core::io::{
    format_value, render_pmf, render_profile, render_table1, InputKind, InputRecord, ProfileReport,
};
use ess_core::{
    ess_continuous_closed_form, ess_continuous_quadrature, ess_profile, parse_alpha_list,
    renyi_entropy, shannon_entropy, table1_alphas, verify_chain_identity, Alpha, DensitySpec,
    EssError, Pmf, Result,
};

#[derive(Parser)]
#[command(
    name = "ess",
    version,
    about = "Effective support size of probability distributions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct PmfArgs {
    /// Probabilities as a literal ("0.7,0.3") or @path to a file
    #[arg(long)]
    pmf: String,
    /// Divide the weights by their sum
    #[arg(long)]
    normalize: bool,
    /// Treat the input as observed counts (implies --normalize)
    #[arg(long)]
    counts: bool,
}

impl PmfArgs {
    fn load(&self) -> Result<Pmf> {
        let kind = if self.counts {
            InputKind::Counts
        } else {
            InputKind::Pmf
        };
        InputRecord::load(kind, &self.pmf)?.into_pmf(self.normalize)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Ess of a pmf at one or more orders
    Compute {
        #[command(flatten)]
        input: PmfArgs,
        /// Comma-separated orders; `1` is the Shannon limit, `inf` the min-entropy limit
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        /// Emit {pmf, alphas, ess} as JSON
        #[arg(long)]
        json: bool,
    },
    /// Ess profile of a pmf over a list of orders
    Profile {
        #[command(flatten)]
        input: PmfArgs,
        /// Comma-separated orders, or `table1` for 0.001,0.1,0.5,0.9,1,1.5,2,10,inf
        #[arg(long, allow_hyphen_values = true)]
        alphas: String,
        #[arg(long)]
        json: bool,
    },
    /// Two-point pmf table [q, 1-q] for q = 0.5..1.0 at nine orders
    Table1,
    /// Mean-conditional Ess of a joint table vs. the weighted geometric mean
    Joint {
        /// CSV joint table, rows indexed by X
        #[arg(long)]
        file: String,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long)]
        json: bool,
    },
    /// Ess of a continuous density
    Dist {
        #[arg(long, value_enum)]
        family: Family,
        /// Family parameters, e.g. mu=0,sigma2=1 | beta=2 | lo=0,hi=2
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        params: String,
        /// Two-column CSV x,f(x) for --family grid
        #[arg(long)]
        file: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        /// Integrate numerically instead of using the closed form
        #[arg(long)]
        quadrature: bool,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Shannon entropy, or Rényi entropy with --alpha, in nats
    Entropy {
        #[command(flatten)]
        input: PmfArgs,
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Gaussian,
    Exponential,
    Uniform,
    Grid,
}

fn parse_params(text: &str) -> Result<Vec<(String, f64)>> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|kv| {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| EssError::Parse(format!("expected key=value, got '{kv}'")))?;
            let v = v
                .trim()
                .parse::<f64>()
                .map_err(|_| EssError::Parse(format!("invalid value for '{}': '{v}'", k.trim())))?;
            Ok((k.trim().to_ascii_lowercase(), v))
        })
        .collect()
}

fn build_density(family: Family, params: &str, file: Option<&str>) -> Result<DensitySpec> {
    let params = parse_params(params)?;
    let allowed: &[&str] = match family {
        Family::Gaussian => &["mu", "sigma2", "sigma"],
        Family::Exponential => &["beta"],
        Family::Uniform => &["lo", "hi"],
        Family::Grid => &[],
    };
    if let Some((k, _)) = params.iter().find(|(k, _)| !allowed.contains(&k.as_str())) {
        return Err(EssError::Parse(format!("unknown parameter '{k}'")));
    }
    let get = |key: &str| params.iter().find(|(k, _)| k == key).map(|&(_, v)| v);
    let need =
        |key: &str| get(key).ok_or_else(|| EssError::Parse(format!("missing parameter '{key}'")));
    match family {
        Family::Gaussian => {
            let sigma2 = match (get("sigma2"), get("sigma")) {
                (Some(_), Some(_)) => {
                    return Err(EssError::Parse("give sigma2 or sigma, not both".into()))
                }
                (Some(s2), None) => s2,
                (None, Some(s)) => s * s,
                (None, None) => return Err(EssError::Parse("missing parameter 'sigma2'".into())),
            };
            DensitySpec::gaussian(get("mu").unwrap_or(0.0), sigma2)
        }
        Family::Exponential => DensitySpec::exponential(need("beta")?),
        Family::Uniform => DensitySpec::uniform(need("lo")?, need("hi")?),
        Family::Grid => {
            let file = file.ok_or_else(|| EssError::Parse("--family grid needs --file".into()))?;
            let arg = if file.starts_with('@') {
                file.to_string()
            } else {
                format!("@{file}")
            };
            InputRecord::load(InputKind::GridDensity, &arg)?.into_density()
        }
    }
}

fn single_alpha(text: &str) -> Result<Alpha> {
    text.parse()
}

fn to_json<T: serde::Serialize>(v: &T) -> Result<String> {
    serde_json::to_string_pretty(v).map_err(|e| EssError::Io(e.to_string()))
}

fn run(cli: Cli) -> Result<String> {
    match cli.command {
        Command::Compute { input, alpha, json } => {
            let p = input.load()?;
            let prof = ess_profile(&p, &parse_alpha_list(&alpha)?)?;
            if json {
                to_json(&ProfileReport::new(&p, &prof))
            } else {
                Ok(render_profile(&p, &prof))
            }
        }
        Command::Profile {
            input,
            alphas,
            json,
        } => {
            let p = input.load()?;
            let alphas = if alphas.trim().eq_ignore_ascii_case("table1") {
                table1_alphas()
            } else {
                parse_alpha_list(&alphas)?
            };
            let prof = ess_profile(&p, &alphas)?;
            if json {
                to_json(&ProfileReport::new(&p, &prof))
            } else {
                Ok(render_profile(&p, &prof))
            }
        }
        Command::Table1 => Ok(render_table1()),
        Command::Joint { file, alpha, json } => {
            let arg = if file.starts_with('@') {
                file
            } else {
                format!("@{file}")
            };
            let j = InputRecord::load(InputKind::Joint, &arg)?.into_joint()?;
            let report = verify_chain_identity(&j, single_alpha(&alpha)?);
            if json {
                to_json(&report)
            } else {
                Ok(format!(
                    "alpha         {}\nlhs           {}\nrhs_geometric {}\nabs_gap       {:.6e}\n",
                    report.alpha,
                    format_value(report.lhs),
                    format_value(report.rhs_geometric),
                    report.abs_gap
                ))
            }
        }
        Command::Dist {
            family,
            params,
            file,
            alpha,
            quadrature,
            tol,
        } => {
            let d = build_density(family, &params, file.as_deref())?;
            let a = single_alpha(&alpha)?;
            let v = if quadrature || matches!(d, DensitySpec::Grid(_)) {
                ess_continuous_quadrature(&d, a, None, tol)?
            } else {
                ess_continuous_closed_form(&d, a)?
            };
            Ok(format!("{}\n", format_value(v)))
        }
        Command::Entropy { input, alpha } => {
            let p = input.load()?;
            let h = match alpha {
                Some(a) => renyi_entropy(&p, single_alpha(&a)?),
                None => shannon_entropy(&p),
            };
            Ok(format!(
                "pmf = [{}]\n{} nats\n",
                render_pmf(&p),
                format_value(h)
            ))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            if !out.ends_with('\n') {
                println!();
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("ess: {e}");
            ExitCode::FAILURE
        }
    }
}
