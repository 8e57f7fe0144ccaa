use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use mut3::{parse_walk_step, run, CliError, InputSpec, RandomSpec, Request, Settings, WalkStep};
use mut3_core::Caps;

/// Mutation classes of 3-vertex quivers.
#[derive(Parser)]
#[command(name = "mut3", version, about)]
struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArgs {
    /// Parameters a b c of the cyclic quiver 2 -a-> 1 -b-> 3 -c-> 2.
    #[arg(num_args = 0..=3, allow_negative_numbers = true)]
    triple: Vec<String>,

    /// Row-major matrix entries separated by commas, semicolons or spaces.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "triple")]
    matrix: Option<String>,
}

impl InputArgs {
    fn spec(&self) -> Result<InputSpec, CliError> {
        match (&self.matrix, self.triple.as_slice()) {
            (Some(m), []) => InputSpec::parse_matrix(m),
            (None, [a, b, c]) => Ok(InputSpec::triple(a, b, c)),
            _ => Err(CliError::Usage(
                "give three parameters a b c or --matrix ENTRIES".into(),
            )),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Decide mutation-cyclic vs mutation-acyclic.
    Classify {
        #[command(flatten)]
        input: InputArgs,
        /// Include the full mutation trace.
        #[arg(long)]
        certificate: bool,
    },
    /// Largest c for which (a, b, c) is mutation-cyclic.
    #[command(allow_negative_numbers = true)]
    Threshold {
        a: String,
        b: String,
        /// Print the verdict for every scanned c.
        #[arg(long)]
        evidence: bool,
    },
    /// Apply a sequence of mutations and print every snapshot.
    Walk {
        #[command(flatten)]
        input: InputArgs,
        /// Mutation vertex (1-based) or `max`; repeatable.
        #[arg(long = "at", allow_negative_numbers = true)]
        at: Vec<String>,
        /// Append this many mutations at the vertex opposite the largest side.
        #[arg(long, action = clap::ArgAction::Count)]
        at_opposite_max: u8,
        /// Append a seeded reduced random walk of this depth.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Breadth-first enumeration of the mutation class.
    Enumerate {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = Caps::default().max_multiplicity)]
        cap_mult: u64,
        #[arg(long, default_value_t = Caps::default().max_nodes)]
        cap_nodes: usize,
        #[arg(long, default_value_t = Caps::default().max_depth)]
        cap_depth: usize,
        /// Write the class graph in Graphviz format.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Terms S_0..S_n of S_{n+2} = a S_{n+1} - S_n.
    #[command(allow_negative_numbers = true)]
    Seq { a: String, n: u64 },
    /// Whether the mutation class is finite.
    Finite {
        #[command(flatten)]
        input: InputArgs,
    },
}

fn request(command: &Command) -> Result<Request, CliError> {
    Ok(match command {
        Command::Classify { input, certificate } => Request::Classify {
            input: input.spec()?,
            certificate: *certificate,
        },
        Command::Threshold { a, b, evidence } => Request::Threshold {
            a: a.clone(),
            b: b.clone(),
            evidence: *evidence,
        },
        Command::Walk {
            input,
            at,
            at_opposite_max,
            random,
            seed,
        } => {
            let mut steps = at.iter().map(|s| parse_walk_step(s)).collect::<Result<Vec<_>, _>>()?;
            steps.extend(std::iter::repeat_n(WalkStep::OppositeMax, *at_opposite_max as usize));
            Request::Walk {
                input: input.spec()?,
                steps,
                random: random.map(|depth| RandomSpec { depth, seed: *seed }),
            }
        }
        Command::Enumerate {
            input,
            cap_mult,
            cap_nodes,
            cap_depth,
            dot,
        } => Request::Enumerate {
            input: input.spec()?,
            caps: Caps {
                max_multiplicity: *cap_mult,
                max_nodes: *cap_nodes,
                max_depth: *cap_depth,
            },
            dot: dot.clone(),
        },
        Command::Seq { a, n } => Request::Seq { a: a.clone(), n: *n },
        Command::Finite { input } => Request::Finite {
            input: input.spec()?,
        },
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = Settings::from_env()
        .and_then(|settings| request(&cli.command).map(|r| (r, settings)))
        .and_then(|(r, settings)| run(&r, &settings));
    match result {
        Ok(report) => {
            if cli.json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.render_text());
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
