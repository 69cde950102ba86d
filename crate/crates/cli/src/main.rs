use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use charclose_cli::{run, Failure, Format, Mode, ProblemSpec};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Validate,
    Hasse,
    FrobeniusMember,
    FrobeniusClosure,
    TightMember,
    Oracle,
    SyzygyInfo,
    Search,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Validate => Mode::Validate,
            ModeArg::Hasse => Mode::Hasse,
            ModeArg::FrobeniusMember => Mode::FrobeniusMember,
            ModeArg::FrobeniusClosure => Mode::FrobeniusClosure,
            ModeArg::TightMember => Mode::TightMember,
            ModeArg::Oracle => Mode::Oracle,
            ModeArg::SyzygyInfo => Mode::SyzygyInfo,
            ModeArg::Search => Mode::Search,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

/// Frobenius and tight closure in cones over smooth plane cubics.
#[derive(Debug, Parser)]
#[command(name = "charclose", version)]
struct Args {
    /// Query to run; may come from --problem instead.
    mode: Option<ModeArg>,
    /// JSON problem file (or a previous JSON report). Flags override it.
    #[arg(long)]
    problem: Option<PathBuf>,
    /// Characteristic of the base field.
    #[arg(long)]
    p: Option<u32>,
    /// Homogeneous cubic defining the curve [default: x^3+y^3+z^3].
    #[arg(long)]
    curve: Option<String>,
    /// Ideal generators separated by ';'.
    #[arg(long)]
    ideal: Option<String>,
    #[arg(long)]
    element: Option<String>,
    /// Oracle cap on the Frobenius exponent [default: n + 1].
    #[arg(long = "emax")]
    e_max: Option<u32>,
    /// Largest total degree any intermediate polynomial may reach.
    #[arg(long)]
    degree_cap: Option<u64>,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    #[arg(long)]
    seed: Option<u64>,
    /// Twist m for syzygy-info.
    #[arg(long, allow_hyphen_values = true)]
    twist: Option<i64>,
    /// Frobenius exponent of the pull-back shown by syzygy-info.
    #[arg(long)]
    pullback: Option<u32>,
    /// Number of random ideals drawn by search.
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    min_generators: Option<usize>,
    #[arg(long)]
    max_generators: Option<usize>,
    /// Largest generator degree drawn by search.
    #[arg(long)]
    max_degree: Option<u32>,
}

impl Args {
    fn into_spec(self) -> Result<ProblemSpec, Failure> {
        let mut spec = match &self.problem {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
                ProblemSpec::from_json(&text)?
            }
            None => ProblemSpec::default(),
        };
        if let Some(m) = self.mode {
            spec.mode = Some(m.into());
        }
        if self.p.is_some() {
            spec.p = self.p;
        }
        if let Some(c) = self.curve {
            spec.curve = c;
        }
        if let Some(i) = self.ideal {
            spec.ideal = i
                .split(';')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(String::from)
                .collect();
        }
        if self.element.is_some() {
            spec.element = self.element;
        }
        if self.e_max.is_some() {
            spec.e_max = self.e_max;
        }
        if self.degree_cap.is_some() {
            spec.degree_cap = self.degree_cap;
        }
        if let Some(f) = self.format {
            spec.format = match f {
                FormatArg::Text => Format::Text,
                FormatArg::Json => Format::Json,
            };
        }
        if let Some(s) = self.seed {
            spec.seed = s;
        }
        if let Some(t) = self.twist {
            spec.twist = t;
        }
        if self.pullback.is_some() {
            spec.pullback = self.pullback;
        }
        if let Some(v) = self.samples {
            spec.samples = v;
        }
        if let Some(v) = self.min_generators {
            spec.min_generators = v;
        }
        if let Some(v) = self.max_generators {
            spec.max_generators = v;
        }
        if let Some(v) = self.max_degree {
            spec.max_degree = v;
        }
        Ok(spec)
    }
}

fn main() -> ExitCode {
    let spec = match Args::parse().into_spec() {
        Ok(spec) => spec,
        Err(f) => {
            eprintln!("error ({}): {}", f.kind, f.message);
            return ExitCode::from(f.code as u8);
        }
    };
    let outcome = run(&spec);
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    ExitCode::from(outcome.code as u8)
}
