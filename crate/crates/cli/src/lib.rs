//! Command dispatch for the `logiprob` binary.
//!
//! Every subcommand produces a [`CommandReport`]; the binary prints its
//! payload and exits 0 exactly when the status is ok. Rationals print as
//! `p/q` followed by a 12-digit decimal.

mod descriptor;

use std::fmt::Write as _;
use std::io::Read;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use logiprob::bernoulli::{
    coverage, lln_bound, range_prob, simulate_frequencies, RangeSpec, TestSequence,
};
use logiprob::bfunc::{parse_distribution, BFunction};
use logiprob::classical::{classical_probability, CompleteSet};
use logiprob::decimal::exact_and_decimal;
use logiprob::logic::{
    check_deduction, eval, falsifying_valuation, is_tautology, synthesize_proof, Sentence,
    SynthError, Valuation,
};
use logiprob::qnum::{
    filter_membership_with, infinitely_close, part_frequency, q_classify, q_equal, q_less,
    DEFAULT_HORIZON,
};
use logiprob::syntax::{format_proof, format_sentence, parse_proof, parse_with, AtomTable};
use logiprob::{parse_rational, Rational};

pub use descriptor::{parse_index_set, parse_qnumber};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Error,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandReport {
    pub status: Status,
    pub payload: String,
}

impl CommandReport {
    fn ok(payload: String) -> Self {
        CommandReport { status: Status::Ok, payload }
    }

    fn error(payload: String) -> Self {
        CommandReport { status: Status::Error, payload }
    }

    pub fn is_ok(&self) -> bool {
        self.status == Status::Ok
    }

    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Ok => 0,
            Status::Error => 1,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "logiprob", version, about = "Probability valuations over propositional logic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug)]
struct AtomOrder {
    /// Comma-separated atom order (default: order of first appearance)
    #[arg(long, value_delimiter = ',')]
    atoms: Vec<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a formula in one world
    Eval {
        formula: String,
        /// Truth values of the atoms, e.g. 101
        #[arg(long)]
        world: String,
        #[command(flatten)]
        order: AtomOrder,
    },
    /// Decide whether a formula is a tautology
    Taut { formula: String },
    /// Synthesize an A1-A3 proof of a tautology
    Prove {
        formula: String,
        #[command(flatten)]
        order: AtomOrder,
    },
    /// Check a proof file (`-` for stdin)
    Check { file: String },
    /// Probability of a formula under a distribution file
    Prob {
        formula: String,
        #[arg(long)]
        dist: String,
        #[command(flatten)]
        order: AtomOrder,
    },
    /// Conditional probability b(B / C)
    Cond {
        b: String,
        c: String,
        #[arg(long)]
        dist: String,
        #[command(flatten)]
        order: AtomOrder,
    },
    /// Bernoulli probabilities of r independent tests
    Bernoulli {
        #[arg(long)]
        r: usize,
        /// Exact success count; omit for the full table
        #[arg(long, conflicts_with_all = ["a", "b"])]
        k: Option<usize>,
        /// Lower bound of a success-count range
        #[arg(long, requires = "b", allow_hyphen_values = true)]
        a: Option<String>,
        /// Upper bound of a success-count range
        #[arg(long, requires = "a", allow_hyphen_values = true)]
        b: Option<String>,
        #[arg(long)]
        p: String,
    },
    /// Large-number bound with optional simulated coverage
    Lln {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        p: String,
        #[arg(long)]
        eps: String,
        #[arg(long, default_value_t = 0)]
        trials: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Classical m/n probability over a complete set file
    Classical {
        #[arg(long)]
        set: String,
        #[arg(long)]
        event: String,
        #[command(flatten)]
        order: AtomOrder,
    },
    /// Index-set frequencies and Q-number verdicts
    Qnum {
        #[command(subcommand)]
        command: QnumCommand,
    },
}

#[derive(Subcommand, Debug)]
enum QnumCommand {
    /// Part-set frequency |A ∩ {1..n}| / n
    Freq {
        set: String,
        #[arg(long)]
        n: u64,
    },
    /// Membership of an index set in the density-one filter
    Member {
        set: String,
        #[arg(long, default_value_t = DEFAULT_HORIZON)]
        horizon: u64,
    },
    /// Term x_n of a sequence
    Value {
        x: String,
        #[arg(long)]
        n: u64,
    },
    /// Q-equality
    Equal {
        x: String,
        y: String,
        #[arg(long, default_value_t = DEFAULT_HORIZON)]
        horizon: u64,
    },
    /// Q-order x < y
    Less {
        x: String,
        y: String,
        #[arg(long, default_value_t = DEFAULT_HORIZON)]
        horizon: u64,
    },
    /// Infinitesimal / infinite / appreciable classification
    Classify {
        x: String,
        #[arg(long, default_value_t = DEFAULT_HORIZON)]
        horizon: u64,
    },
    /// Whether x and y are infinitely close
    Close {
        x: String,
        y: String,
        #[arg(long, default_value_t = DEFAULT_HORIZON)]
        horizon: u64,
    },
}

/// Parses `args` (program name first) and runs the command. `stdin` is read
/// only when a file argument is `-`.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> CommandReport
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CommandReport::error(text)
            } else {
                CommandReport::ok(text)
            };
        }
    };
    match dispatch(cli.command, stdin) {
        Ok(payload) => CommandReport::ok(payload),
        Err(e) => CommandReport::error(format!("error: {e:#}\n")),
    }
}

fn read_input(path: &str, stdin: &mut dyn Read) -> Result<String> {
    if path == "-" {
        let mut text = String::new();
        stdin.read_to_string(&mut text).context("reading stdin")?;
        Ok(text)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {path}"))
    }
}

fn rational(text: &str, what: &str) -> Result<Rational> {
    parse_rational(text).ok_or_else(|| anyhow!("{what}: expected p/q, got `{text}`"))
}

fn atom_table(order: &AtomOrder) -> Result<AtomTable> {
    Ok(AtomTable::with_names(order.atoms.iter().map(|s| s.trim()))?)
}

/// Parses formulas into one shared atom table. With an explicit `--atoms`
/// list, any other atom is an error.
fn parse_formulas(texts: &[&str], order: &AtomOrder) -> Result<(Vec<Sentence>, AtomTable)> {
    let mut table = atom_table(order)?;
    let fixed = !order.atoms.is_empty();
    let declared = table.len();
    let mut out = Vec::new();
    for text in texts {
        let s = parse_with(text, &mut table).map_err(|e| anyhow!("`{text}`: {e}"))?;
        if fixed && table.len() > declared {
            bail!("`{text}` uses atom `{}` missing from --atoms", table.names()[declared]);
        }
        out.push(s);
    }
    Ok((out, table))
}

fn atoms_line(table: &AtomTable) -> String {
    format!("atoms: {}\n", table.names().join(" "))
}

fn load_distribution(path: &str, stdin: &mut dyn Read) -> Result<BFunction> {
    let text = read_input(path, stdin)?;
    parse_distribution(&text, None).with_context(|| format!("distribution {path}"))
}

fn dispatch(command: Command, stdin: &mut dyn Read) -> Result<String> {
    match command {
        Command::Eval { formula, world, order } => {
            let (s, table) = parse_formulas(&[&formula], &order)?;
            let v = Valuation::parse(&world)?;
            if v.len() < table.len() {
                bail!("world has {} bits, formula needs {}", v.len(), table.len());
            }
            let value = eval(&s[0], &v)?;
            Ok(format!("{}value: {}\n", atoms_line(&table), value))
        }
        Command::Taut { formula } => {
            let (s, table) = parse_formulas(&[&formula], &AtomOrder { atoms: vec![] })?;
            let mut out = atoms_line(&table);
            let s = &s[0];
            if is_tautology(s) {
                out.push_str("tautology: yes\n");
            } else {
                out.push_str("tautology: no\n");
                if let Some(v) = falsifying_valuation(s) {
                    let bits: String = v.to_string().chars().take(table.len()).collect();
                    writeln!(out, "falsified-by: {bits}")?;
                }
            }
            Ok(out)
        }
        Command::Prove { formula, order } => {
            let (s, table) = parse_formulas(&[&formula], &order)?;
            let d = synthesize_proof(&s[0]).map_err(|e| match e {
                SynthError::NotTautology => anyhow!("not a tautology"),
                other => anyhow!("{other}"),
            })?;
            Ok(format!("# {}{}", atoms_line(&table), format_proof(&d, &table)))
        }
        Command::Check { file } => {
            let text = read_input(&file, stdin)?;
            let mut table = AtomTable::new();
            let d = parse_proof(&text, &mut table)?;
            check_deduction(&d).map_err(|e| anyhow!("invalid proof: {e}"))?;
            Ok(format!(
                "valid: yes\nlines: {}\nhypotheses: {}\nconclusion: {}\n",
                d.lines.len(),
                d.hypotheses.len(),
                format_sentence(&d.goal, &table)
            ))
        }
        Command::Prob { formula, dist, order } => {
            let (s, table) = parse_formulas(&[&formula], &order)?;
            let bf = load_distribution(&dist, stdin)?;
            let p = bf.b_eval(&s[0])?;
            Ok(format!("{}probability: {}\n", atoms_line(&table), exact_and_decimal(&p)))
        }
        Command::Cond { b, c, dist, order } => {
            let (s, table) = parse_formulas(&[&b, &c], &order)?;
            let bf = load_distribution(&dist, stdin)?;
            let p = bf.conditional_prob(&s[0], &s[1])?;
            Ok(format!("{}probability: {}\n", atoms_line(&table), exact_and_decimal(&p)))
        }
        Command::Bernoulli { r, k, a, b, p } => {
            let p = rational(&p, "--p")?;
            let mut out = String::new();
            let row = |out: &mut String, k: usize| -> Result<()> {
                let k_r = Rational::from_integer(k.into());
                let prob = range_prob(r, &k_r, &k_r, &p)?;
                writeln!(out, "{k}  {}", exact_and_decimal(&prob).replacen(' ', "  ", 1))?;
                Ok(())
            };
            match (k, a, b) {
                (Some(k), _, _) => {
                    if k > r {
                        bail!("k = {k} exceeds r = {r}");
                    }
                    row(&mut out, k)?
                }
                (None, Some(a), Some(b)) => {
                    let (a, b) = (rational(&a, "--a")?, rational(&b, "--b")?);
                    let prob = range_prob(r, &a, &b, &p)?;
                    match RangeSpec::new(r, a, b) {
                        Ok(spec) => writeln!(out, "range: {}..={}", spec.k, spec.l)?,
                        Err(_) => writeln!(out, "range: empty")?,
                    }
                    writeln!(out, "probability: {}", exact_and_decimal(&prob))?;
                }
                _ => {
                    if r == 0 {
                        bail!("r must be at least 1");
                    }
                    for k in 0..=r {
                        row(&mut out, k)?;
                    }
                }
            }
            Ok(out)
        }
        Command::Lln { r, p, eps, trials, seed } => {
            let p = rational(&p, "--p")?;
            let eps = rational(&eps, "--eps")?;
            let bound = lln_bound(r, &p, &eps)?;
            let r_q = Rational::from_integer(r.into());
            let lo = &r_q * (&p - &eps);
            let hi = &r_q * (&p + &eps);
            let prob = range_prob(r, &lo, &hi, &p)?;
            let mut out = String::new();
            writeln!(out, "r: {r}")?;
            writeln!(out, "bound: {}", exact_and_decimal(&bound))?;
            writeln!(out, "exact_prob: {}", exact_and_decimal(&prob))?;
            if trials > 0 {
                let ts = TestSequence::atoms(r, p.clone())?;
                let freqs = simulate_frequencies(&ts, trials, seed)?;
                let hits = coverage(&freqs, &p, &eps);
                let cov = Rational::new(hits.into(), trials.into());
                writeln!(out, "empirical_coverage: {}", exact_and_decimal(&cov))?;
            } else {
                writeln!(out, "empirical_coverage: -")?;
            }
            writeln!(out, "trials: {trials}")?;
            writeln!(out, "seed: {seed}")?;
            Ok(out)
        }
        Command::Classical { set, event, order } => {
            let text = read_input(&set, stdin)?;
            let lines: Vec<&str> = text
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .collect();
            let mut all = lines.clone();
            all.push(&event);
            let (mut sentences, table) = parse_formulas(&all, &order)?;
            let a = sentences.pop().expect("event parsed");
            let cs = CompleteSet::new(sentences)?;
            let outcome = classical_probability(&a, &cs)?;
            Ok(format!(
                "{}{} {} {}\n",
                atoms_line(&table),
                outcome.favorable,
                outcome.total,
                exact_and_decimal(&outcome.probability())
            ))
        }
        Command::Qnum { command } => qnum(command),
    }
}

fn qnum(command: QnumCommand) -> Result<String> {
    let out = match command {
        QnumCommand::Freq { set, n } => {
            let a = parse_index_set(&set)?;
            format!("frequency: {}\n", exact_and_decimal(&part_frequency(&a, n)?))
        }
        QnumCommand::Member { set, horizon } => {
            format!("member: {}\n", filter_membership_with(&parse_index_set(&set)?, horizon))
        }
        QnumCommand::Value { x, n } => {
            if n == 0 {
                bail!("indices start at 1");
            }
            format!("value: {}\n", exact_and_decimal(&parse_qnumber(&x)?.value(n)))
        }
        QnumCommand::Equal { x, y, horizon } => {
            format!("equal: {}\n", q_equal(&parse_qnumber(&x)?, &parse_qnumber(&y)?, horizon))
        }
        QnumCommand::Less { x, y, horizon } => {
            format!("less: {}\n", q_less(&parse_qnumber(&x)?, &parse_qnumber(&y)?, horizon))
        }
        QnumCommand::Classify { x, horizon } => {
            format!("class: {}\n", q_classify(&parse_qnumber(&x)?, horizon))
        }
        QnumCommand::Close { x, y, horizon } => {
            let v = infinitely_close(&parse_qnumber(&x)?, &parse_qnumber(&y)?, horizon);
            format!("close: {v}\n")
        }
    };
    Ok(out)
}
