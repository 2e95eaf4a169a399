//! Command-line front end. Every command prints `key = value` lines, or a
//! single JSON object with the same keys under `--emit json`.

use std::cmp::Ordering;
use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::{Signed, ToPrimitive};
use serde_json::{Map, Value};

use sturmlex::lexmap::F;
use sturmlex::oracle::{brute_F, brute_phi, SweepConfig};
use sturmlex::{
    central_from_slope, characteristic_sturmian_prefix, classify, is_central, mech_lower, mech_periodic, mech_upper,
    pal, palindromic_closure, parse_rational, phi_prefix, phi_sturmian, phi_zero_u, verify_phi, BinaryWord,
    CentralCertificate, Classification, DirectiveSpec, Error, EventuallyPeriodicSeq, PhiResult, PrefixDecision,
    Rational,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_INSUFFICIENT: i32 = 2;

/// Letters shown for symbolic (aperiodic) answers.
const SYMBOLIC_PREFIX_LEN: usize = 32;

#[derive(Parser, Debug)]
#[command(
    name = "sturmlex",
    version,
    about = "Exact central words, palindromic closure and the map phi"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Emit::Text, global = true)]
    emit: Emit,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Emit {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Iterated palindromic closure Pal(WORD).
    Pal { word: String },
    /// Shortest palindrome with WORD as a prefix.
    Closure { word: String },
    /// Recognize a central word and print its certificate.
    CentralCheck { word: String },
    /// The central word of slope P/Q.
    CentralMake { slope: String },
    /// Letters of the lower (or upper) mechanical sequence.
    Mech {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        rho: String,
        #[arg(long)]
        upper: bool,
        #[arg(short = 'n')]
        n: usize,
    },
    /// Prefix of the characteristic Sturmian sequence Pal(directive).
    SturmianPrefix {
        #[arg(long)]
        directive: String,
        #[arg(short = 'n')]
        n: usize,
    },
    /// Classify a sequence u for the phi case split.
    Classify { seq: String },
    /// phi(0u) for an eventually periodic u, or symbolically for a directive.
    Phi {
        seq: String,
        /// Cross-check against the brute-force oracle with this maximal period.
        #[arg(long, value_name = "Q")]
        check: Option<usize>,
        /// Read SEQ as a directive sequence; u is then Pal(SEQ).
        #[arg(long)]
        directive: bool,
    },
    /// phi(0u) for every u beginning with WORD, when WORD forces it.
    PhiPrefix { word: String },
    /// Minimal right endpoint F(x).
    #[command(name = "F")]
    F {
        x: String,
        #[arg(long, value_name = "Q")]
        check: Option<usize>,
    },
    /// Check that B satisfies the inequalities characterizing phi(0U).
    Verify { u: String, b: String },
    /// Brute-force reference computations.
    Oracle {
        #[command(subcommand)]
        command: OracleCommand,
    },
}

#[derive(Subcommand, Debug)]
enum OracleCommand {
    /// phi(0u) by exhaustive search over periodic sequences.
    Phi {
        seq: String,
        #[arg(long, value_name = "Q")]
        max_period: usize,
    },
}

/// Ordered `key = value` facts produced by a command.
#[derive(Default)]
struct Report {
    facts: Vec<(&'static str, String)>,
    exit: i32,
}

impl Report {
    fn put(&mut self, key: &'static str, value: impl ToString) -> &mut Self {
        self.facts.push((key, value.to_string()));
        self
    }

    fn render(&self, emit: Emit) -> String {
        match emit {
            Emit::Text => self.facts.iter().map(|(k, v)| format!("{k} = {v}\n")).collect(),
            Emit::Json => {
                let mut map = Map::new();
                for (k, v) in &self.facts {
                    let value = match v.as_str() {
                        "true" => Value::Bool(true),
                        "false" => Value::Bool(false),
                        _ => Value::String(v.clone()),
                    };
                    map.insert((*k).to_string(), value);
                }
                format!("{}\n", Value::Object(map))
            }
        }
    }
}

/// Parses `argv` (including the program name), runs the command and writes
/// its output. Returns the process exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(report) => {
            let _ = stdout.write_all(report.render(cli.emit).as_bytes());
            report.exit
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_ERROR
        }
    }
}

fn word(text: &str) -> Result<BinaryWord, Error> {
    text.parse()
}

fn sequence(text: &str) -> Result<EventuallyPeriodicSeq, Error> {
    text.parse()
}

fn unit_rational(text: &str) -> Result<Rational, Error> {
    let x = parse_rational(text)?;
    if x.is_negative() || x > Rational::from_integer(1.into()) {
        return Err(Error::Domain(format!("{text} is outside [0, 1]")));
    }
    Ok(x)
}

fn fraction_parts(x: &Rational) -> Result<(u64, u64), Error> {
    match (x.numer().to_u64(), x.denom().to_u64()) {
        (Some(p), Some(q)) => Ok((p, q)),
        _ => Err(Error::Domain(format!("{x} is out of range"))),
    }
}

/// "P/Q" taken literally, so a non-reduced pair is rejected rather than reduced.
fn slope_parts(text: &str) -> Result<(u64, u64), Error> {
    let (p, q) = text.split_once('/').ok_or_else(|| Error::Parse {
        position: 0,
        message: format!("expected P/Q, got {text:?}"),
    })?;
    let number = |s: &str, at: usize| {
        s.parse::<u64>().map_err(|_| Error::Parse {
            position: at,
            message: format!("{s:?} is not a nonnegative integer"),
        })
    };
    Ok((number(p, 0)?, number(q, p.len() + 1)?))
}

fn sweep(max_period: usize) -> SweepConfig {
    SweepConfig::with_max_period(max_period)
}

fn ordering_label(o: Ordering) -> &'static str {
    match o {
        Ordering::Less => "less",
        Ordering::Equal => "equal",
        Ordering::Greater => "greater",
    }
}

fn put_certificate(r: &mut Report, cert: &CentralCertificate) {
    let (l1, l2) = cert.periods();
    r.put("w", cert.word())
        .put("p", cert.p())
        .put("q", cert.q())
        .put("periods", format!("{l1},{l2}"))
        .put("directive", cert.directive());
    if let Some((w1, w2)) = cert.factorization() {
        r.put("w1", w1).put("w2", w2);
    }
}

fn put_phi(r: &mut Report, res: &PhiResult) {
    r.put("phi", &res.phi).put("case", res.case);
    if let Some(cert) = &res.central {
        r.put("central", cert.word());
    }
    if let Some(v) = &res.longest_central_prefix {
        r.put("longest_central_prefix", v);
    }
}

fn execute(command: &Command) -> Result<Report, Error> {
    let mut r = Report::default();
    match command {
        Command::Pal { word: text } => {
            r.put("pal", pal(&word(text)?));
        }
        Command::Closure { word: text } => {
            r.put("closure", palindromic_closure(&word(text)?));
        }
        Command::CentralCheck { word: text } => match is_central(&word(text)?) {
            Some(cert) => {
                r.put("central", true);
                put_certificate(&mut r, &cert);
            }
            None => {
                r.put("central", false);
            }
        },
        Command::CentralMake { slope } => {
            let (p, q) = slope_parts(slope)?;
            put_certificate(&mut r, &central_from_slope(p, q)?);
        }
        Command::Mech { alpha, rho, upper, n } => {
            let alpha = unit_rational(alpha)?;
            let rho = unit_rational(rho)?;
            let letters: Vec<u8> = (0..*n as u64)
                .map(|k| {
                    if *upper {
                        mech_upper(&alpha, &rho, k)
                    } else {
                        mech_lower(&alpha, &rho, k)
                    }
                })
                .collect::<Result<_, _>>()?;
            let (p, q) = fraction_parts(&alpha)?;
            r.put("prefix", BinaryWord::from_bits(letters)?)
                .put("sequence", mech_periodic(p, q, &rho, *upper)?);
        }
        Command::SturmianPrefix { directive, n } => {
            let delta = DirectiveSpec::new(sequence(directive)?)?;
            let (head, tail) = delta.slope_cf();
            r.put("prefix", characteristic_sturmian_prefix(&delta, *n)?)
                .put("slope_cf", format_periodic_cf(&head, &tail));
        }
        Command::Classify { seq } => {
            let u = sequence(seq)?;
            let class = classify(&u);
            r.put("class", class.label());
            if let Classification::CharacteristicPeriodicBalanced { p, q, variant } = class {
                r.put("p", p).put("q", q).put("variant", variant);
            }
        }
        Command::Phi {
            seq,
            check,
            directive: true,
        } => {
            if check.is_some() {
                return Err(Error::Domain(
                    "--check needs an eventually periodic u, not a directive".into(),
                ));
            }
            let s = phi_sturmian(&sequence(seq)?)?;
            r.put("symbolic", s.symbolic())
                .put("case", s.case())
                .put("prefix", s.prefix(SYMBOLIC_PREFIX_LEN))
                .put("slope_cf", format_periodic_cf(&s.slope_cf.0, &s.slope_cf.1));
        }
        Command::Phi {
            seq,
            check,
            directive: false,
        } => {
            let u = sequence(seq)?;
            let res = phi_zero_u(&u)?;
            put_phi(&mut r, &res);
            r.put("verified", verify_phi(&u, &res.phi).passed);
            if let Some(q) = check {
                let agrees = brute_phi(&u, &sweep(*q))? == res.phi;
                r.put("oracle_agrees", agrees);
                if !agrees {
                    r.exit = EXIT_ERROR;
                }
            }
        }
        Command::PhiPrefix { word: text } => match phi_prefix(&word(text)?)? {
            PrefixDecision::Decided(res) => {
                r.put("decided", true);
                put_phi(&mut r, &res);
            }
            PrefixDecision::Insufficient(reason) => {
                r.put("decided", false).put("reason", reason);
                r.exit = EXIT_INSUFFICIENT;
            }
        },
        Command::F { x, check } => {
            let x = unit_rational(x)?;
            let res = F(&x)?;
            r.put("F", &res.f)
                .put("case", res.case.label())
                .put("expansion", &res.phi_expansion);
            if let Some(cert) = &res.central {
                r.put("central", cert.word());
            }
            if let Some(o) = res.comparison_to_x_plus_half {
                r.put("compared_to_x_plus_half", ordering_label(o));
            }
            r.put("verified", res.verified);
            if let Some(q) = check {
                let agrees = brute_F(&x, &sweep(*q))? == res.f;
                r.put("oracle_agrees", agrees);
                if !agrees {
                    r.exit = EXIT_ERROR;
                }
            }
        }
        Command::Verify { u, b } => {
            let (u, b) = (sequence(u)?, sequence(b)?);
            let report = verify_phi(&u, &b);
            r.put("passed", report.passed).put("comparisons", report.comparisons);
            if let Some(v) = &report.violation {
                r.put("violation", v.kind.label())
                    .put("shift", v.shift)
                    .put("shifted", &v.shifted);
            }
        }
        Command::Oracle {
            command: OracleCommand::Phi { seq, max_period },
        } => {
            let u = sequence(seq)?;
            r.put("phi", brute_phi(&u, &sweep(*max_period))?)
                .put("max_period", max_period);
        }
    }
    Ok(r)
}

fn format_periodic_cf(head: &[u64], tail: &[u64]) -> String {
    let join = |d: &[u64]| d.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
    format!("[0;{},({})]", join(head), join(tail))
}
