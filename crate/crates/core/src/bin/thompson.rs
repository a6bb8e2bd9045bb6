use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use thompson::diagram::word_to_diagram;
use thompson::metric::{self, GenSet};
use thompson::presentation::{finite_relators, infinite_relators};
use thompson::{rewrite, torsion, Dyadic, Error, MarkedPair, PcqForm, Tree, Word};

/// Exact computation in Thompson's groups F and T.
///
/// Words are whitespace-separated letters `x<i>` or `c<i>` with an optional
/// `^<exponent>`, e.g. "x0^-1 c1 x3 c3^2 x1^-1". The rightmost letter acts
/// first. The identity prints as `1`.
#[derive(Parser)]
#[command(name = "thompson", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Normal form of a word.
    Nf {
        word: String,
        /// Also run the algebraic rewriting and the analytic map check.
        #[arg(long)]
        verify: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Product of two words (the second acts first).
    Mul {
        left: String,
        right: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Inverse of a word.
    Inv {
        word: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Whether two words define the same element.
    Eq { left: String, right: String },
    /// Caret count N, the D functional, and word length by search.
    Len {
        word: String,
        #[arg(long, default_value = "x0x1c1")]
        gens: GenSet,
        #[arg(long, default_value_t = 8)]
        radius: usize,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// CSV of lengths in F and T over the F-ball of a radius.
    Distortion {
        #[arg(long, default_value_t = 8)]
        radius: usize,
        /// Generating set for lengths in T.
        #[arg(long, default_value = "x0x1c0")]
        gens: GenSet,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// CSV of rotations a/2^n: 2-adic size, carets, word length.
    Rotation {
        #[arg(long, default_value_t = 6)]
        max_n: u32,
        #[arg(long, default_value_t = 8)]
        radius: usize,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Order of an element, or `>bound`.
    Order {
        word: String,
        #[arg(long, default_value_t = 64)]
        max_order: u64,
    },
    /// Balanced diagram (E, E, shift) of a torsion element.
    Balanced {
        word: String,
        #[arg(long, default_value_t = 4096)]
        cap: usize,
    },
    /// Positive p with g = p c_i^j p^-1 for a torsion element g.
    Conjugator {
        word: String,
        #[arg(long, default_value_t = 4096)]
        cap: usize,
    },
    /// Image of a point of the circle, e.g. `3/4`, `3/2^2` or `0`.
    Eval { word: String, point: String },
    /// Graphviz rendering of the reduced diagram of a word, or of a tree.
    Render {
        word: Option<String>,
        #[arg(long, conflicts_with = "word")]
        tree: Option<String>,
    },
    /// Checks every relator of both presentations on diagrams and maps.
    Selfcheck {
        #[arg(long, default_value_t = 8)]
        max_index: u32,
    },
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Syntax { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

type Outcome = Result<String, Failure>;

fn parse_word(text: &str) -> Result<Word, Failure> {
    text.parse::<Word>().map_err(|e| Failure::Usage(format!("bad word `{text}`: {e}")))
}

fn show(form: &PcqForm) -> String {
    if form.is_identity() {
        "1".into()
    } else {
        form.to_string()
    }
}

fn element_output(g: &MarkedPair, format: Format) -> String {
    match format {
        Format::Text => show(&g.pcq_factorization()),
        Format::Json => json!({ "normal_form": show(&g.pcq_factorization()), "diagram": g }).to_string(),
        Format::Dot => g.to_dot().trim_end().to_string(),
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Nf { word, verify, format } => {
            let word = parse_word(&word)?;
            if !verify {
                return Ok(element_output(&word_to_diagram(&word), format));
            }
            let v = rewrite::normal_form_verified(&word);
            let algebraic = match (&v.algebraic, &v.algebraic_error) {
                (Some(f), _) => show(f),
                (None, Some(e)) => format!("error: {e}"),
                (None, None) => "pump budget exhausted".into(),
            };
            let text = match format {
                Format::Json => json!({
                    "normal_form": show(&v.form),
                    "algebraic": algebraic,
                    "algebraic_agrees": v.algebraic_agrees(),
                    "oracle_agrees": v.oracle_agrees,
                })
                .to_string(),
                _ => format!(
                    "{}\nalgebraic: {algebraic} ({})\noracle: {}",
                    show(&v.form),
                    if v.algebraic_agrees() { "agrees" } else { "differs" },
                    if v.oracle_agrees { "agrees" } else { "differs" }
                ),
            };
            if v.ok() {
                Ok(text)
            } else {
                Err(Failure::Domain(format!("{text}\nverification failed")))
            }
        }
        Command::Mul { left, right, format } => {
            let g = word_to_diagram(&parse_word(&left)?).multiply(&word_to_diagram(&parse_word(&right)?));
            Ok(element_output(&g, format))
        }
        Command::Inv { word, format } => Ok(element_output(&word_to_diagram(&parse_word(&word)?).invert(), format)),
        Command::Eq { left, right } => {
            let (a, b) = (word_to_diagram(&parse_word(&left)?), word_to_diagram(&parse_word(&right)?));
            Ok(a.equals(&b).to_string())
        }
        Command::Len { word, gens, radius, jobs } => {
            let g = word_to_diagram(&parse_word(&word)?);
            let length = match metric::bfs_length_with(&g, gens, radius, jobs)? {
                Some(n) => format!("length={n}"),
                None => format!("length>{radius}"),
            };
            Ok(format!("N={}\nD={}\n{length}", g.carets(), metric::d_value(&g.pcq_factorization())))
        }
        Command::Distortion { radius, gens, jobs } => {
            let report = metric::distortion_report(radius, gens, jobs)?;
            eprintln!(
                "radius {}: {} elements, {} violations, max lenF/lenT {:.3}, max N/lenT {:.3}",
                report.radius,
                report.rows.len(),
                report.violations,
                report.max_len_ratio,
                report.max_caret_ratio
            );
            Ok(report.to_csv().trim_end().to_string())
        }
        Command::Rotation { max_n, radius, jobs } => {
            Ok(metric::rotation_csv(&metric::rotation_qie_report(max_n, radius, jobs)?).trim_end().to_string())
        }
        Command::Order { word, max_order } => {
            let g = word_to_diagram(&parse_word(&word)?);
            Ok(match torsion::order(&g, max_order) {
                Some(m) => m.to_string(),
                None => format!(">{max_order}"),
            })
        }
        Command::Balanced { word, cap } => {
            let g = word_to_diagram(&parse_word(&word)?);
            Ok(match torsion::balanced_form(&g, cap) {
                Some(b) => format!("tree={}\nshift={}\norder={}\nsteps={}", b.tree, b.shift, b.order, b.steps),
                None => format!("none: exceeds caret cap {cap}"),
            })
        }
        Command::Conjugator { word, cap } => {
            let g = word_to_diagram(&parse_word(&word)?);
            Ok(match torsion::conjugator(&g, cap) {
                Some((p, _, 0)) if p.is_empty() => "p=1\nc=1".into(),
                Some((p, i, j)) => {
                    let p_text = if p.is_empty() { "1".to_string() } else { p.to_string() };
                    let c = if j == 1 { format!("c{i}") } else { format!("c{i}^{j}") };
                    format!("p={p_text}\nc={c}")
                }
                None => format!("none: exceeds caret cap {cap}"),
            })
        }
        Command::Eval { word, point } => {
            let g = word_to_diagram(&parse_word(&word)?);
            let t: Dyadic = point.parse().map_err(|e| Failure::Usage(format!("bad point `{point}`: {e}")))?;
            if !t.is_on_circle() {
                return Err(Failure::Domain(format!("point {point} is not in [0, 1)")));
            }
            Ok(g.to_plmap().eval(&t).to_fraction_string())
        }
        Command::Render { word, tree } => match (word, tree) {
            (_, Some(tree)) => {
                let tree: Tree = tree.parse().map_err(|e| Failure::Usage(format!("bad tree: {e}")))?;
                Ok(tree.to_dot().trim_end().to_string())
            }
            (Some(word), None) => Ok(word_to_diagram(&parse_word(&word)?).to_dot().trim_end().to_string()),
            (None, None) => Err(Failure::Usage("render needs a word or --tree".into())),
        },
        Command::Selfcheck { max_index } => {
            let mut lines = Vec::new();
            let mut failed = 0;
            let groups = [("finite", finite_relators()), ("infinite", infinite_relators(max_index))];
            for (name, relators) in &groups {
                let bad: Vec<_> = relators.iter().filter(|r| !r.check().passed()).collect();
                for r in &bad {
                    lines.push(format!("FAIL {name}: {}", r.name));
                }
                failed += bad.len();
                lines.push(format!("{name}: {}/{} relators pass", relators.len() - bad.len(), relators.len()));
            }
            let text = lines.join("\n");
            if failed == 0 {
                Ok(text)
            } else {
                Err(Failure::Domain(text))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(text) => {
            // a closed pipe (e.g. `| head`) is not an error
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Domain(message)) => {
            eprintln!("{message}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
