use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crosscap::abelianize::h1;
use crosscap::closed::{ConjugatorFixtures, Status};
use crosscap::enumerate::{todd_coxeter, TableStatus};
use crosscap::presentation::nonorientable_mcg_presentation;
use crosscap::rep_homology::{Coeff, HomologyRep};
use crosscap::rep_pi1::Pi1Rep;
use crosscap::replay::{replay, verify_endpoints, DerivationScript, RelationLookup};
use crosscap::verify::{surface_presentation, verify_presentation, verify_surface, VerifyOptions};
use crosscap::{Error, Presentation, Word};

#[derive(Parser)]
#[command(
    name = "crosscap",
    version,
    about = "Mapping class group presentations of nonorientable surfaces"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone, Copy)]
struct Surface {
    /// Number of crosscaps.
    #[arg(short = 'g', long)]
    genus: usize,
    /// Number of boundary components.
    #[arg(short = 'n', long, default_value_t = 0)]
    boundary: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Cas,
    Csv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the presentation of M(N_{g,n}).
    Present {
        #[command(flatten)]
        s: Surface,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Always use the main-theorem builder, even for small genus.
        #[arg(long)]
        main: bool,
    },
    /// Check every relator (and the derived catalogue) in the representations.
    Verify {
        #[command(flatten)]
        s: Surface,
        /// Restrict to the given tiers (repeatable).
        #[arg(long = "tier")]
        tiers: Vec<u8>,
        /// Conjugator search radius for tier 3.
        #[arg(long)]
        radius: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Verify the relators of a presentation JSON file instead of the built-in one.
        #[arg(long)]
        relators: Option<PathBuf>,
        /// Skip the derived-relation catalogue.
        #[arg(long)]
        presentation_only: bool,
        #[arg(long, default_value = "fixtures/conjugators.json")]
        fixtures: PathBuf,
        /// Rewrite the conjugator fixtures from this run and print the diff.
        #[arg(long)]
        refresh_fixtures: bool,
        /// Append per-relator timings to text output.
        #[arg(long)]
        timings: bool,
    },
    /// First homology of the group via Smith normal form.
    Abelianize {
        #[command(flatten)]
        s: Surface,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Todd-Coxeter coset enumeration.
    Enumerate {
        #[command(flatten)]
        s: Surface,
        /// Subgroup generator words (repeatable); the trivial subgroup by default.
        #[arg(long = "subgroup")]
        subgroup: Vec<String>,
        #[arg(long, default_value_t = crosscap::enumerate::DEFAULT_MAX_COSETS)]
        max_cosets: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Replay derivation scripts and check their endpoints.
    Replay {
        #[arg(required = true)]
        scripts: Vec<PathBuf>,
    },
    /// Print generator images in the free group or on homology.
    DumpImages {
        #[arg(short = 'g', long)]
        genus: usize,
        #[arg(long, value_enum, default_value = "pi1")]
        rep: Rep,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Rep {
    Pi1,
    F2,
    Z,
}

enum Outcome {
    Ok,
    Failed,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Failed) => ExitCode::from(1),
        Err(e @ Error::StepMismatch { .. }) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Cmd) -> crosscap::Result<Outcome> {
    match cmd {
        Cmd::Present { s, format, main } => {
            let p = if main {
                nonorientable_mcg_presentation(s.genus, s.boundary)?
            } else {
                surface_presentation(s.genus, s.boundary)?
            };
            out(&emit_presentation(&p, format)?);
            Ok(Outcome::Ok)
        }
        Cmd::Verify {
            s,
            tiers,
            radius,
            format,
            relators,
            presentation_only,
            fixtures,
            refresh_fixtures,
            timings,
        } => {
            if let Some(t) = tiers.iter().find(|t| !(1..=3).contains(*t)) {
                return Err(Error::Domain(format!(
                    "unknown tier {t}; expected 1, 2 or 3"
                )));
            }
            let stored = ConjugatorFixtures::load(&fixtures)?;
            let opts = VerifyOptions {
                tiers,
                radius,
                fixtures: (!refresh_fixtures).then(|| stored.clone()),
                presentation_only,
            };
            let mut report = match &relators {
                Some(path) => verify_presentation(
                    &Presentation::from_json(&std::fs::read_to_string(path)?)?,
                    &opts,
                )?,
                None => verify_surface(s.genus, s.boundary, &opts)?,
            };
            if refresh_fixtures {
                let mut fx = stored;
                report.fixture_diff = report.refresh_fixtures(&mut fx);
                fx.save(&fixtures)?;
            }
            match format {
                Format::Json => outln(&report.to_json()),
                _ => out(&report.to_text(timings)),
            }
            Ok(if report.is_success() {
                Outcome::Ok
            } else {
                Outcome::Failed
            })
        }
        Cmd::Abelianize { s, format } => {
            let r = h1(&surface_presentation(s.genus, s.boundary)?)?;
            match format {
                Format::Json => outln(&r.to_json()),
                _ => outln(&r.to_string()),
            }
            Ok(Outcome::Ok)
        }
        Cmd::Enumerate {
            s,
            subgroup,
            max_cosets,
            format,
        } => {
            let p = surface_presentation(s.genus, s.boundary)?;
            let h = subgroup
                .iter()
                .map(|t| t.parse())
                .collect::<crosscap::Result<Vec<Word>>>()?;
            let table = todd_coxeter(&p, &h, max_cosets)?;
            match (format, table.status) {
                (Format::Csv, TableStatus::Closed) => out(&table.to_csv()),
                (_, TableStatus::Closed) => {
                    let what = if h.is_empty() { "order" } else { "index" };
                    outln(&format!("{what} {}", table.rows.len()));
                }
                (_, TableStatus::CapExceeded) => {
                    outln(&format!("coset limit {max_cosets} exceeded"));
                    return Ok(Outcome::Failed);
                }
                (_, TableStatus::Open) => {
                    outln("enumeration did not close");
                    return Ok(Outcome::Failed);
                }
            }
            Ok(Outcome::Ok)
        }
        Cmd::Replay { scripts } => {
            let mut ok = true;
            for path in &scripts {
                ok &= replay_one(path)?;
            }
            Ok(if ok { Outcome::Ok } else { Outcome::Failed })
        }
        Cmd::DumpImages { genus, rep } => {
            match rep {
                Rep::Pi1 => out(&Pi1Rep::new(genus)?.dump()),
                Rep::F2 | Rep::Z => {
                    let coeff = if matches!(rep, Rep::F2) {
                        Coeff::F2
                    } else {
                        Coeff::Z
                    };
                    let hr = HomologyRep::new(genus, coeff)?;
                    for (gen, m) in hr.generators() {
                        outln(&format!("{gen}:\n{m}"));
                    }
                }
            }
            Ok(Outcome::Ok)
        }
    }
}

fn emit_presentation(p: &Presentation, format: Format) -> crosscap::Result<String> {
    Ok(match format {
        Format::Text => p.to_text(),
        Format::Json => p.to_json(),
        Format::Cas => p.to_cas(),
        Format::Csv => {
            return Err(Error::Domain(
                "csv output is only available for enumerate".into(),
            ))
        }
    })
}

fn replay_one(path: &Path) -> crosscap::Result<bool> {
    let script = DerivationScript::load(path)?;
    let lookup = RelationLookup::for_surface(script.genus, script.boundary)?;
    if let Err(e) = replay(&script, &lookup) {
        outln(&format!("{}: replay failed: {e}", path.display()));
        return Ok(false);
    }
    let check = verify_endpoints(&script, &lookup)?;
    let verified = check.status == Status::Verified;
    outln(&format!(
        "{}: {} steps replayed, endpoints {:?}",
        path.display(),
        script.steps.len(),
        check.status
    ));
    Ok(verified)
}

/// Writes to stdout, ignoring a closed pipe.
fn out(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn outln(text: &str) {
    out(&format!("{text}\n"));
}
