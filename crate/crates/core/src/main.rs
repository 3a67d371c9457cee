use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rayon::prelude::*;

use heavenly::classifier::{ClassifyOptions, Status};
use heavenly::document::{classify_document, OutputDocument};
use heavenly::error::Error;
use heavenly::factor::factor_over_q;
use heavenly::knowledgebase::{all_axioms, render_report};
use heavenly::numberfield::{
    ramification_report, splitting_tower, BaseField, FieldTower, KPoly, DEFAULT_DEGREE_CAP,
};
use heavenly::poly::{squarefree_part, UniPoly};
use heavenly::verifier::{run_selected, LEMMA_IDS};

const EXIT_OK: u8 = 0;
const EXIT_FAILED: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_CAP: u8 = 3;

#[derive(Parser)]
#[command(name = "heavenly", version, about = "Certificates for 2-torsion fields of elliptic curves and abelian surfaces")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Re-run the lemma suite.
    Verify {
        /// Run only these lemmas (repeatable).
        #[arg(long)]
        only: Vec<String>,
        /// Print reports as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Classify an input document, or every `*.json` in a directory.
    Classify {
        path: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, conflicts_with = "path")]
        dir: Option<PathBuf>,
        #[arg(long, requires = "dir")]
        out_dir: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_DEGREE_CAP)]
        degree_cap: usize,
        /// Human-readable summary instead of JSON.
        #[arg(long)]
        text: bool,
    },
    /// Re-verify an output document.
    Replay { path: PathBuf },
    /// Print the axiom table.
    Axioms {
        #[arg(long)]
        json: bool,
    },
    /// Algebra utilities.
    Tool {
        #[command(subcommand)]
        tool: Tool,
    },
}

#[derive(Subcommand)]
enum Tool {
    /// Factor a rational polynomial.
    Factor { poly: String },
    /// Degree of the splitting field over a base field.
    SplittingDegree {
        poly: String,
        #[arg(long, default_value = "Q")]
        base: String,
        #[arg(long, default_value_t = DEFAULT_DEGREE_CAP)]
        degree_cap: usize,
    },
    /// Odd primes ramified in the field defined by an irreducible polynomial.
    Ramification { poly: String },
    /// Print the axiom table.
    Axioms {
        #[arg(long)]
        json: bool,
    },
}

fn code_for(e: &Error) -> u8 {
    match e {
        Error::ResourceCap { .. } => EXIT_CAP,
        Error::Internal(_) => EXIT_FAILED,
        _ => EXIT_INVALID,
    }
}

fn fail(e: Error) -> u8 {
    eprintln!("error: {e}");
    code_for(&e)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.cmd {
        Cmd::Verify { only, json } => cmd_verify(&only, json),
        Cmd::Classify {
            path,
            out,
            dir,
            out_dir,
            degree_cap,
            text,
        } => {
            let opts = ClassifyOptions { degree_cap };
            match (path, dir) {
                (Some(p), None) => cmd_classify(&p, out.as_deref(), &opts, text),
                (None, Some(d)) => cmd_classify_dir(&d, out_dir.as_deref(), &opts),
                _ => {
                    eprintln!("error: give an input path or --dir");
                    EXIT_INVALID
                }
            }
        }
        Cmd::Replay { path } => cmd_replay(&path),
        Cmd::Axioms { json } | Cmd::Tool { tool: Tool::Axioms { json } } => cmd_axioms(json),
        Cmd::Tool { tool } => cmd_tool(tool),
    };
    ExitCode::from(code)
}

fn cmd_verify(only: &[String], json: bool) -> u8 {
    let ids: Vec<&str> = if only.is_empty() {
        LEMMA_IDS.to_vec()
    } else {
        only.iter().map(String::as_str).collect()
    };
    let reports = match run_selected(&ids) {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    if json {
        println!("{}", serde_json::to_string_pretty(&reports).expect("serializable"));
    } else {
        for r in &reports {
            print!("{}", r.render());
        }
        let passed = reports.iter().filter(|r| r.passed).count();
        println!("{passed}/{} lemmas passed", reports.len());
    }
    if reports.iter().all(|r| r.passed) {
        EXIT_OK
    } else {
        EXIT_FAILED
    }
}

/// Writes via a sibling temporary file and a rename.
fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let name = path.file_name().and_then(|n| n.to_str()).unwrap_or("out");
    let tmp = path.with_file_name(format!(".{name}.tmp-{}", std::process::id()));
    fs::write(&tmp, contents)?;
    fs::rename(&tmp, path)
}

fn classify_file(path: &Path, opts: &ClassifyOptions) -> Result<OutputDocument, Error> {
    let text = fs::read_to_string(path).map_err(|e| Error::invalid(format!("{}: {e}", path.display())))?;
    classify_document(&text, opts)
}

fn verdict_code(doc: &OutputDocument) -> u8 {
    if doc.verdict.status == Status::Unknown && doc.verdict.resource_cap.is_some() {
        EXIT_CAP
    } else {
        EXIT_OK
    }
}

fn cmd_classify(path: &Path, out: Option<&Path>, opts: &ClassifyOptions, text: bool) -> u8 {
    let doc = match classify_file(path, opts) {
        Ok(d) => d,
        Err(e) => return fail(e),
    };
    let rendered = if text { doc.verdict.render() } else { doc.to_json() };
    match out {
        Some(o) => {
            if let Err(e) = write_atomic(o, &rendered) {
                eprintln!("error: {}: {e}", o.display());
                return EXIT_INVALID;
            }
        }
        None => print!("{rendered}"),
    }
    verdict_code(&doc)
}

fn cmd_classify_dir(dir: &Path, out_dir: Option<&Path>, opts: &ClassifyOptions) -> u8 {
    let mut files: Vec<PathBuf> = match fs::read_dir(dir) {
        Ok(rd) => rd
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .filter(|p| !p.to_string_lossy().ends_with(".verdict.json"))
            .collect(),
        Err(e) => {
            eprintln!("error: {}: {e}", dir.display());
            return EXIT_INVALID;
        }
    };
    files.sort();
    let out_dir = out_dir.unwrap_or(dir);
    if let Err(e) = fs::create_dir_all(out_dir) {
        eprintln!("error: {}: {e}", out_dir.display());
        return EXIT_INVALID;
    }
    let codes: Vec<(PathBuf, u8, String)> = files
        .par_iter()
        .map(|p| match classify_file(p, opts) {
            Ok(doc) => {
                let stem = p.file_stem().and_then(|s| s.to_str()).unwrap_or("input");
                let target = out_dir.join(format!("{stem}.verdict.json"));
                match write_atomic(&target, &doc.to_json()) {
                    Ok(()) => (p.clone(), verdict_code(&doc), status_of(&doc)),
                    Err(e) => (p.clone(), EXIT_INVALID, format!("write failed: {e}")),
                }
            }
            Err(e) => (p.clone(), code_for(&e), format!("error: {e}")),
        })
        .collect();
    for (p, _, msg) in &codes {
        println!("{}: {msg}", p.display());
    }
    let worst = |c: u8| codes.iter().any(|x| x.1 == c);
    if worst(EXIT_INVALID) {
        EXIT_INVALID
    } else if worst(EXIT_FAILED) {
        EXIT_FAILED
    } else if worst(EXIT_CAP) {
        EXIT_CAP
    } else {
        EXIT_OK
    }
}

fn status_of(doc: &OutputDocument) -> String {
    heavenly::classifier::status_str(doc.verdict.status).to_string()
}

fn cmd_replay(path: &Path) -> u8 {
    let doc = match fs::read_to_string(path)
        .map_err(|e| Error::invalid(format!("{}: {e}", path.display())))
        .and_then(|t| OutputDocument::parse(&t))
    {
        Ok(d) => d,
        Err(e) => return fail(e),
    };
    match doc.replay() {
        Ok(r) => {
            for c in &r.checks {
                println!("{:?} {}: {}", c.outcome, c.name, c.detail);
            }
            println!("consistent: {}", r.consistent);
            if r.consistent {
                EXIT_OK
            } else {
                EXIT_FAILED
            }
        }
        Err(e) => fail(e),
    }
}

fn cmd_axioms(json: bool) -> u8 {
    if json {
        println!("{}", serde_json::to_string_pretty(all_axioms()).expect("serializable"));
    } else {
        print!("{}", render_report());
    }
    EXIT_OK
}

fn parse_poly(s: &str) -> Result<UniPoly, Error> {
    let f: UniPoly = s.parse()?;
    if f.is_constant() {
        return Err(Error::invalid("expected a nonconstant polynomial"));
    }
    Ok(f)
}

fn cmd_tool(tool: Tool) -> u8 {
    let r: Result<(), Error> = (|| {
        match tool {
            Tool::Factor { poly } => {
                let f = parse_poly(&poly)?;
                let fac = factor_over_q(&f)?;
                println!("constant: {}", heavenly::arith::rat_to_string(&fac.constant));
                for (g, e) in &fac.factors {
                    if *e == 1 {
                        println!("{g}");
                    } else {
                        println!("({g})^{e}");
                    }
                }
            }
            Tool::SplittingDegree {
                poly,
                base,
                degree_cap,
            } => {
                let f = squarefree_part(&parse_poly(&poly)?)?;
                let k = FieldTower::base(BaseField::parse(&base)?);
                let s = splitting_tower(&KPoly::from_rational(&f), &k, degree_cap)?;
                println!("{}", s.relative_degree());
            }
            Tool::Ramification { poly } => {
                let f = parse_poly(&poly)?;
                let fac = factor_over_q(&f)?;
                if !fac.is_irreducible() {
                    return Err(Error::invalid(format!("`{f}` is not irreducible over Q")));
                }
                let base = FieldTower::rational();
                let k = heavenly::numberfield::extend(&base, &KPoly::from_rational(&f))?;
                let rep = ramification_report(&k)?;
                let ps: Vec<String> = rep.ramified_primes().iter().map(ToString::to_string).collect();
                println!("{{{}}}", ps.join(", "));
                for e in &rep.evidence {
                    println!(
                        "  p = {}: v_p(disc) = {}, index valuation {:?}, {:?}, ramified = {}",
                        e.prime, e.poly_disc_valuation, e.index_valuation, e.method, e.ramified
                    );
                }
            }
            Tool::Axioms { .. } => unreachable!("handled above"),
        }
        Ok(())
    })();
    match r {
        Ok(()) => EXIT_OK,
        Err(e) => fail(e),
    }
}
