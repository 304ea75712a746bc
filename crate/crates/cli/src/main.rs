use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use toriq::analysis::analyze;
use toriq::circle;
use toriq::cohomology::ClassicalRing;
use toriq::examples;
use toriq::expr::{parse_expr, parse_int_vector};
use toriq::io;
use toriq::oracle;
use toriq::polytope::DelzantPolytope;
use toriq::quantum::{class_repr, fmt_class, QClass, QuantumPresentation};
use toriq::rational::{fmt_rat, parse_rat, Rat};
use toriq::seidel;
use toriq::{Error, Result};

#[derive(Parser)]
#[command(name = "toriq", version, about = "Quantum cohomology and Seidel elements of toric manifolds")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Fano,
    Nef,
}

#[derive(clap::Args)]
struct QuantumOpts {
    #[arg(long, value_enum, default_value_t = ModeArg::Fano)]
    mode: ModeArg,
    /// JSON Y-table `{"y": {"1": "x1", ...}}`, required entries for NEF mode.
    #[arg(long)]
    y_table: Option<PathBuf>,
    /// Truncation level for t-exponents, e.g. `5` or `7/2`.
    #[arg(long, value_parser = rat_arg)]
    cutoff: Option<Rat>,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a polytope file is a Delzant polytope.
    Validate { file: PathBuf },
    /// Classical presentation, Betti numbers and Poincaré pairing.
    Cohomology { file: PathBuf },
    /// Quantum relations.
    Quantum {
        file: PathBuf,
        #[command(flatten)]
        q: QuantumOpts,
    },
    /// Quantum product of two expressions in x1..xN.
    Product {
        file: PathBuf,
        a: String,
        b: String,
        #[command(flatten)]
        q: QuantumOpts,
    },
    /// Seidel element of the circle `--xi` with its leading-term check.
    Seidel {
        file: PathBuf,
        #[arg(long, value_parser = xi_arg, allow_hyphen_values = true)]
        xi: Xi,
        #[command(flatten)]
        q: QuantumOpts,
    },
    /// Fixed components, weights and isotropy of `--xi`.
    Fixed {
        file: PathBuf,
        #[arg(long, value_parser = xi_arg, allow_hyphen_values = true)]
        xi: Xi,
    },
    /// Run the obstruction battery on `--xi`.
    Analyze {
        file: PathBuf,
        #[arg(long, value_parser = xi_arg, allow_hyphen_values = true)]
        xi: Xi,
        /// Skip the Seidel-element rule.
        #[arg(long)]
        no_seidel: bool,
        #[command(flatten)]
        q: QuantumOpts,
    },
    /// Run the oracle suite.
    Verify {
        file: PathBuf,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = oracle::DEFAULT_SEED)]
        seed: u64,
        #[command(flatten)]
        q: QuantumOpts,
    },
    /// Print a bundled polytope (or its Y-table) as JSON.
    Example {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(examples::NAMES))]
        name: String,
        #[arg(long, value_parser = rat_arg)]
        mu: Option<Rat>,
        /// Print the Y-table instead (hirzebruch2 only).
        #[arg(long)]
        y_table: bool,
    },
}

fn rat_arg(s: &str) -> std::result::Result<Rat, String> {
    parse_rat(s).map_err(|e| e.to_string())
}

/// A circle vector such as `2,-1`.
#[derive(Clone)]
struct Xi(Vec<i64>);

fn xi_arg(s: &str) -> std::result::Result<Xi, String> {
    parse_int_vector(s).map(Xi).map_err(|e| e.to_string())
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<DelzantPolytope> {
    io::parse_polytope(&read(path)?)
}

fn presentation(p: &DelzantPolytope, q: &QuantumOpts) -> Result<QuantumPresentation> {
    match q.mode {
        ModeArg::Fano => QuantumPresentation::fano(p, q.cutoff.clone()),
        ModeArg::Nef => {
            let cutoff = match &q.cutoff {
                Some(c) => c.clone(),
                None => toriq::quantum::default_cutoff(p)?,
            };
            let y = match &q.y_table {
                Some(path) => io::parse_ytable(&read(path)?, p.num_facets(), &cutoff)?,
                None => Default::default(),
            };
            QuantumPresentation::nef(p, y, Some(cutoff))
        }
    }
}

fn error_kind(e: &Error) -> String {
    let dbg = format!("{e:?}");
    dbg.split(['(', ' ', '{']).next().unwrap_or_default().to_string()
}

/// Output of one command: text lines plus the structured value.
struct Out {
    text: String,
    value: Value,
}

fn run(cli: &Cli) -> Result<Out> {
    match &cli.command {
        Command::Validate { file } => {
            let p = load(file)?;
            let c: Vec<String> = p.centroid().iter().map(fmt_rat).collect();
            Ok(Out {
                text: format!(
                    "valid: {} (dim {}, {} facets, {} vertices, centroid ({}))",
                    p.name,
                    p.dim,
                    p.num_facets(),
                    p.vertices.len(),
                    c.join(", ")
                ),
                value: json!({"valid": true, "name": p.name, "dim": p.dim, "facets": p.num_facets(),
                              "vertices": p.vertices.len(), "centroid": c, "normalized": p.is_normalized()}),
            })
        }
        Command::Cohomology { file } => cohomology(&load(file)?),
        Command::Quantum { file, q } => {
            let qp = presentation(&load(file)?, q)?;
            let rels = qp.relation_strings();
            let mut text = format!("mode {}, hbar {}, cutoff {}\n", qp.mode, fmt_rat(&qp.hbar), fmt_rat(&qp.cutoff));
            text.push_str(&rels.join("\n"));
            Ok(Out { text, value: json!({"mode": qp.mode, "hbar": fmt_rat(&qp.hbar), "cutoff": fmt_rat(&qp.cutoff), "relations": rels}) })
        }
        Command::Product { file, a, b, q } => {
            let p = load(file)?;
            let qp = presentation(&p, q)?;
            let x = parse_expr(a, qp.nvars(), &qp.cutoff)?;
            let y = parse_expr(b, qp.nvars(), &qp.cutoff)?;
            let z = qp.qprod(&x, &y)?;
            let name = |s: &str| -> String {
                s.strip_prefix('x')
                    .and_then(|k| k.parse::<usize>().ok())
                    .filter(|&k| k >= 1 && k <= p.num_facets())
                    .map_or_else(|| s.to_string(), |k| p.label(k - 1))
            };
            let (na, nb) = (name(a.trim()), name(b.trim()));
            let mut value = json!({"cohomology": class_repr(&z, qp.nvars()), "text": fmt_class(&z)});
            let text = match homology(&qp, &z) {
                Some(h) => {
                    value["homology"] = json!(h);
                    format!("{na} * {nb} = {h}\ncohomology: {}", fmt_class(&z))
                }
                None => format!("{a} * {b} = {}", fmt_class(&z)),
            };
            Ok(Out { text, value })
        }
        Command::Seidel { file, xi, q } => {
            let qp = presentation(&load(file)?, q)?;
            let s = seidel::seidel_element(&qp, &xi.0)?;
            let check = seidel::verify_leading_term(&qp, &s)?;
            let mut text = format!("S = {}\n", fmt_class(&s.value));
            let mut value = json!({"xi": xi.0, "element": class_repr(&s.value, qp.nvars()), "leading": check});
            if let Some(h) = homology(&qp, &s.value) {
                text.push_str(&format!("homology: {h}\n"));
                value["homology"] = json!(h);
            }
            text.push_str(&format!(
                "F_max = {}, m_max = {}, K_max = {}, leading term {}\n",
                check.fmax,
                check.m_max,
                check.k_max,
                match (check.semifree_max, check.leading_ok) {
                    (_, true) => "ok",
                    (true, false) => "MISMATCH",
                    (false, false) => "differs (not asserted: F_max is not semifree)",
                }
            ));
            text.push_str(&match &check.exactness {
                seidel::Exactness::NotClaimed => "exactness: not claimed".to_string(),
                seidel::Exactness::Holds { assumption: None } => "exactness: holds".to_string(),
                seidel::Exactness::Holds { assumption: Some(a) } => format!("exactness: holds ({a})"),
                seidel::Exactness::Fails => "exactness: FAILS".to_string(),
            });
            Ok(Out { text, value })
        }
        Command::Fixed { file, xi } => fixed(&load(file)?, &xi.0),
        Command::Analyze { file, xi, no_seidel, q } => {
            let p = load(file)?;
            let qp = if *no_seidel { None } else { Some(presentation(&p.normalize()?, q)?) };
            let r = analyze(&p, &xi.0, qp.as_ref())?;
            Ok(Out { text: r.render_text().trim_end().to_string(), value: json!(r) })
        }
        Command::Verify { file, trials, seed, q } => {
            let qp = presentation(&load(file)?, q)?;
            let s = oracle::run_suite(&qp, *trials, *seed)?;
            let text = format!(
                "associativity: {} violations\nhomomorphism: {} violations ({} trials, seed {})\nclassical limit: {} (hbar {})\ngrading and betti: {} violations\nvertex independence: {} violations\n{}",
                s.associativity.len(),
                s.homomorphism.violations.len(),
                s.homomorphism.trials,
                s.homomorphism.seed,
                if s.classical_limit { "ok" } else { "FAILED" },
                s.hbar,
                s.grading_and_betti.len(),
                s.vertex_independence.len(),
                if s.passed() { "PASS" } else { "FAIL" }
            );
            if !s.passed() {
                return Err(Error::InvariantMismatch(format!("oracle suite failed: {}", serde_json::to_string(&s).unwrap_or_default())));
            }
            Ok(Out { text, value: json!(s) })
        }
        Command::Example { name, mu, y_table } => {
            let mu = mu.clone().or_else(|| examples::default_mu(name));
            if *y_table {
                if name != "hirzebruch2" {
                    return Err(Error::Malformed(format!("{name} has no Y-table")));
                }
                let t = io::ytable_json(&examples::hirzebruch2_ytable(mu.as_ref().expect("hirzebruch2 has a default")));
                let value: Value = serde_json::from_str(&t).expect("valid JSON");
                return Ok(Out { text: t, value });
            }
            let p = examples::by_name(name, mu.as_ref())?;
            let t = io::polytope_to_json(&p);
            let value: Value = serde_json::from_str(&t).expect("valid JSON");
            Ok(Out { text: t, value })
        }
    }
}

/// Homology report through the geometric dictionary, when it covers the class.
fn homology(qp: &QuantumPresentation, z: &QClass) -> Option<String> {
    let dict = seidel::build_dictionary(qp).ok()?;
    seidel::to_homology_report(&dict, qp, z).ok().map(|r| r.render())
}

fn cohomology(p: &DelzantPolytope) -> Result<Out> {
    let ring = ClassicalRing::new(p);
    let n = ring.nvars;
    let linear: Vec<String> = (0..p.dim)
        .map(|r| {
            let mut f = toriq::poly::PolyQ::zero(n);
            for (i, fct) in p.facets.iter().enumerate() {
                f = &f + &ring.var(i).scale(&Rat::from_integer(fct.normal[r].into()));
            }
            format!("{f} = 0")
        })
        .collect();
    let sr: Vec<String> = ring.sr_sets.iter().map(|s| format!("{} = 0", toriq::poly::Monomial::from_vars(n, s))).collect();
    let betti = ring.betti();
    let basis: Vec<Vec<String>> = ring.basis.iter().map(|b| b.iter().map(|m| m.to_string()).collect()).collect();
    let pairings: Vec<Vec<Vec<String>>> =
        (0..=p.dim).map(|k| ring.pd_matrix(k).iter().map(|row| row.iter().map(fmt_rat).collect()).collect()).collect();
    let mut text = format!("linear relations:\n  {}\nStanley-Reisner:\n  {}\n", linear.join("\n  "), sr.join("\n  "));
    text.push_str(&format!("betti: {betti:?}\n"));
    for (k, b) in basis.iter().enumerate() {
        text.push_str(&format!("H^{}: {} | pairing {:?}\n", 2 * k, b.join(", "), pairings[k]));
    }
    Ok(Out {
        text: text.trim_end().to_string(),
        value: json!({"linear": linear, "stanley_reisner": sr, "betti": betti, "basis": basis, "pairing": pairings}),
    })
}

fn fixed(p: &DelzantPolytope, xi: &[i64]) -> Result<Out> {
    let comps = circle::fixed_components(p, xi)?;
    let mut text = String::new();
    let mut rows = Vec::new();
    for c in &comps {
        let w: Vec<String> = c.weights.iter().map(|(i, w)| format!("{}:{w}", p.label(*i))).collect();
        text.push_str(&format!(
            "{}  K = {}  m = {}  index {}  weights [{}]{}\n",
            c.face,
            fmt_rat(&c.k),
            c.m,
            c.index,
            w.join(", "),
            if c.semifree { "  semifree" } else { "" }
        ));
        rows.push(json!({"face": c.face.to_string(), "k": fmt_rat(&c.k), "m": c.m, "index": c.index,
                         "weights": c.weights.iter().map(|(i, w)| json!({"facet": i + 1, "weight": w})).collect::<Vec<_>>(),
                         "semifree": c.semifree, "dim": c.dim}));
    }
    let mut iso = Vec::new();
    for (id, f) in &p.faces {
        if let circle::Isotropy::Order(o) = circle::isotropy_order(p, xi, id)? {
            if o > 1 && f.dim > 0 {
                text.push_str(&format!("isotropy Z/{o} on {id}\n"));
                iso.push(json!({"face": id.to_string(), "order": o}));
            }
        }
    }
    let k = circle::global_isotropy(p, xi)?;
    text.push_str(&format!("global isotropy {k}"));
    Ok(Out { text, value: json!({"components": rows, "isotropy": iso, "global_isotropy": k}) })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let body = match cli.format {
                Format::Text => out.text,
                Format::Structured => serde_json::to_string_pretty(&out.value).expect("JSON values serialize"),
            };
            // A closed pipe (e.g. `| head`) is not an error.
            let _ = writeln!(std::io::stdout().lock(), "{body}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            match cli.format {
                Format::Text => eprintln!("error: {e}"),
                Format::Structured => eprintln!("{}", json!({"error": error_kind(&e), "message": e.to_string()})),
            }
            ExitCode::from(1)
        }
    }
}
