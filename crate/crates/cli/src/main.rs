use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use serde_json::json;
use tropicon::connectivity::{
    build_hypergraph, is_k_connected, min_facet_cut, MinCut, SearchOptions, DEFAULT_BUDGET,
};
use tropicon::io::{rational_from_json, CertificateFile, FanFile, MinCutEntry};
use tropicon::matroid::{bergman_fine, MatroidSpec};
use tropicon::ratlin::parse_rational;
use tropicon::tropical::{
    balancing_check, complex_lineality_space, hyperplane_section, normal_fan, quotient_by_lineality, star,
    AffineHyperplane,
};
use tropicon::{generators, Complex, Polyhedron, QVector};

/// Exact polyhedral fans and connectivity through codimension one.
///
/// Exit status: 0 on success or a passing certificate, 1 on invalid input,
/// 2 when a certificate or balancing check fails.
#[derive(Parser)]
#[command(name = "tropicon", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a complex: two-planes, tropical-plane, tropical-line,
    /// bergman-uniform R N, bergman-graphic EDGES, bergman MATROID.json,
    /// normal-fan-cube D, normal-fan VERTICES.json
    Gen {
        kind: String,
        params: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Certify k-connectivity through codimension one (default k = d - l)
    Check {
        file: PathBuf,
        #[arg(long)]
        k: Option<usize>,
        /// Also compute the minimum disconnecting facet set
        #[arg(long)]
        mincut: bool,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Intersect with the hyperplane h·x = c
    Slice {
        file: PathBuf,
        /// Comma-separated integer normal, e.g. 1,2,4
        #[arg(long, allow_hyphen_values = true)]
        h: String,
        /// Right-hand side, an integer or p/q
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check the balancing condition at every ridge
    Balance { file: PathBuf },
    /// Project along the lineality space
    Quotient {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Star at a face given by pool indices, e.g. r0,r3 or v1,r2
    Star {
        file: PathBuf,
        #[arg(long)]
        face: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Graphviz rendering of the facet-ridge incidence
    Dot { file: PathBuf },
}

fn read_fan(path: &Path) -> Result<Complex> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let fan = FanFile::parse(&text).and_then(|f| f.to_complex());
    fan.with_context(|| format!("loading {}", path.display()))
}

fn emit(text: &str, output: Option<&Path>) -> Result<()> {
    match output {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_fan(c: &Complex, output: Option<&Path>) -> Result<()> {
    emit(&FanFile::from_complex(c).to_json_string(), output)
}

fn budget() -> Result<u64> {
    match std::env::var("TROPICON_BUDGET") {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| anyhow!("TROPICON_BUDGET must be a nonnegative integer, got {s:?}")),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn generate(kind: &str, params: &[String]) -> Result<Complex> {
    match kind {
        "normal-fan" | "bergman" => {
            let path = params
                .first()
                .ok_or_else(|| anyhow!("{kind} needs a file argument"))?;
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
            if kind == "bergman" {
                let spec: MatroidSpec = text.parse()?;
                return Ok(bergman_fine(&spec.build()?)?);
            }
            let rows: Vec<Vec<serde_json::Value>> =
                serde_json::from_str(&text).context("expected a JSON list of points")?;
            let points = rows
                .iter()
                .map(|r| {
                    r.iter()
                        .map(rational_from_json)
                        .collect::<tropicon::Result<QVector>>()
                })
                .collect::<tropicon::Result<Vec<_>>>()?;
            Ok(normal_fan(&points)?)
        }
        _ => {
            let args: Vec<&str> = params.iter().map(String::as_str).collect();
            Ok(generators::generate(kind, &args)?)
        }
    }
}

fn parse_face(c: &Complex, spec: &str) -> Result<Polyhedron> {
    let mut vertices = Vec::new();
    let mut rays = Vec::new();
    for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (pool, index) = item.split_at(1);
        let i: usize = index
            .parse()
            .with_context(|| format!("bad face element {item:?}"))?;
        let (list, target) = match pool {
            "v" => (c.vertices(), &mut vertices),
            "r" => (c.rays(), &mut rays),
            _ => bail!("face elements look like r3 or v0, got {item:?}"),
        };
        let x = list.get(i).ok_or_else(|| anyhow!("{item} is out of range"))?;
        target.push(x.clone());
    }
    Ok(Polyhedron::new(c.ambient_dim(), vertices, rays, vec![])?)
}

fn check(file: &Path, k: Option<usize>, mincut: bool, jobs: usize, output: Option<&Path>) -> Result<bool> {
    let c = read_fan(file)?;
    let h = build_hypergraph(&c)?;
    let d = c.dim();
    let l = complex_lineality_space(&c)?.dim();
    let k = k.unwrap_or(d.saturating_sub(l));
    let opts = SearchOptions {
        budget: budget()?,
        jobs: jobs.max(1),
    };
    let cert = is_k_connected(&h, k, &opts)?;
    let mincut = if mincut {
        Some(match min_facet_cut(&h, &opts)? {
            MinCut::Cut { size, witness } => MinCutEntry {
                size: Some(size),
                witness: Some(witness),
            },
            MinCut::NoCut => MinCutEntry {
                size: None,
                witness: None,
            },
        })
    } else {
        None
    };
    let file = CertificateFile {
        k,
        verdict: cert.verdict,
        witness: cert.witness,
        d,
        lineality_dim: l,
        facets: h.num_facets(),
        ridges: h.num_ridges(),
        subsets_examined: cert.subsets_examined,
        mincut,
    };
    emit(&file.to_json_string(), output)?;
    Ok(file.verdict)
}

fn slice(file: &Path, h: &str, c: &str, output: Option<&Path>) -> Result<()> {
    let fan = read_fan(file)?;
    let normal = h
        .split(',')
        .map(parse_rational)
        .collect::<tropicon::Result<QVector>>()?;
    let plane = AffineHyperplane::new(normal, parse_rational(c)?)?;
    let result = hyperplane_section(&fan, &plane)?;
    let g = build_hypergraph(&result.section)?;
    if let Some(p) = output {
        emit_fan(&result.section, Some(p))?;
    }
    let summary = json!({
        "facets": g.num_facets(),
        "ridges": g.num_ridges(),
        "connected": g.is_connected(),
        "pure": result.pure,
    });
    println!("{summary}");
    Ok(())
}

fn balance(file: &Path) -> Result<bool> {
    let c = read_fan(file)?;
    let report = balancing_check(&c)?;
    let failures: Vec<_> = report
        .failures()
        .map(|r| {
            json!({
                "ridge": r.ridge,
                "face": r.face.to_string(),
                "residual": r.residual.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            })
        })
        .collect();
    let out = json!({
        "balanced": report.is_balanced(),
        "ridges": report.ridges.len(),
        "failures": failures,
    });
    println!("{}", serde_json::to_string_pretty(&out)?);
    Ok(report.is_balanced())
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Gen { kind, params, output } => {
            emit_fan(&generate(&kind, &params)?, output.as_deref())?;
            Ok(true)
        }
        Command::Check {
            file,
            k,
            mincut,
            jobs,
            output,
        } => check(&file, k, mincut, jobs, output.as_deref()),
        Command::Slice { file, h, c, output } => slice(&file, &h, &c, output.as_deref()).map(|_| true),
        Command::Balance { file } => balance(&file),
        Command::Quotient { file, output } => {
            let (q, _) = quotient_by_lineality(&read_fan(&file)?)?;
            emit_fan(&q, output.as_deref())?;
            Ok(true)
        }
        Command::Star { file, face, output } => {
            let c = read_fan(&file)?;
            let face = parse_face(&c, &face)?;
            emit_fan(&star(&c, &face)?, output.as_deref())?;
            Ok(true)
        }
        Command::Dot { file } => {
            print!("{}", build_hypergraph(&read_fan(&file)?)?.to_dot());
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
