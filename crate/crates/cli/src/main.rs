use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use cs_sphere::builders::{build_ball, build_delta, build_lambda, cross_polytope, normalize_w, squeezed_ball};
use cs_sphere::flips::{build_gamma, fg_pair, valid_flip_indices};
use cs_sphere::homology::{is_ball_like, topology_report};
use cs_sphere::io::{export, read_complex, write_complex, Format};
use cs_sphere::iso::{automorphisms, compare, pairwise_isomorphism};
use cs_sphere::props::{cs_neighborliness, edge_link_census, is_cs, stackedness};
use cs_sphere::sew3::{build_b_i, build_delta_i, build_t, enum_i, tree_canonical_form, IndexSet};
use cs_sphere::shelling::{is_shelling, shelling_b42, symmetric_shelling_delta3, ShellingOrder, ShellingVerdict};
use cs_sphere::{Complex, Face};

/// Centrally symmetric spheres: construction, verification and comparison.
///
/// Exit status: 0 when every requested check passes, 1 when one fails,
/// 2 on usage or input errors. The isomorphism search budget is read from
/// CSSPHERE_ISO_BUDGET.
#[derive(Parser)]
#[command(name = "cssphere", version)]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a complex and write its facet list.
    Build {
        #[command(subcommand)]
        what: BuildKind,
        #[command(flatten)]
        out: Output,
    },
    /// Check properties of a complex read from a file.
    Verify {
        file: PathBuf,
        /// Centrally symmetric.
        #[arg(long)]
        cs: bool,
        /// cs-k-neighborly.
        #[arg(long, value_name = "K")]
        neighborly: Option<u32>,
        /// Homology sphere and closed pseudomanifold.
        #[arg(long)]
        sphere: bool,
        /// Homology ball with a sphere boundary.
        #[arg(long)]
        ball: bool,
        /// At most i-stacked.
        #[arg(long, value_name = "I")]
        stacked: Option<u32>,
    },
    /// Number of link vertices of every edge, largest first.
    Census {
        file: PathBuf,
        /// Only edges with at least this many link vertices.
        #[arg(long, default_value_t = 0)]
        min: usize,
    },
    /// Check the F_i/G_i flip pairs on Δ^{2k-1}_n.
    Flips {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n: u32,
    },
    /// Trees, balls and sewn spheres for every index set at n.
    Sew {
        #[arg(long)]
        n: u32,
        /// Also test the sewn spheres for pairwise isomorphism.
        #[arg(long)]
        pairwise: bool,
    },
    /// Produce or check shelling orders.
    Shell {
        #[command(subcommand)]
        what: ShellKind,
    },
    /// Compare two complexes; prints the cascade trace.
    Iso { a: PathBuf, b: PathBuf },
    /// List the automorphisms of a complex.
    Aut { file: PathBuf },
    /// Convert between the text and JSON formats.
    Export {
        file: PathBuf,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args)]
struct Output {
    /// Output file; the format follows the extension (.json or text).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Format for standard output.
    #[arg(long, global = true, default_value = "text")]
    format: String,
}

#[derive(Subcommand)]
enum BuildKind {
    /// Δ^d_n.
    Delta {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        n: u32,
    },
    /// B^{d,i}_n.
    Ball {
        #[arg(long)]
        d: u32,
        #[arg(long, allow_hyphen_values = true)]
        i: i32,
        #[arg(long)]
        n: u32,
    },
    /// Λ^d_n, on W_n unless --normalize.
    Lambda {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        n: u32,
        /// Shift labels onto V_n.
        #[arg(long)]
        normalize: bool,
    },
    /// Γ(J) from symmetric flips of Δ^{2k-1}_n.
    Gamma {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n: u32,
        /// Comma-separated flip indices.
        #[arg(long, default_value = "")]
        j: String,
    },
    /// The sewn sphere Δ(I).
    DeltaI {
        #[arg(long)]
        n: u32,
        /// Comma-separated index set.
        #[arg(long, default_value = "")]
        set: String,
    },
    /// The ball B(I).
    BI {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value = "")]
        set: String,
    },
    /// Boundary of the n-dimensional cross-polytope.
    Cross {
        #[arg(long)]
        n: u32,
    },
    /// The squeezed ball generated by F(2k,n).
    Squeezed {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n: u32,
    },
}

#[derive(Subcommand)]
enum ShellKind {
    /// The symmetric shelling of Δ^3_n.
    Delta3 {
        #[arg(long)]
        n: u32,
    },
    /// The shelling of B^{4,2}_n.
    B42 {
        #[arg(long)]
        n: u32,
    },
    /// Check an order file (one facet per line) against a complex.
    Check { file: PathBuf, order: PathBuf },
}

enum Failure {
    Usage(String),
    Check,
}

impl From<cs_sphere::Error> for Failure {
    fn from(e: cs_sphere::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let mut report = String::new();
    let status = run(cli.command, &mut report);
    print!("{report}");
    match status {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command, out: &mut String) -> Result<(), Failure> {
    match command {
        Command::Build { what, out: dest } => emit(&build(what)?, &dest, out),
        Command::Verify { file, cs, neighborly, sphere, ball, stacked } => {
            verify(&read(&file)?, cs, neighborly, sphere, ball, stacked, out)
        }
        Command::Census { file, min } => {
            let census = edge_link_census(&read(&file)?);
            let mut rows: Vec<(Face, usize)> = census.into_iter().filter(|(_, v)| *v >= min).collect();
            rows.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
            for (e, v) in rows {
                let _ = writeln!(out, "{e} {v}");
            }
            Ok(())
        }
        Command::Flips { k, n } => flips(k, n, out),
        Command::Sew { n, pairwise } => sew(n, pairwise, out),
        Command::Shell { what } => shell(what, out),
        Command::Iso { a, b } => {
            let report = compare(&read(&a)?, &read(&b)?)?;
            for s in &report.steps {
                let verdict = if s.passed { "pass" } else { "fail" };
                let _ = writeln!(out, "{:<20} {verdict}{}", s.check, detail(&s.detail));
            }
            match report.map {
                Some(m) => {
                    let _ = writeln!(out, "isomorphic");
                    out.push_str(&m.table());
                    Ok(())
                }
                None => {
                    let _ = writeln!(out, "not isomorphic");
                    Err(Failure::Check)
                }
            }
        }
        Command::Aut { file } => {
            let maps = automorphisms(&read(&file)?)?;
            let _ = writeln!(out, "{} automorphisms", maps.len());
            for m in &maps {
                let pairs: Vec<String> = m.iter().map(|(a, b)| format!("{}>{}", a.label(), b.label())).collect();
                let _ = writeln!(out, "{}", pairs.join(" "));
            }
            Ok(())
        }
        Command::Export { file, out: dest } => emit(&read(&file)?, &dest, out),
    }
}

fn detail(s: &str) -> String {
    if s.is_empty() {
        String::new()
    } else {
        format!("  {s}")
    }
}

fn read(path: &Path) -> Result<Complex, Failure> {
    read_complex(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn emit(c: &Complex, dest: &Output, out: &mut String) -> Result<(), Failure> {
    match &dest.out {
        Some(path) => {
            write_complex(c, path)?;
            let _ = writeln!(out, "wrote {} facets to {}", c.num_facets(), path.display());
        }
        None => out.push_str(&export(c, dest.format.parse::<Format>()?)),
    }
    Ok(())
}

fn list(s: &str) -> Result<Vec<u32>, Failure> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| Failure::Usage(format!("not an index: {t:?}"))))
        .collect()
}

fn build(what: BuildKind) -> Result<Complex, Failure> {
    Ok(match what {
        BuildKind::Delta { d, n } => (*build_delta(d, n)?).clone(),
        BuildKind::Ball { d, i, n } => (*build_ball(d, i, n)?).clone(),
        BuildKind::Lambda { d, n, normalize } => {
            let l = build_lambda(d, n)?;
            if normalize {
                normalize_w(&l)?
            } else {
                l
            }
        }
        BuildKind::Gamma { k, n, j } => build_gamma(k, n, &list(&j)?)?,
        BuildKind::DeltaI { n, set } => build_delta_i(&IndexSet::new(n, list(&set)?)?)?,
        BuildKind::BI { n, set } => build_b_i(&IndexSet::new(n, list(&set)?)?)?,
        BuildKind::Cross { n } => cross_polytope(n)?,
        BuildKind::Squeezed { k, n } => squeezed_ball(k, n)?,
    })
}

fn verify(
    c: &Complex,
    cs: bool,
    neighborly: Option<u32>,
    sphere: bool,
    ball: bool,
    stacked: Option<u32>,
    out: &mut String,
) -> Result<(), Failure> {
    let _ = writeln!(out, "dim {} n {} facets {} f {:?}", c.dim(), c.ambient_n(), c.num_facets(), c.f_vector());
    let report_only = !cs && neighborly.is_none() && !sphere && !ball && stacked.is_none();
    let mut rows: Vec<(String, bool, String)> = Vec::new();
    if cs || report_only {
        rows.push(("cs".into(), is_cs(c), String::new()));
    }
    if neighborly.is_some() || report_only {
        let r = cs_neighborliness(c);
        let witness = r.witness.map(|w| format!(", missing {w}")).unwrap_or_default();
        let text = format!("max {}{}{witness}", r.max_i, if r.exact { " exact" } else { "" });
        let k = neighborly.unwrap_or(0);
        rows.push((format!("cs-{k}-neighborly"), r.max_i >= k, text));
    }
    if sphere || ball || report_only {
        let t = topology_report(c);
        let text = format!("betti {:?} euler {}", t.z2_betti, t.euler);
        if sphere || report_only {
            rows.push(("sphere".into(), t.is_sphere_like(), text.clone()));
        }
        if ball {
            rows.push(("ball".into(), is_ball_like(c), text));
        }
    }
    if let Some(i) = stacked {
        let r = stackedness(c)?;
        let witness = r.witness_interior_face.map(|w| format!(", interior face {w}")).unwrap_or_default();
        rows.push((format!("{i}-stacked"), r.min_i <= i, format!("min {}{witness}", r.min_i)));
    }
    for (name, ok, text) in &rows {
        let verdict = if *ok { "pass" } else { "FAIL" };
        let _ = writeln!(out, "{name:<16} {verdict}{}", detail(text));
    }
    if report_only || rows.iter().all(|(_, ok, _)| *ok) {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn flips(k: u32, n: u32, out: &mut String) -> Result<(), Failure> {
    let sphere = build_delta(2 * k - 1, n)?;
    let indices: Vec<u32> = valid_flip_indices(k, n).collect();
    let rows: Vec<(String, bool)> = indices
        .par_iter()
        .map(|&i| -> Result<(String, bool), cs_sphere::Error> {
            let p = fg_pair(k, i)?;
            let link = sphere.link(p.f)?;
            let bd = Complex::simplex(n, p.g)?.boundary()?;
            let link_ok = link.facets() == bd.facets();
            let missing = !sphere.has_face(p.g);
            Ok((format!("{i} F={} G={} link={} G-missing={}", p.f, p.g, link_ok, missing), link_ok && missing))
        })
        .collect::<Result<_, _>>()?;
    let _ = writeln!(out, "{} flip indices for k={k} n={n}", rows.len());
    for (row, _) in &rows {
        let _ = writeln!(out, "{row}");
    }
    if rows.iter().all(|(_, ok)| *ok) {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn sew(n: u32, pairwise: bool, out: &mut String) -> Result<(), Failure> {
    let sets = enum_i(n)?;
    let spheres: Vec<Complex> = sets.par_iter().map(build_delta_i).collect::<Result<_, _>>()?;
    let _ = writeln!(out, "{} index sets at n={n}", sets.len());
    for (set, s) in sets.iter().zip(&spheres) {
        let tree = build_t(set)?;
        let form = tree_canonical_form(&tree.adjacency()).unwrap_or_default();
        let _ = writeln!(out, "I={:?} B(I) facets {} Δ(I) facets {} tree {form}", set.i, tree.nodes.len(), s.num_facets());
    }
    if pairwise {
        let pairs = pairwise_isomorphism(&spheres)?;
        let iso: Vec<String> = pairs.iter().filter(|(_, b)| *b).map(|((a, b), _)| format!("{a}~{b}")).collect();
        let _ = writeln!(out, "{} pairs, {} isomorphic {}", pairs.len(), iso.len(), iso.join(" "));
        if !iso.is_empty() {
            return Err(Failure::Check);
        }
    }
    Ok(())
}

fn print_order(o: &ShellingOrder, out: &mut String) {
    for (f, r) in o.facets.iter().zip(&o.restriction_faces) {
        let _ = writeln!(out, "{f} {r}");
    }
}

fn shell(what: ShellKind, out: &mut String) -> Result<(), Failure> {
    match what {
        ShellKind::Delta3 { n } => {
            let o = symmetric_shelling_delta3(n)?;
            let _ = writeln!(out, "symmetric shelling of Δ^3_{n}: {} facets", o.facets.len());
            print_order(&o, out);
        }
        ShellKind::B42 { n } => {
            let o = shelling_b42(n)?;
            let _ = writeln!(out, "shelling of B^4,2_{n}: {} facets", o.facets.len());
            print_order(&o, out);
        }
        ShellKind::Check { file, order } => {
            let c = read(&file)?;
            let text = std::fs::read_to_string(&order).map_err(|e| Failure::Usage(format!("{}: {e}", order.display())))?;
            let mut facets = Vec::new();
            for (line, raw) in text.lines().enumerate() {
                let raw = raw.trim();
                if raw.is_empty() || raw.starts_with('#') {
                    continue;
                }
                let labels: Vec<i32> = raw
                    .split_whitespace()
                    .map(|t| t.parse().map_err(|_| Failure::Usage(format!("line {}: not an integer: {t:?}", line + 1))))
                    .collect::<Result<_, _>>()?;
                facets.push(Face::try_from_labels(&labels)?);
            }
            match is_shelling(&c, &facets)? {
                ShellingVerdict::Valid(o) => {
                    let _ = writeln!(out, "valid shelling{}", if o.is_symmetric() { " (symmetric)" } else { "" });
                    print_order(&o, out);
                }
                ShellingVerdict::Invalid { position, facet } => {
                    let _ = writeln!(out, "not a shelling: fails at position {position}, facet {facet}");
                    return Err(Failure::Check);
                }
            }
        }
    }
    Ok(())
}
