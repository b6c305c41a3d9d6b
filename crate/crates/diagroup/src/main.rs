use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use diagroup::complex::{CellRef, DirectedComplex, EdgeWord, VertexId};
use diagroup::cover;
use diagroup::diagram::{self, Diagram};
use diagroup::homology::{self, ClassBounds, CountAutomaton};
use diagroup::presentation;
use diagroup::rewriting::{self, Confluence};
use diagroup::squier::{self, Forest, ForestKind, Limits};

/// Exact computation in diagram groupoids of directed 2-complexes.
#[derive(Parser)]
#[command(name = "diagroup", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ComplexArg {
    /// Complex file.
    #[arg(long)]
    complex: PathBuf,
}

#[derive(Args)]
struct BaseArgs {
    /// Base word: whitespace-separated edge ids (single-letter ids may be
    /// run together, e.g. `xxx`).
    #[arg(long)]
    base: String,
    /// Exploration bound on word length.
    #[arg(long, default_value_t = 10)]
    max_len: usize,
    /// Exploration bound on component vertices.
    #[arg(long, default_value_t = 4096)]
    max_vertices: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Termination certificate, critical pairs, and confluence verdict.
    Check {
        #[command(flatten)]
        complex: ComplexArg,
        #[arg(long)]
        json: bool,
    },
    /// Reduce a diagram to its unique dipole-free form.
    Reduce {
        #[command(flatten)]
        complex: ComplexArg,
        /// Diagram file.
        #[arg(long)]
        diagram: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Multiply two spherical diagrams with the same base.
    Mult {
        #[command(flatten)]
        complex: ComplexArg,
        /// Left factor diagram file.
        #[arg(long)]
        diagram: PathBuf,
        /// Right factor diagram file.
        #[arg(long)]
        diagram2: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Presentation of the diagram group at a base word.
    Present {
        #[command(flatten)]
        complex: ComplexArg,
        #[command(flatten)]
        base: BaseArgs,
        /// Emit the Wirtinger-style presentation instead of the minimal one.
        #[arg(long)]
        wirtinger: bool,
        #[arg(long)]
        json: bool,
    },
    /// Integer homology ranks and the Poincaré series.
    Homology {
        #[command(flatten)]
        complex: ComplexArg,
        #[command(flatten)]
        base: BaseArgs,
        #[arg(long, default_value_t = 4)]
        max_dim: usize,
        /// Expert override: user-supplied left forest file; completeness is
        /// not certified and ranks come from a bounded census.
        #[arg(long)]
        forest: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// The Poincaré series alone, as an exact rational function.
    Poincare {
        #[command(flatten)]
        complex: ComplexArg,
        #[command(flatten)]
        base: BaseArgs,
        #[arg(long)]
        json: bool,
    },
    /// Squier-component statistics, DOT export, and cube census.
    Squier {
        #[command(flatten)]
        complex: ComplexArg,
        #[command(flatten)]
        base: BaseArgs,
        /// Write the component as a DOT digraph to this path.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Print a CSV cube census up to this dimension.
        #[arg(long)]
        census: Option<usize>,
        #[arg(long)]
        forest: Option<PathBuf>,
    },
    /// Build a truncated universal 2-cover.
    Cover {
        #[command(flatten)]
        complex: ComplexArg,
        #[command(flatten)]
        base: BaseArgs,
        #[arg(long, default_value_t = 3)]
        level: u32,
        /// Print per-level vertex/edge/cell counts.
        #[arg(long)]
        stats: bool,
        /// Run the bounded rooted-2-tree verification with this cell bound.
        #[arg(long)]
        verify: Option<usize>,
        /// Write the cover dump to this path instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Bounded retract completion.
    Complete {
        #[command(flatten)]
        complex: ComplexArg,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
        #[arg(long, default_value_t = 64)]
        max_classes: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Validate a morphism file; optionally apply it to a diagram.
    Morphism {
        /// Source complex file.
        #[arg(long)]
        src: PathBuf,
        /// Target complex file.
        #[arg(long)]
        dst: PathBuf,
        /// Morphism file.
        #[arg(long)]
        map: PathBuf,
        /// Diagram over the source to push forward.
        #[arg(long)]
        diagram: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_complex(path: &Path) -> Result<DirectedComplex, String> {
    DirectedComplex::parse(&read(path)?).map_err(|e| e.to_string())
}

fn parse_base(k: &DirectedComplex, s: &str) -> Result<EdgeWord, String> {
    let tokens: Vec<&str> = s.split_whitespace().collect();
    let names: Vec<String> = if tokens.len() == 1 && k.edge(tokens[0]).is_none() {
        tokens[0].chars().map(|c| c.to_string()).collect()
    } else {
        tokens.iter().map(|t| t.to_string()).collect()
    };
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    k.word_from_names(&refs).map_err(|e| format!("base word: {e}"))
}

fn load_forest(k: &DirectedComplex, path: &Path) -> Result<Forest, String> {
    let text = read(path)?;
    let mut pairs = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(i) => raw[..i].trim(),
            None => raw.trim(),
        };
        if line.is_empty() {
            continue;
        }
        let rest = line.strip_prefix("pair").ok_or(format!(
            "forest file line {}: expected `pair <cell> : <u edge ids...>`",
            lineno + 1
        ))?;
        let (cell_name, ctx) = match rest.split_once(':') {
            Some((c, u)) => (c.trim(), u.trim()),
            None => (rest.trim(), ""),
        };
        let cell = k
            .cell(cell_name)
            .ok_or(format!("forest file line {}: unknown cell `{cell_name}`", lineno + 1))?;
        let u = if ctx.is_empty() {
            EdgeWord::empty(k.cell_source(cell))
        } else {
            let names: Vec<&str> = ctx.split_whitespace().collect();
            k.word_from_names(&names).map_err(|e| e.to_string())?
        };
        pairs.push((u, cell));
    }
    Forest::from_pairs(k, ForestKind::Left, pairs).map_err(|e| e.to_string())
}

fn run(cmd: Command) -> Result<(), String> {
    match cmd {
        Command::Check { complex, json } => {
            let k = load_complex(&complex.complex)?;
            let cert = rewriting::noetherian_certificate(&k);
            let pairs = rewriting::critical_pairs(&k);
            let verdict = if cert.is_certified() {
                Some(rewriting::confluence_check(&k).map_err(|e| e.to_string())?)
            } else {
                None
            };
            if json {
                let v = serde_json::json!({
                    "certificate": cert.label(),
                    "critical_pairs": pairs.len(),
                    "confluence": match &verdict {
                        Some(Confluence::Confluent) => "Confluent",
                        Some(Confluence::NotConfluent { .. }) => "NotConfluent",
                        None => "unavailable",
                    },
                    "witness": match &verdict {
                        Some(Confluence::NotConfluent { pair, normal_forms }) => {
                            serde_json::json!({
                                "word": k.display_word(&pair.word),
                                "normal_forms": [
                                    k.display_word(&normal_forms.0),
                                    k.display_word(&normal_forms.1),
                                ],
                            })
                        }
                        _ => serde_json::Value::Null,
                    },
                });
                println!("{}", serde_json::to_string_pretty(&v).unwrap());
                return Ok(());
            }
            println!("certificate: {}", cert.label());
            if let rewriting::Certificate::CertifiedNonNoetherian { cycle } = &cert {
                let words: Vec<String> = cycle.iter().map(|w| k.display_word(w)).collect();
                println!("cycle: {}", words.join(" -> "));
            }
            println!("critical pairs: {}", pairs.len());
            match verdict {
                Some(Confluence::Confluent) => println!("confluence: Confluent"),
                Some(Confluence::NotConfluent { pair, normal_forms }) => {
                    println!("confluence: NotConfluent");
                    println!(
                        "witness: {} -> {} | {}",
                        k.display_word(&pair.word),
                        k.display_word(&normal_forms.0),
                        k.display_word(&normal_forms.1)
                    );
                }
                None => println!("confluence: unavailable (no termination certificate)"),
            }
            Ok(())
        }
        Command::Reduce { complex, diagram: dpath, json } => {
            let k = load_complex(&complex.complex)?;
            let d = diagram::parse(&k, &read(&dpath)?).map_err(|e| e.to_string())?;
            let r = diagram::reduce(&k, &d);
            if json {
                println!(
                    "{}",
                    serde_json::json!({
                        "top": k.display_word(r.top()),
                        "bottom": k.display_word(&r.bottom(&k)),
                        "cells": r.cell_count(),
                        "diagram": diagram::serialize(&k, &r),
                    })
                );
            } else {
                print!("{}", diagram::serialize(&k, &r));
                println!("cells: {}", r.cell_count());
            }
            Ok(())
        }
        Command::Mult { complex, diagram, diagram2, json } => {
            let k = load_complex(&complex.complex)?;
            let d1 = diagram::parse(&k, &read(&diagram)?).map_err(|e| e.to_string())?;
            let d2 = diagram::parse(&k, &read(&diagram2)?).map_err(|e| e.to_string())?;
            let m = diagram::mult(&k, &d1, &d2).map_err(|e| e.to_string())?;
            if json {
                println!(
                    "{}",
                    serde_json::json!({
                        "cells": m.cell_count(),
                        "diagram": diagram::serialize(&k, &m),
                    })
                );
            } else {
                print!("{}", diagram::serialize(&k, &m));
                println!("cells: {}", m.cell_count());
            }
            Ok(())
        }
        Command::Present { complex, base, wirtinger, json } => {
            let k = load_complex(&complex.complex)?;
            let w = parse_base(&k, &base.base)?;
            let limits = Limits { max_word_len: base.max_len, max_vertices: base.max_vertices };
            let pres = if wirtinger {
                presentation::wirtinger_presentation(&k, &w, limits)
            } else {
                presentation::minimal_presentation(&k, &w, limits)
            }
            .map_err(|e| e.to_string())?;
            if json {
                println!("{}", serde_json::to_string_pretty(&pres.to_json(&k)).unwrap());
            } else {
                print!("{}", pres.display(&k));
            }
            Ok(())
        }
        Command::Homology { complex, base, max_dim, forest, json } => {
            let k = load_complex(&complex.complex)?;
            let w = parse_base(&k, &base.base)?;
            if let Some(fpath) = forest {
                let tl = load_forest(&k, &fpath)?;
                println!("# forest supplied externally; completeness not certified");
                let limits =
                    Limits { max_word_len: base.max_len, max_vertices: base.max_vertices };
                let comp = squier::component(&k, &w, limits).map_err(|e| e.to_string())?;
                let census =
                    squier::cube_census(&k, &comp, &tl, max_dim).map_err(|e| e.to_string())?;
                if !census.exhaustive {
                    println!("# census truncated by exploration limits");
                }
                let ranks: Vec<String> =
                    census.per_dim.iter().map(|(e, _, _)| e.to_string()).collect();
                println!("r: {}", ranks.join(" "));
                return Ok(());
            }
            let tl = Forest::derive(&k, ForestKind::Left).map_err(|e| e.to_string())?;
            let auto = CountAutomaton::build(&k, &w, &tl, ClassBounds::default())
                .map_err(|e| e.to_string())?;
            let ranks: Vec<String> = (0..=max_dim).map(|n| auto.count(n).to_string()).collect();
            let series = auto.poincare_series();
            if json {
                println!(
                    "{}",
                    serde_json::json!({
                        "ranks": ranks,
                        "series": series.display("t"),
                    })
                );
            } else {
                println!("r: {}", ranks.join(" "));
                println!("series: {}", series.display("t"));
            }
            Ok(())
        }
        Command::Poincare { complex, base, json } => {
            let k = load_complex(&complex.complex)?;
            let w = parse_base(&k, &base.base)?;
            let series = homology::poincare_series(&k, &w).map_err(|e| e.to_string())?;
            if json {
                println!("{}", serde_json::json!({ "series": series.display("t") }));
            } else {
                println!("{}", series.display("t"));
            }
            Ok(())
        }
        Command::Squier { complex, base, dot, census, forest } => {
            let k = load_complex(&complex.complex)?;
            let w = parse_base(&k, &base.base)?;
            let limits = Limits { max_word_len: base.max_len, max_vertices: base.max_vertices };
            let comp = squier::component(&k, &w, limits).map_err(|e| e.to_string())?;
            println!(
                "vertices: {}\nedges: {}\nexhaustive: {}",
                comp.vertices.len(),
                comp.edges.len(),
                comp.exhaustive
            );
            if let Some(path) = dot {
                std::fs::write(&path, squier::export_dot(&k, &comp))
                    .map_err(|e| format!("{}: {e}", path.display()))?;
            }
            if let Some(max_dim) = census {
                let tl = match forest {
                    Some(fpath) => {
                        println!("# forest supplied externally; completeness not certified");
                        load_forest(&k, &fpath)?
                    }
                    None => Forest::derive(&k, ForestKind::Left).map_err(|e| e.to_string())?,
                };
                let census =
                    squier::cube_census(&k, &comp, &tl, max_dim).map_err(|e| e.to_string())?;
                print!("{}", squier::census_csv(&census));
            }
            Ok(())
        }
        Command::Cover { complex, base, level, stats, verify, out } => {
            let k = load_complex(&complex.complex)?;
            let w = parse_base(&k, &base.base)?;
            let cov = cover::build_cover(&k, &w, level, 1).map_err(|e| e.to_string())?;
            if stats {
                for (lvl, (v, e, c)) in cov.level_counts().iter().enumerate() {
                    println!("level {lvl}: vertices {v} edges {e} cells {c}");
                }
            }
            if let Some(max_cells) = verify {
                let report = cover::verify_rooted_tree(&cov, max_cells);
                println!("t1: {}", if report.t1_violations.is_empty() { "pass" } else { "fail" });
                println!("t2: {}", if report.t2_violations.is_empty() { "pass" } else { "fail" });
                println!("u2': {}", if report.u2_violations.is_empty() { "pass" } else { "fail" });
                match &report.t3_witness {
                    None => println!("t3 (<= {max_cells} cells): pass"),
                    Some(wit) => println!(
                        "t3 (<= {max_cells} cells): fail, witness with {} cells",
                        wit.cell_count()
                    ),
                }
                for v in report
                    .t1_violations
                    .iter()
                    .chain(&report.t2_violations)
                    .chain(&report.u2_violations)
                {
                    println!("violation: {v}");
                }
            }
            match out {
                Some(path) => std::fs::write(&path, cov.serialize())
                    .map_err(|e| format!("{}: {e}", path.display()))?,
                None if !stats && verify.is_none() => print!("{}", cov.serialize()),
                None => {}
            }
            Ok(())
        }
        Command::Complete { complex, max_len, max_classes, out } => {
            let k = load_complex(&complex.complex)?;
            let done = rewriting::complete_by_retract(&k, max_len, max_classes)
                .map_err(|e| e.to_string())?;
            match out {
                Some(path) => std::fs::write(&path, done.serialize())
                    .map_err(|e| format!("{}: {e}", path.display()))?,
                None => print!("{}", done.serialize()),
            }
            Ok(())
        }
        Command::Morphism { src, dst, map, diagram: dpath } => {
            let ks = load_complex(&src)?;
            let kd = load_complex(&dst)?;
            let m = parse_morphism(&ks, &kd, &read(&map)?)?;
            println!("morphism: valid (M1-M3)");
            if let Some(dpath) = dpath {
                let d = diagram::parse(&ks, &read(&dpath)?).map_err(|e| e.to_string())?;
                let image = diagram::substitute(&ks, &kd, &d, &m).map_err(|e| e.to_string())?;
                print!("{}", diagram::serialize(&kd, &image));
            }
            Ok(())
        }
    }
}

/// Morphism file: `vertex a -> b`, `edge x -> y z`, `cell f -> (o, c) ...`
/// or `cell f -> @diagram-file`.
fn parse_morphism(
    src: &DirectedComplex,
    dst: &DirectedComplex,
    text: &str,
) -> Result<diagroup::complex::Morphism, String> {
    let mut vmap: Vec<Option<VertexId>> = vec![None; src.vertex_count()];
    let mut emap: Vec<Option<EdgeWord>> = vec![None; src.edge_count()];
    let mut cmap: Vec<Option<Diagram>> = vec![None; src.cell_count()];
    for (lineno, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(i) => raw[..i].trim(),
            None => raw.trim(),
        };
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| format!("morphism file line {}: {msg}", lineno + 1);
        let (kind, rest) = line
            .split_once(char::is_whitespace)
            .ok_or_else(|| err("expected `vertex|edge|cell <id> -> ...`".into()))?;
        let (name, image) =
            rest.split_once("->").ok_or_else(|| err("expected `->`".into()))?;
        let (name, image) = (name.trim(), image.trim());
        match kind {
            "vertex" => {
                let v =
                    src.vertex(name).ok_or_else(|| err(format!("unknown vertex `{name}`")))?;
                let tv =
                    dst.vertex(image).ok_or_else(|| err(format!("unknown vertex `{image}`")))?;
                vmap[v.0 as usize] = Some(tv);
            }
            "edge" => {
                let e = src.edge(name).ok_or_else(|| err(format!("unknown edge `{name}`")))?;
                let names: Vec<&str> = image.split_whitespace().collect();
                let w = dst.word_from_names(&names).map_err(|x| err(x.to_string()))?;
                emap[e.0 as usize] = Some(w);
            }
            "cell" => {
                let c = src.cell(name).ok_or_else(|| err(format!("unknown cell `{name}`")))?;
                cmap[c.0 as usize] = Some(if let Some(path) = image.strip_prefix('@') {
                    let text = std::fs::read_to_string(path.trim())
                        .map_err(|e| err(format!("{path}: {e}")))?;
                    diagram::parse(dst, &text).map_err(|x| err(x.to_string()))?
                } else {
                    parse_inline_cell_image(src, dst, &emap, c, image).map_err(err)?
                });
            }
            other => return Err(err(format!("unknown keyword `{other}`"))),
        }
    }
    if dst.vertex_count() == 1 {
        for v in vmap.iter_mut() {
            v.get_or_insert(VertexId(0));
        }
    }
    let vmap: Vec<VertexId> = vmap
        .into_iter()
        .enumerate()
        .map(|(i, v)| {
            v.ok_or(format!(
                "missing assignment for vertex `{}`",
                src.vertex_name(VertexId(i as u32))
            ))
        })
        .collect::<Result<_, _>>()?;
    let emap: Vec<EdgeWord> = emap
        .into_iter()
        .enumerate()
        .map(|(i, e)| {
            e.ok_or(format!(
                "missing assignment for edge `{}`",
                src.edge_name(diagroup::complex::EdgeId(i as u32))
            ))
        })
        .collect::<Result<_, _>>()?;
    let cmap: Vec<Diagram> = cmap
        .into_iter()
        .enumerate()
        .map(|(i, c)| {
            c.ok_or(format!(
                "missing assignment for cell `{}`",
                src.cell_name(diagroup::complex::CellId(i as u32))
            ))
        })
        .collect::<Result<_, _>>()?;
    diagroup::complex::validate_morphism(src, dst, vmap, emap, cmap).map_err(|e| e.to_string())
}

fn parse_inline_cell_image(
    src: &DirectedComplex,
    dst: &DirectedComplex,
    emap: &[Option<EdgeWord>],
    cell: diagroup::complex::CellId,
    steps: &str,
) -> Result<Diagram, String> {
    // The image diagram's top is the edge-map image of the cell's top, so
    // the edge lines must come first in the file.
    let top_src = src.top(CellRef::positive(cell));
    let mut top = None::<EdgeWord>;
    for &e in top_src.edges() {
        let img = emap[e.0 as usize]
            .as_ref()
            .ok_or_else(|| "cell image given before its edges' images".to_string())?;
        top = Some(match top {
            None => img.clone(),
            Some(t) => dst.concat_words(&t, img),
        });
    }
    let top = top.ok_or_else(|| "cell with empty top".to_string())?;
    let text = format!("top: {}\nsteps: {}\n", dst.display_word(&top), steps);
    diagram::parse(dst, &text).map_err(|e| e.to_string())
}
