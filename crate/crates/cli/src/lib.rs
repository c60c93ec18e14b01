//! Command-line front end. `run` returns the process exit code:
//! 0 on success, 1 when a check fails, 2 on a usage or input error.

use std::fs;
use std::io::IsTerminal;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use ktree_thickness::book::{embed_2tree_forests, embed_star_forests};
use ktree_thickness::geom::{draw_forests, draw_planar_2tree, draw_thickness};
use ktree_thickness::graph::{
    complete_split, qk_graph, random_ktree, star_lb_graph, Colouring, Edge, SplitParts,
};
use ktree_thickness::oracle::{
    exact_arboricity, exact_book_thickness, exact_star_arboricity, exact_thickness,
    inequality_chain_check, OracleResult,
};
use ktree_thickness::verify::{
    check_book, check_drawing_layers, check_good, refute_outerthickness, refute_star_arboricity,
    refute_thickness, LayerMode, Report,
};
use ktree_thickness::{BookEmbedding, Drawing, Graph, KTreeBuild};

pub mod svg;

#[derive(Parser, Debug)]
#[command(name = "ktt", version, about = "Book embeddings and thickness drawings of k-trees")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a k-tree build or a lower-bound gadget.
    Gen {
        #[arg(value_enum)]
        kind: GenKind,
        #[arg(long)]
        k: usize,
        /// Vertex count for `ktree`.
        #[arg(long)]
        n: Option<usize>,
        /// Independent-set size for `split`.
        #[arg(long)]
        s: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: Out,
    },
    /// Book-embed a k-tree build.
    Embed {
        #[arg(value_enum)]
        kind: EmbedKind,
        #[command(flatten)]
        io: Io,
    },
    /// Draw a k-tree build with exact rational coordinates.
    Draw {
        #[arg(value_enum)]
        kind: DrawKind,
        #[command(flatten)]
        io: Io,
    },
    /// Check an embedding or drawing; exits 1 on any violation.
    Verify {
        #[arg(value_enum)]
        kind: VerifyKind,
        #[arg(short, long)]
        input: PathBuf,
        /// Graph or build the artifact must cover; defaults to its own edges.
        #[arg(short, long)]
        graph: Option<PathBuf>,
        #[arg(long, default_value = "noncrossing")]
        mode: LayerMode,
    },
    /// Exact small-graph parameters by exhaustive search.
    Oracle {
        #[arg(value_enum)]
        kind: OracleKind,
        #[arg(short, long)]
        input: PathBuf,
        /// Print the full result with witness and search statistics.
        #[arg(long)]
        json: bool,
    },
    /// Find a monochromatic obstruction in a colouring of a gadget.
    Refute {
        #[arg(value_enum)]
        kind: RefuteKind,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        s: Option<usize>,
        /// Colour count of the random colouring.
        #[arg(long)]
        ell: Option<usize>,
        /// Edge colouring as `{"u-v": colour}`; random under `--seed` if absent.
        #[arg(short, long)]
        colouring: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Render a drawing or book embedding as SVG.
    ExportSvg {
        #[command(flatten)]
        io: Io,
        #[arg(long, default_value_t = 600)]
        size: u32,
    },
}

#[derive(Args, Debug)]
struct Io {
    #[arg(short, long)]
    input: PathBuf,
    #[command(flatten)]
    out: Out,
}

#[derive(Args, Debug)]
struct Out {
    /// Output file; standard output if absent.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum GenKind {
    Ktree,
    Split,
    Qk,
    StarLb,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum EmbedKind {
    Stars,
    Forests2,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum DrawKind {
    Planar2,
    Forests,
    Thickness,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum VerifyKind {
    Book,
    Drawing,
    Good,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum OracleKind {
    Bt,
    Tt,
    Arb,
    Sa,
    Chain,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum RefuteKind {
    Tt,
    Ot,
    Sa,
}

/// Bad arguments or unreadable input: exit code 2.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

enum Status {
    Ok,
    Failed,
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion) => {
            print!("{e}");
            return 0;
        }
        Err(e) => {
            report_error("usage", &e.to_string());
            return 2;
        }
    };
    match dispatch(cli.command) {
        Ok(Status::Ok) => 0,
        Ok(Status::Failed) => 1,
        Err(e) if e.downcast_ref::<Usage>().is_some() => {
            report_error("usage", &format!("{e:#}"));
            2
        }
        Err(e) => {
            report_error("failure", &format!("{e:#}"));
            1
        }
    }
}

fn report_error(kind: &str, msg: &str) {
    eprintln!("{}", json!({ "error": kind, "message": msg.trim() }));
}

fn read_json(path: &Path) -> anyhow::Result<Value> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| usage(format!("{} is not JSON: {e}", path.display())))
}

fn read_build(path: &Path) -> anyhow::Result<KTreeBuild> {
    KTreeBuild::from_json(&read_json(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path) -> anyhow::Result<Graph> {
    Graph::from_json(&read_json(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn write_out(out: &Out, text: &str) -> anyhow::Result<()> {
    match &out.output {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn write_json(out: &Out, value: &Value) -> anyhow::Result<()> {
    write_out(out, &format!("{}\n", serde_json::to_string_pretty(value)?))
}

fn status_line(passed: bool) {
    let plain = std::env::var_os("NO_COLOR").is_some() || !std::io::stderr().is_terminal();
    let word = if passed { "PASS" } else { "FAIL" };
    if plain {
        eprintln!("{word}");
    } else {
        eprintln!("\x1b[{}m{word}\x1b[0m", if passed { 32 } else { 31 });
    }
}

fn finish(report: &Report) -> anyhow::Result<Status> {
    println!("{}", serde_json::to_string_pretty(&report.to_json())?);
    status_line(report.passed);
    Ok(if report.passed { Status::Ok } else { Status::Failed })
}

fn dispatch(cmd: Command) -> anyhow::Result<Status> {
    match cmd {
        Command::Gen { kind, k, n, s, seed, out } => {
            let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| usage(format!("--{flag} is required")));
            let value = match kind {
                GenKind::Ktree => random_ktree(k, need(n, "n")?, seed).map_err(|e| usage(e.to_string()))?.to_json(),
                GenKind::Split => complete_split(k, need(s, "s")?).map_err(|e| usage(e.to_string()))?.to_json(),
                GenKind::Qk => qk_graph(k).map_err(|e| usage(e.to_string()))?.to_json(),
                GenKind::StarLb => {
                    let gadget = star_lb_graph(k).map_err(|e| usage(e.to_string()))?;
                    let mut value = gadget.graph.to_json();
                    let obj = value.as_object_mut().expect("graph json is an object");
                    obj.insert("clique".into(), json!(gadget.parts.clique));
                    obj.insert("independent".into(), json!(gadget.parts.independent));
                    obj.insert("pendants".into(), json!(gadget.pendants));
                    value
                }
            };
            write_json(&out, &value)?;
            Ok(Status::Ok)
        }
        Command::Embed { kind, io } => {
            let b = read_build(&io.input)?;
            let emb = match kind {
                EmbedKind::Stars => embed_star_forests(&b),
                EmbedKind::Forests2 => embed_2tree_forests(&b),
            }
            .map_err(|e| usage(e.to_string()))?;
            write_json(&io.out, &emb.to_json())?;
            Ok(Status::Ok)
        }
        Command::Draw { kind, io } => {
            let b = read_build(&io.input)?;
            let d = match kind {
                DrawKind::Planar2 => draw_planar_2tree(&b),
                DrawKind::Forests => draw_forests(&b),
                DrawKind::Thickness => draw_thickness(&b),
            }
            .map_err(|e| anyhow!("construction failed: {e}"))?;
            write_json(&io.out, &d.to_json())?;
            Ok(Status::Ok)
        }
        Command::Verify { kind, input, graph, mode } => {
            let artifact = read_json(&input)?;
            let report = match kind {
                VerifyKind::Book => {
                    let emb = BookEmbedding::from_json(&artifact).map_err(|e| usage(e.to_string()))?;
                    let g = match &graph {
                        Some(p) => read_graph(p)?,
                        None => graph_of(emb.order.iter().copied().max(), emb.pages.keys())?,
                    };
                    check_book(&emb, &g, mode)?
                }
                VerifyKind::Drawing => {
                    let d = Drawing::from_json(&artifact).map_err(|e| usage(e.to_string()))?;
                    let g = match &graph {
                        Some(p) => read_graph(p)?,
                        None => d.graph(),
                    };
                    check_drawing_layers(&d, &g, mode)?
                }
                VerifyKind::Good => {
                    let d = Drawing::from_json(&artifact).map_err(|e| usage(e.to_string()))?;
                    let p = graph.ok_or_else(|| usage("verify good needs --graph with the k-tree build"))?;
                    check_good(&d, &read_build(&p)?)?
                }
            };
            finish(&report)
        }
        Command::Oracle { kind, input, json } => {
            let g = read_graph(&input)?;
            let result: OracleResult = match kind {
                OracleKind::Bt => exact_book_thickness(&g)?,
                OracleKind::Tt => exact_thickness(&g)?,
                OracleKind::Arb => exact_arboricity(&g)?,
                OracleKind::Sa => exact_star_arboricity(&g)?,
                OracleKind::Chain => {
                    let c = inequality_chain_check(&g)?;
                    let value = json!({
                        "thickness": c.thickness,
                        "outerthickness": c.outerthickness,
                        "arboricity": c.arboricity,
                        "star_arboricity": c.star_arboricity,
                        "report": c.report.to_json(),
                    });
                    println!("{}", serde_json::to_string_pretty(&value)?);
                    status_line(c.report.passed);
                    return Ok(if c.report.passed { Status::Ok } else { Status::Failed });
                }
            };
            if json {
                println!("{}", serde_json::to_string_pretty(&result.to_json())?);
            } else {
                println!("{}", result.value);
            }
            Ok(Status::Ok)
        }
        Command::Refute { kind, k, s, ell, colouring, seed } => refute(kind, k, s, ell, colouring, seed),
        Command::ExportSvg { io, size } => {
            let artifact = read_json(&io.input)?;
            let text = if artifact.get("positions").is_some() {
                svg::drawing_svg(&Drawing::from_json(&artifact).map_err(|e| usage(e.to_string()))?, size)
            } else if artifact.get("order").is_some() {
                svg::book_svg(&BookEmbedding::from_json(&artifact).map_err(|e| usage(e.to_string()))?, size)
            } else {
                return Err(usage(format!("{} is neither a drawing nor a book embedding", io.input.display())));
            };
            write_out(&io.out, &text)?;
            Ok(Status::Ok)
        }
    }
}

fn graph_of<'a>(max_vertex: Option<usize>, edges: impl Iterator<Item = &'a Edge>) -> anyhow::Result<Graph> {
    let mut g = Graph::new(max_vertex.map_or(0, |m| m + 1));
    for e in edges {
        if e.hi() >= g.vertex_count() {
            return Err(usage(format!("edge {e} leaves the vertex order")));
        }
        g.add_edge(e.lo(), e.hi());
    }
    Ok(g)
}

fn read_colouring(path: &Path) -> anyhow::Result<Colouring> {
    let raw: std::collections::BTreeMap<String, usize> = serde_json::from_value(read_json(path)?)
        .map_err(|e| usage(format!("{}: {e}", path.display())))?;
    raw.iter()
        .map(|(k, &c)| Ok((k.parse::<Edge>().map_err(|e| usage(e.to_string()))?, c)))
        .collect()
}

fn random_colouring(g: &Graph, ell: usize, seed: u64) -> Colouring {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    g.edges().into_iter().map(|e| (e, rng.gen_range(1..=ell))).collect()
}

fn refute(
    kind: RefuteKind,
    k: usize,
    s: Option<usize>,
    ell: Option<usize>,
    colouring: Option<PathBuf>,
    seed: u64,
) -> anyhow::Result<Status> {
    let (g, parts, gadget) = match kind {
        RefuteKind::Sa => {
            let gadget = star_lb_graph(k).map_err(|e| usage(e.to_string()))?;
            (gadget.graph.clone(), gadget.parts.clone(), Some(gadget))
        }
        RefuteKind::Tt | RefuteKind::Ot => {
            let s = s.ok_or_else(|| usage("--s is required"))?;
            let parts = SplitParts::new(k, s);
            (parts.graph(), parts, None)
        }
    };
    let default_ell = match kind {
        RefuteKind::Tt => k.div_ceil(2).saturating_sub(1),
        RefuteKind::Ot | RefuteKind::Sa => k.saturating_sub(1).max(1),
    };
    let ell = ell.unwrap_or(default_ell);
    if ell == 0 {
        return Err(usage("--ell must be positive"));
    }
    let c = match &colouring {
        Some(p) => read_colouring(p)?,
        None => random_colouring(&g, if matches!(kind, RefuteKind::Sa) { k } else { ell }, seed),
    };
    let found = match kind {
        RefuteKind::Tt => refute_thickness(&parts, &c, ell),
        RefuteKind::Ot => refute_outerthickness(&parts, &c, ell),
        RefuteKind::Sa => refute_star_arboricity(gadget.as_ref().expect("gadget"), &c),
    };
    match found {
        Ok(w) => {
            println!("{}", serde_json::to_string_pretty(&w.to_json())?);
            status_line(true);
            Ok(Status::Ok)
        }
        Err(e @ ktree_thickness::verify::VerifyError::Precondition(_)) => Err(usage(e.to_string())),
        Err(e) => {
            eprintln!("{}", json!({ "error": "no witness", "message": e.to_string() }));
            status_line(false);
            Ok(Status::Failed)
        }
    }
}
