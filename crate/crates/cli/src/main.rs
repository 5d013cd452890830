use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;

use uniconn::canon::DEFAULT_CANON_BUDGET;
use uniconn::constructions::OperationCounts;
use uniconn::extremal::{
    enumerate_extremal, feasible_profiles, generate_extremal, generate_extremal_with_profile,
    OperationProfile, ENUMERATION_BUDGET,
};
use uniconn::graph6::read_corpus;
use uniconn::planar::CROSSING_BUDGET;
use uniconn::report::{analyze, AnalyzeOptions};
use uniconn::treewidth::{treewidth_exact_with_budget, EXTREMAL_TW_BOUND, DEFAULT_TW_BUDGET};
use uniconn::Error;

/// Lines handed to the worker pool at once by `verify`.
const VERIFY_CHUNK: usize = 256;

#[derive(Parser, Debug)]
#[command(name = "uniconn", version, about = "Uniformly 3-connected graphs: generation, enumeration and certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct Common {
    /// Worker threads (default: all cores).
    #[arg(long, global = true, env = "UNICONN_JOBS")]
    jobs: Option<usize>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[arg(long, global = true, default_value_t = DEFAULT_TW_BUDGET)]
    tw_budget: usize,
    #[arg(long, global = true, default_value_t = DEFAULT_CANON_BUDGET)]
    canon_budget: usize,
    #[arg(long, global = true, default_value_t = CROSSING_BUDGET)]
    crossing_budget: usize,
    /// Output file (default: stdout).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Random extremal graph and its construction recipe.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Operation counts, e.g. j=1,t=1,p=2,s=0.
        #[arg(long, value_parser = parse_counts)]
        profile: Option<OperationCounts>,
    },
    /// Analysis report for every graph6 line of INPUT ('-' for stdin).
    Verify {
        #[arg(default_value = "-")]
        input: String,
    },
    /// All extremal graphs on n vertices, canonical graph6, sorted.
    Enumerate {
        #[arg(long)]
        n: usize,
        /// Also write the per-profile manifest as JSON here.
        #[arg(long)]
        manifest: Option<PathBuf>,
    },
    /// Largest treewidth among extremal graphs, for each n from 4 to --n.
    ProbeTw {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Graph6,
    Text,
}

struct Failure {
    code: u8,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_budget() {
            2
        } else if e.is_invariant() {
            3
        } else {
            1
        };
        Failure { code, msg: e.to_string() }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure { code: 1, msg: e.to_string() }
    }
}

fn input_error(msg: impl Into<String>) -> Failure {
    Failure { code: 1, msg: msg.into() }
}

fn parse_counts(text: &str) -> Result<OperationCounts, String> {
    let mut vals = [None; 4];
    for part in text.split(',') {
        let (key, val) = part.split_once('=').ok_or_else(|| format!("expected key=value, got {part:?}"))?;
        let i = ["j", "t", "p", "s"]
            .iter()
            .position(|k| *k == key.trim())
            .ok_or_else(|| format!("unknown key {key:?}; use j, t, p, s"))?;
        let v: usize = val.trim().parse().map_err(|_| format!("bad count {val:?}"))?;
        if vals[i].replace(v).is_some() {
            return Err(format!("{key} given twice"));
        }
    }
    match vals {
        [Some(j), Some(t), Some(p), Some(s)] => Ok(OperationCounts::new(j, t, p, s)),
        _ => Err("need all of j, t, p, s".into()),
    }
}

fn open_out(out: &Option<PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn profiles_for(n: usize) -> Vec<OperationProfile> {
    if n == 4 {
        vec![OperationProfile::new(4, OperationCounts::default())]
    } else {
        feasible_profiles(n).unwrap_or_default()
    }
}

fn cmd_gen(c: &Common, n: usize, seed: u64, counts: Option<OperationCounts>) -> Result<(), Failure> {
    if n < 4 {
        return Err(input_error(format!("need n >= 4, got {n}")));
    }
    let (g, recipe) = match counts {
        None => generate_extremal(n, seed)?,
        Some(counts) => {
            let profile = OperationProfile::new(n, counts);
            let legal = profiles_for(n);
            if !legal.contains(&profile) {
                let list: Vec<String> = legal.iter().map(|p| p.counts().to_string()).collect();
                return Err(input_error(format!(
                    "profile {counts} is not feasible for n={n}; feasible: {}",
                    list.join(" | ")
                )));
            }
            generate_extremal_with_profile(profile, seed)?
        }
    };
    let g6 = uniconn::graph6::encode(&g)?;
    let recipe_text = recipe.to_text();
    let mut w = open_out(&c.out)?;
    match c.format.unwrap_or(Format::Graph6) {
        Format::Json => writeln!(
            w,
            "{}",
            json!({"seed": seed, "n": n, "counts": recipe.counts.to_string(), "graph6": g6, "recipe": recipe_text})
        )?,
        Format::Graph6 => {
            writeln!(w, "# uniconn gen n={n} seed={seed} {}", recipe.counts)?;
            writeln!(w, "{g6}")?;
            for line in recipe_text.lines() {
                writeln!(w, "# {line}")?;
            }
        }
        Format::Text => {
            writeln!(w, "# uniconn gen n={n} seed={seed} {}", recipe.counts)?;
            writeln!(w, "{g6}")?;
            writeln!(w)?;
            write!(w, "{recipe_text}")?;
        }
    }
    w.flush()?;
    Ok(())
}

fn analyze_options(c: &Common) -> AnalyzeOptions {
    AnalyzeOptions {
        tw_budget: c.tw_budget,
        canon_budget: c.canon_budget,
        crossing_budget: c.crossing_budget,
        ..Default::default()
    }
}

/// One output line for one input line, plus the exit code it implies.
fn verify_line(line: usize, text: &str, parsed: &uniconn::Result<uniconn::Graph>, opts: &AnalyzeOptions, format: Format) -> (String, u8) {
    let result = parsed.clone().and_then(|g| analyze(&g, opts));
    match (result, format) {
        (Ok(r), Format::Text) => {
            let show = |o: Option<usize>| o.map_or("null".to_string(), |v| v.to_string());
            let crossing = r.crossing.map_or("null".to_string(), |c| c.to_string());
            let unsafe_vs = r.unsafe_vertices.as_ref().map_or("null".to_string(), |v| format!("{v:?}"));
            (
                format!(
                    "{line}\t{}\tn={} m={} nu={} uniform_k={} extremal={} crossing={} tw={} unsafe={}",
                    r.graph6, r.n, r.m, r.nu, show(r.uniform_k), r.extremal, crossing, show(r.treewidth), unsafe_vs
                ),
                0,
            )
        }
        (Ok(r), _) => (r.to_json_line(), 0),
        (Err(e), fmt) => {
            let code = Failure::from(e.clone()).code;
            if fmt == Format::Text {
                (format!("{line}\t{text}\terror: {e}"), code)
            } else {
                (json!({"line": line, "input": text, "error": e.to_string()}).to_string(), code)
            }
        }
    }
}

fn cmd_verify(c: &Common, input: &str) -> Result<(), Failure> {
    let reader: Box<dyn BufRead> = if input == "-" {
        Box::new(BufReader::new(io::stdin().lock()))
    } else {
        Box::new(BufReader::new(File::open(Path::new(input)).map_err(|e| input_error(format!("{input}: {e}")))?))
    };
    let format = c.format.unwrap_or(Format::Json);
    if format == Format::Graph6 {
        return Err(input_error("verify writes json or text"));
    }
    let opts = analyze_options(c);
    let mut w = open_out(&c.out)?;
    let header = json!({"uniconn": "verify", "seed": null, "input": input, "tw_budget": c.tw_budget,
        "canon_budget": c.canon_budget, "crossing_budget": c.crossing_budget});
    match format {
        Format::Text => writeln!(w, "# {header}")?,
        _ => writeln!(w, "{}", json!({ "header": header }))?,
    }
    let mut worst = 0u8;
    let mut entries = read_corpus(reader);
    loop {
        let chunk: Vec<_> = entries.by_ref().take(VERIFY_CHUNK).collect::<io::Result<_>>()?;
        if chunk.is_empty() {
            break;
        }
        // Parallel within a chunk, written in input order.
        let lines: Vec<(String, u8)> =
            chunk.par_iter().map(|e| verify_line(e.line, &e.text, &e.graph, &opts, format)).collect();
        for (text, code) in lines {
            writeln!(w, "{text}")?;
            worst = worst.max(code);
        }
    }
    w.flush()?;
    if worst == 0 {
        Ok(())
    } else {
        Err(Failure { code: worst, msg: "some inputs failed; see error records".into() })
    }
}

fn check_enum_n(n: usize) -> Result<(), Failure> {
    if n < 4 {
        return Err(input_error(format!("need n >= 4, got {n}")));
    }
    if n > ENUMERATION_BUDGET {
        return Err(Failure {
            code: 2,
            msg: format!("enumeration budget exceeded: n {n} > {ENUMERATION_BUDGET}"),
        });
    }
    Ok(())
}

fn cmd_enumerate(c: &Common, n: usize, manifest_path: Option<&Path>) -> Result<(), Failure> {
    check_enum_n(n)?;
    let e = enumerate_extremal(n)?;
    let manifest = e.manifest();
    let all = e.all();
    let mut w = open_out(&c.out)?;
    match c.format.unwrap_or(Format::Graph6) {
        Format::Json => writeln!(w, "{}", json!({"seed": null, "manifest": manifest, "graphs": all}))?,
        _ => {
            writeln!(w, "# uniconn enumerate n={n} seed=none total={}", manifest.total)?;
            for g in &all {
                writeln!(w, "{g}")?;
            }
        }
    }
    w.flush()?;
    if let Some(p) = manifest_path {
        let text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
        std::fs::write(p, text + "\n")?;
    }
    Ok(())
}

fn cmd_probe_tw(c: &Common, n_max: usize) -> Result<(), Failure> {
    check_enum_n(n_max)?;
    let mut rows = Vec::new();
    for n in 4..=n_max {
        let graphs: Vec<_> = enumerate_extremal(n)?.all().into_iter().collect();
        let widths: Vec<usize> = graphs
            .par_iter()
            .map(|g6| treewidth_exact_with_budget(&g6.to_graph(), c.tw_budget).map(|r| r.width))
            .collect::<uniconn::Result<_>>()?;
        let max = widths.iter().copied().max().unwrap_or(0);
        let witness = graphs[widths.iter().position(|&w| w == max).unwrap_or(0)].clone();
        let mut hist = std::collections::BTreeMap::new();
        for w in &widths {
            *hist.entry(w.to_string()).or_insert(0usize) += 1;
        }
        rows.push(json!({"n": n, "graphs": graphs.len(), "max_tw": max, "witness": witness, "histogram": hist}));
        if max > EXTREMAL_TW_BOUND {
            return Err(Failure {
                code: 3,
                msg: format!("extremal graph {witness} on {n} vertices has treewidth {max} > {EXTREMAL_TW_BOUND}"),
            });
        }
    }
    let mut w = open_out(&c.out)?;
    match c.format.unwrap_or(Format::Text) {
        Format::Json => writeln!(w, "{}", json!({"seed": null, "bound": EXTREMAL_TW_BOUND, "rows": rows}))?,
        _ => {
            writeln!(w, "# uniconn probe-tw n_max={n_max} seed=none bound={EXTREMAL_TW_BOUND}")?;
            writeln!(w, "n\tgraphs\tmax_tw\twitness")?;
            for r in &rows {
                writeln!(w, "{}\t{}\t{}\t{}", r["n"], r["graphs"], r["max_tw"], r["witness"].as_str().unwrap())?;
            }
            writeln!(w, "# all rows <= {EXTREMAL_TW_BOUND}")?;
        }
    }
    w.flush()?;
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    if let Some(j) = cli.common.jobs {
        if j == 0 {
            return Err(input_error("--jobs must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build_global()
            .map_err(|e| Failure { code: 3, msg: e.to_string() })?;
    }
    let c = &cli.common;
    match cli.command {
        Command::Gen { n, seed, profile } => cmd_gen(c, n, seed, profile),
        Command::Verify { input } => cmd_verify(c, &input),
        Command::Enumerate { n, manifest } => cmd_enumerate(c, n, manifest.as_deref()),
        Command::ProbeTw { n } => cmd_probe_tw(c, n),
    }
}

fn main() -> ExitCode {
    // Usage errors are input errors (1); clap's own code 2 means a budget here.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("uniconn: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
