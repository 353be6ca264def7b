use std::fmt::Write as _;
use std::io::Read as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use distrank::{
    census_by_distance_rank, continuants, encode_graph6, moore_bound, nullity_family,
    parse_clique_tree, parse_edge_list, parse_graph6, parse_power_sequence, quotient_matrix,
    ramsey_value, search_singular_power_sequences, singular_gadget_triples, twin_partition,
    CensusOptions, Graph, Rat,
};

#[derive(Parser)]
#[command(name = "distrank", version, about = "Exact ranks and nullities of graph distance matrices")]
struct Cli {
    /// Output style: aligned human-readable lines or tab-separated fields.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Tsv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum InputFormat {
    EdgeList,
    Graph6,
}

#[derive(Subcommand)]
enum Command {
    /// Distance rank, nullity, and diameter data for one graph.
    Rank(GraphInput),
    /// Scan all connected graphs up to an order for a given distance rank.
    Census(CensusArgs),
    /// Threshold-graph nullity from the continuant recursion.
    Threshold(ThresholdArgs),
    /// Trivially perfect graphs given as rooted clique trees.
    Tp(TpArgs),
    /// Moore-type order bound at the Ramsey number.
    Bound(BoundArgs),
    /// Twin partition and quotient matrix of one graph.
    Quotient(GraphInput),
}

#[derive(Args)]
struct GraphInput {
    /// Input file; `-` reads standard input.
    path: String,
    #[arg(long, value_enum, default_value_t = InputFormat::EdgeList)]
    input_format: InputFormat,
}

#[derive(Args)]
struct CensusArgs {
    /// Target distance rank (>= 2).
    #[arg(long)]
    rank: usize,
    /// Largest order scanned.
    #[arg(long, default_value_t = 7)]
    max_n: usize,
    /// Restrict to one contiguous shard `INDEX/OF` of the mask space.
    #[arg(long)]
    shard: Option<String>,
    /// Report isomorphism-class representatives (always on; kept as an
    /// explicit switch for scripts).
    #[arg(long, default_value_t = true)]
    dedupe: bool,
    /// Worker threads for the scan; 0 lets the pool decide.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Permit orders above the default cap of 7 (hard limit 11).
    #[arg(long, default_value_t = false)]
    max_n_override: bool,
}

#[derive(Args)]
struct ThresholdArgs {
    /// Power sequence, e.g. `4,1,3,2`.
    sequence: Option<String>,
    /// Search every sequence with at most this many vertices and report
    /// the singular ones.
    #[arg(long, conflicts_with = "sequence")]
    search: Option<u64>,
}

#[derive(Args)]
struct TpArgs {
    /// Rooted clique tree, e.g. `6(7(9,8),9(8(6,7),6))`.
    tree: Option<String>,
    /// Build the nullity family: `K R N [ROOT_SIZES...]`.
    #[arg(long, num_args = 3.., value_name = "K R N SIZES", conflicts_with_all = ["tree", "gadgets"])]
    family: Option<Vec<u64>>,
    /// List singular gadget triples with entries up to this bound.
    #[arg(long, conflicts_with = "tree")]
    gadgets: Option<u64>,
}

#[derive(Args)]
struct BoundArgs {
    #[arg(long)]
    k: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> Result<String, Box<dyn std::error::Error>> {
    match &cli.command {
        Command::Rank(input) => cmd_rank(cli.format, input),
        Command::Census(args) => cmd_census(cli.format, args),
        Command::Threshold(args) => cmd_threshold(cli.format, args),
        Command::Tp(args) => cmd_tp(cli.format, args),
        Command::Bound(args) => cmd_bound(cli.format, args),
        Command::Quotient(input) => cmd_quotient(cli.format, input),
    }
}

fn read_graph(input: &GraphInput) -> Result<Graph, Box<dyn std::error::Error>> {
    let text = if input.path == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        buf
    } else {
        std::fs::read_to_string(&input.path)?
    };
    let g = match input.input_format {
        InputFormat::EdgeList => parse_edge_list(&text)?,
        InputFormat::Graph6 => parse_graph6(text.trim())?,
    };
    Ok(g)
}

fn kv(out: &mut String, format: Format, key: &str, value: impl std::fmt::Display) {
    match format {
        Format::Table => writeln!(out, "{key}: {value}").unwrap(),
        Format::Tsv => writeln!(out, "{key}\t{value}").unwrap(),
    }
}

fn cmd_rank(format: Format, input: &GraphInput) -> Result<String, Box<dyn std::error::Error>> {
    let g = read_graph(input)?;
    let d = g.distance_matrix()?;
    let rank = d.rank();
    let mut out = String::new();
    kv(&mut out, format, "n", g.n());
    kv(&mut out, format, "m", g.edge_count());
    kv(&mut out, format, "diameter", d.max_entry());
    kv(&mut out, format, "max-degree", g.max_degree());
    kv(&mut out, format, "distance-rank", rank);
    kv(&mut out, format, "nullity", g.n() - rank);
    kv(&mut out, format, "diameter-bound", d.max_entry() + 1);
    Ok(out)
}

fn cmd_census(format: Format, args: &CensusArgs) -> Result<String, Box<dyn std::error::Error>> {
    let shard = match &args.shard {
        None => None,
        Some(spec) => {
            let (i, of) = spec
                .split_once('/')
                .ok_or("shard must be INDEX/OF, e.g. 0/4")?;
            Some((i.parse::<u64>()?, of.parse::<u64>()?))
        }
    };
    if args.jobs > 0 {
        rayon_pool(args.jobs)?;
    }
    let opts = CensusOptions { allow_over_cap: args.max_n_override, shard };
    let witness = census_by_distance_rank(args.rank, args.max_n, opts)?;
    let mut out = String::new();
    let _ = args.dedupe;
    for g in &witness.representatives {
        let g6 = encode_graph6(g)?;
        match format {
            Format::Table => writeln!(out, "witness: {g6} n={} m={}", g.n(), g.edge_count())?,
            Format::Tsv => writeln!(out, "{g6}\t{}\t{}", g.n(), g.edge_count())?,
        }
    }
    kv(&mut out, format, "labeled-count", witness.labeled_count);
    Ok(out)
}

fn rayon_pool(jobs: usize) -> Result<(), Box<dyn std::error::Error>> {
    distrank::configure_thread_pool(jobs)?;
    Ok(())
}

fn join_rats(xs: &[Rat]) -> String {
    xs.iter().map(Rat::to_string).collect::<Vec<_>>().join(",")
}

fn cmd_threshold(
    format: Format,
    args: &ThresholdArgs,
) -> Result<String, Box<dyn std::error::Error>> {
    let mut out = String::new();
    if let Some(budget) = args.search {
        let hits = search_singular_power_sequences(budget)?;
        for ps in hits {
            let d = continuants(&ps.alpha_sequence());
            writeln!(
                out,
                "{}\t{}\t{}\t{}",
                ps,
                ps.total(),
                d.0.last().unwrap(),
                ps.oracle_nullity()
            )?;
        }
        return Ok(out);
    }
    let Some(seq) = &args.sequence else {
        return Err("provide a power sequence or --search".into());
    };
    let ps = parse_power_sequence(seq)?;
    let alphas = ps.alpha_sequence();
    let d = continuants(&alphas);
    kv(&mut out, format, "n", ps.total());
    kv(&mut out, format, "alpha", join_rats(&alphas.0));
    kv(&mut out, format, "d", join_rats(&d.0));
    kv(&mut out, format, "nullity", ps.nullity());
    kv(&mut out, format, "nullity-oracle", ps.oracle_nullity());
    Ok(out)
}

fn cmd_tp(format: Format, args: &TpArgs) -> Result<String, Box<dyn std::error::Error>> {
    let mut out = String::new();
    if let Some(bound) = args.gadgets {
        if bound < 1 {
            return Err("gadget bound must be >= 1".into());
        }
        for (w, a, b) in singular_gadget_triples(bound) {
            match format {
                Format::Table => writeln!(out, "({w}, {a}, {b})")?,
                Format::Tsv => writeln!(out, "{w}\t{a}\t{b}")?,
            }
        }
        return Ok(out);
    }
    if let Some(params) = &args.family {
        let [k, r, n] = params[..3] else { unreachable!() };
        let sizes: Vec<u64> = if params.len() > 3 {
            params[3..].to_vec()
        } else if r == 1 && n >= 7 * k {
            vec![n - 7 * k]
        } else {
            return Err("root sizes required when r > 1".into());
        };
        let tree = nullity_family(k, r, n, &sizes)?;
        kv(&mut out, format, "tree", &tree);
        kv(&mut out, format, "nullity", tree.nullity());
        return Ok(out);
    }
    let Some(text) = &args.tree else {
        return Err("provide a clique tree, --family, or --gadgets".into());
    };
    let tree = parse_clique_tree(text)?;
    writeln!(out, "{}", tree.quotient())?;
    if tree.node_count() >= 2 {
        writeln!(out, "{}", tree.m1_reduction()?)?;
    }
    kv(&mut out, format, "nullity", tree.nullity());
    Ok(out)
}

fn cmd_bound(format: Format, args: &BoundArgs) -> Result<String, Box<dyn std::error::Error>> {
    let (r, exact) = ramsey_value(args.k)?;
    let mut out = String::new();
    kv(&mut out, format, "ramsey", r);
    kv(&mut out, format, "ramsey-exact", exact);
    if r <= 2 {
        // Pole of the bound at r = 2; the only graphs are paths, where
        // diameter + 1 bounds the order directly.
        kv(&mut out, format, "f", "undefined (pole at r = 2; path bound diam+1 applies)");
        return Ok(out);
    }
    let r64 = u64::try_from(r).map_err(|_| "Ramsey bound too large for the order bound")?;
    let f = moore_bound(args.k as u32, r64)?;
    kv(&mut out, format, "f", &f);
    kv(&mut out, format, "floor", f.floor().to_integer());
    Ok(out)
}

fn cmd_quotient(format: Format, input: &GraphInput) -> Result<String, Box<dyn std::error::Error>> {
    let g = read_graph(input)?;
    let p = twin_partition(&g)?;
    let q = quotient_matrix(&g, &p)?;
    let mut out = String::new();
    write!(out, "{p}")?;
    writeln!(out, "{q}")?;
    kv(&mut out, format, "nullity-full", g.distance_matrix()?.to_exact().nullity());
    kv(&mut out, format, "nullity-quotient", q.nullity());
    Ok(out)
}
