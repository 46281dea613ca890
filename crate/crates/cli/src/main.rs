use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use k3m20::cache::Cache;
use k3m20::data::{self, Data, GroupData};
use k3m20::report::Report;
use k3m20::scenarios::{self, conic_setup, Profile, Suite};
use k3m20_core::lattice::{classify_invariant_cases, reduce_binary_form, IntMat, Lattice};
use k3m20_core::projgeom::{max_clique, orbit, IntersectionGraph, PlaneConic, DEFAULT_ORBIT_CAP};
use k3m20_core::rational::fmt_rat;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "k3m20", version, about = "Exact verification of K3 surfaces with M20 symmetry")]
struct Cli {
    /// Directory for cached group closures (default: $K3M20_CACHE_DIR, else no cache).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    output: Output,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run the verification suites.
    Report {
        #[arg(long, value_enum, default_value_t = Profile::Quick)]
        profile: Profile,
        /// Restrict to these suites (repeatable).
        #[arg(long, value_enum)]
        suite: Vec<Suite>,
    },
    /// Computations on a positive definite lattice.
    Lattice {
        /// Gram matrix, rows separated by ';'.
        #[arg(long, global = true, default_value = "4,0,-2;0,4,-2;-2,-2,12")]
        gram: String,
        #[command(subcommand)]
        command: LatticeCommand,
    },
    /// Computations on a finite matrix group.
    Group {
        #[command(flatten)]
        source: GroupSource,
        #[command(subcommand)]
        command: GroupCommand,
    },
    /// Conic orbits and their largest pairwise disjoint subsets.
    Nikulin {
        #[arg(value_enum)]
        surface: Surface,
        /// Orbit to use on X_BH: 16 (default, the A-orbit of C), 80 or 96.
        #[arg(long)]
        orbit: Option<usize>,
        /// Write the disjointness graph in DOT format.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Inspect or empty the closure cache.
    Cache {
        #[command(subcommand)]
        command: CacheCommand,
    },
}

#[derive(Subcommand)]
enum LatticeCommand {
    Det,
    /// Vectors of a given norm.
    Short {
        #[arg(long)]
        norm: i64,
    },
    /// Order and generators of the isometry group.
    Isometries,
    /// Orthogonal complement of a vector.
    Complement {
        /// Comma separated coordinates.
        #[arg(long, allow_hyphen_values = true)]
        vector: String,
    },
    /// Possible (NS, T) pairs of a rank-3 lattice of invariants.
    Classify,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct GroupSource {
    /// A group of the built-in data: mukai, bh, A, N, sigma.
    name: Option<String>,
    /// A TOML file with `field`, `vars` and `[[generators]]`.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Subcommand)]
enum GroupCommand {
    Order,
    Center,
    DerivedIndex,
    ProjectiveOrder,
    /// Element orders of the image in PGL.
    Spectrum,
    /// A basis of the invariant forms of a degree.
    Invariants {
        #[arg(long)]
        degree: u32,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Surface {
    Bh,
    Mukai,
}

#[derive(Subcommand)]
enum CacheCommand {
    List,
    Clear,
}

/// Input errors exit with 2, as clap does for usage errors.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> InputError {
        InputError(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cache = Cache::resolve(cli.cache_dir.clone());
    match run(&cli, &cache) {
        Ok(code) => ExitCode::from(code),
        Err(InputError(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn emit(output: Output, v: &Value) {
    match output {
        Output::Json => println!("{}", serde_json::to_string_pretty(v).unwrap()),
        Output::Text => {
            if let Value::Object(m) = v {
                for (k, x) in m {
                    match x {
                        Value::String(s) => println!("{k}: {s}"),
                        Value::Array(items) if items.iter().all(|i| !i.is_array() && !i.is_object()) => {
                            println!("{k}:");
                            for i in items {
                                println!("  {}", i.as_str().map(String::from).unwrap_or_else(|| i.to_string()));
                            }
                        }
                        _ => println!("{k}: {x}"),
                    }
                }
            }
        }
    }
}

fn run(cli: &Cli, cache: &Cache) -> Result<u8, InputError> {
    let data = Data::builtin();
    match &cli.command {
        Command::Report { profile, suite } => {
            let suites = if suite.is_empty() { Suite::ALL.to_vec() } else { suite.clone() };
            let report = Report::new(*profile, scenarios::run_suites(&data, cache, *profile, &suites));
            match cli.output {
                Output::Json => println!("{}", report.to_json()),
                Output::Text => print!("{}", report.to_text()),
            }
            Ok(report.exit_code() as u8)
        }
        Command::Lattice { gram, command } => {
            emit(cli.output, &lattice(gram, command)?);
            Ok(0)
        }
        Command::Group { source, command } => {
            let g = match (&source.name, &source.file) {
                (Some(n), _) => data.group(n)?.clone(),
                (_, Some(p)) => GroupData::from_toml(&std::fs::read_to_string(p)?)?,
                _ => unreachable!("clap requires one source"),
            };
            emit(cli.output, &group(&g, cache, command)?);
            Ok(0)
        }
        Command::Nikulin { surface, orbit, dot } => {
            emit(cli.output, &nikulin(&data, *surface, *orbit, dot.as_ref())?);
            Ok(0)
        }
        Command::Cache { command } => {
            let Some(dir) = cache.dir() else {
                return Err(InputError("no cache directory: pass --cache-dir or set K3M20_CACHE_DIR".into()));
            };
            let v = match command {
                CacheCommand::List => json!({
                    "dir": dir.display().to_string(),
                    "entries": cache.entries().iter().map(|(d, n)| format!("{d} order {n}")).collect::<Vec<_>>(),
                }),
                CacheCommand::Clear => json!({ "dir": dir.display().to_string(), "removed": cache.clear()? }),
            };
            emit(cli.output, &v);
            Ok(0)
        }
    }
}

fn parse_ints(s: &str) -> Result<Vec<i64>, InputError> {
    s.split(',').map(|x| x.trim().parse::<i64>().map_err(|e| InputError(format!("{x:?}: {e}")))).collect()
}

fn parse_gram(s: &str) -> Result<Lattice, InputError> {
    let rows: IntMat = s.split(';').map(parse_ints).collect::<Result<_, _>>()?;
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(InputError(format!("gram matrix {s:?} is not square")));
    }
    let l = Lattice::new(rows)?;
    if !l.is_positive_definite() {
        return Err(InputError("gram matrix is not positive definite".into()));
    }
    Ok(l)
}

fn lattice(gram: &str, command: &LatticeCommand) -> Result<Value, InputError> {
    let l = parse_gram(gram)?;
    Ok(match command {
        LatticeCommand::Det => json!({ "det": l.det().to_string() }),
        LatticeCommand::Short { norm } => {
            let vs = l.vectors_of_norm(*norm)?;
            json!({ "norm": norm, "count": vs.len(), "vectors": vs.iter().map(|v| format!("{v:?}")).collect::<Vec<_>>() })
        }
        LatticeCommand::Isometries => {
            let g = l.isometry_group()?;
            json!({ "order": g.order, "generators": g.generators.iter().map(|m| format!("{m:?}")).collect::<Vec<_>>() })
        }
        LatticeCommand::Complement { vector } => {
            let v = parse_ints(vector)?;
            if v.len() != l.rank() {
                return Err(InputError(format!("vector has {} coordinates, lattice has rank {}", v.len(), l.rank())));
            }
            let c = l.orthogonal_complement(&v)?;
            let mut out = json!({
                "basis": c.basis_vectors().iter().map(|b| format!("{b:?}")).collect::<Vec<_>>(),
                "gram": format!("{:?}", c.lattice.gram()),
                "det": c.lattice.det().to_string(),
            });
            if let [[a, b], [_, d]] = c.lattice.gram().as_slice().iter().map(|r| [r[0], r[1]]).collect::<Vec<_>>()[..] {
                // reduce the norm form g00 x^2 + 2 g01 xy + g11 y^2
                let (ra, rb, rc) = reduce_binary_form(a, 2 * b, d)?.abc;
                out["reduced_gram"] = json!(format!("{:?}", [[ra, rb / 2], [rb / 2, rc]]));
            }
            out
        }
        LatticeCommand::Classify => {
            let c = classify_invariant_cases(&l)?;
            json!({
                "cases": c.cases.iter().map(|k| format!("n={} NS={:?} T={:?} (a,b,c)={:?} v={:?}", k.n, k.ns_gram, k.t_gram, k.abc, k.ns_vector)).collect::<Vec<_>>(),
                "rejected": c.rejected.len(),
                "odd_b_candidates": c.odd_b_candidates,
            })
        }
    })
}

fn group(g: &GroupData, cache: &Cache, command: &GroupCommand) -> Result<Value, InputError> {
    let k = g.default_field()?;
    let (group, status) = cache.group(g.matrices(&k)?)?;
    let cache_status = format!("{status:?}").to_lowercase();
    Ok(match command {
        GroupCommand::Order => json!({ "order": group.order(), "cache": cache_status }),
        GroupCommand::Center => {
            let z = group.center();
            json!({ "order": z.order(), "scalars": group.scalars().iter().map(ToString::to_string).collect::<Vec<_>>() })
        }
        GroupCommand::DerivedIndex => json!({ "index": group.order() / group.derived_subgroup().order() }),
        GroupCommand::ProjectiveOrder => json!({ "order": group.projective_order() }),
        GroupCommand::Spectrum => {
            let s: serde_json::Map<String, Value> =
                group.projective_order_spectrum().into_iter().map(|(o, n)| (o.to_string(), json!(n))).collect();
            json!({ "projective_element_orders": s })
        }
        GroupCommand::Invariants { degree } => {
            let ring = data::ring(&k, &g.vars);
            let inv = group.fixed_polynomials(&ring, *degree)?;
            json!({ "degree": degree, "dimension": inv.len(), "basis": inv.iter().map(|p| p.display_sigma()).collect::<Vec<_>>() })
        }
    })
}

fn nikulin(data: &Data, surface: Surface, which: Option<usize>, dot: Option<&PathBuf>) -> Result<Value, InputError> {
    let conics: Vec<PlaneConic> = match surface {
        Surface::Bh => {
            let (conic, group) = match which.unwrap_or(16) {
                80 => ("bh_c", "bh"),
                16 => ("bh_c", "A"),
                96 => ("bh_c2", "bh"),
                n => return Err(InputError(format!("no orbit of size {n} is known on X_BH; use 16, 80 or 96"))),
            };
            let s = conic_setup(data, conic, &data.bh.quadrics, group)?;
            orbit(&s.conic, &s.generators, DEFAULT_ORBIT_CAP)?
        }
        Surface::Mukai => {
            if which.is_some() {
                return Err(InputError("--orbit applies to X_BH only".into()));
            }
            let surf = std::slice::from_ref(&data.mukai.f);
            let mut all = Vec::new();
            for name in ["mukai_plus", "mukai_minus"] {
                let s = conic_setup(data, name, surf, "mukai")?;
                all.extend(orbit(&s.conic, &s.generators, DEFAULT_ORBIT_CAP)?);
            }
            all.sort();
            all.dedup();
            all
        }
    };
    let graph = IntersectionGraph::build(&conics);
    if let Some(path) = dot {
        std::fs::write(path, graph.to_dot("disjoint"))?;
    }
    let clique = max_clique(&graph);
    let field = conics.first().map(|c| c.ring().field().clone());
    let witness: Vec<Vec<String>> =
        clique.iter().map(|&i| conics[i].equations().iter().map(ToString::to_string).collect()).collect();
    Ok(json!({
        "orbit_size": conics.len(),
        "disjoint_pairs": graph.edge_count(),
        "max_disjoint": clique.len(),
        "field": field.as_ref().map(ToString::to_string),
        // bracketed coefficients are coordinates in the power basis of a root of this polynomial
        "minpoly": field.as_ref().map(|k| k.minpoly().iter().map(fmt_rat).collect::<Vec<_>>()),
        "witness": witness,
    }))
}
