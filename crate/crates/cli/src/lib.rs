//! Command-line front end for `gpfp`. [`run`] dispatches a [`RunConfig`]
//! to the library and returns the exit code and the rendered report.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gpfp::birkhoff;
use gpfp::counting;
use gpfp::linalg::Rational;
use gpfp::minkowski;
use gpfp::nestedsets::{self, CombinatorialType};
use gpfp::oracle::{self, VerifyLevel};
use gpfp::polymatroid::{self, PairSample};
use gpfp::polytope::{self, EdgeLabel, FacetDescriptor};
use gpfp::{BVector, Budget, Error, Int, Point, Subset, VertexDescriptor};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

pub const SCHEMA_VERSION: u64 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CERTIFICATE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "gpfp",
    version,
    about = "Vertices, facets, faces, counts and certificates for b-parking-function polytopes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// The vector b as comma-separated positive integers, e.g. 1,2,3
    #[arg(long = "b", value_name = "CSV", value_parser = parse_b)]
    pub b: BVector,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Seed for every randomized check; recorded in the output
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Largest vertex set the command may materialize
    #[arg(long, env = "GPFP_BUDGET", default_value_t = Budget::default().max_vertices)]
    pub budget: u64,
    /// Largest brute-force scan (integer boxes, subsystems, face closures)
    #[arg(long, default_value_t = Budget::default().max_cells)]
    pub max_cells: u64,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// List the vertices
    Vertices(Common),
    /// List the facet inequalities
    Facets(Common),
    /// List the edges of the vertex graph with their labels
    Edges(Common),
    /// h-polynomial, by formula and by descents
    Hpoly(Common),
    /// f-vector, by Stirling sums and from the h-polynomial
    Fvector(Common),
    /// Faces indexed by nested sets
    Faces {
        #[command(flatten)]
        common: Common,
        /// Only faces of this dimension
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Combinatorial type and building set
    Type(Common),
    /// z and y coefficients, with seeded support-function checks
    Minkowski {
        #[command(flatten)]
        common: Common,
        /// Number of random directions to check
        #[arg(long, default_value_t = 200)]
        check_dirs: usize,
    },
    /// Maximize a linear functional by the greedy rule
    Greedy {
        #[command(flatten)]
        common: Common,
        /// Weights as comma-separated integers or fractions, e.g. 3,1/2,-1
        #[arg(long = "w", value_name = "CSV", value_parser = parse_weights)]
        w: Weights,
    },
    /// Combinatorial diameter and circuit-walk bound
    Diameter {
        #[command(flatten)]
        common: Common,
        /// Also measure the diameter by breadth-first search
        #[arg(long)]
        verify_bfs: bool,
        /// Number of seeded vertex pairs to walk between
        #[arg(long, default_value_t = 200)]
        pairs: usize,
    },
    /// A maximal-step circuit walk between two vertices
    CircuitWalk {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_name = "CSV", value_parser = parse_point)]
        from: Point,
        #[arg(long, value_name = "CSV", value_parser = parse_point)]
        to: Point,
    },
    /// The relaxed partition system that projects onto the polytope
    Birkhoff {
        #[command(flatten)]
        common: Common,
        /// Run the projection check
        #[arg(long)]
        verify: bool,
    },
    /// Run the certificate battery
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Level::Quick)]
        level: Level,
    },
}

impl Command {
    pub fn common(&self) -> &Common {
        match self {
            Command::Vertices(c)
            | Command::Facets(c)
            | Command::Edges(c)
            | Command::Hpoly(c)
            | Command::Fvector(c)
            | Command::Type(c) => c,
            Command::Faces { common, .. }
            | Command::Minkowski { common, .. }
            | Command::Greedy { common, .. }
            | Command::Diameter { common, .. }
            | Command::CircuitWalk { common, .. }
            | Command::Birkhoff { common, .. }
            | Command::Verify { common, .. } => common,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Command::Vertices(_) => "vertices",
            Command::Facets(_) => "facets",
            Command::Edges(_) => "edges",
            Command::Hpoly(_) => "hpoly",
            Command::Fvector(_) => "fvector",
            Command::Faces { .. } => "faces",
            Command::Type(_) => "type",
            Command::Minkowski { .. } => "minkowski",
            Command::Greedy { .. } => "greedy",
            Command::Diameter { .. } => "diameter",
            Command::CircuitWalk { .. } => "circuit-walk",
            Command::Birkhoff { .. } => "birkhoff",
            Command::Verify { .. } => "verify",
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Table,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    Quick,
    Full,
}

fn parse_b(s: &str) -> Result<BVector, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_point(s: &str) -> Result<Point, String> {
    gpfp::parking::parse_int_csv(s)
        .map(Point)
        .map_err(|e| e.to_string())
}

/// A weight vector for `greedy`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Weights(pub Vec<Rational>);

fn parse_weights(s: &str) -> Result<Weights, String> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<Rational>()
                .map_err(|_| format!("bad weight {:?}", t.trim()))
        })
        .collect::<Result<_, _>>()
        .map(Weights)
}

/// Everything `run` needs, independent of how it was parsed.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub b: BVector,
    pub command: Command,
    pub format: Format,
    pub seed: u64,
    pub budget: Budget,
    pub verify_level: VerifyLevel,
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self, String> {
        let common = cli.command.common().clone();
        if common.budget == 0 || common.max_cells == 0 {
            return Err("budget must be positive".into());
        }
        let verify_level = match cli.command {
            Command::Verify {
                level: Level::Full, ..
            } => VerifyLevel::Full,
            _ => VerifyLevel::Quick,
        };
        Ok(RunConfig {
            b: common.b,
            format: common.format,
            seed: common.seed,
            budget: Budget {
                max_vertices: common.budget,
                max_cells: common.max_cells,
            },
            verify_level,
            command: cli.command,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub exit_code: i32,
    /// The report on stdout.
    pub output: String,
    /// A message for stderr.
    pub error: Option<String>,
}

pub fn run(config: &RunConfig) -> Outcome {
    match build_report(config) {
        Ok((report, passed)) => Outcome {
            exit_code: if passed { EXIT_OK } else { EXIT_CERTIFICATE },
            output: render(&report, config.format),
            error: None,
        },
        Err(e) => {
            let code = match e {
                Error::BudgetExceeded { .. } => EXIT_BUDGET,
                _ => EXIT_USAGE,
            };
            Outcome {
                exit_code: code,
                output: String::new(),
                error: Some(format!("gpfp {}: {e}", config.command.name())),
            }
        }
    }
}

pub fn int(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

fn ints(xs: &[Int]) -> Value {
    Value::Array(xs.iter().map(int).collect())
}

fn point(p: &Point) -> Value {
    ints(&p.0)
}

fn rational(x: &Rational) -> Value {
    if x.is_integer() {
        int(x.numer())
    } else {
        json!(x.to_string())
    }
}

fn one_based(s: Subset) -> Value {
    json!(s.to_one_based())
}

fn facet(b: &BVector, f: &FacetDescriptor) -> Value {
    match f {
        FacetDescriptor::Lower(i) => json!({"kind": "lower", "i": i + 1, "rhs": 1}),
        FacetDescriptor::Upper(set) => {
            json!({"kind": "upper", "set": one_based(*set), "rhs": int(&f.rhs(b))})
        }
    }
}

fn edge_label(label: &EdgeLabel) -> Value {
    match label {
        EdgeLabel::Raise { position, amount } => {
            json!({"kind": "raise", "position": position + 1, "amount": int(amount)})
        }
        EdgeLabel::Drop { position, amount } => {
            json!({"kind": "drop", "position": position + 1, "amount": int(amount)})
        }
        EdgeLabel::Swap { a, b, amount } => {
            json!({"kind": "swap", "a": a + 1, "b": b + 1, "amount": int(amount)})
        }
    }
}

fn vertex_points(b: &BVector, vs: &[VertexDescriptor]) -> Value {
    Value::Array(vs.iter().map(|v| point(&v.point(b))).collect())
}

fn descriptor(b: &BVector, x: &Point) -> gpfp::Result<VertexDescriptor> {
    b.check_len(x.len())?;
    VertexDescriptor::from_point(b, x).ok_or_else(|| Error::NotAVertex(x.to_string()))
}

/// The report and whether every certificate in it passed.
fn build_report(config: &RunConfig) -> gpfp::Result<(Value, bool)> {
    let b = &config.b;
    let budget = &config.budget;
    let n = b.n();
    let mut out = Map::new();
    out.insert("schema_version".into(), json!(SCHEMA_VERSION));
    out.insert("command".into(), json!(config.command.name()));
    out.insert("b".into(), ints(b.entries()));
    out.insert("seed".into(), json!(config.seed));
    let mut passed = true;
    let claim: &str;
    match &config.command {
        Command::Vertices(_) => {
            claim = "vertices are the rearrangements of (1,..,1,S_k,S_{k+1},..,S_n), one block of ones per admissible k";
            let vs = polytope::vertices_within(b, budget)?;
            out.insert("count".into(), json!(vs.len()));
            out.insert("vertices".into(), vertex_points(b, &vs));
        }
        Command::Facets(_) => {
            claim = "facets are x_i >= 1 and the upper bounds on sums over nonempty I, skipping |I| = n-1 when b_1 = 1";
            let fs = polytope::facets(b);
            out.insert("count".into(), json!(fs.len()));
            out.insert(
                "facets".into(),
                Value::Array(fs.iter().map(|f| facet(b, f)).collect()),
            );
        }
        Command::Edges(_) => {
            claim = "edges join vertices differing by a raise, a drop, or a swap of consecutive partial sums";
            let g = polytope::edge_graph(b, budget)?;
            out.insert("vertices".into(), Value::Array(g.points.iter().map(point).collect()));
            out.insert("count".into(), json!(g.edges.len()));
            out.insert(
                "edges".into(),
                Value::Array(
                    g.edges
                        .iter()
                        .map(|e| json!({"u": e.u, "v": e.v, "label": edge_label(&e.label)}))
                        .collect(),
                ),
            );
        }
        Command::Hpoly(_) | Command::Fvector(_) => {
            claim = "h is the binomial Eulerian polynomial, minus n z A_{n-1}(z) when b_1 = 1; f(t) = h(t+1)";
            budget.check_vertices("vertex enumeration", &polytope::vertex_count(b))?;
            let h = counting::h_polynomial(b);
            let h2 = counting::h_polynomial_by_descents(b);
            let f = counting::f_vector(b);
            let f2 = counting::f_from_h(&h, n);
            out.insert("h".into(), ints(h.coeffs()));
            out.insert("f".into(), ints(&f));
            out.insert("routes_agree".into(), json!(h == h2 && f == f2));
            passed = h == h2 && f == f2;
        }
        Command::Faces { dim, .. } => {
            claim = "faces correspond to nested sets of the building set, with inclusion reversed";
            let lattice = nestedsets::face_lattice(b, budget)?;
            let mut faces = Vec::new();
            for r in &lattice.records {
                if dim.is_none_or(|d| d == r.dim) {
                    let nested: Vec<Value> =
                        r.nested_set.members().iter().map(|m| one_based(*m)).collect();
                    let idx: Vec<usize> = r
                        .vertices
                        .iter()
                        .map(|v| lattice.vertices.iter().position(|w| w == v).unwrap_or(usize::MAX))
                        .collect();
                    faces.push(json!({
                        "nested": nested,
                        "facets": r.facets.iter().map(|f| facet(b, f)).collect::<Vec<_>>(),
                        "vertices": idx,
                        "dim": r.dim,
                    }));
                }
            }
            out.insert("vertices".into(), vertex_points(b, &lattice.vertices));
            out.insert("rank_sizes".into(), json!(lattice.lattice.rank_sizes()));
            out.insert("count".into(), json!(faces.len()));
            out.insert("faces".into(), Value::Array(faces));
        }
        Command::Type(_) => {
            claim = "b_1 = 1 gives the classical parking-function polytope type, b_1 >= 2 the stellohedron";
            let ty = nestedsets::combinatorial_type(b);
            let name = match ty {
                CombinatorialType::ClassicalPF => "classical",
                CombinatorialType::Stellohedron => "stellohedron",
            };
            out.insert("type".into(), json!(name));
            out.insert("description".into(), json!(ty.to_string()));
            let building = nestedsets::building_for(b);
            out.insert(
                "building_set".into(),
                Value::Array(building.members().iter().map(|m| one_based(*m)).collect()),
            );
            out.insert("vertex_count".into(), int(&polytope::vertex_count(b)));
            out.insert("facet_count".into(), int(&polytope::facet_count(b)));
        }
        Command::Minkowski { check_dirs, .. } => {
            claim = "after lifting, the polytope is a generalized permutahedron and a signed Minkowski sum of simplices";
            let zy = minkowski::zy_parameters(b);
            let table = |f: &dyn Fn(Subset) -> Int| -> Value {
                let mut rows = Vec::new();
                for s in 1..=n + 1 {
                    for apex in [false, true] {
                        if (apex && s == 0) || (!apex && s > n) {
                            continue;
                        }
                        let set = if apex {
                            Subset::full(s - 1).insert(n)
                        } else {
                            Subset::full(s)
                        };
                        rows.push(json!({"size": s, "apex": apex, "value": int(&f(set))}));
                    }
                }
                Value::Array(rows)
            };
            out.insert("z".into(), table(&|s| zy.z(s)));
            out.insert("y".into(), table(&|s| zy.y(s)));
            out.insert("is_y_positive".into(), json!(zy.is_y_positive()));
            let gp = minkowski::certify_generalized_permutahedron(b, budget)?;
            out.insert("generalized_permutahedron".into(), json!(gp));
            let dirs = minkowski::random_directions(n + 1, *check_dirs, config.seed);
            let report = minkowski::verify_signed_minkowski(b, &dirs, budget)?;
            out.insert("support_checks".into(), json!(report.checked));
            out.insert("support_checks_passed".into(), json!(report.passed));
            passed = gp && report.all_passed();
        }
        Command::Greedy { w: Weights(w), .. } => {
            claim = "sorting coordinates by weight and assigning the largest partial sums to the positive weights maximizes a linear functional";
            let (x, value) = polymatroid::greedy_maximize(b, w)?;
            let shifted = Point(x.0.iter().map(|c| c + 1).collect());
            let total: Rational = w.iter().sum();
            out.insert("w".into(), Value::Array(w.iter().map(rational).collect()));
            out.insert("polymatroid_point".into(), point(&x));
            out.insert("polymatroid_value".into(), rational(&value));
            out.insert("point".into(), point(&shifted));
            out.insert("value".into(), rational(&(value + total)));
        }
        Command::Diameter { verify_bfs, pairs, .. } => {
            claim = "the vertex graph has diameter min(2n, n(n-1)/2 + 1) when b_1 >= 2 and min(2(n-1), n(n-1)/2) when b_1 = 1; circuit walks need at most n - min k steps";
            let comb = polymatroid::combinatorial_diameter(b);
            out.insert("combinatorial".into(), json!(comb));
            let report = polymatroid::circuit_diameter_upper(
                b,
                PairSample::Seeded {
                    seed: config.seed,
                    count: *pairs,
                },
                budget,
            )?;
            out.insert("circuit_bound".into(), json!(report.bound));
            out.insert("circuit_measured".into(), json!(report.measured));
            out.insert("circuit_pairs".into(), json!(report.pairs));
            out.insert("all_steps_maximal".into(), json!(report.all_steps_maximal));
            passed = report.all_steps_maximal && report.measured <= report.bound;
            if *verify_bfs {
                let g = polytope::edge_graph(b, budget)?;
                let bfs = oracle::bfs_diameter(&g.adjacency)?;
                out.insert("bfs".into(), json!(bfs));
                out.insert("bfs_agrees".into(), json!(bfs == comb));
                passed &= bfs == comb;
            }
        }
        Command::CircuitWalk { from, to, .. } => {
            claim = "any two vertices are joined by at most n - min k maximal integral circuit steps";
            let u = descriptor(b, from)?;
            let v = descriptor(b, to)?;
            let walk = polymatroid::circuit_walk(b, &u, &v)?;
            let ok = polymatroid::walk_is_maximal_and_feasible(b, &walk)?;
            out.insert("from".into(), point(from));
            out.insert("to".into(), point(to));
            out.insert("length".into(), json!(walk.len()));
            out.insert("bound".into(), json!(n - u.k().min(v.k())));
            out.insert(
                "steps".into(),
                Value::Array(
                    walk.steps
                        .iter()
                        .map(|s| {
                            json!({
                                "circuit": s.circuit.to_string(),
                                "length": int(&s.length),
                                "arrival": point(&s.arrival),
                            })
                        })
                        .collect(),
                ),
            );
            out.insert("all_steps_maximal".into(), json!(ok));
            passed = ok;
        }
        Command::Birkhoff { verify, .. } => {
            claim = "the relaxed partition system is integral and projects onto the polytope, its 0/1 points onto the parking functions";
            let system = birkhoff::build_relaxed_partition(b, budget)?;
            out.insert("cars".into(), json!(system.cars));
            out.insert("spots".into(), json!(system.spots));
            out.insert("variables".into(), json!(system.num_vars()));
            out.insert(
                "search_size".into(),
                int(&birkhoff::basic_solution_search_size(&system)),
            );
            if *verify {
                let r = birkhoff::verify_projection(&system, budget)?;
                out.insert("zero_one_points".into(), json!(r.zero_one_points));
                out.insert("parking_functions".into(), json!(r.parking_functions));
                out.insert("projections_match".into(), json!(r.projections_match));
                out.insert("basic_solutions".into(), json!(r.basic_solutions));
                out.insert(
                    "integral".into(),
                    json!(r.fractional_basic_solution.is_none()),
                );
                out.insert("vertices_covered".into(), json!(r.vertices_covered));
                out.insert("passed".into(), json!(r.passed()));
                passed = r.passed();
            }
        }
        Command::Verify { .. } => {
            claim = "every closed-form result agrees with its brute-force check";
            let report = oracle::run_battery(b, config.verify_level, config.seed, budget)?;
            out.insert(
                "level".into(),
                json!(match config.verify_level {
                    VerifyLevel::Quick => "quick",
                    VerifyLevel::Full => "full",
                }),
            );
            out.insert(
                "certificates".into(),
                Value::Array(
                    report
                        .certificates
                        .iter()
                        .map(|c| {
                            json!({
                                "kind": c.kind.name(),
                                "passed": c.passed,
                                "summary": c.summary,
                                "witness": c.witness,
                            })
                        })
                        .collect(),
                ),
            );
            out.insert(
                "skipped".into(),
                Value::Array(
                    report
                        .skipped
                        .iter()
                        .map(|(k, why)| json!({"kind": k.name(), "reason": why}))
                        .collect(),
                ),
            );
            out.insert("passed".into(), json!(report.passed()));
            passed = report.passed();
        }
    }
    out.insert("claim".into(), json!(claim));
    Ok((Value::Object(out), passed))
}

/// JSON is pretty-printed with sorted keys. The table lists the same
/// fields: scalars as `key: value`, arrays one row per entry.
pub fn render(report: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Table => {
            let mut s = String::new();
            if let Value::Object(map) = report {
                for (key, value) in map {
                    table_field(&mut s, key, value);
                }
            }
            s
        }
    }
}

fn table_field(s: &mut String, key: &str, value: &Value) {
    match value {
        Value::Array(rows) if rows.iter().any(|r| r.is_object() || r.is_array()) => {
            let _ = writeln!(s, "{key}:");
            for (i, row) in rows.iter().enumerate() {
                let _ = writeln!(s, "  {i:>4}  {}", cell(row));
            }
        }
        _ => {
            let _ = writeln!(s, "{key}: {}", cell(value));
        }
    }
}

fn cell(value: &Value) -> String {
    match value {
        Value::String(t) => t.clone(),
        Value::Null => "-".into(),
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(cell).collect();
            format!("({})", parts.join(","))
        }
        Value::Object(map) => map
            .iter()
            .map(|(k, v)| format!("{k}={}", cell(v)))
            .collect::<Vec<_>>()
            .join(" "),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(args: &[&str]) -> RunConfig {
        let mut argv = vec!["gpfp"];
        argv.extend_from_slice(args);
        RunConfig::from_cli(Cli::try_parse_from(argv).unwrap()).unwrap()
    }

    #[test]
    fn large_integers_become_strings() {
        assert_eq!(int(&BigInt::from(7)), json!(7));
        let big = BigInt::from(i64::MAX) * 4;
        assert_eq!(int(&big), json!(big.to_string()));
    }

    #[test]
    fn table_rows() {
        let report = json!({"a": 1, "v": [[1, 2], [3, 4]], "s": "x", "w": null});
        assert_eq!(render(&report, Format::Table), "a: 1\ns: x\nv:\n     0  (1,2)\n     1  (3,4)\nw: -\n");
    }

    #[test]
    fn levels_and_budgets() {
        let c = config(&["verify", "--b", "1,2", "--level", "full", "--budget", "50"]);
        assert_eq!(c.verify_level, VerifyLevel::Full);
        assert_eq!(c.budget.max_vertices, 50);
        let argv = ["gpfp", "vertices", "--b", "1,2", "--budget", "0"];
        assert!(RunConfig::from_cli(Cli::try_parse_from(argv).unwrap()).is_err());
        assert!(Cli::try_parse_from(["gpfp", "greedy", "--b", "1,2", "--w", "1,x"]).is_err());
    }

    #[test]
    fn outcomes() {
        let out = run(&config(&["type", "--b", "1,2,3"]));
        assert_eq!(out.exit_code, EXIT_OK);
        assert!(out.output.contains("\"classical\""));
        let out = run(&config(&["vertices", "--b", "4,4,4,4,4,4", "--budget", "10"]));
        assert_eq!(out.exit_code, EXIT_BUDGET);
        assert!(out.output.is_empty());
        let out = run(&config(&["circuit-walk", "--b", "1,2", "--from", "1,1", "--to", "2,2"]));
        assert_eq!(out.exit_code, EXIT_USAGE);
    }
}
