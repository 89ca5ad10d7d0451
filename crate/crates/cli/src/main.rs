//! `trikit`: command-line access to the trikit analyses.
//!
//! Exit codes: 0 on success, 1 when a check or verdict comes out negative,
//! 2 on input errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;
use trikit::bounds::analyze;
use trikit::combinatoriality::{bistellar_sphere_heuristic, small_link_certificate, CertificateVerdict};
use trikit::fixtures::{fixture, FixtureParams, FIXTURE_NAMES};
use trikit::homology::{cohomology, homology, reduced_cohomology, reduced_homology};
use trikit::io::{parse_assertions, parse_facets, write_facets, Assertions};
use trikit::pi1::{
    abelianization, edge_path_presentation_with, freeness_verdict, tietze_simplify, QuotientSearch, SpanningTree,
    DEFAULT_TIETZE_EFFORT,
};
use trikit::verify::{alexander_duality_check, complement_homology_check, local_homology_sweep, CertifiedSphere};
use trikit::{Coefficients, Error, SimplicialComplex, VertexSet};

#[derive(Parser)]
#[command(name = "trikit", version, about = "Homology, fundamental groups and vertex bounds for triangulations")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for parallel sections (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Facet-list file: one facet per line, whitespace-separated labels.
    file: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension, f-vector, pseudomanifold and orientability report.
    Info(Input),
    /// Homology or cohomology groups.
    Homology {
        #[command(flatten)]
        input: Input,
        /// Coefficient ring: z, z2, z3, ...
        #[arg(long, default_value = "z")]
        coeff: String,
        #[arg(long)]
        reduced: bool,
        #[arg(long)]
        cohomology: bool,
    },
    /// Reduced homology of every link.
    Links(Input),
    /// Edge-path presentation of the fundamental group and a freeness verdict.
    Pi1 {
        #[command(flatten)]
        input: Input,
        /// Use a random spanning tree with this seed instead of BFS.
        #[arg(long)]
        seed: Option<u64>,
        /// Node budget of the finite-quotient search.
        #[arg(long, default_value_t = QuotientSearch::default().node_budget)]
        budget: usize,
        /// Largest symmetric group S_n searched.
        #[arg(long, default_value_t = 5)]
        max_degree: usize,
    },
    /// Vertex-count bounds and sphere verdicts.
    Bounds {
        #[command(flatten)]
        input: Input,
        /// File of key=value assertions (pi1=not-free|free|trivial, simply-connected=true|false).
        #[arg(long = "assert")]
        assertions: Option<PathBuf>,
    },
    /// Small-link certificate that the triangulation is combinatorial.
    CheckCombinatorial {
        #[command(flatten)]
        input: Input,
        /// Also try bistellar reduction to the boundary of a simplex, with this move budget.
        #[arg(long)]
        bistellar: Option<usize>,
    },
    /// Alexander duality between complementary full subcomplexes of a sphere.
    VerifyDuality {
        #[command(flatten)]
        input: Input,
        /// Comma-separated vertex labels of one side; random partitions if omitted.
        #[arg(long)]
        subset: Option<String>,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Homology of the full subcomplex complementary to a facet.
    VerifyComplement {
        #[command(flatten)]
        input: Input,
        /// Comma-separated labels of the facet; every facet if omitted.
        #[arg(long)]
        facet: Option<String>,
    },
    /// Write a built-in triangulation as a facet file.
    Fixture {
        /// One of boundary_simplex, cross_polytope, cyclic, rp2_6, torus_7, cp2_9.
        name: String,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

struct Outcome {
    negative: bool,
}

impl Outcome {
    fn ok() -> Self {
        Outcome { negative: false }
    }

    fn negative_if(negative: bool) -> Self {
        Outcome { negative }
    }
}

fn read_complex(path: &Path) -> Result<SimplicialComplex, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_facets(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn labels(list: &str) -> Vec<String> {
    list.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()
}

fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable output"));
}

fn run(cli: &Cli) -> Result<Outcome, String> {
    let err = |e: Error| e.to_string();
    match &cli.command {
        Command::Info(input) => {
            let k = read_complex(&input.file)?;
            let pm = k.pseudomanifold_report();
            let orient = k.orientability().ok();
            if cli.json {
                print_json(&json!({
                    "dimension": k.dim(),
                    "vertices": k.num_vertices(),
                    "facets": k.facets().len(),
                    "f_vector": k.f_vector(),
                    "connected": k.is_connected(),
                    "pseudomanifold": pm,
                    "closed_pseudomanifold": pm.is_closed_pseudomanifold(),
                    "orientability": orient,
                }));
            } else {
                println!("dimension: {}", k.dim());
                println!("vertices: {}", k.num_vertices());
                println!("f-vector: {:?}", k.f_vector());
                println!("connected: {}", k.is_connected());
                println!(
                    "closed pseudomanifold: {} (pure {}, ridges of degree two {}, strongly connected {})",
                    pm.is_closed_pseudomanifold(),
                    pm.pure,
                    pm.ridge_degree_two,
                    pm.strongly_connected
                );
                if let Some(r) = &pm.bad_ridge {
                    println!("bad ridge: [{}]", r.join(" "));
                }
                match orient {
                    Some(o) => println!("orientability: {}", serde_json::to_value(o).unwrap().as_str().unwrap()),
                    None => println!("orientability: n/a"),
                }
            }
            Ok(Outcome::ok())
        }
        Command::Homology { input, coeff, reduced, cohomology: co } => {
            let k = read_complex(&input.file)?;
            let ring = Coefficients::parse(coeff).map_err(err)?;
            let profile = match (*reduced, *co) {
                (false, false) => homology(&k, ring),
                (true, false) => reduced_homology(&k, ring),
                (false, true) => cohomology(&k, ring),
                (true, true) => reduced_cohomology(&k, ring),
            }
            .map_err(err)?;
            if cli.json {
                print_json(&profile);
            } else {
                println!("{profile}");
            }
            Ok(Outcome::ok())
        }
        Command::Links(input) => {
            let k = read_complex(&input.file)?;
            let reports = local_homology_sweep(&k).map_err(err)?;
            let bad = reports.iter().filter(|r| !r.homology_sphere).count();
            if cli.json {
                print_json(&reports);
            } else {
                for r in &reports {
                    println!(
                        "[{}] link dim {} vertices {}: {}{}",
                        r.simplex.join(" "),
                        r.link_dim,
                        r.link_vertices,
                        r.reduced_homology,
                        if r.homology_sphere { "" } else { "  NOT a homology sphere" }
                    );
                }
                println!("{} links, {} not homology spheres", reports.len(), bad);
            }
            Ok(Outcome::negative_if(bad > 0))
        }
        Command::Pi1 { input, seed, budget, max_degree } => {
            let k = read_complex(&input.file)?;
            let tree = seed.map_or(SpanningTree::Bfs, SpanningTree::Random);
            let p = edge_path_presentation_with(&k, tree).map_err(err)?;
            let simplified = tietze_simplify(&p, DEFAULT_TIETZE_EFFORT);
            let ab = abelianization(&p);
            let verdict = freeness_verdict(&p, QuotientSearch { max_degree: *max_degree, node_budget: *budget });
            if cli.json {
                print_json(&json!({
                    "presentation": p,
                    "simplified": simplified,
                    "simplified_text": simplified.to_string(),
                    "abelianization": ab,
                    "verdict": verdict,
                    "certificate_valid": verdict.validate(&p),
                }));
            } else {
                println!("presentation: {} generators, {} relators", p.generators(), p.relators().len());
                println!("simplified: {simplified}");
                println!("abelianization: {ab}");
                println!("verdict: {verdict}");
            }
            Ok(Outcome::ok())
        }
        Command::Bounds { input, assertions } => {
            let k = read_complex(&input.file)?;
            let a = match assertions {
                Some(path) => {
                    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
                    parse_assertions(&text).map_err(err)?
                }
                None => Assertions::default(),
            };
            let analysis = analyze(&k, &a).map_err(err)?;
            let contradictions = analysis.reports.iter().filter(|r| r.contradiction.is_some()).count();
            if cli.json {
                print_json(&analysis);
            } else {
                println!("d = {}, {} vertices, pi1: {}", analysis.dimension, analysis.vertices, analysis.pi1.verdict);
                for c in &analysis.pi1.conflicts {
                    println!("conflict: {c}");
                }
                for r in &analysis.reports {
                    let tag = serde_json::to_value(r.tag).unwrap();
                    let status = serde_json::to_value(r.status).unwrap();
                    println!(
                        "{} [{}{}]: {}",
                        tag.as_str().unwrap(),
                        status.as_str().unwrap(),
                        if r.applicable { "" } else { ", not applicable" },
                        r.verdict
                    );
                    for f in &r.flags {
                        println!("    flag: {f}");
                    }
                    if let Some(c) = &r.contradiction {
                        println!("    CONTRADICTION: {c}");
                    }
                }
            }
            Ok(Outcome::negative_if(contradictions > 0))
        }
        Command::CheckCombinatorial { input, bistellar } => {
            let k = read_complex(&input.file)?;
            let cert = small_link_certificate(&k).map_err(err)?;
            let flips = match bistellar {
                Some(budget) => Some(bistellar_sphere_heuristic(&k, *budget).map_err(err)?),
                None => None,
            };
            if cli.json {
                print_json(&json!({ "certificate": cert, "bistellar": flips }));
            } else {
                println!("{:>5} {:>9} {:>8} {:>9} {:>7} {:>9} {:>8}", "codim", "link dim", "checked", "max verts", "allowed", "oversize", "failed");
                for row in &cert.codimensions {
                    println!(
                        "{:>5} {:>9} {:>8} {:>9} {:>7} {:>9} {:>8}",
                        row.codimension,
                        row.link_dim,
                        row.simplices_checked,
                        row.max_link_vertices,
                        row.allowed_link_vertices.map_or("-".to_string(), |a| a.to_string()),
                        row.size_violations,
                        row.link_failures
                    );
                }
                match &cert.verdict {
                    CertificateVerdict::Certified => println!("verdict: CERTIFIED"),
                    CertificateVerdict::Inconclusive { witness, link_vertices, allowed } => println!(
                        "verdict: INCONCLUSIVE (link of [{}] has {link_vertices} vertices, criterion allows {allowed})",
                        witness.join(" ")
                    ),
                    CertificateVerdict::Rejected { witness, reason } => {
                        println!("verdict: REJECTED ([{}]: {reason})", witness.join(" "))
                    }
                }
                if let Some(f) = &flips {
                    println!("bistellar: {f:?}");
                }
            }
            Ok(Outcome::negative_if(matches!(cert.verdict, CertificateVerdict::Rejected { .. })))
        }
        Command::VerifyDuality { input, subset, samples, seed } => {
            let k = read_complex(&input.file)?;
            let sphere = CertifiedSphere::certify(&k).map_err(err)?;
            let sides: Vec<VertexSet> = match subset {
                Some(list) => vec![k.vertex_set_from_labels(&labels(list)).map_err(|e| e.to_string())?],
                None => {
                    let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                    (0..*samples)
                        .map(|_| VertexSet::new(k.vertices().iter().copied().filter(|_| rng.gen_bool(0.5))))
                        .collect()
                }
            };
            let mut reports = Vec::new();
            for v in &sides {
                reports.push(alexander_duality_check(&sphere, v).map_err(err)?);
            }
            let failed = reports.iter().filter(|r| !r.passed).count();
            if cli.json {
                print_json(&json!({ "evidence": format!("{:?}", sphere.evidence()), "checks": reports }));
            } else {
                println!("sphere evidence: {:?}", sphere.evidence());
                for (v, r) in sides.iter().zip(&reports) {
                    let names: Vec<&str> = v.ids().iter().map(|&i| k.label(i)).collect();
                    println!("V = {{{}}}: {}", names.join(","), if r.passed { "ok" } else { "MISMATCH" });
                }
                println!("{} partitions, {} failed", reports.len(), failed);
            }
            Ok(Outcome::negative_if(failed > 0))
        }
        Command::VerifyComplement { input, facet } => {
            let k = read_complex(&input.file)?;
            let facets: Vec<VertexSet> = match facet {
                Some(list) => vec![k.vertex_set_from_labels(&labels(list)).map_err(|e| e.to_string())?],
                None => k.facets().iter().map(VertexSet::from).collect(),
            };
            let mut reports = Vec::new();
            for f in &facets {
                reports.push(complement_homology_check(&k, f).map_err(err)?);
            }
            let failed = reports.iter().filter(|r| !r.passed).count();
            if cli.json {
                print_json(&reports);
            } else {
                for (f, r) in facets.iter().zip(&reports) {
                    let names: Vec<&str> = f.ids().iter().map(|&i| k.label(i)).collect();
                    let flagged = r.comparisons.iter().filter(|c| c.flagged && !c.equal).count();
                    println!(
                        "facet [{}]: {}{}",
                        names.join(" "),
                        if r.passed { "ok" } else { "MISMATCH" },
                        if flagged > 0 { format!(" ({flagged} flagged)") } else { String::new() }
                    );
                    for n in &r.notes {
                        println!("    note: {n}");
                    }
                }
                println!("{} facets, {} failed", reports.len(), failed);
            }
            Ok(Outcome::negative_if(failed > 0))
        }
        Command::Fixture { name, d, n, output } => {
            let k = fixture(name, FixtureParams { d: *d, n: *n })
                .map_err(|e| format!("{e} (known fixtures: {})", FIXTURE_NAMES.join(", ")))?;
            let text = write_facets(&k, Some(&format!("{name} d={d:?} n={n:?}")));
            match output {
                Some(path) => fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))?,
                None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string())?,
            }
            Ok(Outcome::ok())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(o) if o.negative => ExitCode::from(1),
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
