//! `cast`: decide whether a polyhedron is castable in a one-piece mold.
//!
//! Exit codes: 0 = castable (or property holds), 1 = not castable (or
//! property violated), 2 = usage or input error.

use cast_core::casting::{self, CastEntry, CastResult, Directions};
use cast_core::mesh::{self, Polyhedron};
use cast_core::report::{directions_dump, CastReport, Timings};
use cast_core::{oracle, MeshError};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::{Path, PathBuf};
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "cast",
    version,
    about = "Single-part mold castability analysis for polyhedra"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report every valid top facet with one pull-out direction (fast path).
    Check {
        mesh: PathBuf,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Report every valid top facet with its full cone of pull-out directions.
    Directions {
        mesh: PathBuf,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Solve for one facet only.
    Single {
        mesh: PathBuf,
        /// Facet id (after coplanar merging unless --no-merge).
        #[arg(long)]
        facet: usize,
        /// Compute the full direction cone instead of a single direction.
        #[arg(long)]
        all: bool,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Check that every valid pair of the mesh stays valid on its convex hull.
    HullTest {
        mesh: PathBuf,
        #[command(flatten)]
        opts: CommonOpts,
    },
}

#[derive(Args)]
struct CommonOpts {
    /// Force the linear-time convex path (errors if the mesh is not convex).
    #[arg(long)]
    convex: bool,
    /// Skip coplanar-facet merging (expert use; triangulated input will
    /// never be castable).
    #[arg(long)]
    no_merge: bool,
    /// Random seed; falls back to the CAST_SEED environment variable, then 0.
    #[arg(long)]
    seed: Option<u64>,
    /// Cross-check the result against the brute-force oracle (<= 200 facets).
    #[arg(long)]
    oracle: bool,
    /// Input format; inferred from the file extension by default.
    #[arg(long, value_enum)]
    format: Option<MeshFormat>,
    /// Write chart regions and facet geometry for external plotting.
    #[arg(long, value_name = "FILE")]
    emit_directions: Option<PathBuf>,
    /// Cap the number of worker threads.
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum MeshFormat {
    Off,
    Obj,
}

fn main() {
    let cli = Cli::parse();
    let code = match execute(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            2
        }
    };
    std::process::exit(code);
}

fn resolve_seed(opts: &CommonOpts) -> u64 {
    opts.seed
        .or_else(|| std::env::var("CAST_SEED").ok().and_then(|s| s.parse().ok()))
        .unwrap_or(0)
}

fn load_mesh(path: &Path, opts: &CommonOpts) -> Result<Polyhedron, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let format = opts.format.unwrap_or_else(|| {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("obj") => MeshFormat::Obj,
            _ => MeshFormat::Off,
        }
    });
    let loaded = match format {
        MeshFormat::Off => mesh::load_off(&text),
        MeshFormat::Obj => mesh::load_obj(&text),
    };
    let p = loaded.map_err(|e| e.to_string())?;
    if opts.no_merge {
        Ok(p)
    } else {
        mesh::merge_coplanar(&p).map_err(|e: MeshError| e.to_string())
    }
}

fn with_thread_cap<T: Send>(opts: &CommonOpts, f: impl FnOnce() -> T + Send) -> Result<T, String> {
    match opts.threads {
        None => Ok(f()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| format!("cannot build thread pool: {e}"))?;
            Ok(pool.install(f))
        }
    }
}

fn oracle_agreement(p: &Polyhedron, result: &CastResult) -> Result<bool, String> {
    if p.facets.len() > 200 {
        return Err(format!(
            "--oracle supports at most 200 facets (mesh has {})",
            p.facets.len()
        ));
    }
    let expected: Vec<usize> = oracle::brute_force_top_facets(p)
        .into_iter()
        .map(|(f, _)| f)
        .collect();
    if result.facet_ids() != expected {
        return Ok(false);
    }
    for entry in &result.entries {
        let d = entry
            .directions
            .sample()
            .expect("entries carry a direction");
        if !oracle::is_valid_pair(p, entry.facet, d).map_err(|e| e.to_string())? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn emit_outputs(
    p: &Polyhedron,
    result: &CastResult,
    opts: &CommonOpts,
    timings: Timings,
) -> Result<i32, String> {
    let mut report = CastReport::new(p, result, timings);
    if opts.oracle {
        report.oracle_agrees = Some(oracle_agreement(p, result)?);
    }
    if let Some(path) = &opts.emit_directions {
        let dump = directions_dump(p, result);
        let json = serde_json::to_string_pretty(&dump).expect("dump serializes");
        std::fs::write(path, json).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    }
    println!(
        "{}",
        serde_json::to_string_pretty(&report).expect("report serializes")
    );
    Ok(if result.castable { 0 } else { 1 })
}

fn execute(cli: Cli) -> Result<i32, String> {
    match cli.command {
        Command::Check { mesh, opts } => {
            let total = Instant::now();
            let p = load_mesh(&mesh, &opts)?;
            let seed = resolve_seed(&opts);
            let solve = Instant::now();
            let result = with_thread_cap(&opts, || {
                if opts.convex {
                    casting::convex_all_fad(&p)
                } else {
                    casting::all_fsd(&p, seed)
                }
            })?
            .map_err(|e| e.to_string())?;
            let timings = Timings {
                solve_ms: solve.elapsed().as_secs_f64() * 1e3,
                total_ms: total.elapsed().as_secs_f64() * 1e3,
            };
            emit_outputs(&p, &result, &opts, timings)
        }
        Command::Directions { mesh, opts } => {
            let total = Instant::now();
            let p = load_mesh(&mesh, &opts)?;
            let seed = resolve_seed(&opts);
            let solve = Instant::now();
            let result = with_thread_cap(&opts, || {
                if opts.convex {
                    casting::convex_all_fad(&p)
                } else {
                    casting::all_fad(&p, seed)
                }
            })?
            .map_err(|e| e.to_string())?;
            let timings = Timings {
                solve_ms: solve.elapsed().as_secs_f64() * 1e3,
                total_ms: total.elapsed().as_secs_f64() * 1e3,
            };
            emit_outputs(&p, &result, &opts, timings)
        }
        Command::Single {
            mesh,
            facet,
            all,
            opts,
        } => {
            if opts.convex {
                return Err("--convex applies to check/directions only".into());
            }
            let total = Instant::now();
            let p = load_mesh(&mesh, &opts)?;
            let seed = resolve_seed(&opts);
            let solve = Instant::now();
            let entry = if all {
                let cone = casting::single_fad(&p, facet).map_err(|e| e.to_string())?;
                (!cone.region.is_empty()).then(|| CastEntry {
                    facet,
                    rotation: cast_core::kernel::rotation_to_top(&p.facets[facet].inward_normal)
                        .expect("facet normals are nonzero"),
                    directions: Directions::All(cone),
                })
            } else {
                casting::single_fsd(&p, facet, seed)
                    .map_err(|e| e.to_string())?
                    .map(|d| CastEntry {
                        facet,
                        rotation: cast_core::kernel::rotation_to_top(
                            &p.facets[facet].inward_normal,
                        )
                        .expect("facet normals are nonzero"),
                        directions: Directions::Single(d),
                    })
            };
            let result = CastResult {
                castable: entry.is_some(),
                entries: entry.into_iter().collect(),
                covering: None,
                excluded_by_covering_set: Vec::new(),
            };
            let timings = Timings {
                solve_ms: solve.elapsed().as_secs_f64() * 1e3,
                total_ms: total.elapsed().as_secs_f64() * 1e3,
            };
            // Oracle agreement for a single facet: validity of this facet only.
            let mut report = CastReport::new(&p, &result, timings);
            if opts.oracle {
                if p.facets.len() > 200 {
                    return Err(format!(
                        "--oracle supports at most 200 facets (mesh has {})",
                        p.facets.len()
                    ));
                }
                let oracle_valid = oracle::brute_force_top_facets(&p)
                    .iter()
                    .any(|(f, _)| *f == facet);
                report.oracle_agrees = Some(oracle_valid == result.castable);
            }
            if let Some(path) = &opts.emit_directions {
                let dump = directions_dump(&p, &result);
                let json = serde_json::to_string_pretty(&dump).expect("dump serializes");
                std::fs::write(path, json)
                    .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            }
            println!(
                "{}",
                serde_json::to_string_pretty(&report).expect("report serializes")
            );
            Ok(if result.castable { 0 } else { 1 })
        }
        Command::HullTest { mesh, opts } => {
            let p = load_mesh(&mesh, &opts)?;
            if p.facets.len() > 200 {
                return Err(format!(
                    "hull-test uses the oracle and supports at most 200 facets (mesh has {})",
                    p.facets.len()
                ));
            }
            let pairs = oracle::brute_force_top_facets(&p);
            let hull = oracle::convex_hull(&p.vertices).map_err(|e| e.to_string())?;
            let mut holds = true;
            let mut failures = Vec::new();
            for (facet, d) in &pairs {
                let matched = hull_facet_for(&p, &hull, *facet);
                let ok = match matched {
                    Some(g) => oracle::is_valid_pair(&hull, g, d).map_err(|e| e.to_string())?,
                    None => false,
                };
                if !ok {
                    holds = false;
                    failures.push(*facet);
                }
            }
            let out = serde_json::json!({
                "holds": holds,
                "pairs_checked": pairs.len(),
                "hull_facets": hull.facets.len(),
                "failing_facets": failures,
            });
            println!("{}", serde_json::to_string_pretty(&out).expect("serializes"));
            Ok(if holds { 0 } else { 1 })
        }
    }
}

/// Hull facet with the same supporting plane (matching inward direction).
fn hull_facet_for(p: &Polyhedron, hull: &Polyhedron, facet: usize) -> Option<usize> {
    use cast_core::kernel::dot;
    use num_traits::Zero;
    let normal = &p.facets[facet].inward_normal;
    let anchor = &p.vertices[p.facets[facet].boundary[0]];
    hull.facets
        .iter()
        .find(|g| {
            g.inward_normal.is_positive_multiple_of(normal)
                && dot(
                    &g.inward_normal,
                    &anchor.sub(&hull.vertices[g.boundary[0]]),
                )
                .is_zero()
        })
        .map(|g| g.id)
}
