//! The four subcommands. Each returns the process exit code; errors bubble
//! up with their own code classification.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use upp2_core::filter::{enumerate_central_groupoids_with, FilterReport};
use upp2_core::orderly::{enumerate_with, EnumerateOptions, EnumerationReport};

use crate::error::{CliError, CliResult};
use crate::jsonl::{self, AnyRecord, RsRecord, WitnessRecord};
use crate::tablefmt;
use crate::verify;

fn create(path: &Path) -> CliResult<fs::File> {
    fs::File::create(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn enumeration_summary(report: &EnumerationReport) -> String {
    let c = &report.counters;
    format!(
        "format {}x{}: {} structures\n\
         nodes {}, candidates {}, theta tests {}\n\
         v-stage accepts {}, v-stage rejects {}, canonical labelings {} \
         (orbit-resolved {}, label-resolved {}), stabilizer computations {}\n\
         wall time {:.3?}",
        report.n,
        report.m,
        report.structures.len(),
        c.nodes,
        c.candidates,
        c.theta_tests,
        c.v_accepts,
        c.v_rejects,
        c.canonical_labelings,
        c.orbit_resolved,
        c.label_resolved,
        c.automorphism_computations,
        report.wall_time,
    )
}

pub fn cmd_enumerate(n: usize, m: usize, out: Option<&Path>, jobs: usize) -> CliResult<i32> {
    log::info!("enumerating {n}x{m} rectangular structures with {jobs} worker(s)");
    let report = enumerate_with(n, m, &EnumerateOptions { jobs })?;
    let records: Vec<RsRecord> = report.structures.iter().map(RsRecord::from_prs).collect();
    let io_err = |source| CliError::Io {
        path: out.map(Path::to_path_buf).unwrap_or_else(|| "<stdout>".into()),
        source,
    };
    match out {
        Some(path) => {
            let mut file = create(path)?;
            jsonl::write_jsonl(&mut file, &records).map_err(io_err)?;
            println!("{}", enumeration_summary(&report));
            println!("wrote {} structures to {}", records.len(), path.display());
        }
        None => {
            let stdout = std::io::stdout();
            jsonl::write_jsonl(&mut stdout.lock(), &records).map_err(io_err)?;
            eprintln!("{}", enumeration_summary(&report));
        }
    }
    Ok(0)
}

fn funnel_summary(report: &FilterReport) -> String {
    let f = &report.funnel;
    let mut s = format!(
        "order {}: {} rectangular structures\n\
         \x20 doubly partitioned: {}\n\
         \x20 partitioned on one side: {} (isomorphic pairs among them: {})\n\
         \x20 unpartitioned: {}\n\
         \x20 unpartitioned with isomorphic graph pair: {}\n\
         \x20 of those, with an order-2 isomorphism: {}\n\
         \x20 lifting orbit representatives (unnatural): {}\n\
         central groupoids: {} ({} natural, {} unnatural)",
        report.side * report.side,
        f.total,
        f.doubly_partitioned,
        f.singly_partitioned,
        f.singly_partitioned_isomorphic_pairs,
        f.non_partitioned,
        f.isomorphic_pairs,
        f.with_order2,
        f.unnatural_witnesses,
        f.total_witnesses(),
        f.natural_witnesses,
        f.unnatural_witnesses,
    );
    s.push('\n');
    s.push_str(&format!(
        "enumeration: {}",
        enumeration_summary(&report.enumeration)
    ));
    s
}

pub fn cmd_filter_cg(n: usize, out: Option<&Path>, jobs: usize) -> CliResult<i32> {
    log::info!("filtering central groupoids of order {} with {jobs} worker(s)", n * n);
    let report = enumerate_central_groupoids_with(n, &EnumerateOptions { jobs })?;
    let records: Vec<WitnessRecord> = report
        .witnesses
        .iter()
        .map(WitnessRecord::from_witness)
        .collect();
    let io_err = |source| CliError::Io {
        path: out.map(Path::to_path_buf).unwrap_or_else(|| "<stdout>".into()),
        source,
    };
    match out {
        Some(path) => {
            let mut file = create(path)?;
            jsonl::write_jsonl(&mut file, &records).map_err(io_err)?;
            println!("{}", funnel_summary(&report));
            println!("wrote {} witnesses to {}", records.len(), path.display());
        }
        None => {
            let stdout = std::io::stdout();
            jsonl::write_jsonl(&mut stdout.lock(), &records).map_err(io_err)?;
            eprintln!("{}", funnel_summary(&report));
        }
    }
    Ok(0)
}

pub fn cmd_verify(path: &Path) -> CliResult<i32> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let grid = tablefmt::parse_grid(&text, &path.display().to_string())?;
    let report = verify::verify_grid(&grid);
    println!("{report}");
    Ok(if report.all_pass() { 0 } else { 1 })
}

pub fn cmd_export_dot(file: &Path, out: Option<&Path>) -> CliResult<i32> {
    let records = jsonl::read_records(file)?;
    let mut blocks: Vec<(String, String)> = Vec::new();
    for (idx, record) in records.iter().enumerate() {
        let (name, pair) = match record {
            AnyRecord::Structure(rs) => {
                let prs = rs.to_prs()?;
                (
                    format!("structure_{idx}"),
                    upp2_core::embed::prs_to_graph_pair(&prs),
                )
            }
            AnyRecord::Witness(w) => {
                let table = w.to_table()?;
                let g = upp2_core::algebra::cg_digraph(&table);
                (
                    format!("witness_{idx}"),
                    upp2_core::GraphPair::new(g.clone(), g),
                )
            }
        };
        blocks.push((name.clone(), crate::dot::render(&name, &pair)));
    }
    match out {
        Some(dir) => {
            fs::create_dir_all(dir).map_err(|source| CliError::Io {
                path: dir.to_path_buf(),
                source,
            })?;
            for (name, text) in &blocks {
                let path: PathBuf = dir.join(format!("{name}.dot"));
                let mut file = create(&path)?;
                file.write_all(text.as_bytes()).map_err(|source| CliError::Io {
                    path: path.clone(),
                    source,
                })?;
            }
            println!("wrote {} dot files to {}", blocks.len(), dir.display());
        }
        None => {
            for (_, text) in &blocks {
                print!("{text}");
            }
        }
    }
    Ok(0)
}
