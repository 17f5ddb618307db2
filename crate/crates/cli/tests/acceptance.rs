//! One PASS/FAIL/SKIP line per acceptance criterion.
//!
//! Runs the core and heavy tiers, then the ingest tier against a directory
//! holding an L₂(13) generator file written from the built-in construction
//! with its form and base points stripped (so the invariant form and the
//! orbit scan are exercised as for an external file). No McL file ships,
//! so that case reports SKIP unless `RANK3_INGEST_DIR` points at one.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use rank3_cli::{run_reproduction_suite, CaseResult, GeneratorFile, Options, Tier};
use rank3_core::constructions::build;

fn ingest_dir() -> PathBuf {
    if let Some(dir) = std::env::var_os("RANK3_INGEST_DIR") {
        return dir.into();
    }
    let dir = std::env::temp_dir().join(format!("rank3-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("temp dir");
    let case = build("l2-13-heart").expect("L2(13) construction");
    let mut file = GeneratorFile::from_case(&case);
    file.form = None;
    file.bases.clear();
    std::fs::write(dir.join("l2-13.gen"), file.to_text()).expect("write l2-13.gen");
    dir
}

fn main() {
    let start = Instant::now();
    let opts = Options { ingest_dir: Some(ingest_dir()), timing: true };
    let mut results: Vec<CaseResult> = run_reproduction_suite(Tier::Heavy, &opts).cases;
    results.extend(run_reproduction_suite(Tier::Ingest, &opts).cases);

    let mut by_criterion: BTreeMap<u8, Vec<&CaseResult>> = BTreeMap::new();
    for r in &results {
        by_criterion.entry(r.criterion).or_default().push(r);
    }
    let mut failed = false;
    for (k, cases) in &by_criterion {
        let fails: Vec<&str> = cases.iter().filter(|c| c.matched == Some(false)).map(|c| c.case.as_str()).collect();
        let skips: Vec<&str> = cases.iter().filter(|c| c.matched.is_none()).map(|c| c.case.as_str()).collect();
        let secs: f64 = cases.iter().filter_map(|c| c.seconds).sum();
        let status = if !fails.is_empty() {
            "FAIL"
        } else if skips.len() == cases.len() {
            "SKIP"
        } else {
            "PASS"
        };
        let mut line = format!("criterion {k:>2}: {status}  {} cases  {secs:.1} s", cases.len());
        if !fails.is_empty() {
            line.push_str(&format!("  failed: {}", fails.join(", ")));
        }
        if !skips.is_empty() {
            line.push_str(&format!("  skipped: {}", skips.join(", ")));
        }
        println!("{line}");
        failed |= !fails.is_empty();
    }
    for r in results.iter().filter(|r| r.matched == Some(false)) {
        println!("  {}: expected {} computed {}", r.case, r.expected, r.computed);
    }
    println!("acceptance finished in {:.1} s", start.elapsed().as_secs_f64());
    if failed {
        std::process::exit(1);
    }
}
