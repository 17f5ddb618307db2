use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use rank3_cli::{parse_generator_file, GeneratorFile};
use rank3_core::constructions::{build, labels};

fn rank3(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rank3")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("rank3-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn export_round_trips_every_construction() {
    let dir = scratch("roundtrip");
    for label in labels() {
        let case = build(&label).unwrap();
        let file = GeneratorFile::from_case(&case);
        let text = file.to_text();
        let path = dir.join(format!("{label}.gen"));
        std::fs::write(&path, &text).unwrap();
        let back = GeneratorFile::read(&path).unwrap();
        assert_eq!(back.to_text(), text, "{label}");
        assert_eq!(back.gens, case.group.gens(), "{label}");
        assert_eq!(back.form.as_ref(), Some(case.space.gram()), "{label}");
        assert_eq!(back.field.modulus(), case.space.field().modulus(), "{label}");
        for b in &case.base_points {
            assert_eq!(back.base(&b.name), Some(b.vector.as_slice()), "{label}/{}", b.name);
        }
        let g = parse_generator_file(&path).unwrap();
        assert_eq!(g.dim(), case.space.dim());
    }
}

#[test]
fn binary_export_matches_library_export() {
    let o = rank3(&["export", "omega-n7"]);
    assert!(o.status.success());
    let case = build("omega-n7").unwrap();
    assert_eq!(stdout(&o), GeneratorFile::from_case(&case).to_text());
    assert_eq!(GeneratorFile::parse(&stdout(&o)).unwrap().dim, 7);
}

#[test]
fn singular_generator_is_reported_at_its_block() {
    let dir = scratch("singular");
    let path = dir.join("bad.gen");
    let text = "rank3gen v1\n# a comment\ndim 2 field 3 gens 2\ngen 1\n0 1\n1 0\ngen 2\n1 2\n2 1\n";
    std::fs::write(&path, text).unwrap();
    let e = parse_generator_file(&path).unwrap_err().to_string();
    assert!(e.starts_with("line 7:") && e.contains("generator 2 is singular"), "{e}");
    let o = rank3(&["orbit", path_str(&path), "1,0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 7"));
}

#[test]
fn gf27_file_with_modulus_line() {
    // x³ − x + 1; the generator is multiplication by the root ω (code 3)
    let text = "rank3gen v1\ndim 2 field 27 gens 1\nmodulus 1 2 0 1\ngen 1\n3 0\n0 3\n";
    let f = GeneratorFile::parse(text).unwrap();
    assert_eq!((f.field.order(), f.field.degree()), (27, 3));
    let g = f.group();
    assert_eq!(g.order(1000).unwrap(), 26);
    // the modulus survives a round trip
    assert_eq!(GeneratorFile::parse(&f.to_text()).unwrap().field.modulus(), &[1, 2, 0, 1]);
}

#[test]
fn documented_subcommand_outputs() {
    let o = rank3(&["higman", "3", "+"]);
    assert_eq!(stdout(&o).trim(), "(378,117,260,36,36,9,-9,182,195)");
    let o = rank3(&["mullineux", "8,1"]);
    assert_eq!(stdout(&o).trim(), "4,4,1");
    let o = rank3(&["check-eq", "2", "+", "0", "4"]);
    assert_eq!(stdout(&o).lines().next(), Some("r=t: HOLDS; r=s: fails"));
    let o = rank3(&["--json", "higman", "3", "-"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["total"], 351);
}

#[test]
fn count_agrees_with_closed_form() {
    let o = rank3(&["--json", "count", "4", "9"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 18);
    for r in rows {
        assert_eq!(r["count"]["exhaustive"], r["count"]["closed_form"]);
    }
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["construct", "no-such-label"][..],
        &["export", "wreath-n4"],
        &["mullineux", "3,3,3"],
        &["higman", "3", "*"],
        &["frobnicate"],
    ] {
        assert_eq!(rank3(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn cd_and_orbit_on_an_exported_file() {
    let dir = scratch("cd");
    let path = dir.join("w7.gen");
    assert!(rank3(&["export", "wreath-n7", "-o", path_str(&path)]).status.success());
    let o = rank3(&["--json", "cd", path_str(&path), "x1+x2"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!((v["c"].as_u64(), v["d"].as_u64()), (Some(20), Some(21)));
    let o = rank3(&["orbit", path_str(&path), "1 0 0 0 0 0 0"]);
    assert_eq!(stdout(&o).trim(), "7");
}

#[test]
fn split_writes_factor_files() {
    let dir = scratch("split");
    // S₅ on GF(3)⁵ by permutation matrices: (0 1) and the 5-cycle
    let perm = |p: &[usize]| -> String {
        (0..5).map(|i| (0..5).map(|j| if p[i] == j { "1" } else { "0" }).collect::<Vec<_>>().join(" ") + "\n").collect()
    };
    let text = format!(
        "rank3gen v1\ndim 5 field 3 gens 2\ngen 1\n{}gen 2\n{}",
        perm(&[1, 0, 2, 3, 4]),
        perm(&[1, 2, 3, 4, 0])
    );
    let path = dir.join("perm5.gen");
    std::fs::write(&path, text).unwrap();
    let out = dir.join("factors");
    let o = rank3(&["--json", "split", path_str(&path), "--out", path_str(&out)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let mut dims: Vec<u64> = v["factors"].as_array().unwrap().iter().map(|f| f["dim"].as_u64().unwrap()).collect();
    dims.sort();
    assert_eq!(dims, vec![1, 4]);
    for w in v["written"].as_array().unwrap() {
        let f = GeneratorFile::read(Path::new(w.as_str().unwrap())).unwrap();
        assert!(f.meta("factor-of").is_some_and(|s| s.contains("perm5.gen")));
        assert_eq!(f.gens.len(), 2);
        assert!(f.form.is_some(), "S₅ factors in characteristic 3 are self-dual");
    }
}

#[test]
fn empty_ingest_directory_skips() {
    let dir = scratch("ingest-empty");
    let o = rank3(&["--json", "reproduce", "ingest", "--ingest-dir", path_str(&dir)]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["summary"], serde_json::json!({ "passed": 0, "failed": 0, "skipped": 2 }));
    for c in v["cases"].as_array().unwrap() {
        assert!(c["match"].is_null() && c["seconds"].is_null());
        assert!(!c["citation"].as_str().unwrap().is_empty());
    }
}

#[test]
fn ingest_report_is_byte_identical_across_thread_counts() {
    let dir = scratch("ingest-l2");
    let case = build("l2-13-heart").unwrap();
    let mut file = GeneratorFile::from_case(&case);
    file.bases = vec![("x".into(), case.base("u").unwrap().vector.clone())];
    std::fs::write(dir.join("l2-13.gen"), file.to_text()).unwrap();
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_rank3"))
            .args(["--json", "reproduce", "ingest", "--ingest-dir", path_str(&dir)])
            .env("RANK3_THREADS", threads)
            .output()
            .unwrap()
    };
    let a = run("1");
    let b = run("2");
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["summary"], serde_json::json!({ "passed": 1, "failed": 0, "skipped": 1 }));
}
