//! Runs the expected-case table and assembles a [`VerdictReport`].

use std::collections::{BTreeSet, HashSet};
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use rank3_core::constructions::{build, deleted_module_closed_forms, ConstructedCase};
use rank3_core::geometry::standard_space;
use rank3_core::higman::{odd_orthogonal_params, srg_verify};
use rank3_core::linalg::vec_mat;
use rank3_core::orbit::{cd_parameters, orbits_on_type, pool, OrbitReport};
use rank3_core::{Elem, FiniteField, Mat, MatrixGroup, QuadraticSpace, Sign, SquareClass};
use rank3_meataxe::{
    composition_factors, invariant_bilinear_form, permutation_module, symmetric_group_generators, tensor_module,
};
use rank3_mullineux::{is_mullineux_fixed, is_p_regular, mullineux_map, regular_partitions, Partition};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::cases::{cases_for, Check, ExpectedCase, Source, Tier};
use crate::genfile::GeneratorFile;
use crate::report::{CaseResult, VerdictReport};

#[derive(Clone, Debug, Default)]
pub struct Options {
    /// Directory searched for ingest-tier generator files.
    pub ingest_dir: Option<PathBuf>,
    /// Record wall-clock seconds per case (makes the report non-reproducible).
    pub timing: bool,
}

enum Outcome {
    Checked { expected: Value, computed: Value, matched: bool },
    Skipped(String),
}

fn same(expected: Value, computed: Value) -> Outcome {
    let matched = expected == computed;
    Outcome::Checked { expected, computed, matched }
}

fn sign_str(s: Sign) -> String {
    s.symbol().to_string()
}

fn sizes(reports: &[OrbitReport]) -> Vec<u64> {
    let mut v: Vec<u64> = reports.iter().map(|r| r.orbit_size).collect();
    v.sort_unstable();
    v
}

fn built(source: Source) -> Result<ConstructedCase> {
    match source {
        Source::Build(label) => Ok(build(label)?),
        _ => bail!("case has no construction"),
    }
}

fn base_report(case: &ConstructedCase, name: &str) -> Result<OrbitReport> {
    let b = case.base(name).ok_or_else(|| anyhow!("{} has no base point '{name}'", case.label))?;
    Ok(cd_parameters(&case.space, &case.group, &b.vector)?)
}

fn counting() -> Result<Outcome> {
    let mut checked = 0u64;
    let mut mismatches = Vec::new();
    let fields = [(FiniteField::gf3(), 9usize), (FiniteField::new(3, 2)?, 4)];
    for (f, max_dim) in &fields {
        for n in 1..=*max_dim {
            for disc in [SquareClass::Square, SquareClass::NonSquare] {
                let space = standard_space(n, f, disc)?;
                for gamma in f.elements() {
                    let zeros: &[bool] = if gamma == 0 { &[false, true] } else { &[false] };
                    for &z in zeros {
                        let nc = space.count_norm_vectors(gamma, z)?;
                        checked += 1;
                        if nc.exhaustive.is_none() || !nc.agrees() {
                            mismatches.push(format!("q={} n={n} {disc:?} γ={gamma}", f.order()));
                        }
                    }
                }
            }
        }
    }
    let matched = mismatches.is_empty();
    Ok(Outcome::Checked {
        expected: json!({ "mismatches": [] }),
        computed: json!({ "checked": checked, "mismatches": mismatches }),
        matched,
    })
}

fn measured_params(m: u32) -> Result<Outcome> {
    let space = standard_space(2 * m as usize + 1, &FiniteField::gf3(), SquareClass::Square)?;
    let mut expected = Vec::new();
    let mut computed = Vec::new();
    for xi in [Sign::Plus, Sign::Minus] {
        let p = odd_orthogonal_params(m, xi)?;
        let r = srg_verify(&space, xi)?;
        expected.push(json!([sign_str(xi), p.total, p.k, p.l, p.lambda, p.mu]));
        computed.push(json!([sign_str(xi), r.points, r.k, r.l, r.lambda, r.mu]));
    }
    Ok(same(json!(expected), json!(computed)))
}

fn spectrum(m: u32) -> Result<Outcome> {
    let space = standard_space(2 * m as usize + 1, &FiniteField::gf3(), SquareClass::Square)?;
    let mut expected = Vec::new();
    let mut computed = Vec::new();
    for xi in [Sign::Plus, Sign::Minus] {
        let p = odd_orthogonal_params(m, xi)?;
        let r = srg_verify(&space, xi)?;
        expected.push(json!({ "type": sign_str(xi), "identity": true, "f": [p.f_s, p.f_t], "points": p.total }));
        computed.push(json!({
            "type": sign_str(xi),
            "identity": r.identity_holds,
            "f": [r.f_s, r.f_t],
            "points": 1 + r.f_s + r.f_t,
        }));
    }
    Ok(same(json!(expected), json!(computed)))
}

/// Length of the orbit of the vector `x` itself (not the point `⟨x⟩`).
fn vector_orbit_len(gens: &[Mat], x: &[Elem], f: &FiniteField) -> usize {
    let mut seen = HashSet::from([x.to_vec()]);
    let mut queue = vec![x.to_vec()];
    while let Some(v) = queue.pop() {
        for g in gens {
            let w = vec_mat(&v, g, f);
            if seen.insert(w.clone()) {
                queue.push(w);
            }
        }
    }
    seen.len()
}

fn s8_thirteen() -> Result<Outcome> {
    let f = FiniteField::gf3();
    let u = permutation_module(8, &symmetric_group_generators(8), &f)?;
    let t = tensor_module(&u, &u)?;
    let factors = composition_factors(&t, rank3_meataxe::DEFAULT_SEED)?;
    let v = factors.into_iter().find(|c| c.dim() == 13).ok_or_else(|| anyhow!("no 13-dimensional factor"))?.module;
    let form = invariant_bilinear_form(&v)?;
    let space = QuadraticSpace::new(f.clone(), form)?;
    let group = MatrixGroup::new(f.clone(), 13, v.gens().to_vec())?;
    // the published listing is of vector orbits: keep the points whose vector orbit also has 315 elements
    let mut found = BTreeSet::new();
    for xi in [Sign::Plus, Sign::Minus] {
        for r in orbits_on_type(&space, &group, xi)? {
            if r.orbit_size == 315 && vector_orbit_len(v.gens(), &r.base, &f) == 315 {
                found.insert((xi, r.c, r.d));
            }
        }
    }
    let computed: Vec<Value> = found.iter().map(|&(xi, c, d)| json!([sign_str(xi), c, d])).collect();
    Ok(same(json!([["+", 212, 102], ["-", 230, 84]]), json!(computed)))
}

fn mullineux_exhaustive() -> Result<Outcome> {
    let mut failures = Vec::new();
    let mut checked = 0;
    for n in 1..=20 {
        for l in regular_partitions(n, 3) {
            checked += 1;
            let m = mullineux_map(&l, 3)?;
            if m.size() != n || !is_p_regular(&m, 3) || mullineux_map(&m, 3)? != l {
                failures.push(l.to_string());
            }
        }
    }
    let matched = failures.is_empty();
    Ok(Outcome::Checked {
        expected: json!({ "failures": [] }),
        computed: json!({ "partitions": checked, "failures": failures }),
        matched,
    })
}

fn mullineux_fixed_range() -> Result<Outcome> {
    let mut fixed = Vec::new();
    for n in 5..=60u32 {
        if is_mullineux_fixed(&Partition::new(vec![n - 2, 1, 1]), 3)? {
            fixed.push(n);
        }
    }
    Ok(same(json!([5, 6]), json!(fixed)))
}

fn below_bound(case: &ConstructedCase) -> Result<Outcome> {
    let mut computed = serde_json::Map::new();
    let mut expected = serde_json::Map::new();
    let mut matched = true;
    for b in &case.base_points {
        let r = cd_parameters(&case.space, &case.group, &b.vector)?;
        let m = r.m.ok_or_else(|| anyhow!("{}: not an odd-dimensional GF(3) space", case.label))?;
        let threshold = rank3_core::higman::eq4_threshold(m);
        let eq4 = r.verdicts.is_some_and(|v| v.eq4);
        matched &= (r.orbit_size as i64) < threshold && !eq4;
        expected.insert(b.name.clone(), json!({ "orbit_below": threshold, "eq4": false }));
        computed.insert(b.name.clone(), json!({ "orbit": r.orbit_size, "eq4": eq4 }));
    }
    Ok(Outcome::Checked { expected: Value::Object(expected), computed: Value::Object(computed), matched })
}

/// A form for the file: its own block, else the invariant symmetric form.
pub fn space_for(file: &GeneratorFile) -> Result<QuadraticSpace> {
    if let Some(s) = file.space() {
        return Ok(s);
    }
    let m = rank3_meataxe::GModule::new(file.field.clone(), file.dim, file.gens.clone())?;
    let form = invariant_bilinear_form(&m).context("file has no form block")?;
    Ok(QuadraticSpace::new(file.field.clone(), form).context("the invariant form is degenerate")?)
}

fn ingest(dir: Option<&Path>, name: &str, base: &str, c: u64, d: u64, scan_dim: usize) -> Result<Outcome> {
    let Some(path) = dir.map(|d| d.join(name)).filter(|p| p.is_file()) else {
        return Ok(Outcome::Skipped(format!("{name} not supplied")));
    };
    let file = GeneratorFile::read(&path)?;
    let space = space_for(&file)?;
    let group = file.group();
    let expected = json!([c, d]);
    if let Some(v) = file.base(base) {
        let r = cd_parameters(&space, &group, v)?;
        return Ok(same(expected, json!([r.c, r.d])));
    }
    if file.dim > scan_dim {
        bail!("{name} has no '# base {base}' line and dimension {} is too large to scan", file.dim);
    }
    // no base point: look for the pair among all orbits
    let mut pairs = BTreeSet::new();
    for xi in [Sign::Plus, Sign::Minus] {
        for r in orbits_on_type(&space, &group, xi)? {
            pairs.insert((r.c, r.d));
        }
    }
    let computed = if pairs.contains(&(c, d)) { json!([c, d]) } else { json!({ "orbits": pairs.len(), "pair": null }) };
    Ok(same(expected, computed))
}

fn evaluate(case: &ExpectedCase, opts: &Options) -> Result<Outcome> {
    match case.check {
        Check::Counting => counting(),
        Check::Params { m, xi, tuple } => {
            let p = odd_orthogonal_params(m, xi)?;
            Ok(same(json!(tuple), json!([p.total, p.k, p.l, p.lambda, p.mu, p.s, p.t, p.f_s, p.f_t])))
        }
        Check::MeasuredParams { m } => measured_params(m),
        Check::Spectrum { m } => spectrum(m),
        Check::OrbitSizes { xi, sizes: want } => {
            let c = built(case.source)?;
            Ok(same(json!(want), json!(sizes(&orbits_on_type(&c.space, &c.group, xi)?))))
        }
        Check::OrbitCount { xi, count } => {
            let c = built(case.source)?;
            let reports = orbits_on_type(&c.space, &c.group, xi)?;
            let matched = reports.len() == count;
            Ok(Outcome::Checked {
                expected: json!({ "orbits": count }),
                computed: json!({ "orbits": reports.len(), "sizes": sizes(&reports) }),
                matched,
            })
        }
        Check::BaseCd { base, c, d } => {
            let r = base_report(&built(case.source)?, base)?;
            Ok(same(json!([c, d]), json!([r.c, r.d])))
        }
        Check::CdSet { bases, pairs } => {
            let c = built(case.source)?;
            let mut got = bases.iter().map(|b| base_report(&c, b).map(|r| (r.c, r.d))).collect::<Result<Vec<_>>>()?;
            got.sort_unstable();
            Ok(same(json!(pairs), json!(got)))
        }
        Check::Eq1 { xi, s, t } => {
            let c = built(case.source)?;
            let reports = orbits_on_type(&c.space, &c.group, xi)?;
            let all = |f: fn(&rank3_core::higman::EqVerdicts) -> bool| {
                reports.iter().all(|r| r.verdicts.as_ref().is_some_and(f))
            };
            Ok(same(json!({ "s": s, "t": t }), json!({ "s": all(|v| v.eq1_s), "t": all(|v| v.eq1_t) })))
        }
        Check::Eq2Everywhere => {
            let c = built(case.source)?;
            let m = (c.space.dim() as u32 - 1) / 2;
            let q = 3i64.pow(m);
            let mut values = BTreeSet::new();
            for xi in [Sign::Plus, Sign::Minus] {
                for r in orbits_on_type(&c.space, &c.group, xi)? {
                    values.insert((xi, r.c as i64 - 2 * r.d as i64));
                }
            }
            let computed: Vec<Value> = values.iter().map(|(xi, v)| json!([sign_str(*xi), v])).collect();
            Ok(same(json!([["+", q - 1], ["-", -q - 1]]), json!(computed)))
        }
        Check::DeletedClosedForms { n } => {
            let c = built(case.source)?;
            let mut expected = Vec::new();
            let mut computed = Vec::new();
            for which in ['v', 'w'] {
                let (orbit, cc, dd) = deleted_module_closed_forms(n, which)?;
                let r = base_report(&c, &which.to_string())?;
                expected.push(json!([which.to_string(), orbit, cc, dd]));
                computed.push(json!([which.to_string(), r.orbit_size, r.c, r.d]));
            }
            Ok(same(json!(expected), json!(computed)))
        }
        Check::S8Thirteen => s8_thirteen(),
        Check::Mullineux { lambda, image } => {
            let l: Partition = lambda.parse()?;
            let want: Partition = image.parse()?;
            Ok(same(json!(want.exponent_notation()), json!(mullineux_map(&l, 3)?.exponent_notation())))
        }
        Check::MullineuxExhaustive => mullineux_exhaustive(),
        Check::MullineuxFixedRange => mullineux_fixed_range(),
        Check::BelowBound => below_bound(&built(case.source)?),
        Check::IngestCd { base, c, d, scan_dim } => {
            let Source::File(name) = case.source else { bail!("ingest case without a file") };
            ingest(opts.ingest_dir.as_deref(), name, base, c, d, scan_dim)
        }
    }
}

/// Evaluates one case; errors become failed results.
pub fn run_case(case: &ExpectedCase, opts: &Options) -> CaseResult {
    let start = Instant::now();
    let outcome = evaluate(case, opts);
    let seconds = opts.timing.then(|| start.elapsed().as_secs_f64());
    let (expected, computed, matched) = match outcome {
        Ok(Outcome::Checked { expected, computed, matched }) => (expected, computed, Some(matched)),
        Ok(Outcome::Skipped(why)) => (Value::Null, json!({ "skipped": why }), None),
        Err(e) => (Value::Null, json!({ "error": format!("{e:#}") }), Some(false)),
    };
    CaseResult {
        case: case.label.to_string(),
        citation: case.citation.to_string(),
        expected,
        computed,
        matched,
        seconds,
        criterion: case.criterion,
    }
}

/// Runs every case of a tier, in parallel up to the `RANK3_THREADS` cap.
pub fn run_reproduction_suite(tier: Tier, opts: &Options) -> VerdictReport {
    let cases = cases_for(tier);
    let results = pool().install(|| cases.par_iter().map(|c| run_case(c, opts)).collect());
    VerdictReport::new(tier, results)
}
