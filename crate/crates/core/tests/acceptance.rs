//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit status
//! when any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use edgereg_core::even::colon_graph;
use edgereg_core::graph::{is_very_well_covered, minimal_vertex_covers};
use edgereg_core::harness::{
    differential_colon_sweep, fixture, lower_bound_sweep, run_sweep,
    verify_counterexample_boundary, verify_engine_agreement, Family, Settings, Statement,
    SweepConfig, Verdict, VerificationRecord,
};
use edgereg_core::monomial::{edge_ideal, polarize, power};
use edgereg_core::{EdgeProduct, MonomialIdeal, Result};

const SEED: u64 = 20240917;

/// Every record must pass; `n/a` counts against the criterion.
fn all_pass<'a>(records: impl IntoIterator<Item = &'a VerificationRecord>) -> (bool, String) {
    let mut total = 0;
    let mut bad = Vec::new();
    for r in records {
        total += 1;
        if r.pass != Verdict::Pass {
            bad.push(format!(
                "{} on {} (s={:?}): expected {}, computed {}",
                r.statement, r.graph, r.s, r.expected, r.computed
            ));
        }
    }
    if total == 0 {
        return (false, "no records".into());
    }
    let mut detail = format!("{}/{} records pass", total - bad.len(), total);
    if let Some(first) = bad.first() {
        detail.push_str(&format!("; first failure: {first}"));
    }
    (bad.is_empty(), detail)
}

fn random(size: usize, s_max: u32, samples: usize) -> SweepConfig {
    let mut c = SweepConfig::new(Family::RandomGraph, size, s_max);
    c.samples = samples;
    c.seed = Some(SEED);
    c
}

fn is_colon_statement(s: Statement) -> bool {
    matches!(
        s,
        Statement::ColonBound | Statement::ColonGprimeVwc | Statement::ColonDecomposition
    )
}

/// Criteria 1 and 5 share one exhaustive sweep over the `h ≤ 4` pool.
fn exhaustive() -> Result<[(bool, String); 2]> {
    let out = run_sweep(&SweepConfig::new(Family::ExhaustiveVwc, 4, 2))?;
    let main = all_pass(out.records.iter().filter(|r| r.statement == Statement::Main));
    let colon = all_pass(out.records.iter().filter(|r| is_colon_statement(r.statement)));
    Ok([main, colon])
}

fn criterion_2() -> Result<(bool, String)> {
    Ok(all_pass(&differential_colon_sweep(&random(8, 3, 200))?))
}

fn criterion_3() -> Result<(bool, String)> {
    let g = fixture("g-ex")?;
    let p = EdgeProduct::parse(&g, "x1-x2")?;
    let i2 = power(&edge_ideal(&g), 2)?;
    let colon = i2.colon(&p.monomial())?;
    let mut notes = Vec::new();

    let squares = ["x4", "y3"]
        .iter()
        .all(|v| colon.monomial(&[(v, 2)]).is_ok_and(|m| colon.contains(&m)));
    if !squares {
        notes.push("x4^2 or y3^2 missing from the colon".to_string());
    }

    let (pol, _) = polarize(&colon);
    let pol = pol.renamed(|v| match v {
        "y3#2" => "z1".to_string(),
        "x4#2" => "z2".to_string(),
        other => other.strip_suffix("#1").unwrap_or(other).to_string(),
    })?;
    let listed = MonomialIdeal::parse(&format!(
        "{}y1*y2\ny1*x4\ny1*y3\ny2*x4\ny2*y3\ny3*x4\nx4*z2\ny3*z1\n",
        edge_ideal(&g).to_text()
    ))?;
    let listed = listed.in_ring(pol.vars())?;
    if !pol.ideal_equal(&listed)? {
        notes.push(format!("polarization is {}", pol.digest()));
    }

    let cg = colon_graph(&p)?;
    if cg.self_loop_names() != ["y3", "x4"] {
        notes.push(format!("self-loops at {:?}", cg.self_loop_names()));
    }
    let gp = cg.gprime.renamed(|v| match v {
        "y3#2" => "z1".to_string(),
        "x4#2" => "z2".to_string(),
        other => other.to_string(),
    })?;
    if is_very_well_covered(&gp)? {
        notes.push("G' is very well-covered".into());
    }
    let covers = minimal_vertex_covers(&gp)?;
    for support in [
        &["x1", "y2", "y3", "x4"][..],
        &["x1", "x2", "x3", "y1", "y2", "y3", "y4", "z2"][..],
    ] {
        let mut mask = 0u64;
        for v in support {
            match gp.index_of(v) {
                Some(i) => mask |= 1 << i,
                None => notes.push(format!("{v} is not a vertex of G'")),
            }
        }
        if !covers.contains(&mask) || mask.count_ones() as usize != support.len() {
            notes.push(format!("{{{}}} is not a minimal vertex cover", support.join(",")));
        }
    }
    let ok = notes.is_empty();
    if ok {
        notes.push("colon, polarization, G' and both covers match".into());
    }
    Ok((ok, notes.join("; ")))
}

fn criterion_4() -> Result<(bool, String)> {
    Ok(all_pass(&verify_counterexample_boundary(&Settings::default())?))
}

fn criterion_6() -> Result<(bool, String)> {
    Ok(all_pass(&verify_engine_agreement(
        100,
        50,
        SEED,
        &Settings::default(),
    )?))
}

fn criterion_7() -> Result<(bool, String)> {
    Ok(all_pass(&lower_bound_sweep(&random(7, 2, 50))?))
}

fn criterion_8() -> Result<(bool, String)> {
    let mut records = Vec::new();
    for (family, size) in [
        (Family::Whiskered, 4),
        (Family::Join, 2),
        (Family::UnmixedBipartite, 4),
    ] {
        records.extend(run_sweep(&SweepConfig::new(family, size, 2))?.records);
    }
    Ok(all_pass(&records))
}

fn report(n: u32, name: &str, started: Instant, outcome: Result<(bool, String)>) -> bool {
    let secs = started.elapsed().as_secs_f64();
    let (ok, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
    let tag = if ok { "PASS" } else { "FAIL" };
    println!("criterion {n} [{tag}] {name} ({secs:.2}s): {detail}");
    ok
}

fn main() -> ExitCode {
    let mut ok = true;

    let t = Instant::now();
    let (c1, c5) = match exhaustive() {
        Ok([a, b]) => (Ok(a), Ok(b)),
        Err(e) => (Err(e.clone()), Err(e)),
    };
    let shared = t.elapsed();
    ok &= report(1, "main formula on the exhaustive pool", t, c1);

    let t = Instant::now();
    ok &= report(2, "colon oracle equivalence", t, criterion_2());
    let t = Instant::now();
    ok &= report(3, "G_ex colon and polarization", t, criterion_3());
    let t = Instant::now();
    ok &= report(4, "well-covered boundary graph", t, criterion_4());

    // Shares the sweep of criterion 1, so reports the same elapsed time.
    let t = Instant::now() - shared;
    ok &= report(5, "colon regularity bound", t, c5);

    let t = Instant::now();
    ok &= report(6, "engine agreement and polarization", t, criterion_6());
    let t = Instant::now();
    ok &= report(7, "lower bound on random graphs", t, criterion_7());
    let t = Instant::now();
    ok &= report(8, "whiskered, join and unmixed bipartite", t, criterion_8());

    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
