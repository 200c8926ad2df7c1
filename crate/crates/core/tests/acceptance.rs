//! Acceptance criteria, one PASS/FAIL line each. All comparisons are exact
//! integer equalities (tolerance 0); runtime limits are wall-clock.

use std::time::{Duration, Instant};

use knotqp::corpus::{reduced_two_bridge, two_bridge_scan_entries};
use knotqp::diagram::LinkDiagram;
use knotqp::fixtures::{alternating_closures, fig8, kink, pos_hopf, pos_trefoil};
use knotqp::invariants::{link_signature, verify_traczyk};
use knotqp::quasipos::{
    dhl_verdict, generalized_verdict, mt_check, proof_chain_check, r_minus_scan, r_pm, reverify, BraidData,
    InconclusiveReason, Outcome, ScanStatus,
};
use knotqp::seifert::{is_dhl, seifert_circles, seifert_graph, tree_stats_stable};
use knotqp::table::bundled;
use knotqp::vogel::vogel_transform;

struct Report {
    failed: usize,
}

impl Report {
    fn line(&mut self, id: u32, title: &str, ok: bool, detail: String, limit: Option<(Duration, Duration)>) {
        let timing = match limit {
            Some((took, max)) => format!("; {:.2}s (limit {}s)", took.as_secs_f64(), max.as_secs()),
            None => String::new(),
        };
        println!("criterion {id} [{}] {title}: {detail}; tolerance 0{timing}", if ok { "PASS" } else { "FAIL" });
        if !ok {
            self.failed += 1;
        }
    }
}

/// Connected reduced alternating diagrams: two-bridge outputs with term sum
/// at most 10, alternating braid closures, and alternating table rows.
fn corpus() -> Vec<LinkDiagram> {
    let mut out: Vec<LinkDiagram> = reduced_two_bridge(2..=10).into_iter().map(|(_, d)| d).collect();
    out.extend(alternating_closures());
    out.extend(bundled().rows.into_iter().map(|r| r.diagram).filter(|d| d.is_alternating()));
    out
}

fn main() {
    let mut rep = Report { failed: 0 };
    let corpus = corpus();
    let label = |d: &LinkDiagram| d.name().unwrap_or("?").to_string();

    // 1
    let t = Instant::now();
    let bad: Vec<String> = corpus
        .iter()
        .filter(|d| match verify_traczyk(d) {
            Ok(r) => !(r.agreement && r.nullity == 0 && r.determinant != 0u32.into()),
            Err(_) => true,
        })
        .map(label)
        .collect();
    let took = t.elapsed();
    let limit = Duration::from_secs(60);
    rep.line(
        1,
        "sigma = d - w, nullity 0, det != 0 on connected reduced alternating corpus",
        corpus.len() >= 200 && bad.is_empty() && took < limit,
        format!("{}/{} agree {:?}", corpus.len() - bad.len(), corpus.len(), &bad[..bad.len().min(5)]),
        Some((took, limit)),
    );

    // 2
    let sig = |d: &LinkDiagram| {
        let r = link_signature(d).unwrap();
        (r.sigma, r.nullity, r.determinant.to_string())
    };
    let (t3, f8, h) = (sig(&pos_trefoil()), sig(&fig8()), sig(&pos_hopf()));
    rep.line(
        2,
        "calibration",
        t3 == (-2, 0, "3".into()) && (f8.0, &f8.2[..]) == (0, "5") && h.0 == -1,
        format!("trefoil {t3:?}, fig8 {f8:?}, hopf {h:?}"),
        None,
    );

    // 3
    let t = Instant::now();
    let bad: Vec<String> = corpus
        .iter()
        .filter(|d| match vogel_transform(d) {
            Ok(w) => {
                let (a, b) = (link_signature(d).unwrap(), link_signature(&w.closure()).unwrap());
                w.strands() != seifert_circles(d).count()
                    || w.exponent_sum() != d.writhe()
                    || (a.sigma, a.nullity, &a.determinant) != (b.sigma, b.nullity, &b.determinant)
            }
            Err(_) => true,
        })
        .map(label)
        .collect();
    let took = t.elapsed();
    rep.line(
        3,
        "braiding keeps s(D) strands, writhe and (sigma, nullity, det)",
        bad.is_empty() && took < limit,
        format!("{}/{} {:?}", corpus.len() - bad.len(), corpus.len(), &bad[..bad.len().min(5)]),
        Some((took, limit)),
    );

    // 4
    let t = Instant::now();
    let mut fails = Vec::new();
    for seed in 0..1000u64 {
        let n = 2 + (seed % 5) as usize;
        let factors = (seed / 5 % 9) as usize;
        let f = knotqp::braid::random_qp(n, factors, 6, seed).unwrap();
        let w = f.expand().unwrap();
        let r = link_signature(&w.closure()).unwrap();
        if !mt_check(r.sigma, r.nullity, w.strands(), w.exponent_sum()) {
            fails.push(seed);
        }
    }
    let took = t.elapsed();
    let limit = Duration::from_secs(120);
    rep.line(
        4,
        "1 + nullity >= |sigma| + n - w on 1000 random quasipositive closures",
        fails.is_empty() && took < limit,
        format!("{}/1000 hold, failing seeds {:?}", 1000 - fails.len(), &fails[..fails.len().min(5)]),
        Some((took, limit)),
    );

    // 5
    let dhl: Vec<&LinkDiagram> =
        corpus.iter().filter(|d| is_dhl(d, &seifert_graph(d).unwrap()).unwrap()).collect();
    let bad: Vec<String> = dhl.iter().filter(|d| proof_chain_check(d) != Ok(true)).map(|d| label(d)).collect();
    rep.line(
        5,
        "[D positive] <=> [1 >= |d - w| + s - w] on DHL corpus",
        !dhl.is_empty() && bad.is_empty(),
        format!("{}/{} {:?}", dhl.len() - bad.len(), dhl.len(), &bad[..bad.len().min(5)]),
        None,
    );

    // 6
    let outcome = |d: &LinkDiagram| dhl_verdict(d).unwrap();
    let fixtures_ok = outcome(&pos_trefoil()).outcome == Outcome::StronglyQuasipositive
        && outcome(&fig8()).outcome == Outcome::NotQuasipositive
        && outcome(&kink()).reason() == Some(InconclusiveReason::NotDhl);
    let mut disagree = Vec::new();
    for d in [pos_trefoil(), pos_hopf(), fig8()].iter().chain(dhl.iter().copied()) {
        let v = dhl_verdict(d).unwrap();
        let g = generalized_verdict(d, &BraidData::dhl_internal(d).unwrap()).unwrap();
        if v.outcome != g.outcome || !reverify(d, &v).unwrap() || !reverify(d, &g).unwrap() {
            disagree.push(label(d));
        }
    }
    rep.line(
        6,
        "verdict fixtures and generalized/DHL agreement with re-verified certificates",
        fixtures_ok && disagree.is_empty(),
        format!("fixtures {}, {} disagreements {:?}", if fixtures_ok { "ok" } else { "wrong" }, disagree.len(), &disagree[..disagree.len().min(5)]),
        None,
    );

    // 7
    let table = bundled();
    let mut with_data = 0;
    let mut bad = Vec::new();
    let mut dhl_rows = 0;
    for row in &table.rows {
        let Some(bd) = row.braid_data() else { continue };
        with_data += 1;
        let d = &row.diagram;
        match r_pm(seifert_circles(d).count(), d.writhe(), &bd) {
            Ok(r) => {
                let is_dhl_row = d.is_alternating() && is_dhl(d, &seifert_graph(d).unwrap()).unwrap();
                if is_dhl_row {
                    dhl_rows += 1;
                    if (r.r_plus, r.r_minus) != (0, 0) {
                        bad.push(format!("{} r=({},{})", row.row.name, r.r_plus, r.r_minus));
                    }
                }
            }
            Err(e) => bad.push(format!("{}: {e}", row.row.name)),
        }
    }
    rep.line(
        7,
        "r+- are non-negative integers on table rows, zero on DHL rows",
        with_data > 0 && bad.is_empty(),
        format!("{with_data} rows with braid data, {dhl_rows} DHL, problems {bad:?}"),
        None,
    );

    // 8
    let entries = two_bridge_scan_entries(2..=10, Some(&table));
    let scan = r_minus_scan(&entries);
    let report = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("two_bridge_scan.json");
    let written = std::fs::write(&report, serde_json::to_string_pretty(&scan).unwrap()).is_ok();
    let s = scan.summary;
    let skipped_have_notes =
        scan.records.iter().filter(|r| r.status == ScanStatus::Skipped).all(|r| r.message.is_some());
    rep.line(
        8,
        "2r- <= d- on two-bridge corpus entries with table braid data",
        s.violations == 0 && s.errors == 0 && s.holds > 0 && s.total == entries.len() && skipped_have_notes && written,
        format!(
            "{} entries: {} hold, {} violations, {} skipped with diagnostics; report {}",
            s.total,
            s.holds,
            s.violations,
            s.skipped,
            report.display()
        ),
        None,
    );

    // 9
    let bad: Vec<String> = corpus
        .iter()
        .enumerate()
        .filter(|(i, d)| !tree_stats_stable(&seifert_graph(d).unwrap(), 100, *i as u64).unwrap())
        .map(|(_, d)| label(d))
        .collect();
    rep.line(
        9,
        "d, d+, d- identical across 100 random spanning trees",
        bad.is_empty(),
        format!("{}/{} {:?}", corpus.len() - bad.len(), corpus.len(), &bad[..bad.len().min(5)]),
        None,
    );

    println!("acceptance: {} of 9 criteria passed", 9 - rep.failed);
    if rep.failed > 0 {
        std::process::exit(1);
    }
}
