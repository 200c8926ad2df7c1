use std::fmt::Write as _;

use anyhow::anyhow;
use serde::Serialize;

use knotqp::braid::{random_qp, BraidError, BraidWord};
use knotqp::corpus::{table_scan_entries, two_bridge_scan_entries};
use knotqp::diagram::{parse_pd, parse_pd_json, to_json, to_pd_string, LinkDiagram};
use knotqp::invariants::{link_signature, verify_traczyk, InvariantError, SignatureReport};
use knotqp::quasipos::{dhl_verdict, generalized_verdict, r_minus_scan, BraidData, BraidSource, QpError, ScanReport};
use knotqp::seifert::{is_dhl, is_reduced, is_special, seifert_circles, seifert_graph, tree_stats, tree_stats_stable};
use knotqp::table::{bundled, ingest_table, Diagnostic};
use knotqp::two_bridge::{two_bridge, ContinuedFraction};
use knotqp::vogel::braid;

use crate::{input_err, read_text, Cli, CliError, Command, GenCommand, InputArg};

pub fn run(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Classify { input, trees } => classify(cli, input, *trees),
        Command::Certify { input, b, wbeta } => certify(cli, input, *b, *wbeta),
        Command::Invariants { input } => invariants(cli, input),
        Command::Braid { input } => braid_cmd(cli, input),
        Command::Scan { table, two_bridge, two_bridge_min, output } => {
            scan(cli, table.as_deref(), *two_bridge_min, *two_bridge, output.as_deref())
        }
        Command::Gen(GenCommand::TwoBridge { terms }) => gen_two_bridge(cli, terms),
        Command::Gen(GenCommand::Qp { strands, factors, max_conj }) => gen_qp(cli, *strands, *factors, *max_conj),
    }
}

/// Parses a diagram, a PD JSON object or the closure of a braid.
pub fn parse_input(text: &str) -> Result<LinkDiagram, CliError> {
    let t = text.trim_start();
    if t.starts_with('{') {
        parse_pd_json(t).map_err(input_err)
    } else if t.starts_with("strands:") {
        Ok(BraidWord::parse_text(t).map_err(input_err)?.closure())
    } else {
        parse_pd(t).map_err(input_err)
    }
}

fn load(input: &InputArg) -> Result<LinkDiagram, CliError> {
    parse_input(&read_text(&input.input)?)
}

fn json<T: Serialize>(v: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string(v).map_err(|e| CliError::Internal(e.into()))?;
    s.push('\n');
    Ok(s)
}

fn internal(e: impl std::fmt::Display) -> CliError {
    CliError::Internal(anyhow!("{e}"))
}

#[derive(Serialize)]
struct ClassifyReport {
    name: Option<String>,
    crossings: usize,
    components: usize,
    link_components: usize,
    s: usize,
    w: i64,
    d: i64,
    d_plus: usize,
    d_minus: usize,
    alternating: bool,
    reduced: bool,
    positive: bool,
    special: bool,
    /// Only defined for alternating diagrams.
    dhl: Option<bool>,
    trees_checked: usize,
    tree_independent: bool,
}

fn classify(cli: &Cli, input: &InputArg, trees: usize) -> Result<String, CliError> {
    let d = load(input)?;
    let alternating = d.is_alternating();
    let mut r = ClassifyReport {
        name: d.name().map(str::to_owned),
        crossings: d.crossing_count(),
        components: d.component_count(),
        link_components: d.link_component_count(),
        s: 0,
        w: d.writhe(),
        d: 0,
        d_plus: 0,
        d_minus: 0,
        alternating,
        reduced: true,
        positive: d.is_positive(),
        special: true,
        dhl: alternating.then_some(true),
        trees_checked: trees,
        tree_independent: true,
    };
    for piece in d.connected_components() {
        let g = seifert_graph(&piece).map_err(internal)?;
        let t = tree_stats(&g).map_err(internal)?;
        r.s += g.vertices;
        r.d += t.d;
        r.d_plus += t.d_plus;
        r.d_minus += t.d_minus;
        r.reduced &= is_reduced(&g).map_err(internal)?;
        r.special &= is_special(&piece, &seifert_circles(&piece)).map_err(internal)?;
        if let Some(dhl) = r.dhl.as_mut() {
            *dhl &= is_dhl(&piece, &g).map_err(internal)?;
        }
        r.tree_independent &= tree_stats_stable(&g, trees, cli.seed).map_err(internal)?;
    }
    if cli.json {
        return json(&r);
    }
    let flag = |b: bool| if b { "yes" } else { "no" };
    let mut out = String::new();
    if let Some(n) = &r.name {
        let _ = writeln!(out, "name: {n}");
    }
    let _ = writeln!(out, "crossings: {}  components: {}  link components: {}", r.crossings, r.components, r.link_components);
    let _ = writeln!(out, "s: {}  w: {}  d: {}  d+: {}  d-: {}", r.s, r.w, r.d, r.d_plus, r.d_minus);
    let _ = writeln!(
        out,
        "alternating: {}  reduced: {}  positive: {}  special: {}  DHL: {}",
        flag(r.alternating),
        flag(r.reduced),
        flag(r.positive),
        flag(r.special),
        r.dhl.map_or("n/a", flag)
    );
    let _ = writeln!(out, "spanning trees: {} checked, independent: {}", r.trees_checked, flag(r.tree_independent));
    Ok(out)
}

fn qp_error(e: QpError) -> CliError {
    match e {
        QpError::Internal(_) => internal(e),
        other => input_err(other),
    }
}

fn certify(_cli: &Cli, input: &InputArg, b: Option<u32>, wbeta: Option<i64>) -> Result<String, CliError> {
    let d = load(input)?;
    let v = match (b, wbeta) {
        (Some(b), Some(w)) => {
            let bd = BraidData::new(b, w, BraidSource::User).map_err(qp_error)?;
            generalized_verdict(&d, &bd).map_err(qp_error)?
        }
        _ => dhl_verdict(&d).map_err(qp_error)?,
    };
    json(&v)
}

fn signature_report(d: &LinkDiagram) -> Result<SignatureReport, CliError> {
    let traczyk_applies = d.is_connected()
        && d.crossing_count() > 0
        && d.is_alternating()
        && seifert_graph(d).and_then(|g| is_reduced(&g)).unwrap_or(false);
    let r = if traczyk_applies { verify_traczyk(d) } else { link_signature(d) };
    r.map_err(|e| match e {
        InvariantError::Diagram(_) => input_err(e),
        other => internal(other),
    })
}

fn invariants(cli: &Cli, input: &InputArg) -> Result<String, CliError> {
    let d = load(input)?;
    let r = signature_report(&d)?;
    if r.traczyk_sigma.is_some() && !r.agreement {
        return Err(internal(format!("signature {} disagrees with d - w = {:?}", r.sigma, r.traczyk_sigma)));
    }
    if cli.json {
        return json(&r);
    }
    let mut out = format!("sigma: {}\nnullity: {}\ndet: {}\nw: {}\nd: {}\n", r.sigma, r.nullity, r.determinant, r.w, r.d);
    if let Some(t) = r.traczyk_sigma {
        let _ = writeln!(out, "d - w: {t} (agrees)");
    }
    Ok(out)
}

#[derive(Serialize)]
struct BraidReport<'a> {
    strands: usize,
    letters: &'a [i32],
    exponent_sum: i64,
    moves: usize,
}

fn braid_cmd(cli: &Cli, input: &InputArg) -> Result<String, CliError> {
    let d = load(input)?;
    let b = braid(&d).map_err(|e| match e {
        BraidError::Diagram(_) => input_err(e),
        other => internal(other),
    })?;
    if cli.json {
        let w = &b.word;
        return json(&BraidReport { strands: w.strands(), letters: w.letters(), exponent_sum: w.exponent_sum(), moves: b.moves });
    }
    Ok(b.word.to_text())
}

#[derive(Serialize)]
struct ScanFile<'a> {
    #[serde(flatten)]
    report: &'a ScanReport,
    table_diagnostics: &'a [Diagnostic],
}

fn scan(
    cli: &Cli,
    table: Option<&std::path::Path>,
    min: usize,
    max: Option<usize>,
    output: Option<&std::path::Path>,
) -> Result<String, CliError> {
    let loaded = table.map(ingest_table).transpose().map_err(input_err)?;
    let mut entries = loaded.as_ref().map(table_scan_entries).unwrap_or_default();
    if let Some(max) = max {
        let lookup = match &loaded {
            Some(t) => t.clone(),
            None => bundled(),
        };
        entries.extend(two_bridge_scan_entries(min.max(1)..=max, Some(&lookup)));
    }
    let report = r_minus_scan(&entries);
    let diagnostics = loaded.as_ref().map(|t| t.diagnostics.as_slice()).unwrap_or_default();
    let file = ScanFile { report: &report, table_diagnostics: diagnostics };
    if let Some(path) = output {
        let text = serde_json::to_string_pretty(&file).map_err(|e| CliError::Internal(e.into()))?;
        std::fs::write(path, text + "\n").map_err(|e| input_err(anyhow!("{}: {e}", path.display())))?;
    }
    let s = report.summary;
    match (cli.json, output) {
        (true, Some(_)) => json(&s),
        (true, None) => json(&file),
        (false, _) => {
            let mut out = format!(
                "scanned {} entries: {} hold, {} violations, {} skipped, {} errors\n",
                s.total, s.holds, s.violations, s.skipped, s.errors
            );
            for d in diagnostics {
                let _ = writeln!(out, "table record {} {}: {}", d.record, d.name, d.message);
            }
            Ok(out)
        }
    }
}

fn gen_two_bridge(cli: &Cli, terms: &[i64]) -> Result<String, CliError> {
    let cf = ContinuedFraction::new(terms).map_err(input_err)?;
    let d = two_bridge(&cf).map_err(internal)?;
    if cli.json {
        return json(&to_json(&d));
    }
    Ok(to_pd_string(&d) + "\n")
}

fn gen_qp(cli: &Cli, strands: usize, factors: usize, max_conj: usize) -> Result<String, CliError> {
    let f = random_qp(strands, factors, max_conj, cli.seed).map_err(input_err)?;
    let w = f.expand().map_err(internal)?;
    if cli.json {
        #[derive(Serialize)]
        struct Qp<'a> {
            factorization: &'a knotqp::braid::QpFactorization,
            word: &'a BraidWord,
        }
        return json(&Qp { factorization: &f, word: &w });
    }
    Ok(w.to_text())
}
