//! Quasipositivity verdicts for alternating diagrams.
//!
//! Two decision procedures are implemented. For diagrams whose Seifert
//! circles are never joined by a single crossing (DHL diagrams) a
//! quasipositive link forces a positive diagram, so the crossing signs
//! decide. For other reduced alternating diagrams the same conclusion holds
//! under `2r⁻ ≤ d⁻`, where `r±` come from external braid-index data.
//!
//! Every verdict carries a certificate naming the quantities it used; see
//! [`reverify`].

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diagram::{to_pd_string, LinkDiagram};
use crate::seifert::{is_dhl, is_reduced, seifert_graph, tree_stats, SeifertError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QpError {
    #[error("braid index must be at least 1")]
    InvalidBraidIndex,
    #[error("inconsistent braid data: s - b = {sum} and w(D) - w(beta) = {diff} differ in parity")]
    ParityError { sum: i64, diff: i64 },
    #[error("braid data gives r+ = {r_plus}, r- = {r_minus}; both must be non-negative")]
    NegativeR { r_plus: i64, r_minus: i64 },
    #[error(transparent)]
    Seifert(#[from] SeifertError),
    #[error("{0}")]
    Hypothesis(InconclusiveReason),
    /// A recomputed quantity contradicts a proved implication. Never expected.
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BraidSource {
    DhlInternal,
    IngestedTable,
    User,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraidData {
    pub b: u32,
    pub w_beta: i64,
    pub source: BraidSource,
}

impl BraidData {
    pub fn new(b: u32, w_beta: i64, source: BraidSource) -> Result<Self, QpError> {
        if b == 0 {
            return Err(QpError::InvalidBraidIndex);
        }
        Ok(BraidData { b, w_beta, source })
    }

    /// `b = s(D)` and `w_beta = w(D)`, valid when `d` is a DHL diagram.
    pub fn dhl_internal(d: &LinkDiagram) -> Result<Self, QpError> {
        let g = seifert_graph(d)?;
        BraidData::new(g.vertices as u32, d.writhe(), BraidSource::DhlInternal)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RCounts {
    pub r_plus: u64,
    pub r_minus: u64,
}

/// Hypotheses whose failure makes a verdict inconclusive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum InconclusiveReason {
    NotConnected,
    NotAlternating,
    NotReduced,
    #[serde(rename = "NotDHL")]
    NotDhl,
    Condition4Fails,
}

impl std::fmt::Display for InconclusiveReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            InconclusiveReason::NotConnected => "diagram is not connected",
            InconclusiveReason::NotAlternating => "diagram is not alternating",
            InconclusiveReason::NotReduced => "diagram is not reduced",
            InconclusiveReason::NotDhl => "some pair of Seifert circles is joined by a single crossing",
            InconclusiveReason::Condition4Fails => "2r- > d-",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Outcome {
    StronglyQuasipositive,
    NotQuasipositive,
    Inconclusive,
}

/// `lhs ≥ rhs` as evaluated on the diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inequality {
    pub lhs: i64,
    pub rhs: i64,
    pub holds: bool,
}

impl Inequality {
    fn new(lhs: i64, rhs: i64) -> Self {
        Inequality { lhs, rhs, holds: lhs >= rhs }
    }
}

/// Seifert data of one connected piece, by original crossing index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentEvidence {
    pub crossings: Vec<usize>,
    pub s: usize,
    pub w: i64,
    pub d: i64,
    pub d_plus: usize,
    pub d_minus: usize,
    pub dhl: bool,
    pub positive: bool,
    /// `1 ≥ |d − w| + s − w`, the signature bound for a quasipositive
    /// `s`-braid of writhe `w`.
    pub chain: Inequality,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub theorem_chain: Vec<String>,
    pub components: Vec<ComponentEvidence>,
    pub negative_crossings: Vec<usize>,
    /// PD of the positive diagram, for strongly quasipositive verdicts.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub positive_witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub braid_data: Option<BraidData>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<RCounts>,
    /// `2r⁻ ≤ d⁻` written as `d⁻ ≥ 2r⁻`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_minus_bound: Option<Inequality>,
    /// `1 + 2r⁻ ≥ |d − w| + s − w`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub braid_chain: Option<Inequality>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failed_hypothesis: Option<InconclusiveReason>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub outcome: Outcome,
    pub certificate: Certificate,
}

impl Verdict {
    fn new(outcome: Outcome, chain: &[&str]) -> Self {
        Verdict {
            outcome,
            certificate: Certificate {
                theorem_chain: chain.iter().map(|s| s.to_string()).collect(),
                components: Vec::new(),
                negative_crossings: Vec::new(),
                positive_witness: None,
                braid_data: None,
                r: None,
                r_minus_bound: None,
                braid_chain: None,
                failed_hypothesis: None,
            },
        }
    }

    fn inconclusive(reason: InconclusiveReason) -> Self {
        let mut v = Verdict::new(Outcome::Inconclusive, &[]);
        v.certificate.failed_hypothesis = Some(reason);
        v
    }

    pub fn reason(&self) -> Option<InconclusiveReason> {
        self.certificate.failed_hypothesis
    }
}

/// Signature bound for a quasipositive `n`-braid of writhe `w`:
/// `1 + nullity ≥ |σ| + n − w`.
pub fn mt_check(sigma: i64, nullity: usize, n: usize, w: i64) -> bool {
    1 + nullity as i64 >= sigma.abs() + n as i64 - w
}

/// Solves `r⁺ + r⁻ = s − b`, `r⁺ − r⁻ = w_d − w_beta`.
pub fn r_pm(s: usize, w_d: i64, bd: &BraidData) -> Result<RCounts, QpError> {
    let sum = s as i64 - bd.b as i64;
    let diff = w_d - bd.w_beta;
    if (sum - diff).rem_euclid(2) != 0 {
        return Err(QpError::ParityError { sum, diff });
    }
    let (r_plus, r_minus) = ((sum + diff) / 2, (sum - diff) / 2);
    if r_plus < 0 || r_minus < 0 {
        return Err(QpError::NegativeR { r_plus, r_minus });
    }
    Ok(RCounts { r_plus: r_plus as u64, r_minus: r_minus as u64 })
}

fn evidence(piece: &LinkDiagram) -> Result<ComponentEvidence, QpError> {
    let g = seifert_graph(piece)?;
    let t = tree_stats(&g)?;
    let (s, w) = (g.vertices, piece.writhe());
    Ok(ComponentEvidence {
        crossings: piece.crossings().iter().map(|c| c.index()).collect(),
        s,
        w,
        d: t.d,
        d_plus: t.d_plus,
        d_minus: t.d_minus,
        dhl: is_dhl(piece, &g)?,
        positive: piece.is_positive(),
        chain: Inequality::new(1, (t.d - w).abs() + s as i64 - w),
    })
}

/// Verdict for alternating diagrams all of whose connected pieces are DHL.
/// Split diagrams are handled piecewise.
pub fn dhl_verdict(d: &LinkDiagram) -> Result<Verdict, QpError> {
    if !d.is_alternating() {
        return Ok(Verdict::inconclusive(InconclusiveReason::NotAlternating));
    }
    let comps: Vec<ComponentEvidence> = d.connected_components().iter().map(evidence).collect::<Result<_, _>>()?;
    if comps.iter().any(|c| !c.dhl) {
        let mut v = Verdict::inconclusive(InconclusiveReason::NotDhl);
        v.certificate.components = comps;
        return Ok(v);
    }
    let negative = d.negative_crossings();
    let mut v = if negative.is_empty() {
        let mut v = Verdict::new(Outcome::StronglyQuasipositive, &["Thm2", "Cor3"]);
        v.certificate.positive_witness = Some(to_pd_string(d));
        v
    } else {
        // a quasipositive DHL piece would satisfy its chain inequality
        if let Some(c) = comps.iter().find(|c| !c.positive && c.chain.holds) {
            return Err(QpError::Internal(format!("non-positive DHL piece {:?} satisfies the signature bound", c.crossings)));
        }
        Verdict::new(Outcome::NotQuasipositive, &["Eq2", "Thm2"])
    };
    v.certificate.negative_crossings = negative;
    v.certificate.components = comps;
    Ok(v)
}

fn check_reduced_alternating(d: &LinkDiagram) -> Result<Option<InconclusiveReason>, QpError> {
    if !d.is_connected() {
        return Ok(Some(InconclusiveReason::NotConnected));
    }
    if !d.is_alternating() {
        return Ok(Some(InconclusiveReason::NotAlternating));
    }
    if !is_reduced(&seifert_graph(d)?)? {
        return Ok(Some(InconclusiveReason::NotReduced));
    }
    Ok(None)
}

/// Verdict from braid data for connected reduced alternating diagrams,
/// gated on `2r⁻ ≤ d⁻`.
pub fn generalized_verdict(d: &LinkDiagram, bd: &BraidData) -> Result<Verdict, QpError> {
    if let Some(reason) = check_reduced_alternating(d)? {
        return Ok(Verdict::inconclusive(reason));
    }
    let ev = evidence(d)?;
    let r = r_pm(ev.s, ev.w, bd)?;
    let bound = Inequality::new(ev.d_minus as i64, 2 * r.r_minus as i64);
    let chain = Inequality::new(1 + 2 * r.r_minus as i64, (ev.d - ev.w).abs() + ev.s as i64 - ev.w);
    let mut v = if !bound.holds {
        Verdict::inconclusive(InconclusiveReason::Condition4Fails)
    } else if ev.positive {
        let mut v = Verdict::new(Outcome::StronglyQuasipositive, &["Thm6", "Cor3"]);
        v.certificate.positive_witness = Some(to_pd_string(d));
        v
    } else {
        if chain.holds {
            return Err(QpError::Internal("non-positive diagram satisfies the braid signature bound under 2r- <= d-".into()));
        }
        Verdict::new(Outcome::NotQuasipositive, &["Eq2", "Thm6"])
    };
    v.certificate.negative_crossings = d.negative_crossings();
    v.certificate.components = vec![ev];
    v.certificate.braid_data = Some(*bd);
    v.certificate.r = Some(r);
    v.certificate.r_minus_bound = Some(bound);
    v.certificate.braid_chain = Some(chain);
    Ok(v)
}

/// `[D positive] ⇔ [1 ≥ |d − w| + s − w]` for connected reduced alternating
/// DHL diagrams.
pub fn proof_chain_check(d: &LinkDiagram) -> Result<bool, QpError> {
    if let Some(reason) = check_reduced_alternating(d)? {
        return Err(QpError::Hypothesis(reason));
    }
    let ev = evidence(d)?;
    if !ev.dhl {
        return Err(QpError::Hypothesis(InconclusiveReason::NotDhl));
    }
    Ok(ev.positive == ev.chain.holds)
}

/// Recomputes every quantity named in the certificate and checks that the
/// outcome follows from them.
pub fn reverify(d: &LinkDiagram, v: &Verdict) -> Result<bool, QpError> {
    let again = match v.certificate.braid_data {
        Some(bd) => generalized_verdict(d, &bd)?,
        None => dhl_verdict(d)?,
    };
    if again != *v {
        return Ok(false);
    }
    let c = &v.certificate;
    let ok = match v.outcome {
        Outcome::StronglyQuasipositive => {
            c.negative_crossings.is_empty() && c.positive_witness.is_some() && c.components.iter().all(|e| e.positive)
        }
        Outcome::NotQuasipositive => {
            !c.negative_crossings.is_empty()
                && match c.braid_chain {
                    Some(ch) => !ch.holds && c.r_minus_bound.is_some_and(|q| q.holds),
                    None => c.components.iter().all(|e| e.dhl) && c.components.iter().any(|e| !e.chain.holds),
                }
        }
        Outcome::Inconclusive => c.failed_hypothesis.is_some(),
    };
    Ok(ok)
}

/// One corpus entry for the `2r⁻ ≤ d⁻` scan.
#[derive(Clone, Debug)]
pub struct ScanEntry {
    pub name: String,
    pub diagram: LinkDiagram,
    pub braid: Option<BraidData>,
    /// Why braid data is missing, if it is.
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanStatus {
    Holds,
    Violation,
    Skipped,
    Error,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub index: usize,
    pub name: String,
    pub status: ScanStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
    pub s: Option<usize>,
    pub b: Option<u32>,
    pub w_d: Option<i64>,
    pub w_beta: Option<i64>,
    pub r_plus: Option<u64>,
    pub r_minus: Option<u64>,
    pub d_plus: Option<usize>,
    pub d_minus: Option<usize>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanSummary {
    pub total: usize,
    pub holds: usize,
    pub violations: usize,
    pub skipped: usize,
    pub errors: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub summary: ScanSummary,
    /// Violations first, then everything else by entry index.
    pub records: Vec<ScanRecord>,
}

fn scan_one(index: usize, e: &ScanEntry) -> ScanRecord {
    let mut rec = ScanRecord {
        index,
        name: e.name.clone(),
        status: ScanStatus::Skipped,
        message: None,
        s: None,
        b: e.braid.map(|b| b.b),
        w_d: Some(e.diagram.writhe()),
        w_beta: e.braid.map(|b| b.w_beta),
        r_plus: None,
        r_minus: None,
        d_plus: None,
        d_minus: None,
    };
    let fail = |mut rec: ScanRecord, status, msg: String| {
        rec.status = status;
        rec.message = Some(msg);
        rec
    };
    match check_reduced_alternating(&e.diagram) {
        Ok(None) => {}
        Ok(Some(reason)) => return fail(rec, ScanStatus::Error, reason.to_string()),
        Err(err) => return fail(rec, ScanStatus::Error, err.to_string()),
    }
    let ev = match evidence(&e.diagram) {
        Ok(ev) => ev,
        Err(err) => return fail(rec, ScanStatus::Error, err.to_string()),
    };
    rec.s = Some(ev.s);
    rec.d_plus = Some(ev.d_plus);
    rec.d_minus = Some(ev.d_minus);
    let Some(bd) = e.braid else {
        let why = e.note.clone().unwrap_or_else(|| "no braid data".into());
        return fail(rec, ScanStatus::Skipped, why);
    };
    match r_pm(ev.s, ev.w, &bd) {
        Ok(r) => {
            rec.r_plus = Some(r.r_plus);
            rec.r_minus = Some(r.r_minus);
            rec.status = if 2 * r.r_minus <= ev.d_minus as u64 { ScanStatus::Holds } else { ScanStatus::Violation };
            rec
        }
        Err(err) => fail(rec, ScanStatus::Error, err.to_string()),
    }
}

/// Evaluates `2r⁻ ≤ d⁻` on every entry in parallel. Per-entry problems are
/// recorded and never abort the scan.
pub fn r_minus_scan(corpus: &[ScanEntry]) -> ScanReport {
    let mut records: Vec<ScanRecord> = corpus.par_iter().enumerate().map(|(i, e)| scan_one(i, e)).collect();
    records.sort_by_key(|r| (r.status != ScanStatus::Violation, r.index));
    let mut summary = ScanSummary { total: records.len(), ..Default::default() };
    for r in &records {
        match r.status {
            ScanStatus::Holds => summary.holds += 1,
            ScanStatus::Violation => summary.violations += 1,
            ScanStatus::Skipped => summary.skipped += 1,
            ScanStatus::Error => summary.errors += 1,
        }
    }
    ScanReport { summary, records }
}
