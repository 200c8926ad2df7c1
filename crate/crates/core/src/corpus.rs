//! Corpora for scans: generated two-bridge diagrams paired with braid data
//! from an ingested table.

use num_traits::ToPrimitive;

use crate::diagram::LinkDiagram;
use crate::invariants::link_signature;
use crate::quasipos::{BraidData, BraidSource, ScanEntry};
use crate::seifert::{is_reduced, seifert_graph};
use crate::table::{IngestedRow, Table};
use crate::two_bridge::{two_bridge, ContinuedFraction};

/// Reduced two-bridge diagrams for every term list with sum in `range`.
pub fn reduced_two_bridge(range: std::ops::RangeInclusive<usize>) -> Vec<(ContinuedFraction, LinkDiagram)> {
    let mut out = Vec::new();
    for total in range {
        for cf in ContinuedFraction::compositions(total) {
            let d = two_bridge(&cf).expect("compositions have positive terms");
            if seifert_graph(&d).and_then(|g| is_reduced(&g)).unwrap_or(false) {
                out.push((cf, d));
            }
        }
    }
    out
}

fn inverse_mod(a: u64, p: u64) -> Option<u64> {
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let k = r0 / r1;
        (r0, r1) = (r1, r0 - k * r1);
        (t0, t1) = (t1, t0 - k * t1);
    }
    (r0 == 1).then(|| t0.rem_euclid(p as i128) as u64)
}

/// `K(p/q)` and `K(p/q')` agree up to mirror image iff `q' ≡ ±q^{±1} mod p`.
pub fn same_two_bridge(p: u64, q: u64, q2: u64) -> bool {
    if p <= 1 {
        return true;
    }
    let (q, q2) = (q % p, q2 % p);
    let inv = inverse_mod(q, p);
    [Some(q), Some(p - q), inv, inv.map(|i| (p - i) % p)].contains(&Some(q2))
}

/// Braid data for a two-bridge diagram from the matching table row, in the
/// diagram's chirality. Reduced alternating diagrams of a link share their
/// writhe, so comparing writhes (then signatures) fixes the mirror.
pub fn lookup_two_bridge(cf: &ContinuedFraction, d: &LinkDiagram, table: &Table) -> Result<BraidData, String> {
    let (p, q) = cf.fraction();
    let (p, q) = match (p.to_u64(), q.to_u64()) {
        (Some(p), Some(q)) => (p, q),
        _ => return Err("fraction too large".into()),
    };
    let row: &IngestedRow = table
        .rows
        .iter()
        .find(|r| r.row.two_bridge_fraction().is_some_and(|(pt, qt)| pt == p && same_two_bridge(p, q, qt)))
        .ok_or_else(|| format!("no table row for two-bridge {p}/{q}"))?;
    let bd = row.braid_data().ok_or_else(|| format!("{}: no braid data", row.row.name))?;
    let (w, wt) = (d.writhe(), row.diagram.writhe());
    let mirrored = if w == wt && w != 0 {
        false
    } else if w == -wt && w != 0 {
        true
    } else {
        let s = link_signature(d).map_err(|e| e.to_string())?.sigma;
        let st = link_signature(&row.diagram).map_err(|e| e.to_string())?.sigma;
        match (s, st) {
            _ if bd.w_beta == 0 => false,
            (s, st) if s == st && s != 0 => false,
            (s, st) if s == -st && s != 0 => true,
            _ => return Err(format!("{}: chirality undetermined", row.row.name)),
        }
    };
    let w_beta = if mirrored { -bd.w_beta } else { bd.w_beta };
    BraidData::new(bd.b, w_beta, BraidSource::IngestedTable).map_err(|e| e.to_string())
}

/// Scan entries for the reduced two-bridge diagrams with sum in `range`,
/// with braid data from `table` where a row matches.
pub fn two_bridge_scan_entries(range: std::ops::RangeInclusive<usize>, table: Option<&Table>) -> Vec<ScanEntry> {
    reduced_two_bridge(range)
        .into_iter()
        .map(|(cf, d)| {
            let (braid, note) = match table.map(|t| lookup_two_bridge(&cf, &d, t)) {
                Some(Ok(bd)) => (Some(bd), None),
                Some(Err(why)) => (None, Some(why)),
                None => (None, Some("no table given".into())),
            };
            ScanEntry { name: format!("two_bridge{cf}"), diagram: d, braid, note }
        })
        .collect()
}

/// Scan entries for the table rows themselves.
pub fn table_scan_entries(table: &Table) -> Vec<ScanEntry> {
    table
        .rows
        .iter()
        .map(|r| {
            let braid = r.braid_data();
            let note = braid.is_none().then(|| "no braid index or derivable w_beta".to_string());
            ScanEntry { name: r.row.name.clone(), diagram: r.diagram.clone(), braid, note }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_bridge_equivalence() {
        assert!(same_two_bridge(5, 2, 3));
        assert!(same_two_bridge(7, 2, 4));
        assert!(same_two_bridge(7, 3, 2)); // 3·5 ≡ 1, 7 - 5 = 2
        assert!(!same_two_bridge(7, 1, 2));
        assert_eq!(inverse_mod(3, 7), Some(5));
        assert_eq!(inverse_mod(2, 4), None);
    }

    #[test]
    fn reduced_corpus_excludes_nugatory_diagrams() {
        // only the one-crossing kink is dropped
        let c = reduced_two_bridge(1..=4);
        assert_eq!(c.len(), 1 + 2 + 4 + 8 - 1);
        assert!(c.iter().all(|(cf, _)| cf.terms() != [1]));
    }
}
