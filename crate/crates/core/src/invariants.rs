//! Signature, nullity and determinant by two independent routes: the
//! Gordon–Litherland form of a checkerboard surface, and the spanning-tree
//! formula σ = d(D) − w(D) for connected reduced alternating diagrams.
//!
//! Conventions: the black faces span the surface and the Goeritz matrix is
//! indexed by white faces. A crossing has incidence η = +1 when its white
//! corners are the ones reached counterclockwise from an under-arc, and it is
//! of type II when the oriented smoothing merges its black corners; for such
//! crossings η equals the crossing sign. Then σ = sign(G) − μ with
//! μ = Σ_{type II} sign(c).

use num_bigint::{BigInt, BigUint};
use serde::{Serialize, Serializer};

use crate::diagram::{checkerboard, CheckerboardColoring, Color, DiagramError, LinkDiagram};
use crate::linalg::{diagonalize, SymmetricMatrix};
use crate::seifert::{graph_from_circles, is_reduced, seifert_circles, tree_stats, SeifertError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InvariantError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Seifert(#[from] SeifertError),
    #[error("hypothesis violated: diagram is not {0}")]
    HypothesisViolated(Hypothesis),
    #[error("the Goeritz construction needs at least one crossing")]
    NoCrossings,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Hypothesis {
    Connected,
    Alternating,
    Reduced,
    Dhl,
}

impl std::fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Hypothesis::Connected => "connected",
            Hypothesis::Alternating => "alternating",
            Hypothesis::Reduced => "reduced",
            Hypothesis::Dhl => "DHL",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CrossingType {
    I,
    II,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoeritzData {
    /// White faces indexing the matrix rows; the basepoint face is removed.
    pub white_faces: Vec<usize>,
    pub basepoint: usize,
    /// Matrix over all white faces, before the basepoint is deleted.
    pub full: Vec<Vec<i64>>,
    pub matrix: SymmetricMatrix,
    /// μ, the sum of signs over type II crossings.
    pub type2_correction: i64,
    /// `(crossing index, type, incidence)` per crossing.
    pub crossing_types: Vec<(usize, CrossingType, i32)>,
}

pub fn goeritz(d: &LinkDiagram, col: &CheckerboardColoring) -> Result<GoeritzData, InvariantError> {
    d.require_connected()?;
    if d.crossing_count() == 0 {
        return Err(InvariantError::NoCrossings);
    }
    let faces = &col.faces;
    let whites: Vec<usize> = (0..faces.len()).filter(|&f| col.colors[f] == Color::White).collect();
    let row_of = |f: usize| whites.iter().position(|&w| w == f).expect("white face");
    let k = whites.len();
    let mut full = vec![vec![0i64; k]; k];
    let mut mu = 0;
    let mut crossing_types = Vec::with_capacity(d.crossing_count());
    for (pos, c) in d.crossings().iter().enumerate() {
        let corner0 = faces.corner(pos, 0);
        let (eta, a, b) = if col.colors[corner0] == Color::White {
            (1, corner0, faces.corner(pos, 2))
        } else {
            (-1, faces.corner(pos, 1), faces.corner(pos, 3))
        };
        let ty = if eta == c.sign() { CrossingType::II } else { CrossingType::I };
        if ty == CrossingType::II {
            mu += c.sign() as i64;
        }
        crossing_types.push((c.index(), ty, eta));
        if a != b {
            let (i, j) = (row_of(a), row_of(b));
            full[i][j] -= eta as i64;
            full[j][i] -= eta as i64;
            full[i][i] += eta as i64;
            full[j][j] += eta as i64;
        }
    }
    let reduced: Vec<Vec<i64>> = full.iter().skip(1).map(|r| r[1..].to_vec()).collect();
    Ok(GoeritzData {
        basepoint: whites[0],
        white_faces: whites[1..].to_vec(),
        full,
        matrix: SymmetricMatrix::new(&reduced).expect("Goeritz matrices are symmetric"),
        type2_correction: mu,
        crossing_types,
    })
}

fn serialize_det<S: Serializer>(det: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    match u64::try_from(det) {
        Ok(v) => s.serialize_u64(v),
        Err(_) => s.serialize_str(&det.to_string()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignatureReport {
    pub sigma: i64,
    pub nullity: usize,
    #[serde(rename = "det", serialize_with = "serialize_det")]
    pub determinant: BigUint,
    pub w: i64,
    pub d: i64,
    pub traczyk_sigma: Option<i64>,
    pub agreement: bool,
}

/// Signature data of a connected diagram from the Gordon–Litherland form of
/// the given coloring.
pub fn gl_signature_with(d: &LinkDiagram, col: &CheckerboardColoring) -> Result<SignatureReport, InvariantError> {
    let g = goeritz(d, col)?;
    let diag = diagonalize(&g.matrix);
    Ok(SignatureReport {
        sigma: diag.inertia.signature() - g.type2_correction,
        nullity: diag.inertia.zero,
        determinant: diag.determinant.magnitude().clone(),
        w: d.writhe(),
        d: tree_d(d)?,
        traczyk_sigma: None,
        agreement: false,
    })
}

fn tree_d(d: &LinkDiagram) -> Result<i64, InvariantError> {
    let circles = seifert_circles(d);
    let g = graph_from_circles(d, &circles)?;
    Ok(tree_stats(&g)?.d)
}

/// σ, nullity and determinant of a connected diagram.
pub fn gl_signature(d: &LinkDiagram) -> Result<SignatureReport, InvariantError> {
    d.require_connected()?;
    if d.crossing_count() == 0 {
        return Ok(SignatureReport {
            sigma: 0,
            nullity: 0,
            determinant: BigUint::from(1u32),
            w: 0,
            d: 0,
            traczyk_sigma: None,
            agreement: false,
        });
    }
    gl_signature_with(d, &checkerboard(d)?)
}

/// Signature data of any valid diagram: computed per connected component,
/// with σ and d summed and one extra nullity per additional split component.
pub fn link_signature(d: &LinkDiagram) -> Result<SignatureReport, InvariantError> {
    let parts = d.connected_components();
    if parts.is_empty() {
        return Err(DiagramError::DisconnectedInput { components: 0 }.into());
    }
    let mut total = SignatureReport {
        sigma: 0,
        nullity: parts.len() - 1,
        determinant: BigUint::from(1u32),
        w: 0,
        d: 0,
        traczyk_sigma: None,
        agreement: false,
    };
    for p in &parts {
        let r = gl_signature(p)?;
        total.sigma += r.sigma;
        total.nullity += r.nullity;
        total.determinant *= r.determinant;
        total.w += r.w;
        total.d += r.d;
    }
    if parts.len() > 1 {
        total.determinant = BigUint::from(0u32);
    }
    Ok(total)
}

/// `(d(D) − w(D), 0)` for a connected reduced alternating diagram.
pub fn traczyk_signature(d: &LinkDiagram) -> Result<(i64, usize), InvariantError> {
    if !d.is_connected() {
        return Err(InvariantError::HypothesisViolated(Hypothesis::Connected));
    }
    if !d.is_alternating() {
        return Err(InvariantError::HypothesisViolated(Hypothesis::Alternating));
    }
    let circles = seifert_circles(d);
    let g = graph_from_circles(d, &circles)?;
    if !is_reduced(&g)? {
        return Err(InvariantError::HypothesisViolated(Hypothesis::Reduced));
    }
    Ok((tree_stats(&g)?.d - d.writhe(), 0))
}

/// Both routes side by side.
pub fn verify_traczyk(d: &LinkDiagram) -> Result<SignatureReport, InvariantError> {
    let (ts, _) = traczyk_signature(d)?;
    let mut r = gl_signature(d)?;
    r.agreement = r.sigma == ts && r.nullity == 0;
    r.traczyk_sigma = Some(ts);
    Ok(r)
}

/// |det| as a plain integer, for callers comparing against tables.
pub fn determinant(d: &LinkDiagram) -> Result<BigInt, InvariantError> {
    Ok(BigInt::from(link_signature(d)?.determinant))
}
