//! Standard alternating diagrams of two-bridge links from continued fractions.
//!
//! The rational tangle is grown twist region by twist region, alternately
//! adding horizontal and vertical twists, then closed so that the
//! determinant is the numerator of `a₁ + 1/(a₂ + 1/(… + 1/aₘ))`. Over/under
//! information is assigned afterwards so that the diagram alternates.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::diagram::{DiagramError, LinkDiagram, Port, Shadow};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TwoBridgeError {
    #[error("continued fraction needs at least one term")]
    Empty,
    #[error("continued fraction terms must be positive, got {0}")]
    InvalidTerms(i64),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ContinuedFraction {
    terms: Vec<u32>,
}

impl ContinuedFraction {
    pub fn new(terms: &[i64]) -> Result<Self, TwoBridgeError> {
        if terms.is_empty() {
            return Err(TwoBridgeError::Empty);
        }
        if let Some(&bad) = terms.iter().find(|&&t| t < 1 || t > u32::MAX as i64) {
            return Err(TwoBridgeError::InvalidTerms(bad));
        }
        Ok(ContinuedFraction { terms: terms.iter().map(|&t| t as u32).collect() })
    }

    pub fn terms(&self) -> &[u32] {
        &self.terms
    }

    pub fn crossing_count(&self) -> usize {
        self.terms.iter().map(|&t| t as usize).sum()
    }

    /// `(p, q)` with `p/q = a₁ + 1/(a₂ + …)` in lowest terms.
    pub fn fraction(&self) -> (BigUint, BigUint) {
        let (mut p, mut q) = (BigUint::one(), BigUint::zero());
        for &a in self.terms.iter().rev() {
            let next = BigUint::from(a) * &p + &q;
            q = p;
            p = next;
        }
        (p, q)
    }

    pub fn numerator(&self) -> BigUint {
        self.fraction().0
    }

    /// All term lists with every term ≥ 1 and sum `total`.
    pub fn compositions(total: usize) -> Vec<ContinuedFraction> {
        fn rec(left: usize, acc: &mut Vec<i64>, out: &mut Vec<ContinuedFraction>) {
            if left == 0 {
                out.push(ContinuedFraction::new(acc).expect("positive terms"));
                return;
            }
            for t in 1..=left {
                acc.push(t as i64);
                rec(left - t, acc, out);
                acc.pop();
            }
        }
        let mut out = Vec::new();
        if total > 0 {
            rec(total, &mut Vec::new(), &mut out);
        }
        out
    }
}

impl std::fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let t: Vec<String> = self.terms.iter().map(|t| t.to_string()).collect();
        write!(f, "[{}]", t.join(","))
    }
}

/// Picks the mirror image in which `[n]` closes up to a positive diagram.
const POLARITY: bool = false;

pub fn two_bridge(cf: &ContinuedFraction) -> Result<LinkDiagram, TwoBridgeError> {
    let mut s = Shadow::new();
    let first = s.add_crossing();
    // tangle ends: NW, NE, SW, SE; crossing ports run SW, SE, NE, NW
    let (nw, mut ne, mut sw, mut se) =
        (Port::new(first, 3), Port::new(first, 2), Port::new(first, 0), Port::new(first, 1));
    for (g, &a) in cf.terms.iter().enumerate() {
        let extra = if g == 0 { a - 1 } else { a };
        for _ in 0..extra {
            let y = s.add_crossing();
            if g % 2 == 0 {
                s.connect(ne, Port::new(y, 3));
                s.connect(se, Port::new(y, 0));
                ne = Port::new(y, 2);
                se = Port::new(y, 1);
            } else {
                s.connect(sw, Port::new(y, 3));
                s.connect(se, Port::new(y, 2));
                sw = Port::new(y, 0);
                se = Port::new(y, 1);
            }
        }
    }
    if cf.terms.len() % 2 == 1 {
        s.connect(nw, ne);
        s.connect(sw, se);
    } else {
        s.connect(nw, sw);
        s.connect(ne, se);
    }
    Ok(s.to_alternating(POLARITY)?.with_name(format!("two_bridge{cf}")))
}
