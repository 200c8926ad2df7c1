//! Braid words, (strongly) quasipositive factorizations and braid closures.
//!
//! Letter `k > 0` stands for the generator σ_k and `-k` for its inverse.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::diagram::{ArcId, Crossing, DiagramError, LinkDiagram, OverIn};

/// Largest accepted strand count. Untouched strands close to free loops, and
/// each free loop is its own split component.
pub const MAX_STRANDS: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BraidError {
    #[error("a braid needs at least one strand")]
    NoStrands,
    #[error("{0} strands exceeds the supported maximum")]
    TooManyStrands(usize),
    #[error("letter {letter} is not a generator of the {strands}-strand braid group")]
    LetterOutOfRange { letter: i32, strands: usize },
    #[error("generator index {index} out of range for {strands} strands")]
    IndexOutOfRange { index: usize, strands: usize },
    #[error("band ({k},{j}) needs 1 <= j <= k < {strands}")]
    BandIndexInvalid { k: usize, j: usize, strands: usize },
    #[error("malformed braid text: {0}")]
    Malformed(String),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("braiding did not terminate after {moves} moves on a {crossings}-crossing diagram")]
    NonTermination { moves: usize, crossings: usize },
    #[error("braided diagram could not be read as a closed braid: {0}")]
    NotBraided(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self, BraidError> {
        if strands == 0 {
            return Err(BraidError::NoStrands);
        }
        if strands > MAX_STRANDS {
            return Err(BraidError::TooManyStrands(strands));
        }
        if let Some(&bad) = letters.iter().find(|&&l| l == 0 || l.unsigned_abs() as usize >= strands) {
            return Err(BraidError::LetterOutOfRange { letter: bad, strands });
        }
        Ok(BraidWord { strands, letters })
    }

    /// Smallest strand count that fits the letters.
    pub fn from_letters(letters: Vec<i32>) -> Result<Self, BraidError> {
        let strands = letters.iter().map(|l| l.unsigned_abs() as usize + 1).max().unwrap_or(1);
        BraidWord::new(strands, letters)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|&l| l.signum() as i64).sum()
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord { strands: self.strands, letters: self.letters.iter().rev().map(|l| -l).collect() }
    }

    /// Cancels adjacent `x, -x` pairs until none remain.
    pub fn free_reduce(&self) -> BraidWord {
        let mut out: Vec<i32> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        BraidWord { strands: self.strands, letters: out }
    }

    /// Header-plus-letters text form: `strands: n` then signed integers.
    pub fn to_text(&self) -> String {
        let letters: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        format!("strands: {}\n{}\n", self.strands, letters.join(" "))
    }

    /// Parses the text form written by [`to_text`](Self::to_text).
    pub fn parse_text(text: &str) -> Result<Self, BraidError> {
        let mut lines = text.lines().map(|l| l.split('#').next().unwrap().trim()).filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| BraidError::Malformed("missing `strands:` header".into()))?;
        let n = header
            .strip_prefix("strands:")
            .ok_or_else(|| BraidError::Malformed(format!("expected `strands: n`, got {header:?}")))?
            .trim()
            .parse::<usize>()
            .map_err(|e| BraidError::Malformed(format!("strand count: {e}")))?;
        let mut letters = Vec::new();
        for tok in lines.flat_map(str::split_whitespace) {
            letters.push(tok.parse::<i32>().map_err(|e| BraidError::Malformed(format!("letter {tok:?}: {e}")))?);
        }
        BraidWord::new(n, letters)
    }

    /// Parses a bracketed list such as `[1,-2,1,-2]` or `{1,1,1}`. Without
    /// an explicit strand count the smallest fitting one is used.
    pub fn parse_list(text: &str, strands: Option<usize>) -> Result<Self, BraidError> {
        let t = text.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .or_else(|| t.strip_prefix('{').and_then(|s| s.strip_suffix('}')))
            .ok_or_else(|| BraidError::Malformed(format!("expected a bracketed list, got {t:?}")))?;
        let letters = inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<i32>().map_err(|e| BraidError::Malformed(format!("letter {s:?}: {e}"))))
            .collect::<Result<Vec<_>, _>>()?;
        match strands {
            Some(n) => BraidWord::new(n, letters),
            None => BraidWord::from_letters(letters),
        }
    }

    /// Diagram of the braid closure. Crossing signs equal letter signs,
    /// Seifert circles are the strands, and strands no letter touches become
    /// free loops.
    pub fn closure(&self) -> LinkDiagram {
        // strands beyond the highest letter are untouched
        let n = self.letters.iter().map(|l| l.unsigned_abs() as usize + 1).max().unwrap_or(0);
        let mut cur: Vec<u32> = (1..=n as u32).collect();
        let mut next = n as u32 + 1;
        let mut crossings = Vec::with_capacity(self.letters.len());
        for (t, &l) in self.letters.iter().enumerate() {
            let i = l.unsigned_abs() as usize - 1;
            let (p, q) = (cur[i], cur[i + 1]);
            // p continues as u at position i+1, q continues as v at position i
            let (u, v) = (next, next + 1);
            next += 2;
            let (slots, over_in) = if l > 0 { ([q, u, v, p], OverIn::Slot3) } else { ([p, q, u, v], OverIn::Slot1) };
            crossings.push(Crossing::new(slots.map(ArcId), over_in, t));
            cur[i] = v;
            cur[i + 1] = u;
        }
        let mut free_loops = self.strands - n;
        let mut close = std::collections::HashMap::new();
        for (j, &last) in cur.iter().enumerate() {
            if last == j as u32 + 1 {
                free_loops += 1;
            } else {
                close.insert(last, j as u32 + 1);
            }
        }
        let crossings: Vec<Crossing> = crossings
            .into_iter()
            .map(|c| {
                let slots = c.slots().map(|a| ArcId(*close.get(&a.0).unwrap_or(&a.0)));
                Crossing::new(slots, c.over_in(), c.index())
            })
            .collect();
        LinkDiagram::new(crossings, free_loops)
            .expect("braid closures are valid planar diagrams")
            .relabel_canonical()
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letters: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        write!(f, "[{}] on {} strands", letters.join(","), self.strands)
    }
}

/// Closure of `word` as a diagram.
pub fn closure_to_diagram(word: &BraidWord) -> LinkDiagram {
    word.closure()
}

/// One factor `w σ_j w⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QpFactor {
    pub conjugator: Vec<i32>,
    pub generator: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QpFactorization {
    pub strands: usize,
    pub factors: Vec<QpFactor>,
}

impl QpFactorization {
    /// Concatenation of the blocks `w σ_j w⁻¹`, unreduced.
    pub fn expand(&self) -> Result<BraidWord, BraidError> {
        let n = self.strands;
        let mut letters = Vec::new();
        for f in &self.factors {
            if f.generator == 0 || f.generator >= n {
                return Err(BraidError::IndexOutOfRange { index: f.generator, strands: n });
            }
            letters.extend_from_slice(&f.conjugator);
            letters.push(f.generator as i32);
            letters.extend(f.conjugator.iter().rev().map(|l| -l));
        }
        BraidWord::new(n, letters)
    }
}

pub fn expand_qp(f: &QpFactorization) -> Result<BraidWord, BraidError> {
    f.expand()
}

/// Band generators `(k, j)`, each standing for τ_{k,j} σ_j τ_{k,j}⁻¹ with
/// τ_{k,j} = σ_k σ_{k-1} ... σ_j.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SqpFactorization {
    pub strands: usize,
    pub bands: Vec<(usize, usize)>,
}

impl SqpFactorization {
    pub fn expand(&self) -> Result<BraidWord, BraidError> {
        let n = self.strands;
        let mut letters = Vec::new();
        for &(k, j) in &self.bands {
            if j == 0 || j > k || k >= n {
                return Err(BraidError::BandIndexInvalid { k, j, strands: n });
            }
            let tau: Vec<i32> = (j..=k).rev().map(|i| i as i32).collect();
            letters.extend_from_slice(&tau);
            letters.push(j as i32);
            letters.extend(tau.iter().rev().map(|l| -l));
        }
        BraidWord::new(n, letters)
    }

    /// The same braid as a quasipositive factorization with conjugator τ_{k,j}.
    pub fn to_qp(&self) -> QpFactorization {
        QpFactorization {
            strands: self.strands,
            factors: self
                .bands
                .iter()
                .map(|&(k, j)| QpFactor { conjugator: (j..=k).rev().map(|i| i as i32).collect(), generator: j })
                .collect(),
        }
    }
}

pub fn expand_sqp(f: &SqpFactorization) -> Result<BraidWord, BraidError> {
    f.expand()
}

/// Seeded random quasipositive factorization: `factors` blocks, each with a
/// uniform generator and a conjugator of uniform length in `0..=max_conj`.
pub fn random_qp(strands: usize, factors: usize, max_conj: usize, seed: u64) -> Result<QpFactorization, BraidError> {
    if strands < 2 {
        return Err(BraidError::IndexOutOfRange { index: 1, strands });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = strands as i32 - 1;
    let factors = (0..factors)
        .map(|_| {
            let len = rng.gen_range(0..=max_conj);
            let conjugator = (0..len)
                .map(|_| {
                    let k = rng.gen_range(1..=g);
                    if rng.gen_bool(0.5) {
                        k
                    } else {
                        -k
                    }
                })
                .collect();
            QpFactor { conjugator, generator: rng.gen_range(1..strands) }
        })
        .collect();
    Ok(QpFactorization { strands, factors })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponent_sums() {
        assert_eq!(BraidWord::new(2, vec![1, 1, 1]).unwrap().exponent_sum(), 3);
        assert_eq!(BraidWord::new(3, vec![1, -2, 1, -2]).unwrap().exponent_sum(), 0);
        assert_eq!(BraidWord::new(4, vec![]).unwrap().exponent_sum(), 0);
    }

    #[test]
    fn letters_must_fit() {
        assert!(matches!(BraidWord::new(2, vec![2]), Err(BraidError::LetterOutOfRange { .. })));
        assert!(matches!(BraidWord::new(3, vec![0]), Err(BraidError::LetterOutOfRange { .. })));
        assert!(matches!(BraidWord::new(0, vec![]), Err(BraidError::NoStrands)));
        assert!(matches!(BraidWord::new(MAX_STRANDS + 1, vec![]), Err(BraidError::TooManyStrands(_))));
        // untouched strands are free loops, without allocating per strand
        let d = BraidWord::new(MAX_STRANDS, vec![1, 1]).unwrap().closure();
        assert_eq!(d.free_loops(), MAX_STRANDS - 2);
    }

    #[test]
    fn qp_expansion() {
        let one = QpFactorization { strands: 2, factors: vec![QpFactor { conjugator: vec![], generator: 1 }] };
        assert_eq!(one.expand().unwrap().letters(), &[1]);
        let three = QpFactorization { strands: 2, factors: vec![QpFactor { conjugator: vec![], generator: 1 }; 3] };
        assert_eq!(three.expand().unwrap().letters(), &[1, 1, 1]);
        let conj = QpFactorization { strands: 3, factors: vec![QpFactor { conjugator: vec![2], generator: 1 }] };
        let w = conj.expand().unwrap();
        assert_eq!(w.letters(), &[2, 1, -2]);
        assert_eq!(w.exponent_sum(), 1);
        let bad = QpFactorization { strands: 3, factors: vec![QpFactor { conjugator: vec![], generator: 3 }] };
        assert!(matches!(bad.expand(), Err(BraidError::IndexOutOfRange { .. })));
    }

    #[test]
    fn sqp_expansion() {
        let b = SqpFactorization { strands: 2, bands: vec![(1, 1)] };
        assert_eq!(b.expand().unwrap().letters(), &[1, 1, -1]);
        let b = SqpFactorization { strands: 3, bands: vec![(2, 1)] };
        assert_eq!(b.expand().unwrap().letters(), &[2, 1, 1, -1, -2]);
        let b = SqpFactorization { strands: 3, bands: vec![(1, 2)] };
        assert!(matches!(b.expand(), Err(BraidError::BandIndexInvalid { .. })));
        let b = SqpFactorization { strands: 4, bands: vec![(3, 1), (2, 2)] };
        assert_eq!(b.to_qp().expand().unwrap(), b.expand().unwrap());
    }

    #[test]
    fn random_qp_is_seeded() {
        let a = random_qp(3, 4, 2, 7).unwrap();
        assert_eq!(a.factors.len(), 4);
        assert_eq!(a.expand().unwrap().exponent_sum(), 4);
        assert_eq!(a, random_qp(3, 4, 2, 7).unwrap());
        let empty = random_qp(2, 0, 0, 1).unwrap();
        assert!(empty.factors.is_empty());
        let d = empty.expand().unwrap().closure();
        assert_eq!(d.crossing_count(), 0);
        assert_eq!(d.free_loops(), 2);
    }

    #[test]
    fn text_formats() {
        let w = BraidWord::new(3, vec![1, -2, 1, -2]).unwrap();
        assert_eq!(BraidWord::parse_text(&w.to_text()).unwrap(), w);
        assert_eq!(BraidWord::parse_list("[1,-2,1,-2]", None).unwrap(), w);
        assert_eq!(BraidWord::parse_list("{1, -2, 1, -2}", Some(3)).unwrap(), w);
        assert_eq!(BraidWord::parse_list("[]", None).unwrap(), BraidWord::new(1, vec![]).unwrap());
        assert!(BraidWord::parse_text("1 2 3").is_err());
        assert!(BraidWord::parse_text("strands: 2\n1 x").is_err());
    }

    #[test]
    fn free_reduction() {
        let w = BraidWord::new(3, vec![2, 1, -1, -2, 1]).unwrap();
        assert_eq!(w.free_reduce().letters(), &[1]);
    }

    #[test]
    fn trefoil_closure() {
        let d = BraidWord::new(2, vec![1, 1, 1]).unwrap().closure();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.writhe(), 3);
        assert!(d.is_connected());
        assert!(d.is_alternating());
        assert!(d.is_positive());
        assert_eq!(d.link_component_count(), 1);
    }

    #[test]
    fn unknot_closure() {
        let d = BraidWord::new(1, vec![]).unwrap().closure();
        assert_eq!(d, LinkDiagram::unlink(1));
    }

    #[test]
    fn mixed_word_is_not_alternating() {
        let d = BraidWord::new(2, vec![1, 1, -1]).unwrap().closure();
        assert!(!d.is_alternating());
        let fig8 = BraidWord::new(3, vec![1, -2, 1, -2]).unwrap().closure();
        assert!(fig8.is_alternating());
        assert_eq!(fig8.writhe(), 0);
    }
}
