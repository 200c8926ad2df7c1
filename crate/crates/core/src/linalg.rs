//! Exact inertia and determinant of symmetric integer matrices by congruence
//! diagonalization over the rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("matrix is not square")]
    NotSquare,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricMatrix {
    n: usize,
    entries: Vec<BigInt>,
}

impl SymmetricMatrix {
    pub fn new(rows: &[Vec<i64>]) -> Result<Self, LinalgError> {
        Self::from_bigint(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    pub fn from_bigint(rows: Vec<Vec<BigInt>>) -> Result<Self, LinalgError> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(LinalgError::NotSquare);
        }
        for i in 0..n {
            for j in 0..i {
                if rows[i][j] != rows[j][i] {
                    return Err(LinalgError::NotSymmetric { row: i, col: j });
                }
            }
        }
        Ok(SymmetricMatrix { n, entries: rows.into_iter().flatten().collect() })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        self.entries.chunks(self.n.max(1)).take(self.n).map(|r| r.to_vec()).collect()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Inertia {
    pub fn signature(&self) -> i64 {
        self.positive as i64 - self.negative as i64
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagonalization {
    pub inertia: Inertia,
    pub determinant: BigInt,
}

/// Congruence diagonalization. Zero diagonals are repaired with the
/// unimodular step `e_i -> e_i + e_j` whenever an off-diagonal entry is
/// nonzero, so the determinant is the product of the pivots.
pub fn diagonalize(m: &SymmetricMatrix) -> Diagonalization {
    let n = m.n;
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| BigRational::from_integer(m.get(i, j).clone())).collect())
        .collect();
    let mut live: Vec<usize> = (0..n).collect();
    let mut inertia = Inertia::default();
    let mut det = BigRational::one();
    while !live.is_empty() {
        let pivot = match live.iter().copied().find(|&i| !a[i][i].is_zero()) {
            Some(i) => i,
            None => {
                let pair = live
                    .iter()
                    .flat_map(|&i| live.iter().map(move |&j| (i, j)))
                    .find(|&(i, j)| i != j && !a[i][j].is_zero());
                match pair {
                    None => {
                        inertia.zero += live.len();
                        det = BigRational::zero();
                        break;
                    }
                    Some((i, j)) => {
                        for &k in &live {
                            let v = a[j][k].clone();
                            a[i][k] += v;
                        }
                        for &k in &live {
                            let v = a[k][j].clone();
                            a[k][i] += v;
                        }
                        i
                    }
                }
            }
        };
        let p = a[pivot][pivot].clone();
        if p.is_positive() {
            inertia.positive += 1;
        } else {
            inertia.negative += 1;
        }
        det *= &p;
        live.retain(|&i| i != pivot);
        let col: Vec<BigRational> = live.iter().map(|&r| &a[r][pivot] / &p).collect();
        for (x, &r) in live.iter().enumerate() {
            if col[x].is_zero() {
                continue;
            }
            for &c in &live {
                let v = &col[x] * &a[pivot][c];
                a[r][c] -= v;
            }
        }
    }
    debug_assert!(det.is_integer());
    Diagonalization { inertia, determinant: det.to_integer() }
}

/// `(signature, nullity)` of a symmetric integer matrix.
pub fn symmetric_signature(m: &SymmetricMatrix) -> (i64, usize) {
    let d = diagonalize(m);
    (d.inertia.signature(), d.inertia.zero)
}
