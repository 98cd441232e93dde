//! Integer distance matrices and the exact realizability oracle.
//!
//! A distance matrix abstracts a point set in any dimension. Realizability
//! and the spanned dimension are decided exactly over the rationals: form
//! the Gram matrix `G[i][j] = (d(b,i)^2 + d(b,j)^2 - d(i,j)^2) / 2` relative
//! to a base point, then read off rank and positive semidefiniteness by
//! symmetric elimination. The matrix is realizable in exactly `m`
//! dimensions iff `G` is PSD of rank `m`.

mod document;

pub use document::{parse_dm_document, DmDocument, DM_FORMAT};

use serde::Serialize;

use crate::exactnum::Rational;
use crate::geometry::{self, GeometryError, PlanarPointSet};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatrixError {
    #[error("matrix must have at least 2 points, got {0}")]
    TooSmall(usize),
    #[error("entries are not an {0}x{0} square")]
    NotSquare(usize),
    #[error("matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("diagonal entry at {0} must be zero")]
    NonzeroDiagonal(usize),
    #[error("off-diagonal entry at ({0}, {1}) must be >= 1")]
    ZeroOffDiagonal(usize, usize),
    #[error("base index {0} out of range")]
    BadBase(usize),
    #[error("entry overflow during dilation")]
    DilationOverflow,
    #[error("dilation factor must be >= 1")]
    BadDilation,
    #[error("source set is not integral")]
    SourceNotIntegral,
    #[error("document parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Symmetric matrix of integer distances with zero diagonal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DistanceMatrix {
    n: usize,
    entries: Vec<u64>, // row-major n*n
}

impl DistanceMatrix {
    pub fn new(n: usize, entries: Vec<u64>) -> Result<Self, MatrixError> {
        if n < 2 {
            return Err(MatrixError::TooSmall(n));
        }
        if entries.len() != n * n {
            return Err(MatrixError::NotSquare(n));
        }
        for i in 0..n {
            if entries[i * n + i] != 0 {
                return Err(MatrixError::NonzeroDiagonal(i));
            }
            for j in i + 1..n {
                if entries[i * n + j] != entries[j * n + i] {
                    return Err(MatrixError::NotSymmetric(i, j));
                }
                if entries[i * n + j] == 0 {
                    return Err(MatrixError::ZeroOffDiagonal(i, j));
                }
            }
        }
        Ok(DistanceMatrix { n, entries })
    }

    /// Builds from the upper triangle listed row by row.
    pub fn from_upper(n: usize, upper: &[u64]) -> Result<Self, MatrixError> {
        let mut entries = vec![0u64; n * n];
        let mut it = upper.iter();
        for i in 0..n {
            for j in i + 1..n {
                let d = *it.next().ok_or(MatrixError::NotSquare(n))?;
                entries[i * n + j] = d;
                entries[j * n + i] = d;
            }
        }
        if it.next().is_some() {
            return Err(MatrixError::NotSquare(n));
        }
        DistanceMatrix::new(n, entries)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        (0..self.n)
            .map(|i| self.entries[i * self.n..(i + 1) * self.n].to_vec())
            .collect()
    }

    /// Sorted multiset of the off-diagonal distances.
    pub fn distance_multiset(&self) -> Vec<u64> {
        let mut v = Vec::with_capacity(self.n * (self.n - 1) / 2);
        for i in 0..self.n {
            for j in i + 1..self.n {
                v.push(self.get(i, j));
            }
        }
        v.sort_unstable();
        v
    }

    pub fn diameter(&self) -> u64 {
        *self.distance_multiset().last().expect("n >= 2")
    }

    pub fn min_distance(&self) -> u64 {
        self.distance_multiset()[0]
    }

    /// Greatest common divisor of all distances; 1 means the set is prime.
    pub fn distance_gcd(&self) -> u64 {
        let mut g = 0u64;
        for i in 0..self.n {
            for j in i + 1..self.n {
                g = gcd(g, self.get(i, j));
            }
        }
        g
    }

    /// Scales every entry by `p >= 1`.
    pub fn dilate(&self, p: u64) -> Result<Self, MatrixError> {
        if p < 1 {
            return Err(MatrixError::BadDilation);
        }
        let entries = self
            .entries
            .iter()
            .map(|&e| e.checked_mul(p).ok_or(MatrixError::DilationOverflow))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(DistanceMatrix {
            n: self.n,
            entries,
        })
    }

    /// Canonical form under simultaneous row/column permutations: the
    /// lexicographically smallest flattened matrix. Exponential in n; meant
    /// for the small matrices of the search module.
    pub fn canonical_form(&self) -> DistanceMatrix {
        let mut perm: Vec<usize> = (0..self.n).collect();
        let mut best: Option<Vec<u64>> = None;
        permute_all(&mut perm, 0, &mut |p| {
            let flat: Vec<u64> = (0..self.n)
                .flat_map(|i| (0..self.n).map(move |j| (i, j)))
                .map(|(i, j)| self.get(p[i], p[j]))
                .collect();
            match &best {
                Some(b) if *b <= flat => {}
                _ => best = Some(flat),
            }
        });
        DistanceMatrix {
            n: self.n,
            entries: best.expect("n >= 2"),
        }
    }
}

fn permute_all(perm: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == perm.len() {
        visit(perm);
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permute_all(perm, k + 1, visit);
        perm.swap(k, i);
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Exact distance matrix of an integral planar set.
pub fn from_points(s: &PlanarPointSet) -> Result<DistanceMatrix, MatrixError> {
    let report = geometry::verify_integral_set(s)?;
    if !report.is_integral {
        return Err(MatrixError::SourceNotIntegral);
    }
    let n = s.len();
    let mut entries = vec![0u64; n * n];
    for i in 0..n {
        for j in i + 1..n {
            let d = geometry::exact_distance(&s.points()[i], &s.points()[j], s.radicand())?
                .expect("verified integral");
            entries[i * n + j] = d;
            entries[j * n + i] = d;
        }
    }
    Ok(DistanceMatrix { n, entries })
}

/// Gram matrix relative to `base`:
/// `G[i][j] = (d(base,i)^2 + d(base,j)^2 - d(i,j)^2) / 2` over the other
/// points, an (n-1)x(n-1) rational symmetric matrix.
pub fn gram(dm: &DistanceMatrix, base: usize) -> Result<Vec<Vec<Rational>>, MatrixError> {
    if base >= dm.n {
        return Err(MatrixError::BadBase(base));
    }
    let others: Vec<usize> = (0..dm.n).filter(|&i| i != base).collect();
    let sq = |x: u64| Rational::from(x).square();
    let half = Rational::ratio(1, 2);
    let mut g = vec![vec![Rational::zero(); others.len()]; others.len()];
    for (gi, &i) in others.iter().enumerate() {
        for (gj, &j) in others.iter().enumerate() {
            let v = (sq(dm.get(base, i)) + sq(dm.get(base, j)) - sq(dm.get(i, j))) * &half;
            g[gi][gj] = v;
        }
    }
    Ok(g)
}

/// Exact rank and positive semidefiniteness of a symmetric rational matrix.
///
/// Symmetric elimination pivots on the largest remaining diagonal entry; a
/// PSD matrix consumes itself with nonnegative pivots (a zero diagonal
/// forces a zero row). When PSD fails, plain Gaussian elimination finishes
/// the rank computation on the Schur complement.
pub fn rank_psd(g: &[Vec<Rational>]) -> (usize, bool) {
    let n = g.len();
    let mut m: Vec<Vec<Rational>> = g.to_vec();
    debug_assert!(m.iter().all(|row| row.len() == n));
    let mut rank = 0;
    let mut start = 0;

    // Phase 1: symmetric elimination with positive diagonal pivots.
    let psd = loop {
        if start == n {
            break true;
        }
        // Largest diagonal entry among the remaining block.
        let mut pivot = start;
        for i in start + 1..n {
            if m[i][i] > m[pivot][pivot] {
                pivot = i;
            }
        }
        if m[pivot][pivot].is_negative() {
            break false;
        }
        if m[pivot][pivot].is_zero() {
            // All remaining diagonals are <= 0, hence exactly 0. PSD iff the
            // whole block vanishes.
            let block_zero = (start..n).all(|i| (start..n).all(|j| m[i][j].is_zero()));
            break block_zero;
        }
        m.swap(start, pivot);
        for row in m.iter_mut() {
            row.swap(start, pivot);
        }
        rank += 1;
        let d = m[start][start].clone();
        for i in start + 1..n {
            if m[i][start].is_zero() {
                continue;
            }
            let f = &m[i][start] / &d;
            for j in start..n {
                let delta = &f * &m[start][j];
                m[i][j] = &m[i][j] - &delta;
            }
        }
        start += 1;
    };

    if !psd {
        // Phase 2: generic elimination of the remaining block for the rank.
        let mut row = start;
        for col in start..n {
            let Some(p) = (row..n).find(|&i| !m[i][col].is_zero()) else {
                continue;
            };
            m.swap(row, p);
            rank += 1;
            let d = m[row][col].clone();
            for i in row + 1..n {
                if m[i][col].is_zero() {
                    continue;
                }
                let f = &m[i][col] / &d;
                for j in col..n {
                    let delta = &f * &m[row][j];
                    m[i][j] = &m[i][j] - &delta;
                }
            }
            row += 1;
            if row == n {
                break;
            }
        }
    }

    (rank, psd)
}

/// Realizability verdict: PSD plus rank decide the exact spanned dimension.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RealizabilityVerdict {
    pub gram_rank: usize,
    pub psd: bool,
    /// Present iff realizable; equals the Gram rank.
    pub dimension: Option<usize>,
    /// The `m` for which the matrix represents a set spanning exactly `m`
    /// dimensions; equal to `dimension`.
    pub full_dim_in: Option<usize>,
}

/// Decides whether `dm` is realized by a Euclidean point set and, if so,
/// in how many dimensions it spans.
pub fn realizable_dim(dm: &DistanceMatrix) -> RealizabilityVerdict {
    let g = gram(dm, 0).expect("base 0 valid");
    let (gram_rank, psd) = rank_psd(&g);
    let dimension = psd.then_some(gram_rank);
    RealizabilityVerdict {
        gram_rank,
        psd,
        dimension,
        full_dim_in: dimension,
    }
}
