//! Exact sparse matrices over Q with fraction-free (Bareiss) elimination.
//!
//! Rows are cleared to integers before elimination; row scaling does not
//! change the row space, so rank and kernel are those of the rational matrix.
//! Pivots are chosen deterministically: the nonzero candidate of smallest
//! absolute value, ties broken by row index.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatrixError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("vector length {got} does not match {expected} columns")]
    Length { expected: usize, got: usize },
}

/// Row-major sparse matrix; each row holds `(column, nonzero value)` sorted by column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    cols: usize,
    rows: Vec<Vec<(usize, BigRational)>>,
}

impl SparseMatrix {
    pub fn new(cols: usize) -> Self {
        SparseMatrix { cols, rows: Vec::new() }
    }

    pub fn push_row(&mut self, mut entries: Vec<(usize, BigRational)>) {
        entries.retain(|(_, v)| !v.is_zero());
        entries.sort_by_key(|(c, _)| *c);
        assert!(entries.iter().all(|(c, _)| *c < self.cols), "column index out of range");
        assert!(entries.windows(2).all(|w| w[0].0 != w[1].0), "duplicate column in row");
        self.rows.push(entries);
    }

    /// Builds a matrix from dense rows.
    pub fn from_dense(cols: usize, dense: &[Vec<BigRational>]) -> Self {
        let mut m = SparseMatrix::new(cols);
        for r in dense {
            assert_eq!(r.len(), cols);
            m.push_row(r.iter().cloned().enumerate().collect());
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[(usize, BigRational)] {
        &self.rows[i]
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn get(&self, r: usize, c: usize) -> BigRational {
        self.rows[r].iter().find(|(j, _)| *j == c).map_or_else(BigRational::zero, |(_, v)| v.clone())
    }

    pub fn column(&self, c: usize) -> Vec<BigRational> {
        (0..self.nrows()).map(|r| self.get(r, c)).collect()
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Result<Vec<BigRational>, MatrixError> {
        if v.len() != self.cols {
            return Err(MatrixError::Length { expected: self.cols, got: v.len() });
        }
        Ok(self.rows.iter().map(|row| row.iter().map(|(c, a)| a * &v[*c]).sum()).collect())
    }

    /// Keeps the listed rows in the given order.
    pub fn select_rows(&self, idx: &[usize]) -> Self {
        SparseMatrix { cols: self.cols, rows: idx.iter().map(|&i| self.rows[i].clone()).collect() }
    }

    /// Permutes columns: new column `k` is old column `perm[k]`.
    pub fn permute_columns(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.cols);
        let mut inv = vec![0; self.cols];
        for (k, &old) in perm.iter().enumerate() {
            inv[old] = k;
        }
        let mut m = SparseMatrix::new(self.cols);
        for row in &self.rows {
            m.push_row(row.iter().map(|(c, v)| (inv[*c], v.clone())).collect());
        }
        m
    }

    /// Triplet text: a `rows cols` header, then `row col num/den` per entry, 0-based.
    pub fn to_triplets(&self) -> String {
        let mut s = format!("{} {}\n", self.nrows(), self.cols);
        for (r, row) in self.rows.iter().enumerate() {
            for (c, v) in row {
                writeln!(s, "{r} {c} {}/{}", v.numer(), v.denom()).expect("write to string");
            }
        }
        s
    }

    pub fn from_triplets(text: &str) -> Result<Self, MatrixError> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (hl, header) = lines.next().ok_or(MatrixError::Parse { line: 1, message: "missing header".into() })?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| MatrixError::Parse { line: hl + 1, message: format!("bad dimension `{t}`") }))
            .collect::<Result<_, _>>()?;
        let [nr, nc] = dims[..] else {
            return Err(MatrixError::Parse { line: hl + 1, message: "header must be `rows cols`".into() });
        };
        let mut rows: Vec<Vec<(usize, BigRational)>> = vec![Vec::new(); nr];
        for (ln, line) in lines {
            let bad = |m: &str| MatrixError::Parse { line: ln + 1, message: m.to_string() };
            let parts: Vec<&str> = line.split_whitespace().collect();
            let [r, c, v] = parts[..] else { return Err(bad("expected `row col num/den`")) };
            let r: usize = r.parse().map_err(|_| bad("bad row index"))?;
            let c: usize = c.parse().map_err(|_| bad("bad column index"))?;
            if r >= nr || c >= nc {
                return Err(bad("index out of range"));
            }
            let v = crate::polyring::parse_rational(v).ok_or_else(|| bad("bad rational"))?;
            rows[r].push((c, v));
        }
        let mut m = SparseMatrix::new(nc);
        for row in rows {
            m.push_row(row);
        }
        Ok(m)
    }
}

/// Fraction-free row echelon form of an integer-scaled copy of a matrix.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub cols: usize,
    /// Pivot column of each echelon row, strictly increasing.
    pub pivots: Vec<usize>,
    /// Echelon rows (dense, integer), one per pivot.
    pub rows: Vec<Vec<BigInt>>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols).filter(|&c| !is_pivot[c]).collect()
    }
}

fn integer_row(row: &[(usize, BigRational)], cols: usize) -> Vec<BigInt> {
    let l = row.iter().fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
    let mut out = vec![BigInt::zero(); cols];
    for (c, v) in row {
        out[*c] = v.numer() * (&l / v.denom());
    }
    out
}

/// Bareiss elimination with row pivoting. Each update
/// `a[i][j] <- (p * a[i][j] - a[i][k] * a[r][j]) / prev` divides exactly.
pub fn echelon(m: &SparseMatrix) -> Echelon {
    let cols = m.cols;
    let mut a: Vec<Vec<BigInt>> = m.rows.iter().filter(|r| !r.is_empty()).map(|r| integer_row(r, cols)).collect();
    let n = a.len();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        if r == n {
            break;
        }
        let Some(piv) = (r..n).filter(|&i| !a[i][col].is_zero()).min_by(|&i, &j| {
            a[i][col].magnitude().cmp(a[j][col].magnitude()).then(i.cmp(&j))
        }) else {
            continue;
        };
        a.swap(r, piv);
        let (top, below) = a.split_at_mut(r + 1);
        let prow = &top[r];
        let p = &prow[col];
        below.par_iter_mut().for_each(|row| {
            let f = std::mem::take(&mut row[col]);
            for j in col + 1..cols {
                let mut v = p * &row[j];
                if !f.is_zero() && !prow[j].is_zero() {
                    v -= &f * &prow[j];
                }
                if prev.is_one() {
                    row[j] = v;
                } else {
                    let (q, rem) = v.div_rem(&prev);
                    assert!(rem.is_zero(), "Bareiss division must be exact");
                    row[j] = q;
                }
            }
        });
        prev = a[r][col].clone();
        pivots.push(col);
        r += 1;
    }
    a.truncate(r);
    Echelon { cols, pivots, rows: a }
}

pub fn rank(m: &SparseMatrix) -> usize {
    echelon(m).rank()
}

/// Basis of the right nullspace: one vector per free column, with that
/// column set to 1 and the other free columns to 0.
pub fn kernel_basis(m: &SparseMatrix) -> Vec<Vec<BigRational>> {
    let ech = echelon(m);
    kernel_from_echelon(&ech)
}

pub fn kernel_from_echelon(ech: &Echelon) -> Vec<Vec<BigRational>> {
    ech.free_columns()
        .into_par_iter()
        .map(|f| {
            let mut x = vec![BigRational::zero(); ech.cols];
            x[f] = BigRational::one();
            for (i, &p) in ech.pivots.iter().enumerate().rev() {
                let row = &ech.rows[i];
                let mut s = BigRational::zero();
                for j in p + 1..ech.cols {
                    if !row[j].is_zero() && !x[j].is_zero() {
                        s += &x[j] * BigRational::from_integer(row[j].clone());
                    }
                }
                x[p] = -s / BigRational::from_integer(row[p].clone());
            }
            x
        })
        .collect()
}

/// A 61-bit prime for modular rank certificates.
pub const CERT_PRIME: u64 = (1 << 61) - 1;

pub(crate) fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * b as u128) % p as u128) as u64;
        }
        b = ((b as u128 * b as u128) % p as u128) as u64;
        e >>= 1;
    }
    acc
}

pub(crate) fn reduce_mod(v: &BigRational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let residue = |x: &BigInt| -> u64 { u64::try_from(x.mod_floor(&pb)).expect("residue fits") };
    let den = residue(v.denom());
    if den == 0 {
        return None;
    }
    Some(((residue(v.numer()) as u128 * pow_mod(den, p - 2, p) as u128) % p as u128) as u64)
}

/// Rank over `Z/p`, or `None` if some denominator vanishes mod `p`.
/// It never exceeds the rational rank, so full modular column rank
/// certifies full rational column rank.
pub fn rank_mod_prime(m: &SparseMatrix, p: u64) -> Option<usize> {
    let cols = m.cols;
    let mut a = Vec::with_capacity(m.rows.len());
    for row in &m.rows {
        let mut dense = vec![0u64; cols];
        for (c, v) in row {
            dense[*c] = reduce_mod(v, p)?;
        }
        a.push(dense);
    }
    let mut r = 0;
    for col in 0..cols {
        let Some(piv) = (r..a.len()).find(|&i| a[i][col] != 0) else {
            continue;
        };
        a.swap(r, piv);
        let inv = pow_mod(a[r][col], p - 2, p);
        let prow: Vec<u64> = a[r].iter().map(|&v| ((v as u128 * inv as u128) % p as u128) as u64).collect();
        for row in a.iter_mut().skip(r + 1) {
            let f = row[col];
            if f == 0 {
                continue;
            }
            for j in col..cols {
                let sub = (f as u128 * prow[j] as u128 % p as u128) as u64;
                row[j] = if row[j] >= sub { row[j] - sub } else { row[j] + p - sub };
            }
        }
        r += 1;
    }
    Some(r)
}

/// Scales a rational vector to a primitive integer vector with positive
/// first nonzero entry.
pub fn primitive_integer(v: &[BigRational]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = v.iter().map(|c| c.numer() * (&l / c.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return ints;
    }
    let sign = if ints.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative()) { -&g } else { g };
    ints.into_iter().map(|c| c / &sign).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::rat;
    use proptest::prelude::*;

    fn dense(rows: &[&[i64]]) -> SparseMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        SparseMatrix::from_dense(cols, &rows.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect::<Vec<_>>())
    }

    #[test]
    fn zero_matrix_kernel_is_all_units() {
        let m = dense(&[&[0, 0, 0], &[0, 0, 0]]);
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 3);
        for (i, v) in k.iter().enumerate() {
            for (j, c) in v.iter().enumerate() {
                assert_eq!(*c, rat(i64::from(i == j)));
            }
        }
        assert_eq!(kernel_basis(&SparseMatrix::new(4)).len(), 4);
    }

    #[test]
    fn full_rank_square_has_empty_kernel() {
        let m = dense(&[&[2, 1, 0], &[0, 3, 1], &[1, 0, 5]]);
        assert_eq!(rank(&m), 3);
        assert!(kernel_basis(&m).is_empty());
    }

    #[test]
    fn rank_deficient_with_skipped_columns() {
        let m = dense(&[&[0, 2, 4, 1], &[0, 1, 2, 0], &[0, 3, 6, 1]]);
        let ech = echelon(&m);
        assert_eq!(ech.rank(), 2);
        let k = kernel_from_echelon(&ech);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.mul_vec(v).unwrap().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn rational_entries() {
        let mut m = SparseMatrix::new(2);
        m.push_row(vec![(0, BigRational::new(1.into(), 2.into())), (1, BigRational::new(1.into(), 3.into()))]);
        let k = kernel_basis(&m);
        assert_eq!(k, vec![vec![BigRational::new((-2).into(), 3.into()), rat(1)]]);
        assert_eq!(primitive_integer(&k[0]), vec![BigInt::from(2), BigInt::from(-3)]);
    }

    #[test]
    fn modular_rank_drops_only_at_the_prime() {
        let m = dense(&[&[1, 2], &[3, 1]]);
        assert_eq!(rank_mod_prime(&m, 5), Some(1));
        assert_eq!(rank_mod_prime(&m, 7), Some(2));
        let mut half = SparseMatrix::new(1);
        half.push_row(vec![(0, BigRational::new(1.into(), 2.into()))]);
        assert_eq!(rank_mod_prime(&half, 2), None);
        assert_eq!(rank_mod_prime(&half, 3), Some(1));
    }

    #[test]
    fn triplet_round_trip() {
        let mut m = SparseMatrix::new(3);
        m.push_row(vec![(2, BigRational::new((-3).into(), 4.into()))]);
        m.push_row(vec![]);
        m.push_row(vec![(0, rat(5))]);
        let t = m.to_triplets();
        assert_eq!(t, "3 3\n0 2 -3/4\n2 0 5/1\n");
        assert_eq!(SparseMatrix::from_triplets(&t).unwrap(), m);
        assert!(SparseMatrix::from_triplets("2 2\n0 5 1/1\n").is_err());
    }

    // Oracle for rank: plain rational Gauss-Jordan.
    fn rank_oracle(rows: &[Vec<i64>], cols: usize) -> usize {
        let mut a: Vec<Vec<BigRational>> = rows.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect();
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
            a.swap(r, p);
            for i in 0..a.len() {
                if i != r && !a[i][c].is_zero() {
                    let f = &a[i][c] / &a[r][c];
                    for j in 0..cols {
                        let v = &f * &a[r][j];
                        a[i][j] -= v;
                    }
                }
            }
            r += 1;
        }
        r
    }

    proptest! {
        #[test]
        fn kernel_vectors_annihilate_and_rank_matches(
            (rows, cols) in (1usize..7).prop_flat_map(|c| (proptest::collection::vec(proptest::collection::vec(-2i64..=2, c), 0..8), Just(c)))
        ) {
            let m = SparseMatrix::from_dense(cols, &rows.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect::<Vec<_>>());
            let ech = echelon(&m);
            prop_assert_eq!(ech.rank(), rank_oracle(&rows, cols));
            prop_assert_eq!(rank_mod_prime(&m, CERT_PRIME), Some(ech.rank()));
            let k = kernel_from_echelon(&ech);
            prop_assert_eq!(k.len(), cols - ech.rank());
            for v in &k {
                prop_assert!(m.mul_vec(v).unwrap().iter().all(Zero::is_zero));
            }
        }

        #[test]
        fn rank_is_invariant_under_row_and_column_shuffles(
            (rows, cols) in (1usize..6).prop_flat_map(|c| (proptest::collection::vec(proptest::collection::vec(-3i64..=3, c), 1..7), Just(c))),
            seed in any::<u64>(),
        ) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let m = SparseMatrix::from_dense(cols, &rows.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect::<Vec<_>>());
            let mut ri: Vec<usize> = (0..m.nrows()).collect();
            ri.shuffle(&mut rng);
            let mut ci: Vec<usize> = (0..cols).collect();
            ci.shuffle(&mut rng);
            prop_assert_eq!(rank(&m), rank(&m.select_rows(&ri).permute_columns(&ci)));
        }
    }
}
