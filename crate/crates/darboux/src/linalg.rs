//! Exact dense linear algebra over the rationals.
//!
//! Elimination is fraction-free (Bareiss) on integer-cleared rows with a
//! fixed left-to-right pivot order, so results are deterministic.  Kernel
//! vectors are cleared to coprime integer entries with the first nonzero
//! entry positive.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AffineOutcome {
    Solution {
        particular: Vec<BigRational>,
        kernel: Vec<Vec<BigRational>>,
    },
    Inconsistent,
}

impl RatMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        for row in &rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch {
                    expected: c,
                    got: row.len(),
                });
            }
        }
        Ok(RatMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigRational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = BigRational::zero();
                for j in 0..self.cols {
                    if !self.get(i, j).is_zero() && !v[j].is_zero() {
                        acc += self.get(i, j).clone() * v[j].clone();
                    }
                }
                acc
            })
            .collect()
    }

    /// Integer-cleared copy of the rows, optionally with an extra
    /// right-hand-side column appended.
    fn cleared_rows(&self, rhs: Option<&[BigRational]>) -> Vec<Vec<BigInt>> {
        let extra = usize::from(rhs.is_some());
        (0..self.rows)
            .map(|i| {
                let mut lcm = BigInt::one();
                for j in 0..self.cols {
                    lcm = lcm.lcm(self.get(i, j).denom());
                }
                if let Some(b) = rhs {
                    lcm = lcm.lcm(b[i].denom());
                }
                let mut row: Vec<BigInt> = Vec::with_capacity(self.cols + extra);
                for j in 0..self.cols {
                    let e = self.get(i, j);
                    row.push(e.numer() * &lcm / e.denom());
                }
                if let Some(b) = rhs {
                    row.push(b[i].numer() * &lcm / b[i].denom());
                }
                let mut g = BigInt::zero();
                for e in &row {
                    g = g.gcd(e);
                }
                if !g.is_zero() && !g.is_one() {
                    for e in &mut row {
                        *e /= &g;
                    }
                }
                row
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        let mut m = self.cleared_rows(None);
        bareiss_echelon(&mut m, self.cols).len()
    }

    /// Exact basis of the right kernel, deterministic, integer-cleared.
    pub fn nullspace(&self) -> Vec<Vec<BigRational>> {
        let mut m = self.cleared_rows(None);
        let pivots = bareiss_echelon(&mut m, self.cols);
        kernel_from_echelon(&m, self.cols, &pivots)
    }

    /// One exact solution of `self * x = rhs` (free variables set to zero)
    /// together with a kernel basis, or `Inconsistent`.
    pub fn solve_affine(&self, rhs: &[BigRational]) -> Result<AffineOutcome> {
        if rhs.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: rhs.len(),
            });
        }
        let mut m = self.cleared_rows(Some(rhs));
        let pivots = bareiss_echelon(&mut m, self.cols);
        // any echelon row that is zero on the matrix part but not on the
        // rhs column witnesses inconsistency
        for row in &m {
            if row[..self.cols].iter().all(|e| e.is_zero()) && !row[self.cols].is_zero() {
                return Ok(AffineOutcome::Inconsistent);
            }
        }
        let mut particular = vec![BigRational::zero(); self.cols];
        for (i, &pc) in pivots.iter().enumerate().rev() {
            let mut acc = BigRational::from_integer(m[i][self.cols].clone());
            for j in pc + 1..self.cols {
                if !m[i][j].is_zero() && !particular[j].is_zero() {
                    acc -= BigRational::from_integer(m[i][j].clone()) * particular[j].clone();
                }
            }
            particular[pc] = acc / BigRational::from_integer(m[i][pc].clone());
        }
        let kernel = kernel_from_echelon(&m, self.cols, &pivots);
        Ok(AffineOutcome::Solution { particular, kernel })
    }
}

/// Fraction-free row echelon with fixed column order; returns pivot
/// columns.  `width` limits pivot search to the matrix part when an
/// augmented column is present.
fn bareiss_echelon(m: &mut [Vec<BigInt>], width: usize) -> Vec<usize> {
    let rows = m.len();
    let total = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut row = 0;
    for col in 0..width {
        if row == rows {
            break;
        }
        let Some(pr) = (row..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, pr);
        for i in row + 1..rows {
            for j in col + 1..total {
                let num = &m[row][col] * &m[i][j] - &m[i][col] * &m[row][j];
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero(), "Bareiss division must be exact");
                m[i][j] = q;
            }
            m[i][col] = BigInt::zero();
        }
        prev = m[row][col].clone();
        pivots.push(col);
        row += 1;
    }
    pivots
}

fn kernel_from_echelon(
    m: &[Vec<BigInt>],
    cols: usize,
    pivots: &[usize],
) -> Vec<Vec<BigRational>> {
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &f in &free {
        let mut v = vec![BigRational::zero(); cols];
        v[f] = BigRational::one();
        for (i, &pc) in pivots.iter().enumerate().rev() {
            if pc > f {
                continue;
            }
            let mut acc = BigRational::zero();
            for j in pc + 1..cols {
                if !m[i][j].is_zero() && !v[j].is_zero() {
                    acc += BigRational::from_integer(m[i][j].clone()) * v[j].clone();
                }
            }
            if !acc.is_zero() {
                v[pc] = -acc / BigRational::from_integer(m[i][pc].clone());
            }
        }
        basis.push(clear_to_coprime(&v));
    }
    basis
}

/// Scale a rational vector to coprime integer entries, first nonzero
/// entry positive.
pub fn clear_to_coprime(v: &[BigRational]) -> Vec<BigRational> {
    let mut lcm = BigInt::one();
    for e in v {
        lcm = lcm.lcm(e.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|e| e.numer() * &lcm / e.denom()).collect();
    let mut g = BigInt::zero();
    for e in &ints {
        g = g.gcd(e);
    }
    if g.is_zero() {
        return v.to_vec();
    }
    if let Some(first) = ints.iter().find(|e| !e.is_zero()) {
        if first.is_negative() {
            g = -g;
        }
    }
    ints.iter()
        .map(|e| BigRational::from_integer(e / &g))
        .collect()
}

/// One integer solution of `m * x = rhs` plus a basis of the integer
/// kernel lattice, or `None` when no integer solution exists.  Column
/// Hermite-style reduction with a unimodular transform.
pub(crate) fn solve_diophantine(
    m: &[Vec<BigInt>],
    rhs: &[BigInt],
) -> Option<(Vec<BigInt>, Vec<Vec<BigInt>>)> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    if cols == 0 {
        return if rhs.iter().all(|b| b.is_zero()) {
            Some((vec![], vec![]))
        } else {
            None
        };
    }
    // columns of w; u tracks the unimodular column transform (w = m * u)
    let mut w: Vec<Vec<BigInt>> = (0..cols)
        .map(|j| (0..rows).map(|i| m[i][j].clone()).collect())
        .collect();
    let mut u: Vec<Vec<BigInt>> = (0..cols)
        .map(|j| {
            (0..cols)
                .map(|i| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect();
    let mut cur = 0;
    let mut pivot_of_row: Vec<Option<usize>> = vec![None; rows];
    for i in 0..rows {
        if cur == cols {
            break;
        }
        loop {
            let nz: Vec<usize> = (cur..cols).filter(|&k| !w[k][i].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            if nz.len() == 1 {
                w.swap(cur, nz[0]);
                u.swap(cur, nz[0]);
                pivot_of_row[i] = Some(cur);
                cur += 1;
                break;
            }
            let &kmin = nz
                .iter()
                .min_by_key(|&&k| w[k][i].abs())
                .expect("nonempty");
            for &k in &nz {
                if k == kmin {
                    continue;
                }
                let q = rounded_div(&w[k][i], &w[kmin][i]);
                if !q.is_zero() {
                    for r in 0..rows {
                        let t = &w[kmin][r] * &q;
                        w[k][r] -= t;
                    }
                    for r in 0..cols {
                        let t = &u[kmin][r] * &q;
                        u[k][r] -= t;
                    }
                }
            }
        }
    }
    // forward solve w * y = rhs
    let mut y = vec![BigInt::zero(); cols];
    for i in 0..rows {
        let mut s = rhs[i].clone();
        for k in 0..cur {
            if !w[k][i].is_zero() && !y[k].is_zero() {
                s -= &w[k][i] * &y[k];
            }
        }
        match pivot_of_row[i] {
            Some(k) => {
                let (q, r) = s.div_rem(&w[k][i]);
                if !r.is_zero() {
                    return None;
                }
                y[k] = q;
            }
            None => {
                if !s.is_zero() {
                    return None;
                }
            }
        }
    }
    let x: Vec<BigInt> = (0..cols)
        .map(|r| {
            let mut acc = BigInt::zero();
            for k in 0..cur {
                if !y[k].is_zero() {
                    acc += &u[k][r] * &y[k];
                }
            }
            acc
        })
        .collect();
    let kernel: Vec<Vec<BigInt>> = (cur..cols).map(|k| u[k].clone()).collect();
    Some((x, kernel))
}

/// Greedy size reduction of `x` modulo the lattice spanned by `basis`.
pub(crate) fn reduce_against_lattice(x: &mut [BigInt], basis: &[Vec<BigInt>]) {
    for _ in 0..8 {
        let mut changed = false;
        for v in basis {
            let dot: BigInt = x.iter().zip(v).map(|(a, b)| a * b).sum();
            let norm: BigInt = v.iter().map(|b| b * b).sum();
            if norm.is_zero() {
                continue;
            }
            let t = rounded_div(&dot, &norm);
            if !t.is_zero() {
                for (xi, vi) in x.iter_mut().zip(v) {
                    *xi -= &t * vi;
                }
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
}

fn rounded_div(a: &BigInt, b: &BigInt) -> BigInt {
    let two = BigInt::from(2);
    let (q, r) = a.div_rem(b);
    if &r.abs() * &two > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn mat(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&e| rat(e)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn kernel_of_single_row() {
        let m = mat(&[&[3, 2]]);
        let k = m.nullspace();
        assert_eq!(k, vec![vec![rat(2), rat(-3)]]);
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        assert!(mat(&[&[1, 0], &[0, 1]]).nullspace().is_empty());
    }

    #[test]
    fn kernel_of_zero_matrix_is_standard_basis() {
        let k = mat(&[&[0, 0], &[0, 0]]).nullspace();
        assert_eq!(
            k,
            vec![vec![rat(1), rat(0)], vec![rat(0), rat(1)]]
        );
    }

    #[test]
    fn nullspace_vectors_annihilate() {
        let m = mat(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[1, 0, 1, 0]]);
        let k = m.nullspace();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.mul_vec(v).iter().all(|e| e.is_zero()));
        }
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn affine_solution_with_kernel() {
        let m = mat(&[&[3, 2]]);
        match m.solve_affine(&[rat(-5)]).unwrap() {
            AffineOutcome::Solution { particular, kernel } => {
                // any representative with 3 n1 + 2 n2 = -5 is fine
                let check = rat(3) * particular[0].clone() + rat(2) * particular[1].clone();
                assert_eq!(check, rat(-5));
                assert_eq!(kernel, vec![vec![rat(2), rat(-3)]]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn affine_unique_and_inconsistent() {
        let m = mat(&[&[1, 0], &[0, 1]]);
        match m.solve_affine(&[rat(0), rat(0)]).unwrap() {
            AffineOutcome::Solution { particular, kernel } => {
                assert_eq!(particular, vec![rat(0), rat(0)]);
                assert!(kernel.is_empty());
            }
            other => panic!("unexpected {other:?}"),
        }
        let m = mat(&[&[0, 0]]);
        assert_eq!(
            m.solve_affine(&[rat(1)]).unwrap(),
            AffineOutcome::Inconsistent
        );
        assert!(m.solve_affine(&[rat(1), rat(2)]).is_err());
    }

    #[test]
    fn rational_entries_are_cleared() {
        let m = RatMatrix::from_rows(vec![vec![
            BigRational::new(BigInt::from(1), BigInt::from(2)),
            BigRational::new(BigInt::from(1), BigInt::from(3)),
        ]])
        .unwrap();
        let k = m.nullspace();
        assert_eq!(k, vec![vec![rat(2), rat(-3)]]);
    }

    #[test]
    fn diophantine_finds_integer_point() {
        let m = vec![vec![BigInt::from(3), BigInt::from(2)]];
        let rhs = vec![BigInt::from(-5)];
        let (mut x, kernel) = solve_diophantine(&m, &rhs).unwrap();
        assert_eq!(&m[0][0] * &x[0] + &m[0][1] * &x[1], BigInt::from(-5));
        assert_eq!(kernel.len(), 1);
        reduce_against_lattice(&mut x, &kernel);
        assert_eq!(&m[0][0] * &x[0] + &m[0][1] * &x[1], BigInt::from(-5));
        assert_eq!(x, vec![BigInt::from(-1), BigInt::from(-1)]);
    }

    #[test]
    fn diophantine_no_integer_solution() {
        // 2x = 1 has no integer solution
        let m = vec![vec![BigInt::from(2)]];
        assert!(solve_diophantine(&m, &[BigInt::from(1)]).is_none());
        // but 2x = 6 does
        let (x, k) = solve_diophantine(&m, &[BigInt::from(6)]).unwrap();
        assert_eq!(x, vec![BigInt::from(3)]);
        assert!(k.is_empty());
    }
}
