//! Dense complex Gaussian elimination with scaled partial pivoting.
//!
//! Interior systems here have at most a few hundred unknowns, so a dense
//! row-major matrix is enough. Rank-deficient systems are reduced to row
//! echelon form; free unknowns are set to zero, and leftover rows decide
//! whether the system is consistent.

use num_complex::Complex64;

/// Pivots below `PIVOT_TOL · (largest column 2-norm)` count as zero.
pub const PIVOT_TOL: f64 = 1e-12;
/// Leftover right-hand sides below this fraction of the data scale count as zero.
pub const CONSISTENCY_TOL: f64 = 1e-9;

/// Square row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    n: usize,
    data: Vec<Complex64>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: Complex64) {
        self.data[i * self.n + j] = value;
    }

    #[inline]
    pub fn add(&mut self, i: usize, j: usize, value: Complex64) {
        self.data[i * self.n + j] += value;
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn mul_vec(&self, x: &[Complex64]) -> Vec<Complex64> {
        (0..self.n)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    fn max_column_norm(&self) -> f64 {
        (0..self.n)
            .map(|j| {
                (0..self.n)
                    .map(|i| self.get(i, j).norm_sqr())
                    .sum::<f64>()
                    .sqrt()
            })
            .fold(0.0, f64::max)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.n {
            self.data.swap(a * self.n + j, b * self.n + j);
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub x: Vec<Complex64>,
    /// Number of pivots found; `rank < n` means the solution is not unique.
    pub rank: usize,
}

impl Solution {
    pub fn is_unique(&self) -> bool {
        self.rank == self.x.len()
    }
}

/// The system is singular and its right-hand side is outside the range.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Inconsistent;

/// Solves `a x = b`, returning one solution when the system is singular but
/// consistent.
pub fn solve(a: &Matrix, b: &[Complex64]) -> Result<Solution, Inconsistent> {
    let n = a.dim();
    assert_eq!(b.len(), n, "right-hand side length must match the matrix");
    if n == 0 {
        return Ok(Solution {
            x: Vec::new(),
            rank: 0,
        });
    }

    let pivot_tol = PIVOT_TOL * a.max_column_norm();
    let data_scale = a
        .max_abs()
        .max(b.iter().map(|z| z.norm()).fold(0.0, f64::max));

    let mut m = a.clone();
    let mut rhs = b.to_vec();
    let mut scale: Vec<f64> = (0..n)
        .map(|i| m.row(i).iter().map(|z| z.norm()).fold(0.0, f64::max))
        .map(|s| if s > 0.0 { s } else { 1.0 })
        .collect();

    let mut pivots: Vec<(usize, usize)> = Vec::with_capacity(n);
    let mut row = 0;
    for col in 0..n {
        if row == n {
            break;
        }
        let mut best: Option<(usize, f64)> = None;
        for (i, s) in scale.iter().enumerate().skip(row) {
            let mag = m.get(i, col).norm();
            if mag < pivot_tol || mag == 0.0 {
                continue;
            }
            let ratio = mag / s;
            if best.is_none_or(|(_, r)| ratio > r) {
                best = Some((i, ratio));
            }
        }
        let Some((p, _)) = best else { continue };
        m.swap_rows(row, p);
        rhs.swap(row, p);
        scale.swap(row, p);

        let pivot = m.get(row, col);
        for i in row + 1..n {
            let factor = m.get(i, col) / pivot;
            if factor == Complex64::new(0.0, 0.0) {
                continue;
            }
            m.set(i, col, Complex64::new(0.0, 0.0));
            for j in col + 1..n {
                let v = m.get(row, j);
                m.add(i, j, -factor * v);
            }
            let r = rhs[row];
            rhs[i] -= factor * r;
        }
        pivots.push((row, col));
        row += 1;
    }

    let rank = pivots.len();
    if rhs[rank..]
        .iter()
        .any(|z| z.norm() > CONSISTENCY_TOL * data_scale)
    {
        return Err(Inconsistent);
    }

    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for &(r, c) in pivots.iter().rev() {
        let tail: Complex64 = (c + 1..n).map(|j| m.get(r, j) * x[j]).sum();
        x[c] = (rhs[r] - tail) / m.get(r, c);
    }
    Ok(Solution { x, rank })
}
