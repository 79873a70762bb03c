use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::Matrix;
use crate::ring::Field;
use crate::scalar::Rational;

const PRIME: u64 = (1 << 61) - 1;

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a);
        }
        a = mul_mod(a, a);
        e >>= 1;
    }
    r
}

fn reduce(n: &BigInt) -> u64 {
    let p = BigInt::from(PRIME);
    (((n % &p) + &p) % &p)
        .to_u64()
        .expect("residue fits in u64")
}

/// Rank of a rational matrix reduced modulo a large prime, or `None` when a
/// denominator vanishes there. It never exceeds the rank over ℚ, so a full
/// rank here proves the kernel over ℚ is trivial.
pub fn rank_mod_prime(m: &Matrix<Rational>) -> Option<usize> {
    let mut a = Vec::with_capacity(m.rows * m.cols);
    for x in m.entries() {
        let d = reduce(x.denom());
        if d == 0 {
            return None;
        }
        a.push(mul_mod(reduce(x.numer()), pow_mod(d, PRIME - 2)));
    }
    let cols = m.cols;
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..m.rows).find(|&r| a[r * cols + col] != 0) else {
            continue;
        };
        for c in 0..cols {
            a.swap(rank * cols + c, p * cols + c);
        }
        let inv = pow_mod(a[rank * cols + col], PRIME - 2);
        for r in rank + 1..m.rows {
            let f = mul_mod(a[r * cols + col], inv);
            if f == 0 {
                continue;
            }
            for c in col..cols {
                let v = mul_mod(f, a[rank * cols + c]);
                a[r * cols + c] = (a[r * cols + c] + PRIME - v) % PRIME;
            }
        }
        rank += 1;
    }
    Some(rank)
}

/// Full solution set of `M·x = b`: a particular solution (if any) plus a
/// basis of the kernel of `M`.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionSet<T> {
    pub particular: Option<Vec<T>>,
    pub kernel: Vec<Vec<T>>,
}

pub fn solve_linear<T: Field>(m: &Matrix<T>, b: &[T]) -> SolutionSet<T> {
    let particular = m
        .solve(&Matrix::from_column(b.to_vec()))
        .map(|x| x.column(0));
    SolutionSet {
        particular,
        kernel: m.nullspace(),
    }
}

impl<T: Field> Matrix<T> {
    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, col).inv().expect("nonzero pivot");
            for c in col..m.cols {
                let v = m.get(row, c).mul(&inv);
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let f = m.get(r, col).clone();
                if f.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let pv = m.get(row, c);
                    if !pv.is_zero() {
                        let v = m.get(r, c).sub(&f.mul(pv));
                        m.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : self·x = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<T>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![T::zero(); self.cols];
                v[f] = T::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = r.get(i, f).neg();
                }
                v
            })
            .collect()
    }

    /// Some `X` with `self·X = b`, taking free variables to be zero.
    pub fn solve(&self, b: &Self) -> Option<Self> {
        assert_eq!(self.rows, b.rows, "right-hand side has wrong height");
        let (r, pivots) = self.hstack(b).rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Self::zeros(self.cols, b.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for c in 0..b.cols {
                x.set(p, c, r.get(i, self.cols + c).clone());
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let (r, pivots) = self.hstack(&Self::identity(n)).rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(r.block(0, n, n, n))
    }

    pub fn det(&self) -> T {
        assert!(self.is_square());
        let mut m = self.clone();
        let n = m.rows;
        let mut det = T::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m.get(r, col).is_zero()) else {
                return T::zero();
            };
            if p != col {
                m.swap_rows(p, col);
                det = det.neg();
            }
            let pivot = m.get(col, col).clone();
            det = det.mul(&pivot);
            let inv = pivot.inv().expect("nonzero pivot");
            for r in col + 1..n {
                let f = m.get(r, col).mul(&inv);
                if f.is_zero() {
                    continue;
                }
                for c in col..n {
                    let v = m.get(r, c).sub(&f.mul(m.get(col, c)));
                    m.set(r, c, v);
                }
            }
        }
        det
    }

    /// Indices of a maximal independent subset of the columns, chosen greedily
    /// from the left.
    pub fn independent_columns(&self) -> Vec<usize> {
        self.rref().1
    }
}
