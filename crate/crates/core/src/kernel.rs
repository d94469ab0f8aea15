//! Exact rational null spaces of integer matrices.
//!
//! Forward elimination is fraction-free (Bareiss): after eliminating with pivot
//! `p_k`, every entry below the pivot row is an integer minor of the input, so the
//! division by the previous pivot is exact. Elimination first runs in checked `i128`
//! and restarts in `BigInt` on overflow. Back-substitution works over `BigRational`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::graph::QuartGraph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        assert_eq!(entries.len(), rows * cols, "entry count must equal rows * cols");
        IntMatrix { rows, cols, entries }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let entries = rows.iter().flatten().map(|&x| BigInt::from(x)).collect();
        Self::new(rows.len(), cols, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Exact product `A * v`.
    pub fn apply(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, _)| !a.is_zero())
                    .fold(BigRational::zero(), |acc, (a, x)| {
                        acc + BigRational::from_integer(a.clone()) * x
                    })
            })
            .collect()
    }
}

/// Symmetric 0/1 adjacency matrix for arbitrary neighbor lists.
pub fn adjacency_from_lists<L: AsRef<[usize]>>(lists: &[L]) -> IntMatrix {
    let n = lists.len();
    let mut entries = vec![BigInt::zero(); n * n];
    for (v, list) in lists.iter().enumerate() {
        for &w in list.as_ref() {
            entries[v * n + w] = BigInt::one();
        }
    }
    IntMatrix::new(n, n, entries)
}

pub fn adjacency_matrix(g: &QuartGraph) -> IntMatrix {
    adjacency_from_lists(g.adjacency())
}

/// Basis of `{v : A v = 0}`; each vector's first nonzero entry is `+1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelBasis {
    pub vectors: Vec<Vec<BigRational>>,
}

impl KernelBasis {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }
}

impl fmt::Display for KernelBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.vectors.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            let parts: Vec<String> = v.iter().map(format_rational).collect();
            write!(f, "[{}]", parts.join(", "))?;
        }
        Ok(())
    }
}

/// Decimal `p` or `p/q`.
pub fn format_rational(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Row echelon form: the nonzero rows and the pivot column of each.
struct Echelon {
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

fn echelon_i128(a: &IntMatrix) -> Option<Echelon> {
    let (rows, cols) = (a.rows, a.cols);
    let mut m: Vec<Vec<i128>> = (0..rows)
        .map(|i| a.row(i).iter().map(|x| x.to_i128()).collect::<Option<_>>())
        .collect::<Option<_>>()?;
    let mut pivots = Vec::new();
    let mut prev: i128 = 1;
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(r, p);
        let (top, bottom) = m.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pivot = pivot_row[col];
        for row in bottom.iter_mut() {
            let factor = row[col];
            for j in col + 1..cols {
                let num = pivot
                    .checked_mul(row[j])?
                    .checked_sub(factor.checked_mul(pivot_row[j])?)?;
                debug_assert_eq!(num % prev, 0);
                row[j] = num / prev;
            }
            row[col] = 0;
        }
        prev = pivot;
        pivots.push(col);
        r += 1;
    }
    let rows = m[..r]
        .iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    Some(Echelon { rows, pivots })
}

fn echelon_bigint(a: &IntMatrix) -> Echelon {
    let (rows, cols) = (a.rows, a.cols);
    let mut m: Vec<Vec<BigInt>> = (0..rows).map(|i| a.row(i).to_vec()).collect();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let (top, bottom) = m.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pivot = &pivot_row[col];
        for row in bottom.iter_mut() {
            let factor = std::mem::take(&mut row[col]);
            for j in col + 1..cols {
                let num = pivot * &row[j] - &factor * &pivot_row[j];
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                row[j] = q;
            }
        }
        prev = pivot.clone();
        pivots.push(col);
        r += 1;
    }
    m.truncate(r);
    Echelon { rows: m, pivots }
}

fn echelon(a: &IntMatrix) -> Echelon {
    echelon_i128(a).unwrap_or_else(|| echelon_bigint(a))
}

pub fn rank(a: &IntMatrix) -> usize {
    echelon(a).pivots.len()
}

/// Exact basis of the null space, deterministic for a fixed input.
pub fn kernel_basis(a: &IntMatrix) -> KernelBasis {
    let Echelon { rows, pivots } = echelon(a);
    let cols = a.cols;
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let vectors = (0..cols)
        .filter(|&j| !is_pivot[j])
        .map(|free| {
            let mut v = vec![BigRational::zero(); cols];
            v[free] = BigRational::one();
            for (row, &pc) in rows.iter().zip(&pivots).rev() {
                let sum = (pc + 1..cols)
                    .filter(|&j| !row[j].is_zero() && !v[j].is_zero())
                    .fold(BigRational::zero(), |acc, j| {
                        acc + BigRational::from_integer(row[j].clone()) * &v[j]
                    });
                v[pc] = -sum / BigRational::from_integer(row[pc].clone());
            }
            let lead = v
                .iter()
                .find(|x| !x.is_zero())
                .cloned()
                .expect("free column entry is one");
            v.iter().map(|x| x / &lead).collect()
        })
        .collect();
    KernelBasis { vectors }
}

/// Nut test: one-dimensional kernel spanned by a vector without zero entries.
pub fn nut_oracle(g: &QuartGraph) -> bool {
    let kernel = kernel_basis(&adjacency_matrix(g));
    kernel.dim() == 1 && kernel.vectors[0].iter().all(|x| !x.is_zero())
}

/// True if `v` has constant absolute value on `0..m` and on `m..2m`.
pub fn constant_abs_on_halves(v: &[BigRational]) -> bool {
    let m = v.len() / 2;
    let constant = |part: &[BigRational]| part.iter().all(|x| x.abs() == part[0].abs());
    constant(&v[..m]) && constant(&v[m..])
}
