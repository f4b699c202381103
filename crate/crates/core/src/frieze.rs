//! Frieze patterns of integers and of matrices.
//!
//! Rows are indexed from 0 (all zeros) and 1 (all ones); row 2 holds the
//! sequence. Columns are taken modulo the period `n`, and row `i` is stored
//! for `j = 0..n`. In the staggered picture the entry `φ(i, j)` sits between
//! `φ(i-1, j)` and `φ(i-1, j+1)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::sl2::{int_json, Mat2};

/// Rows `0..=n` of the frieze generated by a sequence of period `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FriezeWindow {
    n: usize,
    rows: Vec<Vec<BigInt>>,
}

impl FriezeWindow {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Index of the last materialised row (`n`).
    pub fn r_max(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.rows[i]
    }

    /// `φ(i, j)` with `j` taken modulo `n`.
    pub fn get(&self, i: usize, j: isize) -> &BigInt {
        &self.rows[i][j.rem_euclid(self.n as isize) as usize]
    }

    /// Row `i` in the order it appears in the staggered drawing, where row
    /// `i` starts at column `-⌊(i-1)/2⌋`.
    pub fn display_row(&self, i: usize) -> Vec<BigInt> {
        let start = -(((i as isize) - 1).max(0) / 2);
        (0..self.n as isize)
            .map(|t| self.get(i, start + t).clone())
            .collect()
    }

    /// Rows `1..n-1`, staggered: rows with even index are indented by two
    /// spaces, entries are right-aligned and separated by two spaces.
    pub fn render_text(&self) -> String {
        let last = self.n.saturating_sub(1).max(1);
        let shown: Vec<Vec<String>> = (1..=last)
            .map(|i| self.display_row(i).iter().map(|x| x.to_string()).collect())
            .collect();
        let width = shown.iter().flatten().map(String::len).max().unwrap_or(1);
        let mut out = String::new();
        for (idx, cells) in shown.iter().enumerate() {
            let i = idx + 1;
            if i % 2 == 0 {
                out.push_str("  ");
            }
            let line = cells
                .iter()
                .map(|c| format!("{c:>width$}"))
                .collect::<Vec<_>>()
                .join("  ");
            out.push_str(&line);
            out.push('\n');
        }
        out
    }

    /// `{"n": n, "rows": [[...], ...]}` with rows `0..=n` in storage order.
    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "rows": self
                .rows
                .iter()
                .map(|r| Value::Array(r.iter().map(int_json).collect()))
                .collect::<Vec<_>>(),
        })
    }
}

/// Builds rows `0..=n` from the sequence `q` using the diamond rule
/// `φ(i, j) = (φ(i-1, j+1)·φ(i-1, j) - 1) / φ(i-2, j+1)`.
///
/// Any positive sequence is accepted; generation fails at the first division
/// that is by zero or not exact.
pub fn generate_frieze(q: &[u64]) -> Result<FriezeWindow> {
    crate::eta::check_candidate(q)?;
    let n = q.len();
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n + 1);
    rows.push(vec![BigInt::zero(); n]);
    rows.push(vec![BigInt::one(); n]);
    rows.push(q.iter().map(|&a| BigInt::from(a)).collect());
    for i in 3..=n {
        let (up, upup) = (&rows[i - 1], &rows[i - 2]);
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            let jn = (j + 1) % n;
            let divisor = &upup[jn];
            if divisor.is_zero() {
                return Err(Error::FriezeCell {
                    row: i,
                    column: j,
                    reason: "division by zero".into(),
                });
            }
            let numerator: BigInt = &up[jn] * &up[j] - 1;
            let (quot, rem) = numerator.div_rem(divisor);
            if !rem.is_zero() {
                return Err(Error::FriezeCell {
                    row: i,
                    column: j,
                    reason: format!("{numerator} is not divisible by {divisor}"),
                });
            }
            row.push(quot);
        }
        rows.push(row);
    }
    Ok(FriezeWindow { n, rows })
}

/// Smallest row `r >= 2` made entirely of ones.
pub fn has_ones_row(w: &FriezeWindow) -> Option<usize> {
    (2..w.rows.len()).find(|&r| w.rows[r].iter().all(|x| x.is_one()))
}

/// First cell of row `n-1` that is not 1, for sequences that are not
/// quiddity sequences.
pub fn first_defect(w: &FriezeWindow) -> Option<(usize, usize, BigInt)> {
    let r = w.n - 1;
    w.rows[r]
        .iter()
        .position(|x| !x.is_one())
        .map(|j| (r, j, w.rows[r][j].clone()))
}

/// Determinant of the tridiagonal matrix with diagonal `entries` and ones on
/// both off-diagonals, by `K_{k+1} = a_k·K_k - K_{k-1}`.
///
/// This is `φ(k+1, j)` for `entries = (a_j, ..., a_{j+k-1})`.
pub fn continuant(entries: &[u64]) -> BigInt {
    let mut prev = BigInt::zero();
    let mut cur = BigInt::one();
    for &a in entries {
        let next = &cur * a - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// A frieze of 2×2 matrices over rows `0..=r_max` and columns `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixFriezeWindow {
    n: usize,
    cells: Vec<Vec<Mat2>>,
}

impl MatrixFriezeWindow {
    /// General frieze of matrices from a constant row 0 and a periodic row 1,
    /// filled with `F(i, j) = F(i-1, j+1)·F(i-2, j+1)⁻¹·F(i-1, j)`.
    pub fn from_rows(row0: Mat2, row1: Vec<Mat2>, r_max: usize) -> Result<Self> {
        let n = row1.len();
        if n == 0 {
            return Err(Error::InvalidInput("row 1 must not be empty".into()));
        }
        let mut cells = vec![vec![row0; n], row1];
        for i in 2..=r_max {
            let row = (0..n)
                .map(|j| {
                    let jn = (j + 1) % n;
                    let left = &cells[i - 1][jn] * &cells[i - 2][jn].inverse();
                    &left * &cells[i - 1][j]
                })
                .collect();
            cells.push(row);
        }
        cells.truncate(r_max + 1);
        Ok(MatrixFriezeWindow { n, cells })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r_max(&self) -> usize {
        self.cells.len() - 1
    }

    pub fn cell(&self, i: usize, j: usize) -> &Mat2 {
        &self.cells[i][j % self.n]
    }

    pub fn row(&self, i: usize) -> &[Mat2] {
        &self.cells[i]
    }
}

/// `M(i, j) = A_{i+j-1} X A_{i+j-2} X ··· X A_j` where row 0 is `X⁻¹` and
/// row 1 is `(A_j)`.
pub fn word_cell(row0: &Mat2, row1: &[Mat2], i: usize, j: usize) -> Mat2 {
    let n = row1.len();
    match i {
        0 => row0.clone(),
        _ => {
            let x = row0.inverse();
            let mut acc = row1[j % n].clone();
            for t in 1..i {
                acc = &(&row1[(j + t) % n] * &x) * &acc;
            }
            acc
        }
    }
}

/// The frieze of matrices with `Q(0, j) = -S` and `Q(1, j) = U^{a_j}`, rows
/// `0..=n`.
///
/// The lower-left entry of `Q(i-1, j)` is the integer frieze entry `φ(i, j)`,
/// and for a quiddity sequence every cell of row `n` equals `S`.
pub fn generate_matrix_frieze(q: &[u64]) -> Result<MatrixFriezeWindow> {
    crate::eta::check_candidate(q)?;
    let row0 = -Mat2::s();
    let row1: Vec<Mat2> = q.iter().map(|&a| Mat2::u_pow(a)).collect();
    let w = MatrixFriezeWindow::from_rows(row0.clone(), row1.clone(), q.len())?;
    debug_assert!((0..=w.r_max())
        .all(|i| (0..w.n).all(|j| *w.cell(i, j) == word_cell(&row0, &row1, i, j))));
    Ok(w)
}
