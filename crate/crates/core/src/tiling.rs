//! Finite windows of SL₂-tilings.
//!
//! A tiling is a bi-infinite integer array `α(i, j)` whose adjacent 2×2
//! minors all equal 1. Here only rectangular windows `i0..=i1 × j0..=j1` are
//! stored. In a positive tiling each column `j` has a factor `k_j` with
//! `k_j·α(i, j) = α(i, j-1) + α(i, j+1)` for every row, and each row `i` has a
//! factor `l_i` with `l_i·α(i, j) = α(i-1, j) + α(i+1, j)` for every column.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::sl2::{int_json, json_int, Mat2};

/// Inclusive index range.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Span {
    pub start: i64,
    pub end: i64,
}

impl Span {
    pub fn new(start: i64, end: i64) -> Result<Self> {
        if start > end {
            return Err(Error::InvalidInput(format!("empty range {start}:{end}")));
        }
        Ok(Span { start, end })
    }

    pub fn len(&self) -> usize {
        (self.end - self.start + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, x: i64) -> bool {
        (self.start..=self.end).contains(&x)
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> {
        self.start..=self.end
    }

    fn hull(&self, a: i64, b: i64) -> Span {
        Span {
            start: self.start.min(a),
            end: self.end.max(b),
        }
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.start, self.end)
    }
}

/// Values `α(i, j)` on a rectangle, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TilingWindow {
    rows: Span,
    cols: Span,
    values: Vec<Vec<BigInt>>,
}

impl TilingWindow {
    /// Checks the dimensions only; see [`TilingWindow::unimodularity_defect`].
    pub fn new(rows: Span, cols: Span, values: Vec<Vec<BigInt>>) -> Result<Self> {
        if values.len() != rows.len() || values.iter().any(|r| r.len() != cols.len()) {
            return Err(Error::InvalidInput(format!(
                "expected a {}x{} array of values",
                rows.len(),
                cols.len()
            )));
        }
        Ok(TilingWindow { rows, cols, values })
    }

    pub fn from_fn(rows: Span, cols: Span, f: impl Fn(i64, i64) -> BigInt) -> Self {
        let values = rows
            .iter()
            .map(|i| cols.iter().map(|j| f(i, j)).collect())
            .collect();
        TilingWindow { rows, cols, values }
    }

    pub fn row_span(&self) -> Span {
        self.rows
    }

    pub fn col_span(&self) -> Span {
        self.cols
    }

    pub fn values(&self) -> &[Vec<BigInt>] {
        &self.values
    }

    pub fn get(&self, i: i64, j: i64) -> Option<&BigInt> {
        if !self.rows.contains(i) || !self.cols.contains(j) {
            return None;
        }
        Some(&self.values[(i - self.rows.start) as usize][(j - self.cols.start) as usize])
    }

    fn at(&self, i: i64, j: i64) -> &BigInt {
        self.get(i, j).expect("index inside window")
    }

    /// Row `i` restricted to the window.
    pub fn row(&self, i: i64) -> Option<&[BigInt]> {
        self.rows
            .contains(i)
            .then(|| self.values[(i - self.rows.start) as usize].as_slice())
    }

    /// First 2×2 block whose determinant is not 1, by its top-left corner.
    pub fn unimodularity_defect(&self) -> Option<(i64, i64)> {
        for i in self.rows.start..self.rows.end {
            for j in self.cols.start..self.cols.end {
                let det = self.at(i, j) * self.at(i + 1, j + 1)
                    - self.at(i, j + 1) * self.at(i + 1, j);
                if !det.is_one() {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_unimodular(&self) -> bool {
        self.unimodularity_defect().is_none()
    }

    pub fn is_positive(&self) -> bool {
        self.values.iter().flatten().all(|x| x.is_positive())
    }

    /// Sub-window, or `None` if the ranges are not inside this window.
    pub fn crop(&self, rows: Span, cols: Span) -> Option<TilingWindow> {
        if !self.rows.contains(rows.start)
            || !self.rows.contains(rows.end)
            || !self.cols.contains(cols.start)
            || !self.cols.contains(cols.end)
        {
            return None;
        }
        Some(TilingWindow::from_fn(rows, cols, |i, j| self.at(i, j).clone()))
    }

    /// Right-aligned grid, one window row per line.
    pub fn render_text(&self) -> String {
        let width = self
            .values
            .iter()
            .flatten()
            .map(|x| x.to_string().len())
            .max()
            .unwrap_or(1);
        let mut out = String::new();
        for row in &self.values {
            let line = row
                .iter()
                .map(|x| format!("{:>width$}", x.to_string()))
                .collect::<Vec<_>>()
                .join(" ");
            out.push_str(&line);
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "i_range": [self.rows.start, self.rows.end],
            "j_range": [self.cols.start, self.cols.end],
            "values": self
                .values
                .iter()
                .map(|r| Value::Array(r.iter().map(int_json).collect()))
                .collect::<Vec<_>>(),
        })
    }
}

/// Column factors `k_j` and row factors `l_i`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FactorVectors {
    pub k: BTreeMap<i64, BigInt>,
    pub l: BTreeMap<i64, BigInt>,
}

impl FactorVectors {
    pub fn constant(k: Span, l: Span, value: i64) -> Self {
        FactorVectors {
            k: k.iter().map(|j| (j, BigInt::from(value))).collect(),
            l: l.iter().map(|i| (i, BigInt::from(value))).collect(),
        }
    }
}

/// Reads a factor file: a JSON object mapping indices to factors, such as
/// `{"-1": 2, "0": 3, "1": 2}`.
pub fn parse_factor_map(value: &Value) -> Result<BTreeMap<i64, BigInt>> {
    let obj = value
        .as_object()
        .ok_or_else(|| Error::Parse("factor file must be a JSON object".into()))?;
    obj.iter()
        .map(|(key, v)| {
            let idx: i64 = key
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("factor index {key:?} is not an integer")))?;
            Ok((idx, json_int(v)?))
        })
        .collect()
}

pub fn factor_map_json(map: &BTreeMap<i64, BigInt>) -> Value {
    Value::Object(
        map.iter()
            .map(|(k, v)| (k.to_string(), int_json(v)))
            .collect(),
    )
}

fn exact_ratio(num: BigInt, den: &BigInt) -> Option<BigInt> {
    if den.is_zero() {
        return None;
    }
    let (q, r) = num.div_rem(den);
    r.is_zero().then_some(q)
}

/// Factors of every interior column and row of a positive window.
///
/// Each factor is computed from the first row (or column) and then checked
/// against every other row (or column) of the window.
pub fn extract_factors(w: &TilingWindow) -> Result<FactorVectors> {
    if !w.is_positive() {
        return Err(Error::NotPositiveTiling(
            "window contains a non-positive entry".into(),
        ));
    }
    if w.rows.len() < 3 || w.cols.len() < 3 {
        return Err(Error::NotPositiveTiling(
            "window must be at least 3x3 to determine factors".into(),
        ));
    }
    let mut f = FactorVectors::default();
    for j in (w.cols.start + 1)..w.cols.end {
        let mut factor: Option<BigInt> = None;
        for i in w.rows.iter() {
            let ratio = exact_ratio(w.at(i, j - 1) + w.at(i, j + 1), w.at(i, j))
                .ok_or_else(|| {
                    Error::NotPositiveTiling(format!("column {j}: non-integer ratio in row {i}"))
                })?;
            match &factor {
                None => factor = Some(ratio),
                Some(k) if *k != ratio => {
                    return Err(Error::NotPositiveTiling(format!(
                        "column {j}: rows disagree ({k} vs {ratio} in row {i})"
                    )))
                }
                _ => {}
            }
        }
        f.k.insert(j, factor.expect("window has rows"));
    }
    for i in (w.rows.start + 1)..w.rows.end {
        let mut factor: Option<BigInt> = None;
        for j in w.cols.iter() {
            let ratio = exact_ratio(w.at(i - 1, j) + w.at(i + 1, j), w.at(i, j))
                .ok_or_else(|| {
                    Error::NotPositiveTiling(format!("row {i}: non-integer ratio in column {j}"))
                })?;
            match &factor {
                None => factor = Some(ratio),
                Some(l) if *l != ratio => {
                    return Err(Error::NotPositiveTiling(format!(
                        "row {i}: columns disagree ({l} vs {ratio} in column {j})"
                    )))
                }
                _ => {}
            }
        }
        f.l.insert(i, factor.expect("window has columns"));
    }
    Ok(f)
}

/// Rows and columns whose factor differs from 2.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Fractures {
    pub columns: BTreeSet<i64>,
    pub rows: BTreeSet<i64>,
}

pub fn fractures(f: &FactorVectors) -> Fractures {
    let two = BigInt::from(2);
    Fractures {
        columns: f.k.iter().filter(|(_, k)| **k != two).map(|(j, _)| *j).collect(),
        rows: f.l.iter().filter(|(_, l)| **l != two).map(|(i, _)| *i).collect(),
    }
}

/// Fills a window from the seed `[[α(0,0), α(0,1)], [α(1,0), α(1,1)]]` and
/// the factors.
///
/// Rows 0 and 1 are propagated along `j` with `k`, then every column is
/// propagated along `i` with `l`. The result is then checked against the
/// column-factor relation in every row, which is the second way of
/// propagating; a mismatch means the factors do not belong to one tiling.
/// Non-positive values are allowed and visible through
/// [`TilingWindow::is_positive`].
pub fn generate_tiling(
    seed: &Mat2,
    factors: &FactorVectors,
    rows: Span,
    cols: Span,
) -> Result<TilingWindow> {
    if !(seed.a().is_positive()
        && seed.b().is_positive()
        && seed.c().is_positive()
        && seed.d().is_positive())
    {
        return Err(Error::NotPositiveTiling(format!(
            "seed {seed} has a non-positive entry"
        )));
    }
    let full_rows = rows.hull(0, 1);
    let full_cols = cols.hull(0, 1);
    let k = |j: i64| {
        factors
            .k
            .get(&j)
            .ok_or(Error::MissingFactor { kind: "column", index: j })
    };
    let l = |i: i64| {
        factors
            .l
            .get(&i)
            .ok_or(Error::MissingFactor { kind: "row", index: i })
    };

    let width = full_cols.len();
    let c0 = (0 - full_cols.start) as usize;
    let mut seed_rows: Vec<Vec<BigInt>> = Vec::with_capacity(2);
    for (x0, x1) in [(seed.a(), seed.b()), (seed.c(), seed.d())] {
        let mut row = vec![BigInt::zero(); width];
        row[c0] = x0.clone();
        row[c0 + 1] = x1.clone();
        for j in 1..full_cols.end {
            let p = (j - full_cols.start) as usize;
            row[p + 1] = k(j)? * &row[p] - &row[p - 1];
        }
        let mut j = 0;
        while j > full_cols.start {
            let p = (j - full_cols.start) as usize;
            row[p - 1] = k(j)? * &row[p] - &row[p + 1];
            j -= 1;
        }
        seed_rows.push(row);
    }

    let height = full_rows.len();
    let r0 = (0 - full_rows.start) as usize;
    let mut values = vec![vec![BigInt::zero(); width]; height];
    values[r0] = seed_rows[0].clone();
    values[r0 + 1] = seed_rows[1].clone();
    for i in 1..full_rows.end {
        let p = (i - full_rows.start) as usize;
        let li = l(i)?;
        let next: Vec<BigInt> =
            values[p].iter().zip(&values[p - 1]).map(|(x, y)| li * x - y).collect();
        values[p + 1] = next;
    }
    let mut i = 0;
    while i > full_rows.start {
        let p = (i - full_rows.start) as usize;
        let li = l(i)?;
        let prev: Vec<BigInt> =
            values[p].iter().zip(&values[p + 1]).map(|(x, y)| li * x - y).collect();
        values[p - 1] = prev;
        i -= 1;
    }

    let full = TilingWindow {
        rows: full_rows,
        cols: full_cols,
        values,
    };
    for i in full_rows.iter() {
        for j in (full_cols.start + 1)..full_cols.end {
            if factors.k.contains_key(&j) {
                let expected = k(j)? * full.at(i, j) - full.at(i, j - 1);
                if &expected != full.at(i, j + 1) {
                    return Err(Error::InconsistentFactors {
                        i,
                        j,
                        reason: format!(
                            "row propagation gives {expected}, column propagation gives {}",
                            full.at(i, j + 1)
                        ),
                    });
                }
            }
        }
    }
    if let Some((i, j)) = full.unimodularity_defect() {
        return Err(Error::InconsistentFactors {
            i,
            j,
            reason: "2x2 minor is not 1".into(),
        });
    }
    Ok(full.crop(rows, cols).expect("window inside propagated hull"))
}

/// The positive tiling with `α(i, j) = |i| + |j| + 2` when `i·j < 0` and
/// `|i·j| + |i| + |j| + 2` otherwise; fractured only at row 0 and column 0.
pub fn formula_tiling(i: i64, j: i64) -> BigInt {
    let (bi, bj) = (BigInt::from(i), BigInt::from(j));
    let base = bi.abs() + bj.abs() + 2;
    if (i < 0) != (j < 0) && i != 0 && j != 0 {
        base
    } else {
        base + (bi * bj).abs()
    }
}

pub fn formula_window(rows: Span, cols: Span) -> TilingWindow {
    TilingWindow::from_fn(rows, cols, formula_tiling)
}
