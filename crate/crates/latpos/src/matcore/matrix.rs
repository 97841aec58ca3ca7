use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::MatError;
use crate::polyalg::MultiPoly;

/// Dense matrix with polynomial entries, stored row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    data: Vec<MultiPoly>,
}

/// Row and column index sets of a square submatrix, both strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MinorSpec {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

impl MinorSpec {
    pub fn new(rows: Vec<usize>, cols: Vec<usize>) -> MinorSpec {
        MinorSpec { rows, cols }
    }

    pub fn order(&self) -> usize {
        self.rows.len()
    }

    pub fn validate(&self, nrows: usize, ncols: usize) -> Result<(), MatError> {
        let increasing = |v: &[usize]| v.windows(2).all(|w| w[0] < w[1]);
        if self.rows.len() != self.cols.len() {
            return Err(MatError::BadMinor("row and column sets differ in size".into()));
        }
        if !increasing(&self.rows) || !increasing(&self.cols) {
            return Err(MatError::BadMinor("index sets must be strictly increasing".into()));
        }
        if self.rows.last().is_some_and(|&r| r >= nrows) || self.cols.last().is_some_and(|&c| c >= ncols) {
            return Err(MatError::BadMinor("index out of range".into()));
        }
        Ok(())
    }
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize) -> PolyMatrix {
        PolyMatrix { rows, cols, data: vec![MultiPoly::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> PolyMatrix {
        PolyMatrix::from_fn(n, n, |i, j| if i == j { MultiPoly::one() } else { MultiPoly::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> MultiPoly) -> PolyMatrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        PolyMatrix { rows, cols, data }
    }

    pub fn try_from_fn<E>(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Result<MultiPoly, E>,
    ) -> Result<PolyMatrix, E> {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j)?);
            }
        }
        Ok(PolyMatrix { rows, cols, data })
    }

    pub fn from_ints(rows: &[&[i64]]) -> PolyMatrix {
        let ncols = rows.first().map_or(0, |r| r.len());
        PolyMatrix::from_fn(rows.len(), ncols, |i, j| MultiPoly::constant(rows[i][j]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &MultiPoly {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) outside {}x{}", self.rows, self.cols);
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: MultiPoly) {
        assert!(i < self.rows && j < self.cols);
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[MultiPoly] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix, MatError> {
        if self.cols != other.rows {
            return Err(MatError::DimensionMismatch { left: (self.rows, self.cols), right: (other.rows, other.cols) });
        }
        Ok(PolyMatrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = MultiPoly::zero();
            for k in 0..self.cols {
                let (a, b) = (self.get(i, k), other.get(k, j));
                if !a.is_zero() && !b.is_zero() {
                    acc += a * b;
                }
            }
            acc
        }))
    }

    pub fn transpose(&self) -> PolyMatrix {
        PolyMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        PolyMatrix::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    /// Top-left `rows x cols` block.
    pub fn leading(&self, rows: usize, cols: usize) -> PolyMatrix {
        PolyMatrix::from_fn(rows, cols, |i, j| self.get(i, j).clone())
    }

    /// `1 ⊕ self`: a new first row and column that are zero except for a 1 in the corner.
    pub fn one_plus(&self) -> PolyMatrix {
        PolyMatrix::from_fn(self.rows + 1, self.cols + 1, |i, j| match (i, j) {
            (0, 0) => MultiPoly::one(),
            (0, _) | (_, 0) => MultiPoly::zero(),
            _ => self.get(i - 1, j - 1).clone(),
        })
    }

    pub fn entries(&self) -> &[MultiPoly] {
        &self.data
    }

    pub fn is_numeric(&self) -> bool {
        self.data.iter().all(MultiPoly::is_constant)
    }

    pub fn to_integers(&self) -> Option<Vec<Vec<BigInt>>> {
        (0..self.rows).map(|i| self.row(i).iter().map(MultiPoly::as_constant).collect()).collect()
    }

    pub fn map(&self, f: impl Fn(&MultiPoly) -> MultiPoly) -> PolyMatrix {
        PolyMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn det(&self) -> Result<MultiPoly, MatError> {
        if self.rows != self.cols {
            return Err(MatError::NotSquare(self.rows, self.cols));
        }
        if let Some(ints) = self.to_integers() {
            return Ok(MultiPoly::constant(bareiss_det(ints)));
        }
        Ok(expansion_det(self))
    }

    pub fn minor(&self, spec: &MinorSpec) -> Result<MultiPoly, MatError> {
        spec.validate(self.rows, self.cols)?;
        self.submatrix(&spec.rows, &spec.cols).det()
    }

    /// Entries as canonical strings, row by row.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|p| p.to_string()).collect()).collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for row in self.to_strings() {
            let cells: Vec<String> = row
                .into_iter()
                .map(|s| if s.contains([',', ' ', '"']) { format!("\"{}\"", s.replace('"', "\"\"")) } else { s })
                .collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "PolyMatrix {}x{} [", self.rows, self.cols)?;
        for row in self.to_strings() {
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Serialize for PolyMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

/// Fraction-free elimination; every intermediate value is itself a minor, so
/// the divisions are exact.
pub fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Laplace expansion row by row, memoised on the set of used columns.
fn expansion_det(m: &PolyMatrix) -> MultiPoly {
    let n = m.rows;
    if n == 0 {
        return MultiPoly::one();
    }
    assert!(n <= 30, "expansion determinant limited to 30 rows");
    let mut layer: HashMap<u32, MultiPoly> = HashMap::new();
    layer.insert(0, MultiPoly::one());
    for r in 0..n {
        let mut next: HashMap<u32, MultiPoly> = HashMap::new();
        let mut keys: Vec<u32> = layer.keys().copied().collect();
        keys.sort_unstable();
        for mask in keys {
            let acc = &layer[&mask];
            for c in 0..n {
                if mask & (1 << c) != 0 {
                    continue;
                }
                let e = m.get(r, c);
                if e.is_zero() {
                    continue;
                }
                // columns already used to the right of c are inversions
                let inversions = (mask >> (c + 1)).count_ones();
                let mut term = acc * e;
                if inversions % 2 == 1 {
                    term = -term;
                }
                *next.entry(mask | (1 << c)).or_default() += term;
            }
        }
        next.retain(|_, v| !v.is_zero());
        if next.is_empty() {
            return MultiPoly::zero();
        }
        layer = next;
    }
    layer.remove(&((1u32 << n) - 1)).unwrap_or_default()
}
