use serde::{Deserialize, Serialize};

use super::{PathError, WeightScheme, WeightTable};
use crate::matcore::PolyMatrix;
use crate::polyalg::MultiPoly;

/// Which way round the path matrix is stored.
///
/// `M` has rows indexed by height; `T` is the same array with the roles of
/// the two indices exchanged, so its weights are indexed by the column.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    M,
    T,
}

/// Rows `0..rows` and columns `0..cols` of a path matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleTruncation {
    pub orientation: Orientation,
    pub t: usize,
    pub entries: PolyMatrix,
}

impl TriangleTruncation {
    pub fn rows(&self) -> usize {
        self.entries.rows()
    }

    pub fn cols(&self) -> usize {
        self.entries.cols()
    }

    pub fn get(&self, n: usize, k: usize) -> Option<&MultiPoly> {
        (n < self.rows() && k < self.cols()).then(|| self.entries.get(n, k))
    }
}

fn build(
    rows: usize,
    cols: usize,
    mut f: impl FnMut(&[Vec<MultiPoly>], usize, usize) -> MultiPoly,
) -> Vec<Vec<MultiPoly>> {
    let mut m: Vec<Vec<MultiPoly>> = Vec::with_capacity(rows);
    for n in 0..rows {
        m.push(Vec::with_capacity(cols));
        for k in 0..cols {
            let v = f(&m, n, k);
            m[n].push(v);
        }
    }
    m
}

fn at(m: &[Vec<MultiPoly>], n: i64, k: i64) -> Option<&MultiPoly> {
    if n < 0 || k < 0 {
        return None;
    }
    m.get(n as usize).and_then(|r| r.get(k as usize))
}

fn finish(m: Vec<Vec<MultiPoly>>, orientation: Orientation, t: usize, rows: usize, cols: usize) -> TriangleTruncation {
    TriangleTruncation { orientation, t, entries: PolyMatrix::from_fn(rows, cols, |i, j| m[i][j].clone()) }
}

fn b_product(w: &WeightTable, hi: usize, count: usize) -> MultiPoly {
    // b_hi * b_{hi-1} * ... (count factors)
    (0..count).map(|i| w.b(hi as i64 - i as i64).clone()).product()
}

/// First-order recurrence on the last step:
/// `M_{n,k} = sum_i a_n^(i) M_{n-t-i,k-1} + b_n M_{n-1,k}` for `n >= t`,
/// with the initial values of the model below height `t`.
pub fn build_matrix_rec1(scheme: &WeightScheme, n_max: usize, k_max: usize) -> Result<TriangleTruncation, PathError> {
    let w = scheme.tabulate(n_max)?;
    let t = scheme.t;
    let m = build(n_max + 1, k_max + 1, |m, n, k| {
        if n == 0 && k == 0 {
            return MultiPoly::one();
        }
        if t == 0 && n == 0 {
            return w.a(0, 0).pow(k as u32);
        }
        if n < t {
            return if k == 0 { b_product(&w, n, n) } else { MultiPoly::zero() };
        }
        let mut acc = MultiPoly::zero();
        for i in 0..=scheme.ell {
            if let Some(prev) = at(m, n as i64 - (t + i) as i64, k as i64 - 1) {
                if !prev.is_zero() {
                    acc += w.a(n as i64, i) * prev;
                }
            }
        }
        if let Some(prev) = at(m, n as i64 - 1, k as i64) {
            if !prev.is_zero() {
                acc += w.b(n as i64) * prev;
            }
        }
        acc
    });
    Ok(finish(m, Orientation::M, t, n_max + 1, k_max + 1))
}

/// Recurrence on the last slanted step, grouping the run of vertical steps
/// after it: every entry of column `k` comes from column `k-1` only.
pub fn build_matrix_rec2(scheme: &WeightScheme, n_max: usize, k_max: usize) -> Result<TriangleTruncation, PathError> {
    let w = scheme.tabulate(n_max)?;
    let (t, ell) = (scheme.t as i64, scheme.ell as i64);
    let m = build(n_max + 1, k_max + 1, |m, n, k| {
        let n = n as i64;
        if k == 0 {
            return b_product(&w, n as usize, n as usize);
        }
        let prev = |row: i64| at(m, row, k as i64 - 1).filter(|p| !p.is_zero());
        let mut acc = MultiPoly::zero();
        for j in 0..=ell {
            if let Some(p) = prev(n - t - j) {
                let mut c = MultiPoly::zero();
                for mm in 0..=j {
                    c += w.a(n - mm, (j - mm) as usize) * &b_product(&w, n as usize, mm as usize);
                }
                acc += &c * p;
            }
        }
        let mut j = 0;
        while n - t - ell - j - 1 >= 0 {
            if let Some(p) = prev(n - t - ell - j - 1) {
                let mut c = MultiPoly::zero();
                for mm in 0..=ell {
                    c += w.a(n - j - mm - 1, (ell - mm) as usize) * &b_product(&w, n as usize, (j + mm + 1) as usize);
                }
                acc += &c * p;
            }
            j += 1;
        }
        acc
    });
    Ok(finish(m, Orientation::M, scheme.t, n_max + 1, k_max + 1))
}

/// The path matrix with its indices exchanged, built by the mirrored
/// recurrence `T_{n,k} = sum_i a_k^(i) T_{n-1,k-t-i} + b_k T_{n,k-1}`.
pub fn build_transpose_rec(scheme: &WeightScheme, n_max: usize, k_max: usize) -> Result<TriangleTruncation, PathError> {
    let w = scheme.tabulate(k_max)?;
    let t = scheme.t;
    let m = build(n_max + 1, k_max + 1, |m, n, k| {
        if n == 0 && k == 0 {
            return MultiPoly::one();
        }
        if t == 0 && k == 0 {
            return w.a(0, 0).pow(n as u32);
        }
        if k < t {
            return if n == 0 { b_product(&w, k, k) } else { MultiPoly::zero() };
        }
        let mut acc = MultiPoly::zero();
        for i in 0..=scheme.ell {
            if let Some(prev) = at(m, n as i64 - 1, k as i64 - (t + i) as i64) {
                if !prev.is_zero() {
                    acc += w.a(k as i64, i) * prev;
                }
            }
        }
        if let Some(prev) = at(m, n as i64, k as i64 - 1) {
            if !prev.is_zero() {
                acc += w.b(k as i64) * prev;
            }
        }
        acc
    });
    Ok(finish(m, Orientation::T, t, n_max + 1, k_max + 1))
}

/// Builds a `rows x cols` truncation in the requested orientation, by first-order recurrence.
pub fn build_oriented(
    scheme: &WeightScheme,
    orientation: Orientation,
    rows: usize,
    cols: usize,
) -> Result<TriangleTruncation, PathError> {
    if rows == 0 || cols == 0 {
        return Err(PathError::BadRule("a truncation needs at least one row and column".into()));
    }
    match orientation {
        Orientation::M => build_matrix_rec1(scheme, rows - 1, cols - 1),
        Orientation::T => build_transpose_rec(scheme, rows - 1, cols - 1),
    }
}
