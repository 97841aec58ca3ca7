use serde::{Deserialize, Serialize};

use super::{MatError, PolyMatrix};
use crate::pathmodel::{build_matrix_rec1, WeightRule, WeightScheme, WeightTable};
use crate::polyalg::MultiPoly;

/// `T_{i,j} = seq[i-j]`, zero outside the sequence.
pub fn toeplitz(seq: &[MultiPoly], size: usize) -> PolyMatrix {
    PolyMatrix::from_fn(
        size,
        size,
        |i, j| {
            if i >= j && i - j < seq.len() {
                seq[i - j].clone()
            } else {
                MultiPoly::zero()
            }
        },
    )
}

/// Banded matrix with `A_{i,j} = a_i^(i-j)` for `i - ell <= j <= i`.
pub fn build_a_matrix(scheme: &WeightScheme, size: usize) -> Result<PolyMatrix, MatError> {
    let w = scheme.tabulate(size.saturating_sub(1))?;
    Ok(PolyMatrix::from_fn(size, size, |i, j| {
        if j <= i && i - j <= scheme.ell {
            w.a(i as i64, i - j).clone()
        } else {
            MultiPoly::zero()
        }
    }))
}

fn b_run(w: &WeightTable, hi: i64, count: i64) -> MultiPoly {
    (0..count).map(|i| w.b(hi - i).clone()).product()
}

fn p_entry(w: &WeightTable, n: i64, k: i64) -> MultiPoly {
    let ell = w.ell as i64;
    if k == 0 {
        return b_run(w, n, n);
    }
    if n < k - 1 {
        return MultiPoly::zero();
    }
    if n <= k + ell - 1 {
        let mut acc = MultiPoly::zero();
        for m in 0..=(n - k + 1) {
            let sup = n - k - m + 1;
            if sup <= ell {
                acc += w.a(n - m, sup as usize) * &b_run(w, n, m);
            }
        }
        return acc;
    }
    let mut acc = MultiPoly::zero();
    for m in 0..=ell {
        acc += w.a(k + ell - m - 1, (ell - m) as usize) * &b_run(w, n, n + m - k - ell + 1);
    }
    acc
}

/// The production matrix of the one-step decomposition, `rows x cols`.
///
/// Entry `(n,k)` with `k >= 1` sums the paths that take one slanted step into
/// column one and then climb with vertical steps, measured as if `t = 0`.
pub fn build_p_rect(scheme: &WeightScheme, rows: usize, cols: usize) -> Result<PolyMatrix, MatError> {
    let w = scheme.tabulate(rows.max(cols))?;
    Ok(PolyMatrix::from_fn(rows, cols, |n, k| p_entry(&w, n as i64, k as i64)))
}

pub fn build_p_matrix(scheme: &WeightScheme, size: usize) -> Result<PolyMatrix, MatError> {
    build_p_rect(scheme, size, size)
}

/// The production matrix with columns `1..=t` removed.
pub fn build_p_tilde(scheme: &WeightScheme, rows: usize, cols: usize) -> Result<PolyMatrix, MatError> {
    let t = scheme.t;
    let w = scheme.tabulate(rows.max(cols + t))?;
    Ok(PolyMatrix::from_fn(rows, cols, |n, j| {
        let k = if j == 0 { 0 } else { j + t };
        p_entry(&w, n as i64, k as i64)
    }))
}

/// `(1, A)`: first column `e_0`, followed by the columns of `A`.
pub fn build_delta(scheme: &WeightScheme, size: usize) -> Result<PolyMatrix, MatError> {
    let a = build_a_matrix(scheme, size)?;
    Ok(PolyMatrix::from_fn(size, size, |i, j| match (i, j) {
        (0, 0) => MultiPoly::one(),
        (_, 0) => MultiPoly::zero(),
        _ => a.get(i, j - 1).clone(),
    }))
}

/// Identity plus `x` at position `(i, j)`.
pub fn elementary(size: usize, i: usize, j: usize, x: MultiPoly) -> PolyMatrix {
    let mut m = PolyMatrix::identity(size);
    m.set(i, j, x);
    m
}

/// `E_{size-1,size-2}[b_{size-1}] ... E_{2,1}[b_2] E_{1,0}[b_1]`.
pub fn build_l_matrix(scheme: &WeightScheme, size: usize) -> Result<PolyMatrix, MatError> {
    let mut l = PolyMatrix::identity(size);
    for i in 1..size {
        l = elementary(size, i, i - 1, scheme.b(i)?).mul(&l)?;
    }
    Ok(l)
}

/// Checks `P = L (1, A)` on a `size x size` window. Both factors are lower
/// triangular in the sense needed for the window to be exact.
pub fn verify_connection(scheme: &WeightScheme, size: usize) -> Result<bool, MatError> {
    let lhs = build_p_matrix(scheme, size)?;
    let rhs = build_l_matrix(scheme, size)?.mul(&build_delta(scheme, size)?)?;
    Ok(lhs == rhs)
}

/// Checks that the path matrix factors through one step of the production matrix:
/// columns `0..=kmax` of rows `0..size` equal `P~ (1 ⊕ M)` with `M` one column
/// shorter, and for `t >= 1` each leading block `M_n = P~_n (1 ⊕ M_{n-1})`.
pub fn verify_decomposition(scheme: &WeightScheme, kmax: usize, size: usize) -> Result<bool, MatError> {
    if size == 0 {
        return Ok(true);
    }
    let m = build_matrix_rec1(scheme, size, kmax.max(size))?.entries;
    let pt = build_p_tilde(scheme, size, size + 1)?;
    for k in 0..=kmax {
        let lhs = m.leading(size, k + 1);
        let rhs = pt.mul(&m.leading(size, k).one_plus())?;
        if lhs != rhs {
            return Ok(false);
        }
    }
    if scheme.t >= 1 {
        for n in 1..size {
            let lhs = m.leading(n + 1, n + 1);
            let rhs = pt.leading(n + 1, n + 1).mul(&m.leading(n, n).one_plus())?;
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Weights of a factorisation of a width-three band into two bidiagonal factors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TridiagFactors {
    pub alpha: WeightRule,
    pub beta: WeightRule,
    pub lambda: WeightRule,
    pub mu: WeightRule,
}

/// The scheme with `ell = 2` and
/// `a^(0)_n = alpha_n lambda_n`,
/// `a^(1)_n = alpha_n mu_n + beta_n lambda_{n-1}`,
/// `a^(2)_n = beta_n mu_{n-1}`.
pub fn tridiag_factor_params(t: usize, b: WeightRule, f: &TridiagFactors) -> WeightScheme {
    let a0 = WeightRule::product(vec![f.alpha.clone(), f.lambda.clone()]);
    let a1 = WeightRule::sum(vec![
        WeightRule::product(vec![f.alpha.clone(), f.mu.clone()]),
        WeightRule::product(vec![f.beta.clone(), f.lambda.clone().shift(-1)]),
    ]);
    let a2 = WeightRule::product(vec![f.beta.clone(), f.mu.clone().shift(-1)]);
    WeightScheme { t, ell: 2, a: vec![a0, a1, a2], b }
}

/// The four ready-made factorisations for given outer bands `a^(0)` and `a^(2)`.
/// Each reproduces both outer bands and fixes the middle band.
pub fn tridiag_recipe(variant: u8, a0: &WeightRule, a2: &WeightRule) -> Result<TridiagFactors, MatError> {
    let one = WeightRule::constant(MultiPoly::one());
    // beta_1 = 0 and beta_n = x_n for n >= 2
    let from_two = |x: WeightRule| WeightRule::table(vec![MultiPoly::zero(), MultiPoly::zero()], 0, Some(x));
    let f = match variant {
        1 => TridiagFactors { alpha: a0.clone(), beta: from_two(a2.clone()), lambda: one.clone(), mu: one },
        2 => TridiagFactors { alpha: one.clone(), beta: from_two(one), lambda: a0.clone(), mu: a2.clone().shift(1) },
        3 => TridiagFactors { alpha: one.clone(), beta: from_two(a2.clone()), lambda: a0.clone(), mu: one },
        4 => TridiagFactors { alpha: a0.clone(), beta: from_two(one.clone()), lambda: one, mu: a2.clone().shift(1) },
        _ => return Err(MatError::BadParameters(format!("no factorisation recipe {variant}"))),
    };
    Ok(f)
}

/// Coefficients of `prod_j (alpha_j z + beta_j)`, constant term first.
pub fn factor_product(alphas: &[MultiPoly], betas: &[MultiPoly]) -> Vec<MultiPoly> {
    let mut coeffs = vec![MultiPoly::one()];
    for (al, be) in alphas.iter().zip(betas) {
        let mut next = vec![MultiPoly::zero(); coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i] += c * be;
            next[i + 1] += c * al;
        }
        coeffs = next;
    }
    coeffs
}

/// Lower bidiagonal: `beta` on the diagonal, `alpha` just below it.
pub fn bidiagonal(alpha: &MultiPoly, beta: &MultiPoly, size: usize) -> PolyMatrix {
    PolyMatrix::from_fn(size, size, |i, j| {
        if i == j {
            beta.clone()
        } else if i == j + 1 {
            alpha.clone()
        } else {
            MultiPoly::zero()
        }
    })
}

/// Checks that the Toeplitz matrix of `prod (alpha_j z + beta_j)` equals the
/// product of the bidiagonal factors, on a `size x size` window.
pub fn verify_w_factorization(alphas: &[MultiPoly], betas: &[MultiPoly], size: usize) -> Result<bool, MatError> {
    if alphas.len() != betas.len() {
        return Err(MatError::BadParameters("alpha and beta lists differ in length".into()));
    }
    let lhs = toeplitz(&factor_product(alphas, betas), size);
    let mut rhs = PolyMatrix::identity(size);
    for (al, be) in alphas.iter().zip(betas) {
        rhs = rhs.mul(&bidiagonal(al, be, size))?;
    }
    Ok(lhs == rhs)
}
