use serde::{Deserialize, Serialize};

use super::{GridPoint, LgvError, NetworkBuilder, PlanarNetwork};
use crate::matcore::{factor_product, tridiag_factor_params, TridiagFactors};
use crate::pathmodel::{WeightRule, WeightScheme};
use crate::polyalg::MultiPoly;

/// How the slanted-step band of a stage is factored.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StageKind {
    /// Width-three band as a product of two bidiagonal factors with
    /// index-dependent weights.
    Tridiag { factors: TridiagFactors },
    /// Band of `prod_j (alpha_j z + beta_j)`, with constant weights.
    General { alphas: Vec<MultiPoly>, betas: Vec<MultiPoly> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetworkParams {
    pub t: usize,
    pub b: WeightRule,
    pub stage: StageKind,
}

impl NetworkParams {
    pub fn tridiag(t: usize, b: WeightRule, factors: TridiagFactors) -> NetworkParams {
        NetworkParams { t, b, stage: StageKind::Tridiag { factors } }
    }

    pub fn general(t: usize, b: WeightRule, alphas: Vec<MultiPoly>, betas: Vec<MultiPoly>) -> NetworkParams {
        NetworkParams { t, b, stage: StageKind::General { alphas, betas } }
    }

    fn check(&self) -> Result<(), LgvError> {
        if self.t == 0 {
            return Err(LgvError::BadParameters("networks need t >= 1".into()));
        }
        if let StageKind::General { alphas, betas } = &self.stage {
            if alphas.is_empty() || alphas.len() != betas.len() {
                return Err(LgvError::BadParameters("need equally many alphas and betas, at least one".into()));
            }
        }
        Ok(())
    }

    /// Column span of stage `m`.
    fn width(&self, m: usize) -> i64 {
        match &self.stage {
            StageKind::Tridiag { .. } => m as i64 + 2,
            StageKind::General { alphas, .. } => (m + alphas.len()) as i64,
        }
    }

    /// The weight scheme whose path matrix the networks realise.
    pub fn scheme(&self) -> WeightScheme {
        match &self.stage {
            StageKind::Tridiag { factors } => tridiag_factor_params(self.t, self.b.clone(), factors),
            StageKind::General { alphas, betas } => {
                let a: Vec<WeightRule> = factor_product(alphas, betas).into_iter().map(WeightRule::constant).collect();
                WeightScheme { t: self.t, ell: alphas.len(), a, b: self.b.clone() }
            }
        }
    }

    /// True when every stage carries the same weights, i.e. nothing depends on the index.
    pub fn stage_invariant(&self) -> bool {
        let b_const = self.b.as_constant().is_some();
        match &self.stage {
            StageKind::General { .. } => b_const,
            StageKind::Tridiag { factors } => {
                b_const
                    && [&factors.alpha, &factors.beta, &factors.lambda, &factors.mu]
                        .iter()
                        .all(|r| r.as_constant().is_some())
            }
        }
    }
}

pub fn q_label(j: usize, m: usize) -> String {
    format!("Q_{j}^({m})")
}

pub fn r_label(a: usize, m: usize) -> String {
    format!("R_{a}^({m})")
}

fn eval(rule: &WeightRule, n: i64) -> Result<MultiPoly, LgvError> {
    Ok(rule.eval(n)?)
}

/// Adds stage `m` with its first column at `start`; local vertex `(i, j)` sits
/// at grid point `(start + i - 1, j)`.
fn add_stage(bld: &mut NetworkBuilder, p: &NetworkParams, m: usize, start: i64) -> Result<(), LgvError> {
    let n = m as i64;
    let t = p.t as i64;
    let at = |i: i64, j: i64| GridPoint(start + i - 1, j);
    let one = MultiPoly::one;
    for i in 1..=n {
        for j in 1..=n {
            bld.arc(at(i, j), at(i + 1, j), one())?;
        }
        bld.arc(at(i, i), at(i + 1, i + 1), eval(&p.b, n + 1 - i)?)?;
    }
    for j in 1..=n + 1 {
        bld.vertex(at(1, j));
    }
    match &p.stage {
        StageKind::Tridiag { factors: f } => {
            for i in 1..=n + 2 {
                bld.arc(at(i, n + 1), at(i + 1, n + 1), one())?;
            }
            for j in 1..=n {
                bld.arc(at(n + 2, j), at(n + 3, j), eval(&f.lambda, n + t - j)?)?;
            }
            for j in 1..=n - 1 {
                bld.arc(at(n + 2, j), at(n + 3, j + 1), eval(&f.mu, n + t - j)?)?;
            }
            for j in 1..=n + 1 - t {
                bld.arc(at(n + 1, j), at(n + 2, j + t - 1), eval(&f.alpha, n + 1 - j)?)?;
            }
            for j in 1..=n - t {
                bld.arc(at(n + 1, j), at(n + 2, j + t), eval(&f.beta, n + 1 - j)?)?;
            }
            for j in 1..=n + 1 {
                bld.vertex(at(n + 3, j));
            }
        }
        StageKind::General { alphas, betas } => {
            let ell = alphas.len() as i64;
            for i in 1..=n + ell {
                bld.arc(at(i, n + 1), at(i + 1, n + 1), one())?;
            }
            for i in n + 2..=n + ell {
                let k = (i - n - 1) as usize;
                for j in 1..=n {
                    bld.arc(at(i, j), at(i + 1, j), betas[k].clone())?;
                }
                for j in 1..=n - 1 {
                    bld.arc(at(i, j), at(i + 1, j + 1), alphas[k].clone())?;
                }
            }
            for j in 1..=n + 1 - t {
                bld.arc(at(n + 1, j), at(n + 2, j + t - 1), betas[0].clone())?;
            }
            for j in 1..=n - t {
                bld.arc(at(n + 1, j), at(n + 2, j + t), alphas[0].clone())?;
            }
            for j in 1..=n + 1 {
                bld.vertex(at(n + ell + 1, j));
            }
        }
    }
    Ok(())
}

/// The one-stage network: walks from `Q_i^(n)` to `Q_j^(n-1)` realise
/// the production matrix with columns `1..=t` removed, leading `(n+1)x(n+1)` block.
///
/// Terminal order runs from the top row down, so index `i` is `Q_{n-i}`.
pub fn build_gamma(n: usize, p: &NetworkParams) -> Result<PlanarNetwork, LgvError> {
    p.check()?;
    if n == 0 {
        return Err(LgvError::BadParameters("stage index must be at least 1".into()));
    }
    let mut bld = NetworkBuilder::new();
    add_stage(&mut bld, p, n, 1)?;
    let sink_col = 1 + p.width(n);
    for j in 0..=n {
        bld.label(q_label(j, n), GridPoint(1, j as i64 + 1));
        bld.label(q_label(j, n - 1), GridPoint(sink_col, j as i64 + 1));
    }
    let sources = (0..=n).map(|i| q_label(n - i, n)).collect();
    let sinks = (0..=n).map(|i| q_label(n - i, n - 1)).collect();
    bld.build(sources, sinks)
}

/// Stage `m` starts at column `starts[m]`; `starts[0]` is the final sink column.
fn stage_starts(n: usize, p: &NetworkParams) -> Vec<i64> {
    let mut starts = vec![0i64; n + 1];
    starts[n] = 1;
    for m in (1..=n).rev() {
        starts[m - 1] = starts[m] + p.width(m);
    }
    starts
}

fn star_builder(n: usize, p: &NetworkParams) -> Result<NetworkBuilder, LgvError> {
    let mut bld = NetworkBuilder::new();
    let starts = stage_starts(n, p);
    for m in 1..=n {
        add_stage(&mut bld, p, m, starts[m])?;
    }
    // chains of weight-one arcs carrying height h past the stages below it
    for h in 2..=n {
        for i in (1..h).rev() {
            bld.arc(GridPoint(starts[i], h as i64 + 1), GridPoint(starts[i - 1], h as i64 + 1), MultiPoly::one())?;
        }
    }
    for (m, &col) in starts.iter().enumerate() {
        for j in 0..=n {
            bld.label(q_label(j, m), GridPoint(col, j as i64 + 1));
        }
        for a in 0..=m {
            bld.label(r_label(a, m), GridPoint(col + a as i64, a as i64 + 1));
        }
    }
    if n == 0 {
        bld.vertex(GridPoint(1, 1));
    }
    Ok(bld)
}

/// Stages `n, n-1, ..., 1` glued sink to source. Walks from `Q_i^(n)` to
/// `Q_j^(0)` realise the leading `(n+1)x(n+1)` block of the path matrix.
pub fn build_gamma_star(n: usize, p: &NetworkParams) -> Result<PlanarNetwork, LgvError> {
    p.check()?;
    let bld = star_builder(n, p)?;
    let sources = (0..=n).map(|i| q_label(n - i, n)).collect();
    let sinks = (0..=n).map(|i| q_label(n - i, 0)).collect();
    bld.build(sources, sinks)
}

/// Network whose walk matrix is the Toeplitz window `B_{i,j} = M_{n,i-j}`,
/// `0 <= i, j <= k`: sources `Q_i^(n+i)`, sinks `Q_{n+j}^(0)`.
pub fn build_gamma_diamond(n: usize, k: usize, p: &NetworkParams) -> Result<PlanarNetwork, LgvError> {
    p.check()?;
    let big = star_builder(n + k, p)?.build(vec![], vec![])?;
    let sources = (0..=k).map(|i| q_label(i, n + i)).collect();
    let sinks = (0..=k).map(|j| q_label(n + j, 0)).collect();
    big.restrict(sources, sinks)
}

/// Parameters of the diagonal-sequence network.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagonalWindow {
    pub n: usize,
    pub k: usize,
    pub delta: usize,
    pub sigma: usize,
    pub m: usize,
}

impl DiagonalWindow {
    pub fn check(&self) -> Result<(), LgvError> {
        if self.k > self.n || self.delta == 0 || self.k >= self.sigma || self.delta >= self.sigma {
            return Err(LgvError::BadParameters("need 0 <= k <= n, delta > 0 and max(k, delta) < sigma".into()));
        }
        Ok(())
    }
}

/// Network whose walk matrix is `B_{i,j} = M_{n+(i-j)delta, k+(i-j)sigma}`,
/// `0 <= i, j <= m`. Needs stage-invariant weights.
pub fn build_gamma_circ(w: &DiagonalWindow, p: &NetworkParams) -> Result<PlanarNetwork, LgvError> {
    p.check()?;
    w.check()?;
    if !p.stage_invariant() {
        return Err(LgvError::BadParameters("diagonal networks need index-free weights".into()));
    }
    let DiagonalWindow { n, k, delta, sigma, m } = *w;
    let big = star_builder(n + m * sigma, p)?.build(vec![], vec![])?;
    let sources = (0..=m).map(|i| r_label((sigma - delta) * i, n + i * sigma)).collect();
    let sinks = (0..=m).map(|j| r_label(n - k + (sigma - delta) * j, n - k + j * sigma)).collect();
    big.restrict(sources, sinks)
}

/// Whole glued network with no terminals selected, for point-to-point queries.
pub fn build_gamma_star_bare(n: usize, p: &NetworkParams) -> Result<PlanarNetwork, LgvError> {
    p.check()?;
    star_builder(n, p)?.build(vec![], vec![])
}
