use serde::Serialize;

use super::{PathError, WeightScheme, WeightTable};
use crate::polyalg::MultiPoly;

/// Default bound on the number of paths an enumeration may visit.
pub const DEFAULT_PATH_CAP: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Step {
    /// `(0, 1)`.
    Up,
    /// `(1, t + i)`.
    Slant(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticePath {
    pub steps: Vec<Step>,
}

impl LatticePath {
    /// Lattice points visited, starting at the origin, as `(x, y)`.
    pub fn points(&self, t: usize) -> Vec<(usize, usize)> {
        let mut pts = vec![(0, 0)];
        let (mut x, mut y) = (0, 0);
        for s in &self.steps {
            match s {
                Step::Up => y += 1,
                Step::Slant(i) => {
                    x += 1;
                    y += t + i;
                }
            }
            pts.push((x, y));
        }
        pts
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightedPath {
    pub path: LatticePath,
    pub weight: MultiPoly,
}

struct Walker<'a> {
    table: &'a WeightTable,
    target: (usize, usize),
    cap: u64,
    visited: u64,
    skip_zero: bool,
}

impl Walker<'_> {
    fn feasible(&self, x: usize, y: usize) -> bool {
        let (k, n) = self.target;
        x <= k && y <= n && y + self.table.t * (k - x) <= n
    }

    fn walk(
        &mut self,
        x: usize,
        y: usize,
        steps: &mut Vec<Step>,
        weight: &MultiPoly,
        visit: &mut dyn FnMut(&[Step], &MultiPoly),
    ) -> Result<(), PathError> {
        if (x, y) == self.target {
            self.visited += 1;
            if self.visited > self.cap {
                return Err(PathError::CapExceeded { cap: self.cap });
            }
            visit(steps, weight);
            return Ok(());
        }
        if self.feasible(x, y + 1) {
            let w = &self.table.b[y + 1];
            if !(self.skip_zero && w.is_zero()) {
                steps.push(Step::Up);
                self.walk(x, y + 1, steps, &(weight * w), visit)?;
                steps.pop();
            }
        }
        for i in 0..=self.table.ell {
            let ny = y + self.table.t + i;
            if self.feasible(x + 1, ny) {
                let w = &self.table.a[ny][i];
                if !(self.skip_zero && w.is_zero()) {
                    steps.push(Step::Slant(i));
                    self.walk(x + 1, ny, steps, &(weight * w), visit)?;
                    steps.pop();
                }
            }
        }
        Ok(())
    }
}

fn walk_all(
    scheme: &WeightScheme,
    k: usize,
    n: usize,
    cap: u64,
    skip_zero: bool,
    visit: &mut dyn FnMut(&[Step], &MultiPoly),
) -> Result<(), PathError> {
    let table = scheme.tabulate(n)?;
    let mut w = Walker { table: &table, target: (k, n), cap, visited: 0, skip_zero };
    if !w.feasible(0, 0) {
        return Ok(());
    }
    w.walk(0, 0, &mut Vec::new(), &MultiPoly::one(), visit)
}

/// Every path from `(0,0)` to `(k,n)`, zero-weight ones included, in depth-first order
/// (vertical step tried before slanted steps of increasing rise).
pub fn enumerate_paths(scheme: &WeightScheme, k: usize, n: usize, cap: u64) -> Result<Vec<WeightedPath>, PathError> {
    let mut out = Vec::new();
    walk_all(scheme, k, n, cap, false, &mut |steps, w| {
        out.push(WeightedPath { path: LatticePath { steps: steps.to_vec() }, weight: w.clone() })
    })?;
    Ok(out)
}

/// `M_{n,k}` as a plain sum over enumerated paths. Paths through a zero-weight
/// step are pruned, so the cap counts only paths that contribute.
pub fn matrix_entry_oracle(scheme: &WeightScheme, n: usize, k: usize) -> Result<MultiPoly, PathError> {
    matrix_entry_oracle_capped(scheme, n, k, DEFAULT_PATH_CAP)
}

pub fn matrix_entry_oracle_capped(scheme: &WeightScheme, n: usize, k: usize, cap: u64) -> Result<MultiPoly, PathError> {
    let mut acc = MultiPoly::zero();
    walk_all(scheme, k, n, cap, true, &mut |_, w| acc += w)?;
    Ok(acc)
}
