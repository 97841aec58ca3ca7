use serde::Serialize;

use super::{LgvError, PlanarNetwork};
use crate::matcore::MinorSpec;
use crate::polyalg::MultiPoly;

/// Default bound on the number of path systems one enumeration may produce.
pub const DEFAULT_SYSTEM_CAP: u64 = 5_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PermutationClass {
    /// Source `rows[i]` is joined to sink `cols[perm[i]]`.
    pub perm: Vec<usize>,
    pub sign: i8,
    pub systems: u64,
    pub weight: MultiPoly,
}

/// Vertex-disjoint path systems between chosen sources and sinks, grouped by
/// the permutation they induce.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DisjointSystems {
    pub classes: Vec<PermutationClass>,
    pub signed_sum: MultiPoly,
}

impl DisjointSystems {
    /// Number of systems whose permutation is not the identity.
    pub fn non_identity_systems(&self) -> u64 {
        self.classes.iter().filter(|c| c.perm.iter().enumerate().any(|(i, &p)| i != p)).map(|c| c.systems).sum()
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn sign(perm: &[usize]) -> i8 {
    let mut inv = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

struct Search<'a> {
    net: &'a PlanarNetwork,
    pairs: Vec<(usize, usize)>,
    reach: Vec<Vec<bool>>,
    used: Vec<bool>,
    count: u64,
    cap: u64,
}

impl Search<'_> {
    /// Weight of all disjoint completions from pair `k` onwards.
    fn systems(&mut self, k: usize) -> Result<MultiPoly, LgvError> {
        if k == self.pairs.len() {
            self.count += 1;
            if self.count > self.cap {
                return Err(LgvError::CapExceeded { cap: self.cap });
            }
            return Ok(MultiPoly::one());
        }
        let (s, t) = self.pairs[k];
        if self.used[s] || self.used[t] || !self.reach[k][s] {
            return Ok(MultiPoly::zero());
        }
        self.used[s] = true;
        let r = self.extend(k, s, t, &MultiPoly::one());
        self.used[s] = false;
        r
    }

    fn extend(&mut self, k: usize, v: usize, t: usize, weight: &MultiPoly) -> Result<MultiPoly, LgvError> {
        if v == t {
            let rest = self.systems(k + 1)?;
            return Ok(if rest.is_zero() { rest } else { weight * &rest });
        }
        let mut acc = MultiPoly::zero();
        let next: Vec<(usize, MultiPoly)> = self
            .net
            .out_arcs(v)
            .filter(|&(h, _)| !self.used[h] && self.reach[k][h])
            .map(|(h, w)| (h, w.clone()))
            .collect();
        for (h, w) in next {
            self.used[h] = true;
            let r = self.extend(k, h, t, &(weight * &w));
            self.used[h] = false;
            acc += r?;
        }
        Ok(acc)
    }
}

/// Enumerates vertex-disjoint systems joining the sources `rows` to the sinks
/// `cols` (indices into the network's ordered terminals) and returns their
/// sign-weighted sum.
pub fn enumerate_disjoint_systems(
    net: &PlanarNetwork,
    rows: &[usize],
    cols: &[usize],
    cap: u64,
) -> Result<DisjointSystems, LgvError> {
    if rows.len() != cols.len() {
        return Err(LgvError::BadParameters("source and sink sets differ in size".into()));
    }
    if rows.iter().any(|&i| i >= net.source_labels().len()) || cols.iter().any(|&j| j >= net.sink_labels().len()) {
        return Err(LgvError::BadParameters("terminal index out of range".into()));
    }
    let mut classes = Vec::new();
    let mut signed_sum = MultiPoly::zero();
    let mut total = 0u64;
    for perm in permutations(rows.len()) {
        let pairs: Vec<(usize, usize)> =
            (0..rows.len()).map(|i| (net.source_index(rows[i]), net.sink_index(cols[perm[i]]))).collect();
        let reach = pairs.iter().map(|&(_, t)| net.coreachable(t)).collect();
        let mut search = Search {
            net,
            pairs,
            reach,
            used: vec![false; net.vertex_count()],
            count: 0,
            cap: cap.saturating_sub(total),
        };
        let weight = search.systems(0)?;
        total += search.count;
        let sg = sign(&perm);
        if sg > 0 {
            signed_sum += &weight;
        } else {
            signed_sum -= &weight;
        }
        classes.push(PermutationClass { perm, sign: sg, systems: search.count, weight });
    }
    Ok(DisjointSystems { classes, signed_sum })
}

/// The walk-matrix minor equals the signed sum over disjoint path systems.
pub fn lgv_verify(net: &PlanarNetwork, spec: &MinorSpec) -> Result<bool, LgvError> {
    let w = net.walk_matrix();
    let minor = w.minor(spec)?;
    let sys = enumerate_disjoint_systems(net, &spec.rows, &spec.cols, DEFAULT_SYSTEM_CAP)?;
    Ok(minor == sys.signed_sum)
}
