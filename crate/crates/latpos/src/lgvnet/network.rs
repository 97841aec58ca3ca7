use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::LgvError;
use crate::matcore::PolyMatrix;
use crate::polyalg::MultiPoly;

/// Integer grid position `(column, row)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GridPoint(pub i64, pub i64);

impl GridPoint {
    pub fn col(&self) -> i64 {
        self.0
    }

    pub fn row(&self) -> i64 {
        self.1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetArc {
    pub tail: GridPoint,
    pub head: GridPoint,
    pub weight: MultiPoly,
}

/// Collects arcs and named vertices before freezing them into a network.
#[derive(Default)]
pub struct NetworkBuilder {
    arcs: BTreeMap<(GridPoint, GridPoint), MultiPoly>,
    vertices: BTreeSet<GridPoint>,
    labels: BTreeMap<String, GridPoint>,
}

impl NetworkBuilder {
    pub fn new() -> NetworkBuilder {
        NetworkBuilder::default()
    }

    /// Adds an arc; arcs of weight zero are dropped since no walk can use them.
    pub fn arc(&mut self, tail: GridPoint, head: GridPoint, weight: MultiPoly) -> Result<(), LgvError> {
        self.vertices.insert(tail);
        self.vertices.insert(head);
        if weight.is_zero() {
            return Ok(());
        }
        if self.arcs.insert((tail, head), weight).is_some() {
            return Err(LgvError::DuplicateArc { tail, head });
        }
        Ok(())
    }

    pub fn vertex(&mut self, p: GridPoint) {
        self.vertices.insert(p);
    }

    pub fn label(&mut self, name: String, p: GridPoint) {
        self.labels.insert(name, p);
    }

    pub fn build(self, sources: Vec<String>, sinks: Vec<String>) -> Result<PlanarNetwork, LgvError> {
        PlanarNetwork::new(
            self.vertices.into_iter().collect(),
            self.arcs.into_iter().map(|((tail, head), weight)| NetArc { tail, head, weight }).collect(),
            self.labels,
            sources,
            sinks,
        )
    }
}

/// Finite acyclic directed graph on grid points, with ordered sources and sinks.
#[derive(Clone, Debug)]
pub struct PlanarNetwork {
    vertices: Vec<GridPoint>,
    index: HashMap<GridPoint, usize>,
    arcs: Vec<NetArc>,
    out: Vec<Vec<usize>>,
    topo: Vec<usize>,
    labels: BTreeMap<String, GridPoint>,
    source_labels: Vec<String>,
    sink_labels: Vec<String>,
    sources: Vec<usize>,
    sinks: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct NetworkJson {
    vertices: Vec<GridPoint>,
    arcs: Vec<NetArc>,
    labels: BTreeMap<String, GridPoint>,
    sources: Vec<String>,
    sinks: Vec<String>,
}

impl PlanarNetwork {
    pub fn new(
        vertices: Vec<GridPoint>,
        arcs: Vec<NetArc>,
        labels: BTreeMap<String, GridPoint>,
        sources: Vec<String>,
        sinks: Vec<String>,
    ) -> Result<PlanarNetwork, LgvError> {
        let mut vertices = vertices;
        vertices.extend(arcs.iter().flat_map(|a| [a.tail, a.head]));
        vertices.extend(labels.values().copied());
        vertices.sort();
        vertices.dedup();
        let index: HashMap<GridPoint, usize> = vertices.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let mut seen = BTreeSet::new();
        let mut out = vec![Vec::new(); vertices.len()];
        let mut indeg = vec![0usize; vertices.len()];
        for (k, a) in arcs.iter().enumerate() {
            if !seen.insert((a.tail, a.head)) {
                return Err(LgvError::DuplicateArc { tail: a.tail, head: a.head });
            }
            out[index[&a.tail]].push(k);
            indeg[index[&a.head]] += 1;
        }
        // Kahn's algorithm, smallest grid point first for a stable order
        let mut ready: BTreeSet<usize> = (0..vertices.len()).filter(|&v| indeg[v] == 0).collect();
        let mut topo = Vec::with_capacity(vertices.len());
        while let Some(v) = ready.pop_first() {
            topo.push(v);
            for &k in &out[v] {
                let h = index[&arcs[k].head];
                indeg[h] -= 1;
                if indeg[h] == 0 {
                    ready.insert(h);
                }
            }
        }
        if topo.len() != vertices.len() {
            return Err(LgvError::CycleDetected);
        }
        let resolve = |names: &[String]| -> Result<Vec<usize>, LgvError> {
            names
                .iter()
                .map(|n| labels.get(n).map(|p| index[p]).ok_or_else(|| LgvError::UnknownVertex(n.clone())))
                .collect()
        };
        let src = resolve(&sources)?;
        let snk = resolve(&sinks)?;
        Ok(PlanarNetwork {
            vertices,
            index,
            arcs,
            out,
            topo,
            labels,
            source_labels: sources,
            sink_labels: sinks,
            sources: src,
            sinks: snk,
        })
    }

    pub fn vertices(&self) -> &[GridPoint] {
        &self.vertices
    }

    pub fn arcs(&self) -> &[NetArc] {
        &self.arcs
    }

    pub fn labels(&self) -> &BTreeMap<String, GridPoint> {
        &self.labels
    }

    pub fn point(&self, label: &str) -> Result<GridPoint, LgvError> {
        self.labels.get(label).copied().ok_or_else(|| LgvError::UnknownVertex(label.to_string()))
    }

    pub fn source_labels(&self) -> &[String] {
        &self.source_labels
    }

    pub fn sink_labels(&self) -> &[String] {
        &self.sink_labels
    }

    pub fn source_points(&self) -> Vec<GridPoint> {
        self.sources.iter().map(|&v| self.vertices[v]).collect()
    }

    pub fn sink_points(&self) -> Vec<GridPoint> {
        self.sinks.iter().map(|&v| self.vertices[v]).collect()
    }

    pub(crate) fn source_index(&self, i: usize) -> usize {
        self.sources[i]
    }

    pub(crate) fn sink_index(&self, j: usize) -> usize {
        self.sinks[j]
    }

    pub(crate) fn out_arcs(&self, v: usize) -> impl Iterator<Item = (usize, &MultiPoly)> + '_ {
        self.out[v].iter().map(move |&k| (self.index[&self.arcs[k].head], &self.arcs[k].weight))
    }

    pub(crate) fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// True when every arc moves strictly to the right.
    pub fn arcs_increase_column(&self) -> bool {
        self.arcs.iter().all(|a| a.head.0 > a.tail.0)
    }

    /// Sum of weights of all walks from `from`, indexed by vertex.
    fn walks_from(&self, from: usize) -> Vec<MultiPoly> {
        let mut acc = vec![MultiPoly::zero(); self.vertices.len()];
        acc[from] = MultiPoly::one();
        for &v in &self.topo {
            if acc[v].is_zero() {
                continue;
            }
            let here = acc[v].clone();
            for &k in &self.out[v] {
                let h = self.index[&self.arcs[k].head];
                acc[h] += &here * &self.arcs[k].weight;
            }
        }
        acc
    }

    /// Total weight of walks between two grid points.
    pub fn path_weight(&self, from: GridPoint, to: GridPoint) -> Result<MultiPoly, LgvError> {
        let f = *self.index.get(&from).ok_or_else(|| LgvError::UnknownVertex(format!("{from:?}")))?;
        let t = *self.index.get(&to).ok_or_else(|| LgvError::UnknownVertex(format!("{to:?}")))?;
        Ok(self.walks_from(f).swap_remove(t))
    }

    /// Entry `(i,j)` is the total weight of walks from source `i` to sink `j`.
    pub fn walk_matrix(&self) -> PolyMatrix {
        let rows: Vec<Vec<MultiPoly>> = self
            .sources
            .iter()
            .map(|&s| {
                let w = self.walks_from(s);
                self.sinks.iter().map(|&t| w[t].clone()).collect()
            })
            .collect();
        PolyMatrix::from_fn(self.sources.len(), self.sinks.len(), |i, j| rows[i][j].clone())
    }

    /// Vertices that can reach `target`, as a mask.
    pub(crate) fn coreachable(&self, target: usize) -> Vec<bool> {
        let mut mask = vec![false; self.vertices.len()];
        mask[target] = true;
        for &v in self.topo.iter().rev() {
            if !mask[v] && self.out_arcs(v).any(|(h, _)| mask[h]) {
                mask[v] = true;
            }
        }
        mask
    }

    fn reachable_from(&self, starts: &[usize]) -> Vec<bool> {
        let mut mask = vec![false; self.vertices.len()];
        let mut queue: VecDeque<usize> = starts.iter().copied().collect();
        for &s in starts {
            mask[s] = true;
        }
        while let Some(v) = queue.pop_front() {
            for (h, _) in self.out_arcs(v) {
                if !mask[h] {
                    mask[h] = true;
                    queue.push_back(h);
                }
            }
        }
        mask
    }

    /// The union of all source-to-sink paths under new terminals; terminals stay even when isolated.
    pub fn restrict(&self, sources: Vec<String>, sinks: Vec<String>) -> Result<PlanarNetwork, LgvError> {
        let find = |names: &[String]| -> Result<Vec<usize>, LgvError> {
            names.iter().map(|n| Ok(self.index[&self.point(n)?])).collect()
        };
        let src = find(&sources)?;
        let snk = find(&sinks)?;
        let fwd = self.reachable_from(&src);
        let mut back = vec![false; self.vertices.len()];
        for &t in &snk {
            for (v, on) in self.coreachable(t).into_iter().enumerate() {
                back[v] |= on;
            }
        }
        let keep = |p: &GridPoint| {
            let v = self.index[p];
            (fwd[v] && back[v]) || src.contains(&v) || snk.contains(&v)
        };
        let arcs: Vec<NetArc> = self.arcs.iter().filter(|a| keep(&a.tail) && keep(&a.head)).cloned().collect();
        let vertices: Vec<GridPoint> = self.vertices.iter().filter(|p| keep(p)).copied().collect();
        let kept: BTreeSet<GridPoint> = vertices.iter().copied().collect();
        let labels = self.labels.iter().filter(|(_, p)| kept.contains(p)).map(|(k, p)| (k.clone(), *p)).collect();
        PlanarNetwork::new(vertices, arcs, labels, sources, sinks)
    }

    /// Removes interior vertices that sit on a chain of weight-one arcs, joining
    /// their two arcs into one. Labelled vertices in `keep` and the terminals stay.
    pub fn contract_unit_chains(&self, keep: &BTreeSet<GridPoint>) -> Result<PlanarNetwork, LgvError> {
        let mut arcs: BTreeMap<(GridPoint, GridPoint), MultiPoly> =
            self.arcs.iter().map(|a| ((a.tail, a.head), a.weight.clone())).collect();
        let mut protected: BTreeSet<GridPoint> = keep.clone();
        protected.extend(self.source_points());
        protected.extend(self.sink_points());
        let mut vertices: BTreeSet<GridPoint> = self.vertices.iter().copied().collect();
        loop {
            let mut changed = false;
            let candidates: Vec<GridPoint> = vertices.iter().filter(|p| !protected.contains(p)).copied().collect();
            for v in candidates {
                let ins: Vec<(GridPoint, GridPoint)> = arcs.keys().filter(|k| k.1 == v).copied().collect();
                let outs: Vec<(GridPoint, GridPoint)> = arcs.keys().filter(|k| k.0 == v).copied().collect();
                if ins.len() != 1 || outs.len() != 1 {
                    continue;
                }
                let (i, o) = (ins[0], outs[0]);
                if !arcs[&i].is_one() || !arcs[&o].is_one() || arcs.contains_key(&(i.0, o.1)) {
                    continue;
                }
                arcs.remove(&i);
                arcs.remove(&o);
                arcs.insert((i.0, o.1), MultiPoly::one());
                vertices.remove(&v);
                changed = true;
            }
            if !changed {
                break;
            }
        }
        let labels = self.labels.iter().filter(|(_, p)| vertices.contains(p)).map(|(k, p)| (k.clone(), *p)).collect();
        PlanarNetwork::new(
            vertices.into_iter().collect(),
            arcs.into_iter().map(|((tail, head), weight)| NetArc { tail, head, weight }).collect(),
            labels,
            self.source_labels.clone(),
            self.sink_labels.clone(),
        )
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(NetworkJson {
            vertices: self.vertices.clone(),
            arcs: self.arcs.clone(),
            labels: self.labels.clone(),
            sources: self.source_labels.clone(),
            sinks: self.sink_labels.clone(),
        })
        .expect("network serialises")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<PlanarNetwork, LgvError> {
        let raw: NetworkJson = serde_json::from_value(v.clone()).map_err(|e| LgvError::Json(e.to_string()))?;
        PlanarNetwork::new(raw.vertices, raw.arcs, raw.labels, raw.sources, raw.sinks)
    }
}
