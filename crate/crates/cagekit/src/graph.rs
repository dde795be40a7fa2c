//! Immutable bipartite graph storage and the exact verification kernel:
//! girth, diameter, degrees, bipartiteness and pairwise distances.
//!
//! Adjacency is stored CSR-style (an offset index into one contiguous,
//! per-vertex-sorted neighbour array), which keeps the BFS kernels
//! allocation-free and cache-friendly. Graphs are immutable after
//! construction; every query is read-only and safe to run concurrently.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU32, Ordering};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::label::{Label, LabelCodec};

/// Sentinel for "unreached" in BFS distance arrays.
pub const UNREACHED: u32 = u32::MAX;

/// Moore lower bound 2(1 + (k-1) + (k-1)^2 + (k-1)^3) on the order of a
/// k-regular graph of girth 8.
pub fn moore_bound(k: u64) -> Result<u64> {
    if k < 2 {
        return Err(Error::InvalidDegree(k));
    }
    let r = k - 1;
    Ok(2 * (1 + r + r * r + r * r * r))
}

/// A sorted, duplicate-free set of vertex indices.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VertexSet {
    items: Vec<u32>,
}

impl VertexSet {
    pub fn new() -> VertexSet {
        VertexSet { items: Vec::new() }
    }

    pub fn from_vec(mut items: Vec<u32>) -> VertexSet {
        items.sort_unstable();
        items.dedup();
        VertexSet { items }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.items.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    #[inline]
    pub fn contains(&self, v: u32) -> bool {
        self.items.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.items.iter().copied()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.items
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut items = self.items.clone();
        items.extend_from_slice(&other.items);
        VertexSet::from_vec(items)
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let items = self
            .items
            .iter()
            .copied()
            .filter(|&v| other.contains(v))
            .collect();
        VertexSet { items }
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let items = self
            .items
            .iter()
            .copied()
            .filter(|&v| !other.contains(v))
            .collect();
        VertexSet { items }
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.intersection(other).is_empty()
    }

    /// Every index in `0..order` that is not in the set.
    pub fn complement(&self, order: usize) -> VertexSet {
        let items = (0..order as u32).filter(|&v| !self.contains(v)).collect();
        VertexSet { items }
    }

    pub fn to_mask(&self, order: usize) -> Vec<bool> {
        let mut mask = vec![false; order];
        for &v in &self.items {
            mask[v as usize] = true;
        }
        mask
    }
}

impl FromIterator<u32> for VertexSet {
    fn from_iter<T: IntoIterator<Item = u32>>(iter: T) -> VertexSet {
        VertexSet::from_vec(iter.into_iter().collect())
    }
}

/// Label bookkeeping for constructed graphs: the codec plus each vertex's
/// codec index, kept strictly increasing so vertex order equals codec order.
#[derive(Debug, Clone)]
pub struct Labeling {
    codec: LabelCodec,
    codec_indices: Vec<u32>,
}

impl Labeling {
    pub fn new(codec: LabelCodec, codec_indices: Vec<u32>) -> Result<Labeling> {
        if !codec_indices.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::Construction(
                "labeling indices must be strictly increasing".into(),
            ));
        }
        if let Some(&last) = codec_indices.last() {
            if last >= codec.order() {
                return Err(Error::Construction("label index out of codec range".into()));
            }
        }
        Ok(Labeling {
            codec,
            codec_indices,
        })
    }

    /// Identity labeling: the whole codec range.
    pub fn full(codec: LabelCodec) -> Labeling {
        Labeling {
            codec_indices: (0..codec.order()).collect(),
            codec,
        }
    }

    #[inline]
    pub fn codec(&self) -> &LabelCodec {
        &self.codec
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.codec_indices.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.codec_indices.is_empty()
    }

    pub fn label_of(&self, vertex: u32) -> Label {
        self.codec.decode(self.codec_indices[vertex as usize])
    }

    pub fn vertex_of(&self, label: &Label) -> Option<u32> {
        let idx = self.codec.encode(label);
        self.codec_indices
            .binary_search(&idx)
            .ok()
            .map(|v| v as u32)
    }
}

/// Immutable graph with optional declared bipartition and optional labels.
#[derive(Debug, Clone)]
pub struct BipartiteGraph {
    offsets: Vec<u32>,
    neighbors: Vec<u32>,
    sides: Option<Vec<u8>>,
    labeling: Option<Labeling>,
}

impl BipartiteGraph {
    /// Builds the adjacency structure from undirected edge pairs.
    ///
    /// Self-loops and duplicate edges are construction bugs and are
    /// reported as errors rather than silently dropped.
    pub fn from_edges(
        order: usize,
        edges: &[(u32, u32)],
        sides: Option<Vec<u8>>,
        labeling: Option<Labeling>,
    ) -> Result<BipartiteGraph> {
        if let Some(s) = &sides {
            if s.len() != order {
                return Err(Error::Construction("side vector length mismatch".into()));
            }
        }
        if let Some(l) = &labeling {
            if l.len() != order {
                return Err(Error::Construction("labeling length mismatch".into()));
            }
        }
        let mut degree = vec![0u32; order];
        for &(u, v) in edges {
            if u as usize >= order || v as usize >= order {
                return Err(Error::Construction(format!(
                    "edge ({u},{v}) out of range for order {order}"
                )));
            }
            if u == v {
                return Err(Error::Construction(format!("self-loop at vertex {u}")));
            }
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        let mut offsets = vec![0u32; order + 1];
        for v in 0..order {
            offsets[v + 1] = offsets[v] + degree[v];
        }
        let mut neighbors = vec![0u32; offsets[order] as usize];
        let mut cursor: Vec<u32> = offsets[..order].to_vec();
        for &(u, v) in edges {
            neighbors[cursor[u as usize] as usize] = v;
            cursor[u as usize] += 1;
            neighbors[cursor[v as usize] as usize] = u;
            cursor[v as usize] += 1;
        }
        for v in 0..order {
            let slice = &mut neighbors[offsets[v] as usize..offsets[v + 1] as usize];
            slice.sort_unstable();
            if slice.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Construction(format!("duplicate edge at vertex {v}")));
            }
        }
        Ok(BipartiteGraph {
            offsets,
            neighbors,
            sides,
            labeling,
        })
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Number of undirected edges.
    #[inline]
    pub fn size(&self) -> usize {
        self.neighbors.len() / 2
    }

    #[inline]
    pub fn degree(&self, v: u32) -> u32 {
        self.offsets[v as usize + 1] - self.offsets[v as usize]
    }

    #[inline]
    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.neighbors[self.offsets[v as usize] as usize..self.offsets[v as usize + 1] as usize]
    }

    #[inline]
    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Undirected edges as (u, v) pairs with u < v, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..self.order() as u32).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    pub fn sides(&self) -> Option<&[u8]> {
        self.sides.as_deref()
    }

    pub fn labeling(&self) -> Option<&Labeling> {
        self.labeling.as_ref()
    }

    /// Label of a vertex if this graph carries labels.
    pub fn label_of(&self, v: u32) -> Option<Label> {
        self.labeling.as_ref().map(|l| l.label_of(v))
    }

    /// Vertex carrying the given label, if present.
    pub fn vertex_of(&self, label: &Label) -> Option<u32> {
        self.labeling.as_ref().and_then(|l| l.vertex_of(label))
    }

    /// Renders a vertex for reports: its label when known, else the index.
    pub fn describe_vertex(&self, v: u32) -> String {
        match self.label_of(v) {
            Some(label) => format!("{label}"),
            None => format!("#{v}"),
        }
    }

    /// True when both adjacency structures are identical (same vertex
    /// numbering, same sorted neighbour lists).
    pub fn same_adjacency(&self, other: &BipartiteGraph) -> bool {
        self.offsets == other.offsets && self.neighbors == other.neighbors
    }

    /// Exact degree multiset.
    pub fn degree_profile(&self) -> BTreeMap<u32, u64> {
        let mut hist = BTreeMap::new();
        for v in 0..self.order() as u32 {
            *hist.entry(self.degree(v)).or_insert(0u64) += 1;
        }
        hist
    }

    /// True if every vertex has degree exactly k.
    pub fn is_regular(&self, k: u32) -> bool {
        (0..self.order() as u32).all(|v| self.degree(v) == k)
    }

    /// With a declared side assignment: true iff every edge joins side 0 to
    /// side 1. Without one: true iff the graph admits some 2-colouring.
    pub fn is_bipartite_consistent(&self) -> bool {
        match &self.sides {
            Some(sides) => self
                .edges()
                .all(|(u, v)| sides[u as usize] != sides[v as usize]),
            None => self.two_colorable(),
        }
    }

    fn two_colorable(&self) -> bool {
        let n = self.order();
        let mut color = vec![u8::MAX; n];
        let mut queue = Vec::new();
        for start in 0..n as u32 {
            if color[start as usize] != u8::MAX {
                continue;
            }
            color[start as usize] = 0;
            queue.clear();
            queue.push(start);
            let mut head = 0;
            while head < queue.len() {
                let u = queue[head];
                head += 1;
                for &w in self.neighbors(u) {
                    if color[w as usize] == u8::MAX {
                        color[w as usize] = 1 - color[u as usize];
                        queue.push(w);
                    } else if color[w as usize] == color[u as usize] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// BFS distances from `src`; unreachable vertices hold [`UNREACHED`].
    pub fn bfs_distances(&self, src: u32) -> Vec<u32> {
        let mut dist = vec![UNREACHED; self.order()];
        let mut queue = Vec::with_capacity(self.order());
        dist[src as usize] = 0;
        queue.push(src);
        let mut head = 0;
        while head < queue.len() {
            let u = queue[head];
            head += 1;
            let du = dist[u as usize];
            for &w in self.neighbors(u) {
                if dist[w as usize] == UNREACHED {
                    dist[w as usize] = du + 1;
                    queue.push(w);
                }
            }
        }
        dist
    }

    /// Exact shortest-path length, or None if unreachable.
    pub fn distance(&self, u: u32, v: u32) -> Result<Option<u32>> {
        let order = self.order();
        for x in [u, v] {
            if x as usize >= order {
                return Err(Error::IndexOutOfRange {
                    index: x as usize,
                    order,
                });
            }
        }
        if u == v {
            return Ok(Some(0));
        }
        let mut dist = vec![UNREACHED; order];
        let mut queue = Vec::with_capacity(order);
        dist[u as usize] = 0;
        queue.push(u);
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            let dx = dist[x as usize];
            for &w in self.neighbors(x) {
                if dist[w as usize] == UNREACHED {
                    if w == v {
                        return Ok(Some(dx + 1));
                    }
                    dist[w as usize] = dx + 1;
                    queue.push(w);
                }
            }
        }
        Ok(None)
    }

    /// Exact girth: BFS from every vertex for the shortest cycle through the
    /// root, pruned at depth ceil(best/2). None means the graph is a forest.
    pub fn girth(&self) -> Option<u32> {
        self.girth_with_threads(1)
    }

    /// Girth with BFS roots partitioned across `threads` workers. The result
    /// is identical to the sequential run for every thread count.
    pub fn girth_with_threads(&self, threads: usize) -> Option<u32> {
        let n = self.order();
        if n == 0 {
            return None;
        }
        let best = AtomicU32::new(UNREACHED);
        let threads = threads.max(1).min(n);
        if threads == 1 {
            let mut scratch = GirthScratch::new(n);
            for root in 0..n as u32 {
                girth_from_root(self, root, &best, &mut scratch);
            }
        } else {
            std::thread::scope(|scope| {
                for t in 0..threads {
                    let best = &best;
                    scope.spawn(move || {
                        let mut scratch = GirthScratch::new(n);
                        let mut root = t as u32;
                        while (root as usize) < n {
                            girth_from_root(self, root, best, &mut scratch);
                            root += threads as u32;
                        }
                    });
                }
            });
        }
        match best.load(Ordering::Relaxed) {
            UNREACHED => None,
            g => Some(g),
        }
    }

    /// Exact diameter via all-sources BFS; None when disconnected.
    pub fn diameter(&self) -> Option<u32> {
        self.diameter_with_threads(1)
    }

    pub fn diameter_with_threads(&self, threads: usize) -> Option<u32> {
        let n = self.order();
        if n <= 1 {
            return Some(0);
        }
        // Connectivity is decided by a single sweep.
        let reach = self.bfs_distances(0);
        if reach.contains(&UNREACHED) {
            return None;
        }
        let max = AtomicU32::new(0);
        let threads = threads.max(1).min(n);
        let ecc_of = |root: u32, dist: &mut Vec<u32>, queue: &mut Vec<u32>| -> u32 {
            dist.clear();
            dist.resize(n, UNREACHED);
            queue.clear();
            dist[root as usize] = 0;
            queue.push(root);
            let mut head = 0;
            let mut ecc = 0;
            while head < queue.len() {
                let u = queue[head];
                head += 1;
                let du = dist[u as usize];
                for &w in self.neighbors(u) {
                    if dist[w as usize] == UNREACHED {
                        dist[w as usize] = du + 1;
                        ecc = du + 1;
                        queue.push(w);
                    }
                }
            }
            ecc
        };
        if threads == 1 {
            let mut dist = Vec::new();
            let mut queue = Vec::new();
            for root in 0..n as u32 {
                let e = ecc_of(root, &mut dist, &mut queue);
                max.fetch_max(e, Ordering::Relaxed);
            }
        } else {
            std::thread::scope(|scope| {
                for t in 0..threads {
                    let max = &max;
                    let ecc_of = &ecc_of;
                    scope.spawn(move || {
                        let mut dist = Vec::new();
                        let mut queue = Vec::new();
                        let mut root = t as u32;
                        while (root as usize) < n {
                            let e = ecc_of(root, &mut dist, &mut queue);
                            max.fetch_max(e, Ordering::Relaxed);
                            root += threads as u32;
                        }
                    });
                }
            });
        }
        Some(max.load(Ordering::Relaxed))
    }

    /// Subgraph induced on `keep`, with vertices renumbered in the same
    /// relative order; sides and labels are carried over.
    pub fn induced_subgraph(&self, keep: &VertexSet) -> BipartiteGraph {
        let order = self.order();
        let mask = keep.to_mask(order);
        let mut remap = vec![u32::MAX; order];
        for (new, &old) in keep.as_slice().iter().enumerate() {
            remap[old as usize] = new as u32;
        }
        let new_order = keep.len();
        let mut offsets = vec![0u32; new_order + 1];
        let mut neighbors = Vec::new();
        for (new, &old) in keep.as_slice().iter().enumerate() {
            for &w in self.neighbors(old) {
                if mask[w as usize] {
                    neighbors.push(remap[w as usize]);
                }
            }
            offsets[new + 1] = neighbors.len() as u32;
        }
        let sides = self
            .sides
            .as_ref()
            .map(|s| keep.as_slice().iter().map(|&v| s[v as usize]).collect());
        let labeling = self.labeling.as_ref().map(|l| Labeling {
            codec: *l.codec(),
            codec_indices: keep
                .as_slice()
                .iter()
                .map(|&v| l.codec_indices[v as usize])
                .collect(),
        });
        BipartiteGraph {
            offsets,
            neighbors,
            sides,
            labeling,
        }
    }
}

struct GirthScratch {
    dist: Vec<u32>,
    parent: Vec<u32>,
    queue: Vec<u32>,
}

impl GirthScratch {
    fn new(n: usize) -> GirthScratch {
        GirthScratch {
            dist: vec![UNREACHED; n],
            parent: vec![UNREACHED; n],
            queue: Vec::with_capacity(n),
        }
    }
}

/// One root of the girth search. Every candidate `dist[u] + dist[w] + 1`
/// closes a walk through the root that contains a cycle no longer than the
/// candidate, and for a root lying on a minimum cycle the candidate equals
/// the girth, so the minimum over all roots is exact.
fn girth_from_root(g: &BipartiteGraph, root: u32, best: &AtomicU32, s: &mut GirthScratch) {
    let mut local = best.load(Ordering::Relaxed);
    if local <= 3 {
        return; // a triangle cannot be beaten
    }
    s.dist.fill(UNREACHED);
    s.queue.clear();
    s.dist[root as usize] = 0;
    s.parent[root as usize] = UNREACHED;
    s.queue.push(root);
    let mut head = 0;
    while head < s.queue.len() {
        let u = s.queue[head];
        head += 1;
        let du = s.dist[u as usize];
        // A vertex at depth d can only reveal cycles of length >= 2d+1.
        if 2 * du + 1 >= local {
            break;
        }
        for &w in g.neighbors(u) {
            if w == s.parent[u as usize] {
                continue;
            }
            let dw = s.dist[w as usize];
            if dw == UNREACHED {
                s.dist[w as usize] = du + 1;
                s.parent[w as usize] = u;
                s.queue.push(w);
            } else {
                let cand = du + dw + 1;
                if cand < local {
                    local = cand;
                }
            }
        }
    }
    best.fetch_min(local, Ordering::Relaxed);
}

/// Expectations a verify run is checked against.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct Expectations {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub size: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub regular: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub girth: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diameter: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bipartite: Option<bool>,
}

impl Expectations {
    pub fn is_empty(&self) -> bool {
        self.order.is_none()
            && self.size.is_none()
            && self.regular.is_none()
            && self.girth.is_none()
            && self.diameter.is_none()
            && self.bipartite.is_none()
    }
}

/// Per-check timings in milliseconds.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct ElapsedMs {
    pub degrees: f64,
    pub bipartite: f64,
    pub girth: f64,
    pub diameter: f64,
}

/// Measured properties of a graph; `girth`/`diameter` are None when
/// infinite (acyclic resp. disconnected).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerifyReport {
    pub order: u64,
    pub size: u64,
    pub degrees: BTreeMap<u32, u64>,
    pub bipartite: bool,
    pub girth: Option<u32>,
    pub diameter: Option<u32>,
    pub elapsed_ms: ElapsedMs,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pass: Option<bool>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub failures: Vec<String>,
}

impl VerifyReport {
    pub fn compute(g: &BipartiteGraph, threads: usize) -> VerifyReport {
        let t0 = Instant::now();
        let degrees = g.degree_profile();
        let t1 = Instant::now();
        let bipartite = g.is_bipartite_consistent();
        let t2 = Instant::now();
        let girth = g.girth_with_threads(threads);
        let t3 = Instant::now();
        let diameter = g.diameter_with_threads(threads);
        let t4 = Instant::now();
        VerifyReport {
            order: g.order() as u64,
            size: g.size() as u64,
            degrees,
            bipartite,
            girth,
            diameter,
            elapsed_ms: ElapsedMs {
                degrees: ms(t1 - t0),
                bipartite: ms(t2 - t1),
                girth: ms(t3 - t2),
                diameter: ms(t4 - t3),
            },
            pass: None,
            failures: Vec::new(),
        }
    }

    /// Checks the report against expectations, filling `pass`/`failures`.
    pub fn check(&mut self, expect: &Expectations) -> bool {
        let mut failures = Vec::new();
        if let Some(order) = expect.order {
            if self.order != order {
                failures.push(format!("order {} != expected {order}", self.order));
            }
        }
        if let Some(size) = expect.size {
            if self.size != size {
                failures.push(format!("size {} != expected {size}", self.size));
            }
        }
        if let Some(k) = expect.regular {
            let regular = self.degrees.len() == 1 && self.degrees.contains_key(&k);
            if !(regular || (self.order == 0)) {
                failures.push(format!(
                    "graph is not {k}-regular: degrees {:?}",
                    self.degrees
                ));
            }
        }
        if let Some(girth) = expect.girth {
            if self.girth != Some(girth) {
                failures.push(format!("girth {:?} != expected {girth}", self.girth));
            }
        }
        if let Some(diameter) = expect.diameter {
            if self.diameter != Some(diameter) {
                failures.push(format!(
                    "diameter {:?} != expected {diameter}",
                    self.diameter
                ));
            }
        }
        if let Some(b) = expect.bipartite {
            if self.bipartite != b {
                failures.push(format!("bipartite {} != expected {b}", self.bipartite));
            }
        }
        let pass = failures.is_empty();
        self.pass = Some(pass);
        self.failures = failures;
        pass
    }
}

fn ms(d: std::time::Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: u32) -> BipartiteGraph {
        let edges: Vec<(u32, u32)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        BipartiteGraph::from_edges(n as usize, &edges, None, None).unwrap()
    }

    fn path(n: u32) -> BipartiteGraph {
        let edges: Vec<(u32, u32)> = (0..n - 1).map(|i| (i, i + 1)).collect();
        BipartiteGraph::from_edges(n as usize, &edges, None, None).unwrap()
    }

    #[test]
    fn moore_bound_values() {
        assert_eq!(moore_bound(2).unwrap(), 8);
        assert_eq!(moore_bound(3).unwrap(), 30);
        // 2(1 + 4 + 16 + 64); equals the order of the q = 4 cage.
        assert_eq!(moore_bound(5).unwrap(), 170);
        assert_eq!(moore_bound(17).unwrap(), 2 * (4096 + 256 + 16 + 1));
        assert!(matches!(moore_bound(1), Err(Error::InvalidDegree(1))));
        assert!(matches!(moore_bound(0), Err(Error::InvalidDegree(0))));
    }

    #[test]
    fn girth_of_cycles_and_trees() {
        assert_eq!(cycle(6).girth(), Some(6));
        assert_eq!(cycle(3).girth(), Some(3));
        assert_eq!(cycle(10).girth(), Some(10));
        assert_eq!(path(7).girth(), None);
        let empty = BipartiteGraph::from_edges(0, &[], None, None).unwrap();
        assert_eq!(empty.girth(), None);
    }

    #[test]
    fn girth_petersen() {
        // Outer 5-cycle, inner pentagram, spokes.
        let mut edges = Vec::new();
        for i in 0..5u32 {
            edges.push((i, (i + 1) % 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
            edges.push((i, 5 + i));
        }
        let g = BipartiteGraph::from_edges(10, &edges, None, None).unwrap();
        assert_eq!(g.girth(), Some(5));
        assert_eq!(g.diameter(), Some(2));
        assert!(!g.is_bipartite_consistent());
    }

    #[test]
    fn diameter_cases() {
        let k2 = BipartiteGraph::from_edges(2, &[(0, 1)], None, None).unwrap();
        assert_eq!(k2.diameter(), Some(1));
        assert_eq!(path(5).diameter(), Some(4));
        let disconnected = BipartiteGraph::from_edges(4, &[(0, 1), (2, 3)], None, None).unwrap();
        assert_eq!(disconnected.diameter(), None);
        assert_eq!(cycle(8).diameter(), Some(4));
    }

    #[test]
    fn degree_profile_and_regularity() {
        let empty = BipartiteGraph::from_edges(0, &[], None, None).unwrap();
        assert!(empty.degree_profile().is_empty());
        let g = cycle(6);
        let hist = g.degree_profile();
        assert_eq!(hist.get(&2), Some(&6));
        assert!(g.is_regular(2));
        assert!(!g.is_regular(3));
    }

    #[test]
    fn distance_basics() {
        let g = cycle(8);
        assert_eq!(g.distance(3, 3).unwrap(), Some(0));
        assert_eq!(g.distance(0, 1).unwrap(), Some(1));
        assert_eq!(g.distance(0, 4).unwrap(), Some(4));
        assert!(matches!(
            g.distance(0, 99),
            Err(Error::IndexOutOfRange { .. })
        ));
        let disconnected = BipartiteGraph::from_edges(4, &[(0, 1), (2, 3)], None, None).unwrap();
        assert_eq!(disconnected.distance(0, 3).unwrap(), None);
    }

    #[test]
    fn bipartite_consistency() {
        // Even cycle with declared alternating sides.
        let sides = vec![0u8, 1, 0, 1, 0, 1];
        let edges: Vec<(u32, u32)> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
        let g = BipartiteGraph::from_edges(6, &edges, Some(sides.clone()), None).unwrap();
        assert!(g.is_bipartite_consistent());

        // Inject one intra-side edge: the declared assignment must fail.
        let mut bad = edges.clone();
        bad.push((0, 2));
        let g = BipartiteGraph::from_edges(6, &bad, Some(sides), None).unwrap();
        assert!(!g.is_bipartite_consistent());

        // Edgeless graphs are trivially consistent.
        let edgeless = BipartiteGraph::from_edges(3, &[], Some(vec![0, 0, 0]), None).unwrap();
        assert!(edgeless.is_bipartite_consistent());

        // Without declared sides, 2-colourability decides.
        assert!(cycle(6).is_bipartite_consistent());
        assert!(!cycle(5).is_bipartite_consistent());
    }

    #[test]
    fn construction_rejects_bad_edges() {
        assert!(BipartiteGraph::from_edges(2, &[(0, 0)], None, None).is_err());
        assert!(BipartiteGraph::from_edges(2, &[(0, 1), (1, 0)], None, None).is_err());
        assert!(BipartiteGraph::from_edges(2, &[(0, 5)], None, None).is_err());
    }

    #[test]
    fn induced_subgraph_renumbers() {
        let g = cycle(6);
        let keep = VertexSet::from_vec(vec![0, 1, 2, 3]);
        let sub = g.induced_subgraph(&keep);
        assert_eq!(sub.order(), 4);
        assert_eq!(sub.size(), 3); // the path 0-1-2-3
        assert_eq!(sub.neighbors(0), &[1]);
        assert_eq!(sub.neighbors(1), &[0, 2]);
    }

    #[test]
    fn vertex_set_operations() {
        let a = VertexSet::from_vec(vec![3, 1, 2, 3]);
        assert_eq!(a.len(), 3);
        let b = VertexSet::from_vec(vec![2, 3, 4]);
        assert_eq!(a.union(&b).as_slice(), &[1, 2, 3, 4]);
        assert_eq!(a.intersection(&b).as_slice(), &[2, 3]);
        assert_eq!(a.difference(&b).as_slice(), &[1]);
        assert!(!a.is_disjoint(&b));
        assert_eq!(a.complement(5).as_slice(), &[0, 4]);
    }

    #[test]
    fn parallel_kernels_match_sequential() {
        // A medium random-ish graph: two blow-ups of an 8-cycle plus chords.
        let mut edges = Vec::new();
        let n = 64u32;
        for i in 0..n {
            edges.push((i, (i + 1) % n));
            if i % 3 == 0 {
                edges.push((i, (i + 9) % n));
            }
        }
        edges.sort_unstable();
        edges.dedup();
        let g = BipartiteGraph::from_edges(n as usize, &edges, None, None).unwrap();
        let g1 = g.girth_with_threads(1);
        let d1 = g.diameter_with_threads(1);
        for t in [2, 3, 7] {
            assert_eq!(g.girth_with_threads(t), g1);
            assert_eq!(g.diameter_with_threads(t), d1);
        }
    }

    #[test]
    fn report_checks_expectations() {
        let g = cycle(6);
        let mut report = VerifyReport::compute(&g, 1);
        assert_eq!(report.girth, Some(6));
        let expect = Expectations {
            order: Some(6),
            regular: Some(2),
            girth: Some(6),
            diameter: Some(3),
            bipartite: Some(true),
            ..Default::default()
        };
        assert!(report.check(&expect));
        let bad = Expectations {
            girth: Some(10),
            ..Default::default()
        };
        assert!(!report.check(&bad));
        assert_eq!(report.pass, Some(false));
        assert_eq!(report.failures.len(), 1);
    }
}
