//! Loop-free undirected multigraphs with positional edge identities.
//!
//! Every algorithm in this crate refers to edges by their [`EdgeId`], the
//! position of the edge in the list it was built from, so parallel copies of
//! an edge are never conflated.

use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = usize;
pub type EdgeId = usize;

/// An undirected multigraph on vertices `0..n`. Parallel edges are allowed,
/// loops are not. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawMultigraph", into = "RawMultigraph")]
pub struct Multigraph {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    incidence: Vec<Vec<(EdgeId, Vertex)>>,
}

#[derive(Serialize, Deserialize)]
struct RawMultigraph {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
}

impl TryFrom<RawMultigraph> for Multigraph {
    type Error = Error;

    fn try_from(raw: RawMultigraph) -> Result<Self> {
        Multigraph::new(raw.n, raw.edges)
    }
}

impl From<Multigraph> for RawMultigraph {
    fn from(g: Multigraph) -> Self {
        RawMultigraph { n: g.n, edges: g.edges }
    }
}

impl Multigraph {
    /// Builds a multigraph whose edge ids are the positions in `edges`.
    pub fn new(n: usize, edges: Vec<(Vertex, Vertex)>) -> Result<Self> {
        let mut incidence = vec![Vec::new(); n];
        for (id, &(u, v)) in edges.iter().enumerate() {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::EndpointOutOfRange { edge: id, vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::LoopEdge { edge: id, vertex: u });
            }
            incidence[u].push((id, v));
            incidence[v].push((id, u));
        }
        Ok(Multigraph { n, edges, incidence })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn endpoints(&self, e: EdgeId) -> (Vertex, Vertex) {
        self.edges[e]
    }

    /// The endpoint of `e` that is not `v`.
    pub fn other(&self, e: EdgeId, v: Vertex) -> Vertex {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            debug_assert_eq!(b, v);
            a
        }
    }

    /// Incident `(edge id, neighbour)` pairs of `v`, in edge id order.
    pub fn incident(&self, v: Vertex) -> &[(EdgeId, Vertex)] {
        &self.incidence[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.incidence[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.incidence.iter().map(Vec::len).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.incidence.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_cubic(&self) -> bool {
        self.incidence.iter().all(|inc| inc.len() == 3)
    }

    pub fn is_subcubic(&self) -> bool {
        self.max_degree() <= 3
    }

    /// True when no two edges join the same pair of vertices.
    pub fn is_simple(&self) -> bool {
        let mut seen = std::collections::HashSet::with_capacity(self.m());
        self.edges.iter().all(|&(u, v)| seen.insert((u.min(v), u.max(v))))
    }

    pub fn has_edge_between(&self, u: Vertex, v: Vertex) -> bool {
        self.incidence[u].iter().any(|&(_, w)| w == v)
    }

    /// Lowest-id edge joining `u` and `v`, if any.
    pub fn edge_between(&self, u: Vertex, v: Vertex) -> Option<EdgeId> {
        self.incidence[u].iter().find(|&&(_, w)| w == v).map(|&(e, _)| e)
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.component_labels(|_| true).1 == 1
    }

    /// Labels the connected components of the subgraph made of the edges
    /// accepted by `keep`. Returns `(label per vertex, component count)`;
    /// labels are assigned in order of lowest vertex.
    pub fn component_labels(&self, keep: impl Fn(EdgeId) -> bool) -> (Vec<usize>, usize) {
        let mut label = vec![usize::MAX; self.n];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for s in 0..self.n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = count;
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                for &(e, w) in &self.incidence[v] {
                    if label[w] == usize::MAX && keep(e) {
                        label[w] = count;
                        queue.push_back(w);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    /// Bridges of a connected multigraph, sorted by id.
    ///
    /// Parallel edges are never bridges: the low-link walk skips only the
    /// tree edge it arrived through (by id), not every edge to the parent.
    pub fn find_bridges(&self) -> Result<Vec<EdgeId>> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(self.bridges_of_components())
    }

    /// Bridges of every component, without requiring connectivity.
    pub fn bridges_of_components(&self) -> Vec<EdgeId> {
        let n = self.n;
        let mut order = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut bridges = Vec::new();
        let mut time = 0;
        // (vertex, edge used to enter, next incidence index)
        let mut stack: Vec<(Vertex, Option<EdgeId>, usize)> = Vec::new();
        for root in 0..n {
            if order[root] != usize::MAX {
                continue;
            }
            order[root] = time;
            low[root] = time;
            time += 1;
            stack.push((root, None, 0));
            while let Some(top) = stack.last_mut() {
                let (v, via, idx) = *top;
                if idx < self.incidence[v].len() {
                    top.2 += 1;
                    let (e, w) = self.incidence[v][idx];
                    if Some(e) == via {
                        continue;
                    }
                    if order[w] == usize::MAX {
                        order[w] = time;
                        low[w] = time;
                        time += 1;
                        stack.push((w, Some(e), 0));
                    } else {
                        low[v] = low[v].min(order[w]);
                    }
                } else {
                    stack.pop();
                    if let (Some(e), Some(parent)) = (via, stack.last()) {
                        let p = parent.0;
                        low[p] = low[p].min(low[v]);
                        if low[v] > order[p] {
                            bridges.push(e);
                        }
                    }
                }
            }
        }
        bridges.sort_unstable();
        bridges
    }

    /// Subgraph induced by `vertices` (in the given order, which becomes the
    /// new labelling). Returns the subgraph and, per new edge, the original
    /// edge id.
    pub fn induced(&self, vertices: &[Vertex]) -> (Multigraph, Vec<EdgeId>) {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let mut edges = Vec::new();
        let mut origin = Vec::new();
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            if index[u] != usize::MAX && index[v] != usize::MAX {
                edges.push((index[u], index[v]));
                origin.push(e);
            }
        }
        let sub = Multigraph::new(vertices.len(), edges).expect("induced subgraph of a valid graph");
        (sub, origin)
    }

    /// BFS hop distances from `source`; `u32::MAX` marks unreachable vertices.
    pub fn bfs_distances(&self, source: Vertex) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.n];
        dist[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            for &(_, w) in &self.incidence[v] {
                if dist[w] == u32::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Shortest path from `u` to `v` as a list of edge ids.
    pub fn shortest_path(&self, u: Vertex, v: Vertex) -> Result<Vec<EdgeId>> {
        if u >= self.n || v >= self.n {
            return Err(Error::VertexOutOfRange(u.max(v)));
        }
        let mut via: Vec<Option<EdgeId>> = vec![None; self.n];
        let mut seen = vec![false; self.n];
        seen[u] = true;
        let mut queue = VecDeque::from([u]);
        while let Some(x) = queue.pop_front() {
            if x == v {
                break;
            }
            for &(e, w) in &self.incidence[x] {
                if !seen[w] {
                    seen[w] = true;
                    via[w] = Some(e);
                    queue.push_back(w);
                }
            }
        }
        if !seen[v] {
            return Err(Error::Disconnected);
        }
        let mut path = Vec::new();
        let mut x = v;
        while x != u {
            let e = via[x].expect("bfs parent");
            path.push(e);
            x = self.other(e, x);
        }
        path.reverse();
        Ok(path)
    }

    /// Hop distance in the metric completion.
    pub fn metric_distance(&self, u: Vertex, v: Vertex) -> Result<u32> {
        if u >= self.n || v >= self.n {
            return Err(Error::VertexOutOfRange(u.max(v)));
        }
        if u == v {
            return Ok(0);
        }
        // Early-exit BFS: tour legs are usually short.
        let mut dist = vec![u32::MAX; self.n];
        dist[u] = 0;
        let mut queue = VecDeque::from([u]);
        while let Some(x) = queue.pop_front() {
            for &(_, w) in &self.incidence[x] {
                if dist[w] == u32::MAX {
                    dist[w] = dist[x] + 1;
                    if w == v {
                        return Ok(dist[w]);
                    }
                    queue.push_back(w);
                }
            }
        }
        Err(Error::Disconnected)
    }

    /// Parses the text graph format: `#` comment lines, a header `n m`, then
    /// exactly `m` lines `u v`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize)> = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut fields = line.split_whitespace();
            let mut next = |name: &str| -> Result<usize> {
                let tok =
                    fields.next().ok_or_else(|| Error::Parse { line: line_no, message: format!("missing {name}") })?;
                tok.parse().map_err(|_| Error::Parse { line: line_no, message: format!("bad {name} `{tok}`") })
            };
            let a = next("first field")?;
            let b = next("second field")?;
            if fields.next().is_some() {
                return Err(Error::Parse { line: line_no, message: "trailing fields".into() });
            }
            match header {
                None => header = Some((a, b)),
                Some((_, m)) => {
                    if edges.len() == m {
                        return Err(Error::Parse {
                            line: line_no,
                            message: format!("more than the declared {m} edges"),
                        });
                    }
                    edges.push((a, b));
                }
            }
        }
        let (n, m) = header.ok_or(Error::Parse { line: 0, message: "missing header".into() })?;
        if edges.len() != m {
            return Err(Error::Parse {
                line: text.lines().count(),
                message: format!("declared {m} edges, found {}", edges.len()),
            });
        }
        Multigraph::new(n, edges)
    }

    /// Writes the text graph format, edges in id order.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(8 * (self.m() + 1));
        let _ = writeln!(out, "{} {}", self.n, self.m());
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}

/// All-pairs hop distances, for oracles that query every pair.
#[derive(Debug, Clone)]
pub struct DistanceMatrix {
    n: usize,
    dist: Vec<u32>,
}

impl DistanceMatrix {
    pub fn new(g: &Multigraph) -> Result<Self> {
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        let n = g.n();
        let mut dist = Vec::with_capacity(n * n);
        for s in 0..n {
            dist.extend(g.bfs_distances(s));
        }
        Ok(DistanceMatrix { n, dist })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, u: Vertex, v: Vertex) -> u32 {
        self.dist[u * self.n + v]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lab::families;

    fn path(n: usize) -> Multigraph {
        Multigraph::new(n, (1..n).map(|i| (i - 1, i)).collect()).unwrap()
    }

    #[test]
    fn triple_edge_degrees() {
        let g = Multigraph::new(2, vec![(0, 1); 3]).unwrap();
        assert_eq!(g.degrees(), vec![3, 3]);
        assert!(!g.is_simple());
        assert!(g.is_cubic());
    }

    #[test]
    fn single_vertex() {
        let g = Multigraph::new(1, vec![]).unwrap();
        assert_eq!(g.degree(0), 0);
        assert!(g.is_connected());
        assert_eq!(g.find_bridges().unwrap(), Vec::<EdgeId>::new());
    }

    #[test]
    fn petersen_is_cubic_with_15_edges() {
        let g = families::petersen();
        assert_eq!(g.n(), 10);
        assert_eq!(g.m(), 15);
        assert!(g.is_cubic() && g.is_simple());
    }

    #[test]
    fn rejects_loops_and_bad_endpoints() {
        assert_eq!(Multigraph::new(3, vec![(0, 1), (2, 2)]), Err(Error::LoopEdge { edge: 1, vertex: 2 }));
        assert_eq!(Multigraph::new(3, vec![(0, 3)]), Err(Error::EndpointOutOfRange { edge: 0, vertex: 3, n: 3 }));
    }

    #[test]
    fn bridges_of_path_and_petersen() {
        assert_eq!(path(3).find_bridges().unwrap(), vec![0, 1]);
        assert!(families::petersen().find_bridges().unwrap().is_empty());
    }

    #[test]
    fn barbell_bridge() {
        let g = Multigraph::new(6, vec![(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert_eq!(g.find_bridges().unwrap(), vec![3]);
    }

    #[test]
    fn parallel_pair_is_not_a_bridge() {
        let g = Multigraph::new(3, vec![(0, 1), (0, 1), (1, 2)]).unwrap();
        assert_eq!(g.find_bridges().unwrap(), vec![2]);
    }

    #[test]
    fn bridges_reject_disconnected() {
        let g = Multigraph::new(4, vec![(0, 1), (2, 3)]).unwrap();
        assert_eq!(g.find_bridges(), Err(Error::Disconnected));
    }

    #[test]
    fn distances() {
        let g = families::petersen();
        assert_eq!(g.metric_distance(3, 3).unwrap(), 0);
        let (a, b) = g.endpoints(0);
        assert_eq!(g.metric_distance(a, b).unwrap(), 1);
        for u in 0..10 {
            for v in 0..10 {
                if u != v && !g.has_edge_between(u, v) {
                    assert_eq!(g.metric_distance(u, v).unwrap(), 2);
                }
            }
        }
        let split = Multigraph::new(3, vec![(0, 1)]).unwrap();
        assert_eq!(split.metric_distance(0, 2), Err(Error::Disconnected));
    }

    #[test]
    fn shortest_path_edges() {
        let g = path(5);
        assert_eq!(g.shortest_path(0, 4).unwrap(), vec![0, 1, 2, 3]);
        assert_eq!(g.shortest_path(3, 1).unwrap(), vec![2, 1]);
    }

    #[test]
    fn text_format() {
        let text = "# triple edge\n2 3\n0 1\n0 1\n0 1\n";
        let g = Multigraph::parse(text).unwrap();
        assert_eq!(g.m(), 3);
        assert_eq!(g.to_text(), "2 3\n0 1\n0 1\n0 1\n");
        assert!(Multigraph::parse("2 2\n0 1\n").is_err());
        assert!(Multigraph::parse("2 1\n0 1\n0 1\n").is_err());
        assert!(Multigraph::parse("2 1\n0 x\n").is_err());
        assert!(matches!(Multigraph::parse("2 1\n1 1\n"), Err(Error::LoopEdge { .. })));
    }

    #[test]
    fn induced_subgraph_keeps_origin() {
        let g = families::petersen();
        let (sub, origin) = g.induced(&[0, 1, 2, 3, 4]);
        assert_eq!(sub.n(), 5);
        assert_eq!(sub.m(), origin.len());
        for (i, &e) in origin.iter().enumerate() {
            let (a, b) = sub.endpoints(i);
            let (x, y) = g.endpoints(e);
            assert_eq!((a, b), (x, y));
        }
    }
}
