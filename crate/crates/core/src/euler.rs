//! Spanning Eulerian multi-subgraphs, Euler circuits and shortcut tours.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Multigraph, Vertex};

/// A connected, spanning, even-degree multi-subgraph of a host multigraph,
/// stored as one multiplicity in `{0, 1, 2}` per host edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerianSubgraph {
    multiplicity: Vec<u8>,
}

impl EulerianSubgraph {
    /// Validates `multiplicity` against `g`.
    pub fn new(g: &Multigraph, multiplicity: Vec<u8>) -> Result<Self> {
        check_eulerian(g, &multiplicity)?;
        Ok(EulerianSubgraph { multiplicity })
    }

    /// Every edge of `g` once; valid when `g` itself is connected and even.
    pub fn whole(g: &Multigraph) -> Result<Self> {
        Self::new(g, vec![1; g.m()])
    }

    pub fn multiplicity(&self) -> &[u8] {
        &self.multiplicity
    }

    pub fn get(&self, e: EdgeId) -> u8 {
        self.multiplicity[e]
    }

    pub fn edge_count(&self) -> usize {
        self.multiplicity.iter().map(|&k| k as usize).sum()
    }

    pub fn into_multiplicity(self) -> Vec<u8> {
        self.multiplicity
    }
}

/// Every reason a multiplicity vector fails to be a spanning Eulerian
/// subgraph of `g`, checked in order: shape, parity, spanning, connectivity.
pub fn check_eulerian(g: &Multigraph, multiplicity: &[u8]) -> Result<()> {
    if multiplicity.len() != g.m() {
        return Err(Error::MultiplicityLength { expected: g.m(), got: multiplicity.len() });
    }
    if let Some((e, &k)) = multiplicity.iter().enumerate().find(|(_, &k)| k > 2) {
        return Err(Error::MultiplicityTooLarge { edge: e, multiplicity: k as u32 });
    }
    let degree = weighted_degrees(g, multiplicity);
    if let Some((v, &d)) = degree.iter().enumerate().find(|(_, &d)| d % 2 == 1) {
        return Err(Error::OddDegree { vertex: v, degree: d });
    }
    if g.n() >= 2 {
        if let Some(v) = degree.iter().position(|&d| d == 0) {
            return Err(Error::NotSpanning(v));
        }
    }
    let (_, components) = g.component_labels(|e| multiplicity[e] > 0);
    if g.n() > 0 && components != 1 {
        return Err(Error::Disconnected);
    }
    Ok(())
}

pub fn weighted_degrees(g: &Multigraph, multiplicity: &[u8]) -> Vec<u32> {
    let mut degree = vec![0u32; g.n()];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        degree[u] += multiplicity[e] as u32;
        degree[v] += multiplicity[e] as u32;
    }
    degree
}

/// A closed walk given by its start vertex and edge sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Circuit {
    pub start: Vertex,
    pub edges: Vec<EdgeId>,
}

impl Circuit {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Vertex sequence of the walk, `start` repeated at the end.
    pub fn vertices(&self, g: &Multigraph) -> Result<Vec<Vertex>> {
        let mut walk = Vec::with_capacity(self.edges.len() + 1);
        let mut at = self.start;
        walk.push(at);
        for (i, &e) in self.edges.iter().enumerate() {
            if e >= g.m() {
                return Err(Error::InvalidWalk(format!("edge {e} does not exist")));
            }
            let (a, b) = g.endpoints(e);
            at = if a == at {
                b
            } else if b == at {
                a
            } else {
                return Err(Error::InvalidWalk(format!("step {i}: edge {e} is not incident to vertex {at}")));
            };
            walk.push(at);
        }
        if at != self.start {
            return Err(Error::InvalidWalk(format!("walk ends at {at}, not at {}", self.start)));
        }
        Ok(walk)
    }
}

/// Euler circuit of `h` by iterative Hierholzer, starting at the
/// lowest-index vertex of positive degree.
pub fn eulerian_circuit(g: &Multigraph, h: &EulerianSubgraph) -> Result<Circuit> {
    let mult = h.multiplicity();
    check_eulerian(g, mult)?;
    let Some(start) = (0..g.n()).find(|&v| g.incident(v).iter().any(|&(e, _)| mult[e] > 0)) else {
        return Ok(Circuit { start: 0, edges: Vec::new() });
    };
    let mut remaining: Vec<u8> = mult.to_vec();
    let mut cursor = vec![0usize; g.n()];
    let mut stack: Vec<(Vertex, Option<EdgeId>)> = vec![(start, None)];
    let mut edges = Vec::with_capacity(h.edge_count());
    while let Some(&(v, _)) = stack.last() {
        let inc = g.incident(v);
        while cursor[v] < inc.len() && remaining[inc[cursor[v]].0] == 0 {
            cursor[v] += 1;
        }
        if let Some(&(e, w)) = inc.get(cursor[v]) {
            remaining[e] -= 1;
            stack.push((w, Some(e)));
        } else {
            let (_, via) = stack.pop().expect("non-empty");
            if let Some(e) = via {
                edges.push(e);
            }
        }
    }
    edges.reverse();
    Ok(Circuit { start, edges })
}

/// A Hamiltonian cycle of the metric completion: a vertex permutation and
/// its cyclic hop length.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tour {
    pub order: Vec<Vertex>,
    pub length: u64,
}

impl Tour {
    pub fn new(g: &Multigraph, order: Vec<Vertex>) -> Result<Self> {
        let length = tour_length(g, &order)?;
        Ok(Tour { order, length })
    }
}

/// Cyclic sum of metric distances along `order`, which must be a permutation
/// of the vertices.
pub fn tour_length(g: &Multigraph, order: &[Vertex]) -> Result<u64> {
    check_permutation(g.n(), order)?;
    if order.len() <= 1 {
        return Ok(0);
    }
    let mut total = 0u64;
    for (i, &u) in order.iter().enumerate() {
        let v = order[(i + 1) % order.len()];
        total += g.metric_distance(u, v)? as u64;
    }
    Ok(total)
}

pub fn check_permutation(n: usize, order: &[Vertex]) -> Result<()> {
    if order.len() != n {
        return Err(Error::Precondition(format!("tour has {} vertices, graph has {n}", order.len())));
    }
    let mut seen = vec![false; n];
    for &v in order {
        if v >= n {
            return Err(Error::VertexOutOfRange(v));
        }
        if std::mem::replace(&mut seen[v], true) {
            return Err(Error::Precondition(format!("tour visits vertex {v} twice")));
        }
    }
    Ok(())
}

/// Shortcuts a closed spanning walk into a tour, keeping the first
/// occurrence of each vertex. The tour is never longer than the walk.
pub fn shortcut_tour(g: &Multigraph, circuit: &Circuit) -> Result<Tour> {
    let walk = circuit.vertices(g)?;
    let mut seen = vec![false; g.n()];
    let mut order = Vec::with_capacity(g.n());
    for v in walk {
        if !std::mem::replace(&mut seen[v], true) {
            order.push(v);
        }
    }
    if let Some(v) = seen.iter().position(|&s| !s) {
        return Err(Error::NotSpanning(v));
    }
    let tour = Tour::new(g, order)?;
    debug_assert!(tour.length <= circuit.len() as u64 || g.n() <= 1);
    Ok(tour)
}

/// Euler circuit followed by shortcutting.
pub fn tour_from_subgraph(g: &Multigraph, h: &EulerianSubgraph) -> Result<Tour> {
    let circuit = eulerian_circuit(g, h)?;
    shortcut_tour(g, &circuit)
}
