//! Graphs with bridges: solve every bridgeless piece separately and join the
//! pieces by doubling each bridge.
//!
//! Deleting the `h` bridges of a connected graph leaves `h + 1` components.
//! A component that is a single vertex needs no edges of its own, so with
//! `s` such components every tour has at least `n + 2h − s` edges, and this
//! construction uses at most `(4(n + h) − 2(s + 1))/3`.

use std::time::Instant;

use crate::error::{Error, Result};
use crate::euler::{tour_from_subgraph, EulerianSubgraph};
use crate::graph::{EdgeId, Multigraph, Vertex};
use crate::ms::solve_ms;
use crate::report::{Algorithm, BridgeSummary, SolveReport, Thirds};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BridgeDecomposition {
    pub bridges: Vec<EdgeId>,
    /// Vertex sets of the components left after deleting the bridges,
    /// ordered by smallest vertex.
    pub components: Vec<Vec<Vertex>>,
    /// Number of components that are single vertices.
    pub singletons: usize,
}

impl BridgeDecomposition {
    pub fn new(g: &Multigraph) -> Result<Self> {
        let bridges = g.find_bridges()?;
        let mut is_bridge = vec![false; g.m()];
        for &b in &bridges {
            is_bridge[b] = true;
        }
        let (label, count) = g.component_labels(|e| !is_bridge[e]);
        let mut components = vec![Vec::new(); count];
        for v in 0..g.n() {
            components[label[v]].push(v);
        }
        let singletons = components.iter().filter(|c| c.len() == 1).count();
        Ok(BridgeDecomposition { bridges, components, singletons })
    }

    pub fn h(&self) -> usize {
        self.bridges.len()
    }

    /// `n + 2h − s`.
    pub fn lower_bound(&self, n: usize) -> usize {
        n + 2 * self.h() - self.singletons
    }

    /// `(4(n + h) − 2(s + 1))/3`.
    pub fn bound(&self, n: usize) -> Thirds {
        Thirds(4 * (n + self.h()) as i64 - 2 * (self.singletons as i64 + 1))
    }
}

/// `n + 2h − s`, a lower bound on the optimal tour and on the subtour LP.
pub fn bridge_lower_bound(g: &Multigraph) -> Result<usize> {
    Ok(BridgeDecomposition::new(g)?.lower_bound(g.n()))
}

/// Solves a connected subcubic graph, with or without bridges.
pub fn solve_with_bridges(g: &Multigraph) -> Result<SolveReport> {
    let started = Instant::now();
    if let Some(v) = (0..g.n()).find(|&v| g.degree(v) > 3) {
        return Err(Error::DegreeViolation { vertex: v, degree: g.degree(v) });
    }
    if g.n() == 0 {
        return Err(Error::Precondition("empty graph".into()));
    }
    let dec = BridgeDecomposition::new(g)?;
    let mut mult = vec![0u8; g.m()];
    for &b in &dec.bridges {
        mult[b] = 2;
    }
    for component in dec.components.iter().filter(|c| c.len() > 1) {
        let (sub, origin) = g.induced(component);
        let part = solve_ms(&sub)?;
        for (i, &k) in part.h.multiplicity().iter().enumerate() {
            mult[origin[i]] = k;
        }
    }
    let h = EulerianSubgraph::new(g, mult)?;
    let tour = tour_from_subgraph(g, &h)?;
    let mut report = SolveReport::basic(Algorithm::Bridges, h, tour, dec.bound(g.n()));
    report.bridge_summary =
        Some(BridgeSummary { lower_bound: dec.lower_bound(g.n()), singletons: dec.singletons, bridges: dec.bridges });
    report.wall_time = started.elapsed();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lab::families;
    use crate::ms::solve_ms;

    fn path(n: usize) -> Multigraph {
        Multigraph::new(n, (1..n).map(|i| (i - 1, i)).collect()).unwrap()
    }

    #[test]
    fn bridgeless_matches_ms_bound() {
        let g = families::petersen();
        let r = solve_with_bridges(&g).unwrap();
        assert_eq!(r.bound, solve_ms(&g).unwrap().bound);
        assert_eq!(bridge_lower_bound(&g).unwrap(), 10);
    }

    #[test]
    fn path_doubles_every_edge() {
        let g = path(4);
        let r = solve_with_bridges(&g).unwrap();
        assert_eq!(r.h_edges, 6);
        assert_eq!(r.tour.length, 6);
        // s counts single-vertex components: all four vertices
        assert_eq!(bridge_lower_bound(&g).unwrap(), 6);
        assert!(r.bound.admits(r.tour.length as usize));
    }

    #[test]
    fn barbell() {
        let g = Multigraph::new(6, vec![(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert_eq!(bridge_lower_bound(&g).unwrap(), 8);
        let r = solve_with_bridges(&g).unwrap();
        assert_eq!(r.h_edges, 8);
        assert_eq!(r.bound, Thirds(4 * 7 - 2));
    }

    #[test]
    fn subdivided_k4_blocks() {
        // K4 with edge 0-1 subdivided by vertex 4, twice, joined 4–9.
        let mut edges = vec![(0, 4), (4, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        let shifted: Vec<_> = edges.iter().map(|&(u, v)| (u + 5, v + 5)).collect();
        edges.extend(shifted);
        edges.push((4, 9));
        let g = Multigraph::new(10, edges).unwrap();
        let r = solve_with_bridges(&g).unwrap();
        assert_eq!(r.bound, Thirds(4 * 11 - 2));
        assert!(r.bound.admits(r.h_edges));
        assert_eq!(r.h.get(14), 2);
    }

    #[test]
    fn single_vertex() {
        let g = Multigraph::new(1, vec![]).unwrap();
        let r = solve_with_bridges(&g).unwrap();
        assert_eq!(r.h_edges, 0);
        assert_eq!(r.tour.order, vec![0]);
    }
}
