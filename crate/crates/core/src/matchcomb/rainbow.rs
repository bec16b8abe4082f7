//! Rainbow gadgets: a 4-cycle `u0, a, v0, b` with chord `ab`, extended by
//! a ladder of rungs `u_i v_i` for `1 ≤ i ≤ p`, and attached to the rest of
//! the graph only through the edges `u_p u_{p+1}` and `v_p v_{p+1}`.
//!
//! Such a gadget is cut out and replaced by a single edge `u_{p+1} v_{p+1}`;
//! a solution of the smaller graph is lifted back by one of three local
//! patches depending on how often it uses the new edge.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::euler::EulerianSubgraph;
use crate::graph::{EdgeId, Multigraph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RainbowPattern {
    pub p: usize,
    pub a: Vertex,
    pub b: Vertex,
    /// `u_0, …, u_{p+1}`.
    pub u: Vec<Vertex>,
    /// `v_0, …, v_{p+1}`.
    pub v: Vec<Vertex>,
}

impl RainbowPattern {
    /// The `2p + 4` vertices that are cut out.
    pub fn gadget(&self) -> Vec<Vertex> {
        let mut out = vec![self.a, self.b];
        out.extend(&self.u[..=self.p]);
        out.extend(&self.v[..=self.p]);
        out.sort_unstable();
        out
    }

    /// Hamilton path of the gadget from `u_p` to `v_p`:
    /// `u_p, …, u_0, a, b, v_0, …, v_p`.
    pub fn hamilton_path(&self) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = self.u[..=self.p].iter().rev().copied().collect();
        out.push(self.a);
        out.push(self.b);
        out.extend(&self.v[..=self.p]);
        out
    }
}

fn others(g: &Multigraph, x: Vertex, exclude: &[Vertex]) -> Vec<Vertex> {
    g.incident(x).iter().map(|&(_, w)| w).filter(|w| !exclude.contains(w)).collect()
}

/// Grows the ladder from the chorded 4-cycle on `a, b, u0, v0`.
fn grow(g: &Multigraph, a: Vertex, b: Vertex, u0: Vertex, v0: Vertex) -> Option<RainbowPattern> {
    let mut u = vec![u0];
    let mut v = vec![v0];
    let mut used = vec![a, b, u0, v0];
    let (mut pu, mut pv) = (vec![a, b], vec![a, b]);
    loop {
        let (cu, cv) = (*u.last().unwrap(), *v.last().unwrap());
        let nu = others(g, cu, &pu);
        let nv = others(g, cv, &pv);
        let (&[x], &[y]) = (nu.as_slice(), nv.as_slice()) else { return None };
        if x == y || used.contains(&x) || used.contains(&y) {
            return None;
        }
        u.push(x);
        v.push(y);
        if !g.has_edge_between(x, y) {
            let p = u.len() - 2;
            return (p >= 1).then_some(RainbowPattern { p, a, b, u, v });
        }
        used.extend([x, y]);
        pu = vec![cu, y];
        pv = vec![cv, x];
    }
}

/// The rainbow with the largest `p`, scanning chords in edge-id order and
/// keeping the first on ties.
pub fn detect_p_rainbow(g: &Multigraph) -> Option<RainbowPattern> {
    let mut best: Option<RainbowPattern> = None;
    for &(a, b) in g.edges() {
        let na = others(g, a, &[b]);
        let nb = others(g, b, &[a]);
        let mut common: Vec<Vertex> = na.iter().copied().filter(|x| nb.contains(x)).collect();
        common.sort_unstable();
        common.dedup();
        let [u0, v0] = common[..] else { continue };
        if na.len() != 2 || nb.len() != 2 || g.has_edge_between(u0, v0) {
            continue;
        }
        if let Some(pattern) = grow(g, a, b, u0, v0) {
            if best.as_ref().is_none_or(|cur| pattern.p > cur.p) {
                best = Some(pattern);
            }
        }
    }
    best
}

/// One removal step: the graph before removal and how the smaller graph's
/// vertices and edges map into it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RainbowLevel {
    pub pattern: RainbowPattern,
    pub parent: Multigraph,
    /// Parent vertex of each child vertex.
    pub vertex_origin: Vec<Vertex>,
    /// Parent edge of each child edge; `None` for the added edge.
    pub edge_origin: Vec<Option<EdgeId>>,
    /// Child id of the added edge `u_{p+1} v_{p+1}`.
    pub virtual_edge: EdgeId,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RainbowReduction {
    pub core: Multigraph,
    /// Removal order: `levels[0]` acted on the input graph.
    pub levels: Vec<RainbowLevel>,
}

impl RainbowReduction {
    /// The core is `K_4` and at least one gadget was removed.
    pub fn k4_core(&self) -> bool {
        !self.levels.is_empty() && self.core.n() == 4
    }
}

fn remove_one(parent: &Multigraph, pattern: RainbowPattern) -> RainbowLevel {
    let gadget = pattern.gadget();
    let keep: Vec<Vertex> = (0..parent.n()).filter(|v| gadget.binary_search(v).is_err()).collect();
    let inside = |x: Vertex| gadget.binary_search(&x).is_ok();
    let mut edge_origin: Vec<Option<EdgeId>> = (0..parent.m())
        .filter(|&e| !inside(parent.endpoints(e).0) && !inside(parent.endpoints(e).1))
        .map(Some)
        .collect();
    edge_origin.push(None);
    let virtual_edge = edge_origin.len() - 1;
    RainbowLevel { pattern, parent: parent.clone(), vertex_origin: keep, edge_origin, virtual_edge }
}

impl RainbowLevel {
    /// The graph after removal.
    pub fn child(&self) -> Multigraph {
        let mut index = vec![usize::MAX; self.parent.n()];
        for (i, &v) in self.vertex_origin.iter().enumerate() {
            index[v] = i;
        }
        let edges = self
            .edge_origin
            .iter()
            .map(|o| match o {
                Some(e) => {
                    let (x, y) = self.parent.endpoints(*e);
                    (index[x], index[y])
                }
                None => (index[self.pattern.u[self.pattern.p + 1]], index[self.pattern.v[self.pattern.p + 1]]),
            })
            .collect();
        Multigraph::new(self.vertex_origin.len(), edges).expect("child of a valid removal")
    }

    fn edge(&self, x: Vertex, y: Vertex) -> EdgeId {
        self.parent.edge_between(x, y).expect("rainbow edges exist in the parent")
    }

    fn path_edges(&self, path: &[Vertex]) -> Vec<EdgeId> {
        path.windows(2).map(|w| self.edge(w[0], w[1])).collect()
    }

    /// Multiplicities on the parent inherited from a child solution.
    fn inherit(&self, child_mult: &[u8]) -> Vec<u8> {
        let mut mult = vec![0u8; self.parent.m()];
        for (i, origin) in self.edge_origin.iter().enumerate() {
            if let Some(e) = origin {
                mult[*e] = child_mult[i];
            }
        }
        mult
    }

    /// Lifts a spanning Eulerian subgraph of the child to the parent: the
    /// gadget is covered by its Hamilton cycle, and the added edge's
    /// multiplicity `k` is replaced by
    /// - `k = 0`: `u_p u_{p+1}` doubled,
    /// - `k = 1`: `u_p u_{p+1}`, `v_p v_{p+1}` and `u_p v_p`,
    /// - `k = 2`: `u_p u_{p+1}` and `v_p v_{p+1}` both doubled.
    pub fn reinsert(&self, h: &EulerianSubgraph) -> Result<EulerianSubgraph> {
        let child_mult = h.multiplicity();
        if child_mult.len() != self.edge_origin.len() {
            return Err(Error::MultiplicityLength { expected: self.edge_origin.len(), got: child_mult.len() });
        }
        let pt = &self.pattern;
        let (u1, u2, v1, v2) = (pt.u[pt.p], pt.u[pt.p + 1], pt.v[pt.p], pt.v[pt.p + 1]);
        let mut mult = self.inherit(child_mult);
        let mut cycle = pt.hamilton_path();
        cycle.push(u1);
        for e in self.path_edges(&cycle) {
            mult[e] += 1;
        }
        let (uu, vv, uv) = (self.edge(u1, u2), self.edge(v1, v2), self.edge(u1, v1));
        match child_mult[self.virtual_edge] {
            0 => mult[uu] += 2,
            1 => {
                mult[uu] += 1;
                mult[vv] += 1;
                mult[uv] += 1;
            }
            2 => {
                mult[uu] += 2;
                mult[vv] += 2;
            }
            k => return Err(Error::ContractViolation(format!("added edge used {k} times"))),
        }
        EulerianSubgraph::new(&self.parent, mult)
    }

    /// For a `K_4` child: a Hamilton cycle of the parent made of a Hamilton
    /// path of the child from `u_{p+1}` to `v_{p+1}` avoiding the added
    /// edge, the two attaching edges, and the gadget's Hamilton path.
    pub fn hamilton_through_k4(&self) -> Result<EulerianSubgraph> {
        if self.vertex_origin.len() != 4 {
            return Err(Error::Precondition("child is not K4".into()));
        }
        let pt = &self.pattern;
        let (u2, v2) = (pt.u[pt.p + 1], pt.v[pt.p + 1]);
        let rest: Vec<Vertex> = self.vertex_origin.iter().copied().filter(|&x| x != u2 && x != v2).collect();
        let mut cycle = vec![u2, rest[0], rest[1], v2];
        cycle.extend(pt.hamilton_path().into_iter().rev());
        cycle.push(u2);
        let mut mult = vec![0u8; self.parent.m()];
        for e in self.path_edges(&cycle) {
            mult[e] += 1;
        }
        EulerianSubgraph::new(&self.parent, mult)
    }
}

/// Removes rainbows with the largest `p` first until none is left.
pub fn remove_rainbows(g: &Multigraph) -> RainbowReduction {
    let mut levels = Vec::new();
    let mut current = g.clone();
    while let Some(pattern) = detect_p_rainbow(&current) {
        let level = remove_one(&current, pattern);
        current = level.child();
        levels.push(level);
    }
    RainbowReduction { core: current, levels }
}

/// Lifts a solution on the core back to the input graph.
pub fn reinsert_rainbows(h: &EulerianSubgraph, reduction: &RainbowReduction) -> Result<EulerianSubgraph> {
    let mut h = h.clone();
    for level in reduction.levels.iter().rev() {
        h = level.reinsert(&h)?;
    }
    Ok(h)
}

/// Solution for a reduction whose core is `K_4`: the Hamilton cycle through
/// the last gadget, lifted through the remaining levels.
pub fn solve_k4_reduction(reduction: &RainbowReduction) -> Result<EulerianSubgraph> {
    let (last, rest) =
        reduction.levels.split_last().ok_or_else(|| Error::Precondition("no rainbow was removed".into()))?;
    let mut h = last.hamilton_through_k4()?;
    for level in rest.iter().rev() {
        h = level.reinsert(&h)?;
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lab::families;

    #[test]
    fn petersen_has_none() {
        assert!(detect_p_rainbow(&families::petersen()).is_none());
    }

    #[test]
    fn detects_embedded_rainbow() {
        for p in 1..=3 {
            let g = families::rainbow_host(p).unwrap();
            assert!(g.is_cubic() && g.is_simple() && g.find_bridges().unwrap().is_empty());
            let pattern = detect_p_rainbow(&g).unwrap();
            assert_eq!(pattern.p, p);
            assert_eq!(pattern.gadget().len(), 2 * p + 4);
            let removed = remove_rainbows(&g);
            assert_eq!(removed.levels.len(), 1);
            assert_eq!(removed.core.n(), g.n() - (2 * p + 4));
            assert!(removed.k4_core());
            assert!(detect_p_rainbow(&removed.core).is_none());
        }
    }

    #[test]
    fn figure_depth_two() {
        let g = families::rainbow_host(2).unwrap();
        let pattern = detect_p_rainbow(&g).unwrap();
        assert_eq!(pattern.p, 2);
        assert!(!g.has_edge_between(pattern.u[3], pattern.v[3]));
    }

    #[test]
    fn rainbow_free_input_is_unchanged() {
        let g = families::petersen();
        let r = remove_rainbows(&g);
        assert_eq!(r.core, g);
        assert!(r.levels.is_empty());
        let h = EulerianSubgraph::new(&g, vec![1; 15]).ok();
        if let Some(h) = h {
            assert_eq!(reinsert_rainbows(&h, &r).unwrap(), h);
        }
    }

    #[test]
    fn k4_core_gives_hamilton_cycle() {
        for p in 1..=3 {
            let g = families::rainbow_host(p).unwrap();
            let r = remove_rainbows(&g);
            let h = solve_k4_reduction(&r).unwrap();
            assert_eq!(h.edge_count(), g.n());
            assert!(h.multiplicity().iter().all(|&k| k <= 1));
        }
    }

    #[test]
    fn reinsertion_cases() {
        let g = families::rainbow_host(1).unwrap();
        let r = remove_rainbows(&g);
        let level = &r.levels[0];
        let core = &r.core;
        let ve = level.virtual_edge;
        let (cu, cv) = core.endpoints(ve);
        // K4 on the core: build solutions using the added edge 0, 1, 2 times.
        let others: Vec<Vertex> = (0..4).filter(|&x| x != cu && x != cv).collect();
        let e = |x, y| core.edge_between(x, y).unwrap();
        let mut once = vec![0u8; core.m()];
        for (x, y) in [(cu, cv), (cv, others[0]), (others[0], others[1]), (others[1], cu)] {
            once[e(x, y)] = 1;
        }
        let mut never = vec![0u8; core.m()];
        for (x, y) in [(cu, others[0]), (others[0], cv), (cv, others[1]), (others[1], cu)] {
            never[e(x, y)] = 1;
        }
        let mut twice = vec![0u8; core.m()];
        for (x, y) in [(cu, cv), (cv, others[0]), (cu, others[1])] {
            twice[e(x, y)] = 2;
        }
        for (mult, k) in [(never, 0), (once, 1), (twice, 2)] {
            let h = EulerianSubgraph::new(core, mult).unwrap();
            let lifted = level.reinsert(&h).unwrap();
            let growth = lifted.edge_count() as i64 - h.edge_count() as i64;
            let gadget = 2 * level.pattern.p as i64 + 4;
            assert_eq!(growth, gadget + 2, "case {k}");
            assert!(3 * growth <= 4 * gadget);
            let pt = &level.pattern;
            let uv = g.edge_between(pt.u[pt.p], pt.v[pt.p]).unwrap();
            assert_eq!(lifted.get(uv), if k == 1 { 2 } else { 1 });
        }
    }
}
