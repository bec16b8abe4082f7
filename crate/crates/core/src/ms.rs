//! The matching-based construction for bridgeless subcubic multigraphs.
//!
//! A DFS tree `T` splits the edges into tree edges and back edges `B`. Each
//! back edge `b = xy` with `y` the endpoint nearer the root has a tree edge
//! `t_b` leaving `y` toward `x`; these form `T_B`, and `R = B ∪ T_B` are the
//! removable edges. Weighting `R` with −1 and the rest with +1, a
//! minimum-weight perfect matching `M` yields the Eulerian subgraph that
//! drops `M ∩ R` and doubles `M \ R`. It stays connected because every `t_b`
//! is paired with a back edge sharing its upper vertex, and no perfect
//! matching contains both.
//!
//! Degree-2 vertices are handled by contracting maximal paths of them into
//! single edges, solving on the resulting cubic multigraph, and expanding.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::euler::{tour_from_subgraph, EulerianSubgraph};
use crate::graph::{EdgeId, Multigraph, Vertex};
use crate::matching::{min_weight_perfect_matching, PerfectMatching, WeightVector};
use crate::report::{extract_cycle_cover, Algorithm, SolveReport, Thirds};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DfsStructure {
    pub root: Vertex,
    pub tree_edges: Vec<EdgeId>,
    pub back_edges: Vec<EdgeId>,
    /// `(b, t_b)` for every back edge, in back-edge id order.
    pub tb_map: Vec<(EdgeId, EdgeId)>,
    /// `(t, partner)` for every edge of `T_B`, in tree-edge id order.
    pub pairs: Vec<(EdgeId, EdgeId)>,
    /// `B ∪ T_B`, sorted.
    pub removable: Vec<EdgeId>,
    /// The tree edge into each vertex (none for the root).
    pub parent_edge: Vec<Option<EdgeId>>,
    pub depth: Vec<usize>,
}

impl DfsStructure {
    pub fn t_b(&self) -> Vec<EdgeId> {
        self.pairs.iter().map(|&(t, _)| t).collect()
    }

    /// The back edge paired with tree edge `t`, if `t ∈ T_B`.
    pub fn partner(&self, t: EdgeId) -> Option<EdgeId> {
        self.pairs.iter().find(|&&(x, _)| x == t).map(|&(_, b)| b)
    }

    /// The upper endpoint of a back edge.
    pub fn head(&self, g: &Multigraph, b: EdgeId) -> Vertex {
        let (u, v) = g.endpoints(b);
        if self.depth[u] <= self.depth[v] {
            u
        } else {
            v
        }
    }
}

/// DFS from `root`, scanning incidence lists in edge-id order.
pub fn dfs_structure(g: &Multigraph, root: Vertex) -> Result<DfsStructure> {
    let n = g.n();
    if root >= n {
        return Err(Error::VertexOutOfRange(root));
    }
    let mut parent_edge: Vec<Option<EdgeId>> = vec![None; n];
    let mut depth = vec![usize::MAX; n];
    let mut classified = vec![false; g.m()];
    let mut tree_edges = Vec::new();
    let mut back_edges = Vec::new();
    let mut cursor = vec![0usize; n];
    depth[root] = 0;
    let mut stack = vec![root];
    while let Some(&v) = stack.last() {
        let inc = g.incident(v);
        if cursor[v] == inc.len() {
            stack.pop();
            continue;
        }
        let (e, w) = inc[cursor[v]];
        cursor[v] += 1;
        if classified[e] {
            continue;
        }
        classified[e] = true;
        if depth[w] == usize::MAX {
            depth[w] = depth[v] + 1;
            parent_edge[w] = Some(e);
            tree_edges.push(e);
            stack.push(w);
        } else {
            back_edges.push(e);
        }
    }
    if depth.contains(&usize::MAX) {
        return Err(Error::Disconnected);
    }
    tree_edges.sort_unstable();
    back_edges.sort_unstable();

    let mut tb_map = Vec::with_capacity(back_edges.len());
    for &b in &back_edges {
        let (u, v) = g.endpoints(b);
        let (y, mut x) = if depth[u] <= depth[v] { (u, v) } else { (v, u) };
        // Climb from the lower end until the next step would pass y.
        loop {
            let e = parent_edge[x].expect("non-root vertex has a parent edge");
            let up = g.other(e, x);
            if up == y {
                tb_map.push((b, e));
                break;
            }
            x = up;
        }
    }
    let mut pairs: Vec<(EdgeId, EdgeId)> = Vec::new();
    for &(b, t) in &tb_map {
        // back edges are visited in id order, so the first one wins
        if !pairs.iter().any(|&(x, _)| x == t) {
            pairs.push((t, b));
        }
    }
    pairs.sort_unstable();
    let mut removable: Vec<EdgeId> = back_edges.iter().copied().chain(pairs.iter().map(|&(t, _)| t)).collect();
    removable.sort_unstable();
    Ok(DfsStructure { root, tree_edges, back_edges, tb_map, pairs, removable, parent_edge, depth })
}

/// −1 on `r`, +1 elsewhere.
pub fn ms_weights(g: &Multigraph, r: &[EdgeId]) -> WeightVector {
    let mut w = vec![1i64; g.m()];
    for &e in r {
        w[e] = -1;
    }
    WeightVector::new(g, w).expect("one weight per edge")
}

/// Multiplicity 0 on `M ∩ R`, 2 on `M \ R`, 1 elsewhere.
pub fn build_eulerian_h(g: &Multigraph, m: &PerfectMatching, r: &[EdgeId]) -> Result<EulerianSubgraph> {
    let mut mult = vec![1u8; g.m()];
    let mut in_r = vec![false; g.m()];
    for &e in r {
        in_r[e] = true;
    }
    for &e in m.edges() {
        mult[e] = if in_r[e] { 0 } else { 2 };
    }
    EulerianSubgraph::new(g, mult).map_err(|err| match err {
        Error::Disconnected | Error::NotSpanning(_) => {
            Error::ContractViolation(format!("removing the matched removable edges disconnects the graph ({err})"))
        }
        other => other,
    })
}

/// `T − (M ∩ T_B) + partners(M ∩ T_B)`, sorted.
pub fn swapped_spanning_tree(d: &DfsStructure, m: &PerfectMatching) -> Vec<EdgeId> {
    let mut tree: Vec<EdgeId> =
        d.tree_edges.iter().copied().filter(|&t| !(m.contains(t) && d.partner(t).is_some())).collect();
    tree.extend(d.pairs.iter().filter(|&&(t, _)| m.contains(t)).map(|&(_, b)| b));
    tree.sort_unstable();
    tree
}

/// A subcubic graph with its maximal degree-2 paths contracted to single
/// edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Contraction {
    /// The cubic multigraph on the degree-3 vertices.
    pub gc: Multigraph,
    /// For each edge of `gc`, its path of input edges in order from the
    /// edge's first endpoint.
    pub paths: Vec<Vec<EdgeId>>,
    /// Input vertex of each `gc` vertex.
    pub hubs: Vec<Vertex>,
}

impl Contraction {
    /// Number of interior (degree-2) vertices on the path of `e`.
    pub fn interior(&self, e: EdgeId) -> usize {
        self.paths[e].len() - 1
    }

    pub fn is_identity(&self) -> bool {
        self.paths.iter().enumerate().all(|(i, p)| p.len() == 1 && p[0] == i)
    }
}

/// Contracts every maximal path through degree-2 vertices. Cubic input is
/// returned unchanged with one-edge paths.
pub fn contract_degree2_paths(g: &Multigraph) -> Result<Contraction> {
    check_degrees(g)?;
    let hubs: Vec<Vertex> = (0..g.n()).filter(|&v| g.degree(v) == 3).collect();
    if hubs.is_empty() {
        return Err(Error::BareCycle);
    }
    if hubs.len() == g.n() {
        return Ok(Contraction { gc: g.clone(), paths: (0..g.m()).map(|e| vec![e]).collect(), hubs });
    }
    let mut index = vec![usize::MAX; g.n()];
    for (i, &h) in hubs.iter().enumerate() {
        index[h] = i;
    }
    let mut used = vec![false; g.m()];
    let mut edges = Vec::new();
    let mut paths = Vec::new();
    for &h in &hubs {
        for &(first, next) in g.incident(h) {
            if used[first] {
                continue;
            }
            used[first] = true;
            let mut path = vec![first];
            let mut at = next;
            let mut via = first;
            while g.degree(at) == 2 {
                let &(e, w) =
                    g.incident(at).iter().find(|&&(e, _)| e != via).expect("degree-2 vertex has a second edge");
                used[e] = true;
                path.push(e);
                via = e;
                at = w;
            }
            if at == h {
                // A cycle hanging off one hub: the hub's third edge is a bridge.
                let bridge = g.incident(h).iter().find(|&&(e, _)| !path.contains(&e)).map(|&(e, _)| e);
                return Err(Error::BridgeFound(bridge.unwrap_or(first)));
            }
            edges.push((index[h], index[at]));
            paths.push(path);
        }
    }
    let gc = Multigraph::new(hubs.len(), edges)?;
    Ok(Contraction { gc, paths, hubs })
}

fn check_degrees(g: &Multigraph) -> Result<()> {
    match (0..g.n()).find(|&v| !(2..=3).contains(&g.degree(v))) {
        Some(v) => Err(Error::DegreeViolation { vertex: v, degree: g.degree(v) }),
        None => Ok(()),
    }
}

/// `|Q₂| − 1` on `r`, `|Q₂| + 1` elsewhere, where `|Q₂|` is the number of
/// degree-2 vertices on the contracted path.
pub fn subcubic_weights(c: &Contraction, r: &[EdgeId]) -> WeightVector {
    let mut in_r = vec![false; c.gc.m()];
    for &e in r {
        in_r[e] = true;
    }
    let w = (0..c.gc.m())
        .map(|e| {
            let q2 = c.interior(e) as i64;
            if in_r[e] {
                q2 - 1
            } else {
                q2 + 1
            }
        })
        .collect();
    WeightVector::new(&c.gc, w).expect("one weight per edge")
}

/// Lifts a subgraph of the contracted graph back to the input. A dropped
/// contracted edge (multiplicity 0) keeps its path connected to both hubs
/// by removing only the first path edge and doubling the rest; a doubled
/// one doubles its whole path.
pub fn expand_to_subcubic(g: &Multigraph, c: &Contraction, gc_h: &EulerianSubgraph) -> Result<EulerianSubgraph> {
    if gc_h.multiplicity().len() != c.gc.m() {
        return Err(Error::MultiplicityLength { expected: c.gc.m(), got: gc_h.multiplicity().len() });
    }
    let mut mult = vec![u8::MAX; g.m()];
    for (e, path) in c.paths.iter().enumerate() {
        match gc_h.get(e) {
            0 => {
                mult[path[0]] = 0;
                for &p in &path[1..] {
                    mult[p] = 2;
                }
            }
            k => {
                for &p in path {
                    mult[p] = k;
                }
            }
        }
    }
    if let Some(e) = mult.iter().position(|&k| k == u8::MAX) {
        return Err(Error::ContractViolation(format!("edge {e} lies on no contracted path")));
    }
    EulerianSubgraph::new(g, mult)
}

/// Solves a connected bridgeless subcubic multigraph with all degrees 2 or 3.
pub fn solve_ms(g: &Multigraph) -> Result<SolveReport> {
    let started = Instant::now();
    let n = g.n();
    if n < 2 {
        return Err(Error::Precondition(format!("need at least 2 vertices, got {n}")));
    }
    if let Some(v) = (0..n).find(|&v| g.degree(v) > 3) {
        return Err(Error::DegreeViolation { vertex: v, degree: g.degree(v) });
    }
    let bridges = g.find_bridges()?;
    if let Some(&b) = bridges.first() {
        return Err(Error::BridgeFound(b));
    }
    check_degrees(g)?;
    let bound = Thirds(4 * n as i64 - 2);

    if !(0..n).any(|v| g.degree(v) == 3) {
        let h = EulerianSubgraph::whole(g)?;
        let tour = tour_from_subgraph(g, &h)?;
        let mut report = SolveReport::basic(Algorithm::Ms, h, tour, bound);
        report.wall_time = started.elapsed();
        return Ok(report);
    }

    let c = contract_degree2_paths(g)?;
    let d = dfs_structure(&c.gc, 0)?;
    let w = subcubic_weights(&c, &d.removable);
    let m = min_weight_perfect_matching(&c.gc, &w)?;
    let gc_h = build_eulerian_h(&c.gc, &m, &d.removable)?;
    let identity = c.is_identity();
    let h = if identity { gc_h.clone() } else { expand_to_subcubic(g, &c, &gc_h)? };
    let tour = tour_from_subgraph(g, &h)?;
    let tree_star = swapped_spanning_tree(&d, &m);
    let weight = m.weight(&w);

    let mut report = SolveReport::basic(Algorithm::Ms, h, tour, bound);
    if identity {
        report.cycle_cover = Some(extract_cycle_cover(g, &report.h));
    } else {
        report.contraction = Some(c.paths);
    }
    report.matching_used = Some(m);
    report.matching_weight = Some(weight);
    report.r_set = d.removable;
    report.tree_star = tree_star;
    if report.h_edges as i64 != g.m() as i64 + weight {
        return Err(Error::ContractViolation(format!(
            "subgraph has {} edges, expected m + c(M) = {}",
            report.h_edges,
            g.m() as i64 + weight
        )));
    }
    report.wall_time = started.elapsed();
    Ok(report)
}
