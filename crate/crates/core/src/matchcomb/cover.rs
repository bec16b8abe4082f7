//! From a perfect matching to a spanning Eulerian subgraph: the cycle cover
//! `E \ M` is improved locally along chordless 4- and 5-cycles, and the
//! remaining components are joined by doubled edges.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::euler::EulerianSubgraph;
use crate::graph::{EdgeId, Multigraph, Vertex};
use crate::matching::PerfectMatching;
use crate::report::{cycles_of, Cycle};

/// The cycles of `E \ M`.
pub fn cycle_cover_from_matching(g: &Multigraph, m: &PerfectMatching) -> Vec<Cycle> {
    cycles_of(g, |e| !m.contains(e))
}

fn cover_mask(g: &Multigraph, cover: &[Cycle]) -> Vec<bool> {
    let mut mask = vec![false; g.m()];
    for e in cover.iter().flat_map(|c| &c.edges) {
        mask[*e] = true;
    }
    mask
}

/// Chordless cycles of length `len` in a simple graph, each listed once as
/// a vertex sequence starting at its smallest vertex with `c[1] < c[len-1]`,
/// in lexicographic order.
pub fn chordless_cycles(g: &Multigraph, len: usize) -> Vec<Vec<Vertex>> {
    fn extend(g: &Multigraph, len: usize, path: &mut Vec<Vertex>, out: &mut Vec<Vec<Vertex>>) {
        let last = *path.last().unwrap();
        if path.len() == len {
            if path[1] < path[len - 1] && g.has_edge_between(last, path[0]) {
                out.push(path.clone());
            }
            return;
        }
        let mut next: Vec<Vertex> = g.incident(last).iter().map(|&(_, w)| w).collect();
        next.sort_unstable();
        next.dedup();
        for w in next {
            // w must exceed the start, be new, and see no earlier vertex
            // except its predecessor (and the start, when it closes the cycle)
            if w <= path[0] || path.contains(&w) {
                continue;
            }
            let closing = path.len() + 1 == len;
            let chord = path[..path.len() - 1]
                .iter()
                .enumerate()
                .any(|(i, &x)| !(closing && i == 0) && g.has_edge_between(x, w));
            if chord {
                continue;
            }
            path.push(w);
            extend(g, len, path, out);
            path.pop();
        }
    }
    let mut out = Vec::new();
    if len < 4 {
        return out;
    }
    for start in 0..g.n() {
        extend(g, len, &mut vec![start], &mut out);
    }
    out.sort();
    out
}

fn cycle_edges(g: &Multigraph, c: &[Vertex]) -> Vec<EdgeId> {
    (0..c.len()).map(|i| g.edge_between(c[i], c[(i + 1) % c.len()]).expect("cycle edge")).collect()
}

/// Applies the 4-cycle swap until no chordless 4-cycle meets exactly two
/// cover cycles. Such a 4-cycle alternates between a cover edge of each
/// cycle and two non-cover edges; exchanging them merges the two cycles.
pub fn operation_i(g: &Multigraph, cover: Vec<Cycle>) -> Vec<Cycle> {
    let squares: Vec<Vec<EdgeId>> = chordless_cycles(g, 4).iter().map(|c| cycle_edges(g, c)).collect();
    let mut mask = cover_mask(g, &cover);
    'scan: loop {
        let (label, _) = g.component_labels(|e| mask[e]);
        for square in &squares {
            let mut comps: Vec<usize> = square
                .iter()
                .flat_map(|&e| {
                    let (x, y) = g.endpoints(e);
                    [label[x], label[y]]
                })
                .collect();
            comps.sort_unstable();
            comps.dedup();
            if comps.len() != 2 {
                continue;
            }
            for &e in square {
                mask[e] = !mask[e];
            }
            continue 'scan;
        }
        break;
    }
    cycles_of(g, |e| mask[e])
}

/// A connected Eulerian multigraph on a vertex subset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fragment {
    /// Sorted.
    pub vertices: Vec<Vertex>,
    pub multiplicity: BTreeMap<EdgeId, u32>,
}

impl Fragment {
    pub fn from_cycle(c: &Cycle) -> Self {
        let mut vertices = c.vertices.clone();
        vertices.sort_unstable();
        let mut multiplicity = BTreeMap::new();
        for &e in &c.edges {
            *multiplicity.entry(e).or_insert(0) += 1;
        }
        Fragment { vertices, multiplicity }
    }

    pub fn edge_count(&self) -> usize {
        self.multiplicity.values().map(|&k| k as usize).sum()
    }

    /// Every vertex has positive even degree, no edge leaves the vertex set
    /// and the support is connected.
    pub fn is_valid(&self, g: &Multigraph) -> bool {
        let mut degree: BTreeMap<Vertex, u32> = BTreeMap::new();
        for (&e, &k) in &self.multiplicity {
            let (x, y) = g.endpoints(e);
            for v in [x, y] {
                if self.vertices.binary_search(&v).is_err() {
                    return false;
                }
                *degree.entry(v).or_insert(0) += k;
            }
        }
        let even = self.vertices.iter().all(|v| degree.get(v).is_some_and(|&d| d > 0 && d % 2 == 0));
        even && self.connected(g)
    }

    fn connected(&self, g: &Multigraph) -> bool {
        let Some(&start) = self.vertices.first() else { return true };
        let mut seen = vec![start];
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for &(e, w) in g.incident(x) {
                if self.multiplicity.get(&e).is_some_and(|&k| k > 0) && !seen.contains(&w) {
                    seen.push(w);
                    stack.push(w);
                }
            }
        }
        seen.len() == self.vertices.len()
    }
}

/// Merges two fragments sharing at least two vertices into one with two
/// fewer edges than their sum: at the smallest shared vertex where it keeps
/// the union connected, two parallel copies of an incident edge are removed.
pub fn merge_eulerian(g: &Multigraph, h1: &Fragment, h2: &Fragment) -> Result<Fragment> {
    let shared: Vec<Vertex> = h1.vertices.iter().copied().filter(|v| h2.vertices.binary_search(v).is_ok()).collect();
    if shared.len() < 2 {
        return Err(Error::Precondition(format!("fragments share {} vertices, need 2", shared.len())));
    }
    let mut vertices: Vec<Vertex> = h1.vertices.iter().chain(&h2.vertices).copied().collect();
    vertices.sort_unstable();
    vertices.dedup();
    let mut multiplicity = h1.multiplicity.clone();
    for (&e, &k) in &h2.multiplicity {
        *multiplicity.entry(e).or_insert(0) += k;
    }
    let sum = Fragment { vertices, multiplicity };
    for &u in &shared {
        for &(e, _) in g.incident(u) {
            if sum.multiplicity.get(&e).copied().unwrap_or(0) < 2 {
                continue;
            }
            let mut candidate = sum.clone();
            let k = candidate.multiplicity.get_mut(&e).unwrap();
            *k -= 2;
            if *k == 0 {
                candidate.multiplicity.remove(&e);
            }
            if candidate.is_valid(g) {
                return Ok(candidate);
            }
        }
    }
    Err(Error::ContractViolation("no removable pair of parallel edges".into()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerianCover {
    /// Vertex-disjoint fragments covering every vertex.
    pub components: Vec<Fragment>,
}

impl EulerianCover {
    pub fn from_cycles(cover: &[Cycle]) -> Self {
        EulerianCover { components: cover.iter().map(Fragment::from_cycle).collect() }
    }

    pub fn edge_count(&self) -> usize {
        self.components.iter().map(Fragment::edge_count).sum()
    }
}

/// Merges pairs of components along chordless 5-cycles that meet exactly
/// two components of at least 5 vertices each, in a 2/3 split. The
/// component holding two of the cycle's vertices absorbs the cycle first;
/// the result then absorbs the other, for one extra edge in total.
pub fn operation_ii(g: &Multigraph, cover: Vec<Cycle>) -> Result<EulerianCover> {
    let pentagons: Vec<(Vec<Vertex>, Fragment)> = chordless_cycles(g, 5)
        .into_iter()
        .map(|c| {
            let edges = cycle_edges(g, &c);
            let f = Fragment::from_cycle(&Cycle { vertices: c.clone(), edges });
            (c, f)
        })
        .collect();
    let mut cover = EulerianCover::from_cycles(&cover);
    'scan: loop {
        let mut owner = vec![usize::MAX; g.n()];
        for (i, f) in cover.components.iter().enumerate() {
            for &v in &f.vertices {
                owner[v] = i;
            }
        }
        for (c, pentagon) in &pentagons {
            let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
            for &v in c {
                *counts.entry(owner[v]).or_insert(0) += 1;
            }
            let split: Vec<(usize, usize)> = counts.into_iter().collect();
            let [(i, ci), (j, cj)] = split[..] else { continue };
            let big = |k: usize| cover.components[k].vertices.len() >= 5;
            if !big(i) || !big(j) || ci.min(cj) != 2 || ci.max(cj) != 3 {
                continue;
            }
            let (two, three) = if ci == 2 { (i, j) } else { (j, i) };
            let first = merge_eulerian(g, &cover.components[two], pentagon)?;
            let merged = merge_eulerian(g, &first, &cover.components[three])?;
            let (lo, hi) = (two.min(three), two.max(three));
            cover.components.remove(hi);
            cover.components[lo] = merged;
            continue 'scan;
        }
        break;
    }
    Ok(cover)
}

/// Connects the components by doubling a spanning tree of the contracted
/// graph, chosen greedily over edges in id order. Multiplicities above 2
/// lose two copies, which keeps degrees even and the support unchanged.
pub fn assemble_spanning(g: &Multigraph, cover: &EulerianCover) -> Result<EulerianSubgraph> {
    let mut owner = vec![usize::MAX; g.n()];
    for (i, f) in cover.components.iter().enumerate() {
        for &v in &f.vertices {
            owner[v] = i;
        }
    }
    if let Some(v) = owner.iter().position(|&o| o == usize::MAX) {
        return Err(Error::NotSpanning(v));
    }
    let mut mult = vec![0u32; g.m()];
    for f in &cover.components {
        for (&e, &k) in &f.multiplicity {
            mult[e] += k;
        }
    }
    let mut parent: Vec<usize> = (0..cover.components.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (e, &(x, y)) in g.edges().iter().enumerate() {
        let (a, b) = (find(&mut parent, owner[x]), find(&mut parent, owner[y]));
        if a != b {
            parent[a] = b;
            mult[e] += 2;
        }
    }
    let mult = mult.into_iter().map(|k| if k > 2 { k - 2 } else { k } as u8).collect();
    EulerianSubgraph::new(g, mult)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lab::families;
    use crate::matching::enumerate_perfect_matchings;

    #[test]
    fn petersen_has_twelve_pentagons() {
        let g = families::petersen();
        assert_eq!(chordless_cycles(&g, 5).len(), 12);
        assert!(chordless_cycles(&g, 4).is_empty());
    }

    #[test]
    fn cube_squares() {
        assert_eq!(chordless_cycles(&families::cube(), 4).len(), 6);
        // K4's 4-cycles all have chords
        assert!(chordless_cycles(&families::k4(), 4).is_empty());
    }

    #[test]
    fn petersen_pentagon_merge() {
        // every perfect matching leaves two 5-cycles; one pentagon fuses
        // them into 11 edges
        let g = families::petersen();
        for m in enumerate_perfect_matchings(&g, 20).unwrap() {
            let cover = operation_i(&g, cycle_cover_from_matching(&g, &m));
            assert_eq!(cover.len(), 2);
            let merged = operation_ii(&g, cover).unwrap();
            assert_eq!(merged.components.len(), 1);
            assert_eq!(merged.edge_count(), 11);
            let h = assemble_spanning(&g, &merged).unwrap();
            assert_eq!(h.edge_count(), 11);
        }
    }

    #[test]
    fn cube_squares_join_cycles() {
        let g = families::cube();
        for m in enumerate_perfect_matchings(&g, 20).unwrap() {
            let cover = operation_i(&g, cycle_cover_from_matching(&g, &m));
            assert_eq!(cover.len(), 1, "matching {:?}", m.edges());
            assert_eq!(cover[0].len(), 8);
        }
    }

    #[test]
    fn merge_two_copies_of_a_square() {
        let g = Multigraph::new(4, vec![(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let c = Fragment::from_cycle(&Cycle { vertices: vec![0, 1, 2, 3], edges: vec![0, 1, 2, 3] });
        let merged = merge_eulerian(&g, &c, &c).unwrap();
        assert_eq!(merged.edge_count(), 6);
        assert!(merged.is_valid(&g));
    }

    #[test]
    fn merge_needs_two_shared_vertices() {
        let g = families::petersen();
        let a = Fragment::from_cycle(&Cycle { vertices: vec![0, 1, 2, 3, 4], edges: vec![0, 1, 2, 3, 4] });
        let far = Fragment { vertices: vec![4, 9], multiplicity: BTreeMap::new() };
        assert!(merge_eulerian(&g, &a, &far).is_err());
    }

    #[test]
    fn assembly_doubles_tree_edges() {
        let g = families::prism();
        let tri = |vs: [usize; 3]| {
            let edges = (0..3).map(|i| g.edge_between(vs[i], vs[(i + 1) % 3]).unwrap()).collect();
            Fragment::from_cycle(&Cycle { vertices: vs.to_vec(), edges })
        };
        let cover = EulerianCover { components: vec![tri([0, 1, 2]), tri([3, 4, 5])] };
        let h = assemble_spanning(&g, &cover).unwrap();
        assert_eq!(h.edge_count(), 8);
    }
}
