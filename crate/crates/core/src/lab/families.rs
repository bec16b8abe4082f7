//! Graph families: the named small graphs, the lower-bound constructions and
//! seeded random generators.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Multigraph, Vertex};

/// Random generators give up after this many rejected samples.
const MAX_ATTEMPTS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "family")]
pub enum FamilySpec {
    Petersen,
    K4,
    TripleEdge,
    Fk { k: u32 },
    ThreePath { k: usize },
    ChordedGap { k: usize },
    K2m { n: usize },
    RandomCubic { n: usize, seed: u64, simple: bool },
}

impl FamilySpec {
    pub const NAMES: [&'static str; 8] =
        ["petersen", "k4", "triple_edge", "fk", "three_path", "chorded_gap", "k2m", "random_cubic"];

    /// Builds a spec from a family name and its size parameter. Random
    /// cubic graphs take `n` as the parameter and are simple.
    pub fn from_name(name: &str, param: Option<u64>, seed: u64) -> Result<Self> {
        let need =
            |what: &str| param.ok_or_else(|| Error::Precondition(format!("family {name} needs a parameter {what}")));
        Ok(match name {
            "petersen" => FamilySpec::Petersen,
            "k4" => FamilySpec::K4,
            "triple_edge" => FamilySpec::TripleEdge,
            "fk" => FamilySpec::Fk { k: need("k")? as u32 },
            "three_path" => FamilySpec::ThreePath { k: need("k")? as usize },
            "chorded_gap" => FamilySpec::ChordedGap { k: need("k")? as usize },
            "k2m" => FamilySpec::K2m { n: need("n")? as usize },
            "random_cubic" => FamilySpec::RandomCubic { n: need("n")? as usize, seed, simple: true },
            other => return Err(Error::Precondition(format!("unknown family {other:?}"))),
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            FamilySpec::Petersen => "petersen",
            FamilySpec::K4 => "k4",
            FamilySpec::TripleEdge => "triple_edge",
            FamilySpec::Fk { .. } => "fk",
            FamilySpec::ThreePath { .. } => "three_path",
            FamilySpec::ChordedGap { .. } => "chorded_gap",
            FamilySpec::K2m { .. } => "k2m",
            FamilySpec::RandomCubic { .. } => "random_cubic",
        }
    }
}

pub fn gen_family(spec: FamilySpec) -> Result<Multigraph> {
    match spec {
        FamilySpec::Petersen => Ok(petersen()),
        FamilySpec::K4 => Ok(k4()),
        FamilySpec::TripleEdge => Ok(triple_edge()),
        FamilySpec::Fk { k } => fk(k),
        FamilySpec::ThreePath { k } => three_path(k),
        FamilySpec::ChordedGap { k } => chorded_gap(k),
        FamilySpec::K2m { n } => k2m(n),
        FamilySpec::RandomCubic { n, seed, simple } => random_cubic(n, seed, simple),
    }
}

fn build(n: usize, edges: Vec<(Vertex, Vertex)>) -> Multigraph {
    Multigraph::new(n, edges).expect("family constructions are loop-free")
}

/// Outer 5-cycle `a..e` = 0..4, inner pentagram `f..j` = 5..9 (f-h-j-g-i),
/// spokes a-f, b-g, c-h, d-i, e-j.
pub fn petersen() -> Multigraph {
    build(
        10,
        vec![
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 0),
            (5, 7),
            (7, 9),
            (9, 6),
            (6, 8),
            (8, 5),
            (0, 5),
            (1, 6),
            (2, 7),
            (3, 8),
            (4, 9),
        ],
    )
}

/// A 9-cycle of the Petersen graph avoiding vertex 0.
pub fn petersen_nine_cycle() -> Vec<Vertex> {
    vec![1, 2, 3, 4, 9, 7, 5, 8, 6]
}

pub fn k4() -> Multigraph {
    build(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
}

pub fn triple_edge() -> Multigraph {
    build(2, vec![(0, 1); 3])
}

/// Triangles 0-1-2 and 3-4-5 with rungs `i`–`i+3`.
pub fn prism() -> Multigraph {
    build(6, vec![(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)])
}

pub fn k33() -> Multigraph {
    build(6, (0..3).flat_map(|i| (3..6).map(move |j| (i, j))).collect())
}

/// The 3-cube: vertices are 3-bit words, edges flip one bit.
pub fn cube() -> Multigraph {
    let mut edges = Vec::new();
    for v in 0..8usize {
        for bit in [1, 2, 4] {
            if v & bit == 0 {
                edges.push((v, v | bit));
            }
        }
    }
    build(8, edges)
}

/// Two complete binary trees of depth `k` with roots `s = 0` and `t`, the
/// edge `st`, and the i-th leaves `l`, `r` joined through fresh vertices
/// `p`, `q` by edges `pq, lp, lq, rp, rq`. Has `6·2^k − 2` vertices.
pub fn fk(k: u32) -> Result<Multigraph> {
    if !(1..=20).contains(&k) {
        return Err(Error::Precondition(format!("fk needs 1 <= k <= 20, got {k}")));
    }
    let tree = (1usize << (k + 1)) - 1;
    let leaves = 1usize << k;
    let mut edges = Vec::new();
    // Heap layout inside each tree: children of i are 2i+1, 2i+2.
    for offset in [0, tree] {
        for i in 0..tree - leaves {
            edges.push((offset + i, offset + 2 * i + 1));
            edges.push((offset + i, offset + 2 * i + 2));
        }
    }
    edges.push((0, tree));
    let first_leaf = tree - leaves;
    for i in 0..leaves {
        let l = first_leaf + i;
        let r = tree + first_leaf + i;
        let p = 2 * tree + 2 * i;
        let q = p + 1;
        edges.extend([(p, q), (l, p), (l, q), (r, p), (r, q)]);
    }
    Ok(build(2 * tree + 2 * leaves, edges))
}

/// Hubs 0 and 1 joined by three internally disjoint paths with `k` edges
/// each; `k = 1` is the triple edge.
pub fn three_path(k: usize) -> Result<Multigraph> {
    if k == 0 {
        return Err(Error::Precondition("three_path needs k >= 1".into()));
    }
    let mut edges = Vec::new();
    let mut n = 2;
    for _ in 0..3 {
        let mut prev = 0;
        for _ in 1..k {
            edges.push((prev, n));
            prev = n;
            n += 1;
        }
        edges.push((prev, 1));
    }
    Ok(build(n, edges))
}

/// `three_path(k)` with every degree-2 vertex replaced by a 4-cycle
/// `u0, a, v0, b` with chord `ab`, attached to the old neighbours through
/// `u0` and `v0`. Cubic and simple for `k >= 2`.
pub fn chorded_gap(k: usize) -> Result<Multigraph> {
    if k < 2 {
        return Err(Error::Precondition("chorded_gap needs k >= 2".into()));
    }
    let mut edges = Vec::new();
    let mut n = 2;
    for _ in 0..3 {
        let mut prev = 0;
        for _ in 1..k {
            let (u0, a, v0, b) = (n, n + 1, n + 2, n + 3);
            n += 4;
            edges.extend([(u0, a), (a, v0), (v0, b), (b, u0), (a, b), (prev, u0)]);
            prev = v0;
        }
        edges.push((prev, 1));
    }
    Ok(build(n, edges))
}

/// A `p`-rainbow whose ends attach to two vertices of `K_4` minus an
/// edge: simple, cubic, bridgeless, `n = 2p + 8`. Vertices: `a = 0`,
/// `b = 1`, then `u_0..u_p`, `v_0..v_p`, then the four core vertices.
pub fn rainbow_host(p: usize) -> Result<Multigraph> {
    if p == 0 {
        return Err(Error::Precondition("a rainbow needs p >= 1".into()));
    }
    let u = |i: usize| 2 + i;
    let v = |i: usize| 3 + p + i;
    let base = 4 + 2 * p;
    let (x, y, s, t) = (base, base + 1, base + 2, base + 3);
    let mut edges = vec![(0, 1), (0, u(0)), (1, u(0)), (0, v(0)), (1, v(0))];
    for i in 1..=p {
        edges.extend([(u(i - 1), u(i)), (v(i - 1), v(i)), (u(i), v(i))]);
    }
    edges.extend([(u(p), x), (v(p), y), (x, s), (x, t), (y, s), (y, t), (s, t)]);
    Ok(build(base + 4, edges))
}

/// `K_{2,n−2}` with hubs 0 and 1.
pub fn k2m(n: usize) -> Result<Multigraph> {
    if n < 3 {
        return Err(Error::Precondition(format!("k2m needs n >= 3, got {n}")));
    }
    Ok(build(n, (2..n).flat_map(|v| [(0, v), (1, v)]).collect()))
}

/// A connected bridgeless cubic multigraph from the pairing model, loops
/// rejected (and parallel edges too when `simple`).
pub fn random_cubic(n: usize, seed: u64, simple: bool) -> Result<Multigraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_cubic_with(n, simple, &mut rng)
}

fn random_cubic_with(n: usize, simple: bool, rng: &mut ChaCha8Rng) -> Result<Multigraph> {
    if n < 2 || n % 2 == 1 || (simple && n < 4) {
        return Err(Error::Precondition(format!(
            "random cubic graphs need an even n >= {}, got {n}",
            if simple { 4 } else { 2 }
        )));
    }
    let mut points: Vec<Vertex> = (0..3 * n).map(|p| p / 3).collect();
    for _ in 0..MAX_ATTEMPTS {
        points.shuffle(rng);
        let edges: Vec<(Vertex, Vertex)> = points.chunks(2).map(|c| (c[0], c[1])).collect();
        if edges.iter().any(|&(u, v)| u == v) {
            continue;
        }
        let g = build(n, edges);
        if simple && !g.is_simple() {
            continue;
        }
        if g.is_connected() && g.bridges_of_components().is_empty() {
            return Ok(g);
        }
    }
    Err(Error::Precondition(format!("no bridgeless cubic sample after {MAX_ATTEMPTS} attempts")))
}

/// A random cubic base graph on `n_cubic` vertices with `subdivisions`
/// degree-2 vertices inserted on uniformly chosen edges. Bridgeless,
/// subcubic, with at least one degree-3 vertex.
pub fn random_subcubic(n_cubic: usize, subdivisions: usize, seed: u64, simple: bool) -> Result<Multigraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = random_cubic_with(n_cubic, simple, &mut rng)?;
    Ok(subdivide(&base, subdivisions, &mut rng))
}

fn subdivide(base: &Multigraph, count: usize, rng: &mut ChaCha8Rng) -> Multigraph {
    let mut edges = base.edges().to_vec();
    let mut n = base.n();
    for _ in 0..count {
        let i = rng.random_range(0..edges.len());
        let (u, v) = edges[i];
        edges[i] = (u, n);
        edges.push((n, v));
        n += 1;
    }
    build(n, edges)
}

/// A random connected subcubic graph with bridges: blocks (single vertices,
/// cycles and subdivided cubic graphs) joined into a tree by bridges that
/// only touch vertices of block degree at most 2.
pub fn random_bridged(blocks: usize, seed: u64) -> Result<Multigraph> {
    if blocks < 2 {
        return Err(Error::Precondition("a bridged graph needs at least 2 blocks".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    let mut degree: Vec<usize> = Vec::new();
    let mut members: Vec<Vec<Vertex>> = Vec::new();
    for _ in 0..blocks {
        let start = degree.len();
        let block: Vec<(Vertex, Vertex)>;
        let size;
        match rng.random_range(0..3) {
            0 => {
                size = 1;
                block = Vec::new();
            }
            1 => {
                size = rng.random_range(3..9);
                block = (0..size).map(|i| (i, (i + 1) % size)).collect();
            }
            _ => {
                let n_cubic = 2 * rng.random_range(2..5);
                let base = random_cubic_with(n_cubic, false, &mut rng)?;
                let extra = rng.random_range(2..6);
                let g = subdivide(&base, extra, &mut rng);
                size = g.n();
                block = g.edges().to_vec();
            }
        }
        for &(u, v) in &block {
            edges.push((start + u, start + v));
        }
        degree.resize(start + size, 0);
        for &(u, v) in &block {
            degree[start + u] += 1;
            degree[start + v] += 1;
        }
        let vertices: Vec<Vertex> = (start..start + size).collect();
        if !members.is_empty() {
            let open =
                |d: &[usize], vs: &[Vertex]| -> Vec<Vertex> { vs.iter().copied().filter(|&v| d[v] < 3).collect() };
            let mine = open(&degree, &vertices);
            let hosts: Vec<usize> = (0..members.len()).filter(|&j| !open(&degree, &members[j]).is_empty()).collect();
            let j = hosts[rng.random_range(0..hosts.len())];
            let theirs = open(&degree, &members[j]);
            let x = theirs[rng.random_range(0..theirs.len())];
            let y = mine[rng.random_range(0..mine.len())];
            edges.push((x, y));
            degree[x] += 1;
            degree[y] += 1;
        }
        members.push(vertices);
    }
    Ok(build(degree.len(), edges))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_graphs() {
        let p = petersen();
        assert!(p.is_cubic() && p.is_simple() && p.find_bridges().unwrap().is_empty());
        let nine = petersen_nine_cycle();
        for i in 0..9 {
            assert!(p.has_edge_between(nine[i], nine[(i + 1) % 9]));
        }
        for g in [k4(), prism(), k33(), cube()] {
            assert!(g.is_cubic() && g.is_simple() && g.is_connected());
        }
    }

    #[test]
    fn fk_shape() {
        for k in 1..=4 {
            let g = fk(k).unwrap();
            assert_eq!(g.n(), 6 * (1 << k) - 2);
            assert!(g.is_cubic() && g.is_simple());
            assert!(g.find_bridges().unwrap().is_empty());
            let tree = (1 << (k + 1)) - 1;
            // s-t distance avoiding the edge st
            let without =
                Multigraph::new(g.n(), g.edges().iter().copied().filter(|&e| e != (0, tree)).collect()).unwrap();
            assert_eq!(without.metric_distance(0, tree).unwrap(), 2 * k + 2);
        }
        assert!(fk(0).is_err());
    }

    #[test]
    fn three_path_shape() {
        let g = three_path(3).unwrap();
        assert_eq!(g.n(), 8);
        let deg = g.degrees();
        assert_eq!(deg.iter().filter(|&&d| d == 3).count(), 2);
        assert_eq!(deg.iter().filter(|&&d| d == 2).count(), 6);
        assert_eq!(three_path(1).unwrap(), triple_edge());
    }

    #[test]
    fn chorded_gap_shape() {
        let g = chorded_gap(2).unwrap();
        assert_eq!(g.n(), 14);
        assert!(g.is_cubic() && g.is_simple());
        assert!(g.find_bridges().unwrap().is_empty());
    }

    #[test]
    fn k2m_shape() {
        let g = k2m(6).unwrap();
        assert_eq!(g.m(), 8);
        assert_eq!(g.degree(0), 4);
        assert!(k2m(2).is_err());
    }

    #[test]
    fn random_generators() {
        for seed in 0..20 {
            let g = random_cubic(16, seed, true).unwrap();
            assert!(g.is_cubic() && g.is_simple() && g.is_connected());
            assert!(g.find_bridges().unwrap().is_empty());
            let m = random_cubic(8, seed, false).unwrap();
            assert!(m.is_cubic() && m.find_bridges().unwrap().is_empty());
            let s = random_subcubic(8, 5, seed, true).unwrap();
            assert_eq!(s.n(), 13);
            assert!(s.is_subcubic() && s.find_bridges().unwrap().is_empty());
            let b = random_bridged(5, seed).unwrap();
            assert!(b.is_subcubic() && b.is_connected());
            assert!(!b.find_bridges().unwrap().is_empty());
        }
        assert_eq!(random_cubic(20, 7, true).unwrap(), random_cubic(20, 7, true).unwrap());
        assert!(random_cubic(7, 0, true).is_err());
    }

    #[test]
    fn spec_names_round_trip() {
        for name in FamilySpec::NAMES {
            let spec = FamilySpec::from_name(name, Some(2), 1);
            let spec = match name {
                "k2m" => FamilySpec::from_name(name, Some(6), 1),
                "random_cubic" => FamilySpec::from_name(name, Some(10), 1),
                _ => spec,
            }
            .unwrap();
            assert_eq!(spec.name(), name);
            assert!(gen_family(spec).is_ok(), "{name}");
        }
        assert!(FamilySpec::from_name("fk", None, 0).is_err());
        assert!(FamilySpec::from_name("nope", Some(1), 0).is_err());
    }
}
