//! Global minimum cut of a small weighted graph (Stoer–Wagner).

use crate::graph::Vertex;

/// Minimum cut of the symmetric weight matrix `w`: the cut value and one
/// side of it. Graphs with fewer than two vertices have no cut and return
/// infinity.
pub fn stoer_wagner(w: &[Vec<f64>]) -> (f64, Vec<Vertex>) {
    let n = w.len();
    if n < 2 {
        return (f64::INFINITY, Vec::new());
    }
    let mut w: Vec<Vec<f64>> = w.to_vec();
    // members[v]: original vertices merged into super-vertex v
    let mut members: Vec<Vec<Vertex>> = (0..n).map(|v| vec![v]).collect();
    let mut alive: Vec<Vertex> = (0..n).collect();
    let mut best = (f64::INFINITY, Vec::new());
    while alive.len() > 1 {
        let mut added = vec![false; n];
        let mut key = vec![0.0; n];
        let mut prev = alive[0];
        let mut last = alive[0];
        for step in 0..alive.len() {
            let next = alive
                .iter()
                .copied()
                .filter(|&v| !added[v])
                .fold(None, |acc: Option<Vertex>, v| match acc {
                    Some(a) if key[a] >= key[v] => Some(a),
                    _ => Some(v),
                })
                .expect("an unadded vertex remains");
            added[next] = true;
            if step + 1 == alive.len() {
                if key[next] < best.0 {
                    let mut side = members[next].clone();
                    side.sort_unstable();
                    best = (key[next], side);
                }
                prev = last;
                last = next;
                break;
            }
            for &v in &alive {
                if !added[v] {
                    key[v] += w[next][v];
                }
            }
            prev = last;
            last = next;
        }
        // merge `last` into `prev`
        let (s, t) = (prev, last);
        let moved = std::mem::take(&mut members[t]);
        members[s].extend(moved);
        for &v in &alive {
            let add = w[t][v];
            w[s][v] += add;
            w[v][s] = w[s][v];
        }
        w[s][s] = 0.0;
        alive.retain(|&v| v != t);
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn matrix(n: usize, edges: &[(usize, usize, f64)]) -> Vec<Vec<f64>> {
        let mut w = vec![vec![0.0; n]; n];
        for &(u, v, x) in edges {
            w[u][v] += x;
            w[v][u] += x;
        }
        w
    }

    #[allow(clippy::needless_range_loop)]
    fn brute(w: &[Vec<f64>]) -> f64 {
        let n = w.len();
        let mut best = f64::INFINITY;
        for mask in 1..(1u32 << n) - 1 {
            let mut cut = 0.0;
            for u in 0..n {
                for v in 0..n {
                    if mask >> u & 1 == 1 && mask >> v & 1 == 0 {
                        cut += w[u][v];
                    }
                }
            }
            best = f64::min(best, cut);
        }
        best
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn classic_example() {
        // the eight-vertex example of Stoer and Wagner, min cut 4
        let w = matrix(
            8,
            &[
                (0, 1, 2.0),
                (0, 4, 3.0),
                (1, 2, 3.0),
                (1, 4, 2.0),
                (1, 5, 2.0),
                (2, 3, 4.0),
                (2, 6, 2.0),
                (3, 6, 2.0),
                (3, 7, 2.0),
                (4, 5, 3.0),
                (5, 6, 1.0),
                (6, 7, 3.0),
            ],
        );
        let (value, side) = stoer_wagner(&w);
        assert_eq!(value, 4.0);
        let mut cut = 0.0;
        for &u in &side {
            for v in 0..8 {
                if !side.contains(&v) {
                    cut += w[u][v];
                }
            }
        }
        assert_eq!(cut, 4.0);
    }

    #[test]
    fn disconnected_has_zero_cut() {
        let w = matrix(4, &[(0, 1, 1.0), (2, 3, 1.0)]);
        assert_eq!(stoer_wagner(&w).0, 0.0);
    }

    #[test]
    fn agrees_with_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(12345);
        for _ in 0..50 {
            let n = rng.random_range(2..9);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.random_bool(0.4) {
                        edges.push((u, v, rng.random_range(0..5) as f64 * 0.5));
                    }
                }
            }
            let w = matrix(n, &edges);
            assert!((stoer_wagner(&w).0 - brute(&w)).abs() < 1e-12);
        }
    }
}
