//! Synthetic graphs: named fixtures for tests and random corpora for the
//! verification subcommand.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn fixture(edges: Vec<(usize, usize)>) -> Graph {
    Graph::from_index_edges(&edges).expect("fixture edges are valid").0
}

/// Complete graph on n ≥ 2 nodes; (n−1)-regular, λ₁ = n−1.
pub fn complete(n: usize) -> Graph {
    assert!(n >= 2);
    let mut edges = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            edges.push((i, j));
        }
    }
    fixture(edges)
}

/// Cycle on n ≥ 3 nodes; 2-regular, λ₁ = 2.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3);
    let mut edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
    edges.push((n - 1, 0));
    fixture(edges)
}

/// Path on n ≥ 2 nodes.
pub fn path(n: usize) -> Graph {
    assert!(n >= 2);
    fixture((0..n - 1).map(|i| (i, i + 1)).collect())
}

/// Star: node "0" is the center, nodes "1"..=leaves the leaves; λ₁ = √leaves.
pub fn star(leaves: usize) -> Graph {
    assert!(leaves >= 1);
    fixture((1..=leaves).map(|leaf| (0, leaf)).collect())
}

/// Erdős–Rényi G(n, p). None when no edge survives cleaning.
pub fn gnp(n: usize, p: f64, rng: &mut impl Rng) -> Option<Graph> {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.random_bool(p) {
                edges.push((i, j));
            }
        }
    }
    Graph::from_index_edges(&edges).ok().map(|(g, _)| g)
}

/// G(n, p) conditioned on being connected with all n nodes present.
/// Panics after an unreasonable number of rejections (test usage only).
pub fn gnp_connected(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    for _ in 0..100_000 {
        if let Some(g) = gnp(n, p, rng) {
            if g.node_count() == n && g.is_connected() {
                return g;
            }
        }
    }
    panic!("no connected G({n}, {p}) sample after 100000 attempts");
}

/// Preferential attachment: seed clique of `attach + 1` nodes, then each new
/// node links to `attach` distinct targets drawn proportionally to degree.
pub fn preferential_attachment(n: usize, attach: usize, rng: &mut impl Rng) -> Graph {
    assert!(attach >= 1 && n > attach + 1);
    let mut edges: Vec<(usize, usize)> = Vec::with_capacity(n * attach);
    // every edge endpoint appended once: sampling an index uniformly from
    // this list is degree-proportional sampling
    let mut endpoints: Vec<usize> = Vec::with_capacity(2 * n * attach);
    for i in 0..=attach {
        for j in (i + 1)..=attach {
            edges.push((i, j));
            endpoints.push(i);
            endpoints.push(j);
        }
    }
    let mut chosen: Vec<usize> = Vec::with_capacity(attach);
    for v in (attach + 1)..n {
        chosen.clear();
        while chosen.len() < attach {
            let t = endpoints[rng.random_range(0..endpoints.len())];
            if !chosen.contains(&t) {
                chosen.push(t);
            }
        }
        for &t in &chosen {
            edges.push((t, v));
        }
        for &t in &chosen {
            endpoints.push(t);
            endpoints.push(v);
        }
    }
    fixture(edges)
}

/// Connected random graphs with n ∈ [5, 60] and edge density in [0.1, 0.6];
/// the corpus behind oracle-equivalence verification.
pub fn random_corpus(seed: u64, count: usize) -> Vec<Graph> {
    let mut rng = seeded_rng(seed);
    (0..count)
        .map(|_| {
            let n = rng.random_range(5..=60);
            let p = rng.random_range(0.1..=0.6);
            gnp_connected(n, p, &mut rng)
        })
        .collect()
}
