use crate::graph::OntoGraph;

const MAX_ITERATIONS: usize = 100_000;

/// PageRank over `(from, to)` edges; parallel edges count once each. Mass at
/// nodes without out-edges is spread uniformly. Iterates until the largest
/// per-node change drops below `epsilon`.
pub fn pagerank_edges(n: usize, edges: &[(usize, usize)], damping: f64, epsilon: f64) -> Vec<f64> {
    if n == 0 {
        return Vec::new();
    }
    let mut out_degree = vec![0usize; n];
    let mut incoming: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(a, b) in edges {
        out_degree[a] += 1;
        incoming[b].push(a);
    }
    let uniform = 1.0 / n as f64;
    let mut rank = vec![uniform; n];
    let mut next = vec![0.0; n];
    for _ in 0..MAX_ITERATIONS {
        let dangling: f64 = (0..n).filter(|&i| out_degree[i] == 0).map(|i| rank[i]).sum();
        let base = (1.0 - damping) * uniform + damping * dangling * uniform;
        let mut delta: f64 = 0.0;
        for i in 0..n {
            let inflow: f64 = incoming[i]
                .iter()
                .map(|&j| rank[j] / out_degree[j] as f64)
                .sum();
            next[i] = base + damping * inflow;
            delta = delta.max((next[i] - rank[i]).abs());
        }
        std::mem::swap(&mut rank, &mut next);
        if delta < epsilon {
            break;
        }
    }
    let total: f64 = rank.iter().sum();
    rank.iter_mut().for_each(|r| *r /= total);
    rank
}

/// PageRank over the isA edges, walking from child to parent; with
/// `directed == false` every edge is walked both ways (RDFRank).
pub fn pagerank(g: &OntoGraph, directed: bool, damping: f64, epsilon: f64) -> Vec<f64> {
    let mut edges = g.isa_edges();
    if !directed {
        let back: Vec<(usize, usize)> = edges.iter().map(|&(a, b)| (b, a)).collect();
        edges.extend(back);
    }
    pagerank_edges(g.len(), &edges, damping, epsilon)
}
