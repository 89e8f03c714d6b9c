use std::cmp::Ordering;

/// A proper layered graph: every edge joins adjacent levels. Edges spanning
/// several levels are split with virtual nodes, one per crossed level.
/// Indices below `real` are the caller's nodes; the rest are virtual.
#[derive(Debug, Clone)]
pub struct Layered {
    pub real: usize,
    pub level: Vec<usize>,
    /// Initial (insertion-order) arrangement of each level.
    pub layers: Vec<Vec<usize>>,
    /// Neighbors one level up (towards the roots).
    pub up: Vec<Vec<usize>>,
    /// Neighbors one level down.
    pub down: Vec<Vec<usize>>,
    /// Tie-break key per node: label, then index.
    pub labels: Vec<String>,
    /// For each input edge, its chain from the parent down to the child
    /// (endpoints included).
    pub chains: Vec<Vec<usize>>,
}

impl Layered {
    /// `edges` are (child, parent) with `levels[child] > levels[parent]`.
    pub fn new(levels: &[usize], edges: &[(usize, usize)], labels: &[String]) -> Layered {
        let real = levels.len();
        let depth = levels.iter().copied().max().map_or(0, |m| m + 1);
        let mut g = Layered {
            real,
            level: levels.to_vec(),
            layers: vec![Vec::new(); depth],
            up: vec![Vec::new(); real],
            down: vec![Vec::new(); real],
            labels: labels.to_vec(),
            chains: Vec::with_capacity(edges.len()),
        };
        for (i, &l) in levels.iter().enumerate() {
            g.layers[l].push(i);
        }
        for &(child, parent) in edges {
            assert!(
                levels[child] > levels[parent],
                "edge {child}->{parent} does not go up a level"
            );
            let mut chain = vec![parent];
            let mut prev = parent;
            for l in levels[parent] + 1..levels[child] {
                let v = g.level.len();
                g.level.push(l);
                g.layers[l].push(v);
                g.up.push(Vec::new());
                g.down.push(Vec::new());
                g.labels.push(labels[child].clone());
                g.down[prev].push(v);
                g.up[v].push(prev);
                chain.push(v);
                prev = v;
            }
            g.down[prev].push(child);
            g.up[child].push(prev);
            chain.push(child);
            g.chains.push(chain);
        }
        g
    }

    pub fn len(&self) -> usize {
        self.level.len()
    }

    pub fn is_empty(&self) -> bool {
        self.level.is_empty()
    }

    pub fn is_virtual(&self, v: usize) -> bool {
        v >= self.real
    }

    fn positions(&self, order: &[Vec<usize>]) -> Vec<usize> {
        let mut pos = vec![0; self.len()];
        for layer in order {
            for (i, &v) in layer.iter().enumerate() {
                pos[v] = i;
            }
        }
        pos
    }

    /// Number of pairwise crossings between adjacent levels.
    pub fn crossings(&self, order: &[Vec<usize>]) -> u64 {
        let pos = self.positions(order);
        let mut total = 0;
        for layer in order {
            let mut segs: Vec<(usize, usize)> = Vec::new();
            for &u in layer {
                for &w in &self.down[u] {
                    segs.push((pos[u], pos[w]));
                }
            }
            segs.sort_unstable();
            let mut bottoms: Vec<usize> = segs.into_iter().map(|(_, b)| b).collect();
            total += count_inversions(&mut bottoms);
        }
        total
    }

    fn reorder(&self, layer: &mut [usize], pos: &[usize], towards_up: bool) {
        let key = |v: usize| -> f64 {
            let ns = if towards_up { &self.up[v] } else { &self.down[v] };
            if ns.is_empty() {
                pos[v] as f64
            } else {
                ns.iter().map(|&n| pos[n] as f64).sum::<f64>() / ns.len() as f64
            }
        };
        let mut keyed: Vec<(f64, usize)> = layer.iter().map(|&v| (key(v), v)).collect();
        keyed.sort_by(|a, b| {
            a.0.total_cmp(&b.0)
                .then_with(|| self.labels[a.1].cmp(&self.labels[b.1]))
                .then_with(|| a.1.cmp(&b.1))
        });
        for (slot, (_, v)) in layer.iter_mut().zip(keyed) {
            *slot = v;
        }
    }

    /// Barycenter sweeps: each round reorders levels top-down by their
    /// parents, then bottom-up by their children. The arrangement with the
    /// fewest crossings seen (starting with the initial one) is returned.
    pub fn order(&self, sweeps: usize) -> Vec<Vec<usize>> {
        let mut cur = self.layers.clone();
        let mut best = cur.clone();
        let mut best_crossings = self.crossings(&best);
        let depth = cur.len();
        for _ in 0..sweeps {
            if best_crossings == 0 {
                break;
            }
            for l in 1..depth {
                let pos = self.positions(&cur);
                let mut layer = std::mem::take(&mut cur[l]);
                self.reorder(&mut layer, &pos, true);
                cur[l] = layer;
            }
            for l in (0..depth.saturating_sub(1)).rev() {
                let pos = self.positions(&cur);
                let mut layer = std::mem::take(&mut cur[l]);
                self.reorder(&mut layer, &pos, false);
                cur[l] = layer;
            }
            let c = self.crossings(&cur);
            if c < best_crossings {
                best_crossings = c;
                best = cur.clone();
            }
        }
        best
    }
}

/// Counts pairs i < j with v[i] > v[j] (merge sort; sorts `v`).
fn count_inversions(v: &mut [usize]) -> u64 {
    let n = v.len();
    if n < 2 {
        return 0;
    }
    let mid = n / 2;
    let mut count = count_inversions(&mut v[..mid]) + count_inversions(&mut v[mid..]);
    let mut merged = Vec::with_capacity(n);
    let (mut i, mut j) = (0, mid);
    while i < mid && j < n {
        match v[i].cmp(&v[j]) {
            Ordering::Greater => {
                count += (mid - i) as u64;
                merged.push(v[j]);
                j += 1;
            }
            _ => {
                merged.push(v[i]);
                i += 1;
            }
        }
    }
    merged.extend_from_slice(&v[i..mid]);
    merged.extend_from_slice(&v[j..]);
    v.copy_from_slice(&merged);
    count
}
