use super::LayoutError;

/// Longest-path levels: roots sit at 0, every other node one past its
/// deepest parent. `parents[i]` lists the parents of node `i`.
pub fn longest_path_levels(parents: &[Vec<usize>]) -> Result<Vec<usize>, LayoutError> {
    let n = parents.len();
    let mut children = vec![Vec::new(); n];
    let mut pending: Vec<usize> = parents.iter().map(Vec::len).collect();
    for (c, ps) in parents.iter().enumerate() {
        for &p in ps {
            children[p].push(c);
        }
    }
    let mut level = vec![0usize; n];
    let mut ready: Vec<usize> = (0..n).filter(|&i| pending[i] == 0).collect();
    let mut done = 0;
    while let Some(i) = ready.pop() {
        done += 1;
        for &c in &children[i] {
            level[c] = level[c].max(level[i] + 1);
            pending[c] -= 1;
            if pending[c] == 0 {
                ready.push(c);
            }
        }
    }
    if done != n {
        let stuck = (0..n).find(|&i| pending[i] > 0).unwrap_or(0);
        return Err(LayoutError::Cycle(stuck));
    }
    Ok(level)
}
