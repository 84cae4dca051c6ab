//! Maximal clique enumeration (Bron–Kerbosch with Tomita pivoting).

use std::ops::ControlFlow;

use crate::bits::BitSet;
use crate::error::{Error, Result};

/// Enumerates maximal cliques of the graph given by `adj`, calling `visit`
/// with each clique in ascending vertex order.
///
/// `budget` bounds the number of recursive calls. Returns `Break` when the
/// visitor stopped early.
pub fn for_each_maximal_clique(
    adj: &[BitSet],
    budget: Option<usize>,
    mut visit: impl FnMut(&[usize]) -> ControlFlow<()>,
) -> Result<ControlFlow<()>> {
    let n = adj.len();
    let mut state = Search {
        adj,
        budget,
        calls: 0,
        clique: Vec::new(),
    };
    state.expand(BitSet::full(n), BitSet::new(n), &mut visit)
}

/// All maximal cliques, each sorted, in lexicographic order.
pub fn maximal_cliques(adj: &[BitSet], budget: Option<usize>) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let _ = for_each_maximal_clique(adj, budget, |c| {
        out.push(c.to_vec());
        ControlFlow::Continue(())
    })?;
    out.sort();
    Ok(out)
}

struct Search<'a> {
    adj: &'a [BitSet],
    budget: Option<usize>,
    calls: usize,
    clique: Vec<usize>,
}

impl Search<'_> {
    fn expand(
        &mut self,
        mut candidates: BitSet,
        mut excluded: BitSet,
        visit: &mut impl FnMut(&[usize]) -> ControlFlow<()>,
    ) -> Result<ControlFlow<()>> {
        self.calls += 1;
        if let Some(b) = self.budget {
            if self.calls > b {
                return Err(Error::BudgetExceeded(b));
            }
        }
        if candidates.is_empty() {
            if excluded.is_empty() {
                let mut sorted = self.clique.clone();
                sorted.sort_unstable();
                return Ok(visit(&sorted));
            }
            return Ok(ControlFlow::Continue(()));
        }
        // Pivot maximizing |candidates ∩ N(u)| over candidates ∪ excluded.
        let pivot = candidates
            .iter()
            .chain(excluded.iter())
            .max_by_key(|&u| (candidates.intersection_count(&self.adj[u]), std::cmp::Reverse(u)))
            .expect("nonempty");
        let branch: Vec<usize> = candidates.difference(&self.adj[pivot]).iter().collect();
        for v in branch {
            self.clique.push(v);
            let flow = self.expand(
                candidates.intersection(&self.adj[v]),
                excluded.intersection(&self.adj[v]),
                visit,
            )?;
            self.clique.pop();
            if flow.is_break() {
                return Ok(flow);
            }
            candidates.remove(v);
            excluded.insert(v);
        }
        Ok(ControlFlow::Continue(()))
    }
}

/// Adjacency bitsets from an edge list on `n` vertices.
pub fn adjacency(n: usize, edges: &[(usize, usize)]) -> Vec<BitSet> {
    let mut adj = vec![BitSet::new(n); n];
    for &(a, b) in edges {
        adj[a].insert(b);
        adj[b].insert(a);
    }
    adj
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
        let adj = adjacency(n, edges);
        let is_clique = |m: u32| {
            (0..n).all(|a| {
                (0..n).all(|b| a == b || m & (1 << a) == 0 || m & (1 << b) == 0 || adj[a].contains(b))
            })
        };
        let cliques: Vec<u32> = (1u32..(1 << n)).filter(|&m| is_clique(m)).collect();
        let mut out: Vec<Vec<usize>> = cliques
            .iter()
            .filter(|&&m| !cliques.iter().any(|&o| o != m && o & m == m))
            .map(|&m| (0..n).filter(|i| m & (1 << i) != 0).collect())
            .collect();
        out.sort();
        out
    }

    #[test]
    fn matches_brute_force_on_small_graphs() {
        let mut seed = 7u64;
        for _ in 0..60 {
            let n = 1 + (seed % 9) as usize;
            let mut edges = Vec::new();
            for a in 0..n {
                for b in a + 1..n {
                    seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    if (seed >> 33) % 3 != 0 {
                        edges.push((a, b));
                    }
                }
            }
            let adj = adjacency(n, &edges);
            assert_eq!(maximal_cliques(&adj, None).unwrap(), brute_force(n, &edges));
        }
    }

    #[test]
    fn budget_is_enforced() {
        let adj = adjacency(6, &[]);
        assert!(matches!(maximal_cliques(&adj, Some(2)), Err(Error::BudgetExceeded(2))));
    }
}
