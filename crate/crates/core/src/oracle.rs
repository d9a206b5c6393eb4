//! Independent enumerations of maximal tubings, for cross-checking the
//! production algorithms.

use crate::graph::Graph;
use crate::tubing::{compatible_tubes, Tubing};
use crate::vset::VertexSet;

/// Every subset of tubes that is pairwise compatible and maximal under
/// inclusion. Exponential in the number of tubes; intended for `n <= 4`.
pub fn maximal_tubings_by_subsets(g: &Graph) -> Vec<Tubing> {
    let tubes = g.tubes();
    let t = tubes.len();
    assert!(t <= 20, "subset oracle limited to 20 tubes, got {t}");
    let compat: Vec<u32> = (0..t)
        .map(|a| (0..t).filter(|&b| compatible_tubes(g, tubes[a], tubes[b])).fold(0, |m, b| m | 1 << b))
        .collect();
    let pairwise = |mask: u32| (0..t).filter(|a| mask >> a & 1 == 1).all(|a| mask & !compat[a] == 0);
    let good: Vec<u32> = (0u32..1 << t).filter(|&m| pairwise(m)).collect();
    let mut out: Vec<Tubing> = good
        .iter()
        .filter(|&&m| (0..t).all(|b| m >> b & 1 == 1 || m & !compat[b] != 0))
        .map(|&m| to_tubing(g, &tubes, m as u128))
        .collect();
    out.sort();
    out
}

/// Maximal cliques of the tube compatibility graph (Bron–Kerbosch with pivoting).
pub fn maximal_tubings_by_cliques(g: &Graph) -> Vec<Tubing> {
    let tubes = g.tubes();
    let t = tubes.len();
    assert!(t <= 128, "clique oracle limited to 128 tubes, got {t}");
    let compat: Vec<u128> = (0..t)
        .map(|a| (0..t).filter(|&b| b != a && compatible_tubes(g, tubes[a], tubes[b])).fold(0, |m, b| m | 1 << b))
        .collect();
    let mut cliques = Vec::new();
    let all = if t == 128 { u128::MAX } else { (1u128 << t) - 1 };
    bron_kerbosch(&compat, 0, all, 0, &mut cliques);
    let mut out: Vec<Tubing> = cliques.into_iter().map(|m| to_tubing(g, &tubes, m)).collect();
    out.sort();
    out
}

fn bron_kerbosch(adj: &[u128], r: u128, mut p: u128, mut x: u128, out: &mut Vec<u128>) {
    if p == 0 {
        if x == 0 {
            out.push(r);
        }
        return;
    }
    let pivot = (p | x).trailing_zeros() as usize;
    let mut cand = p & !adj[pivot];
    while cand != 0 {
        let v = cand.trailing_zeros() as usize;
        let bit = 1u128 << v;
        bron_kerbosch(adj, r | bit, p & adj[v], x & adj[v], out);
        p &= !bit;
        x |= bit;
        cand &= !bit;
    }
}

fn to_tubing(g: &Graph, tubes: &[VertexSet], mask: u128) -> Tubing {
    let chosen = (0..tubes.len()).filter(|&i| mask >> i & 1 == 1).map(|i| tubes[i]);
    Tubing::new(g, chosen).expect("pairwise compatible tubes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tubing::enumerate_maximal_tubings;

    #[test]
    fn oracles_agree_small() {
        for n in 0..=4 {
            for g in Graph::all_graphs(n) {
                let subsets = maximal_tubings_by_subsets(&g);
                assert_eq!(subsets, maximal_tubings_by_cliques(&g));
                assert!(subsets.iter().all(|x| x.len() == n));
            }
        }
    }

    #[test]
    fn cliques_match_enumeration_on_families() {
        for n in 1..=6 {
            for g in [Graph::path(n), Graph::cycle(n), Graph::complete(n)] {
                let mut e = enumerate_maximal_tubings(&g);
                e.sort();
                assert_eq!(maximal_tubings_by_cliques(&g), e, "{g:?}");
            }
        }
    }
}
