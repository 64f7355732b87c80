use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Pattern-size limit for the exponential routines below.
pub const PATTERN_MAX_N: usize = 12;

fn check_size(g: &Graph, max: usize) -> Result<()> {
    if g.n() > max {
        Err(Error::TooLarge { n: g.n(), max })
    } else {
        Ok(())
    }
}

pub fn chromatic_number(g: &Graph) -> Result<usize> {
    check_size(g, PATTERN_MAX_N)?;
    Ok(chromatic_unchecked(g))
}

fn chromatic_unchecked(g: &Graph) -> usize {
    if g.n() == 0 {
        return 0;
    }
    if g.edge_count() == 0 {
        return 1;
    }
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    (2..=g.n())
        .find(|&k| {
            let mut color = vec![usize::MAX; g.n()];
            colorable(g, &order, 0, k, 0, &mut color)
        })
        .expect("n colors always suffice")
}

fn colorable(
    g: &Graph,
    order: &[usize],
    i: usize,
    k: usize,
    used: usize,
    color: &mut [usize],
) -> bool {
    if i == order.len() {
        return true;
    }
    let v = order[i];
    // A fresh color is only ever the next unused one.
    for c in 0..k.min(used + 1) {
        if g.neighbors(v).any(|u| color[u] == c) {
            continue;
        }
        color[v] = c;
        if colorable(g, order, i + 1, k, used.max(c + 1), color) {
            return true;
        }
        color[v] = usize::MAX;
    }
    false
}

/// Edges whose deletion lowers the chromatic number.
pub fn color_critical_edges(g: &Graph) -> Result<Vec<(usize, usize)>> {
    check_size(g, PATTERN_MAX_N)?;
    let chi = chromatic_unchecked(g);
    Ok(g.edges()
        .into_iter()
        .filter(|&(u, v)| {
            let mut h = g.clone();
            h.remove_edge(u, v);
            chromatic_unchecked(&h) < chi
        })
        .collect())
}

/// BFS two-coloring. `Ok(side)` per vertex, or the vertices of an odd cycle.
pub fn two_coloring(g: &Graph) -> std::result::Result<Vec<u8>, Vec<usize>> {
    let n = g.n();
    let mut side = vec![u8::MAX; n];
    let mut parent = vec![usize::MAX; n];
    for root in 0..n {
        if side[root] != u8::MAX {
            continue;
        }
        side[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for v in g.neighbors(u) {
                if side[v] == u8::MAX {
                    side[v] = 1 - side[u];
                    parent[v] = u;
                    queue.push_back(v);
                } else if side[v] == side[u] {
                    return Err(odd_cycle(&parent, u, v));
                }
            }
        }
    }
    Ok(side)
}

/// Closes the two tree paths from `u` and `v` at their lowest common ancestor.
fn odd_cycle(parent: &[usize], u: usize, v: usize) -> Vec<usize> {
    let up = |mut x: usize| {
        let mut p = vec![x];
        while parent[x] != usize::MAX {
            x = parent[x];
            p.push(x);
        }
        p
    };
    let (pu, pv) = (up(u), up(v));
    let lca = *pu.iter().find(|x| pv.contains(x)).expect("same BFS tree");
    let mut cycle: Vec<usize> = pu.iter().copied().take_while(|&x| x != lca).collect();
    cycle.push(lca);
    let back: Vec<usize> = pv.iter().copied().take_while(|&x| x != lca).collect();
    cycle.extend(back.into_iter().rev());
    cycle
}

/// Smallest possible color class over proper two-colorings. Each component
/// contributes its smaller side; isolated vertices contribute nothing.
pub fn p_value(g: &Graph) -> Result<usize> {
    check_size(g, 16)?;
    let side = two_coloring(g).map_err(|odd_cycle| Error::NotBipartite { odd_cycle })?;
    Ok(g.components()
        .iter()
        .map(|comp| {
            let ones = comp.iter().filter(|&&v| side[v] == 1).count();
            ones.min(comp.len() - ones)
        })
        .sum())
}

pub fn is_bipartite(g: &Graph) -> bool {
    two_coloring(g).is_ok()
}
