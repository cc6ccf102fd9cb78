//! Oracles that share no code with the library: they work from the raw
//! multiplicity table and edge list only.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tihany_core::{EdgeColoring, Multigraph};

/// One line per acceptance criterion, in a fixed greppable shape.
pub fn report(id: u32, name: &str, pass: bool, detail: &str) {
    println!("ACCEPTANCE {id:>2} {name}: {} ({detail})", if pass { "PASS" } else { "FAIL" });
}

pub fn endpoints(g: &Multigraph) -> Vec<(usize, usize)> {
    g.edges().iter().map(|e| (e.u, e.v)).collect()
}

/// Line-graph adjacency rebuilt from endpoint pairs.
pub fn line_adjacency(g: &Multigraph) -> Vec<Vec<bool>> {
    let ends = endpoints(g);
    let m = ends.len();
    let mut adj = vec![vec![false; m]; m];
    for i in 0..m {
        for j in 0..m {
            let (a, b) = ends[i];
            let (c, d) = ends[j];
            adj[i][j] = i != j && (a == c || a == d || b == c || b == d);
        }
    }
    adj
}

/// Vertex chromatic number by plain backtracking, `k = 0, 1, 2, ...`.
pub fn chromatic_number(adj: &[Vec<bool>]) -> usize {
    fn extend(i: usize, k: usize, adj: &[Vec<bool>], col: &mut Vec<usize>, used: usize) -> bool {
        if i == adj.len() {
            return true;
        }
        for c in 0..k.min(used + 1) {
            if (0..i).all(|j| !adj[i][j] || col[j] != c) {
                col[i] = c;
                if extend(i + 1, k, adj, col, used.max(c + 1)) {
                    return true;
                }
            }
        }
        false
    }
    let n = adj.len();
    (0..=n).find(|&k| extend(0, k, adj, &mut vec![0; n], 0)).unwrap()
}

pub fn line_chromatic_number(g: &Multigraph) -> usize {
    chromatic_number(&line_adjacency(g))
}

pub fn degree(g: &Multigraph, v: usize) -> usize {
    endpoints(g).iter().filter(|&&(a, b)| a == v || b == v).count()
}

pub fn max_degree(g: &Multigraph) -> usize {
    (0..g.vertex_count()).map(|v| degree(g, v)).max().unwrap_or(0)
}

pub fn mult(g: &Multigraph, u: usize, v: usize) -> usize {
    endpoints(g).iter().filter(|&&(a, b)| (a, b) == (u.min(v), u.max(v))).count()
}

pub fn max_mult(g: &Multigraph) -> usize {
    let n = g.vertex_count();
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).map(|(u, v)| mult(g, u, v)).max().unwrap_or(0)
}

/// Largest triangle multiplicity sum, 0 without triangles.
pub fn tau(g: &Multigraph) -> usize {
    let n = g.vertex_count();
    let mut best = 0;
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let (x, y, z) = (mult(g, a, b), mult(g, b, c), mult(g, a, c));
                if x > 0 && y > 0 && z > 0 {
                    best = best.max(x + y + z);
                }
            }
        }
    }
    best
}

/// `max ⌈e(S) / ⌊|S|/2⌋⌉` over vertex subsets with at least two vertices.
pub fn matching_bound(g: &Multigraph) -> usize {
    let n = g.vertex_count();
    let ends = endpoints(g);
    let mut best = 0;
    for mask in 0u32..(1 << n) {
        let size = mask.count_ones() as usize;
        if size < 2 {
            continue;
        }
        let inside = ends.iter().filter(|&&(a, b)| mask >> a & 1 == 1 && mask >> b & 1 == 1).count();
        best = best.max(inside.div_ceil(size / 2));
    }
    best
}

pub fn is_proper(g: &Multigraph, phi: &EdgeColoring) -> bool {
    let ends = endpoints(g);
    let ids: Vec<usize> = g.edges().iter().map(|e| e.id).collect();
    for i in 0..ends.len() {
        for j in i + 1..ends.len() {
            let (a, b) = ends[i];
            let (c, d) = ends[j];
            if (a == c || a == d || b == c || b == d) && phi.get(ids[i]).is_some() && phi.get(ids[i]) == phi.get(ids[j])
            {
                return false;
            }
        }
    }
    phi.iter().all(|(e, _)| ids.contains(&e))
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_multigraph(rng: &mut ChaCha8Rng, n: usize, p: f64, max_mult: usize) -> Multigraph {
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                pairs.push((u, v, rng.gen_range(1..=max_mult)));
            }
        }
    }
    Multigraph::with_vertices(n, &pairs).unwrap()
}

/// First-fit coloring along a shuffled edge order.
pub fn random_proper_coloring(rng: &mut ChaCha8Rng, g: &Multigraph) -> EdgeColoring {
    let mut order: Vec<(usize, usize, usize)> = g.edges().iter().map(|e| (e.id, e.u, e.v)).collect();
    for i in (1..order.len()).rev() {
        order.swap(i, rng.gen_range(0..=i));
    }
    let mut phi = EdgeColoring::new();
    let mut at: Vec<Vec<usize>> = vec![Vec::new(); g.vertex_count()];
    for (id, u, v) in order {
        let c = (0..).find(|c| !at[u].contains(c) && !at[v].contains(c)).unwrap();
        phi.set(id, c);
        at[u].push(c);
        at[v].push(c);
    }
    phi
}

/// Petersen with a vertex deleted: the six edges at the three vertices that
/// lost a neighbor get multiplicity `heavy`, the other six get `light`.
pub fn punctured_petersen(heavy: usize, light: usize) -> Multigraph {
    let mut simple = Vec::new();
    for i in 0..5 {
        simple.push((i, (i + 1) % 5));
        simple.push((i, i + 5));
        simple.push((5 + i, 5 + (i + 2) % 5));
    }
    // delete vertex 0; its neighbors 1, 4, 5 drop to degree 2
    let rename = |x: usize| x - 1;
    let lost = [1, 4, 5];
    let pairs: Vec<(usize, usize, usize)> = simple
        .into_iter()
        .filter(|&(a, b)| a != 0 && b != 0)
        .map(|(a, b)| {
            let m = if lost.contains(&a) || lost.contains(&b) { heavy } else { light };
            (rename(a), rename(b), m)
        })
        .collect();
    Multigraph::with_vertices(9, &pairs).unwrap()
}
