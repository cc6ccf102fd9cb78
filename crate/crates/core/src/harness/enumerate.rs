use std::collections::HashSet;

use crate::multigraph::Multigraph;

/// Lazily walks every multiplicity assignment on `n = 2..=max_n` vertices
/// and yields the first graph seen of each isomorphism class.
///
/// Graphs with an isolated vertex are skipped, so each class appears at the
/// smallest `n` that carries it.
pub struct Enumeration {
    max_n: usize,
    max_edges: usize,
    max_mult: usize,
    n: usize,
    pairs: Vec<(usize, usize)>,
    digits: Vec<usize>,
    exhausted: bool,
    seen: HashSet<Vec<u8>>,
}

impl Enumeration {
    pub fn new(max_n: usize, max_edges: usize, max_mult: usize) -> Self {
        let mut e = Self {
            max_n,
            max_edges,
            max_mult,
            n: 1,
            pairs: Vec::new(),
            digits: Vec::new(),
            exhausted: false,
            seen: HashSet::new(),
        };
        e.next_order();
        e
    }

    fn next_order(&mut self) {
        self.n += 1;
        self.pairs = (0..self.n).flat_map(|u| (u + 1..self.n).map(move |v| (u, v))).collect();
        self.digits = vec![0; self.pairs.len()];
        self.exhausted = self.n > self.max_n;
        self.seen.clear();
    }

    /// Advances the multiplicity odometer, skipping assignments whose edge
    /// total already exceeds the cap. Returns false after the last one.
    fn advance(&mut self) -> bool {
        let mut total: usize = self.digits.iter().sum();
        for i in 0..self.digits.len() {
            if self.digits[i] < self.max_mult && total < self.max_edges {
                self.digits[i] += 1;
                return true;
            }
            total -= self.digits[i];
            self.digits[i] = 0;
        }
        false
    }

    fn current(&self) -> Option<Multigraph> {
        let mut deg = vec![0; self.n];
        let mut triples = Vec::new();
        for (&(u, v), &m) in self.pairs.iter().zip(&self.digits) {
            if m > 0 {
                deg[u] += m;
                deg[v] += m;
                triples.push((u, v, m));
            }
        }
        if deg.contains(&0) {
            return None;
        }
        Some(Multigraph::with_vertices(self.n, &triples).expect("valid assignment"))
    }
}

impl Iterator for Enumeration {
    type Item = Multigraph;

    fn next(&mut self) -> Option<Multigraph> {
        while !self.exhausted {
            if !self.advance() {
                self.next_order();
                continue;
            }
            if let Some(g) = self.current() {
                if self.seen.insert(g.canonical_key()) {
                    return Some(g);
                }
            }
        }
        None
    }
}
