use std::collections::BTreeMap;

use super::bitset::VertexSet;
use super::clique::max_clique;

/// An assignment of color indices to vertex indices.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ColoringWitness {
    pub colors: BTreeMap<usize, usize>,
}

impl ColoringWitness {
    /// Number of distinct colors used.
    pub fn num_colors(&self) -> usize {
        let mut seen: Vec<usize> = self.colors.values().copied().collect();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }

    pub fn is_proper(&self, adj: &[VertexSet]) -> bool {
        self.colors
            .iter()
            .all(|(&v, &c)| adj[v].iter().all(|w| self.colors.get(&w) != Some(&c)))
    }

    /// Color classes in order of color index.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut by: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (&v, &c) in &self.colors {
            by.entry(c).or_default().push(v);
        }
        by.into_values().collect()
    }
}

/// DSATUR greedy coloring of `within`.
pub fn dsatur_greedy(adj: &[VertexSet], within: &VertexSet) -> ColoringWitness {
    let mut state = State::new(adj, within);
    while let Some(v) = state.pick() {
        let c = (0..).find(|&c| !state.forbidden(v, c)).expect("some color is free");
        state.assign(v, c);
    }
    ColoringWitness { colors: state.assignment() }
}

/// Exact chromatic number of the subgraph induced by `within`, with an optimal coloring.
///
/// Branch and bound in DSATUR order; the maximum clique is precolored and
/// gives the lower bound, the greedy DSATUR coloring the initial upper bound.
pub fn chromatic(adj: &[VertexSet], within: &VertexSet) -> (usize, ColoringWitness) {
    if within.is_empty() {
        return (0, ColoringWitness::default());
    }
    let greedy = dsatur_greedy(adj, within);
    let clique = max_clique(adj, within);
    let lower = clique.len();
    let upper = greedy.num_colors();
    if upper == lower {
        return (upper, greedy);
    }
    let mut search = Search {
        best: upper,
        best_coloring: greedy,
        lower,
    };
    let mut state = State::new(adj, within);
    for (c, &v) in clique.iter().enumerate() {
        state.assign(v, c);
    }
    search.branch(&mut state, lower);
    (search.best, search.best_coloring)
}

struct Search {
    best: usize,
    best_coloring: ColoringWitness,
    lower: usize,
}

impl Search {
    fn branch(&mut self, state: &mut State<'_>, used: usize) {
        if self.best == self.lower || used >= self.best {
            return;
        }
        let Some(v) = state.pick() else {
            self.best = used;
            self.best_coloring = ColoringWitness {
                colors: state.assignment(),
            };
            return;
        };
        for c in 0..used {
            if !state.forbidden(v, c) {
                state.assign(v, c);
                self.branch(state, used);
                state.unassign(v, c);
                if self.best == self.lower {
                    return;
                }
            }
        }
        if used + 1 < self.best {
            state.assign(v, used);
            self.branch(state, used + 1);
            state.unassign(v, used);
        }
    }
}

/// Partial coloring with per-vertex counts of neighbor colors.
struct State<'a> {
    adj: &'a [VertexSet],
    within: &'a VertexSet,
    color: Vec<Option<usize>>,
    /// `seen[v][c]` = number of colored neighbors of `v` with color `c`
    seen: Vec<Vec<u32>>,
    saturation: Vec<usize>,
    uncolored: VertexSet,
}

impl<'a> State<'a> {
    fn new(adj: &'a [VertexSet], within: &'a VertexSet) -> Self {
        let n = adj.len();
        let width = within.len();
        State {
            adj,
            within,
            color: vec![None; n],
            seen: vec![vec![0; width]; n],
            saturation: vec![0; n],
            uncolored: within.clone(),
        }
    }

    fn forbidden(&self, v: usize, c: usize) -> bool {
        self.seen[v].get(c).is_some_and(|&k| k > 0)
    }

    fn assign(&mut self, v: usize, c: usize) {
        self.color[v] = Some(c);
        self.uncolored.remove(v);
        for w in self.adj[v].intersection(self.within).iter() {
            let slot = &mut self.seen[w][c];
            if *slot == 0 {
                self.saturation[w] += 1;
            }
            *slot += 1;
        }
    }

    fn unassign(&mut self, v: usize, c: usize) {
        self.color[v] = None;
        self.uncolored.insert(v);
        for w in self.adj[v].intersection(self.within).iter() {
            let slot = &mut self.seen[w][c];
            *slot -= 1;
            if *slot == 0 {
                self.saturation[w] -= 1;
            }
        }
    }

    /// Uncolored vertex of maximum saturation, then maximum uncolored degree, then lowest index.
    fn pick(&self) -> Option<usize> {
        let mut best: Option<(usize, usize, usize)> = None;
        for v in self.uncolored.iter() {
            let key = (self.saturation[v], self.adj[v].intersection_len(&self.uncolored), v);
            let better = match best {
                None => true,
                Some((s, d, _)) => (key.0, key.1) > (s, d),
            };
            if better {
                best = Some(key);
            }
        }
        best.map(|b| b.2)
    }

    fn assignment(&self) -> BTreeMap<usize, usize> {
        self.within
            .iter()
            .map(|v| (v, self.color[v].expect("complete coloring")))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Vec<VertexSet> {
        let mut adj = vec![VertexSet::new(n); n];
        for &(a, b) in edges {
            adj[a].insert(b);
            adj[b].insert(a);
        }
        adj
    }

    #[test]
    fn odd_cycle_needs_three() {
        let adj = graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        let (chi, w) = chromatic(&adj, &VertexSet::full(5));
        assert_eq!(chi, 3);
        assert!(w.is_proper(&adj));
        assert_eq!(w.num_colors(), 3);
    }

    #[test]
    fn groetzsch_graph_needs_four() {
        // triangle-free with chromatic number 4; the clique bound is far off
        let adj = graph(
            11,
            &[
                (0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
                (5, 1), (5, 4), (6, 0), (6, 2), (7, 1), (7, 3), (8, 2), (8, 4), (9, 3), (9, 0),
                (10, 5), (10, 6), (10, 7), (10, 8), (10, 9),
            ],
        );
        let (chi, w) = chromatic(&adj, &VertexSet::full(11));
        assert_eq!(chi, 4);
        assert!(w.is_proper(&adj));
        assert_eq!(max_clique(&adj, &VertexSet::full(11)).len(), 2);
    }

    #[test]
    fn empty_and_edgeless() {
        let adj = graph(3, &[]);
        assert_eq!(chromatic(&adj, &VertexSet::new(3)).0, 0);
        assert_eq!(chromatic(&adj, &VertexSet::full(3)).0, 1);
    }
}
