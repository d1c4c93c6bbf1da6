//! Intersection graphs of curve families and exact clique/chromatic solvers.

mod bitset;
mod clique;
mod coloring;

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::sync::Mutex;

pub use bitset::VertexSet;
pub use clique::max_clique;
pub use coloring::{chromatic, dsatur_greedy, ColoringWitness};

use crate::geom::{curves_intersect, CurveFamily};

/// Intersection graph of a family, vertices indexed by basepoint order.
///
/// Chromatic numbers of vertex subsets are memoized; the cache is keyed by
/// the subset, so concurrent inserts are idempotent.
#[derive(Debug)]
pub struct IntersectionGraph {
    ids: Vec<String>,
    adj: Vec<VertexSet>,
    chi_memo: Mutex<HashMap<VertexSet, usize>>,
}

impl Clone for IntersectionGraph {
    fn clone(&self) -> Self {
        IntersectionGraph {
            ids: self.ids.clone(),
            adj: self.adj.clone(),
            chi_memo: Mutex::new(HashMap::new()),
        }
    }
}

pub fn intersection_graph(family: &CurveFamily) -> IntersectionGraph {
    let n = family.len();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if curves_intersect(family.curve(i), family.curve(j)) {
                edges.push((i, j));
            }
        }
    }
    IntersectionGraph::from_edges(family.ids(), &edges)
}

impl IntersectionGraph {
    pub fn from_edges(ids: Vec<String>, edges: &[(usize, usize)]) -> Self {
        let n = ids.len();
        let mut adj = vec![VertexSet::new(n); n];
        for &(a, b) in edges {
            assert!(a != b, "intersection graphs are irreflexive");
            adj[a].insert(b);
            adj[b].insert(a);
        }
        IntersectionGraph {
            ids,
            adj,
            chi_memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, v: usize) -> &str {
        &self.ids[v]
    }

    pub fn adjacency(&self) -> &[VertexSet] {
        &self.adj
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adj[a].contains(b)
    }

    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    pub fn all(&self) -> VertexSet {
        VertexSet::full(self.len())
    }

    pub fn set(&self, indices: impl IntoIterator<Item = usize>) -> VertexSet {
        VertexSet::from_indices(self.len(), indices)
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|a| self.adj[a].iter().filter(move |&b| b > a).map(move |b| (a, b)))
            .collect()
    }

    /// Whether `s` is pairwise adjacent.
    pub fn is_clique(&self, s: &[usize]) -> bool {
        s.iter()
            .enumerate()
            .all(|(k, &a)| s[k + 1..].iter().all(|&b| self.adjacent(a, b)))
    }

    /// Whether no two members of `s` are adjacent.
    pub fn is_independent(&self, s: &VertexSet) -> bool {
        s.iter().all(|v| self.adj[v].intersection_len(s) == 0)
    }

    pub fn max_clique(&self, within: &VertexSet) -> Vec<usize> {
        max_clique(&self.adj, within)
    }

    pub fn omega(&self, within: &VertexSet) -> usize {
        self.max_clique(within).len()
    }

    /// Exact chromatic number of the induced subgraph, memoized.
    pub fn chi(&self, within: &VertexSet) -> usize {
        if let Some(&chi) = self.chi_memo.lock().expect("cache lock").get(within) {
            return chi;
        }
        let (chi, _) = chromatic(&self.adj, within);
        self.chi_memo.lock().expect("cache lock").insert(within.clone(), chi);
        chi
    }

    /// Exact chromatic number with an optimal coloring witness.
    pub fn coloring(&self, within: &VertexSet) -> (usize, ColoringWitness) {
        let (chi, w) = chromatic(&self.adj, within);
        self.chi_memo.lock().expect("cache lock").insert(within.clone(), chi);
        (chi, w)
    }

    /// Connected components of the induced subgraph, ordered by smallest member.
    pub fn components(&self, within: &VertexSet) -> Vec<VertexSet> {
        let mut rest = within.clone();
        let mut out = Vec::new();
        while let Some(root) = rest.first() {
            let layers = self.bfs_layers(&rest, root);
            let mut comp = VertexSet::new(self.len());
            for layer in &layers {
                comp = comp.union(layer);
            }
            rest = rest.difference(&comp);
            out.push(comp);
        }
        out
    }

    /// Distance layers from `root` inside the induced subgraph (root's component only).
    pub fn bfs_layers(&self, within: &VertexSet, root: usize) -> Vec<VertexSet> {
        let mut dist: BTreeMap<usize, usize> = BTreeMap::new();
        dist.insert(root, 0);
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            let d = dist[&v];
            for w in self.adj[v].intersection(within).iter() {
                if let std::collections::btree_map::Entry::Vacant(e) = dist.entry(w) {
                    e.insert(d + 1);
                    queue.push_back(w);
                }
            }
        }
        let depth = dist.values().copied().max().unwrap_or(0);
        let mut layers = vec![VertexSet::new(self.len()); depth + 1];
        for (v, d) in dist {
            layers[d].insert(v);
        }
        layers
    }

    /// Vertices of `within` adjacent to at least one of `targets`.
    pub fn touching(&self, within: &VertexSet, targets: &[usize]) -> VertexSet {
        let mut out = VertexSet::new(self.len());
        for &t in targets {
            out = out.union(&self.adj[t]);
        }
        out.intersection(within)
    }
}

/// `(ω, witness clique)` of the whole graph.
pub fn clique_number(g: &IntersectionGraph) -> (usize, Vec<String>) {
    let k = g.max_clique(&g.all());
    (k.len(), k.iter().map(|&v| g.id(v).to_string()).collect())
}

/// `(χ, optimal coloring)` of the whole graph.
pub fn chromatic_number(g: &IntersectionGraph) -> (usize, ColoringWitness) {
    g.coloring(&g.all())
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("order violation: {u} must precede {v}")]
    OrderViolation { u: String, v: String },
    #[error("unknown curve {0}")]
    UnknownCurve(String),
    #[error("curve {0} intersects none of the piercers")]
    UncoveredCurve(String),
    #[error("group coloring for piercer {piercer} is not proper")]
    ImproperGroupColoring { piercer: usize },
}

/// The subfamily strictly between `u` and `v` in basepoint order.
pub fn between(family: &CurveFamily, u: &str, v: &str) -> Result<CurveFamily, GraphError> {
    let iu = family
        .index_of(u)
        .ok_or_else(|| GraphError::UnknownCurve(u.to_string()))?;
    let iv = family
        .index_of(v)
        .ok_or_else(|| GraphError::UnknownCurve(v.to_string()))?;
    if iu >= iv {
        return Err(GraphError::OrderViolation {
            u: u.to_string(),
            v: v.to_string(),
        });
    }
    Ok(family.subfamily(&family.between_indices(iu, iv)))
}

/// Groups of `members` by the first piercer each one intersects.
pub fn piercer_groups(
    g: &IntersectionGraph,
    members: &VertexSet,
    piercers: &[usize],
) -> Result<Vec<VertexSet>, GraphError> {
    let mut groups = vec![VertexSet::new(g.len()); piercers.len()];
    for v in members.iter() {
        let i = piercers
            .iter()
            .position(|&p| g.adjacent(v, p))
            .ok_or_else(|| GraphError::UncoveredCurve(g.id(v).to_string()))?;
        groups[i].insert(v);
    }
    Ok(groups)
}

/// Combines proper colorings of the piercer groups into one coloring of
/// `members`: color `i * width + c` for color `c` in group `i`, where
/// `width` is the largest number of colors any group uses.
pub fn piercer_cover_coloring(
    g: &IntersectionGraph,
    members: &VertexSet,
    piercers: &[usize],
    group_colorings: &[ColoringWitness],
) -> Result<ColoringWitness, GraphError> {
    let groups = piercer_groups(g, members, piercers)?;
    let width = group_colorings
        .iter()
        .flat_map(|w| w.colors.values().map(|c| c + 1))
        .max()
        .unwrap_or(0);
    let mut colors = BTreeMap::new();
    for (i, group) in groups.iter().enumerate() {
        let w = &group_colorings[i];
        for v in group.iter() {
            let c = *w
                .colors
                .get(&v)
                .ok_or(GraphError::ImproperGroupColoring { piercer: i })?;
            colors.insert(v, i * width + c);
        }
        let restricted = ColoringWitness {
            colors: group.iter().map(|v| (v, w.colors[&v])).collect(),
        };
        let sub_adj: Vec<VertexSet> = g.adjacency().iter().map(|a| a.intersection(group)).collect();
        if !restricted.is_proper(&sub_adj) {
            return Err(GraphError::ImproperGroupColoring { piercer: i });
        }
    }
    Ok(ColoringWitness { colors })
}

/// χ of the subfamily with the given ids; panics on unknown ids.
pub fn chi_of_ids<S: AsRef<str>>(family: &CurveFamily, ids: &[S]) -> usize {
    let sub = family.subfamily_by_ids(ids).expect("ids belong to the family");
    let g = intersection_graph(&sub);
    g.chi(&g.all())
}
