use super::bitset::VertexSet;

/// A maximum clique inside `within`, found by branch and bound with a
/// greedy-coloring bound. The result is sorted and depends only on the input.
pub fn max_clique(adj: &[VertexSet], within: &VertexSet) -> Vec<usize> {
    let mut best: Vec<usize> = Vec::new();
    let mut current = Vec::new();
    expand(adj, within.clone(), &mut current, &mut best);
    best.sort_unstable();
    best
}

fn expand(adj: &[VertexSet], candidates: VertexSet, current: &mut Vec<usize>, best: &mut Vec<usize>) {
    if candidates.is_empty() {
        if current.len() > best.len() {
            *best = current.clone();
        }
        return;
    }
    let order = color_bound(adj, &candidates);
    let mut candidates = candidates;
    // process vertices with the largest color bound first, from the back
    for &(v, bound) in order.iter().rev() {
        if current.len() + bound <= best.len() {
            return;
        }
        current.push(v);
        let next = candidates.intersection(&adj[v]);
        expand(adj, next, current, best);
        current.pop();
        candidates.remove(v);
    }
}

/// Greedy sequential coloring of `candidates` in index order; each vertex is
/// paired with its color number (1-based), sorted by that number.
fn color_bound(adj: &[VertexSet], candidates: &VertexSet) -> Vec<(usize, usize)> {
    let mut uncolored = candidates.clone();
    let mut out = Vec::with_capacity(candidates.len());
    let mut color = 0;
    while !uncolored.is_empty() {
        color += 1;
        let mut available = uncolored.clone();
        while let Some(v) = available.first() {
            available.remove(v);
            available = available.difference(&adj[v]);
            uncolored.remove(v);
            out.push((v, color));
        }
    }
    out
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
    fn finds_the_triangle_in_a_bowtie_with_tail() {
        let adj = graph(6, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5), (2, 4)]);
        let k = max_clique(&adj, &VertexSet::full(6));
        assert_eq!(k.len(), 3);
    }

    #[test]
    fn restricted_to_a_subset() {
        let adj = graph(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]);
        let within = VertexSet::from_indices(4, [0, 2, 3]);
        assert_eq!(max_clique(&adj, &within).len(), 2);
        assert!(max_clique(&adj, &VertexSet::new(4)).is_empty());
    }
}
