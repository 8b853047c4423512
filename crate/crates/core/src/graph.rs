//! Simple undirected graphs and an isomorphism test sized for Cayley graphs
//! of small dihedral groups.

use crate::map::CayleyMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from an edge list on `0..order`. Loops and repeated
    /// edges are ignored.
    pub fn from_edges(order: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Graph {
        let mut adj = vec![Vec::new(); order];
        for (u, v) in edges {
            if u != v && !adj[u].contains(&v) {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        for nb in &mut adj {
            nb.sort_unstable();
        }
        Graph { adj }
    }

    /// Underlying graph of a Cayley map; `X` is inverse-closed so it is undirected.
    pub fn of_map(m: &CayleyMap) -> Graph {
        let adj = m.cayley_graph();
        let edges = adj.iter().enumerate().flat_map(|(u, nb)| nb.iter().map(move |&v| (u, v)));
        Graph::from_edges(adj.len(), edges)
    }

    pub fn complete(k: usize) -> Graph {
        Graph::from_edges(k, (0..k).flat_map(|u| (u + 1..k).map(move |v| (u, v))))
    }

    pub fn complete_bipartite(p: usize, q: usize) -> Graph {
        Graph::from_edges(p + q, (0..p).flat_map(|u| (p..p + q).map(move |v| (u, v))))
    }

    pub fn hypercube(dim: u32) -> Graph {
        let order = 1usize << dim;
        Graph::from_edges(order, (0..order).flat_map(|u| (0..dim).map(move |b| (u, u ^ (1 << b)))))
    }

    /// `K_{2,2,2}`: six vertices, each adjacent to all but its antipode.
    pub fn octahedron() -> Graph {
        Graph::from_edges(6, (0..6).flat_map(|u| (u + 1..6).filter(move |&v| v != u + 3).map(move |v| (u, v))))
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    fn degree_sequence(&self) -> Vec<usize> {
        let mut seq: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        seq.sort_unstable();
        seq
    }

    /// Backtracking search for a vertex bijection preserving adjacency.
    pub fn isomorphic(&self, other: &Graph) -> bool {
        if self.order() != other.order()
            || self.edge_count() != other.edge_count()
            || self.degree_sequence() != other.degree_sequence()
        {
            return false;
        }
        let mut map = vec![usize::MAX; self.order()];
        let mut used = vec![false; other.order()];
        self.extend(other, 0, &mut map, &mut used)
    }

    fn extend(&self, other: &Graph, v: usize, map: &mut [usize], used: &mut [bool]) -> bool {
        if v == self.order() {
            return true;
        }
        for w in 0..other.order() {
            if used[w] || self.adj[v].len() != other.adj[w].len() {
                continue;
            }
            let consistent = (0..v).all(|u| self.has_edge(u, v) == other.has_edge(map[u], w));
            if !consistent {
                continue;
            }
            map[v] = w;
            used[w] = true;
            if self.extend(other, v + 1, map, used) {
                return true;
            }
            used[w] = false;
        }
        map[v] = usize::MAX;
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_graph_sizes() {
        assert_eq!(Graph::complete(4).edge_count(), 6);
        assert_eq!(Graph::complete_bipartite(3, 3).edge_count(), 9);
        assert_eq!(Graph::hypercube(3).edge_count(), 12);
        assert_eq!(Graph::octahedron().edge_count(), 12);
    }

    #[test]
    fn distinguishes_cubic_graphs_on_six_vertices() {
        // the triangular prism and K_{3,3} are both 3-regular on 6 vertices
        let prism = Graph::from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)]);
        assert!(!prism.isomorphic(&Graph::complete_bipartite(3, 3)));
        let hexagon_with_diagonals =
            Graph::from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3), (1, 4), (2, 5)]);
        assert!(hexagon_with_diagonals.isomorphic(&Graph::complete_bipartite(3, 3)));
    }

    #[test]
    fn relabelled_cube() {
        let q = Graph::hypercube(3);
        let perm = [5, 2, 7, 0, 3, 6, 1, 4];
        let relabelled = Graph::from_edges(8, (0..8).flat_map(|u| q.neighbours(u).iter().map(move |&v| (perm[u], perm[v]))));
        assert!(relabelled.isomorphic(&q));
        assert!(!relabelled.isomorphic(&Graph::complete_bipartite(4, 4)));
    }
}
