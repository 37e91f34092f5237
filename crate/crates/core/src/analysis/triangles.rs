use crate::graph::Graph;

/// Size of the sorted-list intersection of two neighbor lists.
pub(crate) fn common_neighbors(a: &[usize], b: &[usize]) -> usize {
    let (mut x, mut y, mut count) = (0, 0, 0);
    while x < a.len() && y < b.len() {
        match a[x].cmp(&b[y]) {
            std::cmp::Ordering::Less => x += 1,
            std::cmp::Ordering::Greater => y += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                x += 1;
                y += 1;
            }
        }
    }
    count
}

/// Number of triangles through each edge, in [`Graph::edges`] order.
pub fn edge_triangles(g: &Graph) -> Vec<u64> {
    g.edges()
        .map(|(u, v)| common_neighbors(g.neighbors(u), g.neighbors(v)) as u64)
        .collect()
}

/// Global triangle count.
pub fn count_triangles(g: &Graph) -> u64 {
    edge_triangles(g).iter().sum::<u64>() / 3
}

/// Triangles containing each node.
pub fn triangle_degrees(g: &Graph) -> Vec<u64> {
    let mut per_node = vec![0u64; g.node_count()];
    for ((u, v), t) in g.edges().zip(edge_triangles(g)) {
        per_node[u] += t;
        per_node[v] += t;
    }
    // each triangle at v is seen through both of its edges at v
    per_node.iter_mut().for_each(|t| *t /= 2);
    per_node
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_on_small_graphs() {
        assert_eq!(count_triangles(&Graph::complete(4)), 4);
        assert_eq!(count_triangles(&Graph::complete(5)), 10);
        let cycle = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        assert_eq!(count_triangles(&cycle), 0);
    }

    #[test]
    fn per_node_counts() {
        assert_eq!(triangle_degrees(&Graph::complete(4)), vec![3; 4]);
        let star = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(triangle_degrees(&star), vec![0; 4]);
        let paw = Graph::from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
        assert_eq!(triangle_degrees(&paw), vec![1, 1, 1, 0]);
    }
}
