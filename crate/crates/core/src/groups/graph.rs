use std::collections::{BTreeSet, HashMap, VecDeque};

/// Undirected graph without loops on vertices `0..vertex_count`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    vertex_count: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl SimpleGraph {
    pub fn new(vertex_count: usize) -> Self {
        SimpleGraph {
            vertex_count,
            edges: BTreeSet::new(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        assert!(a < self.vertex_count && b < self.vertex_count, "edge endpoint out of range");
        assert_ne!(a, b, "self-loops are not allowed");
        self.edges.insert((a.min(b), a.max(b)));
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    /// The empty graph counts as connected; so does a single vertex.
    pub fn is_connected(&self) -> bool {
        if self.vertex_count <= 1 {
            return true;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; self.vertex_count];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.vertex_count
    }

    /// Unordered pairs `{a,b}` in lexicographic order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let n = self.vertex_count;
        (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect()
    }

    /// Pairs joined when they share one vertex and the other two are adjacent.
    pub fn lambda2_graph(&self) -> SimpleGraph {
        let pairs = self.pairs();
        let index: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let mut g = SimpleGraph::new(pairs.len());
        self.add_pair_edges(&pairs, &index, &mut g);
        g
    }

    fn add_pair_edges(&self, pairs: &[(usize, usize)], index: &HashMap<(usize, usize), usize>, g: &mut SimpleGraph) {
        for (i, &(a, b)) in pairs.iter().enumerate() {
            for (x, y) in [(a, b), (b, a)] {
                // {x,y} ~ {x,z} with y ~ z, z != x
                for &(p, q) in &self.edges {
                    for (u, z) in [(p, q), (q, p)] {
                        if u == y && z != x && z != y {
                            let key = (x.min(z), x.max(z));
                            let j = index[&key];
                            if j != i {
                                g.add_edge(i, j);
                            }
                        }
                    }
                }
            }
        }
    }

    /// Pairs plus singletons `{a}`, singleton joined to `{a,b}` when `a ~ b`.
    pub fn s2_graph(&self) -> SimpleGraph {
        let pairs = self.pairs();
        let index: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let mut g = SimpleGraph::new(pairs.len() + self.vertex_count);
        self.add_pair_edges(&pairs, &index, &mut g);
        for &(a, b) in &self.edges {
            let j = index[&(a, b)];
            g.add_edge(pairs.len() + a, j);
            g.add_edge(pairs.len() + b, j);
        }
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> SimpleGraph {
        let mut g = SimpleGraph::new(n);
        for a in 0..n {
            for b in a + 1..n {
                g.add_edge(a, b);
            }
        }
        g
    }

    #[test]
    fn triangle_lambda2() {
        let k3 = complete(3);
        let l = k3.lambda2_graph();
        assert_eq!(l, complete(3));
        assert!(l.is_connected());
    }

    #[test]
    fn path_lambda2() {
        let mut p = SimpleGraph::new(3);
        p.add_edge(0, 1);
        p.add_edge(1, 2);
        let l = p.lambda2_graph();
        // pairs: {0,1}=0, {0,2}=1, {1,2}=2
        assert!(l.has_edge(0, 1));
        assert!(l.has_edge(1, 2));
        assert!(!l.has_edge(0, 2));
        assert!(l.is_connected());
        assert!(p.s2_graph().is_connected());
    }

    #[test]
    fn empty_on_two_vertices() {
        assert!(!SimpleGraph::new(2).is_connected());
    }
}
