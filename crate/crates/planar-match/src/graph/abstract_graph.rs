use std::collections::{BTreeSet, VecDeque};

use super::GraphError;

/// Simple undirected graph on nodes `0..n`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AbstractGraph {
    adj: Vec<BTreeSet<usize>>,
}

/// A biconnected component. Isolated nodes form single-node blocks and
/// bridges form two-node blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub nodes: BTreeSet<usize>,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum BlockCutNode {
    Block(usize),
    Cut(usize),
}

/// Bipartite forest of blocks and cut vertices.
#[derive(Clone, Debug)]
pub struct BlockCutTree {
    pub blocks: Vec<Block>,
    pub cut_vertices: Vec<usize>,
    /// Edges `(block index, cut vertex)`.
    pub edges: Vec<(usize, usize)>,
}

impl BlockCutTree {
    pub fn neighbors(&self, node: BlockCutNode) -> Vec<BlockCutNode> {
        match node {
            BlockCutNode::Block(b) => self.edges.iter().filter(|e| e.0 == b).map(|e| BlockCutNode::Cut(e.1)).collect(),
            BlockCutNode::Cut(c) => self.edges.iter().filter(|e| e.1 == c).map(|e| BlockCutNode::Block(e.0)).collect(),
        }
    }
}

impl AbstractGraph {
    pub fn new(n: usize) -> Self {
        AbstractGraph { adj: vec![BTreeSet::new(); n] }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = Self::new(n);
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    /// Adds `{u, v}`; repeated edges are ignored.
    ///
    /// # Panics
    /// On a loop or an out-of-range node.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "loop at node {u}");
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &BTreeSet<usize> {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(&v)
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (u, nb) in self.adj.iter().enumerate() {
            for &v in nb.range(u + 1..) {
                out.push((u, v));
            }
        }
        out
    }

    /// Connected components restricted to `allowed`, each sorted, ordered by
    /// smallest node.
    pub fn components_within(&self, allowed: &BTreeSet<usize>) -> Vec<Vec<usize>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &s in allowed {
            if !seen.insert(s) {
                continue;
            }
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for &u in &self.adj[v] {
                    if allowed.contains(&u) && seen.insert(u) {
                        comp.push(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        self.components_within(&(0..self.node_count()).collect())
    }

    pub fn is_connected_subset(&self, nodes: &BTreeSet<usize>) -> bool {
        !nodes.is_empty() && self.components_within(nodes).len() == 1
    }

    /// Number of edges with both ends in `nodes`.
    pub fn induced_edge_count(&self, nodes: &BTreeSet<usize>) -> usize {
        nodes.iter().map(|&v| self.adj[v].iter().filter(|u| nodes.contains(u)).count()).sum::<usize>() / 2
    }

    /// BFS spanning forest from the smallest node of each component.
    pub fn spanning_forest(&self) -> Vec<(usize, usize)> {
        let mut seen = vec![false; self.node_count()];
        let mut out = Vec::new();
        for s in 0..self.node_count() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &u in &self.adj[v] {
                    if !seen[u] {
                        seen[u] = true;
                        out.push((v, u));
                        queue.push_back(u);
                    }
                }
            }
        }
        out
    }

    /// DFS tree from `root` visiting neighbors in ascending order; returns
    /// the parent of every reached node (`root` maps to itself).
    pub fn dfs_tree(&self, root: usize) -> Vec<Option<usize>> {
        let mut parent = vec![None; self.node_count()];
        parent[root] = Some(root);
        let mut stack = vec![(root, self.adj[root].iter().copied().collect::<Vec<_>>(), 0usize)];
        while let Some((v, nbrs, i)) = stack.last_mut() {
            if *i == nbrs.len() {
                stack.pop();
                continue;
            }
            let u = nbrs[*i];
            *i += 1;
            let v = *v;
            if parent[u].is_none() {
                parent[u] = Some(v);
                stack.push((u, self.adj[u].iter().copied().collect(), 0));
            }
        }
        parent
    }

    /// Biconnected components (Hopcroft-Tarjan, iterative).
    pub fn biconnected_components(&self) -> Vec<Block> {
        let n = self.node_count();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut time = 0;
        let mut edge_stack: Vec<(usize, usize)> = Vec::new();
        let mut blocks = Vec::new();
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            if self.adj[root].is_empty() {
                disc[root] = time;
                time += 1;
                blocks.push(Block { nodes: BTreeSet::from([root]), edges: Vec::new() });
                continue;
            }
            disc[root] = time;
            low[root] = time;
            time += 1;
            let mut stack: Vec<(usize, usize, Vec<usize>, usize)> =
                vec![(root, usize::MAX, self.adj[root].iter().copied().collect(), 0)];
            while !stack.is_empty() {
                let top = stack.len() - 1;
                let (v, parent) = (stack[top].0, stack[top].1);
                if stack[top].3 < stack[top].2.len() {
                    let u = stack[top].2[stack[top].3];
                    stack[top].3 += 1;
                    if u == parent {
                        continue;
                    }
                    if disc[u] == usize::MAX {
                        edge_stack.push((v, u));
                        disc[u] = time;
                        low[u] = time;
                        time += 1;
                        stack.push((u, v, self.adj[u].iter().copied().collect(), 0));
                    } else if disc[u] < disc[v] {
                        edge_stack.push((v, u));
                        low[v] = low[v].min(disc[u]);
                    }
                } else {
                    stack.pop();
                    if let Some(p) = stack.last() {
                        let p = p.0;
                        low[p] = low[p].min(low[v]);
                        if low[v] >= disc[p] {
                            let mut edges = Vec::new();
                            let mut nodes = BTreeSet::new();
                            while let Some(e) = edge_stack.pop() {
                                nodes.insert(e.0);
                                nodes.insert(e.1);
                                edges.push((e.0.min(e.1), e.0.max(e.1)));
                                if e == (p, v) {
                                    break;
                                }
                            }
                            edges.sort_unstable();
                            blocks.push(Block { nodes, edges });
                        }
                    }
                }
            }
        }
        blocks.sort_by(|a, b| a.nodes.iter().next().cmp(&b.nodes.iter().next()).then(a.nodes.cmp(&b.nodes)));
        blocks
    }

    pub fn block_cut_tree(&self) -> BlockCutTree {
        let blocks = self.biconnected_components();
        let mut count = vec![0usize; self.node_count()];
        for b in &blocks {
            for &v in &b.nodes {
                count[v] += 1;
            }
        }
        let cut_vertices: Vec<usize> = (0..self.node_count()).filter(|&v| count[v] > 1).collect();
        let mut edges = Vec::new();
        for (i, b) in blocks.iter().enumerate() {
            for &v in &b.nodes {
                if count[v] > 1 {
                    edges.push((i, v));
                }
            }
        }
        BlockCutTree { blocks, cut_vertices, edges }
    }

    /// Open ear decomposition of a biconnected graph via chain
    /// decomposition. The first ear is a closed cycle (first node repeated
    /// at the end); every later ear is a path whose endpoints are distinct
    /// and already covered.
    pub fn open_ear_decomposition(&self) -> Result<Vec<Vec<usize>>, GraphError> {
        let n = self.node_count();
        if n < 2 || self.edge_count() < 2 || self.connected_components().len() != 1 {
            return Err(GraphError::NotBiconnected);
        }
        let parent = self.dfs_tree(0);
        // preorder
        let mut order = Vec::with_capacity(n);
        let mut depth = vec![0usize; n];
        {
            let mut stack = vec![0usize];
            let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
            for (v, p) in parent.iter().enumerate() {
                if let Some(p) = *p {
                    if p != v {
                        children[p].push(v);
                    }
                }
            }
            while let Some(v) = stack.pop() {
                order.push(v);
                for &c in children[v].iter().rev() {
                    depth[c] = depth[v] + 1;
                    stack.push(c);
                }
            }
        }
        let is_tree_edge = |a: usize, b: usize| parent[a] == Some(b) && a != b || parent[b] == Some(a) && a != b;
        let mut visited = vec![false; n];
        let mut ears = Vec::new();
        let mut used_edges = 0usize;
        for &v in &order {
            for &w in &self.adj[v] {
                if is_tree_edge(v, w) || depth[w] <= depth[v] {
                    continue;
                }
                // back edge from ancestor v down to descendant w
                visited[v] = true;
                let mut chain = vec![v, w];
                let mut x = w;
                while !visited[x] {
                    visited[x] = true;
                    x = parent[x].unwrap();
                    chain.push(x);
                }
                used_edges += chain.len() - 1;
                let closed = chain.first() == chain.last();
                if closed && !ears.is_empty() {
                    return Err(GraphError::NotBiconnected);
                }
                ears.push(chain);
            }
        }
        if used_edges != self.edge_count() || ears.is_empty() || visited.iter().any(|&b| !b) {
            return Err(GraphError::NotBiconnected);
        }
        Ok(ears)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_blocks() {
        let g = AbstractGraph::from_edges(3, [(0, 1), (1, 2)]);
        let t = g.block_cut_tree();
        assert_eq!(t.blocks.len(), 2);
        assert_eq!(t.cut_vertices, vec![1]);
    }

    #[test]
    fn bowtie_block_cut_tree_is_path() {
        let g = AbstractGraph::from_edges(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]);
        let t = g.block_cut_tree();
        assert_eq!(t.blocks.len(), 2);
        assert_eq!(t.cut_vertices, vec![2]);
        assert_eq!(t.edges.len(), 2);
    }

    #[test]
    fn cycle_ear() {
        let g = AbstractGraph::from_edges(5, (0..5).map(|i| (i, (i + 1) % 5)));
        let ears = g.open_ear_decomposition().unwrap();
        assert_eq!(ears.len(), 1);
        assert_eq!(ears[0].len(), 6);
        assert_eq!(g.biconnected_components().len(), 1);
    }

    #[test]
    fn k4_ears() {
        let g = AbstractGraph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let ears = g.open_ear_decomposition().unwrap();
        let total: usize = ears.iter().map(|e| e.len() - 1).sum();
        assert_eq!(total, 6);
        assert_eq!(ears[0].first(), ears[0].last());
        for ear in &ears[1..] {
            assert_ne!(ear.first(), ear.last());
        }
    }

    #[test]
    fn bowtie_not_biconnected() {
        let g = AbstractGraph::from_edges(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]);
        assert_eq!(g.open_ear_decomposition(), Err(GraphError::NotBiconnected));
    }
}
