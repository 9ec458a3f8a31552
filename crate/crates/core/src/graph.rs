//! Simple undirected graphs with named vertices, simple-cycle enumeration
//! and fundamental cycle bases.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

/// A simple graph. Edges are stored as `(i, j)` with `i < j`, sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    ids: Vec<String>,
    edges: Vec<(usize, usize)>,
    index: BTreeMap<(usize, usize), usize>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph, rejecting loops, repeated edges, unknown endpoints and
    /// repeated vertex ids.
    pub fn new(ids: Vec<String>, edges: &[(usize, usize)]) -> Result<Self> {
        let n = ids.len();
        let mut seen = BTreeSet::new();
        for id in &ids {
            if !seen.insert(id.as_str()) {
                return Err(Error::InvalidGraph(format!("duplicate vertex id {id}")));
            }
        }
        let mut set = BTreeSet::new();
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::InvalidGraph(format!("edge ({a}, {b}) has an unknown endpoint")));
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("loop at {}", ids[a])));
            }
            if !set.insert((a.min(b), a.max(b))) {
                return Err(Error::InvalidGraph(format!("repeated edge {}-{}", ids[a], ids[b])));
            }
        }
        let edges: Vec<(usize, usize)> = set.into_iter().collect();
        let mut adj = vec![Vec::new(); n];
        let mut index = BTreeMap::new();
        for (k, &(a, b)) in edges.iter().enumerate() {
            adj[a].push(b);
            adj[b].push(a);
            index.insert((a, b), k);
        }
        for row in &mut adj {
            row.sort_unstable();
        }
        Ok(Graph { ids, edges, index, adj })
    }

    /// Builds a graph on vertices `p1..pn` from 1-based edge pairs.
    pub fn numbered(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let ids = (1..=n).map(|k| format!("p{k}")).collect();
        let e: Vec<(usize, usize)> = edges.iter().map(|&(a, b)| (a - 1, b - 1)).collect();
        Graph::new(ids, &e)
    }

    pub fn vertex_count(&self) -> usize {
        self.ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, v: usize) -> &str {
        &self.ids[v]
    }

    pub fn vertex(&self, id: &str) -> Option<usize> {
        self.ids.iter().position(|x| x == id)
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        self.index.get(&(a.min(b), a.max(b))).copied()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edge_index(a, b).is_some()
    }

    /// Neighbours in increasing vertex order.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == n
    }

    /// Checks the requirements for condition generation: connected and
    /// every vertex of degree at least three.
    pub fn check_condition_ready(&self) -> Result<()> {
        if let Some(v) = (0..self.vertex_count()).find(|&v| self.degree(v) < 3) {
            return Err(Error::InvalidGraph(format!(
                "vertex {} has degree {} (at least 3 required)",
                self.ids[v],
                self.degree(v)
            )));
        }
        if !self.is_connected() {
            return Err(Error::InvalidGraph("graph is not connected".into()));
        }
        Ok(())
    }

    pub fn cycle_ids(&self, cycle: &[usize]) -> Vec<String> {
        cycle.iter().map(|&v| self.ids[v].clone()).collect()
    }

    /// Whether `cycle` is a simple cycle of this graph (length ≥ 3).
    pub fn is_simple_cycle(&self, cycle: &[usize]) -> bool {
        let k = cycle.len();
        let distinct: BTreeSet<_> = cycle.iter().collect();
        k >= 3
            && distinct.len() == k
            && cycle.iter().all(|&v| v < self.vertex_count())
            && (0..k).all(|i| self.has_edge(cycle[i], cycle[(i + 1) % k]))
    }

    /// All simple cycles with at most `max_len` vertices, each reported once
    /// in canonical form (see [`canonical_cycle`]), sorted by length and then
    /// lexicographically.
    pub fn simple_cycles(&self, max_len: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let n = self.vertex_count();
        let mut on_path = vec![false; n];
        for start in 0..n {
            let mut path = vec![start];
            on_path[start] = true;
            self.extend_cycles(start, max_len, &mut path, &mut on_path, &mut out);
            on_path[start] = false;
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    fn extend_cycles(
        &self,
        start: usize,
        max_len: usize,
        path: &mut Vec<usize>,
        on_path: &mut [bool],
        out: &mut Vec<Vec<usize>>,
    ) {
        let last = *path.last().expect("nonempty path");
        for &w in &self.adj[last] {
            if w == start && path.len() >= 3 && path[1] < last {
                out.push(path.clone());
            }
            if w > start && !on_path[w] && path.len() < max_len {
                on_path[w] = true;
                path.push(w);
                self.extend_cycles(start, max_len, path, on_path, out);
                path.pop();
                on_path[w] = false;
            }
        }
    }

    /// A fundamental cycle basis from the breadth-first spanning tree rooted
    /// at vertex 0, one cycle per non-tree edge in edge order.
    pub fn fundamental_cycles(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        if n == 0 {
            return Vec::new();
        }
        let mut parent = vec![usize::MAX; n];
        let mut depth = vec![0usize; n];
        let mut seen = vec![false; n];
        let mut tree = BTreeSet::new();
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = v;
                    depth[w] = depth[v] + 1;
                    tree.insert((v.min(w), v.max(w)));
                    queue.push_back(w);
                }
            }
        }
        let mut out = Vec::new();
        for &(a, b) in &self.edges {
            if tree.contains(&(a, b)) {
                continue;
            }
            let (mut x, mut y) = (a, b);
            let mut left = vec![x];
            let mut right = vec![y];
            while x != y {
                if depth[x] >= depth[y] {
                    x = parent[x];
                    left.push(x);
                } else {
                    y = parent[y];
                    right.push(y);
                }
            }
            right.pop();
            right.reverse();
            left.extend(right);
            out.push(canonical_cycle(&left));
        }
        out
    }
}

/// Rotates a cycle to start at its smallest vertex and orients it so that the
/// second vertex is smaller than the last.
pub fn canonical_cycle(cycle: &[usize]) -> Vec<usize> {
    let k = cycle.len();
    if k == 0 {
        return Vec::new();
    }
    let m = (0..k).min_by_key(|&i| cycle[i]).expect("nonempty");
    let fwd: Vec<usize> = (0..k).map(|i| cycle[(m + i) % k]).collect();
    let bwd: Vec<usize> = (0..k).map(|i| cycle[(m + k - i) % k]).collect();
    if k < 3 || fwd[1] < bwd[1] {
        fwd
    } else {
        bwd
    }
}

/// Two cycles and the chord `(a, b)` they share.
pub type ChordSplit = (Vec<usize>, Vec<usize>, (usize, usize));

/// Splits a cycle through every vertex along its lexicographically smallest
/// chord into two shorter cycles, each sharing the chord.
pub fn split_by_smallest_chord(g: &Graph, cycle: &[usize]) -> Option<ChordSplit> {
    let k = cycle.len();
    let pos: BTreeMap<usize, usize> = cycle.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let chord = g.edges().iter().copied().find(|&(a, b)| {
        let (Some(&i), Some(&j)) = (pos.get(&a), pos.get(&b)) else {
            return false;
        };
        let d = i.abs_diff(j);
        d != 1 && d != k - 1
    })?;
    let (i, j) = {
        let (i, j) = (pos[&chord.0], pos[&chord.1]);
        (i.min(j), i.max(j))
    };
    let first: Vec<usize> = cycle[i..=j].to_vec();
    let mut second: Vec<usize> = cycle[j..].to_vec();
    second.extend_from_slice(&cycle[..=i]);
    Some((canonical_cycle(&first), canonical_cycle(&second), chord))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Graph {
        let mut e = Vec::new();
        for a in 1..=n {
            for b in a + 1..=n {
                e.push((a, b));
            }
        }
        Graph::numbered(n, &e).unwrap()
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(Graph::numbered(3, &[(1, 1)]).is_err());
        assert!(Graph::numbered(3, &[(1, 2), (2, 1)]).is_err());
        assert!(Graph::numbered(3, &[(1, 4)]).is_err());
    }

    #[test]
    fn triangle_has_one_cycle() {
        let g = complete(3);
        assert_eq!(g.simple_cycles(3), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn k4_cycles() {
        let g = complete(4);
        let c = g.simple_cycles(4);
        assert_eq!(c.iter().filter(|x| x.len() == 3).count(), 4);
        assert_eq!(c.iter().filter(|x| x.len() == 4).count(), 3);
    }

    #[test]
    fn canonical_form() {
        assert_eq!(canonical_cycle(&[3, 1, 2]), vec![1, 2, 3]);
        assert_eq!(canonical_cycle(&[3, 2, 1]), vec![1, 2, 3]);
        assert_eq!(canonical_cycle(&[2, 4, 1, 3]), vec![1, 3, 2, 4]);
    }

    #[test]
    fn fundamental_basis_size() {
        let g = complete(5);
        let f = g.fundamental_cycles();
        assert_eq!(f.len(), g.edge_count() - g.vertex_count() + 1);
        assert!(f.iter().all(|c| g.is_simple_cycle(c)));
    }

    #[test]
    fn chord_split() {
        let g = complete(4);
        let (a, b, chord) = split_by_smallest_chord(&g, &[0, 1, 2, 3]).unwrap();
        assert_eq!(chord, (0, 2));
        assert_eq!(a, vec![0, 1, 2]);
        assert_eq!(b, vec![0, 2, 3]);
    }
}
