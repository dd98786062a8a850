//! Undirected simple graphs on vertices `1..=n`, optionally vertex-weighted.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::GraphError;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GraphJson", into = "GraphJson")]
pub struct SimpleGraph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
    weights: Option<Vec<usize>>,
}

/// Wire format: `{"n":5,"edges":[[1,2],…],"weights":[…]}`.
#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    weights: Option<Vec<usize>>,
}

impl TryFrom<GraphJson> for SimpleGraph {
    type Error = GraphError;

    fn try_from(j: GraphJson) -> Result<Self, GraphError> {
        let mut g = SimpleGraph::new(j.n);
        for [u, v] in j.edges {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if u == 0 || v == 0 || u > j.n || v > j.n {
                return Err(GraphError::VertexOutOfRange { vertex: u.max(v), n: j.n });
            }
            if !g.add_edge(u, v) {
                return Err(GraphError::RepeatedEdge(u, v));
            }
        }
        if let Some(w) = j.weights {
            if w.len() != j.n || w.contains(&0) {
                return Err(GraphError::BadWeights);
            }
            g.weights = Some(w);
        }
        Ok(g)
    }
}

impl From<SimpleGraph> for GraphJson {
    fn from(g: SimpleGraph) -> Self {
        GraphJson { n: g.n, edges: g.edges.iter().map(|&(u, v)| [u, v]).collect(), weights: g.weights }
    }
}

impl SimpleGraph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        SimpleGraph { n, edges: BTreeSet::new(), weights: None }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = SimpleGraph::new(n);
        for u in 1..=n {
            for v in u + 1..=n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = SimpleGraph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    /// Adds `{u, v}`; returns false if it was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        assert!(u != v, "self-loop at {u}");
        assert!(u >= 1 && v >= 1 && u <= self.n && v <= self.n, "vertex out of range");
        self.edges.insert((u.min(v), u.max(v)))
    }

    pub fn with_weights(mut self, weights: Vec<usize>) -> Self {
        assert_eq!(weights.len(), self.n);
        assert!(weights.iter().all(|&w| w >= 1));
        self.weights = Some(weights);
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn weights(&self) -> Option<&[usize]> {
        self.weights.as_deref()
    }

    pub fn unweighted(&self) -> SimpleGraph {
        SimpleGraph { weights: None, ..self.clone() }
    }

    pub(crate) fn adjacency(&self) -> Vec<Vec<bool>> {
        let mut adj = vec![vec![false; self.n]; self.n];
        for &(u, v) in &self.edges {
            adj[u - 1][v - 1] = true;
            adj[v - 1][u - 1] = true;
        }
        adj
    }

    /// Connected components as sorted vertex lists, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..=self.n).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            let mut y = x;
            while parent[y] != r {
                let next = parent[y];
                parent[y] = r;
                y = next;
            }
            r
        }
        for &(u, v) in &self.edges {
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru != rv {
                parent[ru.max(rv)] = ru.min(rv);
            }
        }
        let mut comps: Vec<Vec<usize>> = Vec::new();
        let mut index = vec![usize::MAX; self.n + 1];
        for v in 1..=self.n {
            let r = find(&mut parent, v);
            if index[r] == usize::MAX {
                index[r] = comps.len();
                comps.push(Vec::new());
            }
            comps[index[r]].push(v);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Subgraph induced by `keep`, renumbered increasingly.
    pub fn induced_subgraph(&self, keep: &BTreeSet<usize>) -> SimpleGraph {
        let mut index = vec![0; self.n + 1];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i + 1;
        }
        let mut g = SimpleGraph::new(keep.len());
        for &(u, v) in &self.edges {
            if index[u] != 0 && index[v] != 0 {
                g.add_edge(index[u], index[v]);
            }
        }
        if let Some(w) = &self.weights {
            g.weights = Some(keep.iter().map(|&v| w[v - 1]).collect());
        }
        g
    }

    /// Disjoint union, with `other`'s vertices shifted past ours.
    pub fn disjoint_union(&self, other: &SimpleGraph) -> SimpleGraph {
        let mut g = SimpleGraph::new(self.n + other.n);
        g.edges = self.edges.clone();
        for &(u, v) in &other.edges {
            g.add_edge(u + self.n, v + self.n);
        }
        if let (Some(a), Some(b)) = (&self.weights, &other.weights) {
            g.weights = Some(a.iter().chain(b).copied().collect());
        }
        g
    }

    /// `μ(G) = Σ_{I ⊔ J = V(G)} G|_I ⊗ G|_J` over all `2ⁿ` ordered splits.
    pub fn coproduct(&self) -> Vec<(SimpleGraph, SimpleGraph)> {
        assert!(self.n < usize::BITS as usize);
        (0..1usize << self.n)
            .map(|mask| {
                let (left, right): (BTreeSet<usize>, BTreeSet<usize>) =
                    (1..=self.n).partition(|&v| mask >> (v - 1) & 1 == 1);
                (self.induced_subgraph(&left), self.induced_subgraph(&right))
            })
            .collect()
    }

    /// Relabels vertices by `order`: new vertex `i+1` is old vertex `order[i]`.
    pub(crate) fn relabel(&self, order: &[usize]) -> SimpleGraph {
        let mut index = vec![0; self.n + 1];
        for (i, &v) in order.iter().enumerate() {
            index[v] = i + 1;
        }
        let mut g = SimpleGraph::new(self.n);
        for &(u, v) in &self.edges {
            g.add_edge(index[u], index[v]);
        }
        if let Some(w) = &self.weights {
            g.weights = Some(order.iter().map(|&v| w[v - 1]).collect());
        }
        g
    }

    /// Exact isomorphism-invariant key: the smallest edge list over all
    /// relabelings that respect the colour-refinement partition (degrees,
    /// then neighbour colours, iterated to a fixed point).
    pub fn canonical_key(&self) -> (usize, Vec<(usize, usize)>) {
        let adj = self.adjacency();
        let mut colour: Vec<usize> = adj.iter().map(|row| row.iter().filter(|&&b| b).count()).collect();
        loop {
            let signatures: Vec<(usize, Vec<usize>)> = (0..self.n)
                .map(|v| {
                    let mut nb: Vec<usize> = (0..self.n).filter(|&u| adj[v][u]).map(|u| colour[u]).collect();
                    nb.sort_unstable();
                    (colour[v], nb)
                })
                .collect();
            let mut distinct = signatures.clone();
            distinct.sort();
            distinct.dedup();
            let refined: Vec<usize> = signatures.iter().map(|s| distinct.binary_search(s).unwrap()).collect();
            let before = colour.iter().collect::<BTreeSet<_>>().len();
            colour = refined;
            if distinct.len() == before {
                break;
            }
        }
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut by_colour: Vec<usize> = (1..=self.n).collect();
        by_colour.sort_by_key(|&v| colour[v - 1]);
        for v in by_colour {
            match groups.last_mut() {
                Some(g) if colour[g[0] - 1] == colour[v - 1] => g.push(v),
                _ => groups.push(vec![v]),
            }
        }
        let mut best: Option<Vec<(usize, usize)>> = None;
        let mut order = Vec::with_capacity(self.n);
        search_orders(&groups, 0, &mut order, &mut |order| {
            let g = self.relabel(order);
            let key: Vec<(usize, usize)> = g.edges.into_iter().collect();
            if best.as_ref().is_none_or(|b| key < *b) {
                best = Some(key);
            }
        });
        (self.n, best.unwrap_or_default())
    }

    pub fn is_isomorphic(&self, other: &SimpleGraph) -> bool {
        self.n == other.n && self.edges.len() == other.edges.len() && self.canonical_key() == other.canonical_key()
    }
}

fn search_orders(groups: &[Vec<usize>], gi: usize, order: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
    if gi == groups.len() {
        visit(order);
        return;
    }
    let group = &groups[gi];
    let mut used = vec![false; group.len()];
    fn perm_group(
        groups: &[Vec<usize>],
        gi: usize,
        used: &mut Vec<bool>,
        order: &mut Vec<usize>,
        visit: &mut impl FnMut(&[usize]),
    ) {
        let group = &groups[gi];
        if used.iter().all(|&u| u) {
            search_orders(groups, gi + 1, order, visit);
            return;
        }
        for i in 0..group.len() {
            if !used[i] {
                used[i] = true;
                order.push(group[i]);
                perm_group(groups, gi, used, order, visit);
                order.pop();
                used[i] = false;
            }
        }
    }
    perm_group(groups, gi, &mut used, order, visit);
}
