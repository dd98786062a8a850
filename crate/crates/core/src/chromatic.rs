//! Chromatic polynomials by deletion–contraction.

use std::collections::{BTreeSet, HashMap};
use std::sync::RwLock;

use crate::graph::SimpleGraph;
use crate::poly::{MPoly, Var};
use crate::ring::Coeff;

type GraphKey = (usize, Vec<(usize, usize)>);

/// Chromatic polynomials in `x`, memoized on connected graphs up to
/// isomorphism. Safe to share between threads.
pub struct ChromaticOracle<R> {
    memo: RwLock<HashMap<GraphKey, MPoly<R>>>,
}

impl<R: Coeff> Default for ChromaticOracle<R> {
    fn default() -> Self {
        Self::new()
    }
}

impl<R: Coeff> ChromaticOracle<R> {
    pub fn new() -> Self {
        ChromaticOracle { memo: RwLock::new(HashMap::new()) }
    }

    /// `χ_G(x)`; vertex weights are ignored.
    pub fn chromatic_polynomial(&self, g: &SimpleGraph) -> MPoly<R> {
        g.components()
            .into_iter()
            .map(|comp| self.connected(&g.induced_subgraph(&comp.into_iter().collect())))
            .product()
    }

    fn connected(&self, g: &SimpleGraph) -> MPoly<R> {
        let n = g.vertex_count();
        let e = g.edge_count();
        let x = MPoly::var(Var::X);
        if e == 0 {
            return x.pow(n as u32);
        }
        if e == n - 1 {
            return &x * &(&x - &MPoly::one()).pow(n as u32 - 1);
        }
        if 2 * e == n * (n - 1) {
            return (0..n as i64).map(|k| &x - &MPoly::int(k)).product();
        }
        let key = g.canonical_key();
        if let Some(v) = self.memo.read().unwrap().get(&key) {
            return v.clone();
        }
        let (u, v) = g.edges().next().expect("graph has an edge");
        let value =
            &self.chromatic_polynomial(&delete_edge(g, u, v)) - &self.chromatic_polynomial(&contract_edge(g, u, v));
        self.memo.write().unwrap().entry(key).or_insert(value).clone()
    }
}

/// `χ_G(x)` with a throwaway memo table.
pub fn chromatic_polynomial<R: Coeff>(g: &SimpleGraph) -> MPoly<R> {
    ChromaticOracle::new().chromatic_polynomial(g)
}

fn delete_edge(g: &SimpleGraph, u: usize, v: usize) -> SimpleGraph {
    let edges: Vec<(usize, usize)> = g.edges().filter(|&e| e != (u, v)).collect();
    SimpleGraph::from_edges(g.vertex_count(), &edges)
}

/// Merges `v` into `u`, dropping the loop and any parallel edges.
fn contract_edge(g: &SimpleGraph, u: usize, v: usize) -> SimpleGraph {
    let rename = |w: usize| {
        let w = if w == v { u } else { w };
        if w > v {
            w - 1
        } else {
            w
        }
    };
    let edges: BTreeSet<(usize, usize)> = g
        .edges()
        .map(|(a, b)| (rename(a), rename(b)))
        .filter(|(a, b)| a != b)
        .map(|(a, b)| (a.min(b), a.max(b)))
        .collect();
    SimpleGraph::from_edges(g.vertex_count() - 1, &edges.into_iter().collect::<Vec<_>>())
}

#[cfg(test)]
mod tests {
    use num_bigint::BigInt;

    use super::*;

    type P = MPoly<BigInt>;

    fn poly(s: &str) -> P {
        s.parse().unwrap()
    }

    fn count_colourings(g: &SimpleGraph, k: usize) -> usize {
        let n = g.vertex_count();
        let edges: Vec<(usize, usize)> = g.edges().collect();
        let mut colour = vec![0usize; n];
        let mut count = 0;
        loop {
            if edges.iter().all(|&(u, v)| colour[u - 1] != colour[v - 1]) {
                count += 1;
            }
            let mut i = 0;
            loop {
                if i == n {
                    return count;
                }
                colour[i] += 1;
                if colour[i] < k {
                    break;
                }
                colour[i] = 0;
                i += 1;
            }
        }
    }

    fn all_graphs(n: usize) -> impl Iterator<Item = SimpleGraph> {
        let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v))).collect();
        (0..1usize << pairs.len()).map(move |mask| {
            let edges: Vec<(usize, usize)> =
                pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
            SimpleGraph::from_edges(n, &edges)
        })
    }

    fn eval(p: &P, at: i64) -> BigInt {
        p.eval_univariate(Var::X, &BigInt::from(at)).unwrap()
    }

    #[test]
    fn named_graphs() {
        assert_eq!(chromatic_polynomial::<BigInt>(&SimpleGraph::complete(3)), poly("x^3 - 3*x^2 + 2*x"));
        assert_eq!(chromatic_polynomial::<BigInt>(&SimpleGraph::new(4)), poly("x^4"));
        assert_eq!(chromatic_polynomial::<BigInt>(&SimpleGraph::new(0)), P::one());
        let k5: P = (0..5).map(|k| &P::var(Var::X) - &P::int(k)).product();
        assert_eq!(chromatic_polynomial::<BigInt>(&SimpleGraph::complete(5)), k5);
        let c4 = SimpleGraph::from_edges(4, &[(1, 2), (2, 3), (3, 4), (1, 4)]);
        assert_eq!(chromatic_polynomial::<BigInt>(&c4), poly("x^4 - 4*x^3 + 6*x^2 - 3*x"));
    }

    #[test]
    fn agrees_with_brute_force_colouring() {
        let oracle = ChromaticOracle::<BigInt>::new();
        for n in 0..=5 {
            for g in all_graphs(n) {
                let chi = oracle.chromatic_polynomial(&g);
                for k in 1..=3 {
                    assert_eq!(eval(&chi, k as i64), BigInt::from(count_colourings(&g, k)), "{g:?} at {k}");
                }
                if g.edge_count() > 0 {
                    assert_eq!(eval(&chi, 1), BigInt::from(0));
                }
            }
        }
    }

    #[test]
    fn multiplicative_over_disjoint_union() {
        let oracle = ChromaticOracle::<BigInt>::new();
        let graphs: Vec<SimpleGraph> = (1..=3).flat_map(all_graphs).collect();
        for a in &graphs {
            for b in &graphs {
                let lhs = oracle.chromatic_polynomial(&a.disjoint_union(b));
                assert_eq!(lhs, &oracle.chromatic_polynomial(a) * &oracle.chromatic_polynomial(b));
            }
        }
    }

    #[test]
    fn binomial_type_over_the_graph_coproduct() {
        let oracle = ChromaticOracle::<BigInt>::new();
        for n in 0..=4 {
            for g in all_graphs(n) {
                let chi = oracle.chromatic_polynomial(&g);
                let parts: Vec<(P, P)> = g
                    .coproduct()
                    .iter()
                    .map(|(l, r)| (oracle.chromatic_polynomial(l), oracle.chromatic_polynomial(r)))
                    .collect();
                for a in 0..=4 {
                    for b in 0..=4 {
                        let rhs: BigInt = parts.iter().map(|(l, r)| eval(l, a) * eval(r, b)).sum();
                        assert_eq!(eval(&chi, a + b), rhs);
                    }
                }
            }
        }
    }
}
