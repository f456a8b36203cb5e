//! Brute-force matching of decorated graphs up to edge-direction reversal.
//!
//! Tails are labelled and fixed individually. A match is a vertex bijection
//! together with an edge bijection that carries every edge onto an edge with
//! the same endpoints and decoration, after reversing it if needed. For a
//! fixed vertex bijection the edge bijections are counted in closed form:
//! edges with equal keys are interchangeable, so the count is the product of
//! the factorials of the class sizes. A self-inverse loop has a single key and
//! its half-edge swap is not counted separately.

use crate::arith::Phase;

use super::{ContractionMap, DecoratedGraph, EdgeImage, GraphError};

pub const SEARCH_MAX_VERTICES: usize = 8;
pub const SEARCH_MAX_EDGES: usize = 12;

type EdgeKey = (usize, usize, Vec<Phase>, Option<usize>);

fn edge_key(tail: usize, head: usize, decoration: &crate::arith::PhaseVector, label: Option<usize>) -> EdgeKey {
    let forward = (tail, head, decoration.phases().to_vec(), label);
    let backward = (head, tail, decoration.inverse().phases().to_vec(), label);
    forward.min(backward)
}

struct Search<'a> {
    a: &'a DecoratedGraph,
    candidates: Vec<Vec<usize>>,
    labels: Vec<Option<usize>>,
    target_keys: Vec<EdgeKey>,
    stop_at_first: bool,
}

impl Search<'_> {
    fn run(&self) -> u64 {
        let n = self.a.vertex_count();
        let mut sigma = vec![usize::MAX; n];
        let mut used = vec![false; n];
        let mut total = 0;
        self.extend(0, &mut sigma, &mut used, &mut total);
        total
    }

    fn extend(&self, v: usize, sigma: &mut Vec<usize>, used: &mut Vec<bool>, total: &mut u64) {
        if self.stop_at_first && *total > 0 {
            return;
        }
        if v == sigma.len() {
            *total += self.edge_bijections(sigma);
            return;
        }
        for &w in &self.candidates[v] {
            if used[w] {
                continue;
            }
            used[w] = true;
            sigma[v] = w;
            self.extend(v + 1, sigma, used, total);
            used[w] = false;
        }
    }

    fn edge_bijections(&self, sigma: &[usize]) -> u64 {
        let mut keys: Vec<EdgeKey> = self
            .a
            .edges
            .iter()
            .zip(&self.labels)
            .map(|(e, &l)| edge_key(sigma[e.tail], sigma[e.head], &e.decoration, l))
            .collect();
        keys.sort();
        if keys != self.target_keys {
            return 0;
        }
        let mut count = 1u64;
        let mut run = 0u64;
        for (i, k) in keys.iter().enumerate() {
            run = if i > 0 && keys[i - 1] == *k { run + 1 } else { 1 };
            count *= run;
        }
        count
    }
}

fn check_cap(g: &DecoratedGraph) -> Result<(), GraphError> {
    if g.vertex_count() > SEARCH_MAX_VERTICES || g.edge_count() > SEARCH_MAX_EDGES {
        return Err(GraphError::SearchCapExceeded {
            vertices: g.vertex_count(),
            edges: g.edge_count(),
        });
    }
    Ok(())
}

fn sorted_keys(g: &DecoratedGraph, labels: &[Option<usize>]) -> Vec<EdgeKey> {
    let mut keys: Vec<EdgeKey> = g
        .edges
        .iter()
        .zip(labels)
        .map(|(e, &l)| edge_key(e.tail, e.head, &e.decoration, l))
        .collect();
    keys.sort();
    keys
}

/// `|Aut(Γ/Γ')|`: automorphisms of the source that fix every tail, preserve
/// genera and decorations up to reversal, and commute with the map to the
/// target (vertex fibres and images of uncontracted edges are preserved).
pub fn automorphism_order(cm: &ContractionMap) -> Result<u64, GraphError> {
    let g = &cm.source;
    g.check_indices()?;
    check_cap(g)?;
    let labels: Vec<Option<usize>> = cm
        .edge_map
        .iter()
        .map(|img| match *img {
            EdgeImage::Edge(k) => Some(k),
            EdgeImage::Vertex(_) => None,
        })
        .collect();
    let candidates = (0..g.vertex_count())
        .map(|v| {
            if g.tails_at(v) > 0 {
                return vec![v];
            }
            (0..g.vertex_count())
                .filter(|&w| {
                    g.genera[w] == g.genera[v]
                        && g.edge_ends(w) == g.edge_ends(v)
                        && g.tails_at(w) == 0
                        && cm.vertex_map[w] == cm.vertex_map[v]
                })
                .collect()
        })
        .collect();
    let search = Search {
        a: g,
        candidates,
        target_keys: sorted_keys(g, &labels),
        labels,
        stop_at_first: false,
    };
    Ok(search.run())
}

/// Whether some vertex and edge bijection carries `a` onto `b`, with tail
/// `i` going to tail `i` and edges matched up to reversal.
pub fn are_isomorphic(a: &DecoratedGraph, b: &DecoratedGraph) -> Result<bool, GraphError> {
    a.check_indices()?;
    b.check_indices()?;
    check_cap(a)?;
    if a.vertex_count() != b.vertex_count()
        || a.edge_count() != b.edge_count()
        || a.tails.len() != b.tails.len()
        || a.tails.iter().zip(&b.tails).any(|(x, y)| x.decoration != y.decoration)
    {
        return Ok(false);
    }
    let mut forced = vec![None; a.vertex_count()];
    for (x, y) in a.tails.iter().zip(&b.tails) {
        match forced[x.vertex] {
            Some(w) if w != y.vertex => return Ok(false),
            _ => forced[x.vertex] = Some(y.vertex),
        }
    }
    let candidates = (0..a.vertex_count())
        .map(|v| {
            (0..b.vertex_count())
                .filter(|&w| {
                    forced[v].is_none_or(|f| f == w)
                        && a.genera[v] == b.genera[w]
                        && a.edge_ends(v) == b.edge_ends(w)
                        && a.tails_at(v) == b.tails_at(w)
                })
                .collect()
        })
        .collect();
    let labels = vec![None; a.edge_count()];
    let search = Search {
        a,
        candidates,
        target_keys: sorted_keys(b, &labels),
        labels,
        stop_at_first: true,
    };
    Ok(search.run() > 0)
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::super::testing::random_valid_graph;
    use super::super::{Edge, Tail};
    use super::*;
    use crate::arith::PhaseVector;
    use crate::lg::{parse_polynomial, GroupSpec, LgSpace};

    fn ph(k: i64) -> PhaseVector {
        PhaseVector::from_pairs(&[(k, 3)])
    }

    /// Every vertex permutation times every edge permutation, each pair
    /// checked directly.
    fn oracle(cm: &ContractionMap) -> u64 {
        let g = &cm.source;
        let vperms = permutations(g.vertex_count());
        let eperms = permutations(g.edge_count());
        let mut count = 0;
        for sv in &vperms {
            if (0..g.vertex_count()).any(|v| g.genera[sv[v]] != g.genera[v] || cm.vertex_map[sv[v]] != cm.vertex_map[v])
            {
                continue;
            }
            if g.tails.iter().any(|t| sv[t.vertex] != t.vertex) {
                continue;
            }
            for se in &eperms {
                let ok = (0..g.edge_count()).all(|e| {
                    let x = &g.edges[e];
                    let y = &g.edges[se[e]];
                    let same = sv[x.tail] == y.tail && sv[x.head] == y.head && x.decoration == y.decoration;
                    let flipped =
                        sv[x.tail] == y.head && sv[x.head] == y.tail && x.decoration == y.decoration.inverse();
                    let image_kept = match (cm.edge_map[e], cm.edge_map[se[e]]) {
                        (EdgeImage::Edge(p), EdgeImage::Edge(q)) => p == q,
                        (EdgeImage::Vertex(_), EdgeImage::Vertex(_)) => true,
                        _ => false,
                    };
                    (same || flipped) && image_kept
                });
                if ok {
                    count += 1;
                }
            }
        }
        count
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for i in 0..=p.len() {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }

    fn banana() -> DecoratedGraph {
        DecoratedGraph::new(
            vec![0, 0],
            vec![Edge::new(0, 1, ph(2)), Edge::new(0, 1, ph(2))],
            vec![Tail::new(0, ph(2)), Tail::new(1, ph(0))],
        )
    }

    #[test]
    fn rigid_identity() {
        let g = DecoratedGraph::new(vec![1, 0], vec![Edge::new(0, 1, ph(1))], vec![Tail::new(1, ph(1))]);
        assert_eq!(automorphism_order(&ContractionMap::identity(&g)), Ok(1));
    }

    #[test]
    fn banana_fully_contracted() {
        let (_, cm) = banana().contract_all().unwrap();
        assert_eq!(automorphism_order(&cm), Ok(2));
        assert_eq!(oracle(&cm), 2);
        assert_eq!(automorphism_order(&ContractionMap::identity(&banana())), Ok(1));
    }

    #[test]
    fn chain_of_distinct_genera() {
        let g = DecoratedGraph::new(vec![1, 2], vec![Edge::new(0, 1, ph(0))], vec![]);
        let (_, cm) = g.contract(0).unwrap();
        assert_eq!(automorphism_order(&cm), Ok(1));
        // Equal genera and a self-inverse decoration allow the swap.
        let h = DecoratedGraph::new(vec![1, 1], vec![Edge::new(0, 1, ph(0))], vec![]);
        let (_, cm) = h.contract(0).unwrap();
        assert_eq!(automorphism_order(&cm), Ok(2));
        assert_eq!(oracle(&cm), 2);
    }

    #[test]
    fn cap() {
        let g = DecoratedGraph::new(vec![2; 9], vec![], vec![]);
        assert!(matches!(
            automorphism_order(&ContractionMap::identity(&g)),
            Err(GraphError::SearchCapExceeded { .. })
        ));
    }

    #[test]
    fn isomorphism_detects_relabelling() {
        let a = DecoratedGraph::new(vec![0, 1], vec![Edge::new(0, 1, ph(1))], vec![Tail::new(0, ph(2))]);
        let b = DecoratedGraph::new(vec![1, 0], vec![Edge::new(1, 0, ph(1))], vec![Tail::new(1, ph(2))]);
        assert!(are_isomorphic(&a, &b).unwrap());
        let c = DecoratedGraph::new(vec![1, 0], vec![Edge::new(0, 1, ph(1))], vec![Tail::new(1, ph(2))]);
        assert!(!are_isomorphic(&a, &c).unwrap());
        assert!(!are_isomorphic(&a, &c.reverse_all()).unwrap());
        let d = DecoratedGraph::new(vec![1, 0], vec![Edge::new(0, 1, ph(2))], vec![Tail::new(1, ph(2))]);
        assert!(are_isomorphic(&a, &d).unwrap());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn matches_permutation_oracle(seed in any::<u64>(), mask in any::<u8>()) {
            let s = LgSpace::build(parse_polynomial("x1^3", 1).unwrap(), &GroupSpec::Aut).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut g = random_valid_graph(&mut rng, &s, 4, 5);
            // Drop tails so symmetric cases actually occur.
            if mask & 1 == 1 {
                g.tails.clear();
            }
            let set: Vec<usize> = (0..g.edge_count()).filter(|e| mask >> (e + 1) & 1 == 1).collect();
            let (_, cm) = g.contract_edges(&set).unwrap();
            prop_assert_eq!(automorphism_order(&cm).unwrap(), oracle(&cm));
        }
    }
}
