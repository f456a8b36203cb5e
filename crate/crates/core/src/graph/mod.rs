//! Decorated dual graphs of spin curves.
//!
//! Each edge is stored directed with the monodromy `γ_e` at its head; the
//! tail side carries `γ_e^{-1}`, so the balanced-node condition holds by
//! construction.

mod aut;
mod contract;
mod stabilize;

pub use aut::{are_isomorphic, automorphism_order, SEARCH_MAX_EDGES, SEARCH_MAX_VERTICES};
pub use contract::{ContractionMap, EdgeImage};
pub use stabilize::{forget_tail, stabilize, SweepOrder};

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

use crate::arith::PhaseVector;
use crate::lg::LgSpace;
use crate::sectors::selection_rule_holds;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("no edge with index {0}")]
    NoSuchEdge(usize),
    #[error("no tail with index {0}")]
    NoSuchTail(usize),
    #[error("edge {edge} has an endpoint outside the vertex list")]
    BadEndpoint { edge: usize },
    #[error("tail {tail} is attached to a missing vertex")]
    BadTailVertex { tail: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("tail {tail} is decorated {found}, expected the grading element {expected}")]
    WrongDecoration {
        tail: usize,
        found: PhaseVector,
        expected: PhaseVector,
    },
    #[error("cannot smooth vertex {vertex}: inward decorations are not inverse")]
    StabilizationConflict { vertex: usize },
    #[error("vertex {vertex} is unstable and cannot be removed")]
    Unstabilizable { vertex: usize },
    #[error("automorphism search over {vertices} vertices and {edges} edges exceeds the cap")]
    SearchCapExceeded { vertices: usize, edges: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    /// `v⁻`
    pub tail: usize,
    /// `v⁺`
    pub head: usize,
    /// `γ_e`, the monodromy on the head side.
    pub decoration: PhaseVector,
}

impl Edge {
    pub fn new(tail: usize, head: usize, decoration: PhaseVector) -> Self {
        Edge { tail, head, decoration }
    }

    pub fn is_loop(&self) -> bool {
        self.tail == self.head
    }

    /// Same node with the opposite direction and inverse decoration.
    pub fn reversed(&self) -> Edge {
        Edge::new(self.head, self.tail, self.decoration.inverse())
    }

    pub fn other_end(&self, v: usize) -> usize {
        if self.tail == v {
            self.head
        } else {
            self.tail
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tail {
    pub vertex: usize,
    pub decoration: PhaseVector,
}

impl Tail {
    pub fn new(vertex: usize, decoration: PhaseVector) -> Self {
        Tail { vertex, decoration }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct DecoratedGraph {
    pub genera: Vec<u32>,
    pub edges: Vec<Edge>,
    pub tails: Vec<Tail>,
}

impl DecoratedGraph {
    pub fn new(genera: Vec<u32>, edges: Vec<Edge>, tails: Vec<Tail>) -> Self {
        DecoratedGraph { genera, edges, tails }
    }

    pub fn vertex_count(&self) -> usize {
        self.genera.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn check_indices(&self) -> Result<(), GraphError> {
        let v = self.vertex_count();
        if let Some(edge) = self.edges.iter().position(|e| e.tail >= v || e.head >= v) {
            return Err(GraphError::BadEndpoint { edge });
        }
        if let Some(tail) = self.tails.iter().position(|t| t.vertex >= v) {
            return Err(GraphError::BadTailVertex { tail });
        }
        Ok(())
    }

    /// Edge ends at `v`; a loop counts twice.
    pub fn edge_ends(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|e| usize::from(e.tail == v) + usize::from(e.head == v))
            .sum()
    }

    pub fn tails_at(&self, v: usize) -> usize {
        self.tails.iter().filter(|t| t.vertex == v).count()
    }

    /// Edge ends plus tails.
    pub fn valence(&self, v: usize) -> usize {
        self.edge_ends(v) + self.tails_at(v)
    }

    /// Monodromies at the special points of the component `v`: its tails in
    /// order, then for each incident edge `γ_e` on the head side and
    /// `γ_e^{-1}` on the tail side.
    pub fn local_phases(&self, v: usize) -> Vec<PhaseVector> {
        let mut out: Vec<PhaseVector> = self
            .tails
            .iter()
            .filter(|t| t.vertex == v)
            .map(|t| t.decoration.clone())
            .collect();
        for e in &self.edges {
            if e.tail == v {
                out.push(e.decoration.inverse());
            }
            if e.head == v {
                out.push(e.decoration.clone());
            }
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return true;
        }
        let mut adj = vec![Vec::new(); n];
        for e in &self.edges {
            adj[e.tail].push(e.head);
            adj[e.head].push(e.tail);
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for &u in &adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// `Σ_v g_v + b₁(Γ)`.
    pub fn total_genus(&self) -> Result<u32, GraphError> {
        self.check_indices()?;
        if !self.is_connected() {
            return Err(GraphError::Disconnected);
        }
        if self.vertex_count() == 0 {
            return Ok(0);
        }
        let betti = self.edge_count() + 1 - self.vertex_count();
        Ok(self.genera.iter().sum::<u32>() + betti as u32)
    }

    /// Cuts every edge into a pair of tails decorated `γ_e^{-1}` at `v⁻` and
    /// `γ_e` at `v⁺`, appended after the original tails.
    pub fn split(&self) -> DecoratedGraph {
        let mut tails = self.tails.clone();
        for e in &self.edges {
            tails.push(Tail::new(e.tail, e.decoration.inverse()));
            tails.push(Tail::new(e.head, e.decoration.clone()));
        }
        DecoratedGraph::new(self.genera.clone(), Vec::new(), tails)
    }

    pub fn reverse(&self, e: usize) -> Result<DecoratedGraph, GraphError> {
        if e >= self.edge_count() {
            return Err(GraphError::NoSuchEdge(e));
        }
        let mut out = self.clone();
        out.edges[e] = self.edges[e].reversed();
        Ok(out)
    }

    pub fn reverse_all(&self) -> DecoratedGraph {
        let mut out = self.clone();
        out.edges = self.edges.iter().map(Edge::reversed).collect();
        out
    }

    /// Orients every edge so that its decoration is lexicographically no
    /// larger than its inverse; self-inverse edges point from the lower vertex
    /// index to the higher.
    pub fn canonical_form(&self) -> DecoratedGraph {
        let mut out = self.clone();
        for e in &mut out.edges {
            let inv = e.decoration.inverse();
            let flip = match inv.lex_cmp(&e.decoration) {
                std::cmp::Ordering::Less => true,
                std::cmp::Ordering::Equal => e.tail > e.head,
                std::cmp::Ordering::Greater => false,
            };
            if flip {
                *e = e.reversed();
            }
        }
        out
    }
}

impl fmt::Display for DecoratedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "vertices {:?}", self.genera)?;
        for e in &self.edges {
            write!(f, "; {}->{} {}", e.tail, e.head, e.decoration)?;
        }
        for t in &self.tails {
            write!(f, "; tail@{} {}", t.vertex, t.decoration)?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Location {
    Edge(usize),
    Tail(usize),
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Edge(i) => write!(f, "edge {i}"),
            Location::Tail(i) => write!(f, "tail {i}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("edge {edge} has an endpoint outside the vertex list")]
    BadEndpoint { edge: usize },
    #[error("tail {tail} is attached to a missing vertex")]
    BadTailVertex { tail: usize },
    #[error("{location}: decoration has the wrong dimension")]
    WrongDimension { location: Location },
    #[error("{location}: decoration is not in the group")]
    NotInGroup { location: Location },
    #[error("vertex {vertex} is unstable")]
    Unstable { vertex: usize },
    #[error("vertex {vertex} fails the local selection rule")]
    NotAdmissible { vertex: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("total genus is {found}, expected {expected}")]
    GenusMismatch { expected: u32, found: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks indices, group membership, stability `2g_v − 2 + val(v) > 0` and
/// the selection rule at every vertex, plus connectedness when a total
/// genus is requested.
pub fn validate(graph: &DecoratedGraph, space: &LgSpace, total_genus: Option<u32>) -> ValidationReport {
    let mut violations = Vec::new();
    let v = graph.vertex_count();
    for (edge, e) in graph.edges.iter().enumerate() {
        if e.tail >= v || e.head >= v {
            violations.push(Violation::BadEndpoint { edge });
        }
    }
    for (tail, t) in graph.tails.iter().enumerate() {
        if t.vertex >= v {
            violations.push(Violation::BadTailVertex { tail });
        }
    }
    let decorations = graph
        .edges
        .iter()
        .enumerate()
        .map(|(i, e)| (Location::Edge(i), &e.decoration))
        .chain(
            graph
                .tails
                .iter()
                .enumerate()
                .map(|(i, t)| (Location::Tail(i), &t.decoration)),
        );
    for (location, d) in decorations {
        if d.dim() != space.n() {
            violations.push(Violation::WrongDimension { location });
        } else if !space.group().contains(d) {
            violations.push(Violation::NotInGroup { location });
        }
    }
    if !violations.is_empty() {
        return ValidationReport { violations };
    }
    for (vertex, &g) in graph.genera.iter().enumerate() {
        if 2 * g as usize + graph.valence(vertex) <= 2 {
            violations.push(Violation::Unstable { vertex });
        }
        if !selection_rule_holds(space, g, &graph.local_phases(vertex)) {
            violations.push(Violation::NotAdmissible { vertex });
        }
    }
    if let Some(expected) = total_genus {
        match graph.total_genus() {
            Ok(found) if found != expected => violations.push(Violation::GenusMismatch { expected, found }),
            Ok(_) => {}
            Err(_) => violations.push(Violation::Disconnected),
        }
    }
    ValidationReport { violations }
}

#[cfg(test)]
pub(crate) mod testing {
    use rand::Rng;

    use super::*;

    /// A random connected stable graph over `space` whose vertices all
    /// satisfy the selection rule; a last tail at each vertex absorbs the
    /// residual monodromy.
    pub fn random_valid_graph<R: Rng>(
        rng: &mut R,
        space: &LgSpace,
        max_vertices: usize,
        max_edges: usize,
    ) -> DecoratedGraph {
        let elements: Vec<PhaseVector> = space.group().iter().collect();
        let pick = |rng: &mut R| elements[rng.gen_range(0..elements.len())].clone();
        let nv = rng.gen_range(1..=max_vertices);
        let genera: Vec<u32> = (0..nv).map(|_| if rng.gen_bool(0.3) { 1 } else { 0 }).collect();
        let mut edges = Vec::new();
        for v in 1..nv {
            let u = rng.gen_range(0..v);
            let (a, b) = if rng.gen_bool(0.5) { (u, v) } else { (v, u) };
            edges.push(Edge::new(a, b, pick(rng)));
        }
        let extra = rng.gen_range(0..=max_edges.saturating_sub(edges.len()));
        for _ in 0..extra {
            let a = rng.gen_range(0..nv);
            let b = rng.gen_range(0..nv);
            edges.push(Edge::new(a, b, pick(rng)));
        }
        let mut graph = DecoratedGraph::new(genera, edges, Vec::new());
        for v in 0..nv {
            while 2 * graph.genera[v] as usize + graph.valence(v) < 2 {
                graph.tails.push(Tail::new(v, pick(rng)));
            }
            let mut local = graph.local_phases(v);
            let target = PhaseVector::from_rationals(crate::sectors::line_bundle_degrees(
                space,
                graph.genera[v],
                local.len() + 1,
            ));
            let sum = local
                .drain(..)
                .fold(PhaseVector::identity(space.n()), |acc, p| acc.add(&p));
            graph.tails.push(Tail::new(v, target.add(&sum.inverse())));
        }
        graph
    }
}
