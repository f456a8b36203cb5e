use super::{DecoratedGraph, GraphError};

/// Where an edge of the source lands in the target.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeImage {
    Edge(usize),
    /// Contracted into this vertex.
    Vertex(usize),
}

/// A graph map `Γ → Γ'` obtained by contracting a set of edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionMap {
    pub source: DecoratedGraph,
    pub target: DecoratedGraph,
    pub vertex_map: Vec<usize>,
    pub edge_map: Vec<EdgeImage>,
    pub tail_map: Vec<usize>,
}

impl ContractionMap {
    pub fn identity(graph: &DecoratedGraph) -> Self {
        ContractionMap {
            source: graph.clone(),
            target: graph.clone(),
            vertex_map: (0..graph.vertex_count()).collect(),
            edge_map: (0..graph.edge_count()).map(EdgeImage::Edge).collect(),
            tail_map: (0..graph.tails.len()).collect(),
        }
    }

    /// `next ∘ self`; `next` must start where `self` ends.
    pub fn then(&self, next: &ContractionMap) -> ContractionMap {
        debug_assert_eq!(self.target, next.source);
        ContractionMap {
            source: self.source.clone(),
            target: next.target.clone(),
            vertex_map: self.vertex_map.iter().map(|&v| next.vertex_map[v]).collect(),
            edge_map: self
                .edge_map
                .iter()
                .map(|img| match *img {
                    EdgeImage::Edge(k) => next.edge_map[k],
                    EdgeImage::Vertex(w) => EdgeImage::Vertex(next.vertex_map[w]),
                })
                .collect(),
            tail_map: self.tail_map.iter().map(|&t| next.tail_map[t]).collect(),
        }
    }

    /// Source edges sent to vertices.
    pub fn contracted_edges(&self) -> Vec<usize> {
        self.edge_map
            .iter()
            .enumerate()
            .filter(|(_, img)| matches!(img, EdgeImage::Vertex(_)))
            .map(|(e, _)| e)
            .collect()
    }
}

impl DecoratedGraph {
    /// `Γ/e`. Distinct endpoints merge into the lower index with genus
    /// `g_{v⁻} + g_{v⁺}`; a loop raises its vertex's genus by one.
    pub fn contract(&self, e: usize) -> Result<(DecoratedGraph, ContractionMap), GraphError> {
        self.check_indices()?;
        let edge = self.edges.get(e).ok_or(GraphError::NoSuchEdge(e))?;
        let keep = edge.tail.min(edge.head);
        let drop = edge.tail.max(edge.head);
        let mut genera = self.genera.clone();
        let vertex_map: Vec<usize> = if keep == drop {
            genera[keep] += 1;
            (0..self.vertex_count()).collect()
        } else {
            genera[keep] += genera[drop];
            genera.remove(drop);
            (0..self.vertex_count())
                .map(|v| match v.cmp(&drop) {
                    std::cmp::Ordering::Less => v,
                    std::cmp::Ordering::Equal => keep,
                    std::cmp::Ordering::Greater => v - 1,
                })
                .collect()
        };
        let mut edges = Vec::with_capacity(self.edge_count() - 1);
        let mut edge_map = Vec::with_capacity(self.edge_count());
        for (k, other) in self.edges.iter().enumerate() {
            if k == e {
                edge_map.push(EdgeImage::Vertex(keep));
                continue;
            }
            edge_map.push(EdgeImage::Edge(edges.len()));
            let mut moved = other.clone();
            moved.tail = vertex_map[moved.tail];
            moved.head = vertex_map[moved.head];
            edges.push(moved);
        }
        let mut tails = self.tails.clone();
        for t in &mut tails {
            t.vertex = vertex_map[t.vertex];
        }
        let target = DecoratedGraph::new(genera, edges, tails);
        let map = ContractionMap {
            source: self.clone(),
            target: target.clone(),
            vertex_map,
            edge_map,
            tail_map: (0..self.tails.len()).collect(),
        };
        Ok((target, map))
    }

    /// Contracts the given source edges, in any order.
    pub fn contract_edges(&self, set: &[usize]) -> Result<(DecoratedGraph, ContractionMap), GraphError> {
        self.check_indices()?;
        if let Some(&bad) = set.iter().find(|&&e| e >= self.edge_count()) {
            return Err(GraphError::NoSuchEdge(bad));
        }
        let mut map = ContractionMap::identity(self);
        for &e in set {
            if let EdgeImage::Edge(current) = map.edge_map[e] {
                let (_, step) = map.target.contract(current)?;
                map = map.then(&step);
            }
        }
        Ok((map.target.clone(), map))
    }

    /// Contracts every edge.
    pub fn contract_all(&self) -> Result<(DecoratedGraph, ContractionMap), GraphError> {
        let all: Vec<usize> = (0..self.edge_count()).collect();
        self.contract_edges(&all)
    }
}
