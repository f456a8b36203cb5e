use crate::lg::LgSpace;

use super::{DecoratedGraph, Edge, GraphError};

/// Which unstable vertex to treat first. The result does not depend on it up
/// to isomorphism; `LowestFirst` is the default.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SweepOrder {
    #[default]
    LowestFirst,
    HighestFirst,
}

/// Removes tail `i`, which must carry the grading element, then stabilizes.
pub fn forget_tail(graph: &DecoratedGraph, i: usize, space: &LgSpace) -> Result<DecoratedGraph, GraphError> {
    graph.check_indices()?;
    let tail = graph.tails.get(i).ok_or(GraphError::NoSuchTail(i))?;
    let j = space.j_element();
    if tail.decoration != j {
        return Err(GraphError::WrongDecoration {
            tail: i,
            found: tail.decoration.clone(),
            expected: j,
        });
    }
    let mut out = graph.clone();
    out.tails.remove(i);
    stabilize(&out, SweepOrder::default())
}

/// Repeatedly removes genus-0 vertices with at most two special points:
/// one edge end is contracted away, an edge end and a tail contract so the
/// tail migrates, and two edge ends are smoothed into a single edge.
pub fn stabilize(graph: &DecoratedGraph, order: SweepOrder) -> Result<DecoratedGraph, GraphError> {
    graph.check_indices()?;
    let mut g = graph.clone();
    loop {
        let mut unstable = (0..g.vertex_count()).filter(|&v| g.genera[v] == 0 && g.valence(v) <= 2);
        let next = match order {
            SweepOrder::LowestFirst => unstable.next(),
            SweepOrder::HighestFirst => unstable.next_back(),
        };
        let Some(v) = next else {
            return Ok(g);
        };
        let incident: Vec<usize> = (0..g.edge_count())
            .filter(|&e| g.edges[e].tail == v || g.edges[e].head == v)
            .collect();
        g = match incident.as_slice() {
            [e] if !g.edges[*e].is_loop() => g.contract(*e)?.0,
            [e1, e2] if g.tails_at(v) == 0 => smooth(&g, v, *e1, *e2)?,
            [e] if g.edges[*e].is_loop() => return Err(GraphError::StabilizationConflict { vertex: v }),
            _ => return Err(GraphError::Unstabilizable { vertex: v }),
        };
    }
}

/// Replaces `e1`, `e2` through the bivalent vertex `v` with one edge.
fn smooth(g: &DecoratedGraph, v: usize, e1: usize, e2: usize) -> Result<DecoratedGraph, GraphError> {
    let inward = |e: &Edge| {
        if e.head == v {
            e.decoration.clone()
        } else {
            e.decoration.inverse()
        }
    };
    let (a, b) = (&g.edges[e1], &g.edges[e2]);
    let (h1, h2) = (inward(a), inward(b));
    if !h1.add(&h2).is_identity() {
        return Err(GraphError::StabilizationConflict { vertex: v });
    }
    let merged = Edge::new(a.other_end(v), b.other_end(v), h1);
    let mut out = g.clone();
    out.edges[e1] = merged;
    out.edges.remove(e2);
    out.genera.remove(v);
    let shift = |u: usize| if u > v { u - 1 } else { u };
    for e in &mut out.edges {
        e.tail = shift(e.tail);
        e.head = shift(e.head);
    }
    for t in &mut out.tails {
        t.vertex = shift(t.vertex);
    }
    Ok(out)
}
