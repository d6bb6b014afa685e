//! Reduction of genus-0 AB-graphs to disjoint chains, tracking the effective
//! triangle count of the intermediate "generalized" graphs.
//!
//! A generalized graph may contain A-vertices of valence 2. Its ET is
//! `2E + Σ_A c(val) + Σ_B d(val)` with `c = [0, 4, 8, 0]` and `d = [0, 6, 0]`,
//! which agrees with `2n + 4a2 + 6b2` on graphs coming from dessins.

use serde::Serialize;

use super::Dessin;
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum VertexKind {
    A,
    B,
}

#[derive(Clone, Debug)]
struct Vertex {
    kind: VertexKind,
    /// Incident edges in rotation order.
    edges: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct GenGraph {
    vertices: Vec<Vertex>,
    /// `(a, b)` endpoints; `None` once removed.
    edges: Vec<Option<(usize, usize)>>,
    genus: usize,
    et: i64,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MoveKind {
    ClipTree,
    RemoveB2,
    SplitA6,
}

#[derive(Clone, Debug, Serialize)]
pub struct Move {
    pub kind: MoveKind,
    /// Vertex the move is anchored at (attachment vertex, removed B-vertex, split A-vertex).
    pub vertex: String,
    pub edges_removed: usize,
    pub delta: i64,
    pub et_after: i64,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ChainKind {
    Path,
    Cycle,
    Point,
}

#[derive(Clone, Debug, Serialize)]
pub struct Chain {
    pub kind: ChainKind,
    pub edges: usize,
    pub et: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReductionTrace {
    pub initial_et: i64,
    pub moves: Vec<Move>,
    pub chains: Vec<Chain>,
    pub final_et: i64,
    /// Set if some move changed ET by a non-multiple of 12 or some chain has
    /// ET not divisible by 12.
    pub flagged: bool,
}

fn a_cost(val: usize) -> i64 {
    match val {
        1 => 4,
        2 => 8,
        _ => 0,
    }
}

fn b_cost(val: usize) -> i64 {
    if val == 1 {
        6
    } else {
        0
    }
}

impl GenGraph {
    pub fn from_dessin(d: &Dessin) -> Self {
        let ab = d.ab_graph();
        let mut vertices = Vec::new();
        for c in &ab.a_vertices {
            vertices.push(Vertex {
                kind: VertexKind::A,
                edges: c.clone(),
            });
        }
        let na = vertices.len();
        for c in &ab.b_vertices {
            vertices.push(Vertex {
                kind: VertexKind::B,
                edges: c.clone(),
            });
        }
        let edges = ab.edges.iter().map(|&(a, b)| Some((a, na + b))).collect();
        let mut g = GenGraph {
            vertices,
            edges,
            genus: d.genus(),
            et: 0,
        };
        g.et = g.recompute_et();
        g
    }

    pub fn et(&self) -> i64 {
        self.et
    }

    fn valence(&self, v: usize) -> usize {
        self.vertices[v].edges.len()
    }

    fn cost(&self, v: usize) -> i64 {
        match self.vertices[v].kind {
            VertexKind::A => a_cost(self.valence(v)),
            VertexKind::B => b_cost(self.valence(v)),
        }
    }

    pub fn recompute_et(&self) -> i64 {
        let e = self.edges.iter().flatten().count() as i64;
        2 * e + (0..self.vertices.len()).map(|v| self.cost(v)).sum::<i64>()
    }

    fn name(&self, v: usize) -> String {
        let first_b = self
            .vertices
            .iter()
            .position(|x| x.kind == VertexKind::B)
            .unwrap_or(self.vertices.len());
        match self.vertices[v].kind {
            VertexKind::A => format!("A{v}"),
            VertexKind::B => format!("B{}", v - first_b),
        }
    }

    fn other_end(&self, e: usize, v: usize) -> usize {
        let (a, b) = self.edges[e].expect("live edge");
        if a == v {
            b
        } else {
            a
        }
    }

    /// Removes edges and returns the ET change, computed locally.
    fn remove_edges(&mut self, es: &[usize]) -> i64 {
        let mut touched: Vec<usize> = es
            .iter()
            .flat_map(|&e| {
                let (a, b) = self.edges[e].expect("live edge");
                [a, b]
            })
            .collect();
        touched.sort_unstable();
        touched.dedup();
        let before: i64 = touched.iter().map(|&v| self.cost(v)).sum();
        for &e in es {
            let (a, b) = self.edges[e].take().expect("live edge");
            self.vertices[a].edges.retain(|&x| x != e);
            self.vertices[b].edges.retain(|&x| x != e);
        }
        let after: i64 = touched.iter().map(|&v| self.cost(v)).sum();
        after - before - 2 * es.len() as i64
    }

    fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertices.len();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX || self.valence(s) == 0 {
                continue;
            }
            let id = out.len();
            let mut stack = vec![s];
            comp[s] = id;
            let mut members = Vec::new();
            while let Some(v) = stack.pop() {
                members.push(v);
                for &e in &self.vertices[v].edges {
                    let w = self.other_end(e, v);
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        stack.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Vertices of the 2-core of the whole graph (leaf peeling).
    fn core_mask(&self) -> Vec<bool> {
        let n = self.vertices.len();
        let mut deg: Vec<usize> = (0..n).map(|v| self.valence(v)).collect();
        let mut alive: Vec<bool> = deg.iter().map(|&d| d > 0).collect();
        let mut stack: Vec<usize> = (0..n).filter(|&v| deg[v] == 1).collect();
        while let Some(v) = stack.pop() {
            if !alive[v] {
                continue;
            }
            alive[v] = false;
            for &e in &self.vertices[v].edges {
                let w = self.other_end(e, v);
                if alive[w] {
                    deg[w] -= 1;
                    if deg[w] <= 1 {
                        stack.push(w);
                    }
                }
            }
        }
        alive
    }

    /// Edges of the tree hanging off `root` through edge `first`.
    fn pendant_edges(&self, root: usize, first: usize) -> Vec<usize> {
        let mut out = vec![first];
        let mut stack = vec![(self.other_end(first, root), first)];
        while let Some((v, via)) = stack.pop() {
            for &e in &self.vertices[v].edges {
                if e != via {
                    out.push(e);
                    stack.push((self.other_end(e, v), e));
                }
            }
        }
        out
    }
}

fn chain_of(g: &GenGraph, members: &[usize]) -> Option<Chain> {
    if members.iter().any(|&v| g.valence(v) > 2) {
        return None;
    }
    let mut edges: Vec<usize> = members
        .iter()
        .flat_map(|&v| g.vertices[v].edges.iter().copied())
        .collect();
    edges.sort_unstable();
    edges.dedup();
    let et = 2 * edges.len() as i64 + members.iter().map(|&v| g.cost(v)).sum::<i64>();
    let kind = if edges.is_empty() {
        ChainKind::Point
    } else if edges.len() == members.len() {
        ChainKind::Cycle
    } else {
        ChainKind::Path
    };
    Some(Chain {
        kind,
        edges: edges.len(),
        et,
    })
}

/// Applies clip-tree, remove-B2 and split-A6 moves until every component is
/// a chain. Each recorded delta is checked against a full recomputation.
pub fn reduce_graph(g: &GenGraph) -> Result<ReductionTrace> {
    if g.genus > 0 {
        return Err(Error::Unsupported(format!(
            "graph reduction needs genus 0, got genus {}",
            g.genus
        )));
    }
    let mut g = g.clone();
    let initial_et = g.et;
    let mut moves = Vec::new();
    let mut flagged = false;

    let mut record = |g: &mut GenGraph, kind, vertex: usize, removed: &[usize]| -> Result<()> {
        let name = g.name(vertex);
        let delta = g.remove_edges(removed);
        g.et += delta;
        if g.et != g.recompute_et() {
            return Err(Error::Invariant(format!(
                "ET bookkeeping drifted after {kind:?} at {name}"
            )));
        }
        flagged |= delta % 12 != 0;
        moves.push(Move {
            kind,
            vertex: name,
            edges_removed: removed.len(),
            delta,
            et_after: g.et,
        });
        Ok(())
    };

    loop {
        let comps = g.components();
        let core = g.core_mask();

        // Pendant trees of components that contain a cycle.
        let mut clipped = false;
        for comp in &comps {
            if !comp.iter().any(|&v| core[v]) {
                continue;
            }
            for &v in comp {
                if !core[v] {
                    continue;
                }
                let hanging: Vec<usize> = g.vertices[v]
                    .edges
                    .iter()
                    .copied()
                    .filter(|&e| !core[g.other_end(e, v)])
                    .collect();
                for e in hanging {
                    let tree = g.pendant_edges(v, e);
                    record(&mut g, MoveKind::ClipTree, v, &tree)?;
                    clipped = true;
                }
            }
        }
        if clipped {
            continue;
        }

        let comps = g.components();
        let mut acted = false;
        for comp in &comps {
            let has_a3 = comp
                .iter()
                .any(|&v| g.vertices[v].kind == VertexKind::A && g.valence(v) == 3);
            if !has_a3 {
                continue;
            }
            let leaf_b = comp
                .iter()
                .copied()
                .find(|&v| g.vertices[v].kind == VertexKind::B && g.valence(v) == 1);
            if let Some(b) = leaf_b {
                let e = g.vertices[b].edges[0];
                record(&mut g, MoveKind::RemoveB2, b, &[e])?;
            } else {
                let a = comp
                    .iter()
                    .copied()
                    .find(|&v| g.vertices[v].kind == VertexKind::A && g.valence(v) == 3)
                    .unwrap();
                let es = g.vertices[a].edges.clone();
                record(&mut g, MoveKind::SplitA6, a, &es[1..])?;
            }
            acted = true;
            break;
        }
        if !acted {
            break;
        }
    }

    let mut chains = Vec::new();
    for comp in g.components() {
        let chain = chain_of(&g, &comp).ok_or_else(|| {
            Error::Invariant("reduction stopped at a non-chain component".into())
        })?;
        flagged |= chain.et % 12 != 0;
        chains.push(chain);
    }
    Ok(ReductionTrace {
        initial_et,
        moves,
        chains,
        final_et: g.et,
        flagged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge_is_terminal() {
        let t = reduce_graph(&GenGraph::from_dessin(&Dessin::trivial())).unwrap();
        assert!(t.moves.is_empty());
        assert_eq!(t.chains.len(), 1);
        assert_eq!(t.chains[0].et, 12);
        assert!(!t.flagged);
    }

    #[test]
    fn theta_graph_reduces() {
        let d = Dessin::from_cycles(6, &[vec![1, 4], vec![2, 6], vec![3, 5]], &[vec![1, 2, 3], vec![4, 5, 6]])
            .unwrap();
        let g = GenGraph::from_dessin(&d);
        assert_eq!(g.et(), 12);
        let t = reduce_graph(&g).unwrap();
        assert!(!t.moves.is_empty());
        assert!(t.moves.iter().all(|m| m.delta % 12 == 0));
        assert!(t.chains.iter().all(|c| c.kind != ChainKind::Point || c.et == 0));
        assert!(!t.flagged);
    }

    #[test]
    fn star_with_three_b2() {
        let d = Dessin::from_cycles(3, &[], &[vec![1, 2, 3]]).unwrap();
        let t = reduce_graph(&GenGraph::from_dessin(&d)).unwrap();
        assert_eq!(t.initial_et, 24);
        assert_eq!(t.moves[0].kind, MoveKind::RemoveB2);
        assert_eq!(t.final_et, t.chains.iter().map(|c| c.et).sum::<i64>());
    }

    #[test]
    fn positive_genus_rejected() {
        // Index 6 torus: s3 = (1 2 3)(4 5 6), s2 = (1 4)(2 5)(3 6) has one cusp.
        let d = Dessin::from_cycles(6, &[vec![1, 4], vec![2, 5], vec![3, 6]], &[vec![1, 2, 3], vec![4, 5, 6]])
            .unwrap();
        assert_eq!(d.genus(), 1);
        assert!(matches!(
            reduce_graph(&GenGraph::from_dessin(&d)),
            Err(Error::Unsupported(_))
        ));
    }
}
