//! Transitive permutation pairs `(s2, s3)` with `s2² = s3³ = 1`.
//!
//! Points are stored 0-indexed; the text and JSON formats are 1-indexed with
//! fixed points omitted. Cusps are the cycles of `s2 ∘ s3` (apply `s3`
//! first). Marked points are numbered in a fixed order: `a2:i` runs over the
//! fixed points of `s3`, `b2:i` over the fixed points of `s2`, `cusp:i` over
//! the cusp cycles, each sorted by smallest point.

mod reduce;

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use reduce::{reduce_graph, Chain, ChainKind, GenGraph, Move, MoveKind, ReductionTrace};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Dessin {
    s2: Vec<usize>,
    s3: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct DessinText {
    n: usize,
    #[serde(default)]
    s2: Vec<Vec<usize>>,
    #[serde(default)]
    s3: Vec<Vec<usize>>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct VertexCensus {
    pub n: usize,
    pub a2: usize,
    pub a6: usize,
    pub b2: usize,
    pub b4: usize,
    /// Widths in cusp order (`cusp:0`, `cusp:1`, ...).
    pub cusp_widths: Vec<usize>,
    pub genus: usize,
}

impl VertexCensus {
    pub fn cusps(&self) -> usize {
        self.cusp_widths.len()
    }

    pub fn vertices(&self) -> usize {
        self.a2 + self.a6 + self.b2 + self.b4 + self.cusps()
    }

    pub fn cdf(&self) -> usize {
        2 * self.a2 + 3 * self.b2
    }

    pub fn et(&self) -> usize {
        2 * self.n + 2 * self.cdf()
    }

    /// Number of marked points `a2 + b2 + #cusps`.
    pub fn marked(&self) -> usize {
        self.a2 + self.b2 + self.cusps()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.a2 == 0 && self.b2 == 0
    }

    pub fn sorted_widths(&self) -> Vec<usize> {
        let mut w = self.cusp_widths.clone();
        w.sort_unstable_by(|a, b| b.cmp(a));
        w
    }
}

fn cycles_of(perm: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut cyc = Vec::new();
        let mut p = start;
        while !seen[p] {
            seen[p] = true;
            cyc.push(p);
            p = perm[p];
        }
        out.push(cyc);
    }
    out
}

impl Dessin {
    /// Builds and validates a dessin from 0-indexed permutation images.
    pub fn new(s2: Vec<usize>, s3: Vec<usize>) -> Result<Self> {
        let n = s2.len();
        if n == 0 {
            return Err(Error::Malformed("dessin needs at least one point".into()));
        }
        if s3.len() != n {
            return Err(Error::Malformed("s2 and s3 act on different sets".into()));
        }
        for perm in [&s2, &s3] {
            let mut hit = vec![false; n];
            for &x in perm.iter() {
                if x >= n || hit[x] {
                    return Err(Error::Malformed("not a permutation".into()));
                }
                hit[x] = true;
            }
        }
        if (0..n).any(|p| s2[s2[p]] != p) {
            return Err(Error::Malformed("not an involution".into()));
        }
        if (0..n).any(|p| s3[s3[s3[p]]] != p) {
            return Err(Error::Malformed("not order 3".into()));
        }
        let d = Dessin { s2, s3 };
        if d.bfs_order(0).len() != n {
            return Err(Error::Malformed("disconnected dessin".into()));
        }
        Ok(d)
    }

    /// Builds a dessin from 1-indexed cycles; omitted points are fixed.
    pub fn from_cycles(n: usize, s2: &[Vec<usize>], s3: &[Vec<usize>]) -> Result<Self> {
        let build = |cycles: &[Vec<usize>], name: &str| -> Result<Vec<usize>> {
            let mut perm: Vec<usize> = (0..n).collect();
            let mut used = vec![false; n];
            for cyc in cycles {
                for (i, &x) in cyc.iter().enumerate() {
                    if x == 0 || x > n {
                        return Err(Error::Parse(format!("{name}: point {x} out of range 1..{n}")));
                    }
                    if used[x - 1] {
                        return Err(Error::Parse(format!("{name}: point {x} repeated")));
                    }
                    used[x - 1] = true;
                    perm[x - 1] = cyc[(i + 1) % cyc.len()] - 1;
                }
            }
            Ok(perm)
        };
        let p2 = build(s2, "s2")?;
        let p3 = build(s3, "s3")?;
        Dessin::new(p2, p3)
    }

    /// The index-one dessin of the full modular group.
    pub fn trivial() -> Self {
        Dessin {
            s2: vec![0],
            s3: vec![0],
        }
    }

    pub fn n(&self) -> usize {
        self.s2.len()
    }

    pub fn s2(&self, p: usize) -> usize {
        self.s2[p]
    }

    pub fn s3(&self, p: usize) -> usize {
        self.s3[p]
    }

    pub fn s3_inv(&self, p: usize) -> usize {
        self.s3[self.s3[p]]
    }

    pub fn s2_perm(&self) -> &[usize] {
        &self.s2
    }

    pub fn s3_perm(&self) -> &[usize] {
        &self.s3
    }

    /// The cusp permutation `p ↦ s2(s3(p))`.
    pub fn cusp_perm(&self) -> Vec<usize> {
        (0..self.n()).map(|p| self.s2[self.s3[p]]).collect()
    }

    pub fn s2_cycles(&self) -> Vec<Vec<usize>> {
        cycles_of(&self.s2)
    }

    pub fn s3_cycles(&self) -> Vec<Vec<usize>> {
        cycles_of(&self.s3)
    }

    /// Cusp cycles, each starting at its smallest point, sorted by that point.
    pub fn cusp_cycles(&self) -> Vec<Vec<usize>> {
        cycles_of(&self.cusp_perm())
    }

    pub fn a2_points(&self) -> Vec<usize> {
        (0..self.n()).filter(|&p| self.s3[p] == p).collect()
    }

    pub fn b2_points(&self) -> Vec<usize> {
        (0..self.n()).filter(|&p| self.s2[p] == p).collect()
    }

    /// Index of the cusp cycle containing each point.
    pub fn cusp_of(&self) -> Vec<usize> {
        let mut owner = vec![0; self.n()];
        for (i, cyc) in self.cusp_cycles().iter().enumerate() {
            for &p in cyc {
                owner[p] = i;
            }
        }
        owner
    }

    pub fn census(&self) -> VertexCensus {
        let n = self.n();
        let a2 = self.a2_points().len();
        let b2 = self.b2_points().len();
        let cusp_widths: Vec<usize> = self.cusp_cycles().iter().map(Vec::len).collect();
        let v = a2 + (n - a2) / 3 + b2 + (n - b2) / 2 + cusp_widths.len();
        let twice = 2 + n - v;
        debug_assert!(twice % 2 == 0 && 2 + n >= v);
        VertexCensus {
            n,
            a2,
            a6: (n - a2) / 3,
            b2,
            b4: (n - b2) / 2,
            cusp_widths,
            genus: twice / 2,
        }
    }

    pub fn genus(&self) -> usize {
        self.census().genus
    }

    pub fn cdf(&self) -> usize {
        self.census().cdf()
    }

    pub fn et(&self) -> usize {
        self.census().et()
    }

    /// Conjugate by `perm`: point `p` is renamed `perm[p]`.
    pub fn relabel(&self, perm: &[usize]) -> Dessin {
        let n = self.n();
        let mut s2 = vec![0; n];
        let mut s3 = vec![0; n];
        for p in 0..n {
            s2[perm[p]] = perm[self.s2[p]];
            s3[perm[p]] = perm[self.s3[p]];
        }
        Dessin { s2, s3 }
    }

    /// Points in breadth-first order from `start`, following `s2` then `s3`.
    fn bfs_order(&self, start: usize) -> Vec<usize> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut order = vec![start];
        seen[start] = true;
        let mut i = 0;
        while i < order.len() {
            let p = order[i];
            for q in [self.s2[p], self.s3[p]] {
                if !seen[q] {
                    seen[q] = true;
                    order.push(q);
                }
            }
            i += 1;
        }
        order
    }

    /// Transition table of the relabeling that numbers points in breadth-first
    /// order from `start`: entries `s2(i), s3(i)` for each new label `i`.
    pub(crate) fn bfs_table(&self, start: usize) -> Vec<u16> {
        let order = self.bfs_order(start);
        let mut label = vec![0u16; self.n()];
        for (i, &p) in order.iter().enumerate() {
            label[p] = i as u16;
        }
        let mut table = Vec::with_capacity(2 * self.n());
        for &p in &order {
            table.push(label[self.s2[p]]);
            table.push(label[self.s3[p]]);
        }
        table
    }

    fn min_table(&self) -> (Vec<u16>, usize) {
        let mut best = self.bfs_table(0);
        let mut best_start = 0;
        for s in 1..self.n() {
            let t = self.bfs_table(s);
            if t < best {
                best = t;
                best_start = s;
            }
        }
        (best, best_start)
    }

    /// Isomorphism-invariant key: the least breadth-first transition table
    /// over all start points, as big-endian `u16` pairs.
    pub fn canonical_key(&self) -> Vec<u8> {
        table_bytes(&self.min_table().0)
    }

    /// The representative whose own table is the canonical one.
    pub fn canonical_form(&self) -> Dessin {
        let (_, start) = self.min_table();
        let order = self.bfs_order(start);
        let mut perm = vec![0; self.n()];
        for (i, &p) in order.iter().enumerate() {
            perm[p] = i;
        }
        self.relabel(&perm)
    }

    /// Number of relabelings fixing the dessin (the order of `N(Γ)/Γ`).
    pub fn automorphism_count(&self) -> usize {
        let (best, _) = self.min_table();
        (0..self.n()).filter(|&s| self.bfs_table(s) == best).count()
    }

    pub fn is_isomorphic(&self, other: &Dessin) -> bool {
        self.n() == other.n() && self.canonical_key() == other.canonical_key()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let cyc = |perm: &[usize]| -> Vec<Vec<usize>> {
            cycles_of(perm)
                .into_iter()
                .filter(|c| c.len() > 1)
                .map(|c| c.into_iter().map(|p| p + 1).collect())
                .collect()
        };
        serde_json::json!({"n": self.n(), "s2": cyc(&self.s2), "s3": cyc(&self.s3)})
    }

    pub fn ab_graph(&self) -> AbGraph {
        let a_vertices = self.s3_cycles();
        let b_vertices = self.s2_cycles();
        let mut ends = vec![(0, 0); self.n()];
        for (i, c) in a_vertices.iter().enumerate() {
            for &p in c {
                ends[p].0 = i;
            }
        }
        for (i, c) in b_vertices.iter().enumerate() {
            for &p in c {
                ends[p].1 = i;
            }
        }
        let faces = self.cusp_cycles();
        AbGraph {
            a_vertices,
            b_vertices,
            edges: ends,
            faces,
        }
    }

    pub fn to_dot(&self) -> String {
        self.ab_graph().to_dot()
    }
}

fn table_bytes(t: &[u16]) -> Vec<u8> {
    t.iter().flat_map(|x| x.to_be_bytes()).collect()
}

impl Serialize for Dessin {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Dessin {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let t = DessinText::deserialize(d)?;
        Dessin::from_cycles(t.n, &t.s2, &t.s3).map_err(serde::de::Error::custom)
    }
}

/// Parses the JSON cycle format, e.g.
/// `{"n": 6, "s2": [[1,4],[2,6],[3,5]], "s3": [[1,2,3],[4,5,6]]}`.
pub fn parse_dessin(text: &str) -> Result<Dessin> {
    let t: DessinText =
        serde_json::from_str(text.trim()).map_err(|e| Error::Parse(format!("dessin: {e}")))?;
    Dessin::from_cycles(t.n, &t.s2, &t.s3)
}

pub fn census(d: &Dessin) -> VertexCensus {
    d.census()
}

pub fn et(d: &Dessin) -> usize {
    d.et()
}

pub fn cdf(d: &Dessin) -> usize {
    d.cdf()
}

pub fn canonical_key(d: &Dessin) -> Vec<u8> {
    d.canonical_key()
}

pub fn is_isomorphic(d1: &Dessin, d2: &Dessin) -> bool {
    d1.is_isomorphic(d2)
}

pub fn ab_graph(d: &Dessin) -> AbGraph {
    d.ab_graph()
}

/// The bipartite ribbon graph left after deleting the cusp vertices.
///
/// Edge `p` joins A-vertex `edges[p].0` to B-vertex `edges[p].1`. The cyclic
/// edge order at each vertex is its listed cycle.
#[derive(Clone, Debug, Serialize)]
pub struct AbGraph {
    pub a_vertices: Vec<Vec<usize>>,
    pub b_vertices: Vec<Vec<usize>>,
    pub edges: Vec<(usize, usize)>,
    /// One face per cusp; a face of width `w` has degree `2w`.
    pub faces: Vec<Vec<usize>>,
}

impl AbGraph {
    pub fn face_degrees(&self) -> Vec<usize> {
        self.faces.iter().map(|f| 2 * f.len()).collect()
    }

    pub fn to_dot(&self) -> String {
        let widths: Vec<String> = self.faces.iter().map(|f| f.len().to_string()).collect();
        let mut out = String::new();
        writeln!(out, "graph ab {{").unwrap();
        writeln!(out, "  cusps=\"{}\";", widths.join(",")).unwrap();
        for (i, c) in self.a_vertices.iter().enumerate() {
            writeln!(out, "  A{i} [shape=circle, label=\"A{}\"];", 2 * c.len()).unwrap();
        }
        for (i, c) in self.b_vertices.iter().enumerate() {
            writeln!(out, "  B{i} [shape=square, label=\"B{}\"];", 2 * c.len()).unwrap();
        }
        for (p, (a, b)) in self.edges.iter().enumerate() {
            writeln!(out, "  A{a} -- B{b} [label=\"{}\"];", p + 1).unwrap();
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn gamma2() -> Dessin {
        Dessin::from_cycles(6, &[vec![1, 4], vec![2, 6], vec![3, 5]], &[vec![1, 2, 3], vec![4, 5, 6]])
            .unwrap()
    }

    #[test]
    fn parse_examples() {
        let d = parse_dessin(r#"{"n":1,"s2":[],"s3":[]}"#).unwrap();
        assert_eq!(d, Dessin::trivial());
        let g = parse_dessin(r#"{"n":6,"s2":[[1,4],[2,6],[3,5]],"s3":[[1,2,3],[4,5,6]]}"#).unwrap();
        assert_eq!(g, gamma2());
        let err = parse_dessin(r#"{"n":2,"s3":[[1,2]]}"#).unwrap_err();
        assert_eq!(err, Error::Malformed("not order 3".into()));
        let err = parse_dessin(r#"{"n":2}"#).unwrap_err();
        assert_eq!(err, Error::Malformed("disconnected dessin".into()));
        assert!(matches!(parse_dessin(r#"{"n":2,"s2":[[1,3]]}"#), Err(Error::Parse(_))));
    }

    #[test]
    fn census_examples() {
        let c = Dessin::trivial().census();
        assert_eq!((c.a2, c.a6, c.b2, c.b4, c.genus), (1, 0, 1, 0, 0));
        assert_eq!(c.cusp_widths, vec![1]);
        assert_eq!((c.cdf(), c.et()), (5, 12));

        let c = gamma2().census();
        assert_eq!((c.a2, c.a6, c.b2, c.b4, c.genus), (0, 2, 0, 3, 0));
        assert_eq!(c.cusp_widths, vec![2, 2, 2]);
        assert_eq!((c.cdf(), c.et()), (0, 12));
        assert_eq!(gamma2().cusp_cycles(), vec![vec![0, 5], vec![1, 4], vec![2, 3]]);

        let d = Dessin::from_cycles(3, &[vec![1, 2]], &[vec![1, 2, 3]]).unwrap();
        let c = d.census();
        assert_eq!((c.a2, c.a6, c.b2, c.b4, c.genus), (0, 1, 1, 1, 0));
        assert_eq!(c.sorted_widths(), vec![2, 1]);
        assert_eq!((c.cdf(), c.et()), (3, 12));
    }

    #[test]
    fn isomorphism_examples() {
        let d1 = Dessin::from_cycles(3, &[vec![1, 2]], &[vec![1, 2, 3]]).unwrap();
        let d2 = Dessin::from_cycles(3, &[vec![2, 3]], &[vec![1, 2, 3]]).unwrap();
        let d3 = Dessin::from_cycles(3, &[], &[vec![1, 2, 3]]).unwrap();
        assert!(is_isomorphic(&d1, &d2));
        assert!(!is_isomorphic(&d1, &d3));
        let g = gamma2();
        let shuffled = g.relabel(&[3, 0, 5, 2, 1, 4]);
        assert!(g.is_isomorphic(&shuffled));
        assert_eq!(g.canonical_form().canonical_key(), g.canonical_key());
        assert_eq!(g.automorphism_count(), 6);
    }

    #[test]
    fn ab_graph_examples() {
        let g = Dessin::trivial().ab_graph();
        assert_eq!((g.a_vertices.len(), g.b_vertices.len(), g.edges.len()), (1, 1, 1));
        let g = gamma2().ab_graph();
        assert!(g.a_vertices.iter().all(|c| c.len() == 3));
        assert!(g.b_vertices.iter().all(|c| c.len() == 2));
        assert_eq!(g.edges.len(), 6);
        assert_eq!(g.face_degrees(), vec![4, 4, 4]);
        let dot = gamma2().to_dot();
        assert!(dot.contains("cusps=\"2,2,2\""));
        assert!(dot.contains("shape=square"));
    }

    #[test]
    fn json_round_trip() {
        let g = gamma2();
        let text = g.to_json().to_string();
        assert_eq!(parse_dessin(&text).unwrap(), g);
    }
}
