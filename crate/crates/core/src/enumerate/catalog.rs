//! Catalogs built on the enumerator: loop-free AB-graphs, saturated graphs,
//! and the monodromy groups of rational and K3 surfaces.

use std::collections::BTreeSet;

use serde::Serialize;

use super::{enumerate_classes, DessinClass, Filter};
use crate::dessin::Dessin;
use crate::error::{Error, Result};
use crate::fibers::{marked_points, surface_report, Fiber, FiberAssignment, PointKind, SurfaceReport};

/// Unrooted tree, adjacency lists.
type Tree = Vec<Vec<usize>>;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum LeafMark {
    Plain,
    A,
    B,
}

fn encode(t: &Tree, marks: &[LeafMark], v: usize, parent: usize) -> String {
    let mut kids: Vec<String> = t[v]
        .iter()
        .filter(|&&w| w != parent)
        .map(|&w| encode(t, marks, w, v))
        .collect();
    kids.sort();
    let tag = match marks[v] {
        LeafMark::Plain => 'x',
        LeafMark::A => 'a',
        LeafMark::B => 'b',
    };
    format!("({tag}{})", kids.concat())
}

/// Canonical string of a vertex-labelled unrooted tree: least rooted
/// encoding over all roots.
fn canonical_tree(t: &Tree, marks: &[LeafMark]) -> String {
    (0..t.len())
        .map(|r| encode(t, marks, r, usize::MAX))
        .min()
        .unwrap_or_default()
}

/// Trees with `k` leaves whose other vertices all have degree 3, up to
/// isomorphism, grown by inserting a leaf in the middle of an edge.
fn trivalent_trees(k: usize) -> Vec<Tree> {
    let mut level: Vec<Tree> = vec![vec![vec![1], vec![0]]];
    for _ in 2..k {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for t in &level {
            for u in 0..t.len() {
                for &v in &t[u] {
                    if u > v {
                        continue;
                    }
                    let mut s = t.clone();
                    let w = s.len();
                    let z = w + 1;
                    for x in s[u].iter_mut() {
                        if *x == v {
                            *x = w;
                        }
                    }
                    for x in s[v].iter_mut() {
                        if *x == u {
                            *x = w;
                        }
                    }
                    s.push(vec![u, v, z]);
                    s.push(vec![w]);
                    let key = canonical_tree(&s, &vec![LeafMark::Plain; s.len()]);
                    if seen.insert(key) {
                        next.push(s);
                    }
                }
            }
        }
        level = next;
    }
    level
}

/// Realizes a marked tree as a dessin: trivalent vertices become A-vertices
/// of valence 6, A-marked leaves A2-vertices, B-marked leaves B2-vertices,
/// and every edge not ending in a B2 gets a B4-vertex in its middle. The
/// cyclic order at vertex `v` is reversed when `flip[v]`.
fn realize(t: &Tree, marks: &[LeafMark], flip: &[bool]) -> Result<Dessin> {
    let mut next_point = 1;
    let mut slots: Vec<Vec<usize>> = vec![Vec::new(); t.len()];
    let mut s2 = Vec::new();
    for u in 0..t.len() {
        for &v in &t[u] {
            if u > v {
                continue;
            }
            let mut side = |x: usize| -> Option<usize> {
                if marks[x] == LeafMark::B {
                    None
                } else {
                    let p = next_point;
                    next_point += 1;
                    slots[x].push(p);
                    Some(p)
                }
            };
            match (side(u), side(v)) {
                (Some(p), Some(q)) => s2.push(vec![p, q]),
                (Some(_), None) | (None, Some(_)) => {}
                (None, None) => {
                    return Err(Error::Constraint("two B-ends cannot be adjacent".into()));
                }
            }
        }
    }
    let s3: Vec<Vec<usize>> = slots
        .into_iter()
        .zip(flip)
        .filter(|(s, _)| s.len() == 3)
        .map(|(mut s, &f)| {
            if f {
                s.reverse();
            }
            s
        })
        .collect();
    Dessin::from_cycles(next_point - 1, &s2, &s3)
}

#[derive(Clone, Debug, Serialize)]
pub struct TreeEntry {
    /// Index of the unmarked shape within the catalog.
    pub shape: usize,
    pub a_ends: usize,
    pub b_ends: usize,
    pub et: usize,
    pub dessin: Dessin,
}

#[derive(Clone, Debug, Serialize)]
pub struct TreeCatalog {
    pub ends: usize,
    /// Abstract trees, markings ignored.
    pub shape_count: usize,
    /// Abstract trees with ends marked A2 or B2.
    pub marked_count: usize,
    /// One entry per dessin: plane embeddings of a marked tree may differ.
    pub entries: Vec<TreeEntry>,
}

/// Loop-free AB-graphs with `k` ends: trivalent A-vertices inside, each end
/// an A2 or a B2 vertex. Shapes ignore the end markings.
pub fn catalog_trees(k: usize) -> Result<TreeCatalog> {
    if k < 2 {
        return Err(Error::Constraint(format!("a tree needs at least 2 ends, got {k}")));
    }
    let shapes = trivalent_trees(k);
    let mut entries = Vec::new();
    let mut marked_count = 0;
    for (shape, t) in shapes.iter().enumerate() {
        let leaves: Vec<usize> = (0..t.len()).filter(|&v| t[v].len() == 1).collect();
        let inner: Vec<usize> = (0..t.len()).filter(|&v| t[v].len() == 3).collect();
        let mut seen = BTreeSet::new();
        for mask in 0u32..(1 << leaves.len()) {
            let mut marks = vec![LeafMark::Plain; t.len()];
            for (i, &l) in leaves.iter().enumerate() {
                marks[l] = if mask >> i & 1 == 1 { LeafMark::B } else { LeafMark::A };
            }
            if !seen.insert(canonical_tree(t, &marks)) {
                continue;
            }
            let mut keys = BTreeSet::new();
            for fmask in 0u32..(1 << inner.len()) {
                let mut flip = vec![false; t.len()];
                for (i, &v) in inner.iter().enumerate() {
                    flip[v] = fmask >> i & 1 == 1;
                }
                let Ok(dessin) = realize(t, &marks, &flip) else {
                    break;
                };
                if !keys.insert(dessin.canonical_key()) {
                    continue;
                }
                let c = dessin.census();
                if c.genus != 0 {
                    return Err(Error::Invariant("realized tree is not planar".into()));
                }
                entries.push(TreeEntry {
                    shape,
                    a_ends: c.a2,
                    b_ends: c.b2,
                    et: c.et(),
                    dessin,
                });
            }
            if !keys.is_empty() {
                marked_count += 1;
            }
        }
    }
    Ok(TreeCatalog {
        ends: k,
        shape_count: shapes.len(),
        marked_count,
        entries,
    })
}

/// Genus-0 dessins whose AB-graph has only trivalent A-vertices and no
/// B-vertex of valence one, with the given ET.
pub fn catalog_saturated(et: usize) -> Result<Vec<Dessin>> {
    if ![12, 24, 36, 48].contains(&et) {
        return Err(Error::Constraint(format!(
            "saturated catalog supports ET 12, 24, 36 or 48, got {et}"
        )));
    }
    let f = Filter {
        genus: Some(0),
        saturated: true,
        ..Filter::default()
    };
    Ok(super::enumerate_dessins(et / 2, &f))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SurfaceTarget {
    Rational,
    K3,
}

impl SurfaceTarget {
    pub fn r(self) -> u32 {
        match self {
            SurfaceTarget::Rational => 1,
            SurfaceTarget::K3 => 2,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub assignment: FiberAssignment,
    pub report: SurfaceReport,
}

/// A valid assignment with Euler number `12r` and the fewest twisted
/// fibers, if `ET ≤ 24r`. Twists go to B2 points first, then cusps, then A2
/// points, then to extra `I0*` points.
pub fn minimal_witness(d: &Dessin, r: u32) -> Result<Option<Witness>> {
    let et = d.et();
    let budget = 24 * r as usize;
    if d.genus() != 0 || et > budget {
        return Ok(None);
    }
    if (budget - et) % 12 != 0 {
        return Err(Error::Invariant(format!("ET {et} of a genus-0 dessin is not divisible by 12")));
    }
    let mut t = (budget - et) / 12;
    let points = marked_points(d);
    let rank = |k: &PointKind| match k {
        PointKind::B2 => 0,
        PointKind::Cusp { .. } => 1,
        _ => 2,
    };
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by_key(|&i| (rank(&points[i].kind), i));
    let mut twisted = vec![false; points.len()];
    for &i in &order {
        if t == 0 {
            break;
        }
        twisted[i] = true;
        t -= 1;
    }
    let types: Vec<_> = points
        .iter()
        .zip(&twisted)
        .map(|(p, &tw)| p.kind.class().pick(tw))
        .collect();
    let assignment = FiberAssignment::on_dessin(d, &types, t)?;
    let report = surface_report(&assignment, d)?;
    debug_assert!(assignment.fibers.iter().all(|f: &Fiber| f.kodaira.class() == f.point.kind.class()));
    Ok(Some(Witness { assignment, report }))
}

/// Every genus-0 monodromy group of a surface of the target class, once,
/// with a witness assignment using the fewest twists.
pub fn classify_surfaces(target: SurfaceTarget) -> Result<Vec<(DessinClass, Witness)>> {
    let r = target.r();
    let f = Filter {
        genus: Some(0),
        et_max: Some(24 * r as usize),
        up_to_index: true,
        ..Filter::default()
    };
    let mut out = Vec::new();
    for class in enumerate_classes(12 * r as usize, &f) {
        if let Some(w) = minimal_witness(&class.dessin, r)? {
            out.push((class, w));
        }
    }
    Ok(out)
}
