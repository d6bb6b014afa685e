//! Isomorph-free generation of transitive pairs `(s2, s3)`.
//!
//! Coset tables are filled row by row, `s2` before `s3`, every new point
//! getting the next free label. A table produced this way is its own
//! breadth-first relabeling from point 0, so it is kept only when no other
//! start point gives a smaller table; the surviving closed tables are
//! exactly the canonical keys of [`Dessin::canonical_key`]. Partial tables
//! are pruned as soon as some relabeling is already smaller on a prefix.

mod catalog;

use std::collections::HashSet;

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::dessin::{Dessin, VertexCensus};
use crate::error::{Error, Result};

pub use catalog::{
    catalog_saturated, catalog_trees, classify_surfaces, minimal_witness, SurfaceTarget,
    TreeCatalog, TreeEntry, Witness,
};

/// Constraints on emitted dessins, all decidable from the census.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Filter {
    pub genus: Option<usize>,
    /// No elliptic points: `a2 = b2 = 0`.
    pub torsion_free: bool,
    pub et_max: Option<usize>,
    pub cusps: Option<usize>,
    /// Every A-vertex trivalent and no B-vertex of valence one in the
    /// AB-graph, i.e. again `a2 = b2 = 0`.
    pub saturated: bool,
    /// Emit every index `≤ n` instead of exactly `n`.
    pub up_to_index: bool,
}

impl Filter {
    pub fn genus0() -> Self {
        Filter {
            genus: Some(0),
            ..Filter::default()
        }
    }

    fn forbids_fixed_points(&self) -> bool {
        self.torsion_free || self.saturated
    }

    pub fn accepts(&self, c: &VertexCensus) -> bool {
        self.genus.map_or(true, |g| c.genus == g)
            && (!self.forbids_fixed_points() || c.is_torsion_free())
            && self.et_max.map_or(true, |e| c.et() <= e)
            && self.cusps.map_or(true, |k| c.cusps() == k)
    }
}

/// A conjugacy class of finite-index subgroups.
#[derive(Clone, Debug)]
pub struct DessinClass {
    pub dessin: Dessin,
    pub key: Vec<u8>,
    /// Relabelings fixing the dessin; the class holds `n / automorphisms`
    /// subgroups.
    pub automorphisms: usize,
}

impl DessinClass {
    pub fn pointed_count(&self) -> usize {
        self.dessin.n() / self.automorphisms
    }
}

const UNDEF: u16 = u16::MAX;

#[derive(Clone)]
struct Table {
    max_n: usize,
    count: usize,
    s2: Vec<u16>,
    s3: Vec<u16>,
    s3inv: Vec<u16>,
    fixed2: usize,
    fixed3: usize,
    et_max: usize,
    no_fixed: bool,
}

enum Change {
    S2(usize),
    S3(usize),
    Fixed2,
    Fixed3,
    NewPoint,
}

impl Table {
    fn new(max_n: usize, filter: &Filter) -> Self {
        Table {
            max_n,
            count: 1,
            s2: vec![UNDEF; max_n],
            s3: vec![UNDEF; max_n],
            s3inv: vec![UNDEF; max_n],
            fixed2: 0,
            fixed3: 0,
            et_max: filter.et_max.unwrap_or(usize::MAX),
            no_fixed: filter.forbids_fixed_points(),
        }
    }

    fn cell(&self, pos: usize) -> u16 {
        if pos % 2 == 0 {
            self.s2[pos / 2]
        } else {
            self.s3[pos / 2]
        }
    }

    fn et_lower_bound(&self) -> usize {
        2 * self.count + 4 * self.fixed3 + 6 * self.fixed2
    }

    fn undo(&mut self, trail: &mut Vec<Change>, mark: usize) {
        while trail.len() > mark {
            match trail.pop().unwrap() {
                Change::S2(p) => self.s2[p] = UNDEF,
                Change::S3(p) => {
                    let q = self.s3[p] as usize;
                    self.s3inv[q] = UNDEF;
                    self.s3[p] = UNDEF;
                }
                Change::Fixed2 => self.fixed2 -= 1,
                Change::Fixed3 => self.fixed3 -= 1,
                Change::NewPoint => self.count -= 1,
            }
        }
    }

    fn set_s3(&mut self, p: usize, q: usize, trail: &mut Vec<Change>) {
        self.s3[p] = q as u16;
        self.s3inv[q] = p as u16;
        trail.push(Change::S3(p));
    }

    /// Sets `s3(p) = q` and closes any path of length two into a 3-cycle.
    fn assign_s3(&mut self, p: usize, q: usize, trail: &mut Vec<Change>) -> bool {
        self.set_s3(p, q, trail);
        if p == q {
            self.fixed3 += 1;
            trail.push(Change::Fixed3);
            return true;
        }
        if self.s3[q] != UNDEF {
            let r = self.s3[q] as usize;
            if r == p {
                return false;
            }
            if self.s3[r] != UNDEF {
                return self.s3[r] as usize == p;
            }
            if self.s3inv[p] != UNDEF {
                return false;
            }
            self.set_s3(r, p, trail);
        } else if self.s3inv[p] != UNDEF {
            let x = self.s3inv[p] as usize;
            if self.s3inv[x] != UNDEF {
                return false;
            }
            self.set_s3(q, x, trail);
        }
        true
    }

    /// Compares the table with its breadth-first relabelings from the other
    /// defined points. Returns `None` if some relabeling is smaller on the
    /// common defined prefix, otherwise the number of starts that reproduce
    /// the table exactly (meaningful once the table is closed).
    fn canonicity(&self) -> Option<usize> {
        let n = self.count;
        let mut automorphisms = 1;
        let mut label = vec![UNDEF; n];
        let mut order = Vec::with_capacity(n);
        'start: for s in 1..n {
            label.iter_mut().for_each(|l| *l = UNDEF);
            order.clear();
            label[s] = 0;
            order.push(s);
            for pos in 0..2 * n {
                let i = pos / 2;
                if i >= order.len() {
                    continue 'start;
                }
                let own = self.cell(pos);
                let p = order[i];
                let img = if pos % 2 == 0 { self.s2[p] } else { self.s3[p] };
                if own == UNDEF || img == UNDEF {
                    continue 'start;
                }
                let img = img as usize;
                let l = if label[img] == UNDEF {
                    order.len() as u16
                } else {
                    label[img]
                };
                match l.cmp(&own) {
                    std::cmp::Ordering::Less => return None,
                    std::cmp::Ordering::Greater => continue 'start,
                    std::cmp::Ordering::Equal => {
                        if label[img] == UNDEF {
                            label[img] = l;
                            order.push(img);
                        }
                    }
                }
            }
            automorphisms += 1;
        }
        Some(automorphisms)
    }

    fn to_dessin(&self) -> Dessin {
        let n = self.count;
        let s2 = self.s2[..n].iter().map(|&x| x as usize).collect();
        let s3 = self.s3[..n].iter().map(|&x| x as usize).collect();
        Dessin::new(s2, s3).expect("closed coset table is a dessin")
    }

    /// Candidate values for the undefined cell at `pos`, as table edits.
    fn options(&self, pos: usize) -> Vec<usize> {
        let row = pos / 2;
        let mut out = Vec::new();
        let free = |q: usize| {
            if pos % 2 == 0 {
                self.s2[q] == UNDEF
            } else {
                self.s3inv[q] == UNDEF
            }
        };
        for q in 0..self.count {
            if q == row {
                if !self.no_fixed && free(q) {
                    out.push(q);
                }
            } else if free(q) {
                out.push(q);
            }
        }
        if self.count < self.max_n {
            out.push(self.count);
        }
        out
    }

    /// Applies option `q` at `pos`; false when it is inconsistent or pruned.
    fn apply(&mut self, pos: usize, q: usize, trail: &mut Vec<Change>) -> bool {
        let row = pos / 2;
        if q == self.count {
            self.count += 1;
            trail.push(Change::NewPoint);
        }
        let ok = if pos % 2 == 0 {
            self.s2[row] = q as u16;
            trail.push(Change::S2(row));
            if q == row {
                self.fixed2 += 1;
                trail.push(Change::Fixed2);
            } else {
                self.s2[q] = row as u16;
                trail.push(Change::S2(q));
            }
            true
        } else {
            self.assign_s3(row, q, trail)
        };
        ok && self.et_lower_bound() <= self.et_max
    }
}

struct Search<'a> {
    filter: &'a Filter,
    target: usize,
}

impl Search<'_> {
    fn emit(&self, t: &Table, aut: usize, out: &mut Vec<DessinClass>) {
        if t.count != self.target && !(self.filter.up_to_index && t.count <= self.target) {
            return;
        }
        let d = t.to_dessin();
        if !self.filter.accepts(&d.census()) {
            return;
        }
        let key = t.s2[..t.count]
            .iter()
            .zip(&t.s3[..t.count])
            .flat_map(|(a, b)| [*a, *b])
            .flat_map(|x| x.to_be_bytes())
            .collect();
        out.push(DessinClass {
            dessin: d,
            key,
            automorphisms: aut,
        });
    }

    fn run(&self, t: &mut Table, pos: usize, trail: &mut Vec<Change>, out: &mut Vec<DessinClass>) {
        let mut pos = pos;
        while pos < 2 * t.count && t.cell(pos) != UNDEF {
            pos += 1;
        }
        if pos == 2 * t.count {
            if let Some(aut) = t.canonicity() {
                self.emit(t, aut, out);
            }
            return;
        }
        for q in t.options(pos) {
            let mark = trail.len();
            if t.apply(pos, q, trail) && t.canonicity().is_some() {
                self.run(t, pos + 1, trail, out);
            }
            t.undo(trail, mark);
        }
    }

    /// Expands the search tree breadth-first into independent subproblems.
    fn split(&self, root: Table, want: usize) -> (Vec<(Table, usize)>, Vec<DessinClass>) {
        let mut frontier = vec![(root, 0usize)];
        let mut done = Vec::new();
        for _ in 0..12 {
            if frontier.len() >= want {
                break;
            }
            let mut next = Vec::new();
            for (t, mut pos) in frontier {
                while pos < 2 * t.count && t.cell(pos) != UNDEF {
                    pos += 1;
                }
                if pos == 2 * t.count {
                    if let Some(aut) = t.canonicity() {
                        self.emit(&t, aut, &mut done);
                    }
                    continue;
                }
                for q in t.options(pos) {
                    let mut child = t.clone();
                    let mut trail = Vec::new();
                    if child.apply(pos, q, &mut trail) && child.canonicity().is_some() {
                        next.push((child, pos + 1));
                    }
                }
            }
            frontier = next;
        }
        (frontier, done)
    }
}

/// Every conjugacy class of subgroups of index `n` (or `≤ n` with
/// `up_to_index`) accepted by `filter`, sorted by canonical key.
pub fn enumerate_classes(n: usize, filter: &Filter) -> Vec<DessinClass> {
    if n == 0 || n >= UNDEF as usize {
        return Vec::new();
    }
    let search = Search { filter, target: n };
    let root = Table::new(n, filter);
    let (frontier, mut out) = search.split(root, 256);
    let found: Vec<DessinClass> = frontier
        .into_par_iter()
        .flat_map_iter(|(mut t, pos)| {
            let mut local = Vec::new();
            let mut trail = Vec::new();
            search.run(&mut t, pos, &mut trail, &mut local);
            local
        })
        .collect();
    out.extend(found);
    out.sort_by(|a, b| (a.dessin.n(), &a.key).cmp(&(b.dessin.n(), &b.key)));
    out
}

pub fn enumerate_dessins(n: usize, filter: &Filter) -> Vec<Dessin> {
    enumerate_classes(n, filter)
        .into_iter()
        .map(|c| c.dessin)
        .collect()
}

fn permutations_with_order(n: usize, order: usize) -> Vec<Vec<usize>> {
    (0..n)
        .permutations(n)
        .filter(|p| {
            (0..n).all(|i| {
                let mut x = i;
                for _ in 0..order {
                    x = p[x];
                }
                x == i
            })
        })
        .collect()
}

/// Exhaustive oracle: all transitive pairs on `n ≤ 7` points, grouped into
/// orbits under simultaneous conjugation by every permutation.
pub fn brute_force_classes(n: usize, filter: &Filter) -> Result<Vec<DessinClass>> {
    if n > 7 {
        return Err(Error::Unsupported(format!(
            "brute force is limited to index 7, asked for {n}"
        )));
    }
    let mut out = Vec::new();
    for m in 1..=n {
        if m != n && !filter.up_to_index {
            continue;
        }
        let conjugators: Vec<Vec<usize>> = (0..m).permutations(m).collect();
        let mut seen: HashSet<(Vec<usize>, Vec<usize>)> = HashSet::new();
        for s2 in permutations_with_order(m, 2) {
            for s3 in permutations_with_order(m, 3) {
                if seen.contains(&(s2.clone(), s3.clone())) {
                    continue;
                }
                let Ok(d) = Dessin::new(s2.clone(), s3.clone()) else {
                    continue;
                };
                let mut orbit = 0;
                for g in &conjugators {
                    let c = d.relabel(g);
                    if seen.insert((c.s2_perm().to_vec(), c.s3_perm().to_vec())) {
                        orbit += 1;
                    }
                }
                if filter.accepts(&d.census()) {
                    let key = d.canonical_key();
                    out.push(DessinClass {
                        dessin: d.canonical_form(),
                        key,
                        automorphisms: conjugators.len() / orbit,
                    });
                }
            }
        }
    }
    out.sort_by(|a, b| (a.dessin.n(), &a.key).cmp(&(b.dessin.n(), &b.key)));
    Ok(out)
}

pub fn brute_force_dessins(n: usize, filter: &Filter) -> Result<Vec<Dessin>> {
    Ok(brute_force_classes(n, filter)?
        .into_iter()
        .map(|c| c.dessin)
        .collect())
}

/// Number of transitive pairs on `{1..n}`, counted exhaustively.
pub fn count_transitive_pairs(n: usize) -> Result<usize> {
    if n > 7 {
        return Err(Error::Unsupported(format!(
            "brute force is limited to index 7, asked for {n}"
        )));
    }
    let invol = permutations_with_order(n, 2);
    let ord3 = permutations_with_order(n, 3);
    Ok(invol
        .iter()
        .cartesian_product(ord3.iter())
        .filter(|(a, b)| Dessin::new((*a).clone(), (*b).clone()).is_ok())
        .count())
}
