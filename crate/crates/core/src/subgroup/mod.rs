//! A dessin with a basepoint is a subgroup `Γ ≤ PSL(2,Z)`: the stabilizer of
//! the basepoint under the right action `p·σ = s2(p)`, `p·υ = s3(p)`.

mod fold;

use serde::Serialize;

use crate::arith::{matrix_to_word, word_to_matrix, ElementClass, MatSL2, PslLetter, PslWord};
use crate::dessin::Dessin;
use crate::error::{Error, Result};

pub use fold::{fold_generated, FoldResult};

/// Default coset cap used by the command-line front end.
pub const DEFAULT_CAP: usize = 4096;

#[derive(Clone, Debug)]
pub struct PointedDessin {
    dessin: Dessin,
    basepoint: usize,
    /// `tree_words[p]` carries the basepoint to `p`.
    tree_words: Vec<PslWord>,
    /// Whether the `s2`-edge at `p` belongs to the spanning tree.
    tree_s2: Vec<bool>,
}

fn act(d: &Dessin, p: usize, l: PslLetter) -> usize {
    match l {
        PslLetter::S => d.s2(p),
        PslLetter::U => d.s3(p),
        PslLetter::U2 => d.s3_inv(p),
    }
}

impl PointedDessin {
    /// Builds the spanning tree used for Reidemeister–Schreier: every
    /// `s3`-cycle is entered once and then walked with `υ`, and cycles are
    /// joined by `σ`-edges in breadth-first order.
    pub fn new(dessin: Dessin, basepoint: usize) -> Result<Self> {
        let n = dessin.n();
        if basepoint >= n {
            return Err(Error::Malformed(format!("basepoint {} out of range", basepoint + 1)));
        }
        let mut words: Vec<Option<PslWord>> = vec![None; n];
        let mut tree_s2 = vec![false; n];
        let mut queue = std::collections::VecDeque::new();
        let enter = |p: usize, w: PslWord, words: &mut Vec<Option<PslWord>>, queue: &mut std::collections::VecDeque<usize>| {
            let q = dessin.s3(p);
            let r = dessin.s3(q);
            if q != p {
                let mut wq = w.clone();
                wq.push(PslLetter::U);
                let mut wr = w.clone();
                wr.push(PslLetter::U2);
                words[q] = Some(wq);
                words[r] = Some(wr);
            }
            words[p] = Some(w);
            queue.push_back(p);
            if q != p {
                queue.push_back(q);
                queue.push_back(r);
            }
        };
        enter(basepoint, PslWord::identity(), &mut words, &mut queue);
        while let Some(p) = queue.pop_front() {
            let q = dessin.s2(p);
            if q != p && words[q].is_none() {
                let mut w = words[p].clone().unwrap();
                w.push(PslLetter::S);
                tree_s2[p] = true;
                tree_s2[q] = true;
                enter(q, w, &mut words, &mut queue);
            }
        }
        let tree_words = words.into_iter().map(|w| w.expect("dessin is transitive")).collect();
        Ok(PointedDessin {
            dessin,
            basepoint,
            tree_words,
            tree_s2,
        })
    }

    pub fn dessin(&self) -> &Dessin {
        &self.dessin
    }

    pub fn basepoint(&self) -> usize {
        self.basepoint
    }

    pub fn tree_word(&self, p: usize) -> &PslWord {
        &self.tree_words[p]
    }

    /// Image of point `p` under a word.
    pub fn act_word(&self, p: usize, w: &PslWord) -> usize {
        w.letters().iter().fold(p, |q, &l| act(&self.dessin, q, l))
    }

    pub fn contains_word(&self, w: &PslWord) -> bool {
        self.act_word(self.basepoint, w) == self.basepoint
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GeneratorKind {
    Order2,
    Order3,
    Free,
}

#[derive(Clone, Debug, Serialize)]
pub struct Generator {
    pub word: PslWord,
    pub matrix: MatSL2,
    pub kind: GeneratorKind,
    pub class: ElementClass,
}

impl Generator {
    fn from_word(word: PslWord, kind: GeneratorKind) -> Self {
        let matrix = word_to_matrix(&word);
        let class = matrix.classify();
        Generator {
            word,
            matrix,
            kind,
            class,
        }
    }
}

/// Free-product generators of `Γ`: `b2` of order 2, `a2` of order 3 and
/// `2g + c - 1` of infinite order, with that exact multiplicity.
pub fn generators(pd: &PointedDessin) -> Vec<Generator> {
    let d = &pd.dessin;
    let g = |p: usize| &pd.tree_words[p];
    let mut out = Vec::new();
    for p in d.b2_points() {
        out.push(Generator::from_word(
            PslWord::letter(PslLetter::S).conjugate_by(g(p)),
            GeneratorKind::Order2,
        ));
    }
    for p in d.a2_points() {
        out.push(Generator::from_word(
            PslWord::letter(PslLetter::U).conjugate_by(g(p)),
            GeneratorKind::Order3,
        ));
    }
    for p in 0..d.n() {
        let q = d.s2(p);
        if q > p && !pd.tree_s2[p] {
            let mut w = g(p).clone();
            w.push(PslLetter::S);
            out.push(Generator::from_word(w.concat(&g(q).inverse()), GeneratorKind::Free));
        }
    }
    out
}

/// Rewrites a word of `Γ` in the generators of [`generators`]: pairs of an
/// index into that list and an exponent. Fails if the word is not in `Γ`.
pub fn rewrite(pd: &PointedDessin, w: &PslWord) -> Result<Vec<(usize, i8)>> {
    let d = &pd.dessin;
    let n = d.n();
    let mut index2 = vec![usize::MAX; n];
    let mut index3 = vec![usize::MAX; n];
    let mut index_free = vec![usize::MAX; n];
    let mut next = 0;
    for p in d.b2_points() {
        index2[p] = next;
        next += 1;
    }
    for p in d.a2_points() {
        index3[p] = next;
        next += 1;
    }
    for p in 0..n {
        if d.s2(p) > p && !pd.tree_s2[p] {
            index_free[p] = next;
            next += 1;
        }
    }
    let mut out = Vec::new();
    let mut p = pd.basepoint;
    for &l in w.letters() {
        match l {
            PslLetter::S => {
                let q = d.s2(p);
                if q == p {
                    out.push((index2[p], 1));
                } else if !pd.tree_s2[p] {
                    let lo = p.min(q);
                    out.push((index_free[lo], if p == lo { 1 } else { -1 }));
                }
                p = q;
            }
            PslLetter::U | PslLetter::U2 => {
                if d.s3(p) == p {
                    out.push((index3[p], if l == PslLetter::U { 1 } else { -1 }));
                }
                p = act(d, p, l);
            }
        }
    }
    if p != pd.basepoint {
        return Err(Error::Constraint(format!("word {w} is not in the subgroup")));
    }
    Ok(out)
}

/// Membership of the image of `m` in `PSL(2,Z)`.
pub fn contains(pd: &PointedDessin, m: &MatSL2) -> bool {
    pd.contains_word(&matrix_to_word(m).0)
}

/// Marked point of a dessin: elliptic points and cusps.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum MarkKind {
    A2,
    B2,
    Cusp,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundaryWord {
    /// `a2:i`, `b2:i` or `cusp:i`.
    pub point: String,
    #[serde(skip)]
    pub kind: MarkKind,
    #[serde(skip)]
    pub index: usize,
    pub width: usize,
    /// The loop is `conjugator · core · conjugator⁻¹`.
    pub conjugator: PslWord,
    pub core: PslWord,
    pub word: PslWord,
}

// Triangles: U_p = 2p, L_p = 2p + 1. Sides are indexed 3p + k with
// k = 0 (AB, between U_p and L_p), 1 (BI, U_p and L_{s2 p}), 2 (IA, U_p and L_{s3 p}).
const AB: usize = 0;
const BI: usize = 1;
const IA: usize = 2;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Corner {
    A,
    B,
    I,
}

struct Triangulation<'a> {
    d: &'a Dessin,
}

impl Triangulation<'_> {
    fn side(&self, t: usize, k: usize) -> usize {
        let p = t / 2;
        if t % 2 == 0 {
            3 * p + k
        } else {
            match k {
                AB => 3 * p + AB,
                BI => 3 * self.d.s2(p) + BI,
                _ => 3 * self.d.s3_inv(p) + IA,
            }
        }
    }

    /// Neighbour across side kind `k` and the letter recorded by the crossing.
    fn cross(&self, t: usize, k: usize) -> (usize, Option<PslLetter>) {
        let p = t / 2;
        if t % 2 == 0 {
            match k {
                AB => (2 * p + 1, None),
                BI => (2 * self.d.s2(p) + 1, Some(PslLetter::S)),
                _ => (2 * self.d.s3(p) + 1, Some(PslLetter::U)),
            }
        } else {
            match k {
                AB => (2 * p, None),
                BI => (2 * self.d.s2(p), Some(PslLetter::S)),
                _ => (2 * self.d.s3_inv(p), Some(PslLetter::U2)),
            }
        }
    }

    fn cw(t: usize, x: Corner) -> usize {
        match (t % 2 == 0, x) {
            (true, Corner::A) => AB,
            (true, Corner::B) => BI,
            (true, Corner::I) => IA,
            (false, Corner::A) => IA,
            (false, Corner::B) => AB,
            (false, Corner::I) => BI,
        }
    }

    fn ccw(t: usize, x: Corner) -> usize {
        match (t % 2 == 0, x) {
            (true, Corner::A) => IA,
            (true, Corner::B) => AB,
            (true, Corner::I) => BI,
            (false, Corner::A) => AB,
            (false, Corner::B) => BI,
            (false, Corner::I) => IA,
        }
    }

    fn next(t: usize, x: Corner) -> Corner {
        match (t % 2 == 0, x) {
            (true, Corner::A) => Corner::B,
            (true, Corner::B) => Corner::I,
            (true, Corner::I) => Corner::A,
            (false, Corner::A) => Corner::I,
            (false, Corner::I) => Corner::B,
            (false, Corner::B) => Corner::A,
        }
    }

    /// Point whose cycle names the vertex at corner `x` of triangle `t`.
    fn vertex_point(&self, t: usize, x: Corner) -> usize {
        let p = t / 2;
        match x {
            Corner::I if t % 2 == 1 => self.d.s3_inv(p),
            _ => p,
        }
    }
}

/// Loops around every marked point, one per point, whose product in the
/// returned order is the identity of `PSL(2,Z)`.
pub fn boundary_words(pd: &PointedDessin) -> Result<Vec<BoundaryWord>> {
    let d = &pd.dessin;
    let census = d.census();
    if census.genus > 0 {
        return Err(Error::Unsupported(format!(
            "boundary words need genus 0, got genus {}",
            census.genus
        )));
    }
    let n = d.n();
    let tri = Triangulation { d };

    // Dual spanning tree from U_basepoint.
    let mut word: Vec<Option<PslWord>> = vec![None; 2 * n];
    let mut in_tree = vec![false; 3 * n];
    let root = 2 * pd.basepoint;
    word[root] = Some(PslWord::identity());
    let mut queue = std::collections::VecDeque::from([root]);
    while let Some(t) = queue.pop_front() {
        for k in [AB, BI, IA] {
            let (u, letter) = tri.cross(t, k);
            if word[u].is_none() {
                let mut w = word[t].clone().unwrap();
                if let Some(l) = letter {
                    w.push(l);
                }
                word[u] = Some(w);
                in_tree[tri.side(t, k)] = true;
                queue.push_back(u);
            }
        }
    }
    let word: Vec<PslWord> = word.into_iter().map(Option::unwrap).collect();
    let in_k = |s: usize| !in_tree[s];
    let k_size = in_tree.iter().filter(|&&b| !b).count();
    if k_size + 1 != census.vertices() {
        return Err(Error::Invariant("cut tree does not span the vertices".into()));
    }

    let a_cycle = vertex_ids(&d.s3_cycles(), n);
    let b_cycle = vertex_ids(&d.s2_cycles(), n);
    let cusp = d.cusp_of();
    let a2 = d.a2_points();
    let b2 = d.b2_points();
    let vertex_of = |t: usize, x: Corner| -> (u8, usize) {
        let p = tri.vertex_point(t, x);
        match x {
            Corner::A => (0, a_cycle[p]),
            Corner::B => (1, b_cycle[p]),
            Corner::I => (2, cusp[p]),
        }
    };

    let start = (0..2 * n)
        .flat_map(|t| [Corner::A, Corner::B, Corner::I].map(|x| (t, x)))
        .find(|&(t, x)| in_k(tri.side(t, Triangulation::ccw(t, x))))
        .ok_or_else(|| Error::Invariant("no corner on the cut tree".into()))?;

    let mut visited = std::collections::HashSet::new();
    let mut firsts = Vec::new();
    let (mut t, mut x) = start;
    for _ in 0..2 * k_size {
        if visited.insert(vertex_of(t, x)) {
            firsts.push((t, x));
        }
        while !in_k(tri.side(t, Triangulation::cw(t, x))) {
            t = tri.cross(t, Triangulation::cw(t, x)).0;
        }
        x = Triangulation::next(t, x);
    }
    if (t, x) != start || visited.len() != census.vertices() {
        return Err(Error::Invariant("boundary walk did not close".into()));
    }

    let mut out = Vec::new();
    for &(t, x) in firsts.iter().rev() {
        let (kind, idx) = vertex_of(t, x);
        let p = tri.vertex_point(t, x);
        let (mark, index, width) = match kind {
            0 if d.s3(p) == p => (MarkKind::A2, a2.binary_search(&p).unwrap(), 1),
            1 if d.s2(p) == p => (MarkKind::B2, b2.binary_search(&p).unwrap(), 1),
            2 => (MarkKind::Cusp, idx, census.cusp_widths[idx]),
            _ => continue,
        };
        let mut conjugator = word[t].clone();
        let core = match mark {
            MarkKind::A2 => PslWord::letter(PslLetter::U2),
            MarkKind::B2 => PslWord::letter(PslLetter::S),
            MarkKind::Cusp => {
                if t % 2 == 0 {
                    // (υσ)^w = σ (συ)^w σ
                    conjugator.push(PslLetter::S);
                }
                PslWord::t_power(width as i64)
            }
        };
        let full = core.conjugate_by(&conjugator);
        if !loop_word(&tri, t, x).conjugate_by(&word[t]).eq(&full) {
            return Err(Error::Invariant("loop word does not match its core".into()));
        }
        let label = match mark {
            MarkKind::A2 => "a2",
            MarkKind::B2 => "b2",
            MarkKind::Cusp => "cusp",
        };
        out.push(BoundaryWord {
            point: format!("{label}:{index}"),
            kind: mark,
            index,
            width,
            conjugator,
            core,
            word: full,
        });
    }
    Ok(out)
}

fn vertex_ids(cycles: &[Vec<usize>], n: usize) -> Vec<usize> {
    let mut id = vec![0; n];
    for (i, c) in cycles.iter().enumerate() {
        for &p in c {
            id[p] = i;
        }
    }
    id
}

fn loop_word(tri: &Triangulation<'_>, t0: usize, x: Corner) -> PslWord {
    let mut w = PslWord::identity();
    let mut t = t0;
    loop {
        let (u, l) = tri.cross(t, Triangulation::cw(t, x));
        if let Some(l) = l {
            w.push(l);
        }
        t = u;
        if t == t0 {
            return w;
        }
    }
}

/// Product of the boundary words in order; the identity for genus 0.
pub fn boundary_product(words: &[BoundaryWord]) -> PslWord {
    words
        .iter()
        .fold(PslWord::identity(), |acc, b| acc.concat(&b.word))
}

/// Free-product signature `(ν2, ν3, f)` read off a generator list.
pub fn signature(gens: &[Generator]) -> (usize, usize, usize) {
    let count = |k| gens.iter().filter(|g| g.kind == k).count();
    (
        count(GeneratorKind::Order2),
        count(GeneratorKind::Order3),
        count(GeneratorKind::Free),
    )
}
