//! Coset enumeration for subgroups of `SL(2,Z) = ⟨S, U | S⁴, S²U⁻³⟩`
//! (`U = ST`), followed by the quotient by the centre.
//!
//! Working in `SL(2,Z)` rather than `PSL(2,Z)` keeps the sign of every
//! generator: `-I` lies in the generated group exactly when `S²` fixes the
//! trivial coset.

use crate::arith::{matrix_to_word, MatSL2, PslLetter};
use crate::dessin::Dessin;
use crate::error::{Error, Result};

use super::PointedDessin;

const UNDEF: usize = usize::MAX;
// Columns: S, S⁻¹, U, U⁻¹; the inverse of column x is x ^ 1.
const S: usize = 0;
const U: usize = 2;
const U_INV: usize = 3;

fn inv(x: usize) -> usize {
    x ^ 1
}

struct CosetTable {
    rows: Vec<[usize; 4]>,
    parent: Vec<usize>,
    live: usize,
    limit: usize,
    queue: Vec<usize>,
}

impl CosetTable {
    fn new(limit: usize) -> Self {
        CosetTable {
            rows: vec![[UNDEF; 4]],
            parent: vec![0],
            live: 1,
            limit,
            queue: Vec::new(),
        }
    }

    fn is_live(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn define(&mut self, c: usize, x: usize) -> Result<()> {
        if self.live >= self.limit {
            return Err(Error::Overflow { cap: self.limit });
        }
        let d = self.rows.len();
        self.rows.push([UNDEF; 4]);
        self.parent.push(d);
        self.live += 1;
        self.rows[c][x] = d;
        self.rows[d][inv(x)] = c;
        Ok(())
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut c = c;
        while self.parent[c] != r {
            let next = self.parent[c];
            self.parent[c] = r;
            c = next;
        }
        r
    }

    fn merge(&mut self, k: usize, l: usize) {
        let k = self.rep(k);
        let l = self.rep(l);
        if k == l {
            return;
        }
        let (keep, drop) = if k < l { (k, l) } else { (l, k) };
        self.parent[drop] = keep;
        self.live -= 1;
        self.queue.push(drop);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let e = self.queue[i];
            i += 1;
            for x in 0..4 {
                let f = self.rows[e][x];
                if f == UNDEF {
                    continue;
                }
                self.rows[f][inv(x)] = UNDEF;
                let e1 = self.rep(e);
                let f1 = self.rep(f);
                if self.rows[e1][x] != UNDEF {
                    let t = self.rows[e1][x];
                    self.merge(f1, t);
                } else if self.rows[f1][inv(x)] != UNDEF {
                    let t = self.rows[f1][inv(x)];
                    self.merge(e1, t);
                } else {
                    self.rows[e1][x] = f1;
                    self.rows[f1][inv(x)] = e1;
                }
            }
        }
    }

    /// Traces `word` from `c` in both directions, defining cosets as needed,
    /// and records the resulting deduction or coincidence.
    fn scan_and_fill(&mut self, c: usize, word: &[usize]) -> Result<()> {
        let mut f = c;
        let mut b = c;
        let mut i = 0isize;
        let mut j = word.len() as isize - 1;
        loop {
            while i <= j && self.rows[f][word[i as usize]] != UNDEF {
                f = self.rows[f][word[i as usize]];
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i && self.rows[b][inv(word[j as usize])] != UNDEF {
                b = self.rows[b][inv(word[j as usize])];
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            }
            if i == j {
                let x = word[i as usize];
                self.rows[f][x] = b;
                self.rows[b][inv(x)] = f;
                return Ok(());
            }
            self.define(f, word[i as usize])?;
        }
    }
}

#[derive(Clone, Debug)]
pub struct FoldResult {
    pub pointed: PointedDessin,
    pub contains_minus_one: bool,
    /// Index of the generated group in `SL(2,Z)`.
    pub sl_index: usize,
}

fn sl_word(m: &MatSL2) -> Vec<usize> {
    let (w, sign) = matrix_to_word(m);
    let mut out = Vec::new();
    for &l in w.letters() {
        match l {
            PslLetter::S => out.push(S),
            PslLetter::U => out.push(U),
            PslLetter::U2 => out.extend([U, U]),
        }
    }
    if sign == -1 {
        out.extend([S, S]);
    }
    out
}

/// Enumerates the cosets of `⟨gens⟩` and returns its permutation
/// representation on `PSL(2,Z)` cosets, the basepoint being the subgroup
/// itself. Fails with an overflow when the `PSL` index exceeds `cap`
/// (including the infinite-index case).
pub fn fold_generated(gens: &[MatSL2], cap: usize) -> Result<FoldResult> {
    let cap = cap.max(1);
    // Intermediate tables may be much larger than the final index.
    let limit = 32 * cap + 256;
    let mut table = CosetTable::new(limit);
    let overflow = |e: Error| match e {
        Error::Overflow { .. } => Error::Overflow { cap },
        e => e,
    };
    let relators: [Vec<usize>; 2] = [vec![S, S, S, S], vec![S, S, U_INV, U_INV, U_INV]];
    for g in gens {
        let w = sl_word(g);
        table.scan_and_fill(0, &w).map_err(overflow)?;
    }
    let mut c = 0;
    while c < table.rows.len() {
        for r in &relators {
            if !table.is_live(c) {
                break;
            }
            table.scan_and_fill(c, r).map_err(overflow)?;
        }
        if table.is_live(c) {
            for x in 0..4 {
                if table.rows[c][x] == UNDEF {
                    table.define(c, x).map_err(overflow)?;
                }
            }
        }
        c += 1;
    }

    let live: Vec<usize> = (0..table.rows.len()).filter(|&c| table.is_live(c)).collect();
    let mut index = vec![UNDEF; table.rows.len()];
    for (i, &c) in live.iter().enumerate() {
        index[c] = i;
    }
    let m = live.len();
    let act = |c: usize, x: usize| index[table.rows[c][x]];
    let s: Vec<usize> = live.iter().map(|&c| act(c, S)).collect();
    let u: Vec<usize> = live.iter().map(|&c| act(c, U)).collect();
    let s2: Vec<usize> = (0..m).map(|c| s[s[c]]).collect();
    let contains_minus_one = s2[0] == 0;

    // Points of the PSL dessin are S²-orbits of SL cosets.
    let mut point = vec![UNDEF; m];
    let mut n = 0;
    for c in 0..m {
        if point[c] == UNDEF {
            point[c] = n;
            point[s2[c]] = n;
            n += 1;
        }
    }
    if n > cap {
        return Err(Error::Overflow { cap });
    }
    let mut ps2 = vec![0; n];
    let mut ps3 = vec![0; n];
    for c in 0..m {
        ps2[point[c]] = point[s[c]];
        ps3[point[c]] = point[u[c]];
    }
    let dessin = Dessin::new(ps2, ps3)
        .map_err(|e| Error::Invariant(format!("coset action is not a dessin: {e}")))?;
    Ok(FoldResult {
        pointed: PointedDessin::new(dessin, 0)?,
        contains_minus_one,
        sl_index: m,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_group() {
        let r = fold_generated(&[MatSL2::s(), MatSL2::st()], 16).unwrap();
        assert_eq!(r.pointed.dessin().n(), 1);
        assert!(r.contains_minus_one);
        assert_eq!(r.sl_index, 1);
    }

    #[test]
    fn principal_level_two() {
        let a = MatSL2::from_i64(1, 2, 0, 1).unwrap();
        let b = MatSL2::from_i64(1, 0, 2, 1).unwrap();
        let r = fold_generated(&[a, b], 64).unwrap();
        assert_eq!(r.pointed.dessin().n(), 6);
        assert!(!r.contains_minus_one);
        assert_eq!(r.sl_index, 12);
        let c = r.pointed.dessin().census();
        assert_eq!(c.sorted_widths(), vec![2, 2, 2]);
    }

    #[test]
    fn empty_generators_overflow() {
        assert_eq!(fold_generated(&[], 50).unwrap_err(), Error::Overflow { cap: 50 });
    }

    #[test]
    fn minus_identity_alone() {
        // ⟨-I⟩ has infinite index.
        assert!(fold_generated(&[MatSL2::minus_identity()], 20).is_err());
        // T generates an infinite-index subgroup as well.
        assert!(fold_generated(&[MatSL2::t()], 20).is_err());
    }
}
