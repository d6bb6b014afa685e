//! Base change along a branched cover `f: B → M_Γ` of the modular curve of a
//! dessin, described by its ramification profile over the special points.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::{word_to_matrix, MatSL2};
use crate::dessin::Dessin;
use crate::error::{Error, Result};
use crate::fibers::{
    kodaira_of, marked_points, minimal_config, verify_product, Fiber, FiberAssignment, KodairaType,
    MarkedPoint, PointKind,
};
use crate::subgroup::{boundary_words, fold_generated, generators, rewrite, GeneratorKind, PointedDessin};

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ProfilePoint {
    #[serde(rename = "ref")]
    pub reference: String,
    pub partition: Vec<u32>,
}

/// Points not listed are unramified. References are `a2:i`, `b2:i`,
/// `cusp:i`, `a6:i`, `b4:i`, `extra:i` or `other:i`, the last naming a
/// branch point that is not special.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct RamificationProfile {
    pub deg: u32,
    #[serde(default)]
    pub points: Vec<ProfilePoint>,
    /// Expected genus of `B`; checked when present.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub genus: Option<usize>,
}

impl RamificationProfile {
    pub fn identity() -> Self {
        RamificationProfile {
            deg: 1,
            points: Vec::new(),
            genus: Some(0),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("profile: {e}")))
    }

    pub fn partition_of(&self, reference: &str) -> Vec<u32> {
        self.points
            .iter()
            .find(|p| p.reference == reference)
            .map(|p| p.partition.clone())
            .unwrap_or_else(|| vec![1; self.deg as usize])
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum RefKind {
    A2,
    B2,
    Cusp,
    A6,
    B4,
    Extra,
    Other,
}

fn parse_ref(r: &str) -> Result<(RefKind, usize)> {
    let bad = || Error::Parse(format!("bad point reference {r:?}"));
    let (kind, idx) = r.split_once(':').ok_or_else(bad)?;
    let idx: usize = idx.parse().map_err(|_| bad())?;
    let kind = match kind {
        "a2" => RefKind::A2,
        "b2" => RefKind::B2,
        "cusp" => RefKind::Cusp,
        "a6" => RefKind::A6,
        "b4" => RefKind::B4,
        "extra" => RefKind::Extra,
        "other" => RefKind::Other,
        _ => return Err(bad()),
    };
    Ok((kind, idx))
}

/// Validates the profile against `d` and returns the genus of `B` from
/// Riemann–Hurwitz over the sphere.
pub fn check_profile(p: &RamificationProfile, d: &Dessin) -> Result<usize> {
    if p.deg == 0 {
        return Err(Error::Constraint("cover degree must be positive".into()));
    }
    if d.genus() != 0 {
        return Err(Error::Unsupported("pullback needs a genus-0 dessin".into()));
    }
    let c = d.census();
    let mut seen = std::collections::HashSet::new();
    let mut ramification: u64 = 0;
    for pt in &p.points {
        let (kind, idx) = parse_ref(&pt.reference)?;
        let bound = match kind {
            RefKind::A2 => Some(c.a2),
            RefKind::B2 => Some(c.b2),
            RefKind::Cusp => Some(c.cusps()),
            RefKind::A6 => Some(c.a6),
            RefKind::B4 => Some(c.b4),
            RefKind::Extra | RefKind::Other => None,
        };
        if bound.is_some_and(|b| idx >= b) {
            return Err(Error::Constraint(format!("no point {}", pt.reference)));
        }
        if !seen.insert(pt.reference.as_str()) {
            return Err(Error::Constraint(format!("point {} listed twice", pt.reference)));
        }
        if pt.partition.iter().any(|&a| a == 0) || pt.partition.iter().sum::<u32>() != p.deg {
            return Err(Error::Constraint(format!(
                "partition {:?} at {} does not sum to {}",
                pt.partition, pt.reference, p.deg
            )));
        }
        ramification += pt.partition.iter().map(|&a| a as u64 - 1).sum::<u64>();
    }
    // 2g - 2 = -2 deg + R.
    let twice = ramification as i64 - 2 * p.deg as i64 + 2;
    if twice < 0 || twice % 2 != 0 {
        return Err(Error::Constraint(format!(
            "ramification {ramification} is impossible in degree {}",
            p.deg
        )));
    }
    let g = (twice / 2) as usize;
    if let Some(expected) = p.genus {
        if expected != g {
            return Err(Error::Constraint(format!(
                "profile gives genus {g}, expected {expected}"
            )));
        }
    }
    Ok(g)
}

/// A point of `B` over a special point of the dessin.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Preimage {
    /// `ref/j`, the `j`-th part of the partition at `ref`.
    pub label: String,
    pub upstream: String,
    pub index: u32,
    /// Pullback of the upstream fiber, before any twist.
    pub untwisted: KodairaType,
}

/// Preimages of every upstream fiber and of every listed non-special branch
/// point, with the pulled-back types.
pub fn preimages(d: &Dessin, p: &RamificationProfile, up: &FiberAssignment) -> Result<Vec<Preimage>> {
    check_profile(p, d)?;
    up.check_compatible()?;
    let marked = marked_points(d);
    if marked.iter().any(|m| up.get(&m.label).is_none()) {
        return Err(Error::Constraint("upstream assignment misses a marked point".into()));
    }
    let mut out = Vec::new();
    let mut push = |reference: &str, t: KodairaType| -> Result<()> {
        for (j, &a) in p.partition_of(reference).iter().enumerate() {
            let m = t.rep().pow(a as i64);
            let untwisted = kodaira_of(&m)
                .ok_or_else(|| Error::Invariant(format!("power of {t} is not a Kodaira monodromy")))?;
            out.push(Preimage {
                label: format!("{reference}/{j}"),
                upstream: reference.to_string(),
                index: a,
                untwisted,
            });
        }
        Ok(())
    };
    for f in &up.fibers {
        push(&f.point.label, f.kodaira)?;
    }
    for pt in &p.points {
        let (kind, _) = parse_ref(&pt.reference)?;
        match kind {
            RefKind::A6 | RefKind::B4 | RefKind::Other => push(&pt.reference, KodairaType::I(0))?,
            _ if up.get(&pt.reference).is_none() => {
                return Err(Error::Constraint(format!(
                    "{} carries no upstream fiber",
                    pt.reference
                )));
            }
            _ => {}
        }
    }
    Ok(out)
}

fn induced_fibers(pre: &[Preimage], twists: &[String]) -> Result<Vec<Fiber>> {
    for t in twists {
        if !pre.iter().any(|q| &q.label == t) {
            return Err(Error::Constraint(format!("no preimage {t} to twist")));
        }
    }
    Ok(pre
        .iter()
        .map(|q| {
            let kodaira = if twists.contains(&q.label) {
                q.untwisted.partner()
            } else {
                q.untwisted
            };
            Fiber {
                point: MarkedPoint {
                    label: q.label.clone(),
                    kind: PointKind::Induced {
                        class: kodaira.class(),
                    },
                },
                kodaira,
            }
        })
        .filter(|f| f.kodaira != KodairaType::I(0))
        .collect())
}

/// Fibers of the base change of the minimal assignment on `d`, with the
/// named preimages twisted. Smooth `I0` points are dropped.
pub fn induced_config(d: &Dessin, p: &RamificationProfile, twists: &[String]) -> Result<FiberAssignment> {
    let pre = preimages(d, p, &minimal_config(d)?)?;
    Ok(FiberAssignment::new(induced_fibers(&pre, twists)?))
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct InducedCheck {
    /// `c_B` is exactly the pullback of the upstream assignment.
    pub induced: bool,
    /// Preimages where `c_B` differs from the pullback by a twist.
    pub twists: Vec<String>,
    pub parity_even: bool,
}

/// Compares `cb` with the base change of `up`. Points missing from `cb`
/// are read as `I0`; a type outside the class of the pullback is an error.
pub fn is_induced(
    cb: &FiberAssignment,
    d: &Dessin,
    p: &RamificationProfile,
    up: &FiberAssignment,
) -> Result<InducedCheck> {
    let pre = preimages(d, p, up)?;
    for f in &cb.fibers {
        if !pre.iter().any(|q| q.label == f.point.label) {
            return Err(Error::Constraint(format!("{} is not a preimage", f.point.label)));
        }
    }
    let mut twists = Vec::new();
    for q in &pre {
        let t = cb.get(&q.label).unwrap_or(KodairaType::I(0));
        if t == q.untwisted.partner() {
            twists.push(q.label.clone());
        } else if t != q.untwisted {
            return Err(Error::Constraint(format!(
                "type {t} at {} is not in the class of {}",
                q.label, q.untwisted
            )));
        }
    }
    Ok(InducedCheck {
        induced: twists.is_empty(),
        parity_even: twists.len() % 2 == 0,
        twists,
    })
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct PullbackGroup {
    /// Index of the monodromy group of the base change in the lifted
    /// upstream group: 1 or 2.
    pub index: u8,
    pub upstream_contains_minus_one: bool,
    pub pullback_contains_minus_one: bool,
    /// Upstream points with a preimage of odd ramification index.
    pub constrained: Vec<String>,
    /// Sign of the lifted loop relative to the chosen section, per upstream
    /// point, when the index is 2.
    pub character: Option<Vec<(String, i8)>>,
    /// Upstream points where the character is `-1`.
    pub character_branch_points: Vec<String>,
    pub ramified_exactly_two: bool,
    /// Upstream points where the cover ramifies.
    pub branch_points: Vec<String>,
    pub deg_j: usize,
}

/// Solves `A x = b` over GF(2); rows are `(coefficients, rhs)`.
fn solve_gf2(rows: &[(Vec<bool>, bool)], vars: usize) -> Option<Vec<bool>> {
    let mut m: Vec<(Vec<bool>, bool)> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..vars {
        let Some(i) = (r..m.len()).find(|&i| m[i].0[c]) else {
            continue;
        };
        m.swap(r, i);
        let (pivot_row, pivot_rhs) = m[r].clone();
        for (k, row) in m.iter_mut().enumerate() {
            if k != r && row.0[c] {
                for (x, &y) in row.0.iter_mut().zip(&pivot_row) {
                    *x ^= y;
                }
                row.1 ^= pivot_rhs;
            }
        }
        pivots.push(c);
        r += 1;
    }
    if m[r..].iter().any(|row| row.1) {
        return None;
    }
    let mut x = vec![false; vars];
    for (k, &c) in pivots.iter().enumerate() {
        x[c] = m[k].1;
    }
    Some(x)
}

/// Sign relations of one upstream loop against the reference section.
struct LoopSign {
    label: String,
    parity: Vec<bool>,
    /// Whether the lifted loop is minus the reference section's value.
    negative: bool,
    lifted: MatSL2,
}

/// Monodromy group of the base change of `up` along the cover, as a
/// subgroup of the lifted upstream group `Γ̃`: all of it, or a section
/// `Γ → Γ̃` of index 2. Both the upstream membership of `-I` and the
/// section found are confirmed by coset enumeration with the given cap.
pub fn pullback_group(
    d: &Dessin,
    up: &FiberAssignment,
    p: &RamificationProfile,
    cap: usize,
) -> Result<PullbackGroup> {
    let g_b = check_profile(p, d)?;
    if g_b != 0 {
        return Err(Error::Unsupported(format!("base change to genus {g_b}")));
    }
    let pd = PointedDessin::new(d.clone(), 0)?;
    let pre = preimages(d, p, up)?;
    if !verify_product(&pd, up)? {
        return Err(Error::Constraint("upstream assignment does not lift".into()));
    }
    let gens = generators(&pd);
    let free: Vec<usize> = (0..gens.len()).filter(|&i| gens[i].kind == GeneratorKind::Free).collect();
    let free_pos = |i: usize| free.iter().position(|&f| f == i);
    // Reference section: free generators lift as written, order-3 ones to
    // their lift of order 3, the one with trace -1.
    let s0: Vec<MatSL2> = gens
        .iter()
        .map(|g| match g.kind {
            GeneratorKind::Order3 if g.matrix.trace() == BigInt::from(1) => -g.matrix.clone(),
            _ => g.matrix.clone(),
        })
        .collect();

    let mut loops = Vec::new();
    for bw in boundary_words(&pd)? {
        let t = up
            .get(&bw.point)
            .ok_or_else(|| Error::Constraint(format!("no type for {}", bw.point)))?;
        let lifted = t.rep().conjugate_by(&word_to_matrix(&bw.conjugator));
        let mut parity = vec![false; free.len()];
        let mut reference = MatSL2::identity();
        for (i, e) in rewrite(&pd, &bw.word)? {
            if let Some(k) = free_pos(i) {
                parity[k] ^= true;
            }
            reference = reference.compose(&s0[i].pow(e as i64));
        }
        let ratio = lifted.compose(&reference.inverse());
        let negative = if ratio.is_identity() {
            false
        } else if ratio.is_minus_identity() {
            true
        } else {
            return Err(Error::Invariant(format!("rewrite of the loop at {} is wrong", bw.point)));
        };
        loops.push(LoopSign {
            label: bw.point.clone(),
            parity,
            negative,
            lifted,
        });
    }
    for f in up.fibers.iter().filter(|f| f.point.kind == PointKind::Extra) {
        loops.push(LoopSign {
            label: f.point.label.clone(),
            parity: vec![false; free.len()],
            negative: f.kodaira == KodairaType::IStar(0),
            lifted: f.kodaira.rep(),
        });
    }

    let lifted: Vec<MatSL2> = loops.iter().map(|l| l.lifted.clone()).collect();
    let upstream_contains_minus_one = fold_generated(&lifted, cap)?.contains_minus_one;
    let b2 = d.census().b2;
    let all_rows: Vec<_> = loops.iter().map(|l| (l.parity.clone(), l.negative)).collect();
    let has_section = b2 == 0 && solve_gf2(&all_rows, free.len()).is_some();
    if has_section == upstream_contains_minus_one {
        return Err(Error::Invariant(
            "coset enumeration and sign analysis disagree on -I".into(),
        ));
    }

    let constrained: Vec<String> = loops
        .iter()
        .filter(|l| p.partition_of(&l.label).iter().any(|a| a % 2 == 1))
        .map(|l| l.label.clone())
        .collect();
    let branch_points: Vec<String> = {
        let mut v: Vec<String> = p
            .points
            .iter()
            .filter(|q| q.partition.iter().any(|&a| a > 1))
            .map(|q| q.reference.clone())
            .collect();
        v.sort();
        v
    };
    let deg_j = pre
        .iter()
        .map(|q| q.untwisted.j_pole() as usize)
        .sum::<usize>();
    if deg_j != p.deg as usize * d.n() {
        return Err(Error::Invariant(format!(
            "pole orders {deg_j} differ from deg · n = {}",
            p.deg as usize * d.n()
        )));
    }

    let mut result = PullbackGroup {
        index: 1,
        upstream_contains_minus_one,
        pullback_contains_minus_one: upstream_contains_minus_one,
        constrained: constrained.clone(),
        character: None,
        character_branch_points: Vec::new(),
        ramified_exactly_two: false,
        branch_points,
        deg_j,
    };
    if !upstream_contains_minus_one || b2 > 0 {
        return Ok(result);
    }
    let rows: Vec<_> = loops
        .iter()
        .filter(|l| constrained.contains(&l.label))
        .map(|l| (l.parity.clone(), l.negative))
        .collect();
    let Some(bits) = solve_gf2(&rows, free.len()) else {
        return Ok(result);
    };

    let section: Vec<MatSL2> = s0
        .iter()
        .enumerate()
        .map(|(i, m)| match free_pos(i) {
            Some(k) if bits[k] => -m.clone(),
            _ => m.clone(),
        })
        .collect();
    if fold_generated(&section, cap)?.contains_minus_one {
        return Err(Error::Invariant("chosen section contains -I".into()));
    }
    let mut character = Vec::new();
    for l in &loops {
        let flips = l.parity.iter().zip(&bits).filter(|(&a, &b)| a && b).count();
        let sign = if l.negative ^ (flips % 2 == 1) { -1 } else { 1 };
        if constrained.contains(&l.label) {
            let mut with = section.clone();
            with.push(l.lifted.clone());
            if sign != 1 || fold_generated(&with, cap)?.contains_minus_one {
                return Err(Error::Invariant(format!(
                    "loop at {} is not in the chosen section",
                    l.label
                )));
            }
        }
        character.push((l.label.clone(), sign));
    }
    result.index = 2;
    result.pullback_contains_minus_one = false;
    result.character_branch_points = character
        .iter()
        .filter(|(_, s)| *s == -1)
        .map(|(l, _)| l.clone())
        .collect();
    result.ramified_exactly_two = result.character_branch_points.len() == 2;
    result.character = Some(character);
    Ok(result)
}
