//! Exact Weierstrass models `y² = x³ + p(t)x + q(t)` over `Q(t)` and their
//! singular fibers, read off from valuations. Serves as an oracle that does
//! not share code with the combinatorial side.

mod poly;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::dessin::Dessin;
use crate::error::{Error, Result};
use crate::fibers::{enumerate_configs, KodairaType};

pub use poly::RationalPoly;

/// A member of the family with `deg p ≤ 4r`, `deg q ≤ 6r`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct WeierstrassModel {
    pub r: u32,
    pub p: RationalPoly,
    pub q: RationalPoly,
}

impl WeierstrassModel {
    pub fn new(r: u32, p: RationalPoly, q: RationalPoly) -> Result<Self> {
        if r == 0 {
            return Err(Error::Constraint("r must be positive".into()));
        }
        if p.degree().unwrap_or(0) > 4 * r as usize || q.degree().unwrap_or(0) > 6 * r as usize {
            return Err(Error::Constraint(format!(
                "degrees ({}, {}) exceed ({}, {})",
                p.degree().unwrap_or(0),
                q.degree().unwrap_or(0),
                4 * r,
                6 * r
            )));
        }
        Ok(WeierstrassModel { r, p, q })
    }

    /// Reads `{"r":1,"p":["0","1"],"q":["1"]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let m: WeierstrassModel =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("model: {e}")))?;
        Self::new(m.r, m.p, m.q)
    }

    /// The quadratic twist by a squarefree `u`: `p ← u²p`, `q ← u³q`, with
    /// `r` raised so that the degrees still fit.
    pub fn twist(&self, u: &RationalPoly) -> Result<Self> {
        if u.is_zero() {
            return Err(Error::Constraint("cannot twist by zero".into()));
        }
        if u.degree().unwrap_or(0) > 0 && u.gcd(&u.derivative()).degree() != Some(0) {
            return Err(Error::Constraint(format!("twist polynomial {u} is not squarefree")));
        }
        let k = u.degree().unwrap_or(0) as u32;
        let p = &u.pow(2) * &self.p;
        let q = &u.pow(3) * &self.q;
        Self::new(self.r + k.div_ceil(2), p, q)
    }

    /// The model with `x` shifted to kill the quadratic term of
    /// `y² = x³ + a x² + b x + c`.
    pub fn depressed(r: u32, a: &RationalPoly, b: &RationalPoly, c: &RationalPoly) -> Result<Self> {
        let third = BigRational::new(1.into(), 3.into());
        let p = b - &a.pow(2).scale(&third);
        let q = &(c - &(a * b).scale(&third))
            + &a.pow(3).scale(&BigRational::new(2.into(), 27.into()));
        Self::new(r, p, q)
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct DiscriminantJ {
    pub delta: RationalPoly,
    /// `J = 4p³/Δ` in lowest terms, denominator monic.
    pub j_num: RationalPoly,
    pub j_den: RationalPoly,
    pub deg_j: usize,
}

/// `Δ = 4p³ + 27q²` and `J = 4p³/Δ`, which takes the values `0, 1, ∞`
/// over the three special points.
pub fn discriminant_and_j(m: &WeierstrassModel) -> Result<DiscriminantJ> {
    let p3 = m.p.pow(3).scale(&BigRational::from_integer(4.into()));
    let delta = &p3 + &m.q.pow(2).scale(&BigRational::from_integer(27.into()));
    if delta.is_zero() {
        return Err(Error::SingularModel);
    }
    if p3.is_zero() {
        return Err(Error::IsotrivialModel);
    }
    let g = p3.gcd(&delta);
    let num = p3.div_rem(&g).0;
    let den = delta.div_rem(&g).0;
    let lead = den.leading().recip();
    let (j_num, j_den) = (num.scale(&lead), den.scale(&lead));
    let deg_j = j_num.degree().unwrap_or(0).max(j_den.degree().unwrap_or(0));
    if deg_j == 0 {
        return Err(Error::IsotrivialModel);
    }
    Ok(DiscriminantJ {
        delta,
        j_num,
        j_den,
        deg_j,
    })
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct PlaceReport {
    /// The irreducible factor of `Δ`, or `inf`.
    pub place: String,
    /// Number of fibers at the place: the degree of the factor.
    pub fibers: usize,
    /// Valuations after minimal reduction; `None` for a zero coefficient.
    pub v_p: Option<u32>,
    pub v_q: Option<u32>,
    pub v_delta: u32,
    pub kodaira: KodairaType,
    pub e: u32,
    pub df: u32,
    pub j_pole: u32,
    pub minimality_shifts: u32,
}

fn kodaira_from_valuations(vp: Option<u32>, vq: Option<u32>, vd: u32) -> Result<KodairaType> {
    use KodairaType::*;
    let vp = vp.unwrap_or(u32::MAX);
    let vq = vq.unwrap_or(u32::MAX);
    Ok(match (vp, vq, vd) {
        (_, _, 0) => I(0),
        (0, _, n) => I(n),
        (_, 1, _) => II,
        (1, _, _) => III,
        (_, 2, _) => IV,
        (_, _, 6) => IStar(0),
        (2, 3, n) => IStar(n - 6),
        (_, 4, _) => IVStar,
        (3, _, _) => IIIStar,
        (_, 5, _) => IIStar,
        _ => {
            return Err(Error::Invariant(format!(
                "no Kodaira type for valuations ({vp}, {vq}, {vd})"
            )))
        }
    })
}

fn place_report(
    place: String,
    fibers: usize,
    mut vp: Option<u32>,
    mut vq: Option<u32>,
    mut vd: u32,
) -> Result<PlaceReport> {
    let mut shifts = 0;
    while vp.map_or(true, |v| v >= 4) && vq.map_or(true, |v| v >= 6) {
        vp = vp.map(|v| v - 4);
        vq = vq.map(|v| v - 6);
        vd = vd.checked_sub(12).ok_or_else(|| {
            Error::Invariant(format!("discriminant valuation too small at {place}"))
        })?;
        shifts += 1;
    }
    let kodaira = kodaira_from_valuations(vp, vq, vd)?;
    // Pole order of J = 4p³/Δ from the valuations alone.
    let j_pole = match vp {
        Some(v) => vd.saturating_sub(3 * v),
        None => 0,
    };
    let df = vd - j_pole;
    if kodaira.euler() != vd || kodaira.j_pole() != j_pole || kodaira.defect() != df {
        return Err(Error::Invariant(format!(
            "valuations at {place} disagree with the table for {kodaira}"
        )));
    }
    Ok(PlaceReport {
        place,
        fibers,
        v_p: vp,
        v_q: vq,
        v_delta: vd,
        kodaira,
        e: vd,
        df,
        j_pole,
        minimality_shifts: shifts,
    })
}

/// One report per irreducible factor of `Δ` and one for `∞`.
pub fn local_types(m: &WeierstrassModel) -> Result<Vec<PlaceReport>> {
    let dj = discriminant_and_j(m)?;
    let mut out = Vec::new();
    for (f, k) in dj.delta.factor() {
        let vd = dj.delta.valuation(&f).expect("nonzero discriminant");
        if vd != k {
            return Err(Error::Invariant(format!("factorization multiplicity of {f} is wrong")));
        }
        out.push(place_report(
            f.to_string(),
            f.degree().unwrap_or(0),
            m.p.valuation(&f),
            m.q.valuation(&f),
            vd,
        )?);
    }
    let r = m.r as usize;
    let chart = |x: &RationalPoly, w: usize| x.degree().map(|d| (w - d) as u32);
    let vd_inf = 12 * r - dj.delta.degree().expect("nonzero discriminant");
    out.push(place_report(
        "inf".into(),
        1,
        chart(&m.p, 4 * r),
        chart(&m.q, 6 * r),
        vd_inf as u32,
    )?);
    Ok(out)
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ModelReport {
    pub r: u32,
    /// `r` of the minimal model, after all reductions.
    pub r_minimal: u32,
    pub delta: RationalPoly,
    pub deg_j: usize,
    pub euler_total: u32,
    pub df_total: u32,
    pub places: Vec<PlaceReport>,
    /// Singular fibers with multiplicity, sorted.
    pub fibers: Vec<KodairaType>,
}

/// Lower bound on the local defect: 2, 3, 4 over `j = 0, 1` for the
/// unstarred types, 8, 9, 10 for their partners, 6 for `I_n*`.
pub fn defect_lower_bound(t: KodairaType) -> u32 {
    use KodairaType::*;
    match t {
        I(_) => 0,
        IStar(_) => 6,
        II => 2,
        III => 3,
        IV => 4,
        IVStar => 8,
        IIIStar => 9,
        IIStar => 10,
    }
}

pub fn model_report(m: &WeierstrassModel) -> Result<ModelReport> {
    let dj = discriminant_and_j(m)?;
    let places = local_types(m)?;
    let shifts: u32 = places.iter().map(|p| p.minimality_shifts * p.fibers as u32).sum();
    let r_minimal = m.r.checked_sub(shifts).filter(|&r| r > 0).ok_or_else(|| {
        Error::Invariant(format!("{shifts} minimality shifts exceed r = {}", m.r))
    })?;
    let sum = |f: &dyn Fn(&PlaceReport) -> u32| places.iter().map(|p| f(p) * p.fibers as u32).sum::<u32>();
    let euler_total = sum(&|p| p.e);
    let df_total = sum(&|p| p.df);
    let poles = sum(&|p| p.j_pole);
    if euler_total != 12 * r_minimal {
        return Err(Error::Invariant(format!(
            "Euler total {euler_total} differs from 12r = {}",
            12 * r_minimal
        )));
    }
    if poles as usize != dj.deg_j || df_total as usize + dj.deg_j != 12 * r_minimal as usize {
        return Err(Error::Invariant("degree defect bookkeeping is inconsistent".into()));
    }
    if let Some(p) = places.iter().find(|p| p.df < defect_lower_bound(p.kodaira)) {
        return Err(Error::Invariant(format!("defect below the bound at {}", p.place)));
    }
    let mut fibers: Vec<KodairaType> = places
        .iter()
        .filter(|p| p.kodaira != KodairaType::I(0))
        .flat_map(|p| std::iter::repeat(p.kodaira).take(p.fibers))
        .collect();
    fibers.sort();
    Ok(ModelReport {
        r: m.r,
        r_minimal,
        delta: dj.delta,
        deg_j: dj.deg_j,
        euler_total,
        df_total,
        places,
        fibers,
    })
}

/// Whether some valid assignment on `d` has exactly the model's singular
/// fibers; `I0*` fibers of the model become extra points.
pub fn matches_dessin(report: &ModelReport, d: &Dessin) -> Result<bool> {
    let extra = report
        .fibers
        .iter()
        .filter(|&&t| t == KodairaType::IStar(0))
        .count();
    for (c, _) in enumerate_configs(d, extra, Some(report.r_minimal))? {
        let mut types: Vec<KodairaType> = c.types().into_iter().filter(|&t| t != KodairaType::I(0)).collect();
        types.sort();
        if types == report.fibers {
            return Ok(true);
        }
    }
    Ok(false)
}
