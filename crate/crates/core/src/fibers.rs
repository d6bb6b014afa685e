//! Kodaira fiber types, fiber assignments on the marked points of a dessin,
//! and the two independent forms of the lifting criterion: the braid-degree
//! count `Σ e ≡ 0 (mod 12)` and the explicit product of `SL(2,Z)` lifts.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{word_to_matrix, MatSL2, TwistLetter, TwistWord};
use crate::dessin::Dessin;
use crate::error::{Error, Result};
use crate::subgroup::{boundary_words, MarkKind, PointedDessin};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum KodairaType {
    /// `I_n`; `I0` is a smooth fiber.
    I(u32),
    /// `I_n*`.
    IStar(u32),
    II,
    III,
    IV,
    IVStar,
    IIIStar,
    IIStar,
}

/// `PSL(2,Z)` conjugacy class of a local monodromy; each class has exactly
/// two Kodaira types, exchanged by a quadratic twist.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LocalClass {
    Trivial,
    Order2,
    /// Class of `υ²`: types II and IV*.
    Order3Pos,
    /// Class of `υ`: types IV and II*.
    Order3Neg,
    Parabolic(u32),
}

impl LocalClass {
    /// The smaller-defect member of the pair and its twist partner.
    pub fn types(self) -> (KodairaType, KodairaType) {
        use KodairaType::*;
        match self {
            LocalClass::Trivial => (I(0), IStar(0)),
            LocalClass::Order2 => (III, IIIStar),
            LocalClass::Order3Pos => (II, IVStar),
            LocalClass::Order3Neg => (IV, IIStar),
            LocalClass::Parabolic(w) => (I(w), IStar(w)),
        }
    }

    pub fn pick(self, twisted: bool) -> KodairaType {
        let (a, b) = self.types();
        if twisted {
            b
        } else {
            a
        }
    }
}

impl KodairaType {
    pub fn euler(self) -> u32 {
        use KodairaType::*;
        match self {
            I(n) => n,
            IStar(n) => n + 6,
            II => 2,
            III => 3,
            IV => 4,
            IVStar => 8,
            IIIStar => 9,
            IIStar => 10,
        }
    }

    pub fn j_pole(self) -> u32 {
        match self {
            KodairaType::I(n) | KodairaType::IStar(n) => n,
            _ => 0,
        }
    }

    /// Local degree defect `e - j_pole`.
    pub fn defect(self) -> u32 {
        self.euler() - self.j_pole()
    }

    /// Order of the monodromy in `SL(2,Z)`; `None` when infinite.
    pub fn sl_order(self) -> Option<u8> {
        use KodairaType::*;
        match self {
            I(0) => Some(1),
            IStar(0) => Some(2),
            I(_) | IStar(_) => None,
            II | IIStar => Some(6),
            III | IIIStar => Some(4),
            IV | IVStar => Some(3),
        }
    }

    pub fn rep(self) -> MatSL2 {
        use KodairaType::*;
        let m = |a, b, c, d| MatSL2::from_i64(a, b, c, d).expect("table entry");
        match self {
            I(n) => m(1, n as i64, 0, 1),
            IStar(n) => m(-1, -(n as i64), 0, -1),
            II => m(1, 1, -1, 0),
            III => m(0, 1, -1, 0),
            IV => m(0, 1, -1, -1),
            IVStar => m(-1, -1, 1, 0),
            IIIStar => m(0, -1, 1, 0),
            IIStar => m(0, -1, 1, 1),
        }
    }

    pub fn partner(self) -> KodairaType {
        use KodairaType::*;
        match self {
            I(n) => IStar(n),
            IStar(n) => I(n),
            II => IVStar,
            IVStar => II,
            III => IIIStar,
            IIIStar => III,
            IV => IIStar,
            IIStar => IV,
        }
    }

    pub fn class(self) -> LocalClass {
        use KodairaType::*;
        match self {
            I(0) | IStar(0) => LocalClass::Trivial,
            I(n) | IStar(n) => LocalClass::Parabolic(n),
            II | IVStar => LocalClass::Order3Pos,
            IV | IIStar => LocalClass::Order3Neg,
            III | IIIStar => LocalClass::Order2,
        }
    }

    /// Whether this is the larger-defect member of its pair.
    pub fn is_twisted(self) -> bool {
        self.class().pick(true) == self
    }

    /// Factorization into right Dehn twists; its degree equals the Euler number.
    pub fn standard_word(self) -> TwistWord {
        use KodairaType::*;
        use TwistLetter::{A, B};
        let ab = TwistWord::new(vec![A, B]);
        let a_pow = |n: u32| TwistWord::new(vec![A; n as usize]);
        let aba = TwistWord::new(vec![A, B, A]);
        match self {
            I(n) => a_pow(n),
            IStar(n) => ab.repeat(3).concat(&a_pow(n)),
            II => ab,
            III => aba,
            IV => ab.repeat(2),
            IVStar => ab.repeat(4),
            IIIStar => ab.repeat(3).concat(&aba),
            IIStar => ab.repeat(5),
        }
    }

    /// All types with Euler number at most `max_euler`, for table checks.
    pub fn all_up_to(max_euler: u32) -> Vec<KodairaType> {
        use KodairaType::*;
        let mut v = vec![II, III, IV, IVStar, IIIStar, IIStar];
        for n in 0..=max_euler {
            v.push(I(n));
            if n + 6 <= max_euler {
                v.push(IStar(n));
            }
        }
        v.retain(|t| t.euler() <= max_euler);
        v
    }
}

impl fmt::Display for KodairaType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use KodairaType::*;
        match self {
            I(n) => write!(f, "I{n}"),
            IStar(n) => write!(f, "I{n}*"),
            II => write!(f, "II"),
            III => write!(f, "III"),
            IV => write!(f, "IV"),
            IVStar => write!(f, "IV*"),
            IIIStar => write!(f, "III*"),
            IIStar => write!(f, "II*"),
        }
    }
}

impl FromStr for KodairaType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        use KodairaType::*;
        let t = s.trim();
        Ok(match t {
            "II" => II,
            "III" => III,
            "IV" => IV,
            "IV*" => IVStar,
            "III*" => IIIStar,
            "II*" => IIStar,
            _ => {
                let body = t
                    .strip_prefix('I')
                    .ok_or_else(|| Error::Parse(format!("unknown Kodaira type {s:?}")))?;
                let (digits, star) = match body.strip_suffix('*') {
                    Some(d) => (d, true),
                    None => (body, false),
                };
                let n: u32 = digits
                    .parse()
                    .map_err(|_| Error::Parse(format!("unknown Kodaira type {s:?}")))?;
                if star {
                    IStar(n)
                } else {
                    I(n)
                }
            }
        })
    }
}

impl Serialize for KodairaType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for KodairaType {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// The Kodaira type whose monodromy is conjugate to `m`, if any.
pub fn kodaira_of(m: &MatSL2) -> Option<KodairaType> {
    use crate::arith::{ElementClass, Sign};
    use num_traits::{Signed, ToPrimitive};
    use KodairaType::*;
    Some(match m.classify() {
        ElementClass::Identity => I(0),
        ElementClass::MinusIdentity => IStar(0),
        ElementClass::Parabolic { sign, power } => {
            if !power.is_positive() {
                return None;
            }
            let n = power.to_u32()?;
            match sign {
                Sign::Plus => I(n),
                Sign::Minus => IStar(n),
            }
        }
        ElementClass::Elliptic { sl_order, positive } => match (sl_order, positive) {
            (6, false) => II,
            (6, true) => IIStar,
            (4, false) => III,
            (4, true) => IIIStar,
            (3, false) => IV,
            _ => IVStar,
        },
        ElementClass::Hyperbolic => return None,
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum PointKind {
    A2,
    B2,
    Cusp { width: u32 },
    /// An additional twisted smooth point; only `I0*` is allowed there.
    Extra,
    /// A point of a base-changed curve whose local class is prescribed.
    Induced { class: LocalClass },
}

impl PointKind {
    pub fn class(self) -> LocalClass {
        match self {
            PointKind::A2 => LocalClass::Order3Pos,
            PointKind::B2 => LocalClass::Order2,
            PointKind::Cusp { width } => LocalClass::Parabolic(width),
            PointKind::Extra => LocalClass::Trivial,
            PointKind::Induced { class } => class,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct MarkedPoint {
    pub label: String,
    #[serde(flatten)]
    pub kind: PointKind,
}

/// The dessin's marked points in label order: `a2:*`, `b2:*`, `cusp:*`.
pub fn marked_points(d: &Dessin) -> Vec<MarkedPoint> {
    let c = d.census();
    let mut out = Vec::with_capacity(c.marked());
    for i in 0..c.a2 {
        out.push(MarkedPoint {
            label: format!("a2:{i}"),
            kind: PointKind::A2,
        });
    }
    for i in 0..c.b2 {
        out.push(MarkedPoint {
            label: format!("b2:{i}"),
            kind: PointKind::B2,
        });
    }
    for (i, &w) in c.cusp_widths.iter().enumerate() {
        out.push(MarkedPoint {
            label: format!("cusp:{i}"),
            kind: PointKind::Cusp { width: w as u32 },
        });
    }
    out
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Fiber {
    pub point: MarkedPoint,
    pub kodaira: KodairaType,
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct FiberAssignment {
    pub fibers: Vec<Fiber>,
}

#[derive(Serialize, Deserialize)]
struct FiberText {
    point: String,
    #[serde(rename = "type")]
    kodaira: KodairaType,
}

#[derive(Serialize, Deserialize)]
struct AssignmentText {
    fibers: Vec<FiberText>,
    #[serde(default)]
    extra: usize,
}

impl FiberAssignment {
    pub fn new(fibers: Vec<Fiber>) -> Self {
        FiberAssignment { fibers }
    }

    /// Assignment on the dessin's marked points with the given types, in
    /// label order, plus `extra` points of type `I0*`.
    pub fn on_dessin(d: &Dessin, types: &[KodairaType], extra: usize) -> Result<Self> {
        let points = marked_points(d);
        if points.len() != types.len() {
            return Err(Error::Constraint(format!(
                "{} types given for {} marked points",
                types.len(),
                points.len()
            )));
        }
        let mut fibers: Vec<Fiber> = points
            .into_iter()
            .zip(types)
            .map(|(point, &kodaira)| Fiber { point, kodaira })
            .collect();
        fibers.extend(extra_points(extra));
        Ok(FiberAssignment { fibers })
    }

    /// Reads the JSON form `{"fibers":[{"point":"cusp:0","type":"I2*"}],"extra":1}`
    /// against the marked points of `d`.
    pub fn from_json(text: &str, d: &Dessin) -> Result<Self> {
        let t: AssignmentText =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("assignment: {e}")))?;
        let points = marked_points(d);
        let mut fibers = Vec::new();
        for f in t.fibers {
            let point = points
                .iter()
                .find(|p| p.label == f.point)
                .cloned()
                .ok_or_else(|| Error::Constraint(format!("no marked point {}", f.point)))?;
            fibers.push(Fiber {
                point,
                kodaira: f.kodaira,
            });
        }
        fibers.extend(extra_points(t.extra));
        Ok(FiberAssignment { fibers })
    }

    pub fn extra_count(&self) -> usize {
        self.fibers
            .iter()
            .filter(|f| f.point.kind == PointKind::Extra)
            .count()
    }

    pub fn types(&self) -> Vec<KodairaType> {
        self.fibers.iter().map(|f| f.kodaira).collect()
    }

    pub fn get(&self, label: &str) -> Option<KodairaType> {
        self.fibers
            .iter()
            .find(|f| f.point.label == label)
            .map(|f| f.kodaira)
    }

    pub fn euler_total(&self) -> u32 {
        self.fibers.iter().map(|f| f.kodaira.euler()).sum()
    }

    pub fn twist_count(&self) -> usize {
        self.fibers.iter().filter(|f| f.kodaira.is_twisted()).count()
    }

    /// Fails with a constraint error naming the first point whose type is
    /// not in its class.
    pub fn check_compatible(&self) -> Result<()> {
        for f in &self.fibers {
            if f.kodaira.class() != f.point.kind.class() {
                return Err(Error::Constraint(format!(
                    "type {} not allowed at {}",
                    f.kodaira, f.point.label
                )));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let fibers: Vec<FiberText> = self
            .fibers
            .iter()
            .filter(|f| f.point.kind != PointKind::Extra)
            .map(|f| FiberText {
                point: f.point.label.clone(),
                kodaira: f.kodaira,
            })
            .collect();
        serde_json::to_value(AssignmentText {
            fibers,
            extra: self.extra_count(),
        })
        .expect("plain data")
    }
}

impl Serialize for FiberAssignment {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

fn extra_points(k: usize) -> impl Iterator<Item = Fiber> {
    (0..k).map(|i| Fiber {
        point: MarkedPoint {
            label: format!("extra:{i}"),
            kind: PointKind::Extra,
        },
        kodaira: KodairaType::IStar(0),
    })
}

fn require_genus0(d: &Dessin) -> Result<()> {
    let g = d.genus();
    if g > 0 {
        return Err(Error::Unsupported(format!("lifting needs genus 0, got genus {g}")));
    }
    Ok(())
}

/// The smaller-defect type at every marked point: II, III, `I_w`.
pub fn minimal_config(d: &Dessin) -> Result<FiberAssignment> {
    require_genus0(d)?;
    let fibers = marked_points(d)
        .into_iter()
        .map(|point| {
            let kodaira = point.kind.class().pick(false);
            Fiber { point, kodaira }
        })
        .collect();
    Ok(FiberAssignment { fibers })
}

/// `Σ e ≡ 0 (mod 12)`: the local twist words then multiply to a power of
/// the central element `(aba)^2` with degree divisible by 12, i.e. to `I`.
pub fn config_valid(c: &FiberAssignment) -> Result<bool> {
    c.check_compatible()?;
    let total = c.euler_total();
    if total % 6 != 0 {
        return Err(Error::Invariant(format!(
            "Euler total {total} of a compatible assignment is not divisible by 6"
        )));
    }
    Ok(total % 12 == 0)
}

pub fn minimal_lift_exists(d: &Dessin) -> Result<bool> {
    let by_et = d.et() % 24 == 0;
    let by_config = config_valid(&minimal_config(d)?)?;
    if by_et != by_config {
        return Err(Error::Invariant(format!(
            "ET rule ({by_et}) and minimal assignment ({by_config}) disagree"
        )));
    }
    Ok(by_et)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SurfaceClass {
    Rational,
    K3,
    General(u32),
}

impl Serialize for SurfaceClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            SurfaceClass::Rational => s.serialize_str("rational"),
            SurfaceClass::K3 => s.serialize_str("K3"),
            SurfaceClass::General(r) => s.collect_str(&format_args!("F{r}")),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SurfaceReport {
    pub euler_total: u32,
    pub r: u32,
    pub deg_j: u32,
    pub df_total: u32,
    pub class: SurfaceClass,
    pub twist_count: usize,
    pub et: usize,
}

/// Global invariants of a valid assignment on a dessin.
pub fn surface_report(c: &FiberAssignment, d: &Dessin) -> Result<SurfaceReport> {
    if !config_valid(c)? {
        return Err(Error::Constraint(format!(
            "Euler total {} is not divisible by 12",
            c.euler_total()
        )));
    }
    let euler_total = c.euler_total();
    let r = euler_total / 12;
    let deg_j: u32 = c.fibers.iter().map(|f| f.kodaira.j_pole()).sum();
    let df_total: u32 = c.fibers.iter().map(|f| f.kodaira.defect()).sum();
    if df_total != 12 * r - deg_j {
        return Err(Error::Invariant("degree defects do not add up".into()));
    }
    let twist_count = c.twist_count();
    let et = d.et();
    if deg_j as usize != d.n() {
        return Err(Error::Invariant(format!(
            "pole total {deg_j} differs from the index {}",
            d.n()
        )));
    }
    if 24 * r as usize != et + 12 * twist_count {
        return Err(Error::Invariant(format!(
            "24r = {} but ET + 12t = {}",
            24 * r,
            et + 12 * twist_count
        )));
    }
    let class = match r {
        1 => SurfaceClass::Rational,
        2 => SurfaceClass::K3,
        r => SurfaceClass::General(r),
    };
    Ok(SurfaceReport {
        euler_total,
        r,
        deg_j,
        df_total,
        class,
        twist_count,
        et,
    })
}

/// All valid assignments on the marked points of `d` plus `extra` points of
/// type `I0*`, with `r ≤ r_max` when given. Ordered by the twist bit vector
/// (bit `i` twists the `i`-th marked point).
pub fn enumerate_configs(
    d: &Dessin,
    extra: usize,
    r_max: Option<u32>,
) -> Result<Vec<(FiberAssignment, SurfaceReport)>> {
    require_genus0(d)?;
    let points = marked_points(d);
    let k = points.len();
    if k >= 63 {
        return Err(Error::Unsupported(format!("{k} marked points is too many to enumerate")));
    }
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << k) {
        let types: Vec<KodairaType> = points
            .iter()
            .enumerate()
            .map(|(i, p)| p.kind.class().pick(mask >> i & 1 == 1))
            .collect();
        let c = FiberAssignment::on_dessin(d, &types, extra)?;
        if !config_valid(&c)? {
            continue;
        }
        let report = surface_report(&c, d)?;
        if r_max.is_some_and(|m| report.r > m) {
            continue;
        }
        out.push((c, report));
    }
    Ok(out)
}

/// Product of the lifted boundary loops: each core is replaced by the
/// representative of its assigned type, and each extra point contributes
/// `-I`.
pub fn monodromy_product(pd: &PointedDessin, c: &FiberAssignment) -> Result<MatSL2> {
    c.check_compatible()?;
    let words = boundary_words(pd)?;
    let marked = c.fibers.len() - c.extra_count();
    if marked != words.len() {
        return Err(Error::Constraint(format!(
            "assignment has {marked} marked points, dessin has {}",
            words.len()
        )));
    }
    let mut prod = MatSL2::identity();
    for bw in &words {
        let t = c
            .get(&bw.point)
            .ok_or_else(|| Error::Constraint(format!("no type for {}", bw.point)))?;
        let expected = match bw.kind {
            MarkKind::A2 => LocalClass::Order3Pos,
            MarkKind::B2 => LocalClass::Order2,
            MarkKind::Cusp => LocalClass::Parabolic(bw.width as u32),
        };
        if t.class() != expected {
            return Err(Error::Constraint(format!("type {t} not allowed at {}", bw.point)));
        }
        let g = word_to_matrix(&bw.conjugator);
        prod = prod.compose(&t.rep().conjugate_by(&g));
    }
    if c.extra_count() % 2 == 1 {
        prod = -prod;
    }
    Ok(prod)
}

pub fn verify_product(pd: &PointedDessin, c: &FiberAssignment) -> Result<bool> {
    Ok(monodromy_product(pd, c)?.is_identity())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::twist_degree;
    use KodairaType::*;

    fn gamma2() -> Dessin {
        Dessin::from_cycles(6, &[vec![1, 4], vec![2, 6], vec![3, 5]], &[vec![1, 2, 3], vec![4, 5, 6]])
            .unwrap()
    }

    #[test]
    fn table_is_consistent() {
        for t in KodairaType::all_up_to(20) {
            assert_eq!(t.euler(), t.defect() + t.j_pole(), "{t}");
            assert_eq!(twist_degree(&t.standard_word()) as u32, t.euler(), "{t}");
            assert_eq!(t.partner().rep(), -t.rep());
            assert_eq!(t.partner().partner(), t);
            assert_eq!(t.euler().abs_diff(t.partner().euler()), 6);
            let class = t.rep().classify();
            assert_eq!(class.sl_order(), t.sl_order(), "{t}");
            assert_eq!(t.standard_word().to_matrix().classify(), class, "{t}");
            assert_eq!(t.to_string().parse::<KodairaType>().unwrap(), t);
        }
        assert_eq!([II.defect(), III.defect(), IV.defect()], [2, 3, 4]);
        assert_eq!([IVStar.defect(), IIIStar.defect(), IIStar.defect()], [8, 9, 10]);
        assert_eq!(IStar(3).defect(), 6);
    }

    #[test]
    fn kodaira_lookup() {
        for t in KodairaType::all_up_to(20) {
            assert_eq!(kodaira_of(&t.rep()), Some(t));
            assert_eq!(kodaira_of(&t.rep().conjugate_by(&MatSL2::from_i64(2, 1, 5, 3).unwrap())), Some(t));
        }
        assert_eq!(kodaira_of(&MatSL2::from_i64(1, -2, 0, 1).unwrap()), None);
        assert_eq!(kodaira_of(&MatSL2::from_i64(2, 1, 1, 1).unwrap()), None);
    }

    #[test]
    fn minimal_examples() {
        let c = minimal_config(&Dessin::trivial()).unwrap();
        assert_eq!(c.types(), vec![II, III, I(1)]);
        assert_eq!(c.euler_total(), 6);
        assert!(!config_valid(&c).unwrap());
        let c = minimal_config(&gamma2()).unwrap();
        assert_eq!(c.types(), vec![I(2), I(2), I(2)]);
        let d = Dessin::from_cycles(3, &[vec![1, 2]], &[vec![1, 2, 3]]).unwrap();
        let c = minimal_config(&d).unwrap();
        assert_eq!(c.euler_total(), 6);
        assert!(!minimal_lift_exists(&d).unwrap());
    }

    #[test]
    fn validity_examples() {
        let g = gamma2();
        let c = FiberAssignment::on_dessin(&g, &[IStar(2), I(2), I(2)], 0).unwrap();
        assert!(config_valid(&c).unwrap());
        let c = FiberAssignment::on_dessin(&Dessin::trivial(), &[II, IIIStar, I(1)], 0).unwrap();
        assert!(config_valid(&c).unwrap());
        let bad = FiberAssignment::on_dessin(&g, &[III, I(2), I(2)], 0).unwrap();
        assert!(matches!(config_valid(&bad), Err(Error::Constraint(m)) if m.contains("cusp:0")));
    }

    #[test]
    fn product_examples() {
        let pd = PointedDessin::new(Dessin::trivial(), 0).unwrap();
        let good = FiberAssignment::on_dessin(pd.dessin(), &[II, IIIStar, I(1)], 0).unwrap();
        assert!(monodromy_product(&pd, &good).unwrap().is_identity());
        let minimal = minimal_config(pd.dessin()).unwrap();
        assert!(monodromy_product(&pd, &minimal).unwrap().is_minus_identity());

        let pd = PointedDessin::new(gamma2(), 0).unwrap();
        let c = FiberAssignment::on_dessin(pd.dessin(), &[IStar(2), I(2), I(2)], 0).unwrap();
        assert!(verify_product(&pd, &c).unwrap());
        let c = FiberAssignment::on_dessin(pd.dessin(), &[I(2), I(2), I(2)], 1).unwrap();
        assert!(verify_product(&pd, &c).unwrap());
        assert!(config_valid(&c).unwrap());
    }

    #[test]
    fn enumeration_examples() {
        let d = Dessin::trivial();
        assert_eq!(enumerate_configs(&d, 0, Some(1)).unwrap().len(), 3);
        let all = enumerate_configs(&d, 0, None).unwrap();
        assert_eq!(all.len(), 4);
        assert_eq!(all.iter().filter(|(_, r)| r.r == 2).count(), 1);

        let g = gamma2();
        let r1 = enumerate_configs(&g, 0, Some(1)).unwrap();
        assert_eq!(r1.len(), 3);
        for (c, _) in &r1 {
            let mut t = c.types();
            t.sort();
            assert_eq!(t, vec![I(2), I(2), IStar(2)]);
        }
        let all = enumerate_configs(&g, 0, Some(2)).unwrap();
        assert_eq!(all.len(), 4);
        assert_eq!(all[3].1.r, 2);
    }

    #[test]
    fn report_examples() {
        let c = FiberAssignment::on_dessin(&Dessin::trivial(), &[II, IIIStar, I(1)], 0).unwrap();
        let r = surface_report(&c, &Dessin::trivial()).unwrap();
        assert_eq!((r.r, r.deg_j, r.df_total, r.class), (1, 1, 11, SurfaceClass::Rational));
        let g = gamma2();
        let c = FiberAssignment::on_dessin(&g, &[IStar(2), I(2), I(2)], 0).unwrap();
        let r = surface_report(&c, &g).unwrap();
        assert_eq!((r.r, r.deg_j, r.df_total), (1, 6, 6));
    }

    #[test]
    fn json_round_trip() {
        let g = gamma2();
        let c = FiberAssignment::on_dessin(&g, &[IStar(2), I(2), I(2)], 1).unwrap();
        let text = c.to_json().to_string();
        assert!(text.contains(r#""type":"I2*""#));
        assert_eq!(FiberAssignment::from_json(&text, &g).unwrap(), c);
    }
}
