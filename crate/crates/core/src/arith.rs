//! Exact arithmetic in `SL(2,Z)` and `PSL(2,Z) = Z2 * Z3`.
//!
//! Generator convention: `σ = [S]` with `S = (0,-1;1,0)` and `υ = [ST]` with
//! `ST = (0,-1;1,1)`. With this choice `[T] = συ` where `T = (1,1;0,1)`.
//! Matrices carry unbounded integers; no operation here can overflow.

use std::fmt;
use std::ops::{Mul, Neg};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An element of `SL(2,Z)`, row-major `(a, b; c, d)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MatSL2 {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

impl MatSL2 {
    pub fn new(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Result<Self> {
        if &a * &d - &b * &c != BigInt::one() {
            return Err(Error::Malformed(format!(
                "determinant of [[{a},{b}],[{c},{d}]] is not 1"
            )));
        }
        Ok(MatSL2 { a, b, c, d })
    }

    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        Self::new(a.into(), b.into(), c.into(), d.into())
    }

    fn raw(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Self {
        debug_assert!(&a * &d - &b * &c == BigInt::one());
        MatSL2 { a, b, c, d }
    }

    fn small(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self::raw(a.into(), b.into(), c.into(), d.into())
    }

    pub fn identity() -> Self {
        Self::small(1, 0, 0, 1)
    }

    pub fn minus_identity() -> Self {
        Self::small(-1, 0, 0, -1)
    }

    /// `S = (0,-1;1,0)`, the order-4 lift of `σ`.
    pub fn s() -> Self {
        Self::small(0, -1, 1, 0)
    }

    /// `T = (1,1;0,1)`.
    pub fn t() -> Self {
        Self::small(1, 1, 0, 1)
    }

    /// `ST = (0,-1;1,1)`, the order-6 lift of `υ`.
    pub fn st() -> Self {
        Self::small(0, -1, 1, 1)
    }

    /// `T^k` for any integer `k`.
    pub fn t_pow(k: &BigInt) -> Self {
        Self::raw(BigInt::one(), k.clone(), BigInt::zero(), BigInt::one())
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }
    pub fn b(&self) -> &BigInt {
        &self.b
    }
    pub fn c(&self) -> &BigInt {
        &self.c
    }
    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn compose(&self, other: &MatSL2) -> MatSL2 {
        MatSL2::raw(
            &self.a * &other.a + &self.b * &other.c,
            &self.a * &other.b + &self.b * &other.d,
            &self.c * &other.a + &self.d * &other.c,
            &self.c * &other.b + &self.d * &other.d,
        )
    }

    pub fn inverse(&self) -> MatSL2 {
        MatSL2::raw(self.d.clone(), -&self.b, -&self.c, self.a.clone())
    }

    pub fn pow(&self, exp: i64) -> MatSL2 {
        let base = if exp < 0 { self.inverse() } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = MatSL2::identity();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&sq);
            }
            sq = sq.compose(&sq);
            e >>= 1;
        }
        acc
    }

    /// `g · self · g⁻¹`.
    pub fn conjugate_by(&self, g: &MatSL2) -> MatSL2 {
        g.compose(self).compose(&g.inverse())
    }

    pub fn trace(&self) -> BigInt {
        &self.a + &self.d
    }

    pub fn is_identity(&self) -> bool {
        *self == MatSL2::identity()
    }

    pub fn is_minus_identity(&self) -> bool {
        *self == MatSL2::minus_identity()
    }

    /// Equality in `PSL(2,Z)`.
    pub fn psl_eq(&self, other: &MatSL2) -> bool {
        self == other || *self == -other
    }

    pub fn classify(&self) -> ElementClass {
        classify_element(self)
    }
}

impl Mul for &MatSL2 {
    type Output = MatSL2;
    fn mul(self, rhs: &MatSL2) -> MatSL2 {
        self.compose(rhs)
    }
}

impl Mul for MatSL2 {
    type Output = MatSL2;
    fn mul(self, rhs: MatSL2) -> MatSL2 {
        self.compose(&rhs)
    }
}

impl Neg for &MatSL2 {
    type Output = MatSL2;
    fn neg(self) -> MatSL2 {
        MatSL2::raw(-&self.a, -&self.b, -&self.c, -&self.d)
    }
}

impl Neg for MatSL2 {
    type Output = MatSL2;
    fn neg(self) -> MatSL2 {
        -&self
    }
}

impl fmt::Display for MatSL2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

impl FromStr for MatSL2 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = cleaned
            .strip_prefix("[[")
            .and_then(|r| r.strip_suffix("]]"))
            .ok_or_else(|| Error::Parse(format!("matrix literal expected, got {s:?}")))?;
        let rows: Vec<&str> = inner.split("],[").collect();
        if rows.len() != 2 {
            return Err(Error::Parse(format!("matrix literal needs two rows: {s:?}")));
        }
        let mut entries = Vec::with_capacity(4);
        for row in rows {
            for tok in row.split(',') {
                let v: BigInt = tok
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad matrix entry {tok:?}")))?;
                entries.push(v);
            }
        }
        if entries.len() != 4 {
            return Err(Error::Parse(format!("matrix literal needs four entries: {s:?}")));
        }
        let d = entries.pop().unwrap();
        let c = entries.pop().unwrap();
        let b = entries.pop().unwrap();
        let a = entries.pop().unwrap();
        MatSL2::new(a, b, c, d)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Entry {
    Int(i64),
    Text(String),
}

impl Entry {
    fn from_big(v: &BigInt) -> Entry {
        match v.to_i64() {
            Some(x) => Entry::Int(x),
            None => Entry::Text(v.to_string()),
        }
    }

    fn into_big(self) -> std::result::Result<BigInt, String> {
        match self {
            Entry::Int(x) => Ok(x.into()),
            Entry::Text(s) => s.parse().map_err(|_| format!("bad integer {s:?}")),
        }
    }
}

impl Serialize for MatSL2 {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let rows = [
            [Entry::from_big(&self.a), Entry::from_big(&self.b)],
            [Entry::from_big(&self.c), Entry::from_big(&self.d)],
        ];
        rows.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MatSL2 {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let [[a, b], [c, d]] = <[[Entry; 2]; 2]>::deserialize(deserializer)?;
        let conv = |e: Entry| e.into_big().map_err(D::Error::custom);
        MatSL2::new(conv(a)?, conv(b)?, conv(c)?, conv(d)?).map_err(D::Error::custom)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// Conjugacy data of an element of `SL(2,Z)`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "class", rename_all = "lowercase")]
pub enum ElementClass {
    Identity,
    MinusIdentity,
    /// Finite order other than 1, 2. `positive` is the sign of the lower-left
    /// entry, which separates the two `SL(2,Z)` classes of each order.
    Elliptic { sl_order: u8, positive: bool },
    /// Conjugate to `sign · T^power` with `power ≠ 0`; the width is `|power|`.
    Parabolic {
        sign: Sign,
        #[serde(serialize_with = "ser_big")]
        power: BigInt,
    },
    Hyperbolic,
}

fn ser_big<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    Entry::from_big(v).serialize(s)
}

impl ElementClass {
    /// Order in `SL(2,Z)`; `None` for infinite order.
    pub fn sl_order(&self) -> Option<u8> {
        match self {
            ElementClass::Identity => Some(1),
            ElementClass::MinusIdentity => Some(2),
            ElementClass::Elliptic { sl_order, .. } => Some(*sl_order),
            _ => None,
        }
    }

    /// Order of the image in `PSL(2,Z)`; `None` for infinite order.
    pub fn psl_order(&self) -> Option<u8> {
        match self {
            ElementClass::Identity | ElementClass::MinusIdentity => Some(1),
            ElementClass::Elliptic { sl_order: 4, .. } => Some(2),
            ElementClass::Elliptic { .. } => Some(3),
            _ => None,
        }
    }

    pub fn width(&self) -> Option<BigInt> {
        match self {
            ElementClass::Parabolic { power, .. } => Some(power.abs()),
            _ => None,
        }
    }
}

pub fn compose(m1: &MatSL2, m2: &MatSL2) -> MatSL2 {
    m1.compose(m2)
}

pub fn classify_element(m: &MatSL2) -> ElementClass {
    let tr = m.trace();
    let two = BigInt::from(2);
    if tr.abs() > two {
        return ElementClass::Hyperbolic;
    }
    let t = tr.to_i64().expect("trace bounded by 2");
    match t {
        2 | -2 => {
            let sign = if t == 2 { Sign::Plus } else { Sign::Minus };
            // sign·m = I + N with N nilpotent of the form k·(-xy, x²; -y², xy)
            let eps = BigInt::from(sign.as_i8());
            let p = &m.a * &eps - BigInt::one();
            let q = &m.b * &eps;
            let r = &m.c * &eps;
            if p.is_zero() && q.is_zero() && r.is_zero() {
                return if t == 2 {
                    ElementClass::Identity
                } else {
                    ElementClass::MinusIdentity
                };
            }
            let g = p.gcd(&q).gcd(&r);
            let power = if (&q - &r).is_positive() { g } else { -g };
            ElementClass::Parabolic { sign, power }
        }
        0 => ElementClass::Elliptic {
            sl_order: 4,
            positive: m.c.is_positive(),
        },
        1 => ElementClass::Elliptic {
            sl_order: 6,
            positive: m.c.is_positive(),
        },
        -1 => ElementClass::Elliptic {
            sl_order: 3,
            positive: m.c.is_positive(),
        },
        _ => unreachable!(),
    }
}

/// A letter of the free product `Z2 * Z3`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum PslLetter {
    /// `σ`, the order-2 generator.
    S,
    /// `υ`, the order-3 generator.
    U,
    /// `υ²`.
    U2,
}

impl PslLetter {
    fn z3_exp(self) -> Option<u8> {
        match self {
            PslLetter::S => None,
            PslLetter::U => Some(1),
            PslLetter::U2 => Some(2),
        }
    }

    pub fn inverse(self) -> PslLetter {
        match self {
            PslLetter::S => PslLetter::S,
            PslLetter::U => PslLetter::U2,
            PslLetter::U2 => PslLetter::U,
        }
    }

    /// Fixed `SL(2,Z)` representative: `σ ↦ S`, `υ ↦ ST`, `υ² ↦ (ST)²`.
    pub fn matrix(self) -> MatSL2 {
        match self {
            PslLetter::S => MatSL2::s(),
            PslLetter::U => MatSL2::st(),
            PslLetter::U2 => MatSL2::small(-1, -1, 1, 0),
        }
    }

    fn token(self) -> &'static str {
        match self {
            PslLetter::S => "s",
            PslLetter::U => "u",
            PslLetter::U2 => "u2",
        }
    }
}

/// An element of `PSL(2,Z)` in alternating normal form.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord)]
pub struct PslWord(Vec<PslLetter>);

impl PslWord {
    pub fn identity() -> Self {
        PslWord(Vec::new())
    }

    /// Accepts only words already in alternating normal form.
    pub fn new(letters: Vec<PslLetter>) -> Result<Self> {
        for w in letters.windows(2) {
            let same_factor = w[0].z3_exp().is_some() == w[1].z3_exp().is_some();
            if same_factor {
                return Err(Error::Malformed(format!(
                    "word not alternating at {:?}{:?}",
                    w[0], w[1]
                )));
            }
        }
        Ok(PslWord(letters))
    }

    /// Multiplies out an arbitrary letter sequence into normal form.
    pub fn reduce<I: IntoIterator<Item = PslLetter>>(letters: I) -> Self {
        let mut w = PslWord::identity();
        for l in letters {
            w.push(l);
        }
        w
    }

    pub fn letter(l: PslLetter) -> Self {
        PslWord(vec![l])
    }

    /// Right-multiplies by one letter, keeping the normal form.
    pub fn push(&mut self, l: PslLetter) {
        match (self.0.last().copied(), l) {
            (Some(PslLetter::S), PslLetter::S) => {
                self.0.pop();
            }
            (Some(top), _) if top.z3_exp().is_some() && l.z3_exp().is_some() => {
                let e = (top.z3_exp().unwrap() + l.z3_exp().unwrap()) % 3;
                self.0.pop();
                match e {
                    1 => self.0.push(PslLetter::U),
                    2 => self.0.push(PslLetter::U2),
                    _ => {}
                }
            }
            _ => self.0.push(l),
        }
    }

    pub fn letters(&self) -> &[PslLetter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &PslWord) -> PslWord {
        let mut w = self.clone();
        for &l in &other.0 {
            w.push(l);
        }
        w
    }

    pub fn inverse(&self) -> PslWord {
        PslWord(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn pow(&self, exp: u32) -> PslWord {
        let mut w = PslWord::identity();
        for _ in 0..exp {
            w = w.concat(self);
        }
        w
    }

    /// `g · self · g⁻¹`.
    pub fn conjugate_by(&self, g: &PslWord) -> PslWord {
        g.concat(self).concat(&g.inverse())
    }

    /// `T^k` in normal form: `(συ)^k`, or `(υ²σ)^|k|` for negative `k`.
    pub fn t_power(k: i64) -> PslWord {
        let unit = if k >= 0 {
            [PslLetter::S, PslLetter::U]
        } else {
            [PslLetter::U2, PslLetter::S]
        };
        PslWord::reduce(std::iter::repeat(unit).take(k.unsigned_abs() as usize).flatten())
    }
}

impl fmt::Display for PslWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let toks: Vec<&str> = self.0.iter().map(|l| l.token()).collect();
        write!(f, "{}", toks.join(" "))
    }
}

impl FromStr for PslWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut letters = Vec::new();
        for tok in s.split_whitespace() {
            letters.push(match tok {
                "s" => PslLetter::S,
                "u" => PslLetter::U,
                "u2" => PslLetter::U2,
                "1" => continue,
                _ => return Err(Error::Parse(format!("unknown word letter {tok:?}"))),
            });
        }
        PslWord::new(letters)
    }
}

impl Serialize for PslWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PslWord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Canonical lift of a normal-form word.
pub fn word_to_matrix(w: &PslWord) -> MatSL2 {
    w.0.iter()
        .fold(MatSL2::identity(), |acc, l| acc.compose(&l.matrix()))
}

/// Normal form of the image of `m` in `PSL(2,Z)`, together with the sign
/// `ε` such that `word_to_matrix(word) = ε · m`.
pub fn matrix_to_word(m: &MatSL2) -> (PslWord, i8) {
    enum Step {
        S,
        TPow(BigInt),
    }
    let mut cur = m.clone();
    let mut steps = Vec::new();
    while !cur.c.is_zero() {
        if cur.a.abs() < cur.c.abs() {
            cur = MatSL2::s().compose(&cur);
            steps.push(Step::S);
        } else {
            let q = cur.a.div_floor(&cur.c);
            cur = MatSL2::raw(
                &cur.a - &q * &cur.c,
                &cur.b - &q * &cur.d,
                cur.c.clone(),
                cur.d.clone(),
            );
            steps.push(Step::TPow(-q));
        }
    }
    // cur = ±T^(a·b), and m = L₁⁻¹ ⋯ L_k⁻¹ · cur
    let tail = &cur.a * &cur.b;
    let mut word = PslWord::identity();
    for step in &steps {
        match step {
            Step::S => word.push(PslLetter::S),
            Step::TPow(k) => {
                let k = k.to_i64().expect("Euclidean quotient fits in i64");
                word = word.concat(&PslWord::t_power(-k));
            }
        }
    }
    let tail = tail
        .to_i64()
        .expect("parabolic tail of a reduced matrix fits in i64");
    word = word.concat(&PslWord::t_power(tail));
    let lifted = word_to_matrix(&word);
    let sign = if lifted == *m {
        1
    } else {
        debug_assert!(lifted == -m);
        -1
    };
    (word, sign)
}

/// A letter of the braid group on three strands, generated by the right
/// Dehn twists `a` and `b`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum TwistLetter {
    A,
    AInv,
    B,
    BInv,
}

impl TwistLetter {
    /// Images `a ↦ T`, `b ↦ (1,0;-1,1)`.
    pub fn matrix(self) -> MatSL2 {
        match self {
            TwistLetter::A => MatSL2::t(),
            TwistLetter::AInv => MatSL2::small(1, -1, 0, 1),
            TwistLetter::B => MatSL2::small(1, 0, -1, 1),
            TwistLetter::BInv => MatSL2::small(1, 0, 1, 1),
        }
    }

    fn degree(self) -> i64 {
        match self {
            TwistLetter::A | TwistLetter::B => 1,
            TwistLetter::AInv | TwistLetter::BInv => -1,
        }
    }

    fn token(self) -> &'static str {
        match self {
            TwistLetter::A => "a",
            TwistLetter::AInv => "A",
            TwistLetter::B => "b",
            TwistLetter::BInv => "B",
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct TwistWord(Vec<TwistLetter>);

impl TwistWord {
    pub fn new(letters: Vec<TwistLetter>) -> Self {
        TwistWord(letters)
    }

    pub fn letters(&self) -> &[TwistLetter] {
        &self.0
    }

    /// The central element `(aba)²`.
    pub fn central() -> Self {
        use TwistLetter::*;
        TwistWord(vec![A, B, A, A, B, A])
    }

    pub fn concat(&self, other: &TwistWord) -> TwistWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        TwistWord(v)
    }

    pub fn repeat(&self, times: usize) -> TwistWord {
        TwistWord(self.0.repeat(times))
    }

    pub fn to_matrix(&self) -> MatSL2 {
        self.0
            .iter()
            .fold(MatSL2::identity(), |acc, l| acc.compose(&l.matrix()))
    }

    /// Whether adjacent inverse pairs have been cancelled.
    pub fn is_freely_reduced(&self) -> bool {
        self.0.windows(2).all(|w| {
            !matches!(
                (w[0], w[1]),
                (TwistLetter::A, TwistLetter::AInv)
                    | (TwistLetter::AInv, TwistLetter::A)
                    | (TwistLetter::B, TwistLetter::BInv)
                    | (TwistLetter::BInv, TwistLetter::B)
            )
        })
    }
}

impl fmt::Display for TwistWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let toks: Vec<&str> = self.0.iter().map(|l| l.token()).collect();
        write!(f, "{}", toks.join(" "))
    }
}

impl FromStr for TwistWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut v = Vec::new();
        for tok in s.split_whitespace() {
            v.push(match tok {
                "a" => TwistLetter::A,
                "A" | "a^-1" => TwistLetter::AInv,
                "b" => TwistLetter::B,
                "B" | "b^-1" => TwistLetter::BInv,
                "1" => continue,
                _ => return Err(Error::Parse(format!("unknown twist letter {tok:?}"))),
            });
        }
        Ok(TwistWord(v))
    }
}

/// The degree homomorphism `χ` of the braid group: every right Dehn twist
/// has degree one.
pub fn twist_degree(w: &TwistWord) -> i64 {
    w.0.iter().map(|l| l.degree()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(a: i64, b: i64, c: i64, d: i64) -> MatSL2 {
        MatSL2::from_i64(a, b, c, d).unwrap()
    }

    #[test]
    fn compose_examples() {
        let x = m(2, 3, 1, 2);
        assert_eq!(compose(&MatSL2::identity(), &x), x);
        assert_eq!(compose(&MatSL2::s(), &MatSL2::t()), m(0, -1, 1, 1));
        assert_eq!(compose(&MatSL2::s(), &MatSL2::s()), MatSL2::minus_identity());
    }

    #[test]
    fn bad_determinant_rejected() {
        assert!(matches!(
            MatSL2::from_i64(1, 1, 1, 1),
            Err(Error::Malformed(_))
        ));
        assert!("[[2,0],[0,1]]".parse::<MatSL2>().is_err());
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify_element(&MatSL2::identity()), ElementClass::Identity);
        assert_eq!(
            classify_element(&m(1, 5, 0, 1)),
            ElementClass::Parabolic {
                sign: Sign::Plus,
                power: 5.into()
            }
        );
        let st = classify_element(&m(0, -1, 1, 1));
        assert_eq!(st.sl_order(), Some(6));
        assert_eq!(st.psl_order(), Some(3));
        assert_eq!(classify_element(&m(2, 1, 1, 1)), ElementClass::Hyperbolic);
        assert_eq!(
            classify_element(&m(-1, 3, 0, -1)),
            ElementClass::Parabolic {
                sign: Sign::Minus,
                power: (-3).into()
            }
        );
    }

    #[test]
    fn word_examples() {
        let (w, sign) = matrix_to_word(&MatSL2::minus_identity());
        assert!(w.is_empty());
        assert_eq!(sign, -1);

        let (w, sign) = matrix_to_word(&MatSL2::t());
        assert_eq!(w.to_string(), "s u");
        assert_eq!(sign, -1);

        assert_eq!(word_to_matrix(&PslWord::identity()), MatSL2::identity());
        assert_eq!(word_to_matrix(&"s".parse().unwrap()), m(0, -1, 1, 0));
        assert_eq!(word_to_matrix(&"u2".parse().unwrap()), m(-1, -1, 1, 0));
        assert!("s s".parse::<PslWord>().is_err());
        assert!("u u2".parse::<PslWord>().is_err());
    }

    #[test]
    fn twist_degree_examples() {
        assert_eq!(twist_degree(&TwistWord::default()), 0);
        assert_eq!(twist_degree(&TwistWord::central()), 6);
        assert_eq!(twist_degree(&"a b a B".parse().unwrap()), 2);
        assert!(TwistWord::central().to_matrix().is_minus_identity());
        assert!(!"a A".parse::<TwistWord>().unwrap().is_freely_reduced());
    }

    #[test]
    fn literal_round_trip() {
        let x = m(7, 3, -12, -5);
        assert_eq!(x.to_string().parse::<MatSL2>().unwrap(), x);
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(json, "[[7,3],[-12,-5]]");
        assert_eq!(serde_json::from_str::<MatSL2>(&json).unwrap(), x);
    }

    fn letter() -> impl Strategy<Value = PslLetter> {
        prop_oneof![Just(PslLetter::S), Just(PslLetter::U), Just(PslLetter::U2)]
    }

    fn element() -> impl Strategy<Value = MatSL2> {
        prop::collection::vec(letter(), 0..40).prop_map(|ls| {
            ls.iter()
                .fold(MatSL2::identity(), |acc, l| acc.compose(&l.matrix()))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn word_round_trip(x in element()) {
            let (w, sign) = matrix_to_word(&x);
            let back = word_to_matrix(&w);
            if sign == 1 { prop_assert_eq!(back, x); } else { prop_assert_eq!(back, -x); }
        }

        #[test]
        fn normal_form_is_unique(ls in prop::collection::vec(letter(), 0..30)) {
            let reduced = PslWord::reduce(ls.iter().copied());
            let (w, _) = matrix_to_word(&word_to_matrix(&reduced));
            prop_assert_eq!(w, reduced);
        }

        #[test]
        fn classification_is_conjugation_invariant(x in element(), g in element()) {
            prop_assert_eq!(classify_element(&x), classify_element(&x.conjugate_by(&g)));
        }

        #[test]
        fn determinant_preserved(x in element(), y in element()) {
            let z = compose(&x, &y);
            prop_assert!(MatSL2::new(z.a().clone(), z.b().clone(), z.c().clone(), z.d().clone()).is_ok());
        }

        #[test]
        fn twist_degree_is_additive(u in "[aAbB ]{0,20}", v in "[aAbB ]{0,20}") {
            let spaced = |s: &str| s.chars().filter(|c| !c.is_whitespace()).map(|c| c.to_string()).collect::<Vec<_>>().join(" ");
            let u: TwistWord = spaced(&u).parse().unwrap();
            let v: TwistWord = spaced(&v).parse().unwrap();
            prop_assert_eq!(twist_degree(&u.concat(&v)), twist_degree(&u) + twist_degree(&v));
        }
    }

    #[test]
    fn elliptic_orders_are_three_four_six() {
        let mut orders = std::collections::BTreeSet::new();
        for l in [PslLetter::S, PslLetter::U, PslLetter::U2] {
            for g in [MatSL2::t(), m(2, 1, 1, 1), m(1, 0, 3, 1)] {
                let x = l.matrix().conjugate_by(&g);
                for y in [x.clone(), -x] {
                    orders.insert(classify_element(&y).sl_order().unwrap());
                }
            }
        }
        assert_eq!(orders.into_iter().collect::<Vec<_>>(), vec![3, 4, 6]);
    }
}
