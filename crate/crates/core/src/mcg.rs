//! `SL(2,Z)` as the mapping class group of the torus.
//!
//! Mapping classes are represented by their action on `H_1(T^2; Z)` with the
//! basis `a = (1,0)`, `b = (0,1)`. Matrices act on column vectors, so the
//! image of `a` is the first column.
//!
//! The Dehn twist about a primitive class `v` is
//!
//! ```text
//! T_v(x) = x + s (x ^ v) v,    x ^ v = x1*v2 - x2*v1,
//! ```
//!
//! with `s = +1` for [`Handedness::Right`] (the default) and `s = -1` for
//! [`Handedness::Left`]. The formula is even in `v`, which is why curve
//! classes are stored with a canonical sign.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;
use thiserror::Error;

use crate::serde_int::{self, Int};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum McgError {
    #[error("matrix [[{},{}],[{},{}]] has determinant {det}, expected 1", entries[0], entries[1], entries[2], entries[3])]
    Determinant {
        entries: Box<[BigInt; 4]>,
        det: BigInt,
    },
    #[error("curve class ({p},{q}) is not primitive")]
    NotPrimitive { p: BigInt, q: BigInt },
}

/// A 2x2 integer matrix of determinant one, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnimodularMatrix {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

impl UnimodularMatrix {
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Result<Self, McgError> {
        let (a, b, c, d) = (a.into(), b.into(), c.into(), d.into());
        let det = &a * &d - &b * &c;
        if !det.is_one() {
            return Err(McgError::Determinant {
                entries: Box::new([a, b, c, d]),
                det,
            });
        }
        Ok(Self { a, b, c, d })
    }

    /// Builds from rows; panics on a determinant other than one. Intended
    /// for literals in tests and fixtures.
    pub fn from_rows(rows: [[i64; 2]; 2]) -> Self {
        Self::new(rows[0][0], rows[0][1], rows[1][0], rows[1][1])
            .expect("literal matrix must have determinant 1")
    }

    fn unchecked(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Self {
        debug_assert!((&a * &d - &b * &c).is_one());
        Self { a, b, c, d }
    }

    pub fn identity() -> Self {
        Self::unchecked(BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::one())
    }

    pub fn minus_identity() -> Self {
        Self::unchecked(
            -BigInt::one(),
            BigInt::zero(),
            BigInt::zero(),
            -BigInt::one(),
        )
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

    pub fn rows(&self) -> [[&BigInt; 2]; 2] {
        [[&self.a, &self.b], [&self.c, &self.d]]
    }

    pub fn trace(&self) -> BigInt {
        &self.a + &self.d
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_one() && self.d.is_one() && self.b.is_zero() && self.c.is_zero()
    }

    pub fn is_minus_identity(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.a == -BigInt::one() && self.d == -BigInt::one()
    }

    /// Matrix product `self * rhs`.
    pub fn compose(&self, rhs: &Self) -> Self {
        Self::unchecked(
            &self.a * &rhs.a + &self.b * &rhs.c,
            &self.a * &rhs.b + &self.b * &rhs.d,
            &self.c * &rhs.a + &self.d * &rhs.c,
            &self.c * &rhs.b + &self.d * &rhs.d,
        )
    }

    pub fn inverse(&self) -> Self {
        Self::unchecked(self.d.clone(), -&self.b, -&self.c, self.a.clone())
    }

    pub fn negate(&self) -> Self {
        Self::unchecked(-&self.a, -&self.b, -&self.c, -&self.d)
    }

    /// Integer power by repeated squaring; negative exponents use the inverse.
    pub fn pow(&self, exponent: i64) -> Self {
        let mut base = if exponent < 0 {
            self.inverse()
        } else {
            self.clone()
        };
        let mut e = exponent.unsigned_abs();
        let mut acc = Self::identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            e >>= 1;
        }
        acc
    }

    pub fn apply(&self, x: &BigInt, y: &BigInt) -> (BigInt, BigInt) {
        (&self.a * x + &self.b * y, &self.c * x + &self.d * y)
    }

    /// Image of a curve class, re-canonicalized.
    pub fn act(&self, v: &CurveClass) -> CurveClass {
        let (p, q) = self.apply(&v.p, &v.q);
        // g is invertible over Z, so primitivity is preserved.
        CurveClass::canonical(p, q)
    }
}

impl Mul for &UnimodularMatrix {
    type Output = UnimodularMatrix;
    fn mul(self, rhs: Self) -> UnimodularMatrix {
        self.compose(rhs)
    }
}

impl fmt::Display for UnimodularMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

impl Serialize for UnimodularMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let rows = [[Int(&self.a), Int(&self.b)], [Int(&self.c), Int(&self.d)]];
        let mut seq = serializer.serialize_seq(Some(2))?;
        for row in &rows {
            seq.serialize_element(row)?;
        }
        seq.end()
    }
}

/// `compose(A, B) = A * B`.
pub fn compose(a: &UnimodularMatrix, b: &UnimodularMatrix) -> UnimodularMatrix {
    a.compose(b)
}

/// `g * m * g^-1`.
pub fn conjugate(g: &UnimodularMatrix, m: &UnimodularMatrix) -> UnimodularMatrix {
    g.compose(m).compose(&g.inverse())
}

/// Isotopy class of an essential simple closed curve on the torus: a
/// primitive vector `(p, q)`, stored with `q > 0`, or `q = 0` and `p > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CurveClass {
    p: BigInt,
    q: BigInt,
}

impl CurveClass {
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Self, McgError> {
        let (p, q) = (p.into(), q.into());
        if !p.gcd(&q).is_one() {
            return Err(McgError::NotPrimitive { p, q });
        }
        Ok(Self::canonical(p, q))
    }

    /// Caller guarantees primitivity.
    pub(crate) fn canonical(p: BigInt, q: BigInt) -> Self {
        debug_assert!(p.gcd(&q).is_one());
        if q.is_negative() || (q.is_zero() && p.is_negative()) {
            Self { p: -p, q: -q }
        } else {
            Self { p, q }
        }
    }

    /// The class `a = (1,0)`.
    pub fn a() -> Self {
        Self {
            p: BigInt::one(),
            q: BigInt::zero(),
        }
    }

    /// The class `b = (0,1)`.
    pub fn b() -> Self {
        Self {
            p: BigInt::zero(),
            q: BigInt::one(),
        }
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }
    pub fn q(&self) -> &BigInt {
        &self.q
    }

    /// Largest absolute coordinate.
    pub fn height(&self) -> BigInt {
        self.p.abs().max(self.q.abs())
    }
}

impl fmt::Display for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

impl Serialize for CurveClass {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        [Int(&self.p), Int(&self.q)].serialize(serializer)
    }
}

/// `x ^ v = x1*v2 - x2*v1`.
pub fn wedge(x: (&BigInt, &BigInt), v: (&BigInt, &BigInt)) -> BigInt {
    x.0 * v.1 - x.1 * v.0
}

/// Sign convention for Dehn twists.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Handedness {
    /// `T_v(x) = x + (x ^ v) v`.
    #[default]
    Right,
    /// `T_v(x) = x - (x ^ v) v`.
    Left,
}

impl Handedness {
    pub fn flipped(self) -> Self {
        match self {
            Handedness::Right => Handedness::Left,
            Handedness::Left => Handedness::Right,
        }
    }

    fn sign(self) -> i32 {
        match self {
            Handedness::Right => 1,
            Handedness::Left => -1,
        }
    }

    /// Dehn twist about `v` under this convention.
    pub fn twist(self, v: &CurveClass) -> UnimodularMatrix {
        self.twist_power(v, &BigInt::one())
    }

    /// `T_v^n`, using `T_v^n = I + n s v (v^perp)^T` rather than repeated
    /// multiplication.
    pub fn twist_power(self, v: &CurveClass, n: &BigInt) -> UnimodularMatrix {
        let k = n * self.sign();
        let (p, q) = (&v.p, &v.q);
        UnimodularMatrix::unchecked(
            BigInt::one() + &k * p * q,
            -(&k * p * p),
            &k * q * q,
            BigInt::one() - &k * p * q,
        )
    }

    pub fn description(self) -> &'static str {
        match self {
            Handedness::Right => "T_v(x) = x + (x^v) v with x^v = x1*v2 - x2*v1",
            Handedness::Left => "T_v(x) = x - (x^v) v with x^v = x1*v2 - x2*v1",
        }
    }
}

/// Dehn twist about `v` under the default right-handed convention.
pub fn twist_matrix(v: &CurveClass) -> UnimodularMatrix {
    Handedness::Right.twist(v)
}

/// Result of asking whether a matrix is a power of a single Dehn twist.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TwistExtraction {
    /// The identity: exponent zero, no axis.
    Trivial,
    Power {
        axis: CurveClass,
        exponent: BigInt,
    },
    NotATwistPower,
}

impl TwistExtraction {
    pub fn exponent(&self) -> Option<BigInt> {
        match self {
            TwistExtraction::Trivial => Some(BigInt::zero()),
            TwistExtraction::Power { exponent, .. } => Some(exponent.clone()),
            TwistExtraction::NotATwistPower => None,
        }
    }

    pub fn axis(&self) -> Option<&CurveClass> {
        match self {
            TwistExtraction::Power { axis, .. } => Some(axis),
            _ => None,
        }
    }
}

pub fn extract_twist_power(m: &UnimodularMatrix) -> TwistExtraction {
    extract_twist_power_with(m, Handedness::Right)
}

/// Recovers `(v, n)` with `m = T_v^n` from the kernel of `m - I` and the
/// shear it induces on a complementary vector.
pub fn extract_twist_power_with(m: &UnimodularMatrix, handedness: Handedness) -> TwistExtraction {
    if m.is_identity() {
        return TwistExtraction::Trivial;
    }
    if m.trace() != BigInt::from(2) {
        return TwistExtraction::NotATwistPower;
    }
    // m - I has rank one; any nonzero row r spans its row space and the
    // kernel is r^perp.
    let n00 = &m.a - BigInt::one();
    let n11 = &m.d - BigInt::one();
    let (r0, r1) = if !n00.is_zero() || !m.b.is_zero() {
        (n00, m.b.clone())
    } else {
        (m.c.clone(), n11)
    };
    let g = r0.gcd(&r1);
    let axis = CurveClass::canonical(&r1 / &g, -(&r0 / &g));

    // Find x with x ^ v = x1*q - x2*p = 1.
    let egcd = axis.q.extended_gcd(&(-&axis.p));
    let (x1, x2) = if egcd.gcd.is_negative() {
        (-egcd.x, -egcd.y)
    } else {
        (egcd.x, egcd.y)
    };
    let (y1, y2) = m.apply(&x1, &x2);
    let (d1, d2) = (y1 - &x1, y2 - &x2);
    let shear = if !axis.p.is_zero() {
        &d1 / &axis.p
    } else {
        &d2 / &axis.q
    };
    if &shear * &axis.p != d1 || &shear * &axis.q != d2 {
        return TwistExtraction::NotATwistPower;
    }
    let exponent = shear * handedness.sign();
    if handedness.twist_power(&axis, &exponent) != *m {
        return TwistExtraction::NotATwistPower;
    }
    TwistExtraction::Power { axis, exponent }
}

/// Conjugacy-type classification of a monodromy matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MonodromyClass {
    Identity,
    TwistPower {
        axis: CurveClass,
        #[serde(serialize_with = "serde_int::serialize")]
        exponent: BigInt,
    },
    /// `-T_v^n` with `n != 0`.
    NegativeParabolic {
        axis: CurveClass,
        #[serde(serialize_with = "serde_int::serialize")]
        exponent: BigInt,
    },
    MinusIdentity,
    Elliptic {
        order: u8,
    },
    Hyperbolic {
        #[serde(serialize_with = "serde_int::serialize")]
        trace: BigInt,
    },
}

impl MonodromyClass {
    pub fn branch(&self) -> &'static str {
        match self {
            MonodromyClass::Identity => "identity",
            MonodromyClass::TwistPower { .. } => "twist_power",
            MonodromyClass::NegativeParabolic { .. } => "negative_parabolic",
            MonodromyClass::MinusIdentity => "minus_identity",
            MonodromyClass::Elliptic { .. } => "elliptic",
            MonodromyClass::Hyperbolic { .. } => "hyperbolic",
        }
    }

    /// Identity or a nonzero twist power: the boundary monodromies that a
    /// standard cap can match.
    pub fn is_twist_power_or_identity(&self) -> bool {
        matches!(
            self,
            MonodromyClass::Identity | MonodromyClass::TwistPower { .. }
        )
    }

    pub fn twist_exponent(&self) -> Option<&BigInt> {
        match self {
            MonodromyClass::TwistPower { exponent, .. } => Some(exponent),
            _ => None,
        }
    }
}

impl fmt::Display for MonodromyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonodromyClass::Identity => write!(f, "identity"),
            MonodromyClass::TwistPower { axis, exponent } => {
                write!(f, "twist power T_{axis}^{exponent}")
            }
            MonodromyClass::NegativeParabolic { axis, exponent } => {
                write!(f, "negative parabolic -T_{axis}^{exponent}")
            }
            MonodromyClass::MinusIdentity => write!(f, "minus identity"),
            MonodromyClass::Elliptic { order } => write!(f, "elliptic of order {order}"),
            MonodromyClass::Hyperbolic { trace } => write!(f, "hyperbolic with trace {trace}"),
        }
    }
}

pub fn classify(m: &UnimodularMatrix) -> MonodromyClass {
    classify_with(m, Handedness::Right)
}

pub fn classify_with(m: &UnimodularMatrix, handedness: Handedness) -> MonodromyClass {
    if m.is_identity() {
        return MonodromyClass::Identity;
    }
    if m.is_minus_identity() {
        return MonodromyClass::MinusIdentity;
    }
    let trace = m.trace();
    if trace.abs() >= BigInt::from(3) {
        return MonodromyClass::Hyperbolic { trace };
    }
    match trace.to_i32().expect("|trace| <= 2") {
        2 => match extract_twist_power_with(m, handedness) {
            TwistExtraction::Power { axis, exponent } => {
                MonodromyClass::TwistPower { axis, exponent }
            }
            other => unreachable!("trace-2 non-identity matrix {m} gave {other:?}"),
        },
        -2 => match extract_twist_power_with(&m.negate(), handedness) {
            TwistExtraction::Power { axis, exponent } => {
                MonodromyClass::NegativeParabolic { axis, exponent }
            }
            other => unreachable!("trace -2 matrix {m} gave {other:?}"),
        },
        0 => MonodromyClass::Elliptic { order: 4 },
        1 => MonodromyClass::Elliptic { order: 6 },
        -1 => MonodromyClass::Elliptic { order: 3 },
        _ => unreachable!(),
    }
}
