//! Lattice model of the boundary of the standard disk-bundle cap.
//!
//! The circle bundle of Euler number `n` over the torus is `R^3 / G` where
//! `G` is generated by
//!
//! ```text
//! alpha1(x,y,z) = (x, y+1, z)
//! alpha2(x,y,z) = (x, y, z+1)
//! alpha3(x,y,z) = (x+1, y, z - n*y)
//! ```
//!
//! Projecting to `x` exhibits it as a torus bundle over the circle whose
//! fiber lattice is spanned by `alpha1` and `alpha2`. Everything here is
//! computed inside `G` with integer parameters, independently of the Dehn
//! twist formulas in [`crate::mcg`].

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::fibration::CompositionOrder;
use crate::mcg::{Handedness, TwistExtraction, UnimodularMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NilError {
    #[error("commutator of alpha1 and alpha3 is {0:?}, not a pure power of alpha2")]
    InvariantViolation(LatticeElement),
    #[error("conjugation moved the fiber lattice off itself: {0:?}")]
    FiberNotPreserved(LatticeElement),
}

/// The affine map `(x,y,z) -> (x+s, y+t, z+u - n*s*y)` for a fixed shear `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticeElement {
    pub s: BigInt,
    pub t: BigInt,
    pub u: BigInt,
}

impl LatticeElement {
    pub fn new(s: impl Into<BigInt>, t: impl Into<BigInt>, u: impl Into<BigInt>) -> Self {
        Self {
            s: s.into(),
            t: t.into(),
            u: u.into(),
        }
    }

    pub fn identity() -> Self {
        Self::new(0, 0, 0)
    }

    pub fn alpha1() -> Self {
        Self::new(0, 1, 0)
    }

    pub fn alpha2() -> Self {
        Self::new(0, 0, 1)
    }

    pub fn alpha3() -> Self {
        Self::new(1, 0, 0)
    }

    pub fn apply(&self, n: &BigInt, p: [&BigInt; 3]) -> [BigInt; 3] {
        let [x, y, z] = p;
        [x + &self.s, y + &self.t, z + &self.u - n * &self.s * y]
    }

    /// `self o other` (apply `other` first).
    pub fn compose(&self, other: &Self, n: &BigInt) -> Self {
        Self {
            s: &self.s + &other.s,
            t: &self.t + &other.t,
            u: &self.u + &other.u - n * &self.s * &other.t,
        }
    }

    pub fn inverse(&self, n: &BigInt) -> Self {
        Self {
            s: -&self.s,
            t: -&self.t,
            u: -&self.u - n * &self.s * &self.t,
        }
    }

    pub fn is_fiber(&self) -> bool {
        self.s.is_zero()
    }
}

/// Direction in which the generator of the base circle acts on the fiber.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Transport {
    /// `g -> alpha3 g alpha3^-1`.
    Pushforward,
    /// `g -> alpha3^-1 g alpha3`.
    Pullback,
}

impl Transport {
    /// Pushforward matches composing later transports on the left; a right
    /// action corresponds to the pullback.
    pub fn for_order(order: CompositionOrder) -> Self {
        match order {
            CompositionOrder::LaterOnLeft => Transport::Pushforward,
            CompositionOrder::LaterOnRight => Transport::Pullback,
        }
    }
}

fn conjugate_by_alpha3(g: &LatticeElement, n: &BigInt, transport: Transport) -> LatticeElement {
    let a3 = LatticeElement::alpha3();
    let a3_inv = a3.inverse(n);
    match transport {
        Transport::Pushforward => a3.compose(g, n).compose(&a3_inv, n),
        Transport::Pullback => a3_inv.compose(g, n).compose(&a3, n),
    }
}

/// Monodromy of the torus bundle `x: R^3/G -> S^1` on `H_1` of the fiber,
/// in the `(alpha1, alpha2)` basis.
pub fn nil_monodromy(n: impl Into<BigInt>) -> UnimodularMatrix {
    nil_monodromy_with(n, Transport::Pushforward).expect("fiber lattice is normal in G")
}

pub fn nil_monodromy_with(
    n: impl Into<BigInt>,
    transport: Transport,
) -> Result<UnimodularMatrix, NilError> {
    let n = n.into();
    let mut columns = Vec::with_capacity(2);
    for basis in [LatticeElement::alpha1(), LatticeElement::alpha2()] {
        let image = conjugate_by_alpha3(&basis, &n, transport);
        if !image.is_fiber() {
            return Err(NilError::FiberNotPreserved(image));
        }
        columns.push((image.t, image.u));
    }
    let (c0, c1) = (columns.remove(0), columns.remove(0));
    Ok(UnimodularMatrix::new(c0.0, c1.0, c0.1, c1.1).expect("conjugation is an automorphism"))
}

/// Euler number of the circle bundle `(x,y): R^3/G -> T^2`, read off as the
/// power of the fiber generator `alpha2` equal to
/// `alpha1 alpha3 alpha1^-1 alpha3^-1`.
pub fn euler_class(n: impl Into<BigInt>) -> Result<BigInt, NilError> {
    let n = n.into();
    let (a1, a3) = (LatticeElement::alpha1(), LatticeElement::alpha3());
    let comm = a1
        .compose(&a3, &n)
        .compose(&a1.inverse(&n), &n)
        .compose(&a3.inverse(&n), &n);
    if !comm.s.is_zero() || !comm.t.is_zero() {
        return Err(NilError::InvariantViolation(comm));
    }
    Ok(comm.u)
}

/// The global sign `sigma` with `nil_monodromy(n) = T_axis^(sigma * n)` under
/// the given conventions, or `None` if the model does not produce a twist
/// power at `n = 1`.
pub fn global_sign(handedness: Handedness, order: CompositionOrder) -> Option<i8> {
    let m = nil_monodromy_with(BigInt::one(), Transport::for_order(order)).ok()?;
    match crate::mcg::extract_twist_power_with(&m, handedness) {
        TwistExtraction::Power { exponent, .. } if exponent == BigInt::one() => Some(1),
        TwistExtraction::Power { exponent, .. } if exponent == -BigInt::one() => Some(-1),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mcg::{classify, CurveClass, MonodromyClass};

    #[test]
    fn composition_law_matches_pointwise_evaluation() {
        let n = BigInt::from(3);
        let elems = [
            LatticeElement::alpha1(),
            LatticeElement::alpha2(),
            LatticeElement::alpha3(),
            LatticeElement::new(2, -1, 5),
            LatticeElement::new(-3, 4, -2),
        ];
        let points = [[0i64, 0, 0], [1, 2, 3], [-4, 7, 1]];
        for a in &elems {
            for b in &elems {
                let ab = a.compose(b, &n);
                for p in &points {
                    let p: [BigInt; 3] = p.map(BigInt::from);
                    let bp = b.apply(&n, [&p[0], &p[1], &p[2]]);
                    let abp = a.apply(&n, [&bp[0], &bp[1], &bp[2]]);
                    assert_eq!(ab.apply(&n, [&p[0], &p[1], &p[2]]), abp);
                }
            }
            assert_eq!(a.compose(&a.inverse(&n), &n), LatticeElement::identity());
            assert_eq!(a.inverse(&n).compose(a, &n), LatticeElement::identity());
        }
    }

    #[test]
    fn generator_alpha3_matches_its_formula() {
        let n = BigInt::from(4);
        let p = [BigInt::from(1), BigInt::from(2), BigInt::from(3)];
        // (x+1, y, z - n y) = (2, 2, 3 - 8).
        assert_eq!(
            LatticeElement::alpha3().apply(&n, [&p[0], &p[1], &p[2]]),
            [BigInt::from(2), BigInt::from(2), BigInt::from(-5)]
        );
    }

    #[test]
    fn monodromy_examples() {
        assert!(nil_monodromy(0).is_identity());
        assert_eq!(
            nil_monodromy(3),
            UnimodularMatrix::from_rows([[1, 0], [-3, 1]])
        );
        assert_eq!(
            classify(&nil_monodromy(3)),
            MonodromyClass::TwistPower {
                axis: CurveClass::b(),
                exponent: BigInt::from(-3)
            }
        );
        let e2 = classify(&nil_monodromy(2));
        let em2 = classify(&nil_monodromy(-2));
        assert_eq!(
            e2.twist_exponent().unwrap(),
            &-em2.twist_exponent().unwrap().clone()
        );
    }

    #[test]
    fn pullback_inverts() {
        for n in -4..=4 {
            let push = nil_monodromy_with(n, Transport::Pushforward).unwrap();
            let pull = nil_monodromy_with(n, Transport::Pullback).unwrap();
            assert!(push.compose(&pull).is_identity());
        }
    }

    #[test]
    fn euler_class_examples() {
        assert_eq!(euler_class(0).unwrap(), BigInt::from(0));
        assert_eq!(euler_class(1).unwrap(), BigInt::from(1));
        assert_eq!(euler_class(-5).unwrap(), BigInt::from(-5));
    }

    #[test]
    fn homomorphism_in_n() {
        for n in -6..=6 {
            for m in -6..=6 {
                assert_eq!(
                    nil_monodromy(n + m),
                    nil_monodromy(n).compose(&nil_monodromy(m))
                );
            }
        }
    }

    #[test]
    fn global_signs() {
        assert_eq!(
            global_sign(Handedness::Right, CompositionOrder::LaterOnLeft),
            Some(-1)
        );
        assert_eq!(
            global_sign(Handedness::Left, CompositionOrder::LaterOnLeft),
            Some(1)
        );
        assert_eq!(
            global_sign(Handedness::Left, CompositionOrder::LaterOnRight),
            Some(-1)
        );
    }
}
