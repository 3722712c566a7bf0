//! Sign conventions realized by a run, embedded in every report.
//!
//! Exponents of twist powers only mean something relative to a twist
//! handedness and a composition order, so each report records both together
//! with the two global signs they produce:
//!
//! * `sigma_cap`: `nil_monodromy(n) = T_b^(sigma_cap * n)` in the lattice model
//!   of the standard cap;
//! * `sigma_family`: the boundary monodromy of the `3 CP2` reference word is
//!   `T_b^(sigma_family * 9)`.

use num_bigint::BigInt;
use serde::Serialize;

use crate::fibration::{total_monodromy_with, Convention};
use crate::mcg::{extract_twist_power_with, CurveClass, TwistExtraction};
use crate::niloracle::{self, Transport};
use crate::reference::family_word;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConventionLedger {
    pub handedness: &'static str,
    pub composition_order: &'static str,
    pub cap_fiber_basis: &'static str,
    pub cap_transport: Transport,
    pub sigma_cap: Option<i8>,
    pub sigma_family: Option<i8>,
    /// Both signs exist and agree.
    pub coherent: bool,
}

impl ConventionLedger {
    pub fn realize(conv: Convention) -> Self {
        let sigma_cap = niloracle::global_sign(conv.handedness, conv.order);
        let sigma_family = family_sign(conv);
        Self {
            handedness: conv.handedness.description(),
            composition_order: conv.order.description(),
            cap_fiber_basis: "(alpha1, alpha2) = (y, z)",
            cap_transport: Transport::for_order(conv.order),
            sigma_cap,
            sigma_family,
            coherent: sigma_cap.is_some() && sigma_cap == sigma_family,
        }
    }
}

/// Sign of the boundary exponent of the `k = 1, n = 0` reference word, if it
/// is a twist power about `b` with absolute exponent 9.
pub fn family_sign(conv: Convention) -> Option<i8> {
    let m = total_monodromy_with(&family_word(1, 0), conv);
    match extract_twist_power_with(&m, conv.handedness) {
        TwistExtraction::Power { axis, exponent } if axis == CurveClass::b() => {
            if exponent == BigInt::from(9) {
                Some(1)
            } else if exponent == BigInt::from(-9) {
                Some(-1)
            } else {
                None
            }
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_and_mirror_are_coherent() {
        let std = ConventionLedger::realize(Convention::STANDARD);
        assert_eq!(std.sigma_cap, Some(-1));
        assert_eq!(std.sigma_family, Some(-1));
        assert!(std.coherent);
        let mirror = ConventionLedger::realize(Convention::MIRROR);
        assert!(mirror.coherent);
    }

    #[test]
    fn mixed_conventions_are_not_coherent() {
        use crate::fibration::CompositionOrder;
        use crate::mcg::Handedness;
        let mixed = Convention {
            handedness: Handedness::Left,
            order: CompositionOrder::LaterOnLeft,
        };
        let ledger = ConventionLedger::realize(mixed);
        assert_eq!(ledger.sigma_family, None);
        assert!(!ledger.coherent);
    }
}
