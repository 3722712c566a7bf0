//! Completion certificates, invariant reports and stable generalized complex
//! structure verdicts.
//!
//! A genus-one Lefschetz fibration over the disk completes to a boundary
//! Lefschetz fibration exactly when its boundary monodromy is a power of a
//! Dehn twist (including the identity): the boundary torus bundle is then
//! isomorphic to the boundary of a standard disk-bundle cap over the torus,
//! and gluing the cap in produces a single torus of type change.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::fibration::{
    euler_characteristic_open, total_monodromy_with, Base, Convention, FibrationSpec,
};
use crate::mcg::{classify_with, CurveClass, MonodromyClass, UnimodularMatrix};
use crate::niloracle;
use crate::serde_int;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertifierError {
    #[error("completion requires fiber genus 1, got {0}")]
    UnsupportedGenus(u32),
    #[error("completion is only implemented over the disk, got {0:?}")]
    UnsupportedBase(Base),
    #[error("invariants requested for a fibration that does not complete ({0})")]
    NotCompletable(&'static str),
    #[error("surface log pair: curve {index} has {len} coordinates, expected {expected}")]
    MalformedSurfaceVector {
        index: usize,
        len: usize,
        expected: usize,
    },
    #[error(
        "surface log pair: curve {index} has entry {value} at position {position}, expected 0 or 1"
    )]
    NonBinaryEntry {
        index: usize,
        position: usize,
        value: u8,
    },
}

const CAP_CONVENTION: &str = "the cap is the disk bundle of Euler number e over the torus; \
     its own boundary monodromy is nil_monodromy(e) and it is glued with reversed boundary \
     orientation, so nil_monodromy(e)^-1 equals the boundary monodromy";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompletionCertificate {
    pub completable: bool,
    pub boundary_monodromy: UnimodularMatrix,
    pub boundary_class: MonodromyClass,
    pub twist_axis: Option<CurveClass>,
    /// `n` with boundary monodromy `T_axis^n`; zero for the identity.
    #[serde(serialize_with = "serde_int::serialize_opt")]
    pub twist_exponent: Option<BigInt>,
    pub cap_count: u32,
    #[serde(serialize_with = "serde_int::serialize_opt")]
    pub cap_euler_number: Option<BigInt>,
    pub cap_convention: &'static str,
    /// False iff the boundary monodromy is trivial (or no completion exists).
    pub unique: bool,
    pub mu: usize,
    pub rejected_reason: Option<&'static str>,
}

pub fn check_completable(spec: &FibrationSpec) -> Result<CompletionCertificate, CertifierError> {
    check_completable_with(spec, Convention::STANDARD)
}

pub fn check_completable_with(
    spec: &FibrationSpec,
    conv: Convention,
) -> Result<CompletionCertificate, CertifierError> {
    if spec.fiber_genus != 1 {
        return Err(CertifierError::UnsupportedGenus(spec.fiber_genus));
    }
    if spec.base != Base::Disk {
        return Err(CertifierError::UnsupportedBase(spec.base.clone()));
    }
    let boundary_monodromy = total_monodromy_with(&spec.word, conv);
    let boundary_class = classify_with(&boundary_monodromy, conv.handedness);
    let (twist_axis, twist_exponent) = match &boundary_class {
        MonodromyClass::Identity => (None, Some(BigInt::zero())),
        MonodromyClass::TwistPower { axis, exponent } => {
            (Some(axis.clone()), Some(exponent.clone()))
        }
        _ => (None, None),
    };
    let completable = twist_exponent.is_some();
    let sigma = niloracle::global_sign(conv.handedness, conv.order);
    let cap_euler_number = match (&twist_exponent, sigma) {
        // sigma * e = -n
        (Some(n), Some(s)) => Some(-n * i32::from(s)),
        _ => None,
    };
    let unique = completable && boundary_class != MonodromyClass::Identity;
    let rejected_reason = (!completable).then(|| boundary_class.branch());
    Ok(CompletionCertificate {
        completable,
        boundary_monodromy,
        boundary_class,
        twist_axis,
        twist_exponent,
        cap_count: 1,
        cap_euler_number,
        cap_convention: CAP_CONVENTION,
        unique,
        mu: spec.word.len(),
        rejected_reason,
    })
}

/// Hypotheses under which a stable generalized complex structure is
/// certified on every completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Hypothesis {
    FiberGenusOne,
    DiskBase,
    /// `(D^2, boundary)` admits a log-symplectic structure.
    BaseLogSymplectic,
    BoundaryTwistPower,
    HomologicallyEssential,
}

/// One-directional verdict: `NotCertified` means the criterion does not
/// apply, not that no stable structure exists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum GcsVerdict {
    Certified {
        hypotheses: Vec<Hypothesis>,
        notes: Vec<String>,
    },
    NotCertified {
        failed: Hypothesis,
        detail: String,
    },
}

impl GcsVerdict {
    pub fn is_certified(&self) -> bool {
        matches!(self, GcsVerdict::Certified { .. })
    }
}

fn certified_from(cert: &CompletionCertificate) -> GcsVerdict {
    debug_assert!(cert.completable);
    let mut notes = Vec::new();
    if !cert.unique {
        notes.push(
            "boundary monodromy is trivial: the completion is not unique, every completion is certified"
                .to_string(),
        );
    }
    GcsVerdict::Certified {
        hypotheses: vec![
            Hypothesis::FiberGenusOne,
            Hypothesis::DiskBase,
            Hypothesis::BaseLogSymplectic,
            Hypothesis::BoundaryTwistPower,
            Hypothesis::HomologicallyEssential,
        ],
        notes,
    }
}

pub fn certify_stable_gcs(spec: &FibrationSpec) -> GcsVerdict {
    certify_stable_gcs_with(spec, Convention::STANDARD)
}

pub fn certify_stable_gcs_with(spec: &FibrationSpec, conv: Convention) -> GcsVerdict {
    if spec.fiber_genus != 1 {
        return GcsVerdict::NotCertified {
            failed: Hypothesis::FiberGenusOne,
            detail: format!("fiber genus is {}", spec.fiber_genus),
        };
    }
    if spec.base != Base::Disk {
        return GcsVerdict::NotCertified {
            failed: Hypothesis::DiskBase,
            detail: format!("base is {:?}", spec.base),
        };
    }
    let disk = SurfaceLogPair::disk();
    if surface_log_admissible(&disk) != Ok(true) {
        return GcsVerdict::NotCertified {
            failed: Hypothesis::BaseLogSymplectic,
            detail: "disk with its boundary failed the log-symplectic check".to_string(),
        };
    }
    let cert = check_completable_with(spec, conv).expect("genus and base checked above");
    if !cert.completable {
        return GcsVerdict::NotCertified {
            failed: Hypothesis::BoundaryTwistPower,
            detail: format!("boundary monodromy is {}", cert.boundary_class),
        };
    }
    certified_from(&cert)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ComponentTopology {
    Torus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub mu: usize,
    pub euler_characteristic: i64,
    pub type_change_components: u32,
    pub type_change_topology: Vec<ComponentTopology>,
    pub homologically_essential: bool,
    pub stable_gcs: GcsVerdict,
}

/// Invariants of the completion described by a completable certificate.
///
/// The completed manifold has Euler characteristic equal to the number of
/// singular fibers: the open part contributes `2(2 - 2g) + mu = mu` for
/// `g = 1`, and the type change torus and its circle-bundle neighbourhood
/// boundary contribute zero.
pub fn invariants(cert: &CompletionCertificate) -> Result<InvariantReport, CertifierError> {
    if !cert.completable {
        return Err(CertifierError::NotCompletable(cert.boundary_class.branch()));
    }
    let euler_characteristic = euler_characteristic_open(1, cert.mu);
    debug_assert_eq!(euler_characteristic, cert.mu as i64);
    Ok(InvariantReport {
        mu: cert.mu,
        euler_characteristic,
        type_change_components: cert.cap_count,
        type_change_topology: vec![ComponentTopology::Torus; cert.cap_count as usize],
        // Every Lefschetz fibration over the disk is homologically
        // essential, and completion preserves it.
        homologically_essential: true,
        stable_gcs: certified_from(cert),
    })
}

/// A compact oriented surface with a hypersurface `Z`, given by the mod 2
/// homology classes of the components of `Z`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurfaceLogPair {
    pub genus: u32,
    /// One vector of `2 * genus` entries in `{0, 1}` per component of `Z`.
    pub curves: Vec<Vec<u8>>,
    /// `Z` is the boundary of the surface.
    pub has_boundary: bool,
}

impl SurfaceLogPair {
    /// `(D^2, boundary circle)`.
    pub fn disk() -> Self {
        Self {
            genus: 0,
            curves: Vec::new(),
            has_boundary: true,
        }
    }

    pub fn closed(genus: u32, curves: Vec<Vec<u8>>) -> Self {
        Self {
            genus,
            curves,
            has_boundary: false,
        }
    }
}

/// Whether the pair admits a log-symplectic structure: always for a surface
/// with its boundary, otherwise iff `[Z] = 0` in `H_1(Sigma; Z_2)`.
pub fn surface_log_admissible(pair: &SurfaceLogPair) -> Result<bool, CertifierError> {
    let expected = 2 * pair.genus as usize;
    let mut sum = vec![0u8; expected];
    for (index, curve) in pair.curves.iter().enumerate() {
        if curve.len() != expected {
            return Err(CertifierError::MalformedSurfaceVector {
                index,
                len: curve.len(),
                expected,
            });
        }
        for (position, (&value, acc)) in curve.iter().zip(sum.iter_mut()).enumerate() {
            if value > 1 {
                return Err(CertifierError::NonBinaryEntry {
                    index,
                    position,
                    value,
                });
            }
            *acc ^= value;
        }
    }
    if pair.has_boundary {
        return Ok(true);
    }
    Ok(sum.iter().all(|&x| x == 0))
}
