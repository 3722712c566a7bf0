//! Exact monodromy arithmetic for genus-one Lefschetz fibrations over the disk.
//!
//! The crate decides when such a fibration can be capped off along its
//! boundary torus bundle to a boundary Lefschetz fibration, and reports the
//! invariants of the result:
//!
//! * [`mcg`]: `SL(2,Z)` as the mapping class group of the torus, Dehn twist
//!   matrices, trace classification and twist-power extraction.
//! * [`fibration`]: vanishing-cycle words, total monodromy, Hurwitz moves,
//!   bounded factorization search.
//! * [`certifier`]: completability certificates, invariant reports, stable
//!   generalized complex structure verdicts and surface log-pair checks.
//! * [`niloracle`]: the lattice model of the standard disk-bundle cap, used
//!   as an independent check of the sign conventions.
//! * [`input`], [`report`], [`cli`]: the `blf` command-line surface.

pub mod certifier;
pub mod cli;
pub mod fibration;
pub mod input;
pub mod ledger;
pub mod mcg;
pub mod niloracle;
pub mod reference;
pub mod report;
mod serde_int;

pub use certifier::{
    certify_stable_gcs, check_completable, invariants, surface_log_admissible, CertifierError,
    CompletionCertificate, GcsVerdict, InvariantReport, SurfaceLogPair,
};
pub use fibration::{
    euler_characteristic_open, hurwitz_canonical, hurwitz_move, search_factorizations,
    total_monodromy, Base, CompositionOrder, Convention, FibrationError, FibrationSpec,
    HurwitzDirection, Quotient, VanishingCycleWord,
};
pub use mcg::{
    classify, conjugate, extract_twist_power, twist_matrix, CurveClass, Handedness, McgError,
    MonodromyClass, TwistExtraction, UnimodularMatrix,
};
