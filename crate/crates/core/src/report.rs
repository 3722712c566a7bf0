//! JSON reports emitted by the command-line tool.
//!
//! Every report carries the convention ledger. Field order is fixed by the
//! struct definitions and no maps are serialized, so identical inputs give
//! byte-identical output.

use serde::Serialize;

use crate::certifier::{CompletionCertificate, GcsVerdict, InvariantReport};
use crate::fibration::{CanonicalForm, Quotient, SearchResult, VanishingCycleWord};
use crate::ledger::ConventionLedger;
use crate::mcg::{MonodromyClass, UnimodularMatrix};
use crate::reference::ReferenceFibration;
use crate::serde_int;

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub exit_code: i32,
    pub ledger: ConventionLedger,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<CommandResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reference: Option<ReferenceCheck>,
    pub discrepancies: Vec<Discrepancy>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ErrorInfo {
    pub kind: &'static str,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partial: Option<Vec<VanishingCycleWord>>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum CommandResult {
    Classify {
        word: VanishingCycleWord,
        monodromy: UnimodularMatrix,
        class: MonodromyClass,
    },
    Complete {
        certificate: CompletionCertificate,
    },
    Invariants {
        certificate: CompletionCertificate,
        invariants: Option<InvariantReport>,
    },
    Certify {
        stable_gcs: GcsVerdict,
        #[serde(skip_serializing_if = "Option::is_none")]
        surface_log_admissible: Option<bool>,
    },
    Search {
        target: UnimodularMatrix,
        length: usize,
        bound: u32,
        quotient: Quotient,
        search: SearchResult,
    },
    HurwitzCanon {
        word: VanishingCycleWord,
        canonical: CanonicalForm,
        monodromy: UnimodularMatrix,
        monodromy_preserved: bool,
    },
    Nilcheck {
        #[serde(serialize_with = "serde_int::serialize")]
        n: num_bigint::BigInt,
        monodromy: UnimodularMatrix,
        class: MonodromyClass,
        #[serde(serialize_with = "serde_int::serialize")]
        euler_class: num_bigint::BigInt,
        exponent_matches: bool,
        euler_class_matches: bool,
    },
}

/// Comparison against a reference fibration with a known completion.
#[derive(Debug, Clone, Serialize)]
pub struct ReferenceCheck {
    pub fibration: ReferenceFibration,
    pub completion: String,
    pub completion_euler_characteristic: i64,
    pub expected_abs_exponent: i64,
    pub abs_exponent_matches: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub kind: &'static str,
    pub detail: String,
    pub mu: usize,
    pub euler_characteristic: i64,
    pub reference_euler_characteristic: i64,
    pub difference: i64,
}

/// Reference comparison and discrepancy flags for a word and its
/// certificate. The Euler characteristic is `mu`; a reference completion
/// whose Euler characteristic differs is flagged, not adjudicated.
pub fn reference_check(
    word: &VanishingCycleWord,
    cert: &CompletionCertificate,
) -> (Option<ReferenceCheck>, Vec<Discrepancy>) {
    let Some(fibration) = ReferenceFibration::recognize(word) else {
        return (None, Vec::new());
    };
    let completion = fibration.completion();
    let reference_chi = completion.euler_characteristic();
    let expected = fibration.expected_abs_exponent();
    let abs_exponent_matches = cert
        .twist_exponent
        .as_ref()
        .is_some_and(|e| e.magnitude() == &num_bigint::BigUint::from(expected.unsigned_abs()));
    let check = ReferenceCheck {
        fibration,
        completion: completion.name(),
        completion_euler_characteristic: reference_chi,
        expected_abs_exponent: expected,
        abs_exponent_matches,
    };
    let chi = cert.mu as i64;
    let mut flags = Vec::new();
    if chi != reference_chi {
        flags.push(Discrepancy {
            kind: "euler_characteristic_vs_reference_completion",
            detail: format!(
                "chi = mu = {chi} for {} singular fibers, but the reference completion {} has chi = {reference_chi}",
                cert.mu,
                check.completion
            ),
            mu: cert.mu,
            euler_characteristic: chi,
            reference_euler_characteristic: reference_chi,
            difference: reference_chi - chi,
        });
    }
    (Some(check), flags)
}
