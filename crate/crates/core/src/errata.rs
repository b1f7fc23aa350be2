//! Registry of printed-formula readings that conflict with the arbitrated
//! values (the oracle and the source's own tables). Crosschecks classify
//! these as known discrepancies rather than failures.

use serde::Serialize;
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum ErratumId {
    /// Diagonal entry of the half contraction in the mixed case: the printed
    /// leading factor (z+c+|mu|+1)/(z+c+|mu|) conflicts with the residue
    /// route and the tables, which force (z-c-|mu|-1)/(z-c-|mu|).
    PHalfCase2,
    /// Diagonal entry of the whole contraction in the mixed case: printed
    /// value is the negative of the residue/table value.
    PWholeCase2,
    /// Gram edge factor of a node-removing half step: the printed third
    /// factor (z+c+|lam|-r)/(z+c+|mu|-r) conflicts with the oracle form
    /// values; a sign-corrected factor is used.
    GammaRemoveThirdFactor,
    /// Restated JM recursion for the half level: printed right-hand side is
    /// off by lower L-terms; the derived form is asserted instead.
    JmHalfRestatement,
    /// Printed claim that the star of a whole JM element is the interchange
    /// element; self-adjointness holds instead.
    LStarPrinted,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DiscrepancyClass {
    None,
    SignOnly,
    Structural,
}

#[derive(Clone, Debug, Serialize)]
pub struct Erratum {
    pub id: ErratumId,
    pub class: DiscrepancyClass,
    pub summary: &'static str,
}

/// The full ledger of recorded errata.
pub fn ledger() -> Vec<Erratum> {
    vec![
        Erratum {
            id: ErratumId::PHalfCase2,
            class: DiscrepancyClass::SignOnly,
            summary: "half-contraction mixed-case diagonal: printed leading factor \
                      (z+c+|mu|+1)/(z+c+|mu|) vs arbitrated (z-c-|mu|-1)/(z-c-|mu|)",
        },
        Erratum {
            id: ErratumId::PWholeCase2,
            class: DiscrepancyClass::SignOnly,
            summary: "whole-contraction mixed-case diagonal: printed value is the \
                      negative of the arbitrated value",
        },
        Erratum {
            id: ErratumId::GammaRemoveThirdFactor,
            class: DiscrepancyClass::SignOnly,
            summary: "node-removing Gram edge factor: printed third factor has the \
                      signs of c and |mu| flipped",
        },
        Erratum {
            id: ErratumId::JmHalfRestatement,
            class: DiscrepancyClass::Structural,
            summary: "half-level JM recursion restatement: printed right-hand side \
                      is off by lower JM terms; the derived identity is asserted",
        },
        Erratum {
            id: ErratumId::LStarPrinted,
            class: DiscrepancyClass::Structural,
            summary: "star of the whole JM element: printed claim (L)* = sigma; \
                      self-adjointness (L)* = L holds",
        },
    ]
}

impl fmt::Display for ErratumId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ErratumId::PHalfCase2 => "p-half-case2",
            ErratumId::PWholeCase2 => "p-whole-case2",
            ErratumId::GammaRemoveThirdFactor => "gamma-remove-third-factor",
            ErratumId::JmHalfRestatement => "jm-half-restatement",
            ErratumId::LStarPrinted => "l-star-printed",
        };
        write!(f, "{s}")
    }
}
