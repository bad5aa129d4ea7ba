//! Named proof obligations shared by the symbolic and concrete retract checks.

use alloc::string::String;
use core::fmt;

/// `(x_k, x_{k+1})` is a point of the 2-simplex.
pub const S_COD_VALID: &str = "s_cod-valid";
/// The section square commutes pointwise.
pub const SQUARE_S_COMMUTES: &str = "square-s-commutes";
/// Both product inclusions into the pushout corner are injective.
pub const CORNER_INJECTIVE: &str = "corner-injective";
/// The retraction formula pins the endpoints to 1 and 0.
pub const R_COD_ENDPOINTS: &str = "r_cod-endpoints";
/// The retraction formula produces a decreasing sequence.
pub const R_COD_MONOTONE: &str = "r_cod-monotone";
/// On `Δⁿ × Λ²₁` with `y₁ = 1`, face `j = 0` is degenerate and `0 ≠ k`.
pub const R_DOM_HORN_CASE_Y1: &str = "r_dom-horn-case-y1";
/// On `Δⁿ × Λ²₁` with `y₂ = 0`, face `j = n` is degenerate and `n ≠ k`.
pub const R_DOM_HORN_CASE_Y2: &str = "r_dom-horn-case-y2";
/// On `Λⁿₖ × Δ²`, every degenerate face `j ≠ k` of the input stays degenerate.
pub const R_DOM_HORN_RIGHT: &str = "r_dom-horn-right";
/// The retraction is constant on pushout classes.
pub const R_DOM_WELL_DEFINED: &str = "r_dom-well-defined";
/// The retraction square commutes pointwise.
pub const SQUARE_R_COMMUTES: &str = "square-r-commutes";
/// `r_cod ∘ s_cod = id`.
pub const RS_IDENTITY_COD: &str = "rs-identity-cod";
/// `r_dom ∘ s_dom = id`.
pub const RS_IDENTITY_DOM: &str = "rs-identity-dom";

/// Outcome of one named obligation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObligationResult {
    pub id: &'static str,
    pub passed: bool,
    /// Number of individual instances (equations or points) examined.
    pub checked: usize,
    /// First counterexample, when the obligation failed.
    pub witness: Option<String>,
}

impl ObligationResult {
    pub fn new(id: &'static str) -> Self {
        ObligationResult {
            id,
            passed: true,
            checked: 0,
            witness: None,
        }
    }

    /// Records one instance; only the first failure keeps its witness.
    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.passed {
            self.passed = false;
            self.witness = Some(witness());
        }
    }
}

impl fmt::Display for ObligationResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "pass" } else { "FAIL" };
        write!(f, "{:<22} {status} ({} checked)", self.id, self.checked)?;
        if let Some(w) = &self.witness {
            write!(f, ": {w}")?;
        }
        Ok(())
    }
}

/// Ids of the failed obligations, in report order.
pub fn failed_ids(results: &[ObligationResult]) -> alloc::vec::Vec<&'static str> {
    results.iter().filter(|r| !r.passed).map(|r| r.id).collect()
}
