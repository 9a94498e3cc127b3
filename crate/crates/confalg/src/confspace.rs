//! Orchestrator: from an algebra presentation and a generator space to the
//! per-cardinality Betti tables of configuration spaces, in both output
//! normalizations, plus homological-stability consistency reports.
//!
//! The pipeline is: build the free Lie algebra on the shifted generator,
//! twist by the input algebra, and take weight-truncated Chevalley homology
//! weight by weight — the weight is the number of configuration points.
//! All cardinality-`k` output is the associated graded of a canonical
//! filtration; when every (degree, k) block has total dimension at most 1
//! the filtration is forced and the tables are exact, which the result
//! records in its `associated_graded` flag.

use crate::cdga::{Diagnostic, GCAlgebra, SpaceMeta};
use crate::chevalley::{ce_homology, BettiTable, ChevalleyError};
use crate::freelie::{free_lie, FreeLieError};
use crate::grvec::{Bidegree, GradedSpace};
use crate::twist::tensor_lie;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfspaceError {
    #[error("input algebra failed validation: {}", .0.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("; "))]
    ValidationFailed(Vec<Diagnostic>),
    #[error("dualizing normalization needs a smooth space with known dimension")]
    DualizingUnavailable,
    #[error("precondition failed: {hypothesis}")]
    PreconditionFailed { hypothesis: String },
    #[error(transparent)]
    FreeLie(#[from] FreeLieError),
    #[error(transparent)]
    Chevalley(#[from] ChevalleyError),
}

/// Betti tables of `Conf_k` for `k = 1..=max_k`, in the constant-sheaf
/// normalization and, when the space is smooth with known dimension, the
/// dualizing normalization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfResult {
    meta: SpaceMeta,
    max_k: u32,
    constant: Vec<BettiTable>,
    dualizing: Option<Vec<BettiTable>>,
    associated_graded: bool,
}

impl ConfResult {
    pub fn meta(&self) -> &SpaceMeta {
        &self.meta
    }

    pub fn max_k(&self) -> u32 {
        self.max_k
    }

    /// `gr H*_c(Conf_k X, Q_l)`; `k` is 1-indexed.
    pub fn constant(&self, k: u32) -> &BettiTable {
        &self.constant[(k - 1) as usize]
    }

    /// `gr H*_c(Conf_k X, ω)`, available for smooth spaces of known
    /// dimension.
    pub fn dualizing(&self, k: u32) -> Option<&BettiTable> {
        self.dualizing.as_ref().map(|v| &v[(k - 1) as usize])
    }

    pub fn has_dualizing(&self) -> bool {
        self.dualizing.is_some()
    }

    /// True when the tables are associated-graded data only; false when
    /// every (degree, k) block has total dimension ≤ 1, which forces the
    /// filtration and makes the tables exact.
    pub fn associated_graded(&self) -> bool {
        self.associated_graded
    }
}

/// The constant sheaf as a generator: a single class in degree 0, weight 0.
pub fn default_generator() -> GradedSpace {
    GradedSpace::line("gen", Bidegree::new(0, 0, 0))
}

/// Compute `gr H*_c(Conf_k X)` for `k = 1..=max_k` from a validated algebra
/// presentation of `H*_c(X)` and a generator space (the constant sheaf by
/// default).
pub fn conf_cohomology(
    a: &GCAlgebra,
    generator: &GradedSpace,
    max_k: u32,
) -> Result<ConfResult, ConfspaceError> {
    assert!(max_k >= 1, "cardinalities start at 1");
    let diags = a.validate();
    if !diags.is_empty() {
        return Err(ConfspaceError::ValidationFailed(diags));
    }

    let lie = free_lie(&generator.shift(-1), max_k)?;
    let g = tensor_lie(a, &lie);

    let mut constant = Vec::with_capacity(max_k as usize);
    for k in 1..=max_k {
        constant.push(ce_homology(&g, k)?);
    }

    let dualizing = match (a.meta().smooth, a.meta().dimension) {
        (true, Some(d)) => Some(
            constant
                .iter()
                .enumerate()
                .map(|(i, table)| {
                    let k = (i + 1) as i64;
                    let shift = -2 * d as i64 * k;
                    table.shifted(shift, shift)
                })
                .collect::<Vec<_>>(),
        ),
        _ => None,
    };

    // gr determines H exactly when no (degree, k) block has dimension ≥ 2
    let associated_graded = constant
        .iter()
        .any(|table| table.dims_by_degree().values().any(|&total| total >= 2));

    Ok(ConfResult {
        meta: a.meta().clone(),
        max_k,
        constant,
        dualizing,
        associated_graded,
    })
}

/// Verdict of one (cardinality, degree) stability comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    MatchInIsoRange,
    SurjectionRangeConsistent,
    OutsideRange,
    Mismatch,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::MatchInIsoRange => "match-in-iso-range",
            Verdict::SurjectionRangeConsistent => "surjection-range-consistent",
            Verdict::OutsideRange => "outside-range",
            Verdict::Mismatch => "MISMATCH",
        }
    }
}

/// One compared degree in the dualizing normalization: dimensions of
/// `H^degree_c(Conf_k, ω)` and `H^degree_c(Conf_{k+1}, ω)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityRow {
    pub k: u32,
    pub degree: i64,
    pub dim_k: usize,
    pub dim_next: usize,
    pub verdict: Verdict,
}

/// Dimension-level consistency report against the stable ranges.
///
/// The stabilization map itself is not constructed; these verdicts are
/// necessary conditions on dimensions only. A `MISMATCH` is a genuine alarm,
/// an all-clear is consistency, not verification of the map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityReport {
    rows: Vec<StabilityRow>,
    dimension: u32,
}

impl StabilityReport {
    /// Header stating what the verdicts do and do not claim.
    pub const NOTE: &'static str = "dimension-level necessary conditions only; \
        the stabilization map (cap product with the unit) is not constructed";

    pub fn rows(&self) -> &[StabilityRow] {
        &self.rows
    }

    pub fn dimension(&self) -> u32 {
        self.dimension
    }

    pub fn has_mismatch(&self) -> bool {
        self.rows.iter().any(|r| r.verdict == Verdict::Mismatch)
    }
}

/// Check the dualizing-normalization dimensions of a [`ConfResult`] against
/// the stable ranges: for the map from cardinality `k+1` to `k`, isomorphism
/// for `* > -k` (curves) resp. `* >= -k` (higher dimension), surjection at
/// the range boundary.
pub fn stability_report(r: &ConfResult) -> Result<StabilityReport, ConfspaceError> {
    let meta = r.meta();
    let fail = |hypothesis: &str| ConfspaceError::PreconditionFailed {
        hypothesis: hypothesis.to_string(),
    };
    if !meta.connected {
        return Err(fail("space must be connected"));
    }
    if !meta.smooth {
        return Err(fail("space must be smooth"));
    }
    let Some(dimension) = meta.dimension else {
        return Err(fail("space must have a known dimension"));
    };
    if !r.has_dualizing() {
        return Err(fail("dualizing tables must be present"));
    }
    let curve = dimension == 1;

    let mut rows = Vec::new();
    for k in 1..r.max_k() {
        let lower = r.dualizing(k).expect("checked above").dims_by_degree();
        let upper = r.dualizing(k + 1).expect("checked above").dims_by_degree();
        let degrees: std::collections::BTreeSet<i64> =
            lower.keys().chain(upper.keys()).copied().collect();
        let boundary = if curve { -(k as i64) } else { -(k as i64) - 1 };
        for degree in degrees {
            let dim_k = lower.get(&degree).copied().unwrap_or(0);
            let dim_next = upper.get(&degree).copied().unwrap_or(0);
            let in_iso_range = if curve {
                degree > -(k as i64)
            } else {
                degree >= -(k as i64)
            };
            let verdict = if in_iso_range {
                if dim_next == dim_k {
                    Verdict::MatchInIsoRange
                } else {
                    Verdict::Mismatch
                }
            } else if degree == boundary {
                if dim_next >= dim_k {
                    Verdict::SurjectionRangeConsistent
                } else {
                    Verdict::Mismatch
                }
            } else {
                Verdict::OutsideRange
            };
            rows.push(StabilityRow {
                k,
                degree,
                dim_k,
                dim_next,
                verdict,
            });
        }
    }
    Ok(StabilityReport { rows, dimension })
}
