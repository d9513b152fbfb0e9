//! Verdicts produced by cover verification.

use std::fmt;

use crate::minimal_model::KacLabel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Pass,
    Fail,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
        })
    }
}

/// A concrete counterexample to one of the two cover conditions.
///
/// Group elements are given by their coordinates over the invariant
/// factors of the group; sectors by their canonical Kac labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Witness {
    /// `left + right = sum`, but the fusion of the first two sectors does
    /// not contain the third.
    NonAdmissibleSum {
        left: Vec<u64>,
        right: Vec<u64>,
        sum: Vec<u64>,
        sectors: [KacLabel; 3],
    },
    /// An admissible fusion triple that no `g1 + g2 = g3` realizes.
    UnrealizedTriple { sectors: [KacLabel; 3] },
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct CoverStats {
    pub group_order: u64,
    /// Ordered pairs `(g1, g2)` whose sum was checked.
    pub pairs_checked: u64,
    /// Sector triples with a nonzero fusion coefficient.
    pub admissible_triples: u64,
    /// Sector triples realized by some `g1 + g2 = g3`.
    pub realized_triples: u64,
    /// Sectors with at least one element mapped onto them.
    pub sectors_hit: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoverCertificate {
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub stats: CoverStats,
}

impl CoverCertificate {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}
