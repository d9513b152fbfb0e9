//! Fusion rules of the Virasoro `(p, q)` minimal models and their covers by
//! finite abelian groups.
//!
//! * [`minimal_model`]: exact central charge, Kac table, sectors,
//!   admissibility, the fusion tensor and the Verlinde algebra.
//! * [`two_group_cover`]: the weight-class partition of `Z_2^(p+q-5)` and
//!   exhaustive verification that it covers the fusion rules.
//! * [`cover_search`]: verification of covers by arbitrary finite abelian
//!   groups and a backtracking search over cyclic groups.
//!
//! ```
//! use minfusion::{fusion_tensor, ModelParams};
//!
//! let ising = ModelParams::new(3, 4).unwrap();
//! let tensor = fusion_tensor(&ising);
//! // [1/16] x [1/16] = [0] + [1/2]
//! assert_eq!(tensor.fuse(1, 1), vec![0, 2]);
//! ```

pub mod algebra;
pub mod certificate;
pub mod cover_search;
pub mod error;
pub mod minimal_model;
pub mod two_group_cover;

pub use algebra::StructureConstants;
pub use certificate::{CoverCertificate, CoverStats, Verdict, Witness};
pub use cover_search::{
    multiplicity_profile, search_cyclic_covers, search_cyclic_covers_with, verify_abelian_cover,
    AbelianGroupSpec, LabeledGroup, SearchOptions, DEFAULT_SEARCH_BUDGET, MAX_GROUP_ORDER,
};
pub use error::{Error, Result};
pub use minimal_model::{
    admissible_range, canonicalize, central_charge, conformal_weight, fusion_tensor,
    is_p_admissible, is_pq_admissible, kac_table, sectors, unitary_discrete_series,
    verlinde_algebra, FusionTensor, KacLabel, ModelParams, Rational, Sector, VerlindeAlgebra,
};
pub use two_group_cover::{
    class_members, class_of, is_isomorphic_to_verlinde, orbit, orbit_sum_classes, orbit_sumset,
    partition_algebra, partition_algebra_unchecked, phi, quotient_cosets, sym_diff_weight_identity,
    verify_cover, verify_cover_with, BitVector, ClassLabel, Coset, CoverMap, GroupContext, Part,
    PartitionAlgebra, VerifyOptions,
};
