//! The 2-group construction: `H = Z_2^r` with `r = p + q - 4`, split into a
//! `p-2` coordinate block `A` and a `q-2` coordinate block `B`, classified
//! by block weights into classes `H_{m,n}`, and folded by the all-ones
//! vector into `G = H / I`. The induced map `G -> sectors` is checked
//! against the fusion rules in both the map form and the partition form.

mod bitvector;

use std::collections::BTreeSet;

use crate::algebra::StructureConstants;
use crate::certificate::{CoverCertificate, CoverStats, Verdict, Witness};
use crate::cover_search::{AbelianGroupSpec, LabeledGroup};
use crate::error::{Error, Result};
use crate::minimal_model::{
    canonicalize, sectors, FusionTensor, KacLabel, ModelParams, Sector, VerlindeAlgebra,
};

use bitvector::{mask, subsets_of_size};
pub use bitvector::{sym_diff_weight_identity, BitVector};

/// Largest `r` for which a [`GroupContext`] can be built.
pub const MAX_WIDTH: u32 = 62;

/// Largest `r - 1` for which the coset space is materialized.
pub const MAX_COSET_BITS: u32 = 26;

/// A full (not canonicalized) label `(m, n)` of a class `H_{m,n}`.
pub type ClassLabel = KacLabel;

/// One of the two coordinate blocks of `H`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Part {
    /// Coordinates `1..=p-2`.
    A,
    /// Coordinates `p-1..=p+q-4`.
    B,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupContext {
    params: ModelParams,
    width: u32,
    a_mask: u64,
    b_mask: u64,
}

impl GroupContext {
    pub fn new(params: ModelParams) -> Result<Self> {
        let width = params.p() + params.q() - 4;
        if width > i64::from(MAX_WIDTH) {
            return Err(Error::Capacity(format!(
                "r = p + q - 4 = {width} exceeds the supported maximum {MAX_WIDTH}"
            )));
        }
        let width = width as u32;
        let a_len = (params.p() - 2) as u32;
        let a_mask = mask(a_len);
        Ok(Self {
            params,
            width,
            a_mask,
            b_mask: mask(width) & !a_mask,
        })
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    /// `r = p + q - 4`.
    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn all_ones(&self) -> BitVector {
        BitVector::all_ones(self.width)
    }

    /// 1-based coordinates of a block.
    pub fn coords(&self, part: Part) -> std::ops::RangeInclusive<u32> {
        let a_len = self.a_mask.count_ones();
        match part {
            Part::A => 1..=a_len,
            Part::B => a_len + 1..=self.width,
        }
    }

    fn part_geometry(&self, part: Part) -> (u32, u32, i64) {
        let a_len = self.a_mask.count_ones();
        match part {
            Part::A => (0, a_len, self.params.p()),
            Part::B => (a_len, self.width - a_len, self.params.q()),
        }
    }

    fn check(&self, x: &BitVector) -> Result<()> {
        if x.width() == self.width {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!(
                "vector has width {}, the context needs {}",
                x.width(),
                self.width
            )))
        }
    }

    #[inline]
    fn class_of_bits(&self, bits: u64) -> ClassLabel {
        KacLabel::new(
            i64::from((bits & self.a_mask).count_ones()) + 1,
            i64::from((bits & self.b_mask).count_ones()) + 1,
        )
    }
}

/// The class `H_{m,n}` containing `x`: `m - 1` and `n - 1` are the weights
/// of `x` on the `A` and `B` blocks.
pub fn class_of(ctx: &GroupContext, x: &BitVector) -> Result<ClassLabel> {
    ctx.check(x)?;
    Ok(ctx.class_of_bits(x.bits()))
}

/// `A_m` (or `B_n`): the vectors supported on one block with weight
/// `label - 1`, ascending.
pub fn orbit(ctx: &GroupContext, part: Part, label: i64) -> Result<Vec<BitVector>> {
    let (offset, len, bound) = ctx.part_geometry(part);
    if !(0 < label && label < bound) {
        return Err(Error::InvalidArgument(format!(
            "orbit label {label} outside 1..{bound} for block {part:?}"
        )));
    }
    Ok(subsets_of_size(len, (label - 1) as u32)
        .into_iter()
        .map(|s| BitVector::new_unchecked(s << offset, ctx.width))
        .collect())
}

/// `H_{m,n} = A_m + B_n`, ascending; size `C(p-2, m-1) C(q-2, n-1)`.
pub fn class_members(ctx: &GroupContext, label: ClassLabel) -> Result<Vec<BitVector>> {
    let a = orbit(ctx, Part::A, label.m)?;
    let b = orbit(ctx, Part::B, label.n)?;
    let mut out: Vec<BitVector> = a
        .iter()
        .flat_map(|x| {
            b.iter()
                .map(move |y| BitVector::new_unchecked(x.bits() | y.bits(), ctx.width))
        })
        .collect();
    out.sort();
    Ok(out)
}

/// The sum set `A_{m1} + A_{m2}` (or the `B` analogue), ascending.
pub fn orbit_sumset(ctx: &GroupContext, part: Part, m1: i64, m2: i64) -> Result<Vec<BitVector>> {
    let x = orbit(ctx, part, m1)?;
    let y = orbit(ctx, part, m2)?;
    let set: BTreeSet<u64> = x
        .iter()
        .flat_map(|a| y.iter().map(move |b| a.bits() ^ b.bits()))
        .collect();
    Ok(set
        .into_iter()
        .map(|bits| BitVector::new_unchecked(bits, ctx.width))
        .collect())
}

/// Labels `m3` of the orbits met by `A_{m1} + A_{m2}`, ascending.
pub fn orbit_sum_classes(ctx: &GroupContext, part: Part, m1: i64, m2: i64) -> Result<Vec<i64>> {
    let labels: BTreeSet<i64> = orbit_sumset(ctx, part, m1, m2)?
        .iter()
        .map(|v| i64::from(v.weight()) + 1)
        .collect();
    Ok(labels.into_iter().collect())
}

/// An element `x + I` of `G = H / I`, stored as its numerically smaller
/// member.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coset {
    representative: BitVector,
}

impl Coset {
    pub fn of(x: BitVector) -> Self {
        let other = x.bits() ^ mask(x.width());
        Self {
            representative: BitVector::new_unchecked(x.bits().min(other), x.width()),
        }
    }

    pub fn representative(&self) -> BitVector {
        self.representative
    }

    /// `[x, x + 1]` with the representative first.
    pub fn members(&self) -> [BitVector; 2] {
        let x = self.representative;
        [
            x,
            BitVector::new_unchecked(x.bits() ^ mask(x.width()), x.width()),
        ]
    }

    pub fn add(&self, other: &Coset) -> Result<Coset> {
        Ok(Coset::of(self.representative.add(&other.representative)?))
    }

    /// Position in [`quotient_cosets`]. Representatives have the top
    /// coordinate clear, so the position is the representative's value.
    pub fn index(&self) -> u64 {
        self.representative.bits()
    }
}

fn check_coset_capacity(ctx: &GroupContext) -> Result<u32> {
    if ctx.width == 0 {
        return Err(Error::InvalidArgument(
            "H is trivial (r = 0); no quotient by I".into(),
        ));
    }
    let bits = ctx.width - 1;
    if bits > MAX_COSET_BITS {
        return Err(Error::Capacity(format!(
            "G = Z_2^{bits} is too large to enumerate (limit Z_2^{MAX_COSET_BITS})"
        )));
    }
    Ok(bits)
}

/// The `2^(r-1)` cosets of `I`, ascending by representative.
pub fn quotient_cosets(ctx: &GroupContext) -> Result<Vec<Coset>> {
    let bits = check_coset_capacity(ctx)?;
    Ok((0..1u64 << bits)
        .map(|v| Coset {
            representative: BitVector::new_unchecked(v, ctx.width),
        })
        .collect())
}

/// A map `G -> sectors`, one sector index per coset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverMap {
    context: GroupContext,
    sectors: Vec<Sector>,
    assignment: Vec<u32>,
}

impl CoverMap {
    /// `Φ(h + I) = [h_{m,n}]` for `h ∈ H_{m,n}`.
    pub fn canonical(ctx: &GroupContext) -> Result<Self> {
        let cosets = quotient_cosets(ctx)?;
        let params = ctx.params;
        let ones = mask(ctx.width);
        let assignment = cosets
            .iter()
            .map(|c| {
                let x = c.representative.bits();
                let label = ctx.class_of_bits(x);
                let partner = ctx.class_of_bits(x ^ ones);
                assert_eq!(
                    partner,
                    params.conjugate(label),
                    "Φ depends on the coset representative"
                );
                canonicalize(&params, label.m, label.n).map(|s| s.index as u32)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            context: ctx.clone(),
            sectors: sectors(&params),
            assignment,
        })
    }

    /// An arbitrary map given by sector indices in coset order.
    pub fn from_assignment(ctx: &GroupContext, assignment: Vec<usize>) -> Result<Self> {
        let bits = check_coset_capacity(ctx)?;
        if assignment.len() as u64 != 1u64 << bits {
            return Err(Error::InvalidArgument(format!(
                "assignment has {} entries, G has {}",
                assignment.len(),
                1u64 << bits
            )));
        }
        let sectors = sectors(&ctx.params);
        if let Some(bad) = assignment.iter().find(|&&s| s >= sectors.len()) {
            return Err(Error::InvalidArgument(format!(
                "sector index {bad} out of range (N = {})",
                sectors.len()
            )));
        }
        Ok(Self {
            context: ctx.clone(),
            sectors,
            assignment: assignment.into_iter().map(|s| s as u32).collect(),
        })
    }

    pub fn context(&self) -> &GroupContext {
        &self.context
    }

    pub fn sectors(&self) -> &[Sector] {
        &self.sectors
    }

    /// Sector index of each coset, in coset order.
    pub fn assignment(&self) -> Vec<usize> {
        self.assignment.iter().map(|&s| s as usize).collect()
    }

    /// Whether every coset is sent to the sector of its class.
    pub fn respects_classes(&self) -> bool {
        let params = self.context.params;
        self.assignment.iter().enumerate().all(|(x, &s)| {
            let label = self.context.class_of_bits(x as u64);
            canonicalize(&params, label.m, label.n).map(|c| c.index as u32) == Ok(s)
        })
    }

    /// The same map viewed as a labeling of `Z_2 × ... × Z_2` (`r - 1`
    /// factors), coordinate `i` of an element being coordinate `i` of the
    /// coset representative.
    pub fn to_labeled_group(&self) -> Result<LabeledGroup> {
        let spec = AbelianGroupSpec::new(vec![2; self.context.width as usize - 1])?;
        LabeledGroup::new(spec, self.context.params, self.assignment())
    }

    fn coords(&self, index: u64) -> Vec<u64> {
        (0..self.context.width - 1)
            .map(|i| index >> i & 1)
            .collect()
    }
}

/// The sector `Φ(g)`.
pub fn phi(cm: &CoverMap, g: &Coset) -> Result<Sector> {
    let rep = g.representative;
    cm.context.check(&rep)?;
    if rep.bits() >> (cm.context.width - 1) & 1 == 1 {
        return Err(Error::InvalidArgument(format!(
            "{rep} is not a canonical coset representative"
        )));
    }
    Ok(cm.sectors[cm.assignment[rep.bits() as usize] as usize])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Worker threads for the pair scan; results do not depend on it.
    pub threads: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { threads: 1 }
    }
}

struct PairScan {
    /// First `(g1, g2)` in ascending order whose sum leaves the fusion rules.
    first_violation: Option<(u64, u64)>,
    /// `realized[(i*N + j)*N + k]`: some `g1 + g2 = g3` has sectors `(i, j, k)`.
    realized: Vec<bool>,
    pairs: u64,
}

fn scan_range(
    assignment: &[u32],
    width: u32,
    allowed: Option<&[bool]>,
    dim: usize,
    rows: std::ops::Range<u64>,
) -> PairScan {
    let count = assignment.len() as u64;
    let top = width - 1;
    let fold = mask(width);
    let mut realized = vec![false; dim * dim * dim];
    let mut first_violation = None;
    for g1 in rows.clone() {
        let base = assignment[g1 as usize] as usize * dim;
        for g2 in 0..count {
            let mut s = g1 ^ g2;
            if s >> top & 1 == 1 {
                s ^= fold;
            }
            let idx =
                (base + assignment[g2 as usize] as usize) * dim + assignment[s as usize] as usize;
            realized[idx] = true;
            if first_violation.is_none() {
                if let Some(allowed) = allowed {
                    if !allowed[idx] {
                        first_violation = Some((g1, g2));
                    }
                }
            }
        }
    }
    PairScan {
        first_violation,
        realized,
        pairs: (rows.end - rows.start) * count,
    }
}

fn scan_pairs(cm: &CoverMap, allowed: Option<&[bool]>, threads: usize) -> PairScan {
    let dim = cm.sectors.len();
    let count = cm.assignment.len() as u64;
    let threads = threads.clamp(1, count.max(1) as usize) as u64;
    if threads == 1 {
        return scan_range(&cm.assignment, cm.context.width, allowed, dim, 0..count);
    }
    let chunk = count.div_ceil(threads);
    let parts: Vec<PairScan> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..threads)
            .map(|t| {
                let rows = (t * chunk).min(count)..((t + 1) * chunk).min(count);
                scope
                    .spawn(move || scan_range(&cm.assignment, cm.context.width, allowed, dim, rows))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("scan worker panicked"))
            .collect()
    });
    // Chunks are in ascending row order, so the first violation found in
    // chunk order is the first overall.
    parts
        .into_iter()
        .reduce(|mut acc, part| {
            acc.first_violation = acc.first_violation.or(part.first_violation);
            acc.realized
                .iter_mut()
                .zip(&part.realized)
                .for_each(|(a, b)| *a |= b);
            acc.pairs += part.pairs;
            acc
        })
        .expect("at least one worker")
}

pub fn verify_cover(cm: &CoverMap, tensor: &FusionTensor) -> Result<CoverCertificate> {
    verify_cover_with(cm, tensor, &VerifyOptions::default())
}

/// Checks both cover conditions by scanning every ordered pair of cosets.
///
/// Condition (1): each `Φ(g1 + g2)` occurs in `Φ(g1) × Φ(g2)`. Condition
/// (2): each nonzero fusion coefficient is realized by some pair.
pub fn verify_cover_with(
    cm: &CoverMap,
    tensor: &FusionTensor,
    opts: &VerifyOptions,
) -> Result<CoverCertificate> {
    let (a, b) = (cm.context.params, *tensor.params());
    if a != b {
        return Err(Error::ModelMismatch(a.p(), a.q(), b.p(), b.q()));
    }
    let dim = tensor.len();
    let allowed = tensor.coefficients().as_slice();
    let scan = scan_pairs(cm, Some(allowed), opts.threads);
    let label = |s: u32| cm.sectors[s as usize].label;

    let witness = if let Some((g1, g2)) = scan.first_violation {
        let s = Coset::of(BitVector::new_unchecked(g1 ^ g2, cm.context.width)).index();
        Some(Witness::NonAdmissibleSum {
            left: cm.coords(g1),
            right: cm.coords(g2),
            sum: cm.coords(s),
            sectors: [
                label(cm.assignment[g1 as usize]),
                label(cm.assignment[g2 as usize]),
                label(cm.assignment[s as usize]),
            ],
        })
    } else {
        allowed
            .iter()
            .zip(&scan.realized)
            .position(|(&needed, &seen)| needed && !seen)
            .map(|idx| Witness::UnrealizedTriple {
                sectors: [
                    label((idx / (dim * dim)) as u32),
                    label((idx / dim % dim) as u32),
                    label((idx % dim) as u32),
                ],
            })
    };

    let mut hit = vec![false; dim];
    cm.assignment.iter().for_each(|&s| hit[s as usize] = true);
    Ok(CoverCertificate {
        verdict: if witness.is_none() {
            Verdict::Pass
        } else {
            Verdict::Fail
        },
        witness,
        stats: CoverStats {
            group_order: cm.assignment.len() as u64,
            pairs_checked: scan.pairs,
            admissible_triples: allowed.iter().filter(|&&x| x).count() as u64,
            realized_triples: scan.realized.iter().filter(|&&x| x).count() as u64,
            sectors_hit: hit.iter().filter(|&&x| x).count() as u64,
        },
    })
}

/// The algebra `W` on the partition `P_i = Φ^{-1}(S_i)` with
/// `P_i * P_j = Σ_{k ∈ T(i,j)} P_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionAlgebra {
    params: ModelParams,
    part_sizes: Vec<u64>,
    constants: StructureConstants,
}

impl PartitionAlgebra {
    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn dim(&self) -> usize {
        self.constants.dim()
    }

    /// `|P_i|` for each sector.
    pub fn part_sizes(&self) -> &[u64] {
        &self.part_sizes
    }

    pub fn structure_constants(&self) -> &StructureConstants {
        &self.constants
    }

    /// `T(i, j)`, ascending.
    pub fn product_support(&self, i: usize, j: usize) -> Vec<usize> {
        self.constants.basis_product(i, j)
    }
}

/// Builds `W`, requiring `P_1 = {0}`.
pub fn partition_algebra(cm: &CoverMap) -> Result<PartitionAlgebra> {
    let vacuum_preimage: Vec<usize> = cm
        .assignment
        .iter()
        .enumerate()
        .filter_map(|(g, &s)| (s == 0).then_some(g))
        .collect();
    if vacuum_preimage != [0] {
        return Err(Error::Structural(format!(
            "the preimage of the vacuum sector must be exactly {{0}}, got cosets {vacuum_preimage:?}"
        )));
    }
    Ok(partition_algebra_unchecked(cm))
}

/// Builds `W` without the `P_1 = {0}` requirement.
pub fn partition_algebra_unchecked(cm: &CoverMap) -> PartitionAlgebra {
    let dim = cm.sectors.len();
    let scan = scan_pairs(cm, None, 1);
    let mut constants = StructureConstants::zeros(dim);
    for (idx, &seen) in scan.realized.iter().enumerate() {
        if seen {
            constants.set(idx / (dim * dim), idx / dim % dim, idx % dim, true);
        }
    }
    let mut part_sizes = vec![0u64; dim];
    cm.assignment
        .iter()
        .for_each(|&s| part_sizes[s as usize] += 1);
    PartitionAlgebra {
        params: cm.context.params,
        part_sizes,
        constants,
    }
}

/// Whether `S_i <-> P_i` is an algebra isomorphism, i.e. the structure
/// constants agree entry for entry.
pub fn is_isomorphic_to_verlinde(w: &PartitionAlgebra, v: &VerlindeAlgebra) -> Result<bool> {
    if w.dim() != v.dim() {
        return Err(Error::InvalidArgument(format!(
            "dimension mismatch: partition algebra has {}, Verlinde algebra has {}",
            w.dim(),
            v.dim()
        )));
    }
    Ok(&w.constants == v.structure_constants())
}

#[cfg(test)]
mod tests;
