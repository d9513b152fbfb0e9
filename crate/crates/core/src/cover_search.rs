//! Covers of the fusion rules by arbitrary finite abelian groups, and an
//! exhaustive search over cyclic groups.
//!
//! A group `Z_{k1} × ... × Z_{kt}` is indexed little-endian: element
//! `(e1, ..., et)` has index `e1 + k1 (e2 + k2 (...))`. For `Z_2^t` this is
//! the integer whose bit `i` is `e_{i+1}`.

use std::fmt;

use crate::certificate::{CoverCertificate, CoverStats, Verdict, Witness};
use crate::error::{Error, Result};
use crate::minimal_model::{FusionTensor, KacLabel, ModelParams};

/// Largest group order accepted for verification.
pub const MAX_GROUP_ORDER: u64 = 1 << 16;

/// Default bound on `max_order` for [`search_cyclic_covers`].
pub const DEFAULT_SEARCH_BUDGET: u64 = 24;

/// `Z_{k1} × ... × Z_{kt}` given by its factors; the empty list is the
/// trivial group.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianGroupSpec {
    factors: Vec<u64>,
    order: u64,
}

impl AbelianGroupSpec {
    pub fn new(factors: Vec<u64>) -> Result<Self> {
        if let Some(bad) = factors.iter().find(|&&k| k < 2) {
            return Err(Error::InvalidArgument(format!(
                "group factor {bad} must be at least 2"
            )));
        }
        let mut order = 1u64;
        for &k in &factors {
            order = order
                .checked_mul(k)
                .filter(|&o| o <= MAX_GROUP_ORDER)
                .ok_or_else(|| {
                    Error::Capacity(format!("group order exceeds the limit {MAX_GROUP_ORDER}"))
                })?;
        }
        Ok(Self { factors, order })
    }

    /// `Z_k`; `k = 1` gives the trivial group.
    pub fn cyclic(k: u64) -> Result<Self> {
        match k {
            0 => Err(Error::InvalidArgument(
                "cyclic group order must be positive".into(),
            )),
            1 => Self::new(Vec::new()),
            k => Self::new(vec![k]),
        }
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coords(&self, mut index: u64) -> Vec<u64> {
        self.factors
            .iter()
            .map(|&k| {
                let digit = index % k;
                index /= k;
                digit
            })
            .collect()
    }

    pub fn index_of(&self, coords: &[u64]) -> Result<u64> {
        if coords.len() != self.factors.len() {
            return Err(Error::InvalidArgument(format!(
                "element has {} coordinates, the group has {} factors",
                coords.len(),
                self.factors.len()
            )));
        }
        let mut index = 0u64;
        for (&e, &k) in coords.iter().zip(&self.factors).rev() {
            if e >= k {
                return Err(Error::InvalidArgument(format!(
                    "coordinate {e} is not below its modulus {k}"
                )));
            }
            index = index * k + e;
        }
        Ok(index)
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let (mut a, mut b) = (a, b);
        let (mut out, mut scale) = (0u64, 1u64);
        for &k in &self.factors {
            out += (a % k + b % k) % k * scale;
            a /= k;
            b /= k;
            scale *= k;
        }
        out
    }

    pub fn neg(&self, a: u64) -> u64 {
        let mut a = a;
        let (mut out, mut scale) = (0u64, 1u64);
        for &k in &self.factors {
            out += (k - a % k) % k * scale;
            a /= k;
            scale *= k;
        }
        out
    }
}

impl fmt::Display for AbelianGroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("Z1");
        }
        // runs of equal factors print as powers: Z4 x Z2^3
        let mut parts = Vec::new();
        for run in self.factors.chunk_by(|a, b| a == b) {
            match run.len() {
                1 => parts.push(format!("Z{}", run[0])),
                n => parts.push(format!("Z{}^{n}", run[0])),
            }
        }
        f.write_str(&parts.join(" x "))
    }
}

/// A total labeling of a finite abelian group by sector indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LabeledGroup {
    spec: AbelianGroupSpec,
    params: ModelParams,
    labels: Vec<usize>,
}

impl LabeledGroup {
    /// `labels[g]` is the sector index of the element with index `g`. The
    /// identity must carry the vacuum sector.
    pub fn new(spec: AbelianGroupSpec, params: ModelParams, labels: Vec<usize>) -> Result<Self> {
        if labels.len() as u64 != spec.order() {
            return Err(Error::InvalidArgument(format!(
                "labeling covers {} elements, {} has {}",
                labels.len(),
                spec,
                spec.order()
            )));
        }
        let n = params.sector_count();
        if let Some(bad) = labels.iter().find(|&&s| s >= n) {
            return Err(Error::InvalidArgument(format!(
                "sector index {bad} out of range (N = {n})"
            )));
        }
        if labels[0] != 0 {
            return Err(Error::Structural(
                "the identity element must be labeled by the vacuum sector (1,1)".into(),
            ));
        }
        Ok(Self {
            spec,
            params,
            labels,
        })
    }

    pub fn spec(&self) -> &AbelianGroupSpec {
        &self.spec
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    /// Number of elements carrying each sector.
    pub fn sector_counts(&self) -> Vec<u64> {
        let mut counts = vec![0u64; self.params.sector_count()];
        self.labels.iter().for_each(|&s| counts[s] += 1);
        counts
    }

    /// The labeling composed with `g -> -g`.
    pub fn negated(&self) -> Self {
        let labels = (0..self.spec.order())
            .map(|g| self.labels[self.spec.neg(g) as usize])
            .collect();
        Self {
            labels,
            ..self.clone()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Largest `max_order` accepted.
    pub budget: u64,
    /// Skip groups and partial labelings that cannot give every sector its
    /// row multiplicity.
    pub profile_prune: bool,
    pub threads: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            budget: DEFAULT_SEARCH_BUDGET,
            profile_prune: true,
            threads: 1,
        }
    }
}

fn check_model(lg: &LabeledGroup, tensor: &FusionTensor) -> Result<()> {
    let (a, b) = (lg.params, *tensor.params());
    if a == b {
        Ok(())
    } else {
        Err(Error::ModelMismatch(a.p(), a.q(), b.p(), b.q()))
    }
}

/// Checks the two cover conditions for `lg` with the group's own addition.
pub fn verify_abelian_cover(lg: &LabeledGroup, tensor: &FusionTensor) -> Result<CoverCertificate> {
    check_model(lg, tensor)?;
    let spec = &lg.spec;
    let order = spec.order();
    let dim = tensor.len();
    let label = |s: usize| tensor.sectors()[s].label;

    let mut realized = vec![false; dim * dim * dim];
    let mut violation: Option<Witness> = None;
    for g1 in 0..order {
        let s1 = lg.labels[g1 as usize];
        for g2 in 0..order {
            let s2 = lg.labels[g2 as usize];
            let g3 = spec.add(g1, g2);
            let s3 = lg.labels[g3 as usize];
            realized[(s1 * dim + s2) * dim + s3] = true;
            if violation.is_none() && !tensor.coefficient(s1, s2, s3) {
                violation = Some(Witness::NonAdmissibleSum {
                    left: spec.coords(g1),
                    right: spec.coords(g2),
                    sum: spec.coords(g3),
                    sectors: [label(s1), label(s2), label(s3)],
                });
            }
        }
    }

    let mut admissible = 0u64;
    let mut unrealized = None;
    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                if tensor.coefficient(i, j, k) {
                    admissible += 1;
                    if unrealized.is_none() && !realized[(i * dim + j) * dim + k] {
                        unrealized = Some(Witness::UnrealizedTriple {
                            sectors: [label(i), label(j), label(k)],
                        });
                    }
                }
            }
        }
    }

    let witness = violation.or(unrealized);
    Ok(CoverCertificate {
        verdict: if witness.is_none() {
            Verdict::Pass
        } else {
            Verdict::Fail
        },
        witness,
        stats: CoverStats {
            group_order: order,
            pairs_checked: order * order,
            admissible_triples: admissible,
            realized_triples: realized.iter().filter(|&&x| x).count() as u64,
            sectors_hit: lg.sector_counts().iter().filter(|&&c| c > 0).count() as u64,
        },
    })
}

/// For each sector `k` (in sector order), the largest number of times it
/// occurs in one row of the fusion table: `max_i |{ j : D(i,j,k) = 1 }|`.
pub fn multiplicity_profile(tensor: &FusionTensor) -> Vec<(KacLabel, usize)> {
    let dim = tensor.len();
    tensor
        .sectors()
        .iter()
        .map(|sector| {
            let k = sector.index;
            let best = (0..dim)
                .map(|i| (0..dim).filter(|&j| tensor.coefficient(i, j, k)).count())
                .max()
                .unwrap_or(0);
            (sector.label, best)
        })
        .collect()
}

pub fn search_cyclic_covers(tensor: &FusionTensor, max_order: u64) -> Result<Vec<LabeledGroup>> {
    search_cyclic_covers_with(tensor, max_order, &SearchOptions::default())
}

/// All labelings of `Z_k`, `1 <= k <= max_order`, that cover the fusion
/// rules, one per pair `{L, L ∘ neg}` (the lexicographically smaller is
/// kept). Sorted by order, then labels.
pub fn search_cyclic_covers_with(
    tensor: &FusionTensor,
    max_order: u64,
    opts: &SearchOptions,
) -> Result<Vec<LabeledGroup>> {
    if max_order == 0 {
        return Err(Error::InvalidArgument(
            "max_order must be at least 1".into(),
        ));
    }
    if max_order > opts.budget {
        return Err(Error::Capacity(format!(
            "max_order {max_order} exceeds the search budget {}",
            opts.budget
        )));
    }
    let profile: Vec<usize> = multiplicity_profile(tensor)
        .into_iter()
        .map(|(_, m)| m)
        .collect();
    let mut found = Vec::new();
    for k in 1..=max_order {
        if opts.profile_prune && profile.iter().sum::<usize>() as u64 > k {
            continue;
        }
        let spec = AbelianGroupSpec::cyclic(k)?;
        for labels in search_order(tensor, k as usize, &profile, opts) {
            found.push(LabeledGroup::new(spec.clone(), *tensor.params(), labels)?);
        }
    }
    Ok(found)
}

struct CyclicSearch<'a> {
    tensor: &'a FusionTensor,
    order: usize,
    dim: usize,
    min_counts: Vec<usize>,
    labels: Vec<usize>,
    counts: Vec<usize>,
    out: Vec<Vec<usize>>,
}

impl CyclicSearch<'_> {
    // Checks every pair (a, b) whose largest member among a, b, a + b is x.
    fn consistent(&self, x: usize) -> bool {
        let k = self.order;
        let l = &self.labels;
        let d = |i, j, s| self.tensor.coefficient(i, j, s);
        for a in 0..=x {
            let s = (a + x) % k;
            if s <= x && !(d(l[a], l[x], l[s]) && d(l[x], l[a], l[s])) {
                return false;
            }
            if a < x {
                let b = (x + k - a) % k;
                if b < x && !d(l[a], l[b], l[x]) {
                    return false;
                }
            }
        }
        true
    }

    fn deficit(&self) -> usize {
        self.min_counts
            .iter()
            .zip(&self.counts)
            .map(|(&need, &have)| need.saturating_sub(have))
            .sum()
    }

    fn covers_all_triples(&self) -> bool {
        let (k, dim) = (self.order, self.dim);
        let mut realized = vec![false; dim * dim * dim];
        for a in 0..k {
            for b in 0..k {
                realized
                    [(self.labels[a] * dim + self.labels[b]) * dim + self.labels[(a + b) % k]] =
                    true;
            }
        }
        self.tensor
            .coefficients()
            .as_slice()
            .iter()
            .zip(&realized)
            .all(|(&needed, &seen)| !needed || seen)
    }

    fn is_orbit_minimum(&self) -> bool {
        let k = self.order;
        let negated = (0..k).map(|x| self.labels[(k - x) % k]);
        self.labels.iter().copied().le(negated)
    }

    fn extend(&mut self, x: usize) {
        if x == self.order {
            if self.covers_all_triples() && self.is_orbit_minimum() {
                self.out.push(self.labels.clone());
            }
            return;
        }
        for s in 0..self.dim {
            self.labels[x] = s;
            self.counts[s] += 1;
            if self.consistent(x) && self.deficit() < self.order - x {
                self.extend(x + 1);
            }
            self.counts[s] -= 1;
        }
    }
}

fn search_order(
    tensor: &FusionTensor,
    order: usize,
    profile: &[usize],
    opts: &SearchOptions,
) -> Vec<Vec<usize>> {
    let dim = tensor.len();
    // Condition (2) forces every sector to appear; the profile bound is the
    // stronger per-sector requirement.
    let min_counts: Vec<usize> = if opts.profile_prune {
        profile.iter().map(|&m| m.max(1)).collect()
    } else {
        vec![1; dim]
    };
    let fresh = || {
        let mut counts = vec![0; dim];
        counts[0] = 1;
        let mut labels = vec![0; order];
        labels[0] = 0;
        CyclicSearch {
            tensor,
            order,
            dim,
            min_counts: min_counts.clone(),
            labels,
            counts,
            out: Vec::new(),
        }
    };
    let root = fresh();
    if root.deficit() > order - 1 || !root.consistent(0) {
        return Vec::new();
    }
    if order == 1 {
        let mut root = root;
        root.extend(1);
        return root.out;
    }

    // Branch on the label of element 1 across workers.
    let branches: Vec<usize> = (0..dim).collect();
    let threads = opts.threads.clamp(1, dim);
    let run_branch = |s: usize| {
        let mut search = fresh();
        search.labels[1] = s;
        search.counts[s] += 1;
        if search.consistent(1) && search.deficit() <= order - 2 {
            search.extend(2);
        }
        search.out
    };
    let mut out: Vec<Vec<usize>> = if threads == 1 {
        branches.into_iter().flat_map(run_branch).collect()
    } else {
        std::thread::scope(|scope| {
            let chunks: Vec<Vec<usize>> = branches
                .chunks(dim.div_ceil(threads))
                .map(<[usize]>::to_vec)
                .collect();
            let handles: Vec<_> = chunks
                .into_iter()
                .map(|chunk| {
                    scope.spawn(move || chunk.into_iter().flat_map(run_branch).collect::<Vec<_>>())
                })
                .collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("search worker panicked"))
                .collect()
        })
    };
    out.sort();
    out
}
