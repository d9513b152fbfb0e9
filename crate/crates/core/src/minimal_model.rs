//! Sector data, admissibility and fusion rules of the `(p, q)` minimal model.
//!
//! All conformal data is exact: central charges and conformal weights are
//! reduced fractions over `i64`. The bound `p, q <= MAX_PQ` keeps every
//! intermediate value below `(4pq)^2 < 2^63`.

use std::fmt;

use num_integer::Integer;

use crate::algebra::StructureConstants;
use crate::error::{Error, Result};

/// Exact fraction in lowest terms with a positive denominator.
pub type Rational = num_rational::Ratio<i64>;

/// Largest `p` or `q` accepted by [`ModelParams::new`].
pub const MAX_PQ: i64 = 10_000;

/// A coprime pair `p, q >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModelParams {
    p: i64,
    q: i64,
}

impl ModelParams {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        let invalid = |reason: String| Error::InvalidModel { p, q, reason };
        if p < 2 || q < 2 {
            return Err(invalid("p and q must both be at least 2".into()));
        }
        if p > MAX_PQ || q > MAX_PQ {
            return Err(invalid(format!("p and q must not exceed {MAX_PQ}")));
        }
        let g = p.gcd(&q);
        if g != 1 {
            return Err(invalid(format!("p and q must be coprime (gcd is {g})")));
        }
        Ok(Self { p, q })
    }

    #[inline]
    pub fn p(&self) -> i64 {
        self.p
    }

    #[inline]
    pub fn q(&self) -> i64 {
        self.q
    }

    /// Number of distinct sectors, `(p-1)(q-1)/2`.
    pub fn sector_count(&self) -> usize {
        ((self.p - 1) * (self.q - 1) / 2) as usize
    }

    fn check_label(&self, m: i64, n: i64) -> Result<()> {
        if 0 < m && m < self.p && 0 < n && n < self.q {
            Ok(())
        } else {
            Err(Error::LabelOutOfRange {
                p: self.p,
                q: self.q,
                m,
                n,
            })
        }
    }

    /// The partner label `(p-m, q-n)` describing the same module.
    pub fn conjugate(&self, label: KacLabel) -> KacLabel {
        KacLabel::new(self.p - label.m, self.q - label.n)
    }
}

impl fmt::Display for ModelParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

/// A Kac label `(m, n)`, not necessarily canonical.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KacLabel {
    pub m: i64,
    pub n: i64,
}

impl KacLabel {
    pub const fn new(m: i64, n: i64) -> Self {
        Self { m, n }
    }
}

impl fmt::Display for KacLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.m, self.n)
    }
}

impl From<(i64, i64)> for KacLabel {
    fn from((m, n): (i64, i64)) -> Self {
        Self { m, n }
    }
}

/// One distinct module `[h]` of the model.
///
/// `label` is the lexicographically smaller of `(m, n)` and `(p-m, q-n)`;
/// `index` is the position in [`sectors`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Sector {
    pub label: KacLabel,
    pub h: Rational,
    pub index: usize,
}

impl Sector {
    /// Bracket notation, e.g. `[1/16]`.
    pub fn name(&self) -> String {
        format!("[{}]", self.h)
    }
}

impl fmt::Display for Sector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.h)
    }
}

/// `c = 1 - 6(p-q)^2 / (pq)`.
pub fn central_charge(params: &ModelParams) -> Rational {
    let (p, q) = (params.p, params.q);
    let pq = p * q;
    Rational::new(pq - 6 * (p - q) * (p - q), pq)
}

/// `h_{m,n} = ((np - mq)^2 - (p-q)^2) / (4pq)`.
pub fn conformal_weight(params: &ModelParams, m: i64, n: i64) -> Result<Rational> {
    params.check_label(m, n)?;
    Ok(weight_unchecked(params, m, n))
}

fn weight_unchecked(params: &ModelParams, m: i64, n: i64) -> Rational {
    let (p, q) = (params.p, params.q);
    let a = n * p - m * q;
    let b = p - q;
    Rational::new(a * a - b * b, 4 * p * q)
}

/// The full `(p-1) x (q-1)` grid of conformal weights, row `m-1`, column `n-1`.
pub fn kac_table(params: &ModelParams) -> Vec<Vec<Rational>> {
    (1..params.p)
        .map(|m| {
            (1..params.q)
                .map(|n| weight_unchecked(params, m, n))
                .collect()
        })
        .collect()
}

fn canonical_label(params: &ModelParams, m: i64, n: i64) -> KacLabel {
    let label = KacLabel::new(m, n);
    label.min(params.conjugate(label))
}

// Canonical labels fill rows m < p/2 completely, plus the half row m = p/2
// when p is even, so the lexicographic rank is a closed form.
fn canonical_index(params: &ModelParams, label: KacLabel) -> usize {
    ((label.m - 1) * (params.q - 1) + (label.n - 1)) as usize
}

fn sector_for(params: &ModelParams, label: KacLabel) -> Sector {
    Sector {
        label,
        h: weight_unchecked(params, label.m, label.n),
        index: canonical_index(params, label),
    }
}

/// All `N = (p-1)(q-1)/2` sectors in lexicographic order of their canonical
/// labels; the vacuum `(1,1)` comes first.
pub fn sectors(params: &ModelParams) -> Vec<Sector> {
    let mut out = Vec::with_capacity(params.sector_count());
    for m in 1..params.p {
        for n in 1..params.q {
            let label = KacLabel::new(m, n);
            if label < params.conjugate(label) {
                out.push(sector_for(params, label));
            }
        }
    }
    debug_assert!(out.iter().enumerate().all(|(i, s)| s.index == i));
    out
}

/// The sector containing the module labelled `(m, n)`.
pub fn canonicalize(params: &ModelParams, m: i64, n: i64) -> Result<Sector> {
    params.check_label(m, n)?;
    Ok(sector_for(params, canonical_label(params, m, n)))
}

/// `0 < a, b, c < p`, `a + b + c` odd and `< 2p`, strict triangle
/// inequalities. Totally symmetric in `a, b, c`.
pub fn is_p_admissible(p: i64, a: i64, b: i64, c: i64) -> bool {
    let in_range = |x: i64| 0 < x && x < p;
    let sum = a + b + c;
    in_range(a)
        && in_range(b)
        && in_range(c)
        && sum < 2 * p
        && sum % 2 == 1
        && a < b + c
        && b < a + c
        && c < a + b
}

/// Closed form for `{ c : is_p_admissible(p, a, b, c) }` when `0 < b <= a < p`:
/// `{ a - b + 1 + 2i : 0 <= i < min(b, p - a) }`.
pub fn admissible_range(p: i64, a: i64, b: i64) -> Result<Vec<i64>> {
    if !(0 < b && b <= a && a < p) {
        return Err(Error::InvalidArgument(format!(
            "admissible_range needs 0 < m2 <= m < p, got p={p}, m={a}, m2={b}"
        )));
    }
    Ok((0..b.min(p - a)).map(|i| a - b + 1 + 2 * i).collect())
}

/// Componentwise admissibility: the `m` parts are `p`-admissible and the `n`
/// parts are `q`-admissible.
pub fn is_pq_admissible(params: &ModelParams, t1: KacLabel, t2: KacLabel, t3: KacLabel) -> bool {
    is_p_admissible(params.p, t1.m, t2.m, t3.m) && is_p_admissible(params.q, t1.n, t2.n, t3.n)
}

/// Fusion coefficients `D(S_i, S_j, S_k) ∈ {0,1}` over the sector list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusionTensor {
    params: ModelParams,
    sectors: Vec<Sector>,
    coefficients: StructureConstants,
}

impl FusionTensor {
    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn sectors(&self) -> &[Sector] {
        &self.sectors
    }

    pub fn len(&self) -> usize {
        self.sectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sectors.is_empty()
    }

    pub fn coefficients(&self) -> &StructureConstants {
        &self.coefficients
    }

    #[inline]
    pub fn coefficient(&self, i: usize, j: usize, k: usize) -> bool {
        self.coefficients.get(i, j, k)
    }

    /// Sector indices appearing in `S_i × S_j`, ascending.
    pub fn fuse(&self, i: usize, j: usize) -> Vec<usize> {
        self.coefficients.basis_product(i, j)
    }

    /// Index of the sector containing `label` (either representative).
    pub fn index_of(&self, label: KacLabel) -> Result<usize> {
        Ok(canonicalize(&self.params, label.m, label.n)?.index)
    }
}

/// Builds the fusion tensor from admissibility.
///
/// With `i`, `j` fixed at their canonical labels, `k` is tested at both of
/// its representatives. Conjugating two labels of an admissible triple at
/// once preserves admissibility, so this covers every representative choice;
/// parity rules out both representatives of `k` completing the same pair.
pub fn fusion_tensor(params: &ModelParams) -> FusionTensor {
    let sectors = sectors(params);
    let coefficients = StructureConstants::from_fn(sectors.len(), |i, j, k| {
        let (a, b, c) = (sectors[i].label, sectors[j].label, sectors[k].label);
        is_pq_admissible(params, a, b, c) || is_pq_admissible(params, a, b, params.conjugate(c))
    });
    FusionTensor {
        params: *params,
        sectors,
        coefficients,
    }
}

/// The Verlinde algebra: rational span of the sectors with the fusion
/// product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerlindeAlgebra {
    tensor: FusionTensor,
}

impl VerlindeAlgebra {
    pub fn tensor(&self) -> &FusionTensor {
        &self.tensor
    }

    pub fn dim(&self) -> usize {
        self.tensor.len()
    }

    pub fn structure_constants(&self) -> &StructureConstants {
        &self.tensor.coefficients
    }

    /// Coordinates of the basis element `S_i`.
    pub fn basis(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::from_integer(0); self.dim()];
        v[i] = Rational::from_integer(1);
        v
    }

    /// Product of two elements given by their coordinates in the sector basis.
    pub fn product(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        self.tensor.coefficients.product(x, y)
    }

    pub fn is_commutative(&self) -> bool {
        self.tensor.coefficients.commutativity_defect().is_none()
    }

    /// Checked on every basis triple, not assumed.
    pub fn is_associative(&self) -> bool {
        self.tensor.coefficients.associativity_defect().is_none()
    }
}

pub fn verlinde_algebra(tensor: FusionTensor) -> VerlindeAlgebra {
    VerlindeAlgebra { tensor }
}

/// Central charge and Kac table of the unitary `(p, p+1)` model.
pub fn unitary_discrete_series(p: i64) -> Result<(Rational, Vec<Vec<Rational>>)> {
    let params = ModelParams::new(p, p + 1)?;
    Ok((central_charge(&params), kac_table(&params)))
}
