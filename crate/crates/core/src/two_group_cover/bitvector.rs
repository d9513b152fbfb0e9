use std::fmt;

use crate::error::{Error, Result};

/// An element of `Z_2^width`, coordinate `i` (1-based) stored in bit `i-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BitVector {
    bits: u64,
    width: u32,
}

impl BitVector {
    pub const MAX_WIDTH: u32 = 64;

    pub fn new(bits: u64, width: u32) -> Result<Self> {
        if width > Self::MAX_WIDTH {
            return Err(Error::Capacity(format!(
                "bit vectors are limited to {} coordinates, got {width}",
                Self::MAX_WIDTH
            )));
        }
        if bits & !mask(width) != 0 {
            return Err(Error::InvalidArgument(format!(
                "value {bits:#b} has bits set above width {width}"
            )));
        }
        Ok(Self { bits, width })
    }

    pub(crate) const fn new_unchecked(bits: u64, width: u32) -> Self {
        Self { bits, width }
    }

    pub fn zero(width: u32) -> Self {
        Self { bits: 0, width }
    }

    /// `(1, 1, ..., 1)`.
    pub fn all_ones(width: u32) -> Self {
        Self {
            bits: mask(width),
            width,
        }
    }

    /// Vector whose support is `coords` (1-based).
    pub fn from_support(width: u32, coords: &[u32]) -> Result<Self> {
        let mut bits = 0u64;
        for &c in coords {
            if c == 0 || c > width {
                return Err(Error::InvalidArgument(format!(
                    "coordinate {c} outside 1..={width}"
                )));
            }
            bits |= 1 << (c - 1);
        }
        Self::new(bits, width)
    }

    /// Parses a string of `0`/`1` characters, coordinate 1 first.
    pub fn parse(s: &str) -> Result<Self> {
        let width = s.chars().count() as u32;
        let mut bits = 0u64;
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' if i < 64 => bits |= 1 << i,
                _ => {
                    return Err(Error::InvalidArgument(format!(
                        "not a bit string of at most 64 coordinates: {s:?}"
                    )))
                }
            }
        }
        Self::new(bits, width)
    }

    #[inline]
    pub fn bits(&self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn width(&self) -> u32 {
        self.width
    }

    /// Number of coordinates equal to 1.
    #[inline]
    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    /// 1-based positions of the coordinates equal to 1.
    pub fn support(&self) -> Vec<u32> {
        (0..self.width)
            .filter(|i| self.bits >> i & 1 == 1)
            .map(|i| i + 1)
            .collect()
    }

    /// Group sum (coordinatewise XOR).
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_width(other)?;
        Ok(Self::new_unchecked(self.bits ^ other.bits, self.width))
    }

    /// Boolean-ring product (coordinatewise AND).
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_width(other)?;
        Ok(Self::new_unchecked(self.bits & other.bits, self.width))
    }

    fn check_width(&self, other: &Self) -> Result<()> {
        if self.width == other.width {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!(
                "width mismatch: {} vs {}",
                self.width, other.width
            )))
        }
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.width {
            f.write_str(if self.bits >> i & 1 == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

#[inline]
pub(crate) const fn mask(width: u32) -> u64 {
    if width >= 64 {
        u64::MAX
    } else {
        (1u64 << width) - 1
    }
}

/// `(wt(x + y), wt(x) + wt(y) - 2 wt(x·y))`; the two components always agree.
pub fn sym_diff_weight_identity(x: &BitVector, y: &BitVector) -> Result<(u32, u32)> {
    let sum = x.add(y)?;
    let product = x.mul(y)?;
    Ok((sum.weight(), x.weight() + y.weight() - 2 * product.weight()))
}

/// All `k`-subsets of `{0, .., len-1}` as bit masks, ascending.
pub(crate) fn subsets_of_size(len: u32, k: u32) -> Vec<u64> {
    if k > len {
        return Vec::new();
    }
    if k == 0 {
        return vec![0];
    }
    let limit = if len >= 64 { None } else { Some(1u64 << len) };
    let mut out = Vec::new();
    let mut v = mask(k);
    loop {
        out.push(v);
        if limit.is_none() && v == mask(64) << (64 - k) {
            break;
        }
        // Gosper's hack: next integer with the same popcount.
        let c = v & v.wrapping_neg();
        let r = v.wrapping_add(c);
        if r == 0 {
            break;
        }
        v = (((r ^ v) >> 2) / c) | r;
        if let Some(limit) = limit {
            if v >= limit {
                break;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_and_support() {
        let z = BitVector::zero(5);
        assert_eq!((z.weight(), z.support()), (0, vec![]));
        let x = BitVector::parse("101").unwrap();
        assert_eq!((x.weight(), x.support()), (2, vec![1, 3]));
        assert_eq!(BitVector::all_ones(7).weight(), 7);
        assert_eq!(BitVector::all_ones(64).weight(), 64);
    }

    #[test]
    fn construction_errors() {
        assert!(BitVector::new(0b1000, 3).is_err());
        assert!(BitVector::new(0, 65).is_err());
        assert!(BitVector::from_support(3, &[0]).is_err());
        assert!(BitVector::from_support(3, &[4]).is_err());
        assert!(BitVector::parse("10x").is_err());
        assert_eq!(
            BitVector::from_support(4, &[1, 3]).unwrap().to_string(),
            "1010"
        );
    }

    #[test]
    fn identity_examples() {
        let x = BitVector::parse("1100").unwrap();
        let y = BitVector::parse("1010").unwrap();
        assert_eq!(sym_diff_weight_identity(&x, &y).unwrap(), (2, 2));
        assert_eq!(sym_diff_weight_identity(&x, &x).unwrap(), (0, 0));
        let short = BitVector::parse("10").unwrap();
        assert!(matches!(
            sym_diff_weight_identity(&x, &short),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn subsets_enumeration() {
        assert_eq!(subsets_of_size(3, 0), vec![0]);
        assert_eq!(subsets_of_size(3, 1), vec![0b001, 0b010, 0b100]);
        assert_eq!(subsets_of_size(3, 2), vec![0b011, 0b101, 0b110]);
        assert_eq!(subsets_of_size(3, 3), vec![0b111]);
        assert!(subsets_of_size(2, 3).is_empty());
        for len in 0..=12u32 {
            for k in 0..=len {
                let got = subsets_of_size(len, k);
                let expected: Vec<u64> = (0..1u64 << len).filter(|v| v.count_ones() == k).collect();
                assert_eq!(got, expected);
            }
        }
        assert_eq!(subsets_of_size(64, 64), vec![u64::MAX]);
        assert_eq!(subsets_of_size(64, 63).len(), 64);
    }
}
