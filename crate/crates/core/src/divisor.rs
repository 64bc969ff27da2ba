//! Divisor classes on M_{0,n} in the ψ/boundary basis, and the first Chern
//! class of a conformal blocks bundle.
//!
//! A class is stored as `D = Σ a_i ψ_i − Σ c_{I,J} D_{I,J}`: `psi` holds the
//! `a_i` and `boundary` holds the `c_{I,J}` (so a positive `c` subtracts).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::fusion::{FusionRing, WeightTuple};
use crate::lie::{AlgebraId, AlgebraTables, Family, Weight};
use crate::rational::{qi, Q};

/// Largest number of marked points supported by the bitmask representation.
pub const MAX_POINTS: usize = 30;

/// Largest n for [`conformal_blocks_divisor`], which tabulates all 2^n sub-products.
pub const MAX_DIVISOR_POINTS: usize = 20;

/// An unordered two-block partition `I|J` of `{1..n}` with both blocks of
/// size at least two, represented by the block containing 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    n: usize,
    side: Vec<usize>,
}

impl Partition {
    /// Builds the partition with one block `block`; either block may be given.
    pub fn new(n: usize, block: &[usize]) -> Result<Self> {
        if n < 4 {
            return Err(Error::TooFewPoints(n));
        }
        if n > MAX_POINTS {
            return Err(Error::InvalidPartition(format!(
                "n = {n} exceeds {MAX_POINTS}"
            )));
        }
        let mut mask = 0u64;
        for &i in block {
            if i == 0 || i > n {
                return Err(Error::VertexOutOfRange { index: i, n });
            }
            if mask & (1 << (i - 1)) != 0 {
                return Err(Error::InvalidPartition(format!("index {i} repeated")));
            }
            mask |= 1 << (i - 1);
        }
        let size = block.len();
        if size < 2 || n - size < 2 {
            return Err(Error::InvalidPartition(format!(
                "blocks of sizes {size} and {} on {n} points; both must be at least 2",
                n - size
            )));
        }
        Ok(Partition::from_mask(n, mask))
    }

    pub(crate) fn from_mask(n: usize, mask: u64) -> Self {
        let full = (1u64 << n) - 1;
        let mask = if mask & 1 == 1 { mask } else { full & !mask };
        let side = (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| i + 1).collect();
        Partition { n, side }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The block containing 1, sorted.
    pub fn side(&self) -> &[usize] {
        &self.side
    }

    pub fn complement(&self) -> Vec<usize> {
        let m = self.mask();
        (1..=self.n).filter(|&i| m >> (i - 1) & 1 == 0).collect()
    }

    pub fn mask(&self) -> u64 {
        self.side.iter().fold(0, |m, &i| m | 1 << (i - 1))
    }

    pub fn separates(&self, i: usize, j: usize) -> bool {
        let m = self.mask();
        (m >> (i - 1) & 1) != (m >> (j - 1) & 1)
    }

    /// Every boundary partition of `{1..n}`, ordered by block size then lexicographically.
    pub fn all(n: usize) -> Vec<Partition> {
        assert!((4..=MAX_POINTS).contains(&n), "n out of range");
        let mut out: Vec<Partition> = (0u64..1 << (n - 1))
            .map(|rest| (rest << 1) | 1)
            .filter(|m| {
                let k = m.count_ones() as usize;
                k >= 2 && n - k >= 2
            })
            .map(|m| Partition::from_mask(n, m))
            .collect();
        out.sort();
        out
    }

    /// Image under the relabeling `i ↦ perm[i-1]` (a permutation of `1..=n`).
    pub fn relabel(&self, perm: &[usize]) -> Partition {
        let m = self.side.iter().fold(0u64, |m, &i| m | 1 << (perm[i - 1] - 1));
        Partition::from_mask(self.n, m)
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.n, self.side.len(), &self.side).cmp(&(other.n, other.side.len(), &other.side))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.side.iter().map(|i| i.to_string()).collect();
        let c: Vec<String> = self.complement().iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}|{{{}}}", s.join(","), c.join(","))
    }
}

/// An element of Pic(M_{0,n}) ⊗ Q written as `Σ a_i ψ_i − Σ c_{I,J} D_{I,J}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorClass {
    n: usize,
    psi: Vec<Q>,
    boundary: BTreeMap<Partition, Q>,
}

impl DivisorClass {
    pub fn zero(n: usize) -> Result<Self> {
        if n < 4 {
            return Err(Error::TooFewPoints(n));
        }
        Ok(DivisorClass {
            n,
            psi: vec![Q::zero(); n],
            boundary: BTreeMap::new(),
        })
    }

    pub fn new(n: usize, psi: Vec<Q>, boundary: impl IntoIterator<Item = (Partition, Q)>) -> Result<Self> {
        let mut d = DivisorClass::zero(n)?;
        if psi.len() != n {
            return Err(Error::SizeMismatch {
                what: "psi coefficients",
                expected: n,
                got: psi.len(),
            });
        }
        d.psi = psi;
        for (p, c) in boundary {
            if p.n() != n {
                return Err(Error::SizeMismatch {
                    what: "boundary partition",
                    expected: n,
                    got: p.n(),
                });
            }
            d.set_boundary(p, c);
        }
        Ok(d)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn psi(&self) -> &[Q] {
        &self.psi
    }

    /// Nonzero boundary coefficients `c_{I,J}` in canonical order.
    pub fn boundary(&self) -> &BTreeMap<Partition, Q> {
        &self.boundary
    }

    pub fn boundary_coefficient(&self, p: &Partition) -> Q {
        self.boundary.get(p).cloned().unwrap_or_else(Q::zero)
    }

    fn set_boundary(&mut self, p: Partition, c: Q) {
        if c.is_zero() {
            self.boundary.remove(&p);
        } else {
            self.boundary.insert(p, c);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.boundary.is_empty() && self.psi.iter().all(Zero::is_zero)
    }

    pub fn scaled(&self, k: &Q) -> DivisorClass {
        let mut out = DivisorClass {
            n: self.n,
            psi: self.psi.iter().map(|a| a * k).collect(),
            boundary: BTreeMap::new(),
        };
        for (p, c) in &self.boundary {
            out.set_boundary(p.clone(), c * k);
        }
        out
    }

    /// Pushes the class along the relabeling `i ↦ perm[i-1]`.
    pub fn relabel(&self, perm: &[usize]) -> DivisorClass {
        let mut psi = vec![Q::zero(); self.n];
        for (i, a) in self.psi.iter().enumerate() {
            psi[perm[i] - 1] = a.clone();
        }
        DivisorClass {
            n: self.n,
            psi,
            boundary: self
                .boundary
                .iter()
                .map(|(p, c)| (p.relabel(perm), c.clone()))
                .collect(),
        }
    }
}

fn ring_indices(ring: &FusionRing, tuple: &WeightTuple) -> Result<Vec<usize>> {
    if tuple.algebra != ring.tables().id || tuple.level != ring.level() {
        return Err(Error::Unsupported(format!(
            "tuple is for {} level {}, ring is {} level {}",
            tuple.algebra,
            tuple.level,
            ring.tables().id,
            ring.level()
        )));
    }
    tuple.entries().iter().map(|w| ring.index_of(w)).collect()
}

/// `c_{I,J} = Σ_Λ Δ_Λ · rk(Λ⃗_I, Λ) · rk(Λ⃗_J, Λ*)`.
pub fn boundary_coefficient(ring: &FusionRing, tuple: &WeightTuple, p: &Partition) -> Result<Q> {
    if tuple.len() != p.n() {
        return Err(Error::SizeMismatch {
            what: "partition",
            expected: tuple.len(),
            got: p.n(),
        });
    }
    let idx = ring_indices(ring, tuple)?;
    let side: Vec<usize> = p.side().iter().map(|&i| idx[i - 1]).collect();
    let rest: Vec<usize> = p.complement().iter().map(|&i| idx[i - 1]).collect();
    let mut c = Q::zero();
    for lam in 0..ring.weights().len() {
        let mut left = side.clone();
        left.push(lam);
        let mut right = rest.clone();
        right.push(ring.dual_index(lam));
        let prod = ring.rank_indices(&left) * ring.rank_indices(&right);
        if prod != 0 {
            c += ring.anomaly(lam) * qi(prod as i64);
        }
    }
    Ok(c)
}

/// First Chern class of the conformal blocks bundle `𝕍_Λ⃗(𝔤, ℓ)` on M_{0,n}.
///
/// Each unordered partition is visited once, so no extra factor is needed for
/// blocks of size n/2.
pub fn conformal_blocks_divisor(ring: &FusionRing, tuple: &WeightTuple) -> Result<DivisorClass> {
    let n = tuple.len();
    if n < 4 {
        return Err(Error::TooFewPoints(n));
    }
    if n > MAX_DIVISOR_POINTS {
        return Err(Error::Unsupported(format!(
            "n = {n} exceeds {MAX_DIVISOR_POINTS}"
        )));
    }
    let idx = ring_indices(ring, tuple)?;
    let rank = ring.rank_indices(&idx);
    let mut d = DivisorClass::zero(n)?;
    if rank == 0 {
        return Ok(d);
    }
    d.psi = idx
        .iter()
        .map(|&i| ring.anomaly(i) * qi(rank as i64))
        .collect();

    // Fusion vector of every sub-multiset, built by adding the highest point.
    let p = ring.weights().len();
    let mut fused: Vec<Vec<u64>> = Vec::with_capacity(1 << n);
    fused.push(ring.fuse_indices(&[]));
    for mask in 1u64..1 << n {
        let top = 63 - mask.leading_zeros() as usize;
        let prev = &fused[(mask & !(1 << top)) as usize];
        let next = ring.multiply(prev, idx[top]);
        fused.push(next);
    }
    let full = (1u64 << n) - 1;
    for part in Partition::all(n) {
        let m = part.mask();
        let (left, right) = (&fused[m as usize], &fused[(full & !m) as usize]);
        let mut c = Q::zero();
        for lam in 0..p {
            let prod = left[ring.dual_index(lam)] * right[lam];
            if prod != 0 {
                c += ring.anomaly(lam) * qi(prod as i64);
            }
        }
        d.set_boundary(part, c);
    }
    Ok(d)
}

/// Both sides of the level-scaling comparison for `(Nω_1, …, Nω_1)` on B_r.
#[derive(Debug, Clone)]
pub struct ScaleCheck {
    pub equal: bool,
    /// `𝔻((Nω_1)^n, B_r, N)`.
    pub level_n: DivisorClass,
    /// `𝔻((ω_1)^n, B_r, 1)`.
    pub level_one: DivisorClass,
}

pub fn scale_check(r: usize, n: usize, level: u64) -> Result<ScaleCheck> {
    if n % 2 == 1 {
        return Err(Error::Unsupported(format!("scaling check needs even n, got {n}")));
    }
    if level == 0 {
        return Err(Error::ZeroLevel);
    }
    let tables = Arc::new(AlgebraTables::build(AlgebraId::new(Family::B, r)?)?);
    let vector = Weight::fundamental(r, 1);
    let one = FusionRing::new(tables.clone(), 1)?;
    let level_one = conformal_blocks_divisor(&one, &one.tuple(vec![vector.clone(); n])?)?;
    let big = FusionRing::new(tables, level)?;
    let level_n = conformal_blocks_divisor(
        &big,
        &big.tuple(vec![vector.scaled(level as u32); n])?,
    )?;
    let equal = level_n == level_one.scaled(&qi(level as i64));
    Ok(ScaleCheck {
        equal,
        level_n,
        level_one,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn ring(f: Family, r: usize, l: u64) -> FusionRing {
        FusionRing::for_algebra(AlgebraId::new(f, r).unwrap(), l).unwrap()
    }

    fn tuple(ring: &FusionRing, idx: &[usize]) -> WeightTuple {
        let r = ring.tables().rank();
        ring.tuple(idx.iter().map(|&i| Weight::fundamental(r, i)).collect())
            .unwrap()
    }

    #[test]
    fn partitions_enumerate_canonically() {
        let all = Partition::all(6);
        assert_eq!(all.len(), (1 << 5) - 6 - 1);
        assert_eq!(all[0].side(), &[1, 2]);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert!(all.iter().all(|p| p.side()[0] == 1));
        assert_eq!(Partition::all(4).len(), 3);
        let p = Partition::new(6, &[2, 3, 4]).unwrap();
        assert_eq!(p.side(), &[1, 5, 6]);
        assert_eq!(p.complement(), vec![2, 3, 4]);
        assert!(Partition::new(6, &[1]).is_err());
        assert!(Partition::new(6, &[1, 7]).is_err());
        assert!(Partition::new(6, &[1, 1]).is_err());
        assert!(Partition::new(3, &[1]).is_err());
    }

    #[test]
    fn b2_four_spinors() {
        let b2 = ring(Family::B, 2, 1);
        let t = tuple(&b2, &[2, 2, 2, 2]);
        let p = Partition::new(4, &[1, 2]).unwrap();
        assert_eq!(boundary_coefficient(&b2, &t, &p).unwrap(), q(1, 2));
        let d = conformal_blocks_divisor(&b2, &t).unwrap();
        assert_eq!(d.psi(), &vec![q(5, 8); 4][..]);
        assert_eq!(d.boundary().len(), 3);
        assert!(d.boundary().values().all(|c| *c == q(1, 2)));
    }

    #[test]
    fn b2_odd_spinor_split() {
        let b2 = ring(Family::B, 2, 1);
        let t = tuple(&b2, &[1, 1, 2, 2, 2, 2]);
        let p = Partition::new(6, &[1, 3]).unwrap();
        assert_eq!(boundary_coefficient(&b2, &t, &p).unwrap(), q(5, 8));
        let d = conformal_blocks_divisor(&b2, &t).unwrap();
        assert_eq!(d.boundary_coefficient(&p), q(5, 8));
    }

    #[test]
    fn d4_example() {
        let d4 = ring(Family::D, 4, 1);
        let t = tuple(&d4, &[1, 1, 4, 4]);
        let d = conformal_blocks_divisor(&d4, &t).unwrap();
        assert_eq!(d.psi(), &vec![q(1, 2); 4][..]);
        assert_eq!(d.boundary_coefficient(&Partition::new(4, &[1, 2]).unwrap()), q(0, 1));
        assert_eq!(d.boundary_coefficient(&Partition::new(4, &[1, 3]).unwrap()), q(1, 2));
        assert_eq!(d.boundary_coefficient(&Partition::new(4, &[1, 4]).unwrap()), q(1, 2));
    }

    #[test]
    fn rank_zero_gives_zero_class() {
        let b2 = ring(Family::B, 2, 1);
        let t = tuple(&b2, &[1, 2, 2, 2, 1]);
        let d = conformal_blocks_divisor(&b2, &t).unwrap();
        assert!(d.is_zero());
        for p in Partition::all(5) {
            assert!(boundary_coefficient(&b2, &t, &p).unwrap().is_zero());
        }
    }

    #[test]
    fn too_few_points() {
        let b2 = ring(Family::B, 2, 1);
        let t = tuple(&b2, &[2, 2, 1]);
        assert!(matches!(
            conformal_blocks_divisor(&b2, &t),
            Err(Error::TooFewPoints(3))
        ));
        let t4 = tuple(&b2, &[2, 2, 2, 2]);
        assert!(boundary_coefficient(&b2, &t4, &Partition::new(5, &[1, 2]).unwrap()).is_err());
    }

    #[test]
    fn dp_matches_direct_coefficients() {
        let d5 = ring(Family::D, 5, 1);
        let t = tuple(&d5, &[1, 4, 5, 1, 5, 4, 1]);
        let d = conformal_blocks_divisor(&d5, &t).unwrap();
        for p in Partition::all(7) {
            assert_eq!(d.boundary_coefficient(&p), boundary_coefficient(&d5, &t, &p).unwrap());
        }
    }

    #[test]
    fn scaling_small_cases() {
        let s = scale_check(2, 4, 2).unwrap();
        assert!(s.equal);
        assert_eq!(s.level_n.psi(), &vec![qi(1); 4][..]);
        assert!(s.level_n.boundary().is_empty());
        assert!(scale_check(3, 4, 1).unwrap().equal);
        assert!(scale_check(2, 5, 2).is_err());
    }

    #[test]
    fn relabel_is_equivariant() {
        let b2 = ring(Family::B, 2, 1);
        let labels = [1, 1, 2, 2, 2, 2];
        let perm = [3, 1, 6, 2, 5, 4];
        let d = conformal_blocks_divisor(&b2, &tuple(&b2, &labels)).unwrap();
        let mut permuted = [0; 6];
        for (i, &l) in labels.iter().enumerate() {
            permuted[perm[i] - 1] = l;
        }
        let e = conformal_blocks_divisor(&b2, &tuple(&b2, &permuted)).unwrap();
        assert_eq!(d.relabel(&perm), e);
    }
}
