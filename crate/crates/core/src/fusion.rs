//! Ranks of conformal blocks bundles on genus-zero curves.
//!
//! The exact engine is Kac–Walton: a classical tensor product is decomposed
//! with the Racah–Speiser/Klimyk rule (weight system from Freudenthal's
//! recursion), then every constituent is moved into the level-`ℓ` alcove by
//! the shifted affine Weyl group, picking up the sign of each reflection.
//! n-point ranks are iterated fusion products.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::lie::{AlgebraId, AlgebraTables, Family, Weight};
use crate::rational::{qi, Q};

/// Refuse weight systems larger than this (Weyl dimension).
pub const WEIGHT_SYSTEM_GUARD: u128 = 500_000;

/// Weights (as Dynkin labels, possibly negative) of an irreducible module with
/// their multiplicities.
pub type WeightSystem = BTreeMap<Vec<i64>, u64>;

/// Sparse multiplicity vector over dominant weights; absent means zero.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FusionVector(BTreeMap<Weight, u64>);

impl FusionVector {
    pub fn get(&self, w: &Weight) -> u64 {
        self.0.get(w).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, &u64)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn from_signed(m: BTreeMap<Weight, i64>) -> Self {
        FusionVector(
            m.into_iter()
                .filter(|&(_, c)| c != 0)
                .map(|(w, c)| {
                    assert!(c > 0, "negative multiplicity {c} for {w}");
                    (w, c as u64)
                })
                .collect(),
        )
    }
}

impl FromIterator<(Weight, u64)> for FusionVector {
    fn from_iter<I: IntoIterator<Item = (Weight, u64)>>(iter: I) -> Self {
        FusionVector(iter.into_iter().filter(|(_, c)| *c != 0).collect())
    }
}

impl fmt::Display for FusionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(w, c)| format!("{w}:{c}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Weyl dimension `Π_{α>0} (λ+ρ, α) / (ρ, α)`.
pub fn weyl_dimension(tables: &AlgebraTables, lambda: &Weight) -> u128 {
    let shifted: Vec<i64> = lambda.labels().iter().map(|&a| a as i64 + 1).collect();
    let rho = vec![1i64; tables.rank()];
    let mut num = qi(1);
    for alpha in &tables.positive_root_labels {
        // Root labels are coordinates in the fundamental-weight basis.
        let top = tables.inner_scaled(&shifted, alpha);
        let bottom = tables.inner_scaled(&rho, alpha);
        num *= qi(top) / qi(bottom);
    }
    assert!(num.is_integer());
    num.to_integer().to_u128().expect("dimension fits in u128")
}

/// Full weight system of `V_λ` by Freudenthal's recursion.
pub fn weight_system(tables: &AlgebraTables, lambda: &Weight) -> Result<WeightSystem> {
    let dim = weyl_dimension(tables, lambda);
    if dim > WEIGHT_SYSTEM_GUARD {
        return Err(Error::WeightSystemTooLarge {
            dim,
            limit: WEIGHT_SYSTEM_GUARD,
        });
    }
    let r = tables.rank();
    let top = lambda.to_signed();
    let shift = |v: &[i64]| -> Vec<i64> { v.iter().map(|a| a + 1).collect() };
    let top_norm = {
        let s = shift(&top);
        tables.inner_scaled(&s, &s)
    };
    let roots = &tables.positive_root_labels;

    let mut mult: HashMap<Vec<i64>, u64> = HashMap::new();
    mult.insert(top.clone(), 1);
    let mut layer = vec![top.clone()];
    while !layer.is_empty() {
        let mut next: Vec<Vec<i64>> = Vec::new();
        let mut queued: HashSet<Vec<i64>> = HashSet::new();
        for mu in &layer {
            for i in 0..r {
                let cand: Vec<i64> = mu.iter().zip(&tables.cartan[i]).map(|(a, b)| a - b).collect();
                if mult.contains_key(&cand) || queued.contains(&cand) {
                    continue;
                }
                let (dom, _) = tables.to_dominant(&cand);
                if tables.dominates(&top, &dom) {
                    queued.insert(cand.clone());
                    next.push(cand);
                }
            }
        }
        for mu in &next {
            let s = shift(mu);
            let denom = top_norm - tables.inner_scaled(&s, &s);
            assert!(denom > 0, "Freudenthal denominator must be positive");
            let mut numer: i64 = 0;
            for alpha in roots {
                let mut nu: Vec<i64> = mu.iter().zip(alpha).map(|(a, b)| a + b).collect();
                while let Some(&m) = mult.get(&nu) {
                    numer += m as i64 * tables.inner_scaled(&nu, alpha);
                    for (x, a) in nu.iter_mut().zip(alpha) {
                        *x += a;
                    }
                }
            }
            let numer = 2 * numer;
            assert_eq!(numer % denom, 0, "Freudenthal quotient must be integral");
            let m = numer / denom;
            assert!(m > 0);
            mult.insert(mu.clone(), m as u64);
        }
        layer = next;
    }
    let ws: WeightSystem = mult.into_iter().collect();
    debug_assert_eq!(ws.values().map(|&m| m as u128).sum::<u128>(), dim);
    Ok(ws)
}

fn decompose_with(
    tables: &AlgebraTables,
    lambda: &Weight,
    system: &WeightSystem,
) -> BTreeMap<Vec<i64>, i64> {
    let base: Vec<i64> = lambda.labels().iter().map(|&a| a as i64 + 1).collect();
    let mut out: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
    for (kappa, &m) in system {
        let v: Vec<i64> = base.iter().zip(kappa).map(|(a, b)| a + b).collect();
        let (dom, steps) = tables.to_dominant(&v);
        if dom.contains(&0) {
            continue;
        }
        let sign = if steps % 2 == 0 { 1 } else { -1 };
        let nu: Vec<i64> = dom.iter().map(|a| a - 1).collect();
        *out.entry(nu).or_insert(0) += sign * m as i64;
    }
    out
}

fn to_weight_map(m: BTreeMap<Vec<i64>, i64>) -> BTreeMap<Weight, i64> {
    m.into_iter()
        .map(|(k, c)| (Weight::from_signed(&k).expect("dominant"), c))
        .collect()
}

fn check_rank(tables: &AlgebraTables, w: &Weight) -> Result<()> {
    if w.rank() != tables.rank() {
        return Err(Error::DimensionMismatch {
            algebra: tables.id,
            expected: tables.rank(),
            got: w.rank(),
        });
    }
    Ok(())
}

fn smaller_first<'a>(
    tables: &AlgebraTables,
    lambda: &'a Weight,
    mu: &'a Weight,
) -> (&'a Weight, &'a Weight) {
    if weyl_dimension(tables, mu) <= weyl_dimension(tables, lambda) {
        (lambda, mu)
    } else {
        (mu, lambda)
    }
}

/// Classical decomposition `V_λ ⊗ V_μ = ⊕ N^ν V_ν`.
pub fn tensor_decompose(tables: &AlgebraTables, lambda: &Weight, mu: &Weight) -> Result<FusionVector> {
    check_rank(tables, lambda)?;
    check_rank(tables, mu)?;
    let (big, small) = smaller_first(tables, lambda, mu);
    let system = weight_system(tables, small)?;
    Ok(FusionVector::from_signed(to_weight_map(decompose_with(
        tables, big, &system,
    ))))
}

/// Moves `v` (a shifted weight `ν + ρ`) into the interior of the alcove of
/// level `k = ℓ + h∨`. Returns `None` on a wall, otherwise the image and the sign.
fn affine_reduce(tables: &AlgebraTables, k: i64, v: &[i64]) -> Option<(Vec<i64>, i64)> {
    let mut v = v.to_vec();
    let mut sign = 1;
    loop {
        if let Some(i) = v.iter().position(|&x| x < 0) {
            tables.reflect(i, &mut v);
            sign = -sign;
            continue;
        }
        let lvl: i64 = v
            .iter()
            .zip(&tables.comarks)
            .map(|(&a, &c)| a * c as i64)
            .sum();
        if lvl > k {
            let excess = lvl - k;
            for (x, t) in v.iter_mut().zip(&tables.theta_labels) {
                *x -= excess * t;
            }
            sign = -sign;
            continue;
        }
        if lvl == k || v.contains(&0) {
            return None;
        }
        return Some((v, sign));
    }
}

fn truncate(tables: &AlgebraTables, level: u64, classical: BTreeMap<Vec<i64>, i64>) -> FusionVector {
    let k = (level + tables.dual_coxeter) as i64;
    let mut out: BTreeMap<Weight, i64> = BTreeMap::new();
    for (nu, c) in classical {
        let shifted: Vec<i64> = nu.iter().map(|a| a + 1).collect();
        if let Some((v, sign)) = affine_reduce(tables, k, &shifted) {
            let w = Weight::from_signed(&v.iter().map(|a| a - 1).collect::<Vec<_>>())
                .expect("alcove interior is dominant");
            *out.entry(w).or_insert(0) += sign * c;
        }
    }
    FusionVector::from_signed(out)
}

fn check_level(tables: &AlgebraTables, level: u64, w: &Weight) -> Result<()> {
    if level == 0 {
        return Err(Error::ZeroLevel);
    }
    let wl = tables.weight_level(w)?;
    if wl > level {
        return Err(Error::LevelExceeded {
            weight: w.to_string(),
            weight_level: wl,
            level,
        });
    }
    Ok(())
}

/// Level-`ℓ` fusion product `λ · μ = Σ N^{(ℓ)ν}_{λμ} ν`.
pub fn fusion_product(
    tables: &AlgebraTables,
    level: u64,
    lambda: &Weight,
    mu: &Weight,
) -> Result<FusionVector> {
    check_level(tables, level, lambda)?;
    check_level(tables, level, mu)?;
    let (big, small) = smaller_first(tables, lambda, mu);
    let system = weight_system(tables, small)?;
    Ok(truncate(tables, level, decompose_with(tables, big, &system)))
}

/// An ordered n-tuple of level-`ℓ` weights attached to marked points.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightTuple {
    pub algebra: AlgebraId,
    pub level: u64,
    entries: Vec<Weight>,
}

impl WeightTuple {
    pub fn new(tables: &AlgebraTables, level: u64, entries: Vec<Weight>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyTuple);
        }
        for w in &entries {
            check_level(tables, level, w)?;
        }
        Ok(WeightTuple {
            algebra: tables.id,
            level,
            entries,
        })
    }

    pub fn entries(&self) -> &[Weight] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// The fusion ring at one level, with products computed on demand and cached.
///
/// Safe to share between threads: the product table is a grid of `OnceLock`s
/// and the weight-system memo sits behind a mutex.
pub struct FusionRing {
    tables: Arc<AlgebraTables>,
    level: u64,
    weights: Vec<Weight>,
    index: HashMap<Weight, usize>,
    duals: Vec<usize>,
    anomalies: Vec<Q>,
    products: Vec<OnceLock<Vec<(usize, u64)>>>,
    systems: Mutex<HashMap<Weight, Arc<WeightSystem>>>,
}

impl fmt::Debug for FusionRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FusionRing")
            .field("algebra", &self.tables.id)
            .field("level", &self.level)
            .field("weights", &self.weights.len())
            .finish()
    }
}

impl FusionRing {
    pub fn new(tables: Arc<AlgebraTables>, level: u64) -> Result<Self> {
        if level == 0 {
            return Err(Error::ZeroLevel);
        }
        let weights = tables.level_weights(level);
        let index: HashMap<Weight, usize> = weights
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i))
            .collect();
        let duals = weights
            .iter()
            .map(|w| index[&tables.dual_weight(w).expect("rank checked")])
            .collect();
        let anomalies = weights
            .iter()
            .map(|w| tables.trace_anomaly(level, w).expect("weight in P_level"))
            .collect();
        let p = weights.len();
        Ok(FusionRing {
            tables,
            level,
            weights,
            index,
            duals,
            anomalies,
            products: (0..p * p).map(|_| OnceLock::new()).collect(),
            systems: Mutex::new(HashMap::new()),
        })
    }

    pub fn for_algebra(id: AlgebraId, level: u64) -> Result<Self> {
        FusionRing::new(Arc::new(AlgebraTables::build(id)?), level)
    }

    pub fn tables(&self) -> &AlgebraTables {
        &self.tables
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    /// `P_ℓ` in lexicographic order; positions are the ring's indices.
    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn index_of(&self, w: &Weight) -> Result<usize> {
        check_level(&self.tables, self.level, w)?;
        Ok(self.index[w])
    }

    pub fn dual_index(&self, i: usize) -> usize {
        self.duals[i]
    }

    pub fn anomaly(&self, i: usize) -> &Q {
        &self.anomalies[i]
    }

    pub fn tuple(&self, entries: Vec<Weight>) -> Result<WeightTuple> {
        WeightTuple::new(&self.tables, self.level, entries)
    }

    fn system(&self, w: &Weight) -> Result<Arc<WeightSystem>> {
        if let Some(s) = self.systems.lock().expect("memo poisoned").get(w) {
            return Ok(s.clone());
        }
        let s = Arc::new(weight_system(&self.tables, w)?);
        self.systems
            .lock()
            .expect("memo poisoned")
            .insert(w.clone(), s.clone());
        Ok(s)
    }

    /// Fusion coefficients of `weights[i] · weights[j]` as `(index, multiplicity)`.
    pub fn product(&self, i: usize, j: usize) -> &[(usize, u64)] {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        let p = self.weights.len();
        self.products[i * p + j].get_or_init(|| {
            let (a, b) = (&self.weights[i], &self.weights[j]);
            let (big, small) = smaller_first(&self.tables, a, b);
            let system = self.system(small).expect("weight system within guard");
            let fv = truncate(&self.tables, self.level, decompose_with(&self.tables, big, &system));
            fv.iter().map(|(w, &c)| (self.index[w], c)).collect()
        })
    }

    pub fn fusion_product(&self, lambda: &Weight, mu: &Weight) -> Result<FusionVector> {
        let (i, j) = (self.index_of(lambda)?, self.index_of(mu)?);
        Ok(self
            .product(i, j)
            .iter()
            .map(|&(k, c)| (self.weights[k].clone(), c))
            .collect())
    }

    /// Dense vector `v · weights[j]`.
    pub fn multiply(&self, v: &[u64], j: usize) -> Vec<u64> {
        let mut out = vec![0u64; self.weights.len()];
        for (i, &c) in v.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for &(k, m) in self.product(i, j) {
                out[k] += c * m;
            }
        }
        out
    }

    /// Dense fusion vector of the product of the given ring elements; the
    /// empty product is the vacuum.
    pub fn fuse_indices(&self, idx: &[usize]) -> Vec<u64> {
        let mut v = vec![0u64; self.weights.len()];
        v[self.index[&Weight::zero(self.tables.rank())]] = 1;
        for &j in idx {
            v = self.multiply(&v, j);
        }
        v
    }

    /// Rank of the n-point blocks: coefficient of `Λ_n*` in `Λ_1 · … · Λ_{n-1}`.
    pub fn rank_indices(&self, idx: &[usize]) -> u64 {
        match idx.split_last() {
            None => 1,
            Some((&last, rest)) => self.fuse_indices(rest)[self.duals[last]],
        }
    }

    pub fn rank(&self, entries: &[Weight]) -> Result<u64> {
        if entries.is_empty() {
            return Err(Error::EmptyTuple);
        }
        let idx = entries
            .iter()
            .map(|w| self.index_of(w))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.rank_indices(&idx))
    }
}

/// Rank through a freshly built ring; prefer [`FusionRing::rank`] in loops.
pub fn rank(tables: &AlgebraTables, level: u64, tuple: &WeightTuple) -> Result<u64> {
    if tuple.level != level || tuple.algebra != tables.id {
        return Err(Error::Unsupported(format!(
            "tuple is for {} level {}, not {} level {}",
            tuple.algebra, tuple.level, tables.id, level
        )));
    }
    FusionRing::new(Arc::new(tables.clone()), level)?.rank(tuple.entries())
}

/// Level-one ranks for A, B and D in closed form.
pub fn rank_level_one_closed_form(tables: &AlgebraTables, tuple: &WeightTuple) -> Result<u64> {
    if tuple.level != 1 {
        return Err(Error::Unsupported(format!(
            "closed form needs level 1, got {}; use the fusion engine",
            tuple.level
        )));
    }
    let r = tables.rank();
    match tables.id.family {
        Family::C => Err(Error::Unsupported(
            "no level-one closed form for type C; use the fusion engine".into(),
        )),
        Family::A => {
            let class: u64 = tuple
                .entries()
                .iter()
                .map(|w| {
                    w.labels()
                        .iter()
                        .enumerate()
                        .map(|(j, &a)| (j as u64 + 1) * a as u64)
                        .sum::<u64>()
                })
                .sum();
            Ok(u64::from(class.is_multiple_of(r as u64 + 1)))
        }
        Family::B => {
            let spinor = Weight::fundamental(r, r);
            let vector = Weight::fundamental(r, 1);
            let n2 = tuple.entries().iter().filter(|w| **w == spinor).count();
            let n1 = tuple.entries().iter().filter(|w| **w == vector).count();
            Ok(if n2 % 2 == 1 {
                0
            } else if n2 > 0 {
                1u64 << (n2 / 2 - 1)
            } else {
                u64::from(n1 % 2 == 0)
            })
        }
        Family::D => {
            let dim = tables.fundamental[0].len();
            let mut sum = vec![Q::from_integer(0.into()); dim];
            for w in tuple.entries() {
                for (s, c) in sum.iter_mut().zip(tables.coordinates(w)?) {
                    *s += c;
                }
            }
            let integral = sum.iter().all(|c| c.is_integer());
            let even = integral
                && sum
                    .iter()
                    .fold(Q::from_integer(0.into()), |a, c| a + c)
                    .to_integer()
                    % 2
                    == 0.into();
            Ok(u64::from(integral && even))
        }
    }
}

/// Independent numeric oracle: the Verlinde formula with a Kac–Peterson
/// S-matrix evaluated in floating point, rounded with an integrality check.
pub mod verlinde {
    use super::*;
    use num_complex::Complex64;

    pub const MAX_WEIGHTS: usize = 2000;
    pub const TOLERANCE: f64 = 1e-6;

    /// Weyl orbit of a regular vector with the sign of the group element.
    fn signed_orbit(tables: &AlgebraTables, v: &[i64]) -> Vec<(Vec<i64>, f64)> {
        let mut seen: HashMap<Vec<i64>, usize> = HashMap::new();
        seen.insert(v.to_vec(), 0);
        let mut out = vec![(v.to_vec(), 1.0)];
        let mut frontier = vec![v.to_vec()];
        let mut depth = 0;
        while !frontier.is_empty() {
            depth += 1;
            let mut next = Vec::new();
            for u in &frontier {
                for i in 0..tables.rank() {
                    let mut w = u.clone();
                    tables.reflect(i, &mut w);
                    if !seen.contains_key(&w) {
                        seen.insert(w.clone(), depth);
                        out.push((w.clone(), if depth % 2 == 0 { 1.0 } else { -1.0 }));
                        next.push(w);
                    }
                }
            }
            frontier = next;
        }
        out
    }

    /// Unitary modular S-matrix indexed like `tables.level_weights(level)`.
    pub fn s_matrix(tables: &AlgebraTables, level: u64) -> Result<Vec<Vec<Complex64>>> {
        let weights = tables.level_weights(level);
        if weights.len() > MAX_WEIGHTS {
            return Err(Error::Unsupported(format!(
                "|P_level| = {} exceeds the oracle guard {MAX_WEIGHTS}",
                weights.len()
            )));
        }
        let k = (level + tables.dual_coxeter) as f64;
        let shifted: Vec<Vec<i64>> = weights
            .iter()
            .map(|w| w.labels().iter().map(|&a| a as i64 + 1).collect())
            .collect();
        let orbits: Vec<_> = shifted.iter().map(|v| signed_orbit(tables, v)).collect();
        let denom = tables.gram_denom as f64;
        let mut s: Vec<Vec<Complex64>> = orbits
            .iter()
            .map(|orbit| {
                shifted
                    .iter()
                    .map(|mu| {
                        orbit.iter().fold(Complex64::new(0.0, 0.0), |acc, (w, sign)| {
                            let ip = tables.inner_scaled(w, mu) as f64 / denom;
                            acc + Complex64::from_polar(
                                *sign,
                                -2.0 * std::f64::consts::PI * ip / k,
                            )
                        })
                    })
                    .collect()
            })
            .collect();
        let norm = s[0].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let phase = s[0][0] / s[0][0].norm();
        for row in s.iter_mut() {
            for z in row.iter_mut() {
                *z /= phase * norm;
            }
        }
        Ok(s)
    }

    pub fn rank(tables: &AlgebraTables, level: u64, tuple: &WeightTuple) -> Result<u64> {
        let weights = tables.level_weights(level);
        let s = s_matrix(tables, level)?;
        let idx: Vec<usize> = tuple
            .entries()
            .iter()
            .map(|w| weights.binary_search(w).expect("weight in P_level"))
            .collect();
        let n = idx.len() as i32;
        let mut total = Complex64::new(0.0, 0.0);
        #[allow(clippy::needless_range_loop)]
        for mu in 0..weights.len() {
            let mut term = s[0][mu].powi(2 - n);
            for &i in &idx {
                term *= s[i][mu];
            }
            total += term;
        }
        let rounded = total.re.round();
        let residual = (total.re - rounded).abs() + total.im.abs();
        if residual > TOLERANCE || rounded < 0.0 {
            return Err(Error::OracleResidual { residual });
        }
        Ok(rounded as u64)
    }
}

pub use verlinde::rank as verlinde_rank_numeric;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::Family;

    fn tables(f: Family, r: usize) -> AlgebraTables {
        AlgebraTables::build(AlgebraId::new(f, r).unwrap()).unwrap()
    }

    fn w(t: &AlgebraTables, i: usize) -> Weight {
        t.fundamental_weight(i)
    }

    #[test]
    fn a1_adjoint_weight_system() {
        let t = tables(Family::A, 1);
        let ws = weight_system(&t, &Weight::new(vec![2])).unwrap();
        let expect: WeightSystem = [(vec![2], 1), (vec![0], 1), (vec![-2], 1)].into_iter().collect();
        assert_eq!(ws, expect);
    }

    #[test]
    fn b2_vector_weight_system() {
        let t = tables(Family::B, 2);
        let ws = weight_system(&t, &w(&t, 1)).unwrap();
        assert_eq!(ws.len(), 5);
        assert!(ws.values().all(|&m| m == 1));
        assert_eq!(weyl_dimension(&t, &w(&t, 1)), 5);
    }

    #[test]
    fn trivial_weight_system() {
        let t = tables(Family::D, 4);
        let ws = weight_system(&t, &Weight::zero(4)).unwrap();
        assert_eq!(ws.len(), 1);
        assert_eq!(ws[&vec![0, 0, 0, 0]], 1);
    }

    #[test]
    fn weight_system_sizes_match_weyl_dimension() {
        let cases = [
            (Family::A, 2, vec![1, 1]),
            (Family::A, 3, vec![2, 0, 1]),
            (Family::B, 3, vec![1, 1, 0]),
            (Family::B, 3, vec![0, 0, 3]),
            (Family::C, 3, vec![0, 1, 1]),
            (Family::D, 4, vec![0, 1, 0, 0]),
        ];
        for (f, r, labels) in cases {
            let t = tables(f, r);
            let lam = Weight::new(labels);
            let ws = weight_system(&t, &lam).unwrap();
            let total: u128 = ws.values().map(|&m| m as u128).sum();
            assert_eq!(total, weyl_dimension(&t, &lam), "{} {lam}", t.id);
        }
        // Adjoint of B3 has a 3-dimensional zero weight space.
        let t = tables(Family::B, 3);
        let ws = weight_system(&t, &Weight::new(vec![0, 1, 0])).unwrap();
        assert_eq!(ws[&vec![0, 0, 0]], 3);
        assert_eq!(weyl_dimension(&t, &Weight::new(vec![0, 1, 0])), 21);
    }

    #[test]
    fn small_tensor_products() {
        let a1 = tables(Family::A, 1);
        let fv = tensor_decompose(&a1, &w(&a1, 1), &w(&a1, 1)).unwrap();
        let expect: FusionVector = [(Weight::new(vec![0]), 1), (Weight::new(vec![2]), 1)]
            .into_iter()
            .collect();
        assert_eq!(fv, expect);

        let b2 = tables(Family::B, 2);
        let fv = tensor_decompose(&b2, &w(&b2, 2), &w(&b2, 2)).unwrap();
        let expect: FusionVector = [
            (Weight::zero(2), 1),
            (w(&b2, 1), 1),
            (Weight::new(vec![0, 2]), 1),
        ]
        .into_iter()
        .collect();
        assert_eq!(fv, expect);

        let lam = Weight::new(vec![1, 1]);
        let fv = tensor_decompose(&b2, &lam, &Weight::zero(2)).unwrap();
        assert_eq!(fv, [(lam, 1)].into_iter().collect());
    }

    #[test]
    fn tensor_dimensions_balance() {
        for (f, r) in [(Family::A, 2), (Family::B, 2), (Family::C, 3), (Family::D, 4)] {
            let t = tables(f, r);
            let ws = t.level_weights(2);
            for a in &ws {
                for b in &ws {
                    let fv = tensor_decompose(&t, a, b).unwrap();
                    let total: u128 = fv
                        .iter()
                        .map(|(nu, &m)| m as u128 * weyl_dimension(&t, nu))
                        .sum();
                    assert_eq!(total, weyl_dimension(&t, a) * weyl_dimension(&t, b));
                }
            }
        }
    }

    #[test]
    fn level_one_fusion() {
        for r in 2..=5 {
            let t = tables(Family::B, r);
            let fv = fusion_product(&t, 1, &w(&t, r), &w(&t, r)).unwrap();
            let expect: FusionVector = [(Weight::zero(r), 1), (w(&t, 1), 1)].into_iter().collect();
            assert_eq!(fv, expect);
            let fv = fusion_product(&t, 1, &w(&t, 1), &w(&t, r)).unwrap();
            assert_eq!(fv, [(w(&t, r), 1)].into_iter().collect());
        }
        let a1 = tables(Family::A, 1);
        let fv = fusion_product(&a1, 1, &w(&a1, 1), &w(&a1, 1)).unwrap();
        assert_eq!(fv, [(Weight::zero(1), 1)].into_iter().collect());
    }

    #[test]
    fn vacuum_is_unit() {
        for (f, r, l) in [(Family::B, 3, 2), (Family::C, 2, 3), (Family::A, 2, 3)] {
            let t = tables(f, r);
            for lam in t.level_weights(l) {
                let fv = fusion_product(&t, l, &lam, &Weight::zero(r)).unwrap();
                assert_eq!(fv, [(lam.clone(), 1)].into_iter().collect());
            }
        }
    }

    #[test]
    fn fusion_rejects_out_of_level() {
        let t = tables(Family::B, 3);
        assert!(fusion_product(&t, 1, &w(&t, 2), &w(&t, 1)).is_err());
    }

    #[test]
    fn fusion_commutative_and_associative() {
        let ring = FusionRing::for_algebra(AlgebraId::new(Family::B, 2).unwrap(), 3).unwrap();
        let p = ring.weights().len();
        for i in 0..p {
            for j in 0..p {
                let a = ring.fusion_product(&ring.weights()[i], &ring.weights()[j]).unwrap();
                let b = ring.fusion_product(&ring.weights()[j], &ring.weights()[i]).unwrap();
                assert_eq!(a, b);
                for k in 0..p {
                    let left = ring.fuse_indices(&[i, j, k]);
                    let jk = ring.fuse_indices(&[j, k]);
                    let mut right = vec![0u64; p];
                    for (x, &c) in jk.iter().enumerate() {
                        for &(y, m) in ring.product(i, x) {
                            right[y] += c * m;
                        }
                    }
                    assert_eq!(left, right);
                }
            }
        }
    }

    #[test]
    fn ranks() {
        let b2 = FusionRing::for_algebra(AlgebraId::new(Family::B, 2).unwrap(), 1).unwrap();
        let s = b2.tables().fundamental_weight(2);
        let v = b2.tables().fundamental_weight(1);
        assert_eq!(b2.rank(&[s.clone(), s.clone(), s.clone(), s.clone()]).unwrap(), 2);
        assert_eq!(b2.rank(&[v.clone(), s.clone(), s.clone(), s.clone()]).unwrap(), 0);
        assert_eq!(b2.rank(&[v.clone(), v.clone()]).unwrap(), 1);
        let d5 = FusionRing::for_algebra(AlgebraId::new(Family::D, 5).unwrap(), 1).unwrap();
        let sp = d5.tables().fundamental_weight(5);
        assert_eq!(d5.rank(&[sp.clone(), sp.clone()]).unwrap(), 0);
        let b3 = FusionRing::for_algebra(AlgebraId::new(Family::B, 3).unwrap(), 1).unwrap();
        let v3 = b3.tables().fundamental_weight(1);
        assert_eq!(b3.rank(&vec![v3; 4]).unwrap(), 1);
    }

    #[test]
    fn closed_form_examples() {
        let b2 = tables(Family::B, 2);
        let tup = |t: &AlgebraTables, idx: &[usize]| {
            WeightTuple::new(t, 1, idx.iter().map(|&i| t.fundamental_weight(i)).collect()).unwrap()
        };
        assert_eq!(rank_level_one_closed_form(&b2, &tup(&b2, &[1, 1, 2, 2, 2, 2])).unwrap(), 2);
        assert_eq!(rank_level_one_closed_form(&b2, &tup(&b2, &[1, 1])).unwrap(), 1);
        let d4 = tables(Family::D, 4);
        assert_eq!(rank_level_one_closed_form(&d4, &tup(&d4, &[1, 1, 4, 4])).unwrap(), 1);
        assert_eq!(rank_level_one_closed_form(&d4, &tup(&d4, &[4, 4, 4, 4])).unwrap(), 1);
        let c2 = tables(Family::C, 2);
        assert!(rank_level_one_closed_form(&c2, &tup(&c2, &[1, 1])).is_err());
        let b2_l2 = WeightTuple::new(&b2, 2, vec![Weight::zero(2)]).unwrap();
        assert!(rank_level_one_closed_form(&b2, &b2_l2).is_err());
    }

    #[test]
    fn verlinde_oracle_examples() {
        let b2 = tables(Family::B, 2);
        let s = b2.fundamental_weight(2);
        let t = WeightTuple::new(&b2, 1, vec![s; 4]).unwrap();
        assert_eq!(verlinde_rank_numeric(&b2, 1, &t).unwrap(), 2);
        let a1 = tables(Family::A, 1);
        let t = WeightTuple::new(&a1, 2, vec![Weight::new(vec![1]); 4]).unwrap();
        assert_eq!(verlinde_rank_numeric(&a1, 2, &t).unwrap(), 2);
        assert_eq!(rank(&a1, 2, &t).unwrap(), 2);
        let d5 = tables(Family::D, 5);
        let pair = WeightTuple::new(&d5, 1, vec![d5.fundamental_weight(4), d5.fundamental_weight(5)]).unwrap();
        assert_eq!(verlinde_rank_numeric(&d5, 1, &pair).unwrap(), 1);
    }

    #[test]
    fn tuple_validation() {
        let b3 = tables(Family::B, 3);
        assert!(matches!(WeightTuple::new(&b3, 1, vec![]), Err(Error::EmptyTuple)));
        assert!(WeightTuple::new(&b3, 1, vec![b3.fundamental_weight(2)]).is_err());
        assert!(WeightTuple::new(&b3, 2, vec![b3.fundamental_weight(2)]).is_ok());
    }
}
