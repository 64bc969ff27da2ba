//! Root-system tables for the classical simple Lie algebras A_r, B_r, C_r, D_r.
//!
//! Weights are carried as Dynkin labels. Every table is derived from the
//! textbook orthogonal realization (simple roots written in the basis `e_i`),
//! with the invariant form scaled so that the highest root has squared
//! length 2. Dynkin-label arithmetic (reflections, levels) is integral; inner
//! products go through an integer Gram matrix of the fundamental weights with
//! a common denominator.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{q, qi, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl Family {
    pub fn min_rank(self) -> usize {
        match self {
            Family::A => 1,
            Family::B | Family::C => 2,
            Family::D => 3,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(Family::A),
            "B" | "b" => Ok(Family::B),
            "C" | "c" => Ok(Family::C),
            "D" | "d" => Ok(Family::D),
            other => Err(Error::Unsupported(format!(
                "unknown family {other:?}; expected one of A, B, C, D"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AlgebraId {
    pub family: Family,
    pub rank: usize,
}

impl AlgebraId {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let min = family.min_rank();
        if rank < min {
            return Err(Error::RankBelowBound {
                family: family.letter(),
                rank,
                min,
            });
        }
        Ok(AlgebraId { family, rank })
    }
}

impl fmt::Display for AlgebraId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

/// A dominant integral weight given by its Dynkin labels `a_1..a_r`.
///
/// Ordering is lexicographic on the labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight {
    labels: Vec<u32>,
}

impl Weight {
    pub fn new(labels: Vec<u32>) -> Self {
        Weight { labels }
    }

    pub fn zero(rank: usize) -> Self {
        Weight {
            labels: vec![0; rank],
        }
    }

    /// `ω_i` for `1 <= i <= rank`; `ω_0` is the zero weight.
    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut w = Weight::zero(rank);
        if i > 0 {
            w.labels[i - 1] = 1;
        }
        w
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn is_zero(&self) -> bool {
        self.labels.iter().all(|&a| a == 0)
    }

    pub fn scaled(&self, k: u32) -> Self {
        Weight {
            labels: self.labels.iter().map(|a| a * k).collect(),
        }
    }

    pub(crate) fn to_signed(&self) -> Vec<i64> {
        self.labels.iter().map(|&a| a as i64).collect()
    }

    pub(crate) fn from_signed(v: &[i64]) -> Option<Self> {
        v.iter()
            .map(|&a| u32::try_from(a).ok())
            .collect::<Option<Vec<_>>>()
            .map(Weight::new)
    }

    /// Parses `w0`, `wi`, `k*wi` or `[a1,...,ar]`.
    pub fn parse(input: &str, rank: usize) -> Result<Self> {
        let s = input.trim();
        let err = |reason: String| Error::WeightSyntax {
            input: input.to_string(),
            reason,
        };
        if let Some(body) = s.strip_prefix('[') {
            let body = body
                .strip_suffix(']')
                .ok_or_else(|| err("missing closing bracket".into()))?;
            let labels = body
                .split(',')
                .map(|t| t.trim().parse::<u32>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| err("labels must be non-negative integers".into()))?;
            if labels.len() != rank {
                return Err(err(format!(
                    "expected {rank} Dynkin labels, got {}",
                    labels.len()
                )));
            }
            return Ok(Weight::new(labels));
        }
        let (mult, fund) = match s.split_once('*') {
            Some((k, w)) => (
                k.trim()
                    .parse::<u32>()
                    .map_err(|_| err("multiplier must be a non-negative integer".into()))?,
                w.trim(),
            ),
            None => (1, s),
        };
        let idx = fund
            .strip_prefix('w')
            .or_else(|| fund.strip_prefix('ω'))
            .ok_or_else(|| err("expected wi, k*wi or [a1,...,ar]".into()))?
            .parse::<usize>()
            .map_err(|_| err("fundamental weight index must be an integer".into()))?;
        if idx > rank {
            return Err(err(format!("index {idx} exceeds rank {rank}")));
        }
        Ok(Weight::fundamental(rank, idx).scaled(mult))
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nonzero: Vec<_> = self
            .labels
            .iter()
            .enumerate()
            .filter(|(_, &a)| a != 0)
            .collect();
        match nonzero.as_slice() {
            [] => write!(f, "w0"),
            [(i, 1)] => write!(f, "w{}", i + 1),
            [(i, k)] => write!(f, "{}*w{}", k, i + 1),
            _ => {
                let parts: Vec<String> = self.labels.iter().map(|a| a.to_string()).collect();
                write!(f, "[{}]", parts.join(","))
            }
        }
    }
}

/// Root-system data of one classical algebra.
#[derive(Debug, Clone)]
pub struct AlgebraTables {
    pub id: AlgebraId,
    /// Scale of the Euclidean dot product in the orthogonal realization.
    pub metric: Q,
    /// Row `i` holds the orthogonal coordinates of `ω_{i+1}`.
    pub fundamental: Vec<Vec<Q>>,
    pub simple_roots: Vec<Vec<Q>>,
    pub rho: Vec<Q>,
    pub theta: Vec<Q>,
    pub dual_coxeter: u64,
    pub comarks: Vec<u64>,
    pub positive_roots: Vec<Vec<Q>>,
    /// Row `j` holds the Dynkin labels of the simple root `α_{j+1}`.
    pub(crate) cartan: Vec<Vec<i64>>,
    pub(crate) positive_root_labels: Vec<Vec<i64>>,
    pub(crate) theta_labels: Vec<i64>,
    /// `(ω_i, ω_j) = gram[i][j] / gram_denom`.
    pub(crate) gram: Vec<Vec<i64>>,
    pub(crate) gram_denom: i64,
    /// Coefficients of `α_j` in terms of `ω_i` inverted: `α`-coordinates of `ω_i`
    /// scaled by `inv_cartan_denom`.
    inv_cartan: Vec<Vec<i64>>,
    inv_cartan_denom: i64,
}

fn unit(dim: usize, i: usize, c: Q) -> Vec<Q> {
    let mut v = vec![Q::zero(); dim];
    v[i] = c;
    v
}

fn add(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn scale(a: &[Q], c: &Q) -> Vec<Q> {
    a.iter().map(|x| x * c).collect()
}

impl AlgebraTables {
    pub fn build(id: AlgebraId) -> Result<Self> {
        let id = AlgebraId::new(id.family, id.rank)?;
        let r = id.rank;
        let (dim, metric) = match id.family {
            Family::A => (r + 1, qi(1)),
            Family::B | Family::D => (r, qi(1)),
            Family::C => (r, q(1, 2)),
        };
        let e = |i: usize| unit(dim, i, qi(1));
        let half = q(1, 2);

        let mut simple_roots: Vec<Vec<Q>> = (0..r - 1).map(|i| sub(&e(i), &e(i + 1))).collect();
        simple_roots.push(match id.family {
            Family::A => sub(&e(r - 1), &e(r)),
            Family::B => e(r - 1),
            Family::C => scale(&e(r - 1), &qi(2)),
            Family::D => add(&e(r - 2), &e(r - 1)),
        });

        let prefix = |i: usize| -> Vec<Q> {
            (0..dim)
                .map(|k| if k < i { qi(1) } else { Q::zero() })
                .collect()
        };
        let all_half = vec![half.clone(); dim];
        let fundamental: Vec<Vec<Q>> = (1..=r)
            .map(|i| match id.family {
                Family::A => {
                    let shift = q(i as i64, (r + 1) as i64);
                    prefix(i).iter().map(|x| x - &shift).collect()
                }
                Family::B if i == r => all_half.clone(),
                Family::D if i == r => all_half.clone(),
                Family::D if i == r - 1 => {
                    let mut v = all_half.clone();
                    v[r - 1] = -half.clone();
                    v
                }
                _ => prefix(i),
            })
            .collect();

        let mut positive_roots = Vec::new();
        let n_pairs = match id.family {
            Family::A => dim,
            _ => r,
        };
        for i in 0..n_pairs {
            for j in i + 1..n_pairs {
                positive_roots.push(sub(&e(i), &e(j)));
                if id.family != Family::A {
                    positive_roots.push(add(&e(i), &e(j)));
                }
            }
            match id.family {
                Family::B => positive_roots.push(e(i)),
                Family::C => positive_roots.push(scale(&e(i), &qi(2))),
                _ => {}
            }
        }

        let zero_vec = vec![Q::zero(); dim];
        let rho = scale(
            &positive_roots.iter().fold(zero_vec, |acc, a| add(&acc, a)),
            &half,
        );
        let theta = match id.family {
            Family::A => sub(&e(0), &e(r)),
            Family::B | Family::D => add(&e(0), &e(1)),
            Family::C => scale(&e(0), &qi(2)),
        };

        let dot = |a: &[Q], b: &[Q]| -> Q {
            a.iter()
                .zip(b)
                .fold(Q::zero(), |acc, (x, y)| acc + x * y)
                * &metric
        };
        let pair = |v: &[Q], alpha: &[Q]| -> Q { qi(2) * dot(v, alpha) / dot(alpha, alpha) };
        let as_int = |x: Q| -> i64 {
            assert!(x.is_integer(), "non-integral pairing {x}");
            x.to_integer().to_i64().expect("small pairing")
        };
        let labels_of = |v: &[Q]| -> Vec<i64> {
            simple_roots.iter().map(|a| as_int(pair(v, a))).collect()
        };

        let cartan: Vec<Vec<i64>> = simple_roots.iter().map(|a| labels_of(a)).collect();
        let positive_root_labels = positive_roots.iter().map(|a| labels_of(a)).collect();
        let theta_labels = labels_of(&theta);
        let comarks: Vec<u64> = fundamental
            .iter()
            .map(|w| as_int(dot(w, &theta)) as u64)
            .collect();
        let dual_coxeter = as_int(dot(&rho, &theta)) as u64 + 1;

        let gram_q: Vec<Vec<Q>> = fundamental
            .iter()
            .map(|a| fundamental.iter().map(|b| dot(a, b)).collect())
            .collect();
        let gram_denom = gram_q
            .iter()
            .flatten()
            .fold(num_bigint::BigInt::from(1), |acc, x| acc.lcm(x.denom()));
        let gram = gram_q
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| as_int(x * Q::from_integer(gram_denom.clone())))
                    .collect()
            })
            .collect();
        let gram_denom = gram_denom.to_i64().expect("small denominator");

        // α_j = Σ_i cartan[j][i] ω_i, so ω_i = Σ_j inv[i][j] α_j with inv = cartan^{-1}.
        let cartan_q: Vec<Vec<Q>> = cartan
            .iter()
            .map(|row| row.iter().map(|&x| qi(x)).collect())
            .collect();
        let inv_q = invert(&cartan_q);
        let inv_cartan_denom = inv_q
            .iter()
            .flatten()
            .fold(num_bigint::BigInt::from(1), |acc, x| acc.lcm(x.denom()));
        let inv_cartan = inv_q
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| as_int(x * Q::from_integer(inv_cartan_denom.clone())))
                    .collect()
            })
            .collect();
        let inv_cartan_denom = inv_cartan_denom.to_i64().expect("small denominator");

        Ok(AlgebraTables {
            id,
            metric,
            fundamental,
            simple_roots,
            rho,
            theta,
            dual_coxeter,
            comarks,
            positive_roots,
            cartan,
            positive_root_labels,
            theta_labels,
            gram,
            gram_denom,
            inv_cartan,
            inv_cartan_denom,
        })
    }

    pub fn rank(&self) -> usize {
        self.id.rank
    }

    /// Euclidean inner product of two vectors in the orthogonal realization.
    pub fn dot(&self, a: &[Q], b: &[Q]) -> Q {
        a.iter()
            .zip(b)
            .fold(Q::zero(), |acc, (x, y)| acc + x * y)
            * &self.metric
    }

    fn check_dim(&self, w: &Weight) -> Result<()> {
        if w.rank() != self.rank() {
            return Err(Error::DimensionMismatch {
                algebra: self.id,
                expected: self.rank(),
                got: w.rank(),
            });
        }
        Ok(())
    }

    /// Orthogonal coordinates `Σ a_i ω_i`.
    pub fn coordinates(&self, w: &Weight) -> Result<Vec<Q>> {
        self.check_dim(w)?;
        let dim = self.fundamental[0].len();
        Ok(w.labels()
            .iter()
            .zip(&self.fundamental)
            .fold(vec![Q::zero(); dim], |acc, (&a, om)| {
                add(&acc, &scale(om, &qi(a as i64)))
            }))
    }

    /// Dynkin labels `2(v, α_i)/(α_i, α_i)` of a vector, when dominant integral.
    pub fn weight_from_coordinates(&self, v: &[Q]) -> Option<Weight> {
        let labels: Option<Vec<u32>> = self
            .simple_roots
            .iter()
            .map(|a| {
                let x = qi(2) * self.dot(v, a) / self.dot(a, a);
                if x.is_integer() && !x.is_negative() {
                    x.to_integer().to_u32()
                } else {
                    None
                }
            })
            .collect();
        let w = Weight::new(labels?);
        // Reject vectors with a component orthogonal to the root span (type A ambient space).
        (self.coordinates(&w).ok()? == v).then_some(w)
    }

    /// `(u, v)` for label vectors, scaled by `gram_denom`.
    pub(crate) fn inner_scaled(&self, u: &[i64], v: &[i64]) -> i64 {
        let mut s = 0;
        for (i, &ui) in u.iter().enumerate() {
            if ui == 0 {
                continue;
            }
            for (j, &vj) in v.iter().enumerate() {
                s += ui * self.gram[i][j] * vj;
            }
        }
        s
    }

    pub fn inner(&self, u: &Weight, v: &Weight) -> Q {
        q(
            self.inner_scaled(&u.to_signed(), &v.to_signed()),
            self.gram_denom,
        )
    }

    pub(crate) fn reflect(&self, i: usize, v: &mut [i64]) {
        let c = v[i];
        if c != 0 {
            for (x, a) in v.iter_mut().zip(&self.cartan[i]) {
                *x -= c * a;
            }
        }
    }

    /// Reflects into the closed dominant chamber. Returns the image and the
    /// number of simple reflections used.
    pub(crate) fn to_dominant(&self, v: &[i64]) -> (Vec<i64>, usize) {
        let mut v = v.to_vec();
        let mut steps = 0;
        while let Some(i) = v.iter().position(|&x| x < 0) {
            self.reflect(i, &mut v);
            steps += 1;
        }
        (v, steps)
    }

    /// Simple-root coefficients of a label vector, scaled by `inv_cartan_denom`.
    pub(crate) fn root_coefficients_scaled(&self, v: &[i64]) -> Vec<i64> {
        let r = self.rank();
        (0..r)
            .map(|j| (0..r).map(|i| v[i] * self.inv_cartan[i][j]).sum())
            .collect()
    }

    /// True when `λ - μ` is a non-negative integer combination of simple roots.
    pub(crate) fn dominates(&self, lambda: &[i64], mu: &[i64]) -> bool {
        let diff: Vec<i64> = lambda.iter().zip(mu).map(|(a, b)| a - b).collect();
        self.root_coefficients_scaled(&diff)
            .iter()
            .all(|&c| c >= 0 && c % self.inv_cartan_denom == 0)
    }

    /// Level `Σ a_i a∨_i`.
    pub fn weight_level(&self, w: &Weight) -> Result<u64> {
        self.check_dim(w)?;
        Ok(w.labels()
            .iter()
            .zip(&self.comarks)
            .map(|(&a, &c)| a as u64 * c)
            .sum())
    }

    /// All dominant weights of level at most `level`, sorted lexicographically.
    pub fn level_weights(&self, level: u64) -> Vec<Weight> {
        let r = self.rank();
        let mut out = Vec::new();
        let mut cur = vec![0u32; r];
        fn rec(
            comarks: &[u64],
            idx: usize,
            budget: u64,
            cur: &mut Vec<u32>,
            out: &mut Vec<Weight>,
        ) {
            if idx == comarks.len() {
                out.push(Weight::new(cur.clone()));
                return;
            }
            let mut a = 0;
            while a as u64 * comarks[idx] <= budget {
                cur[idx] = a;
                rec(comarks, idx + 1, budget - a as u64 * comarks[idx], cur, out);
                a += 1;
            }
            cur[idx] = 0;
        }
        rec(&self.comarks, 0, level, &mut cur, &mut out);
        out.sort();
        out
    }

    /// `λ* = -w_0(λ)`, the highest weight of the dual module.
    pub fn dual_weight(&self, w: &Weight) -> Result<Weight> {
        self.check_dim(w)?;
        let neg: Vec<i64> = w.labels().iter().map(|&a| -(a as i64)).collect();
        let (dom, _) = self.to_dominant(&neg);
        Ok(Weight::from_signed(&dom).expect("dominant"))
    }

    /// Conformal weight `(λ, λ + 2ρ) / (2(ℓ + h∨))` of `λ ∈ P_ℓ`.
    pub fn trace_anomaly(&self, level: u64, w: &Weight) -> Result<Q> {
        if level == 0 {
            return Err(Error::ZeroLevel);
        }
        let wl = self.weight_level(w)?;
        if wl > level {
            return Err(Error::LevelExceeded {
                weight: w.to_string(),
                weight_level: wl,
                level,
            });
        }
        let lam = w.to_signed();
        let shifted: Vec<i64> = lam.iter().map(|a| a + 2).collect();
        let num = self.inner_scaled(&lam, &shifted);
        Ok(q(num, self.gram_denom) / qi(2 * (level + self.dual_coxeter) as i64))
    }

    pub fn fundamental_weight(&self, i: usize) -> Weight {
        Weight::fundamental(self.rank(), i)
    }
}

fn invert(m: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { qi(1) } else { Q::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero()).expect("invertible");
        a.swap(col, piv);
        let p = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x /= &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pivot_row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
    }
    a.into_iter().map(|row| row[n..].to_vec()).collect()
}
