//! Edge-weighting certificates on the complete graph with vertices `1..n`.
//!
//! A rational weighting `w` of the edges certifies that
//! `D = Σ a_i ψ_i − Σ c_{I,J} D_{I,J}` is an effective sum of boundary
//! divisors when the flow through every vertex `i` equals `a_i` and the flow
//! across every boundary cut `I|J` is at least `c_{I,J}`. Using the relation
//! `ψ_i + ψ_j = Σ_{I ∋ i, J ∋ j} D_{I,J}` the class then equals
//! `Σ (w(I|J) − c_{I,J}) D_{I,J}`.

use std::sync::Arc;

use num_traits::{Signed, Zero};

use crate::divisor::{conformal_blocks_divisor, DivisorClass, Partition, MAX_POINTS};
use crate::error::{Error, Result};
use crate::fusion::{rank_level_one_closed_form, FusionRing, WeightTuple};
use crate::lie::{AlgebraId, AlgebraTables, Family, Weight};
use crate::lp::{Feasibility, Outcome};
use crate::rational::{qi, Q};

/// Default size guard for [`lp_feasible`].
pub const DEFAULT_LP_CAP: usize = 14;

/// Rational weights on the edges of the complete graph on `n` vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeWeighting {
    n: usize,
    weights: Vec<Q>,
}

fn edge_index(n: usize, i: usize, j: usize) -> usize {
    // 0-based i < j, row-major upper triangle.
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

impl EdgeWeighting {
    pub fn zero(n: usize) -> Result<Self> {
        if n < 4 {
            return Err(Error::TooFewPoints(n));
        }
        if n > MAX_POINTS {
            return Err(Error::Unsupported(format!("n = {n} exceeds {MAX_POINTS}")));
        }
        Ok(EdgeWeighting {
            n,
            weights: vec![Q::zero(); n * (n - 1) / 2],
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn index(&self, i: usize, j: usize) -> Result<usize> {
        for k in [i, j] {
            if k == 0 || k > self.n {
                return Err(Error::VertexOutOfRange { index: k, n: self.n });
            }
        }
        if i == j {
            return Err(Error::InvalidPartition(format!("no loop edge at {i}")));
        }
        let (a, b) = if i < j { (i - 1, j - 1) } else { (j - 1, i - 1) };
        Ok(edge_index(self.n, a, b))
    }

    /// Weight of the edge `{i, j}` (1-based, either order).
    pub fn get(&self, i: usize, j: usize) -> Result<&Q> {
        Ok(&self.weights[self.index(i, j)?])
    }

    pub fn set(&mut self, i: usize, j: usize, w: Q) -> Result<()> {
        let k = self.index(i, j)?;
        self.weights[k] = w;
        Ok(())
    }

    /// All edges `(i, j, w)` with `i < j`, 1-based, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, &Q)> + '_ {
        let n = self.n;
        (0..n)
            .flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
            .zip(&self.weights)
            .map(|((i, j), w)| (i + 1, j + 1, w))
    }

    fn w0(&self, i: usize, j: usize) -> &Q {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        &self.weights[edge_index(self.n, a, b)]
    }
}

/// `w(i)`: total weight of the edges at vertex `i`.
pub fn vertex_flow(w: &EdgeWeighting, i: usize) -> Result<Q> {
    if i == 0 || i > w.n {
        return Err(Error::VertexOutOfRange { index: i, n: w.n });
    }
    Ok((0..w.n)
        .filter(|&j| j != i - 1)
        .fold(Q::zero(), |acc, j| acc + w.w0(i - 1, j)))
}

/// `w(I|J)`: total weight of the edges crossing the partition.
pub fn cut_flow(w: &EdgeWeighting, p: &Partition) -> Result<Q> {
    if p.n() != w.n {
        return Err(Error::SizeMismatch {
            what: "partition",
            expected: w.n,
            got: p.n(),
        });
    }
    let side = p.side();
    let rest = p.complement();
    let mut total = Q::zero();
    for &i in side {
        for &j in &rest {
            total += w.w0(i - 1, j - 1);
        }
    }
    Ok(total)
}

/// Cut flow of every subset containing vertex 1, indexed by `mask >> 1`.
fn all_cut_flows(w: &EdgeWeighting) -> Vec<Q> {
    let n = w.n;
    let flows: Vec<Q> = (1..=n).map(|i| vertex_flow(w, i).expect("in range")).collect();
    let mut cut = vec![Q::zero(); 1 << (n - 1)];
    cut[0] = flows[0].clone();
    for rest in 1u64..1 << (n - 1) {
        let top = 63 - rest.leading_zeros() as usize;
        let prev = rest & !(1 << top);
        let v = top + 1;
        let prev_mask = (prev << 1) | 1;
        let inside = (0..n)
            .filter(|&u| prev_mask >> u & 1 == 1)
            .fold(Q::zero(), |acc, u| acc + w.w0(u, v));
        cut[rest as usize] = &cut[prev as usize] + &flows[v] - inside * qi(2);
    }
    cut
}

/// Outcome of checking a weighting against a divisor class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateReport {
    /// `w(i) − a_i` for each vertex.
    pub vertex_residuals: Vec<Q>,
    /// Minimum over boundary partitions of `w(I|J) − c_{I,J}`.
    pub min_cut_slack: Q,
    /// Partitions with negative slack, ascending by slack then canonical order.
    pub failing: Vec<(Partition, Q)>,
    pub verdict: bool,
}

impl CertificateReport {
    /// Partitions attaining the minimum slack, in canonical order.
    pub fn tight_partitions(&self, d: &DivisorClass, w: &EdgeWeighting) -> Vec<Partition> {
        Partition::all(d.n())
            .into_iter()
            .filter(|p| {
                cut_flow(w, p).expect("sizes match") - d.boundary_coefficient(p) == self.min_cut_slack
            })
            .collect()
    }
}

pub fn check_certificate(d: &DivisorClass, w: &EdgeWeighting) -> Result<CertificateReport> {
    if d.n() != w.n {
        return Err(Error::SizeMismatch {
            what: "weighting",
            expected: d.n(),
            got: w.n,
        });
    }
    let vertex_residuals: Vec<Q> = (1..=w.n)
        .map(|i| vertex_flow(w, i).expect("in range") - &d.psi()[i - 1])
        .collect();
    let cuts = all_cut_flows(w);
    let mut min_cut_slack: Option<Q> = None;
    let mut failing = Vec::new();
    for p in Partition::all(w.n) {
        let slack = &cuts[(p.mask() >> 1) as usize] - d.boundary_coefficient(&p);
        if slack.is_negative() {
            failing.push((p, slack.clone()));
        }
        if min_cut_slack.as_ref().is_none_or(|m| slack < *m) {
            min_cut_slack = Some(slack);
        }
    }
    failing.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
    let min_cut_slack = min_cut_slack.expect("n >= 4 has boundary partitions");
    let verdict = vertex_residuals.iter().all(Zero::is_zero) && !min_cut_slack.is_negative();
    Ok(CertificateReport {
        vertex_residuals,
        min_cut_slack,
        failing,
        verdict,
    })
}

/// Role of a marked point carrying a nonzero level-one weight of B_r or D_r.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexLabel {
    /// `ω_1`
    Vector,
    /// `ω_r`
    Spinor,
    /// `ω_{r-1}` (type D only)
    CoSpinor,
}

impl VertexLabel {
    pub fn is_spinor(self) -> bool {
        !matches!(self, VertexLabel::Vector)
    }
}

/// A level-one B_r or D_r tuple with no vacuum entries, seen through the
/// vector/spinor split used by the explicit weightings.
#[derive(Debug, Clone)]
pub struct LabeledTuple {
    pub algebra: AlgebraId,
    pub labels: Vec<VertexLabel>,
    tuple: WeightTuple,
    delta_vector: Q,
    delta_spinor: Q,
}

impl LabeledTuple {
    pub fn new(family: Family, rank: usize, labels: Vec<VertexLabel>) -> Result<Self> {
        let tables = AlgebraTables::build(AlgebraId::new(family, rank)?)?;
        let weights = labels
            .iter()
            .map(|l| match (family, l) {
                (_, VertexLabel::Vector) => Ok(Weight::fundamental(rank, 1)),
                (_, VertexLabel::Spinor) => Ok(Weight::fundamental(rank, rank)),
                (Family::D, VertexLabel::CoSpinor) => Ok(Weight::fundamental(rank, rank - 1)),
                _ => Err(Error::Unsupported(format!(
                    "label {l:?} does not exist for {}",
                    tables.id
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        let tuple = WeightTuple::new(&tables, 1, weights)?;
        Self::from_tuple(&tables, &tuple)
    }

    pub fn from_tuple(tables: &AlgebraTables, tuple: &WeightTuple) -> Result<Self> {
        let id = tables.id;
        if !matches!(id.family, Family::B | Family::D) {
            return Err(Error::ConstructionInapplicable(format!(
                "explicit weightings exist for B_r and D_r only, not {id}"
            )));
        }
        if tuple.level != 1 || tuple.algebra != id {
            return Err(Error::ConstructionInapplicable(format!(
                "needs a level-one {id} tuple"
            )));
        }
        let r = id.rank;
        let labels = tuple
            .entries()
            .iter()
            .map(|w| {
                if *w == Weight::fundamental(r, 1) {
                    Ok(VertexLabel::Vector)
                } else if *w == Weight::fundamental(r, r) {
                    Ok(VertexLabel::Spinor)
                } else if id.family == Family::D && *w == Weight::fundamental(r, r - 1) {
                    Ok(VertexLabel::CoSpinor)
                } else {
                    Err(Error::ConstructionInapplicable(format!(
                        "weight {w} is not a nonzero level-one weight"
                    )))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(LabeledTuple {
            algebra: id,
            labels,
            tuple: tuple.clone(),
            delta_vector: tables.trace_anomaly(1, &Weight::fundamental(r, 1))?,
            delta_spinor: tables.trace_anomaly(1, &Weight::fundamental(r, r))?,
        })
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    /// Number of `ω_1` entries.
    pub fn n1(&self) -> usize {
        self.labels.iter().filter(|l| !l.is_spinor()).count()
    }

    /// Number of spinor entries (both spin nodes in type D).
    pub fn n2(&self) -> usize {
        self.n() - self.n1()
    }

    /// `m = n_2 / 2` for type B.
    pub fn m(&self) -> usize {
        self.n2() / 2
    }

    pub fn tuple(&self) -> &WeightTuple {
        &self.tuple
    }

    pub fn delta_vector(&self) -> &Q {
        &self.delta_vector
    }

    pub fn delta_spinor(&self) -> &Q {
        &self.delta_spinor
    }

    /// `(a_1, a_2)`: vector and spinor counts inside the block containing 1.
    pub fn counts(&self, p: &Partition) -> (usize, usize) {
        let a1 = p
            .side()
            .iter()
            .filter(|&&i| !self.labels[i - 1].is_spinor())
            .count();
        (a1, p.side().len() - a1)
    }

    fn rank(&self) -> u64 {
        let tables = AlgebraTables::build(self.algebra).expect("validated");
        rank_level_one_closed_form(&tables, &self.tuple).expect("level one B/D")
    }

    fn scale_b(&self) -> Q {
        qi(1i64 << (self.m() - 1))
    }
}

fn weighting_from(lt: &LabeledTuple, vv: Q, ss: Q, mixed: Q) -> Result<EdgeWeighting> {
    let mut w = EdgeWeighting::zero(lt.n())?;
    for i in 1..=lt.n() {
        for j in i + 1..=lt.n() {
            let value = match (lt.labels[i - 1].is_spinor(), lt.labels[j - 1].is_spinor()) {
                (false, false) => vv.clone(),
                (true, true) => ss.clone(),
                _ => mixed.clone(),
            };
            w.set(i, j, value)?;
        }
    }
    Ok(w)
}

/// The three-valued weighting for B_r at level one, scaled by `2^{m-1}`.
pub fn explicit_weighting_b(lt: &LabeledTuple) -> Result<EdgeWeighting> {
    if lt.algebra.family != Family::B {
        return Err(Error::ConstructionInapplicable(format!(
            "{} is not of type B",
            lt.algebra
        )));
    }
    let (n1, n2) = (lt.n1(), lt.n2());
    if n1 < 2 || n2 == 0 || n2 % 2 == 1 {
        return Err(Error::ConstructionInapplicable(format!(
            "needs n_1 >= 2 and n_2 even and positive, got n_1 = {n1}, n_2 = {n2}"
        )));
    }
    let s = lt.scale_b();
    let (n1q, n2q) = (qi(n1 as i64), qi(n2 as i64));
    let one = qi(1);
    let vv = &lt.delta_vector * &s / (&n1q - &one) - &s / (&n1q * (&n1q - &one));
    let ss = &lt.delta_spinor * &s / (&n2q - &one) - &s / (&n2q * (&n2q - &one));
    let mixed = &s / (&n1q * &n2q);
    weighting_from(lt, vv, ss, mixed)
}

/// The three-valued weighting for D_r at level one; spin nodes are interchangeable.
pub fn explicit_weighting_d(lt: &LabeledTuple) -> Result<EdgeWeighting> {
    if lt.algebra.family != Family::D {
        return Err(Error::ConstructionInapplicable(format!(
            "{} is not of type D",
            lt.algebra
        )));
    }
    let (n1, n2) = (lt.n1(), lt.n2());
    if n1 < 2 || n2 < 2 {
        return Err(Error::ConstructionInapplicable(format!(
            "needs n_1 >= 2 and n_2 >= 2, got n_1 = {n1}, n_2 = {n2}"
        )));
    }
    if lt.rank() == 0 {
        return Err(Error::ConstructionInapplicable(
            "the blocks have rank 0, so the divisor is zero".into(),
        ));
    }
    let (n1q, n2q) = (qi(n1 as i64), qi(n2 as i64));
    let one = qi(1);
    let vv = &lt.delta_vector / (&n1q - &one) - &one / (&n1q * (&n1q - &one));
    let ss = &lt.delta_spinor / (&n2q - &one) - &one / (&n2q * (&n2q - &one));
    let mixed = &one / (&n1q * &n2q);
    weighting_from(lt, vv, ss, mixed)
}

fn check_counts(lt: &LabeledTuple, a1: usize, a2: usize, b1: usize, b2: usize) -> Result<()> {
    if a1 + b1 != lt.n1() || a2 + b2 != lt.n2() {
        return Err(Error::InvalidPartition(format!(
            "counts ({a1},{a2}|{b1},{b2}) do not split n_1 = {}, n_2 = {}",
            lt.n1(),
            lt.n2()
        )));
    }
    Ok(())
}

fn closed_form(lt: &LabeledTuple, scale: &Q, counts: (usize, usize, usize, usize)) -> Q {
    let (a1, a2, b1, b2) = counts;
    let (n1, n2) = (qi(lt.n1() as i64), qi(lt.n2() as i64));
    let one = qi(1);
    let mut total = qi((a1 * b2 + a2 * b1) as i64) * scale / (&n1 * &n2);
    if a1 * b1 > 0 {
        total += qi((a1 * b1) as i64) / (&n1 - &one) * (&lt.delta_vector * scale - scale / &n1);
    }
    if a2 * b2 > 0 {
        total += qi((a2 * b2) as i64) / (&n2 - &one) * (&lt.delta_spinor * scale - scale / &n2);
    }
    total
}

/// Cut flow of the B_r weighting from the counts alone.
pub fn closed_form_cut_b(lt: &LabeledTuple, a1: usize, a2: usize, b1: usize, b2: usize) -> Result<Q> {
    check_counts(lt, a1, a2, b1, b2)?;
    if lt.algebra.family != Family::B || lt.n2() == 0 || lt.n2() % 2 == 1 {
        return Err(Error::ConstructionInapplicable(
            "needs a type B tuple with n_2 even and positive".into(),
        ));
    }
    Ok(closed_form(lt, &lt.scale_b(), (a1, a2, b1, b2)))
}

/// Cut flow of the D_r weighting from the counts alone.
pub fn closed_form_cut_d(lt: &LabeledTuple, a1: usize, a2: usize, b1: usize, b2: usize) -> Result<Q> {
    check_counts(lt, a1, a2, b1, b2)?;
    if lt.algebra.family != Family::D {
        return Err(Error::ConstructionInapplicable("needs a type D tuple".into()));
    }
    Ok(closed_form(lt, &qi(1), (a1, a2, b1, b2)))
}

/// One count split `(a_1, a_2 | b_1, b_2)` checked against the stated lower bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitCheck {
    pub a1: usize,
    pub a2: usize,
    pub b1: usize,
    pub b2: usize,
    pub flow: Q,
    pub bound: Q,
    pub margin: Q,
    /// The actual boundary coefficient for a partition with these counts.
    pub required: Q,
}

impl SplitCheck {
    pub fn holds(&self) -> bool {
        !self.margin.is_negative()
    }

    /// True when the stated bound is weaker than the actual coefficient.
    pub fn bound_below_required(&self) -> bool {
        self.bound < self.required
    }
}

#[derive(Debug, Clone)]
pub struct PropositionReport {
    pub algebra: AlgebraId,
    pub splits: Vec<SplitCheck>,
    pub all_hold: bool,
    pub min_margin: Q,
    pub argmin: (usize, usize, usize, usize),
}

impl PropositionReport {
    /// Splits where the stated bound does not reach `c_{I,J}`.
    pub fn gaps(&self) -> impl Iterator<Item = &SplitCheck> {
        self.splits.iter().filter(|s| s.bound_below_required())
    }
}

/// Checks the stated per-split lower bounds on the cut flows of the explicit
/// weighting over every count split with both blocks of size at least two.
pub fn verify_proposition(lt: &LabeledTuple) -> Result<PropositionReport> {
    let family = lt.algebra.family;
    match family {
        Family::B => explicit_weighting_b(lt)?,
        Family::D => explicit_weighting_d(lt)?,
        _ => unreachable!("LabeledTuple is B or D"),
    };
    let ring = FusionRing::for_algebra(lt.algebra, 1)?;
    let divisor = conformal_blocks_divisor(&ring, lt.tuple())?;
    let (n1, n2) = (lt.n1(), lt.n2());
    let vector_slots: Vec<usize> = (1..=lt.n()).filter(|&i| !lt.labels[i - 1].is_spinor()).collect();
    let spinor_slots: Vec<usize> = (1..=lt.n()).filter(|&i| lt.labels[i - 1].is_spinor()).collect();

    let mut splits = Vec::new();
    for a1 in 0..=n1 {
        for a2 in 0..=n2 {
            let (b1, b2) = (n1 - a1, n2 - a2);
            if a1 + a2 < 2 || b1 + b2 < 2 {
                continue;
            }
            let (flow, bound) = match family {
                Family::B => {
                    let s = lt.scale_b();
                    let bound = if a2 % 2 == 1 {
                        &lt.delta_spinor * &s
                    } else {
                        &lt.delta_vector * &s / qi(2)
                    };
                    (closed_form_cut_b(lt, a1, a2, b1, b2)?, bound)
                }
                _ => {
                    let bound = if a2 == 0 || b2 == 0 {
                        lt.delta_vector.clone()
                    } else {
                        lt.delta_spinor.clone()
                    };
                    (closed_form_cut_d(lt, a1, a2, b1, b2)?, bound)
                }
            };
            // Type D coefficients depend on which spin nodes sit in the block, so
            // take the largest over the realizations that fix the counts.
            let required = realizations(&vector_slots, &spinor_slots, a1, a2, family == Family::D)
                .into_iter()
                .map(|block| divisor.boundary_coefficient(&Partition::new(lt.n(), &block).expect("valid")))
                .max()
                .expect("at least one realization");
            let margin = &flow - &bound;
            splits.push(SplitCheck {
                a1,
                a2,
                b1,
                b2,
                flow,
                bound,
                margin,
                required,
            });
        }
    }
    let best = splits
        .iter()
        .min_by(|x, y| x.margin.cmp(&y.margin))
        .expect("n >= 4 has splits");
    Ok(PropositionReport {
        algebra: lt.algebra,
        all_hold: splits.iter().all(SplitCheck::holds),
        min_margin: best.margin.clone(),
        argmin: (best.a1, best.a2, best.b1, best.b2),
        splits,
    })
}

/// Blocks with `a1` vector slots and `a2` spinor slots. Without `all`, only
/// the first slots of each kind are used.
fn realizations(vectors: &[usize], spinors: &[usize], a1: usize, a2: usize, all: bool) -> Vec<Vec<usize>> {
    let head: Vec<usize> = vectors[..a1].to_vec();
    if !all {
        let mut b = head;
        b.extend_from_slice(&spinors[..a2]);
        return vec![b];
    }
    let mut out = Vec::new();
    for mask in 0u64..1 << spinors.len() {
        if mask.count_ones() as usize != a2 {
            continue;
        }
        let mut b = head.clone();
        b.extend(spinors.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &s)| s));
        out.push(b);
    }
    out
}

/// Searches for a certificate by exact LP. `Ok(None)` means no weighting
/// satisfies the constraints.
pub fn lp_feasible(d: &DivisorClass, cap: usize) -> Result<Option<EdgeWeighting>> {
    let n = d.n();
    if n > cap {
        return Err(Error::LpCapExceeded { n, cap });
    }
    let mut problem = Feasibility::new(n * (n - 1) / 2);
    for i in 0..n {
        let row = (0..n)
            .filter(|&j| j != i)
            .map(|j| (edge_index(n, i.min(j), i.max(j)), qi(1)))
            .collect();
        problem.add_equality(row, d.psi()[i].clone());
    }
    for p in Partition::all(n) {
        let m = p.mask();
        let mut row = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if (m >> i & 1) != (m >> j & 1) {
                    row.push((edge_index(n, i, j), qi(1)));
                }
            }
        }
        problem.add_inequality(row, d.boundary_coefficient(&p));
    }
    Ok(match problem.solve() {
        Outcome::Feasible(x) => Some(EdgeWeighting { n, weights: x }),
        Outcome::Infeasible => None,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Rank zero: the class vanishes and the zero weighting certifies it.
    ZeroClass,
    ExplicitB,
    ExplicitD,
    Lp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Certified,
    /// The LP proved that no weighting exists.
    NoCertificate,
    /// The LP was skipped because of the size cap.
    Undecided,
}

#[derive(Debug, Clone)]
pub struct Decision {
    pub divisor: DivisorClass,
    pub method: Option<Method>,
    pub status: Status,
    pub witness: Option<EdgeWeighting>,
    pub report: Option<CertificateReport>,
}

/// Computes the conformal blocks divisor and certifies it: the explicit B/D
/// weighting when it applies, otherwise the LP search.
pub fn decide_effectivity(ring: &FusionRing, tuple: &WeightTuple, lp_cap: usize) -> Result<Decision> {
    let divisor = conformal_blocks_divisor(ring, tuple)?;
    let n = divisor.n();
    let finish = |divisor: DivisorClass, method: Method, w: EdgeWeighting| -> Result<Decision> {
        let report = check_certificate(&divisor, &w)?;
        Ok(Decision {
            status: if report.verdict {
                Status::Certified
            } else {
                Status::NoCertificate
            },
            divisor,
            method: Some(method),
            witness: Some(w),
            report: Some(report),
        })
    };
    if divisor.is_zero() {
        return finish(divisor, Method::ZeroClass, EdgeWeighting::zero(n)?);
    }
    if ring.level() == 1 {
        if let Ok(lt) = LabeledTuple::from_tuple(ring.tables(), tuple) {
            let attempt = match lt.algebra.family {
                Family::B => explicit_weighting_b(&lt).map(|w| (Method::ExplicitB, w)),
                _ => explicit_weighting_d(&lt).map(|w| (Method::ExplicitD, w)),
            };
            if let Ok((method, w)) = attempt {
                let decision = finish(divisor.clone(), method, w)?;
                if decision.status == Status::Certified {
                    return Ok(decision);
                }
            }
        }
    }
    match lp_feasible(&divisor, lp_cap) {
        Err(Error::LpCapExceeded { .. }) => Ok(Decision {
            divisor,
            method: None,
            status: Status::Undecided,
            witness: None,
            report: None,
        }),
        Err(e) => Err(e),
        Ok(Some(w)) => finish(divisor, Method::Lp, w),
        Ok(None) => Ok(Decision {
            divisor,
            method: Some(Method::Lp),
            status: Status::NoCertificate,
            witness: None,
            report: None,
        }),
    }
}

/// Convenience wrapper building the ring from an algebra id.
pub fn decide_for(id: AlgebraId, level: u64, entries: Vec<Weight>, lp_cap: usize) -> Result<Decision> {
    let ring = FusionRing::new(Arc::new(AlgebraTables::build(id)?), level)?;
    let tuple = ring.tuple(entries)?;
    decide_effectivity(&ring, &tuple, lp_cap)
}
