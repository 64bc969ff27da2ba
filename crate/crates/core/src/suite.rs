//! Sweeps over level-one B_r / D_r labelings used by the CLI verification
//! commands and by the acceptance tests.

use std::ops::RangeInclusive;

use rayon::prelude::*;

use crate::certificate::{
    check_certificate, closed_form_cut_b, closed_form_cut_d, cut_flow, explicit_weighting_b,
    explicit_weighting_d, LabeledTuple, VertexLabel,
};
use crate::divisor::{conformal_blocks_divisor, Partition};
use crate::error::Result;
use crate::fusion::{rank_level_one_closed_form, FusionRing};
use crate::lie::{AlgebraId, AlgebraTables, Family};
use crate::rational::Q;

/// Admissible labelings: vector entries first, then spinors. Type B takes
/// `n_1 >= 2` and `n_2` even and positive (restricted to `spinor_counts` when
/// given); type D takes `n_1, n_2 >= 2` and every assignment of the two spin
/// nodes to the spinor slots with nonzero rank.
pub fn theorem1_instances(
    family: Family,
    ranks: RangeInclusive<usize>,
    max_n: usize,
    spinor_counts: Option<&[usize]>,
) -> Result<Vec<LabeledTuple>> {
    let mut out = Vec::new();
    for r in ranks {
        let tables = AlgebraTables::build(AlgebraId::new(family, r)?)?;
        for n in 4..=max_n {
            for n1 in 2..=n - 2 {
                let n2 = n - n1;
                if spinor_counts.is_some_and(|allowed| !allowed.contains(&n2)) {
                    continue;
                }
                let mut labels = vec![VertexLabel::Vector; n1];
                match family {
                    Family::B => {
                        if n2 % 2 == 1 {
                            continue;
                        }
                        labels.extend(std::iter::repeat_n(VertexLabel::Spinor, n2));
                        out.push(LabeledTuple::new(family, r, labels)?);
                    }
                    Family::D => {
                        for mask in 0u32..1 << n2 {
                            let mut l = labels.clone();
                            l.extend((0..n2).map(|k| {
                                if mask >> k & 1 == 1 {
                                    VertexLabel::CoSpinor
                                } else {
                                    VertexLabel::Spinor
                                }
                            }));
                            let lt = LabeledTuple::new(family, r, l)?;
                            if rank_level_one_closed_form(&tables, lt.tuple())? == 1 {
                                out.push(lt);
                            }
                        }
                    }
                    _ => {}
                }
            }
        }
    }
    Ok(out)
}

/// Result of certifying one labeling with its explicit weighting.
#[derive(Debug, Clone)]
pub struct Theorem1Outcome {
    pub label: String,
    pub rank: u64,
    pub verdict: bool,
    pub min_cut_slack: Q,
    /// Closed-form cut flows equal direct edge sums on every partition.
    pub closed_form_agrees: bool,
}

pub fn describe(lt: &LabeledTuple) -> String {
    let names: Vec<String> = lt.tuple().entries().iter().map(|w| w.to_string()).collect();
    format!("{} ({})", lt.algebra, names.join(","))
}

pub fn check_theorem1_instance(ring: &FusionRing, lt: &LabeledTuple) -> Result<Theorem1Outcome> {
    let divisor = conformal_blocks_divisor(ring, lt.tuple())?;
    let w = match lt.algebra.family {
        Family::B => explicit_weighting_b(lt)?,
        _ => explicit_weighting_d(lt)?,
    };
    let report = check_certificate(&divisor, &w)?;
    let mut closed_form_agrees = true;
    for p in Partition::all(lt.n()) {
        let (a1, a2) = lt.counts(&p);
        let (b1, b2) = (lt.n1() - a1, lt.n2() - a2);
        let closed = match lt.algebra.family {
            Family::B => closed_form_cut_b(lt, a1, a2, b1, b2)?,
            _ => closed_form_cut_d(lt, a1, a2, b1, b2)?,
        };
        if closed != cut_flow(&w, &p)? {
            closed_form_agrees = false;
            break;
        }
    }
    Ok(Theorem1Outcome {
        label: describe(lt),
        rank: ring.rank(lt.tuple().entries())?,
        verdict: report.verdict,
        min_cut_slack: report.min_cut_slack,
        closed_form_agrees,
    })
}

/// Runs every instance in parallel; results come back in input order.
pub fn run_theorem1(instances: &[LabeledTuple]) -> Result<Vec<Theorem1Outcome>> {
    let mut rings: Vec<(AlgebraId, FusionRing)> = Vec::new();
    for lt in instances {
        if !rings.iter().any(|(id, _)| *id == lt.algebra) {
            rings.push((lt.algebra, FusionRing::for_algebra(lt.algebra, 1)?));
        }
    }
    instances
        .par_iter()
        .map(|lt| {
            let ring = &rings.iter().find(|(id, _)| *id == lt.algebra).expect("built").1;
            check_theorem1_instance(ring, lt)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn instance_counts() {
        // n = 4..6, n_1 >= 2, n_2 even >= 2: (2,2), (3,2), (4,2), (2,4).
        let b = theorem1_instances(Family::B, 2..=2, 6, None).unwrap();
        assert_eq!(b.len(), 4);
        let b = theorem1_instances(Family::B, 2..=3, 6, Some(&[2])).unwrap();
        assert_eq!(b.len(), 6);
        let d = theorem1_instances(Family::D, 4..=4, 4, None).unwrap();
        // Two spinor slots: (w3,w3) and (w4,w4) have rank one, mixed pairs do not.
        assert_eq!(d.len(), 2);
    }

    #[test]
    fn small_sweep_certifies() {
        let mut inst = theorem1_instances(Family::B, 2..=3, 7, None).unwrap();
        inst.extend(theorem1_instances(Family::D, 3..=5, 7, None).unwrap());
        for o in run_theorem1(&inst).unwrap() {
            assert!(o.verdict, "{}", o.label);
            assert!(o.closed_form_agrees, "{}", o.label);
        }
    }
}
