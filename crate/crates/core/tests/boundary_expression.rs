//! Whenever a weighting certifies a class, the boundary expression
//! `Σ (w(I|J) − c_{I,J}) D_{I,J}` must equal the class. Equality is checked in
//! an intersection model built independently of the crate: degrees on M_{0,4},
//! and the pairing with the ten boundary curves D_{ij} on M_{0,5}.

use num_traits::Signed;
use proptest::prelude::*;

use cbdiv::certificate::{check_certificate, cut_flow, lp_feasible, EdgeWeighting};
use cbdiv::divisor::{conformal_blocks_divisor, DivisorClass, Partition};
use cbdiv::fusion::FusionRing;
use cbdiv::lie::{AlgebraId, Family, Weight};
use cbdiv::rational::{q, qi, Q};

/// The two-element block of a boundary divisor on M_{0,5}, as a sorted pair.
fn pair(p: &Partition) -> (usize, usize) {
    let side = if p.side().len() == 2 { p.side().to_vec() } else { p.complement() };
    (side[0], side[1])
}

fn disjoint(a: (usize, usize), b: (usize, usize)) -> bool {
    a.0 != b.0 && a.0 != b.1 && a.1 != b.0 && a.1 != b.1
}

fn pairing5(a: (usize, usize), b: (usize, usize)) -> Q {
    if a == b {
        qi(-1)
    } else if disjoint(a, b) {
        qi(1)
    } else {
        qi(0)
    }
}

/// `ψ_i = D_{ia} + D_{ib} + D_{jk}` where `j < k` are the two smallest other
/// points and `a, b` the remaining two.
fn psi5(i: usize) -> Vec<(usize, usize)> {
    let others: Vec<usize> = (1..=5).filter(|&x| x != i).collect();
    let (j, k, a, b) = (others[0], others[1], others[2], others[3]);
    let ord = |x: usize, y: usize| (x.min(y), x.max(y));
    vec![ord(i, a), ord(i, b), (j, k)]
}

fn all_pairs5() -> Vec<(usize, usize)> {
    (1..=5).flat_map(|i| (i + 1..=5).map(move |j| (i, j))).collect()
}

/// Intersection numbers of `Σ a_i ψ_i − Σ c D` with every D_{kl} on M_{0,5}.
fn numbers5(psi: &[Q], boundary: &[((usize, usize), Q)]) -> Vec<Q> {
    all_pairs5()
        .into_iter()
        .map(|t| {
            let mut s = qi(0);
            for (i, a) in psi.iter().enumerate() {
                for d in psi5(i + 1) {
                    s += a * pairing5(d, t);
                }
            }
            for (d, c) in boundary {
                s -= c * pairing5(*d, t);
            }
            s
        })
        .collect()
}

/// Degree on M_{0,4} ≅ P^1: every ψ_i and every boundary point has degree 1.
fn degree4(psi: &[Q], boundary_total: Q) -> Q {
    psi.iter().cloned().sum::<Q>() - boundary_total
}

fn check_expression(d: &DivisorClass, w: &EdgeWeighting) {
    let report = check_certificate(d, w).unwrap();
    if !report.verdict {
        return;
    }
    // The expression, with coefficients e_p = w(p) − c_p, which must be nonnegative.
    let parts = Partition::all(d.n());
    let e: Vec<(Partition, Q)> = parts
        .iter()
        .map(|p| (p.clone(), cut_flow(w, p).unwrap() - d.boundary_coefficient(p)))
        .collect();
    assert!(e.iter().all(|(_, x)| !x.is_negative()));
    match d.n() {
        4 => {
            let lhs = degree4(d.psi(), d.boundary().values().cloned().sum());
            let rhs: Q = e.iter().map(|(_, x)| x.clone()).sum();
            assert_eq!(lhs, rhs);
        }
        5 => {
            let lhs_b: Vec<((usize, usize), Q)> = d.boundary().iter().map(|(p, c)| (pair(p), c.clone())).collect();
            let rhs_b: Vec<((usize, usize), Q)> = e.iter().map(|(p, x)| (pair(p), -x.clone())).collect();
            assert_eq!(numbers5(d.psi(), &lhs_b), numbers5(&vec![qi(0); 5], &rhs_b));
        }
        _ => unreachable!(),
    }
}

#[test]
fn model_sanity() {
    // The ψ_i expression does not depend on which two points play j, k.
    for i in 1..=5 {
        let others: Vec<usize> = (1..=5).filter(|&x| x != i).collect();
        let ord = |x: usize, y: usize| (x.min(y), x.max(y));
        let alt = vec![ord(i, others[0]), ord(i, others[1]), ord(others[2], others[3])];
        let f = |ds: Vec<(usize, usize)>| numbers5(&vec![qi(0); 5], &ds.into_iter().map(|d| (d, qi(-1))).collect::<Vec<_>>());
        assert_eq!(f(psi5(i)), f(alt));
    }
    // κ_1 = Σψ − Σ D is ample, so it meets every boundary curve positively.
    let sum_psi = vec![qi(1); 5];
    let all: Vec<((usize, usize), Q)> = all_pairs5().into_iter().map(|d| (d, qi(1))).collect();
    assert!(numbers5(&sum_psi, &all).iter().all(|x| x.is_positive()));
}

#[test]
fn conformal_blocks_certificates_n4_n5() {
    let mut checked = 0;
    for (family, r) in [(Family::B, 2), (Family::B, 3), (Family::D, 4), (Family::D, 5)] {
        let ring = FusionRing::for_algebra(AlgebraId::new(family, r).unwrap(), 1).unwrap();
        let nonzero: Vec<Weight> = ring.weights().iter().filter(|w| !w.is_zero()).cloned().collect();
        for n in [4, 5] {
            let total = nonzero.len().pow(n as u32);
            for mut code in 0..total {
                let mut entries = Vec::new();
                for _ in 0..n {
                    entries.push(nonzero[code % nonzero.len()].clone());
                    code /= nonzero.len();
                }
                let t = ring.tuple(entries).unwrap();
                let d = conformal_blocks_divisor(&ring, &t).unwrap();
                let w = lp_feasible(&d, 14).unwrap().expect("level-one classes are boundary");
                check_expression(&d, &w);
                checked += 1;
            }
        }
    }
    assert_eq!(checked, 2 * (16 + 32) + 2 * (81 + 243));
}

#[test]
fn psi_one_on_m04() {
    let d = DivisorClass::new(4, vec![qi(1), qi(0), qi(0), qi(0)], []).unwrap();
    let mut w = EdgeWeighting::zero(4).unwrap();
    for (i, j, x) in [(1, 2, q(1, 2)), (1, 3, q(1, 2)), (2, 3, q(-1, 2))] {
        w.set(i, j, x).unwrap();
    }
    assert!(check_certificate(&d, &w).unwrap().verdict);
    check_expression(&d, &w);
}

fn weighting(n: usize, raw: &[i64]) -> EdgeWeighting {
    let mut w = EdgeWeighting::zero(n).unwrap();
    let mut k = 0;
    for i in 1..=n {
        for j in i + 1..=n {
            w.set(i, j, q(raw[k], 6)).unwrap();
            k += 1;
        }
    }
    w
}

proptest! {
    // Any weighting certifies the class it induces with c_p ≤ w(p); the
    // expression must then reproduce that class.
    #[test]
    fn induced_classes(n in 4usize..=5, raw in prop::collection::vec(-12i64..=12, 10), drop in prop::collection::vec(0i64..=3, 10)) {
        let w = weighting(n, &raw);
        let psi: Vec<Q> = (1..=n).map(|i| cbdiv::certificate::vertex_flow(&w, i).unwrap()).collect();
        let boundary: Vec<(Partition, Q)> = Partition::all(n)
            .into_iter()
            .zip(&drop)
            .map(|(p, &k)| {
                let c = cut_flow(&w, &p).unwrap() - q(k, 4);
                (p, c)
            })
            .collect();
        let d = DivisorClass::new(n, psi, boundary).unwrap();
        prop_assert!(check_certificate(&d, &w).unwrap().verdict);
        check_expression(&d, &w);
    }
}
