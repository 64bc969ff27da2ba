//! Exact phase-one simplex for feasibility of systems with free variables:
//!
//! ```text
//! find x ∈ Q^d  with  A_eq x = b_eq  and  A_ge x ≥ b_ge
//! ```
//!
//! Free variables are pivoted into the basis first (Gauss–Jordan) and never
//! leave it. Every `≥` row gets a surplus variable; rows that are not feasible
//! at the origin get an artificial. The sum of artificials is then minimized
//! with Bland's rule, so the method terminates without cycling.

use num_traits::{One, Signed, Zero};

use crate::rational::Q;

/// Sparse linear form: `(variable, coefficient)` pairs.
pub type Row = Vec<(usize, Q)>;

#[derive(Debug, Clone, Default)]
pub struct Feasibility {
    pub num_vars: usize,
    pub equalities: Vec<(Row, Q)>,
    pub inequalities: Vec<(Row, Q)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Feasible(Vec<Q>),
    Infeasible,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Basic {
    Free(usize),
    Other(usize),
}

struct Tableau {
    rows: Vec<Vec<Q>>,
    rhs: Vec<Q>,
    basis: Vec<Option<Basic>>,
    /// Rows whose basic variable is free (excluded from ratio tests).
    free_row: Vec<bool>,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize, objective: Option<(&mut Vec<Q>, &mut Q)>) {
        let p = self.rows[r][c].clone();
        if !p.is_one() {
            for x in self.rows[r].iter_mut() {
                if !x.is_zero() {
                    *x /= &p;
                }
            }
            self.rhs[r] /= &p;
        }
        let support: Vec<usize> = self.rows[r]
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(k, _)| k)
            .collect();
        let pivot_row = self.rows[r].clone();
        let pivot_rhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for &k in &support {
                let delta = &f * &pivot_row[k];
                self.rows[i][k] -= delta;
            }
            self.rhs[i] -= &f * &pivot_rhs;
        }
        if let Some((obj, value)) = objective {
            if !obj[c].is_zero() {
                let f = obj[c].clone();
                for &k in &support {
                    let delta = &f * &pivot_row[k];
                    obj[k] -= delta;
                }
                *value -= &f * &pivot_rhs;
            }
        }
    }
}

impl Feasibility {
    pub fn new(num_vars: usize) -> Self {
        Feasibility {
            num_vars,
            ..Default::default()
        }
    }

    pub fn add_equality(&mut self, row: Row, rhs: Q) {
        self.equalities.push((row, rhs));
    }

    pub fn add_inequality(&mut self, row: Row, rhs: Q) {
        self.inequalities.push((row, rhs));
    }

    pub fn num_constraints(&self) -> usize {
        self.equalities.len() + self.inequalities.len()
    }

    /// True when `x` satisfies every constraint exactly.
    pub fn satisfied_by(&self, x: &[Q]) -> bool {
        let eval = |row: &Row| row.iter().fold(Q::zero(), |acc, (j, a)| acc + a * &x[*j]);
        self.equalities.iter().all(|(row, b)| eval(row) == *b)
            && self.inequalities.iter().all(|(row, b)| eval(row) >= *b)
    }

    pub fn solve(&self) -> Outcome {
        let d = self.num_vars;
        let n_eq = self.equalities.len();
        let n_ge = self.inequalities.len();
        let m = n_eq + n_ge;
        // Columns: free variables, then one surplus per inequality, then artificials.
        let base_cols = d + n_ge;
        let mut rows: Vec<Vec<Q>> = Vec::with_capacity(m);
        let mut rhs = Vec::with_capacity(m);
        for (row, b) in &self.equalities {
            let mut dense = vec![Q::zero(); base_cols];
            for (j, a) in row {
                dense[*j] += a;
            }
            rows.push(dense);
            rhs.push(b.clone());
        }
        for (k, (row, b)) in self.inequalities.iter().enumerate() {
            let mut dense = vec![Q::zero(); base_cols];
            for (j, a) in row {
                dense[*j] += a;
            }
            dense[d + k] = -Q::one();
            rows.push(dense);
            rhs.push(b.clone());
        }
        let mut t = Tableau {
            rows,
            rhs,
            basis: vec![None; m],
            free_row: vec![false; m],
        };

        // Free variables enter first; equality rows are preferred as pivot rows.
        for j in 0..d {
            let r = (0..m).find(|&i| !t.free_row[i] && !t.rows[i][j].is_zero());
            if let Some(r) = r {
                t.pivot(r, j, None);
                t.basis[r] = Some(Basic::Free(j));
                t.free_row[r] = true;
            }
        }

        // Remaining rows: use the row's own surplus when feasible, otherwise an artificial.
        let mut artificials: Vec<usize> = Vec::new();
        for i in 0..m {
            if t.free_row[i] {
                continue;
            }
            if i >= n_eq {
                let s = d + (i - n_eq);
                // The surplus of a non-pivot row appears only in that row, with coefficient -1.
                if t.rhs[i] <= Q::zero() {
                    for x in t.rows[i].iter_mut() {
                        *x = -x.clone();
                    }
                    t.rhs[i] = -t.rhs[i].clone();
                    t.basis[i] = Some(Basic::Other(s));
                    continue;
                }
            } else if t.rows[i].iter().all(Zero::is_zero) {
                if !t.rhs[i].is_zero() {
                    return Outcome::Infeasible;
                }
                continue;
            }
            if t.rhs[i].is_negative() {
                for x in t.rows[i].iter_mut() {
                    *x = -x.clone();
                }
                t.rhs[i] = -t.rhs[i].clone();
            }
            artificials.push(i);
        }
        let total_cols = base_cols + artificials.len();
        for row in t.rows.iter_mut() {
            row.resize(total_cols, Q::zero());
        }
        for (k, &i) in artificials.iter().enumerate() {
            t.rows[i][base_cols + k] = Q::one();
            t.basis[i] = Some(Basic::Other(base_cols + k));
        }

        // Phase-one objective: minimize Σ artificials, expressed in nonbasic columns.
        let mut obj = vec![Q::zero(); total_cols];
        let mut value = Q::zero();
        for &i in &artificials {
            for (o, x) in obj.iter_mut().zip(&t.rows[i]) {
                if !x.is_zero() {
                    *o -= x;
                }
            }
            value -= &t.rhs[i];
        }
        for k in 0..artificials.len() {
            obj[base_cols + k] = Q::zero();
        }

        loop {
            // Bland: lowest-index column with negative reduced cost; free columns never re-enter.
            let entering = (d..total_cols).find(|&c| obj[c].is_negative());
            let Some(c) = entering else { break };
            let mut best: Option<(usize, Q, usize)> = None;
            for i in 0..m {
                if t.free_row[i] || !t.rows[i][c].is_positive() {
                    continue;
                }
                let ratio = &t.rhs[i] / &t.rows[i][c];
                let var = match t.basis[i] {
                    Some(Basic::Other(v)) => v,
                    _ => usize::MAX,
                };
                let better = match &best {
                    None => true,
                    Some((_, r, v)) => ratio < *r || (ratio == *r && var < *v),
                };
                if better {
                    best = Some((i, ratio, var));
                }
            }
            // The phase-one objective is bounded below by zero, so a pivot row always exists.
            let (r, _, _) = best.expect("phase one is bounded");
            t.pivot(r, c, Some((&mut obj, &mut value)));
            t.basis[r] = Some(Basic::Other(c));
        }

        // `value` tracks minus the objective.
        if !value.is_zero() {
            return Outcome::Infeasible;
        }
        let mut x = vec![Q::zero(); d];
        for i in 0..m {
            if let Some(Basic::Free(j)) = t.basis[i] {
                x[j] = t.rhs[i].clone();
            }
        }
        debug_assert!(self.satisfied_by(&x));
        Outcome::Feasible(x)
    }
}
