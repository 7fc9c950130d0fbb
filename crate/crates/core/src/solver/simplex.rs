//! Dense two-phase simplex over an exact field, with Bland's rule.
//!
//! Every variable is non-negative. The objective is maximized. Exactness
//! means no tolerances: a reduced cost is negative or it is not, and Bland's
//! smallest-index rule guarantees termination on degenerate programs.

use crate::algebra::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    LessEq,
    GreaterEq,
    Equal,
}

#[derive(Clone, Debug)]
pub struct Constraint<T> {
    pub coeffs: Vec<T>,
    pub relation: Relation,
    pub rhs: T,
}

/// `maximize objective . x  s.t.  constraints, x >= 0`.
#[derive(Clone, Debug)]
pub struct LinearProgram<T> {
    num_vars: usize,
    objective: Vec<T>,
    constraints: Vec<Constraint<T>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpSolution<T> {
    Optimal { point: Vec<T>, value: T },
    Infeasible,
    Unbounded,
}

impl<T: Scalar> LinearProgram<T> {
    pub fn new(num_vars: usize) -> Self {
        LinearProgram {
            num_vars,
            objective: vec![T::zero(); num_vars],
            constraints: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn maximize(mut self, objective: Vec<T>) -> Self {
        assert_eq!(objective.len(), self.num_vars, "objective length");
        self.objective = objective;
        self
    }

    pub fn constrain(&mut self, coeffs: Vec<T>, relation: Relation, rhs: T) {
        assert_eq!(coeffs.len(), self.num_vars, "constraint length");
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
    }

    pub fn solve(&self) -> LpSolution<T> {
        Tableau::build(self).solve(&self.objective)
    }
}

struct Tableau<T> {
    /// `rows[i]` holds the constraint coefficients followed by the rhs.
    rows: Vec<Vec<T>>,
    basis: Vec<usize>,
    num_vars: usize,
    /// Columns `>= first_artificial` are artificial.
    first_artificial: usize,
    width: usize,
}

impl<T: Scalar> Tableau<T> {
    fn build(lp: &LinearProgram<T>) -> Self {
        // normalize to rhs >= 0; a `>= 0` row becomes `<= 0` so its slack can start basic
        let normalized: Vec<Constraint<T>> = lp
            .constraints
            .iter()
            .map(|c| {
                let flip = c.rhs.is_negative()
                    || (c.rhs.is_zero() && c.relation == Relation::GreaterEq);
                if !flip {
                    return c.clone();
                }
                Constraint {
                    coeffs: c.coeffs.iter().map(|v| -v.clone()).collect(),
                    relation: match c.relation {
                        Relation::LessEq => Relation::GreaterEq,
                        Relation::GreaterEq => Relation::LessEq,
                        Relation::Equal => Relation::Equal,
                    },
                    rhs: -c.rhs.clone(),
                }
            })
            .collect();

        let num_slack = normalized
            .iter()
            .filter(|c| c.relation != Relation::Equal)
            .count();
        let num_art = normalized
            .iter()
            .filter(|c| c.relation != Relation::LessEq)
            .count();
        let n = lp.num_vars;
        let first_artificial = n + num_slack;
        let width = first_artificial + num_art;

        let mut rows = Vec::with_capacity(normalized.len());
        let mut basis = Vec::with_capacity(normalized.len());
        let (mut slack, mut art) = (n, first_artificial);
        for c in normalized {
            let mut row = c.coeffs;
            row.resize(width + 1, T::zero());
            match c.relation {
                Relation::LessEq => {
                    row[slack] = T::one();
                    basis.push(slack);
                    slack += 1;
                }
                Relation::GreaterEq => {
                    row[slack] = -T::one();
                    slack += 1;
                    row[art] = T::one();
                    basis.push(art);
                    art += 1;
                }
                Relation::Equal => {
                    row[art] = T::one();
                    basis.push(art);
                    art += 1;
                }
            }
            row[width] = c.rhs;
            rows.push(row);
        }
        Tableau {
            rows,
            basis,
            num_vars: n,
            first_artificial,
            width,
        }
    }

    fn solve(mut self, objective: &[T]) -> LpSolution<T> {
        if self.first_artificial < self.width {
            let mut phase1 = vec![T::zero(); self.width];
            for c in phase1.iter_mut().skip(self.first_artificial) {
                *c = -T::one();
            }
            // phase one is bounded above by zero
            let value = match self.optimize(&phase1, self.width) {
                Some(v) => v,
                None => unreachable!("phase one objective is bounded"),
            };
            if value.is_negative() {
                return LpSolution::Infeasible;
            }
            self.evict_artificials();
        }
        let mut cost = objective.to_vec();
        cost.resize(self.width, T::zero());
        match self.optimize(&cost, self.first_artificial) {
            Some(value) => {
                let mut point = vec![T::zero(); self.num_vars];
                for (i, &b) in self.basis.iter().enumerate() {
                    if b < self.num_vars {
                        point[b] = self.rows[i][self.width].clone();
                    }
                }
                LpSolution::Optimal { point, value }
            }
            None => LpSolution::Unbounded,
        }
    }

    /// Primal simplex from the current basis over columns `< allowed`.
    /// Returns the optimum, or `None` if unbounded.
    fn optimize(&mut self, cost: &[T], allowed: usize) -> Option<T> {
        // reduced[j] = c_B . B^-1 A_j - c_j; the last slot holds the objective value
        let mut reduced = vec![T::zero(); self.width + 1];
        for (j, slot) in reduced.iter_mut().enumerate() {
            let mut acc = if j < self.width {
                -cost[j].clone()
            } else {
                T::zero()
            };
            for (i, &b) in self.basis.iter().enumerate() {
                if !cost[b].is_zero() && !self.rows[i][j].is_zero() {
                    acc = acc + cost[b].clone() * self.rows[i][j].clone();
                }
            }
            *slot = acc;
        }

        loop {
            // Bland: lowest-index improving column
            let Some(enter) = (0..allowed).find(|&j| reduced[j].is_negative()) else {
                return Some(reduced[self.width].clone());
            };
            let mut leave: Option<(usize, T)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[enter].is_positive() {
                    continue;
                }
                let ratio = row[self.width].clone() / row[enter].clone();
                let better = match &leave {
                    None => true,
                    Some((li, best)) => {
                        ratio < *best || (ratio == *best && self.basis[i] < self.basis[*li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let (row, _) = leave?;
            self.pivot(row, enter, &mut reduced);
        }
    }

    fn pivot(&mut self, row: usize, col: usize, reduced: &mut [T]) {
        let pivot = self.rows[row][col].clone();
        if !pivot.is_one() {
            for v in self.rows[row].iter_mut() {
                if !v.is_zero() {
                    *v = v.clone() / pivot.clone();
                }
            }
        }
        let pivot_row = self.rows[row].clone();
        for (i, r) in self.rows.iter_mut().enumerate() {
            if i == row || r[col].is_zero() {
                continue;
            }
            eliminate(r, &pivot_row, col);
        }
        if !reduced[col].is_zero() {
            eliminate(reduced, &pivot_row, col);
        }
        self.basis[row] = col;
    }

    /// Replaces zero-valued artificial basics with structural columns, dropping
    /// rows that turn out to be redundant.
    fn evict_artificials(&mut self) {
        let mut i = 0;
        while i < self.rows.len() {
            if self.basis[i] < self.first_artificial {
                i += 1;
                continue;
            }
            match (0..self.first_artificial).find(|&j| !self.rows[i][j].is_zero()) {
                Some(j) => {
                    let mut scratch = vec![T::zero(); self.width + 1];
                    self.pivot(i, j, &mut scratch);
                    i += 1;
                }
                None => {
                    self.rows.remove(i);
                    self.basis.remove(i);
                }
            }
        }
    }
}

fn eliminate<T: Scalar>(target: &mut [T], pivot_row: &[T], col: usize) {
    let factor = target[col].clone();
    for (t, p) in target.iter_mut().zip(pivot_row) {
        if !p.is_zero() {
            *t = t.clone() - factor.clone() * p.clone();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    fn int(v: i64) -> Rational {
        Rational::from_int(v)
    }

    #[test]
    fn textbook_maximum() {
        // max 3x + 5y  s.t. x <= 4, 2y <= 12, 3x + 2y <= 18  -> (2, 6), 36
        let mut lp = LinearProgram::new(2).maximize(vec![int(3), int(5)]);
        lp.constrain(vec![int(1), int(0)], Relation::LessEq, int(4));
        lp.constrain(vec![int(0), int(2)], Relation::LessEq, int(12));
        lp.constrain(vec![int(3), int(2)], Relation::LessEq, int(18));
        assert_eq!(
            lp.solve(),
            LpSolution::Optimal {
                point: vec![int(2), int(6)],
                value: int(36)
            }
        );
    }

    #[test]
    fn fractional_optimum_with_equality() {
        // max x  s.t. x + y = 1, 2x - y <= 0  -> x = 1/3
        let mut lp = LinearProgram::new(2).maximize(vec![int(1), int(0)]);
        lp.constrain(vec![int(1), int(1)], Relation::Equal, int(1));
        lp.constrain(vec![int(2), int(-1)], Relation::LessEq, int(0));
        match lp.solve() {
            LpSolution::Optimal { point, value } => {
                assert_eq!(value, q(1, 3));
                assert_eq!(point, vec![q(1, 3), q(2, 3)]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn detects_infeasible_and_unbounded() {
        let mut lp = LinearProgram::<Rational>::new(1);
        lp.constrain(vec![int(1)], Relation::GreaterEq, int(2));
        lp.constrain(vec![int(1)], Relation::LessEq, int(1));
        assert_eq!(lp.solve(), LpSolution::Infeasible);

        let mut lp = LinearProgram::new(2).maximize(vec![int(1), int(0)]);
        lp.constrain(vec![int(1), int(-1)], Relation::LessEq, int(1));
        assert_eq!(lp.solve(), LpSolution::Unbounded);
    }

    #[test]
    fn redundant_equalities_are_dropped() {
        let mut lp = LinearProgram::new(2).maximize(vec![int(0), int(1)]);
        lp.constrain(vec![int(1), int(1)], Relation::Equal, int(1));
        lp.constrain(vec![int(2), int(2)], Relation::Equal, int(2));
        lp.constrain(vec![int(1), int(0)], Relation::GreaterEq, q(1, 4));
        match lp.solve() {
            LpSolution::Optimal { point, value } => {
                assert_eq!(value, q(3, 4));
                assert_eq!(point, vec![q(1, 4), q(3, 4)]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn degenerate_cycling_example_terminates() {
        // Beale's cycling example, as a maximization of the negated cost
        let mut lp = LinearProgram::new(4).maximize(vec![q(3, 4), int(-150), q(1, 50), int(-6)]);
        lp.constrain(vec![q(1, 4), int(-60), q(-1, 25), int(9)], Relation::LessEq, int(0));
        lp.constrain(vec![q(1, 2), int(-90), q(-1, 50), int(3)], Relation::LessEq, int(0));
        lp.constrain(vec![int(0), int(0), int(1), int(0)], Relation::LessEq, int(1));
        match lp.solve() {
            LpSolution::Optimal { value, .. } => assert_eq!(value, q(1, 20)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn works_over_machine_rationals() {
        use num_rational::Rational64;
        let mut lp = LinearProgram::new(2).maximize(vec![Rational64::from_int(1), Rational64::from_int(1)]);
        lp.constrain(
            vec![Rational64::from_int(2), Rational64::from_int(1)],
            Relation::LessEq,
            Rational64::from_int(1),
        );
        lp.constrain(
            vec![Rational64::from_int(1), Rational64::from_int(3)],
            Relation::LessEq,
            Rational64::from_int(1),
        );
        match lp.solve() {
            LpSolution::Optimal { value, .. } => assert_eq!(value, Rational64::ratio(3, 5)),
            other => panic!("unexpected {other:?}"),
        }
    }
}
