//! Exact two-phase simplex with Bland's rule, used for feasibility questions
//! that may contain strict inequalities.
//!
//! Strict constraints `a·x > b` are rewritten as `a·x - t ≥ b` with one shared
//! slack `0 ≤ t ≤ 1`; the system is feasible with strictness iff the maximum
//! of `t` is positive.

use num_traits::{One, Signed, Zero};

use super::{QVector, Rational};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Eq,
    Ge,
    Gt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: QVector,
    pub relation: Relation,
    pub rhs: Rational,
}

impl Constraint {
    pub fn new(coeffs: QVector, relation: Relation, rhs: Rational) -> Self {
        Constraint {
            coeffs,
            relation,
            rhs,
        }
    }

    pub fn is_satisfied(&self, x: &QVector) -> bool {
        let lhs = self.coeffs.dot(x);
        match self.relation {
            Relation::Eq => lhs == self.rhs,
            Relation::Ge => lhs >= self.rhs,
            Relation::Gt => lhs > self.rhs,
        }
    }
}

/// A system of linear constraints over free rational variables, with an
/// optional objective to maximize.
#[derive(Clone, Debug, Default)]
pub struct LinearProgram {
    variables: usize,
    constraints: Vec<Constraint>,
    objective: Option<QVector>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { point: QVector, value: Rational },
    Unbounded { point: QVector },
    Infeasible,
}

impl LinearProgram {
    pub fn new(variables: usize) -> Self {
        LinearProgram {
            variables,
            constraints: Vec::new(),
            objective: None,
        }
    }

    pub fn variables(&self) -> usize {
        self.variables
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn add(&mut self, coeffs: QVector, relation: Relation, rhs: Rational) -> Result<&mut Self> {
        if coeffs.len() != self.variables {
            return Err(Error::DimensionMismatch {
                expected: self.variables,
                found: coeffs.len(),
            });
        }
        self.constraints.push(Constraint::new(coeffs, relation, rhs));
        Ok(self)
    }

    /// `a·x ≤ b`, stored as `-a·x ≥ -b`.
    pub fn add_le(&mut self, coeffs: QVector, rhs: Rational) -> Result<&mut Self> {
        self.add(coeffs.neg(), Relation::Ge, -rhs)
    }

    /// `a·x < b`, stored as `-a·x > -b`.
    pub fn add_lt(&mut self, coeffs: QVector, rhs: Rational) -> Result<&mut Self> {
        self.add(coeffs.neg(), Relation::Gt, -rhs)
    }

    pub fn set_objective(&mut self, objective: QVector) -> Result<&mut Self> {
        if objective.len() != self.variables {
            return Err(Error::DimensionMismatch {
                expected: self.variables,
                found: objective.len(),
            });
        }
        self.objective = Some(objective);
        Ok(self)
    }

    pub fn is_satisfied_by(&self, x: &QVector) -> bool {
        self.constraints.iter().all(|c| c.is_satisfied(x))
    }

    /// Maximizes the objective (or just finds a point if there is none).
    /// Strict constraints are honored; with strict constraints present the
    /// objective is ignored and the strictness slack is maximized instead.
    pub fn solve(&self) -> LpOutcome {
        let has_strict = self.constraints.iter().any(|c| c.relation == Relation::Gt);
        let mut tab = Tableau::build(self, has_strict);
        if !tab.phase_one() {
            return LpOutcome::Infeasible;
        }
        let profit = if has_strict {
            let mut p = vec![Rational::zero(); tab.width];
            p[tab.slack_col.unwrap()] = Rational::one();
            Some(p)
        } else {
            self.objective.as_ref().map(|obj| {
                let mut p = vec![Rational::zero(); tab.width];
                for (j, c) in obj.iter().enumerate() {
                    p[j] = c.clone();
                    p[self.variables + j] = -c.clone();
                }
                p
            })
        };
        let Some(profit) = profit else {
            return LpOutcome::Optimal {
                point: tab.point(self.variables),
                value: Rational::zero(),
            };
        };
        let bounded = tab.maximize(&profit);
        let point = tab.point(self.variables);
        if has_strict {
            // t ≤ 1 keeps this bounded
            let t = tab.value_of(tab.slack_col.unwrap());
            if !t.is_positive() {
                return LpOutcome::Infeasible;
            }
            return LpOutcome::Optimal { point, value: t };
        }
        if !bounded {
            return LpOutcome::Unbounded { point };
        }
        let value = self.objective.as_ref().unwrap().dot(&point);
        LpOutcome::Optimal { point, value }
    }
}

/// A point satisfying every constraint (strict ones strictly), or `None` if
/// the system is infeasible.
pub fn lp_feasible(lp: &LinearProgram) -> Option<QVector> {
    match lp.solve() {
        LpOutcome::Optimal { point, .. } | LpOutcome::Unbounded { point } => Some(point),
        LpOutcome::Infeasible => None,
    }
}

/// Dense simplex tableau over nonnegative variables `x+`, `x-`, the optional
/// strictness slack `t`, surplus columns, and artificial columns.
struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    /// columns usable outside phase one
    width: usize,
    artificial_start: usize,
    slack_col: Option<usize>,
}

impl Tableau {
    fn build(lp: &LinearProgram, has_strict: bool) -> Self {
        let n = lp.variables;
        let slack_col = has_strict.then_some(2 * n);
        let surplus_start = 2 * n + usize::from(has_strict);
        let n_surplus = lp
            .constraints
            .iter()
            .filter(|c| c.relation != Relation::Eq)
            .count()
            + usize::from(has_strict);
        let width = surplus_start + n_surplus;
        let n_rows = lp.constraints.len() + usize::from(has_strict);
        let total = width + n_rows;

        let mut rows = Vec::with_capacity(n_rows);
        let mut rhs = Vec::with_capacity(n_rows);
        let mut surplus = surplus_start;
        for c in &lp.constraints {
            let mut row = vec![Rational::zero(); total];
            for (j, a) in c.coeffs.iter().enumerate() {
                row[j] = a.clone();
                row[n + j] = -a.clone();
            }
            match c.relation {
                Relation::Eq => {}
                Relation::Ge => {
                    row[surplus] = -Rational::one();
                    surplus += 1;
                }
                Relation::Gt => {
                    row[slack_col.unwrap()] = -Rational::one();
                    row[surplus] = -Rational::one();
                    surplus += 1;
                }
            }
            rows.push(row);
            rhs.push(c.rhs.clone());
        }
        if let Some(t) = slack_col {
            // t + s = 1
            let mut row = vec![Rational::zero(); total];
            row[t] = Rational::one();
            row[surplus] = Rational::one();
            rows.push(row);
            rhs.push(Rational::one());
        }
        for (i, (row, b)) in rows.iter_mut().zip(rhs.iter_mut()).enumerate() {
            if b.is_negative() {
                for x in row.iter_mut() {
                    *x = -x.clone();
                }
                *b = -b.clone();
            }
            row[width + i] = Rational::one();
        }
        let basis = (width..total).collect();
        Tableau {
            rows,
            rhs,
            basis,
            width,
            artificial_start: width,
            slack_col,
        }
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            *x *= &inv;
        }
        self.rhs[r] *= &inv;
        let prow = self.rows[r].clone();
        let pb = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for (x, p) in self.rows[i].iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
            let d = &f * &pb;
            self.rhs[i] -= d;
        }
        self.basis[r] = c;
    }

    /// Runs simplex maximizing `profit · y` over the first `limit` columns.
    /// Returns false if unbounded.
    fn run(&mut self, profit: &[Rational], limit: usize) -> bool {
        loop {
            // reduced profit of column j: p_j - sum_i p_{basis_i} a_ij
            let entering = (0..limit).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let mut red = profit.get(j).cloned().unwrap_or_else(Rational::zero);
                for (i, &b) in self.basis.iter().enumerate() {
                    let pb = profit.get(b).cloned().unwrap_or_else(Rational::zero);
                    if !pb.is_zero() && !self.rows[i][j].is_zero() {
                        red -= pb * &self.rows[i][j];
                    }
                }
                red.is_positive()
            });
            let Some(c) = entering else { return true };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][c];
                if a.is_positive() {
                    let ratio = &self.rhs[i] / a;
                    let better = match &leave {
                        None => true,
                        Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            let Some((r, _)) = leave else { return false };
            self.pivot(r, c);
        }
    }

    fn phase_one(&mut self) -> bool {
        let total = self.rows.first().map(Vec::len).unwrap_or(self.width);
        let mut profit = vec![Rational::zero(); total];
        for p in profit.iter_mut().skip(self.artificial_start) {
            *p = -Rational::one();
        }
        self.run(&profit, total);
        let infeasibility: Rational = self
            .basis
            .iter()
            .zip(&self.rhs)
            .filter(|(&b, _)| b >= self.artificial_start)
            .map(|(_, v)| v.clone())
            .sum();
        if infeasibility.is_positive() {
            return false;
        }
        // drive remaining (zero-valued) artificials out of the basis
        let mut i = 0;
        while i < self.rows.len() {
            if self.basis[i] >= self.artificial_start {
                match (0..self.width).find(|&j| !self.rows[i][j].is_zero()) {
                    Some(j) => self.pivot(i, j),
                    None => {
                        self.rows.remove(i);
                        self.rhs.remove(i);
                        self.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
        for row in self.rows.iter_mut() {
            row.truncate(self.width);
        }
        true
    }

    fn maximize(&mut self, profit: &[Rational]) -> bool {
        self.run(profit, self.width)
    }

    fn value_of(&self, col: usize) -> Rational {
        self.basis
            .iter()
            .position(|&b| b == col)
            .map(|i| self.rhs[i].clone())
            .unwrap_or_else(Rational::zero)
    }

    fn point(&self, n: usize) -> QVector {
        (0..n).map(|j| self.value_of(j) - self.value_of(n + j)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratlin::{int, rat};

    #[test]
    fn simplex_point_exists() {
        let mut lp = LinearProgram::new(2);
        lp.add(QVector::from_ints(&[1, 0]), Relation::Ge, int(0)).unwrap();
        lp.add(QVector::from_ints(&[0, 1]), Relation::Ge, int(0)).unwrap();
        lp.add(QVector::from_ints(&[1, 1]), Relation::Eq, int(1)).unwrap();
        let x = lp_feasible(&lp).unwrap();
        assert!(lp.is_satisfied_by(&x));
    }

    #[test]
    fn contradictory_strict_pair() {
        let mut lp = LinearProgram::new(1);
        lp.add(QVector::from_ints(&[1]), Relation::Gt, int(0)).unwrap();
        lp.add_lt(QVector::from_ints(&[1]), int(0)).unwrap();
        assert_eq!(lp_feasible(&lp), None);
    }

    #[test]
    fn strict_positive_on_a_line() {
        let mut lp = LinearProgram::new(2);
        lp.add(QVector::from_ints(&[1, 0]), Relation::Gt, int(0)).unwrap();
        lp.add(QVector::from_ints(&[0, 1]), Relation::Gt, int(0)).unwrap();
        lp.add(QVector::from_ints(&[1, 2]), Relation::Eq, int(1)).unwrap();
        let x = lp_feasible(&lp).unwrap();
        assert!(x[0].is_positive() && x[1].is_positive());
        assert_eq!(&x[0] + &x[1] * int(2), int(1));
    }

    #[test]
    fn strict_but_only_boundary_feasible() {
        // x ≥ 0, x ≤ 0, x > -1 is feasible; x > 0 with x ≤ 0 is not
        let mut lp = LinearProgram::new(1);
        lp.add(QVector::from_ints(&[1]), Relation::Ge, int(0)).unwrap();
        lp.add_le(QVector::from_ints(&[1]), int(0)).unwrap();
        lp.add(QVector::from_ints(&[1]), Relation::Gt, int(-1)).unwrap();
        assert_eq!(lp_feasible(&lp), Some(QVector::from_ints(&[0])));
        lp.add(QVector::from_ints(&[1]), Relation::Gt, int(0)).unwrap();
        assert_eq!(lp_feasible(&lp), None);
    }

    #[test]
    fn optimum_and_unbounded() {
        let mut lp = LinearProgram::new(2);
        lp.add_le(QVector::from_ints(&[1, 1]), int(4)).unwrap();
        lp.add_le(QVector::from_ints(&[1, 3]), int(6)).unwrap();
        lp.add(QVector::from_ints(&[1, 0]), Relation::Ge, int(0)).unwrap();
        lp.add(QVector::from_ints(&[0, 1]), Relation::Ge, int(0)).unwrap();
        lp.set_objective(QVector::new(vec![int(1), rat(1, 2)])).unwrap();
        match lp.solve() {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, int(4)),
            other => panic!("{other:?}"),
        }
        let mut lp = LinearProgram::new(1);
        lp.add(QVector::from_ints(&[1]), Relation::Ge, int(2)).unwrap();
        lp.set_objective(QVector::from_ints(&[1])).unwrap();
        assert!(matches!(lp.solve(), LpOutcome::Unbounded { .. }));
    }
}
