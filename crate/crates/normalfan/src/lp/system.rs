use num_traits::Zero;

use crate::exactmath::{Rat, RVector};

/// One linear row `<normal, x> (<= | =) rhs`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Row {
    pub normal: RVector,
    pub rhs: Rat,
}

impl Row {
    pub fn new(normal: RVector, rhs: Rat) -> Self {
        Self { normal, rhs }
    }

    pub fn slack(&self, x: &RVector) -> Rat {
        &self.rhs - &self.normal.dot(x)
    }
}

/// A finite system of linear inequalities and equalities over R^dim.
///
/// Zero-normal rows are never handed to the solver: an unsatisfiable one
/// (ineq with rhs < 0, eq with rhs != 0) marks the whole system infeasible at
/// construction, a trivially true one is inert. Rows keep their index either
/// way so callers can use row indices as stable identifiers.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearSystem {
    dim: usize,
    ineqs: Vec<Row>,
    eqs: Vec<Row>,
    trivially_infeasible: bool,
}

impl LinearSystem {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            ineqs: vec![],
            eqs: vec![],
            trivially_infeasible: false,
        }
    }

    pub fn push_ineq(&mut self, normal: RVector, rhs: Rat) {
        assert_eq!(normal.dim(), self.dim, "ineq row dimension mismatch");
        if normal.is_zero() && rhs < Rat::zero() {
            self.trivially_infeasible = true;
        }
        self.ineqs.push(Row::new(normal, rhs));
    }

    pub fn push_eq(&mut self, normal: RVector, rhs: Rat) {
        assert_eq!(normal.dim(), self.dim, "eq row dimension mismatch");
        if normal.is_zero() && !rhs.is_zero() {
            self.trivially_infeasible = true;
        }
        self.eqs.push(Row::new(normal, rhs));
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ineqs(&self) -> &[Row] {
        &self.ineqs
    }

    pub fn eqs(&self) -> &[Row] {
        &self.eqs
    }

    pub fn trivially_infeasible(&self) -> bool {
        self.trivially_infeasible
    }

    /// Exact satisfaction check of every row.
    pub fn satisfied_by(&self, x: &RVector) -> bool {
        assert_eq!(x.dim(), self.dim);
        self.ineqs.iter().all(|r| r.slack(x) >= Rat::zero())
            && self.eqs.iter().all(|r| r.slack(x).is_zero())
    }

    /// Turns inequality row `i` into an equality (the row stays listed as an
    /// inequality too, which is harmless for the solution set).
    pub fn with_ineq_tight(&self, i: usize) -> LinearSystem {
        let mut out = self.clone();
        let row = out.ineqs[i].clone();
        out.push_eq(row.normal, row.rhs);
        out
    }
}
