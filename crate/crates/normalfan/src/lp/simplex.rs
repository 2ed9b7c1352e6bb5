//! Dense two-phase primal simplex over exact rationals.
//!
//! Free variables are split as x = p - n, every inequality row gets a slack,
//! phase 1 drives artificials out with Bland's rule. Exact arithmetic makes
//! degeneracy common, so Bland is used exclusively; every reported status is
//! re-checked against the original system (witness, improving ray, or Farkas
//! multipliers from the final phase-1 duals).

use num_traits::Zero;

use crate::exactmath::{Rat, RVector};

use super::system::LinearSystem;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LpStatus {
    Optimal,
    Unbounded,
    Infeasible,
}

/// Outcome of an exact LP solve. `witness` is feasible whenever present;
/// `ray` is a feasible improving direction when unbounded.
#[derive(Clone, Debug)]
pub struct LpOutcome {
    pub status: LpStatus,
    pub witness: Option<RVector>,
    pub value: Option<Rat>,
    pub ray: Option<RVector>,
}

impl LpOutcome {
    fn infeasible() -> Self {
        Self {
            status: LpStatus::Infeasible,
            witness: None,
            value: None,
            ray: None,
        }
    }

    pub fn is_feasible(&self) -> bool {
        self.status != LpStatus::Infeasible
    }
}

/// Feasibility check; on success the witness satisfies every row exactly.
pub fn feasible(s: &LinearSystem) -> LpOutcome {
    optimize(&RVector::zero(s.dim()), s)
}

/// Exact maximum of `<c, x>` over the system.
pub fn optimize(c: &RVector, s: &LinearSystem) -> LpOutcome {
    assert_eq!(c.dim(), s.dim(), "objective dimension mismatch");
    if s.trivially_infeasible() {
        return LpOutcome::infeasible();
    }
    let mut t = Tableau::build(s);
    match t.phase1() {
        Phase1::Feasible => {}
        Phase1::Infeasible => {
            t.check_farkas(s);
            return LpOutcome::infeasible();
        }
    }
    t.drop_artificials();
    match t.phase2(c) {
        Phase2::Optimal => {
            let witness = t.structural_point(s.dim());
            debug_assert!(s.satisfied_by(&witness));
            let value = c.dot(&witness);
            LpOutcome {
                status: LpStatus::Optimal,
                witness: Some(witness),
                value: Some(value),
                ray: None,
            }
        }
        Phase2::Unbounded { entering } => {
            let witness = t.structural_point(s.dim());
            let ray = t.structural_ray(s.dim(), entering);
            debug_assert!(s.satisfied_by(&witness));
            debug_assert!(ray_is_improving(s, c, &ray));
            LpOutcome {
                status: LpStatus::Unbounded,
                witness: Some(witness),
                value: None,
                ray: Some(ray),
            }
        }
    }
}

fn ray_is_improving(s: &LinearSystem, c: &RVector, ray: &RVector) -> bool {
    c.dot(ray) > Rat::zero()
        && s.ineqs()
            .iter()
            .all(|r| r.normal.dot(ray) <= Rat::zero())
        && s.eqs().iter().all(|r| r.normal.dot(ray).is_zero())
}

enum Phase1 {
    Feasible,
    Infeasible,
}

enum Phase2 {
    Optimal,
    Unbounded { entering: usize },
}

/// Row bookkeeping: which original row a tableau row came from and whether its
/// sign was flipped to make the rhs nonnegative.
#[derive(Clone, Copy)]
struct RowOrigin {
    /// index into ineqs (true) or eqs (false)
    ineq: bool,
    index: usize,
    flipped: bool,
    /// column of the initial basic variable (slack or artificial) of this row
    init_basis_col: usize,
}

struct Tableau {
    /// rows[i] has ncols+1 entries, rhs last
    rows: Vec<Vec<Rat>>,
    /// ncols = structural + artificial columns
    ncols: usize,
    nstructural: usize,
    /// basis[i] = column basic in row i
    basis: Vec<usize>,
    origins: Vec<RowOrigin>,
    /// phase-1 reduced-cost row (ncols+1 entries), valid during phase 1
    obj: Vec<Rat>,
    art_start: usize,
}

impl Tableau {
    fn build(s: &LinearSystem) -> Tableau {
        let d = s.dim();
        let solver_ineqs: Vec<usize> = (0..s.ineqs().len())
            .filter(|&i| !s.ineqs()[i].normal.is_zero())
            .collect();
        let solver_eqs: Vec<usize> = (0..s.eqs().len())
            .filter(|&j| !s.eqs()[j].normal.is_zero())
            .collect();
        let nslack = solver_ineqs.len();
        let nstructural = 2 * d + nslack;
        let m = nslack + solver_eqs.len();

        let mut rows = Vec::with_capacity(m);
        let mut origins = Vec::with_capacity(m);
        let mut art_count = 0;
        // first pass: build structural part, decide who needs an artificial
        let mut needs_art = Vec::with_capacity(m);
        for (k, &i) in solver_ineqs.iter().enumerate() {
            let r = &s.ineqs()[i];
            let flipped = r.rhs < Rat::zero();
            let mut row = vec![Rat::zero(); nstructural + 1];
            fill_structural(&mut row, &r.normal, d, flipped);
            let sl = if flipped { -Rat::from_integer(1.into()) } else { Rat::from_integer(1.into()) };
            row[2 * d + k] = sl;
            row[nstructural] = if flipped { -r.rhs.clone() } else { r.rhs.clone() };
            // unflipped rows start with their slack basic; flipped need an artificial
            needs_art.push(flipped);
            if flipped {
                art_count += 1;
            }
            rows.push(row);
            origins.push(RowOrigin {
                ineq: true,
                index: i,
                flipped,
                init_basis_col: 0, // fixed below
            });
        }
        for &j in &solver_eqs {
            let r = &s.eqs()[j];
            let flipped = r.rhs < Rat::zero();
            let mut row = vec![Rat::zero(); nstructural + 1];
            fill_structural(&mut row, &r.normal, d, flipped);
            row[nstructural] = if flipped { -r.rhs.clone() } else { r.rhs.clone() };
            needs_art.push(true);
            art_count += 1;
            rows.push(row);
            origins.push(RowOrigin {
                ineq: false,
                index: j,
                flipped,
                init_basis_col: 0,
            });
        }

        // widen the rows with artificial columns
        let art_start = nstructural;
        let ncols = nstructural + art_count;
        let mut basis = Vec::with_capacity(m);
        let mut next_art = art_start;
        for (i, row) in rows.iter_mut().enumerate() {
            let rhs = row.pop().expect("rhs present");
            row.resize(ncols, Rat::zero());
            row.push(rhs);
            let col = if needs_art[i] {
                let c = next_art;
                row[c] = Rat::from_integer(1.into());
                next_art += 1;
                c
            } else {
                // unflipped ineq row i: its +1 slack column starts basic
                2 * d + i
            };
            origins[i].init_basis_col = col;
            basis.push(col);
        }

        let mut t = Tableau {
            rows,
            ncols,
            nstructural,
            basis,
            origins,
            obj: vec![],
            art_start,
        };
        t.rebuild_obj_phase1();
        t
    }

    /// Phase-1 reduced costs: cost 1 on artificial columns, 0 elsewhere.
    fn rebuild_obj_phase1(&mut self) {
        let mut obj = vec![Rat::zero(); self.ncols + 1];
        for j in self.art_start..self.ncols {
            obj[j] = Rat::from_integer(1.into());
        }
        for (i, &b) in self.basis.iter().enumerate() {
            if b >= self.art_start {
                // subtract this row (its basic cost is 1)
                for j in 0..=self.ncols {
                    let sub = self.rows[i][j].clone();
                    obj[j] = &obj[j] - &sub;
                }
            }
        }
        self.obj = obj;
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let pv = self.rows[row][col].clone();
        debug_assert!(!pv.is_zero());
        for e in self.rows[row].iter_mut() {
            *e = &*e / &pv;
        }
        for i in 0..self.rows.len() {
            if i != row && !self.rows[i][col].is_zero() {
                let f = self.rows[i][col].clone();
                for j in 0..=self.ncols {
                    let sub = &f * &self.rows[row][j];
                    self.rows[i][j] = &self.rows[i][j] - &sub;
                }
            }
        }
        if !self.obj.is_empty() && !self.obj[col].is_zero() {
            let f = self.obj[col].clone();
            for j in 0..=self.ncols {
                let sub = &f * &self.rows[row][j];
                self.obj[j] = &self.obj[j] - &sub;
            }
        }
        self.basis[row] = col;
    }

    /// Bland: entering = lowest-index column with negative reduced cost;
    /// leaving = lexicographically safe minimum-ratio row (ties broken by the
    /// smallest basic column). Returns false when optimal.
    fn bland_step(&mut self, allowed_cols: usize) -> Result<bool, usize> {
        let entering = (0..allowed_cols).find(|&j| self.obj[j] < Rat::zero());
        let Some(col) = entering else {
            return Ok(false);
        };
        let mut leave: Option<(usize, Rat)> = None;
        for i in 0..self.rows.len() {
            let a = &self.rows[i][col];
            if *a > Rat::zero() {
                let ratio = &self.rows[i][self.ncols] / a;
                match &leave {
                    None => leave = Some((i, ratio)),
                    Some((li, lr)) => {
                        if ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]) {
                            leave = Some((i, ratio));
                        }
                    }
                }
            }
        }
        match leave {
            Some((row, _)) => {
                self.pivot(row, col);
                Ok(true)
            }
            None => Err(col),
        }
    }

    fn phase1(&mut self) -> Phase1 {
        loop {
            match self.bland_step(self.ncols) {
                Ok(true) => continue,
                Ok(false) => break,
                Err(_) => unreachable!("phase-1 objective is bounded below by 0"),
            }
        }
        // objective value = -obj[rhs]
        if self.obj[self.ncols].is_zero() {
            Phase1::Feasible
        } else {
            Phase1::Infeasible
        }
    }

    /// Farkas multipliers over the original rows, re-checked exactly.
    /// Panics if the certificate does not verify; that would be a solver bug.
    fn check_farkas(&self, s: &LinearSystem) {
        let d = s.dim();
        let mut combo = RVector::zero(d);
        let mut rhs_combo = Rat::zero();
        for o in &self.origins {
            // dual value for this row, read off under its initial basis column
            let c_j = if o.init_basis_col >= self.art_start {
                Rat::from_integer(1.into())
            } else {
                Rat::zero()
            };
            let y = &c_j - &self.obj[o.init_basis_col];
            let mult = if o.flipped { y.clone() } else { -y.clone() };
            let row = if o.ineq {
                &s.ineqs()[o.index]
            } else {
                &s.eqs()[o.index]
            };
            if o.ineq {
                assert!(mult >= Rat::zero(), "Farkas multiplier sign violated");
            }
            combo = &combo + &row.normal.scale(&mult);
            rhs_combo = &rhs_combo + &(&mult * &row.rhs);
        }
        assert!(combo.is_zero(), "Farkas combination is not zero");
        assert!(rhs_combo < Rat::zero(), "Farkas rhs is not negative");
    }

    /// Pivot basic artificials out (or drop redundant rows), then forget the
    /// artificial columns.
    fn drop_artificials(&mut self) {
        let mut i = 0;
        while i < self.rows.len() {
            if self.basis[i] >= self.art_start {
                let col = (0..self.nstructural).find(|&j| !self.rows[i][j].is_zero());
                match col {
                    Some(c) => self.pivot(i, c),
                    None => {
                        // redundant row
                        self.rows.swap_remove(i);
                        self.basis.swap_remove(i);
                        self.origins.swap_remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
        for row in &mut self.rows {
            let rhs = row.pop().expect("rhs");
            row.truncate(self.nstructural);
            row.push(rhs);
        }
        self.ncols = self.nstructural;
        self.obj.clear();
    }

    /// max <c, x>  ==  min <(-c, c, 0), columns>
    fn phase2(&mut self, c: &RVector) -> Phase2 {
        let d = c.dim();
        let mut cost = vec![Rat::zero(); self.ncols + 1];
        for k in 0..d {
            cost[k] = -c[k].clone();
            cost[d + k] = c[k].clone();
        }
        let mut obj = cost.clone();
        for (i, &b) in self.basis.iter().enumerate() {
            if !cost[b].is_zero() {
                let f = cost[b].clone();
                for j in 0..=self.ncols {
                    let sub = &f * &self.rows[i][j];
                    obj[j] = &obj[j] - &sub;
                }
            }
        }
        self.obj = obj;
        loop {
            match self.bland_step(self.ncols) {
                Ok(true) => continue,
                Ok(false) => return Phase2::Optimal,
                Err(col) => return Phase2::Unbounded { entering: col },
            }
        }
    }

    /// Current basic solution mapped back to x-space.
    fn structural_point(&self, d: usize) -> RVector {
        let mut x = vec![Rat::zero(); 2 * d];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < 2 * d {
                x[b] = self.rows[i][self.ncols].clone();
            }
        }
        RVector::new((0..d).map(|k| &x[k] - &x[d + k]).collect())
    }

    /// Improving ray for the entering column, mapped back to x-space.
    fn structural_ray(&self, d: usize, entering: usize) -> RVector {
        let mut delta = vec![Rat::zero(); 2 * d];
        if entering < 2 * d {
            delta[entering] = Rat::from_integer(1.into());
        }
        for (i, &b) in self.basis.iter().enumerate() {
            if b < 2 * d {
                delta[b] = -self.rows[i][entering].clone();
            }
        }
        RVector::new((0..d).map(|k| &delta[k] - &delta[d + k]).collect())
    }
}

fn fill_structural(row: &mut [Rat], normal: &RVector, d: usize, flipped: bool) {
    for k in 0..d {
        let v = if flipped { -normal[k].clone() } else { normal[k].clone() };
        row[d + k] = -v.clone();
        row[k] = v;
    }
}
