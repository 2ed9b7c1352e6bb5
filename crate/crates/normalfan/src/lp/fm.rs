//! Fourier-Motzkin projection. Equality rows eliminate a variable by exact
//! substitution; inequality rows go through the classic pairwise combination.
//! The variable order is greedy: always eliminate the variable producing the
//! fewest new rows. Only exact-duplicate rows are removed.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exactmath::{Rat, RVector};

use super::system::LinearSystem;

#[derive(Clone, PartialEq, Eq, Hash)]
struct RawRow {
    coeffs: Vec<Rat>,
    rhs: Rat,
    eq: bool,
}

impl RawRow {
    /// Scale by a positive rational so all entries are coprime integers.
    /// Scaling direction is preserved, so equal constraints compare equal.
    fn normalize(&mut self) {
        let mut lcm = BigInt::one();
        for c in self.coeffs.iter().chain(std::iter::once(&self.rhs)) {
            lcm = lcm.lcm(c.denom());
        }
        let mut ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .chain(std::iter::once(&self.rhs))
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let mut content = BigInt::zero();
        for n in &ints {
            content = content.gcd(n);
        }
        if !content.is_zero() {
            for n in ints.iter_mut() {
                *n = &*n / &content;
            }
        }
        let rhs = ints.pop().expect("rhs");
        self.coeffs = ints.into_iter().map(Rat::from_integer).collect();
        self.rhs = Rat::from_integer(rhs);
    }
}

/// Projects the solution set of `s` onto the coordinates not in `drop`
/// (kept in their original order). A point is feasible in the output iff it
/// extends to a feasible point of the input.
pub fn fm_eliminate(s: &LinearSystem, drop: &BTreeSet<usize>) -> LinearSystem {
    let dim = s.dim();
    for &v in drop {
        assert!(v < dim, "fm_eliminate: coordinate out of range");
    }
    let mut rows: Vec<RawRow> = Vec::new();
    let mut infeasible = s.trivially_infeasible();
    for r in s.ineqs() {
        rows.push(RawRow {
            coeffs: r.normal.entries().to_vec(),
            rhs: r.rhs.clone(),
            eq: false,
        });
    }
    for r in s.eqs() {
        rows.push(RawRow {
            coeffs: r.normal.entries().to_vec(),
            rhs: r.rhs.clone(),
            eq: true,
        });
    }

    // active coordinate positions, in original order
    let mut vars: Vec<usize> = (0..dim).collect();
    let mut remaining: BTreeSet<usize> = drop.clone();

    while let Some(&target) = remaining.iter().min_by_key(|&&v| {
        let pos = vars.iter().position(|&w| w == v).expect("active var");
        elimination_cost(&rows, pos)
    }) {
        remaining.remove(&target);
        let pos = vars.iter().position(|&w| w == target).expect("active var");
        eliminate_at(&mut rows, pos, &mut infeasible);
        vars.remove(pos);
    }

    let mut out = LinearSystem::new(vars.len());
    if infeasible {
        // encode infeasibility as a constant-false row
        out.push_ineq(RVector::zero(vars.len()), Rat::from_integer((-1).into()));
        return out;
    }
    let mut seen = std::collections::HashSet::new();
    for mut row in rows {
        row.normalize();
        if row.coeffs.iter().all(Zero::is_zero) {
            let bad = if row.eq {
                !row.rhs.is_zero()
            } else {
                row.rhs.is_negative()
            };
            if bad {
                out.push_ineq(RVector::zero(vars.len()), Rat::from_integer((-1).into()));
            }
            continue;
        }
        if seen.insert(row.clone()) {
            let v = RVector::new(row.coeffs);
            if row.eq {
                out.push_eq(v, row.rhs);
            } else {
                out.push_ineq(v, row.rhs);
            }
        }
    }
    out
}

/// Number of rows the system grows by if we eliminate the variable at `pos`.
/// Substitution via an equality row is free.
fn elimination_cost(rows: &[RawRow], pos: usize) -> i64 {
    if rows.iter().any(|r| r.eq && !r.coeffs[pos].is_zero()) {
        return -(rows.len() as i64);
    }
    let mut pos_cnt: i64 = 0;
    let mut neg_cnt: i64 = 0;
    for r in rows {
        if r.coeffs[pos].is_positive() {
            pos_cnt += 1;
        } else if r.coeffs[pos].is_negative() {
            neg_cnt += 1;
        }
    }
    pos_cnt * neg_cnt - pos_cnt - neg_cnt
}

fn eliminate_at(rows: &mut Vec<RawRow>, pos: usize, infeasible: &mut bool) {
    // substitution path: use an equality row to solve for the variable
    if let Some(eq_idx) = rows.iter().position(|r| r.eq && !r.coeffs[pos].is_zero()) {
        let pivot = rows.remove(eq_idx);
        let pv = pivot.coeffs[pos].clone();
        for r in rows.iter_mut() {
            if !r.coeffs[pos].is_zero() {
                let f = &r.coeffs[pos] / &pv;
                for (c, p) in r.coeffs.iter_mut().zip(&pivot.coeffs) {
                    let sub = &f * p;
                    *c = &*c - &sub;
                }
                let sub = &f * &pivot.rhs;
                r.rhs = &r.rhs - &sub;
            }
            r.coeffs.remove(pos);
        }
        check_constant_rows(rows, infeasible);
        return;
    }

    let mut upper = Vec::new(); // coeff > 0
    let mut lower = Vec::new(); // coeff < 0
    let mut keep = Vec::new();
    for r in rows.drain(..) {
        if r.coeffs[pos].is_positive() {
            upper.push(r);
        } else if r.coeffs[pos].is_negative() {
            lower.push(r);
        } else {
            keep.push(r);
        }
    }
    for u in &upper {
        for l in &lower {
            // positive combination cancelling the target coefficient
            let cu = u.coeffs[pos].clone();
            let cl = l.coeffs[pos].clone();
            let coeffs: Vec<Rat> = u
                .coeffs
                .iter()
                .zip(&l.coeffs)
                .map(|(a, b)| &(&(-&cl) * a) + &(&cu * b))
                .collect();
            let rhs = &(&(-&cl) * &u.rhs) + &(&cu * &l.rhs);
            keep.push(RawRow {
                coeffs,
                rhs,
                eq: false,
            });
        }
    }
    for r in keep.iter_mut() {
        r.coeffs.remove(pos);
    }
    *rows = keep;
    check_constant_rows(rows, infeasible);
}

fn check_constant_rows(rows: &mut Vec<RawRow>, infeasible: &mut bool) {
    rows.retain(|r| {
        if r.coeffs.iter().all(Zero::is_zero) {
            let bad = if r.eq {
                !r.rhs.is_zero()
            } else {
                r.rhs.is_negative()
            };
            if bad {
                *infeasible = true;
            }
            false
        } else {
            true
        }
    });
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat_int;
    use crate::lp::{feasible, LpStatus};

    fn sys(dim: usize, ineqs: &[(&[i64], i64)]) -> LinearSystem {
        let mut s = LinearSystem::new(dim);
        for (a, b) in ineqs {
            s.push_ineq(RVector::from_ints(a), rat_int(*b));
        }
        s
    }

    #[test]
    fn pairwise_combination() {
        // {x1 + x2 <= 1, -x2 <= 0}, eliminate x2 -> {x1 <= 1}
        let s = sys(2, &[(&[1, 1], 1), (&[0, -1], 0)]);
        let out = fm_eliminate(&s, &BTreeSet::from([1]));
        assert_eq!(out.dim(), 1);
        assert_eq!(out.ineqs().len(), 1);
        assert_eq!(out.ineqs()[0].normal, RVector::from_ints(&[1]));
        assert_eq!(out.ineqs()[0].rhs, rat_int(1));
    }

    #[test]
    fn eliminate_nothing_is_identity() {
        let s = sys(2, &[(&[1, 1], 1)]);
        let out = fm_eliminate(&s, &BTreeSet::new());
        assert_eq!(out, s);
    }

    #[test]
    fn unconstrained_projection_is_whole_space() {
        let s = sys(2, &[(&[0, 1], 5)]);
        let out = fm_eliminate(&s, &BTreeSet::from([1]));
        assert_eq!(out.dim(), 1);
        assert!(out.ineqs().is_empty() && out.eqs().is_empty());
    }

    #[test]
    fn infeasible_projects_to_infeasible() {
        let s = sys(1, &[(&[1], 0), (&[-1], -1)]);
        let out = fm_eliminate(&s, &BTreeSet::from([0]));
        assert_eq!(feasible(&out).status, LpStatus::Infeasible);
    }

    #[test]
    fn equality_substitution() {
        // {x1 = x2, x2 <= 3}, eliminate x2 -> {x1 <= 3}
        let mut s = LinearSystem::new(2);
        s.push_eq(RVector::from_ints(&[1, -1]), rat_int(0));
        s.push_ineq(RVector::from_ints(&[0, 1]), rat_int(3));
        let out = fm_eliminate(&s, &BTreeSet::from([1]));
        assert_eq!(out.dim(), 1);
        assert!(out.eqs().is_empty());
        assert_eq!(out.ineqs()[0].normal, RVector::from_ints(&[1]));
        assert_eq!(out.ineqs()[0].rhs, rat_int(3));
    }
}
