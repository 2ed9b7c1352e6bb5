//! Exact rational linear programming: feasibility, optimization, implicit
//! equalities, relative-interior witnesses, and Fourier-Motzkin projection.
//! This is the decision engine behind every geometric predicate in the crate.

mod fm;
mod simplex;
mod system;

pub use fm::fm_eliminate;
pub use simplex::{feasible, optimize, LpOutcome, LpStatus};
pub use system::{LinearSystem, Row};

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::exactmath::{Rat, RVector};
use crate::Error;

/// Indices of inequality rows that hold with equality on the whole solution
/// set. Decided one LP per row, skipping rows some feasible witness already
/// satisfies strictly.
pub fn implicit_equalities(s: &LinearSystem) -> Result<BTreeSet<usize>, Error> {
    implicit_with_witness(s).map(|(set, _)| set)
}

/// `implicit_equalities` plus a relative-interior witness, obtained for free
/// as the average of the per-row optimizer witnesses: each non-implicit row
/// has strictly positive slack at one of them, hence at the average.
pub(crate) fn implicit_with_witness(
    s: &LinearSystem,
) -> Result<(BTreeSet<usize>, RVector), Error> {
    let first = feasible(s);
    if !first.is_feasible() {
        return Err(Error::Infeasible);
    }
    let mut witnesses = vec![first.witness.expect("feasible witness")];
    let mut implicit = BTreeSet::new();
    for (i, row) in s.ineqs().iter().enumerate() {
        if row.normal.is_zero() {
            if row.rhs.is_zero() {
                implicit.insert(i);
            }
            continue;
        }
        if witnesses.iter().any(|w| row.slack(w) > Rat::zero()) {
            continue;
        }
        // min <a_i, x> over S, as max of the negated normal
        let out = optimize(&(-&row.normal), s);
        match out.status {
            LpStatus::Optimal if out.value.as_ref() == Some(&(-&row.rhs)) => {
                implicit.insert(i);
            }
            LpStatus::Optimal => {
                witnesses.push(out.witness.expect("optimal witness"));
            }
            LpStatus::Unbounded => {
                // stepping along the ray opens up slack on row i
                let w = out.witness.expect("feasible witness");
                let r = out.ray.expect("unbounded ray");
                witnesses.push(&w + &r);
            }
            LpStatus::Infeasible => unreachable!("system already proved feasible"),
        }
    }
    let n = Rat::from_integer((witnesses.len() as i64).into());
    let mut sum = RVector::zero(s.dim());
    for w in &witnesses {
        sum = &sum + w;
    }
    let witness = sum.scale(&(Rat::from_integer(1.into()) / n));
    debug_assert!(s
        .ineqs()
        .iter()
        .enumerate()
        .all(|(i, r)| r.normal.is_zero()
            || if implicit.contains(&i) {
                r.slack(&witness).is_zero()
            } else {
                r.slack(&witness) > Rat::zero()
            }));
    Ok((implicit, witness))
}

/// A relative-interior point of the solution set: equalities and implicit
/// rows hold exactly, every other inequality strictly. `None` iff infeasible.
///
/// Found by maximizing a shared slack t over the non-implicit rows, capped at
/// 1 so unbounded interiors still give finite witnesses.
pub fn strict_interior(s: &LinearSystem) -> Option<RVector> {
    let implicit = match implicit_equalities(s) {
        Ok(set) => set,
        Err(_) => return None,
    };
    let d = s.dim();
    let mut aug = LinearSystem::new(d + 1);
    let pad = |v: &RVector, t: Rat| -> RVector {
        let mut entries = v.entries().to_vec();
        entries.push(t);
        RVector::new(entries)
    };
    for r in s.eqs() {
        aug.push_eq(pad(&r.normal, Rat::zero()), r.rhs.clone());
    }
    for (i, r) in s.ineqs().iter().enumerate() {
        if r.normal.is_zero() {
            continue;
        }
        if implicit.contains(&i) {
            aug.push_eq(pad(&r.normal, Rat::zero()), r.rhs.clone());
        } else {
            aug.push_ineq(pad(&r.normal, Rat::from_integer(1.into())), r.rhs.clone());
        }
    }
    // t <= 1
    aug.push_ineq(
        RVector::unit(d + 1, d),
        Rat::from_integer(1.into()),
    );
    let out = optimize(&RVector::unit(d + 1, d), &aug);
    match out.status {
        LpStatus::Optimal => {
            let w = out.witness.expect("optimal witness");
            assert!(
                w[d] > Rat::zero(),
                "non-implicit rows must admit positive slack"
            );
            let x = RVector::new(w.entries()[..d].to_vec());
            debug_assert!(relint_contains(s, &x));
            Some(x)
        }
        LpStatus::Infeasible => None,
        LpStatus::Unbounded => unreachable!("slack is capped at 1"),
    }
}

/// True iff `x` lies in the relative interior of the solution set: equalities
/// and implicit rows hold with equality, every other inequality strictly.
pub fn relint_contains(s: &LinearSystem, x: &RVector) -> bool {
    assert_eq!(x.dim(), s.dim());
    let implicit = match implicit_equalities(s) {
        Ok(set) => set,
        Err(_) => return false,
    };
    if !s.eqs().iter().all(|r| r.slack(x).is_zero()) {
        return false;
    }
    s.ineqs().iter().enumerate().all(|(i, r)| {
        if r.normal.is_zero() {
            r.rhs >= Rat::zero()
        } else if implicit.contains(&i) {
            r.slack(x).is_zero()
        } else {
            r.slack(x) > Rat::zero()
        }
    })
}
