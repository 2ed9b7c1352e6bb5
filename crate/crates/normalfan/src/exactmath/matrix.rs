use num_traits::Zero;

use super::rational::Rat;
use super::subspace::SubspaceBasis;
use super::vector::RVector;

/// Dense rational matrix, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RMatrix {
    rows: usize,
    cols: usize,
    data: Vec<RVector>,
}

impl RMatrix {
    pub fn from_rows(cols: usize, rows: Vec<RVector>) -> Self {
        for r in &rows {
            assert_eq!(r.dim(), cols, "row width mismatch");
        }
        Self {
            rows: rows.len(),
            cols,
            data: rows,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &RVector {
        &self.data[i]
    }

    pub fn row_iter(&self) -> std::slice::Iter<'_, RVector> {
        self.data.iter()
    }

    pub fn mul_vec(&self, x: &RVector) -> RVector {
        RVector::new(self.data.iter().map(|r| r.dot(x)).collect())
    }

    pub fn transpose(&self) -> RMatrix {
        let rows = (0..self.cols)
            .map(|j| RVector::new((0..self.rows).map(|i| self.data[i][j].clone()).collect()))
            .collect();
        RMatrix::from_rows(self.rows, rows)
    }

    /// Reduced row echelon form. Pivot rule: scan columns left to right, take
    /// the first row (top to bottom) with a nonzero entry. Returns the reduced
    /// rows and the pivot column of each.
    pub(crate) fn rref(rows: &mut Vec<Vec<Rat>>) -> Vec<usize> {
        let m = rows.len();
        if m == 0 {
            return vec![];
        }
        let n = rows[0].len();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..n {
            if r == m {
                break;
            }
            let Some(p) = (r..m).find(|&i| !rows[i][c].is_zero()) else {
                continue;
            };
            rows.swap(r, p);
            let pv = rows[r][c].clone();
            for e in rows[r].iter_mut() {
                *e = &*e / &pv;
            }
            for i in 0..m {
                if i != r && !rows[i][c].is_zero() {
                    let f = rows[i][c].clone();
                    for j in 0..n {
                        let sub = &f * &rows[r][j];
                        rows[i][j] = &rows[i][j] - &sub;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn to_raw(&self) -> Vec<Vec<Rat>> {
        self.data.iter().map(|r| r.entries().to_vec()).collect()
    }

    pub fn rank(&self) -> usize {
        let mut raw = self.to_raw();
        Self::rref(&mut raw).len()
    }

    /// Basis of {x : Mx = 0}; count = cols - rank.
    pub fn kernel_basis(&self) -> SubspaceBasis {
        let mut raw = self.to_raw();
        let pivots = Self::rref(&mut raw);
        let n = self.cols;
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::new();
        for &f in &free {
            let mut v = vec![Rat::zero(); n];
            v[f] = Rat::from_integer(1.into());
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -raw[r][f].clone();
            }
            basis.push(RVector::new(v));
        }
        SubspaceBasis::new(n, basis)
    }
}

/// Some solution of `eqs * x = rhs`, with free variables fixed to 0, or
/// `None` if the system is inconsistent.
pub fn solve_affine(eqs: &RMatrix, rhs: &RVector) -> Option<RVector> {
    assert_eq!(eqs.rows(), rhs.dim(), "solve_affine: rhs length mismatch");
    let n = eqs.cols();
    let mut raw: Vec<Vec<Rat>> = eqs
        .row_iter()
        .zip(rhs.iter())
        .map(|(r, b)| {
            let mut v = r.entries().to_vec();
            v.push(b.clone());
            v
        })
        .collect();
    let pivots = RMatrix::rref(&mut raw);
    // a pivot in the augmented column means 0 = 1
    if pivots.contains(&n) {
        return None;
    }
    let mut x = vec![Rat::zero(); n];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = raw[r][n].clone();
    }
    Some(RVector::new(x))
}

/// Orthogonal projection of `x` onto the affine flat `{y : eqs * y = rhs}`,
/// via the normal equations `(E Eᵀ) λ = rhs - E x`, `y = x + Eᵀ λ`.
/// `None` if the flat is empty.
pub fn project_affine(x: &RVector, eqs: &RMatrix, rhs: &RVector) -> Option<RVector> {
    if eqs.rows() == 0 {
        return Some(x.clone());
    }
    let et = eqs.transpose();
    let gram_rows: Vec<RVector> = eqs.row_iter().map(|r| eqs.mul_vec(r)).collect();
    let gram = RMatrix::from_rows(eqs.rows(), gram_rows);
    let resid = &(rhs.clone()) - &eqs.mul_vec(x);
    // the Gram system is consistent iff the flat is nonempty
    let lambda = solve_affine(&gram, &resid)?;
    let y = &(x.clone()) + &et.mul_vec(&lambda);
    if &eqs.mul_vec(&y) != rhs {
        return None;
    }
    Some(y)
}
