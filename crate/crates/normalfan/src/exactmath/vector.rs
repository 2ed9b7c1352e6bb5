use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use num_traits::Zero;

use super::rational::{fmt_rat, rat_int, Rat};

/// Dense vector of exact rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RVector {
    entries: Vec<Rat>,
}

impl RVector {
    pub fn new(entries: Vec<Rat>) -> Self {
        Self { entries }
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            entries: vec![Rat::zero(); dim],
        }
    }

    /// Standard basis vector e_k.
    pub fn unit(dim: usize, k: usize) -> Self {
        assert!(k < dim);
        let mut v = Self::zero(dim);
        v.entries[k] = rat_int(1);
        v
    }

    pub fn from_ints(entries: &[i64]) -> Self {
        Self {
            entries: entries.iter().map(|&n| rat_int(n)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Rat] {
        &self.entries
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rat> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// Exact scalar product.
    pub fn dot(&self, other: &RVector) -> Rat {
        assert_eq!(self.dim(), other.dim(), "dot: dimension mismatch");
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a * b)
            .sum()
    }

    /// Squared Euclidean norm; stays rational.
    pub fn norm_sq(&self) -> Rat {
        self.dot(self)
    }

    pub fn scale(&self, c: &Rat) -> RVector {
        RVector::new(self.entries.iter().map(|e| e * c).collect())
    }

    /// Concatenation, used when assembling block systems.
    pub fn concat(&self, other: &RVector) -> RVector {
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        RVector::new(entries)
    }
}

impl Index<usize> for RVector {
    type Output = Rat;
    fn index(&self, i: usize) -> &Rat {
        &self.entries[i]
    }
}

impl Add for &RVector {
    type Output = RVector;
    fn add(self, rhs: &RVector) -> RVector {
        assert_eq!(self.dim(), rhs.dim());
        RVector::new(
            self.entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl Sub for &RVector {
    type Output = RVector;
    fn sub(self, rhs: &RVector) -> RVector {
        assert_eq!(self.dim(), rhs.dim());
        RVector::new(
            self.entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }
}

impl Neg for &RVector {
    type Output = RVector;
    fn neg(self) -> RVector {
        RVector::new(self.entries.iter().map(|e| -e).collect())
    }
}

impl Mul<&RVector> for &Rat {
    type Output = RVector;
    fn mul(self, rhs: &RVector) -> RVector {
        rhs.scale(self)
    }
}

impl fmt::Debug for RVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", fmt_rat(e))?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    #[test]
    fn dot_and_norms() {
        let a = RVector::from_ints(&[1, 2, 3]);
        let b = RVector::from_ints(&[-1, 0, 2]);
        assert_eq!(a.dot(&b), rat_int(5));
        assert_eq!(a.norm_sq(), rat_int(14));
        assert_eq!((&a - &b), RVector::from_ints(&[2, 2, 1]));
        assert_eq!(a.scale(&rat(1, 2))[0], rat(1, 2));
    }
}
