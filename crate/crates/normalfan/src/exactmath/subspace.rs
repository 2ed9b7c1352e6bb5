use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::RMatrix;
use super::rational::Rat;
use super::vector::RVector;

/// Basis of a linear subspace of R^d. Stored canonically: the vectors are the
/// nonzero rows of the reduced row echelon form of any spanning set, rescaled
/// to integer entries with content 1 and positive leading sign. Two bases of
/// the same subspace therefore compare equal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SubspaceBasis {
    ambient_dim: usize,
    vectors: Vec<RVector>,
}

/// Rescale to integer entries with content 1 and positive first nonzero entry.
/// Zero vectors come back unchanged.
pub fn canonical_integer_vector(v: &RVector) -> RVector {
    let mut lcm = BigInt::one();
    for e in v.iter() {
        lcm = lcm.lcm(e.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|e| e.numer() * (&lcm / e.denom())).collect();
    let mut content = BigInt::zero();
    for n in &ints {
        content = content.gcd(n);
    }
    if content.is_zero() {
        return v.clone();
    }
    let leading_neg = ints.iter().find(|n| !n.is_zero()).is_some_and(Signed::is_negative);
    if leading_neg {
        content = -content;
    }
    RVector::new(
        ints.into_iter()
            .map(|n| Rat::from_integer(n / &content))
            .collect(),
    )
}

impl SubspaceBasis {
    /// Canonical basis of the span of `spanning`.
    pub fn new(ambient_dim: usize, spanning: Vec<RVector>) -> Self {
        for v in &spanning {
            assert_eq!(v.dim(), ambient_dim, "basis vector dimension mismatch");
        }
        let nonzero: Vec<RVector> = spanning.into_iter().filter(|v| !v.is_zero()).collect();
        if nonzero.is_empty() {
            return Self {
                ambient_dim,
                vectors: vec![],
            };
        }
        // rref rows of the stacked matrix are a canonical independent set
        let mat = RMatrix::from_rows(ambient_dim, nonzero);
        let mut vectors = Vec::new();
        let reduced = rref_rows(&mat);
        for row in reduced {
            if !row.is_zero() {
                vectors.push(canonical_integer_vector(&row));
            }
        }
        Self {
            ambient_dim,
            vectors,
        }
    }

    pub fn empty(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            vectors: vec![],
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self::new(
            ambient_dim,
            (0..ambient_dim)
                .map(|k| RVector::unit(ambient_dim, k))
                .collect(),
        )
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[RVector] {
        &self.vectors
    }

    pub fn as_matrix(&self) -> RMatrix {
        RMatrix::from_rows(self.ambient_dim, self.vectors.clone())
    }

    pub fn contains(&self, v: &RVector) -> bool {
        if v.is_zero() {
            return true;
        }
        let mut rows = self.vectors.clone();
        rows.push(v.clone());
        RMatrix::from_rows(self.ambient_dim, rows).rank() == self.dim()
    }

    /// Basis of the orthogonal complement: kernel of the stacked matrix.
    pub fn orth_complement(&self) -> SubspaceBasis {
        if self.vectors.is_empty() {
            return Self::full(self.ambient_dim);
        }
        self.as_matrix().kernel_basis()
    }

    /// Intersection of two subspaces: kernel of the stacked complements.
    pub fn intersect(&self, other: &SubspaceBasis) -> SubspaceBasis {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        let mut rows = self.orth_complement().vectors.clone();
        rows.extend(other.orth_complement().vectors.iter().cloned());
        if rows.is_empty() {
            return Self::full(self.ambient_dim);
        }
        RMatrix::from_rows(self.ambient_dim, rows).kernel_basis()
    }

    pub fn sum(&self, other: &SubspaceBasis) -> SubspaceBasis {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        let mut rows = self.vectors.clone();
        rows.extend(other.vectors.iter().cloned());
        Self::new(self.ambient_dim, rows)
    }
}

fn rref_rows(mat: &RMatrix) -> Vec<RVector> {
    let mut rows: Vec<Vec<Rat>> = mat.row_iter().map(|r| r.entries().to_vec()).collect();
    RMatrix::rref(&mut rows);
    rows.into_iter().map(RVector::new).collect()
}
