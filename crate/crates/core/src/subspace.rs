//! Linear subspaces of `Q(sqrt(d))^n` held in reduced-echelon canonical form,
//! so subspace equality is a structural comparison.

use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::scalar::Scalar;

/// A subspace, represented by the nonzero rows of the reduced row-echelon
/// form of any spanning set. Two bases of the same subspace are identical.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SubspaceBasis {
    ambient_dim: usize,
    basis: Vec<Vec<Scalar>>,
}

impl SubspaceBasis {
    /// The zero subspace of `R^n`.
    pub fn trivial(ambient_dim: usize) -> Self {
        SubspaceBasis {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    /// All of `R^n`.
    pub fn full(ambient_dim: usize) -> Self {
        Self::from_spanning(
            ambient_dim,
            (0..ambient_dim)
                .map(|i| unit_vector(ambient_dim, i))
                .collect(),
        )
    }

    /// Canonicalizes an arbitrary spanning set.
    pub fn from_spanning(ambient_dim: usize, vectors: Vec<Vec<Scalar>>) -> Self {
        assert!(
            vectors.iter().all(|v| v.len() == ambient_dim),
            "spanning vector has wrong length"
        );
        if vectors.is_empty() {
            return Self::trivial(ambient_dim);
        }
        let (r, rank) = ExactMatrix::from_rows(vectors).rref();
        let basis = (0..rank).map(|i| r.row(i).to_vec()).collect();
        SubspaceBasis { ambient_dim, basis }
    }

    pub fn from_i64(ambient_dim: usize, vectors: &[&[i64]]) -> Self {
        Self::from_spanning(
            ambient_dim,
            vectors
                .iter()
                .map(|v| v.iter().map(|&x| Scalar::from_int(x)).collect())
                .collect(),
        )
    }

    /// Null space of `m`, canonical basis; `dim = cols - rank`.
    pub fn kernel(m: &ExactMatrix) -> Self {
        let n = m.cols();
        let (r, rank) = m.rref();
        // Pivot column of each pivot row.
        let mut pivots = Vec::with_capacity(rank);
        for row in 0..rank {
            let col = (0..n).find(|&c| !r[(row, c)].is_zero()).expect("pivot row");
            pivots.push(col);
        }
        let mut vectors = Vec::new();
        for free in 0..n {
            if pivots.contains(&free) {
                continue;
            }
            let mut v = vec![Scalar::zero(); n];
            v[free] = Scalar::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -&r[(row, free)];
            }
            vectors.push(v);
        }
        Self::from_spanning(n, vectors)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn is_trivial(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        Ok(())
    }

    /// Sum `U + V`.
    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let mut vectors = self.basis.clone();
        vectors.extend(other.basis.iter().cloned());
        Ok(Self::from_spanning(self.ambient_dim, vectors))
    }

    /// Intersection `U ∩ V` by the Zassenhaus block-elimination: rows
    /// `[u | u]` and `[v | 0]` are reduced; rows whose left half vanishes
    /// carry a basis of the intersection in the right half.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let n = self.ambient_dim;
        if self.is_trivial() || other.is_trivial() {
            return Ok(Self::trivial(n));
        }
        let mut rows = Vec::with_capacity(self.dim() + other.dim());
        for u in &self.basis {
            let mut row = u.clone();
            row.extend(u.iter().cloned());
            rows.push(row);
        }
        for v in &other.basis {
            let mut row = v.clone();
            row.extend(std::iter::repeat_n(Scalar::zero(), n));
            rows.push(row);
        }
        let (r, rank) = ExactMatrix::from_rows(rows).rref();
        let mut vectors = Vec::new();
        for i in 0..rank {
            let row = r.row(i);
            if row[..n].iter().all(Scalar::is_zero) {
                vectors.push(row[n..].to_vec());
            }
        }
        Ok(Self::from_spanning(n, vectors))
    }

    /// Structural equality (canonical form makes this exact).
    pub fn equal(&self, other: &Self) -> bool {
        self == other
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ambient_dim, "vector length mismatch");
        // Reduce v against the echelon basis.
        let mut w = v.to_vec();
        for b in &self.basis {
            let lead = b.iter().position(|x| !x.is_zero()).expect("nonzero row");
            if !w[lead].is_zero() {
                let factor = w[lead].clone();
                for (wi, bi) in w.iter_mut().zip(b.iter()) {
                    let delta = &factor * bi;
                    *wi = &*wi - &delta;
                }
            }
        }
        w.iter().all(Scalar::is_zero)
    }

    pub fn contains_subspace(&self, other: &Self) -> bool {
        other.basis.iter().all(|v| self.contains_vector(v))
    }

    /// Image `m(U)`; `m` must be invertible so dimensions are preserved.
    pub fn apply(&self, m: &ExactMatrix) -> Result<Self> {
        if m.rows() != self.ambient_dim || m.cols() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: m.rows(),
            });
        }
        if !m.is_invertible() {
            return Err(Error::Singular);
        }
        let vectors = self.basis.iter().map(|v| m.apply_vec(v)).collect();
        Ok(Self::from_spanning(self.ambient_dim, vectors))
    }
}

pub fn unit_vector(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    v[i] = Scalar::one();
    v
}

impl std::fmt::Debug for SubspaceBasis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rows: Vec<String> = self
            .basis
            .iter()
            .map(|v| {
                let parts: Vec<String> = v.iter().map(|s| s.to_string()).collect();
                format!("({})", parts.join(", "))
            })
            .collect();
        write!(f, "span{{{}}} in R^{}", rows.join(", "), self.ambient_dim)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_identity_is_trivial() {
        let k = SubspaceBasis::kernel(&ExactMatrix::identity(2));
        assert!(k.is_trivial());
    }

    #[test]
    fn kernel_of_shear_minus_identity() {
        // [[-2,0],[1,0]] has kernel spanned by (0,1).
        let m = ExactMatrix::from_i64(&[&[-2, 0], &[1, 0]]);
        let k = SubspaceBasis::kernel(&m);
        assert_eq!(k, SubspaceBasis::from_i64(2, &[&[0, 1]]));
    }

    #[test]
    fn kernel_of_zero_is_everything() {
        let k = SubspaceBasis::kernel(&ExactMatrix::zeros(2, 2));
        assert!(k.is_full());
    }

    #[test]
    fn axes_intersect_trivially_and_sum_to_plane() {
        let x = SubspaceBasis::from_i64(2, &[&[1, 0]]);
        let y = SubspaceBasis::from_i64(2, &[&[0, 1]]);
        assert!(x.intersect(&y).unwrap().is_trivial());
        assert!(x.sum(&y).unwrap().is_full());
    }

    #[test]
    fn containment_intersection() {
        let plane = SubspaceBasis::from_i64(2, &[&[1, 0], &[0, 1]]);
        let diag = SubspaceBasis::from_i64(2, &[&[1, 1]]);
        assert_eq!(plane.intersect(&diag).unwrap(), diag);
    }

    #[test]
    fn three_dim_plane_intersection() {
        let u = SubspaceBasis::from_i64(3, &[&[1, 0, 0], &[0, 1, 0]]);
        let v = SubspaceBasis::from_i64(3, &[&[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(
            u.intersect(&v).unwrap(),
            SubspaceBasis::from_i64(3, &[&[0, 1, 0]])
        );
    }

    #[test]
    fn canonical_bases_from_different_spanning_sets() {
        let a = SubspaceBasis::from_i64(3, &[&[1, 1, 0], &[0, 0, 1]]);
        let b = SubspaceBasis::from_i64(3, &[&[2, 2, 3], &[1, 1, -1], &[3, 3, 2]]);
        assert_eq!(a, b);
    }

    #[test]
    fn apply_identity_is_identity() {
        let u = SubspaceBasis::from_i64(2, &[&[1, 1]]);
        assert_eq!(u.apply(&ExactMatrix::identity(2)).unwrap(), u);
    }

    #[test]
    fn apply_requires_invertible() {
        let u = SubspaceBasis::from_i64(2, &[&[1, 1]]);
        let singular = ExactMatrix::from_i64(&[&[1, 1], &[1, 1]]);
        assert_eq!(u.apply(&singular), Err(Error::Singular));
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let u = SubspaceBasis::from_i64(2, &[&[1, 0]]);
        let v = SubspaceBasis::from_i64(3, &[&[1, 0, 0]]);
        assert!(matches!(
            u.intersect(&v),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn grassmann_identity_small_case() {
        let u = SubspaceBasis::from_i64(4, &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0]]);
        let v = SubspaceBasis::from_i64(4, &[&[0, 0, 1, 1], &[0, 1, 1, 0]]);
        let s = u.sum(&v).unwrap();
        let i = u.intersect(&v).unwrap();
        assert_eq!(s.dim() + i.dim(), u.dim() + v.dim());
    }
}
