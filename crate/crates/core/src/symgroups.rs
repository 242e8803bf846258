//! Linear spaces of symmetries `{S : FS = SF}` and reversing symmetries
//! `{S : FS = SF^{-1}}` of an invertible map, with membership tests and the
//! coset identity between the two.
//!
//! The returned objects are linear spaces; the symmetry group and reversing
//! set of the paper are their invertible loci, which are open and dense
//! whenever nonempty, so the reported dimension matches the manifold
//! dimension. Invertibility is enforced only in [`membership`] and
//! [`coset_check`].

use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::sylvester::{intertwiner_basis, matrix_span};

/// A linear space of `n×n` matrices with a canonical (flattened-echelon)
/// basis, so two spaces compare by comparing bases.
#[derive(Clone, Debug)]
pub struct MatrixSpace {
    n: usize,
    basis: Vec<ExactMatrix>,
}

impl MatrixSpace {
    fn new(n: usize, basis: Vec<ExactMatrix>) -> Self {
        MatrixSpace { n, basis }
    }

    /// Side length of the member matrices.
    pub fn matrix_dim(&self) -> usize {
        self.n
    }

    /// Dimension of the flattened ambient space, `n^2`.
    pub fn ambient_dim(&self) -> usize {
        self.n * self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[ExactMatrix] {
        &self.basis
    }

    pub fn contains(&self, m: &ExactMatrix) -> bool {
        let mut flat = vec![crate::scalar::Scalar::zero(); self.n * self.n];
        for i in 0..self.n {
            for j in 0..self.n {
                flat[j * self.n + i] = m[(i, j)].clone();
            }
        }
        matrix_span(&self.basis, self.n).contains_vector(&flat)
    }

    /// Exact span equality against another set of matrices.
    pub fn spans_same(&self, mats: &[ExactMatrix]) -> bool {
        matrix_span(&self.basis, self.n) == matrix_span(mats, self.n)
    }
}

/// Basis of the commutant `{S : fS = Sf}`.
pub fn symmetry_space(f: &ExactMatrix) -> Result<MatrixSpace> {
    if !f.is_invertible() {
        return Err(Error::Singular);
    }
    let basis = intertwiner_basis(&[(f, f)])?;
    Ok(MatrixSpace::new(f.rows(), basis))
}

/// Basis of `{S : fS = Sf^{-1}}`, i.e. intertwiners from `f^{-1}` to `f`.
pub fn reversing_space(f: &ExactMatrix) -> Result<MatrixSpace> {
    let finv = f.inverse().map_err(|_| Error::Singular)?;
    let basis = intertwiner_basis(&[(&finv, f)])?;
    Ok(MatrixSpace::new(f.rows(), basis))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Membership {
    Symmetry,
    Reversing,
    /// Only possible when `f^2 = I`, where the two sets coincide.
    Both,
    Neither,
}

impl std::fmt::Display for Membership {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Membership::Symmetry => "symmetry",
            Membership::Reversing => "reversing",
            Membership::Both => "both",
            Membership::Neither => "neither",
        };
        write!(f, "{s}")
    }
}

/// Exact test of both defining identities for an invertible `s`.
pub fn membership(s: &ExactMatrix, f: &ExactMatrix) -> Result<Membership> {
    if !s.is_invertible() || !f.is_invertible() {
        return Err(Error::Singular);
    }
    let sym = f * s == s * f;
    let rev = &(&(f * s) * f) == s; // f s f = s  <=>  f s = s f^{-1}
    Ok(match (sym, rev) {
        (true, true) => Membership::Both,
        (true, false) => Membership::Symmetry,
        (false, true) => Membership::Reversing,
        (false, false) => Membership::Neither,
    })
}

/// Verifies the coset identity at the linear-space level: `delta` composed
/// with a symmetry-space basis spans the reversing space, and `delta^{-1}`
/// composed with a reversing-space basis spans the symmetry space.
pub fn coset_check(f: &ExactMatrix, delta: &ExactMatrix) -> Result<bool> {
    if membership(delta, f)? == Membership::Symmetry
        || membership(delta, f)? == Membership::Neither
    {
        return Err(Error::NotReversing);
    }
    let sym = symmetry_space(f)?;
    let rev = reversing_space(f)?;
    if sym.dim() != rev.dim() {
        return Ok(false);
    }
    let delta_inv = delta.inverse()?;
    let mapped_sym: Vec<ExactMatrix> = sym.basis().iter().map(|b| delta * b).collect();
    let mapped_rev: Vec<ExactMatrix> = rev.basis().iter().map(|b| &delta_inv * b).collect();
    Ok(rev.spans_same(&mapped_sym) && sym.spans_same(&mapped_rev))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{normal_form, CaseTag};
    use crate::revcore::Family;
    use crate::scalar::Scalar;

    fn contained() -> crate::revcore::InvolutionPair {
        normal_form(CaseTag::PlanarNonabelianContained, &Scalar::zero(), 2).unwrap()
    }

    fn generic(t: i64) -> crate::revcore::InvolutionPair {
        normal_form(CaseTag::PlanarNonabelianGeneric, &Scalar::from_int(t), 2).unwrap()
    }

    #[test]
    fn contained_case_spaces_have_dimension_two() {
        let f = contained().compose();
        let sym = symmetry_space(&f).unwrap();
        let rev = reversing_space(&f).unwrap();
        assert_eq!(sym.dim(), 2);
        assert_eq!(rev.dim(), 2);
        // Lower-triangular with equal diagonal: a on diagonal, c below.
        for b in sym.basis() {
            assert!(b[(0, 1)].is_zero());
            assert_eq!(b[(0, 0)], b[(1, 1)]);
        }
        // Reversing elements have opposite diagonal entries.
        for b in rev.basis() {
            assert!(b[(0, 1)].is_zero());
            assert_eq!(b[(0, 0)], -&b[(1, 1)]);
        }
    }

    #[test]
    fn generic_case_space_shape() {
        let f = generic(3).compose();
        let sym = symmetry_space(&f).unwrap();
        assert_eq!(sym.dim(), 2);
        // Family {(a + 5b, b; -5b, a)} for t = 3: check the two relations
        // s00 - s11 = -5 * s10 * ... via a structural probe instead: both
        // defining relations hold on every basis element.
        for b in sym.basis() {
            assert_eq!(&f * b, b * &f);
            // s01 = b, s10 = -(2 + t) b
            assert_eq!(b[(1, 0)], -&(&b[(0, 1)] * &Scalar::from_int(5)));
            // s00 = a + (2 + t) b with s11 = a
            assert_eq!(
                b[(0, 0)],
                &b[(1, 1)] + &(&b[(0, 1)] * &Scalar::from_int(5))
            );
        }
        let rev = reversing_space(&f).unwrap();
        assert_eq!(rev.dim(), 2);
        for b in rev.basis() {
            assert_eq!(&(&(&f * b) * &f), b);
        }
    }

    #[test]
    fn identity_map_commutes_with_everything() {
        let id = ExactMatrix::identity(3);
        assert_eq!(symmetry_space(&id).unwrap().dim(), 9);
    }

    #[test]
    fn involutive_map_has_equal_spaces() {
        let minus = ExactMatrix::from_i64(&[&[-1, 0], &[0, -1]]);
        let sym = symmetry_space(&minus).unwrap();
        let rev = reversing_space(&minus).unwrap();
        assert_eq!(sym.dim(), 4);
        assert_eq!(rev.dim(), 4);
        assert!(sym.spans_same(rev.basis()));
    }

    #[test]
    fn reversors_are_members() {
        let pair = generic(3);
        let f = pair.compose();
        for family in [Family::Unprimed, Family::Primed] {
            for k in 1..=10 {
                let r = pair.reversor(k, family).unwrap();
                assert_eq!(membership(&r, &f).unwrap(), Membership::Reversing);
            }
        }
        assert_eq!(
            membership(&f.pow(3).unwrap(), &f).unwrap(),
            Membership::Symmetry
        );
        let d = ExactMatrix::from_i64(&[&[1, 0], &[0, 2]]);
        assert_eq!(membership(&d, &f).unwrap(), Membership::Neither);
    }

    #[test]
    fn coset_identity_examples() {
        // delta = (1 1; 0 -1) conjugates the symmetry space onto the
        // reversing space of the generic family, for every trace.
        let delta = ExactMatrix::from_i64(&[&[1, 1], &[0, -1]]);
        for t in [-3i64, -1, 0, 2, 3] {
            let f = generic(t).compose();
            assert!(coset_check(&f, &delta).unwrap(), "t = {t}");
        }
        let pair = contained();
        let f = pair.compose();
        assert!(coset_check(&f, pair.phi1()).unwrap());
        // A non-reversing delta is rejected.
        assert_eq!(
            coset_check(&f, &ExactMatrix::from_i64(&[&[1, 0], &[0, 2]])),
            Err(Error::NotReversing)
        );
        // Central f: symmetry equals reversing, identity works as delta.
        let minus = ExactMatrix::from_i64(&[&[-1, 0], &[0, -1]]);
        assert!(coset_check(&minus, &ExactMatrix::identity(2)).unwrap());
    }

    #[test]
    fn singular_inputs_are_rejected() {
        let f = contained().compose();
        let singular = ExactMatrix::from_i64(&[&[1, 1], &[1, 1]]);
        assert_eq!(membership(&singular, &f), Err(Error::Singular));
        assert!(matches!(symmetry_space(&singular), Err(Error::Singular)));
        assert!(matches!(reversing_space(&singular), Err(Error::Singular)));
    }

    #[test]
    fn closure_products() {
        let pair = generic(3);
        let f = pair.compose();
        let r1 = pair.reversor(2, Family::Unprimed).unwrap();
        let r2 = pair.reversor(5, Family::Primed).unwrap();
        // Product of two reversors is a symmetry.
        let prod = &r1 * &r2;
        assert!(matches!(
            membership(&prod, &f).unwrap(),
            Membership::Symmetry | Membership::Both
        ));
        // Symmetry times reversor is a reversor.
        let s = f.pow(2).unwrap();
        assert!(matches!(
            membership(&(&s * &r1), &f).unwrap(),
            Membership::Reversing | Membership::Both
        ));
    }
}
