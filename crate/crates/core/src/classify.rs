//! Classification of transversal linear involution pairs up to simultaneous
//! linear conjugacy: the three planar cases and the five codimension-one
//! cases in dimension three and higher, with an explicit conjugacy witness.

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::revcore::{antipodal_subspace, fixed_subspace, InvolutionPair};
use crate::scalar::Scalar;
use crate::sylvester::{intertwiner_basis, invertible_in_span};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum CaseTag {
    /// Planar, the involutions commute.
    PlanarAbelian,
    /// Planar, non-commuting, antipodal line of the second involution equals
    /// the fixed line of the first.
    PlanarNonabelianContained,
    /// Planar, non-commuting, generic; classified by the trace invariant.
    PlanarNonabelianGeneric,
    /// n >= 3 suspensions of the planar cases, plus the irreducible
    /// nilpotent-of-index-3 case E.
    GenA,
    GenB,
    GenC,
    GenD,
    GenE,
}

impl CaseTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            CaseTag::PlanarAbelian => "planar_abelian",
            CaseTag::PlanarNonabelianContained => "planar_nonabelian_contained",
            CaseTag::PlanarNonabelianGeneric => "planar_nonabelian_generic",
            CaseTag::GenA => "gen_a",
            CaseTag::GenB => "gen_b",
            CaseTag::GenC => "gen_c",
            CaseTag::GenD => "gen_d",
            CaseTag::GenE => "gen_e",
        }
    }
}

impl std::fmt::Display for CaseTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.as_str())
    }
}

/// Exact eigen-data of the generic planar map, available when the trace
/// invariant is rational and not ±2. The basis `beta` diagonalizes (real
/// eigenvalue pair) or rotates (complex eigenvalue pair) the map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EigenFrame {
    /// |t| > 2: real reciprocal eigenvalues.
    Hyperbolic {
        lambda_plus: Scalar,
        lambda_minus: Scalar,
        beta: [Vec<Scalar>; 2],
    },
    /// |t| < 2: rotation by the angle with cosine t/2 in the basis beta.
    Elliptic {
        theta_cos: Scalar,
        beta: [Vec<Scalar>; 2],
    },
}

impl EigenFrame {
    /// Change-of-basis matrix whose columns are the beta vectors.
    pub fn basis_matrix(&self) -> ExactMatrix {
        let beta = match self {
            EigenFrame::Hyperbolic { beta, .. } => beta,
            EigenFrame::Elliptic { beta, .. } => beta,
        };
        ExactMatrix::from_fn(2, 2, |r, c| beta[c][r].clone())
    }

    /// Builds the frame for a rational trace invariant with |t| != 2.
    pub fn for_trace(t: &Scalar) -> Result<Option<EigenFrame>> {
        let Some(tr) = t.as_rational() else {
            return Ok(None);
        };
        let two = Scalar::from_int(2);
        if t.abs() == two {
            return Ok(None);
        }
        let four = BigRational::from_integer(4.into());
        let disc = tr * tr - &four;
        if disc > BigRational::zero() {
            // lambda_pm = (t ± sqrt(t^2 - 4)) / 2, with lambda_+ lambda_- = 1
            let root = Scalar::sqrt_rational(&disc)?;
            let half = Scalar::from_ratio(1, 2);
            let lambda_plus = &(t + &root) * &half;
            let lambda_minus = &(t - &root) * &half;
            let line = |l: &Scalar| vec![Scalar::one(), -&(&Scalar::one() + l)];
            Ok(Some(EigenFrame::Hyperbolic {
                beta: [line(&lambda_plus), line(&lambda_minus)],
                lambda_plus,
                lambda_minus,
            }))
        } else {
            // Complex eigenvalues e^{±iθ}; real and imaginary eigenvector
            // parts R = (1, -t/2 - 1), I = (0, -sqrt(4 - t^2)/2).
            let root = Scalar::sqrt_rational(&(-disc))?;
            let half = Scalar::from_ratio(1, 2);
            let theta_cos = t * &half;
            let r_vec = vec![Scalar::one(), -&(&theta_cos + &Scalar::one())];
            let i_vec = vec![Scalar::zero(), -&(&root * &half)];
            Ok(Some(EigenFrame::Elliptic {
                theta_cos,
                beta: [r_vec, i_vec],
            }))
        }
    }
}

/// Result of classifying a pair: the case, the trace invariant of the
/// composed map, the normal-form pair, and an exact witness `h` with
/// `h · psi_i · h^{-1} = phi_i` (input to normal form).
#[derive(Clone, Debug)]
pub struct ClassificationResult {
    pub case_tag: CaseTag,
    pub trace_t: Scalar,
    pub normal_form: InvolutionPair,
    pub conjugacy: ExactMatrix,
    /// `(core_dim, trivial_dim)` when the pair splits as a suspension.
    pub suspension_split: Option<(usize, usize)>,
    pub eigen_frame: Option<EigenFrame>,
}

impl ClassificationResult {
    /// Exact check of the witness: invertible and conjugating both
    /// involutions onto the normal form.
    pub fn verify_witness(&self, input: &InvolutionPair) -> bool {
        let Ok(hinv) = self.conjugacy.inverse() else {
            return false;
        };
        let conj = |m: &ExactMatrix| &(&self.conjugacy * m) * &hinv;
        conj(input.phi1()) == *self.normal_form.phi1()
            && conj(input.phi2()) == *self.normal_form.phi2()
    }
}

/// Normal-form pair for a case. `t` is the planar trace invariant and is
/// only consulted by the generic planar case and its suspensions; `dim` is
/// the ambient dimension.
pub fn normal_form(tag: CaseTag, t: &Scalar, dim: usize) -> Result<InvolutionPair> {
    let planar = |phi1: ExactMatrix, phi2: ExactMatrix| InvolutionPair::new(phi1, phi2);
    match tag {
        CaseTag::PlanarAbelian => {
            require_dim(tag, dim, 2)?;
            planar(
                ExactMatrix::from_i64(&[&[-1, 0], &[0, 1]]),
                ExactMatrix::from_i64(&[&[1, 0], &[0, -1]]),
            )
        }
        CaseTag::PlanarNonabelianContained => {
            require_dim(tag, dim, 2)?;
            planar(
                // (x, y) -> (-x, x + y)
                ExactMatrix::from_i64(&[&[-1, 0], &[1, 1]]),
                ExactMatrix::from_i64(&[&[1, 0], &[0, -1]]),
            )
        }
        CaseTag::PlanarNonabelianGeneric => {
            require_dim(tag, dim, 2)?;
            // (x, y) -> (-x, y + (2 + t) x) and (x, y) -> (x + y, -y)
            let c = &Scalar::from_int(2) + t;
            let phi1 = ExactMatrix::from_rows(vec![
                vec![Scalar::from_int(-1), Scalar::zero()],
                vec![c, Scalar::one()],
            ]);
            let phi2 = ExactMatrix::from_i64(&[&[1, 1], &[0, -1]]);
            planar(phi1, phi2)
        }
        CaseTag::GenA | CaseTag::GenB | CaseTag::GenC | CaseTag::GenD => {
            if dim < 3 {
                return Err(Error::UnsupportedDimension {
                    dim,
                    context: "suspended normal forms need dimension at least 3",
                });
            }
            let core_tag = match tag {
                CaseTag::GenA => CaseTag::PlanarAbelian,
                CaseTag::GenB => CaseTag::PlanarNonabelianContained,
                _ => CaseTag::PlanarNonabelianGeneric,
            };
            let t = if tag == CaseTag::GenD {
                Scalar::from_int(2)
            } else {
                t.clone()
            };
            Ok(normal_form(core_tag, &t, 2)?.suspend(dim - 2))
        }
        CaseTag::GenE => {
            if dim < 3 {
                return Err(Error::UnsupportedDimension {
                    dim,
                    context: "the nilpotent-of-index-3 normal form needs dimension at least 3",
                });
            }
            // phi1: (x1, ..., xn) -> (-x1, 4 x1 + x2, x3, ..., xn)
            let mut phi1 = ExactMatrix::identity(dim);
            phi1[(0, 0)] = Scalar::from_int(-1);
            phi1[(1, 0)] = Scalar::from_int(4);
            // phi2: (x1, ..., xn) -> (x1 + x2, -x2, x2 + x3, x4, ..., xn)
            let mut phi2 = ExactMatrix::identity(dim);
            phi2[(0, 1)] = Scalar::one();
            phi2[(1, 1)] = Scalar::from_int(-1);
            phi2[(2, 1)] = Scalar::one();
            InvolutionPair::new(phi1, phi2)
        }
    }
}

fn require_dim(tag: CaseTag, dim: usize, expected: usize) -> Result<()> {
    if dim != expected {
        return Err(Error::UnsupportedDimension {
            dim,
            context: match tag {
                CaseTag::PlanarAbelian
                | CaseTag::PlanarNonabelianContained
                | CaseTag::PlanarNonabelianGeneric => "planar normal forms live in dimension 2",
                _ => "unexpected dimension",
            },
        });
    }
    Ok(())
}

/// A conjugating `h` with `h · source_i · h^{-1} = target_i` for both
/// involutions, or `None` when no invertible solution exists (decided
/// exactly when the solution space is small enough to grid-test, otherwise
/// after a bounded escalating search).
pub fn find_conjugacy(
    source: &InvolutionPair,
    target: &InvolutionPair,
) -> Result<Option<ExactMatrix>> {
    if source.dim() != target.dim() {
        return Err(Error::DimensionMismatch {
            expected: source.dim(),
            found: target.dim(),
        });
    }
    let basis = intertwiner_basis(&[
        (source.phi1(), target.phi1()),
        (source.phi2(), target.phi2()),
    ])?;
    let Some(h) = invertible_in_span(&basis) else {
        return Ok(None);
    };
    debug_assert!({
        let hinv = h.inverse().unwrap();
        &(&(&h * source.phi1()) * &hinv) == target.phi1()
            && &(&(&h * source.phi2()) * &hinv) == target.phi2()
    });
    Ok(Some(h))
}

fn witness_to(input: &InvolutionPair, nf: &InvolutionPair) -> Result<ExactMatrix> {
    find_conjugacy(input, nf)?.ok_or(Error::WitnessSearchFailed {
        context: "no invertible conjugacy onto the normal form was found",
    })
}

/// Classifies a transversal planar pair into the abelian / contained /
/// generic trichotomy and produces the normal form with a verified witness.
pub fn classify_planar(pair: &InvolutionPair) -> Result<ClassificationResult> {
    if pair.dim() != 2 {
        return Err(Error::UnsupportedDimension {
            dim: pair.dim(),
            context: "planar classification requires dimension 2",
        });
    }
    let id = ExactMatrix::identity(2);
    for phi in [pair.phi1(), pair.phi2()] {
        if *phi == id || *phi == -&id {
            return Err(Error::DegenerateInvolution);
        }
    }
    if !pair.is_transversal() {
        return Err(Error::NotTransversal);
    }

    let abelian = pair.phi1() * pair.phi2() == pair.phi2() * pair.phi1();
    let trace_t = pair.compose().trace();
    let case_tag = if abelian {
        CaseTag::PlanarAbelian
    } else if antipodal_subspace(pair.phi2()) == fixed_subspace(pair.phi1()) {
        CaseTag::PlanarNonabelianContained
    } else {
        CaseTag::PlanarNonabelianGeneric
    };
    let nf = normal_form(case_tag, &trace_t, 2)?;
    let conjugacy = witness_to(pair, &nf)?;
    let eigen_frame = if case_tag == CaseTag::PlanarNonabelianGeneric {
        EigenFrame::for_trace(&trace_t)?
    } else {
        None
    };
    Ok(ClassificationResult {
        case_tag,
        trace_t,
        normal_form: nf,
        conjugacy,
        suspension_split: None,
        eigen_frame,
    })
}

/// Classifies a transversal pair in dimension at least 3 whose fixed
/// subspaces are hyperplanes, into the five suspended/irreducible cases.
pub fn classify_general(pair: &InvolutionPair) -> Result<ClassificationResult> {
    let n = pair.dim();
    if n < 3 {
        return Err(Error::UnsupportedDimension {
            dim: n,
            context: "general classification requires dimension at least 3",
        });
    }
    for phi in [pair.phi1(), pair.phi2()] {
        if fixed_subspace(phi).dim() != n - 1 {
            return Err(Error::UnsupportedCodimension);
        }
    }
    if !pair.is_transversal() {
        return Err(Error::NotTransversal);
    }

    let f = pair.compose();
    let trace_t = f.trace();
    let trace_is_n = trace_t == Scalar::from_int(n as i64);
    let abelian = pair.phi1() * pair.phi2() == pair.phi2() * pair.phi1();

    let case_tag = if abelian {
        CaseTag::GenA
    } else if !trace_is_n {
        if fixed_subspace(pair.phi1()).contains_subspace(&antipodal_subspace(pair.phi2())) {
            CaseTag::GenB
        } else {
            CaseTag::GenC
        }
    } else if antipodal_subspace(pair.phi1()) == antipodal_subspace(pair.phi2()) {
        CaseTag::GenD
    } else {
        CaseTag::GenE
    };

    // Suspensions compose the planar trace with n - 2 trivial directions.
    let planar_trace = &trace_t - &Scalar::from_int(n as i64 - 2);
    let nf = normal_form(case_tag, &planar_trace, n)?;
    let conjugacy = witness_to(pair, &nf)?;
    let suspension_split = Some(match case_tag {
        CaseTag::GenE => (3, n - 3),
        _ => (2, n - 2),
    });
    Ok(ClassificationResult {
        case_tag,
        trace_t,
        normal_form: nf,
        conjugacy,
        suspension_split,
        eigen_frame: None,
    })
}

/// Dimension dispatch.
pub fn classify(pair: &InvolutionPair) -> Result<ClassificationResult> {
    if pair.dim() == 2 {
        classify_planar(pair)
    } else {
        classify_general(pair)
    }
}

/// When the pair is simultaneously conjugate to a suspension, the core pair
/// and the number of trivial directions; `None` outside the classified
/// codimension-one regime.
pub fn suspension_split(pair: &InvolutionPair) -> Result<Option<(InvolutionPair, usize)>> {
    if pair.dim() < 3 {
        return Err(Error::UnsupportedDimension {
            dim: pair.dim(),
            context: "suspension splitting requires dimension at least 3",
        });
    }
    match classify_general(pair) {
        Ok(res) => {
            let (core_dim, trivial_dim) = res.suspension_split.expect("general result");
            let core = match res.case_tag {
                CaseTag::GenE => normal_form(CaseTag::GenE, &Scalar::zero(), 3)?,
                tag => {
                    let planar_trace = &res.trace_t - &Scalar::from_int(pair.dim() as i64 - 2);
                    let core_tag = match tag {
                        CaseTag::GenA => CaseTag::PlanarAbelian,
                        CaseTag::GenB => CaseTag::PlanarNonabelianContained,
                        _ => CaseTag::PlanarNonabelianGeneric,
                    };
                    normal_form(core_tag, &planar_trace, 2)?
                }
            };
            debug_assert_eq!(core.dim(), core_dim);
            Ok(Some((core, trivial_dim)))
        }
        Err(Error::UnsupportedCodimension)
        | Err(Error::NotTransversal)
        | Err(Error::DegenerateInvolution) => Ok(None),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn planar(tag: CaseTag, t: i64) -> InvolutionPair {
        normal_form(tag, &Scalar::from_int(t), 2).unwrap()
    }

    #[test]
    fn abelian_normal_form_classifies() {
        let pair = planar(CaseTag::PlanarAbelian, 0);
        let res = classify_planar(&pair).unwrap();
        assert_eq!(res.case_tag, CaseTag::PlanarAbelian);
        assert_eq!(res.trace_t, Scalar::from_int(-2));
        assert!(res.verify_witness(&pair));
    }

    #[test]
    fn conjugated_contained_pair_recovers_case_and_witness() {
        let pair = planar(CaseTag::PlanarNonabelianContained, 0);
        let h0 = ExactMatrix::from_i64(&[&[1, 1], &[0, 1]]);
        let moved = pair.conjugate_by(&h0).unwrap();
        let res = classify_planar(&moved).unwrap();
        assert_eq!(res.case_tag, CaseTag::PlanarNonabelianContained);
        assert!(res.verify_witness(&moved));
    }

    #[test]
    fn generic_case_keeps_trace() {
        let pair = planar(CaseTag::PlanarNonabelianGeneric, 3);
        let res = classify_planar(&pair).unwrap();
        assert_eq!(res.case_tag, CaseTag::PlanarNonabelianGeneric);
        assert_eq!(res.trace_t, Scalar::from_int(3));
        assert!(res.verify_witness(&pair));
        match res.eigen_frame.unwrap() {
            EigenFrame::Hyperbolic {
                lambda_plus,
                lambda_minus,
                ..
            } => {
                assert_eq!(&lambda_plus * &lambda_minus, Scalar::one());
                assert_eq!(&lambda_plus + &lambda_minus, Scalar::from_int(3));
            }
            other => panic!("expected hyperbolic frame, got {other:?}"),
        }
    }

    #[test]
    fn elliptic_frame_for_small_trace() {
        let pair = planar(CaseTag::PlanarNonabelianGeneric, 1);
        let res = classify_planar(&pair).unwrap();
        match res.eigen_frame.unwrap() {
            EigenFrame::Elliptic { theta_cos, .. } => {
                assert_eq!(theta_cos, Scalar::from_ratio(1, 2));
            }
            other => panic!("expected elliptic frame, got {other:?}"),
        }
    }

    #[test]
    fn degenerate_involutions_rejected() {
        let id = ExactMatrix::identity(2);
        let refl = ExactMatrix::from_i64(&[&[1, 0], &[0, -1]]);
        let pair = InvolutionPair::new(id, refl).unwrap();
        assert!(matches!(
            classify_planar(&pair),
            Err(Error::DegenerateInvolution)
        ));
    }

    #[test]
    fn non_transversal_rejected() {
        let phi = ExactMatrix::from_i64(&[&[1, 0], &[0, -1]]);
        let pair = InvolutionPair::new(phi.clone(), phi).unwrap();
        assert!(matches!(
            classify_planar(&pair),
            Err(Error::NotTransversal) | Err(Error::DegenerateInvolution)
        ));
    }

    #[test]
    fn same_pair_has_a_witness() {
        let pair = planar(CaseTag::PlanarNonabelianContained, 0);
        let h = find_conjugacy(&pair, &pair).unwrap().unwrap();
        assert!(h.is_invertible());
        // The identity itself lies in the solution space.
        let id = ExactMatrix::identity(2);
        assert_eq!(&id * pair.phi1(), pair.phi1() * &id);
    }

    #[test]
    fn commuting_and_noncommuting_pairs_are_not_conjugate() {
        let a = planar(CaseTag::PlanarAbelian, 0);
        let b = planar(CaseTag::PlanarNonabelianContained, 0);
        assert_eq!(find_conjugacy(&a, &b).unwrap(), None);
    }

    #[test]
    fn suspension_of_contained_classifies_as_gen_b() {
        let core = planar(CaseTag::PlanarNonabelianContained, 0);
        let pair = core.suspend(1);
        let h0 = ExactMatrix::from_i64(&[&[1, 0, 1], &[0, 1, 0], &[1, 0, 2]]);
        let moved = pair.conjugate_by(&h0).unwrap();
        let res = classify_general(&moved).unwrap();
        assert_eq!(res.case_tag, CaseTag::GenB);
        assert!(res.verify_witness(&moved));
        assert_eq!(res.suspension_split, Some((2, 1)));
    }

    #[test]
    fn nilpotent_cubed_case_in_three_dims() {
        let pair = normal_form(CaseTag::GenE, &Scalar::zero(), 3).unwrap();
        let res = classify_general(&pair).unwrap();
        assert_eq!(res.case_tag, CaseTag::GenE);
        assert_eq!(res.trace_t, Scalar::from_int(3));
        assert!(res.verify_witness(&pair));
    }

    #[test]
    fn suspended_trace_cases_split_c_and_d() {
        let c = planar(CaseTag::PlanarNonabelianGeneric, 3).suspend(1);
        assert_eq!(classify_general(&c).unwrap().case_tag, CaseTag::GenC);
        let d = planar(CaseTag::PlanarNonabelianGeneric, 2).suspend(1);
        assert_eq!(classify_general(&d).unwrap().case_tag, CaseTag::GenD);
    }

    #[test]
    fn abelian_suspension_is_gen_a() {
        let pair = planar(CaseTag::PlanarAbelian, 0).suspend(2);
        let res = classify_general(&pair).unwrap();
        assert_eq!(res.case_tag, CaseTag::GenA);
        assert_eq!(res.suspension_split, Some((2, 2)));
    }

    #[test]
    fn suspension_split_finds_cores() {
        let five = normal_form(CaseTag::GenE, &Scalar::zero(), 5).unwrap();
        let (core, trivial) = suspension_split(&five).unwrap().unwrap();
        assert_eq!(core.dim(), 3);
        assert_eq!(trivial, 2);

        let a3 = planar(CaseTag::PlanarAbelian, 0).suspend(1);
        let (core, trivial) = suspension_split(&a3).unwrap().unwrap();
        assert_eq!(core.dim(), 2);
        assert_eq!(trivial, 1);

        let planar_pair = planar(CaseTag::PlanarNonabelianContained, 0);
        assert!(suspension_split(&planar_pair).is_err());
    }

    #[test]
    fn higher_codimension_is_out_of_scope() {
        // Transversal pair whose fixed subspaces are planes in R^4.
        let a = ExactMatrix::from_i64(&[
            &[-1, 0, 0, 0],
            &[0, -1, 0, 0],
            &[0, 0, 1, 0],
            &[0, 0, 0, 1],
        ]);
        let b = ExactMatrix::from_i64(&[
            &[1, 0, 0, 0],
            &[0, 1, 0, 0],
            &[0, 0, -1, 0],
            &[0, 0, 0, -1],
        ]);
        let pair = InvolutionPair::new(a, b).unwrap();
        assert!(pair.is_transversal());
        assert!(matches!(
            classify_general(&pair),
            Err(Error::UnsupportedCodimension)
        ));
        assert_eq!(suspension_split(&pair), Ok(None));
    }

    #[test]
    fn classification_trace_matches_normal_form_trace() {
        for t in [-3i64, -2, -1, 0, 1, 2, 3] {
            let pair = planar(CaseTag::PlanarNonabelianGeneric, t);
            let res = classify_planar(&pair).unwrap();
            assert_eq!(res.trace_t, res.normal_form.compose().trace());
        }
    }
}
