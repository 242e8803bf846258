//! Orbits, periodicity certificates from fixed-subspace intersections,
//! rotation-order detection, accumulation directions of fixed lines, and the
//! sector interchange of planar arrangements.

use std::collections::BTreeMap;

use crate::classify::{classify, CaseTag, EigenFrame};
use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::revcore::{is_reversible, Family, InvolutionPair, ReversorRef};
use crate::scalar::Scalar;
use crate::subspace::SubspaceBasis;

/// `[x, F x, ..., F^steps x]`; negative steps walk the inverse.
pub fn orbit(f: &ExactMatrix, x: &[Scalar], steps: i64) -> Result<Vec<Vec<Scalar>>> {
    if !f.is_square() || f.cols() != x.len() {
        return Err(Error::DimensionMismatch {
            expected: f.cols(),
            found: x.len(),
        });
    }
    let step_map = if steps < 0 { f.inverse()? } else { f.clone() };
    if steps >= 0 && !f.is_invertible() {
        return Err(Error::Singular);
    }
    let mut points = Vec::with_capacity(steps.unsigned_abs() as usize + 1);
    let mut current = x.to_vec();
    points.push(current.clone());
    for _ in 0..steps.unsigned_abs() {
        current = step_map.apply_vec(&current);
        points.push(current.clone());
    }
    Ok(points)
}

/// Verifies `phi(F^j x) = F^{-j}(phi x)` for `0 <= j <= steps`: a reversing
/// symmetry maps forward orbits onto backward orbits in order.
pub fn reversed_orbit_check(
    f: &ExactMatrix,
    phi: &ExactMatrix,
    x: &[Scalar],
    steps: usize,
) -> Result<bool> {
    if !is_reversible(f, phi)? {
        return Err(Error::NotReversing);
    }
    let forward = orbit(f, x, steps as i64)?;
    let backward = orbit(f, &phi.apply_vec(x), -(steps as i64))?;
    Ok(forward
        .iter()
        .zip(backward.iter())
        .all(|(fwd, bwd)| phi.apply_vec(fwd) == *bwd))
}

/// Which intersection family certifies the period.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Flavor {
    /// `Fix(phi_k) ∩ Fix(phi_l)` with period divisor `l - k`.
    A,
    /// `Fix(phi_k') ∩ Fix(phi_l')` with period divisor `l - k`.
    B,
    /// `Fix(phi_k') ∩ Fix(phi_l)` with period divisor `k + l - 2`.
    C,
}

impl std::fmt::Display for Flavor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Flavor::A => write!(f, "A"),
            Flavor::B => write!(f, "B"),
            Flavor::C => write!(f, "C"),
        }
    }
}

/// A point with an exactly verified period divisor.
#[derive(Clone, Debug)]
pub struct PeriodCertificate {
    pub point: Vec<Scalar>,
    pub indices: (usize, usize),
    pub flavor: Flavor,
    pub period_divisor: usize,
}

/// Reversors of both families for `k = 1..=k_max`, by one running product
/// per family. Index 0 holds `k = 1`.
fn reversor_tables(
    pair: &InvolutionPair,
    k_max: usize,
) -> Result<(Vec<ExactMatrix>, Vec<ExactMatrix>)> {
    let f = pair.compose();
    let mut unprimed = Vec::with_capacity(k_max);
    let mut primed = Vec::with_capacity(k_max);
    let mut power = f.inverse()?; // F^{k-2} at k = 1
    for _ in 1..=k_max {
        unprimed.push(pair.phi2() * &power);
        primed.push(&(&f * &power) * pair.phi1()); // F^{k-1} · phi1
        power = &power * &f;
    }
    Ok((unprimed, primed))
}

/// Enumerates all pairwise fixed-subspace intersections within `k_max` for
/// the three flavors and emits one verified certificate per basis vector of
/// each nontrivial intersection, ordered by `(flavor, k, l)`.
///
/// Each certificate is checked by exact iteration before being returned, and
/// the converse containment (periodic points of the divisor inside the first
/// fixed subspace lie in the second) is verified on the whole intersection
/// subspace.
pub fn periodic_certificates(
    pair: &InvolutionPair,
    k_max: usize,
) -> Result<Vec<PeriodCertificate>> {
    if k_max < 2 {
        return Err(Error::IndexOutOfRange {
            context: "certificate enumeration needs k_max >= 2",
        });
    }
    let f = pair.compose();
    let (unprimed, primed) = reversor_tables(pair, k_max)?;
    let fix = |table: &[ExactMatrix], k: usize| -> SubspaceBasis {
        crate::revcore::fixed_subspace(&table[k - 1])
    };
    let fixes_unprimed: Vec<SubspaceBasis> =
        (1..=k_max).map(|k| fix(&unprimed, k)).collect();
    let fixes_primed: Vec<SubspaceBasis> = (1..=k_max).map(|k| fix(&primed, k)).collect();

    let mut power_cache: BTreeMap<usize, ExactMatrix> = BTreeMap::new();
    let mut power_of = |d: usize| -> ExactMatrix {
        power_cache
            .entry(d)
            .or_insert_with(|| f.pow(d as i64).expect("square matrix power"))
            .clone()
    };

    let mut certificates = Vec::new();
    let mut handle = |flavor: Flavor,
                      k: usize,
                      l: usize,
                      first: &SubspaceBasis,
                      second: &SubspaceBasis,
                      divisor: usize,
                      certs: &mut Vec<PeriodCertificate>|
     -> Result<()> {
        let meet = first.intersect(second)?;
        if meet.is_trivial() {
            return Ok(());
        }
        let fd = power_of(divisor);
        for v in meet.basis() {
            assert_eq!(
                fd.apply_vec(v),
                v.to_vec(),
                "certificate failed exact iteration ({flavor}, k={k}, l={l})"
            );
            certs.push(PeriodCertificate {
                point: v.clone(),
                indices: (k, l),
                flavor,
                period_divisor: divisor,
            });
        }
        // Converse: points of the first subspace that F^divisor fixes lie in
        // the second subspace.
        let id = ExactMatrix::identity(fd.rows());
        let periodic = SubspaceBasis::kernel(&(&fd - &id));
        let inside = first.intersect(&periodic)?;
        assert!(
            second.contains_subspace(&inside),
            "converse containment failed ({flavor}, k={k}, l={l})"
        );
        Ok(())
    };

    for k in 1..=k_max {
        for l in (k + 1)..=k_max {
            handle(
                Flavor::A,
                k,
                l,
                &fixes_unprimed[k - 1],
                &fixes_unprimed[l - 1],
                l - k,
                &mut certificates,
            )?;
        }
    }
    for k in 1..=k_max {
        for l in (k + 1)..=k_max {
            handle(
                Flavor::B,
                k,
                l,
                &fixes_primed[k - 1],
                &fixes_primed[l - 1],
                l - k,
                &mut certificates,
            )?;
        }
    }
    for k in 1..=k_max {
        for l in 1..=k_max {
            if k + l < 3 {
                continue; // divisor k + l - 2 would be zero
            }
            handle(
                Flavor::C,
                k,
                l,
                &fixes_primed[k - 1],
                &fixes_unprimed[l - 1],
                k + l - 2,
                &mut certificates,
            )?;
        }
    }
    Ok(certificates)
}

/// Least `q <= q_max` with `F^q = I` for the generic planar normal form with
/// trace `t`, `|t| < 2`.
///
/// `F` has determinant 1 and trace `t`, so `F^2 = t F - I`; every power stays
/// in the span of `{F, I}` and the scan tracks the two exact coefficients,
/// one multiplication per step. `F` is not a multiple of the identity, so
/// `F^k = I` exactly when the coefficients reach `(0, 1)`.
pub fn rotation_order(t: &Scalar, q_max: usize) -> Result<Option<usize>> {
    if t.abs() >= Scalar::from_int(2) {
        return Err(Error::TraceOutOfRange {
            context: "rotation order is defined for |t| < 2",
        });
    }
    if let Some(r) = t.as_rational() {
        // Integer-scaled recurrence: with t = a/b, the coefficients of F^k
        // in {F, I} are (P_k, Q_k) / b^{k-1} with
        // P_{k+1} = a P_k + b Q_k, Q_{k+1} = -b P_k. Avoids any gcd work.
        use num_bigint::BigInt;
        use num_traits::{One, Zero};
        let a = r.numer().clone();
        let b = r.denom().clone();
        let mut p = BigInt::one();
        let mut q = BigInt::zero();
        let mut scale = BigInt::one(); // b^{k-1}
        for k in 1..=q_max {
            if p.is_zero() && q == scale {
                return Ok(Some(k));
            }
            let next_p = &a * &p + &b * &q;
            let next_q = -(&b * &p);
            p = next_p;
            q = next_q;
            scale *= &b;
        }
        return Ok(None);
    }
    // (p, q) holds the coefficients of F^k in the span {F, I}; iteration k
    // tests F^k before advancing.
    let mut p = Scalar::one();
    let mut q = Scalar::zero();
    for k in 1..=q_max {
        if p.is_zero() && q.is_one() {
            return Ok(Some(k));
        }
        let next_p = &(t * &p) + &q;
        let next_q = -&p;
        p = next_p;
        q = next_q;
    }
    Ok(None)
}

/// One accumulating family of fixed lines: the indices used, the exact limit
/// subspace, and the exact deviation of each line from the limit.
#[derive(Clone, Debug)]
pub struct LimitEntry {
    pub family: Family,
    pub ks: Vec<usize>,
    pub limit: SubspaceBasis,
    pub deviations: Vec<Scalar>,
}

#[derive(Clone, Debug)]
pub struct LimitReport {
    pub case_tag: CaseTag,
    pub entries: Vec<LimitEntry>,
}

/// True when the sequence is strictly decreasing in absolute value.
pub fn strictly_decreasing_abs(values: &[Scalar]) -> bool {
    values.windows(2).all(|w| w[1].abs() < w[0].abs())
}

/// Ratio measuring how far a line direction is from a limit line, in a frame
/// where the limit is a coordinate axis: component along `off_axis` divided
/// by component along `on_axis`, shifted so the limit itself measures zero.
fn frame_deviation(v: &[Scalar], on_axis: usize, off_axis: usize, shift: &Scalar) -> Option<Scalar> {
    if v[on_axis].is_zero() {
        return None;
    }
    Some(&(&v[off_axis] / &v[on_axis]) - shift)
}

/// Identifies the exact limit of the accumulating fixed-line families and
/// the per-index deviation sequences.
///
/// Supported: the planar contained case, the generic planar cases with
/// `t = ±2` and rational `|t| > 2`, and the nilpotent-of-index-3 case in
/// dimension at least 3. The elliptic range `|t| < 2` has no accumulation
/// line (the fixed directions are dense or finite) and is an error, as is
/// the abelian case.
pub fn limit_directions(pair: &InvolutionPair, k_max: usize) -> Result<LimitReport> {
    if k_max < 3 {
        return Err(Error::IndexOutOfRange {
            context: "limit analysis needs k_max >= 3",
        });
    }
    let res = classify(pair)?;
    let h = &res.conjugacy;
    let (unprimed, primed) = reversor_tables(pair, k_max)?;
    // Transport input fixed lines into the normal-form frame; any valid
    // witness carries Fix(psi_k) onto the fixed line of the normal-form
    // reversor, so the deviations below are frame-canonical.
    let line_in_frame = |table: &[ExactMatrix], k: usize| -> Result<SubspaceBasis> {
        crate::revcore::fixed_subspace(&table[k - 1]).apply(h)
    };

    let two = Scalar::from_int(2);
    let f = pair.compose();
    let id = ExactMatrix::identity(pair.dim());

    let collect = |table: &[ExactMatrix],
                   family: Family,
                   ks: &[usize],
                   on_axis: usize,
                   off_axis: usize,
                   shift: &Scalar,
                   limit: SubspaceBasis,
                   frame: Option<&ExactMatrix>|
     -> Result<LimitEntry> {
        let mut used = Vec::new();
        let mut deviations = Vec::new();
        for &k in ks {
            let line = line_in_frame(table, k)?;
            let v = line.basis().first().cloned().unwrap_or_default();
            let v = match frame {
                Some(b_inv) => b_inv.apply_vec(&v),
                None => v,
            };
            if let Some(dev) = frame_deviation(&v, on_axis, off_axis, shift) {
                used.push(k);
                deviations.push(dev);
            } else if !used.is_empty() {
                return Err(Error::NoAccumulation {
                    context: "deviation became undefined after the sequence started",
                });
            }
        }
        Ok(LimitEntry {
            family,
            ks: used,
            limit,
            deviations,
        })
    };

    let entries = match res.case_tag {
        CaseTag::PlanarNonabelianContained => {
            // Even-index lines of both families lean onto the unique
            // eigenline of F (the kernel of F + I).
            let limit = SubspaceBasis::kernel(&(&f + &id));
            let evens: Vec<usize> = (1..=k_max).filter(|k| k % 2 == 0).collect();
            vec![
                collect(&unprimed, Family::Unprimed, &evens, 1, 0, &Scalar::zero(), limit.clone(), None)?,
                collect(&primed, Family::Primed, &evens, 1, 0, &Scalar::zero(), limit, None)?,
            ]
        }
        CaseTag::PlanarNonabelianGeneric if res.trace_t == Scalar::from_int(-2) => {
            let limit = SubspaceBasis::kernel(&(&f + &id));
            let odds: Vec<usize> = (1..=k_max).filter(|k| k % 2 == 1).collect();
            vec![
                collect(&unprimed, Family::Unprimed, &odds, 0, 1, &Scalar::zero(), limit.clone(), None)?,
                collect(&primed, Family::Primed, &odds, 0, 1, &Scalar::zero(), limit, None)?,
            ]
        }
        CaseTag::PlanarNonabelianGeneric if res.trace_t == Scalar::from_int(2) => {
            // All lines approach Fix(F) = <(1, -2)>; deviation is the slope
            // difference from -2.
            let limit = SubspaceBasis::kernel(&(&f - &id));
            let all: Vec<usize> = (1..=k_max).collect();
            let shift = Scalar::from_int(-2);
            vec![
                collect(&unprimed, Family::Unprimed, &all, 0, 1, &shift, limit.clone(), None)?,
                collect(&primed, Family::Primed, &all, 0, 1, &shift, limit, None)?,
            ]
        }
        CaseTag::PlanarNonabelianGeneric if res.trace_t.abs() > two => {
            let Some(EigenFrame::Hyperbolic {
                lambda_plus,
                lambda_minus,
                ..
            }) = res.eigen_frame.clone()
            else {
                return Err(Error::TraceOutOfRange {
                    context: "hyperbolic eigen-data requires a rational trace",
                });
            };
            let frame = res.eigen_frame.as_ref().unwrap().basis_matrix();
            let frame_inv = frame.inverse()?;
            // Column 0 of the frame spans the expanding eigendirection when
            // |lambda_+| > 1 (t > 2), column 1 otherwise (t < -2).
            let plus_expands = lambda_plus.abs() > Scalar::one();
            let (expanding_col, contracting_col) = if plus_expands { (0, 1) } else { (1, 0) };
            let eigenline = |col: usize| -> Result<SubspaceBasis> {
                let lambda = if col == 0 { &lambda_plus } else { &lambda_minus };
                let shifted = &f - &id.scale(lambda);
                Ok(SubspaceBasis::kernel(&shifted))
            };
            let all: Vec<usize> = (1..=k_max).collect();
            vec![
                // Unprimed lines accumulate on the contracting eigenspace.
                collect(
                    &unprimed,
                    Family::Unprimed,
                    &all,
                    contracting_col,
                    expanding_col,
                    &Scalar::zero(),
                    eigenline(contracting_col)?,
                    Some(&frame_inv),
                )?,
                // Primed lines accumulate on the expanding eigenspace.
                collect(
                    &primed,
                    Family::Primed,
                    &all,
                    expanding_col,
                    contracting_col,
                    &Scalar::zero(),
                    eigenline(expanding_col)?,
                    Some(&frame_inv),
                )?,
            ]
        }
        CaseTag::GenE => {
            // Moving generators approach the invariant hyperplane
            // x2 = -2 x1, the kernel of (F - I)^2.
            let shifted = &f - &id;
            let limit = SubspaceBasis::kernel(&(&shifted * &shifted));
            let all: Vec<usize> = (1..=k_max).collect();
            let shift = Scalar::from_int(-2);
            let pick = |table: &[ExactMatrix], family: Family| -> Result<LimitEntry> {
                let mut used = Vec::new();
                let mut deviations = Vec::new();
                for &k in &all {
                    let line = line_in_frame(table, k)?;
                    // The moving generator is the basis row with a nonzero
                    // leading coordinate.
                    let Some(v) = line.basis().iter().find(|v| !v[0].is_zero()) else {
                        continue;
                    };
                    used.push(k);
                    deviations.push(&(&v[1] / &v[0]) - &shift);
                }
                Ok(LimitEntry {
                    family,
                    ks: used,
                    limit: limit.clone(),
                    deviations,
                })
            };
            vec![pick(&unprimed, Family::Unprimed)?, pick(&primed, Family::Primed)?]
        }
        CaseTag::PlanarNonabelianGeneric => {
            return Err(Error::NoAccumulation {
                context: "|t| < 2: fixed directions are finite or dense, no accumulation line",
            })
        }
        _ => {
            return Err(Error::NoAccumulation {
                context: "finite chains do not accumulate",
            })
        }
    };
    Ok(LimitReport {
        case_tag: res.case_tag,
        entries,
    })
}

// ---------------------------------------------------------------------------
// Planar sector arrangements
// ---------------------------------------------------------------------------

/// A distinct fixed line through the origin with every reversor that fixes it.
#[derive(Clone, Debug)]
pub struct ArrangementLine {
    pub subspace: SubspaceBasis,
    /// Canonical direction: `(1, s)` or `(0, 1)`.
    pub direction: Vec<Scalar>,
    pub labels: Vec<ReversorRef>,
}

/// Open angular sector between two consecutive rays.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sector {
    pub lo_ray: usize,
    pub hi_ray: usize,
}

/// The truncated planar arrangement of all fixed lines of reversors with
/// index at most `k_max`, with rays in exact circular order.
#[derive(Clone, Debug)]
pub struct SectorArrangement {
    pub lines: Vec<ArrangementLine>,
    /// `2 * lines.len()` rays: positive directions in slope order, then the
    /// opposite rays in the same order.
    pub rays: Vec<Ray>,
    pub sectors: Vec<Sector>,
    /// Truncation-bounded sectors: adjacent to an accumulation direction, so
    /// their true boundary is not a fixed line of the finite arrangement.
    pub flagged: Vec<bool>,
    /// Accumulation directions of the underlying case, when any.
    pub accumulation: Vec<SubspaceBasis>,
    /// Set when the fixed directions are dense at the truncation horizon
    /// (elliptic case with no rotation order found).
    pub density_note: bool,
}

#[derive(Clone, Debug)]
pub struct Ray {
    pub line: usize,
    pub vector: Vec<Scalar>,
}

fn cross_sign(u: &[Scalar], v: &[Scalar]) -> i32 {
    (&(&u[0] * &v[1]) - &(&u[1] * &v[0])).signum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Location {
    Sector(usize),
    OnLine(usize),
}

impl SectorArrangement {
    /// Builds the arrangement for all reversors with index `<= k_max`.
    pub fn build(pair: &InvolutionPair, k_max: usize) -> Result<Self> {
        if pair.dim() != 2 {
            return Err(Error::UnsupportedDimension {
                dim: pair.dim(),
                context: "sector arrangements are planar",
            });
        }
        if k_max < 2 {
            return Err(Error::IndexOutOfRange {
                context: "arrangement needs k_max >= 2",
            });
        }
        let (unprimed, primed) = reversor_tables(pair, k_max)?;
        let mut lines: Vec<ArrangementLine> = Vec::new();
        for (family, table) in [(Family::Unprimed, &unprimed), (Family::Primed, &primed)] {
            for k in 1..=k_max {
                let space = crate::revcore::fixed_subspace(&table[k - 1]);
                if space.dim() != 1 {
                    return Err(Error::UnsupportedCodimension);
                }
                let label = ReversorRef { family, k };
                match lines.iter_mut().find(|l| l.subspace == space) {
                    Some(line) => line.labels.push(label),
                    None => {
                        let direction = space.basis()[0].clone();
                        lines.push(ArrangementLine {
                            subspace: space,
                            direction,
                            labels: vec![label],
                        });
                    }
                }
            }
        }
        // Slope order; the vertical direction (0, 1) sorts last.
        lines.sort_by(|a, b| {
            let va = &a.direction;
            let vb = &b.direction;
            match (va[0].is_zero(), vb[0].is_zero()) {
                (true, true) => std::cmp::Ordering::Equal,
                (true, false) => std::cmp::Ordering::Greater,
                (false, true) => std::cmp::Ordering::Less,
                (false, false) => (&va[1] / &va[0]).cmp(&(&vb[1] / &vb[0])),
            }
        });

        let m = lines.len();
        let mut rays = Vec::with_capacity(2 * m);
        for (i, line) in lines.iter().enumerate() {
            rays.push(Ray {
                line: i,
                vector: line.direction.clone(),
            });
        }
        for (i, line) in lines.iter().enumerate() {
            rays.push(Ray {
                line: i,
                vector: line.direction.iter().map(|c| -c).collect(),
            });
        }
        let sectors: Vec<Sector> = (0..2 * m)
            .map(|i| Sector {
                lo_ray: i,
                hi_ray: (i + 1) % (2 * m),
            })
            .collect();

        // Accumulation data via classification; outside the classified range
        // the arrangement simply carries no flags.
        let mut accumulation: Vec<SubspaceBasis> = Vec::new();
        let mut density_note = false;
        if let Ok(res) = classify(pair) {
            let f = pair.compose();
            let id = ExactMatrix::identity(2);
            match res.case_tag {
                CaseTag::PlanarNonabelianContained => {
                    accumulation.push(SubspaceBasis::kernel(&(&f + &id)));
                }
                CaseTag::PlanarNonabelianGeneric => {
                    let two = Scalar::from_int(2);
                    if res.trace_t == two {
                        accumulation.push(SubspaceBasis::kernel(&(&f - &id)));
                    } else if res.trace_t == -&two {
                        accumulation.push(SubspaceBasis::kernel(&(&f + &id)));
                    } else if res.trace_t.abs() > two {
                        if let Some(frame @ EigenFrame::Hyperbolic { .. }) = &res.eigen_frame {
                            let b = frame.basis_matrix();
                            for col in 0..2 {
                                let v = vec![b[(0, col)].clone(), b[(1, col)].clone()];
                                accumulation.push(SubspaceBasis::from_spanning(2, vec![v]));
                            }
                        }
                    } else {
                        // Elliptic range: chains are finite exactly when F
                        // has finite order at the horizon.
                        let horizon = (4 * k_max).max(64);
                        density_note =
                            rotation_order(&res.trace_t, horizon)?.is_none();
                    }
                }
                _ => {}
            }
        }

        let flagged = (0..sectors.len())
            .map(|si| {
                accumulation.iter().any(|acc| {
                    let dir = &acc.basis()[0];
                    let neg: Vec<Scalar> = dir.iter().map(|c| -c).collect();
                    [dir.clone(), neg].iter().any(|v| {
                        let lo = &rays[sectors[si].lo_ray].vector;
                        let hi = &rays[sectors[si].hi_ray].vector;
                        let c_lo = cross_sign(lo, v);
                        let c_hi = cross_sign(v, hi);
                        // On a boundary ray, or strictly inside the sector.
                        c_lo == 0 || c_hi == 0 || (c_lo > 0 && c_hi > 0)
                    })
                })
            })
            .collect();

        Ok(SectorArrangement {
            lines,
            rays,
            sectors,
            flagged,
            accumulation,
            density_note,
        })
    }

    /// Locates a nonzero point: the open sector containing it, or the line
    /// it sits on.
    pub fn locate(&self, point: &[Scalar]) -> Result<Location> {
        if point.len() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: point.len(),
            });
        }
        if point.iter().all(Scalar::is_zero) {
            return Err(Error::ProbeOnFixedLine {
                labels: "the origin (every fixed line)".into(),
            });
        }
        for (si, sector) in self.sectors.iter().enumerate() {
            let lo = &self.rays[sector.lo_ray];
            let hi = &self.rays[sector.hi_ray];
            let c_lo = cross_sign(&lo.vector, point);
            if c_lo == 0 {
                // Parallel to the low boundary vector: on that line.
                return Ok(Location::OnLine(lo.line));
            }
            let c_hi = cross_sign(point, &hi.vector);
            if c_lo > 0 && c_hi > 0 {
                return Ok(Location::Sector(si));
            }
        }
        unreachable!("nonzero planar point must lie in a sector or on a line")
    }

    pub fn boundary_lines(&self, sector: usize) -> (usize, usize) {
        let s = &self.sectors[sector];
        (self.rays[s.lo_ray].line, self.rays[s.hi_ray].line)
    }

    pub fn line_labels(&self, line: usize) -> String {
        self.lines[line]
            .labels
            .iter()
            .map(|l| l.to_string())
            .collect::<Vec<_>>()
            .join(" = ")
    }

    fn find_line(&self, space: &SubspaceBasis) -> Option<usize> {
        self.lines.iter().position(|l| l.subspace == *space)
    }

    /// An exact interior point of a sector.
    pub fn interior_probe(&self, sector: usize) -> Vec<Scalar> {
        let s = &self.sectors[sector];
        let lo = &self.rays[s.lo_ray].vector;
        let hi = &self.rays[s.hi_ray].vector;
        let sum: Vec<Scalar> = lo.iter().zip(hi).map(|(a, b)| a + b).collect();
        if sum.iter().all(Scalar::is_zero) {
            // Opposite rays (single-line arrangement): use the
            // counterclockwise perpendicular of the low ray.
            vec![-&lo[1], lo[0].clone()]
        } else {
            sum
        }
    }
}

/// Where one probe's sector goes under `F`, with the boundary bookkeeping.
#[derive(Clone, Debug)]
pub struct SectorMapResult {
    pub source: usize,
    pub image: Location,
    pub source_lines: (usize, usize),
    /// Arrangement ids of the `F`-images of the source boundary lines;
    /// `None` when an image lies beyond the truncated arrangement.
    pub image_lines: (Option<usize>, Option<usize>),
    /// The image sector's boundary is exactly the pair of mapped lines.
    pub boundary_verified: bool,
    pub source_flagged: bool,
}

/// Applies `F` to the probe's sector and verifies that the image sector's
/// boundary lines are exactly the `F`-images of the source's boundary lines.
pub fn sector_map(
    pair: &InvolutionPair,
    k_max: usize,
    probe: &[Scalar],
) -> Result<SectorMapResult> {
    let arrangement = SectorArrangement::build(pair, k_max)?;
    sector_map_in(&arrangement, pair, probe)
}

fn sector_map_in(
    arrangement: &SectorArrangement,
    pair: &InvolutionPair,
    probe: &[Scalar],
) -> Result<SectorMapResult> {
    let source = match arrangement.locate(probe)? {
        Location::Sector(s) => s,
        Location::OnLine(line) => {
            return Err(Error::ProbeOnFixedLine {
                labels: arrangement.line_labels(line),
            })
        }
    };
    let f = pair.compose();
    let image_point = f.apply_vec(probe);
    let image = arrangement.locate(&image_point)?;
    let source_lines = arrangement.boundary_lines(source);
    let map_line = |line: usize| -> Result<Option<usize>> {
        let img = arrangement.lines[line].subspace.apply(&f)?;
        Ok(arrangement.find_line(&img))
    };
    let image_lines = (map_line(source_lines.0)?, map_line(source_lines.1)?);
    let boundary_verified = match (image, image_lines.0, image_lines.1) {
        (Location::Sector(s), Some(a), Some(b)) => {
            let (x, y) = arrangement.boundary_lines(s);
            (x == a && y == b) || (x == b && y == a)
        }
        _ => false,
    };
    Ok(SectorMapResult {
        source,
        image,
        source_lines,
        image_lines,
        boundary_verified,
        source_flagged: arrangement.flagged[source],
    })
}

/// The induced sector map for every sector of the truncated arrangement.
#[derive(Clone, Debug)]
pub struct InterchangeReport {
    pub arrangement: SectorArrangement,
    /// Outcome per sector, indexed like `arrangement.sectors`.
    pub outcomes: Vec<Location>,
    pub boundary_verified: Vec<bool>,
    /// A boundary line's image leaves the truncated arrangement.
    pub frontier: Vec<bool>,
    /// Every sector maps cleanly onto a sector and the induced map is a
    /// bijection: the finite-chain situation.
    pub is_full_permutation: bool,
    /// No two boundary-verified sectors share an image. Sectors cut by the
    /// truncation may legitimately land inside the same flagged sector.
    pub injective_on_verified: bool,
}

/// Maps every sector through `F` via exact interior probes and reports the
/// induced structure: a genuine permutation when the chains are finite, and
/// an injective interchange with flagged truncation-frontier sectors when an
/// infinite chain had to be cut at `k_max`.
pub fn sector_interchange(pair: &InvolutionPair, k_max: usize) -> Result<InterchangeReport> {
    let arrangement = SectorArrangement::build(pair, k_max)?;
    let f = pair.compose();
    let mut outcomes = Vec::new();
    let mut boundary_verified = Vec::new();
    let mut frontier = Vec::new();
    for si in 0..arrangement.sectors.len() {
        let probe = arrangement.interior_probe(si);
        let image_point = f.apply_vec(&probe);
        let image = arrangement.locate(&image_point)?;
        let (la, lb) = arrangement.boundary_lines(si);
        let map_line = |line: usize| -> Result<Option<usize>> {
            let img = arrangement.lines[line].subspace.apply(&f)?;
            Ok(arrangement.find_line(&img))
        };
        let (ia, ib) = (map_line(la)?, map_line(lb)?);
        frontier.push(ia.is_none() || ib.is_none());
        let verified = match (image, ia, ib) {
            (Location::Sector(s), Some(a), Some(b)) => {
                let (x, y) = arrangement.boundary_lines(s);
                (x == a && y == b) || (x == b && y == a)
            }
            _ => false,
        };
        boundary_verified.push(verified);
        outcomes.push(image);
    }
    let verified_targets: Vec<usize> = outcomes
        .iter()
        .zip(&boundary_verified)
        .filter_map(|(o, &ok)| match (o, ok) {
            (Location::Sector(s), true) => Some(*s),
            _ => None,
        })
        .collect();
    let mut seen = verified_targets.clone();
    seen.sort_unstable();
    seen.dedup();
    let injective_on_verified = seen.len() == verified_targets.len();
    let is_full_permutation =
        verified_targets.len() == outcomes.len() && injective_on_verified;
    Ok(InterchangeReport {
        arrangement,
        outcomes,
        boundary_verified,
        frontier,
        is_full_permutation,
        injective_on_verified,
    })
}
