//! Shared fixtures and oracles for the integration suites.

#![allow(dead_code)]

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use revmap_core::*;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn planar_abelian() -> InvolutionPair {
    normal_form(CaseTag::PlanarAbelian, &Scalar::zero(), 2).unwrap()
}

pub fn planar_contained() -> InvolutionPair {
    normal_form(CaseTag::PlanarNonabelianContained, &Scalar::zero(), 2).unwrap()
}

pub fn planar_trace(t: i64) -> InvolutionPair {
    normal_form(CaseTag::PlanarNonabelianGeneric, &Scalar::from_int(t), 2).unwrap()
}

pub fn planar_trace_scalar(t: &Scalar) -> InvolutionPair {
    normal_form(CaseTag::PlanarNonabelianGeneric, t, 2).unwrap()
}

/// Trace with rotation number 1/5: `t = 2 cos(2π/5) = (sqrt(5) - 1) / 2`.
pub fn rot72_trace() -> Scalar {
    "-1/2+1/2*sqrt(5)".parse().unwrap()
}

pub fn rot72_pair() -> InvolutionPair {
    planar_trace_scalar(&rot72_trace())
}

pub fn nilpotent3(n: usize) -> InvolutionPair {
    normal_form(CaseTag::GenE, &Scalar::zero(), n).unwrap()
}

pub fn all_planar_fixtures() -> Vec<(String, InvolutionPair)> {
    let mut out = vec![
        ("abelian".to_string(), planar_abelian()),
        ("contained".to_string(), planar_contained()),
    ];
    for t in [-3i64, -2, -1, 0, 1, 2, 3] {
        out.push((format!("trace{t}"), planar_trace(t)));
    }
    out.push(("rot72".to_string(), rot72_pair()));
    out
}

pub fn all_fixtures() -> Vec<(String, InvolutionPair)> {
    let mut out = all_planar_fixtures();
    for n in [3usize, 4, 5] {
        out.push((format!("nilpotent3_n{n}"), nilpotent3(n)));
    }
    out.push(("susp_abelian".into(), planar_abelian().suspend(1)));
    out.push(("susp_contained".into(), planar_contained().suspend(1)));
    out.push(("susp_trace3".into(), planar_trace(3).suspend(1)));
    out.push(("susp_trace2".into(), planar_trace(2).suspend(1)));
    out
}

pub fn random_invertible_int_matrix(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> ExactMatrix {
    loop {
        let m = ExactMatrix::from_fn(n, n, |_, _| {
            Scalar::from_int(rng.gen_range(-bound..=bound))
        });
        if m.is_invertible() {
            return m;
        }
    }
}

pub fn random_conjugate(rng: &mut ChaCha8Rng, pair: &InvolutionPair) -> InvolutionPair {
    let h = random_invertible_int_matrix(rng, pair.dim(), 3);
    pair.conjugate_by(&h).unwrap()
}

pub fn vec_i64(coords: &[i64]) -> Vec<Scalar> {
    coords.iter().map(|&c| Scalar::from_int(c)).collect()
}

// ---------------------------------------------------------------------------
// Independent oracles (kept free of the implementation paths they check)
// ---------------------------------------------------------------------------

/// Intersection through the stacked-kernel route: solutions of
/// `A^T s = B^T u` give the common points `A^T s`. Independent of the
/// block-elimination used by `SubspaceBasis::intersect`.
pub fn oracle_intersect(u: &SubspaceBasis, v: &SubspaceBasis) -> SubspaceBasis {
    let n = u.ambient_dim();
    let (du, dv) = (u.dim(), v.dim());
    if du == 0 || dv == 0 {
        return SubspaceBasis::trivial(n);
    }
    // Columns: s coefficients then u coefficients; rows: ambient equations.
    let stacked = ExactMatrix::from_fn(n, du + dv, |r, c| {
        if c < du {
            u.basis()[c][r].clone()
        } else {
            -&v.basis()[c - du][r]
        }
    });
    let null = SubspaceBasis::kernel(&stacked);
    let vectors: Vec<Vec<Scalar>> = null
        .basis()
        .iter()
        .map(|coeffs| {
            let mut point = vec![Scalar::zero(); n];
            for (i, row) in u.basis().iter().enumerate() {
                for (p, x) in point.iter_mut().zip(row) {
                    let term = &coeffs[i] * x;
                    *p = &*p + &term;
                }
            }
            point
        })
        .collect();
    SubspaceBasis::from_spanning(n, vectors)
}

/// Power by plain repeated multiplication.
pub fn oracle_power(f: &ExactMatrix, k: usize) -> ExactMatrix {
    let mut acc = ExactMatrix::identity(f.rows());
    for _ in 0..k {
        acc = &acc * f;
    }
    acc
}

/// Least order up to the bound by direct repeated multiplication.
pub fn oracle_order(f: &ExactMatrix, bound: usize) -> Option<usize> {
    let mut acc = f.clone();
    for k in 1..=bound {
        if acc.is_identity() {
            return Some(k);
        }
        acc = &acc * f;
    }
    None
}

pub fn line(ambient: usize, coords: &[i64]) -> SubspaceBasis {
    SubspaceBasis::from_spanning(ambient, vec![vec_i64(coords)])
}
