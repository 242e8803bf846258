//! Solution spaces of simultaneous intertwining equations `h·σ_i = τ_i·h`.
//!
//! Unknown matrices are vectorized by column stacking: entry `h[i][j]` sits
//! at flat index `j*n + i`. Both sides of every equation are built with the
//! same convention, which keeps the two Sylvester-type operators aligned.

use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::scalar::Scalar;
use crate::subspace::SubspaceBasis;

/// Flat index of `h[i][j]` under column stacking.
fn flat(n: usize, i: usize, j: usize) -> usize {
    j * n + i
}

/// Canonical basis of `{h : h·σ_i = τ_i·h for all i}` as a linear space of
/// `n×n` matrices. The basis is the reduced-echelon kernel basis of the
/// stacked vectorized constraints.
pub fn intertwiner_basis(constraints: &[(&ExactMatrix, &ExactMatrix)]) -> Result<Vec<ExactMatrix>> {
    let n = constraints
        .first()
        .map(|(s, _)| s.rows())
        .ok_or(Error::IndexOutOfRange {
            context: "at least one intertwining constraint required",
        })?;
    for (sigma, tau) in constraints {
        for m in [sigma, tau] {
            if !m.is_square() {
                return Err(Error::NotSquare {
                    rows: m.rows(),
                    cols: m.cols(),
                });
            }
            if m.rows() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: m.rows(),
                });
            }
        }
    }

    let nn = n * n;
    let mut op = ExactMatrix::zeros(constraints.len() * nn, nn);
    for (c, (sigma, tau)) in constraints.iter().enumerate() {
        for i in 0..n {
            for j in 0..n {
                let row = c * nn + flat(n, i, j);
                // (h·sigma)[i][j] = sum_k h[i][k] sigma[k][j]
                for k in 0..n {
                    let col = flat(n, i, k);
                    op[(row, col)] = &op[(row, col)] + &sigma[(k, j)];
                }
                // -(tau·h)[i][j] = -sum_k tau[i][k] h[k][j]
                for k in 0..n {
                    let col = flat(n, k, j);
                    op[(row, col)] = &op[(row, col)] - &tau[(i, k)];
                }
            }
        }
    }

    let kernel = SubspaceBasis::kernel(&op);
    Ok(kernel
        .basis()
        .iter()
        .map(|v| ExactMatrix::from_fn(n, n, |i, j| v[flat(n, i, j)].clone()))
        .collect())
}

/// Canonical flattened form of the span of a set of matrices, for exact
/// span-equality comparisons.
pub fn matrix_span(mats: &[ExactMatrix], n: usize) -> SubspaceBasis {
    let vectors = mats
        .iter()
        .map(|m| {
            let mut v = vec![Scalar::zero(); n * n];
            for i in 0..n {
                for j in 0..n {
                    v[flat(n, i, j)] = m[(i, j)].clone();
                }
            }
            v
        })
        .collect();
    SubspaceBasis::from_spanning(n * n, vectors)
}

/// Searches the span of `basis` for an invertible matrix.
///
/// The determinant is a polynomial of degree at most `n` in each coefficient,
/// so when it is not identically zero some point of the grid `{0..n}^s` is
/// invertible; scanning that grid is therefore a decisive existence test
/// whenever it fits the budget. Larger spans fall back to a deterministic
/// escalating sweep and report absence only as "not found within bounds".
pub fn invertible_in_span(basis: &[ExactMatrix]) -> Option<ExactMatrix> {
    if basis.is_empty() {
        return None;
    }
    let n = basis[0].rows();
    let s = basis.len();

    let combine = |coeffs: &[i64]| -> ExactMatrix {
        let mut acc = ExactMatrix::zeros(n, n);
        for (c, b) in coeffs.iter().zip(basis) {
            if *c != 0 {
                acc = &acc + &b.scale(&Scalar::from_int(*c));
            }
        }
        acc
    };

    for b in basis {
        if b.is_invertible() {
            return Some(b.clone());
        }
    }

    // Decisive grid when affordable.
    const GRID_BUDGET: u64 = 20_000;
    let grid_size = (n as u64 + 1).checked_pow(s as u32);
    if let Some(size) = grid_size {
        if size <= GRID_BUDGET {
            let mut coeffs = vec![0i64; s];
            loop {
                if coeffs.iter().any(|&c| c != 0) {
                    let cand = combine(&coeffs);
                    if cand.is_invertible() {
                        return Some(cand);
                    }
                }
                // Odometer over {0..n}^s.
                let mut pos = 0;
                loop {
                    if pos == s {
                        return None; // det vanishes on the whole grid
                    }
                    coeffs[pos] += 1;
                    if coeffs[pos] as usize <= n {
                        break;
                    }
                    coeffs[pos] = 0;
                    pos += 1;
                }
            }
        }
    }

    // Escalating deterministic sweep; xorshift keeps it reproducible.
    let mut state = 0x9e3779b97f4a7c15u64;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    for bound in [2i64, 4, 8, 32, 128] {
        for _ in 0..2000 {
            let coeffs: Vec<i64> = (0..s)
                .map(|_| (next() % (2 * bound as u64 + 1)) as i64 - bound)
                .collect();
            if coeffs.iter().any(|&c| c != 0) {
                let cand = combine(&coeffs);
                if cand.is_invertible() {
                    return Some(cand);
                }
            }
        }
    }
    None
}
