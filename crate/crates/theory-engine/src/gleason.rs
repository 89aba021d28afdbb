use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::TheoryError;
use crate::theory::validate_density_matrix;

#[derive(Debug, Clone, Serialize)]
pub struct GleasonReport {
    /// trace(rho P) per projector, grouped by basis.
    pub frame_values: Vec<[f64; 3]>,
    pub basis_sums: Vec<f64>,
    pub all_nonnegative: bool,
    pub sums_normalized: bool,
    /// Frobenius distance between the least-squares reconstruction from the
    /// frame values and the supplied state.
    pub reconstruction_residual: f64,
}

impl GleasonReport {
    pub fn passed(&self) -> bool {
        self.all_nonnegative && self.sums_normalized
    }
}

/// Verifies that p(P) = trace(rho P) behaves as a frame function over the
/// given orthonormal bases of C^3, and reconstructs the state from the frame
/// values by least squares.
pub fn gleason_frame_check(
    rho: &DMatrix<Complex64>,
    bases: &[[Vec<Complex64>; 3]],
    tolerance: f64,
) -> Result<GleasonReport, TheoryError> {
    if rho.nrows() != 3 {
        return Err(TheoryError::InvalidState("state must be 3-dimensional".into()));
    }
    validate_density_matrix(rho)?;
    for (index, basis) in bases.iter().enumerate() {
        for u in basis {
            if u.len() != 3 {
                return Err(TheoryError::NonOrthonormalBasis(index));
            }
        }
        for i in 0..3 {
            for j in 0..3 {
                let inner: Complex64 = (0..3).map(|k| basis[i][k].conj() * basis[j][k]).sum();
                let expected = if i == j { 1.0 } else { 0.0 };
                if (inner - Complex64::new(expected, 0.0)).norm() > tolerance.max(1e-9) {
                    return Err(TheoryError::NonOrthonormalBasis(index));
                }
            }
        }
    }

    let projector = |u: &Vec<Complex64>| {
        DMatrix::<Complex64>::from_fn(3, 3, |i, j| u[i] * u[j].conj())
    };

    let mut frame_values = Vec::with_capacity(bases.len());
    let mut basis_sums = Vec::with_capacity(bases.len());
    let mut projectors = Vec::new();
    let mut values = Vec::new();
    for basis in bases {
        let mut triple = [0.0f64; 3];
        for (k, u) in basis.iter().enumerate() {
            let p = projector(u);
            triple[k] = (rho * &p).trace().re;
            projectors.push(p);
            values.push(triple[k]);
        }
        frame_values.push(triple);
        basis_sums.push(triple.iter().sum());
    }

    let all_nonnegative = frame_values
        .iter()
        .flatten()
        .all(|&v| v >= -tolerance);
    let sums_normalized = basis_sums.iter().all(|s: &f64| (s - 1.0).abs() <= tolerance);

    let reconstruction_residual = if projectors.is_empty() {
        f64::NAN
    } else {
        let fitted = fit_hermitian(&projectors, &values);
        (&fitted - rho).iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    };

    Ok(GleasonReport {
        frame_values,
        basis_sums,
        all_nonnegative,
        sums_normalized,
        reconstruction_residual,
    })
}

/// Least-squares Hermitian 3x3 solve of trace(H P_k) = v_k over the 9 real
/// parameters of H.
fn fit_hermitian(projectors: &[DMatrix<Complex64>], values: &[f64]) -> DMatrix<Complex64> {
    // parameters: h00, h11, h22, Re h01, Im h01, Re h02, Im h02, Re h12, Im h12
    let rows = projectors.len();
    let mut a = DMatrix::<f64>::zeros(rows, 9);
    for (r, p) in projectors.iter().enumerate() {
        // trace(H P) = sum_ij H_ij P_ji; collect the real coefficients
        a[(r, 0)] = p[(0, 0)].re;
        a[(r, 1)] = p[(1, 1)].re;
        a[(r, 2)] = p[(2, 2)].re;
        a[(r, 3)] = p[(1, 0)].re + p[(0, 1)].re;
        a[(r, 4)] = p[(0, 1)].im - p[(1, 0)].im;
        a[(r, 5)] = p[(2, 0)].re + p[(0, 2)].re;
        a[(r, 6)] = p[(0, 2)].im - p[(2, 0)].im;
        a[(r, 7)] = p[(2, 1)].re + p[(1, 2)].re;
        a[(r, 8)] = p[(1, 2)].im - p[(2, 1)].im;
    }
    let b = DVector::from_column_slice(values);
    let x = a
        .svd(true, true)
        .solve(&b, 1e-12)
        .expect("least squares solve");

    let h = |re: f64, im: f64| Complex64::new(re, im);
    DMatrix::from_row_slice(
        3,
        3,
        &[
            h(x[0], 0.0),
            h(x[3], x[4]),
            h(x[5], x[6]),
            h(x[3], -x[4]),
            h(x[1], 0.0),
            h(x[7], x[8]),
            h(x[5], -x[6]),
            h(x[7], -x[8]),
            h(x[2], 0.0),
        ],
    )
}
