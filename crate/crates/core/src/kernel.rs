//! The rank-1 Dunkl kernel for Z_2^d and its imaginary-argument form.
//!
//! In rank one the kernel is the Bessel combination
//!   E_k(x, y) = i_{k-1/2}(xy) + xy/(2k+1) i_{k+1/2}(xy),
//! which solves the defining differential-difference system and reduces to
//! e^{xy} at k = 0. Products over coordinates give the Z_2^d kernel. The
//! scaled variants factor out e^{|xy|} so large arguments neither overflow
//! nor lose the Gaussian-translation combinations they appear in.

use num_complex::Complex64;

use crate::bessel::{bessel_normalized, modified_normalized_scaled};
use crate::error::Result;
use crate::measure::MultiplicitySetup;

/// E_k(x, y) in rank one. Grows like e^{|xy|}; prefer the scaled form inside
/// integrands.
pub fn dunkl_kernel_1d(k: f64, x: f64, y: f64) -> Result<f64> {
    Ok(dunkl_kernel_1d_scaled(k, x, y)? * (x * y).abs().exp())
}

/// e^{-|xy|} E_k(x, y); bounded by 1 on the real line.
pub fn dunkl_kernel_1d_scaled(k: f64, x: f64, y: f64) -> Result<f64> {
    if k < 0.0 {
        return Err(crate::error::DunklError::out_of_range(format!(
            "multiplicity k = {k} must be >= 0"
        )));
    }
    let z = x * y;
    if z >= 0.0 {
        // both streams positive: the scaled Bessel split loses nothing
        let nu = k - 0.5;
        let even = modified_normalized_scaled(nu, z)?;
        let odd = z / (2.0 * k + 1.0) * modified_normalized_scaled(nu + 1.0, z)?;
        return Ok(even + odd);
    }
    if z < -700.0 {
        // true value is below e^{-1400}
        return Ok(0.0);
    }
    // negative arguments cancel down to ~e^{-2|z|}: sum in double-double
    Ok(crate::bessel::kernel_series_scaled(k, z))
}

/// E_k(x, y) on R^d for Z_2^d: the coordinate product of rank-1 kernels.
pub fn dunkl_kernel(setup: &MultiplicitySetup, x: &[f64], y: &[f64]) -> Result<f64> {
    Ok(dunkl_kernel_scaled(setup, x, y)?
        * x.iter()
            .zip(y)
            .map(|(a, b)| (a * b).abs())
            .sum::<f64>()
            .exp())
}

/// exp(-sum_j |x_j y_j|) E_k(x, y); bounded by 1.
pub fn dunkl_kernel_scaled(setup: &MultiplicitySetup, x: &[f64], y: &[f64]) -> Result<f64> {
    assert_eq!(x.len(), setup.dim());
    assert_eq!(y.len(), setup.dim());
    let mut prod = 1.0;
    for ((&xj, &yj), &kj) in x.iter().zip(y).zip(setup.multiplicities()) {
        prod *= dunkl_kernel_1d_scaled(kj, xj, yj)?;
    }
    Ok(prod)
}

/// E_k(x, iy) in rank one: j_{k-1/2}(xy) + i xy/(2k+1) j_{k+1/2}(xy).
/// Modulus bounded by 1 for real x, y.
pub fn dunkl_kernel_imag_1d(k: f64, x: f64, y: f64) -> Result<Complex64> {
    let z = x * y;
    let nu = k - 0.5;
    let re = bessel_normalized(nu, z)?;
    let im = z / (2.0 * k + 1.0) * bessel_normalized(nu + 1.0, z)?;
    Ok(Complex64::new(re, im))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn classical_limit_is_exponential() {
        for &x in &[-2.0, -0.3, 0.0, 0.7, 2.5] {
            for &y in &[-1.5, 0.0, 0.4, 3.0] {
                let e = dunkl_kernel_1d(0.0, x, y).unwrap();
                assert_relative_eq!(e, (x * y).exp(), max_relative = 1e-13);
            }
        }
    }

    #[test]
    fn kernel_at_zero_argument_is_one() {
        for &k in &[0.0, 0.3, 1.0, 2.5] {
            assert_eq!(dunkl_kernel_1d(k, 1.7, 0.0).unwrap(), 1.0);
            assert_eq!(dunkl_kernel_1d(k, 0.0, -0.4).unwrap(), 1.0);
        }
    }

    #[test]
    fn kernel_is_symmetric() {
        for &k in &[0.3, 0.7, 1.5] {
            for &(x, y) in &[(0.5, 2.0), (-1.2, 0.8), (3.0, -3.0), (4.0, 4.0)] {
                let a = dunkl_kernel_1d(k, x, y).unwrap();
                let b = dunkl_kernel_1d(k, y, x).unwrap();
                assert_relative_eq!(a, b, max_relative = 1e-13);
            }
        }
    }

    #[test]
    fn kernel_is_positive() {
        for &k in &[0.0, 0.5, 1.5] {
            for &(x, y) in &[(1.0, -5.0), (2.0, -2.0), (-3.5, 4.0)] {
                assert!(dunkl_kernel_1d(k, x, y).unwrap() > 0.0);
            }
        }
    }

    #[test]
    fn product_kernel_reduces_to_scalar_factors() {
        let setup = MultiplicitySetup::new(2, vec![0.5, 0.0]).unwrap();
        let x = [1.2, -0.7];
        let y = [0.4, 2.0];
        let prod = dunkl_kernel(&setup, &x, &y).unwrap();
        let f1 = dunkl_kernel_1d(0.5, x[0], y[0]).unwrap();
        let f2 = dunkl_kernel_1d(0.0, x[1], y[1]).unwrap();
        assert_relative_eq!(prod, f1 * f2, max_relative = 1e-13);

        let zero = [0.0, 0.0];
        assert_relative_eq!(dunkl_kernel(&setup, &x, &zero).unwrap(), 1.0, max_relative = 1e-15);

        let s0 = MultiplicitySetup::new(2, vec![0.0, 0.0]).unwrap();
        let dot: f64 = x.iter().zip(&y).map(|(a, b)| a * b).sum();
        assert_relative_eq!(dunkl_kernel(&s0, &x, &y).unwrap(), dot.exp(), max_relative = 1e-13);
    }

    #[test]
    fn imaginary_kernel_modulus_bounded_by_one() {
        for &k in &[0.0, 0.3, 1.0, 2.5] {
            for i in 0..40 {
                for j in 0..40 {
                    let x = -20.0 + i as f64;
                    let y = -20.0 + 1.03 * j as f64;
                    let v = dunkl_kernel_imag_1d(k, x, y).unwrap();
                    assert!(
                        v.norm() <= 1.0 + 1e-12,
                        "modulus {} at k={k}, x={x}, y={y}",
                        v.norm()
                    );
                }
            }
        }
    }

    #[test]
    fn imaginary_kernel_classical_limit() {
        for &(x, y) in &[(0.3, 1.0), (2.0, -1.5), (5.0, 2.0)] {
            let v = dunkl_kernel_imag_1d(0.0, x, y).unwrap();
            let e = Complex64::new(0.0, x * y).exp();
            assert_relative_eq!(v.re, e.re, epsilon = 1e-13);
            assert_relative_eq!(v.im, e.im, epsilon = 1e-13);
        }
    }
}
