use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::minimal::minimal_model_with_map;
use super::weierstrass::{rational_sign, WeierstrassCurve};
use super::CurveError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum KernelRealPoints {
    #[serde(rename = "Z/3")]
    Z3,
    #[serde(rename = "trivial")]
    Trivial,
}

/// Whether the nonzero kernel points of a 3-isogeny with kernel x-coordinate
/// x0 are real: y is real exactly when the 2-division cubic is nonnegative at x0.
pub fn kernel_real_points(e: &WeierstrassCurve, x0: Option<&BigRational>) -> Result<KernelRealPoints, CurveError> {
    let x0 = x0.ok_or(CurveError::MissingIsogeny)?;
    if rational_sign(&e.two_division_value(x0)) >= 0 {
        Ok(KernelRealPoints::Z3)
    } else {
        Ok(KernelRealPoints::Trivial)
    }
}

/// Twist by d in minimal form together with the image of the kernel
/// x-coordinate x0 of E.
pub fn twist_with_kernel(
    e: &WeierstrassCurve,
    x0: &BigRational,
    d: i64,
) -> Result<(WeierstrassCurve, BigRational), CurveError> {
    let twisted = e.quadratic_twist(d)?;
    let b2 = BigRational::from_integer(e.invariants().b2);
    let short_x = (x0 * BigRational::from_integer(BigInt::from(36))) + b2 * BigRational::from_integer(BigInt::from(3));
    let twisted_x = short_x * BigRational::from_integer(BigInt::from(d));
    let (m, iso) = minimal_model_with_map(&twisted);
    Ok((m, iso.map_x(&twisted_x)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::minimal::minimal_model;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn sign_decides() {
        let e = WeierstrassCurve::from_i64s([0, 0, 0, 216, -54]).unwrap();
        // 4 (216 - 54 + ... ) at x = 6: 4 * (216 + 1296 - 54) > 0
        assert_eq!(kernel_real_points(&e, Some(&q(6))).unwrap(), KernelRealPoints::Z3);
        assert_eq!(kernel_real_points(&e, Some(&q(0))).unwrap(), KernelRealPoints::Trivial);
        assert_eq!(kernel_real_points(&e, None), Err(CurveError::MissingIsogeny));
    }

    #[test]
    fn negative_twist_flips_sign() {
        let e = WeierstrassCurve::from_i64s([0, 0, 0, 216, -54]).unwrap();
        let x0 = q(6);
        let before = rational_sign(&e.two_division_value(&x0));
        for d in [-1i64, -2, -7, 5, 3] {
            let (m, x) = twist_with_kernel(&e, &x0, d).unwrap();
            let after = rational_sign(&m.two_division_value(&x));
            assert_eq!(after, if d < 0 { -before } else { before }, "d = {d}");
            assert_eq!(m, minimal_model(&e.quadratic_twist(d).unwrap()));
        }
    }

    #[test]
    fn real_root_oracle() {
        // the kernel point is real iff y^2 = f(x0)/4 has a real solution; compare
        // against a floating-point evaluation of the short twisted model
        let e = WeierstrassCurve::from_i64s([0, 0, 0, 216, -54]).unwrap();
        for d in [-1i64, -2, -3, -7, 2, 5] {
            let (m, x) = twist_with_kernel(&e, &q(6), d).unwrap();
            let df = d as f64;
            let xs = 6.0 * 36.0 * df;
            let (c4, c6) = (-10368.0f64, 46656.0f64);
            let f = xs.powi(3) - 27.0 * c4 * df * df * xs - 54.0 * c6 * df.powi(3);
            let real = f >= 0.0;
            let got = kernel_real_points(&m, Some(&x)).unwrap() == KernelRealPoints::Z3;
            assert_eq!(got, real, "d = {d}");
        }
    }
}
