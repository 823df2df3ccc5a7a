//! Integer 2×2 matrices and exact certification of hyperbolic ones.
//!
//! A matrix with `det = ±1` acts on the 2-torus; it is hyperbolic when no
//! eigenvalue has modulus 1, which for the integer case reduces to a pure
//! trace/determinant test.  [`HypMatrix::certify`] upgrades such a matrix to
//! one carrying its eigenvalues and projective eigenvectors as exact
//! quadratic-field data, with the spectral identities checked on the spot.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::exactfield::{ExactError, QuadNum};

/// Errors raised by matrix construction, inversion, and certification.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("matrix is not hyperbolic (det={det}, trace={trace})")]
    NotHyperbolic { det: i64, trace: i64 },
    #[error("matrix is not invertible over the integers (det={0})")]
    NotInvertible(i64),
    #[error("cannot parse {0:?} as a matrix (expected \"a,b;c,d\")")]
    Parse(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// A 2×2 integer matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mat2Z {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl Mat2Z {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        Mat2Z { a, b, c, d }
    }

    pub fn identity() -> Self {
        Mat2Z::new(1, 0, 0, 1)
    }

    pub fn det(&self) -> i64 {
        let det = self.a as i128 * self.d as i128 - self.b as i128 * self.c as i128;
        i64::try_from(det).expect("determinant exceeds i64: matrix outside supported scale")
    }

    pub fn trace(&self) -> i64 {
        self.a.checked_add(self.d).expect("trace exceeds i64")
    }

    pub fn transpose(&self) -> Self {
        Mat2Z::new(self.a, self.c, self.b, self.d)
    }

    /// The trace/determinant hyperbolicity test: `det = ±1`, and the trace
    /// keeps both eigenvalues off the unit circle (`|tr| > 2` when `det = 1`;
    /// `tr ≠ 0` when `det = −1`).
    pub fn is_hyperbolic(&self) -> bool {
        match self.det() {
            1 => self.trace().abs() > 2,
            -1 => self.trace() != 0,
            _ => false,
        }
    }

    /// Integer inverse; requires `det = ±1`.
    pub fn inv(&self) -> Result<Self, MatrixError> {
        let adj = Mat2Z::new(self.d, -self.b, -self.c, self.a);
        match self.det() {
            1 => Ok(adj),
            -1 => Ok(Mat2Z::new(-adj.a, -adj.b, -adj.c, -adj.d)),
            det => Err(MatrixError::NotInvertible(det)),
        }
    }

    /// Integer power; negative exponents invert first (so they require
    /// `det = ±1`).
    pub fn pow(&self, n: i64) -> Result<Self, MatrixError> {
        let base = if n < 0 { self.inv()? } else { *self };
        let mut result = Mat2Z::identity();
        let mut square = base;
        let mut e = n.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                result = result * square;
            }
            square = square * square;
            e >>= 1;
        }
        Ok(result)
    }

    /// Compact JSON form `{"rows":[[a,b],[c,d]]}`.
    pub fn to_json(&self) -> String {
        format!(
            "{{\"rows\":[[{},{}],[{},{}]]}}",
            self.a, self.b, self.c, self.d
        )
    }

    pub fn from_json(s: &str) -> Result<Self, MatrixError> {
        let parse = || -> Option<Mat2Z> {
            let v: serde_json::Value = serde_json::from_str(s).ok()?;
            let rows = v.get("rows")?.as_array()?;
            if rows.len() != 2 {
                return None;
            }
            let mut entries = [0i64; 4];
            for (i, row) in rows.iter().enumerate() {
                let row = row.as_array()?;
                if row.len() != 2 {
                    return None;
                }
                entries[2 * i] = row[0].as_i64()?;
                entries[2 * i + 1] = row[1].as_i64()?;
            }
            Some(Mat2Z::new(entries[0], entries[1], entries[2], entries[3]))
        };
        parse().ok_or_else(|| MatrixError::Parse(s.to_string()))
    }
}

impl std::ops::Mul for Mat2Z {
    type Output = Mat2Z;

    fn mul(self, rhs: Mat2Z) -> Mat2Z {
        let prod = |x: i64, y: i64, z: i64, w: i64| -> i64 {
            let v = x as i128 * y as i128 + z as i128 * w as i128;
            i64::try_from(v).expect("matrix product exceeds i64: outside supported scale")
        };
        Mat2Z::new(
            prod(self.a, rhs.a, self.b, rhs.c),
            prod(self.a, rhs.b, self.b, rhs.d),
            prod(self.c, rhs.a, self.d, rhs.c),
            prod(self.c, rhs.b, self.d, rhs.d),
        )
    }
}

impl fmt::Display for Mat2Z {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{};{},{}", self.a, self.b, self.c, self.d)
    }
}

impl FromStr for Mat2Z {
    type Err = MatrixError;

    /// Parses the row form `a,b;c,d`.
    fn from_str(s: &str) -> Result<Self, MatrixError> {
        let parse = || -> Option<Mat2Z> {
            let (top, bottom) = s.trim().split_once(';')?;
            let (a, b) = top.split_once(',')?;
            let (c, d) = bottom.split_once(',')?;
            Some(Mat2Z::new(
                a.trim().parse().ok()?,
                b.trim().parse().ok()?,
                c.trim().parse().ok()?,
                d.trim().parse().ok()?,
            ))
        };
        parse().ok_or_else(|| MatrixError::Parse(s.to_string()))
    }
}

/// A certified hyperbolic matrix: the underlying `Mat2Z` plus exact spectral
/// data in `Q(√D)`, where `Δ = tr² − 4·det = f²·D`.
///
/// The projective eigenvectors use the representative `(b, λ − a)`, which is
/// valid because a hyperbolic integer matrix always has `b ≠ 0` and `c ≠ 0`
/// (otherwise an eigenvalue would be a unit integer, hence of modulus 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypMatrix {
    mat: Mat2Z,
    delta: u64,
    sqrt_delta: QuadNum,
    lambda_u: QuadNum,
    lambda_s: QuadNum,
    v_u: (QuadNum, QuadNum),
    v_s: (QuadNum, QuadNum),
}

impl HypMatrix {
    /// Certifies hyperbolicity and computes the exact spectral data:
    /// `λ = (tr ± √Δ)/2` with the unstable root selected by `|λ| > 1`.
    pub fn certify(mat: Mat2Z) -> Result<Self, MatrixError> {
        if !mat.is_hyperbolic() {
            return Err(MatrixError::NotHyperbolic {
                det: mat.det(),
                trace: mat.trace(),
            });
        }
        let t = mat.trace();
        let delta_wide = t as i128 * t as i128 - 4 * mat.det() as i128;
        debug_assert!(delta_wide > 0);
        let delta = u64::try_from(delta_wide).expect("discriminant outside supported scale");
        let sqrt_delta = QuadNum::sqrt(delta)?;
        let two = QuadNum::from(2);
        let lam_plus = (QuadNum::from(t) + &sqrt_delta) / &two;
        let lam_minus = (QuadNum::from(t) - &sqrt_delta) / &two;
        let one = QuadNum::one();
        let (lambda_u, lambda_s) = if lam_plus.abs() > one {
            (lam_plus, lam_minus)
        } else {
            (lam_minus, lam_plus)
        };
        debug_assert!(lambda_u.abs() > QuadNum::one() && lambda_s.abs() < QuadNum::one());
        let eigenvector = |lam: &QuadNum| (QuadNum::from(mat.b), lam - &QuadNum::from(mat.a));
        let certified = HypMatrix {
            mat,
            delta,
            sqrt_delta,
            v_u: eigenvector(&lambda_u),
            v_s: eigenvector(&lambda_s),
            lambda_u,
            lambda_s,
        };
        debug_assert!(certified.spectral_identities_hold());
        Ok(certified)
    }

    pub fn mat(&self) -> &Mat2Z {
        &self.mat
    }

    pub fn det(&self) -> i64 {
        self.mat.det()
    }

    pub fn trace(&self) -> i64 {
        self.mat.trace()
    }

    /// `Δ = tr² − 4·det`, always positive and never a perfect square here.
    pub fn delta(&self) -> u64 {
        self.delta
    }

    /// The positive root `√Δ = f√D` as an exact value.
    pub fn sqrt_delta(&self) -> &QuadNum {
        &self.sqrt_delta
    }

    /// The squarefree discriminant `D` of the field `Q(√D)` the data lives in.
    pub fn discriminant_field(&self) -> u64 {
        self.sqrt_delta.field()
    }

    pub fn lambda_u(&self) -> &QuadNum {
        &self.lambda_u
    }

    pub fn lambda_s(&self) -> &QuadNum {
        &self.lambda_s
    }

    /// Unstable projective eigenvector `(b, λ_u − a)`.
    pub fn v_u(&self) -> &(QuadNum, QuadNum) {
        &self.v_u
    }

    /// Stable projective eigenvector `(b, λ_s − a)`.
    pub fn v_s(&self) -> &(QuadNum, QuadNum) {
        &self.v_s
    }

    /// Checks `λ_u·λ_s = det`, `λ_u + λ_s = tr`, and `A·v = λ·v` for both
    /// eigenpairs, all exactly.
    pub fn spectral_identities_hold(&self) -> bool {
        let det = QuadNum::from(self.det());
        let tr = QuadNum::from(self.trace());
        if &self.lambda_u * &self.lambda_s != det || &self.lambda_u + &self.lambda_s != tr {
            return false;
        }
        let apply = |v: &(QuadNum, QuadNum)| {
            (
                &(&QuadNum::from(self.mat.a) * &v.0) + &(&QuadNum::from(self.mat.b) * &v.1),
                &(&QuadNum::from(self.mat.c) * &v.0) + &(&QuadNum::from(self.mat.d) * &v.1),
            )
        };
        let scaled = |lam: &QuadNum, v: &(QuadNum, QuadNum)| (lam * &v.0, lam * &v.1);
        apply(&self.v_u) == scaled(&self.lambda_u, &self.v_u)
            && apply(&self.v_s) == scaled(&self.lambda_s, &self.v_s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(a: i64, b: i64, c: i64, d: i64) -> Mat2Z {
        Mat2Z::new(a, b, c, d)
    }

    #[test]
    fn hyperbolicity_test_cases() {
        assert!(m(1, 1, 1, 0).is_hyperbolic()); // det −1, trace 1
        assert!(m(2, 1, 1, 1).is_hyperbolic()); // det 1, trace 3
        assert!(m(3, 1, 2, 1).is_hyperbolic()); // det 1, trace 4
        assert!(m(-2, 1, 1, -1).is_hyperbolic()); // det 1, trace −3
        assert!(!m(1, 1, 0, 1).is_hyperbolic()); // parabolic shear
        assert!(!m(0, -1, 1, 0).is_hyperbolic()); // rotation, det 1, trace 0
        assert!(!m(0, 1, 1, 0).is_hyperbolic()); // det −1, trace 0
        assert!(!m(2, 0, 0, 2).is_hyperbolic()); // det 4
        // det −1 with any nonzero trace qualifies, even |trace| ≤ 2.
        assert!(m(2, 1, 1, 0).is_hyperbolic());
        assert!(m(1, 1, 2, 1).is_hyperbolic()); // det −1, trace 2
    }

    #[test]
    fn certify_golden_mean_matrix() {
        let h = HypMatrix::certify(m(1, 1, 1, 0)).unwrap();
        assert_eq!(h.delta(), 5);
        assert_eq!(h.discriminant_field(), 5);
        assert_eq!(h.lambda_u(), &QuadNum::new(1, 1, 2, 5).unwrap());
        assert_eq!(h.lambda_s(), &QuadNum::new(1, -1, 2, 5).unwrap());
        assert_eq!(h.v_u().0, QuadNum::one());
        assert_eq!(h.v_u().1, QuadNum::new(-1, 1, 2, 5).unwrap());
        assert!(h.spectral_identities_hold());
    }

    #[test]
    fn certify_trace_four_matrix() {
        let h = HypMatrix::certify(m(3, 1, 2, 1)).unwrap();
        assert_eq!(h.delta(), 12);
        assert_eq!(h.discriminant_field(), 3);
        assert_eq!(h.sqrt_delta(), &QuadNum::new(0, 2, 1, 3).unwrap());
        assert_eq!(h.lambda_u(), &QuadNum::new(2, 1, 1, 3).unwrap());
        assert_eq!(h.lambda_s(), &QuadNum::new(2, -1, 1, 3).unwrap());
    }

    #[test]
    fn certify_negative_trace_selects_unstable_root() {
        // trace −3: the unstable eigenvalue is the one below −1.
        let h = HypMatrix::certify(m(-2, 1, 1, -1)).unwrap();
        assert_eq!(h.lambda_u(), &QuadNum::new(-3, -1, 2, 5).unwrap());
        assert_eq!(h.lambda_s(), &QuadNum::new(-3, 1, 2, 5).unwrap());
        assert_eq!(h.v_u().1, QuadNum::new(1, -1, 2, 5).unwrap());
        assert_eq!(h.v_s().1, QuadNum::new(1, 1, 2, 5).unwrap());
        assert!(h.spectral_identities_hold());
    }

    #[test]
    fn certify_rejects_non_hyperbolic() {
        let err = HypMatrix::certify(m(0, 1, 1, 0)).unwrap_err();
        assert_eq!(
            err.to_string(),
            "matrix is not hyperbolic (det=-1, trace=0)"
        );
        assert!(HypMatrix::certify(m(1, 1, 0, 1)).is_err());
    }

    #[test]
    fn matrix_algebra() {
        let a = m(1, 1, 1, 0);
        assert_eq!(a.inv().unwrap(), m(0, 1, 1, -1));
        assert_eq!(a * a.inv().unwrap(), Mat2Z::identity());
        assert_eq!(a.pow(2).unwrap(), m(2, 1, 1, 1));
        assert_eq!(a.pow(0).unwrap(), Mat2Z::identity());
        assert_eq!(a.pow(-1).unwrap(), a.inv().unwrap());
        assert_eq!(a.pow(-3).unwrap(), a.inv().unwrap().pow(3).unwrap());
        // Fibonacci growth: A¹⁰ entries are F(11), F(10); F(9).
        assert_eq!(a.pow(10).unwrap(), m(89, 55, 55, 34));
        assert!(matches!(
            m(2, 0, 0, 2).inv(),
            Err(MatrixError::NotInvertible(4))
        ));
    }

    #[test]
    fn parse_and_display() {
        let a: Mat2Z = "1,1;1,0".parse().unwrap();
        assert_eq!(a, m(1, 1, 1, 0));
        assert_eq!(a.to_string(), "1,1;1,0");
        let b: Mat2Z = " -2 , 1 ; 1 , -1 ".parse().unwrap();
        assert_eq!(b, m(-2, 1, 1, -1));
        for bad in ["", "1,1", "1,1;1", "1,1;1,x", "1;1,0", "1,1,1;1,0,0"] {
            assert!(bad.parse::<Mat2Z>().is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn json_round_trip() {
        let a = m(3, 1, 2, 1);
        assert_eq!(a.to_json(), "{\"rows\":[[3,1],[2,1]]}");
        assert_eq!(Mat2Z::from_json(&a.to_json()).unwrap(), a);
        assert!(Mat2Z::from_json("{\"rows\":[[1,2],[3]]}").is_err());
        assert!(Mat2Z::from_json("not json").is_err());
    }

    #[test]
    fn conjugation_preserves_certificates() {
        let a = m(1, 1, 1, 0);
        let g = m(2, 1, 1, 1); // det 1
        let conj = g.inv().unwrap() * a * g;
        let ha = HypMatrix::certify(a).unwrap();
        let hc = HypMatrix::certify(conj).unwrap();
        assert_eq!(ha.delta(), hc.delta());
        assert_eq!(ha.lambda_u(), hc.lambda_u());
        assert_eq!(ha.lambda_s(), hc.lambda_s());
    }
}
