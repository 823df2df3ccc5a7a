//! Exact arithmetic in real quadratic fields `Q(√D)`.
//!
//! Every value is kept in the normal form `(p + q√D)/m` with arbitrary-precision
//! integers `p`, `q`, positive `m`, `gcd(p, q, m) = 1`, and `D` squarefree.
//! Rational numbers are the `q = 0` case; they carry the sentinel `D = 0` and
//! mix freely with elements of any concrete field.  Two values are equal iff
//! their normal forms are identical, so `==`, `Hash`, and ordering are exact —
//! no floating point is consulted anywhere except in [`QuadNum::to_f64`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Sentinel discriminant carried by rational values.
pub const RATIONAL: u64 = 0;

/// Largest trial divisor used by [`squarefree_decompose`].  Inputs whose
/// unfactored cofactor is still composite past this bound are rejected rather
/// than silently assumed squarefree.
const TRIAL_DIVISION_CAP: u64 = 10_000_000;

/// Errors raised by quadratic-field arithmetic.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("field mismatch: cannot combine √{0} with √{1}")]
    FieldMismatch(u64, u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator must be nonzero")]
    ZeroDenominator,
    #[error("squarefree decomposition requires n ≥ 1, got {0}")]
    NonPositive(u64),
    #[error("cannot certify the squarefree part of {0}: cofactor after trial division is neither 1 nor prime")]
    SquarefreeCertification(u64),
    #[error("value does not fit in an f64")]
    FloatOverflow,
    #[error("cannot parse {0:?} as a quadratic number")]
    Parse(String),
}

/// Splits `n ≥ 1` as `n = f²·d` with `d` squarefree, by trial division.
///
/// Returns `(f, d)`.  Trial divisors stop at `min(√n, 10⁷)`; if the remaining
/// cofactor could still be composite (only possible for `n` beyond ~10¹⁴) the
/// decomposition is refused instead of guessed.
pub fn squarefree_decompose(n: u64) -> Result<(u64, u64), ExactError> {
    if n == 0 {
        return Err(ExactError::NonPositive(n));
    }
    let mut rem = n;
    let mut f = 1u64;
    let mut d = 1u64;
    let mut p = 2u64;
    while p <= TRIAL_DIVISION_CAP && p * p <= rem {
        if rem % p == 0 {
            let mut e = 0u32;
            while rem % p == 0 {
                rem /= p;
                e += 1;
            }
            f *= p.pow(e / 2);
            if e % 2 == 1 {
                d *= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rem > 1 {
        if p * p <= rem {
            // Trial division hit the cap before √rem: rem may be a product of
            // large primes (possibly a square), so we cannot certify d.
            return Err(ExactError::SquarefreeCertification(n));
        }
        // rem is prime: every divisor ≤ √rem has been removed.
        d *= rem;
    }
    Ok((f, d))
}

/// An exact element `(p + q√D)/m` of a real quadratic field, or a rational.
///
/// Invariants (maintained by every constructor and operation):
/// * `m ≥ 1` and `gcd(p, q, m) = 1`;
/// * `D` is squarefree and `≥ 2` whenever `q ≠ 0`;
/// * `q = 0` forces the rational sentinel `D = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadNum {
    p: BigInt,
    q: BigInt,
    m: BigInt,
    d: u64,
}

impl QuadNum {
    /// Builds `(p + q√d)/m` and normalizes.  `d` need not be squarefree: its
    /// square part is folded into `q`.  Fails only on `m = 0` or when the
    /// squarefree part of `d` cannot be certified.
    pub fn new(
        p: impl Into<BigInt>,
        q: impl Into<BigInt>,
        m: impl Into<BigInt>,
        d: u64,
    ) -> Result<Self, ExactError> {
        let (p, mut q, m) = (p.into(), q.into(), m.into());
        let mut d = d;
        if !q.is_zero() && d > 1 {
            let (f, d0) = squarefree_decompose(d)?;
            q *= f;
            d = d0;
        }
        Self::normalized(p, q, m, d)
    }

    /// Builds the rational `p/m`.
    pub fn rational(p: impl Into<BigInt>, m: impl Into<BigInt>) -> Result<Self, ExactError> {
        Self::normalized(p.into(), BigInt::zero(), m.into(), 0)
    }

    /// The exact square root of `n ≥ 1`, normalized as `f√d`.
    pub fn sqrt(n: u64) -> Result<Self, ExactError> {
        let (f, d) = squarefree_decompose(n)?;
        Self::normalized(BigInt::zero(), BigInt::from(f), BigInt::from(1), d)
    }

    pub fn zero() -> Self {
        Self::from(0)
    }

    pub fn one() -> Self {
        Self::from(1)
    }

    fn normalized(mut p: BigInt, mut q: BigInt, mut m: BigInt, mut d: u64) -> Result<Self, ExactError> {
        if m.is_zero() {
            return Err(ExactError::ZeroDenominator);
        }
        if d == 1 {
            // √1 = 1: fold into the rational part.
            p += &q;
            q = BigInt::zero();
        }
        if d == 0 {
            q = BigInt::zero();
        }
        if q.is_zero() {
            d = RATIONAL;
        }
        if m.is_negative() {
            p = -p;
            q = -q;
            m = -m;
        }
        let g = p.gcd(&q).gcd(&m);
        // g ≥ 1 because m ≠ 0.
        Ok(QuadNum {
            p: p / &g,
            q: q / &g,
            m: m / g,
            d,
        })
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn m(&self) -> &BigInt {
        &self.m
    }

    /// The discriminant `D`, or [`RATIONAL`] (= 0) for rational values.
    pub fn field(&self) -> u64 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.q.is_zero() && self.p == self.m
    }

    pub fn is_rational(&self) -> bool {
        self.d == RATIONAL
    }

    /// True iff the value is an integer (normal form has `q = 0`, `m = 1`).
    pub fn is_integer(&self) -> bool {
        self.q.is_zero() && self.m == BigInt::from(1)
    }

    /// Resolves the common field of two operands: rationals adopt the other
    /// side's field; two distinct irrational fields refuse to combine.
    fn unified_field(&self, other: &Self) -> Result<u64, ExactError> {
        match (self.d, other.d) {
            (a, b) if a == b => Ok(a),
            (RATIONAL, b) => Ok(b),
            (a, RATIONAL) => Ok(a),
            (a, b) => Err(ExactError::FieldMismatch(a, b)),
        }
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self, ExactError> {
        let d = self.unified_field(rhs)?;
        let p = &self.p * &rhs.m + &rhs.p * &self.m;
        let q = &self.q * &rhs.m + &rhs.q * &self.m;
        let m = &self.m * &rhs.m;
        Self::normalized(p, q, m, d)
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self, ExactError> {
        let d = self.unified_field(rhs)?;
        let p = &self.p * &rhs.m - &rhs.p * &self.m;
        let q = &self.q * &rhs.m - &rhs.q * &self.m;
        let m = &self.m * &rhs.m;
        Self::normalized(p, q, m, d)
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self, ExactError> {
        let d = self.unified_field(rhs)?;
        let p = &self.p * &rhs.p + &self.q * &rhs.q * BigInt::from(d);
        let q = &self.p * &rhs.q + &self.q * &rhs.p;
        let m = &self.m * &rhs.m;
        Self::normalized(p, q, m, d)
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ExactError> {
        self.checked_mul(&rhs.checked_inv()?)
    }

    /// Exact reciprocal via the conjugate: `1/x = m(p − q√D)/(p² − q²D)`.
    pub fn checked_inv(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let denom = &self.p * &self.p - &self.q * &self.q * BigInt::from(self.d);
        // denom = 0 would mean √D ∈ Q, impossible for squarefree D ≥ 2.
        debug_assert!(!denom.is_zero());
        Self::normalized(&self.m * &self.p, -(&self.m * &self.q), denom, self.d)
    }

    /// The field conjugate `(p − q√D)/m`.
    pub fn conjugate(&self) -> Self {
        QuadNum {
            p: self.p.clone(),
            q: -&self.q,
            m: self.m.clone(),
            d: if self.q.is_zero() { RATIONAL } else { self.d },
        }
    }

    /// The rational field norm `x · x̄ = (p² − q²D)/m²`.
    pub fn norm(&self) -> Self {
        self.checked_mul(&self.conjugate())
            .expect("conjugate lives in the same field")
    }

    /// Exact sign (−1, 0, +1), decided by integer case analysis on
    /// `p + q√D`: when `p` and `q` disagree in sign, `p²` is compared with `q²D`.
    pub fn signum(&self) -> i32 {
        let sp = sign_of(&self.p);
        let sq = sign_of(&self.q);
        if sq == 0 {
            return sp;
        }
        if sp == 0 || sp == sq {
            return sq;
        }
        let p2 = &self.p * &self.p;
        let q2d = &self.q * &self.q * BigInt::from(self.d);
        match p2.cmp(&q2d) {
            Ordering::Greater => sp,
            Ordering::Less => sq,
            Ordering::Equal => 0,
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    /// Exact comparison; fails when the operands live in distinct fields.
    pub fn try_cmp(&self, other: &Self) -> Result<Ordering, ExactError> {
        let diff = self.checked_sub(other)?;
        Ok(match diff.signum() {
            1 => Ordering::Greater,
            -1 => Ordering::Less,
            _ => Ordering::Equal,
        })
    }

    /// Exact floor, found by binary search on the integer part within the
    /// coarse bound `|p|/m + |q|(⌊√D⌋+1)/m + 2`.
    pub fn floor(&self) -> BigInt {
        if self.is_rational() {
            return self.p.div_floor(&self.m);
        }
        let root = BigInt::from(self.d.isqrt() + 1);
        let bound = (self.p.abs() + self.q.abs() * root) / &self.m + BigInt::from(2);
        let mut lo = -&bound;
        let mut hi = bound;
        let two = BigInt::from(2);
        while lo < hi {
            let mid = (&lo + &hi + BigInt::from(1)).div_floor(&two);
            if QuadNum::from(mid.clone())
                .try_cmp(self)
                .expect("integers mix with any field")
                != Ordering::Greater
            {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        lo
    }

    /// The fractional part `x − ⌊x⌋`, exact and in `[0, 1)`.
    pub fn mod_one(&self) -> Self {
        self.checked_sub(&Self::from(self.floor()))
            .expect("integers mix with any field")
    }

    /// Nearest-ish `f64` value (within 4 ulp).  When `p` and `q` have opposite
    /// signs the conjugate form `(p² − q²D)/(m(p − q√D))` is used so the
    /// subtraction never cancels.  Values beyond `f64` range are an error.
    pub fn to_f64(&self) -> Result<f64, ExactError> {
        let root = (self.d as f64).sqrt();
        let p = big_to_f64(&self.p)?;
        let q = big_to_f64(&self.q)?;
        let m = big_to_f64(&self.m)?;
        let val = if sign_of(&self.p) * sign_of(&self.q) < 0 {
            let num = big_to_f64(&(&self.p * &self.p - &self.q * &self.q * BigInt::from(self.d)))?;
            num / (m * (p - q * root))
        } else {
            (p + q * root) / m
        };
        if val.is_finite() {
            Ok(val)
        } else {
            Err(ExactError::FloatOverflow)
        }
    }

    /// Renders the canonical grammar, with `sqrt(D)` instead of `√D` when
    /// `ascii` is set.
    pub fn render(&self, ascii: bool) -> String {
        if self.q.is_zero() {
            if self.m == BigInt::from(1) {
                return format!("{}", self.p);
            }
            return format!("{}/{}", self.p, self.m);
        }
        let sign = if self.q.is_negative() { '-' } else { '+' };
        let root = if ascii {
            format!("sqrt({})", self.d)
        } else {
            format!("√{}", self.d)
        };
        let body = format!("({}{}{}{})", self.p, sign, self.q.abs(), root);
        if self.m == BigInt::from(1) {
            body
        } else {
            format!("{}/{}", body, self.m)
        }
    }
}

fn sign_of(n: &BigInt) -> i32 {
    match n.sign() {
        num_bigint::Sign::Plus => 1,
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
    }
}

fn big_to_f64(n: &BigInt) -> Result<f64, ExactError> {
    match n.to_f64() {
        Some(v) if v.is_finite() => Ok(v),
        _ => Err(ExactError::FloatOverflow),
    }
}

impl From<i64> for QuadNum {
    fn from(n: i64) -> Self {
        QuadNum {
            p: BigInt::from(n),
            q: BigInt::zero(),
            m: BigInt::from(1),
            d: RATIONAL,
        }
    }
}

impl From<BigInt> for QuadNum {
    fn from(n: BigInt) -> Self {
        QuadNum {
            p: n,
            q: BigInt::zero(),
            m: BigInt::from(1),
            d: RATIONAL,
        }
    }
}

impl fmt::Display for QuadNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

impl PartialOrd for QuadNum {
    /// `None` exactly when the operands live in distinct irrational fields.
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.try_cmp(other).ok()
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident, $what:literal) => {
        impl $trait<&QuadNum> for &QuadNum {
            type Output = QuadNum;
            fn $method(self, rhs: &QuadNum) -> QuadNum {
                self.$checked(rhs).expect($what)
            }
        }
        impl $trait for QuadNum {
            type Output = QuadNum;
            fn $method(self, rhs: QuadNum) -> QuadNum {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&QuadNum> for QuadNum {
            type Output = QuadNum;
            fn $method(self, rhs: &QuadNum) -> QuadNum {
                (&self).$method(rhs)
            }
        }
        impl $trait<QuadNum> for &QuadNum {
            type Output = QuadNum;
            fn $method(self, rhs: QuadNum) -> QuadNum {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add, "field mismatch in +");
forward_binop!(Sub, sub, checked_sub, "field mismatch in -");
forward_binop!(Mul, mul, checked_mul, "field mismatch in *");
forward_binop!(Div, div, checked_div, "field mismatch or zero divisor in /");

impl Neg for &QuadNum {
    type Output = QuadNum;
    fn neg(self) -> QuadNum {
        QuadNum {
            p: -&self.p,
            q: -&self.q,
            m: self.m.clone(),
            d: self.d,
        }
    }
}

impl Neg for QuadNum {
    type Output = QuadNum;
    fn neg(self) -> QuadNum {
        -&self
    }
}

impl FromStr for QuadNum {
    type Err = ExactError;

    /// Parses the canonical grammar `(p±q√D)/m` (with `√D` omitted for
    /// rationals and `/m` omitted when `m = 1`), plus the tolerated variants
    /// `sqrt(D)` for `√D`, an omitted unit coefficient (`√5` for `1√5`), and
    /// an omitted zero rational part (`(2√5)/10`).
    fn from_str(s: &str) -> Result<Self, ExactError> {
        parse_quad(s.trim()).ok_or_else(|| ExactError::Parse(s.to_string()))
    }
}

fn parse_quad(s: &str) -> Option<QuadNum> {
    if let Some(rest) = s.strip_prefix('(') {
        // Last close-paren, so an interior `sqrt(D)` keeps its own.
        let close = rest.rfind(')')?;
        let inner = &rest[..close];
        let tail = &rest[close + 1..];
        let m: BigInt = if tail.is_empty() {
            BigInt::from(1)
        } else {
            tail.strip_prefix('/')?.parse().ok()?
        };
        let (p, q, d) = parse_inner(inner)?;
        QuadNum::new(p, q, m, d).ok()
    } else if s.contains('√') || s.contains("sqrt(") {
        // bare irrational like `√5`, `2√5`, or `-sqrt(3)`
        let (p, q, d) = parse_inner(s)?;
        QuadNum::new(p, q, BigInt::from(1), d).ok()
    } else {
        // rational: `p` or `p/m`
        match s.split_once('/') {
            Some((num, den)) => {
                let p: BigInt = num.trim().parse().ok()?;
                let m: BigInt = den.trim().parse().ok()?;
                QuadNum::rational(p, m).ok()
            }
            None => {
                let p: BigInt = s.parse().ok()?;
                Some(QuadNum::from(p))
            }
        }
    }
}

/// Parses `p ± q√D`, `p ± √D`, `q√D`, `√D`, or a bare integer `p`.
/// Returns `(p, q, d)` with `d = 0` for the purely rational case.
fn parse_inner(s: &str) -> Option<(BigInt, BigInt, u64)> {
    let s = s.trim();
    let (before_root, d) = match s.find('√') {
        Some(i) => {
            let root: u64 = s[i + '√'.len_utf8()..].trim().parse().ok()?;
            (&s[..i], root)
        }
        None => match s.find("sqrt(") {
            Some(i) => {
                let after = &s[i + 5..];
                let close = after.find(')')?;
                if !after[close + 1..].trim().is_empty() {
                    return None;
                }
                let root: u64 = after[..close].trim().parse().ok()?;
                (&s[..i], root)
            }
            None => {
                let p: BigInt = s.parse().ok()?;
                return Some((p, BigInt::zero(), 0));
            }
        },
    };
    // Split `before_root` into the rational part and the coefficient of √D:
    // the coefficient starts after the last interior sign.
    let before = before_root.trim();
    let split = before
        .char_indices()
        .rev()
        .find(|&(i, c)| i > 0 && (c == '+' || c == '-'))
        .map(|(i, _)| i);
    let (p_str, q_str) = match split {
        Some(i) => (&before[..i], &before[i..]),
        None => ("", before),
    };
    let p: BigInt = if p_str.trim().is_empty() {
        BigInt::zero()
    } else {
        p_str.trim().parse().ok()?
    };
    let q_str = q_str.trim();
    let q: BigInt = match q_str {
        "" | "+" => BigInt::from(1),
        "-" => BigInt::from(-1),
        other => other.parse().ok()?,
    };
    Some((p, q, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qn(p: i64, q: i64, m: i64, d: u64) -> QuadNum {
        QuadNum::new(p, q, m, d).unwrap()
    }

    #[test]
    fn squarefree_small_cases() {
        assert_eq!(squarefree_decompose(1).unwrap(), (1, 1));
        assert_eq!(squarefree_decompose(5).unwrap(), (1, 5));
        assert_eq!(squarefree_decompose(12).unwrap(), (2, 3));
        assert_eq!(squarefree_decompose(720).unwrap(), (12, 5));
        assert_eq!(squarefree_decompose(49).unwrap(), (7, 1));
        assert!(matches!(
            squarefree_decompose(0),
            Err(ExactError::NonPositive(0))
        ));
    }

    #[test]
    fn squarefree_recomposes_and_is_squarefree() {
        for n in 1..5000u64 {
            let (f, d) = squarefree_decompose(n).unwrap();
            assert_eq!(f * f * d, n, "f²d must recompose {n}");
            for p in 2..=d.isqrt() {
                assert!(d % (p * p) != 0, "{d} has square divisor {p}²");
            }
        }
    }

    #[test]
    fn construction_normalizes() {
        // √12 folds into 2√3.
        let x = qn(0, 1, 1, 12);
        assert_eq!(x, qn(0, 2, 1, 3));
        // Common content divides out.
        assert_eq!(qn(6, 0, 3, 0), QuadNum::from(2));
        assert!(qn(6, 0, 3, 0).is_integer());
        // Negative denominators flip the numerator.
        assert_eq!(qn(1, 1, -2, 5), qn(-1, -1, 2, 5));
        // √1 is rational; q = 0 forces the sentinel.
        assert!(qn(3, 7, 2, 1).is_rational());
        assert_eq!(qn(3, 7, 2, 1), QuadNum::from(5));
        assert_eq!(qn(3, 0, 1, 5).field(), RATIONAL);
        // m = 0 is refused.
        assert!(matches!(
            QuadNum::new(1, 1, 0, 5),
            Err(ExactError::ZeroDenominator)
        ));
    }

    #[test]
    fn golden_ratio_arithmetic() {
        let phi = qn(1, 1, 2, 5);
        let phi_bar = phi.conjugate();
        assert_eq!(&phi * &phi_bar, QuadNum::from(-1));
        assert_eq!(&phi + &phi_bar, QuadNum::from(1));
        // φ² = φ + 1
        assert_eq!(&phi * &phi, &phi + &QuadNum::one());
        // Inverse: 1/φ = φ − 1
        assert_eq!(phi.checked_inv().unwrap(), &phi - &QuadNum::one());
        assert_eq!(phi.norm(), QuadNum::from(-1));
    }

    #[test]
    fn field_mismatch_is_reported() {
        let a = qn(0, 1, 1, 5);
        let b = qn(0, 1, 1, 3);
        assert!(matches!(
            a.checked_add(&b),
            Err(ExactError::FieldMismatch(5, 3))
        ));
        assert_eq!(a.partial_cmp(&b), None);
        // Rationals interoperate with every field.
        let half = QuadNum::rational(1, 2).unwrap();
        assert_eq!((&a + &half).field(), 5);
        assert_eq!((&b * &half).field(), 3);
    }

    #[test]
    fn exact_comparison_cases() {
        let phi = qn(1, 1, 2, 5);
        assert_eq!(phi.try_cmp(&QuadNum::one()).unwrap(), Ordering::Greater);
        assert_eq!(phi.try_cmp(&QuadNum::from(2)).unwrap(), Ordering::Less);
        let lam_s = qn(1, -1, 2, 5); // (1−√5)/2 ≈ −0.618
        assert_eq!(lam_s.signum(), -1);
        assert_eq!(lam_s.try_cmp(&QuadNum::zero()).unwrap(), Ordering::Less);
        assert_eq!(
            lam_s.try_cmp(&QuadNum::from(-1)).unwrap(),
            Ordering::Greater
        );
        // √5 vs 9/4: 2.236… < 2.25, a same-sign comparison decided by p² vs q²D.
        let root5 = QuadNum::sqrt(5).unwrap();
        let nine_quarters = QuadNum::rational(9, 4).unwrap();
        assert_eq!(root5.try_cmp(&nine_quarters).unwrap(), Ordering::Less);
        assert_eq!(root5.try_cmp(&root5).unwrap(), Ordering::Equal);
    }

    #[test]
    fn floor_and_mod_one() {
        // 7/2 → 1/2
        assert_eq!(
            QuadNum::rational(7, 2).unwrap().mod_one(),
            QuadNum::rational(1, 2).unwrap()
        );
        // Already in [0,1): fixed point.
        let theta1 = qn(5, 1, 10, 5);
        assert_eq!(theta1.mod_one(), theta1);
        // −√5/5 ≈ −0.447 → 1 − √5/5 = (5−√5)/5
        let neg = qn(0, -1, 5, 5);
        assert_eq!(neg.floor(), BigInt::from(-1));
        assert_eq!(neg.mod_one(), qn(5, -1, 5, 5));
        // Negative rationals floor downward.
        assert_eq!(QuadNum::rational(-7, 2).unwrap().floor(), BigInt::from(-4));
        // Integers are fixed by floor.
        assert_eq!(QuadNum::from(-3).floor(), BigInt::from(-3));
        assert_eq!(QuadNum::from(-3).mod_one(), QuadNum::zero());
        // φ⁵ = (11 + 5√5)/2 ≈ 11.09: floor 11.
        let phi5 = qn(11, 5, 2, 5);
        assert_eq!(phi5.floor(), BigInt::from(11));
    }

    #[test]
    fn float_conversion_matches_reference_values() {
        // Reference decimals expanded by hand from √5 = 2.2360679774997896964…
        // and √3 = 1.7320508075688772935…
        let theta1 = qn(5, 1, 10, 5);
        assert!((theta1.to_f64().unwrap() - 0.723_606_797_749_979_0).abs() < 1e-15);
        let x = qn(0, 1, 6, 3);
        assert!((x.to_f64().unwrap() - 0.288_675_134_594_812_9).abs() < 1e-15);
        // Cancellation-prone value: λ_s for the trace-4 case, 2 − √3 ≈ 0.2679.
        let lam = qn(2, -1, 1, 3);
        assert!((lam.to_f64().unwrap() - 0.267_949_192_431_122_7).abs() < 1e-15);
        assert_eq!(QuadNum::rational(1, 2).unwrap().to_f64().unwrap(), 0.5);
    }

    #[test]
    fn display_grammar_is_canonical() {
        assert_eq!(qn(5, 1, 10, 5).to_string(), "(5+1√5)/10");
        assert_eq!(qn(0, 1, 6, 3).to_string(), "(0+1√3)/6");
        assert_eq!(qn(5, -1, 10, 5).to_string(), "(5-1√5)/10");
        assert_eq!(qn(-1, 1, 2, 5).to_string(), "(-1+1√5)/2");
        assert_eq!(qn(2, 1, 1, 3).to_string(), "(2+1√3)");
        assert_eq!(QuadNum::from(3).to_string(), "3");
        assert_eq!(QuadNum::from(-3).to_string(), "-3");
        assert_eq!(QuadNum::rational(1, 2).unwrap().to_string(), "1/2");
        assert_eq!(qn(5, 1, 10, 5).render(true), "(5+1sqrt(5))/10");
    }

    #[test]
    fn parser_accepts_grammar_and_variants() {
        let theta1 = qn(5, 1, 10, 5);
        assert_eq!("(5+1√5)/10".parse::<QuadNum>().unwrap(), theta1);
        assert_eq!("(5+1sqrt(5))/10".parse::<QuadNum>().unwrap(), theta1);
        assert_eq!("(5+√5)/10".parse::<QuadNum>().unwrap(), theta1);
        assert_eq!("3".parse::<QuadNum>().unwrap(), QuadNum::from(3));
        assert_eq!(
            "1/2".parse::<QuadNum>().unwrap(),
            QuadNum::rational(1, 2).unwrap()
        );
        assert_eq!("(0+1√3)/6".parse::<QuadNum>().unwrap(), qn(0, 1, 6, 3));
        assert_eq!("(2√5)/10".parse::<QuadNum>().unwrap(), qn(0, 2, 10, 5));
        assert_eq!("√5".parse::<QuadNum>().unwrap(), qn(0, 1, 1, 5));
        assert_eq!("-√5".parse::<QuadNum>().unwrap(), qn(0, -1, 1, 5));
        assert_eq!("(5-1√5)/10".parse::<QuadNum>().unwrap(), qn(5, -1, 10, 5));
        // Non-squarefree roots normalize on the way in.
        assert_eq!("√12".parse::<QuadNum>().unwrap(), qn(0, 2, 1, 3));
        for bad in ["", "1,1;1,0", "(5+1√5", "(5+1√5)/", "x", "√-3", "1/0"] {
            assert!(bad.parse::<QuadNum>().is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn parse_display_round_trip() {
        let samples = [
            qn(5, 1, 10, 5),
            qn(5, -1, 10, 5),
            qn(-7, 3, 4, 6),
            qn(0, 2, 10, 5),
            qn(3, 0, 7, 0),
            QuadNum::from(0),
            QuadNum::from(-12),
        ];
        for x in &samples {
            assert_eq!(&x.to_string().parse::<QuadNum>().unwrap(), x);
            assert_eq!(&x.render(true).parse::<QuadNum>().unwrap(), x);
        }
    }

    proptest::proptest! {
        #[test]
        fn field_axioms(
            (pa, qa, ma) in (-40i64..40, -40i64..40, 1i64..20),
            (pb, qb, mb) in (-40i64..40, -40i64..40, 1i64..20),
            (pc, qc, mc) in (-40i64..40, -40i64..40, 1i64..20),
            d in proptest::sample::select(vec![2u64, 3, 5, 6, 7, 10, 13]),
        ) {
            let a = qn(pa, qa, ma, d);
            let b = qn(pb, qb, mb, d);
            let c = qn(pc, qc, mc, d);
            proptest::prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            proptest::prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            proptest::prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            proptest::prop_assert_eq!(&a + &b, &b + &a);
            proptest::prop_assert_eq!(&(&a - &b) + &b, a.clone());
            if !a.is_zero() {
                proptest::prop_assert_eq!(&a * &a.checked_inv().unwrap(), QuadNum::one());
            }
        }

        #[test]
        fn mod_one_lands_in_unit_interval(
            p in -200i64..200, q in -200i64..200, m in 1i64..40,
            d in proptest::sample::select(vec![2u64, 3, 5, 7, 11]),
        ) {
            let x = qn(p, q, m, d);
            let r = x.mod_one();
            proptest::prop_assert!(r.signum() >= 0);
            proptest::prop_assert_eq!(r.try_cmp(&QuadNum::one()).unwrap(), Ordering::Less);
            proptest::prop_assert!((&x - &r).is_integer());
        }

        #[test]
        fn comparison_agrees_with_floats(
            p in -100i64..100, q in -100i64..100, m in 1i64..20,
            p2 in -100i64..100, q2 in -100i64..100, m2 in 1i64..20,
            d in proptest::sample::select(vec![2u64, 3, 5, 7]),
        ) {
            let a = qn(p, q, m, d);
            let b = qn(p2, q2, m2, d);
            let (fa, fb) = (a.to_f64().unwrap(), b.to_f64().unwrap());
            if (fa - fb).abs() > 1e-9 {
                let expect = if fa < fb { Ordering::Less } else { Ordering::Greater };
                proptest::prop_assert_eq!(a.try_cmp(&b).unwrap(), expect);
            }
        }

        #[test]
        fn float_matches_naive_evaluation(
            p in -1000i64..1000, q in -1000i64..1000, m in 1i64..100,
            d in proptest::sample::select(vec![2u64, 3, 5, 7, 13]),
        ) {
            let x = qn(p, q, m, d);
            let naive = (p as f64 + q as f64 * (d as f64).sqrt()) / m as f64;
            let got = x.to_f64().unwrap();
            proptest::prop_assert!((got - naive).abs() <= 1e-9 * naive.abs().max(1.0));
        }
    }
}
