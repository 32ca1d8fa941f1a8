use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::FieldError;

/// An element `a + b√d` of the real quadratic field ℚ(√d).
///
/// `d = 1` is the rational field; its elements always carry `b = 0` and
/// coerce into any other discriminant on contact.
#[derive(Clone, Debug)]
pub struct FieldScalar {
    a: BigRational,
    b: BigRational,
    d: u32,
}

/// Returns true when `d` has no repeated prime factor.
pub fn is_squarefree(d: u32) -> bool {
    if d == 0 {
        return false;
    }
    let mut k = 2u64;
    let d = d as u64;
    while k * k <= d {
        if d.is_multiple_of(k * k) {
            return false;
        }
        k += 1;
    }
    true
}

impl FieldScalar {
    pub fn new(a: BigRational, b: BigRational, d: u32) -> Result<Self, FieldError> {
        if !is_squarefree(d) {
            return Err(FieldError::InvalidDiscriminant(d));
        }
        if d == 1 {
            // √1 = 1 folds into the rational part.
            return Ok(Self { a: a + b, b: BigRational::zero(), d });
        }
        Ok(Self { a, b, d })
    }

    pub fn rational(a: BigRational) -> Self {
        Self { a, b: BigRational::zero(), d: 1 }
    }

    pub fn from_int(n: i64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Result<Self, FieldError> {
        if den == 0 {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Self::rational(BigRational::new(num.into(), den.into())))
    }

    /// Builds `(a_num/a_den) + (b_num/b_den)√d`, the four-integer form used by data files.
    pub fn from_parts(a_num: i64, a_den: i64, b_num: i64, b_den: i64, d: u32) -> Result<Self, FieldError> {
        if a_den == 0 || b_den == 0 {
            return Err(FieldError::DivisionByZero);
        }
        Self::new(
            BigRational::new(a_num.into(), a_den.into()),
            BigRational::new(b_num.into(), b_den.into()),
            d,
        )
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// `√d` itself.
    pub fn sqrt_d(d: u32) -> Result<Self, FieldError> {
        Self::new(BigRational::zero(), BigRational::one(), d)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn surd_part(&self) -> &BigRational {
        &self.b
    }

    pub fn discriminant(&self) -> u32 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    /// Discriminant shared by `self` and `other`, with `d = 1` coercing upward.
    pub fn common_discriminant(&self, other: &Self) -> Result<u32, FieldError> {
        match (self.d, other.d) {
            (x, y) if x == y => Ok(x),
            (1, y) if self.b.is_zero() => Ok(y),
            (x, 1) if other.b.is_zero() => Ok(x),
            (x, y) => Err(FieldError::DiscriminantMismatch { left: x, right: y }),
        }
    }

    /// Re-tags a rational element with discriminant `d`.
    pub fn coerce(&self, d: u32) -> Result<Self, FieldError> {
        if self.d == d {
            return Ok(self.clone());
        }
        if self.d == 1 {
            return Self::new(self.a.clone(), BigRational::zero(), d);
        }
        Err(FieldError::DiscriminantMismatch { left: self.d, right: d })
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, FieldError> {
        let d = self.common_discriminant(other)?;
        Ok(Self { a: &self.a + &other.a, b: &self.b + &other.b, d })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, FieldError> {
        let d = self.common_discriminant(other)?;
        Ok(Self { a: &self.a - &other.a, b: &self.b - &other.b, d })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, FieldError> {
        let d = self.common_discriminant(other)?;
        let dd = BigRational::from_integer(BigInt::from(d));
        let a = &self.a * &other.a + &self.b * &other.b * dd;
        let b = &self.a * &other.b + &self.b * &other.a;
        Ok(Self { a, b, d })
    }

    /// Field norm `a² − d·b²`, nonzero for every nonzero element.
    pub fn norm(&self) -> BigRational {
        let dd = BigRational::from_integer(BigInt::from(self.d));
        &self.a * &self.a - &self.b * &self.b * dd
    }

    pub fn conjugate(&self) -> Self {
        Self { a: self.a.clone(), b: -&self.b, d: self.d }
    }

    pub fn inverse(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let n = self.norm();
        Ok(Self { a: &self.a / &n, b: -&self.b / &n, d: self.d })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, FieldError> {
        self.common_discriminant(other)?;
        self.checked_mul(&other.inverse()?)
    }

    /// Sign of the real number `a + b√d`, decided exactly.
    pub fn signum(&self) -> i32 {
        let sa = sign_of(&self.a);
        let sb = sign_of(&self.b);
        if sb == 0 || sa == sb {
            return if sa != 0 { sa } else { sb };
        }
        if sa == 0 {
            return sb;
        }
        // Opposite signs: compare a² with d·b².
        let dd = BigRational::from_integer(BigInt::from(self.d));
        let lhs = &self.a * &self.a;
        let rhs = &self.b * &self.b * dd;
        match lhs.cmp(&rhs) {
            std::cmp::Ordering::Greater => sa,
            std::cmp::Ordering::Less => sb,
            std::cmp::Ordering::Equal => 0,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    /// Real value of `a + b√d` in double precision.
    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        if self.b.is_zero() {
            return a;
        }
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * (self.d as f64).sqrt()
    }

    /// Least common multiple of the two denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.a.denom().lcm(self.b.denom())
    }

    /// Integer components `(a·k, b·k)`; `k` must clear both denominators.
    pub fn scaled_integers(&self, k: &BigInt) -> (BigInt, BigInt) {
        let a = &self.a * BigRational::from_integer(k.clone());
        let b = &self.b * BigRational::from_integer(k.clone());
        debug_assert!(a.is_integer() && b.is_integer());
        (a.to_integer(), b.to_integer())
    }

    /// Rebuilds an element from integer components `(a + b√d) / den`.
    pub fn from_integers(a: BigInt, b: BigInt, den: BigInt, d: u32) -> Self {
        let a = BigRational::new(a, den.clone());
        let b = if d == 1 { BigRational::zero() } else { BigRational::new(b, den) };
        Self { a, b, d }
    }
}

fn sign_of(x: &BigRational) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

impl PartialEq for FieldScalar {
    fn eq(&self, other: &Self) -> bool {
        if self.a != other.a || self.b != other.b {
            return false;
        }
        self.d == other.d || self.b.is_zero()
    }
}

impl Eq for FieldScalar {}

impl fmt::Display for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "{}√{}", self.b, self.d)
        } else if self.b.is_negative() {
            write!(f, "{} - {}√{}", self.a, -&self.b, self.d)
        } else {
            write!(f, "{} + {}√{}", self.a, self.b, self.d)
        }
    }
}

// The operator impls panic on a discriminant mismatch; use the `checked_*`
// methods where the operands come from different sources.
impl Add for &FieldScalar {
    type Output = FieldScalar;
    fn add(self, rhs: &FieldScalar) -> FieldScalar {
        self.checked_add(rhs).expect("field addition")
    }
}

impl Sub for &FieldScalar {
    type Output = FieldScalar;
    fn sub(self, rhs: &FieldScalar) -> FieldScalar {
        self.checked_sub(rhs).expect("field subtraction")
    }
}

impl Mul for &FieldScalar {
    type Output = FieldScalar;
    fn mul(self, rhs: &FieldScalar) -> FieldScalar {
        self.checked_mul(rhs).expect("field multiplication")
    }
}

impl Neg for &FieldScalar {
    type Output = FieldScalar;
    fn neg(self) -> FieldScalar {
        FieldScalar { a: -&self.a, b: -&self.b, d: self.d }
    }
}

impl Neg for FieldScalar {
    type Output = FieldScalar;
    fn neg(self) -> FieldScalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q2(a: i64, b: i64) -> FieldScalar {
        FieldScalar::from_parts(a, 1, b, 1, 2).unwrap()
    }

    #[test]
    fn componentwise_addition() {
        let x = q2(1, 0);
        let y = q2(0, 1);
        assert_eq!(x.checked_add(&y).unwrap(), q2(1, 1));
    }

    #[test]
    fn sqrt_d_squares_to_d() {
        let r = q2(0, 1);
        assert_eq!(&r * &r, q2(2, 0));
    }

    #[test]
    fn inverse_rationalizes_denominator() {
        // (1 + √2)(−1 + √2) = 1
        let x = q2(1, 1);
        assert_eq!(x.inverse().unwrap(), q2(-1, 1));
        assert!((&x * &x.inverse().unwrap()).is_one());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let x = q2(3, 1);
        assert!(matches!(x.checked_div(&FieldScalar::zero()), Err(FieldError::DivisionByZero)));
        assert!(matches!(FieldScalar::zero().inverse(), Err(FieldError::DivisionByZero)));
    }

    #[test]
    fn mismatched_discriminants_are_rejected() {
        let x = q2(0, 1);
        let y = FieldScalar::sqrt_d(5).unwrap();
        assert!(matches!(
            x.checked_add(&y),
            Err(FieldError::DiscriminantMismatch { left: 2, right: 5 })
        ));
    }

    #[test]
    fn rationals_coerce_into_any_field() {
        let x = FieldScalar::from_int(3);
        let y = FieldScalar::sqrt_d(5).unwrap();
        let s = x.checked_add(&y).unwrap();
        assert_eq!(s.discriminant(), 5);
        assert_eq!(s, FieldScalar::from_parts(3, 1, 1, 1, 5).unwrap());
        assert_eq!(FieldScalar::from_int(3), x.coerce(5).unwrap());
    }

    #[test]
    fn lowest_terms_with_positive_denominator() {
        let x = FieldScalar::from_parts(2, -4, 0, 1, 1).unwrap();
        assert_eq!(x.rational_part().numer(), &BigInt::from(-1));
        assert_eq!(x.rational_part().denom(), &BigInt::from(2));
    }

    #[test]
    fn non_squarefree_discriminant_rejected() {
        assert!(FieldScalar::sqrt_d(4).is_err());
        assert!(FieldScalar::sqrt_d(0).is_err());
        assert!(FieldScalar::sqrt_d(6).is_ok());
    }

    #[test]
    fn exact_sign() {
        assert_eq!(q2(-1, 1).signum(), 1); // √2 − 1 > 0
        assert_eq!(q2(1, -1).signum(), -1);
        assert_eq!(q2(-3, 2).signum(), -1); // 2√2 ≈ 2.83 < 3
        assert_eq!(q2(0, 0).signum(), 0);
    }

    #[test]
    fn float_embedding() {
        let x = q2(1, 1);
        assert!((x.to_f64() - (1.0 + 2f64.sqrt())).abs() < 1e-15);
    }
}
