//! Exact rational scalars.
//!
//! Values that fit in a machine-word fraction stay on an `i64` fast path; any
//! operation that would overflow is redone in arbitrary precision. Both
//! representations are kept in lowest terms with a positive denominator, and a
//! value is only ever stored as `Big` when it does not fit the small form, so
//! structural equality is numeric equality.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone)]
enum Repr {
    Small(i64, i64),
    Big(BigRational),
}

/// An exact element of the rational field.
#[derive(Clone)]
pub struct Scalar(Repr);

impl Scalar {
    pub const ZERO: Scalar = Scalar(Repr::Small(0, 1));
    pub const ONE: Scalar = Scalar(Repr::Small(1, 1));

    pub fn from_int(n: i64) -> Self {
        Scalar(Repr::Small(n, 1))
    }

    /// `num / den`, reduced. Panics on a zero denominator.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_i128(num as i128, den as i128)
    }

    pub fn half() -> Self {
        Scalar(Repr::Small(1, 2))
    }

    fn from_i128(num: i128, den: i128) -> Self {
        let (mut n, mut d) = (num, den);
        if d < 0 {
            n = -n;
            d = -d;
        }
        let g = n.gcd(&d);
        if g > 1 {
            n /= g;
            d /= g;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Scalar(Repr::Small(n, d)),
            _ => Scalar(Repr::Big(BigRational::new_raw(BigInt::from(n), BigInt::from(d)))),
        }
    }

    fn from_big(r: BigRational) -> Self {
        // BigRational arithmetic already normalizes.
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) => Scalar(Repr::Small(n, d)),
            _ => Scalar(Repr::Big(r)),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(r) => r.clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, _) => BigInt::from(*n),
            Repr::Big(r) => r.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(_, d) => BigInt::from(*d),
            Repr::Big(r) => r.denom().clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1, 1))
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(r) => r.is_integer(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(n, _) => *n < 0,
            Repr::Big(r) => r.is_negative(),
        }
    }

    pub fn recip(&self) -> Option<Scalar> {
        match &self.0 {
            Repr::Small(0, _) => None,
            Repr::Small(n, d) => Some(Self::from_i128(*d as i128, *n as i128)),
            Repr::Big(r) => Some(Self::from_big(r.recip())),
        }
    }

    pub fn pow(&self, exp: u32) -> Scalar {
        let mut acc = Scalar::ONE;
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Whether the value currently lives on the machine-word fast path.
    pub fn is_small(&self) -> bool {
        matches!(self.0, Repr::Small(..))
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::ZERO
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<i32> for Scalar {
    fn from(n: i32) -> Self {
        Scalar::from_int(n as i64)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::from_big(r)
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => a == c && b == d,
            (Repr::Big(x), Repr::Big(y)) => x == y,
            _ => false,
        }
    }
}

impl Eq for Scalar {}

impl Hash for Scalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.0 {
            Repr::Small(n, d) => {
                0u8.hash(state);
                n.hash(state);
                d.hash(state);
            }
            Repr::Big(r) => {
                1u8.hash(state);
                r.hash(state);
            }
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                ((*a as i128) * (*d as i128)).cmp(&((*c as i128) * (*b as i128)))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Repr::Big(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Scalar {
    type Err = Error;

    /// Accepts `n` or `p/q` with optional leading minus sign on the numerator.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("not a rational: {s:?}"));
        let s = s.trim();
        let parse_int = |t: &str| -> Result<BigInt> {
            let digits = t.strip_prefix('-').unwrap_or(t);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            t.parse::<BigInt>().map_err(|_| bad())
        };
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => {
                if d.starts_with('-') {
                    return Err(bad());
                }
                (parse_int(n)?, parse_int(d)?)
            }
            None => (parse_int(s)?, BigInt::one()),
        };
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        Ok(Scalar::from_big(BigRational::new(num, den)))
    }
}

fn add_impl(a: &Scalar, b: &Scalar) -> Scalar {
    match (&a.0, &b.0) {
        (Repr::Small(x, 1), Repr::Small(y, 1)) => match x.checked_add(*y) {
            Some(s) => Scalar(Repr::Small(s, 1)),
            None => Scalar::from_i128(*x as i128 + *y as i128, 1),
        },
        (Repr::Small(x, p), Repr::Small(y, q)) => {
            if p == q {
                Scalar::from_i128(*x as i128 + *y as i128, *p as i128)
            } else {
                let (x, p, y, q) = (*x as i128, *p as i128, *y as i128, *q as i128);
                Scalar::from_i128(x * q + y * p, p * q)
            }
        }
        _ => Scalar::from_big(a.to_big() + b.to_big()),
    }
}

fn mul_impl(a: &Scalar, b: &Scalar) -> Scalar {
    match (&a.0, &b.0) {
        (Repr::Small(0, _), _) | (_, Repr::Small(0, _)) => Scalar::ZERO,
        (Repr::Small(x, 1), Repr::Small(y, 1)) => match x.checked_mul(*y) {
            Some(s) => Scalar(Repr::Small(s, 1)),
            None => Scalar::from_i128(*x as i128 * *y as i128, 1),
        },
        (Repr::Small(x, p), Repr::Small(y, q)) => {
            Scalar::from_i128(*x as i128 * *y as i128, *p as i128 * *q as i128)
        }
        _ => Scalar::from_big(a.to_big() * b.to_big()),
    }
}

fn neg_impl(a: &Scalar) -> Scalar {
    match &a.0 {
        Repr::Small(n, d) => match n.checked_neg() {
            Some(m) => Scalar(Repr::Small(m, *d)),
            None => Scalar::from_i128(-(*n as i128), *d as i128),
        },
        Repr::Big(r) => Scalar::from_big(-r.clone()),
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                $body(self, rhs)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                $body(&self, &rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                $body(&self, rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                $body(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_impl);
forward_binop!(Mul, mul, mul_impl);
forward_binop!(Sub, sub, |a: &Scalar, b: &Scalar| add_impl(a, &neg_impl(b)));
forward_binop!(Div, div, |a: &Scalar, b: &Scalar| mul_impl(
    a,
    &b.recip().expect("division by zero")
));

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        neg_impl(&self)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        neg_impl(self)
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = add_impl(self, rhs);
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = add_impl(self, &neg_impl(rhs));
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = mul_impl(self, rhs);
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::ZERO
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::ONE
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_and_prints_lowest_terms() {
        assert!("6/-4".parse::<Scalar>().is_err());
        let y: Scalar = "-6/4".parse().unwrap();
        assert_eq!(y.to_string(), "-3/2");
        assert_eq!("7".parse::<Scalar>().unwrap(), Scalar::from_int(7));
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("abc".parse::<Scalar>().is_err());
        assert!("1.5".parse::<Scalar>().is_err());
    }

    #[test]
    fn overflow_promotes_to_big() {
        let big = Scalar::from_int(i64::MAX);
        let sq = &big * &big;
        assert!(!sq.is_small());
        let back = &sq / &big;
        assert_eq!(back, big);
        assert!(back.is_small());
        let neg_min = -Scalar::from_int(i64::MIN);
        assert_eq!(&neg_min + &Scalar::from_int(i64::MIN), Scalar::ZERO);
    }

    #[test]
    fn half_arithmetic() {
        let h = Scalar::half();
        assert_eq!(&h + &h, Scalar::ONE);
        assert_eq!((&h * &Scalar::from_int(4)).to_string(), "2");
        assert_eq!(Scalar::new(2, 4), h);
    }

    fn arb_scalar() -> impl Strategy<Value = Scalar> {
        prop_oneof![
            (-1000i64..1000, 1i64..1000).prop_map(|(n, d)| Scalar::new(n, d)),
            (any::<i64>(), 1i64..i64::MAX).prop_map(|(n, d)| Scalar::new(n, d)),
        ]
    }

    proptest! {
        #[test]
        fn field_axioms_hold_exactly(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
            if !b.is_zero() {
                prop_assert_eq!(&(&a / &b) * &b, a.clone());
            }
            // agree with the arbitrary-precision reference
            prop_assert_eq!((&a * &b).to_big(), a.to_big() * b.to_big());
        }

        #[test]
        fn display_round_trips(a in arb_scalar()) {
            let back: Scalar = a.to_string().parse().unwrap();
            prop_assert_eq!(back, a);
        }
    }
}
