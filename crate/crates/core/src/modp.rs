//! Prime-field elements used by the finite-field maximality oracle.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Residue class modulo a prime. The modulus travels with the value so that
/// mismatched moduli are caught in debug builds.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    r: u64,
    p: u64,
}

/// Largest modulus accepted; keeps products inside `u64`.
pub const MAX_MODULUS: u64 = 1 << 31;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Accepts primes other than 2 and 3 (the identities divide by both).
pub fn check_prime(p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::BadPrime(p, "not a prime".into()));
    }
    if p <= 3 {
        return Err(Error::BadPrime(p, "characteristic 2 and 3 are excluded".into()));
    }
    if p >= MAX_MODULUS {
        return Err(Error::BadPrime(p, "modulus too large".into()));
    }
    Ok(())
}

impl Fp {
    pub fn new(r: u64, p: u64) -> Self {
        Fp { r: r % p, p }
    }

    pub fn from_i64(n: i64, p: u64) -> Self {
        Fp { r: n.rem_euclid(p as i64) as u64, p }
    }

    pub fn residue(&self) -> u64 {
        self.r
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn pow(&self, mut e: u64) -> Fp {
        let mut base = *self;
        let mut acc = Fp::new(1, self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self) -> Option<Fp> {
        if self.r == 0 {
            None
        } else {
            Some(self.pow(self.p - 2))
        }
    }

    /// Image of an exact rational; fails when the denominator vanishes mod p.
    pub fn reduce(x: &Scalar, p: u64) -> Result<Fp> {
        use num_bigint::BigInt;
        use num_traits::ToPrimitive;
        let modulus = BigInt::from(p);
        let res = |n: BigInt| -> u64 {
            let r = ((n % &modulus) + &modulus) % &modulus;
            r.to_u64().expect("residue fits")
        };
        let num = res(x.numer());
        let den = res(x.denom());
        if den == 0 {
            return Err(Error::BadPrime(p, format!("denominator of {x} vanishes")));
        }
        let d = Fp::new(den, p).inv().expect("nonzero residue");
        Ok(Fp::new(num, p) * d)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, o: Fp) -> Fp {
        debug_assert_eq!(self.p, o.p);
        let s = self.r + o.r;
        Fp { r: if s >= self.p { s - self.p } else { s }, p: self.p }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, o: Fp) -> Fp {
        debug_assert_eq!(self.p, o.p);
        Fp { r: if self.r >= o.r { self.r - o.r } else { self.r + self.p - o.r }, p: self.p }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, o: Fp) -> Fp {
        debug_assert_eq!(self.p, o.p);
        Fp { r: self.r * o.r % self.p, p: self.p }
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp { r: if self.r == 0 { 0 } else { self.p - self.r }, p: self.p }
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.r)
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.r, self.p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_examples() {
        assert_eq!(Fp::reduce(&Scalar::half(), 5).unwrap().residue(), 3);
        assert_eq!(Fp::reduce(&Scalar::from_int(-1), 7).unwrap().residue(), 6);
        assert!(matches!(Fp::reduce(&Scalar::half(), 2), Err(Error::BadPrime(2, _))));
        assert_eq!(Fp::reduce(&Scalar::new(-2, 3), 5).unwrap().residue(), 1);
    }

    #[test]
    fn prime_guard() {
        assert!(check_prime(5).is_ok());
        assert!(check_prime(7).is_ok());
        assert!(check_prime(2).is_err());
        assert!(check_prime(3).is_err());
        assert!(check_prime(9).is_err());
    }

    #[test]
    fn inverses_mod_seven() {
        for r in 1..7 {
            let x = Fp::new(r, 7);
            assert_eq!((x * x.inv().unwrap()).residue(), 1);
        }
        assert!(Fp::new(0, 7).inv().is_none());
    }
}
