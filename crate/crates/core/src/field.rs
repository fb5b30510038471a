//! The coefficient-field abstraction shared by the rational and mod-p kernels.

use std::fmt;

use crate::modp::Fp;
use crate::scalar::Scalar;

/// A field with exact arithmetic. `Ctx` carries whatever is needed to mint
/// constants (nothing for rationals, the modulus for `Fp`).
pub trait Field: Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    type Ctx: Clone + fmt::Debug + PartialEq + Eq + Send + Sync;

    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    fn from_i64(ctx: &Self::Ctx, n: i64) -> Self;
    fn ctx(&self) -> Self::Ctx;

    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negate(&self) -> Self;
    fn inverse(&self) -> Option<Self>;

    fn is_one(&self) -> bool {
        self == &Self::one(&self.ctx())
    }

    /// `self += a * b`
    fn add_mul(&mut self, a: &Self, b: &Self) {
        *self = self.plus(&a.times(b));
    }

    /// `self -= a * b`
    fn sub_mul(&mut self, a: &Self, b: &Self) {
        *self = self.minus(&a.times(b));
    }

    fn sign(ctx: &Self::Ctx, odd: bool) -> Self {
        if odd {
            Self::one(ctx).negate()
        } else {
            Self::one(ctx)
        }
    }
}

impl Field for Scalar {
    type Ctx = ();

    fn zero(_: &()) -> Self {
        Scalar::ZERO
    }
    fn one(_: &()) -> Self {
        Scalar::ONE
    }
    fn from_i64(_: &(), n: i64) -> Self {
        Scalar::from_int(n)
    }
    fn ctx(&self) {}
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negate(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Option<Self> {
        self.recip()
    }
    fn is_one(&self) -> bool {
        Scalar::is_one(self)
    }
    fn add_mul(&mut self, a: &Self, b: &Self) {
        if !a.is_zero() && !b.is_zero() {
            *self += &(a * b);
        }
    }
    fn sub_mul(&mut self, a: &Self, b: &Self) {
        if !a.is_zero() && !b.is_zero() {
            *self -= &(a * b);
        }
    }
}

impl Field for Fp {
    type Ctx = u64;

    fn zero(p: &u64) -> Self {
        Fp::new(0, *p)
    }
    fn one(p: &u64) -> Self {
        Fp::new(1, *p)
    }
    fn from_i64(p: &u64, n: i64) -> Self {
        Fp::from_i64(n, *p)
    }
    fn ctx(&self) -> u64 {
        self.modulus()
    }
    fn is_zero(&self) -> bool {
        self.residue() == 0
    }
    fn plus(&self, other: &Self) -> Self {
        *self + *other
    }
    fn minus(&self, other: &Self) -> Self {
        *self - *other
    }
    fn times(&self, other: &Self) -> Self {
        *self * *other
    }
    fn negate(&self) -> Self {
        -*self
    }
    fn inverse(&self) -> Option<Self> {
        self.inv()
    }
}

/// Dense vector helpers over any field.
pub fn zero_vec<F: Field>(ctx: &F::Ctx, n: usize) -> Vec<F> {
    vec![F::zero(ctx); n]
}

pub fn is_zero_vec<F: Field>(v: &[F]) -> bool {
    v.iter().all(F::is_zero)
}

pub fn axpy<F: Field>(y: &mut [F], a: &F, x: &[F]) {
    if a.is_zero() {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            yi.add_mul(a, xi);
        }
    }
}

pub fn scale_vec<F: Field>(v: &[F], a: &F) -> Vec<F> {
    v.iter().map(|x| x.times(a)).collect()
}

pub fn add_vec<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    a.iter().zip(b).map(|(x, y)| x.plus(y)).collect()
}

pub fn sub_vec<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    a.iter().zip(b).map(|(x, y)| x.minus(y)).collect()
}

pub fn unit_vec<F: Field>(ctx: &F::Ctx, n: usize, i: usize) -> Vec<F> {
    let mut v = zero_vec(ctx, n);
    v[i] = F::one(ctx);
    v
}
