//! Arithmetic in prime fields `F_p` with `p < 2^62`.
//!
//! A [`PrimeField`] carries the modulus and the factorization of the
//! multiplicative group order `p - 1`; elements are plain canonical
//! residues wrapped in [`Fp`]. All arithmetic goes through the field
//! context since the modulus is only known at runtime.

mod dlog;
mod factor;

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use dlog::{bounded_dlog, BabyStepTable};
pub use factor::{factorize, is_prime, next_prime};

/// Largest admissible modulus (exclusive).
pub const MODULUS_LIMIT: u64 = 1 << 62;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} exceeds 2^62")]
    ModulusTooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,
}

/// A canonical residue in `[0, p)`.
///
/// Ordering is integer comparison of the residue, which is the order used
/// to sort recovered coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Fp(pub(crate) u64);

impl Fp {
    pub const ZERO: Fp = Fp(0);
    pub const ONE: Fp = Fp(1);

    #[inline]
    pub fn value(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// The field `F_p` together with the factored group order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
    // Barrett constants: k = bit length of p, mu = floor(4^k / p)
    k: u32,
    mu: u64,
    order_factorization: Vec<(u64, u32)>,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if p >= MODULUS_LIMIT {
            return Err(FieldError::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        let k = u64::BITS - p.leading_zeros();
        Ok(Self {
            p,
            k,
            mu: ((1u128 << (2 * k)) / p as u128) as u64,
            order_factorization: factorize(p - 1),
        })
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// `(prime, multiplicity)` pairs with product `p - 1`.
    pub fn order_factorization(&self) -> &[(u64, u32)] {
        &self.order_factorization
    }

    /// Reduces an arbitrary integer into the field.
    #[inline]
    pub fn elem(&self, v: u64) -> Fp {
        Fp(v % self.p)
    }

    /// Wraps `v` if it is already canonical.
    pub fn try_elem(&self, v: u64) -> Option<Fp> {
        (v < self.p).then_some(Fp(v))
    }

    #[inline]
    pub fn add(&self, a: Fp, b: Fp) -> Fp {
        let s = a.0 + b.0;
        Fp(if s >= self.p { s - self.p } else { s })
    }

    #[inline]
    pub fn sub(&self, a: Fp, b: Fp) -> Fp {
        Fp(if a.0 >= b.0 { a.0 - b.0 } else { a.0 + self.p - b.0 })
    }

    #[inline]
    pub fn neg(&self, a: Fp) -> Fp {
        Fp(if a.0 == 0 { 0 } else { self.p - a.0 })
    }

    #[inline]
    pub fn mul(&self, a: Fp, b: Fp) -> Fp {
        Fp(self.reduce_product(a.0 as u128 * b.0 as u128))
    }

    /// `x mod p` for `x < p^2`, by Barrett reduction.
    #[inline]
    pub(crate) fn reduce_product(&self, x: u128) -> u64 {
        debug_assert!(x < self.p as u128 * self.p as u128);
        let q = ((x >> (self.k - 1)) * self.mu as u128) >> (self.k + 1);
        let mut r = (x - q * self.p as u128) as u64;
        while r >= self.p {
            r -= self.p;
        }
        r
    }

    pub fn pow(&self, base: Fp, mut exp: u64) -> Fp {
        let mut acc = Fp(1 % self.p);
        let mut b = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via the extended Euclidean algorithm.
    pub fn inv(&self, a: Fp) -> Result<Fp, FieldError> {
        if a.0 == 0 {
            return Err(FieldError::DivisionByZero);
        }
        let (mut r0, mut r1) = (self.p as i128, a.0 as i128);
        let (mut s0, mut s1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        debug_assert_eq!(r0, 1);
        Ok(Fp(s0.rem_euclid(self.p as i128) as u64))
    }

    pub fn div(&self, a: Fp, b: Fp) -> Result<Fp, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn apply(&self, op: ArithOp, a: Fp, b: Fp) -> Result<Fp, FieldError> {
        Ok(match op {
            ArithOp::Add => self.add(a, b),
            ArithOp::Sub => self.sub(a, b),
            ArithOp::Mul => self.mul(a, b),
            ArithOp::Div => self.div(a, b)?,
        })
    }

    /// True iff `g` has multiplicative order exactly `p - 1`.
    pub fn is_generator(&self, g: Fp) -> bool {
        if g.is_zero() {
            return false;
        }
        let order = self.p - 1;
        self.order_factorization
            .iter()
            .all(|&(r, _)| self.pow(g, order / r) != Fp::ONE)
    }

    /// Draws random nonzero candidates until one generates `F_p^*`.
    pub fn find_primitive_root<R: Rng + ?Sized>(&self, rng: &mut R) -> Fp {
        if self.p == 2 {
            return Fp::ONE;
        }
        loop {
            let g = self.sample_nonzero(rng);
            if self.is_generator(g) {
                return g;
            }
        }
    }

    /// Uniform element of `[1, p - 1]`.
    pub fn sample_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Fp {
        Fp(rng.gen_range(1..self.p))
    }

    /// Uniform element of `[0, p - 1]`.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Fp {
        Fp(rng.gen_range(0..self.p))
    }
}
