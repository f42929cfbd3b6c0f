use serde::Serialize;

use crate::field::{Fp, PrimeField};

/// Dense univariate polynomial over `F_p`; `coeffs[i]` is the coefficient
/// of `z^i`. Trailing zeros are always trimmed, so the zero polynomial has
/// no coefficients at all.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(transparent)]
pub struct DensePolynomial {
    coeffs: Vec<Fp>,
}

// Products are below 2^124, so sixteen of them fit in a u128 accumulator.
const LAZY_TERMS: usize = 15;

impl DensePolynomial {
    pub fn new(mut coeffs: Vec<Fp>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_values(field: &PrimeField, values: &[u64]) -> Self {
        Self::new(values.iter().map(|&v| field.elem(v)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self {
            coeffs: vec![Fp::ONE],
        }
    }

    /// `z - root`.
    pub fn linear(field: &PrimeField, root: Fp) -> Self {
        Self::new(vec![field.neg(root), Fp::ONE])
    }

    /// `prod (z - r)` over the given roots.
    pub fn from_roots(field: &PrimeField, roots: &[Fp]) -> Self {
        let mut c = vec![Fp::ONE];
        for &r in roots {
            c.push(Fp::ZERO);
            for i in (1..c.len()).rev() {
                c[i] = field.sub(c[i - 1], field.mul(r, c[i]));
            }
            c[0] = field.neg(field.mul(r, c[0]));
        }
        Self::new(c)
    }

    pub fn coeffs(&self) -> &[Fp] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Fp {
        self.coeffs.last().copied().unwrap_or(Fp::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Fp::ONE
    }

    /// Horner evaluation.
    pub fn eval(&self, field: &PrimeField, x: Fp) -> Fp {
        self.coeffs
            .iter()
            .rev()
            .fold(Fp::ZERO, |acc, &c| field.add(field.mul(acc, x), c))
    }

    pub fn monic(&self, field: &PrimeField) -> Self {
        match field.inv(self.leading()) {
            Ok(inv) if inv != Fp::ONE => Self::new(self.coeffs.iter().map(|&c| field.mul(c, inv)).collect()),
            _ => self.clone(),
        }
    }

    pub fn sub(&self, field: &PrimeField, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |v: &[Fp], i: usize| v.get(i).copied().unwrap_or(Fp::ZERO);
        Self::new(
            (0..n)
                .map(|i| field.sub(get(&self.coeffs, i), get(&other.coeffs, i)))
                .collect(),
        )
    }

    pub fn mul(&self, field: &PrimeField, other: &Self) -> Self {
        Self::new(convolve(field, &self.coeffs, &other.coeffs))
    }

    /// Quotient and remainder; panics if `divisor` is zero.
    pub fn div_rem(&self, field: &PrimeField, divisor: &Self) -> (Self, Self) {
        let d = divisor.degree().expect("division by the zero polynomial");
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return (Self::zero(), self.clone());
        }
        let lead_inv = field.inv(divisor.leading()).expect("nonzero leading coefficient");
        let mut quot = vec![Fp::ZERO; rem.len() - d];
        for i in (d..rem.len()).rev() {
            let c = field.mul(rem[i], lead_inv);
            if c.is_zero() {
                continue;
            }
            quot[i - d] = c;
            let base = i - d;
            for (j, &m) in divisor.coeffs.iter().enumerate() {
                rem[base + j] = field.sub(rem[base + j], field.mul(c, m));
            }
        }
        rem.truncate(d);
        (Self::new(quot), Self::new(rem))
    }

    pub fn rem(&self, field: &PrimeField, divisor: &Self) -> Self {
        self.div_rem(field, divisor).1
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, field: &PrimeField, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(field, &b);
            a = b;
            b = r;
        }
        a.monic(field)
    }

    /// `self^exp mod modulus` for a monic `modulus` of degree at least one.
    ///
    /// Left-to-right, so every multiplying step is by `self` itself; for the
    /// linear bases used in root finding that step costs O(deg modulus).
    pub fn pow_mod(&self, field: &PrimeField, exp: u64, modulus: &Self) -> Self {
        let reducer = MonicReducer::new(field, modulus);
        let base = self.rem(field, modulus).coeffs;
        let mut acc = DensePolynomial::one().rem(field, modulus).coeffs;
        for bit in (0..u64::BITS - exp.leading_zeros()).rev() {
            acc = reducer.reduce(field, convolve(field, &acc, &acc));
            if exp >> bit & 1 == 1 {
                acc = reducer.reduce(field, convolve(field, &acc, &base));
            }
        }
        Self::new(acc)
    }
}

// Below this length Karatsuba recursion costs more than it saves.
const KARATSUBA_CUTOFF: usize = 24;

/// Product of two coefficient slices.
pub(crate) fn convolve(field: &PrimeField, a: &[Fp], b: &[Fp]) -> Vec<Fp> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Fp::ZERO; a.len() + b.len() - 1];
    mul_into(field, a, b, &mut out);
    out
}

// out += a * b; out has room for a.len() + b.len() - 1 coefficients.
fn mul_into(field: &PrimeField, a: &[Fp], b: &[Fp], out: &mut [Fp]) {
    let (a, b) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    if b.len() < KARATSUBA_CUTOFF {
        schoolbook_into(field, a, b, out);
    } else if a.len() >= 2 * b.len() {
        // unbalanced: slice the long operand into b-sized blocks
        for (i, chunk) in a.chunks(b.len()).enumerate() {
            let off = i * b.len();
            mul_into(field, chunk, b, &mut out[off..off + chunk.len() + b.len() - 1]);
        }
    } else {
        karatsuba_into(field, a, b, out);
    }
}

fn add_assign(field: &PrimeField, dst: &mut [Fp], src: &[Fp]) {
    for (d, &s) in dst.iter_mut().zip(src) {
        *d = field.add(*d, s);
    }
}

fn sub_assign(field: &PrimeField, dst: &mut [Fp], src: &[Fp]) {
    for (d, &s) in dst.iter_mut().zip(src) {
        *d = field.sub(*d, s);
    }
}

fn sum_halves(field: &PrimeField, lo: &[Fp], hi: &[Fp]) -> Vec<Fp> {
    let mut v = lo.to_vec();
    v.resize(lo.len().max(hi.len()), Fp::ZERO);
    add_assign(field, &mut v, hi);
    v
}

// Requires b.len() <= a.len() < 2 * b.len().
fn karatsuba_into(field: &PrimeField, a: &[Fp], b: &[Fp], out: &mut [Fp]) {
    let m = a.len().div_ceil(2);
    let (a0, a1) = a.split_at(m);
    let (b0, b1) = b.split_at(m.min(b.len()));
    let len = |x: &[Fp], y: &[Fp]| {
        if x.is_empty() || y.is_empty() {
            0
        } else {
            x.len() + y.len() - 1
        }
    };

    let mut z0 = vec![Fp::ZERO; len(a0, b0)];
    mul_into(field, a0, b0, &mut z0);
    let mut z2 = vec![Fp::ZERO; len(a1, b1)];
    if !b1.is_empty() {
        mul_into(field, a1, b1, &mut z2);
    }
    let sa = sum_halves(field, a0, a1);
    let sb = sum_halves(field, b0, b1);
    let mut z1 = vec![Fp::ZERO; len(&sa, &sb)];
    mul_into(field, &sa, &sb, &mut z1);
    sub_assign(field, &mut z1, &z0);
    sub_assign(field, &mut z1, &z2);

    add_assign(field, out, &z0);
    add_assign(field, &mut out[m..], &z1);
    add_assign(field, &mut out[2 * m..], &z2);
}

// Schoolbook product with lazily reduced u128 accumulators.
fn schoolbook_into(field: &PrimeField, a: &[Fp], b: &[Fp], out: &mut [Fp]) {
    if a.is_empty() || b.is_empty() {
        return;
    }
    let p = field.modulus() as u128;
    for (k, o) in out.iter_mut().enumerate().take(a.len() + b.len() - 1) {
        let lo = k.saturating_sub(b.len() - 1);
        let hi = k.min(a.len() - 1);
        let mut acc = o.value() as u128;
        let mut pending = 1;
        for i in lo..=hi {
            acc += a[i].value() as u128 * b[k - i].value() as u128;
            pending += 1;
            if pending == LAZY_TERMS {
                acc %= p;
                pending = 1;
            }
        }
        *o = Fp((acc % p) as u64);
    }
}

/// Reduction modulo a fixed monic polynomial of degree `d`, via a
/// precomputed inverse of its reversal modulo `z^(d-1)`.
struct MonicReducer<'a> {
    modulus: &'a DensePolynomial,
    rev_inv: Vec<Fp>,
}

impl<'a> MonicReducer<'a> {
    fn new(field: &PrimeField, modulus: &'a DensePolynomial) -> Self {
        debug_assert!(modulus.is_monic() && modulus.degree().unwrap_or(0) >= 1);
        let d = modulus.coeffs.len() - 1;
        let rev: Vec<Fp> = modulus.coeffs.iter().rev().copied().collect();
        // power series inverse of rev (rev[0] = 1), to precision max(d - 1, 1)
        let k = d.saturating_sub(1).max(1);
        let mut inv = Vec::with_capacity(k);
        for i in 0..k {
            if i == 0 {
                inv.push(Fp::ONE);
                continue;
            }
            let mut acc = Fp::ZERO;
            for j in 1..=i.min(d) {
                acc = field.add(acc, field.mul(rev[j], inv[i - j]));
            }
            inv.push(field.neg(acc));
        }
        Self {
            modulus,
            rev_inv: inv,
        }
    }

    /// `r mod modulus` for `r` of length at most `2d - 1`.
    fn reduce(&self, field: &PrimeField, mut r: Vec<Fp>) -> Vec<Fp> {
        let m = &self.modulus.coeffs;
        let d = m.len() - 1;
        if r.len() > d {
            let k = r.len() - d;
            assert!(k <= self.rev_inv.len(), "input longer than a product of residues");
            // reversed quotient = reversed top of r times rev_inv, mod z^k
            let top: Vec<Fp> = r[d..].iter().rev().copied().collect();
            let mut q_rev = convolve(field, &top, &self.rev_inv[..k]);
            q_rev.resize(k, Fp::ZERO);
            q_rev.reverse();
            let qm = convolve(field, &q_rev, &m[..d]);
            r.truncate(d);
            sub_assign(field, &mut r, &qm);
        }
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
        r
    }
}
