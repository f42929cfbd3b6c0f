use crate::field::{Fp, PrimeField};

use super::{DensePolynomial, SolverError};

/// Solves the transposed Vandermonde system `sum_i c[i] * nodes[i]^j = rhs[j]`
/// for `j = 0..t`, in `O(t^2)`.
///
/// With `M(z) = prod (z - v_i)` and `q_k = M / (z - v_k)`, pairing the
/// equations with the coefficients of `q_k` isolates `c_k * q_k(v_k)`.
pub fn solve_transposed_vandermonde(
    field: &PrimeField,
    nodes: &[Fp],
    rhs: &[Fp],
) -> Result<Vec<Fp>, SolverError> {
    if nodes.len() != rhs.len() {
        return Err(SolverError::LengthMismatch {
            nodes: nodes.len(),
            rhs: rhs.len(),
        });
    }
    let mut sorted = nodes.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(SolverError::DuplicateNodes);
    }

    let t = nodes.len();
    let master = DensePolynomial::from_roots(field, nodes);
    let m = master.coeffs();
    let mut out = Vec::with_capacity(t);
    let mut q = vec![Fp::ZERO; t];
    for &v in nodes {
        // synthetic division of M by (z - v), top coefficient first
        let mut carry = Fp::ZERO;
        for j in (0..t).rev() {
            carry = field.add(m[j + 1], field.mul(carry, v));
            q[j] = carry;
        }
        let mut num = Fp::ZERO;
        let mut den = Fp::ZERO;
        let mut vp = Fp::ONE;
        for j in 0..t {
            num = field.add(num, field.mul(q[j], rhs[j]));
            den = field.add(den, field.mul(q[j], vp));
            vp = field.mul(vp, v);
        }
        out.push(field.div(num, den).map_err(|_| SolverError::DuplicateNodes)?);
    }
    Ok(out)
}
