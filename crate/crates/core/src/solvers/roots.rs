use rand::Rng;

use crate::field::{Fp, PrimeField};

use super::{DensePolynomial, SolverError};

/// Retry budget per splitting step: `64 * (1 + log2 t)` random shifts.
fn attempt_cap(t: usize) -> usize {
    // bit length of t is 1 + floor(log2 t)
    64 * (usize::BITS - t.max(1).leading_zeros()) as usize
}

/// All roots of a monic `lambda`, which must split into distinct linear
/// factors over `F_p`. Roots come back sorted ascending.
///
/// For a random shift `y = z + delta`, `w = y^((p-1)/2) mod lambda` gives
/// both the split part `gcd(y w^2 - y, lambda)` (as `y w^2 = y^p`) and a
/// first splitting candidate `gcd(w - 1, lambda)`. If the split part has
/// lower degree than `lambda` (repeated roots or irreducible factors of
/// higher degree) the result is [`SolverError::TooFewRoots`]. Remaining
/// factors are separated by further random shifts.
pub fn find_distinct_roots<R: Rng + ?Sized>(
    field: &PrimeField,
    lambda: &DensePolynomial,
    rng: &mut R,
) -> Result<Vec<Fp>, SolverError> {
    let lambda = lambda.monic(field);
    let t = match lambda.degree() {
        None | Some(0) => return Ok(Vec::new()),
        Some(t) => t,
    };

    let mut roots = if field.modulus() == 2 {
        (0..2)
            .map(Fp)
            .filter(|&x| lambda.eval(field, x).is_zero())
            .collect()
    } else {
        let y = DensePolynomial::new(vec![field.sample(rng), Fp::ONE]);
        let w = y.pow_mod(field, (field.modulus() - 1) / 2, &lambda);
        let frob = y.mul(field, &w.mul(field, &w)).rem(field, &lambda);
        let split = frob.sub(field, &y).gcd(field, &lambda);
        if split.degree() != Some(t) {
            return Err(SolverError::TooFewRoots {
                expected: t,
                found: split.degree().unwrap_or(0),
            });
        }
        let mut out = Vec::with_capacity(t);
        equal_degree_split(field, lambda, Some(w), attempt_cap(t), rng, &mut out)?;
        out
    };

    roots.sort_unstable();
    roots.dedup();
    if roots.len() != t {
        return Err(SolverError::TooFewRoots {
            expected: t,
            found: roots.len(),
        });
    }
    Ok(roots)
}

// `first` is an already computed `(z + delta)^((p-1)/2) mod g` for the
// initial polynomial; it counts as that node's first attempt.
fn equal_degree_split<R: Rng + ?Sized>(
    field: &PrimeField,
    g: DensePolynomial,
    mut first: Option<DensePolynomial>,
    cap: usize,
    rng: &mut R,
    out: &mut Vec<Fp>,
) -> Result<(), SolverError> {
    let mut stack = vec![g];
    let half = (field.modulus() - 1) / 2;
    while let Some(g) = stack.pop() {
        let d = match g.degree() {
            None | Some(0) => continue,
            Some(1) => {
                out.push(field.neg(g.coeffs()[0]));
                continue;
            }
            Some(d) => d,
        };
        // a zero root is split off directly; the random shift below would
        // otherwise have to hit it by chance
        if g.coeffs()[0].is_zero() {
            first = None;
            out.push(Fp::ZERO);
            stack.push(DensePolynomial::new(g.coeffs()[1..].to_vec()));
            continue;
        }
        let mut attempts = 0;
        loop {
            if attempts == cap {
                return Err(SolverError::SplittingExhausted { degree: d });
            }
            attempts += 1;
            let w = first.take().unwrap_or_else(|| {
                let y = DensePolynomial::new(vec![field.sample(rng), Fp::ONE]);
                y.pow_mod(field, half, &g)
            });
            let h = w.sub(field, &DensePolynomial::one()).gcd(field, &g);
            match h.degree() {
                Some(k) if k > 0 && k < d => {
                    let (q, _) = g.div_rem(field, &h);
                    stack.push(h);
                    stack.push(q.monic(field));
                    break;
                }
                _ => {}
            }
        }
    }
    Ok(())
}
