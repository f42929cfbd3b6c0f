use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::field::{Fp, PrimeField};

use super::ModelError;

/// Exponents `(e_1, ..., e_n)` of one monomial; ordered lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExponentVector(Vec<u64>);

impl ExponentVector {
    pub fn new(exponents: Vec<u64>) -> Self {
        Self(exponents)
    }

    pub fn exponents(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_degree(&self) -> u64 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// Value of the monomial at `point`.
    pub fn eval(&self, field: &PrimeField, point: &[Fp]) -> Fp {
        self.0
            .iter()
            .zip(point)
            .fold(Fp::ONE, |acc, (&e, &x)| field.mul(acc, field.pow(x, e)))
    }
}

impl From<Vec<u64>> for ExponentVector {
    fn from(v: Vec<u64>) -> Self {
        Self(v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Term {
    pub coeff: Fp,
    pub monomial: ExponentVector,
}

/// A polynomial in `n` variables stored as its nonzero terms.
///
/// Terms are kept sorted by monomial with pairwise distinct monomials and
/// nonzero coefficients, so `==` is structural equality of canonical forms.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SparsePolynomial {
    n: usize,
    terms: Vec<Term>,
}

impl SparsePolynomial {
    pub fn zero(n: usize) -> Self {
        Self { n, terms: Vec::new() }
    }

    /// Builds the canonical form: like monomials are summed, zero
    /// coefficients dropped, and terms sorted.
    pub fn from_terms<I>(field: &PrimeField, n: usize, terms: I) -> Result<Self, ModelError>
    where
        I: IntoIterator<Item = (Fp, ExponentVector)>,
    {
        let mut acc: BTreeMap<ExponentVector, Fp> = BTreeMap::new();
        for (c, m) in terms {
            if m.len() != n {
                return Err(ModelError::ArityMismatch {
                    expected: n,
                    found: m.len(),
                });
            }
            let slot = acc.entry(m).or_insert(Fp::ZERO);
            *slot = field.add(*slot, c);
        }
        let terms = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(monomial, coeff)| Term { coeff, monomial })
            .collect();
        Ok(Self { n, terms })
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// Number of terms `#f`.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficients(&self) -> impl Iterator<Item = Fp> + '_ {
        self.terms.iter().map(|t| t.coeff)
    }

    /// Largest partial degree over all variables.
    pub fn max_partial_degree(&self) -> u64 {
        self.terms
            .iter()
            .map(|t| t.monomial.max_degree())
            .max()
            .unwrap_or(0)
    }

    /// `sum_i c_i prod_k point_k^{e_ik}`. Panics if `point.len() != n`.
    ///
    /// Powers of a coordinate are tabulated when the table is cheaper
    /// than square-and-multiply in every term.
    pub fn evaluate(&self, field: &PrimeField, point: &[Fp]) -> Fp {
        assert_eq!(point.len(), self.n, "point has wrong number of coordinates");
        let mut emax = vec![0u64; self.n];
        for t in &self.terms {
            for (m, &e) in emax.iter_mut().zip(t.monomial.exponents()) {
                *m = (*m).max(e);
            }
        }
        let tables: Vec<Option<Vec<Fp>>> = emax
            .iter()
            .zip(point)
            .map(|(&m, &x)| {
                let per_term = (u64::BITS - m.leading_zeros()) as u64;
                (m < per_term.saturating_mul(self.terms.len() as u64)).then(|| {
                    let mut tab = Vec::with_capacity(m as usize + 1);
                    let mut acc = Fp::ONE;
                    for _ in 0..=m {
                        tab.push(acc);
                        acc = field.mul(acc, x);
                    }
                    tab
                })
            })
            .collect();
        self.terms.iter().fold(Fp::ZERO, |acc, t| {
            let mono =
                t.monomial
                    .exponents()
                    .iter()
                    .zip(point)
                    .zip(&tables)
                    .fold(t.coeff, |v, ((&e, &x), tab)| {
                        let xe = match tab {
                            Some(tab) => tab[e as usize],
                            None => field.pow(x, e),
                        };
                        field.mul(v, xe)
                    });
            field.add(acc, mono)
        })
    }

    /// `f(zeta_1 x_1, ..., zeta_n x_n)`: same support, coefficient `c_i`
    /// multiplied by `m_i(zeta)`.
    pub fn scale_variables(&self, field: &PrimeField, zeta: &[Fp]) -> Result<Self, ModelError> {
        if zeta.len() != self.n {
            return Err(ModelError::ArityMismatch {
                expected: self.n,
                found: zeta.len(),
            });
        }
        if zeta.iter().any(|z| z.is_zero()) {
            return Err(ModelError::ZeroScaling);
        }
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                coeff: field.mul(t.coeff, t.monomial.eval(field, zeta)),
                monomial: t.monomial.clone(),
            })
            .collect();
        Ok(Self { n: self.n, terms })
    }

    /// True iff all coefficients are pairwise distinct.
    pub fn is_diverse(&self) -> bool {
        is_diverse(self.coefficients())
    }
}

/// Pairwise distinctness of a coefficient list.
pub fn is_diverse(coeffs: impl IntoIterator<Item = Fp>) -> bool {
    let mut v: Vec<Fp> = coeffs.into_iter().collect();
    v.sort_unstable();
    v.windows(2).all(|w| w[0] != w[1])
}

/// Structural equality of canonical forms.
pub fn poly_equal(f: &SparsePolynomial, g: &SparsePolynomial) -> bool {
    f == g
}

impl fmt::Display for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // highest monomial first reads more naturally
        for (i, t) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let vars: Vec<String> = t
                .monomial
                .exponents()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(k, &e)| match e {
                    1 => format!("x{}", k + 1),
                    _ => format!("x{}^{}", k + 1, e),
                })
                .collect();
            match (t.coeff.value(), vars.is_empty()) {
                (c, true) => write!(f, "{c}")?,
                (1, false) => write!(f, "{}", vars.join("*"))?,
                (c, false) => write!(f, "{c}*{}", vars.join("*"))?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::worked_example::polynomial as worked_instance;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn pt(f: &PrimeField, v: &[u64]) -> Vec<Fp> {
        v.iter().map(|&x| f.elem(x)).collect()
    }

    #[test]
    fn canonical_form() {
        let f = PrimeField::new(101).unwrap();
        let g = worked_instance(&f);
        assert_eq!(g.len(), 5);
        let mons: Vec<_> = g
            .terms()
            .iter()
            .map(|t| t.monomial.exponents().to_vec())
            .collect();
        let mut sorted = mons.clone();
        sorted.sort();
        assert_eq!(mons, sorted);

        // duplicates merge, cancellations vanish
        let h = SparsePolynomial::from_terms(
            &f,
            1,
            [
                (f.elem(3), vec![1].into()),
                (f.elem(98), vec![1].into()),
                (f.elem(5), vec![0].into()),
                (f.elem(5), vec![0].into()),
            ],
        )
        .unwrap();
        assert_eq!(h.len(), 1);
        assert_eq!(h.terms()[0].coeff, f.elem(10));

        assert_eq!(
            SparsePolynomial::from_terms(&f, 2, [(f.elem(1), vec![1].into())]),
            Err(ModelError::ArityMismatch {
                expected: 2,
                found: 1
            })
        );
    }

    #[test]
    fn evaluate_examples() {
        let f = PrimeField::new(101).unwrap();
        let g = worked_instance(&f);
        // independently recomputed value of the worked instance at zeta
        assert_eq!(g.evaluate(&f, &pt(&f, &[34, 29, 89])), f.elem(80));
        let coeff_sum = g.coefficients().fold(Fp::ZERO, |a, c| f.add(a, c));
        assert_eq!(g.evaluate(&f, &pt(&f, &[1, 1, 1])), coeff_sum);
        assert_eq!(
            SparsePolynomial::zero(3).evaluate(&f, &pt(&f, &[4, 5, 6])),
            Fp::ZERO
        );
    }

    #[test]
    fn scaling_examples() {
        let f = PrimeField::new(101).unwrap();
        let g = worked_instance(&f);
        let zeta = pt(&f, &[34, 29, 89]);
        let s = g.scale_variables(&f, &zeta).unwrap();
        let constant = s.terms().iter().find(|t| t.monomial.max_degree() == 0).unwrap();
        assert_eq!(constant.coeff, Fp::ONE);
        let mut scaled: Vec<u64> = s.coefficients().map(|c| c.value()).collect();
        scaled.sort();
        assert_eq!(scaled, vec![1, 33, 43, 50, 54]);
        assert!(s.is_diverse());
        assert!(!g.is_diverse());

        assert_eq!(g.scale_variables(&f, &pt(&f, &[1, 1, 1])).unwrap(), g);
        assert_eq!(
            g.scale_variables(&f, &pt(&f, &[1, 0, 1])),
            Err(ModelError::ZeroScaling)
        );
    }

    #[test]
    fn diversity_examples() {
        let f = PrimeField::new(101).unwrap();
        assert!(is_diverse(pt(&f, &[1, 54, 50, 43, 33])));
        let sum = SparsePolynomial::from_terms(
            &f,
            2,
            [(Fp::ONE, vec![1, 0].into()), (Fp::ONE, vec![0, 1].into())],
        )
        .unwrap();
        assert!(!sum.is_diverse());
        let single = SparsePolynomial::from_terms(&f, 2, [(f.elem(7), vec![3, 1].into())]).unwrap();
        assert!(single.is_diverse());
    }

    #[test]
    fn equality() {
        let f = PrimeField::new(101).unwrap();
        let g = worked_instance(&f);
        assert!(poly_equal(&g, &g.clone()));
        let mut terms: Vec<_> = g.terms().iter().map(|t| (t.coeff, t.monomial.clone())).collect();
        terms[2].0 = f.add(terms[2].0, Fp::ONE);
        let h = SparsePolynomial::from_terms(&f, 3, terms).unwrap();
        assert!(!poly_equal(&g, &h));
    }

    #[test]
    fn display() {
        let f = PrimeField::new(101).unwrap();
        assert_eq!(
            worked_instance(&f).to_string(),
            "61*x1^2*x2^2*x3 + 91*x1^2*x2*x3 + 91*x2*x3^2 + 61*x3^5 + 1"
        );
    }

    fn random_poly(f: &PrimeField, seed: u64) -> SparsePolynomial {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        super::super::random_sparse_polynomial(f, 3, 6, 9, &mut rng).unwrap()
    }

    proptest! {
        #[test]
        fn diversification_identity(seed in any::<u64>(), z in prop::array::uniform3(1u64..65537), x in prop::array::uniform3(0u64..65537)) {
            let f = PrimeField::new(65537).unwrap();
            let g = random_poly(&f, seed);
            let zeta = pt(&f, &z);
            let x = pt(&f, &x);
            let scaled = g.scale_variables(&f, &zeta).unwrap();
            let zx: Vec<Fp> = zeta.iter().zip(&x).map(|(&a, &b)| f.mul(a, b)).collect();
            prop_assert_eq!(scaled.evaluate(&f, &x), g.evaluate(&f, &zx));
        }

        #[test]
        fn evaluate_matches_termwise_powers(
            seed in any::<u64>(),
            t in 0usize..40,
            d in prop::sample::select(vec![1u64, 3, 50, 1000, 1_000_000]),
            x in prop::array::uniform3(0u64..1_000_003),
        ) {
            let f = PrimeField::new(1_000_003).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = super::super::random_sparse_polynomial(&f, 3, t.min((d as usize + 1).pow(3)), d, &mut rng).unwrap();
            let x = pt(&f, &x);
            let want = g.terms().iter().fold(Fp::ZERO, |acc, t| {
                let m = t.monomial.exponents().iter().zip(&x).fold(Fp::ONE, |v, (&e, &xi)| f.mul(v, f.pow(xi, e)));
                f.add(acc, f.mul(t.coeff, m))
            });
            prop_assert_eq!(g.evaluate(&f, &x), want);
        }

        #[test]
        fn scaling_involution(seed in any::<u64>(), z in prop::array::uniform3(1u64..65537)) {
            let f = PrimeField::new(65537).unwrap();
            let g = random_poly(&f, seed);
            let zeta = pt(&f, &z);
            let inv: Vec<Fp> = zeta.iter().map(|&a| f.inv(a).unwrap()).collect();
            let back = g.scale_variables(&f, &zeta).unwrap().scale_variables(&f, &inv).unwrap();
            prop_assert_eq!(back, g);
        }
    }
}
