//! Plain-text instance files.
//!
//! ```text
//! p n t D
//! c e1 e2 ... en      (t lines)
//! ```
//!
//! All values are decimal. Coefficients must be canonical nonzero
//! residues, exponents at most `D`, and monomials pairwise distinct.
//! Serialization writes terms in canonical order, so a canonical file
//! round-trips byte for byte.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::str::FromStr;

use thiserror::Error;

use crate::field::{FieldError, PrimeField};

use super::{ExponentVector, SparsePolynomial};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InstanceError {
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("header declares {declared} terms but {found} term lines follow")]
    TermCount { declared: usize, found: usize },
    #[error("invalid modulus: {0}")]
    Field(#[from] FieldError),
}

fn malformed(line: usize, reason: impl Into<String>) -> InstanceError {
    InstanceError::Malformed {
        line,
        reason: reason.into(),
    }
}

/// A hidden polynomial together with its field and partial degree bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub field: PrimeField,
    pub degree_bound: u64,
    pub poly: SparsePolynomial,
}

impl Instance {
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{} {} {} {}\n",
            self.field.modulus(),
            self.poly.num_vars(),
            self.poly.len(),
            self.degree_bound
        );
        for t in self.poly.terms() {
            write!(out, "{}", t.coeff).unwrap();
            for e in t.monomial.exponents() {
                write!(out, " {e}").unwrap();
            }
            out.push('\n');
        }
        out
    }
}

fn parse_num<T: FromStr>(tok: &str, line: usize, what: &str) -> Result<T, InstanceError> {
    tok.parse()
        .map_err(|_| malformed(line, format!("{what} `{tok}` is not a nonnegative integer")))
}

impl FromStr for Instance {
    type Err = InstanceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut lines = s
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());

        let (hline, header) = lines.next().ok_or_else(|| malformed(1, "missing header"))?;
        let h: Vec<&str> = header.split_whitespace().collect();
        if h.len() != 4 {
            return Err(malformed(hline, "header must be `p n t D`"));
        }
        let p: u64 = parse_num(h[0], hline, "p")?;
        let n: usize = parse_num(h[1], hline, "n")?;
        let t: usize = parse_num(h[2], hline, "t")?;
        let degree_bound: u64 = parse_num(h[3], hline, "D")?;
        let field = PrimeField::new(p)?;

        let mut seen = HashSet::new();
        let mut terms = Vec::with_capacity(t);
        for (ln, l) in lines {
            let toks: Vec<&str> = l.split_whitespace().collect();
            if toks.len() != n + 1 {
                return Err(malformed(
                    ln,
                    format!("expected {} values, found {}", n + 1, toks.len()),
                ));
            }
            let c: u64 = parse_num(toks[0], ln, "coefficient")?;
            let coeff = field
                .try_elem(c)
                .filter(|c| !c.is_zero())
                .ok_or_else(|| malformed(ln, format!("coefficient {c} is not in [1, p-1]")))?;
            let exps = toks[1..]
                .iter()
                .map(|tok| parse_num::<u64>(tok, ln, "exponent"))
                .collect::<Result<Vec<_>, _>>()?;
            if let Some(&e) = exps.iter().find(|&&e| e > degree_bound) {
                return Err(malformed(ln, format!("exponent {e} exceeds D = {degree_bound}")));
            }
            let m = ExponentVector::new(exps);
            if !seen.insert(m.clone()) {
                return Err(malformed(ln, "duplicate monomial"));
            }
            terms.push((coeff, m));
        }
        if terms.len() != t {
            return Err(InstanceError::TermCount {
                declared: t,
                found: terms.len(),
            });
        }
        let poly =
            SparsePolynomial::from_terms(&field, n, terms).expect("arity and duplicates checked above");
        Ok(Instance {
            field,
            degree_bound,
            poly,
        })
    }
}
