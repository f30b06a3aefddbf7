//! Sparse multivariate polynomials over GF(p).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Poly;

/// An exponent vector, ordered by total degree and then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in `K[x_1, ..., x_n]` as a map from monomials to nonzero
/// residues. Variables are indexed from 0 in this API.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    field: Field,
    nvars: usize,
    terms: BTreeMap<Monomial, u32>,
}

impl MultiPoly {
    pub fn zero(field: Field, nvars: usize) -> Self {
        MultiPoly {
            field,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: Field, nvars: usize, c: u32) -> Self {
        let mut out = Self::zero(field, nvars);
        out.add_term(Monomial::one(nvars), c % field.p());
        out
    }

    /// The variable `x_var` (0-based).
    pub fn var(field: Field, nvars: usize, var: usize) -> Result<Self> {
        if var >= nvars {
            return Err(Error::InvalidVariable { index: var, nvars });
        }
        let mut e = vec![0; nvars];
        e[var] = 1;
        Ok(Self::term(field, Monomial(e), 1))
    }

    pub fn term(field: Field, monomial: Monomial, c: u32) -> Self {
        let mut out = Self::zero(field, monomial.0.len());
        out.add_term(monomial, c % field.p());
        out
    }

    /// Builds from `(exponents, coefficient)` pairs; coefficients must be
    /// residues and repeated monomials are summed.
    pub fn from_terms(field: Field, nvars: usize, terms: &[(Vec<u32>, u64)]) -> Result<Self> {
        let mut out = Self::zero(field, nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::VariableCount {
                    expected: nvars,
                    found: e.len(),
                });
            }
            out.add_term(Monomial(e.clone()), field.residue(*c)?);
        }
        Ok(out)
    }

    /// Embeds a univariate polynomial as a polynomial in `x_var`.
    pub fn from_univariate(poly: &Poly, nvars: usize, var: usize) -> Result<Self> {
        if var >= nvars {
            return Err(Error::InvalidVariable { index: var, nvars });
        }
        let mut out = Self::zero(poly.field(), nvars);
        for (k, c) in poly.terms() {
            let mut e = vec![0; nvars];
            e[var] = k as u32;
            out.add_term(Monomial(e), c);
        }
        Ok(out)
    }

    fn add_term(&mut self, m: Monomial, c: u32) {
        if c == 0 {
            return;
        }
        let f = self.field;
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = f.add(*o.get(), c);
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, u32)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> u32 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    /// Largest term in graded order.
    pub fn leading_term(&self) -> Option<(&Monomial, u32)> {
        self.terms.iter().next_back().map(|(m, &c)| (m, c))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.leading_term().map(|(m, _)| m.total_degree())
    }

    /// Highest exponent of `x_var` among the terms.
    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[var]).max()
    }

    /// Lowest exponent of `x_var` among the terms.
    pub fn low_degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[var]).min()
    }

    /// Whether any term has a positive exponent of `x_var`.
    pub fn mentions(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.0[var] > 0)
    }

    /// If only `x_var` appears, the polynomial as a univariate one.
    pub fn to_univariate(&self, var: usize) -> Option<Poly> {
        let mut coeffs: Vec<u32> = Vec::new();
        for (m, &c) in &self.terms {
            if m.0.iter().enumerate().any(|(i, &e)| i != var && e > 0) {
                return None;
            }
            let k = m.0[var] as usize;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, 0);
            }
            coeffs[k] = c;
        }
        Some(Poly::from_residues(self.field, coeffs))
    }

    fn check(&self, other: &MultiPoly) {
        assert_eq!(self.field, other.field, "field mismatch");
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        self.check(other);
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.scale(self.field.neg(1)))
    }

    pub fn scale(&self, c: u32) -> MultiPoly {
        let f = self.field;
        let c = c % f.p();
        let mut out = Self::zero(f, self.nvars);
        if c != 0 {
            out.terms = self
                .terms
                .iter()
                .map(|(m, &a)| (m.clone(), f.mul(a, c)))
                .collect();
        }
        out
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        self.check(other);
        let f = self.field;
        let mut out = Self::zero(f, self.nvars);
        for (ma, &ca) in &self.terms {
            for (mb, &cb) in &other.terms {
                out.add_term(ma.mul(mb), f.mul(ca, cb));
            }
        }
        out
    }

    pub fn pow(&self, mut m: u64) -> MultiPoly {
        let mut base = self.clone();
        let mut acc = Self::constant(self.field, self.nvars, 1);
        while m > 0 {
            if m & 1 == 1 {
                acc = acc.mul(&base);
            }
            m >>= 1;
            if m > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Partial derivative with respect to `x_var`.
    pub fn partial(&self, var: usize) -> MultiPoly {
        let f = self.field;
        let mut out = Self::zero(f, self.nvars);
        for (m, &c) in &self.terms {
            let e = m.0[var];
            let k = e % f.p();
            if k == 0 {
                continue;
            }
            let mut dm = m.0.clone();
            dm[var] -= 1;
            out.add_term(Monomial(dm), f.mul(c, k));
        }
        out
    }

    /// Terms of total degree at most `cap`.
    pub fn truncate(&self, cap: u32) -> MultiPoly {
        let mut out = Self::zero(self.field, self.nvars);
        out.terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.total_degree() <= cap)
            .map(|(m, &c)| (m.clone(), c))
            .collect();
        out
    }

    pub(crate) fn into_terms(self) -> BTreeMap<Monomial, u32> {
        self.terms
    }

    pub(crate) fn from_map(field: Field, nvars: usize, terms: BTreeMap<Monomial, u32>) -> Self {
        MultiPoly {
            field,
            nvars,
            terms,
        }
    }
}

impl serde::Serialize for MultiPoly {
    /// `[[exponents, coefficient], ...]` in graded order.
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (m, c) in &self.terms {
            seq.serialize_element(&(&m.0, c))?;
        }
        seq.end()
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let e: Vec<String> = m.0.iter().map(u32::to_string).collect();
                format!("[[{}],{}]", e.join(","), c)
            })
            .collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// All exponent vectors in `nvars` variables of total degree at most `cap`,
/// in graded order.
pub fn monomials_up_to(nvars: usize, cap: u32) -> Vec<Monomial> {
    fn rec(prefix: &mut Vec<u32>, left: usize, budget: u32, out: &mut Vec<Monomial>) {
        if left == 0 {
            out.push(Monomial(prefix.clone()));
            return;
        }
        for e in 0..=budget {
            prefix.push(e);
            rec(prefix, left - 1, budget - e, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::with_capacity(nvars), nvars, cap, &mut out);
    out.sort();
    out
}
