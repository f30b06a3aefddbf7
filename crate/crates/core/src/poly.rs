//! Dense univariate polynomials over GF(p).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::Field;

/// A polynomial in `K[x]`, `K = GF(p)`, stored as ascending coefficients.
///
/// The coefficient vector never has a trailing zero; the zero polynomial is
/// the empty vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Field,
    coeffs: Vec<u32>,
}

impl Poly {
    pub fn zero(field: Field) -> Self {
        Poly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: Field) -> Self {
        Self::constant(field, 1)
    }

    pub fn constant(field: Field, c: u32) -> Self {
        Self::from_residues(field, vec![c % field.p()])
    }

    /// `c * x^k`.
    pub fn monomial(field: Field, k: usize, c: u32) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c % field.p();
        Self::from_residues(field, coeffs)
    }

    pub fn x(field: Field) -> Self {
        Self::monomial(field, 1, 1)
    }

    /// Builds a polynomial from coefficients that must already lie in `[0, p)`.
    pub fn new(field: Field, coeffs: &[u64]) -> Result<Self> {
        let coeffs = coeffs
            .iter()
            .map(|&c| field.residue(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_residues(field, coeffs))
    }

    /// Builds a polynomial from arbitrary integers, reducing each mod p.
    pub fn from_ints(field: Field, coeffs: &[i64]) -> Self {
        Self::from_residues(field, coeffs.iter().map(|&c| field.reduce(c)).collect())
    }

    pub(crate) fn from_residues(field: Field, mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    #[inline]
    pub fn field(&self) -> Field {
        self.field
    }

    #[inline]
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    #[inline]
    pub fn coeff(&self, k: usize) -> u32 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Lowest exponent carrying a nonzero coefficient.
    pub fn low_degree(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| c != 0)
    }

    /// `(deg f, ldeg f)`; rejects the zero polynomial.
    pub fn degree_bounds(&self) -> Result<(usize, usize)> {
        match (self.degree(), self.low_degree()) {
            (Some(d), Some(l)) => Ok((d, l)),
            _ => Err(Error::ZeroPolynomial),
        }
    }

    pub fn leading_coeff(&self) -> Option<u32> {
        self.coeffs.last().copied()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff() == Some(1)
    }

    /// Scales to leading coefficient 1; the zero polynomial is returned as is.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None | Some(1) => self.clone(),
            Some(lc) => self.scale(self.field.inv(lc).expect("leading coefficient is nonzero")),
        }
    }

    /// Iterator over `(exponent, coefficient)` of the nonzero terms.
    pub fn terms(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| (k, c))
    }

    fn check_field(&self, other: &Poly) {
        assert_eq!(
            self.field, other.field,
            "polynomials over different fields cannot be combined"
        );
    }

    pub fn scale(&self, c: u32) -> Self {
        let f = self.field;
        let c = c % f.p();
        Self::from_residues(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0; k];
        coeffs.extend_from_slice(&self.coeffs);
        Poly {
            field: self.field,
            coeffs,
        }
    }

    pub fn pow(&self, mut m: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Poly::one(self.field);
        while m > 0 {
            if m & 1 == 1 {
                acc = &acc * &base;
            }
            m >>= 1;
            if m > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        let f = self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| f.mul(c, (k as u64 % f.p() as u64) as u32))
            .collect();
        Self::from_residues(f, coeffs)
    }

    /// Value at a point of GF(p).
    pub fn eval(&self, point: u32) -> u32 {
        let f = self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| f.add(f.mul(acc, point), c))
    }

    /// `self(inner(x))`, by Horner's rule.
    pub fn compose(&self, inner: &Poly) -> Self {
        self.check_field(inner);
        let mut acc = Poly::zero(self.field);
        for &c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &Poly::constant(self.field, c);
        }
        acc
    }

    /// Euclidean division; `divisor` must be nonzero.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.check_field(divisor);
        let f = self.field;
        let dd = divisor.degree().ok_or(Error::ZeroPolynomial)?;
        let lc_inv = f.inv(divisor.coeffs[dd])?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(f), self.clone()));
        }
        let mut quot = vec![0; rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = rem[k];
            if c == 0 {
                continue;
            }
            let q = f.mul(c, lc_inv);
            quot[k - dd] = q;
            for (i, &d) in divisor.coeffs.iter().enumerate() {
                let idx = k - dd + i;
                rem[idx] = f.sub(rem[idx], f.mul(q, d));
            }
        }
        Ok((Poly::from_residues(f, quot), Poly::from_residues(f, rem)))
    }

    /// Exact quotient `self / divisor` if `divisor` divides `self`.
    pub fn exact_div(&self, divisor: &Poly) -> Result<Option<Poly>> {
        let (q, r) = self.div_rem(divisor)?;
        Ok(r.is_zero().then_some(q))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// Splits into `sum_i x^i f_i(x^p)` over residues `i` with `f_i != 0`.
    pub fn slot_decompose(&self) -> Result<SlotDecomposition> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let p = self.field.p() as usize;
        let mut parts: Vec<Vec<u32>> = vec![Vec::new(); p];
        for (e, c) in self.terms() {
            let part = &mut parts[e % p];
            let k = e / p;
            if part.len() <= k {
                part.resize(k + 1, 0);
            }
            part[k] = c;
        }
        let slots = parts
            .into_iter()
            .enumerate()
            .filter(|(_, v)| !v.is_empty())
            .map(|(residue, v)| Slot {
                residue: residue as u32,
                poly: Poly::from_residues(self.field, v),
            })
            .collect();
        Ok(SlotDecomposition {
            field: self.field,
            slots,
        })
    }

    /// Substitutes `x^p` for the variable: `f(y) -> f(x^p)`.
    pub fn inflate(&self) -> Poly {
        let p = self.field.p() as usize;
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0; (self.coeffs.len() - 1) * p + 1];
        for (k, c) in self.terms() {
            coeffs[k * p] = c;
        }
        Poly {
            field: self.field,
            coeffs,
        }
    }

    /// True when every exponent is a multiple of p, i.e. `self ∈ K[x^p]`.
    pub fn is_pth_power_poly(&self) -> bool {
        let p = self.field.p() as usize;
        self.terms().all(|(e, _)| e % p == 0)
    }

    /// Ascending coefficient list, e.g. `[1,0,2]` for `1 + 2x^2`.
    pub fn to_list_string(&self) -> String {
        let parts: Vec<String> = self.coeffs.iter().map(u32::to_string).collect();
        format!("[{}]", parts.join(","))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_list_string())
    }
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        self.check_field(rhs);
        let f = self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| f.add(self.coeff(k), rhs.coeff(k))).collect();
        Poly::from_residues(f, coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        self.check_field(rhs);
        let f = self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| f.sub(self.coeff(k), rhs.coeff(k))).collect();
        Poly::from_residues(f, coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        let f = self.field;
        Poly::from_residues(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        self.check_field(rhs);
        let f = self.field;
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(f);
        }
        let p = f.p() as u64;
        // Accumulate in u64 and reduce once per output coefficient.
        let mut acc = vec![0u64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                acc[i + j] += (a * b) as u64;
            }
        }
        Poly::from_residues(f, acc.into_iter().map(|c| (c % p) as u32).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}

impl serde::Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.serialize(s)
    }
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// One component `x^residue * poly(x^p)` of a slot decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Slot {
    pub residue: u32,
    /// Polynomial in `y`, where `y` stands for `x^p`.
    pub poly: Poly,
}

/// The unique writing `f = sum_i x^i f_i(x^p)` with residues `i` in `[0, p)`.
///
/// Exponents `>= p` are absorbed into the `f_i`, so `x^4` at `p = 3` is the
/// single slot `(1, y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlotDecomposition {
    field: Field,
    slots: Vec<Slot>,
}

impl SlotDecomposition {
    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    pub fn residues(&self) -> Vec<u32> {
        self.slots.iter().map(|s| s.residue).collect()
    }

    /// The slot polynomial for a residue, if that slot is occupied.
    pub fn get(&self, residue: u32) -> Option<&Poly> {
        self.slots
            .iter()
            .find(|s| s.residue == residue)
            .map(|s| &s.poly)
    }

    /// The only slot, when there is exactly one.
    pub fn single(&self) -> Option<&Slot> {
        match self.slots.as_slice() {
            [s] => Some(s),
            _ => None,
        }
    }

    /// Rebuilds `sum_i x^i f_i(x^p)`.
    pub fn recompose(&self) -> Poly {
        self.slots.iter().fold(Poly::zero(self.field), |acc, s| {
            &acc + &s.poly.inflate().shift(s.residue as usize)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> Field {
        Field::new(p).unwrap()
    }

    fn poly(p: u64, c: &[u64]) -> Poly {
        Poly::new(gf(p), c).unwrap()
    }

    #[test]
    fn trims_trailing_zeros() {
        let f = poly(5, &[1, 2, 0, 0]);
        assert_eq!(f.coeffs(), &[1, 2]);
        assert!(poly(5, &[0, 0]).is_zero());
    }

    #[test]
    fn rejects_non_residues() {
        assert!(Poly::new(gf(3), &[0, 3]).is_err());
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(poly(2, &[1, 1]).pow(2), poly(2, &[1, 0, 1]));
        assert_eq!(&poly(3, &[0, 1]) * &poly(3, &[1, 1]), poly(3, &[0, 1, 1]));
        assert_eq!(poly(5, &[1, 1]).pow(5), poly(5, &[1, 0, 0, 0, 0, 1]));
        assert_eq!(poly(5, &[1, 2]).scale(3), poly(5, &[3, 1]));
        assert_eq!(poly(7, &[3]).pow(0), poly(7, &[1]));
    }

    #[test]
    fn derivative_examples() {
        assert!(poly(3, &[0, 0, 0, 1]).derivative().is_zero());
        assert_eq!(
            Poly::monomial(gf(5), 7, 1).derivative(),
            Poly::monomial(gf(5), 6, 2)
        );
        assert_eq!(poly(2, &[0, 1, 1]).derivative(), poly(2, &[1]));
    }

    #[test]
    fn compose_examples() {
        assert_eq!(
            poly(3, &[0, 0, 1]).compose(&poly(3, &[1, 1])),
            poly(3, &[1, 2, 1])
        );
        let g = poly(7, &[3, 0, 5, 1]);
        assert_eq!(Poly::x(gf(7)).compose(&g), g);
        assert_eq!(
            poly(2, &[0, 1, 1]).compose(&poly(2, &[1, 1])),
            poly(2, &[0, 1, 1])
        );
    }

    #[test]
    fn slot_examples() {
        let d = poly(3, &[0, 0, 1, 0, 1]).slot_decompose().unwrap();
        assert_eq!(d.residues(), vec![1, 2]);
        assert_eq!(d.get(1).unwrap(), &poly(3, &[0, 1]));
        assert_eq!(d.get(2).unwrap(), &poly(3, &[1]));

        let d = poly(2, &[1, 1, 1]).slot_decompose().unwrap();
        assert_eq!(d.get(0).unwrap(), &poly(2, &[1, 1]));
        assert_eq!(d.get(1).unwrap(), &poly(2, &[1]));

        let d = Poly::x(gf(5)).slot_decompose().unwrap();
        let s = d.single().unwrap();
        assert_eq!((s.residue, s.poly.clone()), (1, poly(5, &[1])));

        assert_eq!(
            Poly::zero(gf(3)).slot_decompose(),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn degree_bound_examples() {
        assert_eq!(poly(3, &[0, 0, 1, 0, 1]).degree_bounds().unwrap(), (4, 2));
        assert_eq!(poly(3, &[2]).degree_bounds().unwrap(), (0, 0));
        assert_eq!(poly(3, &[0, 1]).degree_bounds().unwrap(), (1, 1));
        assert_eq!(
            Poly::zero(gf(3)).degree_bounds(),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn division() {
        let f = poly(5, &[4, 0, 1]); // x^2 - 1
        let (q, r) = f.div_rem(&poly(5, &[4, 1])).unwrap();
        assert_eq!(q, poly(5, &[1, 1]));
        assert!(r.is_zero());
        assert_eq!(
            poly(5, &[1, 1]).div_rem(&poly(5, &[0, 0, 1])).unwrap(),
            (Poly::zero(gf(5)), poly(5, &[1, 1]))
        );
        assert!(poly(5, &[1]).div_rem(&Poly::zero(gf(5))).is_err());
    }

    #[test]
    fn list_form() {
        assert_eq!(poly(3, &[1, 0, 2]).to_string(), "[1,0,2]");
        assert_eq!(Poly::zero(gf(3)).to_string(), "[]");
    }
}
