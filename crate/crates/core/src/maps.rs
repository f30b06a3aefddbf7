//! Derivations `f d/dx`, E-derivations `I - phi`, and triangular derivations.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::multipoly::MultiPoly;
use crate::poly::Poly;

/// A K-linear endomorphism of a polynomial ring.
pub trait LinearMap<T: Clone> {
    fn apply(&self, g: &T) -> T;

    /// `k`-fold application; `k = 0` is the identity.
    fn iterate(&self, g: &T, k: usize) -> T {
        (0..k).fold(g.clone(), |acc, _| self.apply(&acc))
    }
}

/// `g -> f * g'`.
pub fn apply_derivation(f: &Poly, g: &Poly) -> Poly {
    f * &g.derivative()
}

/// `g -> g - g(phi)`.
pub fn apply_ederivation(phi: &Poly, g: &Poly) -> Poly {
    g - &g.compose(phi)
}

/// `g -> sum_q f_q * d g / d x_q`.
pub fn apply_triangular(fs: &[MultiPoly], g: &MultiPoly) -> Result<MultiPoly> {
    if fs.len() != g.nvars() {
        return Err(Error::VariableCount {
            expected: fs.len(),
            found: g.nvars(),
        });
    }
    Ok(fs
        .iter()
        .enumerate()
        .filter(|(_, f)| !f.is_zero())
        .fold(MultiPoly::zero(g.field(), g.nvars()), |acc, (q, f)| {
            acc.add(&f.mul(&g.partial(q)))
        }))
}

/// The univariate derivation `f d/dx`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    f: Poly,
}

impl Derivation {
    pub fn new(f: Poly) -> Self {
        Derivation { f }
    }

    pub fn coefficient(&self) -> &Poly {
        &self.f
    }

    pub fn field(&self) -> Field {
        self.f.field()
    }

    pub fn is_zero(&self) -> bool {
        self.f.is_zero()
    }

    /// `D(ab) == D(a) b + a D(b)`.
    pub fn leibniz_holds(&self, a: &Poly, b: &Poly) -> bool {
        let lhs = self.apply(&(a * b));
        let rhs = &(&self.apply(a) * b) + &(a * &self.apply(b));
        lhs == rhs
    }
}

impl LinearMap<Poly> for Derivation {
    fn apply(&self, g: &Poly) -> Poly {
        apply_derivation(&self.f, g)
    }
}

/// Shape of the endomorphism `phi` behind an E-derivation, determined by
/// `phi(x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhiShape {
    /// `phi(x) = x`; the E-derivation is zero.
    Identity,
    /// `phi(x) = x + c` with `c != 0`.
    Translation { c: u32 },
    /// `phi(x) = c`.
    Constant { c: u32 },
    /// `phi(x) = q x + b` with `q` not in `{0, 1}`. When `b != 0` this is
    /// conjugate to `q x` by a translation.
    Affine { q: u32, b: u32 },
    /// `deg phi >= 2`.
    Higher { degree: usize },
}

impl fmt::Display for PhiShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            PhiShape::Identity => write!(f, "phi = x"),
            PhiShape::Translation { c } => write!(f, "phi = x + {c}"),
            PhiShape::Constant { c } => write!(f, "phi = {c}"),
            PhiShape::Affine { q, b } => write!(f, "phi = {q}x + {b}"),
            PhiShape::Higher { degree } => write!(f, "deg phi = {degree}"),
        }
    }
}

/// The E-derivation `I - phi`, stored by `phi(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EDerivation {
    phi: Poly,
}

impl EDerivation {
    pub fn new(phi: Poly) -> Self {
        EDerivation { phi }
    }

    pub fn phi(&self) -> &Poly {
        &self.phi
    }

    pub fn field(&self) -> Field {
        self.phi.field()
    }

    pub fn shape(&self) -> PhiShape {
        let phi = &self.phi;
        match phi.degree() {
            None => PhiShape::Constant { c: 0 },
            Some(0) => PhiShape::Constant { c: phi.coeff(0) },
            Some(1) => {
                let (b, q) = (phi.coeff(0), phi.coeff(1));
                match (q, b) {
                    (1, 0) => PhiShape::Identity,
                    (1, c) => PhiShape::Translation { c },
                    (q, b) => PhiShape::Affine { q, b },
                }
            }
            Some(d) => PhiShape::Higher { degree: d },
        }
    }

    pub fn is_zero(&self) -> bool {
        self.shape() == PhiShape::Identity
    }

    /// `d(ab) == d(a) b + a d(b) - d(a) d(b)`.
    pub fn e_leibniz_holds(&self, a: &Poly, b: &Poly) -> bool {
        let (da, db) = (self.apply(a), self.apply(b));
        let lhs = self.apply(&(a * b));
        let rhs = &(&(&da * b) + &(a * &db)) - &(&da * &db);
        lhs == rhs
    }
}

impl LinearMap<Poly> for EDerivation {
    fn apply(&self, g: &Poly) -> Poly {
        apply_ederivation(&self.phi, g)
    }
}

/// `D = sum_q f_q(x_{q+1}, ..., x_n) d/dx_q`: the coefficient of `d/dx_q`
/// only involves variables after `x_q`, and the last one is a constant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangularDerivation {
    coeffs: Vec<MultiPoly>,
}

impl TriangularDerivation {
    pub fn new(coeffs: Vec<MultiPoly>) -> Result<Self> {
        let n = coeffs.len();
        if n == 0 {
            return Err(Error::InvalidParameter(
                "a triangular derivation needs at least one variable".into(),
            ));
        }
        let field = coeffs[0].field();
        for (q, f) in coeffs.iter().enumerate() {
            if f.nvars() != n {
                return Err(Error::VariableCount {
                    expected: n,
                    found: f.nvars(),
                });
            }
            if f.field() != field {
                return Err(Error::InvalidParameter(
                    "all coefficients must share one field".into(),
                ));
            }
            if let Some(bad) = (0..=q).find(|&v| f.mentions(v)) {
                return Err(Error::NotTriangular {
                    var: q + 1,
                    offending: bad + 1,
                });
            }
        }
        Ok(TriangularDerivation { coeffs })
    }

    pub fn coefficients(&self) -> &[MultiPoly] {
        &self.coeffs
    }

    pub fn nvars(&self) -> usize {
        self.coeffs.len()
    }

    pub fn field(&self) -> Field {
        self.coeffs[0].field()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(MultiPoly::is_zero)
    }

    pub fn leibniz_holds(&self, a: &MultiPoly, b: &MultiPoly) -> bool {
        let lhs = self.apply(&a.mul(b));
        let rhs = self.apply(a).mul(b).add(&a.mul(&self.apply(b)));
        lhs == rhs
    }
}

impl LinearMap<MultiPoly> for TriangularDerivation {
    fn apply(&self, g: &MultiPoly) -> MultiPoly {
        apply_triangular(&self.coeffs, g).expect("variable count checked by caller")
    }
}

/// A map whose image is classified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MapSpec {
    Derivation(Derivation),
    EDerivation(EDerivation),
    Triangular(TriangularDerivation),
}

impl MapSpec {
    pub fn derivation(f: Poly) -> Self {
        MapSpec::Derivation(Derivation::new(f))
    }

    pub fn ederivation(phi: Poly) -> Self {
        MapSpec::EDerivation(EDerivation::new(phi))
    }

    pub fn triangular(coeffs: Vec<MultiPoly>) -> Result<Self> {
        TriangularDerivation::new(coeffs).map(MapSpec::Triangular)
    }

    pub fn field(&self) -> Field {
        match self {
            MapSpec::Derivation(d) => d.field(),
            MapSpec::EDerivation(e) => e.field(),
            MapSpec::Triangular(t) => t.field(),
        }
    }

    pub fn is_univariate(&self) -> bool {
        !matches!(self, MapSpec::Triangular(_))
    }

    pub fn apply_univariate(&self, g: &Poly) -> Result<Poly> {
        match self {
            MapSpec::Derivation(d) => Ok(d.apply(g)),
            MapSpec::EDerivation(e) => Ok(e.apply(g)),
            MapSpec::Triangular(_) => Err(Error::UnsupportedMap(
                "triangular derivations act on multivariate polynomials",
            )),
        }
    }

    pub fn apply_multivariate(&self, g: &MultiPoly) -> Result<MultiPoly> {
        match self {
            MapSpec::Triangular(t) => apply_triangular(t.coefficients(), g),
            _ => Err(Error::UnsupportedMap(
                "univariate maps act on univariate polynomials",
            )),
        }
    }

    pub fn iterate_univariate(&self, g: &Poly, k: usize) -> Result<Poly> {
        match self {
            MapSpec::Derivation(d) => Ok(d.iterate(g, k)),
            MapSpec::EDerivation(e) => Ok(e.iterate(g, k)),
            MapSpec::Triangular(_) => Err(Error::UnsupportedMap(
                "triangular derivations act on multivariate polynomials",
            )),
        }
    }

    pub fn iterate_multivariate(&self, g: &MultiPoly, k: usize) -> Result<MultiPoly> {
        match self {
            MapSpec::Triangular(t) => {
                if t.nvars() != g.nvars() {
                    return Err(Error::VariableCount {
                        expected: t.nvars(),
                        found: g.nvars(),
                    });
                }
                Ok(t.iterate(g, k))
            }
            _ => Err(Error::UnsupportedMap(
                "univariate maps act on univariate polynomials",
            )),
        }
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

    fn mono(p: u64, k: usize) -> Poly {
        Poly::monomial(gf(p), k, 1)
    }

    #[test]
    fn derivation_examples() {
        let f = mono(3, 2);
        assert_eq!(apply_derivation(&f, &mono(3, 1)), mono(3, 2));
        assert!(apply_derivation(&f, &mono(3, 3)).is_zero());
        assert_eq!(
            apply_derivation(&f, &mono(3, 2)),
            Poly::monomial(gf(3), 3, 2)
        );
    }

    #[test]
    fn ederivation_examples() {
        let phi = poly(3, &[1, 1]);
        assert_eq!(apply_ederivation(&phi, &mono(3, 1)), poly(3, &[2]));
        assert_eq!(apply_ederivation(&phi, &mono(3, 3)), poly(3, &[2]));
        assert!(apply_ederivation(&phi, &poly(3, &[2])).is_zero());
    }

    fn x2_d1_plus_d2() -> TriangularDerivation {
        let f = gf(2);
        let x2 = MultiPoly::var(f, 2, 1).unwrap();
        TriangularDerivation::new(vec![x2, MultiPoly::constant(f, 2, 1)]).unwrap()
    }

    #[test]
    fn triangular_examples() {
        let f = gf(2);
        let d = x2_d1_plus_d2();
        let x1 = MultiPoly::var(f, 2, 0).unwrap();
        let x2 = MultiPoly::var(f, 2, 1).unwrap();
        assert_eq!(d.apply(&x1.mul(&x2)), x2.mul(&x2).add(&x1));
        assert_eq!(d.apply(&x2), MultiPoly::constant(f, 2, 1));
        assert!(d.apply(&x1.mul(&x1)).is_zero());
    }

    #[test]
    fn triangular_shape_is_enforced() {
        let f = gf(2);
        let x1 = MultiPoly::var(f, 2, 0).unwrap();
        let err = TriangularDerivation::new(vec![x1, MultiPoly::zero(f, 2)]).unwrap_err();
        assert_eq!(
            err,
            Error::NotTriangular {
                var: 1,
                offending: 1
            }
        );
        let x1 = MultiPoly::var(f, 2, 0).unwrap();
        let err = TriangularDerivation::new(vec![MultiPoly::zero(f, 2), x1]).unwrap_err();
        assert_eq!(
            err,
            Error::NotTriangular {
                var: 2,
                offending: 1
            }
        );
    }

    #[test]
    fn triangular_variable_count_mismatch() {
        let f = gf(2);
        let d = x2_d1_plus_d2();
        let g = MultiPoly::var(f, 3, 0).unwrap();
        assert!(apply_triangular(d.coefficients(), &g).is_err());
    }

    #[test]
    fn iteration_examples() {
        let d = MapSpec::derivation(mono(3, 2));
        assert!(d.iterate_univariate(&mono(3, 1), 3).unwrap().is_zero());
        assert_eq!(
            d.iterate_univariate(&mono(3, 1), 2).unwrap(),
            Poly::monomial(gf(3), 3, 2)
        );
        let plain = MapSpec::derivation(poly(7, &[1]));
        assert!(plain.iterate_univariate(&mono(7, 1), 2).unwrap().is_zero());
        let e = MapSpec::ederivation(poly(2, &[1, 1]));
        assert_eq!(e.iterate_univariate(&mono(2, 1), 1).unwrap(), poly(2, &[1]));
        assert!(e.iterate_univariate(&mono(2, 1), 2).unwrap().is_zero());
        let g = poly(5, &[1, 2, 3]);
        let e5 = MapSpec::ederivation(poly(5, &[1, 1]));
        assert_eq!(e5.iterate_univariate(&g, 0).unwrap(), g);
    }

    #[test]
    fn phi_shapes() {
        let shape = |c: &[u64]| EDerivation::new(poly(5, c)).shape();
        assert_eq!(shape(&[0, 1]), PhiShape::Identity);
        assert_eq!(shape(&[3, 1]), PhiShape::Translation { c: 3 });
        assert_eq!(shape(&[2]), PhiShape::Constant { c: 2 });
        assert_eq!(shape(&[]), PhiShape::Constant { c: 0 });
        assert_eq!(shape(&[0, 2]), PhiShape::Affine { q: 2, b: 0 });
        assert_eq!(shape(&[1, 0, 1]), PhiShape::Higher { degree: 2 });
    }
}
