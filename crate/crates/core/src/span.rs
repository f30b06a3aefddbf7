//! Image spaces `D(I)` and `delta(I)` as degree-truncated subspaces.
//!
//! For a map `m` and ideal `I = (u)`, the span of `m(u x^k)` over a finite
//! window of `k` is row-reduced and intersected with the polynomials of
//! degree at most `N`. The window is chosen per map so that this equals the
//! true `m(I) ∩ K[x]_{<=N}`: if `g ∈ I` has `deg m(g) <= N` but a large
//! degree itself, its top term can be cancelled by an element of
//! `ker m ∩ I` without changing `m(g)`. The kernel of each map is a
//! polynomial ring in one element (`x^p`, the Artin-Schreier polynomial
//! `x^p - c^(p-1) x`, `(x - t)^r`, or the constants), and `ker m ∩ I`
//! contains an element of kernel-degree at most `deg u` because the kernel
//! truncated at that degree is larger than `K[x]/(u)`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Echelon;
use crate::maps::{Derivation, EDerivation, LinearMap, MapSpec, PhiShape, TriangularDerivation};
use crate::multipoly::{monomials_up_to, Monomial, MultiPoly};
use crate::poly::Poly;

/// Global caps on degree windows and brute-force enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_degree_cap: usize,
    pub enumeration_budget: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_degree_cap: 10_000,
            enumeration_budget: 1_000_000,
        }
    }
}

impl Limits {
    pub fn check_degree(&self, requested: usize) -> Result<()> {
        if requested > self.max_degree_cap {
            Err(Error::DegreeCapExceeded {
                requested,
                cap: self.max_degree_cap,
            })
        } else {
            Ok(())
        }
    }
}

/// A principal ideal `(generator)` of `K[x]`; the whole ring is `(1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealSpec {
    generator: Poly,
}

impl IdealSpec {
    /// The generator is normalized to be monic.
    pub fn new(generator: Poly) -> Result<Self> {
        if generator.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(IdealSpec {
            generator: generator.monic(),
        })
    }

    pub fn whole(field: Field) -> Self {
        IdealSpec {
            generator: Poly::one(field),
        }
    }

    pub fn generator(&self) -> &Poly {
        &self.generator
    }

    pub fn is_whole_ring(&self) -> bool {
        self.generator.is_constant()
    }

    pub fn degree(&self) -> usize {
        self.generator.degree().unwrap_or(0)
    }

    pub fn contains(&self, g: &Poly) -> bool {
        g.rem(&self.generator)
            .expect("generator is nonzero")
            .is_zero()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Membership {
    In,
    Out,
    OutOfRange,
}

/// A row-reduced basis of `m(I) ∩ K[x]_{<=N}`.
///
/// Basis rows are monic with strictly increasing pivot (leading) degrees and
/// zero coefficients at every other row's pivot. Each row keeps a preimage
/// in `I`.
#[derive(Debug, Clone)]
pub struct TruncatedSubspace {
    field: Field,
    degree_cap: usize,
    basis: Vec<Poly>,
    preimages: Vec<Poly>,
    exact: bool,
    pivot_of_degree: Vec<Option<usize>>,
}

impl TruncatedSubspace {
    fn from_echelon(field: Field, degree_cap: usize, mut ech: Echelon<Poly>, exact: bool) -> Self {
        ech.fully_reduce();
        let mut basis = Vec::new();
        let mut preimages = Vec::new();
        let mut pivot_of_degree = vec![None; degree_cap + 1];
        for (d, v, pre) in ech.into_rows() {
            if d > degree_cap {
                break;
            }
            pivot_of_degree[d] = Some(basis.len());
            basis.push(Poly::from_residues(field, v));
            preimages.push(pre);
        }
        TruncatedSubspace {
            field,
            degree_cap,
            basis,
            preimages,
            exact,
            pivot_of_degree,
        }
    }

    pub fn zero(field: Field, degree_cap: usize) -> Self {
        Self::from_echelon(field, degree_cap, Echelon::new(field), true)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn degree_cap(&self) -> usize {
        self.degree_cap
    }

    pub fn basis(&self) -> &[Poly] {
        &self.basis
    }

    pub fn preimages(&self) -> &[Poly] {
        &self.preimages
    }

    /// Whether the basis spans the true image truncated at the cap.
    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn pivot_degrees(&self) -> Vec<usize> {
        self.basis.iter().filter_map(Poly::degree).collect()
    }

    pub fn member(&self, g: &Poly) -> Membership {
        let Some(deg) = g.degree() else {
            return Membership::In;
        };
        if deg > self.degree_cap {
            return Membership::OutOfRange;
        }
        let f = self.field;
        let mut v = g.coeffs().to_vec();
        for d in (0..=deg).rev() {
            let c = v[d];
            if c == 0 {
                continue;
            }
            match self.pivot_of_degree[d] {
                Some(i) => {
                    for (k, &b) in self.basis[i].coeffs().iter().enumerate() {
                        v[k] = f.sub(v[k], f.mul(c, b));
                    }
                }
                None => return Membership::Out,
            }
        }
        Membership::In
    }

    /// Checks that every stored preimage maps onto its basis row.
    pub fn verify_preimages(&self, map: &MapSpec) -> Result<bool> {
        for (b, pre) in self.basis.iter().zip(&self.preimages) {
            if &map.apply_univariate(pre)? != b {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// One line per basis element: pivot degree and coefficient list.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for b in &self.basis {
            out.push_str(&format!("{}\t{}\n", b.degree().unwrap_or(0), b));
        }
        out
    }
}

fn window_bound(map: &MapSpec, ideal: &IdealSpec, cap: usize) -> Option<usize> {
    let p = map.field().p() as usize;
    let du = ideal.degree();
    match map {
        MapSpec::Derivation(d) => {
            let df = d.coefficient().degree()?;
            Some((cap + 1).saturating_sub(df).max(p * du))
        }
        MapSpec::EDerivation(e) => match e.shape() {
            PhiShape::Identity => None,
            PhiShape::Translation { .. } => Some((cap + 1).max(p * du)),
            PhiShape::Constant { .. } => Some(cap),
            PhiShape::Affine { q, .. } => {
                let r = e.field().order(q).expect("q is nonzero") as usize;
                Some(cap.max(r * du))
            }
            PhiShape::Higher { degree } => Some(cap / degree),
        },
        MapSpec::Triangular(_) => None,
    }
}

/// The exact truncated image `m(I) ∩ K[x]_{<=N}` of a univariate map.
pub fn image_span(
    map: &MapSpec,
    ideal: &IdealSpec,
    degree_cap: usize,
    limits: &Limits,
) -> Result<TruncatedSubspace> {
    if !map.is_univariate() {
        return Err(Error::UnsupportedMap(
            "use triangular_window_span for triangular derivations",
        ));
    }
    if degree_cap < 1 {
        return Err(Error::InvalidParameter(
            "degree cap must be at least 1".into(),
        ));
    }
    limits.check_degree(degree_cap)?;
    let field = map.field();
    assert_eq!(field, ideal.generator().field(), "field mismatch");
    let Some(bound) = window_bound(map, ideal, degree_cap) else {
        return Ok(TruncatedSubspace::zero(field, degree_cap));
    };
    limits.check_degree(bound)?;
    let u = ideal.generator();
    let du = ideal.degree();
    let mut ech: Echelon<Poly> = Echelon::new(field);
    if bound >= du {
        for k in 0..=(bound - du) {
            let pre = u.shift(k);
            let img = map.apply_univariate(&pre)?;
            if !img.is_zero() {
                ech.insert(img.coeffs().to_vec(), pre);
            }
        }
    }
    Ok(TruncatedSubspace::from_echelon(
        field, degree_cap, ech, true,
    ))
}

/// Membership in `Im(f d/dx)`, decided without truncation:
/// `Im(f d/dx) = f * span{x^j : j != p-1 mod p}`.
pub fn exact_member_derivation(f: &Poly, g: &Poly) -> bool {
    exact_member_ideal_derivation(f, &IdealSpec::whole(f.field()), g)
}

/// Membership in `D(I)` for `D = f d/dx`, decided without truncation.
///
/// `g ∈ f * (I)'` iff `f | g`, the quotient `q` has an antiderivative `Q`
/// (no exponent `≡ p-1`), and `Q + s ∈ I` for some `s ∈ K[x^p]`; the last
/// condition is linear algebra in `K[x]/(u)`, where the image of `K[x^p]`
/// is spanned by `x^(pj) mod u` for `j < deg u`.
pub fn exact_member_ideal_derivation(f: &Poly, ideal: &IdealSpec, g: &Poly) -> bool {
    if g.is_zero() {
        return true;
    }
    if f.is_zero() {
        return false;
    }
    let field = f.field();
    let p = field.p() as usize;
    let Some(q) = g.exact_div(f).expect("f is nonzero") else {
        return false;
    };
    if q.terms().any(|(e, _)| e % p == p - 1) {
        return false;
    }
    if ideal.is_whole_ring() {
        return true;
    }
    let mut anti = vec![0u32; q.coeffs().len() + 1];
    for (e, c) in q.terms() {
        let inv = field
            .inv(((e + 1) % p) as u32)
            .expect("exponent + 1 is a unit");
        anti[e + 1] = field.mul(c, inv);
    }
    let anti = Poly::from_residues(field, anti);
    let u = ideal.generator();
    let target = anti.rem(u).expect("generator is nonzero");
    let mut ech: Echelon<()> = Echelon::new(field);
    let mut power = Poly::one(field);
    let xp = Poly::monomial(field, p, 1)
        .rem(u)
        .expect("generator is nonzero");
    for _ in 0..ideal.degree() {
        ech.insert(power.coeffs().to_vec(), ());
        power = (&power * &xp).rem(u).expect("generator is nonzero");
    }
    ech.contains(target.coeffs())
}

/// Closed-form membership of `x^(kp+i)` in `Im(I - phi)`, `phi = x + c`.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct MonomialEntry {
    pub k: usize,
    pub i: usize,
    pub degree: usize,
    pub member: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct MonomialTable {
    pub p: u32,
    pub c: u32,
    pub degree_cap: usize,
    pub entries: Vec<MonomialEntry>,
}

impl MonomialTable {
    pub fn member(&self, degree: usize) -> Option<bool> {
        self.entries.get(degree).map(|e| e.member)
    }

    pub fn members(&self) -> Vec<usize> {
        self.entries
            .iter()
            .filter(|e| e.member)
            .map(|e| e.degree)
            .collect()
    }
}

/// Base-p digit sum.
fn digit_sum(mut n: usize, p: usize) -> usize {
    let mut s = 0;
    while n > 0 {
        s += n % p;
        n /= p;
    }
    s
}

/// `x^n ∈ Im(I - phi)` exactly when the base-p digit sum of `n` is at most
/// `p - 2`. Below `p^2` this is `i <= p - 2 - k` for `n = kp + i`; above it,
/// Frobenius commutes with `I - phi`, so `x^(pn)` is a member iff `x^n` is.
pub fn ederivation_monomial_table(
    field: Field,
    c: u32,
    degree_cap: usize,
) -> Result<MonomialTable> {
    let c = field.residue(c as u64)?;
    if c == 0 {
        return Err(Error::InvalidParameter(
            "c must be nonzero (phi = x gives the zero map)".into(),
        ));
    }
    let p = field.p() as usize;
    let entries = (0..=degree_cap)
        .map(|degree| {
            let (k, i) = (degree / p, degree % p);
            MonomialEntry {
                k,
                i,
                degree,
                member: digit_sum(degree, p) + 2 <= p,
            }
        })
        .collect();
    Ok(MonomialTable {
        p: field.p(),
        c,
        degree_cap,
        entries,
    })
}

/// Span of the images of all monomials up to a total degree, truncated by
/// total degree. Never claimed exact.
#[derive(Debug, Clone)]
pub struct MultiSubspace {
    field: Field,
    nvars: usize,
    degree_cap: u32,
    rows: BTreeMap<Monomial, BTreeMap<Monomial, u32>>,
}

impl MultiSubspace {
    pub fn degree_cap(&self) -> u32 {
        self.degree_cap
    }

    pub fn is_exact(&self) -> bool {
        false
    }

    fn reduce(&self, mut v: BTreeMap<Monomial, u32>) -> BTreeMap<Monomial, u32> {
        let f = self.field;
        loop {
            let Some((lm, &c)) = v.iter().next_back() else {
                return v;
            };
            let Some(row) = self.rows.get(lm) else {
                return v;
            };
            for (m, &b) in row {
                let e = v.entry(m.clone()).or_insert(0);
                *e = f.sub(*e, f.mul(c, b));
                if *e == 0 {
                    v.remove(m);
                }
            }
        }
    }

    fn insert(&mut self, v: BTreeMap<Monomial, u32>) {
        let mut v = self.reduce(v);
        let Some((lm, &c)) = v.iter().next_back() else {
            return;
        };
        let lm = lm.clone();
        let inv = self.field.inv(c).expect("nonzero");
        for x in v.values_mut() {
            *x = self.field.mul(*x, inv);
        }
        self.rows.insert(lm, v);
    }

    pub fn member(&self, g: &MultiPoly) -> Membership {
        match g.total_degree() {
            None => Membership::In,
            Some(d) if d > self.degree_cap => Membership::OutOfRange,
            Some(_) => {
                if self.reduce(g.clone().into_terms()).is_empty() {
                    Membership::In
                } else {
                    Membership::Out
                }
            }
        }
    }

    /// Basis rows whose leading monomial lies within the cap.
    pub fn basis(&self) -> Vec<MultiPoly> {
        self.rows
            .iter()
            .filter(|(lm, _)| lm.total_degree() <= self.degree_cap)
            .map(|(_, row)| MultiPoly::from_map(self.field, self.nvars, row.clone()))
            .collect()
    }
}

/// Images of all monomials of total degree `<= cap + 1`, intersected with
/// total degree `<= cap`.
pub fn triangular_window_span(
    d: &TriangularDerivation,
    degree_cap: u32,
    limits: &Limits,
) -> Result<MultiSubspace> {
    limits.check_degree(degree_cap as usize)?;
    let field = d.field();
    let n = d.nvars();
    let mut span = MultiSubspace {
        field,
        nvars: n,
        degree_cap,
        rows: BTreeMap::new(),
    };
    for m in monomials_up_to(n, degree_cap + 1) {
        let img = d.apply(&MultiPoly::term(field, m, 1));
        if !img.is_zero() {
            span.insert(img.into_terms());
        }
    }
    Ok(span)
}

/// `Im(f d/dx)` on `I` as a [`TruncatedSubspace`]; shorthand for tests.
pub fn derivation_span(f: &Poly, ideal: &IdealSpec, cap: usize) -> Result<TruncatedSubspace> {
    image_span(
        &MapSpec::Derivation(Derivation::new(f.clone())),
        ideal,
        cap,
        &Limits::default(),
    )
}

/// `Im(I - phi)` on `I` as a [`TruncatedSubspace`].
pub fn ederivation_span(phi: &Poly, ideal: &IdealSpec, cap: usize) -> Result<TruncatedSubspace> {
    image_span(
        &MapSpec::EDerivation(EDerivation::new(phi.clone())),
        ideal,
        cap,
        &Limits::default(),
    )
}
