//! Mathieu-Zhao verdicts for images `D(I)` and `delta(I)`.
//!
//! Every `NotMz` verdict carries a witness pair `(a, b)`: `a^m` lies in the
//! image for all `m` in the witness range while `b * a^m` does not. The
//! oracle module replays these.

use serde::Serialize;

use crate::citation::Citation;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::maps::{EDerivation, PhiShape, TriangularDerivation};
use crate::multipoly::{Monomial, MultiPoly};
use crate::poly::Poly;
use crate::span::IdealSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Decision {
    #[serde(rename = "MZ")]
    Mz,
    #[serde(rename = "MZ_RadicalZero")]
    MzRadicalZero,
    #[serde(rename = "NotMZ")]
    NotMz,
    Unknown,
}

impl Decision {
    pub fn as_str(self) -> &'static str {
        match self {
            Decision::Mz => "MZ",
            Decision::MzRadicalZero => "MZ_RadicalZero",
            Decision::NotMz => "NotMZ",
            Decision::Unknown => "Unknown",
        }
    }

    /// `Mz` or `MzRadicalZero`.
    pub fn is_mz(self) -> bool {
        matches!(self, Decision::Mz | Decision::MzRadicalZero)
    }
}

/// How witness memberships are decided.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MembershipMode {
    /// Divisibility and slot test, no truncation.
    ExactDerivation,
    /// Membership in a degree-truncated span.
    Window,
    /// `b * a^m = x^(p-1)`, excluded from `Im(I - phi)` by the translation sum.
    TranslationCertificate,
}

pub const DEFAULT_M_RANGE: (u32, u32) = (1, 8);

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub a: Poly,
    pub b: Poly,
    pub mode: MembershipMode,
    pub m_range: (u32, u32),
}

impl Witness {
    fn new(a: Poly, b: Poly, mode: MembershipMode) -> Self {
        Witness {
            a,
            b,
            mode,
            m_range: DEFAULT_M_RANGE,
        }
    }

    pub fn with_range(mut self, lo: u32, hi: u32) -> Self {
        self.m_range = (lo, hi);
        self
    }
}

/// Witness for a triangular derivation; memberships are window checks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultiWitness {
    pub a: MultiPoly,
    pub b: MultiPoly,
    pub mode: MembershipMode,
    pub m_range: (u32, u32),
}

impl MultiWitness {
    pub fn with_range(mut self, lo: u32, hi: u32) -> Self {
        self.m_range = (lo, hi);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum AnyWitness {
    Univariate(Witness),
    Multivariate(MultiWitness),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub decision: Decision,
    pub citation: Citation,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<AnyWitness>,
    pub notes: String,
}

impl Verdict {
    fn plain(decision: Decision, citation: Citation, notes: impl Into<String>) -> Self {
        debug_assert_ne!(decision, Decision::NotMz);
        Verdict {
            decision,
            citation,
            witness: None,
            notes: notes.into(),
        }
    }

    fn not_mz(citation: Citation, witness: AnyWitness, notes: impl Into<String>) -> Self {
        Verdict {
            decision: Decision::NotMz,
            citation,
            witness: Some(witness),
            notes: notes.into(),
        }
    }

    fn trivial() -> Self {
        Self::plain(Decision::Mz, Citation::TrivialImage, "the map is zero")
    }

    pub fn univariate_witness(&self) -> Option<&Witness> {
        match &self.witness {
            Some(AnyWitness::Univariate(w)) => Some(w),
            _ => None,
        }
    }

    pub fn multivariate_witness(&self) -> Option<&MultiWitness> {
        match &self.witness {
            Some(AnyWitness::Multivariate(w)) => Some(w),
            _ => None,
        }
    }
}

fn x_pow(field: Field, k: usize) -> Poly {
    Poly::monomial(field, k, 1)
}

/// Which slot of a two-slot generator carries the non-MZ witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwoSlotBranch {
    /// `j2 - j1 ≡ i1 - 1 (mod p)`; the witness uses the lower slot.
    First,
    /// `j2 - j1 ≡ 1 - i1 (mod p)`; the witness uses the upper slot.
    Second,
}

/// Congruence test for `f = x^i1 f1(x^p)` against a generator with slots
/// `j1 < j2`; `None` means the radical-zero branch.
pub fn two_slot_branch(field: Field, i1: u32, j1: u32, j2: u32) -> Option<TwoSlotBranch> {
    let p = field.p() as i64;
    let d = (j2 as i64 - j1 as i64).rem_euclid(p);
    if d == (i1 as i64 - 1).rem_euclid(p) {
        Some(TwoSlotBranch::First)
    } else if d == (1 - i1 as i64).rem_euclid(p) {
        Some(TwoSlotBranch::Second)
    } else {
        None
    }
}

/// `g(x + t)`.
fn translate(g: &Poly, t: u32) -> Poly {
    g.compose(&Poly::new(g.field(), &[t as u64, 1]).expect("in range"))
}

/// Classifies `Im(f d/dx)` in each coordinate `x -> x + t`. Slot structure
/// is not translation invariant while the MZ property is, so a `NotMz`
/// verdict in any coordinate wins; its witness is carried back by `x -> x - t`.
pub fn classify_image_derivation(f: &Poly) -> Verdict {
    let base = image_derivation_fixed(f);
    if base.decision == Decision::NotMz || f.is_zero() {
        return base;
    }
    let field = f.field();
    for t in 1..field.p() {
        let v = image_derivation_fixed(&translate(f, t));
        let Some(w) = v.univariate_witness() else {
            continue;
        };
        let back = field.neg(t);
        let w = Witness {
            a: translate(&w.a, back),
            b: translate(&w.b, back),
            ..w.clone()
        };
        return Verdict::not_mz(
            v.citation,
            AnyWitness::Univariate(w),
            format!("{} after x -> x + {t}", v.notes),
        );
    }
    base
}

fn image_derivation_fixed(f: &Poly) -> Verdict {
    if f.is_zero() {
        return Verdict::trivial();
    }
    let field = f.field();
    let p = field.p() as usize;
    let slots = f.slot_decompose().expect("f is nonzero");
    let Some(slot) = slots.single() else {
        return Verdict::plain(
            Decision::MzRadicalZero,
            Citation::ImageMultiSlot,
            format!("slot residues {:?}", slots.residues()),
        );
    };
    let r = slot.residue as usize;
    if r == 1 {
        return Verdict::plain(
            Decision::Mz,
            Citation::ImageSingleSlot,
            "single slot, residue 1",
        );
    }
    let a = slot.poly.inflate().shift(p);
    let b = x_pow(field, r + p - 1);
    Verdict::not_mz(
        Citation::ImageSingleSlotNotMz,
        AnyWitness::Univariate(Witness::new(a, b, MembershipMode::ExactDerivation)),
        format!("single slot, residue {r}"),
    )
}

/// `Im(I - phi)` on the whole ring.
pub fn classify_image_ederivation(phi: &Poly) -> Verdict {
    let e = EDerivation::new(phi.clone());
    let field = e.field();
    match e.shape() {
        PhiShape::Identity => Verdict::trivial(),
        PhiShape::Translation { c } => Verdict::not_mz(
            Citation::TranslationMonomials,
            AnyWitness::Univariate(Witness::new(
                Poly::one(field),
                x_pow(field, field.p() as usize - 1),
                MembershipMode::TranslationCertificate,
            )),
            format!("phi = x + {c}"),
        ),
        shape => Verdict::plain(
            Decision::Mz,
            Citation::EDerivationImage,
            format!("{shape}, not locally nilpotent"),
        ),
    }
}

/// `Im(f d/dx_var)` on `K[x_1..x_n]`; `var` is 0-based.
pub fn classify_single_partial_multivariate(f: &MultiPoly, var: usize) -> Result<Verdict> {
    if var >= f.nvars() {
        return Err(Error::InvalidVariable {
            index: var,
            nvars: f.nvars(),
        });
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let p = f.field().p() as i64;
    let deg = f.degree_in(var).expect("nonzero") as i64;
    let ldeg = f.low_degree_in(var).expect("nonzero") as i64;
    if (deg - 1).rem_euclid(p) == 0 || (ldeg - 1).rem_euclid(p) == 0 {
        return Ok(Verdict::plain(
            Decision::MzRadicalZero,
            Citation::MultivariateSinglePartial,
            format!("degree {deg}, low degree {ldeg} in the differentiated variable"),
        ));
    }
    if let Some(u) = f.to_univariate(var) {
        return Ok(classify_image_derivation(&u));
    }
    Ok(Verdict::plain(
        Decision::Unknown,
        Citation::MultivariateSinglePartial,
        "divisibility conditions fail and f involves other variables",
    ))
}

/// `Im D` for a triangular derivation.
pub fn classify_triangular(d: &TriangularDerivation) -> Verdict {
    let fs = d.coefficients();
    let Some(q) = fs.iter().rposition(|f| !f.is_zero()) else {
        return Verdict::trivial();
    };
    let field = d.field();
    let n = d.nvars();
    let p = field.p();
    let mut e = vec![0; n];
    for x in e.iter_mut().take(q + 1) {
        *x = p - 1;
    }
    let b = MultiPoly::term(field, Monomial::new(e), 1);
    let a = if q == n - 1 {
        MultiPoly::constant(field, n, 1)
    } else {
        fs[q].clone()
    };
    Verdict::not_mz(
        Citation::Triangular,
        AnyWitness::Multivariate(MultiWitness {
            a,
            b,
            mode: MembershipMode::Window,
            m_range: (1, 4),
        }),
        format!("last nonzero coefficient at variable {}", q + 1),
    )
}

/// `D(I)` for `D = f d/dx` and a principal ideal `I = (u)`.
///
/// The slot rules run first. When they do not produce `NotMz` but
/// `Im(f d/dx)` is not MZ, the image witness `a` times `u^p` still works:
/// `u^p` lies in `K[x^p]`, so it passes through antiderivatives and keeps
/// every `a^m` inside `D(I)`, while `b * a^m` stays outside `Im D`.
pub fn classify_ideal_derivation(f: &Poly, ideal: &IdealSpec) -> Verdict {
    let base = ideal_derivation_fixed(f, ideal);
    if base.decision == Decision::NotMz || f.is_zero() {
        return base;
    }
    let image = classify_image_derivation(f);
    let Some(w) = image.univariate_witness() else {
        return base;
    };
    let u = ideal.generator();
    let p = f.field().p() as u64;
    let w = Witness {
        a: &w.a * &u.pow(p),
        ..w.clone()
    };
    Verdict::not_mz(
        Citation::IdealLiftedImageWitness,
        AnyWitness::Univariate(w),
        format!("{}; image witness times u^p", image.notes),
    )
}

fn ideal_derivation_fixed(f: &Poly, ideal: &IdealSpec) -> Verdict {
    if f.is_zero() {
        return Verdict::trivial();
    }
    let field = f.field();
    let p = field.p() as usize;
    let fs = f.slot_decompose().expect("f is nonzero");
    let Some(fslot) = fs.single() else {
        return Verdict::plain(
            Decision::MzRadicalZero,
            Citation::IdealMultiSlotDerivation,
            format!("f has slot residues {:?}", fs.residues()),
        );
    };
    let constant = f.is_constant();
    let i1 = fslot.residue as i64;
    let f1 = fslot.poly.inflate();
    let gs = ideal
        .generator()
        .slot_decompose()
        .expect("generator is nonzero");
    let cite =
        |general: Citation, constant_case: Citation| if constant { constant_case } else { general };
    let witness = |a: Poly, b: Poly| {
        AnyWitness::Univariate(Witness::new(a, b, MembershipMode::ExactDerivation))
    };

    match gs.slots() {
        [g] => {
            if i1 == 1 {
                return Verdict::plain(
                    Decision::MzRadicalZero,
                    Citation::IdealOneSlotRadicalZero,
                    "f and the generator each occupy one slot, f in residue 1",
                );
            }
            let a = (&g.poly.inflate() * &f1).shift(2 * p);
            let b = x_pow(field, i1 as usize + p - 1);
            Verdict::not_mz(
                cite(
                    Citation::IdealOneSlotNotMz,
                    Citation::ConstantDerivationNotMz,
                ),
                witness(a, b),
                format!("f residue {i1}, generator residue {}", g.residue),
            )
        }
        [g1, g2] => {
            let branch = two_slot_branch(field, i1 as u32, g1.residue, g2.residue);
            let notes = format!(
                "f residue {i1}, generator residues ({}, {})",
                g1.residue, g2.residue
            );
            let b = x_pow(field, i1 as usize + p - 1);
            if branch == Some(TwoSlotBranch::First) {
                let a = (&g1.poly.inflate() * &f1).shift(3 * p);
                Verdict::not_mz(
                    cite(
                        Citation::IdealTwoSlotsFirst,
                        Citation::ConstantDerivationNotMz,
                    ),
                    witness(a, b),
                    notes,
                )
            } else if branch == Some(TwoSlotBranch::Second) {
                let a = (&g2.poly.inflate() * &f1).shift(3 * p);
                Verdict::not_mz(
                    cite(
                        Citation::IdealTwoSlotsSecond,
                        Citation::ConstantDerivationNotMz,
                    ),
                    witness(a, b),
                    notes,
                )
            } else {
                Verdict::plain(
                    Decision::MzRadicalZero,
                    cite(
                        Citation::IdealTwoSlotsRadicalZero,
                        Citation::ConstantDerivationRadicalZero,
                    ),
                    notes,
                )
            }
        }
        many => Verdict::plain(
            Decision::MzRadicalZero,
            cite(
                Citation::IdealManySlots,
                Citation::ConstantDerivationRadicalZero,
            ),
            format!("generator occupies {} slots", many.len()),
        ),
    }
}

/// `delta(I)` for `delta = I - phi` and a principal ideal `I`.
pub fn classify_ideal_ederivation(phi: &Poly, ideal: &IdealSpec) -> Verdict {
    let e = EDerivation::new(phi.clone());
    let field = e.field();
    let p = field.p() as usize;
    let shape = e.shape();
    if shape == PhiShape::Identity {
        return Verdict::trivial();
    }
    if let PhiShape::Higher { degree } = shape {
        return Verdict::plain(
            Decision::Mz,
            Citation::EIdealHigherDegree,
            format!("deg phi = {degree}"),
        );
    }
    if ideal.is_whole_ring() {
        return classify_image_ederivation(phi);
    }
    let u = ideal.generator();
    let translation_witness = || {
        AnyWitness::Univariate(Witness::new(
            Poly::one(field),
            x_pow(field, p - 1),
            MembershipMode::TranslationCertificate,
        ))
    };
    let notes = format!("{shape}, generator {u}");

    if ideal.degree() == 1 {
        return match shape {
            PhiShape::Constant { .. } => {
                Verdict::plain(Decision::Mz, Citation::EIdealLinearConstant, notes)
            }
            PhiShape::Translation { .. } => Verdict::not_mz(
                Citation::EIdealLinearTranslation,
                translation_witness(),
                notes,
            ),
            // phi = q x + b is conjugate to q x by a translation, which maps
            // a linear generator to another linear generator.
            PhiShape::Affine { .. } => Verdict::plain(
                Decision::MzRadicalZero,
                Citation::EIdealLinearScaling,
                notes,
            ),
            PhiShape::Identity | PhiShape::Higher { .. } => unreachable!("handled above"),
        };
    }

    let i = ideal.degree();
    let is_monomial = u.terms().count() == 1;
    if !is_monomial {
        return Verdict::plain(Decision::Unknown, Citation::EIdealUncovered, notes);
    }
    match shape {
        PhiShape::Constant { c: 0 } => {
            Verdict::plain(Decision::Mz, Citation::EIdealPowerZero, notes)
        }
        PhiShape::Constant { c } => {
            let ci = field.pow(c, i as u64);
            let a = &x_pow(field, i) - &Poly::constant(field, ci);
            let b = Poly::x(field);
            Verdict::not_mz(
                Citation::EIdealPowerConstant,
                AnyWitness::Univariate(Witness::new(a, b, MembershipMode::Window).with_range(2, 8)),
                notes,
            )
        }
        PhiShape::Translation { .. } => Verdict::not_mz(
            Citation::EIdealPowerTranslation,
            translation_witness(),
            notes,
        ),
        PhiShape::Affine { b: 0, .. } => {
            Verdict::plain(Decision::MzRadicalZero, Citation::EIdealPowerScaling, notes)
        }
        _ => Verdict::plain(Decision::Unknown, Citation::EIdealUncovered, notes),
    }
}

/// `sum_{j<p} (x + j c)^(p-1)`, which equals the constant `-c^(p-1)`.
///
/// If `x^(p-1) = u(x) - u(x + c)`, summing the shifts by `j c` telescopes to
/// zero, so a nonzero value excludes `x^(p-1)` from `Im(I - phi)` for
/// `phi = x + c`.
pub fn translation_sum_certificate(field: Field, c: u32) -> Result<Poly> {
    let c = field.residue(c as u64)?;
    if c == 0 {
        return Err(Error::InvalidParameter("c must be nonzero".into()));
    }
    let p = field.p();
    let mut sum = Poly::zero(field);
    for j in 0..p {
        let shift = Poly::new(field, &[field.mul(j, c) as u64, 1])?;
        sum = &sum + &shift.pow(p as u64 - 1);
    }
    Ok(sum)
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

    fn ideal(p: u64, c: &[u64]) -> IdealSpec {
        IdealSpec::new(poly(p, c)).unwrap()
    }

    #[test]
    fn image_derivation_examples() {
        assert_eq!(
            classify_image_derivation(&mono(3, 1)).decision,
            Decision::Mz
        );
        let v = classify_image_derivation(&mono(3, 2));
        assert_eq!(v.decision, Decision::NotMz);
        let w = v.univariate_witness().unwrap();
        assert_eq!((&w.a, &w.b), (&mono(3, 3), &mono(3, 4)));
        assert_eq!(
            classify_image_derivation(&poly(2, &[1, 1, 1])).decision,
            Decision::MzRadicalZero
        );
        assert_eq!(
            classify_image_derivation(&mono(5, 6)).decision,
            Decision::Mz
        );
        assert_eq!(
            classify_image_derivation(&Poly::zero(gf(5))).citation,
            Citation::TrivialImage
        );
    }

    #[test]
    fn image_ederivation_examples() {
        assert_eq!(
            classify_image_ederivation(&poly(3, &[1, 1])).decision,
            Decision::NotMz
        );
        assert_eq!(
            classify_image_ederivation(&poly(5, &[0, 2])).decision,
            Decision::Mz
        );
        assert_eq!(
            classify_image_ederivation(&poly(5, &[1, 0, 1])).decision,
            Decision::Mz
        );
    }

    #[test]
    fn multivariate_partial_examples() {
        let f3 = gf(3);
        let f = MultiPoly::from_terms(f3, 2, &[(vec![4, 1], 1), (vec![1, 0], 1)]).unwrap();
        let v = classify_single_partial_multivariate(&f, 0).unwrap();
        assert_eq!(v.decision, Decision::MzRadicalZero);
        let f = MultiPoly::from_terms(gf(2), 2, &[(vec![3, 1], 1)]).unwrap();
        assert_eq!(
            classify_single_partial_multivariate(&f, 0)
                .unwrap()
                .decision,
            Decision::MzRadicalZero
        );
        let f = MultiPoly::from_terms(f3, 2, &[(vec![2, 1], 1)]).unwrap();
        assert_eq!(
            classify_single_partial_multivariate(&f, 0)
                .unwrap()
                .decision,
            Decision::Unknown
        );
        assert!(classify_single_partial_multivariate(&f, 2).is_err());
    }

    #[test]
    fn triangular_examples() {
        let f2 = gf(2);
        let x2 = MultiPoly::var(f2, 2, 1).unwrap();
        let d = TriangularDerivation::new(vec![x2.clone(), MultiPoly::constant(f2, 2, 1)]).unwrap();
        let v = classify_triangular(&d);
        let w = v.multivariate_witness().unwrap();
        assert_eq!(w.a, MultiPoly::constant(f2, 2, 1));
        assert_eq!(
            w.b,
            MultiPoly::from_terms(f2, 2, &[(vec![1, 1], 1)]).unwrap()
        );
        let d = TriangularDerivation::new(vec![x2.clone(), MultiPoly::zero(f2, 2)]).unwrap();
        let w = classify_triangular(&d)
            .multivariate_witness()
            .cloned()
            .unwrap();
        assert_eq!(w.a, x2);
        assert_eq!(w.b, MultiPoly::var(f2, 2, 0).unwrap());
        let zero = TriangularDerivation::new(vec![MultiPoly::zero(f2, 2), MultiPoly::zero(f2, 2)])
            .unwrap();
        assert_eq!(classify_triangular(&zero).decision, Decision::Mz);
    }

    #[test]
    fn ideal_derivation_examples() {
        let f = mono(5, 3);
        let v = classify_ideal_derivation(&f, &ideal(5, &[1, 0, 1]));
        assert_eq!(
            (v.decision, v.citation),
            (Decision::NotMz, Citation::IdealTwoSlotsFirst)
        );
        let v = classify_ideal_derivation(&f, &ideal(5, &[1, 0, 0, 1]));
        assert_eq!(
            (v.decision, v.citation),
            (Decision::NotMz, Citation::IdealTwoSlotsSecond)
        );
        // Slots (0, 1) fail the congruence, yet x^5 u^5 lies in the radical.
        for g in [&[1u64, 1][..], &[1, 1, 0, 0, 0, 1, 1]] {
            let v = classify_ideal_derivation(&f, &ideal(5, g));
            assert_eq!(
                (v.decision, v.citation),
                (Decision::NotMz, Citation::IdealLiftedImageWitness)
            );
            let w = v.univariate_witness().unwrap();
            assert_eq!(w.a, &mono(5, 5) * &poly(5, g).pow(5));
            assert_eq!(w.b, mono(5, 7));
        }
        for g in [&[1u64, 1][..], &[0, 1], &[1], &[1, 0, 1]] {
            let v = classify_ideal_derivation(&Poly::one(gf(2)), &ideal(2, g));
            assert_eq!(v.decision, Decision::NotMz);
        }
        let v = classify_ideal_derivation(&poly(3, &[0, 0, 1, 0, 1]), &ideal(3, &[1, 1]));
        assert_eq!(v.decision, Decision::MzRadicalZero);
        assert_eq!(v.citation, Citation::IdealMultiSlotDerivation);
    }

    #[test]
    fn ideal_ederivation_examples() {
        let v = classify_ideal_ederivation(&poly(3, &[1, 1]), &ideal(3, &[0, 1]));
        assert_eq!(
            (v.decision, v.citation),
            (Decision::NotMz, Citation::EIdealLinearTranslation)
        );
        let v = classify_ideal_ederivation(&poly(3, &[2]), &ideal(3, &[1, 1]));
        assert_eq!(v.decision, Decision::Mz);
        let v = classify_ideal_ederivation(&poly(5, &[3]), &ideal(5, &[0, 0, 1]));
        assert_eq!(v.decision, Decision::NotMz);
        let w = v.univariate_witness().unwrap();
        assert_eq!(w.a, poly(5, &[1, 0, 1]));
        assert_eq!(w.b, mono(5, 1));
        let v = classify_ideal_ederivation(&poly(3, &[0, 2]), &ideal(3, &[0, 0, 1]));
        assert!(v.decision.is_mz());
    }

    #[test]
    fn translation_sums() {
        assert_eq!(
            translation_sum_certificate(gf(3), 1).unwrap(),
            poly(3, &[2])
        );
        assert_eq!(
            translation_sum_certificate(gf(2), 1).unwrap(),
            poly(2, &[1])
        );
        for c in 1..5u32 {
            let want = gf(5).neg(gf(5).pow(c, 4));
            assert_eq!(
                translation_sum_certificate(gf(5), c).unwrap(),
                Poly::constant(gf(5), want)
            );
        }
        assert!(translation_sum_certificate(gf(5), 0).is_err());
    }
}
