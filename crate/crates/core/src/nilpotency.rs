//! Local nilpotency and local finiteness of `f d/dx` and `I - phi`.
//!
//! A derivation is locally nilpotent exactly when some iterate kills `x`,
//! so every decision here tracks the orbit `x, D(x), D^2(x), ...`.

use std::collections::HashMap;

use serde::Serialize;

use crate::citation::Citation;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::maps::{apply_derivation, EDerivation, LinearMap, MapSpec, PhiShape};
use crate::poly::Poly;
use crate::span::Limits;

pub const DEFAULT_ITERATION_CAP: usize = 64;

/// Why an orbit never reaches zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// A closed formula for the iterates shows they never vanish.
    ClosedForm { formula: String },
    /// `D^j(x) = D^k(x) != 0` with `j < k`, so the orbit is periodic.
    Cycle { j: usize, k: usize },
    /// In the two-slot expansion of `D^(k+1)(x)`, the coefficient attached
    /// to the slot with this residue stays a nonzero power of `coefficient`.
    ConstantTrack { residue: u32, coefficient: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status")]
pub enum LnStatus {
    /// `index` is the least `k` with `D^k(x) = 0`; for an E-derivation
    /// `I - phi` with `phi = x + c`, it is `p`, since `(I - phi)^p = I - phi^p = 0`.
    LocallyNilpotent {
        index: usize,
    },
    NotLocallyNilpotent {
        certificate: Certificate,
    },
    /// No decision within `cap` iterations.
    Unknown {
        cap: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LnVerdict {
    #[serde(flatten)]
    pub status: LnStatus,
    pub citation: Citation,
}

impl LnVerdict {
    fn new(status: LnStatus, citation: Citation) -> Self {
        LnVerdict { status, citation }
    }

    pub fn is_ln(&self) -> bool {
        matches!(self.status, LnStatus::LocallyNilpotent { .. })
    }

    pub fn is_not_ln(&self) -> bool {
        matches!(self.status, LnStatus::NotLocallyNilpotent { .. })
    }

    pub fn index(&self) -> Option<usize> {
        match self.status {
            LnStatus::LocallyNilpotent { index } => Some(index),
            _ => None,
        }
    }
}

/// Replays a cycle certificate: `m^j(x) = m^k(x) != 0`.
pub fn cycle_holds(map: &MapSpec, j: usize, k: usize) -> Result<bool> {
    let x = Poly::x(map.field());
    let a = map.iterate_univariate(&x, j)?;
    let b = map.iterate_univariate(&a, k - j)?;
    Ok(j < k && !a.is_zero() && a == b)
}

enum Orbit {
    Vanishes(usize),
    Cycle(usize, usize),
    Exhausted,
}

fn orbit(step: impl Fn(&Poly) -> Poly, start: Poly, cap: usize, degree_limit: usize) -> Orbit {
    let mut seen: HashMap<Poly, usize> = HashMap::new();
    let mut cur = start;
    for k in 1..=cap {
        cur = step(&cur);
        if cur.is_zero() {
            return Orbit::Vanishes(k);
        }
        if cur.degree().unwrap_or(0) > degree_limit {
            return Orbit::Exhausted;
        }
        if let Some(&j) = seen.get(&cur) {
            return Orbit::Cycle(j, k);
        }
        seen.insert(cur.clone(), k);
    }
    Orbit::Exhausted
}

/// Least `k >= 1` with `D^k(x) = 0`, searched up to `bound`.
fn vanishing_index(f: &Poly, bound: usize) -> Option<usize> {
    let mut cur = Poly::x(f.field());
    for k in 1..=bound {
        cur = apply_derivation(f, &cur);
        if cur.is_zero() {
            return Some(k);
        }
    }
    None
}

fn checked_ln(f: &Poly, index: usize, citation: Citation) -> LnVerdict {
    assert_eq!(
        vanishing_index(f, index),
        Some(index),
        "claimed nilpotency index {index} does not replay"
    );
    LnVerdict::new(LnStatus::LocallyNilpotent { index }, citation)
}

fn not_ln(formula: &str, citation: Citation) -> LnVerdict {
    LnVerdict::new(
        LnStatus::NotLocallyNilpotent {
            certificate: Certificate::ClosedForm {
                formula: formula.to_string(),
            },
        },
        citation,
    )
}

/// Decides whether `D = f d/dx` is locally nilpotent.
pub fn is_ln_derivation(f: &Poly, iteration_cap: usize) -> Result<LnVerdict> {
    let field = f.field();
    let p = field.p();
    let slots = f.slot_decompose()?;

    if let Some(slot) = slots.single() {
        let r = slot.residue;
        if r == 1 {
            return Ok(not_ln(
                "D^M(x) = x * f1(x^p)^M for all M >= 1",
                Citation::SingleSlotNilpotency,
            ));
        }
        // D^j(x) carries the factor prod_{t<j} (t(r-1) + 1); the first
        // vanishing factor is at t = -1/(r-1) mod p.
        let rm1 = field.reduce(r as i64 - 1);
        let t = field.neg(field.inv(rm1)?);
        return Ok(checked_ln(
            f,
            t as usize + 1,
            Citation::SingleSlotNilpotency,
        ));
    }

    if p == 2 {
        return Ok(not_ln(
            "D^M(x) = f * f1(x^2)^(M-1) for all M >= 2",
            Citation::CharTwoNilpotency,
        ));
    }

    if p == 3 {
        if slots.len() == 3 {
            let f0 = slots.get(0).expect("three slots");
            let f1 = slots.get(1).expect("three slots");
            let f2 = slots.get(2).expect("three slots");
            if f1 * f1 == f0 * f2 {
                return Ok(checked_ln(f, 3, Citation::CharThreeNilpotency));
            }
            return Ok(not_ln(
                "D^(2k+1)(x) = f * (f1^2 - f0 f2)^k with f1^2 != f0 f2",
                Citation::CharThreeNilpotency,
            ));
        }
        return Ok(not_ln(
            "two-slot iterates are f times a nonzero power of a slot product",
            Citation::CharThreeNilpotency,
        ));
    }

    if slots.len() == 2 {
        if let Some(s) = slots.slots().iter().find(|s| s.residue == 1) {
            return Ok(LnVerdict::new(
                LnStatus::NotLocallyNilpotent {
                    certificate: Certificate::ConstantTrack {
                        residue: 1,
                        coefficient: s.poly.leading_coeff().expect("slot is nonzero"),
                    },
                },
                Citation::UnitCornerCoefficient,
            ));
        }
    }

    let limit = Limits::default().max_degree_cap;
    let status = match orbit(
        |g| apply_derivation(f, g),
        Poly::x(field),
        iteration_cap,
        limit,
    ) {
        Orbit::Vanishes(k) => LnStatus::LocallyNilpotent { index: k },
        Orbit::Cycle(j, k) => LnStatus::NotLocallyNilpotent {
            certificate: Certificate::Cycle { j, k },
        },
        Orbit::Exhausted => LnStatus::Unknown { cap: iteration_cap },
    };
    Ok(LnVerdict::new(status, Citation::OrbitSearch))
}

/// Decides whether `I - phi` is locally nilpotent: only translations are.
pub fn is_ln_ederivation(phi: &Poly) -> Result<LnVerdict> {
    let e = EDerivation::new(phi.clone());
    let field = e.field();
    let x = Poly::x(field);
    let cite = Citation::EDerivationImage;
    let verdict = match e.shape() {
        PhiShape::Identity => LnVerdict::new(LnStatus::LocallyNilpotent { index: 1 }, cite),
        PhiShape::Translation { .. } => {
            let p = field.p() as usize;
            assert!(e.iterate(&x, p).is_zero());
            LnVerdict::new(LnStatus::LocallyNilpotent { index: p }, cite)
        }
        PhiShape::Constant { .. } | PhiShape::Affine { .. } => {
            // The orbit stays in span{1, x}, so it is eventually periodic.
            let cap = (field.p() * field.p()) as usize + 2;
            match orbit(|g| e.apply(g), x, cap, 1) {
                Orbit::Cycle(j, k) => LnVerdict::new(
                    LnStatus::NotLocallyNilpotent {
                        certificate: Certificate::Cycle { j, k },
                    },
                    cite,
                ),
                _ => {
                    unreachable!("a nonzero affine orbit neither vanishes nor escapes span{{1, x}}")
                }
            }
        }
        PhiShape::Higher { .. } => not_ln("deg (I - phi)^k(x) = (deg phi)^k", cite),
    };
    Ok(verdict)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Finiteness {
    LocallyFinite,
    NotLocallyFinite,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LfVerdict {
    pub status: Finiteness,
    pub citation: Citation,
}

/// Local finiteness where it is settled: every `I - phi`, single-slot
/// derivations with residue 1, and anything locally nilpotent.
pub fn is_locally_finite(map: &MapSpec, iteration_cap: usize) -> Result<LfVerdict> {
    let verdict = |status, citation| Ok(LfVerdict { status, citation });
    match map {
        MapSpec::EDerivation(e) => {
            let affine = e.phi().degree().unwrap_or(0) <= 1;
            verdict(
                if affine {
                    Finiteness::LocallyFinite
                } else {
                    Finiteness::NotLocallyFinite
                },
                Citation::EDerivationLocallyFinite,
            )
        }
        MapSpec::Derivation(d) => {
            let f = d.coefficient();
            if f.is_zero() {
                return verdict(Finiteness::LocallyFinite, Citation::TrivialImage);
            }
            let slots = f.slot_decompose()?;
            if let Some(s) = slots.single().filter(|s| s.residue == 1) {
                return verdict(
                    if s.poly.is_constant() {
                        Finiteness::LocallyFinite
                    } else {
                        Finiteness::NotLocallyFinite
                    },
                    Citation::SingleSlotFiniteness,
                );
            }
            let ln = is_ln_derivation(f, iteration_cap)?;
            if ln.is_ln() {
                verdict(Finiteness::LocallyFinite, ln.citation)
            } else {
                verdict(Finiteness::Unknown, ln.citation)
            }
        }
        MapSpec::Triangular(_) => Err(Error::UnsupportedMap(
            "local finiteness is decided for univariate maps only",
        )),
    }
}

/// An index `J` with `D^J(x) = 0` for every `D = x^r f1(x^p) d/dx` with
/// residue `r`, assembled from the least `N` with `N ≡ 1 (mod r'-1)` and
/// `N ≡ 0 (mod p)` over all `r'` in `2..p`.
pub fn nilpotency_bound(field: Field, r: u32) -> Result<usize> {
    let p = field.p() as usize;
    if r as usize >= p {
        return Err(Error::InvalidParameter(format!(
            "residue {r} must be below p = {p}"
        )));
    }
    if r == 1 {
        return Err(Error::InvalidParameter(
            "residue 1 gives a derivation that is not locally nilpotent".into(),
        ));
    }
    if r == 0 {
        return Ok(2);
    }
    let n_max = (2..p)
        .map(|rp| {
            (1..)
                .map(|s| s * p)
                .find(|n| n % (rp - 1) == 1 % (rp - 1))
                .expect("p and r'-1 are coprime")
        })
        .max()
        .expect("r >= 2 implies p >= 3");
    Ok(n_max + 1)
}

/// Coefficients `a_{k,j}` of the two-slot expansion
/// `D^(k+1)(x) = sum_j a_{k,j} x^((k-j+2) i1 + (j-1) i2 - k) A^(k-j+2) B^(j-1)`
/// for `f = c1 x^i1 A(x^p) + c2 x^i2 B(x^p)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoefficientTable {
    pub p: u32,
    pub i1: u32,
    pub i2: u32,
    pub c1: u32,
    pub c2: u32,
    /// `rows[k][j - 1] = a_{k,j}`, with `k + 2` entries in row `k`.
    pub rows: Vec<Vec<u32>>,
}

pub const MAX_TABLE_ROWS: usize = 1000;

/// Builds rows `0..=k_max` from `a_{0,1} = c1`, `a_{0,2} = c2` and
/// `a_{l+1,j} = c1 ((l-j+2) i1 + (j-1) i2 - l) a_{l,j}
///            + c2 ((l-j+3) i1 + (j-2) i2 - l) a_{l,j-1}`,
/// with out-of-range entries read as zero.
pub fn coeff_table(
    field: Field,
    i1: u32,
    i2: u32,
    c1: u32,
    c2: u32,
    k_max: usize,
) -> Result<CoefficientTable> {
    let p = field.p();
    if i1 >= p || i2 >= p || i1 == i2 {
        return Err(Error::InvalidParameter(format!(
            "slot residues must be distinct and below p = {p}, got {i1} and {i2}"
        )));
    }
    let c1 = field.residue(c1 as u64)?;
    let c2 = field.residue(c2 as u64)?;
    if c1 == 0 || c2 == 0 {
        return Err(Error::InvalidParameter("c1 and c2 must be nonzero".into()));
    }
    if k_max > MAX_TABLE_ROWS {
        return Err(Error::InvalidParameter(format!(
            "k_max {k_max} exceeds {MAX_TABLE_ROWS}"
        )));
    }
    let (a, b) = (i1 as i64, i2 as i64);
    let mut rows = vec![vec![c1, c2]];
    for l in 0..k_max as i64 {
        let prev = rows.last().expect("row 0 exists");
        let get = |j: i64| -> u32 {
            if j >= 1 && (j as usize) <= prev.len() {
                prev[j as usize - 1]
            } else {
                0
            }
        };
        let row = (1..=l + 3)
            .map(|j| {
                let own = field.reduce((l - j + 2) * a + (j - 1) * b - l);
                let left = field.reduce((l - j + 3) * a + (j - 2) * b - l);
                field.add(
                    field.mul(field.mul(c1, own), get(j)),
                    field.mul(field.mul(c2, left), get(j - 1)),
                )
            })
            .collect();
        rows.push(row);
    }
    Ok(CoefficientTable {
        p,
        i1,
        i2,
        c1,
        c2,
        rows,
    })
}

impl CoefficientTable {
    pub fn k_max(&self) -> usize {
        self.rows.len() - 1
    }

    /// `D^(k+1)(x)` rebuilt from row `k`, with `A`, `B` given as polynomials
    /// in `x` (already in `K[x^p]`).
    pub fn reconstruct(&self, k: usize, a: &Poly, b: &Poly) -> Result<Poly> {
        let field = a.field();
        let row = self.rows.get(k).ok_or_else(|| {
            Error::InvalidParameter(format!("row {k} is beyond k_max = {}", self.k_max()))
        })?;
        let mut out = Poly::zero(field);
        for (idx, &coef) in row.iter().enumerate() {
            if coef == 0 {
                continue;
            }
            let j = idx as i64 + 1;
            let k = k as i64;
            let e = (k - j + 2) * self.i1 as i64 + (j - 1) * self.i2 as i64 - k;
            if e < 0 {
                return Err(Error::InvalidParameter(format!(
                    "nonzero coefficient at negative exponent {e}"
                )));
            }
            let term = &(&a.pow((k - j + 2) as u64) * &b.pow((j - 1) as u64)).shift(e as usize)
                * &Poly::constant(field, coef);
            out = &out + &term;
        }
        Ok(out)
    }

    /// Rows as CSV: `k` followed by `a_{k,1} .. a_{k,k+2}`, padded with
    /// empty cells to the width of the last row.
    pub fn to_csv(&self) -> String {
        let width = self.rows.last().map_or(0, Vec::len);
        let mut out = String::from("k");
        for j in 1..=width {
            out.push_str(&format!(",a{j}"));
        }
        out.push('\n');
        for (k, row) in self.rows.iter().enumerate() {
            out.push_str(&k.to_string());
            for j in 0..width {
                out.push(',');
                if let Some(v) = row.get(j) {
                    out.push_str(&v.to_string());
                }
            }
            out.push('\n');
        }
        out
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
    fn derivation_examples() {
        let v = is_ln_derivation(&poly(3, &[0, 0, 1]), 64).unwrap();
        assert_eq!(v.index(), Some(3));
        let v = is_ln_derivation(&poly(3, &[0, 0, 0, 0, 1]), 64).unwrap();
        assert!(v.is_not_ln());
        let v = is_ln_derivation(&poly(3, &[0, 0, 1, 0, 1, 0, 1]), 64).unwrap();
        assert_eq!(v.index(), Some(3));
        assert_eq!(v.citation, Citation::CharThreeNilpotency);
        let v = is_ln_derivation(&poly(5, &[1, 0, 1]), 64).unwrap();
        assert_eq!(
            v.status,
            LnStatus::NotLocallyNilpotent {
                certificate: Certificate::Cycle { j: 1, k: 5 }
            }
        );
        assert!(cycle_holds(&MapSpec::derivation(poly(5, &[1, 0, 1])), 1, 5).unwrap());
        assert!(is_ln_derivation(&Poly::zero(gf(3)), 64).is_err());
    }

    #[test]
    fn ederivation_examples() {
        let v = is_ln_ederivation(&poly(3, &[1, 1])).unwrap();
        assert_eq!(v.index(), Some(3));
        let v = is_ln_ederivation(&poly(3, &[0, 2])).unwrap();
        assert_eq!(
            v.status,
            LnStatus::NotLocallyNilpotent {
                certificate: Certificate::Cycle { j: 1, k: 3 }
            }
        );
        assert_eq!(
            is_ln_ederivation(&poly(5, &[0, 1])).unwrap().index(),
            Some(1)
        );
        assert!(is_ln_ederivation(&poly(5, &[0, 0, 1])).unwrap().is_not_ln());
        assert!(is_ln_ederivation(&poly(5, &[2])).unwrap().is_not_ln());
    }

    #[test]
    fn finiteness_examples() {
        let lf = |m: MapSpec| is_locally_finite(&m, 64).unwrap().status;
        assert_eq!(
            lf(MapSpec::ederivation(poly(3, &[0, 0, 1]))),
            Finiteness::NotLocallyFinite
        );
        assert_eq!(
            lf(MapSpec::derivation(poly(3, &[0, 1]))),
            Finiteness::LocallyFinite
        );
        assert_eq!(
            lf(MapSpec::derivation(poly(3, &[0, 0, 0, 0, 1]))),
            Finiteness::NotLocallyFinite
        );
        assert_eq!(
            lf(MapSpec::derivation(poly(3, &[0, 0, 1]))),
            Finiteness::LocallyFinite
        );
    }

    #[test]
    fn bound_examples() {
        assert_eq!(nilpotency_bound(gf(3), 2).unwrap(), 4);
        assert_eq!(nilpotency_bound(gf(5), 2).unwrap(), 11);
        assert_eq!(nilpotency_bound(gf(2), 0).unwrap(), 2);
        assert!(nilpotency_bound(gf(5), 1).is_err());
    }

    #[test]
    fn table_examples() {
        let t = coeff_table(gf(5), 0, 2, 1, 1, 2).unwrap();
        assert_eq!(t.rows, vec![vec![1, 1], vec![0, 2, 2], vec![0, 2, 3, 1]]);
        let t = coeff_table(gf(7), 1, 3, 4, 2, 12).unwrap();
        assert!(t.rows.iter().all(|r| r[0] != 0));
        let t = coeff_table(gf(5), 1, 3, 1, 1, 10).unwrap();
        assert!(t.rows.iter().all(|r| r[0] == 1));
        assert!(coeff_table(gf(5), 2, 2, 1, 1, 3).is_err());
    }

    #[test]
    fn table_reconstructs_iterates() {
        let f5 = gf(5);
        let one = Poly::one(f5);
        let t = coeff_table(f5, 0, 2, 1, 1, 2).unwrap();
        let d = MapSpec::derivation(poly(5, &[1, 0, 1]));
        for k in 0..=2 {
            let want = d.iterate_univariate(&Poly::x(f5), k + 1).unwrap();
            assert_eq!(t.reconstruct(k, &one, &one).unwrap(), want);
        }
    }

    #[test]
    fn csv_layout() {
        let t = coeff_table(gf(5), 0, 2, 1, 1, 1).unwrap();
        assert_eq!(t.to_csv(), "k,a1,a2,a3\n0,1,1,\n1,0,2,2\n");
    }
}
