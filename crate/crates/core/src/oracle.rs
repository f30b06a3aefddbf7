//! Brute-force checks of classifier output: witness replay, radical
//! candidate search in truncated images, and sweeps comparing the two.

use rayon::prelude::*;
use serde::Serialize;

use crate::classify::{
    classify_ideal_derivation, translation_sum_certificate, Decision, MembershipMode, MultiWitness,
    Verdict, Witness,
};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::maps::{MapSpec, PhiShape, TriangularDerivation};
use crate::poly::Poly;
use crate::span::{
    exact_member_ideal_derivation, image_span, triangular_window_span, IdealSpec, Limits,
    Membership, TruncatedSubspace,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ProbeConfig {
    pub max_candidate_degree: usize,
    pub degree_cap: usize,
    pub power_floor: u32,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        ProbeConfig {
            max_candidate_degree: 3,
            degree_cap: 40,
            power_floor: 2,
        }
    }
}

impl ProbeConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_candidate_degree == 0 || self.degree_cap == 0 || self.power_floor == 0 {
            return Err(Error::InvalidParameter(
                "probe parameters must be positive".into(),
            ));
        }
        if self.degree_cap < self.max_candidate_degree * self.power_floor as usize {
            return Err(Error::InvalidParameter(format!(
                "degree cap {} is below max_candidate_degree * power_floor = {}",
                self.degree_cap,
                self.max_candidate_degree * self.power_floor as usize
            )));
        }
        Ok(())
    }

    /// Powers tested for a candidate of degree `deg`.
    pub fn power_window(&self, deg: usize) -> (u32, u32) {
        let hi = self
            .degree_cap
            .checked_div(deg)
            .map_or(self.power_floor, |q| q as u32);
        (self.power_floor, hi)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProbeReport {
    /// Monic candidates whose every tested power lies in the subspace.
    pub candidates: Vec<Poly>,
    pub scanned: u64,
    pub exact: bool,
    pub config: ProbeConfig,
    /// Surviving candidates are consistent with the radical; an empty list
    /// is evidence for, not proof of, a zero radical.
    pub note: &'static str,
}

/// Whether `g^m` lies in `s` for every `m` in the power window of `g`.
pub fn survives(s: &TruncatedSubspace, g: &Poly, cfg: &ProbeConfig) -> bool {
    let deg = g.degree().expect("candidate is nonzero");
    let (lo, hi) = cfg.power_window(deg);
    let mut power = g.pow(lo as u64);
    for m in lo..=hi {
        if s.member(&power) != Membership::In {
            return false;
        }
        if m < hi {
            power = &power * g;
        }
    }
    true
}

fn candidate_count(p: u64, d: usize) -> u64 {
    (0..=d as u32).map(|k| p.pow(k)).sum()
}

/// Monic polynomial number `idx` in the order: by degree, then by the
/// lower coefficients read as base-p digits.
fn candidate(field: Field, mut idx: u64) -> Poly {
    let p = field.p() as u64;
    let mut deg = 0u32;
    while idx >= p.pow(deg) {
        idx -= p.pow(deg);
        deg += 1;
    }
    let mut coeffs = Vec::with_capacity(deg as usize + 1);
    for _ in 0..deg {
        coeffs.push((idx % p) as u32);
        idx /= p;
    }
    coeffs.push(1);
    Poly::from_residues(field, coeffs)
}

/// Enumerates monic `g` with `deg g <= d` and keeps those whose powers stay
/// in `s`.
pub fn radical_probe(
    s: &TruncatedSubspace,
    cfg: &ProbeConfig,
    limits: &Limits,
) -> Result<ProbeReport> {
    cfg.validate()?;
    if s.degree_cap() < cfg.degree_cap {
        return Err(Error::InvalidParameter(format!(
            "subspace cap {} is below probe cap {}",
            s.degree_cap(),
            cfg.degree_cap
        )));
    }
    let field = s.field();
    let p = field.p() as u64;
    let required = p
        .checked_pow(cfg.max_candidate_degree as u32 + 1)
        .unwrap_or(u64::MAX);
    if required > limits.enumeration_budget {
        return Err(Error::BudgetExceeded {
            required,
            budget: limits.enumeration_budget,
        });
    }
    let scanned = candidate_count(p, cfg.max_candidate_degree);
    let candidates: Vec<Poly> = (0..scanned)
        .into_par_iter()
        .filter_map(|idx| {
            let g = candidate(field, idx);
            survives(s, &g, cfg).then_some(g)
        })
        .collect();
    Ok(ProbeReport {
        candidates,
        scanned,
        exact: s.is_exact(),
        config: *cfg,
        note: "powers tested only within the window; an empty list corroborates a zero radical",
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stage {
    Range,
    AMembership,
    BNonmembership,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "result")]
pub enum WitnessCheck {
    Verified,
    Refuted { m: u32, stage: Stage },
}

impl WitnessCheck {
    pub fn is_verified(&self) -> bool {
        *self == WitnessCheck::Verified
    }
}

fn check_range(lo: u32, hi: u32) -> Result<()> {
    if lo > hi {
        return Err(Error::InvalidParameter(format!(
            "empty m range [{lo}, {hi}]"
        )));
    }
    Ok(())
}

/// Replays a witness: first `a^m` in the image for every `m` in range, then
/// `b * a^m` outside it.
pub fn verify_witness(
    map: &MapSpec,
    ideal: &IdealSpec,
    w: &Witness,
    limits: &Limits,
) -> Result<WitnessCheck> {
    let (lo, hi) = w.m_range;
    check_range(lo, hi)?;
    let powers: Vec<(u32, Poly)> = (lo..=hi).map(|m| (m, w.a.pow(m as u64))).collect();

    let exact_f = match (w.mode, map) {
        (MembershipMode::ExactDerivation, MapSpec::Derivation(d)) => Some(d.coefficient()),
        (MembershipMode::ExactDerivation, _) => {
            return Err(Error::UnsupportedMap(
                "exact membership applies to derivations only",
            ))
        }
        _ => None,
    };
    if let Some(f) = exact_f {
        for (m, am) in &powers {
            if !exact_member_ideal_derivation(f, ideal, am) {
                return Ok(WitnessCheck::Refuted {
                    m: *m,
                    stage: Stage::AMembership,
                });
            }
        }
        for (m, am) in &powers {
            if exact_member_ideal_derivation(f, ideal, &(&w.b * am)) {
                return Ok(WitnessCheck::Refuted {
                    m: *m,
                    stage: Stage::BNonmembership,
                });
            }
        }
        return Ok(WitnessCheck::Verified);
    }

    let top = powers
        .iter()
        .map(|(_, am)| {
            (&w.b * am)
                .degree()
                .unwrap_or(0)
                .max(am.degree().unwrap_or(0))
        })
        .max()
        .unwrap_or(0)
        .max(1);
    if limits.check_degree(top).is_err() {
        return Ok(WitnessCheck::Refuted {
            m: hi,
            stage: Stage::Range,
        });
    }
    let span = match image_span(map, ideal, top, limits) {
        Ok(s) => s,
        Err(Error::DegreeCapExceeded { .. }) => {
            return Ok(WitnessCheck::Refuted {
                m: hi,
                stage: Stage::Range,
            })
        }
        Err(e) => return Err(e),
    };
    for (m, am) in &powers {
        if span.member(am) != Membership::In {
            return Ok(WitnessCheck::Refuted {
                m: *m,
                stage: Stage::AMembership,
            });
        }
    }
    match w.mode {
        MembershipMode::Window => {
            for (m, am) in &powers {
                if span.member(&(&w.b * am)) != Membership::Out {
                    return Ok(WitnessCheck::Refuted {
                        m: *m,
                        stage: Stage::BNonmembership,
                    });
                }
            }
        }
        MembershipMode::TranslationCertificate => {
            let field = map.field();
            let c = match map {
                MapSpec::EDerivation(e) => match e.shape() {
                    PhiShape::Translation { c } => c,
                    _ => return Err(Error::UnsupportedMap("certificate needs phi = x + c")),
                },
                _ => return Err(Error::UnsupportedMap("certificate needs an E-derivation")),
            };
            let target = Poly::monomial(field, field.p() as usize - 1, 1);
            let cert = translation_sum_certificate(field, c)?;
            let certified = cert.is_constant() && !cert.is_zero();
            for (m, am) in &powers {
                if &w.b * am != target || !certified {
                    return Ok(WitnessCheck::Refuted {
                        m: *m,
                        stage: Stage::BNonmembership,
                    });
                }
            }
        }
        MembershipMode::ExactDerivation => unreachable!("handled above"),
    }
    Ok(WitnessCheck::Verified)
}

/// Replays a triangular-derivation witness against the window span at the
/// given total-degree cap.
pub fn verify_multi_witness(
    d: &TriangularDerivation,
    w: &MultiWitness,
    degree_cap: u32,
    limits: &Limits,
) -> Result<WitnessCheck> {
    let (lo, hi) = w.m_range;
    check_range(lo, hi)?;
    let span = triangular_window_span(d, degree_cap, limits)?;
    let powers: Vec<_> = (lo..=hi).map(|m| (m, w.a.pow(m as u64))).collect();
    for (m, am) in &powers {
        match span.member(am) {
            Membership::In => {}
            Membership::OutOfRange => {
                return Ok(WitnessCheck::Refuted {
                    m: *m,
                    stage: Stage::Range,
                })
            }
            Membership::Out => {
                return Ok(WitnessCheck::Refuted {
                    m: *m,
                    stage: Stage::AMembership,
                })
            }
        }
    }
    for (m, am) in &powers {
        match span.member(&w.b.mul(am)) {
            Membership::Out => {}
            Membership::OutOfRange => {
                return Ok(WitnessCheck::Refuted {
                    m: *m,
                    stage: Stage::Range,
                })
            }
            Membership::In => {
                return Ok(WitnessCheck::Refuted {
                    m: *m,
                    stage: Stage::BNonmembership,
                })
            }
        }
    }
    Ok(WitnessCheck::Verified)
}

/// Parameters of a classifier-versus-search sweep over derivations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteConfig {
    pub primes: Vec<u32>,
    pub max_f_degree: usize,
    /// Generators up to this degree; 0 sweeps the whole ring only.
    pub max_gen_degree: usize,
    pub max_gen_slots: usize,
    pub probe: ProbeConfig,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct AgreementReport {
    pub configurations: u64,
    pub not_mz_verified: u64,
    pub radical_zero_probed: u64,
    pub mz: u64,
    pub unknown: Vec<String>,
    pub violations: Vec<String>,
}

impl AgreementReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Every nonzero polynomial of degree at most `max_degree`.
pub fn all_polys(field: Field, max_degree: usize) -> impl Iterator<Item = Poly> {
    let p = field.p() as u64;
    let total = p.pow(max_degree as u32 + 1);
    (1..total).map(move |mut idx| {
        let mut coeffs = Vec::with_capacity(max_degree + 1);
        while idx > 0 {
            coeffs.push((idx % p) as u32);
            idx /= p;
        }
        Poly::from_residues(field, coeffs)
    })
}

/// Every monic polynomial of degree `1..=max_degree`.
pub fn monic_polys(field: Field, max_degree: usize) -> impl Iterator<Item = Poly> {
    let p = field.p() as u64;
    (p..candidate_count(p, max_degree)).map(move |idx| candidate(field, idx))
}

/// Checks one verdict against its oracle obligation; returns a violation
/// message if it fails.
pub fn check_verdict(
    map: &MapSpec,
    ideal: &IdealSpec,
    verdict: &Verdict,
    probe: &ProbeConfig,
    limits: &Limits,
) -> Result<Option<String>> {
    match verdict.decision {
        Decision::NotMz => {
            let w = verdict
                .univariate_witness()
                .ok_or_else(|| Error::InvalidParameter("NotMZ verdict without witness".into()))?;
            let check = verify_witness(map, ideal, w, limits)?;
            Ok((!check.is_verified()).then(|| format!("witness {check:?}")))
        }
        Decision::MzRadicalZero => {
            let s = image_span(map, ideal, probe.degree_cap, limits)?;
            let report = radical_probe(&s, probe, limits)?;
            Ok((!report.candidates.is_empty()).then(|| {
                let c: Vec<String> = report.candidates.iter().map(Poly::to_list_string).collect();
                format!("radical candidates {}", c.join(" "))
            }))
        }
        Decision::Mz | Decision::Unknown => Ok(None),
    }
}

/// Classifies every `(f, ideal)` in range and checks each verdict against
/// the oracles.
pub fn agreement_suite(cfg: &SuiteConfig, limits: &Limits) -> Result<AgreementReport> {
    let mut jobs = Vec::new();
    for &p in &cfg.primes {
        let field = Field::new(p as u64)?;
        let mut ideals = vec![IdealSpec::whole(field)];
        for g in monic_polys(field, cfg.max_gen_degree) {
            if g.slot_decompose()?.len() <= cfg.max_gen_slots {
                ideals.push(IdealSpec::new(g)?);
            }
        }
        for f in all_polys(field, cfg.max_f_degree) {
            for ideal in &ideals {
                jobs.push((f.clone(), ideal.clone()));
            }
        }
    }
    let outcomes: Vec<Result<(Decision, Option<String>, String)>> = jobs
        .par_iter()
        .map(|(f, ideal)| {
            let verdict = classify_ideal_derivation(f, ideal);
            let map = MapSpec::derivation(f.clone());
            let label = format!(
                "p={} f={} generator={} {}",
                f.field().p(),
                f,
                ideal.generator(),
                verdict.citation
            );
            let violation = check_verdict(&map, ideal, &verdict, &cfg.probe, limits)?;
            Ok((verdict.decision, violation, label))
        })
        .collect();
    let mut report = AgreementReport::default();
    for outcome in outcomes {
        let (decision, violation, label) = outcome?;
        report.configurations += 1;
        match decision {
            Decision::NotMz => report.not_mz_verified += 1,
            Decision::MzRadicalZero => report.radical_zero_probed += 1,
            Decision::Mz => report.mz += 1,
            Decision::Unknown => report.unknown.push(label.clone()),
        }
        if let Some(v) = violation {
            report.violations.push(format!("{label}: {v}"));
            if decision == Decision::NotMz {
                report.not_mz_verified -= 1;
            } else {
                report.radical_zero_probed -= 1;
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> Field {
        Field::new(p).unwrap()
    }

    fn mono(p: u64, k: usize) -> Poly {
        Poly::monomial(gf(p), k, 1)
    }

    fn whole(p: u64) -> IdealSpec {
        IdealSpec::whole(gf(p))
    }

    #[test]
    fn probe_examples() {
        let lim = Limits::default();
        let cfg = ProbeConfig {
            max_candidate_degree: 2,
            degree_cap: 20,
            power_floor: 1,
        };
        let s = image_span(&MapSpec::derivation(mono(2, 2)), &whole(2), 20, &lim).unwrap();
        let r = radical_probe(&s, &cfg, &lim).unwrap();
        assert_eq!(r.candidates, vec![mono(2, 2)]);
        assert_eq!(r.scanned, 7);

        let cfg = ProbeConfig {
            max_candidate_degree: 2,
            degree_cap: 30,
            power_floor: 2,
        };
        let s = image_span(&MapSpec::derivation(mono(3, 1)), &whole(3), 30, &lim).unwrap();
        assert!(radical_probe(&s, &cfg, &lim).unwrap().candidates.is_empty());

        let s = TruncatedSubspace::zero(gf(3), 30);
        assert!(radical_probe(&s, &cfg, &lim).unwrap().candidates.is_empty());
    }

    #[test]
    fn probe_budget() {
        let lim = Limits {
            enumeration_budget: 100,
            ..Limits::default()
        };
        let cfg = ProbeConfig {
            max_candidate_degree: 4,
            degree_cap: 40,
            power_floor: 2,
        };
        let s = TruncatedSubspace::zero(gf(3), 40);
        assert!(matches!(
            radical_probe(&s, &cfg, &lim),
            Err(Error::BudgetExceeded {
                required: 243,
                budget: 100
            })
        ));
    }

    #[test]
    fn witness_examples() {
        let lim = Limits::default();
        let exact = |a, b, lo, hi| Witness {
            a,
            b,
            mode: MembershipMode::ExactDerivation,
            m_range: (lo, hi),
        };
        let d = MapSpec::derivation(mono(3, 2));
        let w = exact(mono(3, 3), mono(3, 4), 1, 10);
        assert_eq!(
            verify_witness(&d, &whole(3), &w, &lim).unwrap(),
            WitnessCheck::Verified
        );
        let d = MapSpec::derivation(mono(2, 2));
        let w = exact(mono(2, 2), mono(2, 1), 1, 10);
        assert_eq!(
            verify_witness(&d, &whole(2), &w, &lim).unwrap(),
            WitnessCheck::Verified
        );
        let d = MapSpec::derivation(mono(3, 1));
        let w = exact(mono(3, 1), Poly::one(gf(3)), 1, 3);
        assert_eq!(
            verify_witness(&d, &whole(3), &w, &lim).unwrap(),
            WitnessCheck::Refuted {
                m: 3,
                stage: Stage::AMembership
            }
        );
    }

    #[test]
    fn small_suites_are_clean() {
        let lim = Limits::default();
        let empty = SuiteConfig {
            primes: vec![],
            max_f_degree: 4,
            max_gen_degree: 0,
            max_gen_slots: 2,
            probe: ProbeConfig::default(),
        };
        assert_eq!(
            agreement_suite(&empty, &lim).unwrap(),
            AgreementReport::default()
        );
        let r = agreement_suite(
            &SuiteConfig {
                primes: vec![2],
                ..empty.clone()
            },
            &lim,
        )
        .unwrap();
        assert!(r.is_clean(), "{:?}", r.violations);
        assert_eq!(r.configurations, 31);
        let r = agreement_suite(
            &SuiteConfig {
                primes: vec![3],
                max_f_degree: 3,
                max_gen_degree: 2,
                ..empty
            },
            &lim,
        )
        .unwrap();
        assert!(r.is_clean(), "{:?}", r.violations);
    }

    #[test]
    fn candidate_order() {
        let f = gf(2);
        let all: Vec<_> = (0..7).map(|i| candidate(f, i).to_list_string()).collect();
        assert_eq!(
            all,
            ["[1]", "[0,1]", "[1,1]", "[0,0,1]", "[1,0,1]", "[0,1,1]", "[1,1,1]"]
        );
    }
}
