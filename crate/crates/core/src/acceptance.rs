//! The desk-scale acceptance sweep, criteria A1 through A8.
//!
//! Each criterion returns a [`CriterionOutcome`] listing every failed check.
//! Random samples come from a fixed ChaCha seed so reruns are identical.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::classify::{
    classify_ideal_derivation, classify_ideal_ederivation, classify_image_derivation,
    classify_triangular, translation_sum_certificate, two_slot_branch, Decision,
};
use crate::error::Result;
use crate::field::Field;
use crate::maps::{apply_derivation, Derivation, EDerivation, MapSpec, TriangularDerivation};
use crate::multipoly::MultiPoly;
use crate::nilpotency::{coeff_table, is_ln_derivation, nilpotency_bound, LnVerdict};
use crate::oracle::{
    all_polys, check_verdict, verify_multi_witness, verify_witness, ProbeConfig,
};
use crate::poly::Poly;
use crate::span::{ederivation_monomial_table, ederivation_span, IdealSpec, Limits, Membership};

const SEED: u64 = 0x006d_7a6c_6162;
const MAX_REPORTED: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriterionOutcome {
    pub id: &'static str,
    pub title: &'static str,
    pub checks: u64,
    pub failed: u64,
    /// The first few failures, in sweep order.
    pub failures: Vec<String>,
}

impl CriterionOutcome {
    pub fn passed(&self) -> bool {
        self.failed == 0
    }

    /// `A1 PASS  image classification vs oracle (1458 checks)`.
    pub fn summary_line(&self) -> String {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let mut line = format!("{} {status}  {} ({} checks", self.id, self.title, self.checks);
        if self.failed > 0 {
            line.push_str(&format!(", {} failed", self.failed));
        }
        line.push(')');
        line
    }
}

struct Tally {
    id: &'static str,
    title: &'static str,
    checks: u64,
    failed: u64,
    failures: Vec<String>,
}

impl Tally {
    fn new(id: &'static str, title: &'static str) -> Self {
        Tally {
            id,
            title,
            checks: 0,
            failed: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.fail(msg());
        }
    }

    fn fail(&mut self, msg: String) {
        self.failed += 1;
        if self.failures.len() < MAX_REPORTED {
            self.failures.push(msg);
        }
    }

    /// Merges per-item results computed in parallel; `None` is a pass.
    fn absorb(&mut self, results: Vec<Result<Option<String>>>) -> Result<()> {
        for r in results {
            self.checks += 1;
            if let Some(msg) = r? {
                self.fail(msg);
            }
        }
        Ok(())
    }

    fn finish(self) -> CriterionOutcome {
        CriterionOutcome {
            id: self.id,
            title: self.title,
            checks: self.checks,
            failed: self.failed,
            failures: self.failures,
        }
    }
}

fn gf(p: u64) -> Field {
    Field::new(p).expect("small prime")
}

fn x_plus(field: Field, a: u32) -> Poly {
    Poly::new(field, &[a as u64, 1]).expect("residue")
}

/// `D^k(x)` for `k = 0..=steps`, stopping early at zero.
fn orbit(f: &Poly, steps: usize) -> Vec<Poly> {
    let mut out = vec![Poly::x(f.field())];
    while out.len() <= steps {
        let last = out.last().expect("nonempty");
        if last.is_zero() {
            break;
        }
        out.push(apply_derivation(f, last));
    }
    out
}

/// Least `k <= steps` with `D^k(x) = 0`.
fn vanishing_index(f: &Poly, steps: usize) -> Option<usize> {
    orbit(f, steps).iter().position(Poly::is_zero)
}

fn random_poly(rng: &mut ChaCha8Rng, field: Field, max_degree: usize) -> Poly {
    let deg = rng.gen_range(0..=max_degree);
    let coeffs: Vec<u64> = (0..=deg).map(|_| rng.gen_range(0..field.p() as u64)).collect();
    Poly::new(field, &coeffs).expect("residues")
}

fn random_unit(rng: &mut ChaCha8Rng, field: Field) -> u32 {
    rng.gen_range(1..field.p())
}

/// Image classification against witness replay and radical probing.
pub fn a1(limits: &Limits) -> Result<CriterionOutcome> {
    let mut t = Tally::new("A1", "image classification vs oracle");
    let probe = ProbeConfig {
        max_candidate_degree: 3,
        degree_cap: 40,
        power_floor: 2,
    };
    for p in [2, 3] {
        let field = gf(p);
        let whole = IdealSpec::whole(field);
        let fs: Vec<Poly> = all_polys(field, 5).collect();
        let results = fs
            .par_iter()
            .map(|f| {
                let v = classify_image_derivation(f);
                if v.decision == Decision::NotMz && v.univariate_witness().map(|w| w.m_range) != Some((1, 8)) {
                    return Ok(Some(format!("p={p} f={f}: witness range is not [1, 8]")));
                }
                let map = MapSpec::derivation(f.clone());
                Ok(check_verdict(&map, &whole, &v, &probe, limits)?
                    .map(|msg| format!("p={p} f={f} {}: {msg}", v.citation)))
            })
            .collect();
        t.absorb(results)?;
    }
    Ok(t.finish())
}

/// Closed-form monomial table for `phi = x + c` against exact spans.
pub fn a2() -> Result<CriterionOutcome> {
    let mut t = Tally::new("A2", "monomial table vs exact span");
    for p in [2u64, 3, 5] {
        let field = gf(p);
        let n = (p * p + p) as usize;
        let whole = IdealSpec::whole(field);
        for c in field.units() {
            let table = ederivation_monomial_table(field, c, n)?;
            let span = ederivation_span(&x_plus(field, c), &whole, n)?;
            for deg in 0..=n {
                let claimed = table.member(deg);
                let actual = span.member(&Poly::monomial(field, deg, 1)) == Membership::In;
                t.check(claimed == Some(actual), || {
                    format!("p={p} c={c} x^{deg}: table {claimed:?}, span {actual}")
                });
            }
        }
    }
    Ok(t.finish())
}

fn ln_against_iteration(
    t: &mut Tally,
    f: &Poly,
    v: &LnVerdict,
    iff_steps: Option<usize>,
    steps: usize,
) {
    let p = f.field().p();
    let vanish = vanishing_index(f, steps);
    if v.is_ln() {
        let within = iff_steps.unwrap_or(steps);
        t.check(vanish.is_some_and(|k| k <= within), || {
            format!("p={p} f={f}: LN verdict but D^k(x) != 0 for k <= {within}")
        });
    } else if v.is_not_ln() {
        t.check(vanish.is_none(), || {
            format!("p={p} f={f}: NotLN verdict but D^{}(x) = 0", vanish.unwrap_or(0))
        });
    } else {
        t.check(false, || format!("p={p} f={f}: verdict is Unknown"));
    }
}

/// Every `x^r g(x^p)` of degree at most `max_degree`, with its residue `r`.
fn single_slot_polys(field: Field, max_degree: usize) -> Vec<(u32, Poly)> {
    let p = field.p() as usize;
    let mut out = Vec::new();
    for r in 0..p.min(max_degree + 1) {
        for g in all_polys(field, (max_degree - r) / p) {
            out.push((r as u32, g.inflate().shift(r)));
        }
    }
    out
}

/// LN verdicts against direct iteration, plus the single-slot index bound.
pub fn a3() -> Result<CriterionOutcome> {
    let mut t = Tally::new("A3", "locally nilpotent ground truth");
    let cap = crate::nilpotency::DEFAULT_ITERATION_CAP;
    for f in all_polys(gf(2), 6) {
        let v = is_ln_derivation(&f, cap)?;
        ln_against_iteration(&mut t, &f, &v, Some(16), 32);
    }
    for f in all_polys(gf(3), 4) {
        let v = is_ln_derivation(&f, cap)?;
        ln_against_iteration(&mut t, &f, &v, None, 32);
    }
    for p in [2u64, 3, 5] {
        let field = gf(p);
        for (r, f) in single_slot_polys(field, 2 * p as usize) {
            if r == 1 {
                continue;
            }
            let j = nilpotency_bound(field, r)?;
            let djx = orbit(&f, j).get(j).cloned().unwrap_or_else(|| Poly::zero(field));
            t.check(djx.is_zero(), || format!("p={p} f={f}: D^{j}(x) != 0"));
        }
    }
    Ok(t.finish())
}

/// Two-slot coefficient recurrence against iteration, and the unit corner.
pub fn a4() -> Result<CriterionOutcome> {
    let mut t = Tally::new("A4", "coefficient recurrence reconstruction");
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    const K_MAX: usize = 8;
    for p in [3u64, 5] {
        let field = gf(p);
        for case in 0..100 {
            let i1 = rng.gen_range(0..field.p());
            let mut i2 = rng.gen_range(0..field.p() - 1);
            if i2 >= i1 {
                i2 += 1;
            }
            let (c1, c2) = (random_unit(&mut rng, field), random_unit(&mut rng, field));
            // Slot parts are monic in x^p so c1, c2 carry the scalars.
            let slot_part = |rng: &mut ChaCha8Rng| {
                if rng.gen_bool(0.5) {
                    Poly::one(field)
                } else {
                    x_plus(field, rng.gen_range(0..field.p())).inflate()
                }
            };
            let a = slot_part(&mut rng);
            let b = slot_part(&mut rng);
            let f = &(&a.shift(i1 as usize) * &Poly::constant(field, c1))
                + &(&b.shift(i2 as usize) * &Poly::constant(field, c2));
            let table = coeff_table(field, i1, i2, c1, c2, K_MAX)?;
            let iterates = orbit(&f, K_MAX + 1);
            for k in 0..=K_MAX {
                let want = iterates.get(k + 1).cloned().unwrap_or_else(|| Poly::zero(field));
                let got = table.reconstruct(k, &a, &b);
                t.check(got.as_ref().ok() == Some(&want), || {
                    format!("p={p} case {case} (i1={i1}, i2={i2}, c1={c1}, c2={c2}) k={k}")
                });
            }
            let corner = match (i1, i2) {
                (1, _) => Some(table.rows.iter().map(|r| r[0]).collect::<Vec<_>>()),
                (_, 1) => Some(table.rows.iter().map(|r| *r.last().expect("row")).collect()),
                _ => None,
            };
            if let Some(col) = corner {
                t.check(col.iter().all(|&v| v != 0), || {
                    format!("p={p} case {case}: corner column {col:?} has a zero")
                });
            }
        }
    }
    Ok(t.finish())
}

fn random_triangular(rng: &mut ChaCha8Rng, field: Field, n: usize) -> Result<TriangularDerivation> {
    loop {
        let mut coeffs = Vec::with_capacity(n);
        for q in 0..n {
            let mut terms = Vec::new();
            for _ in 0..rng.gen_range(0..=2) {
                let mut e = vec![0u32; n];
                for slot in e.iter_mut().skip(q + 1) {
                    *slot = rng.gen_range(0..=1);
                }
                terms.push((e, rng.gen_range(1..field.p() as u64)));
            }
            coeffs.push(MultiPoly::from_terms(field, n, &terms)?);
        }
        let d = TriangularDerivation::new(coeffs)?;
        if !d.is_zero() {
            return Ok(d);
        }
    }
}

/// Triangular-derivation witnesses in the window span.
pub fn a5(limits: &Limits) -> Result<CriterionOutcome> {
    let mut t = Tally::new("A5", "triangular derivation witnesses");
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 5);
    let field = gf(2);
    for n in [2, 3] {
        for _ in 0..20 {
            let d = random_triangular(&mut rng, field, n)?;
            let v = classify_triangular(&d);
            let Some(w) = v.multivariate_witness() else {
                t.fail(format!("n={n} {:?}: nonzero map without witness", d.coefficients()));
                continue;
            };
            let w = w.clone().with_range(1, 4);
            let check = verify_multi_witness(&d, &w, 12, limits)?;
            t.check(check.is_verified(), || {
                let fs: Vec<String> = d.coefficients().iter().map(|f| f.to_string()).collect();
                format!("n={n} D=[{}]: {check:?}", fs.join(", "))
            });
        }
    }
    Ok(t.finish())
}

/// Single-slot coefficients `x^i1 f1(x^p)` used by A6.
fn single_slot_fs(field: Field) -> Vec<Poly> {
    let p = field.p() as usize;
    let mut out = Vec::new();
    for i1 in 0..p {
        out.push(Poly::monomial(field, i1, 1));
        out.push(&Poly::monomial(field, i1 + p, 1) + &Poly::monomial(field, i1, 1));
    }
    out
}

/// Monic generators with one or two slots and degree at most `2p`.
fn small_generators(field: Field) -> Vec<Poly> {
    let p = field.p() as usize;
    let mut out = Vec::new();
    for j in 0..p {
        out.push(Poly::monomial(field, j, 1));
        for a in field.units() {
            out.push(&Poly::monomial(field, j + p, 1) + &Poly::monomial(field, j, a));
        }
    }
    for j1 in 0..p {
        for j2 in j1 + 1..p {
            for a in field.units() {
                for (e1, e2) in [(j1, j2), (j1 + p, j2), (j1, j2 + p), (j1 + p, j2 + p)] {
                    let lead = e1.max(e2);
                    let low = e1.min(e2);
                    out.push(&Poly::monomial(field, lead, 1) + &Poly::monomial(field, low, a));
                }
            }
        }
    }
    out.retain(|g| g.degree().unwrap_or(0) <= 2 * p);
    out.sort_by_key(|g| g.coeffs().to_vec());
    out.dedup();
    out
}

/// Ideal classification against the oracles, and the constant-coefficient
/// congruence table.
pub fn a6(limits: &Limits) -> Result<CriterionOutcome> {
    let mut t = Tally::new("A6", "ideal classification vs oracle");
    let probe = ProbeConfig {
        max_candidate_degree: 2,
        degree_cap: 30,
        power_floor: 2,
    };
    for p in [3u64, 5] {
        let field = gf(p);
        let pu = field.p();
        for j1 in 0..pu {
            for j2 in j1 + 1..pu {
                let adjacent = j2 - j1 == 1 || (j1 == 0 && j2 == pu - 1);
                let by_congruence = two_slot_branch(field, 0, j1, j2).is_some();
                t.check(adjacent == by_congruence, || {
                    format!("p={p} slots ({j1}, {j2}): adjacency {adjacent}, congruence {by_congruence}")
                });
            }
        }
        let jobs: Vec<(Poly, Poly)> = single_slot_fs(field)
            .into_iter()
            .flat_map(|f| small_generators(field).into_iter().map(move |g| (f.clone(), g)))
            .collect();
        let results = jobs
            .par_iter()
            .map(|(f, g)| {
                let ideal = IdealSpec::new(g.clone())?;
                let mut v = classify_ideal_derivation(f, &ideal);
                if let Some(crate::classify::AnyWitness::Univariate(w)) = v.witness.as_mut() {
                    w.m_range = (1, 6);
                }
                let map = MapSpec::derivation(f.clone());
                Ok(check_verdict(&map, &ideal, &v, &probe, limits)?
                    .map(|msg| format!("p={p} f={f} generator={g} {}: {msg}", v.citation)))
            })
            .collect();
        t.absorb(results)?;
    }
    Ok(t.finish())
}

/// Expected decision class for the ideal E-derivation branch table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Expect {
    Mz,
    NotMz,
}

/// The E-derivation ideal branch table, the translation certificate, and
/// the constant-phi witnesses.
pub fn a7(limits: &Limits) -> Result<CriterionOutcome> {
    let mut t = Tally::new("A7", "E-derivation ideal branch table");
    for p in [3u64, 5] {
        let field = gf(p);
        let mut phis: Vec<(Poly, &str)> = Vec::new();
        for c in field.elements() {
            phis.push((Poly::constant(field, c), "constant"));
        }
        for c in field.units() {
            phis.push((x_plus(field, c), "translation"));
        }
        for q in field.units().filter(|&q| q != 1) {
            phis.push((Poly::monomial(field, 1, q), "scaling"));
        }
        phis.push((Poly::monomial(field, 2, 1), "higher"));
        phis.push((Poly::new(field, &[1, 0, 0, 1])?, "higher"));

        let mut gens: Vec<Poly> = field.elements().map(|a| x_plus(field, a)).collect();
        gens.push(Poly::monomial(field, 2, 1));
        gens.push(Poly::monomial(field, 3, 1));

        for (phi, shape) in &phis {
            for g in &gens {
                let linear = g.degree() == Some(1);
                let expect = match (*shape, linear) {
                    ("higher", _) => Expect::Mz,
                    ("translation", _) => Expect::NotMz,
                    ("constant", true) => Expect::Mz,
                    ("constant", false) if phi.is_zero() => Expect::Mz,
                    ("constant", false) => Expect::NotMz,
                    ("scaling", _) => Expect::Mz,
                    _ => unreachable!("shape labels above"),
                };
                let ideal = IdealSpec::new(g.clone())?;
                let v = classify_ideal_ederivation(phi, &ideal);
                let got = match v.decision {
                    Decision::Mz | Decision::MzRadicalZero => Some(Expect::Mz),
                    Decision::NotMz => Some(Expect::NotMz),
                    Decision::Unknown => None,
                };
                t.check(got == Some(expect), || {
                    format!("p={p} phi={phi} generator={g}: expected {expect:?}, got {:?} ({})", v.decision, v.citation)
                });
                if let Some(w) = v.univariate_witness() {
                    let map = MapSpec::ederivation(phi.clone());
                    let check = verify_witness(&map, &ideal, w, limits)?;
                    t.check(check.is_verified(), || {
                        format!("p={p} phi={phi} generator={g}: witness {check:?}")
                    });
                    if *shape == "constant" {
                        let check = verify_witness(&map, &ideal, &w.clone().with_range(2, 5), limits)?;
                        t.check(check.is_verified(), || {
                            format!("p={p} phi={phi} generator={g}: witness on [2, 5] {check:?}")
                        });
                    }
                }
            }
        }
        for c in field.units() {
            let cert = translation_sum_certificate(field, c)?;
            let want = Poly::constant(field, field.neg(field.pow(c, p - 1)));
            t.check(cert == want, || format!("p={p} c={c}: certificate {cert}"));
        }
    }
    Ok(t.finish())
}

/// Leibniz, twisted Leibniz, Frobenius, and slot round-trip on random input.
pub fn a8() -> Result<CriterionOutcome> {
    let mut t = Tally::new("A8", "algebraic laws");
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 8);
    for p in [2u64, 3, 5, 7] {
        let field = gf(p);
        for _ in 0..1000 {
            let f = random_poly(&mut rng, field, 6);
            let a = random_poly(&mut rng, field, 6);
            let b = random_poly(&mut rng, field, 6);
            t.check(Derivation::new(f.clone()).leibniz_holds(&a, &b), || {
                format!("Leibniz p={p} f={f} a={a} b={b}")
            });
            t.check(EDerivation::new(f.clone()).e_leibniz_holds(&a, &b), || {
                format!("E-Leibniz p={p} phi={f} a={a} b={b}")
            });
            let frob_sum = (&a + &b).pow(p) == &a.pow(p) + &b.pow(p);
            let frob_inflate = a.pow(p) == a.inflate();
            t.check(frob_sum && frob_inflate, || format!("Frobenius p={p} a={a} b={b}"));
            let round = a.slot_decompose().map(|s| s.recompose());
            t.check(a.is_zero() || round.as_ref().ok() == Some(&a), || {
                format!("slot round-trip p={p} a={a}")
            });
        }
    }
    Ok(t.finish())
}

/// Runs every criterion in order.
pub fn run_all(limits: &Limits) -> Result<Vec<CriterionOutcome>> {
    Ok(vec![
        a1(limits)?,
        a2()?,
        a3()?,
        a4()?,
        a5(limits)?,
        a6(limits)?,
        a7(limits)?,
        a8()?,
    ])
}
