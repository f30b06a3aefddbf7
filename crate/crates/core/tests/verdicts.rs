use mzlab_core::classify::{
    classify_ideal_derivation, classify_image_derivation, classify_image_ederivation,
    translation_sum_certificate, Decision,
};
use mzlab_core::nilpotency::{is_ln_derivation, is_ln_ederivation, Certificate, LnStatus};
use mzlab_core::oracle::{
    all_polys, monic_polys, radical_probe, survives, verify_witness, ProbeConfig,
};
use mzlab_core::span::image_span;
use mzlab_core::{EDerivation, Field, IdealSpec, Limits, MapSpec, Membership, Poly};
use proptest::prelude::*;

fn gf(p: u64) -> Field {
    Field::new(p).unwrap()
}

fn translate(f: &Poly, t: u32) -> Poly {
    f.compose(&Poly::new(f.field(), &[t as u64, 1]).unwrap())
}

#[test]
fn divisibility_condition_never_gives_not_mz() {
    for p in [2u64, 3, 5] {
        let field = gf(p);
        for f in all_polys(field, 5) {
            let (deg, ldeg) = f.degree_bounds().unwrap();
            let divides = |n: usize| (n as i64 - 1).rem_euclid(p as i64) == 0;
            if divides(deg) || divides(ldeg) {
                let v = classify_image_derivation(&f);
                assert_ne!(v.decision, Decision::NotMz, "p={p} f={f}");
            }
        }
    }
}

#[test]
fn image_verdict_is_translation_invariant() {
    for p in [2u64, 3, 5] {
        let field = gf(p);
        for f in all_polys(field, 4) {
            let base = classify_image_derivation(&f).decision == Decision::NotMz;
            for t in field.units() {
                let moved = classify_image_derivation(&translate(&f, t)).decision == Decision::NotMz;
                assert_eq!(base, moved, "p={p} f={f} t={t}");
            }
        }
    }
}

#[test]
fn ederivation_image_not_mz_iff_locally_nilpotent() {
    for p in [2u64, 3, 5] {
        let field = gf(p);
        for phi in std::iter::once(Poly::zero(field)).chain(all_polys(field, 3)) {
            let not_mz = classify_image_ederivation(&phi).decision == Decision::NotMz;
            let ln = is_ln_ederivation(&phi).unwrap().is_ln();
            let nonzero = !EDerivation::new(phi.clone()).is_zero();
            assert_eq!(not_mz, ln && nonzero, "p={p} phi={phi}");
        }
    }
}

#[test]
fn translation_certificate_is_minus_c_to_p_minus_one() {
    for p in [2u64, 3, 5, 7] {
        let field = gf(p);
        for c in field.units() {
            let want = Poly::constant(field, field.neg(field.pow(c, p - 1)));
            assert_eq!(translation_sum_certificate(field, c).unwrap(), want);
        }
    }
}

#[test]
fn char_two_radical_zero_iff_not_locally_nilpotent() {
    let field = gf(2);
    let mut ideals = vec![IdealSpec::whole(field)];
    ideals.extend(monic_polys(field, 3).map(|u| IdealSpec::new(u).unwrap()));
    for f in all_polys(field, 5) {
        let not_ln = is_ln_derivation(&f, 64).unwrap().is_not_ln();
        for ideal in &ideals {
            let rz = classify_ideal_derivation(&f, ideal).decision == Decision::MzRadicalZero;
            assert_eq!(rz, not_ln, "f={f} generator={}", ideal.generator());
        }
    }
}

#[test]
fn probe_finds_the_witness_exactly_for_not_mz() {
    let lim = Limits::default();
    for p in [2u64, 3] {
        let field = gf(p);
        let whole = IdealSpec::whole(field);
        for f in all_polys(field, 4) {
            let slots = f.slot_decompose().unwrap();
            let Some(slot) = slots.single() else { continue };
            let a = slot.poly.inflate().shift(p as usize).monic();
            let d = a.degree().unwrap();
            let cfg = ProbeConfig {
                max_candidate_degree: d,
                degree_cap: 4 * d,
                power_floor: 2,
            };
            let s = image_span(&MapSpec::derivation(f.clone()), &whole, cfg.degree_cap, &lim).unwrap();
            let report = radical_probe(&s, &cfg, &lim).unwrap();
            let found = report.candidates.contains(&a);
            let not_mz = classify_image_derivation(&f).decision == Decision::NotMz;
            assert_eq!(found, not_mz, "p={p} f={f} a={a}");
        }
    }
}

#[test]
fn probe_candidates_survive_a_fresh_span() {
    let lim = Limits::default();
    // At p = 5 the smallest radical element of Im(x^3 d/dx) is x^5.
    for (p, f, d) in [(2u64, vec![0u64, 0, 1], 3), (3, vec![0, 0, 1], 3), (3, vec![1, 1, 1], 3), (5, vec![0, 0, 0, 1], 5)] {
        let cfg = ProbeConfig { max_candidate_degree: d, ..ProbeConfig::default() };
        let field = gf(p);
        let f = Poly::new(field, &f).unwrap();
        let map = MapSpec::derivation(f);
        let whole = IdealSpec::whole(field);
        let s = image_span(&map, &whole, cfg.degree_cap, &lim).unwrap();
        let report = radical_probe(&s, &cfg, &lim).unwrap();
        assert!(!report.candidates.is_empty());
        let fresh = image_span(&map, &whole, cfg.degree_cap + 5, &lim).unwrap();
        for g in &report.candidates {
            assert!(survives(&fresh, g, &cfg));
            let (lo, hi) = cfg.power_window(g.degree().unwrap());
            for m in lo..=hi {
                assert_eq!(fresh.member(&g.pow(m as u64)), Membership::In);
            }
        }
    }
}

#[test]
fn char_p_constant_track_orbits_never_vanish() {
    for p in [5u64, 7] {
        let field = gf(p);
        let mut seen = 0;
        for f in all_polys(field, 3) {
            let v = is_ln_derivation(&f, 64).unwrap();
            if !matches!(v.status, LnStatus::NotLocallyNilpotent { certificate: Certificate::ConstantTrack { .. } }) {
                continue;
            }
            seen += 1;
            let map = MapSpec::derivation(f.clone());
            let mut g = Poly::x(field);
            for k in 1..=32 {
                g = map.apply_univariate(&g).unwrap();
                assert!(!g.is_zero(), "p={p} f={f}: D^{k}(x) = 0");
            }
        }
        assert!(seen > 0);
    }
}

fn sampled_config() -> impl Strategy<Value = (Poly, Option<Poly>)> {
    prop::sample::select(vec![2u64, 3, 5]).prop_flat_map(|p| {
        let field = gf(p);
        let len = 2 * p as usize + 1;
        let coeffs = prop::collection::vec(0..p, 1..=len);
        (
            coeffs.clone().prop_map(move |c| Poly::new(field, &c).unwrap()).prop_filter("nonzero", |f| !f.is_zero()),
            prop::option::of(coeffs.prop_map(move |c| Poly::new(field, &c).unwrap()).prop_filter("nonconstant", |u| u.degree().unwrap_or(0) > 0)),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn not_mz_witnesses_verify((f, u) in sampled_config()) {
        let lim = Limits::default();
        let ideal = match u {
            Some(u) => IdealSpec::new(u.monic()).unwrap(),
            None => IdealSpec::whole(f.field()),
        };
        let v = classify_ideal_derivation(&f, &ideal);
        if let Some(w) = v.univariate_witness() {
            let w = w.clone().with_range(1, 8);
            let map = MapSpec::derivation(f.clone());
            let check = verify_witness(&map, &ideal, &w, &lim).unwrap();
            prop_assert!(check.is_verified(), "{} {:?}", v.citation, check);
            // Same answer when the range is replayed one power at a time.
            let each = (1..=8).all(|m| {
                verify_witness(&map, &ideal, &w.clone().with_range(m, m), &lim).unwrap().is_verified()
            });
            prop_assert!(each);
            prop_assert_eq!(verify_witness(&map, &ideal, &w, &lim).unwrap(), check);
        }
    }
}
