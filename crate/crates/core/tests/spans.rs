use mzlab_core::oracle::all_polys;
use mzlab_core::span::{
    ederivation_monomial_table, ederivation_span, exact_member_derivation,
    exact_member_ideal_derivation, image_span,
};
use mzlab_core::{Field, IdealSpec, Limits, MapSpec, Membership, Poly, TruncatedSubspace};
use proptest::prelude::*;

fn gf(p: u64) -> Field {
    Field::new(p).unwrap()
}

fn poly_in(f: Field, max_len: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(0..f.p() as u64, 0..=max_len).prop_map(move |c| Poly::new(f, &c).unwrap())
}

fn nonzero_in(f: Field, max_len: usize) -> impl Strategy<Value = Poly> {
    poly_in(f, max_len).prop_filter("nonzero", |g| !g.is_zero())
}

fn monic_in(f: Field, max_deg: usize) -> impl Strategy<Value = Poly> {
    nonzero_in(f, max_deg + 1).prop_map(|g| g.monic())
}

fn assert_echelon(s: &TruncatedSubspace) {
    let pivots = s.pivot_degrees();
    assert!(pivots.windows(2).all(|w| w[0] < w[1]), "pivots {pivots:?}");
    for (i, b) in s.basis().iter().enumerate() {
        assert!(b.is_monic());
        for (j, &d) in pivots.iter().enumerate() {
            if i != j {
                assert_eq!(b.coeff(d), 0, "row {i} not reduced at pivot {d}");
            }
        }
        assert_eq!(s.member(b), Membership::In);
    }
}

/// Exact membership matches the truncated span, for every f of degree up to
/// `2p` and sampled g.
#[test]
fn exact_membership_agrees_with_span() {
    let lim = Limits::default();
    for p in [2u64, 3, 5] {
        let field = gf(p);
        let n = 6 * p as usize;
        let whole = IdealSpec::whole(field);
        let fs: Vec<Poly> = if p == 5 {
            // 5^11 polynomials is too many; keep those with at most two terms.
            all_polys(field, 2 * p as usize)
                .filter(|f| f.terms().count() <= 2)
                .collect()
        } else {
            all_polys(field, 2 * p as usize).collect()
        };
        for f in fs {
            let s = image_span(&MapSpec::derivation(f.clone()), &whole, n, &lim).unwrap();
            let room = n - f.degree().unwrap();
            let gs: Vec<Poly> = if p == 2 {
                all_polys(field, room).collect()
            } else {
                (0..=room).map(|k| Poly::monomial(field, k, 1)).collect()
            };
            for g in gs {
                let fg = &f * &g;
                assert_eq!(
                    exact_member_derivation(&f, &fg),
                    s.member(&fg) == Membership::In,
                    "p={p} f={f} g={g}"
                );
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn exact_ideal_membership_agrees_with_span(
        (f, u, g) in prop::sample::select(vec![2u64, 3, 5]).prop_flat_map(|p| {
            let k = gf(p);
            (nonzero_in(k, 4), monic_in(k, 3), poly_in(k, 16))
        })
    ) {
        let lim = Limits::default();
        let ideal = IdealSpec::new(u).unwrap();
        let s = image_span(&MapSpec::derivation(f.clone()), &ideal, 24, &lim).unwrap();
        prop_assert!(s.is_exact());
        // Both a random g and one guaranteed to pass the divisibility test.
        for h in [g.clone(), &f * &g] {
            if h.degree().unwrap_or(0) <= 24 {
                prop_assert_eq!(
                    exact_member_ideal_derivation(&f, &ideal, &h),
                    s.member(&h) == Membership::In
                );
            }
        }
    }

    #[test]
    fn spans_are_echelon_and_sound(
        (map, u) in prop::sample::select(vec![2u64, 3, 5]).prop_flat_map(|p| {
            let k = gf(p);
            (
                prop_oneof![
                    nonzero_in(k, 5).prop_map(MapSpec::derivation),
                    poly_in(k, 3).prop_map(MapSpec::ederivation),
                ],
                prop::option::of(monic_in(k, 2)),
            )
        })
    ) {
        let lim = Limits::default();
        let field = map.field();
        let ideal = match u {
            Some(u) => IdealSpec::new(u).unwrap(),
            None => IdealSpec::whole(field),
        };
        let s = image_span(&map, &ideal, 20, &lim).unwrap();
        assert_echelon(&s);
        prop_assert!(s.verify_preimages(&map).unwrap());
        for pre in s.preimages() {
            prop_assert!(ideal.contains(pre));
        }
    }
}

/// The digit-sum membership rule holds well past `p^2`.
#[test]
fn monomial_table_matches_span_beyond_p_squared() {
    for (p, n) in [(2u64, 40usize), (3, 60), (5, 140), (7, 120)] {
        let field = gf(p);
        for c in field.units() {
            let phi = Poly::new(field, &[c as u64, 1]).unwrap();
            let span = ederivation_span(&phi, &IdealSpec::whole(field), n).unwrap();
            let table = ederivation_monomial_table(field, c, n).unwrap();
            for d in 0..=n {
                let actual = span.member(&Poly::monomial(field, d, 1)) == Membership::In;
                assert_eq!(table.member(d), Some(actual), "p={p} c={c} x^{d}");
            }
        }
    }
}
