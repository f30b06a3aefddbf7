use mzlab_cli::request::{Caps, MapPayload, ModePayload, ProbePayload, TablePayload, WitnessPayload};
use mzlab_cli::{parse_document, parse_request, Command, Document, Request};
use proptest::prelude::*;

fn err(text: &str) -> (String, String) {
    let e = parse_request(text.as_bytes()).unwrap_err();
    (e.path, e.message)
}

#[test]
fn classify_request_for_x_squared() {
    let r = parse_request(br#"{"p":3,"map":{"kind":"derivation","f":[0,0,1]},"command":"classify"}"#)
        .unwrap();
    assert_eq!(r.p, 3);
    assert_eq!(r.command, Command::Classify);
    assert_eq!(r.map, Some(MapPayload::Derivation { f: vec![0, 0, 1] }));
    assert_eq!(r.ideal, None);
}

#[test]
fn ederivation_with_ideal() {
    let r = parse_request(
        br#"{"p":3,"map":{"kind":"ederivation","phi":[1,1]},"ideal":{"generator":[0,1]},"command":"classify"}"#,
    )
    .unwrap();
    assert_eq!(r.map, Some(MapPayload::Ederivation { phi: vec![1, 1] }));
    assert_eq!(r.ideal.unwrap().generator, vec![0, 1]);
}

#[test]
fn composite_p_is_rejected() {
    let (path, msg) = err(r#"{"p":4,"map":{"kind":"derivation","f":[0,1]},"command":"classify"}"#);
    assert_eq!(path, "p");
    assert_eq!(msg, "p not prime");
}

#[test]
fn large_p_is_rejected() {
    let (path, _) = err(r#"{"p":101,"map":{"kind":"derivation","f":[0,1]},"command":"classify"}"#);
    assert_eq!(path, "p");
}

#[test]
fn errors_carry_field_paths() {
    let cases = [
        (r#"{"p":3,"map":{"kind":"derivation","f":[0,3]},"command":"classify"}"#, "map.f[1]"),
        (r#"{"p":3,"map":{"kind":"derivation","f":[0,1]},"command":"classify","extra":0}"#, "extra"),
        (r#"{"p":3,"map":{"kind":"derivation","f":[0,1]},"command":"classify","caps":{"degree_cap":100000}}"#, "caps.degree_cap"),
        (r#"{"p":3,"map":{"kind":"derivation","f":[0,1]},"command":"classify","caps":{"iteration_cap":0}}"#, "caps.iteration_cap"),
        (r#"{"p":3,"map":{"kind":"derivation","f":[0,1]},"command":"oracle-radical","caps":{"probe":{"max_candidate_degree":5,"degree_cap":4}}}"#, "caps.probe"),
        (r#"{"p":3,"map":{"kind":"derivation","f":[0,1]},"command":"classify","ideal":{"generator":[0,0]}}"#, "ideal.generator"),
        (r#"{"p":3,"map":{"kind":"derivation","f":[0,1]},"command":"member"}"#, "target"),
        (r#"{"p":3,"command":"classify"}"#, "map"),
        (r#"{"p":3,"map":{"kind":"derivation","f":[0,1]},"command":"table-thm25"}"#, "map"),
        (r#"{"p":3,"command":"table-lemma37","table":{"i1":1,"i2":1,"c1":1,"c2":1,"k_max":3}}"#, "table"),
        (r#"{"p":3,"command":"table-lemma37","table":{"i1":0,"i2":1,"c1":0,"c2":1,"k_max":3}}"#, "table.c1"),
        (r#"{"p":2,"map":{"kind":"triangular","coefficients":[[[[1,0],1]],[]]},"command":"classify"}"#, "map.coefficients"),
        (r#"{"p":2,"map":{"kind":"partial","nvars":2,"var":2,"f":[[[1,0],1]]},"command":"classify"}"#, "map.var"),
        (r#"{"p":2,"map":{"kind":"partial","nvars":2,"var":0,"f":[[[1],1]]},"command":"classify"}"#, "map.f[0]"),
        (r#"{"p":3,"map":{"kind":"derivation","f":[0,1]},"command":"oracle-witness","witness":{"a":[1],"b":[1],"mode":"window","m_range":[3,1]}}"#, "witness.m_range"),
        (r#"{"p":3,"map":{"kind":"derivation","f":[0,1]},"command":"frobnicate"}"#, "command"),
        (r#"{"p":3,"map":{"kind":"derivation","f":[0,1]}"#, "."),
    ];
    for (text, want) in cases {
        let (path, msg) = err(text);
        assert_eq!(path, want, "{text}: {msg}");
    }
}

#[test]
fn unknown_map_keys_point_at_the_map() {
    let (path, msg) = err(r#"{"p":3,"map":{"kind":"derivation","f":[0,1],"g":[1]},"command":"classify"}"#);
    assert_eq!(path, "map");
    assert!(msg.contains("unknown field `g`"), "{msg}");
}

#[test]
fn batch_errors_are_indexed() {
    let text = br#"[{"p":3,"map":{"kind":"derivation","f":[0,1]},"command":"ln"},
                    {"p":3,"map":{"kind":"derivation","f":[0,7]},"command":"ln"}]"#;
    let e = parse_document(text).err().expect("second request is invalid");
    assert_eq!(e.path, "[1].map.f[1]");
}

#[test]
fn batch_preserves_order() {
    let text = br#"[{"p":2,"map":{"kind":"derivation","f":[1]},"command":"ln"},
                    {"p":5,"map":{"kind":"derivation","f":[1]},"command":"lf"}]"#;
    let Ok(Document::Batch(rs)) = parse_document(text) else {
        panic!("expected a batch")
    };
    assert_eq!(rs.iter().map(|r| r.p).collect::<Vec<_>>(), vec![2, 5]);
}

fn coeffs(p: u64) -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(0..p, 0..6)
}

fn nonzero(p: u64) -> impl Strategy<Value = Vec<u64>> {
    coeffs(p).prop_map(|mut c| {
        c.push(1);
        c
    })
}

fn valid_request() -> impl Strategy<Value = Request> {
    prop::sample::select(vec![2u64, 3, 5, 7]).prop_flat_map(|p| {
        let map = prop_oneof![
            coeffs(p).prop_map(|f| MapPayload::Derivation { f }),
            coeffs(p).prop_map(|phi| MapPayload::Ederivation { phi }),
        ];
        let caps = (
            prop::option::of(1usize..200),
            prop::option::of(1usize..500),
            prop::option::of((1usize..4, prop::option::of(1u32..4))),
        )
            .prop_map(|(degree_cap, iteration_cap, probe)| Caps {
                degree_cap,
                iteration_cap,
                probe: probe.map(|(d, m)| ProbePayload {
                    max_candidate_degree: Some(d),
                    degree_cap: Some(60),
                    power_floor: m,
                }),
            });
        let witness = (nonzero(p), coeffs(p), 1u32..4, 0u32..4).prop_map(|(a, b, lo, extra)| {
            WitnessPayload {
                a,
                b,
                mode: ModePayload::Window,
                m_range: (lo, lo + extra),
            }
        });
        (
            Just(p),
            map,
            prop::option::of(nonzero(p)),
            coeffs(p),
            caps,
            witness,
            prop::sample::select(vec![
                Command::Classify,
                Command::Member,
                Command::Basis,
                Command::OracleRadical,
                Command::OracleWitness,
                Command::TableLemma37,
            ]),
        )
            .prop_map(|(p, map, ideal, target, caps, witness, command)| {
                let mut r = Request {
                    p,
                    command,
                    map: Some(map),
                    ideal: ideal.map(|generator| mzlab_cli::request::IdealPayload { generator }),
                    target: None,
                    table: None,
                    witness: None,
                    caps,
                };
                match command {
                    Command::Member => r.target = Some(target),
                    Command::OracleWitness => r.witness = Some(witness),
                    Command::TableLemma37 => {
                        r.table = Some(TablePayload {
                            i1: 0,
                            i2: 1,
                            c1: 1,
                            c2: p - 1,
                            k_max: 4,
                        })
                    }
                    _ => {}
                }
                r
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn echo_round_trips(req in valid_request()) {
        req.validate().unwrap();
        let echo = serde_json::to_vec(&req).unwrap();
        prop_assert_eq!(parse_request(&echo).unwrap(), req);
    }
}
