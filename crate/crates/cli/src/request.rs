//! Request schema and validation.
//!
//! Parsing is strict: unknown keys are rejected, and every semantic error
//! carries the JSON path of the offending field.

use mzlab_core::classify::{MembershipMode, Witness};
use mzlab_core::nilpotency::DEFAULT_ITERATION_CAP;
use mzlab_core::oracle::ProbeConfig;
use mzlab_core::{Field, IdealSpec, Limits, MapSpec, MultiPoly, Poly};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Upper bound on `caps.iteration_cap`.
pub const MAX_ITERATION_CAP: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Classify,
    Member,
    Basis,
    Ln,
    Lf,
    TableThm25,
    TableLemma37,
    OracleRadical,
    OracleWitness,
    Selftest,
}

impl Command {
    pub fn as_str(self) -> &'static str {
        match self {
            Command::Classify => "classify",
            Command::Member => "member",
            Command::Basis => "basis",
            Command::Ln => "ln",
            Command::Lf => "lf",
            Command::TableThm25 => "table-thm25",
            Command::TableLemma37 => "table-lemma37",
            Command::OracleRadical => "oracle-radical",
            Command::OracleWitness => "oracle-witness",
            Command::Selftest => "selftest",
        }
    }
}

/// A multivariate term `[[e_1, .., e_n], c]`.
pub type Term = (Vec<u32>, u64);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum MapPayload {
    /// `f d/dx`.
    Derivation { f: Vec<u64> },
    /// `I - phi`.
    Ederivation { phi: Vec<u64> },
    /// `sum_i f_i d/dx_i`; `coefficients[i]` may mention only later variables.
    Triangular { coefficients: Vec<Vec<Term>> },
    /// `f d/dx_var` on `K[x_0..x_(nvars-1)]`.
    Partial { nvars: usize, var: usize, f: Vec<Term> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealPayload {
    pub generator: Vec<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProbePayload {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_candidate_degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree_cap: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub power_floor: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Caps {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree_cap: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub iteration_cap: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub probe: Option<ProbePayload>,
}

/// Parameters of the two-slot coefficient table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TablePayload {
    pub i1: u32,
    pub i2: u32,
    pub c1: u64,
    pub c2: u64,
    pub k_max: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessPayload {
    pub a: Vec<u64>,
    pub b: Vec<u64>,
    pub mode: ModePayload,
    pub m_range: (u32, u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModePayload {
    ExactDerivation,
    Window,
    TranslationCertificate,
}

impl From<ModePayload> for MembershipMode {
    fn from(m: ModePayload) -> Self {
        match m {
            ModePayload::ExactDerivation => MembershipMode::ExactDerivation,
            ModePayload::Window => MembershipMode::Window,
            ModePayload::TranslationCertificate => MembershipMode::TranslationCertificate,
        }
    }
}

/// A request as written. Serializing it gives the echo carried in reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Request {
    pub p: u64,
    pub command: Command,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map: Option<MapPayload>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ideal: Option<IdealPayload>,
    /// Polynomial tested by `member`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<TablePayload>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessPayload>,
    #[serde(default, skip_serializing_if = "Caps::is_empty")]
    pub caps: Caps,
}

impl Caps {
    fn is_empty(&self) -> bool {
        *self == Caps::default()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{path}: {message}")]
pub struct ParseError {
    /// Dotted JSON path, `.` for the document root.
    pub path: String,
    pub message: String,
}

impl ParseError {
    pub fn new(path: impl Into<String>, message: impl Into<String>) -> Self {
        ParseError {
            path: path.into(),
            message: message.into(),
        }
    }
}

/// Either one request or a batch.
pub enum Document {
    Single(Box<Request>),
    Batch(Vec<Request>),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawDocument {
    Batch(Vec<serde_json::Value>),
    Single(serde_json::Value),
}

fn from_value(value: serde_json::Value, prefix: &str) -> Result<Request, ParseError> {
    let req: Request = serde_path_to_error::deserialize(value).map_err(|e| {
        let inner = e.path().to_string();
        let path = match (prefix.is_empty(), inner.as_str()) {
            (true, p) => p.to_string(),
            (false, ".") => prefix.to_string(),
            (false, p) => format!("{prefix}.{p}"),
        };
        ParseError::new(path, e.into_inner().to_string())
    })?;
    req.validate().map_err(|e| {
        if prefix.is_empty() {
            e
        } else {
            ParseError::new(format!("{prefix}.{}", e.path), e.message)
        }
    })?;
    Ok(req)
}

/// Parses and validates a single request.
pub fn parse_request(text: &[u8]) -> Result<Request, ParseError> {
    let value: serde_json::Value =
        serde_json::from_slice(text).map_err(|e| ParseError::new(".", e.to_string()))?;
    from_value(value, "")
}

/// Parses a single request or a JSON array of requests.
pub fn parse_document(text: &[u8]) -> Result<Document, ParseError> {
    let raw: RawDocument =
        serde_json::from_slice(text).map_err(|e| ParseError::new(".", e.to_string()))?;
    match raw {
        RawDocument::Single(v) => from_value(v, "").map(|r| Document::Single(Box::new(r))),
        RawDocument::Batch(vs) => vs
            .into_iter()
            .enumerate()
            .map(|(i, v)| from_value(v, &format!("[{i}]")))
            .collect::<Result<Vec<_>, _>>()
            .map(Document::Batch),
    }
}

fn poly(field: Field, coeffs: &[u64], path: &str) -> Result<Poly, ParseError> {
    for (i, &c) in coeffs.iter().enumerate() {
        if c >= field.p() as u64 {
            return Err(ParseError::new(
                format!("{path}[{i}]"),
                format!("coefficient {c} is not in [0, {})", field.p()),
            ));
        }
    }
    Poly::new(field, coeffs).map_err(|e| ParseError::new(path, e.to_string()))
}

fn multipoly(field: Field, nvars: usize, terms: &[Term], path: &str) -> Result<MultiPoly, ParseError> {
    for (i, (exps, c)) in terms.iter().enumerate() {
        if exps.len() != nvars {
            return Err(ParseError::new(
                format!("{path}[{i}]"),
                format!("expected {nvars} exponents, found {}", exps.len()),
            ));
        }
        if *c >= field.p() as u64 {
            return Err(ParseError::new(
                format!("{path}[{i}]"),
                format!("coefficient {c} is not in [0, {})", field.p()),
            ));
        }
    }
    MultiPoly::from_terms(field, nvars, terms).map_err(|e| ParseError::new(path, e.to_string()))
}

/// A map ready for the engine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EngineMap {
    Univariate(MapSpec),
    Triangular(MapSpec),
    Partial { f: MultiPoly, var: usize },
}

/// Engine-side values of a validated request.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub field: Field,
    pub map: Option<EngineMap>,
    pub ideal: Option<IdealSpec>,
    pub target: Option<Poly>,
    pub witness: Option<Witness>,
    pub degree_cap: Option<usize>,
    pub iteration_cap: usize,
    pub probe: ProbeConfig,
}

impl Request {
    /// Checks every payload against `p` and the global caps.
    pub fn validate(&self) -> Result<(), ParseError> {
        self.resolve(&Limits::default()).map(|_| ())
    }

    /// Builds engine values, checking caps against `limits`.
    pub fn resolve(&self, limits: &Limits) -> Result<Resolved, ParseError> {
        let field = Field::new(self.p).map_err(|e| match e {
            mzlab_core::Error::NotPrime(_) => ParseError::new("p", "p not prime"),
            other => ParseError::new("p", other.to_string()),
        })?;
        let map = self
            .map
            .as_ref()
            .map(|m| resolve_map(field, m))
            .transpose()?;
        let ideal = self
            .ideal
            .as_ref()
            .map(|i| {
                let g = poly(field, &i.generator, "ideal.generator")?;
                if g.is_zero() {
                    return Err(ParseError::new("ideal.generator", "generator must be nonzero"));
                }
                IdealSpec::new(g.monic()).map_err(|e| ParseError::new("ideal.generator", e.to_string()))
            })
            .transpose()?;
        let target = self
            .target
            .as_ref()
            .map(|t| poly(field, t, "target"))
            .transpose()?;
        let witness = self
            .witness
            .as_ref()
            .map(|w| resolve_witness(field, w))
            .transpose()?;
        if let Some(t) = &self.table {
            for (name, c) in [("c1", t.c1), ("c2", t.c2)] {
                if c == 0 || c >= field.p() as u64 {
                    return Err(ParseError::new(
                        format!("table.{name}"),
                        format!("must be a nonzero residue below {}", field.p()),
                    ));
                }
            }
            if t.i1 >= field.p() || t.i2 >= field.p() || t.i1 == t.i2 {
                return Err(ParseError::new(
                    "table",
                    "i1 and i2 must be distinct residues below p",
                ));
            }
            if t.k_max > mzlab_core::nilpotency::MAX_TABLE_ROWS {
                return Err(ParseError::new(
                    "table.k_max",
                    format!("exceeds {}", mzlab_core::nilpotency::MAX_TABLE_ROWS),
                ));
            }
        }

        let caps = &self.caps;
        if let Some(n) = caps.degree_cap {
            if n == 0 {
                return Err(ParseError::new("caps.degree_cap", "must be positive"));
            }
            limits
                .check_degree(n)
                .map_err(|e| ParseError::new("caps.degree_cap", e.to_string()))?;
        }
        let iteration_cap = caps.iteration_cap.unwrap_or(DEFAULT_ITERATION_CAP);
        if iteration_cap == 0 || iteration_cap > MAX_ITERATION_CAP {
            return Err(ParseError::new(
                "caps.iteration_cap",
                format!("must lie in [1, {MAX_ITERATION_CAP}]"),
            ));
        }
        let probe = resolve_probe(caps.probe.unwrap_or_default(), limits)?;

        self.check_required(&map)?;
        Ok(Resolved {
            field,
            map,
            ideal,
            target,
            witness,
            degree_cap: caps.degree_cap,
            iteration_cap,
            probe,
        })
    }

    fn check_required(&self, map: &Option<EngineMap>) -> Result<(), ParseError> {
        let need = |present: bool, field: &str| {
            if present {
                Ok(())
            } else {
                Err(ParseError::new(
                    field,
                    format!("required by command {}", self.command.as_str()),
                ))
            }
        };
        let univariate = |what: &str| match map {
            Some(EngineMap::Univariate(_)) => Ok(()),
            Some(_) => Err(ParseError::new(
                "map.kind",
                format!("{what} needs a derivation or ederivation"),
            )),
            None => need(false, "map"),
        };
        let no_ideal = || match (map, &self.ideal) {
            (Some(EngineMap::Univariate(_)), _) | (_, None) => Ok(()),
            _ => Err(ParseError::new(
                "ideal",
                "ideals apply to univariate maps only",
            )),
        };
        match self.command {
            Command::Classify => {
                need(map.is_some(), "map")?;
                no_ideal()
            }
            Command::Member => {
                univariate("member")?;
                need(self.target.is_some(), "target")
            }
            Command::Basis => {
                need(map.is_some(), "map")?;
                no_ideal()
            }
            Command::OracleRadical | Command::OracleWitness => univariate(self.command.as_str()),
            Command::Ln | Command::Lf => {
                univariate(self.command.as_str())?;
                if self.ideal.is_some() {
                    return Err(ParseError::new("ideal", "not used by this command"));
                }
                Ok(())
            }
            Command::TableThm25 => match &self.map {
                Some(MapPayload::Ederivation { phi })
                    if phi.len() == 2 && phi[1] == 1 && phi[0] != 0 =>
                {
                    Ok(())
                }
                Some(_) => Err(ParseError::new(
                    "map",
                    "table-thm25 needs an ederivation with phi = [c, 1], c != 0",
                )),
                None => need(false, "map"),
            },
            Command::TableLemma37 => need(self.table.is_some(), "table"),
            Command::Selftest => Ok(()),
        }
    }
}

fn resolve_map(field: Field, m: &MapPayload) -> Result<EngineMap, ParseError> {
    match m {
        MapPayload::Derivation { f } => {
            Ok(EngineMap::Univariate(MapSpec::derivation(poly(field, f, "map.f")?)))
        }
        MapPayload::Ederivation { phi } => Ok(EngineMap::Univariate(MapSpec::ederivation(poly(
            field, phi, "map.phi",
        )?))),
        MapPayload::Triangular { coefficients } => {
            let n = coefficients.len();
            if n == 0 {
                return Err(ParseError::new("map.coefficients", "need at least one variable"));
            }
            let fs = coefficients
                .iter()
                .enumerate()
                .map(|(i, terms)| multipoly(field, n, terms, &format!("map.coefficients[{i}]")))
                .collect::<Result<Vec<_>, _>>()?;
            MapSpec::triangular(fs)
                .map(EngineMap::Triangular)
                .map_err(|e| ParseError::new("map.coefficients", e.to_string()))
        }
        MapPayload::Partial { nvars, var, f } => {
            if *nvars == 0 {
                return Err(ParseError::new("map.nvars", "must be positive"));
            }
            if var >= nvars {
                return Err(ParseError::new(
                    "map.var",
                    format!("variable {var} out of range for {nvars} variables"),
                ));
            }
            let f = multipoly(field, *nvars, f, "map.f")?;
            if f.is_zero() {
                return Err(ParseError::new("map.f", "must be nonzero"));
            }
            Ok(EngineMap::Partial { f, var: *var })
        }
    }
}

fn resolve_witness(field: Field, w: &WitnessPayload) -> Result<Witness, ParseError> {
    let (lo, hi) = w.m_range;
    if lo == 0 || lo > hi {
        return Err(ParseError::new(
            "witness.m_range",
            "must be [lo, hi] with 1 <= lo <= hi",
        ));
    }
    Ok(Witness {
        a: poly(field, &w.a, "witness.a")?,
        b: poly(field, &w.b, "witness.b")?,
        mode: w.mode.into(),
        m_range: w.m_range,
    })
}

fn resolve_probe(raw: ProbePayload, limits: &Limits) -> Result<ProbeConfig, ParseError> {
    let base = ProbeConfig::default();
    let cfg = ProbeConfig {
        max_candidate_degree: raw.max_candidate_degree.unwrap_or(base.max_candidate_degree),
        degree_cap: raw.degree_cap.unwrap_or(base.degree_cap),
        power_floor: raw.power_floor.unwrap_or(base.power_floor),
    };
    cfg.validate()
        .map_err(|e| ParseError::new("caps.probe", e.to_string()))?;
    limits
        .check_degree(cfg.degree_cap)
        .map_err(|e| ParseError::new("caps.probe.degree_cap", e.to_string()))?;
    Ok(cfg)
}
