//! Scenario configuration files.
//!
//! TOML by default, JSON when the file name ends in `.json`. Unknown keys
//! are rejected. Lists may be written as a single value, and chain lengths
//! also as `{ from, to, step }`.

use std::f64::consts::PI;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scenario {
    TransportSweep,
    ThetaSweep,
    Disorder,
    Workdist,
    BesselCompare,
}

impl Scenario {
    pub const ALL: [Scenario; 5] = [
        Scenario::TransportSweep,
        Scenario::ThetaSweep,
        Scenario::Disorder,
        Scenario::Workdist,
        Scenario::BesselCompare,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scenario::TransportSweep => "transport-sweep",
            Scenario::ThetaSweep => "theta-sweep",
            Scenario::Disorder => "disorder",
            Scenario::Workdist => "workdist",
            Scenario::BesselCompare => "bessel-compare",
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scenario {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Scenario::ALL
            .into_iter()
            .find(|sc| sc.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Scenario::ALL.iter().map(|s| s.name()).collect();
                format!("unknown scenario `{s}` (expected one of {})", names.join(", "))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(format!("unknown format `{s}` (expected csv or json)")),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum IntList {
    One(usize),
    Many(Vec<usize>),
    Range(IntRange),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct IntRange {
    from: usize,
    to: usize,
    #[serde(default = "one")]
    step: usize,
}

fn one() -> usize {
    1
}

impl IntList {
    fn expand(self, what: &str) -> Result<Vec<usize>, CliError> {
        match self {
            IntList::One(v) => Ok(vec![v]),
            IntList::Many(v) => Ok(v),
            IntList::Range(r) => {
                if r.step == 0 || r.from > r.to {
                    return Err(CliError::Config(format!(
                        "{what}: range needs from <= to and step > 0"
                    )));
                }
                Ok((r.from..=r.to).step_by(r.step).collect())
            }
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum FloatList {
    One(f64),
    Many(Vec<f64>),
}

impl FloatList {
    fn expand(self) -> Vec<f64> {
        match self {
            FloatList::One(v) => vec![v],
            FloatList::Many(v) => v,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InitialKind {
    Pure,
    Mixed,
    /// Each pure angle paired with the diagonal state of equal ergotropy.
    #[default]
    Matched,
    /// Every listed angle as a pure state and every listed `q` as a
    /// diagonal state, unpaired.
    Both,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    scenario: Option<Scenario>,
    seed: Option<u64>,
    chain: RawChain,
    #[serde(default)]
    initial: RawInitial,
    #[serde(default)]
    time: RawTime,
    #[serde(default)]
    ensemble: RawEnsemble,
    #[serde(default)]
    workdist: RawWorkdist,
    #[serde(default)]
    output: RawOutput,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawChain {
    n: IntList,
    alpha: Option<FloatList>,
    delta: Option<FloatList>,
    b: Option<f64>,
    j: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInitial {
    kind: Option<InitialKind>,
    theta: Option<FloatList>,
    q: Option<FloatList>,
    phi: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTime {
    window: Option<f64>,
    step: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEnsemble {
    realizations: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawWorkdist {
    bins: Option<usize>,
    densities: Option<bool>,
    grid_points: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOutput {
    dir: Option<PathBuf>,
    format: Option<Format>,
}

/// Fully resolved run description. Its JSON serialisation is what the
/// manifest hashes, so field order here is part of the output contract.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioConfig {
    pub scenario: Scenario,
    pub seed: u64,
    pub n: Vec<usize>,
    pub alpha: Vec<f64>,
    pub delta: Vec<f64>,
    pub b: f64,
    pub j: f64,
    pub initial: InitialKind,
    pub theta: Vec<f64>,
    pub q: Vec<f64>,
    pub phi: f64,
    pub time_window: Option<f64>,
    pub time_step: f64,
    pub realizations: usize,
    pub histogram_bins: usize,
    pub densities: bool,
    pub density_grid_points: usize,
    pub format: Format,
    /// Where files go; deliberately left out of the hash.
    #[serde(skip)]
    pub out_dir: PathBuf,
}

/// Command-line values that take precedence over the file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub out_dir: Option<PathBuf>,
    pub format: Option<Format>,
}

fn parse_raw(path: &Path, text: &str) -> Result<RawConfig, CliError> {
    let is_json = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"));
    if is_json {
        serde_json::from_str(text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    } else {
        toml::from_str(text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }
}

pub fn load(path: &Path, scenario: Scenario, overrides: &Overrides) -> Result<ScenarioConfig, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    let raw = parse_raw(path, &text)?;
    resolve(raw, scenario, overrides)
}

/// Parses config text directly; `name` only selects the syntax and labels
/// diagnostics.
pub fn from_str(name: &str, text: &str, scenario: Scenario, overrides: &Overrides) -> Result<ScenarioConfig, CliError> {
    resolve(parse_raw(Path::new(name), text)?, scenario, overrides)
}

fn resolve(raw: RawConfig, scenario: Scenario, ov: &Overrides) -> Result<ScenarioConfig, CliError> {
    if let Some(file_scenario) = raw.scenario {
        if file_scenario != scenario {
            return Err(CliError::Config(format!(
                "scenario: config file is for `{file_scenario}`, command line asked for `{scenario}`"
            )));
        }
    }
    let default_alpha = if scenario == Scenario::Disorder { 1.0 } else { 0.0 };
    let default_delta = if scenario == Scenario::Disorder {
        vec![0.0, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3]
    } else {
        vec![0.0]
    };
    let cfg = ScenarioConfig {
        scenario,
        seed: ov.seed.or(raw.seed).unwrap_or(0),
        n: raw.chain.n.expand("chain.n")?,
        alpha: raw.chain.alpha.map_or(vec![default_alpha], FloatList::expand),
        delta: raw.chain.delta.map_or(default_delta, FloatList::expand),
        b: raw.chain.b.unwrap_or(1.0),
        j: raw.chain.j.unwrap_or(1.0),
        initial: raw.initial.kind.unwrap_or_default(),
        theta: raw.initial.theta.map_or(vec![PI / 2.0], FloatList::expand),
        q: raw.initial.q.map_or(vec![], FloatList::expand),
        phi: raw.initial.phi.unwrap_or(0.0),
        time_window: raw.time.window,
        time_step: raw.time.step.unwrap_or(ergochain_core::ergotropy::DEFAULT_TIME_STEP),
        realizations: raw.ensemble.realizations.unwrap_or(1000),
        histogram_bins: raw.workdist.bins.unwrap_or(101),
        densities: raw.workdist.densities.unwrap_or(true),
        density_grid_points: raw.workdist.grid_points.unwrap_or(201),
        format: ov.format.or(raw.output.format).unwrap_or_default(),
        out_dir: ov
            .out_dir
            .clone()
            .or(raw.output.dir)
            .unwrap_or_else(|| PathBuf::from(".")),
    };
    cfg.validate()?;
    Ok(cfg)
}

fn bad(field: &str, msg: impl fmt::Display) -> CliError {
    CliError::Config(format!("{field}: {msg}"))
}

impl ScenarioConfig {
    fn validate(&self) -> Result<(), CliError> {
        if self.n.is_empty() {
            return Err(bad("chain.n", "empty list"));
        }
        if let Some(n) = self.n.iter().find(|&&n| n < 2) {
            return Err(bad("chain.n", format!("chain length {n} < 2")));
        }
        if self.alpha.is_empty() {
            return Err(bad("chain.alpha", "empty list"));
        }
        if let Some(a) = self.alpha.iter().find(|a| !(0.0..=1.0).contains(*a)) {
            return Err(bad("chain.alpha", format!("{a} outside [0, 1]")));
        }
        if self.delta.is_empty() {
            return Err(bad("chain.delta", "empty list"));
        }
        if let Some(d) = self.delta.iter().find(|d| !(**d >= 0.0 && d.is_finite())) {
            return Err(bad("chain.delta", format!("{d} must be >= 0")));
        }
        if !(self.j > 0.0 && self.j.is_finite()) {
            return Err(bad("chain.j", format!("{} must be > 0", self.j)));
        }
        if !(self.b > 0.0 && self.b.is_finite()) {
            return Err(bad("chain.b", format!("{} must be > 0", self.b)));
        }
        if let Some(t) = self.theta.iter().find(|t| !(0.0..=PI).contains(*t)) {
            return Err(bad("initial.theta", format!("{t} outside [0, π]")));
        }
        if let Some(q) = self.q.iter().find(|q| !(0.0..=1.0).contains(*q)) {
            return Err(bad("initial.q", format!("{q} outside [0, 1]")));
        }
        if !self.phi.is_finite() {
            return Err(bad("initial.phi", "must be finite"));
        }
        match self.initial {
            InitialKind::Pure | InitialKind::Matched if self.theta.is_empty() => {
                return Err(bad("initial.theta", "empty list"));
            }
            InitialKind::Mixed if self.q.is_empty() => {
                return Err(bad("initial.q", "empty list (required for kind = \"mixed\")"));
            }
            InitialKind::Both if self.theta.is_empty() && self.q.is_empty() => {
                return Err(bad("initial", "kind = \"both\" needs theta or q values"));
            }
            _ => {}
        }
        if let Some(w) = self.time_window {
            if !(w > 0.0 && w.is_finite()) {
                return Err(bad("time.window", format!("{w} must be > 0")));
            }
        }
        if !(self.time_step > 0.0 && self.time_step.is_finite()) {
            return Err(bad("time.step", format!("{} must be > 0", self.time_step)));
        }
        if self.realizations == 0 {
            return Err(bad("ensemble.realizations", "must be >= 1"));
        }
        if self.histogram_bins == 0 {
            return Err(bad("workdist.bins", "must be >= 1"));
        }
        if self.density_grid_points < 2 {
            return Err(bad("workdist.grid_points", "must be >= 2"));
        }
        if self.scenario == Scenario::BesselCompare && self.alpha.iter().any(|&a| a != 0.0) {
            return Err(bad("chain.alpha", "bessel-compare is defined for the uniform chain only (alpha = 0)"));
        }
        Ok(())
    }

    /// Lowercase hex SHA-256 of the canonical JSON form.
    pub fn hash(&self) -> String {
        use sha2::{Digest, Sha256};
        let canonical = serde_json::to_vec(self).expect("config serialises");
        hex::encode(Sha256::digest(&canonical))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str, scenario: Scenario) -> Result<ScenarioConfig, CliError> {
        from_str("test.toml", text, scenario, &Overrides::default())
    }

    #[test]
    fn defaults_fill_in() {
        let cfg = parse("[chain]\nn = [4, 8]\n", Scenario::TransportSweep).unwrap();
        assert_eq!(cfg.alpha, vec![0.0]);
        assert_eq!(cfg.initial, InitialKind::Matched);
        assert_eq!(cfg.format, Format::Csv);
        let cfg = parse("[chain]\nn = 5\n", Scenario::Disorder).unwrap();
        assert_eq!(cfg.alpha, vec![1.0]);
        assert_eq!(cfg.delta.len(), 7);
        assert_eq!(cfg.realizations, 1000);
    }

    #[test]
    fn ranges_expand() {
        let cfg = parse("[chain]\nn = { from = 2, to = 10, step = 4 }\n", Scenario::Workdist).unwrap();
        assert_eq!(cfg.n, vec![2, 6, 10]);
    }

    #[test]
    fn unknown_keys_are_rejected_with_location() {
        let err = parse("[chain]\nn = [4]\nalpah = 0.5\n", Scenario::TransportSweep).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("alpah") && msg.contains("line 3"), "{msg}");
        assert!(parse("[chain]\nn = [4]\n[extra]\nx = 1\n", Scenario::TransportSweep).is_err());
    }

    #[test]
    fn field_diagnostics() {
        let msg = parse("[chain]\nn = [4, 1]\n", Scenario::TransportSweep).unwrap_err().to_string();
        assert!(msg.contains("chain.n"), "{msg}");
        let msg = parse("[chain]\nn = [4]\nalpha = [0.2]\n", Scenario::BesselCompare).unwrap_err().to_string();
        assert!(msg.contains("chain.alpha"), "{msg}");
        let msg = parse("[chain]\nn = 4\n[initial]\nkind = \"mixed\"\n", Scenario::Workdist).unwrap_err().to_string();
        assert!(msg.contains("initial.q"), "{msg}");
        let msg = parse("scenario = \"disorder\"\n[chain]\nn = 4\n", Scenario::Workdist).unwrap_err().to_string();
        assert!(msg.contains("scenario"), "{msg}");
    }

    #[test]
    fn json_is_accepted() {
        let cfg = from_str(
            "c.json",
            r#"{"chain": {"n": [3, 4], "alpha": 1.0}, "output": {"format": "json"}}"#,
            Scenario::Workdist,
            &Overrides::default(),
        )
        .unwrap();
        assert_eq!(cfg.n, vec![3, 4]);
        assert_eq!(cfg.format, Format::Json);
    }

    #[test]
    fn hash_ignores_output_directory_but_not_seed() {
        let text = "[chain]\nn = [4]\n";
        let a = parse(text, Scenario::Workdist).unwrap();
        let b = from_str(
            "t.toml",
            text,
            Scenario::Workdist,
            &Overrides { out_dir: Some("/elsewhere".into()), ..Default::default() },
        )
        .unwrap();
        assert_eq!(a.hash(), b.hash());
        let c = from_str("t.toml", text, Scenario::Workdist, &Overrides { seed: Some(9), ..Default::default() }).unwrap();
        assert_ne!(a.hash(), c.hash());
        assert_eq!(a.hash().len(), 64);
    }
}
