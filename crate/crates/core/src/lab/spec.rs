//! Experiment specification, defaults, validation and the canonical hash.

use crate::error::{Error, Result};
use crate::lattice::{Base, MomentTag, Point, PowerTail, StepDistribution};
use crate::wreath::{FiniteGroup, GeneratingSet, LampConfig, LampGroup, WreathElement, WreathGroup};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Alpha,
    #[serde(alias = "alpha_s")]
    AlphaS,
    Drift,
    #[serde(alias = "range_lln")]
    Range,
    #[serde(alias = "boundary_lln")]
    Boundary,
    Flatto,
    #[serde(alias = "good_update")]
    GoodUpdate,
    #[serde(alias = "oned_dist")]
    OnedDist,
    #[serde(alias = "oned_constants", alias = "oned-constants")]
    OnedConst,
    #[serde(alias = "local_time")]
    LocalTime,
    Zwrapz,
}

impl Kind {
    pub const ALL: [Kind; 11] = [
        Kind::Alpha,
        Kind::AlphaS,
        Kind::Drift,
        Kind::Range,
        Kind::Boundary,
        Kind::Flatto,
        Kind::GoodUpdate,
        Kind::OnedDist,
        Kind::OnedConst,
        Kind::LocalTime,
        Kind::Zwrapz,
    ];

    /// Subcommand and output file stem.
    pub fn name(self) -> &'static str {
        match self {
            Kind::Alpha => "alpha",
            Kind::AlphaS => "alpha-s",
            Kind::Drift => "drift",
            Kind::Range => "range",
            Kind::Boundary => "boundary",
            Kind::Flatto => "flatto",
            Kind::GoodUpdate => "good-update",
            Kind::OnedDist => "oned-dist",
            Kind::OnedConst => "oned-const",
            Kind::LocalTime => "local-time",
            Kind::Zwrapz => "zwrapz",
        }
    }

    pub fn parse(s: &str) -> Option<Kind> {
        Kind::ALL.iter().copied().find(|k| k.name() == s || k.name().replace('-', "_") == s)
    }

    fn default_sizes(self) -> Vec<u64> {
        match self {
            Kind::Alpha => vec![8, 16, 32, 64],
            Kind::AlphaS => vec![2, 3],
            Kind::Drift | Kind::Zwrapz => vec![1 << 12, 1 << 14, 1 << 16],
            Kind::Range | Kind::Boundary | Kind::Flatto | Kind::LocalTime => vec![1 << 12, 1 << 14, 1 << 16],
            Kind::GoodUpdate => vec![16],
            Kind::OnedDist => vec![1 << 12],
            Kind::OnedConst => vec![4, 6, 8, 10],
        }
    }

    fn default_trials(self) -> usize {
        match self {
            Kind::OnedDist => 500,
            Kind::GoodUpdate => 100,
            Kind::OnedConst => 200,
            _ => 20,
        }
    }

    /// Kinds whose sizes are step counts normalised by log n.
    fn needs_log(self) -> bool {
        matches!(self, Kind::Drift | Kind::Range | Kind::Boundary | Kind::Flatto | Kind::LocalTime | Kind::Zwrapz)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Solver {
    Exact,
    Strip,
    #[default]
    Box,
}

impl Solver {
    pub fn parse(s: &str) -> Option<Solver> {
        match s {
            "exact" => Some(Solver::Exact),
            "strip" => Some(Solver::Strip),
            "box" => Some(Solver::Box),
            _ => None,
        }
    }
}

/// Truncation level for infinite-support base laws.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Schedule {
    /// c_n = √(δ_{log n} log n).
    Literal,
    /// Smallest c with Σ_{|g| ≥ c} |g| μ(g) ≤ 1/log² n.
    #[default]
    TailBalanced,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WalkSpec {
    #[serde(default = "default_base")]
    pub base: Base,
    /// (step, probability); omitted means simple random walk.
    #[serde(default)]
    pub atoms: Option<Vec<([i64; 2], f64)>>,
    #[serde(default)]
    pub tail: Option<PowerTail>,
    #[serde(default = "default_moment")]
    pub moment: MomentTag,
    #[serde(default = "yes")]
    pub centered: bool,
}

fn default_base() -> Base {
    Base::Plane
}
fn default_moment() -> MomentTag {
    MomentTag::FiniteSupport
}
fn yes() -> bool {
    true
}

impl WalkSpec {
    pub fn srw(base: Base) -> Self {
        WalkSpec { base, atoms: None, tail: None, moment: MomentTag::FiniteSupport, centered: true }
    }

    pub fn build(&self) -> Result<StepDistribution> {
        match &self.atoms {
            None if self.tail.is_none() => Ok(StepDistribution::srw(self.base)),
            None => {
                // Simple random walk atoms scaled to leave room for the tail.
                let w = self.tail.map_or(0.0, |t| t.weight);
                let srw = StepDistribution::srw(self.base);
                let atoms = srw.atoms().iter().map(|(v, p)| (*v, p * (1.0 - w))).filter(|a| a.1 > 0.0).collect();
                StepDistribution::new(self.base, atoms, self.moment, self.tail, self.centered)
            }
            Some(list) => {
                let atoms = list.iter().map(|(v, p)| (Point::new(v[0], v[1]), *p)).collect();
                StepDistribution::new(self.base, atoms, self.moment, self.tail, self.centered)
            }
        }
    }
}

impl Default for WalkSpec {
    fn default() -> Self {
        WalkSpec::srw(Base::Plane)
    }
}

/// Lamp group: cyclic of the given order, or a multiplication table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub enum LampSpec {
    Cyclic(u32),
    Table(Vec<Vec<u32>>),
}

impl Default for LampSpec {
    fn default() -> Self {
        LampSpec::Cyclic(2)
    }
}

impl LampSpec {
    pub fn build(&self) -> Result<LampGroup> {
        match self {
            LampSpec::Cyclic(0) => Err(Error::Config("lamp group order must be at least 2".into())),
            LampSpec::Cyclic(1) => Err(Error::Config("lamp group order must be at least 2".into())),
            LampSpec::Cyclic(m) => Ok(LampGroup::finite(FiniteGroup::cyclic(*m))),
            LampSpec::Table(rows) => {
                let n = rows.len() as u32;
                if rows.iter().any(|r| r.len() != rows.len()) {
                    return Err(Error::Config("lamp table must be square".into()));
                }
                Ok(LampGroup::finite(FiniteGroup::from_table(n, rows.concat())?))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub pos: [i64; 2],
    /// (x, y, value) lamp changes relative to the current position.
    #[serde(default)]
    pub lamps: Vec<[i64; 3]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Generators {
    /// Shifts by the unit vectors and the lamp switch at the origin.
    #[default]
    Standard,
    /// Switch-walk-switch set on the line.
    Sws,
    Custom(Vec<GeneratorSpec>),
}

impl Generators {
    pub fn build(&self, base: Base, lamps: LampGroup) -> Result<GeneratingSet> {
        match self {
            Generators::Standard => Ok(GeneratingSet::standard(WreathGroup::new(base, lamps))),
            Generators::Sws => {
                if base != Base::Line {
                    return Err(Error::Unsupported("the SWS set is defined over the line".into()));
                }
                GeneratingSet::sws_line(lamps)
            }
            Generators::Custom(list) => {
                let group = WreathGroup::new(base, lamps);
                let gens: Vec<WreathElement> = list
                    .iter()
                    .map(|g| {
                        let cfg = LampConfig::from_pairs(g.lamps.iter().map(|l| (Point::new(l[0], l[1]), l[2])));
                        WreathElement::new(Point::new(g.pos[0], g.pos[1]), cfg)
                    })
                    .collect();
                let labels = (0..gens.len()).map(|i| format!("g{i}")).collect();
                GeneratingSet::new(group, gens, labels)
            }
        }
    }
}

/// One experiment. Unset optional fields are filled by [`validate`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSpec {
    pub kind: Kind,
    #[serde(default)]
    pub sizes: Option<Vec<u64>>,
    #[serde(default)]
    pub trials: Option<usize>,
    #[serde(default)]
    pub seed: Option<u64>,
    /// Dilution probability (alpha, alpha-s).
    #[serde(default = "half")]
    pub p: f64,
    #[serde(default)]
    pub solver: Solver,
    /// Box side of the box solver; unset means the per-kind default.
    #[serde(default)]
    pub box_side: Option<i64>,
    #[serde(default)]
    pub walk: Option<WalkSpec>,
    /// Switch probability of each half of a switch-walk-switch step.
    #[serde(default = "half")]
    pub eta: f64,
    #[serde(default)]
    pub lamps: LampSpec,
    #[serde(default)]
    pub generators: Option<Generators>,
    /// Step-time count (good-update) or thin level (flatto).
    #[serde(default)]
    pub q: Option<u64>,
    /// Weight of the uniform part of the step law (good-update).
    #[serde(default = "half")]
    pub a: f64,
    /// Exponent of the local-time functional.
    #[serde(default = "half")]
    pub alpha: f64,
    /// Relative excess defining the bad event (good-update).
    #[serde(default = "one")]
    pub eps: f64,
    #[serde(default)]
    pub schedule: Schedule,
    /// Reference sample size (oned-dist); unset means `trials`.
    #[serde(default)]
    pub reference_trials: Option<usize>,
    /// Steps of the fine-scale reference walk (oned-dist).
    #[serde(default = "reference_steps")]
    pub reference_steps: u64,
    /// State budget of exact searches.
    #[serde(default = "budget")]
    pub budget: usize,
}

fn half() -> f64 {
    0.5
}
fn one() -> f64 {
    1.0
}
fn reference_steps() -> u64 {
    1 << 16
}
fn budget() -> usize {
    20_000_000
}

impl ExperimentSpec {
    pub fn new(kind: Kind) -> Self {
        ExperimentSpec {
            kind,
            sizes: None,
            trials: None,
            seed: None,
            p: 0.5,
            solver: Solver::Box,
            box_side: None,
            walk: None,
            eta: 0.5,
            lamps: LampSpec::Cyclic(2),
            generators: None,
            q: None,
            a: 0.5,
            alpha: 0.5,
            eps: 1.0,
            schedule: Schedule::TailBalanced,
            reference_trials: None,
            reference_steps: reference_steps(),
            budget: budget(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), msg: e.to_string() })
    }

    pub fn sizes(&self) -> &[u64] {
        self.sizes.as_deref().unwrap_or(&[])
    }
    pub fn trials(&self) -> usize {
        self.trials.unwrap_or(1)
    }
    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(0)
    }
    pub fn q(&self) -> u64 {
        self.q.unwrap_or(1)
    }
    pub fn walk(&self) -> WalkSpec {
        self.walk.clone().unwrap_or_default()
    }
    pub fn generators(&self) -> Generators {
        self.generators.clone().unwrap_or_default()
    }

    /// SHA-256 of the canonical JSON (keys sorted, shortest float form).
    pub fn hash(&self) -> String {
        let v = serde_json::to_value(self).expect("spec serialises");
        let text = serde_json::to_string(&v).expect("value serialises");
        let digest = Sha256::digest(text.as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// A normalised spec plus the warnings produced while filling defaults.
#[derive(Clone, Debug)]
pub struct Validated {
    pub spec: ExperimentSpec,
    pub warnings: Vec<String>,
}

/// Fill defaults and check every field; all problems are reported at once.
pub fn validate(spec: &ExperimentSpec) -> Result<Validated> {
    let mut s = spec.clone();
    let mut errors: Vec<String> = Vec::new();
    let mut warnings = Vec::new();
    let kind = s.kind;
    if s.seed.is_none() {
        warnings.push("seed not given; using 0".to_string());
        s.seed = Some(0);
    }
    let sizes = s.sizes.get_or_insert_with(|| kind.default_sizes()).clone();
    let trials = *s.trials.get_or_insert(kind.default_trials());
    if sizes.is_empty() {
        errors.push("size schedule is empty".into());
    }
    if sizes.windows(2).any(|w| w[0] >= w[1]) {
        errors.push(format!("sizes must be strictly increasing, got {sizes:?}"));
    }
    if trials == 0 {
        errors.push("trials must be at least 1".into());
    }
    if kind.needs_log() && sizes.iter().any(|&n| n < 3) {
        errors.push("step counts must be at least 3 (the statistics divide by log n)".into());
    }
    if sizes.iter().any(|&n| n > 1 << 26) {
        errors.push("sizes above 2^26 are not supported".into());
    }
    let default_walk = match kind {
        Kind::OnedDist | Kind::OnedConst => WalkSpec::srw(Base::Line),
        _ => WalkSpec::srw(Base::Plane),
    };
    let walk = s.walk.get_or_insert(default_walk).clone();
    let default_gens = match kind {
        Kind::OnedConst => Generators::Sws,
        _ => Generators::Standard,
    };
    let gens = s.generators.get_or_insert(default_gens).clone();
    if s.q.is_none() {
        s.q = Some(match kind {
            Kind::GoodUpdate => 10,
            Kind::Flatto => 2,
            _ => 1,
        });
    }
    if kind == Kind::Alpha && s.box_side.is_none() && s.solver == Solver::Box {
        s.box_side = Some(4);
    }
    if s.reference_trials.is_none() && kind == Kind::OnedDist {
        s.reference_trials = Some(trials);
    }

    match kind {
        Kind::Alpha | Kind::AlphaS => {
            if !(s.p > 0.0 && s.p <= 1.0) {
                errors.push(format!("dilution probability p = {} outside (0, 1]", s.p));
            }
            if sizes.first().is_some_and(|&n| n < 1) {
                errors.push("box sides must be positive".into());
            }
        }
        _ => {}
    }
    if let Some(c) = s.box_side {
        if c < 2 {
            errors.push(format!("box side {c} is below 2"));
        }
    }
    let base_law = walk.build();
    if let Err(e) = &base_law {
        errors.push(format!("walk: {}", plain(e)));
    }
    match kind {
        Kind::Range | Kind::Boundary | Kind::Flatto | Kind::LocalTime => {
            if !walk.centered {
                errors.push("the base walk must be centred".into());
            }
            if kind == Kind::Flatto && s.q() < 2 {
                errors.push("flatto needs q ≥ 2 (thin level q − 1)".into());
            }
            if kind == Kind::Boundary && walk.base != Base::Plane {
                errors.push("boundary statistics need the plane".into());
            }
            if kind == Kind::LocalTime && !(s.alpha > 0.0 && s.alpha <= 1.0) {
                errors.push(format!("local-time exponent {} outside (0, 1]", s.alpha));
            }
        }
        Kind::Drift | Kind::Zwrapz => {
            if !(s.eta > 0.0 && s.eta < 1.0) {
                errors.push(format!(
                    "degenerate step law: switch probability {} must lie in (0, 1) for the support to generate G as a semigroup",
                    s.eta
                ));
            }
            if walk.base != Base::Plane {
                errors.push("the drift experiment runs over the plane".into());
            }
            if kind == Kind::Drift && s.lamps != LampSpec::Cyclic(2) {
                errors.push("the drift experiment needs Z/2Z lamps".into());
            }
        }
        Kind::GoodUpdate => {
            if !(s.a > 0.0 && s.a <= 1.0) {
                errors.push(format!("uniform weight a = {} must lie in (0, 1]", s.a));
            }
            if s.eps <= 0.0 {
                errors.push("eps must be positive".into());
            }
            if sizes.first().is_some_and(|&n| n < 2) {
                errors.push("torus side must be at least 2".into());
            }
        }
        Kind::OnedDist | Kind::OnedConst => {
            if walk.base != Base::Line {
                errors.push("one-dimensional experiments need the line as base".into());
            }
            if kind == Kind::OnedDist && walk.tail.is_some() && walk.tail.is_some_and(|t| t.exponent <= 2.0) {
                errors.push("the base walk needs a finite second moment".into());
            }
        }
        Kind::Alpha | Kind::AlphaS => {}
    }
    if matches!(kind, Kind::AlphaS | Kind::OnedConst) {
        let base = if kind == Kind::AlphaS { Base::Plane } else { Base::Line };
        match s.lamps.build().and_then(|l| gens.build(base, l)) {
            Ok(set) => {
                if let Ok(false) = crate::wreath::generates_within(&set.symmetrized(), 8, 2_000_000) {
                    errors.push("generating set does not generate the group".into());
                }
            }
            Err(e) => errors.push(format!("generators: {}", plain(&e))),
        }
    } else if let Err(e) = s.lamps.build() {
        errors.push(format!("lamps: {}", plain(&e)));
    }
    if s.reference_steps < 16 {
        errors.push("reference walk needs at least 16 steps".into());
    }
    if errors.is_empty() {
        Ok(Validated { spec: s, warnings })
    } else {
        Err(Error::Config(errors.join("; ")))
    }
}

fn plain(e: &Error) -> String {
    match e {
        Error::Config(m) | Error::Domain(m) | Error::Resource(m) | Error::Unsupported(m) => m.clone(),
        other => other.to_string(),
    }
}
