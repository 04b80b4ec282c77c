//! Configuration, dispatch and JSON reports for the command-line pipeline.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::covers::{verify_cover, CoverReport};
use crate::error::{Error, Result};
use crate::hj::{hj_expand, Expansion, LineBundleRecipe};
use crate::lift::{random_datum, verify_lift, LiftReport, TranslationDatum};
use crate::parallel::sample_rng;
use crate::sigma::{OrbitData, SigmaSubgroup};
use crate::structure::{describe, QuotientDescriptor};
use crate::torus::parse_point_list;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Decompose,
    Structure,
    VerifyCover,
    VerifyLift,
    Report,
}

/// Where Σ comes from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SigmaSource {
    Pair { n: i64, k: i64 },
    Explicit(SigmaSubgroup),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub mode: Mode,
    pub source: SigmaSource,
    pub torsion_level: i64,
    pub samples: usize,
    pub seed: u64,
    /// `"random"` or a `;`-separated list of `g+1` points.
    pub translation: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output_path: Option<String>,
    #[serde(skip)]
    pub timing: bool,
}

impl RunConfig {
    pub fn new(mode: Mode, source: SigmaSource) -> RunConfig {
        RunConfig {
            mode,
            source,
            torsion_level: 2,
            samples: 20,
            seed: 0,
            translation: "random".into(),
            output_path: None,
            timing: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.samples < 1 {
            return Err(Error::InvalidArgument("samples must be >= 1".into()));
        }
        if self.torsion_level < 1 {
            return Err(Error::InvalidArgument("torsion level must be >= 1".into()));
        }
        if self.mode == Mode::Decompose && matches!(self.source, SigmaSource::Explicit(_)) {
            return Err(Error::InvalidArgument("decompose needs a pair (n, k)".into()));
        }
        Ok(())
    }
}

/// Output of `decompose`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub n: i64,
    pub k: i64,
    pub g: usize,
    pub entries: Vec<i64>,
    pub sigma_generators: Vec<usize>,
    pub line_bundle: LineBundleRecipe,
}

impl From<&Expansion> for Decomposition {
    fn from(e: &Expansion) -> Self {
        Decomposition {
            n: e.n,
            k: e.k,
            g: e.g,
            entries: e.entries.clone(),
            sigma_generators: e.sigma().generators.into_iter().collect(),
            line_bundle: e.line_bundle_recipe(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub config: RunConfig,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<Decomposition>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub descriptor: Option<QuotientDescriptor>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cover: Option<CoverReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lift: Option<LiftReport>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

impl Report {
    /// The JSON document for this report's mode: the bare payload for
    /// single-purpose modes, the whole report for `report`.
    pub fn to_json(&self) -> serde_json::Value {
        let payload = match self.config.mode {
            Mode::Decompose => serde_json::to_value(&self.decomposition),
            Mode::Structure => serde_json::to_value(&self.descriptor),
            Mode::VerifyCover => serde_json::to_value(&self.cover),
            Mode::VerifyLift => serde_json::to_value(&self.lift),
            Mode::Report => serde_json::to_value(self),
        };
        let mut v = payload.expect("report types serialize");
        if self.config.mode != Mode::Report {
            if let (Some(obj), Some(ms)) = (v.as_object_mut(), self.wall_time_ms) {
                obj.insert("wall_time_ms".into(), ms.into());
            }
        }
        v
    }

    pub fn exit_code(&self) -> i32 {
        if self.pass {
            0
        } else {
            1
        }
    }
}

fn resolve(source: &SigmaSource) -> Result<(Option<Expansion>, SigmaSubgroup)> {
    match source {
        SigmaSource::Pair { n, k } => {
            let e = hj_expand(*n, *k)?;
            let sigma = e.sigma();
            Ok((Some(e), sigma))
        }
        SigmaSource::Explicit(s) => Ok((None, SigmaSubgroup::new(s.g_plus_1, s.generators.iter().copied())?)),
    }
}

fn translation_datum(config: &RunConfig, od: &OrbitData) -> Result<TranslationDatum> {
    if config.translation.trim() == "random" {
        // stream index past any sample index keeps the datum independent of the samples
        let mut rng = sample_rng(config.seed, usize::MAX);
        Ok(random_datum(od, config.torsion_level, &mut rng))
    } else {
        TranslationDatum::from_full(&parse_point_list(&config.translation)?, od)
    }
}

/// Runs one configuration. Invalid input is an `Err`; failed checks give `pass = false`.
pub fn run(config: &RunConfig) -> Result<Report> {
    config.validate()?;
    let start = Instant::now();
    let (expansion, sigma) = resolve(&config.source)?;
    let od = sigma.orbit_decomposition();
    let mut report = Report {
        config: config.clone(),
        decomposition: expansion.as_ref().map(Decomposition::from),
        descriptor: None,
        cover: None,
        lift: None,
        pass: true,
        wall_time_ms: None,
    };
    if config.mode != Mode::Decompose {
        report.descriptor = Some(describe(&od)?);
    }
    if matches!(config.mode, Mode::VerifyCover | Mode::Report) {
        let cover = verify_cover(&od, config.torsion_level, config.samples, config.seed)?;
        report.pass &= cover.pass;
        report.cover = Some(cover);
    }
    if matches!(config.mode, Mode::VerifyLift | Mode::Report) {
        let t = translation_datum(config, &od)?;
        let lift = verify_lift(&od, &t, config.torsion_level, config.samples, config.seed)?;
        report.pass &= lift.pass;
        report.lift = Some(lift);
    }
    if config.timing {
        report.wall_time_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub n: i64,
    pub k: i64,
    pub g: usize,
    pub entries: Vec<i64>,
    pub sigma_generators: Vec<usize>,
    pub descriptor: QuotientDescriptor,
}

/// Structure descriptors for every coprime `1 <= k < n <= n_max`.
pub fn batch_sweep(n_max: i64) -> Result<Vec<SweepRow>> {
    if n_max < 2 {
        return Err(Error::InvalidArgument(format!("n_max = {n_max}, need >= 2")));
    }
    let mut rows = Vec::new();
    for n in 2..=n_max {
        for k in 1..n {
            let Ok(e) = hj_expand(n, k) else { continue };
            let sigma = e.sigma();
            rows.push(SweepRow {
                n,
                k,
                g: e.g,
                entries: e.entries.clone(),
                sigma_generators: sigma.generators.iter().copied().collect(),
                descriptor: describe(&sigma.orbit_decomposition())?,
            });
        }
    }
    Ok(rows)
}
