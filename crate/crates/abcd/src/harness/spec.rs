use std::path::{Path, PathBuf};

use abcd_core::AbcdParams;

use crate::config::{entries, parse_value, set_param, Entry, KEYS};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Experiment {
    DegreeCcdf,
    VolumeScaling,
    CommunityCcdf,
    CommunityCount,
    CommunityVolumes,
    GroundTruthQ,
    NoiseSweep,
    ClusteringTable,
    TreeBound,
    LuckyDelta1,
}

impl Experiment {
    pub const ALL: [Experiment; 10] = [
        Experiment::DegreeCcdf,
        Experiment::VolumeScaling,
        Experiment::CommunityCcdf,
        Experiment::CommunityCount,
        Experiment::CommunityVolumes,
        Experiment::GroundTruthQ,
        Experiment::NoiseSweep,
        Experiment::ClusteringTable,
        Experiment::TreeBound,
        Experiment::LuckyDelta1,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Experiment::DegreeCcdf => "degree-ccdf",
            Experiment::VolumeScaling => "volume-scaling",
            Experiment::CommunityCcdf => "community-ccdf",
            Experiment::CommunityCount => "community-count",
            Experiment::CommunityVolumes => "community-volumes",
            Experiment::GroundTruthQ => "ground-truth-q",
            Experiment::NoiseSweep => "noise-sweep",
            Experiment::ClusteringTable => "clustering-table",
            Experiment::TreeBound => "tree-bound",
            Experiment::LuckyDelta1 => "lucky-delta1",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|e| e.name() == s)
    }
}

/// One parameter taking each listed value in turn.
#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    pub param: String,
    pub values: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec {
    pub experiment: Experiment,
    /// Base parameters; unspecified keys take the reference values
    /// (n=1000, gamma=2.5, delta=5, zeta=0.5, beta=1.5, s=50, tau=0.75, xi=0.2).
    pub params: AbcdParams,
    pub seeds: Vec<u64>,
    pub sweep: Option<Sweep>,
    pub output: Option<PathBuf>,
    /// Ensemble size for ECG.
    pub ecg_k: usize,
}

impl ExperimentSpec {
    /// Validated parameter sets, one per sweep value.
    pub fn points(&self) -> Result<Vec<AbcdParams>> {
        let Some(sweep) = &self.sweep else {
            return Ok(vec![self.params.validate()?]);
        };
        sweep
            .values
            .iter()
            .map(|v| {
                let mut p = self.params;
                let e = Entry { line: 0, key: &sweep.param, value: v };
                set_param(&mut p, "sweep", &e)?;
                Ok(p.validate()?)
            })
            .collect()
    }
}

fn parse_seeds(origin: &str, e: &Entry) -> Result<Vec<u64>> {
    let bad = || Error::parse(origin, e.line, format!("invalid seeds {:?}", e.value));
    let seeds: Vec<u64> = if let Some((lo, hi)) = e.value.split_once("..") {
        let lo: u64 = lo.trim().parse().map_err(|_| bad())?;
        let hi: u64 = hi.trim().parse().map_err(|_| bad())?;
        (lo..hi).collect()
    } else {
        e.value.split(',').map(|s| s.trim().parse().map_err(|_| bad())).collect::<Result<_>>()?
    };
    if seeds.is_empty() {
        return Err(Error::parse(origin, e.line, "seed list is empty"));
    }
    Ok(seeds)
}

/// Parses a spec. Keys: `experiment`, `seeds` (`a..b` or a comma list),
/// optional `sweep=<param>:<comma list>`, `output`, `ecg_k` and any
/// parameter key. A relative `output` is resolved against `base`.
pub fn parse_spec(text: &str, origin: &str, base: Option<&Path>) -> Result<ExperimentSpec> {
    let mut experiment = None;
    let mut params = AbcdParams::reference(1000, 0.2);
    let mut seeds = None;
    let mut sweep = None;
    let mut output = None;
    let mut ecg_k = 16;
    let mut seen: Vec<&str> = Vec::new();
    let mut last_line = 0;
    for e in entries(text, origin)? {
        last_line = e.line;
        if seen.contains(&e.key) {
            return Err(Error::parse(origin, e.line, format!("repeated key {:?}", e.key)));
        }
        seen.push(e.key);
        match e.key {
            "experiment" => {
                experiment = Some(Experiment::parse(e.value).ok_or_else(|| {
                    Error::parse(origin, e.line, format!("unknown experiment {:?}", e.value))
                })?)
            }
            "seeds" => seeds = Some(parse_seeds(origin, &e)?),
            "output" => {
                let p = PathBuf::from(e.value);
                output = Some(match base {
                    Some(b) if p.is_relative() => b.join(p),
                    _ => p,
                });
            }
            "ecg_k" => ecg_k = parse_value(origin, &e)?,
            "sweep" => {
                let (param, list) = e
                    .value
                    .split_once(':')
                    .ok_or_else(|| Error::parse(origin, e.line, "expected sweep=<param>:<values>"))?;
                let param = param.trim();
                if !KEYS[..8].contains(&param) {
                    return Err(Error::parse(origin, e.line, format!("cannot sweep {param:?}")));
                }
                sweep = Some(Sweep {
                    param: param.to_string(),
                    values: list.split(',').map(|v| v.trim().to_string()).collect(),
                });
            }
            _ => {
                if !set_param(&mut params, origin, &e)? {
                    return Err(Error::parse(origin, e.line, format!("unknown key {:?}", e.key)));
                }
            }
        }
    }
    let experiment =
        experiment.ok_or_else(|| Error::parse(origin, last_line, "missing key \"experiment\""))?;
    let seeds = seeds.ok_or_else(|| Error::parse(origin, last_line, "missing key \"seeds\""))?;
    if ecg_k == 0 {
        return Err(Error::parse(origin, last_line, "ecg_k must be positive"));
    }
    if experiment == Experiment::NoiseSweep && sweep.is_none() {
        sweep = Some(Sweep {
            param: "xi".to_string(),
            values: (1..=9).map(|i| format!("0.{i}")).collect(),
        });
    }
    let spec = ExperimentSpec { experiment, params, seeds, sweep, output, ecg_k };
    spec.points()?;
    Ok(spec)
}

pub fn load_spec(path: &Path) -> Result<ExperimentSpec> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_spec(&text, &path.display().to_string(), path.parent())
}
