//! Per-seed measurements of each experiment. Measurements that only need the
//! first pipeline stages replay them on the pipeline stream, which yields the
//! same degrees, sizes and assignment as a full build with that seed.

use abcd_core::assignment::assign;
use abcd_core::clustering::{ecg, lucky_repartition, tree_dissect_along, SimilarityScores};
use abcd_core::modularity::ground_truth_modularity;
use abcd_core::params::Variant;
use abcd_core::rng::{substream, ANALYSIS_STREAM, PIPELINE_STREAM};
use abcd_core::sequences::{community_sizes, degree_sequence};
use abcd_core::theory::{lucky_improvement, TheoryContext};
use abcd_core::{build_abcd, modularity, AbcdParams, Origin, TruncatedPowerLaw};

use super::{Experiment, ExperimentSpec};
use crate::error::Result;

/// One output row before the seed and parameter columns are attached.
#[derive(Debug, Clone, PartialEq)]
pub struct Record {
    pub keys: Vec<String>,
    pub values: Vec<Option<f64>>,
}

impl Record {
    fn plain(values: Vec<Option<f64>>) -> Self {
        Record { keys: Vec::new(), values }
    }
}

/// Key and value column names of an experiment.
pub fn columns(e: Experiment) -> (&'static [&'static str], &'static [&'static str]) {
    match e {
        Experiment::DegreeCcdf | Experiment::CommunityCcdf => {
            let key: &'static [&'static str] =
                if e == Experiment::DegreeCcdf { &["k"] } else { &["size"] };
            (key, &["empirical_ccdf", "theoretical_ccdf", "continuous_ccdf"])
        }
        Experiment::VolumeScaling => (&[], &["volume", "ratio_discrete", "ratio_continuous"]),
        Experiment::CommunityCount => {
            (&[], &["communities", "predicted", "ratio", "error", "error_sign"])
        }
        Experiment::CommunityVolumes => {
            (&["community"], &["size", "volume", "scaled_volume", "very_large"])
        }
        Experiment::GroundTruthQ | Experiment::NoiseSweep => {
            (&[], &["q", "edge_contribution", "degree_tax", "predicted", "deviation"])
        }
        Experiment::ClusteringTable => (&["algo"], &["q_ground_truth", "q_algo", "ami", "ari"]),
        Experiment::TreeBound => (
            &[],
            &["q_tree", "bound", "predicted", "background_connected", "giant_fraction", "q_ground_truth"],
        ),
        Experiment::LuckyDelta1 => {
            (&[], &["lucky_nodes", "q_ground_truth", "q_lucky", "improvement", "predicted"])
        }
    }
}

/// Empirical and theoretical tails over the support of `law`.
fn ccdf_records(draws: &[usize], law: &TruncatedPowerLaw, continuous: &TruncatedPowerLaw) -> Result<Vec<Record>> {
    let (lo, hi) = (law.lo(), law.hi());
    let mut counts = vec![0usize; hi - lo + 1];
    for &x in draws {
        counts[x - lo] += 1;
    }
    let total = draws.len() as f64;
    let mut above = draws.len();
    let mut out = Vec::with_capacity(counts.len());
    for (i, &c) in counts.iter().enumerate() {
        let k = lo + i;
        out.push(Record {
            keys: vec![k.to_string()],
            values: vec![
                Some(above as f64 / total),
                Some(law.ccdf(k)?),
                Some(continuous.ccdf(k)?),
            ],
        });
        above -= c;
    }
    Ok(out)
}

fn flag(b: bool) -> Option<f64> {
    Some(if b { 1.0 } else { 0.0 })
}

pub fn measure(e: Experiment, p: &AbcdParams, seed: u64, spec: &ExperimentSpec) -> Result<Vec<Record>> {
    let mut rng = substream(seed, PIPELINE_STREAM);
    let theory = TheoryContext::new(p)?;
    let degree_law = |v| TruncatedPowerLaw::new(p.gamma, p.delta, p.max_degree(), v);
    let size_law = |v| TruncatedPowerLaw::new(p.beta, p.s, p.max_community(), v);
    Ok(match e {
        Experiment::DegreeCcdf => {
            let degrees = degree_sequence(p, &mut rng)?;
            ccdf_records(degrees.as_slice(), &degree_law(p.variant)?, &degree_law(Variant::Continuous)?)?
        }
        Experiment::VolumeScaling => {
            let vol = degree_sequence(p, &mut rng)?.total() as f64;
            let n = p.n as f64;
            vec![Record::plain(vec![Some(vol), Some(vol / (theory.d_hat * n)), Some(vol / (theory.d * n))])]
        }
        Experiment::CommunityCcdf => {
            degree_sequence(p, &mut rng)?;
            let sizes = community_sizes(p, &mut rng)?;
            ccdf_records(sizes.as_slice(), &size_law(p.variant)?, &size_law(Variant::Continuous)?)?
        }
        Experiment::CommunityCount => {
            degree_sequence(p, &mut rng)?;
            let ell = community_sizes(p, &mut rng)?.ell() as f64;
            let err = ell - theory.ell_pred;
            vec![Record::plain(vec![
                Some(ell),
                Some(theory.ell_pred),
                Some(ell / theory.ell_pred),
                Some(err),
                Some(err.signum()),
            ])]
        }
        Experiment::CommunityVolumes => {
            let degrees = degree_sequence(p, &mut rng)?;
            let sizes = community_sizes(p, &mut rng)?;
            let a = assign(&degrees, &sizes, p.xi, &mut rng)?;
            let mut volume = vec![0usize; sizes.ell()];
            for (&w, &j) in degrees.as_slice().iter().zip(&a.community_of) {
                volume[j] += w;
            }
            let n = p.n as f64;
            let very_large = n.powf(p.zeta) * n.ln().powi(4);
            sizes
                .as_slice()
                .iter()
                .zip(&volume)
                .enumerate()
                .map(|(j, (&c, &v))| Record {
                    keys: vec![(j + 1).to_string()],
                    values: vec![
                        Some(c as f64),
                        Some(v as f64),
                        Some(v as f64 / (theory.d_hat * c as f64)),
                        flag(c as f64 >= very_large),
                    ],
                })
                .collect()
        }
        Experiment::GroundTruthQ | Experiment::NoiseSweep => {
            let a = build_abcd(p, seed)?;
            let r = ground_truth_modularity(&a.graph, &a.partition, p.xi)?;
            vec![Record::plain(vec![
                Some(r.report.q),
                Some(r.report.edge_contribution),
                Some(r.report.degree_tax),
                Some(r.predicted),
                Some(r.deviation),
            ])]
        }
        Experiment::ClusteringTable => {
            let a = build_abcd(p, seed)?;
            let q_truth = modularity(&a.graph, &a.partition)?.q;
            let found = ecg(&a.graph, spec.ecg_k, &mut substream(seed, ANALYSIS_STREAM))?;
            let scores = SimilarityScores::between(&found, &a.partition)?;
            vec![Record {
                keys: vec!["ecg".to_string()],
                values: vec![
                    Some(q_truth),
                    Some(modularity(&a.graph, &found)?.q),
                    Some(scores.ami),
                    Some(scores.ari),
                ],
            }]
        }
        Experiment::TreeBound => {
            let a = build_abcd(p, seed)?;
            let background = a.graph.filter_edges(|o| o == Origin::Background);
            let giant = background.largest_component().len();
            let d = tree_dissect_along(&a.graph, &background, &mut substream(seed, ANALYSIS_STREAM))?;
            let predicted = (p.xi * p.delta as f64 >= 3.0).then(|| 2.0 / theory.d_hat);
            vec![Record::plain(vec![
                Some(d.report.q),
                Some(d.bound),
                predicted,
                flag(giant == p.n),
                Some(giant as f64 / p.n as f64),
                Some(modularity(&a.graph, &a.partition)?.q),
            ])]
        }
        Experiment::LuckyDelta1 => {
            let a = build_abcd(p, seed)?;
            let lucky = abcd_core::clustering::lucky_nodes(&a.graph, &a.split)?.len();
            let q_truth = modularity(&a.graph, &a.partition)?.q;
            let q_lucky = modularity(&a.graph, &lucky_repartition(&a.graph, &a.partition, &a.split)?)?.q;
            let predicted = if p.delta == 1 { Some(lucky_improvement(p)?) } else { None };
            vec![Record::plain(vec![
                Some(lucky as f64),
                Some(q_truth),
                Some(q_lucky),
                Some(q_lucky - q_truth),
                predicted,
            ])]
        }
    })
}
