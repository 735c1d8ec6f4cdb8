//! Partition-producing algorithms and partition similarity.

mod dissect;
mod ecg;
mod louvain;
mod lucky;
mod similarity;

pub use dissect::{lemma_bound, tree_dissect, tree_dissect_along, TreeDissection};
pub use ecg::{ecg, ecg_with, EcgConfig};
pub use louvain::{louvain, louvain_level_one, louvain_weighted, LouvainOutcome};
pub use lucky::{lucky_nodes, lucky_repartition};
pub use similarity::{ami, ari, SimilarityScores};
