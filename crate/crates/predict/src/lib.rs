//! Affinity regression stack: labeled dataset ingestion, label-to-energy
//! conversion, two regressor families (boosted trees and a feed-forward
//! network), consensus averaging, metrics, and seeded cross-validation.
//!
//! Labels arrive as Ki or IC50 concentrations in nM and are converted to
//! binding energies in kcal/mol on ingestion; IC50 values are halved to a
//! Ki-equivalent first. Fitted models persist as JSON carrying the
//! descriptor-layout tag and a hash of their training rows, and refuse
//! feature matrices produced by a different layout.

pub mod cv;
pub mod dataset;
pub mod error;
pub mod labels;
pub mod metrics;
pub mod mlp;
pub mod regressor;
pub mod tree;

pub use cv::{kfold_cv, kfold_indices, CvReport, FoldScore};
pub use dataset::{
    load_csv, load_csv_lenient, parse_csv, parse_csv_lenient, save_csv, DatasetRow,
    LabeledDataset, SkippedRow, DATASET_HEADER, INGESTED_HEADER,
};
pub use error::{Error, Result};
pub use labels::{label_to_ba, LabelType, Target, BA_LOG10_SLOPE, IC50_TO_KI};
pub use metrics::{pearson_r, rmse};
pub use mlp::{fit_mlp, MlpModel, MlpParams};
pub use regressor::{
    consensus_predict, load_model, save_model, FeatureMatrix, ModelFile, RegressorModel,
};
pub use tree::{fit_gbdt, GbdtModel, GbdtParams};
