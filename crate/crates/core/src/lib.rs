//! Chaotic-neuron classification.
//!
//! Each input feature drives one GLS neuron (a skew-tent or skew-binary map).
//! Starting from a shared initial activity the neuron iterates until its
//! activity comes within `epsilon` of the stimulus; the fraction of that
//! firing time spent above the threshold `b` is the extracted feature. A
//! class is represented by the mean of its training features and new rows
//! are labelled by the most cosine-similar class mean.
//!
//! ```
//! use chaosnet::{data::generate_synthetic, ttss, ClassModel, TtssParams};
//!
//! let data = generate_synthetic(10, 4, 0.4, 1).unwrap().normalized();
//! let params = TtssParams::default();
//! let features = ttss::extract_features(data.features(), &params).unwrap();
//! let model = ClassModel::fit(&features, data.labels(), params).unwrap();
//! let predictions = model.predict(&features).unwrap();
//! assert_eq!(predictions.len(), 20);
//! ```

pub mod classifier;
pub mod data;
pub mod error;
pub mod eval;
pub mod gls;
pub mod matrix;
pub mod rng;
pub mod ttss;

pub use classifier::{cosine_similarity, ClassModel, Prediction};
pub use data::Dataset;
pub use error::{Error, Result};
pub use gls::{GlsNeuron, MapKind, Trajectory};
pub use matrix::Matrix;
pub use ttss::{FeatureMatrix, FiringResult, TtssParams};
