//! On-demand image-classification dataset formulation.
//!
//! The pipeline turns a list of class labels into a labelled image dataset:
//! prompts are produced for each label (template, LLM, caption rewriting, or
//! word-vector diversification), a text-to-image backend renders images for
//! each prompt, and an optional noise stage post-processes the results. Audit
//! metrics (pairwise SSIM and colorfulness) quantify how diverse the finished
//! dataset is.
//!
//! All randomness is counter-based and derived from explicit seeds, so every
//! stage is reproducible bit-for-bit regardless of thread count. The
//! `parallel` feature (on by default) runs the pixel and pair kernels on
//! rayon; disabling it falls back to identical sequential code.

pub mod config;
pub mod embeddings;
pub mod genclient;
pub mod hash;
pub mod imgproc;
pub mod manifest;
pub mod metrics;
pub mod pipeline;
pub mod prompt;
pub mod types;

pub use config::{validate_config, FormulationConfig};
pub use imgproc::{NoiseKind, NoiseSpec, RasterImage};
pub use manifest::DatasetManifest;
pub use metrics::DiversityReport;
pub use types::{Label, Prompt, PromptSet, PromptSource};
