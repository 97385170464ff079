//! Static ranking for citation graphs.
//!
//! The pipeline is: load a citation graph ([`corpus`]), score papers with
//! the teleport-to-link walk ([`alef`]), derive author scores from those
//! paper scores ([`authors`]), blend both into a final ranking ([`blend`])
//! and judge rankings against preference pairs ([`evaluate`]). [`synth`]
//! generates corpora and judgments for testing; [`baselines`] holds the
//! citation-count ranking.

pub mod alef;
pub mod authors;
pub mod baselines;
pub mod blend;
pub mod corpus;
pub mod error;
pub mod evaluate;
mod par;
pub mod scores;
pub mod synth;

pub use alef::{alef_closed_form, alef_monte_carlo, alef_rank, DanglingPolicy, WalkConfig};
pub use authors::{author_scores, AuthorScoreTable};
pub use baselines::in_degree_rank;
pub use blend::{blend_scores, randomize_unranked, weight_sweep, BlendConfig};
pub use corpus::{AuthorId, AuthorshipMap, CitationGraph, NodeId, Strictness};
pub use error::{Error, Result};
pub use evaluate::{pairwise_performance, spearman_correlation, EvalReport, JudgmentSet};
pub use scores::ScoreVector;
pub use synth::{generate_corpus, generate_judgments, SynthConfig};
