//! Lethe: a desk-scale workbench for risk-weighted machine unlearning.
//!
//! The crate quantifies the exposure risk of personally identifiable
//! information (PII) through a bounded composite risk index and uses that
//! index to scale per-sample unlearning gradients. Everything runs against a
//! fully synthetic PII question-answering corpus and a tiny character-level
//! language model with exact hand-derived gradients, so every number in the
//! pipeline is reproducible from a single seed.
//!
//! Module map:
//!
//! - [`risk`] — the seven-factor risk model, the bounded risk index, and the
//!   Monte-Carlo distribution study over combined exposures.
//! - [`detect`] — two-step leakage detection: regex patterns for structured
//!   identifiers, normalized semantic matching for everything else, plus an
//!   optional external LLM judge.
//! - [`datagen`] — deterministic synthetic PII QA corpus, utility pool,
//!   paraphrase probes, and forget/remainder splits.
//! - [`model`] — fixed-window feed-forward character LM: tokenizer, exact
//!   gradients, AdamW, training loop, greedy decoding, checkpoints.
//! - [`unlearn`] — gradient-ascent, NPO, and DPO unlearning losses plus the
//!   per-sample `(1 + R_p)` gradient-scaling wrapper and run loop.
//! - [`eval`] — accuracy / utility / generalizability metrics, their harmonic
//!   mean, and the multi-run comparative experiment driver.

pub mod datagen;
pub mod detect;
pub mod eval;
pub mod model;
pub mod risk;
pub mod seed;
pub mod unlearn;
