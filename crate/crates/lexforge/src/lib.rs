//! Corpus preparation and model-calibration toolkit for adapting a
//! pretrained language model to a new target language.
//!
//! The pipeline stages, in dependency order:
//!
//! - [`corpus`]: canonical document record plus streaming JSONL I/O.
//! - [`clean`]: text normalization (markup stripping, foreign-run
//!   replacement, PII masking, duplicate-paragraph collapsing).
//! - [`filter`]: script-ratio and gold-lexicon document gates.
//! - [`dedup`]: MinHash/LSH near-duplicate removal.
//! - [`tokenize`]: byte-level BPE learning, vocabulary extension, and
//!   the tokens-per-word compression metric.
//! - [`pack`]: fixed-length sequence packing with per-document
//!   attention masks and binary shard output.
//! - [`templates`]: translation-pair templating for pretraining text,
//!   dialogues, and language-consistency preference pairs.
//! - [`calibrate`]: a small decoder-only transformer with exact
//!   reverse-mode gradients, realizing the two-stage embedding
//!   distillation / LM-head calibration procedure.
//! - [`evalkit`]: few-shot prompt builders and automatic scoring
//!   (accuracy, BLEU).
//! - [`cli`]: stage orchestration, config, and manifests backing the
//!   `lexforge` binary.

pub mod calibrate;
pub mod clean;
pub mod cli;
pub mod corpus;
pub mod dedup;
pub mod evalkit;
pub mod filter;
pub mod pack;
pub mod script;
pub mod templates;
pub mod tokenize;
