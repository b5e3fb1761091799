//! Deterministic basketball replay engine.
//!
//! Tracking and play-by-play data are replayed frame by frame. Each frame is
//! annotated with up to five visualization layers (shot labels, offense
//! trails, defense form, shot chart, team panel) and can be streamed to
//! court-view clients that toggle layers live.

pub mod model;
pub mod analytics;
pub mod ingest;
pub mod fixture;
pub mod canonical;
pub mod session;
pub mod stream;
pub mod export;
pub mod render;
