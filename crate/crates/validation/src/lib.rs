//! Acceptance checks for ribbonforge; see `tests/acceptance.rs`.
