//! Test-only oracles for the workspace.
//!
//! The centerpiece is [`dense`], a deliberately naive circuit simulator
//! that materializes every gate as a full `2^n × 2^n` matrix straight from
//! its textbook definition and multiplies matrices in sequence. It shares
//! only the *descriptions* (gate kinds, targets, angles) with the
//! production simulator — none of its amplitude kernels — so agreement
//! between the two is meaningful evidence of correctness. Keep it that way:
//! fix oracle bugs from the math, never by copying production code.
//!
//! [`circuits`] adds seeded random-circuit generators used by several test
//! suites to drive the comparison, and [`oracles`] holds classical
//! numerical oracles (finite differences, logistic regression) of the
//! same independent-by-construction character.

pub mod circuits;
pub mod dense;
pub mod oracles;
