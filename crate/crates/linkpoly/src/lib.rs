//! Exact symbolic computation of the Homflypt (`R`) and Dubrovnik (`D`)
//! polynomials of link diagrams through five routes, plus a machine check
//! of the term-by-term correspondence between the two 4-valent graphical
//! state models of the Dubrovnik polynomial.
//!
//! The routes:
//!
//! * direct skein-axiom recursion ([`skein`]),
//! * Kauffman-Vogel 4-valent state expansions and graphical-calculus
//!   bracket evaluation ([`kv`]),
//! * Jaeger's formula and Wu's formula over balanced orientations
//!   ([`orientations`]),
//! * the `HJ` and `WF` state models and their one-to-many term
//!   correspondence, the simplified ten-configuration model, and the
//!   trivalent n-specialization ([`correspondence`]).
//!
//! Diagrams are purely combinatorial planar maps ([`diagrams`]); no
//! coordinates appear anywhere. All arithmetic is exact ([`algebra`]).
//!
//! Start with the `examples/` directory: each runnable example exercises
//! one capability end to end. A thin `linkpoly` binary exposes the same
//! operations for batch verification.

pub mod algebra;
pub mod cli;
pub mod correspondence;
pub mod diagrams;
pub mod kv;
pub mod orientations;
pub mod skein;
