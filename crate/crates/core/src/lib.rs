//! Long virtual biquandle colorings over an order-64 torus group.
//!
//! The group is the right-regular action of two grid steps on an 8x8 torus.
//! Words in `a` and `b` evaluate to group elements, the elements carry a
//! biquandle structure by conjugation, and long virtual knot diagrams are
//! colored by solving the crossing relations.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod audit;
pub mod biquandle;
pub mod calibrate;
pub mod coloring;
pub mod diagram;
pub mod fmap;
pub mod group;
pub mod instance;
pub mod words;

pub use audit::{audit, AxiomEntry, AxiomId, AxiomReport, Counterexample, Outcome};
pub use biquandle::{Biquandle, BiquandleError, Op};
pub use calibrate::{calibrate_convention, calibrated_group, Calibration, CalibrationError};
pub use fmap::{FCandidate, FDirection, FKind, Seed};
pub use group::{build_group, Convention, GroupElement, GroupError, TorusGroup};
pub use words::{eval_str, eval_word, format_normal, format_word, parse_normal, parse_word, Letter, WordExpr};
pub use coloring::{
    build_constraints, classical_color_count, color, distinguish, solve, Coloring, ColoringError, ConstraintSet,
    Distinction, Engine, InvariantResult, Relation, Verdict,
};
pub use diagram::{builtin, builtin_trefoil, parse_diagram, DiagramError, Hand, LongDiagram, Pass};
pub use instance::StandardInstance;
