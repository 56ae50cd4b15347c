//! Exact Z/2 model of the (1+1)-dimensional TQFT of dividing sets on marked
//! surfaces: surfaces and dividing sets, the presented modules `V(Σ, F)`,
//! gluing maps, and the integer lift search for the six-point disk.

pub mod bypass;
pub mod catalog;
pub mod dividing;
pub mod enumerate;
pub mod gf2;
pub mod glue;
pub mod lift;
pub mod module;
pub mod surface;
pub mod verify;

pub use bypass::{bypass_arcs, bypass_triple, BypassArc, BypassError};
pub use dividing::{euler_grading, is_isolating, label_regions, DividingError, DividingFile, DividingSet, Region};
pub use enumerate::{catalan, enumerate_dividing_sets, enumerate_matchings};
pub use gf2::{BitVec, Echelon};
pub use glue::{arc_attachment, cut_along, cut_check, glue, glue_map, BoundaryArc, CutReport, GlueError, GlueMap, GluingDatum};
pub use module::{build_module, ClassVector, ModuleError, ModuleOptions, TqftModule};
pub use surface::{validate_surface, MarkedSurface, Side, Sign, SurfaceError, SurfaceFile, SurfaceSummary, Token};
pub use lift::{mod2_consistency, mod2_shadow, replay, search_lift, Assignment, LiftOutcome, LiftProblem, LiftResult, Mod2Report, SignMode};
pub use verify::{run_suite, Check, Suite};
