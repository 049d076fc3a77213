pub mod arith;
pub mod ascending;
pub mod decision;
pub mod error;
pub mod graph;
pub mod iso;
pub mod mobility;
pub mod moves;
pub mod oracle;
pub mod sample;
pub mod slide_algebra;
pub mod slide_space;
pub mod smc;

pub use decision::{Decision, Outcome, SearchBudget};
pub use error::{GbsError, Result};
pub use graph::{parse_graph, serialize_graph, GraphMatch, HalfEdge, LabeledGraph};
pub use moves::{EdgePath, Move, MoveSequence};
