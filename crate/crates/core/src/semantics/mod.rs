//! Finite neighbourhood models, satisfaction and frame conditions.

mod file;
mod frame;
mod model;

pub use file::{parse_frame, parse_subset, write_frame, FrameFile};
pub use frame::{frame_satisfies, FrameCheck, DEFAULT_FRAME_CAP};
pub use model::{extension, model_check, model_check_val, NeighbourhoodModel, Valuation};
