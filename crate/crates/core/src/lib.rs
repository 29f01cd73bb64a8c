pub mod scalars;
pub mod linalg;
pub mod lie_algebra;
pub mod exterior;
pub mod catalog;
pub mod stable_forms;
pub mod curvature;
pub mod pipeline;
