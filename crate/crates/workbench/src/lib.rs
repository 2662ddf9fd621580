pub mod gallery;
pub mod pipeline;
pub mod schema;
