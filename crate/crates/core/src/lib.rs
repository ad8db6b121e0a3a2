pub mod classify;
pub mod harness;
pub mod rewrite;
pub mod syntax;
pub mod transform;
pub mod types;
