pub mod bench;
pub mod bundled;
pub mod config;
pub mod cta;
pub mod dsl;
pub mod expr;
pub mod extract;
pub mod search;
pub mod space;
