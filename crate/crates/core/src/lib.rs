pub mod builder;
pub mod engine;
pub mod export;
pub mod library;
pub mod problem;
pub mod script;
pub mod term;
