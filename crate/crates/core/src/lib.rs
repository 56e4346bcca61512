pub mod config;
pub mod driver;
pub mod full_eval;
pub mod history;
pub mod low_eval;
pub mod oracle;
pub mod point;
pub mod problems;
pub mod profiles;
pub mod rng;
