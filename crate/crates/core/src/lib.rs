pub mod arith;
pub mod chow;
pub mod graph;
pub mod lg;
pub mod sectors;
pub mod verify;
