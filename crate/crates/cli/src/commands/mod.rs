pub mod bench;
pub mod cluster;
pub mod eval;
pub mod gen;
pub mod verify;
