pub mod asymptotics;
pub mod exact;
pub mod sampler;
pub mod trees;
