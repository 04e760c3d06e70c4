pub mod bijections;
pub mod cli;
pub mod error;
pub mod identities;
pub mod paths;
pub mod qpoly;
pub mod render;
