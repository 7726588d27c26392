//! Independent oracles and cross-checks.

pub mod fox;
pub mod kauffman;
pub mod resum;

pub use fox::{fox_alexander, Wirtinger};
pub use kauffman::{calibrate, kauffman_jones};
pub use resum::{resummation_check, resummed, Report};
