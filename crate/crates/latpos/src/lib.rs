//! Exact computation with weighted lattice-path matrices.

pub mod catalog;
pub mod lgvnet;
pub mod matcore;
pub mod pathmodel;
pub mod polyalg;
pub mod riordan;
pub mod seqprops;
pub mod verify;
