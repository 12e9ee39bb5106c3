//! Multiclass learnability toolkit: dimensions of finite concept classes,
//! one-inclusion graphs and their orientations, down-shifting, one-inclusion
//! and list learners, sample compression, and simplicial-complex views of
//! pseudo-cubes.

pub mod budget;
pub mod catalog;
pub mod class;
pub mod cli;
pub mod complex;
pub mod compress;
pub mod dims;
pub mod error;
mod flow;
pub mod game;
pub mod gen;
pub mod group;
pub mod io;
pub mod learn;
pub mod oig;
pub mod selftest;
pub mod shift;

pub use budget::Budget;
pub use class::{ConceptClass, FiniteDistribution, Label, LabeledExample, Menu, Sample, Word};
pub use error::{Error, Result};
