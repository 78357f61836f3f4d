//! Front end for the cd-type algebra: expression parsing and evaluation,
//! table emitters and homology verification drivers.

pub mod eval;
pub mod parse;
pub mod table;
pub mod verify;
