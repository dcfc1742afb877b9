//! Inverse text normalization with hand-written WFST grammars, plus data
//! preparation and scoring for punctuation restoration.

pub mod fst;
pub mod grammar;
pub mod itn;
pub mod punct;
