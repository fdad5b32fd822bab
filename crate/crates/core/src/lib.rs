//! Laboratory for deterministic pushdown automata, their stack histories and
//! pumping arguments about finite intersections and unions of DCFLs.

pub mod automaton;
pub mod dfa;
pub mod language;
pub mod strings;
pub mod normal_forms;
pub mod history;
pub mod pairs;
pub mod pumping;
pub mod zoo;
pub mod lda;
pub mod bounded;
