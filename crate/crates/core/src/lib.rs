//! Exact arithmetic in Hall and tensor completions of torsion-free
//! 2-nilpotent groups over Z, Q, Q[t] and Q(t), with normal forms for the
//! kernel D of the retraction onto the Hall completion.

pub mod ccalc;
pub mod checks;
pub mod dmodule;
pub mod error;
pub mod gen;
pub mod hall;
pub mod oracle;
pub mod rword;
pub mod scalars;
pub mod tensor;

pub use error::{Error, Result};
