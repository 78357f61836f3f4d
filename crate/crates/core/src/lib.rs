//! Exact algebra of cohomological dimension types.
//!
//! A cd-type is stored as a triple `(S, D; d)` of a singular prime set, a
//! deficient prime set and a field dimension function, or dually as its
//! Bockstein function on `σ = {Q} ∪ {Z_p, Z_p∞, Z_(p)}`.

pub mod prime_base;
pub mod groups;
pub mod cdtype;
pub mod dimension;
pub mod oracle;
