//! Symbol algebras, Tanaka and Levi-Tanaka prolongations, and infinitesimal
//! CR automorphism algebras of totally nondegenerate CR models of CR
//! dimension one, all over exact arithmetic.

pub mod exact;
pub mod freelie;
pub mod liealg;
pub mod crmodels;
pub mod frames;
pub mod prolong;
