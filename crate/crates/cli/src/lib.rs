//! Front end for the spin-surgery toolkit: word syntax, JSON forms, seeded
//! samplers and the verification suites.

pub mod dsl;
pub mod json;
pub mod random;
pub mod verify;
