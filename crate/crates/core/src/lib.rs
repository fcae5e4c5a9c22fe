//! Exact computations on surgery presentations of mapping tori.
//!
//! Mapping classes of a genus-`g` surface are given as words in Dehn twists.
//! Level-2 words compile to framed links (a linking matrix plus component
//! metadata); spin structures on the fiber select characteristic sublinks,
//! from which the combinatorial Rochlin invariant and the Sato maps
//! `β_{σ,x}` are read off. Closed formulas provide an independent route to
//! every value, and [`algebra`] models the abelianization of the level-2
//! subgroup as a squarefree `Z/8` algebra.
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod algebra;
pub mod conventions;
pub mod error;
pub mod gf2;
pub mod homology;
pub mod homomorphisms;
pub mod invariants;
pub mod mapping;
pub mod matrix;
pub mod ring;
pub mod surgery;

pub use conventions::Conventions;
pub use error::{Error, Result};
pub use homology::{CohomologyF2, HomologyF2, HomologyZ, SpinStructure, SurfaceModel};
pub use mapping::{Chain, Curve, Letter, TwistWord};
pub use ring::{Z16, Z8};
pub use surgery::{CharacteristicSublink, Component, ComponentKind, FramedLink};
