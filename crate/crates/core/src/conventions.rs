//! Sign and orientation choices that the surgery construction depends on.
//!
//! Each is a binary choice; [`crate::homomorphisms::calibrate_conventions`]
//! sweeps all sixteen and confirms that only [`Conventions::FROZEN`] makes
//! the link route agree with the closed formulas.

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Conventions {
    /// Use the transposed per-handle Seifert block `[[0,0],[1,0]]`.
    pub seifert_transposed: bool,
    /// Link twist curves with basis components by intersection pairing
    /// instead of by coefficient.
    pub dual_linking: bool,
    /// `svals = qvals + 1` on every basis class instead of `svals = qvals`.
    pub sval_offset: bool,
    /// Framing shift of a positive twist: `λ(c,c) + twist_sign`.
    pub twist_sign: i8,
}

impl Conventions {
    pub const FROZEN: Conventions = Conventions {
        seifert_transposed: false,
        dual_linking: false,
        sval_offset: false,
        twist_sign: -1,
    };

    /// All sixteen assignments, in a fixed order.
    pub fn all() -> impl Iterator<Item = Conventions> {
        (0u8..16).map(|bits| Conventions {
            seifert_transposed: bits & 1 != 0,
            dual_linking: bits & 2 != 0,
            sval_offset: bits & 4 != 0,
            twist_sign: if bits & 8 != 0 { 1 } else { -1 },
        })
    }
}

impl Default for Conventions {
    fn default() -> Self {
        Self::FROZEN
    }
}
