//! Dehn-twist words and their action on integral homology.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::homology::{intersect, HomologyZ};
use crate::matrix::IntMatrix;

/// A chain `c_1, c_2, c_3` with `c_1·c_2 = ±1`, `c_2·c_3 = ±1`, `c_1·c_3 = 0`.
///
/// The chain relation `(t_{c_1}² t_{c_2} t_{c_3})³ = t_{d_1} t_{d_2}` gives a
/// bounding pair `d_1, d_2` whose common class is `c_1 ± c_3`; the sign is
/// whichever makes the squared-twist factorization act trivially on `H_1(Σ; Z)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Chain {
    curves: [HomologyZ; 3],
    boundary: HomologyZ,
}

impl Chain {
    pub fn new(c1: HomologyZ, c2: HomologyZ, c3: HomologyZ) -> Result<Self> {
        let g = c1.genus();
        for c in [&c2, &c3] {
            if c.genus() != g {
                return Err(Error::LengthMismatch {
                    expected: c1.coeffs().len(),
                    found: c.coeffs().len(),
                });
            }
        }
        for c in [&c1, &c2, &c3] {
            if c.is_zero() || !c.is_primitive() {
                return Err(Error::NonPrimitive(c.coeffs().to_vec()));
            }
        }
        let (p12, p23, p13) = (
            intersect(&c1, &c2)?,
            intersect(&c2, &c3)?,
            intersect(&c1, &c3)?,
        );
        if p12.abs() != 1 || p23.abs() != 1 || p13 != 0 {
            return Err(Error::DegenerateChain(format!(
                "intersection pattern ({p12}, {p23}, {p13}) is not (±1, ±1, 0)"
            )));
        }
        for sign in [-1, 1] {
            let d = c1.add(&c3.scale(sign)?)?;
            if d.is_zero() || !d.is_primitive() {
                continue;
            }
            let candidate = Chain {
                curves: [c1.clone(), c2.clone(), c3.clone()],
                boundary: d,
            };
            if word_action(&candidate.factorization())?.is_identity() {
                return Ok(candidate);
            }
        }
        Err(Error::DegenerateChain(
            "no primitive boundary class closes the chain relation".to_string(),
        ))
    }

    pub fn curves(&self) -> &[HomologyZ; 3] {
        &self.curves
    }

    /// Class of the bounding pair curves `d_1`, `d_2`.
    pub fn boundary(&self) -> &HomologyZ {
        &self.boundary
    }

    pub fn genus(&self) -> usize {
        self.boundary.genus()
    }

    /// Image under a homology automorphism, with the boundary sign re-chosen.
    pub fn transport(&self, f: &IntMatrix) -> Result<Self> {
        let [c1, c2, c3] = &self.curves;
        Chain::new(
            HomologyZ::apply(f, c1)?,
            HomologyZ::apply(f, c2)?,
            HomologyZ::apply(f, c3)?,
        )
    }

    fn factorization(&self) -> TwistWord {
        let [c1, c2, c3] = &self.curves;
        let tw =
            |c: &HomologyZ, x: &HomologyZ| transvect(c, x, 1).expect("chain classes share a genus");
        let x1 = tw(c2, &tw(c3, c1));
        let x2 = tw(c2, &tw(c3, &x1));
        let x4 = tw(c3, &tw(c2, c3));
        let x5 = tw(c3, c2);
        let sq = |c: HomologyZ, e: i64| Letter {
            curve: Curve::Nonseparating(c),
            exponent: e,
        };
        TwistWord {
            genus: self.genus(),
            letters: vec![
                sq(c1.clone(), 2),
                sq(x1, 2),
                sq(x2, 2),
                sq(x4, 2),
                sq(x5, 2),
                sq(c3.clone(), 2),
                sq(self.boundary.clone(), -2),
            ],
        }
    }
}

impl fmt::Debug for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Chain({:?}, {:?}, {:?}; d={:?})",
            self.curves[0], self.curves[1], self.curves[2], self.boundary
        )
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Curve {
    Nonseparating(HomologyZ),
    /// The curve cutting off the standard handles listed (1-based, sorted).
    Separating(Vec<usize>),
    /// The bounding pair `t_{d_1} t_{d_2}^{-1}` of a chain.
    BoundingPair(Chain),
}

impl Curve {
    pub fn genus_compatible(&self, genus: usize) -> Result<()> {
        match self {
            Curve::Nonseparating(c) => {
                if c.genus() != genus {
                    return Err(Error::LengthMismatch {
                        expected: 2 * genus,
                        found: c.coeffs().len(),
                    });
                }
                if c.is_zero() || !c.is_primitive() {
                    return Err(Error::NonPrimitive(c.coeffs().to_vec()));
                }
            }
            Curve::Separating(handles) => {
                if handles.is_empty() || handles.len() >= genus {
                    return Err(Error::InvalidSeparating(format!(
                        "handle set {handles:?} must be a nonempty proper subset of 1..={genus}"
                    )));
                }
                if handles.windows(2).any(|w| w[0] >= w[1])
                    || handles.iter().any(|&h| h == 0 || h > genus)
                {
                    return Err(Error::InvalidSeparating(format!(
                        "handle set {handles:?} is not sorted within 1..={genus}"
                    )));
                }
            }
            Curve::BoundingPair(chain) => {
                if chain.genus() != genus {
                    return Err(Error::GenusMismatch {
                        left: genus,
                        right: chain.genus(),
                    });
                }
            }
        }
        Ok(())
    }
}

fn write_coeffs(f: &mut fmt::Formatter<'_>, c: &HomologyZ) -> fmt::Result {
    f.write_str("[")?;
    for (k, x) in c.coeffs().iter().enumerate() {
        if k > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    f.write_str("]")
}

/// Displays in the word syntax accepted by the command line.
impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Curve::Nonseparating(c) => {
                f.write_str("T")?;
                write_coeffs(f, c)
            }
            Curve::Separating(h) => {
                f.write_str("SEP{")?;
                for (k, x) in h.iter().enumerate() {
                    if k > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str("}")
            }
            Curve::BoundingPair(chain) => {
                f.write_str("BP(")?;
                for (k, c) in chain.curves.iter().enumerate() {
                    if k > 0 {
                        f.write_str(",")?;
                    }
                    write_coeffs(f, c)?;
                }
                f.write_str(")")
            }
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Letter {
    pub curve: Curve,
    pub exponent: i64,
}

impl Letter {
    pub fn new(curve: Curve, exponent: i64) -> Self {
        Self { curve, exponent }
    }

    pub fn inverse(&self) -> Self {
        Self {
            curve: self.curve.clone(),
            exponent: -self.exponent,
        }
    }

    fn validate(&self, genus: usize) -> Result<()> {
        self.curve.genus_compatible(genus)?;
        let ok = match self.curve {
            Curve::Nonseparating(_) => self.exponent != 0,
            _ => self.exponent.abs() == 1,
        };
        if !ok {
            return Err(Error::InvalidExponent {
                curve: self.curve.to_string(),
                exponent: self.exponent,
            });
        }
        Ok(())
    }

    /// Action on integral homology; separating and bounding-pair letters act trivially.
    pub fn action(&self, genus: usize) -> Result<IntMatrix> {
        match &self.curve {
            Curve::Nonseparating(c) => transvection_matrix(c, self.exponent),
            _ => Ok(IntMatrix::identity(2 * genus)),
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.curve)?;
        if self.exponent != 1 {
            write!(f, "^{}", self.exponent)?;
        }
        Ok(())
    }
}

/// A product of twists written left to right; the rightmost letter acts first.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TwistWord {
    genus: usize,
    letters: Vec<Letter>,
}

impl TwistWord {
    pub fn new(genus: usize, letters: Vec<Letter>) -> Result<Self> {
        if genus == 0 || genus > crate::homology::MAX_GENUS {
            return Err(Error::InvalidGenus(genus));
        }
        for l in &letters {
            l.validate(genus)?;
        }
        Ok(Self { genus, letters })
    }

    pub fn empty(genus: usize) -> Self {
        Self {
            genus,
            letters: Vec::new(),
        }
    }

    pub fn single(genus: usize, curve: Curve, exponent: i64) -> Result<Self> {
        Self::new(genus, vec![Letter::new(curve, exponent)])
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Letters in the order they act.
    pub fn application_order(&self) -> impl Iterator<Item = &Letter> {
        self.letters.iter().rev()
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn compose(&self, first: &TwistWord) -> Result<Self> {
        if self.genus != first.genus {
            return Err(Error::GenusMismatch {
                left: self.genus,
                right: first.genus,
            });
        }
        let mut letters = self.letters.clone();
        letters.extend(first.letters.iter().cloned());
        Ok(Self {
            genus: self.genus,
            letters,
        })
    }

    pub fn inverse(&self) -> Self {
        Self {
            genus: self.genus,
            letters: self.letters.iter().rev().map(Letter::inverse).collect(),
        }
    }
}

impl fmt::Display for TwistWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// `x + e·(x·c)·c`.
pub fn transvect(c: &HomologyZ, x: &HomologyZ, exponent: i64) -> Result<HomologyZ> {
    let k = intersect(x, c)?
        .checked_mul(exponent)
        .ok_or(Error::Overflow)?;
    x.add(&c.scale(k)?)
}

/// Matrix of `x ↦ x + e·(x·c)·c`.
pub fn transvection_matrix(c: &HomologyZ, exponent: i64) -> Result<IntMatrix> {
    let n = c.coeffs().len();
    let mut m = IntMatrix::identity(n);
    for k in 0..n {
        let image = transvect(c, &HomologyZ::basis(n / 2, k), exponent)?;
        for (i, &v) in image.coeffs().iter().enumerate() {
            m.set(i, k, v);
        }
    }
    Ok(m)
}

pub fn word_action(w: &TwistWord) -> Result<IntMatrix> {
    w.letters
        .iter()
        .try_fold(IntMatrix::identity(2 * w.genus), |acc, l| {
            acc.checked_mul(&l.action(w.genus)?)
        })
}

pub fn is_level2(w: &TwistWord) -> Result<bool> {
    Ok(word_action(w)?.is_identity_mod2())
}

pub fn is_torelli(w: &TwistWord) -> Result<bool> {
    Ok(word_action(w)?.is_identity())
}

/// The seven squared twists whose product is the chain's bounding pair map.
pub fn chain_bp_factorization(chain: &Chain) -> TwistWord {
    chain.factorization()
}

/// A Torelli word of six squared twists supported on handle `h`, standing in
/// for the twist around the curve cutting off that handle.
pub fn separating_handle_factorization(genus: usize, handle: usize) -> Result<TwistWord> {
    if handle == 0 || handle > genus {
        return Err(Error::InvalidSeparating(format!(
            "handle {handle} out of range 1..={genus}"
        )));
    }
    let a = HomologyZ::a(genus, handle);
    let b = HomologyZ::b(genus, handle);
    let tab_a = transvect(&a, &transvect(&b, &a, 1)?, 1)?;
    let ta_b = transvect(&a, &b, 1)?;
    let square = [tab_a, ta_b, a];
    let letters = square
        .iter()
        .chain(square.iter())
        .map(|c| Letter::new(Curve::Nonseparating(c.clone()), 2))
        .collect();
    TwistWord::new(genus, letters)
}

/// Render a handle list for messages.
pub fn handles_label(handles: &[usize]) -> String {
    Curve::Separating(handles.to_vec()).to_string()
}
