//! First homology of the closed genus-`g` surface.
//!
//! Basis order is `a_1, b_1, …, a_g, b_g`: index `2i` is `a_{i+1}` and
//! `2i+1` is `b_{i+1}`. The intersection form has `a_i·b_i = +1`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::conventions::Conventions;
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::ring::Z8;

/// Largest genus whose mod-2 classes fit the `u32` bit representation.
pub const MAX_GENUS: usize = 16;

fn check_genus(genus: usize) -> Result<()> {
    if genus == 0 || genus > MAX_GENUS {
        return Err(Error::InvalidGenus(genus));
    }
    Ok(())
}

fn mask(genus: usize) -> u32 {
    if 2 * genus >= 32 {
        u32::MAX
    } else {
        (1u32 << (2 * genus)) - 1
    }
}

/// Mask selecting the `a`-coordinates of every handle.
fn a_mask(genus: usize) -> u32 {
    (0..genus).fold(0, |m, i| m | 1 << (2 * i))
}

fn parse_bits(genus: usize, text: &str) -> Result<u32> {
    if text.len() != 2 * genus || !text.bytes().all(|b| b == b'0' || b == b'1') {
        return Err(Error::InvalidBits(String::from(text)));
    }
    Ok(text
        .bytes()
        .enumerate()
        .fold(0, |acc, (k, b)| acc | ((b == b'1') as u32) << k))
}

fn format_bits(genus: usize, bits: u32, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    for k in 0..2 * genus {
        f.write_str(if bits >> k & 1 == 1 { "1" } else { "0" })?;
    }
    Ok(())
}

/// Integral homology class, the canonical carrier for curves.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HomologyZ {
    coeffs: Vec<i64>,
}

impl HomologyZ {
    pub fn new(coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.is_empty() || !coeffs.len().is_multiple_of(2) {
            return Err(Error::LengthMismatch {
                expected: 2 * (coeffs.len() / 2).max(1),
                found: coeffs.len(),
            });
        }
        check_genus(coeffs.len() / 2)?;
        Ok(Self { coeffs })
    }

    pub fn zero(genus: usize) -> Self {
        Self {
            coeffs: alloc::vec![0; 2 * genus],
        }
    }

    pub fn basis(genus: usize, k: usize) -> Self {
        let mut c = Self::zero(genus);
        c.coeffs[k] = 1;
        c
    }

    /// `a_i` for a 1-based handle index.
    pub fn a(genus: usize, i: usize) -> Self {
        Self::basis(genus, 2 * (i - 1))
    }

    /// `b_i` for a 1-based handle index.
    pub fn b(genus: usize, i: usize) -> Self {
        Self::basis(genus, 2 * i - 1)
    }

    pub fn genus(&self) -> usize {
        self.coeffs.len() / 2
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_primitive(&self) -> bool {
        self.coeffs
            .iter()
            .fold(0u64, |g, &c| gcd(g, c.unsigned_abs()))
            == 1
    }

    pub fn reduce(&self) -> HomologyF2 {
        let bits = self
            .coeffs
            .iter()
            .enumerate()
            .fold(0u32, |acc, (k, &c)| acc | ((c & 1) as u32) << k);
        HomologyF2 {
            genus: self.genus(),
            bits,
        }
    }

    fn same_genus(&self, other: &Self) -> Result<()> {
        if self.coeffs.len() != other.coeffs.len() {
            return Err(Error::LengthMismatch {
                expected: self.coeffs.len(),
                found: other.coeffs.len(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_genus(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow))
            .collect::<Result<_>>()?;
        Ok(Self { coeffs })
    }

    pub fn scale(&self, k: i64) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| a.checked_mul(k).ok_or(Error::Overflow))
            .collect::<Result<_>>()?;
        Ok(Self { coeffs })
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn apply(matrix: &IntMatrix, c: &Self) -> Result<Self> {
        Ok(Self {
            coeffs: matrix.apply(&c.coeffs)?,
        })
    }
}

impl fmt::Debug for HomologyZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coeffs)
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `uᵀ J v`.
pub fn intersect(u: &HomologyZ, v: &HomologyZ) -> Result<i64> {
    u.same_genus(v)?;
    let mut total = 0i64;
    for h in 0..u.genus() {
        let (ua, ub, va, vb) = (
            u.coeffs[2 * h],
            u.coeffs[2 * h + 1],
            v.coeffs[2 * h],
            v.coeffs[2 * h + 1],
        );
        let t = ua
            .checked_mul(vb)
            .and_then(|x| ub.checked_mul(va).and_then(|y| x.checked_sub(y)));
        total = t
            .and_then(|t| total.checked_add(t))
            .ok_or(Error::Overflow)?;
    }
    Ok(total)
}

/// The surface with its standard embedding in `S³`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SurfaceModel {
    genus: usize,
    seifert_transposed: bool,
}

impl SurfaceModel {
    pub fn new(genus: usize) -> Result<Self> {
        Self::with_conventions(genus, &Conventions::FROZEN)
    }

    pub fn with_conventions(genus: usize, conventions: &Conventions) -> Result<Self> {
        check_genus(genus)?;
        Ok(Self {
            genus,
            seifert_transposed: conventions.seifert_transposed,
        })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn dim(&self) -> usize {
        2 * self.genus
    }

    fn check(&self, c: &HomologyZ) -> Result<()> {
        if c.coeffs.len() != self.dim() {
            return Err(Error::LengthMismatch {
                expected: self.dim(),
                found: c.coeffs.len(),
            });
        }
        Ok(())
    }

    pub fn intersection_matrix(&self) -> IntMatrix {
        let mut j = IntMatrix::zeros(self.dim(), self.dim());
        for h in 0..self.genus {
            j.set(2 * h, 2 * h + 1, 1);
            j.set(2 * h + 1, 2 * h, -1);
        }
        j
    }

    pub fn seifert_matrix(&self) -> IntMatrix {
        let mut v = IntMatrix::zeros(self.dim(), self.dim());
        for h in 0..self.genus {
            if self.seifert_transposed {
                v.set(2 * h + 1, 2 * h, 1);
            } else {
                v.set(2 * h, 2 * h + 1, 1);
            }
        }
        v
    }

    pub fn intersect(&self, u: &HomologyZ, v: &HomologyZ) -> Result<i64> {
        self.check(u)?;
        intersect(u, v)
    }

    /// Seifert pairing `λ(u, v) = lk(u, v⁺)`.
    pub fn seifert(&self, u: &HomologyZ, v: &HomologyZ) -> Result<i64> {
        self.check(u)?;
        self.check(v)?;
        let mut total = 0i64;
        for h in 0..self.genus {
            let (x, y) = if self.seifert_transposed {
                (u.coeffs[2 * h + 1], v.coeffs[2 * h])
            } else {
                (u.coeffs[2 * h], v.coeffs[2 * h + 1])
            };
            total = x
                .checked_mul(y)
                .and_then(|t| total.checked_add(t))
                .ok_or(Error::Overflow)?;
        }
        Ok(total)
    }
}

/// A mod-2 homology class.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HomologyF2 {
    genus: usize,
    bits: u32,
}

impl HomologyF2 {
    pub fn new(genus: usize, bits: u32) -> Self {
        Self {
            genus,
            bits: bits & mask(genus),
        }
    }

    pub fn zero(genus: usize) -> Self {
        Self { genus, bits: 0 }
    }

    pub fn basis(genus: usize, k: usize) -> Self {
        Self::new(genus, 1 << k)
    }

    pub fn parse(genus: usize, text: &str) -> Result<Self> {
        Ok(Self {
            genus,
            bits: parse_bits(genus, text)?,
        })
    }

    /// Every class of the given genus, zero first.
    pub fn all(genus: usize) -> impl Iterator<Item = Self> {
        (0..=mask(genus)).map(move |bits| Self { genus, bits })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn coeff(&self, k: usize) -> bool {
        self.bits >> k & 1 == 1
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(self, other: Self) -> Self {
        Self {
            genus: self.genus,
            bits: self.bits ^ other.bits,
        }
    }

    /// Mod-2 intersection number.
    pub fn dot(self, other: Self) -> bool {
        // a_i·b_i and b_i·a_i are both odd, so pair each a-bit with the partner b-bit.
        let swapped = swap_pairs(other.bits);
        (self.bits & swapped).count_ones() % 2 == 1
    }

    pub fn lift(&self) -> HomologyZ {
        HomologyZ {
            coeffs: (0..2 * self.genus).map(|k| self.coeff(k) as i64).collect(),
        }
    }
}

fn swap_pairs(bits: u32) -> u32 {
    let evens = bits & 0x5555_5555;
    let odds = bits & 0xAAAA_AAAA;
    evens << 1 | odds >> 1
}

impl fmt::Debug for HomologyF2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        format_bits(self.genus, self.bits, f)
    }
}

impl fmt::Display for HomologyF2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        format_bits(self.genus, self.bits, f)
    }
}

/// `i_z(y)`: 1 when `z·y` is odd.
pub fn i_z(z: HomologyF2, y: HomologyF2) -> Z8 {
    Z8::new(z.dot(y) as i64)
}

/// A class in `H¹(Σ; Z/2)`, stored by its values on the basis.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CohomologyF2 {
    genus: usize,
    bits: u32,
}

impl CohomologyF2 {
    pub fn new(genus: usize, bits: u32) -> Self {
        Self {
            genus,
            bits: bits & mask(genus),
        }
    }

    pub fn zero(genus: usize) -> Self {
        Self { genus, bits: 0 }
    }

    pub fn parse(genus: usize, text: &str) -> Result<Self> {
        Ok(Self {
            genus,
            bits: parse_bits(genus, text)?,
        })
    }

    pub fn all(genus: usize) -> impl Iterator<Item = Self> {
        (0..=mask(genus)).map(move |bits| Self { genus, bits })
    }

    /// The functional `y ↦ d·y`.
    pub fn dual_of(d: HomologyF2) -> Self {
        Self {
            genus: d.genus,
            bits: swap_pairs(d.bits),
        }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn eval(&self, y: HomologyF2) -> bool {
        (self.bits & y.bits).count_ones() % 2 == 1
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(self, other: Self) -> Self {
        Self {
            genus: self.genus,
            bits: self.bits ^ other.bits,
        }
    }

    /// Pullback along a homology map: `(f*x)(c) = x(f(c))`.
    pub fn pullback(&self, f: &IntMatrix) -> Result<Self> {
        let mut bits = 0;
        for k in 0..2 * self.genus {
            let image = HomologyZ::apply(f, &HomologyZ::basis(self.genus, k))?.reduce();
            bits |= (self.eval(image) as u32) << k;
        }
        Ok(Self {
            genus: self.genus,
            bits,
        })
    }
}

/// Poincaré dual: the unique `d` with `d·y = x(y)` for every `y`.
pub fn pd(x: CohomologyF2) -> HomologyF2 {
    HomologyF2 {
        genus: x.genus,
        bits: swap_pairs(x.bits),
    }
}

impl fmt::Debug for CohomologyF2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        format_bits(self.genus, self.bits, f)
    }
}

impl fmt::Display for CohomologyF2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        format_bits(self.genus, self.bits, f)
    }
}

/// A spin structure on the surface, held as its quadratic form.
///
/// `qvals` are the values of `q_σ` on the basis classes. The membership seeds
/// used for characteristic sublinks (`svals`) differ from them by the global
/// offset in [`Conventions`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpinStructure {
    genus: usize,
    qvals: u32,
}

impl SpinStructure {
    pub fn from_qvals(genus: usize, qvals: u32) -> Self {
        Self {
            genus,
            qvals: qvals & mask(genus),
        }
    }

    pub fn from_svals(genus: usize, svals: u32, conventions: &Conventions) -> Self {
        let offset = if conventions.sval_offset {
            mask(genus)
        } else {
            0
        };
        Self::from_qvals(genus, svals ^ offset)
    }

    /// Parse a bit-string of `svals` under the frozen conventions.
    pub fn parse(genus: usize, text: &str) -> Result<Self> {
        Ok(Self::from_svals(
            genus,
            parse_bits(genus, text)?,
            &Conventions::FROZEN,
        ))
    }

    /// The structure with all `svals` zero: fewest characteristic components.
    pub fn eta(genus: usize) -> Self {
        Self::from_svals(genus, 0, &Conventions::FROZEN)
    }

    pub fn all(genus: usize) -> impl Iterator<Item = Self> {
        (0..=mask(genus)).map(move |qvals| Self { genus, qvals })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn qvals(&self) -> u32 {
        self.qvals
    }

    pub fn svals(&self, conventions: &Conventions) -> u32 {
        let offset = if conventions.sval_offset {
            mask(self.genus)
        } else {
            0
        };
        self.qvals ^ offset
    }

    pub fn q_basis(&self, k: usize) -> bool {
        self.qvals >> k & 1 == 1
    }

    /// `q(Σ x_k) = Σ q(x_k) + Σ_{k<l} x_k·x_l`.
    pub fn q_eval(&self, c: HomologyF2) -> bool {
        let linear = (self.qvals & c.bits).count_ones();
        let cross = (c.bits & (c.bits >> 1) & a_mask(self.genus)).count_ones();
        (linear + cross) % 2 == 1
    }

    /// The structure `σ + x`.
    pub fn act(&self, x: &CohomologyF2) -> Self {
        Self {
            genus: self.genus,
            qvals: self.qvals ^ x.bits,
        }
    }

    /// `f*σ`, the form `c ↦ q_σ(f(c))`.
    pub fn pullback(&self, f: &IntMatrix) -> Result<Self> {
        let mut qvals = 0;
        for k in 0..2 * self.genus {
            let image = HomologyZ::apply(f, &HomologyZ::basis(self.genus, k))?.reduce();
            qvals |= (self.q_eval(image) as u32) << k;
        }
        Ok(Self {
            genus: self.genus,
            qvals,
        })
    }

    /// Arf invariant of the whole form.
    pub fn arf(&self) -> bool {
        self.arf_on_handles(1..=self.genus)
    }

    /// Arf invariant restricted to the standard handles listed (1-based).
    pub fn arf_on_handles(&self, handles: impl IntoIterator<Item = usize>) -> bool {
        handles.into_iter().fold(false, |acc, h| {
            acc ^ (self.q_basis(2 * h - 2) & self.q_basis(2 * h - 1))
        })
    }
}

impl fmt::Debug for SpinStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("q=")?;
        format_bits(self.genus, self.qvals, f)
    }
}

/// `Σ q(x_i) q(y_i)` over a symplectic family `(x_i, y_i)`.
pub fn arf_form(sigma: &SpinStructure, sublattice: &[(HomologyF2, HomologyF2)]) -> Result<bool> {
    for (i, (x, y)) in sublattice.iter().enumerate() {
        if x.genus != sigma.genus || y.genus != sigma.genus {
            return Err(Error::GenusMismatch {
                left: sigma.genus,
                right: x.genus.max(y.genus),
            });
        }
        if !x.dot(*y) {
            return Err(Error::NonSymplectic(alloc::format!(
                "pair {i} has even intersection"
            )));
        }
        for (j, (u, v)) in sublattice.iter().enumerate().skip(i + 1) {
            if x.dot(*u) || x.dot(*v) || y.dot(*u) || y.dot(*v) {
                return Err(Error::NonSymplectic(alloc::format!(
                    "pairs {i} and {j} intersect"
                )));
            }
        }
    }
    Ok(sublattice.iter().fold(false, |acc, (x, y)| {
        acc ^ (sigma.q_eval(*x) & sigma.q_eval(*y))
    }))
}

/// The symplectic family of the standard handles listed (1-based).
pub fn handle_lattice(genus: usize, handles: &[usize]) -> Vec<(HomologyF2, HomologyF2)> {
    handles
        .iter()
        .map(|&h| {
            (
                HomologyF2::basis(genus, 2 * h - 2),
                HomologyF2::basis(genus, 2 * h - 1),
            )
        })
        .collect()
}

/// The form `c ↦ λ(c, c) mod 2` induced by the Seifert pairing.
pub fn seifert_form(surface: &SurfaceModel) -> SpinStructure {
    let v = surface.seifert_matrix();
    let qvals = (0..surface.dim()).fold(0, |acc, k| acc | ((v.get(k, k) & 1) as u32) << k);
    SpinStructure::from_qvals(surface.genus(), qvals)
}
