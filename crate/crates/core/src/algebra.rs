//! The squarefree `Z/8` algebra `W_σ` realizing the abelianization of the
//! level-2 subgroup.
//!
//! Generators `X̄_k` correspond to the basis classes. Monomials are squarefree
//! and stored as bitmasks over basis indices; squares reduce by
//! `X̄² = (−1)^{q_σ(X)} X̄`. Sums of classes expand by
//! `(C_1+C_2)‾ = (−1)^{C_1·C_2}((−1)^{q(C_2)} C̄_1 + (−1)^{q(C_1)} C̄_2 − 2 C̄_1 C̄_2)`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::homology::{HomologyF2, SpinStructure};
use crate::mapping::{
    chain_bp_factorization, is_level2, separating_handle_factorization, Chain, Curve, TwistWord,
};
use crate::ring::{sign_z8, Z8};

/// A `Z/8` combination of squarefree monomials; zero coefficients are dropped.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct AlgebraElement {
    genus: usize,
    terms: BTreeMap<u32, Z8>,
}

impl AlgebraElement {
    pub fn zero(genus: usize) -> Self {
        Self {
            genus,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(genus: usize, mask: u32, coeff: Z8) -> Self {
        let mut e = Self::zero(genus);
        e.add_term(mask, coeff);
        e
    }

    pub fn constant(genus: usize, coeff: Z8) -> Self {
        Self::monomial(genus, 0, coeff)
    }

    /// The basis generator `X̄_k`.
    pub fn generator(genus: usize, k: usize) -> Self {
        Self::monomial(genus, 1 << k, Z8::ONE)
    }

    /// Build from `(monomial, coefficient)` pairs; repeated monomials add up.
    pub fn from_terms(genus: usize, terms: impl IntoIterator<Item = (u32, Z8)>) -> Result<Self> {
        let mut e = Self::zero(genus);
        for (mask, c) in terms {
            if mask >> (2 * genus) != 0 {
                return Err(Error::IndexOutOfRange {
                    index: (32 - mask.leading_zeros()) as usize - 1,
                    len: 2 * genus,
                });
            }
            e.add_term(mask, c);
        }
        Ok(e)
    }

    fn add_term(&mut self, mask: u32, c: Z8) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(mask).or_insert(Z8::ZERO);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&mask);
        }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn coeff(&self, mask: u32) -> Z8 {
        self.terms.get(&mask).copied().unwrap_or(Z8::ZERO)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, Z8)> + '_ {
        self.terms.iter().map(|(&m, &c)| (m, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.terms
            .keys()
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    fn same_genus(&self, other: &Self) -> Result<()> {
        if self.genus != other.genus {
            return Err(Error::GenusMismatch {
                left: self.genus,
                right: other.genus,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_genus(other)?;
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(-Z8::ONE)
    }

    pub fn scale(&self, k: Z8) -> Self {
        let mut out = Self::zero(self.genus);
        for (m, c) in self.terms() {
            out.add_term(m, c * k);
        }
        out
    }

    /// Normal form of the generator span: no constant, monomials of degree
    /// at most three, with degree-`d` coefficients divisible by `2^{d-1}`.
    pub fn is_span_normal_form(&self) -> bool {
        self.terms().all(|(m, c)| {
            let d = m.count_ones();
            (1..=3).contains(&d) && c.two_adic_valuation() >= d - 1
        })
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}")?;
            for i in 0..2 * self.genus {
                if m >> i & 1 == 1 {
                    let (kind, h) = if i % 2 == 0 {
                        ('a', i / 2 + 1)
                    } else {
                        ('b', i / 2 + 1)
                    };
                    write!(f, "·X[{kind}{h}]")?;
                }
            }
        }
        Ok(())
    }
}

/// `W_σ` for a fixed spin structure.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SquarefreeAlgebra {
    sigma: SpinStructure,
}

impl SquarefreeAlgebra {
    pub fn new(sigma: SpinStructure) -> Self {
        Self { sigma }
    }

    pub fn genus(&self) -> usize {
        self.sigma.genus()
    }

    pub fn sigma(&self) -> &SpinStructure {
        &self.sigma
    }

    fn check(&self, e: &AlgebraElement) -> Result<()> {
        if e.genus != self.genus() {
            return Err(Error::GenusMismatch {
                left: self.genus(),
                right: e.genus,
            });
        }
        Ok(())
    }

    /// Product, reducing each repeated generator by `X̄² = (−1)^{q(X)} X̄`.
    pub fn mul(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement> {
        self.check(a)?;
        self.check(b)?;
        let q = self.sigma.qvals();
        let mut out = AlgebraElement::zero(self.genus());
        for (s, cs) in a.terms() {
            for (t, ct) in b.terms() {
                let sign = sign_z8((s & t & q).count_ones() % 2 == 1);
                out.add_term(s | t, cs * ct * sign);
            }
        }
        Ok(out)
    }

    /// `C̄` expanded over the basis in index order.
    pub fn gen_bar(&self, c: HomologyF2) -> Result<AlgebraElement> {
        let order: Vec<usize> = (0..2 * self.genus()).collect();
        self.gen_bar_ordered(c, &order)
    }

    /// `C̄` expanded by adding basis summands in the given order.
    pub fn gen_bar_ordered(&self, c: HomologyF2, order: &[usize]) -> Result<AlgebraElement> {
        let g = self.genus();
        if c.genus() != g {
            return Err(Error::GenusMismatch {
                left: g,
                right: c.genus(),
            });
        }
        let mut seen = 0u32;
        for &k in order {
            if k >= 2 * g || seen >> k & 1 == 1 {
                return Err(Error::InvalidBits(format!(
                    "order {order:?} is not a permutation of the basis"
                )));
            }
            seen |= 1 << k;
        }
        if order.len() != 2 * g {
            return Err(Error::LengthMismatch {
                expected: 2 * g,
                found: order.len(),
            });
        }
        if c.is_zero() {
            return Err(Error::ZeroClass);
        }
        let two = Z8::new(2);
        let mut acc: Option<(HomologyF2, AlgebraElement)> = None;
        for &k in order.iter().filter(|&&k| c.coeff(k)) {
            let x = AlgebraElement::generator(g, k);
            let basis = HomologyF2::basis(g, k);
            acc = Some(match acc {
                None => (basis, x),
                Some((partial, e)) => {
                    let prod = self.mul(&e, &x)?;
                    let sum = e
                        .scale(sign_z8(self.sigma.q_eval(basis)))
                        .add(&x.scale(sign_z8(self.sigma.q_eval(partial))))?
                        .sub(&prod.scale(two))?
                        .scale(sign_z8(partial.dot(basis)));
                    (partial.add(basis), sum)
                }
            });
        }
        Ok(acc.expect("nonzero class").1)
    }

    /// `Φ(e)(y)`: substitute `(−1)^{q(X_k)} i_{X_k}(y)` for each generator.
    pub fn phi_eval(&self, e: &AlgebraElement, y: HomologyF2) -> Result<Z8> {
        self.check(e)?;
        let hits = crate::homology::CohomologyF2::dual_of(y).bits();
        let q = self.sigma.qvals();
        Ok(e.terms()
            .filter(|(m, _)| m & !hits == 0)
            .map(|(m, c)| c * sign_z8((m & q).count_ones() % 2 == 1))
            .sum())
    }

    /// The unique element whose `Φ` is the given function.
    pub fn phi_inverse(&self, f: impl Fn(HomologyF2) -> Z8) -> AlgebraElement {
        let g = self.genus();
        let n = 1usize << (2 * g);
        // values indexed by the hit pattern u_k = i_{X_k}(y)
        let mut v: Vec<Z8> = (0..n as u32)
            .map(|u| {
                f(crate::homology::pd(crate::homology::CohomologyF2::new(
                    g, u,
                )))
            })
            .collect();
        for k in 0..2 * g {
            for u in 0..n {
                if u >> k & 1 == 1 {
                    let low = v[u ^ (1 << k)];
                    v[u] -= low;
                }
            }
        }
        let q = self.sigma.qvals();
        let mut out = AlgebraElement::zero(g);
        for (m, c) in v.into_iter().enumerate() {
            out.add_term(m as u32, c * sign_z8((m as u32 & q).count_ones() % 2 == 1));
        }
        out
    }

    /// `β_σ(w)` valued in the algebra.
    pub fn beta_algebra(&self, w: &TwistWord) -> Result<AlgebraElement> {
        self.beta_algebra_from(w, &mut |c| self.gen_bar(c))
    }

    fn beta_algebra_from(
        &self,
        w: &TwistWord,
        gen: &mut dyn FnMut(HomologyF2) -> Result<AlgebraElement>,
    ) -> Result<AlgebraElement> {
        let g = self.genus();
        if w.genus() != g {
            return Err(Error::GenusMismatch {
                left: g,
                right: w.genus(),
            });
        }
        if !is_level2(w)? {
            return Err(Error::NotLevel2);
        }
        let mut total = AlgebraElement::zero(g);
        for letter in w.letters() {
            let e = letter.exponent;
            let term = match &letter.curve {
                Curve::Nonseparating(c) => {
                    if e % 2 != 0 {
                        return Err(Error::UnsupportedLetter(format!(
                            "{letter}: odd power of a nonseparating twist"
                        )));
                    }
                    gen(c.reduce())?.scale(Z8::new(e / 2))
                }
                Curve::Separating(handles) => {
                    let mut sum = AlgebraElement::zero(g);
                    for &h in handles {
                        sum = sum.add(
                            &self
                                .beta_algebra_from(&separating_handle_factorization(g, h)?, gen)?,
                        )?;
                    }
                    sum.scale(Z8::new(e))
                }
                Curve::BoundingPair(chain) => self
                    .beta_algebra_from(&chain_bp_factorization(chain), gen)?
                    .scale(Z8::new(e)),
            };
            total = total.add(&term)?;
        }
        Ok(total)
    }

    fn gen_bar_table(&self) -> Result<Vec<AlgebraElement>> {
        let g = self.genus();
        HomologyF2::all(g)
            .map(|c| {
                if c.is_zero() {
                    Ok(AlgebraElement::zero(g))
                } else {
                    self.gen_bar(c)
                }
            })
            .collect()
    }
}

/// `C̄` for the spin structure σ.
pub fn gen_bar(c: HomologyF2, sigma: &SpinStructure) -> Result<AlgebraElement> {
    SquarefreeAlgebra::new(*sigma).gen_bar(c)
}

pub fn phi_eval(e: &AlgebraElement, sigma: &SpinStructure, y: HomologyF2) -> Result<Z8> {
    SquarefreeAlgebra::new(*sigma).phi_eval(e, y)
}

pub fn beta_algebra(w: &TwistWord, sigma: &SpinStructure) -> Result<AlgebraElement> {
    SquarefreeAlgebra::new(*sigma).beta_algebra(w)
}

/// Invariant factors of a finitely generated `Z/8`-module given by
/// generator rows: the number of cyclic summands of order 8, 4 and 2.
pub fn z8_structure(rows: &[Vec<Z8>]) -> [usize; 3] {
    let mut m: Vec<Vec<Z8>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut counts = [0usize; 3];
    let mut live_rows: Vec<usize> = (0..m.len()).collect();
    let mut live_cols: Vec<usize> = (0..cols).collect();
    loop {
        let best = live_rows
            .iter()
            .flat_map(|&r| live_cols.iter().map(move |&c| (r, c)))
            .filter(|&(r, c)| !m[r][c].is_zero())
            .min_by_key(|&(r, c)| m[r][c].two_adic_valuation());
        let Some((pr, pc)) = best else { break };
        let v = m[pr][pc].two_adic_valuation();
        let unit_inv = Z8::new((m[pr][pc].value() >> v) as i64)
            .inverse()
            .expect("odd part is a unit");
        for x in m[pr].iter_mut() {
            *x *= unit_inv;
        }
        // pivot is now exactly 2^v and divides everything left in the module
        let pivot_row = m[pr].clone();
        for &r in &live_rows {
            if r != pr && !m[r][pc].is_zero() {
                let t = Z8::new((m[r][pc].value() >> v) as i64);
                for &c in &live_cols {
                    let d = t * pivot_row[c];
                    m[r][c] -= d;
                }
            }
        }
        live_rows.retain(|&r| r != pr);
        live_cols.retain(|&c| c != pc);
        counts[v as usize] += 1;
    }
    counts
}

/// `log2` of the order of a module with the given structure.
pub fn log2_order(ranks: [usize; 3]) -> usize {
    3 * ranks[0] + 2 * ranks[1] + ranks[2]
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Monomials of degree one to three, ordered by degree then value.
fn span_coordinates(genus: usize) -> Vec<u32> {
    let mut out: Vec<u32> = (1u32..1 << (2 * genus))
        .filter(|m| m.count_ones() <= 3)
        .collect();
    out.sort_by_key(|m| (m.count_ones(), *m));
    out
}

fn coordinates_of(e: &AlgebraElement, coords: &[u32]) -> Vec<Z8> {
    coords.iter().map(|&m| e.coeff(m)).collect()
}

/// Structure of the submodule spanned by the given elements.
pub fn span_structure(genus: usize, elements: &[AlgebraElement]) -> [usize; 3] {
    let coords = span_coordinates(genus);
    let rows: Vec<Vec<Z8>> = elements
        .iter()
        .map(|e| coordinates_of(e, &coords))
        .collect();
    z8_structure(&rows)
}

/// Outcome of the three evaluation families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IndependenceCertificate {
    /// At basis points only linear monomials survive, as a signed permutation.
    pub basis_family: bool,
    /// At pair points cubic monomials vanish and each quadratic one is
    /// detected by exactly its own point.
    pub pair_family: bool,
    /// At triple points each cubic monomial is detected by exactly its own point.
    pub triple_family: bool,
    /// The evaluation map on `⊕ 2^{d-1} Z/8 · (degree-d monomials)` is injective.
    pub injective: bool,
}

impl IndependenceCertificate {
    pub fn holds(&self) -> bool {
        self.basis_family && self.pair_family && self.triple_family && self.injective
    }
}

/// Certify that no normal-form combination with a unit monomial coefficient
/// lies in the kernel of `Φ`.
pub fn independence_certificate(alg: &SquarefreeAlgebra) -> Result<IndependenceCertificate> {
    let g = alg.genus();
    let n = 2 * g;
    let point = |u: u32| crate::homology::pd(crate::homology::CohomologyF2::new(g, u));
    let masks_of =
        |d: u32| -> Vec<u32> { (1u32..1 << n).filter(|m| m.count_ones() == d).collect() };
    let (ones, twos, threes) = (masks_of(1), masks_of(2), masks_of(3));
    let eval = |m: u32, u: u32| alg.phi_eval(&AlgebraElement::monomial(g, m, Z8::ONE), point(u));

    // A monomial is "detected" by a point when it evaluates to ±1 there.
    let family_ok = |points: &[u32], own: &[u32], vanish: &[u32]| -> Result<bool> {
        for &p in points {
            for &m in vanish {
                if !eval(m, p)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        for &m in own {
            let hits: Vec<u32> = points
                .iter()
                .copied()
                .filter(|&p| eval(m, p).map(|v| v.is_unit()).unwrap_or(false))
                .collect();
            if hits != [m] {
                return Ok(false);
            }
        }
        Ok(true)
    };
    let higher: Vec<u32> = twos.iter().chain(&threes).copied().collect();
    let basis_family = family_ok(&ones, &ones, &higher)?;
    let pair_family = family_ok(&twos, &twos, &threes)?;
    let triple_family = family_ok(&threes, &threes, &[])?;

    let points: Vec<u32> = ones.iter().chain(&twos).chain(&threes).copied().collect();
    let mut rows = Vec::new();
    for (d, masks) in [(0u32, &ones), (1, &twos), (2, &threes)] {
        for &m in masks.iter() {
            let scale = Z8::new(1 << d);
            rows.push(
                points
                    .iter()
                    .map(|&p| eval(m, p).map(|v| v * scale))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
    }
    let image = log2_order(z8_structure(&rows));
    let domain = log2_order([ones.len(), twos.len(), threes.len()]);
    Ok(IndependenceCertificate {
        basis_family,
        pair_family,
        triple_family,
        injective: image == domain,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureReport {
    pub genus: usize,
    pub sigma: SpinStructure,
    pub generators: usize,
    /// Number of summands of order 8, 4 and 2.
    pub ranks: [usize; 3],
    pub expected: [usize; 3],
    pub log2_order: usize,
    pub all_normal_form: bool,
    pub independence: IndependenceCertificate,
}

impl StructureReport {
    pub fn matches_expected(&self) -> bool {
        self.ranks == self.expected
    }
}

const REPORT_MAX_GENUS: usize = 3;

fn guard(genus: usize, min: usize) -> Result<()> {
    if genus < min || genus > REPORT_MAX_GENUS {
        return Err(Error::CostGuard(format!(
            "reports run for genus {min}..={REPORT_MAX_GENUS}, got {genus}"
        )));
    }
    Ok(())
}

/// Module spanned by every `C̄`, `C ≠ 0`.
pub fn abelianization_report(sigma: &SpinStructure) -> Result<StructureReport> {
    let g = sigma.genus();
    guard(g, 1)?;
    let alg = SquarefreeAlgebra::new(*sigma);
    let gens: Vec<AlgebraElement> = alg.gen_bar_table()?.into_iter().skip(1).collect();
    let ranks = span_structure(g, &gens);
    Ok(StructureReport {
        genus: g,
        sigma: *sigma,
        generators: gens.len(),
        ranks,
        expected: [2 * g, binomial(2 * g, 2), binomial(2 * g, 3)],
        log2_order: log2_order(ranks),
        all_normal_form: gens.iter().all(AlgebraElement::is_span_normal_form),
        independence: independence_certificate(&alg)?,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorelliImageReport {
    pub genus: usize,
    pub sigma: SpinStructure,
    pub chains: usize,
    pub distinct_generators: usize,
    pub all_two_torsion: bool,
    pub all_normal_form: bool,
    pub ranks: [usize; 3],
    /// `F_2`-dimension of the image (meaningful when every generator is 2-torsion).
    pub dimension: usize,
    /// Chains with `q_σ` zero on `C_1`, `C_2` and `D_1`.
    pub special_chains: usize,
    pub special_formula_holds: bool,
}

/// All chains whose classes have coefficients in `{0, 1}`.
pub fn enumerate_chains(genus: usize) -> Vec<Chain> {
    let classes: Vec<HomologyF2> = HomologyF2::all(genus).skip(1).collect();
    let mut out = Vec::new();
    for &c1 in &classes {
        let z1 = c1.lift();
        for &c2 in &classes {
            let z2 = c2.lift();
            if crate::homology::intersect(&z1, &z2)
                .map(|v| v.abs() != 1)
                .unwrap_or(true)
            {
                continue;
            }
            for &c3 in &classes {
                let z3 = c3.lift();
                let ok = crate::homology::intersect(&z2, &z3)
                    .map(|v| v.abs() == 1)
                    .unwrap_or(false)
                    && crate::homology::intersect(&z1, &z3) == Ok(0);
                if ok {
                    if let Ok(chain) = Chain::new(z1.clone(), z2.clone(), z3) {
                        out.push(chain);
                    }
                }
            }
        }
    }
    out
}

/// Image of the Torelli group under `β_σ`, spanned over the enumerated chains.
pub fn torelli_image_report(sigma: &SpinStructure) -> Result<TorelliImageReport> {
    let g = sigma.genus();
    guard(g, 2)?;
    let chains = enumerate_chains(g);
    torelli_image_from_chains(sigma, &chains)
}

pub fn torelli_image_from_chains(
    sigma: &SpinStructure,
    chains: &[Chain],
) -> Result<TorelliImageReport> {
    let g = sigma.genus();
    let alg = SquarefreeAlgebra::new(*sigma);
    let table = alg.gen_bar_table()?;
    let mut lookup = |c: HomologyF2| -> Result<AlgebraElement> {
        if c.is_zero() {
            return Err(Error::ZeroClass);
        }
        Ok(table[c.bits() as usize].clone())
    };
    let mut images = Vec::with_capacity(chains.len());
    let mut special_chains = 0;
    let mut special_formula_holds = true;
    for chain in chains {
        let w = TwistWord::single(g, Curve::BoundingPair(chain.clone()), 1)?;
        let e = alg.beta_algebra_from(&w, &mut lookup)?;
        let [c1, c2, _] = chain.curves();
        let (c1, c2, d) = (c1.reduce(), c2.reduce(), chain.boundary().reduce());
        if !sigma.q_eval(c1) && !sigma.q_eval(c2) && !sigma.q_eval(d) {
            special_chains += 1;
            let p = alg.mul(&table[c1.bits() as usize], &table[c2.bits() as usize])?;
            let pd = alg.mul(&p, &table[d.bits() as usize])?;
            let expected = p.add(&pd)?.scale(Z8::new(4));
            special_formula_holds &= e == expected;
        }
        images.push(e);
    }
    let all_two_torsion = images
        .iter()
        .all(|e| e.add(e).map(|s| s.is_zero()).unwrap_or(false));
    let all_normal_form = images.iter().all(AlgebraElement::is_span_normal_form);
    let mut distinct = images.clone();
    distinct.sort_by(|a, b| a.terms.iter().cmp(b.terms.iter()));
    distinct.dedup();
    let ranks = span_structure(g, &distinct);
    Ok(TorelliImageReport {
        genus: g,
        sigma: *sigma,
        chains: chains.len(),
        distinct_generators: distinct.len(),
        all_two_torsion,
        all_normal_form,
        ranks,
        dimension: ranks[2],
        special_chains,
        special_formula_holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::{i_z, CohomologyF2};
    use proptest::prelude::*;

    fn cls(g: usize, s: &str) -> HomologyF2 {
        HomologyF2::parse(g, s).unwrap()
    }

    #[test]
    fn gen_bar_examples() {
        let s1 = SpinStructure::from_qvals(1, 0);
        let alg = SquarefreeAlgebra::new(s1);
        assert_eq!(
            alg.gen_bar(cls(1, "10")).unwrap(),
            AlgebraElement::generator(1, 0)
        );
        let expect =
            AlgebraElement::from_terms(1, [(0b01, -Z8::ONE), (0b10, -Z8::ONE), (0b11, Z8::new(2))])
                .unwrap();
        assert_eq!(alg.gen_bar(cls(1, "11")).unwrap(), expect);
        let alg2 = SquarefreeAlgebra::new(SpinStructure::from_qvals(2, 0));
        let expect = AlgebraElement::from_terms(
            2,
            [(0b0001, Z8::ONE), (0b0100, Z8::ONE), (0b0101, -Z8::new(2))],
        )
        .unwrap();
        assert_eq!(alg2.gen_bar(cls(2, "1010")).unwrap(), expect);
        assert_eq!(alg.gen_bar(HomologyF2::zero(1)), Err(Error::ZeroClass));
    }

    #[test]
    fn product_examples() {
        let alg = SquarefreeAlgebra::new(SpinStructure::from_qvals(2, 0));
        let x = AlgebraElement::generator(2, 0);
        assert_eq!(alg.mul(&x, &x).unwrap(), x);
        let e = AlgebraElement::monomial(2, 0b0110, Z8::new(3));
        assert_eq!(e.add(&AlgebraElement::zero(2)).unwrap(), e);
        let four = AlgebraElement::monomial(2, 0b0011, Z8::new(4));
        let cubic = alg.mul(&four, &AlgebraElement::generator(2, 2)).unwrap();
        assert_eq!(cubic, AlgebraElement::monomial(2, 0b0111, Z8::new(4)));
        let quartic = alg
            .mul(
                &AlgebraElement::monomial(2, 0b0111, Z8::new(4)),
                &AlgebraElement::monomial(2, 0b1000, Z8::new(2)),
            )
            .unwrap();
        assert!(quartic.is_zero());
        let odd = SquarefreeAlgebra::new(SpinStructure::from_qvals(2, 1));
        assert_eq!(odd.mul(&x, &x).unwrap(), x.neg());
    }

    #[test]
    fn phi_examples() {
        let alg = SquarefreeAlgebra::new(SpinStructure::from_qvals(1, 0));
        assert_eq!(
            alg.phi_eval(&AlgebraElement::generator(1, 0), cls(1, "01")),
            Ok(Z8::ONE)
        );
        assert_eq!(
            alg.phi_eval(&AlgebraElement::zero(1), cls(1, "11")),
            Ok(Z8::ZERO)
        );
    }

    #[test]
    fn phi_of_generators_matches_indicator() {
        for g in 1..=3 {
            for s in SpinStructure::all(g).step_by(if g == 3 { 7 } else { 1 }) {
                let alg = SquarefreeAlgebra::new(s);
                for c in HomologyF2::all(g).skip(1) {
                    let e = alg.gen_bar(c).unwrap();
                    assert!(e.is_span_normal_form(), "{e:?}");
                    for y in HomologyF2::all(g) {
                        assert_eq!(
                            alg.phi_eval(&e, y).unwrap(),
                            sign_z8(s.q_eval(c)) * i_z(c, y)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn phi_inverse_round_trips() {
        let s = SpinStructure::from_qvals(2, 0b0110);
        let alg = SquarefreeAlgebra::new(s);
        let e = AlgebraElement::from_terms(
            2,
            [
                (0b1, Z8::new(3)),
                (0b1010, Z8::new(2)),
                (0b1110, Z8::new(4)),
                (0, Z8::ONE),
            ],
        )
        .unwrap();
        let back = alg.phi_inverse(|y| alg.phi_eval(&e, y).unwrap());
        assert_eq!(back, e);
    }

    #[test]
    fn structure_of_small_modules() {
        let r = |v: &[i64]| v.iter().map(|&x| Z8::new(x)).collect::<Vec<_>>();
        assert_eq!(z8_structure(&[r(&[2, 0]), r(&[0, 4])]), [0, 1, 1]);
        assert_eq!(z8_structure(&[r(&[2, 4]), r(&[4, 2])]), [0, 2, 0]);
        assert_eq!(z8_structure(&[r(&[1, 1]), r(&[1, 5])]), [1, 0, 1]);
        assert_eq!(z8_structure(&[]), [0, 0, 0]);
        assert_eq!(span_structure(2, &[]), [0, 0, 0]);
    }

    #[test]
    fn genus_one_abelianization() {
        let rep = abelianization_report(&SpinStructure::from_qvals(1, 0)).unwrap();
        assert_eq!(rep.ranks, [2, 1, 0]);
        assert!(rep.matches_expected() && rep.all_normal_form && rep.independence.holds());
        assert_eq!(rep.log2_order, 8);
    }

    #[test]
    fn report_guards() {
        assert!(matches!(
            abelianization_report(&SpinStructure::from_qvals(4, 0)),
            Err(Error::CostGuard(_))
        ));
        assert!(matches!(
            torelli_image_report(&SpinStructure::from_qvals(1, 0)),
            Err(Error::CostGuard(_))
        ));
    }

    #[test]
    fn empty_chain_family_is_zero() {
        let rep = torelli_image_from_chains(&SpinStructure::from_qvals(2, 0), &[]).unwrap();
        assert_eq!((rep.dimension, rep.ranks), (0, [0, 0, 0]));
    }

    #[test]
    fn bounding_pair_image_matches_display() {
        // C1 = a1, C2 = b1, C3 = a1 + a2
        let z = |v: &[i64]| crate::homology::HomologyZ::new(v.to_vec()).unwrap();
        let chain = Chain::new(z(&[1, 0, 0, 0]), z(&[0, 1, 0, 0]), z(&[1, 0, 1, 0])).unwrap();
        for s in SpinStructure::all(2) {
            let alg = SquarefreeAlgebra::new(s);
            let w = TwistWord::single(2, Curve::BoundingPair(chain.clone()), 1).unwrap();
            let got = alg.beta_algebra(&w).unwrap();
            let g = |bits: &str| alg.gen_bar(cls(2, bits)).unwrap();
            let expect = ["1000", "1100", "0110", "0100", "1110", "1010"]
                .iter()
                .fold(AlgebraElement::zero(2), |acc, b| acc.add(&g(b)).unwrap())
                .sub(&g("0010"))
                .unwrap();
            assert_eq!(got, expect);
        }
    }

    fn arb_element(g: usize) -> impl Strategy<Value = AlgebraElement> {
        proptest::collection::vec((0u32..1 << (2 * g), 0i64..8), 0..8).prop_map(move |t| {
            AlgebraElement::from_terms(g, t.into_iter().map(|(m, c)| (m, Z8::new(c)))).unwrap()
        })
    }

    proptest! {
        #[test]
        fn phi_is_a_ring_homomorphism(q in 0u32..16, a in arb_element(2), b in arb_element(2)) {
            let alg = SquarefreeAlgebra::new(SpinStructure::from_qvals(2, q));
            let sum = a.add(&b).unwrap();
            let prod = alg.mul(&a, &b).unwrap();
            for y in HomologyF2::all(2) {
                let (fa, fb) = (alg.phi_eval(&a, y).unwrap(), alg.phi_eval(&b, y).unwrap());
                prop_assert_eq!(alg.phi_eval(&sum, y).unwrap(), fa + fb);
                prop_assert_eq!(alg.phi_eval(&prod, y).unwrap(), fa * fb);
            }
        }

        #[test]
        fn gen_bar_is_order_independent(q in 0u32..64, c in 1u32..64, perm in Just((0..6).collect::<Vec<usize>>()).prop_shuffle()) {
            let alg = SquarefreeAlgebra::new(SpinStructure::from_qvals(3, q));
            let c = HomologyF2::new(3, c);
            prop_assert_eq!(alg.gen_bar_ordered(c, &perm).unwrap(), alg.gen_bar(c).unwrap());
        }

        #[test]
        fn indicator_identities_on_images(q in 0u32..16, a in 1u32..16, b in 1u32..16) {
            let s = SpinStructure::from_qvals(2, q);
            let alg = SquarefreeAlgebra::new(s);
            let (a, b) = (HomologyF2::new(2, a), HomologyF2::new(2, b));
            let ea = alg.gen_bar(a).unwrap();
            prop_assert_eq!(alg.mul(&ea, &ea).unwrap(), ea.scale(sign_z8(s.q_eval(a))));
            for x in CohomologyF2::all(2) {
                let y = crate::homology::pd(x);
                let (ia, ib) = (i_z(a, y), i_z(b, y));
                prop_assert_eq!(ia + ib - Z8::new(2) * ia * ib, i_z(a.add(b), y));
            }
        }
    }
}
