//! The Sato maps `β_{σ,x}` and the Birman–Craggs map `μ`, each by two routes.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::conventions::Conventions;
use crate::error::{Error, Result};
use crate::homology::{
    arf_form, handle_lattice, seifert_form, CohomologyF2, HomologyF2, HomologyZ, SpinStructure,
    SurfaceModel,
};
use crate::invariants::{arf_sublink, rochlin, signature_exact, total_linking};
use crate::mapping::{is_level2, is_torelli, word_action, Curve, Letter, TwistWord};
use crate::matrix::IntMatrix;
use crate::ring::{Z16, Z8};
use crate::surgery::{
    build_mapping_torus_link, build_with_conventions, characteristic_sublink,
    CharacteristicSublink, FramedLink,
};

pub type BetaValue = Z8;
pub type MuValue = bool;

/// `C·C` and `Arf(C)` for one characteristic sublink.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SublinkData {
    pub total_linking: i64,
    pub arf: bool,
}

pub fn sublink_data(
    link: &FramedLink,
    sigma: &SpinStructure,
) -> Result<(CharacteristicSublink, SublinkData)> {
    let sub = characteristic_sublink(link, sigma)?;
    let data = SublinkData {
        total_linking: total_linking(link, &sub)?,
        arf: arf_sublink(link, &sub)?,
    };
    Ok((sub, data))
}

/// `(C'·C' − C·C + 8(Arf C − Arf C'))/2 mod 8`, with `C = θ(σ)`, `C' = θ(σ+x)`.
pub fn beta_from_data(sigma: &SublinkData, shifted: &SublinkData) -> Result<Z8> {
    let num =
        shifted.total_linking - sigma.total_linking + 8 * (sigma.arf as i64 - shifted.arf as i64);
    if num % 2 != 0 {
        return Err(Error::OddParity(num));
    }
    Ok(Z8::new(num / 2))
}

/// Everything the link route computes on the way to one value.
#[derive(Clone, Debug)]
pub struct BetaTrace {
    pub link: FramedLink,
    pub sublink: CharacteristicSublink,
    pub shifted_sublink: CharacteristicSublink,
    pub signature: i64,
    pub data: SublinkData,
    pub shifted_data: SublinkData,
    pub value: Z8,
}

pub fn beta_link_traced(
    w: &TwistWord,
    sigma: &SpinStructure,
    x: &CohomologyF2,
) -> Result<BetaTrace> {
    check_genus(w, sigma, x)?;
    let link = build_mapping_torus_link(w)?;
    let (sublink, data) = sublink_data(&link, sigma)?;
    let (shifted_sublink, shifted_data) = sublink_data(&link, &sigma.act(x))?;
    let value = beta_from_data(&data, &shifted_data)?;
    let signature = signature_exact(link.linking());
    Ok(BetaTrace {
        link,
        sublink,
        shifted_sublink,
        signature,
        data,
        shifted_data,
        value,
    })
}

fn check_genus(w: &TwistWord, sigma: &SpinStructure, x: &CohomologyF2) -> Result<()> {
    for g in [sigma.genus(), x.genus()] {
        if g != w.genus() {
            return Err(Error::GenusMismatch {
                left: w.genus(),
                right: g,
            });
        }
    }
    Ok(())
}

/// `β_{σ,x}(w)` read off the surgery presentation of the mapping torus.
pub fn beta_link(w: &TwistWord, sigma: &SpinStructure, x: &CohomologyF2) -> Result<BetaValue> {
    beta_link_with(w, sigma, x, &Conventions::FROZEN)
}

pub fn beta_link_with(
    w: &TwistWord,
    sigma: &SpinStructure,
    x: &CohomologyF2,
    conv: &Conventions,
) -> Result<BetaValue> {
    check_genus(w, sigma, x)?;
    let link = build_with_conventions(w, conv)?;
    let (_, a) = sublink_data(&link, sigma)?;
    let (_, b) = sublink_data(&link, &sigma.act(x))?;
    beta_from_data(&a, &b)
}

/// Arf invariant of σ on the genus-one piece cut off by a chain's bounding
/// pair; zero when the pair is outside the characteristic sublink.
fn bounding_pair_arf(
    sigma: &SpinStructure,
    c1: HomologyF2,
    c2: HomologyF2,
    d: HomologyF2,
) -> Result<bool> {
    if sigma.q_eval(d) {
        return Ok(false);
    }
    arf_form(sigma, &[(c1, c2)])
}

fn letter_closed(letter: &Letter, sigma: &SpinStructure, x: &CohomologyF2) -> Result<Z8> {
    let e = letter.exponent;
    let shifted = sigma.act(x);
    match &letter.curve {
        Curve::Nonseparating(c) => {
            if e % 2 != 0 {
                return Err(Error::UnsupportedLetter(format!(
                    "{letter}: odd power of a nonseparating twist"
                )));
            }
            let c = c.reduce();
            let v = crate::ring::sign_z8(sigma.q_eval(c)) * Z8::new(x.eval(c) as i64);
            Ok(Z8::new(e / 2) * v)
        }
        Curve::Separating(handles) => {
            let lat = handle_lattice(sigma.genus(), handles);
            let diff = arf_form(sigma, &lat)? as i64 - arf_form(&shifted, &lat)? as i64;
            Ok(Z8::new(4 * e * diff))
        }
        Curve::BoundingPair(chain) => {
            let [c1, c2, _] = chain.curves();
            let (c1, c2, d) = (c1.reduce(), c2.reduce(), chain.boundary().reduce());
            let diff = bounding_pair_arf(sigma, c1, c2, d)? as i64
                - bounding_pair_arf(&shifted, c1, c2, d)? as i64;
            Ok(Z8::new(4 * e * diff))
        }
    }
}

/// `β_{σ,x}(w)` summed letter by letter from the closed formulas.
pub fn beta_closed(w: &TwistWord, sigma: &SpinStructure, x: &CohomologyF2) -> Result<BetaValue> {
    check_genus(w, sigma, x)?;
    if !is_level2(w)? {
        return Err(Error::NotLevel2);
    }
    w.letters().iter().map(|l| letter_closed(l, sigma, x)).sum()
}

/// A Torelli generator after transport by a homology automorphism, kept as
/// the mod-2 data the Birman–Craggs value depends on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TorelliLetter {
    /// The symplectic family of the subsurface a separating curve cuts off.
    Separating(Vec<(HomologyF2, HomologyF2)>),
    BoundingPair {
        c1: HomologyF2,
        c2: HomologyF2,
        boundary: HomologyF2,
    },
}

impl TorelliLetter {
    pub fn from_letter(genus: usize, letter: &Letter) -> Result<Self> {
        match &letter.curve {
            Curve::Separating(handles) => Ok(Self::Separating(handle_lattice(genus, handles))),
            Curve::BoundingPair(chain) => {
                let [c1, c2, _] = chain.curves();
                Ok(Self::BoundingPair {
                    c1: c1.reduce(),
                    c2: c2.reduce(),
                    boundary: chain.boundary().reduce(),
                })
            }
            Curve::Nonseparating(_) => Err(Error::UnsupportedLetter(letter.to_string())),
        }
    }

    pub fn transport(&self, f: &IntMatrix) -> Result<Self> {
        let push =
            |c: &HomologyF2| -> Result<HomologyF2> { Ok(HomologyZ::apply(f, &c.lift())?.reduce()) };
        Ok(match self {
            Self::Separating(lat) => Self::Separating(
                lat.iter()
                    .map(|(x, y)| Ok((push(x)?, push(y)?)))
                    .collect::<Result<_>>()?,
            ),
            Self::BoundingPair { c1, c2, boundary } => Self::BoundingPair {
                c1: push(c1)?,
                c2: push(c2)?,
                boundary: push(boundary)?,
            },
        })
    }

    /// Birman–Craggs value for the standard Heegaard embedding.
    pub fn mu(&self, surface: &SurfaceModel) -> Result<MuValue> {
        let form = seifert_form(surface);
        match self {
            Self::Separating(lat) => arf_form(&form, lat),
            Self::BoundingPair { c1, c2, boundary } => {
                bounding_pair_arf(&form, *c1, *c2, *boundary)
            }
        }
    }
}

/// Birman–Craggs `μ(w)` from the closed forms for separating twists and
/// bounding pairs.
pub fn bc_mu(w: &TwistWord) -> Result<MuValue> {
    if !is_torelli(w)? {
        return Err(Error::NotTorelli);
    }
    let surface = SurfaceModel::new(w.genus())?;
    w.letters().iter().try_fold(false, |acc, l| {
        Ok(acc ^ TorelliLetter::from_letter(w.genus(), l)?.mu(&surface)?)
    })
}

/// Birman–Craggs `μ(w)` as `R(M_w, θ(η)) / 8`.
pub fn bc_mu_via_link(w: &TwistWord) -> Result<MuValue> {
    if !is_torelli(w)? {
        return Err(Error::NotTorelli);
    }
    for l in w.letters() {
        TorelliLetter::from_letter(w.genus(), l)?;
    }
    let link = build_mapping_torus_link(w)?;
    let sub = characteristic_sublink(&link, &SpinStructure::eta(w.genus()))?;
    let r = rochlin(&link, &sub)?;
    match r.value() {
        0 => Ok(false),
        8 => Ok(true),
        v => Err(Error::Unreducible(format!(
            "Rochlin value {v} of a Torelli mapping torus is not 0 or 8"
        ))),
    }
}

/// Check `β_{σ,x}(w) ≡ μ(f(w)) − μ(g(w)) mod 2` for `σ = f*η`, `σ+x = g*η`.
pub fn corollary_relation_check(
    w: &TwistWord,
    sigma: &SpinStructure,
    x: &CohomologyF2,
    f: &TwistWord,
    g: &TwistWord,
) -> Result<bool> {
    check_genus(w, sigma, x)?;
    let [letter] = w.letters() else {
        return Err(Error::UnsupportedLetter(format!(
            "expected a single letter, got {} letters",
            w.len()
        )));
    };
    let base = TorelliLetter::from_letter(w.genus(), letter)?;
    let eta = SpinStructure::eta(w.genus());
    let (fm, gm) = (word_action(f)?, word_action(g)?);
    for (target, m, name) in [(*sigma, &fm, "σ"), (sigma.act(x), &gm, "σ+x")] {
        let pulled = eta.pullback(m)?;
        if pulled != target {
            let hint = if pulled.arf() != target.arf() {
                "different Arf orbits"
            } else {
                "same orbit, other map needed"
            };
            return Err(Error::NotExpressible(format!(
                "{name} = {target:?} but the supplied map gives {pulled:?} ({hint})"
            )));
        }
    }
    let beta = beta_link(w, sigma, x)?;
    let left = match beta.value() {
        0 => false,
        4 => true,
        v => {
            return Err(Error::Unreducible(format!(
                "β of a Torelli letter is {v}, not 0 or 4"
            )))
        }
    };
    let surface = SurfaceModel::new(w.genus())?;
    let right = base.transport(&fm)?.mu(&surface)? ^ base.transport(&gm)?.mu(&surface)?;
    Ok(left == right)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateOutcome {
    pub conventions: Conventions,
    /// Link and closed routes agree on every squared twist in the sweep.
    pub beta_agrees: bool,
    /// `V − Vᵀ` equals the intersection matrix.
    pub seifert_compatible: bool,
    /// Framing of the `SEP{1}` component at genus 2.
    pub separating_framing: i64,
    pub comparisons: usize,
    pub first_mismatch: Option<String>,
}

impl CandidateOutcome {
    pub fn admissible(&self) -> bool {
        self.beta_agrees && self.seifert_compatible && self.separating_framing == -1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConventionReport {
    pub candidates: Vec<CandidateOutcome>,
    pub beta_survivors: Vec<Conventions>,
    pub survivors: Vec<Conventions>,
}

impl ConventionReport {
    pub fn unique(&self) -> Option<Conventions> {
        match self.survivors[..] {
            [c] => Some(c),
            _ => None,
        }
    }
}

/// Every primitive class with coefficients in `-2..=2`.
pub fn calibration_classes(genus: usize) -> Vec<HomologyZ> {
    let n = 2 * genus;
    let total = 5usize.pow(n as u32);
    (0..total)
        .map(|mut k| {
            let v = (0..n)
                .map(|_| {
                    let d = (k % 5) as i64 - 2;
                    k /= 5;
                    d
                })
                .collect();
            HomologyZ::new(v).expect("even length")
        })
        .filter(|c| !c.is_zero() && c.is_primitive())
        .collect()
}

fn sweep(conv: &Conventions) -> (usize, Option<String>) {
    let mut comparisons = 0;
    for genus in 1..=2 {
        let spins: Vec<SpinStructure> = SpinStructure::all(genus).collect();
        for c in calibration_classes(genus) {
            for e in [2, -2] {
                let w = TwistWord::single(genus, Curve::Nonseparating(c.clone()), e)
                    .expect("valid letter");
                let outcome = (|| -> Result<Option<String>> {
                    let link = build_with_conventions(&w, conv)?;
                    let data: Vec<SublinkData> = spins
                        .iter()
                        .map(|s| Ok(sublink_data(&link, s)?.1))
                        .collect::<Result<_>>()?;
                    for s in &spins {
                        for x in CohomologyF2::all(genus) {
                            comparisons += 1;
                            let shifted = s.act(&x);
                            let via_link = beta_from_data(
                                &data[s.qvals() as usize],
                                &data[shifted.qvals() as usize],
                            )?;
                            let closed = beta_closed(&w, s, &x)?;
                            if via_link != closed {
                                return Ok(Some(format!(
                                    "{w}, {s:?}, x={x}: link {via_link} vs closed {closed}"
                                )));
                            }
                        }
                    }
                    Ok(None)
                })();
                match outcome {
                    Ok(None) => {}
                    Ok(Some(msg)) => return (comparisons, Some(msg)),
                    Err(err) => return (comparisons, Some(format!("{w}: {err}"))),
                }
            }
        }
    }
    (comparisons, None)
}

/// Sweep all sixteen convention assignments.
pub fn calibrate_conventions() -> Result<ConventionReport> {
    let mut candidates = Vec::new();
    for conv in Conventions::all() {
        let (comparisons, first_mismatch) = sweep(&conv);
        let surface = SurfaceModel::with_conventions(2, &conv)?;
        let v = surface.seifert_matrix();
        let seifert_compatible = (0..4).all(|i| {
            (0..4).all(|j| v.get(i, j) - v.get(j, i) == surface.intersection_matrix().get(i, j))
        });
        let sep = TwistWord::single(2, Curve::Separating(alloc::vec![1]), 1)?;
        let link = build_with_conventions(&sep, &conv)?;
        let last = link.len() - 1;
        candidates.push(CandidateOutcome {
            conventions: conv,
            beta_agrees: first_mismatch.is_none(),
            seifert_compatible,
            separating_framing: link.linking().get(last, last),
            comparisons,
            first_mismatch,
        });
    }
    let beta_survivors = candidates
        .iter()
        .filter(|c| c.beta_agrees)
        .map(|c| c.conventions)
        .collect();
    let survivors: Vec<_> = candidates
        .iter()
        .filter(|c| c.admissible())
        .map(|c| c.conventions)
        .collect();
    Ok(ConventionReport {
        candidates,
        beta_survivors,
        survivors,
    })
}

/// Run the sweep and insist it lands on the frozen assignment.
pub fn verify_frozen_conventions() -> Result<ConventionReport> {
    let report = calibrate_conventions()?;
    match report.unique() {
        Some(c) if c == Conventions::FROZEN => Ok(report),
        Some(c) => Err(Error::Calibration(format!(
            "sweep selects {c:?}, frozen is {:?}",
            Conventions::FROZEN
        ))),
        None => Err(Error::Calibration(format!(
            "{} admissible assignments",
            report.survivors.len()
        ))),
    }
}

/// Rochlin value of the `σ` sublink of a word's link.
pub fn rochlin_of_word(w: &TwistWord, sigma: &SpinStructure) -> Result<Z16> {
    let link = build_mapping_torus_link(w)?;
    let sub = characteristic_sublink(&link, sigma)?;
    rochlin(&link, &sub)
}
