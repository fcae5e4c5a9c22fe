//! Framed-link presentations of mapping tori at the linking-matrix level.
//!
//! Component order is fixed: the dotted circle, then `BasisA(i)`, `BasisB(i)`
//! for each handle, then one component per twist occurrence in application
//! order (lowest level first), then any blow-up components.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::conventions::Conventions;
use crate::error::{Error, Result};
use crate::gf2::{self, Solution};
use crate::homology::{HomologyZ, SpinStructure, SurfaceModel};
use crate::invariants::{arf_sublink, total_linking, SymmetricIntMatrix};
use crate::mapping::{is_level2, Chain, Curve, TwistWord};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TwistRole {
    /// One of the two pushoffs of a squared twist, `pair` counting within the letter.
    Square {
        pair: usize,
    },
    Separating {
        handles: Vec<usize>,
    },
    /// `first` marks `d_1`, the curve twisted positively in `t_{d_1} t_{d_2}^{-1}`.
    BoundingPair {
        chain: Chain,
        first: bool,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistCurve {
    pub level: usize,
    pub class: HomologyZ,
    /// Index of the source letter in application order.
    pub letter: usize,
    pub orientation: i8,
    /// Sign of this single Dehn twist.
    pub sign: i8,
    pub role: TwistRole,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComponentKind {
    Dotted,
    BasisA(usize),
    BasisB(usize),
    Twist(TwistCurve),
    /// A `±1`-framed unknot added by a blow-up.
    BlowUp,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub id: usize,
    pub kind: ComponentKind,
    pub framing: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FramedLink {
    genus: usize,
    conventions: Conventions,
    components: Vec<Component>,
    linking: SymmetricIntMatrix,
    letters: usize,
    slid: bool,
}

impl FramedLink {
    /// Assemble a link from parts, checking that framings match the diagonal.
    pub fn from_parts(
        genus: usize,
        conventions: Conventions,
        components: Vec<Component>,
        linking: SymmetricIntMatrix,
        letters: usize,
        slid: bool,
    ) -> Result<Self> {
        if linking.size() != components.len() {
            return Err(Error::LengthMismatch {
                expected: components.len(),
                found: linking.size(),
            });
        }
        for (i, c) in components.iter().enumerate() {
            if c.id != i {
                return Err(Error::IndexOutOfRange {
                    index: c.id,
                    len: components.len(),
                });
            }
            if linking.get(i, i) != c.framing {
                return Err(Error::InvalidMove(format!(
                    "component {i} framing disagrees with the matrix diagonal"
                )));
            }
        }
        Ok(Self {
            genus,
            conventions,
            components,
            linking,
            letters,
            slid,
        })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn conventions(&self) -> &Conventions {
        &self.conventions
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn linking(&self) -> &SymmetricIntMatrix {
        &self.linking
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Number of word letters the twist curves came from.
    pub fn letter_count(&self) -> usize {
        self.letters
    }

    /// True once a handle slide has changed the components.
    pub fn is_slid(&self) -> bool {
        self.slid
    }

    pub fn twist_curves(&self) -> impl Iterator<Item = (usize, &TwistCurve)> {
        self.components.iter().filter_map(|c| match &c.kind {
            ComponentKind::Twist(t) => Some((c.id, t)),
            _ => None,
        })
    }

    fn max_level(&self) -> usize {
        self.twist_curves().map(|(_, t)| t.level).max().unwrap_or(0)
    }

    fn is_builder_output(&self) -> bool {
        !self.slid
            && !self
                .components
                .iter()
                .any(|c| c.kind == ComponentKind::BlowUp)
    }
}

fn base_components(genus: usize) -> Vec<Component> {
    let mut out = vec![Component {
        id: 0,
        kind: ComponentKind::Dotted,
        framing: 0,
    }];
    for i in 1..=genus {
        out.push(Component {
            id: 2 * i - 1,
            kind: ComponentKind::BasisA(i),
            framing: 0,
        });
        out.push(Component {
            id: 2 * i,
            kind: ComponentKind::BasisB(i),
            framing: 0,
        });
    }
    out
}

/// Linking of a twist curve with the basis components of handle `h` (1-based).
fn basis_linking(t: &TwistCurve, h: usize, conventions: &Conventions) -> (i64, i64) {
    let (ca, cb) = (t.class.coeffs()[2 * h - 2], t.class.coeffs()[2 * h - 1]);
    let o = t.orientation as i64;
    if conventions.dual_linking {
        // c·a_h = -c_{b_h}, c·b_h = c_{a_h}
        (-o * cb, o * ca)
    } else {
        (o * ca, o * cb)
    }
}

/// Linking of two twist curves with `lower` strictly below `upper`.
fn twist_linking(surface: &SurfaceModel, lower: &TwistCurve, upper: &TwistCurve) -> Result<i64> {
    let o = (lower.orientation * upper.orientation) as i64;
    Ok(o * surface.seifert(&lower.class, &upper.class)?)
}

fn assemble(
    genus: usize,
    conventions: Conventions,
    twists: Vec<TwistCurve>,
    letters: usize,
) -> Result<FramedLink> {
    let surface = SurfaceModel::with_conventions(genus, &conventions)?;
    let mut components = base_components(genus);
    let base = components.len();
    let n = base + twists.len();
    let mut m = SymmetricIntMatrix::zeros(n);
    for (k, t) in twists.iter().enumerate() {
        let id = base + k;
        let framing = surface
            .seifert(&t.class, &t.class)?
            .checked_add(conventions.twist_sign as i64 * t.sign as i64)
            .ok_or(Error::Overflow)?;
        m.set(id, id, framing);
        for h in 1..=genus {
            let (la, lb) = basis_linking(t, h, &conventions);
            m.set(id, 2 * h - 1, la);
            m.set(id, 2 * h, lb);
        }
        for (k2, lower) in twists[..k].iter().enumerate() {
            m.set(id, base + k2, twist_linking(&surface, lower, t)?);
        }
        components.push(Component {
            id,
            kind: ComponentKind::Twist(t.clone()),
            framing,
        });
    }
    Ok(FramedLink {
        genus,
        conventions,
        components,
        linking: m,
        letters,
        slid: false,
    })
}

pub fn build_mapping_torus_link(w: &TwistWord) -> Result<FramedLink> {
    build_with_conventions(w, &Conventions::FROZEN)
}

pub fn build_with_conventions(w: &TwistWord, conventions: &Conventions) -> Result<FramedLink> {
    if !is_level2(w)? {
        return Err(Error::NotLevel2);
    }
    let mut twists = Vec::new();
    let mut level = 0;
    let mut push = |class: HomologyZ, letter: usize, orientation: i8, sign: i8, role: TwistRole| {
        level += 1;
        twists.push(TwistCurve {
            level,
            class,
            letter,
            orientation,
            sign,
            role,
        });
    };
    for (idx, letter) in w.application_order().enumerate() {
        let e = letter.exponent;
        match &letter.curve {
            Curve::Nonseparating(c) => {
                if e % 2 != 0 {
                    return Err(Error::UnsupportedLetter(format!(
                        "{letter}: odd power of a nonseparating twist"
                    )));
                }
                let sign = e.signum() as i8;
                for k in 0..e.unsigned_abs() as usize {
                    let orientation = if k % 2 == 0 { 1 } else { -1 };
                    push(
                        c.clone(),
                        idx,
                        orientation,
                        sign,
                        TwistRole::Square { pair: k / 2 },
                    );
                }
            }
            Curve::Separating(handles) => {
                let role = TwistRole::Separating {
                    handles: handles.clone(),
                };
                push(HomologyZ::zero(w.genus()), idx, 1, e.signum() as i8, role);
            }
            Curve::BoundingPair(chain) => {
                // (t_{d_1} t_{d_2}^{-1})^e: the negative twist always acts first.
                let d = chain.boundary().clone();
                let positive_first = e < 0;
                let lower = TwistRole::BoundingPair {
                    chain: chain.clone(),
                    first: positive_first,
                };
                let upper = TwistRole::BoundingPair {
                    chain: chain.clone(),
                    first: !positive_first,
                };
                push(d.clone(), idx, 1, -1, lower);
                push(d, idx, -1, 1, upper);
            }
        }
    }
    assemble(w.genus(), *conventions, twists, w.len())
}

/// Stack `upper`'s twist curves above `lower`'s: the link of `w_upper ∘ w_lower`.
pub fn compose_tangles(lower: &FramedLink, upper: &FramedLink) -> Result<FramedLink> {
    if lower.genus != upper.genus {
        return Err(Error::GenusMismatch {
            left: lower.genus,
            right: upper.genus,
        });
    }
    if lower.conventions != upper.conventions {
        return Err(Error::InvalidMove(
            "links were built under different conventions".into(),
        ));
    }
    if !lower.is_builder_output() || !upper.is_builder_output() {
        return Err(Error::InvalidMove(
            "only builder links can be stacked".into(),
        ));
    }
    let surface = SurfaceModel::with_conventions(lower.genus, &lower.conventions)?;
    let base = 1 + 2 * lower.genus;
    let n1 = lower.len();
    let n2 = upper.len() - base;
    let mut m = SymmetricIntMatrix::zeros(n1 + n2);
    for i in 0..n1 {
        for j in 0..=i {
            m.set(i, j, lower.linking.get(i, j));
        }
    }
    let shift = lower.max_level();
    let mut components = lower.components.clone();
    for k in 0..n2 {
        let src = base + k;
        let id = n1 + k;
        let ComponentKind::Twist(mut t) = upper.components[src].kind.clone() else {
            return Err(Error::InvalidMove(
                "unexpected component above the base".into(),
            ));
        };
        t.level += shift;
        t.letter += lower.letters;
        for b in 0..base {
            m.set(id, b, upper.linking.get(src, b));
        }
        for k2 in 0..=k {
            m.set(id, n1 + k2, upper.linking.get(src, base + k2));
        }
        for (lid, lt) in lower.twist_curves() {
            m.set(id, lid, twist_linking(&surface, lt, &t)?);
        }
        components.push(Component {
            id,
            kind: ComponentKind::Twist(t),
            framing: upper.components[src].framing,
        });
    }
    Ok(FramedLink {
        genus: lower.genus,
        conventions: lower.conventions,
        components,
        linking: m,
        letters: lower.letters + upper.letters,
        slid: false,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacteristicSublink {
    membership: Vec<bool>,
    source_spin: SpinStructure,
    tracked_arf: Option<bool>,
}

impl CharacteristicSublink {
    pub fn membership(&self) -> &[bool] {
        &self.membership
    }

    pub fn contains(&self, i: usize) -> bool {
        self.membership[i]
    }

    pub fn source_spin(&self) -> &SpinStructure {
        &self.source_spin
    }

    /// Arf value carried through handle slides, when known.
    pub fn tracked_arf(&self) -> Option<bool> {
        self.tracked_arf
    }

    /// Build from an explicit membership vector, checking it is characteristic.
    pub fn from_membership(link: &FramedLink, membership: Vec<bool>) -> Result<Self> {
        if membership.len() != link.len() {
            return Err(Error::LengthMismatch {
                expected: link.len(),
                found: membership.len(),
            });
        }
        let mut svals = 0u32;
        for c in &link.components {
            match c.kind {
                ComponentKind::Dotted if membership[c.id] => {
                    return Err(Error::NotCharacteristic(c.id))
                }
                ComponentKind::BasisA(i) => svals |= (membership[c.id] as u32) << (2 * i - 2),
                ComponentKind::BasisB(i) => svals |= (membership[c.id] as u32) << (2 * i - 1),
                _ => {}
            }
        }
        check_characteristic(&link.linking, &membership)?;
        let source_spin = SpinStructure::from_svals(link.genus, svals, &link.conventions);
        Ok(Self {
            membership,
            source_spin,
            tracked_arf: None,
        })
    }
}

fn check_characteristic(m: &SymmetricIntMatrix, membership: &[bool]) -> Result<()> {
    for i in 0..m.size() {
        let s = (0..m.size())
            .filter(|&j| membership[j])
            .fold(0i64, |acc, j| acc ^ (m.get(i, j) & 1));
        if s != m.get(i, i) & 1 {
            return Err(Error::NotCharacteristic(i));
        }
    }
    Ok(())
}

/// The characteristic sublink `θ(σ)`: basis memberships seeded from σ, twist
/// and blow-up memberships solved from the characteristic equations.
pub fn characteristic_sublink(
    link: &FramedLink,
    sigma: &SpinStructure,
) -> Result<CharacteristicSublink> {
    if sigma.genus() != link.genus {
        return Err(Error::GenusMismatch {
            left: link.genus,
            right: sigma.genus(),
        });
    }
    if link.slid {
        return Err(Error::InvalidMove(
            "seeded sublinks need an unslid link; transport through the move instead".into(),
        ));
    }
    let n = link.len();
    let svals = sigma.svals(&link.conventions);
    let mut membership = vec![false; n];
    let mut unknowns = Vec::new();
    for c in &link.components {
        match c.kind {
            ComponentKind::Dotted => {}
            ComponentKind::BasisA(i) => membership[c.id] = svals >> (2 * i - 2) & 1 == 1,
            ComponentKind::BasisB(i) => membership[c.id] = svals >> (2 * i - 1) & 1 == 1,
            _ => unknowns.push(c.id),
        }
    }
    let m = &link.linking;
    let odd = |i: usize, j: usize| m.get(i, j) & 1 == 1;
    let rows: Vec<Vec<bool>> = unknowns
        .iter()
        .map(|&i| unknowns.iter().map(|&j| odd(i, j)).collect())
        .collect();
    let rhs: Vec<bool> = unknowns
        .iter()
        .map(|&i| {
            (0..n)
                .filter(|&j| membership[j])
                .fold(odd(i, i), |acc, j| acc ^ odd(i, j))
        })
        .collect();
    match gf2::solve(unknowns.len(), &rows, &rhs) {
        Solution::Unique(w) => {
            for (&i, b) in unknowns.iter().zip(w) {
                membership[i] = b;
            }
        }
        Solution::Inconsistent => return Err(Error::InconsistentSystem),
        Solution::Underdetermined { rank } => {
            return Err(Error::UnderdeterminedSystem {
                rank,
                unknowns: unknowns.len(),
            })
        }
    }
    check_characteristic(m, &membership).map_err(|_| Error::InconsistentSystem)?;
    Ok(CharacteristicSublink {
        membership,
        source_spin: *sigma,
        tracked_arf: None,
    })
}

/// Add an unlinked unknot with framing `sign` (±1), placed in the sublink.
pub fn kirby_blowup(
    link: &FramedLink,
    sub: &CharacteristicSublink,
    sign: i64,
) -> Result<(FramedLink, CharacteristicSublink)> {
    if sign.abs() != 1 {
        return Err(Error::InvalidMove(format!(
            "blow-up framing must be ±1, got {sign}"
        )));
    }
    if sub.membership.len() != link.len() {
        return Err(Error::LengthMismatch {
            expected: link.len(),
            found: sub.membership.len(),
        });
    }
    let n = link.len();
    let mut m = SymmetricIntMatrix::zeros(n + 1);
    for i in 0..n {
        for j in 0..=i {
            m.set(i, j, link.linking.get(i, j));
        }
    }
    m.set(n, n, sign);
    let mut components = link.components.clone();
    components.push(Component {
        id: n,
        kind: ComponentKind::BlowUp,
        framing: sign,
    });
    let mut membership = sub.membership.clone();
    membership.push(true);
    let out = FramedLink {
        components,
        linking: m,
        ..link.clone()
    };
    Ok((
        out,
        CharacteristicSublink {
            membership,
            ..sub.clone()
        },
    ))
}

/// Slide component `i` over component `j`: `M ↦ E M Eᵀ` with `E` adding row
/// `j` to row `i`. The membership of `j` toggles iff `i` is in the sublink,
/// and the Arf value is carried along.
pub fn kirby_handle_slide(
    link: &FramedLink,
    sub: &CharacteristicSublink,
    i: usize,
    j: usize,
) -> Result<(FramedLink, CharacteristicSublink)> {
    let n = link.len();
    for idx in [i, j] {
        if idx >= n {
            return Err(Error::IndexOutOfRange { index: idx, len: n });
        }
        if link.components[idx].kind == ComponentKind::Dotted {
            return Err(Error::InvalidMove(
                "the dotted circle cannot take part in a slide".into(),
            ));
        }
    }
    if i == j {
        return Err(Error::InvalidMove(
            "a component cannot slide over itself".into(),
        ));
    }
    if sub.membership.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: sub.membership.len(),
        });
    }
    let arf = arf_sublink(link, sub)?;
    let before = total_linking(link, sub)?;

    let old = &link.linking;
    let mut m = old.clone();
    for k in 0..n {
        if k == i {
            continue;
        }
        let v = old
            .get(i, k)
            .checked_add(old.get(j, k))
            .ok_or(Error::Overflow)?;
        m.set(i, k, v);
    }
    let diag = old
        .get(j, j)
        .checked_add(old.get(i, j).checked_mul(2).ok_or(Error::Overflow)?)
        .and_then(|v| v.checked_add(old.get(i, i)))
        .ok_or(Error::Overflow)?;
    m.set(i, i, diag);

    let mut membership = sub.membership.clone();
    if membership[i] {
        membership[j] = !membership[j];
    }
    check_characteristic(&m, &membership).map_err(|_| Error::InconsistentSystem)?;

    let mut components = link.components.clone();
    components[i].framing = diag;
    let out = FramedLink {
        components,
        linking: m,
        slid: true,
        ..link.clone()
    };
    let moved = CharacteristicSublink {
        membership,
        ..sub.clone()
    };
    let after = total_linking(&out, &moved)?;
    let delta = after - before;
    if delta.rem_euclid(8) != 0 {
        return Err(Error::InvalidMove(format!(
            "sublink self-linking changed by {delta}, not a multiple of 8"
        )));
    }
    let tracked = arf ^ (delta.div_euclid(8).rem_euclid(2) == 1);
    Ok((
        out,
        CharacteristicSublink {
            tracked_arf: Some(tracked),
            ..moved
        },
    ))
}
