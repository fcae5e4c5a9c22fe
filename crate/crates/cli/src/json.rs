//! JSON forms of links, sublinks, algebra elements and reports.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use spinsurgery_core::algebra::{AlgebraElement, StructureReport, TorelliImageReport};
use spinsurgery_core::homomorphisms::{BetaTrace, ConventionReport, SublinkData};
use spinsurgery_core::invariants::SymmetricIntMatrix;
use spinsurgery_core::mapping::Chain;
use spinsurgery_core::surgery::{TwistCurve, TwistRole};
use spinsurgery_core::{
    CharacteristicSublink, Component, ComponentKind, Conventions, Error, FramedLink, HomologyZ,
    Result,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConventionsJson {
    pub seifert_transposed: bool,
    pub dual_linking: bool,
    pub sval_offset: bool,
    pub twist_sign: i8,
}

impl From<&Conventions> for ConventionsJson {
    fn from(c: &Conventions) -> Self {
        Self {
            seifert_transposed: c.seifert_transposed,
            dual_linking: c.dual_linking,
            sval_offset: c.sval_offset,
            twist_sign: c.twist_sign,
        }
    }
}

impl From<ConventionsJson> for Conventions {
    fn from(c: ConventionsJson) -> Self {
        Conventions {
            seifert_transposed: c.seifert_transposed,
            dual_linking: c.dual_linking,
            sval_offset: c.sval_offset,
            twist_sign: c.twist_sign,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "role", rename_all = "snake_case")]
pub enum RoleJson {
    Square { pair: usize },
    Separating { handles: Vec<usize> },
    BoundingPair { chain: [Vec<i64>; 3], first: bool },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum KindJson {
    Dotted,
    BasisA {
        handle: usize,
    },
    BasisB {
        handle: usize,
    },
    Twist {
        level: usize,
        class: Vec<i64>,
        letter: usize,
        orientation: i8,
        sign: i8,
        #[serde(flatten)]
        role: RoleJson,
    },
    BlowUp,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentJson {
    pub id: usize,
    pub framing: i64,
    #[serde(flatten)]
    pub kind: KindJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkJson {
    pub genus: usize,
    pub conventions: ConventionsJson,
    pub letters: usize,
    #[serde(default)]
    pub slid: bool,
    pub components: Vec<ComponentJson>,
    pub linking: Vec<Vec<i64>>,
}

fn kind_to_json(kind: &ComponentKind) -> KindJson {
    match kind {
        ComponentKind::Dotted => KindJson::Dotted,
        ComponentKind::BasisA(i) => KindJson::BasisA { handle: *i },
        ComponentKind::BasisB(i) => KindJson::BasisB { handle: *i },
        ComponentKind::BlowUp => KindJson::BlowUp,
        ComponentKind::Twist(t) => KindJson::Twist {
            level: t.level,
            class: t.class.coeffs().to_vec(),
            letter: t.letter,
            orientation: t.orientation,
            sign: t.sign,
            role: match &t.role {
                TwistRole::Square { pair } => RoleJson::Square { pair: *pair },
                TwistRole::Separating { handles } => RoleJson::Separating {
                    handles: handles.clone(),
                },
                TwistRole::BoundingPair { chain, first } => RoleJson::BoundingPair {
                    chain: chain.curves().clone().map(|c| c.coeffs().to_vec()),
                    first: *first,
                },
            },
        },
    }
}

fn kind_from_json(kind: KindJson) -> Result<ComponentKind> {
    Ok(match kind {
        KindJson::Dotted => ComponentKind::Dotted,
        KindJson::BasisA { handle } => ComponentKind::BasisA(handle),
        KindJson::BasisB { handle } => ComponentKind::BasisB(handle),
        KindJson::BlowUp => ComponentKind::BlowUp,
        KindJson::Twist {
            level,
            class,
            letter,
            orientation,
            sign,
            role,
        } => ComponentKind::Twist(TwistCurve {
            level,
            class: HomologyZ::new(class)?,
            letter,
            orientation,
            sign,
            role: match role {
                RoleJson::Square { pair } => TwistRole::Square { pair },
                RoleJson::Separating { handles } => TwistRole::Separating { handles },
                RoleJson::BoundingPair {
                    chain: [c1, c2, c3],
                    first,
                } => TwistRole::BoundingPair {
                    chain: Chain::new(
                        HomologyZ::new(c1)?,
                        HomologyZ::new(c2)?,
                        HomologyZ::new(c3)?,
                    )?,
                    first,
                },
            },
        }),
    })
}

pub fn link_to_json(link: &FramedLink) -> LinkJson {
    LinkJson {
        genus: link.genus(),
        conventions: link.conventions().into(),
        letters: link.letter_count(),
        slid: link.is_slid(),
        components: link
            .components()
            .iter()
            .map(|c| ComponentJson {
                id: c.id,
                framing: c.framing,
                kind: kind_to_json(&c.kind),
            })
            .collect(),
        linking: link.linking().to_rows(),
    }
}

pub fn link_from_json(j: LinkJson) -> Result<FramedLink> {
    if j.genus == 0 {
        return Err(Error::InvalidGenus(0));
    }
    let components = j
        .components
        .into_iter()
        .map(|c| {
            Ok(Component {
                id: c.id,
                framing: c.framing,
                kind: kind_from_json(c.kind)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let linking = SymmetricIntMatrix::from_rows(&j.linking)?;
    FramedLink::from_parts(
        j.genus,
        j.conventions.into(),
        components,
        linking,
        j.letters,
        j.slid,
    )
}

/// Membership as a bit-string in component order.
pub fn membership_bits(sub: &CharacteristicSublink) -> String {
    sub.membership()
        .iter()
        .map(|&b| if b { '1' } else { '0' })
        .collect()
}

pub fn parse_membership(text: &str) -> Result<Vec<bool>> {
    text.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(Error::InvalidBits(text.to_string())),
        })
        .collect()
}

pub fn element_to_json(e: &AlgebraElement) -> Value {
    let terms: Vec<Value> = e
        .terms()
        .map(|(mask, coeff)| {
            let monomial: Vec<usize> = (0..32).filter(|k| mask >> k & 1 == 1).collect();
            json!({ "monomial": monomial, "coeff": coeff.value() })
        })
        .collect();
    Value::Array(terms)
}

pub fn element_from_json(genus: usize, v: &Value) -> Result<AlgebraElement> {
    let bad = || Error::InvalidBits(v.to_string());
    let terms = v.as_array().ok_or_else(bad)?;
    let mut out = Vec::with_capacity(terms.len());
    for t in terms {
        let mut mask = 0u32;
        for k in t["monomial"].as_array().ok_or_else(bad)? {
            let k = k
                .as_u64()
                .filter(|&k| (k as usize) < 2 * genus)
                .ok_or_else(bad)?;
            mask |= 1 << k;
        }
        let coeff = t["coeff"].as_i64().ok_or_else(bad)?;
        out.push((mask, spinsurgery_core::Z8::new(coeff)));
    }
    AlgebraElement::from_terms(genus, out)
}

fn sublink_data_json(d: &SublinkData) -> Value {
    json!({ "total_linking": d.total_linking, "arf": d.arf as u8 })
}

pub fn trace_to_json(t: &BetaTrace) -> Value {
    json!({
        "link": link_to_json(&t.link),
        "sublink": membership_bits(&t.sublink),
        "shifted_sublink": membership_bits(&t.shifted_sublink),
        "signature": t.signature,
        "sigma": sublink_data_json(&t.data),
        "shifted": sublink_data_json(&t.shifted_data),
        "value": t.value.value(),
    })
}

fn certificate_json(r: &StructureReport) -> Value {
    let c = &r.independence;
    json!({
        "basis_family": c.basis_family,
        "pair_family": c.pair_family,
        "triple_family": c.triple_family,
        "injective": c.injective,
        "holds": c.holds(),
    })
}

pub fn structure_report_json(r: &StructureReport) -> Value {
    json!({
        "genus": r.genus,
        "spin": format!("{:?}", r.sigma),
        "generators": r.generators,
        "ranks": { "order8": r.ranks[0], "order4": r.ranks[1], "order2": r.ranks[2] },
        "expected": { "order8": r.expected[0], "order4": r.expected[1], "order2": r.expected[2] },
        "matches_expected": r.matches_expected(),
        "log2_order": r.log2_order,
        "all_normal_form": r.all_normal_form,
        "independence": certificate_json(r),
    })
}

pub fn torelli_report_json(r: &TorelliImageReport) -> Value {
    json!({
        "genus": r.genus,
        "spin": format!("{:?}", r.sigma),
        "chains": r.chains,
        "distinct_generators": r.distinct_generators,
        "all_two_torsion": r.all_two_torsion,
        "all_normal_form": r.all_normal_form,
        "ranks": { "order8": r.ranks[0], "order4": r.ranks[1], "order2": r.ranks[2] },
        "dimension": r.dimension,
        "special_chains": r.special_chains,
        "special_formula_holds": r.special_formula_holds,
    })
}

pub fn convention_report_json(r: &ConventionReport) -> Value {
    let candidates: Vec<Value> = r
        .candidates
        .iter()
        .map(|c| {
            json!({
                "conventions": ConventionsJson::from(&c.conventions),
                "beta_agrees": c.beta_agrees,
                "seifert_compatible": c.seifert_compatible,
                "separating_framing": c.separating_framing,
                "admissible": c.admissible(),
                "comparisons": c.comparisons,
                "first_mismatch": c.first_mismatch,
            })
        })
        .collect();
    json!({
        "candidates": candidates,
        "beta_survivors": r.beta_survivors.iter().map(ConventionsJson::from).collect::<Vec<_>>(),
        "survivors": r.survivors.iter().map(ConventionsJson::from).collect::<Vec<_>>(),
        "frozen": r.unique().as_ref().map(ConventionsJson::from),
    })
}
