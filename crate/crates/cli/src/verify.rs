//! Seeded verification suites behind `verify`.

use rand::Rng;

use spinsurgery_core::algebra::{beta_algebra, phi_eval, SquarefreeAlgebra};
use spinsurgery_core::homology::pd;
use spinsurgery_core::homomorphisms::{bc_mu, bc_mu_via_link, beta_closed, beta_link};
use spinsurgery_core::invariants::rochlin;
use spinsurgery_core::surgery::{
    build_mapping_torus_link, characteristic_sublink, kirby_blowup, kirby_handle_slide,
};
use spinsurgery_core::{CharacteristicSublink, CohomologyF2, FramedLink, HomologyF2, Result};

use crate::json::{link_from_json, link_to_json};
use crate::random::{self, Rng8};

pub const SUITES: [&str; 7] = [
    "routes",
    "homomorphism",
    "birman-craggs",
    "kirby",
    "phi",
    "bridge",
    "roundtrip",
];

/// Largest genus for suites that expand the squarefree algebra.
pub const ALGEBRA_MAX_GENUS: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail(String),
    Skip(String),
}

#[derive(Clone, Debug)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub checks: usize,
    pub status: Status,
}

impl SuiteOutcome {
    pub fn failed(&self) -> bool {
        matches!(self.status, Status::Fail(_))
    }

    pub fn line(&self) -> String {
        match &self.status {
            Status::Pass => format!("[PASS] {}: {} checks", self.name, self.checks),
            Status::Fail(m) => format!("[FAIL] {}: {} checks, {m}", self.name, self.checks),
            Status::Skip(m) => format!("[SKIP] {}: {m}", self.name),
        }
    }
}

struct Tally {
    checks: usize,
    failure: Option<String>,
}

impl Tally {
    fn new() -> Self {
        Self {
            checks: 0,
            failure: None,
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(what());
        }
    }

    fn finish(self, name: &'static str) -> SuiteOutcome {
        let status = match self.failure {
            None => Status::Pass,
            Some(m) => Status::Fail(m),
        };
        SuiteOutcome {
            name,
            checks: self.checks,
            status,
        }
    }
}

fn skip(name: &'static str, why: String) -> SuiteOutcome {
    SuiteOutcome {
        name,
        checks: 0,
        status: Status::Skip(why),
    }
}

pub fn run_suite(
    name: &str,
    genus: usize,
    samples: usize,
    seed: u64,
) -> Option<Result<SuiteOutcome>> {
    let mut rng = random::rng(seed);
    let r = &mut rng;
    Some(match name {
        "routes" => routes(r, genus, samples),
        "homomorphism" => homomorphism(r, genus, samples),
        "birman-craggs" => birman_craggs(r, genus, samples),
        "kirby" => kirby(r, genus, samples),
        "phi" => phi(r, genus, samples),
        "bridge" => bridge(r, genus, samples),
        "roundtrip" => roundtrip(r, genus, samples),
        _ => return None,
    })
}

fn routes(r: &mut Rng8, g: usize, samples: usize) -> Result<SuiteOutcome> {
    let mut t = Tally::new();
    for _ in 0..samples {
        let w = random::level2_word(r, g, 6);
        let (s, x) = (random::spin(r, g), random::cohomology(r, g));
        let (a, b) = (beta_link(&w, &s, &x)?, beta_closed(&w, &s, &x)?);
        t.check(a == b, || {
            format!("{w}, {s:?}, x={x}: link {a}, closed {b}")
        });
    }
    Ok(t.finish("routes"))
}

fn homomorphism(r: &mut Rng8, g: usize, samples: usize) -> Result<SuiteOutcome> {
    let mut t = Tally::new();
    for _ in 0..samples {
        let (w1, w2) = (random::level2_word(r, g, 4), random::level2_word(r, g, 4));
        let (s, x) = (random::spin(r, g), random::cohomology(r, g));
        let both = beta_link(&w1.compose(&w2)?, &s, &x)?;
        let sum = beta_link(&w1, &s, &x)? + beta_link(&w2, &s, &x)?;
        t.check(both == sum, || {
            format!("β({w1} · {w2}) = {both}, sum {sum}")
        });
        if g >= 2 {
            let (u1, u2) = (random::torelli_word(r, g, 3), random::torelli_word(r, g, 3));
            let both = bc_mu(&u1.compose(&u2)?)?;
            let sum = bc_mu(&u1)? ^ bc_mu(&u2)?;
            t.check(both == sum, || {
                format!("μ({u1} · {u2}) = {both}, sum {sum}")
            });
        }
    }
    Ok(t.finish("homomorphism"))
}

fn birman_craggs(r: &mut Rng8, g: usize, samples: usize) -> Result<SuiteOutcome> {
    if g < 2 {
        return Ok(skip("birman-craggs", "needs genus at least 2".into()));
    }
    let mut t = Tally::new();
    for _ in 0..samples {
        let w = random::torelli_word(r, g, 4);
        let (a, b) = (bc_mu(&w)?, bc_mu_via_link(&w)?);
        t.check(a == b, || format!("{w}: closed {a}, link {b}"));
        let (s, x) = (random::spin(r, g), random::cohomology(r, g));
        let v = beta_link(&w, &s, &x)?;
        t.check((v + v).is_zero(), || {
            format!("{w}: β = {v} is not 2-torsion")
        });
    }
    Ok(t.finish("birman-craggs"))
}

/// Apply `moves` random blow-ups and handle slides, checking the Rochlin
/// value after each one. Returns the number of moves applied.
pub fn random_moves(
    r: &mut Rng8,
    link: &FramedLink,
    sub: &CharacteristicSublink,
    moves: usize,
    t: &mut impl FnMut(bool, &dyn Fn() -> String),
) -> Result<usize> {
    let start = rochlin(link, sub)?;
    let (mut link, mut sub) = (link.clone(), sub.clone());
    let mut applied = 0;
    while applied < moves {
        let n = link.len();
        let next = if n < 2 || r.gen_bool(0.2) {
            kirby_blowup(&link, &sub, if r.gen() { 1 } else { -1 })?
        } else {
            let (i, j) = (r.gen_range(1..n), r.gen_range(1..n));
            let small = |k: usize| (0..n).all(|m| link.linking().get(k, m).abs() <= 1000);
            if i == j || !small(i) || !small(j) {
                continue;
            }
            kirby_handle_slide(&link, &sub, i, j)?
        };
        (link, sub) = next;
        applied += 1;
        let now = rochlin(&link, &sub)?;
        t(now == start, &|| {
            format!("Rochlin {start} became {now} after move {applied}")
        });
    }
    Ok(applied)
}

fn kirby(r: &mut Rng8, g: usize, samples: usize) -> Result<SuiteOutcome> {
    let mut t = Tally::new();
    for _ in 0..samples {
        let w = random::level2_word(r, g, 3);
        let link = build_mapping_torus_link(&w)?;
        let sub = characteristic_sublink(&link, &random::spin(r, g))?;
        let mut check =
            |ok: bool, what: &dyn Fn() -> String| t.check(ok, || format!("{w}: {}", what()));
        random_moves(r, &link, &sub, 8, &mut check)?;
    }
    Ok(t.finish("kirby"))
}

fn phi(r: &mut Rng8, g: usize, samples: usize) -> Result<SuiteOutcome> {
    if g > ALGEBRA_MAX_GENUS {
        return Ok(skip(
            "phi",
            format!("algebra suites run up to genus {ALGEBRA_MAX_GENUS}"),
        ));
    }
    let mut t = Tally::new();
    for _ in 0..samples {
        let alg = SquarefreeAlgebra::new(random::spin(r, g));
        let (a, b) = (random::element(r, g, 6), random::element(r, g, 6));
        let (sum, prod) = (a.add(&b)?, alg.mul(&a, &b)?);
        for y in HomologyF2::all(g) {
            let (pa, pb) = (alg.phi_eval(&a, y)?, alg.phi_eval(&b, y)?);
            t.check(alg.phi_eval(&sum, y)? == pa + pb, || {
                format!("Φ(a + b) at {y}")
            });
            t.check(alg.phi_eval(&prod, y)? == pa * pb, || {
                format!("Φ(a · b) at {y}")
            });
        }
    }
    Ok(t.finish("phi"))
}

fn bridge(r: &mut Rng8, g: usize, samples: usize) -> Result<SuiteOutcome> {
    if g > ALGEBRA_MAX_GENUS {
        return Ok(skip(
            "bridge",
            format!("algebra suites run up to genus {ALGEBRA_MAX_GENUS}"),
        ));
    }
    let mut t = Tally::new();
    for _ in 0..samples {
        let w = random::level2_word(r, g, 4);
        let s = random::spin(r, g);
        let e = beta_algebra(&w, &s)?;
        for x in CohomologyF2::all(g) {
            let (a, b) = (phi_eval(&e, &s, pd(x))?, beta_closed(&w, &s, &x)?);
            t.check(a == b, || {
                format!("{w}, {s:?}, x={x}: algebra {a}, closed {b}")
            });
        }
    }
    Ok(t.finish("bridge"))
}

fn roundtrip(r: &mut Rng8, g: usize, samples: usize) -> Result<SuiteOutcome> {
    let mut t = Tally::new();
    for _ in 0..samples {
        let w = random::level2_word(r, g, 5);
        let link = build_mapping_torus_link(&w)?;
        let text = serde_json::to_string(&link_to_json(&link)).expect("links serialize");
        let back = link_from_json(serde_json::from_str(&text).expect("own output parses"))?;
        t.check(back == link, || format!("{w}: link changed in transit"));
        let s = random::spin(r, g);
        let (a, b) = (
            rochlin(&link, &characteristic_sublink(&link, &s)?)?,
            rochlin(&back, &characteristic_sublink(&back, &s)?)?,
        );
        t.check(a == b, || format!("{w}, {s:?}: Rochlin {a} vs {b}"));
    }
    Ok(t.finish("roundtrip"))
}
