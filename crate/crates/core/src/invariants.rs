//! Signature, sublink self-linking, Arf reduction and the Rochlin invariant.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::homology::{arf_form, handle_lattice};
use crate::matrix::IntMatrix;
use crate::ring::Z16;
use crate::surgery::{CharacteristicSublink, ComponentKind, FramedLink, TwistRole};

/// A square symmetric integer matrix, symmetric by construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymmetricIntMatrix {
    n: usize,
    data: Vec<i64>,
}

impl SymmetricIntMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0; n * n],
        }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        let mut m = Self::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            m.data[i * n..(i + 1) * n].copy_from_slice(row);
        }
        for i in 0..n {
            for j in 0..i {
                if m.get(i, j) != m.get(j, i) {
                    return Err(Error::NonSymmetric(i, j));
                }
            }
        }
        Ok(m)
    }

    pub fn from_matrix(m: &IntMatrix) -> Result<Self> {
        if m.rows() != m.cols() {
            return Err(Error::LengthMismatch {
                expected: m.rows(),
                found: m.cols(),
            });
        }
        Self::from_rows(&m.to_rows())
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    /// Set both `(i, j)` and `(j, i)`.
    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.n + j] = v;
        self.data[j * self.n + i] = v;
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.n)
            .map(|i| self.data[i * self.n..(i + 1) * self.n].to_vec())
            .collect()
    }

    pub fn to_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(&self.to_rows()).expect("square rows")
    }

    /// `E M Eᵀ` for an arbitrary square `E` of the same size.
    pub fn congruent(&self, e: &IntMatrix) -> Result<Self> {
        let p = e
            .checked_mul(&self.to_matrix())?
            .checked_mul(&e.transpose())?;
        Self::from_matrix(&p)
    }
}

/// Signature by exact congruence diagonalization over the rationals.
///
/// A nonzero diagonal entry is eliminated on its own; when the remaining
/// diagonal is all zero, an off-diagonal pair `(k, l)` forms a hyperbolic
/// block contributing 0 and is eliminated together.
pub fn signature_exact(m: &SymmetricIntMatrix) -> i64 {
    let n = m.size();
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| BigRational::from_integer(BigInt::from(m.get(i, j))))
                .collect()
        })
        .collect();
    let mut live: Vec<usize> = (0..n).collect();
    let mut sig = 0i64;
    loop {
        if let Some(pos) = live.iter().position(|&k| !a[k][k].is_zero()) {
            let k = live.swap_remove(pos);
            let pivot = a[k][k].clone();
            sig += if pivot.is_positive() { 1 } else { -1 };
            for &i in &live {
                if a[i][k].is_zero() {
                    continue;
                }
                let f = &a[i][k] / &pivot;
                for &j in &live {
                    let t = &f * &a[k][j];
                    a[i][j] -= t;
                }
            }
            continue;
        }
        let pair = live.iter().enumerate().find_map(|(p, &k)| {
            live[p + 1..]
                .iter()
                .find(|&&l| !a[k][l].is_zero())
                .map(|&l| (k, l))
        });
        let Some((k, l)) = pair else { break };
        live.retain(|&x| x != k && x != l);
        let b = a[k][l].clone();
        for &i in &live {
            for &j in &live {
                let t = (&a[i][k] * &a[l][j] + &a[i][l] * &a[k][j]) / &b;
                a[i][j] -= t;
            }
        }
    }
    sig
}

fn check_sizes(link: &FramedLink, sub: &CharacteristicSublink) -> Result<()> {
    if sub.membership().len() != link.len() {
        return Err(Error::LengthMismatch {
            expected: link.len(),
            found: sub.membership().len(),
        });
    }
    Ok(())
}

/// `C·C`: the sum of all linking-matrix entries among sublink components.
pub fn total_linking(link: &FramedLink, sub: &CharacteristicSublink) -> Result<i64> {
    check_sizes(link, sub)?;
    let idx: Vec<usize> = (0..link.len()).filter(|&i| sub.contains(i)).collect();
    let m = link.linking();
    idx.iter()
        .flat_map(|&i| idx.iter().map(move |&j| m.get(i, j)))
        .try_fold(0i64, |acc, v| acc.checked_add(v).ok_or(Error::Overflow))
}

/// Arf invariant of the characteristic sublink of a builder link.
///
/// Squared-twist pairs cobound annuli and cancel; basis and blow-up
/// components split off as unknots; a separating curve contributes the Arf
/// invariant of σ on the handles it cuts off; a bounding pair contributes
/// the Arf invariant of σ on the genus-one piece between its two curves.
pub fn arf_sublink(link: &FramedLink, sub: &CharacteristicSublink) -> Result<bool> {
    check_sizes(link, sub)?;
    if let Some(a) = sub.tracked_arf() {
        return Ok(a);
    }
    if link.is_slid() {
        return Err(Error::Unreducible(
            "slid link without a transported Arf value".into(),
        ));
    }
    let sigma = sub.source_spin();
    let genus = link.genus();
    let mut arf = false;
    // (letter, pair) -> members seen; a pair must be entirely inside the sublink
    let mut groups: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for c in link.components() {
        if !sub.contains(c.id) {
            continue;
        }
        match &c.kind {
            ComponentKind::Dotted => {
                return Err(Error::Unreducible(
                    "dotted circle inside the sublink".into(),
                ));
            }
            ComponentKind::BasisA(_) | ComponentKind::BasisB(_) | ComponentKind::BlowUp => {}
            ComponentKind::Twist(t) => match &t.role {
                TwistRole::Square { pair } => *groups.entry((t.letter, *pair)).or_default() += 1,
                TwistRole::Separating { handles } => {
                    arf ^= arf_form(sigma, &handle_lattice(genus, handles))?;
                }
                TwistRole::BoundingPair { chain, first } => {
                    *groups.entry((t.letter, usize::MAX)).or_default() += 1;
                    if *first {
                        let [c1, c2, _] = chain.curves();
                        arf ^= arf_form(sigma, &[(c1.reduce(), c2.reduce())])?;
                    }
                }
            },
        }
    }
    if let Some(((letter, _), _)) = groups.iter().find(|(_, &count)| count != 2) {
        return Err(Error::Unreducible(format!(
            "letter {letter} has a single curve of a pair in the sublink"
        )));
    }
    Ok(arf)
}

/// `μ(L, C) = Λ − C·C + 8 Arf(C) mod 16`.
pub fn rochlin(link: &FramedLink, sub: &CharacteristicSublink) -> Result<Z16> {
    let lambda = signature_exact(link.linking());
    let cc = total_linking(link, sub)?;
    let arf = arf_sublink(link, sub)? as i64;
    Ok(Z16::new(lambda - cc.rem_euclid(16) + 8 * arf))
}
