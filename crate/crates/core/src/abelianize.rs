//! Abelianization of finite presentations via Smith normal form.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::word::GenId;

/// Exponent sums: one row per relator, one column per generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationMatrix {
    pub generators: Vec<GenId>,
    pub rows: Vec<Vec<BigInt>>,
}

impl RelationMatrix {
    pub fn from_rows(rows: Vec<Vec<i64>>, ncols: usize) -> Self {
        RelationMatrix {
            generators: (1..=ncols).map(|i| GenId::X(i as u16)).collect(),
            rows: rows
                .into_iter()
                .map(|r| r.into_iter().map(BigInt::from).collect())
                .collect(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.generators.len()
    }
}

pub fn relation_matrix(p: &Presentation) -> RelationMatrix {
    RelationMatrix {
        generators: p.generators.clone(),
        rows: p
            .relators
            .iter()
            .map(|r| {
                p.generators
                    .iter()
                    .map(|gen| BigInt::from(r.word.exponent_sum(gen)))
                    .collect()
            })
            .collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct H1Result {
    pub free_rank: usize,
    /// Invariant factors `d_1 | d_2 | …`, each at least 2.
    pub torsion: Vec<u64>,
}

impl H1Result {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Order of the group, if finite.
    pub fn order(&self) -> Option<u128> {
        if self.free_rank > 0 {
            return None;
        }
        self.torsion
            .iter()
            .try_fold(1u128, |acc, &d| acc.checked_mul(d as u128))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain struct serializes")
    }
}

impl fmt::Display for H1Result {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.free_rank > 0 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Diagonal of the Smith normal form, nonzero entries only, made positive.
pub fn smith_diagonal(m: &RelationMatrix) -> Vec<BigInt> {
    let mut a = m.rows.clone();
    let nr = a.len();
    let nc = m.ncols();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < nr.min(nc) {
        // Smallest nonzero magnitude in the trailing block, ties to lowest (row, col).
        let pivot = (t..nr)
            .flat_map(|i| (t..nc).map(move |j| (i, j)))
            .filter(|&(i, j)| !a[i][j].is_zero())
            .min_by(|&(i1, j1), &(i2, j2)| {
                a[i1][j1]
                    .abs()
                    .cmp(&a[i2][j2].abs())
                    .then((i1, j1).cmp(&(i2, j2)))
            });
        let Some((pi, pj)) = pivot else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }

        let mut dirty = false;
        for i in t + 1..nr {
            if !a[i][t].is_zero() {
                let q = &a[i][t] / &a[t][t];
                let (head, tail) = a.split_at_mut(i);
                for (x, y) in tail[0][t..].iter_mut().zip(&head[t][t..]) {
                    *x -= &q * y;
                }
                dirty |= !a[i][t].is_zero();
            }
        }
        for j in t + 1..nc {
            if !a[t][j].is_zero() {
                let q = &a[t][j] / &a[t][t];
                for row in a[t..].iter_mut() {
                    let y = row[t].clone();
                    row[j] -= &q * &y;
                }
                dirty |= !a[t][j].is_zero();
            }
        }
        if dirty {
            // A smaller remainder appeared; pick a new pivot for this step.
            continue;
        }
        // Enforce divisibility by folding an offending row into row t.
        let bad = (t + 1..nr).find(|&i| (t + 1..nc).any(|j| !(&a[i][j] % &a[t][t]).is_zero()));
        if let Some(i) = bad {
            let (head, tail) = a.split_at_mut(i);
            for (x, y) in head[t][t..].iter_mut().zip(&tail[0][t..]) {
                *x += y;
            }
            continue;
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

pub fn smith_normal_form(m: &RelationMatrix) -> Result<H1Result> {
    let diag = smith_diagonal(m);
    let torsion = diag
        .iter()
        .filter(|d| **d > BigInt::from(1))
        .map(|d| {
            d.to_u64()
                .ok_or_else(|| Error::Overflow(format!("invariant factor {d} exceeds 64 bits")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(H1Result {
        free_rank: m.ncols() - diag.len(),
        torsion,
    })
}

pub fn h1(p: &Presentation) -> Result<H1Result> {
    smith_normal_form(&relation_matrix(p))
}
