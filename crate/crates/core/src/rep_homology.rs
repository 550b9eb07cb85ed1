//! Action on `H_1(N_g)` in the basis of the crosscap classes `e_i = [x_i]`.
//!
//! Over the two-element field the generator matrices are built directly from
//! the transvection formula `v ↦ v + ⟨v, c⟩ c` for a twist about a curve of
//! class `c`, the mod-2 intersection form being the identity in this basis.
//! Over the integers there is no orientation-free formula, so those matrices
//! come from abelianizing the free-group images of [`crate::rep_pi1`].
//! Integer matrices are compared modulo the lattice `L = Z·(2, …, 2)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::presentation::dictionary;
use crate::rep_pi1::Pi1Rep;
use crate::word::{GenId, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Coeff {
    Z,
    F2,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Entries {
    /// Row-major integer entries.
    Z(Vec<Vec<i128>>),
    /// Row `i` has bit `j` set iff entry `(i, j)` is 1.
    F2(Vec<u64>),
}

/// Matrix whose column `j` is the image of `e_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomologyMatrix {
    g: usize,
    entries: Entries,
}

impl HomologyMatrix {
    pub fn identity(g: usize, coeff: Coeff) -> Self {
        assert!(g <= 64, "genus above 64 is not supported");
        let entries = match coeff {
            Coeff::Z => Entries::Z(
                (0..g)
                    .map(|i| (0..g).map(|j| i128::from(i == j)).collect())
                    .collect(),
            ),
            Coeff::F2 => Entries::F2((0..g).map(|i| 1u64 << i).collect()),
        };
        HomologyMatrix { g, entries }
    }

    /// Builds a matrix from its columns.
    pub fn from_int_columns(cols: &[Vec<i64>], coeff: Coeff) -> Self {
        let g = cols.len();
        let mut m = HomologyMatrix::identity(g, coeff);
        for i in 0..g {
            for (j, col) in cols.iter().enumerate() {
                m.set(i, j, col[i] as i128);
            }
        }
        m
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    pub fn coeff(&self) -> Coeff {
        match self.entries {
            Entries::Z(_) => Coeff::Z,
            Entries::F2(_) => Coeff::F2,
        }
    }

    pub fn get(&self, i: usize, j: usize) -> i128 {
        match &self.entries {
            Entries::Z(m) => m[i][j],
            Entries::F2(rows) => i128::from((rows[i] >> j) & 1 == 1),
        }
    }

    fn set(&mut self, i: usize, j: usize, v: i128) {
        match &mut self.entries {
            Entries::Z(m) => m[i][j] = v,
            Entries::F2(rows) => {
                if v.rem_euclid(2) == 1 {
                    rows[i] |= 1 << j;
                } else {
                    rows[i] &= !(1 << j);
                }
            }
        }
    }

    pub fn mul(&self, other: &HomologyMatrix) -> Result<HomologyMatrix> {
        if self.g != other.g {
            return Err(Error::GenusMismatch {
                left: self.g,
                right: other.g,
            });
        }
        let entries = match (&self.entries, &other.entries) {
            (Entries::F2(a), Entries::F2(b)) => Entries::F2(
                a.iter()
                    .map(|&row| {
                        (0..self.g)
                            .filter(|&j| (row >> j) & 1 == 1)
                            .fold(0u64, |acc, j| acc ^ b[j])
                    })
                    .collect(),
            ),
            (Entries::Z(a), Entries::Z(b)) => {
                let mut out = vec![vec![0i128; self.g]; self.g];
                for i in 0..self.g {
                    for k in 0..self.g {
                        if a[i][k] == 0 {
                            continue;
                        }
                        for j in 0..self.g {
                            let t = a[i][k]
                                .checked_mul(b[k][j])
                                .and_then(|t| out[i][j].checked_add(t))
                                .ok_or_else(|| Error::Overflow("homology matrix product".into()))?;
                            out[i][j] = t;
                        }
                    }
                }
                Entries::Z(out)
            }
            _ => return Err(Error::Domain("coefficient mismatch".into())),
        };
        Ok(HomologyMatrix { g: self.g, entries })
    }

    pub fn is_identity(&self) -> bool {
        *self == HomologyMatrix::identity(self.g, self.coeff())
    }

    /// Over F2: identity. Over Z: every column of `M − I` lies in `L`.
    pub fn is_identity_mod_lattice(&self) -> bool {
        match self.coeff() {
            Coeff::F2 => self.is_identity(),
            Coeff::Z => (0..self.g).all(|j| {
                let col: Vec<i128> = (0..self.g)
                    .map(|i| self.get(i, j) - i128::from(i == j))
                    .collect();
                in_lattice(&col)
            }),
        }
    }

    /// Over Z: `M` maps the generator `(2, …, 2)` of `L` into `L`.
    pub fn preserves_lattice(&self) -> bool {
        let col: Vec<i128> = (0..self.g)
            .map(|i| (0..self.g).map(|j| 2 * self.get(i, j)).sum())
            .collect();
        in_lattice(&col)
    }

    /// Index of the first column differing from the identity (mod `L` over Z).
    pub fn first_nontrivial_column(&self) -> Option<usize> {
        (0..self.g).find(|&j| {
            let col: Vec<i128> = (0..self.g)
                .map(|i| self.get(i, j) - i128::from(i == j))
                .collect();
            match self.coeff() {
                Coeff::F2 => col.iter().any(|v| v.rem_euclid(2) != 0),
                Coeff::Z => !in_lattice(&col),
            }
        })
    }

    pub fn to_f2(&self) -> HomologyMatrix {
        let mut m = HomologyMatrix::identity(self.g, Coeff::F2);
        for i in 0..self.g {
            for j in 0..self.g {
                m.set(i, j, self.get(i, j));
            }
        }
        m
    }
}

fn in_lattice(col: &[i128]) -> bool {
    col.iter().all(|&v| v == col[0]) && col.first().is_none_or(|v| v % 2 == 0)
}

impl fmt::Display for HomologyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.g {
            let row: Vec<String> = (0..self.g).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Mod-2 transvection along the class `e_first + … + e_last`.
fn f2_transvection(g: usize, first: usize, last: usize) -> HomologyMatrix {
    let c: u64 = (first - 1..last).fold(0, |acc, k| acc | (1 << k));
    // Column j: e_j + ⟨e_j, c⟩ c, and ⟨e_j, c⟩ = 1 iff j is in the block.
    let cols: Vec<Vec<i64>> = (0..g)
        .map(|j| {
            let hit = (c >> j) & 1 == 1;
            (0..g)
                .map(|i| i64::from(i == j) + i64::from(hit && (c >> i) & 1 == 1))
                .collect()
        })
        .collect();
    HomologyMatrix::from_int_columns(&cols, Coeff::F2)
}

fn f2_swap(g: usize, i: usize) -> HomologyMatrix {
    let cols: Vec<Vec<i64>> = (0..g)
        .map(|j| {
            let target = if j == i - 1 {
                i
            } else if j == i {
                i - 1
            } else {
                j
            };
            (0..g).map(|k| i64::from(k == target)).collect()
        })
        .collect();
    HomologyMatrix::from_int_columns(&cols, Coeff::F2)
}

/// Matrix of a primitive generator (`a_i`, `u_i`, `b_j`) or its inverse.
pub fn homology_matrix(gen: &GenId, g: usize, coeff: Coeff) -> Result<HomologyMatrix> {
    if g < 2 || !gen.fits_genus(g) {
        return Err(Error::Domain(format!(
            "generator {gen} does not exist in genus {g}"
        )));
    }
    match coeff {
        Coeff::F2 => Ok(match *gen {
            GenId::A(i) => f2_transvection(g, i as usize, i as usize + 1),
            GenId::U(i) => f2_swap(g, i as usize),
            GenId::B(j) => f2_transvection(g, 1, 2 * j as usize + 2),
            _ => return Err(Error::Domain(format!("{gen} is not a primitive generator"))),
        }),
        Coeff::Z => {
            let rep = Pi1Rep::shared(g)?;
            Ok(HomologyMatrix::from_int_columns(
                &rep.generator(gen)?.abelianize_z(),
                Coeff::Z,
            ))
        }
    }
}

/// Generator matrices of one genus, with inverses.
#[derive(Debug)]
pub struct HomologyRep {
    g: usize,
    coeff: Coeff,
    table: std::collections::BTreeMap<GenId, (HomologyMatrix, HomologyMatrix)>,
}

impl HomologyRep {
    pub fn new(g: usize, coeff: Coeff) -> Result<Self> {
        let mut table = std::collections::BTreeMap::new();
        if g >= 2 {
            let mut gens: Vec<GenId> = (1..g as u16)
                .flat_map(|i| [GenId::A(i), GenId::U(i)])
                .collect();
            gens.extend((0..=((g - 2) / 2) as u16).map(GenId::B));
            for gen in gens {
                let m = homology_matrix(&gen, g, coeff)?;
                let inv = match coeff {
                    // Transvections and swaps are involutions mod 2.
                    Coeff::F2 => m.clone(),
                    Coeff::Z => {
                        let (_, fi) = crate::rep_pi1::generator_automorphism(&gen, g)?;
                        HomologyMatrix::from_int_columns(&fi.abelianize_z(), Coeff::Z)
                    }
                };
                table.insert(gen, (m, inv));
            }
        }
        Ok(HomologyRep { g, coeff, table })
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    pub fn generator(&self, gen: &GenId) -> Result<&HomologyMatrix> {
        self.table
            .get(gen)
            .map(|(m, _)| m)
            .ok_or_else(|| Error::UnknownGenerator(gen.to_string()))
    }

    pub fn generators(&self) -> impl Iterator<Item = (&GenId, &HomologyMatrix)> {
        self.table.iter().map(|(k, (m, _))| (k, m))
    }

    /// Ordered product of generator matrices along the word.
    pub fn evaluate(&self, word: &Word) -> Result<HomologyMatrix> {
        let word = dictionary::expand(word, self.g)?;
        let mut acc = HomologyMatrix::identity(self.g, self.coeff);
        for l in word.letters() {
            let (m, mi) = self
                .table
                .get(&l.gen)
                .ok_or_else(|| Error::UnknownGenerator(l.gen.to_string()))?;
            acc = acc.mul(if l.inverse { mi } else { m })?;
        }
        Ok(acc)
    }
}

pub fn evaluate_matrix(word: &Word, g: usize, coeff: Coeff) -> Result<HomologyMatrix> {
    HomologyRep::new(g, coeff)?.evaluate(word)
}

/// `MᵀM = I` over F2.
pub fn check_form_preservation(m: &HomologyMatrix) -> bool {
    let m = m.to_f2();
    let g = m.g;
    (0..g).all(|i| {
        (0..g).all(|j| {
            let dot: i128 = (0..g).map(|k| m.get(k, i) * m.get(k, j)).sum();
            dot % 2 == i128::from(i == j)
        })
    })
}
