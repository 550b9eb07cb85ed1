//! Action of the mapping class group of `N_{g,1}` on the free group
//! `π1(N_{g,1}) = F⟨x_1, …, x_g⟩`.
//!
//! The surface is a disc with `g` crosscaps and the basepoint on the
//! boundary; `x_i` is the one-sided loop through crosscap `i`, so the
//! boundary reads `w_g = x_1² x_2² ⋯ x_g²`. Every generator acts by an
//! automorphism fixing `w_g` letter for letter.
//!
//! Letters of free-group words are stored as nonzero `i32`: `i` is `x_i` and
//! `-i` is `x_i⁻¹`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::presentation::dictionary;
use crate::word::{GenId, Letter, Word};

/// Conjugation powers searched by tier-2 verification.
pub const K_MAX: i64 = 4;

pub type XWord = Vec<i32>;

/// Appends `letters` to `out`, cancelling against its tail.
pub fn push_reduced(out: &mut XWord, letters: &[i32]) {
    for &l in letters {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
}

pub fn reduce(letters: &[i32]) -> XWord {
    let mut out = Vec::with_capacity(letters.len());
    push_reduced(&mut out, letters);
    out
}

pub fn inverse(w: &[i32]) -> XWord {
    w.iter().rev().map(|&l| -l).collect()
}

pub fn concat(a: &[i32], b: &[i32]) -> XWord {
    let mut out = a.to_vec();
    push_reduced(&mut out, b);
    out
}

pub fn power(w: &[i32], e: i64) -> XWord {
    let base = if e < 0 { inverse(w) } else { w.to_vec() };
    let mut out = Vec::new();
    for _ in 0..e.unsigned_abs() {
        push_reduced(&mut out, &base);
    }
    out
}

pub fn boundary_word(g: usize) -> XWord {
    (1..=g as i32).flat_map(|i| [i, i]).collect()
}

pub fn xword_to_word(w: &[i32]) -> Word {
    Word::from_letters(
        w.iter()
            .map(|&l| Letter::new(GenId::X(l.unsigned_abs() as u16), l < 0)),
    )
}

pub fn word_to_xword(w: &Word) -> Result<XWord> {
    w.letters()
        .iter()
        .map(|l| match l.gen {
            GenId::X(i) if i >= 1 => Ok(if l.inverse { -(i as i32) } else { i as i32 }),
            ref other => Err(Error::UnknownGenerator(other.to_string())),
        })
        .collect()
}

pub fn format_xword(w: &[i32]) -> String {
    xword_to_word(w).to_string()
}

/// Exponent sum vector of a free-group word.
pub fn abelianize(w: &[i32], g: usize) -> Vec<i64> {
    let mut v = vec![0i64; g];
    for &l in w {
        v[l.unsigned_abs() as usize - 1] += l.signum() as i64;
    }
    v
}

/// Endomorphism of the free group of rank `g`, given by the images of the `x_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreeAutomorphism {
    g: usize,
    images: Vec<XWord>,
}

impl FreeAutomorphism {
    pub fn identity(g: usize) -> Self {
        FreeAutomorphism {
            g,
            images: (1..=g as i32).map(|i| vec![i]).collect(),
        }
    }

    pub fn from_images(g: usize, images: Vec<XWord>) -> Result<Self> {
        if images.len() != g {
            return Err(Error::Domain(format!(
                "expected {g} images, got {}",
                images.len()
            )));
        }
        for w in &images {
            if w.iter().any(|&l| l == 0 || l.unsigned_abs() as usize > g) {
                return Err(Error::Domain(format!(
                    "image letter out of range for genus {g}"
                )));
            }
        }
        Ok(FreeAutomorphism {
            g,
            images: images.into_iter().map(|w| reduce(&w)).collect(),
        })
    }

    /// Conjugation `x ↦ c x c⁻¹`.
    pub fn conjugation(g: usize, c: &[i32]) -> Self {
        let ci = inverse(c);
        FreeAutomorphism {
            g,
            images: (1..=g as i32)
                .map(|i| {
                    let mut w = c.to_vec();
                    push_reduced(&mut w, &[i]);
                    push_reduced(&mut w, &ci);
                    w
                })
                .collect(),
        }
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    pub fn images(&self) -> &[XWord] {
        &self.images
    }

    pub fn image(&self, i: usize) -> &[i32] {
        &self.images[i - 1]
    }

    pub fn max_image_len(&self) -> usize {
        self.images.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(k, w)| w.len() == 1 && w[0] == k as i32 + 1)
    }

    /// Image of an arbitrary word, freely reduced.
    pub fn apply(&self, w: &[i32]) -> XWord {
        let mut out = Vec::new();
        for &l in w {
            let img = &self.images[l.unsigned_abs() as usize - 1];
            if l > 0 {
                push_reduced(&mut out, img);
            } else {
                for &m in img.iter().rev() {
                    push_reduced(&mut out, &[-m]);
                }
            }
        }
        out
    }

    /// `self ∘ other`, i.e. `x ↦ self(other(x))`.
    pub fn compose(&self, other: &FreeAutomorphism) -> Result<FreeAutomorphism> {
        if self.g != other.g {
            return Err(Error::GenusMismatch {
                left: self.g,
                right: other.g,
            });
        }
        Ok(FreeAutomorphism {
            g: self.g,
            images: other.images.iter().map(|w| self.apply(w)).collect(),
        })
    }

    /// Mod-2 abelianization: column `j` is the exponent vector of `φ(x_j)` mod 2.
    pub fn abelianize_f2(&self) -> crate::rep_homology::HomologyMatrix {
        crate::rep_homology::HomologyMatrix::from_int_columns(
            &self.abelianize_z(),
            crate::rep_homology::Coeff::F2,
        )
    }

    pub fn abelianize_z(&self) -> Vec<Vec<i64>> {
        self.images.iter().map(|w| abelianize(w, self.g)).collect()
    }

    /// Returns `k` with `self` equal to conjugation by `w_g^k`, `|k| ≤ k_max`.
    pub fn boundary_conjugation_power(&self, k_max: i64) -> Option<i64> {
        let w = boundary_word(self.g);
        (-k_max..=k_max).find(|&k| *self == FreeAutomorphism::conjugation(self.g, &power(&w, k)))
    }
}

impl fmt::Display for FreeAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, w) in self.images.iter().enumerate() {
            writeln!(f, "x{} -> {}", k + 1, format_xword(w))?;
        }
        Ok(())
    }
}

/// Right-to-left product `x_i x_{i+1} ⋯ x_{i+m-1}`.
fn block_prefix(i: usize, m: usize) -> XWord {
    (i..i + m).map(|c| c as i32).collect()
}

/// Dehn twist about the two-sided curve enclosing the consecutive crosscaps
/// `first..=last` (an even number of them). `sign = -1` is the direction used
/// for the generators `a_i` and `b_j`.
pub fn block_twist(g: usize, first: usize, last: usize, sign: i64) -> FreeAutomorphism {
    assert!(first >= 1 && last <= g && first < last && (last - first + 1).is_multiple_of(2));
    let k = last - first + 1;
    let s = block_prefix(first, k);
    let se = power(&s, sign);
    let sei = inverse(&se);
    let twisted_prefix = |m: usize| -> XWord {
        let p = block_prefix(first, m);
        if m == k {
            s.clone()
        } else if m % 2 == 1 {
            concat(&p, &se)
        } else {
            concat(&concat(&sei, &p), &se)
        }
    };
    let mut images = FreeAutomorphism::identity(g).images;
    for m in 1..=k {
        images[first + m - 2] = concat(&inverse(&twisted_prefix(m - 1)), &twisted_prefix(m));
    }
    FreeAutomorphism { g, images }
}

/// Crosscap transposition of crosscaps `i` and `i+1`; `sign = +1` is `u_i`.
pub fn transposition(g: usize, i: usize, sign: i64) -> FreeAutomorphism {
    assert!(i >= 1 && i < g);
    let (a, b) = (i as i32, i as i32 + 1);
    let mut images = FreeAutomorphism::identity(g).images;
    if sign > 0 {
        images[i - 1] = vec![a, a, b, -a, -a];
        images[i] = vec![a];
    } else {
        images[i - 1] = vec![b];
        images[i] = vec![-b, -b, a, b, b];
    }
    FreeAutomorphism { g, images }
}

/// Primitive generator automorphism for `a_i`, `u_i` or `b_j` (with inverse).
pub fn generator_automorphism(
    gen: &GenId,
    g: usize,
) -> Result<(FreeAutomorphism, FreeAutomorphism)> {
    if g < 2 || !gen.fits_genus(g) {
        return Err(Error::Domain(format!(
            "generator {gen} does not exist in genus {g}"
        )));
    }
    Ok(match *gen {
        GenId::A(i) => {
            let i = i as usize;
            (block_twist(g, i, i + 1, -1), block_twist(g, i, i + 1, 1))
        }
        GenId::U(i) => (
            transposition(g, i as usize, 1),
            transposition(g, i as usize, -1),
        ),
        GenId::B(j) => {
            let last = 2 * j as usize + 2;
            (block_twist(g, 1, last, -1), block_twist(g, 1, last, 1))
        }
        _ => return Err(Error::Domain(format!("{gen} is not a primitive generator"))),
    })
}

/// Generator tables of one genus, computed once and shared.
#[derive(Debug)]
pub struct Pi1Rep {
    g: usize,
    table: BTreeMap<GenId, (FreeAutomorphism, FreeAutomorphism)>,
}

impl Pi1Rep {
    pub fn new(g: usize) -> Result<Self> {
        if g < 1 {
            return Err(Error::Domain("genus must be at least 1".into()));
        }
        let mut table = BTreeMap::new();
        if g >= 2 {
            for i in 1..g as u16 {
                for gen in [GenId::A(i), GenId::U(i)] {
                    table.insert(gen.clone(), generator_automorphism(&gen, g)?);
                }
            }
            for j in 0..=((g - 2) / 2) as u16 {
                let gen = GenId::B(j);
                table.insert(gen.clone(), generator_automorphism(&gen, g)?);
            }
        }
        Ok(Pi1Rep { g, table })
    }

    /// Process-wide cached instance.
    pub fn shared(g: usize) -> Result<Arc<Pi1Rep>> {
        static CACHE: OnceLock<Mutex<BTreeMap<usize, Arc<Pi1Rep>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(rep) = cache.lock().expect("cache poisoned").get(&g) {
            return Ok(rep.clone());
        }
        let rep = Arc::new(Pi1Rep::new(g)?);
        cache.lock().expect("cache poisoned").insert(g, rep.clone());
        Ok(rep)
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    pub fn generators(&self) -> impl Iterator<Item = (&GenId, &FreeAutomorphism)> {
        self.table.iter().map(|(k, (f, _))| (k, f))
    }

    pub fn generator(&self, gen: &GenId) -> Result<&FreeAutomorphism> {
        self.table
            .get(gen)
            .map(|(f, _)| f)
            .ok_or_else(|| Error::UnknownGenerator(gen.to_string()))
    }

    fn letter(&self, l: &Letter) -> Result<&FreeAutomorphism> {
        self.table
            .get(&l.gen)
            .map(|(f, fi)| if l.inverse { fi } else { f })
            .ok_or_else(|| Error::UnknownGenerator(l.gen.to_string()))
    }

    /// `φ_{w_1} ∘ φ_{w_2} ∘ ⋯ ∘ φ_{w_n}`. Named elements are expanded first.
    pub fn evaluate(&self, word: &Word) -> Result<FreeAutomorphism> {
        let word = dictionary::expand(word, self.g)?;
        let mut acc = FreeAutomorphism::identity(self.g);
        for l in word.letters() {
            let f = self.letter(l)?;
            acc.images = f.images.iter().map(|w| acc.apply(w)).collect();
        }
        Ok(acc)
    }

    /// Tier 1: identity automorphism. Tier 2: conjugation by a power of `w_g`.
    pub fn verify_relator(&self, relator: &Word, tier: u8) -> Result<Pi1Verdict> {
        let phi = self.evaluate(relator)?;
        let verdict = match tier {
            1 if phi.is_identity() => Pi1Verdict::Verified(0),
            2 => match phi.boundary_conjugation_power(K_MAX) {
                Some(k) => Pi1Verdict::Verified(k),
                None => {
                    Pi1Verdict::Refuted(first_mismatch(&phi, &FreeAutomorphism::identity(self.g)))
                }
            },
            1 => Pi1Verdict::Refuted(first_mismatch(&phi, &FreeAutomorphism::identity(self.g))),
            t => {
                return Err(Error::Domain(format!(
                    "tier {t} is not checked in the free group"
                )))
            }
        };
        Ok(verdict)
    }

    /// Text dump of the generator image tables.
    pub fn dump(&self) -> String {
        let mut out = format!("# generator images, genus {}\n", self.g);
        for (gen, f) in self.generators() {
            for (k, w) in f.images().iter().enumerate() {
                if w.len() != 1 || w[0] != k as i32 + 1 {
                    out.push_str(&format!("{gen}: x{} -> {}\n", k + 1, format_xword(w)));
                }
            }
        }
        out
    }
}

fn first_mismatch(phi: &FreeAutomorphism, target: &FreeAutomorphism) -> usize {
    (1..=phi.g)
        .find(|&i| phi.image(i) != target.image(i))
        .unwrap_or(1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Pi1Verdict {
    /// Conjugation by `w_g^k` (`k = 0` is the identity).
    Verified(i64),
    /// Index `i` of the first `x_i` whose image differs.
    Refuted(usize),
}

impl Pi1Verdict {
    pub fn is_verified(&self) -> bool {
        matches!(self, Pi1Verdict::Verified(_))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::w;

    #[test]
    fn generators_fix_boundary() {
        for g in 2..=8 {
            let rep = Pi1Rep::new(g).unwrap();
            let bw = boundary_word(g);
            for (gen, (f, fi)) in &rep.table {
                assert_eq!(f.apply(&bw), bw, "{gen} at genus {g}");
                assert!(f.compose(fi).unwrap().is_identity(), "{gen} inverse");
                assert!(fi.compose(f).unwrap().is_identity(), "{gen} inverse");
            }
        }
    }

    #[test]
    fn u1_genus2_images() {
        let rep = Pi1Rep::new(2).unwrap();
        let u = rep.generator(&GenId::U(1)).unwrap();
        let mut both = u.image(1).to_vec();
        push_reduced(&mut both, u.image(1));
        push_reduced(&mut both, u.image(2));
        push_reduced(&mut both, u.image(2));
        assert_eq!(both, boundary_word(2));
    }

    #[test]
    fn a1_twist_images() {
        let f = block_twist(3, 1, 2, -1);
        assert_eq!(f.image(1), &[1, -2, -1]);
        assert_eq!(f.image(2), &[1, 2, 2]);
        assert_eq!(f.image(3), &[3]);
    }

    #[test]
    fn b0_is_a1() {
        let rep = Pi1Rep::new(5).unwrap();
        assert_eq!(
            rep.generator(&GenId::B(0)).unwrap(),
            rep.generator(&GenId::A(1)).unwrap()
        );
    }

    #[test]
    fn c4_pins_twist_direction() {
        let rep = Pi1Rep::new(3).unwrap();
        assert!(rep.evaluate(&w("a1*u1*a1*u1^-1")).unwrap().is_identity());
    }

    #[test]
    fn boundary_twist_is_conjugation() {
        for g in 2..=6 {
            let rep = Pi1Rep::new(g).unwrap();
            let d2 = dictionary::delta(g).pow(2);
            let phi = rep.evaluate(&d2).unwrap();
            assert_eq!(phi.boundary_conjugation_power(K_MAX), Some(1), "genus {g}");
        }
    }

    #[test]
    fn refutes_non_relator() {
        let rep = Pi1Rep::new(4).unwrap();
        assert!(matches!(
            rep.verify_relator(&w("a1*a2"), 1).unwrap(),
            Pi1Verdict::Refuted(_)
        ));
        assert_eq!(
            rep.verify_relator(&Word::identity(), 1).unwrap(),
            Pi1Verdict::Verified(0)
        );
    }

    #[test]
    fn y_is_a_then_u() {
        let rep = Pi1Rep::new(4).unwrap();
        let y = rep.evaluate(&w("y2")).unwrap();
        let au = rep
            .generator(&GenId::A(2))
            .unwrap()
            .compose(rep.generator(&GenId::U(2)).unwrap())
            .unwrap();
        assert_eq!(y, au);
    }
}
