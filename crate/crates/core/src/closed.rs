//! The closed surface group `G_g = ⟨x_1, …, x_g | x_1²⋯x_g²⟩` and tier-3 checks.
//!
//! For `g ≥ 4` the relator satisfies C′(1/6) (all pieces have length 1), so
//! Dehn's algorithm decides the word problem.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::presentation::RelatorTag;
use crate::rep_homology::{Coeff, HomologyMatrix, HomologyRep};
use crate::rep_pi1::{self, abelianize, boundary_word, concat, inverse, power, Pi1Rep, XWord};
use crate::word::{GenId, Word};

/// Conjugators visited by the breadth-first fallback before giving up.
pub const BFS_NODE_CAP: usize = 200_000;

#[derive(Clone, Debug)]
pub struct OneRelatorGroup {
    g: usize,
    /// `w_g` and `w_g⁻¹`.
    cyclic: [XWord; 2],
    /// For each letter, the (relator, position) pairs where it occurs.
    table: Vec<Vec<(usize, usize)>>,
}

fn slot(l: i32) -> usize {
    if l > 0 {
        2 * (l as usize - 1)
    } else {
        2 * (-l as usize - 1) + 1
    }
}

impl OneRelatorGroup {
    pub fn new(g: usize) -> Result<Self> {
        if g < 4 {
            return Err(Error::Domain(format!(
                "Dehn's algorithm needs genus at least 4, got {g}"
            )));
        }
        let r = boundary_word(g);
        let cyclic = [r.clone(), inverse(&r)];
        let mut table = vec![Vec::new(); 2 * g];
        for (ri, rel) in cyclic.iter().enumerate() {
            for (q, &l) in rel.iter().enumerate() {
                table[slot(l)].push((ri, q));
            }
        }
        Ok(OneRelatorGroup { g, cyclic, table })
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    pub fn relator(&self) -> &[i32] {
        &self.cyclic[0]
    }

    /// Dehn reduction of a word in the `x_i`.
    ///
    /// Letters are pushed onto a stack that is kept free of cancelling pairs
    /// and of long relator pieces; replacements go back to the input.
    pub fn dehn_reduce_x(&self, w: &[i32]) -> XWord {
        let len = 2 * self.g;
        let mut input: Vec<i32> = w.iter().rev().copied().collect();
        let mut stack: Vec<i32> = Vec::with_capacity(w.len());
        while let Some(l) = input.pop() {
            if stack.last() == Some(&-l) {
                stack.pop();
                continue;
            }
            stack.push(l);
            let top = stack.len() - 1;
            for &(ri, q) in &self.table[slot(l)] {
                let rel = &self.cyclic[ri];
                let mut m = 1;
                while m < len && m <= top && stack[top - m] == rel[(q + len - m) % len] {
                    m += 1;
                }
                if m > self.g {
                    stack.truncate(stack.len() - m);
                    // The matched piece equals the inverse of the rest of the relator.
                    for k in 1..=len - m {
                        input.push(-rel[(q + k) % len]);
                    }
                    break;
                }
            }
        }
        stack
    }

    pub fn dehn_reduce(&self, w: &Word) -> Result<Word> {
        let x = rep_pi1::word_to_xword(w)?;
        if let Some(&l) = x.iter().find(|l| l.unsigned_abs() as usize > self.g) {
            return Err(Error::UnknownGenerator(format!("x{}", l.abs())));
        }
        Ok(rep_pi1::xword_to_word(&self.dehn_reduce_x(&x)))
    }

    pub fn is_trivial(&self, w: &[i32]) -> bool {
        self.dehn_reduce_x(w).is_empty()
    }

    pub fn equal(&self, a: &[i32], b: &[i32]) -> bool {
        self.is_trivial(&concat(a, &inverse(b)))
    }

    /// Returns `(core, c)` with `w = c·core·c⁻¹` in `G_g` and `core` cyclically
    /// Dehn-reduced.
    pub fn cyclic_reduce(&self, w: &[i32]) -> (XWord, XWord) {
        let mut w = self.dehn_reduce_x(w);
        let mut conj = XWord::new();
        'outer: loop {
            let n = w.len();
            if n >= 2 && w[0] == -w[n - 1] {
                conj = concat(&conj, &w[..1]);
                w = self.dehn_reduce_x(&w[1..n - 1]);
                continue;
            }
            // A long piece may straddle the end of the word; rotating `pq` to
            // `qp = p⁻¹(pq)p` exposes it.
            let mid = n / 2;
            for s in std::iter::once(mid).chain(1..n).filter(|&s| s > 0 && s < n) {
                let rot: XWord = w[s..].iter().chain(&w[..s]).copied().collect();
                let red = self.dehn_reduce_x(&rot);
                if red.len() < n {
                    conj = concat(&conj, &w[..s]);
                    w = red;
                    continue 'outer;
                }
            }
            break;
        }
        (w, self.dehn_reduce_x(&conj))
    }

    /// Searches for `c` with `c·u·c⁻¹ = v` in `G_g`.
    ///
    /// Conjugacy classes are first separated by their image in `H_1`; then
    /// cyclic reductions are compared up to rotation, and finally conjugators
    /// of length at most `radius` are tried breadth-first.
    pub fn is_conjugate_bounded(&self, u: &[i32], v: &[i32], radius: usize) -> VerificationResult {
        let hu = abelianize(u, self.g);
        let hv = abelianize(v, self.g);
        let diff: Vec<i64> = hu.iter().zip(&hv).map(|(a, b)| a - b).collect();
        let in_lattice = diff.iter().all(|&d| d == diff[0]) && diff[0] % 2 == 0;
        if !in_lattice {
            let i = diff.iter().position(|&d| d != diff[0]).unwrap_or(0);
            return VerificationResult::refuted(Word::gen(GenId::X(i as u16 + 1)));
        }

        let (cu, pu) = self.cyclic_reduce(u);
        let (cv, pv) = self.cyclic_reduce(v);
        if cu.len() == cv.len() {
            let n = cu.len();
            for s in 0..n.max(1) {
                let rotated = cu[s.min(n)..].iter().chain(&cu[..s.min(n)]);
                if rotated.eq(cv.iter()) {
                    // cv = p⁻¹·cu·p with p = cu[..s].
                    let p = &cu[..s.min(n)];
                    let c = concat(&concat(&pv, &inverse(p)), &inverse(&pu));
                    return VerificationResult::verified(self.dehn_reduce_x(&c), 0);
                }
            }
        }

        let target = self.dehn_reduce_x(v);
        let works = |c: &[i32]| {
            let cuc = concat(&concat(c, u), &inverse(c));
            self.equal(&cuc, &target)
        };
        match self.bfs(radius, works) {
            Ok((c, used)) => VerificationResult::verified(self.dehn_reduce_x(&c), used),
            Err(used) => VerificationResult::inconclusive(used),
        }
    }

    /// Breadth-first search over freely reduced words, shortest first.
    /// Returns the depth reached on failure.
    fn bfs(
        &self,
        radius: usize,
        mut works: impl FnMut(&[i32]) -> bool,
    ) -> std::result::Result<(XWord, usize), usize> {
        let g = self.g as i32;
        let mut queue: VecDeque<XWord> = VecDeque::from([XWord::new()]);
        let mut seen: HashSet<XWord> = HashSet::from([XWord::new()]);
        let mut depth = 0;
        while let Some(c) = queue.pop_front() {
            if c.len() > depth {
                depth = c.len();
            }
            if works(&c) {
                return Ok((c, depth));
            }
            if c.len() >= radius || seen.len() >= BFS_NODE_CAP {
                continue;
            }
            for l in (1..=g).flat_map(|i| [i, -i]) {
                if c.last() == Some(&-l) {
                    continue;
                }
                let mut next = c.clone();
                next.push(l);
                // Words equal in G_g are interchangeable as conjugators.
                let key = self.dehn_reduce_x(&next);
                if seen.insert(key) {
                    queue.push_back(next);
                }
            }
        }
        Err(depth)
    }

    /// Whether `φ(x_i) = c·x_i·c⁻¹` in `G_g` for every `i`.
    pub fn is_inner_by(&self, phi: &rep_pi1::FreeAutomorphism, c: &[i32]) -> bool {
        let ci = inverse(c);
        (1..=self.g as i32).all(|i| {
            let conj = concat(&concat(c, &[i]), &ci);
            self.equal(phi.image(i as usize), &conj)
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    Verified,
    Refuted,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationResult {
    pub status: Status,
    /// Conjugator when verified, a distinguishing generator when refuted.
    pub witness: Option<Word>,
    pub radius_used: usize,
}

impl VerificationResult {
    fn verified(c: XWord, radius_used: usize) -> Self {
        VerificationResult {
            status: Status::Verified,
            witness: Some(rep_pi1::xword_to_word(&c)),
            radius_used,
        }
    }

    fn refuted(witness: Word) -> Self {
        VerificationResult {
            status: Status::Refuted,
            witness: Some(witness),
            radius_used: 0,
        }
    }

    fn inconclusive(radius_used: usize) -> Self {
        VerificationResult {
            status: Status::Inconclusive,
            witness: None,
            radius_used,
        }
    }
}

/// Powers of `x_1` tried on top of a conjugator found for `x_1`.
const X1_POWERS: [i64; 5] = [0, 1, -1, 2, -2];

/// Tier-3 check: the relator acts on `G_g` as an inner automorphism.
///
/// `hint` is a previously found conjugator; it is validated, never trusted.
pub fn verify_closed_relator(
    relator: &Word,
    g: usize,
    radius: Option<usize>,
    hint: Option<&Word>,
) -> Result<VerificationResult> {
    let grp = OneRelatorGroup::new(g)?;
    let f2 = HomologyRep::new(g, Coeff::F2)?.evaluate(relator)?;
    if let Some(j) = f2.first_nontrivial_column() {
        return Ok(VerificationResult::refuted(Word::gen(GenId::X(
            j as u16 + 1,
        ))));
    }
    let phi = Pi1Rep::shared(g)?.evaluate(relator)?;
    let z = HomologyMatrix::from_int_columns(&phi.abelianize_z(), Coeff::Z);
    if let Some(j) = z.first_nontrivial_column() {
        return Ok(VerificationResult::refuted(Word::gen(GenId::X(
            j as u16 + 1,
        ))));
    }

    if let Some(h) = hint {
        let c = rep_pi1::word_to_xword(h)?;
        if grp.is_inner_by(&phi, &c) {
            return Ok(VerificationResult::verified(c, 0));
        }
    }

    let radius = radius.unwrap_or(2 * phi.max_image_len());
    let first = grp.is_conjugate_bounded(&[1], phi.image(1), radius);
    let used = first.radius_used;
    if first.status == Status::Verified {
        let c0 = rep_pi1::word_to_xword(first.witness.as_ref().expect("verified has witness"))?;
        for k in X1_POWERS {
            let c = grp.dehn_reduce_x(&concat(&c0, &power(&[1], k)));
            if grp.is_inner_by(&phi, &c) {
                return Ok(VerificationResult::verified(c, used));
            }
        }
    }
    Ok(VerificationResult::inconclusive(used))
}

/// Conjugators found by earlier runs, keyed by `genus/family/params`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ConjugatorFixtures {
    pub entries: BTreeMap<String, Word>,
}

impl ConjugatorFixtures {
    pub fn key(g: usize, tag: &RelatorTag) -> String {
        let params: Vec<String> = tag.params.iter().map(|p| p.to_string()).collect();
        format!("{g}/{}/{}", tag.family, params.join(","))
    }

    pub fn load(path: &Path) -> Result<Self> {
        if !path.exists() {
            return Ok(Self::default());
        }
        Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        std::fs::write(path, text)?;
        Ok(())
    }

    pub fn get(&self, g: usize, tag: &RelatorTag) -> Option<&Word> {
        self.entries.get(&Self::key(g, tag))
    }

    pub fn insert(&mut self, g: usize, tag: &RelatorTag, c: Word) {
        self.entries.insert(Self::key(g, tag), c);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::nonorientable_mcg_presentation;
    use crate::word::w;

    #[test]
    fn dehn_examples() {
        for g in 4..=7 {
            let grp = OneRelatorGroup::new(g).unwrap();
            let r = boundary_word(g);
            assert!(grp.dehn_reduce_x(&r).is_empty());
            assert!(grp.dehn_reduce_x(&inverse(&r)).is_empty());
            assert_eq!(grp.dehn_reduce_x(&[1]), vec![1]);
            assert_eq!(grp.dehn_reduce_x(&concat(&r, &[1])), vec![1]);
            // A rotated relator conjugated back.
            let rot: XWord = r[3..].iter().chain(&r[..3]).copied().collect();
            assert!(grp.dehn_reduce_x(&rot).is_empty());
        }
        assert!(OneRelatorGroup::new(3).is_err());
    }

    #[test]
    fn long_piece_is_shortened() {
        let grp = OneRelatorGroup::new(4).unwrap();
        // x1²x2²x3 = x4⁻²x3⁻¹.
        assert_eq!(grp.dehn_reduce_x(&[1, 1, 2, 2, 3]), vec![-4, -4, -3]);
    }

    #[test]
    fn conjugacy_examples() {
        let grp = OneRelatorGroup::new(4).unwrap();
        let r = grp.is_conjugate_bounded(&[1], &[1], 3);
        assert_eq!(r.status, Status::Verified);
        assert_eq!(r.witness, Some(Word::identity()));
        let r = grp.is_conjugate_bounded(&[1], &[2, 1, -2], 3);
        assert_eq!(r.status, Status::Verified);
        assert_eq!(r.witness, Some(w("x2")));
        let r = grp.is_conjugate_bounded(&[1], &[2], 3);
        assert_eq!(r.status, Status::Refuted);
    }

    #[test]
    fn closed_relators_verify() {
        for g in 4..=6 {
            let p = nonorientable_mcg_presentation(g, 0).unwrap();
            for fam in ["B4", "D"] {
                let rel = p.relators.iter().find(|r| r.tag.family == fam).unwrap();
                let res = verify_closed_relator(&rel.word, g, None, None).unwrap();
                assert_eq!(res.status, Status::Verified, "{fam} at g={g}");
            }
        }
    }

    #[test]
    fn e6_and_non_relator() {
        let res = verify_closed_relator(&w("a1*a2*a3").pow(4), 4, None, None).unwrap();
        assert_eq!(res.status, Status::Verified);
        let res = verify_closed_relator(&w("a1"), 4, None, None).unwrap();
        assert_eq!(res.status, Status::Refuted);
        assert!(verify_closed_relator(&w("a1"), 3, None, None).is_err());
    }

    #[test]
    fn hint_is_validated() {
        let rel = w("a1*a2*a3").pow(4);
        let found = verify_closed_relator(&rel, 4, None, None).unwrap();
        let again = verify_closed_relator(&rel, 4, None, found.witness.as_ref()).unwrap();
        assert_eq!(again.status, Status::Verified);
        assert_eq!(again.radius_used, 0);
    }
}
