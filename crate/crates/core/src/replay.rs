//! Replays word-rewriting derivations step by step.
//!
//! The current word is a raw letter sequence: inserted cancelling pairs stay
//! until a later step consumes them or a `FreeCancel` removes them. Applying a
//! relation freely reduces the result.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::closed::{verify_closed_relator, Status, VerificationResult};
use crate::error::{Error, Result};
use crate::presentation::{
    derived_relation_catalogue, nonorientable_mcg_presentation, relator_tier,
    small_genus_presentation, RelatorTag,
};
use crate::rep_pi1::{self, Pi1Rep, Pi1Verdict};
use crate::word::{GenId, Letter, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum StepKind {
    ApplyRelation,
    InsertCancelingPair,
    FreeCancel,
    ConjugateBothSides,
    InvertBothSides,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    #[default]
    LtoR,
    RtoL,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RewriteStep {
    pub kind: StepKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relation: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub params: Vec<i64>,
    #[serde(default)]
    pub direction: Direction,
    #[serde(default)]
    pub position: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub aux: Option<Word>,
    /// `[offset, length]`: rotate the relator `lhs·rhs⁻¹` (`rhs·lhs⁻¹` for
    /// `RtoL`) by `offset` and replace its first `length` letters by the
    /// inverse of the remaining ones.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub span: Option<[usize; 2]>,
}

impl RewriteStep {
    pub fn apply(tag: &str, params: &[i64], direction: Direction, position: usize) -> Self {
        RewriteStep {
            kind: StepKind::ApplyRelation,
            relation: Some(tag.to_string()),
            params: params.to_vec(),
            direction,
            position,
            aux: None,
            span: None,
        }
    }

    pub fn insert(position: usize, pair: Word) -> Self {
        RewriteStep {
            kind: StepKind::InsertCancelingPair,
            relation: None,
            params: Vec::new(),
            direction: Direction::LtoR,
            position,
            aux: Some(pair),
            span: None,
        }
    }

    fn tag(&self) -> Option<RelatorTag> {
        self.relation
            .as_ref()
            .map(|f| RelatorTag::new(f, &self.params))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivationScript {
    pub genus: usize,
    pub boundary: usize,
    pub start: Word,
    pub steps: Vec<RewriteStep>,
    pub end: Word,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub note: String,
}

impl DerivationScript {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("script serializes");
        s.push('\n');
        s
    }

    /// Whether the script transforms a relator rather than an element.
    pub fn rewrites_relator(&self) -> bool {
        self.steps.iter().any(|s| {
            matches!(
                s.kind,
                StepKind::ConjugateBothSides | StepKind::InvertBothSides
            )
        })
    }
}

/// A relation usable in a derivation, with the tier at which it holds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnownRelation {
    pub lhs: Word,
    pub rhs: Word,
    pub tier: u8,
}

/// Defining relators of the surface's presentation plus the derived catalogue.
#[derive(Clone, Debug, Default)]
pub struct RelationLookup {
    entries: BTreeMap<RelatorTag, KnownRelation>,
}

impl RelationLookup {
    pub fn for_surface(g: usize, n: usize) -> Result<Self> {
        let p = nonorientable_mcg_presentation(g, n).or_else(|_| small_genus_presentation(g, n))?;
        let mut entries = BTreeMap::new();
        for r in &p.relators {
            entries.insert(
                r.tag.clone(),
                KnownRelation {
                    lhs: r.lhs.clone(),
                    rhs: r.rhs.clone(),
                    tier: relator_tier(&r.tag, n),
                },
            );
        }
        for e in derived_relation_catalogue(g, n) {
            entries.entry(e.tag.clone()).or_insert(KnownRelation {
                lhs: e.lhs,
                rhs: e.rhs,
                tier: e.tier,
            });
        }
        Ok(RelationLookup { entries })
    }

    pub fn insert(&mut self, tag: RelatorTag, rel: KnownRelation) {
        self.entries.insert(tag, rel);
    }

    pub fn get(&self, tag: &RelatorTag) -> Result<&KnownRelation> {
        self.entries
            .get(tag)
            .ok_or_else(|| Error::MissingData(format!("no relation {tag} for this surface")))
    }
}

fn show(letters: &[Letter]) -> String {
    if letters.is_empty() {
        return "1".into();
    }
    letters
        .iter()
        .map(|l| Word::from_letters([l.clone()]).to_string())
        .collect::<Vec<_>>()
        .join("*")
}

fn free_reduce(letters: Vec<Letter>) -> Vec<Letter> {
    Word::from_letters(letters).letters().to_vec()
}

fn invert(letters: &[Letter]) -> Vec<Letter> {
    letters.iter().rev().map(Letter::inv).collect()
}

/// Source pattern and replacement for one use of a relation.
fn relation_sides(
    rel: &KnownRelation,
    dir: Direction,
    span: Option<[usize; 2]>,
) -> Option<(Vec<Letter>, Vec<Letter>)> {
    let (l, r) = match dir {
        Direction::LtoR => (&rel.lhs, &rel.rhs),
        Direction::RtoL => (&rel.rhs, &rel.lhs),
    };
    let Some([offset, length]) = span else {
        return Some((l.letters().to_vec(), r.letters().to_vec()));
    };
    let mut relator = l.letters().to_vec();
    relator.extend(invert(r.letters()));
    if offset >= relator.len().max(1) || length > relator.len() {
        return None;
    }
    relator.rotate_left(offset);
    let rest = relator.split_off(length);
    Some((relator, invert(&rest)))
}

/// Applies one step to the raw word `current`. `index` labels errors.
pub fn apply_step(
    current: &[Letter],
    step: &RewriteStep,
    lookup: &RelationLookup,
    index: usize,
) -> Result<Vec<Letter>> {
    let out_of_range = |len: usize| Error::StepMismatch {
        step: index,
        position: step.position,
        expected: format!("position at most {len}"),
        found: show(current),
    };
    match step.kind {
        StepKind::ApplyRelation => {
            let tag = step
                .tag()
                .ok_or_else(|| Error::MissingData(format!("step {index} names no relation")))?;
            let rel = lookup.get(&tag)?;
            let (src, dst) = relation_sides(rel, step.direction, step.span).ok_or_else(|| {
                Error::StepMismatch {
                    step: index,
                    position: step.position,
                    expected: format!("span inside {tag}"),
                    found: format!("{:?}", step.span),
                }
            })?;
            let pos = step.position;
            let end = pos + src.len();
            if end > current.len() || current[pos..end] != *src {
                return Err(Error::StepMismatch {
                    step: index,
                    position: pos,
                    expected: show(&src),
                    found: show(&current[pos.min(current.len())..end.min(current.len())]),
                });
            }
            let mut out = current[..pos].to_vec();
            out.extend(dst);
            out.extend_from_slice(&current[end..]);
            Ok(free_reduce(out))
        }
        StepKind::InsertCancelingPair => {
            if step.position > current.len() {
                return Err(out_of_range(current.len()));
            }
            let aux = step.aux.clone().unwrap_or_default();
            let mut out = current[..step.position].to_vec();
            out.extend_from_slice(aux.letters());
            out.extend(invert(aux.letters()));
            out.extend_from_slice(&current[step.position..]);
            Ok(out)
        }
        StepKind::FreeCancel => Ok(free_reduce(current.to_vec())),
        StepKind::ConjugateBothSides => {
            let aux = step.aux.clone().unwrap_or_default();
            let mut out = aux.letters().to_vec();
            out.extend_from_slice(current);
            out.extend(invert(aux.letters()));
            Ok(out)
        }
        StepKind::InvertBothSides => Ok(invert(current)),
    }
}

/// Runs all steps and checks the result against the claimed end.
pub fn replay(script: &DerivationScript, lookup: &RelationLookup) -> Result<Word> {
    let mut cur = script.start.letters().to_vec();
    for (i, step) in script.steps.iter().enumerate() {
        cur = apply_step(&cur, step, lookup, i)?;
    }
    if cur != script.end.letters() {
        return Err(Error::StepMismatch {
            step: script.steps.len(),
            position: 0,
            expected: script.end.to_string(),
            found: show(&cur),
        });
    }
    Ok(script.end.clone())
}

/// Highest tier among the relations a script uses.
pub fn script_tier(script: &DerivationScript, lookup: &RelationLookup) -> Result<u8> {
    script
        .steps
        .iter()
        .filter_map(|s| s.tag())
        .try_fold(1, |acc, tag| Ok(acc.max(lookup.get(&tag)?.tier)))
}

/// Checks `lhs = rhs` in the representation matching `tier`.
pub fn check_equals_in_rep(
    lhs: &Word,
    rhs: &Word,
    g: usize,
    n: usize,
    tier: u8,
) -> Result<VerificationResult> {
    if tier == 3 && n != 0 {
        return Err(Error::Domain(
            "tier 3 applies to closed surfaces only".into(),
        ));
    }
    if !(1..=3).contains(&tier) {
        return Err(Error::Domain(format!("unknown tier {tier}")));
    }
    let relator = lhs.concat(&rhs.invert());
    if tier == 3 {
        return verify_closed_relator(&relator, g, None, None);
    }
    let verdict = Pi1Rep::shared(g)?.verify_relator(&relator, tier)?;
    Ok(match verdict {
        Pi1Verdict::Verified(k) => VerificationResult {
            status: Status::Verified,
            witness: Some(rep_pi1::xword_to_word(&rep_pi1::power(
                &rep_pi1::boundary_word(g),
                k,
            ))),
            radius_used: 0,
        },
        Pi1Verdict::Refuted(i) => VerificationResult {
            status: Status::Refuted,
            witness: Some(Word::gen(GenId::X(i as u16))),
            radius_used: 0,
        },
    })
}

/// Checks a script's endpoints in the representations, ignoring its steps.
pub fn verify_endpoints(
    script: &DerivationScript,
    lookup: &RelationLookup,
) -> Result<VerificationResult> {
    let tier = script_tier(script, lookup)?;
    let (g, n) = (script.genus, script.boundary);
    if script.rewrites_relator() {
        let one = Word::identity();
        let first = check_equals_in_rep(&script.start, &one, g, n, tier)?;
        if first.status != Status::Verified {
            return Ok(first);
        }
        check_equals_in_rep(&script.end, &one, g, n, tier)
    } else {
        check_equals_in_rep(&script.start, &script.end, g, n, tier)
    }
}
