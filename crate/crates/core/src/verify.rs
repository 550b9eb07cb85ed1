//! Batch verification of a presentation and its derived relations.

use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::closed::{verify_closed_relator, ConjugatorFixtures, Status};
use crate::error::{Error, Result};
use crate::presentation::{
    derived_relation_catalogue, nonorientable_mcg_presentation, relator_tier,
    small_genus_presentation, Presentation, RelatorTag,
};
use crate::rep_pi1::{self, Pi1Rep, Pi1Verdict};
use crate::word::{GenId, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Presentation,
    Catalogue,
}

impl Source {
    fn name(self) -> &'static str {
        match self {
            Source::Presentation => "presentation",
            Source::Catalogue => "catalogue",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelatorResult {
    pub source: Source,
    pub tag: RelatorTag,
    pub tier: u8,
    pub status: Status,
    /// `w^k` for tiers 1 and 2, the conjugator for tier 3, or a distinguishing `x_i`.
    pub witness: Option<Word>,
    pub radius_used: usize,
    #[serde(skip)]
    pub micros: u128,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteSummary {
    pub name: String,
    pub verified: usize,
    pub refuted: usize,
    pub inconclusive: usize,
}

impl SuiteSummary {
    pub fn total(&self) -> usize {
        self.verified + self.refuted + self.inconclusive
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub genus: usize,
    pub boundary: usize,
    pub results: Vec<RelatorResult>,
    pub suites: Vec<SuiteSummary>,
    pub fixture_diff: Vec<String>,
}

impl RunReport {
    pub fn is_success(&self) -> bool {
        self.results.iter().all(|r| r.status == Status::Verified)
    }

    pub fn to_text(&self, timings: bool) -> String {
        let mut out = format!("# verify g={} n={}\n", self.genus, self.boundary);
        for r in &self.results {
            let status = match r.status {
                Status::Verified => "Verified",
                Status::Refuted => "Refuted",
                Status::Inconclusive => "Inconclusive",
            };
            let _ = write!(
                out,
                "{:<12} {:<24} tier {} {status}",
                r.source.name(),
                r.tag.to_string(),
                r.tier
            );
            if let Some(w) = &r.witness {
                let _ = write!(out, " [{w}]");
            }
            if r.tier == 3 {
                let _ = write!(out, " radius {}", r.radius_used);
            }
            if timings {
                let _ = write!(out, " {}us", r.micros);
            }
            out.push('\n');
        }
        for s in &self.suites {
            let _ = writeln!(
                out,
                "{}: {} verified, {} refuted, {} inconclusive",
                s.name, s.verified, s.refuted, s.inconclusive
            );
        }
        for d in &self.fixture_diff {
            let _ = writeln!(out, "fixture {d}");
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Conjugators of verified tier-3 results.
    pub fn conjugators(&self) -> impl Iterator<Item = (&RelatorTag, &Word)> {
        self.results
            .iter()
            .filter(|r| r.tier == 3 && r.status == Status::Verified)
            .filter_map(|r| r.witness.as_ref().map(|w| (&r.tag, w)))
    }

    /// Merges this run's conjugators into `fixtures`, returning a line per change.
    pub fn refresh_fixtures(&self, fixtures: &mut ConjugatorFixtures) -> Vec<String> {
        let mut diff = Vec::new();
        for (tag, c) in self.conjugators() {
            match fixtures.get(self.genus, tag) {
                Some(old) if old == c => {}
                Some(old) => diff.push(format!(
                    "~ {}: {old} -> {c}",
                    ConjugatorFixtures::key(self.genus, tag)
                )),
                None => diff.push(format!(
                    "+ {}: {c}",
                    ConjugatorFixtures::key(self.genus, tag)
                )),
            }
            fixtures.insert(self.genus, tag, c.clone());
        }
        diff
    }
}

#[derive(Clone, Debug, Default)]
pub struct VerifyOptions {
    /// Tiers to run; empty means all.
    pub tiers: Vec<u8>,
    pub radius: Option<usize>,
    pub fixtures: Option<ConjugatorFixtures>,
    /// Skip the derived-relation catalogue.
    pub presentation_only: bool,
}

impl VerifyOptions {
    fn wants(&self, tier: u8) -> bool {
        self.tiers.is_empty() || self.tiers.contains(&tier)
    }
}

struct Item {
    source: Source,
    tag: RelatorTag,
    word: Word,
    tier: u8,
}

/// The presentation used for `(g, n)`: the main theorem's when it applies, the
/// small-genus one otherwise.
pub fn surface_presentation(g: usize, n: usize) -> Result<Presentation> {
    if g + n > 3 && n <= 1 {
        nonorientable_mcg_presentation(g, n)
    } else {
        small_genus_presentation(g, n)
    }
}

pub fn verify_surface(g: usize, n: usize, opts: &VerifyOptions) -> Result<RunReport> {
    let p = surface_presentation(g, n)?;
    let mut items: Vec<Item> = p
        .relators
        .iter()
        .map(|r| Item {
            source: Source::Presentation,
            tag: r.tag.clone(),
            word: r.word.clone(),
            tier: relator_tier(&r.tag, n),
        })
        .collect();
    if !opts.presentation_only {
        items.extend(derived_relation_catalogue(g, n).into_iter().map(|e| Item {
            source: Source::Catalogue,
            word: e.word(),
            tag: e.tag,
            tier: e.tier,
        }));
    }
    run(g, n, items, opts)
}

/// Verifies the relators of an arbitrary presentation at the tiers its tags imply.
pub fn verify_presentation(p: &Presentation, opts: &VerifyOptions) -> Result<RunReport> {
    let items = p
        .relators
        .iter()
        .map(|r| Item {
            source: Source::Presentation,
            tag: r.tag.clone(),
            word: r.word.clone(),
            tier: relator_tier(&r.tag, p.boundary),
        })
        .collect();
    run(p.genus, p.boundary, items, opts)
}

fn run(g: usize, n: usize, items: Vec<Item>, opts: &VerifyOptions) -> Result<RunReport> {
    if items.iter().any(|it| it.tier == 3) && n != 0 && opts.wants(3) {
        return Err(Error::Domain(
            "tier 3 applies to closed surfaces only".into(),
        ));
    }
    let items: Vec<Item> = items.into_iter().filter(|it| opts.wants(it.tier)).collect();
    if items.iter().any(|it| it.tier < 3) {
        Pi1Rep::shared(g)?;
    }
    let results = items
        .par_iter()
        .map(|it| check(g, it, opts))
        .collect::<Result<Vec<_>>>()?;

    let mut suites: Vec<SuiteSummary> = Vec::new();
    for r in &results {
        let name = format!("{} tier {}", r.source.name(), r.tier);
        let idx = match suites.iter().position(|s| s.name == name) {
            Some(i) => i,
            None => {
                suites.push(SuiteSummary {
                    name,
                    ..Default::default()
                });
                suites.len() - 1
            }
        };
        let s = &mut suites[idx];
        match r.status {
            Status::Verified => s.verified += 1,
            Status::Refuted => s.refuted += 1,
            Status::Inconclusive => s.inconclusive += 1,
        }
    }
    suites.sort_by(|a, b| a.name.cmp(&b.name));

    let mut fixture_diff = Vec::new();
    if let Some(fx) = &opts.fixtures {
        for r in results.iter().filter(|r| r.tier == 3) {
            if let Some(old) = fx.get(g, &r.tag) {
                if r.witness.as_ref() != Some(old) {
                    fixture_diff.push(format!(
                        "! {}: stored {old} was not confirmed",
                        ConjugatorFixtures::key(g, &r.tag)
                    ));
                }
            }
        }
    }

    Ok(RunReport {
        genus: g,
        boundary: n,
        results,
        suites,
        fixture_diff,
    })
}

fn check(g: usize, it: &Item, opts: &VerifyOptions) -> Result<RelatorResult> {
    let t0 = Instant::now();
    let (status, witness, radius_used) = if it.tier == 3 {
        let hint = opts.fixtures.as_ref().and_then(|f| f.get(g, &it.tag));
        let res = verify_closed_relator(&it.word, g, opts.radius, hint)?;
        (res.status, res.witness, res.radius_used)
    } else {
        match Pi1Rep::shared(g)?.verify_relator(&it.word, it.tier)? {
            Pi1Verdict::Verified(k) => (
                Status::Verified,
                Some(rep_pi1::xword_to_word(&rep_pi1::power(
                    &rep_pi1::boundary_word(g),
                    k,
                ))),
                0,
            ),
            Pi1Verdict::Refuted(i) => (Status::Refuted, Some(Word::gen(GenId::X(i as u16))), 0),
        }
    };
    Ok(RelatorResult {
        source: it.source,
        tag: it.tag.clone(),
        tier: it.tier,
        status,
        witness,
        radius_used,
        micros: t0.elapsed().as_micros(),
    })
}
