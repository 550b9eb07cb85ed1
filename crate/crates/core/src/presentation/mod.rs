//! Finite presentations: builders, named elements, Tietze moves, the
//! extension combinator and the catalogue of derived relations.

pub mod builders;
pub mod catalogue;
pub mod dictionary;
pub mod extension;
pub mod tietze;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{GenId, Word};

pub use builders::{
    braid_presentation, nonorientable_mcg_presentation, nonorientable_mcg_presentation_with,
    small_genus_presentation, surface_mcg_presentation, BuildOptions,
};
pub use catalogue::{derived_relation_catalogue, CatalogueEntry};
pub use dictionary::derived_element;
pub use extension::extension_presentation;
pub use tietze::tietze_eliminate;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RelatorTag {
    pub family: String,
    pub params: Vec<i64>,
}

impl RelatorTag {
    pub fn new(family: &str, params: &[i64]) -> Self {
        RelatorTag {
            family: family.to_string(),
            params: params.to_vec(),
        }
    }
}

impl fmt::Display for RelatorTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.family)?;
        if !self.params.is_empty() {
            let p: Vec<String> = self.params.iter().map(i64::to_string).collect();
            write!(f, "({})", p.join(","))?;
        }
        Ok(())
    }
}

/// A relation `lhs = rhs`, stored for verification as the single word `lhs·rhs⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relator {
    pub tag: RelatorTag,
    pub lhs: Word,
    pub rhs: Word,
    pub word: Word,
}

impl Relator {
    pub fn new(tag: RelatorTag, lhs: Word, rhs: Word) -> Self {
        let word = lhs.concat(&rhs.invert());
        Relator {
            tag,
            lhs,
            rhs,
            word,
        }
    }

    /// A relator known only as a word (`word = 1`).
    pub fn from_word(tag: RelatorTag, word: Word) -> Self {
        Relator {
            tag,
            lhs: word.clone(),
            rhs: Word::identity(),
            word,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub genus: usize,
    pub boundary: usize,
    pub generators: Vec<GenId>,
    pub relators: Vec<Relator>,
    pub meta: String,
}

impl Presentation {
    /// Checks that relators are nonempty and only use listed generators.
    pub fn validate(&self) -> Result<()> {
        let gens: BTreeSet<&GenId> = self.generators.iter().collect();
        if gens.len() != self.generators.len() {
            return Err(Error::Domain("duplicate generator".into()));
        }
        for r in &self.relators {
            if r.word.is_empty() {
                return Err(Error::Domain(format!("relator {} is trivial", r.tag)));
            }
            if let Some(g) = r.word.generators().find(|g| !gens.contains(g)) {
                return Err(Error::UnknownGenerator(format!(
                    "{g} (in relator {})",
                    r.tag
                )));
            }
        }
        Ok(())
    }

    pub fn generator_index(&self, gen: &GenId) -> Option<usize> {
        self.generators.iter().position(|g| g == gen)
    }

    pub fn count_family(&self, prefix: char) -> usize {
        self.relators
            .iter()
            .filter(|r| r.tag.family.starts_with(prefix))
            .count()
    }

    pub fn relator(&self, family: &str, params: &[i64]) -> Option<&Relator> {
        self.relators
            .iter()
            .find(|r| r.tag.family == family && r.tag.params == params)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if !self.meta.is_empty() {
            out.push_str(&format!("# {}\n", self.meta));
        }
        out.push_str(&format!(
            "# genus {}, boundary {}: {} generators, {} relators\n",
            self.genus,
            self.boundary,
            self.generators.len(),
            self.relators.len()
        ));
        let gens: Vec<String> = self.generators.iter().map(GenId::to_string).collect();
        out.push_str(&format!("generators: {}\n", gens.join(" ")));
        for r in &self.relators {
            out.push_str(&format!("{}: {} = {}\n", r.tag, r.lhs, r.rhs));
        }
        out
    }

    pub fn to_json_value(&self) -> PresentationJson {
        PresentationJson {
            genus: self.genus,
            boundary: self.boundary,
            generators: self.generators.iter().map(GenId::to_string).collect(),
            relators: self
                .relators
                .iter()
                .map(|r| RelatorJson {
                    tag: r.tag.family.clone(),
                    params: r.tag.params.clone(),
                    word: r.word.to_string(),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("serializable") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: PresentationJson = serde_json::from_str(text)?;
        let generators = raw
            .generators
            .iter()
            .map(|s| s.parse())
            .collect::<Result<Vec<GenId>>>()?;
        let relators = raw
            .relators
            .iter()
            .map(|r| {
                Ok(Relator::from_word(
                    RelatorTag::new(&r.tag, &r.params),
                    r.word.parse()?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        let p = Presentation {
            genus: raw.genus,
            boundary: raw.boundary,
            generators,
            relators,
            meta: String::new(),
        };
        p.validate()?;
        Ok(p)
    }

    /// GAP-style free group with a quotient relator list.
    pub fn to_cas(&self) -> String {
        let names: Vec<String> = self.generators.iter().map(|g| format!("\"{g}\"")).collect();
        let mut out = format!("F := FreeGroup({});\n", names.join(", "));
        for (k, g) in self.generators.iter().enumerate() {
            out.push_str(&format!("{g} := F.{};\n", k + 1));
        }
        let rels: Vec<String> = self
            .relators
            .iter()
            .map(|r| format!("  {}", r.word))
            .collect();
        if rels.is_empty() {
            out.push_str("rels := [];\n");
        } else {
            out.push_str(&format!("rels := [\n{}\n];\n", rels.join(",\n")));
        }
        out.push_str("G := F / rels;\n");
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationJson {
    pub genus: usize,
    pub boundary: usize,
    pub generators: Vec<String>,
    pub relators: Vec<RelatorJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelatorJson {
    pub tag: String,
    pub params: Vec<i64>,
    pub word: String,
}

/// Verification tier of a defining relator of the `(g, n)` presentation.
pub fn relator_tier(tag: &RelatorTag, n: usize) -> u8 {
    if n == 1 {
        return 1;
    }
    match tag.family.as_str() {
        "B3" => 2,
        "B4" | "B4a" | "D" | "Da" => 3,
        _ => 1,
    }
}
