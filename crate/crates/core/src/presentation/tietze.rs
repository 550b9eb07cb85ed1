use std::collections::BTreeMap;

use super::{Presentation, Relator};
use crate::error::{Error, Result};
use crate::word::{GenId, Word};

/// Solves `relator = 1` for `gen` when `gen` occurs exactly once.
fn solve_for(relator: &Word, gen: &GenId) -> Option<Word> {
    let letters = relator.letters();
    let mut hits = letters.iter().enumerate().filter(|(_, l)| &l.gen == gen);
    let (pos, letter) = hits.next()?;
    if hits.next().is_some() {
        return None;
    }
    // relator = P g^e S, so g^e = P⁻¹ S⁻¹ = (S P)⁻¹.
    let p = Word::from_letters(letters[..pos].iter().cloned());
    let s = Word::from_letters(letters[pos + 1..].iter().cloned());
    let sp = s.concat(&p);
    Some(if letter.inverse { sp } else { sp.invert() })
}

/// Removes `gen` using a relator of the form `gen = definition`.
///
/// The defining relator is dropped and `gen` is replaced by `definition` in
/// all other relators; relators that become trivial are dropped as well.
pub fn tietze_eliminate(p: &Presentation, gen: &GenId, definition: &Word) -> Result<Presentation> {
    if definition.contains_gen(gen) {
        return Err(Error::NotEliminable(gen.to_string()));
    }
    let def_idx = p
        .relators
        .iter()
        .position(|r| solve_for(&r.word, gen).as_ref() == Some(definition))
        .ok_or_else(|| Error::NotEliminable(gen.to_string()))?;
    let map = BTreeMap::from([(gen.clone(), definition.clone())]);
    let relators = p
        .relators
        .iter()
        .enumerate()
        .filter(|(k, _)| *k != def_idx)
        .map(|(_, r)| Relator::new(r.tag.clone(), r.lhs.replace(&map), r.rhs.replace(&map)))
        .filter(|r| !r.word.is_empty())
        .collect();
    Ok(Presentation {
        genus: p.genus,
        boundary: p.boundary,
        generators: p.generators.iter().filter(|g| *g != gen).cloned().collect(),
        relators,
        meta: format!("{} with {gen} eliminated", p.meta),
    })
}

/// Finds the defining word for `gen` in some relator, if any.
pub fn definition_of(p: &Presentation, gen: &GenId) -> Option<Word> {
    p.relators.iter().find_map(|r| solve_for(&r.word, gen))
}
