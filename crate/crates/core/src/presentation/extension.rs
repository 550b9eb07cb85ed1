use std::collections::BTreeMap;

use super::{Presentation, Relator, RelatorTag};
use crate::error::{Error, Result};
use crate::word::{GenId, Word};

/// Presentation of a group `G` with normal subgroup `K` and quotient `H`.
///
/// `lift` names the lift of each `H`-generator. `r1[k]` is the `K`-word equal
/// in `G` to the lift of the `k`-th relator of `H`, and `r2[(x, y)]` is the
/// `K`-word equal to `x̃ y x̃⁻¹` for an `H`-generator `x` and `K`-generator `y`.
/// Conjugation relators carry the tag `conjugation` with the positions of
/// `x` and `y` as parameters.
pub fn extension_presentation(
    k: &Presentation,
    h: &Presentation,
    lift: &BTreeMap<GenId, GenId>,
    r1: &BTreeMap<usize, Word>,
    r2: &BTreeMap<(GenId, GenId), Word>,
) -> Result<Presentation> {
    let lifted = |x: &GenId| -> Result<GenId> {
        lift.get(x)
            .cloned()
            .ok_or_else(|| Error::MissingData(format!("no lift for {x}")))
    };
    let lift_map: BTreeMap<GenId, Word> = h
        .generators
        .iter()
        .map(|x| Ok((x.clone(), Word::gen(lifted(x)?))))
        .collect::<Result<_>>()?;

    let mut generators = k.generators.clone();
    for x in &h.generators {
        let l = lifted(x)?;
        if generators.contains(&l) {
            return Err(Error::Domain(format!(
                "lifted generator {l} clashes with a kernel generator"
            )));
        }
        generators.push(l);
    }

    let mut relators = k.relators.clone();
    for (idx, rel) in h.relators.iter().enumerate() {
        let wr = r1
            .get(&idx)
            .ok_or_else(|| Error::MissingData(format!("no kernel word for relator {}", rel.tag)))?;
        let lhs = rel.word.substitute_map(&lift_map)?;
        relators.push(Relator::new(rel.tag.clone(), lhs, wr.clone()));
    }
    for (xi, x) in h.generators.iter().enumerate() {
        for (yi, y) in k.generators.iter().enumerate() {
            let wxy = r2
                .get(&(x.clone(), y.clone()))
                .ok_or_else(|| Error::MissingData(format!("no conjugation word for ({x}, {y})")))?;
            let lhs = Word::gen(lifted(x)?).conjugate(&Word::gen(y.clone()));
            relators.push(Relator::new(
                RelatorTag::new("conjugation", &[xi as i64 + 1, yi as i64 + 1]),
                lhs,
                wxy.clone(),
            ));
        }
    }
    Ok(Presentation {
        genus: h.genus,
        boundary: h.boundary,
        generators,
        relators,
        meta: format!("extension of ({}) by ({})", h.meta, k.meta),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::w;

    fn pres(gens: &[&str], rels: &[&str]) -> Presentation {
        Presentation {
            genus: 0,
            boundary: 0,
            generators: gens.iter().map(|g| g.parse().unwrap()).collect(),
            relators: rels
                .iter()
                .map(|r| Relator::from_word(RelatorTag::new("R", &[]), w(r)))
                .collect(),
            meta: String::new(),
        }
    }

    #[test]
    fn cyclic_by_order_two() {
        let k = pres(&["k"], &[]);
        let h = pres(&["h"], &["h*h"]);
        let lift = BTreeMap::from([(w("h").letters()[0].gen.clone(), "ht".parse().unwrap())]);
        let r1 = BTreeMap::from([(0, w("k"))]);
        let r2 = BTreeMap::from([(("h".parse().unwrap(), "k".parse().unwrap()), w("k"))]);
        let p = extension_presentation(&k, &h, &lift, &r1, &r2).unwrap();
        let words: Vec<String> = p.relators.iter().map(|r| r.word.to_string()).collect();
        assert_eq!(words, ["ht*ht*k^-1", "ht*k*ht^-1*k^-1"]);
        assert_eq!(p.generators.len(), 2);
    }

    #[test]
    fn trivial_kernel() {
        let k = pres(&[], &[]);
        let h = pres(&["h"], &["h*h*h"]);
        let lift = BTreeMap::from([("h".parse().unwrap(), "hh".parse().unwrap())]);
        let r1 = BTreeMap::from([(0, Word::identity())]);
        let p = extension_presentation(&k, &h, &lift, &r1, &BTreeMap::new()).unwrap();
        assert_eq!(p.relators[0].word.to_string(), "hh*hh*hh");
    }

    #[test]
    fn missing_data() {
        let k = pres(&["k"], &[]);
        let h = pres(&["h"], &["h*h"]);
        let lift = BTreeMap::from([("h".parse().unwrap(), "ht".parse().unwrap())]);
        let r1 = BTreeMap::from([(0, w("k"))]);
        let err = extension_presentation(&k, &h, &lift, &r1, &BTreeMap::new()).unwrap_err();
        assert!(matches!(err, Error::MissingData(_)));
    }
}
