//! Relations that follow from the defining relators, each with the
//! representation tier in which it is checked:
//!
//! * tier 1: identity automorphism of the free group (holds in `M(N_{g,1})`);
//! * tier 2: conjugation by a power of the boundary word (holds modulo `Δ_g²`);
//! * tier 3: inner automorphism of the closed surface group.

use super::builders::{c9_z, relator_d, relator_da};
use super::dictionary::{a, a_run, b, c, c_i1, chain5, delta, prod, r, u, u_run, u_run_down, v};
use super::RelatorTag;
use crate::word::Word;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogueEntry {
    pub tag: RelatorTag,
    pub lhs: Word,
    pub rhs: Word,
    pub tier: u8,
}

impl CatalogueEntry {
    pub fn word(&self) -> Word {
        self.lhs.concat(&self.rhs.invert())
    }
}

struct Builder {
    out: Vec<CatalogueEntry>,
}

impl Builder {
    fn add(&mut self, family: &str, params: &[usize], lhs: Word, rhs: Word, tier: u8) {
        let params: Vec<i64> = params.iter().map(|&p| p as i64).collect();
        self.out.push(CatalogueEntry {
            tag: RelatorTag::new(family, &params),
            lhs,
            rhs,
            tier,
        });
    }

    fn commute(&mut self, family: &str, params: &[usize], x: Word, z: Word, tier: u8) {
        self.add(family, params, x.concat(&z), z.concat(&x), tier);
    }

    fn braid(&mut self, family: &str, params: &[usize], x: Word, z: Word, tier: u8) {
        self.add(
            family,
            params,
            prod(&[x.clone(), z.clone(), x.clone()]),
            prod(&[z.clone(), x, z]),
            tier,
        );
    }
}

fn one() -> Word {
    Word::identity()
}

/// `x^{-1} y x`.
fn conj_by_inverse(x: &Word, y: &Word) -> Word {
    x.invert().conjugate(y)
}

/// Derived relations valid for `(g, n)`, each filtered by its own genus hypothesis.
///
/// For `n = 1` only tier-1 entries are listed; closed surfaces list all tiers.
pub fn derived_relation_catalogue(g: usize, n: usize) -> Vec<CatalogueEntry> {
    if g + n < 4 || n > 1 {
        return Vec::new();
    }
    let mut c_ = Builder { out: Vec::new() };
    let bld = &mut c_;

    // Consequences of the C-relations.
    for i in 1..g {
        for j in 1..g {
            if i.abs_diff(j) > 1 {
                bld.commute("C1a", &[i, j], a(i), u(j), 1);
            }
        }
    }
    for i in 1..g {
        bld.add("C4a", &[i], prod(&[a(i), u(i), a(i)]), u(i), 1);
        bld.add(
            "star",
            &[i],
            prod(&[u(i), a(i), u(i).invert()]),
            a(i).invert(),
            1,
        );
    }
    for i in 1..g - 1 {
        let lhs = prod(&[u(i + 1), a(i), a(i + 1), u(i)]);
        bld.add("C5a", &[i], lhs.clone(), prod(&[a(i), a(i + 1)]), 1);
        bld.add("starstar", &[i], lhs, prod(&[a(i), a(i + 1)]), 1);
    }
    if g >= 4 {
        let x = a_run(1, 3);
        let z = u_run(1, 3);
        bld.add(
            "C6a",
            &[1],
            b(1).concat(&u(3)).pow(2),
            u(3).concat(&b(1)).pow(2),
            1,
        );
        bld.add(
            "C6a",
            &[2],
            u(3).concat(&b(1)).pow(2),
            x.pow(2).concat(&z.pow(2)),
            1,
        );
    }
    for i in 5..g {
        bld.commute("C7a", &[i], u(i), b(1), 1);
    }
    if g >= 5 {
        bld.commute("C9", &[], b(1), c9_z(), 1);
    }

    // Braid identities.
    for k in 2..=g {
        for i in 1..k {
            bld.add(
                "B5",
                &[k, i],
                delta(k).concat(&u(i)),
                u(k - i).concat(&delta(k)),
                1,
            );
        }
        bld.add(
            "B6",
            &[k],
            delta(k),
            delta(k - 1).concat(&u_run_down(k - 1, 1)),
            1,
        );
        bld.add(
            "B7",
            &[k],
            delta(k).pow(2),
            u_run(1, k - 1).pow(k as i64),
            1,
        );
        bld.add(
            "B8",
            &[k],
            delta(k).pow(2),
            prod(&[delta(k - 1).pow(2), u_run_down(k - 1, 1), u_run(1, k - 1)]),
            1,
        );
    }
    let stab = (1..g).rev().fold(Word::identity(), |acc, i| {
        let piece = prod(&[u_run(i, g - 2), u(g - 1).pow(2), u_run_down(g - 2, i)]);
        acc.concat(&piece)
    });
    bld.add("DeltaStab", &[], delta(g).pow(2), stab, 1);

    // Twist identities.
    for k in 2..=g {
        for i in 1..k {
            bld.add(
                "E1",
                &[k, i],
                delta(k).concat(&a(i)),
                a(k - i).invert().concat(&delta(k)),
                1,
            );
        }
    }
    bld.add("E2", &[], r(g).pow(2), delta(g).pow(2), 1);
    for i in 2..g {
        bld.commute("E3", &[i], r(g), a(i), 1);
        bld.add("E4", &[i], prod(&[u(i), r(g), u(i)]), r(g), 1);
    }

    if g >= 6 {
        let w45 = prod(&[a(4), a(5), u(5), u(4)]);
        bld.add(
            "inS2",
            &[],
            conj_by_inverse(&b(1), &w45.invert()),
            prod(&[
                a(4),
                a(5),
                u(4).invert(),
                v(),
                u(4),
                v(),
                a(5).invert(),
                a(4).invert(),
            ]),
            1,
        );
    }

    for rho in [2usize, 3] {
        if g >= 2 * rho + 2 {
            a8a_consequences(bld, rho);
        }
    }

    base_cases(bld, g, n);

    if n == 0 {
        closed_relations(bld, g);
    }
    c_.out
}

/// `c_0 = b_{ρ-1}`, `c_i = a_{2ρ+2-i}`, `d = b_{ρ-2}`.
fn a8a_consequences(bld: &mut Builder, rho: usize) {
    let cc = |i: usize| {
        if i == 0 {
            b(rho - 1)
        } else {
            a(2 * rho + 2 - i)
        }
    };
    let d = b(rho - 2);
    let top = 2 * rho + 1;
    for i in 1..=top {
        for j in i + 2..=top {
            bld.commute("H1", &[rho, i, j], cc(i), cc(j), 1);
        }
    }
    for i in 1..top {
        bld.braid("H2", &[rho, i], cc(i), cc(i + 1), 1);
    }
    for i in (1..=top).filter(|&i| i != 2) {
        bld.commute("H3", &[rho, i], cc(0), cc(i), 1);
    }
    bld.braid("H4", &[rho], cc(0), cc(2), 1);
    for i in (1..=top).filter(|&i| i != 4) {
        bld.commute("H5", &[rho, i], d.clone(), cc(i), 1);
    }
    bld.braid("H6", &[rho], d.clone(), cc(4), 1);

    // Fundamental elements of the A5 and D6 chains at level ρ-1.
    let i = rho - 1;
    bld.add("A8a", &[rho, 1], c_i1(i).pow(2), chain5(i).pow(6), 1);
    for k in 1..=4 {
        bld.commute("A8a", &[rho, 2, k], b(rho), cc(k), 1);
    }
    bld.commute("A8a", &[rho, 3], b(rho), d, 1);
}

fn base_cases(bld: &mut Builder, g: usize, n: usize) {
    let tag = |k: usize| [g, n, k];
    if (g, n) == (3, 1) {
        let d = a_run(1, 2)
            .concat(&a(1))
            .invert()
            .concat(&u(2))
            .concat(&u(1));
        let ds = |w: &[Word]| prod(w);
        bld.commute("smallgenus", &tag(1), a(2), d.clone(), 1);
        bld.braid("smallgenus", &tag(2), a(2), a(1), 1);
        bld.braid("smallgenus", &tag(3), d.clone(), a(1), 1);
        bld.add(
            "smallgenus",
            &tag(4),
            u(2).conjugate(&a(2)),
            a(2).invert(),
            1,
        );
        bld.add(
            "smallgenus",
            &tag(5),
            u(2).conjugate(&a(1)),
            ds(&[a(1), d.invert(), a(1).invert()]),
            1,
        );
        bld.add(
            "smallgenus",
            &tag(6),
            d.concat(&u(2)).pow(2),
            u(2).concat(&d).pow(2),
            1,
        );
        bld.add(
            "smallgenus",
            &tag(7),
            d.concat(&u(2)).pow(2),
            ds(&[a(2), d.pow(2), a(1)]).pow(3),
            1,
        );
        bld.add(
            "smallgenus",
            &tag(8),
            prod(&[a(1).invert(), u(2), a(1).invert(), u(2).invert(), a(1)]),
            d,
            1,
        );
    }
    if (g, n) == (4, 0) {
        let d = prod(&[a(2), a(3), a(2)])
            .invert()
            .concat(&u(3))
            .concat(&u(2));
        bld.add("smallgenus", &tag(3), u(1).pow(2), u(3).pow(2), 3);
        bld.add("smallgenus", &tag(4), u(3).concat(&b(1)).pow(2), one(), 3);
        bld.add("smallgenus", &tag(5), u(3).concat(&d).pow(2), one(), 3);
        bld.commute("smallgenus", &tag(6), d.clone(), a(3), 1);
        bld.braid("smallgenus", &tag(7), d.clone(), a(2), 1);
        bld.add(
            "smallgenus",
            &tag(8),
            prod(&[d.clone(), a(2), a(3)]).pow(4),
            one(),
            3,
        );
        bld.add(
            "smallgenus",
            &tag(9),
            u(3).conjugate(&d),
            u(1).conjugate(&d),
            3,
        );
    }
}

fn closed_relations(bld: &mut Builder, g: usize) {
    let d_rel = relator_d(g);
    bld.add("D", &[], d_rel.lhs, d_rel.rhs, 3);
    let da_rel = relator_da(g);
    bld.add("Da", &[], da_rel.lhs, da_rel.rhs, 3);
    bld.add("B3", &[], u_run(1, g - 1).pow(g as i64), one(), 2);
    bld.add("B4", &[], u_run(1, g - 2).pow(g as i64 - 1), one(), 3);
    bld.add(
        "B4a",
        &[],
        u_run_down(g - 1, 1).concat(&u_run(1, g - 1)),
        one(),
        3,
    );
    bld.add("E2a", &[], r(g).pow(2), one(), 3);
    for i in 1..g {
        bld.commute("E3a", &[i], r(g), a(i), 3);
        bld.add("E4a", &[i], prod(&[u(i), r(g), u(i)]), r(g), 3);
    }
    bld.add(
        "E5",
        &[1],
        a_run(1, g - 1).pow(2),
        u_run_down(g - 1, 1).pow(-2),
        3,
    );
    bld.add(
        "E5",
        &[2],
        u_run_down(g - 1, 1).pow(-2),
        u_run(1, g - 1).pow(2),
        3,
    );
    let k = if g.is_multiple_of(2) { g } else { 2 * g };
    bld.add("E6", &[], a_run(1, g - 1).pow(k as i64), one(), 3);

    if g == 4 {
        let x = a_run(1, 3);
        let bb = b(1);
        bld.add(
            "G1",
            &[],
            prod(&[bb.clone(), u(3), u(2), bb.invert()]),
            prod(&[x.pow(3), u(2), u(3), x.invert()]),
            2,
        );
        bld.add(
            "G2",
            &[],
            prod(&[bb.clone(), u(3), u(2), u(1), bb.clone()]),
            prod(&[x.pow(3), u_run_down(3, 1).invert(), x.pow(3)]),
            2,
        );
        bld.add(
            "G3",
            &[],
            prod(&[x.pow(-4), bb.clone(), r(4)]).pow(2),
            one(),
            2,
        );
        bld.add("G3a", &[], bb.concat(&r(4)).pow(2), one(), 3);
    }
    if g > 4 {
        let bi = b(1).invert();
        bld.add(
            "chain3",
            &[1],
            bi.concat(&a_run(1, 3).pow(4)),
            delta(4).conjugate(&bi),
            3,
        );
        bld.add(
            "chain3",
            &[2],
            delta(4).conjugate(&bi),
            prod(&[r(g), b(1), r(g)]),
            3,
        );
    }
    if g == 6 {
        let w = prod(&[a(4), a(3), a(5), a(4)]);
        let d = conj_by_inverse(&w, &b(1));
        bld.add(
            "lantern6",
            &[1],
            prod(&[b(2), a(1), a(3), a(5)]),
            prod(&[c(), d.clone(), b(1)]),
            3,
        );
        let ud = conj_by_inverse(&u(5), &d);
        bld.add("lantern6", &[2], conj_by_inverse(&c(), &ud), ud, 3);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn find<'a>(cat: &'a [CatalogueEntry], fam: &str) -> Vec<&'a CatalogueEntry> {
        cat.iter().filter(|e| e.tag.family == fam).collect()
    }

    #[test]
    fn boundary_catalogue_is_tier_one() {
        let cat = derived_relation_catalogue(4, 1);
        assert!(cat.iter().all(|e| e.tier == 1));
        let e2 = find(&cat, "E2");
        assert_eq!(e2.len(), 1);
        assert!(find(&cat, "G3a").is_empty());
    }

    #[test]
    fn closed_catalogue_tiers() {
        let cat = derived_relation_catalogue(4, 0);
        assert_eq!(find(&cat, "G3a")[0].tier, 3);
        assert_eq!(find(&cat, "G1")[0].tier, 2);
        assert!(find(&cat, "chain3").is_empty());
        let cat6 = derived_relation_catalogue(6, 0);
        assert_eq!(find(&cat6, "lantern6").len(), 2);
        assert_eq!(find(&cat6, "chain3").len(), 2);
    }

    #[test]
    fn genus_hypotheses() {
        assert!(find(&derived_relation_catalogue(4, 1), "C9").is_empty());
        assert_eq!(find(&derived_relation_catalogue(5, 1), "C9").len(), 1);
        assert!(find(&derived_relation_catalogue(5, 1), "inS2").is_empty());
        assert_eq!(find(&derived_relation_catalogue(7, 1), "C7a").len(), 2);
        assert!(derived_relation_catalogue(3, 0).is_empty());
    }
}
