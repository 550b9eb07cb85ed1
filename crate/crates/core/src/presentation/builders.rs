use super::dictionary::{a, a8_rhs, a_run, b, prod, u, u_run, u_run_down};
use super::{Presentation, Relator, RelatorTag};
use crate::error::{Error, Result};
use crate::word::{GenId, Word};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BuildOptions {
    /// Closed surfaces: use (Da) instead of (D).
    pub use_da: bool,
    /// Spherical braids: use (B4a) instead of (B4).
    pub use_b4a: bool,
}

fn rel(family: &str, params: &[i64], lhs: Word, rhs: Word) -> Relator {
    Relator::new(RelatorTag::new(family, params), lhs, rhs)
}

fn comm(family: &str, params: &[i64], x: Word, z: Word) -> Relator {
    rel(family, params, x.concat(&z), z.concat(&x))
}

fn braid(family: &str, params: &[i64], x: Word, z: Word) -> Relator {
    rel(
        family,
        params,
        prod(&[x.clone(), z.clone(), x.clone()]),
        prod(&[z.clone(), x, z]),
    )
}

fn a_gens(g: usize) -> Vec<GenId> {
    (1..g).map(|i| GenId::A(i as u16)).collect()
}

fn u_gens(g: usize) -> Vec<GenId> {
    (1..g).map(|i| GenId::U(i as u16)).collect()
}

fn b_gens(g: usize) -> Vec<GenId> {
    (0..=(g - 2) / 2).map(|j| GenId::B(j as u16)).collect()
}

fn surface_relators(g: usize, rho: usize) -> Vec<Relator> {
    let mut out = Vec::new();
    for i in 1..g {
        for j in i + 2..g {
            out.push(comm("A1", &[i as i64, j as i64], a(i), a(j)));
        }
    }
    for i in 1..g.saturating_sub(1) {
        out.push(braid("A2", &[i as i64], a(i), a(i + 1)));
    }
    if g >= 4 {
        for i in (1..g).filter(|&i| i != 4) {
            out.push(comm("A3", &[i as i64], a(i), b(1)));
        }
    }
    if g >= 5 {
        out.push(braid("A4", &[], b(1), a(4)));
        out.push(rel(
            "A5",
            &[],
            a_run(2, 4).concat(&b(1)).pow(10),
            a_run(1, 4).concat(&b(1)).pow(6),
        ));
    }
    if g >= 7 {
        out.push(rel(
            "A6",
            &[],
            a_run(2, 6).concat(&b(1)).pow(12),
            a_run(1, 6).concat(&b(1)).pow(9),
        ));
    }
    out.push(rel("A7", &[], b(0), a(1)));
    let mut i = 1;
    while 2 * i + 4 <= g {
        out.push(rel("A8", &[i as i64], b(i + 1), a8_rhs(i)));
        i += 1;
    }
    if g == 2 * rho + 2 && g > 6 {
        out.push(comm("A9a", &[rho as i64], b(rho), a(2 * rho - 3)));
    }
    if g == 6 {
        out.push(comm("A9b", &[], b(2), b(1)));
    }
    out
}

/// Presentation of the mapping class group of `S_{ρ,r}`, `g = 2ρ + r`.
pub fn surface_mcg_presentation(rho: usize, r: usize) -> Result<Presentation> {
    if rho < 1 || !(1..=2).contains(&r) {
        return Err(Error::Domain(format!(
            "surface presentation needs rho >= 1 and r in {{1,2}}, got rho={rho}, r={r}"
        )));
    }
    let g = 2 * rho + r;
    let mut generators = a_gens(g);
    generators.extend(b_gens(g));
    Ok(Presentation {
        genus: g,
        boundary: r,
        generators,
        relators: surface_relators(g, rho),
        meta: format!("orientable subsurface S_({rho},{r}) spanned by the a-curves, g = {g}"),
    })
}

fn braid_relators(g: usize, spherical: bool, use_b4a: bool) -> Vec<Relator> {
    let mut out = Vec::new();
    for i in 1..g {
        for j in i + 2..g {
            out.push(comm("B1", &[i as i64, j as i64], u(i), u(j)));
        }
    }
    for i in 1..g - 1 {
        out.push(braid("B2", &[i as i64], u(i), u(i + 1)));
    }
    if spherical {
        let b3 = u_run(1, g - 1).pow(g as i64);
        if !b3.is_empty() {
            out.push(rel("B3", &[], b3, Word::identity()));
        }
        let (family, w) = if use_b4a {
            ("B4a", u_run_down(g - 1, 1).concat(&u_run(1, g - 1)))
        } else {
            ("B4", u_run(1, g - 2).pow(g as i64 - 1))
        };
        if !w.is_empty() {
            out.push(rel(family, &[], w, Word::identity()));
        }
    }
    out
}

/// Braid presentation on `u_1, …, u_{g-1}`; spherical adds (B3) and (B4) or (B4a).
pub fn braid_presentation(g: usize, spherical: bool) -> Result<Presentation> {
    braid_presentation_with(g, spherical, false)
}

pub fn braid_presentation_with(g: usize, spherical: bool, use_b4a: bool) -> Result<Presentation> {
    if g < 2 {
        return Err(Error::Domain(format!(
            "braid presentation needs g >= 2, got {g}"
        )));
    }
    Ok(Presentation {
        genus: g,
        boundary: if spherical { 0 } else { 1 },
        generators: u_gens(g),
        relators: braid_relators(g, spherical, use_b4a),
        meta: format!(
            "{} braids on {g} strands",
            if spherical { "spherical" } else { "disc" }
        ),
    })
}

fn c_relators(g: usize) -> Vec<Relator> {
    let mut out = Vec::new();
    for i in 3..g {
        out.push(comm("C1", &[i as i64], a(1), u(i)));
    }
    for i in 1..g - 1 {
        out.push(rel(
            "C2",
            &[i as i64],
            prod(&[a(i), u(i + 1), u(i)]),
            prod(&[u(i + 1), u(i), a(i + 1)]),
        ));
    }
    for i in 1..g - 1 {
        out.push(rel(
            "C3",
            &[i as i64],
            prod(&[a(i + 1), u(i), u(i + 1)]),
            prod(&[u(i), u(i + 1), a(i)]),
        ));
    }
    out.push(rel("C4", &[], prod(&[a(1), u(1), a(1)]), u(1)));
    out.push(rel(
        "C5",
        &[],
        prod(&[u(2), a(1), a(2), u(1)]),
        prod(&[a(1), a(2)]),
    ));
    if g >= 4 {
        out.push(rel(
            "C6",
            &[],
            u(3).concat(&b(1)).pow(2),
            a_run(1, 3).pow(2).concat(&u_run(1, 3).pow(2)),
        ));
    }
    if g >= 6 {
        out.push(comm("C7", &[], u(5), b(1)));
    }
    if g >= 5 {
        out.push(rel(
            "C8",
            &[],
            prod(&[a(4), u(4), c9_z(), b(1)]),
            prod(&[b(1), a(4), u(4)]),
        ));
    }
    out
}

/// `a_4 a_3 a_2 a_1 u_1 u_2 u_3 u_4`.
pub fn c9_z() -> Word {
    super::dictionary::a_run_down(4, 1).concat(&u_run(1, 4))
}

/// The relator (D).
pub fn relator_d(g: usize) -> Relator {
    let m = a_run(2, g - 1).concat(&u_run_down(g - 1, 2));
    rel("D", &[], prod(&[a(1), m.clone(), a(1)]), m)
}

/// The relator (Da).
pub fn relator_da(g: usize) -> Relator {
    let m = u_run_down(g - 2, 1).concat(&a_run(1, g - 2));
    rel("Da", &[], prod(&[a(g - 1), m.clone(), a(g - 1)]), m)
}

/// Presentation of `M(N_{g,n})` for `n ∈ {0,1}`, `g + n ≥ 4`.
pub fn nonorientable_mcg_presentation(g: usize, n: usize) -> Result<Presentation> {
    nonorientable_mcg_presentation_with(g, n, BuildOptions::default())
}

pub fn nonorientable_mcg_presentation_with(
    g: usize,
    n: usize,
    opts: BuildOptions,
) -> Result<Presentation> {
    if n > 1 {
        return Err(Error::Domain(format!(
            "boundary count must be 0 or 1, got {n}"
        )));
    }
    if g + n <= 3 {
        return Err(Error::Domain(format!(
            "the main presentation needs g + n > 3, got g = {g}, n = {n}; use the small-genus presentation"
        )));
    }
    let r = if g % 2 == 1 { 1 } else { 2 };
    let rho = (g - r) / 2;
    let mut generators = a_gens(g);
    generators.extend(u_gens(g));
    generators.extend(b_gens(g));
    let mut relators = surface_relators(g, rho);
    relators.extend(braid_relators(g, n == 0, opts.use_b4a));
    relators.extend(c_relators(g));
    if n == 0 {
        relators.push(if opts.use_da {
            relator_da(g)
        } else {
            relator_d(g)
        });
    }
    Ok(Presentation {
        genus: g,
        boundary: n,
        generators,
        relators,
        meta: format!("mapping class group of N_({g},{n})"),
    })
}

/// The classical presentations for `(g, n) ∈ {(1,0), (1,1), (2,0), (2,1), (3,0)}`.
pub fn small_genus_presentation(g: usize, n: usize) -> Result<Presentation> {
    let tag = |k: i64| RelatorTag::new("smallgenus", &[g as i64, n as i64, k]);
    let one = Word::identity;
    let y_gen = |i: u16| GenId::named("y", Some(i));
    let yw = |i: u16| Word::gen(y_gen(i));
    let (generators, relators) = match (g, n) {
        (1, 0) | (1, 1) => (vec![], vec![]),
        (2, 0) => (
            vec![GenId::A(1), y_gen(1)],
            vec![
                Relator::new(tag(1), a(1).pow(2), one()),
                Relator::new(tag(2), yw(1).pow(2), one()),
                Relator::new(tag(3), a(1).concat(&yw(1)).pow(2), one()),
            ],
        ),
        (2, 1) => (
            vec![GenId::A(1), y_gen(1)],
            vec![Relator::new(tag(1), prod(&[a(1), yw(1), a(1)]), yw(1))],
        ),
        (3, 0) => (
            vec![GenId::A(1), GenId::A(2), y_gen(2)],
            vec![
                Relator::new(tag(1), prod(&[a(1), a(2), a(1)]), prod(&[a(2), a(1), a(2)])),
                Relator::new(tag(2), yw(2).pow(2), one()),
                Relator::new(tag(3), a(1).concat(&yw(2)).pow(2), one()),
                Relator::new(tag(4), a(2).concat(&yw(2)).pow(2), one()),
                Relator::new(tag(5), a(1).concat(&a(2)).pow(6), one()),
            ],
        ),
        _ => {
            return Err(Error::Domain(format!(
                "no small-genus presentation for (g, n) = ({g}, {n})"
            )))
        }
    };
    Ok(Presentation {
        genus: g,
        boundary: n,
        generators,
        relators,
        meta: format!("classical presentation of M(N_({g},{n}))"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn families(p: &Presentation) -> Vec<String> {
        p.relators.iter().map(|r| r.tag.to_string()).collect()
    }

    #[test]
    fn surface_g3() {
        let p = surface_mcg_presentation(1, 1).unwrap();
        assert_eq!(p.generators.len(), 3);
        assert_eq!(families(&p), ["A2(1)", "A7"]);
    }

    #[test]
    fn surface_g4() {
        let p = surface_mcg_presentation(1, 2).unwrap();
        assert_eq!(
            families(&p),
            ["A1(1,3)", "A2(1)", "A2(2)", "A3(1)", "A3(2)", "A3(3)", "A7"]
        );
    }

    #[test]
    fn surface_side_conditions() {
        let has = |g: usize, fam: &str| {
            let r = if g % 2 == 1 { 1 } else { 2 };
            surface_mcg_presentation((g - r) / 2, r)
                .unwrap()
                .relators
                .iter()
                .any(|x| x.tag.family == fam)
        };
        assert!(!has(4, "A4") && has(5, "A4") && has(5, "A5"));
        assert!(!has(6, "A6") && has(7, "A6"));
        assert!(!has(5, "A8") && has(6, "A8") && has(7, "A8"));
        assert!(has(6, "A9b") && !has(6, "A9a") && !has(7, "A9b"));
        assert!(!has(7, "A9a") && has(8, "A9a") && !has(8, "A9b"));
        let p8 = surface_mcg_presentation(3, 2).unwrap();
        assert_eq!(p8.relator("A9a", &[3]).unwrap().lhs.to_string(), "b3*a3");
        assert!(surface_mcg_presentation(0, 1).is_err());
        assert!(surface_mcg_presentation(1, 3).is_err());
    }

    #[test]
    fn braid_examples() {
        assert_eq!(families(&braid_presentation(3, false).unwrap()), ["B2(1)"]);
        assert_eq!(
            families(&braid_presentation(4, false).unwrap()),
            ["B1(1,3)", "B2(1)", "B2(2)"]
        );
        let s = braid_presentation(3, true).unwrap();
        assert_eq!(families(&s), ["B2(1)", "B3", "B4"]);
        assert_eq!(s.relators[1].word.to_string(), "u1*u2*u1*u2*u1*u2");
        assert_eq!(s.relators[2].word.to_string(), "u1*u1");
        assert!(braid_presentation(1, false).is_err());
    }

    #[test]
    fn main_counts() {
        let p41 = nonorientable_mcg_presentation(4, 1).unwrap();
        assert_eq!(p41.generators.len(), 8);
        assert_eq!(p41.relators.len(), 18);
        assert_eq!(
            (
                p41.count_family('A'),
                p41.count_family('B'),
                p41.count_family('C')
            ),
            (7, 3, 8)
        );
        let p40 = nonorientable_mcg_presentation(4, 0).unwrap();
        assert_eq!(p40.relators.len(), 21);
        let p31 = nonorientable_mcg_presentation(3, 1).unwrap();
        assert_eq!(p31.generators.len(), 5);
        assert_eq!(
            families(&p31),
            ["A2(1)", "A7", "B2(1)", "C2(1)", "C3(1)", "C4", "C5"]
        );
        assert!(nonorientable_mcg_presentation(3, 0).is_err());
        assert!(nonorientable_mcg_presentation(2, 1).is_err());
        for g in 3..=10 {
            for n in 0..=1 {
                if g + n > 3 {
                    nonorientable_mcg_presentation(g, n)
                        .unwrap()
                        .validate()
                        .unwrap();
                }
            }
        }
    }

    #[test]
    fn c_side_conditions() {
        let fams = |g| -> Vec<String> {
            nonorientable_mcg_presentation(g, 1)
                .unwrap()
                .relators
                .iter()
                .map(|r| r.tag.family.clone())
                .collect()
        };
        assert!(!fams(4).contains(&"C8".to_string()) && fams(5).contains(&"C8".to_string()));
        assert!(!fams(5).contains(&"C7".to_string()) && fams(6).contains(&"C7".to_string()));
        assert!(!fams(3).contains(&"C6".to_string()) && fams(4).contains(&"C6".to_string()));
    }

    #[test]
    fn closed_variants() {
        let p = nonorientable_mcg_presentation_with(
            5,
            0,
            BuildOptions {
                use_da: true,
                use_b4a: true,
            },
        )
        .unwrap();
        assert!(p.relator("Da", &[]).is_some() && p.relator("D", &[]).is_none());
        assert!(p.relator("B4a", &[]).is_some() && p.relator("B4", &[]).is_none());
        assert_eq!(
            relator_d(4).word,
            relator_d(4).lhs.concat(&relator_d(4).rhs.invert())
        );
    }

    #[test]
    fn small_genus() {
        let p = small_genus_presentation(2, 0).unwrap();
        assert_eq!(
            p.to_text().lines().last().unwrap(),
            "smallgenus(2,0,3): a1*y1*a1*y1 = 1"
        );
        assert_eq!(
            small_genus_presentation(2, 1).unwrap().relators[0]
                .word
                .to_string(),
            "a1*y1*a1*y1^-1"
        );
        let p30 = small_genus_presentation(3, 0).unwrap();
        assert_eq!((p30.generators.len(), p30.relators.len()), (3, 5));
        assert!(small_genus_presentation(1, 0)
            .unwrap()
            .generators
            .is_empty());
        assert!(small_genus_presentation(4, 0).is_err());
    }
}
