//! Acceptance run: prints one PASS/FAIL line per criterion.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crosscap::abelianize::h1;
use crosscap::closed::{verify_closed_relator, Status};
use crosscap::enumerate::order;
use crosscap::presentation::dictionary::delta;
use crosscap::presentation::tietze::definition_of;
use crosscap::presentation::{
    braid_presentation, derived_relation_catalogue, nonorientable_mcg_presentation,
    small_genus_presentation, tietze_eliminate, CatalogueEntry,
};
use crosscap::rep_homology::{check_form_preservation, Coeff, HomologyRep};
use crosscap::rep_pi1::{boundary_word, generator_automorphism, Pi1Rep, K_MAX};
use crosscap::replay::{replay, verify_endpoints, DerivationScript, RelationLookup};
use crosscap::{GenId, Letter, Word};

struct Outcome {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }
}

struct Line {
    id: u8,
    pass: bool,
    failures: Vec<String>,
}

fn criterion(id: u8, name: &str, budget: Duration, f: impl FnOnce(&mut Outcome)) -> Line {
    let t0 = Instant::now();
    let mut out = Outcome::new();
    f(&mut out);
    let took = t0.elapsed();
    if took > budget {
        out.failures
            .push(format!("took {:.2?}, budget {budget:?}", took));
    }
    let pass = out.failures.is_empty();
    println!(
        "criterion {id} [{name}] {} (exact; {:.2?}, budget {budget:?})",
        if pass { "PASS" } else { "FAIL" },
        took
    );
    for n in &out.notes {
        println!("    note: {n}");
    }
    for f in &out.failures {
        println!("    failed: {f}");
    }
    Line {
        id,
        pass,
        failures: out.failures,
    }
}

fn entries(g: usize, n: usize, families: &[&str]) -> Vec<CatalogueEntry> {
    derived_relation_catalogue(g, n)
        .into_iter()
        .filter(|e| families.contains(&e.tag.family.as_str()))
        .collect()
}

/// Words checked by criteria 1–4, with a label.
fn all_checked_relators() -> Vec<(usize, String, Word)> {
    let mut out = Vec::new();
    for g in 3..=8 {
        for r in nonorientable_mcg_presentation(g, 1).unwrap().relators {
            out.push((g, format!("{} (n=1)", r.tag), r.word));
        }
        for e in derived_relation_catalogue(g, 1) {
            out.push((g, format!("{} (n=1)", e.tag), e.word()));
        }
        out.push((g, "Delta^2".into(), delta(g).pow(2)));
    }
    for g in 4..=8 {
        for e in derived_relation_catalogue(g, 0) {
            out.push((g, format!("{} (n=0)", e.tag), e.word()));
        }
    }
    out
}

const TIER3_FAMILIES: [&str; 12] = [
    "D", "Da", "B3", "B4a", "E2a", "E3a", "E4a", "E5", "E6", "G3a", "chain3", "lantern6",
];

fn scripts_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/scripts")
}

fn random_word(rng: &mut ChaCha8Rng, gens: &[GenId], len: usize) -> Word {
    Word::from_letters((0..len).map(|_| {
        let g = gens[rng.gen_range(0..gens.len())].clone();
        Letter::new(g, rng.gen_bool(0.5))
    }))
}

#[test]
fn acceptance() {
    let secs = Duration::from_secs;
    let mut lines = Vec::new();

    lines.push(criterion(1, "tier-1 completeness", secs(10), |o| {
        for g in 3..=8 {
            let rep = Pi1Rep::shared(g).unwrap();
            let p = nonorientable_mcg_presentation(g, 1).unwrap();
            for r in &p.relators {
                let phi = rep.evaluate(&r.word).unwrap();
                o.check(phi.is_identity(), || {
                    format!("g={g} {} is not the identity", r.tag)
                });
            }
            let w = boundary_word(g);
            for gen in &p.generators {
                let (f, finv) = generator_automorphism(gen, g).unwrap();
                o.check(f.apply(&w) == w && finv.apply(&w) == w, || {
                    format!("g={g} {gen} moves the boundary word")
                });
            }
        }
    }));

    lines.push(criterion(2, "derived-relation suite", secs(30), |o| {
        let mut count = 0;
        for g in 3..=8 {
            let rep = Pi1Rep::shared(g).unwrap();
            for n in [0, 1] {
                for e in derived_relation_catalogue(g, n)
                    .into_iter()
                    .filter(|e| e.tier == 1)
                {
                    count += 1;
                    let ok = rep.evaluate(&e.word()).unwrap().is_identity();
                    o.check(ok, || format!("g={g} n={n} {} fails at tier 1", e.tag));
                }
            }
        }
        o.notes.push(format!("{count} tier-1 entries checked"));
    }));

    lines.push(criterion(3, "tier-2 boundary conjugation", secs(10), |o| {
        for g in 2..=8 {
            let phi = Pi1Rep::shared(g)
                .unwrap()
                .evaluate(&delta(g).pow(2))
                .unwrap();
            let k = phi.boundary_conjugation_power(K_MAX);
            o.check(k.is_some(), || {
                format!("g={g} Delta^2 is not conjugation by a power of w")
            });
        }
        for g in 4..=8 {
            let rep = Pi1Rep::shared(g).unwrap();
            for e in entries(g, 0, &["B3", "B4"]) {
                let k = rep
                    .evaluate(&e.word())
                    .unwrap()
                    .boundary_conjugation_power(K_MAX);
                o.check(k.is_some(), || {
                    format!("g={g} {} is not conjugation by w^k, |k| <= {K_MAX}", e.tag)
                });
            }
        }
        let rep = Pi1Rep::shared(4).unwrap();
        for e in entries(4, 0, &["G1", "G2", "G3"]) {
            let k = rep
                .evaluate(&e.word())
                .unwrap()
                .boundary_conjugation_power(K_MAX);
            o.check(k.is_some(), || {
                format!("g=4 {} fails in the Delta_4^2 quotient", e.tag)
            });
        }
    }));

    lines.push(criterion(4, "tier-3 closed verification", secs(300), |o| {
        let mut count = 0;
        for g in 4..=7 {
            for e in entries(g, 0, &TIER3_FAMILIES) {
                count += 1;
                let res = verify_closed_relator(&e.word(), g, None, None).unwrap();
                o.check(res.status == Status::Verified, || {
                    format!(
                        "g={g} {} is {:?} (radius {})",
                        e.tag, res.status, res.radius_used
                    )
                });
            }
        }
        o.check(!entries(5, 0, &["chain3"]).is_empty(), || {
            "two-holed torus missing at g=5".into()
        });
        o.check(entries(6, 0, &["lantern6"]).len() == 2, || {
            "lantern missing at g=6".into()
        });
        o.notes.push(format!("{count} relators verified inner"));
    }));

    lines.push(criterion(5, "homology gate", secs(10), |o| {
        for (g, label, word) in all_checked_relators() {
            let f2 = HomologyRep::new(g, Coeff::F2)
                .unwrap()
                .evaluate(&word)
                .unwrap();
            let z = HomologyRep::new(g, Coeff::Z)
                .unwrap()
                .evaluate(&word)
                .unwrap();
            o.check(f2.is_identity(), || {
                format!("g={g} {label} is not the identity over F2")
            });
            o.check(z.is_identity_mod_lattice(), || {
                format!("g={g} {label} is not the identity mod L")
            });
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for g in 3..=8 {
            let f2 = HomologyRep::new(g, Coeff::F2).unwrap();
            let z = HomologyRep::new(g, Coeff::Z).unwrap();
            for (gen, m) in f2.generators() {
                o.check(check_form_preservation(m), || {
                    format!("g={g} {gen} breaks the mod-2 form")
                });
            }
            for (gen, m) in z.generators() {
                o.check(m.preserves_lattice(), || {
                    format!("g={g} {gen} does not preserve L")
                });
            }
            let rep = Pi1Rep::shared(g).unwrap();
            let gens = nonorientable_mcg_presentation(g, 1).unwrap().generators;
            for _ in 0..1000 {
                let len = rng.gen_range(1..=12);
                let w = random_word(&mut rng, &gens, len);
                let via_pi1 = rep.evaluate(&w).unwrap().abelianize_f2();
                o.check(via_pi1 == f2.evaluate(&w).unwrap(), || {
                    format!("g={g} F2 mismatch on {w}")
                });
            }
        }
    }));

    lines.push(criterion(6, "small-genus orders", secs(1), |o| {
        for (g, n, want) in [(1, 0, 1), (1, 1, 1), (2, 0, 4)] {
            let got = order(&small_genus_presentation(g, n).unwrap(), 1000).unwrap();
            o.check(got == Some(want), || {
                format!("({g},{n}) order {got:?}, expected {want}")
            });
        }
        let got = order(&braid_presentation(3, true).unwrap(), 1000).unwrap();
        o.check(got == Some(6), || {
            format!("spherical braids on 3 strands: {got:?}, expected 6")
        });
    }));

    lines.push(criterion(7, "abelianization", secs(5), |o| {
        for g in [6, 8] {
            for n in [0, 1] {
                let p = nonorientable_mcg_presentation(g, n).unwrap();
                let base = h1(&p).unwrap();
                let mut gens = vec![GenId::B(0)];
                gens.extend((2..=(g - 2) / 2).map(|j| GenId::B(j as u16)));
                for gen in gens {
                    let Some(def) = definition_of(&p, &gen) else {
                        o.failures
                            .push(format!("({g},{n}) no defining relator for {gen}"));
                        continue;
                    };
                    let q = tietze_eliminate(&p, &gen, &def).unwrap();
                    let after = h1(&q).unwrap();
                    o.check(after == base, || {
                        format!("({g},{n}) eliminating {gen}: {base} -> {after}")
                    });
                }
            }
        }
        let stable: Vec<_> = (7..=10)
            .map(|g| h1(&nonorientable_mcg_presentation(g, 0).unwrap()).unwrap())
            .collect();
        o.check(stable.windows(2).all(|w| w[0] == w[1]), || {
            format!("closed H1 varies: {stable:?}")
        });
        let r = h1(&small_genus_presentation(2, 0).unwrap()).unwrap();
        o.check(r.free_rank == 0 && r.torsion == vec![2, 2], || {
            format!("(2,0) gives {r}")
        });
    }));

    lines.push(criterion(8, "replayer", secs(5), |o| {
        let mut paths: Vec<_> = std::fs::read_dir(scripts_dir())
            .unwrap()
            .map(|e| e.unwrap().path())
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect();
        paths.sort();
        o.check(paths.len() >= 9, || {
            format!("only {} scripts shipped", paths.len())
        });
        for path in &paths {
            let name = path.file_name().unwrap().to_string_lossy().into_owned();
            let script = DerivationScript::load(path).unwrap();
            let lookup = RelationLookup::for_surface(script.genus, script.boundary).unwrap();
            match replay(&script, &lookup) {
                Ok(_) => {
                    let res = verify_endpoints(&script, &lookup).unwrap();
                    o.check(res.status == Status::Verified, || {
                        format!("{name}: endpoints {:?}", res.status)
                    });
                }
                Err(e) => o.failures.push(format!("{name}: {e}")),
            }
        }
        o.notes.push(format!("{} scripts", paths.len()));
    }));

    lines.push(criterion(9, "base-case fixtures", secs(10), |o| {
        let rep = Pi1Rep::shared(3).unwrap();
        let g3 = entries(3, 1, &["smallgenus"]);
        o.check(g3.len() == 8, || {
            format!("expected (i)-(vii) and d, found {}", g3.len())
        });
        for e in &g3 {
            o.check(rep.evaluate(&e.word()).unwrap().is_identity(), || {
                format!("g=3 {} fails", e.tag)
            });
        }
        let rep = Pi1Rep::shared(4).unwrap();
        let g4 = entries(4, 0, &["smallgenus"]);
        o.check(g4.len() == 7, || {
            format!("expected (iii)-(ix), found {}", g4.len())
        });
        for e in &g4 {
            let ok = match e.tier {
                1 => rep.evaluate(&e.word()).unwrap().is_identity(),
                2 => rep
                    .evaluate(&e.word())
                    .unwrap()
                    .boundary_conjugation_power(K_MAX)
                    .is_some(),
                _ => {
                    verify_closed_relator(&e.word(), 4, None, None)
                        .unwrap()
                        .status
                        == Status::Verified
                }
            };
            o.check(ok, || format!("g=4 {} fails at tier {}", e.tag, e.tier));
        }
    }));

    // Criterion 3 cannot hold as stated: B4 acts as conjugation by x_1^2...x_{g-1}^2
    // on x_1..x_{g-1} and fixes x_g, which is no power of the boundary word.
    // It must fail for exactly those reasons and nothing else.
    let known: Vec<String> = (4..=8)
        .map(|g| format!("g={g} B4 is not conjugation by w^k, |k| <= {K_MAX}"))
        .collect();
    for line in &lines {
        if line.id == 3 {
            assert_eq!(
                line.failures, known,
                "criterion 3 failed for an unexpected reason"
            );
        } else {
            assert!(
                line.pass,
                "criterion {} failed: {:?}",
                line.id, line.failures
            );
        }
    }
}
