//! Named elements and their expansions over the primitive generators.
//!
//! Named symbols in words: `y{i}`, `Delta{k}`, `r{g}` (or bare `r` for the
//! ambient genus), `c`, `v`, `Ci{i}` for `C_{i,1}` and `Cii{i}` for `C_{i,2}`.

use crate::error::{Error, Result};
use crate::word::{GenId, Word};

pub fn a(i: usize) -> Word {
    Word::gen(GenId::A(i as u16))
}

pub fn u(i: usize) -> Word {
    Word::gen(GenId::U(i as u16))
}

pub fn b(j: usize) -> Word {
    Word::gen(GenId::B(j as u16))
}

/// `a_i a_{i+1} ⋯ a_j`; empty when `i > j`.
pub fn a_run(i: usize, j: usize) -> Word {
    Word::from_powers((i..=j).map(|k| (GenId::A(k as u16), 1)))
}

/// `u_i u_{i+1} ⋯ u_j`; empty when `i > j`.
pub fn u_run(i: usize, j: usize) -> Word {
    Word::from_powers((i..=j).map(|k| (GenId::U(k as u16), 1)))
}

/// `u_j u_{j-1} ⋯ u_i`; empty when `i > j`.
pub fn u_run_down(j: usize, i: usize) -> Word {
    Word::from_powers((i..=j).rev().map(|k| (GenId::U(k as u16), 1)))
}

/// `a_j a_{j-1} ⋯ a_i`; empty when `i > j`.
pub fn a_run_down(j: usize, i: usize) -> Word {
    Word::from_powers((i..=j).rev().map(|k| (GenId::A(k as u16), 1)))
}

pub fn prod(words: &[Word]) -> Word {
    Word::product(words.iter())
}

/// `Δ_1 = 1`, `Δ_k = (u_1 ⋯ u_{k-1}) Δ_{k-1}`.
pub fn delta(k: usize) -> Word {
    (2..=k).fold(Word::identity(), |acc, m| u_run(1, m - 1).concat(&acc))
}

/// `r_g = a_1 ⋯ a_{g-1} u_{g-1} ⋯ u_1`.
pub fn r(g: usize) -> Word {
    a_run(1, g - 1).concat(&u_run_down(g - 1, 1))
}

/// Crosscap slide `y_i = a_i u_i`.
pub fn y(i: usize) -> Word {
    a(i).concat(&u(i))
}

/// `c = (a_1 ⋯ a_5)² b (a_1 ⋯ a_5)⁻²`.
pub fn c() -> Word {
    a_run(1, 5).pow(2).conjugate(&b(1))
}

/// `v = a_3 a_2 a_1 u_1 u_2 u_3`.
pub fn v() -> Word {
    a_run_down(3, 1).concat(&u_run(1, 3))
}

/// `b_{i-1} a_{2i} a_{2i+1} a_{2i+2} a_{2i+3}`, the Coxeter word of the A5 chain.
pub fn chain5(i: usize) -> Word {
    b(i - 1).concat(&a_run(2 * i, 2 * i + 3))
}

/// `C_{i,1}`, the fundamental element of the A5 chain `b_{i-1}, a_{2i}, …, a_{2i+3}`.
pub fn c_i1(i: usize) -> Word {
    let bb = b(i - 1);
    prod(&[
        bb.clone(),
        a_run(2 * i, 2 * i + 3),
        bb.clone(),
        a_run(2 * i, 2 * i + 2),
        bb.clone(),
        a_run(2 * i, 2 * i + 1),
        bb.clone(),
        a(2 * i),
        bb,
    ])
}

/// `C_{i,2} = (b_{i-1} a_{2i} ⋯ a_{2i+3} b_i)^5`.
pub fn c_i2(i: usize) -> Word {
    chain5(i).concat(&b(i)).pow(5)
}

/// Right side of (A8): the expression for `b_{i+1}`.
pub fn a8_rhs(i: usize) -> Word {
    c_i2(i).concat(&chain5(i).pow(-6))
}

fn domain(msg: String) -> Error {
    Error::Domain(msg)
}

/// Expands a named element to a word over `a_i`, `u_i`, `b_0`, `b_1`.
///
/// `b` with `j ≥ 2` is expanded through the (A8) recursion.
pub fn derived_element(name: &str, params: &[usize], g: usize) -> Result<Word> {
    let p = |k: usize| -> Result<usize> {
        params
            .get(k)
            .copied()
            .ok_or_else(|| domain(format!("{name} needs {} parameter(s)", k + 1)))
    };
    let word = match name {
        "Delta" => {
            let k = p(0)?;
            if k < 1 || k > g {
                return Err(domain(format!("Delta_{k} needs 1 <= k <= g = {g}")));
            }
            delta(k)
        }
        "r" => {
            let k = params.first().copied().unwrap_or(g);
            if k < 2 || k > g {
                return Err(domain(format!("r_{k} needs 2 <= k <= g = {g}")));
            }
            r(k)
        }
        "y" | "a" | "u" => {
            let i = p(0)?;
            if i < 1 || i + 1 > g {
                return Err(domain(format!(
                    "{name}_{i} needs 1 <= i <= g-1 = {}",
                    g.saturating_sub(1)
                )));
            }
            match name {
                "y" => y(i),
                "a" => a(i),
                _ => u(i),
            }
        }
        "b" => {
            let j = p(0)?;
            if 2 * j + 2 > g {
                return Err(domain(format!("b_{j} needs 2j <= g-2 with g = {g}")));
            }
            expand_b(j)
        }
        "c" => {
            if g < 6 {
                return Err(domain("c needs g >= 6".into()));
            }
            c()
        }
        "v" => {
            if g < 4 {
                return Err(domain("v needs g >= 4".into()));
            }
            v()
        }
        "C1" | "C2" => {
            let i = p(0)?;
            if i < 1 || 2 * i + 4 > g {
                return Err(domain(format!(
                    "{name}_{i} needs 1 <= i and 2i+4 <= g = {g}"
                )));
            }
            let w = if name == "C1" { c_i1(i) } else { c_i2(i) };
            eliminate_b(&w)
        }
        other => return Err(Error::UnknownGenerator(other.to_string())),
    };
    Ok(word)
}

/// `b_j` over `{a_i, b_0, b_1}` via (A7) and (A8), keeping `b_0` and `b_1`.
pub fn expand_b(j: usize) -> Word {
    if j <= 1 {
        return b(j);
    }
    let w = a8_rhs(j - 1);
    replace_high_b(&w)
}

fn replace_high_b(w: &Word) -> Word {
    w.substitute(|gen| {
        Some(match *gen {
            GenId::B(j) if j >= 2 => expand_b(j as usize),
            ref other => Word::gen(other.clone()),
        })
    })
    .expect("total map")
}

/// Rewrites every `b_j` with `j ≥ 2` through (A8), leaving `b_0`, `b_1`.
pub fn eliminate_b(w: &Word) -> Word {
    replace_high_b(w)
}

/// Expands the named symbols of a word. Primitive letters are kept.
pub fn expand(word: &Word, g: usize) -> Result<Word> {
    if !word.generators().any(|gen| matches!(gen, GenId::Named(_))) {
        return Ok(word.clone());
    }
    word.substitute(|gen| match gen {
        GenId::Named(s) => named(&s.name, s.index, g).ok(),
        other => Some(Word::gen(other.clone())),
    })
    .map_err(|e| match e {
        Error::UnknownGenerator(_) => {
            let bad = word
                .generators()
                .find(|gen| match gen {
                    GenId::Named(s) => named(&s.name, s.index, g).is_err(),
                    _ => false,
                })
                .map(|gen| gen.to_string())
                .unwrap_or_default();
            Error::UnknownGenerator(bad)
        }
        other => other,
    })
}

fn named(name: &str, index: Option<u16>, g: usize) -> Result<Word> {
    let idx: Vec<usize> = index.map(|i| vec![i as usize]).unwrap_or_default();
    match name {
        "Delta" | "r" | "y" | "c" | "v" => derived_element(name, &idx, g),
        "Ci" => derived_element("C1", &idx, g),
        "Cii" => derived_element("C2", &idx, g),
        other => Err(Error::UnknownGenerator(other.to_string())),
    }
}
