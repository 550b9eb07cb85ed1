//! Todd–Coxeter coset enumeration (HLT with lookahead).

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::word::{GenId, Word};

pub const DEFAULT_MAX_COSETS: usize = 1_000_000;

const NONE: usize = usize::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TableStatus {
    Open,
    Closed,
    CapExceeded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    pub generators: Vec<GenId>,
    /// Column `2j` is generator `j`, column `2j + 1` its inverse.
    pub rows: Vec<Vec<Option<usize>>>,
    pub status: TableStatus,
}

impl CosetTable {
    pub fn index(&self) -> Option<usize> {
        (self.status == TableStatus::Closed).then_some(self.rows.len())
    }

    /// Cosets numbered from 1; undefined entries left blank.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("coset");
        for g in &self.generators {
            let _ = write!(out, ",{g},{g}^-1");
        }
        out.push('\n');
        for (i, row) in self.rows.iter().enumerate() {
            let _ = write!(out, "{}", i + 1);
            for e in row {
                match e {
                    Some(c) => {
                        let _ = write!(out, ",{}", c + 1);
                    }
                    None => out.push(','),
                }
            }
            out.push('\n');
        }
        out
    }

    /// Every relator traces a loop from every coset.
    pub fn is_consistent(&self, relators: &[Vec<usize>]) -> bool {
        self.status == TableStatus::Closed
            && (0..self.rows.len()).all(|c| {
                relators
                    .iter()
                    .all(|r| r.iter().try_fold(c, |cur, &x| self.rows[cur][x]) == Some(c))
            })
    }
}

struct Full;

struct Enumerator {
    ncols: usize,
    table: Vec<usize>,
    parent: Vec<usize>,
    queue: Vec<usize>,
    max_rows: usize,
}

fn inv(x: usize) -> usize {
    x ^ 1
}

impl Enumerator {
    fn rows(&self) -> usize {
        self.parent.len()
    }

    fn get(&self, c: usize, x: usize) -> usize {
        self.table[c * self.ncols + x]
    }

    fn set(&mut self, c: usize, x: usize, d: usize) {
        self.table[c * self.ncols + x] = d;
    }

    fn alive(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn new_row(&mut self) -> std::result::Result<usize, Full> {
        if self.rows() >= self.max_rows {
            return Err(Full);
        }
        let d = self.rows();
        self.parent.push(d);
        self.table.extend(std::iter::repeat_n(NONE, self.ncols));
        Ok(d)
    }

    fn define(&mut self, c: usize, x: usize) -> std::result::Result<usize, Full> {
        let d = self.new_row()?;
        self.set(c, x, d);
        self.set(d, inv(x), c);
        Ok(d)
    }

    fn find(&mut self, mut c: usize) -> usize {
        let mut root = c;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[c] != root {
            let next = self.parent[c];
            self.parent[c] = root;
            c = next;
        }
        root
    }

    fn merge(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            self.parent[hi] = lo;
            self.queue.push(hi);
        }
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let e = self.queue[i];
            i += 1;
            for x in 0..self.ncols {
                let f = self.get(e, x);
                if f == NONE {
                    continue;
                }
                self.set(f, inv(x), NONE);
                let (e1, f1) = (self.find(e), self.find(f));
                let ex = self.get(e1, x);
                let fx = self.get(f1, inv(x));
                if ex != NONE {
                    self.merge(f1, ex);
                } else if fx != NONE {
                    self.merge(e1, fx);
                } else {
                    self.set(e1, x, f1);
                    self.set(f1, inv(x), e1);
                }
            }
        }
    }

    /// Traces `w` from both ends of coset `c`, defining cosets if `fill`.
    fn scan(&mut self, c: usize, w: &[usize], fill: bool) -> std::result::Result<(), Full> {
        if w.is_empty() {
            return Ok(());
        }
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0usize, w.len() as isize - 1);
        loop {
            while (i as isize) <= j && self.get(f, w[i]) != NONE {
                f = self.get(f, w[i]);
                i += 1;
            }
            if (i as isize) > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i as isize && self.get(b, inv(w[j as usize])) != NONE {
                b = self.get(b, inv(w[j as usize]));
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i as isize {
                self.set(f, w[i], b);
                self.set(b, inv(w[i]), f);
                return Ok(());
            }
            if !fill {
                return Ok(());
            }
            self.define(f, w[i])?;
        }
    }

    fn lookahead(&mut self, relators: &[Vec<usize>]) {
        for c in 0..self.rows() {
            for r in relators {
                if !self.alive(c) {
                    break;
                }
                let _ = self.scan(c, r, false);
            }
        }
    }

    /// Drops dead rows, keeping order. Returns the old-to-new map.
    fn compact(&mut self) -> Vec<usize> {
        let n = self.rows();
        let mut map = vec![NONE; n];
        let mut next = 0;
        for c in 0..n {
            if self.alive(c) {
                map[c] = next;
                next += 1;
            }
        }
        let mut table = Vec::with_capacity(next * self.ncols);
        for c in (0..n).filter(|&c| map[c] != NONE) {
            for x in 0..self.ncols {
                let d = self.get(c, x);
                table.push(if d == NONE { NONE } else { map[d] });
            }
        }
        self.table = table;
        self.parent = (0..next).collect();
        map
    }

    /// Renumbers cosets in order of first appearance scanning rows in order.
    fn standardize(&self) -> Vec<Vec<Option<usize>>> {
        let n = self.rows();
        let mut order = vec![0usize];
        let mut newnum = vec![NONE; n];
        newnum[0] = 0;
        let mut k = 0;
        while k < order.len() {
            let c = order[k];
            for x in 0..self.ncols {
                let d = self.get(c, x);
                if d != NONE && newnum[d] == NONE {
                    newnum[d] = order.len();
                    order.push(d);
                }
            }
            k += 1;
        }
        order
            .iter()
            .map(|&c| {
                (0..self.ncols)
                    .map(|x| {
                        let d = self.get(c, x);
                        (d != NONE && newnum[d] != NONE).then(|| newnum[d])
                    })
                    .collect()
            })
            .collect()
    }
}

fn to_columns(w: &Word, index: &HashMap<GenId, usize>) -> Result<Vec<usize>> {
    w.letters()
        .iter()
        .map(|l| {
            index
                .get(&l.gen)
                .map(|&j| 2 * j + usize::from(l.inverse))
                .ok_or_else(|| Error::UnknownGenerator(l.gen.to_string()))
        })
        .collect()
}

/// Enumerates the cosets of the subgroup generated by `subgroup` in `p`.
pub fn todd_coxeter(p: &Presentation, subgroup: &[Word], max_cosets: usize) -> Result<CosetTable> {
    let index: HashMap<GenId, usize> = p
        .generators
        .iter()
        .enumerate()
        .map(|(i, g)| (g.clone(), i))
        .collect();
    let relators: Vec<Vec<usize>> = p
        .relators
        .iter()
        .map(|r| to_columns(&r.word, &index))
        .collect::<Result<_>>()?;
    let subgroup: Vec<Vec<usize>> = subgroup
        .iter()
        .map(|w| to_columns(w, &index))
        .collect::<Result<_>>()?;

    let ncols = 2 * p.generators.len();
    let mut e = Enumerator {
        ncols,
        table: vec![NONE; ncols],
        parent: vec![0],
        queue: Vec::new(),
        max_rows: max_cosets.max(1),
    };

    let status = 'run: {
        for w in &subgroup {
            while e.scan(0, w, true).is_err() {
                if !make_room(&mut e, &relators) {
                    break 'run TableStatus::CapExceeded;
                }
            }
        }
        let mut c = 0;
        while c < e.rows() {
            let mut retry = false;
            if e.alive(c) {
                for r in &relators {
                    if !e.alive(c) {
                        break;
                    }
                    if e.scan(c, r, true).is_err() {
                        retry = true;
                        break;
                    }
                }
                if !retry && e.alive(c) {
                    for x in 0..ncols {
                        if e.get(c, x) == NONE && e.define(c, x).is_err() {
                            retry = true;
                            break;
                        }
                    }
                }
            }
            if retry {
                let alive_before = (0..c).filter(|&k| e.alive(k)).count();
                if !make_room(&mut e, &relators) {
                    break 'run TableStatus::CapExceeded;
                }
                c = alive_before;
                continue;
            }
            c += 1;
        }
        TableStatus::Closed
    };

    e.compact();
    Ok(CosetTable {
        generators: p.generators.clone(),
        rows: e.standardize(),
        status,
    })
}

/// Lookahead then compaction; false if no row was freed.
fn make_room(e: &mut Enumerator, relators: &[Vec<usize>]) -> bool {
    e.lookahead(relators);
    e.compact();
    e.rows() < e.max_rows
}

/// Order of the group, or `None` if the cap was hit.
pub fn order(p: &Presentation, max_cosets: usize) -> Result<Option<usize>> {
    Ok(todd_coxeter(p, &[], max_cosets)?.index())
}
