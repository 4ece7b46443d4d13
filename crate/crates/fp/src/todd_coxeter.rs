//! Coset enumeration (HLT with lookahead) and complete coset tables.

use std::collections::VecDeque;

use steinberg_core::{Error, Result};

use crate::presentation::Presentation;

const NONE: u32 = u32::MAX;

/// Default bound on the number of simultaneously allocated cosets.
pub const DEFAULT_MAX_COSETS: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationCaps {
    pub max_cosets: usize,
}

impl Default for EnumerationCaps {
    fn default() -> Self {
        EnumerationCaps {
            max_cosets: DEFAULT_MAX_COSETS,
        }
    }
}

/// A complete, standardized coset table: coset 0 is the subgroup and cosets
/// are numbered in breadth-first order over the columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    ncols: usize,
    inverse: Vec<usize>,
    data: Vec<u32>,
    /// Largest number of rows allocated during the enumeration.
    pub peak: usize,
}

struct Full;

struct Enumerator<'a> {
    ncols: usize,
    inv: &'a [usize],
    table: Vec<u32>,
    parent: Vec<u32>,
    rows: usize,
    live: usize,
    cap: usize,
    peak: usize,
    queue: Vec<u32>,
}

impl<'a> Enumerator<'a> {
    fn new(ncols: usize, inv: &'a [usize], cap: usize) -> Self {
        Enumerator {
            ncols,
            inv,
            table: vec![NONE; ncols],
            parent: vec![0],
            rows: 1,
            live: 1,
            cap,
            peak: 1,
            queue: Vec::new(),
        }
    }

    #[inline]
    fn get(&self, c: u32, x: usize) -> u32 {
        self.table[c as usize * self.ncols + x]
    }

    #[inline]
    fn set(&mut self, c: u32, x: usize, v: u32) {
        self.table[c as usize * self.ncols + x] = v;
    }

    fn is_live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut c = c;
        while self.parent[c as usize] != r {
            let next = self.parent[c as usize];
            self.parent[c as usize] = r;
            c = next;
        }
        r
    }

    fn define(&mut self, c: u32, x: usize) -> std::result::Result<u32, Full> {
        if self.rows >= self.cap {
            return Err(Full);
        }
        let d = self.rows as u32;
        self.rows += 1;
        self.live += 1;
        self.peak = self.peak.max(self.rows);
        self.table.extend(std::iter::repeat_n(NONE, self.ncols));
        self.parent.push(d);
        self.set(c, x, d);
        self.set(d, self.inv[x], c);
        Ok(d)
    }

    fn merge(&mut self, a: u32, b: u32) {
        let a = self.rep(a);
        let b = self.rep(b);
        if a == b {
            return;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.parent[hi as usize] = lo;
        self.live -= 1;
        self.queue.push(hi);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
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
                let ix = self.inv[x];
                if self.get(f, ix) == e {
                    self.set(f, ix, NONE);
                }
                let e1 = self.rep(e);
                let f1 = self.rep(f);
                let t = self.get(e1, x);
                if t != NONE {
                    self.merge(f1, t);
                    continue;
                }
                let t = self.get(f1, ix);
                if t != NONE {
                    self.merge(e1, t);
                    continue;
                }
                self.set(e1, x, f1);
                self.set(f1, ix, e1);
            }
        }
    }

    /// Scans `w` at `c`, closing a single gap by deduction. With `fill`, gaps
    /// of length two or more are bridged by new cosets.
    fn scan(&mut self, c: u32, w: &[usize], fill: bool) -> std::result::Result<(), Full> {
        if w.is_empty() {
            return Ok(());
        }
        let mut f = c;
        let mut b = c;
        let mut i = 0isize;
        let mut j = w.len() as isize - 1;
        loop {
            while i <= j {
                let t = self.get(f, w[i as usize]);
                if t == NONE {
                    break;
                }
                f = t;
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i {
                let t = self.get(b, self.inv[w[j as usize]]);
                if t == NONE {
                    break;
                }
                b = t;
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            }
            if i == j {
                let x = w[i as usize];
                self.set(f, x, b);
                self.set(b, self.inv[x], f);
                return Ok(());
            }
            if !fill {
                return Ok(());
            }
            self.define(f, w[i as usize])?;
        }
    }

    fn lookahead(&mut self, relators: &[Vec<usize>]) {
        let mut c = 0u32;
        while (c as usize) < self.rows {
            if self.is_live(c) {
                for r in relators {
                    if !self.is_live(c) {
                        break;
                    }
                    let _ = self.scan(c, r, false);
                }
            }
            c += 1;
        }
    }

    /// Drops dead rows; returns the old-to-new map.
    fn compact(&mut self) -> Vec<u32> {
        let mut map = vec![NONE; self.rows];
        let mut next = 0u32;
        for c in 0..self.rows as u32 {
            if self.is_live(c) {
                map[c as usize] = next;
                next += 1;
            }
        }
        let mut table = Vec::with_capacity(next as usize * self.ncols);
        for c in 0..self.rows as u32 {
            if map[c as usize] == NONE {
                continue;
            }
            for x in 0..self.ncols {
                let t = self.get(c, x);
                table.push(if t == NONE { NONE } else { map[t as usize] });
            }
        }
        self.table = table;
        self.rows = next as usize;
        self.parent = (0..next).collect();
        map
    }
}

/// Enumerates the cosets of `⟨subgroup⟩` in the group presented by `p`.
///
/// Exceeding `caps.max_cosets` live cosets yields [`Error::CapExceeded`].
pub fn enumerate_cosets(
    p: &Presentation,
    subgroup: &[Vec<usize>],
    caps: EnumerationCaps,
) -> Result<CosetTable> {
    for w in subgroup {
        p.check_word(w)?;
    }
    let ncols = p.num_columns();
    let cap = caps.max_cosets.max(1);
    let mut en = Enumerator::new(ncols, &p.inverse, cap);
    let exceeded = |en: &Enumerator| {
        Error::CapExceeded(format!(
            "coset enumeration needs more than {} cosets ({} live)",
            cap, en.live
        ))
    };
    for w in subgroup {
        if en.scan(0, w, true).is_err() {
            return Err(exceeded(&en));
        }
    }
    let mut c = 0u32;
    'outer: while (c as usize) < en.rows {
        if en.is_live(c) {
            let mut full = false;
            for r in &p.relators {
                if !en.is_live(c) {
                    break;
                }
                if en.scan(c, r, true).is_err() {
                    full = true;
                    break;
                }
            }
            if !full && en.is_live(c) {
                for x in 0..ncols {
                    if en.get(c, x) == NONE && en.define(c, x).is_err() {
                        full = true;
                        break;
                    }
                }
            }
            if full {
                en.lookahead(&p.relators);
                if en.live >= cap {
                    return Err(exceeded(&en));
                }
                let map = en.compact();
                // resume at the first live coset not before c
                c = match (c as usize..map.len()).find(|&k| map[k] != NONE) {
                    Some(k) => map[k],
                    None => en.rows as u32,
                };
                continue 'outer;
            }
        }
        c += 1;
    }
    en.compact();
    let peak = en.peak;
    let table = CosetTable::standardize(ncols, p.inverse.clone(), en.table, en.rows, peak)?;
    table.verify(&p.relators)?;
    for w in subgroup {
        if table.trace(0, w) != 0 {
            return Err(Error::Precondition("subgroup generator moves coset 0".into()));
        }
    }
    Ok(table)
}

impl CosetTable {
    fn standardize(
        ncols: usize,
        inverse: Vec<usize>,
        data: Vec<u32>,
        rows: usize,
        peak: usize,
    ) -> Result<Self> {
        let mut map = vec![NONE; rows];
        let mut order = Vec::with_capacity(rows);
        map[0] = 0;
        order.push(0u32);
        let mut k = 0;
        while k < order.len() {
            let c = order[k] as usize;
            k += 1;
            for x in 0..ncols {
                let t = data[c * ncols + x];
                if t == NONE {
                    return Err(Error::Precondition("coset table is incomplete".into()));
                }
                if map[t as usize] == NONE {
                    map[t as usize] = order.len() as u32;
                    order.push(t);
                }
            }
        }
        let mut out = Vec::with_capacity(order.len() * ncols);
        for &c in &order {
            for x in 0..ncols {
                out.push(map[data[c as usize * ncols + x] as usize]);
            }
        }
        Ok(CosetTable {
            ncols,
            inverse,
            data: out,
            peak,
        })
    }

    /// Rebuilds a table from raw parts, checking that every column is a
    /// permutation compatible with the inverse map.
    pub fn from_parts(ncols: usize, inverse: Vec<usize>, data: Vec<u32>) -> Result<Self> {
        if ncols == 0 || !data.len().is_multiple_of(ncols) || inverse.len() != ncols {
            return Err(Error::Mismatch("malformed coset table".into()));
        }
        let t = CosetTable {
            ncols,
            inverse,
            data,
            peak: 0,
        };
        let n = t.len();
        for c in 0..n {
            for x in 0..ncols {
                let d = t.data[c * ncols + x] as usize;
                if d >= n || t.image(d, t.inverse[x]) != c {
                    return Err(Error::Mismatch("inconsistent coset table".into()));
                }
            }
        }
        Ok(t)
    }

    /// Number of cosets.
    pub fn len(&self) -> usize {
        self.data.len() / self.ncols.max(1)
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn num_columns(&self) -> usize {
        self.ncols
    }

    pub fn inverse(&self) -> &[usize] {
        &self.inverse
    }

    pub fn raw(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn image(&self, c: usize, x: usize) -> usize {
        self.data[c * self.ncols + x] as usize
    }

    /// The coset reached from `c` by reading `w` left to right.
    pub fn trace(&self, c: usize, w: &[usize]) -> usize {
        w.iter().fold(c, |c, &x| self.image(c, x))
    }

    /// The permutation of the cosets induced by `w`.
    pub fn permutation(&self, w: &[usize]) -> Vec<u32> {
        (0..self.len()).map(|c| self.trace(c, w) as u32).collect()
    }

    /// Every relator fixes every coset and the columns are consistent.
    pub fn verify(&self, relators: &[Vec<usize>]) -> Result<()> {
        let n = self.len();
        for c in 0..n {
            for x in 0..self.ncols {
                if self.image(self.image(c, x), self.inverse[x]) != c {
                    return Err(Error::Precondition(format!(
                        "column {x} is not inverted by column {} at coset {c}",
                        self.inverse[x]
                    )));
                }
            }
            for (k, r) in relators.iter().enumerate() {
                if self.trace(c, r) != c {
                    return Err(Error::Precondition(format!(
                        "relator {k} moves coset {c}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Breadth-first spanning tree: for each coset, its parent and the column
    /// leading to it (coset 0 maps to itself with column `usize::MAX`).
    pub fn spanning_tree(&self) -> Vec<(u32, usize)> {
        let n = self.len();
        let mut tree = vec![(NONE, usize::MAX); n];
        tree[0] = (0, usize::MAX);
        let mut queue = VecDeque::from([0usize]);
        while let Some(c) = queue.pop_front() {
            for x in 0..self.ncols {
                let d = self.image(c, x);
                if tree[d].0 == NONE {
                    tree[d] = (c as u32, x);
                    queue.push_back(d);
                }
            }
        }
        tree
    }

    /// A word leading from coset 0 to `c` along a spanning tree.
    pub fn representative(tree: &[(u32, usize)], c: usize) -> Vec<usize> {
        let mut w = Vec::new();
        let mut cur = c;
        while cur != 0 {
            let (p, x) = tree[cur];
            w.push(x);
            cur = p as usize;
        }
        w.reverse();
        w
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(16 + 8 * self.ncols + 4 * self.data.len());
        out.extend((self.ncols as u64).to_le_bytes());
        for &i in &self.inverse {
            out.extend((i as u64).to_le_bytes());
        }
        out.extend((self.peak as u64).to_le_bytes());
        for &d in &self.data {
            out.extend(d.to_le_bytes());
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let bad = || Error::Mismatch("corrupt coset table bytes".into());
        let word = |k: usize| -> Result<u64> {
            let s = bytes.get(8 * k..8 * k + 8).ok_or_else(bad)?;
            Ok(u64::from_le_bytes(s.try_into().expect("8 bytes")))
        };
        let ncols = word(0)? as usize;
        let inverse = (0..ncols)
            .map(|k| word(1 + k).map(|v| v as usize))
            .collect::<Result<Vec<_>>>()?;
        let peak = word(1 + ncols)? as usize;
        let rest = bytes.get(8 * (2 + ncols)..).ok_or_else(bad)?;
        if rest.len() % 4 != 0 {
            return Err(bad());
        }
        let data = rest
            .chunks_exact(4)
            .map(|c| u32::from_le_bytes(c.try_into().expect("4 bytes")))
            .collect();
        let mut t = CosetTable::from_parts(ncols, inverse, data)?;
        t.peak = peak;
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(gens: &[&str], rels: &[&str]) -> Presentation {
        let mut p = Presentation::free(gens);
        for r in rels {
            let w = p.word(r).unwrap();
            p.add_relator(w).unwrap();
        }
        p
    }

    #[test]
    fn cyclic_group() {
        let p = pres(&["a"], &["a a a"]);
        let t = enumerate_cosets(&p, &[], EnumerationCaps::default()).unwrap();
        assert_eq!(t.len(), 3);
    }

    #[test]
    fn symmetric_group_s3() {
        let p = pres(&["a", "b"], &["a a", "b b b", "a b a b"]);
        let t = enumerate_cosets(&p, &[], EnumerationCaps::default()).unwrap();
        assert_eq!(t.len(), 6);
        let h = vec![p.word("a").unwrap()];
        assert_eq!(enumerate_cosets(&p, &h, EnumerationCaps::default()).unwrap().len(), 3);
    }

    #[test]
    fn trivial_group_from_coincidences() {
        // ⟨a, b | aba⁻¹b⁻², bab⁻¹a⁻²⟩ is trivial
        let p = pres(&["a", "b"], &["a b a^-1 b^-1 b^-1", "b a b^-1 a^-1 a^-1"]);
        let t = enumerate_cosets(&p, &[], EnumerationCaps::default()).unwrap();
        assert_eq!(t.len(), 1);
    }

    #[test]
    fn cap_is_reported() {
        let p = pres(&["a"], &["a a a a a a a a a a"]);
        let err = enumerate_cosets(&p, &[], EnumerationCaps { max_cosets: 4 }).unwrap_err();
        assert!(matches!(err, Error::CapExceeded(_)));
    }

    #[test]
    fn bytes_round_trip() {
        let p = pres(&["a", "b"], &["a a", "b b b", "a b a b"]);
        let t = enumerate_cosets(&p, &[], EnumerationCaps::default()).unwrap();
        let back = CosetTable::from_bytes(&t.to_bytes()).unwrap();
        assert_eq!(back, t);
    }
}
