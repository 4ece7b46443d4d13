//! Simply-laced root systems with a fixed structure-constant convention.
//!
//! `A_ℓ` lives in `Z^{ℓ+1}` as `e_i − e_j`; `D_ℓ` in `Z^ℓ` as `±e_i ± e_j`;
//! `E_ℓ` in simple-root coordinates with the Cartan matrix as Gram matrix.
//! For `A` and `D` the signs `N_{α,β}` are read off the matrix realization;
//! for `E` they come from the bilinear cocycle `ε`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    D,
    E,
}

/// Sparse description of `t_α(ξ) − 1`: entries `(row, col, sign)` scaled by `ξ`.
pub type UnipotentPattern = Vec<(usize, usize, i8)>;

pub struct RootDatum {
    family: Family,
    rank: usize,
    roots: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
    neg: Vec<usize>,
    sum: Vec<Option<usize>>,
    inner: Vec<i8>,
    sign: Vec<i8>,
    /// Gram matrix in the stored coordinates (`E` only; `A`/`D` use the dot product).
    cartan: Option<Vec<Vec<i64>>>,
    matrix_size: Option<usize>,
    patterns: Vec<UnipotentPattern>,
}

impl fmt::Debug for RootDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RootDatum({})", self.name())
    }
}

impl PartialEq for RootDatum {
    fn eq(&self, other: &Self) -> bool {
        self.family == other.family && self.rank == other.rank
    }
}
impl Eq for RootDatum {}

/// A root subsystem of type `A_3`: `map[k]` is the image of the `k`-th root of
/// the standard `A_3` datum and `twist[k]` the sign making
/// `x_α(r) ↦ x_{map α}(twist_α · r)` respect the commutator relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct A3Embedding {
    pub map: Vec<usize>,
    pub twist: Vec<i8>,
}

impl RootDatum {
    pub fn build(family: Family, rank: usize) -> Result<Arc<RootDatum>> {
        let (roots, cartan) = match family {
            Family::A => {
                if rank < 1 {
                    return Err(Error::Unsupported(format!("A{rank}")));
                }
                let n = rank + 1;
                let mut roots = Vec::new();
                for i in 0..n {
                    for j in 0..n {
                        if i != j {
                            let mut v = vec![0i64; n];
                            v[i] = 1;
                            v[j] = -1;
                            roots.push(v);
                        }
                    }
                }
                (roots, None)
            }
            Family::D => {
                if rank < 3 {
                    return Err(Error::Unsupported(format!("D{rank} (rank must be >= 3)")));
                }
                let mut roots = Vec::new();
                for i in 0..rank {
                    for j in (i + 1)..rank {
                        for (si, sj) in [(1, -1), (1, 1), (-1, 1), (-1, -1)] {
                            let mut v = vec![0i64; rank];
                            v[i] = si;
                            v[j] = sj;
                            roots.push(v);
                        }
                    }
                }
                roots.sort();
                roots.reverse();
                (roots, None)
            }
            Family::E => {
                if !(6..=8).contains(&rank) {
                    return Err(Error::Unsupported(format!("E{rank}")));
                }
                let c = e_cartan(rank);
                (e_roots(&c), Some(c))
            }
        };
        Ok(Arc::new(RootDatum::assemble(family, rank, roots, cartan)))
    }

    /// Parses names such as `A3`, `D4`, `E6`.
    pub fn parse(name: &str) -> Result<Arc<RootDatum>> {
        let name = name.trim();
        let mut chars = name.chars();
        let fam = match chars.next() {
            Some('A') | Some('a') => Family::A,
            Some('D') | Some('d') => Family::D,
            Some('E') | Some('e') => Family::E,
            _ => {
                return Err(Error::Unsupported(format!(
                    "root system `{name}` (only simply-laced A, D, E)"
                )))
            }
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::Unsupported(format!("root system `{name}`")))?;
        RootDatum::build(fam, rank)
    }

    fn assemble(
        family: Family,
        rank: usize,
        roots: Vec<Vec<i64>>,
        cartan: Option<Vec<Vec<i64>>>,
    ) -> RootDatum {
        let n = roots.len();
        let index: HashMap<Vec<i64>, usize> =
            roots.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect();
        let neg: Vec<usize> = roots
            .iter()
            .map(|r| index[&r.iter().map(|x| -x).collect::<Vec<_>>()])
            .collect();
        let gram = |a: &[i64], b: &[i64]| -> i64 {
            match &cartan {
                None => a.iter().zip(b).map(|(x, y)| x * y).sum(),
                Some(c) => {
                    let mut s = 0;
                    for i in 0..a.len() {
                        for j in 0..b.len() {
                            s += a[i] * c[i][j] * b[j];
                        }
                    }
                    s
                }
            }
        };
        let mut sum = vec![None; n * n];
        let mut inner = vec![0i8; n * n];
        for i in 0..n {
            for j in 0..n {
                inner[i * n + j] = gram(&roots[i], &roots[j]) as i8;
                let s: Vec<i64> = roots[i].iter().zip(&roots[j]).map(|(x, y)| x + y).collect();
                sum[i * n + j] = index.get(&s).copied();
            }
        }
        let (matrix_size, patterns) = match family {
            Family::A => {
                let patterns = roots
                    .iter()
                    .map(|r| {
                        let p = r.iter().position(|&x| x == 1).unwrap();
                        let q = r.iter().position(|&x| x == -1).unwrap();
                        vec![(p, q, 1i8)]
                    })
                    .collect();
                (Some(rank + 1), patterns)
            }
            Family::D => {
                let patterns = roots.iter().map(|r| d_pattern(rank, r)).collect();
                (Some(2 * rank), patterns)
            }
            Family::E => (None, vec![Vec::new(); n]),
        };
        let mut datum = RootDatum {
            family,
            rank,
            roots,
            index,
            neg,
            sum,
            inner,
            sign: vec![0; n * n],
            cartan,
            matrix_size,
            patterns,
        };
        datum.sign = datum.compute_signs();
        datum
    }

    fn compute_signs(&self) -> Vec<i8> {
        let n = self.roots.len();
        let mut sign = vec![0i8; n * n];
        for i in 0..n {
            for j in 0..n {
                let Some(k) = self.sum[i * n + j] else { continue };
                sign[i * n + j] = match self.family {
                    Family::E => self.cocycle(i, j),
                    _ => {
                        let c = self.integer_commutator(i, j);
                        // [t_α(1), t_β(1)] − 1 = N · pattern(α+β)
                        let (p, q, s) = self.patterns[k][0];
                        (c[p][q] * s as i64) as i8
                    }
                };
            }
        }
        sign
    }

    fn cocycle(&self, i: usize, j: usize) -> i8 {
        let c = self.cartan.as_ref().unwrap();
        let (a, b) = (&self.roots[i], &self.roots[j]);
        let mut e = 0i64;
        for p in 0..self.rank {
            for q in p..self.rank {
                if c[p][q] != 0 {
                    e += a[p] * b[q];
                }
            }
        }
        if e.rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }

    /// Dense integer matrix of `t_α(c)` (A and D only).
    pub fn integer_unipotent(&self, root: usize, c: i64) -> Vec<Vec<i64>> {
        let m = self.matrix_size.expect("matrix realization");
        let mut out = vec![vec![0i64; m]; m];
        for (i, row) in out.iter_mut().enumerate() {
            row[i] = 1;
        }
        for &(p, q, s) in &self.patterns[root] {
            out[p][q] += c * s as i64;
        }
        out
    }

    /// `[t_α(1), t_β(1)] − 1` over the integers.
    fn integer_commutator(&self, i: usize, j: usize) -> Vec<Vec<i64>> {
        let mul = |a: &Vec<Vec<i64>>, b: &Vec<Vec<i64>>| -> Vec<Vec<i64>> {
            let m = a.len();
            let mut c = vec![vec![0i64; m]; m];
            for r in 0..m {
                for k in 0..m {
                    if a[r][k] != 0 {
                        for s in 0..m {
                            c[r][s] += a[r][k] * b[k][s];
                        }
                    }
                }
            }
            c
        };
        let a = self.integer_unipotent(i, 1);
        let b = self.integer_unipotent(j, 1);
        let ai = self.integer_unipotent(i, -1);
        let bi = self.integer_unipotent(j, -1);
        let mut c = mul(&mul(&mul(&a, &b), &ai), &bi);
        for (k, row) in c.iter_mut().enumerate() {
            row[k] -= 1;
        }
        c
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn name(&self) -> String {
        let f = match self.family {
            Family::A => "A",
            Family::D => "D",
            Family::E => "E",
        };
        format!("{f}{}", self.rank)
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn root(&self, i: usize) -> &[i64] {
        &self.roots[i]
    }

    pub fn index_of(&self, coords: &[i64]) -> Option<usize> {
        self.index.get(coords).copied()
    }

    pub fn neg(&self, i: usize) -> usize {
        self.neg[i]
    }

    pub fn sum(&self, i: usize, j: usize) -> Option<usize> {
        self.sum[i * self.roots.len() + j]
    }

    pub fn inner(&self, i: usize, j: usize) -> i64 {
        self.inner[i * self.roots.len() + j] as i64
    }

    /// `N_{α,β}`, defined when `α + β` is a root.
    pub fn structure_constant(&self, i: usize, j: usize) -> Result<i8> {
        match self.sum(i, j) {
            Some(_) => Ok(self.sign[i * self.roots.len() + j]),
            None => Err(Error::Precondition(format!(
                "{:?} + {:?} is not a root of {}",
                self.roots[i],
                self.roots[j],
                self.name()
            ))),
        }
    }

    /// Matrix dimension of the realization (`ℓ+1` for A, `2ℓ` for D).
    pub fn matrix_size(&self) -> Option<usize> {
        self.matrix_size
    }

    pub fn pattern(&self, i: usize) -> Result<&UnipotentPattern> {
        if self.matrix_size.is_none() {
            return Err(Error::Unsupported(format!(
                "no matrix realization for {}",
                self.name()
            )));
        }
        Ok(&self.patterns[i])
    }

    /// Index of `e_i − e_j` in type A (0-based coordinates).
    pub fn a_index(&self, i: usize, j: usize) -> Option<usize> {
        if self.family != Family::A || i == j || i > self.rank || j > self.rank {
            return None;
        }
        let mut v = vec![0i64; self.rank + 1];
        v[i] = 1;
        v[j] = -1;
        self.index_of(&v)
    }

    /// `(i, j)` with root `e_i − e_j` in type A.
    pub fn a_pair(&self, root: usize) -> Option<(usize, usize)> {
        if self.family != Family::A {
            return None;
        }
        let r = &self.roots[root];
        Some((
            r.iter().position(|&x| x == 1)?,
            r.iter().position(|&x| x == -1)?,
        ))
    }

    /// All `A_3` subsystems cut out by rational spans of rank-3 sublattices,
    /// each with an embedding of the standard `A_3` and its sign twist.
    pub fn a3_subsystems(&self) -> Vec<A3Embedding> {
        if self.rank < 3 {
            return Vec::new();
        }
        let a3 = RootDatum::build(Family::A, 3).expect("A3");
        let n = self.roots.len();
        let mut seen: Vec<Vec<usize>> = Vec::new();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if self.inner(a, b) != -1 {
                    continue;
                }
                for c in 0..n {
                    if self.inner(b, c) != -1 || self.inner(a, c) != 0 {
                        continue;
                    }
                    let simple = [a, b, c];
                    let map: Vec<usize> = (0..a3.num_roots())
                        .map(|k| {
                            let coeffs = a3_simple_coords(a3.root(k));
                            let mut v = vec![0i64; self.roots[0].len()];
                            for (s, &cf) in simple.iter().zip(&coeffs) {
                                for (x, y) in v.iter_mut().zip(&self.roots[*s]) {
                                    *x += cf * y;
                                }
                            }
                            self.index[&v]
                        })
                        .collect();
                    let mut key = map.clone();
                    key.sort_unstable();
                    if seen.contains(&key) {
                        continue;
                    }
                    seen.push(key);
                    let twist = self
                        .find_twist(&a3, &map)
                        .expect("restricted structure constants are cohomologous");
                    out.push(A3Embedding { map, twist });
                }
            }
        }
        out
    }

    fn find_twist(&self, a3: &RootDatum, map: &[usize]) -> Option<Vec<i8>> {
        let m = a3.num_roots();
        'outer: for bits in 0u32..(1 << m) {
            let c: Vec<i8> = (0..m).map(|k| if bits >> k & 1 == 1 { -1 } else { 1 }).collect();
            for i in 0..m {
                for j in 0..m {
                    if let Some(k) = a3.sum(i, j) {
                        let lhs = self.structure_constant(map[i], map[j]).ok()? * c[i] * c[j];
                        let rhs = a3.structure_constant(i, j).ok()? * c[k];
                        if lhs != rhs {
                            continue 'outer;
                        }
                    }
                }
            }
            return Some(c);
        }
        None
    }
}

/// Coordinates of an `A_3` root `e_i − e_j` in the simple roots `e_k − e_{k+1}`.
fn a3_simple_coords(r: &[i64]) -> Vec<i64> {
    // α_k coefficient = partial sum of coordinates up to k
    let mut acc = 0;
    (0..3)
        .map(|k| {
            acc += r[k];
            acc
        })
        .collect()
}

/// `t_α(ξ) = 1 + ξ e_{p,q} − ξ e_{−q,−p}` for `α = ε_p − ε_q`, coordinates
/// ordered `1..ℓ, −ℓ..−1`.
fn d_pattern(rank: usize, r: &[i64]) -> UnipotentPattern {
    let pos = |signed: i64| -> usize {
        if signed > 0 {
            signed as usize - 1
        } else {
            2 * rank - (-signed) as usize
        }
    };
    let nz: Vec<(usize, i64)> = r
        .iter()
        .enumerate()
        .filter(|(_, &x)| x != 0)
        .map(|(i, &x)| (i + 1, x))
        .collect();
    let (i, si) = (nz[0].0 as i64, nz[0].1);
    let (j, sj) = (nz[1].0 as i64, nz[1].1);
    // α = si·e_i + sj·e_j = ε_{si·i} − ε_{−sj·j}
    let reps = [(si * i, -sj * j), (sj * j, -si * i)];
    let (p, q) = reps
        .into_iter()
        .min_by_key(|&(p, q)| (pos(p), pos(q)))
        .unwrap();
    vec![(pos(p), pos(q), 1), (pos(-q), pos(-p), -1)]
}

fn e_cartan(rank: usize) -> Vec<Vec<i64>> {
    // Bourbaki numbering: chain 1-3-4-5-6-7-8, node 2 attached to 4
    let mut edges = vec![(1, 3), (3, 4), (4, 5), (5, 6), (2, 4)];
    if rank >= 7 {
        edges.push((6, 7));
    }
    if rank >= 8 {
        edges.push((7, 8));
    }
    let mut c = vec![vec![0i64; rank]; rank];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    for (a, b) in edges {
        c[a - 1][b - 1] = -1;
        c[b - 1][a - 1] = -1;
    }
    c
}

fn e_roots(c: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let l = c.len();
    let pair = |a: &[i64], k: usize| -> i64 { (0..l).map(|i| a[i] * c[i][k]).sum() };
    let mut positive: Vec<Vec<i64>> = (0..l)
        .map(|k| {
            let mut v = vec![0i64; l];
            v[k] = 1;
            v
        })
        .collect();
    let mut frontier = positive.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for r in &frontier {
            for k in 0..l {
                if pair(r, k) == -1 {
                    let mut v = r.clone();
                    v[k] += 1;
                    if !positive.contains(&v) && !next.contains(&v) {
                        next.push(v);
                    }
                }
            }
        }
        positive.extend(next.iter().cloned());
        frontier = next;
    }
    positive.sort_by_key(|v| (v.iter().sum::<i64>(), v.clone()));
    let mut all = positive.clone();
    all.extend(positive.iter().map(|v| v.iter().map(|x| -x).collect::<Vec<_>>()));
    all
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_counts() {
        for (f, l, n) in [
            (Family::A, 2, 6),
            (Family::A, 3, 12),
            (Family::A, 4, 20),
            (Family::D, 3, 12),
            (Family::D, 4, 24),
            (Family::D, 5, 40),
            (Family::E, 6, 72),
            (Family::E, 7, 126),
            (Family::E, 8, 240),
        ] {
            let d = RootDatum::build(f, l).unwrap();
            assert_eq!(d.num_roots(), n, "{}", d.name());
            for i in 0..n {
                assert_eq!(d.inner(i, i), 2);
            }
        }
    }

    #[test]
    fn non_simply_laced_rejected() {
        assert!(RootDatum::parse("B2").is_err());
        assert!(RootDatum::parse("E5").is_err());
    }

    #[test]
    fn a3_standard_sign() {
        let d = RootDatum::parse("A3").unwrap();
        let a = d.a_index(0, 1).unwrap();
        let b = d.a_index(1, 2).unwrap();
        assert_eq!(d.structure_constant(a, b).unwrap(), 1);
        assert_eq!(d.structure_constant(b, a).unwrap(), -1);
        let c = d.a_index(2, 3).unwrap();
        assert!(d.structure_constant(a, c).is_err());
    }

    #[test]
    fn signs_are_antisymmetric() {
        for name in ["A4", "D5", "E6", "E8"] {
            let d = RootDatum::parse(name).unwrap();
            for i in 0..d.num_roots() {
                for j in 0..d.num_roots() {
                    if d.sum(i, j).is_some() {
                        let n = d.structure_constant(i, j).unwrap();
                        assert!(n == 1 || n == -1);
                        assert_eq!(n, -d.structure_constant(j, i).unwrap(), "{name}");
                    }
                }
            }
        }
    }

    #[test]
    fn a3_subsystem_counts() {
        assert_eq!(RootDatum::parse("A3").unwrap().a3_subsystems().len(), 1);
        assert!(RootDatum::parse("A2").unwrap().a3_subsystems().is_empty());
    }
}
