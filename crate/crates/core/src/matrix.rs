//! Column vectors and square matrices over a [`Ring`].

use std::fmt;

use serde_json::Value;

use crate::error::{Error, Result};
use crate::ring::{lin_solve, Elem, Ring, RingMorphism};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RVector {
    pub ring: Ring,
    pub entries: Vec<Elem>,
}

impl fmt::Debug for RVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format())
    }
}

impl RVector {
    pub fn new(ring: &Ring, entries: Vec<Elem>) -> Self {
        RVector {
            ring: ring.clone(),
            entries,
        }
    }

    pub fn zero(ring: &Ring, n: usize) -> Self {
        RVector::new(ring, vec![ring.zero(); n])
    }

    /// `e_i` (0-based).
    pub fn basis(ring: &Ring, n: usize, i: usize) -> Self {
        let mut v = RVector::zero(ring, n);
        v.entries[i] = ring.one();
        v
    }

    pub fn from_ints(ring: &Ring, xs: &[i64]) -> Self {
        RVector::new(ring, xs.iter().map(|&x| ring.from_int(x)).collect())
    }

    pub fn parse(ring: &Ring, literals: &[&str]) -> Result<Self> {
        Ok(RVector::new(
            ring,
            literals
                .iter()
                .map(|l| ring.parse_elem(l))
                .collect::<Result<Vec<_>>>()?,
        ))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn check(&self, other: &RVector) -> Result<()> {
        if self.len() != other.len() || self.ring != other.ring {
            return Err(Error::Mismatch(format!(
                "vectors of length {} over {} and {} over {}",
                self.len(),
                self.ring,
                other.len(),
                other.ring
            )));
        }
        Ok(())
    }

    /// `selfᵗ other`.
    pub fn dot(&self, other: &RVector) -> Result<Elem> {
        self.check(other)?;
        let r = &self.ring;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .fold(r.zero(), |acc, (a, b)| r.add(&acc, &r.mul(a, b))))
    }

    pub fn add(&self, other: &RVector) -> Result<RVector> {
        self.check(other)?;
        let r = &self.ring;
        Ok(RVector::new(
            r,
            self.entries.iter().zip(&other.entries).map(|(a, b)| r.add(a, b)).collect(),
        ))
    }

    pub fn sub(&self, other: &RVector) -> Result<RVector> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RVector {
        RVector::new(&self.ring, self.entries.iter().map(|a| self.ring.neg(a)).collect())
    }

    /// Right scalar multiplication `v·c`.
    pub fn scale(&self, c: &Elem) -> RVector {
        RVector::new(&self.ring, self.entries.iter().map(|a| self.ring.mul(a, c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|x| self.ring.is_zero(x))
    }

    pub fn zero_count(&self) -> usize {
        self.entries.iter().filter(|x| self.ring.is_zero(x)).count()
    }

    pub fn map(&self, f: &RingMorphism) -> RVector {
        RVector::new(&f.target, self.entries.iter().map(|x| f.apply(x)).collect())
    }

    /// A certificate `w` with `wᵗ self = 1`, if the entries generate the unit ideal.
    pub fn unimodular_certificate(&self) -> Result<Option<RVector>> {
        Ok(lin_solve(&self.ring, &self.entries, &self.ring.one())?
            .map(|w| RVector::new(&self.ring, w)))
    }

    pub fn format(&self) -> String {
        let parts: Vec<String> = self.entries.iter().map(|x| self.ring.format(x)).collect();
        format!("({})", parts.join(","))
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.entries
                .iter()
                .map(|x| Value::String(self.ring.format(x)))
                .collect(),
        )
    }
}

/// Row-major `n × n` matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RMatrix {
    pub ring: Ring,
    pub n: usize,
    pub entries: Vec<Elem>,
}

impl fmt::Debug for RMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RMatrix over {}:", self.ring)?;
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.ring.format(self.get(i, j))).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl RMatrix {
    pub fn identity(ring: &Ring, n: usize) -> Self {
        let mut entries = vec![ring.zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = ring.one();
        }
        RMatrix {
            ring: ring.clone(),
            n,
            entries,
        }
    }

    pub fn zero(ring: &Ring, n: usize) -> Self {
        RMatrix {
            ring: ring.clone(),
            n,
            entries: vec![ring.zero(); n * n],
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &Elem {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Elem) {
        self.entries[i * self.n + j] = x;
    }

    /// `1 + c·e_{ij}`.
    pub fn elementary(ring: &Ring, n: usize, i: usize, j: usize, c: &Elem) -> Self {
        let mut m = RMatrix::identity(ring, n);
        let v = ring.add(m.get(i, j), c);
        m.set(i, j, v);
        m
    }

    pub fn mul(&self, other: &RMatrix) -> Result<RMatrix> {
        if self.n != other.n || self.ring != other.ring {
            return Err(Error::Mismatch("matrix shapes or rings differ".into()));
        }
        let r = &self.ring;
        let n = self.n;
        let mut out = RMatrix::zero(r, n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if r.is_zero(a) {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if r.is_zero(b) {
                        continue;
                    }
                    let t = r.add(out.get(i, j), &r.mul(a, b));
                    out.set(i, j, t);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &RVector) -> Result<RVector> {
        if v.len() != self.n || v.ring != self.ring {
            return Err(Error::Mismatch("matrix/vector shapes differ".into()));
        }
        let r = &self.ring;
        Ok(RVector::new(
            r,
            (0..self.n)
                .map(|i| {
                    (0..self.n).fold(r.zero(), |acc, j| {
                        r.add(&acc, &r.mul(self.get(i, j), &v.entries[j]))
                    })
                })
                .collect(),
        ))
    }

    /// Column operation `col_q += c · col_p`, i.e. right multiplication by `1 + c e_{pq}`.
    pub fn add_col_multiple(&mut self, p: usize, q: usize, c: &Elem) {
        let r = self.ring.clone();
        for i in 0..self.n {
            let src = self.get(i, p);
            if r.is_zero(src) {
                continue;
            }
            let v = r.add(self.get(i, q), &r.mul(src, c));
            self.set(i, q, v);
        }
    }

    /// Row operation `row_p += c · row_q`, i.e. left multiplication by `1 + c e_{pq}`.
    pub fn add_row_multiple(&mut self, p: usize, q: usize, c: &Elem) {
        let r = self.ring.clone();
        for j in 0..self.n {
            let src = self.get(q, j);
            if r.is_zero(src) {
                continue;
            }
            let v = r.add(self.get(p, j), &r.mul(c, src));
            self.set(p, j, v);
        }
    }

    pub fn transpose(&self) -> RMatrix {
        let mut out = self.clone();
        for i in 0..self.n {
            for j in 0..self.n {
                out.set(i, j, self.get(j, i).clone());
            }
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        let r = &self.ring;
        (0..self.n).all(|i| {
            (0..self.n).all(|j| {
                let x = self.get(i, j);
                if i == j {
                    r.is_one(x)
                } else {
                    r.is_zero(x)
                }
            })
        })
    }

    pub fn map(&self, f: &RingMorphism) -> RMatrix {
        RMatrix {
            ring: f.target.clone(),
            n: self.n,
            entries: self.entries.iter().map(|x| f.apply(x)).collect(),
        }
    }

    pub fn column(&self, j: usize) -> RVector {
        RVector::new(&self.ring, (0..self.n).map(|i| self.get(i, j).clone()).collect())
    }

    /// Determinant by the subset recursion, exact in any commutative ring.
    pub fn determinant(&self) -> Elem {
        let n = self.n;
        let r = &self.ring;
        // dp over subsets of used columns, row by row
        let mut dp: Vec<Option<Elem>> = vec![None; 1 << n];
        dp[0] = Some(r.one());
        for mask in 0usize..(1 << n) {
            let Some(val) = dp[mask].clone() else { continue };
            let row = mask.count_ones() as usize;
            if row == n {
                continue;
            }
            for col in 0..n {
                if mask >> col & 1 == 1 {
                    continue;
                }
                let x = self.get(row, col);
                if r.is_zero(x) {
                    continue;
                }
                // sign: number of used columns greater than col
                let inversions = (mask >> (col + 1)).count_ones();
                let mut term = r.mul(&val, x);
                if inversions % 2 == 1 {
                    term = r.neg(&term);
                }
                let next = mask | (1 << col);
                dp[next] = Some(match &dp[next] {
                    Some(acc) => r.add(acc, &term),
                    None => term,
                });
            }
        }
        dp[(1 << n) - 1].clone().unwrap_or_else(|| r.zero())
    }

    /// General inverse via the adjugate; fails unless the determinant is a unit.
    pub fn inverse(&self) -> Result<RMatrix> {
        let r = &self.ring;
        let n = self.n;
        let det = self.determinant();
        let dinv = r
            .unit_inverse(&det)
            .ok_or_else(|| Error::Precondition("matrix is not invertible".into()))?;
        let mut out = RMatrix::zero(r, n);
        if n == 1 {
            out.set(0, 0, dinv);
            return Ok(out);
        }
        for i in 0..n {
            for j in 0..n {
                let mut minor = RMatrix::zero(r, n - 1);
                for (ri, si) in (0..n).filter(|&k| k != i).enumerate() {
                    for (rj, sj) in (0..n).filter(|&k| k != j).enumerate() {
                        minor.set(ri, rj, self.get(si, sj).clone());
                    }
                }
                let mut c = minor.determinant();
                if (i + j) % 2 == 1 {
                    c = r.neg(&c);
                }
                // adjugate is the transpose of the cofactor matrix
                out.set(j, i, r.mul(&c, &dinv));
            }
        }
        Ok(out)
    }

    /// `M* = (Mᵗ)⁻¹` for a general invertible matrix.
    pub fn contragredient(&self) -> Result<RMatrix> {
        self.transpose().inverse()
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            (0..self.n)
                .map(|i| {
                    Value::Array(
                        (0..self.n)
                            .map(|j| Value::String(self.ring.format(self.get(i, j))))
                            .collect(),
                    )
                })
                .collect(),
        )
    }
}

/// `1 + u vᵗ`.
pub fn transvection(u: &RVector, v: &RVector) -> Result<RMatrix> {
    u.check(v)?;
    let r = &u.ring;
    let n = u.len();
    let mut m = RMatrix::identity(r, n);
    for i in 0..n {
        if r.is_zero(&u.entries[i]) {
            continue;
        }
        for j in 0..n {
            let t = r.add(m.get(i, j), &r.mul(&u.entries[i], &v.entries[j]));
            m.set(i, j, t);
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transvection_of_basis_is_elementary() {
        let r = Ring::parse("z/6").unwrap();
        let s = Elem::Mod(5);
        let u = RVector::basis(&r, 4, 0);
        let v = RVector::basis(&r, 4, 1).scale(&s);
        assert_eq!(transvection(&u, &v).unwrap(), RMatrix::elementary(&r, 4, 0, 1, &s));
    }

    #[test]
    fn contragredient_of_elementary() {
        let r = Ring::parse("z").unwrap();
        let x = r.from_int(7);
        let m = RMatrix::elementary(&r, 3, 0, 1, &x);
        assert_eq!(
            m.contragredient().unwrap(),
            RMatrix::elementary(&r, 3, 1, 0, &r.from_int(-7))
        );
        assert!(RMatrix::identity(&r, 3).contragredient().unwrap().is_identity());
    }

    #[test]
    fn determinant_of_permutation_sign() {
        let r = Ring::parse("z").unwrap();
        let mut m = RMatrix::zero(&r, 3);
        m.set(0, 1, r.one());
        m.set(1, 0, r.one());
        m.set(2, 2, r.one());
        assert_eq!(m.determinant(), r.from_int(-1));
    }

    #[test]
    fn certificate_example() {
        let r = Ring::parse("z/6").unwrap();
        let u = RVector::from_ints(&r, &[2, 3, 0, 0]);
        let w = u.unimodular_certificate().unwrap().unwrap();
        assert_eq!(w, RVector::from_ints(&r, &[2, 1, 0, 0]));
        assert!(RVector::from_ints(&r, &[2, 4, 0, 0])
            .unimodular_certificate()
            .unwrap()
            .is_none());
    }
}
