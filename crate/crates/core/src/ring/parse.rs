//! Ring construction expressions and element literals.

use num_bigint::BigInt;

use super::{localization, semidirect_ring, Elem, Ring, RingKind};
use crate::error::{Error, Result};

fn malformed(spec: &str, reason: impl Into<String>) -> Error {
    Error::MalformedSpec {
        spec: spec.to_string(),
        reason: reason.into(),
    }
}

/// Splits at commas that are not nested inside any bracket pair.
pub(crate) fn split_top(s: &str, sep: char) -> Option<Vec<&str>> {
    let mut depth = 0i32;
    let mut parts = Vec::new();
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => {
                depth -= 1;
                if depth < 0 {
                    return None;
                }
            }
            c if c == sep && depth == 0 => {
                parts.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    if depth != 0 {
        return None;
    }
    parts.push(&s[start..]);
    Some(parts)
}

fn call<'a>(s: &'a str, name: &str) -> Option<&'a str> {
    s.strip_prefix(name)?
        .strip_prefix('(')?
        .strip_suffix(')')
}

fn args<'a>(spec: &str, inner: &'a str, n: usize) -> Result<Vec<&'a str>> {
    let parts = split_top(inner, ',').ok_or_else(|| malformed(spec, "unbalanced brackets"))?;
    if parts.len() != n {
        return Err(malformed(spec, format!("expected {n} arguments")));
    }
    Ok(parts)
}

pub(crate) fn parse_ring(spec: &str) -> Result<Ring> {
    let s: String = spec.chars().filter(|c| !c.is_whitespace()).collect();
    parse_compact(&s)
}

fn parse_compact(s: &str) -> Result<Ring> {
    if s == "z" {
        return Ok(Ring::integers());
    }
    if let Some(n) = s.strip_prefix("z/") {
        let n: u64 = n.parse().map_err(|_| malformed(s, "modulus is not a natural number"))?;
        if n == 0 {
            return Err(malformed(s, "modulus must be positive"));
        }
        return Ring::modular(n);
    }
    if let Some(p) = s.strip_prefix('f') {
        if !p.is_empty() && p.chars().all(|c| c.is_ascii_digit()) {
            let p: u64 = p.parse().map_err(|_| malformed(s, "bad prime"))?;
            if !super::is_prime(p) {
                return Err(malformed(s, format!("{p} is not prime")));
            }
            return Ring::modular(p);
        }
    }
    if let Some(inner) = call(s, "prod") {
        let a = args(s, inner, 2)?;
        return Ok(Ring::product(&parse_compact(a[0])?, &parse_compact(a[1])?));
    }
    if let Some(inner) = call(s, "poly") {
        let a = args(s, inner, 2)?;
        let var = a[1];
        if var.is_empty() || !var.chars().all(|c| c.is_ascii_alphabetic()) {
            return Err(malformed(s, "variable must be alphabetic"));
        }
        return Ok(Ring::poly(&parse_compact(a[0])?, var));
    }
    if let Some(inner) = call(s, "loc") {
        let a = args(s, inner, 2)?;
        let base = parse_compact(a[0])?;
        let x = base.parse_elem(a[1])?;
        return Ok(localization(&base, &x)?.0);
    }
    if let Some(inner) = call(s, "semi") {
        let a = args(s, inner, 2)?;
        let base = parse_compact(a[0])?;
        let x = base.parse_elem(a[1])?;
        return semidirect_ring(&base, &x);
    }
    if let Some(inner) = call(s, "quo") {
        let a = args(s, inner, 2)?;
        let poly_ring = parse_compact(a[0])?;
        let RingKind::Poly { base, var } = poly_ring.kind() else {
            return Err(malformed(s, "quo expects a polynomial ring"));
        };
        let m = poly_ring.parse_elem(a[1])?;
        let Elem::Poly(coeffs) = m else { unreachable!() };
        return Ring::quotient(base, var, &coeffs);
    }
    Err(malformed(s, "unknown construction"))
}

fn bad_elem(ring: &Ring, lit: &str, reason: impl Into<String>) -> Error {
    Error::MalformedElement {
        literal: lit.to_string(),
        ring: ring.spec().to_string(),
        reason: reason.into(),
    }
}

pub(crate) fn parse_elem(ring: &Ring, literal: &str) -> Result<Elem> {
    let s: String = literal.chars().filter(|c| !c.is_whitespace()).collect();
    parse_elem_compact(ring, &s)
}

fn strip_group(s: &str) -> Option<&str> {
    let inner = s.strip_prefix('(')?.strip_suffix(')')?;
    let parts = split_top(inner, ',')?;
    if parts.len() == 1 {
        Some(inner)
    } else {
        None
    }
}

fn parse_elem_compact(ring: &Ring, s: &str) -> Result<Elem> {
    if s.is_empty() {
        return Err(bad_elem(ring, s, "empty literal"));
    }
    // bare grouping parentheses
    if !matches!(ring.kind(), RingKind::Product(..) | RingKind::Semidirect { .. }) {
        if let Some(inner) = strip_group(s) {
            return parse_elem_compact(ring, inner);
        }
    }
    match ring.kind() {
        RingKind::Integers => {
            let v: BigInt = s.parse().map_err(|_| bad_elem(ring, s, "not an integer"))?;
            Ok(Elem::Int(v))
        }
        RingKind::Modular(n) => {
            let v: BigInt = s.parse().map_err(|_| bad_elem(ring, s, "not an integer"))?;
            let r = ((v % BigInt::from(*n)) + BigInt::from(*n)) % BigInt::from(*n);
            Ok(Elem::Mod(u64::try_from(r).expect("residue fits")))
        }
        RingKind::Product(a, b) => {
            let inner = s
                .strip_prefix('(')
                .and_then(|t| t.strip_suffix(')'))
                .ok_or_else(|| bad_elem(ring, s, "expected (a,b)"))?;
            let parts = split_top(inner, ',').ok_or_else(|| bad_elem(ring, s, "unbalanced"))?;
            if parts.len() != 2 {
                // an integer literal maps diagonally
                if let Ok(k) = s.parse::<i64>() {
                    return Ok(ring.from_int(k));
                }
                return Err(bad_elem(ring, s, "expected two components"));
            }
            Ok(Elem::pair(
                parse_elem_compact(a, parts[0])?,
                parse_elem_compact(b, parts[1])?,
            ))
        }
        RingKind::Poly { base, var } | RingKind::Quotient { base, var, .. } => {
            let coeffs = if let Some(inner) = s.strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
                if inner.is_empty() {
                    Vec::new()
                } else {
                    split_top(inner, ',')
                        .ok_or_else(|| bad_elem(ring, s, "unbalanced"))?
                        .into_iter()
                        .map(|c| parse_elem_compact(base, c))
                        .collect::<Result<Vec<_>>>()?
                }
            } else {
                parse_poly_expr(ring, base, var, s)?
            };
            ring.poly_from_coeffs(coeffs)
        }
        RingKind::FiniteQuotient { base, reps } => {
            let x = parse_elem_compact(base, s)?;
            Ok(reps[&x].clone())
        }
        RingKind::LocFinite { base, e, a_inv, .. } => {
            let (num, den) = split_fraction(s);
            let x = base.mul(&parse_elem_compact(base, num)?, e);
            match den {
                None => Ok(x),
                Some(d) => {
                    let d = parse_elem_compact(base, d)?;
                    let k = power_of(base, &d, ring)
                        .ok_or_else(|| bad_elem(ring, s, "denominator is not a power of a"))?;
                    Ok(base.mul(&x, &base.pow(a_inv, k as u64)))
                }
            }
        }
        RingKind::LocDomain { base, .. } => {
            let (num, den) = split_fraction(s);
            let x = parse_elem_compact(base, num)?;
            let k = match den {
                None => 0,
                Some(d) => {
                    let d = parse_elem_compact(base, d)?;
                    power_of(base, &d, ring)
                        .ok_or_else(|| bad_elem(ring, s, "denominator is not a power of a"))?
                }
            };
            Ok(ring.reduce_frac(x, k))
        }
        RingKind::Semidirect { base, coeffs, .. } => {
            let inner = s
                .strip_prefix('(')
                .and_then(|t| t.strip_suffix(')'))
                .ok_or_else(|| bad_elem(ring, s, "expected (r,f)"))?;
            let parts = split_top(inner, ',').ok_or_else(|| bad_elem(ring, s, "unbalanced"))?;
            if parts.len() != 2 {
                return Err(bad_elem(ring, s, "expected two components"));
            }
            let r = parse_elem_compact(base, parts[0])?;
            let f = parse_elem_compact(coeffs, parts[1])?;
            let x = Elem::pair(r, f);
            if !ring.contains(&x) {
                return Err(bad_elem(ring, s, "polynomial part must have zero constant term"));
            }
            Ok(x)
        }
    }
}

fn split_fraction(s: &str) -> (&str, Option<&str>) {
    let mut depth = 0i32;
    let mut last = None;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            '/' if depth == 0 => last = Some(i),
            _ => {}
        }
    }
    match last {
        Some(i) => (&s[..i], Some(&s[i + 1..])),
        None => (s, None),
    }
}

/// `k` with `d = a^k` in `base`, where `a` is the localizing element of `loc`.
fn power_of(base: &Ring, d: &Elem, loc: &Ring) -> Option<u32> {
    let a = match loc.kind() {
        RingKind::LocDomain { a, .. } | RingKind::LocFinite { a, .. } => a,
        _ => return None,
    };
    let mut p = base.one();
    for k in 0..=64u32 {
        if p == *d {
            return Some(k);
        }
        p = base.mul(&p, a);
    }
    None
}

/// `c0 + c1*X + X^2 - 3X^4` style expressions with integer-literal coefficients.
fn parse_poly_expr(ring: &Ring, base: &Ring, var: &str, s: &str) -> Result<Vec<Elem>> {
    let mut terms: Vec<(bool, &str)> = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let mut neg = false;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            '+' | '-' if depth == 0 => {
                if i > start {
                    terms.push((neg, &s[start..i]));
                } else if i > 0 {
                    return Err(bad_elem(ring, s, "dangling sign"));
                }
                neg = c == '-';
                start = i + 1;
            }
            _ => {}
        }
    }
    if start >= s.len() {
        return Err(bad_elem(ring, s, "trailing sign"));
    }
    terms.push((neg, &s[start..]));
    let mut coeffs: Vec<Elem> = Vec::new();
    for (neg, t) in terms {
        let (c, k) = match t.find(var) {
            None => (parse_elem_compact(base, t)?, 0usize),
            Some(pos) => {
                let cpart = t[..pos].trim_end_matches('*');
                let c = if cpart.is_empty() {
                    base.one()
                } else {
                    parse_elem_compact(base, cpart)?
                };
                let rest = &t[pos + var.len()..];
                let k = if rest.is_empty() {
                    1
                } else {
                    rest.strip_prefix('^')
                        .and_then(|e| e.parse::<usize>().ok())
                        .ok_or_else(|| bad_elem(ring, s, "bad exponent"))?
                };
                (c, k)
            }
        };
        let c = if neg { base.neg(&c) } else { c };
        if coeffs.len() <= k {
            coeffs.resize(k + 1, base.zero());
        }
        coeffs[k] = base.add(&coeffs[k], &c);
    }
    Ok(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_alias_matches_modular() {
        assert_eq!(Ring::parse("f5").unwrap(), Ring::parse("z/5").unwrap());
        assert!(Ring::parse("f6").is_err());
    }

    #[test]
    fn malformed_specs_are_rejected() {
        for bad in ["", "q", "z/0", "prod(z/2)", "poly(z,1)", "quo(z,2)", "prod(z/2,z/3"] {
            assert!(Ring::parse(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn relator_expression_and_list_agree() {
        let a = Ring::parse("quo(poly(f2,X),X^2)").unwrap();
        let b = Ring::parse("quo(poly(f2,X),[0,0,1])").unwrap();
        assert_eq!(a, b);
        let c = Ring::parse("quo(poly(z,i),i^2+1)").unwrap();
        let i = c.parse_elem("i").unwrap();
        assert_eq!(c.mul(&i, &i), c.from_int(-1));
    }

    #[test]
    fn element_literals_round_trip() {
        for (spec, lit) in [
            ("z", "-17"),
            ("z/6", "5"),
            ("prod(f2,f3)", "(1,2)"),
            ("poly(z,X)", "[1,0,-3]"),
            ("loc(z,2)", "3/4"),
            ("semi(z,2)", "(3,[0,1/2])"),
        ] {
            let r = Ring::parse(spec).unwrap();
            let x = r.parse_elem(lit).unwrap();
            assert_eq!(r.format(&x), lit, "{spec}");
        }
    }

    #[test]
    fn semidirect_rejects_constant_term() {
        let r = Ring::parse("semi(z,2)").unwrap();
        assert!(r.parse_elem("(1,[1])").is_err());
    }
}
