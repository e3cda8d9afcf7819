use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Monomial, MonomialOrder, Rational};
use crate::error::{Error, Result};

/// Exact multivariate polynomial over Q.
///
/// Terms are kept strictly descending in grevlex with no zero coefficients,
/// so structural equality is ideal-independent polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Polynomial {
    arity: usize,
    terms: Vec<(Monomial, Rational)>,
}

const STORAGE: MonomialOrder = MonomialOrder::Grevlex;

impl Polynomial {
    pub fn zero(arity: usize) -> Self {
        Polynomial {
            arity,
            terms: Vec::new(),
        }
    }

    pub fn one(arity: usize) -> Self {
        Self::constant(arity, Rational::one())
    }

    pub fn constant(arity: usize, c: Rational) -> Self {
        if c.is_zero() {
            return Self::zero(arity);
        }
        Polynomial {
            arity,
            terms: vec![(Monomial::one(arity), c)],
        }
    }

    pub fn from_int(arity: usize, c: i64) -> Self {
        Self::constant(arity, Rational::from_integer(BigInt::from(c)))
    }

    pub fn var(arity: usize, i: usize) -> Self {
        Polynomial {
            arity,
            terms: vec![(Monomial::var(arity, i), Rational::one())],
        }
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let arity = m.arity();
        if c.is_zero() {
            return Self::zero(arity);
        }
        Polynomial {
            arity,
            terms: vec![(m, c)],
        }
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates.
    pub fn from_terms(arity: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut acc: BTreeMap<GrevKey, Rational> = BTreeMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.arity(), arity);
            if c.is_zero() {
                continue;
            }
            let e = acc.entry(GrevKey(m)).or_insert_with(Rational::zero);
            *e += c;
        }
        let terms = acc
            .into_iter()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k.0, c))
            .collect();
        Polynomial { arity, terms }
    }

    pub(crate) fn from_distinct_terms(arity: usize, mut terms: Vec<(Monomial, Rational)>) -> Self {
        terms.retain(|(_, c)| !c.is_zero());
        terms.sort_by(|a, b| STORAGE.cmp(&b.0, &a.0));
        Polynomial { arity, terms }
    }

    #[inline]
    pub fn arity(&self) -> usize {
        self.arity
    }

    #[inline]
    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Rational)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn constant_term(&self) -> Rational {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => Rational::zero(),
        }
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| m.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => self.terms.iter().all(|(n, _)| n.degree() == m.degree()),
        }
    }

    /// Degree in the variables of `range` (maximum over terms).
    pub fn partial_degree(&self, range: std::ops::Range<usize>) -> u32 {
        self.terms
            .iter()
            .map(|(m, _)| m.partial_degree(range.clone()))
            .max()
            .unwrap_or(0)
    }

    /// True when every term has the same degree in `range`.
    pub fn is_homogeneous_in(&self, range: std::ops::Range<usize>) -> bool {
        let mut it = self
            .terms
            .iter()
            .map(|(m, _)| m.partial_degree(range.clone()));
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn involves_var(&self, i: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exps()[i] > 0)
    }

    pub fn involves_only(&self, range: std::ops::Range<usize>) -> bool {
        self.terms.iter().all(|(m, _)| {
            m.exps()
                .iter()
                .enumerate()
                .all(|(i, e)| *e == 0 || range.contains(&i))
        })
    }

    pub fn leading_term(&self, order: MonomialOrder) -> Option<(&Monomial, &Rational)> {
        if order == STORAGE {
            return self.terms.first().map(|(m, c)| (m, c));
        }
        self.terms
            .iter()
            .max_by(|a, b| order.cmp(&a.0, &b.0))
            .map(|(m, c)| (m, c))
    }

    /// Terms sorted descending under `order`.
    pub fn sorted_terms(&self, order: MonomialOrder) -> Vec<(Monomial, Rational)> {
        let mut t = self.terms.clone();
        if order != STORAGE {
            t.sort_by(|a, b| order.cmp(&b.0, &a.0));
        }
        t
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        match self.terms.binary_search_by(|(n, _)| STORAGE.cmp(m, n)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.arity);
        }
        Polynomial {
            arity: self.arity,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.arity);
        }
        // multiplication by a monomial preserves grevlex order
        Polynomial {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.mul(mono), a * c))
                .collect(),
        }
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        assert_eq!(self.arity, other.arity, "arity mismatch");
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match STORAGE.cmp(ma, mb) {
                Ordering::Greater => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((mb.clone(), if negate { -cb } else { cb.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { ca - cb } else { ca + cb };
                    if !c.is_zero() {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(
            other.terms[j..]
                .iter()
                .map(|(m, c)| (m.clone(), if negate { -c } else { c.clone() })),
        );
        Polynomial {
            arity: self.arity,
            terms: out,
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_arity(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_arity(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_arity(other)?;
        Ok(self.mul_impl(other))
    }

    fn check_arity(&self, other: &Polynomial) -> Result<()> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: other.arity,
            });
        }
        Ok(())
    }

    fn mul_impl(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.arity, other.arity, "arity mismatch");
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(self.arity);
        }
        let (small, big) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = Polynomial::zero(self.arity);
        for (m, c) in &small.terms {
            acc = acc.merge(&big.mul_monomial(m, c), false);
        }
        acc
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut result = Polynomial::one(self.arity);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Composition: variable `i` is replaced by `images[i]`. All images share one arity.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: images.len(),
            });
        }
        let target = images.first().map(|p| p.arity).unwrap_or(0);
        if let Some(bad) = images.iter().find(|p| p.arity != target) {
            return Err(Error::ArityMismatch {
                expected: target,
                found: bad.arity,
            });
        }
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|p| vec![Polynomial::one(target), p.clone()])
            .collect();
        let mut acc = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e as usize];
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Partial substitution: `Some(q)` replaces a variable, `None` keeps it.
    /// The arity is unchanged.
    pub fn substitute_some(&self, images: &[Option<Polynomial>]) -> Result<Polynomial> {
        let full: Vec<Polynomial> = images
            .iter()
            .enumerate()
            .map(|(i, q)| q.clone().unwrap_or_else(|| Polynomial::var(self.arity, i)))
            .collect();
        self.substitute(&full)
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.arity);
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    t *= num_traits::pow(point[i].clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Sets some variables to constants, keeping the arity.
    pub fn specialize(&self, values: &[Option<Rational>]) -> Polynomial {
        let terms = self.terms.iter().map(|(m, c)| {
            let mut c = c.clone();
            let mut exps = m.exps().to_vec();
            for (i, v) in values.iter().enumerate() {
                if let Some(v) = v {
                    if exps[i] > 0 {
                        c *= num_traits::pow(v.clone(), exps[i] as usize);
                        exps[i] = 0;
                    }
                }
            }
            (Monomial::new(exps), c)
        });
        Polynomial::from_terms(self.arity, terms)
    }

    pub fn derivative(&self, i: usize) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exps()[i] > 0)
            .map(|(m, c)| {
                let mut exps = m.exps().to_vec();
                let e = exps[i];
                exps[i] -= 1;
                (
                    Monomial::new(exps),
                    c * Rational::from_integer(BigInt::from(e)),
                )
            });
        Polynomial::from_terms(self.arity, terms)
    }

    /// Moves variable `i` to `map[i]` in a ring of `arity` variables.
    pub fn remap(&self, arity: usize, map: &[usize]) -> Polynomial {
        Polynomial::from_terms(
            arity,
            self.terms
                .iter()
                .map(|(m, c)| (m.remap(arity, map), c.clone())),
        )
    }

    /// Embeds into a larger ring, placing the old variables at `offset..`.
    pub fn embed(&self, arity: usize, offset: usize) -> Polynomial {
        let map: Vec<usize> = (0..self.arity).map(|i| i + offset).collect();
        // order-preserving when only zero variables are added around
        self.remap(arity, &map)
    }

    /// Drops variables not in `keep` (which must not occur), re-indexing the rest.
    pub fn restrict(&self, keep: &[usize]) -> Polynomial {
        let arity = keep.len();
        let terms = self.terms.iter().map(|(m, c)| {
            debug_assert!(m
                .exps()
                .iter()
                .enumerate()
                .all(|(i, e)| *e == 0 || keep.contains(&i)));
            (
                Monomial::new(keep.iter().map(|&k| m.exps()[k]).collect()),
                c.clone(),
            )
        });
        Polynomial::from_terms(arity, terms)
    }

    /// Sets variable `i` to 1 and removes it from the ring.
    pub fn dehomogenize(&self, i: usize) -> Polynomial {
        let terms = self.terms.iter().map(|(m, c)| {
            let mut exps = m.exps().to_vec();
            exps.remove(i);
            (Monomial::new(exps), c.clone())
        });
        Polynomial::from_terms(self.arity - 1, terms)
    }

    /// Inserts a new variable at position `i` and homogenizes with it.
    pub fn homogenize(&self, i: usize) -> Polynomial {
        let d = self.degree().unwrap_or(0);
        let terms = self.terms.iter().map(|(m, c)| {
            let mut exps = m.exps().to_vec();
            exps.insert(i, d - m.degree());
            (Monomial::new(exps), c.clone())
        });
        Polynomial::from_terms(self.arity + 1, terms)
    }

    /// Homogeneous component of degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Polynomial {
        Polynomial {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .cloned()
                .collect(),
        }
    }

    /// Scales so the grevlex-leading coefficient is 1.
    pub fn monic(&self) -> Polynomial {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    /// Primitive integer multiple with positive leading coefficient.
    pub fn primitive(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut den = BigInt::one();
        for (_, c) in &self.terms {
            den = den.lcm(c.denom());
        }
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            let n = c.numer() * (&den / c.denom());
            g = g.gcd(&n);
        }
        let mut factor = Rational::new(den, g);
        if self.terms[0].1.is_negative() {
            factor = -factor;
        }
        self.scale(&factor)
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Polynomial) -> Option<Polynomial> {
        assert_eq!(self.arity, d.arity);
        let (lm, lc) = d.terms.first()?;
        let mut rem = self.clone();
        let mut q = Vec::new();
        while let Some((m, c)) = rem.terms.first().cloned() {
            let t = lm.quotient_of(&m)?;
            let coef = &c / lc;
            rem = rem.merge(&d.mul_monomial(&t, &coef), true);
            q.push((t, coef));
        }
        Some(Polynomial::from_distinct_terms(self.arity, q))
    }

    pub fn max_height(&self) -> BigInt {
        self.terms
            .iter()
            .map(|(_, c)| c.numer().abs().max(c.denom().clone()))
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        format_poly(self, |i| names[i].clone())
    }
}

#[derive(PartialEq, Eq)]
struct GrevKey(Monomial);

impl PartialOrd for GrevKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GrevKey {
    fn cmp(&self, other: &Self) -> Ordering {
        STORAGE.cmp(&self.0, &other.0)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.merge(rhs, false)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.merge(rhs, true)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.mul_impl(rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            arity: self.arity,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

pub(crate) fn fmt_rational(c: &Rational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub(crate) fn format_poly(p: &Polynomial, name: impl Fn(usize) -> String) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut s = String::new();
    for (k, (m, c)) in p.terms.iter().enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        if k == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        let mut factors = Vec::new();
        if !a.is_one() || m.is_one() {
            factors.push(fmt_rational(&a));
        }
        for (i, &e) in m.exps().iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(name(i)),
                _ => factors.push(format!("{}^{}", name(i), e)),
            }
        }
        s.push_str(&factors.join("*"));
    }
    s
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_poly(self, |i| format!("x{}", i + 1)))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, q};

    fn p(s: &str) -> Polynomial {
        parse_poly(s, &["x", "y"]).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&p("x+y") + &p("x-y"), p("2x"));
        assert_eq!(&p("x+y") * &p("x-y"), p("x^2-y^2"));
        assert_eq!(&p("x^2+2x+1") * &p("x-1"), p("x^3+x^2-x-1"));
    }

    #[test]
    fn arity_mismatch_is_an_error() {
        let a = Polynomial::var(2, 0);
        let b = Polynomial::var(3, 0);
        assert!(matches!(
            a.checked_add(&b),
            Err(Error::ArityMismatch { .. })
        ));
        assert!(a.checked_mul(&b).is_err());
    }

    #[test]
    fn substitution_examples() {
        // dehomogenize x^2 + xy at x = 1
        let f = p("x^2 + x*y");
        let one = Polynomial::one(2);
        let y = Polynomial::var(2, 1);
        assert_eq!(f.substitute(&[one, y.clone()]).unwrap(), p("1 + y"));
        let x = Polynomial::var(2, 0);
        assert_eq!(p("x").substitute(&[x, y]).unwrap(), p("x"));
        // x^2 under x -> s11 x + s12 y
        let names = ["x", "y", "s11", "s12"];
        let f = parse_poly("x^2", &names).unwrap();
        let img = parse_poly("s11*x + s12*y", &names).unwrap();
        let id: Vec<Polynomial> = (0..4).map(|i| Polynomial::var(4, i)).collect();
        let mut images = id.clone();
        images[0] = img;
        let expect = parse_poly("s11^2*x^2 + 2*s11*s12*x*y + s12^2*y^2", &names).unwrap();
        assert_eq!(f.substitute(&images).unwrap(), expect);
    }

    #[test]
    fn exact_division_and_primitive() {
        let f = p("x^3+x^2-x-1");
        assert_eq!(f.div_exact(&p("x-1")).unwrap(), p("x^2+2x+1"));
        assert!(f.div_exact(&p("x-2")).is_none());
        assert_eq!(p("-1/2 x + 3/4 y").primitive(), p("2x - 3y"));
        assert_eq!(p("x^2 y + 3").eval(&[q(2), q(-1)]), q(-1));
    }

    #[test]
    fn homogenize_roundtrip() {
        let f = p("x^2 + y + 1");
        let h = f.homogenize(0);
        assert!(h.is_homogeneous());
        assert_eq!(h.dehomogenize(0), f);
    }
}
