//! Sparse multivariate polynomials over an exact scalar domain.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::scalar::{Domain, Scalar};
use crate::error::{Error, Result};

/// Exponent vector, ordered graded-lexicographically with variable 0 largest.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }

    /// Half of every exponent, when all are even.
    pub fn halve(&self) -> Option<Monomial> {
        self.0
            .iter()
            .map(|e| (e % 2 == 0).then_some(e / 2))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Standard variable names: `u, v, w` for three variables, `x0, x1, ...` otherwise.
pub fn default_names(nvars: usize) -> Vec<String> {
    if nvars == 3 {
        ["u", "v", "w"].iter().map(|s| s.to_string()).collect()
    } else {
        (0..nvars).map(|i| format!("x{i}")).collect()
    }
}

/// A polynomial in a fixed number of variables. No zero coefficients are stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    domain: Domain,
    nvars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero(domain: Domain, nvars: usize) -> Self {
        Poly {
            domain,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Scalar, nvars: usize) -> Self {
        let mut p = Poly::zero(c.domain(), nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn one(domain: Domain, nvars: usize) -> Self {
        Poly::constant(domain.one(), nvars)
    }

    pub fn var(domain: Domain, nvars: usize, index: usize) -> Self {
        let mut e = vec![0; nvars];
        e[index] = 1;
        Poly::term(e, domain.one())
    }

    pub fn term(exponents: Vec<u32>, c: Scalar) -> Self {
        let nvars = exponents.len();
        let mut p = Poly::zero(c.domain(), nvars);
        p.add_term(Monomial(exponents), c);
        p
    }

    pub fn from_terms<I>(domain: Domain, nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, Scalar)>,
    {
        let mut p = Poly::zero(domain, nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(Monomial(e), c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = &*existing + &c;
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms from the leading one downwards.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, exponents: &[u32]) -> Scalar {
        self.terms
            .get(&Monomial(exponents.to_vec()))
            .cloned()
            .unwrap_or_else(|| self.domain.zero())
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// Largest total degree of a term; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// The common degree of all terms; `Ok(None)` for zero.
    pub fn homogeneous_degree(&self) -> Result<Option<u32>> {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        let Some(first) = degrees.next() else {
            return Ok(None);
        };
        match degrees.find(|&d| d != first) {
            Some(second) => Err(Error::Inhomogeneous { first, second }),
            None => Ok(Some(first)),
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The constant coefficient when the polynomial is constant.
    pub fn as_constant(&self) -> Option<Scalar> {
        self.is_constant()
            .then(|| self.coefficient(&vec![0; self.nvars]))
    }

    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.nvars, "evaluation point length");
        let mut acc = self.domain.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    t = &t * &x.pow(e);
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        let mut p = Poly::zero(self.domain, self.nvars);
        for (m, a) in &self.terms {
            p.add_term(m.clone(), a * c);
        }
        p
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.domain, self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Partial derivative with respect to variable `index`.
    pub fn partial(&self, index: usize) -> Poly {
        let mut p = Poly::zero(self.domain, self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[index];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[index] -= 1;
            p.add_term(Monomial(exps), c * &self.domain.from_i64(e as i64));
        }
        p
    }

    /// Re-express in a larger ring: variable `i` becomes variable `positions[i]`.
    pub fn embed(&self, nvars: usize, positions: &[usize]) -> Poly {
        assert_eq!(positions.len(), self.nvars);
        let mut p = Poly::zero(self.domain, nvars);
        for (m, c) in &self.terms {
            let mut exps = vec![0; nvars];
            for (i, &e) in m.0.iter().enumerate() {
                exps[positions[i]] += e;
            }
            p.add_term(Monomial(exps), c.clone());
        }
        p
    }

    /// Substitute a scalar value for each of the variables listed in `values`
    /// (pairs of variable index and value); the number of variables is kept.
    pub fn partial_eval(&self, values: &[(usize, Scalar)]) -> Poly {
        let mut p = Poly::zero(self.domain, self.nvars);
        for (m, c) in &self.terms {
            let mut exps = m.0.clone();
            let mut coef = c.clone();
            for (i, x) in values {
                let e = exps[*i];
                if e > 0 {
                    coef = &coef * &x.pow(e);
                    exps[*i] = 0;
                }
            }
            p.add_term(Monomial(exps), coef);
        }
        p
    }

    /// Exact quotient `self / g`, or `NotDivisible` carrying the first remainder
    /// that could not be reduced.
    pub fn divide_exact(&self, g: &Poly) -> Result<Poly> {
        let (lm_g, lc_g) = g.leading_term().ok_or(Error::ZeroPolynomial)?;
        let lc_inv = lc_g.inv().expect("nonzero leading coefficient");
        let mut rem = self.clone();
        let mut quot = Poly::zero(self.domain, self.nvars);
        while let Some((m, c)) = rem.leading_term() {
            let Some(qm) = m.checked_div(lm_g) else {
                return Err(Error::NotDivisible {
                    remainder: rem.to_string(),
                });
            };
            let t = Poly::term(qm.0, c * &lc_inv);
            rem = &rem - &(&t * g);
            quot = &quot + &t;
        }
        Ok(quot)
    }

    /// The square root whose leading coefficient is sign-normalized.
    pub fn sqrt(&self) -> Result<Poly> {
        let Some((lm, lc)) = self.leading_term() else {
            return Ok(self.clone());
        };
        let root_m = lm.halve().ok_or(Error::NotAPerfectSquare)?;
        let root_c = lc.sqrt().ok_or(Error::NotAPerfectSquare)?;
        let two_lc_inv = (&root_c * &self.domain.from_i64(2))
            .inv()
            .expect("characteristic is not 2");
        let mut root = Poly::term(root_m.0.clone(), root_c);
        let mut rem = self - &(&root * &root);
        while let Some((m, c)) = rem.leading_term() {
            let next = m
                .checked_div(&root_m)
                .filter(|n| *n < root_m)
                .ok_or(Error::NotAPerfectSquare)?;
            let t = Poly::term(next.0, c * &two_lc_inv);
            let two_root_t = (&root * &t).scale(&self.domain.from_i64(2));
            rem = &(&rem - &two_root_t) - &(&t * &t);
            root = &root + &t;
        }
        Ok(root)
    }

    pub fn to_string_with<S: AsRef<str>>(&self, names: &[S]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms().enumerate() {
            let negative = c.is_negative_display();
            let abs = if negative { -c } else { c.clone() };
            match (i, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let mono: Vec<String> = m
                .exponents()
                .iter()
                .zip(names)
                .filter(|(e, _)| **e > 0)
                .map(|(e, n)| match e {
                    1 => n.as_ref().to_string(),
                    _ => format!("{}^{}", n.as_ref(), e),
                })
                .collect();
            if mono.is_empty() {
                out.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    out.push_str(&abs.to_string());
                    out.push('*');
                }
                out.push_str(&mono.join("*"));
            }
        }
        out
    }

    fn check_ring(&self, other: &Poly) {
        assert_eq!(self.nvars, other.nvars, "polynomials in different rings");
        assert_eq!(
            self.domain, other.domain,
            "polynomials over different domains"
        );
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(&default_names(self.nvars)))
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.check_ring(rhs);
        let mut p = self.clone();
        for (m, c) in &rhs.terms {
            p.add_term(m.clone(), c.clone());
        }
        p
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.check_ring(rhs);
        let mut p = self.clone();
        for (m, c) in &rhs.terms {
            p.add_term(m.clone(), -c);
        }
        p
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.check_ring(rhs);
        let mut p = Poly::zero(self.domain, self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                p.add_term(m1.mul(m2), c1 * c2);
            }
        }
        p
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let mut p = self.clone();
        for c in p.terms.values_mut() {
            *c = -&*c;
        }
        p
    }
}

/// A homogeneous polynomial; the zero polynomial has no degree and fits any slot.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomogPoly {
    poly: Poly,
    degree: Option<u32>,
}

impl HomogPoly {
    pub fn new(poly: Poly) -> Result<Self> {
        let degree = poly.homogeneous_degree()?;
        Ok(HomogPoly { poly, degree })
    }

    pub fn zero(domain: Domain, nvars: usize) -> Self {
        HomogPoly {
            poly: Poly::zero(domain, nvars),
            degree: None,
        }
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn into_poly(self) -> Poly {
        self.poly
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }
}

impl fmt::Display for HomogPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt(f)
    }
}

/// Exact division of homogeneous polynomials.
pub fn divide_exact(f: &HomogPoly, g: &HomogPoly) -> Result<HomogPoly> {
    HomogPoly::new(f.poly.divide_exact(&g.poly)?)
}

/// Square root of a homogeneous polynomial of even degree.
pub fn poly_sqrt(f: &HomogPoly) -> Result<HomogPoly> {
    if f.degree.is_some_and(|d| d % 2 == 1) {
        return Err(Error::NotAPerfectSquare);
    }
    HomogPoly::new(f.poly.sqrt()?)
}
