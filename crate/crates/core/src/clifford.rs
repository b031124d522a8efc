//! Fiberwise even Clifford algebras.
//!
//! At a point of the base the form is a scalar symmetric matrix `q`, and the
//! Clifford algebra is generated by `x, y, z` subject to
//! `x_i x_j + x_j x_i = 2 q_ij`. Words are rewritten to strictly increasing
//! normal form; the even part has basis
//! `1, X = yz - q23, Y = zx - q13, Z = xy - q12`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactpoly::{
    adjugate3, det3, poly_sqrt, Domain, Matrix, PolyMatrix, RationalSeries, Scalar,
};
use crate::qform::{FiberPoint, QForm};

const LETTERS: [char; 3] = ['x', 'y', 'z'];

/// A scalar multiple of a word in the generators `x, y, z` (letters 0, 1, 2).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliffordWord {
    pub coefficient: Scalar,
    pub letters: Vec<u8>,
}

impl CliffordWord {
    pub fn new(coefficient: Scalar, letters: Vec<u8>) -> Self {
        assert!(letters.iter().all(|&l| l < 3), "letters are 0, 1, 2");
        CliffordWord {
            coefficient,
            letters,
        }
    }

    /// Parse a word such as `"xyxy"`.
    pub fn parse(coefficient: Scalar, text: &str) -> Option<Self> {
        let letters = text
            .chars()
            .map(|c| LETTERS.iter().position(|&l| l == c).map(|i| i as u8))
            .collect::<Option<Vec<_>>>()?;
        Some(CliffordWord::new(coefficient, letters))
    }
}

/// A linear combination of normal-form words (strictly increasing letters).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliffordElement {
    domain: Domain,
    terms: BTreeMap<Vec<u8>, Scalar>,
}

impl CliffordElement {
    pub fn zero(domain: Domain) -> Self {
        CliffordElement {
            domain,
            terms: BTreeMap::new(),
        }
    }

    fn add_term(&mut self, word: Vec<u8>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(word).or_insert_with(|| self.domain.zero());
        *entry = &*entry + &c;
        self.terms.retain(|_, v| !v.is_zero());
    }

    /// Coefficient of the normal-form word.
    pub fn coefficient(&self, word: &[u8]) -> Scalar {
        self.terms
            .get(word)
            .cloned()
            .unwrap_or_else(|| self.domain.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u8>, &Scalar)> {
        self.terms.iter()
    }
}

impl fmt::Display for CliffordElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| {
                let word: String = w.iter().map(|&l| LETTERS[l as usize]).collect();
                match (word.is_empty(), c.is_one()) {
                    (true, _) => c.to_string(),
                    (false, true) => word,
                    (false, false) => format!("{c}*{word}"),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Positions `k` where `letters[k] >= letters[k + 1]`.
fn redexes(letters: &[u8]) -> Vec<usize> {
    (0..letters.len().saturating_sub(1))
        .filter(|&k| letters[k] >= letters[k + 1])
        .collect()
}

/// Rewrite to normal form, always reducing the leftmost redex.
pub fn reduce_word(words: &[CliffordWord], q: &Matrix<Scalar>) -> CliffordElement {
    reduce_with(words, q, |_| 0)
}

/// Rewrite to normal form; `choose(n)` picks which of the `n` available redexes
/// of the current word to rewrite next.
pub fn reduce_with(
    words: &[CliffordWord],
    q: &Matrix<Scalar>,
    mut choose: impl FnMut(usize) -> usize,
) -> CliffordElement {
    assert!(
        q.rows() == 3 && q.cols() == 3 && q.is_symmetric(),
        "q must be symmetric 3x3"
    );
    let domain = q.get(0, 0).domain();
    let two = domain.from_i64(2);
    let mut out = CliffordElement::zero(domain);
    let mut pending: Vec<(Vec<u8>, Scalar)> = words
        .iter()
        .map(|w| (w.letters.clone(), w.coefficient.clone()))
        .collect();
    while let Some((w, c)) = pending.pop() {
        if c.is_zero() {
            continue;
        }
        let spots = redexes(&w);
        if spots.is_empty() {
            out.add_term(w, c);
            continue;
        }
        let k = spots[choose(spots.len()) % spots.len()];
        let (i, j) = (w[k] as usize, w[k + 1] as usize);
        let mut shorter = w[..k].to_vec();
        shorter.extend_from_slice(&w[k + 2..]);
        if i == j {
            // x_i x_i = q_ii
            pending.push((shorter, &c * q.get(i, i)));
        } else {
            // x_i x_j = 2 q_ij - x_j x_i  for i > j
            pending.push((shorter, &(&c * &two) * q.get(i, j)));
            let mut swapped = w.clone();
            swapped.swap(k, k + 1);
            pending.push((swapped, -&c));
        }
    }
    out
}

/// Product of two normal-form elements.
pub fn multiply(a: &CliffordElement, b: &CliffordElement, q: &Matrix<Scalar>) -> CliffordElement {
    let mut words = Vec::new();
    for (wa, ca) in &a.terms {
        for (wb, cb) in &b.terms {
            let mut letters = wa.clone();
            letters.extend_from_slice(wb);
            words.push(CliffordWord::new(ca * cb, letters));
        }
    }
    reduce_word(&words, q)
}

/// Element of a four-dimensional algebra in coordinates of its basis.
pub type AlgElem = [Scalar; 4];

/// A rank-four algebra over a field with basis `e0 = 1, e1, e2, e3`, structure
/// constants and a trace functional.
#[derive(Clone, Debug, PartialEq)]
pub struct FiberAlgebra {
    domain: Domain,
    /// `structure[i][j]` holds the coordinates of `e_i e_j`.
    structure: Vec<Vec<AlgElem>>,
    trace: AlgElem,
}

impl FiberAlgebra {
    /// Build from raw data without checking the quaternion axioms; see
    /// [`FiberAlgebra::check_invariants`].
    pub fn from_structure(domain: Domain, structure: Vec<Vec<AlgElem>>, trace: AlgElem) -> Self {
        assert!(structure.len() == 4 && structure.iter().all(|r| r.len() == 4));
        FiberAlgebra {
            domain,
            structure,
            trace,
        }
    }

    /// The Kronecker quiver algebra: upper triangular 2x2 matrices with a
    /// two-dimensional corner, on the basis `1, e11 - e22, v1, v2`.
    pub fn kronecker(domain: Domain) -> Self {
        let z = || domain.zero();
        let unit =
            |k: usize| -> AlgElem { std::array::from_fn(|i| domain.from_i64((i == k) as i64)) };
        let neg_unit =
            |k: usize| -> AlgElem { std::array::from_fn(|i| domain.from_i64(-((i == k) as i64))) };
        let zero: AlgElem = std::array::from_fn(|_| z());
        let mut s = vec![vec![zero.clone(); 4]; 4];
        s[0] = (0..4).map(unit).collect();
        for (k, row) in s.iter_mut().enumerate() {
            row[0] = unit(k);
        }
        s[1][1] = unit(0);
        s[1][2] = unit(2);
        s[1][3] = unit(3);
        s[2][1] = neg_unit(2);
        s[3][1] = neg_unit(3);
        let mut trace = zero;
        trace[0] = domain.from_i64(2);
        FiberAlgebra::from_structure(domain, s, trace)
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn structure(&self) -> &[Vec<AlgElem>] {
        &self.structure
    }

    pub fn trace_functional(&self) -> &AlgElem {
        &self.trace
    }

    pub fn basis(&self, k: usize) -> AlgElem {
        std::array::from_fn(|i| self.domain.from_i64((i == k) as i64))
    }

    pub fn one(&self) -> AlgElem {
        self.basis(0)
    }

    pub fn zero(&self) -> AlgElem {
        std::array::from_fn(|_| self.domain.zero())
    }

    pub fn add(&self, a: &AlgElem, b: &AlgElem) -> AlgElem {
        std::array::from_fn(|i| &a[i] + &b[i])
    }

    pub fn scale(&self, c: &Scalar, a: &AlgElem) -> AlgElem {
        std::array::from_fn(|i| c * &a[i])
    }

    pub fn mul(&self, a: &AlgElem, b: &AlgElem) -> AlgElem {
        let mut out = self.zero();
        for (ai, row) in a.iter().zip(&self.structure) {
            if ai.is_zero() {
                continue;
            }
            for (bj, prod) in b.iter().zip(row) {
                if bj.is_zero() {
                    continue;
                }
                let c = ai * bj;
                for (o, s) in out.iter_mut().zip(prod) {
                    *o = &*o + &(&c * s);
                }
            }
        }
        out
    }

    pub fn trace(&self, a: &AlgElem) -> Scalar {
        (0..4).fold(self.domain.zero(), |acc, i| {
            &acc + &(&self.trace[i] * &a[i])
        })
    }

    fn is_zero_elem(a: &AlgElem) -> bool {
        a.iter().all(Scalar::is_zero)
    }

    fn half(&self) -> Scalar {
        self.domain
            .from_i64(2)
            .inv()
            .expect("characteristic is not 2")
    }

    /// `(e_i e_j) e_k = e_i (e_j e_k)` for every basis triple.
    pub fn is_associative(&self) -> bool {
        (0..4).all(|i| {
            (0..4).all(|j| {
                (0..4).all(|k| {
                    let (ei, ej, ek) = (self.basis(i), self.basis(j), self.basis(k));
                    self.mul(&self.mul(&ei, &ej), &ek) == self.mul(&ei, &self.mul(&ej, &ek))
                })
            })
        })
    }

    /// `a^2 - tr(a) a + (tr(a)^2 - tr(a^2)) / 2 = 0`.
    pub fn cayley_hamilton_check(&self, a: &AlgElem) -> bool {
        let t = self.trace(a);
        let a2 = self.mul(a, a);
        let g = &(&(&t * &t) - &self.trace(&a2)) * &self.half();
        let lhs = self.add(
            &self.add(&a2, &self.scale(&-&t, a)),
            &self.scale(&g, &self.one()),
        );
        Self::is_zero_elem(&lhs)
    }

    /// Unit, trace normalization, squares of traceless elements scalar, and
    /// associativity.
    pub fn check_invariants(&self) -> Result<()> {
        let one = self.one();
        for k in 0..4 {
            let e = self.basis(k);
            if self.mul(&one, &e) != e || self.mul(&e, &one) != e {
                return Err(Error::InvalidAlgebra(format!("e0 is not a unit on e{k}")));
            }
        }
        if self.trace[0] != self.domain.from_i64(2) || (1..4).any(|k| !self.trace[k].is_zero()) {
            return Err(Error::InvalidAlgebra(
                "trace must be 2 on the unit and vanish on e1, e2, e3".into(),
            ));
        }
        let scalar = |a: &AlgElem| (1..4).all(|k| a[k].is_zero());
        for i in 1..4 {
            for j in i..4 {
                let x = self.add(&self.basis(i), &self.basis(j));
                if !scalar(&self.mul(&x, &x)) || !scalar(&self.mul(&self.basis(i), &self.basis(i)))
                {
                    return Err(Error::InvalidAlgebra(format!(
                        "traceless element e{i} + e{j} does not square to a scalar"
                    )));
                }
            }
        }
        if !self.is_associative() {
            return Err(Error::InvalidAlgebra(
                "multiplication is not associative".into(),
            ));
        }
        Ok(())
    }

    /// `P_ij = tr(e_i e_j) / 2` on the traceless part `e1, e2, e3`.
    pub fn trace_pairing(&self) -> Matrix<Scalar> {
        let half = self.half();
        Matrix::from_fn(3, 3, |i, j| {
            &self.trace(&self.mul(&self.basis(i + 1), &self.basis(j + 1))) * &half
        })
    }

    /// Which of the five quaternion algebras this is.
    pub fn classify(&self) -> Result<AlgebraType> {
        self.check_invariants()?;
        let pairing = self.trace_pairing();
        match pairing.rank() {
            2 | 3 => Ok(AlgebraType::CentralSimple),
            1 => self.classify_rank_one(&pairing),
            _ => {
                let any_product = (1..4).any(|i| {
                    (1..4).any(|j| !Self::is_zero_elem(&self.mul(&self.basis(i), &self.basis(j))))
                });
                Ok(if any_product {
                    AlgebraType::DoubleLineClifford
                } else {
                    AlgebraType::LocalCommutative
                })
            }
        }
    }

    fn classify_rank_one(&self, pairing: &Matrix<Scalar>) -> Result<AlgebraType> {
        // traceless x with x^2 = a != 0
        let coeffs: [Scalar; 3] = match (0..3).find(|&i| !pairing.get(i, i).is_zero()) {
            Some(i) => std::array::from_fn(|k| self.domain.from_i64((k == i) as i64)),
            None => {
                let (i, j) = (0..3)
                    .flat_map(|i| (0..3).map(move |j| (i, j)))
                    .find(|&(i, j)| !pairing.get(i, j).is_zero())
                    .expect("rank one pairing has a nonzero entry");
                std::array::from_fn(|k| self.domain.from_i64((k == i || k == j) as i64))
            }
        };
        let x: AlgElem = std::array::from_fn(|k| {
            if k == 0 {
                self.domain.zero()
            } else {
                coeffs[k - 1].clone()
            }
        });
        let a = self.mul(&x, &x)[0].clone();
        if a.is_zero() {
            return Err(Error::InvalidAlgebra(
                "chosen traceless element squares to zero".into(),
            ));
        }
        if !a.is_square() {
            return Ok(AlgebraType::DegenerateClifford);
        }
        // orthogonal complement V of x inside the traceless part
        let row = Matrix::from_fn(1, 3, |_, j| {
            (0..3).fold(self.domain.zero(), |acc, i| {
                &acc + &(&coeffs[i] * pairing.get(i, j))
            })
        });
        let complement: Vec<AlgElem> = row
            .kernel()
            .into_iter()
            .map(|v| {
                std::array::from_fn(|k| {
                    if k == 0 {
                        self.domain.zero()
                    } else {
                        v[k - 1].clone()
                    }
                })
            })
            .collect();
        // V is a single eigenspace for x exactly when left multiplication by x
        // acts on V as a scalar
        let mut eigenvalue: Option<Scalar> = None;
        for v in &complement {
            let xv = self.mul(&x, v);
            let pivot = (1..4).find(|&k| !v[k].is_zero()).unwrap();
            let lambda = xv[pivot].div(&v[pivot]);
            if xv != self.scale(&lambda, v) {
                return Ok(AlgebraType::DegenerateClifford);
            }
            match &eigenvalue {
                Some(l) if *l != lambda => return Ok(AlgebraType::DegenerateClifford),
                _ => eigenvalue = Some(lambda),
            }
        }
        Ok(AlgebraType::KroneckerQuiver)
    }
}

/// The five quaternion algebras over a field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum AlgebraType {
    /// `k<x,y>/(x^2 - a, y^2 - b, xy + yx)`, `a, b` nonzero.
    CentralSimple = 1,
    /// `k<x,y>/(x^2 - a, y^2, xy + yx)`, `a` nonzero.
    DegenerateClifford = 2,
    /// `k<x,y>/(x^2, y^2, xy + yx)`.
    DoubleLineClifford = 3,
    /// `k[x,y,z]/(x,y,z)^2`.
    LocalCommutative = 4,
    /// Path algebra of the Kronecker quiver.
    KroneckerQuiver = 5,
}

impl AlgebraType {
    pub fn tag(self) -> u8 {
        self as u8
    }

    pub fn is_even_clifford(self) -> bool {
        self != AlgebraType::KroneckerQuiver
    }

    /// The type of `Cl_0` of a form of the given rank.
    pub fn for_form_rank(rank: usize) -> AlgebraType {
        match rank {
            3 => AlgebraType::CentralSimple,
            2 => AlgebraType::DegenerateClifford,
            1 => AlgebraType::DoubleLineClifford,
            0 => AlgebraType::LocalCommutative,
            r => panic!("form rank {r}"),
        }
    }
}

/// Normal-form expressions of the even basis `1, X, Y, Z`.
fn even_basis(q: &Matrix<Scalar>) -> [CliffordElement; 4] {
    let domain = q.get(0, 0).domain();
    let elem = |terms: &[(&[u8], Scalar)]| {
        let mut e = CliffordElement::zero(domain);
        for (w, c) in terms {
            e.add_term(w.to_vec(), c.clone());
        }
        e
    };
    let one = domain.one();
    [
        elem(&[(&[], one.clone())]),
        // yz - q23
        elem(&[(&[1, 2], one.clone()), (&[], -q.get(1, 2))]),
        // zx - q13 = q13 - xz
        elem(&[(&[0, 2], -&one), (&[], q.get(0, 2).clone())]),
        // xy - q12
        elem(&[(&[0, 1], one), (&[], -q.get(0, 1))]),
    ]
}

/// Coordinates of an even normal-form element in the basis `1, X, Y, Z`.
fn even_coordinates(e: &CliffordElement, q: &Matrix<Scalar>) -> AlgElem {
    let c0 = e.coefficient(&[]);
    let yz = e.coefficient(&[1, 2]);
    let xz = e.coefficient(&[0, 2]);
    let xy = e.coefficient(&[0, 1]);
    assert!(
        e.terms().all(|(w, _)| w.len() % 2 == 0),
        "odd word in an even product"
    );
    let scalar = &(&(&c0 + &(&yz * q.get(1, 2))) + &(&xz * q.get(0, 2))) + &(&xy * q.get(0, 1));
    [scalar, yz, -xz, xy]
}

/// The even Clifford algebra of a scalar symmetric 3x3 form.
pub fn fiber_algebra(q: &Matrix<Scalar>) -> FiberAlgebra {
    let domain = q.get(0, 0).domain();
    let basis = even_basis(q);
    let structure = (0..4)
        .map(|i| {
            (0..4)
                .map(|j| even_coordinates(&multiply(&basis[i], &basis[j], q), q))
                .collect()
        })
        .collect();
    let mut trace: AlgElem = std::array::from_fn(|_| domain.zero());
    trace[0] = domain.from_i64(2);
    FiberAlgebra::from_structure(domain, structure, trace)
}

/// Trace pairing of the fiber algebra, which equals `-Adj q`.
pub fn trace_pairing_fiber(alg: &FiberAlgebra) -> Matrix<Scalar> {
    alg.trace_pairing()
}

/// Trace pairing over the whole base: `-Adj Q`.
pub fn trace_pairing_global(q: &QForm) -> PolyMatrix {
    adjugate3(q.entries())
        .expect("degree pattern makes the adjugate homogeneous")
        .neg()
}

/// Recover the form (up to a global sign) from its trace pairing `P`, as
/// `Adj P / sqrt(-det P)`.
pub fn recover_form(pairing: &PolyMatrix) -> Result<PolyMatrix> {
    if pairing.rows() != 3 || pairing.cols() != 3 || !pairing.is_symmetric() {
        return Err(Error::NotRecoverable(
            "pairing must be symmetric 3x3".into(),
        ));
    }
    let det = det3(pairing).map_err(|e| Error::NotRecoverable(e.to_string()))?;
    if det.is_zero() {
        return Err(Error::NotRecoverable("pairing is degenerate".into()));
    }
    let minus_det = crate::exactpoly::HomogPoly::new(-det.poly()).unwrap();
    let root = poly_sqrt(&minus_det)
        .map_err(|_| Error::NotRecoverable("-det P is not a perfect square".into()))?;
    let adj = adjugate3(pairing).map_err(|e| Error::NotRecoverable(e.to_string()))?;
    let mut out = adj.clone();
    for i in 0..3 {
        for j in 0..3 {
            let e = adj
                .get(i, j)
                .divide_exact(root.poly())
                .map_err(|e| Error::NotRecoverable(format!("entry ({}, {}): {e}", i + 1, j + 1)))?;
            out.set(i, j, e);
        }
    }
    Ok(out)
}

pub fn classify(alg: &FiberAlgebra) -> Result<AlgebraType> {
    alg.classify()
}

pub fn cayley_hamilton_check(alg: &FiberAlgebra, a: &AlgElem) -> bool {
    alg.cayley_hamilton_check(a)
}

/// Whether the point lies in the Azumaya locus, i.e. off the discriminant.
pub fn azumaya_at(q: &QForm, p: &FiberPoint) -> bool {
    q.azumaya_at(p)
}

/// Degrees `2(a_i + a_j + d)` of the module generators `x1x2, x2x3, x3x1` of
/// the graded algebra of sections, where `u, v, w` have degree 2.
pub fn gamma_generator_degrees(q: &QForm) -> [i64; 4] {
    let [a1, a2, a3] = q.a();
    let d = q.d();
    [0, 2 * (a1 + a2 + d), 2 * (a2 + a3 + d), 2 * (a3 + a1 + d)]
}

/// `(1 + t^g12 + t^g23 + t^g31) / (1 - t^2)^3`.
pub fn gamma_hilbert_series(q: &QForm) -> Result<RationalSeries> {
    let degrees = gamma_generator_degrees(q);
    if let Some(&g) = degrees.iter().find(|&&g| g < 0) {
        return Err(Error::NonExpandable(format!(
            "module generator of negative degree {g}"
        )));
    }
    let top = *degrees.iter().max().unwrap() as usize;
    let mut numerator = vec![num_bigint::BigInt::from(0); top + 1];
    for g in degrees {
        numerator[g as usize] += 1;
    }
    RationalSeries::new(numerator, RationalSeries::geometric_power(2, 3))
}

/// Number of elements `u^i v^j w^k * g` of degree `n`, over the module
/// generators `g` in `1, x1x2, x2x3, x3x1`, counted by enumeration.
pub fn gamma_dimension_bruteforce(q: &QForm, n: i64) -> Result<u64> {
    if n % 2 != 0 {
        return Err(Error::OddDegree(n));
    }
    let mut count = 0;
    for g in gamma_generator_degrees(q) {
        let rest = n - g;
        if rest < 0 {
            continue;
        }
        for i in 0..=rest / 2 {
            for j in 0..=rest / 2 {
                for k in 0..=rest / 2 {
                    if 2 * (i + j + k) == rest {
                        count += 1;
                    }
                }
            }
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(domain: Domain, v: [i64; 6]) -> Matrix<Scalar> {
        let [a, d, e, b, f, c] = v.map(|x| domain.from_i64(x));
        Matrix::from_rows(vec![
            vec![a, d.clone(), e.clone()],
            vec![d, b, f.clone()],
            vec![e, f, c],
        ])
    }

    #[test]
    fn single_rewrites() {
        let q = Domain::Rational;
        let m = sym(q, [2, 3, 5, 7, 11, 13]);
        let yx = reduce_word(&[CliffordWord::parse(q.one(), "yx").unwrap()], &m);
        assert_eq!(yx.coefficient(&[]), q.from_i64(6));
        assert_eq!(yx.coefficient(&[0, 1]), q.from_i64(-1));
        let xx = reduce_word(&[CliffordWord::parse(q.one(), "xx").unwrap()], &m);
        assert_eq!(xx.coefficient(&[]), q.from_i64(2));
        assert_eq!(xx.terms().count(), 1);
    }

    #[test]
    fn xyxy() {
        // a = 2, b = 7, d = 3: xyxy = -ab + 2d xy
        let q = Domain::Rational;
        let m = sym(q, [2, 3, 5, 7, 11, 13]);
        let e = reduce_word(&[CliffordWord::parse(q.one(), "xyxy").unwrap()], &m);
        assert_eq!(e.coefficient(&[]), q.from_i64(-14));
        assert_eq!(e.coefficient(&[0, 1]), q.from_i64(6));
        assert_eq!(e.terms().count(), 2);
    }

    #[test]
    fn zbar_squared() {
        let q = Domain::Rational;
        let m = sym(q, [2, 3, 5, 7, 11, 13]);
        let alg = fiber_algebra(&m);
        let z = alg.basis(3);
        let zz = alg.mul(&z, &z);
        assert_eq!(zz, [q.from_i64(9 - 14), q.zero(), q.zero(), q.zero()]);
    }

    #[test]
    fn pairing_entries() {
        let q = Domain::Rational;
        // (a, d, e, b, f, c) = (q11, q12, q13, q22, q23, q33)
        let m = sym(q, [2, 3, 5, 7, 11, 13]);
        let p = fiber_algebra(&m).trace_pairing();
        assert_eq!(*p.get(2, 2), q.from_i64(3 * 3 - 2 * 7));
        assert_eq!(*p.get(1, 2), q.from_i64(2 * 11 - 5 * 3));
        assert_eq!(p, m.adjugate().neg());
        let id = sym(q, [1, 0, 0, 1, 0, 1]);
        assert_eq!(fiber_algebra(&id).trace_pairing(), id.neg());
    }

    #[test]
    fn classification_by_rank() {
        let f5 = Domain::prime(5).unwrap();
        let cases = [
            ([1, 0, 0, 1, 0, 1], AlgebraType::CentralSimple),
            ([1, 0, 0, 1, 0, 0], AlgebraType::DegenerateClifford),
            ([1, 0, 0, 0, 0, 0], AlgebraType::DoubleLineClifford),
            ([0, 0, 0, 0, 0, 0], AlgebraType::LocalCommutative),
        ];
        for (v, expected) in cases {
            let alg = fiber_algebra(&sym(f5, v));
            assert_eq!(alg.classify().unwrap(), expected, "{v:?}");
        }
        // over Q, x^2 = -1 is not a square
        let alg = fiber_algebra(&sym(Domain::Rational, [1, 0, 0, 1, 0, 0]));
        assert_eq!(alg.classify().unwrap(), AlgebraType::DegenerateClifford);
    }

    #[test]
    fn kronecker_quiver() {
        for domain in [Domain::Rational, Domain::prime(5).unwrap()] {
            let k = FiberAlgebra::kronecker(domain);
            k.check_invariants().unwrap();
            assert_eq!(k.classify().unwrap(), AlgebraType::KroneckerQuiver);
            assert!(!AlgebraType::KroneckerQuiver.is_even_clifford());
        }
    }

    #[test]
    fn zero_form_is_commutative_local() {
        let q = Domain::Rational;
        let alg = fiber_algebra(&sym(q, [0; 6]));
        for i in 1..4 {
            for j in 1..4 {
                assert_eq!(alg.mul(&alg.basis(i), &alg.basis(j)), alg.zero());
            }
        }
    }

    #[test]
    fn corrupted_algebra_fails_cayley_hamilton() {
        let q = Domain::Rational;
        let alg = fiber_algebra(&sym(q, [1, 0, 0, 2, 0, 3]));
        let mut s = alg.structure().to_vec();
        s[1][1][2] = q.one();
        let bad = FiberAlgebra::from_structure(q, s, alg.trace_functional().clone());
        assert!(!bad.cayley_hamilton_check(&bad.basis(1)));
        assert!(matches!(bad.classify(), Err(Error::InvalidAlgebra(_))));
        assert!(alg.cayley_hamilton_check(&alg.one()));
    }
}
