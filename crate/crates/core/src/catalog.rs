//! The minimal del Pezzo types `F²₃, F²₄, F²₅⁺, F²₅⁻`: degree patterns,
//! seeded constructors, resolutions, and the projection of a net of quadrics
//! that produces `F²₅⁺` fiberwise.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactpoly::{Domain, HomogPoly, Matrix, Poly, PolyMatrix, Scalar};
use crate::invariants::{BundleDescriptor, Summand};
use crate::qform::{FiberPoint, QForm, BASE_VARS};

/// Attempts made to find a form with nonzero discriminant.
pub const MAX_RETRIES: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DelPezzoTag {
    F23,
    F24,
    #[serde(rename = "F25plus")]
    F25Plus,
    #[serde(rename = "F25minus")]
    F25Minus,
}

impl DelPezzoTag {
    pub const ALL: [DelPezzoTag; 4] = [
        DelPezzoTag::F23,
        DelPezzoTag::F24,
        DelPezzoTag::F25Plus,
        DelPezzoTag::F25Minus,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DelPezzoTag::F23 => "F23",
            DelPezzoTag::F24 => "F24",
            DelPezzoTag::F25Plus => "F25plus",
            DelPezzoTag::F25Minus => "F25minus",
        }
    }

    /// `(a, d)`, or `None` for the type built from a net of quadrics.
    pub fn pattern(self) -> Option<([i64; 3], i64)> {
        match self {
            DelPezzoTag::F23 => Some(([0, 0, 0], 1)),
            DelPezzoTag::F24 => Some(([0, 1, 1], 0)),
            DelPezzoTag::F25Minus => Some(([0, 0, 1], 1)),
            DelPezzoTag::F25Plus => None,
        }
    }

    pub fn discriminant_degree(self) -> i64 {
        match self {
            DelPezzoTag::F23 => 3,
            DelPezzoTag::F24 => 4,
            DelPezzoTag::F25Plus | DelPezzoTag::F25Minus => 5,
        }
    }

    pub fn vstar(self) -> BundleDescriptor {
        match self {
            DelPezzoTag::F23 => BundleDescriptor::lines(&[-1, -1, -1]),
            DelPezzoTag::F24 => BundleDescriptor::lines(&[-2, -1, -1]),
            DelPezzoTag::F25Plus => {
                BundleDescriptor::new(vec![Summand::CotangentTwist(0), Summand::LineBundle(-2)])
            }
            DelPezzoTag::F25Minus => BundleDescriptor::lines(&[-2, -2, -1]),
        }
    }

    pub fn h12(self) -> i64 {
        match self {
            DelPezzoTag::F23 => 0,
            DelPezzoTag::F24 => 2,
            DelPezzoTag::F25Plus | DelPezzoTag::F25Minus => 5,
        }
    }

    pub fn bs_description(self) -> &'static str {
        match self {
            DelPezzoTag::F23 => "X_{1,2} in P^2 x P^2",
            DelPezzoTag::F24 => "double cover of P^1 x P^2 ramified on V_{2,2}",
            DelPezzoTag::F25Plus => "Bl_C P^3, deg C = 7, g(C) = 5",
            DelPezzoTag::F25Minus => "Bl_line V_3 with V_3 in P^4",
        }
    }

    /// Symmetric resolution `0 -> source -> target -> L -> 0` of the
    /// cokernel `L`, after adjusting so the target is `V*`.
    pub fn resolution(self) -> Resolution {
        use Summand::*;
        let lines = BundleDescriptor::lines;
        let (source, target, unadjusted) = match self {
            DelPezzoTag::F23 => (lines(&[-2, -2, -2]), lines(&[-1, -1, -1]), None),
            DelPezzoTag::F24 => (
                lines(&[-2, -3, -3]),
                lines(&[-2, -1, -1]),
                Some((lines(&[-3, -3]), lines(&[-1, -1]))),
            ),
            DelPezzoTag::F25Plus => (
                BundleDescriptor::new(vec![CotangentTwist(-2), LineBundle(-3)]),
                BundleDescriptor::new(vec![CotangentTwist(0), LineBundle(-2)]),
                Some((lines(&[-3; 5]), lines(&[-2; 5]))),
            ),
            DelPezzoTag::F25Minus => (lines(&[-4, -3, -3]), lines(&[-2, -2, -1]), None),
        };
        let show =
            |s: &BundleDescriptor, t: &BundleDescriptor| format!("0 -> {s} -> {t} -> L -> 0");
        Resolution {
            text: show(&source, &target),
            unadjusted_text: unadjusted.as_ref().map(|(s, t)| show(s, t)),
            source,
            target,
        }
    }

    pub fn info(self) -> DelPezzoType {
        DelPezzoType {
            tag: self,
            degree_pattern: self.pattern().map(|(a, d)| DegreePattern { a, d }),
            resolution: self.resolution(),
            vstar: self.vstar(),
            bs_description: self.bs_description().to_string(),
        }
    }
}

impl fmt::Display for DelPezzoTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DelPezzoTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        DelPezzoTag::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::UnknownTag(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DegreePattern {
    pub a: [i64; 3],
    pub d: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Resolution {
    pub source: BundleDescriptor,
    pub target: BundleDescriptor,
    pub text: String,
    /// The resolution before summands were added to reach `V*`, if different.
    pub unadjusted_text: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DelPezzoType {
    pub tag: DelPezzoTag,
    /// `None` for the projected type.
    pub degree_pattern: Option<DegreePattern>,
    pub resolution: Resolution,
    pub vstar: BundleDescriptor,
    pub bs_description: String,
}

pub fn resolution_metadata(tag: &str) -> Result<Resolution> {
    Ok(tag.parse::<DelPezzoTag>()?.resolution())
}

/// Exponent vectors of all monomials of degree `n` in `u, v, w`, leading first.
pub fn monomials(n: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for i in (0..=n).rev() {
        for j in (0..=n - i).rev() {
            out.push(vec![i, j, n - i - j]);
        }
    }
    out
}

/// A uniformly random element of `F_p`, or an integer in `[-9, 9]` over `Q`.
pub fn random_scalar<R: Rng>(domain: Domain, rng: &mut R) -> Scalar {
    match domain {
        Domain::Prime(p) => domain.from_i64(rng.gen_range(0..p as i64)),
        Domain::Rational => domain.from_i64(rng.gen_range(-9..=9)),
    }
}

/// A homogeneous polynomial of degree `n` with random coefficients on every
/// monomial; zero when `n` is negative.
pub fn random_poly<R: Rng>(n: i64, domain: Domain, rng: &mut R) -> Poly {
    if n < 0 {
        return Poly::zero(domain, BASE_VARS);
    }
    let terms: Vec<_> = monomials(n as u32)
        .into_iter()
        .map(|m| (m, random_scalar(domain, rng)))
        .collect();
    Poly::from_terms(domain, BASE_VARS, terms)
}

/// A form with the given pattern and random entries; the discriminant may vanish.
pub fn random_form<R: Rng>(a: [i64; 3], d: i64, domain: Domain, rng: &mut R) -> QForm {
    let mut m = Matrix::from_fn(3, 3, |_, _| Poly::zero(domain, BASE_VARS));
    for i in 0..3 {
        for j in i..3 {
            let p = random_poly(a[i] + a[j] + d, domain, rng);
            m.set(i, j, p.clone());
            m.set(j, i, p);
        }
    }
    QForm::new(a, d, m).expect("random entries follow the pattern")
}

/// Random form with nonzero discriminant, retrying up to [`MAX_RETRIES`] times.
pub fn random_nondegenerate_form<R: Rng>(
    a: [i64; 3],
    d: i64,
    domain: Domain,
    rng: &mut R,
) -> Result<QForm> {
    for _ in 0..MAX_RETRIES {
        let q = random_form(a, d, domain, rng);
        if !q.discriminant().is_zero() {
            return Ok(q);
        }
    }
    Err(Error::DegenerateAfterRetries(MAX_RETRIES))
}

/// Where the entries of a catalog form come from.
#[derive(Clone, Debug)]
pub enum FormSource {
    Entries(PolyMatrix),
    Seed { seed: u64, domain: Domain },
}

/// A form of one of the three line-bundle types.
pub fn make_type(tag: DelPezzoTag, source: FormSource) -> Result<QForm> {
    let (a, d) = tag.pattern().ok_or_else(|| {
        Error::UnknownTag(format!(
            "{tag} has no degree pattern; build it from a quadric net"
        ))
    })?;
    match source {
        FormSource::Entries(m) => QForm::new(a, d, m),
        FormSource::Seed { seed, domain } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            random_nondegenerate_form(a, d, domain, &mut rng)
        }
    }
}

/// A net of quadrics in `P⁴` over the plane: a symmetric 5x5 matrix of linear
/// forms in `u, v, w` with `A55 = 0` and last row `(u, v, w, 0, 0)`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadricNet {
    entries: PolyMatrix,
}

impl QuadricNet {
    pub fn new(entries: PolyMatrix) -> Result<QuadricNet> {
        if entries.rows() != 5 || entries.cols() != 5 {
            return Err(Error::InvalidNet(format!(
                "expected a 5x5 matrix, got {}x{}",
                entries.rows(),
                entries.cols()
            )));
        }
        if let Some((i, j)) = entries.first_asymmetry() {
            return Err(Error::AsymmetricEntries(i + 1, j + 1));
        }
        let domain = entries.get(0, 0).domain();
        for i in 0..5 {
            for j in 0..5 {
                let e = entries.get(i, j);
                if e.nvars() != BASE_VARS {
                    return Err(Error::InvalidNet(
                        "entries must be polynomials in u, v, w".into(),
                    ));
                }
                let linear = e.terms().all(|(m, _)| m.degree() == 1);
                if !linear {
                    return Err(Error::InvalidNet(format!(
                        "entry ({}, {}) is not a linear form",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        for j in 0..5 {
            let expected = if j < 3 {
                Poly::var(domain, BASE_VARS, j)
            } else {
                Poly::zero(domain, BASE_VARS)
            };
            if *entries.get(4, j) != expected {
                return Err(Error::InvalidNet(format!(
                    "row 5 must be (u, v, w, 0, 0); entry (5, {}) is {}",
                    j + 1,
                    entries.get(4, j)
                )));
            }
        }
        Ok(QuadricNet { entries })
    }

    /// Random upper-left 4x4 block of linear forms; last row normalized.
    pub fn random<R: Rng>(domain: Domain, rng: &mut R) -> QuadricNet {
        let mut m = Matrix::from_fn(5, 5, |_, _| Poly::zero(domain, BASE_VARS));
        for i in 0..4 {
            for j in i..4 {
                let p = random_poly(1, domain, rng);
                m.set(i, j, p.clone());
                m.set(j, i, p);
            }
        }
        for j in 0..3 {
            let x = Poly::var(domain, BASE_VARS, j);
            m.set(4, j, x.clone());
            m.set(j, 4, x);
        }
        QuadricNet::new(m).expect("constructed in normal position")
    }

    /// Seeded random net whose determinant does not vanish identically.
    pub fn seeded(seed: u64, domain: Domain) -> Result<QuadricNet> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..MAX_RETRIES {
            let net = QuadricNet::random(domain, &mut rng);
            if !net.det5().is_zero() {
                return Ok(net);
            }
        }
        Err(Error::DegenerateAfterRetries(MAX_RETRIES))
    }

    pub fn entries(&self) -> &PolyMatrix {
        &self.entries
    }

    pub fn domain(&self) -> Domain {
        self.entries.get(0, 0).domain()
    }

    /// The quintic `det A`.
    pub fn det5(&self) -> HomogPoly {
        HomogPoly::new(self.entries.det()).expect("determinant of linear forms is homogeneous")
    }

    pub fn at(&self, p: &FiberPoint) -> Matrix<Scalar> {
        self.entries.eval(p.coords())
    }
}

/// Fiberwise conic forms of the `F²₅⁺` conic bundle: the quadric `A(q)`
/// restricted to the tangent space `W = ker(pᵀA(q))` at `p = e5`, modulo `p`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectedConic {
    net: QuadricNet,
}

pub fn make_f25plus(net: QuadricNet) -> ProjectedConic {
    ProjectedConic { net }
}

impl ProjectedConic {
    pub fn net(&self) -> &QuadricNet {
        &self.net
    }

    /// Basis of `W / <p>`: the reduced-echelon kernel basis of `pᵀA(q)` with
    /// the vector `e5` removed.
    pub fn fiber_basis(&self, q: &FiberPoint) -> Result<Vec<Vec<Scalar>>> {
        let a = self.net.at(q);
        let row = Matrix::from_fn(1, 5, |_, j| a.get(4, j).clone());
        if row.entries().all(Scalar::is_zero) {
            return Err(Error::BasePointSingular(q.to_string()));
        }
        let domain = q.domain();
        let e5: Vec<Scalar> = (0..5).map(|k| domain.from_i64((k == 4) as i64)).collect();
        let basis: Vec<_> = row.kernel().into_iter().filter(|v| *v != e5).collect();
        debug_assert_eq!(basis.len(), 3);
        Ok(basis)
    }

    /// The induced 3x3 form `Bᵀ A(q) B`.
    pub fn fiber_form(&self, q: &FiberPoint) -> Result<Matrix<Scalar>> {
        let basis = self.fiber_basis(q)?;
        let a = self.net.at(q);
        let b = Matrix::from_fn(5, 3, |i, j| basis[j][i].clone());
        Ok(b.transpose().mul(&a).mul(&b))
    }
}
