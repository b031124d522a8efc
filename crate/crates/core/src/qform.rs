//! Quadratic forms on `V = O(-a_1) + O(-a_2) + O(-a_3)` with values in `O(d)`
//! over the projective plane, stored as symmetric matrices of forms in `u, v, w`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactpoly::{det3, parse_scalar, Domain, HomogPoly, Matrix, Poly, PolyMatrix, Scalar};

/// Number of base variables `u, v, w`.
pub const BASE_VARS: usize = 3;
pub const BASE_NAMES: [&str; 3] = ["u", "v", "w"];

/// A validated quadratic form. Entry `(i, j)` is zero or homogeneous of degree
/// `a_i + a_j + d`.
#[derive(Clone, Debug, PartialEq)]
pub struct QForm {
    a: [i64; 3],
    d: i64,
    entries: PolyMatrix,
}

impl QForm {
    pub fn new(a: [i64; 3], d: i64, entries: PolyMatrix) -> Result<QForm> {
        if entries.rows() != 3 || entries.cols() != 3 {
            return Err(Error::DimensionMismatch(format!(
                "form matrix must be 3x3, got {}x{}",
                entries.rows(),
                entries.cols()
            )));
        }
        if let Some(e) = entries.entries().find(|e| e.nvars() != BASE_VARS) {
            return Err(Error::DimensionMismatch(format!(
                "entries must be polynomials in u, v, w; found {} variables",
                e.nvars()
            )));
        }
        if let Some((i, j)) = entries.first_asymmetry() {
            return Err(Error::AsymmetricEntries(i + 1, j + 1));
        }
        for i in 0..3 {
            for j in 0..3 {
                let expected = a[i] + a[j] + d;
                let p = entries.get(i, j);
                let found = match p.homogeneous_degree() {
                    Ok(None) => continue,
                    Ok(Some(deg)) => deg,
                    Err(_) => p.total_degree().unwrap_or(0),
                };
                if p.homogeneous_degree().is_err() || found as i64 != expected {
                    return Err(Error::DegreePatternViolation {
                        row: i + 1,
                        col: j + 1,
                        expected,
                        found,
                    });
                }
            }
        }
        Ok(QForm { a, d, entries })
    }

    pub fn a(&self) -> [i64; 3] {
        self.a
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn entries(&self) -> &PolyMatrix {
        &self.entries
    }

    pub fn domain(&self) -> Domain {
        self.entries.get(0, 0).domain()
    }

    /// Expected degree of entry `(i, j)` (0-based).
    pub fn entry_degree(&self, i: usize, j: usize) -> i64 {
        self.a[i] + self.a[j] + self.d
    }

    /// `2(a_1 + a_2 + a_3) + 3d`, the degree of a nonzero discriminant.
    pub fn discriminant_degree(&self) -> i64 {
        2 * self.a.iter().sum::<i64>() + 3 * self.d
    }

    /// Tensor with `O(m)` on the bundle side: `a_i -> a_i + m`, `d -> d - 2m`.
    pub fn twist(&self, m: i64) -> QForm {
        QForm {
            a: self.a.map(|x| x + m),
            d: self.d - 2 * m,
            entries: self.entries.clone(),
        }
    }

    /// The twist with `d = -(a_1 + a_2 + a_3)`, i.e. values in `det V`.
    pub fn normalize(&self) -> QForm {
        self.twist(-(self.d + self.a.iter().sum::<i64>()))
    }

    pub fn is_normalized(&self) -> bool {
        self.d == -self.a.iter().sum::<i64>()
    }

    /// `det` of the form matrix; zero for a degenerate form.
    pub fn discriminant(&self) -> HomogPoly {
        det3(&self.entries).expect("degree pattern makes the determinant homogeneous")
    }

    /// The scalar form at a point of the base.
    pub fn at(&self, p: &FiberPoint) -> Matrix<Scalar> {
        assert_eq!(
            p.domain(),
            self.domain(),
            "point and form over different fields"
        );
        self.entries.eval(p.coords())
    }

    pub fn rank_at(&self, p: &FiberPoint) -> usize {
        self.at(p).rank()
    }

    pub fn fiber_conic_type(&self, p: &FiberPoint) -> FiberConicType {
        FiberConicType::from_rank(self.rank_at(p))
    }

    pub fn azumaya_at(&self, p: &FiberPoint) -> bool {
        !self.discriminant().poly().eval(p.coords()).is_zero()
    }

    /// Whether the form vanishes identically at no point of the base.
    ///
    /// Over `F_p` every point of `P^2(F_p)` is checked. Over the rationals only
    /// points with coordinates in `-height..=height` are sampled, so the answer
    /// is either a witness or `Inconclusive`.
    pub fn nowhere_zero(&self, height: i64) -> NowhereZero {
        let vanishes = |p: &FiberPoint| self.rank_at(p) == 0;
        match self.domain() {
            Domain::Prime(_) => match projective_points(self.domain()).find(vanishes) {
                Some(w) => NowhereZero::VanishesAt(w),
                None => NowhereZero::Holds,
            },
            Domain::Rational => {
                let mut sampled = 0;
                for p in small_height_points(height) {
                    sampled += 1;
                    if vanishes(&p) {
                        return NowhereZero::VanishesAt(p);
                    }
                }
                NowhereZero::Inconclusive { sampled }
            }
        }
    }
}

impl fmt::Display for QForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "a = {:?}, d = {} over {}", self.a, self.d, self.domain())?;
        write!(f, "{}", self.entries)
    }
}

/// Outcome of the nowhere-zero check.
#[derive(Clone, Debug, PartialEq)]
pub enum NowhereZero {
    Holds,
    VanishesAt(FiberPoint),
    Inconclusive { sampled: usize },
}

/// Type of the conic in a fiber, determined by the rank of the form there.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FiberConicType {
    SmoothConic,
    LinePair,
    DoubleLine,
    WholePlane,
}

impl FiberConicType {
    pub const ALL: [FiberConicType; 4] = [
        FiberConicType::SmoothConic,
        FiberConicType::LinePair,
        FiberConicType::DoubleLine,
        FiberConicType::WholePlane,
    ];

    pub fn from_rank(rank: usize) -> FiberConicType {
        match rank {
            3 => FiberConicType::SmoothConic,
            2 => FiberConicType::LinePair,
            1 => FiberConicType::DoubleLine,
            0 => FiberConicType::WholePlane,
            r => panic!("rank {r} of a 3x3 matrix"),
        }
    }

    pub fn rank(self) -> usize {
        match self {
            FiberConicType::SmoothConic => 3,
            FiberConicType::LinePair => 2,
            FiberConicType::DoubleLine => 1,
            FiberConicType::WholePlane => 0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FiberConicType::SmoothConic => "SmoothConic",
            FiberConicType::LinePair => "LinePair",
            FiberConicType::DoubleLine => "DoubleLine",
            FiberConicType::WholePlane => "WholePlane",
        }
    }
}

/// A point of the projective plane, scaled so its last nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiberPoint {
    coords: [Scalar; 3],
}

impl FiberPoint {
    pub fn new(coords: [Scalar; 3]) -> Result<FiberPoint> {
        let domain = coords[0].domain();
        if coords.iter().any(|c| c.domain() != domain) {
            return Err(Error::InvalidPoint(
                "coordinates over different fields".into(),
            ));
        }
        let Some(last) = coords.iter().rposition(|c| !c.is_zero()) else {
            return Err(Error::InvalidPoint("all coordinates are zero".into()));
        };
        let inv = coords[last].inv().unwrap();
        Ok(FiberPoint {
            coords: coords.map(|c| &c * &inv),
        })
    }

    pub fn from_i64(domain: Domain, coords: [i64; 3]) -> Result<FiberPoint> {
        FiberPoint::new(coords.map(|c| domain.from_i64(c)))
    }

    /// Parse `x:y:z` with integer or fractional coordinates.
    pub fn parse(text: &str, domain: Domain) -> Result<FiberPoint> {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::InvalidPoint(format!("expected x:y:z, got `{text}`")));
        }
        let mut coords = Vec::with_capacity(3);
        for part in parts {
            let c = parse_scalar(part, domain)
                .map_err(|_| Error::InvalidPoint(format!("bad coordinate `{part}`")))?;
            coords.push(c);
        }
        let coords: [Scalar; 3] = coords.try_into().unwrap();
        FiberPoint::new(coords)
    }

    pub fn coords(&self) -> &[Scalar; 3] {
        &self.coords
    }

    pub fn domain(&self) -> Domain {
        self.coords[0].domain()
    }
}

impl fmt::Display for FiberPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}:{}",
            self.coords[0], self.coords[1], self.coords[2]
        )
    }
}

/// Every point of `P^2(F_p)`: first `(x:y:1)`, then `(x:1:0)`, then `(1:0:0)`.
///
/// Panics over the rationals.
pub fn projective_points(domain: Domain) -> impl Iterator<Item = FiberPoint> {
    let Domain::Prime(p) = domain else {
        panic!("projective_points needs a prime field");
    };
    let el = move |v: u64| Scalar::Mod {
        value: v,
        modulus: p,
    };
    let affine = (0..p).flat_map(move |y| (0..p).map(move |x| [el(x), el(y), el(1)]));
    let line = (0..p).map(move |x| [el(x), el(1), el(0)]);
    let last = std::iter::once([el(1), el(0), el(0)]);
    affine
        .chain(line)
        .chain(last)
        .map(|c| FiberPoint { coords: c })
}

/// Rational points with integer coordinates of absolute value at most `height`,
/// each projective point once.
fn small_height_points(height: i64) -> impl Iterator<Item = FiberPoint> {
    let range = move || -height..=height;
    range()
        .flat_map(move |x| range().flat_map(move |y| range().map(move |z| [x, y, z])))
        .filter(|c| {
            // representatives with positive last nonzero coordinate and gcd 1
            let last = c.iter().rev().find(|&&v| v != 0);
            matches!(last, Some(&l) if l > 0)
                && num_integer::Integer::gcd(&num_integer::Integer::gcd(&c[0], &c[1]), &c[2]) == 1
        })
        .map(|c| FiberPoint::from_i64(Domain::Rational, c).unwrap())
}

/// Local type of a plane curve `f = 0` at a point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SingularityType {
    NotOnCurve,
    SmoothPoint,
    Node,
    WorseSingularity,
}

/// Classify the point `p` of the curve `f = 0`. Nodes are detected in the
/// affine chart where the last nonzero coordinate of `p` equals 1.
pub fn singularity_type_at(f: &HomogPoly, p: &FiberPoint) -> Result<SingularityType> {
    let f = f.poly();
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let x = p.coords();
    if !f.eval(x).is_zero() {
        return Ok(SingularityType::NotOnCurve);
    }
    let grad: Vec<Poly> = (0..3).map(|i| f.partial(i)).collect();
    if grad.iter().any(|g| !g.eval(x).is_zero()) {
        return Ok(SingularityType::SmoothPoint);
    }
    let chart = x.iter().rposition(|c| !c.is_zero()).unwrap();
    let affine: Vec<usize> = (0..3).filter(|&i| i != chart).collect();
    let h = |i: usize, j: usize| grad[i].partial(j).eval(x);
    let hessian = Matrix::from_rows(vec![
        vec![h(affine[0], affine[0]), h(affine[0], affine[1])],
        vec![h(affine[1], affine[0]), h(affine[1], affine[1])],
    ]);
    Ok(if hessian.rank() == 2 {
        SingularityType::Node
    } else {
        SingularityType::WorseSingularity
    })
}
