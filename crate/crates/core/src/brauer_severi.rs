//! The Brauer–Severi matrix of a form and the conic equation it cuts out.
//!
//! For fiber coordinates `α = (α1, α2, α3)` the 4x4 matrix `M(α)` stacks the
//! kernels of `α, αX, αY, αZ`. Every 3x3 minor of `M` is a multiple of
//! `q(α) = Σ q_ij α_i α_j`, so `rank M(α) <= 2` exactly on the conic.
//!
//! Polynomials here live in `n` base variables followed by `α1, α2, α3`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactpoly::{minor, Domain, Matrix, Poly, PolyMatrix, Scalar};
use crate::qform::{projective_points, FiberPoint, QForm, BASE_NAMES};

/// A polynomial in base variables and the three fiber coordinates `α_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiPoly {
    poly: Poly,
    base_vars: usize,
}

impl BiPoly {
    pub fn new(poly: Poly, base_vars: usize) -> Self {
        assert_eq!(poly.nvars(), base_vars + 3);
        BiPoly { poly, base_vars }
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn base_vars(&self) -> usize {
        self.base_vars
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// Common degree in the `α_i`, if all terms share one.
    pub fn alpha_degree(&self) -> Option<u32> {
        self.common(|e| e[self.base_vars..].iter().sum::<u32>() as i64)
            .map(|d| d as u32)
    }

    /// Common weighted degree when `α_i` has weight `-a_i` and base variables
    /// weight one.
    pub fn weighted_degree(&self, a: [i64; 3]) -> Option<i64> {
        self.common(|e| {
            let base: i64 = e[..self.base_vars].iter().map(|&x| x as i64).sum();
            let fiber: i64 = (0..3).map(|i| a[i] * e[self.base_vars + i] as i64).sum();
            base - fiber
        })
    }

    fn common(&self, f: impl Fn(&[u32]) -> i64) -> Option<i64> {
        let mut degrees = self.poly.terms().map(|(m, _)| f(m.exponents()));
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    /// Evaluate the base variables, keeping a polynomial in the `α_i` only.
    pub fn at_base(&self, base: &[Scalar]) -> Poly {
        assert_eq!(base.len(), self.base_vars);
        let n = self.base_vars;
        let values: Vec<(usize, Scalar)> = base.iter().cloned().enumerate().collect();
        let rest = self.poly.partial_eval(&values);
        let positions: Vec<usize> = (0..n + 3).map(|i| i.saturating_sub(n)).collect();
        // base exponents are now zero, so folding them onto α1 is harmless
        rest.embed(3, &positions)
    }

    pub fn eval(&self, base: &[Scalar], alpha: &[Scalar; 3]) -> Scalar {
        let point: Vec<Scalar> = base.iter().chain(alpha.iter()).cloned().collect();
        self.poly.eval(&point)
    }

    pub fn to_string_with<S: AsRef<str>>(&self, base_names: &[S]) -> String {
        self.poly.to_string_with(&names(base_names))
    }
}

fn names<S: AsRef<str>>(base_names: &[S]) -> Vec<String> {
    base_names
        .iter()
        .map(|s| s.as_ref().to_string())
        .chain(["a1", "a2", "a3"].map(String::from))
        .collect()
}

/// The 4x4 matrix `M`.
#[derive(Clone, Debug, PartialEq)]
pub struct BSMatrix {
    entries: PolyMatrix,
    base_vars: usize,
}

impl BSMatrix {
    pub fn entries(&self) -> &PolyMatrix {
        &self.entries
    }

    pub fn base_vars(&self) -> usize {
        self.base_vars
    }

    /// 1-based entry.
    pub fn entry(&self, row: usize, col: usize) -> BiPoly {
        BiPoly::new(self.entries.get(row - 1, col - 1).clone(), self.base_vars)
    }

    /// First row and first column are `(0, α1, α2, α3)`.
    pub fn has_standard_border(&self) -> bool {
        let n = self.base_vars;
        let domain = self.entries.get(0, 0).domain();
        (0..4).all(|k| {
            let expected = if k == 0 {
                Poly::zero(domain, n + 3)
            } else {
                Poly::var(domain, n + 3, n + k - 1)
            };
            *self.entries.get(0, k) == expected && *self.entries.get(k, 0) == expected
        })
    }

    pub fn eval(&self, base: &[Scalar], alpha: &[Scalar; 3]) -> Matrix<Scalar> {
        let point: Vec<Scalar> = base.iter().chain(alpha.iter()).cloned().collect();
        self.entries.eval(&point)
    }
}

/// Lift the entries of a symmetric 3x3 matrix into the ring with the `α_i`
/// appended, returning `q_ij` and `α_i` as polynomials there.
fn lift(q: &PolyMatrix) -> (Matrix<Poly>, [Poly; 3], usize) {
    let n = q.get(0, 0).nvars();
    let positions: Vec<usize> = (0..n).collect();
    let lifted = q.map(|p| p.embed(n + 3, &positions));
    let domain = q.get(0, 0).domain();
    let alpha = std::array::from_fn(|i| Poly::var(domain, n + 3, n + i));
    (lifted, alpha, n)
}

/// `q(α) = Σ_ij q_ij α_i α_j` for any symmetric 3x3 polynomial matrix.
pub fn conic_equation_of(q: &PolyMatrix) -> BiPoly {
    assert!(q.rows() == 3 && q.cols() == 3);
    let (q, alpha, n) = lift(q);
    let mut out = Poly::zero(alpha[0].domain(), n + 3);
    for i in 0..3 {
        for j in 0..3 {
            out = &out + &(&(q.get(i, j) * &alpha[i]) * &alpha[j]);
        }
    }
    BiPoly::new(out, n)
}

pub fn conic_equation(q: &QForm) -> BiPoly {
    conic_equation_of(q.entries())
}

/// The matrix `M` for any symmetric 3x3 polynomial matrix.
pub fn bs_matrix_of(q: &PolyMatrix) -> BSMatrix {
    assert!(q.rows() == 3 && q.cols() == 3);
    let (q, [a1, a2, a3], n) = lift(q);
    let domain = a1.domain();
    let k = |c: i64| Poly::constant(domain.from_i64(c), n + 3);
    let zero = k(0);
    let q = |i: usize, j: usize| q.get(i - 1, j - 1).clone();
    let lin = |terms: &[(i64, Poly, &Poly)]| {
        terms.iter().fold(zero.clone(), |acc, (c, qij, a)| {
            &acc + &(&(&k(*c) * qij) * *a)
        })
    };
    let rows = vec![
        vec![zero.clone(), a1.clone(), a2.clone(), a3.clone()],
        vec![
            a1.clone(),
            lin(&[(2, q(2, 3), &a1)]),
            lin(&[(-1, q(3, 3), &a3)]),
            lin(&[(2, q(1, 2), &a1), (1, q(2, 2), &a2), (2, q(2, 3), &a3)]),
        ],
        vec![
            a2.clone(),
            lin(&[(2, q(1, 3), &a1), (2, q(2, 3), &a2), (1, q(3, 3), &a3)]),
            lin(&[(2, q(1, 3), &a2)]),
            lin(&[(-1, q(1, 1), &a1)]),
        ],
        vec![
            a3.clone(),
            lin(&[(-1, q(2, 2), &a2)]),
            lin(&[(1, q(1, 1), &a1), (2, q(1, 2), &a2), (2, q(1, 3), &a3)]),
            lin(&[(2, q(1, 2), &a3)]),
        ],
    ];
    BSMatrix {
        entries: Matrix::from_rows(rows),
        base_vars: n,
    }
}

pub fn bs_matrix(q: &QForm) -> BSMatrix {
    bs_matrix_of(q.entries())
}

/// The form whose six upper-triangle entries are independent symbols
/// `q11, q12, q13, q22, q23, q33` (variables 0..6, degree one each).
pub fn universal_entries(domain: Domain) -> PolyMatrix {
    let var = |k| Poly::var(domain, 6, k);
    let idx = [[0, 1, 2], [1, 3, 4], [2, 4, 5]];
    Matrix::from_fn(3, 3, |i, j| var(idx[i][j]))
}

pub const UNIVERSAL_NAMES: [&str; 6] = ["q11", "q12", "q13", "q22", "q23", "q33"];

/// The three minors singled out in the literature with their claimed values
/// `(row, col, sign, α index)`: minor = sign · α_k · q.
pub const CLAIMED_MINORS: [(usize, usize, i64, usize); 3] =
    [(4, 3, 1, 1), (3, 2, -1, 2), (2, 4, 1, 3)];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinorQuotient {
    pub row: usize,
    pub col: usize,
    /// `minor(row, col) / q(α)`.
    pub quotient: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimedMinor {
    pub row: usize,
    pub col: usize,
    pub claimed: String,
    pub found: String,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinorReport {
    pub conic: String,
    /// All sixteen quotients, row-major; reaching here means each minor divided.
    pub quotients: Vec<MinorQuotient>,
    pub all_divisible: bool,
    pub claimed: Vec<ClaimedMinor>,
    pub claimed_all_match: bool,
}

/// `minor(row, col) / q` for one 1-based position.
pub fn minor_quotient(m: &BSMatrix, conic: &BiPoly, row: usize, col: usize) -> Result<Poly> {
    let det = minor(m.entries(), row, col)?;
    if conic.is_zero() {
        return if det.is_zero() {
            Ok(det)
        } else {
            Err(Error::MinorNotDivisible { row, col })
        };
    }
    det.divide_exact(conic.poly())
        .map_err(|_| Error::MinorNotDivisible { row, col })
}

/// Build the report from quotients computed elsewhere (row-major, 16 entries).
pub fn assemble_report<S: AsRef<str>>(
    conic: &BiPoly,
    quotients: &[Poly],
    base_names: &[S],
) -> MinorReport {
    assert_eq!(quotients.len(), 16);
    let names = names(base_names);
    let show = |p: &Poly| p.to_string_with(&names);
    let n = conic.base_vars();
    let domain = conic.poly().domain();
    let claimed = CLAIMED_MINORS
        .iter()
        .map(|&(row, col, sign, k)| {
            let expected = Poly::var(domain, n + 3, n + k - 1).scale(&domain.from_i64(sign));
            let found = &quotients[(row - 1) * 4 + (col - 1)];
            let label = |s: i64| if s < 0 { "-" } else { "" };
            ClaimedMinor {
                row,
                col,
                claimed: format!("{}a{k}*q", label(sign)),
                found: show(found),
                matches: *found == expected,
            }
        })
        .collect::<Vec<_>>();
    MinorReport {
        conic: show(conic.poly()),
        quotients: quotients
            .iter()
            .enumerate()
            .map(|(k, p)| MinorQuotient {
                row: k / 4 + 1,
                col: k % 4 + 1,
                quotient: show(p),
            })
            .collect(),
        all_divisible: true,
        claimed_all_match: claimed.iter().all(|c| c.matches),
        claimed,
    }
}

/// Divide all sixteen 3x3 minors of `M` by `q(α)`.
pub fn verify_minors_of<S: AsRef<str>>(q: &PolyMatrix, base_names: &[S]) -> Result<MinorReport> {
    let m = bs_matrix_of(q);
    let conic = conic_equation_of(q);
    let quotients = (1..=4)
        .flat_map(|r| (1..=4).map(move |c| (r, c)))
        .map(|(r, c)| minor_quotient(&m, &conic, r, c))
        .collect::<Result<Vec<_>>>()?;
    Ok(assemble_report(&conic, &quotients, base_names))
}

pub fn verify_minors(q: &QForm) -> Result<MinorReport> {
    verify_minors_of(q.entries(), &BASE_NAMES)
}

/// The two membership criteria evaluated separately.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Membership {
    /// `q(α) = 0` at the base point.
    pub on_conic: bool,
    /// `rank M(α) <= 2` at the base point.
    pub low_rank: bool,
}

pub fn bs_membership_detail(q: &QForm, base: &FiberPoint, alpha: &FiberPoint) -> Membership {
    let (b, a) = (base.coords(), alpha.coords());
    let on_conic = conic_equation(q).eval(b, a).is_zero();
    let low_rank = bs_matrix(q).eval(b, a).rank() <= 2;
    Membership { on_conic, low_rank }
}

/// Whether `α` lies on the fiber of the Brauer–Severi variety over `base`.
///
/// # Panics
/// If the conic test and the rank test disagree.
pub fn bs_membership(q: &QForm, base: &FiberPoint, alpha: &FiberPoint) -> bool {
    let m = bs_membership_detail(q, base, alpha);
    assert_eq!(m.on_conic, m.low_rank, "membership criteria disagree");
    m.on_conic
}

/// Number of points `α` of the plane over `F_p` with `αᵀ q α = 0`.
pub fn conic_point_count(q: &Matrix<Scalar>) -> usize {
    let domain = q.get(0, 0).domain();
    projective_points(domain)
        .filter(|p| {
            let x = p.coords();
            let mut s = domain.zero();
            for i in 0..3 {
                for j in 0..3 {
                    s = &s + &(&(q.get(i, j) * &x[i]) * &x[j]);
                }
            }
            s.is_zero()
        })
        .count()
}

/// For a rank-two form, whether the two lines are defined over the field.
///
/// `Adj q = c · k kᵀ` for a kernel vector `k`, and `c` is the discriminant of
/// the nondegenerate part up to squares; the lines split iff `-c` is a square.
pub fn line_pair_is_split(q: &Matrix<Scalar>) -> Option<bool> {
    if q.rank() != 2 {
        return None;
    }
    let k = q.kernel().pop()?;
    let i = (0..3).find(|&i| !k[i].is_zero())?;
    let c = q.adjugate().get(i, i).div(&(&k[i] * &k[i]));
    Some((-c).is_square())
}

/// Point count of the conic over `F_p` predicted from its rank: a smooth conic
/// or a double line has `p + 1` points, a split line pair `2p + 1`, a pair of
/// conjugate lines only its vertex, the zero form the whole plane.
pub fn expected_conic_point_count(q: &Matrix<Scalar>) -> u64 {
    let p = q.get(0, 0).domain().characteristic();
    match q.rank() {
        3 | 1 => p + 1,
        2 if line_pair_is_split(q) == Some(true) => 2 * p + 1,
        2 => 1,
        _ => p * p + p + 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::parse_poly;

    fn form(domain: Domain, a: [i64; 3], d: i64, e: [&str; 6]) -> QForm {
        let p = |s: &str| parse_poly(s, &BASE_NAMES, domain).unwrap().into_poly();
        let [q11, q12, q13, q22, q23, q33] = e.map(p);
        let m = Matrix::from_rows(vec![
            vec![q11, q12.clone(), q13.clone()],
            vec![q12, q22, q23.clone()],
            vec![q13, q23, q33],
        ]);
        QForm::new(a, d, m).unwrap()
    }

    fn diag(domain: Domain) -> QForm {
        form(domain, [0, 0, 0], 1, ["u", "0", "0", "v", "0", "w"])
    }

    #[test]
    fn conic_of_diagonal() {
        let q = diag(Domain::Rational);
        let c = conic_equation(&q);
        assert_eq!(c.to_string_with(&BASE_NAMES), "u*a1^2 + v*a2^2 + w*a3^2");
        assert_eq!(c.alpha_degree(), Some(2));
        assert_eq!(c.weighted_degree(q.a()), Some(1));
    }

    #[test]
    fn weighted_homogeneity_survives_twist() {
        let q = form(
            Domain::Rational,
            [0, 1, 1],
            0,
            ["1", "u", "v", "u^2", "v*w", "w^2"],
        );
        for m in -2..3 {
            let t = q.twist(m);
            assert_eq!(conic_equation(&t).weighted_degree(t.a()), Some(t.d()));
        }
    }

    #[test]
    fn matrix_entries() {
        let q = diag(Domain::Rational);
        let m = bs_matrix(&q);
        assert!(m.has_standard_border());
        let m = bs_matrix_of(&universal_entries(Domain::Rational));
        let show = |r, c| m.entry(r, c).to_string_with(&UNIVERSAL_NAMES);
        assert_eq!(show(2, 2), "2*q23*a1");
        assert_eq!(show(3, 4), "-q11*a1");
    }

    #[test]
    fn diagonal_minor() {
        let q = diag(Domain::Rational);
        let m = bs_matrix(&q);
        let c = conic_equation(&q);
        let det = minor(m.entries(), 4, 3).unwrap();
        let a1 = Poly::var(Domain::Rational, 6, 3);
        assert_eq!(det, &a1 * c.poly());
    }

    #[test]
    fn universal_divisibility() {
        let report =
            verify_minors_of(&universal_entries(Domain::Rational), &UNIVERSAL_NAMES).unwrap();
        assert!(report.all_divisible);
        let q = |r: usize, c: usize| report.quotients[(r - 1) * 4 + c - 1].quotient.clone();
        assert_eq!(q(4, 3), "a1");
        assert_eq!(q(3, 2), "a3");
        assert_eq!(q(2, 4), "-a2");
        assert_eq!(q(2, 2), "0");
    }

    #[test]
    fn zero_form() {
        let q = form(Domain::Rational, [0, 0, 0], 1, ["0"; 6]);
        assert!(conic_equation(&q).is_zero());
        let report = verify_minors(&q).unwrap();
        assert!(report.quotients.iter().all(|m| m.quotient == "0"));
    }

    #[test]
    fn membership() {
        let q = diag(Domain::Rational);
        let p = |c| FiberPoint::from_i64(Domain::Rational, c).unwrap();
        assert!(bs_membership(&q, &p([1, -1, 0]), &p([1, 1, 0])));
        assert!(!bs_membership(&q, &p([1, 1, 1]), &p([1, 0, 0])));
    }

    #[test]
    fn point_counts() {
        let f5 = Domain::prime(5).unwrap();
        let q = diag(f5);
        let at = |c| q.at(&FiberPoint::from_i64(f5, c).unwrap());
        assert_eq!(conic_point_count(&at([1, 1, 1])), 6);
        assert_eq!(conic_point_count(&at([1, 1, 0])), 11);
        assert_eq!(conic_point_count(&at([1, 0, 0])), 6);
        // 2x^2 + z^2 has no zeros besides x = z = 0 since -1/2 = 2 is not a square
        assert_eq!(line_pair_is_split(&at([2, 0, 1])), Some(false));
        assert_eq!(conic_point_count(&at([2, 0, 1])), 1);
        for c in [[1, 1, 1], [1, 1, 0], [2, 0, 1], [1, 0, 0], [0, 0, 1]] {
            assert_eq!(
                conic_point_count(&at(c)) as u64,
                expected_conic_point_count(&at(c))
            );
        }
    }
}
