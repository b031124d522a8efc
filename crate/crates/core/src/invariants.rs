//! Numerical invariants on the projective plane: Euler characteristics of
//! split bundles and twisted cotangent bundles, Chern classes, `-K^3` of the
//! conic bundle, and topological Euler characteristics.

use std::fmt;

use serde::Serialize;

use crate::catalog::DelPezzoTag;
use crate::error::{Error, Result};

/// One summand of a vector bundle on the plane.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Summand {
    /// `O(n)`.
    LineBundle(i64),
    /// `Ω¹(n)`.
    CotangentTwist(i64),
}

impl Summand {
    pub fn rank(self) -> usize {
        match self {
            Summand::LineBundle(_) => 1,
            Summand::CotangentTwist(_) => 2,
        }
    }

    pub fn twisted(self, m: i64) -> Summand {
        match self {
            Summand::LineBundle(n) => Summand::LineBundle(n + m),
            Summand::CotangentTwist(n) => Summand::CotangentTwist(n + m),
        }
    }

    /// `(c1, c2)` as multiples of the hyperplane class.
    pub fn chern(self) -> (i64, i64) {
        match self {
            Summand::LineBundle(n) => (n, 0),
            Summand::CotangentTwist(n) => (2 * n - 3, n * n - 3 * n + 3),
        }
    }
}

fn twist_str(n: i64) -> String {
    if n == 0 {
        String::new()
    } else {
        format!("({n})")
    }
}

impl fmt::Display for Summand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Summand::LineBundle(n) => write!(f, "O({n})"),
            Summand::CotangentTwist(n) => write!(f, "Ω¹{}", twist_str(n)),
        }
    }
}

/// A direct sum of line bundles and twisted cotangent bundles.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize)]
pub struct BundleDescriptor {
    pub summands: Vec<Summand>,
}

impl BundleDescriptor {
    pub fn new(summands: Vec<Summand>) -> Self {
        BundleDescriptor { summands }
    }

    /// `O(n_1) ⊕ ... ⊕ O(n_k)`.
    pub fn lines(degrees: &[i64]) -> Self {
        BundleDescriptor::new(degrees.iter().map(|&n| Summand::LineBundle(n)).collect())
    }

    pub fn rank(&self) -> usize {
        self.summands.iter().map(|s| s.rank()).sum()
    }

    pub fn twisted(&self, m: i64) -> Self {
        BundleDescriptor::new(self.summands.iter().map(|s| s.twisted(m)).collect())
    }

    pub fn concat(&self, other: &BundleDescriptor) -> Self {
        let mut summands = self.summands.clone();
        summands.extend_from_slice(&other.summands);
        BundleDescriptor::new(summands)
    }
}

impl fmt::Display for BundleDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            return write!(f, "0");
        }
        // group equal adjacent summands as powers
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.summands.len() {
            let s = self.summands[i];
            let mut j = i;
            while j < self.summands.len() && self.summands[j] == s {
                j += 1;
            }
            parts.push(if j - i > 1 {
                format!("{s}^{}", j - i)
            } else {
                s.to_string()
            });
            i = j;
        }
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

/// `χ(O(n)) = (n + 1)(n + 2) / 2`.
pub fn chi_o(n: i64) -> i64 {
    (n + 1) * (n + 2) / 2
}

/// `χ(b ⊗ O(twist))`, using `χ(Ω¹(n)) = 3χ(O(n - 1)) - χ(O(n))`.
pub fn chi_bundle(b: &BundleDescriptor, twist: i64) -> i64 {
    b.summands
        .iter()
        .map(|s| match s.twisted(twist) {
            Summand::LineBundle(n) => chi_o(n),
            Summand::CotangentTwist(n) => 3 * chi_o(n - 1) - chi_o(n),
        })
        .sum()
}

/// `(c1, c2)` by the Whitney formula; a trivial summand changes nothing.
pub fn chern_c1_c2(b: &BundleDescriptor, plus_trivial_summand: bool) -> (i64, i64) {
    let mut all = b.summands.clone();
    if plus_trivial_summand {
        all.push(Summand::LineBundle(0));
    }
    all.iter().fold((0, 0), |(c1, c2), s| {
        let (d1, d2) = s.chern();
        (c1 + d1, c2 + d2 + c1 * d1)
    })
}

/// `-K^3 = 48 - 6d + 2χ(A/O)` for a conic bundle over the plane.
pub fn minus_k3_via_euler(d: i64, chi_ao: i64) -> i64 {
    48 - 6 * d + 2 * chi_ao
}

/// `-K^3 = 6K^2 + 3K.D + D^2 - 2c2(A)`.
pub fn minus_k3_via_chern(k2: i64, kd: i64, d2: i64, c2: i64) -> i64 {
    6 * k2 + 3 * kd + d2 - 2 * c2
}

/// The same expression with coefficient one on `c2`, as sometimes stated.
/// It does not reproduce the known values and is kept for comparison only.
pub fn minus_k3_via_chern_unit_coefficient(k2: i64, kd: i64, d2: i64, c2: i64) -> i64 {
    6 * k2 + 3 * kd + d2 - c2
}

/// `K^2, K.D, D^2` on the plane for a discriminant curve of degree `d`.
pub fn plane_intersections(d: i64) -> (i64, i64, i64) {
    (9, -3 * d, d * d)
}

/// `χ_top(X) = 2χ_top(Z) + χ_top(D)`.
pub fn chi_top_conic_bundle(chi_top_z: i64, chi_top_d: i64) -> i64 {
    2 * chi_top_z + chi_top_d
}

/// Topological Euler characteristic of a plane curve of degree `d` whose only
/// singularities are the given number of nodes.
pub fn chi_top_plane_curve(d: i64, nodes: i64) -> i64 {
    3 * d - d * d + nodes
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub type_tag: DelPezzoTag,
    pub vstar: String,
    /// Degree of the discriminant curve.
    pub d: i64,
    #[serde(rename = "chi_AO")]
    pub chi_ao: i64,
    pub c1: i64,
    pub c2: i64,
    #[serde(rename = "minus_K3")]
    pub minus_k3: i64,
    #[serde(rename = "minus_K3_euler")]
    pub minus_k3_euler: i64,
    #[serde(rename = "minus_K3_chern")]
    pub minus_k3_chern: i64,
    #[serde(rename = "minus_K3_chern_unit_coefficient")]
    pub minus_k3_chern_unit: i64,
    pub h12: i64,
    pub bs_description: String,
}

/// Assemble the invariants of a del Pezzo type, computing `-K^3` two ways.
pub fn report(tag: DelPezzoTag) -> Result<InvariantReport> {
    let vstar = tag.vstar();
    let d = tag.discriminant_degree();
    let chi_ao = chi_bundle(&vstar, 0);
    let (c1, c2) = chern_c1_c2(&vstar, true);
    if c1 != -d {
        return Err(Error::InconsistentInvariants(format!(
            "{tag}: c1 = {c1} but the discriminant has degree {d}"
        )));
    }
    let (k2, kd, d2) = plane_intersections(d);
    let euler = minus_k3_via_euler(d, chi_ao);
    let chern = minus_k3_via_chern(k2, kd, d2, c2);
    if euler != chern {
        return Err(Error::InconsistentInvariants(format!(
            "{tag}: -K^3 is {euler} via chi(A/O) but {chern} via c2"
        )));
    }
    Ok(InvariantReport {
        type_tag: tag,
        vstar: vstar.to_string(),
        d,
        chi_ao,
        c1,
        c2,
        minus_k3: euler,
        minus_k3_euler: euler,
        minus_k3_chern: chern,
        minus_k3_chern_unit: minus_k3_via_chern_unit_coefficient(k2, kd, d2, c2),
        h12: tag.h12(),
        bs_description: tag.bs_description().to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use Summand::*;

    #[test]
    fn chi_of_line_bundles() {
        assert_eq!(chi_o(0), 1);
        assert_eq!(chi_o(-1), 0);
        assert_eq!(chi_o(-2), 0);
        assert_eq!(chi_o(-3), 1);
        assert_eq!(chi_o(2), 6);
    }

    #[test]
    fn chi_of_sums() {
        assert_eq!(chi_bundle(&BundleDescriptor::lines(&[-1, -1, -1]), 0), 0);
        let b = BundleDescriptor::new(vec![CotangentTwist(0), LineBundle(-2)]);
        assert_eq!(chi_bundle(&b, 0), -1);
        assert_eq!(chi_bundle(&BundleDescriptor::lines(&[-2, -1, -1]), 0), 0);
        // global sections of Ω¹(2) form a 3-dimensional space
        assert_eq!(
            chi_bundle(&BundleDescriptor::new(vec![CotangentTwist(2)]), 0),
            3
        );
    }

    #[test]
    fn chern_classes() {
        assert_eq!(
            chern_c1_c2(&BundleDescriptor::lines(&[-1, -1, -1]), false),
            (-3, 3)
        );
        assert_eq!(
            chern_c1_c2(&BundleDescriptor::lines(&[-2, -1, -1]), true),
            (-4, 5)
        );
        let b = BundleDescriptor::new(vec![CotangentTwist(0), LineBundle(-2)]);
        assert_eq!(chern_c1_c2(&b, false), (-5, 9));
    }

    #[test]
    fn minus_k3() {
        assert_eq!(minus_k3_via_euler(3, 0), 30);
        assert_eq!(minus_k3_via_euler(5, -1), 16);
        assert_eq!(minus_k3_via_euler(5, 0), 18);
        let (k2, kd, d2) = plane_intersections(3);
        assert_eq!(minus_k3_via_chern(k2, kd, d2, 3), 30);
        assert_eq!(minus_k3_via_chern_unit_coefficient(k2, kd, d2, 3), 33);
        let (k2, kd, d2) = plane_intersections(4);
        assert_eq!(minus_k3_via_chern(k2, kd, d2, 5), 24);
        let (k2, kd, d2) = plane_intersections(5);
        assert_eq!(minus_k3_via_chern(k2, kd, d2, 9), 16);
    }

    #[test]
    fn topological_euler() {
        assert_eq!(chi_top_plane_curve(3, 0), 0);
        assert_eq!(chi_top_plane_curve(3, 1), 1);
        assert_eq!(chi_top_plane_curve(1, 0), 2);
        assert_eq!(chi_top_plane_curve(5, 0), -10);
        assert_eq!(chi_top_conic_bundle(3, 0), 6);
        assert_eq!(chi_top_conic_bundle(3, -10), -4);
    }

    #[test]
    fn display() {
        let b = BundleDescriptor::new(vec![CotangentTwist(0), LineBundle(-2)]);
        assert_eq!(b.to_string(), "Ω¹ ⊕ O(-2)");
        assert_eq!(
            BundleDescriptor::lines(&[-1, -1, -1]).to_string(),
            "O(-1)^3"
        );
        assert_eq!(b.rank(), 3);
    }

    #[test]
    fn table() {
        let rows = [
            (DelPezzoTag::F23, 3, 0, 3, 30, 0),
            (DelPezzoTag::F24, 4, 0, 5, 24, 2),
            (DelPezzoTag::F25Plus, 5, -1, 9, 16, 5),
            (DelPezzoTag::F25Minus, 5, 0, 8, 18, 5),
        ];
        for (tag, d, chi, c2, k3, h12) in rows {
            let r = report(tag).unwrap();
            assert_eq!(
                (r.d, r.chi_ao, r.c2, r.minus_k3, r.h12),
                (d, chi, c2, k3, h12)
            );
            assert_eq!(r.c1, -d);
            assert_ne!(r.minus_k3_chern_unit, k3);
        }
    }
}
