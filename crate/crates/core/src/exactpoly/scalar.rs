//! Exact scalars: arbitrary-precision rationals or residues modulo an odd prime.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The field a computation takes place in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Domain {
    Rational,
    Prime(u64),
}

/// Default prime for finite-field scans and pseudorandom forms.
pub const DEFAULT_PRIME: u64 = 101;

impl Domain {
    /// Validated prime field. The prime must be odd and below 2^31.
    pub fn prime(p: u64) -> Result<Domain> {
        if !(3..(1 << 31)).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidDomain(format!(
                "{p} is not an odd prime below 2^31"
            )));
        }
        Ok(Domain::Prime(p))
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            Domain::Rational => Scalar::Rational(BigRational::from_integer(n.into())),
            Domain::Prime(p) => Scalar::Mod {
                value: n.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    pub fn from_bigint(self, n: &BigInt) -> Scalar {
        match self {
            Domain::Rational => Scalar::Rational(BigRational::from_integer(n.clone())),
            Domain::Prime(p) => Scalar::Mod {
                value: n.mod_floor(&BigInt::from(p)).to_u64().unwrap(),
                modulus: p,
            },
        }
    }

    /// `num / den` in this domain; `None` when `den` vanishes in it.
    pub fn from_fraction(self, num: &BigInt, den: &BigInt) -> Option<Scalar> {
        if den.is_zero() {
            return None;
        }
        match self {
            Domain::Rational => Some(Scalar::Rational(BigRational::new(num.clone(), den.clone()))),
            Domain::Prime(_) => {
                let d = self.from_bigint(den);
                d.inv().map(|di| &self.from_bigint(num) * &di)
            }
        }
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Domain::Rational => 0,
            Domain::Prime(p) => p,
        }
    }

    /// All field elements, in increasing residue order. Prime fields only.
    pub fn elements(self) -> Option<impl Iterator<Item = Scalar>> {
        match self {
            Domain::Rational => None,
            Domain::Prime(p) => Some((0..p).map(move |value| Scalar::Mod { value, modulus: p })),
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Rational => write!(f, "Q"),
            Domain::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of Q or of F_p.
///
/// Rationals are kept in lowest terms with positive denominator (guaranteed by
/// `BigRational`); residues are canonical representatives in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Mod { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn domain(&self) -> Domain {
        match self {
            Scalar::Rational(_) => Domain::Rational,
            Scalar::Mod { modulus, .. } => Domain::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Mod { value, .. } => *value == 1,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Rational(r) if r.is_zero() => None,
            Scalar::Rational(r) => Some(Scalar::Rational(r.recip())),
            Scalar::Mod { value: 0, .. } => None,
            Scalar::Mod { value, modulus } => Some(Scalar::Mod {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            }),
        }
    }

    /// Division; panics on a zero divisor.
    pub fn div(&self, other: &Scalar) -> Scalar {
        self * &other.inv().expect("division by zero scalar")
    }

    pub fn pow(&self, mut e: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.domain().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Squareness in the field: perfect squares of numerator and denominator
    /// over Q, Euler's criterion over F_p. Zero counts as a square.
    pub fn is_square(&self) -> bool {
        match self {
            Scalar::Rational(r) => {
                !r.is_negative() && is_perfect_square(r.numer()) && is_perfect_square(r.denom())
            }
            Scalar::Mod { value: 0, .. } => true,
            Scalar::Mod { value, modulus } => pow_mod(*value, (modulus - 1) / 2, *modulus) == 1,
        }
    }

    /// A square root, normalized to be positive over Q and the smaller of the
    /// two residues over F_p.
    pub fn sqrt(&self) -> Option<Scalar> {
        if !self.is_square() {
            return None;
        }
        match self {
            Scalar::Rational(r) => Some(Scalar::Rational(BigRational::new(
                r.numer().sqrt(),
                r.denom().sqrt(),
            ))),
            Scalar::Mod { value, modulus } => {
                let root = tonelli_shanks(*value, *modulus);
                Some(Scalar::Mod {
                    value: root.min(modulus - root),
                    modulus: *modulus,
                })
            }
        }
    }

    /// Whether this is the canonical choice between `x` and `-x`: positive
    /// over Q, at most `p/2` over F_p.
    pub fn is_sign_normalized(&self) -> bool {
        match self {
            Scalar::Rational(r) => !r.is_negative(),
            Scalar::Mod { value, modulus } => *value <= modulus - value,
        }
    }

    /// The integer represented, when it is one (over F_p the residue in `[0, p)`).
    pub fn to_bigint(&self) -> Option<BigInt> {
        match self {
            Scalar::Rational(r) if r.is_integer() => Some(r.to_integer()),
            Scalar::Rational(_) => None,
            Scalar::Mod { value, .. } => Some(BigInt::from(*value)),
        }
    }

    /// True when written with a leading minus sign.
    pub fn is_negative_display(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_negative())
    }

    fn check_domain(&self, other: &Scalar) -> u64 {
        match (self, other) {
            (Scalar::Mod { modulus: a, .. }, Scalar::Mod { modulus: b, .. }) if a == b => *a,
            _ => panic!(
                "scalar domains mixed in one computation: {} and {}",
                self.domain(),
                other.domain()
            ),
        }
    }
}

fn is_perfect_square(n: &BigInt) -> bool {
    if n.sign() == Sign::Minus {
        return false;
    }
    let s = n.sqrt();
    &s * &s == *n
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

/// Square root of a nonzero quadratic residue modulo an odd prime.
fn tonelli_shanks(n: u64, p: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut q = p - 1;
    let mut s = 0;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(n, q, p);
    let mut r = pow_mod(n, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    r
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Mod { value: a, .. }, Scalar::Mod { value: b, .. }) => {
                let p = self.check_domain(rhs);
                Scalar::Mod {
                    value: (a + b) % p,
                    modulus: p,
                }
            }
            _ => {
                self.check_domain(rhs);
                unreachable!()
            }
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Mod { value: a, .. }, Scalar::Mod { value: b, .. }) => {
                let p = self.check_domain(rhs);
                Scalar::Mod {
                    value: mul_mod(*a, *b, p),
                    modulus: p,
                }
            }
            _ => {
                self.check_domain(rhs);
                unreachable!()
            }
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Mod { value, modulus } => Scalar::Mod {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{r}"),
            Scalar::Mod { value, .. } => write!(f, "{value}"),
        }
    }
}
