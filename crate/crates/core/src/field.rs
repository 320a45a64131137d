//! Prime-subfield scalars.
//!
//! Every computation in this crate happens over a prime field: the rationals
//! for characteristic zero, or GF(p) for a prime p. The field element types
//! carry ordinary operator impls; a [`PrimeField`] value plays the role of
//! the context that knows how to build constants and embed integers.

use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::FieldError;

/// Exact rational number in lowest terms with positive denominator.
pub type Rational = BigRational;

/// Arithmetic shared by every scalar type the crate computes with.
pub trait Scalar:
    Clone
    + PartialEq
    + Eq
    + Hash
    + Debug
    + Display
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn is_zero(&self) -> bool;

    /// Multiplicative inverse, `None` for zero.
    fn inverse(&self) -> Option<Self>;
}

impl Scalar for BigRational {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// Element of GF(p), stored as its least non-negative residue.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Fp {
    residue: u64,
    modulus: u64,
}

impl Fp {
    /// Reduces `value` modulo `modulus`. The modulus is not checked for
    /// primality here; use [`Gf::new`] for validated construction.
    pub fn new(value: u64, modulus: u64) -> Self {
        assert!(modulus >= 2, "modulus must be at least 2");
        Fp {
            residue: value % modulus,
            modulus,
        }
    }

    pub fn residue(&self) -> u64 {
        self.residue
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    fn check(&self, other: &Fp) {
        assert_eq!(
            self.modulus, other.modulus,
            "arithmetic between GF({}) and GF({})",
            self.modulus, other.modulus
        );
    }

    fn pow(self, mut exp: u64) -> Fp {
        let mut base = self;
        let mut acc = Fp::new(1, self.modulus);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            exp >>= 1;
        }
        acc
    }
}

impl Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.residue)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        self.check(&rhs);
        let sum = (self.residue as u128 + rhs.residue as u128) % self.modulus as u128;
        Fp {
            residue: sum as u64,
            modulus: self.modulus,
        }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        self + (-rhs)
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp {
            residue: if self.residue == 0 {
                0
            } else {
                self.modulus - self.residue
            },
            modulus: self.modulus,
        }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        self.check(&rhs);
        let prod = (self.residue as u128 * rhs.residue as u128) % self.modulus as u128;
        Fp {
            residue: prod as u64,
            modulus: self.modulus,
        }
    }
}

impl Scalar for Fp {
    fn is_zero(&self) -> bool {
        self.residue == 0
    }

    fn inverse(&self) -> Option<Self> {
        if self.residue == 0 {
            None
        } else {
            // Fermat; the modulus is prime whenever it came through `Gf`.
            Some(self.pow(self.modulus - 2))
        }
    }
}

/// A prime field together with the operations that need to know which one
/// it is: constants, integer embedding, membership.
#[allow(clippy::wrong_self_convention)]
pub trait PrimeField: Clone + Debug + Send + Sync {
    type Scalar: Scalar;

    /// 0 for the rationals, p for GF(p).
    fn characteristic(&self) -> u64;
    fn zero(&self) -> Self::Scalar;
    fn one(&self) -> Self::Scalar;
    fn from_integer(&self, n: &BigInt) -> Self::Scalar;
    /// Image of a rational number, `None` when its denominator vanishes in
    /// the field.
    fn from_rational(&self, q: &Rational) -> Option<Self::Scalar>;
    /// Whether `x` is an element of this particular field.
    fn contains(&self, x: &Self::Scalar) -> bool;

    fn from_i64(&self, n: i64) -> Self::Scalar {
        self.from_integer(&BigInt::from(n))
    }

    fn spec(&self) -> FieldSpec {
        match self.characteristic() {
            0 => FieldSpec::Rational,
            p => FieldSpec::Prime(p),
        }
    }
}

/// The rational numbers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl PrimeField for Rationals {
    type Scalar = Rational;

    fn characteristic(&self) -> u64 {
        0
    }

    fn zero(&self) -> Rational {
        Rational::zero()
    }

    fn one(&self) -> Rational {
        Rational::one()
    }

    fn from_integer(&self, n: &BigInt) -> Rational {
        Rational::from_integer(n.clone())
    }

    fn from_rational(&self, q: &Rational) -> Option<Rational> {
        Some(q.clone())
    }

    fn contains(&self, _x: &Rational) -> bool {
        true
    }
}

/// GF(p) for a prime p.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Gf {
    p: u64,
}

impl Gf {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if is_prime(p) {
            Ok(Gf { p })
        } else {
            Err(FieldError::NotPrime(p.to_string()))
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }
}

impl PrimeField for Gf {
    type Scalar = Fp;

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn zero(&self) -> Fp {
        Fp::new(0, self.p)
    }

    fn one(&self) -> Fp {
        Fp::new(1, self.p)
    }

    fn from_integer(&self, n: &BigInt) -> Fp {
        let r = n.mod_floor(&BigInt::from(self.p));
        Fp::new(r.to_u64().expect("residue below a u64 modulus"), self.p)
    }

    fn from_rational(&self, q: &Rational) -> Option<Fp> {
        let num = self.from_integer(q.numer());
        let den = self.from_integer(q.denom());
        den.inverse().map(|inv| num * inv)
    }

    fn contains(&self, x: &Fp) -> bool {
        x.modulus == self.p
    }
}

/// Characteristic of the coefficient field: 0 (compute over ℚ) or a prime p
/// (compute over GF(p)).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "u64", try_from = "u64")]
pub enum FieldSpec {
    Rational,
    Prime(u64),
}

impl FieldSpec {
    pub fn new(characteristic: u64) -> Result<Self, FieldError> {
        match characteristic {
            0 => Ok(FieldSpec::Rational),
            p if is_prime(p) => Ok(FieldSpec::Prime(p)),
            other => Err(FieldError::NotPrime(other.to_string())),
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rational => 0,
            FieldSpec::Prime(p) => *p,
        }
    }

    /// Whether the characteristic divides `n` (characteristic 0 divides only 0).
    pub fn divides(&self, n: &BigInt) -> bool {
        match self {
            FieldSpec::Rational => n.is_zero(),
            FieldSpec::Prime(p) => (n % BigInt::from(*p)).is_zero(),
        }
    }

    /// The default characteristic list used by the command-line tool.
    pub fn defaults() -> Vec<FieldSpec> {
        [0, 2, 3, 5, 7]
            .into_iter()
            .map(|c| FieldSpec::new(c).expect("default characteristics are valid"))
            .collect()
    }

    pub(crate) fn gf(&self) -> Option<Gf> {
        match self {
            FieldSpec::Rational => None,
            FieldSpec::Prime(p) => Some(Gf { p: *p }),
        }
    }
}

impl Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.characteristic())
    }
}

impl FromStr for FieldSpec {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let c: u64 = s
            .trim()
            .parse()
            .map_err(|_| FieldError::NotPrime(s.trim().to_string()))?;
        FieldSpec::new(c)
    }
}

impl From<FieldSpec> for u64 {
    fn from(f: FieldSpec) -> u64 {
        f.characteristic()
    }
}

impl TryFrom<u64> for FieldSpec {
    type Error = FieldError;
    fn try_from(c: u64) -> Result<Self, FieldError> {
        FieldSpec::new(c)
    }
}

/// A vector over whichever prime field a runtime [`FieldSpec`] selected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldVector {
    Rational(Vec<Rational>),
    Modular { modulus: u64, residues: Vec<Fp> },
}

impl FieldVector {
    pub fn len(&self) -> usize {
        match self {
            FieldVector::Rational(v) => v.len(),
            FieldVector::Modular { residues, .. } => residues.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn field(&self) -> FieldSpec {
        match self {
            FieldVector::Rational(_) => FieldSpec::Rational,
            FieldVector::Modular { modulus, .. } => FieldSpec::Prime(*modulus),
        }
    }

    /// Entries rendered as `a/b` (rationals) or least non-negative residues.
    pub fn entries(&self) -> Vec<String> {
        match self {
            FieldVector::Rational(v) => v.iter().map(|x| x.to_string()).collect(),
            FieldVector::Modular { residues, .. } => {
                residues.iter().map(|x| x.to_string()).collect()
            }
        }
    }
}

impl Display for FieldVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.entries().join(", "))?;
        if let FieldVector::Modular { modulus, .. } = self {
            write!(f, " mod {modulus}")?;
        }
        Ok(())
    }
}

/// Parses `a`, `-a` or `a/b` into a rational.
pub fn parse_rational(s: &str) -> Result<Rational, FieldError> {
    let s = s.trim();
    let bad = || FieldError::BadCoefficient(s.to_string());
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(n))
        }
    }
}

/// Deterministic Miller–Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in SMALL {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        acc
    };
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in SMALL {
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
