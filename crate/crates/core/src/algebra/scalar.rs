//! Exact coefficient fields: ℚ, ℚ(i) and prime fields 𝔽ₚ.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::AlgebraError;

/// Exclusive upper bound on prime moduli. Residues fit in 32 bits, so every
/// product of two residues fits in a `u64`.
pub const PRIME_BOUND: u64 = 1 << 32;

/// Describes which coefficient field a polynomial lives over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    GaussianRational,
    Prime(u64),
}

impl Field {
    /// Builds a prime field, checking that `p` is a prime below [`PRIME_BOUND`].
    pub fn prime(p: u64) -> Result<Self, AlgebraError> {
        if p >= PRIME_BOUND || !is_prime(p) {
            return Err(AlgebraError::InvalidModulus(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn zero(&self) -> Scalar {
        self.from_int(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> Scalar {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match *self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(n.clone())),
            Field::GaussianRational => {
                Scalar::Gaussian { re: BigRational::from_integer(n.clone()), im: BigRational::zero() }
            }
            Field::Prime(p) => {
                let r = n.mod_floor_u64(p);
                Scalar::Prime { value: r, modulus: p }
            }
        }
    }

    /// Embeds a rational number; fails in 𝔽ₚ when the denominator vanishes mod p.
    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar, AlgebraError> {
        match *self {
            Field::Rational => Ok(Scalar::Rational(q.clone())),
            Field::GaussianRational => Ok(Scalar::Gaussian { re: q.clone(), im: BigRational::zero() }),
            Field::Prime(_) => {
                let num = self.from_bigint(q.numer());
                let den = self.from_bigint(q.denom());
                Ok(num.mul(&den.inverse()?))
            }
        }
    }

    /// A square root of −1, if the field has one: `i` in ℚ(i), and the least
    /// residue squaring to −1 in 𝔽ₚ with p ≡ 1 (mod 4) or p = 2.
    pub fn sqrt_minus_one(&self) -> Option<Scalar> {
        match *self {
            Field::Rational => None,
            Field::GaussianRational => Some(Scalar::Gaussian { re: BigRational::zero(), im: BigRational::one() }),
            Field::Prime(p) => {
                if p == 2 {
                    return Some(Scalar::Prime { value: 1, modulus: 2 });
                }
                if p % 4 != 1 {
                    return None;
                }
                // x^((p-1)/4) is a square root of -1 for any non-residue x.
                (2..p).find_map(|x| {
                    let r = pow_mod(x, (p - 1) / 4, p);
                    (r * r % p == p - 1).then_some(Scalar::Prime { value: r, modulus: p })
                })
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            Field::Rational => "Q".to_string(),
            Field::GaussianRational => "Qi".to_string(),
            Field::Prime(p) => format!("F{p}"),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

trait ModFloor {
    fn mod_floor_u64(&self, p: u64) -> u64;
}

impl ModFloor for BigInt {
    fn mod_floor_u64(&self, p: u64) -> u64 {
        use num_integer::Integer;
        use num_traits::ToPrimitive;
        self.mod_floor(&BigInt::from(p)).to_u64().expect("residue below modulus")
    }
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
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

/// A field element. Values from different fields never mix; arithmetic on
/// mismatched variants is a logic error and panics.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Gaussian { re: BigRational, im: BigRational },
    Prime { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Gaussian { .. } => Field::GaussianRational,
            Scalar::Prime { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Gaussian { re, im } => re.is_zero() && im.is_zero(),
            Scalar::Prime { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Gaussian { re, im } => re.is_one() && im.is_zero(),
            Scalar::Prime { value, .. } => *value == 1,
        }
    }

    pub fn add(&self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Gaussian { re: a, im: b }, Scalar::Gaussian { re: c, im: d }) => {
                Scalar::Gaussian { re: a + c, im: b + d }
            }
            (Scalar::Prime { value: a, modulus: p }, Scalar::Prime { value: b, modulus: q }) if p == q => {
                Scalar::Prime { value: (a + b) % p, modulus: *p }
            }
            _ => mismatch(self, rhs),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Gaussian { re, im } => Scalar::Gaussian { re: -re, im: -im },
            Scalar::Prime { value, modulus } => Scalar::Prime { value: (modulus - value) % modulus, modulus: *modulus },
        }
    }

    pub fn sub(&self, rhs: &Scalar) -> Scalar {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Gaussian { re: a, im: b }, Scalar::Gaussian { re: c, im: d }) => {
                Scalar::Gaussian { re: a * c - b * d, im: a * d + b * c }
            }
            (Scalar::Prime { value: a, modulus: p }, Scalar::Prime { value: b, modulus: q }) if p == q => {
                Scalar::Prime { value: a * b % p, modulus: *p }
            }
            _ => mismatch(self, rhs),
        }
    }

    pub fn inverse(&self) -> Result<Scalar, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(a) => Scalar::Rational(a.recip()),
            Scalar::Gaussian { re, im } => {
                let norm = re * re + im * im;
                Scalar::Gaussian { re: re / &norm, im: -im / &norm }
            }
            Scalar::Prime { value, modulus } => {
                Scalar::Prime { value: pow_mod(*value, modulus - 2, *modulus), modulus: *modulus }
            }
        })
    }

    pub fn pow(&self, exp: u32) -> Scalar {
        let mut acc = self.field().one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// True when the canonical printed form starts with a minus sign.
    pub(crate) fn prints_negative(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_negative(),
            Scalar::Gaussian { re, im } => {
                if im.is_zero() {
                    re.is_negative()
                } else if re.is_zero() {
                    im.is_negative()
                } else {
                    false
                }
            }
            Scalar::Prime { .. } => false,
        }
    }
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("scalar field mismatch: {} vs {}", a.field(), b.field())
}

pub(crate) fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => f.write_str(&fmt_rational(q)),
            Scalar::Prime { value, .. } => write!(f, "{value}"),
            Scalar::Gaussian { re, im } => {
                if im.is_zero() {
                    f.write_str(&fmt_rational(re))
                } else if re.is_zero() {
                    write_imaginary(f, im)
                } else {
                    write!(f, "({} ", fmt_rational(re))?;
                    if im.is_negative() {
                        f.write_str("- ")?;
                        write_imaginary(f, &-im)?;
                    } else {
                        f.write_str("+ ")?;
                        write_imaginary(f, im)?;
                    }
                    f.write_str(")")
                }
            }
        }
    }
}

fn write_imaginary(f: &mut fmt::Formatter<'_>, im: &BigRational) -> fmt::Result {
    if im.is_one() {
        f.write_str("i")
    } else if (-im).is_one() {
        f.write_str("-i")
    } else {
        write!(f, "{}*i", fmt_rational(im))
    }
}
