//! Exact scalars: arbitrary-precision rationals and prime-field elements.

use std::fmt::{self, Debug, Display};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Rationals in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// The field operations every algorithm in this crate is written against.
pub trait Scalar: Clone + PartialEq + Eq + Debug + Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_bigint(v: &BigInt) -> Self;
    fn is_zero(&self) -> bool;

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;

    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn from_usize(v: usize) -> Self {
        Self::from_bigint(&BigInt::from(v))
    }

    /// `self += a * b`
    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        *self = self.add(&a.mul(b));
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

impl Scalar for Rational {
    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        One::one()
    }

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_bigint(v: &BigInt) -> Self {
        BigRational::from_integer(v.clone())
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn neg(&self) -> Self {
        -self
    }

    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }

    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        // integer fast path: skips the gcd normalisation of Ratio arithmetic
        if self.is_integer() && a.is_integer() && b.is_integer() {
            let v = self.numer() + a.numer() * b.numer();
            *self = BigRational::from_integer(v);
        } else {
            *self += a * b;
        }
    }
}

/// `2^61 - 1`, the default prime-field modulus.
pub const MERSENNE_61: u64 = (1u64 << 61) - 1;

/// Element of the prime field `F_P`, stored in `[0, P)`.
///
/// `P` must be an odd prime above `2^60`; this is checked at compile time
/// for the size bound (primality is the caller's responsibility).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Fp<const P: u64>(u64);

/// The field with `2^61 - 1` elements.
pub type F61 = Fp<MERSENNE_61>;

impl<const P: u64> Fp<P> {
    const VALID: () = assert!(P > (1u64 << 60) && P % 2 == 1 && P < (1u64 << 63));

    pub fn new(v: u64) -> Self {
        #[allow(clippy::let_unit_value)]
        let _ = Self::VALID;
        Fp(v % P)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    pub const fn modulus() -> u64 {
        P
    }
}

impl<const P: u64> Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.0, P)
    }
}

impl<const P: u64> Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Scalar for Fp<P> {
    fn zero() -> Self {
        Fp::new(0)
    }

    fn one() -> Self {
        Fp::new(1)
    }

    fn from_i64(v: i64) -> Self {
        Fp::new(v.rem_euclid(P as i64) as u64)
    }

    fn from_bigint(v: &BigInt) -> Self {
        Fp::new(bigint_mod(v, P))
    }

    fn is_zero(&self) -> bool {
        self.0 == 0
    }

    fn add(&self, rhs: &Self) -> Self {
        Fp(add_mod(self.0, rhs.0, P))
    }

    fn sub(&self, rhs: &Self) -> Self {
        Fp(sub_mod(self.0, rhs.0, P))
    }

    fn mul(&self, rhs: &Self) -> Self {
        Fp(mul_mod(self.0, rhs.0, P))
    }

    fn neg(&self) -> Self {
        Fp(sub_mod(0, self.0, P))
    }

    fn inv(&self) -> Option<Self> {
        inv_mod(self.0, P).map(Fp)
    }
}

#[inline]
pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse modulo a prime `p` via Fermat; `None` for zero.
pub fn inv_mod(a: u64, p: u64) -> Option<u64> {
    if a.is_multiple_of(p) {
        None
    } else {
        Some(pow_mod(a, p - 2, p))
    }
}

/// Least nonnegative residue of `v` modulo `p`.
pub fn bigint_mod(v: &BigInt, p: u64) -> u64 {
    let r = v.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits in u64")
}

/// Reduces a rational modulo `p`, `None` when `p` divides the denominator.
pub fn rational_mod(v: &Rational, p: u64) -> Option<u64> {
    let num = bigint_mod(v.numer(), p);
    let den = bigint_mod(v.denom(), p);
    inv_mod(den, p).map(|inv| mul_mod(num, inv, p))
}

/// Deterministic Miller-Rabin, exact for every `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &q in &SMALL {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Least common multiple of the denominators.
pub fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Scales a rational vector by the LCM of its denominators.
pub fn clear_denominators(values: &[Rational]) -> Vec<BigInt> {
    let l = denominator_lcm(values);
    values
        .iter()
        .map(|v| v.numer() * (&l / v.denom()))
        .collect()
}

/// Convenience constructor for tests and small literals.
pub fn q(v: i64) -> Rational {
    Rational::from_i64(v)
}

/// `Some(v)` when the rational is an integer fitting in `i64`.
pub fn as_i64(v: &Rational) -> Option<i64> {
    if v.is_integer() {
        v.numer().to_i64()
    } else {
        None
    }
}

pub fn is_negative(v: &Rational) -> bool {
    v.is_negative()
}
