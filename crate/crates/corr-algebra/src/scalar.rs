//! Prime fields: the rationals and word-size prime fields.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, Zero};
use std::fmt;

use crate::error::AlgebraError;

/// The prime field at the bottom of every tower: `Q` or `F_p` for a
/// word-size prime `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PrimeField {
    Rationals,
    /// `p` must be prime; checked by [`PrimeField::fp`].
    Fp(u64),
}

/// An element of a prime field. The modulus for the `Fp` variant is
/// carried by the ambient [`PrimeField`], not the element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Fp(u64),
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == small {
            return true;
        }
        if n % small == 0 {
            return false;
        }
    }
    // Deterministic Miller-Rabin for u64.
    let d = (n - 1) >> (n - 1).trailing_zeros();
    let s = (n - 1).trailing_zeros();
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a % n, d, n);
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

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // Extended Euclid on signed 128-bit; p is prime and a != 0 mod p.
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1, "inverse of zero or p not prime");
    t0.rem_euclid(p as i128) as u64
}

impl PrimeField {
    /// The field `F_p`. Errors unless `p` is a (word-size) prime.
    pub fn fp(p: u64) -> Result<Self, AlgebraError> {
        if is_prime_u64(p) {
            Ok(PrimeField::Fp(p))
        } else {
            Err(AlgebraError::NotPrime(p))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            PrimeField::Rationals => 0,
            PrimeField::Fp(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            PrimeField::Rationals => Scalar::Rat(BigRational::zero()),
            PrimeField::Fp(_) => Scalar::Fp(0),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            PrimeField::Rationals => Scalar::Rat(BigRational::one()),
            PrimeField::Fp(_) => Scalar::Fp(1),
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            PrimeField::Rationals => Scalar::Rat(BigRational::from(BigInt::from(n))),
            PrimeField::Fp(p) => Scalar::Fp(n.rem_euclid(*p as i64) as u64),
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match self {
            PrimeField::Rationals => Scalar::Rat(BigRational::from(n.clone())),
            PrimeField::Fp(p) => {
                let m = n % BigInt::from(*p);
                let m = if m.is_negative() { m + BigInt::from(*p) } else { m };
                Scalar::Fp(u64::try_from(m).expect("reduced residue fits in u64"))
            }
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Fp(v) => *v == 0,
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (PrimeField::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            (PrimeField::Fp(p), Scalar::Fp(x), Scalar::Fp(y)) => {
                let s = (*x as u128 + *y as u128) % *p as u128;
                Scalar::Fp(s as u64)
            }
            _ => panic!("scalar/field mismatch"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (PrimeField::Rationals, Scalar::Rat(x)) => Scalar::Rat(-x),
            (PrimeField::Fp(p), Scalar::Fp(x)) => Scalar::Fp(if *x == 0 { 0 } else { p - x }),
            _ => panic!("scalar/field mismatch"),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (PrimeField::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            (PrimeField::Fp(p), Scalar::Fp(x), Scalar::Fp(y)) => Scalar::Fp(mul_mod(*x, *y, *p)),
            _ => panic!("scalar/field mismatch"),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Result<Scalar, AlgebraError> {
        if self.is_zero(a) {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(match (self, a) {
            (PrimeField::Rationals, Scalar::Rat(x)) => Scalar::Rat(x.recip()),
            (PrimeField::Fp(p), Scalar::Fp(x)) => Scalar::Fp(inv_mod(*x, *p)),
            _ => panic!("scalar/field mismatch"),
        })
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar, AlgebraError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Frobenius inverse: in `F_p`, `x^p = x`, so the p-th root is `x` itself.
    pub fn pth_root(&self, a: &Scalar) -> Scalar {
        debug_assert!(matches!(self, PrimeField::Fp(_)));
        a.clone()
    }

    pub fn render(&self, a: &Scalar) -> String {
        match a {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    format!("{}", r.numer())
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Fp(v) => format!("{v}"),
        }
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimeField::Rationals => write!(f, "Q"),
            PrimeField::Fp(p) => write!(f, "GF({p})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(5));
        assert!(is_prime_u64(97));
        assert!(is_prime_u64(4_294_967_311)); // prime > 2^32
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64(91));
        assert!(PrimeField::fp(6).is_err());
    }

    #[test]
    fn fp_division_brute_force() {
        // 2 / 3 = 4 in F_5: check against exhaustive search.
        let f = PrimeField::fp(5).unwrap();
        let q = f.div(&Scalar::Fp(2), &Scalar::Fp(3)).unwrap();
        assert_eq!(q, Scalar::Fp(4));
        let mut found = None;
        for x in 0..5u64 {
            if f.mul(&Scalar::Fp(x), &Scalar::Fp(3)) == Scalar::Fp(2) {
                found = Some(x);
            }
        }
        assert_eq!(found, Some(4));
    }

    #[test]
    fn rational_arith() {
        let f = PrimeField::Rationals;
        let half = f.div(&f.from_i64(1), &f.from_i64(2)).unwrap();
        let sum = f.add(&half, &half);
        assert_eq!(sum, f.one());
        assert!(f.inv(&f.zero()).is_err());
    }
}
