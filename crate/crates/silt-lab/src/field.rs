//! Exact scalar arithmetic over a prime field or the rationals.
//!
//! Every computation in this crate is exact: there is no floating point
//! anywhere. The field is chosen at runtime (from the input file), so
//! scalars are a runtime enum and the field acts as a context object that
//! knows how to combine them.

use num::{BigInt, BigRational, One, Signed, Zero};
use std::fmt;

/// The ground field: `F_p` for a prime `p`, or `Q`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum GroundField {
    Prime(u64),
    Rational,
}

/// A scalar in one of the supported fields.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Fp(u64),
    Rat(BigRational),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldError {
    /// `p` is not prime.
    BadField(u64),
    /// A coefficient string did not parse.
    BadScalar(String),
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::BadField(p) => write!(f, "{p} is not prime"),
            FieldError::BadScalar(s) => write!(f, "cannot parse scalar {s:?}"),
        }
    }
}

impl std::error::Error for FieldError {}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl GroundField {
    /// Validates the field descriptor. Primes must actually be prime and
    /// small enough that products fit in `u128` intermediates.
    pub fn new_prime(p: u64) -> Result<Self, FieldError> {
        if !is_prime(p) || p >= (1 << 31) {
            return Err(FieldError::BadField(p));
        }
        Ok(GroundField::Prime(p))
    }

    pub fn zero(&self) -> Scalar {
        match self {
            GroundField::Prime(_) => Scalar::Fp(0),
            GroundField::Rational => Scalar::Rat(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            GroundField::Prime(_) => Scalar::Fp(1),
            GroundField::Rational => Scalar::Rat(BigRational::one()),
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            GroundField::Prime(p) => Scalar::Fp((n.rem_euclid(*p as i64)) as u64),
            GroundField::Rational => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Fp(v) => *v == 0,
            Scalar::Rat(r) => r.is_zero(),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (GroundField::Prime(p), Scalar::Fp(x), Scalar::Fp(y)) => Scalar::Fp((x + y) % p),
            (GroundField::Rational, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            _ => panic!("scalar/field mismatch"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (GroundField::Prime(p), Scalar::Fp(x), Scalar::Fp(y)) => {
                Scalar::Fp((x + p - y) % p)
            }
            (GroundField::Rational, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x - y),
            _ => panic!("scalar/field mismatch"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (GroundField::Prime(p), Scalar::Fp(x)) => Scalar::Fp((p - x) % p),
            (GroundField::Rational, Scalar::Rat(x)) => Scalar::Rat(-x),
            _ => panic!("scalar/field mismatch"),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (GroundField::Prime(p), Scalar::Fp(x), Scalar::Fp(y)) => {
                Scalar::Fp(((*x as u128 * *y as u128) % *p as u128) as u64)
            }
            (GroundField::Rational, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            _ => panic!("scalar/field mismatch"),
        }
    }

    /// Multiplicative inverse. Panics on zero; callers check first.
    pub fn inv(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (GroundField::Prime(p), Scalar::Fp(x)) => {
                assert!(*x != 0, "inverse of zero");
                // Fermat: x^(p-2) mod p.
                let mut base = *x as u128;
                let mut exp = p - 2;
                let m = *p as u128;
                let mut acc: u128 = 1;
                while exp > 0 {
                    if exp & 1 == 1 {
                        acc = acc * base % m;
                    }
                    base = base * base % m;
                    exp >>= 1;
                }
                Scalar::Fp(acc as u64)
            }
            (GroundField::Rational, Scalar::Rat(x)) => {
                assert!(!x.is_zero(), "inverse of zero");
                Scalar::Rat(x.recip())
            }
            _ => panic!("scalar/field mismatch"),
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.mul(a, &self.inv(b))
    }

    /// Parses `"7"`, `"-3"` or `"num/den"`.
    pub fn parse(&self, s: &str) -> Result<Scalar, FieldError> {
        let bad = || FieldError::BadScalar(s.to_string());
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let n: BigInt = num.parse().map_err(|_| bad())?;
        let d: BigInt = den.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        match self {
            GroundField::Rational => Ok(Scalar::Rat(BigRational::new(n, d))),
            GroundField::Prime(p) => {
                let p_big = BigInt::from(*p);
                let nm = ((n % &p_big) + &p_big) % &p_big;
                let dm = ((d % &p_big) + &p_big) % &p_big;
                let nv: u64 = nm.try_into().map_err(|_| bad())?;
                let dv: u64 = dm.try_into().map_err(|_| bad())?;
                if dv == 0 {
                    return Err(bad());
                }
                Ok(self.div(&Scalar::Fp(nv), &Scalar::Fp(dv)))
            }
        }
    }

    /// Canonical string form, stable across runs; used in JSON output.
    pub fn render(&self, a: &Scalar) -> String {
        match a {
            Scalar::Fp(v) => v.to_string(),
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
        }
    }

    /// Deterministic "random" scalar from an RNG word; used by the
    /// Fitting-lemma splitter.
    pub fn from_random_word(&self, w: u64) -> Scalar {
        match self {
            GroundField::Prime(p) => Scalar::Fp(w % p),
            // Small integers keep rational arithmetic cheap while still
            // separating eigenvalues with high probability.
            GroundField::Rational => {
                Scalar::Rat(BigRational::from_integer(BigInt::from((w % 1009) as i64 - 504)))
            }
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Fp(v) => write!(f, "{v}"),
            Scalar::Rat(r) => write!(f, "{r}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f = GroundField::new_prime(101).unwrap();
        let a = f.from_i64(45);
        let b = f.from_i64(77);
        assert_eq!(f.add(&a, &b), f.from_i64(122 - 101));
        assert_eq!(f.mul(&a, &f.inv(&a)), f.one());
        assert_eq!(f.sub(&a, &a), f.zero());
        assert_eq!(f.neg(&f.zero()), f.zero());
    }

    #[test]
    fn rational_arithmetic() {
        let f = GroundField::Rational;
        let half = f.parse("1/2").unwrap();
        let third = f.parse("1/3").unwrap();
        let sum = f.add(&half, &third);
        assert_eq!(f.render(&sum), "5/6");
        assert_eq!(f.mul(&half, &f.from_i64(2)), f.one());
    }

    #[test]
    fn rejects_non_prime() {
        assert!(GroundField::new_prime(91).is_err());
        assert!(GroundField::new_prime(1).is_err());
        assert!(GroundField::new_prime(103).is_ok());
    }

    #[test]
    fn parse_negative_mod_p() {
        let f = GroundField::new_prime(101).unwrap();
        assert_eq!(f.parse("-1").unwrap(), f.from_i64(100));
        assert_eq!(f.parse("1/2").unwrap(), f.div(&f.one(), &f.from_i64(2)));
    }
}
