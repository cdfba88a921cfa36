//! Just enough univariate polynomial arithmetic for endomorphism splitting:
//! minimal polynomials, gcd, and extraction of linear factors.
//!
//! The decomposition machinery only ever factors polynomials whose roots lie
//! in the ground field (split endomorphism rings). Root finding is by direct
//! search: all residues for `F_p`, rational-root candidates over `Q`.

use crate::field::{GroundField, Scalar};
use crate::matrix::Mat;
use num::{BigInt, BigRational, One, Signed, Zero};

/// Dense coefficients, lowest degree first, normalized (no trailing zeros).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    pub field: GroundField,
    pub coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(field: GroundField, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn zero(field: GroundField) -> Self {
        Poly { field, coeffs: vec![] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let f = self.field;
        let mut acc = f.zero();
        for c in self.coeffs.iter().rev() {
            acc = f.add(&f.mul(&acc, x), c);
        }
        acc
    }

    /// Divides by `(t - root)`, assuming `root` is a root.
    pub fn deflate(&self, root: &Scalar) -> Poly {
        let f = self.field;
        let n = self.coeffs.len();
        assert!(n >= 1);
        let mut out = vec![f.zero(); n - 1];
        let mut carry = f.zero();
        for i in (0..n - 1).rev() {
            carry = f.add(&self.coeffs[i + 1], &f.mul(&carry, root));
            out[i] = carry.clone();
        }
        Poly::new(f, out)
    }

    fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let f = self.field;
        let lead = self.coeffs.last().unwrap();
        let inv = f.inv(lead);
        Poly::new(f, self.coeffs.iter().map(|c| f.mul(c, &inv)).collect())
    }

    fn rem(&self, divisor: &Poly) -> Poly {
        let f = self.field;
        assert!(!divisor.is_zero());
        let mut rem = self.coeffs.clone();
        let dlead = divisor.coeffs.last().unwrap();
        let dinv = f.inv(dlead);
        while rem.len() >= divisor.coeffs.len() && !rem.is_empty() {
            let k = rem.len() - divisor.coeffs.len();
            let factor = f.mul(rem.last().unwrap(), &dinv);
            if !f.is_zero(&factor) {
                for (i, dc) in divisor.coeffs.iter().enumerate() {
                    rem[k + i] = f.sub(&rem[k + i], &f.mul(&factor, dc));
                }
            }
            rem.pop();
            while rem.last().is_some_and(|c| f.is_zero(c)) {
                rem.pop();
            }
        }
        Poly::new(f, rem)
    }

    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// All roots in the ground field, with multiplicity, plus the non-linear
    /// remainder after stripping them off.
    pub fn roots_in_field(&self) -> (Vec<(Scalar, usize)>, Poly) {
        let f = self.field;
        let mut p = self.monic();
        let mut roots: Vec<(Scalar, usize)> = Vec::new();
        for cand in root_candidates(&p) {
            let mut mult = 0;
            while !p.is_zero() && p.degree() >= 1 && f.is_zero(&p.eval(&cand)) {
                p = p.deflate(&cand);
                mult += 1;
            }
            if mult > 0 {
                roots.push((cand, mult));
            }
        }
        (roots, p)
    }
}

fn root_candidates(p: &Poly) -> Vec<Scalar> {
    match p.field {
        GroundField::Prime(q) => (0..q).map(Scalar::Fp).collect(),
        GroundField::Rational => {
            // Rational root theorem on the integer-cleared polynomial.
            let mut lcm = BigInt::one();
            for c in &p.coeffs {
                if let Scalar::Rat(r) = c {
                    let d = r.denom();
                    let g = num::integer::gcd(lcm.clone(), d.clone());
                    lcm = lcm / g * d;
                }
            }
            let ints: Vec<BigInt> = p
                .coeffs
                .iter()
                .map(|c| match c {
                    Scalar::Rat(r) => (r * BigRational::from_integer(lcm.clone())).to_integer(),
                    _ => unreachable!(),
                })
                .collect();
            let lead = ints.last().cloned().unwrap_or_else(BigInt::one);
            let konst = ints
                .iter()
                .find(|c| !c.is_zero())
                .cloned()
                .unwrap_or_else(BigInt::one);
            let mut cands = vec![Scalar::Rat(BigRational::zero())];
            for n in divisors(&konst.abs()) {
                for d in divisors(&lead.abs()) {
                    let q = BigRational::new(n.clone(), d.clone());
                    cands.push(Scalar::Rat(q.clone()));
                    cands.push(Scalar::Rat(-q));
                }
            }
            cands.dedup();
            cands
        }
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    if n.is_zero() {
        return vec![BigInt::one()];
    }
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            out.push(d.clone());
            out.push(n / &d);
        }
        d += 1;
        // Desk-scale guard: constants here come from tiny characteristic
        // polynomials; anything past this bound signals misuse.
        if out.len() > 4096 {
            break;
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Minimal polynomial of a square matrix: first linear dependence among
/// `I, A, A^2, ...` in the flattened space.
pub fn min_poly(a: &Mat) -> Poly {
    let f = a.field;
    let n = a.rows;
    assert_eq!(a.rows, a.cols);
    if n == 0 {
        return Poly::new(f, vec![f.one()]);
    }
    let mut powers: Vec<Mat> = vec![Mat::identity(f, n)];
    loop {
        let k = powers.len();
        // Solve sum c_i A^i = A^k for the c_i.
        let stacked = Mat::from_fn(f, n * n, k, |r, c| powers[c].vectorize()[r].clone());
        let next = powers.last().unwrap().mul(a);
        let rhs = Mat::col_vec(f, next.vectorize());
        if let Some(sol) = stacked.solve(&rhs) {
            let mut coeffs: Vec<Scalar> = (0..k).map(|i| f.neg(sol.at(i, 0))).collect();
            coeffs.push(f.one());
            return Poly::new(f, coeffs);
        }
        powers.push(next);
        assert!(powers.len() <= n + 1, "minimal polynomial search overran");
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::GroundField;

    fn f() -> GroundField {
        GroundField::new_prime(101).unwrap()
    }

    #[test]
    fn min_poly_of_nilpotent_jordan_block() {
        let field = f();
        let mut a = Mat::zero(field, 3, 3);
        a.set(0, 1, field.one());
        a.set(1, 2, field.one());
        let p = min_poly(&a);
        // t^3
        assert_eq!(p.degree(), 3);
        assert!(field.is_zero(&p.coeffs[0]));
        assert!(field.is_zero(&p.coeffs[1]));
        assert!(field.is_zero(&p.coeffs[2]));
    }

    #[test]
    fn roots_of_split_polynomial() {
        let field = f();
        // (t-2)^2 (t-5)
        let p = Poly::new(
            field,
            vec![
                field.from_i64(-20),
                field.from_i64(24),
                field.from_i64(-9),
                field.one(),
            ],
        );
        let (roots, rest) = p.roots_in_field();
        assert!(rest.degree() == 0);
        let mut sorted: Vec<(u64, usize)> = roots
            .iter()
            .map(|(s, m)| match s {
                Scalar::Fp(v) => (*v, *m),
                _ => unreachable!(),
            })
            .collect();
        sorted.sort();
        assert_eq!(sorted, vec![(2, 2), (5, 1)]);
    }

    #[test]
    fn rational_roots() {
        let field = GroundField::Rational;
        // (t - 1/2)(t + 3)
        let p = Poly::new(
            field,
            vec![
                field.parse("-3/2").unwrap(),
                field.parse("5/2").unwrap(),
                field.one(),
            ],
        );
        let (roots, rest) = p.roots_in_field();
        assert_eq!(roots.len(), 2);
        assert_eq!(rest.degree(), 0);
    }
}
