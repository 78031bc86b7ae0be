use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

/// An exact, computable field.
///
/// All structure tensors, modules and forms in this crate are generic over
/// `F: Field`. Equality must be decidable and agree with field equality;
/// there is no notion of tolerance anywhere.
pub trait Field:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn from_int(n: i64) -> Self;

    /// Whether a nonzero element has finite multiplicative order.
    fn is_root_of_unity(&self) -> bool;

    /// Candidate roots in this field for the polynomial with the given
    /// coefficients (constant term first).
    ///
    /// The list need not be complete and may contain non-roots; callers
    /// test each candidate and treat anything left over as a factor with no
    /// root in the field.
    fn root_candidates(coeffs: &[Self]) -> Vec<Self>;

    fn pow_int(&self, e: i64) -> Self {
        if e < 0 {
            return self.inv().expect("zero raised to a negative power").pow_int(-e);
        }
        let mut base = self.clone();
        let mut acc = Self::one();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * &base;
            }
        }
        acc
    }
}

/// Rational roots of an integer polynomial, by the rational root theorem.
///
/// Gives up (returns an empty list) when the constant or leading term is
/// too large to enumerate divisors cheaply.
pub(crate) fn rational_root_candidates(coeffs: &[crate::scalars::Rational]) -> Vec<crate::scalars::Rational> {
    use crate::scalars::Rational;
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::ToPrimitive;

    let mut c: Vec<Rational> = coeffs.to_vec();
    while c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
    if c.len() < 2 {
        return Vec::new();
    }
    let mut out = Vec::new();
    // zero roots
    let lead_zero = c.iter().take_while(|x| x.is_zero()).count();
    if lead_zero > 0 {
        out.push(Rational::zero());
        c.drain(..lead_zero);
        if c.len() < 2 {
            return out;
        }
    }
    let mut lcm = BigInt::one();
    for x in &c {
        lcm = lcm.lcm(&x.denom());
    }
    let ints: Vec<BigInt> = c.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let (Some(a0), Some(an)) = (ints[0].to_i64(), ints[ints.len() - 1].to_i64()) else {
        return out;
    };
    let divisors = |n: i64| -> Option<Vec<i64>> {
        let n = n.unsigned_abs();
        if n > 1_000_000_000_000 {
            return None;
        }
        let mut d = Vec::new();
        let mut i = 1u64;
        while i * i <= n {
            if n.is_multiple_of(i) {
                d.push(i as i64);
                if i * i != n {
                    d.push((n / i) as i64);
                }
            }
            i += 1;
            if i > 1_000_000 {
                return None;
            }
        }
        Some(d)
    };
    let (Some(ps), Some(qs)) = (divisors(a0), divisors(an)) else {
        return out;
    };
    for p in &ps {
        for q in &qs {
            for s in [1, -1] {
                let r = Rational::new(s * p, *q);
                if !out.contains(&r) {
                    out.push(r);
                }
            }
        }
    }
    out
}

impl Field for crate::scalars::Rational {
    fn inv(&self) -> Option<Self> {
        crate::scalars::Rational::inv(self)
    }

    fn from_int(n: i64) -> Self {
        crate::scalars::Rational::from_integer(n)
    }

    fn is_root_of_unity(&self) -> bool {
        *self == Self::one() || *self == -Self::one()
    }

    fn root_candidates(coeffs: &[Self]) -> Vec<Self> {
        rational_root_candidates(coeffs)
    }
}
