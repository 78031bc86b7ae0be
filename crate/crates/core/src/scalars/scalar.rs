//! The session field Q(ζ_N)(q).

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Zero};

use super::{CycloElem, Rational};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Poly;

/// A reduced fraction of polynomials in `q`.
///
/// Never constant: constants are always stored as [`Scalar::Const`].
#[derive(Clone, PartialEq)]
pub struct RatFunc {
    num: Poly<CycloElem>,
    den: Poly<CycloElem>,
}

/// An element of Q(ζ_N)(q) in canonical form.
///
/// The denominator is monic and coprime to the numerator, so structural
/// equality is field equality.
#[derive(Clone, PartialEq)]
pub enum Scalar {
    Const(CycloElem),
    Frac(Box<RatFunc>),
}

impl Scalar {
    /// Reduce `num/den` to canonical form.
    pub fn normalize(num: Poly<CycloElem>, den: Poly<CycloElem>) -> Result<Scalar> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Scalar::zero());
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.is_constant() {
                (num, den)
            } else {
                (num.divrem(&g).0, den.divrem(&g).0)
            }
        };
        let l = den.lead().unwrap().inverse().ok_or(Error::ZeroDenominator)?;
        let (num, den) = (num.scale(&l), den.scale(&l));
        Ok(Self::from_reduced(num, den))
    }

    fn from_reduced(num: Poly<CycloElem>, den: Poly<CycloElem>) -> Scalar {
        if den.is_constant() && num.is_constant() {
            Scalar::Const(num.coeff(0))
        } else {
            Scalar::Frac(Box::new(RatFunc { num, den }))
        }
    }

    /// The indeterminate `q`.
    pub fn q() -> Scalar {
        Self::q_pow(CycloElem::one(), 1)
    }

    /// `c·q^k`.
    pub fn q_pow(c: CycloElem, k: i64) -> Scalar {
        if c.is_zero() {
            return Scalar::zero();
        }
        if k == 0 {
            return Scalar::Const(c);
        }
        let m = k.unsigned_abs() as usize;
        let mono = Poly::monomial(CycloElem::one(), m);
        if k > 0 {
            Self::from_reduced(Poly::monomial(c, m), Poly::one())
        } else {
            Self::from_reduced(Poly::constant(c), mono)
        }
    }

    pub fn from_cyclo(c: CycloElem) -> Scalar {
        Scalar::Const(c)
    }

    pub fn from_rational(r: Rational) -> Scalar {
        Scalar::Const(CycloElem::from_rational(1, r))
    }

    /// ζ_N^k as a constant.
    pub fn zeta_pow(n: u32, k: i64) -> Scalar {
        Scalar::Const(CycloElem::zeta_pow(n, k))
    }

    pub fn is_const(&self) -> bool {
        matches!(self, Scalar::Const(_))
    }

    pub fn as_const(&self) -> Option<&CycloElem> {
        match self {
            Scalar::Const(c) => Some(c),
            Scalar::Frac(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<Rational> {
        self.as_const().and_then(|c| c.as_rational())
    }

    /// Numerator and denominator as polynomials in `q`.
    pub fn parts(&self) -> (Poly<CycloElem>, Poly<CycloElem>) {
        match self {
            Scalar::Const(c) => (Poly::constant(c.clone()), Poly::one()),
            Scalar::Frac(f) => (f.num.clone(), f.den.clone()),
        }
    }

    /// The least conductor containing every coefficient.
    pub fn conductor(&self) -> u32 {
        match self {
            Scalar::Const(c) => c.conductor(),
            Scalar::Frac(f) => f.num.coeffs().iter().chain(f.den.coeffs()).fold(1u32, |m, c| m.lcm(&c.conductor())),
        }
    }

    /// Whether the value depends on `q`.
    pub fn has_q(&self) -> bool {
        !self.is_const()
    }

    /// `Some((c, k))` when the value is the monomial `c·q^k`.
    pub fn as_monomial(&self) -> Option<(CycloElem, i64)> {
        match self {
            Scalar::Const(c) if !c.is_zero() => Some((c.clone(), 0)),
            Scalar::Const(_) => None,
            Scalar::Frac(f) => {
                let single = |p: &Poly<CycloElem>| -> Option<(CycloElem, usize)> {
                    let mut it = p.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero());
                    let (k, c) = it.next()?;
                    if it.next().is_some() {
                        return None;
                    }
                    Some((c.clone(), k))
                };
                let (c, a) = single(&f.num)?;
                let (d, b) = single(&f.den)?;
                Some((c / d, a as i64 - b as i64))
            }
        }
    }

    fn add_ref(&self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Const(a), Scalar::Const(b)) => Scalar::Const(a + b),
            (Scalar::Frac(f), Scalar::Const(c)) | (Scalar::Const(c), Scalar::Frac(f)) => {
                // gcd(num + c·den, den) = gcd(num, den) = 1
                let num = f.num.add(&f.den.scale(c));
                if num.is_zero() {
                    Scalar::zero()
                } else {
                    Self::from_reduced(num, f.den.clone())
                }
            }
            (Scalar::Frac(f), Scalar::Frac(g)) => {
                if f.den == g.den {
                    Self::normalize(f.num.add(&g.num), f.den.clone()).unwrap()
                } else {
                    let num = f.num.mul(&g.den).add(&g.num.mul(&f.den));
                    Self::normalize(num, f.den.mul(&g.den)).unwrap()
                }
            }
        }
    }

    fn mul_ref(&self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Const(a), Scalar::Const(b)) => Scalar::Const(a * b),
            (Scalar::Frac(f), Scalar::Const(c)) | (Scalar::Const(c), Scalar::Frac(f)) => {
                if c.is_zero() {
                    Scalar::zero()
                } else {
                    Self::from_reduced(f.num.scale(c), f.den.clone())
                }
            }
            (Scalar::Frac(f), Scalar::Frac(g)) => Self::normalize(f.num.mul(&g.num), f.den.mul(&g.den)).unwrap(),
        }
    }

    pub fn inverse(&self) -> Option<Scalar> {
        match self {
            Scalar::Const(c) => c.inverse().map(Scalar::Const),
            Scalar::Frac(f) => Some(Self::normalize(f.den.clone(), f.num.clone()).unwrap()),
        }
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::Const(CycloElem::zero())
    }
    fn is_zero(&self) -> bool {
        matches!(self, Scalar::Const(c) if c.is_zero())
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::Const(CycloElem::one())
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<CycloElem> for Scalar {
    fn from(c: CycloElem) -> Self {
        Scalar::Const(c)
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::from_rational(r)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        self.add_ref(rhs)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        self.mul_ref(rhs)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        self.add_ref(&-rhs.clone())
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &'a Scalar) -> Scalar {
        self.mul_ref(&rhs.inverse().expect("division by zero scalar"))
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Const(c) => Scalar::Const(-c),
            Scalar::Frac(f) => Scalar::Frac(Box::new(RatFunc { num: f.num.neg(), den: f.den })),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Const(c) => write!(f, "{c}"),
            Scalar::Frac(r) if r.den.is_constant() => write!(f, "{}", r.num.render("q")),
            Scalar::Frac(r) => write!(f, "({})/({})", r.num.render("q"), r.den.render("q")),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Largest q-exponent searched when proposing roots of polynomials with
/// q-dependent coefficients.
const Q_ROOT_SEARCH: i64 = 24;

impl Field for Scalar {
    fn inv(&self) -> Option<Self> {
        self.inverse()
    }

    fn from_int(n: i64) -> Self {
        Scalar::Const(CycloElem::from_int(n))
    }

    fn is_root_of_unity(&self) -> bool {
        match self {
            Scalar::Const(c) => c.is_root_of_unity(),
            Scalar::Frac(_) => false,
        }
    }

    fn root_candidates(coeffs: &[Self]) -> Vec<Self> {
        let consts: Option<Vec<CycloElem>> = coeffs.iter().map(|c| c.as_const().cloned()).collect();
        if let Some(cs) = consts {
            return CycloElem::root_candidates(&cs).into_iter().map(Scalar::Const).collect();
        }
        let n = coeffs.iter().fold(1u32, |m, c| m.lcm(&c.conductor()));
        let span = coeffs
            .iter()
            .map(|c| {
                let (a, b) = c.parts();
                (a.degree().unwrap_or(0) + b.degree().unwrap_or(0)) as i64
            })
            .max()
            .unwrap_or(0)
            .min(Q_ROOT_SEARCH);
        let units = CycloElem::roots_of_unity(n);
        let mut out = vec![Scalar::zero()];
        for k in -span..=span {
            for w in &units {
                out.push(Scalar::q_pow(w.clone(), k));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qp(coeffs: &[i64]) -> Poly<CycloElem> {
        Poly::new(coeffs.iter().map(|&c| CycloElem::from_int(c)).collect())
    }

    #[test]
    fn normalize_cancels_and_makes_monic() {
        // (q^2-1)/(q-1) = q+1
        let s = Scalar::normalize(qp(&[-1, 0, 1]), qp(&[-1, 1])).unwrap();
        assert_eq!(s, Scalar::q() + Scalar::one());
        // 0/q^3 = 0
        assert!(Scalar::normalize(qp(&[]), qp(&[0, 0, 0, 1])).unwrap().is_zero());
        // 2q/4 = q/2
        let s = Scalar::normalize(qp(&[0, 2]), qp(&[4])).unwrap();
        let (n, d) = s.parts();
        assert_eq!(d, Poly::one());
        assert_eq!(n, Poly::new(vec![CycloElem::zero(), CycloElem::from_rational(1, Rational::new(1, 2))]));
        assert_eq!(Scalar::normalize(qp(&[1]), qp(&[])), Err(Error::ZeroDenominator));
    }

    #[test]
    fn powers() {
        let q = Scalar::q();
        let r = q.pow_int(-2);
        assert_eq!(r * q.pow_int(2), Scalar::one());
        assert_eq!(Scalar::q_pow(CycloElem::one(), -2), q.pow_int(-2));
        assert_eq!(Scalar::zeta_pow(4, 1).pow_int(4), Scalar::one());
        let p = (q.clone() + Scalar::one()).pow_int(2);
        assert_eq!(p, q.pow_int(2) + Scalar::from_int(2) * &q + Scalar::one());
    }

    #[test]
    fn roots_of_unity_detection() {
        assert!(Scalar::zeta_pow(3, 1).is_root_of_unity());
        assert!(!Scalar::q().is_root_of_unity());
        assert!(Scalar::Const(-CycloElem::one().lift(4)).is_root_of_unity());
        assert!(!Scalar::from_int(3).is_root_of_unity());
    }

    #[test]
    fn monomials() {
        let x = Scalar::q_pow(CycloElem::zeta(3), -3);
        assert_eq!(x.as_monomial(), Some((CycloElem::zeta(3), -3)));
        assert_eq!((Scalar::q() + Scalar::one()).as_monomial(), None);
    }

    #[test]
    fn q_roots_found() {
        // (x - q^2)(x + q^-1)
        let q = Scalar::q();
        let a = q.pow_int(2);
        let b = -q.pow_int(-1);
        let p = Poly::new(vec![a.clone() * &b, -(a.clone() + &b), Scalar::one()]);
        let (roots, rest) = p.roots();
        assert_eq!(rest.degree(), Some(0));
        assert!(roots.contains(&a) && roots.contains(&b));
    }
}
