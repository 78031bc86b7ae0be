//! Dense univariate polynomials over a [`Field`], constant term first.

use std::fmt;

use crate::field::Field;

#[derive(Clone, PartialEq)]
pub struct Poly<F: Field> {
    coeffs: Vec<F>,
}

impl<F: Field> Poly<F> {
    /// Trailing zeros are stripped, so the zero polynomial has no coefficients.
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: F) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    /// The monomial `c·x^k`.
    pub fn monomial(c: F, k: usize) -> Self {
        let mut v = vec![F::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// `x - r`.
    pub fn linear_root(r: &F) -> Self {
        Poly { coeffs: vec![-r.clone(), F::one()] }
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> F {
        self.coeffs.get(i).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + &other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - &other.coeff(i)).collect())
    }

    pub fn neg(&self) -> Self {
        Poly { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].clone() + &(a.clone() * b);
                }
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::new(self.coeffs.iter().map(|x| x.clone() * c).collect())
    }

    /// Quotient and remainder. Panics on division by zero.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("polynomial division by zero");
        let inv = d.lead().unwrap().inv().unwrap();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![F::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = r[i + dd].clone() * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                r[i + j] = r[i + j].clone() - &(c.clone() * dj);
            }
            q[i] = c;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    /// Leading coefficient 1; the zero polynomial is returned unchanged.
    pub fn monic(&self) -> Self {
        match self.lead() {
            None => self.clone(),
            Some(l) => self.scale(&l.inv().unwrap()),
        }
    }

    /// Monic gcd by the Euclidean algorithm; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval(&self, x: &F) -> F {
        let mut acc = F::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Roots lying in `F`, with multiplicity, plus the cofactor that has no
    /// root among the candidates `F::root_candidates` proposes.
    pub fn roots(&self) -> (Vec<F>, Self) {
        let mut rest = self.clone();
        let mut roots = Vec::new();
        while let Some(d) = rest.degree() {
            if d == 0 {
                break;
            }
            if rest.coeffs[0].is_zero() {
                roots.push(F::zero());
                rest = Self::new(rest.coeffs[1..].to_vec());
                continue;
            }
            if d == 1 {
                let r = -(rest.coeffs[0].clone()) * &rest.coeffs[1].inv().unwrap();
                roots.push(r);
                rest = Self::constant(rest.coeffs[1].clone());
                break;
            }
            let cands = F::root_candidates(&rest.coeffs);
            let mut found = None;
            for c in cands {
                if rest.eval(&c).is_zero() {
                    found = Some(c);
                    break;
                }
            }
            match found {
                Some(r) => {
                    rest = rest.divrem(&Self::linear_root(&r)).0;
                    roots.push(r);
                }
                None => break,
            }
        }
        (roots, rest)
    }
}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<F: Field> Poly<F> {
    /// Render with the given variable name, highest power first.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            terms.push(match k {
                0 => format!("{c}"),
                1 if c.is_one() => var.to_string(),
                1 => format!("({c})*{var}"),
                _ if c.is_one() => format!("{var}^{k}"),
                _ => format!("({c})*{var}^{k}"),
            });
        }
        terms.join(" + ")
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("x"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Rational;
    use num_traits::One;

    fn p(v: &[i64]) -> Poly<Rational> {
        Poly::new(v.iter().map(|&x| Rational::from_integer(x)).collect())
    }

    #[test]
    fn division_identity() {
        let a = p(&[3, 0, -2, 5, 1]);
        let d = p(&[1, 2]);
        let (q, r) = a.divrem(&d);
        assert_eq!(q.mul(&d).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 1);
    }

    #[test]
    fn gcd_is_monic_common_factor() {
        // (x-1)(x+2) and (x-1)(x-3)
        let a = p(&[-2, 1, 1]);
        let b = p(&[3, -4, 1]);
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
        assert_eq!(p(&[0]).gcd(&p(&[0])), Poly::zero());
    }

    #[test]
    fn rational_roots_with_multiplicity() {
        // (x-1)^2 (2x+3) (x^2+1)
        let f = p(&[-1, 2, -1]).mul(&p(&[3, 2])).mul(&p(&[1, 0, 1]));
        let (mut roots, rest) = f.roots();
        roots.sort();
        assert_eq!(roots, vec![Rational::new(-3, 2), Rational::one(), Rational::one()]);
        assert_eq!(rest.monic(), p(&[1, 0, 1]));
    }
}
