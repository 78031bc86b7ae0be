//! The cyclotomic field Q(ζ_N) in the power basis 1, ζ, …, ζ^{φ(N)-1}.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_integer::Integer;
use num_traits::{One, Zero};
use smallvec::SmallVec;

use super::Rational;
use crate::field::{rational_root_candidates, Field};

type Coeffs = SmallVec<[Rational; 4]>;

/// Reduction data for one conductor.
#[derive(Debug)]
pub(crate) struct CycloTable {
    pub phi: usize,
    /// `powers[k]` is ζ^k reduced to the power basis, for `0 <= k < N`.
    pub powers: Vec<Vec<i64>>,
}

fn int_poly_divexact(num: &[i64], den: &[i64]) -> Vec<i64> {
    // den is monic
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    let mut q = vec![0i64; num.len() - dd];
    for i in (0..q.len()).rev() {
        let c = r[i + dd];
        q[i] = c;
        for (j, d) in den.iter().enumerate() {
            r[i + j] -= c * d;
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    q
}

pub(crate) fn cyclotomic_poly(n: u32) -> Arc<Vec<i64>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(p) = cache.read().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by Φ_d for every proper divisor d
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = int_poly_divexact(&p, &cyclotomic_poly(d));
        }
    }
    let p = Arc::new(p);
    cache.write().unwrap().entry(n).or_insert(p).clone()
}

impl CycloTable {
    fn build(n: u32) -> Self {
        assert!(n >= 1, "conductor must be positive");
        let cyclotomic = cyclotomic_poly(n);
        let phi = cyclotomic.len() - 1;
        let mut powers = Vec::with_capacity(n as usize);
        let mut cur = vec![0i64; phi];
        cur[0] = 1;
        for _ in 0..n {
            powers.push(cur.clone());
            // multiply by x and reduce x^phi
            let top = cur[phi - 1];
            for i in (1..phi).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            for i in 0..phi {
                cur[i] -= top * cyclotomic[i];
            }
        }
        CycloTable { phi, powers }
    }
}

pub(crate) fn table(n: u32) -> Arc<CycloTable> {
    static TABLES: OnceLock<RwLock<HashMap<u32, Arc<CycloTable>>>> = OnceLock::new();
    let tables = TABLES.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(t) = tables.read().unwrap().get(&n) {
        return t.clone();
    }
    let t = Arc::new(CycloTable::build(n));
    tables.write().unwrap().entry(n).or_insert(t).clone()
}

/// Euler's totient.
pub fn euler_phi(n: u32) -> usize {
    let (mut m, mut out, mut p) = (n, n, 2u32);
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if m > 1 {
        out -= out / m;
    }
    out as usize
}

/// An element of Q(ζ_N).
///
/// Elements of different conductors combine by lifting both into the
/// conductor `lcm(N, M)`; equality is field equality.
#[derive(Clone)]
pub struct CycloElem {
    n: u32,
    c: Coeffs,
}

impl CycloElem {
    /// Build from power-basis coefficients. Panics on a length mismatch.
    pub fn new(n: u32, coeffs: Vec<Rational>) -> Self {
        let phi = euler_phi(n);
        assert_eq!(coeffs.len(), phi, "Q(ζ_{n}) has degree {phi}");
        CycloElem { n, c: coeffs.into_iter().collect() }
    }

    pub fn from_rational(n: u32, r: Rational) -> Self {
        let mut c: Coeffs = std::iter::repeat_n(Rational::zero(), euler_phi(n)).collect();
        c[0] = r;
        CycloElem { n, c }
    }

    /// ζ_N^k.
    pub fn zeta_pow(n: u32, k: i64) -> Self {
        let t = table(n);
        let k = k.rem_euclid(n as i64) as usize;
        CycloElem { n, c: t.powers[k].iter().map(|&x| Rational::from_integer(x)).collect() }
    }

    pub fn zeta(n: u32) -> Self {
        Self::zeta_pow(n, 1)
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.c
    }

    /// The rational value, if the element lies in Q.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.c[1..].iter().all(|x| x.is_zero()) {
            Some(self.c[0].clone())
        } else {
            None
        }
    }

    /// Re-express in a conductor that is a multiple of the current one.
    pub fn lift(&self, m: u32) -> Self {
        if m == self.n {
            return self.clone();
        }
        assert!(m.is_multiple_of(self.n), "cannot lift Q(ζ_{}) into Q(ζ_{m})", self.n);
        let t = table(m);
        let step = (m / self.n) as usize;
        let mut out: Coeffs = std::iter::repeat_n(Rational::zero(), t.phi).collect();
        for (j, cj) in self.c.iter().enumerate() {
            if cj.is_zero() {
                continue;
            }
            let p = &t.powers[(j * step) % m as usize];
            for (i, &v) in p.iter().enumerate() {
                if v != 0 {
                    out[i] += &(cj * &Rational::from_integer(v));
                }
            }
        }
        CycloElem { n: m, c: out }
    }

    fn aligned<'a>(
        a: &'a CycloElem,
        b: &'a CycloElem,
    ) -> (std::borrow::Cow<'a, CycloElem>, std::borrow::Cow<'a, CycloElem>) {
        use std::borrow::Cow;
        if a.n == b.n {
            (Cow::Borrowed(a), Cow::Borrowed(b))
        } else if b.n == 1 || a.n.is_multiple_of(b.n) {
            (Cow::Borrowed(a), Cow::Owned(b.lift(a.n)))
        } else if a.n == 1 || b.n.is_multiple_of(a.n) {
            (Cow::Owned(a.lift(b.n)), Cow::Borrowed(b))
        } else {
            let m = a.n.lcm(&b.n);
            (Cow::Owned(a.lift(m)), Cow::Owned(b.lift(m)))
        }
    }

    fn mul_same(a: &CycloElem, b: &CycloElem) -> CycloElem {
        let t = table(a.n);
        let phi = t.phi;
        if phi == 1 {
            return CycloElem { n: a.n, c: smallvec::smallvec![&a.c[0] * &b.c[0]] };
        }
        let mut raw: Vec<Rational> = vec![Rational::zero(); 2 * phi - 1];
        for (i, x) in a.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.c.iter().enumerate() {
                if !y.is_zero() {
                    raw[i + j] += &(x * y);
                }
            }
        }
        let mut out: Coeffs = raw[..phi].iter().cloned().collect();
        for (k, v) in raw.iter().enumerate().skip(phi) {
            if v.is_zero() {
                continue;
            }
            for (i, &p) in t.powers[k % a.n as usize].iter().enumerate() {
                if p != 0 {
                    out[i] += &(v * &Rational::from_integer(p));
                }
            }
        }
        CycloElem { n: a.n, c: out }
    }

    /// Inverse by solving `x · y = 1` in the power basis.
    pub fn inverse(&self) -> Option<CycloElem> {
        if self.is_zero() {
            return None;
        }
        let phi = self.c.len();
        if phi == 1 {
            return Some(CycloElem { n: self.n, c: smallvec::smallvec![self.c[0].inv()?] });
        }
        // column j = x · ζ^j
        let mut m: Vec<Vec<Rational>> = vec![vec![Rational::zero(); phi + 1]; phi];
        for j in 0..phi {
            let col = Self::mul_same(self, &Self::zeta_pow(self.n, j as i64));
            for i in 0..phi {
                m[i][j] = col.c[i].clone();
            }
        }
        m[0][phi] = Rational::one();
        for col in 0..phi {
            let piv = (col..phi).find(|&r| !m[r][col].is_zero())?;
            m.swap(col, piv);
            let inv = m[col][col].inv()?;
            for x in m[col].iter_mut() {
                *x = &*x * &inv;
            }
            for r in 0..phi {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    for k in col..=phi {
                        let d = &f * &m[col][k];
                        m[r][k] -= &d;
                    }
                }
            }
        }
        Some(CycloElem { n: self.n, c: m.into_iter().map(|row| row[phi].clone()).collect() })
    }

    /// All roots of unity of Q(ζ_N): ±ζ_N^j.
    pub fn roots_of_unity(n: u32) -> Vec<CycloElem> {
        let mut out: Vec<CycloElem> = Vec::new();
        for sign in [1i64, -1] {
            for j in 0..n as i64 {
                let mut z = Self::zeta_pow(n, j);
                if sign < 0 {
                    z = -z;
                }
                if !out.contains(&z) {
                    out.push(z);
                }
            }
        }
        out
    }

    /// Order bound for roots of unity in Q(ζ_N).
    pub fn unity_exponent(n: u32) -> i64 {
        2i64.lcm(&(n as i64))
    }
}

impl PartialEq for CycloElem {
    fn eq(&self, other: &Self) -> bool {
        if self.n == other.n {
            return self.c == other.c;
        }
        let (a, b) = Self::aligned(self, other);
        a.c == b.c
    }
}

impl Zero for CycloElem {
    fn zero() -> Self {
        CycloElem { n: 1, c: smallvec::smallvec![Rational::zero()] }
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }
}

impl One for CycloElem {
    fn one() -> Self {
        CycloElem { n: 1, c: smallvec::smallvec![Rational::one()] }
    }
}

impl<'a> Add<&'a CycloElem> for &'a CycloElem {
    type Output = CycloElem;
    fn add(self, rhs: &'a CycloElem) -> CycloElem {
        let (a, b) = CycloElem::aligned(self, rhs);
        CycloElem { n: a.n, c: a.c.iter().zip(b.c.iter()).map(|(x, y)| x + y).collect() }
    }
}

impl<'a> Sub<&'a CycloElem> for &'a CycloElem {
    type Output = CycloElem;
    fn sub(self, rhs: &'a CycloElem) -> CycloElem {
        let (a, b) = CycloElem::aligned(self, rhs);
        CycloElem { n: a.n, c: a.c.iter().zip(b.c.iter()).map(|(x, y)| x - y).collect() }
    }
}

impl<'a> Mul<&'a CycloElem> for &'a CycloElem {
    type Output = CycloElem;
    fn mul(self, rhs: &'a CycloElem) -> CycloElem {
        let (a, b) = CycloElem::aligned(self, rhs);
        CycloElem::mul_same(&a, &b)
    }
}

impl<'a> Div<&'a CycloElem> for &'a CycloElem {
    type Output = CycloElem;
    fn div(self, rhs: &'a CycloElem) -> CycloElem {
        self * &rhs.inverse().expect("division by zero in Q(ζ)")
    }
}

impl Neg for CycloElem {
    type Output = CycloElem;
    fn neg(self) -> CycloElem {
        CycloElem { n: self.n, c: self.c.into_iter().map(|x| -x).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<CycloElem> for CycloElem {
            type Output = CycloElem;
            fn $m(self, rhs: CycloElem) -> CycloElem {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a CycloElem> for CycloElem {
            type Output = CycloElem;
            fn $m(self, rhs: &'a CycloElem) -> CycloElem {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl fmt::Display for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (j, c) in self.c.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cs = format!("{c:?}");
            terms.push(match j {
                0 => cs,
                1 if *c == Rational::one() => format!("ζ{}", self.n),
                1 => format!("{cs}*ζ{}", self.n),
                _ if *c == Rational::one() => format!("ζ{}^{j}", self.n),
                _ => format!("{cs}*ζ{}^{j}", self.n),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl fmt::Debug for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Field for CycloElem {
    fn inv(&self) -> Option<Self> {
        self.inverse()
    }

    fn from_int(n: i64) -> Self {
        CycloElem::from_rational(1, Rational::from_integer(n))
    }

    fn is_root_of_unity(&self) -> bool {
        !self.is_zero() && self.pow_int(Self::unity_exponent(self.n)) == Self::one()
    }

    fn root_candidates(coeffs: &[Self]) -> Vec<Self> {
        let mut out = vec![Self::zero()];
        let rats: Option<Vec<Rational>> = coeffs.iter().map(|c| c.as_rational()).collect();
        if let Some(r) = &rats {
            for x in rational_root_candidates(r) {
                push_new(&mut out, CycloElem::from_rational(1, x));
            }
        }
        for w in unit_root_candidates(coeffs, rats.as_deref()) {
            push_new(&mut out, w);
        }
        out
    }
}

fn push_new(out: &mut Vec<CycloElem>, x: CycloElem) {
    if !out.contains(&x) {
        out.push(x);
    }
}

/// Roots of unity that can be roots of a polynomial with the given
/// coefficients, in order of increasing multiplicative order.
///
/// With rational coefficients only orders `m` with `Φ_m | p` qualify. Otherwise
/// every order `m` whose field `Q(ζ_{lcm(c,m)})` has degree at most
/// `deg p · φ(c)` is listed, `c` being the coefficient conductor.
pub(crate) fn unit_root_candidates(coeffs: &[CycloElem], rats: Option<&[Rational]>) -> Vec<CycloElem> {
    let deg = coeffs.len().saturating_sub(1);
    if deg == 0 {
        return Vec::new();
    }
    let c = coeffs.iter().fold(1u32, |m, x| m.lcm(&x.n));
    let bound = deg * euler_phi(c);
    let mmax = (2 * bound * bound).max(2) as u32;
    let mut out = Vec::new();
    for m in 1..=mmax {
        let ok = match rats {
            Some(r) => euler_phi(m) <= deg && rational_divisible(r, &cyclotomic_poly(m)),
            None => euler_phi(c.lcm(&m)) <= bound,
        };
        if !ok {
            continue;
        }
        for j in 0..m {
            if j.gcd(&m) == 1 {
                out.push(CycloElem::zeta_pow(m, j as i64));
            }
        }
    }
    out
}

fn rational_divisible(p: &[Rational], d: &[i64]) -> bool {
    let dd = d.len() - 1;
    if p.len() <= dd {
        return false;
    }
    let mut r = p.to_vec();
    for i in (0..r.len() - dd).rev() {
        let c = r[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, &dj) in d.iter().enumerate() {
            if dj != 0 {
                r[i + j] = r[i + j].clone() - &(c.clone() * &Rational::from_integer(dj));
            }
        }
    }
    r[..dd].iter().all(|x| x.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_poly(2), vec![1, 1]);
        assert_eq!(*cyclotomic_poly(3), vec![1, 1, 1]);
        assert_eq!(*cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(euler_phi(15), 8);
    }

    #[test]
    fn zeta_relations() {
        for n in [1u32, 2, 3, 4, 5, 6, 8, 12] {
            let z = CycloElem::zeta(n);
            assert_eq!(z.pow_int(n as i64), CycloElem::one(), "ζ_{n}^{n}");
            // Φ_N(ζ) = 0
            let phi = cyclotomic_poly(n);
            let mut acc = CycloElem::zero();
            for (k, &c) in phi.iter().enumerate() {
                acc = acc + CycloElem::from_rational(n, Rational::from_integer(c)) * z.pow_int(k as i64);
            }
            assert!(acc.is_zero(), "Φ_{n}(ζ) != 0");
        }
    }

    #[test]
    fn mixed_conductors_lift() {
        let i = CycloElem::zeta(4);
        let w = CycloElem::zeta(3);
        let p = &i * &w;
        assert_eq!(p.conductor(), 12);
        assert_eq!(p.pow_int(12), CycloElem::one());
        assert_eq!(CycloElem::zeta(6).pow_int(2), w);
        assert_eq!(-CycloElem::one(), CycloElem::zeta(2));
    }

    #[test]
    fn inverses() {
        let x = CycloElem::new(5, (1..=4).map(Rational::from_integer).collect());
        let y = x.inverse().unwrap();
        assert_eq!(&x * &y, CycloElem::one());
        assert!(CycloElem::from_rational(7, Rational::zero()).inverse().is_none());
    }

    #[test]
    fn roots_of_unity_in_odd_conductor() {
        // Q(ζ_3) contains the sixth roots of unity
        let r = CycloElem::roots_of_unity(3);
        assert_eq!(r.len(), 6);
        assert!(r.iter().all(|x| x.is_root_of_unity()));
        assert!(!CycloElem::from_int(2).is_root_of_unity());
    }
}
