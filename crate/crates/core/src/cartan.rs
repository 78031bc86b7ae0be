//! Generalized Cartan matrices, data of Cartan type over an abelian group,
//! symmetrizers, the quadratic form `Q`, integer relation lattices among
//! characters, and an audit of the hypotheses under which finite-dimensional
//! simple modules of an algebra with skew weights are one-dimensional.

use std::collections::{BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groups::{AbelianGroup, Character, GroupElem};
use crate::linalg::Matrix;
use crate::modules::{find_annihilated_weight_vector, is_simple, skew_weight_check, Representation};
use crate::report::Report;
use crate::scalars::{CycloElem, Rational, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CartanMatrix {
    a: Vec<Vec<i64>>,
}

impl CartanMatrix {
    /// Wrap a square integer matrix. The Cartan axioms are not enforced
    /// here; see [`verify_cartan_matrix`].
    pub fn new(a: Vec<Vec<i64>>) -> Result<Self> {
        let n = a.len();
        if let Some(r) = a.iter().position(|r| r.len() != n) {
            return Err(Error::Shape(format!("row {r} of a {n}×{n} matrix has length {}", a[r].len())));
        }
        Ok(CartanMatrix { a })
    }

    pub fn rank(&self) -> usize {
        self.a.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.a[i][j]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.a
    }

    pub fn a1() -> Self {
        CartanMatrix { a: vec![vec![2]] }
    }

    pub fn a2() -> Self {
        CartanMatrix { a: vec![vec![2, -1], vec![-1, 2]] }
    }

    pub fn b2() -> Self {
        CartanMatrix { a: vec![vec![2, -2], vec![-1, 2]] }
    }

    pub fn g2() -> Self {
        CartanMatrix { a: vec![vec![2, -1], vec![-3, 2]] }
    }

    /// Type `A_n`, a path.
    pub fn a_n(n: usize) -> Self {
        CartanMatrix {
            a: (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| match i.abs_diff(j) {
                            0 => 2,
                            1 => -1,
                            _ => 0,
                        })
                        .collect()
                })
                .collect(),
        }
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let (n, m) = (self.rank(), other.rank());
        let a = (0..n + m)
            .map(|i| {
                (0..n + m)
                    .map(|j| match (i < n, j < n) {
                        (true, true) => self.a[i][j],
                        (false, false) => other.a[i - n][j - n],
                        _ => 0,
                    })
                    .collect()
            })
            .collect();
        CartanMatrix { a }
    }
}

pub fn verify_cartan_matrix(a: &CartanMatrix) -> Report {
    let n = a.rank();
    let mut rep = Report::new();
    for i in 0..n {
        rep.check(a.a[i][i] == 2, || format!("a_{i}{i} = {} != 2", a.a[i][i]));
        for j in 0..n {
            if i == j {
                continue;
            }
            rep.check(a.a[i][j] <= 0, || format!("off-diagonal a_{i}{j} = {} is positive", a.a[i][j]));
            rep.check((a.a[i][j] == 0) == (a.a[j][i] == 0), || {
                format!("a_{i}{j} = {} but a_{j}{i} = {}", a.a[i][j], a.a[j][i])
            });
        }
    }
    rep
}

/// Components of the graph with an edge `i - j` whenever `a_ij ≠ 0`, each
/// sorted, listed by smallest element.
pub fn connected_components(a: &CartanMatrix) -> Vec<Vec<usize>> {
    let n = a.rank();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut queue = VecDeque::from([s]);
        while let Some(i) = queue.pop_front() {
            for j in 0..n {
                if !seen[j] && (a.a[i][j] != 0 || a.a[j][i] != 0) {
                    seen[j] = true;
                    comp.push(j);
                    queue.push_back(j);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Positive integers `d` with `d_i a_ij = d_j a_ji`, primitive on each
/// component.
pub fn symmetrize(a: &CartanMatrix) -> Result<Vec<i64>> {
    let n = a.rank();
    let mut d = vec![Rational::zero(); n];
    for comp in connected_components(a) {
        d[comp[0]] = Rational::one();
        let mut queue = VecDeque::from([comp[0]]);
        let mut set = vec![false; n];
        set[comp[0]] = true;
        while let Some(i) = queue.pop_front() {
            for j in 0..n {
                if set[j] || a.a[i][j] == 0 || a.a[j][i] == 0 {
                    continue;
                }
                d[j] = d[i].clone() * &Rational::new(a.a[i][j], a.a[j][i]);
                set[j] = true;
                queue.push_back(j);
            }
        }
        let den = comp.iter().fold(BigInt::one(), |l, &i| l.lcm(&d[i].denom()));
        let scaled: Vec<BigInt> = comp.iter().map(|&i| d[i].numer() * (&den / d[i].denom())).collect();
        let g = scaled.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        for (&i, x) in comp.iter().zip(&scaled) {
            let v = (x / &g).to_i64().ok_or_else(|| Error::Invalid("symmetrizer overflows i64".into()))?;
            d[i] = Rational::from_integer(v);
        }
    }
    for i in 0..n {
        for j in 0..n {
            if d[i].clone() * &Rational::from_integer(a.a[i][j]) != d[j].clone() * &Rational::from_integer(a.a[j][i]) {
                return Err(Error::NotSymmetrizable(format!(
                    "no d with d_{i} a_{i}{j} = d_{j} a_{j}{i} (a_{i}{j} = {}, a_{j}{i} = {})",
                    a.a[i][j], a.a[j][i]
                )));
            }
        }
    }
    Ok(d.iter().map(|x| x.numer().to_i64().expect("checked above")).collect())
}

/// `B = (d_i a_ij)`.
pub fn symmetrized(d: &[i64], a: &CartanMatrix) -> Vec<Vec<i64>> {
    (0..a.rank()).map(|i| (0..a.rank()).map(|j| d[i] * a.a[i][j]).collect()).collect()
}

fn leading_minors(b: &[Vec<i64>]) -> Vec<i64> {
    (1..=b.len())
        .map(|k| {
            let m = Matrix::from_fn(k, k, |i, j| Rational::from_integer(b[i][j]));
            m.det().numer().to_i64().expect("minor fits in i64")
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiniteTypeWitness {
    pub finite: bool,
    /// Symmetrizers, positive and primitive on each component.
    pub d: Vec<i64>,
    /// Leading principal minors of `(d_i a_ij)`.
    pub minors: Vec<i64>,
    /// First non-positive minor (1-based size), when not of finite type.
    pub failing_minor: Option<usize>,
    /// Dynkin label, when of finite type.
    pub label: Option<String>,
}

/// Finite type: symmetrizable with `(d_i a_ij)` positive definite.
/// A non-symmetrizable input is an [`Error::NotSymmetrizable`].
pub fn is_finite_type(a: &CartanMatrix) -> Result<FiniteTypeWitness> {
    verify_cartan_matrix(a).into_result("Cartan matrix")?;
    let d = symmetrize(a)?;
    let minors = leading_minors(&symmetrized(&d, a));
    let failing_minor = minors.iter().position(|&m| m <= 0).map(|k| k + 1);
    let finite = failing_minor.is_none();
    let label =
        finite.then(|| connected_components(a).iter().map(|c| dynkin_label(a, &d, c)).collect::<Vec<_>>().join("×"));
    Ok(FiniteTypeWitness { finite, d, minors, failing_minor, label })
}

/// Label of a connected finite-type component.
fn dynkin_label(a: &CartanMatrix, d: &[i64], comp: &[usize]) -> String {
    let n = comp.len();
    let mult = |i: usize, j: usize| a.a[comp[i]][comp[j]] * a.a[comp[j]][comp[i]];
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    if pairs.iter().any(|&(i, j)| mult(i, j) == 3) {
        return "G2".into();
    }
    if pairs.iter().any(|&(i, j)| mult(i, j) == 2) {
        if n == 2 {
            return "B2".into();
        }
        let min = comp.iter().map(|&i| d[i]).min().unwrap_or(1);
        let short = comp.iter().filter(|&&i| d[i] == min).count();
        return if short == 1 { format!("B{n}") } else { format!("C{n}") };
    }
    let deg = |i: usize| (0..n).filter(|&j| j != i && a.a[comp[i]][comp[j]] != 0).count();
    let Some(center) = (0..n).find(|&i| deg(i) == 3) else {
        return format!("A{n}");
    };
    let mut arms: Vec<usize> = (0..n)
        .filter(|&j| j != center && a.a[comp[center]][comp[j]] != 0)
        .map(|start| {
            let (mut prev, mut cur, mut len) = (center, start, 1);
            while let Some(next) = (0..n).find(|&k| k != prev && k != cur && a.a[comp[cur]][comp[k]] != 0) {
                prev = cur;
                cur = next;
                len += 1;
            }
            len
        })
        .collect();
    arms.sort_unstable();
    match arms[..] {
        [1, 1, _] => format!("D{n}"),
        [1, 2, 2] => "E6".into(),
        [1, 2, 3] => "E7".into(),
        [1, 2, 4] => "E8".into(),
        _ => format!("?{n}"),
    }
}

/// `Σ 2 x_i² d_i + Σ_{i<j} 2 x_i x_j d_i a_ij`.
pub fn quadratic_form_q(d: &[i64], a: &CartanMatrix, k: &[i64]) -> i64 {
    let n = a.rank();
    let mut q = 0i128;
    for i in 0..n {
        q += 2 * (k[i] as i128).pow(2) * d[i] as i128;
        for j in i + 1..n {
            q += 2 * k[i] as i128 * k[j] as i128 * d[i] as i128 * a.a[i][j] as i128;
        }
    }
    i64::try_from(q).expect("Q value fits in i64")
}

/// Positive definiteness of `Q`, by the leading principal minors of the
/// symmetric matrix `(d_i a_ij)`. False if that matrix is not symmetric.
pub fn is_q_positive_definite(d: &[i64], a: &CartanMatrix) -> bool {
    let b = symmetrized(d, a);
    let n = b.len();
    if (0..n).any(|i| (0..n).any(|j| b[i][j] != b[j][i])) {
        return false;
    }
    leading_minors(&b).iter().all(|&m| m > 0)
}

/// `D(Γ, (g_i), (χ_i), (a_ij))` with `q_ij = χ_j(g_i)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CartanDatum<F: Field> {
    pub group: AbelianGroup,
    pub g: Vec<GroupElem>,
    pub chi: Vec<Character<F>>,
    pub a: CartanMatrix,
}

impl<F: Field> CartanDatum<F> {
    pub fn new(group: AbelianGroup, g: Vec<GroupElem>, chi: Vec<Character<F>>, a: CartanMatrix) -> Result<Self> {
        let n = a.rank();
        if g.len() != n || chi.len() != n {
            return Err(Error::Shape(format!(
                "{} group elements and {} characters for a rank {n} matrix",
                g.len(),
                chi.len()
            )));
        }
        let k = group.ngens();
        if g.iter().any(|x| x.exponents().len() != k) || chi.iter().any(|c| c.values().len() != k) {
            return Err(Error::Shape(format!("elements and characters must have {k} coordinates")));
        }
        Ok(CartanDatum { group, g, chi, a })
    }

    pub fn rank(&self) -> usize {
        self.a.rank()
    }

    pub fn q(&self, i: usize, j: usize) -> F {
        self.chi[j].eval(&self.g[i]).expect("shapes checked on construction")
    }

    /// `q_i = q_ii`.
    pub fn q_diag(&self) -> Vec<F> {
        (0..self.rank()).map(|i| self.q(i, i)).collect()
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        connected_components(&self.a)
    }
}

/// Cartan type: `q_ij q_ji = q_ii^{a_ij}`, `q_ii ≠ 1`, and the consequence
/// `q_i^{a_ij} = q_j^{a_ji}`.
pub fn verify_datum<F: Field>(d: &CartanDatum<F>) -> Report {
    let mut rep = Report::new();
    rep.merge("Cartan matrix", verify_cartan_matrix(&d.a));
    let n = d.rank();
    let qd = d.q_diag();
    for i in 0..n {
        rep.check(!qd[i].is_one(), || format!("q_{i}{i} = 1"));
        for j in 0..n {
            let lhs = d.q(i, j) * &d.q(j, i);
            rep.check(lhs == qd[i].pow_int(d.a.a[i][j]), || format!("q_{i}{j} q_{j}{i} != q_{i}{i}^{}", d.a.a[i][j]));
            rep.check(qd[i].pow_int(d.a.a[i][j]) == qd[j].pow_int(d.a.a[j][i]), || {
                format!("q_{i}^{} != q_{j}^{}", d.a.a[i][j], d.a.a[j][i])
            });
        }
    }
    rep
}

/// Shortest path `i = i_1, …, i_t = j` with nonzero consecutive entries.
fn path(a: &CartanMatrix, i: usize, j: usize) -> Option<Vec<usize>> {
    let n = a.rank();
    let mut prev = vec![usize::MAX; n];
    prev[i] = i;
    let mut queue = VecDeque::from([i]);
    while let Some(x) = queue.pop_front() {
        if x == j {
            let mut p = vec![j];
            while *p.last().unwrap() != i {
                p.push(prev[*p.last().unwrap()]);
            }
            p.reverse();
            return Some(p);
        }
        for y in 0..n {
            if prev[y] == usize::MAX && a.a[x][y] != 0 {
                prev[y] = x;
                queue.push_back(y);
            }
        }
    }
    None
}

/// `(a(i,j), b(i,j))`: products of `a_{i_l i_{l+1}}` and of
/// `a_{i_{l+1} i_l}` along a connecting path, after checking
/// `q_i^{a(i,j)} = q_j^{b(i,j)}`. For `i = j` this is `(1, 1)`.
pub fn path_exponents<F: Field>(d: &CartanDatum<F>, i: usize, j: usize) -> Result<(i64, i64)> {
    let n = d.rank();
    if i >= n || j >= n {
        return Err(Error::Shape(format!("indices {i}, {j} out of range for rank {n}")));
    }
    let p = path(&d.a, i, j).ok_or_else(|| Error::Invalid(format!("{i} is not connected to {j}")))?;
    let (mut x, mut y) = (1i64, 1i64);
    for w in p.windows(2) {
        x = x.checked_mul(d.a.a[w[0]][w[1]]).ok_or_else(|| Error::Invalid("path exponent overflows".into()))?;
        y = y.checked_mul(d.a.a[w[1]][w[0]]).ok_or_else(|| Error::Invalid("path exponent overflows".into()))?;
    }
    if d.q(i, i).pow_int(x) != d.q(j, j).pow_int(y) {
        return Err(Error::CheckFailed(format!("q_{i}^{x} != q_{j}^{y}")));
    }
    Ok((x, y))
}

/// `x_i = ω_i · q_base^{L_i}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QPowers {
    #[serde(serialize_with = "crate::report::ser_display")]
    pub q_base: Scalar,
    #[serde(serialize_with = "crate::report::ser_display_vec")]
    pub omegas: Vec<Scalar>,
    pub exponents: Vec<i64>,
}

/// A relation `x_i^m = x_j^n` between two values.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PowerRelation {
    pub i: usize,
    pub j: usize,
    pub m: i64,
    pub n: i64,
}

/// Write every value as a root of unity times a nonzero power of a common
/// base.
///
/// The relations must be exact and must connect all values. The base
/// defaults to `q`; a supplied base must be a monomial `c·q^s` whose powers
/// reach every value. When no power of the base works the required root is
/// named in the error.
pub fn q_power_decomposition(
    values: &[Scalar],
    relations: &[PowerRelation],
    q_base: Option<&Scalar>,
) -> Result<QPowers> {
    let n = values.len();
    if n == 0 {
        return Err(Error::Invalid("no values".into()));
    }
    for (i, x) in values.iter().enumerate() {
        if x.is_zero() || x.is_root_of_unity() {
            return Err(Error::Invalid(format!("x_{i} = {x} is zero or a root of unity")));
        }
    }
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut product: i64 = 1;
    for _ in 0..n {
        for r in relations {
            if r.i >= n || r.j >= n || r.m == 0 || r.n == 0 {
                return Err(Error::Invalid(format!("bad relation {r:?}")));
            }
            if seen[r.i] != seen[r.j] {
                seen[r.i] = true;
                seen[r.j] = true;
            }
        }
    }
    for r in relations {
        if values[r.i].pow_int(r.m) != values[r.j].pow_int(r.n) {
            return Err(Error::CheckFailed(format!("x_{}^{} != x_{}^{}", r.i, r.m, r.j, r.n)));
        }
        product = product.saturating_mul(r.n.abs());
    }
    if let Some(i) = seen.iter().position(|s| !s) {
        return Err(Error::Invalid(format!("x_{i} is not linked to x_0 by the relations")));
    }
    let base = q_base.cloned().unwrap_or_else(Scalar::q);
    let (c0, s) = base
        .as_monomial()
        .filter(|(_, s)| *s != 0)
        .ok_or_else(|| Error::Invalid(format!("base {base} is not of the form c·q^s with s ≠ 0")))?;
    let missing = || Error::RootNotInField(format!("({})^(1/{product})", values[0]));
    let mut omegas = Vec::with_capacity(n);
    let mut exponents = Vec::with_capacity(n);
    for x in values {
        let (c, k) = x.as_monomial().ok_or_else(missing)?;
        if k % s != 0 {
            return Err(missing());
        }
        let l = k / s;
        let omega = Scalar::from_cyclo(c) / Scalar::from_cyclo(c0.clone()).pow_int(l);
        if !omega.is_root_of_unity() {
            return Err(missing());
        }
        if omega.clone() * &base.pow_int(l) != *x {
            return Err(Error::CheckFailed(format!("{x} != ({omega})·({base})^{l}")));
        }
        omegas.push(omega);
        exponents.push(l);
    }
    Ok(QPowers { q_base: base, omegas, exponents })
}

/// `q_i = ω_i · q_base^{d_i · scale}` with `d_i a_ij = d_j a_ji`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SymmetrizerResult {
    pub d: Vec<i64>,
    #[serde(serialize_with = "crate::report::ser_display")]
    pub q_base: Scalar,
    #[serde(serialize_with = "crate::report::ser_display_vec")]
    pub omegas: Vec<Scalar>,
    pub exponents: Vec<i64>,
    pub scale: i64,
}

/// Symmetrizers of a connected datum with no `q_i` a root of unity, read
/// off from the exponents of the `q_i` over a common base.
pub fn symmetrizers(d: &CartanDatum<Scalar>, q_base: Option<&Scalar>) -> Result<SymmetrizerResult> {
    let comps = d.components();
    if comps.len() != 1 {
        return Err(Error::Invalid(format!("datum has {} connected components", comps.len())));
    }
    let qd = d.q_diag();
    if let Some(i) = qd.iter().position(|x| x.is_root_of_unity()) {
        return Err(Error::Invalid(format!("q_{i} = {} is a root of unity", qd[i])));
    }
    let n = d.rank();
    let relations: Vec<PowerRelation> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j && d.a.a[i][j] != 0)
        .map(|(i, j)| PowerRelation { i, j, m: d.a.a[i][j], n: d.a.a[j][i] })
        .collect();
    let qp = q_power_decomposition(&qd, &relations, q_base)?;
    let g = qp.exponents.iter().fold(0i64, |g, x| g.gcd(x));
    let scale = if qp.exponents[0] < 0 { -g } else { g };
    let dv: Vec<i64> = qp.exponents.iter().map(|l| l / scale).collect();
    for i in 0..n {
        if qd[i] != qp.omegas[i].clone() * &qp.q_base.pow_int(dv[i] * scale) {
            return Err(Error::CheckFailed(format!("q_{i} != ω_{i} q^(d_{i}·{scale})")));
        }
        for j in 0..n {
            if dv[i] * d.a.a[i][j] != dv[j] * d.a.a[j][i] {
                return Err(Error::CheckFailed(format!("d_{i} a_{i}{j} != d_{j} a_{j}{i}")));
            }
        }
    }
    Ok(SymmetrizerResult { d: dv, q_base: qp.q_base, omegas: qp.omegas, exponents: qp.exponents, scale })
}

/// Diagonal form `P·C·V = D` over the integers; only `V` is kept.
struct Smith {
    diag: Vec<BigInt>,
    v: Vec<Vec<BigInt>>,
}

fn smith(mut c: Vec<Vec<BigInt>>, ncols: usize) -> Smith {
    let nrows = c.len();
    let mut v: Vec<Vec<BigInt>> =
        (0..ncols).map(|i| (0..ncols).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect();
    let swap_cols = |c: &mut Vec<Vec<BigInt>>, v: &mut Vec<Vec<BigInt>>, a: usize, b: usize| {
        for row in c.iter_mut().chain(v.iter_mut()) {
            row.swap(a, b);
        }
    };
    // col_b -= k·col_a
    let sub_col = |c: &mut Vec<Vec<BigInt>>, v: &mut Vec<Vec<BigInt>>, a: usize, b: usize, k: &BigInt| {
        for row in c.iter_mut().chain(v.iter_mut()) {
            let t = &row[a] * k;
            row[b] -= t;
        }
    };
    let mut diag = Vec::new();
    for t in 0..nrows.min(ncols) {
        loop {
            let pivot = (t..nrows)
                .flat_map(|i| (t..ncols).map(move |j| (i, j)))
                .filter(|&(i, j)| !c[i][j].is_zero())
                .min_by_key(|&(i, j)| c[i][j].abs());
            let Some((pi, pj)) = pivot else {
                return Smith { diag, v };
            };
            c.swap(t, pi);
            swap_cols(&mut c, &mut v, t, pj);
            let mut clean = true;
            for j in t + 1..ncols {
                let k = c[t][j].div_floor(&c[t][t]);
                if !k.is_zero() {
                    sub_col(&mut c, &mut v, t, j, &k);
                }
                clean &= c[t][j].is_zero();
            }
            for i in t + 1..nrows {
                let k = c[i][t].div_floor(&c[t][t]);
                if !k.is_zero() {
                    for j in t..ncols {
                        let x = &c[t][j] * &k;
                        c[i][j] -= x;
                    }
                }
                clean &= c[i][t].is_zero();
            }
            if !clean {
                continue;
            }
            // Divisibility: fold an offending row into row t and redo.
            let bad = (t + 1..nrows).find(|&i| (t + 1..ncols).any(|j| !(&c[i][j] % &c[t][t]).is_zero()));
            match bad {
                Some(i) => {
                    for j in t..ncols {
                        let x = c[i][j].clone();
                        c[t][j] += x;
                    }
                }
                None => break,
            }
        }
        diag.push(c[t][t].abs());
    }
    Smith { diag, v }
}

/// Row Hermite form of integer vectors, zero rows dropped.
fn hermite(mut rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..ncols {
        while let Some(p) = (r..rows.len()).filter(|&i| !rows[i][c].is_zero()).min_by_key(|&i| rows[i][c].abs()) {
            rows.swap(r, p);
            let mut done = true;
            for i in r + 1..rows.len() {
                let k = rows[i][c].div_floor(&rows[r][c]);
                for j in c..ncols {
                    let x = &rows[r][j] * &k;
                    rows[i][j] -= x;
                }
                done &= rows[i][c].is_zero();
            }
            if done {
                if rows[r][c].is_negative() {
                    for x in rows[r].iter_mut() {
                        *x = -x.clone();
                    }
                }
                for i in 0..r {
                    let k = rows[i][c].div_floor(&rows[r][c]);
                    for j in c..ncols {
                        let x = &rows[r][j] * &k;
                        rows[i][j] -= x;
                    }
                }
                r += 1;
                break;
            }
        }
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    rows
}

/// A sublattice of `Z^θ` with a Hermite basis, plus the invariant factors
/// of the defining constraint system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationLattice {
    pub ambient: usize,
    pub basis: Vec<Vec<i64>>,
    pub invariant_factors: Vec<i64>,
}

impl RelationLattice {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Membership by solving in the Hermite basis.
    pub fn contains(&self, k: &[i64]) -> bool {
        let mut rest: Vec<i64> = k.to_vec();
        for b in &self.basis {
            let Some(p) = b.iter().position(|x| *x != 0) else { continue };
            if rest[p] % b[p] != 0 {
                return false;
            }
            let c = rest[p] / b[p];
            for (r, x) in rest.iter_mut().zip(b) {
                *r -= c * x;
            }
        }
        rest.iter().all(|x| *x == 0)
    }
}

/// `{k ∈ Z^θ : Σ_i k_i c_i ≡ 0 (mod m)}` over all constraints `(c, m)`,
/// with `m = 0` for an equality.
pub fn integer_kernel(theta: usize, constraints: &[(Vec<i64>, i64)]) -> Result<RelationLattice> {
    let live: Vec<&(Vec<i64>, i64)> =
        constraints.iter().filter(|(c, m)| c.iter().any(|x| *x != 0) && *m != 1).collect();
    let slack: Vec<usize> = live.iter().enumerate().filter(|(_, (_, m))| *m != 0).map(|(i, _)| i).collect();
    let ncols = theta + slack.len();
    let rows: Vec<Vec<BigInt>> = live
        .iter()
        .enumerate()
        .map(|(r, (c, m))| {
            if c.len() != theta {
                return Err(Error::Shape(format!("constraint has {} coefficients, expected {theta}", c.len())));
            }
            let mut row: Vec<BigInt> = c.iter().map(|&x| BigInt::from(x)).collect();
            row.extend(slack.iter().map(|&s| if s == r { BigInt::from(*m) } else { BigInt::zero() }));
            Ok(row)
        })
        .collect::<Result<_>>()?;
    let s = smith(rows, ncols);
    let rank = s.diag.len();
    let kernel: Vec<Vec<BigInt>> = (rank..ncols).map(|j| (0..theta).map(|i| s.v[i][j].clone()).collect()).collect();
    let to_i64 = |x: &BigInt| x.to_i64().ok_or_else(|| Error::Invalid("lattice entry overflows i64".into()));
    let basis =
        hermite(kernel).iter().map(|r| r.iter().map(to_i64).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
    let invariant_factors = s.diag.iter().map(to_i64).collect::<Result<Vec<_>>>()?;
    Ok(RelationLattice { ambient: theta, basis, invariant_factors })
}

/// `(ω-exponent mod M, q-exponent)` for `ω q^e` with `ω` a root of unity,
/// `ω = ζ_M^t`.
fn exponent_coords(x: &Scalar, modulus: u32) -> Option<(i64, i64)> {
    let (c, e) = x.as_monomial()?;
    (0..modulus as i64).find(|&t| CycloElem::zeta_pow(modulus, t) == c).map(|t| (t, e))
}

/// Integer vectors `k` with `χ_1^{k_1}⋯χ_θ^{k_θ} = 1`.
///
/// Every character value must be `ω q^e` with `ω` a root of unity; the
/// `q`-exponents give equalities and the `ω`-exponents congruences.
pub fn character_relation_lattice(chars: &[Character<Scalar>], group: &AbelianGroup) -> Result<RelationLattice> {
    let theta = chars.len();
    let r = group.ngens();
    if chars.iter().any(|c| c.values().len() != r) {
        return Err(Error::Shape(format!("characters must have {r} values")));
    }
    let modulus = chars
        .iter()
        .flat_map(|c| c.values())
        .fold(1u32, |m, v| m.lcm(&(CycloElem::unity_exponent(v.conductor()) as u32)));
    let mut tor = vec![vec![0i64; theta]; r];
    let mut free = vec![vec![0i64; theta]; r];
    for (i, c) in chars.iter().enumerate() {
        for (k, v) in c.values().iter().enumerate() {
            let (t, e) = exponent_coords(v, modulus)
                .ok_or_else(|| Error::Invalid(format!("χ_{i} value {v} is not a root of unity times a power of q")))?;
            tor[k][i] = t;
            free[k][i] = e;
        }
    }
    let constraints: Vec<(Vec<i64>, i64)> =
        free.into_iter().map(|c| (c, 0)).chain(tor.into_iter().map(|c| (c, modulus as i64))).collect();
    integer_kernel(theta, &constraints)
}

/// Integer vectors `k` with `g_1^{k_1}⋯g_θ^{k_θ} = 1` in the group.
pub fn group_relation_lattice(g: &[GroupElem], group: &AbelianGroup) -> Result<RelationLattice> {
    let theta = g.len();
    let constraints: Vec<(Vec<i64>, i64)> = (0..group.ngens())
        .map(|k| {
            let col = g.iter().map(|x| x.exponents()[k]).collect();
            (col, group.order_at(k).map_or(0, |n| n as i64))
        })
        .collect();
    integer_kernel(theta, &constraints)
}

/// `Σ_j c_j · x ≥ rhs`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Ineq {
    c: Vec<Rational>,
    rhs: Rational,
}

impl Ineq {
    /// Scale so the first nonzero coefficient is ±1, for deduplication.
    fn normalized(mut self) -> Self {
        if let Some(p) = self.c.iter().find(|x| !x.is_zero()).cloned() {
            let s = p.abs();
            for x in self.c.iter_mut() {
                *x = x.clone() / &s;
            }
            self.rhs = self.rhs / &s;
        }
        self
    }
}

/// Fourier–Motzkin feasibility of `{x : every inequality holds}`, with a
/// rational witness.
fn fourier_motzkin(nvars: usize, system: Vec<Ineq>) -> Option<Vec<Rational>> {
    let mut stages = vec![system];
    for v in (0..nvars).rev() {
        let cur = stages.last().unwrap();
        let (mut pos, mut neg, mut keep) = (Vec::new(), Vec::new(), BTreeSet::new());
        for q in cur {
            match q.c[v].signum() {
                1 => pos.push(q),
                -1 => neg.push(q),
                _ => {
                    keep.insert(q.clone());
                }
            }
        }
        for p in &pos {
            for n in &neg {
                let (a, b) = (p.c[v].clone(), -n.c[v].clone());
                let c: Vec<Rational> = p.c.iter().zip(&n.c).map(|(x, y)| x.clone() * &b + &(y.clone() * &a)).collect();
                let rhs = p.rhs.clone() * &b + &(n.rhs.clone() * &a);
                keep.insert(Ineq { c, rhs }.normalized());
            }
        }
        stages.push(keep.into_iter().collect());
    }
    if stages.last().unwrap().iter().any(|q| q.rhs > Rational::zero()) {
        return None;
    }
    let mut x = vec![Rational::zero(); nvars];
    for v in 0..nvars {
        let (mut lo, mut hi): (Option<Rational>, Option<Rational>) = (None, None);
        for q in &stages[nvars - 1 - v] {
            let coef = &q.c[v];
            if coef.is_zero() {
                continue;
            }
            let rest = (0..v).fold(q.rhs.clone(), |acc, u| acc - &(q.c[u].clone() * &x[u]));
            let bound = rest / coef;
            if coef.signum() > 0 {
                lo = Some(lo.map_or(bound.clone(), |l| l.max(bound)));
            } else {
                hi = Some(hi.map_or(bound.clone(), |h| h.min(bound)));
            }
        }
        x[v] = lo.or(hi).unwrap_or_else(Rational::zero);
    }
    Some(x)
}

/// A nonzero lattice vector with all coordinates nonnegative, or `None`
/// when the lattice meets the nonnegative orthant only in zero.
///
/// Decided exactly by rational linear programming over the lattice
/// coordinates; a rational solution is scaled to an integral one.
pub fn has_nonneg_relation(lattice: &RelationLattice) -> Option<Vec<i64>> {
    let (r, theta) = (lattice.rank(), lattice.ambient);
    if r == 0 {
        return None;
    }
    let coord = |i: usize| -> Vec<Rational> { (0..r).map(|j| Rational::from_integer(lattice.basis[j][i])).collect() };
    let mut system: Vec<Ineq> = (0..theta).map(|i| Ineq { c: coord(i), rhs: Rational::zero() }).collect();
    let total: Vec<Rational> = (0..r).map(|j| Rational::from_integer(lattice.basis[j].iter().sum::<i64>())).collect();
    system.push(Ineq { c: total, rhs: Rational::one() });
    let c = fourier_motzkin(r, system)?;
    let den = c.iter().fold(BigInt::one(), |l, x| l.lcm(&x.denom()));
    let mut ci: Vec<BigInt> = c.iter().map(|x| x.numer() * (&den / x.denom())).collect();
    let g = ci.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    for x in ci.iter_mut() {
        *x /= &g;
    }
    let k: Vec<BigInt> =
        (0..theta).map(|i| (0..r).fold(BigInt::zero(), |s, j| s + &ci[j] * lattice.basis[j][i])).collect();
    let k: Vec<i64> = k.iter().map(|x| x.to_i64().expect("relation fits in i64")).collect();
    debug_assert!(k.iter().all(|x| *x >= 0) && k.iter().any(|x| *x != 0));
    Some(k)
}

/// Search lattice combinations with coefficients in `[-bound, bound]` for a
/// nonzero nonnegative vector.
pub fn nonneg_relation_by_enumeration(lattice: &RelationLattice, bound: i64) -> Option<Vec<i64>> {
    let r = lattice.rank();
    let mut c = vec![-bound; r];
    if r == 0 {
        return None;
    }
    loop {
        let k: Vec<i64> = (0..lattice.ambient).map(|i| (0..r).map(|j| c[j] * lattice.basis[j][i]).sum()).collect();
        if k.iter().all(|x| *x >= 0) && k.iter().any(|x| *x != 0) {
            return Some(k);
        }
        let mut p = 0;
        loop {
            if p == r {
                return None;
            }
            if c[p] < bound {
                c[p] += 1;
                break;
            }
            c[p] = -bound;
            p += 1;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub name: String,
    pub holds: bool,
    pub witness: String,
}

impl Verdict {
    fn new(name: &str, holds: bool, witness: impl Into<String>) -> Self {
        Verdict { name: name.into(), holds, witness: witness.into() }
    }
}

/// Verdicts on the hypotheses, consequences derived from them, and (with a
/// representation) the conclusion tested on that module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CartanAudit {
    pub hypotheses: Vec<Verdict>,
    pub consequences: Vec<Verdict>,
    pub conclusion: Vec<Verdict>,
}

impl CartanAudit {
    pub fn hypotheses_hold(&self) -> bool {
        self.hypotheses.iter().all(|v| v.holds)
    }

    pub fn verdict(&self, name: &str) -> Option<&Verdict> {
        self.hypotheses.iter().chain(&self.consequences).chain(&self.conclusion).find(|v| v.name == name)
    }

    /// Failures among every verdict.
    pub fn report(&self) -> Report {
        self.hypotheses
            .iter()
            .chain(&self.consequences)
            .chain(&self.conclusion)
            .filter(|v| !v.holds)
            .map(|v| format!("{}: {}", v.name, v.witness))
            .collect()
    }
}

/// Check whether a datum meets the hypotheses for finite-dimensional simple
/// modules to be one-dimensional: valid Cartan type, each component of
/// finite type, no `q_i` a root of unity, and generators in different
/// components declared to skew commute.
///
/// With the hypotheses in place the consequences are checked too: positive
/// definite `Q` and no nonnegative character relation. A supplied
/// representation is tested for skew weights, a one-dimensional submodule,
/// and, if simple, dimension one.
pub fn simple_modules_audit(
    d: &CartanDatum<Scalar>,
    skew_commuting: &[(usize, usize)],
    rep: Option<&Representation<Scalar>>,
) -> CartanAudit {
    let mut hyp = Vec::new();
    let dv = verify_datum(d);
    hyp.push(Verdict::new("cartan_type", dv.is_ok(), dv.to_string()));

    let comps = d.components();
    hyp.push(Verdict::new("components", true, format!("{comps:?}")));

    let finite = match is_finite_type(&d.a) {
        Ok(w) if w.finite => {
            Verdict::new("finite_type", true, format!("d = {:?}, type {}", w.d, w.label.unwrap_or_default()))
        }
        Ok(w) => Verdict::new(
            "finite_type",
            false,
            format!(
                "d = {:?}, leading minor {} is {}",
                w.d,
                w.failing_minor.unwrap(),
                w.minors[w.failing_minor.unwrap() - 1]
            ),
        ),
        Err(e) => Verdict::new("finite_type", false, e.to_string()),
    };
    hyp.push(finite);

    let qd = d.q_diag();
    let roots: Vec<usize> = (0..d.rank()).filter(|&i| qd[i].is_root_of_unity()).collect();
    hyp.push(Verdict::new(
        "not_roots_of_unity",
        roots.is_empty(),
        if roots.is_empty() {
            String::new()
        } else {
            roots.iter().map(|&i| format!("q_{i} = {}", qd[i])).collect::<Vec<_>>().join(", ")
        },
    ));

    let comp_of: Vec<usize> = {
        let mut c = vec![0; d.rank()];
        for (k, comp) in comps.iter().enumerate() {
            for &i in comp {
                c[i] = k;
            }
        }
        c
    };
    let declared = |i: usize, j: usize| skew_commuting.iter().any(|&(x, y)| (x, y) == (i, j) || (x, y) == (j, i));
    let missing: Vec<String> = (0..d.rank())
        .flat_map(|i| (i + 1..d.rank()).map(move |j| (i, j)))
        .filter(|&(i, j)| comp_of[i] != comp_of[j] && !declared(i, j))
        .map(|(i, j)| format!("({i},{j})"))
        .collect();
    hyp.push(Verdict::new("cross_component_skew_commute", missing.is_empty(), missing.join(" ")));

    let mut cons = Vec::new();
    if hyp.iter().all(|v| v.holds) {
        for comp in &comps {
            let sub = restrict_datum(d, comp);
            let tag = format!("{comp:?}");
            match symmetrizers(&sub, None) {
                Ok(s) => {
                    cons.push(Verdict::new("symmetrizers", true, format!("{tag}: d = {:?}", s.d)));
                    let pd = is_q_positive_definite(&s.d, &sub.a);
                    cons.push(Verdict::new("q_positive_definite", pd, tag.clone()));
                }
                Err(e) => cons.push(Verdict::new("symmetrizers", false, format!("{tag}: {e}"))),
            }
            match character_relation_lattice(&sub.chi, &sub.group) {
                Ok(l) => {
                    let nn = has_nonneg_relation(&l);
                    cons.push(Verdict::new(
                        "no_nonneg_relation",
                        nn.is_none(),
                        match nn {
                            Some(k) => format!("{tag}: χ^{k:?} = 1"),
                            None => format!("{tag}: relation lattice rank {}", l.rank()),
                        },
                    ));
                }
                Err(e) => cons.push(Verdict::new("no_nonneg_relation", false, format!("{tag}: {e}"))),
            }
        }
    }

    let mut concl = Vec::new();
    if let Some(rep) = rep {
        let chis: Vec<Vec<Scalar>> = d.chi.iter().map(|c| c.values().to_vec()).collect();
        match skew_weight_check(rep, &chis) {
            Ok(r) => concl.push(Verdict::new("skew_weights", r.is_ok(), r.to_string())),
            Err(e) => concl.push(Verdict::new("skew_weights", false, e.to_string())),
        }
        match find_annihilated_weight_vector(rep) {
            Ok(v) => concl.push(Verdict::new(
                "one_dim_submodule",
                v.is_some(),
                if v.is_some() { "found" } else { "no common eigenvector killed by every skew generator" },
            )),
            Err(e) => concl.push(Verdict::new("one_dim_submodule", false, e.to_string())),
        }
        match is_simple(rep) {
            Ok(true) => concl.push(Verdict::new(
                "simple_is_one_dim",
                rep.dim() == 1,
                format!("simple of dimension {}", rep.dim()),
            )),
            Ok(false) => concl.push(Verdict::new("simple_is_one_dim", true, "not simple")),
            Err(e) => concl.push(Verdict::new("simple_is_one_dim", false, e.to_string())),
        }
    }
    CartanAudit { hypotheses: hyp, consequences: cons, conclusion: concl }
}

/// The sub-datum on a set of indices.
pub fn restrict_datum<F: Field>(d: &CartanDatum<F>, idx: &[usize]) -> CartanDatum<F> {
    let a = CartanMatrix { a: idx.iter().map(|&i| idx.iter().map(|&j| d.a.a[i][j]).collect()).collect() };
    CartanDatum {
        group: d.group.clone(),
        g: idx.iter().map(|&i| d.g[i].clone()).collect(),
        chi: idx.iter().map(|&i| d.chi[i].clone()).collect(),
        a,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smith_of_diagonal() {
        let l = integer_kernel(2, &[(vec![2, 0], 0), (vec![0, 3], 0)]).unwrap();
        assert!(l.is_zero());
        assert_eq!(l.invariant_factors, vec![1, 6]);
    }

    #[test]
    fn congruence_kernel() {
        // 2k ≡ 0 mod 4 exactly when k is even
        let l = integer_kernel(1, &[(vec![2], 4)]).unwrap();
        assert_eq!(l.basis, vec![vec![2]]);
    }

    #[test]
    fn fm_infeasible_and_feasible() {
        let lat = RelationLattice { ambient: 2, basis: vec![vec![1, -1]], invariant_factors: vec![] };
        assert_eq!(has_nonneg_relation(&lat), None);
        let lat =
            RelationLattice { ambient: 3, basis: vec![vec![1, -1, 0], vec![0, 2, -1]], invariant_factors: vec![] };
        assert_eq!(has_nonneg_relation(&lat), None);
        let lat = RelationLattice { ambient: 3, basis: vec![vec![1, -1, 0], vec![0, 1, 1]], invariant_factors: vec![] };
        let k = has_nonneg_relation(&lat).unwrap();
        assert!(lat.contains(&k) && k.iter().all(|x| *x >= 0));
    }

    #[test]
    fn labels() {
        assert_eq!(is_finite_type(&CartanMatrix::g2()).unwrap().label.as_deref(), Some("G2"));
        assert_eq!(is_finite_type(&CartanMatrix::a_n(4)).unwrap().label.as_deref(), Some("A4"));
        let d4 = CartanMatrix::new(vec![vec![2, -1, 0, 0], vec![-1, 2, -1, -1], vec![0, -1, 2, 0], vec![0, -1, 0, 2]])
            .unwrap();
        assert_eq!(is_finite_type(&d4).unwrap().label.as_deref(), Some("D4"));
    }
}
