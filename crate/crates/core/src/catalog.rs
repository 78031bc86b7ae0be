//! Concrete objects: group algebras, Taft algebras and their doubles,
//! cyclic-shift representations and standard Cartan data.

use std::collections::HashMap;

use crate::algebra::{AlgebraData, CoalgebraData, HopfData};
use crate::cartan::{symmetrize, verify_datum, CartanDatum, CartanMatrix};
use crate::error::{Error, Result};
use num_traits::{One, Zero};

use crate::field::Field;
use crate::groups::AbelianGroup;
use crate::linalg::Matrix;
use crate::modules::{skew_weight_check, Generator, Representation, Role, Side};
use crate::scalars::Scalar;

/// The group algebra of a finite abelian group, basis in the order of
/// [`AbelianGroup::elements`].
pub fn group_algebra(g: &AbelianGroup) -> Result<HopfData<Scalar>> {
    let elems = g.elements()?;
    let n = elems.len();
    let index: HashMap<_, _> = elems.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
    let one = Scalar::one;
    let mult = (0..n).flat_map(|i| {
        let (elems, index) = (&elems, &index);
        (0..n).map(move |j| (i, j, index[&g.mul(&elems[i], &elems[j])], one()))
    });
    let algebra = AlgebraData::new(n, mult.collect::<Vec<_>>(), unit_vec(n, index[&g.identity()]))?;
    let coalgebra = CoalgebraData::new(n, (0..n).map(|i| (i, i, i, one())), vec![one(); n])?;
    let s = Matrix::from_fn(n, n, |r, c| if r == index[&g.inv(&elems[c])] { one() } else { Scalar::zero() });
    HopfData::new(algebra, coalgebra, Some(s))
}

fn unit_vec(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    v[i] = Scalar::one();
    v
}

/// Multiplicative order of a root of unity, if `x` is one.
pub fn root_order(x: &Scalar) -> Option<u32> {
    if x.is_zero() || !x.is_root_of_unity() {
        return None;
    }
    let mut p = x.clone();
    let mut k = 1;
    while !p.is_one() {
        p = p * x;
        k += 1;
    }
    Some(k)
}

/// The Taft algebra `T_N`: generated by `g, x` with `g^N = 1`, `x^N = 0`,
/// `xg = q gx`, `Δg = g⊗g`, `Δx = x⊗g + 1⊗x`. Basis `g^i x^j` at index
/// `i*N + j`.
pub fn taft_algebra(n: usize, q: &Scalar) -> Result<HopfData<Scalar>> {
    if n < 2 || root_order(q) != Some(n as u32) {
        return Err(Error::Invalid(format!("q = {q} is not a primitive {n}-th root of unity")));
    }
    let dim = n * n;
    let idx = |i: usize, j: usize| (i % n) * n + j;
    let mut mult = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    if j + l < n {
                        mult.push((idx(i, j), idx(k, l), idx(i + k, j + l), q.pow_int((j * k) as i64)));
                    }
                }
            }
        }
    }
    let algebra = AlgebraData::new(dim, mult, unit_vec(dim, 0))?;
    // Δ(g^i x^j) = Δ(g)^i Δ(x)^j computed in T⊗T.
    let tensor_mul = |a: &[(usize, usize, Scalar)], b: &[(usize, usize, Scalar)]| {
        let mut out: HashMap<(usize, usize), Scalar> = HashMap::new();
        for (a1, a2, c) in a {
            for (b1, b2, d) in b {
                for (k, p) in algebra.product(*a1, *b1) {
                    for (l, r) in algebra.product(*a2, *b2) {
                        let e = out.entry((*k, *l)).or_insert_with(Scalar::zero);
                        *e = e.clone() + &(c.clone() * d * p * r);
                    }
                }
            }
        }
        let mut v: Vec<_> = out.into_iter().filter(|(_, c)| !c.is_zero()).map(|((k, l), c)| (k, l, c)).collect();
        v.sort_by_key(|t| (t.0, t.1));
        v
    };
    let dg = vec![(idx(1, 0), idx(1, 0), Scalar::one())];
    let dx = vec![(idx(0, 1), idx(1, 0), Scalar::one()), (idx(0, 0), idx(0, 1), Scalar::one())];
    let mut comult = Vec::new();
    let mut gi = vec![(0usize, 0usize, Scalar::one())];
    for i in 0..n {
        let mut cur = gi.clone();
        for j in 0..n {
            comult.extend(cur.iter().map(|(a, b, c)| (idx(i, j), *a, *b, c.clone())));
            cur = tensor_mul(&cur, &dx);
        }
        gi = tensor_mul(&gi, &dg);
    }
    let counit = (0..dim).map(|b| if b % n == 0 { Scalar::one() } else { Scalar::zero() }).collect();
    let coalgebra = CoalgebraData::new(dim, comult, counit)?;
    // S(g^i x^j) = S(x)^j S(g)^i with S(g) = g^{N-1}, S(x) = -x g^{N-1}.
    let sg = unit_vec(dim, idx(n - 1, 0));
    let sx = algebra.mul(&unit_vec(dim, idx(0, 1)), &sg).into_iter().map(|c| -c).collect::<Vec<_>>();
    let mut cols = vec![Vec::new(); dim];
    for i in 0..n {
        let mut v = unit_vec(dim, 0);
        for j in 0..n {
            let mut w = v.clone();
            for _ in 0..i {
                w = algebra.mul(&w, &sg);
            }
            cols[idx(i, j)] = w;
            v = algebra.mul(&v, &sx);
        }
    }
    let s = Matrix::from_cols(dim, &cols);
    HopfData::new(algebra, coalgebra, Some(s))
}

/// The Drinfeld double `D(T_N)`, of dimension `N^4`.
pub fn double_taft(n: usize, q: &Scalar) -> Result<crate::twist::TwistedAlgebra<Scalar>> {
    crate::twist::drinfeld_double(&taft_algebra(n, q)?)
}

/// The `N`-dimensional module over `k⟨g, x | g^N = 1, gxg⁻¹ = qx⟩` with
/// `g·m_i = q^i m_i` and `x·m_i = m_{i+1}`, indices mod `N`, together with
/// its type `A_1` datum over `Z_N` with `χ(g) = q`.
pub fn example_simple_rep(n: usize, q: &Scalar) -> Result<(Representation<Scalar>, CartanDatum<Scalar>)> {
    if n < 2 || root_order(q) != Some(n as u32) {
        return Err(Error::Invalid(format!("q = {q} is not a primitive {n}-th root of unity")));
    }
    let g = Matrix::diag(&(0..n).map(|i| q.pow_int(i as i64)).collect::<Vec<_>>());
    let x = Matrix::from_fn(n, n, |r, c| if r == (c + 1) % n { Scalar::one() } else { Scalar::zero() });
    let rep = Representation::new(
        n,
        Side::Left,
        vec![Generator::new("g", g, Some(Role::Group)), Generator::new("x", x, Some(Role::Skew))],
    )?;
    let group = AbelianGroup::cyclic(n as u32);
    let chi = group.character(vec![q.clone()])?;
    let datum = CartanDatum::new(group.clone(), vec![group.generator(0)], vec![chi], CartanMatrix::a1())?;
    verify_datum(&datum).into_result("datum")?;
    skew_weight_check(&rep, &[vec![q.clone()]])?.into_result("skew weight condition")?;
    Ok((rep, datum))
}

/// `χ_j(g_i) = q^{s_ij}` on the free abelian group with basis `g_1, …, g_θ`.
fn free_datum(a: CartanMatrix, s: impl Fn(usize, usize) -> i64, q: &Scalar) -> Result<CartanDatum<Scalar>> {
    let n = a.rank();
    let group = AbelianGroup::free(n);
    let g = (0..n).map(|i| group.generator(i)).collect();
    let chi =
        (0..n).map(|j| group.character((0..n).map(|i| q.pow_int(s(i, j))).collect())).collect::<Result<Vec<_>>>()?;
    let d = CartanDatum::new(group, g, chi, a)?;
    verify_datum(&d).into_result("datum")?;
    Ok(d)
}

/// `Γ = Z²`, `a = [[2,−2],[−2,2]]`, `χ_j(g_i) = q^{a_ij}`: connected of
/// Cartan type, not of finite type, and `χ_1χ_2 = 1`.
pub fn counterexample_datum() -> Result<CartanDatum<Scalar>> {
    let a = CartanMatrix::new(vec![vec![2, -2], vec![-2, 2]])?;
    let rows = a.rows().to_vec();
    free_datum(a, |i, j| rows[i][j], &Scalar::q())
}

/// A finite type datum on a free abelian group with
/// `χ_j(g_i) = q^{d_i a_ij}` for the standard symmetrizer `d`.
pub fn finite_type_datum(label: &str, q: &Scalar) -> Result<CartanDatum<Scalar>> {
    let a = match label {
        "A1" => CartanMatrix::a1(),
        "A2" => CartanMatrix::a2(),
        "B2" => CartanMatrix::b2(),
        "G2" => CartanMatrix::g2(),
        _ => return Err(Error::Invalid(format!("unknown type {label}; expected A1, A2, B2 or G2"))),
    };
    let d = symmetrize(&a)?;
    let rows = a.rows().to_vec();
    free_datum(a, |i, j| d[i] * rows[i][j], q)
}
