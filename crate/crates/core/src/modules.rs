//! Representations given by action matrices, the induced modules `U_χ` and
//! `A_ρ`, their quotients `L(ρ, χ)` and `R(χ, ρ)`, and submodule tools.
//!
//! A left action matrix sends `v` to `h·v`; a right action matrix sends
//! `v` to `v·h`. Either way column `k` is the image of the `k`-th basis
//! vector.

use rayon::prelude::*;

use crate::algebra::{basis_vec, closure, dot, sparse, AlgebraData};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{joint_eigenspaces, Matrix, Subspace};
use crate::report::Report;
use crate::twist::TwistedAlgebra;

/// Largest number of candidate combinations tried when searching for an
/// invertible intertwiner.
pub const ISO_SEARCH_CAP: usize = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn as_str(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// What a generator is: a group-like or algebra generator of `U` or `A`
/// inside `H`, or a group element or skew generator of a skew weight
/// family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Role {
    UGroup,
    U,
    AGroup,
    A,
    Group,
    Skew,
}

impl Role {
    pub const ALL: [Role; 6] = [Role::UGroup, Role::U, Role::AGroup, Role::A, Role::Group, Role::Skew];

    pub fn as_str(self) -> &'static str {
        match self {
            Role::UGroup => "u_group",
            Role::U => "u",
            Role::AGroup => "a_group",
            Role::A => "a",
            Role::Group => "group",
            Role::Skew => "skew",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|r| r.as_str() == s)
    }

    pub fn is_group(self) -> bool {
        matches!(self, Role::UGroup | Role::AGroup | Role::Group)
    }

    pub fn in_u(self) -> bool {
        matches!(self, Role::UGroup | Role::U)
    }

    pub fn in_a(self) -> bool {
        matches!(self, Role::AGroup | Role::A)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Generator<F: Field> {
    pub name: String,
    pub matrix: Matrix<F>,
    pub role: Option<Role>,
}

impl<F: Field> Generator<F> {
    pub fn new(name: impl Into<String>, matrix: Matrix<F>, role: Option<Role>) -> Self {
        Generator { name: name.into(), matrix, role }
    }
}

/// A finite-dimensional module given by generator actions, optionally with
/// the action of every basis element of the acting algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct Representation<F: Field> {
    dim: usize,
    side: Side,
    generators: Vec<Generator<F>>,
    basis_actions: Option<Vec<Matrix<F>>>,
}

impl<F: Field> Representation<F> {
    pub fn new(dim: usize, side: Side, generators: Vec<Generator<F>>) -> Result<Self> {
        for g in &generators {
            if g.matrix.nrows() != dim || g.matrix.ncols() != dim {
                return Err(Error::Shape(format!("generator {} is not {dim}×{dim}", g.name)));
            }
        }
        Ok(Representation { dim, side, generators, basis_actions: None })
    }

    pub fn with_basis_actions(mut self, actions: Vec<Matrix<F>>) -> Result<Self> {
        if actions.iter().any(|m| m.nrows() != self.dim || m.ncols() != self.dim) {
            return Err(Error::Shape("basis action has the wrong size".into()));
        }
        self.basis_actions = Some(actions);
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn generators(&self) -> &[Generator<F>] {
        &self.generators
    }

    pub fn generator(&self, name: &str) -> Option<&Matrix<F>> {
        self.generators.iter().find(|g| g.name == name).map(|g| &g.matrix)
    }

    pub fn matrices(&self) -> Vec<Matrix<F>> {
        self.generators.iter().map(|g| g.matrix.clone()).collect()
    }

    /// Generator matrices whose role satisfies `pred`.
    pub fn matrices_where(&self, pred: impl Fn(Role) -> bool) -> Vec<Matrix<F>> {
        self.generators.iter().filter(|g| g.role.is_some_and(&pred)).map(|g| g.matrix.clone()).collect()
    }

    /// Actions of the group-like generators.
    pub fn group_matrices(&self) -> Vec<Matrix<F>> {
        self.matrices_where(Role::is_group)
    }

    pub fn basis_actions(&self) -> Option<&[Matrix<F>]> {
        self.basis_actions.as_deref()
    }

    /// Action of an algebra element given in the basis of the acting algebra.
    pub fn act(&self, x: &[F]) -> Result<Matrix<F>> {
        let b =
            self.basis_actions.as_ref().ok_or_else(|| Error::Invalid("representation has no basis actions".into()))?;
        if x.len() != b.len() {
            return Err(Error::Shape(format!("element has {} coordinates, algebra has {}", x.len(), b.len())));
        }
        let mut out = Matrix::zeros(self.dim, self.dim);
        for (h, c) in sparse(x) {
            out = out.add(&b[h].scale(&c));
        }
        Ok(out)
    }

    /// Whether the basis actions respect the multiplication and unit of `alg`.
    pub fn verify_against(&self, alg: &AlgebraData<F>) -> Report {
        let mut rep = Report::new();
        let Some(b) = &self.basis_actions else {
            rep.fail("no basis actions");
            return rep;
        };
        if b.len() != alg.dim() {
            rep.fail(format!("{} basis actions for an algebra of dimension {}", b.len(), alg.dim()));
            return rep;
        }
        let act = |x: &[F]| {
            let mut out = Matrix::zeros(self.dim, self.dim);
            for (h, c) in sparse(x) {
                out = out.add(&b[h].scale(&c));
            }
            out
        };
        rep.check(act(alg.unit()) == Matrix::identity(self.dim), || "unit does not act as identity".into());
        let gens = alg.generators().unwrap_or_else(|| (0..alg.dim()).collect());
        let fails: Vec<String> = gens
            .par_iter()
            .flat_map_iter(|&i| {
                let mut out = Vec::new();
                for j in 0..alg.dim() {
                    let lhs = act(&alg.product_vec(i, j));
                    let rhs = match self.side {
                        Side::Left => b[i].mul(&b[j]),
                        Side::Right => b[j].mul(&b[i]),
                    };
                    if lhs != rhs {
                        out.push(format!("action of e_{i}e_{j} is not the composite"));
                    }
                }
                out
            })
            .collect();
        for f in fails {
            rep.fail(f);
        }
        rep
    }

    /// The dual module with transposed actions, on the other side.
    pub fn transpose(&self) -> Self {
        let t = |m: &Matrix<F>| m.transpose();
        Representation {
            dim: self.dim,
            side: self.side.flip(),
            generators: self.generators.iter().map(|g| Generator::new(g.name.clone(), t(&g.matrix), g.role)).collect(),
            basis_actions: self.basis_actions.as_ref().map(|b| b.iter().map(t).collect()),
        }
    }

    /// Apply `f` to every action matrix.
    fn map_actions(&self, dim: usize, f: impl Fn(&Matrix<F>) -> Matrix<F>) -> Self {
        Representation {
            dim,
            side: self.side,
            generators: self.generators.iter().map(|g| Generator::new(g.name.clone(), f(&g.matrix), g.role)).collect(),
            basis_actions: self.basis_actions.as_ref().map(|b| b.iter().map(&f).collect()),
        }
    }

    /// The same module in the basis given by the columns of `t`.
    pub fn change_basis(&self, t: &Matrix<F>) -> Result<Self> {
        let inv = t.inverse().ok_or_else(|| Error::Invalid("change of basis is singular".into()))?;
        Ok(self.map_actions(self.dim, |m| inv.mul(m).mul(t)))
    }

    /// The submodule `sub`, in the coordinates of its stored basis.
    pub fn restrict(&self, sub: &Subspace<F>) -> Result<Self> {
        if self.generators.iter().any(|g| !sub.is_invariant(&g.matrix)) {
            return Err(Error::Invalid("subspace is not a submodule".into()));
        }
        Ok(self.map_actions(sub.dim(), |m| sub.restrict(m)))
    }

    /// The quotient by the submodule `sub`, in the coordinates of
    /// [`Subspace::quotient_coords`].
    pub fn quotient(&self, sub: &Subspace<F>) -> Result<Self> {
        if self.generators.iter().any(|g| !sub.is_invariant(&g.matrix)) {
            return Err(Error::Invalid("subspace is not a submodule".into()));
        }
        Ok(self.map_actions(self.dim - sub.dim(), |m| sub.quotient_operator(m)))
    }

    /// Block-diagonal sum of two modules with matching generators.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        check_compatible(self, other)?;
        let n = self.dim + other.dim;
        let block = |a: &Matrix<F>, b: &Matrix<F>| {
            Matrix::from_fn(n, n, |r, c| {
                if r < self.dim && c < self.dim {
                    a[(r, c)].clone()
                } else if r >= self.dim && c >= self.dim {
                    b[(r - self.dim, c - self.dim)].clone()
                } else {
                    F::zero()
                }
            })
        };
        let generators = self
            .generators
            .iter()
            .zip(&other.generators)
            .map(|(a, b)| Generator::new(a.name.clone(), block(&a.matrix, &b.matrix), a.role))
            .collect();
        let basis_actions = match (&self.basis_actions, &other.basis_actions) {
            (Some(a), Some(b)) if a.len() == b.len() => Some(a.iter().zip(b).map(|(x, y)| block(x, y)).collect()),
            _ => None,
        };
        Ok(Representation { dim: n, side: self.side, generators, basis_actions })
    }
}

fn check_compatible<F: Field>(a: &Representation<F>, b: &Representation<F>) -> Result<()> {
    if a.side != b.side {
        return Err(Error::Invalid("modules act from different sides".into()));
    }
    let names = |r: &Representation<F>| r.generators.iter().map(|g| g.name.clone()).collect::<Vec<_>>();
    if names(a) != names(b) {
        return Err(Error::Invalid("generator mismatch".into()));
    }
    Ok(())
}

/// `{v ∈ W : g·v ∈ W' for all generators, iterated}`: the largest submodule
/// inside `w`, as the fixpoint of `V ↦ V ∩ ⋂_g g⁻¹(V)`.
pub fn largest_submodule_within<F: Field>(rep: &Representation<F>, w: &Subspace<F>) -> Subspace<F> {
    let mats = rep.matrices();
    let mut v = w.clone();
    loop {
        if v.is_zero() {
            return v;
        }
        let ann = v.annihilator_matrix();
        let mut stacked = ann.clone();
        for g in &mats {
            stacked = stacked.vstack(&ann.mul(g));
        }
        let next = Subspace::kernel(&stacked);
        if next.dim() == v.dim() {
            return next;
        }
        v = next;
    }
}

/// The submodule generated by `v`.
pub fn submodule_generated<F: Field>(rep: &Representation<F>, v: &[F]) -> Subspace<F> {
    closure(rep.dim(), &[v.to_vec()], &rep.matrices())
}

/// Joint eigenspaces of the group-like generators; errors unless they add up
/// to the whole module.
pub fn weight_decomposition<F: Field>(rep: &Representation<F>) -> Result<Vec<(Vec<F>, Subspace<F>)>> {
    weight_decomposition_for(rep.dim(), &rep.group_matrices())
}

pub fn weight_decomposition_for<F: Field>(dim: usize, group: &[Matrix<F>]) -> Result<Vec<(Vec<F>, Subspace<F>)>> {
    let parts = joint_eigenspaces(dim, group, false)?;
    let total: usize = parts.iter().map(|(_, s)| s.dim()).sum();
    if total != dim {
        return Err(Error::Invalid(format!(
            "group action is not diagonalizable: weight spaces span {total} of {dim} dimensions"
        )));
    }
    Ok(parts)
}

/// One weight vector per weight space, erroring on any multiplicity.
fn weight_vectors<F: Field>(rep: &Representation<F>) -> Result<Vec<Vec<F>>> {
    let parts = weight_decomposition(rep)?;
    if let Some((w, s)) = parts.iter().find(|(_, s)| s.dim() > 1) {
        return Err(Error::Unsupported(format!(
            "weight {} has multiplicity {}; only multiplicity-free modules are handled exactly \
             (try is_simple_randomized)",
            fmt_weight(w),
            s.dim()
        )));
    }
    Ok(parts.into_iter().map(|(_, s)| s.basis()[0].clone()).collect())
}

fn fmt_weight<F: Field>(w: &[F]) -> String {
    let parts: Vec<String> = w.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

/// Simplicity for multiplicity-free modules: every weight vector must
/// generate the whole module.
pub fn is_simple<F: Field>(rep: &Representation<F>) -> Result<bool> {
    if rep.dim() == 0 {
        return Ok(false);
    }
    let vs = weight_vectors(rep)?;
    Ok(vs.iter().all(|v| submodule_generated(rep, v).is_full()))
}

/// Non-certifying simplicity test: checks that each of the supplied vectors
/// generates the module. A `false` answer is exact, `true` is only evidence.
pub fn is_simple_randomized<F: Field>(rep: &Representation<F>, probes: &[Vec<F>]) -> bool {
    probes.iter().all(|v| v.iter().all(|x| x.is_zero()) || submodule_generated(rep, v).is_full())
}

/// Every submodule, for multiplicity-free modules: sums of the cyclic
/// submodules of weight vectors.
pub fn submodule_lattice<F: Field>(rep: &Representation<F>) -> Result<Vec<Subspace<F>>> {
    let cyclic: Vec<Subspace<F>> = weight_vectors(rep)?.iter().map(|v| submodule_generated(rep, v)).collect();
    let mut all = vec![Subspace::zero(rep.dim())];
    for c in &cyclic {
        let sums: Vec<Subspace<F>> = all.iter().map(|s| s.sum(c)).collect();
        for s in sums {
            if !all.contains(&s) {
                all.push(s);
            }
        }
    }
    Ok(all)
}

/// Solve `T·act1(g) = act2(g)·T` for all generators and search the solution
/// space for an invertible member.
pub fn module_iso<F: Field>(m1: &Representation<F>, m2: &Representation<F>) -> Result<Option<Matrix<F>>> {
    check_compatible(m1, m2)?;
    if m1.dim() != m2.dim() {
        return Ok(None);
    }
    let sols = intertwiners(m1, m2);
    find_invertible(&sols, m1.dim())
}

/// A basis of the space of module maps `m1 → m2`.
pub fn intertwiners<F: Field>(m1: &Representation<F>, m2: &Representation<F>) -> Vec<Matrix<F>> {
    let (d1, d2) = (m1.dim(), m2.dim());
    let nvar = d1 * d2;
    if nvar == 0 {
        return Vec::new();
    }
    let mut rows: Vec<Vec<F>> = Vec::new();
    for (g1, g2) in m1.generators().iter().zip(m2.generators()) {
        let (a1, a2) = (&g1.matrix, &g2.matrix);
        for r in 0..d2 {
            for c in 0..d1 {
                let mut row = vec![F::zero(); nvar];
                for k in 0..d1 {
                    row[r * d1 + k] = row[r * d1 + k].clone() + &a1[(k, c)];
                }
                for k in 0..d2 {
                    row[k * d1 + c] = row[k * d1 + c].clone() - &a2[(r, k)];
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let sols =
        if rows.is_empty() { Matrix::<F>::identity(nvar).to_rows() } else { Matrix::from_rows(rows).nullspace() };
    sols.into_iter().map(|v| Matrix::from_fn(d2, d1, |r, c| v[r * d1 + c].clone())).collect()
}

/// An invertible linear combination of `basis`, or `None` when every
/// combination is singular. Coefficients range over `{0, …, n}`: the
/// determinant is a polynomial of degree at most `n` in each coefficient, so
/// it vanishes on that grid only if it vanishes identically.
fn find_invertible<F: Field>(basis: &[Matrix<F>], n: usize) -> Result<Option<Matrix<F>>> {
    let r = basis.len();
    if r == 0 {
        return Ok(None);
    }
    for b in basis {
        if b.inverse().is_some() {
            return Ok(Some(b.clone()));
        }
    }
    let side = n as u64 + 1;
    let total = side.checked_pow(r as u32).unwrap_or(u64::MAX);
    if total > ISO_SEARCH_CAP as u64 {
        return Err(Error::Unsupported(format!(
            "intertwiner space of dimension {r} is too large for an exhaustive invertibility search"
        )));
    }
    for idx in 0..total {
        let mut t = Matrix::zeros(n, n);
        let mut rest = idx;
        for b in basis {
            let c = rest % side;
            rest /= side;
            if c != 0 {
                t = t.add(&b.scale(&F::from_int(c as i64)));
            }
        }
        if t.inverse().is_some() {
            return Ok(Some(t));
        }
    }
    Ok(None)
}

/// Lines `kv` stable under every generator whose role satisfies `pred`.
/// Errors when a joint eigenspace has dimension above one, since then there
/// are infinitely many such lines.
pub fn invariant_lines<F: Field>(rep: &Representation<F>, pred: impl Fn(Role) -> bool) -> Result<Vec<Vec<F>>> {
    let mats = rep.matrices_where(pred);
    let parts = joint_eigenspaces(rep.dim(), &mats, false)?;
    let mut out = Vec::new();
    for (w, s) in parts {
        if s.dim() > 1 {
            return Err(Error::Unsupported(format!(
                "joint eigenspace for {} has dimension {}",
                fmt_weight(&w),
                s.dim()
            )));
        }
        out.push(s.basis()[0].clone());
    }
    Ok(out)
}

/// One-dimensional `A`-submodules of an `H`-module.
pub fn find_one_dim_a_submodules<F: Field>(rep: &Representation<F>) -> Result<Vec<Vec<F>>> {
    invariant_lines(rep, Role::in_a)
}

/// Codimension-one `U`-submodules, as subspaces; found as lines of the
/// transposed action.
pub fn find_codim_one_u_submodules<F: Field>(rep: &Representation<F>) -> Result<Vec<Subspace<F>>> {
    let lines = invariant_lines(&rep.transpose(), Role::in_u)?;
    Ok(lines.iter().map(|p| Subspace::kernel(&Matrix::from_rows(vec![p.clone()]))).collect())
}

/// `g a_i g⁻¹ = χ_i(g) a_i` for the group and skew generators, in the
/// order they appear; `chis[i][k] = χ_i(g_k)`. Each `χ_i` must be
/// nontrivial.
pub fn skew_weight_check<F: Field>(rep: &Representation<F>, chis: &[Vec<F>]) -> Result<Report> {
    let groups: Vec<&Generator<F>> = rep.generators().iter().filter(|g| g.role == Some(Role::Group)).collect();
    let skews: Vec<&Generator<F>> = rep.generators().iter().filter(|g| g.role == Some(Role::Skew)).collect();
    if chis.len() != skews.len() || chis.iter().any(|c| c.len() != groups.len()) {
        return Err(Error::Shape(format!("need {} characters with {} values each", skews.len(), groups.len())));
    }
    let mut rep_ = Report::new();
    for (i, a) in skews.iter().enumerate() {
        rep_.check(chis[i].iter().any(|v| !v.is_one()), || format!("character of {} is trivial", a.name));
        for (k, g) in groups.iter().enumerate() {
            let inv = g
                .matrix
                .inverse()
                .ok_or_else(|| Error::Invalid(format!("group generator {} acts singularly", g.name)))?;
            let lhs = g.matrix.mul(&a.matrix).mul(&inv);
            rep_.check(lhs == a.matrix.scale(&chis[i][k]), || {
                format!("{} {} {}⁻¹ != χ({}) {}", g.name, a.name, g.name, g.name, a.name)
            });
        }
    }
    Ok(rep_)
}

/// A common eigenvector of the group generators killed by every skew
/// generator, if one exists; its span is then a one-dimensional submodule.
pub fn find_annihilated_weight_vector<F: Field>(rep: &Representation<F>) -> Result<Option<Vec<F>>> {
    let skews = rep.matrices_where(|r| r == Role::Skew);
    let kernel = if skews.is_empty() {
        Subspace::full(rep.dim())
    } else {
        let mut stacked = skews[0].clone();
        for s in &skews[1..] {
            stacked = stacked.vstack(s);
        }
        Subspace::kernel(&stacked)
    };
    if kernel.is_zero() {
        return Ok(None);
    }
    let groups = rep.matrices_where(|r| r == Role::Group);
    for g in &groups {
        if !kernel.is_invariant(g) {
            return Err(Error::Invalid("group action does not preserve the common kernel".into()));
        }
    }
    let restricted: Vec<Matrix<F>> = groups.iter().map(|g| kernel.restrict(g)).collect();
    let parts = joint_eigenspaces(kernel.dim(), &restricted, false)?;
    let Some((_, s)) = parts.first() else {
        return Ok(None);
    };
    let c = &s.basis()[0];
    let mut v = vec![F::zero(); rep.dim()];
    for (ci, b) in c.iter().zip(kernel.basis()) {
        for (vi, bi) in v.iter_mut().zip(b) {
            *vi = vi.clone() + &(ci.clone() * bi);
        }
    }
    if submodule_generated(rep, &v).dim() != 1 {
        return Err(Error::CheckFailed("annihilated weight vector does not span a submodule".into()));
    }
    Ok(Some(v))
}

/// A module `M` with a distinguished vector `m` and hyperplane `N`, plus the
/// characters it was built from.
///
/// For a left module `A·m ⊆ km` and `U·N ⊆ N`; for a right module the roles
/// of `U` and `A` swap.
#[derive(Clone, Debug, PartialEq)]
pub struct TripleObject<F: Field> {
    pub module: Representation<F>,
    pub m: Vec<F>,
    pub n: Subspace<F>,
    pub rho: Vec<F>,
    pub chi: Vec<F>,
}

impl<F: Field> TripleObject<F> {
    fn line_role(&self) -> fn(Role) -> bool {
        match self.module.side() {
            Side::Left => Role::in_a,
            Side::Right => Role::in_u,
        }
    }

    fn plane_role(&self) -> fn(Role) -> bool {
        match self.module.side() {
            Side::Left => Role::in_u,
            Side::Right => Role::in_a,
        }
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    /// The defining conditions of a triple.
    pub fn verify(&self) -> Report {
        let mut rep = Report::new();
        let m = &self.module;
        let line = Subspace::span(m.dim(), std::slice::from_ref(&self.m));
        rep.check(line.dim() == 1, || "m is zero".into());
        for g in m.matrices_where(self.line_role()) {
            rep.check(line.contains(&g.mul_vec(&self.m)), || "m does not span a submodule for its side".into());
        }
        for g in m.matrices_where(self.plane_role()) {
            rep.check(self.n.is_invariant(&g), || "N is not stable".into());
        }
        rep.check(self.n.dim() + 1 == m.dim(), || format!("N has dimension {} in {}", self.n.dim(), m.dim()));
        rep.check(largest_submodule_within(m, &self.n).is_zero(), || "N contains a nonzero submodule".into());
        rep.check(submodule_generated(m, &self.m).is_full(), || "m does not generate M".into());
        rep
    }
}

/// A generator of `H` as a vector, with name and role.
#[derive(Clone, Debug)]
struct HGen<F: Field> {
    name: String,
    vec: Vec<F>,
    role: Role,
}

/// Module constructions over a fixed twisted algebra `H = U⊗A`. Characters
/// of `U` and `A` are enumerated once, in a deterministic order.
#[derive(Debug)]
pub struct HModules<'a, F: Field> {
    t: &'a TwistedAlgebra<F>,
    gens: Vec<HGen<F>>,
    rhos: Vec<Vec<F>>,
    chis: Vec<Vec<F>>,
}

impl<'a, F: Field> HModules<'a, F> {
    pub fn new(t: &'a TwistedAlgebra<F>) -> Result<Self> {
        let (u, a) = (t.u(), t.a());
        let mut gens = Vec::new();
        for (k, g) in u.grouplikes()?.into_iter().enumerate() {
            gens.push(HGen { name: format!("u_group{k}"), vec: t.embed_u(&g), role: Role::UGroup });
        }
        for i in u.algebra.generators().unwrap_or_else(|| (0..u.dim()).collect()) {
            gens.push(HGen { name: format!("u{i}"), vec: t.embed_u(&basis_vec(u.dim(), i)), role: Role::U });
        }
        for (k, g) in a.grouplikes()?.into_iter().enumerate() {
            gens.push(HGen { name: format!("a_group{k}"), vec: t.embed_a(&g), role: Role::AGroup });
        }
        for j in a.algebra.generators().unwrap_or_else(|| (0..a.dim()).collect()) {
            gens.push(HGen { name: format!("a{j}"), vec: t.embed_a(&basis_vec(a.dim(), j)), role: Role::A });
        }
        Ok(HModules { t, gens, rhos: u.characters()?, chis: a.characters()? })
    }

    pub fn twisted(&self) -> &TwistedAlgebra<F> {
        self.t
    }

    /// Characters of `U`.
    pub fn rhos(&self) -> &[Vec<F>] {
        &self.rhos
    }

    /// Characters of `A`.
    pub fn chis(&self) -> &[Vec<F>] {
        &self.chis
    }

    /// All `(ρ index, χ index)` pairs in lexicographic order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.rhos.len()).flat_map(|r| (0..self.chis.len()).map(move |c| (r, c))).collect()
    }

    fn assemble(&self, dim: usize, side: Side, basis: Vec<Matrix<F>>) -> Result<Representation<F>> {
        let act = |x: &[F]| {
            let mut out = Matrix::zeros(dim, dim);
            for (h, c) in sparse(x) {
                out = out.add(&basis[h].scale(&c));
            }
            out
        };
        let generators = self.gens.iter().map(|g| Generator::new(g.name.clone(), act(&g.vec), Some(g.role))).collect();
        Representation::new(dim, side, generators)?.with_basis_actions(basis)
    }

    /// `U_χ`: `(u⊗a)·u' = (I⊗χ)((u⊗a)(u'⊗1))`.
    pub fn induced_u_chi(&self, chi: &[F]) -> Result<Representation<F>> {
        let (t, du) = (self.t, self.t.dim_u());
        if !t.a().algebra.is_character(chi) {
            return Err(Error::Invalid("χ is not an algebra character of A".into()));
        }
        let basis: Vec<Matrix<F>> = (0..t.dim())
            .into_par_iter()
            .map(|h| {
                let eh = basis_vec(t.dim(), h);
                let cols: Vec<Vec<F>> =
                    (0..du).map(|k| t.contract_a(chi, &t.h().mul(&eh, &t.embed_u(&basis_vec(du, k))))).collect();
                Matrix::from_cols(du, &cols)
            })
            .collect();
        self.assemble(du, Side::Left, basis)
    }

    /// `A_ρ`: `a·(u⊗a') = (ρ⊗I)((1⊗a)(u⊗a'))`.
    pub fn induced_a_rho(&self, rho: &[F]) -> Result<Representation<F>> {
        let (t, da) = (self.t, self.t.dim_a());
        if !t.u().algebra.is_character(rho) {
            return Err(Error::Invalid("ρ is not an algebra character of U".into()));
        }
        let basis: Vec<Matrix<F>> = (0..t.dim())
            .into_par_iter()
            .map(|h| {
                let eh = basis_vec(t.dim(), h);
                let cols: Vec<Vec<F>> =
                    (0..da).map(|k| t.contract_u(rho, &t.h().mul(&t.embed_a(&basis_vec(da, k)), &eh))).collect();
                Matrix::from_cols(da, &cols)
            })
            .collect();
        self.assemble(da, Side::Right, basis)
    }

    /// `u·u' = uu'` and `a·1 = χ(a)1` on `U_χ`, and the mirror identities on
    /// `A_ρ`.
    pub fn restriction_report(
        &self,
        u_chi: &Representation<F>,
        a_rho: &Representation<F>,
        rho: &[F],
        chi: &[F],
    ) -> Report {
        let t = self.t;
        let (du, da) = (t.dim_u(), t.dim_a());
        let mut rep = Report::new();
        for i in 0..du {
            let l = u_chi.act(&t.embed_u(&basis_vec(du, i))).expect("sizes agree");
            rep.check(l == t.u().algebra.left_matrix(&basis_vec(du, i)), || format!("e_{i}·u != e_{i}u on U_χ"));
        }
        for j in 0..da {
            let l = u_chi.act(&t.embed_a(&basis_vec(da, j))).expect("sizes agree");
            let img = l.mul_vec(t.u().unit());
            let want: Vec<F> = t.u().unit().iter().map(|x| x.clone() * &chi[j]).collect();
            rep.check(img == want, || format!("f_{j}·1 != χ(f_{j})1 on U_χ"));
            let r = a_rho.act(&t.embed_a(&basis_vec(da, j))).expect("sizes agree");
            rep.check(r == t.a().algebra.right_matrix(&basis_vec(da, j)), || format!("a·f_{j} != af_{j} on A_ρ"));
        }
        for i in 0..du {
            let r = a_rho.act(&t.embed_u(&basis_vec(du, i))).expect("sizes agree");
            let img = r.mul_vec(t.a().unit());
            let want: Vec<F> = t.a().unit().iter().map(|x| x.clone() * &rho[i]).collect();
            rep.check(img == want, || format!("1·e_{i} != ρ(e_{i})1 on A_ρ"));
        }
        rep
    }

    /// The closed formulas `(u⊗a)·u' = u τ(u'₁,a₁) u'₂ χ(a₂) τ⁻¹(u'₃,a₃)`
    /// and `a·(u⊗a') = τ(u₁,a₁) ρ(u₂) a₂ τ⁻¹(u₃,a₃) a'` against the
    /// induced actions.
    pub fn induced_formula_report(&self, rho: &[F], chi: &[F]) -> Result<Report> {
        let t = self.t;
        let (du, da) = (t.dim_u(), t.dim_a());
        let (tau, inv) = (t.pairing().matrix(), t.pairing().inverse());
        let u_chi = self.induced_u_chi(chi)?;
        let a_rho = self.induced_a_rho(rho)?;
        let cu: Vec<_> = (0..du).map(|i| t.u().coalgebra.coproduct3(i)).collect();
        let ca: Vec<_> = (0..da).map(|j| t.a().coalgebra.coproduct3(j)).collect();
        let ub = u_chi.basis_actions().expect("basis actions");
        let ab = a_rho.basis_actions().expect("basis actions");
        let mut rep = Report::new();
        for i in 0..du {
            for j in 0..da {
                let h = t.index(i, j);
                for k in 0..du {
                    let mut v = vec![F::zero(); du];
                    for (p, q, r, c) in &cu[k] {
                        for (s, tt, w, d) in &ca[j] {
                            let coef = tau[(*p, *s)].clone() * &chi[*tt] * &inv[(*r, *w)];
                            if coef.is_zero() {
                                continue;
                            }
                            for (x, e) in t.u().algebra.product(i, *q) {
                                v[*x] = v[*x].clone() + &(coef.clone() * c * d * e);
                            }
                        }
                    }
                    rep.check(v == ub[h].col(k), || format!("U_χ formula differs at e_{i}⊗f_{j} on e_{k}"));
                }
                for k in 0..da {
                    let mut v = vec![F::zero(); da];
                    for (p, q, r, c) in &cu[i] {
                        for (s, tt, w, d) in &ca[k] {
                            let coef = tau[(*p, *s)].clone() * &rho[*q] * &inv[(*r, *w)];
                            if coef.is_zero() {
                                continue;
                            }
                            for (x, e) in t.a().algebra.product(*tt, j) {
                                v[*x] = v[*x].clone() + &(coef.clone() * c * d * e);
                            }
                        }
                    }
                    rep.check(v == ab[h].col(k), || format!("A_ρ formula differs at f_{k} on e_{i}⊗f_{j}"));
                }
            }
        }
        Ok(rep)
    }

    /// `I(ρ, χ)`: the largest submodule of `U_χ` inside `Ker ρ`.
    pub fn i_space(&self, rho: &[F], chi: &[F]) -> Result<Subspace<F>> {
        let u_chi = self.induced_u_chi(chi)?;
        Ok(largest_submodule_within(&u_chi, &functional_kernel(rho)))
    }

    /// `J(χ, ρ)`: the largest submodule of `A_ρ` inside `Ker χ`.
    pub fn j_space(&self, chi: &[F], rho: &[F]) -> Result<Subspace<F>> {
        let a_rho = self.induced_a_rho(rho)?;
        Ok(largest_submodule_within(&a_rho, &functional_kernel(chi)))
    }

    /// `L(ρ, χ) = U_χ / I(ρ, χ)` with `m` the image of `1` and `N` the image
    /// of `Ker ρ`.
    pub fn build_l(&self, rho: &[F], chi: &[F]) -> Result<TripleObject<F>> {
        let u_chi = self.induced_u_chi(chi)?;
        let kernel = functional_kernel(rho);
        let i = largest_submodule_within(&u_chi, &kernel);
        self.quotient_triple(&u_chi, &i, &kernel, self.t.u().unit(), rho, chi)
    }

    /// `R(χ, ρ) = A_ρ / J(χ, ρ)` with `m` the image of `1` and `N` the image
    /// of `Ker χ`.
    pub fn build_r(&self, chi: &[F], rho: &[F]) -> Result<TripleObject<F>> {
        let a_rho = self.induced_a_rho(rho)?;
        let kernel = functional_kernel(chi);
        let j = largest_submodule_within(&a_rho, &kernel);
        self.quotient_triple(&a_rho, &j, &kernel, self.t.a().unit(), rho, chi)
    }

    fn quotient_triple(
        &self,
        module: &Representation<F>,
        sub: &Subspace<F>,
        kernel: &Subspace<F>,
        one: &[F],
        rho: &[F],
        chi: &[F],
    ) -> Result<TripleObject<F>> {
        let q = module.quotient(sub)?;
        let m = sub.quotient_coords(one);
        let imgs: Vec<Vec<F>> = kernel.basis().iter().map(|v| sub.quotient_coords(v)).collect();
        let n = Subspace::span(q.dim(), &imgs);
        let triple = TripleObject { module: q, m, n, rho: rho.to_vec(), chi: chi.to_vec() };
        triple.verify().into_result("triple")?;
        Ok(triple)
    }

    /// `(M•, km•, N•)`: `M•` is the right submodule of `M*` generated by the
    /// functional `m•` with `m•(N) = 0`, `m•(m) = 1`, and `N• = m^⊥ ∩ M•`.
    /// Coordinates are those of the stored basis of `M•` inside `M*`.
    pub fn duality_bullet(&self, t: &TripleObject<F>) -> Result<TripleObject<F>> {
        let dual = t.module.transpose();
        let mut rows: Vec<Vec<F>> = t.n.basis().to_vec();
        rows.push(t.m.clone());
        let mut rhs = vec![F::zero(); rows.len()];
        *rhs.last_mut().expect("nonempty") = F::one();
        let mbullet = Matrix::from_rows(rows).solve(&rhs).ok_or_else(|| Error::Invalid("m lies in N".into()))?;
        let space = submodule_generated(&dual, &mbullet);
        let perp = functional_kernel(&t.m);
        let nb = space.intersect(&perp);
        let module = dual.restrict(&space)?;
        let n = Subspace::span(space.dim(), &nb.basis().iter().map(|v| space.coords(v)).collect::<Vec<_>>());
        Ok(TripleObject { module, m: space.coords(&mbullet), n, rho: t.rho.clone(), chi: t.chi.clone() })
    }

    /// For a right triple built by [`Self::duality_bullet`]: `m•·u = ρ(u)m•`
    /// for all `u`, `p·a − χ(a)p ∈ N•` for all `p` and `a`, and `M• ≅ R(χ, ρ)`.
    pub fn duality_report(&self, bullet: &TripleObject<F>) -> Result<Report> {
        let t = self.t;
        let (du, da) = (t.dim_u(), t.dim_a());
        let mut rep = bullet.verify();
        let m = &bullet.module;
        for i in 0..du {
            let img = m.act(&t.embed_u(&basis_vec(du, i)))?.mul_vec(&bullet.m);
            let want: Vec<F> = bullet.m.iter().map(|x| x.clone() * &bullet.rho[i]).collect();
            rep.check(img == want, || format!("m•·e_{i} != ρ(e_{i})m•"));
        }
        let eye = Matrix::identity(m.dim());
        for j in 0..da {
            let op = m.act(&t.embed_a(&basis_vec(da, j)))?.sub(&eye.scale(&bullet.chi[j]));
            for p in Matrix::<F>::identity(m.dim()).to_rows() {
                if !bullet.n.contains(&op.mul_vec(&p)) {
                    rep.fail(format!("f_{j} does not act by χ(f_{j}) on M•/N•"));
                    break;
                }
            }
        }
        let r = self.build_r(&bullet.chi, &bullet.rho)?;
        rep.check(r.dim() == m.dim(), || format!("dim M• = {} but dim R = {}", m.dim(), r.dim()));
        if r.dim() == m.dim() {
            rep.check(module_iso(m, &r.module)?.is_some(), || "M• is not isomorphic to R(χ, ρ)".into());
        }
        Ok(rep)
    }

    /// Recover `(ρ, χ)` from a left triple: `a·m = χ(a)m` and `u` acts on
    /// `M/N` by `ρ(u)`. Errors unless the annihilator identities
    /// `ann_A(km) = Ker χ`, `ann_U(M/N) = Ker ρ` hold with characters.
    pub fn classify_triple(&self, triple: &TripleObject<F>) -> Result<(Vec<F>, Vec<F>)> {
        let t = self.t;
        let (du, da) = (t.dim_u(), t.dim_a());
        let m = &triple.module;
        triple.verify().into_result("triple")?;
        let pivot = triple.m.iter().position(|x| !x.is_zero()).ok_or_else(|| Error::Invalid("m is zero".into()))?;
        let mut chi = Vec::with_capacity(da);
        for j in 0..da {
            let img = m.act(&t.embed_a(&basis_vec(da, j)))?.mul_vec(&triple.m);
            let c = img[pivot].clone() / triple.m[pivot].clone();
            let want: Vec<F> = triple.m.iter().map(|x| x.clone() * &c).collect();
            if img != want {
                return Err(Error::CheckFailed(format!("f_{j}·m is not a multiple of m")));
            }
            chi.push(c);
        }
        let ell = triple.n.annihilator_matrix().row(0).to_vec();
        let v = triple.m.clone();
        let base = dot(&ell, &v);
        if base.is_zero() {
            return Err(Error::CheckFailed("m lies in N".into()));
        }
        let mut rho = Vec::with_capacity(du);
        for i in 0..du {
            let op = m.act(&t.embed_u(&basis_vec(du, i)))?;
            rho.push(dot(&ell, &op.mul_vec(&v)) / base.clone());
            for w in triple.n.basis() {
                if !dot(&ell, &op.mul_vec(w)).is_zero() {
                    return Err(Error::CheckFailed(format!("e_{i} does not preserve N")));
                }
            }
        }
        if !t.a().algebra.is_character(&chi) || !t.u().algebra.is_character(&rho) {
            return Err(Error::CheckFailed("recovered functionals are not characters".into()));
        }
        Ok((rho, chi))
    }

    /// Whether `u⊗g − 1⊗1` acts as zero on `L(ρ, χ)`, and whether
    /// `ρ(u)χ(g) = 1`. Errors unless `u⊗g` is central.
    pub fn central_element_check(&self, u: &[F], g: &[F], rho: &[F], chi: &[F]) -> Result<(bool, bool)> {
        let t = self.t;
        let x = t.tensor(u, g);
        if !t.is_central(&x) {
            return Err(Error::Invalid("u⊗g is not central".into()));
        }
        let l = self.build_l(rho, chi)?;
        let one = t.tensor(t.u().unit(), t.a().unit());
        let diff: Vec<F> = x.iter().zip(&one).map(|(a, b)| a.clone() - b).collect();
        let zero = l.module.act(&diff)?.is_zero();
        let scalar = (dot(rho, u) * &dot(chi, g)).is_one();
        Ok((zero, scalar))
    }
}

/// Kernel of a linear functional given by its values on the basis.
pub fn functional_kernel<F: Field>(phi: &[F]) -> Subspace<F> {
    Subspace::kernel(&Matrix::from_rows(vec![phi.to_vec()]))
}

/// The induced map `L(ρ, χ) → L(ρ̄, χ̄)` for an algebra map
/// `f⊗g : H → H̄`, where `ρ = ρ̄∘f` and `χ = χ̄∘g`.
#[derive(Clone, Debug)]
pub struct LiftedMap<F: Field> {
    pub matrix: Matrix<F>,
    pub source: TripleObject<F>,
    pub target: TripleObject<F>,
    pub is_iso: bool,
}

pub fn lift_morphism_l<F: Field>(
    src: &HModules<'_, F>,
    dst: &HModules<'_, F>,
    f: &Matrix<F>,
    g: &Matrix<F>,
    rho_bar: &[F],
    chi_bar: &[F],
) -> Result<LiftedMap<F>> {
    let (h, hb) = (src.twisted(), dst.twisted());
    if f.nrows() != hb.dim_u() || f.ncols() != h.dim_u() || g.nrows() != hb.dim_a() || g.ncols() != h.dim_a() {
        return Err(Error::Shape("f and g do not match the algebras".into()));
    }
    let big = Matrix::from_fn(hb.dim(), h.dim(), |r, c| {
        f[(r / hb.dim_a(), c / h.dim_a())].clone() * &g[(r % hb.dim_a(), c % h.dim_a())]
    });
    algebra_map_report(&h.h().algebra, &hb.h().algebra, &big).into_result("f⊗g")?;
    let rho = f.vec_mul(rho_bar);
    let chi = g.vec_mul(chi_bar);
    let u_chi = src.induced_u_chi(&chi)?;
    let i = largest_submodule_within(&u_chi, &functional_kernel(&rho));
    let ub_chi = dst.induced_u_chi(chi_bar)?;
    let ib = largest_submodule_within(&ub_chi, &functional_kernel(rho_bar));
    for v in i.basis() {
        if !ib.contains(&f.mul_vec(v)) {
            return Err(Error::CheckFailed("f(I) is not inside Ī".into()));
        }
    }
    let source = src.build_l(&rho, &chi)?;
    let target = dst.build_l(rho_bar, chi_bar)?;
    let cols: Vec<Vec<F>> =
        i.complement_indices().into_iter().map(|c| ib.quotient_coords(&f.mul_vec(&basis_vec(h.dim_u(), c)))).collect();
    let matrix = Matrix::from_cols(target.dim(), &cols);
    for k in 0..h.dim_u() {
        let e = basis_vec(h.dim_u(), k);
        if matrix.mul_vec(&i.quotient_coords(&e)) != ib.quotient_coords(&f.mul_vec(&e)) {
            return Err(Error::CheckFailed(format!("projection square fails at e_{k}")));
        }
    }
    for x in 0..h.dim() {
        let lhs = target.module.act(&big.col(x))?.mul(&matrix);
        let rhs = matrix.mul(&source.module.basis_actions().expect("basis actions")[x]);
        if lhs != rhs {
            return Err(Error::CheckFailed(format!("L(f) is not H-linear at basis element {x}")));
        }
    }
    let is_iso = matrix.is_square() && matrix.inverse().is_some();
    Ok(LiftedMap { matrix, source, target, is_iso })
}

/// Whether a linear map (columns = images of basis vectors) is a unital
/// algebra map, checked on all basis pairs.
pub fn algebra_map_report<F: Field>(src: &AlgebraData<F>, dst: &AlgebraData<F>, f: &Matrix<F>) -> Report {
    let n = src.dim();
    let mut rep = Report::new();
    rep.check(f.mul_vec(src.unit()) == dst.unit(), || "unit not preserved".into());
    let imgs: Vec<Vec<F>> = (0..n).map(|i| f.col(i)).collect();
    let fails: Vec<String> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            (0..n)
                .filter(|&j| f.mul_vec(&src.product_vec(i, j)) != dst.mul(&imgs[i], &imgs[j]))
                .map(move |j| format!("not multiplicative at ({i}, {j})"))
                .collect::<Vec<_>>()
        })
        .collect();
    for m in fails {
        rep.fail(m);
    }
    rep
}
