//! Finitely generated abelian groups `Z^r × Z_{n_1} × … × Z_{n_s}` and their
//! characters.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::scalars::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<u32>,
}

impl AbelianGroup {
    pub fn new(free_rank: usize, torsion: Vec<u32>) -> Result<Self> {
        if let Some(&n) = torsion.iter().find(|&&n| n < 2) {
            return Err(Error::Invalid(format!("torsion order {n} must be at least 2")));
        }
        Ok(AbelianGroup { free_rank, torsion })
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup { free_rank: rank, torsion: Vec::new() }
    }

    pub fn cyclic(n: u32) -> Self {
        AbelianGroup { free_rank: 0, torsion: vec![n] }
    }

    /// Number of generators, `r + s`.
    pub fn ngens(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn order(&self) -> Option<u64> {
        self.is_finite().then(|| self.torsion.iter().map(|&n| n as u64).product())
    }

    /// Least common multiple of the torsion orders.
    pub fn exponent(&self) -> u32 {
        self.torsion.iter().fold(1, |a, b| a.lcm(b))
    }

    /// The generator order at coordinate `i`, `None` for free coordinates.
    pub fn order_at(&self, i: usize) -> Option<u32> {
        i.checked_sub(self.free_rank).map(|j| self.torsion[j])
    }

    pub fn elem(&self, exps: Vec<i64>) -> Result<GroupElem> {
        if exps.len() != self.ngens() {
            return Err(Error::Shape(format!(
                "group element has {} coordinates, group has {} generators",
                exps.len(),
                self.ngens()
            )));
        }
        let exps = exps
            .into_iter()
            .enumerate()
            .map(|(i, e)| match self.order_at(i) {
                Some(n) => e.rem_euclid(n as i64),
                None => e,
            })
            .collect();
        Ok(GroupElem { exps })
    }

    pub fn identity(&self) -> GroupElem {
        GroupElem { exps: vec![0; self.ngens()] }
    }

    /// The `i`-th generator.
    pub fn generator(&self, i: usize) -> GroupElem {
        let mut e = vec![0; self.ngens()];
        e[i] = 1;
        self.elem(e).unwrap()
    }

    pub fn mul(&self, a: &GroupElem, b: &GroupElem) -> GroupElem {
        self.elem(a.exps.iter().zip(&b.exps).map(|(x, y)| x + y).collect()).unwrap()
    }

    pub fn inv(&self, a: &GroupElem) -> GroupElem {
        self.elem(a.exps.iter().map(|x| -x).collect()).unwrap()
    }

    pub fn pow(&self, a: &GroupElem, e: i64) -> GroupElem {
        self.elem(a.exps.iter().map(|x| x * e).collect()).unwrap()
    }

    /// All elements of a finite group, in lexicographic exponent order.
    pub fn elements(&self) -> Result<Vec<GroupElem>> {
        if !self.is_finite() {
            return Err(Error::Invalid("cannot list elements of an infinite group".into()));
        }
        let mut out = vec![Vec::new()];
        for &n in &self.torsion {
            out = out
                .into_iter()
                .flat_map(|p: Vec<i64>| {
                    (0..n as i64).map(move |k| {
                        let mut q = p.clone();
                        q.push(k);
                        q
                    })
                })
                .collect();
        }
        Ok(out.into_iter().map(|exps| GroupElem { exps }).collect())
    }

    /// Validate generator values of a character.
    pub fn character<F: Field>(&self, values: Vec<F>) -> Result<Character<F>> {
        if values.len() != self.ngens() {
            return Err(Error::Shape(format!(
                "character has {} values, group has {} generators",
                values.len(),
                self.ngens()
            )));
        }
        for (i, v) in values.iter().enumerate() {
            if v.is_zero() {
                return Err(Error::Invalid(format!("character value on generator {i} is zero")));
            }
            if let Some(n) = self.order_at(i) {
                if !v.pow_int(n as i64).is_one() {
                    return Err(Error::Invalid(format!(
                        "character value {v} on generator {i} has order not dividing {n}"
                    )));
                }
            }
        }
        Ok(Character { values })
    }

    pub fn trivial_character<F: Field>(&self) -> Character<F> {
        Character { values: vec![F::one(); self.ngens()] }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupElem {
    exps: Vec<i64>,
}

impl GroupElem {
    pub fn exponents(&self) -> &[i64] {
        &self.exps
    }
}

/// A homomorphism from the group to the multiplicative group of the field,
/// given by its values on generators.
#[derive(Clone, Debug, PartialEq)]
pub struct Character<F: Field> {
    values: Vec<F>,
}

impl<F: Field> Character<F> {
    pub fn values(&self) -> &[F] {
        &self.values
    }

    pub fn eval(&self, g: &GroupElem) -> Result<F> {
        if g.exps.len() != self.values.len() {
            return Err(Error::Shape("character and group element shapes differ".into()));
        }
        let mut acc = F::one();
        for (v, &e) in self.values.iter().zip(&g.exps) {
            if e != 0 {
                acc = acc * &v.pow_int(e);
            }
        }
        Ok(acc)
    }

    pub fn product(&self, other: &Self) -> Result<Self> {
        if self.values.len() != other.values.len() {
            return Err(Error::Shape("characters of different groups".into()));
        }
        Ok(Character { values: self.values.iter().zip(&other.values).map(|(a, b)| a.clone() * b).collect() })
    }

    pub fn power(&self, e: i64) -> Self {
        Character { values: self.values.iter().map(|v| v.pow_int(e)).collect() }
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|v| v.is_one())
    }
}

/// All characters of a finite abelian group with values in Q(ζ_N).
pub fn enumerate_characters(g: &AbelianGroup, conductor: u32) -> Result<Vec<Character<Scalar>>> {
    if !g.is_finite() {
        return Err(Error::Invalid("a group of positive free rank has infinitely many characters".into()));
    }
    let e = g.exponent();
    if !conductor.is_multiple_of(e) {
        return Err(Error::ConductorTooSmall { have: conductor, need: e });
    }
    let mut out: Vec<Vec<Scalar>> = vec![Vec::new()];
    for &n in &g.torsion {
        let step = (conductor / n) as i64;
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..n as i64).map(move |k| {
                    let mut q = p.clone();
                    q.push(Scalar::zeta_pow(conductor, k * step));
                    q
                })
            })
            .collect();
    }
    Ok(out.into_iter().map(|values| Character { values }).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn torsion_reduces() {
        let g = AbelianGroup::new(1, vec![3]).unwrap();
        assert_eq!(g.elem(vec![-2, 7]).unwrap().exponents(), &[-2, 1]);
        assert!(AbelianGroup::new(0, vec![1]).is_err());
    }

    #[test]
    fn character_counts() {
        let z2 = AbelianGroup::cyclic(2);
        assert_eq!(enumerate_characters(&z2, 2).unwrap().len(), 2);
        let v4 = AbelianGroup::new(0, vec![2, 2]).unwrap();
        let chars = enumerate_characters(&v4, 2).unwrap();
        assert_eq!(chars.len(), 4);
        for (i, a) in chars.iter().enumerate() {
            for b in &chars[i + 1..] {
                assert_ne!(a, b);
            }
        }
        assert!(matches!(enumerate_characters(&AbelianGroup::cyclic(3), 2), Err(Error::ConductorTooSmall { .. })));
        assert!(enumerate_characters(&AbelianGroup::free(1), 2).is_err());
    }

    #[test]
    fn order_two_character() {
        let z2 = AbelianGroup::cyclic(2);
        let chi = z2.character(vec![Scalar::from_int(-1)]).unwrap();
        let g = z2.generator(0);
        assert_eq!(chi.eval(&z2.pow(&g, 2)).unwrap(), Scalar::one());
        assert!(z2.character(vec![Scalar::from_int(2)]).is_err());
    }

    #[test]
    fn inverse_character_is_trivial_product() {
        let g = AbelianGroup::free(2);
        let q = Scalar::q();
        let chi = g.character(vec![q.pow_int(2), q.pow_int(-2)]).unwrap();
        assert!(chi.product(&chi.power(-1)).unwrap().is_trivial());
        assert!(chi.power(0).is_trivial());
    }
}
