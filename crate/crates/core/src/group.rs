//! Finitely generated abelian groups in invariant factor form and their homomorphisms.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::int::{modulo, Int};
use crate::matrix::IntMatrix;
use crate::normal_form::smith;
use crate::subgroup::SubgroupRep;

/// `Z^r ⊕ Z/d_1 ⊕ ... ⊕ Z/d_m` with `2 <= d_1 | d_2 | ... | d_m`.
///
/// Elements are integer vectors of length `r + m`: free coordinates first,
/// then torsion coordinates reduced into `[0, d_i)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AbGroup {
    free_rank: usize,
    torsion: Vec<Int>,
}

/// A quotient `Z^n / Λ` brought to invariant factor form.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: AbGroup,
    /// `dim × n`: coordinates of the class of a vector.
    pub proj: IntMatrix,
    /// `n × dim`: a lift of each generator.
    pub section: IntMatrix,
}

impl AbGroup {
    pub fn new(free_rank: usize, torsion: Vec<Int>) -> Result<Self> {
        for (i, d) in torsion.iter().enumerate() {
            if *d < Int::from(2) {
                return Err(Error::InvalidGroup(format!("torsion coefficient {d} is below 2")));
            }
            if i > 0 && !(d % &torsion[i - 1]).is_zero() {
                return Err(Error::InvalidGroup(format!("{} does not divide {}", torsion[i - 1], d)));
            }
        }
        Ok(AbGroup { free_rank, torsion })
    }

    pub fn free(rank: usize) -> Self {
        AbGroup { free_rank: rank, torsion: Vec::new() }
    }

    pub fn trivial() -> Self {
        Self::free(0)
    }

    pub fn cyclic(order: i64) -> Result<Self> {
        Self::new(0, vec![Int::from(order)])
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[Int] {
        &self.torsion
    }

    /// Number of generators.
    pub fn dim(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.dim() == 0
    }

    /// Order of each generator, `0` for free generators.
    pub fn moduli(&self) -> Vec<Int> {
        let mut m = vec![Int::zero(); self.free_rank];
        m.extend(self.torsion.iter().cloned());
        m
    }

    pub fn torsion_only(&self) -> AbGroup {
        AbGroup { free_rank: 0, torsion: self.torsion.clone() }
    }

    pub fn free_part(&self) -> AbGroup {
        AbGroup::free(self.free_rank)
    }

    pub fn zero(&self) -> Vec<Int> {
        vec![Int::zero(); self.dim()]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Int> {
        let mut v = self.zero();
        v[i] = Int::one();
        v
    }

    pub fn generators(&self) -> Vec<Vec<Int>> {
        (0..self.dim()).map(|i| self.basis_vector(i)).collect()
    }

    /// Reduces torsion coordinates into range.
    pub fn reduce(&self, x: &[Int]) -> Result<Vec<Int>> {
        if x.len() != self.dim() {
            return Err(Error::Dimension(format!("element of length {} in a group with {} generators", x.len(), self.dim())));
        }
        let mut v = x.to_vec();
        for (i, d) in self.torsion.iter().enumerate() {
            let k = self.free_rank + i;
            v[k] = modulo(&v[k], d);
        }
        Ok(v)
    }

    pub fn is_reduced(&self, x: &[Int]) -> bool {
        self.reduce(x).map(|r| r == x).unwrap_or(false)
    }

    pub fn is_zero_element(&self, x: &[Int]) -> bool {
        self.reduce(x).map(|r| r.iter().all(Zero::is_zero)).unwrap_or(false)
    }

    /// Relation vectors `d_i e_{r+i}` of the lifted presentation.
    pub fn relation_rows(&self) -> Vec<Vec<Int>> {
        self.torsion
            .iter()
            .enumerate()
            .map(|(i, d)| {
                let mut v = self.zero();
                v[self.free_rank + i] = d.clone();
                v
            })
            .collect()
    }

    /// Indices of torsion generators.
    pub fn torsion_indices(&self) -> std::ops::Range<usize> {
        self.free_rank..self.dim()
    }

    /// `Z^n / ⟨relations⟩` in invariant factor form.
    pub fn from_relations(n: usize, relations: &[Vec<Int>]) -> Result<Quotient> {
        let r = IntMatrix::from_cols(relations, n)?;
        let s = smith(&r);
        let mut free_rows = Vec::new();
        let mut tors_rows = Vec::new();
        let mut torsion = Vec::new();
        for i in 0..n {
            if i >= s.rank {
                free_rows.push(i);
            } else if !s.d[(i, i)].is_one() {
                tors_rows.push(i);
                torsion.push(s.d[(i, i)].clone());
            }
        }
        let group = AbGroup::new(free_rows.len(), torsion)?;
        let order: Vec<usize> = free_rows.iter().chain(&tors_rows).copied().collect();
        let mut proj = s.u.select_rows(&order);
        for (k, d) in group.torsion.iter().enumerate() {
            let row = group.free_rank + k;
            for j in 0..n {
                proj[(row, j)] = modulo(&proj[(row, j)], d);
            }
        }
        let section = s.u_inv.select_cols(&order);
        Ok(Quotient { group, proj, section })
    }

    /// Direct sum with coordinates brought back to invariant factor form.
    pub fn direct_sum(&self, other: &AbGroup) -> DirectSum {
        let (r1, r2) = (self.free_rank, other.free_rank);
        let (m1, m2) = (self.torsion.len(), other.torsion.len());
        let (n1, n2) = (self.dim(), other.dim());
        let orders: Vec<Int> = self.torsion.iter().chain(&other.torsion).cloned().collect();
        let chained = orders.windows(2).all(|w| (&w[1] % &w[0]).is_zero());

        // torsion block: naive coordinates (t1, t2) against normalized ones
        let (tors_group, t_to, t_from) = if chained {
            let g = AbGroup { free_rank: 0, torsion: orders.clone() };
            (g, IntMatrix::identity(m1 + m2), IntMatrix::identity(m1 + m2))
        } else {
            let rel: Vec<Vec<Int>> = orders
                .iter()
                .enumerate()
                .map(|(i, d)| (0..m1 + m2).map(|j| if i == j { d.clone() } else { Int::zero() }).collect())
                .collect();
            let q = AbGroup::from_relations(m1 + m2, &rel).expect("cyclic presentation");
            (q.group, q.proj, q.section)
        };
        let mt = tors_group.torsion.len();
        let group = AbGroup { free_rank: r1 + r2, torsion: tors_group.torsion.clone() };
        let dim = group.dim();

        // to_new: naive (free1, t1, free2, t2) -> new; from_new: new -> naive
        let mut to_new = IntMatrix::zeros(dim, n1 + n2);
        let mut from_new = IntMatrix::zeros(n1 + n2, dim);
        for i in 0..r1 {
            to_new[(i, i)] = Int::one();
            from_new[(i, i)] = Int::one();
        }
        for i in 0..r2 {
            to_new[(r1 + i, n1 + i)] = Int::one();
            from_new[(n1 + i, r1 + i)] = Int::one();
        }
        let naive_t: Vec<usize> = (r1..n1).chain(n1 + r2..n1 + n2).collect();
        for (a, &col) in naive_t.iter().enumerate() {
            for b in 0..mt {
                to_new[(r1 + r2 + b, col)] = t_to[(b, a)].clone();
                from_new[(col, r1 + r2 + b)] = t_from[(a, b)].clone();
            }
        }
        let inj1 = GroupHom::new(self.clone(), group.clone(), to_new.block(0, 0, dim, n1)).expect("injection");
        let inj2 = GroupHom::new(other.clone(), group.clone(), to_new.block(0, n1, dim, n2)).expect("injection");
        let proj1 = GroupHom::new(group.clone(), self.clone(), from_new.block(0, 0, n1, dim)).expect("projection");
        let proj2 = GroupHom::new(group.clone(), other.clone(), from_new.block(n1, 0, n2, dim)).expect("projection");
        DirectSum { group, inj: [inj1, inj2], proj: [proj1, proj2] }
    }
}

impl fmt::Debug for AbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for AbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 { "Z".to_string() } else { format!("Z^{}", self.free_rank) });
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// `G_1 ⊕ G_2` with its structure maps.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub group: AbGroup,
    pub inj: [GroupHom; 2],
    pub proj: [GroupHom; 2],
}

impl DirectSum {
    /// Element of the sum with the given components.
    pub fn pair(&self, x: &[Int], y: &[Int]) -> Result<Vec<Int>> {
        let a = self.inj[0].apply(x)?;
        let b = self.inj[1].apply(y)?;
        self.group.reduce(&a.iter().zip(&b).map(|(p, q)| p + q).collect::<Vec<_>>())
    }

    /// `h_1 ⊕ h_2` as a map from this sum to `other`.
    pub fn hom_sum(&self, other: &DirectSum, h1: &GroupHom, h2: &GroupHom) -> Result<GroupHom> {
        let a = other.inj[0].compose(h1)?.compose(&self.proj[0])?;
        let b = other.inj[1].compose(h2)?.compose(&self.proj[1])?;
        GroupHom::new(self.group.clone(), other.group.clone(), a.matrix().add(b.matrix())?)
    }
}

/// Homomorphism given by a matrix: column `j` is the image of generator `j`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupHom {
    source: AbGroup,
    target: AbGroup,
    matrix: IntMatrix,
}

impl GroupHom {
    /// Validates shape and well-definedness; columns are reduced in the target.
    pub fn new(source: AbGroup, target: AbGroup, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::Dimension(format!(
                "{}x{} matrix for a map {} -> {}",
                matrix.rows(),
                matrix.cols(),
                source,
                target
            )));
        }
        let mut m = matrix;
        for (k, d) in target.torsion.iter().enumerate() {
            let row = target.free_rank + k;
            for j in 0..m.cols() {
                m[(row, j)] = modulo(&m[(row, j)], d);
            }
        }
        for (k, d) in source.torsion.iter().enumerate() {
            let col: Vec<Int> = m.col(source.free_rank + k).iter().map(|x| x * d).collect();
            if !target.is_zero_element(&col) {
                return Err(Error::NotWellDefined(format!("torsion generator {} of order {d} has image of larger order", source.free_rank + k)));
            }
        }
        Ok(GroupHom { source, target, matrix: m })
    }

    pub fn identity(g: &AbGroup) -> Self {
        GroupHom { source: g.clone(), target: g.clone(), matrix: IntMatrix::identity(g.dim()) }
    }

    pub fn zero(source: &AbGroup, target: &AbGroup) -> Self {
        GroupHom { source: source.clone(), target: target.clone(), matrix: IntMatrix::zeros(target.dim(), source.dim()) }
    }

    /// `-h`.
    pub fn negate(&self) -> Self {
        GroupHom::new(self.source.clone(), self.target.clone(), self.matrix.neg()).expect("negation")
    }

    pub fn source(&self) -> &AbGroup {
        &self.source
    }

    pub fn target(&self) -> &AbGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &[Int]) -> Result<Vec<Int>> {
        self.target.reduce(&self.matrix.mul_vec(x)?)
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &GroupHom) -> Result<GroupHom> {
        if first.target != self.source {
            return Err(Error::Dimension(format!("cannot compose {} -> {} after {} -> {}", self.source, self.target, first.source, first.target)));
        }
        GroupHom::new(first.source.clone(), self.target.clone(), self.matrix.mul(&first.matrix)?)
    }

    pub fn kernel(&self) -> Result<SubgroupRep> {
        SubgroupRep::zero(&self.target).preimage(self)
    }

    pub fn image(&self) -> Result<SubgroupRep> {
        SubgroupRep::new(&self.target, &self.matrix.col_vecs())
    }

    pub fn is_injective(&self) -> Result<bool> {
        Ok(self.kernel()?.is_zero())
    }

    pub fn is_surjective(&self) -> Result<bool> {
        Ok(self.image()? == SubgroupRep::whole(&self.target))
    }

    pub fn is_isomorphism(&self) -> Result<bool> {
        if self.source.is_free() && self.target.is_free() {
            return Ok(self.matrix.is_unimodular());
        }
        Ok(self.is_injective()? && self.is_surjective()?)
    }

    /// Some `x` with `h(x) = y`, canonical modulo the kernel.
    pub fn solve(&self, y: &[Int]) -> Result<Vec<Int>> {
        let y = self.target.reduce(y)?;
        let ns = self.source.dim();
        let rel = self.target.relation_rows();
        let mut cols = self.matrix.col_vecs();
        cols.extend(rel);
        let a = IntMatrix::from_cols(&cols, self.target.dim())?;
        let sol = crate::normal_form::solve_integer(&a, &y)?
            .ok_or_else(|| Error::NoSolution(format!("element {y:?} is not in the image")))?;
        let x = self.source.reduce(&sol[..ns])?;
        let ker = self.kernel()?;
        self.source.reduce(&crate::normal_form::reduce_mod_lattice(&x, ker.lattice()))
    }

    /// Inverse of an isomorphism.
    pub fn inverse(&self) -> Result<GroupHom> {
        if !self.is_isomorphism()? {
            return Err(Error::NoSolution("map is not an isomorphism".into()));
        }
        if self.source.is_free() && self.target.is_free() {
            let inv = crate::normal_form::unimodular_inverse(&self.matrix)?;
            return GroupHom::new(self.target.clone(), self.source.clone(), inv);
        }
        let cols = self
            .target
            .generators()
            .iter()
            .map(|g| self.solve(g))
            .collect::<Result<Vec<_>>>()?;
        GroupHom::new(self.target.clone(), self.source.clone(), IntMatrix::from_cols(&cols, self.source.dim())?)
    }
}

impl fmt::Debug for GroupHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupHom({} -> {}, {:?})", self.source, self.target, self.matrix)
    }
}

/// Some `x` with `h(x) = y`.
pub fn solve_in_group(h: &GroupHom, y: &[Int]) -> Result<Vec<Int>> {
    h.solve(y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::int::ints;

    #[test]
    fn group_validation() {
        assert!(AbGroup::new(1, ints(&[2, 4])).is_ok());
        assert!(AbGroup::new(1, ints(&[2, 3])).is_err());
        assert!(AbGroup::new(0, ints(&[1])).is_err());
    }

    #[test]
    fn quotient_of_diagonal() {
        let q = AbGroup::from_relations(2, &[ints(&[2, 0]), ints(&[0, 3])]).unwrap();
        assert_eq!(q.group, AbGroup::new(0, ints(&[6])).unwrap());
    }

    #[test]
    fn direct_sum_normalizes() {
        let a = AbGroup::new(1, ints(&[2])).unwrap();
        let b = AbGroup::new(0, ints(&[3])).unwrap();
        let s = a.direct_sum(&b);
        assert_eq!(s.group, AbGroup::new(1, ints(&[6])).unwrap());
        for x in [ints(&[1, 1]), ints(&[0, 1]), ints(&[5, 0])] {
            let e = s.inj[0].apply(&x).unwrap();
            assert_eq!(s.proj[0].apply(&e).unwrap(), a.reduce(&x).unwrap());
            assert_eq!(s.proj[1].apply(&e).unwrap(), ints(&[0]));
        }
        let e = s.inj[1].apply(&ints(&[1])).unwrap();
        assert_eq!(s.proj[1].apply(&e).unwrap(), ints(&[1]));
        assert_eq!(s.proj[0].apply(&e).unwrap(), ints(&[0, 0]));
    }

    #[test]
    fn reduction_map_solution() {
        let h = GroupHom::new(AbGroup::free(1), AbGroup::cyclic(2).unwrap(), IntMatrix::from_i64(1, 1, &[1])).unwrap();
        assert_eq!(h.solve(&ints(&[1])).unwrap(), ints(&[1]));
        let bad = GroupHom::new(AbGroup::cyclic(2).unwrap(), AbGroup::cyclic(3).unwrap(), IntMatrix::from_i64(1, 1, &[1]));
        assert!(matches!(bad, Err(Error::NotWellDefined(_))));
    }

    #[test]
    fn solve_free_system() {
        let h = GroupHom::new(AbGroup::free(2), AbGroup::free(1), IntMatrix::from_i64(1, 2, &[2, 3])).unwrap();
        let x = h.solve(&ints(&[1])).unwrap();
        assert_eq!(h.apply(&x).unwrap(), ints(&[1]));
    }
}
