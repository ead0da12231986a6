//! Subgroups in canonical form.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::group::{AbGroup, GroupHom, Quotient};
use crate::int::Int;
use crate::matrix::IntMatrix;
use crate::normal_form::{hermite_rows, in_lattice, kernel, lattice_intersection};

/// Subgroup of an [`AbGroup`].
///
/// Stored through the Hermite basis of its preimage in `Z^n`, which contains
/// the torsion relations; two subgroups are equal exactly when these agree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SubgroupRep {
    ambient: AbGroup,
    lattice: Vec<Vec<Int>>,
    generators: Vec<Vec<Int>>,
}

impl SubgroupRep {
    pub fn new(ambient: &AbGroup, gens: &[Vec<Int>]) -> Result<Self> {
        let mut rows = Vec::with_capacity(gens.len() + ambient.torsion().len());
        for g in gens {
            rows.push(ambient.reduce(g)?);
        }
        rows.extend(ambient.relation_rows());
        Ok(Self::from_lattice(ambient, hermite_rows(&rows, ambient.dim())))
    }

    fn from_lattice(ambient: &AbGroup, lattice: Vec<Vec<Int>>) -> Self {
        let mut generators: Vec<Vec<Int>> = Vec::new();
        for row in &lattice {
            let g = ambient.reduce(row).expect("lattice row");
            if g.iter().any(|x| !x.is_zero()) && !generators.contains(&g) {
                generators.push(g);
            }
        }
        SubgroupRep { ambient: ambient.clone(), lattice, generators }
    }

    pub fn zero(ambient: &AbGroup) -> Self {
        Self::new(ambient, &[]).expect("zero subgroup")
    }

    pub fn whole(ambient: &AbGroup) -> Self {
        Self::new(ambient, &ambient.generators()).expect("whole group")
    }

    /// `Tor G`.
    pub fn torsion(ambient: &AbGroup) -> Self {
        let gens: Vec<Vec<Int>> = ambient.torsion_indices().map(|i| ambient.basis_vector(i)).collect();
        Self::new(ambient, &gens).expect("torsion subgroup")
    }

    pub fn ambient(&self) -> &AbGroup {
        &self.ambient
    }

    /// Canonical generators.
    pub fn generators(&self) -> &[Vec<Int>] {
        &self.generators
    }

    /// Hermite basis of the preimage in `Z^n`.
    pub fn lattice(&self) -> &[Vec<Int>] {
        &self.lattice
    }

    pub fn rank(&self) -> usize {
        self.lattice.len() - self.ambient.torsion().len()
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn contains(&self, x: &[Int]) -> Result<bool> {
        Ok(in_lattice(&self.ambient.reduce(x)?, &self.lattice))
    }

    pub fn contains_subgroup(&self, other: &SubgroupRep) -> Result<bool> {
        self.same_ambient(other)?;
        Ok(other.generators.iter().all(|g| in_lattice(g, &self.lattice)))
    }

    fn same_ambient(&self, other: &SubgroupRep) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::Dimension(format!("subgroups of {} and {}", self.ambient, other.ambient)));
        }
        Ok(())
    }

    pub fn sum(&self, other: &SubgroupRep) -> Result<SubgroupRep> {
        self.same_ambient(other)?;
        let mut g = self.generators.clone();
        g.extend(other.generators.iter().cloned());
        SubgroupRep::new(&self.ambient, &g)
    }

    pub fn intersect(&self, other: &SubgroupRep) -> Result<SubgroupRep> {
        self.same_ambient(other)?;
        let l = lattice_intersection(&self.lattice, &other.lattice, self.ambient.dim());
        Ok(Self::from_lattice(&self.ambient, l))
    }

    /// `S ∩ Tor G = 0`.
    pub fn is_free(&self) -> Result<bool> {
        Ok(self.intersect(&SubgroupRep::torsion(&self.ambient))?.is_zero())
    }

    /// `Tor G ≤ S`.
    pub fn contains_torsion(&self) -> Result<bool> {
        self.contains_subgroup(&SubgroupRep::torsion(&self.ambient))
    }

    /// Basis of a free subgroup.
    pub fn basis(&self) -> Result<Vec<Vec<Int>>> {
        if !self.is_free()? {
            return Err(Error::InvalidSubgroup("subgroup meets the torsion".into()));
        }
        Ok(self.generators.clone())
    }

    /// `h(S)`.
    pub fn image(&self, h: &GroupHom) -> Result<SubgroupRep> {
        if h.source() != &self.ambient {
            return Err(Error::Dimension("image under a map from another group".into()));
        }
        let imgs = self.generators.iter().map(|g| h.apply(g)).collect::<Result<Vec<_>>>()?;
        SubgroupRep::new(h.target(), &imgs)
    }

    /// `h^{-1}(S)`.
    pub fn preimage(&self, h: &GroupHom) -> Result<SubgroupRep> {
        if h.target() != &self.ambient {
            return Err(Error::Dimension("preimage under a map into another group".into()));
        }
        let ns = h.source().dim();
        let nt = self.ambient.dim();
        let mut cols = h.matrix().col_vecs();
        cols.extend(self.lattice.iter().map(|r| r.iter().map(|x| -x).collect::<Vec<_>>()));
        let k = kernel(&IntMatrix::from_cols(&cols, nt)?);
        let xs: Vec<Vec<Int>> = k.into_iter().map(|v| v[..ns].to_vec()).collect();
        let xs = xs.iter().map(|x| h.source().reduce(x)).collect::<Result<Vec<_>>>()?;
        SubgroupRep::new(h.source(), &xs)
    }

    /// `G / S` with its projection.
    pub fn quotient(&self) -> Result<Quotient> {
        AbGroup::from_relations(self.ambient.dim(), &self.lattice)
    }

    /// Whether `G / S` is free.
    pub fn summand_test(&self) -> Result<bool> {
        Ok(self.quotient()?.group.is_free())
    }

    /// `S` as an abstract group with its inclusion.
    pub fn as_group(&self) -> Result<(AbGroup, GroupHom)> {
        let n = self.ambient.dim();
        let k = self.generators.len();
        let mut cols = self.generators.clone();
        cols.extend(self.ambient.relation_rows());
        let ker = kernel(&IntMatrix::from_cols(&cols, n)?);
        let rels: Vec<Vec<Int>> = ker.into_iter().map(|v| v[..k].to_vec()).collect();
        let q = AbGroup::from_relations(k, &rels)?;
        let gens = IntMatrix::from_cols(&self.generators, n)?;
        let incl = GroupHom::new(q.group.clone(), self.ambient.clone(), gens.mul(&q.section)?)?;
        Ok((q.group, incl))
    }

    /// Whether `S` is a direct summand of the ambient group.
    pub fn is_direct_summand(&self) -> Result<bool> {
        let q = self.quotient()?;
        if q.group.is_free() {
            return Ok(true);
        }
        let (_, incl) = self.as_group()?;
        for (k, d) in q.group.torsion().iter().enumerate() {
            let j = q.group.free_rank() + k;
            let lift = self.ambient.reduce(&q.section.col(j))?;
            let target: Vec<Int> = lift.iter().map(|x| -(x * d)).collect();
            let scaled = GroupHom::new(incl.source().clone(), self.ambient.clone(), incl.matrix().scale(d))?;
            if scaled.solve(&target).is_err() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// A canonical `C` with `G = S ⊕ C`.
    ///
    /// Works when `G / S` is free, giving a free `C`, and when `S` is free
    /// with saturated image in `G / Tor G`, giving `C ⊇ Tor G`.
    pub fn complement(&self) -> Result<SubgroupRep> {
        let q = self.quotient()?;
        if q.group.is_free() {
            let gens: Vec<Vec<Int>> = (0..q.group.dim()).map(|j| q.section.col(j)).collect();
            return SubgroupRep::new(&self.ambient, &gens);
        }
        if self.is_free()? {
            let r = self.ambient.free_rank();
            let free = AbGroup::free(r);
            let img: Vec<Vec<Int>> = self.generators.iter().map(|g| g[..r].to_vec()).collect();
            let bar = SubgroupRep::new(&free, &img)?;
            let qb = bar.quotient()?;
            if qb.group.is_free() {
                let mut gens: Vec<Vec<Int>> = (0..qb.group.dim())
                    .map(|j| {
                        let mut v = qb.section.col(j);
                        v.resize(self.ambient.dim(), Int::zero());
                        v
                    })
                    .collect();
                gens.extend(self.ambient.torsion_indices().map(|i| self.ambient.basis_vector(i)));
                return SubgroupRep::new(&self.ambient, &gens);
            }
        }
        Err(Error::hyp("not a direct summand"))
    }
}

/// Canonical complement of `b`.
pub fn direct_complement(b: &SubgroupRep) -> Result<SubgroupRep> {
    b.complement()
}

/// Whether `b` has free quotient.
pub fn summand_test(b: &SubgroupRep) -> Result<bool> {
    b.summand_test()
}

/// `G / B` together with the projection `G -> G / B`.
pub fn quotient_with_projection(b: &SubgroupRep) -> Result<(AbGroup, GroupHom)> {
    let q = b.quotient()?;
    let proj = GroupHom::new(b.ambient().clone(), q.group.clone(), q.proj)?;
    Ok((q.group, proj))
}

impl fmt::Debug for SubgroupRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self
            .generators
            .iter()
            .map(|g| format!("({})", g.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "<{}> in {}", gens.join(", "), self.ambient)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::int::ints;

    #[test]
    fn quotient_by_diagonal_is_free() {
        let z2 = AbGroup::free(2);
        let b = SubgroupRep::new(&z2, &[ints(&[1, 1])]).unwrap();
        let (q, pi) = quotient_with_projection(&b).unwrap();
        assert_eq!(q, AbGroup::free(1));
        assert!(q.is_zero_element(&pi.apply(&ints(&[3, 3])).unwrap()));
        let c = b.complement().unwrap();
        assert_eq!(c.generators(), &[ints(&[0, 1])]);
        assert_eq!(b.sum(&c).unwrap(), SubgroupRep::whole(&z2));
        assert!(b.intersect(&c).unwrap().is_zero());
    }

    #[test]
    fn two_times_is_not_a_summand() {
        let z = AbGroup::free(1);
        let b = SubgroupRep::new(&z, &[ints(&[2])]).unwrap();
        assert!(!b.summand_test().unwrap());
        assert!(!b.is_direct_summand().unwrap());
        assert!(b.complement().is_err());
    }

    #[test]
    fn torsion_subgroups() {
        let g = AbGroup::new(1, ints(&[2])).unwrap();
        let t = SubgroupRep::torsion(&g);
        assert!(t.summand_test().unwrap());
        assert_eq!(t.rank(), 0);
        let s = SubgroupRep::new(&g, &[ints(&[1, 1])]).unwrap();
        assert!(s.is_free().unwrap());
        assert_eq!(s.basis().unwrap(), vec![ints(&[1, 1])]);
        assert!(s.is_direct_summand().unwrap());
        let c = s.complement().unwrap();
        assert!(c.contains_torsion().unwrap());
        assert_eq!(c.sum(&s).unwrap(), SubgroupRep::whole(&g));
        assert!(c.intersect(&s).unwrap().is_zero());
        let (grp, incl) = t.as_group().unwrap();
        assert_eq!(grp, AbGroup::cyclic(2).unwrap());
        assert!(incl.is_injective().unwrap());
    }

    #[test]
    fn non_summand_torsion() {
        // <2> in Z/4
        let g = AbGroup::cyclic(4).unwrap();
        let s = SubgroupRep::new(&g, &[ints(&[2])]).unwrap();
        assert!(!s.is_direct_summand().unwrap());
        // <(1, 2)> in Z/2 + Z/4 is a summand
        let g = AbGroup::new(0, ints(&[2, 4])).unwrap();
        let s = SubgroupRep::new(&g, &[ints(&[0, 1])]).unwrap();
        assert!(s.is_direct_summand().unwrap());
    }

    #[test]
    fn preimage_and_kernel() {
        let h = GroupHom::new(AbGroup::free(2), AbGroup::cyclic(2).unwrap(), IntMatrix::from_i64(1, 2, &[1, 1])).unwrap();
        let k = h.kernel().unwrap();
        assert_eq!(k.rank(), 2);
        assert!(k.contains(&ints(&[1, 1])).unwrap());
        assert!(!k.contains(&ints(&[1, 0])).unwrap());
    }
}
