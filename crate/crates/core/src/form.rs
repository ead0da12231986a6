//! Extended quadratic forms `(M, λ, μ)` with values of `μ` in an abelian group `Q`.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{AbGroup, DirectSum, GroupHom};
use crate::int::Int;
use crate::matrix::IntMatrix;
use crate::subgroup::SubgroupRep;

/// Extended quadratic form.
///
/// `lambda` is symmetric with zero rows and columns on torsion generators,
/// `mu: M -> Q` is a homomorphism, and `v: Q -> Z/2` is optional, stored as
/// the value on each generator of `Q`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EQForm {
    group: AbGroup,
    lambda: IntMatrix,
    mu: GroupHom,
    v: Option<Vec<u8>>,
}

/// Properties reported by [`EQForm::report`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormReport {
    pub free: bool,
    pub nonsingular: bool,
    pub even: bool,
    pub full: bool,
    /// `None` when the form carries no `v`.
    pub geometric: Option<bool>,
}

/// Properties of a subgroup relative to a form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubgroupClass {
    pub isotropic: bool,
    pub mu_vanishes: bool,
    pub half_rank_summand: bool,
    pub free_lagrangian: bool,
    pub t_lagrangian: bool,
}

impl EQForm {
    pub fn new(group: AbGroup, lambda: IntMatrix, mu: GroupHom, v: Option<Vec<u8>>) -> Result<Self> {
        let n = group.dim();
        if lambda.rows() != n || lambda.cols() != n {
            return Err(Error::InvalidForm(format!("lambda is {}x{} on a group with {} generators", lambda.rows(), lambda.cols(), n)));
        }
        if !lambda.is_symmetric() {
            return Err(Error::InvalidForm("lambda is not symmetric".into()));
        }
        for t in group.torsion_indices() {
            if (0..n).any(|j| !lambda[(t, j)].is_zero()) {
                return Err(Error::InvalidForm(format!("lambda is nonzero on torsion generator {t}")));
            }
        }
        if mu.source() != &group {
            return Err(Error::InvalidForm("mu is defined on another group".into()));
        }
        if let Some(v) = &v {
            check_v(mu.target(), v)?;
        }
        Ok(EQForm { group, lambda, mu, v })
    }

    /// Form with `μ` given by a matrix into `target`.
    pub fn from_parts(group: AbGroup, lambda: IntMatrix, target: AbGroup, mu: IntMatrix, v: Option<Vec<u8>>) -> Result<Self> {
        let mu = GroupHom::new(group.clone(), target, mu)?;
        Self::new(group, lambda, mu, v)
    }

    /// Free form `(Z^n, lambda, mu)`.
    pub fn free(lambda: IntMatrix, target: AbGroup, mu: IntMatrix) -> Result<Self> {
        Self::from_parts(AbGroup::free(lambda.rows()), lambda, target, mu, None)
    }

    /// `H_{2k}` with `μ = 0` into `target`: `λ = [[0, I], [I, 0]]`.
    pub fn hyperbolic(k: usize, target: &AbGroup) -> Self {
        let mut l = IntMatrix::zeros(2 * k, 2 * k);
        for i in 0..k {
            l[(i, k + i)] = Int::one();
            l[(k + i, i)] = Int::one();
        }
        let g = AbGroup::free(2 * k);
        EQForm { mu: GroupHom::zero(&g, target), group: g, lambda: l, v: None }
    }

    pub fn group(&self) -> &AbGroup {
        &self.group
    }

    pub fn lambda(&self) -> &IntMatrix {
        &self.lambda
    }

    pub fn mu(&self) -> &GroupHom {
        &self.mu
    }

    pub fn target(&self) -> &AbGroup {
        self.mu.target()
    }

    pub fn v(&self) -> Option<&[u8]> {
        self.v.as_deref()
    }

    pub fn rank(&self) -> usize {
        self.group.free_rank()
    }

    pub fn dim(&self) -> usize {
        self.group.dim()
    }

    /// Same form with the given `v`.
    pub fn with_v(&self, v: Option<Vec<u8>>) -> Result<Self> {
        Self::new(self.group.clone(), self.lambda.clone(), self.mu.clone(), v)
    }

    pub fn pairing(&self, x: &[Int], y: &[Int]) -> Result<Int> {
        self.lambda.bilinear(x, y)
    }

    pub fn mu_of(&self, x: &[Int]) -> Result<Vec<Int>> {
        self.mu.apply(x)
    }

    /// `v(q)` as 0 or 1.
    pub fn v_of(&self, q: &[Int]) -> Result<u8> {
        let v = self.v.as_ref().ok_or(Error::VMissing)?;
        let q = self.target().reduce(q)?;
        let s: Int = v.iter().zip(&q).filter(|(b, _)| **b == 1).map(|(_, x)| x.clone()).sum();
        Ok(if s.is_odd() { 1 } else { 0 })
    }

    /// `λ` restricted to the free generators.
    pub fn free_lambda(&self) -> IntMatrix {
        let r = self.rank();
        self.lambda.block(0, 0, r, r)
    }

    pub fn is_free(&self) -> bool {
        self.group.is_free()
    }

    pub fn is_nonsingular(&self) -> bool {
        self.free_lambda().det().map(|d| d.abs().is_one()).unwrap_or(false)
    }

    pub fn is_even(&self) -> bool {
        (0..self.dim()).all(|i| self.lambda[(i, i)].is_even())
    }

    pub fn is_full(&self) -> bool {
        self.mu.is_surjective().unwrap_or(false)
    }

    /// `λ(x, x) ≡ v(μ(x)) mod 2` for all `x`; checked on generators.
    pub fn is_geometric(&self) -> Result<bool> {
        for i in 0..self.dim() {
            let e = self.group.basis_vector(i);
            let parity = if self.lambda[(i, i)].is_odd() { 1 } else { 0 };
            if parity != self.v_of(&self.mu_of(&e)?)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn report(&self) -> FormReport {
        FormReport {
            free: self.is_free(),
            nonsingular: self.is_nonsingular(),
            even: self.is_even(),
            full: self.is_full(),
            geometric: self.is_geometric().ok(),
        }
    }

    /// `-M = (M, -λ, -μ)`.
    pub fn negative(&self) -> Self {
        EQForm { group: self.group.clone(), lambda: self.lambda.neg(), mu: self.mu.negate(), v: self.v.clone() }
    }

    /// `M* = (M, λ, -μ)`.
    pub fn star(&self) -> Self {
        EQForm { group: self.group.clone(), lambda: self.lambda.clone(), mu: self.mu.negate(), v: self.v.clone() }
    }

    /// `h*(M) = (N, h^T λ h, μ ∘ h)` for `h: N -> M`.
    pub fn pullback(&self, h: &GroupHom) -> Result<Self> {
        if h.target() != &self.group {
            return Err(Error::Dimension("pullback along a map into another group".into()));
        }
        let lambda = self.lambda.congruence(h.matrix())?;
        Self::new(h.source().clone(), lambda, self.mu.compose(h)?, self.v.clone())
    }

    /// Restriction of the form to a subgroup, in the subgroup's own coordinates.
    pub fn restrict(&self, s: &SubgroupRep) -> Result<(Self, GroupHom)> {
        let (_, incl) = s.as_group()?;
        Ok((self.pullback(&incl)?, incl))
    }

    /// `M ⊕ M'` with its structure maps.
    pub fn direct_sum(&self, other: &EQForm) -> Result<(Self, DirectSum)> {
        if self.target() != other.target() {
            return Err(Error::InvalidForm(format!("forms with values in {} and {}", self.target(), other.target())));
        }
        let v = match (&self.v, &other.v) {
            (Some(a), Some(b)) if a != b => return Err(Error::InvalidForm("forms carry different v".into())),
            (Some(a), _) => Some(a.clone()),
            (None, b) => b.clone(),
        };
        let ds = self.group.direct_sum(&other.group);
        let p1 = ds.proj[0].matrix();
        let p2 = ds.proj[1].matrix();
        let lambda = self.lambda.congruence(p1)?.add(&other.lambda.congruence(p2)?)?;
        let mu = self.mu.compose(&ds.proj[0])?.matrix().add(other.mu.compose(&ds.proj[1])?.matrix())?;
        let form = EQForm::from_parts(ds.group.clone(), lambda, self.target().clone(), mu, v)?;
        Ok((form, ds))
    }

    /// Direct sum of free forms, block by block.
    pub fn sum(&self, other: &EQForm) -> Result<Self> {
        Ok(self.direct_sum(other)?.0)
    }

    /// `X^⊥ = {y : λ(x, y) = 0 for all x in X}`.
    pub fn perp(&self, x: &SubgroupRep) -> Result<SubgroupRep> {
        if x.ambient() != &self.group {
            return Err(Error::Dimension("subgroup of another group".into()));
        }
        let r = self.rank();
        let rows: Vec<Vec<Int>> = x
            .generators()
            .iter()
            .map(|g| Ok(self.lambda.transpose().mul_vec(g)?[..r].to_vec()))
            .collect::<Result<_>>()?;
        let k = crate::normal_form::kernel(&IntMatrix::from_rows(&rows, r)?);
        let mut gens: Vec<Vec<Int>> = k
            .into_iter()
            .map(|mut v| {
                v.resize(self.dim(), Int::zero());
                v
            })
            .collect();
        gens.extend(self.group.torsion_indices().map(|i| self.group.basis_vector(i)));
        SubgroupRep::new(&self.group, &gens)
    }

    pub fn is_isotropic(&self, s: &SubgroupRep) -> Result<bool> {
        let g = s.generators();
        for i in 0..g.len() {
            for j in i..g.len() {
                if !self.pairing(&g[i], &g[j])?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn mu_vanishes_on(&self, s: &SubgroupRep) -> Result<bool> {
        for g in s.generators() {
            if !self.target().is_zero_element(&self.mu_of(g)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn classify(&self, s: &SubgroupRep) -> Result<SubgroupClass> {
        if s.ambient() != &self.group {
            return Err(Error::Dimension("subgroup of another group".into()));
        }
        let isotropic = self.is_isotropic(s)?;
        let mu_vanishes = self.mu_vanishes_on(s)?;
        let half_rank_summand = 2 * s.rank() == self.rank() && s.is_direct_summand()?;
        let free = s.is_free()?;
        let contains_torsion = s.contains_torsion()?;
        let lagr = isotropic && mu_vanishes && half_rank_summand;
        Ok(SubgroupClass {
            isotropic,
            mu_vanishes,
            half_rank_summand,
            free_lagrangian: lagr && free,
            t_lagrangian: lagr && contains_torsion,
        })
    }

    pub fn is_free_lagrangian(&self, s: &SubgroupRep) -> Result<bool> {
        Ok(self.classify(s)?.free_lagrangian)
    }

    pub fn is_t_lagrangian(&self, s: &SubgroupRep) -> Result<bool> {
        Ok(self.classify(s)?.t_lagrangian)
    }

    /// Nonsingular with a free lagrangian.
    pub fn is_metabolic_with(&self, l: &SubgroupRep) -> Result<bool> {
        Ok(self.is_nonsingular() && self.is_free_lagrangian(l)?)
    }
}

fn check_v(q: &AbGroup, v: &[u8]) -> Result<()> {
    if v.len() != q.dim() {
        return Err(Error::InvalidForm(format!("v has {} values for {} generators", v.len(), q.dim())));
    }
    if v.iter().any(|&b| b > 1) {
        return Err(Error::InvalidForm("v takes values 0 and 1".into()));
    }
    for (k, d) in q.torsion().iter().enumerate() {
        if v[q.free_rank() + k] == 1 && d.is_odd() {
            return Err(Error::InvalidForm(format!("v is not defined on a generator of odd order {d}")));
        }
    }
    Ok(())
}

impl fmt::Debug for EQForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EQForm({}, λ={:?}, μ={:?} into {}", self.group, self.lambda, self.mu.matrix(), self.target())?;
        if let Some(v) = &self.v {
            write!(f, ", v={v:?}")?;
        }
        write!(f, ")")
    }
}

/// Isomorphism of extended quadratic forms `h: N -> M`.
#[derive(Clone, PartialEq, Eq)]
pub struct FormIso {
    source: EQForm,
    target: EQForm,
    map: GroupHom,
}

impl FormIso {
    /// Validates bijectivity, `h^T λ_M h = λ_N` and `μ_M ∘ h = μ_N`.
    pub fn new(source: &EQForm, target: &EQForm, matrix: IntMatrix) -> Result<Self> {
        let map = GroupHom::new(source.group.clone(), target.group.clone(), matrix)
            .map_err(|e| Error::InvalidWitness(format!("isomorphism matrix: {e}")))?;
        let iso = FormIso { source: source.clone(), target: target.clone(), map };
        iso.check()?;
        Ok(iso)
    }

    fn check(&self) -> Result<()> {
        if self.source.target() != self.target.target() {
            return Err(Error::InvalidWitness("forms take values in different groups".into()));
        }
        if !self.map.is_isomorphism()? {
            return Err(Error::InvalidWitness("map is not bijective".into()));
        }
        if self.target.lambda.congruence(self.map.matrix())? != self.source.lambda {
            return Err(Error::InvalidWitness("map does not preserve lambda".into()));
        }
        if self.target.mu.compose(&self.map)? != self.source.mu {
            return Err(Error::InvalidWitness("map does not preserve mu".into()));
        }
        Ok(())
    }

    pub fn identity(form: &EQForm) -> Self {
        FormIso { source: form.clone(), target: form.clone(), map: GroupHom::identity(&form.group) }
    }

    pub fn source(&self) -> &EQForm {
        &self.source
    }

    pub fn target(&self) -> &EQForm {
        &self.target
    }

    pub fn map(&self) -> &GroupHom {
        &self.map
    }

    pub fn matrix(&self) -> &IntMatrix {
        self.map.matrix()
    }

    pub fn apply(&self, x: &[Int]) -> Result<Vec<Int>> {
        self.map.apply(x)
    }

    pub fn apply_subgroup(&self, s: &SubgroupRep) -> Result<SubgroupRep> {
        s.image(&self.map)
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &FormIso) -> Result<FormIso> {
        if first.target != self.source {
            return Err(Error::InvalidWitness("composing isomorphisms between mismatched forms".into()));
        }
        Ok(FormIso { source: first.source.clone(), target: self.target.clone(), map: self.map.compose(&first.map)? })
    }

    pub fn inverse(&self) -> Result<FormIso> {
        Ok(FormIso { source: self.target.clone(), target: self.source.clone(), map: self.map.inverse()? })
    }

    /// `a ⊕ b` between the sums of sources and of targets.
    pub fn direct_sum(a: &FormIso, b: &FormIso) -> Result<FormIso> {
        let (src, ds) = a.source.direct_sum(&b.source)?;
        let (tgt, dt) = a.target.direct_sum(&b.target)?;
        let m = ds.hom_sum(&dt, &a.map, &b.map)?;
        FormIso::new(&src, &tgt, m.matrix().clone())
    }

    /// Map sending generator `j` to generator `perm[j]`.
    pub fn permutation(source: &EQForm, target: &EQForm, perm: &[usize]) -> Result<FormIso> {
        FormIso::new(source, target, IntMatrix::permutation(perm))
    }

    /// Same map between forms that differ only in `v`.
    pub fn with_forms(&self, source: &EQForm, target: &EQForm) -> Result<FormIso> {
        FormIso::new(source, target, self.matrix().clone())
    }
}

impl fmt::Debug for FormIso {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FormIso({:?})", self.map.matrix())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::int::ints;

    fn h2_over_z() -> EQForm {
        EQForm::hyperbolic(1, &AbGroup::free(1)).with_v(Some(vec![0])).unwrap()
    }

    #[test]
    fn hyperbolic_report() {
        let r = h2_over_z().report();
        assert_eq!(r, FormReport { free: true, nonsingular: true, even: true, full: false, geometric: Some(true) });
        let no_v = EQForm::hyperbolic(1, &AbGroup::free(1));
        assert_eq!(no_v.is_geometric(), Err(Error::VMissing));
    }

    #[test]
    fn torsion_rows_rejected() {
        let g = AbGroup::new(1, ints(&[2])).unwrap();
        let l = IntMatrix::from_i64(2, 2, &[0, 1, 1, 0]);
        let r = EQForm::from_parts(g, l, AbGroup::trivial(), IntMatrix::zeros(0, 2), None);
        assert!(matches!(r, Err(Error::InvalidForm(_))));
    }

    #[test]
    fn perp_of_first_basis_vector() {
        let h = h2_over_z();
        let x = SubgroupRep::new(h.group(), &[ints(&[1, 0])]).unwrap();
        assert_eq!(h.perp(&x).unwrap(), x);
        let all = SubgroupRep::whole(h.group());
        assert!(h.perp(&all).unwrap().is_zero());
    }

    #[test]
    fn perp_contains_torsion() {
        let g = AbGroup::new(2, ints(&[3])).unwrap();
        let l = IntMatrix::from_i64(3, 3, &[0, 1, 0, 1, 0, 0, 0, 0, 0]);
        let f = EQForm::from_parts(g.clone(), l, AbGroup::trivial(), IntMatrix::zeros(0, 3), None).unwrap();
        let x = SubgroupRep::new(&g, &[ints(&[1, 0, 0])]).unwrap();
        let p = f.perp(&x).unwrap();
        assert!(p.contains_torsion().unwrap());
        assert_eq!(x.rank() + p.rank(), f.rank());
    }

    #[test]
    fn classify_lagrangians() {
        let h = h2_over_z();
        let l = SubgroupRep::new(h.group(), &[ints(&[1, 0])]).unwrap();
        let c = h.classify(&l).unwrap();
        assert!(c.free_lagrangian && c.t_lagrangian);
        let d = SubgroupRep::new(h.group(), &[ints(&[1, 1])]).unwrap();
        assert!(!h.classify(&d).unwrap().isotropic);
    }

    #[test]
    fn iso_checks() {
        let h = h2_over_z();
        let swap = FormIso::new(&h, &h, IntMatrix::from_i64(2, 2, &[0, 1, 1, 0])).unwrap();
        assert_eq!(swap.compose(&swap).unwrap(), FormIso::identity(&h));
        assert!(FormIso::new(&h, &h, IntMatrix::from_i64(2, 2, &[1, 1, 0, 1])).is_err());
        let neg = h.negative();
        assert!(FormIso::new(&h, &neg, IntMatrix::from_i64(2, 2, &[1, 0, 0, -1])).is_ok());
    }

    #[test]
    fn direct_sum_with_torsion() {
        let g1 = AbGroup::new(2, ints(&[2])).unwrap();
        let l1 = IntMatrix::from_i64(3, 3, &[0, 1, 0, 1, 0, 0, 0, 0, 0]);
        let f1 = EQForm::from_parts(g1, l1, AbGroup::trivial(), IntMatrix::zeros(0, 3), None).unwrap();
        let g2 = AbGroup::new(0, ints(&[3])).unwrap();
        let f2 = EQForm::from_parts(g2, IntMatrix::zeros(1, 1), AbGroup::trivial(), IntMatrix::zeros(0, 1), None).unwrap();
        let (s, _) = f1.direct_sum(&f2).unwrap();
        assert_eq!(s.group(), &AbGroup::new(2, ints(&[6])).unwrap());
        assert!(s.is_nonsingular());
    }
}
