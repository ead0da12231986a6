//! Matching two surjections from free groups onto a common target.

use num_traits::One;

use crate::error::{Error, Result};
use crate::group::{AbGroup, GroupHom};
use crate::matrix::IntMatrix;
use crate::normal_form::unimodular_inverse;

/// How much stabilization is allowed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatchMode {
    /// Free summands may be added on both sides.
    Stable,
    /// No stabilization; needs a free target and sources of equal rank.
    Strict,
}

/// Isomorphism `h: F ⊕ Z^k -> G ⊕ Z^l` with `(g ⊕ 0) ∘ h = f ⊕ 0`.
#[derive(Clone, Debug)]
pub struct SurjectionMatch {
    pub extra_source: usize,
    pub extra_target: usize,
    pub iso: GroupHom,
}

/// Matches surjections `f: F -> A` and `g: G -> A` with `F`, `G` free.
pub fn match_surjections(f: &GroupHom, g: &GroupHom, mode: MatchMode) -> Result<SurjectionMatch> {
    if !f.source().is_free() || !g.source().is_free() {
        return Err(Error::hyp("sources must be free"));
    }
    if f.target() != g.target() {
        return Err(Error::Dimension("surjections onto different groups".into()));
    }
    if !f.is_surjective()? || !g.is_surjective()? {
        return Err(Error::hyp("maps must be surjective"));
    }
    match mode {
        MatchMode::Stable => stable(f, g),
        MatchMode::Strict => strict(f, g),
    }
}

fn stable(f: &GroupHom, g: &GroupHom) -> Result<SurjectionMatch> {
    let nf = f.source().dim();
    let ng = g.source().dim();
    let gg = g.source().clone();

    // lift of f through g, then cover the kernel of g
    let lift_cols = (0..nf).map(|i| g.solve(&f.matrix().col(i))).collect::<Result<Vec<_>>>()?;
    let ker = g.kernel()?.basis()?;
    let s = ker.len();
    let mut cols = lift_cols;
    cols.extend(ker);
    let f1 = GroupHom::new(AbGroup::free(nf + s), gg.clone(), IntMatrix::from_cols(&cols, ng)?)?;
    let c_cols = gg.generators().iter().map(|e| f1.solve(e)).collect::<Result<Vec<_>>>()?;
    let c = IntMatrix::from_cols(&c_cols, nf + s)?;

    // (x, y) in F_1 ⊕ G  |->  (f_1 x, x + c y) in G ⊕ F_1
    let n = nf + s + ng;
    let mut h = IntMatrix::zeros(n, n);
    h.set_block(0, 0, f1.matrix());
    h.set_block(ng, 0, &IntMatrix::identity(nf + s));
    h.set_block(ng, nf + s, &c);
    let iso = GroupHom::new(AbGroup::free(n), AbGroup::free(n), h)?;
    Ok(SurjectionMatch { extra_source: s + ng, extra_target: nf + s, iso })
}

fn strict(f: &GroupHom, g: &GroupHom) -> Result<SurjectionMatch> {
    let a = f.target();
    if !a.is_free() {
        return Err(Error::hyp("strict matching needs a free target"));
    }
    let n = f.source().dim();
    if g.source().dim() != n {
        return Err(Error::hyp("strict matching needs sources of equal rank"));
    }
    let basis = |h: &GroupHom| -> Result<IntMatrix> {
        let mut cols = h.kernel()?.basis()?;
        for e in a.generators() {
            cols.push(h.solve(&e)?);
        }
        IntMatrix::from_cols(&cols, n)
    };
    let bf = basis(f)?;
    let bg = basis(g)?;
    let m = bg.mul(&unimodular_inverse(&bf)?)?;
    let iso = GroupHom::new(f.source().clone(), g.source().clone(), m)?;
    Ok(SurjectionMatch { extra_source: 0, extra_target: 0, iso })
}

impl SurjectionMatch {
    /// Checks `(g ⊕ 0) ∘ h = f ⊕ 0` and that `h` is invertible.
    pub fn verify(&self, f: &GroupHom, g: &GroupHom) -> Result<bool> {
        let a = f.target();
        let pad = |h: &GroupHom, extra: usize| -> Result<GroupHom> {
            let m = IntMatrix::hstack(h.matrix(), &IntMatrix::zeros(a.dim(), extra))?;
            GroupHom::new(AbGroup::free(h.source().dim() + extra), a.clone(), m)
        };
        let lhs = pad(g, self.extra_target)?.compose(&self.iso)?;
        let rhs = pad(f, self.extra_source)?;
        Ok(lhs == rhs && self.iso.is_isomorphism()? && self.iso.matrix().det()?.magnitude().is_one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::int::Int;

    fn hom(src: usize, target: AbGroup, entries: &[i64]) -> GroupHom {
        GroupHom::new(AbGroup::free(src), target.clone(), IntMatrix::from_i64(target.dim(), src, entries)).unwrap()
    }

    #[test]
    fn stable_matching_onto_z() {
        let f = hom(1, AbGroup::free(1), &[1]);
        let g = hom(1, AbGroup::free(1), &[-1]);
        let m = match_surjections(&f, &g, MatchMode::Stable).unwrap();
        assert!(m.verify(&f, &g).unwrap());
        let f = hom(2, AbGroup::free(1), &[2, 3]);
        let g = hom(3, AbGroup::free(1), &[1, 0, 5]);
        let m = match_surjections(&f, &g, MatchMode::Stable).unwrap();
        assert!(m.verify(&f, &g).unwrap());
    }

    #[test]
    fn stable_matching_onto_torsion() {
        let q = AbGroup::new(1, vec![Int::from(2)]).unwrap();
        let f = hom(2, q.clone(), &[1, 0, 0, 1]);
        let g = hom(3, q.clone(), &[1, 1, 0, 1, 0, 1]);
        let m = match_surjections(&f, &g, MatchMode::Stable).unwrap();
        assert!(m.verify(&f, &g).unwrap());
    }

    #[test]
    fn strict_matching() {
        let f = hom(2, AbGroup::free(1), &[2, 3]);
        let g = hom(2, AbGroup::free(1), &[1, 0]);
        let m = match_surjections(&f, &g, MatchMode::Strict).unwrap();
        assert_eq!((m.extra_source, m.extra_target), (0, 0));
        assert!(m.verify(&f, &g).unwrap());
        let q = AbGroup::cyclic(2).unwrap();
        let f = hom(1, q.clone(), &[1]);
        assert!(matches!(match_surjections(&f, &f, MatchMode::Strict), Err(Error::Hypothesis(_))));
    }
}
