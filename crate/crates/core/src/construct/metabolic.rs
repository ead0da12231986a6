//! Adapted bases of metabolic forms and the isomorphisms built from them.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::form::{EQForm, FormIso};
use crate::int::{floor_div, Int};
use crate::matrix::IntMatrix;
use crate::normal_form::unimodular_inverse;
use crate::subgroup::SubgroupRep;

/// Basis `e_1..e_k, f_1..f_k` with `L = ⟨e⟩` and `λ = [[0, I], [I, D]]`, `D` diagonal with entries 0 or 1.
#[derive(Clone, Debug)]
pub struct MetabolicBasis {
    pub e: Vec<Vec<Int>>,
    pub f: Vec<Vec<Int>>,
    pub d: Vec<Int>,
    /// Columns `e_1..e_k, f_1..f_k`.
    pub change: IntMatrix,
}

impl MetabolicBasis {
    pub fn k(&self) -> usize {
        self.e.len()
    }

    /// `[[0, I], [I, D]]`.
    pub fn normal_lambda(&self) -> IntMatrix {
        let k = self.k();
        let mut m = IntMatrix::zeros(2 * k, 2 * k);
        for i in 0..k {
            m[(i, k + i)] = Int::one();
            m[(k + i, i)] = Int::one();
            m[(k + i, k + i)] = self.d[i].clone();
        }
        m
    }
}

fn require_metabolic(form: &EQForm, l: &SubgroupRep) -> Result<()> {
    if !form.is_free() {
        return Err(Error::hyp("form must be free"));
    }
    if !form.is_nonsingular() {
        return Err(Error::hyp("form must be nonsingular"));
    }
    if l.ambient() != form.group() || !form.is_free_lagrangian(l)? {
        return Err(Error::hyp("subgroup must be a free lagrangian"));
    }
    Ok(())
}

/// Elements `e_i` of `L` with `λ(e_i, f_j) = δ_ij`.
pub(crate) fn dual_basis(form: &EQForm, l_basis: &[Vec<Int>], f: &[Vec<Int>]) -> Result<Vec<Vec<Int>>> {
    let k = l_basis.len();
    if f.len() != k {
        return Err(Error::hyp("complement and lagrangian ranks differ"));
    }
    let mut g = IntMatrix::zeros(k, k);
    for a in 0..k {
        for j in 0..k {
            g[(a, j)] = form.pairing(&l_basis[a], &f[j])?;
        }
    }
    let ginv = unimodular_inverse(&g).map_err(|_| Error::hyp("pairing between lagrangian and complement is singular"))?;
    // e_i = sum_a (g^{-1})_{i a} l_a
    Ok((0..k)
        .map(|i| {
            let mut v = vec![Int::zero(); form.dim()];
            for a in 0..k {
                let c = &ginv[(i, a)];
                if !c.is_zero() {
                    for (x, y) in v.iter_mut().zip(&l_basis[a]) {
                        *x += c * y;
                    }
                }
            }
            v
        })
        .collect())
}

/// Replaces `f` by `f̄` with `λ(f̄_i, f̄_j) = 0` for `i != j` and `λ(f̄_i, f̄_i) ∈ {0, 1}`.
pub(crate) fn parity_reduce(form: &EQForm, e: &[Vec<Int>], f: &[Vec<Int>]) -> Result<(Vec<Vec<Int>>, Vec<Int>)> {
    let two = Int::from(2);
    let mut fbar: Vec<Vec<Int>> = Vec::with_capacity(f.len());
    let mut d = Vec::with_capacity(f.len());
    for (i, fi) in f.iter().enumerate() {
        let mut x = fi.clone();
        for j in 0..i {
            let c = form.pairing(&fbar[j], fi)?;
            axpy(&mut x, &-c, &e[j]);
        }
        let half = floor_div(&form.pairing(fi, fi)?, &two);
        axpy(&mut x, &-half, &e[i]);
        d.push(form.pairing(&x, &x)?);
        fbar.push(x);
    }
    Ok((fbar, d))
}

pub(crate) fn axpy(x: &mut [Int], c: &Int, y: &[Int]) {
    if c.is_zero() {
        return;
    }
    for (a, b) in x.iter_mut().zip(y) {
        *a += c * b;
    }
}

pub(crate) fn basis_matrix(form: &EQForm, e: &[Vec<Int>], f: &[Vec<Int>]) -> Result<IntMatrix> {
    let cols: Vec<Vec<Int>> = e.iter().chain(f).cloned().collect();
    IntMatrix::from_cols(&cols, form.dim())
}

/// Adapted basis of a free nonsingular form with lagrangian `L`.
pub fn metabolic_basis(form: &EQForm, l: &SubgroupRep) -> Result<MetabolicBasis> {
    require_metabolic(form, l)?;
    let n = l.complement()?;
    let f = n.basis()?;
    let e = dual_basis(form, &l.basis()?, &f)?;
    let (fbar, d) = parity_reduce(form, &e, &f)?;
    let change = basis_matrix(form, &e, &fbar)?;
    Ok(MetabolicBasis { e, f: fbar, d, change })
}

/// `J: M -> -M` with `J(e_i) = e_i` and `J(f_i) = d_i e_i - f_i`.
pub fn neg_isomorphism(form: &EQForm, l: &SubgroupRep) -> Result<FormIso> {
    let mb = metabolic_basis(form, l)?;
    let k = mb.k();
    let mut jb = IntMatrix::zeros(2 * k, 2 * k);
    for i in 0..k {
        jb[(i, i)] = Int::one();
        jb[(i, k + i)] = mb.d[i].clone();
        jb[(k + i, k + i)] = -Int::one();
    }
    let m = mb.change.mul(&jb)?.mul(&unimodular_inverse(&mb.change)?)?;
    FormIso::new(form, &form.negative(), m)
}

/// `I: M ⊕ M -> M ⊕ H_{2k}` carrying `L ⊕ L` onto `L ⊕ ({0} × Z^k)`.
///
/// On the adapted basis, with `a_i, b_i` the standard basis of `H_{2k}` and
/// bars marking the second summand: `e_i -> e_i + b_i`, `f_i -> f_i + d_i b_i`,
/// `ē_i -> -b_i`, `f̄_i -> f_i - a_i`.
pub fn double_to_hyperbolic(form: &EQForm, l: &SubgroupRep) -> Result<FormIso> {
    let mb = metabolic_basis(form, l)?;
    let k = mb.k();
    let n = form.dim();
    let h = EQForm::hyperbolic(k, form.target());
    let source = form.sum(form)?;
    let target = form.sum(&h)?;
    let a = |i: usize| n + i;
    let b = |i: usize| n + k + i;
    let mut img = IntMatrix::zeros(n + 2 * k, 4 * k);
    let pad = |v: &[Int]| {
        let mut w = v.to_vec();
        w.resize(n + 2 * k, Int::zero());
        w
    };
    for i in 0..k {
        let mut c = pad(&mb.e[i]);
        c[b(i)] += Int::one();
        set_col(&mut img, i, &c);
        let mut c = pad(&mb.f[i]);
        c[b(i)] += &mb.d[i];
        set_col(&mut img, k + i, &c);
        let mut c = vec![Int::zero(); n + 2 * k];
        c[b(i)] = -Int::one();
        set_col(&mut img, 2 * k + i, &c);
        let mut c = pad(&mb.f[i]);
        c[a(i)] -= Int::one();
        set_col(&mut img, 3 * k + i, &c);
    }
    let src_basis = IntMatrix::block_diag(&mb.change, &mb.change);
    let m = img.mul(&unimodular_inverse(&src_basis)?)?;
    FormIso::new(&source, &target, m)
}

fn set_col(m: &mut IntMatrix, j: usize, c: &[Int]) {
    for (i, x) in c.iter().enumerate() {
        m[(i, j)] = x.clone();
    }
}

/// Diagonal lagrangians of an isomorphism `I: M -> N`.
#[derive(Clone, Debug)]
pub struct DiagonalLagrangians {
    /// `M ⊕ (-N)` and `Δ_I = {(x, I x)}`.
    pub form: EQForm,
    pub diagonal: SubgroupRep,
    /// `M ⊕ (-N*)` and `Δ*_I = {(x, -I x)}`.
    pub star_form: EQForm,
    pub star_diagonal: SubgroupRep,
}

pub fn diagonal_lagrangians(iso: &FormIso) -> Result<DiagonalLagrangians> {
    let m = iso.source();
    let nn = iso.target();
    let build = |other: &EQForm, sign: i64| -> Result<(EQForm, SubgroupRep)> {
        let (sum, ds) = m.direct_sum(other)?;
        let gens = m
            .group()
            .generators()
            .iter()
            .map(|x| {
                let y: Vec<Int> = iso.apply(x)?.iter().map(|c| c * Int::from(sign)).collect();
                ds.pair(x, &y)
            })
            .collect::<Result<Vec<_>>>()?;
        let s = SubgroupRep::new(sum.group(), &gens)?;
        Ok((sum, s))
    };
    let (form, diagonal) = build(&nn.negative(), 1)?;
    let (star_form, star_diagonal) = build(&nn.star().negative(), -1)?;
    Ok(DiagonalLagrangians { form, diagonal, star_form, star_diagonal })
}

/// Isomorphism `E -> H_{2k}` carrying `L` onto `Z^k × {0}`, when `E` is hyperbolic.
pub fn is_hyperbolic_with_witness(form: &EQForm, l: &SubgroupRep) -> Result<FormIso> {
    if !form.is_even() {
        return Err(Error::hyp("form must be even"));
    }
    if !form.mu().matrix().is_zero() {
        return Err(Error::hyp("mu must vanish"));
    }
    let mb = metabolic_basis(form, l)?;
    let h = EQForm::hyperbolic(mb.k(), form.target()).with_v(form.v().map(|v| v.to_vec()))?;
    FormIso::new(&h, form, mb.change.clone())?.inverse()
}
