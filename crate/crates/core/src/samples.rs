//! Seeded random instances: unimodular matrices, metabolic forms with a
//! lagrangian, their automorphisms and quasi-formations with torsion.

use num_integer::Integer;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::form::{EQForm, FormIso};
use crate::group::{AbGroup, GroupHom};
use crate::int::{int, Int};
use crate::lmonoid::{unbar, QuasiFormation};
use crate::matrix::IntMatrix;
use crate::normal_form::unimodular_inverse;
use crate::subgroup::SubgroupRep;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Product of `steps` elementary operations with multipliers in `[-2, 2]`.
pub fn random_unimodular<R: Rng>(rng: &mut R, n: usize, steps: usize) -> IntMatrix {
    let mut m = IntMatrix::identity(n);
    if n == 0 {
        return m;
    }
    for _ in 0..steps {
        match rng.gen_range(0..6) {
            0 if n > 1 => {
                let (i, j) = distinct(rng, n);
                m.swap_rows(i, j);
            }
            1 => m.negate_row(rng.gen_range(0..n)),
            _ if n > 1 => {
                let (i, j) = distinct(rng, n);
                let c = int(*[-2i64, -1, 1, 2].choose(rng).expect("nonempty"));
                m.add_row_multiple(i, j, &c);
            }
            _ => {}
        }
    }
    m
}

fn distinct<R: Rng>(rng: &mut R, n: usize) -> (usize, usize) {
    let i = rng.gen_range(0..n);
    let mut j = rng.gen_range(0..n - 1);
    if j >= i {
        j += 1;
    }
    (i, j)
}

/// Coefficient groups used for metabolic samples, with a compatible `v`.
pub fn sample_targets() -> Vec<(AbGroup, Vec<u8>)> {
    vec![
        (AbGroup::trivial(), vec![]),
        (AbGroup::free(1), vec![0]),
        (AbGroup::free(1), vec![1]),
        (AbGroup::free(2), vec![0, 1]),
        (AbGroup::new(1, vec![2.into()]).expect("Z + Z/2"), vec![0, 1]),
    ]
}

/// A free metabolic form twisted out of the normal shape
/// `λ = [[0, I], [I, S]]`, `μ = [0 | m]` with lagrangian spanned by the first half.
///
/// The first `loaded` planes carry `μ(f_i)` hitting the generators of `Q`;
/// the remaining planes are hyperbolic with `μ = 0`.
#[derive(Clone, Debug)]
pub struct MetabolicSample {
    pub form: EQForm,
    pub lagrangian: SubgroupRep,
    /// The untwisted form.
    pub normal: EQForm,
    twist: IntMatrix,
    twist_inv: IntMatrix,
    loaded: usize,
    planes: usize,
}

impl MetabolicSample {
    pub fn random<R: Rng>(rng: &mut R, target: &AbGroup, v: &[u8], free_planes: usize) -> Result<Self> {
        let loaded = target.dim();
        let k = loaded + free_planes;
        let n = 2 * k;
        let mut lambda = IntMatrix::zeros(n, n);
        for i in 0..k {
            lambda[(i, k + i)] = Int::one();
            lambda[(k + i, i)] = Int::one();
        }
        let qd = target.dim();
        let mut mu = IntMatrix::zeros(qd, n);
        for i in 0..loaded {
            let mut col: Vec<Int> = (0..qd).map(|j| if j == i { Int::one() } else if j < i { int(rng.gen_range(-2..=2)) } else { Int::zero() }).collect();
            col = target.reduce(&col)?;
            let parity = col.iter().zip(v).fold(0u8, |acc, (x, &vi)| acc ^ (vi & u8::from(x.is_odd())));
            for (j, x) in col.into_iter().enumerate() {
                mu[(j, k + i)] = x;
            }
            let d = 2 * rng.gen_range(-1i64..=1) + i64::from(parity);
            lambda[(k + i, k + i)] = int(d);
            for j in 0..i {
                let s = int(rng.gen_range(-2..=2));
                lambda[(k + i, k + j)] = s.clone();
                lambda[(k + j, k + i)] = s;
            }
        }
        let vv = if qd == 0 && v.is_empty() { Some(vec![]) } else { Some(v.to_vec()) };
        let normal = EQForm::from_parts(AbGroup::free(n), lambda, target.clone(), mu, vv)?;
        let twist = random_unimodular(rng, n, 3 * n);
        let twist_inv = unimodular_inverse(&twist)?;
        let h = GroupHom::new(AbGroup::free(n), AbGroup::free(n), twist.clone())?;
        let form = normal.pullback(&h)?;
        let lagrangian = SubgroupRep::new(form.group(), &(0..k).map(|i| twist_inv.col(i)).collect::<Vec<_>>())?;
        Ok(MetabolicSample { form, lagrangian, normal, twist, twist_inv, loaded, planes: k })
    }

    pub fn planes(&self) -> usize {
        self.planes
    }

    /// Random product of lagrangian-moving and lagrangian-preserving automorphisms.
    pub fn random_automorphism<R: Rng>(&self, rng: &mut R, steps: usize) -> Result<FormIso> {
        let k = self.planes;
        let n = 2 * k;
        let free: Vec<usize> = (self.loaded..k).collect();
        let mut phi = IntMatrix::identity(n);
        for _ in 0..steps {
            let mut g = IntMatrix::identity(n);
            let kind = if free.is_empty() { 0 } else { rng.gen_range(0..4) };
            match kind {
                0 if k > 1 => {
                    let (i, j) = distinct(rng, k);
                    let x = int(rng.gen_range(-2..=2));
                    g[(i, k + j)] = x.clone();
                    g[(j, k + i)] = -x;
                }
                1 if free.len() > 1 => {
                    let (a, b) = distinct(rng, free.len());
                    let (i, j) = (free[a], free[b]);
                    let y = int(rng.gen_range(-2..=2));
                    g[(k + i, j)] = y.clone();
                    g[(k + j, i)] = -y;
                }
                2 | 1 => {
                    let i = *free.choose(rng).expect("nonempty");
                    g[(i, i)] = Int::zero();
                    g[(k + i, k + i)] = Int::zero();
                    g[(i, k + i)] = Int::one();
                    g[(k + i, i)] = Int::one();
                }
                3 => {
                    let a = random_unimodular(rng, free.len(), 2 * free.len());
                    let a_inv_t = unimodular_inverse(&a)?.transpose();
                    for (x, &i) in free.iter().enumerate() {
                        for (y, &j) in free.iter().enumerate() {
                            g[(i, j)] = a[(x, y)].clone();
                            g[(k + i, k + j)] = a_inv_t[(x, y)].clone();
                        }
                    }
                }
                _ => {}
            }
            phi = g.mul(&phi)?;
        }
        let m = self.twist_inv.mul(&phi)?.mul(&self.twist)?;
        FormIso::new(&self.form, &self.form, m)
    }

    /// Free half-rank summand: a lagrangian, an elementary complement of `L`, or a random summand.
    pub fn random_summand<R: Rng>(&self, rng: &mut R) -> Result<SubgroupRep> {
        let k = self.planes;
        let n = 2 * k;
        match rng.gen_range(0..3) {
            0 => self.random_automorphism(rng, 4)?.apply_subgroup(&self.lagrangian),
            1 => {
                let gens: Vec<Vec<Int>> = (0..k)
                    .map(|i| {
                        let mut x = vec![Int::zero(); n];
                        x[k + i] = Int::one();
                        for e in x.iter_mut().take(k) {
                            *e = int(rng.gen_range(-2..=2));
                        }
                        self.twist_inv.mul_vec(&x)
                    })
                    .collect::<Result<_>>()?;
                SubgroupRep::new(self.form.group(), &gens)
            }
            _ => {
                let u = random_unimodular(rng, n, 3 * n);
                SubgroupRep::new(self.form.group(), &(0..k).map(|i| u.col(i)).collect::<Vec<_>>())
            }
        }
    }

    pub fn random_quasi_formation<R: Rng>(&self, rng: &mut R) -> Result<QuasiFormation> {
        QuasiFormation::new(self.form.clone(), self.lagrangian.clone(), self.random_summand(rng)?)
    }

    /// `(M; L, Φ(L))` for a random automorphism `Φ`.
    pub fn random_l_element<R: Rng>(&self, rng: &mut R) -> Result<QuasiFormation> {
        let phi = self.random_automorphism(rng, 6)?;
        QuasiFormation::new(self.form.clone(), self.lagrangian.clone(), phi.apply_subgroup(&self.lagrangian)?)
    }
}

/// Finite groups used as torsion in samples.
pub fn sample_torsion() -> Vec<AbGroup> {
    [vec![2], vec![3], vec![4], vec![2, 2], vec![2, 6]]
        .into_iter()
        .map(|t| AbGroup::new(0, t.into_iter().map(Int::from).collect()).expect("invariant factors"))
        .collect()
}

/// `(M ⊕ R; L ⊕ R, V)` pulled back along an automorphism of `Z^n ⊕ R` that mixes free and torsion coordinates.
pub fn random_torsion_quasi_formation<R: Rng>(rng: &mut R, base: &QuasiFormation, torsion: &AbGroup) -> Result<QuasiFormation> {
    let q = unbar(base, torsion)?;
    let g = q.form().group().clone();
    let (r, n) = (g.free_rank(), g.dim());
    let mut m = IntMatrix::zeros(n, n);
    m.set_block(0, 0, &random_unimodular(rng, r, 3 * r));
    let moduli = g.moduli();
    for (t, d) in (r..n).zip(moduli.iter().skip(r)) {
        for j in 0..r {
            m[(t, j)] = int(rng.gen_range(0..=3)) % d;
        }
        let units: Vec<i64> = (1..6).filter(|u| Int::from(*u).gcd(d).is_one()).collect();
        m[(t, t)] = Int::from(*units.choose(rng).expect("1 is a unit")) % d;
    }
    let h = GroupHom::new(g.clone(), g, m)?;
    let form = q.form().pullback(&h)?;
    QuasiFormation::new(form, q.lagrangian().preimage(&h)?, q.summand().preimage(&h)?)
}
