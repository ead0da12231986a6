use std::collections::BTreeSet;
use std::io::Write;
use std::time::{Duration, Instant};

use num_integer::Integer;
use num_traits::{Signed, Zero};
use qform::construct::{is_hyperbolic_with_witness, ru_wall_witness, stabilize, stable_lagrangian_iso, wall_target};
use qform::int::{factorize, int, to_i64, Int};
use qform::lmonoid::{bar_reduce, jacobi_witness, l_group_trivialize, splitting_iso, unbar, zero_formation, QuasiFormation};
use qform::oracle::{automorphisms, brute_si, class_invariants, enumerate_lagrangians, SearchBudget};
use qform::samples::{random_torsion_quasi_formation, rng, sample_targets, sample_torsion, MetabolicSample};
use qform::stableclass::{gcd_profile, kappa, kappa_ab, kappa_ab_agrees, si1_witness, si1_witness_with, si_count, si_enumerate, stable_class_report};
use qform::{AbGroup, EQForm, FormIso, IntMatrix, MatchMode, SubgroupRep};

fn report(n: u32, name: &str, pass: bool, detail: &str) {
    let line = format!("criterion {n:>2} {}: {name} ({detail})\n", if pass { "PASS" } else { "FAIL" });
    let _ = std::io::stderr().write_all(line.as_bytes());
}

/// Runs `body`, prints the verdict line and fails the test on any failure.
fn criterion(n: u32, name: &str, limit: Option<Duration>, body: impl FnOnce() -> Result<String, String>) {
    let start = Instant::now();
    let result = std::panic::catch_unwind(std::panic::AssertUnwindSafe(body));
    let elapsed = start.elapsed();
    let outcome = match result {
        Ok(Ok(detail)) => match limit {
            Some(l) if elapsed > l => Err(format!("{detail}; took {elapsed:.2?}, limit {l:?}")),
            _ => Ok(format!("{detail}; {elapsed:.2?}")),
        },
        Ok(Err(e)) => Err(e),
        Err(p) => Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into())),
    };
    match outcome {
        Ok(d) => report(n, name, true, &d),
        Err(e) => {
            report(n, name, false, &e);
            panic!("criterion {n} failed: {e}");
        }
    }
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn formula_si(a: i64, b: i64) -> usize {
    if a * b == 0 || a.abs() == b.abs() {
        return 1;
    }
    let g = a.gcd(&b);
    let r = factorize(&Int::from((a * b).abs() / (g * g))).len();
    1 << (r - 1)
}

#[test]
fn c01_si_counts() {
    criterion(1, "SI(E_ab) sizes match formula and brute force for |ab| <= 60", Some(Duration::from_secs(10)), || {
        let mut pairs = 0;
        for a in -60i64..=60 {
            for b in -60i64..=60 {
                if (a * b).abs() > 60 {
                    continue;
                }
                let (ai, bi) = (int(a), int(b));
                let fast = si_enumerate(&ai, &bi);
                let brute = brute_si(&ai, &bi);
                let expected = formula_si(a, b);
                check(fast.size == expected && si_count(&ai, &bi) == expected && brute.size == expected, || {
                    format!("({a},{b}): enumerate {} brute {} formula {expected}", fast.size, brute.size)
                })?;
                let fs: BTreeSet<_> = fast.pairs.iter().cloned().collect();
                let bs: BTreeSet<_> = brute.pairs.iter().cloned().collect();
                check(fs == bs, || format!("({a},{b}): representatives differ"))?;
                pairs += 1;
            }
        }
        for ((a, b), n) in [((1, 6), 2), ((2, 3), 2), ((1, 30), 4), ((0, 7), 1), ((0, -12), 1), ((2, 2), 1)] {
            let got = si_enumerate(&int(a), &int(b)).size;
            check(got == n, || format!("({a},{b}) gave {got}, expected {n}"))?;
        }
        Ok(format!("{pairs} pairs"))
    });
}

#[test]
fn c02_stable_class_table() {
    criterion(2, "stable class counts on a 50-point grid", None, || {
        let mut grid: Vec<(usize, i64, i64)> = Vec::new();
        for i in 0..5 {
            grid.push((0, i, i + 1));
            grid.push((2, i + 2, -i));
        }
        let mut a = 1i64;
        while grid.len() < 50 {
            for b in -a..=a {
                if grid.len() < 50 && a.gcd(&b) == 1 {
                    grid.push((1, a, b));
                }
            }
            a += 1;
        }
        for &(rk, a, b) in &grid {
            let expected: u64 = match rk {
                1 if (a * b).abs() <= 1 => 1,
                1 => 1 << (factorize(&Int::from((a * b).abs())).len() - 1),
                _ => 1,
            };
            let got = stable_class_report(rk, &int(a), &int(b)).map_err(err)?;
            check(got.total == expected && got.with_smoothing == expected, || format!("rkQ={rk} ({a},{b}): {got:?}, expected {expected}"))?;
            if rk == 1 {
                check(si_enumerate(&int(a), &int(b)).size as u64 == expected, || format!("({a},{b}) disagrees with SI"))?;
            }
        }
        Ok(format!("{} points", grid.len()))
    });
}

fn small(m: &IntMatrix) -> Vec<Vec<i128>> {
    m.row_vecs().iter().map(|r| r.iter().map(|x| to_i64(x).expect("small") as i128).collect()).collect()
}

fn mul(a: &[Vec<i128>], b: &[Vec<i128>]) -> Vec<Vec<i128>> {
    (0..a.len()).map(|i| (0..b[0].len()).map(|j| (0..b.len()).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

fn transpose(a: &[Vec<i128>]) -> Vec<Vec<i128>> {
    (0..a[0].len()).map(|j| a.iter().map(|r| r[j]).collect()).collect()
}

#[test]
fn c03_si1_witness() {
    criterion(3, "explicit 4x4 stable isomorphism for 625 pairs", Some(Duration::from_secs(5)), || {
        let h: Vec<Vec<i128>> = vec![vec![0, 1, 0, 0], vec![1, 0, 0, 0], vec![0, 0, 0, 1], vec![0, 0, 1, 0]];
        let mut n = 0;
        for a in -12i64..=12 {
            for b in -12i64..=12 {
                let iso = si1_witness(&int(a), &int(b)).map_err(|e| format!("({a},{b}): {e}"))?;
                let m = small(iso.matrix());
                check(mul(&transpose(&m), &mul(&h, &m)) == h, || format!("({a},{b}): bilinear identity fails"))?;
                let p = gcd_profile(&int(a), &int(b));
                let row = vec![vec![a as i128, b as i128, 0, 0]];
                let want = vec![vec![to_i64(&p.lcm).unwrap() as i128, to_i64(&p.gcd).unwrap() as i128, 0, 0]];
                check(mul(&row, &m) == want, || format!("({a},{b}): linear identity fails"))?;
                check(p.lcm.clone() * p.gcd.clone() == int(a * b), || format!("({a},{b}): lcm * gcd != ab"))?;
                n += 1;
            }
        }
        si1_witness_with(&int(2), &int(3), &int(-1), &int(1)).map_err(err)?;
        Ok(format!("{n} pairs"))
    });
}

#[test]
fn c04_kappa_formula() {
    criterion(4, "closed formula for the restriction to (Ker mu)^perp", None, || {
        let mut n = 0;
        for a in -20i64..=20 {
            for b in -20i64..=20 {
                check(kappa_ab_agrees(&int(a), &int(b)).map_err(err)?, || format!("({a},{b}) disagrees"))?;
                let (direct, _) = kappa(&qform::stableclass::e_ab(&int(a), &int(b))).map_err(err)?;
                let formula = kappa_ab(&int(a), &int(b));
                check(direct.rank() == formula.rank() && direct.lambda() == formula.lambda(), || format!("({a},{b}): lambda differs"))?;
                if direct.rank() == 1 {
                    let (x, y) = (&direct.mu().matrix()[(0, 0)], &formula.mu().matrix()[(0, 0)]);
                    check(x.abs() == y.abs(), || format!("({a},{b}): mu differs"))?;
                }
                n += 1;
            }
        }
        Ok(format!("{n} pairs"))
    });
}

fn stabilized(form: &EQForm, l: &SubgroupRep, k: usize) -> Result<(EQForm, SubgroupRep), String> {
    stabilize(form, l, k).map_err(err)
}

#[test]
fn c05_stable_lagrangian_iso() {
    criterion(5, "stable isomorphisms of 200 random metabolic forms", Some(Duration::from_secs(60)), || {
        let mut r = rng(2024);
        let targets: Vec<(AbGroup, Vec<u8>)> = sample_targets();
        let mut n = 0;
        let mut attempt = 0;
        let mut total_k = 0;
        while n < 200 {
            let (q, v) = &targets[attempt % targets.len()];
            let max_planes = 3 - q.dim();
            let p1 = (attempt / targets.len()) % (max_planes + 1);
            let p2 = (attempt / 7) % (max_planes + 1);
            attempt += 1;
            if q.dim() + p1 == 0 || q.dim() + p2 == 0 {
                continue;
            }
            let a = MetabolicSample::random(&mut r, q, v, p1).map_err(err)?;
            let b = MetabolicSample::random(&mut r, q, v, p2).map_err(err)?;
            check(a.form.rank() <= 6 && b.form.rank() <= 6, || "rank above 6".into())?;
            let s = stable_lagrangian_iso(&a.form, &a.lagrangian, &b.form, &b.lagrangian, MatchMode::Stable).map_err(|e| format!("sample {n}: {e}"))?;
            let (big, lt) = stabilized(&a.form, &a.lagrangian, s.k)?;
            let (big2, lt2) = stabilized(&b.form, &b.lagrangian, s.l)?;
            let iso = FormIso::new(&big, &big2, s.iso.matrix().clone()).map_err(|e| format!("sample {n}: validator rejects: {e}"))?;
            check(iso.apply_subgroup(&lt).map_err(err)? == lt2, || format!("sample {n}: lagrangians not matched"))?;
            total_k += s.k + s.l;
            n += 1;
        }
        Ok(format!("{n} samples, {total_k} planes added"))
    });
}

#[test]
fn c06_ru_wall() {
    criterion(6, "words for phi + phi^-1 + id on H_2 and 50 rank-4 forms", None, || {
        let h = EQForm::hyperbolic(1, &AbGroup::trivial());
        let l = SubgroupRep::new(h.group(), &[vec![int(1), int(0)]]).map_err(err)?;
        let (auts, complete) = automorphisms(&h, &SearchBudget::default()).map_err(err)?;
        check(complete && auts.len() == 4, || "Aut(H_2) not found".into())?;
        let mut cases: Vec<(EQForm, SubgroupRep, FormIso)> = auts.into_iter().map(|phi| (h.clone(), l.clone(), phi)).collect();
        let mut r = rng(77);
        for i in 0..50 {
            let s = if i % 2 == 0 {
                MetabolicSample::random(&mut r, &AbGroup::trivial(), &[], 2)
            } else {
                MetabolicSample::random(&mut r, &AbGroup::free(1), &[i as u8 / 2 % 2], 1)
            }
            .map_err(err)?;
            let phi = s.random_automorphism(&mut r, 5).map_err(err)?;
            cases.push((s.form.clone(), s.lagrangian.clone(), phi));
        }
        let mut letters = 0;
        for (i, (f, l, phi)) in cases.iter().enumerate() {
            let w = ru_wall_witness(f, l, phi).map_err(|e| format!("case {i}: {e}"))?;
            w.validate().map_err(|e| format!("case {i}: {e}"))?;
            let eval = w.evaluate().map_err(err)?;
            let target = wall_target(f, phi).map_err(err)?;
            check(eval.matrix() == target.matrix() && eval.source() == target.source(), || format!("case {i}: evaluation differs"))?;
            letters += w.generators.len();
        }
        Ok(format!("{} automorphisms, {letters} generators", cases.len()))
    });
}

#[test]
fn c07_l_group_trivialize() {
    criterion(7, "hyperbolic part and replay for 50 invertible elements", None, || {
        let mut r = rng(99);
        let mut nontrivial = 0;
        let targets = [(AbGroup::trivial(), vec![]), (AbGroup::free(1), vec![0]), (AbGroup::free(1), vec![1]), (AbGroup::free(2), vec![0, 1])];
        for i in 0..50 {
            let (q, v) = &targets[i % targets.len()];
            let planes = if q.dim() == 0 { 1 + i % 2 } else { i % 2 };
            let s = MetabolicSample::random(&mut r, q, v, planes).map_err(err)?;
            let x = s.random_l_element(&mut r).map_err(err)?;
            check(x.is_l_element().map_err(err)?, || format!("element {i} is not invertible"))?;
            let d = l_group_trivialize(&x).map_err(|e| format!("element {i}: {e}"))?;
            let hp = &d.hyperbolic_part;
            nontrivial += usize::from(hp.form().rank() > 0);
            let w = is_hyperbolic_with_witness(hp.form(), hp.lagrangian()).map_err(|e| format!("element {i}: {e}"))?;
            FormIso::new(w.source(), w.target(), w.matrix().clone()).map_err(err)?;
            FormIso::new(d.hyperbolic_witness.source(), d.hyperbolic_witness.target(), d.hyperbolic_witness.matrix().clone()).map_err(err)?;
            d.sequence.replay().map_err(|e| format!("element {i}: {e}"))?;
            check(d.sequence.start == x, || format!("element {i}: sequence starts elsewhere"))?;
            check(d.sequence.end == d.core_part.direct_sum(hp).map_err(err)?, || format!("element {i}: sequence ends elsewhere"))?;
        }
        check(nontrivial > 0, || "every hyperbolic part is zero".into())?;
        Ok(format!("50 elements, {nontrivial} with a nonzero hyperbolic part"))
    });
}

fn lagrangian(f: &EQForm, gens: &[&[i64]]) -> SubgroupRep {
    SubgroupRep::new(f.group(), &gens.iter().map(|g| g.iter().map(|&x| int(x)).collect()).collect::<Vec<_>>()).unwrap()
}

fn jacobi_suite() -> Result<Vec<(String, EQForm, SubgroupRep, SubgroupRep, SubgroupRep)>, String> {
    let mut out = Vec::new();
    let h = EQForm::hyperbolic(1, &AbGroup::trivial()).with_v(Some(vec![])).map_err(err)?;
    out.push(("H_2 over 0".into(), h.clone(), lagrangian(&h, &[&[1, 0]]), lagrangian(&h, &[&[0, 1]]), lagrangian(&h, &[&[1, 1]])));
    out.push(("H_2 over 0, K = L".into(), h.clone(), lagrangian(&h, &[&[1, 0]]), lagrangian(&h, &[&[1, 0]]), lagrangian(&h, &[&[1, -1]])));
    let z = zero_formation(&AbGroup::free(1), &[0]).map_err(err)?;
    let zf = z.form().clone();
    out.push(("zero formation over Z".into(), zf.clone(), z.lagrangian().clone(), z.lagrangian().clone(), lagrangian(&zf, &[&[1, 1]])));
    let mut r = rng(4242);
    let mut tries = 0;
    while out.len() < 11 && tries < 200 {
        tries += 1;
        let (q, v, planes) = if out.len() % 2 == 1 { (AbGroup::trivial(), vec![], 2) } else { (AbGroup::free(1), vec![0], 1) };
        let s = MetabolicSample::random(&mut r, &q, &v, planes).map_err(err)?;
        let phi = s.random_automorphism(&mut r, 4).map_err(err)?;
        let l = phi.apply_subgroup(&s.lagrangian).map_err(err)?;
        let vv = s.random_summand(&mut r).map_err(err)?;
        let (k, l) = if out.len() % 3 == 0 { (l, s.lagrangian.clone()) } else { (s.lagrangian.clone(), l) };
        let ok = QuasiFormation::new(s.form.clone(), k.clone(), l.clone()).and_then(|q| q.is_admissible()).unwrap_or(false)
            && QuasiFormation::new(s.form.clone(), l.clone(), vv.clone()).is_ok();
        if ok {
            out.push((format!("rank 4 over {}", if q.dim() == 0 { "0" } else { "Z" }), s.form, k, l, vv));
        }
    }
    Ok(out)
}

#[test]
fn c08_jacobi() {
    criterion(8, "replay-valid move sequences for the composition of formations", None, || {
        let suite = jacobi_suite()?;
        check(suite.len() >= 11, || format!("only {} instances", suite.len()))?;
        let mut moves = 0;
        for (name, f, k, l, v) in &suite {
            check(f.rank() <= 4, || format!("{name}: rank {}", f.rank()))?;
            let w = jacobi_witness(f, k, l, v).map_err(|e| format!("{name}: {e}"))?;
            w.sequence.replay().map_err(|e| format!("{name}: {e}"))?;
            let qkl = QuasiFormation::new(f.clone(), k.clone(), l.clone()).map_err(err)?;
            let qlv = QuasiFormation::new(f.clone(), l.clone(), v.clone()).map_err(err)?;
            let qkv = QuasiFormation::new(f.clone(), k.clone(), v.clone()).map_err(err)?;
            check(w.sequence.start == qkl.direct_sum(&qlv).map_err(err)?, || format!("{name}: wrong start"))?;
            check(w.sequence.end == qkv, || format!("{name}: wrong end"))?;
            FormIso::new(w.phi.source(), w.phi.target(), w.phi.matrix().clone()).map_err(err)?;
            check(class_invariants(&w.sequence.start).map_err(err)? == class_invariants(&w.sequence.end).map_err(err)?, || format!("{name}: invariants differ"))?;
            moves += w.sequence.moves.len();
        }
        Ok(format!("{} instances, {moves} moves", suite.len()))
    });
}

#[test]
fn c09_structural_anchors() {
    criterion(9, "lagrangians and automorphisms of H_2; elementary under stabilization", None, || {
        let h = EQForm::hyperbolic(1, &AbGroup::trivial());
        let ls = enumerate_lagrangians(&h, &SearchBudget::default()).map_err(err)?;
        check(ls.len() == 2, || format!("{} lagrangians", ls.len()))?;
        let (auts, complete) = automorphisms(&h, &SearchBudget { entry_bound: 3, ..SearchBudget::default() }).map_err(err)?;
        check(auts.len() == 4 && complete, || format!("{} automorphisms", auts.len()))?;
        let mut r = rng(31);
        let mut elementary = 0;
        for i in 0..100 {
            let (q, v) = &sample_targets()[i % 5];
            let planes = if q.dim() == 0 { 1 + i % 2 } else { i % 2 };
            let s = MetabolicSample::random(&mut r, q, v, planes).map_err(err)?;
            let x = s.random_quasi_formation(&mut r).map_err(err)?;
            let e = x.is_elementary().map_err(err)?;
            for k in 1..=2 {
                let y = x.direct_sum(&QuasiFormation::standard_hyperbolic(k, q)).map_err(err)?;
                check(y.is_elementary().map_err(err)? == e, || format!("formation {i}: changes under {k} planes"))?;
            }
            elementary += usize::from(e);
        }
        Ok(format!("100 formations, {elementary} elementary"))
    });
}

#[test]
fn c10_bar_roundtrip() {
    criterion(10, "free reduction and torsion restoration on 100 formations", None, || {
        let mut r = rng(5);
        let torsion = sample_torsion();
        let bases = [(AbGroup::trivial(), vec![]), (AbGroup::free(1), vec![0]), (AbGroup::free(1), vec![1])];
        for i in 0..100 {
            let (q, v) = &bases[i % bases.len()];
            let planes = if q.dim() == 0 { 1 + i % 2 } else { i % 2 };
            let s = MetabolicSample::random(&mut r, q, v, planes).map_err(err)?;
            let base = s.random_quasi_formation(&mut r).map_err(err)?;
            let t = &torsion[i % torsion.len()];
            let x = random_torsion_quasi_formation(&mut r, &base, t).map_err(err)?;
            let rebuilt = unbar(&bar_reduce(&x).map_err(err)?, t).map_err(err)?;
            let iso = splitting_iso(&x).map_err(|e| format!("formation {i}: {e}"))?;
            let iso = FormIso::new(rebuilt.form(), x.form(), iso.matrix().clone()).map_err(|e| format!("formation {i}: validator rejects: {e}"))?;
            check(iso.apply_subgroup(rebuilt.lagrangian()).map_err(err)? == *x.lagrangian(), || format!("formation {i}: L not matched"))?;
            check(iso.apply_subgroup(rebuilt.summand()).map_err(err)? == *x.summand(), || format!("formation {i}: V not matched"))?;
            check(!x.form().group().torsion().iter().all(Zero::is_zero), || "no torsion".into())?;
        }
        Ok("100 formations".into())
    });
}
