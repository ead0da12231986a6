use qform::int::ints;
use qform::{AbGroup, EQForm, IntMatrix, SubgroupRep};

fn main() -> qform::Result<()> {
    let z = AbGroup::free(1);
    let h2 = EQForm::hyperbolic(1, &z).with_v(Some(vec![0]))?;
    println!("H_2: {:?}", h2.report());

    // E_{2,3}: the plane with mu = [2, 3]
    let e = EQForm::free(IntMatrix::from_i64(2, 2, &[0, 1, 1, 0]), z.clone(), IntMatrix::from_i64(1, 2, &[2, 3]))?;
    println!("E_2,3 full: {}", e.is_full());

    let line = SubgroupRep::new(e.group(), &[ints(&[1, 0])])?;
    println!("perp of <e1>: {:?}", e.perp(&line)?.generators());
    println!("<e1> in E_2,3: {:?}", e.classify(&line)?);

    // a form with torsion: Z^2 + Z/2, lambda vanishing on torsion
    let g = AbGroup::new(2, vec![2.into()])?;
    let t = EQForm::from_parts(g, IntMatrix::from_i64(3, 3, &[0, 1, 0, 1, 0, 0, 0, 0, 0]), z, IntMatrix::zeros(1, 3), Some(vec![0]))?;
    let tl = SubgroupRep::new(t.group(), &[ints(&[0, 1, 0]), ints(&[0, 0, 1])])?;
    println!("T-lagrangian: {}", t.is_t_lagrangian(&tl)?);
    println!("metabolic with it: {}", t.is_metabolic_with(&tl)?);
    Ok(())
}
