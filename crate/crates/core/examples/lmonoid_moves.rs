use qform::lmonoid::{hyp_zero, l_group_trivialize, zero_formation, Move, MoveSequence, QuasiFormation};
use qform::samples::{rng, MetabolicSample};
use qform::AbGroup;

fn main() -> qform::Result<()> {
    let z = zero_formation(&AbGroup::free(1), &[1])?;
    println!("zero formation: elementary {}, invertible {}", z.is_elementary()?, z.is_l_element()?);

    let seq = hyp_zero(&z, 2)?;
    seq.replay()?;
    println!("hyp_zero: {:?}", seq.summary());

    let by_hand = MoveSequence::new(z.clone(), z.direct_sum(&QuasiFormation::standard_hyperbolic(1, &AbGroup::free(1)))?, vec![Move::Stab]);
    println!("single stabilization replays: {}", by_hand.replays());

    let mut r = rng(21);
    let s = MetabolicSample::random(&mut r, &AbGroup::free(1), &[0], 1)?;
    let x = s.random_l_element(&mut r)?;
    let d = l_group_trivialize(&x)?;
    d.sequence.replay()?;
    println!("K and L meet in rank {}; hyperbolic part of rank {}", d.common.rank(), d.hyperbolic_part.form().rank());
    Ok(())
}
