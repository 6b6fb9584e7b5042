//! Records as negative designs: radius at bias 1, angle at 2, colour at 3.

use super::universe::{Behaviour, BehaviourError, Universe, DEFAULT_CAP};
use crate::designs::named::{alphabet, dai_neg};
use crate::designs::{Address, Design, Negative, Polarity, Positive};

pub struct ColouredPoint {
    pub universe: Universe,
    /// The red point at distance 2, angle 180.
    pub point: Negative,
    /// Coloured circles: radius and colour observed.
    pub g: Behaviour,
    /// Points: radius and angle observed.
    pub g_prime: Behaviour,
    /// Circles: radius only.
    pub g1: Behaviour,
    /// Colours only.
    pub g2: Behaviour,
    /// `|point|_G` as written by hand.
    pub expected: Negative,
}

/// `(+, ε, {i})·Dai⁻_i`: asks for field `i`.
pub fn field_query(u: &Universe, i: u32) -> Design {
    let a = Address::root().child(i);
    Design::Positive(Positive::proper(Address::root(), [i].into(), vec![dai_neg(a, &u.alphabet)]).expect("one child"))
}

pub fn coloured_point() -> Result<ColouredPoint, BehaviourError> {
    let universe = Universe::new(Address::root(), alphabet(&[&[1], &[2], &[3], &[9], &[180]]), 2, DEFAULT_CAP)?;
    let point = Negative::parse("(- . ({1} -> (+ 1 {2})) ({2} -> (+ 2 {180})) ({3} -> (+ 3 {9})))").expect("fixture");
    let expected = Negative::parse("(- . ({1} -> (+ 1 {2})) ({3} -> (+ 3 {9})))").expect("fixture");
    let q = |i| field_query(&universe, i);
    let g = universe.orthogonal_set(&[q(1), q(3)], Polarity::Positive)?;
    let g_prime = universe.orthogonal_set(&[q(1), q(2)], Polarity::Positive)?;
    let g1 = universe.orthogonal_set(&[q(1)], Polarity::Positive)?;
    let g2 = universe.orthogonal_set(&[q(3)], Polarity::Positive)?;
    Ok(ColouredPoint { universe, point, g, g_prime, g1, g2, expected })
}
