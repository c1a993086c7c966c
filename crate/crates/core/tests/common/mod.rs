#![allow(dead_code)]

use cohom31_core::algebra::{standard_generator, GeneratorLabel};
use cohom31_core::group::{cayley_rotation, exp_element, rational_boost, rational_rotation, Isometry};
use cohom31_core::linalg::{frac, int, Mat4, MinkVector, Scalar};
use cohom31_core::IsoAlgebraElement;
use rand::Rng;

pub fn scalar(rng: &mut impl Rng, max: i64) -> Scalar {
    let d: i64 = rng.gen_range(1..=6);
    frac(rng.gen_range(-max * d..=max * d), d)
}

pub fn point(rng: &mut impl Rng) -> MinkVector {
    MinkVector(std::array::from_fn(|_| scalar(rng, 5)))
}

pub fn element(rng: &mut impl Rng) -> IsoAlgebraElement {
    GeneratorLabel::ALL
        .iter()
        .fold(IsoAlgebraElement::zero(), |acc, &l| acc.add(&standard_generator(l).scale(&scalar(rng, 3))))
}

/// Product of rational rotations, boosts and a null rotation, with a random translation.
pub fn isometry(rng: &mut impl Rng) -> Isometry {
    let mut lin = Mat4::identity();
    for _ in 0..3 {
        let m = match rng.gen_range(0..4) {
            0 => {
                let (i, j) = [(1, 2), (1, 3), (2, 3)][rng.gen_range(0..3)];
                rational_rotation(i, j, &scalar(rng, 2))
            }
            1 => rational_boost(rng.gen_range(1..=3), &frac(rng.gen_range(-4..=4), 5)),
            2 => cayley_rotation(&std::array::from_fn(|_| scalar(rng, 2))),
            _ => {
                let gen = standard_generator([GeneratorLabel::Yn1, GeneratorLabel::Yn2][rng.gen_range(0..2)]);
                exp_element(&gen, &scalar(rng, 2)).as_exact().expect("nilpotent exponential is exact").lin.clone()
            }
        };
        lin = &lin * &m;
    }
    Isometry::new(lin, point(rng)).expect("products of Lorentz matrices are Lorentz")
}

pub fn ints(c: [i64; 4]) -> MinkVector {
    MinkVector::from_ints(c)
}

pub fn one() -> Scalar {
    int(1)
}
