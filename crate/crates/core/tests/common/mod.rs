#![allow(dead_code)]

pub mod oracle;

use rand::Rng;
use tverberg_core::rational::ratio;
use tverberg_core::{Point, Rational};

/// Small-denominator rational in `[-range, range]`.
pub fn random_rational<R: Rng>(rng: &mut R, range: i64) -> Rational {
    let den = rng.gen_range(1..=3);
    ratio(rng.gen_range(-range * den..=range * den), den)
}

pub fn random_point<R: Rng>(rng: &mut R, d: usize, range: i64) -> Point {
    Point::new((0..d).map(|_| random_rational(rng, range)).collect())
}
