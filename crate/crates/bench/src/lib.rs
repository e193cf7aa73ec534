//! Seeded inputs shared by the benchmarks.

use cubex::generate::{random_set_cube, random_surjective_group_square, rng};
use cubex::simplicial::{tv_resolution, DoublingCover};
use cubex::{catalog, Cube, ExtensionClass, FinObject, SquareArrow, TruncatedSimplicial};

pub fn set_cubes(dim: usize, count: usize) -> Vec<Cube> {
    let mut r = rng(1);
    (0..count).map(|_| random_set_cube(&mut r, dim, 3).unwrap()).collect()
}

pub fn group_squares(count: usize) -> Vec<SquareArrow> {
    let mut r = rng(2);
    (0..count).map(|_| random_surjective_group_square(&mut r, 8).unwrap()).collect()
}

/// Covering resolutions of the three-element set and of `Z2` up to `top`.
pub fn resolutions(top: usize) -> Vec<TruncatedSimplicial> {
    let doubled = DoublingCover::at_levels(vec![0]);
    [FinObject::set_of_size(3), catalog::cyclic(2)]
        .iter()
        .map(|x| tv_resolution(x, ExtensionClass::Surjections, &doubled, top).unwrap())
        .collect()
}
