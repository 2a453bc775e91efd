//! Seeded generators of test data for the category layer.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactlin::{RatMatrix, Rational};

use super::{from_autpair, AutPair, StarSumRep};

/// Entries of random integer matrices are drawn from `-ENTRY_BOUND..=ENTRY_BOUND`.
pub const ENTRY_BOUND: i64 = 3;
pub const MAX_RANDOM_DIM: usize = 6;

pub fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_int_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> RatMatrix {
    let data = (0..rows * cols)
        .map(|_| Rational::from(rng.gen_range(-ENTRY_BOUND..=ENTRY_BOUND)))
        .collect();
    RatMatrix::new(rows, cols, data).expect("sized")
}

pub fn random_invertible<R: Rng>(rng: &mut R, n: usize) -> RatMatrix {
    loop {
        let m = random_int_matrix(rng, n, n);
        if !m.det().expect("square").is_zero() {
            return m;
        }
    }
}

/// Integer automorphism pair of dimension `1..=max_dim`, redrawn until both
/// `m` and `m - I` are invertible.
pub fn random_autpair<R: Rng>(rng: &mut R, max_dim: usize) -> AutPair {
    let max_dim = max_dim.clamp(1, MAX_RANDOM_DIM);
    let dim = rng.gen_range(1..=max_dim);
    loop {
        if let Ok(pair) = AutPair::new(random_int_matrix(rng, dim, dim)) {
            return pair;
        }
    }
}

/// Random change of basis on `V` and on every outer space, followed by a
/// random reordering of the outer spaces.
pub fn scramble<R: Rng>(rng: &mut R, rep: &StarSumRep) -> StarSumRep {
    let g = random_invertible(rng, rep.dim_v());
    let h: Vec<RatMatrix> = rep.outer().iter().map(|o| random_invertible(rng, o.dim)).collect();
    let mut perm: Vec<usize> = (0..rep.n()).collect();
    perm.shuffle(rng);
    rep.change_basis(&g, &h)
        .and_then(|r| r.permute(&perm))
        .expect("shapes preserved")
}

/// A valid 4-star in a random basis, deterministic per seed.
pub fn random_pants(seed: u64, max_dim: usize) -> StarSumRep {
    let mut rng = rng_for(seed);
    let pair = random_autpair(&mut rng, max_dim);
    scramble(&mut rng, &from_autpair(&pair))
}

/// The 4-star whose third and fourth arms are the graphs of `m3` and `m4`.
/// Valid iff `m3, m4` are invertible and `m3^{-1} m4 - I` is.
pub fn graph_star(m3: &RatMatrix, m4: &RatMatrix) -> StarSumRep {
    let d = m3.rows();
    let id = RatMatrix::identity(d);
    let zero = RatMatrix::zeros(d, d);
    let stack = |b: &RatMatrix| id.vstack(b).expect("square blocks");
    let maps = vec![
        id.vstack(&zero).expect("square blocks"),
        zero.vstack(&id).expect("square blocks"),
        stack(m3),
        stack(m4),
    ];
    StarSumRep::from_maps(2 * d, maps).expect("well-formed")
}

/// A valid 3-star (trefoil type) in a random basis.
pub fn random_trefoil(seed: u64, max_dim: usize) -> StarSumRep {
    let mut rng = rng_for(seed);
    let d = rng.gen_range(1..=max_dim.clamp(1, MAX_RANDOM_DIM));
    let m3 = random_invertible(&mut rng, d);
    let id = RatMatrix::identity(d);
    let zero = RatMatrix::zeros(d, d);
    let maps = vec![
        id.vstack(&zero).expect("square"),
        zero.vstack(&id).expect("square"),
        id.vstack(&m3).expect("square"),
    ];
    let rep = StarSumRep::from_maps(2 * d, maps).expect("well-formed");
    scramble(&mut rng, &rep)
}
