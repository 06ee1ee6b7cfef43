//! Seeded generators for test and benchmark matrices.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Mat;
use crate::field::Field;
use crate::poly::Poly;

/// Uniform entries from [`Field::sample`].
pub fn random_matrix<F: Field, R: Rng + ?Sized>(field: &F, n: usize, rng: &mut R) -> Mat<F> {
    let data = (0..n * n).map(|_| field.sample(rng)).collect();
    Mat { field: field.clone(), n, data }
}

/// Block-diagonal matrix of companion blocks `h^e`, where each `h` is drawn
/// from a small pool of random monic polynomials (so eigenvalues repeat across
/// blocks) and `1 <= e <= max_exp`. Returns the matrix and its block polynomials.
pub fn random_block_companion<F: Field, R: Rng + ?Sized>(
    field: &F,
    n: usize,
    max_base_degree: usize,
    max_exp: u32,
    rng: &mut R,
) -> (Mat<F>, Vec<Poly<F>>) {
    let max_base_degree = max_base_degree.max(1);
    let pool_size = (n / (2 * max_base_degree)).clamp(1, 8);
    let pool: Vec<Poly<F>> = (0..pool_size)
        .map(|_| Poly::random_monic(field.clone(), rng.gen_range(1..=max_base_degree), rng))
        .collect();
    let mut blocks = Vec::new();
    let mut left = n;
    while left > 0 {
        let base = &pool[rng.gen_range(0..pool.len())];
        let d = base.degree().unwrap_or(1);
        let e = rng.gen_range(1..=max_exp.max(1)) as usize;
        let block = if d * e <= left {
            base.pow(e as u64)
        } else if d <= left {
            base.pow((left / d) as u64)
        } else {
            Poly::random_monic(field.clone(), left, rng)
        };
        left -= block.degree().unwrap_or(0);
        blocks.push(block);
    }
    let mats: Vec<Mat<F>> = blocks.iter().map(Mat::companion).collect();
    (Mat::block_diagonal(field.clone(), &mats), blocks)
}

/// The benchmark workload: a block-companion matrix determined by `(n, seed)`.
pub fn seeded_block_companion<F: Field>(field: &F, n: usize, seed: u64) -> Mat<F> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (n as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    random_block_companion(field, n, 6, 4, &mut rng).0
}

/// `E M E^{-1}` for a product of `count` random elementary matrices
/// `E = I + c e_i e_j^T` with `c = +-1`; integer matrices stay integral.
pub fn random_conjugate<F: Field, R: Rng + ?Sized>(m: &Mat<F>, count: usize, rng: &mut R) -> Mat<F> {
    let n = m.n;
    let f = m.field.clone();
    let mut out = m.clone();
    if n < 2 {
        return out;
    }
    for _ in 0..count {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let c = if rng.gen_bool(0.5) { f.one() } else { f.neg(&f.one()) };
        // Row op: row_i += c * row_j.
        for k in 0..n {
            let v = f.add(out.get(i, k), &f.mul(&c, out.get(j, k)));
            out.set(i, k, v);
        }
        // Column op with the inverse: col_j -= c * col_i.
        for k in 0..n {
            let v = f.sub(out.get(k, j), &f.mul(&c, out.get(k, i)));
            out.set(k, j, v);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn block_companion_has_requested_size_and_annihilator() {
        let mut rng = ChaCha8Rng::seed_from_u64(61);
        let f2 = PrimeField::new(2).unwrap();
        for n in [1, 5, 17, 40] {
            let (m, blocks) = random_block_companion(&f2, n, 4, 3, &mut rng);
            assert_eq!(m.dim(), n);
            let prod = blocks.iter().fold(Poly::one(f2), |acc, b| &acc * b);
            assert!(m.eval_poly(&prod).unwrap().is_zero());
        }
    }

    #[test]
    fn conjugation_preserves_minimal_polynomial() {
        let mut rng = ChaCha8Rng::seed_from_u64(62);
        for _ in 0..20 {
            let (m, _) = random_block_companion(&Rationals, 6, 2, 3, &mut rng);
            let c = random_conjugate(&m, 12, &mut rng);
            assert_eq!(c.minimal_polynomial(), m.minimal_polynomial());
        }
    }
}
