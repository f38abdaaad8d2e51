//! Generators and independent oracles shared by the integration suites.

#![allow(dead_code)]

use holosos::ensemble::{random_gaussian, random_minimal_map, random_poly, random_rational};
use holosos::{GaussianRational, HermitianForm, HoloMap, HoloPoly, Monomial};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

pub fn random_point<R: Rng>(rng: &mut R, n: usize) -> Vec<GaussianRational> {
    (0..n).map(|_| random_gaussian(rng, 5)).collect()
}

/// A map with `d` components (possibly dependent, possibly zero) of degree
/// at most `degree`, vanishing at the origin.
pub fn random_map<R: Rng>(rng: &mut R, n: usize, d: usize, degree: u32) -> HoloMap {
    HoloMap::new(n, (0..d).map(|_| random_poly(rng, n, 1, degree, 4)).collect()).unwrap()
}

/// A map that may have a constant term.
pub fn random_affine_map<R: Rng>(rng: &mut R, n: usize, d: usize, degree: u32) -> HoloMap {
    HoloMap::new(n, (0..d).map(|_| random_poly(rng, n, 0, degree, 4)).collect()).unwrap()
}

/// A minimal map vanishing at 0 with `d` capped by the available monomials.
pub fn random_minimal<R: Rng>(rng: &mut R, n: usize, d: usize, degree: u32) -> HoloMap {
    let cap = Monomial::all_up_to(n, 1, degree).len();
    random_minimal_map(rng, n, d.min(cap), degree, 4)
}

/// A random Hermitian form supported on monomials of degree `lo..=hi`.
pub fn random_hermitian<R: Rng>(rng: &mut R, n: usize, lo: u32, hi: u32) -> HermitianForm {
    let basis = Monomial::all_up_to(n, lo, hi);
    let mut triples = Vec::new();
    for (i, a) in basis.iter().enumerate() {
        for b in &basis[i..] {
            if rng.gen_bool(0.4) {
                continue;
            }
            if a == b {
                let v = GaussianRational::real(random_rational(rng, 4));
                triples.push((a.exps().to_vec(), b.exps().to_vec(), v));
            } else {
                let v = random_gaussian(rng, 4);
                triples.push((b.exps().to_vec(), a.exps().to_vec(), v.conj()));
                triples.push((a.exps().to_vec(), b.exps().to_vec(), v));
            }
        }
    }
    HermitianForm::from_triples(n, triples).unwrap()
}

/// `Σ_i |f_i(z)|²` computed pointwise, never forming a Gram matrix.
pub fn pointwise_norm(f: &HoloMap, z: &[GaussianRational]) -> BigRational {
    f.eval(z).iter().map(GaussianRational::norm_sqr).fold(BigRational::zero(), |a, b| a + b)
}

/// Every map with `p` distinct monomial components of degree `1..=3` in
/// `n` variables (components listed in increasing monomial order).
pub fn monomial_maps(n: usize, p: usize) -> Vec<HoloMap> {
    let monos = Monomial::all_up_to(n, 1, 3);
    let mut out = Vec::new();
    let mut pick = Vec::new();
    choose(&monos, p, 0, &mut pick, &mut |chosen: &[Monomial]| {
        let comps = chosen.iter().map(|m| HoloPoly::monomial(n, m.clone(), GaussianRational::one())).collect();
        out.push(HoloMap::new(n, comps).unwrap());
    });
    out
}

fn choose<T: Clone>(items: &[T], k: usize, start: usize, pick: &mut Vec<T>, emit: &mut dyn FnMut(&[T])) {
    if pick.len() == k {
        emit(pick);
        return;
    }
    for i in start..items.len() {
        pick.push(items[i].clone());
        choose(items, k, i + 1, pick, emit);
        pick.pop();
    }
}

/// Complex rank of the coefficient matrix of `f`, computed as half the real
/// rank of its realification `[[Re, -Im], [Im, Re]]` by fraction-based
/// Gaussian elimination. Shares no code with the library's row reduction.
pub fn realified_rank(f: &HoloMap) -> usize {
    let support = f.support();
    let k = support.len();
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    for c in f.components() {
        let coeffs: Vec<GaussianRational> = support.iter().map(|m| c.coeff(m)).collect();
        rows.push(coeffs.iter().map(|v| v.re.clone()).chain(coeffs.iter().map(|v| -v.im.clone())).collect());
        rows.push(coeffs.iter().map(|v| v.im.clone()).chain(coeffs.iter().map(|v| v.re.clone())).collect());
    }
    let cols = 2 * k;
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else { continue };
        rows.swap(rank, p);
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let factor = &rows[r][col] / &rows[rank][col];
                let pivot = rows[rank].clone();
                for (x, pv) in rows[r].iter_mut().zip(&pivot).skip(col) {
                    *x -= &factor * pv;
                }
            }
        }
        rank += 1;
    }
    assert_eq!(rank % 2, 0, "realified rank is always even");
    rank / 2
}

/// Inertia of a diagonal form, read off from the signs of its entries.
pub fn diagonal_inertia(coeffs: &[BigRational]) -> (usize, usize) {
    (coeffs.iter().filter(|c| c.is_positive()).count(), coeffs.iter().filter(|c| c.is_negative()).count())
}

/// Self-convolution of a coefficient sequence, `(c * c)_k = Σ_i c_i c_{k-i}`.
pub fn convolve(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

pub fn one() -> BigRational {
    BigRational::one()
}
