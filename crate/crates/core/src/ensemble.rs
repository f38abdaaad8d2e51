//! Seeded random ensembles of modifying maps and the CSV report of their
//! target dimensions.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bounds::{check_gap, check_nonhomogeneous_product};
use crate::error::{Error, Result};
use crate::isometry::solve_h;
use crate::monomial::Monomial;
use crate::par::{map_indexed, Execution};
use crate::poly::{HoloMap, HoloPoly};
use crate::rankdecomp::span_rank;
use crate::scalar::GaussianRational;

pub const CSV_HEADER: &str = "n,d,degree,m,lower,upper,in_gap";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnsembleConfig {
    pub n: usize,
    pub d_max: usize,
    pub degree_max: u32,
    pub count: usize,
    pub seed: u64,
    /// Bound on |numerator| and on the denominator of each coefficient part.
    pub coefficient_height: u32,
}

impl EnsembleConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::NonPositive("n"));
        }
        if self.d_max == 0 {
            return Err(Error::NonPositive("d_max"));
        }
        if self.degree_max == 0 {
            return Err(Error::NonPositive("degree_max"));
        }
        if self.coefficient_height == 0 {
            return Err(Error::NonPositive("coefficient_height"));
        }
        Ok(())
    }
}

/// A random rational in `[-h, h] / [1, h]`.
pub fn random_rational<R: Rng>(rng: &mut R, height: u32) -> BigRational {
    let h = height as i64;
    let num = rng.gen_range(-h..=h);
    let den = rng.gen_range(1..=h);
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn random_gaussian<R: Rng>(rng: &mut R, height: u32) -> GaussianRational {
    GaussianRational::new(random_rational(rng, height), random_rational(rng, height))
}

/// A polynomial supported on monomials of degree `lo..=hi`; each monomial
/// is kept with probability 1/2 and gets a random Gaussian-rational
/// coefficient. May be zero.
pub fn random_poly<R: Rng>(rng: &mut R, n: usize, lo: u32, hi: u32, height: u32) -> HoloPoly {
    let mut p = HoloPoly::zero(n);
    for m in Monomial::all_up_to(n, lo, hi) {
        if rng.gen_bool(0.5) {
            p.add_term(m, &random_gaussian(rng, height));
        }
    }
    p
}

/// Monomials available to a map vanishing at 0 with degree at most `degree`.
fn available(n: usize, degree: u32) -> usize {
    Monomial::all_up_to(n, 1, degree).len()
}

/// A random map with `d` linearly independent components vanishing at 0.
/// Dependent draws are rejected. Requires `d <= ` the number of monomials
/// of degree `1..=degree`.
pub fn random_minimal_map<R: Rng>(rng: &mut R, n: usize, d: usize, degree: u32, height: u32) -> HoloMap {
    assert!(d <= available(n, degree), "not enough monomials for {d} independent components");
    loop {
        let comps = (0..d).map(|_| random_poly(rng, n, 1, degree, height)).collect();
        let f = HoloMap::new(n, comps).expect("same variable count");
        if span_rank(&f) == d {
            return f;
        }
    }
}

/// One sampled map and its target dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnsembleRow {
    pub n: usize,
    pub d: usize,
    pub degree: u32,
    pub m: usize,
    pub lower: u64,
    pub upper: Option<u64>,
    pub in_gap: bool,
}

impl EnsembleRow {
    pub fn csv_line(&self) -> String {
        let upper = self.upper.map(|u| u.to_string()).unwrap_or_default();
        format!("{},{},{},{},{},{},{}", self.n, self.d, self.degree, self.m, self.lower, upper, self.in_gap)
    }
}

fn sample_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// Draws the `index`-th map of the ensemble. Each index has its own RNG
/// stream, so results do not depend on evaluation order.
pub fn sample_map(config: &EnsembleConfig, index: usize) -> HoloMap {
    let mut rng = sample_rng(config.seed, index);
    let degree = rng.gen_range(1..=config.degree_max);
    let d_cap = config.d_max.min(available(config.n, degree));
    let d = rng.gen_range(1..=d_cap);
    random_minimal_map(&mut rng, config.n, d, degree, config.coefficient_height)
}

pub fn evaluate_map(f: &HoloMap) -> EnsembleRow {
    let n = f.nvars();
    let m = solve_h(f, 1, 1).expect("sampled maps are minimal and vanish at 0").len();
    let report = check_nonhomogeneous_product(n as u64, f.len() as u64, m as u64).expect("positive inputs");
    let in_gap = !check_gap(n as u64, m as u64).expect("positive inputs").satisfied;
    EnsembleRow { n, d: f.len(), degree: f.degree(), m, lower: report.lower, upper: report.upper, in_gap }
}

pub fn run_ensemble(config: &EnsembleConfig, exec: Execution) -> Result<Vec<EnsembleRow>> {
    config.validate()?;
    Ok(map_indexed(exec, config.count, |i| evaluate_map(&sample_map(config, i))))
}

/// The full CSV text: header plus one line per sample, in sample order.
pub fn ensemble_csv(config: &EnsembleConfig, exec: Execution) -> Result<String> {
    let rows = run_ensemble(config, exec)?;
    let mut out = String::new();
    writeln!(out, "{CSV_HEADER}").expect("write to string");
    for r in rows {
        writeln!(out, "{}", r.csv_line()).expect("write to string");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn cfg(count: usize, seed: u64) -> EnsembleConfig {
        EnsembleConfig { n: 2, d_max: 2, degree_max: 2, count, seed, coefficient_height: 3 }
    }

    #[test]
    fn empty_ensemble_is_header_only() {
        assert_eq!(ensemble_csv(&cfg(0, 1), Execution::Sequential).unwrap(), format!("{CSV_HEADER}\n"));
    }

    #[test]
    fn rows_respect_bounds() {
        let rows = run_ensemble(&cfg(50, 1), Execution::Parallel).unwrap();
        assert_eq!(rows.len(), 50);
        for r in &rows {
            assert!(r.lower as usize <= r.m);
            assert!(r.upper.is_none_or(|u| r.m as u64 <= u));
            assert!(!r.in_gap);
        }
    }

    #[test]
    fn deterministic_across_execution_modes() {
        let a = ensemble_csv(&cfg(20, 7), Execution::Sequential).unwrap();
        let b = ensemble_csv(&cfg(20, 7), Execution::Parallel).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, ensemble_csv(&cfg(20, 8), Execution::Sequential).unwrap());
    }

    #[test]
    fn bad_config() {
        let mut c = cfg(1, 1);
        c.n = 0;
        assert!(c.validate().is_err());
    }

    #[test]
    fn random_rational_in_range() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let r = random_rational(&mut rng, 4);
            assert!(r.numer().magnitude() <= &4u32.into() || r.is_zero());
        }
    }
}
