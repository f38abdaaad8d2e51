//! Exponent vectors `z^α` and the global monomial ordering.

use std::cmp::Ordering;
use std::fmt;

/// A monomial `z_1^{α_1} ⋯ z_n^{α_n}`.
///
/// Ordering is graded: lower total degree first; within a degree the
/// monomial with the larger exponent in the earliest variable comes first,
/// so `1 < z_1 < z_2 < z_1^2 < z_1 z_2 < z_2^2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
    degree: u32,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        let degree = exps.iter().sum();
        Self { exps, degree }
    }

    pub fn one(n: usize) -> Self {
        Self { exps: vec![0; n], degree: 0 }
    }

    /// The coordinate monomial `z_{i+1}` (0-based `i`).
    pub fn var(n: usize, i: usize) -> Self {
        let mut exps = vec![0; n];
        exps[i] = 1;
        Self { exps, degree: 1 }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        let exps: Vec<u32> = self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect();
        Monomial { exps, degree: self.degree + other.degree }
    }

    /// `self / z_{i+1}` when that exponent is positive.
    pub fn div_var(&self, i: usize) -> Option<Monomial> {
        if self.exps[i] == 0 {
            return None;
        }
        let mut exps = self.exps.clone();
        exps[i] -= 1;
        Some(Monomial { exps, degree: self.degree - 1 })
    }

    /// Prepends a new leading variable with exponent `e`.
    pub fn with_leading(&self, e: u32) -> Monomial {
        let mut exps = Vec::with_capacity(self.exps.len() + 1);
        exps.push(e);
        exps.extend_from_slice(&self.exps);
        Monomial { exps, degree: self.degree + e }
    }

    /// Drops the leading variable, returning its exponent and the rest.
    pub fn split_leading(&self) -> (u32, Monomial) {
        let e = self.exps[0];
        (e, Monomial::new(self.exps[1..].to_vec()))
    }

    /// All monomials of total degree exactly `d` in `n` variables, in order.
    pub fn all_of_degree(n: usize, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; n];
        fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            let n = cur.len();
            if i + 1 == n {
                cur[i] = left;
                out.push(Monomial::new(cur.clone()));
                cur[i] = 0;
                return;
            }
            for e in (0..=left).rev() {
                cur[i] = e;
                rec(i + 1, left - e, cur, out);
            }
            cur[i] = 0;
        }
        if n == 0 {
            if d == 0 {
                out.push(Monomial::new(Vec::new()));
            }
            return out;
        }
        rec(0, d, &mut cur, &mut out);
        out
    }

    /// All monomials with `lo <= degree <= hi`.
    pub fn all_up_to(n: usize, lo: u32, hi: u32) -> Vec<Monomial> {
        (lo..=hi).flat_map(|d| Monomial::all_of_degree(n, d)).collect()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "z{}", i + 1)?;
            } else {
                write!(f, "z{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}
