//! Holomorphic polynomials and polynomial maps over the Gaussian rationals.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::scalar::GaussianRational;

/// A polynomial `Σ c_α z^α` in `n` variables. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HoloPoly {
    n: usize,
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl HoloPoly {
    pub fn zero(n: usize) -> Self {
        Self { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: GaussianRational) -> Self {
        Self::monomial(n, Monomial::one(n), c)
    }

    pub fn monomial(n: usize, m: Monomial, c: GaussianRational) -> Self {
        let mut p = Self::zero(n);
        p.add_term(m, &c);
        p
    }

    /// The coordinate function `z_{i+1}` (0-based `i`).
    pub fn var(n: usize, i: usize) -> Self {
        Self::monomial(n, Monomial::var(n, i), GaussianRational::one())
    }

    /// Builds from `(exponents, coefficient)` pairs, summing duplicates.
    pub fn from_terms<I>(n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, GaussianRational)>,
    {
        let mut p = Self::zero(n);
        for (exps, c) in terms {
            if exps.len() != n {
                return Err(Error::ExponentLength { expected: n, got: exps.len() });
            }
            p.add_term(Monomial::new(exps), &c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> GaussianRational {
        self.terms.get(m).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn constant_term(&self) -> GaussianRational {
        self.coeff(&Monomial::one(self.n))
    }

    /// Every term has the same total degree (the zero polynomial qualifies).
    pub fn homogeneous_degree(&self) -> Option<Option<u32>> {
        let mut it = self.terms.keys().map(Monomial::degree);
        match it.next() {
            None => Some(None),
            Some(d) => it.all(|e| e == d).then_some(Some(d)),
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: &GaussianRational) {
        debug_assert_eq!(m.nvars(), self.n);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &HoloPoly) -> HoloPoly {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn scale(&self, s: &GaussianRational) -> HoloPoly {
        let mut out = HoloPoly::zero(self.n);
        for (m, c) in self.terms() {
            out.add_term(m.clone(), &(c * s));
        }
        out
    }

    pub fn mul(&self, other: &HoloPoly) -> HoloPoly {
        debug_assert_eq!(self.n, other.n);
        let mut out = HoloPoly::zero(self.n);
        for (m1, c1) in self.terms() {
            for (m2, c2) in other.terms() {
                out.add_term(m1.mul(m2), &(c1 * c2));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> HoloPoly {
        let mut acc = HoloPoly::constant(self.n, GaussianRational::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, z: &[GaussianRational]) -> GaussianRational {
        assert_eq!(z.len(), self.n, "evaluation point has wrong dimension");
        self.terms()
            .map(|(m, c)| {
                let mut v = c.clone();
                for (zi, &e) in z.iter().zip(m.exps()) {
                    if e > 0 {
                        v *= &zi.pow(e);
                    }
                }
                v
            })
            .sum()
    }

    /// Keeps the terms of degree at most `d`.
    pub fn truncate(&self, d: u32) -> HoloPoly {
        HoloPoly {
            n: self.n,
            terms: self.terms.iter().filter(|(m, _)| m.degree() <= d).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }
}

impl fmt::Display for HoloPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{c}*{m}")?;
            }
        }
        Ok(())
    }
}

/// A polynomial map `F = (F_1, …, F_p)`; all components share `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HoloMap {
    n: usize,
    components: Vec<HoloPoly>,
}

impl HoloMap {
    pub fn new(n: usize, components: Vec<HoloPoly>) -> Result<Self> {
        if let Some(bad) = components.iter().find(|c| c.nvars() != n) {
            return Err(Error::VariableMismatch(n, bad.nvars()));
        }
        Ok(Self { n, components })
    }

    pub fn empty(n: usize) -> Self {
        Self { n, components: Vec::new() }
    }

    /// The identity map `z = (z_1, …, z_n)`.
    pub fn identity(n: usize) -> Self {
        Self { n, components: (0..n).map(|i| HoloPoly::var(n, i)).collect() }
    }

    /// `(1, f_1, …, f_p)`.
    pub fn with_one(&self) -> Self {
        let mut components = Vec::with_capacity(self.components.len() + 1);
        components.push(HoloPoly::constant(self.n, GaussianRational::one()));
        components.extend(self.components.iter().cloned());
        Self { n: self.n, components }
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn components(&self) -> &[HoloPoly] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Max component degree; 0 for an empty or all-zero map.
    pub fn degree(&self) -> u32 {
        self.components.iter().filter_map(HoloPoly::degree).max().unwrap_or(0)
    }

    pub fn vanishes_at_origin(&self) -> bool {
        self.components.iter().all(|c| c.constant_term().is_zero())
    }

    pub fn eval(&self, z: &[GaussianRational]) -> Vec<GaussianRational> {
        self.components.iter().map(|c| c.eval(z)).collect()
    }

    /// Sorted union of the monomials appearing in any component.
    pub fn support(&self) -> Vec<Monomial> {
        let mut s: Vec<Monomial> = self.components.iter().flat_map(|c| c.terms().map(|(m, _)| m.clone())).collect();
        s.sort();
        s.dedup();
        s
    }

    /// `F ⊕ G = (F, G)`.
    pub fn oplus(&self, other: &HoloMap) -> Result<HoloMap> {
        if self.n != other.n {
            return Err(Error::VariableMismatch(self.n, other.n));
        }
        let mut components = self.components.clone();
        components.extend(other.components.iter().cloned());
        Ok(HoloMap { n: self.n, components })
    }

    /// `F ⊗ G` with components `F_i G_j` in lexicographic `(i, j)` order.
    pub fn tensor(&self, other: &HoloMap) -> Result<HoloMap> {
        if self.n != other.n {
            return Err(Error::VariableMismatch(self.n, other.n));
        }
        let components =
            self.components.iter().flat_map(|fi| other.components.iter().map(move |gj| fi.mul(gj))).collect();
        Ok(HoloMap { n: self.n, components })
    }

    /// `F^{⊗k}`; `k = 0` gives the one-component map `(1)`.
    pub fn tensor_pow(&self, k: u32) -> HoloMap {
        let mut acc = HoloMap { n: self.n, components: vec![HoloPoly::constant(self.n, GaussianRational::one())] };
        for _ in 0..k {
            acc = acc.tensor(self).expect("same variable count");
        }
        acc
    }

    /// Lifts to degree-`d` homogeneous components in `(Z_0, Z_1, …, Z_n)`
    /// via `F_i(Z) = Z_0^d f_i(Z̃ / Z_0)`.
    pub fn homogenize(&self, d: u32) -> Result<HoloMap> {
        let max = self.degree();
        if d < max {
            return Err(Error::DegreeTooLow { degree: d, max });
        }
        let n = self.n + 1;
        let components = self
            .components
            .iter()
            .map(|c| {
                let mut p = HoloPoly::zero(n);
                for (m, coef) in c.terms() {
                    p.add_term(m.with_leading(d - m.degree()), coef);
                }
                p
            })
            .collect();
        Ok(HoloMap { n, components })
    }

    /// Substitutes `Z_0 = 1` in a map whose components are homogeneous of a
    /// common degree.
    pub fn dehomogenize(&self) -> Result<HoloMap> {
        if self.n == 0 {
            return Err(Error::Precondition("cannot dehomogenize a map in zero variables".into()));
        }
        let mut common: Option<u32> = None;
        for c in &self.components {
            match c.homogeneous_degree() {
                None => return Err(Error::NotHomogeneous),
                Some(None) => {}
                Some(Some(d)) => match common {
                    None => common = Some(d),
                    Some(e) if e != d => return Err(Error::NotHomogeneous),
                    _ => {}
                },
            }
        }
        let n = self.n - 1;
        let components = self
            .components
            .iter()
            .map(|c| {
                let mut p = HoloPoly::zero(n);
                for (m, coef) in c.terms() {
                    p.add_term(m.split_leading().1, coef);
                }
                p
            })
            .collect();
        Ok(HoloMap { n, components })
    }

    /// Truncates each component's Taylor series at degree `d`.
    pub fn truncate(&self, d: u32) -> HoloMap {
        HoloMap { n: self.n, components: self.components.iter().map(|c| c.truncate(d)).collect() }
    }

    /// The one-variable map `ζ ↦ f(ζ^{a_1}, …, ζ^{a_n})`.
    pub fn substitute_powers(&self, a: &[u32]) -> Result<HoloMap> {
        if a.len() != self.n {
            return Err(Error::ExponentLength { expected: self.n, got: a.len() });
        }
        if a.contains(&0) {
            return Err(Error::NonPositive("substitution exponent"));
        }
        let components = self
            .components
            .iter()
            .map(|c| {
                let mut p = HoloPoly::zero(1);
                for (m, coef) in c.terms() {
                    let e: u64 = m.exps().iter().zip(a).map(|(&x, &y)| x as u64 * y as u64).sum();
                    let e = u32::try_from(e).expect("substituted exponent overflows u32");
                    p.add_term(Monomial::new(vec![e]), coef);
                }
                p
            })
            .collect();
        Ok(HoloMap { n: 1, components })
    }
}

impl fmt::Display for HoloMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(v: i64) -> GaussianRational {
        GaussianRational::from_int(v)
    }

    fn map(n: usize, comps: &[&[(&[u32], i64)]]) -> HoloMap {
        let components = comps
            .iter()
            .map(|terms| HoloPoly::from_terms(n, terms.iter().map(|(e, c)| (e.to_vec(), g(*c)))).unwrap())
            .collect();
        HoloMap::new(n, components).unwrap()
    }

    #[test]
    fn tensor_and_oplus() {
        let z1 = map(2, &[&[(&[1, 0], 1)]]);
        let z2 = map(2, &[&[(&[0, 1], 1)]]);
        assert_eq!(z1.tensor(&z2).unwrap(), map(2, &[&[(&[1, 1], 1)]]));
        assert_eq!(z1.oplus(&z2).unwrap(), HoloMap::identity(2));

        let f = map(1, &[&[(&[1], 1)]]).with_one();
        let sq = f.tensor(&f).unwrap();
        assert_eq!(sq, map(1, &[&[(&[0], 1)], &[(&[1], 1)], &[(&[1], 1)], &[(&[2], 1)]]));
        assert_eq!(f.tensor_pow(2), sq);
    }

    #[test]
    fn tensor_rejects_mismatch() {
        assert_eq!(HoloMap::identity(1).tensor(&HoloMap::identity(2)), Err(Error::VariableMismatch(1, 2)));
    }

    #[test]
    fn homogenize_examples() {
        let f = map(1, &[&[(&[0], 1), (&[1], 1)]]);
        assert_eq!(f.homogenize(1).unwrap(), map(2, &[&[(&[1, 0], 1), (&[0, 1], 1)]]));

        let f = map(1, &[&[(&[1], 1)], &[(&[2], 1)]]);
        let big = f.homogenize(2).unwrap();
        assert_eq!(big, map(2, &[&[(&[1, 1], 1)], &[(&[0, 2], 1)]]));
        assert_eq!(big.dehomogenize().unwrap(), f);
        assert_eq!(f.homogenize(1), Err(Error::DegreeTooLow { degree: 1, max: 2 }));
    }

    #[test]
    fn dehomogenize_rejects_mixed_degrees() {
        let f = map(2, &[&[(&[1, 0], 1), (&[2, 0], 1)]]);
        assert_eq!(f.dehomogenize(), Err(Error::NotHomogeneous));
        let f = map(2, &[&[(&[1, 0], 1)], &[(&[2, 0], 1)]]);
        assert_eq!(f.dehomogenize(), Err(Error::NotHomogeneous));
    }

    #[test]
    fn truncation() {
        let f = map(1, &[&[(&[0], 1), (&[1], 1), (&[3], 1)]]);
        assert_eq!(f.truncate(2), map(1, &[&[(&[0], 1), (&[1], 1)]]));
        assert_eq!(f.truncate(f.degree()), f);
        let f = map(2, &[&[(&[1, 0], 1), (&[0, 2], 1)], &[(&[0, 1], 1)]]);
        assert_eq!(f.truncate(1), HoloMap::identity(2));
    }

    #[test]
    fn power_substitution() {
        let f = map(2, &[&[(&[1, 1], 1)]]);
        assert_eq!(f.substitute_powers(&[2, 3]).unwrap(), map(1, &[&[(&[5], 1)]]));
        let f = HoloMap::identity(2);
        assert_eq!(f.substitute_powers(&[2, 3]).unwrap(), map(1, &[&[(&[2], 1)], &[(&[3], 1)]]));
        let f = map(2, &[&[(&[2, 0], 1)], &[(&[0, 1], 1)]]);
        assert_eq!(f.substitute_powers(&[1, 2]).unwrap(), map(1, &[&[(&[2], 1)], &[(&[2], 1)]]));
        assert!(f.substitute_powers(&[1]).is_err());
    }

    #[test]
    fn cancellation_removes_terms() {
        let mut p = HoloPoly::var(1, 0);
        p.add_term(Monomial::var(1, 0), &g(-1));
        assert!(p.is_zero());
        assert_eq!(p.degree(), None);
    }
}
