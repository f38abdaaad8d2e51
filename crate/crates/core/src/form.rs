//! Hermitian symmetric polynomials `a(z, z̄) = Σ c_{αβ} z^α z̄^β` stored as a
//! dense Gram (coefficient) matrix over their monomial support.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::monomial::Monomial;
use crate::poly::HoloMap;
use crate::scalar::GaussianRational;

type Entries = BTreeMap<(Monomial, Monomial), GaussianRational>;

/// A Hermitian form. `gram[(i, j)]` is the coefficient of
/// `z^{basis[i]} conj(z)^{basis[j]}`; the basis is sorted, distinct, and
/// pruned to monomials whose row is nonzero, so two forms are equal as
/// functions exactly when they are equal as values.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HermitianForm {
    n: usize,
    basis: Vec<Monomial>,
    gram: Matrix,
}

fn add_entry(e: &mut Entries, key: (Monomial, Monomial), c: GaussianRational) {
    if c.is_zero() {
        return;
    }
    match e.entry(key) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += &c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

impl HermitianForm {
    pub fn zero(n: usize) -> Self {
        Self { n, basis: Vec::new(), gram: Matrix::zeros(0, 0) }
    }

    /// The constant form `c`.
    pub fn constant(n: usize, c: BigRational) -> Self {
        let mut e = Entries::new();
        add_entry(&mut e, (Monomial::one(n), Monomial::one(n)), c.into());
        Self::from_entries(n, e)
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, BigRational::one())
    }

    /// `‖z‖^2 = Σ |z_j|^2` over all `n` variables.
    pub fn norm_z(n: usize) -> Self {
        Self::norm_form(&HoloMap::identity(n))
    }

    fn from_entries(n: usize, entries: Entries) -> Self {
        let mut basis: Vec<Monomial> = entries.keys().flat_map(|(a, b)| [a.clone(), b.clone()]).collect();
        basis.sort();
        basis.dedup();
        let index: BTreeMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut gram = Matrix::zeros(basis.len(), basis.len());
        for ((a, b), c) in &entries {
            gram[(index[a], index[b])] = c.clone();
        }
        let form = Self { n, basis, gram };
        debug_assert!(form.gram.is_hermitian(), "constructed Gram matrix lost Hermitian symmetry");
        form
    }

    /// Builds a form from an explicit basis and Gram matrix, validating
    /// Hermitian symmetry and basis distinctness. The result is canonicalized
    /// (sorted, zero rows pruned).
    pub fn new(n: usize, basis: Vec<Monomial>, gram: Matrix) -> Result<Self> {
        if gram.rows() != basis.len() || gram.cols() != basis.len() {
            return Err(Error::Precondition("Gram matrix size does not match basis".into()));
        }
        if let Some(m) = basis.iter().find(|m| m.nvars() != n) {
            return Err(Error::ExponentLength { expected: n, got: m.nvars() });
        }
        let mut sorted = basis.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != basis.len() {
            return Err(Error::Precondition("basis monomials are not distinct".into()));
        }
        if !gram.is_hermitian() {
            return Err(Error::NotHermitian);
        }
        let mut e = Entries::new();
        for (i, a) in basis.iter().enumerate() {
            for (j, b) in basis.iter().enumerate() {
                add_entry(&mut e, (a.clone(), b.clone()), gram[(i, j)].clone());
            }
        }
        Ok(Self::from_entries(n, e))
    }

    /// Builds from `(α, β, c)` triples, summing duplicates; rejects
    /// non-Hermitian data.
    pub fn from_triples<I>(n: usize, triples: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, Vec<u32>, GaussianRational)>,
    {
        let mut e = Entries::new();
        for (a, b, c) in triples {
            for v in [&a, &b] {
                if v.len() != n {
                    return Err(Error::ExponentLength { expected: n, got: v.len() });
                }
            }
            add_entry(&mut e, (Monomial::new(a), Monomial::new(b)), c);
        }
        for ((a, b), c) in &e {
            if e.get(&(b.clone(), a.clone())).map(GaussianRational::conj).as_ref() != Some(c) {
                return Err(Error::NotHermitian);
            }
        }
        Ok(Self::from_entries(n, e))
    }

    /// One-variable form `Σ_k c_k |z|^{2k}`.
    pub fn diagonal_1d(coeffs: &[BigRational]) -> Self {
        let mut e = Entries::new();
        for (k, c) in coeffs.iter().enumerate() {
            let m = Monomial::new(vec![k as u32]);
            add_entry(&mut e, (m.clone(), m), c.clone().into());
        }
        Self::from_entries(1, e)
    }

    /// `‖F‖^2 = Σ_k |F_k(z)|^2`.
    pub fn norm_form(f: &HoloMap) -> Self {
        let mut e = Entries::new();
        for comp in f.components() {
            for (a, ca) in comp.terms() {
                for (b, cb) in comp.terms() {
                    add_entry(&mut e, (a.clone(), b.clone()), ca * &cb.conj());
                }
            }
        }
        Self::from_entries(f.nvars(), e)
    }

    /// `Σ_k r_k |p_k(z)|^2` for rational weights.
    pub fn weighted_norm_form<'a, I>(n: usize, parts: I) -> Self
    where
        I: IntoIterator<Item = (&'a BigRational, &'a crate::poly::HoloPoly)>,
    {
        let mut e = Entries::new();
        for (r, comp) in parts {
            for (a, ca) in comp.terms() {
                for (b, cb) in comp.terms() {
                    add_entry(&mut e, (a.clone(), b.clone()), (ca * &cb.conj()).scale(r));
                }
            }
        }
        Self::from_entries(n, e)
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Nonzero `(α, β, c_{αβ})` entries in row-major basis order.
    pub fn entries(&self) -> impl Iterator<Item = (&Monomial, &Monomial, &GaussianRational)> {
        let k = self.basis.len();
        (0..k).flat_map(move |i| (0..k).map(move |j| (i, j))).filter_map(move |(i, j)| {
            let c = &self.gram[(i, j)];
            (!c.is_zero()).then(|| (&self.basis[i], &self.basis[j], c))
        })
    }

    fn to_entries(&self) -> Entries {
        self.entries().map(|(a, b, c)| ((a.clone(), b.clone()), c.clone())).collect()
    }

    pub fn coeff(&self, a: &Monomial, b: &Monomial) -> GaussianRational {
        let i = self.basis.binary_search(a);
        let j = self.basis.binary_search(b);
        match (i, j) {
            (Ok(i), Ok(j)) => self.gram[(i, j)].clone(),
            _ => GaussianRational::zero(),
        }
    }

    /// Coefficients of `|z|^{2k}` for `k = 0..=max` in a one-variable form.
    pub fn diagonal_coeffs_1d(&self) -> Vec<BigRational> {
        assert_eq!(self.n, 1, "diagonal_coeffs_1d needs a one-variable form");
        let max = self.basis.last().map_or(0, Monomial::degree);
        (0..=max)
            .map(|k| {
                let m = Monomial::new(vec![k]);
                self.coeff(&m, &m).re
            })
            .collect()
    }

    pub fn is_hermitian(&self) -> bool {
        self.gram.is_hermitian()
    }

    fn check_n(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::VariableMismatch(self.n, other.n));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_n(other)?;
        let mut e = self.to_entries();
        for (a, b, c) in other.entries() {
            add_entry(&mut e, (a.clone(), b.clone()), c.clone());
        }
        Ok(Self::from_entries(self.n, e))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_n(other)?;
        let mut e = self.to_entries();
        for (a, b, c) in other.entries() {
            add_entry(&mut e, (a.clone(), b.clone()), -c);
        }
        Ok(Self::from_entries(self.n, e))
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        let e = self.entries().map(|(a, b, c)| ((a.clone(), b.clone()), c.scale(r))).collect::<Entries>();
        let mut pruned = Entries::new();
        for (k, v) in e {
            add_entry(&mut pruned, k, v);
        }
        Self::from_entries(self.n, pruned)
    }

    /// Product of Hermitian functions:
    /// `(AB)_{γδ} = Σ_{α+α'=γ, β+β'=δ} A_{αβ} B_{α'β'}`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_n(other)?;
        let rhs: Vec<_> = other.entries().collect();
        let mut e = Entries::new();
        for (a, b, c) in self.entries() {
            for &(a2, b2, c2) in &rhs {
                add_entry(&mut e, (a.mul(a2), b.mul(b2)), c * c2);
            }
        }
        Ok(Self::from_entries(self.n, e))
    }

    /// `A^t` for `t >= 1`.
    pub fn pow(&self, t: u32) -> Result<Self> {
        if t == 0 {
            return Err(Error::ZeroPower);
        }
        let mut acc = self.clone();
        let mut base = self.clone();
        let mut rest = t - 1;
        while rest > 0 {
            if rest & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            rest >>= 1;
            if rest > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Evaluates `a(z, z̄)`; Hermitian symmetry makes the value real.
    pub fn evaluate(&self, z: &[GaussianRational]) -> BigRational {
        assert_eq!(z.len(), self.n, "evaluation point has wrong dimension");
        let powers = |m: &Monomial| -> GaussianRational {
            m.exps().iter().zip(z).filter(|(e, _)| **e > 0).map(|(&e, zi)| zi.pow(e)).product()
        };
        let vals: Vec<GaussianRational> = self.basis.iter().map(powers).collect();
        let total: GaussianRational = self.entries_indexed().map(|(i, j, c)| &(c * &vals[i]) * &vals[j].conj()).sum();
        debug_assert!(total.is_real(), "Hermitian form evaluated to a non-real value");
        total.re
    }

    fn entries_indexed(&self) -> impl Iterator<Item = (usize, usize, &GaussianRational)> {
        let k = self.basis.len();
        (0..k)
            .flat_map(move |i| (0..k).map(move |j| (i, j)))
            .filter(move |&(i, j)| !self.gram[(i, j)].is_zero())
            .map(move |(i, j)| (i, j, &self.gram[(i, j)]))
    }

    /// Common degree of every basis monomial, if any. The zero form reports
    /// `None`.
    pub fn bihomogeneous_degree(&self) -> Option<u32> {
        let d = self.basis.first()?.degree();
        self.basis.iter().all(|m| m.degree() == d).then_some(d)
    }

    /// Highest degree among basis monomials (the bidegree bound).
    pub fn degree(&self) -> u32 {
        self.basis.last().map_or(0, Monomial::degree)
    }

    /// `|Z_0|^{2d} a(Z̃/Z_0, conj(Z̃/Z_0))` in variables `(Z_0, Z_1, …, Z_n)`.
    pub fn homogenize(&self, d: u32) -> Result<Self> {
        let max = self.degree();
        if d < max {
            return Err(Error::DegreeTooLow { degree: d, max });
        }
        let mut e = Entries::new();
        for (a, b, c) in self.entries() {
            add_entry(&mut e, (a.with_leading(d - a.degree()), b.with_leading(d - b.degree())), c.clone());
        }
        Ok(Self::from_entries(self.n + 1, e))
    }

    /// Sets `Z_0 = 1` in a bihomogeneous form.
    pub fn dehomogenize(&self) -> Result<Self> {
        if self.n == 0 {
            return Err(Error::Precondition("cannot dehomogenize a form in zero variables".into()));
        }
        if !self.is_zero() && self.bihomogeneous_degree().is_none() {
            return Err(Error::NotBihomogeneous);
        }
        let mut e = Entries::new();
        for (a, b, c) in self.entries() {
            add_entry(&mut e, (a.split_leading().1, b.split_leading().1), c.clone());
        }
        Ok(Self::from_entries(self.n - 1, e))
    }

    /// The form restricted to basis monomials accepted by `keep` (rows and
    /// columns both).
    pub fn restrict<F: Fn(&Monomial) -> bool>(&self, keep: F) -> Self {
        let e = self
            .entries()
            .filter(|(a, b, _)| keep(a) && keep(b))
            .map(|(a, b, c)| ((a.clone(), b.clone()), c.clone()))
            .collect();
        Self::from_entries(self.n, e)
    }
}

impl fmt::Display for HermitianForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (a, b, c)) in self.entries().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if a == b {
                if a.is_one() {
                    write!(f, "{c}")?;
                } else {
                    write!(f, "{c}*|{a}|^2")?;
                }
            } else {
                write!(f, "{c}*({a})*conj({b})")?;
            }
        }
        Ok(())
    }
}
