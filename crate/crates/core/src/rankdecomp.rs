//! Exact rank, inertia and sum-of-squares extraction for Hermitian forms.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::form::HermitianForm;
use crate::linalg::{self, Matrix};
use crate::monomial::Monomial;
use crate::poly::{HoloMap, HoloPoly};
use crate::scalar::GaussianRational;

/// Counts of positive and negative squares of a Hermitian form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Inertia {
    pub pos: usize,
    pub neg: usize,
}

impl Inertia {
    pub fn rank(&self) -> usize {
        self.pos + self.neg
    }

    pub fn is_sos(&self) -> bool {
        self.neg == 0
    }
}

impl fmt::Display for Inertia {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.pos, self.neg)
    }
}

/// A map with components `h_k = √r_k · p_k` where `r_k > 0` is rational and
/// `p_k` has Gaussian-rational coefficients. Its squared norm
/// `Σ r_k |p_k|^2` stays exact.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ScaledMap {
    n: usize,
    components: Vec<(BigRational, HoloPoly)>,
}

impl ScaledMap {
    pub fn new(n: usize, components: Vec<(BigRational, HoloPoly)>) -> Result<Self> {
        for (r, p) in &components {
            if !r.is_positive() {
                return Err(Error::Precondition(format!("component scale {r} is not positive")));
            }
            if p.nvars() != n {
                return Err(Error::VariableMismatch(n, p.nvars()));
            }
        }
        Ok(Self { n, components })
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn components(&self) -> &[(BigRational, HoloPoly)] {
        &self.components
    }

    /// The unscaled polynomials `p_k`.
    pub fn polys(&self) -> HoloMap {
        HoloMap::new(self.n, self.components.iter().map(|(_, p)| p.clone()).collect()).expect("checked at construction")
    }

    pub fn vanishes_at_origin(&self) -> bool {
        self.polys().vanishes_at_origin()
    }

    /// Components linearly independent (scales do not affect the span).
    pub fn is_minimal(&self) -> bool {
        span_rank(&self.polys()) == self.len()
    }
}

impl From<HoloMap> for ScaledMap {
    fn from(f: HoloMap) -> Self {
        let n = f.nvars();
        Self { n, components: f.components().iter().map(|p| (BigRational::one(), p.clone())).collect() }
    }
}

impl From<&HoloMap> for ScaledMap {
    fn from(f: &HoloMap) -> Self {
        f.clone().into()
    }
}

impl fmt::Display for ScaledMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, (r, p)) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            if r.is_one() {
                write!(f, "{p}")?;
            } else {
                write!(f, "sqrt({r})*({p})")?;
            }
        }
        write!(f, ")")
    }
}

/// Anything with an exact squared norm.
pub trait SquaredNorm {
    fn nvars(&self) -> usize;
    fn squared_norm(&self) -> HermitianForm;
}

impl SquaredNorm for HoloMap {
    fn nvars(&self) -> usize {
        HoloMap::nvars(self)
    }
    fn squared_norm(&self) -> HermitianForm {
        HermitianForm::norm_form(self)
    }
}

impl SquaredNorm for ScaledMap {
    fn nvars(&self) -> usize {
        self.n
    }
    fn squared_norm(&self) -> HermitianForm {
        HermitianForm::weighted_norm_form(self.n, self.components.iter().map(|(r, p)| (r, p)))
    }
}

/// `(p, q)` by exact congruence diagonalization of the Gram matrix.
pub fn inertia(a: &HermitianForm) -> Inertia {
    matrix_inertia(a.gram())
}

pub fn matrix_inertia(m: &Matrix) -> Inertia {
    let squares = linalg::hermitian_squares(m);
    let pos = squares.iter().filter(|s| s.scale.is_positive()).count();
    Inertia { pos, neg: squares.len() - pos }
}

fn coefficient_rows(f: &HoloMap) -> (Vec<Monomial>, Vec<Vec<GaussianRational>>) {
    let support = f.support();
    let rows = f.components().iter().map(|c| support.iter().map(|m| c.coeff(m)).collect()).collect();
    (support, rows)
}

/// `dim V_F`, the dimension of the span of the components.
pub fn span_rank(f: &HoloMap) -> usize {
    let (_, rows) = coefficient_rows(f);
    linalg::rank(rows)
}

/// A basis of `V_F` (reduced row echelon form of the coefficient matrix)
/// together with its size.
pub fn reduce_minimal(f: &HoloMap) -> (HoloMap, usize) {
    let (support, rows) = coefficient_rows(f);
    let reduced = linalg::row_reduce(rows);
    let n = f.nvars();
    let components: Vec<HoloPoly> = reduced
        .iter()
        .map(|row| {
            let mut p = HoloPoly::zero(n);
            for (m, c) in support.iter().zip(row) {
                p.add_term(m.clone(), c);
            }
            p
        })
        .collect();
    let rank = components.len();
    (HoloMap::new(n, components).expect("same variable count"), rank)
}

/// Factors a positive semidefinite form as `Σ_k r_k |p_k(z)|^2`. The
/// component count equals the rank of the form.
pub fn extract_sos(a: &HermitianForm) -> Result<ScaledMap> {
    let order: Vec<usize> = (0..a.basis().len()).collect();
    extract_sos_ordered(a, &order)
}

/// [`extract_sos`] with pivots taken in the given basis-index order. Different
/// orders give different but unitarily equivalent maps.
pub fn extract_sos_ordered(a: &HermitianForm, order: &[usize]) -> Result<ScaledMap> {
    let squares = linalg::hermitian_squares_ordered(a.gram(), order);
    let neg = squares.iter().filter(|s| s.scale.is_negative()).count();
    if neg > 0 {
        return Err(Error::NotSos { neg });
    }
    let n = a.nvars();
    let components = squares
        .into_iter()
        .map(|s| {
            let mut p = HoloPoly::zero(n);
            for (m, c) in a.basis().iter().zip(&s.vector) {
                p.add_term(m.clone(), c);
            }
            (s.scale, p)
        })
        .collect();
    Ok(ScaledMap { n, components })
}

/// `‖F‖^2 = ‖G‖^2` as Hermitian forms. For minimal maps this is exactly
/// unitary equivalence of `F` and `G`.
pub fn grams_equal<F: SquaredNorm + ?Sized, G: SquaredNorm + ?Sized>(f: &F, g: &G) -> bool {
    f.nvars() == g.nvars() && f.squared_norm() == g.squared_norm()
}

/// Result of testing whether a form is `1 + ‖h‖^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSplit {
    /// Constant coefficient is 1, nothing couples the constant to other
    /// monomials, and the remaining block is positive semidefinite.
    pub ok: bool,
    /// Rank of the non-constant block.
    pub m: usize,
    /// The non-constant block `A - 1`.
    pub remainder: HermitianForm,
}

pub fn affine_split(a: &HermitianForm) -> AffineSplit {
    let one = Monomial::one(a.nvars());
    let constant_ok = a.coeff(&one, &one) == GaussianRational::one();
    let decoupled = a.basis().iter().filter(|m| !m.is_one()).all(|m| a.coeff(&one, m).is_zero());
    let remainder = a.restrict(|m| !m.is_one());
    let block = inertia(&remainder);
    AffineSplit { ok: constant_ok && decoupled && block.is_sos(), m: block.rank(), remainder }
}
