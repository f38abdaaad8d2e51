//! Isometry identities `(1+‖z‖²)^b (1+‖f‖²)^c = (1+‖h‖²)^a`, tensor-power
//! ranks, and division by the complexified norm `Σ Z_j χ_j`.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::form::HermitianForm;
use crate::linalg::{self, Matrix};
use crate::monomial::Monomial;
use crate::poly::{HoloMap, HoloPoly};
use crate::rankdecomp::{affine_split, extract_sos, inertia, span_rank, Inertia, ScaledMap, SquaredNorm};
use crate::scalar::GaussianRational;

fn check_exponents(a: u32, b: u32, c: u32) -> Result<()> {
    for (name, v) in [("a", a), ("b", b), ("c", c)] {
        if v == 0 {
            return Err(Error::NonPositive(name));
        }
    }
    if a.gcd(&b).gcd(&c) != 1 {
        return Err(Error::CommonFactor(a as u64, b as u64, c as u64));
    }
    Ok(())
}

/// Data of a `c/b`-modification with target exponent `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModificationSpec {
    f: ScaledMap,
    a: u32,
    b: u32,
    c: u32,
}

impl ModificationSpec {
    /// Validates: `gcd(a, b, c) = 1`, `f(0) = 0`, components of `f`
    /// linearly independent.
    pub fn new(f: impl Into<ScaledMap>, a: u32, b: u32, c: u32) -> Result<Self> {
        let f = f.into();
        check_exponents(a, b, c)?;
        check_modifier(&f)?;
        Ok(Self { f, a, b, c })
    }

    pub fn f(&self) -> &ScaledMap {
        &self.f
    }

    pub fn n(&self) -> usize {
        self.f.nvars()
    }

    pub fn exponents(&self) -> (u32, u32, u32) {
        (self.a, self.b, self.c)
    }
}

fn check_modifier(f: &ScaledMap) -> Result<()> {
    if !f.vanishes_at_origin() {
        return Err(Error::NonzeroAtOrigin);
    }
    let rank = span_rank(&f.polys());
    if rank != f.len() {
        return Err(Error::NotMinimal { rank, components: f.len() });
    }
    Ok(())
}

/// `1 + ‖F‖²`.
pub fn one_plus<M: SquaredNorm + ?Sized>(f: &M) -> HermitianForm {
    HermitianForm::one(f.nvars()).add(&f.squared_norm()).expect("same variable count")
}

fn lhs(n: usize, f: &ScaledMap, b: u32, c: u32) -> HermitianForm {
    let base = one_plus(&HoloMap::identity(n)).pow(b).expect("b >= 1");
    let fac = one_plus(f).pow(c).expect("c >= 1");
    base.mul(&fac).expect("same variable count")
}

/// `(1+‖z‖²)^b (1+‖f‖²)^c`.
pub fn modification_form(spec: &ModificationSpec) -> HermitianForm {
    lhs(spec.n(), &spec.f, spec.b, spec.c)
}

/// The minimal `h` with `(1+‖z‖²)^b (1+‖f‖²)^c = 1 + ‖h‖²`, unique up to a
/// unitary change of components.
pub fn solve_h(f: impl Into<ScaledMap>, b: u32, c: u32) -> Result<ScaledMap> {
    let spec = ModificationSpec::new(f, 1, b, c)?;
    let split = affine_split(&modification_form(&spec));
    debug_assert!(split.ok, "product of affine sums of squares failed to split");
    extract_sos(&split.remainder)
}

/// `(1+‖z‖²)^b (1+‖f‖²)^c - (1+‖h‖²)^a`.
pub fn identity_difference<F, H>(f: &F, h: &H, a: u32, b: u32, c: u32) -> Result<HermitianForm>
where
    F: Into<ScaledMap> + Clone,
    H: SquaredNorm + ?Sized,
{
    check_exponents(a, b, c)?;
    let f: ScaledMap = f.clone().into();
    if f.nvars() != h.nvars() {
        return Err(Error::VariableMismatch(f.nvars(), h.nvars()));
    }
    let left = lhs(f.nvars(), &f, b, c);
    let right = one_plus(h).pow(a)?;
    left.sub(&right)
}

/// Exact check of `(1+‖z‖²)^b (1+‖f‖²)^c = (1+‖h‖²)^a`.
pub fn verify_identity<F, H>(f: &F, h: &H, a: u32, b: u32, c: u32) -> Result<bool>
where
    F: Into<ScaledMap> + Clone,
    H: SquaredNorm + ?Sized,
{
    Ok(identity_difference(f, h, a, b, c)?.is_zero())
}

/// All products `f^α` with `1 <= |α| <= c`, in multi-index order.
pub fn tensor_monomials(f: &HoloMap, c: u32) -> HoloMap {
    let d = f.len();
    let n = f.nvars();
    if d == 0 {
        return HoloMap::empty(n);
    }
    let mut powers: Vec<Vec<HoloPoly>> = Vec::with_capacity(d);
    for comp in f.components() {
        let mut pw = vec![HoloPoly::constant(n, GaussianRational::one())];
        for k in 1..=c as usize {
            let next = pw[k - 1].mul(comp);
            pw.push(next);
        }
        powers.push(pw);
    }
    let components = Monomial::all_up_to(d, 1, c)
        .iter()
        .map(|alpha| {
            alpha
                .exps()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .fold(HoloPoly::constant(n, GaussianRational::one()), |acc, (i, &e)| acc.mul(&powers[i][e as usize]))
        })
        .collect();
    HoloMap::new(n, components).expect("same variable count")
}

/// Number of terms in `Σ_{k=1}^{c} C(d+k-1, k)`.
pub fn multiset_count(d: u64, c: u64) -> u64 {
    (1..=c).map(|k| binomial(d + k - 1, k)).sum()
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

/// `e` such that `(1, f)^{⊗c}` has rank `e + 1`, computed as
/// `dim span{f^α : 1 <= |α| <= c}`.
pub fn tensor_rank_e(f: &HoloMap, c: u32) -> Result<usize> {
    if c == 0 {
        return Err(Error::NonPositive("c"));
    }
    check_modifier(&f.into())?;
    let e = span_rank(&tensor_monomials(f, c));
    let d = f.len() as u64;
    let (lo, hi) = (c as u64 * d, multiset_count(d, c as u64));
    assert!(lo <= e as u64 && e as u64 <= hi, "tensor rank {e} outside [{lo}, {hi}]");
    Ok(e)
}

/// Solves `S = (Σ_j |Z_j|²) · R` for `R`, where `S` is bihomogeneous in all
/// of its variables. Returns `None` when `S` is not divisible.
///
/// Coefficients satisfy `S_{γδ} = Σ_j R_{γ-e_j, δ-e_j}`; the unknowns
/// split into independent blocks by the difference `γ - δ`, and each block
/// is an exact linear solve. Multiplication by the norm is injective, so a
/// solution is unique when it exists.
pub fn divide_by_norm(s: &HermitianForm) -> Result<Option<HermitianForm>> {
    let nv = s.nvars();
    if s.is_zero() {
        return Ok(Some(HermitianForm::zero(nv)));
    }
    let deg = s.bihomogeneous_degree().ok_or(Error::NotBihomogeneous)?;
    if deg == 0 || nv == 0 {
        return Ok(None);
    }
    let diff = |a: &Monomial, b: &Monomial| -> Vec<i64> {
        a.exps().iter().zip(b.exps()).map(|(&x, &y)| x as i64 - y as i64).collect()
    };

    let low = Monomial::all_of_degree(nv, deg - 1);
    let mut blocks: BTreeMap<Vec<i64>, Vec<(Monomial, Monomial)>> = BTreeMap::new();
    for a in &low {
        for b in &low {
            blocks.entry(diff(a, b)).or_default().push((a.clone(), b.clone()));
        }
    }

    let mut covered = 0usize;
    let mut triples = Vec::new();
    for unknowns in blocks.values() {
        let mut rows: BTreeMap<(Monomial, Monomial), usize> = BTreeMap::new();
        let mut incidence: Vec<(usize, usize)> = Vec::new();
        for (col, (a, b)) in unknowns.iter().enumerate() {
            for j in 0..nv {
                let key = (a.mul(&Monomial::var(nv, j)), b.mul(&Monomial::var(nv, j)));
                let next = rows.len();
                let row = *rows.entry(key).or_insert(next);
                incidence.push((row, col));
            }
        }
        let mut mat = Matrix::zeros(rows.len(), unknowns.len());
        for (r, c) in incidence {
            mat[(r, c)] += &GaussianRational::one();
        }
        let mut rhs = vec![GaussianRational::zero(); rows.len()];
        for ((g, d), &r) in &rows {
            let v = s.coeff(g, d);
            if !v.is_zero() {
                covered += 1;
            }
            rhs[r] = v;
        }
        let Some(x) = linalg::solve(&mat, &rhs) else {
            return Ok(None);
        };
        for ((a, b), v) in unknowns.iter().zip(x) {
            if !v.is_zero() {
                triples.push((a.exps().to_vec(), b.exps().to_vec(), v));
            }
        }
    }
    if covered != s.entries().count() {
        return Ok(None);
    }
    let r = HermitianForm::from_triples(nv, triples)?;
    debug_assert_eq!(HermitianForm::norm_z(nv).mul(&r).unwrap(), *s);
    Ok(Some(r))
}

/// `R_λ = (1+|z|²)^4 - λ|z|^4`, coefficients `(1, 4, 6-λ, 4, 1)` on `|z|^{2k}`.
pub fn r_lambda(lambda: &BigRational) -> HermitianForm {
    let c = |v: i64| BigRational::from_integer(v.into());
    HermitianForm::diagonal_1d(&[c(1), c(4), c(6) - lambda, c(4), c(1)])
}

/// Everything computed for one value of `λ` in the `R_λ` family.
#[derive(Clone, Debug)]
pub struct LambdaFamilyReport {
    pub lambda: BigRational,
    pub r: HermitianForm,
    pub r_times_norm: HermitianForm,
    pub r_squared: HermitianForm,
    pub r_inertia: Inertia,
    /// Inertia of `R_λ - 1`.
    pub r_tail_inertia: Inertia,
    pub r_times_norm_split: (bool, usize),
    pub r_squared_split: (bool, usize),
    /// `h` with `(1+|z|²) R_λ = 1 + ‖h‖²` when it exists.
    pub h: Option<ScaledMap>,
    /// `f` with `R_λ² = 1 + ‖f‖²` when it exists.
    pub f: Option<ScaledMap>,
    /// `(1+|z|²)² (1+‖f‖²) = (1+‖h‖²)²`, when both maps exist.
    pub identity: Option<bool>,
}

pub fn lambda_family_report(lambda: &BigRational) -> LambdaFamilyReport {
    let r = r_lambda(lambda);
    let r_times_norm = one_plus(&HoloMap::identity(1)).mul(&r).expect("one variable");
    let r_squared = r.pow(2).expect("t = 2");
    let tail = r.sub(&HermitianForm::one(1)).expect("one variable");
    let s1 = affine_split(&r_times_norm);
    let s2 = affine_split(&r_squared);
    let h = s1.ok.then(|| extract_sos(&s1.remainder).expect("split block is PSD"));
    let f = s2.ok.then(|| extract_sos(&s2.remainder).expect("split block is PSD"));
    let identity = match (&f, &h) {
        (Some(f), Some(h)) => Some(verify_identity(f, h, 2, 2, 1).expect("valid exponents")),
        _ => None,
    };
    LambdaFamilyReport {
        lambda: lambda.clone(),
        r_inertia: inertia(&r),
        r_tail_inertia: inertia(&tail),
        r,
        r_times_norm,
        r_squared,
        r_times_norm_split: (s1.ok, s1.m),
        r_squared_split: (s2.ok, s2.m),
        h,
        f,
        identity,
    }
}
