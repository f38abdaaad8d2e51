//! Rank bounds and gap formulas as checkable predicates on integers, the
//! extremal maps that realize them, and the prime power substitution that
//! collapses several variables into one.
//!
//! None of the predicates compute ranks; they audit integers supplied by the
//! caller, whether those come from this crate or from elsewhere.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::isometry::multiset_count;
use crate::monomial::Monomial;
use crate::poly::{HoloMap, HoloPoly};
use crate::scalar::GaussianRational;

/// Which bound a report checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoundKind {
    /// `m` for `(1+‖z‖²)(1+‖f‖²) = 1+‖h‖²` against the dimension `d` of `f`.
    OneModification,
    /// `m` avoids every gap interval for dimension `n`.
    Gap,
    /// `m` for the rational identity with exponents `a, b` and tensor rank `e`.
    RationalModification,
    /// Rank `R` of `‖Z‖² A` for a bihomogeneous sum of squares `A` of rank `p`.
    HomogeneousProduct,
    /// Rank `r` of `‖z‖² a` for a sum of squares `a` of rank `p`.
    AffineProduct,
    /// Rank `r` of `‖h‖²` in `(1+‖z‖²)(1+‖f‖²) = 1+‖h‖²`, `f` of rank `p`.
    NonhomogeneousProduct,
    /// Rank `r` of `(1+‖f‖²)^t - 1`, `f` of rank `p`.
    Power,
    /// Best lower bound `m >= n` available when `a >= 2`.
    BestLower,
}

impl BoundKind {
    pub const ALL: [BoundKind; 8] = [
        BoundKind::OneModification,
        BoundKind::Gap,
        BoundKind::RationalModification,
        BoundKind::HomogeneousProduct,
        BoundKind::AffineProduct,
        BoundKind::NonhomogeneousProduct,
        BoundKind::Power,
        BoundKind::BestLower,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            BoundKind::OneModification => "one-modification",
            BoundKind::Gap => "gap",
            BoundKind::RationalModification => "rational-modification",
            BoundKind::HomogeneousProduct => "homogeneous-product",
            BoundKind::AffineProduct => "affine-product",
            BoundKind::NonhomogeneousProduct => "nonhomogeneous-product",
            BoundKind::Power => "power",
            BoundKind::BestLower => "best-lower",
        }
    }

    /// Names of the integer inputs, the last one being the observed value.
    pub fn inputs(&self) -> &'static [&'static str] {
        match self {
            BoundKind::OneModification => &["n", "d", "m"],
            BoundKind::Gap => &["n", "m"],
            BoundKind::RationalModification => &["n", "e", "a", "b", "m"],
            BoundKind::HomogeneousProduct => &["n", "p", "R"],
            BoundKind::AffineProduct => &["n", "p", "r"],
            BoundKind::NonhomogeneousProduct => &["n", "p", "r"],
            BoundKind::Power => &["p", "t", "r"],
            BoundKind::BestLower => &["n", "m"],
        }
    }
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for BoundKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        BoundKind::ALL.into_iter().find(|k| k.id() == s).ok_or_else(|| Error::Parse(format!("unknown bound `{s}`")))
    }
}

/// Outcome of one bound check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub kind: BoundKind,
    pub inputs: Vec<(&'static str, u64)>,
    pub observed: u64,
    pub lower: u64,
    pub upper: Option<u64>,
    /// Which branch of a two-case bound applied.
    pub branch: &'static str,
    /// For gap checks: the open interval containing `observed`, if any.
    pub excluded: Option<GapInterval>,
    pub satisfied: bool,
}

impl BoundReport {
    fn new(
        kind: BoundKind,
        inputs: Vec<(&'static str, u64)>,
        observed: u64,
        lower: u64,
        upper: Option<u64>,
        branch: &'static str,
    ) -> Self {
        let satisfied = lower <= observed && upper.is_none_or(|u| observed <= u);
        Self { kind, inputs, observed, lower, upper, branch, excluded: None, satisfied }
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "bound={}", self.kind)?;
        for (k, v) in &self.inputs {
            write!(f, " {k}={v}")?;
        }
        match self.upper {
            Some(u) => write!(f, " bounds=[{},{}]", self.lower, u)?,
            None => write!(f, " bounds=[{},inf)", self.lower)?,
        }
        if !self.branch.is_empty() {
            write!(f, " branch={}", self.branch)?;
        }
        if let Some(g) = &self.excluded {
            write!(f, " in_gap={g}")?;
        }
        write!(f, " satisfied={}", self.satisfied)
    }
}

fn positive(vals: &[(&'static str, u64)]) -> Result<()> {
    match vals.iter().find(|(_, v)| *v == 0) {
        Some((name, _)) => Err(Error::NonPositive(name)),
        None => Ok(()),
    }
}

/// `n(p+1) - p(p-1)/2`, the lower end for `p <= n`.
pub fn nonhomogeneous_lower(n: u64, p: u64) -> u64 {
    n * (p + 1) - p * (p.saturating_sub(1)) / 2
}

/// `n(p+1) + p`.
pub fn nonhomogeneous_upper(n: u64, p: u64) -> u64 {
    n * (p + 1) + p
}

/// Bounds on `m` for a 1-modification by a map of dimension `d`.
pub fn check_one_modification(n: u64, d: u64, m: u64) -> Result<BoundReport> {
    positive(&[("n", n), ("d", d), ("m", m)])?;
    let inputs = vec![("n", n), ("d", d), ("m", m)];
    Ok(if d <= n {
        BoundReport::new(
            BoundKind::OneModification,
            inputs,
            m,
            nonhomogeneous_lower(n, d),
            Some(nonhomogeneous_upper(n, d)),
            "d<=n",
        )
    } else {
        BoundReport::new(BoundKind::OneModification, inputs, m, (n * (n + 3) / 2).max(d), None, "d>=n")
    })
}

/// `Σ_{k=1}^{a} C(m+k-1, k)`.
pub fn power_sum(m: u64, a: u64) -> u64 {
    multiset_count(m, a)
}

/// Least `m` with `power_sum(m, a) >= target`.
pub fn least_m_reaching(a: u64, target: u64) -> u64 {
    let mut m = 0;
    while power_sum(m, a) < target {
        m += 1;
    }
    m
}

/// Bounds on `m` for `(1+‖z‖²)^b (1+‖f‖²)^c = (1+‖h‖²)^a` where
/// `(1, f)^{⊗c}` has rank `e + 1`.
///
/// The inequalities on `Σ_{k≤a} C(m+k-1, k)` and on `a·m` are turned into
/// an equivalent range on `m` itself (the sum is increasing in `m`).
pub fn check_rational_modification(n: u64, e: u64, m: u64, a: u64, b: u64) -> Result<BoundReport> {
    positive(&[("n", n), ("e", e), ("m", m), ("a", a), ("b", b)])?;
    let inputs = vec![("n", n), ("e", e), ("a", a), ("b", b), ("m", m)];
    Ok(if e <= n && b == 1 {
        let lower = least_m_reaching(a, nonhomogeneous_lower(n, e));
        let upper = nonhomogeneous_upper(n, e) / a;
        BoundReport::new(BoundKind::RationalModification, inputs, m, lower, Some(upper), "e<=n,b=1")
    } else {
        let lower = least_m_reaching(a, n * (n + 3) / 2);
        BoundReport::new(BoundKind::RationalModification, inputs, m, lower, None, "e>=n or b>=2")
    })
}

/// Rank `R` of `‖Z‖² A` where `A` is a bihomogeneous sum of squares of rank
/// `p` in `n + 1` variables.
pub fn check_homogeneous_product(n: u64, p: u64, rank: u64) -> Result<BoundReport> {
    positive(&[("n", n), ("p", p), ("R", rank)])?;
    let inputs = vec![("n", n), ("p", p), ("R", rank)];
    let k = BoundKind::HomogeneousProduct;
    Ok(if p <= n + 1 {
        BoundReport::new(k, inputs, rank, (n + 1) * p - p * (p - 1) / 2, Some(p * (n + 1)), "p<=n+1")
    } else {
        BoundReport::new(k, inputs, rank, (n + 1) * (n + 2) / 2, None, "p>=n+1")
    })
}

/// Rank `r` of `‖z‖² a` where `a` is a sum of squares of rank `p`.
pub fn check_affine_product(n: u64, p: u64, r: u64) -> Result<BoundReport> {
    positive(&[("n", n), ("p", p), ("r", r)])?;
    let inputs = vec![("n", n), ("p", p), ("r", r)];
    let k = BoundKind::AffineProduct;
    Ok(if p <= n {
        BoundReport::new(k, inputs, r, n * p - p * (p - 1) / 2, Some(p * n), "p<=n")
    } else {
        BoundReport::new(k, inputs, r, (n * (n + 1) / 2).max(p), None, "p>=n")
    })
}

/// Rank `r` of `‖h‖²` with `(1+‖z‖²)(1+‖f‖²) = 1+‖h‖²` and `f` of rank `p`.
pub fn check_nonhomogeneous_product(n: u64, p: u64, r: u64) -> Result<BoundReport> {
    positive(&[("n", n), ("p", p), ("r", r)])?;
    let inputs = vec![("n", n), ("p", p), ("r", r)];
    let k = BoundKind::NonhomogeneousProduct;
    Ok(if p <= n {
        BoundReport::new(k, inputs, r, nonhomogeneous_lower(n, p), Some(nonhomogeneous_upper(n, p)), "p<=n")
    } else {
        BoundReport::new(k, inputs, r, n * (n + 3) / 2, None, "p>=n")
    })
}

/// Rank `r` of `(1+‖f‖²)^t - 1` with `f` of rank `p`: `tp <= r <= Σ C(p+k-1, k)`.
pub fn check_power(p: u64, t: u64, r: u64) -> Result<BoundReport> {
    positive(&[("p", p), ("t", t), ("r", r)])?;
    Ok(BoundReport::new(BoundKind::Power, vec![("p", p), ("t", t), ("r", r)], r, t * p, Some(multiset_count(p, t)), ""))
}

/// Least `m` with `n(n+3)/2 <= m + m(m+1)/2`; always equals `n`.
pub fn best_lower(n: u64) -> u64 {
    least_m_reaching(2, n * (n + 3) / 2)
}

pub fn check_best_lower(n: u64, m: u64) -> Result<BoundReport> {
    positive(&[("n", n), ("m", m)])?;
    Ok(BoundReport::new(BoundKind::BestLower, vec![("n", n), ("m", m)], m, best_lower(n), None, ""))
}

/// An open interval `(lo, hi)` of excluded target dimensions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GapInterval {
    pub k: u64,
    pub lo: u64,
    pub hi: u64,
}

impl GapInterval {
    pub fn contains(&self, m: u64) -> bool {
        self.lo < m && m < self.hi
    }

    /// No integer lies strictly between the endpoints.
    pub fn has_no_integers(&self) -> bool {
        self.lo + 1 > self.hi.saturating_sub(1)
    }
}

impl fmt::Display for GapInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.lo, self.hi)
    }
}

/// Gap intervals `(n(k+1)+k, n(k+2) - k(k+1)/2)` for `k = 0, 1, …`, the
/// first one widened to `(0, 2n)`. Enumeration stops at the first `k` with
/// `lo >= hi`. The final interval may still contain no integer (see
/// [`GapInterval::has_no_integers`]); it is nonempty iff `n > k(k+3)/2 + 1`.
pub fn gap_intervals(n: u64) -> Vec<GapInterval> {
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    for k in 0.. {
        let lo = if k == 0 { 0 } else { n * (k + 1) + k };
        let hi_plus = n * (k + 2);
        let tri = k * (k + 1) / 2;
        if hi_plus <= tri || hi_plus - tri <= lo {
            break;
        }
        out.push(GapInterval { k, lo, hi: hi_plus - tri });
    }
    out
}

/// `m` lies in no gap interval for dimension `n`.
pub fn check_gap(n: u64, m: u64) -> Result<BoundReport> {
    positive(&[("n", n), ("m", m)])?;
    let excluded = gap_intervals(n).into_iter().find(|g| g.contains(m));
    let mut rep = BoundReport::new(BoundKind::Gap, vec![("n", n), ("m", m)], m, 1, None, "");
    rep.satisfied = excluded.is_none();
    rep.excluded = excluded;
    Ok(rep)
}

/// Dispatches on a bound id with named integer arguments.
pub fn check_named(kind: BoundKind, args: &BTreeMap<String, u64>) -> Result<BoundReport> {
    let get = |name: &str| -> Result<u64> {
        args.get(name).copied().ok_or_else(|| Error::Precondition(format!("bound `{kind}` needs `{name}`")))
    };
    match kind {
        BoundKind::OneModification => check_one_modification(get("n")?, get("d")?, get("m")?),
        BoundKind::Gap => check_gap(get("n")?, get("m")?),
        BoundKind::RationalModification => {
            check_rational_modification(get("n")?, get("e")?, get("m")?, get("a")?, get("b")?)
        }
        BoundKind::HomogeneousProduct => check_homogeneous_product(get("n")?, get("p")?, get("R")?),
        BoundKind::AffineProduct => check_affine_product(get("n")?, get("p")?, get("r")?),
        BoundKind::NonhomogeneousProduct => check_nonhomogeneous_product(get("n")?, get("p")?, get("r")?),
        BoundKind::Power => check_power(get("p")?, get("t")?, get("r")?),
        BoundKind::BestLower => check_best_lower(get("n")?, get("m")?),
    }
}

fn is_prime(v: u64) -> bool {
    if v < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= v {
        if v.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn next_prime(from: u64) -> u64 {
    let mut v = from;
    while !is_prime(v) {
        v += 1;
    }
    v
}

/// Exponents `a_1..a_n` such that `z^α ↦ ζ^{Σ a_i α_i}` is injective on
/// monomials of degree at most `t`.
///
/// The last two variables are merged first: they receive the two smallest
/// distinct primes `>= T+1` (`T` starts at `t`), `T` becomes `T` times the
/// larger prime, and the merged variable takes their place. This repeats
/// until one variable is left.
pub fn prime_substitution(n: usize, t: u64) -> Result<Vec<u64>> {
    if n == 0 {
        return Err(Error::NonPositive("n"));
    }
    if t == 0 {
        return Err(Error::NonPositive("t"));
    }
    // each live variable: list of (original index, multiplier)
    let mut live: Vec<Vec<(usize, u64)>> = (0..n).map(|i| vec![(i, 1)]).collect();
    let mut bound = t;
    while live.len() > 1 {
        let y = live.pop().expect("len > 1");
        let x = live.pop().expect("len > 1");
        let p = next_prime(bound + 1);
        let q = next_prime(p + 1);
        let merged = x.into_iter().map(|(i, c)| (i, c * p)).chain(y.into_iter().map(|(i, c)| (i, c * q))).collect();
        live.push(merged);
        bound = bound.checked_mul(q).expect("degree bound overflow");
    }
    let mut out = vec![0; n];
    for (i, c) in live.pop().expect("one variable left") {
        out[i] = c;
    }
    Ok(out)
}

/// `Σ a_i α_i` takes pairwise distinct values over all `|α| <= t`.
pub fn verify_injective(a: &[u64], n: usize, t: u32) -> bool {
    if a.len() != n {
        return false;
    }
    let monos = Monomial::all_up_to(n, 0, t);
    let mut seen = HashSet::with_capacity(monos.len());
    monos.iter().all(|m| seen.insert(m.exps().iter().zip(a).map(|(&e, &w)| e as u64 * w).sum::<u64>()))
}

/// `(z_1, …, z_p)` in `n` variables.
pub fn extremal_lower(n: usize, p: usize) -> Result<HoloMap> {
    if p > n {
        return Err(Error::Precondition(format!("need p <= n, got p={p}, n={n}")));
    }
    HoloMap::new(n, (0..p).map(|i| HoloPoly::var(n, i)).collect())
}

/// `(z, z^2, …, z^p)` in one variable.
pub fn extremal_power_lower(p: usize) -> HoloMap {
    let comps =
        (1..=p as u32).map(|i| HoloPoly::monomial(1, Monomial::new(vec![i]), GaussianRational::from_int(1))).collect();
    HoloMap::new(1, comps).expect("one variable")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_modification_examples() {
        let r = check_one_modification(2, 1, 4).unwrap();
        assert!(r.satisfied);
        assert_eq!((r.lower, r.upper), (4, Some(5)));
        assert!(!check_one_modification(2, 1, 6).unwrap().satisfied);
        assert!(check_one_modification(0, 1, 1).is_err());
    }

    #[test]
    fn one_modification_large_d_uses_max() {
        // n(n+3)/2 = 2 but d = 3 dominates
        let r = check_one_modification(1, 3, 2).unwrap();
        assert_eq!(r.branch, "d>=n");
        assert_eq!(r.lower, 3);
        assert!(!r.satisfied);
        assert!(check_one_modification(1, 3, 3).unwrap().satisfied);
        assert!(check_one_modification(1, 2, 2).unwrap().satisfied);
    }

    #[test]
    fn gap_examples() {
        let show = |n| gap_intervals(n).iter().map(|g| g.to_string()).collect::<Vec<_>>().join(" ");
        assert_eq!(show(5), "(0,10) (11,14)");
        assert_eq!(show(2), "(0,4)");
        assert_eq!(show(10), "(0,20) (21,29) (32,37) (43,44)");
        assert!(gap_intervals(10)[3].has_no_integers());
        assert!(check_gap(5, 12).unwrap().excluded.is_some());
        assert!(check_gap(5, 10).unwrap().satisfied);
    }

    #[test]
    fn rational_modification_examples() {
        let r = check_rational_modification(1, 6, 5, 2, 2).unwrap();
        assert!(r.satisfied);
        assert_eq!(r.lower, 1);
        let r = check_rational_modification(4, 1, 8, 1, 1).unwrap();
        assert_eq!((r.lower, r.upper), (8, Some(9)));
        assert!(r.satisfied);
        assert!(!check_rational_modification(4, 1, 2, 1, 1).unwrap().satisfied);
    }

    #[test]
    fn sos_rank_examples() {
        let r = check_nonhomogeneous_product(2, 1, 4).unwrap();
        assert_eq!((r.lower, r.upper, r.satisfied), (4, Some(5), true));
        let r = check_power(2, 2, 4).unwrap();
        assert_eq!((r.lower, r.upper, r.satisfied), (4, Some(5), true));
        let r = check_affine_product(3, 3, 6).unwrap();
        assert_eq!((r.lower, r.satisfied), (6, true));
        let r = check_homogeneous_product(1, 1, 2).unwrap();
        assert_eq!((r.lower, r.upper), (2, Some(2)));
    }

    #[test]
    fn primes() {
        assert_eq!(prime_substitution(1, 7).unwrap(), vec![1]);
        assert_eq!(prime_substitution(2, 2).unwrap(), vec![3, 5]);
        assert_eq!(prime_substitution(3, 2).unwrap(), vec![11, 39, 65]);
        assert!(verify_injective(&[3, 5], 2, 2));
        assert!(!verify_injective(&[1, 2], 2, 2));
        assert!(verify_injective(&[1], 1, 9));
    }

    #[test]
    fn kinds_round_trip_ids() {
        for k in BoundKind::ALL {
            assert_eq!(k.id().parse::<BoundKind>().unwrap(), k);
        }
        assert!("nope".parse::<BoundKind>().is_err());
    }

    #[test]
    fn named_dispatch() {
        let args: BTreeMap<String, u64> =
            [("n", 2), ("p", 1), ("r", 4)].iter().map(|(k, v)| (k.to_string(), *v)).collect();
        assert!(check_named(BoundKind::NonhomogeneousProduct, &args).unwrap().satisfied);
        assert!(check_named(BoundKind::Power, &args).is_err());
    }

    #[test]
    fn extremal_maps() {
        assert_eq!(extremal_lower(3, 2).unwrap().len(), 2);
        assert!(extremal_lower(2, 3).is_err());
        assert_eq!(extremal_power_lower(3).degree(), 3);
    }
}
