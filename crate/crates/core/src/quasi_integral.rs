//! The functionals `R_μ` and `L_μ` induced by a deficient topological
//! measure, a uniform handle for black-box functionals, and exact checks of
//! the cone-linearity, partition, duality, and continuity identities.

use std::fmt;
use std::sync::Arc;

use crate::checks::{w, CheckReport};
use crate::distributions::DistributionBundle;
use crate::error::{Error, Result};
use crate::interval_sets::{Interval, IntervalSet, Space};
use crate::measures::Dtm;
use crate::pwl_functions::{compose_monotone, Direction, MonotoneProfile, PwlFunction};
use crate::scalar::Scalar;

/// `R_μ(f) = ∫_a^b R₁ dt + a·μ(X)` and `L_μ(f) = −∫_a^b L₁ dt + b·μ(X)` for
/// `[a, b] ⊇ f(X)`, each cross-checked against `∫ id` of the boundary measure.
pub fn quasi_integrals<S: Scalar>(mu: &Dtm<S>, f: &PwlFunction<S>) -> Result<(S, S, DistributionBundle<S>)> {
    let bundle = DistributionBundle::compute(mu, f)?;
    let (a, b) = bundle.range_hull.clone();
    let r = bundle.r1.integral_over(&a, &b) + a.clone() * bundle.mass.clone();
    let l = b.clone() * bundle.mass.clone() - bundle.l1.integral_over(&a, &b);
    let id = PwlFunction::identity(a - S::one(), b + S::one())?;
    let r_check = bundle.right_measure().stieltjes_integral(&id)?;
    let l_check = bundle.left_measure().stieltjes_integral(&id)?;
    if r != r_check || l != l_check {
        return Err(Error::Invariant(format!(
            "distribution and boundary-measure integrals disagree: R {} vs {}, L {} vs {}",
            r.to_wire(),
            r_check.to_wire(),
            l.to_wire(),
            l_check.to_wire()
        )));
    }
    Ok((r, l, bundle))
}

pub fn quasi_integral_r<S: Scalar>(mu: &Dtm<S>, f: &PwlFunction<S>) -> Result<S> {
    Ok(quasi_integrals(mu, f)?.0)
}

pub fn quasi_integral_l<S: Scalar>(mu: &Dtm<S>, f: &PwlFunction<S>) -> Result<S> {
    Ok(quasi_integrals(mu, f)?.1)
}

/// `(min_D f, max_D f)` for the compact interval `D = [lo, hi]`.
pub fn oracle_min_max<S: Scalar>(lo: &S, hi: &S, f: &PwlFunction<S>) -> Result<(S, S)> {
    f.restricted_extrema(&Interval::closed(lo.clone(), hi.clone()).into())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DomainTag {
    NonnegativeCc,
    Cc,
    ContinuousOnCompact,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Provenance<S> {
    InducedR(Dtm<S>),
    InducedL(Dtm<S>),
    MinOverD(S, S),
    MaxOverD(S, S),
    LinearIntegral(Dtm<S>),
    UserCombination(String),
}

impl<S: Scalar> fmt::Display for Provenance<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::InducedR(mu) => write!(f, "R[{mu}]"),
            Provenance::InducedL(mu) => write!(f, "L[{mu}]"),
            Provenance::MinOverD(lo, hi) => write!(f, "min over [{}, {}]", lo.to_wire(), hi.to_wire()),
            Provenance::MaxOverD(lo, hi) => write!(f, "max over [{}, {}]", lo.to_wire(), hi.to_wire()),
            Provenance::LinearIntegral(mu) => write!(f, "∫ · d[{mu}]"),
            Provenance::UserCombination(d) => f.write_str(d),
        }
    }
}

type Evaluator<S> = Arc<dyn Fn(&PwlFunction<S>) -> Result<S> + Send + Sync>;

/// A functional on piecewise-linear functions with its domain and origin.
#[derive(Clone)]
pub struct FunctionalHandle<S> {
    space: Space<S>,
    domain: DomainTag,
    provenance: Provenance<S>,
    evaluator: Evaluator<S>,
    horizon: Option<S>,
}

impl<S: Scalar> fmt::Debug for FunctionalHandle<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FunctionalHandle")
            .field("space", &self.space)
            .field("domain", &self.domain)
            .field("provenance", &self.provenance.to_string())
            .finish()
    }
}

fn full_domain<S: Scalar>(space: &Space<S>) -> DomainTag {
    if space.is_compact() {
        DomainTag::ContinuousOnCompact
    } else {
        DomainTag::Cc
    }
}

/// Distance beyond which a measure's landmarks are all left behind.
fn horizon_of<S: Scalar>(mu: &Dtm<S>) -> S {
    mu.landmarks().iter().fold(S::one(), |acc, x| {
        let r = x.abs() + S::one();
        if r > acc {
            r
        } else {
            acc
        }
    })
}

impl<S: Scalar> FunctionalHandle<S> {
    pub fn new(
        space: Space<S>,
        domain: DomainTag,
        description: impl Into<String>,
        evaluator: impl Fn(&PwlFunction<S>) -> Result<S> + Send + Sync + 'static,
    ) -> Self {
        FunctionalHandle {
            space,
            domain,
            provenance: Provenance::UserCombination(description.into()),
            evaluator: Arc::new(evaluator),
            horizon: None,
        }
    }

    pub fn induced_r(mu: &Dtm<S>) -> Self {
        let m = mu.clone();
        FunctionalHandle {
            space: mu.space().clone(),
            domain: full_domain(mu.space()),
            provenance: Provenance::InducedR(mu.clone()),
            evaluator: Arc::new(move |f| quasi_integral_r(&m, f)),
            horizon: Some(horizon_of(mu)),
        }
    }

    pub fn induced_l(mu: &Dtm<S>) -> Self {
        let m = mu.clone();
        FunctionalHandle {
            space: mu.space().clone(),
            domain: full_domain(mu.space()),
            provenance: Provenance::InducedL(mu.clone()),
            evaluator: Arc::new(move |f| quasi_integral_l(&m, f)),
            horizon: Some(horizon_of(mu)),
        }
    }

    /// The ordinary integral; fails with `NotLinear` for non-additive measures.
    pub fn linear_integral(mu: &Dtm<S>) -> Result<Self> {
        if !mu.is_structurally_additive() {
            return Err(Error::NotLinear);
        }
        let m = mu.clone();
        Ok(FunctionalHandle {
            space: mu.space().clone(),
            domain: full_domain(mu.space()),
            provenance: Provenance::LinearIntegral(mu.clone()),
            evaluator: Arc::new(move |f| m.linear_integral(f)),
            horizon: Some(horizon_of(mu)),
        })
    }

    pub fn min_over(space: Space<S>, lo: S, hi: S) -> Self {
        let (a, b) = (lo.clone(), hi.clone());
        FunctionalHandle {
            domain: full_domain(&space),
            horizon: Some(max_abs(&lo, &hi) + S::one()),
            space,
            provenance: Provenance::MinOverD(lo, hi),
            evaluator: Arc::new(move |f| Ok(oracle_min_max(&a, &b, f)?.0)),
        }
    }

    pub fn max_over(space: Space<S>, lo: S, hi: S) -> Self {
        let (a, b) = (lo.clone(), hi.clone());
        FunctionalHandle {
            domain: full_domain(&space),
            horizon: Some(max_abs(&lo, &hi) + S::one()),
            space,
            provenance: Provenance::MaxOverD(lo, hi),
            evaluator: Arc::new(move |f| Ok(oracle_min_max(&a, &b, f)?.1)),
        }
    }

    /// `a·ρ + b·σ` on the common space and the narrower domain.
    pub fn combination(a: S, rho: &Self, b: S, sigma: &Self) -> Result<Self> {
        if rho.space != sigma.space {
            return Err(Error::SpaceMismatch);
        }
        let domain = if rho.domain == DomainTag::NonnegativeCc || sigma.domain == DomainTag::NonnegativeCc {
            DomainTag::NonnegativeCc
        } else {
            rho.domain
        };
        let description = format!("{}·({}) + {}·({})", a.to_wire(), rho.provenance, b.to_wire(), sigma.provenance);
        let (r, s) = (rho.clone(), sigma.clone());
        let mut out = FunctionalHandle::new(rho.space.clone(), domain, description, move |f| {
            Ok(a.clone() * r.evaluate(f)? + b.clone() * s.evaluate(f)?)
        });
        out.horizon = match (&rho.horizon, &sigma.horizon) {
            (Some(x), Some(y)) => Some(if x > y { x.clone() } else { y.clone() }),
            (x, y) => x.clone().or_else(|| y.clone()),
        };
        Ok(out)
    }

    pub fn with_horizon(mut self, horizon: S) -> Self {
        self.horizon = Some(horizon);
        self
    }

    pub fn space(&self) -> &Space<S> {
        &self.space
    }

    pub fn domain(&self) -> DomainTag {
        self.domain
    }

    pub fn provenance(&self) -> &Provenance<S> {
        &self.provenance
    }

    /// Distance from the origin beyond which the functional ignores the
    /// function's behaviour, when known.
    pub fn horizon(&self) -> Option<&S> {
        self.horizon.as_ref()
    }

    pub fn admits(&self, f: &PwlFunction<S>) -> bool {
        f.space() == &self.space && (self.domain != DomainTag::NonnegativeCc || f.is_nonnegative())
    }

    pub fn evaluate(&self, f: &PwlFunction<S>) -> Result<S> {
        if f.space() != &self.space {
            return Err(Error::SpaceMismatch);
        }
        if !self.admits(f) {
            return Err(Error::OutsideFunctionalDomain("function takes negative values".into()));
        }
        (self.evaluator)(f)
    }
}

fn max_abs<S: Scalar>(a: &S, b: &S) -> S {
    let (x, y) = (a.abs(), b.abs());
    if x > y {
        x
    } else {
        y
    }
}

fn equality_report<S: Scalar>(name: &str, lhs: S, rhs: S, witness: Vec<(String, String)>) -> CheckReport {
    if lhs == rhs {
        CheckReport::pass(name, 1)
    } else {
        let mut witness = witness;
        witness.push(w("lhs", lhs.to_wire()));
        witness.push(w("rhs", rhs.to_wire()));
        CheckReport::fail(name, 1, witness, "sides differ")
    }
}

/// `R(a·φ∘f + b·ψ∘f) = a·R(φ∘f) + b·R(ψ∘f)` for non-decreasing profiles, and
/// the same identity for `L` when both profiles are non-increasing.
pub fn conic_check_on_cone<S: Scalar>(
    mu: &Dtm<S>,
    f: &PwlFunction<S>,
    phi: &MonotoneProfile<S>,
    psi: &MonotoneProfile<S>,
    a: &S,
    b: &S,
) -> Result<CheckReport> {
    if phi.direction() != psi.direction() {
        return Err(Error::InvalidFunction("profiles have different directions".into()));
    }
    if a.is_negative() || b.is_negative() {
        return Err(Error::RangeViolation("cone coefficients must be nonnegative".into()));
    }
    let g = compose_monotone(phi, f)?;
    let h = compose_monotone(psi, f)?;
    let sum = g.scale(a).add(&h.scale(b))?;
    let functional = |x: &PwlFunction<S>| match phi.direction() {
        Direction::NonDecreasing => quasi_integral_r(mu, x),
        Direction::NonIncreasing => quasi_integral_l(mu, x),
    };
    let lhs = functional(&sum)?;
    let rhs = a.clone() * functional(&g)? + b.clone() * functional(&h)?;
    Ok(equality_report("cone linearity", lhs, rhs, vec![w("g", &g), w("h", &h)]))
}

/// `R(f) = Σ R(fᵢ)` over the ramp partition of `f / max f` into `n` pieces.
pub fn partition_identity_check<S: Scalar>(mu: &Dtm<S>, f: &PwlFunction<S>, n: usize) -> Result<CheckReport> {
    if !f.is_nonnegative() {
        return Err(Error::RangeViolation("partition identity needs f ≥ 0".into()));
    }
    let top = f.range_bounds().1;
    let unit = if top.is_zero() { f.clone() } else { f.scale(&(S::one() / top)) };
    let pieces = unit.cone_partition(n)?;
    let whole = quasi_integral_r(mu, &unit)?;
    let mut sum = S::zero();
    for p in &pieces {
        sum = sum + quasi_integral_r(mu, p)?;
    }
    Ok(equality_report("partition identity", sum, whole, vec![w("f", &unit), w("pieces", n)]))
}

/// `L(−f) = −R(f)`.
pub fn duality_check<S: Scalar>(mu: &Dtm<S>, f: &PwlFunction<S>) -> Result<CheckReport> {
    let lhs = quasi_integral_l(mu, &f.neg())?;
    let rhs = -quasi_integral_r(mu, f)?;
    Ok(equality_report("duality", lhs, rhs, vec![w("f", f)]))
}

/// `ρ_g(f) = ρ(f·g)` for `g ≥ 0`, when the product stays piecewise linear.
pub fn rho_g<S: Scalar>(rho: &FunctionalHandle<S>, g: &PwlFunction<S>, f: &PwlFunction<S>) -> Result<S> {
    if !g.is_nonnegative() {
        return Err(Error::RangeViolation("weight must be nonnegative".into()));
    }
    rho.evaluate(&f.try_product(g)?)
}

/// `|R(f) − R(g)| ≤ ‖f − g‖·μ(K)` for nonnegative `f, g` with `K` the hull of
/// their supports.
pub fn lipschitz_check<S: Scalar>(mu: &Dtm<S>, f: &PwlFunction<S>, g: &PwlFunction<S>) -> Result<CheckReport> {
    if !f.is_nonnegative() || !g.is_nonnegative() {
        return Err(Error::RangeViolation("Lipschitz bound needs f, g ≥ 0".into()));
    }
    let supports = f.support().union(&g.support());
    let k: IntervalSet<S> = match supports.hull() {
        Some((lo, hi)) => Interval::closed(lo, hi).into(),
        None => IntervalSet::empty(),
    };
    let diff = (quasi_integral_r(mu, f)? - quasi_integral_r(mu, g)?).abs();
    let bound = f.sub(g)?.sup_norm() * mu.eval(&k)?;
    if diff <= bound {
        Ok(CheckReport::pass("Lipschitz bound", 1))
    } else {
        Ok(CheckReport::fail(
            "Lipschitz bound",
            1,
            vec![w("f", f), w("g", g), w("K", &k), w("|R(f)-R(g)|", diff.to_wire()), w("bound", bound.to_wire())],
            "difference exceeds the bound",
        ))
    }
}

/// `R_{aμ+bν}(f) = a·R_μ(f) + b·R_ν(f)` (and the same for `L`).
pub fn conic_in_measure_check<S: Scalar>(
    mu: &Dtm<S>,
    nu: &Dtm<S>,
    a: &S,
    b: &S,
    f: &PwlFunction<S>,
) -> Result<CheckReport> {
    let combo = Dtm::combo(mu.space().clone(), vec![(a.clone(), mu.clone()), (b.clone(), nu.clone())])?;
    let (r, l, _) = quasi_integrals(&combo, f)?;
    let (rm, lm, _) = quasi_integrals(mu, f)?;
    let (rn, ln, _) = quasi_integrals(nu, f)?;
    let rhs_r = a.clone() * rm + b.clone() * rn;
    let rhs_l = a.clone() * lm + b.clone() * ln;
    let report = equality_report("conic linearity in the measure", r, rhs_r, vec![w("f", f), w("functional", "R")]);
    if !report.is_pass() {
        return Ok(report);
    }
    Ok(equality_report("conic linearity in the measure", l, rhs_l, vec![w("f", f), w("functional", "L")]))
}

/// `R_{μ+σ}(f) ≥ R_μ(f)` for `f ≥ 0`.
pub fn order_check<S: Scalar>(mu: &Dtm<S>, sigma: &Dtm<S>, f: &PwlFunction<S>) -> Result<CheckReport> {
    if !f.is_nonnegative() {
        return Err(Error::RangeViolation("order check needs f ≥ 0".into()));
    }
    let sum = Dtm::combo(mu.space().clone(), vec![(S::one(), mu.clone()), (S::one(), sigma.clone())])?;
    let bigger = quasi_integral_r(&sum, f)?;
    let smaller = quasi_integral_r(mu, f)?;
    if smaller <= bigger {
        Ok(CheckReport::pass("order in the measure", 1))
    } else {
        Ok(CheckReport::fail(
            "order in the measure",
            1,
            vec![w("f", f), w("R_mu", smaller.to_wire()), w("R_mu+sigma", bigger.to_wire())],
            "adding a measure decreased the functional",
        ))
    }
}
