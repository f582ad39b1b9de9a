//! Sample-based falsification of the functional classes (d, c, s, r, l,
//! p-conic, n-conic, quasi-linear, linear) and of their inclusion hierarchy.
//! A `Pass` means no counterexample was found within the budget.

use std::collections::BTreeMap;
use std::fmt;

use rand::seq::SliceRandom;

use crate::checks::{w, CheckReport, CheckStatus};
use crate::error::{Error, Result};
use crate::interval_sets::Space;
use crate::pwl_functions::{compose_monotone, Direction, PwlFunction};
use crate::quasi_integral::{DomainTag, FunctionalHandle};
use crate::reconstruction::{norm_estimate, RampSchedule};
use crate::sampling::Sampler;
use crate::scalar::Scalar;

/// Atomic property, each tested on its own pool of structurally valid cases.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Property {
    /// `ρ(af) = aρ(f)` for `f ≥ 0`, `a > 0`.
    HomNonneg,
    /// `ρ(af) = aρ(f)` for any `f`, `a > 0`.
    HomPositive,
    /// `ρ(af) = aρ(f)` for any `f`, `a < 0`.
    HomNegative,
    /// `0 ≤ g ≤ f ⇒ ρ(g) ≤ ρ(f)`.
    MonoNonneg,
    /// `g ≤ f ≤ 0 ⇒ ρ(g) ≤ ρ(f)`.
    MonoNonpos,
    /// `g ≤ f ⇒ ρ(g) ≤ ρ(f)`.
    MonoAll,
    /// `fg = 0`, `f, g ≥ 0`.
    OrthNonneg,
    /// `fg = 0`, `f ≥ 0`, `g ≤ 0`.
    OrthMixed,
    /// `fg = 0`, `f, g ≤ 0`.
    OrthNonpos,
    /// `fg = 0`, arbitrary signs.
    OrthAll,
    /// Conic linearity on `A⁺(h)`.
    ConePositive,
    /// Conic linearity on `A⁻(h)`.
    ConeNegative,
    /// Additivity on `B(h)` with profiles that need not be monotone.
    Subalgebra,
    /// `f ≥ 0 ⇒ ρ(f) ≥ 0`.
    Positivity,
    /// `ρ(f + g) = ρ(f) + ρ(g)` for arbitrary `f, g`.
    Additivity,
    /// `ρ(g + c) = ρ(g) + ρ(c)`; needs constants in the domain.
    ConstantShift,
    /// `f ≤ c`, `f = c` on `supp g`, `g ≥ 0 ⇒ ρ(f + g) = ρ(f) + ρ(g)`.
    CLevel,
}

impl Property {
    pub const ALL: [Property; 17] = [
        Property::HomNonneg,
        Property::HomPositive,
        Property::HomNegative,
        Property::MonoNonneg,
        Property::MonoNonpos,
        Property::MonoAll,
        Property::OrthNonneg,
        Property::OrthMixed,
        Property::OrthNonpos,
        Property::OrthAll,
        Property::ConePositive,
        Property::ConeNegative,
        Property::Subalgebra,
        Property::Positivity,
        Property::Additivity,
        Property::ConstantShift,
        Property::CLevel,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Property::HomNonneg => "homogeneous_nonneg",
            Property::HomPositive => "homogeneous_positive_scalar",
            Property::HomNegative => "homogeneous_negative_scalar",
            Property::MonoNonneg => "monotone_nonneg",
            Property::MonoNonpos => "monotone_nonpos",
            Property::MonoAll => "monotone",
            Property::OrthNonneg => "orthogonal_nonneg",
            Property::OrthMixed => "orthogonal_mixed",
            Property::OrthNonpos => "orthogonal_nonpos",
            Property::OrthAll => "orthogonal",
            Property::ConePositive => "conic_positive",
            Property::ConeNegative => "conic_negative",
            Property::Subalgebra => "subalgebra_additive",
            Property::Positivity => "positive",
            Property::Additivity => "additive",
            Property::ConstantShift => "constant_condition",
            Property::CLevel => "c_level",
        }
    }

    fn restricted_ok(&self) -> bool {
        matches!(
            self,
            Property::HomNonneg
                | Property::MonoNonneg
                | Property::OrthNonneg
                | Property::ConePositive
                | Property::Positivity
                | Property::Additivity
        )
    }

    /// `None` when the property can be sampled for this space and domain,
    /// otherwise the reason it cannot.
    fn inapplicable(&self, space: &Space<impl Scalar>, domain: DomainTag) -> Option<&'static str> {
        if *self == Property::ConstantShift && !space.is_compact() {
            return Some("constants are not in the domain on the line");
        }
        if domain == DomainTag::NonnegativeCc && !self.restricted_ok() {
            return Some("domain holds nonnegative functions only");
        }
        None
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FunctionalClass {
    D,
    C,
    S,
    R,
    L,
    PConic,
    NConic,
    QuasiLinear,
    Linear,
}

impl FunctionalClass {
    pub const ALL: [FunctionalClass; 9] = [
        FunctionalClass::D,
        FunctionalClass::C,
        FunctionalClass::S,
        FunctionalClass::R,
        FunctionalClass::L,
        FunctionalClass::PConic,
        FunctionalClass::NConic,
        FunctionalClass::QuasiLinear,
        FunctionalClass::Linear,
    ];

    /// `(stronger, weaker)` pairs that must hold between verdicts.
    pub const IMPLICATIONS: [(FunctionalClass, FunctionalClass); 9] = [
        (FunctionalClass::Linear, FunctionalClass::QuasiLinear),
        (FunctionalClass::QuasiLinear, FunctionalClass::S),
        (FunctionalClass::S, FunctionalClass::R),
        (FunctionalClass::S, FunctionalClass::L),
        (FunctionalClass::S, FunctionalClass::C),
        (FunctionalClass::R, FunctionalClass::D),
        (FunctionalClass::C, FunctionalClass::D),
        (FunctionalClass::PConic, FunctionalClass::R),
        (FunctionalClass::NConic, FunctionalClass::L),
    ];

    pub fn name(&self) -> &'static str {
        match self {
            FunctionalClass::D => "d",
            FunctionalClass::C => "c",
            FunctionalClass::S => "s",
            FunctionalClass::R => "r",
            FunctionalClass::L => "l",
            FunctionalClass::PConic => "p_conic",
            FunctionalClass::NConic => "n_conic",
            FunctionalClass::QuasiLinear => "quasi_linear",
            FunctionalClass::Linear => "linear",
        }
    }

    pub fn properties(&self) -> &'static [Property] {
        use Property::*;
        match self {
            FunctionalClass::D => &[HomNonneg, MonoNonneg, OrthNonneg],
            FunctionalClass::C => &[HomNonneg, MonoNonneg, OrthNonneg, OrthMixed],
            FunctionalClass::S => &[
                HomNonneg,
                HomPositive,
                HomNegative,
                MonoNonneg,
                MonoNonpos,
                MonoAll,
                OrthNonneg,
                OrthMixed,
                OrthNonpos,
                OrthAll,
            ],
            FunctionalClass::R => &[HomNonneg, HomPositive, MonoNonneg, OrthNonneg, OrthMixed, ConstantShift],
            FunctionalClass::L => &[HomNonneg, HomPositive, MonoNonpos, OrthNonpos, OrthMixed, ConstantShift],
            FunctionalClass::PConic => &[OrthNonneg, MonoNonneg, ConePositive],
            FunctionalClass::NConic => &[OrthNonpos, MonoNonpos, ConeNegative],
            FunctionalClass::QuasiLinear => &[HomNonneg, HomPositive, HomNegative, Subalgebra, Positivity],
            FunctionalClass::Linear => &[HomNonneg, HomPositive, HomNegative, Additivity, Positivity],
        }
    }
}

impl fmt::Display for FunctionalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Concrete inputs of one test; enough to replay it against any functional.
#[derive(Clone, Debug, PartialEq)]
pub enum Case<S> {
    Homogeneity { f: PwlFunction<S>, a: S },
    Monotone { lower: PwlFunction<S>, upper: PwlFunction<S> },
    Additive { f: PwlFunction<S>, g: PwlFunction<S> },
    Conic { g: PwlFunction<S>, h: PwlFunction<S>, a: S, b: S },
    Positive { f: PwlFunction<S> },
}

impl<S: Scalar> Case<S> {
    pub fn functions(&self) -> Vec<(&'static str, &PwlFunction<S>)> {
        match self {
            Case::Homogeneity { f, .. } | Case::Positive { f } => vec![("f", f)],
            Case::Monotone { lower, upper } => vec![("lower", lower), ("upper", upper)],
            Case::Additive { f, g } => vec![("f", f), ("g", g)],
            Case::Conic { g, h, .. } => vec![("g", g), ("h", h)],
        }
    }

    pub fn scalars(&self) -> Vec<(&'static str, &S)> {
        match self {
            Case::Homogeneity { a, .. } => vec![("a", a)],
            Case::Conic { a, b, .. } => vec![("a", a), ("b", b)],
            _ => Vec::new(),
        }
    }

    /// Values showing the violation, or `None` when the case holds.
    pub fn violation(&self, rho: &FunctionalHandle<S>) -> Result<Option<Vec<(String, S)>>> {
        let v = |f: &PwlFunction<S>| rho.evaluate(f);
        let pair = |l: &str, lv: S, r: &str, rv: S| Some(vec![(l.to_string(), lv), (r.to_string(), rv)]);
        Ok(match self {
            Case::Homogeneity { f, a } => {
                let lhs = v(&f.scale(a))?;
                let rhs = a.clone() * v(f)?;
                (lhs != rhs).then(|| pair("rho(a*f)", lhs, "a*rho(f)", rhs)).flatten()
            }
            Case::Monotone { lower, upper } => {
                let (lo, hi) = (v(lower)?, v(upper)?);
                (lo > hi).then(|| pair("rho(lower)", lo, "rho(upper)", hi)).flatten()
            }
            Case::Additive { f, g } => {
                let lhs = v(&f.add(g)?)?;
                let rhs = v(f)? + v(g)?;
                (lhs != rhs).then(|| pair("rho(f+g)", lhs, "rho(f)+rho(g)", rhs)).flatten()
            }
            Case::Conic { g, h, a, b } => {
                let lhs = v(&g.scale(a).add(&h.scale(b))?)?;
                let rhs = a.clone() * v(g)? + b.clone() * v(h)?;
                (lhs != rhs).then(|| pair("rho(a*g+b*h)", lhs, "a*rho(g)+b*rho(h)", rhs)).flatten()
            }
            Case::Positive { f } => {
                let value = v(f)?;
                value.is_negative().then(|| vec![("rho(f)".to_string(), value)])
            }
        })
    }

    /// Structural check that the case matches the hypothesis pattern of the
    /// property.
    pub fn fits(&self, property: Property) -> Result<bool> {
        use Property::*;
        let nonneg = |f: &PwlFunction<S>| f.is_nonnegative();
        let nonpos = |f: &PwlFunction<S>| f.is_nonpositive();
        Ok(match (property, self) {
            (HomNonneg, Case::Homogeneity { f, a }) => nonneg(f) && a.is_positive(),
            (HomPositive, Case::Homogeneity { a, .. }) => a.is_positive(),
            (HomNegative, Case::Homogeneity { a, .. }) => a.is_negative(),
            (MonoNonneg, Case::Monotone { lower, upper }) => nonneg(lower) && lower.le(upper)?,
            (MonoNonpos, Case::Monotone { lower, upper }) => nonpos(upper) && lower.le(upper)?,
            (MonoAll, Case::Monotone { lower, upper }) => lower.le(upper)?,
            (OrthNonneg, Case::Additive { f, g }) => nonneg(f) && nonneg(g) && f.product_vanishes(g)?,
            (OrthMixed, Case::Additive { f, g }) => nonneg(f) && nonpos(g) && f.product_vanishes(g)?,
            (OrthNonpos, Case::Additive { f, g }) => nonpos(f) && nonpos(g) && f.product_vanishes(g)?,
            (OrthAll, Case::Additive { f, g }) => f.product_vanishes(g)?,
            (ConePositive | ConeNegative, Case::Conic { a, b, .. }) => !a.is_negative() && !b.is_negative(),
            (Subalgebra | Additivity, Case::Additive { .. }) => true,
            (Positivity, Case::Positive { f }) => nonneg(f),
            (ConstantShift, Case::Additive { g, .. }) => {
                let (lo, hi) = g.range_bounds();
                g.space().is_compact() && lo == hi
            }
            (CLevel, Case::Additive { f, g }) => {
                let c = f.range_bounds().1;
                let support = g.support();
                nonneg(g) && (support.is_empty() || f.restricted_extrema(&support)? == (c.clone(), c))
            }
            _ => false,
        })
    }
}

/// A recorded counterexample.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness<S> {
    pub property: Property,
    pub case: Case<S>,
    pub values: Vec<(String, S)>,
}

impl<S: Scalar> Witness<S> {
    /// Re-evaluates the case; true when it still violates the property.
    pub fn replay(&self, rho: &FunctionalHandle<S>) -> Result<bool> {
        Ok(self.case.fits(self.property)? && self.case.violation(rho)?.is_some())
    }

    pub fn entries(&self) -> Vec<(String, String)> {
        let mut out = vec![w("property", self.property)];
        out.extend(self.case.functions().into_iter().map(|(k, f)| w(k, f)));
        out.extend(self.case.scalars().into_iter().map(|(k, s)| w(k, s.to_wire())));
        out.extend(self.values.iter().map(|(k, s)| w(k, s.to_wire())));
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Verdict<S> {
    pub status: CheckStatus,
    pub cases: usize,
    pub witness: Option<Witness<S>>,
    pub detail: String,
}

impl<S: Scalar> Verdict<S> {
    fn not_applicable(detail: impl Into<String>) -> Self {
        Verdict { status: CheckStatus::NotApplicable, cases: 0, witness: None, detail: detail.into() }
    }

    pub fn is_pass(&self) -> bool {
        self.status == CheckStatus::Pass
    }

    pub fn is_fail(&self) -> bool {
        self.status == CheckStatus::Fail
    }

    pub fn to_report(&self, name: &str) -> CheckReport {
        CheckReport {
            name: name.to_string(),
            status: self.status,
            cases: self.cases,
            witness: self.witness.as_ref().map(Witness::entries).unwrap_or_default(),
            detail: self.detail.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassificationReport<S> {
    pub verdicts: BTreeMap<FunctionalClass, Verdict<S>>,
    pub properties: BTreeMap<Property, Verdict<S>>,
    pub hierarchy_consistent: bool,
    pub broken_implications: Vec<(FunctionalClass, FunctionalClass)>,
    pub norm: Option<S>,
}

impl<S: Scalar> ClassificationReport<S> {
    pub fn verdict(&self, class: FunctionalClass) -> &Verdict<S> {
        &self.verdicts[&class]
    }
}

/// Public hypothesis patterns.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CaseKind {
    DominatedPair,
    DisjointSupportPair,
    PosNegOrthogonal,
    ConePair,
    ConstantShift,
    LevelC,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Sign {
    Pos,
    Neg,
    Mixed,
}

struct Generator<'a> {
    sampler: &'a mut Sampler,
    restricted: bool,
}

fn region<S: Scalar>(space: &Space<S>) -> (S, S) {
    match space {
        Space::Line => (S::int(-3), S::int(4)),
        Space::Compact { a, b } => (a.clone(), b.clone()),
    }
}

fn localize<S: Scalar>(f: PwlFunction<S>, space: &Space<S>) -> Result<PwlFunction<S>> {
    match space {
        Space::Line => Ok(f),
        Space::Compact { a, b } => f.restrict(a, b),
    }
}

impl Generator<'_> {
    fn signed<S: Scalar>(&mut self, space: &Space<S>, sign: Sign) -> PwlFunction<S> {
        match sign {
            Sign::Pos => self.sampler.nonnegative_pwl(space),
            Sign::Neg => self.sampler.nonpositive_pwl(space),
            Sign::Mixed if self.restricted => self.sampler.nonnegative_pwl(space),
            Sign::Mixed => self.sampler.pwl(space),
        }
    }

    /// `count` sorted distinct points strictly inside `(lo, hi)`.
    fn cuts<S: Scalar>(&mut self, lo: &S, hi: &S, count: usize) -> Vec<S> {
        let mut ks: Vec<i64> = (1..16).collect();
        ks.shuffle(self.sampler.rng());
        ks.truncate(count);
        ks.sort();
        let width = hi.clone() - lo.clone();
        ks.into_iter().map(|k| lo.clone() + width.clone() * S::ratio(k, 16)).collect()
    }

    fn piece<S: Scalar>(&mut self, lo: &S, hi: &S, sign: Sign) -> Result<PwlFunction<S>> {
        Ok(match sign {
            Sign::Pos => self.sampler.bump_within(lo, hi, 1),
            Sign::Neg => self.sampler.bump_within(lo, hi, -1),
            Sign::Mixed => {
                let mid = (lo.clone() + hi.clone()) / S::two();
                let up = self.sampler.bump_within(lo, &mid, 1);
                up.add(&self.sampler.bump_within(&mid, hi, -1))?
            }
        })
    }

    fn disjoint<S: Scalar>(&mut self, space: &Space<S>, sf: Sign, sg: Sign) -> Result<Case<S>> {
        let (lo, hi) = region(space);
        let c = self.cuts(&lo, &hi, 1).remove(0);
        let (f, g) = if self.sampler.chance(0.5) {
            (self.piece(&lo, &c, sf)?, self.piece(&c, &hi, sg)?)
        } else {
            (self.piece(&c, &hi, sf)?, self.piece(&lo, &c, sg)?)
        };
        Ok(Case::Additive { f: localize(f, space)?, g: localize(g, space)? })
    }

    fn dominated<S: Scalar>(&mut self, space: &Space<S>, sign: Sign) -> Result<Case<S>> {
        let upper = self.signed(space, sign);
        let lower = match sign {
            Sign::Pos => upper.min(&self.sampler.nonnegative_pwl(space))?,
            Sign::Neg => upper.min(&self.sampler.nonpositive_pwl(space))?,
            Sign::Mixed => upper.sub(&self.sampler.nonnegative_pwl(space))?,
        };
        Ok(Case::Monotone { lower, upper })
    }

    fn homogeneity<S: Scalar>(&mut self, space: &Space<S>, sign: Sign, negative_scalar: bool) -> Case<S> {
        let f = self.signed(space, sign);
        let a = if negative_scalar { self.sampler.grid(-16, -1, 4) } else { self.sampler.grid(1, 16, 4) };
        Case::Homogeneity { f, a }
    }

    fn profile_range<S: Scalar>(h: &PwlFunction<S>) -> (S, S) {
        let (lo, hi) = h.range_bounds();
        if lo < hi {
            (lo, hi)
        } else {
            (lo.clone() - S::one(), hi + S::one())
        }
    }

    fn cone<S: Scalar>(&mut self, space: &Space<S>, direction: Direction) -> Result<Case<S>> {
        let h = self.signed(space, Sign::Mixed);
        let (lo, hi) = Self::profile_range(&h);
        let anchor = !space.is_compact();
        let phi = self.sampler.monotone_profile(&lo, &hi, direction, anchor || self.restricted);
        let psi = self.sampler.monotone_profile(&lo, &hi, direction, anchor || self.restricted);
        Ok(Case::Conic {
            g: compose_monotone(&phi, &h)?,
            h: compose_monotone(&psi, &h)?,
            a: self.sampler.coefficient(),
            b: self.sampler.coefficient(),
        })
    }

    fn subalgebra_pair<S: Scalar>(&mut self, h: &PwlFunction<S>) -> Result<Case<S>> {
        let (lo, hi) = Self::profile_range(h);
        let anchor = !h.space().is_compact();
        let phi = self.sampler.any_profile(&lo, &hi, anchor);
        let psi = self.sampler.any_profile(&lo, &hi, anchor);
        Ok(Case::Additive { f: PwlFunction::compose(&phi, h)?, g: PwlFunction::compose(&psi, h)? })
    }

    fn constant_shift<S: Scalar>(&mut self, space: &Space<S>) -> Result<Case<S>> {
        if !space.is_compact() {
            return Err(Error::OutOfDomain("constant shifts need a compact space".into()));
        }
        let g = self.sampler.pwl(space);
        let c = PwlFunction::constant(space.clone(), self.sampler.grid(-8, 8, 4))?;
        Ok(Case::Additive { f: g, g: c })
    }

    fn level_c<S: Scalar>(&mut self, space: &Space<S>) -> Result<Case<S>> {
        let (lo, hi) = region(space);
        let c: S = if space.is_compact() { self.sampler.grid(-8, 8, 4) } else { self.sampler.grid(0, 8, 4) };
        let pts = self.cuts(&lo, &hi, 4);
        let below = |s: &mut Sampler| c.clone() - s.grid::<S>(0, 8, 4);
        let (y0, y3) =
            if space.is_compact() { (below(self.sampler), below(self.sampler)) } else { (S::zero(), S::zero()) };
        let nodes = vec![
            (lo, y0),
            (pts[0].clone(), below(self.sampler)),
            (pts[1].clone(), c.clone()),
            (pts[2].clone(), c.clone()),
            (pts[3].clone(), below(self.sampler)),
            (hi, y3),
        ];
        let f = PwlFunction::new(space.clone(), nodes)?;
        let g = localize(self.sampler.bump_within(&pts[1], &pts[2], 1), space)?;
        Ok(Case::Additive { f, g })
    }

    fn case<S: Scalar>(&mut self, space: &Space<S>, property: Property) -> Result<Case<S>> {
        use Property::*;
        let r = self.restricted;
        match property {
            HomNonneg => Ok(self.homogeneity(space, Sign::Pos, false)),
            HomPositive => Ok(self.homogeneity(space, Sign::Mixed, false)),
            HomNegative => Ok(self.homogeneity(space, Sign::Mixed, true)),
            MonoNonneg => self.dominated(space, Sign::Pos),
            MonoNonpos => self.dominated(space, Sign::Neg),
            MonoAll => self.dominated(space, Sign::Mixed),
            OrthNonneg => self.disjoint(space, Sign::Pos, Sign::Pos),
            OrthMixed => self.disjoint(space, Sign::Pos, Sign::Neg),
            OrthNonpos => self.disjoint(space, Sign::Neg, Sign::Neg),
            OrthAll => {
                let (sf, sg) = (self.any_sign(), self.any_sign());
                self.disjoint(space, sf, sg)
            }
            ConePositive => self.cone(space, Direction::NonDecreasing),
            ConeNegative => self.cone(space, Direction::NonIncreasing),
            Subalgebra => {
                let h = self.sampler.pwl(space);
                self.subalgebra_pair(&h)
            }
            Positivity => Ok(Case::Positive { f: self.sampler.nonnegative_pwl(space) }),
            Additivity => {
                let sign = if r { Sign::Pos } else { Sign::Mixed };
                Ok(Case::Additive { f: self.signed(space, sign), g: self.signed(space, sign) })
            }
            ConstantShift => self.constant_shift(space),
            CLevel => self.level_c(space),
        }
    }

    fn any_sign(&mut self) -> Sign {
        [Sign::Pos, Sign::Neg, Sign::Mixed][self.sampler.index(3)]
    }
}

/// Random inputs matching one of the public hypothesis patterns, verified
/// structurally before they are returned.
pub fn generate_case<S: Scalar>(kind: CaseKind, space: &Space<S>, seed: u64) -> Result<Case<S>> {
    let mut sampler = Sampler::new(seed);
    let mut gen = Generator { sampler: &mut sampler, restricted: false };
    let (case, property) = match kind {
        CaseKind::DominatedPair => (gen.dominated(space, Sign::Pos)?, Property::MonoNonneg),
        CaseKind::DisjointSupportPair => (gen.disjoint(space, Sign::Pos, Sign::Pos)?, Property::OrthNonneg),
        CaseKind::PosNegOrthogonal => (gen.disjoint(space, Sign::Pos, Sign::Neg)?, Property::OrthMixed),
        CaseKind::ConePair => (gen.cone(space, Direction::NonDecreasing)?, Property::ConePositive),
        CaseKind::ConstantShift => (gen.constant_shift(space)?, Property::ConstantShift),
        CaseKind::LevelC => (gen.level_c(space)?, Property::CLevel),
    };
    if !case.fits(property)? {
        return Err(Error::Invariant(format!("generated case does not fit {property}")));
    }
    Ok(case)
}

fn check_property<S: Scalar>(
    rho: &FunctionalHandle<S>,
    property: Property,
    budget: usize,
    sampler: &mut Sampler,
) -> Result<Verdict<S>> {
    if let Some(reason) = property.inapplicable(rho.space(), rho.domain()) {
        return Ok(Verdict::not_applicable(reason));
    }
    let restricted = rho.domain() == DomainTag::NonnegativeCc;
    let mut gen = Generator { sampler, restricted };
    for i in 0..budget {
        let case = gen.case(rho.space(), property)?;
        if !case.fits(property)? {
            return Err(Error::Invariant(format!("generated case does not fit {property}")));
        }
        if case.functions().iter().any(|(_, f)| !rho.admits(f)) {
            continue;
        }
        let outcome = match case.violation(rho) {
            Ok(v) => v,
            Err(e) => return Ok(Verdict::not_applicable(format!("evaluation failed: {e}"))),
        };
        if let Some(values) = outcome {
            return Ok(Verdict {
                status: CheckStatus::Fail,
                cases: i + 1,
                witness: Some(Witness { property, case, values }),
                detail: format!("{property} violated"),
            });
        }
    }
    Ok(Verdict { status: CheckStatus::Pass, cases: budget, witness: None, detail: String::new() })
}

fn combine<S: Scalar>(class: FunctionalClass, properties: &BTreeMap<Property, Verdict<S>>) -> Verdict<S> {
    let members = class.properties();
    if let Some((p, v)) = members.iter().map(|p| (p, &properties[p])).find(|(_, v)| v.is_fail()) {
        return Verdict {
            status: CheckStatus::Fail,
            cases: v.cases,
            witness: v.witness.clone(),
            detail: format!("{p} violated"),
        };
    }
    let skipped: Vec<&str> =
        members.iter().filter(|p| properties[p].status == CheckStatus::NotApplicable).map(|p| p.name()).collect();
    let cases = members.iter().map(|p| properties[p].cases).sum();
    let detail = if skipped.is_empty() { String::new() } else { format!("not applicable: {}", skipped.join(", ")) };
    if skipped.len() == members.len() {
        Verdict { status: CheckStatus::NotApplicable, cases: 0, witness: None, detail }
    } else {
        Verdict { status: CheckStatus::Pass, cases, witness: None, detail }
    }
}

/// Runs every property on `budget` cases and places `rho` in the hierarchy.
pub fn classify<S: Scalar>(rho: &FunctionalHandle<S>, budget: usize, seed: u64) -> Result<ClassificationReport<S>> {
    let mut root = Sampler::new(seed);
    let mut properties = BTreeMap::new();
    for property in Property::ALL {
        let mut sampler = root.fork();
        properties.insert(property, check_property(rho, property, budget, &mut sampler)?);
    }
    let verdicts: BTreeMap<FunctionalClass, Verdict<S>> =
        FunctionalClass::ALL.iter().map(|c| (*c, combine(*c, &properties))).collect();
    let broken_implications: Vec<_> = FunctionalClass::IMPLICATIONS
        .iter()
        .filter(|(strong, weak)| verdicts[strong].is_pass() && verdicts[weak].is_fail())
        .copied()
        .collect();
    let norm = if verdicts[&FunctionalClass::D].is_pass() {
        norm_estimate(rho, &RampSchedule::default()).ok().filter(|r| r.certificate.is_trusted()).map(|r| r.value)
    } else {
        None
    };
    Ok(ClassificationReport {
        hierarchy_consistent: broken_implications.is_empty(),
        verdicts,
        properties,
        broken_implications,
        norm,
    })
}

/// Additivity of `rho` on pairs `φ∘f, ψ∘f` for random profiles that need
/// not be monotone (anchored at 0 on the line).
pub fn quasi_linearity_check<S: Scalar>(
    rho: &FunctionalHandle<S>,
    f: &PwlFunction<S>,
    budget: usize,
    seed: u64,
) -> Result<CheckReport> {
    const NAME: &str = "quasi-linearity on B(f)";
    if f.space() != rho.space() {
        return Err(Error::SpaceMismatch);
    }
    let mut sampler = Sampler::new(seed);
    let mut gen = Generator { sampler: &mut sampler, restricted: false };
    for i in 0..budget {
        let case = gen.subalgebra_pair(f)?;
        if case.functions().iter().any(|(_, g)| !rho.admits(g)) {
            continue;
        }
        if let Some(values) = case.violation(rho)? {
            let witness = Witness { property: Property::Subalgebra, case, values };
            let mut entries = vec![w("h", f)];
            entries.extend(witness.entries());
            return Ok(CheckReport::fail(NAME, i + 1, entries, "additivity fails on the subalgebra"));
        }
    }
    Ok(CheckReport::pass(NAME, budget))
}
